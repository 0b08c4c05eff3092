//! Quivers with relations and their finite-dimensional representations.
//!
//! A path `(a₁, …, a_k)` acts on a representation by applying `a₁` first, so
//! its matrix is `M_{a_k} ⋯ M_{a₁}`. Representations are left modules over
//! the path algebra under this convention.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::homext::hom_space;
use crate::linalg::{Field, Matrix, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` arrow triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Quiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashSet::new();
        let mut built = Vec::with_capacity(arrows.len());
        for (name, from, to) in arrows {
            let name = name.as_ref();
            if !names.insert(name.to_string()) {
                return Err(Error::Quiver(format!("duplicate arrow {name:?}")));
            }
            let lookup = |v: &str| {
                vertices
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::Quiver(format!("arrow {name:?} references unknown vertex {v:?}")))
            };
            built.push(Arrow {
                name: name.to_string(),
                source: lookup(from.as_ref())?,
                target: lookup(to.as_ref())?,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: built,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A uniform linear combination of composable paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Scalar, Vec<usize>)>,
    source: usize,
    target: usize,
}

impl Relation {
    /// Terms are `(coefficient, arrow indices)`; the first arrow of each path acts first.
    pub fn new(quiver: &Quiver, terms: Vec<(Scalar, Vec<usize>)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::Quiver("empty relation".into()));
        };
        let endpoints = |path: &[usize]| -> Result<(usize, usize)> {
            if path.len() < 2 {
                return Err(Error::Quiver("relation paths must have length >= 2".into()));
            }
            if let Some(&bad) = path.iter().find(|&&a| a >= quiver.arrows.len()) {
                return Err(Error::Quiver(format!("unknown arrow index {bad}")));
            }
            for w in path.windows(2) {
                let (a, b) = (&quiver.arrows[w[0]], &quiver.arrows[w[1]]);
                if a.target != b.source {
                    return Err(Error::Quiver(format!(
                        "path is not composable at {} -> {}",
                        a.name, b.name
                    )));
                }
            }
            Ok((
                quiver.arrows[path[0]].source,
                quiver.arrows[*path.last().expect("nonempty")].target,
            ))
        };
        let (source, target) = endpoints(first)?;
        for (_, path) in &terms {
            if endpoints(path)? != (source, target) {
                return Err(Error::Quiver("relation is not uniform".into()));
            }
        }
        Ok(Relation { terms, source, target })
    }

    pub fn terms(&self) -> &[(Scalar, Vec<usize>)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }
}

/// A quiver together with a field and a set of relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
}

impl BoundQuiver {
    pub fn new(field: Field, quiver: Quiver, relations: Vec<Relation>) -> Result<Arc<Self>> {
        for r in &relations {
            if r.terms.iter().any(|(c, _)| !field.contains(c)) {
                return Err(Error::Quiver("relation coefficient from another field".into()));
            }
        }
        Ok(Arc::new(BoundQuiver {
            field,
            quiver,
            relations,
        }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }
}

/// A relation that fails to vanish on a representation, with its first nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub relation: usize,
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub shape_errors: Vec<String>,
    pub violations: Vec<RelationViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.shape_errors.is_empty() && self.violations.is_empty()
    }
}

/// Checks arrow-map shapes and relation annihilation for raw representation data.
pub fn validate(quiver: &BoundQuiver, dims: &[usize], maps: &[Matrix]) -> ValidationReport {
    let mut report = ValidationReport::default();
    if dims.len() != quiver.vertex_count() {
        report.shape_errors.push(format!(
            "{} dimensions for {} vertices",
            dims.len(),
            quiver.vertex_count()
        ));
        return report;
    }
    if maps.len() != quiver.arrow_count() {
        report
            .shape_errors
            .push(format!("{} maps for {} arrows", maps.len(), quiver.arrow_count()));
        return report;
    }
    for (a, m) in quiver.quiver.arrows.iter().zip(maps) {
        let want = (dims[a.target], dims[a.source]);
        if m.shape() != want {
            report.shape_errors.push(format!(
                "arrow {} has a {}x{} matrix, expected {}x{}",
                a.name,
                m.rows(),
                m.cols(),
                want.0,
                want.1
            ));
        }
        if m.field() != quiver.field {
            report
                .shape_errors
                .push(format!("arrow {} is over {}", a.name, m.field()));
        }
    }
    if !report.shape_errors.is_empty() {
        return report;
    }
    for (idx, rel) in quiver.relations.iter().enumerate() {
        let value = relation_value(quiver.field, dims, maps, rel);
        if let Some((row, col, v)) = value.first_nonzero() {
            report.violations.push(RelationViolation {
                relation: idx,
                row,
                col,
                value: v.clone(),
            });
        }
    }
    report
}

fn path_matrix(field: Field, dims: &[usize], maps: &[Matrix], start: usize, path: &[usize]) -> Matrix {
    let mut acc = Matrix::identity(field, dims[start]);
    for &a in path {
        acc = maps[a].mul(&acc);
    }
    acc
}

fn relation_value(field: Field, dims: &[usize], maps: &[Matrix], rel: &Relation) -> Matrix {
    let mut total = Matrix::zeros(field, dims[rel.target], dims[rel.source]);
    for (c, path) in &rel.terms {
        total = total.add(&path_matrix(field, dims, maps, rel.source, path).scale(c));
    }
    total
}

/// A finite-dimensional representation: one vector space per vertex, one matrix per arrow.
///
/// Cloning is cheap; arrow matrices are shared.
#[derive(Clone, Debug)]
pub struct Representation {
    quiver: Arc<BoundQuiver>,
    dims: Vec<usize>,
    maps: Arc<Vec<Matrix>>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.same_quiver(other) && self.dims == other.dims && self.maps == other.maps
    }
}

impl Eq for Representation {}

impl Representation {
    /// Builds a representation with consistent shapes. Relations are not checked; see [`Self::checked`].
    pub fn new(quiver: &Arc<BoundQuiver>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let mut report = validate(quiver, &dims, &maps);
        report.violations.clear();
        if !report.shape_errors.is_empty() {
            return Err(Error::Representation(report.shape_errors.join("; ")));
        }
        Ok(Representation {
            quiver: Arc::clone(quiver),
            dims,
            maps: Arc::new(maps),
        })
    }

    /// Builds a representation and requires every relation to vanish on it.
    pub fn checked(quiver: &Arc<BoundQuiver>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let rep = Representation::new(quiver, dims, maps)?;
        let report = rep.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::Representation(format!(
                "relation {} does not vanish (entry ({}, {}) = {})",
                v.relation, v.row, v.col, v.value
            )));
        }
        Ok(rep)
    }

    pub fn zero(quiver: &Arc<BoundQuiver>) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        Representation::with_zero_maps(quiver, dims)
    }

    /// The one-dimensional representation concentrated at `vertex`.
    pub fn vertex_simple(quiver: &Arc<BoundQuiver>, vertex: usize) -> Self {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[vertex] = 1;
        Representation::with_zero_maps(quiver, dims)
    }

    fn with_zero_maps(quiver: &Arc<BoundQuiver>, dims: Vec<usize>) -> Self {
        let f = quiver.field;
        let maps = quiver
            .quiver
            .arrows
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            quiver: Arc::clone(quiver),
            dims,
            maps: Arc::new(maps),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.quiver, &self.dims, &self.maps)
    }

    pub fn bound_quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.quiver.field
    }

    pub fn same_quiver(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, vertex: usize) -> usize {
        self.dims[vertex]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    /// Matrix of a path starting at `start`; the empty path is the identity there.
    pub fn path_action(&self, start: usize, path: &[usize]) -> Matrix {
        path_matrix(self.field(), &self.dims, &self.maps, start, path)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dims {:?}", self.dims)?;
        for (a, m) in self.quiver.quiver.arrows.iter().zip(self.maps.iter()) {
            write!(f, ", {} = {m}", a.name)?;
        }
        Ok(())
    }
}

/// A morphism of representations: one matrix per vertex commuting with every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    components: Vec<Matrix>,
}

impl Morphism {
    /// Builds a morphism, checking shapes and `N_a · f_{s(a)} = f_{t(a)} · M_a` for every arrow.
    pub fn new(source: &Representation, target: &Representation, components: Vec<Matrix>) -> Result<Self> {
        let m = Morphism::from_parts(source, target, components)?;
        if let Some(a) = m.failing_arrow() {
            return Err(Error::Representation(format!(
                "components do not commute with arrow {}",
                source.quiver.quiver.arrows[a].name
            )));
        }
        Ok(m)
    }

    /// Builds a morphism checking shapes only.
    pub(crate) fn from_parts(
        source: &Representation,
        target: &Representation,
        components: Vec<Matrix>,
    ) -> Result<Self> {
        if !source.same_quiver(target) {
            return Err(Error::QuiverMismatch);
        }
        if components.len() != source.dims.len() {
            return Err(Error::Representation("wrong number of morphism components".into()));
        }
        for (v, c) in components.iter().enumerate() {
            if c.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::Representation(format!(
                    "component at vertex {v} has the wrong shape"
                )));
            }
        }
        Ok(Morphism {
            source: source.clone(),
            target: target.clone(),
            components,
        })
    }

    fn failing_arrow(&self) -> Option<usize> {
        self.source
            .quiver
            .quiver
            .arrows
            .iter()
            .enumerate()
            .find_map(|(idx, a)| {
                let lhs = self.target.maps[idx].mul(&self.components[a.source]);
                let rhs = self.components[a.target].mul(&self.source.maps[idx]);
                (lhs != rhs).then_some(idx)
            })
    }

    pub fn is_valid(&self) -> bool {
        self.failing_arrow().is_none()
    }

    pub fn identity(rep: &Representation) -> Self {
        let f = rep.field();
        let components = rep.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        Morphism {
            source: rep.clone(),
            target: rep.clone(),
            components,
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let f = source.field();
        let components = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(f, t, s))
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, vertex: usize) -> &Matrix {
        &self.components[vertex]
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Morphism) -> Morphism {
        assert_eq!(other.target.dims, self.source.dims, "morphisms are not composable");
        Morphism {
            source: other.source.clone(),
            target: self.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        self.zip(other, Matrix::add)
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.zip(other, Matrix::sub)
    }

    fn zip(&self, other: &Morphism, op: impl Fn(&Matrix, &Matrix) -> Matrix) -> Morphism {
        assert_eq!(self.source.dims, other.source.dims, "source mismatch");
        assert_eq!(self.target.dims, other.target.dims, "target mismatch");
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// Invertible at every vertex.
    pub fn is_isomorphism(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.rows() == c.cols() && c.rank() == c.rows())
    }

    /// Concatenated row-major components, vertex by vertex.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.components
            .iter()
            .flat_map(|c| c.entries().iter().cloned())
            .collect()
    }

    /// Inverse of [`Self::to_vector`]; does not check commutativity.
    pub(crate) fn from_vector(source: &Representation, target: &Representation, v: &[Scalar]) -> Morphism {
        let f = source.field();
        let mut offset = 0;
        let components = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| {
                let m = Matrix::from_vec(f, t, s, v[offset..offset + s * t].to_vec()).expect("vector slice fits");
                offset += s * t;
                m
            })
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            components,
        }
    }
}

/// A direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Representation,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// Block-diagonal direct sum. The empty sum is the zero representation.
pub fn direct_sum(quiver: &Arc<BoundQuiver>, parts: &[Representation]) -> Result<DirectSum> {
    if parts
        .iter()
        .any(|p| !Arc::ptr_eq(&p.quiver, quiver) && *p.quiver != **quiver)
    {
        return Err(Error::QuiverMismatch);
    }
    let f = quiver.field;
    let nv = quiver.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..quiver.arrow_count())
        .map(|a| Matrix::block_diagonal(f, &parts.iter().map(|p| &p.maps[a]).collect::<Vec<_>>()))
        .collect();
    let sum = Representation {
        quiver: Arc::clone(quiver),
        dims,
        maps: Arc::new(maps),
    };
    let mut offsets = vec![0usize; nv];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for p in parts {
        let mut inj = Vec::with_capacity(nv);
        let mut proj = Vec::with_capacity(nv);
        for (v, offset) in offsets.iter_mut().enumerate() {
            let mut i = Matrix::zeros(f, sum.dims[v], p.dims[v]);
            i.paste(*offset, 0, &Matrix::identity(f, p.dims[v]));
            proj.push(i.transpose());
            inj.push(i);
            *offset += p.dims[v];
        }
        injections.push(Morphism {
            source: p.clone(),
            target: sum.clone(),
            components: inj,
        });
        projections.push(Morphism {
            source: sum.clone(),
            target: p.clone(),
            components: proj,
        });
    }
    Ok(DirectSum {
        sum,
        injections,
        projections,
    })
}

/// The kernel of `f` with its inclusion into `f.source()`.
pub fn kernel_of(f: &Morphism) -> Result<(Representation, Morphism)> {
    let field = f.source.field();
    let bases: Vec<Matrix> = f
        .components
        .iter()
        .zip(&f.source.dims)
        .map(|(c, &d)| Matrix::from_columns(field, d, &c.kernel_basis()))
        .collect();
    subrepresentation(&f.source, &bases)
}

/// The subrepresentation spanned at each vertex by the columns of `bases[v]`.
///
/// Columns must be linearly independent and the span must be arrow-stable.
pub fn subrepresentation(rep: &Representation, bases: &[Matrix]) -> Result<(Representation, Morphism)> {
    let field = rep.field();
    let solvers = bases
        .iter()
        .map(|b| {
            let cols: Vec<_> = (0..b.cols()).map(|j| b.column(j)).collect();
            crate::linalg::SpanSolver::new(field, b.rows(), &cols)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut maps = Vec::with_capacity(rep.quiver.arrow_count());
    for (idx, a) in rep.quiver.quiver.arrows.iter().enumerate() {
        let image = rep.maps[idx].mul(&bases[a.source]);
        let mut induced = Matrix::zeros(field, dims[a.target], dims[a.source]);
        for j in 0..image.cols() {
            let coords = solvers[a.target]
                .coordinates(&image.column(j))
                .ok_or_else(|| Error::Invariant(format!("subspace is not stable under arrow {}", a.name)))?;
            for (i, c) in coords.into_iter().enumerate() {
                induced.set(i, j, c);
            }
        }
        maps.push(induced);
    }
    let sub = Representation {
        quiver: Arc::clone(&rep.quiver),
        dims,
        maps: Arc::new(maps),
    };
    let inclusion = Morphism {
        source: sub.clone(),
        target: rep.clone(),
        components: bases.to_vec(),
    };
    Ok((sub, inclusion))
}

/// Quotient of `rep` by the arrow-stable subspaces spanned by `bases[v]`, with the quotient map.
pub fn quotient(rep: &Representation, bases: &[Matrix]) -> Result<(Representation, Morphism)> {
    let field = rep.field();
    let nv = rep.dims.len();
    let mut complements = Vec::with_capacity(nv);
    let mut projectors = Vec::with_capacity(nv);
    for (v, sub) in bases.iter().enumerate().take(nv) {
        let n = rep.dims[v];
        let k = sub.rank();
        if k != sub.cols() {
            return Err(Error::Invariant("quotient basis is linearly dependent".into()));
        }
        // extend the subspace basis by standard vectors, greedily
        let full = Matrix::hstack(field, n, &[sub, &Matrix::identity(field, n)]);
        let chosen: Vec<usize> = full.independent_columns();
        let extra: Vec<usize> = chosen.into_iter().filter(|&c| c >= k).collect();
        let complement = Matrix::from_columns(field, n, &extra.iter().map(|&c| full.column(c)).collect::<Vec<_>>());
        let change = Matrix::hstack(field, n, &[sub, &complement]);
        let inv = change.inverse().expect("extended basis is invertible");
        projectors.push(inv.submatrix(k, 0, n - k, n));
        complements.push(complement);
    }
    let dims: Vec<usize> = complements.iter().map(Matrix::cols).collect();
    let maps = rep
        .quiver
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(idx, a)| projectors[a.target].mul(&rep.maps[idx]).mul(&complements[a.source]))
        .collect();
    let q = Representation {
        quiver: Arc::clone(&rep.quiver),
        dims,
        maps: Arc::new(maps),
    };
    let map = Morphism {
        source: rep.clone(),
        target: q.clone(),
        components: projectors,
    };
    if !map.is_valid() {
        return Err(Error::Invariant("quotient subspace is not arrow-stable".into()));
    }
    Ok((q, map))
}

/// Outcome of a randomized isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// An explicit isomorphism `a → b`.
    Iso(Morphism),
    /// No isomorphism found; the string records which check failed.
    LikelyNot(String),
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }
}

/// Coefficients for random elements of Hom spaces are drawn from this range.
pub const RANDOM_COEFF_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

/// Randomized isomorphism test with deterministic pre-checks.
///
/// Dimension vectors, `dim Hom(a,b)` versus `dim Hom(b,a)` and `dim End` are
/// compared first; then up to `trials` random integer combinations of a
/// `Hom(a,b)` basis are tested for invertibility at every vertex.
pub fn is_isomorphic(a: &Representation, b: &Representation, trials: usize, seed: u64) -> Result<IsoVerdict> {
    if !a.same_quiver(b) {
        return Err(Error::QuiverMismatch);
    }
    if a.dims != b.dims {
        return Ok(IsoVerdict::LikelyNot(format!(
            "dimension vectors differ: {:?} vs {:?}",
            a.dims, b.dims
        )));
    }
    let ab = hom_space(a, b)?;
    let ba = hom_space(b, a)?;
    if ab.dim() != ba.dim() {
        return Ok(IsoVerdict::LikelyNot(format!(
            "dim Hom(a,b) = {} but dim Hom(b,a) = {}",
            ab.dim(),
            ba.dim()
        )));
    }
    let (ea, eb) = (hom_space(a, a)?.dim(), hom_space(b, b)?.dim());
    if ea != eb {
        return Ok(IsoVerdict::LikelyNot(format!(
            "dim End(a) = {ea} but dim End(b) = {eb}"
        )));
    }
    if a.is_zero() {
        return Ok(IsoVerdict::Iso(Morphism::identity(a)));
    }
    if ab.dim() == 0 {
        return Ok(IsoVerdict::LikelyNot("Hom(a,b) = 0".into()));
    }
    let field = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coeffs: Vec<Scalar> = (0..ab.dim())
            .map(|_| field.from_i64(rng.gen_range(RANDOM_COEFF_RANGE)))
            .collect();
        let candidate = ab.element(&coeffs);
        if candidate.is_isomorphism() {
            return Ok(IsoVerdict::Iso(candidate));
        }
    }
    Ok(IsoVerdict::LikelyNot(format!(
        "no invertible element of Hom(a,b) in {trials} random trials (seed {seed})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homext::{ext1_space, extension_of, ExtClass};

    const Q: Field = Field::Rational;

    pub(crate) fn a2() -> Arc<BoundQuiver> {
        let quiver = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        BoundQuiver::new(Q, quiver, vec![]).unwrap()
    }

    fn loop2() -> Arc<BoundQuiver> {
        let quiver = Quiver::new(&["1"], &[("t", "1", "1")]).unwrap();
        let rel = Relation::new(&quiver, vec![(Q.one(), vec![0, 0])]).unwrap();
        BoundQuiver::new(Q, quiver, vec![rel]).unwrap()
    }

    fn p1(q: &Arc<BoundQuiver>) -> Representation {
        Representation::checked(q, vec![1, 1], vec![Matrix::from_i64_rows(Q, &[&[1]])]).unwrap()
    }

    #[test]
    fn quiver_validation() {
        assert!(Quiver::new(&["1", "1"], &[]).is_err());
        assert!(Quiver::new(&["1"], &[("a", "1", "2")]).is_err());
        assert!(Quiver::new(&["1"], &[("a", "1", "1"), ("a", "1", "1")]).is_err());
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        assert!(Relation::new(&q, vec![(Q.one(), vec![0])]).is_err());
        assert!(Relation::new(&q, vec![(Q.one(), vec![0, 0])]).is_err());
        assert!(Relation::new(&q, vec![(Q.one(), vec![0, 1]), (Q.one(), vec![1, 0])]).is_err());
        assert!(Relation::new(&q, vec![(Q.one(), vec![0, 1])]).is_ok());
    }

    #[test]
    fn validate_examples() {
        let q = a2();
        assert!(Representation::vertex_simple(&q, 0).validate().is_valid());
        assert!(p1(&q).validate().is_valid());

        let l = loop2();
        let nil = Representation::new(&l, vec![2], vec![Matrix::from_i64_rows(Q, &[&[0, 1], &[0, 0]])]).unwrap();
        assert!(nil.validate().is_valid());
        let swap = Representation::new(&l, vec![2], vec![Matrix::from_i64_rows(Q, &[&[0, 1], &[1, 0]])]).unwrap();
        let report = swap.validate();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].relation, 0);
        assert_eq!((report.violations[0].row, report.violations[0].col), (0, 0));
        assert!(Representation::checked(&l, vec![2], vec![Matrix::from_i64_rows(Q, &[&[0, 1], &[1, 0]])]).is_err());

        let bad_shape = validate(&l, &[2], &[Matrix::zeros(Q, 1, 2)]);
        assert_eq!(bad_shape.shape_errors.len(), 1);
    }

    #[test]
    fn direct_sum_examples() {
        let q = a2();
        let (s1, s2) = (
            Representation::vertex_simple(&q, 0),
            Representation::vertex_simple(&q, 1),
        );
        let ds = direct_sum(&q, &[s1.clone(), s2.clone()]).unwrap();
        assert_eq!(ds.sum.dims(), &[1, 1]);
        assert!(ds.sum.map(0).is_zero());

        let single = direct_sum(&q, &[p1(&q)]).unwrap();
        assert_eq!(single.sum, p1(&q));
        assert_eq!(single.injections[0], Morphism::identity(&p1(&q)));

        let mixed = direct_sum(&q, &[p1(&q), s2.clone()]).unwrap();
        assert_eq!(mixed.sum.dims(), &[1, 2]);
        for (i, inj) in mixed.injections.iter().enumerate() {
            for (j, proj) in mixed.projections.iter().enumerate() {
                let c = proj.compose(inj);
                if i == j {
                    assert_eq!(c, Morphism::identity(inj.source()));
                } else {
                    assert!(c.is_zero());
                }
                assert!(inj.is_valid() && proj.is_valid());
            }
        }
        assert!(direct_sum(&q, &[]).unwrap().sum.is_zero());
    }

    #[test]
    fn kernel_examples() {
        let q = a2();
        let p = p1(&q);
        let (k, inc) = kernel_of(&Morphism::identity(&p)).unwrap();
        assert!(k.is_zero());
        assert!(inc.is_valid());

        let s2 = Representation::vertex_simple(&q, 1);
        let (k, inc) = kernel_of(&Morphism::zero(&p, &s2)).unwrap();
        assert_eq!(k, p);
        assert!(inc.is_valid());

        // P1 -> S1 (top) has kernel S2
        let top = Morphism::new(
            &p,
            &Representation::vertex_simple(&q, 0),
            vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 0, 1)],
        )
        .unwrap();
        let (k, inc) = kernel_of(&top).unwrap();
        assert_eq!(k.dims(), &[0, 1]);
        assert!(top.compose(&inc).is_zero());
    }

    #[test]
    fn quotient_by_socle() {
        let q = a2();
        let p = p1(&q);
        let socle = vec![Matrix::zeros(Q, 1, 0), Matrix::identity(Q, 1)];
        let (top, map) = quotient(&p, &socle).unwrap();
        assert_eq!(top, Representation::vertex_simple(&q, 0));
        assert!(map.is_valid());
    }

    #[test]
    fn isomorphism_examples() {
        let q = a2();
        let p = p1(&q);
        assert!(is_isomorphic(&p, &p, 20, 0).unwrap().is_iso());
        let ds = direct_sum(
            &q,
            &[
                Representation::vertex_simple(&q, 0),
                Representation::vertex_simple(&q, 1),
            ],
        )
        .unwrap()
        .sum;
        assert!(!is_isomorphic(&ds, &p, 20, 0).unwrap().is_iso());
        assert!(!is_isomorphic(&p, &ds, 20, 0).unwrap().is_iso());

        // extensions of S by S from proportional cocycles are isomorphic
        let l = loop2();
        let s = Representation::vertex_simple(&l, 0);
        let space = Arc::new(ext1_space(&s, &s).unwrap());
        let one = extension_of(&ExtClass::new(&space, vec![Q.one()]).unwrap()).unwrap();
        let two = extension_of(&ExtClass::new(&space, vec![Q.from_i64(2)]).unwrap()).unwrap();
        match is_isomorphic(&one.middle, &two.middle, 20, 7).unwrap() {
            IsoVerdict::Iso(w) => {
                assert!(w.is_valid() && w.is_isomorphism());
                assert_eq!(w.source(), &one.middle);
            }
            IsoVerdict::LikelyNot(why) => panic!("expected an isomorphism: {why}"),
        }
    }
}
