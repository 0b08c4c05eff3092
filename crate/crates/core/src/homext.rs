//! Hom and Ext¹ between representations, extensions built from cocycles,
//! pullbacks of classes, universal extensions and common extensions.
//!
//! Ext¹(M, N) is computed from the cochain complex
//!
//! ```text
//! C⁰ = ⊕_v Hom(M_v, N_v)  --d⁰-->  C¹ = ⊕_a Hom(M_s(a), N_t(a))  --d¹-->  C² = ⊕_r Hom(M_s(r), N_t(r))
//! d⁰(f)_a = N_a f_s(a) − f_t(a) M_a
//! d¹(η)_r = Σ_terms c · Σ_m N_(a_{m+1}…a_k) η_(a_m) M_(a_1…a_{m−1})
//! ```
//!
//! Hom(M, N) = ker d⁰ and Ext¹(M, N) = ker d¹ / im d⁰. A cocycle `η` gives
//! the extension `0 → N → E → M → 0` with `E_a = [[N_a, η_a], [0, M_a]]`.

use std::sync::Arc;

use serde::Serialize;

use crate::linalg::{combine, is_zero_vector, rank_of, Matrix, Scalar, SpanSolver};
use crate::quiver::{direct_sum, kernel_of, Morphism, Representation};
use crate::{Error, Result};

/// Offsets of the per-vertex / per-arrow / per-relation blocks in vectorized cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CochainLayout {
    c0: Vec<usize>,
    c0_dim: usize,
    c1: Vec<usize>,
    c1_dim: usize,
    c2: Vec<usize>,
    c2_dim: usize,
}

fn prefix_sums(sizes: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut offsets = Vec::new();
    let mut total = 0;
    for s in sizes {
        offsets.push(total);
        total += s;
    }
    (offsets, total)
}

impl CochainLayout {
    fn new(m: &Representation, n: &Representation) -> Self {
        let q = m.bound_quiver();
        let (c0, c0_dim) = prefix_sums((0..q.vertex_count()).map(|v| n.dim_at(v) * m.dim_at(v)));
        let (c1, c1_dim) = prefix_sums(
            q.quiver()
                .arrows()
                .iter()
                .map(|a| n.dim_at(a.target) * m.dim_at(a.source)),
        );
        let (c2, c2_dim) = prefix_sums(
            q.relations()
                .iter()
                .map(|r| n.dim_at(r.target()) * m.dim_at(r.source())),
        );
        CochainLayout {
            c0,
            c0_dim,
            c1,
            c1_dim,
            c2,
            c2_dim,
        }
    }
}

fn coboundary_matrix(m: &Representation, n: &Representation, layout: &CochainLayout) -> Matrix {
    let f = m.field();
    let q = m.bound_quiver();
    let mut d0 = Matrix::zeros(f, layout.c1_dim, layout.c0_dim);
    for (idx, a) in q.quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let push = Matrix::sandwich_operator(n.map(idx), &Matrix::identity(f, m.dim_at(s)));
        d0.accumulate(layout.c1[idx], layout.c0[s], &push);
        let pull = Matrix::sandwich_operator(&Matrix::identity(f, n.dim_at(t)), m.map(idx)).neg();
        d0.accumulate(layout.c1[idx], layout.c0[t], &pull);
    }
    d0
}

fn relation_derivative_matrix(m: &Representation, n: &Representation, layout: &CochainLayout) -> Matrix {
    let f = m.field();
    let q = m.bound_quiver();
    let arrows = q.quiver().arrows();
    let mut d1 = Matrix::zeros(f, layout.c2_dim, layout.c1_dim);
    for (ridx, rel) in q.relations().iter().enumerate() {
        for (c, path) in rel.terms() {
            for (pos, &a) in path.iter().enumerate() {
                let before = m.path_action(rel.source(), &path[..pos]);
                let after = n.path_action(arrows[a].target, &path[pos + 1..]);
                let block = Matrix::sandwich_operator(&after, &before).scale(c);
                d1.accumulate(layout.c2[ridx], layout.c1[a], &block);
            }
        }
    }
    d1
}

fn check_same_quiver(m: &Representation, n: &Representation) -> Result<()> {
    if m.same_quiver(n) {
        Ok(())
    } else {
        Err(Error::QuiverMismatch)
    }
}

/// A basis of Hom(M, N).
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Representation,
    target: Representation,
    basis: Vec<Morphism>,
    solver: SpanSolver,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    /// `Σ cᵢ·bᵢ` over the basis.
    pub fn element(&self, coeffs: &[Scalar]) -> Morphism {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        let f = self.source.field();
        let vectors: Vec<_> = self.basis.iter().map(Morphism::to_vector).collect();
        let len = vectors.first().map_or(0, Vec::len);
        Morphism::from_vector(&self.source, &self.target, &combine(f, len, coeffs, &vectors))
    }

    /// Coordinates of a morphism in the basis; `None` if it is not a morphism `M → N`.
    pub fn coordinates(&self, f: &Morphism) -> Option<Vec<Scalar>> {
        if f.source().dims() != self.source.dims() || f.target().dims() != self.target.dims() {
            return None;
        }
        self.solver.coordinates(&f.to_vector())
    }
}

/// Exact basis of Hom(m, n): the solutions of the per-arrow commuting equations.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    check_same_quiver(m, n)?;
    let layout = CochainLayout::new(m, n);
    let d0 = coboundary_matrix(m, n, &layout);
    let kernel = d0.kernel_basis();
    let solver = SpanSolver::new(m.field(), layout.c0_dim, &kernel)?;
    let basis = kernel.iter().map(|v| Morphism::from_vector(m, n, v)).collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
        solver,
    })
}

/// A basis of Ext¹(M, N) by cocycle representatives.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    source: Representation,
    target: Representation,
    layout: CochainLayout,
    relation_derivative: Matrix,
    cocycles: Vec<Vec<Scalar>>,
    coboundary_rank: usize,
    // over cocycles followed by a basis of coboundaries
    solver: SpanSolver,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }

    /// `M` in `0 → N → E → M → 0`.
    pub fn source(&self) -> &Representation {
        &self.source
    }

    /// `N` in `0 → N → E → M → 0`.
    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn coboundary_rank(&self) -> usize {
        self.coboundary_rank
    }

    /// Basis cocycle `i` as per-arrow matrices `η_a`.
    pub fn cocycle(&self, i: usize) -> Vec<Matrix> {
        self.unflatten(&self.cocycles[i])
    }

    fn unflatten(&self, v: &[Scalar]) -> Vec<Matrix> {
        let f = self.source.field();
        self.source
            .bound_quiver()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let (rows, cols) = (self.target.dim_at(a.target), self.source.dim_at(a.source));
                let start = self.layout.c1[idx];
                Matrix::from_vec(f, rows, cols, v[start..start + rows * cols].to_vec()).expect("slice fits")
            })
            .collect()
    }

    fn flatten(cocycle: &[Matrix]) -> Vec<Scalar> {
        cocycle.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Coordinates of the class of a cocycle, or `None` if `η` is not a cocycle.
    pub fn class_of(&self, cocycle: &[Matrix]) -> Option<Vec<Scalar>> {
        let v = ExtSpace::flatten(cocycle);
        if v.len() != self.layout.c1_dim || !is_zero_vector(&self.relation_derivative.mul_vec(&v)) {
            return None;
        }
        let coords = self
            .solver
            .coordinates(&v)
            .expect("every cocycle lies in cocycle basis + coboundaries");
        Some(coords[..self.dim()].to_vec())
    }
}

/// Ext¹(m, n) as cocycles modulo coboundaries.
///
/// The cocycle basis keeps the kernel-basis vectors of `d¹` that are
/// independent modulo `im d⁰`, in kernel-basis order.
pub fn ext1_space(m: &Representation, n: &Representation) -> Result<ExtSpace> {
    check_same_quiver(m, n)?;
    let f = m.field();
    let layout = CochainLayout::new(m, n);
    let d0 = coboundary_matrix(m, n, &layout);
    let d1 = relation_derivative_matrix(m, n, &layout);
    let coboundaries: Vec<Vec<Scalar>> = d0.independent_columns().into_iter().map(|j| d0.column(j)).collect();
    let cycles = d1.kernel_basis();
    let mut stacked = coboundaries.clone();
    stacked.extend(cycles.iter().cloned());
    let chosen = if stacked.is_empty() {
        Vec::new()
    } else {
        Matrix::from_columns(f, layout.c1_dim, &stacked).independent_columns()
    };
    let cocycles: Vec<Vec<Scalar>> = chosen
        .into_iter()
        .filter(|&j| j >= coboundaries.len())
        .map(|j| stacked[j].clone())
        .collect();
    let mut span = cocycles.clone();
    span.extend(coboundaries.iter().cloned());
    let solver = SpanSolver::new(f, layout.c1_dim, &span)?;
    Ok(ExtSpace {
        source: m.clone(),
        target: n.clone(),
        layout,
        relation_derivative: d1,
        coboundary_rank: coboundaries.len(),
        cocycles,
        solver,
    })
}

/// An element of a computed Ext¹ space, by coordinates in its cocycle basis.
#[derive(Clone, Debug)]
pub struct ExtClass {
    space: Arc<ExtSpace>,
    coords: Vec<Scalar>,
}

impl PartialEq for ExtClass {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.space, &other.space)
            || (self.space.source == other.space.source && self.space.target == other.space.target))
            && self.coords == other.coords
    }
}

impl ExtClass {
    pub fn new(space: &Arc<ExtSpace>, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::Precondition(format!(
                "{} coordinates for an Ext space of dimension {}",
                coords.len(),
                space.dim()
            )));
        }
        if coords.iter().any(|c| !space.source.field().contains(c)) {
            return Err(crate::LinalgError::FieldMismatch.into());
        }
        Ok(ExtClass {
            space: Arc::clone(space),
            coords,
        })
    }

    pub fn basis(space: &Arc<ExtSpace>, i: usize) -> Result<Self> {
        if i >= space.dim() {
            return Err(Error::Precondition(format!(
                "basis index {i} out of range for an Ext space of dimension {}",
                space.dim()
            )));
        }
        let f = space.source.field();
        let coords = (0..space.dim())
            .map(|k| if k == i { f.one() } else { f.zero() })
            .collect();
        Ok(ExtClass {
            space: Arc::clone(space),
            coords,
        })
    }

    pub fn zero(space: &Arc<ExtSpace>) -> Self {
        let f = space.source.field();
        ExtClass {
            space: Arc::clone(space),
            coords: vec![f.zero(); space.dim()],
        }
    }

    pub fn space(&self) -> &Arc<ExtSpace> {
        &self.space
    }

    pub fn coordinates(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }

    /// Representative cocycle `Σ cᵢ ηᵢ`.
    pub fn cocycle(&self) -> Vec<Matrix> {
        let v = combine(
            self.space.source.field(),
            self.space.layout.c1_dim,
            &self.coords,
            &self.space.cocycles,
        );
        self.space.unflatten(&v)
    }

    /// `α·self + β·other`, both in the same space.
    pub fn linear_combination(&self, alpha: &Scalar, other: &ExtClass, beta: &Scalar) -> ExtClass {
        assert!(
            Arc::ptr_eq(&self.space, &other.space),
            "classes from different Ext spaces"
        );
        ExtClass {
            space: Arc::clone(&self.space),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| &(alpha * x) + &(beta * y))
                .collect(),
        }
    }
}

/// A short exact sequence `0 → N → E → M → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

/// Builds `E` with `E_v = N_v ⊕ M_v` and `E_a = [[N_a, η_a], [0, M_a]]`.
pub fn extension_from_cocycle(m: &Representation, n: &Representation, cocycle: &[Matrix]) -> Result<Extension> {
    let f = m.field();
    let q = m.bound_quiver();
    let dims: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
    let maps = q
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let (s, t) = (a.source, a.target);
            let mut e = Matrix::zeros(f, dims[t], dims[s]);
            e.paste(0, 0, n.map(idx));
            e.paste(0, n.dim_at(s), &cocycle[idx]);
            e.paste(n.dim_at(t), n.dim_at(s), m.map(idx));
            e
        })
        .collect();
    let middle = Representation::new(q, dims, maps)?;
    let report = middle.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::Invariant(format!(
            "extension violates relation {} at ({}, {}) = {}: the cochain complex and the relations disagree",
            v.relation, v.row, v.col, v.value
        )));
    }
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for v in 0..q.vertex_count() {
        let (dn, dm) = (n.dim_at(v), m.dim_at(v));
        let mut i = Matrix::zeros(f, dn + dm, dn);
        i.paste(0, 0, &Matrix::identity(f, dn));
        let mut p = Matrix::zeros(f, dm, dn + dm);
        p.paste(0, dn, &Matrix::identity(f, dm));
        inc.push(i);
        proj.push(p);
    }
    let inclusion = Morphism::new(n, &middle, inc)?;
    let projection = Morphism::new(&middle, m, proj)?;
    Ok(Extension {
        middle,
        inclusion,
        projection,
    })
}

/// The extension `0 → N → E → M → 0` represented by a class in Ext¹(M, N).
pub fn extension_of(class: &ExtClass) -> Result<Extension> {
    extension_from_cocycle(&class.space.source, &class.space.target, &class.cocycle())
}

/// Pullback of `xi ∈ Ext¹(G, F)` along `f: G' → G`, expressed in a fresh basis of Ext¹(G', F).
pub fn pullback_class(xi: &ExtClass, f: &Morphism) -> Result<ExtClass> {
    let space = &xi.space;
    if f.target() != &space.source {
        return Err(Error::Precondition(
            "morphism target differs from the source of the Ext space".into(),
        ));
    }
    let target_space = Arc::new(ext1_space(f.source(), &space.target)?);
    pullback_into(xi, f, &target_space)
}

/// Pullback into a precomputed space Ext¹(f.source(), F).
pub fn pullback_into(xi: &ExtClass, f: &Morphism, target_space: &Arc<ExtSpace>) -> Result<ExtClass> {
    let arrows = f.source().bound_quiver().quiver().arrows();
    let pulled: Vec<Matrix> = xi
        .cocycle()
        .iter()
        .zip(arrows)
        .map(|(eta, a)| eta.mul(f.component(a.source)))
        .collect();
    let coords = target_space
        .class_of(&pulled)
        .ok_or_else(|| Error::Invariant("pulled-back family is not a cocycle".into()))?;
    ExtClass::new(target_space, coords)
}

/// Order in which basis cocycles are stacked in a universal extension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum BasisOrder {
    #[default]
    Canonical,
    Reversed,
}

/// The universal extension `0 → ⊕_j F_j^{d_j} → G' → G → 0` with `d_j = dim Ext¹(G, F_j)`.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    pub middle: Representation,
    /// `⊕_j F_j^{d_j}`, copies ordered by `j` then by basis cocycle.
    pub kernel: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
    pub ext_dims: Vec<usize>,
}

impl UniversalExtension {
    pub fn is_trivial(&self) -> bool {
        self.ext_dims.iter().all(|&d| d == 0)
    }
}

pub fn universal_extension(g: &Representation, collection: &[Representation]) -> Result<UniversalExtension> {
    universal_extension_with(g, collection, BasisOrder::Canonical)
}

/// Universal extension with an explicit stacking order for the basis cocycles.
pub fn universal_extension_with(
    g: &Representation,
    collection: &[Representation],
    order: BasisOrder,
) -> Result<UniversalExtension> {
    let spaces = collection
        .iter()
        .map(|fj| ext1_space(g, fj))
        .collect::<Result<Vec<_>>>()?;
    universal_extension_from_spaces(g, collection, &spaces, order)
}

pub(crate) fn universal_extension_from_spaces(
    g: &Representation,
    collection: &[Representation],
    spaces: &[ExtSpace],
    order: BasisOrder,
) -> Result<UniversalExtension> {
    let q = g.bound_quiver();
    let f = g.field();
    let ext_dims: Vec<usize> = spaces.iter().map(ExtSpace::dim).collect();
    let mut copies = Vec::new();
    let mut blocks: Vec<Vec<Matrix>> = Vec::new();
    for (j, space) in spaces.iter().enumerate() {
        let mut idx: Vec<usize> = (0..space.dim()).collect();
        if order == BasisOrder::Reversed {
            idx.reverse();
        }
        for i in idx {
            copies.push(collection[j].clone());
            blocks.push(space.cocycle(i));
        }
    }
    if copies.is_empty() {
        let zero = crate::quiver::Representation::zero(q);
        return Ok(UniversalExtension {
            middle: g.clone(),
            inclusion: Morphism::zero(&zero, g),
            kernel: zero,
            projection: Morphism::identity(g),
            ext_dims,
        });
    }
    let kernel = direct_sum(q, &copies)?.sum;
    let cocycle: Vec<Matrix> = q
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let parts: Vec<&Matrix> = blocks.iter().map(|b| &b[idx]).collect();
            Matrix::vstack(f, g.dim_at(a.source), &parts)
        })
        .collect();
    let ext = extension_from_cocycle(g, &kernel, &cocycle)?;
    Ok(UniversalExtension {
        middle: ext.middle,
        kernel,
        inclusion: ext.inclusion,
        projection: ext.projection,
        ext_dims,
    })
}

/// A common extension `H` of two extensions `G_0 → G` and `G_1 → G`.
#[derive(Clone, Debug)]
pub struct CommonExtension {
    pub h: Representation,
    /// `G_j` with `0 → F_{i_j} → G_j → G → 0`.
    pub middles: [Extension; 2],
    /// `H → G_j`, with kernel `F_{i_{1−j}}`.
    pub maps: [Morphism; 2],
    /// Class of `0 → F_{i_{1−j}} → H → G_j → 0`: `ξ_{1−j}` pulled back to `G_j`.
    pub pulled_back: [ExtClass; 2],
}

impl CommonExtension {
    pub fn is_nontrivial(&self) -> bool {
        self.pulled_back.iter().all(|c| !c.is_zero())
    }
}

/// Builds `H = Ker(p₀ − p₁: G₀ ⊕ G₁ → G)` for nonzero classes `xi0`, `xi1` over the same `G`.
///
/// When both classes have the same target they must be linearly independent.
pub fn common_extension(xi0: &ExtClass, xi1: &ExtClass) -> Result<CommonExtension> {
    let (s0, s1) = (&xi0.space, &xi1.space);
    if s0.source != s1.source {
        return Err(Error::Precondition(
            "classes are extensions of different objects".into(),
        ));
    }
    if xi0.is_zero() || xi1.is_zero() {
        return Err(Error::Precondition("both classes must be nonzero".into()));
    }
    let same_target = s0.target == s1.target;
    if same_target {
        let f = s0.source.field();
        if rank_of(f, s0.dim(), &[xi0.coords.clone(), xi1.coords.clone()]) < 2 {
            return Err(Error::Precondition(
                "classes with the same target are proportional: the extensions are isomorphic".into(),
            ));
        }
    }
    let g = &s0.source;
    let e0 = extension_of(xi0)?;
    let e1 = extension_of(xi1)?;
    let q = g.bound_quiver();
    let ds = direct_sum(q, &[e0.middle.clone(), e1.middle.clone()])?;
    let diff = e0
        .projection
        .compose(&ds.projections[0])
        .sub(&e1.projection.compose(&ds.projections[1]));
    let (h, inc) = kernel_of(&diff)?;
    let to0 = ds.projections[0].compose(&inc);
    let to1 = ds.projections[1].compose(&inc);
    for (map, fiber) in [(&to0, &s1.target), (&to1, &s0.target)] {
        let (k, _) = kernel_of(map)?;
        let surjective = map.components().iter().all(|c| c.rank() == c.rows());
        if !surjective || k.dims() != fiber.dims() {
            return Err(Error::Invariant("common extension maps have the wrong kernel".into()));
        }
    }
    // ξ'_j = image of ξ_j in Ext¹(G_{1−j}, F_{i_j})
    let pulled1 = pullback_class(xi1, &e0.projection)?;
    let pulled0 = pullback_class(xi0, &e1.projection)?;
    Ok(CommonExtension {
        h,
        middles: [e0, e1],
        maps: [to0, to1],
        pulled_back: [pulled1, pulled0],
    })
}

/// `dim Ext¹(m, n)` without keeping the basis.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(ext1_space(m, n)?.dim())
}
