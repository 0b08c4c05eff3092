//! Iterated extensions of a simple collection: the universal extension tower
//! `F⁽⁰⁾ ← F⁽¹⁾ ← ⋯` and single-step custom extension sequences.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::homext::{
    ext1_space, extension_of, hom_space, universal_extension_from_spaces, BasisOrder, ExtClass, ExtSpace,
};
use crate::linalg::Scalar;
use crate::quiver::{direct_sum, BoundQuiver, DirectSum, Morphism, Representation, RANDOM_COEFF_RANGE};
use crate::{Error, Result};

/// The members `F_1, …, F_r` of a collection, all over one quiver with relations.
#[derive(Clone, Debug)]
pub struct Collection {
    quiver: Arc<BoundQuiver>,
    members: Vec<Representation>,
}

impl Collection {
    pub fn new(members: Vec<Representation>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::Precondition("a collection needs at least one member".into()))?;
        if members.iter().any(|m| !m.same_quiver(first)) {
            return Err(Error::QuiverMismatch);
        }
        Ok(Collection {
            quiver: Arc::clone(first.bound_quiver()),
            members,
        })
    }

    pub fn r(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Representation] {
        &self.members
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn sum(&self) -> Result<DirectSum> {
        direct_sum(&self.quiver, &self.members)
    }

    /// The same members in a different order: `perm[k]` is the old index of new member `k`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Collection::new(perm.iter().map(|&i| self.members[i].clone()).collect())
    }
}

/// `dim Hom(objects[i], members[j])` for all `i, j`.
pub fn hom_table(objects: &[Representation], c: &Collection) -> Result<Vec<Vec<usize>>> {
    objects
        .iter()
        .map(|g| c.members.iter().map(|f| Ok(hom_space(g, f)?.dim())).collect())
        .collect()
}

/// `dim Ext¹(objects[i], members[j])` for all `i, j`.
pub fn ext_table(objects: &[Representation], c: &Collection) -> Result<Vec<Vec<usize>>> {
    objects
        .iter()
        .map(|g| c.members.iter().map(|f| Ok(ext1_space(g, f)?.dim())).collect())
        .collect()
}

fn off_identity(table: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d != usize::from(i == j) {
                bad.push((i, j));
            }
        }
    }
    bad
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    /// `dim Hom(F_i, F_j)`.
    pub hom_dims: Vec<Vec<usize>>,
    pub offending: Vec<(usize, usize)>,
    pub pass: bool,
}

/// Passes iff `dim Hom(F_i, F_j) = δ_ij`.
pub fn check_simple_collection(c: &Collection) -> Result<SimplicityReport> {
    let hom_dims = hom_table(&c.members, c)?;
    let offending = off_identity(&hom_dims);
    Ok(SimplicityReport {
        pass: offending.is_empty(),
        hom_dims,
        offending,
    })
}

/// A snapshot of the universal extension tower at some level `n`.
#[derive(Clone, Debug)]
pub struct TowerState {
    levels: Vec<Vec<Representation>>,
    projections: Vec<Vec<Morphism>>,
    r_sequence: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl TowerState {
    /// Level 0: `F⁽⁰⁾_i = F_i`.
    pub fn initial(c: &Collection) -> Self {
        TowerState {
            levels: vec![c.members.clone()],
            projections: Vec::new(),
            r_sequence: vec![c.r()],
            multiplicities: vec![1; c.r()],
        }
    }

    pub fn level(&self) -> usize {
        self.levels.len() - 1
    }

    /// The summands `F⁽ⁿ⁾_i` at the current level.
    pub fn summands(&self) -> &[Representation] {
        self.levels.last().expect("at least level 0")
    }

    pub fn summands_at(&self, level: usize) -> &[Representation] {
        &self.levels[level]
    }

    /// Projections `F⁽ᵐ⁾_i → F⁽ᵐ⁻¹⁾_i` for `m = level ≥ 1`.
    pub fn projections_at(&self, level: usize) -> &[Morphism] {
        &self.projections[level - 1]
    }

    /// `(r₀, …, r_n)`.
    pub fn r_sequence(&self) -> &[usize] {
        &self.r_sequence
    }

    /// Number of copies of each `F_i` used to build `F⁽ⁿ⁾`.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn total(&self) -> Result<DirectSum> {
        let q = self.summands()[0].bound_quiver();
        direct_sum(q, self.summands())
    }

    pub fn total_dim(&self) -> usize {
        self.summands().iter().map(Representation::total_dim).sum()
    }

    /// Per-summand composite projections `F⁽ⁿ⁾_i → F⁽ᵖ⁾_i`.
    pub fn projection_to(&self, p: usize) -> Vec<Morphism> {
        assert!(p <= self.level(), "cannot project to a higher level");
        self.summands()
            .iter()
            .enumerate()
            .map(|(i, top)| {
                let mut acc = Morphism::identity(top);
                for m in (p + 1..=self.level()).rev() {
                    acc = self.projections[m - 1][i].compose(&acc);
                }
                acc
            })
            .collect()
    }

    /// `dim G^p(F⁽ⁿ⁾)` for `p = 0, …, n+1`, where `G^p = Ker(F⁽ⁿ⁾ → F⁽ᵖ⁻¹⁾)` and `G⁰ = F⁽ⁿ⁾`.
    pub fn filtration_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.total_dim()];
        for p in 1..=self.level() + 1 {
            let kernel: usize = self
                .projection_to(p - 1)
                .iter()
                .map(|f| f.components().iter().map(|c| c.cols() - c.rank()).sum::<usize>())
                .sum();
            dims.push(kernel);
        }
        dims
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TowerOptions {
    pub max_steps: usize,
    /// Stop before a step would push the total dimension above this.
    pub dim_limit: usize,
    pub basis_order: BasisOrder,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions {
            max_steps: 10,
            dim_limit: 2000,
            basis_order: BasisOrder::Canonical,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum TowerStatus {
    /// `Ext¹(F⁽ᴺ⁾, F_j) = 0` for all `j`.
    Terminated {
        level: usize,
    },
    CutoffReached {
        max_steps: usize,
    },
    DimensionLimit {
        level: usize,
        next_total_dim: usize,
        limit: usize,
    },
}

/// Per-level progress emitted while the tower runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub level: usize,
    pub r: usize,
    pub summand_dims: Vec<Vec<usize>>,
    /// `dim Ext¹(F⁽ⁿ⁾_i, F_j)`.
    pub ext_dims: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct TowerResult {
    pub state: TowerState,
    pub status: TowerStatus,
    /// `ext_tables[n][i][j] = dim Ext¹(F⁽ⁿ⁾_i, F_j)` for every computed level.
    pub ext_tables: Vec<Vec<Vec<usize>>>,
}

impl TowerResult {
    pub fn terminated(&self) -> bool {
        matches!(self.status, TowerStatus::Terminated { .. })
    }
}

enum Advance {
    Stepped(TowerState),
    Exhausted,
    TooLarge(usize),
}

fn advance(state: &TowerState, c: &Collection, spaces: Vec<Vec<ExtSpace>>, options: &TowerOptions) -> Result<Advance> {
    let table: Vec<Vec<usize>> = spaces
        .iter()
        .map(|row| row.iter().map(ExtSpace::dim).collect())
        .collect();
    let r_next: usize = table.iter().flatten().sum();
    if r_next == 0 {
        return Ok(Advance::Exhausted);
    }
    let added: usize = table
        .iter()
        .map(|row| {
            row.iter()
                .zip(&c.members)
                .map(|(d, f)| d * f.total_dim())
                .sum::<usize>()
        })
        .sum();
    let next_total = state.total_dim() + added;
    if next_total > options.dim_limit {
        return Ok(Advance::TooLarge(next_total));
    }
    let mut summands = Vec::with_capacity(c.r());
    let mut projections = Vec::with_capacity(c.r());
    for (g, row) in state.summands().iter().zip(&spaces) {
        let u = universal_extension_from_spaces(g, &c.members, row, options.basis_order)?;
        summands.push(u.middle);
        projections.push(u.projection);
    }
    let mut next = state.clone();
    next.levels.push(summands);
    next.projections.push(projections);
    next.r_sequence.push(r_next);
    for row in &table {
        for (j, d) in row.iter().enumerate() {
            next.multiplicities[j] += d;
        }
    }
    Ok(Advance::Stepped(next))
}

fn level_spaces(state: &TowerState, c: &Collection) -> Result<Vec<Vec<ExtSpace>>> {
    state
        .summands()
        .iter()
        .map(|g| c.members.iter().map(|f| ext1_space(g, f)).collect())
        .collect()
}

/// One universal extension step; returns the state unchanged once all Ext¹ vanish.
pub fn tower_step(state: &TowerState, c: &Collection) -> Result<TowerState> {
    let options = TowerOptions {
        dim_limit: usize::MAX,
        ..TowerOptions::default()
    };
    match advance(state, c, level_spaces(state, c)?, &options)? {
        Advance::Stepped(next) => Ok(next),
        Advance::Exhausted | Advance::TooLarge(_) => Ok(state.clone()),
    }
}

pub fn run_tower(c: &Collection, options: &TowerOptions) -> Result<TowerResult> {
    run_tower_observed(c, options, |_| {})
}

/// Runs the tower, calling `observe` once per computed level.
pub fn run_tower_observed(
    c: &Collection,
    options: &TowerOptions,
    mut observe: impl FnMut(&StepRecord),
) -> Result<TowerResult> {
    let simple = check_simple_collection(c)?;
    if !simple.pass {
        return Err(Error::Precondition(format!(
            "collection is not simple: offending pairs {:?}",
            simple.offending
        )));
    }
    let mut state = TowerState::initial(c);
    let mut ext_tables = Vec::new();
    loop {
        let spaces = level_spaces(&state, c)?;
        let table: Vec<Vec<usize>> = spaces
            .iter()
            .map(|row| row.iter().map(ExtSpace::dim).collect())
            .collect();
        observe(&StepRecord {
            level: state.level(),
            r: *state.r_sequence.last().expect("nonempty"),
            summand_dims: state.summands().iter().map(|s| s.dims().to_vec()).collect(),
            ext_dims: table.clone(),
        });
        ext_tables.push(table);
        if table_is_zero(ext_tables.last().expect("just pushed")) {
            let level = state.level();
            return Ok(TowerResult {
                state,
                status: TowerStatus::Terminated { level },
                ext_tables,
            });
        }
        if state.level() >= options.max_steps {
            return Ok(TowerResult {
                state,
                status: TowerStatus::CutoffReached {
                    max_steps: options.max_steps,
                },
                ext_tables,
            });
        }
        match advance(&state, c, spaces, options)? {
            Advance::Stepped(next) => state = next,
            Advance::Exhausted => unreachable!("nonzero Ext table"),
            Advance::TooLarge(next_total_dim) => {
                let level = state.level();
                return Ok(TowerResult {
                    state,
                    status: TowerStatus::DimensionLimit {
                        level,
                        next_total_dim,
                        limit: options.dim_limit,
                    },
                    ext_tables,
                });
            }
        }
    }
}

fn table_is_zero(t: &[Vec<usize>]) -> bool {
    t.iter().flatten().all(|&d| d == 0)
}

/// Which class of `Ext¹(G_i, F_j)` a custom step extends by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSelector {
    Basis(usize),
    Coordinates(Vec<Scalar>),
}

/// One non-trivial extension `0 → F_j → G'_i → G_i → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionStep {
    pub i: usize,
    pub j: usize,
    pub selector: ClassSelector,
}

/// A sequence of iterated non-trivial extensions `G⁰, …, Gᴺ`, each a list of summands.
#[derive(Clone, Debug)]
pub struct CustomRun {
    pub objects: Vec<Vec<Representation>>,
    /// Coordinates of the class used at each step.
    pub steps: Vec<(usize, usize, Vec<Scalar>)>,
    /// Whether `Ext¹(Gᴺ, F_j) = 0` for all `j`.
    pub maximal: bool,
}

impl CustomRun {
    pub fn last(&self) -> &[Representation] {
        self.objects.last().expect("at least G⁰")
    }
}

fn extend_once(
    current: &[Representation],
    c: &Collection,
    i: usize,
    j: usize,
    selector: &ClassSelector,
) -> Result<(Vec<Representation>, Vec<Scalar>)> {
    if i >= c.r() || j >= c.r() {
        return Err(Error::Precondition(format!(
            "step ({i}, {j}) is out of range for r = {}",
            c.r()
        )));
    }
    let space = Arc::new(ext1_space(&current[i], &c.members[j])?);
    if space.dim() == 0 {
        return Err(Error::Precondition(format!(
            "Ext¹(G_{i}, F_{j}) = 0: no non-trivial extension"
        )));
    }
    let class = match selector {
        ClassSelector::Basis(k) => ExtClass::basis(&space, *k)?,
        ClassSelector::Coordinates(v) => ExtClass::new(&space, v.clone())?,
    };
    if class.is_zero() {
        return Err(Error::Precondition("selected class is zero".into()));
    }
    let ext = extension_of(&class)?;
    let mut next = current.to_vec();
    next[i] = ext.middle;
    Ok((next, class.coordinates().to_vec()))
}

fn is_maximal(objects: &[Representation], c: &Collection) -> Result<bool> {
    Ok(table_is_zero(&ext_table(objects, c)?))
}

/// Builds `G⁰ = ⊕F_i` and then one extension per step. At most `max` steps are accepted.
pub fn run_custom_sequence(c: &Collection, steps: &[ExtensionStep], max: usize) -> Result<CustomRun> {
    if steps.len() > max {
        return Err(Error::Precondition(format!(
            "{} steps exceed the limit {max}",
            steps.len()
        )));
    }
    let mut objects = vec![c.members.clone()];
    let mut used = Vec::new();
    for step in steps {
        let (next, coords) = extend_once(objects.last().expect("nonempty"), c, step.i, step.j, &step.selector)?;
        objects.push(next);
        used.push((step.i, step.j, coords));
    }
    let maximal = is_maximal(objects.last().expect("nonempty"), c)?;
    Ok(CustomRun {
        objects,
        steps: used,
        maximal,
    })
}

/// Extends by seeded random non-zero classes at random admissible `(i, j)` until no
/// extension remains or `max` steps were taken.
pub fn random_maximal_sequence(c: &Collection, seed: u64, max: usize) -> Result<CustomRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = c.quiver.field();
    let mut objects = vec![c.members.clone()];
    let mut used = Vec::new();
    loop {
        let current = objects.last().expect("nonempty");
        let table = ext_table(current, c)?;
        let choices: Vec<(usize, usize, usize)> = table
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(move |(j, &d)| (i, j, d))
            })
            .collect();
        if choices.is_empty() {
            return Ok(CustomRun {
                objects,
                steps: used,
                maximal: true,
            });
        }
        if used.len() >= max {
            return Ok(CustomRun {
                objects,
                steps: used,
                maximal: false,
            });
        }
        let (i, j, d) = choices[rng.gen_range(0..choices.len())];
        let coords = loop {
            let v: Vec<Scalar> = (0..d)
                .map(|_| field.from_i64(rng.gen_range(RANDOM_COEFF_RANGE)))
                .collect();
            if v.iter().any(|x| !x.is_zero()) {
                break v;
            }
        };
        let (next, coords) = extend_once(current, c, i, j, &ClassSelector::Coordinates(coords))?;
        objects.push(next);
        used.push((i, j, coords));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VersalityReport {
    /// `dim Hom(g_i, F_j)`.
    pub hom_dims: Vec<Vec<usize>>,
    /// `dim Ext¹(g, F_j)` for `g = ⊕ g_i`.
    pub ext_dims: Vec<usize>,
    pub pass: bool,
}

/// Passes iff `dim Hom(g_i, F_j) = δ_ij` and `Ext¹(⊕g_i, F_j) = 0` for all `i, j`.
pub fn verify_versality(g: &[Representation], c: &Collection) -> Result<VersalityReport> {
    let hom_dims = hom_table(g, c)?;
    let table = ext_table(g, c)?;
    let ext_dims: Vec<usize> = (0..c.r()).map(|j| table.iter().map(|row| row[j]).sum()).collect();
    let pass = hom_dims.len() == c.r() && off_identity(&hom_dims).is_empty() && ext_dims.iter().all(|&d| d == 0);
    Ok(VersalityReport {
        hom_dims,
        ext_dims,
        pass,
    })
}
