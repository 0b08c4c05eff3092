//! The endomorphism algebra `R = End(F⁽ᴺ⁾)` of a tower as an r-pointed Artin
//! algebra, and the algebra-level checks: Artin axioms, radical filtration,
//! flatness, socle and Gorenstein property, duality, the spherical permutation.
//!
//! Multiplication in `R` is composition, `x·y = x ∘ y`, so
//! `e_j R e_i = Hom(F⁽ᴺ⁾_i, F⁽ᴺ⁾_j)` and `F⁽ᴺ⁾` is a left `R`-module.

mod algebra;

pub use algebra::{AlgebraModule, PointedAlgebra, Side};

use serde::Serialize;

use crate::homext::hom_space;
use crate::linalg::{is_zero_vector, Matrix, Scalar};
use crate::quiver::{direct_sum, is_isomorphic, quotient, DirectSum, Morphism, Representation};
use crate::tower::{Collection, TowerResult};
use crate::{Error, Result};

/// `End(F⁽ᴺ⁾)` with its basis of endomorphisms.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: PointedAlgebra,
    pub basis: Vec<Morphism>,
    /// `F⁽ᴺ⁾ = ⊕ F⁽ᴺ⁾_i` with injections and projections.
    pub module: DirectSum,
}

impl EndAlgebra {
    /// The endomorphism of `F⁽ᴺ⁾` with the given coordinates.
    pub fn endomorphism(&self, coords: &[Scalar]) -> Morphism {
        let mut acc = Morphism::zero(&self.module.sum, &self.module.sum);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Extracts `End(F⁽ᴺ⁾)` from the final tower level.
///
/// The augmentation is found by descending each endomorphism along the
/// composite projection `F⁽ᴺ⁾ → F⁽⁰⁾`; failure to descend is an invariant
/// violation.
pub fn end_algebra(tower: &TowerResult) -> Result<EndAlgebra> {
    let state = &tower.state;
    let module = state.total()?;
    let f = &module.sum;
    let field = f.field();
    let r = state.summands().len();
    let hom = hom_space(f, f)?;
    let basis = hom.basis().to_vec();
    let coords = |m: &Morphism, what: &str| {
        hom.coordinates(m)
            .ok_or_else(|| Error::Invariant(format!("{what} is not an endomorphism of F⁽ᴺ⁾")))
    };

    let mut products = Vec::with_capacity(basis.len());
    for x in &basis {
        let row = basis
            .iter()
            .map(|y| coords(&x.compose(y), "a product of endomorphisms"))
            .collect::<Result<Vec<_>>>()?;
        products.push(row);
    }
    let unit = coords(&Morphism::identity(f), "the identity")?;
    let idempotents = (0..r)
        .map(|i| {
            coords(
                &module.injections[i].compose(&module.projections[i]),
                "a summand idempotent",
            )
        })
        .collect::<Result<Vec<_>>>()?;

    // descent along F⁽ᴺ⁾ → F⁽⁰⁾
    let q = f.bound_quiver();
    let base = direct_sum(q, state.summands_at(0))?;
    let down = state.projection_to(0);
    let pi_components: Vec<Matrix> = (0..q.vertex_count())
        .map(|v| Matrix::block_diagonal(field, &down.iter().map(|m| m.component(v)).collect::<Vec<_>>()))
        .collect();
    let pi = Morphism::new(f, &base.sum, pi_components)?;
    let base_end = hom_space(&base.sum, &base.sum)?;
    let lifted: Vec<Vec<Scalar>> = base_end
        .basis()
        .iter()
        .map(|psi| psi.compose(&pi).to_vector())
        .collect();
    let len = pi.to_vector().len();
    let system = Matrix::from_columns(field, len, &lifted);
    let mut augmentation = vec![Vec::with_capacity(basis.len()); r];
    for (k, phi) in basis.iter().enumerate() {
        let target = pi.compose(phi).to_vector();
        let c = system
            .solve(&target)?
            .ok_or_else(|| Error::Invariant(format!("basis endomorphism {k} does not descend to F⁽⁰⁾")))?;
        let psi = base_end.element(&c);
        for (i, member) in state.summands_at(0).iter().enumerate() {
            let block = base.projections[i].compose(&psi).compose(&base.injections[i]);
            let lambda = scalar_of(&block, member)
                .ok_or_else(|| Error::Invariant(format!("descended endomorphism is not scalar on F_{i}")))?;
            augmentation[i].push(lambda);
        }
    }
    let labels = (0..basis.len()).map(|k| format!("b{k}")).collect();
    let algebra = PointedAlgebra::new(field, r, labels, products, unit, idempotents, augmentation)?;
    Ok(EndAlgebra { algebra, basis, module })
}

/// `λ` with `m = λ·id`, if `m` is a scalar endomorphism of `rep`.
fn scalar_of(m: &Morphism, rep: &Representation) -> Option<Scalar> {
    let field = rep.field();
    let lambda = m
        .components()
        .iter()
        .find(|c| c.rows() > 0)
        .map(|c| c.get(0, 0).clone())
        .unwrap_or_else(|| field.zero());
    (*m == Morphism::identity(rep).scale(&lambda)).then_some(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinReport {
    pub dim: usize,
    pub r: usize,
    pub idempotents_orthogonal: bool,
    pub idempotents_sum_to_unit: bool,
    pub unit_is_identity: bool,
    pub associative: bool,
    pub augmentation_splits: bool,
    pub augmentation_multiplicative: bool,
    pub radical_dim: usize,
    /// Smallest `m` with `Mᵐ = 0`; `None` if `M` is not nilpotent.
    pub nilpotency_index: Option<usize>,
    pub commutative: bool,
    pub pass: bool,
}

/// Checks the r-pointed algebra axioms, finite dimension and nilpotency of `M`.
pub fn verify_pointed_artin(a: &PointedAlgebra) -> ArtinReport {
    let f = a.field();
    let n = a.dim();
    let r = a.r();
    let zero = vec![f.zero(); n];
    let idempotents_orthogonal = (0..r).all(|i| {
        (0..r).all(|j| {
            let p = a.mul(a.idempotent(i), a.idempotent(j));
            if i == j {
                p == a.idempotent(i)
            } else {
                p == zero
            }
        })
    });
    let sum = (0..r).fold(zero.clone(), |acc, i| {
        acc.iter().zip(a.idempotent(i)).map(|(x, y)| x + y).collect()
    });
    let idempotents_sum_to_unit = sum == a.unit();
    let unit_is_identity = (0..n).all(|k| {
        let b = a.basis_vector(k);
        a.mul(a.unit(), &b) == b && a.mul(&b, a.unit()) == b
    });
    let associative = (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = a.product_of_basis(x, y);
            (0..n).all(|z| {
                let left = a.mul(xy, &a.basis_vector(z));
                let right = a.mul(&a.basis_vector(x), a.product_of_basis(y, z));
                left == right
            })
        })
    });
    let augmentation_splits = (0..r).all(|i| {
        a.augment(a.idempotent(i))
            .iter()
            .enumerate()
            .all(|(k, v)| if k == i { v.is_one() } else { v.is_zero() })
    });
    let augmentation_multiplicative = a.augment(a.unit()).iter().all(Scalar::is_one)
        && (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = a.augment(a.product_of_basis(x, y));
                let (ax, ay) = (a.augment(&a.basis_vector(x)), a.augment(&a.basis_vector(y)));
                lhs.iter().zip(ax.iter().zip(&ay)).all(|(l, (p, q))| *l == p * q)
            })
        });
    let (powers, nilpotent) = a.radical_powers();
    let nilpotency_index = nilpotent.then(|| powers.len() - 1);
    let pass = idempotents_orthogonal
        && idempotents_sum_to_unit
        && unit_is_identity
        && associative
        && augmentation_splits
        && augmentation_multiplicative
        && nilpotent;
    ArtinReport {
        dim: n,
        r,
        idempotents_orthogonal,
        idempotents_sum_to_unit,
        unit_is_identity,
        associative,
        augmentation_splits,
        augmentation_multiplicative,
        radical_dim: powers[1].len(),
        nilpotency_index,
        commutative: a.is_commutative(),
        pass,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSignature {
    /// `grids[m][j][i] = dim(e_j Mᵐ e_i)` for `m = 0, …, nilpotency_index`.
    pub grids: Vec<Vec<Vec<usize>>>,
    /// `dim Mᵐ`.
    pub layer_dims: Vec<usize>,
    pub nilpotency_index: usize,
}

/// The `e_j Mᵐ e_i` dimension grid; requires `M` nilpotent.
pub fn dimension_signature(a: &PointedAlgebra) -> Result<AlgebraSignature> {
    let (powers, nilpotent) = a.radical_powers();
    if !nilpotent {
        return Err(Error::Precondition("the augmentation ideal is not nilpotent".into()));
    }
    Ok(AlgebraSignature {
        grids: powers.iter().map(|p| a.block_dims(p)).collect(),
        layer_dims: powers.iter().map(Vec::len).collect(),
        nilpotency_index: powers.len() - 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    /// `dim F⁽ᴺ⁾_j(v)` from the tower.
    pub actual_dims: Vec<Vec<usize>>,
    /// `Σ_i dim(e_j R e_i)·dim F_i(v)`.
    pub expected_dims: Vec<Vec<usize>>,
    pub dimension_identity: bool,
    /// Dimension vector of `F⁽ᴺ⁾ / M·F⁽ᴺ⁾`, when the action applies.
    pub fiber_dims: Option<Vec<usize>>,
    pub fiber_identity: bool,
    pub fiber_note: String,
    pub pass: bool,
}

/// Checks `F⁽ᴺ⁾_j ≅ ⊕_i e_j R e_i ⊗ F_i` dimensionwise and `F⁽ᴺ⁾ / M·F⁽ᴺ⁾ ≅ ⊕ F_i`.
///
/// `summands` are the `F⁽ᴺ⁾_i` being tested; passing anything other than the
/// tower the algebra was extracted from makes the check fail.
pub fn flatness_check(
    end: &EndAlgebra,
    summands: &[Representation],
    c: &Collection,
    trials: usize,
    seed: u64,
) -> Result<FlatnessReport> {
    let a = &end.algebra;
    let grid = a.block_dims(&(0..a.dim()).map(|k| a.basis_vector(k)).collect::<Vec<_>>());
    let nv = c.quiver().vertex_count();
    let actual_dims: Vec<Vec<usize>> = summands.iter().map(|s| s.dims().to_vec()).collect();
    let expected_dims: Vec<Vec<usize>> = (0..a.r())
        .map(|j| {
            (0..nv)
                .map(|v| (0..c.r()).map(|i| grid[j][i] * c.members()[i].dim_at(v)).sum())
                .collect()
        })
        .collect();
    let dimension_identity = a.r() == c.r() && actual_dims == expected_dims;

    let acts = summands.len() == end.module.injections.len()
        && summands
            .iter()
            .zip(&end.module.injections)
            .all(|(s, inj)| s == inj.source());
    let (fiber_dims, fiber_identity, fiber_note) = if !acts {
        (None, false, "the algebra does not act on these summands".to_string())
    } else {
        let f = &end.module.sum;
        let field = f.field();
        let radical: Vec<Morphism> = a.radical_basis().iter().map(|x| end.endomorphism(x)).collect();
        let spans: Vec<Matrix> = (0..nv)
            .map(|v| {
                let cols: Vec<Vec<Scalar>> = radical
                    .iter()
                    .flat_map(|m| {
                        let comp = m.component(v);
                        (0..comp.cols()).map(move |j| comp.column(j))
                    })
                    .filter(|col| !is_zero_vector(col))
                    .collect();
                if cols.is_empty() {
                    return Matrix::zeros(field, f.dim_at(v), 0);
                }
                let m = Matrix::from_columns(field, f.dim_at(v), &cols);
                let keep: Vec<_> = m.independent_columns().into_iter().map(|j| cols[j].clone()).collect();
                Matrix::from_columns(field, f.dim_at(v), &keep)
            })
            .collect();
        let (fiber, _) = quotient(f, &spans)?;
        let sum = c.sum()?.sum;
        let verdict = is_isomorphic(&fiber, &sum, trials, seed)?;
        let note = match &verdict {
            crate::quiver::IsoVerdict::Iso(_) => format!("isomorphic to the collection sum (seed {seed})"),
            crate::quiver::IsoVerdict::LikelyNot(why) => why.clone(),
        };
        (Some(fiber.dims().to_vec()), verdict.is_iso(), note)
    };
    Ok(FlatnessReport {
        pass: dimension_identity && fiber_identity,
        actual_dims,
        expected_dims,
        dimension_identity,
        fiber_dims,
        fiber_identity,
        fiber_note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    /// Basis of the right socle `{x : x·M = 0}`.
    pub right_socle: Vec<Vec<Scalar>>,
    /// `dim(soc_right · e_i)`: multiplicity of `R/M_i` in the right socle.
    pub right_socle_colors: Vec<usize>,
    /// Basis of the left socle `{x : M·x = 0}`.
    pub left_socle: Vec<Vec<Scalar>>,
    /// `dim(e_i · soc_left)`.
    pub left_socle_colors: Vec<usize>,
    pub gorenstein: bool,
}

fn annihilator(a: &PointedAlgebra, side: Side) -> Vec<Vec<Scalar>> {
    let radical = a.radical_basis();
    if radical.is_empty() {
        return (0..a.dim()).map(|k| a.basis_vector(k)).collect();
    }
    let blocks: Vec<Matrix> = radical
        .iter()
        .map(|m| match side {
            Side::Right => a.right_mul_matrix(m),
            Side::Left => a.left_mul_matrix(m),
        })
        .collect();
    Matrix::vstack(a.field(), a.dim(), &blocks.iter().collect::<Vec<_>>()).kernel_basis()
}

/// Socles and the Gorenstein verdict: each socle contains every simple exactly once.
pub fn socle_and_gorenstein(a: &PointedAlgebra) -> Result<GorensteinReport> {
    if !a.radical_powers().1 {
        return Err(Error::Precondition("the augmentation ideal is not nilpotent".into()));
    }
    let right_socle = annihilator(a, Side::Right);
    let left_socle = annihilator(a, Side::Left);
    let colors = |socle: &[Vec<Scalar>], side: Side| -> Vec<usize> {
        (0..a.r())
            .map(|i| {
                let images: Vec<_> = socle
                    .iter()
                    .map(|s| match side {
                        Side::Right => a.mul(s, a.idempotent(i)),
                        Side::Left => a.mul(a.idempotent(i), s),
                    })
                    .collect();
                crate::linalg::rank_of(a.field(), a.dim(), &images)
            })
            .collect()
    };
    let right_socle_colors = colors(&right_socle, Side::Right);
    let left_socle_colors = colors(&left_socle, Side::Left);
    let gorenstein = right_socle_colors.iter().all(|&d| d == 1) && left_socle_colors.iter().all(|&d| d == 1);
    Ok(GorensteinReport {
        right_socle,
        right_socle_colors,
        left_socle,
        left_socle_colors,
        gorenstein,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub module_dim: usize,
    /// `dim Hom_R(m, R)` as right modules.
    pub hom_dim: usize,
    pub pass: bool,
}

/// Checks `dim Hom_R(m, R) = dim_k m` for a right module over a Gorenstein algebra.
pub fn duality_check(a: &PointedAlgebra, m: &AlgebraModule) -> Result<DualityReport> {
    if m.side != Side::Right {
        return Err(Error::Precondition("duality is checked on right modules".into()));
    }
    if !m.respects(a) {
        return Err(Error::Precondition("module action does not respect the algebra".into()));
    }
    if !socle_and_gorenstein(a)?.gorenstein {
        return Err(Error::Precondition("the algebra is not Gorenstein".into()));
    }
    let f = a.field();
    let n = a.dim();
    // Φ: m → R with Φ·A_b = ρ_b·Φ, where ρ_b is right multiplication on R.
    let blocks: Vec<Matrix> = (0..n)
        .map(|k| {
            let rho = a.right_mul_matrix(&a.basis_vector(k));
            Matrix::sandwich_operator(&Matrix::identity(f, n), &m.action[k])
                .sub(&Matrix::sandwich_operator(&rho, &Matrix::identity(f, m.dim)))
        })
        .collect();
    let system = Matrix::vstack(f, n * m.dim, &blocks.iter().collect::<Vec<_>>());
    let hom_dim = system.cols() - system.rank();
    Ok(DualityReport {
        module_dim: m.dim,
        hom_dim,
        pass: hom_dim == m.dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalReport {
    /// `dim Hom(F_i, F⁽ᴺ⁾_j)`.
    pub hom_dims: Vec<Vec<usize>>,
    /// `σ(i)` = the unique `j` with `Hom(F_i, F⁽ᴺ⁾_j) ≠ 0`.
    pub sigma: Option<Vec<usize>>,
    pub failing_rows: Vec<usize>,
    pub pass: bool,
}

/// Pairs each `F_i` with the summand of `F⁽ᴺ⁾` whose socle it is.
pub fn spherical_permutation(tower: &TowerResult, c: &Collection) -> Result<SphericalReport> {
    if !tower.terminated() {
        return Err(Error::Precondition("the tower did not terminate".into()));
    }
    let summands = tower.state.summands();
    let hom_dims: Vec<Vec<usize>> = c
        .members()
        .iter()
        .map(|fi| {
            summands
                .iter()
                .map(|s| Ok(hom_space(fi, s)?.dim()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let failing_rows: Vec<usize> = hom_dims
        .iter()
        .enumerate()
        .filter(|(_, row)| row.iter().sum::<usize>() != 1)
        .map(|(i, _)| i)
        .collect();
    let sigma: Option<Vec<usize>> = failing_rows.is_empty().then(|| {
        hom_dims
            .iter()
            .map(|row| row.iter().position(|&d| d == 1).expect("row sums to one"))
            .collect()
    });
    let bijective = sigma.as_ref().is_some_and(|s| {
        let mut seen = vec![false; s.len()];
        s.iter()
            .all(|&j| j < seen.len() && !std::mem::replace(&mut seen[j], true))
    });
    Ok(SphericalReport {
        hom_dims,
        pass: bijective,
        sigma,
        failing_rows,
    })
}

/// `dim Hom(F⁽ᴺ⁾_i, F⁽ᴺ⁾_j)` computed directly, for comparison with the `e_j R e_i` grid.
pub fn summand_hom_grid(tower: &TowerResult) -> Result<Vec<Vec<usize>>> {
    let s = tower.state.summands();
    (0..s.len())
        .map(|j| (0..s.len()).map(|i| Ok(hom_space(&s[i], &s[j])?.dim())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    fn direct_product_counterexample() -> PointedAlgebra {
        // k ⊕ k with r = 1, augmentation = first projection
        let (z, o) = (Q.zero(), Q.one());
        let products = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
            vec![vec![z.clone(), z.clone()], vec![z.clone(), o.clone()]],
        ];
        PointedAlgebra::new(
            Q,
            1,
            vec!["u".into(), "v".into()],
            products,
            vec![o.clone(), o.clone()],
            vec![vec![o.clone(), o.clone()]],
            vec![vec![o, z]],
        )
        .unwrap()
    }

    #[test]
    fn split_algebra_is_artin() {
        let a = PointedAlgebra::split(Q, 3);
        let report = verify_pointed_artin(&a);
        assert!(report.pass);
        assert_eq!(report.nilpotency_index, Some(1));
        let sig = dimension_signature(&a).unwrap();
        assert_eq!(sig.grids[0], vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(sig.nilpotency_index, 1);
    }

    #[test]
    fn non_nilpotent_augmentation_ideal_fails() {
        let a = direct_product_counterexample();
        let report = verify_pointed_artin(&a);
        assert!(report.idempotents_orthogonal && report.augmentation_splits && report.associative);
        assert_eq!(report.nilpotency_index, None);
        assert!(!report.pass);
        assert!(dimension_signature(&a).is_err());
    }

    #[test]
    fn dual_numbers_gorenstein_and_duality() {
        let a = algebra::tests::dual_numbers();
        let g = socle_and_gorenstein(&a).unwrap();
        assert!(g.gorenstein);
        assert_eq!(g.right_socle, vec![vec![Q.zero(), Q.one()]]);
        let simple = duality_check(&a, &AlgebraModule::simple_right(&a, 0)).unwrap();
        assert_eq!(simple.hom_dim, 1);
        let free = duality_check(&a, &AlgebraModule::regular(&a, Side::Right)).unwrap();
        assert_eq!(free.hom_dim, 2);
        assert!(duality_check(&a, &AlgebraModule::regular(&a, Side::Left)).is_err());
    }
}
