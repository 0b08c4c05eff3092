use serde::Serialize;

use crate::linalg::{combine, rank_of, Field, Matrix, Scalar};
use crate::{Error, Result};

/// An r-pointed algebra given by a basis and structure constants.
///
/// `products[a][b]` holds the coordinates of `b_a · b_b`. The splitting
/// `kʳ → R → kʳ` is recorded by the idempotent coordinates and the
/// augmentation functionals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedAlgebra {
    field: Field,
    r: usize,
    labels: Vec<String>,
    products: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    idempotents: Vec<Vec<Scalar>>,
    /// `augmentation[i][a]` is the `i`-th component of the image of `b_a` in `kʳ`.
    augmentation: Vec<Vec<Scalar>>,
}

impl PointedAlgebra {
    pub fn new(
        field: Field,
        r: usize,
        labels: Vec<String>,
        products: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        idempotents: Vec<Vec<Scalar>>,
        augmentation: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = labels.len();
        let shape_ok = products.len() == n
            && products
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n))
            && unit.len() == n
            && idempotents.len() == r
            && idempotents.iter().all(|e| e.len() == n)
            && augmentation.len() == r
            && augmentation.iter().all(|a| a.len() == n);
        if !shape_ok {
            return Err(Error::Precondition("inconsistent algebra table shapes".into()));
        }
        let all = products
            .iter()
            .flatten()
            .flatten()
            .chain(&unit)
            .chain(idempotents.iter().flatten())
            .chain(augmentation.iter().flatten());
        for s in all {
            if !field.contains(s) {
                return Err(crate::LinalgError::FieldMismatch.into());
            }
        }
        Ok(PointedAlgebra {
            field,
            r,
            labels,
            products,
            unit,
            idempotents,
            augmentation,
        })
    }

    /// `kʳ` with its standard idempotent basis.
    pub fn split(field: Field, r: usize) -> Self {
        let e = |i: usize| {
            (0..r)
                .map(|k| if k == i { field.one() } else { field.zero() })
                .collect::<Vec<_>>()
        };
        let products = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| if a == b { e(a) } else { vec![field.zero(); r] })
                    .collect()
            })
            .collect();
        PointedAlgebra {
            field,
            r,
            labels: (1..=r).map(|i| format!("e{i}")).collect(),
            products,
            unit: vec![field.one(); r],
            idempotents: (0..r).map(e).collect(),
            augmentation: (0..r).map(e).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn idempotent(&self, i: usize) -> &[Scalar] {
        &self.idempotents[i]
    }

    pub fn product_of_basis(&self, a: usize, b: usize) -> &[Scalar] {
        &self.products[a][b]
    }

    pub fn basis_vector(&self, a: usize) -> Vec<Scalar> {
        (0..self.dim())
            .map(|k| if k == a { self.field.one() } else { self.field.zero() })
            .collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (o, p) in out.iter_mut().zip(&self.products[a][b]) {
                    if !p.is_zero() {
                        *o = &*o + &(&c * p);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<_> = (0..self.dim()).map(|k| self.mul(x, &self.basis_vector(k))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<_> = (0..self.dim()).map(|k| self.mul(&self.basis_vector(k), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Image of `x` in `kʳ`.
    pub fn augment(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.augmentation
            .iter()
            .map(|row| crate::linalg::dot(self.field, row, x))
            .collect()
    }

    /// A basis of `M = Ker(R → kʳ)`.
    pub fn radical_basis(&self) -> Vec<Vec<Scalar>> {
        let aug = Matrix::from_rows(self.field, self.dim(), self.augmentation.clone()).expect("validated shape");
        aug.kernel_basis()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|a| (0..self.dim()).all(|b| self.products[a][b] == self.products[b][a]))
    }

    /// Reduces a spanning family to a basis.
    pub fn span(&self, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_columns(self.field, self.dim(), vectors);
        m.independent_columns()
            .into_iter()
            .map(|j| vectors[j].clone())
            .collect()
    }

    /// Bases of `M⁰ = R, M¹, M², …` up to the first zero power or until the
    /// powers stabilize at a nonzero subspace. The flag reports nilpotency.
    pub fn radical_powers(&self) -> (Vec<Vec<Vec<Scalar>>>, bool) {
        let radical = self.radical_basis();
        let whole: Vec<Vec<Scalar>> = (0..self.dim()).map(|k| self.basis_vector(k)).collect();
        let mut powers = vec![whole, radical.clone()];
        loop {
            let last = powers.last().expect("nonempty");
            if last.is_empty() {
                return (powers, true);
            }
            let products: Vec<Vec<Scalar>> = last
                .iter()
                .flat_map(|x| radical.iter().map(move |y| (x, y)))
                .map(|(x, y)| self.mul(x, y))
                .collect();
            let next = self.span(&products);
            if next.len() == last.len() {
                return (powers, false);
            }
            powers.push(next);
        }
    }

    /// `dim(e_j · V · e_i)` for a subspace `V` given by a spanning family.
    pub fn block_dims(&self, vectors: &[Vec<Scalar>]) -> Vec<Vec<usize>> {
        (0..self.r)
            .map(|j| {
                (0..self.r)
                    .map(|i| {
                        let images: Vec<_> = vectors
                            .iter()
                            .map(|v| self.mul(&self.mul(&self.idempotents[j], v), &self.idempotents[i]))
                            .collect();
                        rank_of(self.field, self.dim(), &images)
                    })
                    .collect()
            })
            .collect()
    }

    /// Element with the given coordinates as a linear combination of basis vectors.
    pub fn element(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let basis: Vec<_> = (0..self.dim()).map(|k| self.basis_vector(k)).collect();
        combine(self.field, self.dim(), coords, &basis)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional module over a [`PointedAlgebra`], by the action of each basis element.
///
/// For a right module `action[b]` is the matrix of `x ↦ x·b_b`; for a left
/// module it is `x ↦ b_b·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraModule {
    pub side: Side,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl AlgebraModule {
    pub fn regular(a: &PointedAlgebra, side: Side) -> Self {
        let action = (0..a.dim())
            .map(|k| {
                let b = a.basis_vector(k);
                match side {
                    Side::Right => a.right_mul_matrix(&b),
                    Side::Left => a.left_mul_matrix(&b),
                }
            })
            .collect();
        AlgebraModule {
            side,
            dim: a.dim(),
            action,
        }
    }

    /// The simple right module `R/M_i`: one-dimensional, `b` acts by its `i`-th augmentation.
    pub fn simple_right(a: &PointedAlgebra, i: usize) -> Self {
        let action = (0..a.dim())
            .map(|k| {
                let v = a.augment(&a.basis_vector(k))[i].clone();
                Matrix::from_vec(a.field(), 1, 1, vec![v]).expect("1x1")
            })
            .collect();
        AlgebraModule {
            side: Side::Right,
            dim: 1,
            action,
        }
    }

    /// Whether the action respects the structure constants and the unit.
    pub fn respects(&self, a: &PointedAlgebra) -> bool {
        if self.action.len() != a.dim() || self.action.iter().any(|m| m.shape() != (self.dim, self.dim)) {
            return false;
        }
        let act = |coords: &[Scalar]| -> Matrix {
            let mut acc = Matrix::zeros(a.field(), self.dim, self.dim);
            for (c, m) in coords.iter().zip(&self.action) {
                if !c.is_zero() {
                    acc = acc.add(&m.scale(c));
                }
            }
            acc
        };
        if act(a.unit()) != Matrix::identity(a.field(), self.dim) {
            return false;
        }
        (0..a.dim()).all(|x| {
            (0..a.dim()).all(|y| {
                let composed = match self.side {
                    Side::Right => self.action[y].mul(&self.action[x]),
                    Side::Left => self.action[x].mul(&self.action[y]),
                };
                composed == act(a.product_of_basis(x, y))
            })
        })
    }
}
