//! Brute-force count of extensions over a small prime field.
//!
//! An extension structure of `m` by `n` is a representation `E` with
//! `E(v) = n(v) ⊕ m(v)` and block upper-triangular arrow maps
//! `[[n_a, η_a], [0, m_a]]`. Every family `η` is enumerated and kept when `E`
//! satisfies the relations, checked by multiplying the block matrices out.
//! Two structures are identified when a gauge `g_v = [[I, h_v], [0, I]]`
//! conjugates one into the other. Nothing here uses the library's cocycle code.

use std::collections::BTreeSet;

use ncdef::quiver::Representation;
use ncdef::Scalar;

type Mat = Vec<Vec<u32>>;
/// (source, target, terms) with each term a coefficient and an arrow path
type Rel = (usize, usize, Vec<(u32, Vec<usize>)>);

fn raw(s: &Scalar, p: u32) -> u32 {
    match s {
        Scalar::Residue { value, modulus } if *modulus == p => *value,
        other => panic!("oracle needs residues mod {p}, got {other}"),
    }
}

fn mat_of(rep: &Representation, arrow: usize, p: u32) -> Mat {
    let m = rep.map(arrow);
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| raw(m.get(r, c), p)).collect())
        .collect()
}

fn mul(a: &Mat, b: &Mat, inner: usize, cols: usize, p: u32) -> Mat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| row[k] as u64 * b[k][c] as u64).sum::<u64>() % p as u64)
                .map(|x| x as u32)
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

struct Setup {
    p: u32,
    /// (source, target) of each arrow
    arrows: Vec<(usize, usize)>,
    relations: Vec<Rel>,
    dm: Vec<usize>,
    dn: Vec<usize>,
    m_maps: Vec<Mat>,
    n_maps: Vec<Mat>,
}

impl Setup {
    fn new(m: &Representation, n: &Representation, p: u32) -> Self {
        let bq = m.bound_quiver();
        let arrows: Vec<(usize, usize)> = bq.quiver().arrows().iter().map(|a| (a.source, a.target)).collect();
        let relations = bq
            .relations()
            .iter()
            .map(|r| {
                let terms = r.terms().iter().map(|(c, path)| (raw(c, p), path.clone())).collect();
                (r.source(), r.target(), terms)
            })
            .collect();
        Setup {
            p,
            m_maps: (0..arrows.len()).map(|a| mat_of(m, a, p)).collect(),
            n_maps: (0..arrows.len()).map(|a| mat_of(n, a, p)).collect(),
            arrows,
            relations,
            dm: m.dims().to_vec(),
            dn: n.dims().to_vec(),
        }
    }

    fn dim_e(&self, v: usize) -> usize {
        self.dn[v] + self.dm[v]
    }

    /// Number of entries of `η_a` (`dn(t) × dm(s)`) for each arrow.
    fn eta_sizes(&self) -> Vec<usize> {
        self.arrows.iter().map(|&(s, t)| self.dn[t] * self.dm[s]).collect()
    }

    fn block(&self, a: usize, eta: &[u32]) -> Mat {
        let (s, t) = self.arrows[a];
        let (rows, cols) = (self.dim_e(t), self.dim_e(s));
        let mut e = vec![vec![0; cols]; rows];
        for r in 0..self.dn[t] {
            e[r][..self.dn[s]].copy_from_slice(&self.n_maps[a][r][..self.dn[s]]);
            for c in 0..self.dm[s] {
                e[r][self.dn[s] + c] = eta[r * self.dm[s] + c];
            }
        }
        for r in 0..self.dm[t] {
            for c in 0..self.dm[s] {
                e[self.dn[t] + r][self.dn[s] + c] = self.m_maps[a][r][c];
            }
        }
        e
    }

    fn blocks(&self, etas: &[Vec<u32>]) -> Vec<Mat> {
        (0..self.arrows.len()).map(|a| self.block(a, &etas[a])).collect()
    }

    fn satisfies_relations(&self, e: &[Mat]) -> bool {
        self.relations.iter().all(|(src, tgt, terms)| {
            let mut total = vec![vec![0u32; self.dim_e(*src)]; self.dim_e(*tgt)];
            for (coeff, path) in terms {
                let mut acc = identity(self.dim_e(*src));
                let mut here = *src;
                for &a in path {
                    let (_, t) = self.arrows[a];
                    acc = mul(&e[a], &acc, self.dim_e(here), self.dim_e(*src), self.p);
                    here = t;
                }
                for (row, arow) in total.iter_mut().zip(&acc) {
                    for (x, y) in row.iter_mut().zip(arow) {
                        *x = ((*x as u64 + *coeff as u64 * *y as u64) % self.p as u64) as u32;
                    }
                }
            }
            total.iter().flatten().all(|&x| x == 0)
        })
    }

    /// `g_t · E_a · g_s⁻¹`, read back as the upper-right blocks.
    fn gauge(&self, e: &[Mat], h: &[Mat]) -> Vec<Vec<u32>> {
        let p = self.p;
        let g = |v: usize, sign: u32| -> Mat {
            let mut m = identity(self.dim_e(v));
            for r in 0..self.dn[v] {
                for c in 0..self.dm[v] {
                    m[r][self.dn[v] + c] = if sign == 1 { h[v][r][c] } else { (p - h[v][r][c]) % p };
                }
            }
            m
        };
        self.arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let left = mul(&g(t, 1), &e[a], self.dim_e(t), self.dim_e(s), p);
                let conj = mul(&left, &g(s, 0), self.dim_e(s), self.dim_e(s), p);
                let mut eta = Vec::with_capacity(self.dn[t] * self.dm[s]);
                for row in &conj[..self.dn[t]] {
                    eta.extend_from_slice(&row[self.dn[s]..self.dn[s] + self.dm[s]]);
                }
                eta
            })
            .collect()
    }
}

/// Every vector of length `len` over `0..p`.
fn all_vectors(len: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn split(flat: &[u32], sizes: &[usize]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut k = 0;
    for &s in sizes {
        out.push(flat[k..k + s].to_vec());
        k += s;
    }
    out
}

/// Number of gauge classes of extension structures that are not split (not in the class of `η = 0`).
pub fn nonsplit_extension_classes(m: &Representation, n: &Representation, p: u32) -> usize {
    let setup = Setup::new(m, n, p);
    let sizes = setup.eta_sizes();
    let total: usize = sizes.iter().sum();
    assert!(total <= 16, "too many entries to enumerate");
    let gauge_sizes: Vec<usize> = (0..setup.dm.len()).map(|v| setup.dn[v] * setup.dm[v]).collect();
    let gauges: Vec<Vec<Mat>> = all_vectors(gauge_sizes.iter().sum(), p)
        .iter()
        .map(|flat| {
            split(flat, &gauge_sizes)
                .into_iter()
                .enumerate()
                .map(|(v, entries)| {
                    (0..setup.dn[v])
                        .map(|r| entries[r * setup.dm[v]..(r + 1) * setup.dm[v]].to_vec())
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut orbits = BTreeSet::new();
    let mut zero_orbit = None;
    for flat in all_vectors(total, p) {
        let etas = split(&flat, &sizes);
        let e = setup.blocks(&etas);
        if !setup.satisfies_relations(&e) {
            continue;
        }
        let rep = gauges
            .iter()
            .map(|h| setup.gauge(&e, h).concat())
            .min()
            .expect("the identity gauge exists");
        if flat.iter().all(|&x| x == 0) {
            zero_orbit = Some(rep.clone());
        }
        orbits.insert(rep);
    }
    assert!(
        zero_orbit.is_some(),
        "the split extension always satisfies the relations"
    );
    orbits.len() - 1
}
