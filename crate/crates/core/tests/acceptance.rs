//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use ncdef::artin::{
    dimension_signature, duality_check, end_algebra, flatness_check, socle_and_gorenstein, spherical_permutation,
    verify_pointed_artin, AlgebraModule, EndAlgebra, PointedAlgebra,
};
use ncdef::homext::{common_extension, ext1_space, extension_of, ExtClass, ExtSpace};
use ncdef::linalg::rank_of;
use ncdef::quiver::{direct_sum, is_isomorphic, Representation, RANDOM_COEFF_RANGE};
use ncdef::tower::{hom_table, random_maximal_sequence, run_tower, Collection, TowerOptions, TowerResult, TowerStatus};
use ncdef::{Error, Field, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn algebra_of(name: &str) -> (Collection, TowerResult, EndAlgebra) {
    let (c, t) = common::tower(name);
    let end = end_algebra(&t).unwrap();
    (c, t, end)
}

fn terminated_at(t: &TowerResult, n: usize, r: &[usize]) -> Result<(), String> {
    ensure(t.status == TowerStatus::Terminated { level: n }, || {
        format!("status {:?}", t.status)
    })?;
    ensure(t.state.r_sequence() == r, || {
        format!("r-sequence {:?}", t.state.r_sequence())
    })
}

fn loop2_base_ring() -> Outcome {
    let (_, t, end) = algebra_of("fx_loop2");
    terminated_at(&t, 1, &[1, 1])?;
    let a = &end.algebra;
    let artin = verify_pointed_artin(a);
    let sig = dimension_signature(a).map_err(|e| e.to_string())?;
    let gor = socle_and_gorenstein(a).map_err(|e| e.to_string())?;
    ensure(
        a.dim() == 2 && artin.commutative && artin.nilpotency_index == Some(2),
        || format!("{artin:?}"),
    )?;
    ensure(sig.grids == vec![vec![vec![2]], vec![vec![1]], vec![vec![0]]], || {
        format!("{sig:?}")
    })?;
    ensure(gor.gorenstein, || "not Gorenstein".into())?;
    Ok("N = 1, dim 2, commutative, M² = 0, grids [[2]],[[1]],[[0]], Gorenstein".into())
}

fn cyc2_matrix_algebra() -> Outcome {
    let (c, t, end) = algebra_of("fx_cyc2");
    terminated_at(&t, 1, &[2, 2])?;
    let a = &end.algebra;
    let sig = dimension_signature(a).map_err(|e| e.to_string())?;
    ensure(a.dim() == 4, || format!("dim {}", a.dim()))?;
    ensure(sig.grids[0] == vec![vec![1, 1], vec![1, 1]], || {
        format!("grid {:?}", sig.grids[0])
    })?;
    ensure(sig.nilpotency_index == 2, || {
        format!("nilpotency {}", sig.nilpotency_index)
    })?;
    let s = spherical_permutation(&t, &c).map_err(|e| e.to_string())?;
    ensure(s.sigma == Some(vec![1, 0]), || format!("σ {:?}", s.sigma))?;
    Ok("N = 1, r (2,2), dim 4, all dim e_j R e_i = 1, M² = 0, σ = (1 2)".into())
}

fn aba_algebra() -> Outcome {
    let (c, t, end) = algebra_of("fx_aba");
    terminated_at(&t, 2, &[2, 2, 2])?;
    let a = &end.algebra;
    let sig = dimension_signature(a).map_err(|e| e.to_string())?;
    ensure(a.dim() == 6, || format!("dim {}", a.dim()))?;
    ensure(sig.grids[0] == vec![vec![2, 1], vec![1, 2]], || {
        format!("grid {:?}", sig.grids[0])
    })?;
    ensure(sig.nilpotency_index == 3, || {
        format!("nilpotency {}", sig.nilpotency_index)
    })?;
    ensure(socle_and_gorenstein(a).unwrap().gorenstein, || "not Gorenstein".into())?;
    let s = spherical_permutation(&t, &c).map_err(|e| e.to_string())?;
    ensure(s.sigma == Some(vec![0, 1]), || format!("σ {:?}", s.sigma))?;
    Ok("N = 2, r (2,2,2), dim 6, blocks [[2,1],[1,2]], M³ = 0, Gorenstein, σ = id".into())
}

fn fat3_algebra() -> Outcome {
    let (_, t, end) = algebra_of("fx_fat3");
    terminated_at(&t, 1, &[1, 2])?;
    let a = &end.algebra;
    let artin = verify_pointed_artin(a);
    ensure(
        a.dim() == 3 && artin.commutative && artin.nilpotency_index == Some(2),
        || format!("{artin:?}"),
    )?;
    ensure(!socle_and_gorenstein(a).unwrap().gorenstein, || {
        "unexpectedly Gorenstein".into()
    })?;
    Ok("N = 1, r (1,2), dim 3, M² = 0, commutative, not Gorenstein".into())
}

fn st_infinite() -> Outcome {
    let (_, t) = common::tower("fx_st");
    ensure(t.status == TowerStatus::CutoffReached { max_steps: 10 }, || {
        format!("status {:?}", t.status)
    })?;
    let r = t.state.r_sequence();
    ensure(r.len() == 11 && r.iter().all(|&x| x >= 1), || {
        format!("r-sequence {r:?}")
    })?;
    Ok(format!("CutoffReached(10), r-sequence {r:?}"))
}

fn end_dim_is_sum_r() -> Outcome {
    let mut seen = Vec::new();
    for name in common::TERMINATING {
        let (_, t, end) = algebra_of(name);
        let sum: usize = t.state.r_sequence().iter().sum();
        ensure(end.algebra.dim() == sum, || {
            format!("{name}: dim {} vs Σr {sum}", end.algebra.dim())
        })?;
        seen.push(format!("{name} {sum}"));
    }
    Ok(seen.join(", "))
}

fn hom_to_collection_is_delta() -> Outcome {
    let mut levels = 0;
    for name in common::ALL {
        let c = common::simples(name);
        // the free algebra doubles every level; six levels keep it small
        let max_steps = if name == "fx_2loop0" { 6 } else { 10 };
        let t = run_tower(
            &c,
            &TowerOptions {
                max_steps,
                ..TowerOptions::default()
            },
        )
        .unwrap();
        for n in 0..=t.state.level() {
            let table = hom_table(t.state.summands_at(n), &c).unwrap();
            let delta: Vec<Vec<usize>> = (0..c.r())
                .map(|i| (0..c.r()).map(|j| usize::from(i == j)).collect())
                .collect();
            ensure(table == delta, || format!("{name} level {n}: {table:?}"))?;
            levels += 1;
        }
    }
    Ok(format!("{levels} levels over {} fixtures", common::ALL.len()))
}

fn random_class(space: &Arc<ExtSpace>, rng: &mut ChaCha8Rng) -> ExtClass {
    let f = space.source().field();
    loop {
        let v: Vec<Scalar> = (0..space.dim())
            .map(|_| f.from_i64(rng.gen_range(RANDOM_COEFF_RANGE)))
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return ExtClass::new(space, v).unwrap();
        }
    }
}

/// Objects `G` with non-trivial extensions by the collection.
fn common_extension_pool(name: &str, c: &Collection) -> Vec<Representation> {
    let q = c.quiver();
    let m = c.members();
    let t = run_tower(
        c,
        &TowerOptions {
            max_steps: 2,
            ..TowerOptions::default()
        },
    )
    .unwrap();
    let mut pool = vec![direct_sum(q, m).unwrap().sum];
    for n in 1..=t.state.level() {
        pool.extend(t.state.summands_at(n).iter().cloned());
        pool.push(direct_sum(q, t.state.summands_at(n)).unwrap().sum);
    }
    if name == "fx_aba" {
        pool.push(direct_sum(q, &[m[0].clone(), m[0].clone()]).unwrap().sum);
        pool.push(direct_sum(q, &[m[1].clone(), m[1].clone(), m[0].clone()]).unwrap().sum);
    } else {
        for k in 0..2 {
            let s = Arc::new(ext1_space(&m[0], &m[0]).unwrap());
            pool.push(extension_of(&ExtClass::basis(&s, k).unwrap()).unwrap().middle);
        }
    }
    pool
}

fn common_extensions() -> Outcome {
    let mut summary = Vec::new();
    for (name, seed) in [("fx_st", 33u64), ("fx_aba", 34)] {
        let c = common::simples(name);
        let pool = common_extension_pool(name, &c);
        let spaces: Vec<Vec<Arc<ExtSpace>>> = pool
            .iter()
            .map(|g| {
                c.members()
                    .iter()
                    .map(|f| Arc::new(ext1_space(g, f).unwrap()))
                    .collect()
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut accepted, mut rejected, mut attempts) = (0, 0, 0);
        while accepted < 100 {
            attempts += 1;
            ensure(attempts < 10_000, || {
                format!("{name}: only {accepted} admissible pairs")
            })?;
            let g = rng.gen_range(0..pool.len());
            let targets: Vec<usize> = (0..c.r()).filter(|&j| spaces[g][j].dim() > 0).collect();
            if targets.is_empty() {
                continue;
            }
            let j0 = targets[rng.gen_range(0..targets.len())];
            let j1 = targets[rng.gen_range(0..targets.len())];
            let xi0 = random_class(&spaces[g][j0], &mut rng);
            let xi1 = random_class(&spaces[g][j1], &mut rng);
            let coords = [xi0.coordinates().to_vec(), xi1.coordinates().to_vec()];
            let proportional = j0 == j1 && rank_of(c.quiver().field(), coords[0].len(), &coords) < 2;
            match common_extension(&xi0, &xi1) {
                Err(Error::Precondition(_)) if proportional => rejected += 1,
                Ok(ce) if !proportional => {
                    ensure(ce.is_nontrivial(), || {
                        format!("{name}: trivial pullback for seed pair {attempts}")
                    })?;
                    accepted += 1;
                }
                Ok(_) => return Err(format!("{name}: proportional pair accepted")),
                Err(e) => return Err(format!("{name}: {e}")),
            }
        }
        // explicit proportional pairs (ξ, 2ξ)
        let two = c.quiver().field().from_i64(2);
        for (g, row) in spaces.iter().enumerate() {
            for space in row.iter().filter(|s| s.dim() > 0) {
                let xi = random_class(space, &mut rng);
                let doubled = xi.linear_combination(&two, &xi, &c.quiver().field().zero());
                ensure(
                    matches!(common_extension(&xi, &doubled), Err(Error::Precondition(_))),
                    || format!("{name}: (ξ, 2ξ) accepted for pool object {g}"),
                )?;
                rejected += 1;
            }
        }
        summary.push(format!(
            "{name} {accepted} non-trivial, {rejected} proportional rejected"
        ));
    }
    Ok(summary.join("; "))
}

fn custom_sequences_dominated() -> Outcome {
    let mut summary = Vec::new();
    for name in ["fx_cyc2", "fx_aba"] {
        let (c, t) = common::tower(name);
        for seed in 0..20u64 {
            let run = random_maximal_sequence(&c, seed, 50).unwrap();
            ensure(run.maximal, || format!("{name} seed {seed}: not maximal"))?;
            for (i, (g, f)) in run.last().iter().zip(t.state.summands()).enumerate() {
                let v = is_isomorphic(g, f, 20, seed).unwrap();
                ensure(v.is_iso(), || format!("{name} seed {seed} summand {i}: {v:?}"))?;
            }
        }
        summary.push(format!("{name} 20/20"));
    }
    Ok(summary.join(", "))
}

fn flatness() -> Outcome {
    for name in common::TERMINATING {
        let (c, t, end) = algebra_of(name);
        let f = flatness_check(&end, t.state.summands(), &c, 20, 0).unwrap();
        ensure(f.dimension_identity && f.fiber_identity, || format!("{name}: {f:?}"))?;
        // drop the last single extension of a maximal sequence: one copy of some F_j goes missing
        let run = random_maximal_sequence(&c, 7, 50).unwrap();
        let mutated = &run.objects[run.objects.len() - 2];
        let m = flatness_check(&end, mutated, &c, 20, 0).unwrap();
        ensure(!m.pass && !m.dimension_identity, || {
            format!("{name}: mutated tower passes {m:?}")
        })?;
    }
    Ok(format!(
        "{} fixtures pass, mutated towers fail",
        common::TERMINATING.len()
    ))
}

fn ext_oracle() -> Outcome {
    let mut pairs = 0;
    for name in ["fx_a2", "fx_cyc2", "fx_aba"] {
        let p = common::fixture_mod(name, 2);
        let c = p.collection(Some("simples")).unwrap();
        for m in c.members() {
            for n in c.members() {
                let d = ext1_space(m, n).unwrap().dim();
                let brute = common::oracle::nonsplit_extension_classes(m, n, 2);
                ensure(brute == 2usize.pow(d as u32) - 1, || {
                    format!("{name}: dim {d}, oracle {brute}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs of simples over F_2"))
}

fn k_times_k() -> PointedAlgebra {
    let f = Field::Rational;
    let (z, o) = (f.zero(), f.one());
    PointedAlgebra::new(
        f,
        1,
        vec!["u".into(), "v".into()],
        vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
            vec![vec![z.clone(), z.clone()], vec![z.clone(), o.clone()]],
        ],
        vec![o.clone(), o.clone()],
        vec![vec![o.clone(), o.clone()]],
        vec![vec![o, z]],
    )
    .unwrap()
}

fn artin_axioms() -> Outcome {
    let mut checked = 0;
    for name in common::TERMINATING {
        let (_, _, end) = algebra_of(name);
        let r = verify_pointed_artin(&end.algebra);
        ensure(r.pass, || format!("{name}: {r:?}"))?;
        checked += 1;
    }
    let st = run_tower(
        &common::simples("fx_st"),
        &TowerOptions {
            max_steps: 3,
            ..TowerOptions::default()
        },
    )
    .unwrap();
    let r = verify_pointed_artin(&end_algebra(&st).unwrap().algebra);
    ensure(r.pass, || format!("fx_st truncated: {r:?}"))?;
    checked += 1;
    let bad = verify_pointed_artin(&k_times_k());
    ensure(!bad.pass && bad.nilpotency_index.is_none(), || format!("k⊕k: {bad:?}"))?;
    Ok(format!("{checked} algebras pass; k⊕k fails nilpotency"))
}

fn duality() -> Outcome {
    let mut seen = Vec::new();
    for name in common::TERMINATING {
        let (_, _, end) = algebra_of(name);
        let a = &end.algebra;
        if !socle_and_gorenstein(a).unwrap().gorenstein {
            continue;
        }
        for i in 0..a.r() {
            let d = duality_check(a, &AlgebraModule::simple_right(a, i)).unwrap();
            ensure(d.hom_dim == 1, || {
                format!("{name}: dim Hom(R/M_{}, R) = {}", i + 1, d.hom_dim)
            })?;
        }
        seen.push(name);
    }
    Ok(format!("Gorenstein: {}", seen.join(", ")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("loop2 base ring k[t]/(t²)", loop2_base_ring),
        ("cyc2 2-pointed algebra", cyc2_matrix_algebra),
        ("aba algebra mod t³", aba_algebra),
        ("fat3 radical-square-zero algebra", fat3_algebra),
        ("st tower does not terminate", st_infinite),
        ("dim End = Σ r_m", end_dim_is_sum_r),
        ("dim Hom(F⁽ⁿ⁾_i, F_j) = δ_ij", hom_to_collection_is_delta),
        ("common extensions are non-trivial", common_extensions),
        ("maximal sequences reach F⁽ᴺ⁾", custom_sequences_dominated),
        ("flatness over End(F⁽ᴺ⁾)", flatness),
        ("Ext¹ brute-force oracle", ext_oracle),
        ("Art_r axioms", artin_axioms),
        ("duality for Gorenstein algebras", duality),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let over = secs >= 5.0;
        match outcome {
            Ok(detail) if !over => println!("PASS {:>2} {title}: {detail} [{secs:.2}s]", k + 1),
            Ok(detail) => {
                failed += 1;
                println!("FAIL {:>2} {title}: over the 5s budget; {detail} [{secs:.2}s]", k + 1);
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
