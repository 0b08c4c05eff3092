mod common;

use common::oracle::nonsplit_extension_classes;
use ncdef::homext::ext1_space;
use ncdef::quiver::Representation;
use ncdef::tower::{run_tower, TowerOptions};

fn agrees(m: &Representation, n: &Representation, p: u32) {
    let d = ext1_space(m, n).unwrap().dim();
    let brute = nonsplit_extension_classes(m, n, p);
    assert_eq!(
        brute,
        (p as usize).pow(d as u32) - 1,
        "dim {d}, dims {:?} by {:?}",
        m.dims(),
        n.dims()
    );
}

#[test]
fn simples_over_f2_and_f3() {
    for p in [2, 3] {
        for name in ["fx_a2", "fx_cyc2", "fx_aba", "fx_loop2", "fx_st", "fx_fat3"] {
            let c = common::fixture_mod(name, p).collection(Some("simples")).unwrap();
            for m in c.members() {
                for n in c.members() {
                    agrees(m, n, p);
                }
            }
        }
    }
}

#[test]
fn non_simple_modules_over_f2() {
    let loop2 = common::fixture_mod("fx_loop2", 2);
    let (s, p) = (loop2.module("S").unwrap(), loop2.module("P").unwrap());
    agrees(p, s, 2);
    agrees(s, p, 2);
    agrees(p, p, 2);

    let a2 = common::fixture_mod("fx_a2", 2);
    let names = ["S1", "S2", "P1"];
    for m in names {
        for n in names {
            agrees(a2.module(m).unwrap(), a2.module(n).unwrap(), 2);
        }
    }
}

#[test]
fn tower_levels_over_f2() {
    for name in ["fx_cyc2", "fx_aba", "fx_st"] {
        let c = common::fixture_mod(name, 2).collection(Some("simples")).unwrap();
        let t = run_tower(
            &c,
            &TowerOptions {
                max_steps: 1,
                ..TowerOptions::default()
            },
        )
        .unwrap();
        for g in t.state.summands() {
            for f in c.members() {
                agrees(g, f, 2);
                agrees(f, g, 2);
            }
        }
    }
}
