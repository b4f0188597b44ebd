mod common;

use cihomol_core::construct::random_modules;
use cihomol_core::homalg::{resolve, tensor, tor_dims};
use cihomol_core::module::{hom_dim, quotient_by_form_power};
use cihomol_core::ring::{regular_module, LinearForm};
use cihomol_core::{CIRing, FieldSpec, Mat, Module};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{naive_hom_dim, naive_tensor_dim, oracle_betti};

#[test]
fn oracle_reproduces_residue_field_betti() {
    let r = CIRing::new(5, &[2, 2]).unwrap();
    let k = Module::residue_field(&r);
    let expected: Vec<usize> = (0..=8).map(|i| i + 1).collect();
    assert_eq!(oracle_betti(&k, 8), expected);
    assert_eq!(resolve(&k, 8).betti(), expected);
}

#[test]
fn engine_betti_matches_oracle() {
    let rings = [
        CIRing::new(5, &[2, 2]).unwrap(),
        CIRing::new(3, &[3, 2]).unwrap(),
        CIRing::new(2, &[2, 2, 2]).unwrap(),
        CIRing::new(7, &[4]).unwrap(),
    ];
    for (s, r) in rings.iter().enumerate() {
        for m in random_modules(r, 12, s as u64).unwrap() {
            assert_eq!(resolve(&m, 4).betti(), oracle_betti(&m, 4), "{}", m.content_hash());
        }
    }
}

#[test]
fn cyclic_quotients_have_constant_betti() {
    let r = CIRing::new(5, &[2, 4]).unwrap();
    let y = LinearForm::variable(2, 1);
    for s in 1..4 {
        let h = quotient_by_form_power(&r, &y, s).unwrap();
        assert_eq!(oracle_betti(&h, 8), vec![1; 9]);
    }
}

#[test]
fn tensor_matches_naive_quotient() {
    for (p, exps) in [(5u64, vec![2u32, 2]), (3, vec![3, 2]), (2, vec![2, 2, 2])] {
        let r = CIRing::new(p, &exps).unwrap();
        let ms = random_modules(&r, 16, 7).unwrap();
        for w in ms.windows(2) {
            let t = tensor(&w[0], &w[1]).unwrap();
            assert_eq!(t.dim(), naive_tensor_dim(&w[0], &w[1]));
            assert_eq!(tor_dims(&w[0], &w[1], 0).unwrap()[0], t.dim());
        }
    }
}

#[test]
fn hom_matches_intertwiner_count() {
    for (p, exps) in [(5u64, vec![2u32, 2]), (3, vec![3, 2]), (2, vec![2, 2, 2])] {
        let r = CIRing::new(p, &exps).unwrap();
        let ms = random_modules(&r, 16, 11).unwrap();
        for w in ms.windows(2) {
            assert_eq!(hom_dim(&w[0], &w[1]).unwrap(), naive_hom_dim(&w[0], &w[1]));
        }
        let a = regular_module(&r);
        assert_eq!(hom_dim(&a, &ms[0]).unwrap(), ms[0].dim());
    }
}

#[test]
fn tor_against_residue_field_is_betti() {
    let r = CIRing::new(3, &[3, 3]).unwrap();
    let k = Module::residue_field(&r);
    for m in random_modules(&r, 10, 3).unwrap() {
        assert_eq!(tor_dims(&m, &k, 4).unwrap(), oracle_betti(&m, 4));
    }
}

fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
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

#[test]
fn kernel_and_solve_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [2u32, 3] {
        let f = FieldSpec::new(u64::from(p)).unwrap();
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(1..4), rng.gen_range(1..5));
            let m = Mat::from_fn(f, r, c, |_, _| rng.gen_range(0..p));
            let vs = all_vectors(p, c);
            let zero = vec![0; r];
            let null = vs.iter().filter(|v| m.mul_vec(v) == zero).count();
            let kb = m.kernel_basis();
            assert_eq!(null, (p as usize).pow(kb.rows() as u32));
            for row in 0..kb.rows() {
                assert_eq!(m.mul_vec(kb.row(row)), zero);
            }
            assert_eq!(m.rank() + kb.rows(), c);
            for b in all_vectors(p, r) {
                let reachable = vs.iter().any(|v| m.mul_vec(v) == b);
                match m.solve(&b).unwrap() {
                    Some(x) => assert_eq!(m.mul_vec(&x), b),
                    None => assert!(!reachable),
                }
            }
        }
    }
}
