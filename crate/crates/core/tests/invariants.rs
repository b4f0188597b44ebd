use std::sync::Arc;

use cihomol_core::construct::{random_extension_sequence, random_modules};
use cihomol_core::gk::gclass;
use cihomol_core::homalg::{cosyzygy, is_exact, resolve, stable_reduce, syzygy, tensor, tor_dims};
use cihomol_core::module::{iso_test, quotient_by_form_power, Module};
use cihomol_core::ring::enumerate_points;
use cihomol_core::support::{rank_point_membership, supports_disjoint, DisjointVerdict};
use cihomol_core::CIRing;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_ring() -> impl Strategy<Value = Arc<CIRing>> {
    prop_oneof![
        Just((5u64, vec![2u32, 2])),
        Just((5, vec![2, 4])),
        Just((3, vec![3, 2])),
        Just((2, vec![2, 2, 2])),
        Just((7, vec![3])),
    ]
    .prop_map(|(p, e)| CIRing::new(p, &e).unwrap())
}

fn modules(r: &Arc<CIRing>, seed: u64) -> Vec<Module> {
    random_modules(r, 6, seed).unwrap()
}

fn rank_rings() -> [Arc<CIRing>; 2] {
    [CIRing::new(3, &[3, 3]).unwrap(), CIRing::new(2, &[2, 2, 2]).unwrap()]
}

/// Random modules mixed with periodic quotients `A/(l)` at rational points.
fn mixed(r: &Arc<CIRing>, seed: u64) -> Vec<Module> {
    let pts = enumerate_points(r);
    let mut ms = random_modules(r, 3, seed).unwrap();
    for k in 0..3 {
        let a = &pts[(seed as usize).wrapping_add(k * 7) % pts.len()];
        ms.push(quotient_by_form_power(r, a, 1 + (k as u32 % 2)).unwrap());
    }
    ms
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn tor_is_symmetric(r in small_ring(), seed in any::<u64>()) {
        let ms = modules(&r, seed);
        for w in ms.windows(2) {
            prop_assert_eq!(tor_dims(&w[0], &w[1], 3).unwrap(), tor_dims(&w[1], &w[0], 3).unwrap());
            prop_assert_eq!(tensor(&w[0], &w[1]).unwrap().dim(), tensor(&w[1], &w[0]).unwrap().dim());
        }
    }

    #[test]
    fn extension_classes_add(r in small_ring(), seed in any::<u64>()) {
        let ms = modules(&r, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for w in ms.windows(2) {
            if let Some((e, inc, proj)) = random_extension_sequence(&w[0], &w[1], &mut rng).unwrap() {
                prop_assert!(is_exact(&[inc, proj]).unwrap());
                prop_assert_eq!(gclass(&e), gclass(&w[0]).add(gclass(&w[1])));
            }
        }
    }

    #[test]
    fn syzygy_keeps_rank_points(seed in any::<u64>(), which in 0usize..2) {
        let r = rank_rings()[which].clone();
        for m in modules(&r, seed) {
            let om = syzygy(&m);
            for a in enumerate_points(&r) {
                prop_assert_eq!(rank_point_membership(&m, &a).unwrap(), rank_point_membership(&om, &a).unwrap());
            }
        }
    }

    #[test]
    fn stable_reduce_is_idempotent(r in small_ring(), seed in any::<u64>()) {
        for m in modules(&r, seed) {
            let s = stable_reduce(&m);
            prop_assert!(s.is_free().is_none() || s.is_zero());
            prop_assert!(iso_test(&stable_reduce(&s), &s, 16, seed).unwrap().is_iso());
        }
    }

    #[test]
    fn cosyzygy_inverts_syzygy_stably(r in small_ring(), seed in any::<u64>()) {
        for m in modules(&r, seed) {
            let back = cosyzygy(&syzygy(&m));
            prop_assert!(iso_test(&back, &stable_reduce(&m), 16, seed).unwrap().is_iso());
        }
    }

    #[test]
    fn betti_track_syzygies(r in small_ring(), seed in any::<u64>()) {
        for m in modules(&r, seed) {
            let b = resolve(&m, 3).betti();
            let shifted = resolve(&syzygy(&m), 2).betti();
            prop_assert_eq!(&b[1..], &shifted[..]);
            prop_assert_eq!(b[0], m.min_generators());
        }
    }

    #[test]
    fn dual_is_involutive(r in small_ring(), seed in any::<u64>()) {
        for m in modules(&r, seed) {
            prop_assert_eq!(m.dual().dual(), m.clone());
            prop_assert_eq!(m.dual().length(), m.length());
        }
    }

    #[test]
    fn rank_support_of_sum_is_union(seed in any::<u64>(), which in 0usize..2) {
        let r = rank_rings()[which].clone();
        let ms = mixed(&r, seed);
        for w in ms.windows(2) {
            let s = w[0].direct_sum(&w[1]).unwrap();
            for a in enumerate_points(&r) {
                let either = rank_point_membership(&w[0], &a).unwrap() || rank_point_membership(&w[1], &a).unwrap();
                prop_assert_eq!(rank_point_membership(&s, &a).unwrap(), either);
            }
        }
    }

    #[test]
    fn rank_support_of_extension_lies_in_union(seed in any::<u64>(), which in 0usize..2) {
        let r = rank_rings()[which].clone();
        let ms = mixed(&r, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for w in ms.windows(2) {
            if let Some((e, _, _)) = random_extension_sequence(&w[0], &w[1], &mut rng).unwrap() {
                for a in enumerate_points(&r) {
                    if rank_point_membership(&e, &a).unwrap() {
                        prop_assert!(rank_point_membership(&w[0], &a).unwrap() || rank_point_membership(&w[1], &a).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn tor_orthogonality_passes_to_extensions(seed in any::<u64>(), which in 0usize..2) {
        let r = rank_rings()[which].clone();
        let ms = mixed(&r, seed);
        let t = ms.last().unwrap().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for w in ms.windows(2) {
            let ends_vanish = [&w[0], &w[1]].iter().all(|x| tor_dims(x, &t, 4).unwrap()[1..].iter().all(|&d| d == 0));
            if !ends_vanish {
                continue;
            }
            if let Some((e, _, _)) = random_extension_sequence(&w[0], &w[1], &mut rng).unwrap() {
                prop_assert!(tor_dims(&e, &t, 4).unwrap()[1..].iter().all(|&d| d == 0));
            }
        }
    }

    #[test]
    fn disjointness_agrees_with_rank_points(seed in any::<u64>(), which in 0usize..2) {
        let r = rank_rings()[which].clone();
        let ms = mixed(&r, seed);
        let pts = enumerate_points(&r);
        for (i, m) in ms.iter().enumerate() {
            for n in &ms[i..] {
                let there = supports_disjoint(m, n, 6, 8, seed).unwrap();
                let back = supports_disjoint(n, m, 6, 8, seed).unwrap();
                let decided = |v: &DisjointVerdict| !matches!(v, DisjointVerdict::Undetermined);
                if decided(&there) && decided(&back) {
                    prop_assert_eq!(there == DisjointVerdict::Disjoint, back == DisjointVerdict::Disjoint);
                }
                if there == DisjointVerdict::Disjoint {
                    for a in &pts {
                        let both = rank_point_membership(m, a).unwrap() && rank_point_membership(n, a).unwrap();
                        prop_assert!(!both, "disjoint verdict but both contain {}", a);
                    }
                }
            }
        }
    }
}
