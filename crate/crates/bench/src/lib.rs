//! Fixtures shared by the criterion benches.

use std::sync::Arc;

use cihomol_core::construct::random_modules;
use cihomol_core::{CIRing, FieldSpec, Mat, Module};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded random `rows × cols` matrix over `F_p`.
pub fn random_matrix(p: u64, rows: usize, cols: usize, seed: u64) -> Mat {
    let f = FieldSpec::new(p).expect("prime");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Mat::from_fn(f, rows, cols, |_, _| rng.gen_range(0..f.p()))
}

pub fn ring(spec: &str) -> Arc<CIRing> {
    CIRing::parse(spec).expect("ring spec")
}

/// The largest of a seeded batch of random modules.
pub fn sample_module(r: &Arc<CIRing>, seed: u64) -> Module {
    random_modules(r, 24, seed)
        .expect("modules")
        .into_iter()
        .max_by_key(Module::dim)
        .expect("nonempty")
}

/// `m` with its basis changed by a seeded random invertible matrix.
pub fn conjugate(m: &Module, seed: u64) -> Module {
    let f = m.ring().field();
    let (p, pinv) = (0..)
        .find_map(|s| {
            let p = random_matrix(u64::from(f.p()), m.dim(), m.dim(), seed.wrapping_add(s));
            p.inverse().map(|i| (p, i))
        })
        .expect("an invertible matrix turns up");
    let acts = m.actions().iter().map(|a| p.mul(a).mul(&pinv)).collect();
    Module::new(m.ring().clone(), acts).expect("conjugate is a module")
}
