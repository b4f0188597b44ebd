use std::sync::Arc;

use crate::error::Result;
use crate::exactalg::{Mat, Subspace};
use crate::module::{Module, ModuleMap};

use super::cache;

/// Truncated minimal free resolution `F_n → ... → F_0 → M`.
///
/// `syzygies[i]` is `Ω^i M` in its own basis; `generators[i]` lists the
/// standard basis vectors of `Ω^i M` mapped to the basis of `F_i`;
/// the rows of `kernels[i]` are a basis of `Ω^{i+1} M` inside `F_i`, in the
/// same order as the basis of `syzygies[i + 1]`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub(crate) syzygies: Vec<Module>,
    pub(crate) generators: Vec<Vec<usize>>,
    pub(crate) kernels: Vec<Mat>,
}

impl Resolution {
    pub(crate) fn start(m: &Module) -> Resolution {
        Resolution {
            syzygies: vec![m.clone()],
            generators: vec![m.generator_indices()],
            kernels: Vec::new(),
        }
    }

    /// Highest `i` with `Ω^i` computed.
    pub fn degree(&self) -> usize {
        self.kernels.len()
    }

    pub fn target(&self) -> &Module {
        &self.syzygies[0]
    }

    pub fn betti(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    pub fn syzygy(&self, i: usize) -> &Module {
        &self.syzygies[i]
    }

    pub fn generators(&self, i: usize) -> &[usize] {
        &self.generators[i]
    }

    /// Rows span `Ω^{i+1}` inside `F_i`.
    pub fn kernel_rows(&self, i: usize) -> &Mat {
        &self.kernels[i]
    }

    /// Columns are the images in `F_i` of the generators of `Ω^{i+1}`, i.e.
    /// the matrix of `d_{i+1}` written blockwise as ring elements.
    pub fn relations(&self, i: usize) -> Mat {
        self.kernels[i].select_rows(&self.generators[i + 1]).transpose()
    }

    /// Matrix of the cover `F_i → Ω^i`, columns indexed by (generator, monomial).
    pub fn cover_matrix(&self, i: usize) -> Mat {
        cover_matrix(&self.syzygies[i], &self.generators[i])
    }

    pub fn free_module(&self, i: usize) -> Module {
        Module::free(self.target().ring(), self.generators[i].len())
    }

    pub fn cover(&self, i: usize) -> Result<ModuleMap> {
        ModuleMap::new(self.free_module(i), self.syzygies[i].clone(), self.cover_matrix(i))
    }

    /// `Ω^{i+1} ↪ F_i`.
    pub fn inclusion(&self, i: usize) -> Result<ModuleMap> {
        ModuleMap::new(
            self.syzygies[i + 1].clone(),
            self.free_module(i),
            self.kernels[i].transpose(),
        )
    }

    /// `d_i : F_i → F_{i-1}` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> Result<ModuleMap> {
        let mat = self.kernels[i - 1].transpose().mul(&self.cover_matrix(i));
        ModuleMap::new(self.free_module(i), self.free_module(i - 1), mat)
    }

    pub fn truncated(&self, deg: usize) -> Resolution {
        let deg = deg.min(self.degree());
        Resolution {
            syzygies: self.syzygies[..=deg].to_vec(),
            generators: self.generators[..=deg].to_vec(),
            kernels: self.kernels[..deg].to_vec(),
        }
    }

    pub(crate) fn extend_to(&mut self, deg: usize) {
        while self.degree() < deg {
            let i = self.degree();
            let (next, kernel) = syzygy_step(&self.syzygies[i], &self.generators[i]);
            self.generators.push(next.generator_indices());
            self.syzygies.push(next);
            self.kernels.push(kernel);
        }
    }
}

pub(crate) fn cover_matrix(m: &Module, gens: &[usize]) -> Mat {
    let f = m.ring().field();
    let orbits: Vec<Mat> = gens
        .iter()
        .map(|&g| {
            let mut e = vec![0u32; m.dim()];
            e[g] = 1;
            m.orbit(&e)
        })
        .collect();
    let refs: Vec<&Mat> = orbits.iter().collect();
    Mat::hstack(f, m.dim(), &refs)
}

/// Kernel of the minimal cover, returned as a module together with its basis
/// rows inside the free module.
fn syzygy_step(m: &Module, gens: &[usize]) -> (Module, Mat) {
    let ring = m.ring();
    let len = ring.length();
    let cover = cover_matrix(m, gens);
    let ker = Subspace::kernel_of(&cover);
    let k = ker.dim();
    let f = ring.field();
    let actions = (0..ring.c())
        .map(|var| {
            let mut act = Mat::zeros(f, k, k);
            let mut shifted = vec![0u32; cover.cols()];
            for s in 0..k {
                shifted.iter_mut().for_each(|x| *x = 0);
                for (pos, &b) in ker.basis().row(s).iter().enumerate() {
                    if b == 0 {
                        continue;
                    }
                    let (blk, idx) = (pos / len, pos % len);
                    if let Some(t) = ring.shift(idx, var) {
                        shifted[blk * len + t] = b;
                    }
                }
                for (r, x) in ker.coords(&shifted).into_iter().enumerate() {
                    act.set(r, s, x);
                }
            }
            act
        })
        .collect();
    (Module::from_parts(ring.clone(), actions), ker.basis().clone())
}

/// Resolution through degree at least `max_deg`, shared through the cache.
pub fn resolve_shared(m: &Module, max_deg: usize) -> Arc<Resolution> {
    cache::resolution(m, max_deg)
}

pub(crate) fn compute(m: &Module, max_deg: usize, from: Option<&Resolution>) -> Resolution {
    let mut res = from.cloned().unwrap_or_else(|| Resolution::start(m));
    res.extend_to(max_deg);
    res
}

/// Minimal free resolution truncated at exactly `max_deg`.
pub fn resolve(m: &Module, max_deg: usize) -> Resolution {
    resolve_shared(m, max_deg).truncated(max_deg)
}

pub fn minimal_cover(m: &Module) -> Result<ModuleMap> {
    resolve_shared(m, 0).cover(0)
}

/// `Ω M`, the kernel of the minimal cover.
pub fn syzygy(m: &Module) -> Module {
    resolve_shared(m, 1).syzygy(1).clone()
}

/// `Ω^{-1} M`, computed as the Matlis dual of the syzygy of the dual.
pub fn cosyzygy(m: &Module) -> Module {
    syzygy(&m.dual()).dual()
}

/// `Ω^{-1} Ω M`: drops free summands, keeping the stable class.
pub fn stable_reduce(m: &Module) -> Module {
    cosyzygy(&syzygy(m))
}
