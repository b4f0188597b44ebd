//! `Hom_A(M, N)` from a presentation of `M`, and the isomorphism test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Mat;
use crate::homalg::resolve_shared;

use super::{ElementActions, Module, ModuleMap};

/// Generators and relations of `M`, plus what is needed to turn generator
/// images into a full matrix.
struct Presentation {
    module: Module,
    mu: usize,
    relations: Mat,
    pivots: Vec<usize>,
    pivot_inv: Mat,
}

impl Presentation {
    fn new(m: &Module) -> Presentation {
        let res = resolve_shared(m, 1);
        let cover = res.cover_matrix(0);
        let red = cover.rref();
        let pivots = red.pivots;
        let pivot_inv = cover
            .select_columns(&pivots)
            .inverse()
            .expect("cover columns at pivots form a basis");
        Presentation {
            module: m.clone(),
            mu: res.generators(0).len(),
            relations: res.relations(0),
            pivots,
            pivot_inv,
        }
    }

    /// Linear conditions on the generator images `(n_0, ..., n_{μ-1}) ∈ N^μ`.
    fn constraints(&self, n: &Module) -> Mat {
        let ring = self.module.ring();
        let len = ring.length();
        let dn = n.dim();
        let beta1 = self.relations.cols();
        let mut acts = ElementActions::new(n);
        let mut c = Mat::zeros(ring.field(), beta1 * dn, self.mu * dn);
        for k in 0..beta1 {
            let col = self.relations.column(k);
            for j in 0..self.mu {
                let elem = &col[j * len..(j + 1) * len];
                if elem.iter().all(|&x| x == 0) {
                    continue;
                }
                c.set_block(k * dn, j * dn, &acts.act(elem));
            }
        }
        c
    }

    /// Matrix of the homomorphism sending generator `j` to `images[j]`.
    fn build(&self, n: &Module, images: &[u32]) -> Mat {
        let ring = self.module.ring();
        let len = ring.length();
        let dn = n.dim();
        let orbits: Vec<Mat> = (0..self.mu).map(|j| n.orbit(&images[j * dn..(j + 1) * dn])).collect();
        let cols: Vec<Vec<u32>> = self
            .pivots
            .iter()
            .map(|&pc| orbits[pc / len].column(pc % len))
            .collect();
        let q = Mat::from_columns(ring.field(), dn, &cols);
        q.mul(&self.pivot_inv)
    }
}

fn hom_kernel(pres: &Presentation, n: &Module) -> Mat {
    pres.constraints(n).kernel_basis()
}

/// A basis of `Hom_A(M, N)`.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    m.same_ring(n)?;
    let pres = Presentation::new(m);
    let k = hom_kernel(&pres, n);
    (0..k.rows())
        .map(|r| ModuleMap::new(m.clone(), n.clone(), pres.build(n, k.row(r))))
        .collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    m.same_ring(n)?;
    let pres = Presentation::new(m);
    let c = pres.constraints(n);
    Ok(c.cols() - c.rank())
}

/// Invariant that separates two modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsoWitness {
    Dimension { left: usize, right: usize },
    RadicalProfile { left: Vec<usize>, right: Vec<usize> },
    HomDimensions { hom_mn: usize, hom_nm: usize, end_m: usize, end_n: usize },
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Iso(ModuleMap),
    NotIso(IsoWitness),
    /// No invariant separated the modules and no random trial hit an isomorphism.
    Unknown,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Iso(_) => "iso",
            IsoVerdict::NotIso(_) => "not_iso",
            IsoVerdict::Unknown => "unknown",
        }
    }
}

/// Decides `M ≅ N` where possible. `Iso` carries a checked isomorphism, `NotIso`
/// an invariant that differs; otherwise `Unknown` after `trials` random
/// elements of `Hom(M, N)` all failed to be bijective.
pub fn iso_test(m: &Module, n: &Module, trials: u32, seed: u64) -> Result<IsoVerdict> {
    m.same_ring(n)?;
    if m == n {
        return Ok(IsoVerdict::Iso(ModuleMap::identity(m)));
    }
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::NotIso(IsoWitness::Dimension {
            left: m.dim(),
            right: n.dim(),
        }));
    }
    let (pm, pn) = (m.radical_profile(), n.radical_profile());
    if pm != pn {
        return Ok(IsoVerdict::NotIso(IsoWitness::RadicalProfile { left: pm, right: pn }));
    }
    let pres_m = Presentation::new(m);
    let pres_n = Presentation::new(n);
    let k_mn = hom_kernel(&pres_m, n);
    let dim_of = |p: &Presentation, t: &Module| {
        let c = p.constraints(t);
        c.cols() - c.rank()
    };
    let hom_mn = k_mn.rows();
    let hom_nm = dim_of(&pres_n, m);
    let end_m = dim_of(&pres_m, m);
    let end_n = dim_of(&pres_n, n);
    if hom_mn != hom_nm || end_m != end_n || hom_mn != end_m {
        return Ok(IsoVerdict::NotIso(IsoWitness::HomDimensions {
            hom_mn,
            hom_nm,
            end_m,
            end_n,
        }));
    }
    let f = m.ring().field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut x = vec![0u32; k_mn.cols()];
        for r in 0..k_mn.rows() {
            let coef: u32 = rng.gen_range(0..f.p());
            if coef == 0 {
                continue;
            }
            for (xi, &b) in x.iter_mut().zip(k_mn.row(r)) {
                *xi = f.add(*xi, f.mul(coef, b));
            }
        }
        let phi = pres_m.build(n, &x);
        if phi.rank() == m.dim() {
            let map = ModuleMap::new(m.clone(), n.clone(), phi)
                .map_err(|e| Error::Precondition(format!("constructed map failed its check: {e}")))?;
            return Ok(IsoVerdict::Iso(map));
        }
    }
    Ok(IsoVerdict::Unknown)
}
