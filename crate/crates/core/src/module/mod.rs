//! Finite-length modules as vector spaces with commuting nilpotent actions.

mod hom;
mod io;
mod map;

use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactalg::{Mat, Subspace};
use crate::ring::{regular_module, CIRing, Embedding, LinearForm};

pub use hom::{hom_dim, hom_space, iso_test, IsoVerdict, IsoWitness};
pub(crate) use io::ModuleFile;
pub use io::{read_module_file, write_module_file};
pub use map::ModuleMap;

struct Inner {
    ring: Arc<CIRing>,
    dim: usize,
    actions: Vec<Mat>,
    hash: OnceLock<String>,
}

/// An `A`-module: `actions[i]` is the matrix of `X_i` acting on column vectors.
///
/// Cloning is cheap; the data is shared and immutable.
#[derive(Clone)]
pub struct Module {
    inner: Arc<Inner>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.ring == other.inner.ring && self.inner.actions == other.inner.actions)
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {} over {})", self.dim(), self.ring().spec_string())
    }
}

impl Module {
    /// Validates commutativity and nilpotency before accepting the actions.
    pub fn new(ring: Arc<CIRing>, actions: Vec<Mat>) -> Result<Module> {
        let m = Module::from_parts_checked_shape(ring, actions)?;
        m.validate()?;
        Ok(m)
    }

    fn from_parts_checked_shape(ring: Arc<CIRing>, actions: Vec<Mat>) -> Result<Module> {
        if actions.len() != ring.c() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, found {}",
                ring.c(),
                actions.len()
            )));
        }
        let dim = actions.first().map_or(0, Mat::rows);
        for (i, a) in actions.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::InvalidModule(format!(
                    "action {} is {}x{}, expected {}x{}",
                    i,
                    a.rows(),
                    a.cols(),
                    dim,
                    dim
                )));
            }
            if a.field() != ring.field() {
                return Err(Error::InvalidModule(format!("action {i} is over the wrong field")));
            }
        }
        Ok(Module::from_parts(ring, actions))
    }

    /// Trusted constructor for actions produced by the engine itself.
    pub(crate) fn from_parts(ring: Arc<CIRing>, actions: Vec<Mat>) -> Module {
        let dim = actions.first().map_or(0, Mat::rows);
        Module {
            inner: Arc::new(Inner {
                ring,
                dim,
                actions,
                hash: OnceLock::new(),
            }),
        }
    }

    /// Checks that the actions commute and that `X_i^{a_i}` acts as zero.
    pub fn validate(&self) -> Result<()> {
        let acts = self.actions();
        for i in 0..acts.len() {
            for j in i + 1..acts.len() {
                let ab = acts[i].mul(&acts[j]);
                let ba = acts[j].mul(&acts[i]);
                if let Some((r, c)) = first_difference(&ab, &ba) {
                    return Err(Error::InvalidModule(format!(
                        "actions {i},{j} do not commute (first difference at row {r}, column {c})"
                    )));
                }
            }
            let power = acts[i].pow(self.ring().exps()[i]);
            if let Some(pos) = power.data().iter().position(|&x| x != 0) {
                return Err(Error::InvalidModule(format!(
                    "action {} raised to the power {} is nonzero at row {}, column {}",
                    i,
                    self.ring().exps()[i],
                    pos / self.dim(),
                    pos % self.dim()
                )));
            }
        }
        Ok(())
    }

    pub fn zero(ring: &Arc<CIRing>) -> Module {
        let f = ring.field();
        Module::from_parts(ring.clone(), (0..ring.c()).map(|_| Mat::zeros(f, 0, 0)).collect())
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(ring: &Arc<CIRing>) -> Module {
        let f = ring.field();
        Module::from_parts(ring.clone(), (0..ring.c()).map(|_| Mat::zeros(f, 1, 1)).collect())
    }

    /// The free module `A^rank`.
    pub fn free(ring: &Arc<CIRing>, rank: usize) -> Module {
        regular_module(ring).direct_power(rank)
    }

    pub fn ring(&self) -> &Arc<CIRing> {
        &self.inner.ring
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    /// `ℓ(M)`, which equals the dimension over `k`.
    pub fn length(&self) -> usize {
        self.inner.dim
    }

    pub fn actions(&self) -> &[Mat] {
        &self.inner.actions
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.inner.actions[i]
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Hex SHA-256 of the canonical module file.
    pub fn content_hash(&self) -> &str {
        self.inner.hash.get_or_init(|| {
            let digest = Sha256::digest(self.to_json_string().as_bytes());
            hex::encode(digest)
        })
    }

    /// `m M` as a subspace.
    pub fn radical(&self) -> Subspace {
        let f = self.ring().field();
        let refs: Vec<&Mat> = self.actions().iter().collect();
        Subspace::span_of_columns(&Mat::hstack(f, self.dim(), &refs))
    }

    /// `μ(M) = dim M / m M`.
    pub fn min_generators(&self) -> usize {
        self.dim() - self.radical().dim()
    }

    /// Standard basis indices whose classes form a basis of `M / m M`.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.radical().complement_cols()
    }

    /// Dimensions of `M ⊇ mM ⊇ m²M ⊇ ...`, ending with the first zero.
    pub fn radical_profile(&self) -> Vec<usize> {
        let f = self.ring().field();
        let mut profile = vec![self.dim()];
        let mut current = Mat::identity(f, self.dim());
        while current.cols() > 0 {
            let images: Vec<Mat> = self.actions().iter().map(|a| a.mul(&current)).collect();
            let refs: Vec<&Mat> = images.iter().collect();
            let span = Subspace::span_of_columns(&Mat::hstack(f, self.dim(), &refs));
            profile.push(span.dim());
            current = span.basis().transpose();
        }
        profile
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        self.same_ring(other)?;
        let f = self.ring().field();
        let actions = self
            .actions()
            .iter()
            .zip(other.actions())
            .map(|(a, b)| Mat::block_diag(f, &[a, b]))
            .collect();
        Ok(Module::from_parts(self.ring().clone(), actions))
    }

    /// `M^n`.
    pub fn direct_power(&self, n: usize) -> Module {
        let f = self.ring().field();
        let actions = self
            .actions()
            .iter()
            .map(|a| {
                let blocks: Vec<&Mat> = std::iter::repeat(a).take(n).collect();
                Mat::block_diag(f, &blocks)
            })
            .collect();
        Module::from_parts(self.ring().clone(), actions)
    }

    /// Matlis dual `Hom_k(M, k)`: the actions transpose.
    pub fn dual(&self) -> Module {
        Module::from_parts(self.ring().clone(), self.actions().iter().map(Mat::transpose).collect())
    }

    pub(crate) fn same_ring(&self, other: &Module) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(self.ring().spec_string(), other.ring().spec_string()));
        }
        Ok(())
    }

    /// Submodule on an `A`-stable subspace, in the subspace's coordinates.
    pub fn submodule(&self, sub: &Subspace) -> Module {
        let f = self.ring().field();
        let k = sub.dim();
        let actions = self
            .actions()
            .iter()
            .map(|a| {
                let mut m = Mat::zeros(f, k, k);
                for s in 0..k {
                    let img = a.mul_vec(sub.basis().row(s));
                    for (r, x) in sub.coords(&img).into_iter().enumerate() {
                        m.set(r, s, x);
                    }
                }
                m
            })
            .collect();
        Module::from_parts(self.ring().clone(), actions)
    }

    /// Quotient by an `A`-stable subspace. The quotient basis is the images of
    /// the standard basis vectors at `sub.complement_cols()`.
    pub fn quotient(&self, sub: &Subspace) -> Module {
        let f = self.ring().field();
        let comp = sub.complement_cols();
        let k = comp.len();
        let actions = self
            .actions()
            .iter()
            .map(|a| {
                let mut m = Mat::zeros(f, k, k);
                for (s, &j) in comp.iter().enumerate() {
                    let res = sub.residual(&a.column(j));
                    for (r, &cj) in comp.iter().enumerate() {
                        m.set(r, s, res[cj]);
                    }
                }
                m
            })
            .collect();
        Module::from_parts(self.ring().clone(), actions)
    }

    /// Matrix whose column `e` is `X^e v` for each basis monomial `e`.
    pub fn orbit(&self, v: &[u32]) -> Mat {
        let ring = self.ring();
        let n = ring.length();
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(n);
        cols.push(v.to_vec());
        for idx in 1..n {
            let var = (0..ring.c()).find(|&i| ring.monomial(idx)[i] > 0).expect("nonconstant monomial");
            let prev = ring.unshift(idx, var).expect("divisible");
            let next = self.action(var).mul_vec(&cols[prev]);
            cols.push(next);
        }
        Mat::from_columns(ring.field(), self.dim(), &cols)
    }

    /// Matrix of multiplication by the ring element `a` (monomial coordinates).
    pub fn element_action(&self, a: &[u32]) -> Mat {
        ElementActions::new(self).act(a)
    }

    /// `A/(ℓ_g^j)`-style checks and restriction need `M` viewed over a subring.
    pub fn restrict_scalars(&self, emb: &Embedding) -> Result<Module> {
        if self.ring() != emb.source() {
            return Err(Error::InvalidEmbedding(format!(
                "module lives over {}, embedding restricts from {}",
                self.ring().spec_string(),
                emb.source().spec_string()
            )));
        }
        let actions = self.actions().iter().zip(emb.powers()).map(|(a, &u)| a.pow(u)).collect();
        Ok(Module::from_parts(emb.subring().clone(), actions))
    }

    /// `Some(rank)` when `M` is free, i.e. the minimal cover `A^μ → M` is injective.
    pub fn is_free(&self) -> Option<usize> {
        let mu = self.min_generators();
        (self.dim() == mu * self.ring().length()).then_some(mu)
    }
}

fn first_difference(a: &Mat, b: &Mat) -> Option<(usize, usize)> {
    a.data()
        .iter()
        .zip(b.data())
        .position(|(x, y)| x != y)
        .map(|pos| (pos / a.cols().max(1), pos % a.cols().max(1)))
}

/// Memoized monomial powers `X^e` acting on one module, used to turn ring
/// elements into matrices.
pub(crate) struct ElementActions<'a> {
    module: &'a Module,
    table: Vec<Option<Mat>>,
}

impl<'a> ElementActions<'a> {
    pub(crate) fn new(module: &'a Module) -> Self {
        ElementActions {
            module,
            table: vec![None; module.ring().length()],
        }
    }

    fn ensure(&mut self, idx: usize) {
        if self.table[idx].is_some() {
            return;
        }
        let ring = self.module.ring().clone();
        if idx == 0 {
            self.table[0] = Some(Mat::identity(ring.field(), self.module.dim()));
            return;
        }
        let var = (0..ring.c()).find(|&i| ring.monomial(idx)[i] > 0).expect("nonconstant monomial");
        let prev = ring.unshift(idx, var).expect("divisible");
        self.ensure(prev);
        let m = self.module.action(var).mul(self.table[prev].as_ref().expect("filled"));
        self.table[idx] = Some(m);
    }

    pub(crate) fn act(&mut self, a: &[u32]) -> Mat {
        let f = self.module.ring().field();
        let n = self.module.dim();
        let mut out = Mat::zeros(f, n, n);
        for (idx, &coef) in a.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            self.ensure(idx);
            out.add_scaled_assign(coef, self.table[idx].as_ref().expect("filled"));
        }
        out
    }
}

/// `A/(ℓ_g^j)`; `j = 0` gives the zero module.
pub fn quotient_by_form_power(ring: &Arc<CIRing>, g: &LinearForm, j: u32) -> Result<Module> {
    if g.coeffs().len() != ring.c() {
        return Err(Error::Precondition(format!(
            "linear form has {} coefficients, ring has {} variables",
            g.coeffs().len(),
            ring.c()
        )));
    }
    if j == 0 {
        return Ok(Module::zero(ring));
    }
    let order = ring.nilpotency_order(g);
    if j > order {
        return Err(Error::Precondition(format!(
            "power {j} exceeds the nilpotency order {order} of {g}"
        )));
    }
    let a = regular_module(ring);
    let h = ring.pow_element(&ring.form_element(g), j);
    let ideal = Subspace::span_of_columns(&a.element_action(&h));
    Ok(a.quotient(&ideal))
}
