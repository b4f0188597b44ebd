//! Named module families and seeded generators.
//!
//! Every family is grown from a base pool by syzygies, cosyzygies, direct
//! sums and extensions, driven by a seeded ChaCha8 stream so that the same
//! seed reproduces the same family. Candidates above a dimension cap are
//! skipped to keep certification cheap.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::Mat;
use crate::homalg::{
    classify_complexity, cosyzygy, derive_seed, extension, syzygy, ComplexityVerdict, DEFAULT_MAX_DEG,
    DEFAULT_TRIALS,
};
use crate::module::{hom_space, quotient_by_form_power, Module, ModuleMap};
use crate::ring::{enumerate_points, regular_module, CIRing, LinearForm};
use crate::support::{disjoint_with_certificate, DisjointVerdict};

/// `[A/(g), A/(g^2), ..., A/(g^{r-1})]` where `r` is the nilpotency order of `g`.
pub fn h_family(ring: &Arc<CIRing>, g: &LinearForm) -> Result<Vec<Module>> {
    let r = ring.nilpotency_order(g);
    if r < 2 {
        return Err(Error::Precondition(format!("{g} has nilpotency order {r} < 2")));
    }
    (1..r).map(|i| quotient_by_form_power(ring, g, i)).collect()
}

/// `A/(X_i^j)` for every variable and `1 ≤ j < a_i`, tagged by the variable.
fn axis_quotients(ring: &Arc<CIRing>, step: &[u32]) -> Result<Vec<(Module, Option<usize>)>> {
    let mut out = Vec::new();
    for i in 0..ring.c() {
        let x = LinearForm::variable(ring.c(), i);
        let mut j = step[i];
        while j < ring.exps()[i] {
            out.push((quotient_by_form_power(ring, &x, j)?, Some(i)));
            j += step[i];
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// The H-family of a linear form.
    HFamily { g: LinearForm },
    /// `A/(X_i^j)` for all variables.
    AxisQuotients,
    /// Axis quotients and their syzygies up to `depth`.
    SyzygyClosure { depth: usize },
    /// Axis quotients plus `count` extensions drawn with `seed`.
    ExtensionClosure { count: usize, seed: u64 },
    /// Modules induced from axis quotients of the subring `k[X_i^{u_i}]`.
    RestrictionChain { u: Vec<u32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Syzygy,
    Cosyzygy,
    Sum,
    Extension,
}

const ALL_OPS: [Op; 4] = [Op::Syzygy, Op::Cosyzygy, Op::Sum, Op::Extension];

struct Grower<'a, T> {
    members: Vec<(Module, Option<usize>, T)>,
    seen: HashSet<String>,
    cap: usize,
    budget: usize,
    certify: Box<dyn FnMut(&Module, u64) -> Result<Option<T>> + 'a>,
    attempts: usize,
}

impl<'a, T: Clone> Grower<'a, T> {
    fn new(cap: usize, budget: usize, certify: impl FnMut(&Module, u64) -> Result<Option<T>> + 'a) -> Self {
        Grower {
            members: Vec::new(),
            seen: HashSet::new(),
            cap,
            budget,
            certify: Box::new(certify),
            attempts: 0,
        }
    }

    fn full(&self) -> bool {
        self.members.len() >= self.budget
    }

    fn offer(&mut self, m: Module, tag: Option<usize>, seed: u64) -> Result<()> {
        self.attempts += 1;
        if self.full() || m.is_zero() || m.dim() > self.cap || !self.seen.insert(m.content_hash().to_string()) {
            return Ok(());
        }
        if let Some(cert) = (self.certify)(&m, derive_seed(seed, self.attempts, 1))? {
            self.members.push((m, tag, cert));
        }
        Ok(())
    }

    /// Random closure steps until the budget is met or the step limit runs out.
    fn close(&mut self, ops: &[Op], same_tag_extensions: bool, rng: &mut ChaCha8Rng, seed: u64) -> Result<()> {
        let max_steps = 12 * self.budget + 40;
        for _ in 0..max_steps {
            if self.full() || self.members.is_empty() {
                break;
            }
            let op = *ops.choose(rng).expect("nonempty op list");
            let n = self.members.len();
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (ma, ta) = (self.members[a].0.clone(), self.members[a].1);
            let (mb, tb) = (self.members[b].0.clone(), self.members[b].1);
            match op {
                Op::Syzygy => self.offer(syzygy(&ma), ta, seed)?,
                Op::Cosyzygy => self.offer(cosyzygy(&ma), ta, seed)?,
                Op::Sum => {
                    if ma.dim() + mb.dim() <= self.cap {
                        let tag = if ta == tb { ta } else { None };
                        self.offer(ma.direct_sum(&mb)?, tag, seed)?;
                    }
                }
                Op::Extension => {
                    if same_tag_extensions && (ta.is_none() || ta != tb) {
                        continue;
                    }
                    if ma.dim() + mb.dim() > self.cap {
                        continue;
                    }
                    if let Some(e) = random_extension(&ma, &mb, rng)? {
                        self.offer(e, ta, seed)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Middle term of a random extension `0 → n → E → m → 0`, or `None` when
/// `Hom(Ω m, n) = 0`.
pub fn random_extension(m: &Module, n: &Module, rng: &mut ChaCha8Rng) -> Result<Option<Module>> {
    Ok(random_extension_sequence(m, n, rng)?.map(|(e, _, _)| e))
}

/// Like [`random_extension`], also returning the maps `n → E` and `E → m`.
pub fn random_extension_sequence(
    m: &Module,
    n: &Module,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Module, ModuleMap, ModuleMap)>> {
    let omega = syzygy(m);
    let basis = hom_space(&omega, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let f = m.ring().field();
    let mut mat = Mat::zeros(f, n.dim(), omega.dim());
    for phi in &basis {
        mat.add_scaled_assign(rng.gen_range(0..f.p()), phi.matrix());
    }
    let phi = ModuleMap::new(omega, n.clone(), mat)?;
    let ext = extension(m, &phi)?;
    Ok(Some((ext.module, ext.inclusion, ext.projection)))
}

fn dim_cap(ring: &CIRing) -> usize {
    2 * ring.length()
}

/// Certified modules of complexity at most one.
pub fn cx1_family(
    ring: &Arc<CIRing>,
    spec: &FamilySpec,
    budget: usize,
    seed: u64,
) -> Result<Vec<(Module, ComplexityVerdict)>> {
    let ones = vec![1u32; ring.c()];
    let mut base: Vec<(Module, Option<usize>)> = vec![(regular_module(ring), None)];
    let ops: Vec<Op>;
    let same_tag = true;
    match spec {
        FamilySpec::HFamily { g } => {
            let tag = g.is_variable().unwrap_or(ring.c());
            base.extend(h_family(ring, g)?.into_iter().map(|m| (m, Some(tag))));
            ops = ALL_OPS.to_vec();
        }
        FamilySpec::AxisQuotients => {
            base.extend(axis_quotients(ring, &ones)?);
            ops = ALL_OPS.to_vec();
        }
        FamilySpec::SyzygyClosure { depth } => {
            let axis = axis_quotients(ring, &ones)?;
            for (m, tag) in axis {
                let mut cur = m;
                base.push((cur.clone(), tag));
                for _ in 0..*depth {
                    cur = syzygy(&cur);
                    base.push((cur.clone(), tag));
                }
            }
            ops = vec![Op::Sum];
        }
        FamilySpec::ExtensionClosure { .. } => {
            base.extend(axis_quotients(ring, &ones)?);
            ops = vec![Op::Extension, Op::Sum];
        }
        FamilySpec::RestrictionChain { u } => {
            if u.len() != ring.c() || u.iter().zip(ring.exps()).any(|(&ui, &ai)| ui == 0 || ai % ui != 0) {
                return Err(Error::InvalidEmbedding(format!("powers {u:?} do not fit {}", ring.spec_string())));
            }
            base.extend(axis_quotients(ring, u)?);
            ops = ALL_OPS.to_vec();
        }
    }
    let seed = match spec {
        FamilySpec::ExtensionClosure { seed: s, .. } => *s ^ seed,
        _ => seed,
    };
    let budget = match spec {
        FamilySpec::ExtensionClosure { count, .. } => budget.min(base.len() + count),
        _ => budget,
    };
    let mut grower = Grower::new(dim_cap(ring), budget, |m: &Module, s| {
        let v = classify_complexity(m, DEFAULT_MAX_DEG, DEFAULT_TRIALS, s)?;
        Ok(v.verdict.is_certified_cx_le1().then_some(v))
    });
    for (m, tag) in base {
        grower.offer(m, tag, seed)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grower.close(&ops, same_tag, &mut rng, seed)?;
    Ok(grower.members.into_iter().map(|(m, _, v)| (m, v)).collect())
}

/// Modules certified to have support avoiding the point of `H = A/(ℓ_α)`.
pub fn avoiding_family(ring: &Arc<CIRing>, alpha: &LinearForm, budget: usize, seed: u64) -> Result<Vec<Module>> {
    let h = quotient_by_form_power(ring, alpha, 1)?;
    let cert = match classify_complexity(&h, DEFAULT_MAX_DEG, DEFAULT_TRIALS, seed)?.verdict {
        crate::homalg::Complexity::PeriodicFrom { start, period } => (start, period),
        other => {
            return Err(Error::Precondition(format!(
                "A/({alpha}) is not certified periodic ({other:?})"
            )))
        }
    };
    let mut base: Vec<(Module, Option<usize>)> = vec![(regular_module(ring), None)];
    for beta in enumerate_points(ring) {
        if &beta == alpha {
            continue;
        }
        for j in 1..ring.nilpotency_order(&beta) {
            base.push((quotient_by_form_power(ring, &beta, j)?, None));
        }
    }
    let mut grower = Grower::new(dim_cap(ring), budget, |m: &Module, _| {
        if m.is_free().is_some() {
            return Ok(Some(()));
        }
        Ok((disjoint_with_certificate(&h, m, cert)? == DisjointVerdict::Disjoint).then_some(()))
    });
    for (m, tag) in base {
        grower.offer(m, tag, seed)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grower.close(&ALL_OPS, false, &mut rng, seed)?;
    Ok(grower.members.into_iter().map(|(m, _, _)| m).collect())
}

/// Uncertified random modules for invariant testing: quotients by powers of
/// random linear forms, the residue field, free modules, and random
/// syzygies, cosyzygies, sums and extensions of those.
pub fn random_modules(ring: &Arc<CIRing>, count: usize, seed: u64) -> Result<Vec<Module>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = enumerate_points(ring);
    let cap = dim_cap(ring);
    let mut pool: Vec<Module> = vec![Module::residue_field(ring), regular_module(ring)];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = match rng.gen_range(0..6) {
            0 => {
                let g = points.choose(&mut rng).expect("points exist");
                let j = rng.gen_range(1..=ring.nilpotency_order(g));
                quotient_by_form_power(ring, g, j)?
            }
            1 => syzygy(pool.choose(&mut rng).expect("nonempty")),
            2 => cosyzygy(pool.choose(&mut rng).expect("nonempty")),
            3 => {
                let a = pool.choose(&mut rng).expect("nonempty");
                let b = pool.choose(&mut rng).expect("nonempty");
                a.direct_sum(b)?
            }
            4 => {
                let a = pool.choose(&mut rng).expect("nonempty").clone();
                let b = pool.choose(&mut rng).expect("nonempty").clone();
                match random_extension(&a, &b, &mut rng)? {
                    Some(e) => e,
                    None => continue,
                }
            }
            _ => pool.choose(&mut rng).expect("nonempty").clone(),
        };
        if m.is_zero() || m.dim() > cap {
            continue;
        }
        pool.push(m.clone());
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::Complexity;
    use crate::support::supports_disjoint;

    #[test]
    fn h_family_lengths() {
        let r = CIRing::new(5, &[2, 4]).unwrap();
        let fam = h_family(&r, &LinearForm::variable(2, 1)).unwrap();
        let lens: Vec<usize> = fam.iter().map(Module::length).collect();
        assert_eq!(lens, vec![2, 4, 6]);
        assert!(fam.iter().all(|h| h.min_generators() == 1));
        let r2 = CIRing::new(3, &[2, 3]).unwrap();
        assert_eq!(h_family(&r2, &LinearForm::variable(2, 0)).unwrap().len(), 1);
    }

    #[test]
    fn cx1_family_is_certified_and_reproducible() {
        let r = CIRing::new(3, &[3, 3]).unwrap();
        assert!(cx1_family(&r, &FamilySpec::AxisQuotients, 0, 0).unwrap().is_empty());
        let fam = cx1_family(&r, &FamilySpec::AxisQuotients, 12, 7).unwrap();
        assert_eq!(fam.len(), 12);
        for (m, v) in &fam {
            assert!(v.verdict.is_certified_cx_le1());
            assert_eq!(m.length() % 3, 0);
        }
        let again = cx1_family(&r, &FamilySpec::AxisQuotients, 12, 7).unwrap();
        let h1: Vec<_> = fam.iter().map(|(m, _)| m.content_hash().to_string()).collect();
        let h2: Vec<_> = again.iter().map(|(m, _)| m.content_hash().to_string()).collect();
        assert_eq!(h1, h2);
    }

    #[test]
    fn avoiding_family_examples() {
        let r = CIRing::new(5, &[3, 4]).unwrap();
        let y = LinearForm::variable(2, 1);
        let fam = avoiding_family(&r, &y, 10, 0).unwrap();
        let ax = quotient_by_form_power(&r, &LinearForm::variable(2, 0), 1).unwrap();
        assert!(fam.contains(&regular_module(&r)));
        assert!(fam.contains(&ax));
        assert!(!fam.contains(&Module::residue_field(&r)));
        let h = quotient_by_form_power(&r, &y, 1).unwrap();
        for m in &fam {
            assert_eq!(supports_disjoint(m, &h, 8, 16, 0).unwrap(), DisjointVerdict::Disjoint);
        }
    }

    #[test]
    fn sums_of_members_stay_certified() {
        let r = CIRing::new(5, &[2, 4]).unwrap();
        let fam = h_family(&r, &LinearForm::variable(2, 1)).unwrap();
        let s = fam[0].direct_sum(&fam[2]).unwrap();
        let v = classify_complexity(&s, 8, 16, 0).unwrap();
        assert!(matches!(v.verdict, Complexity::PeriodicFrom { .. }));
    }

    #[test]
    fn random_modules_are_valid() {
        let r = CIRing::new(3, &[2, 3]).unwrap();
        let ms = random_modules(&r, 20, 1).unwrap();
        assert_eq!(ms.len(), 20);
        for m in ms {
            m.validate().unwrap();
        }
    }
}
