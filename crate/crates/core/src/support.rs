//! Support varieties through computable shadows: Tor vanishing and the
//! rank-variety test for rings with every exponent equal to `p`.
//!
//! Over an Artinian complete intersection, `Tor_i(M, N) = 0` for `i ≫ 0`
//! already forces `Tor_i(M, N) = 0` for every `i ≥ 1`, so any nonzero
//! higher Tor certifies that the supports meet.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Mat;
use crate::homalg::{classify_complexity, derive_seed, tor_dims, Complexity};
use crate::module::{quotient_by_form_power, Module};
use crate::ring::{enumerate_points, CIRing, LinearForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DisjointVerdict {
    Disjoint,
    /// `Tor_degree` is the first nonzero higher Tor.
    NotDisjoint { degree: usize },
    Undetermined,
}

/// A membership question `α ∈ V(M)` together with the bound it was asked at.
#[derive(Clone, Debug)]
pub struct SupportQuery {
    pub module: Module,
    pub point: LinearForm,
    pub max_deg: usize,
}

fn periodic_certificate(m: &Module, max_deg: usize, trials: u32, seed: u64) -> Result<Option<(usize, usize)>> {
    Ok(match classify_complexity(m, max_deg.max(2), trials, seed)?.verdict {
        Complexity::PeriodicFrom { start, period } => Some((start, period)),
        _ => None,
    })
}

fn first_nonzero(dims: &[usize]) -> Option<usize> {
    (1..dims.len()).find(|&i| dims[i] != 0)
}

/// Tor-vanishing test for `V(M) ∩ V(N) = ∅`, with the Tor range fixed by a
/// periodicity certificate `(start, period)` of `x`.
pub(crate) fn disjoint_with_certificate(x: &Module, y: &Module, cert: (usize, usize)) -> Result<DisjointVerdict> {
    let dims = tor_dims(x, y, cert.0 + cert.1)?;
    Ok(match first_nonzero(&dims) {
        Some(degree) => DisjointVerdict::NotDisjoint { degree },
        None => DisjointVerdict::Disjoint,
    })
}

pub fn supports_disjoint(m: &Module, n: &Module, max_deg: usize, trials: u32, seed: u64) -> Result<DisjointVerdict> {
    m.same_ring(n)?;
    if m.is_free().is_some() || n.is_free().is_some() {
        return Ok(DisjointVerdict::Disjoint);
    }
    if let Some(cert) = periodic_certificate(m, max_deg, trials, seed)? {
        return disjoint_with_certificate(m, n, cert);
    }
    if let Some(cert) = periodic_certificate(n, max_deg, trials, seed)? {
        return disjoint_with_certificate(n, m, cert);
    }
    let dims = tor_dims(m, n, max_deg)?;
    Ok(match first_nonzero(&dims) {
        Some(degree) => DisjointVerdict::NotDisjoint { degree },
        None => DisjointVerdict::Undetermined,
    })
}

fn require_group_algebra(ring: &CIRing) -> Result<()> {
    let p = ring.field().p();
    if ring.exps().iter().any(|&a| a != p) {
        return Err(Error::UnsupportedRing(format!(
            "rank varieties need every exponent equal to p = {p}, ring is {}",
            ring.spec_string()
        )));
    }
    Ok(())
}

/// Rank-variety membership: `ℓ_α` acting on `M` has a Jordan block shorter than `p`.
pub fn rank_point_membership(m: &Module, alpha: &LinearForm) -> Result<bool> {
    let ring = m.ring();
    require_group_algebra(ring)?;
    if alpha.coeffs().len() != ring.c() {
        return Err(Error::Precondition(format!(
            "point has {} coordinates, ring has {} variables",
            alpha.coeffs().len(),
            ring.c()
        )));
    }
    let f = ring.field();
    let mut op = Mat::zeros(f, m.dim(), m.dim());
    for (a, act) in alpha.coeffs().iter().zip(m.actions()) {
        op.add_scaled_assign(*a, act);
    }
    let p = f.p();
    Ok((p as usize) * op.pow(p - 1).rank() < m.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportMethod {
    RankVariety,
    TorWitness,
}

/// Result of a support search. `members` lists the enumerated points whose
/// test came out positive; `point` is set when they describe a single point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportLocation {
    #[serde(serialize_with = "ser_opt_form")]
    pub point: Option<LinearForm>,
    #[serde(serialize_with = "ser_forms")]
    pub members: Vec<LinearForm>,
    pub method: SupportMethod,
    pub diagnostics: Vec<String>,
}

fn ser_opt_form<S: serde::Serializer>(v: &Option<LinearForm>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(g) => s.serialize_some(&g.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_forms<S: serde::Serializer>(v: &[LinearForm], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Locates the support point of a periodic module.
///
/// When every exponent is `p` the rank variety is used directly. Otherwise,
/// for `c = 2`, the witnesses `T_β = A/(ℓ_β)` are used: `β` is a member when
/// `Tor_{≥1}(M, T_β) ≠ 0`. Different `β` can have the same support, so the
/// members are accepted as one point when their witnesses pairwise meet, and
/// the first member in enumeration order names it.
pub fn locate_periodic_support(m: &Module, max_deg: usize, trials: u32, seed: u64) -> Result<SupportLocation> {
    let ring = m.ring().clone();
    let Some(cert) = periodic_certificate(m, max_deg, trials, seed)? else {
        return Err(Error::Precondition("module is not certified periodic".into()));
    };
    let points = enumerate_points(&ring);
    if require_group_algebra(&ring).is_ok() {
        let mut members = Vec::new();
        for alpha in &points {
            if rank_point_membership(m, alpha)? {
                members.push(alpha.clone());
            }
        }
        let point = (members.len() == 1).then(|| members[0].clone());
        let diagnostics = if point.is_none() {
            vec![format!("{} enumerated points are in the rank variety", members.len())]
        } else {
            Vec::new()
        };
        return Ok(SupportLocation {
            point,
            members,
            method: SupportMethod::RankVariety,
            diagnostics,
        });
    }
    if ring.c() != 2 {
        return Err(Error::UnsupportedRing(format!(
            "support location needs every exponent equal to p or two variables, ring is {}",
            ring.spec_string()
        )));
    }
    let mut diagnostics = Vec::new();
    let mut witnesses = Vec::new();
    for (idx, beta) in points.iter().enumerate() {
        let t = quotient_by_form_power(&ring, beta, 1)?;
        match periodic_certificate(&t, max_deg, trials, derive_seed(seed, idx, 0))? {
            Some(c) => witnesses.push((beta.clone(), t, c)),
            None => diagnostics.push(format!("witness for {beta} is not certified periodic")),
        }
    }
    let mut members = Vec::new();
    for w in witnesses {
        if matches!(disjoint_with_certificate(m, &w.1, cert)?, DisjointVerdict::NotDisjoint { .. }) {
            members.push(w);
        }
    }
    let point = match members.first() {
        None => {
            diagnostics.push("no witness meets the support".into());
            None
        }
        Some((first, t0, c0)) => {
            let mut one_point = true;
            for (beta, t, _) in &members[1..] {
                if !matches!(disjoint_with_certificate(t0, t, *c0)?, DisjointVerdict::NotDisjoint { .. }) {
                    diagnostics.push(format!("witnesses for {first} and {beta} have disjoint supports"));
                    one_point = false;
                }
            }
            one_point.then(|| first.clone())
        }
    };
    Ok(SupportLocation {
        point,
        members: members.into_iter().map(|(b, _, _)| b).collect(),
        method: SupportMethod::TorWitness,
        diagnostics,
    })
}
