//! Monomial complete intersections `k[X_1..X_c]/(X_1^{a_1}, ..., X_c^{a_c})`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Mat};
use crate::module::Module;

/// The ring `A = F_p[X_1..X_c]/(X_i^{a_i})` with its lex-ordered monomial basis.
#[derive(Clone)]
pub struct CIRing {
    field: FieldSpec,
    exps: Vec<u32>,
    basis: Vec<Vec<u32>>,
    strides: Vec<usize>,
}

impl PartialEq for CIRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.exps == other.exps
    }
}

impl Eq for CIRing {}

impl fmt::Debug for CIRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CIRing({})", self.spec_string())
    }
}

impl fmt::Display for CIRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[", self.field.p())?;
        for i in 0..self.c() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.var_name(i))?;
        }
        write!(f, "]/(")?;
        for (i, a) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}^{}", self.var_name(i), a)?;
        }
        write!(f, ")")
    }
}

impl CIRing {
    pub fn new(p: u64, exps: &[u32]) -> Result<Arc<CIRing>> {
        let field = FieldSpec::new(p)?;
        if exps.is_empty() {
            return Err(Error::Precondition("a ring needs at least one variable".into()));
        }
        if let Some(i) = exps.iter().position(|&a| a < 2) {
            return Err(Error::Precondition(format!(
                "exponent a_{} = {} must be at least 2",
                i + 1,
                exps[i]
            )));
        }
        let len = exps
            .iter()
            .try_fold(1usize, |acc, &a| acc.checked_mul(a as usize))
            .filter(|&l| l <= 1 << 16)
            .ok_or_else(|| Error::Precondition("ring length too large".into()))?;
        let c = exps.len();
        let mut strides = vec![1usize; c];
        for i in (0..c.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * exps[i + 1] as usize;
        }
        let basis = (0..len)
            .map(|idx| (0..c).map(|i| ((idx / strides[i]) % exps[i] as usize) as u32).collect())
            .collect();
        Ok(Arc::new(CIRing {
            field,
            exps: exps.to_vec(),
            basis,
            strides,
        }))
    }

    /// Parses `p=<prime>;exps=<a1>,<a2>,...`.
    pub fn parse(spec: &str) -> Result<Arc<CIRing>> {
        let err = |pos: usize, msg: &str| Error::Parse {
            input: spec.to_string(),
            pos,
            msg: msg.to_string(),
        };
        let s = spec.trim_end();
        if !s.starts_with("p=") {
            return Err(err(0, "expected `p=`"));
        }
        let semi = s.find(';').ok_or_else(|| err(s.len(), "expected `;exps=`"))?;
        let p_str = &s[2..semi];
        let p: u64 = parse_uint(p_str).ok_or_else(|| err(2, "expected an unsigned integer for p"))?;
        let rest = &s[semi + 1..];
        if !rest.starts_with("exps=") {
            return Err(err(semi + 1, "expected `exps=`"));
        }
        let mut exps = Vec::new();
        let mut pos = semi + 6;
        for part in rest[5..].split(',') {
            let a: u32 = parse_uint(part)
                .and_then(|a| u32::try_from(a).ok())
                .ok_or_else(|| err(pos, "expected an unsigned integer exponent"))?;
            exps.push(a);
            pos += part.len() + 1;
        }
        CIRing::new(p, &exps).map_err(|e| match e {
            Error::InvalidPrime(_) => err(2, &format!("{p} is not prime")),
            Error::Precondition(m) => err(semi + 6, &m),
            other => other,
        })
    }

    pub fn spec_string(&self) -> String {
        let exps: Vec<String> = self.exps.iter().map(u32::to_string).collect();
        format!("p={};exps={}", self.field.p(), exps.join(","))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Codimension (number of variables).
    pub fn c(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// `ℓ(A) = ∏ a_i`.
    pub fn length(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn monomial(&self, idx: usize) -> &[u32] {
        &self.basis[idx]
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        if e.len() != self.c() || e.iter().zip(&self.exps).any(|(x, a)| x >= a) {
            return None;
        }
        Some(e.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum())
    }

    /// Index of `X_var * basis[idx]`, or `None` when that product vanishes.
    #[inline]
    pub fn shift(&self, idx: usize, var: usize) -> Option<usize> {
        if self.basis[idx][var] + 1 < self.exps[var] {
            Some(idx + self.strides[var])
        } else {
            None
        }
    }

    /// Index of `basis[idx] / X_var`, if `X_var` divides it.
    #[inline]
    pub fn unshift(&self, idx: usize, var: usize) -> Option<usize> {
        if self.basis[idx][var] > 0 {
            Some(idx - self.strides[var])
        } else {
            None
        }
    }

    pub fn var_name(&self, i: usize) -> String {
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        if self.c() <= 4 {
            NAMES[i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.length()];
        v[0] = 1 % self.field.p();
        v
    }

    /// Product of two ring elements in the monomial basis.
    pub fn mul_elements(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.length()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let e: Vec<u32> = self.basis[i].iter().zip(&self.basis[j]).map(|(u, v)| u + v).collect();
                if let Some(k) = self.index_of(&e) {
                    out[k] = f.add(out[k], f.mul(x, y));
                }
            }
        }
        out
    }

    pub fn pow_element(&self, a: &[u32], e: u32) -> Vec<u32> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul_elements(&acc, a);
        }
        acc
    }

    /// The element `Σ α_i X_i`.
    pub fn form_element(&self, g: &LinearForm) -> Vec<u32> {
        let mut v = vec![0u32; self.length()];
        for (i, &a) in g.coeffs().iter().enumerate() {
            if let Some(k) = self.shift(0, i) {
                v[k] = a;
            }
        }
        v
    }

    /// Smallest `r` with `ℓ_g^r = 0` in `A`.
    pub fn nilpotency_order(&self, g: &LinearForm) -> u32 {
        let lg = self.form_element(g);
        let mut acc = self.one();
        let mut r = 0;
        while acc.iter().any(|&x| x != 0) {
            acc = self.mul_elements(&acc, &lg);
            r += 1;
        }
        r
    }

    /// Multiplication by `X_var` on the monomial basis.
    pub fn multiplication_matrix(&self, var: usize) -> Mat {
        let n = self.length();
        let mut m = Mat::zeros(self.field, n, n);
        for idx in 0..n {
            if let Some(t) = self.shift(idx, var) {
                m.set(t, idx, 1);
            }
        }
        m
    }
}

fn parse_uint(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// A point of `P^{c-1}(F_p)`, stored as the coefficient vector of
/// `ℓ_α = Σ α_i X_i` normalized so its first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<u32>,
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl LinearForm {
    pub fn new(field: FieldSpec, coeffs: &[u32]) -> Result<Self> {
        let coeffs: Vec<u32> = coeffs.iter().map(|&a| a % field.p()).collect();
        let lead = coeffs
            .iter()
            .find(|&&a| a != 0)
            .copied()
            .ok_or_else(|| Error::Precondition("a linear form needs a nonzero coefficient".into()))?;
        let inv = field.inv(lead);
        Ok(LinearForm {
            coeffs: coeffs.iter().map(|&a| field.mul(a, inv)).collect(),
        })
    }

    /// The coordinate form `X_i`.
    pub fn variable(c: usize, i: usize) -> Self {
        let mut coeffs = vec![0; c];
        coeffs[i] = 1;
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_variable(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.coeffs.len()).filter(|&i| self.coeffs[i] != 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    /// Accepts a variable name (`x`, `y`, `z`, `w`, or `x<i>`), a coefficient
    /// list `a,b,...`, or a projective point `(a:b:...)`.
    pub fn parse(s: &str, ring: &CIRing) -> Result<Self> {
        let t = s.trim();
        let err = |msg: &str| Error::Parse {
            input: s.to_string(),
            pos: 0,
            msg: msg.to_string(),
        };
        if let Some(i) = (0..ring.c()).find(|&i| ring.var_name(i) == t) {
            return Ok(LinearForm::variable(ring.c(), i));
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split([',', ':']).collect();
        if parts.len() != ring.c() {
            return Err(err(&format!("expected a variable name or {} coefficients", ring.c())));
        }
        let coeffs = parts
            .iter()
            .map(|p| parse_uint(p.trim()).map(|v| (v % u64::from(ring.field().p())) as u32))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| err("coefficients must be unsigned integers"))?;
        LinearForm::new(ring.field(), &coeffs).map_err(|_| err("all coefficients are zero"))
    }
}

/// All normalized points of `P^{c-1}(F_p)` in lexicographic order of their
/// coefficient vectors.
pub fn enumerate_points(ring: &CIRing) -> Vec<LinearForm> {
    let c = ring.c();
    let p = u64::from(ring.field().p());
    let mut out = Vec::new();
    for lead in (0..c).rev() {
        let tail = (c - lead - 1) as u32;
        for n in 0..p.pow(tail) {
            let mut coeffs = vec![0u32; c];
            coeffs[lead] = 1;
            let mut rest = n;
            for slot in coeffs[lead + 1..].iter_mut().rev() {
                *slot = (rest % p) as u32;
                rest /= p;
            }
            out.push(LinearForm { coeffs });
        }
    }
    out
}

/// `A` as a module over itself.
pub fn regular_module(ring: &Arc<CIRing>) -> Module {
    let actions = (0..ring.c()).map(|i| ring.multiplication_matrix(i)).collect();
    Module::from_parts(ring.clone(), actions)
}

/// The subring `R = k[Y_1..Y_c]/(Y_i^{a_i/u_i})` with `Y_i ↦ X_i^{u_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: Arc<CIRing>,
    subring: Arc<CIRing>,
    u: Vec<u32>,
}

impl Embedding {
    /// The ring `A` being restricted from.
    pub fn source(&self) -> &Arc<CIRing> {
        &self.source
    }

    /// The subring `R`.
    pub fn subring(&self) -> &Arc<CIRing> {
        &self.subring
    }

    pub fn powers(&self) -> &[u32] {
        &self.u
    }

    /// Rank of `A` as a free `R`-module.
    pub fn rank(&self) -> usize {
        self.u.iter().map(|&u| u as usize).product()
    }
}

pub fn power_subring_embedding(ring: &Arc<CIRing>, u: &[u32]) -> Result<Embedding> {
    if u.len() != ring.c() {
        return Err(Error::InvalidEmbedding(format!(
            "{} powers given for {} variables",
            u.len(),
            ring.c()
        )));
    }
    let mut exps = Vec::with_capacity(u.len());
    for (i, (&ui, &ai)) in u.iter().zip(ring.exps()).enumerate() {
        if ui == 0 || ai % ui != 0 {
            return Err(Error::InvalidEmbedding(format!("u_{} = {} does not divide a_{} = {}", i + 1, ui, i + 1, ai)));
        }
        if ai / ui < 2 {
            return Err(Error::InvalidEmbedding(format!(
                "subring exponent a_{}/u_{} = {} is below 2",
                i + 1,
                i + 1,
                ai / ui
            )));
        }
        exps.push(ai / ui);
    }
    let subring = CIRing::new(u64::from(ring.field().p()), &exps)?;
    Ok(Embedding {
        source: ring.clone(),
        subring,
        u: u.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let r = CIRing::parse("p=5;exps=2,4").unwrap();
        assert_eq!(r.spec_string(), "p=5;exps=2,4");
        assert_eq!(r.length(), 8);
        assert_eq!(r.c(), 2);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match CIRing::parse("p=6;exps=2,2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match CIRing::parse("p=5;exps=2,x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        assert!(CIRing::parse("q=5;exps=2").is_err());
        assert!(CIRing::parse("p=5;exps=1,2").is_err());
        assert!(CIRing::parse("p=5").is_err());
    }

    #[test]
    fn lex_basis_and_shift() {
        let r = CIRing::new(5, &[2, 4]).unwrap();
        assert_eq!(r.basis()[0], vec![0, 0]);
        assert_eq!(r.basis()[1], vec![0, 1]);
        assert_eq!(r.basis()[4], vec![1, 0]);
        let xy3 = r.index_of(&[1, 3]).unwrap();
        assert_eq!(r.shift(xy3, 0), None);
        assert_eq!(r.shift(xy3, 1), None);
        assert_eq!(r.shift(0, 1), Some(1));
    }

    #[test]
    fn regular_module_dimensions() {
        let a = CIRing::new(5, &[2, 2]).unwrap();
        assert_eq!(regular_module(&a).dim(), 4);
        let b = CIRing::new(5, &[2, 4]).unwrap();
        let m = regular_module(&b);
        assert_eq!(m.dim(), 8);
        let xy3 = b.index_of(&[1, 3]).unwrap();
        let mut e = vec![0; 8];
        e[xy3] = 1;
        assert!(m.action(0).mul_vec(&e).iter().all(|&x| x == 0));
        let c = CIRing::new(5, &[3, 4]).unwrap();
        assert_eq!(c.length(), 12);
        assert_eq!(c.nilpotency_order(&LinearForm::variable(2, 0)), 3);
    }

    #[test]
    fn point_counts() {
        let r = CIRing::new(5, &[2, 2]).unwrap();
        let pts = enumerate_points(&r);
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0].coeffs(), &[0, 1]);
        assert_eq!(pts[1].coeffs(), &[1, 0]);
        assert_eq!(pts[5].coeffs(), &[1, 4]);
        assert_eq!(enumerate_points(&CIRing::new(7, &[3]).unwrap()).len(), 1);
        let fano = enumerate_points(&CIRing::new(2, &[2, 2, 2]).unwrap());
        assert_eq!(fano.len(), 7);
        let mut dedup = fano.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 7);
    }

    #[test]
    fn linear_form_normalization() {
        let f = FieldSpec::new(5).unwrap();
        let a = LinearForm::new(f, &[0, 3]).unwrap();
        assert_eq!(a.coeffs(), &[0, 1]);
        let b = LinearForm::new(f, &[2, 4]).unwrap();
        assert_eq!(b, LinearForm::new(f, &[1, 2]).unwrap());
        assert!(LinearForm::new(f, &[0, 0]).is_err());
        let r = CIRing::new(5, &[2, 4]).unwrap();
        assert_eq!(LinearForm::parse("y", &r).unwrap(), LinearForm::variable(2, 1));
        assert_eq!(LinearForm::parse("(2:4)", &r).unwrap(), b);
    }

    #[test]
    fn embedding_bookkeeping() {
        let a = CIRing::new(7, &[6, 9]).unwrap();
        let e = power_subring_embedding(&a, &[2, 3]).unwrap();
        assert_eq!(e.subring().exps(), &[3, 3]);
        assert_eq!(e.rank(), 6);
        assert_eq!(a.length(), e.rank() * e.subring().length());
        let id = power_subring_embedding(&a, &[1, 1]).unwrap();
        assert_eq!(id.subring(), &a);
        let b = CIRing::new(5, &[2, 4]).unwrap();
        assert!(matches!(power_subring_embedding(&b, &[2, 2]), Err(Error::InvalidEmbedding(_))));
        assert!(matches!(power_subring_embedding(&b, &[1, 3]), Err(Error::InvalidEmbedding(_))));
    }
}
