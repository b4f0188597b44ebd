use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::{iso_test, Module};

use super::resolution::resolve_shared;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Complexity {
    /// Projective, hence complexity 0.
    Free,
    /// `Ω^{start+period} M ≅ Ω^{start} M` by an explicit isomorphism, so complexity ≤ 1.
    PeriodicFrom { start: usize, period: usize },
    /// Betti numbers strictly increase over the second half of the window.
    UnboundedEvidence,
    Undetermined,
}

impl Complexity {
    /// Certified complexity at most one.
    pub fn is_certified_cx_le1(&self) -> bool {
        matches!(self, Complexity::Free | Complexity::PeriodicFrom { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityVerdict {
    pub verdict: Complexity,
    pub betti: Vec<usize>,
}

pub(crate) fn derive_seed(seed: u64, a: usize, b: usize) -> u64 {
    seed ^ (a as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (b as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
}

/// Searches for a syzygy periodicity of period 1 or 2 within `max_deg`.
pub fn classify_complexity(m: &Module, max_deg: usize, trials: u32, seed: u64) -> Result<ComplexityVerdict> {
    if max_deg < 2 {
        return Err(Error::Precondition("max degree must be at least 2".into()));
    }
    let res = resolve_shared(m, max_deg);
    let betti = res.betti()[..=max_deg].to_vec();
    if m.is_free().is_some() {
        return Ok(ComplexityVerdict {
            verdict: Complexity::Free,
            betti,
        });
    }
    for start in 0..=max_deg - 2 {
        for period in [1, 2] {
            let (a, b) = (res.syzygy(start + period), res.syzygy(start));
            if a.dim() != b.dim() {
                continue;
            }
            if iso_test(a, b, trials, derive_seed(seed, start, period))?.is_iso() {
                return Ok(ComplexityVerdict {
                    verdict: Complexity::PeriodicFrom { start, period },
                    betti,
                });
            }
        }
    }
    let tail = &betti[max_deg / 2..];
    let verdict = if tail.windows(2).all(|w| w[0] < w[1]) {
        Complexity::UnboundedEvidence
    } else {
        Complexity::Undetermined
    };
    Ok(ComplexityVerdict { verdict, betti })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::quotient_by_form_power;
    use crate::ring::{regular_module, CIRing, LinearForm};

    #[test]
    fn basic_classifications() {
        let r = CIRing::new(5, &[2, 4]).unwrap();
        let free = classify_complexity(&regular_module(&r), 4, 8, 0).unwrap();
        assert_eq!(free.verdict, Complexity::Free);
        let h = quotient_by_form_power(&r, &LinearForm::variable(2, 1), 1).unwrap();
        let v = classify_complexity(&h, 4, 8, 0).unwrap();
        assert_eq!(v.verdict, Complexity::PeriodicFrom { start: 0, period: 2 });
        let k = Module::residue_field(&r);
        let v = classify_complexity(&k, 6, 8, 0).unwrap();
        assert_eq!(v.verdict, Complexity::UnboundedEvidence);
        assert_eq!(v.betti, vec![1, 2, 3, 4, 5, 6, 7]);
        assert!(classify_complexity(&k, 1, 8, 0).is_err());
    }

    #[test]
    fn period_one_for_square_zero_form() {
        // Over (x^2, y^2), ℓ = x has ℓ^2 = 0, so A/(x) has Ω ≅ A/(x).
        let r = CIRing::new(3, &[2, 2]).unwrap();
        let h = quotient_by_form_power(&r, &LinearForm::variable(2, 0), 1).unwrap();
        let v = classify_complexity(&h, 3, 8, 0).unwrap();
        assert_eq!(v.verdict, Complexity::PeriodicFrom { start: 0, period: 1 });
    }
}
