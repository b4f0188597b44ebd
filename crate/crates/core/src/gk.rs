//! Classes in `G_0` of the stable category, identified with `Z/ℓ(A)` via length.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::Module;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GClass {
    pub value: usize,
    pub modulus: usize,
}

impl GClass {
    pub fn add(self, other: GClass) -> GClass {
        debug_assert_eq!(self.modulus, other.modulus);
        GClass {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn neg(self) -> GClass {
        GClass {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

pub fn gclass(m: &Module) -> GClass {
    let modulus = m.ring().length();
    GClass {
        value: m.length() % modulus,
        modulus,
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The subgroup `gZ/ℓ(A)Z` generated by the classes of `family`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSubgroup {
    pub generator: usize,
    pub index: usize,
    pub modulus: usize,
}

pub fn subgroup_of_lengths(family: &[Module]) -> Result<LengthSubgroup> {
    let Some(first) = family.first() else {
        return Err(Error::Precondition("an empty family has no ring; use subgroup_over".into()));
    };
    subgroup_over(first.ring().length(), family)
}

/// Like [`subgroup_of_lengths`] with the modulus given, so the empty family
/// yields the zero subgroup.
pub fn subgroup_over(modulus: usize, family: &[Module]) -> Result<LengthSubgroup> {
    if let Some(first) = family.first() {
        for m in family {
            first.same_ring(m)?;
        }
        if first.ring().length() != modulus {
            return Err(Error::Precondition(format!(
                "modulus {modulus} differs from the ring length {}",
                first.ring().length()
            )));
        }
    }
    let generator = family.iter().fold(modulus, |g, m| gcd(g, m.length()));
    Ok(LengthSubgroup {
        generator,
        index: generator,
        modulus,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityRow {
    pub hash: String,
    pub length: usize,
    pub class: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub divisor: usize,
    pub rows: Vec<DivisibilityRow>,
    pub pass: bool,
    /// Hashes of the modules whose length is not divisible.
    pub failures: Vec<String>,
}

impl DivisibilityReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("hash,length,class,verdict\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.hash,
                r.length,
                r.class,
                if r.pass { "pass" } else { "fail" }
            ));
        }
        out
    }
}

pub fn divisibility_report(family: &[Module], d: usize) -> Result<DivisibilityReport> {
    if d < 2 {
        return Err(Error::Precondition(format!("divisor {d} must be at least 2")));
    }
    let rows: Vec<DivisibilityRow> = family
        .iter()
        .map(|m| DivisibilityRow {
            hash: m.content_hash().to_string(),
            length: m.length(),
            class: gclass(m).value,
            pass: m.length() % d == 0,
        })
        .collect();
    let failures: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| r.hash.clone()).collect();
    Ok(DivisibilityReport {
        divisor: d,
        pass: failures.is_empty(),
        rows,
        failures,
    })
}
