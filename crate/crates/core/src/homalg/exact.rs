use crate::error::{Error, Result};
use crate::exactalg::{Mat, Subspace};
use crate::module::{Module, ModuleMap};

use super::resolution::resolve_shared;

/// `0 → N → E → M → 0` obtained by pushing `0 → ΩM → F_0 → M → 0` along `φ`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

/// Pushout `E = (F_0 ⊕ N) / {(ι w, -φ w) : w ∈ ΩM}` for `φ : ΩM → N`.
///
/// `φ.src()` must be the syzygy module computed by this engine for `m`.
pub fn extension(m: &Module, phi: &ModuleMap) -> Result<Extension> {
    m.same_ring(phi.dst())?;
    let res = resolve_shared(m, 1);
    let omega = res.syzygy(1);
    if phi.src() != omega {
        return Err(Error::SourceMismatch(format!(
            "map source has dimension {}, the syzygy of the given module has dimension {}",
            phi.src().dim(),
            omega.dim()
        )));
    }
    let ring = m.ring();
    let f = ring.field();
    let n = phi.dst();
    let dn = n.dim();
    let free = res.free_module(0);
    let dim_f = free.dim();
    let ambient = free.direct_sum(n)?;
    let k = res.kernel_rows(0);
    let neg_phi = phi.matrix().scale(f.neg(1));
    let rows: Vec<Vec<u32>> = (0..k.rows())
        .map(|s| {
            let mut v = k.row(s).to_vec();
            v.extend(neg_phi.column(s));
            v
        })
        .collect();
    let rel_mat = if rows.is_empty() {
        Mat::zeros(f, 0, dim_f + dn)
    } else {
        Mat::from_rows(f, &rows)?
    };
    let rel = Subspace::span_of_rows(&rel_mat);
    let e = ambient.quotient(&rel);
    let comp = rel.complement_cols();

    let mut inc = Mat::zeros(f, comp.len(), dn);
    for t in 0..dn {
        let mut v = vec![0u32; dim_f + dn];
        v[dim_f + t] = 1;
        let r = rel.residual(&v);
        for (row, &c) in comp.iter().enumerate() {
            inc.set(row, t, r[c]);
        }
    }
    let cover = res.cover_matrix(0);
    let mut proj = Mat::zeros(f, m.dim(), comp.len());
    for (col, &c) in comp.iter().enumerate() {
        if c < dim_f {
            for r in 0..m.dim() {
                proj.set(r, col, cover.get(r, c));
            }
        }
    }
    Ok(Extension {
        inclusion: ModuleMap::new(n.clone(), e.clone(), inc)?,
        projection: ModuleMap::new(e.clone(), m.clone(), proj)?,
        module: e,
    })
}

/// Exactness of `0 → M_0 → M_1 → ... → M_k → 0` given the maps in order.
pub fn is_exact(seq: &[ModuleMap]) -> Result<bool> {
    for t in 1..seq.len() {
        if seq[t - 1].dst() != seq[t].src() {
            return Err(Error::NonComposable(t - 1, t));
        }
    }
    let (Some(first), Some(last)) = (seq.first(), seq.last()) else {
        return Ok(true);
    };
    if !first.is_injective() || !last.is_surjective() {
        return Ok(false);
    }
    for t in 1..seq.len() {
        let (a, b) = (&seq[t - 1], &seq[t]);
        if !b.matrix().mul(a.matrix()).is_zero() || a.rank() + b.rank() != a.dst().dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{hom_space, quotient_by_form_power};
    use crate::ring::{CIRing, LinearForm};

    #[test]
    fn zero_map_gives_split_extension() {
        let r = CIRing::new(5, &[2, 4]).unwrap();
        let h = quotient_by_form_power(&r, &LinearForm::variable(2, 1), 1).unwrap();
        let k = Module::residue_field(&r);
        let omega = resolve_shared(&h, 1).syzygy(1).clone();
        let ext = extension(&h, &ModuleMap::zero(&omega, &k).unwrap()).unwrap();
        assert_eq!(ext.module.dim(), 3);
        assert!(is_exact(&[ext.inclusion.clone(), ext.projection.clone()]).unwrap());
        assert_eq!(ext.module.min_generators(), 2);
    }

    #[test]
    fn every_hom_basis_element_extends() {
        let r = CIRing::new(3, &[2, 2]).unwrap();
        let k = Module::residue_field(&r);
        let omega = resolve_shared(&k, 1).syzygy(1).clone();
        for phi in hom_space(&omega, &k).unwrap() {
            let ext = extension(&k, &phi).unwrap();
            assert_eq!(ext.module.dim(), 2);
            assert!(is_exact(&[ext.inclusion, ext.projection]).unwrap());
        }
    }

    #[test]
    fn source_mismatch_is_reported() {
        let r = CIRing::new(5, &[2, 2]).unwrap();
        let k = Module::residue_field(&r);
        let phi = ModuleMap::identity(&k);
        assert!(matches!(extension(&k, &phi), Err(Error::SourceMismatch(_))));
    }

    #[test]
    fn non_composable_sequences() {
        let r = CIRing::new(5, &[2, 2]).unwrap();
        let k = Module::residue_field(&r);
        let a = crate::ring::regular_module(&r);
        let err = is_exact(&[ModuleMap::identity(&k), ModuleMap::identity(&a)]).unwrap_err();
        assert!(matches!(err, Error::NonComposable(0, 1)));
        assert!(is_exact(&[ModuleMap::identity(&k)]).unwrap());
    }
}
