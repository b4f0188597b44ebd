use crate::error::Result;
use crate::exactalg::{Mat, Subspace};
use crate::module::{ElementActions, Module};

use super::resolution::{resolve_shared, Resolution};

/// `d_i ⊗ N : F_i ⊗ N → F_{i-1} ⊗ N` for `i ≥ 1`, as a `(β_{i-1} dim N) × (β_i dim N)` matrix.
pub(crate) fn tensored_differential(res: &Resolution, i: usize, acts: &mut ElementActions<'_>, n: &Module) -> Mat {
    let ring = n.ring();
    let len = ring.length();
    let dn = n.dim();
    let rel = res.relations(i - 1);
    let (rows, cols) = (res.generators(i - 1).len(), res.generators(i).len());
    let mut out = Mat::zeros(ring.field(), rows * dn, cols * dn);
    for k in 0..cols {
        let col = rel.column(k);
        for j in 0..rows {
            let elem = &col[j * len..(j + 1) * len];
            if elem.iter().any(|&x| x != 0) {
                out.set_block(j * dn, k * dn, &acts.act(elem));
            }
        }
    }
    out
}

/// `M ⊗_A N`, presented as the cokernel of `d_1 ⊗ N` on `N^{β_0}`.
pub fn tensor(m: &Module, n: &Module) -> Result<Module> {
    m.same_ring(n)?;
    let res = resolve_shared(m, 1);
    let mut acts = ElementActions::new(n);
    let d1 = tensored_differential(&res, 1, &mut acts, n);
    let ambient = n.direct_power(res.generators(0).len());
    Ok(ambient.quotient(&Subspace::span_of_columns(&d1)))
}

/// `dim Tor_i(M, N)` for `i = 0..=upto`.
pub fn tor_dims(m: &Module, n: &Module, upto: usize) -> Result<Vec<usize>> {
    m.same_ring(n)?;
    let res = resolve_shared(m, upto + 1);
    let betti = res.betti();
    let mut acts = ElementActions::new(n);
    // ranks[i] = rank(d_i ⊗ N), with d_0 = 0.
    let mut ranks = vec![0usize; upto + 2];
    for (i, r) in ranks.iter_mut().enumerate().skip(1) {
        *r = tensored_differential(&res, i, &mut acts, n).rank();
    }
    Ok((0..=upto).map(|i| betti[i] * n.dim() - ranks[i] - ranks[i + 1]).collect())
}

/// `Tor_i(M, N)` as a module: `ker(d_i ⊗ N) / im(d_{i+1} ⊗ N)` inside `N^{β_i}`.
pub fn tor(m: &Module, n: &Module, i: usize) -> Result<Module> {
    m.same_ring(n)?;
    let res = resolve_shared(m, i + 1);
    let mut acts = ElementActions::new(n);
    let ambient = n.direct_power(res.generators(i).len());
    let ker = if i == 0 {
        Subspace::kernel_of(&Mat::zeros(n.ring().field(), 0, ambient.dim()))
    } else {
        Subspace::kernel_of(&tensored_differential(&res, i, &mut acts, n))
    };
    let z = ambient.submodule(&ker);
    let im = tensored_differential(&res, i + 1, &mut acts, n);
    // Express the boundaries in the coordinates of the cycles.
    let coords: Vec<Vec<u32>> = (0..im.cols())
        .map(|c| {
            let v = im.column(c);
            debug_assert!(ker.contains(&v), "boundaries are cycles");
            ker.coords(&v)
        })
        .collect();
    let b = Mat::from_columns(n.ring().field(), ker.dim(), &coords);
    Ok(z.quotient(&Subspace::span_of_columns(&b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::quotient_by_form_power;
    use crate::ring::{regular_module, CIRing, LinearForm};

    #[test]
    fn tensor_with_unit_and_residue_field() {
        let r = CIRing::new(5, &[2, 4]).unwrap();
        let a = regular_module(&r);
        let k = Module::residue_field(&r);
        let h = quotient_by_form_power(&r, &LinearForm::variable(2, 1), 2).unwrap();
        assert_eq!(tensor(&a, &h).unwrap().dim(), h.dim());
        assert_eq!(tensor(&h, &a).unwrap().dim(), h.dim());
        assert_eq!(tensor(&h, &k).unwrap().dim(), 1);
    }

    #[test]
    fn tor_of_residue_field_is_betti() {
        let r = CIRing::new(3, &[2, 2]).unwrap();
        let k = Module::residue_field(&r);
        assert_eq!(tor_dims(&k, &k, 4).unwrap(), vec![1, 2, 3, 4, 5]);
        for i in 0..3 {
            assert_eq!(tor(&k, &k, i).unwrap().dim(), i + 1);
        }
    }

    #[test]
    fn free_modules_have_no_higher_tor() {
        let r = CIRing::new(5, &[2, 4]).unwrap();
        let a = regular_module(&r);
        let k = Module::residue_field(&r);
        assert_eq!(tor_dims(&a, &k, 3).unwrap(), vec![1, 0, 0, 0]);
    }
}
