//! Independent reference implementations used as test oracles.
//!
//! Nothing here touches the engine's matrix code: vectors are plain
//! `Vec<u64>`, elimination is a separate textbook routine, and modules are
//! read out of the engine only as raw action matrices.

#![allow(dead_code)]

use cihomol_core::Module;

pub type V = Vec<u64>;

pub fn inv(a: u64, p: u64) -> u64 {
    (1..p).find(|&x| a * x % p == 1).expect("invertible")
}

/// Row echelon form of `rows` in place; returns the pivot columns.
pub fn echelon(rows: &mut Vec<V>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] % p != 0) else {
            continue;
        };
        rows.swap(r, k);
        let iv = inv(rows[r][c] % p, p);
        for x in rows[r].iter_mut() {
            *x = *x * iv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] % p != 0 {
                let f = rows[k][c] % p;
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[V], p: u64) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m, p).len()
}

pub fn in_span(basis: &[V], v: &V, p: u64) -> bool {
    let mut with = basis.to_vec();
    with.push(v.clone());
    rank(&with, p) == rank(basis, p)
}

/// Basis of `{x : Σ x_j cols[j] = 0}` where `cols` are vectors of length `n`.
pub fn null_space(cols: &[V], n: usize, p: u64) -> Vec<V> {
    let m = cols.len();
    let mut rows: Vec<V> = (0..n).map(|i| (0..m).map(|j| cols[j][i]).collect()).collect();
    let piv = echelon(&mut rows, p);
    let free: Vec<usize> = (0..m).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u64; m];
            x[fc] = 1;
            for (r, &pc) in piv.iter().enumerate() {
                x[pc] = (p - rows[r][fc]) % p;
            }
            x
        })
        .collect()
}

/// Coordinates of `v` in the (independent) list `basis`.
pub fn coordinates(basis: &[V], v: &V, p: u64) -> V {
    let n = v.len();
    let mut cols = basis.to_vec();
    cols.push(v.iter().map(|&x| (p - x % p) % p).collect());
    let ns = null_space(&cols, n, p);
    let sol = ns.iter().find(|x| x[basis.len()] != 0).expect("vector lies in the span");
    let s = inv(sol[basis.len()], p);
    sol[..basis.len()].iter().map(|&x| x * s % p).collect()
}

/// A module as raw data: `acts[i][r][c]`.
#[derive(Clone, Debug)]
pub struct Raw {
    pub p: u64,
    pub exps: Vec<u32>,
    pub dim: usize,
    pub acts: Vec<Vec<V>>,
}

impl Raw {
    pub fn of(m: &Module) -> Raw {
        let d = m.dim();
        Raw {
            p: u64::from(m.ring().field().p()),
            exps: m.ring().exps().to_vec(),
            dim: d,
            acts: m
                .actions()
                .iter()
                .map(|a| (0..d).map(|r| (0..d).map(|c| u64::from(a.get(r, c))).collect()).collect())
                .collect(),
        }
    }

    pub fn apply(&self, i: usize, v: &V) -> V {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.acts[i][r][c] * v[c]).sum::<u64>() % self.p)
            .collect()
    }

    /// All exponent vectors of the monomial basis.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &a in &self.exps {
            out = out
                .into_iter()
                .flat_map(|e: Vec<u32>| {
                    (0..a).map(move |k| {
                        let mut f = e.clone();
                        f.push(k);
                        f
                    })
                })
                .collect();
        }
        out
    }

    pub fn apply_monomial(&self, e: &[u32], v: &V) -> V {
        let mut w = v.clone();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                w = self.apply(i, &w);
            }
        }
        w
    }
}

/// One syzygy step: minimal generators chosen greedily modulo `m M`, then
/// the kernel of the cover with its induced actions.
pub fn syzygy_step(m: &Raw) -> (usize, Raw) {
    let p = m.p;
    let mut radical: Vec<V> = Vec::new();
    for i in 0..m.exps.len() {
        for c in 0..m.dim {
            let mut e = vec![0; m.dim];
            e[c] = 1;
            radical.push(m.apply(i, &e));
        }
    }
    let mut span = radical.clone();
    let mut gens = Vec::new();
    for c in 0..m.dim {
        let mut e = vec![0; m.dim];
        e[c] = 1;
        if !in_span(&span, &e, p) {
            span.push(e.clone());
            gens.push(e);
        }
    }
    let mons = m.monomials();
    let len = mons.len();
    let cols: Vec<V> = gens
        .iter()
        .flat_map(|g| mons.iter().map(move |e| m.apply_monomial(e, g)))
        .collect();
    let ker = null_space(&cols, m.dim, p);
    let shift = |i: usize, x: &V| -> V {
        let mut out = vec![0u64; x.len()];
        for (pos, &val) in x.iter().enumerate() {
            if val == 0 {
                continue;
            }
            let (blk, idx) = (pos / len, pos % len);
            let mut e = mons[idx].clone();
            e[i] += 1;
            if e[i] < m.exps[i] {
                let t = mons.iter().position(|f| *f == e).expect("monomial");
                out[blk * len + t] = val;
            }
        }
        out
    };
    let k = ker.len();
    let acts = (0..m.exps.len())
        .map(|i| {
            let images: Vec<V> = ker.iter().map(|b| coordinates(&ker, &shift(i, b), p)).collect();
            (0..k).map(|r| (0..k).map(|c| images[c][r]).collect()).collect()
        })
        .collect();
    (
        gens.len(),
        Raw {
            p,
            exps: m.exps.clone(),
            dim: k,
            acts,
        },
    )
}

pub fn oracle_betti(m: &Module, n: usize) -> Vec<usize> {
    let mut cur = Raw::of(m);
    let mut out = Vec::new();
    for _ in 0..=n {
        let (b, next) = syzygy_step(&cur);
        out.push(b);
        cur = next;
    }
    out
}

fn kron_terms(m: &Raw, n: &Raw, i: usize) -> Vec<V> {
    // Columns of (A_i ⊗ I - I ⊗ B_i) acting on m ⊗ n, index a * dn + b.
    let (dm, dn, p) = (m.dim, n.dim, m.p);
    let mut cols = Vec::new();
    for a in 0..dm {
        for b in 0..dn {
            let mut v = vec![0u64; dm * dn];
            for r in 0..dm {
                v[r * dn + b] = (v[r * dn + b] + m.acts[i][r][a]) % p;
            }
            for s in 0..dn {
                v[a * dn + s] = (v[a * dn + s] + p - n.acts[i][s][b]) % p;
            }
            cols.push(v);
        }
    }
    cols
}

/// `dim (M ⊗_k N) / (X_i m ⊗ n - m ⊗ X_i n)`.
pub fn naive_tensor_dim(m: &Module, n: &Module) -> usize {
    let (rm, rn) = (Raw::of(m), Raw::of(n));
    let cols: Vec<V> = (0..rm.exps.len()).flat_map(|i| kron_terms(&rm, &rn, i)).collect();
    rm.dim * rn.dim - rank(&cols, rm.p)
}

/// `dim {φ : φ A_i = B_i φ}` for `φ : M → N`.
pub fn naive_hom_dim(m: &Module, n: &Module) -> usize {
    let (rm, rn) = (Raw::of(m), Raw::of(n));
    let (dm, dn, p) = (rm.dim, rn.dim, rm.p);
    // Unknown φ[r][c] at index r * dm + c; equation (φA - Bφ)[r][c] = 0.
    let mut eqs = Vec::new();
    for i in 0..rm.exps.len() {
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![0u64; dn * dm];
                for k in 0..dm {
                    row[r * dm + k] = (row[r * dm + k] + rm.acts[i][k][c]) % p;
                }
                for k in 0..dn {
                    row[k * dm + c] = (row[k * dm + c] + p - rn.acts[i][r][k]) % p;
                }
                eqs.push(row);
            }
        }
    }
    dn * dm - rank(&eqs, p)
}
