//! Walk complexes on a window of A_∞: right multiplication by
//! d_r = Σ_i 1⊗…⊗d⊗…⊗1, with d the sum of all edge identities.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexReport, ModuleComplex};
use crate::error::{invalid, Result};
use crate::schiver::{Letter, OddForm, Quiver, SchiverDouble};

/// Which side of 𝒟 the walk runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WalkAlgebra {
    Schiver,
    Double,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WalkReport {
    pub algebra: WalkAlgebra,
    pub n: usize,
    pub r: usize,
    pub window: usize,
    pub characteristic: u64,
    /// d_r² = 0 on the whole truncated algebra
    pub d_squared_full: bool,
    /// the complex on basis elements with no vertex letter at the window boundary
    pub complex: ComplexReport,
}

impl WalkReport {
    pub fn passed(&self) -> bool {
        self.d_squared_full && self.complex.d_squared_zero && self.complex.rank_accounting()
    }
}

fn window_double(n: usize, r: usize, window: usize, characteristic: u64) -> Result<SchiverDouble> {
    if window <= r {
        return invalid(format!(
            "a window of {window} vertices is too small for degree {r}"
        ));
    }
    SchiverDouble::with_form(
        Quiver::linear(window - 1),
        n,
        r,
        characteristic,
        OddForm::Exterior,
    )
}

/// d_r in the orbit basis of S_Q(n, r): every sorted word with one diagonal
/// edge letter and r−1 diagonal vertex letters, coefficient 1.
fn walk_element(d: &SchiverDouble, r: usize) -> Vec<usize> {
    let q = &d.quiver;
    d.s.bialgebra.pieces[r]
        .iter()
        .copied()
        .filter(|&u| {
            let mut edges = 0;
            let diagonal = d.s.words[u].iter().all(|&x| match q.decode(d.n, x) {
                Letter::Vertex { i, j, .. } => i == j,
                Letter::Edge { i, j, .. } => {
                    edges += 1;
                    i == j
                }
            });
            diagonal && edges == 1
        })
        .collect()
}

/// Vertex letters at the boundary of the window: on the S side d turns e_v
/// into the edge leaving v, on the dual side it turns e* into t(e)*, so the
/// boundary is the vertex with no outgoing (resp. incoming) edge.
fn touches_boundary(q: &Quiver, n: usize, word: &[usize], dual: bool) -> bool {
    word.iter().any(|&x| match q.decode(n, x) {
        Letter::Vertex { v, .. } => !q
            .edges
            .iter()
            .any(|&(s, t)| if dual { t == v } else { s == v }),
        Letter::Edge { .. } => false,
    })
}

fn edge_count(q: &Quiver, n: usize, word: &[usize]) -> usize {
    word.iter()
        .filter(|&&x| matches!(q.decode(n, x), Letter::Edge { .. }))
        .count()
}

/// Assemble the complex on `keep` graded by `pos`, given the right action of d_r.
fn assemble(
    name: String,
    characteristic: u64,
    keep: &[usize],
    pos: impl Fn(usize) -> usize,
    label: impl Fn(usize) -> String,
    act: impl Fn(usize) -> HashMap<usize, i64>,
) -> Result<ModuleComplex> {
    let top = keep.iter().map(|&u| pos(u)).max().unwrap_or(0);
    let mut terms: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for &u in keep {
        terms[pos(u)].push(u);
    }
    let slot: HashMap<usize, usize> = terms
        .iter()
        .flat_map(|t| t.iter().enumerate().map(|(i, &u)| (u, i)))
        .collect();
    let mut maps = Vec::with_capacity(top);
    for k in 0..top {
        let mut m = vec![vec![0i64; terms[k + 1].len()]; terms[k].len()];
        for (i, &u) in terms[k].iter().enumerate() {
            for (v, c) in act(u) {
                match slot.get(&v) {
                    Some(&j) if pos(v) == k + 1 => m[i][j] += c,
                    _ => return invalid(format!("d_r moves {} out of the subcomplex", label(u))),
                }
            }
        }
        maps.push(m);
    }
    let bases = terms
        .iter()
        .map(|t| t.iter().map(|&u| label(u)).collect())
        .collect();
    ModuleComplex::new(name, characteristic, 0, bases, maps)
}

/// The walk complex on S_{A_∞}(n, r) or 𝒟_{A_∞}(n, r), truncated to
/// `window` consecutive vertices.
///
/// Terms are graded by the number of edge letters (S) or by the total degree
/// Σb + 2Σc + Σd (𝒟). Exactness is measured on the span of basis elements
/// with no vertex letter at the window boundary, which is closed under d_r
/// and agrees with the A_∞ complex in every position.
pub fn walk_complex(
    algebra: WalkAlgebra,
    n: usize,
    r: usize,
    window: usize,
    characteristic: u64,
) -> Result<WalkReport> {
    let d = window_double(n, r, window, characteristic)?;
    let q = d.quiver.clone();
    let dr = walk_element(&d, r);
    let red = |c: i64| {
        if characteristic == 0 {
            c
        } else {
            c.rem_euclid(characteristic as i64)
        }
    };

    let (full_sq, complex) = match algebra {
        WalkAlgebra::Schiver => {
            let b = &d.s.bialgebra;
            let act = |u: usize| {
                let mut out: HashMap<usize, i64> = HashMap::new();
                for &w in &dr {
                    for &(k, c) in b.mul(u, w) {
                        *out.entry(k).or_default() += c;
                    }
                }
                out.retain(|_, c| red(*c) != 0);
                out
            };
            let all = &b.pieces[r];
            let sq = all.iter().all(|&u| {
                let mut out: HashMap<usize, i64> = HashMap::new();
                for (v, c) in act(u) {
                    for (t, e) in act(v) {
                        *out.entry(t).or_default() += c * e;
                    }
                }
                out.values().all(|&c| red(c) == 0)
            });
            let keep: Vec<usize> = all
                .iter()
                .copied()
                .filter(|&u| !touches_boundary(&q, n, &d.s.words[u], false))
                .collect();
            let complex = assemble(
                format!("walk S n={n} r={r} window={window}"),
                characteristic,
                &keep,
                |u| edge_count(&q, n, &d.s.words[u]),
                |u| b.labels[u].clone(),
                act,
            )?;
            (sq, complex)
        }
        WalkAlgebra::Double => {
            let piece = d.degree(r)?;
            let eps = d.sop.bialgebra.pieces[0][0];
            let act = |i: usize| {
                let mut out: HashMap<usize, i64> = HashMap::new();
                for &w in &dr {
                    for (p, c) in d.data.pair_product(piece.basis[i], (w, eps)) {
                        *out.entry(piece.index[&p]).or_default() += c;
                    }
                }
                out.retain(|_, c| red(*c) != 0);
                out
            };
            let sq = (0..piece.dim()).all(|i| {
                let mut out: HashMap<usize, i64> = HashMap::new();
                for (v, c) in act(i) {
                    for (t, e) in act(v) {
                        *out.entry(t).or_default() += c * e;
                    }
                }
                out.values().all(|&c| red(c) == 0)
            });
            let keep: Vec<usize> = (0..piece.dim())
                .filter(|&i| {
                    let (a, al) = piece.basis[i];
                    !touches_boundary(&q, n, &d.s.words[a], false)
                        && !touches_boundary(&q, n, &d.sop.words[al], true)
                })
                .collect();
            let complex = assemble(
                format!("walk D n={n} r={r} window={window}"),
                characteristic,
                &keep,
                |i| d.total_degree(piece.basis[i]),
                |i| piece.label(i),
                act,
            )?;
            (sq, complex)
        }
    };
    Ok(WalkReport {
        algebra,
        n,
        r,
        window,
        characteristic,
        d_squared_full: full_sq,
        complex: complex.report()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_window_is_rejected() {
        assert!(walk_complex(WalkAlgebra::Schiver, 1, 2, 2, 0).is_err());
    }

    #[test]
    fn schiver_walks_are_exact() {
        for (n, r) in [(1, 1), (1, 2), (2, 2)] {
            for c in [0, 2] {
                let rep = walk_complex(WalkAlgebra::Schiver, n, r, r + 2, c).unwrap();
                assert!(rep.passed(), "{rep:?}");
            }
        }
    }

    #[test]
    fn double_walks_are_exact() {
        for (n, r) in [(1, 1), (1, 2), (2, 2)] {
            for c in [0, 2] {
                let rep = walk_complex(WalkAlgebra::Double, n, r, r + 1, c).unwrap();
                assert!(rep.passed() && rep.complex.is_exact(), "{rep:?}");
            }
        }
        let rep = walk_complex(WalkAlgebra::Double, 1, 1, 2, 0).unwrap();
        assert_eq!(rep.complex.dims, vec![1, 2, 1]);
    }
}
