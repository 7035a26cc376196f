//! The corner ξ_ω 𝒟(n,r) ξ_ω of the classical double and its comparison with
//! the wreath product k[x]/(x²) ≀ Σ_r.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::StructureAlgebra;
use crate::doubles::{transpose_letters, Check, DoubleData};
use crate::error::{invalid, Error, Result};
use crate::exactlin::{integer_rank, FieldSpec, PrimeField, Rationals};
use crate::superalg::{SchurSuperBialgebra, Sparse, SuperAlgebra};

type Pair = (usize, usize);
type Vector = HashMap<Pair, i64>;

/// Basis element (a_1..a_r; σ): letter indices and the permutation in one-line form.
pub type WreathElement = (Vec<usize>, Vec<usize>);

/// A ≀ Σ_r on the basis (a_1,…,a_r; σ), with
/// (a; σ)(b; τ) = (a_1 b_{σ⁻¹(1)}, …, a_r b_{σ⁻¹(r)}; σ∘τ).
/// `letters` is a commutative even algebra A given by structure constants.
pub fn wreath_product(
    letters: &SuperAlgebra,
    r: usize,
) -> Result<(StructureAlgebra, Vec<WreathElement>)> {
    if letters.parity.iter().any(|&p| p != 0) {
        return invalid("the wreath product is built for purely even algebras");
    }
    let perms: Vec<Vec<usize>> = (0..r).permutations(r).collect();
    let words: Vec<Vec<usize>> = (0..r)
        .map(|_| 0..letters.dim())
        .multi_cartesian_product()
        .collect();
    let words = if r == 0 { vec![Vec::new()] } else { words };
    let basis: Vec<(Vec<usize>, Vec<usize>)> = words
        .iter()
        .cartesian_product(perms.iter())
        .map(|(w, s)| (w.clone(), s.clone()))
        .collect();
    let index: HashMap<(Vec<usize>, Vec<usize>), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    let labels = basis
        .iter()
        .map(|(w, s)| {
            let w = w.iter().map(|&x| letters.labels[x].as_str()).join("⊗");
            let s = s.iter().map(|x| x + 1).join("");
            format!("{w};{s}")
        })
        .collect();
    let n = basis.len();
    let table = (0..n * n)
        .map(|ij| {
            let ((a, s), (b, t)) = (&basis[ij / n], &basis[ij % n]);
            let mut inv = vec![0; r];
            for (i, &si) in s.iter().enumerate() {
                inv[si] = i;
            }
            let st: Vec<usize> = t.iter().map(|&ti| s[ti]).collect();
            // expand Π_i a_i b_{σ⁻¹(i)} letterwise
            let mut acc: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 1)];
            for i in 0..r {
                let prod = letters.mul(a[i], b[inv[i]]);
                let mut next = Vec::new();
                for (w, c) in &acc {
                    for &(k, d) in prod {
                        let mut w2 = w.clone();
                        w2.push(k);
                        next.push((w2, c * d));
                    }
                }
                acc = next;
            }
            let mut out: HashMap<usize, i64> = HashMap::new();
            for (w, c) in acc {
                *out.entry(index[&(w, st.clone())]).or_default() += c;
            }
            let mut v: Sparse = out.into_iter().filter(|(_, c)| *c != 0).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let alg = StructureAlgebra::new(labels, vec![0; n], vec![0; n], table)?;
    Ok((alg, basis))
}

/// k[x]/(x²) with basis 1, x.
pub fn dual_numbers() -> SuperAlgebra {
    SuperAlgebra::new(
        vec!["1".into(), "x".into()],
        vec![0, 0],
        vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![]],
    )
    .expect("dual numbers table is well formed")
}

/// How the permutation part of Φ is read off the word ξ_{Ωσ,Ω}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PermReading {
    Sigma,
    Inverse,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WreathReport {
    pub n: usize,
    pub r: usize,
    pub characteristic: u64,
    pub expected_dim: usize,
    /// dimension of span{e b e : b a basis element of 𝒟(n,r)}
    pub corner_dim: usize,
    /// rank of the 2^r·r! elements (ξ_Π ⊗ X_{Ω−Π})·ξ_{Ωσ,Ω}
    pub basis_rank: usize,
    /// the reading of σ for which Φ matched the full product table, if any
    pub reading: Option<PermReading>,
    pub checks: Vec<Check>,
}

impl WreathReport {
    pub fn passed(&self) -> bool {
        self.corner_dim == self.expected_dim
            && self.basis_rank == self.expected_dim
            && self.reading.is_some()
            && self.checks.iter().all(|c| c.passed)
    }
}

struct Corner {
    data: Arc<DoubleData>,
    s: SchurSuperBialgebra,
    n: usize,
    r: usize,
    c: u64,
    eps: usize,
}

impl Corner {
    fn word(&self, letters: impl IntoIterator<Item = (usize, usize)>) -> usize {
        let mut w: Vec<usize> = letters.into_iter().map(|(i, j)| i * self.n + j).collect();
        w.sort_unstable();
        self.s.index[&w]
    }

    fn reduce(&self, mut v: Vector) -> Vector {
        if self.c != 0 {
            for x in v.values_mut() {
                *x = x.rem_euclid(self.c as i64);
            }
        }
        v.retain(|_, x| *x != 0);
        v
    }

    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&p, &a) in x {
            for (&q, &b) in y {
                for (k, c) in self.data.pair_product(p, q) {
                    *out.entry(k).or_default() += a * b * c;
                }
            }
        }
        self.reduce(out)
    }

    fn single(&self, p: Pair) -> Vector {
        HashMap::from([(p, 1)])
    }

    /// ξ_Π ⊗ X_{Ω−Π}, with Π a bitmask on Ω = {0,…,r−1}
    fn local(&self, pi: usize) -> Vector {
        let a = self.word((0..self.r).filter(|i| pi >> i & 1 == 1).map(|i| (i, i)));
        let al = self.word((0..self.r).filter(|i| pi >> i & 1 == 0).map(|i| (i, i)));
        self.single((a, al))
    }

    /// ξ_{Ωσ,Ω} ⊗ ε, the word of E_{σ(i), i}
    fn perm(&self, sigma: &[usize]) -> Vector {
        self.single((
            self.word(sigma.iter().enumerate().map(|(i, &s)| (s, i))),
            self.eps,
        ))
    }
}

fn inverse(s: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; s.len()];
    for (i, &si) in s.iter().enumerate() {
        inv[si] = i;
    }
    inv
}

fn mask_image(s: &[usize], pi: usize) -> usize {
    (0..s.len())
        .filter(|i| pi >> i & 1 == 1)
        .map(|i| 1 << s[i])
        .sum()
}

fn rows_of(vs: &[Vector], index: &HashMap<Pair, usize>) -> Vec<Vec<i64>> {
    vs.iter()
        .map(|v| {
            let mut row = vec![0; index.len()];
            for (p, &c) in v {
                row[index[p]] = c;
            }
            row
        })
        .collect()
}

/// Build ξ_ω 𝒟(n,r) ξ_ω inside the double of S(n) and compare it with
/// k[x]/(x²) ≀ Σ_r through Φ(ξ_Π ⊗ X_{Ω−Π} · ξ_{Ωσ,Ω}) = (z; σ), where
/// z_i = 1 for i ∈ Π and z_i = x otherwise.
pub fn wreath_localization(n: usize, r: usize, characteristic: u64) -> Result<WreathReport> {
    if n < r {
        return invalid(format!(
            "wreath localization needs n ≥ r, got n = {n}, r = {r}"
        ));
    }
    FieldSpec::from_characteristic(characteristic)?;
    let s = SchurSuperBialgebra::new(SuperAlgebra::matrix_algebra(n), r, characteristic)?;
    let sigma = s.reversed_map(&s, &transpose_letters(n))?;
    let data = DoubleData::new(s.bialgebra.clone(), s.bialgebra.clone(), sigma)?;
    let eps = s.index[&Vec::new()];
    let cn = Corner {
        data,
        s,
        n,
        r,
        c: characteristic,
        eps,
    };
    let piece = cn.data.degree_piece(r)?;

    let full = (1usize << r) - 1;
    let e = cn.local(full);
    let perms: Vec<Vec<usize>> = (0..r).permutations(r).collect();
    let expected_dim = (1 << r) * perms.len();

    // the corner as the span of e·b·e
    let corner: Vec<Vector> = piece
        .basis
        .iter()
        .map(|&b| cn.mul(&cn.mul(&e, &cn.single(b)), &e))
        .filter(|v| !v.is_empty())
        .collect();
    let corner_dim = integer_rank(&rows_of(&corner, &piece.index), characteristic)?;

    // candidate basis, indexed by (Π, σ)
    let mut elems: Vec<(usize, usize, Vector)> = Vec::new();
    for pi in 0..=full {
        for (k, sg) in perms.iter().enumerate() {
            elems.push((pi, k, cn.mul(&cn.local(pi), &cn.perm(sg))));
        }
    }
    let vs: Vec<Vector> = elems.iter().map(|(_, _, v)| v.clone()).collect();
    let basis_rank = integer_rank(&rows_of(&vs, &piece.index), characteristic)?;

    let mut checks = Vec::new();
    let outside = vs.iter().position(|v| cn.mul(&cn.mul(&e, v), &e) != *v);
    checks.push(Check::from(
        "basis lies in the corner",
        outside.map(|i| format!("e·u·e ≠ u for element {i}")),
    ));

    // (ξ_Π ⊗ X)·ξ_{Ωσ,Ω} is the single pure tensor ξ_{Πσ,Π} ⊗ X_{(Ω−Π)σ,Ω−Π}
    let mut pure = None;
    for (pi, k, v) in &elems {
        let sg = &perms[*k];
        // the letters E_{σ(i),i}, split by whether the row index σ(i) lies in Π
        let a = cn.word((0..r).filter(|&i| pi >> sg[i] & 1 == 1).map(|i| (sg[i], i)));
        let al = cn.word((0..r).filter(|&i| pi >> sg[i] & 1 == 0).map(|i| (sg[i], i)));
        if *v != cn.reduce(cn.single((a, al))) {
            pure = Some(format!("Π = {pi:b}, σ = {sg:?}"));
            break;
        }
    }
    checks.push(Check::from(
        "ξ_Π⊗X_{Ω−Π}·ξ_{Ωσ,Ω} = ξ_{Πσ,Π}⊗X_{(Ω−Π)σ,Ω−Π}",
        pure,
    ));

    // conjugation moves Π along σ
    let mut conj = None;
    'conj: for sg in &perms {
        for pi in 0..=full {
            let lhs = cn.mul(&cn.mul(&cn.perm(&inverse(sg)), &cn.local(pi)), &cn.perm(sg));
            let rhs = cn.reduce(cn.local(mask_image(&inverse(sg), pi)));
            if lhs != rhs {
                conj = Some(format!("Π = {pi:b}, σ = {sg:?}"));
                break 'conj;
            }
        }
    }
    checks.push(Check::from(
        "ξ_{Ωσ⁻¹,Ω}·(ξ_Π⊗X_{Ω−Π})·ξ_{Ωσ,Ω} = ξ_{Πσ}⊗X_{(Ω−Π)σ}",
        conj,
    ));

    // (ξ_Π⊗X_{Ω−Π})(ξ_Γ⊗X_{Ω−Γ}) vanishes unless Π ∪ Γ = Ω, and is ξ_{Π∩Γ}⊗X otherwise
    let mut vanish = None;
    'van: for pi in 0..=full {
        for ga in 0..=full {
            let prod = cn.mul(&cn.local(pi), &cn.local(ga));
            let want = if pi | ga == full {
                cn.reduce(cn.local(pi & ga))
            } else {
                Vector::new()
            };
            if prod != want {
                vanish = Some(format!("Π = {pi:b}, Γ = {ga:b}"));
                break 'van;
            }
        }
    }
    checks.push(Check::from("vanishing unless Π ∪ Γ = Ω", vanish));

    // full product table against the independently built wreath product
    let (wr, wbasis) = wreath_product(&dual_numbers(), r)?;
    let windex: HashMap<(Vec<usize>, Vec<usize>), usize> = wbasis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    let wassoc = match FieldSpec::from_characteristic(characteristic)? {
        FieldSpec::Rational => wr.over(Rationals).associativity_failure(),
        FieldSpec::Prime(p) => wr.over(PrimeField::new(p)?).associativity_failure(),
    };
    checks.push(Check::from(
        "k[x]/(x²) ≀ Σ_r is associative",
        wassoc.map(|t| format!("basis triple {t:?}")),
    ));

    let products: Vec<Vec<Vector>> = vs
        .iter()
        .map(|x| vs.iter().map(|y| cn.mul(x, y)).collect())
        .collect();
    let mut reading = None;
    for rd in [PermReading::Sigma, PermReading::Inverse] {
        let phi: Vec<usize> = elems
            .iter()
            .map(|(pi, k, _)| {
                let z: Vec<usize> = (0..r).map(|i| usize::from(pi >> i & 1 == 0)).collect();
                let sg = match rd {
                    PermReading::Sigma => perms[*k].clone(),
                    PermReading::Inverse => inverse(&perms[*k]),
                };
                windex[&(z, sg)]
            })
            .collect();
        let mut back = vec![usize::MAX; wbasis.len()];
        for (u, &w) in phi.iter().enumerate() {
            back[w] = u;
        }
        let ok = (0..vs.len()).all(|i| {
            (0..vs.len()).all(|j| {
                let mut want = Vector::new();
                for &(k, c) in wr.mul(phi[i], phi[j]) {
                    for (p, &d) in &vs[back[k]] {
                        *want.entry(*p).or_default() += c * d;
                    }
                }
                products[i][j] == cn.reduce(want)
            })
        });
        if ok {
            reading = Some(rd);
            break;
        }
    }
    if reading.is_none() && basis_rank == expected_dim {
        return Err(Error::Invariant(
            "no reading of σ makes Φ multiplicative".into(),
        ));
    }

    Ok(WreathReport {
        n,
        r,
        characteristic,
        expected_dim,
        corner_dim,
        basis_rank,
        reading,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_product_dimensions() {
        for r in 0..=3 {
            let (w, _) = wreath_product(&dual_numbers(), r).unwrap();
            assert_eq!(w.dim(), (1 << r) * (1..=r).product::<usize>());
            assert_eq!(w.over(Rationals).associativity_failure(), None);
        }
    }

    #[test]
    fn r1_is_dual_numbers() {
        let rep = wreath_localization(1, 1, 0).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.corner_dim, 2);
    }

    #[test]
    fn corners_match_the_wreath_product() {
        for c in [0, 2] {
            for r in 1..=2 {
                let rep = wreath_localization(r, r, c).unwrap();
                assert!(rep.passed(), "r={r} char {c}: {rep:?}");
            }
        }
    }

    #[test]
    fn n_below_r_is_rejected() {
        assert!(wreath_localization(1, 2, 0).is_err());
    }
}
