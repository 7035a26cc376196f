//! Finite-basis super-algebras and their Schur super-bialgebras S(A).
//!
//! S(A)(r) is the space of Σ_r-fixed points of A^{⊗r}, where a simple
//! transposition swaps adjacent letters with the sign (−1)^{|a_i||a_{i+1}|}.
//! Letters are basis elements of A. A fixed vector is determined by its
//! coefficients on weakly increasing words, so S(A)(r) has the basis
//! e_u = Σ_{w ∈ Σ_r·u} ε(w) w over sorted words u, where ε(w) is the sign of
//! the odd letters' rearrangement. A sorted word with a repeated odd letter
//! gives a fixed vector only in characteristic 2.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::doubles::GradedBialgebra;
use crate::error::{invalid, Error, Result};
use crate::exactlin::{Field, Matrix};

/// Sparse linear combination of basis indices with integer coefficients.
pub type Sparse = Vec<(usize, i64)>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuperAlgebra {
    pub labels: Vec<String>,
    pub parity: Vec<u8>,
    /// table[i * dim + j] = e_i e_j
    table: Vec<Sparse>,
}

impl SuperAlgebra {
    pub fn new(labels: Vec<String>, parity: Vec<u8>, table: Vec<Sparse>) -> Result<Self> {
        let n = labels.len();
        if parity.len() != n || table.len() != n * n {
            return invalid("super-algebra tables do not match the basis size");
        }
        let alg = SuperAlgebra {
            labels,
            parity,
            table,
        };
        for i in 0..n {
            for j in 0..n {
                for &(k, _) in alg.mul(i, j) {
                    if k >= n || alg.parity[k] != (alg.parity[i] + alg.parity[j]) % 2 {
                        return invalid(format!("product e_{i} e_{j} is not parity-homogeneous"));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim() + j]
    }

    /// n×n matrix units, all even; E_ij is index i*n + j.
    pub fn matrix_algebra(n: usize) -> Self {
        let mut table = vec![Vec::new(); n.pow(4)];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    table[(i * n + j) * n * n + (j * n + k)] = vec![(i * n + k, 1)];
                }
            }
        }
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect();
        SuperAlgebra {
            labels,
            parity: vec![0; n * n],
            table,
        }
    }

    /// One odd basis element squaring to zero.
    pub fn odd_line() -> Self {
        SuperAlgebra {
            labels: vec!["x".into()],
            parity: vec![1],
            table: vec![Vec::new()],
        }
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs: HashMap<usize, i64> = HashMap::new();
                    for &(m, c) in self.mul(i, j) {
                        for &(t, d) in self.mul(m, k) {
                            *lhs.entry(t).or_default() += c * d;
                        }
                    }
                    let mut rhs: HashMap<usize, i64> = HashMap::new();
                    for &(m, c) in self.mul(j, k) {
                        for &(t, d) in self.mul(i, m) {
                            *rhs.entry(t).or_default() += c * d;
                        }
                    }
                    lhs.retain(|_, v| *v != 0);
                    rhs.retain(|_, v| *v != 0);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Sign of rearranging the odd letters of a word into sorted order.
fn odd_sign(word: &[usize], parity: &[u8]) -> i64 {
    let mut inv = 0usize;
    for i in 0..word.len() {
        if parity[word[i]] == 0 {
            continue;
        }
        for j in i + 1..word.len() {
            if parity[word[j]] == 1 && word[i] > word[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn is_sorted(w: &[usize]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

fn has_repeated_odd(w: &[usize], parity: &[u8]) -> bool {
    w.windows(2).any(|p| p[0] == p[1] && parity[p[0]] == 1)
}

/// Sorted words of length r over `letters` letters (multisets).
fn sorted_words(letters: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(
        start: usize,
        letters: usize,
        r: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..letters {
            cur.push(x);
            rec(x, letters, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, letters, r, &mut Vec::new(), &mut out);
    out
}

/// The orbit sum e_u as (word, sign) pairs.
fn orbit(u: &[usize], parity: &[u8]) -> Vec<(Vec<usize>, i64)> {
    crate::weyl::distinct_permutations(u)
        .into_iter()
        .map(|w| {
            let s = odd_sign(&w, parity);
            (w, s)
        })
        .collect()
}

/// S(A)(0) ⊕ … ⊕ S(A)(r_max) with its orbit-sum basis.
#[derive(Clone, Debug)]
pub struct SchurSuperBialgebra {
    pub letters: SuperAlgebra,
    pub r_max: usize,
    pub characteristic: u64,
    /// sorted representative of each basis element
    pub words: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
    pub bialgebra: GradedBialgebra,
}

impl SchurSuperBialgebra {
    pub fn new(letters: SuperAlgebra, r_max: usize, characteristic: u64) -> Result<Self> {
        let parity = letters.parity.clone();
        let mut words = Vec::new();
        for r in 0..=r_max {
            for w in sorted_words(letters.dim(), r) {
                if characteristic != 2 && has_repeated_odd(&w, &parity) {
                    continue;
                }
                words.push(w);
            }
        }
        let index: HashMap<Vec<usize>, usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let orbits: Vec<Vec<(Vec<usize>, i64)>> = words.iter().map(|w| orbit(w, &parity)).collect();

        let labels = words.iter().map(|w| word_label(&letters, w)).collect();
        let degree: Vec<usize> = words.iter().map(Vec::len).collect();
        let wparity: Vec<u8> = words
            .iter()
            .map(|w| (w.iter().map(|&x| parity[x] as usize).sum::<usize>() % 2) as u8)
            .collect();

        let mut pieces = vec![Vec::new(); r_max + 1];
        for (i, w) in words.iter().enumerate() {
            pieces[w.len()].push(i);
        }

        let mut product = HashMap::new();
        for piece in &pieces {
            for &u in piece {
                for &v in piece {
                    let prod = orbit_product(&letters, &orbits[u], &orbits[v], &index)?;
                    if !prod.is_empty() {
                        product.insert((u, v), prod);
                    }
                }
            }
        }

        let coproduct = (0..words.len())
            .map(|u| {
                let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
                for (w, s) in &orbits[u] {
                    for cut in 0..=w.len() {
                        let (l, r) = w.split_at(cut);
                        if let (Some(&x), Some(&y)) = (index.get(l), index.get(r)) {
                            *acc.entry((x, y)).or_default() += s;
                        }
                    }
                }
                let mut v: Vec<(usize, usize, i64)> = acc
                    .into_iter()
                    .filter(|(_, c)| *c != 0)
                    .map(|((x, y), c)| (x, y, c))
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();

        let bialgebra = GradedBialgebra::new(
            labels,
            degree,
            wparity,
            product,
            coproduct,
            r_max,
            characteristic,
        )?;
        Ok(SchurSuperBialgebra {
            letters,
            r_max,
            characteristic,
            words,
            index,
            bialgebra,
        })
    }

    /// Basis index of the orbit through a word (any order), with the sign of
    /// that word inside the orbit sum.
    pub fn locate(&self, word: &[usize]) -> Option<(usize, i64)> {
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        let i = *self.index.get(&sorted)?;
        Some((i, odd_sign(word, &self.letters.parity)))
    }

    /// Extend a letter map A → A' (e.g. an anti-automorphism) to
    /// a1⊗…⊗ar ↦ σ(ar)⊗…⊗σ(a1) on the orbit bases, with no sign.
    pub fn reversed_map(
        &self,
        target: &SchurSuperBialgebra,
        letter_map: &[Sparse],
    ) -> Result<Vec<Sparse>> {
        self.word_map(target, letter_map, true)
    }

    /// a1⊗…⊗ar ↦ φ(a1)⊗…⊗φ(ar).
    pub fn tensor_map(
        &self,
        target: &SchurSuperBialgebra,
        letter_map: &[Sparse],
    ) -> Result<Vec<Sparse>> {
        self.word_map(target, letter_map, false)
    }

    fn word_map(
        &self,
        target: &SchurSuperBialgebra,
        letter_map: &[Sparse],
        reverse: bool,
    ) -> Result<Vec<Sparse>> {
        if letter_map.len() != self.letters.dim() {
            return invalid("letter map has the wrong number of entries");
        }
        let parity = &self.letters.parity;
        let mut out = Vec::with_capacity(self.words.len());
        for u in &self.words {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for (w, s) in orbit(u, parity) {
                let mut seq = w.clone();
                if reverse {
                    seq.reverse();
                }
                for (img, c) in expand_letters(&seq, letter_map) {
                    if is_sorted(&img) {
                        if let Some(&t) = target.index.get(&img) {
                            *acc.entry(t).or_default() += s * c;
                        }
                    }
                }
            }
            let mut v: Sparse = acc.into_iter().filter(|(_, c)| *c != 0).collect();
            v.sort_unstable();
            out.push(v);
        }
        Ok(out)
    }
}

/// All words obtained by applying a sparse letter map letterwise.
fn expand_letters(word: &[usize], map: &[Sparse]) -> Vec<(Vec<usize>, i64)> {
    let mut acc: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 1)];
    for &x in word {
        let mut next = Vec::new();
        for (w, c) in &acc {
            for &(y, d) in &map[x] {
                let mut w2 = w.clone();
                w2.push(y);
                next.push((w2, c * d));
            }
        }
        acc = next;
    }
    acc
}

/// Coefficients of e_u e_v on the orbit basis, read off at sorted words.
fn orbit_product(
    a: &SuperAlgebra,
    ou: &[(Vec<usize>, i64)],
    ov: &[(Vec<usize>, i64)],
    index: &HashMap<Vec<usize>, usize>,
) -> Result<Sparse> {
    let parity = &a.parity;
    let mut acc: HashMap<Vec<usize>, i64> = HashMap::new();
    for (w, s) in ou {
        for (w2, s2) in ov {
            // super sign Σ_{i>j} |a_i||b_j|
            let mut odd_b_before = 0usize;
            let mut sign_exp = 0usize;
            for (x, y) in w.iter().zip(w2) {
                if parity[*x] == 1 {
                    sign_exp += odd_b_before;
                }
                if parity[*y] == 1 {
                    odd_b_before += 1;
                }
            }
            let sign = if sign_exp.is_multiple_of(2) { 1 } else { -1 };
            let mut partial: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), s * s2 * sign)];
            for (x, y) in w.iter().zip(w2) {
                let prods = a.mul(*x, *y);
                if prods.is_empty() {
                    partial.clear();
                    break;
                }
                let mut next = Vec::new();
                for (p, c) in &partial {
                    for &(z, d) in prods {
                        if p.last().is_some_and(|&l| l > z) {
                            continue;
                        }
                        let mut p2 = p.clone();
                        p2.push(z);
                        next.push((p2, c * d));
                    }
                }
                partial = next;
            }
            for (p, c) in partial {
                *acc.entry(p).or_default() += c;
            }
        }
    }
    let mut out = Vec::new();
    for (w, c) in acc {
        if c == 0 {
            continue;
        }
        match index.get(&w) {
            Some(&i) => out.push((i, c)),
            None => {
                return Err(Error::Invariant(format!(
                    "product left the fixed points at word {w:?}"
                )));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn word_label(a: &SuperAlgebra, w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&x| a.labels[x].as_str())
        .collect::<Vec<_>>()
        .join("·")
}

/// dim of the literal fixed points ∩ ker(s_i − id) on A^{⊗r} over a field.
pub fn fixed_point_dim<F: Field>(field: F, a: &SuperAlgebra, r: usize) -> Result<usize> {
    let n = a.dim();
    let total = n
        .checked_pow(r as u32)
        .filter(|&t| t <= 4096)
        .ok_or_else(|| {
            Error::InvalidArgument(format!(
                "A^⊗{r} has dimension beyond the literal kernel limit"
            ))
        })?;
    if r < 2 {
        return Ok(total);
    }
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut w = vec![0; r];
        for k in (0..r).rev() {
            w[k] = idx % n;
            idx /= n;
        }
        w
    };
    let encode = |w: &[usize]| w.iter().fold(0, |acc, &x| acc * n + x);
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..r - 1 {
        for idx in 0..total {
            let w = decode(idx);
            // row of (s_i − id) applied to basis vector idx, stored column-wise below
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            let sign = if a.parity[w[i]] == 1 && a.parity[w[i + 1]] == 1 {
                -1
            } else {
                1
            };
            let mut row = vec![field.zero(); total];
            let j = encode(&swapped);
            row[j] = field.add(&row[j], &field.from_i64(sign));
            row[idx] = field.sub(&row[idx], &field.one());
            rows.push(row);
        }
    }
    // rows are images of basis vectors; the map's matrix is their transpose
    let m = Matrix::from_rows(field, rows)?.transpose();
    Ok(total - m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::lr::binomial;

    #[test]
    fn classical_dimensions() {
        for n in 1..=2 {
            let s = SchurSuperBialgebra::new(SuperAlgebra::matrix_algebra(n), 3, 0).unwrap();
            for r in 0..=3 {
                let d = s.bialgebra.pieces[r].len() as u128;
                assert_eq!(d, binomial((n * n + r - 1) as u128, r as u128));
            }
        }
    }

    #[test]
    fn odd_line_square() {
        let s0 = SchurSuperBialgebra::new(SuperAlgebra::odd_line(), 2, 0).unwrap();
        assert_eq!(s0.bialgebra.pieces[2].len(), 0);
        let s2 = SchurSuperBialgebra::new(SuperAlgebra::odd_line(), 2, 2).unwrap();
        assert_eq!(s2.bialgebra.pieces[2].len(), 1);
        assert_eq!(
            fixed_point_dim(Rationals, &SuperAlgebra::odd_line(), 2).unwrap(),
            0
        );
        assert_eq!(
            fixed_point_dim(PrimeField::new(2).unwrap(), &SuperAlgebra::odd_line(), 2).unwrap(),
            1
        );
    }

    #[test]
    fn orbit_basis_matches_literal_kernel() {
        let m2 = SuperAlgebra::matrix_algebra(2);
        for r in 0..=3 {
            let s = SchurSuperBialgebra::new(m2.clone(), r, 0).unwrap();
            assert_eq!(
                s.bialgebra.pieces[r].len(),
                fixed_point_dim(Rationals, &m2, r).unwrap()
            );
        }
    }

    #[test]
    fn matrix_schur_algebra_is_associative() {
        let s = SchurSuperBialgebra::new(SuperAlgebra::matrix_algebra(2), 2, 0).unwrap();
        s.bialgebra.check_structure().unwrap();
    }
}
