//! Brute-force decomposition numbers of classical Schur algebras S(n, r).
//!
//! Δ(λ) is realized over Z inside V^{⊗r} as S_Z(n,r)·v, where v is the tensor
//! product over the columns of λ of e_1 ∧ … ∧ e_{λ'_j}. The weight-μ space is
//! spanned by the vectors ξ_A v, A running over n×n matrices with row sums μ
//! and column sums λ. The form on V^{⊗r} with orthonormal pure tensors,
//! divided by ⟨v, v⟩ = Π λ'_j!, restricts to the contravariant form on Δ(λ),
//! and its rank mod p on a weight space is dim L(λ)_μ.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactlin::integer_rank;
use crate::lr::hook_lengths;
use crate::matrix::{Label, LabeledMatrix};
use crate::partitions::{p_core, partitions_with_at_most, Partition};

/// Number of semistandard tableaux of shape λ and content μ (any composition).
pub fn kostka(lambda: &Partition, content: &[usize]) -> u64 {
    if lambda.size() != content.iter().sum::<usize>() {
        return 0;
    }
    let mut memo = HashMap::new();
    kostka_rec(lambda, content, &mut memo)
}

fn kostka_rec(
    lambda: &Partition,
    content: &[usize],
    memo: &mut HashMap<(Partition, usize), u64>,
) -> u64 {
    if content.is_empty() {
        return u64::from(lambda.is_empty());
    }
    let key = (lambda.clone(), content.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = *content.last().expect("nonempty");
    let rest = &content[..content.len() - 1];
    let mut total = 0;
    for nu in horizontal_strip_removals(lambda, k) {
        total += kostka_rec(&nu, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// All ν ⊆ λ with λ/ν a horizontal strip of size k.
fn horizontal_strip_removals(lambda: &Partition, k: usize) -> Vec<Partition> {
    let len = lambda.len();
    let ranges: Vec<Vec<usize>> = (0..len)
        .map(|i| (lambda.part(i + 1)..=lambda.part(i)).collect())
        .collect();
    let mut out = Vec::new();
    for choice in ranges.into_iter().multi_cartesian_product() {
        let removed: usize = lambda.size() - choice.iter().sum::<usize>();
        if removed == k {
            out.push(Partition::new(choice).expect("interlacing gives a partition"));
        }
    }
    out
}

/// dim Δ(λ) for GL_n, by the hook content formula.
pub fn weyl_dim(lambda: &Partition, n: usize) -> u64 {
    if lambda.len() > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for ((i, j), h) in lambda
        .cells()
        .zip(hook_lengths(lambda).into_iter().flatten())
    {
        num *= (n + j - i) as u128;
        den *= h as u128;
    }
    (num / den) as u64
}

pub fn weyl_weight_mult(lambda: &Partition, n: usize, content: &[usize]) -> Result<u64> {
    if content.len() != n {
        return invalid(format!("content {content:?} must have {n} entries"));
    }
    if lambda.len() > n {
        return Ok(0);
    }
    Ok(kostka(lambda, content))
}

/// Concrete model of Δ(λ) inside tensor space, one weight space at a time.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylModuleModel {
    pub lambda: Partition,
    pub n: usize,
    pub r: usize,
}

impl WeylModuleModel {
    pub fn new(lambda: Partition, n: usize) -> Result<Self> {
        if lambda.len() > n {
            return invalid(format!("{lambda} has more than {n} parts"));
        }
        let r = lambda.size();
        if n.checked_pow(r as u32).is_none_or(|d| d > 5_000_000) {
            return invalid(format!("tensor space of dimension {n}^{r} is too large"));
        }
        Ok(WeylModuleModel { lambda, n, r })
    }

    /// Letters of position t are 0-based; positions are grouped column by column.
    fn highest_vector(&self) -> Vec<(Vec<usize>, i64)> {
        let conj = self.lambda.conjugate();
        let mut terms: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 1)];
        for &h in conj.parts() {
            let mut next = Vec::new();
            for perm in (0..h).permutations(h) {
                let sign = permutation_sign(&perm);
                for (w, s) in &terms {
                    let mut w2 = w.clone();
                    w2.extend(&perm);
                    next.push((w2, s * sign));
                }
            }
            terms = next;
        }
        terms
    }

    fn index(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    /// Matrices A with row sums `content` and column sums λ (padded to n).
    pub fn spanning_matrices(&self, content: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let cols: Vec<usize> = (0..self.n).map(|b| self.lambda.part(b)).collect();
        contingency_tables(content, &cols)
    }

    /// ξ_A v as a sparse vector over word indices.
    fn apply(&self, a: &[Vec<usize>], v: &[(Vec<usize>, i64)]) -> HashMap<usize, i64> {
        let mut out: HashMap<usize, i64> = HashMap::new();
        for (word, coeff) in v {
            // positions holding each input letter b
            let mut by_letter: Vec<Vec<usize>> = vec![Vec::new(); self.n];
            for (t, &b) in word.iter().enumerate() {
                by_letter[b].push(t);
            }
            // per letter b, all arrangements of output letters with counts A[·][b]
            let per_letter: Vec<Vec<Vec<usize>>> = (0..self.n)
                .map(|b| {
                    let mut letters = Vec::new();
                    for (ai, row) in a.iter().enumerate() {
                        letters.extend(std::iter::repeat_n(ai, row[b]));
                    }
                    distinct_permutations(&letters)
                })
                .collect();
            for combo in per_letter
                .iter()
                .map(|v| v.iter())
                .multi_cartesian_product()
            {
                let mut out_word = vec![0; self.r];
                for (b, arrangement) in combo.iter().enumerate() {
                    for (&t, &x) in by_letter[b].iter().zip(arrangement.iter()) {
                        out_word[t] = x;
                    }
                }
                *out.entry(self.index(&out_word)).or_insert(0) += coeff;
            }
            if self.n == 0 {
                break;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Gram matrix of the contravariant form on the spanning set of the weight space.
    pub fn gram(&self, content: &[usize]) -> Result<Vec<Vec<i64>>> {
        if content.len() != self.n || content.iter().sum::<usize>() != self.r {
            return invalid(format!(
                "content {content:?} is not a weight of S({}, {})",
                self.n, self.r
            ));
        }
        let v = self.highest_vector();
        let norm: i64 = self
            .lambda
            .conjugate()
            .parts()
            .iter()
            .map(|&h| factorial(h))
            .product();
        let mats = self.spanning_matrices(content);
        let vecs: Vec<HashMap<usize, i64>> = mats.iter().map(|a| self.apply(a, &v)).collect();
        let k = vecs.len();
        let mut g = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in i..k {
                let (small, big) = if vecs[i].len() <= vecs[j].len() {
                    (&vecs[i], &vecs[j])
                } else {
                    (&vecs[j], &vecs[i])
                };
                let dot: i128 = small
                    .iter()
                    .filter_map(|(w, c)| big.get(w).map(|d| *c as i128 * *d as i128))
                    .sum();
                if dot % norm as i128 != 0 {
                    return Err(Error::Invariant(format!(
                        "Gram entry {dot} not divisible by ⟨v,v⟩ = {norm} for {}",
                        self.lambda
                    )));
                }
                let val = i64::try_from(dot / norm as i128)
                    .map_err(|_| Error::Invariant("Gram entry overflow".into()))?;
                g[i][j] = val;
                g[j][i] = val;
            }
        }
        Ok(g)
    }

    /// Rank of the Gram matrix over the field of characteristic c (0 = Q).
    pub fn gram_rank(&self, content: &[usize], c: u64) -> Result<usize> {
        let g = self.gram(content)?;
        if g.is_empty() {
            return Ok(0);
        }
        integer_rank(&g, c)
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn distinct_permutations(letters: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next lexicographic permutation
    loop {
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| sorted[i] < sorted[i + 1]) else {
            break;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| sorted[j] > sorted[i])
            .expect("successor");
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// Non-negative integer matrices with the given row and column sums.
pub fn contingency_tables(rows: &[usize], cols: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        i: usize,
        rows: &[usize],
        remaining: &mut Vec<usize>,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == rows.len() {
            if remaining.iter().all(|&c| c == 0) {
                out.push(acc.clone());
            }
            return;
        }
        for row in compositions_bounded(rows[i], remaining) {
            for (c, x) in remaining.iter_mut().zip(&row) {
                *c -= x;
            }
            acc.push(row.clone());
            rec(i + 1, rows, remaining, acc, out);
            acc.pop();
            for (c, x) in remaining.iter_mut().zip(&row) {
                *c += x;
            }
        }
    }
    if rows.iter().sum::<usize>() != cols.iter().sum::<usize>() {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(0, rows, &mut cols.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn compositions_bounded(total: usize, bounds: &[usize]) -> Vec<Vec<usize>> {
    fn rec(total: usize, bounds: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if bounds.is_empty() {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap: usize = bounds[1..].iter().sum();
        let lo = total.saturating_sub(cap);
        for x in lo..=total.min(bounds[0]) {
            cur.push(x);
            rec(total - x, &bounds[1..], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, bounds, &mut Vec::new(), &mut out);
    out
}

fn pad(p: &Partition, n: usize) -> Vec<usize> {
    (0..n).map(|i| p.part(i)).collect()
}

/// dim L(λ)_μ over F_p (p = 0 means Q).
pub fn simple_weight_mult(lambda: &Partition, n: usize, content: &[usize], p: u64) -> Result<u64> {
    if content.len() != n {
        return invalid(format!("content {content:?} must have {n} entries"));
    }
    if lambda.len() > n || lambda.size() != content.iter().sum::<usize>() {
        return Ok(0);
    }
    // characters are symmetric, so sort the weight
    let mut sorted = content.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let model = WeylModuleModel::new(lambda.clone(), n)?;
    Ok(model.gram_rank(&sorted, p)? as u64)
}

/// [Δ(λ) : L(μ)] over F_p for all partitions λ, μ of r with at most n parts,
/// both listed dominance-descending.
pub fn schur_decmatrix(n: usize, r: usize, p: u64) -> Result<LabeledMatrix> {
    let parts = partitions_with_at_most(r, n);
    let k = parts.len();
    // simple[ν][μ] = dim L(ν)_μ, weights μ dominant
    let simple: Vec<Vec<u64>> = parts
        .par_iter()
        .enumerate()
        .map(|(i, nu)| {
            let model = WeylModuleModel::new(nu.clone(), n)?;
            (0..k)
                .map(|j| {
                    if j < i {
                        Ok(0)
                    } else {
                        Ok(model.gram_rank(&pad(&parts[j], n), p)? as u64)
                    }
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut entries = vec![vec![0i64; k]; k];
    for (i, lam) in parts.iter().enumerate() {
        for j in i..k {
            let mut d = kostka(lam, &pad(&parts[j], n)) as i64;
            for (jj, row) in simple.iter().enumerate().take(j).skip(i) {
                d -= entries[i][jj] * row[j] as i64;
            }
            if d < 0 {
                return Err(Error::Invariant(format!(
                    "negative decomposition number [Δ({lam}) : L({})]",
                    parts[j]
                )));
            }
            entries[i][j] = d;
        }
    }
    let labels: Vec<Label> = parts.into_iter().map(Label::Partition).collect();
    LabeledMatrix::new(labels.clone(), labels, entries)
}

/// Decomposition matrices of S(a, a) in characteristic p, computed by brute force.
pub fn oracle_provider(p: u64) -> impl Fn(usize) -> Result<LabeledMatrix> {
    move |a| schur_decmatrix(a, a, p)
}

/// Restrict a partition-labelled matrix to the labels with the given p-core.
pub fn block_submatrix(dec: &LabeledMatrix, p: usize, core: &Partition) -> Result<LabeledMatrix> {
    let keep = |labels: &[Label]| -> Result<Vec<Label>> {
        let mut out = Vec::new();
        for l in labels {
            let Label::Partition(lam) = l else {
                return invalid("block_submatrix needs partition labels");
            };
            if p_core(lam, p)? == *core {
                out.push(l.clone());
            }
        }
        Ok(out)
    };
    let rows = keep(&dec.row_labels)?;
    let cols = keep(&dec.col_labels)?;
    dec.submatrix(&rows, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&part("2,1"), &[2, 1]), 1);
        assert_eq!(kostka(&part("2,1"), &[1, 1, 1]), 2);
        assert_eq!(kostka(&part("2,1"), &[1, 2]), 1);
        assert_eq!(kostka(&part("3"), &[1, 1, 1]), 1);
        assert_eq!(weyl_dim(&part("1,1"), 4), 6);
        assert_eq!(weyl_dim(&part("2"), 2), 3);
    }

    #[test]
    fn weyl_dim_is_kostka_sum() {
        for n in 1..=3 {
            for r in 0..=4 {
                for lam in partitions_with_at_most(r, n) {
                    let total: u64 = crate::partitions::compositions(r, n)
                        .iter()
                        .map(|c| kostka(&lam, &c.0))
                        .sum();
                    assert_eq!(total, weyl_dim(&lam, n), "{lam} n={n}");
                }
            }
        }
    }

    #[test]
    fn gram_rank_over_q_is_kostka() {
        for r in 1..=4 {
            for lam in partitions_of(r) {
                let n = r;
                let model = WeylModuleModel::new(lam.clone(), n).unwrap();
                for mu in partitions_of(r) {
                    let c = pad(&mu, n);
                    assert_eq!(
                        model.gram_rank(&c, 0).unwrap() as u64,
                        kostka(&lam, &c),
                        "λ={lam} μ={mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn highest_weight_space_has_unit_gram() {
        let model = WeylModuleModel::new(part("2,1"), 3).unwrap();
        // two spanning matrices, both giving ±v
        assert_eq!(
            model.gram(&[2, 1, 0]).unwrap(),
            vec![vec![1, -1], vec![-1, 1]]
        );
        assert_eq!(model.gram_rank(&[2, 1, 0], 2).unwrap(), 1);
    }

    #[test]
    fn delta2_weight11_char2() {
        assert_eq!(simple_weight_mult(&part("2"), 2, &[1, 1], 2).unwrap(), 0);
        assert_eq!(simple_weight_mult(&part("2"), 2, &[1, 1], 3).unwrap(), 1);
    }

    #[test]
    fn s22_in_char_2() {
        let m = schur_decmatrix(2, 2, 2).unwrap();
        assert_eq!(m.entries, vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn contingency_counts() {
        // 2x2 tables with margins (1,1),(1,1): two permutation matrices
        assert_eq!(contingency_tables(&[1, 1], &[1, 1]).len(), 2);
        assert_eq!(contingency_tables(&[2], &[1, 1]).len(), 1);
    }
}
