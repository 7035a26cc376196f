//! Decomposition matrices of Rock blocks: the characteristic-zero part from
//! Littlewood–Richardson coefficients, the James adjustment matrix built from
//! Schur algebra decomposition matrices, and their product.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lr::lr_coeff;
use crate::matrix::{Label, LabeledMatrix};
use crate::partitions::{
    compositions, partitions_of, quotient_vector, CompositionVector, PQuotient, Partition,
    RockBlock,
};

/// An a-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TuplePartition {
    pub components: Vec<Partition>,
}

impl TuplePartition {
    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }
}

/// All a-tuples of partitions of total size w.
pub fn enumerate_tuples(a: usize, w: usize) -> Vec<TuplePartition> {
    let mut out = Vec::new();
    for comp in compositions(w, a) {
        let mut acc: Vec<Vec<Partition>> = vec![Vec::new()];
        for &k in &comp.0 {
            let choices = partitions_of(k);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(
            acc.into_iter()
                .map(|components| TuplePartition { components }),
        );
    }
    out
}

/// Partitions ν ⊆ λ with |ν| = k.
fn sub_partitions(lambda: &Partition, k: usize) -> Vec<Partition> {
    partitions_of(k)
        .into_iter()
        .filter(|nu| lambda.contains(nu))
        .collect()
}

/// Σ_{α, β} Π_j c(λ^j; α^j, β^j) c(μ^j; β^j, (α^{j+1})'), with α^0 = α^p = ∅.
///
/// This is [Δ(λ):L(μ)] for the q-Schur algebra block, indexed by quotients.
pub fn qschur_decnumber_components(lambda: &[Partition], mu: &[Partition]) -> u64 {
    fn step(j: usize, alpha: &Partition, lambda: &[Partition], mu: &[Partition]) -> u64 {
        let p = lambda.len();
        if j == p {
            return u64::from(alpha.is_empty());
        }
        let (lj, mj) = (&lambda[j], &mu[j]);
        if lj.size() < alpha.size() || !lj.contains(alpha) {
            return 0;
        }
        let mut total = 0;
        for beta in sub_partitions(lj, lj.size() - alpha.size()) {
            let c1 = lr_coeff(lj, alpha, &beta);
            if c1 == 0 || mj.size() < beta.size() || !mj.contains(&beta) {
                continue;
            }
            let rest = mj.size() - beta.size();
            if j + 1 == p && rest != 0 {
                continue;
            }
            for next in sub_partitions(mj, rest) {
                let c2 = lr_coeff(mj, &beta, &next);
                if c2 == 0 {
                    continue;
                }
                total += c1 * c2 * step(j + 1, &next.conjugate(), lambda, mu);
            }
        }
        total
    }
    if lambda.len() != mu.len() {
        return 0;
    }
    step(0, &Partition::empty(), lambda, mu)
}

fn check_same_block(lq: &PQuotient, mq: &PQuotient) -> Result<()> {
    if lq.p != mq.p || lq.core != mq.core {
        return invalid("quotients belong to different blocks");
    }
    if lq.weight() != mq.weight() {
        return invalid(format!(
            "weight mismatch: {lq} has weight {}, {mq} has weight {}",
            lq.weight(),
            mq.weight()
        ));
    }
    Ok(())
}

pub fn qschur_decnumber(lq: &PQuotient, mq: &PQuotient) -> Result<u64> {
    check_same_block(lq, mq)?;
    Ok(qschur_decnumber_components(&lq.components, &mq.components))
}

/// Quotient of λ' in the conjugate block (core ρ', canonical bead count).
pub fn conjugate_quotient(q: &PQuotient) -> Result<PQuotient> {
    let w = q.weight();
    let block = RockBlock {
        p: q.p,
        w,
        core: q.core.clone(),
        m: q.m,
    };
    let lambda = block.reconstruct(&q.components)?;
    let conj_block = RockBlock::new(q.core.conjugate(), q.p, w)?;
    conj_block.quotient(&lambda.conjugate())
}

/// [S^λ : D^μ] for μ p-regular (μ⁰ = ∅), equal to [Δ(λ') : L(μ')].
pub fn rock_decnumber(lq: &PQuotient, mq: &PQuotient, p: usize) -> Result<u64> {
    check_same_block(lq, mq)?;
    if lq.p != p {
        return invalid(format!("quotients have {} components, expected {p}", lq.p));
    }
    if !mq.is_regular() {
        return invalid(format!("column label {mq} is not p-regular"));
    }
    qschur_decnumber(&conjugate_quotient(lq)?, &conjugate_quotient(mq)?)
}

fn qlabel(q: &PQuotient) -> Label {
    Label::Quotient(q.components.clone())
}

/// Quotients of the Rock block, ordered by ⟨λ⟩ lexicographically descending.
pub fn ordered_quotients(block: &RockBlock) -> Result<Vec<PQuotient>> {
    let mut qs = block.quotients()?;
    let mut keyed = qs
        .drain(..)
        .map(|q| Ok((quotient_vector(&q, block.w)?, q)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(keyed.into_iter().map(|(_, q)| q).collect())
}

pub fn rock_decmatrix(p: usize, w: usize) -> Result<LabeledMatrix> {
    let block = RockBlock::rouquier(p, w)?;
    let rows = ordered_quotients(&block)?;
    let cols: Vec<PQuotient> = rows.iter().filter(|q| q.is_regular()).cloned().collect();
    let conj_rows = rows
        .iter()
        .map(conjugate_quotient)
        .collect::<Result<Vec<_>>>()?;
    let conj_cols: Vec<PQuotient> = rows
        .iter()
        .zip(&conj_rows)
        .filter(|(q, _)| q.is_regular())
        .map(|(_, c)| c.clone())
        .collect();
    let entries: Vec<Vec<i64>> = conj_rows
        .par_iter()
        .map(|lc| {
            conj_cols
                .iter()
                .map(|mc| qschur_decnumber_components(&lc.components, &mc.components) as i64)
                .collect()
        })
        .collect();
    LabeledMatrix::new(
        rows.iter().map(qlabel).collect(),
        cols.iter().map(qlabel).collect(),
        entries,
    )
}

/// Supplies the decomposition matrix of the Schur algebra S(a, a), labelled by partitions of a.
pub trait SchurDecProvider {
    fn schur_dec(&self, a: usize) -> Result<LabeledMatrix>;
}

impl<F: Fn(usize) -> Result<LabeledMatrix>> SchurDecProvider for F {
    fn schur_dec(&self, a: usize) -> Result<LabeledMatrix> {
        self(a)
    }
}

/// Identity matrices: the provider for fields in which every S(a,a) needed is semisimple.
pub fn semisimple_provider(a: usize) -> Result<LabeledMatrix> {
    Ok(LabeledMatrix::identity(
        partitions_of(a).into_iter().map(Label::Partition).collect(),
    ))
}

/// Label of component i in the tensor factor: conjugated iff p − 1 − i is even.
fn adjust_factor_label(p: usize, i: usize, comp: &Partition) -> Label {
    if (p - 1 - i).is_multiple_of(2) {
        Label::Partition(comp.conjugate())
    } else {
        Label::Partition(comp.clone())
    }
}

pub fn adjustment_matrix(
    p: usize,
    w: usize,
    provider: &dyn SchurDecProvider,
) -> Result<LabeledMatrix> {
    let block = RockBlock::rouquier(p, w)?;
    let cols: Vec<PQuotient> = ordered_quotients(&block)?
        .into_iter()
        .filter(PQuotient::is_regular)
        .collect();
    let mut cache: HashMap<usize, LabeledMatrix> = HashMap::new();
    for a in 0..=w {
        let m = provider.schur_dec(a)?;
        cache.insert(a, m);
    }
    let sizes =
        |q: &PQuotient| -> Vec<usize> { q.components.iter().map(Partition::size).collect() };
    let mut entries = vec![vec![0i64; cols.len()]; cols.len()];
    for (r, rq) in cols.iter().enumerate() {
        for (c, cq) in cols.iter().enumerate() {
            if sizes(rq) != sizes(cq) {
                continue;
            }
            let mut v = 1i64;
            for i in 1..p {
                let a = rq.components[i].size();
                let dec = cache
                    .get(&a)
                    .ok_or_else(|| Error::InvalidArgument(format!("provider lacks S({a},{a})")))?;
                let rl = adjust_factor_label(p, i, &rq.components[i]);
                let cl = adjust_factor_label(p, i, &cq.components[i]);
                let d = dec.get(&rl, &cl).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "provider matrix for S({a},{a}) lacks {rl} or {cl}"
                    ))
                })?;
                v *= d;
                if v == 0 {
                    break;
                }
            }
            entries[r][c] = v;
        }
    }
    let labels: Vec<Label> = cols.iter().map(qlabel).collect();
    LabeledMatrix::new(labels.clone(), labels, entries)
}

/// Blocks of the adjustment matrix: the p-regular quotients sorted by (|λ^1|, …, |λ^{p−1}|).
pub fn adjustment_blocks(p: usize, w: usize) -> Result<Vec<(CompositionVector, Vec<PQuotient>)>> {
    let block = RockBlock::rouquier(p, w)?;
    let regular: Vec<PQuotient> = ordered_quotients(&block)?
        .into_iter()
        .filter(PQuotient::is_regular)
        .collect();
    let mut out = Vec::new();
    for a in compositions(w, p - 1) {
        let members: Vec<PQuotient> = regular
            .iter()
            .filter(|q| {
                q.components[1..]
                    .iter()
                    .map(Partition::size)
                    .eq(a.0.iter().copied())
            })
            .cloned()
            .collect();
        if !members.is_empty() {
            out.push((a, members));
        }
    }
    Ok(out)
}

pub fn full_decmatrix(
    p: usize,
    w: usize,
    provider: &dyn SchurDecProvider,
) -> Result<LabeledMatrix> {
    let rock = rock_decmatrix(p, w)?;
    let adjust = adjustment_matrix(p, w, provider)?;
    rock.mul(&adjust)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(enumerate_tuples(1, 1).len(), 1);
        assert_eq!(enumerate_tuples(2, 1).len(), 2);
        assert_eq!(enumerate_tuples(3, 2).len(), 9);
        assert_eq!(enumerate_tuples(4, 0).len(), 1);
        assert!(enumerate_tuples(3, 2).iter().all(|t| t.size() == 2));
    }

    #[test]
    fn weight_zero_is_identity() {
        let m = rock_decmatrix(3, 0).unwrap();
        assert!(m.is_identity());
        assert_eq!(m.nrows(), 1);
    }

    #[test]
    fn p2_w1_column_of_ones() {
        let m = rock_decmatrix(2, 1).unwrap();
        assert_eq!(m.entries, vec![vec![1], vec![1]]);
        assert_eq!(m.col_labels[0].to_string(), "[-|1]");
    }

    #[test]
    fn p2_w1_literal_sum() {
        // [(1),∅] against [∅,(1)]: the only candidate β^0 = (1) cannot sit inside μ^0 = ∅
        let l = vec![part("1"), Partition::empty()];
        let m = vec![Partition::empty(), part("1")];
        assert_eq!(qschur_decnumber_components(&l, &m), 0);
        assert_eq!(qschur_decnumber_components(&m, &l), 1);
    }

    #[test]
    fn p3_w1_shape() {
        let m = rock_decmatrix(3, 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (3, 2));
    }

    #[test]
    fn diagonal_is_one() {
        for (p, w) in [(2, 2), (3, 2)] {
            let block = RockBlock::rouquier(p, w).unwrap();
            for q in block.quotients().unwrap() {
                assert_eq!(qschur_decnumber(&q, &q).unwrap(), 1, "{q}");
                if q.is_regular() {
                    assert_eq!(rock_decnumber(&q, &q, p).unwrap(), 1, "{q}");
                }
            }
        }
    }

    #[test]
    fn weight_mismatch_is_error() {
        let b1 = RockBlock::rouquier(2, 2).unwrap();
        let q = b1.quotients().unwrap()[0].clone();
        let mut other = q.clone();
        other.components[1] = part("1");
        other.components[0] = Partition::empty();
        assert!(rock_decnumber(&q, &other, 2).is_err());
    }

    #[test]
    fn semisimple_adjustment_is_identity() {
        let m = adjustment_matrix(5, 2, &semisimple_provider).unwrap();
        assert!(m.is_identity());
        let full = full_decmatrix(5, 2, &semisimple_provider).unwrap();
        assert_eq!(full, rock_decmatrix(5, 2).unwrap());
    }
}
