use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::abacus::{abacus_of, is_rouquier, p_core, p_quotient, reconstruct, PQuotient};
use super::{compare_partial_sums, dominated_by, Dominance, Partition};
use crate::error::{invalid, Result};

/// Entries (a_0, …, a_{p−1}) summing to w.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositionVector(pub Vec<usize>);

impl CompositionVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// All compositions of w into `parts` non-negative entries, lexicographically.
pub fn compositions(w: usize, parts: usize) -> Vec<CompositionVector> {
    fn rec(w: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<CompositionVector>) {
        if parts == 1 {
            cur.push(w);
            out.push(CompositionVector(cur.clone()));
            cur.pop();
            return;
        }
        for a in 0..=w {
            cur.push(a);
            rec(w - a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if w == 0 {
            out.push(CompositionVector(Vec::new()));
        }
        return out;
    }
    rec(w, parts, &mut Vec::new(), &mut out);
    out
}

/// Bead count used for all quotients of the block of weight w with the given core.
///
/// The residue of m mod p is the one whose runner counts for the core increase
/// most steadily (the largest minimal difference between consecutive runners,
/// ties to the smaller residue). For a Rouquier core this puts the largest
/// runner last, so that adding p to the first w parts moves beads only on the
/// last runner and the last component records that motion.
pub fn canonical_beads(core: &Partition, p: usize, w: usize) -> Result<usize> {
    if p < 2 {
        return invalid(format!("p must be at least 2, got {p}"));
    }
    let floor = core.len() + p * w;
    let mut best: Option<(i64, usize)> = None;
    for m in floor..floor + p {
        let c = abacus_of(core, p, m)?.runner_counts();
        let score = (1..p)
            .map(|i| c[i] as i64 - c[i - 1] as i64)
            .min()
            .unwrap_or(0);
        let better = match best {
            None => true,
            Some((s, bm)) => score > s || (score == s && m % p < bm % p),
        };
        if better {
            best = Some((score, m));
        }
    }
    Ok(best.expect("p ≥ 2 candidates").1)
}

/// A block of weight w with a fixed core and the canonical bead count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RockBlock {
    pub p: usize,
    pub w: usize,
    pub core: Partition,
    pub m: usize,
}

impl RockBlock {
    /// The block of weight w whose core is the minimal Rouquier core.
    pub fn rouquier(p: usize, w: usize) -> Result<Self> {
        let core = super::rouquier_core(p, w)?;
        Self::new(core, p, w)
    }

    pub fn new(core: Partition, p: usize, w: usize) -> Result<Self> {
        if p_core(&core, p)? != core {
            return invalid(format!("{core} is not a {p}-core"));
        }
        let m = canonical_beads(&core, p, w)?;
        Ok(RockBlock { p, w, core, m })
    }

    pub fn is_rock(&self) -> Result<bool> {
        is_rouquier(&self.core, self.p, self.w)
    }

    pub fn quotient(&self, lambda: &Partition) -> Result<PQuotient> {
        let q = p_quotient(lambda, self.p, self.m)?;
        if q.core != self.core || q.weight() != self.w {
            return invalid(format!(
                "{lambda} does not lie in the block of core {} and weight {}",
                self.core, self.w
            ));
        }
        Ok(q)
    }

    pub fn reconstruct(&self, components: &[Partition]) -> Result<Partition> {
        let total: usize = components.iter().map(Partition::size).sum();
        if total != self.w {
            return invalid(format!(
                "components have total size {total}, expected {}",
                self.w
            ));
        }
        reconstruct(&self.core, components, self.p, self.m)
    }

    pub fn quotient_of_components(&self, components: Vec<Partition>) -> PQuotient {
        PQuotient {
            p: self.p,
            components,
            core: self.core.clone(),
            m: self.m,
        }
    }

    /// Every partition in the block, dominance-descending (reverse lexicographic).
    pub fn partitions(&self) -> Result<Vec<Partition>> {
        let mut out = Vec::new();
        for tuple in crate::decmat::enumerate_tuples(self.p, self.w) {
            out.push(self.reconstruct(&tuple.components)?);
        }
        out.sort_by(|a, b| b.cmp(a));
        Ok(out)
    }

    pub fn quotients(&self) -> Result<Vec<PQuotient>> {
        self.partitions()?
            .iter()
            .map(|l| self.quotient(l))
            .collect()
    }
}

/// Every partition with the given core and weight, dominance-descending.
pub fn block_partitions(core: &Partition, p: usize, w: usize) -> Result<Vec<Partition>> {
    RockBlock::new(core.clone(), p, w)?.partitions()
}

/// ⟨λ⟩ = (λ^{p−1}_1..λ^{p−1}_w, …, λ^0_1..λ^0_w).
pub fn quotient_vector(q: &PQuotient, w: usize) -> Result<Vec<usize>> {
    let mut v = Vec::with_capacity(w * q.p);
    for comp in q.components.iter().rev() {
        if comp.len() > w {
            return invalid(format!("component {comp} has more than {w} parts"));
        }
        v.extend((0..w).map(|i| comp.part(i)));
    }
    Ok(v)
}

/// Dominance of integer vectors by partial sums.
pub fn vector_dominance(a: &[usize], b: &[usize]) -> Result<Dominance> {
    if a.len() != b.len() || a.iter().sum::<usize>() != b.iter().sum::<usize>() {
        return invalid("vectors must have equal length and equal sum");
    }
    let ps = |v: &[usize]| -> Vec<i64> {
        v.iter()
            .scan(0i64, |acc, &x| {
                *acc += x as i64;
                Some(*acc)
            })
            .collect()
    };
    Ok(compare_partial_sums(&ps(a), &ps(b)))
}

/// [∅, λ^{p−1}, …, λ^1] for a p-regular quotient.
pub fn rock_mullineux(q: &PQuotient) -> Result<PQuotient> {
    if !q.is_regular() {
        return invalid(format!("quotient {q} has nonempty 0-th component"));
    }
    let mut components = vec![Partition::empty()];
    components.extend(q.components[1..].iter().rev().cloned());
    Ok(PQuotient {
        components,
        ..q.clone()
    })
}

fn sizes_match(q: &PQuotient, a: &[usize]) -> bool {
    q.components
        .iter()
        .map(Partition::size)
        .eq(a.iter().copied())
}

fn check_composition(block: &RockBlock, a: &CompositionVector) -> Result<()> {
    if a.0.len() != block.p || a.total() != block.w {
        return invalid(format!(
            "composition {:?} must have {} entries summing to {}",
            a.0, block.p, block.w
        ));
    }
    Ok(())
}

/// Partitions whose quotient sizes are exactly a, dominance-descending.
pub fn k_set(block: &RockBlock, a: &CompositionVector) -> Result<Vec<Partition>> {
    check_composition(block, a)?;
    let mut out = Vec::new();
    for lam in block.partitions()? {
        if sizes_match(&block.quotient(&lam)?, &a.0) {
            out.push(lam);
        }
    }
    Ok(out)
}

/// λ dominated by some member of 𝒦_a.
pub fn i_set(block: &RockBlock, a: &CompositionVector) -> Result<Vec<Partition>> {
    let ks = k_set(block, a)?;
    Ok(block
        .partitions()?
        .into_iter()
        .filter(|l| ks.iter().any(|m| dominated_by(l, m)))
        .collect())
}

/// λ dominating some member of 𝒦_a.
pub fn j_set(block: &RockBlock, a: &CompositionVector) -> Result<Vec<Partition>> {
    let ks = k_set(block, a)?;
    Ok(block
        .partitions()?
        .into_iter()
        .filter(|l| ks.iter().any(|m| dominated_by(m, l)))
        .collect())
}

fn unit_composition(p: usize, w: usize, i: usize) -> CompositionVector {
    let mut v = vec![0; p];
    v[i] = w;
    CompositionVector(v)
}

/// ℐ_res = ℐ_{p−2}.
pub fn i_res(block: &RockBlock) -> Result<Vec<Partition>> {
    i_set(block, &unit_composition(block.p, block.w, block.p - 2))
}

/// ℐ_sing, the complement of ℐ_reg = 𝒥_1.
pub fn i_sing(block: &RockBlock) -> Result<Vec<Partition>> {
    let reg: HashSet<Partition> = j_set(block, &unit_composition(block.p, block.w, 1))?
        .into_iter()
        .collect();
    Ok(block
        .partitions()?
        .into_iter()
        .filter(|l| !reg.contains(l))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    // cross-checks the block enumeration against a scan of all partitions
    fn partitions_with_core(core: &Partition, p: usize, w: usize) -> Result<Vec<Partition>> {
        let n = core.size() + p * w;
        let mut out = Vec::new();
        for lam in partitions_of(n) {
            if p_core(&lam, p)? == *core {
                out.push(lam);
            }
        }
        Ok(out)
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_m_for_rouquier_example() {
        assert_eq!(canonical_beads(&part("6,4,2,2,1,1"), 3, 3).unwrap(), 15);
        assert_eq!(canonical_beads(&Partition::empty(), 2, 1).unwrap() % 2, 0);
    }

    #[test]
    fn quotient_convention_pins_last_runner() {
        // adding p to the first part moves the top bead on the last runner
        for (p, w) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            let b = RockBlock::rouquier(p, w).unwrap();
            let mut parts = b.core.parts().to_vec();
            if parts.is_empty() {
                parts.push(0);
            }
            parts[0] += p * w;
            let lam = Partition::new(parts).unwrap();
            let q = b.quotient(&lam).unwrap();
            assert_eq!(q.components[p - 1], Partition::row(w), "p={p} w={w}");
        }
    }

    #[test]
    fn p2_weight1_convention() {
        let b = RockBlock::rouquier(2, 1).unwrap();
        assert_eq!(b.quotient(&part("2")).unwrap().to_string(), "[-|1]");
        assert_eq!(b.quotient(&part("1,1")).unwrap().to_string(), "[1|-]");
    }

    #[test]
    fn quotient_vector_examples() {
        let b = RockBlock::rouquier(3, 2).unwrap();
        let q = b.quotient_of_components(vec![Partition::empty(), Partition::empty(), part("2")]);
        assert_eq!(quotient_vector(&q, 2).unwrap(), vec![2, 0, 0, 0, 0, 0]);
        let q = b.quotient_of_components(vec![Partition::empty(), part("1"), part("1")]);
        assert_eq!(quotient_vector(&q, 2).unwrap(), vec![1, 0, 1, 0, 0, 0]);
        let q =
            b.quotient_of_components(vec![part("1,1,1"), Partition::empty(), Partition::empty()]);
        assert!(quotient_vector(&q, 2).is_err());
    }

    #[test]
    fn mullineux_examples() {
        let b = RockBlock::rouquier(3, 1).unwrap();
        let q = b.quotient_of_components(vec![Partition::empty(), part("1"), Partition::empty()]);
        let m = rock_mullineux(&q).unwrap();
        assert_eq!(m.to_string(), "[-|-|1]");
        assert_eq!(rock_mullineux(&m).unwrap(), q);
        let bad = b.quotient_of_components(vec![part("1"), Partition::empty(), Partition::empty()]);
        assert!(rock_mullineux(&bad).is_err());
    }

    #[test]
    fn k_set_examples() {
        let b = RockBlock::rouquier(3, 2).unwrap();
        let ks = k_set(&b, &CompositionVector(vec![0, 0, 2])).unwrap();
        let expect = vec![
            b.reconstruct(&[Partition::empty(), Partition::empty(), part("2")])
                .unwrap(),
            b.reconstruct(&[Partition::empty(), Partition::empty(), part("1,1")])
                .unwrap(),
        ];
        assert_eq!(ks, expect);
        let b1 = RockBlock::rouquier(3, 1).unwrap();
        assert_eq!(
            k_set(&b1, &CompositionVector(vec![0, 1, 0])).unwrap().len(),
            1
        );
        let total: usize = compositions(2, 3)
            .iter()
            .map(|a| k_set(&b, a).unwrap().len())
            .sum();
        assert_eq!(total, b.partitions().unwrap().len());
        // 3-multipartitions of 2
        assert_eq!(total, 9);
    }

    #[test]
    fn block_enumeration_matches_scan() {
        for (p, w) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
            let b = RockBlock::rouquier(p, w).unwrap();
            let mut scan = partitions_with_core(&b.core, p, w).unwrap();
            scan.sort_by(|x, y| y.cmp(x));
            assert_eq!(b.partitions().unwrap(), scan);
        }
    }
}
