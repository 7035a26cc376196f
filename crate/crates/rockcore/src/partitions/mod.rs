//! Partitions, abacus calculus and block combinatorics.

mod abacus;
mod block;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use abacus::{
    abacus_of, is_rouquier, p_core, p_quotient, p_weight, parse_components, reconstruct,
    rouquier_core, AbacusConfig, PQuotient, QuotientComponents,
};
pub use block::{
    block_partitions, canonical_beads, compositions, i_res, i_set, i_sing, j_set, k_set,
    quotient_vector, rock_mullineux, vector_dominance, CompositionVector, RockBlock,
};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("parts {parts:?} are not weakly decreasing"));
        }
        if parts.contains(&0) {
            return invalid("zero part in the middle of a partition");
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// (r)
    pub fn row(r: usize) -> Self {
        if r == 0 {
            Self::empty()
        } else {
            Partition(vec![r])
        }
    }

    /// (1^r)
    pub fn column(r: usize) -> Self {
        Partition(vec![1; r])
    }

    /// (a, 1^b); requires a ≥ 1 unless b = 0.
    pub fn hook(a: usize, b: usize) -> Self {
        let mut v = vec![a];
        v.extend(std::iter::repeat_n(1, b));
        Partition::new(v).expect("hook shape")
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// λ_i with 0-based i, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let n = self.part(0);
        Partition(
            (0..n)
                .map(|j| self.0.iter().filter(|&&x| x > j).count())
                .collect(),
        )
    }

    /// μ ⊆ λ: μ_i ≤ λ_i for all i.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// No part repeated p or more times.
    pub fn is_p_regular(&self, p: usize) -> bool {
        self.0.chunk_by(|a, b| a == b).all(|run| run.len() < p)
    }

    pub fn is_p_restricted(&self, p: usize) -> bool {
        self.conjugate().is_p_regular(p)
    }

    pub fn partial_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    /// Cells (row, col), 0-based, in reading order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (0..l).map(move |j| (i, j)))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?} in partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("zero part in partition {s:?}")));
        }
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Result of comparing two partitions of the same size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl fmt::Display for Dominance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dominance::Less => "less",
            Dominance::Equal => "equal",
            Dominance::Greater => "greater",
            Dominance::Incomparable => "incomparable",
        };
        write!(f, "{s}")
    }
}

/// Compare partial-sum sequences (missing entries repeat the last sum).
pub(crate) fn compare_partial_sums(a: &[i64], b: &[i64]) -> Dominance {
    let n = a.len().max(b.len());
    let at = |v: &[i64], i: usize| v.get(i).or(v.last()).copied().unwrap_or(0);
    let (mut le, mut ge) = (true, true);
    for i in 0..n {
        match at(a, i).cmp(&at(b, i)) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
    }
    match (le, ge) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Less,
        (false, true) => Dominance::Greater,
        (false, false) => Dominance::Incomparable,
    }
}

pub fn dominance(lambda: &Partition, mu: &Partition) -> Result<Dominance> {
    if lambda.size() != mu.size() {
        return invalid(format!(
            "dominance needs equal sizes, got |{lambda}| = {} and |{mu}| = {}",
            lambda.size(),
            mu.size()
        ));
    }
    let a: Vec<i64> = lambda
        .partial_sums()
        .into_iter()
        .map(|x| x as i64)
        .collect();
    let b: Vec<i64> = mu.partial_sums().into_iter().map(|x| x as i64).collect();
    Ok(compare_partial_sums(&a, &b))
}

/// λ ⊴ μ
pub fn dominated_by(lambda: &Partition, mu: &Partition) -> bool {
    matches!(
        dominance(lambda, mu),
        Ok(Dominance::Less) | Ok(Dominance::Equal)
    )
}

/// All partitions of n in reverse lexicographic order, (n) first.
/// Reverse lexicographic order is a linear extension of dominance.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of n with at most `max_len` parts.
pub fn partitions_with_at_most(n: usize, max_len: usize) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| p.len() <= max_len)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(part("6,4,2,2,1,1").to_string(), "6,4,2,2,1,1");
        assert_eq!(part("-"), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "-");
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,x".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
    }

    #[test]
    fn conjugate_involution() {
        for n in 0..10 {
            for p in partitions_of(n) {
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().size(), n);
            }
        }
        assert_eq!(part("3,1").conjugate(), part("2,1,1"));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(
            dominance(&part("2,1"), &part("3")).unwrap(),
            Dominance::Less
        );
        assert_eq!(
            dominance(&part("2,1"), &part("2,1")).unwrap(),
            Dominance::Equal
        );
        assert_eq!(
            dominance(&part("2,2"), &part("3,1")).unwrap(),
            Dominance::Less
        );
        assert_eq!(
            dominance(&part("3,1,1,1"), &part("2,2,2")).unwrap(),
            Dominance::Incomparable
        );
        assert!(dominance(&part("2"), &part("1")).is_err());
    }

    #[test]
    fn regularity() {
        assert!(!part("1,1").is_p_regular(2));
        assert!(part("2").is_p_regular(2));
        assert!(part("2").is_p_restricted(3));
        assert!(!part("2").is_p_restricted(2));
    }

    #[test]
    fn reverse_lex_extends_dominance() {
        for n in 1..9 {
            let ps = partitions_of(n);
            for (i, a) in ps.iter().enumerate() {
                for b in &ps[i + 1..] {
                    assert!(!dominated_by(a, b), "{a} before {b}");
                }
            }
        }
    }
}
