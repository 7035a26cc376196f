//! Littlewood–Richardson coefficients by enumeration of LR skew tableaux.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partitions::{partitions_of, Partition};

/// λ/μ with μ ⊆ λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return invalid(format!("{inner} is not contained in {outer}"));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Cells of λ/μ, row by row, left to right.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (0..self.outer.len())
            .flat_map(|i| (self.inner.part(i)..self.outer.part(i)).map(move |j| (i, j)))
            .collect()
    }

    /// Whether the cells, after translation, form the diagram of `shape`.
    pub fn is_translate_of(&self, shape: &Partition) -> bool {
        let cells = self.cells();
        if cells.len() != shape.size() {
            return false;
        }
        let r0 = cells.iter().map(|c| c.0).min().unwrap_or(0);
        let c0 = cells.iter().map(|c| c.1).min().unwrap_or(0);
        let mut shifted: Vec<(usize, usize)> =
            cells.iter().map(|&(r, c)| (r - r0, c - c0)).collect();
        shifted.sort_unstable();
        let mut target: Vec<(usize, usize)> = shape.cells().collect();
        target.sort_unstable();
        shifted == target
    }
}

/// c(λ; μ, ν): the number of semistandard skew tableaux of shape λ/μ and
/// content ν whose reverse reading word is a lattice word.
pub fn lr_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    // reverse reading order: rows top to bottom, each row right to left
    let rows = lambda.len();
    let mut order = Vec::new();
    for i in 0..rows {
        for j in (mu.part(i)..lambda.part(i)).rev() {
            order.push((i, j));
        }
    }
    let width = lambda.part(0);
    let mut grid = vec![vec![0usize; width]; rows];
    let mut counts = vec![0usize; nu.len() + 1];
    let mut total = 0;
    fill(0, &order, mu, nu, &mut grid, &mut counts, &mut total);
    total
}

fn fill(
    pos: usize,
    order: &[(usize, usize)],
    mu: &Partition,
    nu: &Partition,
    grid: &mut [Vec<usize>],
    counts: &mut [usize],
    total: &mut u64,
) {
    if pos == order.len() {
        *total += 1;
        return;
    }
    let (i, j) = order[pos];
    // weakly increasing along the row: the cell to the right is already filled
    let hi = if j + 1 < grid[i].len() && grid[i][j + 1] != 0 {
        grid[i][j + 1]
    } else {
        nu.len()
    };
    // strictly increasing down columns
    let lo = if i > 0 && j >= mu.part(i - 1) {
        grid[i - 1][j] + 1
    } else {
        1
    };
    for k in lo..=hi {
        if counts[k] >= nu.part(k - 1) {
            continue;
        }
        if k > 1 && counts[k] + 1 > counts[k - 1] {
            continue;
        }
        counts[k] += 1;
        grid[i][j] = k;
        fill(pos + 1, order, mu, nu, grid, counts, total);
        grid[i][j] = 0;
        counts[k] -= 1;
    }
}

/// s_μ s_ν = Σ c(λ; μ, ν) s_λ, as a map λ ↦ multiplicity (only nonzero entries).
pub fn lr_expand(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, u64> {
    let n = mu.size() + nu.size();
    partitions_of(n)
        .into_iter()
        .filter(|l| l.contains(mu) && l.contains(nu))
        .filter_map(|l| {
            let c = lr_coeff(&l, mu, nu);
            (c > 0).then_some((l, c))
        })
        .collect()
}

/// Hook lengths, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<usize>> {
    let conj = lambda.conjugate();
    (0..lambda.len())
        .map(|i| {
            (0..lambda.part(i))
                .map(|j| (lambda.part(i) - j - 1) + (conj.part(j) - i - 1) + 1)
                .collect()
        })
        .collect()
}

/// Number of standard Young tableaux, by the hook length formula.
pub fn syt_count(lambda: &Partition) -> u128 {
    let n = lambda.size() as u128;
    let mut num: u128 = (1..=n).product();
    let mut den: u128 = 1;
    for h in hook_lengths(lambda).into_iter().flatten() {
        den *= h as u128;
        // keep the numbers small
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn coeff_examples() {
        let e = Partition::empty();
        assert_eq!(lr_coeff(&part("2,1"), &part("2,1"), &e), 1);
        assert_eq!(lr_coeff(&part("2,1"), &part("2"), &e), 0);
        assert_eq!(lr_coeff(&part("2,1"), &part("2"), &part("1")), 1);
        assert_eq!(lr_coeff(&part("3,2,1"), &part("2,1"), &part("2,1")), 2);
        assert_eq!(lr_coeff(&e, &e, &e), 1);
    }

    #[test]
    fn expand_examples() {
        let e = Partition::empty();
        let got: Vec<_> = lr_expand(&e, &part("2,1")).into_iter().collect();
        assert_eq!(got, vec![(part("2,1"), 1)]);
        let got = lr_expand(&part("1"), &part("1"));
        assert_eq!(got.len(), 2);
        assert_eq!(got[&part("2")], 1);
        assert_eq!(got[&part("1,1")], 1);
        let got = lr_expand(&part("2,1"), &part("1"));
        let keys: Vec<String> = got.keys().map(|k| k.to_string()).collect();
        assert_eq!(keys, vec!["2,1,1", "2,2", "3,1"]);
        assert!(got.values().all(|&c| c == 1));
    }

    #[test]
    fn syt_examples() {
        assert_eq!(syt_count(&part("4")), 1);
        assert_eq!(syt_count(&part("1,1,1,1")), 1);
        assert_eq!(syt_count(&part("2,1")), 2);
        assert_eq!(syt_count(&part("3,2")), 5);
        assert_eq!(hook_lengths(&part("2,1")), vec![vec![3, 1], vec![1]]);
    }

    #[test]
    fn skew_shape_hook() {
        let s = SkewShape::new(part("3,1"), part("1")).unwrap();
        assert_eq!(s.size(), 3);
        assert!(!s.is_translate_of(&part("2,1")));
        let s = SkewShape::new(part("2,2"), part("1")).unwrap();
        assert!(!s.is_translate_of(&part("2,1")));
        let s = SkewShape::new(part("2,1"), Partition::empty()).unwrap();
        assert!(s.is_translate_of(&part("2,1")));
        assert!(SkewShape::new(part("1"), part("2")).is_err());
    }
}
