use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{invalid, Error, Result};

/// Beads at the β-numbers λ_i + m − i, i = 1..m, on an abacus with p runners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbacusConfig {
    pub p: usize,
    pub m: usize,
    /// β-numbers, strictly decreasing.
    pub beads: Vec<usize>,
}

impl AbacusConfig {
    pub fn from_beads(p: usize, mut beads: Vec<usize>) -> Result<Self> {
        if p < 2 {
            return invalid("an abacus needs at least 2 runners");
        }
        beads.sort_unstable_by(|a, b| b.cmp(a));
        if beads.windows(2).any(|w| w[0] == w[1]) {
            return invalid("beads must be distinct");
        }
        Ok(AbacusConfig {
            p,
            m: beads.len(),
            beads,
        })
    }

    /// Rows occupied on runner `s`, ascending.
    pub fn runner_rows(&self, s: usize) -> Vec<usize> {
        let mut rows: Vec<usize> = self
            .beads
            .iter()
            .filter(|&&b| b % self.p == s)
            .map(|&b| b / self.p)
            .collect();
        rows.sort_unstable();
        rows
    }

    pub fn runner_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.p];
        for &b in &self.beads {
            c[b % self.p] += 1;
        }
        c
    }

    pub fn decode(&self) -> Partition {
        let m = self.m;
        let parts = self
            .beads
            .iter()
            .enumerate()
            .map(|(i, &b)| b + i + 1 - m)
            .collect();
        Partition::new(parts).expect("β-numbers decode to a partition")
    }

    /// Runners as columns, '●' for a bead and '·' for a gap.
    pub fn render(&self) -> String {
        let max_row = self.beads.first().map_or(0, |b| b / self.p);
        let mut out = String::new();
        let header: Vec<String> = (0..self.p).map(|s| s.to_string()).collect();
        out.push_str(&header.join(" "));
        out.push('\n');
        for t in 0..=max_row {
            let row: Vec<&str> = (0..self.p)
                .map(|s| {
                    if self.beads.contains(&(t * self.p + s)) {
                        "●"
                    } else {
                        "·"
                    }
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn abacus_of(lambda: &Partition, p: usize, m: usize) -> Result<AbacusConfig> {
    if p < 2 {
        return invalid(format!("p must be at least 2, got {p}"));
    }
    if m < lambda.len() {
        return invalid(format!(
            "bead count {m} is smaller than the number of parts of {lambda}"
        ));
    }
    let beads = (0..m).map(|i| lambda.part(i) + m - 1 - i).collect();
    Ok(AbacusConfig { p, m, beads })
}

fn push_up(ab: &AbacusConfig) -> AbacusConfig {
    let counts = ab.runner_counts();
    let beads = counts
        .iter()
        .enumerate()
        .flat_map(|(s, &c)| (0..c).map(move |t| t * ab.p + s))
        .collect();
    AbacusConfig::from_beads(ab.p, beads).expect("distinct positions")
}

pub fn p_core(lambda: &Partition, p: usize) -> Result<Partition> {
    let m = lambda.len();
    let core = push_up(&abacus_of(lambda, p, m)?).decode();
    let again = push_up(&abacus_of(lambda, p, m + p)?).decode();
    if core != again {
        return Err(Error::Invariant(format!(
            "{p}-core of {lambda} depends on the bead count"
        )));
    }
    Ok(core)
}

pub fn p_weight(lambda: &Partition, p: usize) -> Result<usize> {
    let core = p_core(lambda, p)?;
    Ok((lambda.size() - core.size()) / p)
}

/// Components [λ⁰, …, λ^{p−1}] together with the core and the bead count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PQuotient {
    pub p: usize,
    pub components: Vec<Partition>,
    pub core: Partition,
    pub m: usize,
}

impl PQuotient {
    pub fn weight(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    /// λ⁰ = ∅
    pub fn is_regular(&self) -> bool {
        self.components.first().is_none_or(Partition::is_empty)
    }
}

/// Serializes only the components, as "[a|b|c]" with "-" for ∅.
pub struct QuotientComponents<'a>(pub &'a [Partition]);

impl fmt::Display for QuotientComponents<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", s.join("|"))
    }
}

impl fmt::Display for PQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        QuotientComponents(&self.components).fmt(f)
    }
}

/// Parses "[a|b|c]" into its components.
pub fn parse_components(s: &str) -> Result<Vec<Partition>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("quotient {s:?} must look like [a|b|c]")))?;
    inner.split('|').map(Partition::from_str).collect()
}

pub fn p_quotient(lambda: &Partition, p: usize, m: usize) -> Result<PQuotient> {
    let ab = abacus_of(lambda, p, m)?;
    let components = (0..p)
        .map(|s| {
            let rows = ab.runner_rows(s);
            let c = rows.len();
            // the k-th lowest bead (k = 0-based) has c−1−k beads above it
            let parts = rows
                .iter()
                .rev()
                .enumerate()
                .map(|(k, &t)| t - (c - 1 - k))
                .collect();
            Partition::new(parts).expect("gap counts are weakly decreasing")
        })
        .collect();
    let core = push_up(&ab).decode();
    Ok(PQuotient {
        p,
        components,
        core,
        m,
    })
}

fn is_p_core(core: &Partition, p: usize) -> Result<bool> {
    Ok(p_core(core, p)? == *core)
}

pub fn reconstruct(
    core: &Partition,
    components: &[Partition],
    p: usize,
    m: usize,
) -> Result<Partition> {
    if p < 2 {
        return invalid(format!("p must be at least 2, got {p}"));
    }
    if components.len() != p {
        return invalid(format!(
            "expected {p} quotient components, got {}",
            components.len()
        ));
    }
    if !is_p_core(core, p)? {
        return invalid(format!("{core} is not a {p}-core"));
    }
    let counts = abacus_of(core, p, m)?.runner_counts();
    let mut beads = Vec::with_capacity(m);
    for (s, comp) in components.iter().enumerate() {
        let c = counts[s];
        if comp.len() > c {
            return invalid(format!(
                "component {s} = {comp} has more parts than the {c} beads on runner {s} (increase m)"
            ));
        }
        for k in 0..c {
            let row = (c - 1 - k) + comp.part(k);
            beads.push(row * p + s);
        }
    }
    Ok(AbacusConfig::from_beads(p, beads)?.decode())
}

pub fn rouquier_core(p: usize, w: usize) -> Result<Partition> {
    if p < 2 {
        return invalid(format!("p must be at least 2, got {p}"));
    }
    if w <= 1 {
        return Ok(Partition::empty());
    }
    let beads = (0..p)
        .flat_map(|s| (0..s * (w - 1)).map(move |t| t * p + s))
        .collect();
    Ok(AbacusConfig::from_beads(p, beads)?.decode())
}

pub fn is_rouquier(tau: &Partition, p: usize, w: usize) -> Result<bool> {
    if !is_p_core(tau, p)? {
        return invalid(format!("{tau} is not a {p}-core"));
    }
    let need = w as i64 - 1;
    let base = tau.len();
    for m in base..base + p {
        let c = abacus_of(tau, p, m)?.runner_counts();
        if (1..p).all(|i| c[i] as i64 - c[i - 1] as i64 >= need) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn abacus_examples() {
        let ab = abacus_of(&part("4,1"), 3, 2).unwrap();
        assert_eq!(ab.beads, vec![5, 1]);
        let ab = abacus_of(&Partition::empty(), 2, 3).unwrap();
        assert_eq!(ab.beads, vec![2, 1, 0]);
        assert!(abacus_of(&part("2,1,1"), 3, 2).is_err());
    }

    #[test]
    fn core_examples() {
        assert_eq!(
            p_core(&part("6,4,2,2,1,1"), 3).unwrap(),
            part("6,4,2,2,1,1")
        );
        assert_eq!(p_core(&part("3"), 3).unwrap(), Partition::empty());
        assert_eq!(p_core(&part("4,1"), 3).unwrap(), part("1,1"));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(p_weight(&part("6,4,2,2,1,1"), 3).unwrap(), 0);
        assert_eq!(p_weight(&part("3"), 3).unwrap(), 1);
        assert_eq!(p_weight(&part("9,4,2,2,1,1"), 3).unwrap(), 1);
    }

    #[test]
    fn quotient_examples() {
        let q = p_quotient(&part("9,4,2,2,1,1"), 3, 15).unwrap();
        assert_eq!(q.to_string(), "[-|-|1]");
        assert_eq!(q.core, part("6,4,2,2,1,1"));
        let q = p_quotient(&part("4,1"), 3, 2).unwrap();
        assert_eq!(q.weight(), 1);
        let q = p_quotient(&part("6,4,2,2,1,1"), 3, 7).unwrap();
        assert!(q.components.iter().all(Partition::is_empty));
    }

    #[test]
    fn reconstruct_examples() {
        let core = part("6,4,2,2,1,1");
        let comps = vec![Partition::empty(), Partition::empty(), part("1")];
        assert_eq!(
            reconstruct(&core, &comps, 3, 15).unwrap(),
            part("9,4,2,2,1,1")
        );
        let lam = reconstruct(&part("1"), &[part("1"), Partition::empty()], 2, 3).unwrap();
        assert_eq!(lam, part("1,1,1"));
        assert_eq!(p_core(&lam, 2).unwrap(), part("1"));
        assert!(reconstruct(&part("2"), &[Partition::empty(), Partition::empty()], 2, 2).is_err());
    }

    #[test]
    fn rouquier_examples() {
        assert_eq!(rouquier_core(3, 3).unwrap(), part("6,4,2,2,1,1"));
        assert_eq!(rouquier_core(2, 2).unwrap(), part("1"));
        assert_eq!(rouquier_core(4, 1).unwrap(), Partition::empty());
        assert!(is_rouquier(&part("6,4,2,2,1,1"), 3, 3).unwrap());
        assert!(is_rouquier(&Partition::empty(), 5, 1).unwrap());
        assert!(!is_rouquier(&part("1"), 3, 3).unwrap());
        assert!(is_rouquier(&part("4,1"), 3, 3).is_err());
    }

    #[test]
    fn quotient_string_round_trip() {
        let comps = parse_components("[-|2,1|1]").unwrap();
        assert_eq!(QuotientComponents(&comps).to_string(), "[-|2,1|1]");
        assert!(parse_components("-|1").is_err());
    }
}
