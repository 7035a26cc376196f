//! Finite cochain complexes of based modules with integer differentials.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactlin::integer_rank;

/// C_start → C_{start+1} → … with maps[k]: C_{start+k} → C_{start+k+1}.
/// maps[k][i] is the image of the i-th basis vector, as a row over the next basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleComplex {
    pub name: String,
    pub characteristic: u64,
    pub start: i64,
    pub bases: Vec<Vec<String>>,
    pub maps: Vec<Vec<Vec<i64>>>,
}

/// Ranks and homology of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub name: String,
    pub characteristic: u64,
    pub start: i64,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub homology: Vec<usize>,
    pub d_squared_zero: bool,
}

impl ComplexReport {
    pub fn is_exact(&self) -> bool {
        self.homology.iter().all(|&h| h == 0)
    }

    /// rank(d_{k−1}) + rank(d_k) = dim C_k at every position.
    pub fn rank_accounting(&self) -> bool {
        (0..self.dims.len()).all(|k| {
            let before = if k == 0 { 0 } else { self.ranks[k - 1] };
            let after = self.ranks.get(k).copied().unwrap_or(0);
            before + after == self.dims[k]
        })
    }
}

fn reduce(c: i64, characteristic: u64) -> i64 {
    if characteristic == 0 {
        c
    } else {
        c.rem_euclid(characteristic as i64)
    }
}

impl ModuleComplex {
    pub fn new(
        name: impl Into<String>,
        characteristic: u64,
        start: i64,
        bases: Vec<Vec<String>>,
        maps: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if bases.is_empty() || maps.len() + 1 != bases.len() {
            return invalid("a complex with k terms needs k−1 maps");
        }
        for (k, m) in maps.iter().enumerate() {
            if m.len() != bases[k].len() || m.iter().any(|row| row.len() != bases[k + 1].len()) {
                return invalid(format!("map {k} does not match the term dimensions"));
            }
        }
        Ok(ModuleComplex {
            name: name.into(),
            characteristic,
            start,
            bases,
            maps,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// First k with d_{k+1} ∘ d_k ≠ 0 over the coefficient field.
    pub fn d_squared_failure(&self) -> Option<usize> {
        let c = self.characteristic;
        (0..self.maps.len().saturating_sub(1)).find(|&k| {
            let (a, b) = (&self.maps[k], &self.maps[k + 1]);
            a.iter().any(|row| {
                let mut out = vec![0i64; self.bases[k + 2].len()];
                for (j, &x) in row.iter().enumerate() {
                    if x != 0 {
                        for (t, &y) in b[j].iter().enumerate() {
                            out[t] = reduce(out[t] + x * y, c);
                        }
                    }
                }
                out.iter().any(|&v| reduce(v, c) != 0)
            })
        })
    }

    pub fn ranks(&self) -> Result<Vec<usize>> {
        self.maps
            .iter()
            .map(|m| integer_rank(m, self.characteristic))
            .collect()
    }

    pub fn report(&self) -> Result<ComplexReport> {
        let dims = self.dims();
        let ranks = self.ranks()?;
        let homology = (0..dims.len())
            .map(|k| {
                let before = if k == 0 { 0 } else { ranks[k - 1] };
                let after = ranks.get(k).copied().unwrap_or(0);
                dims[k] - before - after
            })
            .collect();
        Ok(ComplexReport {
            name: self.name.clone(),
            characteristic: self.characteristic,
            start: self.start,
            dims,
            ranks,
            homology,
            d_squared_zero: self.d_squared_failure().is_none(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_term_iso_is_exact() {
        let c = ModuleComplex::new(
            "k→k",
            0,
            0,
            vec![vec!["a".into()], vec!["b".into()]],
            vec![vec![vec![2]]],
        )
        .unwrap();
        let rep = c.report().unwrap();
        assert!(rep.is_exact() && rep.d_squared_zero);
        let c2 = ModuleComplex {
            characteristic: 2,
            ..c
        };
        assert_eq!(c2.report().unwrap().homology, vec![1, 1]);
    }

    #[test]
    fn shape_is_checked() {
        assert!(ModuleComplex::new(
            "bad",
            0,
            0,
            vec![vec!["a".into()], vec![]],
            vec![vec![vec![1]]]
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = ModuleComplex::new("k", 3, -1, vec![vec!["a".into()]], vec![]).unwrap();
        let back: ModuleComplex =
            serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
