//! The power-sum complex 𝒫_r(a): 0 → C_{1,r−1} → C_{2,r−2} → … → C_{r,0} → 0,
//! realized on weight bases of its graded pieces.
//!
//! C_{r₁,r₂} has the pieces Δ_{γ₁}(r₁,1^j) ⊗ E_{γ₂}^{⊗ r₂−j} in degree j and
//! Δ_{γ₁}(r₁−1,1^j) ⊗ E_{γ₂}^{⊗ r₂+1−j} in degree j+1. Each Δ piece is obtained
//! from Δ(a) ⊗ E^{⊗j} by discarding the constituents strictly above the hook
//! (a,1^j) in dominance, i.e. the quotient by the trace of ξ_{>(a,1^j)}.
//! The differential is the identity from the first family of C_{r₁,r₂} onto
//! the second family of C_{r₁+1,r₂−1}.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexReport, ModuleComplex};
use crate::doubles::Check;
use crate::error::{invalid, Result};
use crate::exactlin::integer_rank;
use crate::lr::lr_expand;
use crate::partitions::{compositions, dominance, Dominance, Partition};
use crate::schiver::Quiver;
use crate::weyl::{kostka, weyl_dim};

/// (x-weight, y-weight, internal degree) of a basis vector.
type WeightKey = (Vec<usize>, Vec<usize>, usize);

/// Monomial x^a y^b t^k.
type Monomial = (Vec<usize>, Vec<usize>, i64);

/// Polynomial in x_1..x_n, y_1..y_n and t^{±1} with integer coefficients.
/// Serialized as a list of terms, since JSON keys must be strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<CharacterTerm>", from = "Vec<CharacterTerm>")]
pub struct Character(pub BTreeMap<Monomial, i64>);

#[derive(Serialize, Deserialize)]
struct CharacterTerm {
    x: Vec<usize>,
    y: Vec<usize>,
    t: i64,
    coeff: i64,
}

impl From<Character> for Vec<CharacterTerm> {
    fn from(ch: Character) -> Self {
        ch.0.into_iter()
            .map(|((x, y, t), coeff)| CharacterTerm { x, y, t, coeff })
            .collect()
    }
}

impl From<Vec<CharacterTerm>> for Character {
    fn from(terms: Vec<CharacterTerm>) -> Self {
        let mut ch = Character::default();
        for t in terms {
            ch.add((t.x, t.y, t.t), t.coeff);
        }
        ch
    }
}

impl Character {
    fn add(&mut self, m: Monomial, c: i64) {
        let e = self.0.entry(m.clone()).or_default();
        *e += c;
        if *e == 0 {
            self.0.remove(&m);
        }
    }

    fn add_all(&mut self, other: &Character, scale: i64) {
        for (m, &c) in &other.0 {
            self.add(m.clone(), scale * c);
        }
    }

    /// Set t = 1.
    pub fn at_t_one(&self) -> Character {
        let mut out = Character::default();
        for ((x, y, _), &c) in &self.0 {
            out.add((x.clone(), y.clone(), 0), c);
        }
        out
    }
}

/// s_λ(x_1..x_n) t^k, from Kostka numbers.
pub fn schur_character(lambda: &Partition, n: usize, k: i64) -> Character {
    let mut ch = Character::default();
    for c in compositions(lambda.size(), n) {
        let m = kostka(lambda, &c.0);
        if m > 0 {
            ch.add((c.0, vec![0; n], k), m as i64);
        }
    }
    ch
}

/// p_r(x) = x_1^r + … + x_n^r.
pub fn power_sum(r: usize, n: usize) -> Character {
    let mut ch = Character::default();
    for i in 0..n {
        let mut x = vec![0; n];
        x[i] = r;
        ch.add((x, vec![0; n], 0), 1);
    }
    ch
}

/// The Δ-constituent left in Δ(a) ⊗ E^{⊗j} after discarding everything
/// strictly above (a,1^j); None unless exactly one constituent of multiplicity one survives.
pub fn truncated_constituent(a: usize, j: usize) -> Option<Partition> {
    let mut tensor: BTreeMap<Partition, u64> = BTreeMap::from([(Partition::row(a), 1)]);
    for _ in 0..j {
        let mut next = BTreeMap::new();
        for (lam, m) in &tensor {
            for (mu, c) in lr_expand(lam, &Partition::row(1)) {
                *next.entry(mu).or_default() += m * c;
            }
        }
        tensor = next;
    }
    // the hook (a,1^j), read as (1^j) when a = 0
    let hook = if a == 0 {
        Partition::column(j)
    } else {
        Partition::hook(a, j)
    };
    let left: Vec<(Partition, u64)> = tensor
        .into_iter()
        .filter(|(mu, _)| dominance(mu, &hook) != Ok(Dominance::Greater))
        .collect();
    match left.as_slice() {
        [(mu, 1)] if *mu == hook => Some(hook),
        _ => None,
    }
}

/// One graded piece Δ_{γ₁}(λ) ⊗ E_{γ₂}^{⊗m} in internal degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub lambda: Partition,
    pub tensor_power: usize,
    pub degree: usize,
}

/// C_{r₁,r₂}: the two families of pieces; `lower[j]` is the image family.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Term {
    pub r1: usize,
    pub r2: usize,
    pub upper: Vec<Piece>,
    pub lower: Vec<Piece>,
}

impl Term {
    fn build(r1: usize, r2: usize) -> Result<Self> {
        let mut upper = Vec::new();
        for j in 0..=r2 {
            let lambda = truncated_constituent(r1, j).ok_or_else(|| {
                crate::Error::Invariant(format!("Δ({r1})⊗E^{j} does not truncate to a hook"))
            })?;
            upper.push(Piece {
                lambda,
                tensor_power: r2 - j,
                degree: j,
            });
        }
        // nothing maps into C_{1,r−1}: the image family is empty there
        let mut lower = Vec::new();
        if r1 >= 2 {
            for j in 0..=r2 {
                let lambda = truncated_constituent(r1 - 1, j).ok_or_else(|| {
                    crate::Error::Invariant(format!(
                        "Δ({})⊗E^{j} does not truncate to a hook",
                        r1 - 1
                    ))
                })?;
                lower.push(Piece {
                    lambda,
                    tensor_power: r2 + 1 - j,
                    degree: j + 1,
                });
            }
        }
        Ok(Term {
            r1,
            r2,
            upper,
            lower,
        })
    }

    pub fn pieces(&self) -> impl Iterator<Item = &Piece> {
        self.upper.iter().chain(self.lower.iter())
    }
}

/// Weight basis vector of a piece: x-weight with its Kostka copy index, and a word in [n]^m.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct BasisVector {
    x: Vec<usize>,
    copy: usize,
    word: Vec<usize>,
}

impl BasisVector {
    fn y(&self, n: usize) -> Vec<usize> {
        let mut y = vec![0; n];
        for &i in &self.word {
            y[i] += 1;
        }
        y
    }
}

fn piece_basis(p: &Piece, n: usize) -> Vec<BasisVector> {
    let mut out = Vec::new();
    for c in compositions(p.lambda.size(), n) {
        for copy in 0..kostka(&p.lambda, &c.0) as usize {
            let words: Vec<Vec<usize>> = if p.tensor_power == 0 {
                vec![Vec::new()]
            } else {
                (0..p.tensor_power)
                    .map(|_| 0..n)
                    .multi_cartesian_product()
                    .collect()
            };
            for word in words {
                out.push(BasisVector {
                    x: c.0.clone(),
                    copy,
                    word,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PowerSumReport {
    pub n: usize,
    pub r: usize,
    pub edge: (usize, usize),
    pub terms: Vec<Term>,
    pub complex: ComplexReport,
    /// homology at position r₁−1 (the term C_{r₁,r₂}), by weight blocks
    pub homology_characters: Vec<Character>,
    /// internal degrees in which each homology is supported
    pub homology_degrees: Vec<Vec<usize>>,
    pub graded_euler: Character,
    pub checks: Vec<Check>,
}

impl PowerSumReport {
    pub fn passed(&self) -> bool {
        self.complex.d_squared_zero && self.checks.iter().all(|c| c.passed)
    }
}

/// Build 𝒫_r(a) for the edge `edge` of `quiver` and check its homology and
/// graded Euler characteristic. Characters are written in x (at the source
/// γ₁), y (at the tail γ₂) and t^{degree − position}.
pub fn power_sum_complex(
    quiver: &Quiver,
    edge: usize,
    n: usize,
    r: usize,
) -> Result<PowerSumReport> {
    let Some(&(g1, g2)) = quiver.edges.get(edge) else {
        return invalid(format!("the quiver has no edge {}", edge + 1));
    };
    if quiver.edges.iter().filter(|&&e| e == (g1, g2)).count() != 1 {
        return invalid("the edge must be the only arrow between its endpoints");
    }
    if g1 == g2 {
        return invalid("the edge must join two distinct vertices");
    }
    if r == 0 || n < r {
        return invalid(format!("need 1 ≤ r ≤ n, got n = {n}, r = {r}"));
    }

    let terms: Vec<Term> = (1..=r)
        .map(|r1| Term::build(r1, r - r1))
        .collect::<Result<_>>()?;

    // bases and the (piece, vector) → slot maps per position
    let mut bases: Vec<Vec<String>> = Vec::new();
    let mut meta: Vec<Vec<WeightKey>> = Vec::new();
    let mut slots: Vec<HashMap<(bool, usize, BasisVector), usize>> = Vec::new();
    for t in &terms {
        let (mut labels, mut m, mut slot) = (Vec::new(), Vec::new(), HashMap::new());
        for (lower, list) in [(false, &t.upper), (true, &t.lower)] {
            for (j, p) in list.iter().enumerate() {
                for v in piece_basis(p, n) {
                    slot.insert((lower, j, v.clone()), labels.len());
                    labels.push(format!(
                        "C{},{} Δ({})⊗E^{} x={:?}#{} w={:?}",
                        t.r1, t.r2, p.lambda, p.tensor_power, v.x, v.copy, v.word
                    ));
                    m.push((v.x.clone(), v.y(n), p.degree));
                }
            }
        }
        bases.push(labels);
        meta.push(m);
        slots.push(slot);
    }

    // d: upper family j of C_{r₁,r₂} onto lower family j of C_{r₁+1,r₂−1}
    let mut maps = Vec::new();
    for k in 0..terms.len().saturating_sub(1) {
        let mut m = vec![vec![0i64; bases[k + 1].len()]; bases[k].len()];
        for ((lower, j, v), &i) in &slots[k] {
            if *lower {
                continue;
            }
            if let Some(&t) = slots[k + 1].get(&(true, *j, v.clone())) {
                m[i][t] = 1;
            }
        }
        maps.push(m);
    }
    let complex = ModuleComplex::new(format!("power sum r={r} n={n}"), 0, 0, bases, maps)?;
    let report = complex.report()?;

    // homology by weight blocks (x, y, degree)
    type Block = (Vec<usize>, Vec<usize>, usize);
    let blocks = |k: usize| -> BTreeMap<Block, Vec<usize>> {
        let mut b: BTreeMap<Block, Vec<usize>> = BTreeMap::new();
        for (i, key) in meta[k].iter().enumerate() {
            b.entry(key.clone()).or_default().push(i);
        }
        b
    };
    let sub_rank = |k: usize, rows: &[usize], cols: &[usize]| -> Result<usize> {
        let m: Vec<Vec<i64>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| complex.maps[k][i][j]).collect())
            .collect();
        integer_rank(&m, 0)
    };
    let mut homology_characters = Vec::new();
    let mut homology_degrees = Vec::new();
    let all_blocks: Vec<BTreeMap<Block, Vec<usize>>> = (0..terms.len()).map(blocks).collect();
    for k in 0..terms.len() {
        let mut ch = Character::default();
        let mut degs = Vec::new();
        for ((x, y, g), rows) in &all_blocks[k] {
            let out = match all_blocks
                .get(k + 1)
                .and_then(|b| b.get(&(x.clone(), y.clone(), g + 1)))
            {
                Some(cols) => sub_rank(k, rows, cols)?,
                None => 0,
            };
            let inn = match (k.checked_sub(1), g.checked_sub(1)) {
                (Some(km), Some(gm)) => match all_blocks[km].get(&(x.clone(), y.clone(), gm)) {
                    Some(prev) => sub_rank(km, prev, rows)?,
                    None => 0,
                },
                _ => 0,
            };
            let h = rows.len() - out - inn;
            if h > 0 {
                ch.add((x.clone(), y.clone(), *g as i64 - k as i64), h as i64);
                degs.push(*g);
            }
        }
        degs.sort_unstable();
        degs.dedup();
        homology_characters.push(ch);
        homology_degrees.push(degs);
    }

    // graded Euler characteristic of the chain terms
    let mut graded_euler = Character::default();
    for (k, m) in meta.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for (x, y, g) in m {
            graded_euler.add((x.clone(), y.clone(), *g as i64 - k as i64), sign);
        }
    }

    let mut checks = Vec::new();
    let mut dims_fail = None;
    let mut char_fail = None;
    let mut deg_fail = None;
    for (k, t) in terms.iter().enumerate() {
        let hook = Partition::hook(t.r1, t.r2);
        let want = weyl_dim(&hook, n) as usize;
        if report.homology[k] != want {
            dims_fail.get_or_insert(format!(
                "C_{{{},{}}}: {} vs dim Δ({hook}) = {want}",
                t.r1, t.r2, report.homology[k]
            ));
        }
        let expect = schur_character(&hook, n, t.r2 as i64 - k as i64);
        if homology_characters[k] != expect {
            char_fail.get_or_insert(format!("C_{{{},{}}}", t.r1, t.r2));
        }
        if homology_degrees[k] != vec![t.r2] {
            deg_fail.get_or_insert(format!(
                "C_{{{},{}}}: degrees {:?}",
                t.r1, t.r2, homology_degrees[k]
            ));
        }
    }
    checks.push(Check::from(
        "homology dimension = dim Δ(r₁,1^{r₂})",
        dims_fail,
    ));
    checks.push(Check::from("homology character = s_(r₁,1^{r₂})", char_fail));
    checks.push(Check::from(
        "homology concentrated in one internal degree",
        deg_fail,
    ));

    // (−1)^{r−1} Σ_k (−1)^k t^{2k+1−r} s_{(r−k,1^k)}
    let mut hooks = Character::default();
    for k in 0..r {
        let sign = if (r - 1 + k).is_multiple_of(2) { 1 } else { -1 };
        hooks.add_all(
            &schur_character(&Partition::hook(r - k, k), n, 2 * k as i64 + 1 - r as i64),
            sign,
        );
    }
    checks.push(Check::from(
        "graded Euler characteristic = alternating hook sum",
        (graded_euler != hooks).then(|| "characters differ".to_string()),
    ));
    let mut pr = power_sum(r, n);
    if r.is_multiple_of(2) {
        pr = {
            let mut neg = Character::default();
            neg.add_all(&pr, -1);
            neg
        };
    }
    checks.push(Check::from(
        "Euler characteristic at t = 1 is ±p_r",
        (graded_euler.at_t_one() != pr).then(|| "not the power sum".to_string()),
    ));

    Ok(PowerSumReport {
        n,
        r,
        edge: (g1, g2),
        terms,
        complex: report,
        homology_characters,
        homology_degrees,
        graded_euler,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_json_round_trip() {
        let ch = schur_character(&Partition::hook(2, 1), 2, -1);
        let back: Character = serde_json::from_str(&serde_json::to_string(&ch).unwrap()).unwrap();
        assert_eq!(back, ch);
    }

    #[test]
    fn truncation_leaves_the_hook() {
        assert_eq!(truncated_constituent(2, 2), Some(Partition::hook(2, 2)));
        assert_eq!(truncated_constituent(0, 3), Some(Partition::column(3)));
        assert_eq!(truncated_constituent(1, 0), Some(Partition::row(1)));
    }

    #[test]
    fn r1_is_a_single_term() {
        let rep = power_sum_complex(&Quiver::linear(1), 0, 1, 1).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.complex.homology, vec![1]);
    }

    #[test]
    fn r2_homology_is_three_and_one() {
        let rep = power_sum_complex(&Quiver::linear(1), 0, 2, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
        // positions 0, 1 are C_{1,1}, C_{2,0}
        assert_eq!(rep.complex.homology, vec![1, 3]);
    }

    #[test]
    fn r3_passes() {
        let rep = power_sum_complex(&Quiver::linear(1), 0, 3, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn euler_at_one_is_the_power_sum() {
        for r in 1..=3 {
            let rep = power_sum_complex(&Quiver::linear(1), 0, r, r).unwrap();
            let sign = if r % 2 == 1 { 1 } else { -1 };
            let mut want = Character::default();
            want.add_all(&power_sum(r, r), sign);
            assert_eq!(rep.graded_euler.at_t_one(), want);
        }
    }

    #[test]
    fn bad_edges_are_rejected() {
        assert!(power_sum_complex(&Quiver::linear(1), 1, 2, 2).is_err());
        assert!(
            power_sum_complex(&Quiver::new(2, vec![(0, 1), (0, 1)]).unwrap(), 0, 2, 2).is_err()
        );
        assert!(power_sum_complex(&Quiver::linear(1), 0, 1, 2).is_err());
    }
}
