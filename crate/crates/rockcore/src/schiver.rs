//! Quivers, the path super-algebras P_Q(n), Schiver doubles
//! 𝒟_Q(n,r) = ⊕ S_Q(n,r₁) ⊗ 𝒜_{Q^op}(n,r₂) and the exchange maps between
//! them (edge reversal, and the involution θ of 𝒟_{A₁}).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::StructureAlgebra;
use crate::doubles::{verify_double, DoubleData, DoubleDegree, DoubleReport};
use crate::error::{invalid, Error, Result};
use crate::exactlin::{Field, PrimeField, Rationals};
use crate::superalg::{SchurSuperBialgebra, Sparse, SuperAlgebra};

/// A finite quiver; edge e runs from `edges[e].0` (source) to `edges[e].1` (tail).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A basis letter of P_Q(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Vertex { v: usize, i: usize, j: usize },
    Edge { e: usize, i: usize, j: usize },
}

impl Quiver {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return invalid("a quiver needs at least one vertex");
        }
        if let Some(&(s, t)) = edges.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return invalid(format!("edge {}>{} leaves the vertex set", s + 1, t + 1));
        }
        Ok(Quiver { vertices, edges })
    }

    pub fn point() -> Self {
        Quiver {
            vertices: 1,
            edges: Vec::new(),
        }
    }

    /// m+1 vertices and m edges i → i+1; A₁ is a single arrow.
    pub fn linear(m: usize) -> Self {
        Quiver {
            vertices: m + 1,
            edges: (0..m).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn opposite(&self) -> Self {
        Quiver {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    pub fn reverse_edge(&self, e: usize) -> Result<Self> {
        if e >= self.edges.len() {
            return invalid(format!("no edge {e}"));
        }
        let mut q = self.clone();
        let (s, t) = q.edges[e];
        q.edges[e] = (t, s);
        Ok(q)
    }

    /// No loops and at most one edge between any two vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|&(s, t)| s != t && seen.insert((s.min(t), s.max(t))))
    }

    pub fn letter_count(&self, n: usize) -> usize {
        n * n * (self.vertices + self.edges.len())
    }

    pub fn vertex_letter(&self, n: usize, v: usize, i: usize, j: usize) -> usize {
        v * n * n + i * n + j
    }

    pub fn edge_letter(&self, n: usize, e: usize, i: usize, j: usize) -> usize {
        (self.vertices + e) * n * n + i * n + j
    }

    pub fn decode(&self, n: usize, x: usize) -> Letter {
        let (block, ij) = (x / (n * n), x % (n * n));
        let (i, j) = (ij / n, ij % n);
        if block < self.vertices {
            Letter::Vertex { v: block, i, j }
        } else {
            Letter::Edge {
                e: block - self.vertices,
                i,
                j,
            }
        }
    }

    fn encode(&self, n: usize, l: Letter) -> usize {
        match l {
            Letter::Vertex { v, i, j } => self.vertex_letter(n, v, i, j),
            Letter::Edge { e, i, j } => self.edge_letter(n, e, i, j),
        }
    }

    /// P_Q(n): matrix units per vertex (even) and per edge (odd), with
    /// e_{s(e)}·e = e = e·e_{t(e)} and paths of length two set to zero.
    pub fn path_algebra(&self, n: usize) -> Result<SuperAlgebra> {
        if n == 0 {
            return invalid("P_Q(n) needs n ≥ 1");
        }
        let d = self.letter_count(n);
        let mut labels = Vec::with_capacity(d);
        let mut parity = Vec::with_capacity(d);
        for x in 0..d {
            match self.decode(n, x) {
                Letter::Vertex { v, i, j } => {
                    labels.push(format!("v{}[{}{}]", v + 1, i + 1, j + 1));
                    parity.push(0);
                }
                Letter::Edge { e, i, j } => {
                    labels.push(format!("e{}[{}{}]", e + 1, i + 1, j + 1));
                    parity.push(1);
                }
            }
        }
        let mut table = vec![Vec::new(); d * d];
        for x in 0..d {
            for y in 0..d {
                let prod = match (self.decode(n, x), self.decode(n, y)) {
                    (Letter::Vertex { v, i, j }, Letter::Vertex { v: v2, i: j2, j: k })
                        if v == v2 && j == j2 =>
                    {
                        Some(Letter::Vertex { v, i, j: k })
                    }
                    (Letter::Vertex { v, i, j }, Letter::Edge { e, i: j2, j: k })
                        if self.edges[e].0 == v && j == j2 =>
                    {
                        Some(Letter::Edge { e, i, j: k })
                    }
                    (Letter::Edge { e, i, j }, Letter::Vertex { v, i: j2, j: k })
                        if self.edges[e].1 == v && j == j2 =>
                    {
                        Some(Letter::Edge { e, i, j: k })
                    }
                    _ => None,
                };
                if let Some(l) = prod {
                    table[x * d + y] = vec![(self.encode(n, l), 1)];
                }
            }
        }
        SuperAlgebra::new(labels, parity, table)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.vertices)?;
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(s, t)| format!("{}>{}", s + 1, t + 1))
            .collect();
        write!(f, "{}", edges.join(","))
    }
}

/// `point`, `A<m>` (m+1 vertices in a line), or `V:s>t,s>t,…` with 1-based vertices.
impl FromStr for Quiver {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "point" {
            return Ok(Quiver::point());
        }
        if let Some(m) = s.strip_prefix('A').or_else(|| s.strip_prefix('a')) {
            let m = m
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad quiver {s:?}")))?;
            return Ok(Quiver::linear(m));
        }
        let (v, rest) = s.split_once(':').ok_or_else(|| {
            Error::Parse(format!("bad quiver {s:?}; expected point, A<m> or V:s>t,…"))
        })?;
        let vertices = v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad vertex count in {s:?}")))?;
        let mut edges = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once('>')
                .ok_or_else(|| Error::Parse(format!("bad edge {part:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&x| x >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad vertex in edge {part:?}")))
            };
            edges.push((parse(a)? - 1, parse(b)? - 1));
        }
        Quiver::new(vertices, edges)
    }
}

/// Which Z/2-invariants span the edge parts in characteristic 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum OddForm {
    /// literal Σ_r-fixed points; words with a repeated odd letter are fixed in characteristic 2
    #[default]
    Literal,
    /// the integral form spanned by words with distinct odd letters, reduced mod p;
    /// edge parts are exterior algebras in every characteristic
    Exterior,
}

/// 𝒟_Q(n, r) for r ≤ r_max, built as the pair double of (S_Q(n), S_{Q^op}(n))
/// with σ the transpose-and-reverse exchange of Q and Q^op.
#[derive(Clone, Debug)]
pub struct SchiverDouble {
    pub quiver: Quiver,
    pub n: usize,
    pub r_max: usize,
    pub characteristic: u64,
    pub form: OddForm,
    pub s: SchurSuperBialgebra,
    pub sop: SchurSuperBialgebra,
    pub data: Arc<DoubleData>,
}

impl SchiverDouble {
    pub fn new(quiver: Quiver, n: usize, r_max: usize, characteristic: u64) -> Result<Self> {
        Self::with_form(quiver, n, r_max, characteristic, OddForm::Literal)
    }

    pub fn with_form(
        quiver: Quiver,
        n: usize,
        r_max: usize,
        characteristic: u64,
        form: OddForm,
    ) -> Result<Self> {
        let op = quiver.opposite();
        let basis_char = match form {
            OddForm::Literal => characteristic,
            OddForm::Exterior => 0,
        };
        let s = SchurSuperBialgebra::new(quiver.path_algebra(n)?, r_max, basis_char)?;
        let sop = SchurSuperBialgebra::new(op.path_algebra(n)?, r_max, basis_char)?;
        let letter_map: Vec<Sparse> = (0..quiver.letter_count(n))
            .map(|x| {
                let y = match quiver.decode(n, x) {
                    Letter::Vertex { v, i, j } => op.vertex_letter(n, v, j, i),
                    Letter::Edge { e, i, j } => op.edge_letter(n, e, j, i),
                };
                vec![(y, 1)]
            })
            .collect();
        let sigma = s.reversed_map(&sop, &letter_map)?;
        let data = DoubleData::new(s.bialgebra.clone(), sop.bialgebra.clone(), sigma)?;
        Ok(SchiverDouble {
            quiver,
            n,
            r_max,
            characteristic,
            form,
            s,
            sop,
            data,
        })
    }

    pub fn degree(&self, r: usize) -> Result<DoubleDegree> {
        self.data.degree_piece(r)
    }

    pub fn verify(&self) -> Result<DoubleReport> {
        verify_double(
            &format!("schiver {} n={}", self.quiver, self.n),
            &self.data,
            self.r_max,
            self.characteristic,
        )
    }

    fn count(&self, word: &[usize]) -> (usize, usize) {
        let verts = word
            .iter()
            .filter(|&&x| matches!(self.quiver.decode(self.n, x), Letter::Vertex { .. }))
            .count();
        (verts, word.len() - verts)
    }

    /// (Σ b_e + Σ c_v, Σ c_v + Σ d_e) for a basis pair, where b counts edge
    /// letters of the S part, c vertex letters and d edge letters of the dual part.
    pub fn bidegree(&self, (a, al): (usize, usize)) -> (usize, usize) {
        let (_, b) = self.count(&self.s.words[a]);
        let (c, d) = self.count(&self.sop.words[al]);
        (b + c, c + d)
    }

    /// Σ b_e + 2Σ c_v + Σ d_e.
    pub fn total_degree(&self, pair: (usize, usize)) -> usize {
        let (x, y) = self.bidegree(pair);
        x + y
    }

    /// First basis pair of D(r) whose product leaves the sum of bidegrees.
    pub fn bigrading_failure(
        &self,
        piece: &DoubleDegree,
        alg: &StructureAlgebra,
    ) -> Option<(String, String)> {
        let n = piece.dim();
        let bideg: Vec<(usize, usize)> = piece.basis.iter().map(|&p| self.bidegree(p)).collect();
        for i in 0..n {
            for j in 0..n {
                let want = (bideg[i].0 + bideg[j].0, bideg[i].1 + bideg[j].1);
                if alg.mul(i, j).iter().any(|&(k, _)| bideg[k] != want) {
                    return Some((piece.label(i), piece.label(j)));
                }
            }
        }
        None
    }

    /// Compare the total-degree-zero part of D(r) with ⊗_v S(n, r_v),
    /// the latter built from independent copies of the classical S(n).
    pub fn degree_zero_failure(&self, r: usize) -> Result<Option<String>> {
        let piece = self.degree(r)?;
        let classical =
            SchurSuperBialgebra::new(SuperAlgebra::matrix_algebra(self.n), r, self.characteristic)?;
        let nv = self.quiver.vertices;
        // basis index of D(r) -> per-vertex classical word indices
        let mut zero: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut by_key: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, &p) in piece.basis.iter().enumerate() {
            if self.total_degree(p) != 0 {
                continue;
            }
            let mut split = vec![Vec::new(); nv];
            for &x in &self.s.words[p.0] {
                if let Letter::Vertex { v, i, j } = self.quiver.decode(self.n, x) {
                    split[v].push(i * self.n + j);
                }
            }
            let key = split
                .iter()
                .map(|w| classical.locate(w).map(|(k, _)| k))
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| Error::Invariant("vertex word missing from S(n)".into()))?;
            by_key.insert(key.clone(), i);
            zero.push((i, key));
        }
        let expected_dim: usize = crate::partitions::compositions(r, nv)
            .iter()
            .map(|c| {
                c.0.iter()
                    .map(|&rv| classical.bialgebra.pieces[rv].len())
                    .product::<usize>()
            })
            .sum();
        if zero.len() != expected_dim {
            return Ok(Some(format!(
                "degree-zero part has dimension {} instead of {expected_dim}",
                zero.len()
            )));
        }
        for (i, ki) in &zero {
            for (j, kj) in &zero {
                let mut got: HashMap<usize, i64> = HashMap::new();
                for (k, c) in piece.product(*i, *j)? {
                    *got.entry(k).or_default() += c;
                }
                let mut want: HashMap<Vec<usize>, i64> = HashMap::new();
                want.insert(Vec::new(), 1);
                for v in 0..nv {
                    let prods = classical.bialgebra.mul(ki[v], kj[v]);
                    let mut next = HashMap::new();
                    for (key, c) in &want {
                        for &(t, d) in prods {
                            let mut k2 = key.clone();
                            k2.push(t);
                            *next.entry(k2).or_default() += c * d;
                        }
                    }
                    want = next;
                }
                let mut want_idx: HashMap<usize, i64> = HashMap::new();
                for (key, c) in want {
                    if c != 0 {
                        *want_idx.entry(by_key[&key]).or_default() += c;
                    }
                }
                got.retain(|_, c| *c != 0);
                if got != want_idx {
                    return Ok(Some(format!("({}, {})", piece.label(*i), piece.label(*j))));
                }
            }
        }
        Ok(None)
    }
}

/// Choice of the exchange * between edge letters of S and of the dual part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct StarConvention {
    /// E_ij ↦ E_ji* rather than E_ij*
    pub transpose: bool,
    /// extra sign (−1)^{k(k−1)/2} on a block of k exchanged letters
    pub reversal_sign: bool,
}

impl StarConvention {
    pub const ALL: [StarConvention; 4] = [
        StarConvention {
            transpose: false,
            reversal_sign: false,
        },
        StarConvention {
            transpose: true,
            reversal_sign: false,
        },
        StarConvention {
            transpose: false,
            reversal_sign: true,
        },
        StarConvention {
            transpose: true,
            reversal_sign: true,
        },
    ];
}

/// Relabel vertices by `vperm` and exchange the S and dual letters of the
/// `flipped` edges. Target quiver: Q with vertices relabelled and those edges reversed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub vperm: Vec<usize>,
    pub flipped: Vec<bool>,
    pub star: StarConvention,
}

impl Exchange {
    /// The quiver this exchange maps Q onto.
    pub fn target(&self, q: &Quiver) -> Result<Quiver> {
        if self.vperm.len() != q.vertices || self.flipped.len() != q.edges.len() {
            return invalid("exchange data does not match the quiver");
        }
        let mut seen = vec![false; q.vertices];
        for &v in &self.vperm {
            if v >= q.vertices || std::mem::replace(&mut seen[v], true) {
                return invalid("vertex relabelling is not a permutation");
            }
        }
        let edges = q
            .edges
            .iter()
            .zip(&self.flipped)
            .map(|(&(s, t), &f)| {
                let (s, t) = (self.vperm[s], self.vperm[t]);
                if f {
                    (t, s)
                } else {
                    (s, t)
                }
            })
            .collect();
        Quiver::new(q.vertices, edges)
    }

    /// Reverse edge e and fix everything else.
    pub fn reversal(q: &Quiver, e: usize, star: StarConvention) -> Result<Self> {
        if e >= q.edges.len() {
            return invalid(format!("no edge {e}"));
        }
        let mut flipped = vec![false; q.edges.len()];
        flipped[e] = true;
        Ok(Exchange {
            vperm: (0..q.vertices).collect(),
            flipped,
            star,
        })
    }

    /// θ on 𝒟_{A₁}: swap the two vertices and exchange the edge letters.
    pub fn theta(star: StarConvention) -> Self {
        Exchange {
            vperm: vec![1, 0],
            flipped: vec![true],
            star,
        }
    }
}

fn parity_sign(exp: usize) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Koszul sign exponent for moving the odd edge blocks λ_1…λ_E ξ_1…ξ_E into
/// their exchanged places; for a single edge this is |λ||ξ|.
fn koszul_block_exponent<T>(se: &[Vec<T>], ae: &[Vec<T>], flipped: &[bool]) -> usize {
    let m = se.len();
    // blocks 0..m are the λ_e, m..2m the ξ_e
    let par = |b: usize| {
        if b < m {
            se[b].len() % 2
        } else {
            ae[b - m].len() % 2
        }
    };
    let mut new_order: Vec<usize> = (0..m).map(|e| if flipped[e] { m + e } else { e }).collect();
    new_order.extend((0..m).map(|e| if flipped[e] { e } else { m + e }));
    let mut exp = 0;
    for x in 0..new_order.len() {
        for y in x + 1..new_order.len() {
            if new_order[x] > new_order[y] {
                exp += par(new_order[x]) * par(new_order[y]);
            }
        }
    }
    exp
}

/// Image of one basis pair under an exchange: (target pair, sign).
pub fn exchange_image(
    src: &SchiverDouble,
    tgt: &SchiverDouble,
    ex: &Exchange,
    (a, al): (usize, usize),
) -> Result<((usize, usize), i64)> {
    let q = &src.quiver;
    let n = src.n;
    let tq = &tgt.quiver;
    let star = |i: usize, j: usize| if ex.star.transpose { (j, i) } else { (i, j) };
    let split = |word: &[usize]| {
        let mut verts = Vec::new();
        let mut edges = vec![Vec::new(); q.edges.len()];
        for &x in word {
            match q.decode(n, x) {
                Letter::Vertex { v, i, j } => verts.push((v, i, j)),
                Letter::Edge { e, i, j } => edges[e].push((i, j)),
            }
        }
        (verts, edges)
    };
    let (sv, se) = split(&src.s.words[a]);
    let (av, ae) = split(&src.sop.words[al]);
    let mut s_seq: Vec<usize> = sv
        .iter()
        .map(|&(v, i, j)| tq.vertex_letter(n, ex.vperm[v], i, j))
        .collect();
    let mut a_seq: Vec<usize> = av
        .iter()
        .map(|&(v, i, j)| tq.vertex_letter(n, ex.vperm[v], i, j))
        .collect();
    let mut exp = koszul_block_exponent(&se, &ae, &ex.flipped);
    for e in 0..q.edges.len() {
        if ex.flipped[e] {
            if ex.star.reversal_sign {
                exp += se[e].len() * se[e].len().saturating_sub(1) / 2;
                exp += ae[e].len() * ae[e].len().saturating_sub(1) / 2;
            }
            s_seq.extend(ae[e].iter().map(|&(i, j)| {
                let (i, j) = star(i, j);
                tq.edge_letter(n, e, i, j)
            }));
            a_seq.extend(se[e].iter().map(|&(i, j)| {
                let (i, j) = star(i, j);
                tq.edge_letter(n, e, i, j)
            }));
        } else {
            s_seq.extend(se[e].iter().map(|&(i, j)| tq.edge_letter(n, e, i, j)));
            a_seq.extend(ae[e].iter().map(|&(i, j)| tq.edge_letter(n, e, i, j)));
        }
    }
    let missing = || Error::Invariant("exchanged word is not a basis word of the target".into());
    let (ta, s1) = tgt.s.locate(&s_seq).ok_or_else(missing)?;
    let (tal, s2) = tgt.sop.locate(&a_seq).ok_or_else(missing)?;
    Ok(((ta, tal), parity_sign(exp) * s1 * s2))
}

/// Outcome of checking that an exchange is an algebra map on D(r).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapCheck {
    pub r: usize,
    pub dim: usize,
    pub bijective: bool,
    pub multiplicative: bool,
    /// only for maps of a double to itself
    pub involutive: Option<bool>,
    pub unit_preserved: bool,
    pub failure: Option<String>,
}

impl MapCheck {
    pub fn passed(&self) -> bool {
        self.bijective
            && self.multiplicative
            && self.involutive.unwrap_or(true)
            && self.unit_preserved
    }
}

fn reduce(c: i64, characteristic: u64) -> i64 {
    if characteristic == 0 {
        c
    } else {
        c.rem_euclid(characteristic as i64)
    }
}

fn reduced(m: HashMap<usize, i64>, characteristic: u64) -> Vec<(usize, i64)> {
    let mut v: Vec<(usize, i64)> = m
        .into_iter()
        .map(|(k, c)| (k, reduce(c, characteristic)))
        .filter(|&(_, c)| c != 0)
        .collect();
    v.sort_unstable();
    v
}

/// Exhaustive check of φ(xy) = φ(x)φ(y) on basis pairs of D(r), over the
/// characteristic the doubles were built for.
pub fn check_exchange(
    src: &SchiverDouble,
    tgt: &SchiverDouble,
    ex: &Exchange,
    r: usize,
) -> Result<MapCheck> {
    if ex.target(&src.quiver)? != tgt.quiver {
        return invalid("target double is not built on the exchanged quiver");
    }
    if src.n != tgt.n || src.characteristic != tgt.characteristic || src.form != tgt.form {
        return invalid("source and target doubles differ in n, characteristic or form");
    }
    let c = src.characteristic;
    let ps = src.degree(r)?;
    let pt = tgt.degree(r)?;
    let dim = ps.dim();
    let mut image = Vec::with_capacity(dim);
    for &p in &ps.basis {
        let (q, s) = exchange_image(src, tgt, ex, p)?;
        let k = *pt
            .index
            .get(&q)
            .ok_or_else(|| Error::Invariant("exchanged pair outside D(r)".into()))?;
        image.push((k, s));
    }
    let mut hit = vec![false; pt.dim()];
    for &(k, _) in &image {
        hit[k] = true;
    }
    let bijective = pt.dim() == dim && hit.iter().all(|&h| h);
    let same = src.quiver == tgt.quiver;
    let involutive = same.then(|| {
        (0..dim).all(|i| {
            let (k, s) = image[i];
            image[k].0 == i && reduce(s * image[k].1 - 1, c) == 0
        })
    });
    let sa = ps.structure()?;
    let ta = if same { None } else { Some(pt.structure()?) };
    let ta = ta.as_ref().unwrap_or(&sa);
    let mut failure = None;
    'outer: for i in 0..dim {
        for j in 0..dim {
            let mut lhs: HashMap<usize, i64> = HashMap::new();
            for &(k, v) in sa.mul(i, j) {
                *lhs.entry(image[k].0).or_default() += v * image[k].1;
            }
            let mut rhs: HashMap<usize, i64> = HashMap::new();
            let sign = image[i].1 * image[j].1;
            for &(k, v) in ta.mul(image[i].0, image[j].0) {
                *rhs.entry(k).or_default() += v * sign;
            }
            if reduced(lhs, c) != reduced(rhs, c) {
                failure = Some(format!("({}, {})", ps.label(i), ps.label(j)));
                break 'outer;
            }
        }
    }
    let multiplicative = failure.is_none();
    let unit_preserved = if c == 0 {
        unit_preserved(&sa, ta, &image, Rationals)
    } else {
        unit_preserved(&sa, ta, &image, PrimeField::new(c)?)
    };
    Ok(MapCheck {
        r,
        dim,
        bijective,
        multiplicative,
        involutive,
        unit_preserved,
        failure,
    })
}

fn unit_preserved<F: Field>(
    sa: &StructureAlgebra,
    ta: &StructureAlgebra,
    image: &[(usize, i64)],
    field: F,
) -> bool {
    let (Some(u), Some(v)) = (
        sa.over(field.clone()).find_unit(),
        ta.over(field.clone()).find_unit(),
    ) else {
        return false;
    };
    let mut mapped = vec![field.zero(); v.len()];
    for (i, x) in u.iter().enumerate() {
        let (k, s) = image[i];
        mapped[k] = field.mul(x, &field.from_i64(s));
    }
    mapped == v
}

/// θ on 𝒟_{A₁}(n, r) for every r ≤ r_max.
pub fn check_theta(
    n: usize,
    r_max: usize,
    characteristic: u64,
    form: OddForm,
    star: StarConvention,
) -> Result<Vec<MapCheck>> {
    let d = SchiverDouble::with_form(Quiver::linear(1), n, r_max, characteristic, form)?;
    let ex = Exchange::theta(star);
    (0..=r_max)
        .map(|r| check_exchange(&d, &d, &ex, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lr::binomial;

    #[test]
    fn quiver_parsing() {
        assert_eq!("A1".parse::<Quiver>().unwrap(), Quiver::linear(1));
        assert_eq!("point".parse::<Quiver>().unwrap(), Quiver::point());
        let q: Quiver = "3:1>2,3>2".parse().unwrap();
        assert_eq!(q.edges, vec![(0, 1), (2, 1)]);
        assert_eq!(q.to_string().parse::<Quiver>().unwrap(), q);
        assert!("2:1>3".parse::<Quiver>().is_err());
    }

    #[test]
    fn path_algebra_shape() {
        let q = Quiver::linear(2);
        let p = q.path_algebra(2).unwrap();
        assert_eq!(p.dim(), 4 * 5);
        assert!(p.is_associative());
        // odd · odd = 0
        for e in 0..2 {
            for f in 0..2 {
                let x = q.edge_letter(2, e, 0, 1);
                let y = q.edge_letter(2, f, 1, 0);
                assert!(p.mul(x, y).is_empty());
            }
        }
    }

    #[test]
    fn a1_schur_dimensions_count_multisets() {
        // P_{A₁}(1): two even letters, one odd letter
        let p = Quiver::linear(1).path_algebra(1).unwrap();
        let s = SchurSuperBialgebra::new(p.clone(), 3, 0).unwrap();
        for r in 0..=3usize {
            // multisets of size r from 2 even letters, plus one odd letter used at most once
            let want = (r + 1) + r;
            assert_eq!(s.bialgebra.pieces[r].len(), want);
            if r <= 3 {
                assert_eq!(
                    s.bialgebra.pieces[r].len(),
                    crate::superalg::fixed_point_dim(Rationals, &p, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn point_double_is_classical() {
        let d = SchiverDouble::new(Quiver::point(), 2, 2, 0).unwrap();
        for r in 0..=2usize {
            let want: u128 = (0..=r)
                .map(|k| {
                    binomial((4 + r - k - 1) as u128, (r - k) as u128)
                        * binomial((4 + k - 1) as u128, k as u128)
                })
                .sum();
            assert_eq!(d.degree(r).unwrap().dim() as u128, want);
        }
    }

    #[test]
    fn a1_double_verifies() {
        for c in [0, 2] {
            let d = SchiverDouble::new(Quiver::linear(1), 1, 2, c).unwrap();
            let rep = d.verify().unwrap();
            assert!(rep.passed(), "char {c}: {:?}", rep.failures());
            assert_eq!(rep.degrees[1].dim, 6);
            for r in 0..=2 {
                assert_eq!(d.degree_zero_failure(r).unwrap(), None);
                let piece = d.degree(r).unwrap();
                let alg = piece.structure().unwrap();
                assert_eq!(d.bigrading_failure(&piece, &alg), None);
            }
        }
    }

    #[test]
    fn theta_is_an_involutive_automorphism() {
        for c in [0, 2] {
            for n in 1..=2 {
                for check in
                    check_theta(n, 2, c, OddForm::Exterior, StarConvention::default()).unwrap()
                {
                    assert!(check.passed(), "n={n} char {c}: {check:?}");
                }
            }
        }
        for check in check_theta(1, 3, 0, OddForm::Literal, StarConvention::default()).unwrap() {
            assert!(check.passed(), "{check:?}");
        }
    }

    #[test]
    fn transposed_star_is_not_multiplicative() {
        let star = StarConvention {
            transpose: true,
            reversal_sign: false,
        };
        let checks = check_theta(2, 1, 0, OddForm::Literal, star).unwrap();
        assert!(!checks[1].multiplicative);
    }

    #[test]
    fn literal_char2_theta_breaks_on_repeated_odd_words() {
        let checks = check_theta(1, 2, 2, OddForm::Literal, StarConvention::default()).unwrap();
        assert!(checks[1].passed());
        assert!(!checks[2].multiplicative);
        let d = SchiverDouble::new(Quiver::linear(1), 1, 2, 2).unwrap();
        assert!(d.verify().unwrap().passed());
    }

    #[test]
    fn edge_reversal_is_multiplicative() {
        let quivers = ["A1", "A2", "3:1>2,3>2", "3:2>1,2>3", "3:1>2,2>3,3>1"];
        for q in quivers {
            let q: Quiver = q.parse().unwrap();
            let src = SchiverDouble::new(q.clone(), 1, 2, 0).unwrap();
            for e in 0..q.edges.len() {
                let ex = Exchange::reversal(&q, e, StarConvention::default()).unwrap();
                let tgt = SchiverDouble::new(ex.target(&q).unwrap(), 1, 2, 0).unwrap();
                for r in 0..=2 {
                    let check = check_exchange(&src, &tgt, &ex, r).unwrap();
                    assert!(check.passed(), "{q} edge {e} r={r}: {check:?}");
                }
            }
        }
    }
}
