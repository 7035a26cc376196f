//! Graded (super-)bialgebras and the double D(B) = B ⊗ B*.
//!
//! The double is built for a pair (B, B′, σ: B → B′) with basis a ⊗ α*,
//! a ∈ B and α* in the graded dual of B′. Taking B′ = B gives the classical
//! double. Taking B = S_Q(n), B′ = S_{Q^op}(n) gives the Schiver summand
//! S_Q(n) ⊗ 𝒜_{Q^op}(n) directly.
//!
//! Product: (a⊗α)(b⊗β) = Σ (−1)^s a₂b₁ ⊗ β₂α₁ ⟨σa₁, β₁⟩⟨α₂, σb₂⟩ with
//! s = |a₁|(|a₂|+|b₁|) + |b₁||α| + |α₁||β|. Form: ⟨a⊗α, b⊗β⟩ = ⟨σa, β⟩⟨α, σb⟩.
//! The dual structure: e_x* e_y* = Σ_u [e_x⊗e_y : Δe_u] e_u* and
//! Δ(e_u*) = Σ [e_u : e_x e_y] e_x*⊗e_y*, with ⟨e_u*, e_v⟩ = δ and no signs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{form_associativity_failure, FieldAlgebra, StructureAlgebra};
use crate::error::{invalid, Error, Result};
use crate::exactlin::{Field, Matrix, PrimeField, Rationals};
use crate::superalg::{SchurSuperBialgebra, Sparse, SuperAlgebra};

/// Finite pieces B(0), …, B(r_max) of a graded bialgebra with integer constants.
#[derive(Clone, Debug)]
pub struct GradedBialgebra {
    pub labels: Vec<String>,
    pub degree: Vec<usize>,
    pub parity: Vec<u8>,
    pub pieces: Vec<Vec<usize>>,
    product: HashMap<(usize, usize), Sparse>,
    coproduct: Vec<Vec<(usize, usize, i64)>>,
    /// Characteristic class the basis was built for (2 matters for odd letters).
    pub characteristic: u64,
}

impl GradedBialgebra {
    pub fn new(
        labels: Vec<String>,
        degree: Vec<usize>,
        parity: Vec<u8>,
        product: HashMap<(usize, usize), Sparse>,
        coproduct: Vec<Vec<(usize, usize, i64)>>,
        r_max: usize,
        characteristic: u64,
    ) -> Result<Self> {
        let n = labels.len();
        if degree.len() != n || parity.len() != n || coproduct.len() != n {
            return invalid("bialgebra tables do not match the basis size");
        }
        if degree.iter().any(|&d| d > r_max) {
            return invalid("basis element above the top degree");
        }
        let mut pieces = vec![Vec::new(); r_max + 1];
        for (i, &d) in degree.iter().enumerate() {
            pieces[d].push(i);
        }
        for (&(i, j), v) in &product {
            if degree[i] != degree[j] || v.iter().any(|&(k, _)| degree[k] != degree[i]) {
                return invalid(format!(
                    "product {} · {} leaves its degree",
                    labels[i], labels[j]
                ));
            }
        }
        for (u, cop) in coproduct.iter().enumerate() {
            if cop
                .iter()
                .any(|&(x, y, _)| degree[x] + degree[y] != degree[u])
            {
                return invalid(format!("coproduct of {} is not graded", labels[u]));
            }
        }
        Ok(GradedBialgebra {
            labels,
            degree,
            parity,
            pieces,
            product,
            coproduct,
            characteristic,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn r_max(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn mul(&self, i: usize, j: usize) -> &[(usize, i64)] {
        self.product.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn coproduct(&self, i: usize) -> &[(usize, usize, i64)] {
        &self.coproduct[i]
    }

    pub fn product_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Sparse)> {
        self.product.iter()
    }

    /// Associativity within each piece, coassociativity and the super
    /// compatibility Δ(ab) = Σ (−1)^{|a₂||b₁|} a₁b₁ ⊗ a₂b₂.
    pub fn check_structure(&self) -> Result<()> {
        for piece in &self.pieces {
            for &i in piece {
                for &j in piece {
                    for &k in piece {
                        let lhs = compose(self.mul(i, j), |m| self.mul(m, k).to_vec());
                        let rhs = compose(self.mul(j, k), |m| self.mul(i, m).to_vec());
                        if lhs != rhs {
                            return Err(Error::Invariant(format!(
                                "product not associative on ({}, {}, {})",
                                self.labels[i], self.labels[j], self.labels[k]
                            )));
                        }
                    }
                }
            }
        }
        for u in 0..self.dim() {
            let mut lhs: HashMap<(usize, usize, usize), i64> = HashMap::new();
            let mut rhs: HashMap<(usize, usize, usize), i64> = HashMap::new();
            for &(x, y, c) in self.coproduct(u) {
                for &(x1, x2, d) in self.coproduct(x) {
                    *lhs.entry((x1, x2, y)).or_default() += c * d;
                }
                for &(y1, y2, d) in self.coproduct(y) {
                    *rhs.entry((x, y1, y2)).or_default() += c * d;
                }
            }
            lhs.retain(|_, v| *v != 0);
            rhs.retain(|_, v| *v != 0);
            if lhs != rhs {
                return Err(Error::Invariant(format!(
                    "coproduct not coassociative at {}",
                    self.labels[u]
                )));
            }
        }
        for piece in &self.pieces {
            for &a in piece {
                for &b in piece {
                    let mut lhs: HashMap<(usize, usize), i64> = HashMap::new();
                    for &(k, c) in self.mul(a, b) {
                        for &(x, y, d) in self.coproduct(k) {
                            *lhs.entry((x, y)).or_default() += c * d;
                        }
                    }
                    let mut rhs: HashMap<(usize, usize), i64> = HashMap::new();
                    for &(a1, a2, c) in self.coproduct(a) {
                        for &(b1, b2, d) in self.coproduct(b) {
                            let sign = sign_of(self.parity[a2] as usize * self.parity[b1] as usize);
                            for &(x, e) in self.mul(a1, b1) {
                                for &(y, g) in self.mul(a2, b2) {
                                    *rhs.entry((x, y)).or_default() += sign * c * d * e * g;
                                }
                            }
                        }
                    }
                    lhs.retain(|_, v| *v != 0);
                    rhs.retain(|_, v| *v != 0);
                    if lhs != rhs {
                        return Err(Error::Invariant(format!(
                            "coproduct not multiplicative on ({}, {})",
                            self.labels[a], self.labels[b]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Δ = τ∘Δ with the super flip τ(x⊗y) = (−1)^{|x||y|} y⊗x.
    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim()).all(|u| {
            let mut m: HashMap<(usize, usize), i64> = HashMap::new();
            for &(x, y, c) in self.coproduct(u) {
                *m.entry((x, y)).or_default() += c;
                let s = sign_of(self.parity[x] as usize * self.parity[y] as usize);
                *m.entry((y, x)).or_default() -= s * c;
            }
            m.values().all(|v| *v == 0)
        })
    }
}

fn sign_of(exp: usize) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn compose<G: Fn(usize) -> Sparse>(v: &[(usize, i64)], g: G) -> Vec<(usize, i64)> {
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for &(m, c) in v {
        for (k, d) in g(m) {
            *acc.entry(k).or_default() += c * d;
        }
    }
    let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort_unstable();
    out
}

/// The inputs (B, B′, σ) of a double, with the dual structure precomputed.
#[derive(Debug)]
pub struct DoubleData {
    pub b: GradedBialgebra,
    pub bp: GradedBialgebra,
    /// σ(e_a) in the basis of B′
    pub sigma: Vec<Sparse>,
    sigma_coef: HashMap<(usize, usize), i64>,
    /// Δ(e_u*) = Σ c e_x* ⊗ e_y*
    dual_cop: Vec<Vec<(usize, usize, i64)>>,
    /// e_x* e_y* = Σ c e_u*
    dual_prod: HashMap<(usize, usize), Sparse>,
}

impl DoubleData {
    pub fn new(b: GradedBialgebra, bp: GradedBialgebra, sigma: Vec<Sparse>) -> Result<Arc<Self>> {
        if sigma.len() != b.dim() {
            return invalid("σ must be given on every basis element of B");
        }
        if b.r_max() != bp.r_max() {
            return invalid("B and B′ must be truncated at the same degree");
        }
        let mut sigma_coef = HashMap::new();
        for (a, img) in sigma.iter().enumerate() {
            for &(t, c) in img {
                if bp.degree[t] != b.degree[a] || bp.parity[t] != b.parity[a] {
                    return invalid(format!("σ({}) changes degree or parity", b.labels[a]));
                }
                sigma_coef.insert((a, t), c);
            }
        }
        let mut dual_cop = vec![Vec::new(); bp.dim()];
        for (&(x, y), v) in bp.product_entries() {
            for &(u, c) in v {
                dual_cop[u].push((x, y, c));
            }
        }
        for v in dual_cop.iter_mut() {
            v.sort_unstable();
        }
        let mut dual_prod: HashMap<(usize, usize), Sparse> = HashMap::new();
        for u in 0..bp.dim() {
            for &(x, y, c) in bp.coproduct(u) {
                dual_prod.entry((x, y)).or_default().push((u, c));
            }
        }
        Ok(Arc::new(DoubleData {
            b,
            bp,
            sigma,
            sigma_coef,
            dual_cop,
            dual_prod,
        }))
    }

    fn sig(&self, a: usize, t: usize) -> i64 {
        self.sigma_coef.get(&(a, t)).copied().unwrap_or(0)
    }

    /// (a⊗α)(b⊗β) as a map (basis of B, basis of B′) → coefficient.
    pub fn pair_product(
        &self,
        (a, al): (usize, usize),
        (b, be): (usize, usize),
    ) -> HashMap<(usize, usize), i64> {
        let pb = |x: usize| self.b.parity[x] as usize;
        let pp = |x: usize| self.bp.parity[x] as usize;
        let deg_al = self.bp.degree[al];
        let deg_be = self.bp.degree[be];
        let mut out: HashMap<(usize, usize), i64> = HashMap::new();
        for &(a1, a2, ca) in self.b.coproduct(a) {
            if self.b.degree[a1] != deg_be {
                continue;
            }
            for &(be1, be2, cbe) in &self.dual_cop[be] {
                let p1 = self.sig(a1, be1);
                if p1 == 0 {
                    continue;
                }
                for &(al1, al2, cal) in &self.dual_cop[al] {
                    for &(b1, b2, cb) in self.b.coproduct(b) {
                        if self.b.degree[b2] != deg_al || self.b.degree[b1] != self.b.degree[a2] {
                            continue;
                        }
                        let p2 = self.sig(b2, al2);
                        if p2 == 0 {
                            continue;
                        }
                        let s = pb(a1) * (pb(a2) + pb(b1)) + pb(b1) * pp(al) + pp(al1) * pp(be);
                        let coeff = sign_of(s) * ca * cbe * cal * cb * p1 * p2;
                        let Some(right) = self.dual_prod.get(&(be2, al1)) else {
                            continue;
                        };
                        for &(k, c1) in self.b.mul(a2, b1) {
                            for &(u, c2) in right {
                                *out.entry((k, u)).or_default() += coeff * c1 * c2;
                            }
                        }
                    }
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// ⟨a⊗α, b⊗β⟩ = ⟨σa, β⟩⟨α, σb⟩
    pub fn pair_form(&self, (a, al): (usize, usize), (b, be): (usize, usize)) -> i64 {
        self.sig(a, be) * self.sig(b, al)
    }

    pub fn degree_piece(self: &Arc<Self>, r: usize) -> Result<DoubleDegree> {
        if r > self.b.r_max() {
            return invalid(format!(
                "degree {r} exceeds the truncation {}",
                self.b.r_max()
            ));
        }
        let mut basis = Vec::new();
        for d in 0..=r {
            for &a in &self.b.pieces[r - d] {
                for &al in &self.bp.pieces[d] {
                    basis.push((a, al));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(DoubleDegree {
            data: Arc::clone(self),
            r,
            basis,
            index,
        })
    }
}

/// D(r) = ⊕_d B(r−d) ⊗ B′*(d).
#[derive(Clone, Debug)]
pub struct DoubleDegree {
    pub data: Arc<DoubleData>,
    pub r: usize,
    pub basis: Vec<(usize, usize)>,
    pub index: HashMap<(usize, usize), usize>,
}

impl DoubleDegree {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self, i: usize) -> String {
        let (a, al) = self.basis[i];
        format!("{}⊗{}*", self.data.b.labels[a], self.data.bp.labels[al])
    }

    /// d with e_i ∈ B(r−d)⊗B′*(d)
    pub fn grade(&self, i: usize) -> usize {
        self.data.bp.degree[self.basis[i].1]
    }

    pub fn parity(&self, i: usize) -> u8 {
        let (a, al) = self.basis[i];
        (self.data.b.parity[a] + self.data.bp.parity[al]) % 2
    }

    pub fn product(&self, i: usize, j: usize) -> Result<Sparse> {
        let prod = self.data.pair_product(self.basis[i], self.basis[j]);
        let mut out = Vec::with_capacity(prod.len());
        for (p, c) in prod {
            let k = *self.index.get(&p).ok_or_else(|| {
                Error::Invariant(format!(
                    "product of {} and {} leaves D({})",
                    self.label(i),
                    self.label(j),
                    self.r
                ))
            })?;
            out.push((k, c));
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn structure(&self) -> Result<StructureAlgebra> {
        let n = self.dim();
        StructureAlgebra::from_fn(
            (0..n).map(|i| self.label(i)).collect(),
            (0..n).map(|i| self.parity(i)).collect(),
            (0..n).map(|i| self.grade(i)).collect(),
            |i, j| self.product(i, j),
        )
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.data.pair_form(self.basis[i], self.basis[j]))
                    .collect()
            })
            .collect()
    }

    /// Index of a ⊗ ε where ε is the basis of B′(0).
    pub fn degree_zero_index(&self, a: usize) -> Option<usize> {
        let eps = *self.data.bp.pieces[0].first()?;
        self.index.get(&(a, eps)).copied()
    }
}

/// A named double: classical presets or an explicit pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    /// S(1)
    S1,
    /// k ⊕ T_n
    Tri(usize),
    /// S(n) with the transpose
    Schur(usize),
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse_n = |t: &str| {
            t.parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Parse(format!("bad size in preset {s:?}")))
        };
        match s.split_once(':') {
            None if s == "s1" => Ok(Preset::S1),
            Some(("tri", n)) => Ok(Preset::Tri(parse_n(n)?)),
            Some(("schur", n)) => Ok(Preset::Schur(parse_n(n)?)),
            _ => Err(Error::Parse(format!(
                "unknown preset {s:?}; expected s1, tri:n or schur:n"
            ))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::S1 => write!(f, "s1"),
            Preset::Tri(n) => write!(f, "tri:{n}"),
            Preset::Schur(n) => write!(f, "schur:{n}"),
        }
    }
}

impl Preset {
    /// Build the preset up to degree r_max. k ⊕ T_n only has degrees 0 and 1.
    pub fn build(&self, r_max: usize, characteristic: u64) -> Result<Arc<DoubleData>> {
        match *self {
            Preset::S1 => schur_double_data(1, r_max, characteristic),
            Preset::Schur(n) => schur_double_data(n, r_max, characteristic),
            Preset::Tri(n) => {
                if r_max > 1 {
                    return invalid("k ⊕ T_n lives in degrees 0 and 1");
                }
                let (b, sigma) = triangular_bialgebra(n)?;
                DoubleData::new(b.clone(), b, sigma)
            }
        }
    }
}

/// Transpose on n×n matrix units.
pub fn transpose_letters(n: usize) -> Vec<Sparse> {
    (0..n * n)
        .map(|ij| vec![((ij % n) * n + ij / n, 1)])
        .collect()
}

/// D(S(n)) with σ = transpose.
pub fn schur_double_data(n: usize, r_max: usize, characteristic: u64) -> Result<Arc<DoubleData>> {
    let s = SchurSuperBialgebra::new(SuperAlgebra::matrix_algebra(n), r_max, characteristic)?;
    let sigma = s.reversed_map(&s, &transpose_letters(n))?;
    DoubleData::new(s.bialgebra.clone(), s.bialgebra, sigma)
}

/// k ⊕ T_n: ε in degree 0, upper triangular matrix units in degree 1,
/// Δx = x⊗ε + ε⊗x, σ(E_ij) = E_{n−j+1, n−i+1}.
pub fn triangular_bialgebra(n: usize) -> Result<(GradedBialgebra, Vec<Sparse>)> {
    if n == 0 {
        return invalid("T_n needs n ≥ 1");
    }
    let mut labels = vec!["ε".to_string()];
    let mut units = Vec::new();
    for i in 0..n {
        for j in i..n {
            labels.push(format!("E{}{}", i + 1, j + 1));
            units.push((i, j));
        }
    }
    let idx: HashMap<(usize, usize), usize> =
        units.iter().enumerate().map(|(k, &u)| (u, k + 1)).collect();
    let mut product = HashMap::new();
    product.insert((0, 0), vec![(0, 1)]);
    for (&(i, j), &x) in &idx {
        for (&(j2, k), &y) in &idx {
            if j == j2 {
                product.insert((x, y), vec![(idx[&(i, k)], 1)]);
            }
        }
    }
    let mut coproduct = vec![vec![(0, 0, 1)]];
    for k in 1..labels.len() {
        let mut v = vec![(k, 0, 1), (0, k, 1)];
        v.sort_unstable();
        coproduct.push(v);
    }
    let dim = labels.len();
    let mut degree = vec![1; dim];
    degree[0] = 0;
    let mut sigma = vec![vec![(0, 1)]];
    for &(i, j) in &units {
        sigma.push(vec![(idx[&(n - 1 - j, n - 1 - i)], 1)]);
    }
    let b = GradedBialgebra::new(labels, degree, vec![0; dim], product, coproduct, 1, 0)?;
    Ok((b, sigma))
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    pub(crate) fn ok(name: &str) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: None,
        }
    }
    pub(crate) fn from(name: &str, failure: Option<String>) -> Self {
        Check {
            name: name.into(),
            passed: failure.is_none(),
            detail: failure,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeReport {
    pub r: usize,
    pub dim: usize,
    pub sigma_invertible: bool,
    /// smallest k with 𝒩(r)^k = 0
    pub nilpotency_index: Option<usize>,
    pub unit: Option<Vec<(String, String)>>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleReport {
    pub name: String,
    pub characteristic: u64,
    pub degrees: Vec<DegreeReport>,
}

impl DoubleReport {
    pub fn passed(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.checks.iter().all(|c| c.passed))
    }

    /// Checks that failed, with their degree.
    pub fn failures(&self) -> Vec<(usize, &Check)> {
        self.degrees
            .iter()
            .flat_map(|d| d.checks.iter().filter(|c| !c.passed).map(move |c| (d.r, c)))
            .collect()
    }
}

/// Verify D(r) for r = 0..=r_max over Q (c = 0) or F_c.
pub fn verify_double(
    name: &str,
    data: &Arc<DoubleData>,
    r_max: usize,
    characteristic: u64,
) -> Result<DoubleReport> {
    let mut degrees = Vec::new();
    for r in 0..=r_max {
        let piece = data.degree_piece(r)?;
        let rep = if characteristic == 0 {
            verify_degree(&piece, Rationals)?
        } else {
            verify_degree(&piece, PrimeField::new(characteristic)?)?
        };
        degrees.push(rep);
    }
    Ok(DoubleReport {
        name: name.into(),
        characteristic,
        degrees,
    })
}

fn verify_degree<F: Field>(piece: &DoubleDegree, field: F) -> Result<DegreeReport> {
    let alg = piece.structure()?;
    let fa = alg.over(field.clone());
    let n = piece.dim();
    let label = |i: usize| piece.label(i);
    let triple =
        |(i, j, k): (usize, usize, usize)| format!("({}, {}, {})", label(i), label(j), label(k));
    let mut checks = Vec::new();

    checks.push(Check::from(
        "associativity",
        fa.associativity_failure().map(triple),
    ));

    let unit = fa.find_unit();
    checks.push(Check::from(
        "unit",
        unit.is_none().then(|| "no two-sided unit".to_string()),
    ));
    let unit_desc = unit.as_ref().map(|u| {
        u.iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| (label(i), c.to_string()))
            .collect()
    });

    let gram_i = piece.gram();
    let sym = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| gram_i[i][j] != gram_i[j][i]);
    checks.push(Check::from(
        "form symmetric",
        sym.map(|(i, j)| format!("({}, {})", label(i), label(j))),
    ));
    let gram = Matrix::from_i64_rows(field.clone(), &gram_i)?;
    checks.push(Check::from(
        "form associative",
        form_associativity_failure(&fa, &gram).map(triple),
    ));

    let sigma_invertible = sigma_invertible_upto(&piece.data, piece.r, &field)?;
    let nondeg = n == 0 || gram.rank() == n;
    checks.push(if sigma_invertible {
        Check::from(
            "form nondegenerate",
            (!nondeg).then(|| format!("Gram rank below {n}")),
        )
    } else {
        Check {
            name: "form nondegenerate".into(),
            passed: nondeg,
            detail: Some("σ is not invertible in this degree".into()),
        }
    });

    checks.push(Check::from(
        "grading",
        grading_failure(&alg).map(|(i, j)| format!("({}, {})", label(i), label(j))),
    ));

    let nil: Vec<Vec<F::Elem>> = (0..n)
        .filter(|&i| piece.grade(i) >= 1)
        .map(|i| fa.basis_vec(i))
        .collect();
    checks.push(Check::from(
        "𝒩 ideal",
        (!fa.is_ideal(&nil)).then(|| "𝒩(r) is not a two-sided ideal".to_string()),
    ));
    let dims = fa.power_dims(&nil, piece.r + 3);
    let nilpotency_index = dims.iter().position(|&d| d == 0).map(|k| k + 1);
    checks.push(Check::from(
        "𝒩 nilpotent",
        match nilpotency_index {
            Some(k) if k <= piece.r + 1 => None,
            _ => Some(format!("powers of 𝒩(r) have dimensions {dims:?}")),
        },
    ));

    checks.push(Check::from(
        "quotient ≅ B(r)",
        quotient_failure(piece, &alg, &field),
    ));

    Ok(DegreeReport {
        r: piece.r,
        dim: n,
        sigma_invertible,
        nilpotency_index,
        unit: unit_desc,
        checks,
    })
}

fn grading_failure(alg: &StructureAlgebra) -> Option<(usize, usize)> {
    let n = alg.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            alg.mul(i, j)
                .iter()
                .any(|&(k, _)| alg.grade[k] != alg.grade[i] + alg.grade[j])
        })
}

fn sigma_invertible_upto<F: Field>(data: &DoubleData, r: usize, field: &F) -> Result<bool> {
    for d in 0..=r {
        let src = &data.b.pieces[d];
        let tgt = &data.bp.pieces[d];
        if src.len() != tgt.len() {
            return Ok(false);
        }
        let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let rows: Vec<Vec<i64>> = src
            .iter()
            .map(|&a| {
                let mut row = vec![0; tgt.len()];
                for &(t, c) in &data.sigma[a] {
                    row[pos[&t]] = c;
                }
                row
            })
            .collect();
        if !rows.is_empty() && Matrix::from_i64_rows(field.clone(), &rows)?.rank() != rows.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (a⊗ε)(b⊗ε) ≡ ab⊗ε modulo 𝒩(r), over the field.
fn quotient_failure<F: Field>(
    piece: &DoubleDegree,
    alg: &StructureAlgebra,
    field: &F,
) -> Option<String> {
    let b = &piece.data.b;
    let r = piece.r;
    for &a in &b.pieces[r] {
        let ia = piece.degree_zero_index(a)?;
        for &c in &b.pieces[r] {
            let ic = piece.degree_zero_index(c)?;
            let mut got: HashMap<usize, i64> = HashMap::new();
            for &(k, v) in alg.mul(ia, ic) {
                if alg.grade[k] == 0 {
                    *got.entry(k).or_default() += v;
                }
            }
            let mut want: HashMap<usize, i64> = HashMap::new();
            for &(k, v) in b.mul(a, c) {
                *want.entry(piece.degree_zero_index(k)?).or_default() += v;
            }
            let reduce = |m: HashMap<usize, i64>| -> Vec<(usize, String)> {
                let mut v: Vec<(usize, String)> = m
                    .into_iter()
                    .map(|(k, x)| (k, field.from_i64(x)))
                    .filter(|(_, e)| !field.is_zero(e))
                    .map(|(k, e)| (k, e.to_string()))
                    .collect();
                v.sort();
                v
            };
            if reduce(got) != reduce(want) {
                return Some(format!("({}, {})", b.labels[a], b.labels[c]));
            }
        }
    }
    None
}

/// Δ_r(a⊗α) = Σ a₁ ⊗ (a₂⊗α) and Δ_l(a⊗α) = Σ (a₁⊗α) ⊗ a₂, checked to be
/// multiplicative on all basis pairs of D(r). Requires B = B′ cocommutative.
pub fn check_coproduct_maps(data: &DoubleData, r: usize) -> Result<Check> {
    if !data.b.is_cocommutative() {
        return invalid("Δ_l and Δ_r need a cocommutative bialgebra");
    }
    if data.b.labels != data.bp.labels {
        return invalid("Δ_l and Δ_r are defined for the classical double only");
    }
    let b = &data.b;
    let basis: Vec<(usize, usize)> = (0..=r)
        .flat_map(|d| {
            b.pieces[r - d]
                .iter()
                .flat_map(move |&a| data.bp.pieces[d].iter().map(move |&al| (a, al)))
        })
        .collect();
    type Key = (usize, (usize, usize));
    let delta_r = |x: (usize, usize)| -> HashMap<Key, i64> {
        let mut m = HashMap::new();
        for &(a1, a2, c) in b.coproduct(x.0) {
            *m.entry((a1, (a2, x.1))).or_insert(0) += c;
        }
        m
    };
    let delta_l = |x: (usize, usize)| -> HashMap<Key, i64> {
        let mut m = HashMap::new();
        for &(a1, a2, c) in b.coproduct(x.0) {
            *m.entry((a2, (a1, x.1))).or_insert(0) += c;
        }
        m
    };
    // (b⊗z)(b′⊗z′) = (−1)^{|z||b′|} bb′ ⊗ zz′, stored with the B factor first
    let mul_tensor =
        |x: &HashMap<Key, i64>, y: &HashMap<Key, i64>, b_first: bool| -> HashMap<Key, i64> {
            let mut out = HashMap::new();
            for (&(bx, zx), &cx) in x {
                for (&(by, zy), &cy) in y {
                    let zpar = (data.b.parity[zx.0] + data.bp.parity[zx.1]) as usize;
                    let bpar = b.parity[by] as usize;
                    let zpar_y = (data.b.parity[zy.0] + data.bp.parity[zy.1]) as usize;
                    let sign = if b_first {
                        sign_of(0) * sign_of(zpar * bpar)
                    } else {
                        sign_of(b.parity[bx] as usize * zpar_y)
                    };
                    let zz = data.pair_product(zx, zy);
                    for &(k, c1) in b.mul(bx, by) {
                        for (&z, &c2) in &zz {
                            *out.entry((k, z)).or_insert(0) += sign * cx * cy * c1 * c2;
                        }
                    }
                }
            }
            out.retain(|_, v| *v != 0);
            out
        };
    for (name, map, b_first) in [
        (
            "Δ_r",
            &delta_r as &dyn Fn((usize, usize)) -> HashMap<Key, i64>,
            true,
        ),
        ("Δ_l", &delta_l, false),
    ] {
        for &x in &basis {
            for &y in &basis {
                let xy = data.pair_product(x, y);
                let mut lhs: HashMap<Key, i64> = HashMap::new();
                for (&z, &c) in &xy {
                    for (k, v) in map(z) {
                        *lhs.entry(k).or_insert(0) += c * v;
                    }
                }
                lhs.retain(|_, v| *v != 0);
                let rhs = mul_tensor(&map(x), &map(y), b_first);
                if lhs != rhs {
                    return Ok(Check::from(
                        "coproduct maps multiplicative",
                        Some(format!(
                            "{name} fails on ({}⊗{}*, {}⊗{}*)",
                            b.labels[x.0], b.labels[x.1], b.labels[y.0], b.labels[y.1]
                        )),
                    ));
                }
            }
        }
    }
    Ok(Check::ok("coproduct maps multiplicative"))
}

/// Radical layers of a basic algebra given a candidate radical J and
/// orthogonal idempotents: dims of e_i J^k / e_i J^{k+1} and the arrows
/// i → j counted by dim e_i (J/J²) e_j.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoewyData {
    pub radical_power_dims: Vec<usize>,
    pub layers: Vec<Vec<usize>>,
    pub arrows: Vec<Vec<usize>>,
}

pub fn loewy_data<F: Field>(
    fa: &FieldAlgebra<'_, F>,
    radical: &[Vec<F::Elem>],
    idempotents: &[Vec<F::Elem>],
) -> Result<LoewyData> {
    if !fa.is_ideal(radical) {
        return Err(Error::Invariant("radical candidate is not an ideal".into()));
    }
    let n = fa.dim();
    let mut powers: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    let mut cur: Vec<Vec<F::Elem>> = {
        let mut s = crate::exactlin::Span::new(fa.field.clone(), n);
        for v in radical {
            s.insert(v);
        }
        s.basis().map(|r| r.to_vec()).collect()
    };
    for _ in 0..=n + 1 {
        powers.push(cur.clone());
        if cur.is_empty() {
            break;
        }
        cur = fa
            .product_span(&cur, radical)
            .basis()
            .map(|r| r.to_vec())
            .collect();
    }
    if powers.last().is_some_and(|p| !p.is_empty()) {
        return Err(Error::Invariant(
            "radical candidate is not nilpotent".into(),
        ));
    }
    let mut radical_power_dims = vec![n];
    radical_power_dims.extend(powers.iter().map(Vec::len));
    // J^0 = A
    let all: Vec<Vec<F::Elem>> = (0..n).map(|i| fa.basis_vec(i)).collect();
    let mut levels = vec![all];
    levels.extend(powers);
    let side_dim = |e: &[F::Elem], level: &[Vec<F::Elem>], right: Option<&[F::Elem]>| -> usize {
        let mut s = crate::exactlin::Span::new(fa.field.clone(), n);
        for v in level {
            let mut w = fa.mul(e, v);
            if let Some(f) = right {
                w = fa.mul(&w, f);
            }
            s.insert(&w);
        }
        s.dim()
    };
    let layers = idempotents
        .iter()
        .map(|e| {
            (0..levels.len() - 1)
                .map(|k| side_dim(e, &levels[k], None) - side_dim(e, &levels[k + 1], None))
                .collect()
        })
        .collect();
    let arrows = idempotents
        .iter()
        .map(|e| {
            idempotents
                .iter()
                .map(|f| {
                    side_dim(e, &levels[1], Some(f))
                        - side_dim(e, &levels[2.min(levels.len() - 1)], Some(f))
                })
                .collect()
        })
        .collect();
    Ok(LoewyData {
        radical_power_dims,
        layers,
        arrows,
    })
}

/// The k ⊕ T_n double in degree one as a basic algebra: its Gabriel quiver
/// and radical layers, with J = 𝒩 + (strictly upper E_ij ⊗ ε) and the
/// primitive idempotents E_ii ⊗ ε.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangularQuiverReport {
    pub n: usize,
    pub characteristic: u64,
    pub dim: usize,
    pub loewy: LoewyData,
    /// arrow i → σ(i) when the arrows form a permutation
    pub arrow_permutation: Option<Vec<usize>>,
    pub checks: Vec<Check>,
}

impl TriangularQuiverReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn triangular_quiver(n: usize, characteristic: u64) -> Result<TriangularQuiverReport> {
    let data = Preset::Tri(n).build(1, characteristic)?;
    let piece = data.degree_piece(1)?;
    let alg = piece.structure()?;
    match crate::exactlin::FieldSpec::from_characteristic(characteristic)? {
        crate::exactlin::FieldSpec::Rational => {
            triangular_quiver_over(n, &piece, alg.over(Rationals), characteristic)
        }
        crate::exactlin::FieldSpec::Prime(p) => {
            triangular_quiver_over(n, &piece, alg.over(PrimeField::new(p)?), characteristic)
        }
    }
}

fn triangular_quiver_over<F: Field>(
    n: usize,
    piece: &DoubleDegree,
    fa: FieldAlgebra<'_, F>,
    characteristic: u64,
) -> Result<TriangularQuiverReport> {
    let b = &piece.data.b;
    let diag = |a: usize| {
        let l = &b.labels[a];
        l.len() >= 3 && l[1..l.len() / 2 + 1] == l[l.len() / 2 + 1..]
    };
    let mut radical = Vec::new();
    let mut idempotents = Vec::new();
    for (i, &(a, _)) in piece.basis.iter().enumerate() {
        if piece.grade(i) == 1 || (b.degree[a] == 1 && !diag(a)) {
            radical.push(fa.basis_vec(i));
        } else if b.degree[a] == 1 {
            idempotents.push((b.labels[a].clone(), fa.basis_vec(i)));
        }
    }
    idempotents.sort_by(|x, y| x.0.cmp(&y.0));
    let idempotents: Vec<Vec<F::Elem>> = idempotents.into_iter().map(|(_, v)| v).collect();
    let loewy = loewy_data(&fa, &radical, &idempotents)?;

    let mut checks = Vec::new();
    let dim = piece.dim();
    checks.push(Check::from(
        "dimension n(n+1)",
        (dim != n * (n + 1)).then(|| format!("dimension {dim}")),
    ));
    let unit = fa.find_unit();
    let mut sum = fa.zero_vec();
    for e in &idempotents {
        for (s, x) in sum.iter_mut().zip(e) {
            *s = fa.field.add(s, x);
        }
    }
    let orthogonal = idempotents.iter().enumerate().all(|(i, e)| {
        idempotents.iter().enumerate().all(|(j, f)| {
            let p = fa.mul(e, f);
            if i == j {
                p == *e
            } else {
                p == fa.zero_vec()
            }
        })
    });
    checks.push(Check::from(
        "E_ii ⊗ ε are orthogonal idempotents summing to 1",
        (!orthogonal || unit.as_ref() != Some(&sum)).then(|| "idempotent check failed".to_string()),
    ));
    checks.push(Check::from(
        "A/J has dimension n",
        (loewy.radical_power_dims[1] + n != dim)
            .then(|| format!("dim J = {}", loewy.radical_power_dims[1])),
    ));

    let perm: Option<Vec<usize>> = loewy
        .arrows
        .iter()
        .map(|row| {
            let targets: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(j, _)| j)
                .collect();
            (row.iter().sum::<usize>() == 1).then(|| targets[0])
        })
        .collect();
    let single_cycle = perm.as_ref().is_some_and(|p| {
        let mut seen = vec![false; n];
        let mut i = 0;
        for _ in 0..n {
            if seen[i] {
                return false;
            }
            seen[i] = true;
            i = p[i];
        }
        i == 0 && seen.iter().all(|&s| s)
    });
    checks.push(Check::from(
        "the Gabriel quiver is an n-cycle",
        (!single_cycle).then(|| format!("arrows {:?}", loewy.arrows)),
    ));
    let uniserial = loewy
        .layers
        .iter()
        .all(|l| l.len() == n + 1 && l.iter().all(|&x| x == 1));
    checks.push(Check::from(
        "projectives are uniserial of length n+1",
        (!uniserial).then(|| format!("layers {:?}", loewy.layers)),
    ));
    let dims = &loewy.radical_power_dims;
    let nilp = dims.len() == n + 2 && dims[n + 1] == 0 && dims[n] > 0;
    checks.push(Check::from(
        "J^{n+1} = 0 and J^n ≠ 0",
        (!nilp).then(|| format!("dim J^k = {dims:?}")),
    ));
    Ok(TriangularQuiverReport {
        n,
        characteristic,
        dim,
        loewy,
        arrow_permutation: perm,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_parsing() {
        assert_eq!("s1".parse::<Preset>().unwrap(), Preset::S1);
        assert_eq!("tri:3".parse::<Preset>().unwrap(), Preset::Tri(3));
        assert_eq!("schur:2".parse::<Preset>().unwrap(), Preset::Schur(2));
        assert!("tri:0".parse::<Preset>().is_err());
        assert!("foo".parse::<Preset>().is_err());
        assert_eq!(Preset::Tri(3).to_string(), "tri:3");
    }

    #[test]
    fn triangular_is_a_bialgebra() {
        let (b, _) = triangular_bialgebra(3).unwrap();
        b.check_structure().unwrap();
        assert!(b.is_cocommutative());
    }

    #[test]
    fn s1_double_dims() {
        let data = Preset::S1.build(4, 0).unwrap();
        for r in 0..=4 {
            assert_eq!(data.degree_piece(r).unwrap().dim(), r + 1);
        }
    }

    #[test]
    fn s1_double_verifies() {
        let data = Preset::S1.build(3, 0).unwrap();
        let rep = verify_double("s1", &data, 3, 0).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn tri_double_verifies() {
        let data = Preset::Tri(3).build(1, 2).unwrap();
        let rep = verify_double("tri:3", &data, 1, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        assert_eq!(rep.degrees[1].dim, 12);
    }

    #[test]
    fn schur2_double_verifies() {
        for c in [0, 2] {
            let data = Preset::Schur(2).build(2, c).unwrap();
            let rep = verify_double("schur:2", &data, 2, c).unwrap();
            assert!(rep.passed(), "char {c}: {:?}", rep.failures());
        }
    }

    #[test]
    fn triangular_quiver_is_a_cycle() {
        for n in 1..=4 {
            for c in [0, 2] {
                let rep = triangular_quiver(n, c).unwrap();
                assert!(rep.passed(), "n={n} char {c}: {:?}", rep.checks);
            }
        }
    }

    #[test]
    fn s1_coproduct_maps() {
        let data = Preset::S1.build(3, 0).unwrap();
        for r in 0..=3 {
            assert!(check_coproduct_maps(&data, r).unwrap().passed);
        }
    }
}
