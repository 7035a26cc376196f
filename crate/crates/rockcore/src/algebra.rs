//! Finite-dimensional algebras given by integer structure constants, and the
//! field-level checks run on them (associativity, units, forms, ideals).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactlin::{integer_rank, Field, Matrix, Span};
use crate::superalg::Sparse;

/// Basis-level algebra over Z; fields enter by reducing the constants.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    pub labels: Vec<String>,
    pub parity: Vec<u8>,
    /// Z-grading (e.g. the degree d of B(r−d)⊗B*(d)).
    pub grade: Vec<usize>,
    /// table[i * dim + j] = e_i e_j
    pub table: Vec<Sparse>,
}

/// One structure constant e_i e_j ∋ c·e_k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: i64,
}

/// JSON exchange format for algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
    pub parities: Vec<u8>,
    pub constants: Vec<Constant>,
}

impl StructureAlgebra {
    pub fn new(
        labels: Vec<String>,
        parity: Vec<u8>,
        grade: Vec<usize>,
        table: Vec<Sparse>,
    ) -> Result<Self> {
        let n = labels.len();
        if parity.len() != n || grade.len() != n || table.len() != n * n {
            return invalid("structure tables do not match the basis size");
        }
        Ok(StructureAlgebra {
            labels,
            parity,
            grade,
            table,
        })
    }

    /// Build the table in parallel from a basis-pair product.
    pub fn from_fn<P>(
        labels: Vec<String>,
        parity: Vec<u8>,
        grade: Vec<usize>,
        product: P,
    ) -> Result<Self>
    where
        P: Fn(usize, usize) -> Result<Sparse> + Sync,
    {
        let n = labels.len();
        let table = (0..n * n)
            .into_par_iter()
            .map(|ij| product(ij / n, ij % n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels, parity, grade, table)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim() + j]
    }

    pub fn dump(&self) -> AlgebraDump {
        let n = self.dim();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for &(k, c) in self.mul(i, j) {
                    constants.push(Constant { i, j, k, c });
                }
            }
        }
        AlgebraDump {
            labels: self.labels.clone(),
            degrees: self.grade.clone(),
            parities: self.parity.clone(),
            constants,
        }
    }

    pub fn from_dump(d: &AlgebraDump) -> Result<Self> {
        let n = d.labels.len();
        let mut table = vec![Vec::new(); n * n];
        for c in &d.constants {
            if c.i >= n || c.j >= n || c.k >= n {
                return invalid("structure constant index out of range");
            }
            table[c.i * n + c.j].push((c.k, c.c));
        }
        Self::new(
            d.labels.clone(),
            d.parities.clone(),
            d.degrees.clone(),
            table,
        )
    }

    pub fn over<F: Field>(&self, field: F) -> FieldAlgebra<'_, F> {
        let table = self
            .table
            .iter()
            .map(|v| {
                v.iter()
                    .filter_map(|&(k, c)| {
                        let e = field.from_i64(c);
                        (!field.is_zero(&e)).then_some((k, e))
                    })
                    .collect()
            })
            .collect();
        FieldAlgebra {
            base: self,
            field,
            table,
        }
    }
}

/// The structure constants reduced into a field.
pub struct FieldAlgebra<'a, F: Field> {
    pub base: &'a StructureAlgebra,
    pub field: F,
    table: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> FieldAlgebra<'_, F> {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim() + j]
    }

    pub fn zero_vec(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in self.mul_basis(i, j) {
                    f.add_mul_assign(&mut out[*k], &c, s);
                }
            }
        }
        out
    }

    fn is_zero_vec(&self, v: &[F::Elem]) -> bool {
        v.iter().all(|x| self.field.is_zero(x))
    }

    /// First basis triple violating associativity.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let f = &self.field;
        (0..n).into_par_iter().find_map_first(|i| {
            let mut lhs: BTreeMap<usize, F::Elem> = BTreeMap::new();
            let mut rhs: BTreeMap<usize, F::Elem> = BTreeMap::new();
            for j in 0..n {
                for k in 0..n {
                    lhs.clear();
                    rhs.clear();
                    for (m, c) in self.mul_basis(i, j) {
                        for (t, d) in self.mul_basis(*m, k) {
                            let e = lhs.entry(*t).or_insert_with(|| f.zero());
                            f.add_mul_assign(e, c, d);
                        }
                    }
                    for (m, c) in self.mul_basis(j, k) {
                        for (t, d) in self.mul_basis(i, *m) {
                            let e = rhs.entry(*t).or_insert_with(|| f.zero());
                            f.add_mul_assign(e, c, d);
                        }
                    }
                    lhs.retain(|_, v| !f.is_zero(v));
                    rhs.retain(|_, v| !f.is_zero(v));
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    /// The two-sided unit, found by solving u·e_j = e_j and then checked on both sides.
    pub fn find_unit(&self) -> Option<Vec<F::Elem>> {
        let n = self.dim();
        let f = &self.field;
        if n == 0 {
            return Some(Vec::new());
        }
        // equations in n unknowns plus a right-hand side column
        let mut eqs = Span::new(f.clone(), n + 1);
        'outer: for j in 0..n {
            let mut rows: Vec<Vec<F::Elem>> = vec![vec![f.zero(); n + 1]; n];
            for i in 0..n {
                for (k, c) in self.mul_basis(i, j) {
                    rows[*k][i] = f.add(&rows[*k][i], c);
                }
            }
            rows[j][n] = f.one();
            for row in rows {
                if self.is_zero_vec(&row[..n]) && f.is_zero(&row[n]) {
                    continue;
                }
                eqs.insert(&row);
                if eqs.dim() >= n {
                    break 'outer;
                }
            }
        }
        // read a solution off the reduced rows, free variables set to zero
        let mut u = self.zero_vec();
        for row in eqs.basis() {
            let pc = row.iter().position(|x| !f.is_zero(x))?;
            if pc == n {
                return None;
            }
            u[pc] = row[n].clone();
        }
        (0..n)
            .all(|j| {
                let e = self.basis_vec(j);
                self.mul(&u, &e) == e && self.mul(&e, &u) == e
            })
            .then_some(u)
    }

    /// Span of all products x·y, x in `left`, y in `right`.
    pub fn product_span(&self, left: &[Vec<F::Elem>], right: &[Vec<F::Elem>]) -> Span<F> {
        let mut s = Span::new(self.field.clone(), self.dim());
        for x in left {
            for y in right {
                s.insert(&self.mul(x, y));
            }
        }
        s
    }

    /// Dimensions of J, J², … down to 0 (J given by a spanning set).
    pub fn power_dims(&self, ideal: &[Vec<F::Elem>], max_steps: usize) -> Vec<usize> {
        let mut dims = Vec::new();
        let mut cur: Vec<Vec<F::Elem>> = {
            let mut s = Span::new(self.field.clone(), self.dim());
            for v in ideal {
                s.insert(v);
            }
            s.basis().map(|r| r.to_vec()).collect()
        };
        for _ in 0..max_steps {
            dims.push(cur.len());
            if cur.is_empty() {
                break;
            }
            cur = self
                .product_span(&cur, ideal)
                .basis()
                .map(|r| r.to_vec())
                .collect();
        }
        dims
    }

    /// Whether span(vs) is a two-sided ideal.
    pub fn is_ideal(&self, vs: &[Vec<F::Elem>]) -> bool {
        let mut s = Span::new(self.field.clone(), self.dim());
        for v in vs {
            s.insert(v);
        }
        let basis: Vec<Vec<F::Elem>> = s.basis().map(|r| r.to_vec()).collect();
        (0..self.dim()).all(|i| {
            let e = self.basis_vec(i);
            basis
                .iter()
                .all(|v| s.contains(&self.mul(&e, v)) && s.contains(&self.mul(v, &e)))
        })
    }
}

/// Rank of an integer matrix over the field of characteristic c.
pub fn rank_over(rows: &[Vec<i64>], c: u64) -> Result<usize> {
    if rows.is_empty() {
        return Ok(0);
    }
    integer_rank(rows, c)
}

/// ⟨e_i e_j, e_k⟩ = ⟨e_i, e_j e_k⟩ for all triples, over the given field.
pub fn form_associativity_failure<F: Field>(
    alg: &FieldAlgebra<'_, F>,
    gram: &Matrix<F>,
) -> Option<(usize, usize, usize)> {
    let n = alg.dim();
    let f = &alg.field;
    (0..n).into_par_iter().find_map_first(|i| {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = f.zero();
                for (m, c) in alg.mul_basis(i, j) {
                    f.add_mul_assign(&mut lhs, c, gram.get(*m, k));
                }
                let mut rhs = f.zero();
                for (m, c) in alg.mul_basis(j, k) {
                    f.add_mul_assign(&mut rhs, c, gram.get(i, *m));
                }
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;

    fn dual_numbers() -> StructureAlgebra {
        // basis 1, x with x² = 0
        StructureAlgebra::new(
            vec!["1".into(), "x".into()],
            vec![0, 0],
            vec![0, 1],
            vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![]],
        )
        .unwrap()
    }

    #[test]
    fn dual_numbers_checks() {
        let a = dual_numbers();
        let fa = a.over(Rationals);
        assert_eq!(fa.associativity_failure(), None);
        let u = fa.find_unit().unwrap();
        assert_eq!(u, fa.basis_vec(0));
        let x = vec![fa.basis_vec(1)];
        assert!(fa.is_ideal(&x));
        assert_eq!(fa.power_dims(&x, 5), vec![1, 0]);
    }

    #[test]
    fn dump_round_trip() {
        let a = dual_numbers();
        let d = a.dump();
        let json = serde_json::to_string(&d).unwrap();
        let back: AlgebraDump = serde_json::from_str(&json).unwrap();
        assert_eq!(StructureAlgebra::from_dump(&back).unwrap().dump(), d);
    }
}
