//! Integer matrices with row and column labels, and their CSV/JSON exports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partitions::{Partition, QuotientComponents};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Partition(Partition),
    Quotient(Vec<Partition>),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Partition(p) => write!(f, "{p}"),
            Label::Quotient(c) => write!(f, "{}", QuotientComponents(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub row_labels: Vec<Label>,
    pub col_labels: Vec<Label>,
    pub entries: Vec<Vec<i64>>,
}

impl LabeledMatrix {
    pub fn new(
        row_labels: Vec<Label>,
        col_labels: Vec<Label>,
        entries: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if entries.len() != row_labels.len() || entries.iter().any(|r| r.len() != col_labels.len())
        {
            return invalid("matrix shape does not match its labels");
        }
        Ok(LabeledMatrix {
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn identity(labels: Vec<Label>) -> Self {
        let n = labels.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        LabeledMatrix {
            row_labels: labels.clone(),
            col_labels: labels,
            entries,
        }
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_index(&self, l: &Label) -> Option<usize> {
        self.row_labels.iter().position(|x| x == l)
    }

    pub fn col_index(&self, l: &Label) -> Option<usize> {
        self.col_labels.iter().position(|x| x == l)
    }

    pub fn get(&self, r: &Label, c: &Label) -> Option<i64> {
        Some(self.entries[self.row_index(r)?][self.col_index(c)?])
    }

    pub fn is_identity(&self) -> bool {
        self.row_labels == self.col_labels
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
    }

    /// Product, matching self's column labels with other's row labels.
    pub fn mul(&self, other: &LabeledMatrix) -> Result<LabeledMatrix> {
        if self.col_labels != other.row_labels {
            return Err(Error::Invariant("label mismatch in matrix product".into()));
        }
        let entries = self
            .entries
            .iter()
            .map(|row| {
                (0..other.ncols())
                    .map(|j| row.iter().zip(&other.entries).map(|(a, b)| a * b[j]).sum())
                    .collect()
            })
            .collect();
        Ok(LabeledMatrix {
            row_labels: self.row_labels.clone(),
            col_labels: other.col_labels.clone(),
            entries,
        })
    }

    /// Restrict to the given labels, in the given order.
    pub fn submatrix(&self, rows: &[Label], cols: &[Label]) -> Result<LabeledMatrix> {
        let ri = rows
            .iter()
            .map(|l| {
                self.row_index(l)
                    .ok_or_else(|| Error::InvalidArgument(format!("no row {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let ci = cols
            .iter()
            .map(|l| {
                self.col_index(l)
                    .ok_or_else(|| Error::InvalidArgument(format!("no column {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let entries = ri
            .iter()
            .map(|&i| ci.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        Ok(LabeledMatrix {
            row_labels: rows.to_vec(),
            col_labels: cols.to_vec(),
            entries,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = std::iter::once(String::new())
            .chain(self.col_labels.iter().map(|l| csv_field(&l.to_string())))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for (l, row) in self.row_labels.iter().zip(&self.entries) {
            let cells: Vec<String> = std::iter::once(csv_field(&l.to_string()))
                .chain(row.iter().map(|v| v.to_string()))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON with labels serialized as strings, mirroring the CSV layout.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.row_labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "cols": self.col_labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "entries": self.entries,
        })
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rl: Vec<String> = self.row_labels.iter().map(|l| l.to_string()).collect();
        let cl: Vec<String> = self.col_labels.iter().map(|l| l.to_string()).collect();
        let lw = rl.iter().map(|s| s.chars().count()).max().unwrap_or(0);
        let cw: Vec<usize> = cl
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let vals = self
                    .entries
                    .iter()
                    .map(|r| r[j].to_string().len())
                    .max()
                    .unwrap_or(1);
                s.chars().count().max(vals)
            })
            .collect();
        write!(f, "{:lw$}", "")?;
        for (s, w) in cl.iter().zip(&cw) {
            write!(f, "  {s:>w$}")?;
        }
        writeln!(f)?;
        for (s, row) in rl.iter().zip(&self.entries) {
            write!(f, "{s:<lw$}")?;
            for (v, w) in row.iter().zip(&cw) {
                write!(f, "  {v:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(s: &str) -> Label {
        Label::Partition(s.parse().unwrap())
    }

    #[test]
    fn csv_quotes_labels_with_commas() {
        let m = LabeledMatrix::new(
            vec![pl("2"), pl("1,1")],
            vec![pl("2")],
            vec![vec![1], vec![1]],
        )
        .unwrap();
        assert_eq!(m.to_csv(), ",2\n2,1\n\"1,1\",1\n");
        assert_eq!(m.to_json()["rows"][1], "1,1");
    }

    #[test]
    fn product_checks_labels() {
        let a = LabeledMatrix::identity(vec![pl("2"), pl("1,1")]);
        let b = LabeledMatrix::identity(vec![pl("1,1"), pl("2")]);
        assert!(a.mul(&a).unwrap().is_identity());
        assert!(a.mul(&b).is_err());
    }
}
