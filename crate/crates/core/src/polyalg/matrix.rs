//! Lower-triangular matrices over `PolyC`.

use serde::{Deserialize, Serialize};

use super::{PolyC, PolyError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    rows: Vec<Vec<PolyC>>,
}

/// JSON shape: `rows[n][k]` is the coefficient list of entry `(n, k)`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    size: usize,
    rows: Vec<Vec<Vec<String>>>,
}

impl TransitionMatrix {
    /// Row `n` must have exactly `n + 1` entries.
    pub fn from_rows(rows: Vec<Vec<PolyC>>) -> Result<Self, PolyError> {
        for (n, r) in rows.iter().enumerate() {
            if r.len() != n + 1 {
                return Err(PolyError::Shape(format!("row {n} has {} entries", r.len())));
            }
        }
        Ok(TransitionMatrix { rows })
    }

    pub fn identity(size: usize) -> Self {
        let rows = (0..size)
            .map(|n| (0..=n).map(|k| if k == n { PolyC::one() } else { PolyC::zero() }).collect())
            .collect();
        TransitionMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(n, k)`; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> PolyC {
        if k > n {
            return PolyC::zero();
        }
        self.rows[n][k].clone()
    }

    pub fn entry(&self, n: usize, k: usize) -> &PolyC {
        &self.rows[n][k]
    }

    pub fn row(&self, n: usize) -> &[PolyC] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<PolyC>] {
        &self.rows
    }

    /// Leading `size` x `size` block.
    pub fn truncate(&self, size: usize) -> Self {
        TransitionMatrix {
            rows: self.rows.iter().take(size).cloned().collect(),
        }
    }

    pub fn is_unitriangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, r)| r[n].is_one())
    }

    pub fn mul(&self, other: &TransitionMatrix) -> Result<TransitionMatrix, PolyError> {
        if self.size() != other.size() {
            return Err(PolyError::Shape(format!(
                "size mismatch {} vs {}",
                self.size(),
                other.size()
            )));
        }
        let rows = (0..self.size())
            .map(|n| {
                (0..=n)
                    .map(|k| (k..=n).map(|j| &self.rows[n][j] * &other.rows[j][k]).sum())
                    .collect()
            })
            .collect();
        Ok(TransitionMatrix { rows })
    }

    /// Exact inverse by forward substitution.
    pub fn invert_unitriangular(&self) -> Result<TransitionMatrix, PolyError> {
        if let Some(n) = (0..self.size()).find(|&n| !self.rows[n][n].is_one()) {
            return Err(PolyError::NotUnitriangular(n, self.rows[n][n].to_string()));
        }
        let size = self.size();
        let mut inv: Vec<Vec<PolyC>> = Vec::with_capacity(size);
        for n in 0..size {
            let mut row = vec![PolyC::zero(); n + 1];
            row[n] = PolyC::one();
            for k in (0..n).rev() {
                // sum_{j=k}^{n} m[n][j] inv[j][k] = 0
                let mut acc = PolyC::zero();
                for j in k..n {
                    acc += &self.rows[n][j] * &inv[j][k];
                }
                row[k] = -acc;
            }
            inv.push(row);
        }
        Ok(TransitionMatrix { rows: inv })
    }

    /// One row per line, cells are `PolyC` strings; the header names the columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row");
        for k in 0..self.size() {
            out.push_str(&format!(",k{k}"));
        }
        out.push('\n');
        for (n, r) in self.rows.iter().enumerate() {
            out.push_str(&n.to_string());
            for k in 0..self.size() {
                let cell = if k <= n { r[k].to_string() } else { String::new() };
                out.push(',');
                out.push_str(&cell);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = MatrixJson {
            size: self.size(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|p| p.to_rational_strings()).collect())
                .collect(),
        };
        serde_json::to_value(j).expect("matrix json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PolyError> {
        let j: MatrixJson =
            serde_json::from_value(v.clone()).map_err(|e| PolyError::Parse(e.to_string()))?;
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|cell| PolyC::from_rational_strings(cell)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Self::from_rows(rows)
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect();
        let width: Vec<usize> = (0..self.size())
            .map(|k| cells.iter().filter_map(|r| r.get(k)).map(|s| s.len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in &cells {
            let line: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(k, s)| format!("{s:<w$}", w = width[k]))
                .collect();
            out.push_str(line.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}
