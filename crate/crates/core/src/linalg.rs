//! Exact solves against unitriangular integer matrices.

use crate::error::{Error, Result};
use crate::nilcoxeter::{checked_coeff_add, checked_coeff_mul};

/// Dense lower unitriangular matrix, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerUnitriangular {
    rows: Vec<Vec<i64>>,
}

impl LowerUnitriangular {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch(row.len(), n));
            }
            if row[i] != 1 {
                return Err(Error::NotUnitriangular { row: i, col: i });
            }
            if let Some(j) = (i + 1..n).find(|&j| row[j] != 0) {
                return Err(Error::NotUnitriangular { row: i, col: j });
            }
        }
        Ok(Self { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    fn check_len(&self, b: &[i64]) -> Result<()> {
        if b.len() != self.dim() {
            Err(Error::SizeMismatch(b.len(), self.dim()))
        } else {
            Ok(())
        }
    }

    /// `M x`.
    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.check_len(x)?;
        Ok(self.rows.iter().map(|row| dot(&row[..], x)).collect())
    }

    /// `M^T x`.
    pub fn apply_transposed(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.check_len(x)?;
        Ok((0..self.dim())
            .map(|j| (0..self.dim()).map(|i| checked_coeff_mul(self.rows[i][j], x[i])).fold(0, checked_coeff_add))
            .collect())
    }

    /// Forward substitution for `M x = b`.
    pub fn solve(&self, b: &[i64]) -> Result<Vec<i64>> {
        self.check_len(b)?;
        let mut x = vec![0i64; self.dim()];
        for i in 0..self.dim() {
            let acc = dot(&self.rows[i][..i], &x[..i]);
            x[i] = b[i].checked_sub(acc).expect("coefficient overflow");
        }
        Ok(x)
    }

    /// Back substitution for `M^T x = b`.
    pub fn solve_transposed(&self, b: &[i64]) -> Result<Vec<i64>> {
        self.check_len(b)?;
        let n = self.dim();
        let mut x = vec![0i64; n];
        for i in (0..n).rev() {
            let acc = (i + 1..n).map(|j| checked_coeff_mul(self.rows[j][i], x[j])).fold(0, checked_coeff_add);
            x[i] = b[i].checked_sub(acc).expect("coefficient overflow");
        }
        Ok(x)
    }

    /// Rows of `M^{-1}`, which is again lower unitriangular.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            cols.push(self.solve(&e).expect("dimension checked"));
        }
        let rows = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
        Self { rows }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| checked_coeff_mul(x, y)).fold(0, checked_coeff_add)
}
