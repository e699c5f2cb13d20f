use std::fmt;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over a [`Field`], row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(format!("entry over {}", x.field())));
                }
                data.push(x);
            }
        }
        Ok(ExactMatrix {
            field,
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    /// A `rows × cols` matrix with the given columns.
    pub fn from_cols(field: Field, rows: usize, cols: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        debug_assert_eq!(x.field(), self.field);
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for x in rows[r].iter_mut().skip(c) {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_row = rows[r].clone();
            let support: Vec<usize> = (c..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for &j in &support {
                    let v = &row[j] - &(&factor * &pivot_row[j]);
                    row[j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let m = ExactMatrix::from_rows(self.field, rows)
            .unwrap_or_else(|_| ExactMatrix::zeros(self.field, self.rows, self.cols));
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full rref.
        let mut rows: Vec<Vec<Scalar>> = self
            .to_rows()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][c].inv().expect("nonzero pivot");
            let pivot_row = rows[rank].clone();
            let support: Vec<usize> = (c..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let factor = &row[c] * &inv;
                for &j in &support {
                    let v = &row[j] - &(&factor * &pivot_row[j]);
                    row[j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// A basis of the right kernel `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// The inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn from_strings(field: Field, rows: &[Vec<String>]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(q(), 4).rank(), 4);
        let m = ExactMatrix::from_i64_rows(q(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(ExactMatrix::zeros(q(), 3, 2).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(ExactMatrix::identity(q(), 3).kernel_basis().is_empty());
        let m = ExactMatrix::from_i64_rows(q(), &[vec![1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(k[0][0].to_string(), "-1");
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(ExactMatrix::from_i64_rows(q(), &rows).unwrap().rank(), 2);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(ExactMatrix::from_i64_rows(f2, &rows).unwrap().rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = ExactMatrix::from_i64_rows(q(), &[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(q(), 2));
        let singular = ExactMatrix::from_i64_rows(q(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.inverse().is_none());
    }
}
