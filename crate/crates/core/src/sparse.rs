//! Compressed-row storage for real symmetric operators.

use std::io::{self, Write};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Real symmetric sparse matrix in CSR form.
///
/// Entries are sorted by `(row, col)`, duplicates are summed at construction,
/// and every row carries an explicit diagonal entry (possibly zero).
#[derive(Clone, Debug, PartialEq)]
pub struct SparseHermitian {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl SparseHermitian {
    /// Builds the matrix from unordered triplets. Fails if the result is not
    /// exactly symmetric.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        if let Some(&(r, c, _)) = triplets.iter().find(|&&(r, c, _)| r >= dim || c >= dim) {
            return Err(Error::Domain(format!("entry ({r}, {c}) outside dimension {dim}")));
        }
        triplets.extend((0..dim).map(|i| (i, i, 0.0)));
        triplets.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            cols.push(c);
            values.push(v);
            row_ptr[r + 1] += 1;
            last = Some((r, c));
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }

        let m = Self { dim, row_ptr, cols, values };
        if !m.is_symmetric() {
            return Err(Error::NumericalIntegrity("triplets do not form a symmetric matrix".into()));
        }
        Ok(m)
    }

    /// Diagonal matrix.
    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        Self {
            dim,
            row_ptr: (0..=dim).collect(),
            cols: (0..dim).collect(),
            values: values.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Row `r` as `(col, value)` pairs in column order.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    /// All stored entries sorted by `(row, col)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(pos) => self.values[span.start + pos],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal_values(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Exact (bitwise) symmetry check.
    pub fn is_symmetric(&self) -> bool {
        self.triplets().all(|(r, c, v)| self.get(c, r) == v)
    }

    /// `y = A x`.
    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (r, yr) in y.iter_mut().enumerate() {
            *yr = self.row(r).map(|(c, v)| v * x[c]).sum();
        }
    }

    pub fn matvec(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut y = DVector::zeros(self.dim);
        self.matvec_into(x.as_slice(), y.as_mut_slice());
        y
    }

    /// Sparse product `self * other`, returned as a dense matrix.
    pub fn mul_dense(&self, other: &SparseHermitian) -> DMatrix<f64> {
        assert_eq!(self.dim, other.dim);
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (r, k, a) in self.triplets() {
            for (c, b) in other.row(k) {
                out[(r, c)] += a * b;
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    /// Principal submatrix on `indices` (which must be strictly increasing).
    pub fn restrict(&self, indices: &[usize]) -> SparseHermitian {
        let mut position = vec![usize::MAX; self.dim];
        for (new, &old) in indices.iter().enumerate() {
            position[old] = new;
        }
        let mut row_ptr = Vec::with_capacity(indices.len() + 1);
        let mut cols = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for &old in indices {
            for (c, v) in self.row(old) {
                let new_c = position[c];
                if new_c != usize::MAX {
                    cols.push(new_c);
                    values.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        SparseHermitian { dim: indices.len(), row_ptr, cols, values }
    }

    /// Debug dump: one `row col value` line per stored entry, sorted by
    /// `(row, col)`, values with 17 significant digits.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (r, c, v) in self.triplets() {
            writeln!(out, "{r} {c} {v:.16e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_summed_and_diagonal_is_present() {
        let m = SparseHermitian::from_triplets(
            3,
            vec![(0, 1, 1.0), (1, 0, 1.0), (0, 1, 0.5), (1, 0, 0.5), (2, 2, -3.0)],
        )
        .unwrap();
        assert_eq!(m.get(0, 1), 1.5);
        assert_eq!(m.get(1, 1), 0.0);
        assert_eq!(m.nnz(), 5);
        assert!(m.triplets().any(|(r, c, _)| r == 1 && c == 1));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let err = SparseHermitian::from_triplets(2, vec![(0, 1, 1.0)]).unwrap_err();
        assert!(matches!(err, Error::NumericalIntegrity(_)));
    }

    #[test]
    fn restrict_keeps_principal_block() {
        let m = SparseHermitian::from_triplets(
            3,
            vec![(0, 0, 1.0), (0, 2, 2.0), (2, 0, 2.0), (1, 1, 5.0), (2, 2, 3.0)],
        )
        .unwrap();
        let sub = m.restrict(&[0, 2]);
        assert_eq!(sub.to_dense(), DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 3.0]));
    }

    #[test]
    fn dump_lines_are_sorted_with_17_digits() {
        let m = SparseHermitian::from_triplets(2, vec![(1, 0, 0.1), (0, 1, 0.1)]).unwrap();
        let mut buf = Vec::new();
        m.write_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "0 0 0.0000000000000000e0");
        assert_eq!(lines[1], "0 1 1.0000000000000001e-1");
        assert_eq!(lines.len(), 4);
        let parsed: f64 = lines[1].split(' ').nth(2).unwrap().parse().unwrap();
        assert_eq!(parsed, 0.1);
    }
}
