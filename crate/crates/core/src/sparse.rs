//! Row-list sparse matrices over a [`Scalar`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square sparse operator on an enumerated basis. Column `c` is the image of
/// basis state `c`. Rows are sorted by column and never hold exact zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix<S> {
    dim: usize,
    rows: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> GeneratorMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        GeneratorMatrix { dim, rows: vec![Vec::new(); dim] }
    }

    /// Duplicate positions are summed; zero results are dropped.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, S>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(Error::InvalidParameter(format!(
                    "entry ({r}, {c}) outside a {dim}×{dim} matrix"
                )));
            }
            let slot = acc[r].entry(c).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
        Ok(Self::from_row_maps(dim, acc))
    }

    fn from_row_maps(dim: usize, maps: Vec<BTreeMap<usize, S>>) -> Self {
        let rows = maps
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        GeneratorMatrix { dim, rows }
    }

    /// Diagonal matrix.
    pub fn diagonal(values: Vec<S>) -> Self {
        let dim = values.len();
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| if v.is_zero() { Vec::new() } else { vec![(i, v)] })
            .collect();
        GeneratorMatrix { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.rows[row]
            .binary_search_by_key(&col, |(c, _)| *c)
            .map(|i| self.rows[row][i].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    /// Overwrites one entry (removing it when `value` is zero).
    pub fn set(&mut self, row: usize, col: usize, value: S) {
        let r = &mut self.rows[row];
        match r.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) if value.is_zero() => {
                r.remove(i);
            }
            Ok(i) => r[i].1 = value,
            Err(_) if value.is_zero() => {}
            Err(i) => r.insert(i, (col, value)),
        }
    }

    /// `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.dim];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        // row-major traversal keeps each new row sorted
        GeneratorMatrix { dim: self.dim, rows }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut maps: Vec<BTreeMap<usize, S>> = vec![BTreeMap::new(); self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            let acc = &mut maps[r];
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let slot = acc.entry(*c).or_insert_with(S::zero);
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(Self::from_row_maps(self.dim, maps))
    }

    /// `a·self + b·other`.
    pub fn lincomb(&self, a: &S, other: &Self, b: &S) -> Result<Self> {
        self.check_dim(other)?;
        let mut maps: Vec<BTreeMap<usize, S>> = vec![BTreeMap::new(); self.dim];
        for (r, c, v) in self.entries() {
            maps[r].insert(c, a.clone() * v.clone());
        }
        for (r, c, v) in other.entries() {
            let slot = maps[r].entry(c).or_insert_with(S::zero);
            *slot = slot.clone() + b.clone() * v.clone();
        }
        Ok(Self::from_row_maps(self.dim, maps))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.lincomb(&S::one(), other, &S::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.lincomb(&S::one(), other, &-S::one())
    }

    pub fn scale(&self, factor: &S) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, factor.clone() * v.clone()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        GeneratorMatrix { dim: self.dim, rows }
    }

    /// `x·AB − y·BA`.
    pub fn q_commutator(&self, other: &Self, x: &S, y: &S) -> Result<Self> {
        self.matmul(other)?.lincomb(x, &other.matmul(self)?, &-y.clone())
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.q_commutator(other, &S::one(), &S::one())
    }

    /// `diag(d)·A`: row `r` scaled by `d[r]`.
    pub fn scale_rows(&self, d: &[S]) -> Self {
        assert_eq!(d.len(), self.dim);
        let rows = self
            .rows
            .iter()
            .zip(d)
            .map(|(row, s)| {
                row.iter()
                    .map(|(c, v)| (*c, s.clone() * v.clone()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        GeneratorMatrix { dim: self.dim, rows }
    }

    /// `A·diag(d)`: column `c` scaled by `d[c]`.
    pub fn scale_cols(&self, d: &[S]) -> Self {
        assert_eq!(d.len(), self.dim);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, v.clone() * d[*c].clone()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        GeneratorMatrix { dim: self.dim, rows }
    }

    /// `A + diag(d)`.
    pub fn add_diagonal(&self, d: &[S]) -> Self {
        self.add(&Self::diagonal(d.to_vec())).expect("same dimension")
    }

    pub fn diagonal_values(&self) -> Vec<S> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Largest `|a_rc|`; zero for the empty matrix.
    pub fn max_abs(&self) -> S {
        self.entries().fold(S::zero(), |m, (_, _, v)| S::max_of(m, v.abs()))
    }

    pub fn max_abs_offdiag(&self) -> S {
        self.entries()
            .filter(|(r, c, _)| r != c)
            .fold(S::zero(), |m, (_, _, v)| S::max_of(m, v.abs()))
    }

    /// Largest `|a_rc − b_rc|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<S> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Applies `f` to every stored value.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GeneratorMatrix<T> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        GeneratorMatrix { dim: self.dim, rows }
    }

    /// Dense row-major copy as `f64`, for small-matrix diagnostics.
    pub fn to_dense_f64(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.dim]; self.dim];
        for (r, c, v) in self.entries() {
            out[r][c] = v.to_f64();
        }
        out
    }
}
