//! Exact linear algebra over `Q`.
//!
//! Matrices act on column vectors: a `rows × cols` matrix is a map
//! `Q^cols → Q^rows`. Subspaces are stored as the nonzero rows of their
//! reduced row echelon form, which is unique, so derived `PartialEq` is
//! subspace equality.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{fmt_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

fn check_dim(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, found })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            check_dim(cols, r.len())?;
            data.extend(r);
        }
        Ok(QMatrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Integer matrix from row slices. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("rectangular input")
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_dim(rows, c.len())?;
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<Self, LinalgError> {
        check_dim(self.rows, self.cols)?;
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        rref(self.rows_vec(), self.cols).len()
    }

    /// Exact inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        let reduced = rref(aug, 2 * n);
        if reduced.len() < n || reduced.iter().enumerate().any(|(i, r)| r[i].is_zero()) {
            return None;
        }
        let rows = reduced.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(n, rows).expect("square"))
    }

    fn rows_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Nonzero rows of the reduced row echelon form of `rows`.
fn rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

fn leading(row: &[Rational]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("nonzero row")
}

/// A subspace of `Q^ambient`, stored as its RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &QMatrix::identity(ambient).rows_vec()).expect("square")
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        for v in vectors {
            check_dim(ambient, v.len())?;
        }
        Ok(Subspace {
            ambient,
            basis: rref(vectors.to_vec(), ambient),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// RREF rows.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Pivot columns of the RREF basis.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| leading(r)).collect()
    }

    /// The basis as a `dim × ambient` matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_rows(self.ambient, self.basis.clone()).expect("consistent rows")
    }

    /// The canonical representative of `v` modulo this subspace: the unique
    /// vector in `v + U` vanishing on every pivot column.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        check_dim(self.ambient, v.len())?;
        let mut out = v.to_vec();
        for row in &self.basis {
            let p = leading(row);
            if !out[p].is_zero() {
                let factor = out[p].clone();
                for (x, b) in out.iter_mut().zip(row) {
                    *x -= &factor * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool, LinalgError> {
        check_dim(self.ambient, other.ambient)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal(&self, other: &Self) -> Result<bool, LinalgError> {
        check_dim(self.ambient, other.ambient)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dim(self.ambient, other.ambient)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &all)
    }

    /// Vectors orthogonal to this subspace under the standard pairing.
    pub fn annihilator(&self) -> Self {
        kernel(&self.basis_matrix())
    }

    /// `U ∩ V = ann(ann U + ann V)`.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dim(self.ambient, other.ambient)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `dim(self) - dim(sub)`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Self) -> Result<Option<usize>, LinalgError> {
        Ok(self.contains_subspace(sub)?.then(|| self.dim() - sub.dim()))
    }

    /// `M(U)` for `M: Q^ambient → Q^m`.
    pub fn apply(&self, m: &QMatrix) -> Result<Self, LinalgError> {
        check_dim(m.cols(), self.ambient)?;
        let images = self
            .basis
            .iter()
            .map(|v| m.apply(v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::span(m.rows(), &images)
    }

    /// `M^{-1}(U) = {x : Mx ∈ U}` for `M: Q^n → Q^ambient`.
    pub fn preimage(&self, m: &QMatrix) -> Result<Self, LinalgError> {
        check_dim(m.rows(), self.ambient)?;
        let constraints = self.annihilator().basis_matrix();
        Ok(kernel(&constraints.mul(m)?))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                format!(
                    "({})",
                    r.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

/// Null space of `m` inside `Q^cols`.
pub fn kernel(m: &QMatrix) -> Subspace {
    let reduced = rref(m.rows_vec(), m.cols);
    let pivots: Vec<usize> = reduced.iter().map(|r| leading(r)).collect();
    let vectors: Vec<Vec<Rational>> = (0..m.cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols];
            v[free] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect();
    Subspace::span(m.cols, &vectors).expect("consistent dims")
}

/// Column space of `m` inside `Q^rows`.
pub fn image(m: &QMatrix) -> Subspace {
    Subspace {
        ambient: m.rows,
        basis: rref(m.transpose().rows_vec(), m.rows),
    }
}
