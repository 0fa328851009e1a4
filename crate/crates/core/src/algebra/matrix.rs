//! Rectangular matrices over a commutative ring, plus exact linear algebra over fields.

use std::fmt;

use super::ring::CommutativeRing;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Row-major matrix whose entries belong to one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> RingMatrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RingMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::dimension("ragged matrix rows"));
        }
        Ok(RingMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn filled<R: CommutativeRing<Element = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: CommutativeRing<Element = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { ring.one() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: E) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        self.entries[r * self.cols + c] = value;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> RingMatrix<F> {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// Ordinary matrix product with the arithmetic of `ring`.
pub fn ring_matrix_product<R: CommutativeRing>(
    ring: &R,
    a: &RingMatrix<R::Element>,
    b: &RingMatrix<R::Element>,
) -> Result<RingMatrix<R::Element>> {
    if a.cols != b.rows {
        return Err(Error::dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(RingMatrix::from_fn(a.rows, b.cols, |r, c| {
        ring.sum((0..a.cols).map(|k| ring.mul(a.get(r, k), b.get(k, c))))
    }))
}

pub fn matrix_sum<R: CommutativeRing>(
    ring: &R,
    a: &RingMatrix<R::Element>,
    b: &RingMatrix<R::Element>,
) -> Result<RingMatrix<R::Element>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::dimension("matrix sum of different shapes"));
    }
    Ok(RingMatrix::from_fn(a.rows, a.cols, |r, c| {
        ring.add(a.get(r, c), b.get(r, c))
    }))
}

pub fn is_zero_matrix<R: CommutativeRing>(ring: &R, a: &RingMatrix<R::Element>) -> bool {
    a.entries.iter().all(|e| ring.is_zero(e))
}

impl<E: fmt::Display> fmt::Display for RingMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.entries[r * self.cols + c].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row-reduced echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Scalar>]) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let inv = m[top][col].inv().unwrap();
        for x in m[top].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != top && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..ncols {
                    let delta = &factor * &m[top][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    rref(rows).1.len()
}

/// Inverse of a square scalar matrix, `None` when singular.
pub fn inverse(field: Field, a: &RingMatrix<Scalar>) -> Option<RingMatrix<Scalar>> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "square matrix");
    let augmented: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.extend((0..n).map(|c| if r == c { field.one() } else { field.zero() }));
            row
        })
        .collect();
    let (red, pivots) = rref(&augmented);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(RingMatrix::from_fn(n, n, |r, c| red[r][n + c].clone()))
}

pub fn determinant(field: Field, a: &RingMatrix<Scalar>) -> Scalar {
    let n = a.rows();
    assert_eq!(n, a.cols(), "square matrix");
    let mut m = a.to_rows();
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return field.zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv().unwrap();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
    }
    det
}

/// Basis of `{v : rows · v = 0}` for vectors of length `ncols`.
pub fn null_space(field: Field, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let (red, pivots) = rref(rows);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&red[r][free];
            }
            v
        })
        .collect()
}

/// Reduced echelon basis of the column space.
pub fn column_space(a: &RingMatrix<Scalar>) -> Vec<Vec<Scalar>> {
    rref(&a.transpose().to_rows()).0
}

pub fn mat_vec(field: Field, a: &RingMatrix<Scalar>, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.cols(), v.len());
    (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
        })
        .collect()
}
