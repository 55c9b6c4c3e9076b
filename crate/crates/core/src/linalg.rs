//! Exact linear algebra over Q(sqrt3): row reduction, kernel bases, rank,
//! span bookkeeping and small solvers. Everything here is exact; there is no
//! floating point on this path.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = QMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_antisymmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if !(&self[(i, j)] + &self[(j, i)]).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&self, c: &Scalar) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let delta = &factor * &m[(r, j)];
                        m[(i, j)] = &m[(i, j)] - &delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the right null space; empty iff injective.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self * x = b; None if inconsistent or underdetermined pick not needed here.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let delta = &factor * &m[(c, j)];
                    m[(i, j)] = &m[(i, j)] - &delta;
                }
            }
        }
        det
    }

    /// True iff the symmetric matrix is negative definite (exact, via leading
    /// principal minors).
    pub fn is_negative_definite(&self) -> bool {
        assert!(self.is_symmetric(), "definiteness needs a symmetric matrix");
        for k in 1..=self.rows {
            let minor = QMatrix::from_fn(k, k, |i, j| self[(i, j)].clone());
            let sign = minor.determinant().sign();
            let expected = if k % 2 == 0 { 1 } else { -1 };
            if sign != expected {
                return false;
            }
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    let delta = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += &delta;
                }
            }
        }
        out
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Exact rank of a list of equally-shaped vectors.
pub fn span_dim(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    assert!(vectors.iter().all(|v| v.len() == cols), "shape mismatch in span");
    QMatrix::from_rows(vectors.to_vec()).rank()
}

/// Incrementally maintained row space; keeps rows in reduced echelon form.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    width: usize,
    /// rows are kept reduced; pivot column of row k strictly increases with k
    rows: Vec<Vec<Scalar>>,
}

impl SpanBasis {
    pub fn new(width: usize) -> Self {
        SpanBasis { width, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    fn reduce(&self, v: &mut Vec<Scalar>) {
        for row in &self.rows {
            let pivot = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let factor = v[pivot].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    let delta = &factor * ri;
                    *vi = &*vi - &delta;
                }
            }
        }
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width, "shape mismatch in span");
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().unwrap();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        // back-substitute into existing rows
        for row in &mut self.rows {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (ri, vi) in row.iter_mut().zip(&v) {
                    let delta = &factor * vi;
                    *ri = &*ri - &delta;
                }
            }
        }
        let pos = self
            .rows
            .iter()
            .position(|r| r.iter().position(|x| !x.is_zero()).unwrap() > pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, v);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        // one relation
        let m = QMatrix::from_int_rows(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Scalar::from_int(-1), Scalar::from_int(1)]);
        // injective
        assert!(QMatrix::identity(2).kernel_basis().is_empty());
        // full kernel
        assert_eq!(QMatrix::zeros(2, 2).kernel_basis().len(), 2);
    }

    #[test]
    fn kernel_vectors_are_exact_solutions() {
        let m = QMatrix::from_int_rows(&[&[2, 3, 5], &[1, -1, 0]]);
        for v in m.kernel_basis() {
            for i in 0..m.rows {
                let mut s = Scalar::zero();
                for j in 0..m.cols {
                    s += &(&m[(i, j)] * &v[j]);
                }
                assert!(s.is_zero());
            }
        }
        assert_eq!(m.kernel_basis().len() + m.rank(), m.cols);
    }

    #[test]
    fn span_dims() {
        let v = vec![
            vec![Scalar::from_int(1), Scalar::from_int(0)],
            vec![Scalar::from_int(0), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(1)],
        ];
        assert_eq!(span_dim(&v), 2);
        assert_eq!(span_dim(&[]), 0);
    }

    #[test]
    fn so3_span_is_three_dimensional() {
        // {E12, E13, [E12, E13]} in so(3)
        let e = |i: usize, j: usize| {
            QMatrix::from_fn(3, 3, |r, c| {
                if (r, c) == (i, j) {
                    Scalar::one()
                } else if (r, c) == (j, i) {
                    Scalar::from_int(-1)
                } else {
                    Scalar::zero()
                }
            })
        };
        let a = e(0, 1);
        let b = e(0, 2);
        let c = a.commutator(&b);
        let vs: Vec<Vec<Scalar>> = [&a, &b, &c].iter().map(|m| m.flatten()).collect();
        assert_eq!(span_dim(&vs), 3);
    }

    #[test]
    fn span_basis_incremental() {
        let mut sb = SpanBasis::new(3);
        assert!(sb.insert(vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(0)]));
        assert!(sb.insert(vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(1)]));
        assert!(!sb.insert(vec![Scalar::from_int(1), Scalar::from_int(3), Scalar::from_int(1)]));
        assert_eq!(sb.dim(), 2);
        assert!(sb.contains(&[Scalar::from_int(2), Scalar::from_int(5), Scalar::from_int(1)]));
        assert!(!sb.contains(&[Scalar::zero(), Scalar::zero(), Scalar::one()]));
    }

    #[test]
    fn inverse_and_det() {
        let m = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        assert_eq!(m.determinant(), Scalar::from_int(1));
        assert!(QMatrix::zeros(2, 2).inverse().is_none());
    }

    #[test]
    fn negative_definite() {
        let m = QMatrix::from_int_rows(&[&[-2, 1], &[1, -2]]);
        assert!(m.is_negative_definite());
        let p = QMatrix::from_int_rows(&[&[2, 0], &[0, 2]]);
        assert!(!p.is_negative_definite());
    }
}
