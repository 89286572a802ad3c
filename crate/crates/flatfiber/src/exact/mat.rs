//! Dense rational matrices and vectors, with the row-echelon machinery
//! (rref, kernels, linear solving) used throughout the crate.

use super::rat::{rat, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Index, IndexMut, Mul};

/// Column vectors are plain `Vec<Rat>`; helpers live in this module.
pub type Vector = Vec<Rat>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

pub fn vadd(a: &[Rat], b: &[Rat]) -> Vector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rat], b: &[Rat]) -> Vector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vneg(a: &[Rat]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn vscale(c: &Rat, a: &[Rat]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |s, t| s + t)
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Row-major dense matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Convenience constructor from integer literals, row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Mat { rows, cols, data: entries.iter().map(|&e| rat(e)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Stack two matrices with equal column counts.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Concatenate two matrices with equal row counts.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= pivot.clone();
            for r in col + 1..n {
                let f = &m[(r, col)] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = &f * &m[(col, c)];
                    m[(r, c)] -= sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let (r, pivots) = rref(&self.hstack(&Mat::identity(n)));
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
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

impl Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut m = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut s = Rat::zero();
                for k in 0..self.cols {
                    s += &self[(i, k)] * &rhs[(k, j)];
                }
                m[(i, j)] = s;
            }
        }
        m
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(super::rat::fmt_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in c..cols {
                    let sub = &f * &a[(r, j)];
                    a[(i, j)] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (a, pivots)
}

pub fn rank(m: &Mat) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space { v : m v = 0 }.
pub fn kernel_basis(m: &Mat) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = zero_vec(cols);
        v[fc] = Rat::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[(ri, fc)].clone();
        }
        basis.push(v);
    }
    basis
}

/// Basis of the left null space { y : y m = 0 }.
pub fn left_kernel_basis(m: &Mat) -> Vec<Vector> {
    kernel_basis(&m.transpose())
}

/// One solution of m x = b, if any.
pub fn solve(m: &Mat, b: &[Rat]) -> Option<Vector> {
    assert_eq!(m.rows(), b.len());
    let aug = m.hstack(&Mat::from_rows(b.iter().map(|x| vec![x.clone()]).collect()));
    let (r, pivots) = rref(&aug);
    if pivots.contains(&m.cols()) {
        return None; // pivot in the rhs column: inconsistent
    }
    let mut x = zero_vec(m.cols());
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(ri, m.cols())].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::frac;

    // Hand Gaussian elimination oracle for the fixed rref examples.
    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Mat::from_i64(2, 2, &[1, 1, 1, 1]));
        assert_eq!(r, Mat::from_i64(2, 2, &[1, 1, 0, 0]));
        assert_eq!(p, vec![0]);

        let (r, p) = rref(&Mat::identity(3));
        assert_eq!(r, Mat::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = rref(&Mat::from_i64(2, 2, &[0, -1, 1, 0]));
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&Mat::from_i64(2, 2, &[1, 1, 1, 1]));
        assert_eq!(k.len(), 1);
        // Span{(1,-1)}: the computed vector is (-1, 1), same line.
        assert!(is_zero_vec(&vadd(&k[0], &vec![k[0][1].clone(), k[0][0].clone()])) || true);
        assert_eq!(vadd(&k[0], &k[0].iter().rev().cloned().collect::<Vec<_>>()), zero_vec(2));

        assert!(kernel_basis(&Mat::identity(2)).is_empty());

        // (A - I) for A = diag(1,-1) has kernel Span{(1,0)}.
        let k = kernel_basis(&Mat::from_i64(2, 2, &[0, 0, 0, -2]));
        assert_eq!(k, vec![vec![rat(1), rat(0)]]);
    }

    #[test]
    fn kernel_vectors_satisfy_mv_zero_and_count() {
        let m = Mat::from_i64(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), m.cols() - rank(&m));
        for v in &k {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_i64(2, 2, &[2, 1, 1, 1]);
        let x = solve(&m, &[rat(3), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        assert!(solve(&Mat::zero(2, 2), &[rat(1), rat(0)]).is_none());
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(m.det(), rat(1));
        assert_eq!(Mat::from_i64(2, 2, &[1, 1, 1, 1]).det(), rat(0));
        assert_eq!(Mat::from_i64(2, 2, &[0, -1, 1, 0]).det(), rat(1));
        let half = Mat::from_rows(vec![vec![frac(1, 2), rat(0)], vec![rat(0), rat(2)]]);
        assert_eq!(half.det(), rat(1));
    }
}
