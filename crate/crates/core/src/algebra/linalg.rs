use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ring::Q;

/// Dense exact-rational matrix with optional semantic row/column labels.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Q>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Q::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        MatrixQ {
            rows: r,
            cols: c,
            data: rows,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    /// Build from column vectors of equal length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        let mut col_labels = self.col_labels.clone();
        col_labels.extend(other.col_labels.iter().cloned());
        MatrixQ {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
            row_labels: self.row_labels.clone(),
            col_labels,
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        let mut row_labels = self.row_labels.clone();
        row_labels.extend(other.row_labels.iter().cloned());
        MatrixQ {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            row_labels,
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn rank(&self) -> usize {
        echelon(self).pivots.len()
    }

    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Q>>) {
        rank_kernel(self)
    }
}

/// Integer row echelon form produced by fraction-free (Bareiss) elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn integer_rows(m: &MatrixQ) -> Vec<Vec<BigInt>> {
    m.data
        .iter()
        .map(|row| {
            let den = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| v.numer() * (&den / v.denom()))
                .collect()
        })
        .collect()
}

fn echelon(m: &MatrixQ) -> Echelon {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    for row in a.iter_mut() {
        let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for v in row.iter_mut() {
                *v = &*v / &g;
            }
        }
    }
    Echelon { rows: a, pivots }
}

/// Rank and a kernel basis (`M v = 0`), one vector per free column.
pub fn rank_kernel(m: &MatrixQ) -> (usize, Vec<Vec<Q>>) {
    let e = echelon(m);
    let rank = e.pivots.len();
    let free: Vec<usize> = (0..m.cols).filter(|c| !e.pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); m.cols];
            v[f] = Q::one();
            for (r, &pc) in e.pivots.iter().enumerate().rev() {
                let row = &e.rows[r];
                let mut acc = Q::zero();
                for j in pc + 1..m.cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        acc += Q::from_integer(row[j].clone()) * &v[j];
                    }
                }
                v[pc] = -acc / Q::from_integer(row[pc].clone());
            }
            v
        })
        .collect();
    (rank, kernel)
}

/// Solution set of `A x = b`: a particular solution plus a kernel basis, or
/// `None` if the system is inconsistent.
pub fn solve_affine(a: &MatrixQ, b: &[Q]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    assert_eq!(b.len(), a.rows);
    if a.rows == 0 {
        let (_, homogeneous) = rank_kernel(a);
        return Some((vec![Q::zero(); a.cols], homogeneous));
    }
    let neg_b: Vec<Vec<Q>> = b.iter().map(|v| vec![-v.clone()]).collect();
    let aug = a.hstack(&MatrixQ::from_rows(neg_b));
    // Kernel vectors of [A | -b] with last coordinate 1 give solutions.
    let (_, kernel) = rank_kernel(&aug);
    let n = a.cols;
    let particular = kernel.iter().find(|v| !v[n].is_zero()).map(|v| {
        let s = v[n].clone();
        v[..n].iter().map(|x| x / &s).collect::<Vec<Q>>()
    })?;
    let (_, homogeneous) = rank_kernel(a);
    Some((particular, homogeneous))
}
