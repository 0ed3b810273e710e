use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ratio::{self, Rational};
use crate::ratlat::RatVector;

/// Dense matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == n_cols),
            "ragged matrix rows"
        );
        Self {
            n_rows,
            n_cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: &[RatVector]) -> Self {
        let n_cols = cols.len();
        let n_rows = cols.first().map_or(0, RatVector::dim);
        let mut rows = vec![vec![Rational::zero(); n_cols]; n_rows];
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.dim(), n_rows, "ragged matrix columns");
            for (i, row) in rows.iter_mut().enumerate() {
                row[j] = c.entry(i).clone();
            }
        }
        Self::from_rows(rows)
    }

    /// Builds from `(numerator, denominator)` pairs; handy in tests.
    pub fn from_i64(rows: &[&[(i64, i64)]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| ratio::rat(n, d)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            entries: vec![Rational::zero(); n_rows * n_cols],
        }
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = c.clone();
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n_cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.n_cols + j]
    }

    pub fn row(&self, i: usize) -> RatVector {
        RatVector::new(self.entries[i * self.n_cols..(i + 1) * self.n_cols].to_vec())
    }

    pub fn col(&self, j: usize) -> RatVector {
        RatVector::new((0..self.n_rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn cols(&self) -> Vec<RatVector> {
        (0..self.n_cols).map(|j| self.col(j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rational>> {
        (0..self.n_rows)
            .map(|i| self.entries[i * self.n_cols..(i + 1) * self.n_cols].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n_cols, other.n_rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for j in 0..other.n_cols {
                let mut acc = Rational::zero();
                for k in 0..self.n_cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn matvec(&self, v: &RatVector) -> RatVector {
        assert_eq!(self.n_cols, v.dim(), "matvec dimension mismatch");
        RatVector::new(
            (0..self.n_rows)
                .map(|i| {
                    (0..self.n_cols)
                        .map(|j| self.at(i, j) * v.entry(j))
                        .sum()
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn neg(&self) -> RatMatrix {
        self.scale(&-Rational::one())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(ratio::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.n_rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Exact determinant by fraction Gaussian elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.n_rows;
        let mut m = self.rows_vec();
        let mut det = Rational::one();
        for p in 0..n {
            let pivot = (p..n).find(|&i| !m[i][p].is_zero());
            let Some(pi) = pivot else {
                return Rational::zero();
            };
            if pi != p {
                m.swap(pi, p);
                det = -det;
            }
            det *= m[p][p].clone();
            let inv = m[p][p].recip();
            for i in p + 1..n {
                if m[i][p].is_zero() {
                    continue;
                }
                let f = &m[i][p] * &inv;
                for j in p..n {
                    let s = &m[p][j] * &f;
                    m[i][j] -= s;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.n_rows;
        let mut m = self.rows_vec();
        let mut inv = RatMatrix::identity(n).rows_vec();
        for p in 0..n {
            let pivot = (p..n).find(|&i| !m[i][p].is_zero());
            let Some(pi) = pivot else {
                return Err(Error::SingularMatrix);
            };
            m.swap(pi, p);
            inv.swap(pi, p);
            let f = m[p][p].recip();
            for j in 0..n {
                m[p][j] *= &f;
                inv[p][j] *= &f;
            }
            for i in 0..n {
                if i == p || m[i][p].is_zero() {
                    continue;
                }
                let f = m[i][p].clone();
                for j in 0..n {
                    let s = &m[p][j] * &f;
                    m[i][j] -= s;
                    let s = &inv[p][j] * &f;
                    inv[i][j] -= s;
                }
            }
        }
        Ok(RatMatrix::from_rows(inv))
    }

    /// Rank of the column span, exact.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        let mut m = self.rows_vec();
        let (rows, cols) = (self.n_rows, self.n_cols);
        let mut rank = 0;
        for j in 0..cols {
            if rank == rows {
                break;
            }
            let pivot = (rank..rows).find(|&i| !m[i][j].is_zero());
            let Some(pi) = pivot else { continue };
            m.swap(pi, rank);
            let inv = m[rank][j].recip();
            for i in rank + 1..rows {
                if m[i][j].is_zero() {
                    continue;
                }
                let f = &m[i][j] * &inv;
                for k in j..cols {
                    let s = &m[rank][k] * &f;
                    m[i][k] -= s;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Monic characteristic polynomial coefficients `c[0] + c[1] x + ... + x^n`
    /// by the Faddeev-LeVerrier recursion, exact.
    pub fn char_poly(&self) -> Vec<Rational> {
        assert!(self.is_square());
        let n = self.n_rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = RatMatrix::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let c = -(m.trace() / ratio::int(k as i64));
            for i in 0..n {
                *m.at_mut(i, i) += &c;
            }
            coeffs[n - k] = c;
        }
        coeffs
    }

    /// Small non-negative matrix power.
    pub fn pow(&self, e: usize) -> RatMatrix {
        assert!(self.is_square());
        let mut out = RatMatrix::identity(self.n_rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Induced max-norm (largest absolute row sum), exact.
    pub fn norm_inf(&self) -> Rational {
        (0..self.n_rows)
            .map(|i| -> Rational { (0..self.n_cols).map(|j| self.at(i, j).abs()).sum() })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn block_diag(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
        let mut out = Self::zeros(a.n_rows + b.n_rows, a.n_cols + b.n_cols);
        for i in 0..a.n_rows {
            for j in 0..a.n_cols {
                *out.at_mut(i, j) = a.at(i, j).clone();
            }
        }
        for i in 0..b.n_rows {
            for j in 0..b.n_cols {
                *out.at_mut(a.n_rows + i, a.n_cols + j) = b.at(i, j).clone();
            }
        }
        out
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n_rows)
            .map(|i| (0..self.n_cols).map(|j| ratio::to_f64(self.at(i, j))).collect())
            .collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n_rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n_cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", ratio::format_rational(self.at(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.n_rows)
            .map(|i| {
                (0..self.n_cols)
                    .map(|j| ratio::format_rational(self.at(i, j)))
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| ratio::parse_rational(s).map_err(D::Error::custom))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RatMatrix::from_rows(parsed))
    }
}
