//! Dense integer matrices with exact rank and determinant.
//!
//! Both use Bareiss fraction-free elimination. Every intermediate entry is a
//! minor of the input, so all divisions are exact. Elimination first runs on
//! `i128` with checked arithmetic and restarts on `BigInt` if anything
//! overflows; the results are identical.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().map(Into::into).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// First entry `(r, c)` with `c > r` that is nonzero, scanning row-major.
    pub fn first_above_diagonal(&self) -> Option<(usize, usize)> {
        (0..self.rows).find_map(|r| {
            ((r + 1)..self.cols)
                .find(|&c| !self.get(r, c).is_zero())
                .map(|c| (r, c))
        })
    }

    /// First zero diagonal entry.
    pub fn first_zero_diagonal(&self) -> Option<usize> {
        (0..self.rows.min(self.cols)).find(|&i| self.get(i, i).is_zero())
    }

    pub fn is_lower_triangular_nonsingular(&self) -> bool {
        self.rows == self.cols && self.first_above_diagonal().is_none() && self.first_zero_diagonal().is_none()
    }

    pub fn rank(&self) -> usize {
        match self.to_i128() {
            Some(mut a) => match bareiss_i128(&mut a, self.rows, self.cols) {
                Some((rank, _)) => rank,
                None => self.rank_big(),
            },
            None => self.rank_big(),
        }
    }

    fn rank_big(&self) -> usize {
        let mut a = self.data.clone();
        bareiss_big(&mut a, self.rows, self.cols).0
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return BigInt::from(1);
        }
        if let Some(mut a) = self.to_i128() {
            if let Some((rank, det)) = bareiss_i128(&mut a, self.rows, self.cols) {
                return if rank < self.rows {
                    BigInt::zero()
                } else {
                    BigInt::from(det)
                };
            }
        }
        let mut a = self.data.clone();
        let (rank, det) = bareiss_big(&mut a, self.rows, self.cols);
        if rank < self.rows {
            BigInt::zero()
        } else {
            det
        }
    }

    fn to_i128(&self) -> Option<Vec<i128>> {
        self.data.iter().map(ToPrimitive::to_i128).collect()
    }

    /// Entries as decimal strings, row by row.
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }
}

/// Rank and signed last pivot (the determinant when full rank and square).
/// `None` on overflow.
fn bareiss_i128(a: &mut [i128], rows: usize, cols: usize) -> Option<(usize, i128)> {
    let mut prev: i128 = 1;
    let mut sign: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            sign = -sign;
        }
        let pivot = a[r * cols + c];
        for i in (r + 1)..rows {
            let lead = a[i * cols + c];
            for j in (c + 1)..cols {
                let v = pivot
                    .checked_mul(a[i * cols + j])?
                    .checked_sub(lead.checked_mul(a[r * cols + j])?)?;
                a[i * cols + j] = v / prev;
            }
            a[i * cols + c] = 0;
        }
        prev = pivot;
        r += 1;
    }
    Some((r, sign.checked_mul(prev)?))
}

fn bareiss_big(a: &mut [BigInt], rows: usize, cols: usize) -> (usize, BigInt) {
    let mut prev = BigInt::from(1);
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            negate = !negate;
        }
        let pivot = a[r * cols + c].clone();
        for i in (r + 1)..rows {
            let lead = a[i * cols + c].clone();
            for j in (c + 1)..cols {
                let v = &pivot * &a[i * cols + j] - &lead * &a[r * cols + j];
                a[i * cols + j] = v / &prev;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    (r, if negate { -prev } else { prev })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(IntMatrix::identity(5).rank(), 5);
        assert_eq!(IntMatrix::identity(5).determinant(), BigInt::from(1));
        assert_eq!(IntMatrix::zeros(4, 3).rank(), 0);
        assert_eq!(IntMatrix::zeros(3, 3).determinant(), BigInt::zero());
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::from(1));
    }

    #[test]
    fn small_determinants() {
        assert_eq!(m(&[vec![2, 3], vec![1, 4]]).determinant(), BigInt::from(5));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(
            m(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).determinant(),
            BigInt::from(-3)
        );
        assert_eq!(
            m(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).determinant(),
            BigInt::zero()
        );
    }

    #[test]
    fn rank_with_skipped_columns() {
        let a = m(&[vec![0, 1, 2], vec![0, 2, 4], vec![0, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let b = m(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 0, 0, 1]]);
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn big_path_matches_small_path() {
        // Entries near 2^62 overflow the i128 path during elimination.
        let big = 1i64 << 62;
        let a = m(&[vec![big, 3, 1], vec![5, big, 2], vec![1, 1, big]]);
        let mut data = a.data.clone();
        let (rank, det) = bareiss_big(&mut data, 3, 3);
        assert_eq!(rank, 3);
        assert_eq!(a.determinant(), det);
        let b = BigInt::from(big);
        let expected = &b * &b * &b - 2 * &b - 15 * &b + 6 + 5 - &b;
        assert_eq!(det, expected);
    }

    #[test]
    fn triangular_pattern() {
        let a = m(&[vec![1, 0], vec![5, -1]]);
        assert!(a.is_lower_triangular_nonsingular());
        let b = m(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(b.first_above_diagonal(), Some((0, 1)));
        let c = m(&[vec![1, 0], vec![1, 0]]);
        assert_eq!(c.first_zero_diagonal(), Some(1));
    }
}
