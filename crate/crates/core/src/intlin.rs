//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Integer routines use checked `i64` arithmetic and report overflow instead
//! of wrapping. Rational elimination runs over `Ratio<i128>`; the matrices in
//! play are at most a few rows with single-digit entries.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::LatticeError;

pub type Rational = Ratio<i128>;

fn checked_axpy(dst: &mut [i64], src: &[i64], q: i64) -> Result<(), LatticeError> {
    for (d, s) in dst.iter_mut().zip(src) {
        let prod = s.checked_mul(q).ok_or(LatticeError::Overflow)?;
        *d = d.checked_sub(prod).ok_or(LatticeError::Overflow)?;
    }
    Ok(())
}

/// Cokernel presentation of an injective integer map `Z^n -> Z^r` given by the
/// `r x n` matrix `a` (one row per ray).
///
/// Returns the `(r - n) x r` matrix `q` with `ker q = im a` and `q` surjective,
/// computed by Smith-style row and column elimination. Fails with
/// [`LatticeError::Torsion`] when the cokernel is not free.
pub fn free_cokernel(a: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, LatticeError> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..rows)
        .map(|i| {
            let mut row = vec![0; rows];
            row[i] = 1;
            row
        })
        .collect();

    for t in 0..cols.min(rows) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            return Err(LatticeError::Singular);
        };
        m.swap(t, pi);
        u.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            for i in (t + 1)..rows {
                if m[i][t] == 0 {
                    continue;
                }
                let q = m[i][t] / m[t][t];
                let (pivot_row, other) = split_pair(&mut m, t, i);
                checked_axpy(other, pivot_row, q)?;
                let (pivot_u, other_u) = split_pair(&mut u, t, i);
                checked_axpy(other_u, pivot_u, q)?;
                if m[i][t] != 0 {
                    m.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in (t + 1)..cols {
                if m[t][j] == 0 {
                    continue;
                }
                let q = m[t][j] / m[t][t];
                for row in m.iter_mut() {
                    let prod = row[t].checked_mul(q).ok_or(LatticeError::Overflow)?;
                    row[j] = row[j].checked_sub(prod).ok_or(LatticeError::Overflow)?;
                }
                if m[t][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if m[t][t].abs() != 1 {
            return Err(LatticeError::Torsion);
        }
    }
    Ok(u.split_off(cols))
}

fn split_pair<T>(rows: &mut [T], pivot: usize, other: usize) -> (&T, &mut T) {
    debug_assert!(pivot < other);
    let (head, tail) = rows.split_at_mut(other);
    (&head[pivot], &mut tail[0])
}

/// Solves the square system `a x = b` over the rationals.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, LatticeError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(LatticeError::DimensionMismatch { expected: n, found: b.len() });
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(LatticeError::Singular)?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col];
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                    *v -= factor * p;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n]).collect())
}

/// Solves `a x = b` and insists on an integral solution.
pub fn solve_integer(a: &[Vec<i64>], b: &[i64]) -> Result<Vec<i64>, LatticeError> {
    let x = solve_rational(&to_rational_matrix(a), &to_rational_vec(b))?;
    x.iter()
        .map(|v| {
            if v.is_integer() {
                i64::try_from(*v.numer()).map_err(|_| LatticeError::Overflow)
            } else {
                Err(LatticeError::NoIntegerSolution)
            }
        })
        .collect()
}

/// Exact determinant by rational elimination.
pub fn determinant(a: &[Vec<i64>]) -> Result<i64, LatticeError> {
    let n = a.len();
    let mut m = to_rational_matrix(a);
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(0);
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col];
        for r in (col + 1)..n {
            let factor = m[r][col] / m[col][col];
            let pivot_row = m[col].clone();
            for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
        }
    }
    debug_assert!(det.is_integer());
    i64::try_from(det.to_integer()).map_err(|_| LatticeError::Overflow)
}

pub fn to_rational_matrix(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    a.iter().map(|row| to_rational_vec(row)).collect()
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(i128::from(x))).collect()
}

pub fn transpose<T: Copy>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Floor of a rational, as `i64`.
pub fn floor_rational(v: &Rational) -> Result<i64, LatticeError> {
    i64::try_from(v.floor().to_integer()).map_err(|_| LatticeError::Overflow)
}

/// `|v|` for rationals, used by callers that compare magnitudes.
pub fn abs_rational(v: &Rational) -> Rational {
    v.abs()
}
