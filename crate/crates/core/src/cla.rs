//! Dense complex linear algebra for the tiny Jacobians of Landau-Ginzburg
//! systems (row-major `n x n`).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

/// Solves `a x = b` by Gaussian elimination with partial pivoting. Returns
/// `None` when a pivot vanishes.
pub fn solve(a: &[Complex64], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i * n + col].norm().total_cmp(&m[j * n + col].norm()))?;
        if m[pivot * n + col].norm() == 0.0 || !m[pivot * n + col].norm().is_finite() {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                m.swap(col * n + k, pivot * n + k);
            }
            x.swap(col, pivot);
        }
        let inv = m[col * n + col].inv();
        for row in (col + 1)..n {
            let factor = m[row * n + col] * inv;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = m[col * n + k];
                m[row * n + k] -= factor * v;
            }
            let v = x[col];
            x[row] -= factor * v;
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in (col + 1)..n {
            s -= m[col * n + k] * x[k];
        }
        x[col] = s / m[col * n + col];
    }
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}

pub fn inverse(a: &[Complex64], n: usize) -> Option<Vec<Complex64>> {
    let mut inv = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        let col = solve(a, &e)?;
        for i in 0..n {
            inv[i * n + j] = col[i];
        }
    }
    Some(inv)
}

fn norm_inf(a: &[Complex64], n: usize) -> f64 {
    (0..n).map(|i| a[i * n..(i + 1) * n].iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Infinity-norm condition number; `f64::INFINITY` for singular matrices.
pub fn condition(a: &[Complex64], n: usize) -> f64 {
    match inverse(a, n) {
        Some(inv) => norm_inf(a, n) * norm_inf(&inv, n),
        None => f64::INFINITY,
    }
}

pub fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
