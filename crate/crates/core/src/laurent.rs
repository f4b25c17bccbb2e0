//! Laurent polynomial families `W_{t,θ}(z) = Σ c_ρ(t, θ) z^{n_ρ}` over the rays
//! of a fan, and the logarithmic-derivative system `z_i ∂W/∂z_i`.
//!
//! A term's coefficient at `(t, θ)` is
//! `base · exp(-t · t_rate) · exp(2πi · orientation · winding · θ)`; integer
//! windings make every family a closed loop in `θ`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::SolveError;
use crate::toric::{ToricSurfaceData, VarietyKind};

/// Direction in which coefficient phases are traversed. `Negative`
/// (`exp(-2πi w θ)`) is the convention under which the tracked loops end on
/// the base solution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Orientation {
    Positive,
    #[default]
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn from_sign(sign: i32) -> Option<Self> {
        match sign {
            1 => Some(Orientation::Positive),
            -1 => Some(Orientation::Negative),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Term {
    pub exponent: Vec<i64>,
    pub re: f64,
    pub im: f64,
    pub t_rate: f64,
    pub winding: i64,
}

impl Term {
    pub fn base(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LaurentFamily {
    pub dim: usize,
    pub terms: Vec<Term>,
    pub orientation: Orientation,
}

/// `Arg` normalized to `[0, 1)`, so that `Arg(r e^{2πiθ}) = θ mod 1`.
pub fn unit_arg(c: Complex64) -> f64 {
    let a = libm::atan2(c.im, c.re) / TAU;
    if a < 0.0 {
        let shifted = a + 1.0;
        if shifted >= 1.0 { 0.0 } else { shifted }
    } else {
        a
    }
}

pub(crate) fn monomial(z: &[Complex64], exponent: &[i64]) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (zi, &e) in z.iter().zip(exponent) {
        if e != 0 {
            acc *= zi.powi(e as i32);
        }
    }
    acc
}

fn check_point(z: &[Complex64]) -> Result<(), SolveError> {
    if z.iter().any(|v| v.norm() == 0.0 || !v.norm().is_finite()) {
        return Err(SolveError::ZeroCoordinate);
    }
    Ok(())
}

impl LaurentFamily {
    /// Coefficient of term `k` at deformation `t` and loop parameter `θ`.
    pub fn coefficient(&self, k: usize, t: f64, theta: f64) -> Complex64 {
        let term = &self.terms[k];
        let damp = libm::exp(-t * term.t_rate);
        let phase = TAU * self.orientation.sign() * (term.winding as f64) * theta;
        term.base() * damp * Complex64::new(libm::cos(phase), libm::sin(phase))
    }

    /// Value of the polynomial itself.
    pub fn evaluate(&self, z: &[Complex64], t: f64, theta: f64) -> Result<Complex64, SolveError> {
        check_point(z)?;
        Ok((0..self.terms.len()).map(|k| self.coefficient(k, t, theta) * monomial(z, &self.terms[k].exponent)).sum())
    }

    /// Same polynomial with the given per-term windings (a coefficient loop).
    pub fn with_windings(&self, windings: &[i64]) -> Self {
        assert_eq!(windings.len(), self.terms.len(), "one winding per term");
        let mut out = self.clone();
        for (term, &w) in out.terms.iter_mut().zip(windings) {
            term.winding = w;
        }
        out
    }

    /// The loop traversed backwards.
    pub fn reversed(&self) -> Self {
        let windings: Vec<i64> = self.terms.iter().map(|t| -t.winding).collect();
        self.with_windings(&windings)
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        Self { orientation, ..self.clone() }
    }
}

/// Exponential damping rate of each ray's coefficient in the catalog potential.
fn damping_rates(x: &ToricSurfaceData) -> Vec<f64> {
    let mut rates = vec![0.0; x.rays.len()];
    match &x.kind {
        VarietyKind::Projective { .. } => {}
        // e^{-t} z_2 / z_1
        VarietyKind::Blowup { k: 1 } => rates[2] = 1.0,
        // e^{-t} z_1 + e^{-t} z_2
        VarietyKind::Blowup { k: 2 } => {
            rates[0] = 1.0;
            rates[1] = 1.0;
        }
        VarietyKind::Blowup { .. } => {}
        // e^{-t} Π w^a / Π z on the ray e_0
        VarietyKind::ProjectiveBundle { s, a } => rates[s + a.len()] = 1.0,
        VarietyKind::Product(fa, fb) => {
            let (ra, rb) = (damping_rates(fa), damping_rates(fb));
            for (rate, ray) in rates.iter_mut().zip(&x.rays) {
                let (head, tail) = ray.split_at(fa.dim);
                if tail.iter().all(|&v| v == 0) {
                    if let Some(i) = fa.rays.iter().position(|r| r.as_slice() == head) {
                        *rate = ra[i];
                    }
                } else if let Some(j) = fb.rays.iter().position(|r| r.as_slice() == tail) {
                    *rate = rb[j];
                }
            }
        }
    }
    rates
}

/// Catalog Landau-Ginzburg potential: one unit-coefficient term per ray, with
/// the `e^{-t}` damping of the deformed blow-up and bundle potentials.
pub fn lg_potential(x: &ToricSurfaceData) -> LaurentFamily {
    let rates = damping_rates(x);
    LaurentFamily {
        dim: x.dim,
        terms: x
            .rays
            .iter()
            .zip(rates)
            .map(|(ray, t_rate)| Term { exponent: ray.clone(), re: 1.0, im: 0.0, t_rate, winding: 0 })
            .collect(),
        orientation: Orientation::default(),
    }
}

/// Deformation parameter used when none is given: `t = 8` for potentials
/// with damped terms, `0` otherwise.
pub fn default_deformation(x: &ToricSurfaceData) -> f64 {
    if damping_rates(x).iter().any(|&r| r > 0.0) {
        8.0
    } else {
        0.0
    }
}

/// The system `f_i(z) = z_i ∂W/∂z_i`, `i = 1..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LgSystem {
    pub family: LaurentFamily,
}

pub fn lg_system(w: &LaurentFamily) -> LgSystem {
    LgSystem { family: w.clone() }
}

impl LgSystem {
    pub fn dim(&self) -> usize {
        self.family.dim
    }

    fn weighted_monomials(&self, z: &[Complex64], t: f64, theta: f64) -> Vec<Complex64> {
        (0..self.family.terms.len())
            .map(|k| self.family.coefficient(k, t, theta) * monomial(z, &self.family.terms[k].exponent))
            .collect()
    }

    /// `f(z) - a`. An empty offset means `a = 0`.
    pub fn evaluate(&self, z: &[Complex64], t: f64, theta: f64, offset: &[f64]) -> Result<Vec<Complex64>, SolveError> {
        check_point(z)?;
        let n = self.dim();
        let mono = self.weighted_monomials(z, t, theta);
        Ok((0..n)
            .map(|i| {
                let s: Complex64 = self
                    .family
                    .terms
                    .iter()
                    .zip(&mono)
                    .filter(|(term, _)| term.exponent[i] != 0)
                    .map(|(term, m)| m * term.exponent[i] as f64)
                    .sum();
                s - offset.get(i).copied().unwrap_or(0.0)
            })
            .collect())
    }

    /// `∂f_i/∂z_j`, row-major.
    pub fn jacobian(&self, z: &[Complex64], t: f64, theta: f64) -> Result<Vec<Complex64>, SolveError> {
        let mut j = self.toric_jacobian(z, t, theta)?;
        let n = self.dim();
        for row in 0..n {
            for col in 0..n {
                j[row * n + col] /= z[col];
            }
        }
        Ok(j)
    }

    /// `∂f_i/∂ log z_j = Σ c_ρ n_{ρ,i} n_{ρ,j} z^{n_ρ}`, row-major.
    pub fn toric_jacobian(&self, z: &[Complex64], t: f64, theta: f64) -> Result<Vec<Complex64>, SolveError> {
        check_point(z)?;
        let n = self.dim();
        let mono = self.weighted_monomials(z, t, theta);
        let mut j = vec![Complex64::new(0.0, 0.0); n * n];
        for (term, m) in self.family.terms.iter().zip(&mono) {
            for row in 0..n {
                if term.exponent[row] == 0 {
                    continue;
                }
                for col in 0..n {
                    j[row * n + col] += m * (term.exponent[row] * term.exponent[col]) as f64;
                }
            }
        }
        Ok(j)
    }

    /// `∂f/∂θ` along the loop.
    pub fn theta_derivative(&self, z: &[Complex64], t: f64, theta: f64) -> Result<Vec<Complex64>, SolveError> {
        check_point(z)?;
        let n = self.dim();
        let mono = self.weighted_monomials(z, t, theta);
        let rate = Complex64::new(0.0, TAU * self.family.orientation.sign());
        Ok((0..n)
            .map(|i| {
                self.family
                    .terms
                    .iter()
                    .zip(&mono)
                    .filter(|(term, _)| term.exponent[i] != 0 && term.winding != 0)
                    .map(|(term, m)| m * rate * (term.winding * term.exponent[i]) as f64)
                    .sum()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::build_variety;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn exponents(w: &LaurentFamily) -> Vec<Vec<i64>> {
        w.terms.iter().map(|t| t.exponent.clone()).collect()
    }

    #[test]
    fn bl3_potential_has_six_unit_terms() {
        let x = build_variety("bl3").unwrap();
        let w = lg_potential(&x);
        // z1 + z2 + z1 z2 + 1/z1 + 1/(z1 z2) + 1/z2
        assert_eq!(exponents(&w), vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]]);
        assert!(w.terms.iter().all(|t| t.base() == c(1.0, 0.0) && t.t_rate == 0.0));
        assert_eq!(default_deformation(&x), 0.0);
    }

    #[test]
    fn bl2_potential_damps_the_positive_terms() {
        let x = build_variety("bl2").unwrap();
        let w = lg_potential(&x);
        let rates: Vec<f64> = w.terms.iter().map(|t| t.t_rate).collect();
        assert_eq!(rates, vec![1.0, 1.0, 0.0, 0.0, 0.0]);
        assert!((w.coefficient(0, 8.0, 0.0).re - libm::exp(-8.0)).abs() < 1e-18);
        assert_eq!(default_deformation(&x), 8.0);
    }

    #[test]
    fn bl1_and_bundle_damp_the_e0_term() {
        let bl1 = lg_potential(&build_variety("bl1").unwrap());
        assert_eq!(bl1.terms.iter().map(|t| t.t_rate).collect::<Vec<_>>(), vec![0.0, 0.0, 1.0, 0.0]);
        let pb = lg_potential(&build_variety("projbundle:s=1,a=1").unwrap());
        assert_eq!(pb.terms.iter().map(|t| t.t_rate).collect::<Vec<_>>(), vec![0.0, 0.0, 1.0, 0.0]);
        let prod = lg_potential(&build_variety("product:bl1,p1").unwrap());
        let damped: Vec<&Vec<i64>> = prod.terms.iter().filter(|t| t.t_rate > 0.0).map(|t| &t.exponent).collect();
        assert_eq!(damped, vec![&vec![-1, 1, 0]]);
    }

    #[test]
    fn p1_potential_and_system() {
        let w = lg_potential(&build_variety("p1").unwrap());
        assert_eq!(exponents(&w), vec![vec![1], vec![-1]]);
        let sys = lg_system(&w);
        assert!(sys.evaluate(&[c(1.0, 0.0)], 0.0, 0.0, &[]).unwrap()[0].norm() < 1e-15);
        let v = sys.evaluate(&[c(2.0, 0.0)], 0.0, 0.0, &[]).unwrap()[0];
        assert!((v - c(1.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn p2_system_is_z_minus_inverse_product() {
        let sys = lg_system(&lg_potential(&build_variety("p2").unwrap()));
        let z = [c(0.3, 1.1), c(-0.7, 0.2)];
        let f = sys.evaluate(&z, 0.0, 0.0, &[]).unwrap();
        let inv = (z[0] * z[1]).inv();
        assert!((f[0] - (z[0] - inv)).norm() < 1e-14);
        assert!((f[1] - (z[1] - inv)).norm() < 1e-14);
        let at_one = sys.evaluate(&[c(1.0, 0.0), c(1.0, 0.0)], 0.0, 0.0, &[]).unwrap();
        assert!(cla_max(&at_one) < 1e-15);
    }

    fn cla_max(v: &[Complex64]) -> f64 {
        crate::cla::max_abs(v)
    }

    #[test]
    fn zero_coordinate_is_rejected() {
        let sys = lg_system(&lg_potential(&build_variety("p2").unwrap()));
        assert_eq!(sys.evaluate(&[c(0.0, 0.0), c(1.0, 0.0)], 0.0, 0.0, &[]), Err(SolveError::ZeroCoordinate));
    }

    #[test]
    fn loops_are_periodic_in_theta() {
        let w = lg_potential(&build_variety("p2").unwrap()).with_windings(&[1, 0, 2]);
        let sys = lg_system(&w);
        let z = [c(0.4, -0.9), c(1.3, 0.5)];
        for theta in [0.0, 0.125, 0.37, 0.5] {
            let a = sys.evaluate(&z, 0.0, theta, &[]).unwrap();
            let b = sys.evaluate(&z, 0.0, theta + 1.0, &[]).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn offset_is_subtracted() {
        let sys = lg_system(&lg_potential(&build_variety("p1").unwrap()));
        let v = sys.evaluate(&[c(2.0, 0.0)], 0.0, 0.0, &[0.5]).unwrap()[0];
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }
}
