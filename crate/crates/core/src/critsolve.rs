//! Critical sets of Landau-Ginzburg systems by multistart Newton iteration in
//! logarithmic coordinates, certified against the normalized volume.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::cla;
use crate::error::SolveError;
use crate::laurent::{unit_arg, LgSystem};
use crate::toric::{ToricSurfaceData, VarietyKind};

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    /// Relative distance under which two roots are the same.
    pub dedup_radius: f64,
    /// Residual bound `max_i |f_i(z) - a_i|` for a certified root.
    pub cert_tol: f64,
    pub max_newton_iters: usize,
    /// Number of log-radius samples per coordinate.
    pub radius_samples: usize,
    /// Largest phase denominator of the seed grid; `None` uses the expected count.
    pub max_denominator: Option<u64>,
    /// Roots whose [`sensitivity`] exceeds this are reported as singular.
    pub condition_limit: f64,
    /// Largest admissible `max_i |a_i|` for offset systems.
    pub offset_bound: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            dedup_radius: 1e-6,
            cert_tol: 1e-10,
            max_newton_iters: 80,
            radius_samples: 5,
            max_denominator: None,
            condition_limit: 1e7,
            offset_bound: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalSet {
    pub points: Vec<Vec<Complex64>>,
    /// Index of the base solution `z_0`.
    pub base_index: usize,
    pub residuals: Vec<f64>,
    pub t: f64,
    pub offset: Vec<f64>,
}

impl CriticalSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn base(&self) -> &[Complex64] {
        &self.points[self.base_index]
    }

    /// Index of the point nearest to `z` in relative distance, with that distance.
    pub fn nearest(&self, z: &[Complex64]) -> Option<(usize, f64)> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, relative_distance(p, z)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

pub fn relative_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let scale = a.iter().chain(b).map(|x| x.norm()).fold(1e-300, f64::max);
    diff / scale
}

fn circular_distance(x: f64) -> f64 {
    let f = x - libm::floor(x);
    f.min(1.0 - f)
}

/// `max_ρ dist(Arg z^{n_ρ}, 0)` over the terms of the system.
pub fn argument_spread(sys: &LgSystem, z: &[Complex64]) -> f64 {
    sys.family
        .terms
        .iter()
        .map(|term| {
            let phase: f64 = term.exponent.iter().zip(z).map(|(&e, zi)| e as f64 * unit_arg(*zi)).sum();
            circular_distance(phase)
        })
        .fold(0.0, f64::max)
}

/// Scale-free conditioning of a root: `‖J⁻¹‖∞` of the logarithmic Jacobian
/// times the size `Σ |c_ρ z^{n_ρ}| |n_ρ|²` of its entries. Infinite when the
/// Jacobian is singular.
pub fn sensitivity(sys: &LgSystem, z: &[Complex64], t: f64) -> Result<f64, SolveError> {
    let n = sys.dim();
    let j = sys.toric_jacobian(z, t, 0.0)?;
    let Some(inv) = cla::inverse(&j, n) else { return Ok(f64::INFINITY) };
    let inv_norm = (0..n).map(|i| inv[i * n..(i + 1) * n].iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max);
    let scale: f64 = (0..sys.family.terms.len())
        .map(|k| {
            let term = &sys.family.terms[k];
            let len2: i64 = term.exponent.iter().map(|e| e * e).sum();
            (sys.family.coefficient(k, t, 0.0) * crate::laurent::monomial(z, &term.exponent)).norm() * len2 as f64
        })
        .sum();
    Ok(inv_norm * scale)
}

fn check_regular(sys: &LgSystem, z: &[Complex64], t: f64, opts: &SolveOptions) -> Result<(), SolveError> {
    let cond = sensitivity(sys, z, t)?;
    if cond.is_nan() || cond >= opts.condition_limit {
        return Err(SolveError::SingularRoot { point: z.iter().map(|v| [v.re, v.im]).collect(), condition: cond });
    }
    Ok(())
}

fn residual(sys: &LgSystem, z: &[Complex64], t: f64, offset: &[f64]) -> Result<f64, SolveError> {
    Ok(cla::max_abs(&sys.evaluate(z, t, 0.0, offset)?))
}

/// Newton iteration on `w = log z`, step length capped at 1 per coordinate.
/// Returns `None` when the iteration leaves the torus or stalls.
fn newton(
    sys: &LgSystem,
    start: &[Complex64],
    t: f64,
    offset: &[f64],
    opts: &SolveOptions,
) -> Option<Vec<Complex64>> {
    let n = sys.dim();
    let mut z = start.to_vec();
    let mut converged_steps = 0;
    for _ in 0..opts.max_newton_iters {
        let f = sys.evaluate(&z, t, 0.0, offset).ok()?;
        let j = sys.toric_jacobian(&z, t, 0.0).ok()?;
        let rhs: Vec<Complex64> = f.iter().map(|v| -v).collect();
        let mut dw = cla::solve(&j, &rhs)?;
        let size = cla::max_abs(&dw);
        if size > 1.0 {
            for v in &mut dw {
                *v /= size;
            }
        }
        for (zi, d) in z.iter_mut().zip(&dw) {
            *zi *= d.exp();
        }
        if z.iter().any(|v| !v.norm().is_finite() || v.norm() < 1e-150 || v.norm() > 1e150) {
            return None;
        }
        if size < 1e-14 {
            converged_steps += 1;
            if converged_steps >= 2 {
                break;
            }
        }
    }
    debug_assert_eq!(z.len(), n);
    Some(z)
}

/// Farey fractions `k/q` in `[0, 1)` with `q <= max_q`, ascending.
fn farey_phases(max_q: u64) -> Vec<f64> {
    let mut out: Vec<(u64, u64)> = vec![(0, 1)];
    for q in 2..=max_q.max(1) {
        for k in 1..q {
            if gcd(k, q) == 1 {
                out.push((k, q));
            }
        }
    }
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out.into_iter().map(|(k, q)| k as f64 / q as f64).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Seeds per coordinate, most central radii first.
fn coordinate_seeds(t: f64, opts: &SolveOptions, max_q: u64) -> Vec<Complex64> {
    let span = 1.0 + t;
    let k = opts.radius_samples.max(1);
    let mut radii: Vec<f64> =
        (0..k).map(|i| if k == 1 { 0.0 } else { -span + 2.0 * span * i as f64 / (k - 1) as f64 }).collect();
    radii.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
    let phases = farey_phases(max_q);
    let mut out = Vec::with_capacity(radii.len() * phases.len());
    for r in &radii {
        for p in &phases {
            out.push(Complex64::from_polar(libm::exp(*r), TAU * p));
        }
    }
    out
}

/// Deterministic ordering: arguments in `[0, 1)` (rounded to 1e-6)
/// lexicographically, then modulus.
fn point_order(a: &[Complex64], b: &[Complex64]) -> Ordering {
    let key = |z: &[Complex64]| -> Vec<i64> {
        z.iter()
            .map(|v| {
                let r = libm::round(unit_arg(*v) * 1e6) as i64;
                if r >= 1_000_000 {
                    0
                } else {
                    r
                }
            })
            .collect()
    };
    key(a).cmp(&key(b)).then_with(|| {
        let na: Vec<f64> = a.iter().map(|v| v.norm()).collect();
        let nb: Vec<f64> = b.iter().map(|v| v.norm()).collect();
        na.iter().zip(&nb).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    })
}

fn check_offset(offset: &[f64], n: usize, opts: &SolveOptions) -> Result<(), SolveError> {
    if !offset.is_empty() && offset.len() != n {
        return Err(SolveError::Lattice(crate::error::LatticeError::DimensionMismatch {
            expected: n,
            found: offset.len(),
        }));
    }
    if offset.iter().any(|a| a.is_nan() || a.abs() > opts.offset_bound) {
        return Err(SolveError::OffsetDiverged { index: 0 });
    }
    Ok(())
}

/// Complete critical set of `sys` at deformation `t` and offset `a`, expected
/// to have `normalized_volume(x)` points.
pub fn solve_critical(
    x: &ToricSurfaceData,
    sys: &LgSystem,
    t: f64,
    offset: &[f64],
    opts: &SolveOptions,
) -> Result<CriticalSet, SolveError> {
    let n = sys.dim();
    check_offset(offset, n, opts)?;
    let expected = x.normalized_volume() as usize;
    let max_q = opts.max_denominator.unwrap_or(expected as u64);
    let seeds = coordinate_seeds(t, opts, max_q);
    let mut found: Vec<Vec<Complex64>> = Vec::new();
    let mut idx = vec![0usize; n];
    'seeds: loop {
        let start: Vec<Complex64> = idx.iter().map(|&i| seeds[i]).collect();
        if let Some(z) = newton(sys, &start, t, offset, opts) {
            if residual(sys, &z, t, offset)? < opts.cert_tol
                && !found.iter().any(|p| relative_distance(p, &z) < opts.dedup_radius)
            {
                check_regular(sys, &z, t, opts)?;
                found.push(z);
                if found.len() == expected {
                    break 'seeds;
                }
            }
        }
        // odometer over the seed grid
        let mut axis = 0;
        loop {
            if axis == n {
                break 'seeds;
            }
            idx[axis] += 1;
            if idx[axis] < seeds.len() {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
    if found.len() < expected {
        found.sort_by(|a, b| point_order(a, b));
        return Err(SolveError::Undercount {
            expected,
            found: found.iter().map(|p| p.iter().map(|v| [v.re, v.im]).collect()).collect(),
        });
    }
    certify(sys, found, t, offset, opts)
}

fn certify(
    sys: &LgSystem,
    mut points: Vec<Vec<Complex64>>,
    t: f64,
    offset: &[f64],
    opts: &SolveOptions,
) -> Result<CriticalSet, SolveError> {
    for p in &mut points {
        if let Some(z) = newton(sys, p, t, offset, opts) {
            *p = z;
        }
        check_regular(sys, p, t, opts)?;
    }
    points.sort_by(|a, b| point_order(a, b));
    let residuals = points.iter().map(|p| residual(sys, p, t, offset)).collect::<Result<Vec<_>, _>>()?;
    let base_index = (0..points.len())
        .min_by(|&i, &j| argument_spread(sys, &points[i]).total_cmp(&argument_spread(sys, &points[j])))
        .unwrap_or(0);
    Ok(CriticalSet { points, base_index, residuals, t, offset: offset.to_vec() })
}

/// Continues every base point to the system `f = a` by Newton iteration along
/// `s·a`, `s = 1/4, ..., 1`, keeping indices.
pub fn offset_set(
    sys: &LgSystem,
    t: f64,
    offset: &[f64],
    base: &CriticalSet,
    opts: &SolveOptions,
) -> Result<CriticalSet, SolveError> {
    check_offset(offset, sys.dim(), opts)?;
    const STAGES: usize = 4;
    let mut points = Vec::with_capacity(base.len());
    for (index, p) in base.points.iter().enumerate() {
        let mut z = p.clone();
        for stage in 1..=STAGES {
            let a: Vec<f64> = offset.iter().map(|v| v * stage as f64 / STAGES as f64).collect();
            z = newton(sys, &z, t, &a, opts).ok_or(SolveError::OffsetDiverged { index })?;
        }
        if residual(sys, &z, t, offset)? >= opts.cert_tol {
            return Err(SolveError::OffsetDiverged { index });
        }
        points.push(z);
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if relative_distance(&points[i], &points[j]) < opts.dedup_radius {
                return Err(SolveError::PathJump { first: i, second: j });
            }
        }
    }
    let residuals = points.iter().map(|p| residual(sys, p, t, offset)).collect::<Result<Vec<_>, _>>()?;
    Ok(CriticalSet { points, base_index: base.base_index, residuals, t, offset: offset.to_vec() })
}

fn unity(k: usize, q: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * k as f64 / q as f64)
}

/// Exact critical points where they are known in closed form: diagonal roots
/// of unity on projective spaces, the six points of the hexagon potential, and
/// products of those. `None` for the deformed potentials.
pub fn closed_form_oracle(x: &ToricSurfaceData) -> Option<Vec<Vec<Complex64>>> {
    match &x.kind {
        VarietyKind::Projective { n } => Some((0..=*n).map(|k| vec![unity(k, n + 1); *n]).collect()),
        VarietyKind::Blowup { k: 3 } => {
            let one = Complex64::new(1.0, 0.0);
            let r = unity(1, 3);
            Some(vec![vec![one, one], vec![r, r], vec![r * r, r * r], vec![one, -one], vec![-one, one], vec![-one, -one]])
        }
        VarietyKind::Product(a, b) => {
            let pa = closed_form_oracle(a)?;
            let pb = closed_form_oracle(b)?;
            Some(
                pa.iter()
                    .flat_map(|za| pb.iter().map(move |zb| za.iter().chain(zb).copied().collect()))
                    .collect(),
            )
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{default_deformation, lg_potential, lg_system, Term};
    use crate::toric::build_variety;

    fn solve(name: &str) -> (ToricSurfaceData, LgSystem, CriticalSet) {
        let x = build_variety(name).unwrap();
        let sys = lg_system(&lg_potential(&x));
        let t = default_deformation(&x);
        let crit = solve_critical(&x, &sys, t, &[], &SolveOptions::default()).unwrap();
        (x, sys, crit)
    }

    fn matches_oracle(crit: &CriticalSet, oracle: &[Vec<Complex64>], tol: f64) -> bool {
        oracle.len() == crit.len() && oracle.iter().all(|p| crit.nearest(p).is_some_and(|(_, d)| d < tol))
    }

    #[test]
    fn counts_equal_normalized_volume() {
        for (name, count) in [("p1", 2), ("p2", 3), ("p1xp1", 4), ("bl1", 4), ("bl2", 5), ("bl3", 6), ("pn:3", 4)] {
            let (_, _, crit) = solve(name);
            assert_eq!(crit.len(), count, "{name}");
            assert!(crit.residuals.iter().all(|&r| r < 1e-10), "{name}");
        }
    }

    #[test]
    fn closed_forms_agree_with_solver() {
        for name in ["p1", "p2", "pn:3", "p1xp1", "bl3", "product:p2,p1"] {
            let (x, _, crit) = solve(name);
            let oracle = closed_form_oracle(&x).unwrap();
            assert!(matches_oracle(&crit, &oracle, 1e-9), "{name}");
        }
        assert!(closed_form_oracle(&build_variety("bl1").unwrap()).is_none());
    }

    #[test]
    fn base_point_has_positive_real_coordinates() {
        for name in ["p2", "p1xp1", "bl1", "bl2", "bl3"] {
            let (_, _, crit) = solve(name);
            assert!(crit.base().iter().all(|v| v.im.abs() < 1e-9 && v.re > 0.0), "{name}");
        }
    }

    #[test]
    fn p1_offset_roots_follow_quadratic_formula() {
        let (_, sys, crit) = solve("p1");
        let shifted = offset_set(&sys, 0.0, &[0.1], &crit, &SolveOptions::default()).unwrap();
        let disc = libm::sqrt(4.01);
        for (p, q) in crit.points.iter().zip(&shifted.points) {
            let expected = if p[0].re > 0.0 { (0.1 + disc) / 2.0 } else { (0.1 - disc) / 2.0 };
            assert!((q[0] - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_offset_is_identity_and_small_offsets_stay_close() {
        let (_, sys, crit) = solve("p2");
        let same = offset_set(&sys, 0.0, &[0.0, 0.0], &crit, &SolveOptions::default()).unwrap();
        for (p, q) in crit.points.iter().zip(&same.points) {
            assert!(relative_distance(p, q) < 1e-14);
        }
        let mut prev = f64::INFINITY;
        for k in 0..6 {
            let a = 1e-3 / f64::from(1 << k);
            let moved = offset_set(&sys, 0.0, &[a, -a], &crit, &SolveOptions::default()).unwrap();
            let dist = crit.points.iter().zip(&moved.points).map(|(p, q)| relative_distance(p, q)).fold(0.0, f64::max);
            assert!(dist < 1e-2 && dist < prev);
            prev = dist;
        }
    }

    #[test]
    fn repolishing_is_idempotent() {
        let (_, sys, crit) = solve("bl2");
        let again = certify(&sys, crit.points.clone(), crit.t, &[], &SolveOptions::default()).unwrap();
        for (p, q) in crit.points.iter().zip(&again.points) {
            assert!(relative_distance(p, q) < 1e-12);
        }
    }

    #[test]
    fn double_root_is_reported_as_singular() {
        // z ∂W/∂z = z (z - 1)^2 for W = z^3/3 - z^2 + z
        let x = build_variety("p1").unwrap();
        let mut w = lg_potential(&x);
        w.terms = vec![
            Term { exponent: vec![3], re: 1.0 / 3.0, im: 0.0, t_rate: 0.0, winding: 0 },
            Term { exponent: vec![2], re: -1.0, im: 0.0, t_rate: 0.0, winding: 0 },
            Term { exponent: vec![1], re: 1.0, im: 0.0, t_rate: 0.0, winding: 0 },
        ];
        let res = solve_critical(&x, &lg_system(&w), 0.0, &[], &SolveOptions::default());
        assert!(matches!(res, Err(SolveError::SingularRoot { .. })), "{res:?}");
    }

    #[test]
    fn regular_roots_are_well_conditioned() {
        for name in ["p2", "bl1", "bl2", "bl3"] {
            let (_, sys, crit) = solve(name);
            for p in &crit.points {
                assert!(sensitivity(&sys, p, crit.t).unwrap() < 1e4, "{name}");
            }
        }
    }

    #[test]
    fn out_of_range_offset_is_rejected() {
        let (x, sys, _) = solve("p1");
        assert!(solve_critical(&x, &sys, 0.0, &[10.0], &SolveOptions::default()).is_err());
    }
}
