//! Transport of critical points along closed loops of coefficients, with the
//! argument trace lifted to the universal cover of the torus.
//!
//! Tracking runs in `w = log z`: the imaginary part of `w / 2π` is the
//! continuous lift of `Arg z` for free, and the logarithmic Jacobian is the
//! one the critical system is naturally written in.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::cla;
use crate::critsolve::{offset_set, relative_distance, CriticalSet, SolveOptions};
use crate::error::{SolveError, TrackError};
use crate::laurent::{unit_arg, LgSystem};
use crate::toric::{PicClass, ToricSurfaceData};

/// A coefficient loop: term `ρ` picks up the phase `e^{∓2πi w_ρ θ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LoopSpec {
    pub windings: Vec<i64>,
    pub source_index: usize,
    pub cone_index: usize,
}

impl LoopSpec {
    /// Same loop traversed backwards from the given point.
    pub fn reversed(&self, source_index: usize) -> Self {
        Self { windings: self.windings.iter().map(|w| -w).collect(), source_index, cone_index: self.cone_index }
    }

    pub fn is_constant(&self) -> bool {
        self.windings.iter().all(|&w| w == 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArgSample {
    pub theta: f64,
    pub z: Vec<Complex64>,
    /// Continuous lift of `Arg z(θ)`, starting in `[0, 1)`.
    pub lifted: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArgPath {
    pub samples: Vec<ArgSample>,
    pub start_index: usize,
    pub end_index: usize,
}

impl ArgPath {
    pub fn start(&self) -> &ArgSample {
        &self.samples[0]
    }

    pub fn end(&self) -> &ArgSample {
        &self.samples[self.samples.len() - 1]
    }

    /// `lifted(1) - lifted(0)`: the average slope of the argument trace.
    pub fn displacement(&self) -> Vec<f64> {
        self.end().lifted.iter().zip(&self.start().lifted).map(|(b, a)| b - a).collect()
    }

    /// At most `max` samples, evenly spaced in index, always keeping both ends.
    pub fn downsampled(&self, max: usize) -> Vec<ArgSample> {
        let len = self.samples.len();
        if len <= max || max < 2 {
            return self.samples.clone();
        }
        (0..max).map(|k| self.samples[k * (len - 1) / (max - 1)].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonodromyRecord {
    pub spec: LoopSpec,
    pub path: ArgPath,
    pub weight: Vec<i64>,
    pub permutation_entry: (usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrackOptions {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// Largest change of any lifted argument over one accepted step.
    pub max_arg_change: f64,
    pub corrector_iters: usize,
    pub corrector_tol: f64,
    /// Largest distance in `log z` between predictor and corrected point.
    pub max_correction: f64,
    /// Consecutive accepted steps before the step is doubled.
    pub grow_after: usize,
    /// Relative distance for matching the endpoint to a critical point.
    pub match_tol: f64,
    /// Distance of the final lift from the nearest lattice point.
    pub snap_tol: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        Self {
            initial_step: 1e-2,
            max_step: 0.05,
            min_step: 1e-8,
            max_arg_change: 0.25,
            corrector_iters: 5,
            corrector_tol: 1e-10,
            max_correction: 0.05,
            grow_after: 4,
            match_tol: 1e-6,
            snap_tol: 0.02,
        }
    }
}

/// `γ(z; σ)`: the loop winding each ray by the coefficient of `D(E; σ)`,
/// the divisor of class `e` supported off `σ`.
pub fn loop_for(
    x: &ToricSurfaceData,
    crit: &CriticalSet,
    z_index: usize,
    sigma: usize,
    e: &PicClass,
) -> Result<LoopSpec, TrackError> {
    if z_index >= crit.len() {
        return Err(TrackError::EndpointUnmatched { distance: f64::INFINITY });
    }
    let d = x.divisor_off_cone(e, sigma)?;
    Ok(LoopSpec { windings: d.coefficients, source_index: z_index, cone_index: sigma })
}

fn log_point(z: &[Complex64]) -> Result<Vec<Complex64>, TrackError> {
    z.iter()
        .map(|v| {
            if v.norm() == 0.0 {
                Err(TrackError::ZeroCoordinate)
            } else {
                Ok(Complex64::new(libm::log(v.norm()), TAU * unit_arg(*v)))
            }
        })
        .collect()
}

fn exp_point(w: &[Complex64]) -> Vec<Complex64> {
    w.iter().map(|v| v.exp()).collect()
}

fn lift(w: &[Complex64]) -> Vec<f64> {
    w.iter().map(|v| v.im / TAU).collect()
}

/// Newton corrector in `log z` at fixed `θ`. Returns the corrected point once
/// the residual is below tolerance.
fn correct(
    sys: &LgSystem,
    mut w: Vec<Complex64>,
    t: f64,
    theta: f64,
    offset: &[f64],
    opts: &TrackOptions,
) -> Result<Option<Vec<Complex64>>, SolveError> {
    for _ in 0..=opts.corrector_iters {
        let z = exp_point(&w);
        let f = sys.evaluate(&z, t, theta, offset)?;
        if cla::max_abs(&f) < opts.corrector_tol {
            return Ok(Some(w));
        }
        let j = sys.toric_jacobian(&z, t, theta)?;
        let rhs: Vec<Complex64> = f.iter().map(|v| -v).collect();
        let Some(dw) = cla::solve(&j, &rhs) else { return Ok(None) };
        for (wi, d) in w.iter_mut().zip(&dw) {
            *wi += d;
        }
    }
    Ok(None)
}

/// `dw/dθ = -(∂f/∂w)⁻¹ ∂f/∂θ`.
fn tangent(sys: &LgSystem, w: &[Complex64], t: f64, theta: f64) -> Result<Option<Vec<Complex64>>, SolveError> {
    let z = exp_point(w);
    let j = sys.toric_jacobian(&z, t, theta)?;
    let dtheta: Vec<Complex64> = sys.theta_derivative(&z, t, theta)?.iter().map(|v| -v).collect();
    Ok(cla::solve(&j, &dtheta))
}

/// Follows `crit.points[spec.source_index]` as `θ` runs from 0 to 1 along the
/// loop, and matches the endpoint to a point of `crit`.
pub fn track(
    sys: &LgSystem,
    spec: &LoopSpec,
    crit: &CriticalSet,
    opts: &TrackOptions,
) -> Result<ArgPath, TrackError> {
    let looped = LgSystem { family: sys.family.with_windings(&spec.windings) };
    let t = crit.t;
    let offset = crit.offset.as_slice();
    let start = &crit.points[spec.source_index];
    let mut w = log_point(start)?;
    let mut theta = 0.0;
    let mut samples = vec![ArgSample { theta, z: start.clone(), lifted: lift(&w) }];
    let mut step = opts.initial_step.min(opts.max_step);
    let mut accepted = 0usize;
    if !spec.is_constant() {
        while theta < 1.0 {
            let h = step.min(1.0 - theta);
            let next_theta = if theta + h >= 1.0 - 1e-15 { 1.0 } else { theta + h };
            let h = next_theta - theta;
            let good = match tangent(&looped, &w, t, theta)? {
                None => None,
                Some(dw) => {
                    let predicted: Vec<Complex64> = w.iter().zip(&dw).map(|(a, d)| a + d * h).collect();
                    correct(&looped, predicted.clone(), t, next_theta, offset, opts)?.filter(|c| {
                        let jump = c.iter().zip(&predicted).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                        let turn = c.iter().zip(&w).map(|(a, b)| ((a.im - b.im) / TAU).abs()).fold(0.0, f64::max);
                        jump <= opts.max_correction && turn <= opts.max_arg_change
                    })
                }
            };
            match good {
                Some(next) => {
                    let turn = next.iter().zip(&w).map(|(a, b)| ((a.im - b.im) / TAU).abs()).fold(0.0, f64::max);
                    if turn >= 0.5 {
                        return Err(TrackError::LiftViolation { theta: next_theta });
                    }
                    w = next;
                    theta = next_theta;
                    samples.push(ArgSample { theta, z: exp_point(&w), lifted: lift(&w) });
                    accepted += 1;
                    if accepted >= opts.grow_after {
                        step = (step * 2.0).min(opts.max_step);
                        accepted = 0;
                    }
                }
                None => {
                    step /= 2.0;
                    accepted = 0;
                    if step < opts.min_step {
                        return Err(TrackError::StepUnderflow { theta });
                    }
                }
            }
        }
    }
    let end = exp_point(&w);
    let (end_index, distance) = crit.nearest(&end).ok_or(TrackError::EndpointUnmatched { distance: f64::INFINITY })?;
    if distance > opts.match_tol {
        return Err(TrackError::EndpointUnmatched { distance });
    }
    if let Some(last) = samples.last_mut() {
        last.z = end;
    }
    Ok(ArgPath { samples, start_index: spec.source_index, end_index })
}

/// `m_W`: the lattice point reached by the lifted argument trace, which must
/// end on the base solution.
pub fn monodromy_weight(path: &ArgPath, crit: &CriticalSet, opts: &TrackOptions) -> Result<Vec<i64>, TrackError> {
    if path.end_index != crit.base_index {
        return Err(TrackError::NotAtBase { end_index: path.end_index });
    }
    let lifted = &path.end().lifted;
    let weight: Vec<i64> = lifted.iter().map(|v| libm::round(*v) as i64).collect();
    let deviation = lifted.iter().zip(&weight).map(|(v, m)| (v - *m as f64).abs()).fold(0.0, f64::max);
    if deviation >= opts.snap_tol {
        return Err(TrackError::NotLatticeClose { deviation });
    }
    Ok(weight)
}

/// Tracks one loop with its permutation entry and weight.
pub fn monodromy_record(
    sys: &LgSystem,
    spec: &LoopSpec,
    crit: &CriticalSet,
    opts: &TrackOptions,
) -> Result<MonodromyRecord, TrackError> {
    let path = track(sys, spec, crit, opts)?;
    let weight = monodromy_weight(&path, crit, opts)?;
    let entry = (path.start_index, path.end_index);
    Ok(MonodromyRecord { spec: spec.clone(), path, weight, permutation_entry: entry })
}

/// Image of every critical point under the loop with the given windings;
/// entry `i` is the index `point i` is transported to.
pub fn monodromy_permutation(
    sys: &LgSystem,
    windings: &[i64],
    crit: &CriticalSet,
    opts: &TrackOptions,
) -> Result<Vec<usize>, TrackError> {
    let mut image = Vec::with_capacity(crit.len());
    let mut hit = vec![false; crit.len()];
    for source_index in 0..crit.len() {
        let spec = LoopSpec { windings: windings.to_vec(), source_index, cone_index: 0 };
        let target = track(sys, &spec, crit, opts)?.end_index;
        if hit[target] {
            return Err(TrackError::Collision { target });
        }
        hit[target] = true;
        image.push(target);
    }
    Ok(image)
}

/// Compares the permutation of a loop on `Crit(W)` with its permutation on
/// the offset set `Crit_a(W)`, whose points correspond by index.
pub fn offset_equivariance_check(
    sys: &LgSystem,
    windings: &[i64],
    crit: &CriticalSet,
    offset: &[f64],
    opts: &TrackOptions,
    solve_opts: &SolveOptions,
) -> Result<bool, TrackError> {
    let shifted = offset_set(sys, crit.t, offset, crit, solve_opts)?;
    let base = monodromy_permutation(sys, windings, crit, opts)?;
    let moved = monodromy_permutation(sys, windings, &shifted, opts)?;
    Ok(base == moved)
}

/// Relative gap between the closest pair of critical points; tracking with
/// endpoints closer than this is ambiguous.
pub fn separation(crit: &CriticalSet) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..crit.len() {
        for j in (i + 1)..crit.len() {
            best = best.min(relative_distance(&crit.points[i], &crit.points[j]));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critsolve::solve_critical;
    use crate::laurent::{default_deformation, lg_potential, lg_system};
    use crate::toric::build_variety;

    fn setup(name: &str) -> (ToricSurfaceData, LgSystem, CriticalSet) {
        let x = build_variety(name).unwrap();
        let sys = lg_system(&lg_potential(&x));
        let crit = solve_critical(&x, &sys, default_deformation(&x), &[], &SolveOptions::default()).unwrap();
        (x, sys, crit)
    }

    fn index_of(crit: &CriticalSet, z: &[Complex64]) -> usize {
        let (i, d) = crit.nearest(z).unwrap();
        assert!(d < 1e-9);
        i
    }

    fn omega(k: usize) -> Complex64 {
        Complex64::from_polar(1.0, TAU * k as f64 / 3.0)
    }

    #[test]
    fn p2_loop_from_z1_over_first_cone() {
        let (x, sys, crit) = setup("p2");
        let z1 = index_of(&crit, &[omega(1), omega(1)]);
        let spec = loop_for(&x, &crit, z1, 0, &PicClass::new(vec![1])).unwrap();
        assert_eq!(spec.windings, vec![0, 0, 1]);
        let path = track(&sys, &spec, &crit, &TrackOptions::default()).unwrap();
        assert_eq!(path.end_index, crit.base_index);
        for s in &path.samples {
            assert!((s.lifted[0] - s.lifted[1]).abs() < 1e-9);
        }
        assert_eq!(monodromy_weight(&path, &crit, &TrackOptions::default()).unwrap(), vec![0, 0]);
    }

    #[test]
    fn p2_loop_from_z1_over_second_cone_ends_at_1_0() {
        let (x, sys, crit) = setup("p2");
        let z1 = index_of(&crit, &[omega(1), omega(1)]);
        let spec = loop_for(&x, &crit, z1, 1, &PicClass::new(vec![1])).unwrap();
        let rec = monodromy_record(&sys, &spec, &crit, &TrackOptions::default()).unwrap();
        assert_eq!(rec.weight, vec![1, 0]);
        assert_eq!(rec.permutation_entry, (z1, crit.base_index));
    }

    #[test]
    fn constant_loop_is_stationary() {
        let (x, sys, crit) = setup("bl3");
        let spec = loop_for(&x, &crit, crit.base_index, 2, &PicClass::zero(x.pic_rank)).unwrap();
        assert!(spec.is_constant());
        let path = track(&sys, &spec, &crit, &TrackOptions::default()).unwrap();
        assert_eq!(path.end_index, crit.base_index);
        assert_eq!(path.displacement(), vec![0.0, 0.0]);
        let perm = monodromy_permutation(&sys, &spec.windings, &crit, &TrackOptions::default()).unwrap();
        assert_eq!(perm, (0..crit.len()).collect::<Vec<_>>());
    }

    #[test]
    fn p1_positive_loop_swaps_the_two_points() {
        let (_, sys, crit) = setup("p1");
        let perm = monodromy_permutation(&sys, &[0, 1], &crit, &TrackOptions::default()).unwrap();
        assert_eq!(perm, vec![1, 0]);
        let a = offset_equivariance_check(&sys, &[0, 1], &crit, &[0.05], &TrackOptions::default(), &SolveOptions::default());
        assert_eq!(a, Ok(true));
    }

    #[test]
    fn loop_then_reverse_is_identity_with_negated_displacement() {
        let (x, sys, crit) = setup("p2");
        let z2 = index_of(&crit, &[omega(2), omega(2)]);
        let spec = loop_for(&x, &crit, z2, 2, &PicClass::new(vec![2])).unwrap();
        let opts = TrackOptions::default();
        let forward = track(&sys, &spec, &crit, &opts).unwrap();
        let back = track(&sys, &spec.reversed(forward.end_index), &crit, &opts).unwrap();
        assert_eq!(back.end_index, z2);
        for (a, b) in forward.displacement().iter().zip(back.displacement()) {
            assert!((a + b).abs() < 1e-9);
        }
        let p = monodromy_permutation(&sys, &spec.windings, &crit, &opts).unwrap();
        let q = monodromy_permutation(&sys, &spec.reversed(0).windings, &crit, &opts).unwrap();
        assert!((0..crit.len()).all(|i| q[p[i]] == i));
    }

    #[test]
    fn wrong_endpoint_is_not_a_weight() {
        let (_, sys, crit) = setup("p2");
        let spec = LoopSpec { windings: vec![0, 0, 1], source_index: crit.base_index, cone_index: 0 };
        let path = track(&sys, &spec, &crit, &TrackOptions::default()).unwrap();
        assert_ne!(path.end_index, crit.base_index);
        assert!(matches!(monodromy_weight(&path, &crit, &TrackOptions::default()), Err(TrackError::NotAtBase { .. })));
    }

    #[test]
    fn downsampling_keeps_ends() {
        let (_, sys, crit) = setup("p2");
        let spec = LoopSpec { windings: vec![3, 0, 1], source_index: 1, cone_index: 0 };
        let opts = TrackOptions { max_step: 0.001, ..TrackOptions::default() };
        let path = track(&sys, &spec, &crit, &opts).unwrap();
        assert!(path.samples.len() > 512);
        let d = path.downsampled(512);
        assert_eq!(d.len(), 512);
        assert_eq!(d[0], path.samples[0]);
        assert_eq!(d[511], *path.end());
    }
}
