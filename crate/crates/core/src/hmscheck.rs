//! The exceptional map `E_W`, the monodromy/support-function comparison over
//! every critical point and maximal cone, and line-bundle cohomology for
//! certifying strongly exceptional collections.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cla;
use crate::critsolve::{solve_critical, CriticalSet, SolveOptions};
use crate::error::{CheckError, TrackError};
use crate::intlin::{self, Rational};
use crate::laurent::{lg_potential, lg_system, unit_arg, LgSystem, Orientation};
use crate::monodromy::{loop_for, monodromy_weight, track, ArgPath, LoopSpec, TrackOptions};
use crate::toric::{PicClass, ToricSurfaceData, VarietyKind};

/// How argument coefficients are turned into an integral class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ArgRounding {
    /// Snap each coefficient to a fraction with denominator at most the
    /// normalized volume, then floor the exact class.
    #[default]
    Snap,
    /// Floor the class of the raw coefficients; coordinates within
    /// `wrap_noise` below an integer count as that integer.
    Raw,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOptions {
    pub solve: SolveOptions,
    pub track: TrackOptions,
    /// Largest distance between a raw argument and its rational snap.
    pub snap_tol: f64,
    /// Raw arguments this close below 1 are rounding noise of a positive real.
    pub wrap_noise: f64,
    pub rounding: ArgRounding,
    pub orientation: Orientation,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            solve: SolveOptions::default(),
            track: TrackOptions::default(),
            snap_tol: 0.01,
            wrap_noise: 1e-9,
            rounding: ArgRounding::Snap,
            orientation: Orientation::default(),
        }
    }
}

/// `D_W(z) = Σ Arg(z^{n_ρ}) V(ρ)` with raw and snapped coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ArgDivisor {
    /// `Arg(z^{n_ρ})` in `[0, 1)`.
    pub raw: Vec<f64>,
    /// Nearest `k/q` with `q <= normalized_volume`, `0 <= k <= q`.
    pub snapped: Vec<Rational>,
    /// `raw - snapped` per ray; the sign records the side of approach.
    pub deviation: Vec<f64>,
}

/// Nearest fraction `k/q` in `[0, 1]` with `q <= max_q`, smallest `q` first on ties.
fn snap(value: f64, max_q: i128) -> (Rational, f64) {
    let mut best = (Rational::from_integer(0), value);
    for q in 1..=max_q.max(1) {
        let k = libm::round(value * q as f64) as i128;
        let k = k.clamp(0, q);
        let r = Rational::new(k, q);
        let dev = value - k as f64 / q as f64;
        if dev.abs() < best.1.abs() - 1e-15 {
            best = (r, dev);
        }
    }
    best
}

pub fn arg_divisor(x: &ToricSurfaceData, z: &[Complex64], opts: &CheckOptions) -> Result<ArgDivisor, CheckError> {
    let max_q = i128::from(x.normalized_volume() as u32);
    let mut out = ArgDivisor { raw: Vec::new(), snapped: Vec::new(), deviation: Vec::new() };
    for (ray, n) in x.rays.iter().enumerate() {
        let phase: f64 = n.iter().zip(z).map(|(&e, zi)| e as f64 * unit_arg(*zi)).sum();
        let mut raw = phase - libm::floor(phase);
        if raw >= 1.0 - opts.wrap_noise {
            raw = 0.0;
        }
        let (r, dev) = snap(raw, max_q);
        if opts.rounding == ArgRounding::Snap && dev.abs() >= opts.snap_tol {
            return Err(CheckError::SnapFailure { ray, value: raw });
        }
        out.raw.push(raw);
        out.snapped.push(r);
        out.deviation.push(dev);
    }
    Ok(out)
}

/// `E_W(z) = [D_W(z)]_Z`: component-wise floor of the class of the divisor.
pub fn ew_class(x: &ToricSurfaceData, d: &ArgDivisor, opts: &CheckOptions) -> Result<PicClass, CheckError> {
    match opts.rounding {
        ArgRounding::Snap => {
            let q = x.class_of_rational(&d.snapped)?;
            Ok(PicClass::new(q.iter().map(intlin::floor_rational).collect::<Result<Vec<_>, _>>()?))
        }
        ArgRounding::Raw => {
            let mut class = vec![0.0; x.pic_rank];
            for (a, ray_class) in d.raw.iter().zip(&x.ray_classes) {
                for (acc, k) in class.iter_mut().zip(ray_class) {
                    *acc += a * *k as f64;
                }
            }
            Ok(PicClass::new(class.iter().map(|v| libm::floor(v + opts.wrap_noise) as i64).collect()))
        }
    }
}

pub fn ew_map(
    x: &ToricSurfaceData,
    crit: &CriticalSet,
    z_index: usize,
    opts: &CheckOptions,
) -> Result<PicClass, CheckError> {
    ew_class(x, &arg_divisor(x, &crit.points[z_index], opts)?, opts)
}

/// Real-valued weight `m(D; σ)` of the fractional divisor from its raw coefficients.
pub fn real_cone_weight(x: &ToricSurfaceData, d: &ArgDivisor, sigma: usize) -> Result<Vec<f64>, CheckError> {
    let cone = x.max_cones.get(sigma).ok_or(crate::error::LatticeError::ConeOutOfRange(sigma))?;
    let n = x.dim;
    let a: Vec<Complex64> =
        cone.iter().flat_map(|&r| x.rays[r].iter().map(|&v| Complex64::new(v as f64, 0.0))).collect();
    let b: Vec<Complex64> = cone.iter().map(|&r| Complex64::new(d.raw[r], 0.0)).collect();
    let m = cla::solve(&a, &b).ok_or(crate::error::LatticeError::Singular)?;
    debug_assert_eq!(m.len(), n);
    Ok(m.iter().map(|v| v.re).collect())
}

/// Exact weight of the snapped divisor on `σ`.
pub fn snapped_cone_weight(x: &ToricSurfaceData, d: &ArgDivisor, sigma: usize) -> Result<Vec<Rational>, CheckError> {
    Ok(x.cone_weight_rational(&d.snapped, sigma)?)
}

/// One `(z, σ)` comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremARow {
    pub z_index: usize,
    pub sigma: usize,
    pub class: PicClass,
    pub windings: Vec<i64>,
    /// `None` when the path does not end on a lattice point over the base solution.
    pub m_w: Option<Vec<i64>>,
    pub m_x: Vec<i64>,
    pub end_index: usize,
    pub pass: bool,
    pub failure: Option<String>,
    pub path: ArgPath,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremAReport {
    pub surface: String,
    pub t: f64,
    pub orientation: Orientation,
    pub crit: CriticalSet,
    pub ew: Vec<PicClass>,
    pub rows: Vec<TheoremARow>,
}

impl TheoremAReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn surface_system(x: &ToricSurfaceData, orientation: Orientation) -> LgSystem {
    lg_system(&lg_potential(x).with_orientation(orientation))
}

/// Critical set with `E_W` of every point, checking `E_W(z_0) = 0`.
pub fn critical_classes(
    x: &ToricSurfaceData,
    t: f64,
    opts: &CheckOptions,
) -> Result<(LgSystem, CriticalSet, Vec<PicClass>), CheckError> {
    let sys = surface_system(x, opts.orientation);
    let crit = solve_critical(x, &sys, t, &[], &opts.solve)?;
    let ew = (0..crit.len()).map(|i| ew_map(x, &crit, i, opts)).collect::<Result<Vec<_>, _>>()?;
    if !ew[crit.base_index].is_zero() {
        return Err(CheckError::BaseMismatch { base_index: crit.base_index });
    }
    Ok((sys, crit, ew))
}

/// For every critical point `z` and maximal cone `σ`: tracks `γ(z; σ)` and
/// compares the lattice endpoint `m_W(z; σ)` with `-m_X(E_W(z); σ)`.
pub fn verify_theorem_a(x: &ToricSurfaceData, t: f64, opts: &CheckOptions) -> Result<TheoremAReport, CheckError> {
    let (sys, crit, ew) = critical_classes(x, t, opts)?;
    let mut rows = Vec::new();
    for (z_index, class) in ew.iter().enumerate() {
        for sigma in 0..x.num_cones() {
            let spec: LoopSpec = loop_for(x, &crit, z_index, sigma, class)?;
            let path = track(&sys, &spec, &crit, &opts.track)?;
            let m_x = x.toric_weight(class, sigma)?.m;
            let (m_w, failure) = match monodromy_weight(&path, &crit, &opts.track) {
                Ok(w) => (Some(w), None),
                Err(e @ (TrackError::NotAtBase { .. } | TrackError::NotLatticeClose { .. })) => {
                    (None, Some(format!("{e}")))
                }
                Err(e) => return Err(e.into()),
            };
            let pass = m_w.as_ref().is_some_and(|w| w.iter().zip(&m_x).all(|(a, b)| a + b == 0));
            let failure = match (&failure, pass) {
                (None, false) => Some(String::from("m_W + m_X is not zero")),
                _ => failure,
            };
            rows.push(TheoremARow {
                z_index,
                sigma,
                class: class.clone(),
                windings: spec.windings,
                m_w,
                m_x,
                end_index: path.end_index,
                pass,
                failure,
                path,
            });
        }
    }
    Ok(TheoremAReport { surface: x.name.clone(), t, orientation: opts.orientation, crit, ew, rows })
}

fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// `h^i(P^n, O(k))`.
pub fn projective_cohomology(n: usize, k: i64) -> Vec<u64> {
    let mut h = vec![0u64; n + 1];
    let ni = n as i64;
    if k >= 0 {
        h[0] = binomial(ni + k, ni);
    }
    if k < -ni {
        h[n] = binomial(-k - 1, ni);
    }
    h
}

/// Cohomology of a line bundle on a smooth complete toric surface: sections
/// by lattice points, `h²` by Serre duality, `h¹` from Riemann-Roch.
pub fn surface_cohomology(x: &ToricSurfaceData, c: &PicClass) -> Result<Vec<u64>, CheckError> {
    if x.dim != 2 {
        return Err(CheckError::Unsupported(format!("{} is not a surface", x.name)));
    }
    let h0 = x.lattice_points(&x.representative(c)?)?.len() as i64;
    let k = x.canonical_class();
    let h2 = x.lattice_points(&x.representative(&k.sub(c))?)?.len() as i64;
    let cc = x.intersection_number(c, c)?;
    let ck = x.intersection_number(c, &k)?;
    let chi = 1 + (cc - ck) / 2;
    let h1 = h0 + h2 - chi;
    if h1 < 0 {
        return Err(CheckError::NegativeH1);
    }
    Ok(vec![h0 as u64, h1 as u64, h2 as u64])
}

/// `h^i(X, O(c))` for `i = 0..=dim`: closed form on projective spaces,
/// Künneth on products, the surface engine otherwise.
pub fn cohomology(x: &ToricSurfaceData, c: &PicClass) -> Result<Vec<u64>, CheckError> {
    if c.coords.len() != x.pic_rank {
        return Err(crate::error::LatticeError::DimensionMismatch { expected: x.pic_rank, found: c.coords.len() }.into());
    }
    match &x.kind {
        VarietyKind::Projective { n } => Ok(projective_cohomology(*n, c.coords[0])),
        VarietyKind::Product(a, b) => {
            let ha = cohomology(a, &PicClass::new(c.coords[..a.pic_rank].to_vec()))?;
            let hb = cohomology(b, &PicClass::new(c.coords[a.pic_rank..].to_vec()))?;
            let mut h = vec![0u64; x.dim + 1];
            for (i, u) in ha.iter().enumerate() {
                for (j, v) in hb.iter().enumerate() {
                    h[i + j] += u * v;
                }
            }
            Ok(h)
        }
        _ if x.dim == 2 => surface_cohomology(x, c),
        _ => Err(CheckError::Unsupported(format!("line-bundle cohomology on {}", x.name))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdicts {
    /// `Ext^•(E_k, E_j) = 0` for every `j < k`.
    pub exceptional: bool,
    /// Exceptional and `Ext^i(E_j, E_k) = 0` for `i > 0`, `j < k`.
    pub strong: bool,
    /// As many objects as the rank of the Grothendieck group.
    pub rank_full: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CollectionReport {
    pub order: Vec<PicClass>,
    /// `ext[i][j][k] = h^i(E_k - E_j) = dim Ext^i(E_j, E_k)`.
    pub ext: Vec<Vec<Vec<u64>>>,
    pub verdicts: Verdicts,
}

impl CollectionReport {
    /// Matrix of `h^i`, zero above the dimension.
    pub fn h(&self, i: usize) -> Vec<Vec<u64>> {
        self.ext.get(i).cloned().unwrap_or_else(|| vec![vec![0; self.order.len()]; self.order.len()])
    }

    /// Verdicts recomputed from the matrices.
    pub fn recompute(ext: &[Vec<Vec<u64>>], len: usize, expected_rank: u64) -> Verdicts {
        let mut exceptional = true;
        let mut forward = true;
        for j in 0..len {
            for k in (j + 1)..len {
                exceptional &= ext.iter().all(|m| m[k][j] == 0);
                forward &= ext.iter().skip(1).all(|m| m[j][k] == 0);
            }
            exceptional &= ext[0][j][j] == 1 && ext.iter().skip(1).all(|m| m[j][j] == 0);
        }
        Verdicts { exceptional, strong: exceptional && forward, rank_full: len as u64 == expected_rank }
    }
}

pub fn certify_collection(x: &ToricSurfaceData, classes: &[PicClass]) -> Result<CollectionReport, CheckError> {
    let len = classes.len();
    let mut ext = vec![vec![vec![0u64; len]; len]; x.dim + 1];
    for (j, ej) in classes.iter().enumerate() {
        for (k, ek) in classes.iter().enumerate() {
            for (i, v) in cohomology(x, &ek.sub(ej))?.into_iter().enumerate() {
                ext[i][j][k] = v;
            }
        }
    }
    let verdicts = CollectionReport::recompute(&ext, len, x.normalized_volume());
    Ok(CollectionReport { order: classes.to_vec(), ext, verdicts })
}

/// Degree against the anticanonical class; the sum of the representative's
/// coefficients off the surface case.
fn anticanonical_degree(x: &ToricSurfaceData, c: &PicClass) -> Result<i64, CheckError> {
    if x.dim == 2 {
        Ok(x.intersection_number(c, &x.canonical_class().neg())?)
    } else {
        Ok(x.representative(c)?.coefficients.iter().sum())
    }
}

/// Sorts by `(-K)`-degree, then lexicographically, after checking injectivity.
pub fn order_collection(x: &ToricSurfaceData, ew: &[PicClass]) -> Result<Vec<PicClass>, CheckError> {
    for i in 0..ew.len() {
        for j in (i + 1)..ew.len() {
            if ew[i] == ew[j] {
                return Err(CheckError::NotInjective { first: i, second: j });
            }
        }
    }
    let mut keyed = ew.iter().map(|c| Ok((anticanonical_degree(x, c)?, c.clone()))).collect::<Result<Vec<_>, CheckError>>()?;
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, c)| c).collect())
}

/// Image of `E_W` over the critical set at deformation `t`, ordered.
pub fn ew_image(x: &ToricSurfaceData, t: f64, opts: &CheckOptions) -> Result<Vec<PicClass>, CheckError> {
    let (_, _, ew) = critical_classes(x, t, opts)?;
    order_collection(x, &ew)
}

/// `q` as a float, for reports.
pub fn rational_to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::default_deformation;
    use crate::toric::build_variety;

    fn classes(v: &[&[i64]]) -> Vec<PicClass> {
        v.iter().map(|c| PicClass::new(c.to_vec())).collect()
    }

    fn ew_of(name: &str) -> (ToricSurfaceData, CriticalSet, Vec<PicClass>) {
        let x = build_variety(name).unwrap();
        let (_, crit, ew) = critical_classes(&x, default_deformation(&x), &CheckOptions::default()).unwrap();
        (x, crit, ew)
    }

    fn class_at(crit: &CriticalSet, ew: &[PicClass], z: &[Complex64]) -> PicClass {
        let (i, d) = crit.nearest(z).unwrap();
        assert!(d < 1e-9);
        ew[i].clone()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn snapping_prefers_small_denominators_and_allows_one() {
        assert_eq!(snap(0.3334, 3).0, Rational::new(1, 3));
        assert_eq!(snap(0.9996, 5).0, Rational::from_integer(1));
        assert_eq!(snap(0.5, 6).0, Rational::new(1, 2));
        assert_eq!(snap(0.0, 6).0, Rational::from_integer(0));
    }

    #[test]
    fn p2_exceptional_map_is_multiples_of_h() {
        let (_, crit, ew) = ew_of("p2");
        for k in 0..3 {
            let w = Complex64::from_polar(1.0, core::f64::consts::TAU * k as f64 / 3.0);
            assert_eq!(class_at(&crit, &ew, &[w, w]), PicClass::new(vec![k as i64]));
        }
    }

    #[test]
    fn bl3_exceptional_map_matches_listed_points() {
        let (_, crit, ew) = ew_of("bl3");
        let r = Complex64::from_polar(1.0, core::f64::consts::TAU / 3.0);
        let one = c(1.0, 0.0);
        let expected = [
            ([one, one], [0, 0, 0, 0]),
            ([r, r], [1, 0, 0, 0]),
            ([r * r, r * r], [2, -1, -1, -1]),
            ([one, -one], [1, -1, 0, 0]),
            ([-one, one], [1, 0, -1, 0]),
            ([-one, -one], [1, 0, 0, -1]),
        ];
        for (z, class) in expected {
            assert_eq!(class_at(&crit, &ew, &z), PicClass::new(class.to_vec()), "{z:?}");
        }
    }

    #[test]
    fn real_weights_of_p2_argument_divisors() {
        let x = build_variety("p2").unwrap();
        let w = Complex64::from_polar(1.0, core::f64::consts::TAU / 3.0);
        let d1 = arg_divisor(&x, &[w, w], &CheckOptions::default()).unwrap();
        let m = real_cone_weight(&x, &d1, 0).unwrap();
        assert!((m[0] - 1.0 / 3.0).abs() < 1e-12 && (m[1] - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(snapped_cone_weight(&x, &d1, 0).unwrap(), vec![Rational::new(1, 3); 2]);
        let d2 = arg_divisor(&x, &[w * w, w * w], &CheckOptions::default()).unwrap();
        let m = real_cone_weight(&x, &d2, 1).unwrap();
        assert!((m[0] + 4.0 / 3.0).abs() < 1e-12 && (m[1] - 2.0 / 3.0).abs() < 1e-12);
        let d0 = arg_divisor(&x, &[c(1.0, 0.0), c(1.0, 0.0)], &CheckOptions::default()).unwrap();
        assert_eq!(real_cone_weight(&x, &d0, 2).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn p2_cohomology_examples() {
        let x = build_variety("p2").unwrap();
        assert_eq!(cohomology(&x, &PicClass::new(vec![1])).unwrap(), vec![3, 0, 0]);
        assert_eq!(cohomology(&x, &PicClass::new(vec![0])).unwrap(), vec![1, 0, 0]);
        assert_eq!(cohomology(&x, &PicClass::new(vec![-1])).unwrap(), vec![0, 0, 0]);
        assert_eq!(cohomology(&x, &PicClass::new(vec![-3])).unwrap(), vec![0, 0, 1]);
        for k in -6..=6 {
            let c = PicClass::new(vec![k]);
            assert_eq!(surface_cohomology(&x, &c).unwrap(), cohomology(&x, &c).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn surface_engine_agrees_with_kunneth_on_p1xp1() {
        let x = build_variety("p1xp1").unwrap();
        for a in -4..=4 {
            for b in -4..=4 {
                let c = PicClass::new(vec![a, b]);
                assert_eq!(surface_cohomology(&x, &c).unwrap(), cohomology(&x, &c).unwrap(), "({a},{b})");
            }
        }
        // O(-2, 0) has h^1 = 1
        assert_eq!(cohomology(&x, &PicClass::new(vec![-2, 0])).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn beilinson_collection_is_strong_and_full_rank() {
        let x = build_variety("p2").unwrap();
        let r = certify_collection(&x, &classes(&[&[0], &[1], &[2]])).unwrap();
        assert_eq!(r.verdicts, Verdicts { exceptional: true, strong: true, rank_full: true });
        assert_eq!(r.h(0), vec![vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]);
        let short = certify_collection(&x, &classes(&[&[0], &[1]])).unwrap();
        assert!(short.verdicts.strong && !short.verdicts.rank_full);
        // Ext^2(O(3), O) = H^0(O)^* is one-dimensional
        let gap = certify_collection(&x, &classes(&[&[0], &[3]])).unwrap();
        assert_eq!(gap.h(2)[1][0], 1);
        assert!(!gap.verdicts.exceptional && !gap.verdicts.rank_full);
        let reversed = certify_collection(&x, &classes(&[&[2], &[1], &[0]])).unwrap();
        assert!(!reversed.verdicts.exceptional);
    }

    #[test]
    fn higher_projective_space_uses_closed_form() {
        let x = build_variety("pn:3").unwrap();
        assert_eq!(cohomology(&x, &PicClass::new(vec![-4])).unwrap(), vec![0, 0, 0, 1]);
        assert_eq!(cohomology(&x, &PicClass::new(vec![2])).unwrap(), vec![10, 0, 0, 0]);
        let r = certify_collection(&x, &classes(&[&[0], &[1], &[2], &[3]])).unwrap();
        assert!(r.verdicts.strong && r.verdicts.rank_full);
    }

    #[test]
    fn ew_images_in_degree_order() {
        let opts = CheckOptions::default();
        let x = build_variety("p2").unwrap();
        assert_eq!(ew_image(&x, 0.0, &opts).unwrap(), classes(&[&[0], &[1], &[2]]));
        let x = build_variety("bl3").unwrap();
        assert_eq!(
            ew_image(&x, 0.0, &opts).unwrap(),
            classes(&[&[0, 0, 0, 0], &[1, -1, 0, 0], &[1, 0, -1, 0], &[1, 0, 0, -1], &[1, 0, 0, 0], &[2, -1, -1, -1]])
        );
    }

    #[test]
    fn non_injective_map_is_reported() {
        let x = build_variety("p2").unwrap();
        let r = order_collection(&x, &classes(&[&[0], &[1], &[1]]));
        assert_eq!(r, Err(CheckError::NotInjective { first: 1, second: 2 }));
    }

    #[test]
    fn raw_rounding_agrees_with_snapping_on_roots_of_unity() {
        let x = build_variety("bl3").unwrap();
        let raw = CheckOptions { rounding: ArgRounding::Raw, ..CheckOptions::default() };
        let (_, crit, snapped) = critical_classes(&x, 0.0, &CheckOptions::default()).unwrap();
        for (i, class) in snapped.iter().enumerate() {
            assert_eq!(&ew_map(&x, &crit, i, &raw).unwrap(), class);
        }
    }

    #[test]
    fn theorem_a_on_p2() {
        let x = build_variety("p2").unwrap();
        let report = verify_theorem_a(&x, 0.0, &CheckOptions::default()).unwrap();
        assert_eq!(report.rows.len(), 9);
        assert!(report.pass(), "{:?}", report.rows.iter().filter(|r| !r.pass).map(|r| (r.z_index, r.sigma, &r.failure)).collect::<Vec<_>>());
    }
}
