//! Exact lattice geometry of smooth complete toric varieties: fans, the
//! `Div_T -> Pic` sequence, support-function weights on maximal cones,
//! section polytopes and (for surfaces) the intersection form.

mod catalog;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::LatticeError;
use crate::intlin::{self, Rational};

pub use catalog::{blowup, build_variety, product, projective, projective_bundle};

/// How a catalog variety was built; products keep their factors so that
/// cohomology can be computed factor-wise.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum VarietyKind {
    Projective { n: usize },
    /// Blow-up of the projective plane in `k` torus-fixed points.
    Blowup { k: usize },
    ProjectiveBundle { s: usize, a: Vec<i64> },
    Product(Box<ToricSurfaceData>, Box<ToricSurfaceData>),
}

/// Fan, Picard group and ray-class table of one catalog variety.
///
/// The first `dim` rays are always the standard basis `e_1, ..., e_n`; the
/// remaining rays carry the Picard basis representatives.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToricSurfaceData {
    pub name: String,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    /// Display label of each maximal cone, e.g. `σ1`.
    pub cone_labels: Vec<String>,
    pub pic_rank: usize,
    /// Class of each ray divisor in the Picard basis.
    pub ray_classes: Vec<Vec<i64>>,
    pub pic_basis_labels: Vec<String>,
    /// Intersection pairing of basis classes; present for surfaces only.
    pub intersection_matrix: Option<Vec<Vec<i64>>>,
    pub kind: VarietyKind,
}

/// Integer combination of the toric boundary divisors, one coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TDivisor {
    pub coefficients: Vec<i64>,
}

/// A class in `Pic(X)` in the coordinates of `pic_basis_labels`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PicClass {
    pub coords: Vec<i64>,
}

/// Linear part `m(D; σ)` of a support function on one maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConeWeight {
    pub m: Vec<i64>,
}

/// Witness that a family of cone weights does not glue to a support function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingViolation {
    pub ray: usize,
    pub cones: (usize, usize),
    pub values: (i64, i64),
}

impl TDivisor {
    pub fn new(coefficients: Vec<i64>) -> Self {
        Self { coefficients }
    }

    pub fn zero(len: usize) -> Self {
        Self { coefficients: vec![0; len] }
    }

    /// Single boundary divisor `V(ray)` with multiplicity `mult`.
    pub fn ray(len: usize, ray: usize, mult: i64) -> Self {
        let mut d = Self::zero(len);
        d.coefficients[ray] = mult;
        d
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }
}

impl PicClass {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Self { coords: vec![0; rank] }
    }

    /// Unit vector of the `i`-th basis class.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut c = Self::zero(rank);
        c.coords[i] = 1;
        c
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl ToricSurfaceData {
    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn num_cones(&self) -> usize {
        self.max_cones.len()
    }

    fn check_divisor(&self, d: &TDivisor) -> Result<(), LatticeError> {
        if d.coefficients.len() != self.rays.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rays.len(),
                found: d.coefficients.len(),
            });
        }
        Ok(())
    }

    fn check_class(&self, c: &PicClass) -> Result<(), LatticeError> {
        if c.coords.len() != self.pic_rank {
            return Err(LatticeError::DimensionMismatch { expected: self.pic_rank, found: c.coords.len() });
        }
        Ok(())
    }

    fn cone(&self, sigma: usize) -> Result<&[usize], LatticeError> {
        self.max_cones.get(sigma).map(Vec::as_slice).ok_or(LatticeError::ConeOutOfRange(sigma))
    }

    /// `div(z^m) = Σ <m, n_ρ> V(ρ)`.
    pub fn principal(&self, m: &[i64]) -> TDivisor {
        TDivisor::new(self.rays.iter().map(|r| intlin::dot(r, m)).collect())
    }

    /// The anticanonical divisor `Σ V(ρ)`.
    pub fn anticanonical(&self) -> TDivisor {
        TDivisor::new(vec![1; self.rays.len()])
    }

    /// Class of an integer T-divisor.
    pub fn class_of(&self, d: &TDivisor) -> Result<PicClass, LatticeError> {
        self.check_divisor(d)?;
        let mut coords = vec![0i64; self.pic_rank];
        for (c, class) in d.coefficients.iter().zip(&self.ray_classes) {
            for (acc, k) in coords.iter_mut().zip(class) {
                *acc = k
                    .checked_mul(*c)
                    .and_then(|v| acc.checked_add(v))
                    .ok_or(LatticeError::Overflow)?;
            }
        }
        Ok(PicClass::new(coords))
    }

    /// Class of a rational combination of ray divisors, in `Pic ⊗ Q`.
    pub fn class_of_rational(&self, coeffs: &[Rational]) -> Result<Vec<Rational>, LatticeError> {
        if coeffs.len() != self.rays.len() {
            return Err(LatticeError::DimensionMismatch { expected: self.rays.len(), found: coeffs.len() });
        }
        let mut out = vec![Rational::zero(); self.pic_rank];
        for (c, class) in coeffs.iter().zip(&self.ray_classes) {
            for (acc, k) in out.iter_mut().zip(class) {
                *acc += *c * Rational::from_integer(i128::from(*k));
            }
        }
        Ok(out)
    }

    /// Weight `m(D; σ)`: the unique `m` with `<m, n_ρ> = coeff(D, ρ)` for all
    /// rays of `σ`.
    pub fn cone_weight(&self, d: &TDivisor, sigma: usize) -> Result<ConeWeight, LatticeError> {
        self.check_divisor(d)?;
        let cone = self.cone(sigma)?;
        let a: Vec<Vec<i64>> = cone.iter().map(|&r| self.rays[r].clone()).collect();
        let b: Vec<i64> = cone.iter().map(|&r| d.coefficients[r]).collect();
        Ok(ConeWeight { m: intlin::solve_integer(&a, &b)? })
    }

    /// Real-valued weight of a real divisor on `σ`.
    pub fn cone_weight_rational(&self, coeffs: &[Rational], sigma: usize) -> Result<Vec<Rational>, LatticeError> {
        let cone = self.cone(sigma)?;
        let a: Vec<Vec<Rational>> = cone.iter().map(|&r| intlin::to_rational_vec(&self.rays[r])).collect();
        let b: Vec<Rational> = cone.iter().map(|&r| coeffs[r]).collect();
        intlin::solve_rational(&a, &b)
    }

    /// The unique divisor of class `e` supported on the given rays (which must
    /// have `pic_rank` elements whose classes form a basis).
    pub fn divisor_on_rays(&self, e: &PicClass, support: &[usize]) -> Result<TDivisor, LatticeError> {
        self.check_class(e)?;
        if support.len() != self.pic_rank {
            return Err(LatticeError::DimensionMismatch { expected: self.pic_rank, found: support.len() });
        }
        // columns = classes of the support rays
        let a: Vec<Vec<i64>> = (0..self.pic_rank)
            .map(|i| support.iter().map(|&r| self.ray_classes[r][i]).collect())
            .collect();
        let x = intlin::solve_integer(&a, &e.coords)?;
        let mut d = TDivisor::zero(self.rays.len());
        for (&r, v) in support.iter().zip(x) {
            d.coefficients[r] = v;
        }
        Ok(d)
    }

    /// `D(E; σ)`: the divisor of class `e` vanishing on every ray of `σ`.
    pub fn divisor_off_cone(&self, e: &PicClass, sigma: usize) -> Result<TDivisor, LatticeError> {
        let cone = self.cone(sigma)?;
        let support: Vec<usize> = (0..self.rays.len()).filter(|r| !cone.contains(r)).collect();
        self.divisor_on_rays(e, &support)
    }

    /// `D(E)`: the fixed representative of `e` supported off `e_1, ..., e_n`,
    /// whose cone weights define `m_X(E; σ)`.
    pub fn representative(&self, e: &PicClass) -> Result<TDivisor, LatticeError> {
        let support: Vec<usize> = (self.dim..self.rays.len()).collect();
        self.divisor_on_rays(e, &support)
    }

    /// `m_X(E; σ) = m(D(E); σ)`.
    pub fn toric_weight(&self, e: &PicClass, sigma: usize) -> Result<ConeWeight, LatticeError> {
        self.cone_weight(&self.representative(e)?, sigma)
    }

    /// Lattice points of the section polytope `{m : <m, n_ρ> >= -c_ρ}`.
    pub fn lattice_points(&self, d: &TDivisor) -> Result<Vec<Vec<i64>>, LatticeError> {
        self.check_divisor(d)?;
        let n = self.dim;
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for axis in 0..n {
            for sign in [1i64, -1] {
                let mut v = vec![0i64; n];
                v[axis] = sign;
                let bound = self.support_bound(&v, d)?;
                // sign * m_axis >= bound
                if sign == 1 {
                    lo[axis] = bound;
                } else {
                    hi[axis] = -bound;
                }
            }
        }
        let mut points = Vec::new();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(points);
        }
        let mut m = lo.clone();
        loop {
            if self
                .rays
                .iter()
                .zip(&d.coefficients)
                .all(|(r, c)| intlin::dot(r, &m) >= -c)
            {
                points.push(m.clone());
            }
            let mut axis = 0;
            loop {
                if axis == n {
                    return Ok(points);
                }
                if m[axis] < hi[axis] {
                    m[axis] += 1;
                    break;
                }
                m[axis] = lo[axis];
                axis += 1;
            }
        }
    }

    /// Lower bound of `<m, v>` over the section polytope of `d`, from writing
    /// `v` as a non-negative combination of the rays of a cone containing it.
    fn support_bound(&self, v: &[i64], d: &TDivisor) -> Result<i64, LatticeError> {
        let target = intlin::to_rational_vec(v);
        for cone in &self.max_cones {
            let a: Vec<Vec<Rational>> = (0..self.dim)
                .map(|i| cone.iter().map(|&r| Rational::from_integer(i128::from(self.rays[r][i]))).collect())
                .collect();
            let Ok(lambda) = intlin::solve_rational(&a, &target) else { continue };
            if lambda.iter().any(Signed::is_negative) {
                continue;
            }
            let s: Rational = cone
                .iter()
                .zip(&lambda)
                .map(|(&r, l)| *l * Rational::from_integer(i128::from(d.coefficients[r])))
                .sum();
            return intlin::floor_rational(&(-s).ceil());
        }
        Err(LatticeError::Unbounded)
    }

    /// Number of maximal cones weighted by `|det|` of their ray matrices.
    pub fn normalized_volume(&self) -> u64 {
        self.max_cones
            .iter()
            .map(|cone| {
                let a: Vec<Vec<i64>> = cone.iter().map(|&r| self.rays[r].clone()).collect();
                intlin::determinant(&a).map_or(0, |d| d.unsigned_abs())
            })
            .sum()
    }

    /// Intersection number of two classes on a surface.
    pub fn intersection_number(&self, c1: &PicClass, c2: &PicClass) -> Result<i64, LatticeError> {
        self.check_class(c1)?;
        self.check_class(c2)?;
        let q = self.intersection_matrix.as_ref().ok_or(LatticeError::NotASurface)?;
        let mut s = 0i64;
        for (i, row) in q.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                s += c1.coords[i] * v * c2.coords[j];
            }
        }
        Ok(s)
    }

    /// Class of the canonical divisor `K = -Σ V(ρ)`.
    pub fn canonical_class(&self) -> PicClass {
        self.class_of(&self.anticanonical()).map(|c| c.neg()).unwrap_or_else(|_| PicClass::zero(self.pic_rank))
    }

    /// Glues one weight per maximal cone into a support function, or reports
    /// the first ray on which two cones disagree.
    pub fn weights_to_support_function(&self, weights: &[ConeWeight]) -> Result<TDivisor, GluingViolation> {
        assert_eq!(weights.len(), self.max_cones.len(), "one weight per maximal cone");
        let mut coeff: Vec<Option<(i64, usize)>> = vec![None; self.rays.len()];
        for (sigma, (cone, w)) in self.max_cones.iter().zip(weights).enumerate() {
            for &r in cone {
                let v = intlin::dot(&w.m, &self.rays[r]);
                match coeff[r] {
                    None => coeff[r] = Some((v, sigma)),
                    Some((prev, prev_sigma)) if prev != v => {
                        return Err(GluingViolation { ray: r, cones: (prev_sigma, sigma), values: (prev, v) });
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(TDivisor::new(coeff.into_iter().map(|c| c.map_or(0, |(v, _)| v)).collect()))
    }

    /// Rays adjacent to `ray` (sharing a maximal cone with it).
    pub fn neighbours(&self, ray: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .max_cones
            .iter()
            .filter(|c| c.contains(&ray))
            .flat_map(|c| c.iter().copied())
            .filter(|&r| r != ray)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Intersection matrix of the ray divisors of a smooth complete surface fan:
/// adjacent rays meet once, `D_ρ² = -a` where `n_prev + n_next = a n_ρ`.
pub(crate) fn ray_intersections(x: &ToricSurfaceData) -> Result<Vec<Vec<i64>>, LatticeError> {
    if x.dim != 2 {
        return Err(LatticeError::NotASurface);
    }
    let r = x.rays.len();
    let mut m = vec![vec![0i64; r]; r];
    for (i, row) in m.iter_mut().enumerate() {
        let nb = x.neighbours(i);
        if nb.len() != 2 {
            return Err(LatticeError::NotASurface);
        }
        for &j in &nb {
            row[j] = 1;
        }
        let sum: Vec<i64> = (0..2).map(|k| x.rays[nb[0]][k] + x.rays[nb[1]][k]).collect();
        // sum = a * n_i with n_i primitive
        let ray = &x.rays[i];
        let k = if ray[0] != 0 { 0 } else { 1 };
        let a = sum[k] / ray[k];
        if sum[0] != a * ray[0] || sum[1] != a * ray[1] {
            return Err(LatticeError::Singular);
        }
        row[i] = -a;
    }
    Ok(m)
}
