//! Catalog of smooth toric Fano varieties: projective spaces, the toric
//! blow-ups of the plane, projective bundles over projective space, and
//! products.
//!
//! Each entry stores its fan, the cone numbering of the reference figures,
//! and one T-divisor per Picard basis class. Ray classes are derived from the
//! cokernel of `m -> Σ <m, n_ρ> V(ρ)` and then expressed in that basis.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{ray_intersections, PicClass, TDivisor, ToricSurfaceData, VarietyKind};
use crate::error::LatticeError;
use crate::intlin;

struct Spec {
    name: String,
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    cone_labels: Vec<String>,
    basis: Vec<(String, TDivisor)>,
    kind: VarietyKind,
}

fn assemble(spec: Spec) -> Result<ToricSurfaceData, LatticeError> {
    let Spec { name, dim, rays, cones, cone_labels, basis, kind } = spec;
    for (i, ray) in rays.iter().enumerate() {
        if ray.len() != dim {
            return Err(LatticeError::DimensionMismatch { expected: dim, found: ray.len() });
        }
        if i < dim && ray.iter().enumerate().any(|(j, &v)| v != i64::from(i == j)) {
            return Err(LatticeError::NotFano(format!("{name}: leading rays must be the standard basis")));
        }
    }
    for cone in &cones {
        let a: Vec<Vec<i64>> = cone.iter().map(|&r| rays[r].clone()).collect();
        if cone.len() != dim || intlin::determinant(&a)?.abs() != 1 {
            return Err(LatticeError::NotFano(format!("{name}: cone {cone:?} is not unimodular")));
        }
    }
    let q = intlin::free_cokernel(&rays)?;
    let pic_rank = q.len();
    if basis.len() != pic_rank || rays.len() != dim + pic_rank {
        return Err(LatticeError::DimensionMismatch { expected: pic_rank, found: basis.len() });
    }
    let project = |d: &[i64]| -> Vec<i64> { q.iter().map(|row| intlin::dot(row, d)).collect() };
    // columns: cokernel coordinates of each basis divisor
    let basis_cols: Vec<Vec<i64>> = basis.iter().map(|(_, d)| project(&d.coefficients)).collect();
    let change = intlin::transpose(&basis_cols);
    if intlin::determinant(&change)?.abs() != 1 {
        return Err(LatticeError::NotFano(format!("{name}: basis divisors do not generate Pic")));
    }
    let mut ray_classes = Vec::with_capacity(rays.len());
    for r in 0..rays.len() {
        let mut unit = vec![0i64; rays.len()];
        unit[r] = 1;
        ray_classes.push(intlin::solve_integer(&change, &project(&unit))?);
    }
    let mut x = ToricSurfaceData {
        name,
        dim,
        rays,
        max_cones: cones,
        cone_labels,
        pic_rank,
        ray_classes,
        pic_basis_labels: basis.into_iter().map(|(l, _)| l).collect(),
        intersection_matrix: None,
        kind,
    };
    if dim == 2 {
        let rays_ix = ray_intersections(&x)?;
        let reps: Vec<TDivisor> =
            (0..pic_rank).map(|i| x.representative(&PicClass::basis(pic_rank, i))).collect::<Result<_, _>>()?;
        let pair = |a: &TDivisor, b: &TDivisor| -> i64 {
            let mut s = 0;
            for (i, ca) in a.coefficients.iter().enumerate() {
                for (j, cb) in b.coefficients.iter().enumerate() {
                    s += ca * rays_ix[i][j] * cb;
                }
            }
            s
        };
        x.intersection_matrix = Some(reps.iter().map(|a| reps.iter().map(|b| pair(a, b)).collect()).collect());
    }
    Ok(x)
}

fn labels(prefix: &str, range: core::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Projective space `P^n` with rays `e_1, ..., e_n, e_0 = -Σ e_i`. Cone `σ_j`
/// omits `e_j`.
pub fn projective(n: usize) -> Result<ToricSurfaceData, LatticeError> {
    if n == 0 {
        return Err(LatticeError::NotFano("P^0 has no fan".to_string()));
    }
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    rays.push(vec![-1; n]);
    // σ_0 omits e_0 (the last ray); σ_j omits e_j.
    let cones: Vec<Vec<usize>> = (0..=n)
        .map(|j| {
            let omit = if j == 0 { n } else { j - 1 };
            (0..=n).filter(|&r| r != omit).collect()
        })
        .collect();
    let name = match n {
        1 => "p1".to_string(),
        2 => "p2".to_string(),
        _ => format!("pn:{n}"),
    };
    assemble(Spec {
        name,
        dim: n,
        rays,
        cones,
        cone_labels: labels("σ", 0..=n),
        basis: vec![("H".to_string(), TDivisor::ray(n + 1, n, 1))],
        kind: VarietyKind::Projective { n },
    })
}

/// Toric blow-up of `P^2` in `k = 1, 2, 3` fixed points, with the fans, ray
/// order and cone numbering of the reference figures.
pub fn blowup(k: usize) -> Result<ToricSurfaceData, LatticeError> {
    let (rays, cones, basis): (Vec<Vec<i64>>, Vec<Vec<usize>>, Vec<(&str, Vec<usize>)>) = match k {
        // e1, e2 (= v1), n1 = (-1,1) (= e0), n2 = (0,-1) (= v0)
        1 => (
            vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            vec![("H", vec![3]), ("E", vec![1])],
        ),
        // e1, e2, n1 = -e1, n2 = -e1-e2, n3 = -e2
        2 => (
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
            vec![("H", vec![2, 3, 4]), ("E1", vec![2]), ("E2", vec![4])],
        ),
        // e1, e2, n1 = e1+e2, n2 = -e1, n3 = -e1-e2, n4 = -e2
        3 => (
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 4], vec![4, 5], vec![5, 0]],
            vec![("H", vec![3, 4, 5]), ("E1", vec![3]), ("E2", vec![5]), ("E3", vec![2])],
        ),
        _ => return Err(LatticeError::UnknownVariety(format!("bl{k}"))),
    };
    let r = rays.len();
    let ncones = cones.len();
    assemble(Spec {
        name: format!("bl{k}"),
        dim: 2,
        rays,
        cones,
        cone_labels: labels("σ", 1..=ncones),
        basis: basis
            .into_iter()
            .map(|(l, support)| {
                let mut d = TDivisor::zero(r);
                for s in support {
                    d.coefficients[s] = 1;
                }
                (l.to_string(), d)
            })
            .collect(),
        kind: VarietyKind::Blowup { k },
    })
}

/// `P(O ⊕ O(a_1) ⊕ ... ⊕ O(a_r))` over `P^s`, Fano when `0 <= a_1 <= ... <= a_r`
/// and `Σ a_i <= s`.
///
/// Rays: `e_1..e_s, v_1..v_r, e_0 = Σ a_i v_i - Σ e_i, v_0 = -Σ v_i`. Basis
/// `π*H = [V(e_0)]`, `ξ = [V(v_0)]`.
pub fn projective_bundle(s: usize, a: &[i64]) -> Result<ToricSurfaceData, LatticeError> {
    let r = a.len();
    if s == 0 || r == 0 {
        return Err(LatticeError::NotFano("projective bundle needs s >= 1 and r >= 1".to_string()));
    }
    if a[0] < 0 || a.windows(2).any(|w| w[0] > w[1]) {
        return Err(LatticeError::NotFano("twists must satisfy 0 <= a_1 <= ... <= a_r".to_string()));
    }
    let total: i64 = a.iter().sum();
    if total > s as i64 {
        return Err(LatticeError::NotFano(format!("Σ a_i = {total} exceeds s = {s}")));
    }
    let dim = s + r;
    let mut rays: Vec<Vec<i64>> = (0..dim).map(|i| unit(dim, i)).collect();
    let mut e0 = vec![-1i64; s];
    e0.extend_from_slice(a);
    rays.push(e0);
    let mut v0 = vec![0i64; s];
    v0.extend(core::iter::repeat_n(-1, r));
    rays.push(v0);
    let e_index = |i: usize| if i == 0 { s + r } else { i - 1 };
    let v_index = |j: usize| if j == 0 { s + r + 1 } else { s + j - 1 };
    let mut cones = Vec::new();
    let mut cone_labels = Vec::new();
    for i in 0..=s {
        for j in 0..=r {
            let mut cone: Vec<usize> = (0..=s).filter(|&k| k != i).map(e_index).collect();
            cone.extend((0..=r).filter(|&k| k != j).map(v_index));
            cones.push(cone);
            cone_labels.push(format!("σ({i},{j})"));
        }
    }
    let nrays = rays.len();
    let list = a.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    assemble(Spec {
        name: format!("projbundle:s={s},a={list}"),
        dim,
        rays,
        cones,
        cone_labels,
        basis: vec![
            ("pi*H".to_string(), TDivisor::ray(nrays, s + r, 1)),
            ("xi".to_string(), TDivisor::ray(nrays, s + r + 1, 1)),
        ],
        kind: VarietyKind::ProjectiveBundle { s, a: a.to_vec() },
    })
}

/// Product `A × B`. Rays are ordered `A`'s basis rays, `B`'s basis rays, then
/// the remaining rays of `A` and of `B`; the Picard basis is the
/// concatenation of the factor bases.
pub fn product(a: &ToricSurfaceData, b: &ToricSurfaceData) -> Result<ToricSurfaceData, LatticeError> {
    let (na, nb) = (a.dim, b.dim);
    let dim = na + nb;
    let lift_a = |v: &[i64]| -> Vec<i64> {
        let mut out = v.to_vec();
        out.extend(core::iter::repeat_n(0, nb));
        out
    };
    let lift_b = |v: &[i64]| -> Vec<i64> {
        let mut out = vec![0; na];
        out.extend_from_slice(v);
        out
    };
    // index maps from factor rays to product rays
    let (ra, rb) = (a.rays.len(), b.rays.len());
    let map_a = |i: usize| if i < na { i } else { dim + (i - na) };
    let map_b = |j: usize| if j < nb { na + j } else { dim + (ra - na) + (j - nb) };
    let mut rays = vec![Vec::new(); ra + rb];
    for (i, ray) in a.rays.iter().enumerate() {
        rays[map_a(i)] = lift_a(ray);
    }
    for (j, ray) in b.rays.iter().enumerate() {
        rays[map_b(j)] = lift_b(ray);
    }
    let mut cones = Vec::new();
    let mut cone_labels = Vec::new();
    for (ca, la) in a.max_cones.iter().zip(&a.cone_labels) {
        for (cb, lb) in b.max_cones.iter().zip(&b.cone_labels) {
            let mut cone: Vec<usize> = ca.iter().map(|&i| map_a(i)).collect();
            cone.extend(cb.iter().map(|&j| map_b(j)));
            cones.push(cone);
            cone_labels.push(format!("{la}x{lb}"));
        }
    }
    let nrays = rays.len();
    let mut basis = Vec::new();
    for (k, label) in a.pic_basis_labels.iter().enumerate() {
        let rep = a.representative(&PicClass::basis(a.pic_rank, k))?;
        let mut d = TDivisor::zero(nrays);
        for (i, c) in rep.coefficients.iter().enumerate() {
            d.coefficients[map_a(i)] = *c;
        }
        basis.push((format!("{label}_1"), d));
    }
    for (k, label) in b.pic_basis_labels.iter().enumerate() {
        let rep = b.representative(&PicClass::basis(b.pic_rank, k))?;
        let mut d = TDivisor::zero(nrays);
        for (j, c) in rep.coefficients.iter().enumerate() {
            d.coefficients[map_b(j)] = *c;
        }
        basis.push((format!("{label}_2"), d));
    }
    let name = if a.name == "p1" && b.name == "p1" {
        "p1xp1".to_string()
    } else {
        format!("product:{},{}", a.name, b.name)
    };
    assemble(Spec {
        name,
        dim,
        rays,
        cones,
        cone_labels,
        basis,
        kind: VarietyKind::Product(Box::new(a.clone()), Box::new(b.clone())),
    })
}

/// Builds a catalog variety from its stable name: `p1`, `p2`, `pn:<n>`,
/// `p1xp1`, `bl1`, `bl2`, `bl3`, `product:<A>,<B>`,
/// `projbundle:s=<s>,a=<a_1>,...,<a_r>`.
pub fn build_variety(name: &str) -> Result<ToricSurfaceData, LatticeError> {
    let name = name.trim();
    let unknown = || LatticeError::UnknownVariety(name.to_string());
    match name {
        "p1" => return projective(1),
        "p2" => return projective(2),
        "p1xp1" => return product(&projective(1)?, &projective(1)?),
        "bl1" => return blowup(1),
        "bl2" => return blowup(2),
        "bl3" => return blowup(3),
        _ => {}
    }
    if let Some(n) = name.strip_prefix("pn:") {
        return projective(n.parse().map_err(|_| unknown())?);
    }
    if let Some(rest) = name.strip_prefix("product:") {
        // split at the first comma that leaves two parseable factors
        for (pos, _) in rest.match_indices(',') {
            let (left, right) = (&rest[..pos], &rest[pos + 1..]);
            if let (Ok(a), Ok(b)) = (build_variety(left), build_variety(right)) {
                return product(&a, &b);
            }
        }
        return Err(unknown());
    }
    if let Some(rest) = name.strip_prefix("projbundle:") {
        let (s_part, a_part) = rest.split_once(",a=").ok_or_else(unknown)?;
        let s: usize = s_part.strip_prefix("s=").ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
        let a: Vec<i64> =
            a_part.split(',').map(|v| v.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|_| unknown())?;
        return projective_bundle(s, &a);
    }
    Err(unknown())
}
