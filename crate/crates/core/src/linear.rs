//! Invariants when the stable set may omit linear-part boundary divisors.
//!
//! Unstable rays are required to lie on the linear part of the valuation
//! cone. The cones contained in that subspace form a smooth complete fan,
//! the fiber fan. Root subgroups moving an unstable divisor are found by an
//! exact polytope enumeration in the full character lattice; restricting the
//! characters to the linear part yields the restricted roots, whose
//! negation-closed core is the root system of the reductive stabilizer. The
//! lattice, colors, parabolic, and colored fan are then transported from the
//! toric Levi invariants of the fiber.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cone::{cones_tile_region, Cone, HalfspaceCone};
use crate::demazure::{
    demazure_roots, phi, positive_system, DemazureRoot, Positivity, RootData, ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{annihilator, dual_evaluation, evaluate_against, preimage_lattice, Sublattice};
use crate::levi::{self, ColoredCone, ColoredFan, LeviInvariants};
use crate::matrix::{dot, int, neg_vec, Int, IntMatrix};
use crate::spherical::SphericalData;

// The sublattice of N orthogonal to every spherical root: the linear part
// of the valuation cone.
fn linear_part_lattice(sd: &SphericalData) -> Sublattice {
    let sigmas: Vec<Vec<Int>> = sd.sigma().values().cloned().collect();
    annihilator(&sigmas, sd.rank())
}

fn require_linear_setting(sd: &SphericalData) -> Result<()> {
    sd.validate()?;
    if !sd.fan().is_smooth() {
        return Err(Error::NotSmooth);
    }
    if !sd.fan().is_complete()? {
        return Err(Error::NotComplete);
    }
    Ok(())
}

/// The fan induced on the linear part of the valuation cone: the cones of
/// the input fan lying inside that subspace, rewritten in lattice
/// coordinates of the linear part. For valid complete data this fan is
/// smooth and complete of rank (n - |sigma|).
pub fn fiber_fan(sd: &SphericalData) -> Result<Fan> {
    require_linear_setting(sd)?;
    let lpart = linear_part_lattice(sd);
    let k = lpart.rank();
    let (linear, _) = sd.classify_boundary();

    // A simplicial cone lies in the subspace iff all its rays do, so the
    // kept faces are exactly the name sets drawn from linear rays.
    let kept: Vec<Vec<String>> = sd
        .fan()
        .face_name_sets()
        .into_iter()
        .filter(|names| names.iter().all(|n| linear.contains(n)))
        .collect();
    let maximal: Vec<Vec<String>> = kept
        .iter()
        .filter(|c| {
            !kept
                .iter()
                .any(|d| d.len() > c.len() && c.iter().all(|n| d.contains(n)))
        })
        .cloned()
        .collect();

    let mut rays: Vec<(String, Vec<Int>)> = Vec::new();
    for name in &linear {
        let v = sd.fan().ray_vector(name)?;
        let coords = lpart.coordinates(v).ok_or_else(|| {
            Error::InternalInvariant(format!(
                "linear boundary ray '{name}' has no coordinates in the linear part"
            ))
        })?;
        rays.push((name.clone(), coords));
    }

    let fiber = Fan::new(k, rays, maximal, None)?;
    if !fiber.is_smooth() {
        return Err(Error::InternalInvariant(
            "fiber fan of smooth data is not smooth".into(),
        ));
    }
    if !fiber.is_complete()? {
        return Err(Error::FiberNotComplete);
    }
    Ok(fiber)
}

/// Restricted root data of an embedding with a stable set: for every
/// unstable ray, the characters pairing -1 with it and nonnegatively with
/// every other boundary ray and every color, restricted to the linear part.
#[derive(Clone, Debug)]
pub struct RestrictedRoots {
    /// All restricted roots, sorted, in fiber coordinates.
    pub r_set: Vec<Vec<Int>>,
    /// Negation-closed core of the restricted roots: the root system of the
    /// reductive stabilizer.
    pub phi: Vec<Vec<Int>>,
    /// Positive subsystem of phi; empty until a positivity is applied.
    pub phi_plus: Vec<Vec<Int>>,
    /// Simple roots of the positive subsystem.
    pub psi: Vec<Vec<Int>>,
    /// The stable set the data was computed for.
    pub stable_set: BTreeSet<String>,
    /// Complement of the stable set among the boundary rays.
    pub moved_set: BTreeSet<String>,
    /// For each restricted root, the unstable ray its lifts move.
    pub pivots: BTreeMap<Vec<Int>, String>,
    // One representative lift in the full character lattice per root.
    lifts: BTreeMap<Vec<Int>, Vec<Int>>,
}

impl RestrictedRoots {
    /// Fill `phi_plus` and `psi` for the chosen positivity.
    pub fn apply_positivity(&mut self, positivity: &Positivity) -> Result<()> {
        let (plus, psi) = positive_system(&self.phi, positivity)?;
        self.phi_plus = plus;
        self.psi = psi;
        Ok(())
    }

    /// A lift of the given restricted root to the full character lattice.
    pub fn lift(&self, alpha: &[Int]) -> Option<&Vec<Int>> {
        self.lifts.get(alpha)
    }
}

// Lattice points of the polytope {gamma : <rho(moved), gamma> = -1,
// <rho(D), gamma> >= 0 for every other boundary ray D, <c, gamma> >= 0 for
// every color functional c}. The homogenization cone at one extra
// coordinate classifies the region: rays at positive height are the
// vertices, rays at height zero are recession directions.
fn movable_characters(sd: &SphericalData, moved: &str) -> Result<Vec<Vec<Int>>> {
    let f = sd.fan();
    let rank = sd.rank();
    let pivot = f.ray_vector(moved)?.clone();
    let at_height = |v: &[Int], h: i64| -> Vec<Int> {
        let mut row = v.to_vec();
        row.push(int(h));
        row
    };
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for (name, v) in f.rays() {
        if name != moved {
            rows.push(at_height(v, 0));
        }
    }
    for v in sd.colors().values() {
        rows.push(at_height(v, 0));
    }
    rows.push(at_height(&pivot, 1));
    rows.push(neg_vec(&at_height(&pivot, 1)));
    rows.push(at_height(&vec![Int::zero(); rank], 1));
    let hc = HalfspaceCone::new(rank + 1, rows);

    let mut vertices: Vec<Vec<BigRational>> = Vec::new();
    let mut height_zero = false;
    for ray in hc.rays() {
        let t = &ray[rank];
        if t.is_zero() {
            height_zero = true;
        } else {
            vertices.push(
                ray[..rank]
                    .iter()
                    .map(|c| BigRational::new(c.clone(), t.clone()))
                    .collect(),
            );
        }
    }
    if vertices.is_empty() {
        // Nothing at positive height: the polytope is empty, regardless of
        // any recession directions.
        return Ok(Vec::new());
    }
    if height_zero || !hc.lineality().is_empty() {
        return Err(Error::UnboundedSearch);
    }

    // Exact bounding box of the vertices, then an odometer scan.
    let mut lo = vec![0i64; rank];
    let mut hi = vec![0i64; rank];
    let mut size: u64 = 1;
    for i in 0..rank {
        let mut min = vertices[0][i].clone();
        let mut max = vertices[0][i].clone();
        for v in &vertices[1..] {
            if v[i] < min {
                min = v[i].clone();
            }
            if v[i] > max {
                max = v[i].clone();
            }
        }
        lo[i] = min.floor().to_integer().to_i64().ok_or_else(|| {
            Error::EnumerationTooLarge("polytope vertex exceeds i64".into())
        })?;
        hi[i] = max.ceil().to_integer().to_i64().ok_or_else(|| {
            Error::EnumerationTooLarge("polytope vertex exceeds i64".into())
        })?;
        let width = (hi[i] as i128) - (lo[i] as i128) + 1;
        if width > ENUMERATION_CAP as i128 {
            return Err(Error::EnumerationTooLarge(format!(
                "movable-character box for '{moved}' exceeds the cap"
            )));
        }
        size = size.saturating_mul(width as u64);
        if size > ENUMERATION_CAP {
            return Err(Error::EnumerationTooLarge(format!(
                "movable-character box for '{moved}' exceeds the cap"
            )));
        }
    }

    let mut out: Vec<Vec<Int>> = Vec::new();
    let mut coords = lo.clone();
    loop {
        let gamma: Vec<Int> = coords.iter().map(|&c| int(c)).collect();
        if dot(&pivot, &gamma) == int(-1) {
            let rays_ok = f
                .rays()
                .iter()
                .all(|(name, v)| name == moved || !dot(v, &gamma).is_negative());
            let colors_ok = sd
                .colors()
                .values()
                .all(|v| !dot(v, &gamma).is_negative());
            if rays_ok && colors_ok {
                out.push(gamma);
            }
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == rank {
                out.sort();
                return Ok(out);
            }
            coords[i] += 1;
            if coords[i] <= hi[i] {
                break;
            }
            coords[i] = lo[i];
            i += 1;
        }
    }
}

/// Compute the restricted roots for the given stable set. Every unstable
/// ray must lie on the linear part. Each per-ray search polytope must be
/// bounded: an unbounded region means the boundary and color functionals do
/// not pin down finitely many root subgroups.
pub fn restricted_roots(sd: &SphericalData, stable: &BTreeSet<String>) -> Result<RestrictedRoots> {
    require_linear_setting(sd)?;
    let f = sd.fan();
    for name in stable {
        if !f.rays().contains_key(name) {
            return Err(Error::UnknownRay(name.clone()));
        }
    }
    let (linear, _) = sd.classify_boundary();
    let moved_set: BTreeSet<String> = f
        .rays()
        .keys()
        .filter(|n| !stable.contains(*n))
        .cloned()
        .collect();
    for name in &moved_set {
        if !linear.contains(name) {
            return Err(Error::MovedMustBeLinear(name.clone()));
        }
    }
    let lpart = linear_part_lattice(sd);

    // Collapse lifts by their restriction. The pivot is determined by the
    // restriction: pairings with rays on the linear part factor through it.
    let mut pivots: BTreeMap<Vec<Int>, String> = BTreeMap::new();
    let mut all_lifts: BTreeMap<Vec<Int>, Vec<Vec<Int>>> = BTreeMap::new();
    for name in &moved_set {
        for gamma in movable_characters(sd, name)? {
            let alpha = evaluate_against(&gamma, lpart.basis());
            if alpha.iter().all(|a| a.is_zero()) {
                return Err(Error::InternalInvariant(format!(
                    "movable character {gamma:?} restricts to zero"
                )));
            }
            if let Some(other) = pivots.get(&alpha) {
                if other != name {
                    return Err(Error::InternalInvariant(format!(
                        "restriction {alpha:?} moves both '{other}' and '{name}'"
                    )));
                }
            }
            pivots.insert(alpha.clone(), name.clone());
            all_lifts.entry(alpha).or_default().push(gamma);
        }
    }

    let r_set: Vec<Vec<Int>> = all_lifts.keys().cloned().collect();
    let r_index: BTreeSet<&Vec<Int>> = r_set.iter().collect();
    let phi: Vec<Vec<Int>> = r_set
        .iter()
        .filter(|a| r_index.contains(&neg_vec(a)))
        .cloned()
        .collect();

    // Opposite-pair vanishing: every lift of a root whose negative is also
    // a restricted root must kill the functionals of the nonlinear boundary
    // rays and of the colors. Completeness of the data forces this; the
    // check guards the reduction to the fiber.
    for alpha in &phi {
        for gamma in &all_lifts[alpha] {
            for (name, v) in f.rays() {
                if linear.contains(name) {
                    continue;
                }
                let p = dot(v, gamma);
                if !p.is_zero() {
                    return Err(Error::OppositeLemma(format!(
                        "lift {gamma:?} of {alpha:?} pairs {p} with boundary ray '{name}'"
                    )));
                }
            }
            for (name, v) in sd.colors() {
                let p = dot(v, gamma);
                if !p.is_zero() {
                    return Err(Error::OppositeLemma(format!(
                        "lift {gamma:?} of {alpha:?} pairs {p} with color '{name}'"
                    )));
                }
            }
        }
    }

    let lifts: BTreeMap<Vec<Int>, Vec<Int>> = all_lifts
        .into_iter()
        .map(|(alpha, mut gs)| {
            gs.sort();
            (alpha, gs.swap_remove(0))
        })
        .collect();

    Ok(RestrictedRoots {
        r_set,
        phi,
        phi_plus: Vec::new(),
        psi: Vec::new(),
        stable_set: stable.clone(),
        moved_set,
        pivots,
        lifts,
    })
}

/// Oracle check: the restricted root system embeds into the root system of
/// the fiber fan computed by direct enumeration, with matching moved rays.
/// The containment can be strict, because a fiber root need not admit a lift
/// that is nonnegative on the nonlinear boundary and the colors.
pub fn phi_containment_check(sd: &SphericalData, rr: &RestrictedRoots) -> Result<()> {
    let fiber = fiber_fan(sd)?;
    let fiber_stable: BTreeSet<String> = fiber
        .rays()
        .keys()
        .filter(|n| rr.stable_set.contains(*n))
        .cloned()
        .collect();
    let roots = demazure_roots(&fiber)?;
    let frd = phi(&roots, &fiber_stable, &fiber)?;
    let fiber_phi: BTreeSet<&Vec<Int>> = frd.phi.iter().collect();
    let fiber_moved: BTreeMap<&Vec<Int>, &String> = frd
        .all_roots
        .iter()
        .map(|r| (&r.alpha, &r.moved_ray))
        .collect();
    for alpha in &rr.phi {
        if !fiber_phi.contains(alpha) {
            return Err(Error::PhiContainment(format!(
                "{alpha:?} is not a root of the fiber system"
            )));
        }
        let expected = &rr.pivots[alpha];
        match fiber_moved.get(alpha) {
            Some(name) if *name == expected => {}
            _ => {
                return Err(Error::PhiContainment(format!(
                    "{alpha:?} moves '{expected}' on the embedding but a different ray on the fiber"
                )));
            }
        }
    }
    Ok(())
}

/// Invariants of the reductive stabilizer when unstable rays lie on the
/// linear part, transported from the Levi invariants of the fiber fan.
#[derive(Clone, Debug)]
pub struct LinearLeviInvariants {
    /// Character lattice of the stabilizer torus: the preimage of the fiber
    /// Levi lattice under restriction to the linear part.
    pub lambda_a: Sublattice,
    /// Rays whose divisors stay stable: everything except the rays moved by
    /// the core restricted roots.
    pub boundary_a: BTreeSet<String>,
    /// Colors with functionals in N_A coordinates: the input colors together
    /// with the unstable rays whose fiber trace is a Levi color.
    pub colors_a: BTreeMap<String, Vec<Int>>,
    /// Simple restricted roots whose opposite pivot is not a fiber Levi
    /// color; they contribute simple roots to the parabolic.
    pub pa_simple_roots: Vec<Vec<Int>>,
    /// Simple-root labels of the parabolic inherited from the input data.
    pub pa_sp_labels: Vec<String>,
    // Matrix sending v in N to its N_A coordinates.
    eval: IntMatrix,
    // Fiber data reused by the colored-fan construction.
    fiber: Fan,
    fiber_rd: RootData,
    fiber_inv: LeviInvariants,
    lpart: Sublattice,
}

impl LinearLeviInvariants {
    /// N_A coordinates of a vector of N.
    pub fn to_na(&self, v: &[Int]) -> Vec<Int> {
        self.eval.right_mul_vec(v)
    }

    /// Rank of N_A.
    pub fn na_rank(&self) -> usize {
        self.lambda_a.rank()
    }

    /// The fiber fan the invariants were computed from.
    pub fn fiber(&self) -> &Fan {
        &self.fiber
    }

    /// Names of the unstable rays whose fiber trace is a Levi color.
    pub fn fiber_colors(&self) -> BTreeSet<String> {
        self.fiber_inv.colors_a.keys().cloned().collect()
    }
}

/// Compute the Levi invariants from restricted root data with a positive
/// system applied.
pub fn linear_levi_invariants(
    sd: &SphericalData,
    rr: &RestrictedRoots,
) -> Result<LinearLeviInvariants> {
    if !rr.phi.is_empty() && rr.phi_plus.is_empty() {
        return Err(Error::BadArgument(
            "restricted root data has no positive system; apply a positivity first".into(),
        ));
    }
    let f = sd.fan();
    let fiber = fiber_fan(sd)?;
    let lpart = linear_part_lattice(sd);
    let rank = sd.rank();

    // The fiber fan together with the restricted system is a toric Levi
    // setting; its invariants are computed by the abelian-case machinery.
    let all_roots: Vec<DemazureRoot> = rr
        .phi
        .iter()
        .map(|alpha| DemazureRoot {
            alpha: alpha.clone(),
            moved_ray: rr.pivots[alpha].clone(),
        })
        .collect();
    let fiber_stable: BTreeSet<String> = fiber
        .rays()
        .keys()
        .filter(|n| rr.stable_set.contains(*n))
        .cloned()
        .collect();
    let fiber_rd = RootData {
        all_roots,
        stable_set: fiber_stable,
        moved_set: rr.moved_set.clone(),
        phi: rr.phi.clone(),
        phi_plus: rr.phi_plus.clone(),
        psi: rr.psi.clone(),
    };
    let fiber_inv = levi::levi_invariants(&fiber, &fiber_rd)?;

    let lambda_a = preimage_lattice(lpart.basis(), &fiber_inv.lambda_a);
    let eval = if sd.sigma().is_empty() {
        // Degenerate case, the fiber is the whole fan: use the dual basis
        // of the lifted annihilator of psi, so the coordinates agree
        // literally with the toric Levi computation on the same fan.
        let mut psi_lifts: Vec<Vec<Int>> = Vec::new();
        for alpha in &rr.psi {
            let lift = lpart.basis().solve_right_integer(alpha).ok_or_else(|| {
                Error::InternalInvariant(format!(
                    "restricted root {alpha:?} does not lift to the character lattice"
                ))
            })?;
            psi_lifts.push(lift);
        }
        let w = annihilator(&psi_lifts, rank);
        dual_evaluation(&lambda_a, &w, "Lambda_A against the lifted Psi-annihilator")?
    } else {
        lambda_a.basis().clone()
    };

    let pivot_names: BTreeSet<String> = rr.phi.iter().map(|a| rr.pivots[a].clone()).collect();
    let boundary_a: BTreeSet<String> = f
        .rays()
        .keys()
        .filter(|n| !pivot_names.contains(*n))
        .cloned()
        .collect();

    let mut colors_a: BTreeMap<String, Vec<Int>> = BTreeMap::new();
    for (name, v) in sd.colors() {
        colors_a.insert(name.clone(), eval.right_mul_vec(v));
    }
    for name in fiber_inv.colors_a.keys() {
        colors_a.insert(name.clone(), eval.right_mul_vec(f.ray_vector(name)?));
    }

    Ok(LinearLeviInvariants {
        lambda_a,
        boundary_a,
        colors_a,
        pa_simple_roots: fiber_inv.pa_simple_roots.clone(),
        pa_sp_labels: sd.sp_simple_roots().to_vec(),
        eval,
        fiber,
        fiber_rd,
        fiber_inv,
        lpart,
    })
}

/// The colored fan of the embedding under the reductive stabilizer: for
/// every cone, the convex cone generated by the images of its nonlinear
/// rays and of the intersection of its linear face with the annihilator of
/// psi, carrying the fiber Levi colors of that face. Pairs are
/// deduplicated.
pub fn linear_colored_fan(sd: &SphericalData, inv: &LinearLeviInvariants) -> Result<ColoredFan> {
    let f = sd.fan();
    let k = inv.lpart.rank();
    let t = inv.na_rank();
    let (linear, _) = sd.classify_boundary();
    let psi_perp = annihilator(&inv.fiber_rd.psi, k);
    // N_A coordinates of a fiber vector: unfold to N, then evaluate.
    let fiber_to_na = inv.eval.matmul(&inv.lpart.basis().transpose());

    let mut seen: BTreeMap<(Vec<Vec<Int>>, BTreeSet<String>), ColoredCone> = BTreeMap::new();
    for names in f.face_name_sets() {
        let mut gens: Vec<Vec<Int>> = Vec::new();
        let mut lnames: Vec<String> = Vec::new();
        for n in &names {
            if linear.contains(n) {
                lnames.push(n.clone());
            } else {
                gens.push(inv.to_na(f.ray_vector(n)?));
            }
        }
        let mut fgens: Vec<Vec<Int>> = Vec::new();
        for n in &lnames {
            fgens.push(inv.fiber.ray_vector(n)?.clone());
        }
        let cl = Cone::from_generators(k, &fgens)?;
        let clw = cl.intersect_subspace(&psi_perp)?;
        for g in clw.rays() {
            gens.push(fiber_to_na.right_mul_vec(g));
        }
        let na_cone = Cone::from_generators(t, &gens)?;
        let colors = levi::color_set_for(&lnames, &inv.fiber, &inv.fiber_rd, &inv.fiber_inv)?;
        for color in &colors {
            let functional = &inv.colors_a[color];
            if !na_cone.contains(functional) {
                return Err(Error::InternalInvariant(format!(
                    "functional of color '{color}' falls outside its colored cone"
                )));
            }
        }
        let key = (na_cone.rays().to_vec(), colors.clone());
        seen.entry(key).or_insert(ColoredCone {
            cone: na_cone,
            colors,
        });
    }
    Ok(ColoredFan {
        cones: seen.into_values().collect(),
    })
}

/// Whether the colored-fan cones tile exactly the image of the valuation
/// cone in N_A, i.e. no part of the valuation cone is lost in the
/// transport.
pub fn sigma_preservation_check(
    sd: &SphericalData,
    inv: &LinearLeviInvariants,
    cf: &ColoredFan,
) -> Result<bool> {
    let t = inv.na_rank();
    // The image of {v : <v, sigma> <= 0 for all sigma} is cut out by the
    // Lambda_A coordinates of the negated spherical roots.
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for s in sd.sigma().values() {
        let chi = inv.lambda_a.coordinates(&neg_vec(s)).ok_or_else(|| {
            Error::InternalInvariant(format!(
                "spherical root {s:?} is not a character of Lambda_A"
            ))
        })?;
        rows.push(chi);
    }
    let region = HalfspaceCone::new(t, rows);
    let mut unique: Vec<Cone> = Vec::new();
    for cc in &cf.cones {
        if !unique.contains(&cc.cone) {
            unique.push(cc.cone.clone());
        }
    }
    cones_tile_region(&unique, &region)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levi::{colored_fan, levi_invariants};
    use crate::matrix::ivec;

    fn names(list: &[&str]) -> BTreeSet<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    // Horospherical rank-one embedding: a nonlinear boundary divisor
    // E1 = (-1,0) dual to the spherical root, a linear-part projective line
    // D2, D3 on the second axis, one color, and the left half-plane as
    // valuation cone.
    fn synthetic_s() -> SphericalData {
        let fan = Fan::new(
            2,
            vec![
                ("E1".to_string(), ivec(&[-1, 0])),
                ("D2".to_string(), ivec(&[0, 1])),
                ("D3".to_string(), ivec(&[0, -1])),
            ],
            vec![
                vec!["E1".to_string(), "D2".to_string()],
                vec!["E1".to_string(), "D3".to_string()],
            ],
            Some(vec![ivec(&[-1, 0])]),
        )
        .unwrap();
        SphericalData::new(
            2,
            vec![("s1".to_string(), ivec(&[1, 0]))],
            vec![("Z1".to_string(), ivec(&[1, 0]))],
            vec!["alpha1".to_string()],
            fan,
        )
        .unwrap()
    }

    // Rank-one wonderful shape: a single nonlinear ray closing the
    // half-line valuation cone, linear part zero.
    fn rank_one_wonderful() -> SphericalData {
        let fan = Fan::new(
            1,
            vec![("E".to_string(), ivec(&[-1]))],
            vec![vec!["E".to_string()]],
            Some(vec![ivec(&[-1])]),
        )
        .unwrap();
        SphericalData::new(
            1,
            vec![("s1".to_string(), ivec(&[1]))],
            Vec::new(),
            Vec::new(),
            fan,
        )
        .unwrap()
    }

    fn toric_data(f: &Fan) -> SphericalData {
        SphericalData::new(f.ambient_rank(), Vec::new(), Vec::new(), Vec::new(), f.clone())
            .unwrap()
    }

    fn restricted(sd: &SphericalData, stable: &[&str]) -> RestrictedRoots {
        let mut rr = restricted_roots(sd, &names(stable)).unwrap();
        rr.apply_positivity(&Positivity::Lex).unwrap();
        rr
    }

    #[test]
    fn fiber_of_the_synthetic_embedding_is_a_projective_line() {
        let sd = synthetic_s();
        let fiber = fiber_fan(&sd).unwrap();
        assert_eq!(fiber.ambient_rank(), 1);
        assert_eq!(fiber.ray_vector("D2").unwrap(), &ivec(&[1]));
        assert_eq!(fiber.ray_vector("D3").unwrap(), &ivec(&[-1]));
        assert!(fiber.is_smooth());
        assert!(fiber.is_complete().unwrap());

        // Empty sigma: the fiber is the whole fan in identity coordinates.
        let p2 = crate::generate::projective_space(2);
        let whole = fiber_fan(&toric_data(&p2)).unwrap();
        assert_eq!(whole.rays(), p2.rays());
        assert_eq!(whole.face_name_sets(), p2.face_name_sets());
    }

    #[test]
    fn restricted_roots_of_the_synthetic_embedding() {
        let sd = synthetic_s();
        let rr = restricted(&sd, &["E1"]);
        assert_eq!(rr.r_set, vec![ivec(&[-1]), ivec(&[1])]);
        assert_eq!(rr.phi, rr.r_set);
        assert_eq!(rr.phi_plus, vec![ivec(&[1])]);
        assert_eq!(rr.psi, vec![ivec(&[1])]);
        assert_eq!(rr.pivots[&ivec(&[-1])], "D2");
        assert_eq!(rr.pivots[&ivec(&[1])], "D3");
        assert_eq!(rr.lift(&ivec(&[1])), Some(&ivec(&[0, 1])));
        assert_eq!(rr.lift(&ivec(&[-1])), Some(&ivec(&[0, -1])));
        assert_eq!(rr.moved_set, names(&["D2", "D3"]));
    }

    #[test]
    fn unstable_nonlinear_ray_is_rejected() {
        let sd = synthetic_s();
        let err = restricted_roots(&sd, &names(&["D2", "D3"])).unwrap_err();
        assert!(matches!(err, Error::MovedMustBeLinear(n) if n == "E1"));
        let err = restricted_roots(&sd, &names(&["NOPE"])).unwrap_err();
        assert!(matches!(err, Error::UnknownRay(n) if n == "NOPE"));
    }

    #[test]
    fn missing_colors_make_the_search_unbounded() {
        let base = synthetic_s();
        let colorless = SphericalData::new(
            2,
            vec![("s1".to_string(), ivec(&[1, 0]))],
            Vec::new(),
            Vec::new(),
            base.fan().clone(),
        )
        .unwrap();
        let err = restricted_roots(&colorless, &names(&["E1"])).unwrap_err();
        assert!(matches!(err, Error::UnboundedSearch));
    }

    #[test]
    fn full_stable_set_has_no_restricted_roots() {
        let sd = synthetic_s();
        let rr = restricted(&sd, &["E1", "D2", "D3"]);
        assert!(rr.r_set.is_empty());
        assert!(rr.phi.is_empty());

        let inv = linear_levi_invariants(&sd, &rr).unwrap();
        assert_eq!(inv.na_rank(), 2);
        assert_eq!(
            inv.lambda_a.basis_rows(),
            vec![ivec(&[1, 0]), ivec(&[0, 1])]
        );
        assert_eq!(inv.boundary_a, names(&["E1", "D2", "D3"]));
        assert_eq!(inv.colors_a[&"Z1".to_string()], ivec(&[1, 0]));
        assert!(inv.pa_simple_roots.is_empty());
        assert_eq!(inv.pa_sp_labels, vec!["alpha1".to_string()]);

        // Nothing is contracted: the colored fan is the original fan
        // without colors, and the valuation cone is preserved.
        let cf = linear_colored_fan(&sd, &inv).unwrap();
        assert_eq!(cf.cones.len(), 6);
        assert!(cf.cones.iter().all(|cc| cc.colors.is_empty()));
        let twodim: Vec<&ColoredCone> =
            cf.cones.iter().filter(|cc| cc.cone.dim() == 2).collect();
        assert_eq!(twodim.len(), 2);
        assert!(sigma_preservation_check(&sd, &inv, &cf).unwrap());
    }

    #[test]
    fn golden_invariants_of_the_synthetic_embedding() {
        let sd = synthetic_s();
        let rr = restricted(&sd, &["E1"]);
        let inv = linear_levi_invariants(&sd, &rr).unwrap();
        assert_eq!(inv.na_rank(), 1);
        assert_eq!(inv.lambda_a.basis_rows(), vec![ivec(&[1, 0])]);
        assert_eq!(inv.boundary_a, names(&["E1"]));
        assert_eq!(inv.colors_a.len(), 2);
        assert_eq!(inv.colors_a[&"Z1".to_string()], ivec(&[1]));
        assert_eq!(inv.colors_a[&"D2".to_string()], ivec(&[0]));
        assert_eq!(inv.fiber_colors(), names(&["D2"]));
        assert!(inv.pa_simple_roots.is_empty());
        assert_eq!(inv.pa_sp_labels, vec!["alpha1".to_string()]);
        assert_eq!(inv.to_na(&ivec(&[-1, 0])), ivec(&[-1]));
    }

    #[test]
    fn golden_colored_fan_and_preservation() {
        let sd = synthetic_s();
        let rr = restricted(&sd, &["E1"]);
        let inv = linear_levi_invariants(&sd, &rr).unwrap();
        let cf = linear_colored_fan(&sd, &inv).unwrap();
        let expected = ColoredFan {
            cones: vec![
                ColoredCone {
                    cone: Cone::zero(1),
                    colors: BTreeSet::new(),
                },
                ColoredCone {
                    cone: Cone::from_generators(1, &[ivec(&[-1])]).unwrap(),
                    colors: BTreeSet::new(),
                },
            ],
        };
        assert_eq!(cf, expected);
        assert!(sigma_preservation_check(&sd, &inv, &cf).unwrap());

        // Dropping the ray cone loses the negative half-line of the image.
        let truncated = ColoredFan {
            cones: vec![expected.cones[0].clone()],
        };
        assert!(!sigma_preservation_check(&sd, &inv, &truncated).unwrap());
    }

    #[test]
    fn phi_containment_on_the_synthetic_embedding() {
        let sd = synthetic_s();
        let rr = restricted(&sd, &["E1"]);
        phi_containment_check(&sd, &rr).unwrap();
    }

    #[test]
    fn strict_containment_with_a_blocking_color() {
        let base = synthetic_s();
        let sd = SphericalData::new(
            2,
            vec![("s1".to_string(), ivec(&[1, 0]))],
            vec![
                ("Z1".to_string(), ivec(&[1, 0])),
                ("Z2".to_string(), ivec(&[1, -1])),
            ],
            vec!["alpha1".to_string()],
            base.fan().clone(),
        )
        .unwrap();
        let rr = restricted(&sd, &["E1"]);
        // The second color blocks the lift over D3, so only one restricted
        // root survives and the core is empty.
        assert_eq!(rr.r_set, vec![ivec(&[-1])]);
        assert!(rr.phi.is_empty());
        phi_containment_check(&sd, &rr).unwrap();

        let fiber = fiber_fan(&sd).unwrap();
        let froots = demazure_roots(&fiber).unwrap();
        let frd = phi(&froots, &BTreeSet::new(), &fiber).unwrap();
        assert_eq!(frd.phi.len(), 2);
    }

    #[test]
    fn degenerate_data_matches_the_toric_pipeline() {
        let cases: Vec<(Fan, Vec<&str>)> = vec![
            (crate::generate::projective_space(2), vec!["X3"]),
            (crate::generate::projective_space(2), vec![]),
            (crate::generate::projective_space(2), vec!["X1", "X2"]),
            (crate::generate::hirzebruch(1), vec!["H1", "H3"]),
            (crate::generate::hirzebruch(1), vec![]),
        ];
        for (f, stable) in cases {
            let sd = toric_data(&f);
            let rr = restricted(&sd, &stable);

            let roots = demazure_roots(&f).unwrap();
            let mut rd = phi(&roots, &names(&stable), &f).unwrap();
            rd.apply_positivity(&Positivity::Lex).unwrap();
            assert_eq!(rr.phi, rd.phi);
            assert_eq!(rr.psi, rd.psi);

            let inv_l = linear_levi_invariants(&sd, &rr).unwrap();
            let inv_t = levi_invariants(&f, &rd).unwrap();
            assert_eq!(inv_l.lambda_a, inv_t.lambda_a);
            assert_eq!(inv_l.boundary_a, inv_t.boundary_a);
            assert_eq!(inv_l.colors_a, inv_t.colors_a);
            assert_eq!(inv_l.pa_simple_roots, inv_t.pa_simple_roots);

            let cf_l = linear_colored_fan(&sd, &inv_l).unwrap();
            let cf_t = colored_fan(&f, &rd, &inv_t).unwrap();
            assert_eq!(cf_l, cf_t);
            assert!(sigma_preservation_check(&sd, &inv_l, &cf_l).unwrap());
        }
    }

    #[test]
    fn wonderful_rank_one_point_fiber() {
        let sd = rank_one_wonderful();
        let fiber = fiber_fan(&sd).unwrap();
        assert_eq!(fiber.ambient_rank(), 0);
        assert!(fiber.rays().is_empty());

        let rr = restricted(&sd, &["E"]);
        assert!(rr.r_set.is_empty());
        let inv = linear_levi_invariants(&sd, &rr).unwrap();
        assert_eq!(inv.na_rank(), 1);
        assert_eq!(inv.lambda_a.basis_rows(), vec![ivec(&[1])]);
        assert_eq!(inv.boundary_a, names(&["E"]));
        assert!(inv.colors_a.is_empty());

        let cf = linear_colored_fan(&sd, &inv).unwrap();
        assert_eq!(cf.cones.len(), 2);
        assert!(sigma_preservation_check(&sd, &inv, &cf).unwrap());
    }

    #[test]
    fn positivity_must_be_applied_before_invariants() {
        let sd = synthetic_s();
        let rr = restricted_roots(&sd, &names(&["E1"])).unwrap();
        let err = linear_levi_invariants(&sd, &rr).unwrap_err();
        assert!(matches!(err, Error::BadArgument(_)));
    }
}
