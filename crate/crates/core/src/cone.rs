//! Strictly convex rational polyhedral cones with exact generator/facet
//! double descriptions, face enumeration, and subspace intersection.
//!
//! The double description runs in a pointed complement of the lineality
//! space, so the combinatorial adjacency test is always applied to a pointed
//! cone with an irredundant ray list, where it is exact.

use crate::error::{Error, Result};
use crate::lattice::{annihilator, Sublattice};
use crate::matrix::{
    dot, is_zero_vec, neg_vec, primitive, scale_vec, sub_vec, Int, IntMatrix,
};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Rays and lineality basis of {x : <x, c> >= 0 for all c in constraints}.
///
/// Rays are primitive, sorted, and extreme modulo lineality; the lineality
/// basis is HNF-canonical. Zero constraints are ignored.
pub fn dual_description(
    constraints: &[Vec<Int>],
    dim: usize,
) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let cs: Vec<Vec<Int>> = constraints
        .iter()
        .filter(|c| !is_zero_vec(c))
        .cloned()
        .collect();
    let lineality = annihilator(&cs, dim);
    if cs.is_empty() || dim == 0 {
        return (Vec::new(), lineality.basis_rows());
    }
    // Work in a complement W of the lineality: pointed by construction.
    let w = annihilator(&lineality.basis_rows(), dim);
    let wdim = w.rank();
    if wdim == 0 {
        return (Vec::new(), lineality.basis_rows());
    }
    let b = w.basis();
    // Local constraint c' with <y, c'> = <y.B, c>: c' = B.c.
    let local: Vec<Vec<Int>> = cs.iter().map(|c| b.right_mul_vec(c)).collect();

    // Seed with wdim linearly independent constraints: their common
    // "identity" solutions form a simplicial cone containing the region.
    let mut seed: Vec<usize> = Vec::new();
    for (i, c) in local.iter().enumerate() {
        let mut test: Vec<Vec<Int>> = seed.iter().map(|&k| local[k].clone()).collect();
        test.push(c.clone());
        if IntMatrix::from_rows(test.clone(), wdim).rank() > seed.len() {
            seed.push(i);
        }
        if seed.len() == wdim {
            break;
        }
    }
    // Lineality was removed, so the local constraints have full rank.
    assert_eq!(seed.len(), wdim, "constraint rank defect after lineality split");

    // Initial rays: r_j with <c_i, r_j> = delta_ij for i, j in the seed.
    let seed_matrix = IntMatrix::from_rows(seed.iter().map(|&k| local[k].clone()).collect(), wdim);
    let mut rays: Vec<(Vec<Int>, BTreeSet<usize>)> = Vec::new();
    for (j, _) in seed.iter().enumerate() {
        let mut e = vec![Int::zero(); wdim];
        e[j] = Int::from(1);
        let sol = seed_matrix
            .solve_right_rational(&e)
            .expect("seed constraints are independent");
        // Clear denominators to a primitive integer ray.
        let denom_lcm = sol
            .iter()
            .fold(Int::from(1), |acc, q| num_integer::lcm(acc, q.denom().clone()));
        let ray: Vec<Int> = sol
            .iter()
            .map(|q| q.numer() * (&denom_lcm / q.denom()))
            .collect();
        let ray = primitive(&ray);
        let zset: BTreeSet<usize> = seed
            .iter()
            .copied()
            .filter(|&i| dot(&local[i], &ray).is_zero())
            .collect();
        rays.push((ray, zset));
    }

    // Insert every remaining constraint incrementally.
    for (ci, c) in local.iter().enumerate() {
        if seed.contains(&ci) {
            continue;
        }
        let evals: Vec<Int> = rays.iter().map(|(r, _)| dot(r, c)).collect();
        let mut next: Vec<(Vec<Int>, BTreeSet<usize>)> = Vec::new();
        for (i, (r, z)) in rays.iter().enumerate() {
            if evals[i].is_negative() {
                continue;
            }
            let mut z2 = z.clone();
            if evals[i].is_zero() {
                z2.insert(ci);
            }
            next.push((r.clone(), z2));
        }
        for i in 0..rays.len() {
            if !evals[i].is_positive() {
                continue;
            }
            for j in 0..rays.len() {
                if !evals[j].is_negative() {
                    continue;
                }
                // Combinatorial adjacency: no third ray vanishes on the
                // common zero set.
                let common: BTreeSet<usize> = rays[i]
                    .1
                    .intersection(&rays[j].1)
                    .copied()
                    .collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, (_, zk))| k == i || k == j || !common.is_subset(zk));
                if !adjacent {
                    continue;
                }
                // <v, c> = 0 and v is a positive combination of r_i, r_j.
                let v = primitive(&sub_vec(
                    &scale_vec(&evals[i], &rays[j].0),
                    &scale_vec(&evals[j], &rays[i].0),
                ));
                let mut z2 = common;
                z2.insert(ci);
                if !next.iter().any(|(wv, _)| wv == &v) {
                    next.push((v, z2));
                }
            }
        }
        rays = next;
    }

    let mut out: Vec<Vec<Int>> = rays
        .into_iter()
        .map(|(y, _)| primitive(&b.left_mul_vec(&y)))
        .collect();
    out.sort();
    out.dedup();
    (out, lineality.basis_rows())
}

/// A strictly convex rational polyhedral cone.
///
/// Stored canonically: `rays` are the primitive extreme generators, sorted;
/// `facets_local` are primitive facet normals in coordinates of the HNF
/// basis of the saturated span. Two cones are equal iff their ray sets are.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vec<Int>>,
    span: Sublattice,
    facets_local: Vec<Vec<Int>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.rays == other.rays
    }
}
impl Eq for Cone {}

impl Cone {
    /// The zero cone.
    pub fn zero(ambient_rank: usize) -> Cone {
        Cone {
            ambient_rank,
            rays: Vec::new(),
            span: Sublattice::zero(ambient_rank),
            facets_local: Vec::new(),
        }
    }

    /// Canonical cone on the given generators. Rejects zero vectors and
    /// generator sets containing a line.
    pub fn from_generators(ambient_rank: usize, gens: &[Vec<Int>]) -> Result<Cone> {
        let mut prim: Vec<Vec<Int>> = Vec::new();
        for g in gens {
            assert_eq!(g.len(), ambient_rank, "generator length != ambient rank");
            if is_zero_vec(g) {
                return Err(Error::ZeroGenerator);
            }
            let p = primitive(g);
            if !prim.contains(&p) {
                prim.push(p);
            }
        }
        if prim.is_empty() {
            return Ok(Cone::zero(ambient_rank));
        }
        let span = Sublattice::from_generators(ambient_rank, &prim).saturation();
        let d = span.rank();
        let local: Vec<Vec<Int>> = prim
            .iter()
            .map(|g| {
                span.coordinates(g)
                    .expect("generator lies in its own saturated span")
            })
            .collect();
        // Facets are the extreme rays of the dual cone in span coordinates.
        let (facets, dual_lin) = dual_description(&local, d);
        assert!(dual_lin.is_empty(), "span-local generators span the space");
        if IntMatrix::from_rows(facets.clone(), d).rank() < d {
            return Err(Error::NotStrictlyConvex);
        }
        // Keep the extreme generators only: the facets vanishing at an
        // extreme ray span a hyperplane of the span.
        let mut rays: Vec<Vec<Int>> = Vec::new();
        for (g, l) in prim.iter().zip(&local) {
            let vanishing: Vec<Vec<Int>> = facets
                .iter()
                .filter(|f| dot(f, l).is_zero())
                .cloned()
                .collect();
            if IntMatrix::from_rows(vanishing, d).rank() == d.saturating_sub(1) {
                rays.push(g.clone());
            }
        }
        rays.sort();
        rays.dedup();
        Ok(Cone {
            ambient_rank,
            rays,
            span,
            facets_local: facets,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    /// Primitive extreme generators, sorted.
    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn span(&self) -> &Sublattice {
        &self.span
    }

    fn local_coords_rational(&self, v: &[Int]) -> Option<Vec<BigRational>> {
        self.span.basis().solve_left_rational(v)
    }

    /// Membership of an integer vector (as a point of the rational cone).
    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        if is_zero_vec(v) {
            return true;
        }
        let Some(y) = self.local_coords_rational(v) else {
            return false;
        };
        self.facets_local.iter().all(|f| {
            let p: BigRational = f
                .iter()
                .zip(&y)
                .map(|(fi, yi)| BigRational::from_integer(fi.clone()) * yi)
                .sum();
            !p.is_negative()
        })
    }

    /// True iff every ray of `other` lies in this cone.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// Strict membership in the relative interior.
    pub fn relative_interior_contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        if self.dim() == 0 {
            return is_zero_vec(v);
        }
        let Some(y) = self.local_coords_rational(v) else {
            return false;
        };
        self.facets_local.iter().all(|f| {
            let p: BigRational = f
                .iter()
                .zip(&y)
                .map(|(fi, yi)| BigRational::from_integer(fi.clone()) * yi)
                .sum();
            p.is_positive()
        })
    }

    /// Facet normals lifted to ambient coordinates plus span equations,
    /// together an H-description of the cone.
    pub fn ambient_inequalities(&self) -> Vec<Vec<Int>> {
        let mut out = Vec::new();
        let b = self.span.basis();
        for f in &self.facets_local {
            let lifted = b
                .solve_right_integer(f)
                .expect("saturated span basis admits integral lifts");
            out.push(lifted);
        }
        for eq in self.span.annihilator().basis_rows() {
            out.push(eq.clone());
            out.push(neg_vec(&eq));
        }
        out
    }

    /// Ray index sets of each facet.
    pub fn facet_ray_sets(&self) -> Vec<Vec<usize>> {
        let local: Vec<Vec<Int>> = self
            .rays
            .iter()
            .map(|r| self.span.coordinates(r).expect("ray lies in span"))
            .collect();
        self.facets_local
            .iter()
            .map(|f| {
                (0..self.rays.len())
                    .filter(|&i| dot(f, &local[i]).is_zero())
                    .collect()
            })
            .collect()
    }

    /// All faces, including the zero cone and the cone itself, sorted by
    /// (dimension, rays).
    pub fn faces(&self) -> Vec<Cone> {
        // Closure of ray-index sets under single-facet refinement.
        let local: Vec<Vec<Int>> = self
            .rays
            .iter()
            .map(|r| self.span.coordinates(r).expect("ray lies in span"))
            .collect();
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut known: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        known.insert(all.clone());
        let mut queue = vec![all];
        while let Some(set) = queue.pop() {
            for f in &self.facets_local {
                let refined: BTreeSet<usize> = set
                    .iter()
                    .copied()
                    .filter(|&i| dot(f, &local[i]).is_zero())
                    .collect();
                if !known.contains(&refined) {
                    known.insert(refined.clone());
                    queue.push(refined);
                }
            }
        }
        // The zero cone is the minimal face of every strictly convex cone.
        known.insert(BTreeSet::new());
        let mut faces: Vec<Cone> = known
            .into_iter()
            .map(|set| {
                let gens: Vec<Vec<Int>> = set.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_generators(self.ambient_rank, &gens)
                    .expect("face of a strictly convex cone is strictly convex")
            })
            .collect();
        faces.sort_by(|a, b| (a.dim(), a.rays()).cmp(&(b.dim(), b.rays())));
        faces.dedup();
        faces
    }

    /// True iff self is a face of c (self = c meets a supporting hyperplane).
    pub fn is_face_of(&self, c: &Cone) -> bool {
        assert_eq!(self.ambient_rank, c.ambient_rank);
        if !c.contains_cone(self) {
            return false;
        }
        // Minimal face of c containing self, via the facets vanishing on it.
        let local: Vec<Vec<Int>> = c
            .rays
            .iter()
            .map(|r| c.span.coordinates(r).expect("ray lies in span"))
            .collect();
        let self_local: Vec<Vec<Int>> = self
            .rays
            .iter()
            .map(|r| {
                c.span
                    .coordinates(r)
                    .expect("contained ray lies in the span")
            })
            .collect();
        let vanishing: Vec<&Vec<Int>> = c
            .facets_local
            .iter()
            .filter(|f| self_local.iter().all(|l| dot(f, l).is_zero()))
            .collect();
        let mut min_face: Vec<Vec<Int>> = (0..c.rays.len())
            .filter(|&i| vanishing.iter().all(|f| dot(f, &local[i]).is_zero()))
            .map(|i| c.rays[i].clone())
            .collect();
        min_face.sort();
        min_face == self.rays
    }

    /// Exact intersection of two strictly convex cones.
    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut ineqs = self.ambient_inequalities();
        ineqs.extend(other.ambient_inequalities());
        let (rays, lin) = dual_description(&ineqs, self.ambient_rank);
        if !lin.is_empty() {
            return Err(Error::InternalInvariant(
                "intersection of strictly convex cones contains a line".into(),
            ));
        }
        Cone::from_generators(self.ambient_rank, &rays)
    }

    /// The cone self ∩ (w ⊗ Q), in ambient coordinates.
    pub fn intersect_subspace(&self, w: &Sublattice) -> Result<Cone> {
        assert_eq!(self.ambient_rank, w.ambient_rank());
        let mut ineqs = self.ambient_inequalities();
        for eq in w.annihilator().basis_rows() {
            ineqs.push(eq.clone());
            ineqs.push(neg_vec(&eq));
        }
        let (rays, lin) = dual_description(&ineqs, self.ambient_rank);
        if !lin.is_empty() {
            return Err(Error::InternalInvariant(
                "subspace slice of a strictly convex cone contains a line".into(),
            ));
        }
        Cone::from_generators(self.ambient_rank, &rays)
    }
}

/// A (possibly non-pointed) region {v : <v, chi> >= 0 for all chi}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceCone {
    ambient_rank: usize,
    inequalities: Vec<Vec<Int>>,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
}

impl HalfspaceCone {
    pub fn new(ambient_rank: usize, inequalities: Vec<Vec<Int>>) -> HalfspaceCone {
        let mut norm: Vec<Vec<Int>> = inequalities
            .iter()
            .filter(|c| !is_zero_vec(c))
            .map(|c| primitive(c))
            .collect();
        norm.sort();
        norm.dedup();
        let (rays, lineality) = dual_description(&norm, ambient_rank);
        HalfspaceCone {
            ambient_rank,
            inequalities: norm,
            rays,
            lineality,
        }
    }

    pub fn full_space(ambient_rank: usize) -> HalfspaceCone {
        HalfspaceCone::new(ambient_rank, Vec::new())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn inequalities(&self) -> &[Vec<Int>] {
        &self.inequalities
    }

    pub fn is_full_space(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// Pointed-part rays (extreme modulo lineality).
    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    /// HNF basis of the linear part.
    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn dim(&self) -> usize {
        let mut rows = self.rays.clone();
        rows.extend(self.lineality.clone());
        IntMatrix::from_rows(rows, self.ambient_rank).rank()
    }

    /// Conic generator list: rays plus +-lineality basis.
    pub fn conic_generators(&self) -> Vec<Vec<Int>> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(neg_vec(l));
        }
        out
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        self.inequalities.iter().all(|c| !dot(v, c).is_negative())
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        c.rays().iter().all(|r| self.contains(r))
    }

    /// Inequalities that do not vanish identically on the region.
    pub fn non_implicit_inequalities(&self) -> Vec<Vec<Int>> {
        self.inequalities
            .iter()
            .filter(|chi| {
                self.rays.iter().any(|r| !dot(r, chi).is_zero())
                    || self.lineality.iter().any(|l| !dot(l, chi).is_zero())
            })
            .cloned()
            .collect()
    }

    /// True iff every generator of c lies on a genuine boundary hyperplane.
    pub fn cone_on_boundary(&self, c: &Cone) -> bool {
        self.non_implicit_inequalities()
            .iter()
            .any(|chi| c.rays().iter().all(|r| dot(r, chi).is_zero()))
    }

    /// Region equality via mutual containment of conic generators.
    pub fn region_eq(&self, other: &HalfspaceCone) -> bool {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        self.conic_generators().iter().all(|g| other.contains(g))
            && other.conic_generators().iter().all(|g| self.contains(g))
    }
}

/// True iff the full-dimensional members of `cones` tile `region`: pairwise
/// disjoint relative interiors and union equal to the region. Decided
/// exactly by the shared-facet criterion with boundary exemption.
pub fn cones_tile_region(cones: &[Cone], region: &HalfspaceCone) -> Result<bool> {
    let d = region.dim();
    for c in cones {
        if !region.contains_cone(c) {
            return Ok(false);
        }
    }
    if d == 0 {
        return Ok(!cones.is_empty());
    }
    let full: Vec<&Cone> = cones.iter().filter(|c| c.dim() == d).collect();
    if full.is_empty() {
        return Ok(false);
    }
    // Pairwise relative-interior disjointness of full-dimensional members.
    for i in 0..full.len() {
        for j in i + 1..full.len() {
            if full[i] == full[j] {
                continue;
            }
            if full[i].intersect(full[j])?.dim() == d {
                return Ok(false);
            }
        }
    }
    // Every facet is either on the region boundary or shared.
    for (idx, c) in full.iter().enumerate() {
        for facet_rays in c.facet_ray_sets() {
            let fgens: Vec<Vec<Int>> = facet_rays.iter().map(|&i| c.rays()[i].clone()).collect();
            let facet = Cone::from_generators(region.ambient_rank(), &fgens)?;
            if facet.dim() + 1 != d {
                continue; // facet of a lower-dim face structure; not a wall
            }
            if region.cone_on_boundary(&facet) {
                continue;
            }
            let shared = full
                .iter()
                .enumerate()
                .any(|(k, other)| k != idx && other.contains_cone(&facet) && **other != **c);
            if !shared {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
