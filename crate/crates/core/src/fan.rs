//! Fans of strictly convex simplicial cones on named rays, with validation,
//! smoothness and completeness tests, subspace restriction, joins, and the
//! orbit-closure poset.

use crate::cone::{cones_tile_region, Cone, HalfspaceCone};
use crate::error::{Error, Result};
use crate::lattice::Sublattice;
use crate::matrix::{add_vec, is_zero_vec, primitive, Int, IntMatrix};
use indexmap::IndexMap;
use std::collections::BTreeSet;
use std::fmt;

/// A fan given by named primitive rays and a list of cones (each a set of
/// ray names), together with an optional support region.
///
/// The geometric fan is the face closure of the listed cones. Cones are kept
/// sorted by (size, names) with names sorted inside each cone, so equal fans
/// have equal representations.
#[derive(Clone, Debug)]
pub struct Fan {
    ambient_rank: usize,
    rays: IndexMap<String, Vec<Int>>,
    max_cones: Vec<Vec<String>>,
    support: Option<HalfspaceCone>,
}

/// One violation found by [`Fan::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroRay { name: String },
    NonPrimitiveRay { name: String },
    DuplicateRayVector { first: String, second: String },
    UnusedRay { name: String },
    NonSimplicialCone { cone: Vec<String> },
    ConeOutsideSupport { cone: Vec<String> },
    RelintOverlap {
        first: Vec<String>,
        second: Vec<String>,
        witness: Vec<Int>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRay { name } => write!(f, "ray '{name}' is the zero vector"),
            Violation::NonPrimitiveRay { name } => {
                write!(f, "ray '{name}' is not primitive")
            }
            Violation::DuplicateRayVector { first, second } => {
                write!(f, "rays '{first}' and '{second}' have the same vector")
            }
            Violation::UnusedRay { name } => {
                write!(f, "ray '{name}' does not appear in any cone")
            }
            Violation::NonSimplicialCone { cone } => {
                write!(f, "cone {cone:?} has linearly dependent rays")
            }
            Violation::ConeOutsideSupport { cone } => {
                write!(f, "cone {cone:?} is not contained in the support region")
            }
            Violation::RelintOverlap {
                first,
                second,
                witness,
            } => write!(
                f,
                "cones {first:?} and {second:?} overlap beyond a common face; witness {witness:?}"
            ),
        }
    }
}

/// Outcome of [`Fan::validate`]: the (possibly empty) list of violations.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "- {v}")?;
            }
            Ok(())
        }
    }
}

/// Poset of fan faces in orbit-closure order.
///
/// Elements are the name sets of all faces, sorted by (dimension, names).
/// An edge (i, j) means element i is a facet-codimension face of element j;
/// in orbit terms the orbit of cone j lies in the closure of the orbit of
/// cone i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoset {
    pub elements: Vec<Vec<String>>,
    pub edges: Vec<(usize, usize)>,
}

impl OrbitPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of the unique minimal cone (open orbit), when present.
    pub fn open_orbit(&self) -> Option<usize> {
        self.elements.iter().position(|e| e.is_empty())
    }
}

impl Fan {
    /// Build a fan, checking shape only (validation is separate).
    pub fn new(
        ambient_rank: usize,
        rays: Vec<(String, Vec<Int>)>,
        cones: Vec<Vec<String>>,
        support_inequalities: Option<Vec<Vec<Int>>>,
    ) -> Result<Fan> {
        let mut ray_map: IndexMap<String, Vec<Int>> = IndexMap::new();
        for (name, v) in rays {
            if v.len() != ambient_rank {
                return Err(Error::WrongVectorLength {
                    name,
                    got: v.len(),
                    expected: ambient_rank,
                });
            }
            if ray_map.insert(name.clone(), v).is_some() {
                return Err(Error::DuplicateRayName(name));
            }
        }
        let mut max_cones: Vec<Vec<String>> = Vec::new();
        for cone in cones {
            let mut names = cone;
            for n in &names {
                if !ray_map.contains_key(n) {
                    return Err(Error::UnknownRay(n.clone()));
                }
            }
            names.sort();
            if names.windows(2).any(|w| w[0] == w[1]) {
                let dup = names
                    .windows(2)
                    .find(|w| w[0] == w[1])
                    .map(|w| w[0].clone())
                    .unwrap();
                return Err(Error::RepeatedRayInCone(dup));
            }
            if max_cones.contains(&names) {
                return Err(Error::DuplicateCone(names));
            }
            max_cones.push(names);
        }
        max_cones.sort_by(|a, b| (a.len(), a.clone()).cmp(&(b.len(), b.clone())));
        let support = match support_inequalities {
            None => None,
            Some(ineqs) => {
                for chi in &ineqs {
                    if chi.len() != ambient_rank {
                        return Err(Error::WrongVectorLength {
                            name: "support inequality".into(),
                            got: chi.len(),
                            expected: ambient_rank,
                        });
                    }
                }
                Some(HalfspaceCone::new(ambient_rank, ineqs))
            }
        };
        Ok(Fan {
            ambient_rank,
            rays: ray_map,
            max_cones,
            support,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Named rays in input order.
    pub fn rays(&self) -> &IndexMap<String, Vec<Int>> {
        &self.rays
    }

    pub fn ray_vector(&self, name: &str) -> Result<&Vec<Int>> {
        self.rays
            .get(name)
            .ok_or_else(|| Error::UnknownRay(name.to_string()))
    }

    /// Listed cones, canonically sorted.
    pub fn max_cones(&self) -> &[Vec<String>] {
        &self.max_cones
    }

    pub fn support(&self) -> Option<&HalfspaceCone> {
        self.support.as_ref()
    }

    /// The support region, defaulting to the full space.
    pub fn support_region(&self) -> HalfspaceCone {
        self.support
            .clone()
            .unwrap_or_else(|| HalfspaceCone::full_space(self.ambient_rank))
    }

    /// The geometric cone on the named rays.
    pub fn cone_from_names(&self, names: &[String]) -> Result<Cone> {
        let gens: Result<Vec<Vec<Int>>> =
            names.iter().map(|n| self.ray_vector(n).cloned()).collect();
        Cone::from_generators(self.ambient_rank, &gens?)
    }

    /// Listed cones as geometric cones, in listing order.
    pub fn max_cone_objects(&self) -> Result<Vec<Cone>> {
        self.max_cones
            .iter()
            .map(|names| self.cone_from_names(names))
            .collect()
    }

    /// All face name sets of the fan (subsets of listed simplicial cones).
    pub fn face_name_sets(&self) -> Vec<Vec<String>> {
        let mut faces: BTreeSet<Vec<String>> = BTreeSet::new();
        for names in &self.max_cones {
            // Subsets of a sorted list, in sorted form.
            let n = names.len();
            for mask in 0u32..(1 << n) {
                let subset: Vec<String> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| names[i].clone())
                    .collect();
                faces.insert(subset);
            }
        }
        let mut out: Vec<Vec<String>> = faces.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a.clone()).cmp(&(b.len(), b.clone())));
        out
    }

    /// Check every fan axiom and report all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let names: Vec<&String> = self.rays.keys().collect();
        for (name, v) in &self.rays {
            if is_zero_vec(v) {
                violations.push(Violation::ZeroRay { name: name.clone() });
            } else if &primitive(v) != v {
                violations.push(Violation::NonPrimitiveRay { name: name.clone() });
            }
        }
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                if self.rays[names[i]] == self.rays[names[j]] {
                    violations.push(Violation::DuplicateRayVector {
                        first: names[i].clone(),
                        second: names[j].clone(),
                    });
                }
            }
        }
        let used: BTreeSet<&String> = self.max_cones.iter().flatten().collect();
        for name in &names {
            if !used.contains(name) {
                violations.push(Violation::UnusedRay {
                    name: (*name).clone(),
                });
            }
        }
        if violations
            .iter()
            .any(|v| matches!(v, Violation::ZeroRay { .. }))
        {
            // Geometry is meaningless with zero rays; report what we have.
            return ValidationReport { violations };
        }
        // Simpliciality: the listed rays of each cone are linearly independent.
        let mut simplicial: Vec<bool> = Vec::new();
        for cone in &self.max_cones {
            let rows: Vec<Vec<Int>> = cone.iter().map(|n| self.rays[n].clone()).collect();
            let ok = IntMatrix::from_rows(rows, self.ambient_rank).rank() == cone.len();
            if !ok {
                violations.push(Violation::NonSimplicialCone { cone: cone.clone() });
            }
            simplicial.push(ok);
        }
        // Condition (1): containment in the support region.
        if let Some(region) = &self.support {
            for cone in &self.max_cones {
                if cone.iter().any(|n| !region.contains(&self.rays[n])) {
                    violations.push(Violation::ConeOutsideSupport { cone: cone.clone() });
                }
            }
        }
        // Condition (2): pairwise intersections are faces of both.
        let objects: Vec<Option<Cone>> = self
            .max_cones
            .iter()
            .zip(&simplicial)
            .map(|(names, ok)| {
                ok.then(|| {
                    self.cone_from_names(names)
                        .expect("simplicial cone on nonzero rays is strictly convex")
                })
            })
            .collect();
        for i in 0..objects.len() {
            for j in i + 1..objects.len() {
                let (Some(a), Some(b)) = (&objects[i], &objects[j]) else {
                    continue;
                };
                let meet = a
                    .intersect(b)
                    .expect("intersection of strictly convex cones");
                if !(meet.is_face_of(a) && meet.is_face_of(b)) {
                    // A relative-interior point of the overlap certifies the
                    // violation; the ray sum is one.
                    let witness = meet.rays().iter().fold(
                        vec![Int::from(0); self.ambient_rank],
                        |acc, r| add_vec(&acc, r),
                    );
                    violations.push(Violation::RelintOverlap {
                        first: self.max_cones[i].clone(),
                        second: self.max_cones[j].clone(),
                        witness,
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Error with the full report unless the fan is valid.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidFan(report.to_string()))
        }
    }

    /// True iff the primitive generators of every cone extend to a lattice
    /// basis (all Smith invariant factors 1). Assumes a valid fan.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|cone| {
            let rows: Vec<Vec<Int>> = cone.iter().map(|n| self.rays[n].clone()).collect();
            IntMatrix::from_rows(rows, self.ambient_rank)
                .smith_normal_form()
                .iter()
                .all(|d| *d == Int::from(1))
        })
    }

    /// True iff the cones tile the support region (full space when absent).
    /// Assumes a valid fan.
    pub fn is_complete(&self) -> Result<bool> {
        let cones = self.max_cone_objects()?;
        cones_tile_region(&cones, &self.support_region())
    }

    /// The fan {c ∩ w : c listed}, reduced to maximal cones and rewritten in
    /// the coordinates of the HNF basis of the saturation of w.
    ///
    /// Ray names are inherited where an intersection ray equals a named ray;
    /// new rays get synthetic names s0, s1, ... in sorted vector order. The
    /// support region is pulled back; inequalities that become zero are
    /// dropped, and if all vanish the restriction has full-space support.
    pub fn restrict_to_subspace(&self, w: &Sublattice) -> Result<Fan> {
        assert_eq!(w.ambient_rank(), self.ambient_rank);
        let wsat = w.saturation();
        let b = wsat.basis();
        let new_rank = wsat.rank();
        // Intersect each listed cone with the subspace.
        let mut pieces: Vec<(Cone, Vec<String>)> = Vec::new();
        for names in &self.max_cones {
            let c = self.cone_from_names(names)?;
            let i = c.intersect_subspace(&wsat)?;
            if IntMatrix::from_rows(i.rays().to_vec(), self.ambient_rank).rank() != i.rays().len()
            {
                return Err(Error::NonSimplicialRestriction(names.clone()));
            }
            if !pieces.iter().any(|(p, _)| p == &i) {
                pieces.push((i, names.clone()));
            }
        }
        // Keep maximal pieces only.
        let keep: Vec<bool> = (0..pieces.len())
            .map(|i| {
                !pieces.iter().enumerate().any(|(j, (c, _))| {
                    j != i && c != &pieces[i].0 && c.contains_cone(&pieces[i].0)
                })
            })
            .collect();
        let kept: Vec<&Cone> = pieces
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|((c, _), _)| c)
            .collect();
        // Name the rays of the restricted fan.
        let mut new_rays: Vec<Vec<Int>> = kept
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect();
        new_rays.sort();
        new_rays.dedup();
        let mut names_of: IndexMap<Vec<Int>, String> = IndexMap::new();
        let inherited: BTreeSet<String> = new_rays
            .iter()
            .filter_map(|r| {
                self.rays
                    .iter()
                    .find(|(_, v)| *v == r)
                    .map(|(n, _)| n.clone())
            })
            .collect();
        let mut counter = 0usize;
        for r in &new_rays {
            let name = match self.rays.iter().find(|(_, v)| *v == r) {
                Some((n, _)) => n.clone(),
                None => loop {
                    let cand = format!("s{counter}");
                    counter += 1;
                    if !inherited.contains(&cand) {
                        break cand;
                    }
                },
            };
            names_of.insert(r.clone(), name);
        }
        let ray_list: Vec<(String, Vec<Int>)> = new_rays
            .iter()
            .map(|r| {
                let y = wsat
                    .coordinates(r)
                    .expect("intersection ray lies in the saturated subspace");
                (names_of[r].clone(), y)
            })
            .collect();
        let cone_lists: Vec<Vec<String>> = kept
            .iter()
            .map(|c| c.rays().iter().map(|r| names_of[r].clone()).collect())
            .collect();
        // Pull back the support region.
        let support = match &self.support {
            None => None,
            Some(region) => {
                let pulled: Vec<Vec<Int>> = region
                    .inequalities()
                    .iter()
                    .map(|chi| b.right_mul_vec(chi))
                    .filter(|chi| !is_zero_vec(chi))
                    .collect();
                if pulled.is_empty() {
                    None
                } else {
                    Some(pulled)
                }
            }
        };
        Fan::new(new_rank, ray_list, cone_lists, support)
    }

    /// True iff this fan is the join of `sub` with the named ray: the faces
    /// outside `sub` are exactly the cones spanned by the ray together with
    /// a face of `sub`.
    ///
    /// `sub` must live in the same ambient lattice; its cones are compared
    /// geometrically, so its ray names need not match. Returns false when
    /// `sub` is not a geometric subfan of this fan.
    pub fn is_join(&self, sub: &Fan, ray_name: &str) -> Result<bool> {
        if sub.ambient_rank != self.ambient_rank {
            return Err(Error::RankMismatch(format!(
                "join subfan has rank {}, fan has rank {}",
                sub.ambient_rank, self.ambient_rank
            )));
        }
        let v = self.ray_vector(ray_name)?.clone();
        if sub.rays.values().any(|r| *r == v) {
            return Err(Error::BadArgument(format!(
                "join ray '{ray_name}' is a ray of the subfan"
            )));
        }
        let face_cones = |fan: &Fan| -> Result<Vec<Cone>> {
            let mut out: Vec<Cone> = Vec::new();
            for names in fan.face_name_sets() {
                let c = fan.cone_from_names(&names)?;
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            Ok(out)
        };
        let f_faces = face_cones(self)?;
        let sub_faces = face_cones(sub)?;
        if !sub_faces.iter().all(|c| f_faces.contains(c)) {
            return Ok(false);
        }
        let difference: Vec<Cone> = f_faces
            .iter()
            .filter(|c| !sub_faces.contains(*c))
            .cloned()
            .collect();
        let mut joins: Vec<Cone> = Vec::new();
        for c in &sub_faces {
            let mut gens = c.rays().to_vec();
            gens.push(v.clone());
            match Cone::from_generators(self.ambient_rank, &gens) {
                Ok(j) => {
                    if !joins.contains(&j) {
                        joins.push(j);
                    }
                }
                // The ray is opposite to the subfan: no join exists.
                Err(Error::NotStrictlyConvex) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
        let covered = difference.iter().all(|c| joins.contains(c));
        let produced = joins.iter().all(|j| difference.contains(j));
        Ok(covered && produced)
    }

    /// Face poset of the fan in orbit-closure order (see [`OrbitPoset`]).
    pub fn orbit_closure_poset(&self) -> OrbitPoset {
        let elements = self.face_name_sets();
        let index: IndexMap<&Vec<String>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut edges = Vec::new();
        for (j, elem) in elements.iter().enumerate() {
            // Covers in a downward-closed family are single-ray deletions.
            for skip in 0..elem.len() {
                let mut sub = elem.clone();
                sub.remove(skip);
                let i = index[&sub];
                edges.push((i, j));
            }
        }
        edges.sort();
        edges.dedup();
        OrbitPoset { elements, edges }
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        if self.ambient_rank != other.ambient_rank || self.max_cones != other.max_cones {
            return false;
        }
        let a: BTreeSet<(&String, &Vec<Int>)> = self.rays.iter().collect();
        let b: BTreeSet<(&String, &Vec<Int>)> = other.rays.iter().collect();
        if a != b {
            return false;
        }
        match (&self.support, &other.support) {
            (None, None) => true,
            (Some(x), Some(y)) => x.region_eq(y),
            _ => false,
        }
    }
}
impl Eq for Fan {}
