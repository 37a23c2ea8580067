//! Fan-level data of toroidal spherical embeddings and the restriction to
//! the reductive automorphism group in the nonlinear case: classification of
//! boundary rays into linear and nonlinear parts, dual spherical roots of
//! movable divisors, the induced splitting of the character lattice, the
//! restricted embedding, and the lattice of the wonderful closure.

use crate::cone::HalfspaceCone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{annihilator, dual_evaluation, is_direct_sum, Sublattice};
use crate::matrix::{dot, is_zero_vec, neg_vec, Int, IntMatrix};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Combinatorial data of a toroidal spherical embedding: the rank of the
/// character lattice, the spherical roots as named characters, the colors as
/// named functionals, the simple roots of the parabolic as opaque labels,
/// and the boundary fan, whose support must be the valuation cone
/// {v : <v, sigma> <= 0 for every spherical root sigma}.
#[derive(Clone, Debug)]
pub struct SphericalData {
    rank: usize,
    sigma: BTreeMap<String, Vec<Int>>,
    colors: BTreeMap<String, Vec<Int>>,
    sp_simple_roots: Vec<String>,
    fan: Fan,
}

/// The sublattice spanned by the spherical roots together with the shape of
/// its quotient: `snf_diagonal` is the Smith normal form diagonal of the
/// matrix of spherical roots, and `quotient_factors` lists the invariant
/// factors of the quotient of the full lattice by `xi` (nontrivial torsion
/// entries followed by one zero per free rank).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WonderfulClosureLattice {
    pub xi: Sublattice,
    pub snf_diagonal: Vec<Int>,
    pub quotient_factors: Vec<Int>,
}

impl SphericalData {
    /// Build spherical data, checking shape only (validation is separate).
    /// Names must be unique across rays, colors, and spherical roots.
    pub fn new(
        rank: usize,
        sigma: Vec<(String, Vec<Int>)>,
        colors: Vec<(String, Vec<Int>)>,
        sp_simple_roots: Vec<String>,
        fan: Fan,
    ) -> Result<SphericalData> {
        if fan.ambient_rank() != rank {
            return Err(Error::RankMismatch(format!(
                "fan has rank {}, data declares {rank}",
                fan.ambient_rank()
            )));
        }
        let mut seen: BTreeSet<String> = fan.rays().keys().cloned().collect();
        let mut sigma_map = BTreeMap::new();
        let mut color_map = BTreeMap::new();
        for (dest, pairs) in [(&mut sigma_map, sigma), (&mut color_map, colors)] {
            for (name, v) in pairs {
                if v.len() != rank {
                    return Err(Error::WrongVectorLength {
                        name,
                        got: v.len(),
                        expected: rank,
                    });
                }
                if !seen.insert(name.clone()) {
                    return Err(Error::DuplicateName(name));
                }
                dest.insert(name, v);
            }
        }
        Ok(SphericalData {
            rank,
            sigma: sigma_map,
            colors: color_map,
            sp_simple_roots,
            fan,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sigma(&self) -> &BTreeMap<String, Vec<Int>> {
        &self.sigma
    }

    pub fn colors(&self) -> &BTreeMap<String, Vec<Int>> {
        &self.colors
    }

    pub fn sp_simple_roots(&self) -> &[String] {
        &self.sp_simple_roots
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Necessary conditions for the data to come from an embedding: the fan
    /// is valid, the spherical roots are linearly independent, and the
    /// declared support region equals the valuation cone derived from them.
    pub fn validate(&self) -> Result<()> {
        self.fan.require_valid()?;
        let rows: Vec<Vec<Int>> = self.sigma.values().cloned().collect();
        let count = rows.len();
        if IntMatrix::from_rows(rows, self.rank).rank() != count {
            return Err(Error::SigmaNotIndependent);
        }
        let derived = self.valuation_cone();
        if !self.fan.support_region().region_eq(&derived) {
            return Err(Error::SupportMismatch);
        }
        Ok(())
    }

    /// The valuation cone {v : <v, sigma> <= 0 for all sigma}.
    pub fn valuation_cone(&self) -> HalfspaceCone {
        let ineqs: Vec<Vec<Int>> = self.sigma.values().map(|s| neg_vec(s)).collect();
        HalfspaceCone::new(self.rank, ineqs)
    }

    /// Split the boundary rays into the linear part (rays orthogonal to
    /// every spherical root, lying in the lineality of the valuation cone)
    /// and the nonlinear part.
    pub fn classify_boundary(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let mut linear = BTreeSet::new();
        let mut nonlinear = BTreeSet::new();
        for (name, v) in self.fan.rays() {
            if self.sigma.values().all(|s| dot(v, s).is_zero()) {
                linear.insert(name.clone());
            } else {
                nonlinear.insert(name.clone());
            }
        }
        (linear, nonlinear)
    }

    /// For each ray in `moved`, the name of the unique spherical root dual
    /// to it: the ray's functional pairs to -1 with that root and to zero
    /// with every other, and every other ray of the fan is orthogonal to it.
    /// Any failed condition means the divisor cannot be unstabilized.
    pub fn sigma_of_moved(&self, moved: &BTreeSet<String>) -> Result<BTreeMap<String, String>> {
        let mut assignment = BTreeMap::new();
        for e in moved {
            let rho = self.fan.ray_vector(e)?;
            let nonzero: Vec<(&String, Int)> = self
                .sigma
                .iter()
                .map(|(n, s)| (n, dot(rho, s)))
                .filter(|(_, p)| !p.is_zero())
                .collect();
            let (sname, pairing) = match nonzero.as_slice() {
                [] => {
                    return Err(Error::NotMovable {
                        ray: e.clone(),
                        reason: "it pairs to zero with every spherical root (linear part)".into(),
                    })
                }
                [one] => one.clone(),
                many => {
                    return Err(Error::NotMovable {
                        ray: e.clone(),
                        reason: format!(
                            "it pairs nonzero with {} spherical roots, expected exactly one",
                            many.len()
                        ),
                    })
                }
            };
            if pairing != Int::from(-1) {
                return Err(Error::NotMovable {
                    ray: e.clone(),
                    reason: format!("its pairing with '{sname}' is {pairing}, expected -1"),
                });
            }
            let svec = &self.sigma[sname];
            for (rname, rvec) in self.fan.rays() {
                if rname != e && !dot(rvec, svec).is_zero() {
                    return Err(Error::NotMovable {
                        ray: e.clone(),
                        reason: format!(
                            "ray '{rname}' pairs nonzero with its spherical root '{sname}'"
                        ),
                    });
                }
            }
            assignment.insert(e.clone(), sname.clone());
        }
        Ok(assignment)
    }

    /// The splitting of the character lattice induced by a movable set: the
    /// annihilator of the moved functionals and the span of their dual
    /// spherical roots, which must form a direct sum of the full lattice.
    pub fn lambda_decomposition(
        &self,
        moved: &BTreeSet<String>,
    ) -> Result<(Sublattice, Sublattice)> {
        let assignment = self.sigma_of_moved(moved)?;
        let rho_vecs: Vec<Vec<Int>> = moved
            .iter()
            .map(|e| self.fan.ray_vector(e).cloned())
            .collect::<Result<_>>()?;
        let perp = annihilator(&rho_vecs, self.rank);
        let sigma_vecs: Vec<Vec<Int>> = assignment
            .values()
            .map(|s| self.sigma[s].clone())
            .collect();
        let span = Sublattice::from_generators(self.rank, &sigma_vecs);
        if !is_direct_sum(&perp, &span) {
            return Err(Error::DecompositionFails(format!(
                "annihilator of the moved functionals (rank {}) plus the span of their dual \
                 spherical roots (rank {}) is not the full lattice of rank {}",
                perp.rank(),
                span.rank(),
                self.rank
            )));
        }
        Ok((perp, span))
    }

    /// Restrict the embedding to the subgroup stabilizing `stable`, in the
    /// case where every unstabilized divisor lies on the nonlinear part of
    /// the boundary. The moved set is the complement of `stable` among the
    /// rays; each moved divisor consumes its dual spherical root, the fan is
    /// intersected with the annihilator of the consumed roots, and colors
    /// keep their names with restricted functionals.
    ///
    /// The sigma entries of the result are the restrictions of the surviving
    /// input characters. They define the correct support region, but the
    /// true spherical-root set of the restricted embedding is not computable
    /// from fan data alone and may differ from them; the parabolic labels
    /// are carried over unchanged for the same reason.
    pub fn nonlinear_restrict(&self, stable: &BTreeSet<String>) -> Result<SphericalData> {
        self.validate()?;
        if !self.fan.is_smooth() {
            return Err(Error::NotSmooth);
        }
        if !self.fan.is_complete()? {
            return Err(Error::NotComplete);
        }
        for name in stable {
            self.fan.ray_vector(name)?;
        }
        let (linear, _) = self.classify_boundary();
        for d in &linear {
            if !stable.contains(d) {
                return Err(Error::StableMustContainLinear(d.clone()));
            }
        }
        let moved: BTreeSet<String> = self
            .fan
            .rays()
            .keys()
            .filter(|n| !stable.contains(*n))
            .cloned()
            .collect();
        let assignment = self.sigma_of_moved(&moved)?;
        let (lambda, span) = self.lambda_decomposition(&moved)?;
        let w = span.annihilator();

        // Every face must meet the restriction subspace in one of its faces.
        for names in self.fan.face_name_sets() {
            let c = self.fan.cone_from_names(&names)?;
            let cw = c.intersect_subspace(&w)?;
            if !cw.is_face_of(&c) {
                return Err(Error::InternalInvariant(format!(
                    "cone {names:?} does not meet the restriction subspace in a face"
                )));
            }
        }

        // The fan must be the join of its drop-one-divisor subfan and the
        // consumed ray, for each moved divisor.
        for e in &moved {
            let rays: Vec<(String, Vec<Int>)> = self
                .fan
                .rays()
                .iter()
                .filter(|(n, _)| n.as_str() != e.as_str())
                .map(|(n, v)| (n.clone(), v.clone()))
                .collect();
            let mut reduced: Vec<Vec<String>> = Vec::new();
            for names in self.fan.max_cones() {
                let r: Vec<String> = names.iter().filter(|n| *n != e).cloned().collect();
                if !reduced.contains(&r) {
                    reduced.push(r);
                }
            }
            let maximal: Vec<Vec<String>> = reduced
                .iter()
                .filter(|c| {
                    !reduced
                        .iter()
                        .any(|d| d != *c && c.iter().all(|n| d.contains(n)))
                })
                .cloned()
                .collect();
            let support = self.fan.support().map(|h| h.inequalities().to_vec());
            let sub = Fan::new(self.rank, rays, maximal, support)?;
            if !self.fan.is_join(&sub, e)? {
                return Err(Error::JoinFailed(e.clone()));
            }
        }

        let restricted = self.fan.restrict_to_subspace(&w)?;

        // The restriction map is injective on rays: every ray of the
        // restricted fan is an original ray, and exactly the moved ones die.
        let expected_names: BTreeSet<&String> = self
            .fan
            .rays()
            .keys()
            .filter(|n| !moved.contains(*n))
            .collect();
        let got_names: BTreeSet<&String> = restricted.rays().keys().collect();
        if got_names != expected_names {
            return Err(Error::InternalInvariant(format!(
                "restricted fan rays {got_names:?} differ from the surviving boundary \
                 {expected_names:?}"
            )));
        }
        if !restricted.is_smooth() {
            return Err(Error::InternalInvariant(
                "restricted fan is not smooth".into(),
            ));
        }
        if !restricted.is_complete()? {
            return Err(Error::InternalInvariant(
                "restricted fan is not complete in its support".into(),
            ));
        }

        // Surviving spherical roots, restricted to the subspace.
        let consumed: BTreeSet<&String> = assignment.values().collect();
        let b = w.basis();
        let mut new_sigma: Vec<(String, Vec<Int>)> = Vec::new();
        for (name, s) in &self.sigma {
            if consumed.contains(name) {
                continue;
            }
            let restricted_s = b.right_mul_vec(s);
            if is_zero_vec(&restricted_s) {
                return Err(Error::InternalInvariant(format!(
                    "surviving spherical root '{name}' vanishes on the restriction subspace"
                )));
            }
            new_sigma.push((name.clone(), restricted_s));
        }

        // Colors keep their names; functionals are restricted to the new
        // lattice via the dual pairing.
        let eval = dual_evaluation(&lambda, &w, "restricted characters against the subspace")?;
        let new_colors: Vec<(String, Vec<Int>)> = self
            .colors
            .iter()
            .map(|(n, v)| (n.clone(), eval.right_mul_vec(v)))
            .collect();

        let out = SphericalData::new(
            w.rank(),
            new_sigma,
            new_colors,
            self.sp_simple_roots.clone(),
            restricted,
        )?;
        out.validate()?;
        let (out_linear, _) = out.classify_boundary();
        let surviving_linear: BTreeSet<String> =
            linear.intersection(stable).cloned().collect();
        if out_linear != surviving_linear {
            return Err(Error::InternalInvariant(format!(
                "linear part changed under restriction: {out_linear:?} vs {surviving_linear:?}"
            )));
        }
        Ok(out)
    }

    /// The lattice spanned by the spherical roots (the character lattice of
    /// the wonderful closure of the open orbit) and the invariant factors of
    /// its quotient.
    pub fn wonderful_closure_lattice(&self) -> Result<WonderfulClosureLattice> {
        self.validate()?;
        let rows: Vec<Vec<Int>> = self.sigma.values().cloned().collect();
        let xi = Sublattice::from_generators(self.rank, &rows);
        let snf_diagonal = if rows.is_empty() {
            Vec::new()
        } else {
            IntMatrix::from_rows(rows, self.rank).smith_normal_form()
        };
        let mut quotient_factors: Vec<Int> = snf_diagonal
            .iter()
            .filter(|d| **d > Int::from(1))
            .cloned()
            .collect();
        quotient_factors.extend(vec![Int::from(0); self.rank - snf_diagonal.len()]);
        Ok(WonderfulClosureLattice {
            xi,
            snf_diagonal,
            quotient_factors,
        })
    }
}
