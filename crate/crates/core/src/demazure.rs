//! Demazure roots of a smooth complete fan, the divisor map alpha -> X(alpha),
//! the stabilization root system Phi(X, D), and positive/simple systems.

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::matrix::{dot, int, neg_vec, sub_vec, Int, IntMatrix};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A Demazure root: a character alpha pairing to -1 with exactly one ray
/// (the moved divisor X(alpha)) and >= 0 with every other ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemazureRoot {
    pub alpha: Vec<Int>,
    pub moved_ray: String,
}

/// Roots, the stable/moved split, and the root system it generates.
#[derive(Clone, Debug)]
pub struct RootData {
    pub all_roots: Vec<DemazureRoot>,
    pub stable_set: BTreeSet<String>,
    pub moved_set: BTreeSet<String>,
    /// Maximal negation-closed set of roots moving only unstable divisors.
    pub phi: Vec<Vec<Int>>,
    pub phi_plus: Vec<Vec<Int>>,
    pub psi: Vec<Vec<Int>>,
}

/// Choice of positive system: lexicographic sign or a linear functional
/// that must not vanish on any element of Phi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    Lex,
    Vector(Vec<Int>),
}

/// Outcome of a lemma-verification pass.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn require_root_setting(f: &Fan) -> Result<()> {
    f.require_valid()?;
    if f.support().is_some() && !f.support_region().is_full_space() {
        return Err(Error::SupportNotFullSpace);
    }
    if !f.is_smooth() {
        return Err(Error::NotSmooth);
    }
    Ok(())
}

/// The moved ray of alpha, if alpha is a Demazure root of the fan.
fn classify(f: &Fan, alpha: &[Int]) -> Option<String> {
    let mut moved: Option<String> = None;
    for (name, v) in f.rays() {
        let p = dot(v, alpha);
        if p == int(-1) {
            if moved.is_some() {
                return None;
            }
            moved = Some(name.clone());
        } else if p.is_negative() {
            return None;
        }
    }
    moved
}

/// Exact vertices of the root polytope {alpha : <v, alpha> >= -1 for all
/// rays v}, via full-rank ray subsets. Errors when the polytope is
/// unbounded, i.e. the rays do not positively span.
fn root_polytope_vertices(f: &Fan) -> Result<Vec<Vec<BigRational>>> {
    let rank = f.ambient_rank();
    let rays: Vec<&Vec<Int>> = f.rays().values().collect();
    // Bounded iff the recession cone {alpha : <v, alpha> >= 0} is {0}.
    let constraints: Vec<Vec<Int>> = rays.iter().map(|v| (*v).clone()).collect();
    let (rec_rays, rec_lin) = crate::cone::dual_description(&constraints, rank);
    if !rec_rays.is_empty() || !rec_lin.is_empty() {
        return Err(Error::Unbounded);
    }
    if rank == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut vertices: Vec<Vec<BigRational>> = Vec::new();
    let minus_one = vec![int(-1); rank];
    let mut subset = vec![0usize; rank];
    enumerate_subsets(rays.len(), rank, &mut subset, 0, 0, &mut |chosen| {
        let rows: Vec<Vec<Int>> = chosen.iter().map(|&i| rays[i].clone()).collect();
        let m = IntMatrix::from_rows(rows, rank);
        let Some(alpha) = m.solve_right_rational(&minus_one) else {
            return;
        };
        // Feasible solutions of full-rank subsystems are exactly vertices.
        let feasible = rays.iter().all(|v| {
            let p: BigRational = v
                .iter()
                .zip(&alpha)
                .map(|(vi, ai)| BigRational::from_integer(vi.clone()) * ai)
                .sum();
            p >= BigRational::from_integer(int(-1))
        });
        if feasible && !vertices.contains(&alpha) {
            vertices.push(alpha);
        }
    });
    Ok(vertices)
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(&buf[..k]);
        return;
    }
    for i in start..n {
        buf[depth] = i;
        enumerate_subsets(n, k, buf, depth + 1, i + 1, f);
    }
}

fn vertex_bound(vertices: &[Vec<BigRational>]) -> Int {
    let mut bound = Int::zero();
    for v in vertices {
        for q in v {
            let c = q.abs().ceil().to_integer();
            if c > bound {
                bound = c;
            }
        }
    }
    bound
}

pub(crate) const ENUMERATION_CAP: u64 = 20_000_000;

fn scan_box(f: &Fan, bound: i64) -> Result<Vec<DemazureRoot>> {
    let rank = f.ambient_rank();
    let width = 2 * bound as u64 + 1;
    let mut size: u64 = 1;
    for _ in 0..rank {
        size = size.saturating_mul(width);
        if size > ENUMERATION_CAP {
            return Err(Error::EnumerationTooLarge(format!(
                "box scan of {width}^{rank} lattice points exceeds the cap"
            )));
        }
    }
    let mut roots = Vec::new();
    let mut coords = vec![-bound; rank];
    loop {
        let alpha: Vec<Int> = coords.iter().map(|&c| int(c)).collect();
        if !alpha.iter().all(|a| a.is_zero()) {
            if let Some(moved_ray) = classify(f, &alpha) {
                roots.push(DemazureRoot { alpha, moved_ray });
            }
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == rank {
                roots.sort_by(|a, b| a.alpha.cmp(&b.alpha));
                return Ok(roots);
            }
            coords[i] += 1;
            if coords[i] <= bound {
                break;
            }
            coords[i] = -bound;
            i += 1;
        }
    }
}

/// All Demazure roots of a smooth complete full-support fan, sorted
/// lexicographically by character.
pub fn demazure_roots(f: &Fan) -> Result<Vec<DemazureRoot>> {
    require_root_setting(f)?;
    let vertices = root_polytope_vertices(f)?;
    let bound = vertex_bound(&vertices)
        .to_i64()
        .ok_or_else(|| Error::EnumerationTooLarge("polytope vertex exceeds i64".into()))?;
    scan_box(f, bound)
}

/// Independent verifier: exhaustive scan of the integer box [-bound, bound]^r
/// with a directly coded root filter. Errors if any polytope vertex lies
/// outside the box.
pub fn roots_oracle(f: &Fan, box_bound: i64) -> Result<Vec<DemazureRoot>> {
    require_root_setting(f)?;
    if box_bound < 0 {
        return Err(Error::BadArgument("box bound must be nonnegative".into()));
    }
    let vertices = root_polytope_vertices(f)?;
    let needed = vertex_bound(&vertices);
    if needed > int(box_bound) {
        return Err(Error::BoundTooSmall {
            bound: box_bound,
            needed: needed.to_string(),
        });
    }
    let rank = f.ambient_rank();
    let width = (2 * box_bound as u64 + 1)
        .checked_pow(rank as u32)
        .filter(|w| *w <= ENUMERATION_CAP)
        .ok_or_else(|| {
            Error::EnumerationTooLarge("oracle box exceeds the enumeration cap".into())
        })?;
    let _ = width;
    // Deliberately separate filter code path from demazure_roots.
    let ray_list: Vec<(String, Vec<Int>)> = f
        .rays()
        .iter()
        .map(|(n, v)| (n.clone(), v.clone()))
        .collect();
    let mut roots: Vec<DemazureRoot> = Vec::new();
    let mut idx = vec![0u64; rank];
    let per = 2 * box_bound as u64 + 1;
    'outer: loop {
        let alpha: Vec<Int> = idx.iter().map(|&i| int(i as i64 - box_bound)).collect();
        let mut minus_one: Vec<&str> = Vec::new();
        let mut ok = true;
        for (name, v) in &ray_list {
            let mut p = Int::zero();
            for (vi, ai) in v.iter().zip(&alpha) {
                p += vi * ai;
            }
            if p == int(-1) {
                minus_one.push(name);
            } else if p < Int::zero() {
                ok = false;
                break;
            }
        }
        if ok && minus_one.len() == 1 && alpha.iter().any(|a| !a.is_zero()) {
            roots.push(DemazureRoot {
                alpha,
                moved_ray: minus_one[0].to_string(),
            });
        }
        for i in 0..=rank {
            if i == rank {
                break 'outer;
            }
            idx[i] += 1;
            if idx[i] < per {
                break;
            }
            idx[i] = 0;
        }
    }
    roots.sort_by(|a, b| a.alpha.cmp(&b.alpha));
    Ok(roots)
}

/// The root system Phi(X, D): roots alpha whose moved divisor is outside
/// the stable set D and whose negative is also such a root.
pub fn phi(roots: &[DemazureRoot], stable: &BTreeSet<String>, f: &Fan) -> Result<RootData> {
    for name in stable {
        if !f.rays().contains_key(name) {
            return Err(Error::UnknownRay(name.clone()));
        }
    }
    let moved_set: BTreeSet<String> = f
        .rays()
        .keys()
        .filter(|n| !stable.contains(*n))
        .cloned()
        .collect();
    let by_alpha: BTreeMap<&Vec<Int>, &String> = roots
        .iter()
        .map(|r| (&r.alpha, &r.moved_ray))
        .collect();
    let mut phi: Vec<Vec<Int>> = Vec::new();
    for r in roots {
        if stable.contains(&r.moved_ray) {
            continue;
        }
        let neg = neg_vec(&r.alpha);
        match by_alpha.get(&neg) {
            Some(moved) if !stable.contains(*moved) => phi.push(r.alpha.clone()),
            _ => {}
        }
    }
    phi.sort();
    Ok(RootData {
        all_roots: roots.to_vec(),
        stable_set: stable.clone(),
        moved_set,
        phi,
        phi_plus: Vec::new(),
        psi: Vec::new(),
    })
}

fn lex_positive(alpha: &[Int]) -> bool {
    for a in alpha {
        if a.is_positive() {
            return true;
        }
        if a.is_negative() {
            return false;
        }
    }
    false
}

/// Split a negation-closed Phi into a positive system and its simple roots
/// (the elements that are not sums of two positive roots).
pub fn positive_system(
    phi: &[Vec<Int>],
    positivity: &Positivity,
) -> Result<(Vec<Vec<Int>>, Vec<Vec<Int>>)> {
    let set: BTreeSet<&Vec<Int>> = phi.iter().collect();
    for alpha in phi {
        if !set.contains(&neg_vec(alpha)) {
            return Err(Error::InternalInvariant(format!(
                "Phi is not closed under negation at {alpha:?}"
            )));
        }
    }
    let mut plus: Vec<Vec<Int>> = Vec::new();
    for alpha in phi {
        let positive = match positivity {
            Positivity::Lex => lex_positive(alpha),
            Positivity::Vector(w) => {
                if w.len() != alpha.len() {
                    return Err(Error::BadArgument(format!(
                        "positivity functional has length {}, expected {}",
                        w.len(),
                        alpha.len()
                    )));
                }
                let p = dot(alpha, w);
                if p.is_zero() {
                    let small: Vec<i64> =
                        alpha.iter().map(|a| a.to_i64().unwrap_or(0)).collect();
                    return Err(Error::DegeneratePositivity(small));
                }
                p.is_positive()
            }
        };
        if positive {
            plus.push(alpha.clone());
        }
    }
    plus.sort();
    let plus_set: BTreeSet<&Vec<Int>> = plus.iter().collect();
    let psi: Vec<Vec<Int>> = plus
        .iter()
        .filter(|alpha| {
            !plus.iter().any(|beta| {
                let gamma = sub_vec(alpha, beta);
                beta != *alpha && plus_set.contains(&gamma)
            })
        })
        .cloned()
        .collect();
    Ok((plus, psi))
}

impl RootData {
    /// Fill phi_plus and psi for the chosen positivity.
    pub fn apply_positivity(&mut self, positivity: &Positivity) -> Result<()> {
        let (plus, psi) = positive_system(&self.phi, positivity)?;
        self.phi_plus = plus;
        self.psi = psi;
        Ok(())
    }
}

/// Verify the triple lemma on the negation-closed core of the given roots
/// (the lemma hypothesis is alpha, beta in Phi): for every core pair with
/// X(alpha) = X(beta), gamma = alpha - beta and -gamma are roots with
/// X(gamma) = X(-beta) and X(-gamma) = X(-alpha).
///
/// The core restriction is essential: on F_3 the four roots moving the
/// (0,-1) ray have differences like (2,0) that are not roots, but none of
/// them has a root negative, so the lemma does not speak about them.
pub fn check_triple(roots: &[DemazureRoot]) -> CheckReport {
    let by_alpha: BTreeMap<&Vec<Int>, &String> = roots
        .iter()
        .map(|r| (&r.alpha, &r.moved_ray))
        .collect();
    let core: Vec<&DemazureRoot> = roots
        .iter()
        .filter(|r| by_alpha.contains_key(&neg_vec(&r.alpha)))
        .collect();
    let mut report = CheckReport::default();
    for a in &core {
        for b in &core {
            if a.alpha == b.alpha || a.moved_ray != b.moved_ray {
                continue;
            }
            report.checked += 1;
            let gamma = sub_vec(&a.alpha, &b.alpha);
            let Some(gamma_moved) = by_alpha.get(&gamma) else {
                report.violations.push(format!(
                    "alpha={:?} beta={:?} share '{}', but alpha-beta={gamma:?} is not a root",
                    a.alpha, b.alpha, a.moved_ray
                ));
                continue;
            };
            let Some(neg_gamma_moved) = by_alpha.get(&neg_vec(&gamma)) else {
                report.violations.push(format!(
                    "gamma={gamma:?} is a root but -gamma is not"
                ));
                continue;
            };
            let nb_moved = by_alpha[&neg_vec(&b.alpha)];
            if gamma_moved != &nb_moved {
                report.violations.push(format!(
                    "X(alpha-beta)='{gamma_moved}' differs from X(-beta)='{nb_moved}' \
                     for alpha={:?} beta={:?}",
                    a.alpha, b.alpha
                ));
            }
            let na_moved = by_alpha[&neg_vec(&a.alpha)];
            if neg_gamma_moved != &na_moved {
                report.violations.push(format!(
                    "X(beta-alpha)='{neg_gamma_moved}' differs from X(-alpha)='{na_moved}' \
                     for alpha={:?} beta={:?}",
                    a.alpha, b.alpha
                ));
            }
        }
    }
    report
}

/// Verify the independence lemma for the simple system Psi: the moved-ray
/// vectors are pairwise distinct and linearly independent, and the Psi x Psi
/// pairing matrix is nondegenerate.
pub fn check_independent(
    roots: &[DemazureRoot],
    psi: &[Vec<Int>],
    f: &Fan,
) -> Result<CheckReport> {
    let by_alpha: BTreeMap<&Vec<Int>, &String> = roots
        .iter()
        .map(|r| (&r.alpha, &r.moved_ray))
        .collect();
    let mut report = CheckReport::default();
    let mut rhos: Vec<Vec<Int>> = Vec::new();
    for alpha in psi {
        let Some(moved) = by_alpha.get(alpha) else {
            report
                .violations
                .push(format!("psi element {alpha:?} is not a root"));
            continue;
        };
        rhos.push(f.ray_vector(moved)?.clone());
    }
    if !report.is_ok() {
        return Ok(report);
    }
    report.checked = psi.len();
    for i in 0..rhos.len() {
        for j in i + 1..rhos.len() {
            if rhos[i] == rhos[j] {
                report.violations.push(format!(
                    "moved rays of {:?} and {:?} coincide",
                    psi[i], psi[j]
                ));
            }
        }
    }
    let rank = IntMatrix::from_rows(rhos.clone(), f.ambient_rank()).rank();
    if rank != rhos.len() {
        report.violations.push(format!(
            "moved-ray vectors have rank {rank}, expected {}",
            rhos.len()
        ));
    }
    if !psi.is_empty() {
        let gram: Vec<Vec<Int>> = rhos
            .iter()
            .map(|rho| psi.iter().map(|beta| dot(rho, beta)).collect())
            .collect();
        let det = IntMatrix::from_rows(gram, psi.len()).determinant();
        if det.is_zero() {
            report
                .violations
                .push("Psi x Psi pairing matrix is degenerate".into());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::generate::{hirzebruch, product, projective_space};
    use crate::matrix::{add_vec, ivec};
    use proptest::prelude::*;

    fn root(alpha: &[i64], moved: &str) -> DemazureRoot {
        DemazureRoot {
            alpha: ivec(alpha),
            moved_ray: moved.to_string(),
        }
    }

    fn p2_fan() -> Fan {
        Fan::new(
            2,
            vec![
                ("X1".to_string(), ivec(&[1, 0])),
                ("X2".to_string(), ivec(&[0, 1])),
                ("X3".to_string(), ivec(&[-1, -1])),
            ],
            vec![
                vec!["X1".to_string(), "X2".to_string()],
                vec!["X1".to_string(), "X3".to_string()],
                vec!["X2".to_string(), "X3".to_string()],
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn p2_roots_exact() {
        let roots = demazure_roots(&p2_fan()).unwrap();
        let expected = vec![
            root(&[-1, 0], "X1"),
            root(&[-1, 1], "X1"),
            root(&[0, -1], "X2"),
            root(&[0, 1], "X3"),
            root(&[1, -1], "X2"),
            root(&[1, 0], "X3"),
        ];
        assert_eq!(roots, expected);
        // Aut(P^2) sanity: rank + #roots = dim PGL(3) = 8.
        assert_eq!(2 + roots.len(), 8);
    }

    #[test]
    fn p1_roots() {
        let roots = demazure_roots(&projective_space(1)).unwrap();
        assert_eq!(
            roots,
            vec![root(&[-1], "X1"), root(&[1], "X2")]
        );
    }

    #[test]
    fn f1_roots_exact() {
        let roots = demazure_roots(&hirzebruch(1)).unwrap();
        let alphas: Vec<Vec<Int>> = roots.iter().map(|r| r.alpha.clone()).collect();
        assert_eq!(
            alphas,
            vec![ivec(&[-1, 0]), ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])]
        );
        let by_alpha: BTreeMap<Vec<Int>, String> = roots
            .iter()
            .map(|r| (r.alpha.clone(), r.moved_ray.clone()))
            .collect();
        assert_eq!(by_alpha[&ivec(&[-1, 0])], "H1");
        assert_eq!(by_alpha[&ivec(&[1, 0])], "H3");
        assert_eq!(by_alpha[&ivec(&[0, 1])], "H4");
        assert_eq!(by_alpha[&ivec(&[1, 1])], "H4");
    }

    #[test]
    fn root_counts() {
        // #roots(P^n) = n(n+1); #roots(F_a) = a+3 for a >= 1; F_0 has 4.
        for n in 1..=3 {
            let roots = demazure_roots(&projective_space(n)).unwrap();
            assert_eq!(roots.len(), n * (n + 1), "P^{n}");
        }
        assert_eq!(demazure_roots(&hirzebruch(0)).unwrap().len(), 4);
        for a in 1..=3 {
            let roots = demazure_roots(&hirzebruch(a)).unwrap();
            assert_eq!(roots.len(), (a + 3) as usize, "F_{a}");
        }
        let p1p1 = product(&projective_space(1), &projective_space(1)).unwrap();
        assert_eq!(demazure_roots(&p1p1).unwrap().len(), 4);
    }

    #[test]
    fn oracle_agreement() {
        for (fan, bound) in [
            (p2_fan(), 2),
            (projective_space(1), 1),
            (hirzebruch(1), 2),
            (hirzebruch(3), 4),
        ] {
            assert_eq!(
                demazure_roots(&fan).unwrap(),
                roots_oracle(&fan, bound).unwrap()
            );
        }
    }

    #[test]
    fn oracle_bound_too_small() {
        let err = roots_oracle(&p2_fan(), 1);
        match err {
            Err(Error::BoundTooSmall { bound, needed }) => {
                assert_eq!(bound, 1);
                assert_eq!(needed, "2");
            }
            other => panic!("expected BoundTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_and_precondition_errors() {
        let quadrant = Fan::new(
            2,
            vec![
                ("A".to_string(), ivec(&[1, 0])),
                ("B".to_string(), ivec(&[0, 1])),
            ],
            vec![vec!["A".to_string(), "B".to_string()]],
            None,
        )
        .unwrap();
        assert!(matches!(demazure_roots(&quadrant), Err(Error::Unbounded)));
        let singular = Fan::new(
            2,
            vec![
                ("R1".to_string(), ivec(&[1, 0])),
                ("R2".to_string(), ivec(&[0, 1])),
                ("R3".to_string(), ivec(&[-1, -2])),
            ],
            vec![
                vec!["R1".to_string(), "R2".to_string()],
                vec!["R2".to_string(), "R3".to_string()],
                vec!["R3".to_string(), "R1".to_string()],
            ],
            None,
        )
        .unwrap();
        assert!(matches!(demazure_roots(&singular), Err(Error::NotSmooth)));
        let half = Fan::new(
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
        assert!(matches!(
            demazure_roots(&half),
            Err(Error::SupportNotFullSpace)
        ));
    }

    fn stable(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn phi_examples() {
        let fan = p2_fan();
        let roots = demazure_roots(&fan).unwrap();
        let rd = phi(&roots, &stable(&["X3"]), &fan).unwrap();
        assert_eq!(rd.phi, vec![ivec(&[-1, 1]), ivec(&[1, -1])]);
        assert_eq!(rd.moved_set, stable(&["X1", "X2"]));
        let rd = phi(&roots, &stable(&["X1", "X2", "X3"]), &fan).unwrap();
        assert!(rd.phi.is_empty());
        let rd = phi(&roots, &stable(&[]), &fan).unwrap();
        assert_eq!(rd.phi.len(), 6);
        assert!(matches!(
            phi(&roots, &stable(&["bogus"]), &fan),
            Err(Error::UnknownRay(_))
        ));
    }

    #[test]
    fn phi_requires_negative_root_to_exist() {
        // On F_1 no root has a root negative except the +-(1,0) pair.
        let fan = hirzebruch(1);
        let roots = demazure_roots(&fan).unwrap();
        let rd = phi(&roots, &stable(&[]), &fan).unwrap();
        assert_eq!(rd.phi, vec![ivec(&[-1, 0]), ivec(&[1, 0])]);
    }

    #[test]
    fn positive_systems() {
        // Lex rule on {+-alpha_1}.
        let phi_set = vec![ivec(&[-1, 1]), ivec(&[1, -1])];
        let (plus, psi) = positive_system(&phi_set, &Positivity::Lex).unwrap();
        assert_eq!(plus, vec![ivec(&[1, -1])]);
        assert_eq!(psi, vec![ivec(&[1, -1])]);
        // Functional (0, 1) picks the other half.
        let (plus, psi) =
            positive_system(&phi_set, &Positivity::Vector(ivec(&[0, 1]))).unwrap();
        assert_eq!(plus, vec![ivec(&[-1, 1])]);
        assert_eq!(psi, vec![ivec(&[-1, 1])]);
        // Degenerate functional is rejected.
        assert!(matches!(
            positive_system(&phi_set, &Positivity::Vector(ivec(&[1, 1]))),
            Err(Error::DegeneratePositivity(_))
        ));
        // Empty Phi.
        let (plus, psi) = positive_system(&[], &Positivity::Lex).unwrap();
        assert!(plus.is_empty() && psi.is_empty());
    }

    #[test]
    fn p2_full_root_system_is_a2() {
        let fan = p2_fan();
        let roots = demazure_roots(&fan).unwrap();
        let mut rd = phi(&roots, &stable(&[]), &fan).unwrap();
        rd.apply_positivity(&Positivity::Lex).unwrap();
        assert_eq!(rd.phi_plus.len(), 3);
        assert_eq!(rd.psi.len(), 2);
        // Positive roots are generated by simple-root sums.
        let psi_sum = add_vec(&rd.psi[0], &rd.psi[1]);
        assert!(rd.phi_plus.contains(&psi_sum));
        for alpha in &rd.psi {
            assert!(rd.phi_plus.contains(alpha));
        }
    }

    #[test]
    fn triple_lemma_holds_on_examples() {
        for fan in [p2_fan(), projective_space(1), hirzebruch(1), hirzebruch(3)] {
            let roots = demazure_roots(&fan).unwrap();
            let report = check_triple(&roots);
            assert!(report.is_ok(), "violations: {:?}", report.violations);
        }
        // P^2 has three unordered sharing pairs, checked in both orders.
        let report = check_triple(&demazure_roots(&p2_fan()).unwrap());
        assert_eq!(report.checked, 6);
        // P^1 has no sharing pairs.
        let report = check_triple(&demazure_roots(&projective_space(1)).unwrap());
        assert_eq!(report.checked, 0);
    }

    #[test]
    fn triple_lemma_detects_tampering() {
        let mut roots = demazure_roots(&p2_fan()).unwrap();
        // Drop (0,1) so the X1-sharing pair loses its difference root.
        roots.retain(|r| r.alpha != ivec(&[0, 1]));
        let report = check_triple(&roots);
        assert!(!report.is_ok());
    }

    #[test]
    fn independence_lemma() {
        let fan = p2_fan();
        let roots = demazure_roots(&fan).unwrap();
        // Psi from the acceptance functional (0, 1): {alpha_1 = (-1, 1)}.
        let report =
            check_independent(&roots, &[ivec(&[-1, 1])], &fan).unwrap();
        assert!(report.is_ok());
        // Full A2 system under lex.
        let mut rd = phi(&roots, &stable(&[]), &fan).unwrap();
        rd.apply_positivity(&Positivity::Lex).unwrap();
        let report = check_independent(&roots, &rd.psi, &fan).unwrap();
        assert!(report.is_ok());
        // A fake Psi with coinciding moved rays is caught.
        let report =
            check_independent(&roots, &[ivec(&[-1, 0]), ivec(&[-1, 1])], &fan).unwrap();
        assert!(!report.is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        /// Property: oracle equivalence and per-root uniqueness of the moved
        /// ray on generated smooth complete fans.
        #[test]
        fn prop_oracle_equivalence(seed in 0u64..300, rank in 1usize..=3, subs in 0usize..=2) {
            let fan = crate::generate::random_smooth_complete_fan(seed, rank, subs);
            let roots = demazure_roots(&fan).unwrap();
            let vertices = root_polytope_vertices(&fan).unwrap();
            let bound = vertex_bound(&vertices).to_i64().unwrap();
            prop_assert_eq!(&roots, &roots_oracle(&fan, bound).unwrap());
            for r in &roots {
                // Exactly one ray pairs to -1.
                let count = fan
                    .rays()
                    .values()
                    .filter(|v| dot(v, &r.alpha) == int(-1))
                    .count();
                prop_assert_eq!(count, 1);
            }
        }

        /// Property: Phi is closed under negation for any stable set.
        #[test]
        fn prop_phi_negation_closed(seed in 0u64..200, mask in 0usize..32) {
            let fan = crate::generate::random_smooth_complete_fan(seed, 2, 1);
            let roots = demazure_roots(&fan).unwrap();
            let names: Vec<String> = fan.rays().keys().cloned().collect();
            let stable: BTreeSet<String> = names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << (i % 5)) != 0)
                .map(|(_, n)| n.clone())
                .collect();
            let rd = phi(&roots, &stable, &fan).unwrap();
            let set: BTreeSet<Vec<Int>> = rd.phi.iter().cloned().collect();
            for alpha in &rd.phi {
                prop_assert!(set.contains(&neg_vec(alpha)));
            }
        }
    }
}
