//! Bundled example inputs and frozen expected outputs.
//!
//! The inputs come from the generators in `generate`. The golden files are
//! hand-derived literals: tests compare pipeline output against them, so
//! the suite is checked against worked examples rather than against itself.

use crate::error::Result;
use crate::fan::Fan;
use crate::generate::{hirzebruch, product, projective_space};
use crate::io::{fan_value, spherical_value, to_pretty};
use crate::matrix::ivec;
use crate::spherical::SphericalData;
use serde_json::Value;

/// Rank-2 toroidal instance used across the suite: one nonlinear divisor
/// dual to the spherical root, a projective-line fiber, and one color.
pub fn synthetic_spherical() -> SphericalData {
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
    .expect("fixed fan is well formed");
    SphericalData::new(
        2,
        vec![("s1".to_string(), ivec(&[1, 0]))],
        vec![("Z1".to_string(), ivec(&[1, 0]))],
        vec!["alpha1".to_string()],
        fan,
    )
    .expect("fixed data is well formed")
}

/// Rank-one instance with a single nonlinear divisor and a point fiber.
pub fn rank_one_wonderful() -> SphericalData {
    let fan = Fan::new(
        1,
        vec![("E".to_string(), ivec(&[-1]))],
        vec![vec!["E".to_string()]],
        Some(vec![ivec(&[-1])]),
    )
    .expect("fixed fan is well formed");
    SphericalData::new(
        1,
        vec![("s1".to_string(), ivec(&[1]))],
        Vec::new(),
        Vec::new(),
        fan,
    )
    .expect("fixed data is well formed")
}

/// The bundled toric fans by file stem.
pub fn bundled_fans() -> Vec<(String, Fan)> {
    let p1 = projective_space(1);
    vec![
        ("p1".to_string(), p1.clone()),
        ("p2".to_string(), projective_space(2)),
        ("p3".to_string(), projective_space(3)),
        ("p1xp1".to_string(), product(&p1, &p1).expect("product of fixed fans")),
        ("f0".to_string(), hirzebruch(0)),
        ("f1".to_string(), hirzebruch(1)),
        ("f2".to_string(), hirzebruch(2)),
        ("f3".to_string(), hirzebruch(3)),
    ]
}

/// The bundled spherical instances by file stem.
pub fn bundled_spherical() -> Vec<(String, SphericalData)> {
    vec![
        ("synthetic".to_string(), synthetic_spherical()),
        ("wonderful1".to_string(), rank_one_wonderful()),
    ]
}

const P1_DEMAZURE: &str = r#"{
  "count": 2,
  "roots": [
    {"alpha": [-1], "moved_ray": "X1"},
    {"alpha": [1], "moved_ray": "X2"}
  ]
}"#;

const F1_DEMAZURE: &str = r#"{
  "count": 4,
  "roots": [
    {"alpha": [-1, 0], "moved_ray": "H1"},
    {"alpha": [0, 1], "moved_ray": "H4"},
    {"alpha": [1, 0], "moved_ray": "H3"},
    {"alpha": [1, 1], "moved_ray": "H4"}
  ]
}"#;

const P1XP1_DEMAZURE: &str = r#"{
  "count": 4,
  "roots": [
    {"alpha": [-1, 0], "moved_ray": "a_X1"},
    {"alpha": [0, -1], "moved_ray": "b_X1"},
    {"alpha": [0, 1], "moved_ray": "b_X2"},
    {"alpha": [1, 0], "moved_ray": "a_X2"}
  ]
}"#;

// Projective plane, stable set {X3}, positivity functional (0, 1).
const P2_LEVI_STABLE_X3: &str = r#"{
  "stable": ["X3"],
  "moved": ["X1", "X2"],
  "phi": [[-1, 1], [1, -1]],
  "phi_plus": [[-1, 1]],
  "psi": [[-1, 1]],
  "lambda_a_basis": [[0, 1]],
  "na_basis": [[1, 1]],
  "boundary_a": ["X3"],
  "colors_a": {"X2": [1]},
  "pa_simple_roots": [],
  "colors_independent": true,
  "colored_fan": [
    {"colors": [], "rays": []},
    {"colors": [], "rays": [[-1]]},
    {"colors": ["X2"], "rays": [[1]]}
  ],
  "horospherical": true
}"#;

const P2_ORBITS_STABLE_X3: &str = r#"{
  "a_orbits": 3,
  "elements": [
    {"colors": [], "rays": []},
    {"colors": [], "rays": [[-1]]},
    {"colors": ["X2"], "rays": [[1]]}
  ],
  "edges": [[0, 1], [0, 2]],
  "collapse": [0, 0, 0, 1, 2, 1, 1],
  "g_orbits": 7,
  "g_elements": [[], ["X1"], ["X2"], ["X3"], ["X1", "X2"], ["X1", "X3"], ["X2", "X3"]],
  "g_edges": [[0, 1], [0, 2], [0, 3], [1, 4], [1, 5], [2, 4], [2, 6], [3, 5], [3, 6]]
}"#;

// With every ray stable the A-orbit poset is the toric orbit poset.
const P2_ORBITS_STABLE_ALL: &str = r#"{
  "a_orbits": 7,
  "elements": [
    {"colors": [], "rays": []},
    {"colors": [], "rays": [[-1, -1]]},
    {"colors": [], "rays": [[-1, -1], [0, 1]]},
    {"colors": [], "rays": [[-1, -1], [1, 0]]},
    {"colors": [], "rays": [[0, 1]]},
    {"colors": [], "rays": [[0, 1], [1, 0]]},
    {"colors": [], "rays": [[1, 0]]}
  ],
  "edges": [[0, 1], [0, 4], [0, 6], [1, 2], [1, 3], [4, 2], [4, 5], [6, 3], [6, 5]],
  "collapse": [0, 6, 4, 1, 5, 3, 2],
  "g_orbits": 7,
  "g_elements": [[], ["X1"], ["X2"], ["X3"], ["X1", "X2"], ["X1", "X3"], ["X2", "X3"]],
  "g_edges": [[0, 1], [0, 2], [0, 3], [1, 4], [1, 5], [2, 4], [2, 6], [3, 5], [3, 6]]
}"#;

// Synthetic instance, stable set {E1}, lexicographic positivity.
const SYNTHETIC_LINEAR_STABLE_E1: &str = r#"{
  "stable": ["E1"],
  "moved": ["D2", "D3"],
  "r_set": [[-1], [1]],
  "phi": [[-1], [1]],
  "phi_plus": [[1]],
  "psi": [[1]],
  "pivots": [
    {"alpha": [-1], "moved_ray": "D2"},
    {"alpha": [1], "moved_ray": "D3"}
  ],
  "phi_contained_in_fiber": true,
  "fiber_fan": {
    "rank": 1,
    "rays": {"D2": [1], "D3": [-1]},
    "cones": [["D2"], ["D3"]]
  },
  "lambda_a_basis": [[1, 0]],
  "boundary_a": ["E1"],
  "colors_a": {"D2": [0], "Z1": [1]},
  "pa_simple_roots": [],
  "pa_sp_labels": ["alpha1"],
  "colored_fan": [
    {"colors": [], "rays": []},
    {"colors": [], "rays": [[-1]]}
  ],
  "sigma_preserved": true
}"#;

// Synthetic instance, stable set {D2, D3}: the nonlinear divisor E1 moves.
const SYNTHETIC_NONLINEAR_STABLE_D2_D3: &str = r#"{
  "stable": ["D2", "D3"],
  "moved": ["E1"],
  "sigma_of_moved": {"E1": "s1"},
  "lambda_a_basis": [[0, 1]],
  "sigma_span_basis": [[1, 0]],
  "direct_sum": true,
  "restricted": {
    "rank": 1,
    "sigma": {},
    "colors": {"Z1": [0]},
    "sp": ["alpha1"],
    "fan": {
      "rank": 1,
      "rays": {"D2": [1], "D3": [-1]},
      "cones": [["D2"], ["D3"]]
    }
  }
}"#;

const GOLDENS: &[(&str, &str)] = &[
    ("p1_demazure.json", P1_DEMAZURE),
    ("f1_demazure.json", F1_DEMAZURE),
    ("p1xp1_demazure.json", P1XP1_DEMAZURE),
    ("p2_levi_stable_X3.json", P2_LEVI_STABLE_X3),
    ("p2_orbits_stable_X3.json", P2_ORBITS_STABLE_X3),
    ("p2_orbits_stable_all.json", P2_ORBITS_STABLE_ALL),
    ("synthetic_linear_stable_E1.json", SYNTHETIC_LINEAR_STABLE_E1),
    ("synthetic_nonlinear_stable_D2_D3.json", SYNTHETIC_NONLINEAR_STABLE_D2_D3),
];

/// Parsed golden output by file name.
pub fn golden_value(name: &str) -> Option<Value> {
    GOLDENS.iter().find(|(n, _)| *n == name).map(|(_, text)| {
        serde_json::from_str(text).expect("bundled golden is valid JSON")
    })
}

/// Every bundled file as (relative path, contents): inputs at the top
/// level, frozen goldens under golden/. Contents are pretty-printed with
/// sorted keys, matching CLI output byte for byte.
pub fn corpus_files() -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (stem, f) in bundled_fans() {
        out.push((format!("{stem}.json"), to_pretty(&fan_value(&f)?)));
    }
    for (stem, sd) in bundled_spherical() {
        out.push((format!("{stem}.json"), to_pretty(&spherical_value(&sd)?)));
    }
    for (name, text) in GOLDENS {
        let v: Value = serde_json::from_str(text).expect("bundled golden is valid JSON");
        out.push((format!("golden/{name}"), to_pretty(&v)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demazure::{demazure_roots, phi, positive_system, Positivity};
    use crate::io::{
        demazure_value, levi_value, linear_value, nonlinear_value, orbits_value, parse_input,
        Input,
    };
    use crate::levi::{
        a_orbit_poset, check_color_independence, check_horospherical, colored_fan,
        levi_invariants,
    };
    use crate::linear::{
        linear_colored_fan, linear_levi_invariants, restricted_roots, sigma_preservation_check,
    };
    use std::collections::BTreeSet;

    fn names(list: &[&str]) -> BTreeSet<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn bundled_inputs_parse_and_validate() {
        let files = corpus_files().unwrap();
        assert_eq!(files.len(), bundled_fans().len() + bundled_spherical().len() + GOLDENS.len());
        let mut seen = BTreeSet::new();
        for (path, text) in &files {
            assert!(seen.insert(path.clone()), "duplicate corpus path {path}");
            if path.starts_with("golden/") {
                let _: Value = serde_json::from_str(text).unwrap();
                continue;
            }
            match parse_input(text).unwrap() {
                Input::Fan(f) => {
                    let report = f.validate();
                    assert!(report.is_valid(), "{path}: {:?}", report.violations());
                    assert!(f.is_smooth(), "{path} is not smooth");
                    assert!(f.is_complete().unwrap(), "{path} is not complete");
                }
                Input::Spherical(sd) => sd.validate().unwrap_or_else(|e| {
                    panic!("{path}: {e}");
                }),
            }
        }
    }

    #[test]
    fn demazure_goldens_match_the_pipeline() {
        for (stem, golden) in [
            ("p1", "p1_demazure.json"),
            ("f1", "f1_demazure.json"),
            ("p1xp1", "p1xp1_demazure.json"),
        ] {
            let f = bundled_fans()
                .into_iter()
                .find(|(s, _)| s == stem)
                .map(|(_, f)| f)
                .unwrap();
            let roots = demazure_roots(&f).unwrap();
            let got = demazure_value(&roots).unwrap();
            assert_eq!(got, golden_value(golden).unwrap(), "{stem}");
        }
    }

    fn p2_root_data(stable: &[&str], positivity: &Positivity) -> (Fan, crate::demazure::RootData) {
        let f = projective_space(2);
        let roots = demazure_roots(&f).unwrap();
        let mut rd = phi(&roots, &names(stable), &f).unwrap();
        let (plus, psi) = positive_system(&rd.phi, positivity).unwrap();
        rd.phi_plus = plus;
        rd.psi = psi;
        (f, rd)
    }

    #[test]
    fn levi_golden_matches_the_pipeline() {
        let (f, rd) = p2_root_data(&["X3"], &Positivity::Vector(ivec(&[0, 1])));
        let inv = levi_invariants(&f, &rd).unwrap();
        let cf = colored_fan(&f, &rd, &inv).unwrap();
        let horo = check_horospherical(&cf).unwrap();
        let indep = check_color_independence(&inv);
        let got = levi_value(&rd, &inv, &cf, horo, indep).unwrap();
        assert_eq!(got, golden_value("p2_levi_stable_X3.json").unwrap());
    }

    #[test]
    fn orbit_goldens_match_the_pipeline() {
        for (stable, positivity, golden) in [
            (
                vec!["X3"],
                Positivity::Vector(ivec(&[0, 1])),
                "p2_orbits_stable_X3.json",
            ),
            (
                vec!["X1", "X2", "X3"],
                Positivity::Lex,
                "p2_orbits_stable_all.json",
            ),
        ] {
            let (f, rd) = p2_root_data(&stable, &positivity);
            let inv = levi_invariants(&f, &rd).unwrap();
            let cf = colored_fan(&f, &rd, &inv).unwrap();
            let g = f.orbit_closure_poset();
            let a = a_orbit_poset(&f, &rd, &inv, &cf).unwrap();
            let got = orbits_value(&g, &a).unwrap();
            assert_eq!(got, golden_value(golden).unwrap(), "{golden}");
        }
    }

    #[test]
    fn linear_golden_matches_the_pipeline() {
        let sd = synthetic_spherical();
        let mut rr = restricted_roots(&sd, &names(&["E1"])).unwrap();
        rr.apply_positivity(&Positivity::Lex).unwrap();
        let inv = linear_levi_invariants(&sd, &rr).unwrap();
        let cf = linear_colored_fan(&sd, &inv).unwrap();
        let preserved = sigma_preservation_check(&sd, &inv, &cf).unwrap();
        let got = linear_value(&rr, &inv, &cf, preserved).unwrap();
        assert_eq!(got, golden_value("synthetic_linear_stable_E1.json").unwrap());
    }

    #[test]
    fn nonlinear_golden_matches_the_pipeline() {
        let sd = synthetic_spherical();
        let stable = names(&["D2", "D3"]);
        let moved = names(&["E1"]);
        let assignment = sd.sigma_of_moved(&moved).unwrap();
        let (lambda, span) = sd.lambda_decomposition(&moved).unwrap();
        let restricted = sd.nonlinear_restrict(&stable).unwrap();
        let got =
            nonlinear_value(&stable, &moved, &assignment, &lambda, &span, &restricted).unwrap();
        assert_eq!(
            got,
            golden_value("synthetic_nonlinear_stable_D2_D3.json").unwrap()
        );
    }
}
