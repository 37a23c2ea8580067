//! JSON input and output for fans, spherical data, and computed reports.
//!
//! Input coordinates must fit in i64; larger values are rejected while
//! parsing. Output goes through the same boundary: a computed value outside
//! i64 raises IntegerTooLargeForOutput instead of being rounded. Emitted
//! objects have sorted keys, so serialization is byte-deterministic.

use crate::demazure::{CheckReport, DemazureRoot, RootData};
use crate::error::{Error, Result};
use crate::fan::{Fan, OrbitPoset};
use crate::lattice::Sublattice;
use crate::levi::{AOrbitPoset, ColoredCone, ColoredFan};
use crate::levi::LeviInvariants;
use crate::linear::{LinearLeviInvariants, RestrictedRoots};
use crate::matrix::Int;
use crate::spherical::SphericalData;
use indexmap::IndexMap;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, BTreeSet};

/// A parsed input file: a bare fan, or spherical data wrapping one.
pub enum Input {
    Fan(Fan),
    Spherical(SphericalData),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SupportJson {
    inequalities: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanJson {
    rank: usize,
    rays: IndexMap<String, Vec<i64>>,
    cones: Vec<Vec<String>>,
    #[serde(default)]
    support: Option<SupportJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SphericalJson {
    rank: usize,
    #[serde(default)]
    sigma: IndexMap<String, Vec<i64>>,
    #[serde(default)]
    colors: IndexMap<String, Vec<i64>>,
    #[serde(default)]
    sp: Vec<String>,
    fan: FanJson,
}

fn int_rows(rows: Vec<Vec<i64>>) -> Vec<Vec<Int>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(Int::from).collect())
        .collect()
}

fn named_int_vectors(map: IndexMap<String, Vec<i64>>) -> Vec<(String, Vec<Int>)> {
    map.into_iter()
        .map(|(name, v)| (name, v.into_iter().map(Int::from).collect()))
        .collect()
}

fn fan_from_json(fj: FanJson) -> Result<Fan> {
    let support = fj.support.map(|s| int_rows(s.inequalities));
    Fan::new(fj.rank, named_int_vectors(fj.rays), fj.cones, support)
}

fn spherical_from_json(sj: SphericalJson) -> Result<SphericalData> {
    let fan = fan_from_json(sj.fan)?;
    SphericalData::new(
        sj.rank,
        named_int_vectors(sj.sigma),
        named_int_vectors(sj.colors),
        sj.sp,
        fan,
    )
}

/// Parse a fan file. Shape errors (lengths, duplicate names) surface as the
/// construction errors of Fan::new.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let fj: FanJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    fan_from_json(fj)
}

/// Parse a spherical-data file ("sigma", "colors", "sp" default to empty).
pub fn parse_spherical(text: &str) -> Result<SphericalData> {
    let sj: SphericalJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    spherical_from_json(sj)
}

/// Parse either input kind: an object with a top-level "fan" key is
/// spherical data, anything else must be a bare fan.
pub fn parse_input(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let spherical = v.as_object().is_some_and(|o| o.contains_key("fan"));
    if spherical {
        let sj: SphericalJson =
            serde_json::from_value(v).map_err(|e| Error::Json(e.to_string()))?;
        Ok(Input::Spherical(spherical_from_json(sj)?))
    } else {
        let fj: FanJson = serde_json::from_value(v).map_err(|e| Error::Json(e.to_string()))?;
        Ok(Input::Fan(fan_from_json(fj)?))
    }
}

fn out_i64(x: &Int, context: &str) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::IntegerTooLargeForOutput(format!("{context}: {x}")))
}

fn ints_value(v: &[Int], context: &str) -> Result<Value> {
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        out.push(Value::from(out_i64(x, context)?));
    }
    Ok(Value::Array(out))
}

fn rows_value(rows: &[Vec<Int>], context: &str) -> Result<Value> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        out.push(ints_value(row, context)?);
    }
    Ok(Value::Array(out))
}

fn named_vectors_value<'a, I>(entries: I) -> Result<Value>
where
    I: IntoIterator<Item = (&'a String, &'a Vec<Int>)>,
{
    let mut map = Map::new();
    for (name, v) in entries {
        map.insert(name.clone(), ints_value(v, name)?);
    }
    Ok(Value::Object(map))
}

/// Serialize a fan in the input schema, so the output re-parses.
pub fn fan_value(f: &Fan) -> Result<Value> {
    let mut map = Map::new();
    map.insert("rank".into(), Value::from(f.ambient_rank()));
    map.insert("rays".into(), named_vectors_value(f.rays())?);
    map.insert("cones".into(), json!(f.max_cones()));
    if let Some(s) = f.support() {
        let rows = rows_value(s.inequalities(), "support inequality")?;
        map.insert("support".into(), json!({ "inequalities": rows }));
    }
    Ok(Value::Object(map))
}

/// Serialize spherical data in the input schema, so the output re-parses.
pub fn spherical_value(sd: &SphericalData) -> Result<Value> {
    Ok(json!({
        "rank": sd.rank(),
        "sigma": named_vectors_value(sd.sigma())?,
        "colors": named_vectors_value(sd.colors())?,
        "sp": sd.sp_simple_roots(),
        "fan": fan_value(sd.fan())?,
    }))
}

/// Validation verdict for the CLI: input kind, flag, and violation messages.
pub fn validation_value(kind: &str, valid: bool, violations: &[String]) -> Value {
    json!({ "input": kind, "valid": valid, "violations": violations })
}

fn root_items(roots: &[DemazureRoot]) -> Result<Vec<Value>> {
    let mut items = Vec::with_capacity(roots.len());
    for r in roots {
        items.push(json!({
            "alpha": ints_value(&r.alpha, &r.moved_ray)?,
            "moved_ray": r.moved_ray,
        }));
    }
    Ok(items)
}

/// Root list report: count plus (alpha, moved ray) pairs in sorted order.
pub fn demazure_value(roots: &[DemazureRoot]) -> Result<Value> {
    Ok(json!({ "count": roots.len(), "roots": root_items(roots)? }))
}

/// Root-system report: the stable split, full root list, Phi and its
/// positive and simple systems.
pub fn root_data_value(rd: &RootData) -> Result<Value> {
    Ok(json!({
        "stable": rd.stable_set,
        "moved": rd.moved_set,
        "roots": root_items(&rd.all_roots)?,
        "phi": rows_value(&rd.phi, "phi")?,
        "phi_plus": rows_value(&rd.phi_plus, "phi_plus")?,
        "psi": rows_value(&rd.psi, "psi")?,
    }))
}

fn colored_cone_value(cc: &ColoredCone) -> Result<Value> {
    Ok(json!({
        "rays": rows_value(cc.cone.rays(), "colored cone ray")?,
        "colors": cc.colors,
    }))
}

/// The colored fan as an array of (rays, colors) objects in canonical order.
pub fn colored_fan_value(cf: &ColoredFan) -> Result<Value> {
    let mut cones = Vec::with_capacity(cf.cones.len());
    for cc in &cf.cones {
        cones.push(colored_cone_value(cc)?);
    }
    Ok(Value::Array(cones))
}

/// Full abelian-quotient report for a stable set on a fan.
pub fn levi_value(
    rd: &RootData,
    inv: &LeviInvariants,
    cf: &ColoredFan,
    horospherical: bool,
    colors_independent: bool,
) -> Result<Value> {
    Ok(json!({
        "stable": rd.stable_set,
        "moved": rd.moved_set,
        "phi": rows_value(&rd.phi, "phi")?,
        "phi_plus": rows_value(&rd.phi_plus, "phi_plus")?,
        "psi": rows_value(&rd.psi, "psi")?,
        "lambda_a_basis": rows_value(&inv.lambda_a.basis_rows(), "lambda_a basis")?,
        "na_basis": rows_value(&inv.na_basis, "na basis")?,
        "boundary_a": inv.boundary_a,
        "colors_a": named_vectors_value(&inv.colors_a)?,
        "pa_simple_roots": rows_value(&inv.pa_simple_roots, "pa simple root")?,
        "colors_independent": colors_independent,
        "colored_fan": colored_fan_value(cf)?,
        "horospherical": horospherical,
    }))
}

/// Colored fan plus the horosphericity flag and the face-check report.
pub fn colored_fan_report_value(
    cf: &ColoredFan,
    horospherical: bool,
    empty_color_face: &CheckReport,
) -> Result<Value> {
    Ok(json!({
        "colored_fan": colored_fan_value(cf)?,
        "horospherical": horospherical,
        "empty_color_face": {
            "checked": empty_color_face.checked,
            "violations": empty_color_face.violations,
        },
    }))
}

/// Both orbit posets and the collapse map between them. The G-poset passed
/// in must be the one the A-poset was built from.
pub fn orbits_value(g: &OrbitPoset, a: &AOrbitPoset) -> Result<Value> {
    if g.elements != a.g_elements {
        return Err(Error::InternalInvariant(
            "orbit posets were computed from different fans".into(),
        ));
    }
    let mut edges = a.edges.clone();
    edges.sort();
    edges.dedup();
    let mut g_edges = g.edges.clone();
    g_edges.sort();
    g_edges.dedup();
    let mut elements = Vec::with_capacity(a.elements.len());
    for cc in &a.elements {
        elements.push(colored_cone_value(cc)?);
    }
    Ok(json!({
        "a_orbits": a.elements.len(),
        "elements": elements,
        "edges": edges,
        "collapse": a.collapse,
        "g_orbits": g.elements.len(),
        "g_elements": g.elements,
        "g_edges": g_edges,
    }))
}

/// Report for the nonlinear-divisor restriction: the spherical-root
/// assignment, the two summands of the decomposition, and the restricted
/// data (emitted in the input schema, so it can be fed back in).
pub fn nonlinear_value(
    stable: &BTreeSet<String>,
    moved: &BTreeSet<String>,
    assignment: &BTreeMap<String, String>,
    lambda: &Sublattice,
    span: &Sublattice,
    restricted: &SphericalData,
) -> Result<Value> {
    Ok(json!({
        "stable": stable,
        "moved": moved,
        "sigma_of_moved": assignment,
        "lambda_a_basis": rows_value(&lambda.basis_rows(), "lambda_a basis")?,
        "sigma_span_basis": rows_value(&span.basis_rows(), "sigma span basis")?,
        "direct_sum": true,
        "restricted": spherical_value(restricted)?,
    }))
}

/// Full linear-case report: restricted roots, fiber fan, invariants of the
/// abelian quotient, colored fan, and the preservation verdict.
pub fn linear_value(
    rr: &RestrictedRoots,
    inv: &LinearLeviInvariants,
    cf: &ColoredFan,
    sigma_preserved: bool,
) -> Result<Value> {
    let mut pivots = Vec::with_capacity(rr.pivots.len());
    for (alpha, name) in &rr.pivots {
        pivots.push(json!({
            "alpha": ints_value(alpha, name)?,
            "moved_ray": name,
        }));
    }
    Ok(json!({
        "stable": rr.stable_set,
        "moved": rr.moved_set,
        "r_set": rows_value(&rr.r_set, "restricted root")?,
        "phi": rows_value(&rr.phi, "phi")?,
        "phi_plus": rows_value(&rr.phi_plus, "phi_plus")?,
        "psi": rows_value(&rr.psi, "psi")?,
        "pivots": pivots,
        "phi_contained_in_fiber": true,
        "fiber_fan": fan_value(inv.fiber())?,
        "lambda_a_basis": rows_value(&inv.lambda_a.basis_rows(), "lambda_a basis")?,
        "boundary_a": inv.boundary_a,
        "colors_a": named_vectors_value(&inv.colors_a)?,
        "pa_simple_roots": rows_value(&inv.pa_simple_roots, "pa simple root")?,
        "pa_sp_labels": inv.pa_sp_labels,
        "colored_fan": colored_fan_value(cf)?,
        "sigma_preserved": sigma_preserved,
    }))
}

/// Deterministic pretty printer used by the CLI and the bundled corpus.
pub fn to_pretty(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("JSON value serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::projective_space;
    use crate::matrix::{int, ivec};

    fn synthetic_s() -> SphericalData {
        let fan = Fan::new(
            2,
            vec![
                ("E1".into(), ivec(&[-1, 0])),
                ("D2".into(), ivec(&[0, 1])),
                ("D3".into(), ivec(&[0, -1])),
            ],
            vec![
                vec!["E1".into(), "D2".into()],
                vec!["E1".into(), "D3".into()],
            ],
            Some(vec![ivec(&[-1, 0])]),
        )
        .unwrap();
        SphericalData::new(
            2,
            vec![("s1".into(), ivec(&[1, 0]))],
            vec![("Z1".into(), ivec(&[1, 0]))],
            vec!["alpha1".into()],
            fan,
        )
        .unwrap()
    }

    #[test]
    fn fan_round_trip_keeps_structure() {
        let f = projective_space(2);
        let text = to_pretty(&fan_value(&f).unwrap());
        let g = parse_fan(&text).unwrap();
        assert_eq!(g.ambient_rank(), f.ambient_rank());
        assert_eq!(g.rays(), f.rays());
        assert_eq!(g.max_cones(), f.max_cones());
        assert!(g.support().is_none());
    }

    #[test]
    fn support_and_spherical_round_trip() {
        let sd = synthetic_s();
        let text = to_pretty(&spherical_value(&sd).unwrap());
        let back = parse_spherical(&text).unwrap();
        assert_eq!(back.rank(), sd.rank());
        assert_eq!(back.sigma(), sd.sigma());
        assert_eq!(back.colors(), sd.colors());
        assert_eq!(back.sp_simple_roots(), sd.sp_simple_roots());
        assert_eq!(back.fan().rays(), sd.fan().rays());
        assert_eq!(back.fan().max_cones(), sd.fan().max_cones());
        let (s, t) = (back.fan().support().unwrap(), sd.fan().support().unwrap());
        assert_eq!(s.inequalities(), t.inequalities());
    }

    #[test]
    fn input_detection_keys_on_the_fan_field() {
        let fan_text = to_pretty(&fan_value(&projective_space(1)).unwrap());
        assert!(matches!(parse_input(&fan_text), Ok(Input::Fan(_))));
        let sd_text = to_pretty(&spherical_value(&synthetic_s()).unwrap());
        assert!(matches!(parse_input(&sd_text), Ok(Input::Spherical(_))));
    }

    #[test]
    fn malformed_text_is_a_parse_error() {
        assert!(matches!(parse_input("{ not json"), Err(Error::Json(_))));
        let unknown_field = r#"{"rank": 1, "rays": {}, "cones": [], "bogus": 3}"#;
        assert!(matches!(parse_fan(unknown_field), Err(Error::Json(_))));
        let float_coord = r#"{"rank": 1, "rays": {"X1": [1.5]}, "cones": [["X1"]]}"#;
        assert!(matches!(parse_fan(float_coord), Err(Error::Json(_))));
        let too_big = r#"{"rank": 1, "rays": {"X1": [9223372036854775808]}, "cones": [["X1"]]}"#;
        assert!(matches!(parse_fan(too_big), Err(Error::Json(_))));
    }

    #[test]
    fn shape_errors_surface_from_construction() {
        let short = r#"{"rank": 2, "rays": {"X1": [1]}, "cones": [["X1"]]}"#;
        assert!(matches!(
            parse_fan(short),
            Err(Error::WrongVectorLength { .. })
        ));
        let unknown = r#"{"rank": 1, "rays": {"X1": [1]}, "cones": [["X2"]]}"#;
        assert!(matches!(parse_fan(unknown), Err(Error::UnknownRay(_))));
    }

    #[test]
    fn oversized_integers_are_rejected_on_output() {
        let huge = int(i64::MAX) + int(1);
        let f = Fan::new(
            1,
            vec![("X1".into(), vec![huge]), ("X2".into(), ivec(&[-1]))],
            vec![vec!["X1".into()], vec!["X2".into()]],
            None,
        )
        .unwrap();
        assert!(matches!(
            fan_value(&f),
            Err(Error::IntegerTooLargeForOutput(_))
        ));
    }

    #[test]
    fn pretty_output_is_stable() {
        let v = fan_value(&projective_space(3)).unwrap();
        let a = to_pretty(&v);
        let b = to_pretty(&v);
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
        // Object keys come out sorted regardless of construction order.
        let rank_pos = a.find("\"rank\"").unwrap();
        let rays_pos = a.find("\"rays\"").unwrap();
        assert!(a.find("\"cones\"").unwrap() < rank_pos);
        assert!(rank_pos < rays_pos);
    }
}
