//! JSON input and output for colored divisorial fans. Objects are keyed by
//! sorted labels throughout, so serialization is deterministic and parsing a
//! serialized fan reproduces it exactly.

use std::collections::{BTreeMap, BTreeSet};

use exact_math::{parse_rat, Int, LatticeVec, RatVec};
use num_traits::ToPrimitive;
use polyhedra::{Cone, TailedPolyhedron};
use rootdata::{DynkinComponent, DynkinType, HoroPair, RootSystem};
use serde_json::{json, Map, Value};

use crate::curve::CurveData;
use crate::divisor::{Locus, PolyhedralDivisor};
use crate::fan::{ColoredDivisorialFan, FanEntry, GroupData};
use crate::DivError;

/// Parses a fan from JSON text, reporting syntax errors with their position.
pub fn fan_from_json(text: &str) -> Result<ColoredDivisorialFan, DivError> {
    let value: Value = serde_json::from_str(text).map_err(|e| DivError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = as_object(&value, "top level")?;

    let lattice_rank = usize_field(root, "lattice_rank")?;
    let curve = parse_curve(field(root, "curve")?)?;
    let group = parse_group(field(root, "group")?, lattice_rank)?;

    let divisors = as_array(field(root, "divisors")?, "divisors")?;
    let shared_colors = shared_color_lists(root, divisors.len())?;
    let mut entries = Vec::new();
    for (i, d) in divisors.iter().enumerate() {
        entries.push(parse_divisor(d, lattice_rank, shared_colors.as_ref().map(|c| &c[i]))?);
    }
    ColoredDivisorialFan::new(curve, lattice_rank, group, entries)
}

/// Serializes a fan back to the input schema.
pub fn fan_to_json(fan: &ColoredDivisorialFan) -> String {
    let curve = json!({
        "genus": fan.curve().genus(),
        "points": fan.curve().points(),
    });
    let group = match fan.group() {
        GroupData::Torus => json!({"kind": "torus"}),
        GroupData::Horospherical { system, pair } => {
            let components: Vec<Value> = system
                .components()
                .iter()
                .map(|c| json!({"type": c.kind.to_string(), "rank": c.rank}))
                .collect();
            json!({
                "kind": "horospherical",
                "root_system": components,
                "torus_rank": system.torus_rank(),
                "I": pair.parabolic(),
                "M_basis": pair.basis(),
            })
        }
    };
    let divisors: Vec<Value> = fan
        .entries()
        .iter()
        .map(|entry| {
            let tail: Vec<Vec<i64>> = entry
                .divisor
                .tail()
                .rays()
                .iter()
                .map(|r| r.iter().map(|x| x.to_i64().expect("small ray coordinate")).collect())
                .collect();
            let locus = match entry.divisor.locus() {
                Locus::Projective => json!({"projective": true}),
                Locus::AffineRemoved(removed) => json!({"affine_removed": removed}),
            };
            let mut coefficients = Map::new();
            for (label, poly) in entry.divisor.coefficients() {
                let vertices: Vec<Vec<String>> = poly
                    .vertices()
                    .iter()
                    .map(|v| v.iter().map(exact_math::fmt_rat).collect())
                    .collect();
                coefficients.insert(label.clone(), json!({"vertices": vertices}));
            }
            json!({
                "tail": tail,
                "locus": locus,
                "coefficients": coefficients,
                "colors": entry.colors,
            })
        })
        .collect();
    let out = json!({
        "lattice_rank": fan.lattice_rank(),
        "curve": curve,
        "group": group,
        "divisors": divisors,
    });
    serde_json::to_string_pretty(&out).expect("serializable value")
}

fn parse_curve(v: &Value) -> Result<CurveData, DivError> {
    let m = as_object(v, "curve")?;
    let genus = usize_field(m, "genus")?;
    let points = as_array(field(m, "points")?, "curve points")?
        .iter()
        .map(|p| Ok(string_of(p, "point label")?.to_string()))
        .collect::<Result<Vec<String>, DivError>>()?;
    CurveData::new(genus, points)
}

fn parse_group(v: &Value, lattice_rank: usize) -> Result<GroupData, DivError> {
    let m = as_object(v, "group")?;
    match string_of(field(m, "kind")?, "group kind")? {
        "torus" => Ok(GroupData::Torus),
        "horospherical" => {
            let components = as_array(field(m, "root_system")?, "root_system")?
                .iter()
                .map(parse_component)
                .collect::<Result<Vec<_>, _>>()?;
            let torus_rank = usize_field(m, "torus_rank")?;
            let system = RootSystem::new(components, torus_rank)
                .map_err(|e| DivError::Schema(e.to_string()))?;
            let parabolic = as_array(field(m, "I")?, "I")?
                .iter()
                .map(|x| usize_of(x, "parabolic index"))
                .collect::<Result<Vec<_>, _>>()?;
            let basis = as_array(field(m, "M_basis")?, "M_basis")?
                .iter()
                .map(|row| int_row(row, "M_basis row"))
                .collect::<Result<Vec<Vec<i64>>, _>>()?;
            for row in &basis {
                if row.len() != system.character_rank() {
                    return Err(DivError::Schema(format!(
                        "M_basis rows need {} coordinates",
                        system.character_rank()
                    )));
                }
            }
            if basis.len() != lattice_rank {
                return Err(DivError::Schema(format!(
                    "M_basis needs {lattice_rank} rows to match lattice_rank"
                )));
            }
            let pair = HoroPair::new(&system, parabolic, basis)
                .map_err(|e| DivError::Schema(e.to_string()))?;
            Ok(GroupData::Horospherical { system, pair })
        }
        other => Err(DivError::Schema(format!("unknown group kind \"{other}\""))),
    }
}

fn parse_component(v: &Value) -> Result<DynkinComponent, DivError> {
    let m = as_object(v, "root_system component")?;
    let kind = match string_of(field(m, "type")?, "component type")? {
        "A" => DynkinType::A,
        "B" => DynkinType::B,
        "C" => DynkinType::C,
        "D" => DynkinType::D,
        "E" => DynkinType::E,
        "F" => DynkinType::F,
        "G" => DynkinType::G,
        other => return Err(DivError::Schema(format!("unknown Dynkin type \"{other}\""))),
    };
    Ok(DynkinComponent { kind, rank: usize_field(m, "rank")? })
}

fn shared_color_lists(
    root: &Map<String, Value>,
    divisors: usize,
) -> Result<Option<Vec<BTreeSet<usize>>>, DivError> {
    let group = as_object(field(root, "group")?, "group")?;
    let Some(lists) = group.get("colors_per_divisor") else {
        return Ok(None);
    };
    let lists = as_array(lists, "colors_per_divisor")?;
    if lists.len() != divisors {
        return Err(DivError::Schema(
            "colors_per_divisor must list one color set per divisor".into(),
        ));
    }
    let mut out = Vec::new();
    for l in lists {
        out.push(
            as_array(l, "color set")?
                .iter()
                .map(|x| usize_of(x, "color index"))
                .collect::<Result<BTreeSet<usize>, _>>()?,
        );
    }
    Ok(Some(out))
}

fn parse_divisor(
    v: &Value,
    lattice_rank: usize,
    shared_colors: Option<&BTreeSet<usize>>,
) -> Result<FanEntry, DivError> {
    let m = as_object(v, "divisor")?;
    let rays: Vec<LatticeVec> = as_array(field(m, "tail")?, "tail")?
        .iter()
        .map(|row| Ok(int_row(row, "tail ray")?.into_iter().map(Int::from).collect()))
        .collect::<Result<_, DivError>>()?;
    for r in &rays {
        if r.len() != lattice_rank {
            return Err(DivError::Schema(format!("tail rays need {lattice_rank} coordinates")));
        }
    }
    let tail = Cone::from_generators(lattice_rank, &rays);

    let locus_map = as_object(field(m, "locus")?, "locus")?;
    let locus = if locus_map.contains_key("projective") {
        Locus::Projective
    } else if let Some(removed) = locus_map.get("affine_removed") {
        let removed = as_array(removed, "affine_removed")?
            .iter()
            .map(|p| Ok(string_of(p, "removed point")?.to_string()))
            .collect::<Result<BTreeSet<String>, DivError>>()?;
        Locus::AffineRemoved(removed)
    } else {
        return Err(DivError::Schema(
            "locus must set \"projective\" or \"affine_removed\"".into(),
        ));
    };

    let mut coefficients = BTreeMap::new();
    if let Some(coeffs) = m.get("coefficients") {
        for (label, spec) in as_object(coeffs, "coefficients")? {
            let spec = as_object(spec, "coefficient")?;
            let vertices: Vec<RatVec> = as_array(field(spec, "vertices")?, "vertices")?
                .iter()
                .map(|row| rat_row(row, lattice_rank))
                .collect::<Result<_, _>>()?;
            let poly = TailedPolyhedron::new(lattice_rank, &vertices, &tail)
                .map_err(|e| DivError::Shape(e.to_string()))?;
            coefficients.insert(label.clone(), poly);
        }
    }

    let mut colors: BTreeSet<usize> = BTreeSet::new();
    if let Some(list) = m.get("colors") {
        colors = as_array(list, "colors")?
            .iter()
            .map(|x| usize_of(x, "color index"))
            .collect::<Result<_, _>>()?;
    }
    if let Some(shared) = shared_colors {
        if !colors.is_empty() && &colors != shared {
            return Err(DivError::Schema(
                "colors and colors_per_divisor disagree".into(),
            ));
        }
        colors = shared.clone();
    }

    let divisor = PolyhedralDivisor::new(tail, locus, coefficients)?;
    Ok(FanEntry { divisor, colors })
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, DivError> {
    v.as_object().ok_or_else(|| DivError::Schema(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, DivError> {
    v.as_array().ok_or_else(|| DivError::Schema(format!("{what} must be an array")))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value, DivError> {
    m.get(key).ok_or_else(|| DivError::Schema(format!("missing field \"{key}\"")))
}

fn string_of<'a>(v: &'a Value, what: &str) -> Result<&'a str, DivError> {
    v.as_str().ok_or_else(|| DivError::Schema(format!("{what} must be a string")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize, DivError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| DivError::Schema(format!("{what} must be a non-negative integer")))
}

fn usize_field(m: &Map<String, Value>, key: &str) -> Result<usize, DivError> {
    usize_of(field(m, key)?, key)
}

fn int_row(v: &Value, what: &str) -> Result<Vec<i64>, DivError> {
    as_array(v, what)?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| DivError::Schema(format!("{what} must hold integers"))))
        .collect()
}

fn rat_row(v: &Value, lattice_rank: usize) -> Result<RatVec, DivError> {
    let row = as_array(v, "vertex")?;
    if row.len() != lattice_rank {
        return Err(DivError::Schema(format!("vertices need {lattice_rank} coordinates")));
    }
    row.iter()
        .map(|x| {
            let s = string_of(x, "vertex coordinate")?;
            parse_rat(s).map_err(|_| DivError::Schema(format!("bad rational \"{s}\"")))
        })
        .collect()
}
