//! JSON arrangement files.
//!
//! ```json
//! {"version": 1, "lines": [{"id": "x", "start_ray": ["-1", "0"],
//!   "vertices": [["0", "0"]], "end_ray": ["1", "0"]}]}
//! ```
//!
//! Numbers are exact rationals written as strings, `"p/q"` or `"p"`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::geom::{Dir, Point};
use crate::model::{LineId, Topoline};
use crate::projective::ProjectiveStructure;
use crate::reglue::ReglueStep;
use crate::scalar::Scalar;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineRecord {
    pub id: String,
    pub start_ray: [String; 2],
    pub vertices: Vec<[String; 2]>,
    pub end_ray: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub version: u32,
    pub lines: Vec<LineRecord>,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("line {line}: {field}: cannot read {text:?} as a rational")]
    Number {
        line: String,
        field: &'static str,
        text: String,
    },
    #[error("line {line}: {field} is the zero vector")]
    ZeroDirection { line: String, field: &'static str },
}

fn pair<T: Scalar>(x: &T, y: &T) -> [String; 2] {
    [x.to_string(), y.to_string()]
}

impl ArrangementFile {
    pub fn from_lines<T: Scalar>(lines: &[Topoline<T>]) -> Self {
        ArrangementFile {
            version: FORMAT_VERSION,
            lines: lines
                .iter()
                .map(|l| LineRecord {
                    id: l.id.to_string(),
                    start_ray: pair(l.start_ray.dx(), l.start_ray.dy()),
                    vertices: l.vertices.iter().map(|v| pair(&v.x, &v.y)).collect(),
                    end_ray: pair(l.end_ray.dx(), l.end_ray.dy()),
                })
                .collect(),
        }
    }

    pub fn to_lines<T: Scalar>(&self) -> Result<Vec<Topoline<T>>, FormatError> {
        if self.version != FORMAT_VERSION {
            return Err(FormatError::Version(self.version));
        }
        self.lines
            .iter()
            .map(|r| {
                let num = |field: &'static str, s: &str| {
                    s.trim().parse::<T>().map_err(|_| FormatError::Number {
                        line: r.id.clone(),
                        field,
                        text: s.to_string(),
                    })
                };
                let dir = |field: &'static str, p: &[String; 2]| -> Result<Dir<T>, FormatError> {
                    Dir::new(num(field, &p[0])?, num(field, &p[1])?).ok_or(FormatError::ZeroDirection {
                        line: r.id.clone(),
                        field,
                    })
                };
                let vertices = r
                    .vertices
                    .iter()
                    .map(|v| Ok(Point::new(num("vertices", &v[0])?, num("vertices", &v[1])?)))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                Ok(Topoline::new(
                    LineId::from(r.id.as_str()),
                    dir("start_ray", &r.start_ray)?,
                    vertices,
                    dir("end_ray", &r.end_ray)?,
                ))
            })
            .collect()
    }
}

pub fn parse_arrangement_file<T: Scalar>(text: &str) -> Result<Vec<Topoline<T>>, FormatError> {
    let file: ArrangementFile = serde_json::from_str(text)?;
    file.to_lines()
}

/// Canonical text: reduced rationals, primitive directions, two-space
/// indentation, trailing newline.
pub fn emit_arrangement_file<T: Scalar>(lines: &[Topoline<T>]) -> String {
    let mut s = serde_json::to_string_pretty(&ArrangementFile::from_lines(lines)).expect("serializable");
    s.push('\n');
    s
}

fn point_json<T: Scalar>(p: &Point<T>) -> Value {
    json!([p.x.to_string(), p.y.to_string()])
}

fn dir_json<T: Scalar>(d: &Dir<T>) -> Value {
    json!([d.dx().to_string(), d.dy().to_string()])
}

pub fn reglue_steps_json<T: Scalar>(steps: &[ReglueStep<T>]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| {
                json!({
                    "point": point_json(&s.point.location),
                    "old_ids": s.old_ids.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
                    "branch_cycle": s.point.branch_cycle.iter().map(|b| json!({
                        "line": b.line_id.to_string(),
                        "half": b.half.sign().to_string(),
                        "dir": dir_json(&b.outgoing_dir),
                    })).collect::<Vec<_>>(),
                    "new_lines": s.new_lines.iter().map(|l| json!({
                        "id": l.id.to_string(),
                        "start_ray": dir_json(&l.start_ray),
                        "vertices": l.vertices.iter().map(point_json).collect::<Vec<_>>(),
                        "end_ray": dir_json(&l.end_ray),
                    })).collect::<Vec<_>>(),
                    "noncrossing_before": s.noncrossing_before,
                    "noncrossing_after": s.noncrossing_after,
                })
            })
            .collect(),
    )
}

/// Ideal points in cyclic order and the incidence of lines with them.
pub fn projective_json<T: Scalar>(s: &ProjectiveStructure<T>) -> Value {
    json!({
        "ideal_points": s.ideal_points.iter().enumerate().map(|(i, p)| json!({
            "index": i,
            "lines": p.lines.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "direction": dir_json(&p.direction),
        })).collect::<Vec<_>>(),
        "incidences": s.incidences.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "line_at_infinity": (0..s.ideal_points.len()).collect::<Vec<_>>(),
        "inner_box": [point_json(&s.tail_order.inner.min), point_json(&s.tail_order.inner.max)],
        "outer_box": [point_json(&s.outer.min), point_json(&s.outer.max)],
    })
}

/// Short summary of an arrangement: points with their lines and the pair
/// table.
pub fn arrangement_summary_json<T: Scalar>(arr: &Arrangement<T>) -> Value {
    json!({
        "lines": arr.lines().len(),
        "points": arr.points().iter().map(|p| json!({
            "at": point_json(&p.location),
            "lines": p.lines.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "pairs": arr.pair_table().iter().map(|((a, b), c)| json!([a.to_string(), b.to_string(), format!("{c:?}").to_lowercase()])).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn round_trip() {
        let text = r#"{"version": 1, "lines": [
            {"id": "a", "start_ray": ["-2", "0"], "vertices": [["1/2", "-3/6"], ["4", "1"]], "end_ray": ["0", "3/2"]}
        ]}"#;
        let lines: Vec<Topoline<Q>> = parse_arrangement_file(text).unwrap();
        let canon = emit_arrangement_file(&lines);
        assert!(canon.contains("\"-1/2\""));
        assert!(canon.contains("[\n        \"0\",\n        \"1\"\n      ]"));
        let again: Vec<Topoline<Q>> = parse_arrangement_file(&canon).unwrap();
        assert_eq!(again, lines);
        assert_eq!(emit_arrangement_file(&again), canon);
    }

    #[test]
    fn errors() {
        let bad = |t: &str| parse_arrangement_file::<Q>(t).unwrap_err().to_string();
        assert!(bad("{").starts_with("malformed JSON"));
        assert_eq!(bad(r#"{"version": 2, "lines": []}"#), "unsupported format version 2");
        assert!(bad(
            r#"{"version": 1, "lines": [{"id": "a", "start_ray": ["x", "0"], "vertices": [], "end_ray": ["1", "0"]}]}"#
        )
        .contains("cannot read \"x\""));
        assert!(bad(
            r#"{"version": 1, "lines": [{"id": "a", "start_ray": ["0", "0"], "vertices": [], "end_ray": ["1", "0"]}]}"#
        )
        .contains("zero vector"));
        assert!(bad(r#"{"version": 1, "lines": [], "extra": 1}"#).contains("unknown field"));
    }
}
