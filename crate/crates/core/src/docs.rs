//! Canonical JSON documents: parsing of action/decomposition inputs and
//! deterministic rendering of every report the command surface emits.
//! Struct field order is the key order on the wire; rationals are "p/q"
//! strings; Betti entries above the computed window are the literal string
//! "unknown", never omitted.

use crate::charclasses::{ClassLabel, Mode, RingReport, VanishingReport};
use crate::linalg::{BettiEntry, BettiTable, Rat};
use crate::repdecomp::{Decomposition, Field, InertiaComponent, RealGenerator};
use crate::{CoreError, Result};
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;

// --- input --------------------------------------------------------------

/// A matrix entry: an integer or a "p/q" string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RatSpec {
    Int(i64),
    Frac(String),
}

impl RatSpec {
    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            RatSpec::Int(n) => Ok(crate::linalg::rat(*n)),
            RatSpec::Frac(s) => {
                let (p, q) = match s.split_once('/') {
                    Some((p, q)) => (p, q),
                    None => (s.as_str(), "1"),
                };
                let p: i64 = p
                    .trim()
                    .parse()
                    .map_err(|_| CoreError::Schema(format!("bad rational '{s}'")))?;
                let q: i64 = q
                    .trim()
                    .parse()
                    .map_err(|_| CoreError::Schema(format!("bad rational '{s}'")))?;
                if q == 0 {
                    return Err(CoreError::Schema(format!("zero denominator in '{s}'")));
                }
                Ok(crate::linalg::ratio(p, q))
            }
        }
    }
}

fn parse_matrix(m: &[Vec<RatSpec>]) -> Result<Vec<Vec<Rat>>> {
    m.iter()
        .map(|row| row.iter().map(RatSpec::to_rat).collect())
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Cyclic { cyclic: u64 },
    Matrices { matrices: Vec<Vec<Vec<RatSpec>>> },
}

#[derive(Debug, Clone, Deserialize)]
pub struct EigenSpec {
    #[serde(default)]
    pub plus1: usize,
    #[serde(default)]
    pub minus1: usize,
    /// (rotation index k, multiplicity) pairs.
    #[serde(default)]
    pub rotations: Vec<(u64, usize)>,
}

/// A group action described by data rather than by a finished
/// decomposition: a cyclic group with eigenvalue data, weights, or an
/// explicit generator matrix, or an explicit list of group elements.
#[derive(Debug, Clone, Deserialize)]
pub struct ActionDoc {
    pub field: Field,
    pub group: GroupSpec,
    #[serde(default)]
    pub eigen: Option<EigenSpec>,
    #[serde(default)]
    pub weights: Option<Vec<u64>>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<RatSpec>>>,
}

impl ActionDoc {
    /// The decomposition of the single (cyclic) generator action.
    pub fn decompose(&self) -> Result<Decomposition> {
        let n = match &self.group {
            GroupSpec::Cyclic { cyclic } => *cyclic,
            GroupSpec::Matrices { .. } => {
                return Err(CoreError::Schema(
                    "explicit matrix groups decompose per conjugacy class; use the classes command".into(),
                ))
            }
        };
        match (self.field, &self.eigen, &self.weights, &self.matrix) {
            (Field::Complex, None, Some(w), None) => crate::repdecomp::decompose_complex(n, w),
            (Field::Real, Some(e), None, None) => crate::repdecomp::decompose_real_cyclic(
                n,
                &RealGenerator::Blocks {
                    plus1: e.plus1,
                    minus1: e.minus1,
                    rotations: e.rotations.clone(),
                },
            ),
            (Field::Real, None, None, Some(m)) => crate::repdecomp::decompose_real_cyclic(
                n,
                &RealGenerator::Matrix(parse_matrix(m)?),
            ),
            _ => Err(CoreError::Schema(
                "an action needs exactly one of: complex weights, real eigen blocks, real generator matrix".into(),
            )),
        }
    }

    /// The explicit group elements, when given as matrices.
    pub fn matrices(&self) -> Result<Vec<Vec<Vec<Rat>>>> {
        match &self.group {
            GroupSpec::Matrices { matrices } => {
                matrices.iter().map(|m| parse_matrix(m)).collect()
            }
            GroupSpec::Cyclic { .. } => Err(CoreError::Schema(
                "cyclic actions carry no explicit matrix list".into(),
            )),
        }
    }

    pub fn is_matrix_group(&self) -> bool {
        matches!(self.group, GroupSpec::Matrices { .. })
    }
}

/// Either a raw action or an already-computed decomposition, so callers
/// with non-cyclic groups can bypass the decomposition step.
#[derive(Debug, Clone)]
pub enum InputDocument {
    Action(ActionDoc),
    Decomposition(Decomposition),
}

pub fn parse_input(json: &str) -> Result<InputDocument> {
    let value: Value = serde_json::from_str(json)
        .map_err(|e| CoreError::Schema(format!("invalid JSON: {e}")))?;
    if value.get("dimV0").is_some() {
        let d: Decomposition = serde_json::from_value(value)
            .map_err(|e| CoreError::Schema(format!("invalid decomposition: {e}")))?;
        d.validate(None)?;
        return Ok(InputDocument::Decomposition(d));
    }
    let a: ActionDoc = serde_json::from_value(value)
        .map_err(|e| CoreError::Schema(format!("invalid action: {e}")))?;
    Ok(InputDocument::Action(a))
}

impl InputDocument {
    /// The decomposition: given directly, or computed from the action.
    pub fn decomposition(&self) -> Result<Decomposition> {
        match self {
            InputDocument::Action(a) => a.decompose(),
            InputDocument::Decomposition(d) => Ok(d.clone()),
        }
    }
}

// --- output -------------------------------------------------------------

pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn matrix_strings(m: &[Vec<Rat>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(rat_string).collect()).collect()
}

/// Betti entries as JSON values: exact counts, or the string "unknown".
pub fn betti_values(t: &BettiTable, max_degree: u32) -> Vec<Value> {
    (0..=max_degree as usize)
        .map(|q| match t.get(q) {
            BettiEntry::Known(n) => Value::from(n),
            BettiEntry::Unknown => Value::from("unknown"),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct BettiDoc {
    pub mode: String,
    #[serde(rename = "truncationBound")]
    pub truncation_bound: Value,
    #[serde(rename = "maxDegree")]
    pub max_degree: u32,
    #[serde(rename = "algebraDims")]
    pub algebra_dims: Vec<usize>,
    pub betti: Vec<Value>,
}

pub fn betti_doc(
    mode: Mode,
    truncation_bound: Option<u32>,
    max_degree: u32,
    algebra_dims: &[usize],
    table: &BettiTable,
) -> BettiDoc {
    BettiDoc {
        mode: mode.to_string(),
        truncation_bound: truncation_bound.map(Value::from).unwrap_or(Value::Null),
        max_degree,
        algebra_dims: algebra_dims[..algebra_dims.len().min(max_degree as usize + 1)].to_vec(),
        betti: betti_values(table, max_degree),
    }
}

#[derive(Debug, Serialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: u32,
    pub block: String,
    pub kind: String,
    pub corner: bool,
}

fn generator_doc(g: &ClassLabel) -> GeneratorDoc {
    GeneratorDoc {
        name: g.name.clone(),
        degree: g.degree,
        block: g.block.clone(),
        kind: g.kind.to_string(),
        corner: g.corner,
    }
}

#[derive(Debug, Serialize)]
pub struct RingReportDoc {
    pub inertia: String,
    pub decomposition: Decomposition,
    pub mode: String,
    #[serde(rename = "truncationBound")]
    pub truncation_bound: u32,
    pub generators: Vec<GeneratorDoc>,
    pub betti: Vec<Value>,
}

pub fn ring_report_doc(r: &RingReport, max_degree: u32) -> RingReportDoc {
    RingReportDoc {
        inertia: r.inertia_label.clone(),
        decomposition: r.decomposition.clone(),
        mode: r.mode.to_string(),
        truncation_bound: r.truncation_bound,
        generators: r.generators.iter().map(generator_doc).collect(),
        betti: betti_values(&r.betti, max_degree),
    }
}

#[derive(Debug, Serialize)]
pub struct ComparisonDoc {
    pub ce: Vec<Value>,
    pub weil: Vec<Value>,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn comparison_doc(ce: &BettiTable, weil: &BettiTable, matches: bool, max_degree: u32) -> ComparisonDoc {
    ComparisonDoc {
        ce: betti_values(ce, max_degree),
        weil: betti_values(weil, max_degree),
        matches,
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsDoc {
    pub r: usize,
    pub s: usize,
    #[serde(rename = "dimV0")]
    pub dim_v0: usize,
    #[serde(rename = "dimW")]
    pub dim_w: usize,
    pub predicted: usize,
    #[serde(rename = "bruteForce")]
    pub brute_force: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Serialize)]
pub struct VanishingDoc {
    pub bound: u32,
    pub checked: Vec<String>,
    #[serde(rename = "allVanish")]
    pub all_vanish: bool,
}

pub fn vanishing_doc(v: &VanishingReport) -> VanishingDoc {
    VanishingDoc {
        bound: v.bound,
        checked: v.checked.clone(),
        all_vanish: v.all_vanish,
    }
}

#[derive(Debug, Serialize)]
pub struct InertiaEntryDoc {
    pub representative: Vec<Vec<String>>,
    pub order: u64,
    #[serde(rename = "classSize")]
    pub class_size: usize,
    #[serde(rename = "centralizerOrder")]
    pub centralizer_order: usize,
    #[serde(rename = "fixedDim")]
    pub fixed_dim: usize,
    pub ring: RingReportDoc,
}

pub fn inertia_entry_doc(
    c: &InertiaComponent,
    ring: &RingReport,
    max_degree: u32,
) -> InertiaEntryDoc {
    InertiaEntryDoc {
        representative: matrix_strings(&c.representative),
        order: c.order,
        class_size: c.class_size,
        centralizer_order: c.centralizer_order,
        fixed_dim: c.fixed_dim,
        ring: ring_report_doc(ring, max_degree),
    }
}

/// Compact canonical serialization; struct declaration order is the key
/// order, so output is byte-identical across runs and platforms.
pub fn to_canonical<T: Serialize>(doc: &T) -> Result<String> {
    serde_json::to_string(doc).map_err(|e| CoreError::Invariant(format!("serialization: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_eigen_round_trip() {
        let json = r#"{"field":"real","group":{"cyclic":2},"eigen":{"plus1":0,"minus1":1}}"#;
        let input = parse_input(json).unwrap();
        let d = input.decomposition().unwrap();
        assert_eq!(
            to_canonical(&d).unwrap(),
            r#"{"field":"real","dimV0":0,"mMinus1":1,"factors":[]}"#
        );
    }

    #[test]
    fn decomposition_input_is_idempotent() {
        let json = r#"{"field":"real","dimV0":0,"mMinus1":1,"factors":[]}"#;
        let input = parse_input(json).unwrap();
        let d = input.decomposition().unwrap();
        assert_eq!(to_canonical(&d).unwrap(), json);
    }

    #[test]
    fn complex_weights_action() {
        let json = r#"{"field":"complex","group":{"cyclic":3},"weights":[0,1]}"#;
        let d = parse_input(json).unwrap().decomposition().unwrap();
        assert_eq!(d.dim_v0, 1);
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].multiplicity, 1);
    }

    #[test]
    fn matrix_action_parses_rationals() {
        let json = r#"{"field":"real","group":{"cyclic":4},"matrix":[["0","-1"],["1","0"]]}"#;
        let input = parse_input(json).unwrap();
        let d = input.decomposition().unwrap();
        assert_eq!(d.dim_v0, 0);
        assert_eq!(d.factors.len(), 1);
    }

    #[test]
    fn matrix_group_listed() {
        let json = r#"{"field":"real","group":{"matrices":[[[1,0],[0,1]],[[-1,0],[0,-1]]]}}"#;
        let input = parse_input(json).unwrap();
        let InputDocument::Action(a) = input else { panic!() };
        assert!(a.is_matrix_group());
        assert_eq!(a.matrices().unwrap().len(), 2);
        assert!(a.decompose().is_err());
    }

    #[test]
    fn bad_rational_rejected() {
        assert!(RatSpec::Frac("1/0".into()).to_rat().is_err());
        assert!(RatSpec::Frac("x".into()).to_rat().is_err());
        assert_eq!(RatSpec::Frac("-3/6".into()).to_rat().unwrap(), crate::linalg::ratio(-1, 2));
    }

    #[test]
    fn betti_unknown_rendered() {
        let t = BettiTable::new(vec![
            crate::linalg::BettiEntry::Known(1),
            crate::linalg::BettiEntry::Unknown,
        ]);
        let vals = betti_values(&t, 2);
        assert_eq!(vals[0], Value::from(1));
        assert_eq!(vals[1], Value::from("unknown"));
        assert_eq!(vals[2], Value::from("unknown"));
    }

    #[test]
    fn rat_strings() {
        assert_eq!(rat_string(&crate::linalg::rat(-2)), "-2");
        assert_eq!(rat_string(&crate::linalg::ratio(1, 2)), "1/2");
    }
}
