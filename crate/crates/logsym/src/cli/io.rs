//! File formats: charts, structures and diamonds as JSON.

use serde::{Deserialize, Serialize};

use crate::algebra_core::forms::mask_indices;
use crate::algebra_core::parser::{parse_multivec, parse_poly};
use crate::algebra_core::{Chart, ChartRef, LogMultiVec, RatFunc};
use crate::error::{Error, Result};
use crate::hodge::HodgeDiamond;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartFile {
    pub divisor_vars: Vec<String>,
    pub vars: Vec<String>,
}

/// One log-basis term `coeff · v_i ∧ v_j`, with 1-based `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: String,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub chart: ChartFile,
    /// Bivector as an expression, an alternative to `terms`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bivector: Option<String>,
    #[serde(default)]
    pub terms: Vec<TermFile>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::ParseError { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(v: &T) -> String {
    let v = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn chart_from_file(c: &ChartFile) -> Result<ChartRef> {
    Chart::new(&c.vars, &c.divisor_vars)
}

pub fn chart_to_file(c: &Chart) -> ChartFile {
    ChartFile { divisor_vars: c.divisor_vars().to_vec(), vars: c.vars().to_vec() }
}

pub fn parse_chart(text: &str) -> Result<ChartRef> {
    chart_from_file(&serde_json::from_str(text).map_err(json_error)?)
}

pub fn print_chart(c: &Chart) -> String {
    to_canonical_json(&chart_to_file(c))
}

/// Chart and bivector from a structure file.
pub fn parse_structure(text: &str) -> Result<(ChartRef, LogMultiVec)> {
    let f: StructureFile = serde_json::from_str(text).map_err(json_error)?;
    let chart = chart_from_file(&f.chart)?;
    let d = chart.dim();
    let mut pi = match &f.bivector {
        Some(expr) => parse_multivec(&chart, expr, 2)?,
        None => LogMultiVec::zero(&chart, 2),
    };
    for t in &f.terms {
        if t.i == 0 || t.j == 0 || t.i > d || t.j > d || t.i == t.j {
            return Err(Error::Input(format!("term indices ({}, {}) outside 1..={d} or equal", t.i, t.j)));
        }
        let c = RatFunc::from_poly(parse_poly(&chart, &t.coeff)?);
        let (a, b) = (t.i - 1, t.j - 1);
        let mask = 1u32 << a | 1u32 << b;
        pi.add_comp(mask, if a < b { c } else { -c });
    }
    Ok((chart, pi))
}

/// Canonical structure file: chart plus one term per log-basis component.
pub fn print_structure(chart: &Chart, pi: &LogMultiVec) -> Result<String> {
    let mut terms = Vec::new();
    for (mask, c) in pi.comps() {
        let p = c.as_poly().ok_or(Error::NonPolynomialCoefficients)?;
        let idx: Vec<usize> = mask_indices(*mask).collect();
        terms.push(TermFile { coeff: p.display_with(chart.vars()), i: idx[0] + 1, j: idx[1] + 1 });
    }
    Ok(to_canonical_json(&StructureFile { chart: chart_to_file(chart), bivector: None, terms }))
}

pub fn parse_diamond(text: &str) -> Result<HodgeDiamond> {
    let h: HodgeDiamond = serde_json::from_str(text).map_err(json_error)?;
    h.validate()?;
    Ok(h)
}

pub fn print_diamond(h: &HodgeDiamond) -> String {
    to_canonical_json(h)
}
