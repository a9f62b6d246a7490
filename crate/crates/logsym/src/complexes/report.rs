//! Cohomology reports for sliced complexes.

use serde::Serialize;

use crate::algebra_core::ChartRef;
use crate::error::{Error, Result};

use super::build::{build_complex_with, ModeRequest};
use super::family::ComplexFamily;
use super::slice::{GradedSliceComplex, GradingMode};

/// Cohomology dimension of one degree in one slice (or jet level).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceDim {
    pub degree: i32,
    pub weight: Vec<u32>,
    pub dim: usize,
    pub stable: bool,
}

/// Total dimension in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTotal {
    pub degree: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub family: String,
    pub mode: GradingMode,
    pub cutoff: u32,
    /// Nonzero slice dimensions (exact modes) or all levels `w ≤ W−2` (stalks).
    pub slices: Vec<SliceDim>,
    pub totals: Vec<DegreeTotal>,
    /// Every slice has matching Euler characteristics of terms and cohomology.
    pub euler_consistent: bool,
    /// Every reported dimension agreed at cutoffs `W` and `W+1`.
    pub stable: bool,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.totals.iter().map(|t| t.dim).collect()
    }

    /// Totals, refusing when some level was unstable.
    pub fn stable_dims(&self) -> Option<Vec<usize>> {
        self.stable.then(|| self.dims())
    }

    /// Dimension in a degree for one slice key (0 when absent).
    pub fn dim_at(&self, degree: i32, weight: &[u32]) -> usize {
        self.slices.iter().find(|s| s.degree == degree && s.weight == weight).map_or(0, |s| s.dim)
    }

    pub fn all_zero(&self) -> bool {
        self.totals.iter().all(|t| t.dim == 0)
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}

fn degrees(c: &GradedSliceComplex) -> Vec<i32> {
    c.slices.first().map(|s| s.terms.iter().map(|t| t.degree).collect()).unwrap_or_default()
}

/// Exact cohomology dimensions of every slice.
pub fn slice_cohomology(c: &GradedSliceComplex) -> CohomologyReport {
    let degs = degrees(c);
    let mut totals = vec![0usize; degs.len()];
    let mut slices = Vec::new();
    let mut euler_consistent = true;
    for s in &c.slices {
        let h = s.cohomology();
        let chi: i64 = h.iter().enumerate().map(|(t, x)| if t % 2 == 0 { *x as i64 } else { -(*x as i64) }).sum();
        euler_consistent &= chi == s.euler_terms();
        for (t, &x) in h.iter().enumerate() {
            totals[t] += x;
            if x > 0 {
                slices.push(SliceDim { degree: s.terms[t].degree, weight: s.key.clone(), dim: x, stable: !matches!(c.mode, GradingMode::Jet { .. }) });
            }
        }
    }
    let exact = !matches!(c.mode, GradingMode::Jet { .. });
    CohomologyReport {
        family: c.family.clone(),
        mode: c.mode.clone(),
        cutoff: c.cutoff,
        slices,
        totals: degs.iter().zip(totals).map(|(&degree, dim)| DegreeTotal { degree, dim }).collect(),
        euler_consistent,
        stable: exact,
    }
}

/// Stalk cohomology at the chart origin from jets: for each level `w ≤ W−2`, the image of
/// `H(J_W) → H(J_w)`, computed at `W` and `W+1`; totals are read at level `W−2`.
pub fn stalk_cohomology(family: &ComplexFamily, chart: &ChartRef, cutoff: u32) -> Result<CohomologyReport> {
    if cutoff < 2 {
        return Err(Error::Input("stalks need a cutoff of at least 2".into()));
    }
    let a = build_complex_with(family, chart, cutoff, ModeRequest::Jet)?;
    let b = build_complex_with(family, chart, cutoff + 1, ModeRequest::Jet)?;
    let (sa, sb) = (&a.slices[0], &b.slices[0]);
    let degs = degrees(&a);
    let mut slices = Vec::new();
    let mut top = Vec::new();
    let mut stable = true;
    for w in 0..=cutoff - 2 {
        let da = sa.jet_image_dims(&a.offsets, w);
        let db = sb.jet_image_dims(&b.offsets, w);
        for (t, &deg) in degs.iter().enumerate() {
            let ok = da[t] == db[t];
            if w == cutoff - 2 {
                stable &= ok;
            }
            slices.push(SliceDim { degree: deg, weight: vec![w], dim: da[t], stable: ok });
        }
        top = da;
    }
    let chi_terms = sa.euler_terms();
    let h = sa.cohomology();
    let chi: i64 = h.iter().enumerate().map(|(t, x)| if t % 2 == 0 { *x as i64 } else { -(*x as i64) }).sum();
    Ok(CohomologyReport {
        family: a.family.clone(),
        mode: a.mode.clone(),
        cutoff,
        slices,
        totals: degs.iter().zip(top).map(|(&degree, dim)| DegreeTotal { degree, dim }).collect(),
        euler_consistent: chi == chi_terms,
        stable,
    })
}
