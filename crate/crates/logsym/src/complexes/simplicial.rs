//! The simplicial resolution `Ω_X → ⊕ Ω_{X_i} → ⊕ Ω_{X_{ij}} → ⋯` along a normal crossing divisor.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra_core::basis::{basis_of_multidegree, BasisIndex, Sector};
use crate::algebra_core::forms::mask_indices;
use crate::algebra_core::linalg::SparseVec;
use crate::algebra_core::{Chart, ChartRef, LogForm};
use crate::error::{Error, Result};

use super::slice::{GradedSliceComplex, GradingMode, SliceComplex, Term, TermSpace};

/// Forms on the strata `X_I`, keyed by the mask of `I`.
pub type Tuple = BTreeMap<u32, LogForm>;

/// The chart of `X_I = {x_i = 0, i ∈ I}`.
pub fn stratum_chart(chart: &ChartRef, stratum: u32) -> Result<ChartRef> {
    if stratum & !chart.divisor_mask() != 0 {
        return Err(Error::Input("stratum indices must be divisorial".into()));
    }
    if stratum == 0 {
        return Ok(chart.clone());
    }
    let keep: Vec<usize> = (0..chart.dim()).filter(|i| stratum >> i & 1 == 0).collect();
    let names: Vec<&String> = keep.iter().map(|&i| &chart.vars()[i]).collect();
    let div: Vec<&String> = keep.iter().filter(|&&i| chart.is_divisorial(i)).map(|&i| &chart.vars()[i]).collect();
    Chart::new(&names, &div)
}

/// Position of variable `i` of the ambient chart inside the chart of `X_J`.
fn position_in(j: u32, i: usize) -> usize {
    i - (j & ((1u32 << i) - 1)).count_ones() as usize
}

/// `ρ(ω)_I = Σ_j (−1)^j ω_{I∖i_j}|_{X_I}` for `|I| = k + 1`.
pub fn simplicial_rho(chart: &ChartRef, k: usize, tuple: &Tuple) -> Result<Tuple> {
    let div = chart.divisor_mask();
    let mut out = Tuple::new();
    for (&j, form) in tuple {
        if j.count_ones() as usize != k || j & !div != 0 {
            return Err(Error::Input(format!("tuple entry {j:#b} is not a {k}-fold stratum")));
        }
        if !crate::algebra_core::forms::same_chart(form.chart(), &stratum_chart(chart, j)?) {
            return Err(Error::ChartMismatch);
        }
        for i in mask_indices(div & !j) {
            let target = j | 1 << i;
            let sign = mask_indices(target).position(|x| x == i).unwrap();
            let pulled = form.pullback_to_stratum(1 << position_in(j, i))?;
            let pulled = if sign % 2 == 0 { pulled } else { pulled.neg() };
            let entry = out.entry(target).or_insert_with(|| LogForm::zero(pulled.chart(), pulled.degree()));
            *entry = entry.add(&pulled)?;
        }
    }
    out.retain(|_, f| !f.is_zero());
    Ok(out)
}

/// Per multidegree, term `k` is `⊕_{|I|=k} Ω^q_{X_I}` in that multidegree.
pub(crate) fn build(chart: &ChartRef, q: usize, cutoff: u32) -> Result<GradedSliceComplex> {
    let m = chart.m();
    let d = chart.dim();
    let strata: Vec<Vec<u32>> = (0..=m)
        .map(|k| (0u32..1 << m).filter(|s| s.count_ones() as usize == k).collect())
        .collect();
    let charts: BTreeMap<u32, ChartRef> =
        strata.iter().flatten().map(|&s| Ok((s, stratum_chart(chart, s)?))).collect::<Result<_>>()?;
    let mut slices = Vec::new();
    for mu in crate::algebra_core::basis::multidegrees_up_to(d, cutoff) {
        let mut terms = Vec::new();
        for (k, ss) in strata.iter().enumerate() {
            let mut blocks = Vec::new();
            let mut dim = 0;
            for &s in ss {
                if mask_indices(s).any(|i| mu[i] != 0) {
                    continue;
                }
                let sub_mu: Vec<u32> = (0..d).filter(|i| s >> i & 1 == 0).map(|i| mu[i]).collect();
                let c = &charts[&s];
                let ix = BasisIndex::new(c, q, if q <= c.dim() { basis_of_multidegree(c, Sector::Holomorphic, q, &sub_mu) } else { Vec::new() });
                dim += ix.len();
                blocks.push((s, ix));
            }
            terms.push(Term { degree: k as i32, form_degree: q, dim, weights: Vec::new(), space: TermSpace::Blocks(blocks) });
        }
        let mut maps = Vec::new();
        for k in 0..m {
            let TermSpace::Blocks(src) = &terms[k].space else { unreachable!() };
            let TermSpace::Blocks(dst) = &terms[k + 1].space else { unreachable!() };
            let offsets: BTreeMap<u32, (usize, &BasisIndex)> = {
                let mut o = 0;
                dst.iter().map(|(s, ix)| {
                    let r = (*s, (o, ix));
                    o += ix.len();
                    r
                })
                .collect()
            };
            let mut cols = Vec::new();
            for (s, ix) in src {
                for e in 0..ix.len() {
                    let img = simplicial_rho(chart, k, &Tuple::from([(*s, ix.form(e))]))?;
                    let mut col = SparseVec::new();
                    for (t, f) in img {
                        let (off, tix) = offsets.get(&t).ok_or_else(|| Error::UnsupportedGrading("ρ leaves the slice".into()))?;
                        for (i, c) in tix.coords_exact(&f)? {
                            col.insert(off + i, c);
                        }
                    }
                    cols.push(col);
                }
            }
            maps.push(cols);
        }
        let s = SliceComplex { key: mu, terms, maps };
        s.assert_complex();
        slices.push(s);
    }
    Ok(GradedSliceComplex {
        family: format!("simplicial-{q}"),
        mode: GradingMode::Multidegree,
        cutoff,
        slices,
        offsets: vec![0; m + 1],
    })
}

/// Outcome of the exactness check of the simplicial resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialReport {
    pub passed: bool,
    pub form_degree: usize,
    pub cutoff: u32,
    pub slices_checked: usize,
    /// Multidegree and cohomology dims of the first failing slice.
    pub witness: Option<(Vec<u32>, Vec<usize>)>,
}

/// `H^0` is the minor log slice (forms restricting to zero on every branch) and higher `H` vanish.
pub fn simplicial_exactness(chart: &ChartRef, q: usize, cutoff: u32) -> Result<SimplicialReport> {
    let c = build(chart, q, cutoff)?;
    for s in &c.slices {
        let h = s.cohomology();
        let minor = if q <= chart.dim() { basis_of_multidegree(chart, Sector::MinorLog, q, &s.key).len() } else { 0 };
        if h[0] != minor || h[1..].iter().any(|&x| x != 0) {
            return Ok(SimplicialReport { passed: false, form_degree: q, cutoff, slices_checked: c.slices.len(), witness: Some((s.key.clone(), h)) });
        }
    }
    Ok(SimplicialReport { passed: true, form_degree: q, cutoff, slices_checked: c.slices.len(), witness: None })
}
