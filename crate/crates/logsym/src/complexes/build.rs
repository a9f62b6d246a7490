//! Cutting a family into finite slices.

use crate::algebra_core::basis::{
    basis_of_multidegree, basis_of_weight, basis_up_to_weight, elem_weight, multidegrees_up_to, BasisIndex, Sector,
};
use crate::algebra_core::linalg::{Echelon, SparseVec};
use crate::algebra_core::{ChartRef, LogForm};
use crate::error::{Error, Result};

use super::family::{ComplexFamily, Plan, TermKind};
use super::simplicial;
use super::slice::{GradedSliceComplex, GradingMode, SliceComplex, Term, TermSpace};

/// Which grading mode to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeRequest {
    /// Exact slices when the differential is homogeneous for some weights, jets otherwise.
    Auto,
    Exact,
    Jet,
}

#[derive(Clone, Debug)]
enum Key {
    Multi(Vec<u32>),
    Weight(Vec<u32>, i64),
}

impl Key {
    fn basis(&self, chart: &ChartRef, sector: Sector, k: usize) -> Vec<(crate::algebra_core::Mono, u32)> {
        if k > chart.dim() {
            return Vec::new();
        }
        match self {
            Key::Multi(mu) => basis_of_multidegree(chart, sector, k, mu),
            Key::Weight(_, w) if *w < 0 => Vec::new(),
            Key::Weight(g, w) => basis_of_weight(chart, sector, g, k, *w as u32),
        }
    }

    /// The key lowered by the weight of a homogeneous form, `None` when it would go negative.
    fn minus(&self, f: &LogForm) -> Result<Option<Key>> {
        match self {
            Key::Multi(mu) => {
                let parts = f.multidegree_decompose()?;
                if parts.len() != 1 {
                    return Err(Error::UnsupportedGrading(format!("{f} is not multidegree-homogeneous")));
                }
                let wt = &parts[0].0;
                if mu.iter().zip(wt).any(|(a, b)| a < b) {
                    return Ok(None);
                }
                Ok(Some(Key::Multi(mu.iter().zip(wt).map(|(a, b)| a - b).collect())))
            }
            Key::Weight(g, w) => {
                let wf = crate::algebra_core::basis::homogeneous_weight(f, g)?.unwrap_or(0);
                Ok(Some(Key::Weight(g.clone(), w - wf as i64)))
            }
        }
    }
}

/// Build a family at a weight or multidegree cutoff, picking the grading mode automatically.
pub fn build_complex(family: &ComplexFamily, chart: &ChartRef, cutoff: u32) -> Result<GradedSliceComplex> {
    build_complex_with(family, chart, cutoff, ModeRequest::Auto)
}

/// Build a family in a requested grading mode.
pub fn build_complex_with(family: &ComplexFamily, chart: &ChartRef, cutoff: u32, mode: ModeRequest) -> Result<GradedSliceComplex> {
    if let ComplexFamily::SimplicialDeRham(q) = family {
        if mode == ModeRequest::Jet {
            return Err(Error::UnsupportedGrading("the simplicial family is built per multidegree".into()));
        }
        return simplicial::build(chart, *q, cutoff);
    }
    let plan = family.plan(chart)?;
    let name = family.to_string();
    if mode == ModeRequest::Jet {
        return build_jet(&plan, name, cutoff);
    }
    if family.is_multidegree_family() {
        return build_exact(&plan, name, cutoff, GradingMode::Multidegree);
    }
    let p = plan.poisson.expect("Π-family");
    match p.homogenizing_grading() {
        Some(g) => build_exact(&plan, name, cutoff, GradingMode::Weight { weights: g.weights, shift: g.shift }),
        None if mode == ModeRequest::Auto => build_jet(&plan, name, cutoff),
        None => Err(Error::UnsupportedGrading("the differential is not homogeneous for any weights in {1,2,3}".into())),
    }
}

struct Built {
    term: Term,
    echelon: Option<Echelon>,
}

fn make_term(plan: &Plan<'_>, t: usize, key: &Key) -> Result<Built> {
    let chart = &plan.chart;
    let tp = &plan.terms[t];
    let ambient = BasisIndex::new(chart, tp.form_degree, key.basis(chart, tp.sector, tp.form_degree));
    let spanning: Vec<LogForm> = match &tp.kind {
        TermKind::Full => return Ok(Built { term: Term::full(tp.degree, tp.form_degree, ambient, Vec::new()), echelon: None }),
        TermKind::Wedge(psi) => match key.minus(psi)? {
            None => Vec::new(),
            Some(lower) => {
                let low = BasisIndex::new(chart, tp.form_degree - 1, lower.basis(chart, tp.sector, tp.form_degree - 1));
                (0..low.len()).map(|i| psi.wedge(&low.form(i))).collect::<Result<_>>()?
            }
        },
        TermKind::Image(k) => {
            let p = plan.poisson.expect("Π-family");
            let up = match key {
                Key::Weight(g, w) => Key::Weight(g.clone(), w + *k as i64 * p.homogenizing_grading().map_or(0, |x| x.shift) as i64),
                Key::Multi(_) => return Err(Error::UnsupportedGrading("image terms need a Π-adapted weight".into())),
            };
            let src = BasisIndex::new(chart, tp.form_degree + 2 * k, up.basis(chart, Sector::Holomorphic, tp.form_degree + 2 * k));
            (0..src.len()).map(|i| p.iota(*k, &src.form(i))).collect()
        }
    };
    let mut e = Echelon::tracking();
    let mut basis = Vec::new();
    for f in &spanning {
        let v = ambient.coords_exact(f)?;
        let tag = SparseVec::from([(basis.len(), num::One::one())]);
        if e.insert_tagged(v.clone(), tag).is_none() {
            basis.push(v);
        }
    }
    let dim = basis.len();
    Ok(Built {
        term: Term { degree: tp.degree, form_degree: tp.form_degree, dim, weights: Vec::new(), space: TermSpace::Sub(ambient, basis) },
        echelon: Some(e),
    })
}

fn coords_in(b: &Built, f: &LogForm, exact: bool) -> Result<SparseVec> {
    let ambient = match &b.term.space {
        TermSpace::Full(ix) | TermSpace::Sub(ix, _) => ix,
        TermSpace::Blocks(_) => unreachable!(),
    };
    let v = if exact { ambient.coords_exact(f)? } else { ambient.coords(f)?.0 };
    match &b.echelon {
        None => Ok(v),
        Some(e) => e.express(v).ok_or_else(|| Error::UnsupportedGrading("differential leaves the subcomplex".into())),
    }
}

fn assemble(plan: &Plan<'_>, key: Vec<u32>, built: Vec<Built>, exact: bool) -> Result<SliceComplex> {
    let mut maps = Vec::new();
    for t in 0..built.len() - 1 {
        let mut cols = Vec::with_capacity(built[t].term.dim);
        for j in 0..built[t].term.dim {
            let f = built[t].term.form(j).expect("single chart");
            let img = plan.apply(t, &f)?;
            cols.push(coords_in(&built[t + 1], &img, exact)?);
        }
        maps.push(cols);
    }
    let s = SliceComplex { key, terms: built.into_iter().map(|b| b.term).collect(), maps };
    s.assert_complex();
    Ok(s)
}

fn contraction_counts(plan: &Plan<'_>) -> Vec<i64> {
    let mut out = vec![0i64];
    for c in &plan.contracts {
        out.push(out.last().unwrap() + *c as i64);
    }
    out
}

fn build_exact(plan: &Plan<'_>, family: String, cutoff: u32, mode: GradingMode) -> Result<GradedSliceComplex> {
    let mut slices = Vec::new();
    let counts = contraction_counts(plan);
    let keys: Vec<(Vec<u32>, Vec<Key>)> = match &mode {
        GradingMode::Multidegree => multidegrees_up_to(plan.chart.dim(), cutoff)
            .into_iter()
            .map(|mu| (mu.clone(), vec![Key::Multi(mu); plan.terms.len()]))
            .collect(),
        GradingMode::Weight { weights, shift } => (0..=cutoff)
            .map(|k| {
                let ks = counts.iter().map(|c| Key::Weight(weights.clone(), k as i64 - *shift as i64 * c)).collect();
                (vec![k], ks)
            })
            .collect(),
        GradingMode::Jet { .. } => unreachable!(),
    };
    for (key, per_term) in keys {
        let built = (0..plan.terms.len()).map(|t| make_term(plan, t, &per_term[t])).collect::<Result<Vec<_>>>()?;
        slices.push(assemble(plan, key, built, true)?);
    }
    Ok(GradedSliceComplex { family, mode, cutoff, slices, offsets: vec![0; plan.terms.len()] })
}

/// Unit-weight drops of the terms of `Π`.
fn unit_drops(plan: &Plan<'_>) -> Vec<i32> {
    match plan.poisson {
        Some(p) => p.iota_drops(&vec![1; plan.chart.dim()]),
        None => vec![0],
    }
}

fn build_jet(plan: &Plan<'_>, family: String, cutoff: u32) -> Result<GradedSliceComplex> {
    let drops = unit_drops(plan);
    if drops.iter().any(|&x| x < 0) {
        return Err(Error::UnsupportedGrading("Π raises the weight, so no truncation is a quotient complex".into()));
    }
    let s = drops.iter().copied().max().unwrap_or(0);
    let chart = &plan.chart;
    let ones = vec![1u32; chart.dim()];
    let offsets: Vec<u32> = contraction_counts(plan).iter().map(|c| (*c as u32) * s as u32).collect();
    let mut built = Vec::new();
    for (t, tp) in plan.terms.iter().enumerate() {
        if !matches!(tp.kind, TermKind::Full) {
            return Err(Error::UnsupportedGrading("jets are only built for full terms".into()));
        }
        let elems = if cutoff >= offsets[t] && tp.form_degree <= chart.dim() {
            basis_up_to_weight(chart, tp.sector, &ones, tp.form_degree, cutoff - offsets[t])
        } else {
            Vec::new()
        };
        let weights = elems.iter().map(|(m, k)| elem_weight(chart, &ones, m, *k)).collect();
        let ix = BasisIndex::new(chart, tp.form_degree, elems);
        built.push(Built { term: Term::full(tp.degree, tp.form_degree, ix, weights), echelon: None });
    }
    let slice = assemble(plan, vec![cutoff], built, false)?;
    Ok(GradedSliceComplex { family, mode: GradingMode::Jet { shift: s }, cutoff, slices: vec![slice], offsets })
}
