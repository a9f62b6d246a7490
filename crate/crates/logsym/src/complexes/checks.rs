//! Slice-level checks: homotopies, foliated and augmented complexes, log generators.

use num::Zero;
use serde::Serialize;

use crate::algebra_core::basis::{basis_of_multidegree, BasisIndex, Sector};
use crate::algebra_core::forms::{mask_indices, masks_of_degree};
use crate::algebra_core::{ChartRef, LogForm, Poly, Q, RatFunc};
use crate::error::{Error, Result};
use crate::poisson::{hypothesis_star_check, PoissonStructure};

use super::build::build_complex;
use super::family::{euler_field, ComplexFamily};
use super::report::{slice_cohomology, CohomologyReport};
use super::simplicial::stratum_chart;
use super::slice::{GradedSliceComplex, TermSpace};

fn twisted_d(chart: &ChartRef, omega: &LogForm) -> Result<LogForm> {
    let mut dlog_f = LogForm::zero(chart, 1);
    for i in 0..chart.m() {
        dlog_f.add_comp(1 << i, RatFunc::one(chart.dim()));
    }
    omega.d().add(&dlog_f.wedge(omega)?)
}

/// `c` with `[ι_v, d°] = c·id` on the log forms of one multidegree, `v = Σ x_i∂_i`.
/// `None` when the slice is empty.
pub fn minor_log_homotopy_check(chart: &ChartRef, multidegree: &[u32]) -> Result<Option<Q>> {
    if multidegree.len() != chart.dim() {
        return Err(Error::Input(format!("multidegree needs {} entries", chart.dim())));
    }
    let v = euler_field(chart);
    let iota = |w: &LogForm| -> Result<LogForm> {
        if w.degree() == 0 {
            Ok(LogForm::zero(chart, 0))
        } else {
            v.contract(w)
        }
    };
    let mut constant: Option<Q> = None;
    for k in 0..=chart.dim() {
        let ix = BasisIndex::new(chart, k, basis_of_multidegree(chart, Sector::Log, k, multidegree));
        for i in 0..ix.len() {
            let w = ix.form(i);
            let lhs = iota(&twisted_d(chart, &w)?)?.add(&twisted_d(chart, &iota(&w)?)?)?;
            let (mask, f) = w.comps().iter().next().expect("basis form");
            let ratio = lhs.coeff(*mask);
            let c = (&ratio * &f.recip().expect("nonzero")).as_constant();
            let ok = match (&c, &constant) {
                (Some(c), Some(k0)) => c == k0,
                (Some(_), None) => true,
                (None, _) => false,
            };
            if !ok || lhs != w.scale(c.as_ref().unwrap()) || c.as_ref().unwrap().is_zero() {
                return Err(Error::NotIdentityMultiple(multidegree.to_vec()));
            }
            constant = c;
        }
    }
    Ok(constant)
}

/// Cohomology of `ψ ∧ Ω•[log − D]`, after checking hypothesis (*) to the same cutoff.
pub fn foliated_complex_cohomology(chart: &ChartRef, psi: &LogForm, cutoff: u32) -> Result<CohomologyReport> {
    let star = hypothesis_star_check(chart, psi, cutoff)?;
    if let Some((_, multi)) = star.witness {
        return Err(Error::StarHypothesisFails(multi));
    }
    let c = build_complex(&ComplexFamily::FoliatedPsi(psi.on_chart(chart)?), chart, cutoff)?;
    Ok(slice_cohomology(&c))
}

/// One graded piece of the stratum filtration in one slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub multidegree: Vec<u32>,
    pub level: usize,
    pub form_degree: usize,
    /// `dim K_r − dim K_{r−1}`.
    pub quotient_dim: usize,
    /// `Σ_{|I|=r} dim Ω^{≥r}_{X_I}[log − D_I]` in the same multidegree.
    pub direct_dim: usize,
}

/// The augmented minor log complex with its stratum filtration.
#[derive(Clone, Debug)]
pub struct AugmentedReport {
    pub complex: GradedSliceComplex,
    /// Each `K_r` built as a subcomplex of `Ω•_X` without leaving its sector.
    pub d_stable: bool,
    pub pieces: Vec<GradedPiece>,
}

impl AugmentedReport {
    pub fn pieces_match(&self) -> bool {
        self.pieces.iter().all(|p| p.quotient_dim == p.direct_dim)
    }
}

/// Build `K_0 ⊂ ⋯ ⊂ K_m` and compare `K_r / K_{r−1}` with minor log forms on the `r`-fold strata.
pub fn augmented_minor_log_build(chart: &ChartRef, cutoff: u32) -> Result<AugmentedReport> {
    let m = chart.m();
    let d = chart.dim();
    let complex = build_complex(&ComplexFamily::AugmentedMinorLog, chart, cutoff)?;
    let mut d_stable = true;
    for r in 0..=m {
        for mu in crate::algebra_core::basis::multidegrees_up_to(d, cutoff) {
            for p in 0..d {
                let ix = BasisIndex::new(chart, p, basis_of_multidegree(chart, Sector::Augmented(r), p, &mu));
                let next = BasisIndex::new(chart, p + 1, basis_of_multidegree(chart, Sector::Augmented(r), p + 1, &mu));
                for i in 0..ix.len() {
                    if next.coords_exact(&ix.form(i).d()).is_err() {
                        d_stable = false;
                    }
                }
            }
        }
    }
    let mut pieces = Vec::new();
    for mu in crate::algebra_core::basis::multidegrees_up_to(d, cutoff) {
        for r in 0..=m {
            for p in 0..=d {
                let k = |s: usize| basis_of_multidegree(chart, Sector::Augmented(s), p, &mu).len();
                let quotient_dim = k(r) - if r > 0 { k(r - 1) } else { 0 };
                let mut direct_dim = 0;
                if p >= r {
                    for s in (0u32..1 << m).filter(|s| s.count_ones() as usize == r) {
                        if mask_indices(s).any(|i| mu[i] != 0) {
                            continue;
                        }
                        let sub = stratum_chart(chart, s)?;
                        let sub_mu: Vec<u32> = (0..d).filter(|i| s >> i & 1 == 0).map(|i| mu[i]).collect();
                        if p <= sub.dim() {
                            direct_dim += basis_of_multidegree(&sub, Sector::MinorLog, p, &sub_mu).len();
                        }
                    }
                }
                if quotient_dim > 0 || direct_dim > 0 {
                    pieces.push(GradedPiece { multidegree: mu.clone(), level: r, form_degree: p, quotient_dim, direct_dim });
                }
            }
        }
    }
    Ok(AugmentedReport { complex, d_stable, pieces })
}

/// `ω_{I,L,K} = (F / x_I) dlog(x)_L ∧ dx_K` with `L ∩ I = ∅`, `K` plain and `|L| + |K| ≥ |I|`.
pub fn augmented_generators(chart: &ChartRef, level: usize) -> Vec<(u32, LogForm)> {
    let d = chart.dim();
    let m = chart.m();
    let div = chart.divisor_mask();
    let mut out = Vec::new();
    for s in (0u32..1 << m).filter(|s| s.count_ones() as usize == level) {
        let mut f = Poly::one(d);
        for i in mask_indices(div & !s) {
            f = &f * &Poly::var(d, i);
        }
        for deg in level.max(1)..=d {
            for mask in masks_of_degree(d, deg) {
                if mask & s != 0 {
                    continue;
                }
                out.push((s, LogForm::term(chart, mask, RatFunc::from_poly(f.clone()))));
            }
        }
    }
    out
}

/// Whether a form lies in `K_r` and, for `r > 0`, outside `K_{r−1}`.
pub fn augmented_level(omega: &LogForm) -> Result<Option<usize>> {
    let chart = omega.chart();
    let mut level = None;
    for r in 0..=chart.m() {
        let fits = omega.comps().iter().all(|(mask, f)| {
            f.as_poly().is_some_and(|p| p.terms().keys().all(|mono| Sector::Augmented(r).admits(chart, mono, *mask)))
        });
        if fits {
            level = Some(r);
            break;
        }
    }
    Ok(level)
}

/// A `Θ`-degree and a generator `d_I ∧ dlog(x)_J ∧ ∏_{i>k} dx_i∧dy_i` of the log `Θ` complex.
#[derive(Clone, Debug)]
pub struct ThetaGenerator {
    pub degree: usize,
    pub divisor_part: u32,
    pub form: LogForm,
}

/// The generators for a normal-form structure on `x_1..x_n, y_1..y_n` with `x_1..x_k` divisorial.
pub fn theta_log_generators(p: &PoissonStructure) -> Result<Vec<ThetaGenerator>> {
    let chart = p.chart();
    let n = p.n();
    let k = chart.m();
    let d = chart.dim();
    let idx = |name: String| chart.index_of(&name).ok_or_else(|| Error::Input(format!("normal-form chart lacks {name}")));
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 1..=n {
        xs.push(idx(format!("x{i}"))?);
        ys.push(idx(format!("y{i}"))?);
    }
    let one = || LogForm::scalar(chart, RatFunc::one(d));
    let mut tail = one();
    for i in k..n {
        tail = tail.wedge(&LogForm::basis(chart, 1 << xs[i]))?.wedge(&LogForm::basis(chart, 1 << ys[i]))?;
    }
    let mut out = Vec::new();
    for j in 0u32..1 << k {
        let mut f = one();
        for i in 0..k {
            let x = LogForm::basis(chart, 1 << xs[i]);
            f = if j >> i & 1 == 1 { f.wedge(&x)? } else { f.wedge(&x.wedge(&LogForm::basis(chart, 1 << ys[i]))?)? };
        }
        out.push(ThetaGenerator { degree: j.count_ones() as usize, divisor_part: j, form: f.wedge(&tail)? });
    }
    Ok(out)
}

/// Outcome of the generator check for the log `Θ` complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub passed: bool,
    /// Generator count per `Θ`-degree.
    pub counts: Vec<usize>,
    /// Cohomology of the log `Θ` complex per degree.
    pub theta_dims: Vec<usize>,
    /// Cohomology of the log de Rham complex per degree.
    pub log_dims: Vec<usize>,
    pub failures: Vec<String>,
}

/// Each generator is closed and not exact in its weight slice, and the log `Θ` cohomology
/// agrees with the log de Rham cohomology degree by degree.
pub fn theta_log_generator_check(p: &PoissonStructure, cutoff: u32) -> Result<GeneratorReport> {
    let chart = p.chart();
    let theta = build_complex(&ComplexFamily::ThetaLog(p.clone()), chart, cutoff)?;
    let log = build_complex(&ComplexFamily::Log, chart, cutoff)?;
    let theta_dims = slice_cohomology(&theta).dims();
    let log_dims = slice_cohomology(&log).dims();
    let n = p.n();
    let mut counts = vec![0; 2 * n + 1];
    let mut failures = Vec::new();
    let (g, s) = match &theta.mode {
        super::slice::GradingMode::Weight { weights, shift } => (weights.clone(), *shift),
        _ => return Err(Error::UnsupportedGrading("normal-form structures admit exact weights".into())),
    };
    for gen in theta_log_generators(p)? {
        counts[gen.degree] += 1;
        let w = crate::algebra_core::basis::homogeneous_weight(&gen.form, &g)?.unwrap_or(0) as i64;
        let kappa = w + s as i64 * gen.degree as i64;
        let Some(slice) = theta.slices.iter().find(|x| x.key[0] as i64 == kappa) else {
            failures.push(format!("generator {} lies beyond the cutoff", gen.form));
            continue;
        };
        let t = gen.degree;
        let ix = match &slice.terms[t].space {
            TermSpace::Full(ix) => ix,
            _ => unreachable!(),
        };
        let v = ix.coords_exact(&gen.form)?;
        if !slice.is_closed(t, &v) {
            failures.push(format!("generator {} is not closed", gen.form));
        } else if slice.is_exact(t, &v) {
            failures.push(format!("generator {} is exact", gen.form));
        }
    }
    let passed = failures.is_empty() && theta_dims == log_dims && counts == log_dims;
    Ok(GeneratorReport { passed, counts, theta_dims, log_dims, failures })
}
