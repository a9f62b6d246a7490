//! The complex families and the shape of each: degrees, form degrees, sectors, differentials.

use std::fmt;

use crate::algebra_core::basis::Sector;
use crate::algebra_core::{ChartRef, LogForm, LogMultiVec, Q, RatFunc};
use crate::error::{Error, Result};
use crate::poisson::{PoissonStructure, Strand};

/// A complex of sheaves on a chart, given by its terms and differential.
#[derive(Clone, Debug)]
pub enum ComplexFamily {
    /// Holomorphic forms with `d`.
    DeRham,
    /// Log forms with `d`.
    Log,
    /// `F·Ω•[log]` with `d`.
    MinorLog,
    /// `Ω•[log]` with `d° = d + dlog F ∧`.
    MinorLogTwisted,
    /// Forms whose restriction to each stratum `X_I` has degree at least `|I|`.
    AugmentedMinorLog,
    /// `ψ ∧ Ω•[log − D]`, indexed so that `ψ·F` sits in degree 0.
    FoliatedPsi(LogForm),
    /// `Ω^q_X → ⊕ Ω^q_{X_i} → ⊕ Ω^q_{X_{ij}} → ⋯` for a fixed form degree `q`.
    SimplicialDeRham(usize),
    /// `Ω^{2n} → ⋯ → Ω^0` with the Brylinski operator.
    Brylinski(PoissonStructure),
    /// `Ω^{2n} → ⋯ → Ω^0` with `δ_λ`.
    MdP(PoissonStructure, Q),
    /// `Θ^0 → ⋯ → Θ^n`, `Θ^i = Ω^{2n−i}`.
    ThetaUpper(PoissonStructure),
    /// `Ω^{2n}[log] → ⋯ → Ω^0[log]` with `δ`.
    ThetaLog(PoissonStructure),
    /// The hybrid `Ɖ•`.
    EHybrid(PoissonStructure),
    /// The hybrid `Đ•`.
    DHybrid(PoissonStructure),
    /// `im ι_{Π^{n−p}} ⊂ Ω^p`, `p = 0..n`, with `d`.
    ImagePi(PoissonStructure),
}

impl fmt::Display for ComplexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComplexFamily::DeRham => "de-rham".to_string(),
            ComplexFamily::Log => "log".into(),
            ComplexFamily::MinorLog => "minor-log".into(),
            ComplexFamily::MinorLogTwisted => "minor-log-twisted".into(),
            ComplexFamily::AugmentedMinorLog => "augmented-minor-log".into(),
            ComplexFamily::FoliatedPsi(_) => "foliated".into(),
            ComplexFamily::SimplicialDeRham(q) => format!("simplicial-{q}"),
            ComplexFamily::Brylinski(_) => "brylinski".into(),
            ComplexFamily::MdP(_, l) => format!("mdp({l})"),
            ComplexFamily::ThetaUpper(_) => "theta-upper".into(),
            ComplexFamily::ThetaLog(_) => "theta-log".into(),
            ComplexFamily::EHybrid(_) => "e-hybrid".into(),
            ComplexFamily::DHybrid(_) => "d-hybrid".into(),
            ComplexFamily::ImagePi(_) => "image-pi".into(),
        };
        f.write_str(&s)
    }
}

/// What a term is inside its ambient sector.
#[derive(Clone, Debug)]
pub(crate) enum TermKind {
    Full,
    /// `ψ ∧ (sector basis of one degree less)`.
    Wedge(LogForm),
    /// `ι_{Π^k}` of holomorphic forms of degree `form_degree + 2k`.
    Image(usize),
}

#[derive(Clone, Debug)]
pub(crate) struct TermPlan {
    pub degree: i32,
    pub form_degree: usize,
    pub sector: Sector,
    pub kind: TermKind,
}

/// Degrees, terms and differential of a single-chart family.
pub(crate) struct Plan<'a> {
    pub chart: ChartRef,
    pub terms: Vec<TermPlan>,
    /// Whether the step leaving term `t` contracts with `Π`.
    pub contracts: Vec<bool>,
    pub poisson: Option<&'a PoissonStructure>,
    family: &'a ComplexFamily,
}

impl ComplexFamily {
    pub fn poisson(&self) -> Option<&PoissonStructure> {
        match self {
            ComplexFamily::Brylinski(p)
            | ComplexFamily::MdP(p, _)
            | ComplexFamily::ThetaUpper(p)
            | ComplexFamily::ThetaLog(p)
            | ComplexFamily::EHybrid(p)
            | ComplexFamily::DHybrid(p)
            | ComplexFamily::ImagePi(p) => Some(p),
            _ => None,
        }
    }

    /// Families whose differential preserves multidegree.
    pub fn is_multidegree_family(&self) -> bool {
        self.poisson().is_none()
    }

    pub(crate) fn plan(&self, chart: &ChartRef) -> Result<Plan<'_>> {
        let chart = match self.poisson() {
            Some(p) => {
                let pc = p.chart();
                if pc.vars() != chart.vars() || pc.divisor_vars() != chart.divisor_vars() {
                    return Err(Error::ChartMismatch);
                }
                pc.clone()
            }
            None => chart.clone(),
        };
        let d = chart.dim();
        let t = |degree: i32, form_degree: usize, sector: Sector| TermPlan { degree, form_degree, sector, kind: TermKind::Full };
        let (terms, contracts): (Vec<TermPlan>, Vec<bool>) = match self {
            ComplexFamily::DeRham => ((0..=d).map(|p| t(p as i32, p, Sector::Holomorphic)).collect(), vec![false; d]),
            ComplexFamily::Log | ComplexFamily::MinorLogTwisted => ((0..=d).map(|p| t(p as i32, p, Sector::Log)).collect(), vec![false; d]),
            ComplexFamily::MinorLog => ((0..=d).map(|p| t(p as i32, p, Sector::MinorLog)).collect(), vec![false; d]),
            ComplexFamily::AugmentedMinorLog => {
                ((0..=d).map(|p| t(p as i32, p, Sector::Augmented(chart.m()))).collect(), vec![false; d])
            }
            ComplexFamily::FoliatedPsi(psi) => {
                if psi.degree() != 1 {
                    return Err(Error::Input("ψ must be a 1-form".into()));
                }
                let psi = psi.on_chart(&chart)?;
                if !psi.d().is_zero() {
                    return Err(Error::NotClosed);
                }
                let terms = (0..d)
                    .map(|j| TermPlan { degree: j as i32, form_degree: j + 1, sector: Sector::MinorLog, kind: TermKind::Wedge(psi.clone()) })
                    .collect();
                (terms, vec![false; d.saturating_sub(1)])
            }
            ComplexFamily::SimplicialDeRham(_) => {
                return Err(Error::Input("the simplicial family spans several strata".into()));
            }
            ComplexFamily::Brylinski(_) | ComplexFamily::MdP(..) => {
                ((0..=d).map(|p| t(p as i32, d - p, Sector::Holomorphic)).collect(), vec![true; d])
            }
            ComplexFamily::ThetaUpper(p) => {
                let n = p.n();
                ((0..=n).map(|i| t(i as i32, 2 * n - i, Sector::Holomorphic)).collect(), vec![true; n])
            }
            ComplexFamily::ThetaLog(p) => {
                let n = p.n();
                ((0..=2 * n).map(|i| t(i as i32, 2 * n - i, Sector::Log)).collect(), vec![true; 2 * n])
            }
            ComplexFamily::EHybrid(p) | ComplexFamily::DHybrid(p) => {
                let strand = if matches!(self, ComplexFamily::EHybrid(_)) { Strand::Ed } else { Strand::De };
                let n = p.n() as i32;
                let terms = (-n..=n).map(|i| t(i, strand.form_degree(p.n(), i).unwrap(), Sector::Holomorphic)).collect();
                (terms, (-n..n).map(|i| strand.uses_delta(i)).collect())
            }
            ComplexFamily::ImagePi(p) => {
                let n = p.n();
                let terms = (0..=n)
                    .map(|i| TermPlan { degree: i as i32, form_degree: i, sector: Sector::Holomorphic, kind: TermKind::Image(n - i) })
                    .collect();
                (terms, vec![false; n])
            }
        };
        Ok(Plan { poisson: self.poisson(), chart, terms, contracts, family: self })
    }
}

impl Plan<'_> {
    /// The differential leaving term `t`.
    pub fn apply(&self, t: usize, omega: &LogForm) -> Result<LogForm> {
        let chart = &self.chart;
        Ok(match self.family {
            ComplexFamily::MinorLogTwisted => {
                let d = chart.dim();
                let mut dlog_f = LogForm::zero(chart, 1);
                for i in 0..chart.m() {
                    dlog_f.add_comp(1 << i, RatFunc::one(d));
                }
                omega.d().add(&dlog_f.wedge(omega)?)?
            }
            ComplexFamily::Brylinski(p) => p.brylinski(omega),
            ComplexFamily::MdP(p, l) => p.delta_lambda(l, omega),
            ComplexFamily::ThetaUpper(p) | ComplexFamily::ThetaLog(p) => p.delta_mdp(omega),
            ComplexFamily::EHybrid(p) => p.strand_differential(Strand::Ed, self.terms[t].degree, omega)?,
            ComplexFamily::DHybrid(p) => p.strand_differential(Strand::De, self.terms[t].degree, omega)?,
            _ => omega.d(),
        })
    }
}

/// The Euler vector field `Σ x_i ∂_i` in the log basis.
pub fn euler_field(chart: &ChartRef) -> LogMultiVec {
    let d = chart.dim();
    let mut v = LogMultiVec::zero(chart, 1);
    for i in 0..d {
        let c = if chart.is_divisorial(i) { RatFunc::one(d) } else { RatFunc::from_poly(crate::algebra_core::Poly::var(d, i)) };
        v.add_comp(1 << i, c);
    }
    v
}
