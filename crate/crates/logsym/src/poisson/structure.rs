//! Poisson bivectors with their Pfaffian, log-symplectic form and conormal forms.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::algebra_core::forms::{mask_indices, masks_of_degree};
use crate::algebra_core::linalg::{rat_inverse, RatMatrix};
use crate::algebra_core::{ChartRef, LogForm, LogMultiVec, Mono, Poly, Q, RatFunc};
use crate::error::{Error, Result};

/// A Poisson bivector with cached derived data.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    chart: ChartRef,
    n: usize,
    bivector: LogMultiVec,
    powers: Vec<LogMultiVec>,
    top: Poly,
    pfaffian: Poly,
    pfaffian_scale: Q,
    volume: LogMultiVec,
    a: RatMatrix,
    b: RatMatrix,
    phi: LogForm,
    phi_regular: bool,
    log_symplectic: bool,
}

/// `ψ_i = ⟨Φ, v_i⟩` for a divisorial index `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConormalData {
    pub branch: usize,
    pub psi: LogForm,
}

fn factorial(k: usize) -> Q {
    (1..=k).fold(Q::one(), |acc, j| acc * Q::from_integer((j as i64).into()))
}

/// Check `[Π, Π] = 0` and cache the Pfaffian, `A`, `B` and `Φ`.
pub fn make_poisson(chart: &ChartRef, bivector: &LogMultiVec) -> Result<PoissonStructure> {
    let d = chart.dim();
    if d % 2 == 1 {
        return Err(Error::Input(format!("Poisson structures need even dimension, got {d}")));
    }
    if bivector.degree() != 2 {
        return Err(Error::Input(format!("bivector has degree {}", bivector.degree())));
    }
    let n = d / 2;
    let chart: ChartRef = match chart.half_dim() {
        Some(_) => chart.clone(),
        None => Arc::new(chart.with_half_dim(n)?),
    };
    let bivector = bivector.on_chart(&chart)?;
    if !bivector.is_polynomial() {
        return Err(Error::NonPolynomialCoefficients);
    }
    let bracket = bivector.schouten(&bivector)?;
    if !bracket.is_zero() {
        return Err(Error::NotPoisson(format!("[Π,Π] = {bracket}")));
    }
    let mut powers = vec![bivector.power(0)];
    for k in 1..=n {
        let next = powers[k - 1].wedge(&bivector)?;
        powers.push(next);
    }
    let full = (1u32 << d) - 1;
    let top = powers[n].coeff(full);
    if top.is_zero() {
        return Err(Error::DegeneratePfaffian);
    }
    let top = top.as_poly().cloned().ok_or(Error::NonPolynomialCoefficients)?;
    let mut divisor = Poly::one(d);
    for i in 0..chart.m() {
        divisor = divisor.mul_mono(&Mono::var(d, i), &Q::one());
    }
    let raw = &top * &divisor;
    let (_, lead) = raw.leading().expect("nonzero");
    let pfaffian_scale = lead.clone();
    let pfaffian = raw.monic();
    let log_symplectic = !top.coeff(&Mono::one(d)).is_zero();
    let volume = LogMultiVec::term(&chart, full, RatFunc::new(Poly::one(d), divisor));

    let mut a = vec![vec![RatFunc::zero(d); d]; d];
    for (mask, c) in bivector.comps() {
        let ij: Vec<usize> = mask_indices(*mask).collect();
        a[ij[0]][ij[1]] = c.clone();
        a[ij[1]][ij[0]] = -c;
    }
    let inv = rat_inverse(&a).ok_or(Error::DegeneratePfaffian)?;
    let b: RatMatrix = inv.iter().map(|row| row.iter().map(|x| -x).collect()).collect();
    let mut phi = LogForm::zero(&chart, 2);
    for i in 0..d {
        for j in i + 1..d {
            phi.add_comp(1 << i | 1 << j, b[i][j].clone());
        }
    }
    let phi_regular = b.iter().flatten().all(RatFunc::regular_at_origin);
    Ok(PoissonStructure {
        chart,
        n,
        bivector,
        powers,
        top,
        pfaffian,
        pfaffian_scale,
        volume,
        a,
        b,
        phi,
        phi_regular,
        log_symplectic,
    })
}

impl PoissonStructure {
    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    /// Half dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bivector(&self) -> &LogMultiVec {
        &self.bivector
    }

    /// `Π^k` (ordinary wedge power) for `0 ≤ k ≤ n`.
    pub fn power(&self, k: usize) -> &LogMultiVec {
        &self.powers[k]
    }

    /// `Π^(k) = Π^k / k!`.
    pub fn divided_power(&self, k: usize) -> LogMultiVec {
        self.powers[k].scale(&factorial(k).recip())
    }

    /// Normalized Pfaffian `F`: leading coefficient 1 in graded-lex order.
    pub fn pfaffian(&self) -> &Poly {
        &self.pfaffian
    }

    /// Constant `u` with `Π^n = u·F·V`.
    pub fn pfaffian_scale(&self) -> &Q {
        &self.pfaffian_scale
    }

    /// Log-basis coefficient of `Π^n`, i.e. the raw Pfaffian divided by `x_1⋯x_m`.
    pub fn log_pfaffian(&self) -> &Poly {
        &self.top
    }

    /// `V = ∂_1 ∧ ⋯ ∧ ∂_{2n}` in the log basis.
    pub fn volume(&self) -> &LogMultiVec {
        &self.volume
    }

    /// `a_ij`: coefficient of `v_i ∧ v_j`, extended skew-symmetrically.
    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    /// `B = (A⁻¹)ᵀ`, the coefficient matrix of `Φ`.
    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    pub fn log_symplectic(&self) -> bool {
        self.log_symplectic
    }

    /// Log-symplectic form `Φ = Σ_{i<j} b_ij v*_i ∧ v*_j`.
    pub fn phi(&self) -> Result<&LogForm> {
        if !self.log_symplectic {
            return Err(Error::LogSymplecticViolation("Pfaffian is not a unit times the divisor equation".into()));
        }
        if !self.phi_regular {
            return Err(Error::LogSymplecticViolation("Φ has poles beyond the log poles".into()));
        }
        Ok(&self.phi)
    }

    /// `Φ` as computed, without the regularity check.
    pub fn phi_unchecked(&self) -> &LogForm {
        &self.phi
    }

    /// `⟨Π^(n), Φ^(i)⟩ = Π^(n−i)` with divided powers.
    pub fn verify_phi_powers(&self, i: usize) -> Result<bool> {
        if i > self.n {
            return Err(Error::Input(format!("power {i} exceeds n = {}", self.n)));
        }
        let phi_i = self.phi.power(i).scale(&factorial(i).recip());
        let lhs = phi_i.contract_into(&self.divided_power(self.n))?;
        Ok(lhs == self.divided_power(self.n - i))
    }

    /// `ψ_i = ⟨Φ, v_i⟩ = Σ_j b_ij v*_j`, checked closed.
    pub fn psi_form(&self, branch: usize) -> Result<ConormalData> {
        if branch >= self.chart.m() {
            return Err(Error::Input(format!("branch {} is not divisorial", branch + 1)));
        }
        let phi = self.phi()?;
        let psi = LogMultiVec::basis(&self.chart, 1 << branch).contract(phi)?;
        if !psi.d().is_zero() {
            return Err(Error::NotClosed);
        }
        Ok(ConormalData { branch, psi })
    }

    /// `ι_{Π^k} ω`, zero when `deg ω < 2k`.
    pub fn iota(&self, k: usize, omega: &LogForm) -> LogForm {
        if k > self.n {
            return LogForm::zero(omega.chart(), 0);
        }
        self.powers[k].interior(omega)
    }

    /// Matrix of `ι_{Π^i}: Ω^{n+i}[log] → Ω^{n−i}[log]` in the log bases.
    pub fn log_duality_matrix(&self, i: usize) -> RatMatrix {
        let d = self.chart.dim();
        let src = masks_of_degree(d, self.n + i);
        let dst = masks_of_degree(d, self.n - i);
        let pos: BTreeMap<u32, usize> = dst.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let mut m = vec![vec![RatFunc::zero(d); src.len()]; dst.len()];
        for (col, mask) in src.iter().enumerate() {
            let img = self.iota(i, &LogForm::basis(&self.chart, *mask));
            for (r, c) in img.comps() {
                m[pos[r]][col] = c.clone();
            }
        }
        m
    }

    /// `ι_{Π^i}` is invertible on log forms with inverse entries regular at the origin.
    pub fn log_duality_verify(&self, i: usize) -> Result<bool> {
        self.require_log_symplectic()?;
        if i > self.n {
            return Err(Error::Input(format!("index {i} exceeds n = {}", self.n)));
        }
        Ok(match rat_inverse(&self.log_duality_matrix(i)) {
            Some(inv) => inv.iter().flatten().all(RatFunc::regular_at_origin),
            None => false,
        })
    }

    /// `π̃` on a log form of degree `n + i`: `ι_{Π^i}` for `i ≥ 0`, the inverse of `ι_{Π^{|i|}}` otherwise.
    pub fn log_duality_apply(&self, omega: &LogForm) -> Result<LogForm> {
        self.require_log_symplectic()?;
        let k = omega.degree();
        if k >= self.n {
            return Ok(self.iota(k - self.n, omega));
        }
        let i = self.n - k;
        let d = self.chart.dim();
        let inv = rat_inverse(&self.log_duality_matrix(i))
            .ok_or_else(|| Error::LogSymplecticViolation("log duality is singular".into()))?;
        let rows = masks_of_degree(d, self.n + i);
        let cols = masks_of_degree(d, k);
        let mut out = LogForm::zero(&self.chart, self.n + i);
        for (c, mask) in cols.iter().enumerate() {
            let f = omega.coeff(*mask);
            if f.is_zero() {
                continue;
            }
            for (r, rmask) in rows.iter().enumerate() {
                if !inv[r][c].is_zero() {
                    out.add_comp(*rmask, &inv[r][c] * &f);
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn require_log_symplectic(&self) -> Result<()> {
        if self.log_symplectic {
            Ok(())
        } else {
            Err(Error::LogSymplecticViolation("Pfaffian is not a unit times the divisor equation".into()))
        }
    }

    /// The same structure re-centred at `center` (see [`LogForm::translate`]).
    pub fn translate(&self, center: &[Q]) -> Result<PoissonStructure> {
        let pi = self.bivector.translate(center)?;
        make_poisson(&pi.chart().clone(), &pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::parser::{parse_form, parse_multivec};
    use crate::algebra_core::{qi, Chart};

    fn pi(chart: &ChartRef, text: &str) -> PoissonStructure {
        make_poisson(chart, &parse_multivec(chart, text, 2).unwrap()).unwrap()
    }

    #[test]
    fn symplectic_plane() {
        let c = Chart::plain(&["x", "y"]).unwrap();
        let p = pi(&c, "D(x)/\\D(y)");
        assert!(p.pfaffian().is_one());
        assert_eq!(p.phi().unwrap(), &parse_form(&c, "d(x)/\\d(y)", 2).unwrap());
    }

    #[test]
    fn log_plane() {
        let c = Chart::new(&["x", "y"], &["x"]).unwrap();
        let p = pi(&c, "x*D(x)/\\D(y)");
        assert_eq!(p.pfaffian(), &Poly::var(2, 0));
        assert!(p.log_symplectic());
        assert_eq!(p.phi().unwrap(), &parse_form(&c, "dlog(x)/\\d(y)", 2).unwrap());
        assert_eq!(p.psi_form(0).unwrap().psi, parse_form(&c, "d(y)", 1).unwrap());
        assert!(p.verify_phi_powers(1).unwrap());
        let one = p.log_duality_apply(&parse_form(&c, "dlog(x)/\\d(y)", 2).unwrap()).unwrap();
        assert_eq!(one, LogForm::scalar(p.chart(), RatFunc::one(2)));
    }

    #[test]
    fn non_poisson_rejected() {
        let c = Chart::plain(&["x1", "x2", "x3", "x4"]).unwrap();
        let b = parse_multivec(&c, "x3*D(x1)/\\D(x2) + x1*D(x2)/\\D(x3) + x1*D(x3)/\\D(x1)", 2).unwrap();
        assert!(matches!(make_poisson(&c, &b), Err(Error::NotPoisson(_))));
    }

    #[test]
    fn degenerate_rejected() {
        let c = Chart::plain(&["x1", "x2", "x3", "x4"]).unwrap();
        let b = parse_multivec(&c, "D(x1)/\\D(x2)", 2).unwrap();
        assert!(matches!(make_poisson(&c, &b), Err(Error::DegeneratePfaffian)));
    }

    #[test]
    fn non_log_symplectic_flagged() {
        let c = Chart::plain(&["x", "y"]).unwrap();
        let p = pi(&c, "x^2*D(x)/\\D(y)");
        assert!(!p.log_symplectic());
        assert!(p.phi().is_err());
        assert_eq!(p.pfaffian_scale(), &qi(1));
    }
}
