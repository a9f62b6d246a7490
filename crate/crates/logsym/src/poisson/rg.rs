//! Finite checks of the genericity conditions: residual generality and hypothesis (*).

use num::Zero;
use serde::Serialize;

use super::structure::PoissonStructure;
use crate::algebra_core::forms::mask_indices;
use crate::algebra_core::linalg::{pfaffian, rank, SparseVec};
use crate::algebra_core::{ChartRef, LogForm, Mono, Q, RatFunc};
use crate::error::{Error, Result};

/// Value at the origin of a function regular there.
pub fn value_at_origin(f: &RatFunc) -> Option<Q> {
    let d = f.nvars();
    let den = f.den().coeff(&Mono::one(d));
    if den.is_zero() {
        return None;
    }
    Some(f.num().coeff(&Mono::one(d)) / den)
}

/// Outcome of the residual generality proxy at a stratum origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RgReport {
    pub passed: bool,
    /// 1-based indices of the failing principal minor or residue block.
    pub witness: Option<Vec<usize>>,
    pub reason: String,
    /// The polar block vanishes identically at the point, as for P-normal structures.
    pub polar_block_vanishes: bool,
}

impl PoissonStructure {
    /// Residual generality proxy at the origin of the stratum `x_i = 0, i ∈ branch`:
    /// every even principal Pfaffian minor of the polar block of `A` is nonzero and the
    /// residues of `ψ_i, i ∈ branch`, have the maximal rank a skew block allows.
    pub fn rg_check(&self, branch: u32) -> Result<RgReport> {
        self.require_log_symplectic()?;
        self.phi()?;
        let chart = self.chart();
        if branch & !chart.divisor_mask() != 0 {
            return Err(Error::Input("stratum indices must be divisorial".into()));
        }
        let idx: Vec<usize> = mask_indices(branch).collect();
        let at0 = |f: &RatFunc| value_at_origin(f).ok_or_else(|| Error::LogSymplecticViolation("pole at the origin".into()));
        let mut block = vec![vec![Q::zero(); idx.len()]; idx.len()];
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                block[r][c] = at0(&self.a()[i][j])?;
            }
        }
        let polar_block_vanishes = idx.len() >= 2 && block.iter().flatten().all(Zero::is_zero);
        let k = idx.len();
        for sub in 1u32..(1u32 << k) {
            if sub.count_ones() % 2 == 1 {
                continue;
            }
            let pick: Vec<usize> = mask_indices(sub).collect();
            let minor: Vec<Vec<Q>> = pick.iter().map(|&r| pick.iter().map(|&c| block[r][c].clone()).collect()).collect();
            if pfaffian(&minor).is_zero() {
                return Ok(RgReport {
                    passed: false,
                    witness: Some(pick.iter().map(|&r| idx[r] + 1).collect()),
                    reason: "principal Pfaffian minor of the polar block vanishes".into(),
                    polar_block_vanishes,
                });
            }
        }
        let mut rows: Vec<SparseVec> = Vec::new();
        for &i in &idx {
            let mut v = SparseVec::new();
            for (c, &j) in idx.iter().enumerate() {
                let x = at0(&self.b()[i][j])?;
                if !x.is_zero() {
                    v.insert(c, x);
                }
            }
            rows.push(v);
        }
        let want = if k % 2 == 0 { k } else { k - 1 };
        if rank(&rows) < want {
            return Ok(RgReport {
                passed: false,
                witness: Some(idx.iter().map(|i| i + 1).collect()),
                reason: "residues of the conormal forms are dependent".into(),
                polar_block_vanishes,
            });
        }
        Ok(RgReport { passed: true, witness: None, reason: String::new(), polar_block_vanishes })
    }
}

/// Outcome of hypothesis (*) up to a cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub passed: bool,
    /// Failing stratum (1-based divisorial indices) and multi-index `(m.)`.
    pub witness: Option<(Vec<usize>, Vec<u32>)>,
}

/// Hypothesis (*): `ψ` and `χ_{(m.)} + χ_{(1.)}` are independent at every point of
/// multiplicity at least 2, for all multi-indices with entries at most `cutoff`.
///
/// Coefficients of `ψ` are evaluated at the chart origin. At a generic point of the
/// stratum `X_J`, the log basis is `dlog x_j (j ∈ J)` together with `dx` for the
/// other coordinates, and `χ` only involves the former.
pub fn hypothesis_star_check(chart: &ChartRef, psi: &LogForm, cutoff: u32) -> Result<StarReport> {
    if psi.degree() != 1 {
        return Err(Error::Input("ψ must be a 1-form".into()));
    }
    let psi = psi.on_chart(chart)?;
    if !psi.d().is_zero() {
        return Err(Error::NotClosed);
    }
    let d = chart.dim();
    let mut v = Vec::with_capacity(d);
    for i in 0..d {
        v.push(value_at_origin(&psi.coeff(1 << i)).ok_or_else(|| Error::Input("ψ has a pole at the origin".into()))?);
    }
    let m = chart.m();
    for stratum in 1u32..(1u32 << m) {
        if stratum.count_ones() < 2 {
            continue;
        }
        if (0..d).any(|i| stratum >> i & 1 == 0 && !v[i].is_zero()) {
            continue;
        }
        let idx: Vec<usize> = mask_indices(stratum).collect();
        let mut multi = vec![0u32; idx.len()];
        loop {
            // (m.) + (1.) proportional to the residues of ψ along J
            let chi: Vec<Q> = multi.iter().map(|&x| Q::from_integer((x as i64 + 1).into())).collect();
            let dependent = (0..idx.len()).all(|a| {
                (a + 1..idx.len()).all(|b| &v[idx[a]] * &chi[b] == &v[idx[b]] * &chi[a])
            });
            if dependent {
                return Ok(StarReport { passed: false, witness: Some((idx.iter().map(|i| i + 1).collect(), multi)) });
            }
            let mut pos = 0;
            while pos < multi.len() && multi[pos] == cutoff {
                multi[pos] = 0;
                pos += 1;
            }
            if pos == multi.len() {
                break;
            }
            multi[pos] += 1;
        }
    }
    Ok(StarReport { passed: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::parser::parse_form;
    use crate::algebra_core::Chart;

    #[test]
    fn star_generic_residues() {
        let c = Chart::standard(2, 2);
        let psi = parse_form(&c, "dlog(x1) + 7/3*dlog(x2)", 1).unwrap();
        assert!(hypothesis_star_check(&c, &psi, 5).unwrap().passed);
        let r = hypothesis_star_check(&c, &psi, 6).unwrap();
        assert_eq!(r.witness, Some((vec![1, 2], vec![2, 6])));
    }

    #[test]
    fn star_fails_on_chi() {
        let c = Chart::standard(2, 2);
        let psi = parse_form(&c, "dlog(x1) + dlog(x2)", 1).unwrap();
        let r = hypothesis_star_check(&c, &psi, 5).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness, Some((vec![1, 2], vec![0, 0])));
    }

    #[test]
    fn star_plain_direction() {
        let c = Chart::new(&["x1", "x2", "y"], &["x1", "x2"]).unwrap();
        let psi = parse_form(&c, "d(y)", 1).unwrap();
        assert!(hypothesis_star_check(&c, &psi, 5).unwrap().passed);
        let bad = parse_form(&c, "y*d(y)", 1).unwrap();
        assert!(!hypothesis_star_check(&c, &bad, 1).unwrap().passed);
        let open = parse_form(&c, "x1*d(y)", 1).unwrap();
        assert_eq!(hypothesis_star_check(&c, &open, 1), Err(Error::NotClosed));
    }
}
