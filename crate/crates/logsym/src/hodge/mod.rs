//! Hodge-diamond transforms for compact Kähler log-symplectic manifolds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `h^{p,q}` for `0 ≤ p, q ≤ 2n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    pub n: usize,
    pub h: Vec<Vec<u64>>,
}

impl HodgeDiamond {
    /// Validate shape, `h^{p,q} = h^{q,p}` and `h^{p,q} = h^{2n−p,2n−q}`.
    pub fn new(n: usize, h: Vec<Vec<u64>>) -> Result<Self> {
        let d = HodgeDiamond { n, h };
        d.validate()?;
        Ok(d)
    }

    pub fn zero(n: usize) -> Self {
        HodgeDiamond { n, h: vec![vec![0; 2 * n + 1]; 2 * n + 1] }
    }

    /// `h^{p,q} = C(2n,p)·C(2n,q)`, the diamond of a complex torus of dimension `2n`.
    pub fn torus(n: usize) -> Self {
        let b = |k: usize| -> u64 { (0..k).fold(1u64, |acc, i| acc * (2 * n - i) as u64 / (i as u64 + 1)) };
        let h = (0..=2 * n).map(|p| (0..=2 * n).map(|q| b(p) * b(q)).collect()).collect();
        HodgeDiamond { n, h }
    }

    pub fn validate(&self) -> Result<()> {
        let s = 2 * self.n + 1;
        if self.h.len() != s || self.h.iter().any(|r| r.len() != s) {
            return Err(Error::InvalidDiamond(format!("expected a {s}×{s} table")));
        }
        let top = 2 * self.n;
        for p in 0..s {
            for q in 0..s {
                if self.h[p][q] != self.h[q][p] {
                    return Err(Error::InvalidDiamond(format!("h^{{{p},{q}}} ≠ h^{{{q},{p}}}")));
                }
                if self.h[p][q] != self.h[top - p][top - q] {
                    return Err(Error::InvalidDiamond(format!("h^{{{p},{q}}} ≠ h^{{{},{}}}", top - p, top - q)));
                }
            }
        }
        Ok(())
    }

    /// `h^{p,q}`, zero outside the table.
    pub fn get(&self, p: i64, q: i64) -> u64 {
        let top = 2 * self.n as i64;
        if p < 0 || q < 0 || p > top || q > top {
            0
        } else {
            self.h[p as usize][q as usize]
        }
    }

    pub fn total(&self) -> u64 {
        self.h.iter().flatten().sum()
    }
}

/// Dimensions of a hypercohomology group with the filtration quotients that produce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilteredDim {
    pub degree: i64,
    /// `(p, q, h^{p,q})` for each quotient `H^q(X, Ω^p)`.
    pub quotients: Vec<(i64, i64, u64)>,
    pub dim: u64,
}

fn filtered(degree: i64, quotients: Vec<(i64, i64, u64)>) -> FilteredDim {
    let quotients: Vec<_> = quotients.into_iter().filter(|x| x.2 > 0).collect();
    let dim = quotients.iter().map(|x| x.2).sum();
    FilteredDim { degree, quotients, dim }
}

/// `H^i(Θ•)` for `i = 0..4n` with quotients `H^q(X, Ω^{2n−i+q})`.
pub fn theta_cohomology(h: &HodgeDiamond) -> Result<Vec<FilteredDim>> {
    h.validate()?;
    let top = 2 * h.n as i64;
    Ok((0..=2 * top)
        .map(|i| filtered(i, (0..=i).map(|q| (top - i + q, q, h.get(top - i + q, q))).collect()))
        .collect())
}

/// `dim H^i(Θ•)` for `i = 0..4n`.
pub fn theta_cohomology_dims(h: &HodgeDiamond) -> Result<Vec<u64>> {
    Ok(theta_cohomology(h)?.iter().map(|x| x.dim).collect())
}

/// `H^i` of the hybrids for `i = −n..3n`: quotients `H^{n+i−a}(X, Ω^{n±|n−a|})`, `a = 0..2n`.
pub fn dihelical(h: &HodgeDiamond) -> Result<(Vec<FilteredDim>, Vec<FilteredDim>)> {
    h.validate()?;
    let n = h.n as i64;
    let strand = |sign: i64| -> Vec<FilteredDim> {
        (-n..=3 * n)
            .map(|i| filtered(i, (0..=2 * n).map(|a| {
                let p = n + sign * (n - a).abs();
                let q = n + i - a;
                (p, q, h.get(p, q))
            }).collect()))
            .collect()
    };
    Ok((strand(1), strand(-1)))
}

/// Dimensions for `Ɖ•` and `Đ•`, indexed from degree `−n`.
pub fn dihelical_dims(h: &HodgeDiamond) -> Result<(Vec<u64>, Vec<u64>)> {
    let (e, d) = dihelical(h)?;
    Ok((e.iter().map(|x| x.dim).collect(), d.iter().map(|x| x.dim).collect()))
}

/// The table rotated clockwise by a quarter turn: `r[i][j] = h[2n−j][i]`.
pub fn rotate_table(t: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let s = t.len();
    (0..s).map(|i| (0..s).map(|j| t[s - 1 - j][i]).collect()).collect()
}

/// The diamond rotated clockwise; its rows `i + j = const` list the `Θ` quotients.
pub fn rotate_diamond(h: &HodgeDiamond) -> Result<Vec<Vec<u64>>> {
    h.validate()?;
    Ok(rotate_table(&h.h))
}

/// Sums along the rows `i + j = k` of a square table.
pub fn diamond_row_sums(t: &[Vec<u64>]) -> Vec<u64> {
    let s = t.len();
    let mut out = vec![0; (2 * s).saturating_sub(1)];
    for (i, row) in t.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[i + j] += x;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub i: usize,
    pub value: u64,
    pub holds: bool,
}

/// Which of `h^{2n−i,i} = 0`, `i = 0..a`, hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoReport {
    pub a: i64,
    pub constraints: Vec<Constraint>,
    /// False when the diamond cannot carry a residually generic structure with `X_k` Fano for `k ≤ a`.
    pub consistent: bool,
}

pub fn rg_fano_constraint_report(h: &HodgeDiamond, a: i64) -> Result<FanoReport> {
    h.validate()?;
    let top = 2 * h.n;
    let last = a.min(top as i64);
    let constraints: Vec<Constraint> = (0..=last)
        .map(|i| {
            let i = i as usize;
            let value = h.h[top - i][i];
            Constraint { i, value, holds: value == 0 }
        })
        .collect();
    let consistent = constraints.iter().all(|c| c.holds);
    Ok(FanoReport { a, constraints, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1xp1() -> HodgeDiamond {
        HodgeDiamond::new(1, vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]).unwrap()
    }

    #[test]
    fn theta_dims() {
        assert_eq!(theta_cohomology_dims(&p1xp1()).unwrap(), vec![0, 0, 4, 0, 0]);
        assert_eq!(theta_cohomology_dims(&HodgeDiamond::torus(1)).unwrap(), vec![1, 4, 6, 4, 1]);
        assert_eq!(theta_cohomology_dims(&HodgeDiamond::zero(2)).unwrap(), vec![0; 9]);
    }

    #[test]
    fn rotation() {
        let h = HodgeDiamond::torus(1);
        let r = rotate_diamond(&h).unwrap();
        assert_eq!(diamond_row_sums(&r), theta_cohomology_dims(&h).unwrap());
        let mut t = h.h.clone();
        for _ in 0..4 {
            t = rotate_table(&t);
        }
        assert_eq!(t, h.h);
    }

    fn strand_oracle(h: &HodgeDiamond, form_degree: impl Fn(i64) -> i64) -> Vec<u64> {
        let n = h.n as i64;
        let mut out = vec![0; 4 * h.n + 1];
        for j in -n..=n {
            for q in 0..=2 * n {
                out[(j + q + n) as usize] += h.get(form_degree(j), q);
            }
        }
        out
    }

    #[test]
    fn hybrids() {
        for h in [p1xp1(), HodgeDiamond::torus(1), HodgeDiamond::torus(2)] {
            let n = h.n as i64;
            let (e, d) = dihelical_dims(&h).unwrap();
            assert_eq!(e, strand_oracle(&h, |j| n + j.abs()));
            assert_eq!(d, strand_oracle(&h, |j| n - j.abs()));
        }
        assert_eq!(dihelical_dims(&p1xp1()).unwrap(), (vec![0, 0, 3, 0, 1], vec![1, 0, 3, 0, 0]));
        assert_eq!(dihelical_dims(&HodgeDiamond::zero(1)).unwrap(), (vec![0; 5], vec![0; 5]));
    }

    #[test]
    fn fano_constraints() {
        assert!(rg_fano_constraint_report(&p1xp1(), 0).unwrap().consistent);
        let r = rg_fano_constraint_report(&HodgeDiamond::torus(1), 0).unwrap();
        assert!(!r.consistent);
        assert_eq!(r.constraints[0].value, 1);
        assert!(rg_fano_constraint_report(&HodgeDiamond::torus(1), -1).unwrap().constraints.is_empty());
    }

    #[test]
    fn invalid() {
        assert!(HodgeDiamond::new(1, vec![vec![1, 1, 0], vec![0, 2, 0], vec![0, 0, 1]]).is_err());
        assert!(HodgeDiamond::new(1, vec![vec![1]]).is_err());
    }
}
