//! The Brylinski and MdP differentials, the dihelical strands and their bonding maps.

use num::One;

use super::structure::PoissonStructure;
use crate::algebra_core::{LogForm, Q};
use crate::error::{Error, Result};

fn qn(k: i64) -> Q {
    Q::from_integer(k.into())
}

fn combine(a: &Q, x: &LogForm, b: &Q, y: &LogForm) -> LogForm {
    x.scale(a).add(&y.scale(b)).expect("same chart")
}

/// The four graded strands of the double helix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strand {
    /// `Θ^i = Ω^{2n−i}` with `δ`, `i ∈ [0, 2n]`.
    Theta,
    /// `Ω^i` with `d`, `i ∈ [0, 2n]`.
    DeRham,
    /// `Ɖ`: `Ω^{n−i}` for `i ≤ 0` with `δ`, `Ω^{n+i}` for `i ≥ 1` with `d`.
    Ed,
    /// `Đ`: `Ω^{n+i}` for `i ≤ 0` with `d`, `Ω^{n−i}` for `i ≥ 1` with `δ`.
    De,
}

impl Strand {
    /// Degree range of the strand.
    pub fn range(&self, n: usize) -> (i32, i32) {
        let n = n as i32;
        match self {
            Strand::Theta | Strand::DeRham => (0, 2 * n),
            Strand::Ed | Strand::De => (-n, n),
        }
    }

    /// Form degree of the term in strand degree `i`.
    pub fn form_degree(&self, n: usize, i: i32) -> Option<usize> {
        let (lo, hi) = self.range(n);
        if i < lo || i > hi {
            return None;
        }
        let n = n as i32;
        let k = match self {
            Strand::Theta => 2 * n - i,
            Strand::DeRham => i,
            Strand::Ed => n + i.abs(),
            Strand::De => n - i.abs(),
        };
        Some(k as usize)
    }

    /// Whether the differential leaving degree `i` is `δ` (otherwise `d`).
    pub fn uses_delta(&self, i: i32) -> bool {
        match self {
            Strand::Theta => true,
            Strand::DeRham => false,
            Strand::Ed => i < 0,
            Strand::De => i >= 0,
        }
    }
}

impl PoissonStructure {
    /// Brylinski operator `∂ = dι_Π − ι_Π d`.
    pub fn brylinski(&self, omega: &LogForm) -> LogForm {
        let a = self.iota(1, omega).d();
        let b = self.iota(1, &omega.d());
        combine(&Q::one(), &a, &-Q::one(), &b)
    }

    /// `δ_{λ,j} = (j+λ) dι_Π − (j+λ−1) ι_Π d` on a `j`-form.
    pub fn delta_lambda(&self, lambda: &Q, omega: &LogForm) -> LogForm {
        let j = qn(omega.degree() as i64) + lambda;
        let a = self.iota(1, omega).d();
        let b = self.iota(1, &omega.d());
        combine(&j, &a, &-(&j - Q::one()), &b)
    }

    /// MdP differential `δ_i = i dι_Π − (i−1) ι_Π d` on `Ω^{n+i}` (that is, `λ = −n`).
    pub fn delta_mdp(&self, omega: &LogForm) -> LogForm {
        self.delta_lambda(&qn(-(self.n() as i64)), omega)
    }

    /// Differential of a strand leaving degree `i`.
    pub fn strand_differential(&self, strand: Strand, i: i32, omega: &LogForm) -> Result<LogForm> {
        self.check_strand_degree(strand, i, omega)?;
        Ok(if strand.uses_delta(i) { self.delta_mdp(omega) } else { omega.d() })
    }

    fn check_strand_degree(&self, strand: Strand, i: i32, omega: &LogForm) -> Result<()> {
        match strand.form_degree(self.n(), i) {
            Some(k) if k == omega.degree() || omega.is_zero() => Ok(()),
            Some(k) => Err(Error::Input(format!("strand degree {i} holds {k}-forms, got a {}-form", omega.degree()))),
            None => Err(Error::Input(format!("strand degree {i} out of range"))),
        }
    }

    /// `π: Θ^i → Ω^i`, `ι_{Π^{n−i}}` on `Ω^{2n−i}`, for `0 ≤ i ≤ n`.
    pub fn bonding_pi(&self, i: usize, omega: &LogForm) -> Result<LogForm> {
        let n = self.n();
        if i > n {
            return Err(Error::Input(format!("π is defined in degrees 0..={n}")));
        }
        self.check_strand_degree(Strand::Theta, i as i32, omega)?;
        Ok(self.iota(n - i, omega))
    }

    /// `π′: Ω^i → Θ^i`, `ι_{Π^{i−n}}` on `Ω^i`, for `n ≤ i ≤ 2n`.
    pub fn bonding_pi_prime(&self, i: usize, omega: &LogForm) -> Result<LogForm> {
        let n = self.n();
        if i < n || i > 2 * n {
            return Err(Error::Input(format!("π′ is defined in degrees {n}..={}", 2 * n)));
        }
        self.check_strand_degree(Strand::DeRham, i as i32, omega)?;
        Ok(self.iota(i - n, omega))
    }

    /// `π: Ɖ^i → Đ^i`, `ι_{Π^{|i|}}`.
    pub fn bonding_hybrid(&self, i: i32, omega: &LogForm) -> Result<LogForm> {
        self.check_strand_degree(Strand::Ed, i, omega)?;
        Ok(self.iota(i.unsigned_abs() as usize, omega))
    }

    /// Both sides of the bonding square leaving degree `i`:
    /// `(diff_target(π_i ω), π_{i+1}(diff_source ω))`.
    pub fn bonding_square(&self, source: Strand, i: i32, omega: &LogForm) -> Result<(LogForm, LogForm)> {
        let n = self.n() as i32;
        match source {
            Strand::Theta => {
                if i < 0 || i >= n {
                    return Err(Error::Input(format!("Θ square index {i} outside 0..{n}")));
                }
                let top = self.bonding_pi(i as usize, omega)?.d();
                let low = self.bonding_pi(i as usize + 1, &self.delta_mdp(omega))?;
                Ok((top, low))
            }
            Strand::DeRham => {
                if i < n || i >= 2 * n {
                    return Err(Error::Input(format!("Ω square index {i} outside {n}..{}", 2 * n)));
                }
                let top = self.delta_mdp(&self.bonding_pi_prime(i as usize, omega)?);
                let low = self.bonding_pi_prime(i as usize + 1, &omega.d())?;
                Ok((top, low))
            }
            Strand::Ed => {
                if i < -n || i >= n {
                    return Err(Error::Input(format!("Ɖ square index {i} outside {}..{n}", -n)));
                }
                let top = self.strand_differential(Strand::De, i, &self.bonding_hybrid(i, omega)?)?;
                let low = self.bonding_hybrid(i + 1, &self.strand_differential(Strand::Ed, i, omega)?)?;
                Ok((top, low))
            }
            Strand::De => Err(Error::Input("Đ is the target strand".into())),
        }
    }

    /// Both commutation identities for `1 ≤ m ≤ n` on `ω`:
    /// `dι_{Π^m} = ι_{Π^{m−1}}(m dι_Π − (m−1)ι_Π d)` and
    /// `ι_{Π^m} d = (m ι_Π d − (m−1) dι_Π) ι_{Π^{m−1}}`.
    pub fn verify_commutation(&self, m: usize, omega: &LogForm) -> Result<(bool, bool)> {
        if m == 0 || m > self.n() {
            return Err(Error::Input(format!("power {m} outside 1..={}", self.n())));
        }
        let mq = qn(m as i64);
        let m1 = qn(m as i64 - 1);
        let lhs1 = self.iota(m, omega).d();
        let inner = combine(&mq, &self.iota(1, omega).d(), &-m1.clone(), &self.iota(1, &omega.d()));
        let rhs1 = self.iota(m - 1, &inner);
        let lhs2 = self.iota(m, &omega.d());
        let pre = self.iota(m - 1, omega);
        let rhs2 = combine(&mq, &self.iota(1, &pre.d()), &-m1, &self.iota(1, &pre).d());
        Ok((lhs1 == rhs1, lhs2 == rhs2))
    }
}

/// `true` when both sides of a square agree.
pub fn square_commutes(sides: &(LogForm, LogForm)) -> bool {
    sides.0 == sides.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::parser::{parse_form, parse_multivec};
    use crate::algebra_core::{Chart, ChartRef};
    use crate::poisson::make_poisson;

    fn structure(chart: &ChartRef, text: &str) -> PoissonStructure {
        make_poisson(chart, &parse_multivec(chart, text, 2).unwrap()).unwrap()
    }

    #[test]
    fn mdp_on_top_forms() {
        let c = Chart::new(&["x", "y"], &["x"]).unwrap();
        let p = structure(&c, "x*D(x)/\\D(y)");
        let w = parse_form(&c, "x*dlog(x)/\\d(y)", 2).unwrap();
        assert_eq!(p.delta_mdp(&w), parse_form(&c, "x*dlog(x)", 1).unwrap());
    }

    #[test]
    fn brylinski_kills_symplectic_volume() {
        let c = Chart::plain(&["x", "y"]).unwrap();
        let p = structure(&c, "D(x)/\\D(y)");
        assert!(p.brylinski(&parse_form(&c, "d(x)/\\d(y)", 2).unwrap()).is_zero());
    }

    #[test]
    fn commutation_example() {
        let c = Chart::plain(&["x1", "x2", "x3", "x4"]).unwrap();
        let p = structure(&c, "D(x1)/\\D(x2) + D(x3)/\\D(x4)");
        let w = parse_form(&c, "x1*d(x1)/\\d(x2)/\\d(x3)", 3).unwrap();
        assert_eq!(p.verify_commutation(2, &w).unwrap(), (true, true));
    }

    #[test]
    fn strand_degrees() {
        assert_eq!(Strand::Ed.form_degree(2, -2), Some(4));
        assert_eq!(Strand::Ed.form_degree(2, 1), Some(3));
        assert_eq!(Strand::De.form_degree(2, -2), Some(0));
        assert_eq!(Strand::De.form_degree(2, 2), Some(0));
        assert_eq!(Strand::Theta.form_degree(1, 3), None);
    }
}
