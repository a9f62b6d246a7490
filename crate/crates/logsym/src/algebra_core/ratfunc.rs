//! Reduced fractions of polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;

use super::poly::{Poly, Q};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Normalizing constructor. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let n = num.nvars();
            return RatFunc { num, den: Poly::one(n) };
        }
        if let Some(c) = den.as_constant() {
            let n = num.nvars();
            return RatFunc { num: num.scale(&c.recip()), den: Poly::one(n) };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading().unwrap().1.recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    /// Build from a pair already known to be coprime, fixing only the leading coefficient.
    fn coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let n = num.nvars();
            return RatFunc { num, den: Poly::one(n) };
        }
        let lc = den.leading().expect("nonzero denominator").1.recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    /// `num / den` where every common factor of the two divides `g`.
    fn reduce_against(mut num: Poly, mut den: Poly, mut g: Poly) -> Self {
        loop {
            if num.is_zero() {
                return RatFunc::zero(den.nvars());
            }
            let h = Poly::gcd(&num, &g);
            if h.is_constant() {
                return RatFunc::coprime(num, den);
            }
            num = num.div_exact(&h).expect("gcd divides");
            den = den.div_exact(&h).expect("gcd divides");
            g = h;
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFunc { num: p, den: Poly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        RatFunc::from_poly(Poly::constant(nvars, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.is_poly() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        if self.is_poly() {
            RatFunc::from_poly(&self.num * p)
        } else {
            RatFunc::new(&self.num * p, self.den.clone())
        }
    }

    pub fn recip(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    /// Partial derivative by the quotient rule, cancelling `gcd(D, ∂D)` up front.
    pub fn deriv(&self, i: usize) -> RatFunc {
        if self.is_poly() {
            return RatFunc::from_poly(self.num.deriv(i));
        }
        let dd = self.den.deriv(i);
        if dd.is_zero() {
            return RatFunc::new(self.num.deriv(i), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &dd);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let e = dd.div_exact(&g).expect("gcd divides");
        let n = &(&self.num.deriv(i) * &d1) - &(&self.num * &e);
        RatFunc::new(n, &self.den * &d1)
    }

    /// `x_i ∂/∂x_i`.
    pub fn euler(&self, i: usize) -> RatFunc {
        if self.is_poly() {
            return RatFunc::from_poly(self.num.euler(i));
        }
        self.deriv(i).mul_poly(&Poly::var(self.nvars(), i))
    }

    /// Substitute `x_i -> x_i + c`.
    pub fn shift(&self, i: usize, c: &Q) -> RatFunc {
        RatFunc::new(self.num.shift(i, c), self.den.shift(i, c))
    }

    /// Substitute `x_i = 0`; `None` if the denominator vanishes there.
    pub fn set_zero(&self, i: usize) -> Option<RatFunc> {
        let den = self.den.set_zero(i);
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.set_zero(i), den))
    }

    pub fn permute(&self, perm: &[usize]) -> RatFunc {
        RatFunc { num: self.num.permute(perm), den: self.den.permute(perm) }
    }

    /// Value of the denominator at the origin is nonzero.
    pub fn regular_at_origin(&self) -> bool {
        !self.den.coeff(&super::poly::Mono::one(self.nvars())).is_zero()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_poly() {
            self.num.display_with(names)
        } else {
            format!("({})/({})", self.num.display_with(names), self.den.display_with(names))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            if self.is_poly() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let n = &(&self.num * &d) + &(&rhs.num * &b);
        RatFunc::reduce_against(n, &b * &rhs.den, g)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_poly() && rhs.is_poly() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::coprime(&a * &c, &b * &d)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::poly::{q, qi};

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn normalizes_common_factor() {
        let f = RatFunc::new(&x(0) * &x(1), x(0).scale(&qi(2)));
        assert!(f.is_poly());
        assert_eq!(f.num(), &x(1).scale(&q(1, 2)));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFunc::new(Poly::one(2), &x(0).scale(&qi(3)) + &Poly::one(2));
        assert_eq!(f.den().leading().unwrap().1, &qi(1));
        assert_eq!(f.num(), &Poly::constant(2, q(1, 3)));
    }

    #[test]
    fn quotient_rule() {
        let f = RatFunc::new(Poly::one(2), x(0));
        let df = f.deriv(0);
        assert_eq!(df, RatFunc::new(Poly::constant(2, qi(-1)), x(0).pow(2)));
        let sum = &f + &RatFunc::new(Poly::constant(2, qi(-1)), x(0));
        assert!(sum.is_zero());
    }
}
