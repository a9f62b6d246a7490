//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Build a rational from a numerator and denominator.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Build an integer rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent allows it.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Mono(e))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Poly::monomial(nvars, Mono::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, Mono::var(nvars, i), Q::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: Q) -> Self {
        assert_eq!(m.0.len(), nvars, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Q)>>(nvars: usize, it: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Partial derivative in variable `i`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut n = m.clone();
                n.0[i] -= 1;
                out.add_term(n, c * Q::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// `x_i ∂f/∂x_i`: scales each term by its exponent in `x_i`.
    pub fn euler(&self, i: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] > 0)
                .map(|(m, c)| (m.clone(), c * Q::from_integer(BigInt::from(m.0[i]))))
                .collect(),
        }
    }

    /// Substitute `x_i = 0`.
    pub fn set_zero(&self, i: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `x_i -> x_i + c`.
    pub fn shift(&self, i: usize, c: &Q) -> Poly {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Poly::zero(self.nvars);
        for (m, a) in &self.terms {
            let e = m.0[i];
            // (x + c)^e = Σ C(e,k) x^k c^(e-k)
            let mut binom = BigInt::one();
            for k in 0..=e {
                let mut n = m.clone();
                n.0[i] = k;
                let coeff = a * Q::from_integer(binom.clone()) * num::pow(c.clone(), (e - k) as usize);
                out.add_term(n, coeff);
                binom = binom * BigInt::from(e - k) / BigInt::from(k + 1);
            }
        }
        out
    }

    /// Rename variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (i, x) in m.0.iter().enumerate() {
                e[perm[i]] = *x;
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Drop the variables not listed in `keep`; they must not occur.
    pub fn restrict_vars(&self, keep: &[usize]) -> Poly {
        let mut out = Poly::zero(keep.len());
        for (m, c) in &self.terms {
            debug_assert!((0..self.nvars).all(|i| keep.contains(&i) || m.0[i] == 0));
            out.add_term(Mono(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, pt: &[Q]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(pt) {
                if *e > 0 {
                    t *= num::pow(x.clone(), *e as usize);
                }
            }
            s += t;
        }
        s
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    /// Coefficients as a polynomial in `x_v`, lowest power first.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let mut n = m.clone();
            let e = n.0[v] as usize;
            n.0[v] = 0;
            out[e].add_term(n, c.clone());
        }
        out
    }

    fn from_coeffs_in(nvars: usize, v: usize, cs: &[Poly]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, c) in cs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut n = m.clone();
                n.0[v] += e as u32;
                out.add_term(n, a.clone());
            }
        }
        out
    }

    /// Divide so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / b`, or `None` if `b` does not divide.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let (lm_b, lc_b) = b.leading()?;
        let lm_b = lm_b.clone();
        let lc_inv = lc_b.recip();
        let mut r = self.clone();
        let mut quo = Poly::zero(self.nvars);
        while let Some((lm_r, lc_r)) = r.leading() {
            let t = lm_r.div(&lm_b)?;
            let c = lc_r * &lc_inv;
            r = &r - &b.mul_mono(&t, &c);
            quo.add_term(t, c);
        }
        Some(quo)
    }

    /// Monic greatest common divisor (zero only if both inputs vanish).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one(a.nvars);
        }
        if a == b {
            return a.monic();
        }
        let shared = (0..a.nvars).find(|&v| {
            a.degree_in(v).unwrap_or(0) > 0 && b.degree_in(v).unwrap_or(0) > 0
        });
        let Some(v) = shared else {
            return Poly::one(a.nvars);
        };
        if certainly_coprime(a, b) {
            return Poly::one(a.nvars);
        }
        let ca = a.coeffs_in(v);
        let cb = b.coeffs_in(v);
        let (conta, ppa) = content_split(&ca);
        let (contb, ppb) = content_split(&cb);
        let g_cont = Poly::gcd(&conta, &contb);
        let g_pp = prs_gcd(a.nvars, ppa, ppb);
        (&g_cont * &Poly::from_coeffs_in(a.nvars, v, &g_pp)).monic()
    }

    /// Format with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = mono_string(m, names);
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&a.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn mono_string(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn int_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.try_into().expect("reduced below p")
}

/// Image of `f` as a polynomial in `x_v` over `F_p`, other variables set to `point`.
fn univariate_image(f: &Poly, v: usize, point: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut out = vec![0u64; f.degree_in(v).unwrap_or(0) as usize + 1];
    for (m, c) in &f.terms {
        let den = int_mod(c.denom(), p);
        if den == 0 {
            return None;
        }
        let mut t = int_mod(c.numer(), p) * pow_mod(den, p - 2, p) % p;
        for (j, e) in m.0.iter().enumerate() {
            if j != v {
                t = t * pow_mod(point[j], *e as u64, p) % p;
            }
        }
        let k = m.0[v] as usize;
        out[k] = (out[k] + t) % p;
    }
    Some(out)
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    let strip = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    strip(&mut a);
    strip(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let c = a.last().unwrap() * inv % p;
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                a[k + shift] = (a[k + shift] + p - c * bk % p) % p;
            }
            a.pop();
            strip(&mut a);
            if a.is_empty() {
                a.push(0);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

/// Sufficient test for `gcd(a, b) = 1`: for every variable, some evaluation of the others
/// keeping the leading coefficient of `a` nonzero gives coprime images over `F_p`.
fn certainly_coprime(a: &Poly, b: &Poly) -> bool {
    let n = a.nvars;
    (0..n).all(|v| {
        if a.degree_in(v).unwrap_or(0) == 0 || b.degree_in(v).unwrap_or(0) == 0 {
            return true;
        }
        PRIMES.iter().enumerate().any(|(t, &p)| {
            let point: Vec<u64> = (0..n).map(|j| (7 + 13 * j as u64 + 101 * t as u64) % p).collect();
            let (Some(ia), Some(ib)) = (univariate_image(a, v, &point, p), univariate_image(b, v, &point, p)) else {
                return false;
            };
            let full = ia.len() - 1 == a.degree_in(v).unwrap_or(0) as usize && *ia.last().unwrap() != 0;
            full && gcd_degree_mod(ia, ib, p) == 0
        })
    })
}

fn content_split(cs: &[Poly]) -> (Poly, Vec<Poly>) {
    let mut g = Poly::zero(cs[0].nvars);
    for c in cs {
        g = Poly::gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    if g.is_one() {
        return (g, cs.to_vec());
    }
    let pp = cs.iter().map(|c| c.div_exact(&g).expect("content divides")).collect();
    (g, pp)
}

fn trim(v: &mut Vec<Poly>) {
    while v.len() > 1 && v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
}

fn is_zero_upoly(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

/// Primitive polynomial remainder sequence on univariate-over-polynomial data.
fn prs_gcd(nvars: usize, mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if is_zero_upoly(&b) {
            return content_split(&a).1;
        }
        if b.len() == 1 {
            return vec![Poly::one(nvars)];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        if is_zero_upoly(&r) {
            return content_split(&a).1;
        }
        b = content_split(&r).1;
        trim(&mut b);
        normalize_upoly(&mut b);
    }
}

/// Scale so the leading coefficient has leading term 1.
fn normalize_upoly(v: &mut [Poly]) {
    let Some(c) = v.last().and_then(|p| p.leading()).map(|(_, c)| c.recip()) else { return };
    for p in v.iter_mut() {
        *p = p.scale(&c);
    }
}

fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db && !is_zero_upoly(&r) {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c * lcb).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(bc * &lcr);
        }
        debug_assert!(next[dr].is_zero());
        next.pop();
        trim(&mut next);
        r = next;
    }
    r
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn graded_lex_leading_term() {
        let p = &(&x(0) * &x(1)) + &x(2).pow(2);
        let (m, _) = p.leading().unwrap();
        assert_eq!(m, &Mono(vec![1, 1, 0]));
        let p = &x(0) + &x(1).pow(2);
        assert_eq!(p.leading().unwrap().0, &Mono(vec![0, 2, 0]));
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&x(1)).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = &(&x(0) * &x(1)) + &Poly::constant(3, qi(2));
        let a = &g * &(&x(0) + &x(2));
        let b = &g * &(&x(1).pow(2) - &x(2));
        assert_eq!(Poly::gcd(&a, &b), g.monic());
        assert!(Poly::gcd(&x(0), &x(1)).is_one());
        assert_eq!(Poly::gcd(&a.scale(&q(3, 7)), &a), a.monic());
    }

    #[test]
    fn shift_matches_binomial() {
        let p = x(0).pow(3);
        let s = p.shift(0, &qi(1));
        let expect = (&x(0) + &Poly::one(3)).pow(3);
        assert_eq!(s, expect);
    }

    #[test]
    fn display() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = &(&x(0).pow(2).scale(&q(3, 2)) - &x(1)) + &Poly::one(3);
        assert_eq!(p.display_with(&names), "3/2*x^2 - y + 1");
    }
}
