//! Seeded random forms: coefficients `±{1..9}/{1..4}`, monomial degree at most 3.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::chart::ChartRef;
use super::forms::{masks_of_degree, LogForm};
use super::poly::{q, Mono, Poly, Q};
use super::ratfunc::RatFunc;

pub use rand::SeedableRng;

pub type FormRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FormRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeff(rng: &mut FormRng) -> Q {
    let n: i64 = rng.gen_range(1..=9);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    q(s * n, rng.gen_range(1..=4))
}

pub fn random_mono(rng: &mut FormRng, d: usize, max_deg: u32) -> Mono {
    let total = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; d];
    for _ in 0..total {
        e[rng.gen_range(0..d)] += 1;
    }
    Mono(e)
}

/// Polynomial with up to `terms` random terms.
pub fn random_poly(rng: &mut FormRng, d: usize, terms: usize) -> Poly {
    let mut p = Poly::zero(d);
    for _ in 0..rng.gen_range(1..=terms) {
        p.add_term(random_mono(rng, d, 3), random_coeff(rng));
    }
    p
}

/// Random log form of degree `k` with polynomial coefficients.
pub fn random_form(rng: &mut FormRng, chart: &ChartRef, k: usize) -> LogForm {
    let d = chart.dim();
    let mut out = LogForm::zero(chart, k);
    for mask in masks_of_degree(d, k) {
        if rng.gen_bool(0.6) {
            out.add_comp(mask, RatFunc::from_poly(random_poly(rng, d, 3)));
        }
    }
    out
}

/// Random holomorphic form: each `dlog x_i` coefficient is divisible by `x_i`.
pub fn random_holomorphic_form(rng: &mut FormRng, chart: &ChartRef, k: usize) -> LogForm {
    let d = chart.dim();
    let mut out = LogForm::zero(chart, k);
    for mask in masks_of_degree(d, k) {
        if rng.gen_bool(0.6) {
            let mut e = vec![0u32; d];
            for (i, x) in e.iter_mut().enumerate().take(chart.m()) {
                *x = mask >> i & 1;
            }
            let p = random_poly(rng, d, 3).mul_mono(&Mono(e), &Q::from_integer(1.into()));
            out.add_comp(mask, RatFunc::from_poly(p));
        }
    }
    out
}

/// Random rational function: random numerator over `1 + (random polynomial without constant term)`.
pub fn random_ratfunc(rng: &mut FormRng, d: usize) -> RatFunc {
    let num = random_poly(rng, d, 3);
    let mut den = Poly::one(d);
    let extra = random_poly(rng, d, 2);
    for (m, c) in extra.terms() {
        if m.degree() > 0 {
            den.add_term(m.clone(), c.clone());
        }
    }
    RatFunc::new(num, den)
}
