//! The example structures: P-normal normal form, toric diagonal, toric-by-torus.

use std::sync::Arc;

use num::Zero;

use super::structure::{make_poisson, PoissonStructure};
use crate::algebra_core::linalg::pfaffian;
use crate::algebra_core::forms::mask_indices;
use crate::algebra_core::{q, Chart, ChartRef, LogMultiVec, Mono, Poly, Q, RatFunc};
use crate::error::{Error, Result};

fn constant(chart: &ChartRef, c: Q) -> RatFunc {
    RatFunc::constant(chart.dim(), c)
}

/// `Π = Σ_{i≤k} x_i∂_{x_i}∧∂_{y_i} + Σ_{i>k} ∂_{x_i}∧∂_{y_i}` on `x_1..x_n, y_1..y_n`.
pub fn normal_form(k: usize, n: usize) -> Result<PoissonStructure> {
    if k > n || n == 0 {
        return Err(Error::Input(format!("normal form needs 0 ≤ k ≤ n, n ≥ 1 (got k={k}, n={n})")));
    }
    let chart = Chart::symplectic(n, k);
    let mut pi = LogMultiVec::zero(&chart, 2);
    for i in 0..n {
        pi.add_comp(1 << i | 1 << (n + i), RatFunc::one(2 * n));
    }
    make_poisson(&chart, &pi)
}

/// Deterministic coefficient table for the toric diagonal structure.
pub fn toric_table(n: usize) -> Vec<Vec<Q>> {
    let d = 2 * n;
    let primes = [1i64, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83];
    let mut a = vec![vec![Q::zero(); d]; d];
    let mut t = 0;
    for i in 0..d {
        for j in i + 1..d {
            let v = q(primes[t % primes.len()] + t as i64 / primes.len() as i64, (t % 3 + 1) as i64);
            a[i][j] = v.clone();
            a[j][i] = -v;
            t += 1;
        }
    }
    a
}

/// `Π = Σ_{i<j} a_ij v_i∧v_j` with all `2n` variables divisorial and constant generic `a_ij`.
pub fn toric_diagonal(n: usize) -> Result<PoissonStructure> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    let d = 2 * n;
    let vars: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    let chart = Arc::new(Chart::new(&vars, &vars)?.with_half_dim(n)?);
    let a = toric_table(n);
    if pfaffian(&a).is_zero() {
        return Err(Error::DegeneratePfaffian);
    }
    let mut pi = LogMultiVec::zero(&chart, 2);
    for i in 0..d {
        for j in i + 1..d {
            pi.add_comp(1 << i | 1 << j, constant(&chart, a[i][j].clone()));
        }
    }
    make_poisson(&chart, &pi)
}

/// `Π = Σ u_i∧∂_{y_i}` near a torus-fixed point, `u_1 = v_1`, `u_i = v_{i−1} + v_i`.
pub fn toric_by_torus(n: usize) -> Result<PoissonStructure> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    let chart = Chart::symplectic(n, n);
    let mut pi = LogMultiVec::zero(&chart, 2);
    for i in 0..n {
        let t = n + i;
        pi.add_comp(1 << i | 1 << t, RatFunc::one(2 * n));
        if i > 0 {
            pi.add_comp(1 << (i - 1) | 1 << t, RatFunc::one(2 * n));
        }
    }
    make_poisson(&chart, &pi)
}

/// `Π₁ ⊕ Π₂` on the product of two charts with disjoint variable names.
pub fn direct_sum(p: &PoissonStructure, r: &PoissonStructure) -> Result<PoissonStructure> {
    let (c1, c2) = (p.chart(), r.chart());
    let vars: Vec<String> = c1.vars().iter().chain(c2.vars()).cloned().collect();
    let div: Vec<String> = c1.divisor_vars().iter().chain(c2.divisor_vars()).cloned().collect();
    let chart = Chart::new(&vars, &div)?;
    let d = chart.dim();
    let mut pi = LogMultiVec::zero(&chart, 2);
    for (src, piece) in [(c1, p.bivector()), (c2, r.bivector())] {
        let map: Vec<usize> = src.vars().iter().map(|v| chart.index_of(v).unwrap()).collect();
        for (mask, f) in piece.comps() {
            let idx: Vec<usize> = mask_indices(*mask).map(|i| map[i]).collect();
            let c = RatFunc::new(widen(f.num(), d, &map), widen(f.den(), d, &map));
            let (a, b) = (idx[0], idx[1]);
            let new_mask = 1u32 << a | 1u32 << b;
            pi.add_comp(new_mask, if a < b { c } else { -c });
        }
    }
    make_poisson(&chart, &pi)
}

fn widen(p: &Poly, d: usize, embed: &[usize]) -> Poly {
    let mut out = Poly::zero(d);
    for (m, c) in p.terms() {
        let mut e = vec![0; d];
        for (i, x) in m.0.iter().enumerate() {
            e[embed[i]] = *x;
        }
        out.add_term(Mono(e), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_pfaffian() {
        let p = normal_form(1, 2).unwrap();
        assert_eq!(p.pfaffian(), &Poly::var(4, 0));
        assert!(p.log_symplectic());
    }

    #[test]
    fn toric_pfaffian_is_divisor() {
        let p = toric_diagonal(2).unwrap();
        assert_eq!(p.pfaffian(), &Poly::monomial(4, Mono(vec![1, 1, 1, 1]), Q::from_integer(1.into())));
        assert!(p.log_symplectic());
    }

    #[test]
    fn toric_by_torus_is_log_symplectic() {
        let p = toric_by_torus(2).unwrap();
        assert!(p.log_symplectic());
        assert_eq!(p.pfaffian(), &Poly::monomial(4, Mono(vec![1, 1, 0, 0]), Q::from_integer(1.into())));
    }
}
