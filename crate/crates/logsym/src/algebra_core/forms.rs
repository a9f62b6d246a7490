//! Log forms and log polyvector fields on a chart.
//!
//! Basis covector `i` is `dlog x_i` for divisorial `i` and `dx_i` otherwise;
//! basis vector `i` is `x_i ∂_i` or `∂_i`. Both are stored as maps from a
//! bitmask (bit `i` set when index `i` occurs in the wedge) to a coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use num::{One, Zero};

use super::chart::{Chart, ChartRef};
use super::poly::{Mono, Poly, Q};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Sign of `e_a ∧ e_b` relative to `e_{a|b}`, or `None` when they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let t = rest.trailing_zeros();
        inversions += (a >> t).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Indices set in `mask`, ascending.
pub fn mask_indices(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// All masks of popcount `k` below `1 << d`, ascending.
pub fn masks_of_degree(d: usize, k: usize) -> Vec<u32> {
    (0u32..(1u32 << d)).filter(|m| m.count_ones() as usize == k).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Covariant;
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Contravariant;

/// Chooses how basis elements are printed and translated.
pub trait Kind: Clone + Copy + PartialEq + Eq + std::hash::Hash + fmt::Debug {
    const FORM: bool;
}
impl Kind for Covariant {
    const FORM: bool = true;
}
impl Kind for Contravariant {
    const FORM: bool = false;
}

/// Homogeneous element of the exterior algebra over rational functions.
///
/// Zero elements compare equal regardless of their nominal degree.
#[derive(Clone, Debug)]
pub struct Graded<K: Kind> {
    chart: ChartRef,
    degree: usize,
    comps: BTreeMap<u32, RatFunc>,
    kind: PhantomData<K>,
}

impl<K: Kind> PartialEq for Graded<K> {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart)
            && self.comps == other.comps
            && (self.degree == other.degree || self.comps.is_empty())
    }
}

impl<K: Kind> Eq for Graded<K> {}

impl<K: Kind> std::hash::Hash for Graded<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.chart.vars().hash(state);
        self.chart.m().hash(state);
        self.comps.hash(state);
    }
}

pub type LogForm = Graded<Covariant>;
pub type LogMultiVec = Graded<Contravariant>;

/// Per-variable multidegree of a homogeneous component.
pub type WeightVector = Vec<u32>;

pub(crate) fn same_chart(a: &ChartRef, b: &ChartRef) -> bool {
    Arc::ptr_eq(a, b) || (a.vars() == b.vars() && a.m() == b.m())
}

impl<K: Kind> Graded<K> {
    pub fn zero(chart: &ChartRef, degree: usize) -> Self {
        Graded { chart: chart.clone(), degree, comps: BTreeMap::new(), kind: PhantomData }
    }

    /// `coeff · e_mask`.
    pub fn term(chart: &ChartRef, mask: u32, coeff: RatFunc) -> Self {
        let mut g = Graded::zero(chart, mask.count_ones() as usize);
        g.add_comp(mask, coeff);
        g
    }

    pub fn basis(chart: &ChartRef, mask: u32) -> Self {
        Graded::term(chart, mask, RatFunc::one(chart.dim()))
    }

    /// The constant `c` in degree 0.
    pub fn scalar(chart: &ChartRef, f: RatFunc) -> Self {
        Graded::term(chart, 0, f)
    }

    pub fn from_comps(chart: &ChartRef, degree: usize, comps: BTreeMap<u32, RatFunc>) -> Result<Self> {
        let mut g = Graded::zero(chart, degree);
        for (mask, c) in comps {
            if mask.count_ones() as usize != degree || mask >> chart.dim() != 0 {
                return Err(Error::Input(format!("mask {mask:#b} does not fit degree {degree}")));
            }
            g.add_comp(mask, c);
        }
        Ok(g)
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn comps(&self) -> &BTreeMap<u32, RatFunc> {
        &self.comps
    }

    pub fn coeff(&self, mask: u32) -> RatFunc {
        self.comps.get(&mask).cloned().unwrap_or_else(|| RatFunc::zero(self.chart.dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_comp(&mut self, mask: u32, c: RatFunc) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        match self.comps.remove(&mask) {
            None => {
                self.comps.insert(mask, c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.comps.insert(mask, s);
                }
            }
        }
    }

    /// Sum; a zero summand of another degree is ignored.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Input("adding elements of different degree".into()));
        }
        let mut out = self.clone();
        for (m, c) in &other.comps {
            out.add_comp(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Graded::zero(&self.chart, self.degree);
        if c.is_zero() {
            return out;
        }
        out.comps = self.comps.iter().map(|(m, f)| (*m, f.scale(c))).collect();
        out
    }

    pub fn mul_func(&self, f: &RatFunc) -> Self {
        let mut out = Graded::zero(&self.chart, self.degree);
        for (m, c) in &self.comps {
            out.add_comp(*m, c * f);
        }
        out
    }

    /// Exterior product with the same sign rule for forms and polyvectors.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Graded::zero(&self.chart, self.degree + other.degree);
        for (a, f) in &self.comps {
            for (b, g) in &other.comps {
                if let Some(s) = wedge_sign(*a, *b) {
                    let c = f * g;
                    out.add_comp(a | b, if s > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// `m`-th wedge power (degree 0 constant 1 when `m = 0`).
    pub fn power(&self, m: usize) -> Self {
        let mut out = Graded::scalar(&self.chart, RatFunc::one(self.chart.dim()));
        for _ in 0..m {
            out = out.wedge(self).expect("same chart");
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.values().all(RatFunc::is_poly)
    }

    pub fn poly_comps(&self) -> Result<BTreeMap<u32, Poly>> {
        self.comps
            .iter()
            .map(|(m, c)| c.as_poly().cloned().map(|p| (*m, p)).ok_or(Error::NonPolynomialCoefficients))
            .collect()
    }

    /// Move the element to a chart carrying extra metadata but the same coordinates.
    pub fn on_chart(&self, chart: &ChartRef) -> Result<Self> {
        if chart.vars() != self.chart.vars() || chart.m() != self.chart.m() {
            return Err(Error::ChartMismatch);
        }
        let mut out = self.clone();
        out.chart = chart.clone();
        Ok(out)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_chart(&self.chart, &other.chart) {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    /// Substitute `x_i -> x_i + c_i`; divisorial variables with `c_i ≠ 0`
    /// become plain in the returned chart.
    pub fn translate(&self, center: &[Q]) -> Result<Self> {
        let chart = &self.chart;
        let d = chart.dim();
        if center.len() != d {
            return Err(Error::InvalidCenter(format!("expected {d} entries, got {}", center.len())));
        }
        for (i, c) in center.iter().enumerate() {
            if !c.is_zero() && !chart.is_divisorial(i) {
                return Err(Error::InvalidCenter(format!(
                    "nonzero center for plain variable {}",
                    chart.vars()[i]
                )));
            }
        }
        let keep: Vec<&String> = (0..chart.m()).filter(|&i| center[i].is_zero()).map(|i| &chart.vars()[i]).collect();
        let new_chart = Chart::new(chart.vars(), &keep)?;
        let new_chart = match chart.half_dim() {
            Some(n) => Arc::new(new_chart.with_half_dim(n)?),
            None => new_chart,
        };
        let perm: Vec<usize> = chart.vars().iter().map(|v| new_chart.index_of(v).unwrap()).collect();
        let mut out = Graded::zero(&new_chart, self.degree);
        for (mask, f) in &self.comps {
            let mut g = f.clone();
            for (i, c) in center.iter().enumerate() {
                if !c.is_zero() {
                    g = g.shift(i, c);
                }
            }
            for i in mask_indices(*mask) {
                if !center[i].is_zero() {
                    let lin = &Poly::var(d, i) + &Poly::constant(d, center[i].clone());
                    g = if K::FORM {
                        &g * &RatFunc::new(Poly::one(d), lin)
                    } else {
                        g.mul_poly(&lin)
                    };
                }
            }
            let g = g.permute(&perm);
            if !g.regular_at_origin() {
                return Err(Error::InvalidCenter("coefficient acquires a pole at the new origin".into()));
            }
            let (new_mask, sign) = permute_mask(*mask, &perm);
            out.add_comp(new_mask, if sign > 0 { g } else { -g });
        }
        Ok(out)
    }

    /// Rewrite in another chart on the same variables with a different divisor.
    pub fn recast(&self, target: &ChartRef) -> Result<Self> {
        let src = &self.chart;
        let d = src.dim();
        let mut a: Vec<&String> = src.vars().iter().collect();
        let mut b: Vec<&String> = target.vars().iter().collect();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::ChartMismatch);
        }
        let perm: Vec<usize> = src.vars().iter().map(|v| target.index_of(v).unwrap()).collect();
        let mut out = Graded::zero(target, self.degree);
        for (mask, f) in &self.comps {
            let mut g = f.clone();
            for i in mask_indices(*mask) {
                let x = Poly::var(d, i);
                match (src.is_divisorial(i), target.is_divisorial(perm[i]), K::FORM) {
                    (true, false, true) | (false, true, false) => g = &g * &RatFunc::new(Poly::one(d), x),
                    (true, false, false) | (false, true, true) => g = g.mul_poly(&x),
                    _ => {}
                }
            }
            let (new_mask, sign) = permute_mask(*mask, &perm);
            let g = g.permute(&perm);
            out.add_comp(new_mask, if sign > 0 { g } else { -g });
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        if self.comps.is_empty() {
            return "0".to_string();
        }
        let names = self.chart.vars();
        let mut parts: Vec<String> = Vec::new();
        for (mask, c) in &self.comps {
            let basis = basis_string::<K>(&self.chart, *mask);
            let coeff = c.display_with(names);
            let single = c.is_poly() && c.num().len() == 1;
            let s = if basis.is_empty() {
                if single { coeff } else { format!("({coeff})") }
            } else if c.as_constant().is_some_and(|q| q.is_one()) {
                basis
            } else if c.as_constant().is_some_and(|q| q == -Q::one()) {
                format!("-{basis}")
            } else if single {
                format!("{coeff}*{basis}")
            } else {
                format!("({coeff})*{basis}")
            };
            parts.push(s);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

fn basis_string<K: Kind>(chart: &Chart, mask: u32) -> String {
    let parts: Vec<String> = mask_indices(mask)
        .map(|i| {
            let v = &chart.vars()[i];
            match (K::FORM, chart.is_divisorial(i)) {
                (true, true) => format!("dlog({v})"),
                (true, false) => format!("d({v})"),
                (false, true) => format!("{v}*D({v})"),
                (false, false) => format!("D({v})"),
            }
        })
        .collect();
    parts.join("/\\")
}

/// Image of a mask under an index permutation, with the reordering sign.
pub fn permute_mask(mask: u32, perm: &[usize]) -> (u32, i32) {
    let images: Vec<usize> = mask_indices(mask).map(|i| perm[i]).collect();
    let mut sign = 1;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                sign = -sign;
            }
        }
    }
    (images.iter().fold(0u32, |m, &i| m | 1 << i), sign)
}

impl<K: Kind> fmt::Display for Graded<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Derivative along basis vector `i`: `x_i ∂_i` if divisorial, else `∂_i`.
pub fn frame_deriv(chart: &Chart, f: &RatFunc, i: usize) -> RatFunc {
    if chart.is_divisorial(i) {
        f.euler(i)
    } else {
        f.deriv(i)
    }
}

fn frame_deriv_poly(chart: &Chart, f: &Poly, i: usize) -> Poly {
    if chart.is_divisorial(i) {
        f.euler(i)
    } else {
        f.deriv(i)
    }
}

impl LogForm {
    /// `d f` of a function, in the log basis.
    pub fn differential(chart: &ChartRef, f: &RatFunc) -> LogForm {
        let mut out = LogForm::zero(chart, 1);
        for i in 0..chart.dim() {
            out.add_comp(1 << i, frame_deriv(chart, f, i));
        }
        out
    }

    /// Exterior derivative; every basis covector is closed.
    pub fn d(&self) -> LogForm {
        let chart = &self.chart;
        let mut out = LogForm::zero(chart, self.degree + 1);
        for (mask, f) in &self.comps {
            for i in 0..chart.dim() {
                if mask >> i & 1 == 1 {
                    continue;
                }
                let df = frame_deriv(chart, f, i);
                if df.is_zero() {
                    continue;
                }
                let s = wedge_sign(1 << i, *mask).unwrap();
                out.add_comp(mask | 1 << i, if s > 0 { df } else { -df });
            }
        }
        out
    }

    /// Split into homogeneous pieces; `x_i` and `dx_i` weigh `e_i`, `dlog x_i` weighs 0.
    pub fn multidegree_decompose(&self) -> Result<Vec<(WeightVector, LogForm)>> {
        let d = self.chart.dim();
        let mut pieces: BTreeMap<WeightVector, LogForm> = BTreeMap::new();
        for (mask, f) in &self.comps {
            let p = f.as_poly().ok_or(Error::NonPolynomialCoefficients)?;
            for (mono, c) in p.terms() {
                let w = basis_weight(&self.chart, mono, *mask);
                pieces
                    .entry(w)
                    .or_insert_with(|| LogForm::zero(&self.chart, self.degree))
                    .add_comp(*mask, RatFunc::from_poly(Poly::monomial(d, mono.clone(), c.clone())));
            }
        }
        Ok(pieces.into_iter().collect())
    }

    /// No poles: every `dlog x_i` component has a coefficient divisible by `x_i`.
    pub fn is_holomorphic(&self) -> bool {
        self.comps.iter().all(|(mask, f)| {
            f.as_poly().is_some_and(|p| {
                mask_indices(mask & self.chart.divisor_mask()).all(|i| p.terms().keys().all(|m| m.0[i] >= 1))
            })
        })
    }

    /// Pull back along `x_i = 0` for `i ∈ branch` and drop those coordinates.
    pub fn pullback_to_stratum(&self, branch: u32) -> Result<LogForm> {
        let chart = &self.chart;
        if branch & !chart.divisor_mask() != 0 {
            return Err(Error::Input("stratum indices must be divisorial".into()));
        }
        if !self.is_holomorphic() {
            return Err(Error::PoleOnStratum);
        }
        let keep: Vec<usize> = (0..chart.dim()).filter(|i| branch >> i & 1 == 0).collect();
        let names: Vec<&String> = keep.iter().map(|&i| &chart.vars()[i]).collect();
        let div: Vec<&String> = keep.iter().filter(|&&i| chart.is_divisorial(i)).map(|&i| &chart.vars()[i]).collect();
        let sub = Chart::new(&names, &div)?;
        let mut out = LogForm::zero(&sub, self.degree);
        for (mask, f) in &self.comps {
            if mask & branch != 0 {
                continue;
            }
            let mut p = f.as_poly().unwrap().clone();
            for i in mask_indices(branch) {
                p = p.set_zero(i);
            }
            let new_mask = keep.iter().enumerate().fold(0u32, |acc, (j, &i)| acc | ((mask >> i & 1) << j));
            out.add_comp(new_mask, RatFunc::from_poly(p.restrict_vars(&keep)));
        }
        Ok(out)
    }
}

impl LogForm {
    /// `⟨α, P⟩`: the form contracted into a polyvector of at least its degree.
    pub fn contract_into(&self, p: &LogMultiVec) -> Result<LogMultiVec> {
        if !same_chart(&self.chart, &p.chart) {
            return Err(Error::ChartMismatch);
        }
        if self.degree > p.degree {
            return Err(Error::DegreeError { vec: p.degree, form: self.degree });
        }
        let mut out = LogMultiVec::zero(&p.chart, p.degree - self.degree);
        for (a, g) in &self.comps {
            for (u, f) in &p.comps {
                if a & !u != 0 {
                    continue;
                }
                let rest = u & !a;
                let s = wedge_sign(*a, rest).unwrap();
                let c = f * g;
                out.add_comp(rest, if s > 0 { c } else { -c });
            }
        }
        Ok(out)
    }
}

/// Multidegree of the log-basis element `x^mono e_mask`.
pub fn basis_weight(chart: &Chart, mono: &Mono, mask: u32) -> WeightVector {
    let mut w = mono.0.clone();
    for i in mask_indices(mask & !chart.divisor_mask()) {
        w[i] += 1;
    }
    w
}

impl LogMultiVec {
    /// Interior product `ι_P ω`; rejects `deg P > deg ω`.
    pub fn contract(&self, omega: &LogForm) -> Result<LogForm> {
        if !same_chart(&self.chart, &omega.chart) {
            return Err(Error::ChartMismatch);
        }
        if self.degree > omega.degree {
            return Err(Error::DegreeError { vec: self.degree, form: omega.degree });
        }
        let mut out = LogForm::zero(&omega.chart, omega.degree - self.degree);
        for (u, f) in &self.comps {
            for (a, g) in &omega.comps {
                if u & !a != 0 {
                    continue;
                }
                let rest = a & !u;
                let s = wedge_sign(*u, rest).unwrap();
                let c = f * g;
                out.add_comp(rest, if s > 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    /// `ι_P ω`, or zero when the degrees do not allow a contraction.
    pub fn interior(&self, omega: &LogForm) -> LogForm {
        if self.degree > omega.degree {
            return LogForm::zero(&omega.chart, 0);
        }
        self.contract(omega).expect("interior product")
    }

    /// Schouten–Nijenhuis bracket in the commuting log frame.
    pub fn schouten(&self, other: &LogMultiVec) -> Result<LogMultiVec> {
        if !same_chart(&self.chart, &other.chart) {
            return Err(Error::ChartMismatch);
        }
        let chart = &self.chart;
        let (p, q) = (self.degree, other.degree);
        if p + q == 0 {
            return Ok(LogMultiVec::zero(chart, 0));
        }
        let pc = self.poly_comps()?;
        let qc = other.poly_comps()?;
        let mut out = LogMultiVec::zero(chart, p + q - 1);
        let twist = if p % 2 == 0 && q % 2 == 0 { 1 } else { -1 };
        let mut acc = |a: &BTreeMap<u32, Poly>, b: &BTreeMap<u32, Poly>, sgn: i32| {
            for (ma, fa) in a {
                for i in mask_indices(*ma) {
                    let rest = ma & !(1 << i);
                    let s_right = wedge_sign(rest, 1 << i).unwrap();
                    for (mb, fb) in b {
                        let Some(s) = wedge_sign(rest, *mb) else { continue };
                        let db = frame_deriv_poly(chart, fb, i);
                        if db.is_zero() {
                            continue;
                        }
                        let c = Q::from_integer((s_right * s * sgn).into());
                        out.add_comp(rest | mb, RatFunc::from_poly((fa * &db).scale(&c)));
                    }
                }
            }
        };
        acc(&pc, &qc, 1);
        acc(&qc, &pc, twist);
        Ok(out)
    }

    /// Weight shift of basis vector `i`: 0 for `x_i ∂_i`, `-e_i` for `∂_i`.
    pub fn basis_drop(chart: &Chart, mask: u32) -> u32 {
        (mask & !chart.divisor_mask()).count_ones()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::poly::qi;

    fn c2() -> ChartRef {
        Chart::plain(&["x", "y"]).unwrap()
    }

    fn var(chart: &ChartRef, i: usize) -> RatFunc {
        RatFunc::from_poly(Poly::var(chart.dim(), i))
    }

    #[test]
    fn wedge_sign_table() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b101, 0b010), Some(-1));
        assert_eq!(wedge_sign(0b1, 0b1), None);
    }

    #[test]
    fn d_of_x_dy() {
        let c = c2();
        let w = LogForm::term(&c, 0b10, var(&c, 0));
        assert_eq!(w.d(), LogForm::basis(&c, 0b11));
    }

    #[test]
    fn contraction_normalization() {
        let c = Chart::standard(3, 0);
        let p = LogMultiVec::basis(&c, 0b011);
        assert_eq!(p.contract(&LogForm::basis(&c, 0b011)).unwrap(), LogForm::scalar(&c, RatFunc::one(3)));
        assert_eq!(p.contract(&LogForm::basis(&c, 0b111)).unwrap(), LogForm::basis(&c, 0b100));
        assert!(matches!(
            LogMultiVec::basis(&c, 0b111).contract(&LogForm::basis(&c, 0b11)),
            Err(Error::DegreeError { .. })
        ));
    }

    #[test]
    fn schouten_of_vector_fields_is_lie_bracket() {
        let c = c2();
        // [x ∂_y, ∂_x] = -∂_y
        let a = LogMultiVec::term(&c, 0b10, var(&c, 0));
        let b = LogMultiVec::basis(&c, 0b01);
        let br = a.schouten(&b).unwrap();
        assert_eq!(br, LogMultiVec::term(&c, 0b10, RatFunc::constant(2, qi(-1))));
    }

    #[test]
    fn translate_demotes() {
        let c = Chart::new(&["x"], &["x"]).unwrap();
        let w = LogForm::basis(&c, 1).translate(&[qi(1)]).unwrap();
        assert_eq!(w.chart().m(), 0);
        let x1 = &Poly::var(1, 0) + &Poly::one(1);
        assert_eq!(w.coeff(1), RatFunc::new(Poly::one(1), x1.clone()));
        let v = LogMultiVec::basis(&c, 1).translate(&[qi(1)]).unwrap();
        assert_eq!(v.coeff(1), RatFunc::from_poly(x1));
    }
}
