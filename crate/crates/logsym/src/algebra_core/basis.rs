//! Monomial bases of graded slices and coordinates of forms in them.

use std::collections::HashMap;

use super::chart::Chart;
use super::forms::{mask_indices, masks_of_degree, LogForm};
use super::linalg::SparseVec;
use super::poly::{Mono, Poly, Q};
use super::ratfunc::RatFunc;
use crate::algebra_core::ChartRef;
use crate::error::{Error, Result};

/// A basis element `x^c e_mask` in the log basis of a chart.
pub type BasisElem = (Mono, u32);

/// Which log-basis elements span the sheaf under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    /// All log forms.
    Log,
    /// Holomorphic forms: `x_i | c` whenever `dlog x_i` occurs.
    Holomorphic,
    /// Log forms vanishing on the divisor: `x_i | c` for every divisorial `i`.
    MinorLog,
    /// Holomorphic forms of degree `p` vanishing on every `(min(p, r) + 1)`-fold stratum.
    Augmented(usize),
}

impl Sector {
    pub fn admits(&self, chart: &Chart, mono: &Mono, mask: u32) -> bool {
        let div = chart.divisor_mask();
        let holo = || mask_indices(mask & div).all(|i| mono.0[i] >= 1);
        match self {
            Sector::Log => true,
            Sector::Holomorphic => holo(),
            Sector::MinorLog => mask_indices(div).all(|i| mono.0[i] >= 1),
            Sector::Augmented(r) => {
                let p = mask.count_ones() as usize;
                let zeros = mask_indices(div).filter(|&i| mono.0[i] == 0).count();
                holo() && zeros <= p.min(*r)
            }
        }
    }
}

/// Weight of `x^c e_mask` under per-variable weights `g`: `x_i` and `dx_i`
/// weigh `g_i`, `dlog x_i` weighs 0.
pub fn elem_weight(chart: &Chart, g: &[u32], mono: &Mono, mask: u32) -> u32 {
    let mut w: u32 = mono.0.iter().zip(g).map(|(e, gi)| e * gi).sum();
    for i in mask_indices(mask) {
        if !chart.is_divisorial(i) {
            w += g[i];
        }
    }
    w
}

/// Multidegree of `x^c e_mask` with unit weights.
pub fn elem_multidegree(chart: &Chart, mono: &Mono, mask: u32) -> Vec<u32> {
    let mut w = mono.0.clone();
    for i in mask_indices(mask) {
        if !chart.is_divisorial(i) {
            w[i] += 1;
        }
    }
    w
}

/// All monomials of `g`-weight exactly `w`, in graded-lex order.
pub fn monomials_of_weight(g: &[u32], w: u32) -> Vec<Mono> {
    fn rec(g: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if i == g.len() {
            if left == 0 {
                out.push(Mono(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * g[i] <= left {
            cur.push(e);
            rec(g, i + 1, left - e * g[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(g, 0, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Basis of degree-`k` forms of `g`-weight `w` in a sector.
pub fn basis_of_weight(chart: &Chart, sector: Sector, g: &[u32], k: usize, w: u32) -> Vec<BasisElem> {
    let mut out = Vec::new();
    for mask in masks_of_degree(chart.dim(), k) {
        let base = elem_weight(chart, g, &Mono::one(chart.dim()), mask);
        if base > w {
            continue;
        }
        for mono in monomials_of_weight(g, w - base) {
            if sector.admits(chart, &mono, mask) {
                out.push((mono, mask));
            }
        }
    }
    out
}

/// Basis of degree-`k` forms of `g`-weight at most `w`.
pub fn basis_up_to_weight(chart: &Chart, sector: Sector, g: &[u32], k: usize, w: u32) -> Vec<BasisElem> {
    (0..=w).flat_map(|v| basis_of_weight(chart, sector, g, k, v)).collect()
}

/// Basis of degree-`k` forms of a fixed multidegree.
pub fn basis_of_multidegree(chart: &Chart, sector: Sector, k: usize, weight: &[u32]) -> Vec<BasisElem> {
    let mut out = Vec::new();
    for mask in masks_of_degree(chart.dim(), k) {
        let mut c = weight.to_vec();
        let mut ok = true;
        for i in mask_indices(mask) {
            if !chart.is_divisorial(i) {
                if c[i] == 0 {
                    ok = false;
                    break;
                }
                c[i] -= 1;
            }
        }
        let mono = Mono(c);
        if ok && sector.admits(chart, &mono, mask) {
            out.push((mono, mask));
        }
    }
    out
}

/// All multidegrees of total degree at most `w` in `d` variables, graded-lex.
pub fn multidegrees_up_to(d: usize, w: u32) -> Vec<Vec<u32>> {
    let ones = vec![1; d];
    (0..=w).flat_map(|v| monomials_of_weight(&ones, v)).map(|m| m.0).collect()
}

/// Indexed basis; converts forms to coordinate vectors and back.
#[derive(Clone, Debug)]
pub struct BasisIndex {
    chart: ChartRef,
    degree: usize,
    elems: Vec<BasisElem>,
    index: HashMap<BasisElem, usize>,
}

impl BasisIndex {
    pub fn new(chart: &ChartRef, degree: usize, elems: Vec<BasisElem>) -> Self {
        let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        BasisIndex { chart: chart.clone(), degree, elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elems(&self) -> &[BasisElem] {
        &self.elems
    }

    pub fn position(&self, e: &BasisElem) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// The basis element as a form.
    pub fn form(&self, i: usize) -> LogForm {
        let (mono, mask) = &self.elems[i];
        let d = self.chart.dim();
        LogForm::term(&self.chart, *mask, RatFunc::from_poly(Poly::monomial(d, mono.clone(), Q::from_integer(1.into()))))
    }

    /// Form with the given coordinates.
    pub fn combination(&self, v: &SparseVec) -> LogForm {
        let d = self.chart.dim();
        let mut out = LogForm::zero(&self.chart, self.degree);
        for (i, c) in v {
            let (mono, mask) = &self.elems[*i];
            out.add_comp(*mask, RatFunc::from_poly(Poly::monomial(d, mono.clone(), c.clone())));
        }
        out
    }

    /// Coordinates of the part of `ω` inside the basis, and whether anything was left out.
    pub fn coords(&self, omega: &LogForm) -> Result<(SparseVec, bool)> {
        let mut v = SparseVec::new();
        let mut outside = false;
        for (mask, f) in omega.comps() {
            let p = f.as_poly().ok_or(Error::NonPolynomialCoefficients)?;
            for (mono, c) in p.terms() {
                match self.index.get(&(mono.clone(), *mask)) {
                    Some(&i) => {
                        v.insert(i, c.clone());
                    }
                    None => outside = true,
                }
            }
        }
        Ok((v, outside))
    }

    /// Coordinates of `ω`, failing when it leaves the basis.
    pub fn coords_exact(&self, omega: &LogForm) -> Result<SparseVec> {
        let (v, outside) = self.coords(omega)?;
        if outside {
            return Err(Error::UnsupportedGrading("form leaves the slice".into()));
        }
        Ok(v)
    }
}

/// Ranks of the spans of `a`, of `b`, and of `a ∪ b` (polynomial coefficients).
pub fn span_ranks(a: &[LogForm], b: &[LogForm]) -> Result<(usize, usize, usize)> {
    let mut keys: HashMap<BasisElem, usize> = HashMap::new();
    let mut vec_of = |f: &LogForm| -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (mask, c) in f.comps() {
            let p = c.as_poly().ok_or(Error::NonPolynomialCoefficients)?;
            for (mono, x) in p.terms() {
                let n = keys.len();
                let k = *keys.entry((mono.clone(), *mask)).or_insert(n);
                v.insert(k, x.clone());
            }
        }
        Ok(v)
    };
    let va: Vec<SparseVec> = a.iter().map(&mut vec_of).collect::<Result<_>>()?;
    let vb: Vec<SparseVec> = b.iter().map(&mut vec_of).collect::<Result<_>>()?;
    let ra = super::linalg::rank(&va);
    let rb = super::linalg::rank(&vb);
    let all: Vec<SparseVec> = va.into_iter().chain(vb).collect();
    Ok((ra, rb, super::linalg::rank(&all)))
}

/// `g`-homogeneous pieces of a form with polynomial coefficients.
pub fn weight_pieces(f: &LogForm, g: &[u32]) -> Result<Vec<(u32, LogForm)>> {
    let chart = f.chart();
    let d = chart.dim();
    let mut out: std::collections::BTreeMap<u32, LogForm> = std::collections::BTreeMap::new();
    for (mask, c) in f.comps() {
        let p = c.as_poly().ok_or(Error::NonPolynomialCoefficients)?;
        for (mono, x) in p.terms() {
            let w = elem_weight(chart, g, mono, *mask);
            out.entry(w)
                .or_insert_with(|| LogForm::zero(chart, f.degree()))
                .add_comp(*mask, RatFunc::from_poly(Poly::monomial(d, mono.clone(), x.clone())));
        }
    }
    Ok(out.into_iter().collect())
}

/// The `g`-weight of a homogeneous form, `None` for zero, an error otherwise.
pub fn homogeneous_weight(f: &LogForm, g: &[u32]) -> Result<Option<u32>> {
    let pieces = weight_pieces(f, g)?;
    match pieces.len() {
        0 => Ok(None),
        1 => Ok(Some(pieces[0].0)),
        _ => Err(Error::UnsupportedGrading(format!("{f} is not homogeneous"))),
    }
}

/// `x^c · f` for all monomials with `g`-weight `w − weight(f)`.
pub fn module_slice(f: &LogForm, g: &[u32], w: u32) -> Result<Vec<LogForm>> {
    let Some(wf) = homogeneous_weight(f, g)? else { return Ok(Vec::new()) };
    if wf > w {
        return Ok(Vec::new());
    }
    let d = f.chart().dim();
    Ok(monomials_of_weight(g, w - wf)
        .into_iter()
        .map(|m| f.mul_func(&RatFunc::from_poly(Poly::monomial(d, m, Q::from_integer(1.into())))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Chart;

    #[test]
    fn weighted_monomials() {
        let m = monomials_of_weight(&[1, 2], 4);
        let exps: Vec<Vec<u32>> = m.into_iter().map(|m| m.0).collect();
        assert_eq!(exps, vec![vec![0, 2], vec![2, 1], vec![4, 0]]);
    }

    #[test]
    fn sectors() {
        let c = Chart::standard(2, 2);
        // dlog x1 ∧ dlog x2 at multidegree (1,1) is x1 x2 dlog x1 dlog x2 = dx1 dx2
        let holo = basis_of_multidegree(&c, Sector::Holomorphic, 2, &[1, 1]);
        assert_eq!(holo.len(), 1);
        assert_eq!(basis_of_multidegree(&c, Sector::Holomorphic, 2, &[0, 1]).len(), 0);
        assert_eq!(basis_of_multidegree(&c, Sector::Log, 1, &[0, 0]).len(), 2);
        assert_eq!(basis_of_multidegree(&c, Sector::MinorLog, 0, &[1, 0]).len(), 0);
        // K_1 in degree 0 at weight (1,0): x1 vanishes on the double point only
        assert_eq!(basis_of_multidegree(&c, Sector::Augmented(1), 0, &[1, 0]).len(), 0);
        assert_eq!(basis_of_multidegree(&c, Sector::Augmented(1), 1, &[1, 0]).len(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let c = Chart::standard(2, 1);
        let b = BasisIndex::new(&c, 1, basis_of_weight(&c, Sector::Log, &[1, 1], 1, 1));
        let v: SparseVec = (0..b.len()).map(|i| (i, Q::from_integer((i as i64 + 1).into()))).collect();
        let f = b.combination(&v);
        assert_eq!(b.coords_exact(&f).unwrap(), v);
    }
}
