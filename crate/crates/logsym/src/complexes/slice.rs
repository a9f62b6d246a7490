//! Finite slices of a complex and their exact cohomology.

use serde::Serialize;

use crate::algebra_core::basis::BasisIndex;
use crate::algebra_core::linalg::{kernel, rank, Echelon, SparseVec};
use crate::algebra_core::LogForm;
use crate::error::{Error, Result};

/// How a complex is cut into finite pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GradingMode {
    /// One slice per multidegree, `d` preserves it.
    Multidegree,
    /// One slice per weight under `weights`; each contracting step lowers it by `shift`.
    Weight { weights: Vec<u32>, shift: i32 },
    /// Unit weights; degree `p` keeps weights at most `W` minus the drops before it.
    Jet { shift: i32 },
}

impl GradingMode {
    pub fn name(&self) -> &'static str {
        match self {
            GradingMode::Multidegree => "multidegree-exact",
            GradingMode::Weight { .. } => "weight-exact",
            GradingMode::Jet { .. } => "weight-filtration-cutoff",
        }
    }
}

/// Where the basis vectors of a term live.
#[derive(Clone, Debug)]
pub enum TermSpace {
    /// The whole ambient monomial basis.
    Full(BasisIndex),
    /// A subspace with the given basis, in ambient coordinates.
    Sub(BasisIndex, Vec<SparseVec>),
    /// A direct sum over strata, keyed by the stratum mask.
    Blocks(Vec<(u32, BasisIndex)>),
}

/// One term of a slice.
#[derive(Clone, Debug)]
pub struct Term {
    pub degree: i32,
    pub form_degree: usize,
    pub dim: usize,
    /// Weight of each basis vector (jet mode only).
    pub weights: Vec<u32>,
    pub space: TermSpace,
}

impl Term {
    pub(crate) fn full(degree: i32, form_degree: usize, index: BasisIndex, weights: Vec<u32>) -> Self {
        Term { degree, form_degree, dim: index.len(), weights, space: TermSpace::Full(index) }
    }

    /// Basis vector `i` as a form (single-chart terms).
    pub fn form(&self, i: usize) -> Option<LogForm> {
        match &self.space {
            TermSpace::Full(ix) => Some(ix.form(i)),
            TermSpace::Sub(ix, b) => Some(ix.combination(&b[i])),
            TermSpace::Blocks(_) => None,
        }
    }

    /// Coordinates of a form in this term, failing when it lies outside.
    pub fn coords(&self, omega: &LogForm) -> Result<SparseVec> {
        match &self.space {
            TermSpace::Full(ix) => ix.coords_exact(omega),
            TermSpace::Sub(ix, b) => {
                let v = ix.coords_exact(omega)?;
                let mut e = Echelon::tracking();
                for (j, x) in b.iter().enumerate() {
                    e.insert_tagged(x.clone(), SparseVec::from([(j, num::One::one())]));
                }
                e.express(v).ok_or_else(|| Error::UnsupportedGrading("form leaves the subcomplex".into()))
            }
            TermSpace::Blocks(_) => Err(Error::Input("block terms take tuples".into())),
        }
    }
}

/// A finite piece of a complex: terms in consecutive degrees and the matrices between them.
#[derive(Clone, Debug)]
pub struct SliceComplex {
    /// Multidegree, weight, or `[W]` in jet mode.
    pub key: Vec<u32>,
    pub terms: Vec<Term>,
    /// `maps[t][j]`: image of basis vector `j` of term `t` in term `t+1`.
    pub maps: Vec<Vec<SparseVec>>,
}

impl SliceComplex {
    /// Panics unless consecutive differentials compose to zero.
    pub(crate) fn assert_complex(&self) {
        for t in 0..self.maps.len().saturating_sub(1) {
            for col in &self.maps[t] {
                let img = crate::algebra_core::linalg::apply(&self.maps[t + 1], col);
                assert!(img.is_empty(), "differential does not square to zero in slice {:?}, degree {}", self.key, self.terms[t].degree);
            }
        }
    }

    fn map_rank(&self, t: usize) -> usize {
        if t < self.maps.len() {
            rank(&self.maps[t])
        } else {
            0
        }
    }

    /// `dim H` in each term.
    pub fn cohomology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.terms.len()).map(|t| self.map_rank(t)).collect();
        (0..self.terms.len())
            .map(|t| self.terms[t].dim - ranks[t] - if t > 0 { ranks[t - 1] } else { 0 })
            .collect()
    }

    pub fn euler_terms(&self) -> i64 {
        self.terms.iter().enumerate().map(|(t, x)| if t % 2 == 0 { x.dim as i64 } else { -(x.dim as i64) }).sum()
    }

    /// Whether a cocycle of term `t` is a coboundary.
    pub fn is_exact(&self, t: usize, v: &SparseVec) -> bool {
        if t == 0 {
            return v.is_empty();
        }
        let mut e = Echelon::new();
        for c in &self.maps[t - 1] {
            e.insert(c.clone());
        }
        e.contains(v)
    }

    /// Whether `v` is a cocycle of term `t`.
    pub fn is_closed(&self, t: usize, v: &SparseVec) -> bool {
        t >= self.maps.len() || crate::algebra_core::linalg::apply(&self.maps[t], v).is_empty()
    }

    /// In jet mode: dimension of the image of `H(J_W) → H(J_w)` per term, where level `w`
    /// keeps weights at most `w − offsets[t]`.
    pub fn jet_image_dims(&self, offsets: &[u32], w: u32) -> Vec<usize> {
        let keep = |t: usize| -> Vec<bool> {
            let cap = w as i64 - offsets[t] as i64;
            self.terms[t].weights.iter().map(|&x| (x as i64) <= cap).collect()
        };
        let restrict = |v: &SparseVec, k: &[bool]| -> SparseVec { v.iter().filter(|(i, _)| k[**i]).map(|(i, c)| (*i, c.clone())).collect() };
        let mut out = Vec::new();
        for t in 0..self.terms.len() {
            let kt = keep(t);
            let cycles = if t < self.maps.len() {
                kernel(&self.maps[t])
            } else {
                (0..self.terms[t].dim).map(|i| SparseVec::from([(i, num::One::one())])).collect()
            };
            let mut bounds = Echelon::new();
            if t > 0 {
                let kp = keep(t - 1);
                for (j, c) in self.maps[t - 1].iter().enumerate() {
                    if kp[j] {
                        bounds.insert(restrict(c, &kt));
                    }
                }
            }
            let base = bounds.rank();
            for z in &cycles {
                bounds.insert(restrict(z, &kt));
            }
            out.push(bounds.rank() - base);
        }
        out
    }
}

/// A family cut into slices.
#[derive(Clone, Debug)]
pub struct GradedSliceComplex {
    pub family: String,
    pub mode: GradingMode,
    pub cutoff: u32,
    pub slices: Vec<SliceComplex>,
    /// Weight drop accumulated before each term (jet mode).
    pub offsets: Vec<u32>,
}
