//! Exact linear algebra over the rationals and over rational functions.

use std::collections::BTreeMap;

use num::{One, Zero};

use super::poly::Q;
use super::ratfunc::RatFunc;

/// Sparse vector: index to nonzero rational.
pub type SparseVec = BTreeMap<usize, Q>;

/// `v += c * w`, dropping cancelled entries.
pub fn axpy(v: &mut SparseVec, c: &Q, w: &SparseVec) {
    for (k, x) in w {
        let add = c * x;
        match v.get_mut(k) {
            Some(y) => {
                *y += add;
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    v.insert(*k, add);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Pivot {
    vec: SparseVec,
    tag: SparseVec,
}

/// Incremental row echelon basis of a span, tracking combinations.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Pivot>,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    /// Also record which inserted vectors produced each pivot.
    pub fn tracking() -> Self {
        Echelon { pivots: BTreeMap::new(), track: true }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce_pair(&self, mut v: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        let mut cursor = 0usize;
        loop {
            let hit = v.range(cursor..).find(|(k, _)| self.pivots.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { break };
            let p = &self.pivots[&k];
            let neg = -c;
            axpy(&mut v, &neg, &p.vec);
            if self.track {
                axpy(&mut tag, &neg, &p.tag);
            }
            cursor = k + 1;
        }
        (v, tag)
    }

    /// Remainder of `v` after elimination against the current pivots.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.reduce_pair(v, SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Coordinates of `v` in the tagged inserted vectors, when `v` lies in the span.
    pub fn express(&self, v: SparseVec) -> Option<SparseVec> {
        let (rem, tag) = self.reduce_pair(v, SparseVec::new());
        if !rem.is_empty() {
            return None;
        }
        Some(tag.into_iter().map(|(k, c)| (k, -c)).collect())
    }

    /// Insert `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_tagged(v, SparseVec::new()).is_none()
    }

    /// Insert with a tag; a dependent vector returns its reduced tag (a relation).
    pub fn insert_tagged(&mut self, v: SparseVec, tag: SparseVec) -> Option<SparseVec> {
        let (mut v, mut tag) = self.reduce_pair(v, tag);
        let Some((&lead, c)) = v.iter().next() else {
            return Some(tag);
        };
        let inv = c.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        if self.track {
            for x in tag.values_mut() {
                *x *= &inv;
            }
        }
        self.pivots.insert(lead, Pivot { vec: v, tag });
        None
    }
}

/// Rank of a family of sparse vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Basis of the null space of the matrix whose columns are `cols`.
pub fn kernel(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let tag = SparseVec::from([(j, Q::one())]);
        if let Some(rel) = e.insert_tagged(c.clone(), tag) {
            out.push(rel);
        }
    }
    out
}

/// Apply a column-stored sparse matrix to a sparse vector.
pub fn apply(cols: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, c) in x {
        axpy(&mut out, c, &cols[*j]);
    }
    out
}

/// Dense square matrix over rational functions.
pub type RatMatrix = Vec<Vec<RatFunc>>;

/// Inverse by Gauss–Jordan elimination, `None` when singular.
pub fn rat_inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let nv = a[0][0].nvars();
    let mut m: Vec<Vec<RatFunc>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { RatFunc::one(nv) } else { RatFunc::zero(nv) }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip().unwrap();
        m[col] = m[col].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-field elimination.
pub fn rat_det(a: &RatMatrix) -> RatFunc {
    let n = a.len();
    if n == 0 {
        return RatFunc::one(0);
    }
    let nv = a[0][0].nvars();
    let mut m = a.clone();
    let mut det = RatFunc::one(nv);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return RatFunc::zero(nv);
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].recip().unwrap();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    det
}

/// Pfaffian of a skew matrix over rationals (recursive expansion along the first row).
pub fn pfaffian(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    if n == 0 {
        return Q::one();
    }
    if n % 2 == 1 {
        return Q::zero();
    }
    let mut total = Q::zero();
    for j in 1..n {
        if a[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let minor: Vec<Vec<Q>> = keep.iter().map(|&r| keep.iter().map(|&c| a[r][c].clone()).collect()).collect();
        let term = &a[0][j] * pfaffian(&minor);
        if j % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::poly::{qi, Poly};

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(k, v)| (*k, qi(*v))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let cols = vec![sv(&[(0, 1), (1, 2)]), sv(&[(0, 2), (1, 4)]), sv(&[(2, 1)])];
        assert_eq!(rank(&cols), 2);
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        assert!(apply(&cols, &k[0]).is_empty());
        let mut e = Echelon::tracking();
        e.insert_tagged(cols[0].clone(), sv(&[(0, 1)]));
        e.insert_tagged(cols[2].clone(), sv(&[(1, 1)]));
        assert_eq!(e.express(sv(&[(0, 3), (1, 6), (2, -1)])), Some(sv(&[(0, 3), (1, -1)])));
        assert_eq!(e.express(sv(&[(1, 1)])), None);
    }

    #[test]
    fn pfaffian_4x4() {
        // Pf = a12 a34 - a13 a24 + a14 a23
        let a = [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]];
        let m: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        assert_eq!(pfaffian(&m), qi(6 - 10 + 12));
    }

    #[test]
    fn rational_inverse() {
        let x = RatFunc::from_poly(Poly::var(1, 0));
        let z = RatFunc::zero(1);
        let a = vec![vec![z.clone(), x.clone()], vec![-&x, z.clone()]];
        let inv = rat_inverse(&a).unwrap();
        assert_eq!(inv[0][1], -&x.recip().unwrap());
        assert_eq!(rat_det(&a), &x * &x);
    }
}
