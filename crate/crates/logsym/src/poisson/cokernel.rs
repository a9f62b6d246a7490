//! Weighted gradings adapted to `Π`, cokernels of `ι_{Π^k}` and image generators.

use serde::Serialize;

use super::structure::PoissonStructure;
use crate::algebra_core::basis::{basis_of_weight, module_slice, span_ranks, weight_pieces, BasisIndex, Sector};
use crate::algebra_core::forms::mask_indices;
use crate::algebra_core::linalg::rank;
use crate::algebra_core::{LogForm, LogMultiVec, Poly, Q, RatFunc};
use crate::error::{Error, Result};

/// Per-variable weights for which `ι_Π` lowers the weight of every form by `shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub weights: Vec<u32>,
    pub shift: i32,
}

/// One weight slice of `C^i = Ω^i / im ι_{Π^{n−i}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelSlice {
    pub degree: usize,
    pub weight: u32,
    pub dim: usize,
    pub image_rank: usize,
    pub quotient_dim: usize,
}

/// All slices of `C^i` up to a weight cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelReport {
    pub degree: usize,
    pub cutoff: u32,
    pub grading: Grading,
    pub slices: Vec<CokernelSlice>,
}

impl CokernelReport {
    pub fn total(&self) -> usize {
        self.slices.iter().map(|s| s.quotient_dim).sum()
    }
}

/// Outcome of a per-weight span comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub equal: bool,
    /// First weight where the spans differ.
    pub witness: Option<u32>,
    pub checked_weights: u32,
}

fn compare_spans<F>(cutoff: u32, mut slices: F) -> Result<SpanReport>
where
    F: FnMut(u32) -> Result<(Vec<LogForm>, Vec<LogForm>)>,
{
    for w in 0..=cutoff {
        let (a, b) = slices(w)?;
        let (ra, rb, rab) = span_ranks(&a, &b)?;
        if ra != rab || rb != rab {
            return Ok(SpanReport { equal: false, witness: Some(w), checked_weights: w + 1 });
        }
    }
    Ok(SpanReport { equal: true, witness: None, checked_weights: cutoff + 1 })
}

impl PoissonStructure {
    /// Weight drops `g(plain ∩ {i,j}) − g·e` of the terms `x^e v_i∧v_j` of `Π`.
    pub fn iota_drops(&self, g: &[u32]) -> Vec<i32> {
        let chart = self.chart();
        let mut out = Vec::new();
        for (mask, f) in self.bivector().comps() {
            let plain: i32 = mask_indices(mask & !chart.divisor_mask()).map(|i| g[i] as i32).sum();
            if let Some(p) = f.as_poly() {
                for m in p.terms().keys() {
                    let e: i32 = m.0.iter().zip(g).map(|(a, b)| (a * b) as i32).sum();
                    out.push(plain - e);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Smallest weights in `{1,2,3}^d` (by sum, then lexicographically) making `Π` homogeneous.
    pub fn homogenizing_grading(&self) -> Option<Grading> {
        let d = self.chart().dim();
        let mut cands: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..d {
            cands = cands.into_iter().flat_map(|c| (1..=3).map(move |x| [c.clone(), vec![x]].concat())).collect();
        }
        cands.sort_by(|a, b| (a.iter().sum::<u32>(), a).cmp(&(b.iter().sum::<u32>(), b)));
        cands.into_iter().find_map(|g| {
            let drops = self.iota_drops(&g);
            match drops.as_slice() {
                [] => Some(Grading { weights: g, shift: 0 }),
                [s] => Some(Grading { weights: g, shift: *s }),
                _ => None,
            }
        })
    }

    fn require_grading(&self) -> Result<Grading> {
        self.homogenizing_grading()
            .ok_or_else(|| Error::UnsupportedGrading("no weights in {1,2,3} make Π homogeneous".into()))
    }

    /// `ι_{Π^k}` of the holomorphic `(t+2k)`-forms landing in weight `w` of `Ω^t`.
    fn iota_image(&self, grading: &Grading, k: usize, t: usize, w: u32) -> Vec<LogForm> {
        let chart = self.chart();
        let src_w = w as i64 + k as i64 * grading.shift as i64;
        if src_w < 0 || t + 2 * k > chart.dim() {
            return Vec::new();
        }
        let src = BasisIndex::new(chart, t + 2 * k, basis_of_weight(chart, Sector::Holomorphic, &grading.weights, t + 2 * k, src_w as u32));
        (0..src.len()).map(|i| self.iota(k, &src.form(i))).filter(|f| !f.is_zero()).collect()
    }

    /// Dimensions of `C^i = Ω^i / ι_{Π^{n−i}} Ω^{2n−i}` per weight up to `cutoff`, `i ≤ n`.
    pub fn c_cokernel_dims(&self, i: usize, cutoff: u32) -> Result<CokernelReport> {
        let n = self.n();
        if i > n {
            return Err(Error::Input(format!("C^i needs i ≤ n = {n}")));
        }
        let grading = self.require_grading()?;
        let chart = self.chart();
        let mut slices = Vec::new();
        for w in 0..=cutoff {
            let target = BasisIndex::new(chart, i, basis_of_weight(chart, Sector::Holomorphic, &grading.weights, i, w));
            let rows = self
                .iota_image(&grading, n - i, i, w)
                .iter()
                .map(|f| target.coords_exact(f))
                .collect::<Result<Vec<_>>>()?;
            let r = rank(&rows);
            slices.push(CokernelSlice { degree: i, weight: w, dim: target.len(), image_rank: r, quotient_dim: target.len() - r });
        }
        Ok(CokernelReport { degree: i, cutoff, grading, slices })
    }

    /// Pullbacks of `im(ι_{Π^{n−1}}: Ω^{2n−1} → Ω^1)` to the divisor span `O·ψ|_D`.
    /// With no divisor this checks that `C^1` vanishes.
    pub fn kernel_foliation_check(&self, cutoff: u32) -> Result<SpanReport> {
        self.require_log_symplectic()?;
        let m = self.chart().m();
        if m == 0 {
            let rep = self.c_cokernel_dims(1, cutoff)?;
            let bad = rep.slices.iter().find(|s| s.quotient_dim != 0).map(|s| s.weight);
            return Ok(SpanReport { equal: bad.is_none(), witness: bad, checked_weights: cutoff + 1 });
        }
        if m != 1 {
            return Err(Error::Input(format!("the foliation check needs a smooth divisor, got {m} branches")));
        }
        let grading = self.require_grading()?;
        let g = &grading.weights;
        let psi = self.psi_form(0)?.psi.pullback_to_stratum(1)?;
        let g_sub: Vec<u32> = g[1..].to_vec();
        let n = self.n();
        compare_spans(cutoff, |w| {
            let a = self
                .iota_image(&grading, n - 1, 1, w)
                .iter()
                .map(|f| f.pullback_to_stratum(1))
                .collect::<Result<Vec<_>>>()?;
            let b = module_slice(&psi, &g_sub, w)?;
            Ok((a, b))
        })
    }

    /// `F·⟨Φ^(r), ∂_I⟩` for all `r`-subsets `I`, with `∂_i = v_i / x_i` on divisorial indices.
    pub fn image_pi_generators(&self, r: usize) -> Result<Vec<LogForm>> {
        let n = self.n();
        if r > n {
            return Err(Error::Input(format!("r = {r} exceeds n = {n}")));
        }
        let phi = self.phi()?;
        let chart = self.chart();
        let d = chart.dim();
        let phi_r = phi.power(r).scale(&factorial(r).recip());
        let f = RatFunc::from_poly(self.pfaffian().clone());
        let mut out = Vec::new();
        for mask in crate::algebra_core::forms::masks_of_degree(d, r) {
            let mut den = Poly::one(d);
            for i in mask_indices(mask & chart.divisor_mask()) {
                den = &den * &Poly::var(d, i);
            }
            let dv = LogMultiVec::term(chart, mask, RatFunc::new(Poly::one(d), den));
            let dv = if r == 0 { LogMultiVec::scalar(chart, RatFunc::one(d)) } else { dv };
            let form = dv.contract(&phi_r)?.mul_func(&f);
            if !form.is_holomorphic() {
                return Err(Error::LogSymplecticViolation(format!("generator {} is not holomorphic", form)));
            }
            out.push(form);
        }
        Ok(out)
    }

    /// `F⟨Φ^(n), V⟩`, a nonzero constant.
    pub fn top_pairing(&self) -> Result<RatFunc> {
        let n = self.n();
        let phi = self.phi()?;
        let phi_n = phi.power(n).scale(&factorial(n).recip());
        let s = phi_n.contract_into(self.volume())?;
        Ok(&s.coeff(0) * &RatFunc::from_poly(self.pfaffian().clone()))
    }

    /// The generators span `im ι_{Π^{n−r}}` in every weight up to `cutoff`.
    pub fn image_span_check(&self, r: usize, cutoff: u32) -> Result<SpanReport> {
        let grading = self.require_grading()?;
        let g = grading.weights.clone();
        let gens = homogeneous_generators(&self.image_pi_generators(r)?, &g)?;
        let n = self.n();
        compare_spans(cutoff, |w| {
            let mut a = Vec::new();
            for x in &gens {
                a.extend(module_slice(x, &g, w)?);
            }
            Ok((a, self.iota_image(&grading, n - r, r, w)))
        })
    }

    /// On `X_b`, `O·(pulled back generators) = O·F_b ψ_b` with `F_b = (F/x_b)|_{X_b}`.
    pub fn pullback_span_check(&self, branch: usize, cutoff: u32) -> Result<SpanReport> {
        let chart = self.chart();
        if branch >= chart.m() {
            return Err(Error::Input(format!("branch {} is not divisorial", branch + 1)));
        }
        let grading = self.require_grading()?;
        let g = &grading.weights;
        let d = chart.dim();
        let bmask = 1u32 << branch;
        let f_b = self
            .pfaffian()
            .div_exact(&Poly::var(d, branch))
            .ok_or_else(|| Error::LogSymplecticViolation("F does not vanish on the branch".into()))?;
        let psi = self.psi_form(branch)?.psi.mul_func(&RatFunc::from_poly(f_b));
        let target = psi.pullback_to_stratum(bmask)?;
        let gens = self
            .image_pi_generators(1)?
            .iter()
            .map(|x| x.pullback_to_stratum(bmask))
            .collect::<Result<Vec<_>>>()?;
        let g_sub: Vec<u32> = (0..d).filter(|&i| i != branch).map(|i| g[i]).collect();
        let gens = homogeneous_generators(&gens, &g_sub)?;
        compare_spans(cutoff, |w| {
            let mut a = Vec::new();
            for x in &gens {
                a.extend(module_slice(x, &g_sub, w)?);
            }
            Ok((a, module_slice(&target, &g_sub, w)?))
        })
    }
}

fn factorial(k: usize) -> Q {
    (1..=k).fold(Q::from_integer(1.into()), |acc, j| acc * Q::from_integer((j as i64).into()))
}

fn homogeneous_generators(gens: &[LogForm], g: &[u32]) -> Result<Vec<LogForm>> {
    let mut out = Vec::new();
    for x in gens {
        let pieces = weight_pieces(x, g)?;
        if pieces.len() > 1 {
            return Err(Error::UnsupportedGrading(format!("generator {x} is not homogeneous")));
        }
        out.extend(pieces.into_iter().map(|(_, f)| f));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use crate::poisson::fixtures::{normal_form, toric_diagonal};

    #[test]
    fn normal_form_grading() {
        let g = normal_form(1, 2).unwrap().homogenizing_grading().unwrap();
        assert_eq!((g.weights, g.shift), (vec![1, 1, 2, 1], 2));
        let g = normal_form(1, 1).unwrap().homogenizing_grading().unwrap();
        assert_eq!((g.weights, g.shift), (vec![1, 1], 1));
    }

    #[test]
    fn symplectic_cokernel_vanishes() {
        let p = normal_form(0, 2).unwrap();
        let rep = p.c_cokernel_dims(1, 4).unwrap();
        assert_eq!(rep.total(), 0);
        assert!(p.kernel_foliation_check(4).unwrap().equal);
    }

    #[test]
    fn spans_and_pullbacks() {
        for k in 1..=2 {
            let p = normal_form(k, 2).unwrap();
            for r in 0..=2 {
                assert!(p.image_span_check(r, 4).unwrap().equal, "k={k} r={r}");
            }
            assert!(p.pullback_span_check(0, 4).unwrap().equal, "k={k}");
            assert!(p.top_pairing().unwrap().as_constant().is_some());
        }
        assert!(normal_form(1, 2).unwrap().kernel_foliation_check(4).unwrap().equal);
        let t = toric_diagonal(1).unwrap();
        assert!(t.image_span_check(1, 3).unwrap().equal);
    }
}
