use std::collections::BTreeMap;

use proptest::prelude::*;

use logsym::algebra_core::forms::{masks_of_degree, wedge_sign};
use logsym::algebra_core::parser::{parse_form, parse_multivec};
use logsym::algebra_core::random::{random_form, random_holomorphic_form, random_poly, random_ratfunc, rng};
use logsym::algebra_core::{Chart, ChartRef, LogForm, LogMultiVec, Poly, RatFunc};
use logsym::complexes::{build_complex, simplicial_rho, slice_cohomology, ComplexFamily, Tuple};
use logsym::hodge::{diamond_row_sums, rotate_table, theta_cohomology_dims, HodgeDiamond};
use logsym::poisson::fixtures::{direct_sum, normal_form, toric_diagonal};
use logsym::poisson::make_poisson;

fn charts() -> Vec<ChartRef> {
    vec![Chart::standard(3, 0), Chart::standard(3, 2), Chart::standard(4, 4), Chart::symplectic(2, 1)]
}

fn random_multivec(seed: u64, chart: &ChartRef, k: usize) -> LogMultiVec {
    let mut g = rng(seed);
    let mut out = LogMultiVec::zero(chart, k);
    for mask in masks_of_degree(chart.dim(), k) {
        out.add_comp(mask, RatFunc::from_poly(random_poly(&mut g, chart.dim(), 2)));
    }
    out
}

fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_sign_matches_inversion_count(a in 0u32..64, b in 0u32..64) {
        let got = wedge_sign(a, b);
        if a & b != 0 {
            prop_assert_eq!(got, None);
        } else {
            let seq: Vec<usize> = (0..6).filter(|i| a >> i & 1 == 1).chain((0..6).filter(|i| b >> i & 1 == 1)).collect();
            prop_assert_eq!(got, Some(permutation_sign(&seq)));
        }
    }

    #[test]
    fn wedge_is_associative_and_graded_commutative(seed in any::<u64>(), ci in 0usize..4, p in 0usize..3, q in 0usize..3) {
        let c = &charts()[ci];
        let mut g = rng(seed);
        let a = random_form(&mut g, c, p);
        let b = random_form(&mut g, c, q);
        let e = random_form(&mut g, c, 1);
        let left = a.wedge(&b).unwrap().wedge(&e).unwrap();
        let right = a.wedge(&b.wedge(&e).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, if p * q % 2 == 0 { ba } else { ba.neg() });
    }

    #[test]
    fn d_squares_to_zero(seed in any::<u64>(), ci in 0usize..4, k in 0usize..3) {
        let c = &charts()[ci];
        let w = random_form(&mut rng(seed), c, k);
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn d_squares_to_zero_on_rational_forms(seed in any::<u64>(), k in 0usize..2) {
        let c = Chart::standard(2, 1);
        let mut g = rng(seed);
        let w = random_form(&mut g, &c, k).mul_func(&random_ratfunc(&mut g, c.dim()));
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>(), ci in 0usize..4, p in 0usize..3) {
        let c = &charts()[ci];
        let mut g = rng(seed);
        let a = random_form(&mut g, c, p);
        let b = random_form(&mut g, c, 1);
        let lhs = a.wedge(&b).unwrap().d();
        let t = a.d().wedge(&b).unwrap();
        let u = a.wedge(&b.d()).unwrap();
        let rhs = if p % 2 == 0 { t.add(&u) } else { t.sub(&u) }.unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_antisymmetry_and_jacobi(seed in any::<u64>()) {
        let c = Chart::standard(3, 1);
        let p = random_multivec(seed, &c, 1);
        let q = random_multivec(seed ^ 1, &c, 1);
        let r = random_multivec(seed ^ 2, &c, 1);
        prop_assert_eq!(p.schouten(&q).unwrap(), q.schouten(&p).unwrap().neg());
        let cyc = p.schouten(&q.schouten(&r).unwrap()).unwrap()
            .add(&q.schouten(&r.schouten(&p).unwrap()).unwrap()).unwrap()
            .add(&r.schouten(&p.schouten(&q).unwrap()).unwrap()).unwrap();
        prop_assert!(cyc.is_zero());
        let b = random_multivec(seed ^ 3, &c, 2);
        prop_assert_eq!(b.schouten(&p).unwrap(), p.schouten(&b).unwrap().neg());
    }

    #[test]
    fn bracket_of_bivector_is_twice_the_jacobiator(seed in any::<u64>()) {
        let c = Chart::standard(3, 0);
        let pi = random_multivec(seed, &c, 2);
        let entry = |i: usize, j: usize| -> Poly {
            if i == j {
                return Poly::zero(3);
            }
            let f = pi.coeff(1 << i | 1 << j).as_poly().cloned().unwrap();
            if i < j { f } else { f.scale(&-logsym::algebra_core::qi(1)) }
        };
        let mut jac = Poly::zero(3);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            for l in 0..3 {
                jac = &jac + &(&entry(i, l) * &entry(j, k).deriv(l));
            }
        }
        let bracket = pi.schouten(&pi).unwrap();
        let got = bracket.coeff(0b111).as_poly().cloned().unwrap_or_else(|| Poly::zero(3));
        prop_assert_eq!(got, jac.scale(&logsym::algebra_core::qi(2)));
    }

    #[test]
    fn multidegree_pieces_recompose(seed in any::<u64>(), ci in 0usize..4, k in 0usize..3) {
        let c = &charts()[ci];
        let w = random_form(&mut rng(seed), c, k);
        let mut sum = LogForm::zero(c, k);
        let mut seen = BTreeMap::new();
        for (mu, piece) in w.multidegree_decompose().unwrap() {
            prop_assert!(seen.insert(mu.clone(), ()).is_none());
            prop_assert_eq!(piece.multidegree_decompose().unwrap().len(), 1);
            sum = sum.add(&piece).unwrap();
        }
        prop_assert_eq!(sum, w);
    }

    #[test]
    fn printed_forms_parse_back(seed in any::<u64>(), ci in 0usize..4, k in 0usize..3) {
        let c = &charts()[ci];
        let w = random_form(&mut rng(seed), c, k);
        prop_assert_eq!(parse_form(c, &w.display(), k).unwrap(), w);
    }

    #[test]
    fn brylinski_squares_to_zero(seed in any::<u64>(), k in 0usize..5) {
        let p = normal_form(1, 2).unwrap();
        let w = random_form(&mut rng(seed), p.chart(), k);
        prop_assert!(p.brylinski(&p.brylinski(&w)).is_zero());
    }

    #[test]
    fn pfaffian_is_multiplicative(seed in any::<u64>()) {
        let mut g = rng(seed);
        let mk = |names: [&str; 2], f: Poly| {
            let c = Chart::plain(&names).unwrap();
            let pi = LogMultiVec::term(&c, 0b11, RatFunc::from_poly(f));
            make_poisson(&c, &pi)
        };
        let mut f1 = random_poly(&mut g, 2, 3);
        let mut f2 = random_poly(&mut g, 2, 3);
        for f in [&mut f1, &mut f2] {
            if f.is_zero() {
                *f = Poly::one(2);
            }
        }
        let p1 = mk(["a", "b"], f1).unwrap();
        let p2 = mk(["c", "e"], f2).unwrap();
        let s = direct_sum(&p1, &p2).unwrap();
        let lifted = |f: &Poly, off: usize| Poly::from_terms(4, f.terms().iter().map(|(m, c)| {
            let mut e = vec![0u32; 4];
            e[off] = m.0[0];
            e[off + 1] = m.0[1];
            (logsym::algebra_core::Mono(e), c.clone())
        }));
        prop_assert_eq!(s.pfaffian().clone(), &lifted(p1.pfaffian(), 0) * &lifted(p2.pfaffian(), 2));
    }

    #[test]
    fn simplicial_rho_squares_to_zero(seed in any::<u64>(), q in 0usize..3) {
        let c = Chart::standard(3, 3);
        let mut g = rng(seed);
        let w = random_holomorphic_form(&mut g, &c, q);
        let once = simplicial_rho(&c, 0, &Tuple::from([(0, w)])).unwrap();
        let twice = simplicial_rho(&c, 1, &once).unwrap();
        let all_zero = twice.values().all(|f| f.is_zero());
        prop_assert!(all_zero);
    }

    #[test]
    fn theta_dims_are_linear(a in proptest::collection::vec(0u64..4, 6), b in proptest::collection::vec(0u64..4, 6)) {
        let make = |v: &[u64]| {
            let h = vec![
                vec![v[0], v[1], v[2]],
                vec![v[1], v[3], v[1]],
                vec![v[2], v[1], v[0]],
            ];
            HodgeDiamond::new(1, h).unwrap()
        };
        let (ha, hb) = (make(&a), make(&b));
        let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let hs = make(&sum);
        let da = theta_cohomology_dims(&ha).unwrap();
        let db = theta_cohomology_dims(&hb).unwrap();
        let ds = theta_cohomology_dims(&hs).unwrap();
        let added: Vec<u64> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
        prop_assert_eq!(&ds, &added);
        prop_assert_eq!(ds.iter().sum::<u64>(), hs.total());
        prop_assert_eq!(diamond_row_sums(&rotate_table(&hs.h)), ds);
    }
}

#[test]
fn off_poisson_bracket_is_rejected() {
    let c = Chart::standard(4, 0);
    let pi = parse_multivec(&c, "x3*D(x1)/\\D(x2) + x1*D(x2)/\\D(x3) - x1*D(x1)/\\D(x3)", 2).unwrap();
    assert!(!pi.schouten(&pi).unwrap().is_zero());
    assert!(matches!(make_poisson(&c, &pi), Err(logsym::Error::NotPoisson(_))));
}

#[test]
fn multidegree_cutoff_does_not_change_slices() {
    for (c, fam) in [(Chart::standard(2, 2), ComplexFamily::Log), (Chart::standard(3, 3), ComplexFamily::MinorLog), (Chart::standard(2, 1), ComplexFamily::DeRham)] {
        let small = slice_cohomology(&build_complex(&fam, &c, 3).unwrap());
        let large = slice_cohomology(&build_complex(&fam, &c, 5).unwrap());
        for s in &small.slices {
            assert!(large.slices.contains(s), "{fam} {s:?}");
        }
        for s in large.slices.iter().filter(|s| s.weight.iter().sum::<u32>() <= 3) {
            assert!(small.slices.contains(s), "{fam} {s:?}");
        }
    }
}

#[test]
fn fixtures_pass_poisson_check() {
    for p in [normal_form(2, 2).unwrap(), toric_diagonal(2).unwrap()] {
        assert!(p.bivector().schouten(p.bivector()).unwrap().is_zero());
        assert!(!p.pfaffian().is_zero());
    }
}
