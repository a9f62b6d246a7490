use logsym::algebra_core::parser::parse_form;
use logsym::algebra_core::{q, qi, Chart};
use logsym::complexes::*;
use logsym::poisson::fixtures::normal_form;
use logsym::Error;

#[test]
fn log_complex_local_cohomology() {
    let c = Chart::standard(2, 2);
    let r = slice_cohomology(&build_complex(&ComplexFamily::Log, &c, 4).unwrap());
    assert_eq!(r.dims(), vec![1, 2, 1]);
    assert_eq!(r.dim_at(1, &[0, 0]), 2);
    assert!(r.euler_consistent);
    let c4 = Chart::standard(4, 2);
    let r = slice_cohomology(&build_complex(&ComplexFamily::Log, &c4, 3).unwrap());
    assert_eq!(r.dims(), vec![1, 2, 1, 0, 0]);
    assert!(r.slices.iter().all(|s| s.weight.iter().all(|&x| x == 0)));
}

#[test]
fn minor_log_is_exact() {
    for d in 1..=3 {
        let c = Chart::standard(d, d);
        let r = slice_cohomology(&build_complex(&ComplexFamily::MinorLog, &c, 4).unwrap());
        assert!(r.all_zero(), "d={d}");
    }
}

#[test]
fn de_rham_line() {
    let c = Chart::plain(&["x"]).unwrap();
    let r = slice_cohomology(&build_complex(&ComplexFamily::DeRham, &c, 5).unwrap());
    assert_eq!(r.dims(), vec![1, 0]);
}

#[test]
fn homotopy_constants() {
    let c = Chart::standard(2, 2);
    assert_eq!(minor_log_homotopy_check(&c, &[0, 0]).unwrap(), Some(qi(2)));
    let c1 = Chart::standard(1, 1);
    assert_eq!(minor_log_homotopy_check(&c1, &[3]).unwrap(), Some(qi(4)));
}

#[test]
fn theta_log_n1() {
    let p = normal_form(1, 1).unwrap();
    let c = build_complex(&ComplexFamily::ThetaLog(p.clone()), p.chart(), 4).unwrap();
    assert_eq!(c.slices[0].terms.len(), 3);
    let r = theta_log_generator_check(&p, 4).unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn theta_upper_stalks() {
    let p = normal_form(1, 1).unwrap();
    let r = stalk_cohomology(&ComplexFamily::ThetaUpper(p.clone()), p.chart(), 6).unwrap();
    assert_eq!(r.dims()[0], 0);
    assert!(r.stable);
    let t = p.translate(&[qi(1), qi(0)]).unwrap();
    let r = stalk_cohomology(&ComplexFamily::ThetaUpper(t.clone()), t.chart(), 6).unwrap();
    assert_eq!(r.dims()[0], 1, "{r:?}");
    assert!(r.stable);
}

#[test]
fn brylinski_symplectic_plane() {
    let p = normal_form(0, 1).unwrap();
    let r = slice_cohomology(&build_complex(&ComplexFamily::Brylinski(p.clone()), p.chart(), 5).unwrap());
    assert_eq!(r.dims(), vec![1, 0, 0]);
    let r = stalk_cohomology(&ComplexFamily::Brylinski(p.clone()), p.chart(), 5).unwrap();
    assert_eq!(r.dims(), vec![1, 0, 0]);
}

#[test]
fn foliated() {
    let c = Chart::standard(2, 2);
    let psi = parse_form(&c, "dlog(x1) + 7/3*dlog(x2)", 1).unwrap();
    assert!(foliated_complex_cohomology(&c, &psi, 4).unwrap().all_zero());
    let bad = parse_form(&c, "dlog(x1) + dlog(x2)", 1).unwrap();
    assert!(matches!(foliated_complex_cohomology(&c, &bad, 4), Err(Error::StarHypothesisFails(_))));
    let c1 = Chart::standard(2, 1);
    let psi = parse_form(&c1, "dlog(x1)", 1).unwrap();
    let r = foliated_complex_cohomology(&c1, &psi, 4).unwrap();
    assert_eq!(r.dims(), vec![4, 0]);
    for a in 1..=4 {
        assert_eq!(r.dim_at(0, &[a, 0]), 1);
    }
    let _ = q(1, 1);
}

#[test]
fn simplicial() {
    let c = Chart::standard(2, 2);
    for qd in 0..=2 {
        assert!(simplicial_exactness(&c, qd, 3).unwrap().passed);
    }
}

#[test]
fn augmented() {
    let c = Chart::standard(2, 2);
    let r = augmented_minor_log_build(&c, 3).unwrap();
    assert!(r.d_stable);
    assert!(r.pieces_match(), "{:?}", r.pieces);
}
