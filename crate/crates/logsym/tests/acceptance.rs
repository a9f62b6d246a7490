//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use logsym::algebra_core::basis::multidegrees_up_to;
use logsym::algebra_core::parser::parse_form;
use logsym::algebra_core::random::{random_holomorphic_form, rng};
use logsym::algebra_core::{qi, Chart};
use logsym::cli::verify_structure;
use logsym::complexes::*;
use logsym::hodge::{diamond_row_sums, rotate_table, theta_cohomology_dims, HodgeDiamond};
use logsym::poisson::fixtures::{normal_form, toric_by_torus, toric_diagonal};
use logsym::poisson::PoissonStructure;
use rand::Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn normal_forms() -> Vec<(usize, usize, PoissonStructure)> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for k in 0..=n.min(2) {
            out.push((k, n, normal_form(k, n).unwrap()));
        }
    }
    out
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn identity_suite() -> Check {
    let mut fixtures: Vec<(String, PoissonStructure)> =
        normal_forms().into_iter().map(|(k, n, p)| (format!("normal-form k={k} n={n}"), p)).collect();
    fixtures.push(("toric-diagonal n=2".into(), toric_diagonal(2).unwrap()));
    for (name, p) in fixtures {
        let r = verify_structure(&p, 100, 7).map_err(|e| format!("{name}: {e}"))?;
        if let Some(bad) = r.identities.iter().find(|i| !i.passed) {
            return Err(format!("{name}: {} fails on {}", bad.name, bad.witness.clone().unwrap_or_default()));
        }
    }
    Ok(())
}

fn log_duality() -> Check {
    let mut fixtures: Vec<PoissonStructure> = normal_forms().into_iter().map(|x| x.2).collect();
    fixtures.extend([toric_diagonal(1).unwrap(), toric_diagonal(2).unwrap(), toric_by_torus(1).unwrap(), toric_by_torus(2).unwrap()]);
    for p in fixtures {
        for i in 0..=p.n() {
            ensure(p.log_duality_verify(i).map_err(|e| e.to_string())?, || format!("{} at i={i}", p.bivector()))?;
        }
    }
    Ok(())
}

fn deligne_stalks() -> Check {
    for (d, m) in [(2, 2), (4, 2)] {
        let c = Chart::standard(d, m);
        let r = slice_cohomology(&build_complex(&ComplexFamily::Log, &c, 4).map_err(|e| e.to_string())?);
        let want: Vec<usize> = (0..=d).map(|k| if k <= m { binom(m, k) } else { 0 }).collect();
        let zero = vec![0; d];
        let at_zero: Vec<usize> = (0..=d as i32).map(|k| r.dim_at(k, &zero)).collect();
        ensure(at_zero == want, || format!("d={d} m={m}: origin dims {at_zero:?}, want {want:?}"))?;
        ensure(r.dims() == want, || format!("d={d} m={m}: nonzero multidegrees carry cohomology {:?}", r.slices))?;
    }
    Ok(())
}

fn minor_log() -> Check {
    for d in 1..=4 {
        let c = Chart::standard(d, d);
        let r = slice_cohomology(&build_complex(&ComplexFamily::MinorLog, &c, 4).map_err(|e| e.to_string())?);
        ensure(r.all_zero(), || format!("d={d}: {:?}", r.slices))?;
        let tw = slice_cohomology(&build_complex(&ComplexFamily::MinorLogTwisted, &c, 4).map_err(|e| e.to_string())?);
        ensure(tw.all_zero(), || format!("twisted d={d}: {:?}", tw.slices))?;
        for mu in multidegrees_up_to(d, 4) {
            let k = minor_log_homotopy_check(&c, &mu).map_err(|e| e.to_string())?;
            ensure(k.is_some(), || format!("empty slice {mu:?}"))?;
        }
    }
    Ok(())
}

fn theta_log() -> Check {
    for (k, n, p) in normal_forms() {
        let r = theta_log_generator_check(&p, 2 * n as u32 + 1).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("k={k} n={n}: {r:?}"))?;
    }
    Ok(())
}

fn foliated() -> Check {
    let c = Chart::standard(2, 2);
    let psi = parse_form(&c, "dlog(x1) + 7/3*dlog(x2)", 1).unwrap();
    let r = foliated_complex_cohomology(&c, &psi, 4).map_err(|e| e.to_string())?;
    ensure(r.all_zero(), || format!("multiplicity two: {:?}", r.slices))?;
    let c1 = Chart::standard(2, 1);
    let psi = parse_form(&c1, "dlog(x1)", 1).unwrap();
    let r = foliated_complex_cohomology(&c1, &psi, 4).map_err(|e| e.to_string())?;
    for mu in multidegrees_up_to(2, 4) {
        let want = usize::from(mu[0] >= 1 && mu[1] == 0);
        ensure(r.dim_at(0, &mu) == want, || format!("H^0 at {mu:?} is {}, want {want}", r.dim_at(0, &mu)))?;
    }
    ensure(r.dims()[1] == 0, || "H^1 ≠ 0 on the smooth divisor".into())
}

fn simplicial() -> Check {
    let c = Chart::standard(2, 2);
    for q in 0..=2 {
        let r = simplicial_exactness(&c, q, 3).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("q={q}: {:?}", r.witness))?;
    }
    let mut g = rng(11);
    for _ in 0..50 {
        for q in 0..=2 {
            let w = random_holomorphic_form(&mut g, &c, q);
            let once = simplicial_rho(&c, 0, &Tuple::from([(0, w)])).map_err(|e| e.to_string())?;
            let twice = simplicial_rho(&c, 1, &once).map_err(|e| e.to_string())?;
            ensure(twice.is_empty(), || "ρ∘ρ ≠ 0".into())?;
        }
    }
    Ok(())
}

fn theta_upper() -> Check {
    let p = normal_form(1, 1).unwrap();
    let r = stalk_cohomology(&ComplexFamily::ThetaUpper(p.clone()), p.chart(), 6).map_err(|e| e.to_string())?;
    ensure(r.stable && r.dims()[0] == 0, || format!("origin: {:?}", r.totals))?;
    let t = p.translate(&[qi(1), qi(0)]).map_err(|e| e.to_string())?;
    let r = stalk_cohomology(&ComplexFamily::ThetaUpper(t.clone()), t.chart(), 6).map_err(|e| e.to_string())?;
    ensure(r.stable && r.dims()[0] == 1, || format!("off the divisor: {:?}", r.totals))
}

fn image_spans() -> Check {
    let mut fixtures: Vec<PoissonStructure> = normal_forms().into_iter().map(|x| x.2).collect();
    fixtures.extend([toric_diagonal(1).unwrap(), toric_diagonal(2).unwrap(), toric_by_torus(1).unwrap(), toric_by_torus(2).unwrap()]);
    for p in &fixtures {
        for r in 0..=p.n() {
            let s = p.image_span_check(r, 3).map_err(|e| e.to_string())?;
            ensure(s.equal, || format!("{} r={r} differs at weight {:?}", p.bivector(), s.witness))?;
        }
    }
    for k in 1..=2 {
        let p = normal_form(k, 2).unwrap();
        let s = p.pullback_span_check(0, 3).map_err(|e| e.to_string())?;
        ensure(s.equal, || format!("pullback k={k} differs at weight {:?}", s.witness))?;
    }
    Ok(())
}

fn random_diamond(g: &mut impl Rng, n: usize) -> HodgeDiamond {
    let s = 2 * n + 1;
    let mut h = vec![vec![0u64; s]; s];
    for p in 0..s {
        for q in 0..s {
            let (a, b) = (p.min(q), p.max(q));
            let (c, d) = ((s - 1 - b), (s - 1 - a));
            if (a, b) <= (c, d) {
                let v = g.gen_range(0..6);
                for (x, y) in [(a, b), (b, a), (c, d), (d, c)] {
                    h[x][y] = v;
                }
            }
        }
    }
    HodgeDiamond::new(n, h).expect("symmetric by construction")
}

fn hodge() -> Check {
    let p1 = HodgeDiamond::new(1, vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]).unwrap();
    ensure(theta_cohomology_dims(&p1).unwrap() == vec![0, 0, 4, 0, 0], || "P1×P1".into())?;
    ensure(theta_cohomology_dims(&HodgeDiamond::torus(1)).unwrap() == vec![1, 4, 6, 4, 1], || "abelian surface".into())?;
    let mut g = rng(3);
    for t in 0..20 {
        let h = random_diamond(&mut g, 1 + t % 3);
        let dims = theta_cohomology_dims(&h).unwrap();
        ensure(dims.iter().sum::<u64>() == h.total(), || format!("sum on {h:?}"))?;
        let r = rotate_table(&h.h);
        ensure(diamond_row_sums(&r) == dims, || "rotated rows".into())?;
        let mut t4 = h.h.clone();
        for _ in 0..4 {
            t4 = rotate_table(&t4);
        }
        ensure(t4 == h.h, || "rotation period".into())?;
    }
    Ok(())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("identity suite", identity_suite),
        ("log duality", log_duality),
        ("log complex stalks", deligne_stalks),
        ("minor log exactness", minor_log),
        ("log Θ complex matches log de Rham", theta_log),
        ("foliated complex", foliated),
        ("simplicial resolution", simplicial),
        ("Θ stalks", theta_upper),
        ("image of π spans", image_spans),
        ("Hodge transforms", hodge),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
