//! Seeded identity suites for a Poisson structure.

use serde::Serialize;

use crate::algebra_core::random::{random_form, rng, FormRng};
use crate::algebra_core::{q, LogForm, Q};
use crate::error::Result;
use crate::poisson::{square_commutes, PoissonStructure, Strand};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub n: usize,
    pub log_symplectic: bool,
    pub warnings: Vec<String>,
    pub identities: Vec<IdentityResult>,
    pub passed: bool,
}

struct Suite {
    results: Vec<IdentityResult>,
}

impl Suite {
    fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        let r = match self.results.iter_mut().find(|r| r.name == name) {
            Some(r) => r,
            None => {
                self.results.push(IdentityResult { name: name.into(), passed: true, checks: 0, witness: None });
                self.results.last_mut().unwrap()
            }
        };
        r.checks += 1;
        if !ok && r.passed {
            r.passed = false;
            r.witness = Some(witness());
        }
    }

    fn touch(&mut self, name: &str) {
        if !self.results.iter().any(|r| r.name == name) {
            self.results.push(IdentityResult { name: name.into(), passed: true, checks: 0, witness: None });
        }
    }
}

fn form(r: &mut FormRng, p: &PoissonStructure, k: usize) -> LogForm {
    random_form(r, p.chart(), k)
}

/// Run every identity on `trials` seeded random forms per degree.
pub fn verify_structure(p: &PoissonStructure, trials: usize, seed: u64) -> Result<VerifyReport> {
    let mut r = rng(seed);
    let n = p.n();
    let d = 2 * n;
    let mut s = Suite { results: Vec::new() };
    let lambdas: Vec<Q> = vec![q(-(n as i64), 1), q(0, 1), q(1, 2)];
    let names = [
        "brylinski-squared",
        "delta-lambda-squared",
        "commutation-d-iota",
        "commutation-iota-d",
        "square-theta",
        "square-de-rham",
        "square-hybrid",
        "log-duality-chain",
    ];
    for name in names {
        s.touch(name);
    }
    for _ in 0..trials {
        for k in 0..=d {
            let w = form(&mut r, p, k);
            let b = p.brylinski(&p.brylinski(&w));
            s.record("brylinski-squared", b.is_zero(), || w.to_string());
            for l in &lambdas {
                let t = p.delta_lambda(l, &p.delta_lambda(l, &w));
                s.record("delta-lambda-squared", t.is_zero(), || format!("λ = {l}, ω = {w}"));
            }
            for m in 1..=n {
                let (a, b) = p.verify_commutation(m, &w)?;
                s.record("commutation-d-iota", a, || format!("m = {m}, ω = {w}"));
                s.record("commutation-iota-d", b, || format!("m = {m}, ω = {w}"));
            }
        }
        for i in 0..n {
            let w = form(&mut r, p, d - i);
            s.record("square-theta", square_commutes(&p.bonding_square(Strand::Theta, i as i32, &w)?), || format!("i = {i}, ω = {w}"));
        }
        for i in n..d {
            let w = form(&mut r, p, i);
            s.record("square-de-rham", square_commutes(&p.bonding_square(Strand::DeRham, i as i32, &w)?), || format!("i = {i}, ω = {w}"));
        }
        for i in -(n as i32)..n as i32 {
            let w = form(&mut r, p, n + i.unsigned_abs() as usize);
            s.record("square-hybrid", square_commutes(&p.bonding_square(Strand::Ed, i, &w)?), || format!("i = {i}, ω = {w}"));
        }
        if p.log_symplectic() {
            for k in 1..=d {
                let w = form(&mut r, p, k);
                let lhs = p.log_duality_apply(&w)?.d();
                let rhs = p.log_duality_apply(&p.delta_mdp(&w))?;
                s.record("log-duality-chain", lhs == rhs, || format!("ω = {w}"));
            }
        }
    }
    if p.log_symplectic() {
        for i in 0..=n {
            s.record("phi-powers", p.verify_phi_powers(i)?, || format!("i = {i}"));
            s.record("log-duality-invertible", p.log_duality_verify(i)?, || format!("i = {i}"));
        }
        for b in 0..p.chart().m() {
            let ok = p.psi_form(b).is_ok();
            s.record("psi-closed", ok, || format!("branch {}", b + 1));
        }
    }
    let mut warnings = Vec::new();
    if trials == 0 {
        warnings.push("no trials requested: random identities pass vacuously".to_string());
    }
    if !p.log_symplectic() {
        warnings.push("structure is not log-symplectic: Φ, ψ and log duality checks skipped".to_string());
    }
    let passed = s.results.iter().all(|r| r.passed);
    Ok(VerifyReport { seed, trials, n, log_symplectic: p.log_symplectic(), warnings, identities: s.results, passed })
}
