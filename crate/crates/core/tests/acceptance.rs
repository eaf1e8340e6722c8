//! Acceptance criteria. Prints one `criterion N: PASS|FAIL` line each and
//! exits nonzero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use tateres::cocycle::{phi_closed_form, witt};
use tateres::liealg::killing_nform;
use tateres::random::{exponent_matrix, laurent, prng};
use tateres::rational::{frac, q};
use tateres::residue::{ack_residue_n1, residue_det_monomial, residue_with};
use tateres::suites::{cube_checks, lift_checks, rho_checks, Check};
use tateres::{
    phi, verify_cocycle, CocycleInput, Flavor, GLaurent, Idempotents, LatticeOperator, LaurentPoly, LieAlgebra, LieElement, Q,
};

fn report(id: u32, what: &str, failures: &[String], elapsed: Duration, budget: Duration) -> bool {
    let slow = elapsed > budget;
    let ok = failures.is_empty() && !slow;
    println!(
        "criterion {id}: {} ({what}; {} failures; {:.2?} of {:?})",
        if ok { "PASS" } else { "FAIL" },
        failures.len(),
        elapsed,
        budget
    );
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    ok
}

fn failures_of(checks: &[Check]) -> Vec<String> {
    checks.iter().flat_map(|c| c.counterexamples.iter().map(move |x| format!("{}: {x}", c.name))).collect()
}

fn mono(exp: &[i64], c: Q) -> LaurentPoly {
    LaurentPoly::monomial(exp.to_vec(), c)
}

fn shifted_cuts(rng: &mut impl Rng, n: usize) -> Vec<Idempotents> {
    let mut out: Vec<Idempotents> = [-2, 1, 3].iter().map(|&m| Idempotents::with_cuts(vec![m; n])).collect();
    out.push(Idempotents::with_cuts((0..n).map(|_| [-2, 1, 3][rng.gen_range(0..3)]).collect()));
    out
}

fn criterion_01_classical_residue() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    for c in -5..=5 {
        for alpha in [q(1), q(-2), frac(3, 7)] {
            let r = residue_with(&mono(&[c], alpha.clone()), &[mono(&[1], q(1))], &Idempotents::standard(1)).unwrap();
            let want = if c == -1 { alpha.clone() } else { q(0) };
            if r.residue.0 != want || !r.agrees {
                failures.push(format!("c={c} alpha={alpha}: got {}", r.residue));
            }
        }
    }
    report(1, "res alpha t^c dt = alpha delta_{c,-1}", &failures, start.elapsed(), Duration::from_secs(1))
}

fn criterion_02_determinant() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=3 {
        let mut rng = prng(200 + n as u64);
        let idem = Idempotents::standard(n);
        for trial in 0..200 {
            let c = exponent_matrix(&mut rng, n, 4, trial % 2 == 0);
            let fs: Vec<LaurentPoly> = c.iter().map(|r| mono(r, q(1))).collect();
            let r = residue_with(&fs[0], &fs[1..], &idem).unwrap();
            let det = residue_det_monomial(&c).unwrap();
            if r.residue.0 != det || r.oracle.0 != det {
                failures.push(format!("n={n} c={c:?}: residue {} det {det} oracle {}", r.residue, r.oracle));
            }
        }
    }
    report(2, "operator residue = det = oracle on monomials, n = 1..3", &failures, start.elapsed(), Duration::from_secs(30))
}

fn criterion_03_oracle_agreement() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=2 {
        let mut rng = prng(300 + n as u64);
        let idem = Idempotents::standard(n);
        for _ in 0..200 {
            let fs: Vec<LaurentPoly> = (0..=n).map(|_| laurent(&mut rng, n, 3, 3)).collect();
            let r = residue_with(&fs[0], &fs[1..], &idem).unwrap();
            if !r.agrees {
                failures.push(format!("n={n} {fs:?}: residue {} oracle {}", r.residue, r.oracle));
            }
        }
    }
    report(3, "residue = oracle on random Laurent tuples, n = 1, 2", &failures, start.elapsed(), Duration::from_secs(60))
}

fn criterion_04_ack_formula() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = prng(400);
    let idem = Idempotents::standard(1);
    for _ in 0..100 {
        let f0 = laurent(&mut rng, 1, 3, 3);
        let f1 = laurent(&mut rng, 1, 3, 3);
        let ack = ack_residue_n1(&LatticeOperator::mul_scalar(&f0), &LatticeOperator::mul_scalar(&f1)).unwrap();
        let r = residue_with(&f0, std::slice::from_ref(&f1), &idem).unwrap();
        if ack != r.residue.0 {
            failures.push(format!("{f0:?}, {f1:?}: ack {ack} residue {}", r.residue));
        }
    }
    report(4, "tr([P, f1] f0) = residue", &failures, start.elapsed(), Duration::from_secs(10))
}

fn criterion_05_cube_identities() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut names = std::collections::BTreeSet::new();
    for n in 1..=3 {
        let checks = cube_checks(n, 500 + n as u64, 50).unwrap();
        names.extend(checks.iter().map(|c| c.name.clone()));
        failures.extend(failures_of(&checks).into_iter().map(|f| format!("n={n} {f}")));
    }
    for required in [
        "d^2 = 0",
        "dhat d = 0",
        "H^2 = 0",
        "dH + Hd = 1 - eps_1..eps_n",
        "dH + Hhat dhat = 1 on N^1",
        "dhat Hhat = 1 on N^0",
        "d_i d_j + d_j d_i = 0",
        "H_i H_j + H_j H_i = 0",
        "d_i H_j + H_j d_i = 0",
        "d_i H_i + H_i d_i = 1 - eps_i",
        "d_i eps_j = eps_j d_i",
        "H_i eps_j = eps_j H_i",
        "eps_1..eps_k product formula",
    ] {
        if !names.contains(required) {
            failures.push(format!("identity {required:?} was never exercised"));
        }
    }
    report(5, "cube complex identities, n = 1..3", &failures, start.elapsed(), Duration::from_secs(120))
}

fn criterion_06_lift() -> bool {
    let start = Instant::now();
    let checks = lift_checks(2, 600, 25).unwrap();
    let mut failures = failures_of(&checks);
    if checks.iter().all(|c| c.name != "bracket branch vanishes after H") {
        failures.push("bracket branch was never checked".into());
    }
    report(6, "closed-form lift = iterative lift, n = 2", &failures, start.elapsed(), Duration::from_secs(60))
}

fn criterion_07_kac_moody() -> bool {
    let start = Instant::now();
    let g = Arc::new(LieAlgebra::sl2());
    let mut failures = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let y0 = LieElement::basis(&g, i);
            let y1 = LieElement::basis(&g, j);
            let b = killing_nform(&[y1.clone(), y0.clone()]).unwrap();
            for a in -3..=3 {
                for bexp in -3..=3 {
                    let inp = CocycleInput::Multiloop(vec![GLaurent::monomial(&y0, vec![a]), GLaurent::monomial(&y1, vec![bexp])]);
                    let got = phi(&inp).unwrap();
                    let want = if a + bexp == 0 { -q(bexp) * &b } else { q(0) };
                    let closed = phi_closed_form(&[y0.clone(), y1.clone()], &[vec![a], vec![bexp]]).unwrap();
                    if got != want || closed != want {
                        failures.push(format!("({i},{j}) a={a} b={bexp}: phi {got} closed {closed} want {want}"));
                    }
                }
            }
        }
    }
    let e = LieElement::named(&g, "E").unwrap();
    let f = LieElement::named(&g, "F").unwrap();
    let v = phi(&CocycleInput::Multiloop(vec![GLaurent::monomial(&e, vec![2]), GLaurent::monomial(&f, vec![-2])])).unwrap();
    if v != q(8) {
        failures.push(format!("phi(E t^2, F t^-2) = {v}, want 8"));
    }
    report(7, "Kac-Moody cocycle on sl2", &failures, start.elapsed(), Duration::from_secs(10))
}

fn criterion_08_heisenberg() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    for a in -5..=5 {
        for b in -5..=5 {
            let got = phi(&CocycleInput::Scalar(vec![mono(&[a], q(1)), mono(&[b], q(1))])).unwrap();
            let want = if a + b == 0 { q(a) } else { q(0) };
            if got != want {
                failures.push(format!("a={a} b={b}: {got}, want {want}"));
            }
        }
    }
    report(8, "phi(t^a, t^b) = a delta_{a+b,0}", &failures, start.elapsed(), Duration::from_secs(5))
}

fn criterion_09_virasoro() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let value = |m: i64| phi(&CocycleInput::VectorField(vec![witt(m), witt(-m)])).unwrap();
    for m in -6..=6 {
        let got = value(m);
        let want = frac(-(m * m * m - m), 6);
        if got != want {
            failures.push(format!("m={m}: {got}, want {want}"));
        }
        if got != -value(-m) {
            failures.push(format!("m={m}: not odd"));
        }
        if (m.abs() <= 1) != got.eq(&q(0)) {
            failures.push(format!("m={m}: zero set wrong"));
        }
    }
    // a cubic is fixed by four values; the rest must follow it
    let fit = |m: i64| -> Q {
        let c1 = value(1);
        let c2 = value(2);
        let c3 = value(3);
        let c0 = value(0);
        let pts = [(0, c0), (1, c1), (2, c2), (3, c3)];
        let mut total = q(0);
        for (k, (xk, yk)) in pts.iter().enumerate() {
            let mut term = yk.clone();
            for (l, (xl, _)) in pts.iter().enumerate() {
                if l != k {
                    term *= frac(m - xl, xk - xl);
                }
            }
            total += term;
        }
        total
    };
    for m in -6..=6 {
        if fit(m) != value(m) {
            failures.push(format!("m={m}: off the cubic through m = 0..3"));
        }
    }
    report(9, "phi(L_m, L_-m) = -(m^3 - m)/6", &failures, start.elapsed(), Duration::from_secs(10))
}

fn criterion_10_cocycle() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (flavor, n, bound, trials) in [(Flavor::Multiloop, 1, 3, 100), (Flavor::VectorField, 1, 3, 100), (Flavor::Multiloop, 2, 2, 50)] {
        let r = verify_cocycle(flavor, None, n, bound, trials, 0).unwrap();
        println!(
            "    {flavor:?} n={n}: {} nonzero of {trials}; antisymmetrized extension: {} nonzero",
            r.nonzero.len(),
            r.alternating_nonzero.len()
        );
        failures.extend(r.nonzero.iter().map(|f| format!("{flavor:?} n={n} {f}")));
    }
    report(10, "phi vanishes on random boundaries", &failures, start.elapsed(), Duration::from_secs(300))
}

fn criterion_11_choice_independence() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = prng(1100);
    for n in 1..=3 {
        let std_idem = Idempotents::standard(n);
        let mut inputs: Vec<Vec<LaurentPoly>> = Vec::new();
        for trial in 0..200 {
            let c = exponent_matrix(&mut rng, n, 4, trial % 2 == 0);
            inputs.push(c.iter().map(|r| mono(r, q(1))).collect());
        }
        if n <= 2 {
            for _ in 0..200 {
                inputs.push((0..=n).map(|_| laurent(&mut rng, n, 3, 3)).collect());
            }
        }
        for fs in &inputs {
            let base = residue_with(&fs[0], &fs[1..], &std_idem).unwrap();
            for idem in shifted_cuts(&mut rng, n) {
                let other = residue_with(&fs[0], &fs[1..], &idem).unwrap();
                if other.residue != base.residue {
                    failures.push(format!("n={n} cuts {:?} {fs:?}: {} vs {}", idem.cuts(), other.residue, base.residue));
                }
            }
        }
    }
    report(11, "residues independent of cut points -2, 1, 3", &failures, start.elapsed(), Duration::from_secs(120))
}

fn criterion_12_rho() -> bool {
    let start = Instant::now();
    let checks = rho_checks(5, 1200, 500).unwrap();
    let mut failures = failures_of(&checks);
    let law = checks.iter().find(|c| c.name == "rho inductive law").map_or(0, |c| c.cases);
    if law != 500 {
        failures.push(format!("inductive law ran on {law} lists"));
    }
    report(12, "rho inductive law and relation to sgn", &failures, start.elapsed(), Duration::from_secs(5))
}

fn main() {
    let criteria: [fn() -> bool; 12] = [
        criterion_01_classical_residue,
        criterion_02_determinant,
        criterion_03_oracle_agreement,
        criterion_04_ack_formula,
        criterion_05_cube_identities,
        criterion_06_lift,
        criterion_07_kac_moody,
        criterion_08_heisenberg,
        criterion_09_virasoro,
        criterion_10_cocycle,
        criterion_11_choice_independence,
        criterion_12_rho,
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let ok = std::panic::catch_unwind(c).unwrap_or_else(|_| {
            println!("criterion {}: FAIL (panicked)", i + 1);
            false
        });
        if !ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
