//! Seeded verification suites. Each check runs over random inputs and keeps
//! a description of every counterexample.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::cocycle::{operator_vs_closed_form, verify_cocycle, CocycleError, Flavor};
use crate::combinat::permutations;
use crate::cube::lift::{closed_form_components, lift_closed_form, lift_iterative};
use crate::cube::{rho, CubeElement, CubeError};
use crate::laurent::{Exponent, LaurentPoly};
use crate::liealg::LieAlgebra;
use crate::matrix::QMatrix;
use crate::opalg::{Idempotents, LatticeOperator};
use crate::random::{cube_element, exponent, exponent_matrix, full_operator, index_list, laurent, lie_element, prng, small_rational, Prng};
use crate::rational::{format_q, q, sign_pow};
use crate::residue::{ack_residue_n1_with, raw_sum, residue_det_monomial, residue_with, ResidueError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("n = {0} is outside 1..=4")]
    BadN(usize),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cube,
    Residue,
    Lift,
    Cocycle,
    Rho,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Cube, Suite::Residue, Suite::Lift, Suite::Cocycle, Suite::Rho];
}

impl std::str::FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, SuiteError> {
        match s {
            "cube" => Ok(Suite::Cube),
            "residue" => Ok(Suite::Residue),
            "lift" => Ok(Suite::Lift),
            "cocycle" => Ok(Suite::Cocycle),
            "rho" => Ok(Suite::Rho),
            _ => Err(SuiteError::UnknownSuite(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexamples: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), cases: 0, passed: true, counterexamples: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.counterexamples.push(describe());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub degree_bound: i64,
    pub flavor: Flavor,
    pub algebra: Option<Arc<LieAlgebra>>,
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<SuiteReport, SuiteError> {
    if !(1..=4).contains(&p.n) {
        return Err(SuiteError::BadN(p.n));
    }
    if p.trials == 0 {
        return Err(SuiteError::NoTrials);
    }
    let checks = match suite {
        Suite::Cube => cube_checks(p.n, p.seed, p.trials)?,
        Suite::Residue => residue_checks(p.n, p.seed, p.trials)?,
        Suite::Lift => lift_checks(p.n, p.seed, p.trials)?,
        Suite::Cocycle => cocycle_checks(p)?,
        Suite::Rho => rho_checks(p.n, p.seed, p.trials)?,
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport { suite, n: p.n, seed: p.seed, trials: p.trials, checks, passed })
}

struct Checks(Vec<Check>);

impl Checks {
    fn get(&mut self, name: &str) -> &mut Check {
        if let Some(i) = self.0.iter().position(|c| c.name == name) {
            return &mut self.0[i];
        }
        self.0.push(Check::new(name));
        self.0.last_mut().expect("just pushed")
    }
}

/// `∂`, `H`, `ε` identities on random ideal-constrained elements of every degree.
pub fn cube_checks(n: usize, seed: u64, trials: usize) -> Result<Vec<Check>, SuiteError> {
    let idem = Idempotents::standard(n);
    let mut rng = prng(seed);
    let mut out = Checks(Vec::new());
    for degree in 0..=n + 1 {
        for trial in 0..trials {
            let d = if trial % 4 == 3 { 3 } else { 1 };
            let tag = |name: &str| format!("{name}: degree {degree}, trial {trial}, d {d}");
            if degree == 0 {
                let g = full_operator(&mut rng, n, d);
                let back = CubeElement::homotopy_hat(&g, &idem)?.boundary_hat()?;
                out.get("dhat Hhat = 1 on N^0").record(back == g, || tag("dhat Hhat"));
                continue;
            }
            let f = cube_element(&mut rng, n, d, degree);
            let h = f.homotopy(&idem)?;
            out.get("H = explicit formula").record(h == f.homotopy_explicit(&idem)?, || tag("H explicit"));
            out.get("H^2 = 0").record(h.homotopy(&idem)?.is_zero(), || tag("H^2"));
            for k in 1..=n {
                let ok = f.epsilon_prefix(k, &idem)? == f.epsilon_prefix_closed(k, &idem)?;
                out.get("eps_1..eps_k product formula").record(ok, || tag(&format!("eps prefix k={k}")));
            }
            let eps_all = f.epsilon_prefix(n, &idem)?;
            if degree == 1 {
                let lhs = h.boundary()?.add(&CubeElement::homotopy_hat(&f.boundary_hat()?, &idem)?)?;
                out.get("dH + Hhat dhat = 1 on N^1").record(lhs == f, || tag("dH + Hhat dhat"));
            } else {
                let df = f.boundary()?;
                let sum = h.boundary()?.add(&df.homotopy(&idem)?)?;
                out.get("dH + Hd = 1 - eps_1..eps_n").record(sum == f.sub(&eps_all)?, || tag("dH + Hd"));
                if degree == 2 {
                    out.get("dhat d = 0").record(df.boundary_hat()?.is_zero(), || tag("dhat d"));
                } else {
                    out.get("d^2 = 0").record(df.boundary()?.is_zero(), || tag("d^2"));
                }
            }
            for i in 0..n {
                let hi = f.homotopy_i(i, &idem)?;
                for j in 0..n {
                    let hj = f.homotopy_i(j, &idem)?;
                    let ok = hj.homotopy_i(i, &idem)?.add(&hi.homotopy_i(j, &idem)?)?.is_zero();
                    out.get("H_i H_j + H_j H_i = 0").record(ok, || tag(&format!("H_{i} H_{j}")));
                    if i == j {
                        continue;
                    }
                    let ej = f.epsilon(j, &idem)?;
                    let ok = ej.homotopy_i(i, &idem)? == hi.epsilon(j, &idem)?;
                    out.get("H_i eps_j = eps_j H_i").record(ok, || tag(&format!("H_{i} eps_{j}")));
                }
                if degree < 2 {
                    continue;
                }
                let di = f.boundary_i(i)?;
                let ok = hi.boundary_i(i)?.add(&di.homotopy_i(i, &idem)?)? == f.sub(&f.epsilon(i, &idem)?)?;
                out.get("d_i H_i + H_i d_i = 1 - eps_i").record(ok, || tag(&format!("d_{i} H_{i}")));
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let hj = f.homotopy_i(j, &idem)?;
                    let ok = hj.boundary_i(i)?.add(&di.homotopy_i(j, &idem)?)?.is_zero();
                    out.get("d_i H_j + H_j d_i = 0").record(ok, || tag(&format!("d_{i} H_{j}")));
                    let ok = f.epsilon(j, &idem)?.boundary_i(i)? == di.epsilon(j, &idem)?;
                    out.get("d_i eps_j = eps_j d_i").record(ok, || tag(&format!("d_{i} eps_{j}")));
                    if degree >= 3 {
                        let ok = di.boundary_i(j)?.add(&f.boundary_i(j)?.boundary_i(i)?)?.is_zero();
                        out.get("d_i d_j + d_j d_i = 0").record(ok, || tag(&format!("d_{i} d_{j}")));
                    }
                }
            }
        }
    }
    Ok(out.0)
}

fn shifted_cuts(n: usize) -> Vec<Idempotents> {
    [-2, 1, 3].iter().map(|&m| Idempotents::with_cuts(vec![m; n])).collect()
}

/// Operator residue against the coefficient oracle, the determinant formula,
/// the one-variable commutator formula and shifted cut points.
pub fn residue_checks(n: usize, seed: u64, trials: usize) -> Result<Vec<Check>, SuiteError> {
    let idem = Idempotents::standard(n);
    let mut rng = prng(seed);
    let mut out = Checks(Vec::new());
    let cuts = shifted_cuts(n);
    for trial in 0..trials {
        let balanced = trial % 2 == 0;
        let c = exponent_matrix(&mut rng, n, 4, balanced);
        let polys: Vec<_> = c.iter().map(|row| LaurentPoly::monomial(row.clone(), q(1))).collect();
        let report = residue_with(&polys[0], &polys[1..], &idem)?;
        let det = residue_det_monomial(&c)?;
        let ok = report.residue.0 == det && report.agrees;
        out.get("monomial residue = det = oracle").record(ok, || format!("trial {trial}: c = {c:?}, residue {}, det {}", report.residue, format_q(&det)));

        let fs: Vec<_> = (0..=n).map(|_| laurent(&mut rng, n, 3, 3)).collect();
        let report = residue_with(&fs[0], &fs[1..], &idem)?;
        out.get("residue = oracle").record(report.agrees, || format!("trial {trial}: {fs:?} residue {} oracle {}", report.residue, report.oracle));
        for alt in &cuts {
            let other = residue_with(&fs[0], &fs[1..], alt)?;
            let ok = other.residue == report.residue;
            out.get("independent of cut points").record(ok, || format!("trial {trial}: cuts {:?} gives {} vs {}", alt.cuts(), other.residue, report.residue));
        }

        if n == 1 {
            let f0 = LatticeOperator::mul_scalar(&fs[0]);
            let f1 = LatticeOperator::mul_scalar(&fs[1]);
            let ack = ack_residue_n1_with(&f0, &f1, &idem)?;
            let ok = ack == report.residue.0;
            out.get("tr([P, f1] f0) = residue").record(ok, || format!("trial {trial}: {fs:?} ack {} residue {}", format_q(&ack), report.residue));
        }
    }
    Ok(out.0)
}

fn random_monomial_operator(rng: &mut Prng, n: usize, algebra: Option<&Arc<LieAlgebra>>) -> LatticeOperator {
    let e = exponent(rng, n, 2);
    match algebra {
        Some(a) => LatticeOperator::shift_matrix(e, lie_element(rng, a).ad()),
        None => LatticeOperator::shift_matrix(e, QMatrix::identity(1).scale(&small_rational(rng))),
    }
}

/// Random monomial tuple whose exponents sum to zero, so the lift is not trivially zero.
pub fn random_lift_tuple(rng: &mut Prng, n: usize, algebra: Option<&Arc<LieAlgebra>>) -> Vec<LatticeOperator> {
    let mut fs: Vec<LatticeOperator> = (0..n).map(|_| random_monomial_operator(rng, n, algebra)).collect();
    let mut last = Exponent::zero(n);
    for f in &fs {
        let atom = f.atoms().next().expect("monomial has one atom");
        last = &last + &(-&atom.shift);
    }
    let weight = match algebra {
        Some(a) => lie_element(rng, a).ad(),
        None => QMatrix::identity(1).scale(&small_rational(rng)),
    };
    fs.insert(0, LatticeOperator::shift_matrix(last, weight));
    fs
}

/// Closed-form lift components against `θ_{p+1} = H δ θ_p`, vanishing of the
/// bracket branch, and the trace of the top stage against the raw sum.
pub fn lift_checks(n: usize, seed: u64, trials: usize) -> Result<Vec<Check>, SuiteError> {
    let idem = Idempotents::standard(n);
    let mut rng = prng(seed);
    let sl2 = Arc::new(LieAlgebra::sl2());
    let mut out = Checks(Vec::new());
    for trial in 0..trials {
        let alg = (trial % 2 == 1).then_some(&sl2);
        let fs = random_lift_tuple(&mut rng, n, alg);
        let states = lift_iterative(&fs, &idem)?;
        for (p, iter) in states.iter().enumerate() {
            let closed = lift_closed_form(&fs, p, &idem)?;
            for t in &closed.terms {
                let it = iter.term(&t.omitted);
                for s in closed_form_components(n, p) {
                    let ok = it.is_some_and(|it| it.head.get(&s) == t.head.get(&s));
                    out.get("closed form = iterative lift").record(ok, || format!("trial {trial}: p {p}, w {:?}, component {s}", t.omitted));
                }
            }
            let ok = iter.bracket_terms.iter().all(|t| t.head.is_zero());
            out.get("bracket branch vanishes after H").record(ok, || format!("trial {trial}: stage {}", p + 1));
        }
        let top = states[n].total_head()?;
        let zero_string = crate::cube::SignString(vec![crate::cube::Slot::Zero; n]);
        let tau = top.get(&zero_string).trace().map_err(CubeError::from)?;
        let raw = raw_sum(&fs, &idem)?;
        out.get("trace of top stage = raw sum").record(tau == raw, || format!("trial {trial}: tau {} raw {}", format_q(&tau), format_q(&raw)));
    }
    Ok(out.0)
}

/// `φ ∘ δ = 0` on random boundaries, plus operator values against the closed
/// form for multiloop algebras.
pub fn cocycle_checks(p: &SuiteParams) -> Result<Vec<Check>, SuiteError> {
    let report = verify_cocycle(p.flavor, p.algebra.clone(), p.n, p.degree_bound, p.trials, p.seed)?;
    let mut check = Check::new("phi vanishes on boundaries");
    check.cases = report.trials;
    check.passed = report.passed;
    check.counterexamples = report.nonzero.iter().map(ToString::to_string).collect();
    let mut checks = vec![check];
    if p.flavor == Flavor::Multiloop {
        let alg = p.algebra.clone().unwrap_or_else(|| Arc::new(LieAlgebra::sl2()));
        if alg.is_centreless() {
            let cmp = operator_vs_closed_form(&alg, p.n, p.trials, p.seed, true)?;
            checks.push(Check {
                name: "operator value = closed form".into(),
                cases: cmp.trials,
                passed: cmp.passed,
                counterexamples: cmp.mismatches.iter().map(ToString::to_string).collect(),
            });
        }
    }
    Ok(checks)
}

/// The inductive law for `ρ` and its relation to permutation signs.
pub fn rho_checks(n: usize, seed: u64, trials: usize) -> Result<Vec<Check>, SuiteError> {
    let mut rng = prng(seed);
    let mut out = Checks(Vec::new());
    for trial in 0..trials {
        let len = rng.gen_range(1..=n.max(2) + 3);
        let w = index_list(&mut rng, len, len);
        let p = len - 1;
        let below = w[..p].iter().filter(|&&x| x < w[p]).count() as i64;
        let ok = sign_pow(below) * rho(&w[..p])? == rho(&w)?;
        out.get("rho inductive law").record(ok, || format!("trial {trial}: w = {w:?}"));
    }
    for m in 1..=n.max(5) {
        for (pi, sign) in permutations(m) {
            let w: Vec<usize> = pi.iter().map(|i| i + 1).collect();
            let ok = rho(&w)? == sign_pow((m * (m - 1) / 2) as i64) * sign;
            out.get("rho = (-1)^{n(n-1)/2} sgn").record(ok, || format!("w = {w:?}"));
        }
    }
    Ok(out.0)
}
