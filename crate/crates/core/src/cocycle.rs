//! The Tate cocycle on Lie algebras of lattice operators: scalar loops,
//! multiloop algebras and vector fields on the circle.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::chains::{ce_diff, ChainError, ce_diff_trivial, wedge_push, Adjoint, Chain, LieBasis, LinComb, MultiloopBasis, ScalarLoopBasis, WittBasis, Wedge};
use crate::combinat::permutations;
use crate::laurent::{Exponent, GLaurent, LaurentPoly};
use crate::liealg::{killing_nform, same_algebra, LieAlgebra, LieElement, LieError};
use crate::matrix::QMatrix;
use crate::opalg::{Idempotents, LatticeOperator, OpError};
use crate::random::{exponent, prng, Prng};
use crate::rational::{format_q, q, sign_pow, QStr, Q};
use crate::residue::{raw_sum, ResidueError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error("the Lie algebra has a nontrivial centre")]
    NotCentreless,
    #[error("entries mix flavors")]
    MixedFlavors,
    #[error("entries come from different Lie algebras")]
    MixedAlgebras,
    #[error("expected {expected} entries, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("entries disagree on the number of variables")]
    DimensionMismatch,
    #[error("exponent matrix must be (n+1) x n")]
    ShapeMismatch,
    #[error("flavor {0:?} is only available for n = 1")]
    UnsupportedFlavor(Flavor),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Operator(#[from] OpError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Multiloop,
    Scalar,
    #[serde(rename = "vectorfield")]
    VectorField,
}

/// `coeff · t^s ∂_{t_axis}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFieldTerm {
    pub coeff: Q,
    pub s: Exponent,
    pub axis: usize,
}

/// `L_m = t^{m+1} ∂_t`.
pub fn witt(m: i64) -> Vec<VectorFieldTerm> {
    vec![VectorFieldTerm { coeff: q(1), s: Exponent(vec![m + 1]), axis: 0 }]
}

#[derive(Debug, Clone)]
pub enum CocycleInput {
    Multiloop(Vec<GLaurent>),
    Scalar(Vec<LaurentPoly>),
    VectorField(Vec<Vec<VectorFieldTerm>>),
}

impl CocycleInput {
    pub fn flavor(&self) -> Flavor {
        match self {
            CocycleInput::Multiloop(_) => Flavor::Multiloop,
            CocycleInput::Scalar(_) => Flavor::Scalar,
            CocycleInput::VectorField(_) => Flavor::VectorField,
        }
    }

    fn len(&self) -> usize {
        match self {
            CocycleInput::Multiloop(v) => v.len(),
            CocycleInput::Scalar(v) => v.len(),
            CocycleInput::VectorField(v) => v.len(),
        }
    }

    /// Number of variables, taken from the entries.
    pub fn n(&self) -> usize {
        match self {
            CocycleInput::Multiloop(v) => v.first().map_or(0, GLaurent::n),
            CocycleInput::Scalar(v) => v.first().map_or(0, LaurentPoly::n),
            CocycleInput::VectorField(v) => v.iter().flatten().next().map_or(1, |t| t.s.n()),
        }
    }

    /// The operator images `f_0, …, f_n`.
    pub fn operators(&self) -> Result<Vec<LatticeOperator>, CocycleError> {
        let n = self.n();
        if self.len() != n + 1 {
            return Err(CocycleError::Arity { expected: n + 1, got: self.len() });
        }
        match self {
            CocycleInput::Multiloop(v) => {
                let alg = v[0].algebra();
                if v.iter().any(|g| !same_algebra(g.algebra(), alg)) {
                    return Err(CocycleError::MixedAlgebras);
                }
                if v.iter().any(|g| g.n() != n) {
                    return Err(CocycleError::DimensionMismatch);
                }
                Ok(v.iter().map(LatticeOperator::mul_lie).collect())
            }
            CocycleInput::Scalar(v) => {
                if v.iter().any(|g| g.n() != n) {
                    return Err(CocycleError::DimensionMismatch);
                }
                Ok(v.iter().map(LatticeOperator::mul_scalar).collect())
            }
            CocycleInput::VectorField(v) => {
                if n != 1 {
                    return Err(CocycleError::UnsupportedFlavor(Flavor::VectorField));
                }
                v.iter().map(|terms| vector_field_operator(terms, n)).collect()
            }
        }
    }
}

fn vector_field_operator(terms: &[VectorFieldTerm], n: usize) -> Result<LatticeOperator, CocycleError> {
    let mut op = LatticeOperator::zero(n, 1);
    for t in terms {
        if t.s.n() != n {
            return Err(CocycleError::DimensionMismatch);
        }
        op = op.add(&LatticeOperator::derivation(&t.s, t.axis)?.scale(&t.coeff))?;
    }
    Ok(op)
}

/// `φ(f_0 ∧ f_1 ∧ … ∧ f_n)`: the raw trace sum of the operator images.
pub fn phi(inp: &CocycleInput) -> Result<Q, CocycleError> {
    phi_with(inp, &Idempotents::standard(inp.n()))
}

pub fn phi_with(inp: &CocycleInput, idem: &Idempotents) -> Result<Q, CocycleError> {
    Ok(raw_sum(&inp.operators()?, idem)?)
}

/// `(-1)^n Σ_π sgn(π) B(Y_{π(1)}, …, Y_{π(n)}, Y_0) Π_i c_{π(i),i}` when every
/// column of `c` sums to zero, else `0`.
pub fn phi_closed_form(ys: &[LieElement], c: &[Vec<i64>]) -> Result<Q, CocycleError> {
    let n = ys.len().checked_sub(1).ok_or(CocycleError::Arity { expected: 1, got: 0 })?;
    if c.len() != n + 1 || c.iter().any(|r| r.len() != n) {
        return Err(CocycleError::ShapeMismatch);
    }
    if !ys[0].algebra().is_centreless() {
        return Err(CocycleError::NotCentreless);
    }
    if (0..n).any(|j| c.iter().map(|r| r[j]).sum::<i64>() != 0) {
        return Ok(Q::zero());
    }
    let mut total = Q::zero();
    for (pi, sign) in permutations(n) {
        let mut args: Vec<LieElement> = pi.iter().map(|&k| ys[k + 1].clone()).collect();
        args.push(ys[0].clone());
        let prod: i64 = (0..n).map(|i| c[pi[i] + 1][i]).product();
        if prod == 0 {
            continue;
        }
        total += killing_nform(&args)? * q(sign * prod);
    }
    Ok(total * q(sign_pow(n as i64)))
}

/// `m ↦ φ(L_m ∧ L_{-m})`.
pub fn virasoro_table(ms: impl IntoIterator<Item = i64>) -> Result<Vec<(i64, Q)>, CocycleError> {
    ms.into_iter().map(|m| Ok((m, phi(&CocycleInput::VectorField(vec![witt(m), witt(-m)]))?))).collect()
}

/// A nonzero value found by a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub trial: usize,
    pub input: String,
    pub value: QStr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub flavor: Flavor,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// `φ ∘ δ` evaluated through the lift `g_0 ⊗ g_1 ∧ … ∧ g_{n+1}` of each boundary.
    pub nonzero: Vec<Finding>,
    /// `Alt φ ∘ δ` on the same wedges. Diagnostic only.
    pub alternating_nonzero: Vec<Finding>,
    pub passed: bool,
}

/// `(1/(n+1)) Σ_k (-1)^k φ(f_k; f_0, …, f̂_k, …, f_n)`, the alternating
/// extension of `φ` to wedges with no distinguished slot.
pub fn phi_alternating(ops: &[LatticeOperator], idem: &Idempotents) -> Result<Q, CocycleError> {
    let mut total = Q::zero();
    for k in 0..ops.len() {
        let mut args = vec![ops[k].clone()];
        args.extend(ops.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, o)| o.clone()));
        total += raw_sum(&args, idem)? * q(sign_pow(k as i64));
    }
    Ok(total / q(ops.len() as i64))
}

trait Sampler {
    type B: LieBasis;
    fn basis(&self) -> &Self::B;
    fn draw(&self, rng: &mut Prng, count: usize) -> Vec<<Self::B as LieBasis>::Gen>;
    fn embed(&self, g: &<Self::B as LieBasis>::Gen) -> LatticeOperator;
}

struct MultiloopSampler {
    basis: MultiloopBasis,
    n: usize,
    bound: i64,
}

impl Sampler for MultiloopSampler {
    type B = MultiloopBasis;

    fn basis(&self) -> &MultiloopBasis {
        &self.basis
    }

    fn draw(&self, rng: &mut Prng, count: usize) -> Vec<(usize, Exponent)> {
        let dim = self.basis.algebra.dim();
        let exps = balanced_exponents(rng, self.n, self.bound, count);
        exps.into_iter().map(|e| (rng.gen_range(0..dim), e)).collect()
    }

    fn embed(&self, g: &(usize, Exponent)) -> LatticeOperator {
        LatticeOperator::shift_matrix(g.1.clone(), self.basis.algebra.ad_basis(g.0))
    }
}

struct ScalarSampler {
    n: usize,
    bound: i64,
}

impl Sampler for ScalarSampler {
    type B = ScalarLoopBasis;

    fn basis(&self) -> &ScalarLoopBasis {
        &ScalarLoopBasis
    }

    fn draw(&self, rng: &mut Prng, count: usize) -> Vec<Exponent> {
        balanced_exponents(rng, self.n, self.bound, count)
    }

    fn embed(&self, g: &Exponent) -> LatticeOperator {
        LatticeOperator::shift_matrix(g.clone(), QMatrix::identity(1))
    }
}

struct WittSampler {
    bound: i64,
}

impl Sampler for WittSampler {
    type B = WittBasis;

    fn basis(&self) -> &WittBasis {
        &WittBasis
    }

    fn draw(&self, rng: &mut Prng, count: usize) -> Vec<i64> {
        balanced_exponents(rng, 1, self.bound, count).into_iter().map(|e| e.0[0]).collect()
    }

    fn embed(&self, m: &i64) -> LatticeOperator {
        LatticeOperator::derivation(&Exponent(vec![m + 1]), 0).expect("axis 0 exists")
    }
}

/// `count` exponents in `[-bound, bound]^n`; the last is chosen so that the
/// total is zero, which is the only case where the cocycle can be nonzero.
fn balanced_exponents(rng: &mut Prng, n: usize, bound: i64, count: usize) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = (0..count - 1).map(|_| exponent(rng, n, bound)).collect();
    let mut last = Exponent::zero(n);
    for e in &out {
        last = &last + &(-e);
    }
    out.push(last);
    out
}

fn run_verify<S: Sampler>(sampler: &S, flavor: Flavor, n: usize, trials: usize, seed: u64) -> Result<CocycleReport, CocycleError> {
    let idem = Idempotents::standard(n);
    let mut rng = prng(seed);
    let mut nonzero = Vec::new();
    let mut alternating_nonzero = Vec::new();
    let basis = sampler.basis();
    for trial in 0..trials {
        let gens = sampler.draw(&mut rng, n + 2);
        let input = format!("{gens:?}");

        let mut w = Wedge::new();
        wedge_push(&mut w, gens.clone(), q(1));
        let mut value = Q::zero();
        for (factors, c) in ce_diff_trivial(basis, &w) {
            let ops: Vec<LatticeOperator> = factors.iter().map(|g| sampler.embed(g)).collect();
            value += phi_alternating(&ops, &idem)? * c;
        }
        if !value.is_zero() {
            alternating_nonzero.push(Finding { trial, input: input.clone(), value: QStr(value) });
        }

        let adj = Adjoint(basis);
        let mut chain: Chain<_, LinComb<_>> = Chain::new();
        chain.push(&adj, LinComb::from([(gens[0].clone(), q(1))]), gens[1..].to_vec());
        let mut tvalue = Q::zero();
        for (tail, head) in ce_diff(basis, &adj, &chain)?.terms() {
            for (g, c) in head {
                let mut ops = vec![sampler.embed(g)];
                ops.extend(tail.iter().map(|t| sampler.embed(t)));
                tvalue += raw_sum(&ops, &idem)? * c;
            }
        }
        if !tvalue.is_zero() {
            nonzero.push(Finding { trial, input, value: QStr(tvalue) });
        }
    }
    Ok(CocycleReport { flavor, n, trials, seed, passed: nonzero.is_empty(), nonzero, alternating_nonzero })
}

/// Evaluates `φ` on boundaries `δ(g_0 ∧ … ∧ g_{n+1})` of random basis wedges,
/// reading each boundary through its lift to `g ⊗ Λ^{n+1} g`.
pub fn verify_cocycle(
    flavor: Flavor,
    algebra: Option<Arc<LieAlgebra>>,
    n: usize,
    degree_bound: i64,
    trials: usize,
    seed: u64,
) -> Result<CocycleReport, CocycleError> {
    match flavor {
        Flavor::Multiloop => {
            let algebra = algebra.unwrap_or_else(|| Arc::new(LieAlgebra::sl2()));
            run_verify(&MultiloopSampler { basis: MultiloopBasis { algebra }, n, bound: degree_bound }, flavor, n, trials, seed)
        }
        Flavor::Scalar => run_verify(&ScalarSampler { n, bound: degree_bound }, flavor, n, trials, seed),
        Flavor::VectorField => {
            if n != 1 {
                return Err(CocycleError::UnsupportedFlavor(flavor));
            }
            run_verify(&WittSampler { bound: degree_bound }, flavor, n, trials, seed)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mismatches: Vec<Finding>,
    pub passed: bool,
}

/// Random basis monomials `Y_i t^{c_i}`: operator `φ` against the closed form.
/// With `balanced`, column sums are forced to zero.
pub fn operator_vs_closed_form(algebra: &Arc<LieAlgebra>, n: usize, trials: usize, seed: u64, balanced: bool) -> Result<ComparisonReport, CocycleError> {
    let mut rng = prng(seed);
    let mut mismatches = Vec::new();
    for trial in 0..trials {
        let c = crate::random::exponent_matrix(&mut rng, n, 3, balanced);
        let ys: Vec<LieElement> = (0..=n).map(|_| LieElement::basis(algebra, rng.gen_range(0..algebra.dim()))).collect();
        let entries = ys.iter().zip(&c).map(|(y, e)| GLaurent::monomial(y, e.clone())).collect();
        let op_value = phi(&CocycleInput::Multiloop(entries))?;
        let closed = phi_closed_form(&ys, &c)?;
        if op_value != closed {
            mismatches.push(Finding {
                trial,
                input: format!("{c:?}"),
                value: QStr(op_value - closed),
            });
        }
    }
    Ok(ComparisonReport { n, trials, seed, passed: mismatches.is_empty(), mismatches })
}

impl std::fmt::Display for Finding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "trial {}: {} -> {}", self.trial, self.input, format_q(&self.value.0))
    }
}
