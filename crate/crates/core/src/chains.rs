//! Chevalley–Eilenberg chains `M ⊗ Λ^r 𝔤` and their differentials.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use num_traits::Zero;

use crate::laurent::Exponent;
use crate::liealg::LieAlgebra;
use crate::opalg::{LatticeOperator, OpError};
use crate::rational::{q, sign_pow, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("module action undefined: {0}")]
    ModuleActionUndefined(String),
    #[error("module action failed: {0}")]
    ActionFailed(String),
    #[error(transparent)]
    Operator(#[from] OpError),
}

/// Finite rational combination of generators.
pub type LinComb<G> = BTreeMap<G, Q>;

pub fn lin_add<G: Ord + Clone>(acc: &mut LinComb<G>, g: G, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(g.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&g);
    }
}

/// A Lie algebra presented by a spanning set of generators.
pub trait LieBasis {
    type Gen: Ord + Clone + Debug;
    fn bracket(&self, a: &Self::Gen, b: &Self::Gen) -> LinComb<Self::Gen>;
}

/// A module over the Lie algebra spanned by `G`.
pub trait Module<G> {
    type Elem: Clone + Debug;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, m: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem;
    /// `g · m`
    fn act(&self, g: &G, m: &Self::Elem) -> Result<Self::Elem, ChainError>;
}

/// Sorts `tail` in place and returns the permutation sign, or `None` if an
/// entry repeats.
pub fn sort_with_sign<G: Ord>(tail: &mut [G]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..tail.len() {
        let mut j = i;
        while j > 0 && tail[j - 1] > tail[j] {
            tail.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if tail.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Formal sum of `head ⊗ f_1 ∧ … ∧ f_r` with canonically sorted tails.
#[derive(Debug, Clone)]
pub struct Chain<G, E> {
    terms: BTreeMap<Vec<G>, E>,
}

impl<G: Ord + Clone + Debug, E: Clone + Debug> Chain<G, E> {
    pub fn new() -> Self {
        Chain { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<G>, &E)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push<M: Module<G, Elem = E>>(&mut self, module: &M, head: E, mut tail: Vec<G>) {
        let Some(sign) = sort_with_sign(&mut tail) else {
            return;
        };
        let head = if sign < 0 { module.scale(&head, &q(-1)) } else { head };
        let merged = match self.terms.remove(&tail) {
            Some(old) => module.add(&old, &head),
            None => head,
        };
        if !module.is_zero(&merged) {
            self.terms.insert(tail, merged);
        }
    }

    pub fn sub<M: Module<G, Elem = E>>(&self, module: &M, other: &Self) -> Self {
        let mut out = self.clone();
        for (tail, head) in &other.terms {
            out.push(module, module.scale(head, &q(-1)), tail.clone());
        }
        out
    }

    pub fn is_zero<M: Module<G, Elem = E>>(&self, module: &M) -> bool {
        self.terms.values().all(|h| module.is_zero(h))
    }
}

impl<G: Ord + Clone + Debug, E: Clone + Debug> Default for Chain<G, E> {
    fn default() -> Self {
        Self::new()
    }
}

/// Terms of `δ^[1](f_0 ⊗ f_1 ∧ … ∧ f_r)`: for each 1-based position `i`,
/// the head `(-1)^i [f_0, f_i] = (-1)^{i+1} f_i · f_0`.
pub fn delta1_parts<G, M: Module<G>>(module: &M, head: &M::Elem, tail: &[G]) -> Result<Vec<(usize, M::Elem)>, ChainError> {
    let mut out = Vec::with_capacity(tail.len());
    for (k, g) in tail.iter().enumerate() {
        let i = k + 1;
        let acted = module.act(g, head)?;
        out.push((i, module.scale(&acted, &q(sign_pow(i as i64 + 1)))));
    }
    Ok(out)
}

/// Position pairs `i < j` (1-based) of `δ^[2]` with their signs `(-1)^{i+j+1}`.
pub fn delta2_signs(r: usize) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    for i in 1..=r {
        for j in i + 1..=r {
            out.push((i, j, sign_pow((i + j + 1) as i64)));
        }
    }
    out
}

fn omit<G: Clone>(tail: &[G], skip: &[usize]) -> Vec<G> {
    tail.iter().enumerate().filter(|(k, _)| !skip.contains(&(k + 1))).map(|(_, g)| g.clone()).collect()
}

/// `δ = δ^[1] + δ^[2]` on `C(M)_r`.
pub fn ce_diff<L: LieBasis, M: Module<L::Gen>>(alg: &L, module: &M, chain: &Chain<L::Gen, M::Elem>) -> Result<Chain<L::Gen, M::Elem>, ChainError> {
    let mut out = Chain::new();
    for (tail, head) in chain.terms() {
        for (i, h) in delta1_parts(module, head, tail)? {
            out.push(module, h, omit(tail, &[i]));
        }
        for (i, j, sign) in delta2_signs(tail.len()) {
            let rest = omit(tail, &[i, j]);
            for (g, c) in alg.bracket(&tail[i - 1], &tail[j - 1]) {
                let mut t = vec![g];
                t.extend(rest.iter().cloned());
                out.push(module, module.scale(head, &(c * q(sign))), t);
            }
        }
    }
    Ok(out)
}

/// Linear combination of sorted wedges `f_0 ∧ … ∧ f_r`.
pub type Wedge<G> = LinComb<Vec<G>>;

pub fn wedge_push<G: Ord + Clone>(w: &mut Wedge<G>, mut factors: Vec<G>, c: Q) {
    if let Some(sign) = sort_with_sign(&mut factors) {
        lin_add(w, factors, c * q(sign));
    }
}

/// `δ(f_0 ∧ … ∧ f_r) = Σ_{0≤i<j≤r} (-1)^{i+j} [f_i, f_j] ∧ f_0 ∧ … f̂_i … f̂_j … ∧ f_r`.
pub fn ce_diff_trivial<L: LieBasis>(alg: &L, w: &Wedge<L::Gen>) -> Wedge<L::Gen> {
    let mut out = Wedge::new();
    for (factors, c) in w {
        let r = factors.len();
        for i in 0..r {
            for j in i + 1..r {
                let sign = q(sign_pow((i + j) as i64));
                let rest: Vec<L::Gen> =
                    factors.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, g)| g.clone()).collect();
                for (g, b) in alg.bracket(&factors[i], &factors[j]) {
                    let mut t = vec![g];
                    t.extend(rest.iter().cloned());
                    wedge_push(&mut out, t, c * &sign * b);
                }
            }
        }
    }
    out
}

/// `I(f_0 ⊗ f_1 ∧ … ∧ f_r) = (-1)^r f_0 ∧ f_1 ∧ … ∧ f_r` for adjoint chains.
pub fn map_i<G: Ord + Clone + Debug>(chain: &Chain<G, LinComb<G>>) -> Wedge<G> {
    let mut out = Wedge::new();
    for (tail, head) in chain.terms() {
        let sign = q(sign_pow(tail.len() as i64));
        for (g, c) in head {
            let mut t = vec![g.clone()];
            t.extend(tail.iter().cloned());
            wedge_push(&mut out, t, c * &sign);
        }
    }
    out
}

/// The adjoint module of any [`LieBasis`].
pub struct Adjoint<'a, L>(pub &'a L);

impl<L: LieBasis> Module<L::Gen> for Adjoint<'_, L> {
    type Elem = LinComb<L::Gen>;

    fn zero(&self) -> Self::Elem {
        LinComb::new()
    }

    fn is_zero(&self, m: &Self::Elem) -> bool {
        m.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (g, c) in b {
            lin_add(&mut out, g.clone(), c.clone());
        }
        out
    }

    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem {
        if c.is_zero() {
            return LinComb::new();
        }
        a.iter().map(|(g, x)| (g.clone(), x * c)).collect()
    }

    fn act(&self, g: &L::Gen, m: &Self::Elem) -> Result<Self::Elem, ChainError> {
        let mut out = LinComb::new();
        for (h, c) in m {
            for (k, b) in self.0.bracket(g, h) {
                lin_add(&mut out, k, c * b);
            }
        }
        Ok(out)
    }
}

impl LieBasis for LieAlgebra {
    type Gen = usize;

    fn bracket(&self, a: &usize, b: &usize) -> LinComb<usize> {
        let mut out = LinComb::new();
        for (k, c) in self.bracket_basis(*a, *b).into_iter().enumerate() {
            lin_add(&mut out, k, c);
        }
        out
    }
}

/// `𝔤[t^±]` spanned by `e_i t^c`.
pub struct MultiloopBasis {
    pub algebra: Arc<LieAlgebra>,
}

impl LieBasis for MultiloopBasis {
    type Gen = (usize, Exponent);

    fn bracket(&self, a: &Self::Gen, b: &Self::Gen) -> LinComb<Self::Gen> {
        let exp = &a.1 + &b.1;
        let mut out = LinComb::new();
        for (k, c) in self.algebra.bracket_basis(a.0, b.0).into_iter().enumerate() {
            lin_add(&mut out, (k, exp.clone()), c);
        }
        out
    }
}

/// Abelian `k[t^±]` spanned by monomials.
pub struct ScalarLoopBasis;

impl LieBasis for ScalarLoopBasis {
    type Gen = Exponent;

    fn bracket(&self, _: &Exponent, _: &Exponent) -> LinComb<Exponent> {
        LinComb::new()
    }
}

/// Witt algebra `L_m = t^{m+1} ∂_t`, `[L_a, L_b] = (b - a) L_{a+b}`.
pub struct WittBasis;

impl LieBasis for WittBasis {
    type Gen = i64;

    fn bracket(&self, a: &i64, b: &i64) -> LinComb<i64> {
        let mut out = LinComb::new();
        lin_add(&mut out, a + b, q(b - a));
        out
    }
}

/// Formal Lie words in a fixed list of operators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpGen {
    Base(usize),
    Bracket(Box<OpGen>, Box<OpGen>),
}

/// The Lie subalgebra of operators generated by `ops`, with free formal brackets.
pub struct OperatorFamily {
    pub ops: Vec<LatticeOperator>,
}

impl OperatorFamily {
    pub fn eval(&self, g: &OpGen) -> Result<LatticeOperator, OpError> {
        match g {
            OpGen::Base(i) => Ok(self.ops[*i].clone()),
            OpGen::Bracket(a, b) => self.eval(a)?.commutator(&self.eval(b)?),
        }
    }
}

impl LieBasis for OperatorFamily {
    type Gen = OpGen;

    fn bracket(&self, a: &OpGen, b: &OpGen) -> LinComb<OpGen> {
        let mut out = LinComb::new();
        lin_add(&mut out, OpGen::Bracket(Box::new(a.clone()), Box::new(b.clone())), q(1));
        out
    }
}

/// Operators as a module over an [`OperatorFamily`] by commutators.
pub struct OperatorModule<'a> {
    pub family: &'a OperatorFamily,
    pub n: usize,
    pub d: usize,
}

impl Module<OpGen> for OperatorModule<'_> {
    type Elem = LatticeOperator;

    fn zero(&self) -> LatticeOperator {
        LatticeOperator::zero(self.n, self.d)
    }

    fn is_zero(&self, m: &LatticeOperator) -> bool {
        m.is_zero()
    }

    fn add(&self, a: &LatticeOperator, b: &LatticeOperator) -> LatticeOperator {
        a.add(b).expect("module elements share a shape")
    }

    fn scale(&self, a: &LatticeOperator, c: &Q) -> LatticeOperator {
        a.scale(c)
    }

    fn act(&self, g: &OpGen, m: &LatticeOperator) -> Result<LatticeOperator, ChainError> {
        Ok(self.family.eval(g)?.commutator(m)?)
    }
}
