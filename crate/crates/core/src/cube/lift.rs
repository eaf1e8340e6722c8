use crate::chains::{delta1_parts, delta2_signs, ChainError, Module, OpGen, OperatorFamily};
use crate::combinat::ordered_selections;
use crate::opalg::{Idempotents, LatticeOperator, Sign};
use crate::rational::{q, sign_pow, Q};

use super::{rho, CubeElement, CubeError, SignString, Slot};

/// One summand `θ^{w_1…w_p}` (or its bracket variant) of a lift stage.
/// `omitted` lists the removed wedge factors in removal order, 1-based.
#[derive(Debug, Clone)]
pub struct LiftTerm {
    pub omitted: Vec<usize>,
    pub bracket: Option<(usize, usize)>,
    pub head: CubeElement,
}

/// The element `θ_{p, n+1-p}`: heads in `N^p` tensored with the wedge of the
/// factors not yet omitted.
#[derive(Debug, Clone)]
pub struct LiftState {
    pub p: usize,
    pub q: usize,
    pub terms: Vec<LiftTerm>,
    /// `H` applied to the `δ^[2]` part of the previous stage; all heads vanish.
    pub bracket_terms: Vec<LiftTerm>,
}

impl LiftState {
    pub fn term(&self, omitted: &[usize]) -> Option<&LiftTerm> {
        self.terms.iter().find(|t| t.omitted == omitted)
    }

    /// Sum of all heads, forgetting the wedge tails.
    pub fn total_head(&self) -> Result<CubeElement, CubeError> {
        let first = &self.terms[0].head;
        let mut acc = CubeElement::zero(first.n(), first.d(), first.degree());
        for t in &self.terms {
            acc = acc.add(&t.head)?;
        }
        Ok(acc)
    }
}

struct CubeModule<'a> {
    family: &'a OperatorFamily,
    n: usize,
    d: usize,
    degree: usize,
}

impl Module<OpGen> for CubeModule<'_> {
    type Elem = CubeElement;

    fn zero(&self) -> CubeElement {
        CubeElement::zero(self.n, self.d, self.degree)
    }

    fn is_zero(&self, m: &CubeElement) -> bool {
        m.is_zero()
    }

    fn add(&self, a: &CubeElement, b: &CubeElement) -> CubeElement {
        a.add(b).expect("same shape")
    }

    fn scale(&self, a: &CubeElement, c: &Q) -> CubeElement {
        a.scale(c)
    }

    fn act(&self, g: &OpGen, m: &CubeElement) -> Result<CubeElement, ChainError> {
        let op = self.family.eval(g)?;
        m.commutator_with(&op).map_err(|e| ChainError::ActionFailed(e.to_string()))
    }
}

fn check_shapes(fs: &[LatticeOperator]) -> Result<(usize, usize), CubeError> {
    let f0 = fs.first().ok_or(CubeError::ShapeMismatch)?;
    let (n, d) = (f0.n(), f0.d());
    if fs.len() != n + 1 || fs.iter().any(|f| f.n() != n || f.d() != d) {
        return Err(CubeError::ShapeMismatch);
    }
    Ok((n, d))
}

/// Descends `f_0 ⊗ f_1 ∧ … ∧ f_n` by `θ_{p+1} = H δ θ_p`, starting from
/// `θ_1 = Ĥ f_0`. Returns `θ_1, …, θ_{n+1}`.
pub fn lift_iterative(fs: &[LatticeOperator], idem: &Idempotents) -> Result<Vec<LiftState>, CubeError> {
    let (n, d) = check_shapes(fs)?;
    let family = OperatorFamily { ops: fs.to_vec() };
    let first = LiftTerm { omitted: Vec::new(), bracket: None, head: CubeElement::homotopy_hat(&fs[0], idem)? };
    let mut states = vec![LiftState { p: 1, q: n, terms: vec![first], bracket_terms: Vec::new() }];
    for p in 1..=n {
        let module = CubeModule { family: &family, n, d, degree: p };
        let prev = states.last().expect("nonempty");
        let mut terms = Vec::new();
        let mut bracket_terms = Vec::new();
        for term in &prev.terms {
            let remaining: Vec<usize> = (1..=n).filter(|i| !term.omitted.contains(i)).collect();
            let tail: Vec<OpGen> = remaining.iter().map(|&i| OpGen::Base(i)).collect();
            for (pos, head) in delta1_parts(&module, &term.head, &tail)? {
                let mut omitted = term.omitted.clone();
                omitted.push(remaining[pos - 1]);
                terms.push(LiftTerm { omitted, bracket: None, head: head.homotopy(idem)? });
            }
            for (i, j, sign) in delta2_signs(tail.len()) {
                let head = term.head.scale(&q(sign)).homotopy(idem)?;
                if !head.is_zero() {
                    return Err(CubeError::BracketBranchSurvived(p));
                }
                let bracket = Some((remaining[i - 1], remaining[j - 1]));
                bracket_terms.push(LiftTerm { omitted: term.omitted.clone(), bracket, head });
            }
        }
        states.push(LiftState { p: p + 1, q: n - p, terms, bracket_terms });
    }
    Ok(states)
}

/// Sign `(-1)^{p(p+1)/2}` in front of the closed form, the value the
/// recursion `θ_{p+1} = H δ θ_p` produces from `θ_1 = Ĥ f_0`.
pub fn closed_form_prefactor(p: usize) -> i64 {
    sign_pow((p * (p + 1) / 2) as i64)
}

/// `(-1)^{Σ_{u=1}^{p-1}(u+1)}` with the sum empty for `p ≤ 1`.
pub fn literal_prefactor(p: usize) -> i64 {
    sign_pow((1..p).map(|u| u as i64 + 1).sum())
}

/// `Σ_γ (-1)^γ P_a^{-γ} [f, P_a^γ g]`.
fn conjugated_ad(f: &LatticeOperator, g: &LatticeOperator, axis: usize, idem: &Idempotents) -> Result<LatticeOperator, CubeError> {
    let d = f.d();
    let mut acc = LatticeOperator::zero(f.n(), d);
    for gamma in Sign::BOTH {
        let inner = idem.projector(d, axis, gamma).compose(g)?;
        let term = idem.projector(d, axis, gamma.flip()).compose(&f.commutator(&inner)?)?;
        acc = acc.add(&term.scale(&q(gamma.value())))?;
    }
    Ok(acc)
}

/// The components `θ_{p+1 | γ_1…γ_{n-p} 0…0}^{w_1…w_p}` for every ordered
/// choice of `p` distinct factors, given in closed form.
pub fn lift_closed_form(fs: &[LatticeOperator], p: usize, idem: &Idempotents) -> Result<LiftState, CubeError> {
    let (n, d) = check_shapes(fs)?;
    let mut terms = Vec::new();
    for w in ordered_selections(n, p) {
        let w: Vec<usize> = w.into_iter().map(|i| i + 1).collect();
        let mut core = fs[0].clone();
        // w_1 sits next to f_0 on the last axis, w_p on axis n - p + 1
        for (k, &wi) in w.iter().enumerate() {
            core = conjugated_ad(&fs[wi], &core, n - 1 - k, idem)?;
        }
        let w_sum: i64 = w.iter().map(|&i| i as i64).sum();
        let c = closed_form_prefactor(p) * sign_pow(w_sum) * rho(&w)?;
        let mut head = CubeElement::zero(n, d, p + 1);
        for lead in SignString::all(n - p, 1) {
            let mut op = core.clone();
            for axis in (0..n - p).rev() {
                op = idem.projector(d, axis, lead.0[axis].sign().unwrap()).compose(&op)?;
            }
            let mut slots = lead.0.clone();
            slots.extend(std::iter::repeat_n(Slot::Zero, p));
            head.accumulate(SignString(slots), op.scale(&q(c * lead.sign_value())))?;
        }
        terms.push(LiftTerm { omitted: w, bracket: None, head });
    }
    Ok(LiftState { p: p + 1, q: n - p, terms, bracket_terms: Vec::new() })
}

/// Components of the iterative lift that the closed form also specifies.
pub fn closed_form_components(n: usize, p: usize) -> Vec<SignString> {
    SignString::all(n - p, 1)
        .into_iter()
        .map(|lead| {
            let mut slots = lead.0;
            slots.extend(std::iter::repeat_n(Slot::Zero, p));
            SignString(slots)
        })
        .collect()
}
