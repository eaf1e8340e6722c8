//! The cube complex `N^•` with its differential, homotopies and the lift of
//! a tensor `f_0 ⊗ f_1 ∧ … ∧ f_n` down to `N^{n+1}`.

pub mod lift;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::chains::ChainError;
use crate::opalg::{Ideal, Idempotents, LatticeOperator, OpError, Sign};
use crate::rational::{q, sign_pow, Q};

pub use lift::{lift_closed_form, lift_iterative, LiftState, LiftTerm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubeError {
    #[error("component {component} is not in the ideal required on axis {axis}")]
    IdealViolation { component: String, axis: usize },
    #[error("sign string {0} does not have degree {1}")]
    DegreeMismatch(String, usize),
    #[error("degree {degree} is outside 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("index {0} repeats")]
    RepeatedIndex(usize),
    #[error("axis {axis} out of range for {n} variables")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("cube elements of different shape")]
    ShapeMismatch,
    #[error("bracket branch of the lift did not vanish at stage {0}")]
    BracketBranchSurvived(usize),
    #[error("invalid sign string {0:?}")]
    BadSignString(String),
    #[error(transparent)]
    Operator(#[from] OpError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Plus,
    Minus,
    Zero,
}

impl Slot {
    pub fn sign(self) -> Option<Sign> {
        match self {
            Slot::Plus => Some(Sign::Plus),
            Slot::Minus => Some(Sign::Minus),
            Slot::Zero => None,
        }
    }

    pub fn ideal(self) -> Ideal {
        match self {
            Slot::Plus => Ideal::Plus,
            Slot::Minus => Ideal::Minus,
            Slot::Zero => Ideal::Zero,
        }
    }
}

impl From<Sign> for Slot {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => Slot::Plus,
            Sign::Minus => Slot::Minus,
        }
    }
}

/// `s ∈ {+, -, 0}^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignString(pub Vec<Slot>);

impl SignString {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `1 + #{i : s_i = 0}`
    pub fn degree(&self) -> usize {
        1 + self.0.iter().filter(|&&s| s == Slot::Zero).count()
    }

    pub fn with(&self, axis: usize, slot: Slot) -> SignString {
        let mut v = self.0.clone();
        v[axis] = slot;
        SignString(v)
    }

    pub fn zeros_after(&self, axis: usize) -> usize {
        self.0[axis + 1..].iter().filter(|&&s| s == Slot::Zero).count()
    }

    /// `(-1)^{s_1 + ⋯ + s_n}` over the signed slots.
    pub fn sign_value(&self) -> i64 {
        self.0.iter().filter_map(|s| s.sign()).map(Sign::value).product()
    }

    /// All strings of length `n` and the given degree.
    pub fn all(n: usize, degree: usize) -> Vec<SignString> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<Slot>| {
                    [Slot::Plus, Slot::Minus, Slot::Zero].into_iter().map(move |s| {
                        let mut v = p.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(SignString).filter(|s| s.degree() == degree).collect()
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Slot::Plus => "+",
                Slot::Minus => "-",
                Slot::Zero => "0",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SignString {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self, CubeError> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Slot::Plus),
                '-' => Ok(Slot::Minus),
                '0' => Ok(Slot::Zero),
                _ => Err(CubeError::BadSignString(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignString)
    }
}

/// `ρ(w) = (-1)^{#{j < k : w_j < w_k}}`.
pub fn rho(w: &[usize]) -> Result<i64, CubeError> {
    let mut ascending = 0;
    for k in 0..w.len() {
        for j in 0..k {
            if w[j] == w[k] {
                return Err(CubeError::RepeatedIndex(w[k]));
            }
            if w[j] < w[k] {
                ascending += 1;
            }
        }
    }
    Ok(sign_pow(ascending))
}

/// An element of `N^p`: one operator per sign string of degree `p`, each in
/// `I_1^{s_1} ∩ ⋯ ∩ I_n^{s_n}`. Degree `n + 2` is allowed and always zero.
#[derive(Clone)]
pub struct CubeElement {
    n: usize,
    d: usize,
    degree: usize,
    comps: BTreeMap<SignString, LatticeOperator>,
}

impl CubeElement {
    pub fn zero(n: usize, d: usize, degree: usize) -> Self {
        CubeElement { n, d, degree, comps: BTreeMap::new() }
    }

    pub fn from_components(
        n: usize,
        d: usize,
        degree: usize,
        comps: impl IntoIterator<Item = (SignString, LatticeOperator)>,
    ) -> Result<Self, CubeError> {
        let mut out = Self::zero(n, d, degree);
        for (s, op) in comps {
            out.accumulate(s, op)?;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> impl Iterator<Item = (&SignString, &LatticeOperator)> {
        self.comps.iter()
    }

    pub fn get(&self, s: &SignString) -> LatticeOperator {
        self.comps.get(s).cloned().unwrap_or_else(|| LatticeOperator::zero(self.n, self.d))
    }

    /// Adds `op` into component `s`, checking degree and ideal membership.
    pub fn accumulate(&mut self, s: SignString, op: LatticeOperator) -> Result<(), CubeError> {
        if s.n() != self.n || s.degree() != self.degree {
            return Err(CubeError::DegreeMismatch(s.to_string(), self.degree));
        }
        if op.n() != self.n || op.d() != self.d {
            return Err(CubeError::ShapeMismatch);
        }
        for (axis, slot) in s.0.iter().enumerate() {
            if !op.in_ideal(axis, slot.ideal()) {
                return Err(CubeError::IdealViolation { component: s.to_string(), axis });
            }
        }
        let sum = match self.comps.remove(&s) {
            Some(old) => old.add(&op)?,
            None => op,
        };
        if sum.num_atoms() > 0 {
            self.comps.insert(s, sum);
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<(), CubeError> {
        if self.n != other.n || self.d != other.d || self.degree != other.degree {
            return Err(CubeError::ShapeMismatch);
        }
        Ok(())
    }

    fn map_components(&self, f: impl Fn(&LatticeOperator) -> Result<LatticeOperator, OpError>) -> Result<Self, CubeError> {
        let mut out = Self::zero(self.n, self.d, self.degree);
        for (s, op) in &self.comps {
            out.accumulate(s.clone(), f(op)?)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, CubeError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (s, op) in &other.comps {
            out.accumulate(s.clone(), op.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CubeError> {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map_components(|op| Ok(op.scale(c))).expect("scaling preserves ideals")
    }

    /// `g ∘ f_s` on every component.
    pub fn left_mul(&self, g: &LatticeOperator) -> Result<Self, CubeError> {
        self.map_components(|op| g.compose(op))
    }

    /// `[g, f_s]` on every component.
    pub fn commutator_with(&self, g: &LatticeOperator) -> Result<Self, CubeError> {
        self.map_components(|op| g.commutator(op))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(LatticeOperator::is_zero)
    }

    fn require_axis(&self, axis: usize) -> Result<(), CubeError> {
        if axis >= self.n {
            return Err(CubeError::AxisOutOfRange { axis, n: self.n });
        }
        Ok(())
    }

    /// `∂_i : N^p → N^{p-1}` for `p ≥ 2`.
    pub fn boundary_i(&self, axis: usize) -> Result<Self, CubeError> {
        self.require_axis(axis)?;
        if self.degree < 2 {
            return Err(CubeError::DegreeOutOfRange { degree: self.degree - 1, max: self.n + 1 });
        }
        let mut out = Self::zero(self.n, self.d, self.degree - 1);
        for (s, op) in &self.comps {
            if s.0[axis] != Slot::Zero {
                continue;
            }
            let c = q(sign_pow(s.zeros_after(axis) as i64));
            for sign in Sign::BOTH {
                out.accumulate(s.with(axis, sign.into()), op.scale(&c))?;
            }
        }
        Ok(out)
    }

    /// `∂ = Σ_i ∂_i`, computed from the explicit component formula.
    pub fn boundary(&self) -> Result<Self, CubeError> {
        if self.degree < 2 {
            return Err(CubeError::DegreeOutOfRange { degree: self.degree - 1, max: self.n + 1 });
        }
        let mut out = Self::zero(self.n, self.d, self.degree - 1);
        for s in SignString::all(self.n, self.degree - 1) {
            let mut acc = LatticeOperator::zero(self.n, self.d);
            for (axis, slot) in s.0.iter().enumerate() {
                if *slot == Slot::Zero {
                    continue;
                }
                let c = q(sign_pow(s.zeros_after(axis) as i64));
                acc = acc.add(&self.get(&s.with(axis, Slot::Zero)).scale(&c))?;
            }
            out.accumulate(s, acc)?;
        }
        Ok(out)
    }

    /// `∂̂ f = Σ_{s ∈ {±}^n} (-1)^{s_1+⋯+s_n} f_s` on `N^1`.
    pub fn boundary_hat(&self) -> Result<LatticeOperator, CubeError> {
        if self.degree != 1 {
            return Err(CubeError::DegreeOutOfRange { degree: self.degree, max: 1 });
        }
        let mut acc = LatticeOperator::zero(self.n, self.d);
        for (s, op) in &self.comps {
            acc = acc.add(&op.scale(&q(s.sign_value())))?;
        }
        Ok(acc)
    }

    /// `(Ĥ g)_s = (-1)^{s_1+⋯+s_n} P_1^{s_1} ⋯ P_n^{s_n} g`.
    pub fn homotopy_hat(g: &LatticeOperator, idem: &Idempotents) -> Result<Self, CubeError> {
        let (n, d) = (g.n(), g.d());
        let mut out = Self::zero(n, d, 1);
        for s in SignString::all(n, 1) {
            let mut op = g.clone();
            for axis in (0..n).rev() {
                op = idem.projector(d, axis, s.0[axis].sign().unwrap()).compose(&op)?;
            }
            out.accumulate(s.clone(), op.scale(&q(s.sign_value())))?;
        }
        Ok(out)
    }

    /// `(ε_i f)_s = (-1)^{s_i} P_i^{s_i} Σ_γ (-1)^γ f_{…γ…}` for `s_i = ±`, zero otherwise.
    pub fn epsilon(&self, axis: usize, idem: &Idempotents) -> Result<Self, CubeError> {
        self.require_axis(axis)?;
        let mut inner: BTreeMap<SignString, LatticeOperator> = BTreeMap::new();
        for (s, op) in &self.comps {
            let Some(sign) = s.0[axis].sign() else { continue };
            let key = s.with(axis, Slot::Plus);
            let term = op.scale(&q(sign.value()));
            let acc = match inner.remove(&key) {
                Some(a) => a.add(&term)?,
                None => term,
            };
            inner.insert(key, acc);
        }
        let mut out = Self::zero(self.n, self.d, self.degree);
        for (key, sum) in inner {
            for sign in Sign::BOTH {
                let op = idem.projector(self.d, axis, sign).compose(&sum)?.scale(&q(sign.value()));
                out.accumulate(key.with(axis, sign.into()), op)?;
            }
        }
        Ok(out)
    }

    /// `(H_i f)_{…0…} = (-1)^{#{j>i : s_j=0}} Σ_γ P_i^{-γ} f_{…γ…}`.
    pub fn homotopy_i(&self, axis: usize, idem: &Idempotents) -> Result<Self, CubeError> {
        self.require_axis(axis)?;
        let mut out = Self::zero(self.n, self.d, self.degree + 1);
        for (s, op) in &self.comps {
            let Some(sign) = s.0[axis].sign() else { continue };
            let target = s.with(axis, Slot::Zero);
            let c = q(sign_pow(target.zeros_after(axis) as i64));
            let term = idem.projector(self.d, axis, sign.flip()).compose(op)?.scale(&c);
            out.accumulate(target, term)?;
        }
        Ok(out)
    }

    /// `ε_1 ⋯ ε_k f` by repeated application (`k` counts axes from the left).
    pub fn epsilon_prefix(&self, k: usize, idem: &Idempotents) -> Result<Self, CubeError> {
        let mut out = self.clone();
        for axis in (0..k).rev() {
            out = out.epsilon(axis, idem)?;
        }
        Ok(out)
    }

    /// `ε_1 ⋯ ε_k f` from its closed product formula.
    pub fn epsilon_prefix_closed(&self, k: usize, idem: &Idempotents) -> Result<Self, CubeError> {
        let mut out = Self::zero(self.n, self.d, self.degree);
        for s in SignString::all(self.n, self.degree) {
            if s.0[..k].contains(&Slot::Zero) {
                continue;
            }
            let mut acc = LatticeOperator::zero(self.n, self.d);
            for (t, op) in &self.comps {
                if t.0[k..] != s.0[k..] {
                    continue;
                }
                let c: i64 = t.0[..k].iter().map(|x| x.sign().unwrap().value()).product();
                acc = acc.add(&op.scale(&q(c)))?;
            }
            let prefix = SignString(s.0[..k].to_vec());
            for axis in (0..k).rev() {
                acc = idem.projector(self.d, axis, s.0[axis].sign().unwrap()).compose(&acc)?;
            }
            out.accumulate(s, acc.scale(&q(prefix.sign_value())))?;
        }
        Ok(out)
    }

    /// `H = H_1 + ε_1 H_2 + ⋯ + ε_1⋯ε_{n-1} H_n`.
    pub fn homotopy(&self, idem: &Idempotents) -> Result<Self, CubeError> {
        let mut out = Self::zero(self.n, self.d, self.degree + 1);
        for axis in 0..self.n {
            out = out.add(&self.homotopy_i(axis, idem)?.epsilon_prefix(axis, idem)?)?;
        }
        Ok(out)
    }

    /// `H` from the leftmost-zero formula.
    pub fn homotopy_explicit(&self, idem: &Idempotents) -> Result<Self, CubeError> {
        let mut out = Self::zero(self.n, self.d, self.degree + 1);
        for s in SignString::all(self.n, self.degree + 1) {
            let b = s.0.iter().position(|&x| x == Slot::Zero).expect("degree ≥ 2 has a zero");
            let mut acc = LatticeOperator::zero(self.n, self.d);
            for (t, op) in &self.comps {
                if t.0[b + 1..] != s.0[b + 1..] || t.0[b] == Slot::Zero || t.0[..b].contains(&Slot::Zero) {
                    continue;
                }
                let c: i64 = t.0[..b].iter().map(|x| x.sign().unwrap().value()).product();
                let g = t.0[b].sign().unwrap();
                acc = acc.add(&idem.projector(self.d, b, g.flip()).compose(op)?.scale(&q(c)))?;
            }
            for axis in (0..b).rev() {
                acc = idem.projector(self.d, axis, s.0[axis].sign().unwrap()).compose(&acc)?;
            }
            let prefix = SignString(s.0[..b].to_vec());
            let c = sign_pow(s.degree() as i64) * prefix.sign_value();
            out.accumulate(s, acc.scale(&q(c)))?;
        }
        Ok(out)
    }
}

impl PartialEq for CubeElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other).is_ok() && self.sub(other).is_ok_and(|diff| diff.is_zero())
    }
}

impl fmt::Debug for CubeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N^{}", self.degree)?;
        f.debug_map().entries(self.comps.iter()).finish()
    }
}
