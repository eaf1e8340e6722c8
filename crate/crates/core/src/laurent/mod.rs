//! Multivariate Laurent polynomials over the rationals and over a Lie algebra.
//!
//! Variables are addressed by 0-based axis; the textual form `t1, t2, …`
//! maps `t1` to axis 0.

mod parse;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Deref, Neg};
use std::sync::Arc;

use num_traits::Zero;

use crate::combinat::permutations;
use crate::liealg::{same_algebra, LieAlgebra, LieElement};
use crate::rational::{format_q, q, Q};

pub use parse::{parse_poly, ParseError, ParsedPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("coefficients from different Lie algebras")]
    MixedAlgebras,
    #[error("axis {axis} out of range for {n} variables")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("expected {expected} forms, got {got}")]
    Arity { expected: usize, got: usize },
}

/// Exponent vector of `t1^e1 ⋯ tn^en`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, axis: usize) -> Self {
        let mut v = vec![0; n];
        v[axis] = 1;
        Exponent(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Deref for Exponent {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Exponent {
    fn from(v: Vec<i64>) -> Self {
        Exponent(v)
    }
}

impl From<&[i64]> for Exponent {
    fn from(v: &[i64]) -> Self {
        Exponent(v.to_vec())
    }
}

impl Add for &Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }
}

/// Laurent polynomial in canonical form: no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Exponent::zero(n), q(1))
    }

    pub fn monomial(exp: impl Into<Exponent>, coeff: Q) -> Self {
        let exp = exp.into();
        let mut p = Self::zero(exp.n());
        p.add_term(exp, coeff);
        p
    }

    /// The variable `t_{axis+1}`.
    pub fn var(n: usize, axis: usize) -> Self {
        Self::monomial(Exponent::unit(n, axis), q(1))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exponent, Q)>) -> Result<Self, LaurentError> {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            if e.n() != n {
                return Err(LaurentError::DimensionMismatch(n, e.n()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &Exponent) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, exp: Exponent, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(LaurentError::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add(&other.scale(&q(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        LaurentPoly { n: self.n, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// `∂/∂t_{axis+1}`, termwise `λ_i t^{λ - e_i}`.
    pub fn partial(&self, axis: usize) -> Result<Self, LaurentError> {
        if axis >= self.n {
            return Err(LaurentError::AxisOutOfRange { axis, n: self.n });
        }
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[axis] == 0 {
                continue;
            }
            let mut shifted = e.clone();
            shifted.0[axis] -= 1;
            out.add_term(shifted, c * q(e[axis]));
        }
        Ok(out)
    }

    /// Splits into single-term polynomials.
    pub fn monomials(&self) -> impl Iterator<Item = LaurentPoly> + '_ {
        self.terms.iter().map(|(e, c)| LaurentPoly::monomial(e.clone(), c.clone()))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_q(c))?;
            for (axis, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*t{}", axis + 1)?,
                    _ => write!(f, "*t{}^{}", axis + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

/// Coefficient of `t1^-1 ⋯ tn^-1` in `f0 · det(∂f_i/∂t_j)`, the determinant
/// expanded by permutations.
pub fn parshin_oracle(f0: &LaurentPoly, fs: &[LaurentPoly]) -> Result<Q, LaurentError> {
    let n = f0.n();
    if fs.len() != n {
        return Err(LaurentError::Arity { expected: n, got: fs.len() });
    }
    for f in fs {
        f0.check(f)?;
    }
    let mut jac: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
    for f in fs {
        jac.push((0..n).map(|j| f.partial(j)).collect::<Result<_, _>>()?);
    }
    let mut det = LaurentPoly::zero(n);
    for (perm, sign) in permutations(n) {
        let mut prod = LaurentPoly::one(n);
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(&jac[i][j])?;
            if prod.is_zero() {
                break;
            }
        }
        det = det.add(&prod.scale(&q(sign)))?;
    }
    let target = Exponent(vec![-1; n]);
    let mut acc = Q::zero();
    for (a, ca) in f0.terms() {
        let need = Exponent(target.iter().zip(a.iter()).map(|(t, x)| t - x).collect());
        let cj = det.coeff(&need);
        if !cj.is_zero() {
            acc += ca * cj;
        }
    }
    Ok(acc)
}

/// Laurent polynomial with Lie-algebra coefficients, `Σ Y_c t^c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLaurent {
    n: usize,
    algebra: Arc<LieAlgebra>,
    terms: BTreeMap<Exponent, Vec<Q>>,
}

impl GLaurent {
    pub fn zero(n: usize, algebra: Arc<LieAlgebra>) -> Self {
        GLaurent { n, algebra, terms: BTreeMap::new() }
    }

    pub fn monomial(y: &LieElement, exp: impl Into<Exponent>) -> Self {
        let exp = exp.into();
        let mut g = Self::zero(exp.n(), Arc::clone(y.algebra()));
        g.add_term(exp, y.coeffs());
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, LieElement)> {
        self.terms
            .iter()
            .map(|(e, v)| (e, LieElement::new(Arc::clone(&self.algebra), v.clone()).expect("stored vectors have algebra dimension")))
    }

    pub fn coeff(&self, exp: &Exponent) -> Option<LieElement> {
        self.terms.get(exp).map(|v| LieElement::new(Arc::clone(&self.algebra), v.clone()).expect("dimension"))
    }

    fn add_term(&mut self, exp: Exponent, v: &[Q]) {
        let d = self.algebra.dim();
        let slot = self.terms.entry(exp.clone()).or_insert_with(|| vec![Q::zero(); d]);
        for (s, x) in slot.iter_mut().zip(v) {
            *s += x;
        }
        if slot.iter().all(Zero::is_zero) {
            self.terms.remove(&exp);
        }
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.n != other.n {
            return Err(LaurentError::DimensionMismatch(self.n, other.n));
        }
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(LaurentError::MixedAlgebras);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.n, Arc::clone(&self.algebra));
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            let scaled: Vec<Q> = v.iter().map(|x| x * c).collect();
            out.add_term(e.clone(), &scaled);
        }
        out
    }

    /// `[Y t^a, Z t^b] = [Y, Z] t^{a+b}`, extended bilinearly.
    pub fn bracket(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = Self::zero(self.n, Arc::clone(&self.algebra));
        for (a, y) in &self.terms {
            for (b, z) in &other.terms {
                let v = self.algebra.bracket_vec(y, z);
                if v.iter().any(|x| !x.is_zero()) {
                    out.add_term(a + b, &v);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn mono(e: &[i64], c: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, q(c))
    }

    #[test]
    fn difference_of_squares() {
        let a = mono(&[1], 1).add(&mono(&[-1], 1)).unwrap();
        let b = mono(&[1], 1).sub(&mono(&[-1], 1)).unwrap();
        let expected = mono(&[2], 1).sub(&mono(&[-2], 1)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn times_zero_is_empty() {
        let p = mono(&[3, -1], 5);
        let z = p.mul(&LaurentPoly::zero(2)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        assert!(p.scale(&q(0)).is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(mono(&[1], 1).add(&mono(&[1, 0], 1)), Err(LaurentError::DimensionMismatch(1, 2)));
    }

    #[test]
    fn partials() {
        assert_eq!(mono(&[3], 1).partial(0).unwrap(), mono(&[2], 3));
        assert_eq!(mono(&[-1, 1], 1).partial(0).unwrap(), mono(&[-2, 1], -1));
        assert!(mono(&[5, 0], 1).partial(1).unwrap().is_zero());
        assert!(mono(&[5], 1).partial(1).is_err());
    }

    #[test]
    fn oracle_examples() {
        let alpha = frac(3, 7);
        let f0 = LaurentPoly::monomial(vec![-1], alpha.clone());
        assert_eq!(parshin_oracle(&f0, &[mono(&[1], 1)]).unwrap(), alpha);
        assert_eq!(parshin_oracle(&mono(&[-1, -1], 1), &[mono(&[1, 0], 1), mono(&[0, 1], 1)]).unwrap(), q(1));
        assert_eq!(parshin_oracle(&mono(&[-2, -3], 1), &[mono(&[1, 1], 1), mono(&[1, 2], 1)]).unwrap(), q(1));
    }

    #[test]
    fn oracle_of_exact_form_vanishes() {
        let f1 = mono(&[3], 2).add(&mono(&[-4], 1)).unwrap();
        assert_eq!(parshin_oracle(&LaurentPoly::one(1), &[f1]).unwrap(), q(0));
    }

    #[test]
    fn loop_bracket() {
        let g = Arc::new(LieAlgebra::sl2());
        let e = GLaurent::monomial(&LieElement::named(&g, "E").unwrap(), vec![1]);
        let f = GLaurent::monomial(&LieElement::named(&g, "F").unwrap(), vec![-1]);
        let h = GLaurent::monomial(&LieElement::named(&g, "H").unwrap(), vec![0]);
        assert_eq!(e.bracket(&f).unwrap(), h);
    }
}
