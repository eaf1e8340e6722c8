//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::matrix::QMatrix;
use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("bracket table violates antisymmetry at basis pair ({0}, {1})")]
    AntisymmetryViolation(usize, usize),
    #[error("bracket table violates the Jacobi identity at basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("elements from different Lie algebras")]
    MixedAlgebras,
    #[error("expected {expected} basis names, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown basis element {0:?}")]
    UnknownBasis(String),
    #[error("Lie algebra must have positive dimension")]
    EmptyAlgebra,
}

/// Structure constants: `brackets[(i, j)]` with `i < j` is the coordinate
/// vector of `[e_i, e_j]`; missing pairs bracket to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<Q>>,
}

impl LieAlgebra {
    /// Builds and validates an algebra from a raw bracket table. Entries may
    /// name `(i, j)` in either order; when both orders are present they must
    /// be negatives of each other, and `(i, i)` entries must vanish.
    pub fn from_table<I>(names: Vec<String>, entries: I) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Q)>)>,
    {
        let dim = names.len();
        if dim == 0 {
            return Err(LieError::EmptyAlgebra);
        }
        let mut full: BTreeMap<(usize, usize), Vec<Q>> = BTreeMap::new();
        for (i, j, coeffs) in entries {
            for &index in [i, j].iter().chain(coeffs.iter().map(|(k, _)| k)) {
                if index >= dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            let slot = full.entry((i, j)).or_insert_with(|| vec![Q::zero(); dim]);
            for (k, c) in coeffs {
                slot[k] += c;
            }
        }
        let mut brackets = BTreeMap::new();
        for i in 0..dim {
            if full.get(&(i, i)).is_some_and(|v| v.iter().any(|c| !c.is_zero())) {
                return Err(LieError::AntisymmetryViolation(i, i));
            }
            for j in (i + 1)..dim {
                let v = match (full.get(&(i, j)), full.get(&(j, i))) {
                    (Some(a), Some(b)) => {
                        if a.iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                            return Err(LieError::AntisymmetryViolation(i, j));
                        }
                        a.clone()
                    }
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.iter().map(|x| -x).collect(),
                    (None, None) => continue,
                };
                if v.iter().any(|c| !c.is_zero()) {
                    brackets.insert((i, j), v);
                }
            }
        }
        let alg = LieAlgebra { names, brackets };
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let d = self.dim();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let ei = self.basis_vector(i);
                    let ej = self.basis_vector(j);
                    let ek = self.basis_vector(k);
                    let a = self.bracket_vec(&ei, &self.bracket_vec(&ej, &ek));
                    let b = self.bracket_vec(&ej, &self.bracket_vec(&ek, &ei));
                    let c = self.bracket_vec(&ek, &self.bracket_vec(&ei, &ej));
                    if (0..d).any(|m| !(&a[m] + &b[m] + &c[m]).is_zero()) {
                        return Err(LieError::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn abelian(d: usize) -> Self {
        let names = (1..=d).map(|i| format!("e{i}")).collect();
        Self::from_table(names, Vec::new()).expect("abelian algebra is valid")
    }

    /// `[e1, e2] = e3`, all other brackets zero.
    pub fn heisenberg3() -> Self {
        let names = vec!["e1".into(), "e2".into(), "e3".into()];
        Self::from_table(names, vec![(0, 1, vec![(2, q(1))])]).expect("heisenberg algebra is valid")
    }

    /// Basis `H, E, F` with `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
    pub fn sl2() -> Self {
        let names = vec!["H".into(), "E".into(), "F".into()];
        let table = vec![(0, 1, vec![(1, q(2))]), (0, 2, vec![(2, q(-2))]), (1, 2, vec![(0, q(1))])];
        Self::from_table(names, table).expect("sl2 is valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_index(&self, name: &str) -> Result<usize, LieError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| LieError::UnknownBasis(name.to_string()))
    }

    /// Stored `i < j` brackets.
    pub fn structure(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Q>)> {
        self.brackets.iter()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = q(1);
        v
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Q> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => vec![Q::zero(); self.dim()],
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_else(|| vec![Q::zero(); self.dim()]),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(|| vec![Q::zero(); self.dim()]),
        }
    }

    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (&(i, j), v) in &self.brackets {
            // [x, y] picks up x_i y_j - x_j y_i on the stored (i, j) bracket
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for k in 0..d {
                out[k] += &c * &v[k];
            }
        }
        out
    }

    /// Matrix of `x ↦ [e_i, x]`.
    pub fn ad_basis(&self, i: usize) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.bracket_basis(i, j);
            for (r, c) in col.into_iter().enumerate() {
                m[(r, j)] = c;
            }
        }
        m
    }

    pub fn ad_vec(&self, y: &[Q]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (i, c) in y.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.ad_basis(i).scale(c);
            }
        }
        m
    }

    /// True iff `ad` is injective, i.e. the stacked `d² × d` system has full column rank.
    pub fn is_centreless(&self) -> bool {
        let d = self.dim();
        let mut stacked = QMatrix::zeros(d * d, d);
        for i in 0..d {
            let ad = self.ad_basis(i);
            for (k, entry) in ad.entries().iter().enumerate() {
                stacked[(k, i)] = entry.clone();
            }
        }
        stacked.rank() == d
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    algebra: Arc<LieAlgebra>,
    coeffs: Vec<Q>,
}

impl LieElement {
    pub fn new(algebra: Arc<LieAlgebra>, coeffs: Vec<Q>) -> Result<Self, LieError> {
        if coeffs.len() != algebra.dim() {
            return Err(LieError::DimensionMismatch { expected: algebra.dim(), got: coeffs.len() });
        }
        Ok(LieElement { algebra, coeffs })
    }

    pub fn basis(algebra: &Arc<LieAlgebra>, i: usize) -> Self {
        LieElement { coeffs: algebra.basis_vector(i), algebra: Arc::clone(algebra) }
    }

    pub fn named(algebra: &Arc<LieAlgebra>, name: &str) -> Result<Self, LieError> {
        Ok(Self::basis(algebra, algebra.basis_index(name)?))
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), LieError> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(LieError::MixedAlgebras)
        }
    }

    pub fn bracket(&self, other: &Self) -> Result<Self, LieError> {
        self.check_same(other)?;
        Ok(LieElement { coeffs: self.algebra.bracket_vec(&self.coeffs, &other.coeffs), algebra: Arc::clone(&self.algebra) })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LieError> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(LieElement { coeffs, algebra: Arc::clone(&self.algebra) })
    }

    pub fn scale(&self, c: &Q) -> Self {
        LieElement { coeffs: self.coeffs.iter().map(|x| x * c).collect(), algebra: Arc::clone(&self.algebra) }
    }

    pub fn ad(&self) -> QMatrix {
        self.algebra.ad_vec(&self.coeffs)
    }
}

pub(crate) fn same_algebra(a: &Arc<LieAlgebra>, b: &Arc<LieAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Generalized Killing form `tr(ad Y0 · ad Y1 ⋯ ad Yn)`.
pub fn killing_nform(ys: &[LieElement]) -> Result<Q, LieError> {
    let Some(first) = ys.first() else {
        return Ok(Q::zero());
    };
    let mut prod = first.ad();
    for y in &ys[1..] {
        first.check_same(y)?;
        prod = &prod * &y.ad();
    }
    Ok(prod.trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::sl2())
    }

    #[test]
    fn antisymmetry_violation_detected() {
        let names = vec!["e1".into(), "e2".into(), "e3".into()];
        let err = LieAlgebra::from_table(names, vec![(0, 1, vec![(2, q(1))]), (1, 0, vec![(2, q(1))])]).unwrap_err();
        assert_eq!(err, LieError::AntisymmetryViolation(0, 1));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [e1,e2]=e1, [e2,e3]=e2, [e1,e3]=e3 is not a Lie bracket
        let names = vec!["a".into(), "b".into(), "c".into()];
        let table = vec![(0, 1, vec![(0, q(1))]), (1, 2, vec![(1, q(1))]), (0, 2, vec![(2, q(1))])];
        assert!(matches!(LieAlgebra::from_table(names, table), Err(LieError::JacobiViolation(..))));
    }

    #[test]
    fn builtins_validate() {
        assert_eq!(LieAlgebra::abelian(3).dim(), 3);
        assert_eq!(LieAlgebra::heisenberg3().dim(), 3);
        assert_eq!(LieAlgebra::sl2().dim(), 3);
    }

    #[test]
    fn ad_of_h_is_diagonal() {
        let g = sl2();
        let h = LieElement::named(&g, "H").unwrap();
        let expected = QMatrix::from_i64_rows(&[vec![0, 0, 0], vec![0, 2, 0], vec![0, 0, -2]]);
        assert_eq!(h.ad(), expected);
        let abelian = Arc::new(LieAlgebra::abelian(3));
        assert!(LieElement::basis(&abelian, 1).ad().is_zero());
    }

    #[test]
    fn classical_killing_values() {
        let g = sl2();
        let [h, e, f] = ["H", "E", "F"].map(|n| LieElement::named(&g, n).unwrap());
        assert_eq!(killing_nform(&[e.clone(), f.clone()]).unwrap(), q(4));
        assert_eq!(killing_nform(&[h.clone(), h.clone()]).unwrap(), q(8));
        let brute = (&(&h.ad() * &e.ad()) * &f.ad()).trace();
        assert_eq!(killing_nform(&[h, e, f]).unwrap(), brute);
    }

    #[test]
    fn mixed_algebras_rejected() {
        let a = LieElement::basis(&sl2(), 0);
        let b = LieElement::basis(&Arc::new(LieAlgebra::heisenberg3()), 0);
        assert_eq!(killing_nform(&[a, b]), Err(LieError::MixedAlgebras));
    }

    #[test]
    fn centreless() {
        assert!(LieAlgebra::sl2().is_centreless());
        assert!(!LieAlgebra::abelian(2).is_centreless());
        assert!(!LieAlgebra::heisenberg3().is_centreless());
    }
}
