//! Multidimensional residues as traces of projector-conjugated products.

use num_traits::Zero;
use serde::Serialize;

use crate::combinat::permutations;
use crate::laurent::{parshin_oracle, LaurentError, LaurentPoly};
use crate::matrix::QMatrix;
use crate::opalg::{Idempotents, LatticeOperator, OpError, Sign};
use crate::rational::{q, sign_pow, QStr, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResidueError {
    #[error("exponent matrix must be (n+1) x n, got {rows} rows of widths {widths:?}")]
    ShapeMismatch { rows: usize, widths: Vec<usize> },
    #[error("expected {expected} operators, got {got}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Operator(#[from] OpError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// `Σ_γ (-1)^γ P_a^{-γ} f P_a^γ g`.
fn conjugated(f: &LatticeOperator, g: &LatticeOperator, axis: usize, idem: &Idempotents) -> Result<LatticeOperator, OpError> {
    let d = f.d();
    let mut acc = LatticeOperator::zero(f.n(), d);
    for gamma in Sign::BOTH {
        let right = idem.projector(d, axis, gamma).compose(g)?;
        let term = idem.projector(d, axis, gamma.flip()).compose(&f.compose(&right)?)?;
        acc = acc.add(&term.scale(&q(gamma.value())))?;
    }
    Ok(acc)
}

/// `τ Σ_π sgn(π) Σ_γ (-1)^{Σγ} (P_1^{-γ_1} f_{π(1)} P_1^{γ_1}) ⋯ (P_n^{-γ_n} f_{π(n)} P_n^{γ_n}) f_0`
/// for `fs = [f_0, f_1, …, f_n]`.
pub fn raw_sum(fs: &[LatticeOperator], idem: &Idempotents) -> Result<Q, ResidueError> {
    let n = fs.first().map_or(0, LatticeOperator::n);
    if fs.len() != n + 1 {
        return Err(ResidueError::Arity { expected: n + 1, got: fs.len() });
    }
    let mut total = Q::zero();
    for (pi, sign) in permutations(n) {
        let mut g = fs[0].clone();
        for axis in (0..n).rev() {
            g = conjugated(&fs[pi[axis] + 1], &g, axis, idem)?;
        }
        total += g.trace()? * q(sign);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub n: usize,
    pub raw: QStr,
    pub residue: QStr,
    pub oracle: QStr,
    pub res_star: QStr,
    pub agrees: bool,
}

/// Raw sum of `(f_0; f_1, …, f_n)` expanded over monomial tuples.
pub fn raw_sum_laurent(f0: &LaurentPoly, fs: &[LaurentPoly], idem: &Idempotents) -> Result<Q, ResidueError> {
    let n = f0.n();
    if fs.len() != n {
        return Err(ResidueError::Arity { expected: n, got: fs.len() });
    }
    if let Some(bad) = fs.iter().find(|f| f.n() != n) {
        return Err(LaurentError::DimensionMismatch(n, bad.n()).into());
    }
    let mut tuples: Vec<(Vec<LatticeOperator>, Q)> = vec![(Vec::new(), Q::from_integer(1.into()))];
    for f in std::iter::once(f0).chain(fs) {
        let mut next = Vec::new();
        for (ops, c) in &tuples {
            for (e, a) in f.terms() {
                let mut ops = ops.clone();
                ops.push(LatticeOperator::shift_matrix(e.clone(), QMatrix::identity(1)));
                next.push((ops, c * a));
            }
        }
        tuples = next;
    }
    let mut total = Q::zero();
    for (ops, c) in tuples {
        total += raw_sum(&ops, idem)? * c;
    }
    Ok(total)
}

/// The residue of `f_0 df_1 ∧ ⋯ ∧ df_n` as `(-1)^n` times the raw trace sum,
/// reported together with the coefficient-extraction value.
pub fn residue(f0: &LaurentPoly, fs: &[LaurentPoly]) -> Result<ResidueReport, ResidueError> {
    residue_with(f0, fs, &Idempotents::standard(f0.n()))
}

pub fn residue_with(f0: &LaurentPoly, fs: &[LaurentPoly], idem: &Idempotents) -> Result<ResidueReport, ResidueError> {
    let n = f0.n();
    let raw = raw_sum_laurent(f0, fs, idem)?;
    let residue = &raw * q(sign_pow(n as i64));
    let oracle = parshin_oracle(f0, fs)?;
    let star = &raw * q(-sign_pow((n * (n.saturating_sub(1)) / 2) as i64));
    Ok(ResidueReport {
        n,
        agrees: residue == oracle,
        raw: QStr(raw),
        residue: QStr(residue),
        oracle: QStr(oracle),
        res_star: QStr(star),
    })
}

/// `det(c_{i,j})_{i,j=1..n}` when every column of the `(n+1) × n` exponent
/// matrix sums to zero, else `0`. Row 0 holds the exponent of `f_0`.
pub fn residue_det_monomial(c: &[Vec<i64>]) -> Result<Q, ResidueError> {
    let n = c.len().saturating_sub(1);
    if c.is_empty() || c.iter().any(|r| r.len() != n) {
        return Err(ResidueError::ShapeMismatch { rows: c.len(), widths: c.iter().map(Vec::len).collect() });
    }
    if (0..n).any(|j| c.iter().map(|r| r[j]).sum::<i64>() != 0) {
        return Ok(Q::zero());
    }
    Ok(QMatrix::from_i64_rows(&c[1..]).determinant())
}

/// `τ([P^+, f_1] f_0)` for `n = 1`.
pub fn ack_residue_n1(f0: &LatticeOperator, f1: &LatticeOperator) -> Result<Q, ResidueError> {
    ack_residue_n1_with(f0, f1, &Idempotents::standard(1))
}

pub fn ack_residue_n1_with(f0: &LatticeOperator, f1: &LatticeOperator, idem: &Idempotents) -> Result<Q, ResidueError> {
    if f0.n() != 1 {
        return Err(ResidueError::Arity { expected: 1, got: f0.n() });
    }
    let pi = idem.projector(f0.d(), 0, Sign::Plus);
    Ok(pi.commutator(f1)?.compose(f0)?.trace()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Exponent;
    use crate::rational::frac;

    fn mono(e: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(e, q(1))
    }

    fn op(e: &[i64]) -> LatticeOperator {
        LatticeOperator::shift_matrix(Exponent(e.to_vec()), QMatrix::identity(1))
    }

    #[test]
    fn raw_examples() {
        let idem = Idempotents::standard(1);
        assert_eq!(raw_sum(&[op(&[3]), op(&[-3])], &idem).unwrap(), q(3));
        assert_eq!(raw_sum(&[op(&[2]), op(&[1])], &idem).unwrap(), q(0));
        let idem2 = Idempotents::standard(2);
        assert_eq!(raw_sum(&[op(&[-1, -1]), op(&[1, 0]), op(&[0, 1])], &idem2).unwrap(), q(1));
    }

    #[test]
    fn classical_residue() {
        for c in -3..=3 {
            let f0 = LaurentPoly::monomial(vec![c], frac(3, 7));
            let r = residue(&f0, &[mono(&[1])]).unwrap();
            assert_eq!(r.residue.0, if c == -1 { frac(3, 7) } else { q(0) });
            assert!(r.agrees);
        }
    }

    #[test]
    fn determinant_formula() {
        let rows = vec![vec![-2, -3], vec![1, 1], vec![1, 2]];
        assert_eq!(residue_det_monomial(&rows).unwrap(), q(1));
        let r = residue(&mono(&rows[0]), &[mono(&rows[1]), mono(&rows[2])]).unwrap();
        assert_eq!(r.residue.0, q(1));
        assert_eq!(r.oracle.0, q(1));
        assert_eq!(residue_det_monomial(&[vec![0, 0], vec![1, 1], vec![1, 2]]).unwrap(), q(0));
        assert!(matches!(residue_det_monomial(&[vec![1], vec![1, 2]]), Err(ResidueError::ShapeMismatch { .. })));
    }

    #[test]
    fn ack_values() {
        assert_eq!(ack_residue_n1(&op(&[-1]), &op(&[1])).unwrap(), q(1));
        let diag = LatticeOperator::derivation(&Exponent(vec![1]), 0).unwrap();
        assert_eq!(ack_residue_n1(&diag, &diag).unwrap(), q(0));
    }
}
