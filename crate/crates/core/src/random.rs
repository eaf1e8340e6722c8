//! Seeded generators for fixtures and property checks. All randomness comes
//! from `ChaCha8Rng::seed_from_u64`, so a seed fixes every draw.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::{CubeElement, SignString, Slot};
use crate::laurent::{Exponent, GLaurent, LaurentPoly};
use crate::liealg::{LieAlgebra, LieElement};
use crate::matrix::QMatrix;
use crate::opalg::{LatticeBox, LatticeOperator, MatPoly};
use crate::rational::{frac, q, Q};

pub type Prng = ChaCha8Rng;

pub fn prng(seed: u64) -> Prng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero rational `p/q` with `|p| ≤ 3`, `1 ≤ q ≤ 3`.
pub fn small_rational(rng: &mut Prng) -> Q {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-3..=3);
    }
    frac(p, rng.gen_range(1..=3))
}

pub fn exponent(rng: &mut Prng, n: usize, bound: i64) -> Exponent {
    Exponent((0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
}

/// Up to `max_terms` monomials with exponents in `[-bound, bound]^n`; never zero.
pub fn laurent(rng: &mut Prng, n: usize, max_terms: usize, bound: i64) -> LaurentPoly {
    loop {
        let count = rng.gen_range(1..=max_terms);
        let terms: Vec<(Exponent, Q)> = (0..count).map(|_| (exponent(rng, n, bound), small_rational(rng))).collect();
        let p = LaurentPoly::from_terms(n, terms).expect("exponents have length n");
        if !p.is_zero() {
            return p;
        }
    }
}

/// `(n+1) × n` exponent matrix with entries in `[-bound, bound]`. When
/// `balanced`, the last row is adjusted so that every column sums to zero
/// (entries of that row may then leave the range).
pub fn exponent_matrix(rng: &mut Prng, n: usize, bound: i64, balanced: bool) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = (0..=n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    if balanced {
        for j in 0..n {
            let s: i64 = rows[..n].iter().map(|r| r[j]).sum();
            rows[n][j] = -s;
        }
    }
    rows
}

pub fn lie_element(rng: &mut Prng, algebra: &Arc<LieAlgebra>) -> LieElement {
    let coeffs = (0..algebra.dim()).map(|_| q(rng.gen_range(-2..=2))).collect();
    LieElement::new(Arc::clone(algebra), coeffs).expect("dimension matches")
}

pub fn basis_monomial(rng: &mut Prng, algebra: &Arc<LieAlgebra>, n: usize, bound: i64) -> GLaurent {
    let y = LieElement::basis(algebra, rng.gen_range(0..algebra.dim()));
    GLaurent::monomial(&y, exponent(rng, n, bound))
}

fn weight(rng: &mut Prng, n: usize, d: usize) -> MatPoly {
    let mut w = MatPoly::zero(n, d);
    let constant = QMatrix::from_rows((0..d).map(|_| (0..d).map(|_| q(rng.gen_range(-2..=2))).collect()).collect());
    w = w.add(&MatPoly::constant(n, constant));
    if rng.gen_bool(0.5) {
        let axis = rng.gen_range(0..n);
        w = w.add(&MatPoly::coordinate(n, d, axis).scale(&q(rng.gen_range(-2..=2))));
    }
    w
}

/// Random operator in `I_1^{s_1} ∩ ⋯ ∩ I_n^{s_n}`, built atom by atom with
/// boxes that respect each axis constraint.
pub fn operator_in(rng: &mut Prng, s: &SignString, d: usize, atoms: usize) -> LatticeOperator {
    let n = s.n();
    let mut op = LatticeOperator::zero(n, d);
    for _ in 0..atoms {
        let mut region = LatticeBox::full(n);
        for (axis, slot) in s.0.iter().enumerate() {
            let a = rng.gen_range(-3..=3);
            region = match slot {
                Slot::Plus => region.restrict(axis, Some(a), None),
                Slot::Minus => region.restrict(axis, None, Some(a)),
                Slot::Zero => region.restrict(axis, Some(a), Some(a + rng.gen_range(1..=3))),
            };
        }
        let shift = exponent(rng, n, 2);
        let atom = LatticeOperator::from_atom(shift, region, weight(rng, n, d));
        op = op.add(&atom).expect("same shape");
    }
    op
}

/// Random element of `N^degree` with every component populated.
pub fn cube_element(rng: &mut Prng, n: usize, d: usize, degree: usize) -> CubeElement {
    let comps: Vec<(SignString, LatticeOperator)> = SignString::all(n, degree)
        .into_iter()
        .map(|s| {
            let atoms = rng.gen_range(1..=2);
            let op = operator_in(rng, &s, d, atoms);
            (s, op)
        })
        .collect();
    CubeElement::from_components(n, d, degree, comps).expect("components built inside their ideals")
}

/// Random operator with full-lattice atoms (an element of `N^0`).
pub fn full_operator(rng: &mut Prng, n: usize, d: usize) -> LatticeOperator {
    let s = SignString(vec![Slot::Zero; n]);
    let bounded = operator_in(rng, &s, d, 1);
    let free = LatticeOperator::from_atom(exponent(rng, n, 2), LatticeBox::full(n), weight(rng, n, d));
    free.add(&bounded).expect("same shape")
}

/// Distinct indices `w_1, …, w_len` drawn from `1..=n`.
pub fn index_list(rng: &mut Prng, n: usize, len: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (1..=n).collect();
    all.shuffle(rng);
    all.truncate(len);
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = laurent(&mut prng(7), 2, 3, 3);
        let b = laurent(&mut prng(7), 2, 3, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn balanced_columns() {
        let m = exponent_matrix(&mut prng(1), 3, 4, true);
        for j in 0..3 {
            assert_eq!(m.iter().map(|r| r[j]).sum::<i64>(), 0);
        }
    }

    #[test]
    fn cube_elements_respect_ideals() {
        let mut rng = prng(3);
        for degree in 1..=3 {
            let f = cube_element(&mut rng, 2, 1, degree);
            assert_eq!(f.degree(), degree);
        }
    }
}
