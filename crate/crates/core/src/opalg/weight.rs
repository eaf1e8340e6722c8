use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::matrix::QMatrix;
use crate::rational::{q, Q};

/// Polynomial in the lattice coordinates `λ_1 … λ_n` with `d × d` matrix
/// coefficients: the weight of one kernel atom.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatPoly {
    n: usize,
    d: usize,
    terms: BTreeMap<Vec<u32>, QMatrix>,
}

impl MatPoly {
    pub fn zero(n: usize, d: usize) -> Self {
        MatPoly { n, d, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, m: QMatrix) -> Self {
        let d = m.rows();
        let mut p = Self::zero(n, d);
        p.add_term(vec![0; n], m);
        p
    }

    pub fn identity(n: usize, d: usize) -> Self {
        Self::constant(n, QMatrix::identity(d))
    }

    /// `c · λ^powers · 1_d`.
    pub fn scalar_monomial(n: usize, d: usize, powers: Vec<u32>, c: Q) -> Self {
        assert_eq!(powers.len(), n);
        let mut p = Self::zero(n, d);
        p.add_term(powers, QMatrix::scalar(d, c));
        p
    }

    /// `λ_axis · 1_d`.
    pub fn coordinate(n: usize, d: usize, axis: usize) -> Self {
        let mut powers = vec![0; n];
        powers[axis] = 1;
        Self::scalar_monomial(n, d, powers, q(1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &QMatrix)> {
        self.terms.iter()
    }

    pub fn degree(&self, axis: usize) -> u32 {
        self.terms.keys().map(|p| p[axis]).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, powers: Vec<u32>, m: QMatrix) {
        if m.is_zero() {
            return;
        }
        match self.terms.entry(powers) {
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &m;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(m);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, m) in &other.terms {
            out.add_term(p.clone(), m.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.d);
        }
        MatPoly { n: self.n, d: self.d, terms: self.terms.iter().map(|(p, m)| (p.clone(), m.scale(c))).collect() }
    }

    /// Product with matrix coefficients multiplied in `self · other` order.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.d);
        for (pa, ma) in &self.terms {
            for (pb, mb) in &other.terms {
                let powers = pa.iter().zip(pb).map(|(a, b)| a + b).collect();
                out.add_term(powers, ma * mb);
            }
        }
        out
    }

    /// `λ ↦ W(λ + shift)`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        if shift.iter().all(|&s| s == 0) {
            return self.clone();
        }
        let mut out = Self::zero(self.n, self.d);
        for (powers, m) in &self.terms {
            // expand Π (λ_i + s_i)^{p_i} one axis at a time
            let mut partial: Vec<(Vec<u32>, Q)> = vec![(vec![0; self.n], Q::one())];
            for (axis, (&p, &s)) in powers.iter().zip(shift).enumerate() {
                let mut next = Vec::new();
                for (pw, c) in &partial {
                    for k in 0..=p {
                        let coeff = c * binomial(p, k) * pow_i64(s, p - k);
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut pw = pw.clone();
                        pw[axis] = k;
                        next.push((pw, coeff));
                    }
                }
                partial = next;
            }
            for (pw, c) in partial {
                out.add_term(pw, m.scale(&c));
            }
        }
        out
    }

    pub fn eval(&self, point: &[i64]) -> QMatrix {
        let mut acc = QMatrix::zeros(self.d, self.d);
        for (powers, m) in &self.terms {
            let c: Q = powers.iter().zip(point).map(|(&p, &x)| pow_i64(x, p)).product();
            if !c.is_zero() {
                acc = &acc + &m.scale(&c);
            }
        }
        acc
    }

    /// Fixes `λ_axis = value`, leaving a polynomial in the remaining coordinates.
    pub fn substitute(&self, axis: usize, value: i64) -> Self {
        let mut out = Self::zero(self.n, self.d);
        for (powers, m) in &self.terms {
            let c = pow_i64(value, powers[axis]);
            let mut p = powers.clone();
            p[axis] = 0;
            out.add_term(p, m.scale(&c));
        }
        out
    }
}

fn binomial(n: u32, k: u32) -> Q {
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * q(i64::from(n - i)) / q(i64::from(i + 1));
    }
    acc
}

pub(crate) fn pow_i64(x: i64, p: u32) -> Q {
    let mut acc = Q::one();
    let base = q(x);
    for _ in 0..p {
        acc *= &base;
    }
    acc
}

impl fmt::Debug for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, m)| format!("{m:?}·λ^{p:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_expands_binomially() {
        // (λ+2)^2 = λ^2 + 4λ + 4
        let p = MatPoly::scalar_monomial(1, 1, vec![2], q(1));
        let s = p.shift(&[2]);
        for x in -3..4 {
            assert_eq!(s.eval(&[x]), p.eval(&[x + 2]));
        }
        assert_eq!(s.degree(0), 2);
    }

    #[test]
    fn matrix_order_in_product() {
        let a = MatPoly::constant(1, QMatrix::from_i64_rows(&[vec![0, 1], vec![0, 0]]));
        let b = MatPoly::constant(1, QMatrix::from_i64_rows(&[vec![0, 0], vec![1, 0]]));
        assert_eq!(a.mul(&b).eval(&[0]), QMatrix::from_i64_rows(&[vec![1, 0], vec![0, 0]]));
        assert_eq!(b.mul(&a).eval(&[0]), QMatrix::from_i64_rows(&[vec![0, 0], vec![0, 1]]));
    }

    #[test]
    fn substitution() {
        let p = MatPoly::coordinate(2, 1, 0).mul(&MatPoly::coordinate(2, 1, 1));
        assert_eq!(p.substitute(0, 3).eval(&[99, 5]), QMatrix::scalar(1, q(15)));
    }
}
