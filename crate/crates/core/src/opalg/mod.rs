//! Banded lattice-kernel operators on `V ⊗ k[t1^±, …, tn^±]`.
//!
//! An operator is a finite sum of atoms. The atom `(c, W, B)` sends
//! `v ⊗ e_λ` to `[λ ∈ B] · W(λ) v ⊗ e_{λ+c}`, where `W` is a polynomial in
//! `λ` with `d × d` matrix coefficients.

mod lattice_box;
mod weight;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::laurent::{Exponent, GLaurent, LaurentPoly};
use crate::matrix::QMatrix;
use crate::rational::{q, Q};

pub use lattice_box::LatticeBox;
pub use weight::MatPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("operator shapes differ: (n, d) = ({0}, {1}) vs ({2}, {3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("diagonal part has unbounded support at shift 0 (cell {0})")]
    NotTraceClass(String),
    #[error("axis {axis} out of range for {n} variables")]
    AxisOutOfRange { axis: usize, n: usize },
}

/// Which half of the lattice a projector keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^s` with the convention `(-1)^± = ±1`.
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// Ideal slots: bounded below, bounded above, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ideal {
    Plus,
    Minus,
    Zero,
}

/// A commuting system of coordinate half-space projectors `P_i^+ = [λ_i ≥ m_i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Idempotents {
    cuts: Vec<i64>,
}

impl Idempotents {
    pub fn standard(n: usize) -> Self {
        Idempotents { cuts: vec![0; n] }
    }

    pub fn with_cuts(cuts: Vec<i64>) -> Self {
        Idempotents { cuts }
    }

    pub fn n(&self) -> usize {
        self.cuts.len()
    }

    pub fn cuts(&self) -> &[i64] {
        &self.cuts
    }

    pub fn projector(&self, d: usize, axis: usize, sign: Sign) -> LatticeOperator {
        LatticeOperator::projector_at(self.n(), d, axis, sign, self.cuts[axis])
    }
}

/// One term of a [`LatticeOperator`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelAtom {
    pub shift: Exponent,
    pub region: LatticeBox,
    pub weight: MatPoly,
}

/// Finitely supported vector in `V ⊗ k[t^±]`.
pub type LatticeVector = BTreeMap<Exponent, Vec<Q>>;

#[derive(Clone)]
pub struct LatticeOperator {
    n: usize,
    d: usize,
    atoms: BTreeMap<(Exponent, LatticeBox), MatPoly>,
}

impl LatticeOperator {
    pub fn zero(n: usize, d: usize) -> Self {
        LatticeOperator { n, d, atoms: BTreeMap::new() }
    }

    pub fn identity(n: usize, d: usize) -> Self {
        Self::from_atom(Exponent::zero(n), LatticeBox::full(n), MatPoly::identity(n, d))
    }

    pub fn from_atom(shift: Exponent, region: LatticeBox, weight: MatPoly) -> Self {
        let mut op = Self::zero(weight.n(), weight.d());
        op.add_atom(shift, region, weight);
        op
    }

    /// Shift by `c` with a constant matrix on the whole lattice.
    pub fn shift_matrix(shift: Exponent, m: QMatrix) -> Self {
        let n = shift.n();
        Self::from_atom(shift, LatticeBox::full(n), MatPoly::constant(n, m))
    }

    /// `P_axis^+ = [λ_axis ≥ 0]` or `P_axis^- = [λ_axis < 0]`.
    pub fn projector(n: usize, d: usize, axis: usize, sign: Sign) -> Self {
        Self::projector_at(n, d, axis, sign, 0)
    }

    pub fn projector_at(n: usize, d: usize, axis: usize, sign: Sign, cut: i64) -> Self {
        let region = match sign {
            Sign::Plus => LatticeBox::full(n).restrict(axis, Some(cut), None),
            Sign::Minus => LatticeBox::full(n).restrict(axis, None, Some(cut)),
        };
        Self::from_atom(Exponent::zero(n), region, MatPoly::identity(n, d))
    }

    /// Multiplication by a scalar Laurent polynomial (`d = 1`).
    pub fn mul_scalar(f: &LaurentPoly) -> Self {
        let n = f.n();
        let mut op = Self::zero(n, 1);
        for (e, c) in f.terms() {
            op.add_atom(e.clone(), LatticeBox::full(n), MatPoly::constant(n, QMatrix::scalar(1, c.clone())));
        }
        op
    }

    /// `Σ ad(Y_c) t^c` acting on `𝔤 ⊗ k[t^±]`.
    pub fn mul_lie(f: &GLaurent) -> Self {
        let n = f.n();
        let mut op = Self::zero(n, f.algebra().dim());
        for (e, y) in f.terms() {
            op.add_atom(e.clone(), LatticeBox::full(n), MatPoly::constant(n, y.ad()));
        }
        op
    }

    /// `t^s ∂_{t_axis}` on `k[t^±]`.
    pub fn derivation(s: &Exponent, axis: usize) -> Result<Self, OpError> {
        let n = s.n();
        if axis >= n {
            return Err(OpError::AxisOutOfRange { axis, n });
        }
        let mut shift = s.clone();
        shift.0[axis] -= 1;
        Ok(Self::from_atom(shift, LatticeBox::full(n), MatPoly::coordinate(n, 1, axis)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = KernelAtom> + '_ {
        self.atoms.iter().map(|((s, b), w)| KernelAtom { shift: s.clone(), region: b.clone(), weight: w.clone() })
    }

    fn add_atom(&mut self, shift: Exponent, region: LatticeBox, weight: MatPoly) {
        if weight.is_zero() || region.is_empty() {
            return;
        }
        match self.atoms.entry((shift, region)) {
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&weight);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(weight);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), OpError> {
        if self.n != other.n || self.d != other.d {
            return Err(OpError::DimensionMismatch(self.n, self.d, other.n, other.d));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OpError> {
        self.check(other)?;
        let mut out = self.clone();
        for ((s, b), w) in &other.atoms {
            out.add_atom(s.clone(), b.clone(), w.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OpError> {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.d);
        }
        LatticeOperator { n: self.n, d: self.d, atoms: self.atoms.iter().map(|(k, w)| (k.clone(), w.scale(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, OpError> {
        self.check(other)?;
        let mut out = Self::zero(self.n, self.d);
        for ((sb, bb), wb) in &other.atoms {
            for ((sa, ba), wa) in &self.atoms {
                let region = bb.intersect(&ba.translate_back(sb));
                if region.is_empty() {
                    continue;
                }
                let weight = wa.shift(sb).mul(wb);
                out.add_atom(sa + sb, region, weight);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, OpError> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector, OpError> {
        let mut out: LatticeVector = BTreeMap::new();
        for (lambda, v) in x {
            if lambda.n() != self.n || v.len() != self.d {
                return Err(OpError::DimensionMismatch(self.n, self.d, lambda.n(), v.len()));
            }
            for ((s, b), w) in &self.atoms {
                if !b.contains(lambda) {
                    continue;
                }
                let image = w.eval(lambda).mul_vec(v);
                let slot = out.entry(lambda + s).or_insert_with(|| vec![Q::zero(); self.d]);
                for (a, y) in slot.iter_mut().zip(image) {
                    *a += y;
                }
            }
        }
        out.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        Ok(out)
    }

    /// Sums of atoms on the cells cut out by all box walls, grouped by shift.
    fn cells(&self) -> Vec<(Exponent, Cell, MatPoly)> {
        let mut by_shift: BTreeMap<&Exponent, Vec<(&LatticeBox, &MatPoly)>> = BTreeMap::new();
        for ((s, b), w) in &self.atoms {
            by_shift.entry(s).or_default().push((b, w));
        }
        let mut out = Vec::new();
        for (shift, group) in by_shift {
            let axes: Vec<Vec<Interval>> = (0..self.n)
                .map(|i| {
                    let walls: BTreeSet<i64> =
                        group.iter().flat_map(|(b, _)| [b.lo(i), b.hi(i)]).flatten().collect();
                    axis_intervals(&walls)
                })
                .collect();
            for cell in cartesian(&axes) {
                let region = cell_box(&cell);
                let mut sum = MatPoly::zero(self.n, self.d);
                for (b, w) in &group {
                    if b.covers(&region) {
                        sum = sum.add(w);
                    }
                }
                if !sum.is_zero() {
                    out.push((shift.clone(), cell, sum));
                }
            }
        }
        out
    }

    /// Semantic test: does the operator kill every basis vector?
    pub fn is_zero(&self) -> bool {
        self.cells().iter().all(|(_, cell, w)| vanishes_on(w, cell))
    }

    /// `τ(T) = Σ_λ tr W_0(λ)` over the diagonal part.
    pub fn trace(&self) -> Result<Q, OpError> {
        let mut total = Q::zero();
        for (shift, cell, w) in self.cells() {
            if !shift.is_zero() || vanishes_on(&w, &cell) {
                continue;
            }
            if cell.iter().any(|(lo, hi)| lo.is_none() || hi.is_none()) {
                return Err(OpError::NotTraceClass(format!("{:?}", cell_box(&cell))));
            }
            let bounds: Vec<(i64, i64)> = cell.iter().map(|(l, h)| (l.unwrap(), h.unwrap())).collect();
            for (powers, m) in w.terms() {
                let tr = m.trace();
                if tr.is_zero() {
                    continue;
                }
                let mut factor = Q::from(tr);
                for (&p, &(lo, hi)) in powers.iter().zip(&bounds) {
                    factor *= power_sum(lo, hi, p);
                }
                total += factor;
            }
        }
        Ok(total)
    }

    /// Conservative ideal test along one axis, per atom.
    pub fn in_ideal(&self, axis: usize, ideal: Ideal) -> bool {
        self.atoms.keys().all(|(_, b)| match ideal {
            Ideal::Plus => b.lo(axis).is_some(),
            Ideal::Minus => b.hi(axis).is_some(),
            Ideal::Zero => b.lo(axis).is_some() && b.hi(axis).is_some(),
        })
    }

    /// Membership in `⋂_i (I_i^+ ∩ I_i^-)`.
    pub fn in_trace_ideal(&self) -> bool {
        (0..self.n).all(|i| self.in_ideal(i, Ideal::Zero))
    }

    /// Points on which `apply` must agree to certify equality with `other`:
    /// each cell contributes `degree + 2` samples per axis.
    pub fn probe_points(&self, other: &Self) -> Vec<Exponent> {
        let mut pts = BTreeSet::new();
        for op in [self, other] {
            for (_, cell, w) in op.cells() {
                let per_axis: Vec<Vec<i64>> = cell
                    .iter()
                    .enumerate()
                    .map(|(i, iv)| sample_interval(*iv, w.degree(i) as i64 + 2))
                    .collect();
                for p in cartesian(&per_axis) {
                    pts.insert(Exponent(p));
                }
            }
        }
        pts.into_iter().collect()
    }
}

impl PartialEq for LatticeOperator {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.sub(other).is_ok_and(|diff| diff.is_zero())
    }
}

impl fmt::Debug for LatticeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.atoms.iter().map(|((s, b), w)| format!("t^{:?}·[{b:?}]·({w:?})", s.0)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Interval = (Option<i64>, Option<i64>);
type Cell = Vec<Interval>;

fn axis_intervals(walls: &BTreeSet<i64>) -> Vec<Interval> {
    let mut out = Vec::with_capacity(walls.len() + 1);
    let mut prev = None;
    for &w in walls {
        out.push((prev, Some(w)));
        prev = Some(w);
    }
    out.push((prev, None));
    out
}

fn cell_box(cell: &Cell) -> LatticeBox {
    LatticeBox::new(cell.iter().map(|c| c.0).collect(), cell.iter().map(|c| c.1).collect())
}

fn cartesian<T: Clone>(axes: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn interval_len(iv: Interval) -> Option<i64> {
    match iv {
        (Some(l), Some(h)) => Some((h - l).max(0)),
        _ => None,
    }
}

/// Does `w` vanish at every lattice point of `cell`? A nonzero polynomial
/// cannot vanish on a grid with more points per axis than its degree there.
fn vanishes_on(w: &MatPoly, cell: &Cell) -> bool {
    if w.is_zero() {
        return true;
    }
    let short = (0..cell.len()).find(|&i| interval_len(cell[i]).is_some_and(|len| len <= i64::from(w.degree(i))));
    let Some(axis) = short else {
        return cell.iter().any(|&iv| interval_len(iv) == Some(0));
    };
    let (lo, hi) = (cell[axis].0.unwrap(), cell[axis].1.unwrap());
    (lo..hi).all(|x| {
        let mut sub = cell.clone();
        sub[axis] = (Some(x), Some(x + 1));
        vanishes_on(&w.substitute(axis, x), &sub)
    })
}

/// `Σ_{x=lo}^{hi-1} x^p`.
fn power_sum(lo: i64, hi: i64, p: u32) -> Q {
    (lo..hi).map(|x| weight::pow_i64(x, p)).fold(Q::zero(), |a, b| a + b)
}

fn sample_interval(iv: Interval, count: i64) -> Vec<i64> {
    match iv {
        (Some(l), Some(h)) => (l..h.min(l + count)).collect(),
        (Some(l), None) => (l..l + count).collect(),
        (None, Some(h)) => (h - count..h).collect(),
        (None, None) => (-count / 2..count - count / 2).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: i64) -> LatticeOperator {
        LatticeOperator::shift_matrix(Exponent(vec![e]), QMatrix::identity(1))
    }

    fn basis(e: &[i64]) -> LatticeVector {
        BTreeMap::from([(Exponent(e.to_vec()), vec![q(1)])])
    }

    #[test]
    fn cut_projectors() {
        let pp = LatticeOperator::projector(1, 1, 0, Sign::Plus);
        let pm = LatticeOperator::projector(1, 1, 0, Sign::Minus);
        let up = pm.compose(&t(1)).unwrap().compose(&pp).unwrap();
        assert_eq!(up.num_atoms(), 0);
        let down = pm.compose(&t(-1)).unwrap().compose(&pp).unwrap();
        assert_eq!(down.num_atoms(), 1);
        assert_eq!(down.apply(&basis(&[0])).unwrap(), basis(&[-1]));
        assert!(down.apply(&basis(&[1])).unwrap().is_empty());
        assert!(down.in_ideal(0, Ideal::Zero));
        assert_eq!(pp.compose(&pp).unwrap(), pp);
        assert!(pp.compose(&pm).unwrap().is_zero());
        assert_eq!(pp.add(&pm).unwrap(), LatticeOperator::identity(1, 1));
    }

    #[test]
    fn traces() {
        let five = LatticeOperator::from_atom(Exponent(vec![0]), LatticeBox::bounded(&[0], &[5]), MatPoly::identity(1, 1));
        assert_eq!(five.trace().unwrap(), q(5));
        assert_eq!(t(2).trace().unwrap(), q(0));
        let pp = LatticeOperator::projector(1, 1, 0, Sign::Plus);
        assert!(matches!(pp.trace(), Err(OpError::NotTraceClass(_))));
        // P+ + P- - 1 is zero, hence trace class
        let zero = pp.add(&LatticeOperator::projector(1, 1, 0, Sign::Minus)).unwrap().sub(&LatticeOperator::identity(1, 1)).unwrap();
        assert_eq!(zero.trace().unwrap(), q(0));
    }

    #[test]
    fn derivations() {
        let euler = LatticeOperator::derivation(&Exponent(vec![1]), 0).unwrap();
        for l in [-2, 0, 3, 5] {
            let img = euler.apply(&basis(&[l])).unwrap();
            assert_eq!(img.get(&Exponent(vec![l])).cloned().unwrap_or_default(), if l == 0 { vec![] } else { vec![q(l)] });
        }
        let d = LatticeOperator::derivation(&Exponent(vec![0]), 0).unwrap();
        assert!(d.apply(&basis(&[0])).unwrap().is_empty());
        let witt = |m: i64| LatticeOperator::derivation(&Exponent(vec![m + 1]), 0).unwrap();
        for a in -2..=2 {
            for b in -2..=2 {
                let lhs = witt(a).commutator(&witt(b)).unwrap();
                assert_eq!(lhs, witt(a + b).scale(&q(b - a)), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn vanishing_on_short_cells() {
        // λ(λ-1) vanishes on {0, 1} but not on {0, 1, 2}
        let l = MatPoly::coordinate(1, 1, 0);
        let w = l.mul(&l.add(&MatPoly::identity(1, 1).scale(&q(-1))));
        assert!(vanishes_on(&w, &vec![(Some(0), Some(2))]));
        assert!(!vanishes_on(&w, &vec![(Some(0), Some(3))]));
        assert!(!vanishes_on(&w, &vec![(None, Some(2))]));
    }
}
