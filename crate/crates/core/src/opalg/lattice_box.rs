use std::fmt;

/// Product of half-open integer intervals `[lo_i, hi_i)`; `None` is the
/// infinite end on that side.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeBox {
    lo: Vec<Option<i64>>,
    hi: Vec<Option<i64>>,
}

impl LatticeBox {
    pub fn full(n: usize) -> Self {
        LatticeBox { lo: vec![None; n], hi: vec![None; n] }
    }

    pub fn new(lo: Vec<Option<i64>>, hi: Vec<Option<i64>>) -> Self {
        assert_eq!(lo.len(), hi.len(), "box bounds disagree on dimension");
        LatticeBox { lo, hi }
    }

    /// Bounded box `[lo, hi)` on every axis.
    pub fn bounded(lo: &[i64], hi: &[i64]) -> Self {
        Self::new(lo.iter().map(|&x| Some(x)).collect(), hi.iter().map(|&x| Some(x)).collect())
    }

    pub fn n(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self, axis: usize) -> Option<i64> {
        self.lo[axis]
    }

    pub fn hi(&self, axis: usize) -> Option<i64> {
        self.hi[axis]
    }

    /// Restricts one axis to `[lo, hi)` intersected with what is already there.
    pub fn restrict(mut self, axis: usize, lo: Option<i64>, hi: Option<i64>) -> Self {
        self.lo[axis] = max_lo(self.lo[axis], lo);
        self.hi[axis] = min_hi(self.hi[axis], hi);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| matches!((l, h), (Some(l), Some(h)) if l >= h))
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        point.iter().enumerate().all(|(i, &x)| self.lo[i].is_none_or(|l| x >= l) && self.hi[i].is_none_or(|h| x < h))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        LatticeBox {
            lo: self.lo.iter().zip(&other.lo).map(|(&a, &b)| max_lo(a, b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(&a, &b)| min_hi(a, b)).collect(),
        }
    }

    /// `{λ - s : λ ∈ self}`.
    pub fn translate_back(&self, shift: &[i64]) -> Self {
        LatticeBox {
            lo: self.lo.iter().zip(shift).map(|(l, s)| l.map(|l| l - s)).collect(),
            hi: self.hi.iter().zip(shift).map(|(h, s)| h.map(|h| h - s)).collect(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.iter().all(Option::is_some) && self.hi.iter().all(Option::is_some)
    }

    /// Does this box contain `other` (assumed nonempty)?
    pub fn covers(&self, other: &Self) -> bool {
        (0..self.n()).all(|i| {
            let lo_ok = match (self.lo[i], other.lo[i]) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => a <= b,
            };
            let hi_ok = match (self.hi[i], other.hi[i]) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => a >= b,
            };
            lo_ok && hi_ok
        })
    }
}

fn max_lo(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn min_hi(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl fmt::Debug for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| {
                let l = l.map_or("-inf".to_string(), |v| v.to_string());
                let h = h.map_or("inf".to_string(), |v| v.to_string());
                format!("[{l},{h})")
            })
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emptiness_and_intersection() {
        let plus = LatticeBox::full(1).restrict(0, Some(0), None);
        let below = LatticeBox::full(1).restrict(0, None, Some(0));
        assert!(plus.intersect(&below).is_empty());
        let shifted = plus.translate_back(&[1]);
        assert_eq!(shifted.lo(0), Some(-1));
        assert!(!shifted.intersect(&below).is_empty());
        assert!(LatticeBox::full(2).covers(&LatticeBox::bounded(&[0, 0], &[2, 2])));
        assert!(!plus.covers(&LatticeBox::full(1)));
    }
}
