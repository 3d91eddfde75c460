//! Axis-aligned box action sets.

use std::fmt;
use std::ops::{Deref, DerefMut};

use crate::error::{invalid, Result};

/// A point of the action set.
#[derive(Debug, Clone, PartialEq)]
pub struct Action(pub Vec<f64>);

impl Action {
    pub fn new(x: Vec<f64>) -> Self {
        Action(x)
    }

    pub fn scalar(x: f64) -> Self {
        Action(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Action {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Action {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for Action {
    fn from(v: Vec<f64>) -> Self {
        Action(v)
    }
}

/// Axis-aligned box `[lo_1, hi_1] x ... x [lo_d, hi_d]`.
///
/// Construction through [`ActionBox::new`] enforces a non-empty interior.
/// [`ActionBox::envelope`] also admits degenerate boxes, which are only
/// used as evaluation regions (e.g. the minimizer hull of a constant
/// sequence).
#[derive(Debug, Clone, PartialEq)]
pub struct ActionBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl ActionBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.is_empty() {
            return invalid("box dimension must be at least 1");
        }
        if lo.len() != hi.len() {
            return invalid(format!(
                "box bounds have different lengths ({} vs {})",
                lo.len(),
                hi.len()
            ));
        }
        for (k, (l, h)) in lo.iter().zip(&hi).enumerate() {
            if !(l.is_finite() && h.is_finite()) || l >= h {
                return invalid(format!("box coordinate {k}: need lo < hi, got [{l}, {h}]"));
            }
        }
        Ok(ActionBox { lo, hi })
    }

    /// One-dimensional interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo], vec![hi])
    }

    /// `[lo, hi]^d`.
    pub fn cube(lo: f64, hi: f64, d: usize) -> Result<Self> {
        Self::new(vec![lo; d], vec![hi; d])
    }

    /// Bounding box of a set of points; may be degenerate along any axis.
    pub fn envelope<'a, I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut iter = points.into_iter();
        let first = match iter.next() {
            Some(p) => p,
            None => return invalid("envelope of an empty point set"),
        };
        let mut lo = first.to_vec();
        let mut hi = first.to_vec();
        for p in iter {
            if p.len() != lo.len() {
                return invalid("envelope points have mixed dimensions");
            }
            for k in 0..p.len() {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        Ok(ActionBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn center(&self) -> Action {
        Action(self.lo.iter().zip(&self.hi).map(|(l, h)| 0.5 * (l + h)).collect())
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (l, h))| *v >= *l && *v <= *h)
    }

    /// True when `other` lies inside `self`.
    pub fn contains_box(&self, other: &ActionBox) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    /// Half the Euclidean diameter: the radius of the circumscribed ball.
    pub fn radius(&self) -> f64 {
        0.5 * self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l) * (h - l))
            .sum::<f64>()
            .sqrt()
    }

    /// Smallest half-width over the coordinates.
    pub fn min_half_width(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| 0.5 * (h - l))
            .fold(f64::INFINITY, f64::min)
    }

    /// All `2^d` vertices.
    pub fn vertices(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        (0..1usize << d)
            .map(|mask| {
                (0..d)
                    .map(|k| if mask >> k & 1 == 1 { self.hi[k] } else { self.lo[k] })
                    .collect()
            })
            .collect()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return invalid(format!("dimension mismatch: box has d={}, point has {n}", self.dim()));
        }
        Ok(())
    }

    /// Euclidean projection onto the box (coordinate-wise clamp).
    pub fn project(&self, y: &[f64]) -> Result<Action> {
        self.check_dim(y.len())?;
        let mut x = y.to_vec();
        self.project_in_place(&mut x);
        Ok(Action(x))
    }

    /// Projection onto the `delta`-interior `[lo + delta, hi - delta]`.
    pub fn project_interior(&self, delta: f64, y: &[f64]) -> Result<Action> {
        self.check_dim(y.len())?;
        self.check_interior(delta)?;
        let mut x = y.to_vec();
        self.project_interior_in_place(delta, &mut x);
        Ok(Action(x))
    }

    pub fn check_interior(&self, delta: f64) -> Result<()> {
        if !(delta >= 0.0) || 2.0 * delta > 2.0 * self.min_half_width() {
            return invalid(format!(
                "interior offset {delta} is negative or exceeds the box half-width {}",
                self.min_half_width()
            ));
        }
        Ok(())
    }

    /// In-place clamp. Callers guarantee matching dimension.
    #[inline]
    pub fn project_in_place(&self, x: &mut [f64]) {
        for ((v, l), h) in x.iter_mut().zip(&self.lo).zip(&self.hi) {
            *v = v.clamp(*l, *h);
        }
    }

    /// In-place clamp to the `delta`-interior. Callers guarantee a valid `delta`.
    #[inline]
    pub fn project_interior_in_place(&self, delta: f64, x: &mut [f64]) {
        for ((v, l), h) in x.iter_mut().zip(&self.lo).zip(&self.hi) {
            *v = v.clamp(l + delta, h - delta);
        }
    }
}

impl fmt::Display for ActionBox {
    /// `lo..hi` per coordinate, joined by `x`; the sequence-file header syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.dim() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "{}..{}", self.lo[k], self.hi[k])?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ActionBox {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in s.split('x') {
            let (l, h) = part
                .split_once("..")
                .ok_or_else(|| crate::Error::InvalidArgument(format!("bad box `{s}`")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| crate::Error::InvalidArgument(format!("bad box bound `{v}`")))
            };
            lo.push(parse(l)?);
            hi.push(parse(h)?);
        }
        ActionBox::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_square() -> ActionBox {
        ActionBox::cube(0.0, 1.0, 2).unwrap()
    }

    #[test]
    fn project_examples() {
        let b = ActionBox::interval(-2.0, 3.0).unwrap();
        assert_eq!(b.project(&[5.0]).unwrap().0, vec![3.0]);
        assert_eq!(b.project(&[0.8]).unwrap().0, vec![0.8]);
        assert_eq!(unit_square().project(&[-1.0, 0.5]).unwrap().0, vec![0.0, 0.5]);
    }

    #[test]
    fn project_interior_examples() {
        let b = ActionBox::interval(-2.0, 3.0).unwrap();
        assert_eq!(b.project_interior(0.5, &[3.0]).unwrap().0, vec![2.5]);
        assert_eq!(b.project_interior(0.0, &[5.0]).unwrap().0, vec![3.0]);
        let u = ActionBox::interval(0.0, 1.0).unwrap();
        assert_eq!(u.project_interior(0.25, &[0.5]).unwrap().0, vec![0.5]);
    }

    #[test]
    fn errors() {
        let b = ActionBox::interval(0.0, 1.0).unwrap();
        assert!(b.project(&[0.0, 1.0]).is_err());
        assert!(b.project_interior(0.6, &[0.5]).is_err());
        assert!(b.project_interior(-0.1, &[0.5]).is_err());
        // exactly half the width collapses to the midpoint and is allowed
        assert_eq!(b.project_interior(0.5, &[0.9]).unwrap().0, vec![0.5]);
        assert!(ActionBox::interval(1.0, 1.0).is_err());
        assert!(ActionBox::new(vec![], vec![]).is_err());
        assert!(ActionBox::new(vec![0.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn radius_examples() {
        // half-lengths of the intervals; half diagonal of the unit square
        assert!((ActionBox::interval(-2.0, 3.0).unwrap().radius() - 2.5).abs() < 1e-15);
        assert!((unit_square().radius() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((ActionBox::interval(-1.0, 2.0).unwrap().radius() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn box_text_round_trip() {
        let b = ActionBox::new(vec![-2.0, 0.0], vec![3.0, 1.5]).unwrap();
        let s = b.to_string();
        assert_eq!(s, "-2..3x0..1.5");
        assert_eq!(s.parse::<ActionBox>().unwrap(), b);
    }

    #[test]
    fn vertices_of_square() {
        let v = unit_square().vertices();
        assert_eq!(v.len(), 4);
        assert!(v.contains(&vec![1.0, 0.0]));
    }

    proptest! {
        #[test]
        fn projection_is_idempotent(y in prop::collection::vec(-10.0f64..10.0, 3)) {
            let b = ActionBox::new(vec![-1.0, 0.0, 2.0], vec![1.0, 0.5, 7.0]).unwrap();
            let p = b.project(&y).unwrap();
            prop_assert_eq!(b.project(&p).unwrap(), p.clone());
            prop_assert!(b.contains(&p));
        }

        #[test]
        fn interior_projection_nests(y in -10.0f64..10.0, delta in 0.0f64..2.5) {
            let b = ActionBox::interval(-2.0, 3.0).unwrap();
            let p = b.project_interior(delta, &[y]).unwrap();
            prop_assert!(b.contains(&p));
            prop_assert!(p[0] >= -2.0 + delta && p[0] <= 3.0 - delta);
            prop_assert_eq!(b.project_interior(0.0, &[y]).unwrap(), b.project(&[y]).unwrap());
        }
    }
}
