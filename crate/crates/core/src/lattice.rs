//! Integer intersection theory on the Néron–Severi lattice of an iterated
//! blow-up of the plane along chains of infinitely near points.
//!
//! The basis is `{H} ∪ {C(i,j)}` where `H` is the pulled-back hyperplane
//! class and `C(i,j)` the total transform of the exceptional curve of the
//! `j`-th point of chain `i`. The form is diagonal `(1, -1, ..., -1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use thiserror::Error;

/// The `slot`-th infinitely near point of chain `chain`. Both indices are
/// 1-based; ordering is lexicographic on `(chain, slot)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointRef {
    pub chain: usize,
    pub slot: usize,
}

impl PointRef {
    pub const fn new(chain: usize, slot: usize) -> Self {
        Self { chain, slot }
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p({},{})", self.chain, self.slot)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("point {0} does not belong to this configuration")]
    ConfigurationMismatch(PointRef),
}

/// A divisor class `h·H + Σ c(p)·C(p)`. Zero coefficients are never stored,
/// so structural equality is coefficient-wise equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    h: i64,
    c: BTreeMap<PointRef, i64>,
}

impl DivisorClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn hyperplane() -> Self {
        Self::new(1, [])
    }

    /// The total transform `μ*C(p)`.
    pub fn exceptional(p: PointRef) -> Self {
        Self::new(0, [(p, 1)])
    }

    pub fn new(h: i64, coefficients: impl IntoIterator<Item = (PointRef, i64)>) -> Self {
        let mut cls = Self { h, c: BTreeMap::new() };
        for (p, v) in coefficients {
            cls.add_coeff(p, v);
        }
        cls
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn coeff(&self, p: PointRef) -> i64 {
        self.c.get(&p).copied().unwrap_or(0)
    }

    /// Non-zero point coefficients in point order.
    pub fn terms(&self) -> impl Iterator<Item = (PointRef, i64)> + '_ {
        self.c.iter().map(|(&p, &v)| (p, v))
    }

    pub fn is_zero(&self) -> bool {
        self.h == 0 && self.c.is_empty()
    }

    fn add_coeff(&mut self, p: PointRef, v: i64) {
        if v == 0 {
            return;
        }
        let slot = self.c.entry(p).or_insert(0);
        *slot += v;
        if *slot == 0 {
            self.c.remove(&p);
        }
    }

    /// The intersection pairing, without checking that both classes live on
    /// the same surface. See [`Lattice::intersect`] for the checked form.
    pub fn dot(&self, other: &Self) -> i64 {
        let (small, large) = if self.c.len() <= other.c.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut sum = self.h * other.h;
        for (p, v) in &small.c {
            if let Some(w) = large.c.get(p) {
                sum -= v * w;
            }
        }
        sum
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let mut term = |f: &mut fmt::Formatter<'_>, v: i64, sym: String| -> fmt::Result {
            let sign = if v < 0 { "-" } else if wrote { "+" } else { "" };
            let mag = v.unsigned_abs();
            let sep = if wrote { " " } else { "" };
            let pad = if wrote { " " } else { "" };
            wrote = true;
            if mag == 1 {
                write!(f, "{sep}{sign}{pad}{sym}")
            } else {
                write!(f, "{sep}{sign}{pad}{mag}{sym}")
            }
        };
        if self.h != 0 {
            term(f, self.h, "H".into())?;
        }
        for (p, v) in &self.c {
            term(f, *v, format!("C{}.{}", p.chain, p.slot))?;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl AddAssign<&DivisorClass> for DivisorClass {
    fn add_assign(&mut self, rhs: &DivisorClass) {
        self.h += rhs.h;
        for (&p, &v) in &rhs.c {
            self.add_coeff(p, v);
        }
    }
}

impl SubAssign<&DivisorClass> for DivisorClass {
    fn sub_assign(&mut self, rhs: &DivisorClass) {
        self.h -= rhs.h;
        for (&p, &v) in &rhs.c {
            self.add_coeff(p, -v);
        }
    }
}

impl Add<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(mut self, rhs: DivisorClass) -> DivisorClass {
        self += &rhs;
        self
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(mut self, rhs: DivisorClass) -> DivisorClass {
        self -= &rhs;
        self
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            h: -self.h,
            c: self.c.iter().map(|(&p, &v)| (p, -v)).collect(),
        }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        if self == 0 {
            return DivisorClass::zero();
        }
        DivisorClass {
            h: self * rhs.h,
            c: rhs.c.iter().map(|(&p, &v)| (p, self * v)).collect(),
        }
    }
}

impl<'a> std::iter::Sum<&'a DivisorClass> for DivisorClass {
    fn sum<I: Iterator<Item = &'a DivisorClass>>(iter: I) -> Self {
        let mut acc = DivisorClass::zero();
        for cls in iter {
            acc += cls;
        }
        acc
    }
}

impl std::iter::Sum for DivisorClass {
    fn sum<I: Iterator<Item = DivisorClass>>(iter: I) -> Self {
        let mut acc = DivisorClass::zero();
        for cls in iter {
            acc += &cls;
        }
        acc
    }
}

/// A class written in the basis `{H} ∪ {E(i,j)}` of strict transforms of the
/// exceptional curves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExceptionalClass {
    h: i64,
    e: BTreeMap<PointRef, i64>,
}

impl ExceptionalClass {
    pub fn new(h: i64, coefficients: impl IntoIterator<Item = (PointRef, i64)>) -> Self {
        let mut e = BTreeMap::new();
        for (p, v) in coefficients {
            *e.entry(p).or_insert(0) += v;
        }
        e.retain(|_, v| *v != 0);
        Self { h, e }
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn coeff(&self, p: PointRef) -> i64 {
        self.e.get(&p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (PointRef, i64)> + '_ {
        self.e.iter().map(|(&p, &v)| (p, v))
    }
}

/// `NS(S)` for a fixed chain structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    lengths: Vec<usize>,
}

impl Lattice {
    /// `lengths[i]` is the length of chain `i + 1`.
    pub fn new(lengths: Vec<usize>) -> Self {
        Self { lengths }
    }

    pub fn chain_lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn point_count(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Rank of `NS(S)`.
    pub fn rank(&self) -> usize {
        1 + self.point_count()
    }

    pub fn contains(&self, p: PointRef) -> bool {
        p.chain >= 1
            && p.slot >= 1
            && self.lengths.get(p.chain - 1).is_some_and(|&len| p.slot <= len)
    }

    /// All points, chain by chain.
    pub fn points(&self) -> Vec<PointRef> {
        self.lengths
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| PointRef::new(i + 1, j)))
            .collect()
    }

    pub fn check(&self, cls: &DivisorClass) -> Result<(), LatticeError> {
        match cls.terms().find(|(p, _)| !self.contains(*p)) {
            Some((p, _)) => Err(LatticeError::ConfigurationMismatch(p)),
            None => Ok(()),
        }
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.dot(b))
    }

    /// `-K = 3H - Σ C(i,j)`.
    pub fn anticanonical(&self) -> DivisorClass {
        DivisorClass::new(3, self.points().into_iter().map(|p| (p, -1)))
    }

    /// Rewrites `a` in the strict-transform basis using
    /// `C(i,j) = E(i,j) + ... + E(i,l(i))`.
    pub fn to_exceptional(&self, a: &DivisorClass) -> Result<ExceptionalClass, LatticeError> {
        self.check(a)?;
        let mut e = Vec::new();
        for (i, &len) in self.lengths.iter().enumerate() {
            let mut running = 0;
            for j in 1..=len {
                let p = PointRef::new(i + 1, j);
                running += a.coeff(p);
                e.push((p, running));
            }
        }
        Ok(ExceptionalClass::new(a.h(), e))
    }

    pub fn from_exceptional(&self, e: &ExceptionalClass) -> Result<DivisorClass, LatticeError> {
        if let Some((p, _)) = e.terms().find(|(p, _)| !self.contains(*p)) {
            return Err(LatticeError::ConfigurationMismatch(p));
        }
        let mut c = Vec::new();
        for (i, &len) in self.lengths.iter().enumerate() {
            for j in 1..=len {
                let p = PointRef::new(i + 1, j);
                let prev = if j == 1 { 0 } else { e.coeff(PointRef::new(i + 1, j - 1)) };
                c.push((p, e.coeff(p) - prev));
            }
        }
        Ok(DivisorClass::new(e.h(), c))
    }

    /// Gram matrix of the basis `H, C(1,1), ..., C(r,l(r))`.
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let mut basis = vec![DivisorClass::hyperplane()];
        basis.extend(self.points().into_iter().map(DivisorClass::exceptional));
        basis
            .iter()
            .map(|a| basis.iter().map(|b| a.dot(b)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_chains() -> Lattice {
        Lattice::new(vec![1, 1, 1, 1, 1])
    }

    #[test]
    fn basis_pairings() {
        let lat = Lattice::new(vec![3, 2]);
        let h = DivisorClass::hyperplane();
        assert_eq!(lat.intersect(&h, &h), Ok(1));
        for p in lat.points() {
            let c = DivisorClass::exceptional(p);
            assert_eq!(lat.intersect(&c, &c), Ok(-1));
            assert_eq!(lat.intersect(&h, &c), Ok(0));
            for q in lat.points().into_iter().filter(|&q| q != p) {
                assert_eq!(c.dot(&DivisorClass::exceptional(q)), 0);
            }
        }
    }

    #[test]
    fn anticanonical_degree() {
        let k5 = five_chains().anticanonical();
        assert_eq!(k5.h(), 3);
        assert!(five_chains().points().iter().all(|&p| k5.coeff(p) == -1));
        assert_eq!(k5.square(), 4);
        assert_eq!(Lattice::new(vec![2, 2]).anticanonical().square(), 5);
    }

    #[test]
    fn mismatched_configuration_is_rejected() {
        let lat = Lattice::new(vec![1, 1, 1, 1]);
        let foreign = DivisorClass::exceptional(PointRef::new(5, 1));
        assert_eq!(
            lat.intersect(&DivisorClass::hyperplane(), &foreign),
            Err(LatticeError::ConfigurationMismatch(PointRef::new(5, 1)))
        );
        let deep = DivisorClass::exceptional(PointRef::new(1, 2));
        assert!(lat.intersect(&deep, &deep).is_err());
    }

    #[test]
    fn exceptional_basis_of_chain_pullbacks() {
        let lat = Lattice::new(vec![3, 1]);
        let head = lat.to_exceptional(&DivisorClass::exceptional(PointRef::new(1, 1))).unwrap();
        assert_eq!(
            head,
            ExceptionalClass::new(0, (1..=3).map(|j| (PointRef::new(1, j), 1)))
        );
        let tail = lat.to_exceptional(&DivisorClass::exceptional(PointRef::new(1, 3))).unwrap();
        assert_eq!(tail, ExceptionalClass::new(0, [(PointRef::new(1, 3), 1)]));
    }

    #[test]
    fn gram_matrix_signature() {
        let g = Lattice::new(vec![2, 1, 1, 1]).gram_matrix();
        for (i, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let expected = match (i, j) {
                    (0, 0) => 1,
                    _ if i == j => -1,
                    _ => 0,
                };
                assert_eq!(v, expected);
            }
        }
    }

    #[test]
    fn zero_pruning_equality() {
        let p = PointRef::new(1, 1);
        let a = DivisorClass::new(1, [(p, 2), (p, -2)]);
        assert_eq!(a, DivisorClass::hyperplane());
        assert_eq!(&a - &a, DivisorClass::zero());
        assert_eq!(DivisorClass::new(2, [(p, -1)]).to_string(), "2H - C1.1");
    }
}
