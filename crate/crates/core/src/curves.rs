//! Irreducible negative curves of a configuration and effectivity of classes.
//!
//! On these surfaces every irreducible curve of negative square is a (-1)- or
//! (-2)-curve, and the negative curves generate the Mori cone. A class is
//! effective exactly when it is a non-negative integer combination of catalog
//! curves plus a nef remainder.

use std::collections::BTreeSet;
use std::fmt;

use crate::configuration::{LineRecord, SurfaceConfig};
use crate::lattice::{DivisorClass, PointRef};

mod bruteforce;

pub use bruteforce::{default_bound, is_effective_bruteforce, BruteForce};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveKind {
    /// Strict transform `E(i,j)` of an exceptional curve.
    Chain(PointRef),
    /// Strict transform of the line through `through`.
    Line(BTreeSet<PointRef>),
    /// Strict transform of the conic through all five points.
    Conic,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveRecord {
    pub kind: CurveKind,
    pub cls: DivisorClass,
    pub self_int: i64,
}

impl CurveRecord {
    fn new(kind: CurveKind, cls: DivisorClass) -> Self {
        let self_int = cls.square();
        Self { kind, cls, self_int }
    }

    /// Record for a class of one of the catalog shapes, with the kind read
    /// off the class: `h = 0` exceptional, `h = 1` line, otherwise conic.
    pub fn from_class(cls: DivisorClass) -> Self {
        let kind = match cls.h() {
            0 => {
                let p = cls.terms().find(|&(_, v)| v > 0).or_else(|| cls.terms().next()).map(|(p, _)| p);
                CurveKind::Chain(p.unwrap_or(PointRef::new(1, 1)))
            }
            1 => CurveKind::Line(cls.terms().filter(|&(_, v)| v < 0).map(|(p, _)| p).collect()),
            _ => CurveKind::Conic,
        };
        Self::new(kind, cls)
    }

    pub fn is_line(&self) -> bool {
        matches!(self.kind, CurveKind::Line(_))
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.kind, CurveKind::Chain(_))
    }
}

impl fmt::Display for CurveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CurveKind::Chain(p) => write!(f, "E{}.{}", p.chain, p.slot),
            CurveKind::Line(through) => {
                write!(f, "L[")?;
                for (k, p) in through.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}.{}", p.chain, p.slot)?;
                }
                write!(f, "]")
            }
            CurveKind::Conic => write!(f, "Q"),
        }
    }
}

/// The negative curves of one configuration, with a strictly positive
/// weight class used to bound decompositions.
#[derive(Clone, Debug)]
pub struct Catalog {
    config: SurfaceConfig,
    curves: Vec<CurveRecord>,
    weight: DivisorClass,
    anticanonical: DivisorClass,
}

pub fn catalog(config: &SurfaceConfig) -> Catalog {
    let mut curves = Vec::new();
    for (i, &len) in config.chain_lengths().iter().enumerate() {
        for j in 1..=len {
            let p = PointRef::new(i + 1, j);
            let mut cls = DivisorClass::exceptional(p);
            if j < len {
                cls -= &DivisorClass::exceptional(PointRef::new(i + 1, j + 1));
            }
            curves.push(CurveRecord::new(CurveKind::Chain(p), cls));
        }
    }

    let points = config.points();
    let mut lines: BTreeSet<BTreeSet<PointRef>> = BTreeSet::new();
    for (a, &p) in points.iter().enumerate() {
        for &q in &points[a + 1..] {
            lines.insert(config.line_through(p, q).through);
        }
    }
    for through in lines {
        let cls = DivisorClass::new(1, through.iter().map(|&t| (t, -1)));
        curves.push(CurveRecord::new(CurveKind::Line(through), cls));
    }

    if points.len() == 5 && !has_collinear_triple(config, &points) {
        let cls = DivisorClass::new(2, points.iter().map(|&p| (p, -1)));
        curves.push(CurveRecord::new(CurveKind::Conic, cls));
    }

    let weight = weight_class(config, &curves);
    Catalog {
        config: config.clone(),
        curves,
        weight,
        anticanonical: config.anticanonical(),
    }
}

fn has_collinear_triple(config: &SurfaceConfig, points: &[PointRef]) -> bool {
    let n = points.len();
    (0..n).any(|a| {
        (a + 1..n).any(|b| (b + 1..n).any(|c| config.collinear(points[a], points[b], points[c])))
    })
}

/// `2^k · (3H - Σ (l(i) - j + 1)·2^-k·C(i,j))` for the least `k ≥ 3` that makes
/// it positive on every catalog curve.
fn weight_class(config: &SurfaceConfig, curves: &[CurveRecord]) -> DivisorClass {
    let mut scale = 8i64;
    loop {
        let mut terms = Vec::new();
        for (i, &len) in config.chain_lengths().iter().enumerate() {
            for j in 1..=len {
                terms.push((PointRef::new(i + 1, j), -((len - j + 1) as i64)));
            }
        }
        let weight = DivisorClass::new(3 * scale, terms);
        if curves.iter().all(|g| g.cls.dot(&weight) > 0) {
            return weight;
        }
        scale *= 2;
    }
}

impl Catalog {
    pub fn config(&self) -> &SurfaceConfig {
        &self.config
    }

    pub fn curves(&self) -> &[CurveRecord] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Integer multiple of the weight class `A`; only ratios of pairings
    /// with it are meaningful.
    pub fn weight(&self) -> &DivisorClass {
        &self.weight
    }

    pub fn anticanonical(&self) -> &DivisorClass {
        &self.anticanonical
    }

    pub fn find(&self, cls: &DivisorClass) -> Option<&CurveRecord> {
        self.curves.iter().find(|g| g.cls == *cls)
    }

    /// Non-negative on every catalog curve and on `-K`.
    pub fn is_nef(&self, cls: &DivisorClass) -> bool {
        cls.dot(&self.anticanonical) >= 0 && self.curves.iter().all(|g| cls.dot(&g.cls) >= 0)
    }

    /// Decides effectivity of `cls`, returning a decomposition when it is.
    ///
    /// A catalog curve meeting the current class negatively is a fixed
    /// component of every member, so it is peeled off; the loop ends at a
    /// nef class (effective) or at a class that is negative on `-K` or on
    /// the weight class (not effective).
    pub fn is_effective(&self, cls: &DivisorClass) -> Option<EffectivityWitness> {
        let mut rest = cls.clone();
        let mut mult = vec![0u32; self.curves.len()];
        loop {
            if rest.dot(&self.anticanonical) < 0 || rest.dot(&self.weight) < 0 {
                return None;
            }
            match self.curves.iter().position(|g| rest.dot(&g.cls) < 0) {
                Some(i) => {
                    rest -= &self.curves[i].cls;
                    mult[i] += 1;
                }
                None => {
                    let parts = self
                        .curves
                        .iter()
                        .zip(mult)
                        .filter(|(_, m)| *m > 0)
                        .map(|(g, m)| (g.clone(), m))
                        .collect();
                    return Some(EffectivityWitness { parts, remainder: rest });
                }
            }
        }
    }
}

/// `Σ multiplicity·curve + remainder`, with a nef remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectivityWitness {
    pub parts: Vec<(CurveRecord, u32)>,
    pub remainder: DivisorClass,
}

impl EffectivityWitness {
    pub fn total(&self) -> DivisorClass {
        let mut sum = self.remainder.clone();
        for (g, m) in &self.parts {
            sum += &(i64::from(*m) * &g.cls);
        }
        sum
    }

    /// The parts are catalog curves with positive multiplicity, they sum
    /// with the remainder to `target`, and the remainder is nef.
    pub fn is_valid(&self, catalog: &Catalog, target: &DivisorClass) -> bool {
        self.parts.iter().all(|(g, m)| *m > 0 && catalog.find(&g.cls).is_some())
            && self.total() == *target
            && catalog.is_nef(&self.remainder)
    }
}

impl fmt::Display for EffectivityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, m) in &self.parts {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{m}{g}")?;
            }
        }
        if !self.remainder.is_zero() || first {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "[{}]", self.remainder)?;
        }
        Ok(())
    }
}

/// Membership in the generalized sense.
pub fn passes_through_gen(line: &LineRecord, p: PointRef) -> bool {
    line.through.contains(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{validate, ConfigDraft};

    fn p(chain: usize, slot: usize) -> PointRef {
        PointRef::new(chain, slot)
    }

    fn config(lengths: &[usize], lines: &[[PointRef; 3]]) -> SurfaceConfig {
        validate(&ConfigDraft::with_lengths(lengths, lines.to_vec())).unwrap()
    }

    fn c(pt: PointRef) -> DivisorClass {
        DivisorClass::exceptional(pt)
    }

    #[test]
    fn records_round_trip_through_classes() {
        for lengths in [[1, 1, 1, 1, 1].as_slice(), &[3, 2], &[5]] {
            let cat = catalog(&config(lengths, &[]));
            for g in cat.curves() {
                assert_eq!(CurveRecord::from_class(g.cls.clone()), *g);
            }
        }
    }

    #[test]
    fn gen5_catalog_has_sixteen_minus_one_curves() {
        let cat = catalog(&config(&[1, 1, 1, 1, 1], &[]));
        assert_eq!(cat.len(), 16);
        assert!(cat.curves().iter().all(|g| g.self_int == -1));
        assert_eq!(cat.curves().iter().filter(|g| g.is_exceptional()).count(), 5);
        assert_eq!(cat.curves().iter().filter(|g| g.is_line()).count(), 10);
        assert_eq!(cat.curves().last().unwrap().kind, CurveKind::Conic);
    }

    #[test]
    fn col3_catalog() {
        let cat = catalog(&config(&[1, 1, 1, 1, 1], &[[p(1, 1), p(2, 1), p(3, 1)]]));
        let triple: BTreeSet<_> = [p(1, 1), p(2, 1), p(3, 1)].into();
        let line = cat.curves().iter().find(|g| g.kind == CurveKind::Line(triple.clone())).unwrap();
        assert_eq!(line.self_int, -2);
        assert!(cat.curves().iter().all(|g| g.kind != CurveKind::Conic));
        // 3 pairs collapse into one record.
        assert_eq!(cat.curves().iter().filter(|g| g.is_line()).count(), 8);
    }

    #[test]
    fn chain_curves_self_intersections() {
        let cat = catalog(&config(&[2, 1, 1, 1], &[]));
        let e11 = cat.curves().iter().find(|g| g.kind == CurveKind::Chain(p(1, 1))).unwrap();
        let e12 = cat.curves().iter().find(|g| g.kind == CurveKind::Chain(p(1, 2))).unwrap();
        assert_eq!(e11.self_int, -2);
        assert_eq!(e12.self_int, -1);
        assert_eq!(e11.cls, &c(p(1, 1)) - &c(p(1, 2)));
    }

    #[test]
    fn weight_class_is_positive_on_catalog() {
        for lengths in [[5].as_slice(), &[1, 1, 1, 1, 1], &[3, 2]] {
            let cat = catalog(&config(lengths, &[]));
            assert!(cat.curves().iter().all(|g| g.cls.dot(cat.weight()) > 0));
        }
    }

    #[test]
    fn passes_through_examples() {
        let col3 = config(&[1, 1, 1, 1, 1], &[[p(1, 1), p(2, 1), p(3, 1)]]);
        let gen5 = config(&[1, 1, 1, 1, 1], &[]);
        assert!(passes_through_gen(&col3.line_through(p(1, 1), p(2, 1)), p(3, 1)));
        assert!(!passes_through_gen(&gen5.line_through(p(1, 1), p(2, 1)), p(3, 1)));
        let chain = config(&[3, 1, 1], &[[p(1, 1), p(1, 2), p(1, 3)]]);
        let line = chain.line_through(p(1, 1), p(1, 2));
        for j in 1..=3 {
            assert!(passes_through_gen(&line, p(1, j)));
        }
    }

    #[test]
    fn effective_pairs_of_points() {
        // k·H - (2k points) is effective.
        for lengths in [[1, 1, 1, 1, 1].as_slice(), &[5], &[2, 2, 1]] {
            let cfg = config(lengths, &[]);
            let cat = catalog(&cfg);
            let pts = cfg.points();
            for k in 1..=2usize {
                let cls = DivisorClass::new(k as i64, pts.iter().take(2 * k).map(|&q| (q, -1)));
                let w = cat.is_effective(&cls).expect("effective");
                assert!(w.is_valid(&cat, &cls));
            }
        }
    }

    #[test]
    fn three_generic_points_are_not_on_a_line() {
        let cat = catalog(&config(&[1, 1, 1, 1, 1], &[]));
        let cls = DivisorClass::new(1, [(p(1, 1), -1), (p(2, 1), -1), (p(3, 1), -1)]);
        assert!(cat.is_effective(&cls).is_none());
    }

    #[test]
    fn zero_and_negated_exceptional() {
        let cat = catalog(&config(&[2, 1, 1, 1], &[]));
        let zero = cat.is_effective(&DivisorClass::zero()).unwrap();
        assert!(zero.parts.is_empty() && zero.remainder.is_zero());
        let neg = -(&c(p(1, 1)) - &c(p(1, 2)));
        assert!(cat.is_effective(&neg).is_none());
    }

    #[test]
    fn double_tangent_line_decomposition() {
        // Single chain of four points, no lines declared: the fibre
        // 2H - C1 - C2 - C3 - C4 splits as 2T + E1 + 2E2 + E3.
        let cfg = config(&[4], &[]);
        let cat = catalog(&cfg);
        let tangent = cfg.line_through(p(1, 1), p(1, 2)).cls;
        let e = |j| cat.curves().iter().find(|g| g.kind == CurveKind::Chain(p(1, j))).unwrap().clone();
        let decomposition = EffectivityWitness {
            parts: vec![
                (cat.find(&tangent).unwrap().clone(), 2),
                (e(1), 1),
                (e(2), 2),
                (e(3), 1),
            ],
            remainder: DivisorClass::zero(),
        };
        let target = DivisorClass::new(2, (1..=4).map(|j| (p(1, j), -1)));
        assert!(decomposition.is_valid(&cat, &target));
        assert!(cat.is_effective(&target).is_some());
    }

    #[test]
    fn degenerate_tangent_class_decomposes_as_expected() {
        // H + C(1,1) - C(1,2) - C(d) - C(e) on chains [[a1,a2,a3],[d],[e]]
        // with {a1,a2,a3} and {a1,d,e} declared.
        let cfg = config(&[3, 1, 1], &[[p(1, 1), p(1, 2), p(1, 3)], [p(1, 1), p(2, 1), p(3, 1)]]);
        let cat = catalog(&cfg);
        let target = DivisorClass::new(1, [(p(1, 1), 1), (p(1, 2), -1), (p(2, 1), -1), (p(3, 1), -1)]);
        let w = cat.is_effective(&target).unwrap();
        assert!(w.is_valid(&cat, &target));
        assert!(w.remainder.is_zero());
        let got: Vec<(String, u32)> = w.parts.iter().map(|(g, m)| (g.to_string(), *m)).collect();
        assert_eq!(
            got,
            vec![
                ("E1.1".to_string(), 2),
                ("E1.2".to_string(), 1),
                ("E1.3".to_string(), 1),
                ("L[1.1,2.1,3.1]".to_string(), 1),
            ]
        );
    }
}
