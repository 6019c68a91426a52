//! Independent re-check of a certificate.
//!
//! Everything is rederived from the chain lengths and the declared triples
//! with plain lattice arithmetic; the catalog, bundle and effectivity code
//! used to build certificates is not consulted.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use super::{Branch, Certificate};
use crate::bundles::{BundleBase, ConicBundle};
use crate::configuration::SurfaceConfig;
use crate::lattice::{DivisorClass, Lattice, PointRef};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

struct Surface {
    lattice: Lattice,
    lines: Vec<BTreeSet<PointRef>>,
    negative: Vec<DivisorClass>,
    anticanonical: DivisorClass,
}

/// Points that must be blown up before `p`: its predecessors on the chain.
fn closed(set: &BTreeSet<PointRef>) -> bool {
    set.iter().all(|p| p.slot == 1 || set.contains(&PointRef::new(p.chain, p.slot - 1)))
}

/// Slides each chain's points to the front of the chain.
fn slide(set: &BTreeSet<PointRef>) -> BTreeSet<PointRef> {
    let mut out = BTreeSet::new();
    for p in set {
        let taken = set.iter().filter(|q| q.chain == p.chain).count();
        for slot in 1..=taken {
            out.insert(PointRef::new(p.chain, slot));
        }
    }
    out
}

impl Surface {
    fn new(config: &SurfaceConfig) -> Self {
        let lattice = config.lattice().clone();
        let lines: Vec<BTreeSet<PointRef>> =
            config.lines().iter().map(|l| l.points().iter().copied().collect()).collect();
        let points = lattice.points();
        let mut negative = Vec::new();

        for &p in &points {
            let next = PointRef::new(p.chain, p.slot + 1);
            let mut cls = DivisorClass::exceptional(p);
            if lattice.contains(next) {
                cls -= &DivisorClass::exceptional(next);
            }
            negative.push(cls);
        }
        let mut line_sets: BTreeSet<BTreeSet<PointRef>> = lines.iter().cloned().collect();
        for (a, &p) in points.iter().enumerate() {
            for &q in &points[a + 1..] {
                let pair: BTreeSet<PointRef> = [p, q].into();
                if closed(&pair) && !lines.iter().any(|l| pair.is_subset(l)) {
                    line_sets.insert(pair);
                }
            }
        }
        for s in &line_sets {
            negative.push(DivisorClass::new(1, s.iter().map(|&p| (p, -1))));
        }
        if points.len() == 5 && lines.is_empty() {
            negative.push(DivisorClass::new(2, points.iter().map(|&p| (p, -1))));
        }
        let anticanonical = lattice.anticanonical();
        Self { lattice, lines, negative, anticanonical }
    }

    fn is_negative_curve(&self, cls: &DivisorClass) -> bool {
        self.negative.contains(cls)
    }

    fn nef(&self, cls: &DivisorClass) -> bool {
        cls.dot(&self.anticanonical) >= 0 && self.negative.iter().all(|g| cls.dot(g) >= 0)
    }

    fn collinear(&self, triple: &BTreeSet<PointRef>) -> bool {
        let slid = slide(triple);
        slid.len() == 3 && self.lines.contains(&slid)
    }

    fn in_good_position(&self, four: &BTreeSet<PointRef>) -> bool {
        four.iter().all(|skip| {
            let triple: BTreeSet<PointRef> = four.iter().copied().filter(|p| p != skip).collect();
            !self.collinear(&triple)
        })
    }

    fn good_position_sets(&self) -> Vec<BTreeSet<PointRef>> {
        let points = self.lattice.points();
        let n = points.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() != 4 {
                continue;
            }
            let set: BTreeSet<PointRef> = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| points[k]).collect();
            if closed(&set) && self.in_good_position(&set) {
                out.push(set);
            }
        }
        out.sort();
        out
    }
}

struct Checker {
    violations: Vec<Violation>,
}

impl Checker {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(Violation(msg()));
        }
    }
}

/// Returns every failed check; an empty list means the certificate holds.
pub fn verify(config: &SurfaceConfig, cert: &Certificate) -> Vec<Violation> {
    let surface = Surface::new(config);
    let mut c = Checker { violations: Vec::new() };

    for cls in std::iter::once(&cert.e)
        .chain(std::iter::once(&cert.e_witness.remainder))
        .chain(cert.e_witness.parts.iter().map(|(g, _)| &g.cls))
    {
        if surface.lattice.check(cls).is_err() {
            c.check(false, || format!("class {cls} is not in the lattice of this configuration"));
            return c.violations;
        }
    }

    let bundles = cert.branch.bundles();
    c.check(cert.k as usize == bundles.len(), || format!("k = {} but {} bundles", cert.k, bundles.len()));
    c.check(cert.reports.len() == bundles.len(), || {
        format!("{} criterion reports for {} bundles", cert.reports.len(), bundles.len())
    });

    let gp_sets = surface.good_position_sets();
    match &cert.branch {
        Branch::GoodPosition { f, g } => {
            c.check(f.degree == 1 && g.degree == 2, || "good-position branch needs degrees 1 and 2".into());
            if let (BundleBase::Chain(i), BundleBase::Points(four)) = (&f.base, &g.base) {
                let set: BTreeSet<PointRef> = four.iter().copied().collect();
                c.check(gp_sets.first() == Some(&set), || {
                    "degree-2 bundle is not on the first good-position subset".into()
                });
                let missing: Vec<PointRef> =
                    surface.lattice.points().into_iter().filter(|p| !set.contains(p)).collect();
                c.check(missing.len() == 1 && missing[0].chain == *i, || {
                    "degree-1 bundle is not on the chain of the remaining point".into()
                });
            }
        }
        Branch::Degenerate { f } => {
            c.check(f.degree == 1, || "degenerate branch needs a degree-1 bundle".into());
            c.check(gp_sets.is_empty(), || "a good-position subset exists".into());
        }
    }

    let mut expected_e = DivisorClass::zero();
    for (n, b) in bundles.iter().enumerate() {
        check_bundle(&surface, b, n, &mut c);
        let mut ram = DivisorClass::zero();
        for f in &b.singular_fibers {
            for comp in &f.components {
                ram += &(i64::from(comp.multiplicity) * &comp.curve.cls - comp.curve.cls.clone());
            }
        }
        expected_e += &(&(&surface.anticanonical - &(2 * &b.fiber_class)) + &ram);

        if let Some(report) = cert.reports.get(n) {
            let terms: Vec<Rational> = b
                .singular_fibers
                .iter()
                .map(|f| {
                    let m = f.components.iter().map(|x| x.multiplicity).max().unwrap_or(1);
                    Rational::one() - Rational::new(1, 2 * i64::from(m))
                })
                .collect();
            let total: Rational = terms.iter().copied().sum();
            c.check(report.terms == terms, || format!("bundle {n}: criterion terms do not match the fibres"));
            c.check(report.total == total, || format!("bundle {n}: criterion total should be {total}"));
            c.check(report.pass == (total <= Rational::from_integer(2)), || {
                format!("bundle {n}: pass flag disagrees with total")
            });
            c.check(total <= Rational::from_integer(2), || format!("bundle {n}: criterion fails"));
        }
    }
    c.check(cert.e == expected_e, || format!("E should be {expected_e}, certificate says {}", cert.e));

    let mut sum = cert.e_witness.remainder.clone();
    for (g, m) in &cert.e_witness.parts {
        c.check(*m > 0, || format!("witness multiplicity of {} is zero", g.cls));
        c.check(surface.is_negative_curve(&g.cls), || format!("witness part {} is not a negative curve", g.cls));
        sum += &(i64::from(*m) * &g.cls);
    }
    c.check(sum == cert.e, || format!("witness sums to {sum}, not E"));
    c.check(surface.nef(&cert.e_witness.remainder), || {
        format!("witness remainder {} is not nef", cert.e_witness.remainder)
    });
    c.violations
}

fn check_bundle(surface: &Surface, b: &ConicBundle, n: usize, c: &mut Checker) {
    let f = &b.fiber_class;
    let d = f.h();
    c.check(f.square() == 0, || format!("bundle {n}: F^2 != 0"));
    c.check(f.dot(&surface.anticanonical) == 2, || format!("bundle {n}: -K.F != 2"));
    c.check(b.degree == d && (d == 1 || d == 2), || format!("bundle {n}: bad degree"));
    let base: BTreeSet<PointRef> = f.terms().filter(|(_, v)| *v == -1).map(|(p, _)| p).collect();
    c.check(f.terms().all(|(_, v)| v == -1) && base.len() as i64 == d * d, || {
        format!("bundle {n}: F is not d·H minus d² distinct points")
    });
    match &b.base {
        BundleBase::Chain(i) => {
            c.check(d == 1 && base == BTreeSet::from([PointRef::new(*i, 1)]), || {
                format!("bundle {n}: fibre class does not match chain {i}")
            });
        }
        BundleBase::Points(four) => {
            let set: BTreeSet<PointRef> = four.iter().copied().collect();
            c.check(d == 2 && base == set, || format!("bundle {n}: fibre class does not match its points"));
            c.check(closed(&set) && surface.in_good_position(&set), || {
                format!("bundle {n}: points are not minimal in good position")
            });
        }
    }

    let mut seen: Vec<DivisorClass> = Vec::new();
    for (k, fiber) in b.singular_fibers.iter().enumerate() {
        let mut total = DivisorClass::zero();
        for comp in &fiber.components {
            let g = &comp.curve.cls;
            c.check(surface.is_negative_curve(g), || format!("bundle {n} fibre {k}: {g} is not a negative curve"));
            c.check(g.dot(f) == 0, || format!("bundle {n} fibre {k}: {g} is not vertical"));
            c.check(comp.multiplicity >= 1, || format!("bundle {n} fibre {k}: zero multiplicity"));
            c.check(!seen.contains(g), || format!("bundle {n}: {g} appears in two fibres"));
            seen.push(g.clone());
            total += &(i64::from(comp.multiplicity) * g);
        }
        c.check(total == *f, || format!("bundle {n} fibre {k}: components sum to {total}"));

        let size = fiber.components.len();
        let mut edges = BTreeSet::new();
        for x in 0..size {
            for y in x + 1..size {
                let meet = fiber.components[x].curve.cls.dot(&fiber.components[y].curve.cls);
                c.check(meet <= 1, || format!("bundle {n} fibre {k}: components meet {meet} times"));
                if meet > 0 {
                    edges.insert((x, y));
                }
            }
        }
        let listed: BTreeSet<(usize, usize)> =
            fiber.nodes.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
        c.check(listed == edges && listed.len() == fiber.nodes.len(), || {
            format!("bundle {n} fibre {k}: node list is wrong")
        });
        let mut reach = vec![false; size];
        if size > 0 {
            reach[0] = true;
            for _ in 0..size {
                for &(x, y) in &edges {
                    if reach[x] || reach[y] {
                        reach[x] = true;
                        reach[y] = true;
                    }
                }
            }
        }
        c.check(size >= 2 && reach.iter().all(|&r| r), || format!("bundle {n} fibre {k}: not connected"));
        let m = fiber.components.iter().map(|x| x.multiplicity).max().unwrap_or(0);
        c.check(fiber.m == m && fiber.reduced == (m == 1), || format!("bundle {n} fibre {k}: wrong M"));
    }
    for g in &surface.negative {
        if g.dot(f) == 0 {
            c.check(seen.contains(g), || format!("bundle {n}: vertical curve {g} is in no fibre"));
        }
    }
    for (x, gx) in seen.iter().enumerate() {
        for gy in &seen[x + 1..] {
            let same_fibre = b.singular_fibers.iter().any(|fb| {
                fb.components.iter().any(|q| q.curve.cls == *gx) && fb.components.iter().any(|q| q.curve.cls == *gy)
            });
            if !same_fibre {
                c.check(gx.dot(gy) == 0, || format!("bundle {n}: {gx} and {gy} lie in different fibres but meet"));
            }
        }
    }
}
