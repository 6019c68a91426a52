mod common;

use std::collections::BTreeSet;

use anef_core::bundles::{all_bundles, degree1_bundles, degree2_bundles, BundleBase, ConicBundle};
use anef_core::configuration::{enumerate_configs, SurfaceConfig};
use anef_core::curves::{catalog, CurveKind};
use anef_core::lattice::{DivisorClass, PointRef};
use common::*;

fn every_config() -> Vec<SurfaceConfig> {
    let mut out = enumerate_configs(4);
    out.extend(enumerate_configs(5));
    out
}

fn populated(cfg: &SurfaceConfig) -> Vec<ConicBundle> {
    all_bundles(&catalog(cfg)).expect("fibres")
}

fn subsets(points: &[PointRef], size: usize) -> Vec<Vec<PointRef>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &p) in points.iter().enumerate() {
        for mut rest in subsets(&points[k + 1..], size - 1) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

#[test]
fn fibre_classes_are_exactly_the_nef_classes_of_that_shape() {
    for cfg in every_config() {
        let cat = catalog(&cfg);
        let bundles: Vec<ConicBundle> = degree1_bundles(&cfg).into_iter().chain(degree2_bundles(&cfg)).collect();
        let listed: Vec<DivisorClass> = bundles.iter().map(|b| b.fiber_class.clone()).collect();
        let distinct: BTreeSet<DivisorClass> = listed.iter().cloned().collect();
        assert_eq!(distinct.len(), listed.len());

        let mut shaped = BTreeSet::new();
        for d in 1..=2i64 {
            for s in subsets(&cfg.points(), (d * d) as usize) {
                let cls = DivisorClass::new(d, s.iter().map(|&q| (q, -1)));
                assert_eq!(cls.square(), 0);
                assert_eq!(cls.dot(&cfg.anticanonical()), 2);
                if cat.is_nef(&cls) {
                    shaped.insert(cls);
                }
            }
        }
        assert_eq!(distinct, shaped, "{:?} {:?}", cfg.chain_lengths(), cfg.lines());
        for b in &bundles {
            assert_eq!(b.fiber_class.dot(&DivisorClass::hyperplane()), b.degree);
        }
    }
}

#[test]
fn fibre_sanity_everywhere() {
    for cfg in every_config() {
        let cat = catalog(&cfg);
        for b in populated(&cfg) {
            let vertical: BTreeSet<DivisorClass> =
                cat.curves().iter().filter(|g| g.cls.dot(&b.fiber_class) == 0).map(|g| g.cls.clone()).collect();
            let mut covered = BTreeSet::new();
            for f in &b.singular_fibers {
                assert_eq!(f.class(), b.fiber_class);
                assert!(f.m <= 2, "{b}: {f}");
                assert_eq!(f.nodes.len() + 1, f.components.len());
                for c in &f.components {
                    assert_eq!(c.curve.cls.dot(&b.fiber_class), 0);
                    assert!(covered.insert(c.curve.cls.clone()));
                }
            }
            assert_eq!(covered, vertical);
            for (x, f) in b.singular_fibers.iter().enumerate() {
                for g in &b.singular_fibers[x + 1..] {
                    for a in &f.components {
                        for c in &g.components {
                            assert_eq!(a.curve.cls.dot(&c.curve.cls), 0);
                        }
                    }
                }
            }
            let r = b.ramification_class();
            assert_eq!(r.dot(&b.fiber_class), 0);
            assert_eq!(b.relative_tangent_class(&cfg.anticanonical()).dot(&b.fiber_class), 2);
        }
    }
}

#[test]
fn euler_characteristic_everywhere() {
    for cfg in every_config() {
        for b in populated(&cfg) {
            let sum: i64 = b.singular_fibers.iter().map(|f| f.euler_characteristic() - 2).sum();
            assert_eq!(sum, cfg.point_count() as i64 - 1, "{b}");
        }
    }
}

#[test]
fn degree_one_fibre_points() {
    for cfg in enumerate_configs(5) {
        for b in populated(&cfg).into_iter().filter(|b| b.degree == 1) {
            let BundleBase::Chain(i) = b.base else { unreachable!() };
            let mut total = 0;
            let mut seen = BTreeSet::new();
            for f in &b.singular_fibers {
                let pts = b.fiber_points(f).expect("a line component");
                assert!(!pts.is_empty());
                assert!(f.m as usize <= pts.len() && pts.len() <= 2, "{b}: {f}");
                // F - l̂ is the sum of the total transforms over P(F).
                let line = f.line_components().next().unwrap();
                let rest = &b.fiber_class - &line.curve.cls;
                assert_eq!(rest, DivisorClass::new(0, pts.iter().map(|&q| (q, 1))));
                for q in &pts {
                    assert!(seen.insert(*q), "two lines through p({i},1) share {q}");
                }
                total += pts.len();
            }
            assert!(total <= 4);
            // A point missed by every singular line is never first on its chain.
            let missed: Vec<PointRef> =
                cfg.points().into_iter().filter(|q| *q != PointRef::new(i, 1) && !seen.contains(q)).collect();
            assert!(missed.iter().all(|q| q.slot > 1), "{b}");
            assert_eq!(total + missed.len(), 4);
        }
    }
}

#[test]
fn four_point_degree_two_bundles() {
    for cfg in enumerate_configs(4) {
        for b in populated(&cfg).into_iter().filter(|b| b.degree == 2) {
            let fibres = &b.singular_fibers;
            assert!(fibres.len() <= 3, "{b}");
            for f in fibres {
                assert!(f.m <= 2);
                let double_line = f.line_components().any(|c| c.multiplicity == 2);
                assert_eq!(f.m == 2, double_line, "{b}: {f}");
                assert!(f.components.iter().all(|c| c.curve.kind != CurveKind::Conic));
            }
            if fibres.iter().any(|f| f.m == 2) {
                assert_eq!(fibres.iter().filter(|f| f.m == 2).count(), 1);
                assert!(fibres.len() <= 2);
            }
        }
    }
}

#[test]
fn degree_two_fibre_class_is_nef() {
    for cfg in every_config() {
        let cat = catalog(&cfg);
        for b in degree2_bundles(&cfg) {
            assert!(cat.curves().iter().all(|g| g.cls.dot(&b.fiber_class) >= 0));
        }
    }
}

#[test]
fn degree_two_bundles_pull_back_from_four_points() {
    for cfg in enumerate_configs(5) {
        for b in degree2_bundles(&cfg) {
            let BundleBase::Points(four) = b.base else { unreachable!() };
            let keep: BTreeSet<PointRef> = four.iter().copied().collect();
            let sub = cfg.restrict(&keep).expect("minimal subset");
            let pulled: Vec<DivisorClass> =
                degree2_bundles(&sub.config).iter().map(|s| sub.pullback(&s.fiber_class)).collect();
            assert_eq!(pulled, vec![b.fiber_class.clone()]);
        }
    }
}

#[test]
fn reference_fibres() {
    let bundles = populated(&gen5());
    let at_e = &bundles[4];
    let fibres: Vec<String> = at_e.singular_fibers.iter().map(|f| f.to_string()).collect();
    assert_eq!(
        fibres,
        vec!["E1.1 + L[1.1,5.1]", "E2.1 + L[2.1,5.1]", "E3.1 + L[3.1,5.1]", "E4.1 + L[4.1,5.1]"]
    );

    let col3 = populated(&col3());
    assert_eq!(col3.iter().filter(|b| b.degree == 2).count(), 3);

    let ch3 = populated(&ch3());
    assert!(ch3.iter().all(|b| b.degree == 1));
    assert_eq!(ch3[0].ramification_class(), DivisorClass::exceptional(p(1, 3)));
}
