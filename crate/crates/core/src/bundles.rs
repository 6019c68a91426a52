//! Conic bundle structures of degree 1 and 2 and their singular fibres.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::configuration::{is_minimal, SurfaceConfig};
use crate::curves::{Catalog, CurveKind, CurveRecord};
use crate::lattice::{DivisorClass, PointRef};
use crate::linalg::solve_unique;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BundleBase {
    /// Pencil of lines through the first point of a chain (1-based).
    Chain(usize),
    /// Pencil of conics through four points.
    Points([PointRef; 4]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBundle {
    pub degree: i64,
    pub base: BundleBase,
    pub fiber_class: DivisorClass,
    pub singular_fibers: Vec<Fiber>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberComponent {
    pub curve: CurveRecord,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub components: Vec<FiberComponent>,
    /// Largest multiplicity.
    pub m: u32,
    /// Index pairs of components meeting each other (each in one point).
    pub nodes: Vec<(usize, usize)>,
    pub reduced: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("fibre {0} has no positive integral multiplicities")]
    Multiplicities(usize),
    #[error("components {0} and {1} meet with multiplicity {2}")]
    NonTransversal(usize, usize, i64),
    #[error("dual graph of fibre {0} is not a tree")]
    NotATree(usize),
    #[error("vertical curves of fibres {0} and {1} meet")]
    FibresMeet(usize, usize),
}

impl Fiber {
    pub fn class(&self) -> DivisorClass {
        self.components
            .iter()
            .map(|c| i64::from(c.multiplicity) * &c.curve.cls)
            .sum()
    }

    /// Topological Euler characteristic of the fibre, a tree of rational curves.
    pub fn euler_characteristic(&self) -> i64 {
        2 * self.components.len() as i64 - self.nodes.len() as i64
    }

    pub fn line_components(&self) -> impl Iterator<Item = &FiberComponent> {
        self.components.iter().filter(|c| c.curve.is_line())
    }
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.multiplicity > 1 {
                write!(f, "{}", c.multiplicity)?;
            }
            write!(f, "{}", c.curve)?;
        }
        Ok(())
    }
}

impl ConicBundle {
    fn new(base: BundleBase) -> Self {
        let (degree, fiber_class) = match &base {
            BundleBase::Chain(i) => (1, DivisorClass::new(1, [(PointRef::new(*i, 1), -1)])),
            BundleBase::Points(four) => (2, DivisorClass::new(2, four.iter().map(|&p| (p, -1)))),
        };
        Self { degree, base, fiber_class, singular_fibers: Vec::new() }
    }

    /// Points blown up on the general fibre.
    pub fn base_points(&self) -> Vec<PointRef> {
        match &self.base {
            BundleBase::Chain(i) => vec![PointRef::new(*i, 1)],
            BundleBase::Points(four) => four.to_vec(),
        }
    }

    /// Computes and stores the singular fibres.
    pub fn populate(&mut self, catalog: &Catalog) -> Result<(), BundleError> {
        self.singular_fibers = singular_fibers(self, catalog)?;
        Ok(())
    }

    /// `Σ (a - 1)·Γ` over all fibre components.
    pub fn ramification_class(&self) -> DivisorClass {
        self.singular_fibers
            .iter()
            .flat_map(|f| &f.components)
            .map(|c| i64::from(c.multiplicity - 1) * &c.curve.cls)
            .sum()
    }

    /// `-K - 2F + R`.
    pub fn relative_tangent_class(&self, anticanonical: &DivisorClass) -> DivisorClass {
        anticanonical - &(2 * &self.fiber_class) + self.ramification_class()
    }

    /// For a degree-1 bundle, the points other than the base point that the
    /// line component of `fiber` passes through.
    pub fn fiber_points(&self, fiber: &Fiber) -> Option<BTreeSet<PointRef>> {
        let BundleBase::Chain(i) = self.base else {
            return None;
        };
        let base = PointRef::new(i, 1);
        fiber.line_components().find_map(|c| match &c.curve.kind {
            CurveKind::Line(through) => Some(through.iter().copied().filter(|&p| p != base).collect()),
            _ => None,
        })
    }
}

impl fmt::Display for ConicBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            BundleBase::Chain(i) => write!(f, "degree 1 at chain {i}: F = {}", self.fiber_class),
            BundleBase::Points(_) => write!(f, "degree 2: F = {}", self.fiber_class),
        }
    }
}

/// One bundle per chain, fibre class `H - C(i,1)`, in chain order.
pub fn degree1_bundles(config: &SurfaceConfig) -> Vec<ConicBundle> {
    (1..=config.chain_count()).map(|i| ConicBundle::new(BundleBase::Chain(i))).collect()
}

/// Minimal 4-subsets in good position, in lexicographic order.
pub fn good_position_subsets(config: &SurfaceConfig) -> Vec<[PointRef; 4]> {
    let points = config.points();
    let n = points.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let four = [points[a], points[b], points[c], points[d]];
                    let set: BTreeSet<PointRef> = four.iter().copied().collect();
                    if is_minimal(&set) && config.good_position(&four) {
                        out.push(four);
                    }
                }
            }
        }
    }
    out
}

/// One bundle per minimal good-position 4-subset, fibre class `2H - Σ C`.
pub fn degree2_bundles(config: &SurfaceConfig) -> Vec<ConicBundle> {
    good_position_subsets(config)
        .into_iter()
        .map(|four| ConicBundle::new(BundleBase::Points(four)))
        .collect()
}

/// Degree-1 then degree-2 bundles of the catalog's configuration, with
/// singular fibres populated.
pub fn all_bundles(catalog: &Catalog) -> Result<Vec<ConicBundle>, BundleError> {
    let config = catalog.config();
    let mut out = degree1_bundles(config);
    out.extend(degree2_bundles(config));
    for b in &mut out {
        b.populate(catalog)?;
    }
    Ok(out)
}

/// Groups the vertical catalog curves into connected fibres and solves for
/// their multiplicities.
pub fn singular_fibers(bundle: &ConicBundle, catalog: &Catalog) -> Result<Vec<Fiber>, BundleError> {
    let fc = &bundle.fiber_class;
    let vertical: Vec<&CurveRecord> = catalog.curves().iter().filter(|g| g.cls.dot(fc) == 0).collect();

    let mut group = vec![usize::MAX; vertical.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..vertical.len() {
        if group[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![start];
        group[start] = id;
        let mut k = 0;
        while k < members.len() {
            let cur = members[k];
            for other in 0..vertical.len() {
                if group[other] == usize::MAX && vertical[cur].cls.dot(&vertical[other].cls) > 0 {
                    group[other] = id;
                    members.push(other);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        groups.push(members);
    }

    let points = catalog.config().points();
    let dense = |d: &DivisorClass| -> Vec<i64> {
        std::iter::once(d.h()).chain(points.iter().map(|&p| d.coeff(p))).collect()
    };
    let target = dense(fc);

    let mut fibers = Vec::with_capacity(groups.len());
    for (id, members) in groups.iter().enumerate() {
        let columns: Vec<Vec<i64>> = members.iter().map(|&k| dense(&vertical[k].cls)).collect();
        let solution = solve_unique(&columns, &target).ok_or(BundleError::Multiplicities(id))?;
        let mut components = Vec::with_capacity(members.len());
        for (&k, a) in members.iter().zip(&solution) {
            if !a.is_integer() || *a < Rational::one() || a.is_zero() {
                return Err(BundleError::Multiplicities(id));
            }
            let multiplicity = u32::try_from(a.to_integer()).map_err(|_| BundleError::Multiplicities(id))?;
            components.push(FiberComponent { curve: vertical[k].clone(), multiplicity });
        }
        let mut nodes = Vec::new();
        for x in 0..components.len() {
            for y in x + 1..components.len() {
                let meet = components[x].curve.cls.dot(&components[y].curve.cls);
                if meet > 1 {
                    return Err(BundleError::NonTransversal(members[x], members[y], meet));
                }
                if meet == 1 {
                    nodes.push((x, y));
                }
            }
        }
        if nodes.len() + 1 != components.len() {
            return Err(BundleError::NotATree(id));
        }
        let m = components.iter().map(|c| c.multiplicity).max().unwrap_or(1);
        let reduced = m == 1;
        fibers.push(Fiber { components, m, nodes, reduced });
    }

    for a in 0..fibers.len() {
        for b in a + 1..fibers.len() {
            let meet = fibers[a]
                .components
                .iter()
                .any(|x| fibers[b].components.iter().any(|y| x.curve.cls.dot(&y.curve.cls) != 0));
            if meet {
                return Err(BundleError::FibresMeet(a, b));
            }
        }
    }
    Ok(fibers)
}

use crate::Rational;
