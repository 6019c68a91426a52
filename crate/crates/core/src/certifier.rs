//! The pseudo-effectivity criterion and almost-nefness certificates.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bundles::{degree1_bundles, degree2_bundles, BundleError, ConicBundle, Fiber};
use crate::configuration::SurfaceConfig;
use crate::curves::{catalog, Catalog, EffectivityWitness};
use crate::lattice::{DivisorClass, PointRef};
use crate::Rational;

mod verify;

pub use verify::{verify, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub terms: Vec<Rational>,
    pub total: Rational,
    pub pass: bool,
}

/// Coefficient `1 - 1/(2M)` of one singular fibre.
pub fn fiber_term(m: u32) -> Rational {
    Rational::one() - Rational::new(1, 2 * i64::from(m))
}

pub fn criterion(bundle: &ConicBundle) -> CriterionReport {
    let terms: Vec<Rational> = bundle.singular_fibers.iter().map(|f| fiber_term(f.m)).collect();
    let total = terms.iter().copied().sum::<Rational>();
    let pass = total <= Rational::from_integer(2);
    CriterionReport { terms, total, pass }
}

/// Coefficients of the restricted tautological class on one fibre of the
/// blown-up model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberZeta {
    /// `1 - a/(2M)` per component, in component order.
    pub components: Vec<Rational>,
    /// `1 - (a + a')/(2M)` per node, in node order.
    pub nodes: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaDecomposition {
    pub fibers: Vec<FiberZeta>,
    /// Coefficient of the pulled-back general fibre.
    pub leftover: Rational,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("certificates need five points, got {0}")]
    PointCount(usize),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("negative coefficient {coefficient} in fibre {fiber}")]
    NegativeCoefficient { fiber: usize, coefficient: Rational },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

fn fiber_zeta(fiber: &Fiber) -> FiberZeta {
    let two_m = Rational::from_integer(2 * i64::from(fiber.m));
    let a = |k: usize| Rational::from_integer(i64::from(fiber.components[k].multiplicity));
    FiberZeta {
        components: (0..fiber.components.len()).map(|k| Rational::one() - a(k) / two_m).collect(),
        nodes: fiber.nodes.iter().map(|&(x, y)| Rational::one() - (a(x) + a(y)) / two_m).collect(),
    }
}

pub fn zeta_decomposition(bundle: &ConicBundle) -> Result<ZetaDecomposition, CertifyError> {
    let fibers: Vec<FiberZeta> = bundle.singular_fibers.iter().map(fiber_zeta).collect();
    for (k, f) in fibers.iter().enumerate() {
        if let Some(&c) = f.components.iter().chain(&f.nodes).find(|c| **c < Rational::zero()) {
            return Err(CertifyError::NegativeCoefficient { fiber: k, coefficient: c });
        }
    }
    let leftover = Rational::from_integer(2) - criterion(bundle).total;
    Ok(ZetaDecomposition { fibers, leftover })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    /// A degree-1 bundle `f` through the chain of the point left out by the
    /// degree-2 bundle `g`.
    GoodPosition { f: ConicBundle, g: ConicBundle },
    Degenerate { f: ConicBundle },
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::GoodPosition { .. } => "good_position",
            Branch::Degenerate { .. } => "degenerate",
        }
    }

    pub fn bundles(&self) -> Vec<&ConicBundle> {
        match self {
            Branch::GoodPosition { f, g } => vec![f, g],
            Branch::Degenerate { f } => vec![f],
        }
    }
}

/// Class-level data for a divisor in `|kζ - π*E|` with `E` effective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub branch: Branch,
    pub k: u32,
    pub e: DivisorClass,
    pub e_witness: EffectivityWitness,
    pub reports: Vec<CriterionReport>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "branch: {}", self.branch.name())?;
        writeln!(f, "k = {}", self.k)?;
        for (b, r) in self.branch.bundles().iter().zip(&self.reports) {
            let terms: Vec<String> = r.terms.iter().map(|t| t.to_string()).collect();
            writeln!(f, "{b}; criterion [{}] total {} {}", terms.join(", "), r.total, if r.pass { "pass" } else { "fail" })?;
        }
        writeln!(f, "E = {}", self.e)?;
        write!(f, "E = {}", self.e_witness)
    }
}

/// The point outside a 4-subset.
pub fn complementary_point(config: &SurfaceConfig, four: &[PointRef; 4]) -> Option<PointRef> {
    config.points().into_iter().find(|p| !four.contains(p))
}

pub fn certify(config: &SurfaceConfig) -> Result<Certificate, CertifyError> {
    if config.point_count() != 5 {
        return Err(CertifyError::PointCount(config.point_count()));
    }
    let cat = catalog(config);
    let anticanonical = config.anticanonical();

    if let Some(mut g) = degree2_bundles(config).into_iter().next() {
        let crate::bundles::BundleBase::Points(four) = g.base else {
            unreachable!("degree-2 bundles are based on four points")
        };
        let q = complementary_point(config, &four).expect("five points");
        let mut f = degree1_bundles(config).swap_remove(q.chain - 1);
        f.populate(&cat)?;
        g.populate(&cat)?;
        let e = f.relative_tangent_class(&anticanonical) + g.relative_tangent_class(&anticanonical);
        let reports = vec![criterion(&f), criterion(&g)];
        return assemble(&cat, Branch::GoodPosition { f, g }, 2, e, reports);
    }

    for mut f in degree1_bundles(config) {
        f.populate(&cat)?;
        let report = criterion(&f);
        let t = f.relative_tangent_class(&anticanonical);
        if report.pass && cat.is_effective(&t).is_some() {
            return assemble(&cat, Branch::Degenerate { f }, 1, t, vec![report]);
        }
    }
    Err(CertifyError::TheoremViolation(
        "no degree-1 bundle has an effective relative tangent class".into(),
    ))
}

fn assemble(
    cat: &Catalog,
    branch: Branch,
    k: u32,
    e: DivisorClass,
    reports: Vec<CriterionReport>,
) -> Result<Certificate, CertifyError> {
    if let Some(r) = reports.iter().find(|r| !r.pass) {
        return Err(CertifyError::TheoremViolation(format!("criterion total {} exceeds 2", r.total)));
    }
    let e_witness = cat
        .is_effective(&e)
        .ok_or_else(|| CertifyError::TheoremViolation(format!("E = {e} is not effective")))?;
    Ok(Certificate { branch, k, e, e_witness, reports })
}
