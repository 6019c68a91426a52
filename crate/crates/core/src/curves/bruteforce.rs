//! Exhaustive effectivity search, kept independent of the greedy peeling.
//!
//! A class `D` is effective iff `D = P + X + R` where `P` is a non-negative
//! combination of lines and the conic, `X` one of exceptional curves and `R`
//! is nef. Since `H` is nef, `h(P) ≤ h(D)`, which bounds `P`. A nef `R` has
//! coefficients `-h(R) ≤ c(R) ≤ 0` that do not decrease along a chain, and
//! `X = D - P - R` lies in the monoid of exceptional curves iff every prefix
//! sum of its coefficients along every chain is non-negative. The search runs
//! over all such `P` and `R`.

use std::collections::HashMap;

use super::Catalog;
use crate::lattice::{DivisorClass, PointRef};

/// Default weight budget for [`is_effective_bruteforce`]: the weight of the
/// class itself, which bounds the weight of any curve part.
pub fn default_bound(catalog: &Catalog, cls: &DivisorClass) -> i64 {
    cls.dot(catalog.weight())
}

/// True iff `cls` is a nef class plus catalog curves whose total weight is
/// at most `bound`.
pub fn is_effective_bruteforce(catalog: &Catalog, cls: &DivisorClass, bound: i64) -> bool {
    BruteForce::new(catalog).is_effective_within(cls, bound)
}

/// Memoizing search; reuse one instance to answer many queries against the
/// same catalog.
pub struct BruteForce {
    points: Vec<PointRef>,
    /// Lines and conic: dense class and weight.
    positive: Vec<(Vec<i64>, i64)>,
    /// Dense coordinate ranges of the chains.
    chains: Vec<std::ops::Range<usize>>,
    /// Weight of each exceptional curve, by dense coordinate.
    chain_weight: Vec<i64>,
    /// Everything a nef class must pair non-negatively with.
    nef_tests: Vec<Vec<i64>>,
    /// Nef classes: `-K` and the degree-one fibre classes. Every effective
    /// class pairs non-negatively with them.
    necessary: Vec<Vec<i64>>,
    memo: HashMap<Vec<i64>, Option<i64>>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
}

impl BruteForce {
    pub fn new(catalog: &Catalog) -> Self {
        let points = catalog.config().points();
        let dense = |d: &DivisorClass| -> Vec<i64> {
            std::iter::once(d.h()).chain(points.iter().map(|&p| d.coeff(p))).collect()
        };
        let positive = catalog
            .curves()
            .iter()
            .filter(|g| g.cls.h() > 0)
            .map(|g| (dense(&g.cls), g.cls.dot(catalog.weight())))
            .collect();
        let mut chains = Vec::new();
        let mut start = 1;
        for &len in catalog.config().chain_lengths() {
            chains.push(start..start + len);
            start += len;
        }
        let mut chain_weight = vec![0; points.len() + 1];
        for g in catalog.curves().iter().filter(|g| g.cls.h() == 0) {
            let k = dense(&g.cls).iter().position(|&v| v == 1).expect("exceptional curve");
            chain_weight[k] = g.cls.dot(catalog.weight());
        }
        let mut nef_tests: Vec<Vec<i64>> = catalog.curves().iter().map(|g| dense(&g.cls)).collect();
        nef_tests.push(dense(catalog.anticanonical()));
        let mut necessary = vec![dense(catalog.anticanonical())];
        for &p in points.iter().filter(|p| p.slot == 1) {
            necessary.push(dense(&(&DivisorClass::hyperplane() - &DivisorClass::exceptional(p))));
        }
        Self {
            points,
            positive,
            chains,
            chain_weight,
            nef_tests,
            necessary,
            memo: HashMap::new(),
        }
    }

    pub fn is_effective(&mut self, cls: &DivisorClass) -> bool {
        self.search(cls, false).is_some()
    }

    pub fn is_effective_within(&mut self, cls: &DivisorClass, bound: i64) -> bool {
        matches!(self.min_curve_weight(cls), Some(w) if w <= bound)
    }

    /// Least total weight of the curve part over all decompositions of `cls`
    /// as curves plus a nef class; `None` when there is none.
    pub fn min_curve_weight(&mut self, cls: &DivisorClass) -> Option<i64> {
        self.search(cls, true)
    }

    fn search(&mut self, cls: &DivisorClass, exhaustive: bool) -> Option<i64> {
        let d: Vec<i64> = std::iter::once(cls.h())
            .chain(self.points.iter().map(|&p| cls.coeff(p)))
            .collect();
        if d[0] < 0 || self.necessary.iter().any(|n| dot(&d, n) < 0) {
            return None;
        }
        let mut best = None;
        self.positive_part(0, d, 0, exhaustive, &mut best);
        best
    }

    fn positive_part(&mut self, from: usize, rest: Vec<i64>, spent: i64, exhaustive: bool, best: &mut Option<i64>) {
        if let Some(w) = self.chain_part(&rest) {
            let total = spent + w;
            *best = Some(best.map_or(total, |b: i64| b.min(total)));
        }
        for idx in from..self.positive.len() {
            if best.is_some() && !exhaustive {
                return;
            }
            let (v, w) = &self.positive[idx];
            if v[0] > rest[0] {
                continue;
            }
            let w = *w;
            let next: Vec<i64> = rest.iter().zip(v).map(|(a, b)| a - b).collect();
            self.positive_part(idx, next, spent + w, exhaustive, best);
        }
    }

    /// Least weight of an exceptional part `X` with `target - X` nef.
    fn chain_part(&mut self, target: &[i64]) -> Option<i64> {
        if let Some(&known) = self.memo.get(target) {
            return known;
        }
        let mut remainder = vec![0; target.len()];
        remainder[0] = target[0];
        let mut best = None;
        self.assign_chain(0, target, &mut remainder, 0, &mut best);
        self.memo.insert(target.to_vec(), best);
        best
    }

    fn assign_chain(
        &self,
        chain: usize,
        target: &[i64],
        remainder: &mut Vec<i64>,
        spent: i64,
        best: &mut Option<i64>,
    ) {
        if chain == self.chains.len() {
            if self.nef_tests.iter().all(|t| dot(remainder, t) >= 0) {
                *best = Some(best.map_or(spent, |b: i64| b.min(spent)));
            }
            return;
        }
        let range = self.chains[chain].clone();
        self.assign_slot(chain, range.start, -target[0], 0, target, remainder, spent, best);
    }

    /// Chooses `c(R)` at dense coordinate `k`, no smaller than `floor`, with
    /// `prefix` the running prefix sum of `X` along the chain.
    #[allow(clippy::too_many_arguments)]
    fn assign_slot(
        &self,
        chain: usize,
        k: usize,
        floor: i64,
        prefix: i64,
        target: &[i64],
        remainder: &mut Vec<i64>,
        spent: i64,
        best: &mut Option<i64>,
    ) {
        if k == self.chains[chain].end {
            self.assign_chain(chain + 1, target, remainder, spent, best);
            return;
        }
        for c in floor..=0 {
            let m = prefix + target[k] - c;
            if m < 0 {
                break;
            }
            remainder[k] = c;
            let cost = spent + m * self.chain_weight[k];
            self.assign_slot(chain, k + 1, c, m, target, remainder, cost, best);
        }
    }
}
