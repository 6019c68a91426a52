//! Combinatorial model of a simple surface: chains of infinitely near
//! points plus declared generalized-collinear triples.
//!
//! Collinearity is input data. Every geometric incidence used downstream is
//! derived from the declared triples through minimization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::lattice::{DivisorClass, Lattice, PointRef};

/// Supported point counts: degree-5 and degree-4 weak Del Pezzo surfaces.
pub const POINT_COUNTS: [usize; 2] = [4, 5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("point count must be 4 or 5, found {0}")]
    PointCount(usize),
    #[error("chain {0} is empty")]
    EmptyChain(usize),
    #[error("point name {0:?} is used more than once")]
    DuplicateName(String),
    #[error("point {0} does not exist")]
    InvalidPoint(PointRef),
    #[error("line {0} repeats a point")]
    RepeatedPoint(LineDecl),
    #[error("non-minimal declaration {0}: occupied slots of each chain must be a prefix")]
    NonMinimalLine(LineDecl),
    #[error("lines {0} and {1} share a pair of points")]
    LinesSharePair(LineDecl, LineDecl),
    #[error("line {0} is declared twice")]
    DuplicateLine(LineDecl),
    #[error("point set {0:?} is not minimal")]
    NonMinimalSubset(Vec<PointRef>),
}

/// All rule violations found in one configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid configuration: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationErrors(pub Vec<ConfigError>);

/// A declared generalized-collinear triple, stored sorted.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineDecl([PointRef; 3]);

impl LineDecl {
    pub fn new(mut points: [PointRef; 3]) -> Self {
        points.sort();
        Self(points)
    }

    pub fn points(&self) -> &[PointRef; 3] {
        &self.0
    }

    pub fn contains(&self, p: PointRef) -> bool {
        self.0.contains(&p)
    }

    fn shared(&self, other: &LineDecl) -> usize {
        self.0.iter().filter(|p| other.contains(**p)).count()
    }
}

impl fmt::Display for LineDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{{{a}, {b}, {c}}}")
    }
}

/// Unvalidated input: chains of point names plus triples of point refs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigDraft {
    pub chains: Vec<Vec<String>>,
    pub lines: Vec<[PointRef; 3]>,
}

impl ConfigDraft {
    /// A draft whose chains have the given lengths and generated names.
    pub fn with_lengths(lengths: &[usize], lines: Vec<[PointRef; 3]>) -> Self {
        let chains = lengths
            .iter()
            .enumerate()
            .map(|(i, &len)| (1..=len).map(|j| default_name(PointRef::new(i + 1, j))).collect())
            .collect();
        Self { chains, lines }
    }
}

pub fn default_name(p: PointRef) -> String {
    format!("p{}_{}", p.chain, p.slot)
}

/// A validated configuration. Construct through [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceConfig {
    names: Vec<Vec<String>>,
    lines: Vec<LineDecl>,
    lattice: Lattice,
}

/// The strict transform of a line of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRecord {
    /// Minimization of the defining pair.
    pub base: BTreeSet<PointRef>,
    /// Every point the line passes through in the generalized sense.
    pub through: BTreeSet<PointRef>,
    pub cls: DivisorClass,
}

impl LineRecord {
    pub fn self_intersection(&self) -> i64 {
        self.cls.square()
    }
}

pub fn validate(draft: &ConfigDraft) -> Result<SurfaceConfig, ValidationErrors> {
    let mut errors = Vec::new();
    let lengths: Vec<usize> = draft.chains.iter().map(Vec::len).collect();
    for (i, &len) in lengths.iter().enumerate() {
        if len == 0 {
            errors.push(ConfigError::EmptyChain(i + 1));
        }
    }
    let total: usize = lengths.iter().sum();
    if !POINT_COUNTS.contains(&total) {
        errors.push(ConfigError::PointCount(total));
    }
    let mut seen = BTreeSet::new();
    for name in draft.chains.iter().flatten() {
        if !seen.insert(name.as_str()) {
            errors.push(ConfigError::DuplicateName(name.clone()));
        }
    }
    let lattice = Lattice::new(lengths);

    let mut lines: Vec<LineDecl> = Vec::new();
    for raw in &draft.lines {
        let decl = LineDecl::new(*raw);
        let mut ok = true;
        for &p in raw {
            if !lattice.contains(p) {
                errors.push(ConfigError::InvalidPoint(p));
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        let distinct: BTreeSet<_> = raw.iter().copied().collect();
        if distinct.len() < 3 {
            errors.push(ConfigError::RepeatedPoint(decl));
            continue;
        }
        if !is_minimal(&distinct) {
            errors.push(ConfigError::NonMinimalLine(decl));
            continue;
        }
        if lines.contains(&decl) {
            errors.push(ConfigError::DuplicateLine(decl));
            continue;
        }
        lines.push(decl);
    }
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if a.shared(b) >= 2 {
                errors.push(ConfigError::LinesSharePair(*a, *b));
            }
        }
    }

    if !errors.is_empty() {
        return Err(ValidationErrors(errors));
    }
    lines.sort();
    Ok(SurfaceConfig {
        names: draft.chains.clone(),
        lines,
        lattice,
    })
}

/// Per chain, slides the occupied slots of `points` down to `1..=b`.
/// Duplicates are counted once.
pub fn minimize(points: impl IntoIterator<Item = PointRef>) -> BTreeSet<PointRef> {
    let distinct: BTreeSet<PointRef> = points.into_iter().collect();
    let mut per_chain: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &distinct {
        *per_chain.entry(p.chain).or_insert(0) += 1;
    }
    per_chain
        .into_iter()
        .flat_map(|(chain, count)| (1..=count).map(move |slot| PointRef::new(chain, slot)))
        .collect()
}

pub fn is_minimal(points: &BTreeSet<PointRef>) -> bool {
    minimize(points.iter().copied()) == *points
}

impl SurfaceConfig {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn chain_lengths(&self) -> &[usize] {
        self.lattice.chain_lengths()
    }

    /// Number of chains `r`.
    pub fn chain_count(&self) -> usize {
        self.names.len()
    }

    pub fn point_count(&self) -> usize {
        self.lattice.point_count()
    }

    /// `K² = 9 - (number of blown-up points)`.
    pub fn degree(&self) -> i64 {
        9 - self.point_count() as i64
    }

    pub fn points(&self) -> Vec<PointRef> {
        self.lattice.points()
    }

    pub fn chains(&self) -> &[Vec<String>] {
        &self.names
    }

    pub fn lines(&self) -> &[LineDecl] {
        &self.lines
    }

    pub fn contains(&self, p: PointRef) -> bool {
        self.lattice.contains(p)
    }

    pub fn name(&self, p: PointRef) -> Option<&str> {
        self.names.get(p.chain.checked_sub(1)?)?.get(p.slot.checked_sub(1)?).map(String::as_str)
    }

    pub fn point_named(&self, name: &str) -> Option<PointRef> {
        self.names.iter().enumerate().find_map(|(i, chain)| {
            chain
                .iter()
                .position(|n| n == name)
                .map(|j| PointRef::new(i + 1, j + 1))
        })
    }

    pub fn anticanonical(&self) -> DivisorClass {
        self.lattice.anticanonical()
    }

    pub fn to_draft(&self) -> ConfigDraft {
        ConfigDraft {
            chains: self.names.clone(),
            lines: self.lines.iter().map(|l| *l.points()).collect(),
        }
    }

    fn declared_containing(&self, points: &BTreeSet<PointRef>) -> Option<&LineDecl> {
        self.lines.iter().find(|l| points.iter().all(|&p| l.contains(p)))
    }

    /// The line through two distinct points, in the generalized sense.
    pub fn line_through(&self, p: PointRef, q: PointRef) -> LineRecord {
        debug_assert!(p != q, "a line needs two distinct points");
        let base = minimize([p, q]);
        let through: BTreeSet<PointRef> = match self.declared_containing(&base) {
            Some(decl) => decl.points().iter().copied().collect(),
            None => base.clone(),
        };
        let cls = DivisorClass::new(1, through.iter().map(|&t| (t, -1)));
        LineRecord { base, through, cls }
    }

    /// Whether `H - C(p) - C(q) - C(r)` is effective.
    pub fn collinear(&self, p: PointRef, q: PointRef, r: PointRef) -> bool {
        let min = minimize([p, q, r]);
        if min.len() < 3 {
            // H - 2C(p) - ... meets the nef class H - C(p) negatively.
            return false;
        }
        let mut it = min.iter().copied();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        let line = self.line_through(a, b);
        min.is_subset(&line.through)
    }

    /// No three of the four points are collinear.
    pub fn good_position(&self, four: &[PointRef; 4]) -> bool {
        (0..4).all(|skip| {
            let t: Vec<PointRef> = (0..4).filter(|&i| i != skip).map(|i| four[i]).collect();
            !self.collinear(t[0], t[1], t[2])
        })
    }

    /// Blows up only `keep`, which must be minimal.
    pub fn restrict(&self, keep: &BTreeSet<PointRef>) -> Result<Restriction, ValidationErrors> {
        if let Some(&p) = keep.iter().find(|p| !self.contains(**p)) {
            return Err(ValidationErrors(vec![ConfigError::InvalidPoint(p)]));
        }
        if !is_minimal(keep) {
            return Err(ValidationErrors(vec![ConfigError::NonMinimalSubset(
                keep.iter().copied().collect(),
            )]));
        }
        let mut chains = Vec::new();
        let mut embed = BTreeMap::new();
        for (i, names) in self.names.iter().enumerate() {
            let kept: Vec<String> = names
                .iter()
                .enumerate()
                .filter(|(j, _)| keep.contains(&PointRef::new(i + 1, j + 1)))
                .map(|(_, n)| n.clone())
                .collect();
            if kept.is_empty() {
                continue;
            }
            let new_chain = chains.len() + 1;
            for j in 1..=kept.len() {
                embed.insert(PointRef::new(new_chain, j), PointRef::new(i + 1, j));
            }
            chains.push(kept);
        }
        let back: BTreeMap<PointRef, PointRef> = embed.iter().map(|(&s, &o)| (o, s)).collect();
        let lines = self
            .lines
            .iter()
            .filter(|l| l.points().iter().all(|p| keep.contains(p)))
            .map(|l| l.points().map(|p| back[&p]))
            .collect();
        let config = validate(&ConfigDraft { chains, lines })?;
        Ok(Restriction { config, embed })
    }

    /// Canonical representative under relabeling of equal-length chains:
    /// chains sorted by decreasing length, then the lexicographically least
    /// sorted line list. Point names are regenerated.
    pub fn canonical(&self) -> SurfaceConfig {
        let mut order: Vec<usize> = (0..self.chain_count()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.chain_lengths()[i]));
        let lengths: Vec<usize> = order.iter().map(|&i| self.chain_lengths()[i]).collect();

        let mut best: Option<Vec<LineDecl>> = None;
        for perm in equal_length_permutations(&lengths) {
            // perm[k] = position (in `order`) placed at new chain k.
            let mut new_index = vec![0; self.chain_count()];
            for (k, &pos) in perm.iter().enumerate() {
                new_index[order[pos]] = k + 1;
            }
            let mut lines: Vec<LineDecl> = self
                .lines
                .iter()
                .map(|l| LineDecl::new(l.points().map(|p| PointRef::new(new_index[p.chain - 1], p.slot))))
                .collect();
            lines.sort();
            if best.as_ref().is_none_or(|b| lines < *b) {
                best = Some(lines);
            }
        }
        let lines = best.unwrap_or_default().iter().map(|l| *l.points()).collect();
        validate(&ConfigDraft::with_lengths(&lengths, lines))
            .expect("relabeling preserves validity")
    }
}

/// A sub-configuration together with its point embedding.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub config: SurfaceConfig,
    /// Sub-configuration point → point of the ambient configuration.
    pub embed: BTreeMap<PointRef, PointRef>,
}

impl Restriction {
    /// Pullback of a class along the partial contraction.
    pub fn pullback(&self, cls: &DivisorClass) -> DivisorClass {
        DivisorClass::new(cls.h(), cls.terms().map(|(p, v)| (self.embed[&p], v)))
    }
}

/// Permutations of `0..lengths.len()` that only move chains among equal
/// lengths. `lengths` must be sorted.
fn equal_length_permutations(lengths: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &len) in lengths.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if lengths[g[0]] == len => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut out = vec![Vec::new()];
    for g in groups {
        let mut next = Vec::new();
        for prefix in &out {
            for p in permutations(&g) {
                let mut v = prefix.clone();
                v.extend(p);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Integer partitions of `n` in decreasing-part order, largest first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every valid configuration with `n_points` points, one per isomorphism
/// class under chain relabeling. Ordered by chain shape (as in
/// [`partitions`]) then by line list.
pub fn enumerate_configs(n_points: usize) -> Vec<SurfaceConfig> {
    if !POINT_COUNTS.contains(&n_points) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for lengths in partitions(n_points) {
        let lattice = Lattice::new(lengths.clone());
        let points = lattice.points();
        let mut triples = Vec::new();
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                for c in b + 1..points.len() {
                    let set: BTreeSet<_> = [points[a], points[b], points[c]].into();
                    if is_minimal(&set) {
                        triples.push(LineDecl::new([points[a], points[b], points[c]]));
                    }
                }
            }
        }
        let mut seen: BTreeSet<Vec<LineDecl>> = BTreeSet::new();
        let mut shape_configs = Vec::new();
        for family in compatible_families(&triples) {
            let lines = family.iter().map(|l| *l.points()).collect();
            let Ok(config) = validate(&ConfigDraft::with_lengths(&lengths, lines)) else {
                continue;
            };
            let canon = config.canonical();
            if seen.insert(canon.lines.clone()) {
                shape_configs.push(canon);
            }
        }
        shape_configs.sort_by(|a, b| (a.lines.len(), &a.lines).cmp(&(b.lines.len(), &b.lines)));
        out.extend(shape_configs);
    }
    out
}

/// Subsets of `triples` in which no two members share two points.
fn compatible_families(triples: &[LineDecl]) -> Vec<Vec<LineDecl>> {
    fn go(start: usize, triples: &[LineDecl], cur: &mut Vec<LineDecl>, out: &mut Vec<Vec<LineDecl>>) {
        out.push(cur.clone());
        for i in start..triples.len() {
            if cur.iter().all(|l| l.shared(&triples[i]) < 2) {
                cur.push(triples[i]);
                go(i + 1, triples, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, triples, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(chain: usize, slot: usize) -> PointRef {
        PointRef::new(chain, slot)
    }

    fn config(lengths: &[usize], lines: &[[PointRef; 3]]) -> SurfaceConfig {
        validate(&ConfigDraft::with_lengths(lengths, lines.to_vec())).unwrap()
    }

    fn gen5() -> SurfaceConfig {
        config(&[1, 1, 1, 1, 1], &[])
    }

    fn col3() -> SurfaceConfig {
        config(&[1, 1, 1, 1, 1], &[[p(1, 1), p(2, 1), p(3, 1)]])
    }

    #[test]
    fn validate_generic_position() {
        let c = gen5();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.chain_count(), 5);
    }

    #[test]
    fn validate_rejects_shared_pair() {
        let draft = ConfigDraft::with_lengths(
            &[1, 1, 1, 1, 1],
            vec![[p(1, 1), p(2, 1), p(3, 1)], [p(1, 1), p(2, 1), p(4, 1)]],
        );
        let err = validate(&draft).unwrap_err();
        assert!(matches!(err.0.as_slice(), [ConfigError::LinesSharePair(..)]));
        assert!(err.to_string().contains("share a pair"));
    }

    #[test]
    fn validate_rejects_non_minimal_line() {
        let draft = ConfigDraft::with_lengths(&[2, 1, 1, 1], vec![[p(1, 2), p(2, 1), p(3, 1)]]);
        let err = validate(&draft).unwrap_err();
        assert!(matches!(err.0.as_slice(), [ConfigError::NonMinimalLine(_)]));
        assert!(err.to_string().contains("non-minimal declaration"));
    }

    #[test]
    fn validate_lists_every_violation() {
        let draft = ConfigDraft {
            chains: vec![vec!["a".into()], vec!["a".into()]],
            lines: vec![[p(1, 1), p(1, 1), p(2, 1)], [p(1, 1), p(9, 1), p(2, 1)]],
        };
        let err = validate(&draft).unwrap_err();
        assert!(err.0.contains(&ConfigError::PointCount(2)));
        assert!(err.0.contains(&ConfigError::DuplicateName("a".into())));
        assert!(err.0.contains(&ConfigError::InvalidPoint(p(9, 1))));
        assert!(err.0.iter().any(|e| matches!(e, ConfigError::RepeatedPoint(_))));
    }

    #[test]
    fn minimize_examples() {
        assert_eq!(minimize([p(1, 2), p(2, 1)]), [p(1, 1), p(2, 1)].into());
        assert_eq!(minimize([p(1, 3), p(1, 4)]), [p(1, 1), p(1, 2)].into());
        let already: BTreeSet<_> = [p(1, 1), p(1, 2), p(3, 1)].into();
        assert_eq!(minimize(already.iter().copied()), already);
    }

    #[test]
    fn line_through_examples() {
        let l = gen5().line_through(p(1, 1), p(2, 1));
        assert_eq!(l.through, [p(1, 1), p(2, 1)].into());
        assert_eq!(l.self_intersection(), -1);

        let l = col3().line_through(p(1, 1), p(2, 1));
        assert_eq!(l.through, [p(1, 1), p(2, 1), p(3, 1)].into());
        assert_eq!(l.self_intersection(), -2);

        let c = config(&[3, 1, 1], &[[p(1, 1), p(1, 2), p(1, 3)]]);
        let l = c.line_through(p(1, 2), p(1, 3));
        assert_eq!(l.base, [p(1, 1), p(1, 2)].into());
        assert_eq!(l.through, [p(1, 1), p(1, 2), p(1, 3)].into());
    }

    #[test]
    fn collinear_examples() {
        let g = gen5();
        assert!(!g.collinear(p(1, 1), p(2, 1), p(3, 1)));
        let c = col3();
        assert!(c.collinear(p(1, 1), p(2, 1), p(3, 1)));
        assert!(c.collinear(p(3, 1), p(1, 1), p(2, 1)));
        assert!(!c.collinear(p(1, 1), p(2, 1), p(4, 1)));

        let plain = config(&[2, 1, 1, 1], &[]);
        assert!(!plain.collinear(p(1, 1), p(1, 2), p(2, 1)));
        let tangent = config(&[2, 1, 1, 1], &[[p(1, 1), p(1, 2), p(2, 1)]]);
        assert!(tangent.collinear(p(1, 1), p(1, 2), p(2, 1)));
        assert!(!tangent.collinear(p(1, 1), p(1, 1), p(2, 1)));
    }

    #[test]
    fn good_position_examples() {
        let four = [p(1, 1), p(2, 1), p(3, 1), p(4, 1)];
        assert!(gen5().good_position(&four));
        assert!(!col3().good_position(&four));
        assert!(col3().good_position(&[p(2, 1), p(3, 1), p(4, 1), p(5, 1)]));
    }

    #[test]
    fn restrict_examples() {
        let g = gen5();
        let keep: BTreeSet<_> = [p(1, 1), p(2, 1), p(3, 1), p(4, 1)].into();
        let sub = g.restrict(&keep).unwrap();
        assert_eq!(sub.config.chain_lengths(), &[1, 1, 1, 1]);

        let c = config(&[3, 1, 1], &[]);
        let keep: BTreeSet<_> = [p(1, 1), p(1, 2), p(2, 1), p(3, 1)].into();
        let sub = c.restrict(&keep).unwrap();
        assert_eq!(sub.config.chain_lengths(), &[2, 1, 1]);
        assert_eq!(sub.config.chains()[0], vec!["p1_1".to_string(), "p1_2".to_string()]);

        let bad: BTreeSet<_> = [p(1, 2), p(2, 1), p(3, 1), p(1, 3)].into();
        assert!(c.restrict(&bad).is_err());
    }

    #[test]
    fn restrict_drops_chains_and_reindexes_lines() {
        let c = config(&[1, 1, 1, 1, 1], &[[p(2, 1), p(4, 1), p(5, 1)]]);
        let keep: BTreeSet<_> = [p(2, 1), p(3, 1), p(4, 1), p(5, 1)].into();
        let sub = c.restrict(&keep).unwrap();
        assert_eq!(sub.config.lines(), &[LineDecl::new([p(1, 1), p(3, 1), p(4, 1)])]);
        assert_eq!(sub.embed[&p(1, 1)], p(2, 1));
    }

    #[test]
    fn partitions_of_five() {
        assert_eq!(
            partitions(5),
            vec![
                vec![5],
                vec![4, 1],
                vec![3, 2],
                vec![3, 1, 1],
                vec![2, 2, 1],
                vec![2, 1, 1, 1],
                vec![1, 1, 1, 1, 1],
            ]
        );
        assert_eq!(partitions(4).len(), 5);
    }

    #[test]
    fn canonical_merges_relabelings() {
        let a = config(&[1, 1, 1, 1, 1], &[[p(3, 1), p(4, 1), p(5, 1)]]);
        let b = config(&[1, 1, 1, 1, 1], &[[p(1, 1), p(2, 1), p(5, 1)]]);
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.canonical().lines(), col3().lines());
    }

    #[test]
    fn canonical_sorts_chains_by_length() {
        let c = config(&[1, 3, 1], &[[p(2, 1), p(2, 2), p(2, 3)]]);
        let canon = c.canonical();
        assert_eq!(canon.chain_lengths(), &[3, 1, 1]);
        assert_eq!(canon.lines(), &[LineDecl::new([p(1, 1), p(1, 2), p(1, 3)])]);
    }

    #[test]
    fn enumeration_is_deterministic_and_unique() {
        let first = enumerate_configs(5);
        assert_eq!(first, enumerate_configs(5));
        let keys: BTreeSet<_> = first.iter().map(|c| (c.chain_lengths().to_vec(), c.lines().to_vec())).collect();
        assert_eq!(keys.len(), first.len());
        assert!(first.iter().all(|c| c.canonical() == *c));
        assert!(enumerate_configs(3).is_empty());
    }
}
