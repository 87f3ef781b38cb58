//! Census of small semigroups up to isomorphism, and their PA-isomorphism classes.
//!
//! Tables are completed cell by cell in row-major order. A partial table is
//! dropped as soon as some relabelling (optionally composed with transposition)
//! is already known to be lexicographically smaller, so each class is reached
//! exactly once, at its lexicographically least table.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::isotest::pa_isomorphic_monoids;
use crate::pam::{pa_monoid, PaMonoid, PaOptions};
use crate::semigroup::Semigroup;

/// Largest order accepted by [`census`] without `inverse_only`.
pub const MAX_ORDER: usize = 4;
/// Largest order accepted in `inverse_only` mode.
pub const MAX_INVERSE_ORDER: usize = 5;
/// Largest order accepted by [`canonical_table`].
pub const MAX_CANONICAL_ORDER: usize = 8;

const UNSET: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CensusMode {
    /// Identify a semigroup with its opposite.
    pub anti: bool,
    /// Keep only inverse semigroups.
    pub inverse_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub semigroup: Semigroup,
    pub inverse: bool,
    pub combinatorial: bool,
    pub group: bool,
    pub semilattice: bool,
    pub commutative: bool,
}

impl CensusEntry {
    fn new(semigroup: Semigroup) -> Self {
        Self {
            inverse: semigroup.is_inverse_semigroup(),
            combinatorial: semigroup.is_combinatorial(),
            group: semigroup.is_group(),
            semilattice: semigroup.is_semilattice(),
            commutative: semigroup.is_commutative(),
            semigroup,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub order: usize,
    pub mode: CensusMode,
    /// Sorted by table.
    pub entries: Vec<CensusEntry>,
}

impl Census {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn semigroups(&self) -> impl Iterator<Item = &Semigroup> {
        self.entries.iter().map(|e| &e.semigroup)
    }
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A relabelling `π`, applied either to the table or to its transpose.
struct Relabel {
    perm: Vec<u8>,
    inv: Vec<u8>,
    transpose: bool,
}

struct Completer {
    n: usize,
    relabels: Vec<Relabel>,
}

impl Completer {
    fn new(n: usize, anti: bool) -> Self {
        let mut relabels = Vec::new();
        for perm in permutations(n) {
            let mut inv = vec![0u8; n];
            for (i, &p) in perm.iter().enumerate() {
                inv[p as usize] = i as u8;
            }
            let identity = perm.iter().enumerate().all(|(i, &p)| i == p as usize);
            if !identity {
                relabels.push(Relabel { perm: perm.clone(), inv: inv.clone(), transpose: false });
            }
            if anti {
                relabels.push(Relabel { perm, inv, transpose: true });
            }
        }
        Self { n, relabels }
    }

    /// No triple with all entries known violates associativity.
    fn associative_so_far(&self, t: &[u8]) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = t[a * n + b];
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = t[b * n + c];
                    if bc == UNSET {
                        continue;
                    }
                    let (l, r) = (t[ab as usize * n + c], t[a * n + bc as usize]);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// False once some relabelling is certainly lexicographically smaller.
    fn minimal_so_far(&self, t: &[u8], filled: usize) -> bool {
        let n = self.n;
        for r in &self.relabels {
            for p in 0..filled {
                let (i, j) = (r.inv[p / n] as usize, r.inv[p % n] as usize);
                let src = if r.transpose { t[j * n + i] } else { t[i * n + j] };
                if src == UNSET {
                    break;
                }
                let v = r.perm[src as usize];
                if v < t[p] {
                    return false;
                }
                if v > t[p] {
                    break;
                }
            }
        }
        true
    }

    fn complete(&self, t: &mut Vec<u8>, pos: usize, out: &mut Vec<Vec<u8>>) {
        if pos == t.len() {
            out.push(t.clone());
            return;
        }
        for v in 0..self.n as u8 {
            t[pos] = v;
            if self.associative_so_far(t) && self.minimal_so_far(t, pos + 1) {
                self.complete(t, pos + 1, out);
            }
        }
        t[pos] = UNSET;
    }

    /// All first rows that survive pruning, as starting points for parallel completion.
    fn seeds(&self) -> Vec<Vec<u8>> {
        let mut seeds = Vec::new();
        let mut t = vec![UNSET; self.n * self.n];
        self.seed_rec(&mut t, 0, &mut seeds);
        seeds
    }

    fn seed_rec(&self, t: &mut Vec<u8>, pos: usize, out: &mut Vec<Vec<u8>>) {
        if pos == self.n.min(t.len()) {
            out.push(t.clone());
            return;
        }
        for v in 0..self.n as u8 {
            t[pos] = v;
            if self.associative_so_far(t) && self.minimal_so_far(t, pos + 1) {
                self.seed_rec(t, pos + 1, out);
            }
        }
        t[pos] = UNSET;
    }
}

/// Representatives of all semigroups of order `n` up to isomorphism (or up to
/// isomorphism and anti-isomorphism), each as its lexicographically least table.
pub fn census(n: usize, mode: CensusMode) -> Result<Census> {
    let limit = if mode.inverse_only { MAX_INVERSE_ORDER } else { MAX_ORDER };
    if n == 0 || n > limit {
        return Err(if n == 0 { Error::Empty } else { Error::OrderTooLarge(n) });
    }
    let completer = Completer::new(n, mode.anti);
    let n2 = n * n;
    let mut tables: Vec<Vec<u8>> = completer
        .seeds()
        .into_par_iter()
        .flat_map_iter(|mut seed| {
            let mut out = Vec::new();
            completer.complete(&mut seed, n.min(n2), &mut out);
            out
        })
        .collect();
    tables.sort_unstable();
    let entries = tables
        .into_iter()
        .map(|t| Semigroup::from_flat(n, t.into_iter().map(usize::from).collect(), None).expect("completed tables are associative"))
        .filter(|s| !mode.inverse_only || s.is_inverse_semigroup())
        .map(CensusEntry::new)
        .collect();
    Ok(Census { order: n, mode, entries })
}

/// The lexicographically least table among all relabellings of `s` (and of its
/// opposite when `anti` is set).
pub fn canonical_table(s: &Semigroup, anti: bool) -> Result<Vec<usize>> {
    let n = s.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::CarrierTooLarge { order: n, limit: MAX_CANONICAL_ORDER });
    }
    let mut best: Option<Vec<usize>> = None;
    for perm in permutations(n) {
        for transpose in [false, true].into_iter().take(1 + anti as usize) {
            let mut inv = vec![0usize; n];
            for (i, &p) in perm.iter().enumerate() {
                inv[p as usize] = i;
            }
            let t: Vec<usize> = (0..n * n)
                .map(|q| {
                    let (i, j) = (inv[q / n], inv[q % n]);
                    let v = if transpose { s.mul(j, i) } else { s.mul(i, j) };
                    perm[v] as usize
                })
                .collect();
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
    }
    Ok(best.expect("at least one permutation"))
}

/// Partition of census members into PA-isomorphism classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaPartition {
    /// Each class lists member indices in increasing order; classes are ordered
    /// by their least member.
    pub classes: Vec<Vec<usize>>,
    /// Members whose PA monoid exceeded the cap; each sits in a singleton class.
    pub partial: Vec<usize>,
}

impl PaPartition {
    pub fn class_of(&self, member: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&member))
    }
}

/// Groups census members by PA-isomorphism.
pub fn pa_classes(census: &Census, opts: PaOptions) -> Result<PaPartition> {
    let members: Vec<Semigroup> = census.semigroups().cloned().collect();
    pa_classes_of(&members, opts)
}

/// Groups pairwise non-isomorphic semigroups by PA-isomorphism.
///
/// Members are bucketed by `|Sub|`, `|PA|` and the number of idempotents of
/// `PA`; only members sharing a bucket are compared.
pub fn pa_classes_of(members: &[Semigroup], opts: PaOptions) -> Result<PaPartition> {
    let monoids: Vec<Option<Arc<PaMonoid>>> = members
        .par_iter()
        .map(|s| match pa_monoid(s, opts) {
            Ok(m) => Ok(Some(Arc::new(m))),
            Err(Error::SizeCapExceeded { .. }) => Ok(None),
            Err(err) => Err(err),
        })
        .collect::<Result<_>>()?;
    let mut buckets: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
    let mut partial = Vec::new();
    for (i, m) in monoids.iter().enumerate() {
        match m {
            Some(m) => {
                let idem = m.monoid().semigroup().idempotents().len();
                buckets.entry((m.lattice().len(), m.order(), idem)).or_default().push(i);
            }
            None => partial.push(i),
        }
    }
    let bucket_classes: Vec<Vec<Vec<usize>>> = buckets
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|members| {
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for i in members {
                let a = monoids[i].as_ref().expect("bucketed members have monoids");
                let mut home = None;
                for (c, class) in classes.iter().enumerate() {
                    let b = monoids[class[0]].as_ref().expect("bucketed members have monoids");
                    if pa_isomorphic_monoids(b, a)?.isomorphic {
                        home = Some(c);
                        break;
                    }
                }
                match home {
                    Some(c) => classes[c].push(i),
                    None => classes.push(vec![i]),
                }
            }
            Ok(classes)
        })
        .collect::<Result<_>>()?;
    let mut classes: Vec<Vec<usize>> = bucket_classes.into_iter().flatten().collect();
    classes.extend(partial.iter().map(|&i| vec![i]));
    classes.sort();
    Ok(PaPartition { classes, partial })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let plain = CensusMode::default();
        let anti = CensusMode { anti: true, ..plain };
        assert_eq!(census(1, plain).unwrap().len(), 1);
        assert_eq!(census(2, plain).unwrap().len(), 5);
        assert_eq!(census(2, anti).unwrap().len(), 4);
        assert_eq!(census(3, plain).unwrap().len(), 24);
        assert_eq!(census(5, plain).unwrap_err(), Error::OrderTooLarge(5));
        assert_eq!(census(6, CensusMode { inverse_only: true, anti: false }).unwrap_err(), Error::OrderTooLarge(6));
    }

    #[test]
    fn entries_are_canonical() {
        for s in census(3, CensusMode::default()).unwrap().semigroups() {
            assert_eq!(canonical_table(s, false).unwrap(), s.table());
        }
    }

    #[test]
    fn order_two_pa_classes() {
        let c = census(2, CensusMode::default()).unwrap();
        let part = pa_classes(&c, PaOptions::default()).unwrap();
        let group = c.entries.iter().position(|e| e.group).unwrap();
        let null = c.entries.iter().position(|e| e.semigroup.zero().is_some() && !e.semilattice).unwrap();
        let chain = c.entries.iter().position(|e| e.semilattice).unwrap();
        assert_eq!(part.class_of(group), part.class_of(null));
        assert_eq!(part.classes[part.class_of(chain).unwrap()], vec![chain]);
    }
}
