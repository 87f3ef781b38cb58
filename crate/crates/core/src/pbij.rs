//! Partial bijections between element sets of (possibly different) carriers.
//!
//! Maps act on the right: `x(α·β) = (xα)β`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::semigroup::{CarrierId, Semigroup};
use crate::set::ElemSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    source: CarrierId,
    target: CarrierId,
    target_order: usize,
    map: Vec<Option<usize>>,
}

impl PartialBijection {
    /// Builds a partial bijection from `(x, y)` pairs; rejects non-injective input.
    pub fn from_pairs(
        source: &Semigroup,
        target: &Semigroup,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::from_pairs_raw(source.carrier_id(), source.order(), target.carrier_id(), target.order(), pairs)
    }

    pub(crate) fn from_pairs_raw(
        source: CarrierId,
        source_order: usize,
        target: CarrierId,
        target_order: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut map = vec![None; source_order];
        let mut used = vec![false; target_order];
        for (x, y) in pairs {
            if x >= source_order || y >= target_order {
                return Err(Error::InvalidParameter(format!("pair ({x},{y}) out of range")));
            }
            if map[x].is_some_and(|old| old != y) || (map[x].is_none() && used[y]) {
                return Err(Error::InvalidParameter(format!("pair ({x},{y}) breaks injectivity")));
            }
            map[x] = Some(y);
            used[y] = true;
        }
        Ok(Self { source, target, target_order, map })
    }

    /// A total bijection given as a vector `x -> map[x]`.
    pub fn total(source: &Semigroup, target: &Semigroup, map: &[usize]) -> Result<Self> {
        if map.len() != source.order() || source.order() != target.order() {
            return Err(Error::InvalidParameter("total bijection needs equal orders".into()));
        }
        Self::from_pairs(source, target, map.iter().copied().enumerate())
    }

    pub fn identity_on(s: &Semigroup, set: &ElemSet) -> Self {
        Self::from_pairs(s, s, set.iter().map(|x| (x, x))).expect("identity is injective")
    }

    /// `x -> x⁻¹` on an inverse semigroup.
    pub fn natural_involution(s: &Semigroup) -> Result<Self> {
        let inv = s.inverse_map().map_err(|_| Error::NotInverse)?;
        Self::total(s, s, &inv)
    }

    pub fn empty(source: &Semigroup, target: &Semigroup) -> Self {
        Self::from_pairs(source, target, []).unwrap()
    }

    pub fn source(&self) -> CarrierId {
        self.source
    }

    pub fn target(&self) -> CarrierId {
        self.target
    }

    pub fn source_order(&self) -> usize {
        self.map.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    #[inline]
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    pub fn domain(&self) -> ElemSet {
        self.pairs().map(|(x, _)| x).collect()
    }

    pub fn range(&self) -> ElemSet {
        self.pairs().map(|(_, y)| y).collect()
    }

    pub fn rank(&self) -> usize {
        self.map.iter().filter(|y| y.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    /// The image vector of a total map.
    pub fn as_total(&self) -> Option<Vec<usize>> {
        self.map.iter().copied().collect()
    }

    pub fn is_identity_map(&self) -> bool {
        self.source == self.target && self.pairs().all(|(x, y)| x == y)
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![None; self.target_order];
        for (x, y) in self.pairs() {
            map[y] = Some(x);
        }
        Self { source: self.target, target: self.source, target_order: self.map.len(), map }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.target != next.source || self.target_order != next.map.len() {
            return Err(Error::CarrierMismatch);
        }
        let map = self.map.iter().map(|y| y.and_then(|y| next.map[y])).collect();
        Ok(Self { source: self.source, target: next.target, target_order: next.target_order, map })
    }

    /// Restriction to `set ∩ dom`.
    pub fn restrict(&self, set: &ElemSet) -> Self {
        let map = self.map.iter().enumerate().map(|(x, y)| if set.contains(x) { *y } else { None }).collect();
        Self { map, ..self.clone() }
    }

    pub fn is_restriction_of(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.pairs().all(|(x, y)| other.apply(x) == Some(y))
    }

    /// Whether the map is an isomorphism between the subsemigroups `dom` and `ran`.
    pub fn is_partial_isomorphism(&self, s: &Semigroup, t: &Semigroup) -> bool {
        let dom = self.domain();
        s.is_closed(&dom)
            && t.is_closed(&self.range())
            && dom.iter().all(|x| dom.iter().all(|y| self.apply(s.mul(x, y)) == Some(t.mul(self.map[x].unwrap(), self.map[y].unwrap()))))
    }

    /// Transport along a total bijection `theta: S -> T`: `theta^{-1} ∘ α ∘ theta`,
    /// i.e. `(xθ)(α') = (xα)θ`, with domain `(dom α)θ`.
    pub fn transport(&self, theta: &Self) -> Result<Self> {
        if !theta.is_total() || theta.source != self.source || theta.source != self.target {
            return Err(Error::CarrierMismatch);
        }
        theta.inverse().then(self)?.then(theta)
    }

    /// Canonical order: rank, then domain bits, then the graph.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.domain().cmp(&other.domain()))
            .then_with(|| self.pairs().cmp(other.pairs()))
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (x, y)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}>{y}")?;
        }
        write!(f, "}}")
    }
}
