//! Validated finite semigroups given by their Cayley tables, and the
//! per-element structure built on top of them.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::set::ElemSet;

/// Identifies the carrier a partial map is defined over.
///
/// Derived from the multiplication table, so two semigroups with identical
/// tables share an identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CarrierId(pub u64);

/// A finite semigroup on the elements `0..order`.
///
/// The table is checked for associativity on construction, so every value of
/// this type is a genuine semigroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    order: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Order, index and period of a single element together with its regularity data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementProfile {
    pub element: usize,
    /// Number of elements of the monogenic subsemigroup.
    pub order: usize,
    /// Least `m` with `x^m = x^(m+k)` for some `k >= 1`.
    pub index: usize,
    /// Least such `k`.
    pub period: usize,
    pub idempotent: bool,
    pub regular: bool,
    pub inverses: ElemSet,
}

impl Semigroup {
    /// Validates a square table. Rows are products `i*j` for fixed `i`.
    pub fn validate(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: i, len: row.len(), expected: n });
            }
            table.extend(row);
        }
        Self::from_flat(n, table, labels)
    }

    /// Validates a row-major flat table of length `order * order`.
    pub fn from_flat(order: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Empty);
        }
        if table.len() != order * order {
            return Err(Error::NotSquare { row: table.len() / order, len: table.len() % order, expected: order });
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::OutOfRange { i: pos / order, j: pos % order });
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::LabelCount { expected: order, found: l.len() });
            }
        }
        let n = order;
        for i in 0..n {
            for j in 0..n {
                let ij = table[i * n + j];
                for k in 0..n {
                    if table[ij * n + k] != table[i * n + table[j * n + k]] {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(Self { order, table, labels })
    }

    /// Builds and validates the table `f(i, j)`.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..order * order).map(|p| f(p / order.max(1), p % order.max(1))).collect();
        Self::from_flat(order, table, None)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::LabelCount { expected: self.order, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.order)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn carrier_id(&self) -> CarrierId {
        let mut h = DefaultHasher::new();
        self.order.hash(&mut h);
        self.table.hash(&mut h);
        CarrierId(h.finish())
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// The set of idempotents; may be empty.
    pub fn idempotents(&self) -> ElemSet {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn is_regular_element(&self, x: usize) -> bool {
        self.elements().any(|y| self.mul(self.mul(x, y), x) == x)
    }

    pub fn regular_elements(&self) -> ElemSet {
        self.elements().filter(|&x| self.is_regular_element(x)).collect()
    }

    /// All `y` with `xyx = x` and `yxy = y`.
    pub fn inverses_of(&self, x: usize) -> ElemSet {
        self.elements()
            .filter(|&y| self.mul(self.mul(x, y), x) == x && self.mul(self.mul(y, x), y) == y)
            .collect()
    }

    pub fn is_regular(&self) -> bool {
        self.elements().all(|x| self.is_regular_element(x))
    }

    /// Idempotents exist and pairwise commute.
    pub fn is_idempotent_commutative(&self) -> bool {
        let e = self.idempotents().to_vec();
        !e.is_empty() && e.iter().all(|&a| e.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_inverse_semigroup(&self) -> bool {
        self.is_regular() && self.is_idempotent_commutative()
    }

    /// `x -> x^{-1}` when the semigroup is inverse.
    pub fn inverse_map(&self) -> Result<Vec<usize>> {
        if !self.is_inverse_semigroup() {
            return Err(Error::NotInverse);
        }
        Ok(self
            .elements()
            .map(|x| self.inverses_of(x).first().expect("regular element has an inverse"))
            .collect())
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn identity(&self) -> Option<usize> {
        self.elements().find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn zero(&self) -> Option<usize> {
        self.elements().find(|&z| self.elements().all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    pub fn is_group(&self) -> bool {
        match self.identity() {
            Some(e) => self.elements().all(|x| self.elements().any(|y| self.mul(x, y) == e)),
            None => false,
        }
    }

    pub fn is_semilattice(&self) -> bool {
        self.elements().all(|x| self.is_idempotent(x)) && self.is_commutative()
    }

    /// Whether the idempotents form a chain under `e <= f iff e = ef = fe`.
    pub fn is_chain(&self) -> bool {
        let e = self.idempotents().to_vec();
        e.iter().all(|&a| {
            e.iter().all(|&b| {
                let ab = self.mul(a, b);
                let ba = self.mul(b, a);
                (ab == a && ba == a) || (ab == b && ba == b)
            })
        })
    }

    /// The sequence `x, x^2, ...` up to its first repetition, with index and period.
    fn powers(&self, x: usize) -> (Vec<usize>, usize, usize) {
        let mut seen = vec![usize::MAX; self.order];
        let mut pw = Vec::new();
        let mut p = x;
        loop {
            if seen[p] != usize::MAX {
                let index = seen[p] + 1;
                let period = pw.len() + 1 - index;
                return (pw, index, period);
            }
            seen[p] = pw.len();
            pw.push(p);
            p = self.mul(p, x);
        }
    }

    pub fn element_profile(&self, x: usize) -> ElementProfile {
        let (pw, index, period) = self.powers(x);
        ElementProfile {
            element: x,
            order: pw.len(),
            index,
            period,
            idempotent: self.is_idempotent(x),
            regular: self.is_regular_element(x),
            inverses: self.inverses_of(x),
        }
    }

    /// `(order, index, period)` of `x` without the regularity data.
    pub fn index_period(&self, x: usize) -> (usize, usize, usize) {
        let (pw, index, period) = self.powers(x);
        (pw.len(), index, period)
    }

    /// The monogenic subsemigroup generated by `x`.
    pub fn monogenic(&self, x: usize) -> ElemSet {
        self.powers(x).0.into_iter().collect()
    }

    /// The inverse subsemigroup generated by `x` and its inverse.
    pub fn monogenic_inverse(&self, x: usize) -> Result<ElemSet> {
        let inv = self.inverse_map()?;
        Ok(self.subsemigroup_closure(&[x, inv[x]].into_iter().collect()))
    }

    /// Least subsemigroup containing `subset` (empty for the empty set).
    pub fn subsemigroup_closure(&self, subset: &ElemSet) -> ElemSet {
        let mut set = subset.clone();
        let mut elems = set.to_vec();
        let mut k = 0;
        while k < elems.len() {
            let x = elems[k];
            for i in 0..=k {
                let y = elems[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if set.insert(p) {
                        elems.push(p);
                    }
                }
            }
            k += 1;
        }
        set
    }

    pub fn is_closed(&self, subset: &ElemSet) -> bool {
        subset.iter().all(|x| subset.iter().all(|y| subset.contains(self.mul(x, y))))
    }

    /// Elements whose monogenic subsemigroup has exactly one generator.
    pub fn m_set(&self) -> ElemSet {
        self.elements()
            .filter(|&x| {
                let mono = self.monogenic(x);
                let size = mono.len();
                mono.iter().filter(|&y| self.index_period(y).0 == size).count() == 1
            })
            .collect()
    }

    /// The same set via the index/order criterion.
    pub fn m_set_by_criterion(&self) -> ElemSet {
        self.elements()
            .filter(|&x| {
                let (o, ind, _) = self.index_period(x);
                (ind == 1 && o <= 2) || ind > 1
            })
            .collect()
    }

    /// Elements lying in no subgroup, i.e. in no H-class of an idempotent.
    pub fn n_set(&self) -> ElemSet {
        let green = crate::green::GreenData::compute(self);
        let group: ElemSet = self
            .idempotents()
            .iter()
            .flat_map(|e| green.h_class_of(e).to_vec())
            .collect();
        self.full_set().difference(&group)
    }

    pub fn is_combinatorial(&self) -> bool {
        crate::green::GreenData::compute(self).h_classes().iter().all(|c| c.len() == 1)
    }

    /// The semigroup with the transposed table.
    pub fn opposite(&self) -> Semigroup {
        let n = self.order;
        let table = (0..n * n).map(|p| self.mul(p % n, p / n)).collect();
        Semigroup { order: n, table, labels: self.labels.clone() }
    }

    /// Subsemigroup on `subset` re-indexed in increasing order, with the embedding.
    pub fn restrict(&self, subset: &ElemSet) -> Result<(Semigroup, Vec<usize>)> {
        let emb = subset.to_vec();
        if emb.is_empty() {
            return Err(Error::Empty);
        }
        if !self.is_closed(subset) {
            return Err(Error::InvalidParameter(format!("{subset} is not closed under multiplication")));
        }
        let mut pos = vec![usize::MAX; self.order];
        for (k, &x) in emb.iter().enumerate() {
            pos[x] = k;
        }
        let m = emb.len();
        let table = (0..m * m).map(|p| pos[self.mul(emb[p / m], emb[p % m])]).collect();
        let labels = self.labels.as_ref().map(|l| emb.iter().map(|&x| l[x].clone()).collect());
        Ok((Semigroup { order: m, table, labels }, emb))
    }

    /// Whether `map` (total, indexed by elements of `self`) is a homomorphism into `other`.
    pub fn is_homomorphism(&self, other: &Semigroup, map: &[usize]) -> bool {
        map.len() == self.order
            && self.elements().all(|x| self.elements().all(|y| map[self.mul(x, y)] == other.mul(map[x], map[y])))
    }

    /// Whether `map` is an anti-homomorphism into `other`.
    pub fn is_anti_homomorphism(&self, other: &Semigroup, map: &[usize]) -> bool {
        map.len() == self.order
            && self.elements().all(|x| self.elements().all(|y| map[self.mul(x, y)] == other.mul(map[y], map[x])))
    }

    /// Same table up to a relabelling by `perm` (`perm[x]` is the new index of `x`).
    pub fn permuted(&self, perm: &[usize]) -> Semigroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.mul(x, y)];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for x in 0..n {
                out[perm[x]] = l[x].clone();
            }
            out
        });
        Semigroup { order: n, table, labels }
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Semigroup(order {})", self.order)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}
