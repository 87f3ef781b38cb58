//! Green's relations and the natural partial order.

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;
use crate::set::ElemSet;

/// A partition of the element set, classes numbered by their least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<ElemSet>,
}

impl Partition {
    fn from_keys<K: PartialEq>(keys: &[K]) -> Self {
        let n = keys.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<ElemSet> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut c = ElemSet::new();
            for y in x..n {
                if class_of[y] == usize::MAX && keys[y] == keys[x] {
                    class_of[y] = id;
                    c.insert(y);
                }
            }
            classes.push(c);
        }
        Self { class_of, classes }
    }

    fn from_class_ids(ids: &[usize]) -> Self {
        Self::from_keys(ids)
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class(&self, id: usize) -> &ElemSet {
        &self.classes[id]
    }

    pub fn classes(&self) -> &[ElemSet] {
        &self.classes
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.classes.iter().all(|c| {
            let first = c.first().unwrap();
            c.iter().all(|x| other.related(first, x))
        })
    }

    /// The common refinement of two partitions.
    pub fn meet(&self, other: &Partition) -> Partition {
        let keys: Vec<(usize, usize)> = (0..self.class_of.len()).map(|x| (self.class_of[x], other.class_of[x])).collect();
        Partition::from_keys(&keys)
    }
}

/// The five Green partitions and the ideal orders on J-, L- and R-classes.
#[derive(Clone, Debug)]
pub struct GreenData {
    pub h: Partition,
    pub l: Partition,
    pub r: Partition,
    pub d: Partition,
    pub j: Partition,
    left_ideals: Vec<ElemSet>,
    right_ideals: Vec<ElemSet>,
    ideals: Vec<ElemSet>,
}

impl GreenData {
    pub fn compute(s: &Semigroup) -> Self {
        let n = s.order();
        let right_ideals: Vec<ElemSet> = s
            .elements()
            .map(|x| {
                let mut set: ElemSet = s.elements().map(|y| s.mul(x, y)).collect();
                set.insert(x);
                set
            })
            .collect();
        let left_ideals: Vec<ElemSet> = s
            .elements()
            .map(|x| {
                let mut set: ElemSet = s.elements().map(|y| s.mul(y, x)).collect();
                set.insert(x);
                set
            })
            .collect();
        let ideals: Vec<ElemSet> = s
            .elements()
            .map(|x| {
                let mut set = left_ideals[x].clone();
                for y in right_ideals[x].iter() {
                    set.union_with(&left_ideals[y]);
                }
                set
            })
            .collect();
        let l = Partition::from_keys(&left_ideals);
        let r = Partition::from_keys(&right_ideals);
        let j = Partition::from_keys(&ideals);
        let h = l.meet(&r);

        // D is the join of L and R: transitive closure via union-find.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for part in [&l, &r] {
            for c in part.classes() {
                let first = c.first().unwrap();
                for y in c.iter() {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, y));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        let d = Partition::from_class_ids(&roots);
        debug_assert_eq!(d, j, "D and J differ on a finite semigroup");

        Self { h, l, r, d, j, left_ideals, right_ideals, ideals }
    }

    pub fn h_classes(&self) -> &[ElemSet] {
        self.h.classes()
    }

    pub fn d_classes(&self) -> &[ElemSet] {
        self.d.classes()
    }

    pub fn j_classes(&self) -> &[ElemSet] {
        self.j.classes()
    }

    pub fn l_classes(&self) -> &[ElemSet] {
        self.l.classes()
    }

    pub fn r_classes(&self) -> &[ElemSet] {
        self.r.classes()
    }

    pub fn h_class_of(&self, x: usize) -> &ElemSet {
        self.h.class(self.h.class_of(x))
    }

    pub fn d_class_of(&self, x: usize) -> &ElemSet {
        self.d.class(self.d.class_of(x))
    }

    pub fn principal_ideal(&self, x: usize) -> &ElemSet {
        &self.ideals[x]
    }

    pub fn principal_left_ideal(&self, x: usize) -> &ElemSet {
        &self.left_ideals[x]
    }

    pub fn principal_right_ideal(&self, x: usize) -> &ElemSet {
        &self.right_ideals[x]
    }

    /// `J_a <= J_b` on class ids of the J partition.
    pub fn j_leq(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.j.class(a).first().unwrap(), self.j.class(b).first().unwrap());
        self.ideals[x].is_subset(&self.ideals[y])
    }

    pub fn l_leq(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.l.class(a).first().unwrap(), self.l.class(b).first().unwrap());
        self.left_ideals[x].is_subset(&self.left_ideals[y])
    }

    pub fn r_leq(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.r.class(a).first().unwrap(), self.r.class(b).first().unwrap());
        self.right_ideals[x].is_subset(&self.right_ideals[y])
    }

    /// Covering pairs `(lower, upper)` of the J-class order.
    pub fn j_hasse(&self) -> Vec<(usize, usize)> {
        hasse(self.j.classes().len(), |a, b| self.j_leq(a, b))
    }

    /// True when D and J coincide, as they must on finite semigroups.
    pub fn d_equals_j(&self) -> bool {
        self.d == self.j
    }
}

/// Covering pairs of the partial order `leq` on `0..n`.
pub fn hasse(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |a: usize, b: usize| a != b && leq(a, b);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// The natural partial order `x <= y iff x = x x^{-1} y` of an inverse semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalOrder {
    order: usize,
    rel: Vec<bool>,
}

impl NaturalOrder {
    pub fn compute(s: &Semigroup) -> Result<Self> {
        let inv = s.inverse_map().map_err(|_| Error::NotInverse)?;
        let n = s.order();
        let rel = (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                s.mul(s.mul(x, inv[x]), y) == x
            })
            .collect();
        Ok(Self { order: n, rel })
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.order + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn hasse(&self) -> Vec<(usize, usize)> {
        hasse(self.order, |a, b| self.leq(a, b))
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| self.leq(x, x))
            && (0..n).all(|x| (0..n).all(|y| x == y || !(self.leq(x, y) && self.leq(y, x))))
            && (0..n).all(|x| (0..n).all(|y| !self.leq(x, y) || (0..n).all(|z| !self.leq(y, z) || self.leq(x, z))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_is_a_single_class() {
        let c3 = Semigroup::from_fn(3, |i, j| (i + j) % 3).unwrap();
        let g = GreenData::compute(&c3);
        for p in [&g.h, &g.l, &g.r, &g.d, &g.j] {
            assert_eq!(p.classes().len(), 1);
        }
    }

    #[test]
    fn monogenic_index_three_is_a_chain() {
        // M(3,1) = {x, x^2, x^3} with x^4 = x^3.
        let m = Semigroup::from_fn(3, |i, j| (i + j + 1).min(2)).unwrap();
        let g = GreenData::compute(&m);
        assert_eq!(g.j.classes().len(), 3);
        assert_eq!(g.j_hasse().len(), 2);
        assert!(g.d_equals_j());
    }

    #[test]
    fn natural_order_on_a_group_is_equality() {
        let c3 = Semigroup::from_fn(3, |i, j| (i + j) % 3).unwrap();
        let o = NaturalOrder::compute(&c3).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(o.leq(x, y), x == y);
            }
        }
    }

    #[test]
    fn natural_order_requires_inverse() {
        let n2 = Semigroup::from_fn(2, |_, _| 0).unwrap();
        assert_eq!(NaturalOrder::compute(&n2).unwrap_err(), Error::NotInverse);
    }
}
