//! Lattices of subsemigroups and inverse subsemigroups, their isomorphisms,
//! E-bijections and base partial bijections.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::green::{hasse, GreenData};
use crate::pbij::PartialBijection;
use crate::search::{self, Magma};
use crate::semigroup::Semigroup;
use crate::set::ElemSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubKind {
    /// All subsemigroups.
    Plain,
    /// Inverse subsemigroups of an inverse semigroup.
    Inverse,
}

/// The members of `Sub(S)` or `Subi(S)` in canonical order, `∅` first and `S` last.
#[derive(Clone, Debug)]
pub struct SubLattice {
    universe: Semigroup,
    kind: SubKind,
    members: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
}

impl SubLattice {
    pub fn sub(s: &Semigroup) -> Self {
        Self::build(s, SubKind::Plain, None)
    }

    pub fn subi(s: &Semigroup) -> Result<Self> {
        let inv = s.inverse_map().map_err(|_| Error::NotInverse)?;
        Ok(Self::build(s, SubKind::Inverse, Some(&inv)))
    }

    fn build(s: &Semigroup, kind: SubKind, inv: Option<&[usize]>) -> Self {
        let close = |base: &ElemSet, x: usize| -> ElemSet {
            let mut seed = base.clone();
            seed.insert(x);
            if let Some(inv) = inv {
                seed.insert(inv[x]);
            }
            s.subsemigroup_closure(&seed)
        };
        let mut seen: HashMap<ElemSet, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(ElemSet::new(), ());
        queue.push_back(ElemSet::new());
        while let Some(h) = queue.pop_front() {
            for x in s.elements().filter(|&x| !h.contains(x)) {
                let k = close(&h, x);
                if !seen.contains_key(&k) {
                    seen.insert(k.clone(), ());
                    queue.push_back(k);
                }
            }
        }
        let mut members: Vec<ElemSet> = seen.into_keys().collect();
        members.sort();
        let index = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { universe: s.clone(), kind, members, index }
    }

    pub fn universe(&self) -> &Semigroup {
        &self.universe
    }

    pub fn kind(&self) -> SubKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ElemSet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ElemSet {
        &self.members[i]
    }

    pub fn index_of(&self, set: &ElemSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.members[i].is_subset(&self.members[j])
    }

    /// `H ∩ K`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&self.members[i].intersection(&self.members[j])]
    }

    /// The least member containing `H ∪ K`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let mut u = self.members[i].union(&self.members[j]);
        if self.kind == SubKind::Inverse {
            let inv = self.universe.inverse_map().unwrap();
            u = u.iter().chain(u.iter().map(|x| inv[x])).collect();
        }
        self.index[&self.universe.subsemigroup_closure(&u)]
    }

    /// Atoms as the minimal nonempty members.
    pub fn atoms(&self) -> Vec<usize> {
        let atoms: Vec<usize> = (1..self.len())
            .filter(|&i| !(1..self.len()).any(|j| j != i && self.leq(j, i)))
            .collect();
        debug_assert!(atoms.iter().all(|&a| {
            let m = &self.members[a];
            m.len() == 1 && self.universe.is_idempotent(m.first().unwrap())
        }));
        atoms
    }

    /// Covering pairs `(lower, upper)` of member indices.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        hasse(self.len(), |a, b| self.leq(a, b))
    }

    /// The lattice as a semilattice under `∩`; lattice isomorphisms are exactly
    /// its isomorphisms.
    pub fn meet_semigroup(&self) -> Semigroup {
        Semigroup::from_fn(self.len(), |i, j| self.meet(i, j)).expect("intersection is associative")
    }

    /// Order invariants per member: down-set, up-set, lower and upper covers,
    /// height and number of atoms below.
    fn shape_keys(&self) -> Vec<u64> {
        let n = self.len();
        let covers = self.hasse();
        let mut lower = vec![0u64; n];
        let mut upper = vec![0u64; n];
        for &(a, b) in &covers {
            upper[a] += 1;
            lower[b] += 1;
        }
        let mut height = vec![0u64; n];
        for i in 0..n {
            // Members are sorted by size, so all proper subsets precede i.
            height[i] = covers.iter().filter(|&&(_, b)| b == i).map(|&(a, _)| height[a] + 1).max().unwrap_or(0);
        }
        let atoms = self.atoms();
        (0..n)
            .map(|i| {
                let down = (0..n).filter(|&j| self.leq(j, i)).count() as u64;
                let up = (0..n).filter(|&j| self.leq(i, j)).count() as u64;
                let at = atoms.iter().filter(|&&a| self.leq(a, i)).count() as u64;
                let mut h = DefaultHasher::new();
                (down, up, lower[i], upper[i], height[i], at).hash(&mut h);
                h.finish()
            })
            .collect()
    }
}

/// An order isomorphism between two lattices of the same kind.
#[derive(Clone, Debug)]
pub struct LatticeIso {
    pub from: Arc<SubLattice>,
    pub to: Arc<SubLattice>,
    /// `map[i]` is the index in `to` of the image of member `i` of `from`.
    pub map: Vec<usize>,
}

impl LatticeIso {
    pub fn identity(l: &Arc<SubLattice>) -> Self {
        Self { from: l.clone(), to: l.clone(), map: (0..l.len()).collect() }
    }

    pub fn image(&self, set: &ElemSet) -> Option<&ElemSet> {
        self.from.index_of(set).map(|i| self.to.member(self.map[i]))
    }

    pub fn is_valid(&self) -> bool {
        let n = self.from.len();
        self.to.len() == n
            && (0..n).all(|i| (0..n).all(|j| self.from.leq(i, j) == self.to.leq(self.map[i], self.map[j])))
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Self { from: self.to.clone(), to: self.from.clone(), map }
    }
}

/// Lattice isomorphisms in deterministic order, at most `limit` of them.
pub fn lattice_isomorphisms(l1: &Arc<SubLattice>, l2: &Arc<SubLattice>, limit: Option<usize>) -> Vec<LatticeIso> {
    if l1.len() != l2.len() {
        return Vec::new();
    }
    let (m1, m2) = (l1.meet_semigroup(), l2.meet_semigroup());
    let (k1, k2) = (l1.shape_keys(), l2.shape_keys());
    let a = Magma { n: m1.order(), table: m1.table() };
    let b = Magma { n: m2.order(), table: m2.table() };
    search::find(a, b, Some((&k1, &k2)), &[], limit)
        .into_iter()
        .map(|map| {
            let iso = LatticeIso { from: l1.clone(), to: l2.clone(), map };
            debug_assert!(iso.is_valid());
            iso
        })
        .collect()
}

/// The bijection `E_S -> E_T` read off the atoms: `{e}Ψ = {eψ}`.
pub fn e_bijection(psi: &LatticeIso) -> Result<PartialBijection> {
    let (s, t) = (psi.from.universe(), psi.to.universe());
    let mut pairs = Vec::new();
    for e in s.idempotents().iter() {
        let img = psi.image(&ElemSet::singleton(e)).ok_or(Error::AtomImageNotSingletonIdempotent(e))?;
        match (img.len(), img.first()) {
            (1, Some(f)) if t.is_idempotent(f) => pairs.push((e, f)),
            _ => return Err(Error::AtomImageNotSingletonIdempotent(e)),
        }
    }
    PartialBijection::from_pairs(s, t, pairs)
}

/// Whether `psi` maps `E_S` onto `E_T` preserving comparability both ways and
/// products of incomparable commuting idempotents.
///
/// Noncommuting pairs are exempt: lattice automorphisms of bands may swap two
/// left zeros `e, f` while `ef = e`.
pub fn weak_iso_check(psi: &PartialBijection, s: &Semigroup, t: &Semigroup) -> bool {
    let (es, et) = (s.idempotents(), t.idempotents());
    if psi.domain() != es || psi.range() != et {
        return false;
    }
    let leq = |m: &Semigroup, e: usize, f: usize| m.mul(e, f) == e && m.mul(f, e) == e;
    let comparable = |m: &Semigroup, e: usize, f: usize| leq(m, e, f) || leq(m, f, e);
    for e in es.iter() {
        for f in es.iter() {
            let (u, v) = (psi.apply(e).unwrap(), psi.apply(f).unwrap());
            let c = comparable(s, e, f);
            if c != comparable(t, u, v) {
                return false;
            }
            if !c && s.mul(e, f) == s.mul(f, e) && psi.apply(s.mul(e, f)) != Some(t.mul(u, v)) {
                return false;
            }
        }
    }
    true
}

/// The base partial bijection `N_S ∪ E_S -> N_T ∪ E_T` of a projectivity.
///
/// For `x ∈ N_S`, `xψ` is the unique `y ∈ N_T` with `[[x]]Ψ = [[y]]` and
/// `(xx⁻¹)ψ_E = yy⁻¹`.
pub fn base_partial_bijection(psi: &LatticeIso) -> Result<PartialBijection> {
    let (s, t) = (psi.from.universe(), psi.to.universe());
    if psi.from.kind() != SubKind::Inverse || psi.to.kind() != SubKind::Inverse {
        return Err(Error::NotInverse);
    }
    let (inv_s, inv_t) = (s.inverse_map()?, t.inverse_map()?);
    let psi_e = e_bijection(psi)?;
    let mut pairs: Vec<(usize, usize)> = psi_e.pairs().collect();
    let n_t = t.n_set();
    for x in s.n_set().iter() {
        let img = psi.image(&s.monogenic_inverse(x)?).ok_or(Error::NoCandidate(x))?;
        let target_r = psi_e.apply(s.mul(x, inv_s[x])).ok_or(Error::NoCandidate(x))?;
        let cands: Vec<usize> = n_t
            .iter()
            .filter(|&y| t.monogenic_inverse(y).is_ok_and(|m| &m == img) && t.mul(y, inv_t[y]) == target_r)
            .collect();
        match cands.as_slice() {
            [] => return Err(Error::NoCandidate(x)),
            [y] => pairs.push((x, *y)),
            _ => return Err(Error::AmbiguousCandidate(x)),
        }
    }
    let psi_base = PartialBijection::from_pairs(s, t, pairs)?;
    debug_assert!(base_properties_hold(psi, &psi_base));
    Ok(psi_base)
}

/// Extends `ψ_E`, preserves R- and L-classes both ways, and `[[x]]Ψ = [[xψ]]`.
pub fn base_properties_hold(psi: &LatticeIso, base: &PartialBijection) -> bool {
    let (s, t) = (psi.from.universe(), psi.to.universe());
    let Ok(psi_e) = e_bijection(psi) else { return false };
    if !psi_e.is_restriction_of(base) {
        return false;
    }
    let (gs, gt) = (GreenData::compute(s), GreenData::compute(t));
    let pairs: Vec<(usize, usize)> = base.pairs().collect();
    for &(x, u) in &pairs {
        for &(y, v) in &pairs {
            if gs.r.related(x, y) != gt.r.related(u, v) || gs.l.related(x, y) != gt.l.related(u, v) {
                return false;
            }
        }
        let (Ok(mx), Ok(mu)) = (s.monogenic_inverse(x), t.monogenic_inverse(u)) else { return false };
        if psi.image(&mx) != Some(&mu) {
            return false;
        }
    }
    true
}

/// Whether the total map `theta` induces `psi`: `HΨ = Hθ` for every member.
pub fn induces_lattice_iso(theta: &[usize], psi: &LatticeIso) -> bool {
    psi.from
        .members()
        .iter()
        .enumerate()
        .all(|(i, h)| &h.map(|x| theta[x]) == psi.to.member(psi.map[i]))
}
