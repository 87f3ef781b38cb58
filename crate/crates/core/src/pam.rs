//! Partial automorphism monoids and the maps derived from an isomorphism
//! between two of them.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::construct::{cyclic_group, direct_product, inflate_at_identity};
use crate::error::{Error, Result};
use crate::pbij::PartialBijection;
use crate::search::{self, Magma};
use crate::semigroup::Semigroup;
use crate::set::ElemSet;
use crate::sublat::{e_bijection, LatticeIso, SubKind, SubLattice};

pub const DEFAULT_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PaOptions {
    /// Largest number of partial automorphisms enumerated before giving up.
    pub cap: usize,
}

impl Default for PaOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

/// A monoid given by its table, with each element traced back to a partial bijection.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    table: Semigroup,
    identity: usize,
    zero: Option<usize>,
    elements: Vec<PartialBijection>,
    index: HashMap<PartialBijection, usize>,
}

impl FiniteMonoid {
    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    /// The multiplication table as a validated semigroup.
    pub fn semigroup(&self) -> &Semigroup {
        &self.table
    }

    pub fn element(&self, i: usize) -> &PartialBijection {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[PartialBijection] {
        &self.elements
    }

    pub fn index_of(&self, alpha: &PartialBijection) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    /// The table labelled by the partial bijections, for export.
    pub fn as_semigroup(&self) -> Semigroup {
        let labels = self.elements.iter().map(|a| a.to_string()).collect();
        self.table.clone().with_labels(labels).expect("one label per element")
    }
}

/// `PA(S)` or `PAi(S)` together with the lattice its idempotents mirror.
#[derive(Clone, Debug)]
pub struct PaMonoid {
    base: Semigroup,
    lattice: Arc<SubLattice>,
    monoid: FiniteMonoid,
    /// Element index of `1_H` for each lattice member `H`.
    unit_of_member: Vec<usize>,
}

impl PaMonoid {
    pub fn base(&self) -> &Semigroup {
        &self.base
    }

    pub fn lattice(&self) -> &Arc<SubLattice> {
        &self.lattice
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn kind(&self) -> SubKind {
        self.lattice.kind()
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    /// Element index of the identity map on lattice member `i`.
    pub fn unit_of_member(&self, i: usize) -> usize {
        self.unit_of_member[i]
    }

    /// Lattice member whose identity map is element `i`, if any.
    pub fn member_of_unit(&self, i: usize) -> Option<usize> {
        let a = self.monoid.element(i);
        if !a.is_identity_map() {
            return None;
        }
        self.lattice.index_of(&a.domain())
    }

    /// Inverse monoid with zero `∅` and identity `1_S`, whose idempotents are
    /// exactly the maps `1_H`.
    pub fn structure_holds(&self) -> bool {
        let m = &self.monoid;
        let s = m.semigroup();
        let idem = s.idempotents();
        let units: ElemSet = self.unit_of_member.iter().copied().collect();
        s.is_inverse_semigroup()
            && m.element(m.identity()).is_identity_map()
            && m.element(m.identity()).is_total()
            && m.zero().is_some_and(|z| m.element(z).is_empty())
            && idem == units
            && (0..m.order()).all(|i| {
                let inv = m.element(i).inverse();
                m.index_of(&inv).is_some_and(|j| s.inverses_of(i) == ElemSet::singleton(j))
            })
    }
}

/// All isomorphisms between members of `lattice`, canonically ordered.
pub fn partial_automorphisms(lattice: &SubLattice, opts: PaOptions) -> Result<Vec<PartialBijection>> {
    let s = lattice.universe();
    let mut out = vec![PartialBijection::empty(s, s)];
    let mut by_size: Vec<Vec<&ElemSet>> = vec![Vec::new(); s.order() + 1];
    for m in lattice.members().iter().filter(|m| !m.is_empty()) {
        by_size[m.len()].push(m);
    }
    for class in by_size.iter().filter(|c| !c.is_empty()) {
        let restricted: Vec<(Semigroup, Vec<usize>)> =
            class.iter().map(|m| s.restrict(m).expect("members are closed and nonempty")).collect();
        let pairs: Vec<(usize, usize)> =
            (0..class.len()).flat_map(|i| (0..class.len()).map(move |j| (i, j))).collect();
        let found: Vec<Vec<PartialBijection>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let ((h, eh), (k, ek)) = (&restricted[i], &restricted[j]);
                let a = Magma { n: h.order(), table: h.table() };
                let b = Magma { n: k.order(), table: k.table() };
                search::find(a, b, None, &[], None)
                    .into_iter()
                    .map(|map| {
                        PartialBijection::from_pairs(s, s, map.iter().enumerate().map(|(x, &y)| (eh[x], ek[y])))
                            .expect("isomorphisms are injective")
                    })
                    .collect()
            })
            .collect();
        out.extend(found.into_iter().flatten());
        if out.len() > opts.cap {
            return Err(Error::SizeCapExceeded { cap: opts.cap });
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

fn assemble(s: &Semigroup, lattice: SubLattice, opts: PaOptions) -> Result<PaMonoid> {
    let elements = partial_automorphisms(&lattice, opts)?;
    let index: HashMap<PartialBijection, usize> = elements.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let n = elements.len();
    let rows: Vec<Vec<usize>> = elements
        .par_iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index[&a.then(b).expect("same carrier")])
                .collect()
        })
        .collect();
    let table = Semigroup::from_flat(n, rows.concat(), None)?;
    let identity = index[&PartialBijection::identity_on(s, &s.full_set())];
    let zero = Some(index[&PartialBijection::empty(s, s)]);
    let unit_of_member = lattice
        .members()
        .iter()
        .map(|m| index[&PartialBijection::identity_on(s, m)])
        .collect();
    Ok(PaMonoid {
        base: s.clone(),
        lattice: Arc::new(lattice),
        monoid: FiniteMonoid { table, identity, zero, elements, index },
        unit_of_member,
    })
}

/// `PA(S)`.
pub fn pa_monoid(s: &Semigroup, opts: PaOptions) -> Result<PaMonoid> {
    assemble(s, SubLattice::sub(s), opts)
}

/// `PAi(S)` for an inverse semigroup `S`.
pub fn pai_monoid(s: &Semigroup, opts: PaOptions) -> Result<PaMonoid> {
    assemble(s, SubLattice::subi(s)?, opts)
}

/// How `x` and `xφ` relate in the trichotomy for the associated bijection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiCase {
    /// `x` is idempotent; `xφ = xφ_E`.
    Idempotent,
    /// Both `x` and `xφ` have index greater than one.
    NonGroup,
    /// One generates `C_2` and the other `N_2`.
    CyclicAndNull,
    /// Both generate `C_2`.
    BothCyclic,
}

/// The bijection `M_S -> M_T` with `⟨x⟩Φ* = ⟨xφ⟩`, with the case of each `x`.
#[derive(Clone, Debug)]
pub struct AssociatedBijection {
    pub map: PartialBijection,
    pub cases: Vec<(usize, PhiCase)>,
}

/// Why a bijection does not induce a PA-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The two monoids differ in size.
    SizeMismatch,
    /// A partial automorphism of `S` whose transport is not one of `T`.
    Forward(PartialBijection),
    /// A partial automorphism of `T` not hit by any transport.
    Backward(PartialBijection),
}

/// A verified isomorphism between two partial automorphism monoids.
#[derive(Clone, Debug)]
pub struct PaIso {
    from: Arc<PaMonoid>,
    to: Arc<PaMonoid>,
    map: Vec<usize>,
}

impl PaIso {
    /// Checks bijectivity and the full homomorphism condition.
    pub fn new(from: Arc<PaMonoid>, to: Arc<PaMonoid>, map: Vec<usize>) -> Result<Self> {
        let n = from.order();
        if to.order() != n || map.len() != n {
            return Err(Error::NotAnIsomorphism("orders differ".into()));
        }
        let mut hit = vec![false; n];
        for &y in &map {
            if y >= n || std::mem::replace(&mut hit[y], true) {
                return Err(Error::NotAnIsomorphism("not a bijection".into()));
            }
        }
        let (a, b) = (from.monoid(), to.monoid());
        let ok = (0..n)
            .into_par_iter()
            .all(|x| (0..n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
        if !ok {
            return Err(Error::NotAnIsomorphism("products are not preserved".into()));
        }
        Ok(Self { from, to, map })
    }

    pub fn identity(m: &Arc<PaMonoid>) -> Self {
        Self { from: m.clone(), to: m.clone(), map: (0..m.order()).collect() }
    }

    pub fn from(&self) -> &Arc<PaMonoid> {
        &self.from
    }

    pub fn to(&self) -> &Arc<PaMonoid> {
        &self.to
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `αΦ` as a partial bijection of `T`.
    pub fn image(&self, alpha: &PartialBijection) -> Option<&PartialBijection> {
        self.from.monoid().index_of(alpha).map(|i| self.to.monoid().element(self.map[i]))
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Self { from: self.to.clone(), to: self.from.clone(), map }
    }

    pub fn then(&self, next: &PaIso) -> Result<Self> {
        if !Arc::ptr_eq(&self.to, &next.from) && self.to.base() != next.from.base() {
            return Err(Error::CarrierMismatch);
        }
        Ok(Self { from: self.from.clone(), to: next.to.clone(), map: self.map.iter().map(|&i| next.map[i]).collect() })
    }

    /// `Φ*` given by `1_H Φ = 1_{HΦ*}`, after checking that `dom(αΦ) = (dom α)Φ*`
    /// and `ran(αΦ) = (ran α)Φ*` for every `α`.
    pub fn star_map(&self) -> Result<LatticeIso> {
        let (lf, lt) = (self.from.lattice(), self.to.lattice());
        let mut map = Vec::with_capacity(lf.len());
        for i in 0..lf.len() {
            let img = self.map[self.from.unit_of_member(i)];
            map.push(self.to.member_of_unit(img).ok_or(Error::IdempotentImageNotIdentityMap(i))?);
        }
        let star = LatticeIso { from: lf.clone(), to: lt.clone(), map };
        for (i, alpha) in self.from.monoid().elements().iter().enumerate() {
            let beta = self.to.monoid().element(self.map[i]);
            if star.image(&alpha.domain()) != Some(&beta.domain()) || star.image(&alpha.range()) != Some(&beta.range()) {
                return Err(Error::NotAnIsomorphism(format!("domain of {alpha} is not carried to the domain of its image")));
            }
        }
        Ok(star)
    }

    /// The E-bijection `φ_E` associated with `Φ*`.
    pub fn phi_e(&self) -> Result<PartialBijection> {
        e_bijection(&self.star_map()?)
    }

    /// The bijection of `M_S` onto `M_T` with `⟨x⟩Φ* = ⟨xφ⟩`, with case tags.
    pub fn phi_assoc(&self) -> Result<AssociatedBijection> {
        let star = self.star_map()?;
        let (s, t) = (self.from.base(), self.to.base());
        let mut pairs = Vec::new();
        let mut cases = Vec::new();
        for x in s.m_set().iter() {
            let img = star.image(&s.monogenic(x)).ok_or(Error::NoCandidate(x))?;
            let gens: Vec<usize> = img.iter().filter(|&y| &t.monogenic(y) == img).collect();
            let y = match gens.as_slice() {
                [] => return Err(Error::NoCandidate(x)),
                [y] => *y,
                _ => return Err(Error::NonUniqueGenerator(x)),
            };
            let (ox, ix, _) = s.index_period(x);
            let (oy, iy, _) = t.index_period(y);
            let case = if s.is_idempotent(x) && t.is_idempotent(y) {
                PhiCase::Idempotent
            } else if ix > 1 && iy > 1 {
                PhiCase::NonGroup
            } else if ox == 2 && oy == 2 && ix == 1 && iy == 1 {
                PhiCase::BothCyclic
            } else if ox == 2 && oy == 2 && ix + iy == 3 {
                PhiCase::CyclicAndNull
            } else {
                return Err(Error::NotAnIsomorphism(format!("{x} fits no case of the trichotomy")));
            };
            pairs.push((x, y));
            cases.push((x, case));
        }
        Ok(AssociatedBijection { map: PartialBijection::from_pairs(s, t, pairs)?, cases })
    }

    /// The restriction of `Φ` to `PA(H)`, as a PA-isomorphism of `H` onto `HΦ*`.
    ///
    /// `None` for `H = ∅`, where the restriction is the map `∅ -> ∅`.
    pub fn restrict_to(&self, h: &ElemSet, opts: PaOptions) -> Result<Option<PaIso>> {
        if h.is_empty() {
            return Ok(None);
        }
        let star = self.star_map()?;
        let k = star.image(h).ok_or_else(|| Error::InvalidParameter(format!("{h} is not a subsemigroup")))?.clone();
        let (s, t) = (self.from.base(), self.to.base());
        let (hs, eh) = s.restrict(h)?;
        let (ks, ek) = t.restrict(&k)?;
        let back: HashMap<usize, usize> = ek.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let (ph, pk) = (Arc::new(pa_monoid(&hs, opts)?), Arc::new(pa_monoid(&ks, opts)?));
        let mut map = Vec::with_capacity(ph.order());
        for beta in ph.monoid().elements() {
            let lifted = PartialBijection::from_pairs(s, s, beta.pairs().map(|(x, y)| (eh[x], eh[y])))?;
            let img = self.image(&lifted).ok_or(Error::RestrictionNotPa(0))?;
            let down = PartialBijection::from_pairs(&ks, &ks, img.pairs().map(|(x, y)| (back[&x], back[&y])))?;
            map.push(pk.monoid().index_of(&down).ok_or(Error::ImageNotInTarget(map.len()))?);
        }
        PaIso::new(ph, pk, map).map(Some)
    }

    /// The restriction to `PAi(S)`, which lands in `PAi(T)` when both are inverse.
    pub fn restrict_to_pai(&self, opts: PaOptions) -> Result<PaIso> {
        let (s, t) = (self.from.base(), self.to.base());
        let (a, b) = (Arc::new(pai_monoid(s, opts)?), Arc::new(pai_monoid(t, opts)?));
        let mut map = Vec::with_capacity(a.order());
        for (i, alpha) in a.monoid().elements().iter().enumerate() {
            let img = self.image(alpha).ok_or(Error::ImageNotInTarget(i))?;
            map.push(b.monoid().index_of(img).ok_or(Error::ImageNotInTarget(i))?);
        }
        PaIso::new(a, b, map)
    }

    /// Whether the total bijection `theta` induces this isomorphism.
    pub fn is_induced_by(&self, theta: &PartialBijection) -> bool {
        self.from.monoid().elements().iter().enumerate().all(|(i, alpha)| {
            alpha.transport(theta).is_ok_and(|t| &t == self.to.monoid().element(self.map[i]))
        })
    }
}

/// The PA-isomorphism induced by a total bijection `theta: S -> T`, or the
/// first obstruction met.
pub fn induces(
    theta: &PartialBijection,
    from: &Arc<PaMonoid>,
    to: &Arc<PaMonoid>,
) -> std::result::Result<PaIso, Obstruction> {
    if from.order() != to.order() {
        return Err(Obstruction::SizeMismatch);
    }
    let mut map = Vec::with_capacity(from.order());
    for alpha in from.monoid().elements() {
        let img = alpha.transport(theta).map_err(|_| Obstruction::Forward(alpha.clone()))?;
        match to.monoid().index_of(&img) {
            Some(j) => map.push(j),
            None => return Err(Obstruction::Forward(alpha.clone())),
        }
    }
    let mut hit = vec![false; to.order()];
    for &j in &map {
        hit[j] = true;
    }
    if let Some(j) = hit.iter().position(|&h| !h) {
        return Err(Obstruction::Backward(to.monoid().element(j).clone()));
    }
    Ok(PaIso::new(from.clone(), to.clone(), map).expect("transport preserves composition"))
}

/// The explicit PA-isomorphism of `C_2 × P` onto `Q^⟨1⟩` built from one of
/// `P` onto `Q`, for groups of odd order.
///
/// `αΦ = α_PΨ` when `α = α_P`, otherwise `α_PΨ ∪ {(z, z)}`, where `α_P` is the
/// restriction of `α` to `P ∩ dom α`. Returns the verified `Φ`.
pub fn inflation_pa_iso(psi: &PaIso, opts: PaOptions) -> Result<PaIso> {
    let (p, q) = (psi.from().base(), psi.to().base());
    for h in [p, q] {
        if !h.is_group() {
            return Err(Error::NotAGroup);
        }
        if h.order() % 2 == 0 {
            return Err(Error::EvenOrder(h.order()));
        }
    }
    let g = direct_product(&cyclic_group(2)?, p);
    let s = inflate_at_identity(q)?;
    let (np, z) = (p.order(), q.order());
    let (pg, ps) = (Arc::new(pa_monoid(&g, opts)?), Arc::new(pa_monoid(&s, opts)?));
    let in_p: ElemSet = (0..np).collect();
    let mut map = Vec::with_capacity(pg.order());
    for (i, alpha) in pg.monoid().elements().iter().enumerate() {
        let alpha_p = alpha.restrict(&in_p);
        if alpha_p.pairs().any(|(_, y)| y >= np) {
            return Err(Error::RestrictionNotPa(i));
        }
        let on_p = PartialBijection::from_pairs(p, p, alpha_p.pairs())?;
        let k = psi.from().monoid().index_of(&on_p).ok_or(Error::RestrictionNotPa(i))?;
        let beta = psi.to().monoid().element(psi.apply(k));
        let extra = (alpha_p != *alpha).then_some((z, z));
        let img = PartialBijection::from_pairs(&s, &s, beta.pairs().chain(extra))?;
        map.push(ps.monoid().index_of(&img).ok_or(Error::ImageNotInTarget(i))?);
    }
    PaIso::new(pg, ps, map)
}

/// All isomorphisms between two PA monoids, at most `limit`, with the identity
/// and zero fixed.
pub fn pa_isomorphisms(a: &Arc<PaMonoid>, b: &Arc<PaMonoid>, limit: Option<usize>) -> Vec<PaIso> {
    let (ma, mb) = (a.monoid(), b.monoid());
    if ma.order() != mb.order() || a.lattice().len() != b.lattice().len() {
        return Vec::new();
    }
    let mut forced = vec![(ma.identity(), mb.identity())];
    if let (Some(x), Some(y)) = (ma.zero(), mb.zero()) {
        forced.push((x, y));
    }
    let sa = Magma { n: ma.order(), table: ma.semigroup().table() };
    let sb = Magma { n: mb.order(), table: mb.semigroup().table() };
    search::find(sa, sb, None, &forced, limit)
        .into_iter()
        .map(|map| PaIso { from: a.clone(), to: b.clone(), map })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{brandt5, monogenic_mn, null_semigroup, trivial};

    fn pa(s: &Semigroup) -> Arc<PaMonoid> {
        Arc::new(pa_monoid(s, PaOptions::default()).unwrap())
    }

    #[test]
    fn small_pa_orders() {
        assert_eq!(pa(&trivial()).order(), 2);
        assert_eq!(pa(&cyclic_group(2).unwrap()).order(), 3);
        assert_eq!(pa(&null_semigroup(2).unwrap()).order(), 3);
        assert_eq!(pa(&cyclic_group(3).unwrap()).order(), 4);
        for s in [cyclic_group(3).unwrap(), brandt5(), monogenic_mn(2, 2).unwrap()] {
            assert!(pa(&s).structure_holds());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = pa_monoid(&brandt5(), PaOptions { cap: 5 }).unwrap_err();
        assert_eq!(err, Error::SizeCapExceeded { cap: 5 });
    }

    #[test]
    fn c2_and_n2() {
        let (a, b) = (pa(&cyclic_group(2).unwrap()), pa(&null_semigroup(2).unwrap()));
        let isos = pa_isomorphisms(&a, &b, None);
        assert_eq!(isos.len(), 1);
        let phi = isos[0].phi_assoc().unwrap();
        assert_eq!(phi.map.apply(1), Some(1));
        assert!(phi.cases.contains(&(1, PhiCase::CyclicAndNull)));
    }

    #[test]
    fn pai_is_smaller_for_brandt() {
        let b = brandt5();
        let (full, inv) = (pa(&b), pai_monoid(&b, PaOptions::default()).unwrap());
        assert!(inv.order() < full.order());
        assert!(inv.monoid().elements().iter().all(|a| full.monoid().index_of(a).is_some()));
        assert!(inv.structure_holds());
    }

    #[test]
    fn inflation_pa_iso_small() {
        let c1 = pa(&trivial());
        let psi = PaIso::identity(&c1);
        let phi = inflation_pa_iso(&psi, PaOptions::default()).unwrap();
        assert_eq!(phi.from().order(), 3);
        assert_eq!(inflation_pa_iso(&PaIso::identity(&pa(&cyclic_group(2).unwrap())), PaOptions::default()).unwrap_err(), Error::EvenOrder(2));
    }
}
