//! Decision procedures for isomorphism, anti-isomorphism, monoid isomorphism
//! and PA-isomorphism, each returning explicit witnesses.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pam::{pa_isomorphisms, pa_monoid, AssociatedBijection, FiniteMonoid, PaIso, PaMonoid, PaOptions};
use crate::pbij::PartialBijection;
use crate::search::{self, Magma};
use crate::semigroup::{CarrierId, Semigroup};
use crate::sublat::{lattice_isomorphisms, LatticeIso, SubLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoKind {
    Iso,
    AntiIso,
    MonoidIso,
    LatticeIso,
    PaIso,
}

/// A bijection certifying that two tables are related as its kind says.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub kind: IsoKind,
    pub source: CarrierId,
    pub target: CarrierId,
    pub map: Vec<usize>,
}

impl IsoWitness {
    /// Replays the witness against both tables.
    ///
    /// Lattice witnesses are checked against the meet tables of the lattices
    /// and PA witnesses against the monoid tables.
    pub fn verify(&self, s: &Semigroup, t: &Semigroup) -> bool {
        let bijective = {
            let mut seen = vec![false; t.order()];
            self.map.len() == s.order()
                && s.order() == t.order()
                && self.map.iter().all(|&y| y < t.order() && !std::mem::replace(&mut seen[y], true))
        };
        bijective
            && match self.kind {
                IsoKind::AntiIso => s.is_anti_homomorphism(t, &self.map),
                _ => s.is_homomorphism(t, &self.map),
            }
    }

    pub fn as_bijection(&self, s: &Semigroup, t: &Semigroup) -> Result<PartialBijection> {
        PartialBijection::total(s, t, &self.map)
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Self { kind: self.kind, source: self.target, target: self.source, map }
    }
}

fn magma(s: &Semigroup) -> Magma<'_> {
    Magma { n: s.order(), table: s.table() }
}

/// Isomorphisms `S -> T` in deterministic order, at most `limit`.
pub fn isomorphisms(s: &Semigroup, t: &Semigroup, limit: Option<usize>) -> Vec<IsoWitness> {
    search::find(magma(s), magma(t), None, &[], limit)
        .into_iter()
        .map(|map| IsoWitness { kind: IsoKind::Iso, source: s.carrier_id(), target: t.carrier_id(), map })
        .collect()
}

/// Anti-isomorphisms `S -> T`, found as isomorphisms onto the opposite of `T`.
pub fn anti_isomorphisms(s: &Semigroup, t: &Semigroup, limit: Option<usize>) -> Vec<IsoWitness> {
    let op = t.opposite();
    search::find(magma(s), magma(&op), None, &[], limit)
        .into_iter()
        .map(|map| IsoWitness { kind: IsoKind::AntiIso, source: s.carrier_id(), target: t.carrier_id(), map })
        .collect()
}

pub fn are_isomorphic(s: &Semigroup, t: &Semigroup) -> bool {
    !isomorphisms(s, t, Some(1)).is_empty()
}

pub fn are_iso_or_anti(s: &Semigroup, t: &Semigroup) -> bool {
    are_isomorphic(s, t) || !anti_isomorphisms(s, t, Some(1)).is_empty()
}

/// Lattice isomorphisms as witnesses over member indices.
pub fn lattice_witnesses(a: &Arc<SubLattice>, b: &Arc<SubLattice>, limit: Option<usize>) -> Vec<IsoWitness> {
    lattice_isomorphisms(a, b, limit)
        .into_iter()
        .map(|l| IsoWitness {
            kind: IsoKind::LatticeIso,
            source: a.universe().carrier_id(),
            target: b.universe().carrier_id(),
            map: l.map,
        })
        .collect()
}

fn idempotent_part(m: &FiniteMonoid) -> Option<Semigroup> {
    let e = m.semigroup().idempotents();
    m.semigroup().restrict(&e).ok().map(|(s, _)| s)
}

/// Monoid isomorphisms with identity and zero fixed, at most `limit`.
///
/// Requires the idempotents of both monoids to be isomorphic first.
pub fn monoid_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid, limit: Option<usize>, cap: usize) -> Result<Vec<IsoWitness>> {
    if a.order().max(b.order()) > cap {
        return Err(Error::SizeCapExceeded { cap });
    }
    if a.order() != b.order() || a.zero().is_some() != b.zero().is_some() {
        return Ok(Vec::new());
    }
    match (idempotent_part(a), idempotent_part(b)) {
        (Some(x), Some(y)) if !are_isomorphic(&x, &y) => return Ok(Vec::new()),
        (Some(_), None) | (None, Some(_)) => return Ok(Vec::new()),
        _ => {}
    }
    let mut forced = vec![(a.identity(), b.identity())];
    if let (Some(x), Some(y)) = (a.zero(), b.zero()) {
        forced.push((x, y));
    }
    let (sa, sb) = (a.semigroup(), b.semigroup());
    Ok(search::find(magma(sa), magma(sb), None, &forced, limit)
        .into_iter()
        .map(|map| IsoWitness { kind: IsoKind::MonoidIso, source: sa.carrier_id(), target: sb.carrier_id(), map })
        .collect())
}

/// Result of a PA-isomorphism test with the derived maps on success.
#[derive(Clone, Debug)]
pub struct PaVerdict {
    pub isomorphic: bool,
    /// Name of the cheap invariant that separated the two, if any did.
    pub separated_by: Option<&'static str>,
    pub phi: Option<PaIso>,
    pub star: Option<LatticeIso>,
    pub phi_e: Option<PartialBijection>,
    pub associated: Option<AssociatedBijection>,
}

impl PaVerdict {
    fn negative(reason: Option<&'static str>) -> Self {
        Self { isomorphic: false, separated_by: reason, phi: None, star: None, phi_e: None, associated: None }
    }

    /// The monoid-level witness of a positive verdict.
    pub fn witness(&self) -> Option<IsoWitness> {
        self.phi.as_ref().map(|p| IsoWitness {
            kind: IsoKind::PaIso,
            source: p.from().base().carrier_id(),
            target: p.to().base().carrier_id(),
            map: p.map().to_vec(),
        })
    }
}

/// Decides whether two already-built PA monoids are isomorphic.
pub fn pa_isomorphic_monoids(a: &Arc<PaMonoid>, b: &Arc<PaMonoid>) -> Result<PaVerdict> {
    if a.lattice().len() != b.lattice().len() {
        return Ok(PaVerdict::negative(Some("subsemigroup count")));
    }
    if a.base().idempotents().len() != b.base().idempotents().len() {
        return Ok(PaVerdict::negative(Some("idempotent count")));
    }
    if a.order() != b.order() {
        return Ok(PaVerdict::negative(Some("monoid order")));
    }
    if lattice_isomorphisms(a.lattice(), b.lattice(), Some(1)).is_empty() {
        return Ok(PaVerdict::negative(Some("subsemigroup lattice")));
    }
    let Some(phi) = pa_isomorphisms(a, b, Some(1)).pop() else {
        return Ok(PaVerdict::negative(None));
    };
    let phi = PaIso::new(phi.from().clone(), phi.to().clone(), phi.map().to_vec())?;
    let star = phi.star_map()?;
    let phi_e = phi.phi_e()?;
    let associated = phi.phi_assoc()?;
    Ok(PaVerdict {
        isomorphic: true,
        separated_by: None,
        phi: Some(phi),
        star: Some(star),
        phi_e: Some(phi_e),
        associated: Some(associated),
    })
}

/// Builds `PA(S)` and `PA(T)` and decides whether they are isomorphic.
pub fn pa_isomorphic(s: &Semigroup, t: &Semigroup, opts: PaOptions) -> Result<PaVerdict> {
    let (ls, lt) = (SubLattice::sub(s), SubLattice::sub(t));
    if ls.len() != lt.len() {
        return Ok(PaVerdict::negative(Some("subsemigroup count")));
    }
    let a = Arc::new(pa_monoid(s, opts)?);
    let b = Arc::new(pa_monoid(t, opts)?);
    pa_isomorphic_monoids(&a, &b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InducerKind {
    Iso,
    AntiIso,
    /// Both an isomorphism and an anti-isomorphism (commutative case).
    Both,
    Neither,
}

/// A total bijection inducing a given PA-isomorphism.
#[derive(Clone, Debug)]
pub struct Inducer {
    pub theta: PartialBijection,
    pub kind: InducerKind,
}

/// Every bijection `S -> T` inducing `Φ`, each classified.
///
/// Candidates extend the associated bijection on `M_S`; when `S = M_S` that
/// bijection must itself induce `Φ`.
pub fn induced_by_iso_or_antiiso(phi: &PaIso) -> Result<Vec<Inducer>> {
    let (s, t) = (phi.from().base(), phi.to().base());
    let assoc = phi.phi_assoc()?;
    let n = s.order();
    let mut theta = vec![usize::MAX; n];
    let mut used = vec![false; t.order()];
    for (x, y) in assoc.map.pairs() {
        theta[x] = y;
        used[y] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&x| theta[x] == usize::MAX).collect();
    let targets: Vec<usize> = (0..t.order()).filter(|&y| !used[y]).collect();
    if free.len() != targets.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut taken = vec![false; targets.len()];
    extend(phi, s, t, &free, &targets, 0, &mut theta, &mut taken, &mut out)?;
    if free.is_empty() && out.is_empty() {
        return Err(Error::NotAnIsomorphism("the associated bijection does not induce the isomorphism".into()));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    phi: &PaIso,
    s: &Semigroup,
    t: &Semigroup,
    free: &[usize],
    targets: &[usize],
    k: usize,
    theta: &mut Vec<usize>,
    taken: &mut Vec<bool>,
    out: &mut Vec<Inducer>,
) -> Result<()> {
    if k == free.len() {
        let bij = PartialBijection::total(s, t, theta)?;
        if phi.is_induced_by(&bij) {
            let kind = match (s.is_homomorphism(t, theta), s.is_anti_homomorphism(t, theta)) {
                (true, true) => InducerKind::Both,
                (true, false) => InducerKind::Iso,
                (false, true) => InducerKind::AntiIso,
                (false, false) => InducerKind::Neither,
            };
            out.push(Inducer { theta: bij, kind });
        }
        return Ok(());
    }
    for j in 0..targets.len() {
        if !taken[j] {
            taken[j] = true;
            theta[free[k]] = targets[j];
            extend(phi, s, t, free, targets, k + 1, theta, taken, out)?;
            taken[j] = false;
        }
    }
    theta[free[k]] = usize::MAX;
    Ok(())
}
