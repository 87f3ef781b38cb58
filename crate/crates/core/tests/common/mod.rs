//! Random semigroups and definition-level invariant checks shared by the
//! property suites and the acceptance runner.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use pamona::construct::{
    adjoin_zero, brandt5, chain_semilattice, cyclic_group, dihedral, direct_product, inflate_at_identity, left_zero,
    monogenic_mn, munn, null_semigroup, right_zero,
};
use pamona::enumerate::{census, CensusMode};
use pamona::green::NaturalOrder;
use pamona::pam::{pa_isomorphisms, pa_monoid, PaOptions};
use pamona::props::{is_completely_semisimple, is_shortly_connected, is_shortly_linked, short_bypass};
use pamona::sublat::{e_bijection, weak_iso_check, SubLattice};
use pamona::verify::two_atom_semilattice;
use pamona::{ElemSet, GreenData, PartialBijection, Semigroup};
use proptest::prelude::*;

/// Largest carrier the generator builds.
pub const MAX_GENERATED: usize = 12;

/// Census members up to order 3 plus a spread of named constructions.
pub fn base_pool() -> Vec<Semigroup> {
    let mut pool: Vec<Semigroup> = Vec::new();
    for n in 1..=3 {
        pool.extend(census(n, CensusMode::default()).unwrap().semigroups().cloned());
    }
    for n in 1..=6 {
        pool.push(cyclic_group(n).unwrap());
    }
    for (m, n) in [(2, 2), (3, 1), (3, 2), (2, 3), (4, 1)] {
        pool.push(monogenic_mn(m, n).unwrap());
    }
    pool.extend([
        brandt5(),
        chain_semilattice(4),
        left_zero(3).unwrap(),
        right_zero(3).unwrap(),
        null_semigroup(3).unwrap(),
        dihedral(3).unwrap(),
        two_atom_semilattice(),
        munn(&two_atom_semilattice()).unwrap().semigroup,
        inflate_at_identity(&cyclic_group(3).unwrap()).unwrap(),
    ]);
    pool
}

/// A recipe: a pool member, a list of `(operation, operand)` steps and
/// sort keys that fix the final relabelling.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub base: usize,
    pub steps: Vec<(u8, usize)>,
    pub keys: Vec<u32>,
}

pub fn build(pool: &[Semigroup], r: &Recipe, max: usize) -> Semigroup {
    let mut s = pool[r.base % pool.len()].clone();
    for &(op, k) in &r.steps {
        let other = &pool[k % pool.len()];
        let next = match op % 5 {
            0 => Some(s.opposite()),
            1 => Some(adjoin_zero(&s)),
            2 if s.is_group() => inflate_at_identity(&s).ok(),
            3 => Some(direct_product(&s, other)),
            4 if s.is_semilattice() && s.order() <= 4 => munn(&s).ok().map(|m| m.semigroup),
            _ => None,
        };
        if let Some(t) = next.filter(|t| t.order() <= max) {
            s = t;
        }
    }
    let n = s.order();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&i| (r.keys[i % r.keys.len()], i));
    s.permuted(&perm).without_labels()
}

pub fn recipe() -> impl Strategy<Value = Recipe> {
    (any::<usize>(), prop::collection::vec((0u8..5, any::<usize>()), 0..4), prop::collection::vec(any::<u32>(), MAX_GENERATED))
        .prop_map(|(base, steps, keys)| Recipe { base, steps, keys })
}

/// Random semigroups of order at most `max`, shrinking towards pool members.
pub fn semigroup(max: usize) -> impl Strategy<Value = Semigroup> {
    let pool = Arc::new(base_pool().into_iter().filter(|s| s.order() <= max).collect::<Vec<_>>());
    recipe().prop_map(move |r| build(&pool, &r, max))
}

/// Random inverse semigroups of order at most `max`; recipes that leave the
/// class fall back to their base.
pub fn inverse_semigroup(max: usize) -> impl Strategy<Value = Semigroup> {
    let pool = Arc::new(
        base_pool().into_iter().filter(|s| s.order() <= max && s.is_inverse_semigroup()).collect::<Vec<_>>(),
    );
    recipe().prop_map(move |r| {
        let s = build(&pool, &r, max);
        if s.is_inverse_semigroup() {
            s
        } else {
            build(&pool, &Recipe { steps: Vec::new(), ..r }, max)
        }
    })
}

fn mul(s: &Semigroup, a: usize, b: usize) -> usize {
    s.mul(a, b)
}

/// `S¹ x S¹`, `S¹ x` and `x S¹` straight from the table.
fn ideals(s: &Semigroup, x: usize) -> (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) {
    let n = s.order();
    let mut left: BTreeSet<usize> = (0..n).map(|a| mul(s, a, x)).collect();
    left.insert(x);
    let mut right: BTreeSet<usize> = (0..n).map(|b| mul(s, x, b)).collect();
    right.insert(x);
    let mut two: BTreeSet<usize> = left.iter().flat_map(|&l| (0..n).map(move |b| mul(s, l, b))).collect();
    two.extend(left.iter().copied());
    (two, left, right)
}

fn inverses(s: &Semigroup, a: usize) -> Vec<usize> {
    s.elements().filter(|&b| mul(s, mul(s, a, b), a) == a && mul(s, mul(s, b, a), b) == b).collect()
}

/// Least `(m, k)` with `x^m = x^{m+k}`, found by listing powers.
fn index_period(s: &Semigroup, x: usize) -> (usize, usize) {
    let mut powers = vec![x];
    loop {
        let next = mul(s, *powers.last().unwrap(), x);
        if let Some(m) = powers.iter().position(|&p| p == next) {
            return (m + 1, powers.len() - m);
        }
        powers.push(next);
    }
}

fn closure(s: &Semigroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    let mut queue: VecDeque<usize> = gens.iter().copied().collect();
    while let Some(a) = queue.pop_front() {
        for b in set.clone() {
            for p in [mul(s, a, b), mul(s, b, a)] {
                if set.insert(p) {
                    queue.push_back(p);
                }
            }
        }
    }
    set
}

/// Invariants of green relations, powers and inverses, checked against the definitions.
pub fn core_failures(s: &Semigroup) -> Vec<String> {
    let mut bad = Vec::new();
    let n = s.order();
    let ideal: Vec<_> = s.elements().map(|x| ideals(s, x)).collect();
    let green = GreenData::compute(s);
    for x in 0..n {
        for y in 0..n {
            let l = ideal[x].1 == ideal[y].1;
            let r = ideal[x].2 == ideal[y].2;
            let j = ideal[x].0 == ideal[y].0;
            // x D y iff some z has x L z and z R y.
            let d = (0..n).any(|z| ideal[x].1 == ideal[z].1 && ideal[z].2 == ideal[y].2);
            if d != j {
                bad.push(format!("D = J fails at ({x}, {y})"));
            }
            if green.d_class_of(x).contains(y) != d || green.h_class_of(x).contains(y) != (l && r) {
                bad.push(format!("green classes disagree at ({x}, {y})"));
            }
        }
        let (m, k) = index_period(s, x);
        let (o, i, p) = s.index_period(x);
        if (i, p) != (m, k) || o != m + k - 1 || s.monogenic(x).len() != o {
            bad.push(format!("index/period of {x}"));
        }
    }
    let idems: Vec<usize> = s.elements().filter(|&e| mul(s, e, e) == e).collect();
    let regular = s.elements().all(|a| !inverses(s, a).is_empty());
    let commute = idems.iter().all(|&e| idems.iter().all(|&f| mul(s, e, f) == mul(s, f, e)));
    let inverse = regular && commute;
    if inverse != s.is_inverse_semigroup() {
        bad.push("inverse classification".into());
    }
    if inverse {
        if s.elements().any(|a| inverses(s, a).len() != 1) {
            bad.push("unique inverses".into());
        }
        let inv: Vec<usize> = s.elements().map(|a| inverses(s, a)[0]).collect();
        let leq = |x: usize, y: usize| x == mul(s, mul(s, x, inv[x]), y);
        let order = NaturalOrder::compute(s).unwrap();
        for x in 0..n {
            for y in 0..n {
                if order.leq(x, y) != leq(x, y) {
                    bad.push(format!("natural order at ({x}, {y})"));
                }
                if leq(x, y) && !(0..n).all(|z| leq(mul(s, x, z), mul(s, y, z)) && leq(mul(s, z, x), mul(s, z, y))) {
                    bad.push(format!("natural order not compatible at ({x}, {y})"));
                }
            }
        }
    }
    if !is_completely_semisimple(s) {
        bad.push("completely semisimple".into());
    }
    bad
}

/// Lattice invariants: closure enumeration against the subset filter, atoms,
/// and weak isomorphism of the idempotent bijection induced by PA automorphisms.
///
/// Arbitrary lattice automorphisms are not enough: see `lattice_automorphism_need_not_be_weak`.
pub fn sublat_failures(s: &Semigroup, automorphisms: usize) -> Vec<String> {
    let mut bad = Vec::new();
    let n = s.order();
    let lat = SubLattice::sub(s);
    if n <= 12 {
        let closed: BTreeSet<Vec<usize>> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|v| v.iter().all(|&a| v.iter().all(|&b| v.contains(&mul(s, a, b)))))
            .collect();
        let members: BTreeSet<Vec<usize>> = lat.members().iter().map(|m| m.to_vec()).collect();
        if closed != members {
            bad.push(format!("subset filter finds {} members, closure finds {}", closed.len(), members.len()));
        }
    }
    let atoms: BTreeSet<Vec<usize>> = lat.atoms().iter().map(|&a| lat.member(a).to_vec()).collect();
    let singletons: BTreeSet<Vec<usize>> = s.elements().filter(|&e| mul(s, e, e) == e).map(|e| vec![e]).collect();
    if atoms != singletons {
        bad.push("atoms are not the idempotent singletons".into());
    }
    if automorphisms > 0 {
        let p = Arc::new(pa_monoid(s, PaOptions::default()).unwrap());
        for phi in pa_isomorphisms(&p, &p, Some(automorphisms)) {
            let ok = phi.star_map().and_then(|psi| e_bijection(&psi)).is_ok_and(|e| weak_iso_check(&e, s, s));
            if !ok {
                bad.push("E-bijection of a PA automorphism is not a weak isomorphism".into());
                break;
            }
        }
    }
    bad
}

/// PA monoid invariants on the composition table alone.
pub fn pam_failures(s: &Semigroup, automorphisms: usize) -> Vec<String> {
    let mut bad = Vec::new();
    let p = Arc::new(pa_monoid(s, PaOptions::default()).unwrap());
    let m = p.monoid();
    let size = m.order();
    let inv: Vec<Vec<usize>> = (0..size)
        .map(|a| (0..size).filter(|&b| m.mul(m.mul(a, b), a) == a && m.mul(m.mul(b, a), b) == b).collect())
        .collect();
    let idems: Vec<usize> = (0..size).filter(|&e| m.mul(e, e) == e).collect();
    let identity = (0..size).find(|&u| (0..size).all(|x| m.mul(u, x) == x && m.mul(x, u) == x));
    if inv.iter().any(|v| v.len() != 1) || identity.is_none() {
        bad.push("PA is not an inverse monoid".into());
        return bad;
    }
    if idems.iter().any(|&e| idems.iter().any(|&f| m.mul(e, f) != m.mul(f, e))) {
        bad.push("idempotents of PA do not commute".into());
    }
    // Idempotents are exactly the identities on subsemigroups, ordered by inclusion.
    let domains: BTreeSet<Vec<usize>> = idems.iter().map(|&e| m.element(e).domain().to_vec()).collect();
    let members: BTreeSet<Vec<usize>> = SubLattice::sub(s).members().iter().map(|x| x.to_vec()).collect();
    if domains != members || idems.iter().any(|&e| !m.element(e).is_identity_map()) {
        bad.push("idempotents of PA are not the identities on subsemigroups".into());
    }
    for &e in &idems {
        for &f in &idems {
            let below = m.mul(e, f) == e;
            if below != m.element(e).domain().is_subset(&m.element(f).domain()) {
                bad.push("idempotent order differs from inclusion".into());
            }
        }
    }
    let identity_on = |set: &ElemSet| m.index_of(&PartialBijection::identity_on(s, set)).unwrap();
    for phi in pa_isomorphisms(&p, &p, Some(automorphisms)) {
        for a in 0..size {
            let b = phi.apply(a);
            let a_inv = inv[a][0];
            // Right action: a·a⁻¹ is the identity on dom a.
            if phi.apply(m.mul(a, a_inv)) != identity_on(&m.element(b).domain())
                || phi.apply(m.mul(a_inv, a)) != identity_on(&m.element(b).range())
            {
                bad.push(format!("dom/ran identity fails at element {a}"));
                break;
            }
        }
    }
    bad
}

/// `[[a]]`, the inverse subsemigroup generated by `a`.
fn monogenic_inverse(s: &Semigroup, a: usize, inv: &[usize]) -> BTreeSet<usize> {
    closure(s, &[a, inv[a]])
}

/// Checks that `chain` is a bypass from `e` to `aa⁻¹` by the definition.
pub fn is_valid_bypass(s: &Semigroup, e: usize, a: usize, chain: &[usize]) -> bool {
    let inv: Vec<usize> = s.elements().map(|x| inverses(s, x)[0]).collect();
    let leq = |x: usize, y: usize| x == mul(s, mul(s, x, inv[x]), y);
    let lt = |x: usize, y: usize| x != y && leq(x, y);
    let idem = |x: usize| mul(s, x, x) == x;
    let top = mul(s, a, inv[a]);
    if chain.first() != Some(&e) || chain.last() != Some(&top) || !chain.iter().all(|&f| idem(f)) {
        return false;
    }
    chain.windows(2).all(|w| {
        let (lo, hi) = (w[0], w[1]);
        let step = mul(s, hi, a);
        let step_top = mul(s, step, inv[step]);
        let between = monogenic_inverse(s, step, &inv)
            .into_iter()
            .any(|f| idem(f) && lt(lo, f) && lt(f, step_top));
        lt(lo, step_top) && !between
    })
}

/// Bypass invariants of a finite inverse semigroup.
pub fn props_failures(s: &Semigroup) -> Vec<String> {
    let mut bad = Vec::new();
    if !s.is_inverse_semigroup() {
        return bad;
    }
    if !is_shortly_linked(s).unwrap() || !is_shortly_connected(s).unwrap() {
        bad.push("not shortly linked and connected".into());
    }
    let inv: Vec<usize> = s.elements().map(|x| inverses(s, x)[0]).collect();
    for a in s.elements() {
        let top = mul(s, a, inv[a]);
        for e in s.elements().filter(|&e| mul(s, e, e) == e && e != top && mul(s, e, top) == e) {
            let ok = short_bypass(s, e, a).unwrap().is_some_and(|b| is_valid_bypass(s, e, a, &b.chain));
            if !ok {
                bad.push(format!("no valid bypass from {e} under {a}"));
            }
        }
    }
    bad
}

/// Every invariant; the PA checks only below `pa_max`.
pub fn all_failures(s: &Semigroup, pa_max: usize) -> Vec<String> {
    let mut bad = core_failures(s);
    let small = s.order() <= pa_max;
    bad.extend(sublat_failures(s, if small { 32 } else { 0 }));
    if small {
        bad.extend(pam_failures(s, 16));
    }
    bad.extend(props_failures(s));
    bad
}
