//! Structural predicates: isolated subgroups, `C_2 × odd` decompositions,
//! short bypasses, the archimedean family and a few classical properties of
//! inverse semigroups.
//!
//! Throughout, "involution-free periodic group" is read as "group of odd
//! order", which is the same thing for finite groups.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::green::{GreenData, NaturalOrder};
use crate::pam::PaIso;
use crate::semigroup::Semigroup;
use crate::set::ElemSet;

/// Idempotents `e` with `D_e = H_e`.
pub fn isolated_idempotents(s: &Semigroup) -> ElemSet {
    let green = GreenData::compute(s);
    s.idempotents().iter().filter(|&e| green.d_class_of(e) == green.h_class_of(e)).collect()
}

/// A group written as `A × P` with `A = {e, a}` and `|P|` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub identity: usize,
    pub involution: usize,
    pub a: ElemSet,
    pub p: ElemSet,
    pub transcript: Vec<String>,
}

impl Decomposition {
    /// The same decomposition with element indices sent through `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        Self {
            identity: f(self.identity),
            involution: f(self.involution),
            a: self.a.map(&f),
            p: self.p.map(&f),
            transcript: self.transcript.clone(),
        }
    }
}

/// Splits a finite group as `C_2 × P` with `|P|` odd, when possible.
pub fn c2_times_odd(g: &Semigroup) -> Result<Option<Decomposition>> {
    if !g.is_group() {
        return Err(Error::NotAGroup);
    }
    let e = g.identity().expect("groups have an identity");
    let involutions: Vec<usize> = g.elements().filter(|&x| x != e && g.mul(x, x) == e).collect();
    let mut transcript = vec![format!("involutions: {}", involutions.len())];
    let [a] = involutions[..] else {
        return Ok(None);
    };
    let p: ElemSet = g.elements().filter(|&x| g.index_period(x).2 % 2 == 1).collect();
    transcript.push(format!("odd-order elements: {} of {}", p.len(), g.order()));
    if 2 * p.len() != g.order() || !g.is_closed(&p) {
        return Ok(None);
    }
    let pair: ElemSet = [e, a].into_iter().collect();
    debug_assert_eq!(pair.intersection(&p).to_vec(), vec![e]);
    let mut products = ElemSet::new();
    for x in pair.iter() {
        for y in p.iter() {
            if g.mul(x, y) != g.mul(y, x) {
                transcript.push(format!("{} and {} do not commute", g.label(x), g.label(y)));
                return Ok(None);
            }
            products.insert(g.mul(x, y));
        }
    }
    if products.len() != g.order() {
        return Ok(None);
    }
    transcript.push(format!("A = {{{}, {}}} is central and A·P = G uniquely", g.label(e), g.label(a)));
    Ok(Some(Decomposition { identity: e, involution: a, a: pair, p, transcript }))
}

fn isolated_groups(s: &Semigroup) -> Vec<(usize, ElemSet)> {
    let green = GreenData::compute(s);
    s.idempotents()
        .iter()
        .filter(|&e| green.d_class_of(e) == green.h_class_of(e))
        .map(|e| (e, green.h_class_of(e).clone()))
        .collect()
}

/// The `C_2 × odd` splittings of the maximal isolated subgroups, in `S`'s indices.
pub fn isolated_decompositions(s: &Semigroup) -> Vec<(usize, Decomposition)> {
    isolated_groups(s)
        .into_iter()
        .filter_map(|(e, h)| {
            let (hs, emb) = s.restrict(&h).expect("H-classes of idempotents are subgroups");
            let d = c2_times_odd(&hs).expect("H-classes of idempotents are groups")?;
            Some((e, d.relabel(|x| emb[x])))
        })
        .collect()
}

/// Inverse, and no maximal isolated subgroup splits as `C_2 × odd`.
pub fn no_isolated_c2_times_odd(s: &Semigroup) -> bool {
    s.is_inverse_semigroup() && isolated_decompositions(s).is_empty()
}

/// Inverse, and no isolated subgroup has order 2 (every isolated `H_e` has odd order).
pub fn no_isolated_order_two(s: &Semigroup) -> bool {
    s.is_inverse_semigroup() && isolated_groups(s).iter().all(|(_, h)| h.len() % 2 == 1)
}

/// Inverse, and every isolated subgroup is trivial.
pub fn no_nontrivial_isolated(s: &Semigroup) -> bool {
    s.is_inverse_semigroup() && isolated_groups(s).iter().all(|(_, h)| h.len() == 1)
}

pub fn is_combinatorial_inverse(s: &Semigroup) -> bool {
    s.is_inverse_semigroup() && s.is_combinatorial()
}

/// Inverse-semigroup data shared by the bypass predicates.
struct InverseCtx<'a> {
    s: &'a Semigroup,
    inv: Vec<usize>,
    order: NaturalOrder,
}

impl<'a> InverseCtx<'a> {
    fn new(s: &'a Semigroup) -> Result<Self> {
        Ok(Self { s, inv: s.inverse_map()?, order: NaturalOrder::compute(s)? })
    }

    fn range_idem(&self, a: usize) -> usize {
        self.s.mul(a, self.inv[a])
    }

    /// Idempotents of `[[a]]`.
    fn idems_of(&self, a: usize) -> ElemSet {
        let m = self.s.monogenic_inverse(a).expect("carrier is inverse");
        m.iter().filter(|&x| self.s.is_idempotent(x)).collect()
    }

    fn a_covered(&self, e: usize, a: usize, idems: &ElemSet) -> bool {
        let top = self.range_idem(a);
        self.s.is_idempotent(e)
            && self.order.lt(e, top)
            && !idems.iter().any(|f| self.order.lt(e, f) && self.order.lt(f, top))
    }
}

/// `e < aa⁻¹` with no idempotent of `[[a]]` strictly between them.
pub fn is_a_covered(s: &Semigroup, e: usize, a: usize) -> Result<bool> {
    let ctx = InverseCtx::new(s)?;
    let idems = ctx.idems_of(a);
    Ok(ctx.a_covered(e, a, &idems))
}

/// A chain `e = e_0 < … < e_n = aa⁻¹` where each `e_{k-1}` is `a_k`-covered
/// by `e_k`, with `a_k = e_k·a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bypass {
    pub chain: Vec<usize>,
    /// `a_1, …, a_n`.
    pub steps: Vec<usize>,
}

impl Bypass {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn bypass_in(ctx: &InverseCtx<'_>, e: usize, a: usize) -> Option<Bypass> {
    let s = ctx.s;
    let top = ctx.range_idem(a);
    if !s.is_idempotent(e) || !ctx.order.lt(e, top) {
        return None;
    }
    let nodes: Vec<usize> = s.idempotents().iter().filter(|&f| ctx.order.leq(e, f) && ctx.order.leq(f, top)).collect();
    let covers: Vec<(usize, ElemSet)> = nodes
        .iter()
        .map(|&f| {
            let af = s.mul(f, a);
            (af, ctx.idems_of(af))
        })
        .collect();
    let slot = |f: usize| nodes.binary_search(&f).expect("chain stays in the interval");
    // `edge(lo, hi)`: lo is (hi·a)-covered by hi.
    let edge = |lo: usize, hi: usize| {
        let (af, idems) = &covers[slot(hi)];
        ctx.a_covered(lo, *af, idems)
    };
    let mut dist = vec![usize::MAX; nodes.len()];
    dist[slot(top)] = 0;
    let mut queue = VecDeque::from([top]);
    while let Some(hi) = queue.pop_front() {
        let d = dist[slot(hi)];
        for &lo in &nodes {
            if dist[slot(lo)] == usize::MAX && edge(lo, hi) {
                dist[slot(lo)] = d + 1;
                queue.push_back(lo);
            }
        }
    }
    if dist[slot(e)] == usize::MAX {
        return None;
    }
    // Every node at distance d-1 above the current one still reaches the top,
    // so taking the smallest index at each step gives the least shortest chain.
    let mut chain = vec![e];
    let mut cur = e;
    while cur != top {
        let want = dist[slot(cur)] - 1;
        cur = *nodes
            .iter()
            .find(|&&hi| dist[slot(hi)] == want && edge(cur, hi))
            .expect("BFS layer has a predecessor");
        chain.push(cur);
    }
    let steps = chain[1..].iter().map(|&f| s.mul(f, a)).collect();
    Some(Bypass { chain, steps })
}

/// The shortest, then lexicographically least, bypass from `e` to `aa⁻¹`.
///
/// `None` when `e` is not an idempotent strictly below `aa⁻¹` or no chain exists.
pub fn short_bypass(s: &Semigroup, e: usize, a: usize) -> Result<Option<Bypass>> {
    let ctx = InverseCtx::new(s)?;
    Ok(bypass_in(&ctx, e, a))
}

/// Every idempotent `e < aa⁻¹` has a short bypass to `aa⁻¹`.
pub fn is_shortly_connected(s: &Semigroup) -> Result<bool> {
    let ctx = InverseCtx::new(s)?;
    let idems = s.idempotents();
    Ok(s.elements().all(|a| idems.iter().all(|e| !ctx.order.lt(e, ctx.range_idem(a)) || bypass_in(&ctx, e, a).is_some())))
}

/// `F_{e,a} = {f ∈ E_[[a]] : e < f ≤ aa⁻¹}`.
pub fn f_set(s: &Semigroup, e: usize, a: usize) -> Result<ElemSet> {
    let ctx = InverseCtx::new(s)?;
    let top = ctx.range_idem(a);
    Ok(ctx.idems_of(a).iter().filter(|&f| ctx.order.lt(e, f) && ctx.order.leq(f, top)).collect())
}

/// Every `F_{e,a}` with `e < aa⁻¹` is finite. Each set is built explicitly and
/// bounded by `|E_S|`.
pub fn is_shortly_linked(s: &Semigroup) -> Result<bool> {
    let ctx = InverseCtx::new(s)?;
    let idems = s.idempotents();
    for a in s.elements() {
        let top = ctx.range_idem(a);
        let of_a = ctx.idems_of(a);
        for e in idems.iter().filter(|&e| ctx.order.lt(e, top)) {
            let f: Vec<usize> = of_a.iter().filter(|&f| ctx.order.lt(e, f) && ctx.order.leq(f, top)).collect();
            if f.len() > idems.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No D-class holds two distinct comparable idempotents.
pub fn is_completely_semisimple(s: &Semigroup) -> bool {
    let green = GreenData::compute(s);
    let idems = s.idempotents().to_vec();
    idems.iter().all(|&e| {
        idems.iter().all(|&f| {
            e == f || !green.d_class_of(e).contains(f) || !(s.mul(e, f) == e && s.mul(f, e) == e)
        })
    })
}

/// In an inverse semigroup, `e ≤ a` with `e ∈ E` forces `a ∈ E`.
pub fn is_e_unitary(s: &Semigroup) -> Result<bool> {
    let order = NaturalOrder::compute(s)?;
    let idems = s.idempotents();
    Ok(s.elements().all(|a| s.is_idempotent(a) || !idems.iter().any(|e| order.leq(e, a))))
}

/// Regular with central idempotents.
pub fn is_clifford(s: &Semigroup) -> bool {
    s.is_regular() && s.idempotents().iter().all(|e| s.elements().all(|x| s.mul(e, x) == s.mul(x, e)))
}

/// Classes of the maximal idempotent-separating congruence
/// `μ = {(a, b) : a⁻¹ea = b⁻¹eb for all e ∈ E}`.
pub fn mu_classes(s: &Semigroup) -> Result<Vec<ElemSet>> {
    let inv = s.inverse_map()?;
    let idems = s.idempotents().to_vec();
    let keys: Vec<Vec<usize>> =
        s.elements().map(|a| idems.iter().map(|&e| s.mul(s.mul(inv[a], e), a)).collect()).collect();
    let mut classes: Vec<(Vec<usize>, ElemSet)> = Vec::new();
    for a in s.elements() {
        match classes.iter_mut().find(|(k, _)| *k == keys[a]) {
            Some((_, c)) => {
                c.insert(a);
            }
            None => classes.push((keys[a].clone(), ElemSet::singleton(a))),
        }
    }
    Ok(classes.into_iter().map(|(_, c)| c).collect())
}

/// `μ` is the identity relation.
pub fn is_fundamental(s: &Semigroup) -> Result<bool> {
    Ok(mu_classes(s)?.iter().all(|c| c.len() == 1))
}

/// The pseudo-, faintly- and quasi-archimedean predicates on a finite inverse semigroup.
///
/// All three quantify over bicyclic or free monogenic inverse subsemigroups,
/// which a finite carrier cannot contain, so the first two hold vacuously.
/// `finite_vacuity` records this; no claim about infinite semigroups is made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchimedeanReport {
    pub pseudo: bool,
    pub faintly: bool,
    pub quasi: bool,
    pub finite_vacuity: bool,
    pub no_bicyclic: bool,
    pub no_free_monogenic: bool,
    /// `[[x]]` is combinatorial for every `x ∈ N_S`.
    pub n_set_combinatorial: bool,
    pub transcript: Vec<String>,
}

pub fn archimedean_family(s: &Semigroup) -> Result<ArchimedeanReport> {
    if !s.is_inverse_semigroup() {
        return Err(Error::NotInverse);
    }
    let mut transcript = Vec::new();
    let no_bicyclic = is_completely_semisimple(s);
    transcript.push(format!("no D-class with comparable idempotents: {no_bicyclic}"));
    let sizes: HashSet<usize> = s.elements().map(|x| s.monogenic_inverse(x).map(|m| m.len())).collect::<Result<_>>()?;
    let no_free_monogenic = sizes.iter().all(|&k| k <= s.order());
    transcript.push(format!("largest [[x]]: {}", sizes.iter().max().copied().unwrap_or(0)));
    let n_set = s.n_set();
    let mut n_set_combinatorial = true;
    for x in n_set.iter() {
        let m = s.monogenic_inverse(x)?;
        let (sub, _) = s.restrict(&m)?;
        if !sub.is_combinatorial() {
            transcript.push(format!("[[{}]] has a nontrivial subgroup", s.label(x)));
            n_set_combinatorial = false;
        }
    }
    transcript.push(format!("|N_S| = {}, every [[x]] combinatorial: {n_set_combinatorial}", n_set.len()));
    let finite_vacuity = no_bicyclic && no_free_monogenic;
    Ok(ArchimedeanReport {
        pseudo: finite_vacuity,
        faintly: finite_vacuity,
        quasi: finite_vacuity && n_set_combinatorial,
        finite_vacuity,
        no_bicyclic,
        no_free_monogenic,
        n_set_combinatorial,
        transcript,
    })
}

/// How `Φ*` moves the maximal subgroup `H_e`, compared with `H_{eφ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HImage {
    /// `H_eΦ* = H_{eφ}`.
    Exact,
    /// `H_eΦ* = H_{eφ} ∪ {z}` with `z` nonregular in the target.
    WithNonregular(usize),
    Other,
}

/// For each idempotent `e` of the (inverse) source: `(e, eφ, shape)`.
pub fn h_class_images(phi: &PaIso) -> Result<Vec<(usize, usize, HImage)>> {
    let (s, t) = (phi.from().base(), phi.to().base());
    if !s.is_inverse_semigroup() {
        return Err(Error::NotInverse);
    }
    let star = phi.star_map()?;
    let phi_e = phi.phi_e()?;
    let (gs, gt) = (GreenData::compute(s), GreenData::compute(t));
    let mut out = Vec::new();
    for e in s.idempotents().iter() {
        let f = phi_e.apply(e).ok_or(Error::NoCandidate(e))?;
        let img = star.image(gs.h_class_of(e)).ok_or(Error::NoCandidate(e))?;
        let hf = gt.h_class_of(f);
        let shape = if img == hf {
            HImage::Exact
        } else {
            match img.difference(hf).to_vec()[..] {
                [z] if hf.is_subset(img) && !t.is_regular_element(z) => HImage::WithNonregular(z),
                _ => HImage::Other,
            }
        };
        out.push((e, f, shape));
    }
    Ok(out)
}

/// Every maximal subgroup lands on `H_{eφ}`, possibly with one extra nonregular element.
pub fn h_class_images_hold(phi: &PaIso) -> Result<bool> {
    Ok(h_class_images(phi)?.iter().all(|(_, _, h)| *h != HImage::Other))
}

/// Nonisolated idempotents always have `H_eΦ* = H_{eφ}`.
pub fn nonisolated_images_exact(phi: &PaIso) -> Result<bool> {
    let isolated = isolated_idempotents(phi.from().base());
    Ok(h_class_images(phi)?.iter().all(|(e, _, h)| isolated.contains(*e) || *h == HImage::Exact))
}

/// For each nonregular `z` of the target, `a = zψ` generates an isolated
/// subgroup of order 2, where `ψ` is the bijection associated with `Φ⁻¹`.
pub fn nonregular_preimages_isolated_c2(phi: &PaIso) -> Result<bool> {
    let (s, t) = (phi.from().base(), phi.to().base());
    if !s.is_inverse_semigroup() {
        return Err(Error::NotInverse);
    }
    let psi = phi.inverse().phi_assoc()?;
    let isolated = isolated_idempotents(s);
    for z in t.elements().filter(|&z| !t.is_regular_element(z)) {
        let a = psi.map.apply(z).ok_or(Error::NoCandidate(z))?;
        let (order, index, _) = s.index_period(a);
        if order != 2 || index != 1 || !isolated.contains(s.mul(a, a)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{adjoin_zero, brandt5, chain_semilattice, cyclic_group, dihedral, null_semigroup, small_groups};

    #[test]
    fn isolated_examples() {
        assert_eq!(isolated_idempotents(&cyclic_group(4).unwrap()).to_vec(), vec![0]);
        assert_eq!(isolated_idempotents(&brandt5()).to_vec(), vec![0]);
        let c2z = adjoin_zero(&cyclic_group(2).unwrap());
        assert_eq!(isolated_idempotents(&c2z).len(), 2);
    }

    #[test]
    fn c2_odd_splittings() {
        let d = c2_times_odd(&cyclic_group(6).unwrap()).unwrap().unwrap();
        assert_eq!(d.involution, 3);
        assert_eq!(d.p.to_vec(), vec![0, 2, 4]);
        assert!(c2_times_odd(&cyclic_group(4).unwrap()).unwrap().is_none());
        assert!(c2_times_odd(&cyclic_group(3).unwrap()).unwrap().is_none());
        assert!(c2_times_odd(&cyclic_group(2).unwrap()).unwrap().is_some());
        // S3 has three involutions.
        assert!(c2_times_odd(&dihedral(3).unwrap()).unwrap().is_none());
        assert_eq!(c2_times_odd(&null_semigroup(2).unwrap()).unwrap_err(), Error::NotAGroup);
        for (name, g) in small_groups() {
            if let Some(d) = c2_times_odd(&g).unwrap() {
                assert_eq!(d.a.len() * d.p.len(), g.order(), "{name}");
            }
        }
    }

    #[test]
    fn class_predicates() {
        assert!(!no_isolated_c2_times_odd(&cyclic_group(6).unwrap()));
        assert!(no_isolated_c2_times_odd(&brandt5()));
        assert!(no_isolated_c2_times_odd(&cyclic_group(4).unwrap()));
        assert!(!no_isolated_order_two(&cyclic_group(4).unwrap()));
        assert!(no_isolated_order_two(&cyclic_group(3).unwrap()));
        assert!(!no_nontrivial_isolated(&cyclic_group(3).unwrap()));
        assert!(is_combinatorial_inverse(&brandt5()));
        assert!(!is_combinatorial_inverse(&null_semigroup(2).unwrap()));
    }

    #[test]
    fn covering_and_bypasses() {
        let b = brandt5();
        assert!(is_a_covered(&b, 0, 1).unwrap());
        assert!(!is_a_covered(&b, 3, 1).unwrap());
        let by = short_bypass(&b, 0, 1).unwrap().unwrap();
        assert_eq!(by.chain, vec![0, 3]);
        assert_eq!(by.steps, vec![1]);
        let c3 = chain_semilattice(3);
        assert!(is_a_covered(&c3, 0, 2).unwrap());
        assert_eq!(short_bypass(&c3, 0, 2).unwrap().unwrap().chain, vec![0, 2]);
        for s in [b, c3] {
            assert!(is_shortly_connected(&s).unwrap());
            assert!(is_shortly_linked(&s).unwrap());
        }
        assert_eq!(is_a_covered(&null_semigroup(2).unwrap(), 0, 1).unwrap_err(), Error::NotInverse);
    }

    #[test]
    fn classical_properties() {
        let b = brandt5();
        assert!(is_completely_semisimple(&b));
        assert!(is_fundamental(&b).unwrap());
        assert!(!is_e_unitary(&b).unwrap());
        assert!(!is_clifford(&b));
        let c2 = cyclic_group(2).unwrap();
        assert!(!is_fundamental(&c2).unwrap());
        assert!(is_e_unitary(&c2).unwrap());
        assert!(is_clifford(&c2));
        assert!(is_clifford(&adjoin_zero(&c2)));
    }

    #[test]
    fn archimedean_vacuity() {
        let r = archimedean_family(&brandt5()).unwrap();
        assert!(r.pseudo && r.faintly && r.quasi && r.finite_vacuity && r.n_set_combinatorial);
        let r = archimedean_family(&cyclic_group(2).unwrap()).unwrap();
        assert!(r.quasi && r.n_set_combinatorial);
        assert_eq!(archimedean_family(&null_semigroup(2).unwrap()).unwrap_err(), Error::NotInverse);
    }
}
