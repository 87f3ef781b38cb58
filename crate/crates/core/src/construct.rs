//! Generators and combinators for the concrete families used throughout the crate.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::pbij::PartialBijection;
use crate::semigroup::Semigroup;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn trivial() -> Semigroup {
    Semigroup::from_fn(1, |_, _| 0).unwrap()
}

/// The cyclic group `C_n`; element `k` is `g^k`, so `0` is the identity.
pub fn cyclic_group(n: usize) -> Result<Semigroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group needs n >= 1".into()));
    }
    Semigroup::from_fn(n, |i, j| (i + j) % n)
}

/// Null semigroup of order `n` with zero `0`.
pub fn null_semigroup(n: usize) -> Result<Semigroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("null semigroup needs n >= 1".into()));
    }
    let s = Semigroup::from_fn(n, |_, _| 0)?;
    if n == 2 {
        return s.with_labels(labels(&["0", "z"]));
    }
    Ok(s)
}

/// The monogenic semigroup `M(m, n)` with index `m` and period `n`.
///
/// Element `i` is `x^(i+1)`, so the generator is `0`.
pub fn monogenic_mn(m: usize, n: usize) -> Result<Semigroup> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("M(m,n) needs m, n >= 1".into()));
    }
    let order = m + n - 1;
    let reduce = |e: usize| if e <= order { e } else { m + (e - m) % n };
    let s = Semigroup::from_fn(order, |i, j| reduce(i + j + 2) - 1)?;
    debug_assert_eq!(s.index_period(0), (order, m, n));
    Ok(s)
}

pub fn left_zero(n: usize) -> Result<Semigroup> {
    Semigroup::from_fn(n, |i, _| i)
}

pub fn right_zero(n: usize) -> Result<Semigroup> {
    Semigroup::from_fn(n, |_, j| j)
}

/// Dihedral group of order `2n`; `r^a s^b` has index `a + n*b`.
pub fn dihedral(n: usize) -> Result<Semigroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("dihedral group needs n >= 1".into()));
    }
    Semigroup::from_fn(2 * n, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        rot + n * ((b + d) % 2)
    })
}

/// Quaternion group; index `4*sign + unit` with units `1, i, j, k`.
pub fn quaternion() -> Semigroup {
    // (sign, unit) products of the units 1, i, j, k.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    Semigroup::from_fn(8, |x, y| {
        let (s, u) = UNIT[x % 4][y % 4];
        4 * ((x / 4 + y / 4 + s) % 2) + u
    })
    .unwrap()
}

/// All groups of order at most 8 up to isomorphism, with names.
pub fn small_groups() -> Vec<(String, Semigroup)> {
    let c = |n| cyclic_group(n).unwrap();
    let mut out: Vec<(String, Semigroup)> = (1..=8).map(|n| (format!("C{n}"), c(n))).collect();
    out.push(("C2xC2".into(), direct_product(&c(2), &c(2))));
    out.push(("C2xC4".into(), direct_product(&c(2), &c(4))));
    out.push(("C2xC2xC2".into(), direct_product(&direct_product(&c(2), &c(2)), &c(2))));
    out.push(("S3".into(), dihedral(3).unwrap()));
    out.push(("D4".into(), dihedral(4).unwrap()));
    out.push(("Q8".into(), quaternion()));
    out
}

/// `G ∪ {z}` with `z^2 = e` and `z` acting as the identity on `G`.
///
/// `z` gets the index `|G|`.
pub fn inflate_at_identity(g: &Semigroup) -> Result<Semigroup> {
    if !g.is_group() {
        return Err(Error::NotAGroup);
    }
    let e = g.identity().unwrap();
    let n = g.order();
    let s = Semigroup::from_fn(n + 1, |x, y| match (x == n, y == n) {
        (true, true) => e,
        (true, false) => y,
        (false, true) => x,
        (false, false) => g.mul(x, y),
    })?;
    let mut names: Vec<String> = (0..n).map(|x| g.label(x)).collect();
    names.push("z".into());
    debug_assert_eq!(s.monogenic(n).to_vec(), vec![e, n]);
    s.with_labels(names)
}

/// Componentwise product; `(i, j)` has index `i * |T| + j`.
pub fn direct_product(s: &Semigroup, t: &Semigroup) -> Semigroup {
    let m = t.order();
    Semigroup::from_fn(s.order() * m, |x, y| s.mul(x / m, y / m) * m + t.mul(x % m, y % m))
        .expect("direct product of semigroups is associative")
}

/// `S ∪ {0}` with a new absorbing zero at index `|S|`.
pub fn adjoin_zero(s: &Semigroup) -> Semigroup {
    let n = s.order();
    Semigroup::from_fn(n + 1, |x, y| if x == n || y == n { n } else { s.mul(x, y) })
        .expect("adjoining a zero preserves associativity")
}

/// A finite partial order given by its full relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Reflexive-transitive closure of the covering pairs `(lower, upper)`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!("cover ({a},{b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::NotAPartialOrder(format!("{a} and {b} are mutually below each other")));
                }
            }
        }
        Ok(Self { n, leq, labels: None })
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers).unwrap()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }
}

/// The meet semilattice of a poset: product is the greatest lower bound.
pub fn semilattice_from_order(poset: &Poset) -> Result<Semigroup> {
    let n = poset.n;
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| poset.leq(c, a) && poset.leq(c, b)).collect();
            let glb = lower.iter().copied().find(|&c| lower.iter().all(|&d| poset.leq(d, c)));
            table[a * n + b] = glb.ok_or(Error::NotAMeetSemilattice { a, b })?;
        }
    }
    let s = Semigroup::from_flat(n, table, None)?;
    match &poset.labels {
        Some(l) => s.with_labels(l.clone()),
        None => Ok(s),
    }
}

/// Chain semilattice `0 < 1 < .. < n-1`.
pub fn chain_semilattice(n: usize) -> Semigroup {
    Semigroup::from_fn(n, |a, b| a.min(b)).expect("chains are semilattices")
}

/// The order dual of a chain semilattice: the product becomes the join.
pub fn dual_chain(e: &Semigroup) -> Result<Semigroup> {
    if !e.is_semilattice() {
        return Err(Error::NotASemilattice);
    }
    if !e.is_chain() {
        return Err(Error::NotAChain);
    }
    let s = Semigroup::from_fn(e.order(), |a, b| if e.mul(a, b) == a { b } else { a })?;
    match e.labels() {
        Some(l) => s.with_labels(l.to_vec()),
        None => Ok(s),
    }
}

/// Data for a strong semilattice of semigroups.
#[derive(Clone, Debug)]
pub struct StrongSemilatticeSpec {
    pub semilattice: Semigroup,
    /// One component per element of the semilattice.
    pub components: Vec<Semigroup>,
    /// Structure maps for `e > f`; `(e, e)` defaults to the identity.
    pub morphisms: BTreeMap<(usize, usize), Vec<usize>>,
}

impl StrongSemilatticeSpec {
    /// Offset of each component in the combined index space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        for c in &self.components {
            off.push(acc);
            acc += c.order();
        }
        off
    }

    fn morphism(&self, e: usize, f: usize) -> Option<Vec<usize>> {
        if e == f {
            return Some(self.morphisms.get(&(e, e)).cloned().unwrap_or_else(|| self.components[e].elements().collect()));
        }
        self.morphisms.get(&(e, f)).cloned()
    }

    fn check(&self) -> Result<Vec<Vec<Option<Vec<usize>>>>> {
        let e = &self.semilattice;
        if !e.is_semilattice() {
            return Err(Error::NotASemilattice);
        }
        let n = e.order();
        if self.components.len() != n {
            return Err(Error::InvalidParameter(format!("{} components for {n} semilattice elements", self.components.len())));
        }
        let geq = |a: usize, b: usize| e.mul(a, b) == b;
        let mut maps = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                if !geq(a, b) {
                    continue;
                }
                let bad = |reason: &str| Error::BadMorphism { e: a, f: b, reason: reason.into() };
                let m = self.morphism(a, b).ok_or_else(|| bad("missing"))?;
                let (src, dst) = (&self.components[a], &self.components[b]);
                if m.len() != src.order() || m.iter().any(|&y| y >= dst.order()) {
                    return Err(bad("wrong shape"));
                }
                if a == b && m.iter().enumerate().any(|(x, &y)| x != y) {
                    return Err(bad("not the identity"));
                }
                if !src.is_homomorphism(dst, &m) {
                    return Err(bad("not a homomorphism"));
                }
                maps[a][b] = Some(m);
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if geq(a, b) && geq(b, c) {
                        let (ab, bc, ac) = (
                            maps[a][b].as_ref().unwrap(),
                            maps[b][c].as_ref().unwrap(),
                            maps[a][c].as_ref().unwrap(),
                        );
                        if (0..ab.len()).any(|x| bc[ab[x]] != ac[x]) {
                            return Err(Error::BadMorphism { e: a, f: c, reason: format!("composition through {b} disagrees") });
                        }
                    }
                }
            }
        }
        Ok(maps)
    }
}

/// `s * t = (s φ_{e,ef})(t φ_{f,ef})` on the disjoint union of the components.
pub fn strong_semilattice(spec: &StrongSemilatticeSpec) -> Result<Semigroup> {
    let maps = spec.check()?;
    let e = &spec.semilattice;
    let off = spec.offsets();
    let total: usize = spec.components.iter().map(Semigroup::order).sum();
    let mut owner = Vec::with_capacity(total);
    for (c, comp) in spec.components.iter().enumerate() {
        owner.extend(std::iter::repeat_n(c, comp.order()));
    }
    Semigroup::from_fn(total, |x, y| {
        let (a, b) = (owner[x], owner[y]);
        let m = e.mul(a, b);
        let xs = maps[a][m].as_ref().unwrap()[x - off[a]];
        let ys = maps[b][m].as_ref().unwrap()[y - off[b]];
        off[m] + spec.components[m].mul(xs, ys)
    })
}

/// The pair of strong semilattices over `e` with `C_2` resp. `N_2` components,
/// each structure map for `e > f` collapsing onto the idempotent of the lower
/// component, and the bijection `e -> e`, `a_e -> z_e` between them.
///
/// Returns `(A, B, θ)`; the two semigroups share their index layout.
pub fn clifford_and_null_over(e: &Semigroup) -> Result<(Semigroup, Semigroup, PartialBijection)> {
    let n = e.order();
    let build = |comp: Semigroup| {
        let mut morphisms = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && e.mul(a, b) == b {
                    morphisms.insert((a, b), vec![0, 0]);
                }
            }
        }
        strong_semilattice(&StrongSemilatticeSpec { semilattice: e.clone(), components: vec![comp; n], morphisms })
    };
    let names = |other: &str| -> Vec<String> {
        (0..n).flat_map(|x| [e.label(x), format!("{other}{}", e.label(x))]).collect()
    };
    let a = build(cyclic_group(2)?)?.with_labels(names("a"))?;
    let b = build(null_semigroup(2)?)?.with_labels(names("z"))?;
    let theta = PartialBijection::total(&a, &b, &(0..2 * n).collect::<Vec<_>>())?;
    Ok((a, b, theta))
}

/// Data for a retract ideal extension of `A` by `T`.
#[derive(Clone, Debug)]
pub struct RetractExtensionSpec {
    pub a: Semigroup,
    pub t: Semigroup,
    pub t_zero: usize,
    /// `eta[x]` for every nonzero `x` of `T`; the entry at `t_zero` is ignored.
    pub eta: Vec<usize>,
}

/// The extension together with where the inputs ended up.
#[derive(Clone, Debug)]
pub struct RetractExtension {
    pub semigroup: Semigroup,
    /// Index of each element of `A`.
    pub a_index: Vec<usize>,
    /// Index of each nonzero element of `T`.
    pub t_index: Vec<Option<usize>>,
}

impl RetractExtension {
    /// The retraction fixing `A` and sending `T*` through `eta`.
    pub fn retraction(&self, spec: &RetractExtensionSpec) -> Vec<usize> {
        let mut r = vec![0; self.semigroup.order()];
        for (x, &i) in self.a_index.iter().enumerate() {
            r[i] = self.a_index[x];
        }
        for (x, i) in self.t_index.iter().enumerate() {
            if let Some(i) = i {
                r[*i] = self.a_index[spec.eta[x]];
            }
        }
        r
    }
}

pub fn retract_extension(spec: &RetractExtensionSpec) -> Result<RetractExtension> {
    let (a, t, z) = (&spec.a, &spec.t, spec.t_zero);
    if z >= t.order() || t.zero() != Some(z) {
        return Err(Error::InvalidParameter(format!("{z} is not the zero of T")));
    }
    if spec.eta.len() != t.order() || spec.eta.iter().enumerate().any(|(x, &y)| x != z && y >= a.order()) {
        return Err(Error::InvalidParameter("eta must map every nonzero element of T into A".into()));
    }
    for x in t.elements().filter(|&x| x != z) {
        for y in t.elements().filter(|&y| y != z) {
            let xy = t.mul(x, y);
            if xy != z && spec.eta[xy] != a.mul(spec.eta[x], spec.eta[y]) {
                return Err(Error::NotPartialHom { x, y });
            }
        }
    }
    let na = a.order();
    let t_star: Vec<usize> = t.elements().filter(|&x| x != z).collect();
    let mut t_index = vec![None; t.order()];
    for (k, &x) in t_star.iter().enumerate() {
        t_index[x] = Some(na + k);
    }
    let total = na + t_star.len();
    let from_t = |i: usize| t_star[i - na];
    let s = Semigroup::from_fn(total, |x, y| match (x < na, y < na) {
        (true, true) => a.mul(x, y),
        (true, false) => a.mul(x, spec.eta[from_t(y)]),
        (false, true) => a.mul(spec.eta[from_t(x)], y),
        (false, false) => {
            let (tx, ty) = (from_t(x), from_t(y));
            let p = t.mul(tx, ty);
            if p == z {
                a.mul(spec.eta[tx], spec.eta[ty])
            } else {
                t_index[p].unwrap()
            }
        }
    })?;
    let ext = RetractExtension { semigroup: s, a_index: (0..na).collect(), t_index };
    debug_assert!(ext.semigroup.is_homomorphism(&ext.semigroup, &ext.retraction(spec)));
    Ok(ext)
}

/// The five-element Brandt semigroup `{0, b, b', bb', b'b}` (`b'` is the inverse of `b`).
pub fn brandt5() -> Semigroup {
    // Matrix units E_ij: b = E_12, b' = E_21, bb' = E_11, b'b = E_22.
    const UNITS: [(usize, usize); 4] = [(1, 2), (2, 1), (1, 1), (2, 2)];
    Semigroup::from_fn(5, |x, y| {
        if x == 0 || y == 0 {
            return 0;
        }
        let ((i, j), (k, l)) = (UNITS[x - 1], UNITS[y - 1]);
        if j != k {
            0
        } else {
            1 + UNITS.iter().position(|&u| u == (i, l)).unwrap()
        }
    })
    .unwrap()
    .with_labels(labels(&["0", "b", "b'", "bb'", "b'b"]))
    .unwrap()
}

/// An element of a Munn semigroup: an order isomorphism between principal ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MunnElement {
    pub from: usize,
    pub to: usize,
    pub map: PartialBijection,
}

/// The Munn semigroup of a semilattice with element descriptions.
#[derive(Clone, Debug)]
pub struct Munn {
    pub semigroup: Semigroup,
    pub elements: Vec<MunnElement>,
}

/// All isomorphisms between principal ideals of `e`, under composition.
pub fn munn(e: &Semigroup) -> Result<Munn> {
    if !e.is_semilattice() {
        return Err(Error::NotASemilattice);
    }
    let leq = |a: usize, b: usize| e.mul(a, b) == a;
    let ideal = |a: usize| -> Vec<usize> { e.elements().filter(|&x| leq(x, a)).collect() };
    let mut elements = Vec::new();
    for a in e.elements() {
        let dom = ideal(a);
        for b in e.elements() {
            let ran = ideal(b);
            if ran.len() != dom.len() {
                continue;
            }
            let mut assign = vec![usize::MAX; dom.len()];
            let mut used = vec![false; ran.len()];
            order_isos(&dom, &ran, &leq, 0, &mut assign, &mut used, &mut |img: &[usize]| {
                let pairs = dom.iter().zip(img).map(|(&x, &k)| (x, ran[k]));
                let map = PartialBijection::from_pairs(e, e, pairs).unwrap();
                elements.push(MunnElement { from: a, to: b, map });
            });
        }
    }
    let index: HashMap<PartialBijection, usize> = elements.iter().enumerate().map(|(i, m)| (m.map.clone(), i)).collect();
    let n = elements.len();
    let mut table = vec![0; n * n];
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let c = x.map.then(&y.map)?;
            table[i * n + j] = *index.get(&c).ok_or_else(|| {
                Error::InvalidParameter("composite is not an isomorphism of principal ideals".into())
            })?;
        }
    }
    let names = elements
        .iter()
        .map(|m| {
            let pairs: Vec<String> = m.map.pairs().map(|(x, y)| format!("{}>{}", e.label(x), e.label(y))).collect();
            format!("[{}]", pairs.join(","))
        })
        .collect();
    let semigroup = Semigroup::from_flat(n, table, Some(names))?;
    Ok(Munn { semigroup, elements })
}

fn order_isos(
    dom: &[usize],
    ran: &[usize],
    leq: &impl Fn(usize, usize) -> bool,
    k: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    emit: &mut impl FnMut(&[usize]),
) {
    if k == dom.len() {
        emit(assign);
        return;
    }
    for c in 0..ran.len() {
        if used[c] {
            continue;
        }
        let ok = (0..k).all(|p| {
            let (x, y) = (dom[p], dom[k]);
            let (u, v) = (ran[assign[p]], ran[c]);
            leq(x, y) == leq(u, v) && leq(y, x) == leq(v, u)
        });
        if ok {
            assign[k] = c;
            used[c] = true;
            order_isos(dom, ran, leq, k + 1, assign, used, emit);
            used[c] = false;
        }
    }
    assign[k] = usize::MAX;
}

/// Finite cut of the ladder semilattice: `e_0 > .. > e_{k-1}`, `f_0 .. f_k`,
/// `g_0, g_1` and a bottom `0`.
///
/// `e_i` covers `e_{i+1}` and `f_i`; the last `e` also covers `f_k`; `f_j`
/// covers `g_(j mod 2)`; both `g` cover `0`. The result is the order of the
/// infinite ladder restricted to these elements.
pub fn ladder_semilattice(k: usize) -> Result<Semigroup> {
    if k == 0 {
        return Err(Error::InvalidParameter("truncation depth must be >= 1".into()));
    }
    let e = |i: usize| i;
    let f = |j: usize| k + j;
    let g = |p: usize| 2 * k + 1 + p;
    let zero = 2 * k + 3;
    let mut covers = Vec::new();
    for i in 0..k {
        if i + 1 < k {
            covers.push((e(i + 1), e(i)));
        }
        covers.push((f(i), e(i)));
    }
    covers.push((f(k), e(k - 1)));
    for j in 0..=k {
        covers.push((g(j % 2), f(j)));
    }
    covers.push((zero, g(0)));
    covers.push((zero, g(1)));
    let mut names: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
    names.extend((0..=k).map(|j| format!("f{j}")));
    names.extend(["g0".to_string(), "g1".to_string(), "0".to_string()]);
    let poset = Poset::from_covers(2 * k + 4, &covers)?.with_labels(names);
    semilattice_from_order(&poset)
}
