//! Self-contained verification suite over constructed and enumerated semigroups.
//!
//! Each check records what it ran, what it expected and what it saw. The
//! machine format is stable across runs; the human format adds timings.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::construct::{
    brandt5, chain_semilattice, clifford_and_null_over, cyclic_group, inflate_at_identity, monogenic_mn, munn,
    null_semigroup, semilattice_from_order, small_groups, trivial, Poset,
};
use crate::enumerate::{census, pa_classes_of, CensusMode};
use crate::error::Result;
use crate::green::{GreenData, NaturalOrder};
use crate::isotest::{are_isomorphic, induced_by_iso_or_antiiso, monoid_isomorphic, pa_isomorphic, InducerKind};
use crate::pam::{induces, inflation_pa_iso, pa_isomorphisms, pa_monoid, PaIso, PaMonoid, PaOptions};
use crate::props::{
    c2_times_odd, is_combinatorial_inverse, is_completely_semisimple, is_fundamental, is_shortly_connected,
    is_shortly_linked, no_isolated_c2_times_odd, no_isolated_order_two, no_nontrivial_isolated, short_bypass,
};
use crate::semigroup::Semigroup;
use crate::set::ElemSet;
use crate::sublat::{e_bijection, weak_iso_check, SubLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Everything except the order-4 census sweeps.
    Quick,
    Full,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    /// The statement being instantiated.
    pub anchor: &'static str,
    pub inputs: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub profile: Profile,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One tab-separated line per check: status, name, anchor, inputs, expected, observed.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}\t{}\t{}\t{}\t{}\t{}", c.name, c.anchor, c.inputs, c.expected, c.observed);
        }
        let _ = writeln!(out, "{}\tsummary", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{status}] {} ({:.2?})", c.name, c.elapsed);
            let _ = writeln!(out, "    {}", c.anchor);
            let _ = writeln!(out, "    inputs:   {}", c.inputs);
            let _ = writeln!(out, "    expected: {}", c.expected);
            let _ = writeln!(out, "    observed: {}", c.observed);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let total: Duration = self.checks.iter().map(|c| c.elapsed).sum();
        let _ = writeln!(out, "{} checks, {failed} failed, {total:.2?}", self.checks.len());
        out
    }
}

fn run(
    name: &'static str,
    anchor: &'static str,
    inputs: impl Into<String>,
    expected: impl Into<String>,
    body: impl FnOnce() -> Result<(String, bool)>,
) -> Check {
    let start = Instant::now();
    let (observed, passed) = body().unwrap_or_else(|e| (format!("error: {e}"), false));
    Check { name, anchor, inputs: inputs.into(), expected: expected.into(), observed, passed, elapsed: start.elapsed() }
}

fn pa(s: &Semigroup, opts: PaOptions) -> Result<Arc<PaMonoid>> {
    Ok(Arc::new(pa_monoid(s, opts)?))
}

/// Every node `i` of `classes` satisfies `pred` for all members or for none.
fn constant_on_classes(classes: &[Vec<usize>], values: &[bool]) -> usize {
    classes.iter().filter(|c| c.iter().any(|&i| values[i] != values[c[0]])).count()
}

/// The semilattice with two incomparable atoms `g0, g1` over a zero.
pub fn two_atom_semilattice() -> Semigroup {
    let poset = Poset::from_covers(3, &[(2, 0), (2, 1)]).expect("valid covers");
    semilattice_from_order(&poset)
        .expect("meets exist")
        .with_labels(vec!["g0".into(), "g1".into(), "0".into()])
        .expect("three labels")
}

/// All semilattices of order `1..=max` up to isomorphism.
pub fn small_semilattices(max: usize) -> Result<Vec<Semigroup>> {
    let mut out = Vec::new();
    for n in 1..=max {
        let c = census(n, CensusMode { anti: false, inverse_only: true })?;
        out.extend(c.entries.into_iter().filter(|e| e.semilattice).map(|e| e.semigroup));
    }
    Ok(out)
}

/// Semigroups of order `1..=max` up to isomorphism.
pub fn small_semigroups(max: usize) -> Result<Vec<Semigroup>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(census(n, CensusMode::default())?.entries.into_iter().map(|e| e.semigroup));
    }
    Ok(out)
}

pub fn check_c2_n2(opts: PaOptions) -> Check {
    run("pa_c2_n2", "PA(C2) and PA(N2) are isomorphic", "C2, N2", "|PA| = 3 and 3, witness found", || {
        let (a, b) = (pa(&cyclic_group(2)?, opts)?, pa(&null_semigroup(2)?, opts)?);
        let w = monoid_isomorphic(a.monoid(), b.monoid(), Some(1), opts.cap)?;
        let ok = a.order() == 3 && b.order() == 3 && w.first().is_some_and(|w| w.verify(a.monoid().semigroup(), b.monoid().semigroup()));
        Ok((format!("|PA| = {} and {}, witnesses: {}", a.order(), b.order(), w.len()), ok))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mono {
    M(usize, usize),
    Inflated(usize),
}

/// The pairs the classification of monogenic PA-isomorphisms predicts, besides isomorphism.
fn predicted_monogenic(a: Mono, b: Mono) -> bool {
    use Mono::*;
    let one_way = |a: Mono, b: Mono| match (a, b) {
        (M(1, k), Inflated(n)) => k == 2 * n && n % 2 == 1,
        (M(2, 2), M(3, 1)) | (M(3, 6), M(4, 3)) => true,
        _ => false,
    };
    one_way(a, b) || one_way(b, a)
}

pub fn check_monogenic(opts: PaOptions) -> Check {
    let expected = "PA-isomorphic exactly for isomorphic pairs, C_2n with C_n^<1> (n odd), {M(2,2),M(3,1)}, {M(3,6),M(4,3)}";
    run(
        "monogenic_classes",
        "PA-isomorphism classification of monogenic semigroups",
        "M(m,n) of order <= 6, M(3,6), C10, C_n^<1> for n in 1,3,5",
        expected,
        || {
            let mut items: Vec<(Mono, Semigroup)> = Vec::new();
            for m in 1..=6 {
                for n in 1..=(7 - m) {
                    items.push((Mono::M(m, n), monogenic_mn(m, n)?));
                }
            }
            items.push((Mono::M(3, 6), monogenic_mn(3, 6)?));
            items.push((Mono::M(1, 10), monogenic_mn(1, 10)?));
            for n in [1, 3, 5] {
                items.push((Mono::Inflated(n), inflate_at_identity(&cyclic_group(n)?)?));
            }
            let pairs: Vec<(usize, usize)> =
                (0..items.len()).flat_map(|i| (i + 1..items.len()).map(move |j| (i, j))).collect();
            let outcomes: Vec<(usize, usize, bool, bool)> = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let (a, b) = (&items[i], &items[j]);
                    // Tags are compared up to isomorphism: N2 is both M(2,1) and C1^<1>.
                    let expect = are_isomorphic(&a.1, &b.1)
                        || items.iter().filter(|x| are_isomorphic(&x.1, &a.1)).any(|x| {
                            items.iter().filter(|y| are_isomorphic(&y.1, &b.1)).any(|y| predicted_monogenic(x.0, y.0))
                        });
                    Ok((i, j, expect, pa_isomorphic(&a.1, &b.1, opts)?.isomorphic))
                })
                .collect::<Result<_>>()?;
            let wrong: Vec<String> = outcomes
                .iter()
                .filter(|o| o.2 != o.3)
                .map(|&(i, j, e, _)| format!("{:?}~{:?} expected {e}", items[i].0, items[j].0))
                .collect();
            let positive = outcomes.iter().filter(|o| o.3).count();
            Ok((format!("{} pairs, {positive} PA-isomorphic, mismatches: [{}]", outcomes.len(), wrong.join("; ")), wrong.is_empty()))
        },
    )
}

pub fn check_inflation_map(opts: PaOptions) -> Check {
    run(
        "inflation_pa_map",
        "explicit PA-isomorphism of C2 x P onto Q^<1> from one of P onto Q",
        "P = Q in C1, C3, C5 with the identity PA-isomorphism",
        "bijective homomorphism on the full composition tables",
        || {
            let mut notes = Vec::new();
            let mut ok = true;
            for n in [1, 3, 5] {
                let p = pa(&cyclic_group(n)?, opts)?;
                let phi = inflation_pa_iso(&PaIso::identity(&p), opts)?;
                let (a, b) = (phi.from().monoid(), phi.to().monoid());
                let mut hit = vec![false; b.order()];
                phi.map().iter().for_each(|&j| hit[j] = true);
                let hom = (0..a.order())
                    .all(|x| (0..a.order()).all(|y| phi.apply(a.mul(x, y)) == b.mul(phi.apply(x), phi.apply(y))));
                let good = hom && hit.iter().all(|&h| h) && a.order() == b.order();
                ok &= good;
                notes.push(format!("C{n}: |PA| = {}, {}", a.order(), if good { "verified" } else { "FAILED" }));
            }
            Ok((notes.join(", "), ok))
        },
    )
}

pub fn check_semilattices(max: usize, opts: PaOptions) -> Check {
    run(
        "semilattice_agreement",
        "semilattices are PA-isomorphic only to isomorphic or dual-chain semilattices",
        format!("all semilattices of order <= {max}"),
        "pa_isomorphic(E, F) iff E and F are isomorphic",
        || {
            let all = small_semilattices(max)?;
            let pairs: Vec<(usize, usize)> = (0..all.len()).flat_map(|i| (i..all.len()).map(move |j| (i, j))).collect();
            let bad: Vec<(usize, usize)> = pairs
                .par_iter()
                .map(|&(i, j)| Ok((i, j, pa_isomorphic(&all[i], &all[j], opts)?.isomorphic == are_isomorphic(&all[i], &all[j]))))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|t| !t.2)
                .map(|t| (t.0, t.1))
                .collect();
            Ok((format!("{} semilattices, {} pairs, disagreements: {bad:?}", all.len(), pairs.len()), bad.is_empty()))
        },
    )
}

pub fn check_census_closure(max: usize, opts: PaOptions) -> Check {
    run(
        "census_closure",
        "PA-closed classes of inverse semigroups",
        format!("all semigroups of order <= {max}"),
        "each class predicate is constant on every PA-isomorphism class",
        || {
            let members = small_semigroups(max)?;
            let part = pa_classes_of(&members, opts)?;
            let preds: [(&str, fn(&Semigroup) -> bool); 4] = [
                ("no isolated C2 x odd", no_isolated_c2_times_odd),
                ("no isolated order 2", no_isolated_order_two),
                ("no nontrivial isolated", no_nontrivial_isolated),
                ("combinatorial inverse", is_combinatorial_inverse),
            ];
            let mut notes = Vec::new();
            let mut ok = part.partial.is_empty();
            for (name, pred) in preds {
                let values: Vec<bool> = members.iter().map(pred).collect();
                let broken = constant_on_classes(&part.classes, &values);
                ok &= broken == 0;
                notes.push(format!("{name}: {} members, {broken} split classes", values.iter().filter(|&&v| v).count()));
            }
            let nontrivial = part.classes.iter().filter(|c| c.len() > 1).count();
            Ok((
                format!("{} members, {} classes ({nontrivial} nontrivial), over cap: {}; {}", members.len(), part.classes.len(), part.partial.len(), notes.join("; ")),
                ok,
            ))
        },
    )
}

pub fn check_groups_vs_inflations(opts: PaOptions) -> Check {
    run(
        "groups_vs_inflations",
        "a group is PA-isomorphic to a non-group exactly when it is C2 x P and the partner is Q^<1> with P, Q PA-isomorphic",
        "groups of order <= 8; Q^<1> for groups Q of order <= 7",
        "PA-isomorphic iff c2_times_odd(G) = C2 x P and pa_isomorphic(P, Q)",
        || {
            let groups = small_groups();
            let candidates: Vec<(String, Semigroup, Semigroup)> = groups
                .iter()
                .filter(|(_, q)| q.order() <= 7)
                .map(|(name, q)| Ok((format!("{name}^<1>"), q.clone(), inflate_at_identity(q)?)))
                .collect::<Result<_>>()?;
            let pairs: Vec<(usize, usize)> =
                (0..groups.len()).flat_map(|i| (0..candidates.len()).map(move |j| (i, j))).collect();
            let rows: Vec<(String, bool, bool)> = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let (gname, g) = &groups[i];
                    let (sname, q, s) = &candidates[j];
                    let expect = match c2_times_odd(g)? {
                        Some(d) => pa_isomorphic(&g.restrict(&d.p)?.0, q, opts)?.isomorphic,
                        None => false,
                    };
                    Ok((format!("{gname}~{sname}"), expect, pa_isomorphic(g, s, opts)?.isomorphic))
                })
                .collect::<Result<_>>()?;
            let positives: Vec<&str> = rows.iter().filter(|r| r.2).map(|r| r.0.as_str()).collect();
            let wrong: Vec<&str> = rows.iter().filter(|r| r.1 != r.2).map(|r| r.0.as_str()).collect();
            Ok((format!("{} pairs, PA-isomorphic: [{}], mismatches: [{}]", rows.len(), positives.join(", "), wrong.join(", ")), wrong.is_empty()))
        },
    )
}

pub fn check_munn(max: usize) -> Check {
    run(
        "munn_identities",
        "the Munn semigroup of a semilattice is fundamental",
        format!("two-atom semilattice, 3-chain, all semilattices of order <= {max}"),
        "T_E(two atoms) = B5, T_E(3-chain) = 3-chain, every T_E fundamental",
        || {
            let brandt = are_isomorphic(&munn(&two_atom_semilattice())?.semigroup, &brandt5());
            let chain = are_isomorphic(&munn(&chain_semilattice(3))?.semigroup, &chain_semilattice(3));
            let all = small_semilattices(max)?;
            let mut fundamental = 0;
            for e in &all {
                if is_fundamental(&munn(e)?.semigroup)? {
                    fundamental += 1;
                }
            }
            Ok((
                format!("B5: {brandt}, chain: {chain}, fundamental: {fundamental}/{}", all.len()),
                brandt && chain && fundamental == all.len(),
            ))
        },
    )
}

pub fn check_clifford_null(opts: PaOptions) -> Check {
    run(
        "clifford_null_pair",
        "a Clifford semigroup PA-isomorphic to a non-inverse semigroup",
        "E = 2-chain and 3-chain; A over C2 components, B over N2 components",
        "theta induces a verified PA-isomorphism, A inverse and Clifford, B not inverse",
        || {
            let mut ok = true;
            let mut notes = Vec::new();
            for n in [2, 3] {
                let (a, b, theta) = clifford_and_null_over(&chain_semilattice(n))?;
                let (pa_a, pa_b) = (pa(&a, opts)?, pa(&b, opts)?);
                let induced = induces(&theta, &pa_a, &pa_b).is_ok();
                let good = induced && a.is_inverse_semigroup() && crate::props::is_clifford(&a) && !b.is_inverse_semigroup();
                ok &= good;
                notes.push(format!("chain {n}: |PA| = {}, induced: {induced}", pa_a.order()));
            }
            Ok((notes.join(", "), ok))
        },
    )
}

pub fn check_pa_automorphisms(opts: PaOptions) -> Check {
    run(
        "pa_automorphisms_induced",
        "PA-isomorphisms of combinatorial inverse semigroups come from isomorphisms or anti-isomorphisms",
        "S = B5 and S = T_E(two atoms); all automorphisms of PA(S)",
        "each automorphism induced by an iso or anti-iso of S",
        || {
            let mut ok = true;
            let mut notes = Vec::new();
            for (name, s) in [("B5", brandt5()), ("T_E", munn(&two_atom_semilattice())?.semigroup)] {
                let p = pa(&s, opts)?;
                let autos = pa_isomorphisms(&p, &p, None);
                let mut good = 0;
                for phi in &autos {
                    let inducers = induced_by_iso_or_antiiso(phi)?;
                    if inducers.iter().any(|i| i.kind != InducerKind::Neither) {
                        good += 1;
                    }
                }
                ok &= good == autos.len() && !autos.is_empty();
                notes.push(format!("{name}: {good}/{} induced", autos.len()));
            }
            Ok((notes.join(", "), ok))
        },
    )
}

/// Structural invariants of one semigroup; returns the names of those that fail.
pub fn invariant_failures(s: &Semigroup, opts: PaOptions, with_pa: bool) -> Result<Vec<&'static str>> {
    let mut bad = Vec::new();
    let green = GreenData::compute(s);
    if !green.d_equals_j() {
        bad.push("D = J");
    }
    if s.elements().any(|x| {
        let (o, i, p) = s.index_period(x);
        o != i + p - 1
    }) {
        bad.push("order = index + period - 1");
    }
    if s.m_set() != s.m_set_by_criterion() {
        bad.push("M_S criterion");
    }
    if !is_completely_semisimple(s) {
        bad.push("completely semisimple");
    }
    if s.is_inverse_semigroup() {
        let inv = s.inverse_map()?;
        if s.elements().any(|x| s.inverses_of(x).len() != 1) {
            bad.push("unique inverses");
        }
        let order = NaturalOrder::compute(s)?;
        let compatible = s.elements().all(|x| {
            s.elements().all(|y| {
                !order.leq(x, y)
                    || (order.leq(inv[x], inv[y])
                        && s.elements().all(|z| order.leq(s.mul(x, z), s.mul(y, z)) && order.leq(s.mul(z, x), s.mul(z, y))))
            })
        });
        if !order.is_partial_order() || !compatible {
            bad.push("natural order compatibility");
        }
        if !is_shortly_linked(s)? || !is_shortly_connected(s)? {
            bad.push("shortly linked and connected");
        }
        let idems = s.idempotents();
        let constructive = s.elements().all(|a| {
            let top = s.mul(a, inv[a]);
            idems.iter().filter(|&e| order.lt(e, top)).all(|e| {
                short_bypass(s, e, a).ok().flatten().is_some_and(|b| b.chain.first() == Some(&e) && b.chain.last() == Some(&top))
            })
        });
        if !constructive {
            bad.push("constructive bypass");
        }
    }
    let lat = SubLattice::sub(s);
    if s.order() <= 12 {
        let brute: Vec<ElemSet> = (0u64..1 << s.order())
            .map(|mask| (0..s.order()).filter(|&i| mask >> i & 1 == 1).collect::<ElemSet>())
            .filter(|set| s.is_closed(set))
            .collect();
        let mut sorted = brute.clone();
        sorted.sort();
        let mut members = lat.members().to_vec();
        members.sort();
        if sorted != members {
            bad.push("closure enumeration = subset filter");
        }
    }
    let atoms: ElemSet = lat.atoms().iter().map(|&a| lat.member(a).first().expect("atoms are nonempty")).collect();
    if atoms != s.idempotents() || lat.atoms().iter().any(|&a| lat.member(a).len() != 1) {
        bad.push("atoms = singleton idempotents");
    }
    if with_pa {
        let p = pa(s, opts)?;
        if !p.structure_holds() {
            bad.push("PA is an inverse monoid with E = Sub");
        }
        for phi in pa_isomorphisms(&p, &p, Some(64)) {
            if phi.star_map().is_err() {
                bad.push("dom/ran identity");
                break;
            }
            match e_bijection(&phi.star_map()?) {
                Ok(e) if weak_iso_check(&e, s, s) => {}
                _ => {
                    bad.push("weak isomorphism of the E-bijection");
                    break;
                }
            }
        }
    }
    Ok(bad)
}

pub fn check_invariants(max: usize, opts: PaOptions) -> Check {
    run(
        "finite_invariants",
        "structural invariants of finite semigroups",
        format!("every semigroup of order <= {max}, plus B5, T_E(two atoms) and C2 x C2 inflated"),
        "no invariant fails",
        || {
            let mut members = small_semigroups(max)?;
            members.push(brandt5());
            members.push(munn(&two_atom_semilattice())?.semigroup);
            members.push(inflate_at_identity(&crate::construct::direct_product(&cyclic_group(2)?, &cyclic_group(2)?))?);
            members.push(trivial());
            let failures: Vec<(usize, Vec<&str>)> = members
                .par_iter()
                .enumerate()
                .map(|(i, s)| Ok((i, invariant_failures(s, opts, s.order() <= 4)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|f| !f.1.is_empty())
                .collect();
            Ok((format!("{} semigroups, failures: {failures:?}", members.len()), failures.is_empty()))
        },
    )
}

/// Runs the suite. `Quick` sweeps censuses up to order 3, `Full` up to order 4.
pub fn run_verify(profile: Profile) -> VerificationReport {
    let opts = PaOptions::default();
    let max = match profile {
        Profile::Quick => 3,
        Profile::Full => 4,
    };
    let checks = vec![
        check_c2_n2(opts),
        check_monogenic(opts),
        check_inflation_map(opts),
        check_semilattices(5, opts),
        check_census_closure(max, opts),
        check_groups_vs_inflations(opts),
        check_munn(5),
        check_clifford_null(opts),
        check_pa_automorphisms(opts),
        check_invariants(max, opts),
    ];
    VerificationReport { profile, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicted_pairs_are_symmetric() {
        use Mono::*;
        assert!(predicted_monogenic(M(1, 2), Inflated(1)));
        assert!(predicted_monogenic(Inflated(3), M(1, 6)));
        assert!(!predicted_monogenic(M(1, 4), Inflated(2)));
        assert!(predicted_monogenic(M(4, 3), M(3, 6)));
    }

    #[test]
    fn machine_lines_are_tab_separated() {
        let report = VerificationReport { profile: Profile::Quick, checks: vec![check_c2_n2(PaOptions::default())] };
        assert!(report.passed());
        let text = report.machine();
        let first = text.lines().next().unwrap();
        assert!(first.starts_with("PASS\tpa_c2_n2\t"));
        assert_eq!(first.split('\t').count(), 6);
    }
}
