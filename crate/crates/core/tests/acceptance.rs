//! Acceptance criteria. Prints one `PASS`/`FAIL` line per criterion with the
//! pinned tolerance and runtime budget, then exits nonzero on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use pamona::construct::{
    brandt5, chain_semilattice, cyclic_group, inflate_at_identity, monogenic_mn, munn, null_semigroup, small_groups,
};
use pamona::enumerate::canonical_table;
use pamona::isotest::{are_isomorphic, monoid_isomorphic, pa_isomorphic, pa_isomorphic_monoids};
use pamona::pam::{pa_isomorphisms, pa_monoid, PaOptions};
use pamona::verify::{
    check_census_closure, check_clifford_null, check_inflation_map, check_pa_automorphisms, small_semigroups,
    small_semilattices, two_atom_semilattice,
};
use pamona::{Result, Semigroup};
use proptest::test_runner::{Config, TestRunner};

struct Outcome {
    observed: String,
    passed: bool,
}

fn outcome(observed: impl Into<String>, passed: bool) -> Result<Outcome> {
    Ok(Outcome { observed: observed.into(), passed })
}

fn opts() -> PaOptions {
    PaOptions::default()
}

fn pa_two_element() -> Result<Outcome> {
    let (c2, n2) = (pa_monoid(&cyclic_group(2)?, opts())?, pa_monoid(&null_semigroup(2)?, opts())?);
    let w = monoid_isomorphic(c2.monoid(), n2.monoid(), Some(1), opts().cap)?;
    let ok = c2.order() == 3
        && n2.order() == 3
        && w.first().is_some_and(|w| w.verify(c2.monoid().semigroup(), n2.monoid().semigroup()));
    outcome(format!("|PA(C2)| = {}, |PA(N2)| = {}, witness: {}", c2.order(), n2.order(), !w.is_empty()), ok)
}

/// Monogenic semigroups by name: `C_n` is `M(1, n)` and `I_n` is `C_n^<1>`.
fn monogenic_family() -> Result<Vec<(String, Semigroup)>> {
    let mut items = Vec::new();
    for m in 1..=6 {
        for n in 1..=(7 - m) {
            items.push((format!("M({m},{n})"), monogenic_mn(m, n)?));
        }
    }
    items.push(("M(3,6)".into(), monogenic_mn(3, 6)?));
    items.push(("M(1,10)".into(), monogenic_mn(1, 10)?));
    for n in [1, 3, 5] {
        items.push((format!("I{n}"), inflate_at_identity(&cyclic_group(n)?)?));
    }
    Ok(items)
}

fn monogenic_pairs() -> Result<Outcome> {
    // Affirmed pairs, closed under the coincidence N2 = M(2,1) = C1^<1>.
    let affirmed: BTreeSet<(&str, &str)> = [
        ("M(1,2)", "M(2,1)"),
        ("M(1,2)", "I1"),
        ("M(2,1)", "I1"),
        ("M(2,2)", "M(3,1)"),
        ("M(3,6)", "M(4,3)"),
        ("M(1,6)", "I3"),
        ("M(1,10)", "I5"),
    ]
    .into_iter()
    .collect();
    let items = monogenic_family()?;
    let mut wrong = Vec::new();
    let mut positives = 0;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            let (a, b) = (&items[i], &items[j]);
            let expect = affirmed.contains(&(a.0.as_str(), b.0.as_str())) || affirmed.contains(&(b.0.as_str(), a.0.as_str()));
            let got = pa_isomorphic(&a.1, &b.1, opts())?.isomorphic;
            positives += got as usize;
            if got != expect {
                wrong.push(format!("{}~{}", a.0, b.0));
            }
        }
    }
    let denied_c4 = !pa_isomorphic(&cyclic_group(4)?, &inflate_at_identity(&cyclic_group(2)?)?, opts())?.isomorphic;
    outcome(
        format!("{positives} PA-isomorphic pairs, C4 vs C2^<1> denied: {denied_c4}, mismatches: {wrong:?}"),
        wrong.is_empty() && positives == affirmed.len() && denied_c4,
    )
}

fn from_check(c: pamona::verify::Check) -> Result<Outcome> {
    outcome(c.observed, c.passed)
}

fn semilattices() -> Result<Outcome> {
    let all = small_semilattices(5)?;
    let mut wrong = 0;
    for i in 0..all.len() {
        for j in i..all.len() {
            // Isomorphism by least relabelled table, independent of the PA search.
            let iso = canonical_table(&all[i], false)? == canonical_table(&all[j], false)?;
            wrong += (pa_isomorphic(&all[i], &all[j], opts())?.isomorphic != iso) as usize;
        }
    }
    let per_order: Vec<usize> = (1..=5).map(|n| all.iter().filter(|s| s.order() == n).count()).collect();
    outcome(format!("semilattices per order {per_order:?}, disagreements: {wrong}"), per_order == [1, 1, 2, 5, 15] && wrong == 0)
}

fn census_closure() -> Result<Outcome> {
    let check = check_census_closure(4, opts());
    // Cross-check the bucketed classes against a pairwise sweep within equal lattice sizes.
    let members = small_semigroups(4)?;
    let monoids: Vec<_> = members.iter().map(|s| pa_monoid(s, opts()).map(Arc::new)).collect::<Result<_>>()?;
    let mut class: Vec<usize> = (0..members.len()).collect();
    for i in 0..members.len() {
        for j in 0..i {
            if class[j] == j && monoids[i].lattice().len() == monoids[j].lattice().len() && pa_isomorphic_monoids(&monoids[i], &monoids[j])?.isomorphic {
                class[i] = j;
                break;
            }
        }
    }
    let pairwise = class.iter().enumerate().filter(|(i, c)| i == *c).count();
    let bucketed = pamona::enumerate::pa_classes_of(&members, opts())?.classes.len();
    outcome(
        format!("{}; pairwise sweep finds {pairwise} classes", check.observed),
        check.passed && pairwise == bucketed && members.len() == 218,
    )
}

fn groups_and_inflations() -> Result<Outcome> {
    let groups = small_groups();
    let (c1, c2, c3, c6) = (cyclic_group(1)?, cyclic_group(2)?, cyclic_group(3)?, cyclic_group(6)?);
    let mut wrong = Vec::new();
    let mut pairs = 0;
    for (gname, g) in &groups {
        for (qname, q) in groups.iter().filter(|(_, q)| q.order() <= 7) {
            pairs += 1;
            // Among groups of order <= 8 only C2 x C1 and C2 x C3 have a PA-isomorphic inflation.
            let expect = (are_isomorphic(g, &c2) && are_isomorphic(q, &c1)) || (are_isomorphic(g, &c6) && are_isomorphic(q, &c3));
            if pa_isomorphic(g, &inflate_at_identity(q)?, opts())?.isomorphic != expect {
                wrong.push(format!("{gname}~{qname}^<1>"));
            }
        }
    }
    outcome(format!("{pairs} pairs, mismatches: {wrong:?}"), wrong.is_empty())
}

/// An inverse semigroup is fundamental iff `a ↦ (a⁻¹ea)_e` is injective.
fn fundamental_by_conjugation(s: &Semigroup) -> bool {
    let inv = s.inverse_map().expect("inverse semigroup");
    let idems = s.idempotents();
    let actions: BTreeSet<Vec<usize>> =
        s.elements().map(|a| idems.iter().map(|e| s.mul(s.mul(inv[a], e), a)).collect()).collect();
    actions.len() == s.order()
}

fn munn_identities() -> Result<Outcome> {
    let brandt = are_isomorphic(&munn(&two_atom_semilattice())?.semigroup, &brandt5());
    let chain = are_isomorphic(&munn(&chain_semilattice(3))?.semigroup, &chain_semilattice(3));
    let all = small_semilattices(5)?;
    let mut fundamental = 0;
    for e in &all {
        let t = munn(e)?.semigroup;
        fundamental += (fundamental_by_conjugation(&t) && pamona::props::is_fundamental(&t)?) as usize;
    }
    outcome(
        format!("T(two atoms) = B5: {brandt}, T(3-chain) = 3-chain: {chain}, fundamental {fundamental}/{}", all.len()),
        brandt && chain && fundamental == all.len(),
    )
}

/// Bijections of `S` that are isomorphisms or anti-isomorphisms, by listing all permutations.
fn iso_or_anti_count(s: &Semigroup) -> usize {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        perms(n - 1)
            .into_iter()
            .flat_map(|p| (0..n).map(move |k| {
                let mut q = p.clone();
                q.insert(k, n - 1);
                q
            }))
            .collect()
    }
    perms(s.order()).into_iter().filter(|p| s.is_homomorphism(s, p) || s.is_anti_homomorphism(s, p)).count()
}

fn pa_automorphisms() -> Result<Outcome> {
    let check = check_pa_automorphisms(opts());
    let mut counts = Vec::new();
    let mut ok = check.passed;
    for s in [brandt5(), munn(&two_atom_semilattice())?.semigroup] {
        let p = Arc::new(pa_monoid(&s, opts())?);
        let autos = pa_isomorphisms(&p, &p, None).len();
        let expected = iso_or_anti_count(&s);
        ok &= autos == expected;
        counts.push(format!("{autos} automorphisms, {expected} iso or anti-iso bijections"));
    }
    outcome(format!("{}; {}", check.observed, counts.join("; ")), ok)
}

fn property_suites() -> Result<Outcome> {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let random = runner.run(&common::semigroup(common::MAX_GENERATED), |s| {
        let bad = common::all_failures(&s, 4);
        proptest::prop_assert!(bad.is_empty(), "{bad:?}");
        Ok(())
    });
    let mut exhaustive = 0;
    let mut failures = Vec::new();
    for s in small_semigroups(4)?.iter().chain([brandt5(), munn(&two_atom_semilattice())?.semigroup].iter()) {
        exhaustive += 1;
        let bad = common::all_failures(s, 4);
        if !bad.is_empty() {
            failures.push(format!("{:?}: {bad:?}", s.table()));
        }
    }
    let random_ok = random.is_ok();
    outcome(
        format!(
            "1000 random cases: {}, {exhaustive} census cases, failures: {failures:?}",
            random.map_or_else(|e| e.to_string(), |_| "ok".into())
        ),
        random_ok && failures.is_empty(),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, Duration, fn() -> Result<Outcome>); 10] = [
        ("pa_two_element", "exact", Duration::from_millis(100), pa_two_element),
        ("monogenic_pairs", "exact verdicts", Duration::from_secs(60), monogenic_pairs),
        ("inflation_pa_map", "exact", Duration::from_secs(120), || from_check(check_inflation_map(opts()))),
        ("semilattices_pa_iff_iso", "exact", Duration::from_secs(60), semilattices),
        ("census_closure", "exact", Duration::from_secs(1800), census_closure),
        ("groups_vs_inflations", "exact", Duration::from_secs(60), groups_and_inflations),
        ("munn_identities", "exact", Duration::from_secs(60), munn_identities),
        ("clifford_null_pair", "exact", Duration::from_secs(60), || from_check(check_clifford_null(opts()))),
        ("pa_automorphisms_induced", "exact", Duration::from_secs(600), pa_automorphisms),
        ("property_suites", "zero failures", Duration::from_secs(600), property_suites),
    ];
    let mut all = true;
    for (name, tolerance, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (passed, observed) = match result {
            Ok(o) => (o.passed && elapsed <= budget, o.observed),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= passed;
        println!(
            "{} {name} [tolerance: {tolerance}; budget {budget:.0?}, took {elapsed:.2?}] {observed}",
            if passed { "PASS" } else { "FAIL" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
