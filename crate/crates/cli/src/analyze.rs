//! The `analyze` report: basic facts, Green's relations and structural predicates.

use pamona::props::{
    archimedean_family, is_clifford, is_combinatorial_inverse, is_completely_semisimple, is_e_unitary,
    is_fundamental, is_shortly_connected, is_shortly_linked, isolated_decompositions, isolated_idempotents,
    no_isolated_c2_times_odd, no_isolated_order_two, no_nontrivial_isolated,
};
use pamona::{ElemSet, GreenData, Result, Semigroup};

fn names(s: &Semigroup, set: &ElemSet) -> String {
    let parts: Vec<String> = set.iter().map(|x| s.label(x)).collect();
    format!("{{{}}}", parts.join(","))
}

fn opt(s: &Semigroup, x: Option<usize>) -> String {
    x.map_or_else(|| "none".to_string(), |x| s.label(x))
}

/// Ordered `(key, value)` rows of the report.
pub fn report(s: &Semigroup) -> Result<Vec<(String, String)>> {
    let mut rows: Vec<(String, String)> = Vec::new();
    let mut put = |k: &str, v: String| rows.push((k.to_string(), v));
    let green = GreenData::compute(s);
    let inverse = s.is_inverse_semigroup();
    put("order", s.order().to_string());
    put("commutative", s.is_commutative().to_string());
    put("band", s.elements().all(|x| s.is_idempotent(x)).to_string());
    put("regular", s.is_regular().to_string());
    put("inverse", inverse.to_string());
    put("group", s.is_group().to_string());
    put("semilattice", s.is_semilattice().to_string());
    put("combinatorial", s.is_combinatorial().to_string());
    put("identity", opt(s, s.identity()));
    put("zero", opt(s, s.zero()));
    put("idempotents", names(s, &s.idempotents()));
    put("m_set", names(s, &s.m_set()));
    put("n_set", names(s, &s.n_set()));
    put("h_classes", green.h_classes().len().to_string());
    put("l_classes", green.l_classes().len().to_string());
    put("r_classes", green.r_classes().len().to_string());
    put("d_classes", green.d_classes().iter().map(|c| names(s, c)).collect::<Vec<_>>().join(" "));
    put("d_equals_j", green.d_equals_j().to_string());
    put("isolated_idempotents", names(s, &isolated_idempotents(s)));
    for (e, d) in isolated_decompositions(s) {
        put(
            &format!("decomposition[{}]", s.label(e)),
            format!("A = {}, P = {}", names(s, &d.a), names(s, &d.p)),
        );
    }
    put("no_isolated_c2_times_odd", no_isolated_c2_times_odd(s).to_string());
    put("no_isolated_order_two", no_isolated_order_two(s).to_string());
    put("no_nontrivial_isolated", no_nontrivial_isolated(s).to_string());
    put("combinatorial_inverse", is_combinatorial_inverse(s).to_string());
    put("clifford", is_clifford(s).to_string());
    put("completely_semisimple", is_completely_semisimple(s).to_string());
    if inverse {
        put("e_unitary", is_e_unitary(s)?.to_string());
        put("fundamental", is_fundamental(s)?.to_string());
        put("shortly_connected", is_shortly_connected(s)?.to_string());
        put("shortly_linked", is_shortly_linked(s)?.to_string());
        let arch = archimedean_family(s)?;
        put("pseudo_archimedean", arch.pseudo.to_string());
        put("faintly_archimedean", arch.faintly.to_string());
        put("quasi_archimedean", arch.quasi.to_string());
        put("archimedean_finite_vacuity", arch.finite_vacuity.to_string());
        put("n_set_monogenic_combinatorial", arch.n_set_combinatorial.to_string());
    }
    Ok(rows)
}

pub fn render(rows: &[(String, String)], machine: bool) -> String {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| if machine { format!("{k}\t{v}\n") } else { format!("{k:<width$}  {v}\n") })
        .collect()
}
