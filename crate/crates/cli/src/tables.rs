//! Plain-text reproductions of the worked examples.

use primlat::classifier::definite_catalog;
use primlat::discforms::disc_bilinear;
use primlat::oracle::{isometry_small, DEFAULT_BUDGET};
use primlat::surface::{
    derive_invariants, enumerate_candidates, intersection_lattice, primitive_lattice, Embedding, SurfaceInvariants,
    CANDIDATE_ASSUMPTION,
};
use primlat::{Error, NamedDecomposition, Parity, Result};

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
fn render(headers: &[&str], rows: &[Vec<String>]) -> String {
    let width = |s: &str| s.chars().count();
    let mut w: Vec<usize> = headers.iter().map(|h| width(h)).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(width(c));
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            s.push_str(c);
            if i + 1 < cells.len() {
                s.push_str(&" ".repeat(w[i] - width(c) + 2));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n") + "\n"
}

fn invariants_line(inv: &SurfaceInvariants) -> String {
    format!(
        "q = {}, p_g = {}, chi = {}, e = {}, tau = {}, b2 = {}, h11 = {}, signature {}",
        inv.q, inv.pg, inv.chi, inv.e, inv.tau, inv.b2, inv.h11, inv.signature
    )
}

/// `P_X` for `h = K`, characteristic in an odd `H_X`.
fn canonical_primitive(b1: i64, c1sq: i64, c2: i64) -> String {
    let emb = Embedding {
        parity: Parity::Odd,
        hsq: c1sq,
        h_characteristic: true,
        canonically_polarized: true,
    };
    match derive_invariants(b1, c1sq, c2).and_then(|inv| primitive_lattice(&inv, emb)) {
        Ok(r) => r.named.label().unwrap_or_else(|| "(unnamed)".into()),
        Err(e) => format!("({e})"),
    }
}

fn candidates(c1sq: i64, with_st: bool) -> String {
    let mut rows = Vec::new();
    for row in enumerate_candidates(c1sq) {
        for (i, &(pg, q)) in row.pg_q.iter().enumerate() {
            let first = i == 0;
            let mut r = vec![
                if first { row.chi.to_string() } else { String::new() },
                if first { row.c2.to_string() } else { String::new() },
                format!("({pg},{q})"),
            ];
            if with_st {
                r.push(row.st.map(|(s, t)| format!("({s},{t})")).unwrap_or_default());
            }
            r.push(canonical_primitive(2 * q, c1sq, row.c2));
            rows.push(r);
        }
    }
    let headers: &[&str] = if with_st {
        &["chi", "c2", "(p_g,q)", "(s,t)", "P_X"]
    } else {
        &["chi", "c2", "(p_g,q)", "P_X"]
    };
    format!(
        "canonically polarized surfaces with c1^2 = {c1sq}\nassumption: {CANDIDATE_ASSUMPTION}\n\n{}",
        render(headers, &rows)
    )
}

pub fn example1() -> String {
    candidates(1, true)
}

pub fn example2() -> String {
    candidates(2, false)
}

pub fn table1() -> Result<String> {
    let mut rows = Vec::new();
    for k in 1..=8 {
        let row = definite_catalog(k)?;
        let computed = disc_bilinear(&row.lattice);
        let agrees = computed.is_isomorphic(&row.printed_form)?;
        rows.push(vec![
            k.to_string(),
            row.lattice.rank().to_string(),
            row.lattice.det().magnitude().to_string(),
            row.label.clone(),
            row.printed_form_text.to_string(),
            computed.render(),
            if agrees { "yes" } else { "no" }.to_string(),
        ]);
    }
    Ok(format!(
        "definite primitive lattices P_X for chi = 1, q = 0, K ample (forms mod 1)\n\n{}",
        render(&["c1^2", "rank", "|det|", "P_X", "printed form", "computed form", "agree"], &rows)
    ))
}

pub fn k3() -> Result<String> {
    let inv = derive_invariants(0, 0, 24)?;
    let h = intersection_lattice(&inv, Parity::Even)?;
    let mut rows = Vec::new();
    for d in 1..=4 {
        let emb = Embedding {
            parity: Parity::Even,
            hsq: 2 * d,
            h_characteristic: false,
            canonically_polarized: false,
        };
        let r = primitive_lattice(&inv, emb)?;
        rows.push(vec![
            (2 * d).to_string(),
            r.named.label().unwrap_or_default(),
            r.class_number_one.to_string(),
        ]);
    }
    Ok(format!(
        "K3 surface: (b1, c1^2, c2) = (0, 0, 24)\n{}\nH_X = {h}\n\n{}",
        invariants_line(&inv),
        render(&["h^2", "P_X", "class number one"], &rows)
    ))
}

pub fn enriques() -> Result<String> {
    let inv = derive_invariants(0, 0, 12)?;
    let h = intersection_lattice(&inv, Parity::Even)?;
    let emb = Embedding {
        parity: Parity::Even,
        hsq: 2,
        h_characteristic: false,
        canonically_polarized: false,
    };
    let r = primitive_lattice(&inv, emb)?;
    let expected: NamedDecomposition = "<-2> + E8(-1)".parse()?;
    let witness = isometry_small(&r.gram, &expected.lattice()?, DEFAULT_BUDGET)?;
    let verified = witness.witness().is_some_and(|w| w.verify(&r.gram, &expected.lattice().unwrap()));
    let named = r.named.label().ok_or_else(|| Error::NoSuchGenus("complement left unnamed".into()))?;
    Ok(format!(
        "Enriques surface: (b1, c1^2, c2) = (0, 0, 12)\n{}\nH_X = {h}\nc = {}, c^2 = 2\nc-perp = {named}\nroute: {}\nclass number one (criterion): {}\nisometry witness with {expected}: {}\n",
        invariants_line(&inv),
        r.h,
        r.route,
        r.class_number_one,
        if verified { "found, verified" } else { "not found" }
    ))
}
