//! Text and JSON renderings of each command's result.

use std::fmt::Write;

use serde_json::{json, Value};

use twoarr::{
    Arrangement, ComparisonReport, IntersectionLattice, KappaForm, LinkingData, NbcComplex,
    Presentation, Sign, ValidationReport,
};

pub struct Report {
    pub text: String,
    pub json: Value,
}

fn sign_list(signs: &[Sign]) -> String {
    let parts: Vec<String> = signs.iter().map(Sign::to_string).collect();
    format!("({})", parts.join(","))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn validate(arr: &Arrangement, v: &ValidationReport) -> Report {
    let mut text = format!("subspaces: {} in R^{}\n", arr.len(), arr.dim());
    if v.is_admissible() {
        text.push_str("admissible: yes\n");
    } else {
        text.push_str("admissible: no\n");
        for violation in &v.violations {
            let _ = writeln!(text, "  {violation}");
        }
    }
    Report {
        text,
        json: json!({
            "admissible": v.is_admissible(),
            "violations": v.violations,
        }),
    }
}

pub fn lattice(arr: &Arrangement) -> Report {
    let l: IntersectionLattice = twoarr::flats(arr);
    let mut text = String::new();
    for r in 0..=l.rank() {
        let _ = writeln!(text, "rank {r}: {}", join(l.of_rank(r).map(|f| f.elements)));
    }
    let whitney = l.whitney_numbers();
    let _ = writeln!(text, "flats: {}", l.len());
    let _ = writeln!(text, "covers: {}", l.covers().len());
    let _ = writeln!(text, "whitney: {}", join(&whitney));
    let by_rank: Vec<Vec<_>> = (0..=l.rank())
        .map(|r| l.of_rank(r).map(|f| f.elements).collect())
        .collect();
    Report {
        text,
        json: json!({
            "flats": by_rank,
            "covers": l.covers(),
            "mobius": l.mobius(),
            "whitney": whitney,
        }),
    }
}

pub fn circuits(arr: &Arrangement) -> Report {
    let cs = twoarr::circuits(arr);
    let mut text = String::new();
    for c in &cs {
        let _ = writeln!(text, "{}", c.set());
    }
    let _ = writeln!(text, "count: {}", cs.len());
    Report {
        text,
        json: json!({ "circuits": cs }),
    }
}

pub fn betti(arr: &Arrangement, nbc: &NbcComplex) -> Report {
    let betti = twoarr::betti_vector(arr);
    let whitney = twoarr::whitney_check(arr);
    let mut text = format!("betti: {}\n", join(&betti));
    text.push_str("nbc sets:\n");
    for (p, sets) in nbc.by_size.iter().enumerate() {
        let _ = writeln!(text, "  {p}: {}", join(sets.iter()));
    }
    let _ = writeln!(text, "whitney check: {}", if whitney { "ok" } else { "FAILED" });
    Report {
        text,
        json: json!({
            "betti": betti,
            "nbc": nbc.by_size,
            "whitney_check": whitney,
        }),
    }
}

pub fn present(p: &Presentation, nbc_ok: bool) -> Report {
    let mode = match p.mode {
        twoarr::Mode::Real => "real",
        twoarr::Mode::Complex => "complex",
    };
    let mut text = format!("mode: {mode}\nrelations:\n");
    let width = p
        .relations
        .iter()
        .map(|r| r.circuit.set().to_string().len())
        .max()
        .unwrap_or(0);
    let sign_width = p
        .relations
        .iter()
        .map(|r| sign_list(&r.signs).len())
        .max()
        .unwrap_or(0);
    for r in &p.relations {
        let _ = writeln!(
            text,
            "  {:<width$}  {:<sign_width$}  {}",
            r.circuit.set().to_string(),
            sign_list(&r.signs),
            r.element,
        );
    }
    let ranks = p.ideal_rank_profile();
    let _ = writeln!(text, "ideal ranks (degrees 1..{}): {}", p.n, join(&ranks));
    let _ = writeln!(text, "nbc basis check: {}", if nbc_ok { "ok" } else { "FAILED" });
    Report {
        text,
        json: json!({
            "mode": p.mode,
            "relations": p.relations,
            "ideal_ranks": ranks,
            "nbc_basis_check": nbc_ok,
        }),
    }
}

pub fn kappa(k: &KappaForm) -> Report {
    let rank = twoarr::kappa_rank(k);
    let mut text = format!("basis size: {}\nrank: {rank}\n", k.basis_size());
    if k.is_extension() {
        let _ = writeln!(
            text,
            "note: {} generators; the pairing takes values in Lambda^4 of rank {}",
            k.n,
            k.top_monomials().len()
        );
    }
    text.push_str("basis:\n");
    for (i, b) in k.basis.iter().enumerate() {
        let _ = writeln!(text, "  b{} = {b}", i + 1);
    }
    let gram: Value = match k.scalar_gram() {
        Some(g) => {
            text.push_str("gram:\n");
            let cells: Vec<Vec<String>> = g
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect();
            let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in &cells {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
                let _ = writeln!(text, "  {}", line.join(" "));
            }
            json!(cells
                .iter()
                .map(|r| r.iter().map(|c| c.parse::<i64>().unwrap_or(0)).collect::<Vec<_>>())
                .collect::<Vec<_>>())
        }
        None => {
            text.push_str("gram:\n");
            let size = k.basis_size();
            let mut rows = Vec::with_capacity(size);
            for i in 0..size {
                let mut row = Vec::with_capacity(size);
                for j in 0..size {
                    let _ = writeln!(text, "  b{} b{}: {}", i + 1, j + 1, k.gram[i][j]);
                    row.push(k.gram[i][j].to_string());
                }
                rows.push(row);
            }
            json!(rows)
        }
    };
    Report {
        text,
        json: json!({
            "kappa": {
                "basis_size": k.basis_size(),
                "rank": rank,
                "gram": gram,
                "basis": k.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "extension": k.is_extension(),
            }
        }),
    }
}

pub fn linking(data: &LinkingData) -> Report {
    let n = data.pairwise.len();
    let mut text = String::from("pairwise:\n");
    for row in &data.pairwise {
        let cells: Vec<String> = row
            .iter()
            .map(|s| match s {
                Sign::Zero => " .".to_string(),
                s => s.to_string(),
            })
            .collect();
        let _ = writeln!(text, "  {}", cells.join(" "));
    }
    text.push_str("triples:\n");
    for (set, s) in &data.triples {
        let _ = writeln!(text, "  {set}: {s}");
    }
    let multiset = data.triple_multiset();
    let _ = writeln!(text, "triple multiset: {}", sign_list(&multiset));
    let pairwise: Vec<Vec<i32>> = data
        .pairwise
        .iter()
        .map(|r| r.iter().map(|s| s.to_i32()).collect())
        .collect();
    let triples: Vec<Value> = data
        .triples
        .iter()
        .map(|(set, s)| json!({ "set": set, "sign": s.to_i32() }))
        .collect();
    debug_assert_eq!(pairwise.len(), n);
    Report {
        text,
        json: json!({ "linking": { "pairwise": pairwise, "triples": triples } }),
    }
}

pub fn compare(rep: &ComparisonReport) -> Report {
    let mut text = String::new();
    let yes_no = |b: bool| if b { "equal" } else { "different" };
    let _ = writeln!(text, "labeled matroid: {}", yes_no(rep.labeled_matroid_equal));
    match rep.matroid_isomorphic {
        Some(iso) => {
            let _ = writeln!(text, "matroid up to relabeling: {}", if iso { "isomorphic" } else { "not isomorphic" });
        }
        None => text.push_str("matroid up to relabeling: not searched\n"),
    }
    let _ = writeln!(text, "betti: {} | {}", join(&rep.betti[0]), join(&rep.betti[1]));
    let _ = writeln!(
        text,
        "ideal ranks: {} | {}",
        join(&rep.ideal_ranks[0]),
        join(&rep.ideal_ranks[1])
    );
    let _ = writeln!(text, "kappa rank: {} | {}", rep.kappa_ranks[0], rep.kappa_ranks[1]);
    if let Some([a, b]) = &rep.triple_multisets {
        let _ = writeln!(text, "triple multiset: {} | {}", sign_list(a), sign_list(b));
    }
    if !rep.differing.is_empty() {
        let _ = writeln!(text, "differing: {}", rep.differing.join(", "));
    }
    let _ = writeln!(text, "verdict: {}", rep.verdict);
    Report {
        text,
        json: serde_json::to_value(rep).expect("report serializes"),
    }
}
