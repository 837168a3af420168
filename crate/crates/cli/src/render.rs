//! Plain-text renderings. Every number printed here also appears in the
//! JSON form of the same report.

use std::fmt::Write;

use crate::commands::{Bundle, CompareReport, FacesReport, Generator, HomologyReport, QuotientReport, SalvettiReport};

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", join(v))
}

fn matrix<T: ToString>(out: &mut String, m: &[Vec<T>], indent: &str) {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in &cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}[{}]", padded.join(" "));
    }
}

pub fn faces(r: &FacesReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {} hyperplanes in R^{}", r.arrangement.name(), r.arrangement.hyperplanes, r.arrangement.dimension);
    let _ = writeln!(out, "{} faces, {} chambers", r.faces, r.chambers);
    let _ = writeln!(out, "faces by dimension: {}", tuple(&r.faces_by_dimension));
    let _ = writeln!(out, "rank: {}", r.rank);
    let _ = writeln!(out, "Poincaré polynomial coefficients: {}", tuple(&r.poincare_polynomial));
    if let Some(cov) = &r.covectors {
        let _ = writeln!(out, "covectors:");
        for c in cov {
            let _ = writeln!(out, "  {c}");
        }
    }
    out
}

fn generator_line(g: &Generator, boxes: bool) -> String {
    match (&g.box_art, boxes) {
        (Some(art), true) => art.lines().map(|l| format!("      {l}")).collect::<Vec<_>>().join("\n"),
        _ if g.label != g.representative => format!("      {}  (representative {})", g.label, g.representative),
        _ => format!("      {}", g.label),
    }
}

fn quotient(out: &mut String, q: &QuotientReport, boxes: bool) {
    let _ = writeln!(out, "twisted quotient over F_{} ({} twist): generators {}", q.p, q.twist, tuple(&q.counts));
    if q.dead_orbits.iter().any(|&d| d > 0) {
        let _ = writeln!(out, "  orbits killed by the twist: {}", tuple(&q.dead_orbits));
    }
    for (k, gens) in q.generators.iter().enumerate() {
        let _ = writeln!(out, "  degree {k}:");
        for g in gens {
            let _ = writeln!(out, "{}", generator_line(g, boxes));
        }
    }
    for (k, m) in q.boundaries.iter().enumerate() {
        let _ = writeln!(out, "  ∂_{} (integer lift):", k + 1);
        matrix(out, m, "    ");
    }
}

pub fn salvetti(r: &SalvettiReport, boxes: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: Salvetti complex with cells {} (Euler characteristic {})", r.arrangement.name(), tuple(&r.counts), r.euler_characteristic);
    for c in &r.cells {
        let boundary: Vec<String> = c.boundary.iter().map(|(f, s)| format!("{}{f}", if *s > 0 { "+" } else { "-" })).collect();
        let _ = writeln!(out, "  {:>4}  dim {}  {}  ∂ = {}", c.id, c.dim, c.covector, if boundary.is_empty() { "0".into() } else { boundary.join(" ") });
    }
    if let Some(q) = &r.quotient {
        quotient(&mut out, q, boxes);
    }
    out
}

pub fn homology(r: &HomologyReport) -> String {
    let mut out = String::new();
    let what = match r.twist {
        Some(t) => format!("twisted quotient ({t} twist)"),
        None => "Salvetti complex".to_string(),
    };
    let _ = writeln!(out, "{}: homology of the {what} over F_{}", r.arrangement.name(), r.p);
    let _ = writeln!(out, "chain dimensions: {}", tuple(&r.chain_dims));
    let _ = writeln!(out, "Betti numbers: {}", tuple(&r.betti));
    let _ = writeln!(out, "Euler characteristic: {}", r.euler_characteristic);
    for d in &r.degrees {
        if d.betti > 0 {
            let _ = writeln!(out, "  H_{}: {}", d.degree, d.cycles.join("; "));
        }
    }
    out
}

fn compare_body(out: &mut String, r: &CompareReport) {
    let _ = writeln!(out, "chain dimensions: source {}, target {}", tuple(&r.source_dims), tuple(&r.target_dims));
    let _ = writeln!(out, "surjective by degree: {}", tuple(&r.surjective));
    let _ = writeln!(out, "kernel generators: {}", tuple(&r.kernel_dims));
    let _ = writeln!(out, "kernel Betti numbers: {}", tuple(&r.kernel_betti));
    let _ = writeln!(out, "Betti numbers: source {}, target {}", tuple(&r.source_betti), tuple(&r.target_betti));
    for m in &r.induced_maps {
        let kind = if m.isomorphism { "isomorphism" } else if m.zero { "zero" } else { "neither" };
        let _ = writeln!(out, "  H_{}: F_{}^{} -> F_{}^{}, rank {} ({kind})", m.degree, r.p, m.source_dim, r.p, m.target_dim, m.rank);
        if !m.matrix.is_empty() && m.source_dim > 0 {
            matrix(out, &m.matrix, "    ");
        }
    }
}

pub fn compare(r: &CompareReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "inclusion {} -> {} over F_{} ({} twist)", r.arrangement.name(), r.subarrangement.name(), r.p, r.twist);
    compare_body(&mut out, r);
    out
}

pub fn report(b: &Bundle, boxes: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "== arrangements ==");
    for a in &b.arrangements {
        let _ = writeln!(out, "{}: {} faces, {} chambers, cells {}", a.name, a.faces, a.chambers, tuple(&a.cells));
        let _ = writeln!(out, "  Poincaré polynomial {}, F_2 Betti numbers {}", tuple(&a.poincare_polynomial), tuple(&a.betti_unquotiented_f2));
    }
    for s in &b.primes {
        let _ = writeln!(out, "\n== p = {} ==", s.p);
        for (name, q) in [("braid(4)", &s.braid), ("center_of_mass(4,2)", &s.center_of_mass)] {
            let _ = writeln!(out, "-- {name} --");
            quotient(&mut out, &q.quotient, boxes);
            let _ = writeln!(out, "  Betti numbers: {}", tuple(&q.betti));
            for d in q.cycles.iter().filter(|d| d.betti > 0) {
                let _ = writeln!(out, "    H_{}: {}", d.degree, d.cycles.join("; "));
            }
        }
        let _ = writeln!(out, "-- inclusion center_of_mass(4,2) -> braid(4) --");
        compare_body(&mut out, &s.comparison);
    }
    let _ = writeln!(out, "\n== checks ==");
    for c in &b.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "[{status}] ({}) {}: expected {}, got {}", c.kind, c.name, c.expected, c.actual);
    }
    let failed = b.checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(out, "{} checks, {} failed", b.checks.len(), failed);
    out
}
