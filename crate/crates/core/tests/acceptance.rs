//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use gentle_silt::curves::{BandData, StringModel};
use gentle_silt::fixtures::{type_a, type_a_orientations, type_a_tilde, TILDE_FIXTURES};
use gentle_silt::linalg::Q;
use gentle_silt::oracle::{GlobalDimension, PathAlgebra, TwoTermComplex};
use gentle_silt::silting::{
    is_2term_silting, is_tau_rigid_pair, Mode, SiltingEngine, Summand, TwoTermSiltingObject, VerificationReport, Verdict,
};
use gentle_silt::surface::{global_dimension_geometric, surface_from_algebra, GeometricDimension};
use gentle_silt::GentlePresentation;

const CATALAN: [usize; 7] = [2, 5, 14, 42, 132, 429, 1430];
const LIMIT: Duration = Duration::from_secs(300);
const STRING_BOUND: usize = 12;

struct Line {
    ok: bool,
    text: String,
}

fn line(n: usize, ok: bool, detail: String) -> Line {
    Line { ok, text: format!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" }) }
}

fn a_fixtures() -> Vec<(String, GentlePresentation)> {
    (1..=7).flat_map(|n| type_a_orientations(n).into_iter().map(|w| (w.clone(), type_a(&w)))).collect()
}

fn tilde_fixtures() -> Vec<((usize, usize), GentlePresentation)> {
    TILDE_FIXTURES.iter().map(|&(p, q)| ((p, q), type_a_tilde(p, q))).collect()
}

fn same_dimension(lin: GlobalDimension, geo: GeometricDimension) -> bool {
    match (lin, geo) {
        (GlobalDimension::Finite(a), GeometricDimension::Finite(b)) => a == b,
        (GlobalDimension::Exceeds(_), GeometricDimension::Infinite) => true,
        _ => false,
    }
}

fn hand_corpus() -> Vec<GentlePresentation> {
    let b = GentlePresentation::build;
    vec![
        type_a("rr"),
        type_a("rlr"),
        type_a_tilde(1, 1),
        type_a_tilde(2, 1),
        type_a_tilde(3, 1),
        b(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[("a", "b")]).unwrap(),
        b(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")], &[("a", "b"), ("b", "c")]).unwrap(),
        b(&["1", "2", "3", "4", "5"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "5")], &[("a", "b"), ("b", "c"), ("c", "d")])
            .unwrap(),
        b(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap(),
        b(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")], &[("c", "a")]).unwrap(),
        b(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "4", "2")], &[("a", "b")]).unwrap(),
        b(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[("a", "b")]).unwrap(),
        b(&["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3")], &[("a", "c")]).unwrap(),
    ]
}

struct Sweep {
    reports: Vec<(String, VerificationReport)>,
    elapsed: Duration,
    round_trip_failures: Vec<String>,
}

/// Runs the verifier and the per-pair round trips over a fixture list.
fn sweep(fixtures: Vec<(String, GentlePresentation)>, mode: Mode) -> Sweep {
    let t = Instant::now();
    let mut reports = Vec::new();
    let mut round_trip_failures = Vec::new();
    for (id, p) in fixtures {
        let mut e = SiltingEngine::new(&p).unwrap();
        let r = e.verify(mode).unwrap();
        for rec in &r.records {
            let pair = e.pair_from_json(&rec.pair).unwrap();
            let s = e.silting_of_pair(&pair).unwrap();
            if e.h0_of_silting(&s).unwrap() != pair {
                round_trip_failures.push(format!("{id} #{}: pair -> silting -> pair", rec.index));
            }
            let tri = e.triangulation_of_pair(&pair);
            if tri.map(|t| e.pair_of_triangulation(&t).ok() != Some(pair.clone())).unwrap_or(true) {
                round_trip_failures.push(format!("{id} #{}: pair -> triangulation -> pair", rec.index));
            }
        }
        reports.push((id, r));
    }
    Sweep { reports, elapsed: t.elapsed(), round_trip_failures }
}

fn failures_of(s: &Sweep, checks: &[&str]) -> Vec<String> {
    s.reports
        .iter()
        .flat_map(|(id, r)| r.failures.iter().filter(|f| checks.contains(&f.check.as_str())).map(move |f| format!("{id}: {} {}", f.check, f.detail)))
        .collect()
}

/// Embedding and projective-cover checks over every curve of a fixture.
fn embedding_checks(p: &GentlePresentation, bound: usize) -> (usize, Vec<String>, Vec<String>) {
    let m = StringModel::from_algebra(p).unwrap();
    let alg = PathAlgebra::new(p);
    let mut bad3 = Vec::new();
    let mut bad4 = Vec::new();
    let curves = m.curves_up_to(bound);
    for c in &curves {
        let module = m.module_of_curve(c).unwrap();
        let oracle = alg.min_projective_presentation(&module);
        match m.embed_curve(c).and_then(|ac| m.complex_of_admissible(&alg, &ac)) {
            Ok(x) if alg.complexes_isomorphic(&x, &oracle) => {}
            _ => bad3.push(format!("{:?}", c.ends)),
        }
        let cover = m.projective_cover_curve(c);
        let lemma = m.projective_presentation_curve(&alg, c);
        let ok = lemma.map_or(false, |l| {
            let mut p0 = l.p0.clone();
            let mut p1 = l.p1.clone();
            let mut o0 = oracle.p0.clone();
            let mut o1 = oracle.p1.clone();
            p0.sort();
            p1.sort();
            o0.sort();
            o1.sort();
            let kernel_count = cover.left.iter().count() + cover.core.len() + cover.right.iter().count();
            p0 == o0 && p1 == o1 && cover.cover.len() == o0.len() && kernel_count == o1.len() && alg.complexes_isomorphic(&l, &oracle)
        });
        if !ok {
            bad4.push(format!("{:?}", c.ends));
        }
    }
    (curves.len(), bad3, bad4)
}

fn summary(v: &[String]) -> String {
    match v.first() {
        None => String::new(),
        Some(f) => format!("({} failures, first: {f})", v.len()),
    }
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();

    // 1. main-theorem sweep over type A
    let a = sweep(a_fixtures(), Mode::Exhaustive);
    let mut counts_ok = true;
    for (id, r) in &a.reports {
        let n = id.len() + 1;
        counts_ok &= r.count == CATALAN[n - 1];
    }
    let gl_ok = a.reports.iter().all(|(_, r)| r.records.iter().all(|x| x.gldim_linear.is_some_and(|d| d <= 2) && x.gldim_bound.is_some_and(|d| d <= 2)));
    let pass_ok = a.reports.iter().all(|(_, r)| r.verdict == Verdict::Pass);
    let total: usize = a.reports.iter().map(|(_, r)| r.count).sum();
    lines.push(line(
        1,
        counts_ok && gl_ok && pass_ok && a.elapsed < LIMIT,
        format!(
            "{} algebras, {total} silting objects, Catalan counts {}, all gl.dim <= 2 {}, verdicts pass {}, {:.1}s",
            a.reports.len(),
            counts_ok,
            gl_ok,
            pass_ok,
            a.elapsed.as_secs_f64()
        ),
    ));

    // 2. Ã sweep
    let t = sweep(tilde_fixtures().into_iter().map(|((p, q), x)| (format!("Ã{p},{q}"), x)).collect(), Mode::MutationDepth { depth: 8, string_bound: STRING_BOUND });
    let gl3 = t.reports.iter().flat_map(|(_, r)| &r.records).filter(|x| !x.gldim_linear.is_some_and(|d| d <= 2)).count();
    let pass_ok = t.reports.iter().all(|(_, r)| r.verdict == Verdict::Pass);
    let desc: Vec<String> = t.reports.iter().map(|(id, r)| format!("{id}: {} objects, {} beyond bound", r.count, r.bound_exceeded)).collect();
    lines.push(line(
        2,
        pass_ok && gl3 == 0 && t.elapsed < LIMIT,
        format!("{}; gl.dim > 2: {gl3}; verdicts pass {pass_ok}; {:.1}s", desc.join(", "), t.elapsed.as_secs_f64()),
    ));

    // 3 and 4. embedding theorem and projective-cover lemma
    let mut checked = 0;
    let mut bad3 = Vec::new();
    let mut bad4 = Vec::new();
    for (id, p) in a_fixtures() {
        let n = p.vertex_count();
        let (k, b3, b4) = embedding_checks(&p, n);
        checked += k;
        bad3.extend(b3.into_iter().map(|x| format!("{id} {x}")));
        bad4.extend(b4.into_iter().map(|x| format!("{id} {x}")));
    }
    for ((pp, qq), p) in tilde_fixtures() {
        let (k, b3, b4) = embedding_checks(&p, STRING_BOUND + 1);
        checked += k;
        bad3.extend(b3.into_iter().map(|x| format!("Ã{pp},{qq} {x}")));
        bad4.extend(b4.into_iter().map(|x| format!("Ã{pp},{qq} {x}")));
    }
    lines.push(line(3, bad3.is_empty(), format!("{checked} string modules, embedding failures {} {}", bad3.len(), summary(&bad3))));
    lines.push(line(4, bad4.is_empty(), format!("{checked} string modules, cover/kernel failures {} {}", bad4.len(), summary(&bad4))));

    // 5. global dimension formula
    let mut bad5 = failures_of(&a, &["gldim_formula", "gldim"]);
    bad5.extend(failures_of(&t, &["gldim_formula", "gldim"]));
    let endo_count = a.reports.iter().chain(&t.reports).map(|(_, r)| r.records.iter().filter(|x| x.gldim_geometric.is_some()).count()).sum::<usize>();
    let corpus = hand_corpus();
    for (i, p) in corpus.iter().enumerate() {
        let lin = PathAlgebra::new(p).global_dimension(6);
        let geo = global_dimension_geometric(p).unwrap();
        if !same_dimension(lin, geo) {
            bad5.push(format!("corpus #{i}: linear {lin:?}, geometric {geo:?}"));
        }
    }
    lines.push(line(5, bad5.is_empty(), format!("{endo_count} endomorphism algebras and {} corpus algebras {}", corpus.len(), summary(&bad5))));

    // 6. dictionary round trips
    let mut bad6: Vec<String> = a.round_trip_failures.iter().chain(&t.round_trip_failures).cloned().collect();
    bad6.extend(failures_of(&a, &["air_round_trip", "triangulation", "tau_rigid", "presilting"]));
    bad6.extend(failures_of(&t, &["air_round_trip", "triangulation", "tau_rigid", "presilting"]));
    let mut surfaces = 0;
    let mut modules = 0;
    let all: Vec<(String, GentlePresentation)> =
        a_fixtures().into_iter().chain(tilde_fixtures().into_iter().map(|((p, q), x)| (format!("Ã{p},{q}"), x))).collect();
    for (id, p) in all.iter().map(|(i, p)| (i.clone(), p.clone())).chain(hand_corpus().into_iter().enumerate().map(|(i, p)| (format!("corpus #{i}"), p))) {
        surfaces += 1;
        match surface_from_algebra(&p).and_then(|s| s.algebra()) {
            Ok(b) if b == p => {}
            _ => bad6.push(format!("{id}: algebra -> surface -> algebra")),
        }
    }
    for (id, p) in &all {
        let mut e = SiltingEngine::new(p).unwrap();
        let bound = if p.classify_hereditary_type().unwrap().is_type_a() { p.vertex_count() } else { STRING_BOUND + 1 };
        for c in e.model.curves_up_to(bound) {
            modules += 1;
            let module = e.model.module_of_curve(&c).unwrap();
            let back = e.summand_of_complex(&e.alg.min_projective_presentation(&module)).unwrap();
            if back != Summand::Module(e.model.canonical(&c)) {
                bad6.push(format!("{id}: module -> curve for {:?}", c.ends));
            }
        }
    }
    lines.push(line(
        6,
        bad6.is_empty(),
        format!("{surfaces} algebra/surface, {total} + {} pair round trips, {modules} module/curve {}", t.reports.iter().map(|(_, r)| r.count).sum::<usize>(), summary(&bad6)),
    ));

    // 7. polygon-edge bound
    let max_edges = a.reports.iter().chain(&t.reports).flat_map(|(_, r)| &r.records).map(|x| (x.max_total_edges, x.max_arc_edges)).max().unwrap_or((0, 0));
    let mut bad7 = failures_of(&a, &["polygon_bound", "ffas", "ffas_crossing"]);
    bad7.extend(failures_of(&t, &["polygon_bound", "ffas", "ffas_crossing"]));
    lines.push(line(7, bad7.is_empty() && max_edges.0 <= 4, format!("max total edges {}, max arc edges {} {}", max_edges.0, max_edges.1, summary(&bad7))));

    // 8. classification
    let mut bad8 = Vec::new();
    let mut forms_a = BTreeSet::new();
    let mut forms_t = BTreeSet::new();
    for (id, r) in &a.reports {
        for x in &r.records {
            match &x.classification {
                Some(c) if c.form <= 2 => {
                    forms_a.insert(c.form);
                }
                other => bad8.push(format!("{id} #{}: {other:?}", x.index)),
            }
        }
    }
    for (id, r) in &t.reports {
        for x in &r.records {
            match &x.classification {
                Some(c) if (1..=4).contains(&c.form) => {
                    forms_t.insert(c.form);
                }
                other => bad8.push(format!("{id} #{}: {other:?}", x.index)),
            }
        }
    }
    lines.push(line(8, bad8.is_empty(), format!("type A forms {forms_a:?}, type Ã forms {forms_t:?} {}", summary(&bad8))));

    // 9. negative controls
    let mut bad9 = Vec::new();
    for (id, p) in &all {
        let alg = PathAlgebra::new(p);
        let n = alg.vertex_count();
        let mut summands: Vec<TwoTermComplex> = (0..n).map(|v| TwoTermComplex::stalk(&alg, v)).collect();
        summands.extend((0..n).map(|v| TwoTermComplex::shifted_stalk(&alg, v)));
        let hom = (0..n).any(|v| (0..n).any(|w| alg.hom_complexes_dim(&summands[n + v], &summands[w], 1) != 0));
        if !hom || is_2term_silting(&alg, &TwoTermSiltingObject { summands }) {
            bad9.push(format!("{id}: A ⊕ A[1]"));
        }
    }
    let mut bands = 0;
    for ((pp, qq), p) in tilde_fixtures() {
        let m = StringModel::from_algebra(&p).unwrap();
        let alg = PathAlgebra::new(&p);
        for b in m.closed_curves_up_to(p.vertex_count()) {
            for lambda in [1, 2, -1] {
                bands += 1;
                let r = m.band_module(&b, &BandData { eigenvalue: Q::int(lambda), size: 1 }).unwrap();
                if is_tau_rigid_pair(&alg, &[r], &[]).unwrap() {
                    bad9.push(format!("Ã{pp},{qq}: band {:?} with eigenvalue {lambda}", b.ends));
                }
            }
        }
    }
    lines.push(line(9, bad9.is_empty() && bands > 0, format!("{} fixtures for A ⊕ A[1], {bands} band modules {}", all.len(), summary(&bad9))));

    let mut err = std::io::stderr().lock();
    for l in &lines {
        writeln!(err, "{}", l.text).unwrap();
    }
    assert!(lines.iter().all(|l| l.ok), "acceptance criteria failed");
}
