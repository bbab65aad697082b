//! One test per acceptance criterion. Each prints a single `PASS`/`FAIL`
//! line; run with `cargo test -p domipoly --test acceptance -- --nocapture`
//! to see them.

use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use domipoly::families::{generate, FamilySpec};
use domipoly::oracle::{domination_number, domination_polynomial};
use domipoly::recurrence::{
    alpha_formula, d_complete, d_corona, d_cycle, d_general_recurrence, d_kpath, d_kstar, d_kwheel,
    d_path, eval_minus_one_check, gamma_formula, CheckReport,
};
use domipoly::roots::{
    classify_real, corona_sequence_roots, find_roots, format_float, kstar_sweep, root_sets_agree,
    sweep_csv, CoronaLevel,
};
use domipoly::{Graph, Polynomial};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TOL: f64 = 1e-10;
const EPS: f64 = 1e-8;

fn report(criterion: u32, title: &str, ok: bool, detail: &str, started: Instant) {
    println!(
        "criterion {criterion:>2} {} {title} ({detail}; {:.2?})",
        if ok { "PASS" } else { "FAIL" },
        started.elapsed()
    );
}

fn random_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=10);
            let p: f64 = rng.random_range(0.15..0.7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}

fn small_grid(kmax: usize, nmax: usize) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for k in 1..=kmax {
        for n in 1..=nmax {
            for spec in [
                FamilySpec::kpath(k, n),
                FamilySpec::kcycle(k, n),
                FamilySpec::kwheel(k, n),
                FamilySpec::kstar(k, n),
            ] {
                if spec.validate().is_ok() {
                    specs.push(spec);
                }
            }
        }
    }
    specs
}

#[test]
fn criterion_01_expansion_identity() {
    let started = Instant::now();
    let mut graphs: Vec<(String, Graph)> = small_grid(3, 12)
        .into_iter()
        .map(|s| (s.to_string(), generate(&s).unwrap()))
        .collect();
    graphs.extend(
        random_graphs(50, 0x5eed)
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("random#{i}"), g)),
    );
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, g) in &graphs {
        let direct = domination_polynomial(g).unwrap();
        for u in 0..g.n() {
            checked += 1;
            let expanded = d_general_recurrence(g, u).unwrap();
            if expanded != direct {
                failures.push(CheckReport::compare_polys(
                    format!("{name}@{u}"),
                    "expansion",
                    &expanded,
                    "oracle",
                    &direct,
                ));
            }
        }
    }
    for f in &failures {
        println!("{}", f.to_json());
    }
    report(
        1,
        "expansion identity at every vertex",
        failures.is_empty(),
        &format!(
            "{} graphs, {checked} vertices, {} mismatches",
            graphs.len(),
            failures.len()
        ),
        started,
    );
    assert!(failures.is_empty());
}

#[test]
fn criterion_02_closed_forms_match_oracle() {
    let started = Instant::now();
    let mut reports = Vec::new();
    let mut compare = |spec: FamilySpec, method: &str, formula: Polynomial| {
        let oracle = domination_polynomial(&generate(&spec).unwrap()).unwrap();
        reports.push(CheckReport::compare_polys(
            spec, method, &formula, "oracle", &oracle,
        ));
    };
    for n in 1..=16 {
        compare(
            FamilySpec::complete(n),
            "d_complete",
            d_complete(n).unwrap(),
        );
        compare(FamilySpec::path(n), "d_path", d_path(n).unwrap());
        if n >= 3 {
            compare(FamilySpec::cycle(n), "d_cycle", d_cycle(n).unwrap());
        }
    }
    for k in 1..=4 {
        for n in k..=16 {
            compare(FamilySpec::kpath(k, n), "d_kpath", d_kpath(k, n).unwrap());
            if n > k {
                compare(FamilySpec::kstar(k, n), "d_kstar", d_kstar(k, n).unwrap());
            }
            if n >= k + 2 {
                compare(
                    FamilySpec::kwheel(k, n),
                    "d_kwheel",
                    d_kwheel(k, n).unwrap(),
                );
            }
        }
    }
    let findings: Vec<&CheckReport> = reports.iter().filter(|r| !r.is_match()).collect();
    for f in &findings {
        println!("{}", f.to_json());
    }
    let mut by_method: Vec<(&str, usize)> = Vec::new();
    for f in &findings {
        match by_method.iter_mut().find(|(m, _)| *m == f.a) {
            Some((_, c)) => *c += 1,
            None => by_method.push((&f.a, 1)),
        }
    }
    let summary: Vec<String> = by_method.iter().map(|(m, c)| format!("{m}: {c}")).collect();
    report(
        2,
        "closed forms equal the oracle",
        findings.is_empty(),
        &format!(
            "{} instances, {} findings [{}]",
            reports.len(),
            findings.len(),
            summary.join(", ")
        ),
        started,
    );
    assert!(
        findings.is_empty(),
        "{} closed-form findings",
        findings.len()
    );
}

#[test]
fn criterion_03_base_cases() {
    let started = Instant::now();
    let cases = [
        (FamilySpec::path(1), Polynomial::from_i64s(&[0, 1])),
        (FamilySpec::path(2), Polynomial::from_i64s(&[0, 2, 1])),
        (FamilySpec::path(3), Polynomial::from_i64s(&[0, 1, 3, 1])),
        (FamilySpec::cycle(3), Polynomial::from_i64s(&[0, 3, 3, 1])),
    ];
    let mut ok = true;
    for (spec, expected) in &cases {
        let oracle = domination_polynomial(&generate(spec).unwrap()).unwrap();
        let recurrence = match spec.kind {
            domipoly::FamilyKind::Cycle => d_cycle(spec.n).unwrap(),
            _ => d_path(spec.n).unwrap(),
        };
        if &oracle != expected || &recurrence != expected {
            println!("{spec}: oracle {oracle}, recurrence {recurrence}, expected {expected}");
            ok = false;
        }
    }
    report(3, "base cases P1, P2, P3, C3", ok, "4 polynomials", started);
    assert!(ok);
}

fn formula_grid() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in 1..=16 {
        specs.extend([FamilySpec::complete(n), FamilySpec::path(n)]);
        if n >= 2 {
            specs.push(FamilySpec::star(n));
        }
        if n >= 3 {
            specs.push(FamilySpec::cycle(n));
        }
    }
    for k in 1..=4 {
        for n in k..=16 {
            for spec in [
                FamilySpec::kpath(k, n),
                FamilySpec::kcycle(k, n),
                FamilySpec::kwheel(k, n),
                FamilySpec::kstar(k, n),
            ] {
                if spec.validate().is_ok() {
                    specs.push(spec);
                }
            }
        }
    }
    specs
}

#[test]
fn criterion_04_gamma_alpha_formulas() {
    let started = Instant::now();
    let specs = formula_grid();
    let mut findings = Vec::new();
    for spec in &specs {
        let g = generate(spec).unwrap();
        let gamma = CheckReport::compare_values(
            spec,
            "gamma_formula",
            gamma_formula(spec).unwrap(),
            "oracle",
            domination_number(&g).unwrap(),
        );
        let alpha = CheckReport::compare_values(
            spec,
            "alpha_formula",
            alpha_formula(spec).unwrap(),
            "brute_force",
            g.independence_number(),
        );
        findings.extend([gamma, alpha].into_iter().filter(|r| !r.is_match()));
    }
    for f in &findings {
        println!("{}", f.to_json());
    }
    report(
        4,
        "domination and independence number formulas",
        findings.is_empty(),
        &format!("{} instances, {} findings", specs.len(), findings.len()),
        started,
    );
    assert!(findings.is_empty());
}

#[test]
fn criterion_05_value_at_minus_one() {
    let started = Instant::now();
    let mut checked = 0;
    let mut findings = Vec::new();
    for spec in formula_grid() {
        let Ok(r) = eval_minus_one_check(&spec) else {
            continue;
        };
        checked += 1;
        if !r.is_match() {
            findings.push(r);
        }
    }
    for f in &findings {
        println!("{}", f.to_json());
    }
    report(
        5,
        "values at -1",
        findings.is_empty() && checked > 0,
        &format!("{checked} instances, {} findings", findings.len()),
        started,
    );
    assert!(findings.is_empty());
}

/// Every labelled graph on `n` vertices.
fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1);
            Graph::from_edges(n, edges.map(|(_, &e)| e)).unwrap()
        })
        .collect()
}

#[test]
fn criterion_06_corona_product() {
    let started = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    let small: Vec<Graph> = (1..=3).flat_map(all_graphs).collect();
    for g in &small {
        for h in &small {
            checked += 1;
            let direct = domination_polynomial(&g.corona(h).unwrap()).unwrap();
            let product = d_corona(g.n(), h.n(), &domination_polynomial(h).unwrap());
            if direct != product {
                failures.push(CheckReport::compare_polys(
                    format!("corona({}|{})", g.to_text().trim(), h.to_text().trim()),
                    "corona_product",
                    &product,
                    "oracle",
                    &direct,
                ));
            }
        }
    }
    for f in &failures {
        println!("{}", f.to_json());
    }
    report(
        6,
        "corona product",
        failures.is_empty(),
        &format!("{checked} pairs, {} mismatches", failures.len()),
        started,
    );
    assert!(failures.is_empty());
}

/// Classification lines for the k-star root theorem; also the artifact
/// compared byte for byte in the determinism check.
fn root_theorem_output() -> (String, Vec<String>) {
    let mut out = String::new();
    let mut violations = Vec::new();
    for k in [2usize, 4] {
        for n in k + 1..=31 {
            let roots = find_roots(&d_kstar(k, n).unwrap(), TOL).unwrap();
            let class = classify_real(&roots, EPS);
            let reals: Vec<String> = class.real_roots.iter().map(|&r| format_float(r)).collect();
            writeln!(
                out,
                "k={k} n={n} real_nonzero={} [{}]",
                class.real_nonzero_count,
                reals.join(" ")
            )
            .unwrap();
            let ok = if n % 2 == 1 {
                class.real_nonzero_count == 0
            } else {
                class.real_nonzero_count == 1
                    && class.real_roots[0] > -1.0
                    && class.real_roots[0] < 0.0
            };
            if !ok {
                violations.push(format!("k={k} n={n}: {:?}", class.real_roots));
            }
        }
    }
    (out, violations)
}

fn sweep_output() -> (String, Vec<String>) {
    let rows = kstar_sweep(4, 5, 44, TOL).unwrap();
    let mut violations = Vec::new();
    for row in &rows {
        let class = classify_real(&row.roots, EPS);
        let expected = if row.n % 2 == 0 { 1 } else { 0 };
        if row.roots.max_residual() > EPS {
            violations.push(format!(
                "n={} residual {:e}",
                row.n,
                row.roots.max_residual()
            ));
        }
        if class.real_nonzero_count != expected {
            violations.push(format!("n={} real roots {:?}", row.n, class.real_roots));
        }
    }
    (sweep_csv(&rows), violations)
}

fn corona_csv(levels: &[CoronaLevel]) -> String {
    let mut out = String::from("depth,multiplicity,re,im\n");
    for level in levels {
        for z in level.roots.distinct(0.0) {
            writeln!(
                out,
                "{},{},{},{}",
                level.depth,
                level.host_order,
                format_float(z.re),
                format_float(z.im)
            )
            .unwrap();
        }
    }
    out
}

fn corona_output() -> (String, Vec<String>) {
    let base = generate(&FamilySpec::path(2)).unwrap();
    let mut out = String::new();
    let mut violations = Vec::new();
    for (k, n) in [(2usize, 6usize), (2, 8), (4, 9)] {
        let levels = corona_sequence_roots(&base, k, n, 3, TOL).unwrap();
        for a in &levels {
            for b in &levels {
                if !root_sets_agree(&a.roots, &b.roots, 1e-6) {
                    violations.push(format!("k={k} n={n}: depth {} vs {}", a.depth, b.depth));
                }
            }
        }
        // the per-vertex block is D(K_1 + S_{k,n-k}) = D(S_{k+1,n-k})
        let star = find_roots(&d_kstar(k + 1, n + 1).unwrap(), TOL).unwrap();
        if !root_sets_agree(&levels[0].roots, &star, 1e-6) {
            violations.push(format!(
                "k={k} n={n}: block roots differ from S_{{k+1,n-k}}"
            ));
        }
        writeln!(out, "# k={k} n={n}").unwrap();
        out.push_str(&corona_csv(&levels));
    }
    (out, violations)
}

#[test]
fn criterion_07_root_location() {
    let started = Instant::now();
    let (_, violations) = root_theorem_output();
    for v in &violations {
        println!("{v}");
    }
    report(
        7,
        "k-star real-root pattern for k in {2,4}",
        violations.is_empty(),
        &format!("{} violations", violations.len()),
        started,
    );
    assert!(violations.is_empty());
}

#[test]
fn criterion_08_sweep() {
    let started = Instant::now();
    let (csv, violations) = sweep_output();
    for v in &violations {
        println!("{v}");
    }
    report(
        8,
        "sweep k=4, n=5..44",
        violations.is_empty(),
        &format!(
            "{} rows of roots, {} violations",
            csv.lines().count() - 1,
            violations.len()
        ),
        started,
    );
    assert!(violations.is_empty());
}

#[test]
fn criterion_09_corona_sequence() {
    let started = Instant::now();
    let (_, violations) = corona_output();
    for v in &violations {
        println!("{v}");
    }
    report(
        9,
        "corona sequence roots invariant over depths 1-3",
        violations.is_empty(),
        &format!("{} violations", violations.len()),
        started,
    );
    assert!(violations.is_empty());
}

#[test]
fn criterion_10_determinism() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut differing = Vec::new();
    type Producer = fn() -> (String, Vec<String>);
    let producers: [(&str, Producer); 3] = [
        ("roots", root_theorem_output),
        ("sweep", sweep_output),
        ("corona", corona_output),
    ];
    for (name, produce) in producers {
        let paths: Vec<_> = (0..2)
            .map(|run| {
                let path = dir.path().join(format!("{name}-{run}.txt"));
                fs::write(&path, produce().0).unwrap();
                path
            })
            .collect();
        if fs::read(&paths[0]).unwrap() != fs::read(&paths[1]).unwrap() {
            differing.push(name);
        }
    }
    report(
        10,
        "repeat runs are byte-identical",
        differing.is_empty(),
        &format!("differing: {differing:?}"),
        started,
    );
    assert!(differing.is_empty());
}
