//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime limit.
//!
//! Run with `cargo test -p opsys-core --test acceptance -- --nocapture` to see
//! the report.

use std::time::{Duration, Instant};

use opsys_core::constructions::{
    anticlique_lowdim, blocks2_clique, blocks_clique, diagonal_clique, gram, gramian_completion, graph_operator_system,
    rowcolumn_system, two_clique, SimpleGraph,
};
use opsys_core::instances::{blocks2_instance, blocks_instance, random_diagonal_system, TailMode};
use opsys_core::linalg::operator_norm;
use opsys_core::random::SeededRng;
use opsys_core::{
    certify, classical_ramsey_extract, diagonal_route, generalized_certify, random_system, CVector, Certificate, Kind,
    MatrixAlgebra, OperatorSystem, Projection, QuantumGraph, Result, Tolerance, C64,
};

/// Re-verification of every certificate issued by the suites.
#[derive(Default)]
struct Audit {
    checked: usize,
    failures: Vec<String>,
}

impl Audit {
    /// `recheck` recomputes a certificate for the same projection at a given
    /// tolerance pair.
    fn record(&mut self, label: &str, cert: &Certificate, recheck: impl Fn(&Tolerance) -> Result<Certificate>) {
        self.checked += 1;
        let tol = cert.tol;
        if cert.is_success() {
            match recheck(&tol) {
                Ok(again) if again.kind == cert.kind && again.compressed_dim == cert.compressed_dim => {}
                Ok(again) => self.failures.push(format!(
                    "{label}: {} (dim {}) rechecked as {} (dim {})",
                    cert.kind, cert.compressed_dim, again.kind, again.compressed_dim
                )),
                Err(e) => self.failures.push(format!("{label}: recheck failed: {e}")),
            }
        }
        let at = |rel: f64| recheck(&Tolerance { rank_rel: rel, cert_rel: rel });
        match (at(tol.rank_rel), at(tol.cert_rel)) {
            (Ok(a), Ok(b)) if a.compressed_dim == b.compressed_dim && a.kind == b.kind => {}
            (Ok(a), Ok(b)) => self.failures.push(format!(
                "{label}: dim {} at rank_rel but {} at cert_rel",
                a.compressed_dim, b.compressed_dim
            )),
            (Err(e), _) | (_, Err(e)) => self.failures.push(format!("{label}: split recheck failed: {e}")),
        }
    }

    fn plain(&mut self, label: &str, v: &OperatorSystem, cert: &Certificate) {
        let p = cert.projection.clone();
        self.record(label, cert, |t| certify(v, &p, p.rank(), t));
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn random_projection(rng: &mut SeededRng, n: usize, k: usize) -> Projection {
    Projection::from_orthonormal_frame(rng.frame(n, k), &Tolerance::default()).unwrap()
}

fn criterion_1(audit: &mut Audit) -> Outcome {
    let tol = Tolerance::default();
    let mut anticliques = 0;
    let mut total = 0;
    for n in 2..=8 {
        let v = opsys_core::constructions::diagonal_system(n).unwrap();
        for k in 2..=4.min(n) {
            let mut rng = SeededRng::derive(1, (n * 10 + k) as u64);
            for _ in 0..1000 {
                let p = random_projection(&mut rng, n, k);
                let cert = certify(&v, &p, k, &tol).unwrap();
                if cert.kind == Kind::Anticlique {
                    anticliques += 1;
                }
                audit.plain("c1", &v, &cert);
                total += 1;
            }
        }
    }
    outcome(anticliques == 0, format!("{total} projections against D_n, {anticliques} anticlique certificates"))
}

fn criterion_2(audit: &mut Audit) -> Outcome {
    let mut ok = true;
    let mut dims = Vec::new();
    for (k, n) in [(2, 5), (3, 11), (4, 19)] {
        match diagonal_clique(n, k) {
            Ok(dc) => {
                ok &= dc.certificate.kind == Kind::Clique && dc.certificate.compressed_dim == k * k;
                ok &= dc.certificate.tol.cert_rel <= 1e-11;
                dims.push(format!("k={k}: {}", dc.certificate.compressed_dim));
                audit.plain("c2", &dc.system, &dc.certificate);
            }
            Err(e) => {
                ok = false;
                dims.push(format!("k={k}: error {e}"));
            }
        }
    }
    outcome(ok, format!("compressed dims {}", dims.join(", ")))
}

fn criterion_3(audit: &mut Audit) -> Outcome {
    let tol = Tolerance::default();
    let mut max_dim = 0;
    let mut cliques = 0;
    for n in 4..=8 {
        let v = rowcolumn_system(n).unwrap();
        let mut rng = SeededRng::derive(3, n as u64);
        for _ in 0..500 {
            let p = random_projection(&mut rng, n, 3);
            let cert = certify(&v, &p, 3, &tol).unwrap();
            max_dim = max_dim.max(cert.compressed_dim);
            if cert.kind == Kind::Clique {
                cliques += 1;
            }
            audit.plain("c3", &v, &cert);
        }
    }
    outcome(max_dim <= 6 && cliques == 0, format!("2500 samples, max dim(PVP) = {max_dim}, {cliques} 3-cliques"))
}

fn criterion_4(audit: &mut Audit) -> Outcome {
    let tol = Tolerance::default();
    let mut found = 0;
    let mut failures = Vec::new();
    for s in 0..200u64 {
        let mut rng = SeededRng::derive(4, s);
        let n = 3 + rng.below(8);
        let d = 4 + rng.below(n * n - 3);
        let v = random_system(n, d, 4000 + s).unwrap();
        match two_clique(&v, s, &tol) {
            Ok(cert) if cert.kind == Kind::Clique && cert.projection.rank() == 2 => {
                found += 1;
                audit.plain("c4", &v, &cert);
            }
            Ok(cert) => failures.push(format!("n={n} d={d}: {}", cert.kind)),
            Err(e) => failures.push(format!("n={n} d={d}: {e}")),
        }
    }
    let mut detail = format!("{found}/200 certified 2-cliques");
    if !failures.is_empty() {
        detail.push_str(&format!(": {}", failures.join("; ")));
    }
    outcome(found == 200, detail)
}

fn criterion_5(audit: &mut Audit) -> Outcome {
    let tol = Tolerance::default();
    let mut neither = 0;
    for d in 1..=7 {
        for s in 0..500u64 {
            let seed = 5000 * d as u64 + s;
            let v = random_diagonal_system(7, d, seed).unwrap();
            match diagonal_route(&v, 2, seed, &tol) {
                Ok(cert) => {
                    if cert.kind == Kind::Neither {
                        neither += 1;
                    }
                    audit.plain("c5", &v, &cert);
                }
                Err(_) => neither += 1,
            }
        }
    }
    outcome(neither == 0, format!("3500 systems in D_7, {neither} without a verdict"))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut deficient = 0;
    for s in 0..1000u64 {
        let mut rng = SeededRng::derive(6, s);
        let r = 1 + rng.below(8);
        let dim = 1 + rng.below(8);
        let q = if s % 2 == 0 { 1 + rng.below(r.min(dim)) } else { r.min(dim) };
        if q < r {
            deficient += 1;
        }
        let gens: Vec<CVector> = (0..q).map(|_| rng.gaussian_vector(dim)).collect();
        let vs: Vec<CVector> = (0..r)
            .map(|_| {
                let mut v = CVector::zeros(dim);
                for g in &gens {
                    v.axpy(rng.complex_normal(), g);
                }
                v
            })
            .collect();
        let norm = operator_norm(&gram(&vs));
        let ws = gramian_completion(&vs).unwrap();
        for i in 0..r {
            for j in 0..r {
                let entry = vs[j].inner(&vs[i]) + ws[j].inner(&ws[i]);
                let target = if i == j { C64::new(norm, 0.0) } else { C64::new(0.0, 0.0) };
                worst = worst.max((entry - target).norm() / norm);
            }
        }
    }
    outcome(worst <= 1e-9, format!("1000 instances ({deficient} rank-deficient), worst relative error {worst:.2e}"))
}

fn criterion_7(audit: &mut Audit) -> Outcome {
    let tol = Tolerance::default();
    let mut report = Vec::new();
    let mut ok = true;
    for k in [2, 3] {
        let mut found = 0;
        for s in 0..100u64 {
            let input = blocks_instance(k, 7000 + s);
            let v = OperatorSystem::from_span(&input.matrices, input.n(), &tol).unwrap();
            if let Ok(cert) = blocks_clique(&input, s, &tol) {
                if cert.kind == Kind::Clique {
                    found += 1;
                }
                audit.plain("c7", &v, &cert);
            }
        }
        ok &= found >= 95;
        report.push(format!("blocks k={k} n={}: {found}/100", k * k + k - 1));
    }
    let mut found = 0;
    for s in 0..100u64 {
        let mode = if s % 2 == 0 { TailMode::Generic } else { TailMode::LowRank };
        let (v, chain) = blocks2_instance(2, mode, 7500 + s);
        if let Ok(cert) = blocks2_clique(&v, &chain, 2, s, &tol) {
            if cert.kind == Kind::Clique {
                found += 1;
            }
            audit.plain("c7", &v, &cert);
        }
    }
    ok &= found >= 95;
    report.push(format!("chain k=2 n=25: {found}/100"));
    outcome(ok, report.join(", "))
}

fn criterion_8(audit: &mut Audit) -> Outcome {
    let tol = Tolerance::default();
    let mut report = Vec::new();
    let mut ok = true;
    for (n, k) in [(5, 2), (7, 2), (9, 3)] {
        let bound = (n - k) / (k - 1);
        let mut found = 0;
        for s in 0..100u64 {
            let d = 1 + SeededRng::derive(8, s).below(bound);
            let v = random_system(n, d, 8000 + 100 * n as u64 + s).unwrap();
            if let Ok(cert) = anticlique_lowdim(&v, k, s, &tol) {
                if cert.kind == Kind::Anticlique {
                    found += 1;
                }
                audit.plain("c8", &v, &cert);
            }
        }
        ok &= found == 100;
        report.push(format!("(n={n}, k={k}): {found}/100"));
    }
    outcome(ok, report.join(", "))
}

fn criterion_9(audit: &mut Audit) -> Outcome {
    let tol = Tolerance::default();
    let mut mismatches = 0;
    let mut subsets = 0;
    for s in 0..100u64 {
        let mut rng = SeededRng::derive(9, s);
        let n = 2 + rng.below(9);
        let g = SimpleGraph::from_mask(n, rng.next_u64());
        let qg = QuantumGraph::new(MatrixAlgebra::diagonal(n).unwrap(), graph_operator_system(&g).unwrap(), &tol)
            .unwrap();
        for _ in 0..30 {
            let set: Vec<usize> = (0..n).filter(|_| rng.uniform() < 0.5).collect();
            if set.len() < 2 {
                continue;
            }
            subsets += 1;
            let pairs: Vec<(usize, usize)> = set
                .iter()
                .flat_map(|&a| set.iter().filter(move |&&b| b > a).map(move |&b| (a + 1, b + 1)))
                .collect();
            let clique = pairs.iter().all(|&(a, b)| g.has_edge(a, b));
            let independent = pairs.iter().all(|&(a, b)| !g.has_edge(a, b));
            let p = Projection::coordinate(n, &set).unwrap();
            let cert = generalized_certify(&qg, &p, set.len(), &tol).unwrap();
            if (cert.kind == Kind::Clique) != clique || (cert.kind == Kind::Anticlique) != independent {
                mismatches += 1;
            }
            audit.record("c9", &cert, |t| generalized_certify(&qg, &p, p.rank(), t));
        }
    }
    let mut extract_failures = 0;
    for mask in 0..(1u64 << 15) {
        let g = SimpleGraph::from_mask(6, mask);
        match classical_ramsey_extract(&g, 3) {
            Some(w) => {
                let want = w.kind == Kind::Clique;
                let valid = w.vertices.len() == 3
                    && (0..3).all(|i| (i + 1..3).all(|j| g.has_edge(w.vertices[i], w.vertices[j]) == want));
                if !valid {
                    extract_failures += 1;
                }
            }
            None => extract_failures += 1,
        }
    }
    let c5 = SimpleGraph::cycle(5);
    let brute_c5_free = (1..=5).all(|a| {
        (a + 1..=5).all(|b| {
            (b + 1..=5).all(|c| {
                let e = [c5.has_edge(a, b), c5.has_edge(a, c), c5.has_edge(b, c)];
                e.iter().any(|&x| x) && !e.iter().all(|&x| x)
            })
        })
    });
    let c5_fails = classical_ramsey_extract(&c5, 3).is_none() && brute_c5_free;
    outcome(
        mismatches == 0 && extract_failures == 0 && c5_fails,
        format!(
            "{subsets} vertex subsets, {mismatches} mismatches; 32768 six-vertex graphs, {extract_failures} extraction \
             failures; C5 has no 3-clique or independent triple: {c5_fails}"
        ),
    )
}

#[test]
fn acceptance_criteria() {
    type Suite = Box<dyn Fn(&mut Audit) -> Outcome>;
    let suites: Vec<(usize, u64, Suite)> = vec![
        (1, 10, Box::new(criterion_1)),
        (2, 5, Box::new(criterion_2)),
        (3, 10, Box::new(criterion_3)),
        (4, 60, Box::new(criterion_4)),
        (5, 30, Box::new(criterion_5)),
        (6, 5, Box::new(|_: &mut Audit| criterion_6())),
        (7, 120, Box::new(criterion_7)),
        (8, 60, Box::new(criterion_8)),
        (9, 120, Box::new(criterion_9)),
    ];
    let mut audit = Audit::default();
    let mut all = true;
    let mut lines = Vec::new();
    for (id, limit, run) in suites {
        let start = Instant::now();
        let out = run(&mut audit);
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = out.passed && in_time;
        all &= pass;
        lines.push(format!(
            "criterion {id:>2}: {} ({:.2} s, limit {limit} s) {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        ));
        println!("{}", lines.last().unwrap());
    }
    let sound = audit.failures.is_empty();
    all &= sound;
    println!(
        "criterion 10: {} {} certificates re-verified at both tolerances, {} discrepancies",
        if sound { "PASS" } else { "FAIL" },
        audit.checked,
        audit.failures.len()
    );
    for f in audit.failures.iter().take(20) {
        println!("    {f}");
    }
    assert!(all, "acceptance criteria failed");
}
