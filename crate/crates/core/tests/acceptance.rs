//! Acceptance suite: one pass/fail line per criterion, non-zero exit on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use gmanvol::classify::{self, PrimeManifoldDescription, Verdict};
use gmanvol::coverings::{self, CoveredGraph};
use gmanvol::graph::{self, BundlePiece, Edge, Endpoint, GluingMatrix, GraphManifold, Slope};
use gmanvol::seifert::{self, GeometryType, SeifertInvariants};
use gmanvol::volume::{self, Chosen, VolumeConfig};
use gmanvol::{Error, Rational};
use num_traits::Signed;
use rand::Rng;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(elapsed: Duration, limit: Duration) -> Check {
    if elapsed <= limit {
        Ok(format!("{:.3}s", elapsed.as_secs_f64()))
    } else {
        Err(format!("took {:.3}s, limit {:.3}s", elapsed.as_secs_f64(), limit.as_secs_f64()))
    }
}

fn circle_bundles() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for g in 1..=5i64 {
        for e in -20..=20i64 {
            let inv = SeifertInvariants::new(g, [(1, e)]).map_err(|e| e.to_string())?;
            let got = seifert::ehn_horizontal_foliation(&inv).map_err(|e| e.to_string())?;
            ensure!(got == (e.abs() <= 2 * g - 2), "genus {g}, e {e}: got {got}");
            count += 1;
        }
    }
    within(start.elapsed(), Duration::from_millis(100)).map(|t| format!("{count} bundles in {t}"))
}

fn chi(genus: i64, boundary: i64) -> i64 {
    2 - 2 * genus - boundary
}

/// Integer identities every cover must satisfy, recomputed from the
/// certificate and the covered graph without the library's verifier.
fn bookkeeping(cov: &CoveredGraph, base: &GraphManifold) -> std::result::Result<(), String> {
    let cert = &cov.certificate;
    let mut sums: BTreeMap<&str, u64> = BTreeMap::new();
    for p in &cov.manifold.pieces {
        let rec = cert.per_piece.get(&p.id).ok_or(format!("no record for {}", p.id))?;
        let down = base.piece(&rec.over).ok_or(format!("{} over unknown piece", p.id))?;
        ensure!(rec.genus_up == p.genus && rec.boundary_up == p.boundary_count, "{} record mismatch", p.id);
        ensure!(rec.degree == rec.horizontal_degree * rec.vertical_degree, "{} degree factorization", p.id);
        ensure!(
            chi(p.genus, p.boundary_count) == rec.horizontal_degree as i64 * chi(down.genus, down.boundary_count),
            "{} chi multiplicativity",
            p.id
        );
        *sums.entry(down.id.as_str()).or_default() += rec.degree;
    }
    for p in &base.pieces {
        ensure!(
            sums.get(p.id.as_str()) == Some(&cert.total_degree),
            "degree over {} is {:?}, total {}",
            p.id,
            sums.get(p.id.as_str()),
            cert.total_degree
        );
    }
    ensure!(
        cov.manifold.edges.len() as u64 * cert.torus_degree == base.edges.len() as u64 * cert.total_degree,
        "torus count"
    );
    ensure!(graph::validate(&cov.manifold).is_empty(), "covered graph fails validation");
    let report = coverings::verify_covering_certificate(cov, base);
    ensure!(report.is_empty(), "verifier: {report:?}");
    Ok(())
}

fn riemann_hurwitz() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(2);
    let mut count = 0;
    for q in [3u64, 5, 7] {
        for gm in common::characteristic_corpus(q, 20, q) {
            let cov = coverings::characteristic_cover(&gm, q).map_err(|e| e.to_string())?;
            bookkeeping(&cov, &gm).map_err(|e| format!("characteristic q={q}: {e}"))?;
            let center = gm.pieces[rng.gen_range(0..gm.pieces.len())].id.clone();
            let cov = coverings::genus_raising_cover(&gm, &center, q).map_err(|e| e.to_string())?;
            bookkeeping(&cov, &gm).map_err(|e| format!("genus-raising q={q} center {center}: {e}"))?;
            count += 2;
        }
    }
    within(start.elapsed(), Duration::from_secs(1)).map(|t| format!("{count} covers in {t}"))
}

fn framed_invariance() -> Check {
    let mut count = 0;
    for q in [3u64, 5, 7] {
        for gm in common::characteristic_corpus(q, 20, q) {
            let cov = coverings::characteristic_cover(&gm, q).map_err(|e| e.to_string())?;
            for p in &gm.pieces {
                let down = graph::framed_euler_number(&gm, &p.id).map_err(|e| e.to_string())?;
                let up = graph::framed_euler_number(&cov.manifold, &p.id).map_err(|e| e.to_string())?;
                ensure!(up == down, "q={q} piece {}: {down} downstairs, {up} upstairs", p.id);
                count += 1;
            }
        }
    }
    Ok(format!("{count} filled pieces agree"))
}

fn parallel_pm_j(genus: i64, r: usize, mixed: bool) -> GraphManifold {
    let pieces = ["A", "B"]
        .iter()
        .map(|id| BundlePiece { id: id.to_string(), genus, boundary_count: r as i64 })
        .collect();
    let edges = (0..r)
        .map(|i| {
            let m = if mixed && i % 2 == 1 { GluingMatrix::MINUS_J } else { GluingMatrix::J };
            Edge::new(Endpoint::new("A", i), Endpoint::new("B", i), m)
        })
        .collect();
    GraphManifold::new(pieces, edges).canonicalized()
}

fn case_two() -> Check {
    let config = VolumeConfig::default();
    for r in 1..=5usize {
        for genus in 2..=4 {
            for mixed in [false, true] {
                let gm = parallel_pm_j(genus, r, mixed);
                let (e1, e2, rr) = volume::case2_euler_pair(&gm, "A", "B").map_err(|e| e.to_string())?;
                let expect = Rational::from_integer(r as i64);
                ensure!(rr == r && e1.abs() == expect && e2.abs() == expect, "r={r} g={genus}: {e1}, {e2}");
                let cert = volume::case2_bound(&gm, &config).map_err(|e| e.to_string())?;
                ensure!(
                    cert.bound_pi2.coefficient() == Rational::from_integer(8 * r as i64),
                    "r={r} g={genus}: bound {}",
                    cert.bound_pi2
                );
                if r == 5 && genus == 2 {
                    let stage = cert.tower.first().ok_or("r=5 without a tower")?;
                    ensure!(stage.characteristic_level == 7, "tower prime {}", stage.characteristic_level);
                    let up = &stage.per_piece["A"];
                    ensure!(up.genus_up == 23, "covered genus {}", up.genus_up);
                }
            }
        }
    }
    Ok("r = 1..5, genus 2..4: |e| = r, bound 8r; r = 5 lifts at q = 7 to genus 23".into())
}

/// Re-applies the certificate's tower and checks the foliation criterion on
/// each filled piece at the top.
fn recheck_tower(gm: &GraphManifold, cert: &volume::VolumeCertificate) -> std::result::Result<(), String> {
    let mut stage = gm.clone();
    for level in cert.tower.iter().map(|c| c.characteristic_level) {
        stage = coverings::characteristic_cover(&stage, level).map_err(|e| e.to_string())?.manifold;
    }
    let mut by_piece: BTreeMap<&str, Vec<Slope>> = BTreeMap::new();
    for f in &cert.filling_slopes {
        by_piece.entry(f.piece.as_str()).or_default().push(f.slope);
    }
    for (piece, slopes) in by_piece {
        let filled = graph::filled_piece_invariants(&stage, piece, &slopes).map_err(|e| e.to_string())?;
        ensure!(seifert::ehn_horizontal_foliation(&filled).unwrap_or(false), "{piece}: {filled} fails");
    }
    Ok(())
}

fn case_one() -> Check {
    let config = VolumeConfig::default();
    let single = common::load("valid/edge-1110.json");
    let e = graph::absolute_euler_number(&single).map_err(|e| e.to_string())?;
    ensure!(e == Rational::from_integer(1), "|e| = {e}");
    let mut lines = Vec::new();
    for (name, expected) in [("valid/edge-1110.json", 4), ("valid/parallel-1110-x2.json", 8)] {
        let gm = common::load(name);
        let cert = volume::volume_lower_bound(&gm, &config).map_err(|e| format!("{name}: {e}"))?;
        ensure!(matches!(cert.chosen, Chosen::Piece { .. }), "{name}: wrong case");
        ensure!(
            cert.bound_pi2.coefficient() == Rational::from_integer(expected),
            "{name}: bound {}",
            cert.bound_pi2
        );
        recheck_tower(&gm, &cert).map_err(|e| format!("{name}: {e}"))?;
        lines.push(format!("{expected}"));
    }
    Ok(format!("|e| = 1, bounds {} pi^2, foliation holds at tower top", lines.join(" and ")))
}

fn positivity() -> Check {
    let config = VolumeConfig::default();
    let (mut certified, mut refused) = (0, 0);
    for (i, gm) in common::mixed_corpus(50, 6).iter().enumerate() {
        match volume::volume_lower_bound(gm, &config) {
            Ok(cert) => {
                ensure!(cert.bound_pi2.coefficient().is_positive(), "graph {i}: bound {}", cert.bound_pi2);
                recheck_tower(gm, &cert).map_err(|e| format!("graph {i}: {e}"))?;
                certified += 1;
            }
            Err(Error::PmJFormRequired | Error::BoundaryCountTooSmall { .. }) => refused += 1,
            Err(other) => return Err(format!("graph {i}: {other}")),
        }
    }
    Ok(format!("{certified} positive certificates, {refused} explicit refusals"))
}

fn classifier() -> Check {
    for geom in GeometryType::ALL {
        let expected = if geom == GeometryType::SL2tilde { Verdict::Finite } else { Verdict::Infinite };
        let got = classify::geometry_finiteness(geom).verdict;
        ensure!(got == expected, "{geom:?}: {got:?}");
    }
    for (name, gm) in common::valid_corpus() {
        let v = classify::mapping_degree_finiteness(&PrimeManifoldDescription::Graph { graph: gm })
            .map_err(|e| e.to_string())?;
        ensure!(v.verdict == Verdict::Finite, "{name}: {v:?}");
    }
    let v = classify::mapping_degree_finiteness(&PrimeManifoldDescription::TorusBundleCovered)
        .map_err(|e| e.to_string())?;
    ensure!(v.verdict == Verdict::Infinite, "torus bundle: {v:?}");
    Ok("six geometries, corpus graphs finite, torus bundles infinite".into())
}

fn round_trip() -> Check {
    let files = common::valid_corpus_files();
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let gm = graph::parse_graph(text.as_bytes()).map_err(|e| e.to_string())?;
        let out = graph::serialize_graph(&gm);
        ensure!(out == text.trim_end().as_bytes(), "{} does not round-trip", path.display());
    }
    let verbs: [&[&str]; 5] = [
        &["validate"],
        &["invariants"],
        &["volume-bound", "--pretty"],
        &["cover", "--mode", "characteristic", "--prime", "5"],
        &["classify"],
    ];
    for verb in verbs {
        let run = || {
            let mut argv = vec!["gmanvol".to_string()];
            argv.extend(verb.iter().map(|s| s.to_string()));
            argv.extend(files.iter().map(|p| p.display().to_string()));
            gmanvol::cli::run(argv)
        };
        let first = run();
        for _ in 0..3 {
            ensure!(run() == first, "{verb:?} output differs between runs");
        }
    }
    Ok(format!("{} corpus files, 5 verbs repeated byte-identically", files.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("circle bundles: foliation criterion matches Milnor-Wood", circle_bundles),
        ("covers: chi multiplicativity and degree bookkeeping", riemann_hurwitz),
        ("characteristic covers preserve framed Euler numbers", framed_invariance),
        ("zero Euler, +-J pairs: |e| = r and bound 8r", case_two),
        ("non-zero Euler worked instances: bounds 4 and 8", case_one),
        ("random graphs: positive bound or explicit refusal", positivity),
        ("classifier table", classifier),
        ("round trip and determinism", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
