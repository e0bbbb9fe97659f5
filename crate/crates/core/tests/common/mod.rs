#![allow(dead_code)]

use std::path::{Path, PathBuf};

use gmanvol::graph::{self, GraphManifold};
use gmanvol::sample::{random_graph, RandomGraphSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_path(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

pub fn valid_corpus_files() -> Vec<PathBuf> {
    json_files(&corpus_dir().join("valid"))
}

pub fn invalid_corpus_files() -> Vec<PathBuf> {
    json_files(&corpus_dir().join("invalid"))
}

pub fn load(name: &str) -> GraphManifold {
    graph::parse_graph(&std::fs::read(corpus_path(name)).unwrap()).unwrap()
}

pub fn valid_corpus() -> Vec<(String, GraphManifold)> {
    valid_corpus_files()
        .into_iter()
        .map(|p| {
            let gm = graph::parse_graph(&std::fs::read(&p).unwrap()).unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), gm)
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graphs whose pieces all have between 2 and `q - 1` boundary tori, so the
/// `q`-characteristic cover applies.
pub fn characteristic_corpus(q: u64, count: usize, seed: u64) -> Vec<GraphManifold> {
    let spec = RandomGraphSpec {
        pieces: 2..=5,
        genus: 2..=4,
        min_boundary: 2,
        max_boundary: (q - 1) as usize,
        extra_edges: 3,
        pm_j_only: false,
    };
    let mut rng = rng(seed);
    (0..count).map(|_| random_graph(&mut rng, &spec)).collect()
}

pub fn mixed_corpus(count: usize, seed: u64) -> Vec<GraphManifold> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let spec = RandomGraphSpec { pm_j_only: i % 3 == 0, ..RandomGraphSpec::default() };
            random_graph(&mut rng, &spec)
        })
        .collect()
}
