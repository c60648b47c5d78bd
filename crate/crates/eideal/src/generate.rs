//! Reproducible corpora of random Cohen–Macaulay bipartite graphs.

use std::path::{Path, PathBuf};

use eideal_core::cm::random_cm_graph;
use eideal_core::graph::Graph;

use crate::format::{write_graph_file, FormatError};

/// Seed of the `index`-th graph of a corpus generated from `seed`.
pub fn corpus_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(index as u64)
}

pub fn corpus(pairs: usize, density: f64, seed: u64, count: usize) -> Vec<Graph> {
    (0..count)
        .map(|k| random_cm_graph(pairs, density, corpus_seed(seed, k)))
        .collect()
}

pub fn file_name(pairs: usize, seed: u64, index: usize) -> String {
    format!("cm_{pairs}_{seed}_{index}.graph")
}

/// Writes `count` graphs into `dir` and returns their paths.
pub fn generate_corpus(
    pairs: usize,
    density: f64,
    seed: u64,
    count: usize,
    dir: &Path,
) -> Result<Vec<PathBuf>, FormatError> {
    std::fs::create_dir_all(dir).map_err(|source| FormatError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    corpus(pairs, density, seed, count)
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let path = dir.join(file_name(pairs, seed, k));
            write_graph_file(&path, g)?;
            Ok(path)
        })
        .collect()
}
