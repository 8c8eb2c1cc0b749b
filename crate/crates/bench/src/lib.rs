//! Input generators shared by the benchmarks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcat_core::base::QElement;
use vcat_core::{builtin, free_category, Builtin, FinSet, Quantale, VCategory, VGraph, VMat};

pub fn boolean() -> Arc<Quantale> {
    Arc::new(builtin(Builtin::Boolean))
}

pub fn tropical(n: u32) -> Arc<Quantale> {
    Arc::new(builtin(Builtin::Tropical(n)))
}

/// A graph on `n` vertices where each entry is non-bottom with probability `density`.
pub fn random_graph(q: &Arc<Quantale>, n: usize, density: f64, seed: u64) -> VGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = FinSet::indexed("x", n);
    let entries = (0..n * n)
        .map(|_| {
            if rng.gen_bool(density) {
                QElement(rng.gen_range(0..q.size()))
            } else {
                q.bottom()
            }
        })
        .collect();
    VGraph::new(VMat::new(q.clone(), x.clone(), x, entries).expect("square")).expect("graph")
}

pub fn random_category(q: &Arc<Quantale>, n: usize, seed: u64) -> VCategory {
    free_category(&random_graph(q, n, 0.4, seed)).value
}
