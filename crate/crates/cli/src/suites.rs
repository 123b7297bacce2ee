//! Seeded random property suites. Cases are drawn sequentially from one
//! ChaCha stream and checked in parallel, so the outcome does not depend on
//! the worker count.

use std::time::Instant;

use anyhow::Result;
use indcomplex_core::bounds::{residual_betti, upper_bound, HomologyMemo};
use indcomplex_core::cross::validated_pairs;
use indcomplex_core::splitting::cofibre_over_matching;
use indcomplex_core::{betti_numbers, independence_complex, join_betti, Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::pipeline::Budget;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
}

impl SuiteOutcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed == self.cases
    }
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("ids in range")
}

pub fn random_forest(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(0.85) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    Graph::from_edges(n, &edges).expect("ids in range")
}

fn run<C: Sync>(
    name: &'static str,
    cases: Vec<C>,
    budget: &Budget,
    check: impl Fn(&C) -> Result<Option<String>> + Sync,
) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let results = budget.install(|| cases.par_iter().map(&check).collect::<Vec<_>>())?;
    let mut failures = Vec::new();
    let mut passed = 0;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(None) => passed += 1,
            Ok(Some(msg)) => failures.push(format!("case {i}: {msg}")),
            Err(e) => failures.push(format!("case {i}: error: {e}")),
        }
    }
    Ok(SuiteOutcome { name, cases: cases.len(), passed, failures, elapsed_ms: start.elapsed().as_millis() as u64 })
}

fn direct_total(g: &Graph, cap: usize) -> Result<u64> {
    Ok(betti_numbers(&independence_complex(g, cap)?)?.total())
}

/// `β̃(I(F)) ≤ 1` for random forests.
pub fn forests(seed: u64, count: usize, max_n: usize, budget: &Budget) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<Graph> = (0..count).map(|_| {
        let n = rng.gen_range(1..=max_n);
        random_forest(&mut rng, n)
    }).collect();
    let cap = budget.cap_faces;
    run("forests", cases, budget, |f| {
        let total = residual_betti(f, &mut HomologyMemo::new(), cap)?.total();
        Ok((!f.is_forest() || total > 1).then(|| format!("{} vertices, total Betti {total}", f.n())))
    })
}

/// `β̃(I(G)) ≤ B·|I(G[U])|` for random graphs and random separators.
pub fn filtration(seed: u64, count: usize, max_n: usize, budget: &Budget) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Graph, VertexSet)> = (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p = rng.gen_range(0.15..0.7);
            let g = random_graph(&mut rng, n, p);
            let u = VertexSet::from_ids(n, (0..n).filter(|_| rng.gen_bool(0.35))).expect("ids in range");
            (g, u)
        })
        .collect();
    let cap = budget.cap_faces;
    run("filtration", cases, budget, |(g, u)| {
        let total = direct_total(g, cap)?;
        let bound = upper_bound(g, u, cap)?;
        Ok((bound.raw_value() < total.into()).then(|| format!("total {total} exceeds bound {}", bound.symbolic())))
    })
}

/// Homology of a disjoint union against the join formula.
pub fn join(seed: u64, count: usize, max_part: usize, budget: &Budget) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Graph, Graph)> = (0..count)
        .map(|_| {
            let (a, b) = (rng.gen_range(1..=max_part), rng.gen_range(1..=max_part));
            let (pa, pb) = (rng.gen_range(0.3..0.7), rng.gen_range(0.3..0.7));
            (random_graph(&mut rng, a, pa), random_graph(&mut rng, b, pb))
        })
        .collect();
    let cap = budget.cap_faces;
    run("join", cases, budget, |(a, b)| {
        let direct = betti_numbers(&independence_complex(&a.disjoint_union(b), cap)?)?;
        let ba = betti_numbers(&independence_complex(a, cap)?)?;
        let bb = betti_numbers(&independence_complex(b, cap)?)?;
        let joined = join_betti(&ba, &bb);
        Ok((direct != joined).then(|| format!("direct {direct:?} vs join {joined:?}")))
    })
}

/// `β̃(I(G)) = 1 + β̃(I(C))` for the cofibre graph over a validated pair.
pub fn splitting(seed: u64, count: usize, max_n: usize, budget: &Budget) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    while cases.len() < count {
        let n = rng.gen_range(4..=max_n);
        let p = rng.gen_range(0.2..0.6);
        let g = random_graph(&mut rng, n, p);
        if let Some(pair) = validated_pairs(&g, 3).into_iter().next() {
            cases.push((g, pair));
        }
    }
    let cap = budget.cap_faces;
    run("splitting", cases, budget, |(g, pair)| {
        let before = direct_total(g, cap)?;
        let after = direct_total(&cofibre_over_matching(g, pair)?, cap)?;
        Ok((before != 1 + after).then(|| format!("β̃(G) = {before}, β̃(cofibre) = {after}")))
    })
}

/// `β̃(I(G)) ≤ 2^{2v/5}`.
pub fn absolute(seed: u64, count: usize, max_n: usize, budget: &Budget) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<Graph> = (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p = rng.gen_range(0.1..0.6);
            random_graph(&mut rng, n, p)
        })
        .collect();
    let cap = budget.cap_faces;
    run("absolute", cases, budget, |g| {
        let total = residual_betti(g, &mut HomologyMemo::new(), cap)?.total();
        // total ≤ 2^{2v/5}  ⇔  total^5 ≤ 2^{2v}
        let ok = (total as u128).checked_pow(5).is_some_and(|t| t <= 1u128 << (2 * g.n()));
        Ok((!ok).then(|| format!("{} vertices, total Betti {total}", g.n())))
    })
}
