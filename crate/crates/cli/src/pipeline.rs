//! Lattice bounds end to end: tiling, template search, certificates and
//! residual censuses, with the worker budget applied.

use std::time::Instant;

use anyhow::{Context, Result};
use indcomplex_core::bounds::{lower_bound, residual_betti, tile_residual_census, tiled_upper_bound, BoundReport, HomologyMemo, ResidualClassTable};
use indcomplex_core::lattice::{LatticeKind, LatticeSpec, PeriodicLattice, TileShape, Tiling};
use indcomplex_core::rate::per_vertex_form;
use indcomplex_core::templates::{search_tile_templates, template_family, verify_templates, TemplatePair};
use rayon::prelude::*;

pub const DEFAULT_SEED: u64 = 0x1d_c0de;

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub cap_faces: usize,
    pub workers: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { cap_faces: indcomplex_core::DEFAULT_FACE_CAP, workers: 1 }
    }
}

impl Budget {
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
            .context("building the worker pool")?;
        Ok(pool.install(f))
    }
}

/// Matching size per tile: fixed at 8 for the Kagome hexagon, otherwise the
/// largest size admitting a template pair.
pub fn template_size(kind: LatticeKind) -> Option<usize> {
    match kind {
        LatticeKind::Kagome => Some(8),
        _ => None,
    }
}

pub struct TiledLattice {
    pub spec: LatticeSpec,
    pub lattice: PeriodicLattice,
    pub tiling: Tiling,
}

impl TiledLattice {
    pub fn new(spec: LatticeSpec) -> Result<Self> {
        let (lattice, tiling) = spec.tiling()?;
        Ok(Self { spec, lattice, tiling })
    }

    pub fn vertices(&self) -> usize {
        self.lattice.graph.n()
    }
}

/// Per-tile census with homology filled in, classes spread over the pool.
pub fn census(shape: &TileShape, budget: &Budget) -> Result<ResidualClassTable> {
    let mut table = tile_residual_census(shape)?;
    let cap = budget.cap_faces;
    let bettis = budget.install(|| {
        table
            .classes
            .par_iter()
            .map_init(HomologyMemo::new, |memo, c| residual_betti(&c.representative, memo, cap))
            .collect::<Vec<_>>()
    })?;
    for (c, b) in table.classes.iter_mut().zip(bettis) {
        c.betti = Some(b?);
    }
    Ok(table)
}

pub struct LowerResult {
    pub pair: TemplatePair,
    pub report: BoundReport,
    /// Per-vertex form such as `2^{1/36}`.
    pub form: String,
}

pub fn lower(t: &TiledLattice) -> Result<LowerResult> {
    let start = Instant::now();
    let pair = search_tile_templates(&t.tiling.shape, template_size(t.spec.kind))?;
    verify_templates(&t.lattice.graph, &t.tiling, &pair)?;
    let (family, labels) = template_family(&t.tiling, &pair)?;
    let mut report = lower_bound(&t.lattice.graph, &family, Some(&labels))?;
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    let form = per_vertex_form(&report.raw_factors, t.vertices() as u64);
    Ok(LowerResult { pair, report, form })
}

pub struct UpperResult {
    pub table: ResidualClassTable,
    pub report: BoundReport,
    pub form: String,
}

pub fn upper(t: &TiledLattice, budget: &Budget) -> Result<UpperResult> {
    let start = Instant::now();
    let table = census(&t.tiling.shape, budget)?;
    let mut report = tiled_upper_bound(&t.lattice.graph, &t.tiling, &table)?;
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    let form = per_vertex_form(&report.raw_factors, t.vertices() as u64);
    Ok(UpperResult { table, report, form })
}
