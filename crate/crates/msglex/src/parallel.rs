//! Rayon-backed sweeps. Output is identical to the sequential path in
//! `msglex_core::sweep`.

use msglex_core::{MeasureKind, MeasureSpec, SweepContext, SweepError, SweepResult};
use rayon::prelude::*;

pub fn sweep_parallel(ctx: &SweepContext, kind: MeasureKind, fallout_cap: f64) -> Result<SweepResult, SweepError> {
    let rows = ctx
        .thresholds(kind)
        .into_par_iter()
        .map(|threshold| ctx.row(MeasureSpec { kind, threshold }))
        .collect();
    SweepResult::from_rows(kind, rows, fallout_cap)
}

/// All four measures, in `MeasureKind::ALL` order.
pub fn sweep_all_parallel(ctx: &SweepContext, fallout_cap: f64) -> Result<Vec<SweepResult>, SweepError> {
    MeasureKind::ALL
        .par_iter()
        .map(|&kind| sweep_parallel(ctx, kind, fallout_cap))
        .collect()
}
