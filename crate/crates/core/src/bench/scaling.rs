//! Work sweeps over doubling universe sizes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::workloads::{gen_deletion_trace, gen_random_system, DeletionOrder};

use super::run::{run, Algo, RunConfig, RunError};

/// Spread of per-deletion cost across the sweep above which growth is
/// flagged.
pub const GROWTH_FLAG: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSpec {
    pub ns: Vec<usize>,
    pub f: usize,
    pub epsilon: f64,
    pub seeds: Vec<u64>,
    /// Number of sets as a multiple of `n`.
    pub sets_per_element: f64,
    pub adversarial: bool,
}

impl ScalingSpec {
    pub fn doubling(from: usize, steps: usize, f: usize, epsilon: f64, seeds: u64) -> Self {
        ScalingSpec {
            ns: (0..steps).map(|i| from << i).collect(),
            f,
            epsilon,
            seeds: (0..seeds).collect(),
            sets_per_element: 1.0,
            adversarial: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub deletions: usize,
    /// Initial cover plus every deletion.
    pub touches: u64,
    pub per_deletion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub n: usize,
    pub mean_per_deletion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub spec: ScalingSpec,
    pub rows: Vec<ScalingRow>,
    pub points: Vec<ScalingPoint>,
    /// Largest over smallest mean per-deletion cost.
    pub spread: f64,
    /// Least-squares slope of log(mean per-deletion cost) against log n.
    pub exponent: f64,
    /// `spread ≥ GROWTH_FLAG`.
    pub growth_flagged: bool,
}

/// Runs the decremental solver on full random-deletion traces over random
/// systems of frequency `≤ f`, one independent run per `(n, seed)` pair.
pub fn bench_scaling(spec: &ScalingSpec) -> Result<ScalingReport> {
    if spec.ns.is_empty() || spec.seeds.is_empty() {
        return Err(Error::Parameter("empty sweep".into()));
    }
    let jobs: Vec<(usize, u64)> = spec
        .ns
        .iter()
        .flat_map(|&n| spec.seeds.iter().map(move |&s| (n, s)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(n, seed)| {
            let m = ((n as f64 * spec.sets_per_element).round() as usize).max(1);
            let system = gen_random_system(n, m, spec.f, seed)?;
            let order = if spec.adversarial {
                DeletionOrder::PivotAdversarial
            } else {
                DeletionOrder::Random
            };
            let trace = gen_deletion_trace(&system, order, seed)?;
            let cfg = RunConfig::new(Algo::Decremental, spec.epsilon, seed);
            let metrics = run(&cfg, &system, &trace).map_err(|e| match e {
                RunError::Input(e) => e,
                RunError::Violation(c) => Error::contract(c.dump()),
            })?;
            let touches = metrics.init_touches + metrics.touches_total;
            Ok(ScalingRow {
                n,
                m,
                seed,
                deletions: n,
                touches,
                per_deletion: touches as f64 / n.max(1) as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<ScalingPoint> = spec
        .ns
        .iter()
        .map(|&n| {
            let sel: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.per_deletion).collect();
            ScalingPoint {
                n,
                mean_per_deletion: sel.iter().sum::<f64>() / sel.len() as f64,
            }
        })
        .collect();
    let means = points.iter().map(|p| p.mean_per_deletion);
    let max = means.clone().fold(f64::MIN, f64::max);
    let min = means.fold(f64::MAX, f64::min);
    let spread = if min > 0.0 { max / min } else { f64::INFINITY };
    Ok(ScalingReport {
        spec: spec.clone(),
        exponent: log_slope(&points),
        growth_flagged: spread >= GROWTH_FLAG,
        spread,
        rows,
        points,
    })
}

fn log_slope(points: &[ScalingPoint]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.mean_per_deletion.max(f64::MIN_POSITIVE).ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}
