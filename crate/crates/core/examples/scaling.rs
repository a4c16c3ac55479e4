//! Per-deletion work of the decremental solver as n doubles.

use dyncover::bench::{bench_scaling, ScalingSpec};

fn main() -> dyncover::Result<()> {
    for eps in [0.5, 0.25] {
        let report = bench_scaling(&ScalingSpec::doubling(512, 4, 5, eps, 4))?;
        println!("eps = {eps}");
        for p in &report.points {
            println!("  n = {:>5}: {:.1} touches per deletion", p.n, p.mean_per_deletion);
        }
        println!("  spread {:.2}, fitted exponent {:.3}", report.spread, report.exponent);
    }
    Ok(())
}
