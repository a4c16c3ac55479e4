//! Replay a mixed trace with per-event audits and the exact oracle.

use dyncover::bench::{run, Algo, RunConfig};
use dyncover::workloads::{gen_mixed_trace, gen_random_system};

fn main() -> dyncover::Result<()> {
    let system = gen_random_system(14, 18, 4, 3)?;
    let trace = gen_mixed_trace(&system, 42, 3)?;
    for algo in [Algo::FullyDynamic, Algo::RecomputeF, Algo::RecomputeGreedy] {
        let cfg = RunConfig::new(algo, 0.25, 5).checked();
        match run(&cfg, &system, &trace) {
            Ok(m) => {
                let worst = m.queries.iter().filter_map(|q| q.ratio).fold(0.0, f64::max);
                println!(
                    "{algo}: {} events, {} touches, {} phases, worst ratio {worst:.2}",
                    m.events,
                    m.touches_total,
                    m.phases.len()
                );
            }
            Err(e) => println!("{algo}: {e}"),
        }
    }
    let m = run(&RunConfig::new(Algo::FullyDynamic, 0.25, 5), &system, &trace.prefix(6)).unwrap();
    print!("{}", m.to_json());
    Ok(())
}
