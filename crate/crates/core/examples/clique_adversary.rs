//! Cliques plus an isolated edge: random versus pivot-first deletion orders.

use dyncover::bench::{run, Algo, RunConfig};
use dyncover::workloads::{gen_clique_instance, gen_deletion_trace, DeletionOrder};

fn main() -> dyncover::Result<()> {
    let system = gen_clique_instance(5, 502)?;
    println!("{} elements, {} edges, f = {}", system.n(), system.m(), system.f());
    for order in [DeletionOrder::Random, DeletionOrder::PivotAdversarial] {
        let trace = gen_deletion_trace(&system, order, 1)?;
        let m = run(&RunConfig::new(Algo::Decremental, 0.5, 2), &system, &trace).expect("valid trace");
        let peak = m.queries.iter().map(|q| q.cover_size).max().unwrap_or(0);
        println!(
            "{order:?}: {} phases, {:.1} touches per deletion, peak cover {peak}",
            m.phases.len(),
            (m.init_touches + m.touches_total) as f64 / system.n() as f64
        );
    }
    Ok(())
}
