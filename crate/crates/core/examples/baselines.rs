//! Static covers against the exact optimum.

use dyncover::exact::{exact_cover, DEFAULT_CAP};
use dyncover::induced::InducedInstance;
use dyncover::workloads::gen_random_system;
use dyncover::{deterministic_cover, greedy_cover};

fn main() -> dyncover::Result<()> {
    println!("seed  n   m  f  opt  pivot-f  greedy");
    for seed in 0..8 {
        let system = gen_random_system(16, 14, 3, seed)?;
        let inst = InducedInstance::whole(&system);
        let opt = exact_cover(&inst, DEFAULT_CAP).optimum().expect("small instance");
        let det = deterministic_cover(&inst);
        let gr = greedy_cover(&inst);
        println!(
            "{seed:>4} {:>2} {:>3} {:>2} {opt:>4} {:>8} {:>7}",
            system.n(),
            system.m(),
            system.f(),
            det.cover.len(),
            gr.cover.len()
        );
    }
    Ok(())
}
