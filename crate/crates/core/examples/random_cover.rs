//! One static Random Cover run and the pivots it picks.

use dyncover::induced::InducedInstance;
use dyncover::random_cover::random_cover;
use dyncover::workloads::gen_random_system;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dyncover::Result<()> {
    let system = gen_random_system(40, 8, 3, 11)?;
    let inst = InducedInstance::whole(&system);
    let run = random_cover(&inst, &mut ChaCha8Rng::seed_from_u64(5));
    for p in &run.pivots {
        println!(
            "pivot {:>2} from set {:>2}: level {} (sampled from {}), adds sets {:?}, covers {} elements",
            p.pivot,
            p.source.unwrap(),
            p.level,
            p.sampled_size,
            p.sets,
            p.orig.len()
        );
    }
    println!(
        "{} sets for {} pivots (f = {}), {} touches",
        run.cover.len(),
        run.pivots.len(),
        system.f(),
        run.touches
    );
    Ok(())
}
