//! Delete every element of a random system and watch update phases fire.

use dyncover::workloads::gen_random_system;
use dyncover::DecrementalSolver;

fn main() -> dyncover::Result<()> {
    let system = gen_random_system(200, 120, 4, 7)?;
    let mut solver = DecrementalSolver::new(&system, 0.25, 1)?;
    println!(
        "initial cover: {} sets, {} pivots, touches {}",
        solver.cover_size(),
        solver.p_total(),
        solver.touches()
    );
    for e in 0..system.n() {
        let report = solver.delete(e)?;
        for ph in &report.phases {
            println!(
                "delete {e:>3}: phase at level {} rebuilt |X'| = {} with {} new pivots",
                ph.level, ph.x_prime, ph.new_pivots
            );
        }
        if e % 50 == 49 {
            println!(
                "after {} deletions: cover {} sets, pivots {} ({} deleted)",
                e + 1,
                solver.cover_size(),
                solver.p_total(),
                solver.d_total()
            );
        }
    }
    println!("total touches {}", solver.touches());
    Ok(())
}
