//! Insert and delete elements; print who each element is accounted to.

use dyncover::{FullyDynamicSolver, SetSystem};

fn show(solver: &FullyDynamicSolver) {
    for e in solver.active_elements() {
        let (rec, extra) = solver.accounted_to(e).expect("active elements are accounted");
        let kind = if extra { "extra" } else { "original" };
        println!("  {e}: {kind} of pivot {} (level {})", rec.pivot, rec.level);
    }
    println!("  cover {:?}", solver.cover());
}

fn main() -> dyncover::Result<()> {
    let system = SetSystem::parse("6 4\n3 0 1 2\n2 2 3\n3 3 4 5\n2 0 5\n")?;
    let mut solver = FullyDynamicSolver::new(&system, 0.5, 3)?;

    for e in [0, 1, 4] {
        let r = solver.insert(e)?;
        println!("insert {e}: new pivot = {}", r.new_pivot);
    }
    show(&solver);

    for e in [2, 3, 5] {
        solver.insert(e)?;
    }
    println!("all active:");
    show(&solver);

    for e in [0, 4] {
        let r = solver.delete(e)?;
        println!("delete {e}: {} phase(s)", r.phases.len());
    }
    show(&solver);
    solver.audit().expect("invariants hold");
    Ok(())
}
