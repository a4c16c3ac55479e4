//! Set-update gadget: k copies of the universe amplify the gap.

use dyncover::workloads::{gen_set_update_gadget, ContainmentInstance, ContainmentParams, Planted};

fn main() -> dyncover::Result<()> {
    for planted in [Planted::Yes, Planted::No] {
        let params = ContainmentParams {
            n: 7,
            a_count: 6,
            b_count: 4,
            t: 3,
            planted,
        };
        let ci = ContainmentInstance::generate(params, 8)?;
        let g = gen_set_update_gadget(&ci, 16)?;
        let answers = g
            .trace
            .query_states()
            .iter()
            .map(|act| g.stage_optimum(act).map(|o| o.expect("feasible")))
            .collect::<dyncover::Result<Vec<_>>>()?;
        println!(
            "{planted:?}: {} elements, {} sets; optima {answers:?}; YES if ≤ {}, NO floor {} -> {}",
            g.system.n(),
            g.system.m(),
            g.yes_threshold,
            g.no_floor,
            if g.decide(&answers) { "YES" } else { "NO" }
        );
    }
    Ok(())
}
