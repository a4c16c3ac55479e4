//! Element-update gadget: per-stage optimum decides containment.

use dyncover::exact::{exact_cover, DEFAULT_CAP};
use dyncover::induced::{InducedInstance, MapScratch};
use dyncover::workloads::{gen_element_update_gadget, ContainmentInstance, ContainmentParams, Planted};

fn main() -> dyncover::Result<()> {
    for planted in [Planted::Yes, Planted::No] {
        let params = ContainmentParams {
            n: 12,
            a_count: 6,
            b_count: 6,
            t: 3,
            planted,
        };
        let ci = ContainmentInstance::generate(params, 42)?;
        let g = gen_element_update_gadget(&ci)?;
        let mut scratch = MapScratch::for_system(&g.system);
        let answers: Vec<usize> = g
            .trace
            .query_states()
            .iter()
            .map(|act| {
                let inst = InducedInstance::build(&mut scratch, &g.system, act, None).unwrap();
                exact_cover(&inst, DEFAULT_CAP).optimum().unwrap()
            })
            .collect();
        println!(
            "{planted:?}: {} events, stage optima {answers:?}, threshold {} -> {}",
            g.trace.len(),
            g.threshold,
            if g.decide(&answers) { "YES" } else { "NO" }
        );
    }
    Ok(())
}
