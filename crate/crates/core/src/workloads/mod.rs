//! Instance and trace generators.

pub mod containment;
pub mod gadgets;
pub mod instances;
pub mod trace;
pub mod traces;

pub use containment::{ContainmentInstance, ContainmentParams, Planted};
pub use gadgets::{gen_element_update_gadget, gen_set_update_gadget, ElementGadget, SetGadget, Stage};
pub use instances::{gen_clique_instance, gen_random_system};
pub use trace::{Event, UpdateTrace};
pub use traces::{gen_deletion_trace, gen_mixed_trace, DeletionOrder, PROBE_EPSILON};
