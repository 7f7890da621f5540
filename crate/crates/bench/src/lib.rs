//! Fixtures shared by the benchmarks.

use endv_core::coend::{compute_endv, CoendSpace};
use endv_core::instances::bundled;
use endv_core::vncore::build_core;
use endv_core::{Instance, VnCore};

/// A bundled instance with its coend and core already built.
pub fn prepared(name: &str) -> (Instance, CoendSpace, VnCore) {
    let inst = bundled(name).unwrap_or_else(|| panic!("unknown bundled instance {name}"));
    let e = compute_endv(&inst).expect("bundled coend builds");
    let core = build_core(&inst, &e).expect("bundled core builds");
    (inst, e, core)
}
