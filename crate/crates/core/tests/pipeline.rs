use endv_core::coend::{compute_endv, density_report, verify_coend};
use endv_core::fincat::{check_e1_e2, validate_category, validate_generator_data, validate_u};
use endv_core::instances::{bundled, BUNDLED_NAMES};
use endv_core::vncore::{build_core, complete_with_unit, run_checks, CheckOptions};

#[test]
fn bundled_instances_pass_everything() {
    for name in BUNDLED_NAMES {
        let t = std::time::Instant::now();
        let inst = bundled(name).unwrap();
        let p = &inst.presentation;
        let mut report = validate_category(p);
        report.extend(validate_u(p, &inst.functor));
        report.extend(validate_generator_data(p, &inst.functor, &inst.generators));
        report.extend(density_report(&inst));
        report.extend(check_e1_e2(inst.field(), 3));
        let e = compute_endv(&inst).unwrap();
        report.extend(verify_coend(&inst, &e));
        let core = build_core(&inst, &e).unwrap();
        report.extend(run_checks(&core, CheckOptions::all()));
        let unital = complete_with_unit(&core).unwrap();
        report.extend(run_checks(&unital, CheckOptions::all()));
        eprintln!("{name}: dim {} in {:?}\n{report}", e.dim(), t.elapsed());
        assert!(report.passed(), "{name}\n{report}");
    }
}
