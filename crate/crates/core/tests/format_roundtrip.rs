use endv_core::coend::compute_endv;
use endv_core::format::{parse_core, parse_instance, write_core, write_instance};
use endv_core::instances::{bundled, mutate_instance, Mutant, Mutation, BUNDLED_NAMES};
use endv_core::vncore::{build_core, run_checks, CheckOptions};

#[test]
fn instances_roundtrip() {
    for name in BUNDLED_NAMES {
        let inst = bundled(name).unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(back, inst, "{name}");
        assert_eq!(write_instance(&back), text, "{name}");
    }
}

#[test]
fn mutants_roundtrip() {
    let base = bundled("z2").unwrap();
    for m in [Mutation::BreakSplit, Mutation::CorruptComposition] {
        let Mutant::Instance(inst) = mutate_instance(&base, m).unwrap() else {
            panic!("{m} should give an instance");
        };
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }
}

#[test]
fn cores_roundtrip() {
    for name in ["z2", "s3"] {
        let inst = bundled(name).unwrap();
        let e = compute_endv(&inst).unwrap();
        let core = build_core(&inst, &e).unwrap();
        let report = run_checks(&core, CheckOptions::all());
        let text = write_core(&core, &[], Some(&report));
        let back = parse_core(&text).unwrap();
        assert_eq!(back.core, core);
        assert_eq!(back.checks.len(), report.outcomes.len());
        assert_eq!(write_core(&back.core, &[], Some(&report)), text);
    }
}

#[test]
fn truncated_instance_is_rejected() {
    let text = write_instance(&bundled("z2").unwrap());
    let lines: Vec<&str> = text.lines().collect();
    for keep in [1, lines.len() / 2, lines.len() - 1] {
        assert!(parse_instance(&lines[..keep].join("\n")).is_err());
    }
}
