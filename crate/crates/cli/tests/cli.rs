use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use endv_core::format::{parse_core, parse_instance};
use endv_core::instances::bundled;
use endv_core::vncore::build_core;
use tempfile::TempDir;

fn endv(args: &[&Path]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn endv_str(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn example_z2_matches_golden_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("z2.inst");
    let o = endv_str(&["example", "z2", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(golden("z2.inst")).unwrap()
    );
}

#[test]
fn golden_file_validates_and_builds() {
    let dir = TempDir::new().unwrap();
    let core = dir.path().join("z2.core");
    assert_eq!(
        endv(&[Path::new("validate"), &golden("z2.inst")])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        endv(&[Path::new("build"), &golden("z2.inst"), &core])
            .status
            .code(),
        Some(0)
    );
    let file = parse_core(&std::fs::read_to_string(&core).unwrap()).unwrap();
    assert_eq!(file.core.dim, 2);
    assert_eq!(file.cop_blocks.len(), 2);

    let o = endv_str(&[
        "check",
        core.to_str().unwrap(),
        "--antipodal",
        "--fusion",
        "--partial-inverse",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("INFO antipodal: antipodal = true"));

    let o = endv_str(&["check", core.to_str().unwrap(), "--complete-unit"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "E_DIM 3"));
}

#[test]
fn build_output_reparses_to_in_memory_core() {
    let dir = TempDir::new().unwrap();
    let inst_path = dir.path().join("s3.inst");
    let core_path = dir.path().join("s3.core");
    assert_eq!(
        endv_str(&["example", "s3", inst_path.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        endv(&[Path::new("build"), &inst_path, &core_path])
            .status
            .code(),
        Some(0)
    );
    let inst = parse_instance(&std::fs::read_to_string(&inst_path).unwrap()).unwrap();
    let e = endv_core::compute_endv(&inst).unwrap();
    let expected = build_core(&inst, &e).unwrap();
    let file = parse_core(&std::fs::read_to_string(&core_path).unwrap()).unwrap();
    assert_eq!(file.core, expected);
    assert_eq!(file.core.dim, 6);
}

#[test]
fn break_split_mutant_names_splitness() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.inst");
    let o = endv(&[
        Path::new("mutate"),
        &golden("z2.inst"),
        Path::new("BreakSplit"),
        &m,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = endv(&[Path::new("validate"), &m]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED validate_u: splitness"));
}

#[test]
fn zero_s_mutant_fails_at_vn_axiom() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.core");
    let o = endv(&[
        Path::new("mutate"),
        &golden("z2.inst"),
        Path::new("zeros"),
        &m,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = endv(&[Path::new("check"), &m]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED check: vn_axiom"));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(golden("z2.inst")).unwrap();
    let cut = dir.path().join("cut.inst");
    let lines: Vec<&str> = text.lines().collect();
    std::fs::write(&cut, lines[..lines.len() / 3].join("\n")).unwrap();
    assert_eq!(endv(&[Path::new("validate"), &cut]).status.code(), Some(2));
    assert_eq!(endv(&[Path::new("check"), &cut]).status.code(), Some(2));
    let missing = dir.path().join("missing");
    assert_eq!(
        endv(&[Path::new("validate"), &missing]).status.code(),
        Some(2)
    );
    assert_eq!(
        endv_str(&["example", "unknown", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(
        endv(&[
            Path::new("mutate"),
            &golden("z2.inst"),
            Path::new("Nope"),
            &missing
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn empty_generator_file_builds_zero_core() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("empty.inst");
    let core = dir.path().join("empty.core");
    std::fs::write(&inst, "[FIELD]\nQ\n[OBJECTS]\nX 0\n[HOMS]\nX X | x\nid X | 1\n[COMPOSITION]\nX X X 0 0 | 1\n[END]\n")
        .unwrap();
    let o = endv(&[Path::new("build"), &inst, &core]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let file = parse_core(&std::fs::read_to_string(&core).unwrap()).unwrap();
    assert_eq!(file.core.dim, 0);
}

#[test]
fn bundled_instances_survive_file_round_trip() {
    for name in endv_core::instances::BUNDLED_NAMES {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("x.inst");
        assert_eq!(
            endv_str(&["example", name, path.to_str().unwrap()])
                .status
                .code(),
            Some(0)
        );
        let back = parse_instance(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back, bundled(name).unwrap());
    }
}
