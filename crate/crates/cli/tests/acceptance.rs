//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use endv_cli::{
    cmd_build, cmd_check, cmd_example, cmd_mutate, cmd_validate, validate_instance, CheckFlags,
    Options, EXIT_FAIL, EXIT_PASS,
};
use endv_core::coend::{compute_endv, cop_general, cop_via, density_check, CoendSpace};
use endv_core::fincat::{check_e1_e2, validate_generator_data};
use endv_core::format::{parse_core, write_instance};
use endv_core::instances::{
    bundled, mutate_instance, rebased_resolution, regrouped_resolution, Mutant, Mutation,
    BUNDLED_NAMES,
};
use endv_core::vncore::{
    build_core, check_fusion_equation, complete_with_unit, run_checks, vn_composite, CheckOptions,
};
use endv_core::{Field, Instance, Matrix, Scalar, Status, VnCore};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core_of(name: &str) -> (Instance, CoendSpace, VnCore) {
    let inst = bundled(name).unwrap();
    let e = compute_endv(&inst).unwrap();
    let core = build_core(&inst, &e).unwrap();
    (inst, e, core)
}

/// Runs example → validate → build → check --all in `dir`; returns the
/// concatenated reports, the exit codes and the two file contents.
struct Run {
    codes: [i32; 4],
    reports: Vec<u8>,
    instance: Vec<u8>,
    core: Vec<u8>,
}

fn pipeline(name: &str, dir: &Path) -> Run {
    let inst = dir.join(format!("{name}.inst"));
    let core = dir.join(format!("{name}.core"));
    let opts = Options::default();
    let mut reports = Vec::new();
    let codes = [
        cmd_example(name, &inst, &mut reports).unwrap(),
        cmd_validate(&inst, &mut reports, opts).unwrap(),
        cmd_build(&inst, &core, &mut reports, opts).unwrap(),
        cmd_check(&core, CheckFlags::all(), &mut reports, opts).unwrap(),
    ];
    Run {
        codes,
        reports,
        instance: std::fs::read(&inst).unwrap_or_default(),
        core: std::fs::read(&core).unwrap_or_default(),
    }
}

fn criterion_1() -> Outcome {
    let dir = TempDir::new().unwrap();
    let mut notes = Vec::new();
    for name in BUNDLED_NAMES {
        let t = Instant::now();
        let run = pipeline(name, dir.path());
        let elapsed = t.elapsed();
        ensure(run.codes == [EXIT_PASS; 4], || {
            format!(
                "{name}: exit codes {:?}\n{}",
                run.codes,
                String::from_utf8_lossy(&run.reports)
            )
        })?;
        ensure(elapsed < Duration::from_secs(5), || {
            format!("{name}: {elapsed:?} ≥ 5 s")
        })?;
        let core = parse_core(&String::from_utf8(run.core).unwrap())
            .unwrap()
            .core;
        ensure(
            vn_composite(&core) == Matrix::identity(core.field, core.dim),
            || format!("{name}: VN composite is not the identity"),
        )?;
        notes.push(format!("{name} {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    support::oracle::self_test();
    let mut notes = Vec::new();
    for (name, expected) in [("z2", 2), ("z3-f7", 3), ("s3", 6)] {
        let inst = bundled(name).unwrap();
        let oracle = support::oracle::coend_dim(&inst);
        let engine = compute_endv(&inst).unwrap().dim();
        ensure(oracle == expected && engine == expected, || {
            format!("{name}: expected {expected}, oracle {oracle}, engine {engine}")
        })?;
        notes.push(format!("{name}={engine}"));
    }
    Ok(notes.join(", "))
}

fn criterion_3() -> Outcome {
    let asserted = [
        "mu_associativity",
        "delta_coassociativity",
        "delta_multiplicativity",
        "vn_axiom",
        "fusion_equation",
        "partial_inverse_vwv",
    ];
    for name in BUNDLED_NAMES {
        let (_, _, core) = core_of(name);
        let report = run_checks(&core, CheckOptions::all());
        for check in asserted {
            ensure(report.status_of(check) == Some(Status::Pass), || {
                format!("{name}: {check} is {:?}\n{report}", report.status_of(check))
            })?;
        }
    }
    let (_, _, s3) = core_of("s3");
    let t = Instant::now();
    let report = check_fusion_equation(&s3);
    let elapsed = t.elapsed();
    ensure(
        report.status_of("fusion_equation") == Some(Status::Pass),
        || "s3 fusion".into(),
    )?;
    ensure(elapsed < Duration::from_secs(10), || {
        format!("s3 fusion took {elapsed:?}")
    })?;
    Ok(format!(
        "s3 fusion on dim {} in {:.2}s",
        s3.dim.pow(3),
        elapsed.as_secs_f64()
    ))
}

fn criterion_4() -> Outcome {
    for name in BUNDLED_NAMES {
        let (_, _, core) = core_of(name);
        let before = run_checks(&core, CheckOptions::all());
        let done = complete_with_unit(&core).map_err(|e| format!("{name}: {e}"))?;
        let after = run_checks(&done, CheckOptions::all());
        for o in before.outcomes.iter().filter(|o| o.status == Status::Pass) {
            ensure(after.status_of(&o.check) == Some(Status::Pass), || {
                format!("{name}: {} lost after completion", o.check)
            })?;
        }
        for check in ["unitality", "delta_unit", "s_unit"] {
            ensure(after.status_of(check) == Some(Status::Pass), || {
                format!("{name}: {check}")
            })?;
        }
        // direct evaluation of the unit laws
        let f = done.field;
        let one = done.unit.clone().ok_or("no unit")?;
        let one_m = Matrix::column(f, one.clone());
        ensure(done.s.apply(&one) == one, || format!("{name}: S(1) ≠ 1"))?;
        ensure(
            Matrix::column(f, done.delta.apply(&one)) == one_m.kron(&one_m),
            || format!("{name}: δ(1) ≠ 1⊗1"),
        )?;
        for k in 0..done.dim {
            let mut x = vec![f.zero(); done.dim];
            x[k] = f.one();
            let xm = Matrix::column(f, x.clone());
            ensure(
                done.mu.mul(&one_m.kron(&xm)).col(0) == x
                    && done.mu.mul(&xm.kron(&one_m)).col(0) == x,
                || format!("{name}: unit fails on e{k}"),
            )?;
        }
        ensure(done.dim == core.dim + 1, || {
            format!("{name}: completed dim {}", done.dim)
        })?;
    }
    Ok("all bundled cores".into())
}

fn base_for(m: Mutation) -> &'static str {
    match m {
        Mutation::BreakSplit | Mutation::CorruptComposition => "z2",
        Mutation::BreakUNaturality | Mutation::ScaleCoupling => "promonoidal-toy",
        Mutation::ZeroS => "s3",
    }
}

/// Runs the CLI on a mutant file; returns the exit code of the first failing command and its report.
fn run_mutant(inst: &Path, mutant: &Path, m: Mutation, dir: &Path) -> (i32, String) {
    let opts = Options::default();
    let mut out = Vec::new();
    assert_eq!(
        cmd_mutate(inst, m.name(), mutant, &mut out).unwrap(),
        EXIT_PASS
    );
    out.clear();
    let code = if m == Mutation::ZeroS {
        cmd_check(mutant, CheckFlags::all(), &mut out, opts).unwrap()
    } else {
        let core = dir.join("mutant.core");
        let mut code = cmd_validate(mutant, &mut out, opts).unwrap();
        if code == EXIT_PASS {
            code = cmd_build(mutant, &core, &mut out, opts).unwrap();
        }
        if code == EXIT_PASS {
            code = cmd_check(&core, CheckFlags::all(), &mut out, opts).unwrap();
        }
        code
    };
    (code, String::from_utf8(out).unwrap())
}

fn criterion_5() -> Outcome {
    let dir = TempDir::new().unwrap();
    let mut notes = Vec::new();
    for m in Mutation::ALL {
        let base = base_for(m);
        let inst = dir.path().join(format!("{base}.inst"));
        let mutant = dir.path().join(format!("{m}.mut"));
        cmd_example(base, &inst, &mut Vec::new()).unwrap();
        let (code, report) = run_mutant(&inst, &mutant, m, dir.path());
        let (stage, check) = m.designated();
        let designated = format!("FAILED {stage}: {check}");
        ensure(
            code == EXIT_FAIL && report.lines().any(|l| l == designated),
            || format!("{m} on {base}: exit {code}, expected `{designated}`\n{report}"),
        )?;
        notes.push(format!("{m}→{stage}/{check}"));
    }
    // no mutation survives the full pipeline on any base it applies to
    for base in BUNDLED_NAMES {
        let inst_path = dir.path().join(format!("{base}.inst"));
        cmd_example(base, &inst_path, &mut Vec::new()).unwrap();
        let inst = bundled(base).unwrap();
        for m in Mutation::ALL {
            if mutate_instance(&inst, m).is_err() {
                continue;
            }
            let mutant = dir.path().join(format!("{base}-{m}.mut"));
            let (code, report) = run_mutant(&inst_path, &mutant, m, dir.path());
            ensure(code == EXIT_FAIL, || {
                format!("{m} on {base} passed the pipeline\n{report}")
            })?;
        }
    }
    Ok(notes.join(", "))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut non_generators = 0;
    for name in BUNDLED_NAMES {
        let inst = bundled(name).unwrap();
        let p = &inst.presentation;
        let g = validate_generator_data(p, &inst.functor, &inst.generators);
        ensure(g.passed(), || format!("{name}: generator data\n{g}"))?;
        let e = check_e1_e2(p.field, 3);
        ensure(e.passed(), || {
            format!("{name}: evaluation conventions\n{e}")
        })?;
        for c in 0..p.objects.len() {
            let w =
                density_check(&inst, c).map_err(|err| format!("{name}/{}: {err}", p.name(c)))?;
            ensure(w.coend_dim == w.target && w.rank == w.target, || {
                format!("{name}/{}: {w:?}", p.name(c))
            })?;
            checked += 1;
            if !inst.generators.is_generator(c) {
                non_generators += 1;
            }
        }
    }
    ensure(non_generators > 0, || {
        "no non-generator objects checked".into()
    })?;
    Ok(format!(
        "{checked} objects, {non_generators} non-generators"
    ))
}

fn random_elt(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| field.ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
    let mut samples = 0;
    let mut objects = Vec::new();
    for name in ["s3", "promonoidal-toy"] {
        let inst = bundled(name).unwrap();
        let p = &inst.presentation;
        let e = compute_endv(&inst).unwrap();
        for (&c, supplied) in &inst.generators.resolutions {
            let alternative = if name == "s3" {
                rebased_resolution(&inst, supplied)
            } else {
                match regrouped_resolution(&inst, c) {
                    Some(r) => r,
                    None => continue,
                }
            };
            if alternative == *supplied {
                continue;
            }
            let via = cop_via(&inst, &e, c, &alternative);
            let d = p.u_dim(c);
            for _ in 0..20 {
                let x = random_elt(&mut rng, p.field, d * d);
                let a = cop_general(&inst, &e, c, &x).map_err(|err| err.to_string())?;
                ensure(a == via.apply(&x), || {
                    format!("{name}/{}: resolutions disagree", p.name(c))
                })?;
                samples += 1;
            }
            objects.push(format!("{name}/{}", p.name(c)));
        }
    }
    ensure(!objects.is_empty(), || "no resolved objects".into())?;
    Ok(format!("{samples} samples over {} objects", objects.len()))
}

fn criterion_8() -> Outcome {
    for name in BUNDLED_NAMES {
        let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
        let (r1, r2) = (pipeline(name, a.path()), pipeline(name, b.path()));
        ensure(r1.reports == r2.reports, || {
            format!("{name}: reports differ")
        })?;
        ensure(r1.instance == r2.instance && r1.core == r2.core, || {
            format!("{name}: files differ")
        })?;
        ensure(
            r1.instance == write_instance(&bundled(name).unwrap()).into_bytes(),
            || format!("{name}: written instance differs from in-memory serialization"),
        )?;
    }
    // a mutant's validation report is deterministic too
    let inst = bundled("z2").unwrap();
    let Ok(Mutant::Instance(m)) = mutate_instance(&inst, Mutation::BreakSplit) else {
        return Err("BreakSplit does not apply to z2".into());
    };
    let (mut x, mut y) = (Vec::new(), Vec::new());
    validate_instance(&m, &mut x, Options::default()).unwrap();
    validate_instance(&m, &mut y, Options::default()).unwrap();
    ensure(x == y, || "mutant reports differ".into())?;
    Ok("reports and files byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("full pipeline exits 0, VN axiom exact", criterion_1),
        ("coend dimensions match brute-force oracle", criterion_2),
        ("semibialgebra, fusion, VWV = V", criterion_3),
        ("unit completion", criterion_4),
        ("mutation sensitivity", criterion_5),
        ("generator conditions, conventions, density", criterion_6),
        ("resolution independence", criterion_7),
        ("determinism", criterion_8),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (title, run)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        match outcome {
            Ok(note) => println!("criterion {}: PASS  {title} ({note})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
