//! Batch front end: each `cmd_*` reads files, writes a plain-text report to
//! `out`, and returns the process exit code.
//!
//! Exit codes: [`EXIT_PASS`] when every asserted check holds, [`EXIT_FAIL`]
//! when one fails (the report names it), [`EXIT_MALFORMED`] when an input
//! cannot be read or parsed.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use endv_core::coend::{compute_endv, density_report, verify_coend};
use endv_core::fincat::{check_e1_e2, validate_category, validate_generator_data, validate_u};
use endv_core::format::{parse_core, parse_instance, write_core, write_instance, CoreFile};
use endv_core::instances::{bundled, mutate_instance, Mutant, Mutation};
use endv_core::vncore::{build_core, complete_with_unit, run_checks, CheckOptions};
use endv_core::{Instance, Report, VnCore};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

/// Dimension used for the evaluation/coevaluation self-test run by `validate`.
const CONVENTION_DIM: usize = 3;

/// Output options shared by all commands.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Print per-stage wall-clock timings to stderr. Reports stay timing-free.
    pub timings: bool,
}

struct Stage {
    timings: bool,
    start: Instant,
}

impl Stage {
    fn new(opts: Options) -> Self {
        Stage {
            timings: opts.timings,
            start: Instant::now(),
        }
    }

    fn lap(&mut self, name: &str) {
        if self.timings {
            eprintln!("time {name}: {:.3}s", self.start.elapsed().as_secs_f64());
        }
        self.start = Instant::now();
    }
}

fn read(path: &Path, out: &mut dyn Write) -> io::Result<Option<String>> {
    match fs::read_to_string(path) {
        Ok(t) => Ok(Some(t)),
        Err(e) => {
            writeln!(out, "error: cannot read {}: {e}", path.display())?;
            Ok(None)
        }
    }
}

fn load_instance(path: &Path, out: &mut dyn Write) -> io::Result<Option<Instance>> {
    let Some(text) = read(path, out)? else {
        return Ok(None);
    };
    match parse_instance(&text) {
        Ok(i) => Ok(Some(i)),
        Err(e) => {
            writeln!(out, "error: malformed instance {}: {e}", path.display())?;
            Ok(None)
        }
    }
}

fn load_core(path: &Path, out: &mut dyn Write) -> io::Result<Option<CoreFile>> {
    let Some(text) = read(path, out)? else {
        return Ok(None);
    };
    match parse_core(&text) {
        Ok(c) => Ok(Some(c)),
        Err(e) => {
            writeln!(out, "error: malformed core {}: {e}", path.display())?;
            Ok(None)
        }
    }
}

fn write_file(path: &Path, text: &str, out: &mut dyn Write) -> io::Result<bool> {
    match fs::write(path, text) {
        Ok(()) => Ok(true),
        Err(e) => {
            writeln!(out, "error: cannot write {}: {e}", path.display())?;
            Ok(false)
        }
    }
}

fn emit_stage(out: &mut dyn Write, stage: &str, report: &Report) -> io::Result<bool> {
    writeln!(out, "[{stage}]")?;
    write!(out, "{report}")?;
    if let Some(f) = report.first_failure() {
        writeln!(out, "FAILED {stage}: {}", f.check)?;
        return Ok(false);
    }
    Ok(true)
}

/// Runs the validator chain on an in-memory instance; stops at the first failing stage.
pub fn validate_instance(inst: &Instance, out: &mut dyn Write, opts: Options) -> io::Result<i32> {
    let p = &inst.presentation;
    let mut clock = Stage::new(opts);
    type Run<'a> = Box<dyn Fn() -> Report + 'a>;
    let stages: [(&str, Run); 5] = [
        ("validate_category", Box::new(|| validate_category(p))),
        ("validate_u", Box::new(|| validate_u(p, &inst.functor))),
        (
            "validate_generator_data",
            Box::new(|| validate_generator_data(p, &inst.functor, &inst.generators)),
        ),
        ("density", Box::new(|| density_report(inst))),
        (
            "conventions",
            Box::new(|| check_e1_e2(p.field, CONVENTION_DIM)),
        ),
    ];
    for (name, run) in stages {
        let report = run();
        clock.lap(name);
        if !emit_stage(out, name, &report)? {
            return Ok(EXIT_FAIL);
        }
    }
    writeln!(out, "OK")?;
    Ok(EXIT_PASS)
}

pub fn cmd_validate(path: &Path, out: &mut dyn Write, opts: Options) -> io::Result<i32> {
    match load_instance(path, out)? {
        Some(inst) => validate_instance(&inst, out, opts),
        None => Ok(EXIT_MALFORMED),
    }
}

/// Builds the core of an in-memory instance; returns the core file text, or `None` on failure.
pub fn build_instance(
    inst: &Instance,
    out: &mut dyn Write,
    opts: Options,
) -> io::Result<Option<String>> {
    let mut clock = Stage::new(opts);
    let e = match compute_endv(inst) {
        Ok(e) => e,
        Err(err) => {
            writeln!(out, "FAILED build: coend: {err}")?;
            return Ok(None);
        }
    };
    clock.lap("coend");
    let verify = verify_coend(inst, &e);
    clock.lap("verify_coend");
    let core = match build_core(inst, &e) {
        Ok(c) => c,
        Err(err) => {
            writeln!(out, "FAILED build: {err}")?;
            return Ok(None);
        }
    };
    clock.lap("structure_maps");
    writeln!(out, "E_DIM {}", core.dim)?;
    if !emit_stage(out, "build", &verify)? {
        return Ok(None);
    }
    let p = &inst.presentation;
    let blocks: Vec<_> = e
        .cop
        .iter()
        .map(|(&a, m)| (p.name(a).to_string(), m.clone()))
        .collect();
    Ok(Some(write_core(&core, &blocks, Some(&verify))))
}

pub fn cmd_build(path: &Path, dest: &Path, out: &mut dyn Write, opts: Options) -> io::Result<i32> {
    let Some(inst) = load_instance(path, out)? else {
        return Ok(EXIT_MALFORMED);
    };
    match build_instance(&inst, out, opts)? {
        Some(text) if write_file(dest, &text, out)? => Ok(EXIT_PASS),
        _ => Ok(EXIT_FAIL),
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckFlags {
    pub antipodal: bool,
    pub fusion: bool,
    pub partial_inverse: bool,
    pub complete_unit: bool,
}

impl CheckFlags {
    pub fn all() -> Self {
        CheckFlags {
            antipodal: true,
            fusion: true,
            partial_inverse: true,
            complete_unit: true,
        }
    }

    fn options(self) -> CheckOptions {
        CheckOptions {
            antipodal: self.antipodal,
            fusion: self.fusion,
            partial_inverse: self.partial_inverse,
        }
    }
}

/// Runs the selected laws on a core; with `complete_unit`, also on its unit completion.
pub fn check_core(
    core: &VnCore,
    flags: CheckFlags,
    out: &mut dyn Write,
    opts: Options,
) -> io::Result<i32> {
    let mut clock = Stage::new(opts);
    writeln!(out, "E_DIM {}", core.dim)?;
    let report = run_checks(core, flags.options());
    clock.lap("check");
    if !emit_stage(out, "check", &report)? {
        return Ok(EXIT_FAIL);
    }
    if flags.complete_unit && core.has_unit() {
        writeln!(out, "SKIP complete_unit: core is already unital")?;
    } else if flags.complete_unit {
        let completed = match complete_with_unit(core) {
            Ok(c) => c,
            Err(err) => {
                writeln!(out, "FAILED complete_unit: {err}")?;
                return Ok(EXIT_FAIL);
            }
        };
        writeln!(out, "E_DIM {}", completed.dim)?;
        let report = run_checks(&completed, flags.options());
        clock.lap("check_completed");
        if !emit_stage(out, "check_completed", &report)? {
            return Ok(EXIT_FAIL);
        }
    }
    writeln!(out, "OK")?;
    Ok(EXIT_PASS)
}

pub fn cmd_check(
    path: &Path,
    flags: CheckFlags,
    out: &mut dyn Write,
    opts: Options,
) -> io::Result<i32> {
    match load_core(path, out)? {
        Some(file) => check_core(&file.core, flags, out, opts),
        None => Ok(EXIT_MALFORMED),
    }
}

pub fn cmd_example(name: &str, dest: &Path, out: &mut dyn Write) -> io::Result<i32> {
    let Some(inst) = bundled(name) else {
        writeln!(out, "error: unknown example {name:?}")?;
        return Ok(EXIT_MALFORMED);
    };
    if write_file(dest, &write_instance(&inst), out)? {
        Ok(EXIT_PASS)
    } else {
        Ok(EXIT_FAIL)
    }
}

/// Writes a corrupted copy of an instance: an instance file, or a core file
/// for mutations that act on the built core.
pub fn cmd_mutate(
    path: &Path,
    mutation: &str,
    dest: &Path,
    out: &mut dyn Write,
) -> io::Result<i32> {
    let mutation: Mutation = match mutation.parse() {
        Ok(m) => m,
        Err(e) => {
            writeln!(out, "error: {e}")?;
            return Ok(EXIT_MALFORMED);
        }
    };
    let Some(inst) = load_instance(path, out)? else {
        return Ok(EXIT_MALFORMED);
    };
    let text = match mutate_instance(&inst, mutation) {
        Ok(Mutant::Instance(m)) => write_instance(&m),
        Ok(Mutant::Core(core)) => write_core(&core, &[], None),
        Err(e) => {
            writeln!(out, "error: {e}")?;
            return Ok(EXIT_FAIL);
        }
    };
    let (stage, check) = mutation.designated();
    writeln!(out, "{mutation}: expect {stage}: {check}")?;
    if write_file(dest, &text, out)? {
        Ok(EXIT_PASS)
    } else {
        Ok(EXIT_FAIL)
    }
}
