//! Text serialization of instances and cores.
//!
//! A file is a sequence of `[SECTION]` blocks terminated by `[END]`. Lines
//! inside a section are whitespace-separated tokens, with `|` separating
//! groups. Scalars are exact (`p/q` over ℚ, residues in `[0, p)` over 𝔽_p).
//! Matrices are written `RxC` followed by the entries in row-major order.
//! Composition and tensor tables exist for every composable (or tensorable)
//! pair of nonzero homs; only nonzero entries are written.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::exactla::{Field, Matrix};
use crate::fincat::{
    CatPresentation, Coeffs, GeneratorData, Instance, Morphism, ObjId, ObjectDecl, Resolution,
    ResolutionTerm, UFunctorData,
};
use crate::report::Report;
use crate::vncore::VnCore;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

const INSTANCE_SECTIONS: [&str; 15] = [
    "FIELD",
    "OBJECTS",
    "HOMS",
    "COMPOSITION",
    "TENSOR_OBJECTS",
    "TENSOR_MORPHISMS",
    "U_MORPHISMS",
    "R",
    "I",
    "GENERATORS",
    "STAR",
    "U_ISO",
    "E_MAPS",
    "RESOLUTIONS",
    "META",
];

const CORE_SECTIONS: [&str; 8] = [
    "FIELD",
    "E_DIM",
    "MU",
    "DELTA",
    "S",
    "UNIT",
    "COP_BLOCKS",
    "CHECKS",
];

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_matrix(m: &Matrix) -> String {
    let mut s = format!("{}x{}", m.rows(), m.cols());
    for e in m.entries() {
        s.push(' ');
        s.push_str(&e.to_string());
    }
    s
}

fn write_field(f: Field) -> String {
    f.to_string()
}

pub fn write_instance(inst: &Instance) -> String {
    let p = &inst.presentation;
    let u = &inst.functor;
    let g = &inst.generators;
    let name = |o: ObjId| p.name(o);
    let mut out = String::new();
    let w = &mut out;

    writeln!(w, "[FIELD]\n{}", write_field(p.field)).unwrap();
    writeln!(w, "[OBJECTS]").unwrap();
    for o in &p.objects {
        writeln!(w, "{} {}", o.name, o.u_dim).unwrap();
    }
    writeln!(w, "[HOMS]").unwrap();
    for (&(a, b), names) in &p.homs {
        writeln!(w, "{} {} | {}", name(a), name(b), names.join(" ")).unwrap();
    }
    for (&a, c) in &p.identities {
        writeln!(w, "id {} | {}", name(a), join(c)).unwrap();
    }
    writeln!(w, "[COMPOSITION]").unwrap();
    for (&(a, b, c), table) in &p.composition {
        for (gi, row) in table.iter().enumerate() {
            for (fi, v) in row.iter().enumerate() {
                if v.iter().any(|x| !x.is_zero()) {
                    writeln!(
                        w,
                        "{} {} {} {gi} {fi} | {}",
                        name(a),
                        name(b),
                        name(c),
                        join(v)
                    )
                    .unwrap();
                }
            }
        }
    }
    writeln!(w, "[TENSOR_OBJECTS]").unwrap();
    for (&(a, b), &t) in &p.tensor_objects {
        writeln!(w, "{} {} -> {}", name(a), name(b), name(t)).unwrap();
    }
    writeln!(w, "[TENSOR_MORPHISMS]").unwrap();
    for (&(a, b, a2, b2), table) in &p.tensor_morphisms {
        for (fi, row) in table.iter().enumerate() {
            for (gi, v) in row.iter().enumerate() {
                if v.iter().any(|x| !x.is_zero()) {
                    writeln!(
                        w,
                        "{} {} {} {} {fi} {gi} | {}",
                        name(a),
                        name(b),
                        name(a2),
                        name(b2),
                        join(v)
                    )
                    .unwrap();
                }
            }
        }
    }
    writeln!(w, "[U_MORPHISMS]").unwrap();
    for (&(a, b), mats) in &u.on_morphisms {
        for (k, m) in mats.iter().enumerate() {
            writeln!(w, "{} {} {k} | {}", name(a), name(b), write_matrix(m)).unwrap();
        }
    }
    writeln!(w, "[R]").unwrap();
    for (&(a, b), m) in &u.r {
        writeln!(w, "{} {} | {}", name(a), name(b), write_matrix(m)).unwrap();
    }
    writeln!(w, "[I]").unwrap();
    for (&(a, b), m) in &u.i {
        writeln!(w, "{} {} | {}", name(a), name(b), write_matrix(m)).unwrap();
    }
    writeln!(w, "[GENERATORS]").unwrap();
    let gens: Vec<&str> = g.generators.iter().map(|&a| name(a)).collect();
    writeln!(w, "{}", gens.join(" ")).unwrap();
    writeln!(w, "[STAR]").unwrap();
    for (&a, &s) in &g.star_obj {
        writeln!(w, "obj {} {}", name(a), name(s)).unwrap();
    }
    for (&(a, b), rows) in &g.star_mor {
        for (k, v) in rows.iter().enumerate() {
            writeln!(w, "mor {} {} {k} | {}", name(a), name(b), join(v)).unwrap();
        }
    }
    writeln!(w, "[U_ISO]").unwrap();
    for (&a, m) in &g.u {
        writeln!(w, "{} | {}", name(a), write_matrix(m)).unwrap();
    }
    writeln!(w, "[E_MAPS]").unwrap();
    for (&a, e) in &g.e {
        writeln!(w, "{} {} | {}", name(a), name(e.source), join(&e.coeffs)).unwrap();
    }
    writeln!(w, "[RESOLUTIONS]").unwrap();
    for (&c, res) in &g.resolutions {
        if res.terms.is_empty() {
            writeln!(w, "{} -", name(c)).unwrap();
        }
        for t in &res.terms {
            writeln!(
                w,
                "{} {} | {} | {}",
                name(c),
                name(t.generator),
                join(&t.inclusion.coeffs),
                write_matrix(&t.lift)
            )
            .unwrap();
        }
    }
    writeln!(w, "[META]").unwrap();
    for (k, v) in &inst.meta {
        writeln!(w, "{k} {v}").unwrap();
    }
    writeln!(w, "[END]").unwrap();
    out
}

/// One content line with its 1-based line number.
struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Splits on `|` into trimmed groups.
    fn groups(&self) -> Vec<&'a str> {
        self.text.split('|').map(str::trim).collect()
    }

    fn expect_groups(&self, n: usize) -> Result<Vec<&'a str>, ParseError> {
        let g = self.groups();
        if g.len() != n {
            return err(
                self.no,
                format!("expected {n} '|'-separated groups, found {}", g.len()),
            );
        }
        Ok(g)
    }
}

fn split_sections<'a>(
    text: &'a str,
    allowed: &[&str],
) -> Result<BTreeMap<String, Vec<Line<'a>>>, ParseError> {
    let mut sections: BTreeMap<String, Vec<Line<'a>>> = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut ended = false;
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        let no = k + 1;
        last = no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if ended {
            return err(no, "content after [END]");
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if name == "END" {
                ended = true;
                continue;
            }
            if !allowed.contains(&name) {
                return err(no, format!("unknown section [{name}]"));
            }
            if sections.contains_key(name) {
                return err(no, format!("duplicate section [{name}]"));
            }
            sections.insert(name.to_string(), Vec::new());
            current = Some(name.to_string());
            continue;
        }
        match &current {
            Some(s) => sections
                .get_mut(s)
                .expect("opened")
                .push(Line { no, text: line }),
            None => return err(no, "content before the first section"),
        }
    }
    if !ended {
        return err(last, "missing [END] marker (truncated file?)");
    }
    Ok(sections)
}

fn parse_field(lines: &[Line]) -> Result<Field, ParseError> {
    let [line] = lines else {
        return err(
            lines.first().map_or(0, |l| l.no),
            "[FIELD] must hold exactly one line",
        );
    };
    let toks: Vec<&str> = line.text.split_whitespace().collect();
    match toks.as_slice() {
        ["Q"] => Ok(Field::Rationals),
        ["F", p] => {
            let p: u64 = p
                .parse()
                .or_else(|_| err(line.no, format!("bad modulus {p}")))?;
            Field::prime(p).or_else(|e| err(line.no, e.to_string()))
        }
        _ => err(line.no, format!("unknown field {:?}", line.text)),
    }
}

struct Ctx {
    field: Field,
    names: BTreeMap<String, ObjId>,
}

impl Ctx {
    fn obj(&self, no: usize, name: &str) -> Result<ObjId, ParseError> {
        self.names.get(name).copied().ok_or_else(|| ParseError {
            line: no,
            message: format!("unknown object {name}"),
        })
    }

    fn scalars(&self, no: usize, text: &str) -> Result<Coeffs, ParseError> {
        text.split_whitespace()
            .map(|t| self.field.parse(t).or_else(|e| err(no, e.to_string())))
            .collect()
    }

    fn matrix(&self, no: usize, text: &str) -> Result<Matrix, ParseError> {
        parse_matrix(self.field, no, text)
    }
}

fn parse_matrix(field: Field, no: usize, text: &str) -> Result<Matrix, ParseError> {
    let mut toks = text.split_whitespace();
    let shape = toks.next().ok_or(ParseError {
        line: no,
        message: "missing matrix".into(),
    })?;
    let (r, c) = shape
        .split_once('x')
        .and_then(|(r, c)| Some((r.parse::<usize>().ok()?, c.parse::<usize>().ok()?)))
        .ok_or_else(|| ParseError {
            line: no,
            message: format!("bad matrix shape {shape:?}"),
        })?;
    let data = toks
        .map(|t| field.parse(t).or_else(|e| err(no, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if data.len() != r * c {
        return err(
            no,
            format!(
                "matrix {r}x{c} needs {} entries, found {}",
                r * c,
                data.len()
            ),
        );
    }
    Matrix::from_vec(field, r, c, data).or_else(|e| err(no, e.to_string()))
}

fn index(no: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse()
        .or_else(|_| err(no, format!("bad index {tok:?}")))
}

fn check_len(no: usize, v: &Coeffs, n: usize) -> Result<(), ParseError> {
    if v.len() != n {
        return err(no, format!("expected {n} coefficients, found {}", v.len()));
    }
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut sections = split_sections(text, &INSTANCE_SECTIONS)?;
    let mut take = |name: &str| sections.remove(name).unwrap_or_default();
    let field_lines = take("FIELD");
    if field_lines.is_empty() {
        return err(1, "missing [FIELD]");
    }
    let field = parse_field(&field_lines)?;
    let mut p = CatPresentation::new(field);
    let mut names = BTreeMap::new();
    for line in take("OBJECTS") {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        let [name, dim] = toks.as_slice() else {
            return err(line.no, "expected `name u_dim`");
        };
        if names.insert(name.to_string(), p.objects.len()).is_some() {
            return err(line.no, format!("duplicate object {name}"));
        }
        p.objects.push(ObjectDecl {
            name: name.to_string(),
            u_dim: index(line.no, dim)?,
        });
    }
    let ctx = Ctx { field, names };

    let homs = take("HOMS");
    for line in &homs {
        let g = line.expect_groups(2)?;
        let head: Vec<&str> = g[0].split_whitespace().collect();
        match head.as_slice() {
            ["id", _] => {}
            [a, b] => {
                let key = (ctx.obj(line.no, a)?, ctx.obj(line.no, b)?);
                let basis: Vec<String> = g[1].split_whitespace().map(String::from).collect();
                if basis.is_empty() || p.homs.insert(key, basis).is_some() {
                    return err(line.no, "empty or duplicate hom");
                }
            }
            _ => return err(line.no, "expected `src tgt | names` or `id obj | coeffs`"),
        }
    }
    for line in &homs {
        let g = line.expect_groups(2)?;
        let head: Vec<&str> = g[0].split_whitespace().collect();
        if let ["id", a] = head.as_slice() {
            let a = ctx.obj(line.no, a)?;
            let c = ctx.scalars(line.no, g[1])?;
            check_len(line.no, &c, p.hom_dim(a, a))?;
            p.identities.insert(a, c);
        }
    }

    // implicit zero tables for every composable pair of nonzero homs
    let keys: Vec<(ObjId, ObjId)> = p.homs.keys().copied().collect();
    for &(a, b) in &keys {
        for &(b2, c) in &keys {
            if b2 == b {
                let table = vec![
                    vec![vec![field.zero(); p.hom_dim(a, c)]; p.hom_dim(a, b)];
                    p.hom_dim(b, c)
                ];
                p.composition.insert((a, b, c), table);
            }
        }
    }
    for line in take("COMPOSITION") {
        let g = line.expect_groups(2)?;
        let toks: Vec<&str> = g[0].split_whitespace().collect();
        let [a, b, c, gi, fi] = toks.as_slice() else {
            return err(line.no, "expected `a b c g f | coeffs`");
        };
        let (a, b, c) = (
            ctx.obj(line.no, a)?,
            ctx.obj(line.no, b)?,
            ctx.obj(line.no, c)?,
        );
        let (gi, fi) = (index(line.no, gi)?, index(line.no, fi)?);
        let v = ctx.scalars(line.no, g[1])?;
        check_len(line.no, &v, p.hom_dim(a, c))?;
        let slot = p
            .composition
            .get_mut(&(a, b, c))
            .and_then(|t| t.get_mut(gi))
            .and_then(|r| r.get_mut(fi))
            .ok_or_else(|| ParseError {
                line: line.no,
                message: "composition entry outside the hom bases".into(),
            })?;
        *slot = v;
    }

    for line in take("TENSOR_OBJECTS") {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        let [a, b, "->", c] = toks.as_slice() else {
            return err(line.no, "expected `a b -> c`");
        };
        let key = (ctx.obj(line.no, a)?, ctx.obj(line.no, b)?);
        if p.tensor_objects.insert(key, ctx.obj(line.no, c)?).is_some() {
            return err(line.no, "duplicate tensor product");
        }
    }
    let pairs: Vec<(ObjId, ObjId)> = p.tensor_objects.keys().copied().collect();
    for &(a1, b1) in &pairs {
        for &(a2, b2) in &pairs {
            let (hf, hg) = (p.hom_dim(a1, a2), p.hom_dim(b1, b2));
            if hf > 0 && hg > 0 {
                let out = p.hom_dim(p.tensor_objects[&(a1, b1)], p.tensor_objects[&(a2, b2)]);
                p.tensor_morphisms.insert(
                    (a1, b1, a2, b2),
                    vec![vec![vec![field.zero(); out]; hg]; hf],
                );
            }
        }
    }
    for line in take("TENSOR_MORPHISMS") {
        let g = line.expect_groups(2)?;
        let toks: Vec<&str> = g[0].split_whitespace().collect();
        let [a, b, a2, b2, fi, gi] = toks.as_slice() else {
            return err(line.no, "expected `a b a2 b2 f g | coeffs`");
        };
        let key = (
            ctx.obj(line.no, a)?,
            ctx.obj(line.no, b)?,
            ctx.obj(line.no, a2)?,
            ctx.obj(line.no, b2)?,
        );
        let (fi, gi) = (index(line.no, fi)?, index(line.no, gi)?);
        let v = ctx.scalars(line.no, g[1])?;
        let slot = p
            .tensor_morphisms
            .get_mut(&key)
            .and_then(|t| t.get_mut(fi))
            .and_then(|r| r.get_mut(gi))
            .ok_or_else(|| ParseError {
                line: line.no,
                message: "tensor entry outside the tabulated products".into(),
            })?;
        check_len(line.no, &v, slot.len())?;
        *slot = v;
    }

    let mut u = UFunctorData::default();
    for line in take("U_MORPHISMS") {
        let g = line.expect_groups(2)?;
        let toks: Vec<&str> = g[0].split_whitespace().collect();
        let [a, b, k] = toks.as_slice() else {
            return err(line.no, "expected `a b k | matrix`");
        };
        let key = (ctx.obj(line.no, a)?, ctx.obj(line.no, b)?);
        let k = index(line.no, k)?;
        let mats = u.on_morphisms.entry(key).or_default();
        if k != mats.len() {
            return err(
                line.no,
                format!(
                    "U-matrices must be listed in basis order; expected index {}",
                    mats.len()
                ),
            );
        }
        mats.push(ctx.matrix(line.no, g[1])?);
    }
    for (section, target) in [("R", &mut u.r), ("I", &mut u.i)] {
        for line in take(section) {
            let g = line.expect_groups(2)?;
            let toks: Vec<&str> = g[0].split_whitespace().collect();
            let [a, b] = toks.as_slice() else {
                return err(line.no, "expected `a b | matrix`");
            };
            let key = (ctx.obj(line.no, a)?, ctx.obj(line.no, b)?);
            target.insert(key, ctx.matrix(line.no, g[1])?);
        }
    }

    let mut gd = GeneratorData::default();
    for line in take("GENERATORS") {
        for name in line.text.split_whitespace() {
            gd.generators.push(ctx.obj(line.no, name)?);
        }
    }
    for line in take("STAR") {
        let g = line.groups();
        let head: Vec<&str> = g[0].split_whitespace().collect();
        match (head.as_slice(), g.len()) {
            (["obj", a, s], 1) => {
                gd.star_obj
                    .insert(ctx.obj(line.no, a)?, ctx.obj(line.no, s)?);
            }
            (["mor", a, b, k], 2) => {
                let key = (ctx.obj(line.no, a)?, ctx.obj(line.no, b)?);
                let k = index(line.no, k)?;
                let rows = gd.star_mor.entry(key).or_default();
                if k != rows.len() {
                    return err(
                        line.no,
                        format!(
                            "duals must be listed in basis order; expected index {}",
                            rows.len()
                        ),
                    );
                }
                rows.push(ctx.scalars(line.no, g[1])?);
            }
            _ => return err(line.no, "expected `obj A A*` or `mor A B k | coeffs`"),
        }
    }
    for line in take("U_ISO") {
        let g = line.expect_groups(2)?;
        let a = ctx.obj(line.no, g[0])?;
        gd.u.insert(a, ctx.matrix(line.no, g[1])?);
    }
    for line in take("E_MAPS") {
        let g = line.expect_groups(2)?;
        let toks: Vec<&str> = g[0].split_whitespace().collect();
        let [a, src] = toks.as_slice() else {
            return err(line.no, "expected `A source | coeffs`");
        };
        let (a, src) = (ctx.obj(line.no, a)?, ctx.obj(line.no, src)?);
        gd.e.insert(
            a,
            Morphism {
                source: src,
                target: a,
                coeffs: ctx.scalars(line.no, g[1])?,
            },
        );
    }
    for line in take("RESOLUTIONS") {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        if let [c, "-"] = toks.as_slice() {
            gd.resolutions
                .insert(ctx.obj(line.no, c)?, Resolution::default());
            continue;
        }
        let g = line.expect_groups(3)?;
        let head: Vec<&str> = g[0].split_whitespace().collect();
        let [c, a] = head.as_slice() else {
            return err(line.no, "expected `C A | coeffs | matrix`");
        };
        let (c, a) = (ctx.obj(line.no, c)?, ctx.obj(line.no, a)?);
        let term = ResolutionTerm {
            generator: a,
            inclusion: Morphism {
                source: a,
                target: c,
                coeffs: ctx.scalars(line.no, g[1])?,
            },
            lift: ctx.matrix(line.no, g[2])?,
        };
        gd.resolutions.entry(c).or_default().terms.push(term);
    }
    let mut meta = BTreeMap::new();
    for line in take("META") {
        let (k, v) = line
            .text
            .split_once(char::is_whitespace)
            .unwrap_or((line.text, ""));
        meta.insert(k.to_string(), v.trim().to_string());
    }
    Ok(Instance {
        presentation: p,
        functor: u,
        generators: gd,
        meta,
    })
}

/// A serialized core: the structure maps, the coprojections and the check report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreFile {
    pub core: VnCore,
    pub cop_blocks: Vec<(String, Matrix)>,
    pub checks: Vec<String>,
}

pub fn write_core(
    core: &VnCore,
    cop_blocks: &[(String, Matrix)],
    checks: Option<&Report>,
) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "[FIELD]\n{}", write_field(core.field)).unwrap();
    writeln!(w, "[E_DIM]\n{}", core.dim).unwrap();
    writeln!(w, "[MU]\n{}", write_matrix(&core.mu)).unwrap();
    writeln!(w, "[DELTA]\n{}", write_matrix(&core.delta)).unwrap();
    writeln!(w, "[S]\n{}", write_matrix(&core.s)).unwrap();
    if let Some(unit) = &core.unit {
        writeln!(w, "[UNIT]\n{}", join(unit)).unwrap();
    }
    writeln!(w, "[COP_BLOCKS]").unwrap();
    for (name, m) in cop_blocks {
        writeln!(w, "{name} | {}", write_matrix(m)).unwrap();
    }
    writeln!(w, "[CHECKS]").unwrap();
    if let Some(r) = checks {
        write!(w, "{r}").unwrap();
    }
    writeln!(w, "[END]").unwrap();
    out
}

pub fn parse_core(text: &str) -> Result<CoreFile, ParseError> {
    let mut sections = split_sections(text, &CORE_SECTIONS)?;
    let mut take = |name: &str| sections.remove(name).unwrap_or_default();
    let field_lines = take("FIELD");
    if field_lines.is_empty() {
        return err(1, "missing [FIELD]");
    }
    let field = parse_field(&field_lines)?;
    let single = |lines: Vec<Line>, name: &str| -> Result<(usize, String), ParseError> {
        match lines.as_slice() {
            [l] => Ok((l.no, l.text.to_string())),
            _ => err(
                lines.first().map_or(0, |l| l.no),
                format!("[{name}] must hold exactly one line"),
            ),
        }
    };
    let (no, dim) = single(take("E_DIM"), "E_DIM")?;
    let dim = index(no, &dim)?;
    let mut mat = |name: &str, shape: (usize, usize)| -> Result<Matrix, ParseError> {
        let (no, text) = single(take(name), name)?;
        let m = parse_matrix(field, no, &text)?;
        if m.shape() != shape {
            return err(
                no,
                format!("[{name}] has shape {:?}, expected {shape:?}", m.shape()),
            );
        }
        Ok(m)
    };
    let mu = mat("MU", (dim, dim * dim))?;
    let delta = mat("DELTA", (dim * dim, dim))?;
    let s = mat("S", (dim, dim))?;
    let unit = match take("UNIT").as_slice() {
        [] => None,
        [l] => {
            let v = Ctx {
                field,
                names: BTreeMap::new(),
            }
            .scalars(l.no, l.text)?;
            check_len(l.no, &v, dim)?;
            Some(v)
        }
        [_, l, ..] => return err(l.no, "[UNIT] must hold one line"),
    };
    let mut cop_blocks = Vec::new();
    for line in take("COP_BLOCKS") {
        let g = line.expect_groups(2)?;
        cop_blocks.push((g[0].to_string(), parse_matrix(field, line.no, g[1])?));
    }
    let checks = take("CHECKS").iter().map(|l| l.text.to_string()).collect();
    Ok(CoreFile {
        core: VnCore {
            field,
            dim,
            mu,
            delta,
            s,
            unit,
        },
        cop_blocks,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_is_detected() {
        let text = "[FIELD]\nQ\n[OBJECTS]\nA 1\n";
        let e = parse_instance(text).unwrap_err();
        assert!(e.message.contains("END"));
    }

    #[test]
    fn bad_matrix_reports_line() {
        let e = parse_matrix(Field::Rationals, 7, "2x2 1 0 0").unwrap_err();
        assert_eq!(e.line, 7);
    }

    #[test]
    fn unknown_section() {
        let e = parse_instance("[FIELD]\nQ\n[BOGUS]\n[END]\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn residue_matrix() {
        let m = parse_matrix(Field::prime(7).unwrap(), 1, "1x2 3 -1").unwrap();
        assert_eq!(m.get(0, 1), &Field::prime(7).unwrap().from_i64(6));
    }

    #[test]
    fn core_roundtrip() {
        let q = Field::Rationals;
        let core = VnCore {
            field: q,
            dim: 1,
            mu: Matrix::identity(q, 1),
            delta: Matrix::identity(q, 1),
            s: Matrix::from_i64_rows(q, &[vec![-3]]).scale(&q.ratio(1, 2)),
            unit: Some(vec![q.one()]),
        };
        let text = write_core(&core, &[("A".into(), Matrix::identity(q, 1))], None);
        let back = parse_core(&text).unwrap();
        assert_eq!(back.core, core);
        assert_eq!(back.cop_blocks.len(), 1);
    }
}
