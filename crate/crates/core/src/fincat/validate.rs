use std::collections::BTreeMap;

use super::sparse::{unit, SparseCat};
use super::{CatPresentation, Coeffs, GeneratorData, Morphism, ObjId, UFunctorData};
use crate::exactla::{Field, Matrix};
use crate::report::Report;

fn hom_keys(p: &CatPresentation) -> Vec<(ObjId, ObjId)> {
    p.homs
        .iter()
        .filter(|(_, b)| !b.is_empty())
        .map(|(k, _)| *k)
        .collect()
}

/// Outgoing nonzero homs per object, for triple/quadruple enumeration.
fn successors(p: &CatPresentation) -> BTreeMap<ObjId, Vec<ObjId>> {
    let mut out: BTreeMap<ObjId, Vec<ObjId>> = BTreeMap::new();
    for (a, b) in hom_keys(p) {
        out.entry(a).or_default().push(b);
    }
    out
}

/// Associativity, unit laws and functoriality of the tabulated tensor product.
pub fn validate_category(p: &CatPresentation) -> Report {
    let mut report = Report::new();
    let n = p.objects.len();

    let mut structural = Vec::new();
    for &(a, b) in p.homs.keys() {
        if a >= n || b >= n {
            structural.push(format!("hom ({a},{b}) names a missing object"));
        }
    }
    for (&(a, b), &c) in &p.tensor_objects {
        if a >= n || b >= n || c >= n {
            structural.push(format!(
                "tensor entry ({a},{b}) -> {c} names a missing object"
            ));
        }
    }
    for a in 0..n {
        match p.identities.get(&a) {
            None => structural.push(format!("no identity for {}", p.name(a))),
            Some(c) if c.len() != p.hom_dim(a, a) => {
                structural.push(format!("identity of {} has wrong length", p.name(a)))
            }
            _ => {}
        }
    }
    let succ = successors(p);
    for (&a, bs) in &succ {
        for &b in bs {
            for &c in succ.get(&b).into_iter().flatten() {
                let ok = p.composition.get(&(a, b, c)).is_some_and(|t| {
                    t.len() == p.hom_dim(b, c)
                        && t.iter().all(|row| {
                            row.len() == p.hom_dim(a, b)
                                && row.iter().all(|e| e.len() == p.hom_dim(a, c))
                        })
                });
                if !ok {
                    structural.push(format!(
                        "composition table ({}, {}, {}) missing or malformed",
                        p.name(a),
                        p.name(b),
                        p.name(c)
                    ));
                }
            }
        }
    }
    let structure_ok = structural.is_empty();
    report.record("presentation_structure", structural);
    if !structure_ok {
        return report;
    }

    let mut unit_bad = Vec::new();
    for (a, b) in hom_keys(p) {
        for k in 0..p.hom_dim(a, b) {
            let f = p.basis_morphism(a, b, k);
            if p.compose(&p.identity(b), &f).as_ref() != Some(&f) {
                unit_bad.push(format!(
                    "1∘{} ≠ {} via composition ({}, {}, {})",
                    p.homs[&(a, b)][k],
                    p.homs[&(a, b)][k],
                    p.name(a),
                    p.name(b),
                    p.name(b)
                ));
            }
            if p.compose(&f, &p.identity(a)).as_ref() != Some(&f) {
                unit_bad.push(format!(
                    "{}∘1 ≠ {} via composition ({}, {}, {})",
                    p.homs[&(a, b)][k],
                    p.homs[&(a, b)][k],
                    p.name(a),
                    p.name(a),
                    p.name(b)
                ));
            }
        }
    }
    report.record("unit_law", unit_bad);

    let sp = SparseCat::new(p);
    let one = p.field.one();
    let mut assoc = Vec::new();
    for (&a, bs) in &succ {
        for &b in bs {
            for &c in succ.get(&b).into_iter().flatten() {
                for &d in succ.get(&c).into_iter().flatten() {
                    for gi in 0..p.hom_dim(b, c) {
                        let g = unit(gi, one.clone());
                        for fi in 0..p.hom_dim(a, b) {
                            let f = unit(fi, one.clone());
                            let gf = sp.compose(a, b, c, &g, &f);
                            for hi in 0..p.hom_dim(c, d) {
                                let h = unit(hi, one.clone());
                                let lhs = sp
                                    .compose(b, c, d, &h, &g)
                                    .and_then(|hg| sp.compose(a, b, d, &hg, &f));
                                let rhs = gf.as_ref().and_then(|gf| sp.compose(a, c, d, &h, gf));
                                if lhs.is_none() || lhs != rhs {
                                    assoc.push(format!(
                                        "({}, {}, {}) over ({}, {}, {}, {})",
                                        p.homs[&(c, d)][hi],
                                        p.homs[&(b, c)][gi],
                                        p.homs[&(a, b)][fi],
                                        p.name(a),
                                        p.name(b),
                                        p.name(c),
                                        p.name(d)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.record("associativity", assoc);

    report.record("tensor_functoriality", tensor_functoriality(p, &sp));
    report
}

fn tensor_functoriality(p: &CatPresentation, sp: &SparseCat) -> Vec<String> {
    let mut bad = Vec::new();
    let pairs: Vec<(ObjId, ObjId)> = p.tensor_objects.keys().copied().collect();
    for &(a, b) in &pairs {
        let id = p.tensor_mor(&p.identity(a), &p.identity(b));
        let t = p.tensor(a, b).expect("tabulated");
        if id.as_ref() != Some(&p.identity(t)) {
            bad.push(format!(
                "1_{} ⊗ 1_{} is not the identity",
                p.name(a),
                p.name(b)
            ));
        }
    }
    let one = p.field.one();
    for &(a1, b1) in &pairs {
        let t1 = p.tensor(a1, b1).expect("tabulated");
        for &(a2, b2) in &pairs {
            if p.hom_dim(a1, a2) == 0 || p.hom_dim(b1, b2) == 0 {
                continue;
            }
            let t2 = p.tensor(a2, b2).expect("tabulated");
            for &(a3, b3) in &pairs {
                if p.hom_dim(a2, a3) == 0 || p.hom_dim(b2, b3) == 0 {
                    continue;
                }
                let t3 = p.tensor(a3, b3).expect("tabulated");
                for fi in 0..p.hom_dim(a1, a2) {
                    let f1 = unit(fi, one.clone());
                    for gi in 0..p.hom_dim(b1, b2) {
                        let g1 = unit(gi, one.clone());
                        let inner = sp.tensor((a1, b1, a2, b2), &f1, &g1);
                        for fj in 0..p.hom_dim(a2, a3) {
                            let f2 = unit(fj, one.clone());
                            let ff = sp.compose(a1, a2, a3, &f2, &f1);
                            for gj in 0..p.hom_dim(b2, b3) {
                                let g2 = unit(gj, one.clone());
                                let lhs = sp
                                    .tensor((a2, b2, a3, b3), &f2, &g2)
                                    .zip(inner.as_ref())
                                    .and_then(|(outer, inner)| {
                                        sp.compose(t1, t2, t3, &outer, inner)
                                    });
                                let rhs = ff
                                    .as_ref()
                                    .zip(sp.compose(b1, b2, b3, &g2, &g1))
                                    .and_then(|(ff, gg)| sp.tensor((a1, b1, a3, b3), ff, &gg));
                                if lhs.is_none() || lhs != rhs {
                                    bad.push(format!(
                                        "({}⊗{})∘({}⊗{}) between ({},{}) and ({},{})",
                                        p.homs[&(a2, a3)][fj],
                                        p.homs[&(b2, b3)][gj],
                                        p.homs[&(a1, a2)][fi],
                                        p.homs[&(b1, b2)][gi],
                                        p.name(a1),
                                        p.name(b1),
                                        p.name(a3),
                                        p.name(b3)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    bad
}

/// Functoriality of `U`, naturality of `r` and `i`, and splitness `r·i = 1`.
pub fn validate_u(p: &CatPresentation, u: &UFunctorData) -> Report {
    let mut report = Report::new();
    let mut shapes = Vec::new();
    for (a, b) in hom_keys(p) {
        match u.on_morphisms.get(&(a, b)) {
            Some(mats) if mats.len() == p.hom_dim(a, b) => {
                for (k, m) in mats.iter().enumerate() {
                    if m.shape() != (p.u_dim(b), p.u_dim(a)) {
                        shapes.push(format!(
                            "U({}) has shape {:?}",
                            p.homs[&(a, b)][k],
                            m.shape()
                        ));
                    }
                }
            }
            _ => shapes.push(format!("U missing on hom ({}, {})", p.name(a), p.name(b))),
        }
    }
    for (&(a, b), &t) in &p.tensor_objects {
        let src = p.u_dim(a) * p.u_dim(b);
        let tgt = p.u_dim(t);
        if u.r.get(&(a, b)).map(Matrix::shape) != Some((tgt, src)) {
            shapes.push(format!(
                "r_({},{}) missing or misshapen",
                p.name(a),
                p.name(b)
            ));
        }
        if u.i.get(&(a, b)).map(Matrix::shape) != Some((src, tgt)) {
            shapes.push(format!(
                "i_({},{}) missing or misshapen",
                p.name(a),
                p.name(b)
            ));
        }
    }
    let shapes_ok = shapes.is_empty();
    report.record("functor_shapes", shapes);
    if !shapes_ok {
        return report;
    }

    let mut func = Vec::new();
    for a in 0..p.objects.len() {
        if !u.apply(p, &p.identity(a)).is_identity() {
            func.push(format!("U(1_{}) ≠ 1", p.name(a)));
        }
    }
    let succ = successors(p);
    for (&a, bs) in &succ {
        for &b in bs {
            for &c in succ.get(&b).into_iter().flatten() {
                for fi in 0..p.hom_dim(a, b) {
                    let f = p.basis_morphism(a, b, fi);
                    let uf = u.apply(p, &f);
                    for gi in 0..p.hom_dim(b, c) {
                        let g = p.basis_morphism(b, c, gi);
                        let ok = p
                            .compose(&g, &f)
                            .is_some_and(|gf| u.apply(p, &gf) == u.apply(p, &g).mul(&uf));
                        if !ok {
                            func.push(format!(
                                "U({}∘{}) ≠ U({})U({})",
                                p.homs[&(b, c)][gi],
                                p.homs[&(a, b)][fi],
                                p.homs[&(b, c)][gi],
                                p.homs[&(a, b)][fi]
                            ));
                        }
                    }
                }
            }
        }
    }
    report.record("functoriality", func);

    let mut split = Vec::new();
    for (&(a, b), &t) in &p.tensor_objects {
        if !u.r[&(a, b)].mul(&u.i[&(a, b)]).is_identity() {
            split.push(format!("r·i ≠ 1 on U({})", p.name(t)));
        }
    }
    report.record("splitness", split);

    let mut r_nat = Vec::new();
    let mut i_nat = Vec::new();
    for &(a1, b1) in p.tensor_objects.keys() {
        for &(a2, b2) in p.tensor_objects.keys() {
            for fi in 0..p.hom_dim(a1, a2) {
                let f = p.basis_morphism(a1, a2, fi);
                let uf = u.apply(p, &f);
                for gi in 0..p.hom_dim(b1, b2) {
                    let g = p.basis_morphism(b1, b2, gi);
                    let witness =
                        || format!("{} ⊗ {}", p.homs[&(a1, a2)][fi], p.homs[&(b1, b2)][gi]);
                    let Some(fg) = p.tensor_mor(&f, &g) else {
                        r_nat.push(format!("{} untabulated", witness()));
                        continue;
                    };
                    let ufg = u.apply(p, &fg);
                    let ufug = uf.kron(&u.apply(p, &g));
                    if u.r[&(a2, b2)].mul(&ufug) != ufg.mul(&u.r[&(a1, b1)]) {
                        r_nat.push(witness());
                    }
                    if u.i[&(a2, b2)].mul(&ufg) != ufug.mul(&u.i[&(a1, b1)]) {
                        i_nat.push(witness());
                    }
                }
            }
        }
    }
    report.record("r_naturality", r_nat);
    report.record("i_naturality", i_nat);
    report
}

fn star_of(p: &CatPresentation, g: &GeneratorData, m: &Morphism) -> Option<Morphism> {
    let (sa, sb) = (*g.star_obj.get(&m.source)?, *g.star_obj.get(&m.target)?);
    let mut coeffs: Coeffs = vec![p.field.zero(); p.hom_dim(sb, sa)];
    if m.coeffs.iter().any(|c| !c.is_zero()) {
        let table = g.star_mor.get(&(m.source, m.target))?;
        if table.len() != m.coeffs.len() {
            return None;
        }
        for (c, row) in m.coeffs.iter().zip(table) {
            if row.len() != coeffs.len() {
                return None;
            }
            for (o, v) in coeffs.iter_mut().zip(row) {
                *o = &*o + &(c * v);
            }
        }
    }
    Some(Morphism {
        source: sb,
        target: sa,
        coeffs,
    })
}

/// Duality, naturality of `u`, the coupling diagrams and the density witnesses.
pub fn validate_generator_data(p: &CatPresentation, u: &UFunctorData, g: &GeneratorData) -> Report {
    let mut report = Report::new();
    let field = p.field;
    let n = p.objects.len();

    let mut structural = Vec::new();
    for &a in &g.generators {
        if a >= n {
            structural.push(format!("generator {a} does not exist"));
            continue;
        }
        match g.star_obj.get(&a) {
            Some(s) if g.is_generator(*s) => {}
            _ => structural.push(format!("{}* is not a generator", p.name(a))),
        }
        match g.u.get(&a) {
            Some(m)
                if g.star_obj
                    .get(&a)
                    .is_some_and(|&s| s < n && m.shape() == (p.u_dim(a), p.u_dim(s))) => {}
            _ => structural.push(format!("u_{} missing or misshapen", p.name(a))),
        }
        match g.triple(p, a) {
            None => structural.push(format!("(A⊗A*)⊗A not tabulated for {}", p.name(a))),
            Some((_, t)) => match g.e.get(&a) {
                Some(e) if e.source == t && e.target == a && e.coeffs.len() == p.hom_dim(t, a) => {}
                _ => structural.push(format!("e_{} missing or misshapen", p.name(a))),
            },
        }
    }
    let structure_ok = structural.is_empty();
    report.record("generator_structure", structural);
    if !structure_ok {
        return report;
    }
    let gens = &g.generators;

    let mut star = Vec::new();
    for &a in gens {
        let sa = g.star_obj[&a];
        if star_of(p, g, &p.identity(a)).as_ref() != Some(&p.identity(sa)) {
            star.push(format!("(1_{})* ≠ 1", p.name(a)));
        }
        for &b in gens {
            for fi in 0..p.hom_dim(a, b) {
                let f = p.basis_morphism(a, b, fi);
                let Some(fs) = star_of(p, g, &f) else {
                    star.push(format!("{}* missing", p.homs[&(a, b)][fi]));
                    continue;
                };
                for &c in gens {
                    for gi in 0..p.hom_dim(b, c) {
                        let h = p.basis_morphism(b, c, gi);
                        let lhs = p.compose(&h, &f).and_then(|hf| star_of(p, g, &hf));
                        let rhs = star_of(p, g, &h).and_then(|hs| p.compose(&fs, &hs));
                        if lhs.is_none() || lhs != rhs {
                            star.push(format!(
                                "({}∘{})* ≠ {}*∘{}*",
                                p.homs[&(b, c)][gi],
                                p.homs[&(a, b)][fi],
                                p.homs[&(a, b)][fi],
                                p.homs[&(b, c)][gi]
                            ));
                        }
                    }
                }
            }
        }
    }
    report.record("star_functoriality", star);

    let mut inv = Vec::new();
    let mut u_inv = BTreeMap::new();
    for &a in gens {
        match g.u[&a].inverse() {
            Some(m) => {
                u_inv.insert(a, m);
            }
            None => inv.push(format!("u_{} is not invertible", p.name(a))),
        }
    }
    let inv_ok = inv.is_empty();
    report.record("u_invertible", inv);

    let mut nat = Vec::new();
    for &a in gens {
        for &b in gens {
            for fi in 0..p.hom_dim(a, b) {
                let f = p.basis_morphism(a, b, fi);
                let Some(fs) = star_of(p, g, &f) else {
                    continue;
                };
                let lhs = g.u[&a].mul(&u.apply(p, &fs));
                let rhs = u.apply(p, &f).transpose().mul(&g.u[&b]);
                if lhs != rhs {
                    nat.push(format!("u not natural at {}", p.homs[&(a, b)][fi]));
                }
            }
        }
    }
    report.record("u_naturality", nat);

    let mut tau = Vec::new();
    let mut rho = Vec::new();
    let mut split3 = Vec::new();
    for &a in gens {
        let sa = g.star_obj[&a];
        let (pair, _) = g.triple(p, a).expect("checked above");
        let da = p.u_dim(a);
        let id_a = Matrix::identity(field, da);
        let r3 = u.r[&(pair, a)].mul(&u.r[&(a, sa)].kron(&id_a));
        let i3 = u.i[&(a, sa)].kron(&id_a).mul(&u.i[&(pair, a)]);
        let e_ua = id_a.kron(&Matrix::evaluation(field, da));
        let ue = u.apply(p, &g.e[&a]);
        if let Some(ui) = u_inv.get(&a) {
            let lhs = ue.mul(&r3).mul(&id_a.kron(ui).kron(&id_a));
            if lhs != e_ua {
                tau.push(format!("τ̃ diagram fails for {}", p.name(a)));
            }
        }
        let via = e_ua.mul(&id_a.kron(&g.u[&a]).kron(&id_a)).mul(&i3);
        if via != ue {
            rho.push(format!("ρ̃ diagram fails for {}", p.name(a)));
        }
        if !r3.mul(&i3).is_identity() {
            split3.push(format!("r₃·i₃ ≠ 1 for {}", p.name(a)));
        }
    }
    if inv_ok {
        report.record("tau_diagram", tau);
    } else {
        report.push(
            "tau_diagram",
            crate::report::Status::Skipped,
            "u not invertible",
        );
    }
    report.record("rho_diagram", rho);
    report.record("triple_split", split3);

    report.record("resolutions", check_resolutions(p, u, g));
    report
}

fn check_resolutions(p: &CatPresentation, u: &UFunctorData, g: &GeneratorData) -> Vec<String> {
    let field = p.field;
    let mut bad = Vec::new();
    let mut needed = Vec::new();
    for &a in &g.generators {
        for &b in &g.generators {
            if let Some(t) = p.tensor(a, b) {
                needed.push(t);
            }
        }
        if let Some((pair, t)) = g.triple(p, a) {
            needed.push(pair);
            needed.push(t);
        }
    }
    needed.sort_unstable();
    needed.dedup();
    for c in needed {
        if !g.is_generator(c) && !g.resolutions.contains_key(&c) {
            bad.push(format!("{} has no resolution", p.name(c)));
        }
    }
    for (&c, res) in &g.resolutions {
        let dc = p.u_dim(c);
        let mut sum = Matrix::zeros(field, dc, dc);
        let mut shape_ok = true;
        for term in &res.terms {
            let a = term.generator;
            if !g.is_generator(a)
                || term.inclusion.source != a
                || term.inclusion.target != c
                || term.inclusion.coeffs.len() != p.hom_dim(a, c)
                || term.lift.shape() != (p.u_dim(a), dc)
            {
                shape_ok = false;
                break;
            }
            sum = sum.add(&u.apply(p, &term.inclusion).mul(&term.lift));
            // When C(C, A_j) is tabulated the lift must be the image of a morphism.
            if p.hom_dim(c, a) > 0 && !lift_is_morphism(p, u, c, a, &term.lift) {
                bad.push(format!(
                    "lift {} → {} is not U of a morphism",
                    p.name(c),
                    p.name(a)
                ));
            }
        }
        if !shape_ok {
            bad.push(format!("resolution of {} is malformed", p.name(c)));
        } else if !sum.is_identity() {
            bad.push(format!("Σ U(g)·lift ≠ 1 on U({})", p.name(c)));
        }
    }
    bad
}

fn flatten(m: &Matrix) -> Vec<crate::exactla::Scalar> {
    m.entries().to_vec()
}

fn lift_is_morphism(
    p: &CatPresentation,
    u: &UFunctorData,
    c: ObjId,
    a: ObjId,
    lift: &Matrix,
) -> bool {
    let mats = &u.on_morphisms[&(c, a)];
    let rows = p.u_dim(a) * p.u_dim(c);
    let mut basis = Matrix::zeros(p.field, rows, mats.len());
    for (k, m) in mats.iter().enumerate() {
        for (r, v) in flatten(m).into_iter().enumerate() {
            basis.set(r, k, v);
        }
    }
    let aug = Matrix::hstack(&[&basis, &Matrix::column(p.field, flatten(lift))]);
    aug.rank() == basis.rank()
}

/// Self-test of the evaluation/coevaluation conventions in dimension `n`.
pub fn check_e1_e2(field: Field, n: usize) -> Report {
    let mut report = Report::new();
    let id = Matrix::identity(field, n);
    let ev = Matrix::evaluation(field, n);
    let coev = Matrix::coevaluation(field, n);
    let e_ua = id.kron(&ev);
    // e_{UA}·(n⊗1) = 1
    let e1 = e_ua.mul(&coev.kron(&id));
    report.record(
        "snake_identity",
        if e1.is_identity() {
            vec![]
        } else {
            vec![format!("snake identity fails in dim {n}")]
        },
    );
    // (1⊗d⊗1)(1⊗n) = e*_{UA}, with d the identity matrix
    let d = Matrix::identity(field, n);
    let lhs = id.kron(&d).kron(&id).mul(&id.kron(&coev));
    report.record(
        "dual_snake",
        if lhs == e_ua.transpose() {
            vec![]
        } else {
            vec![format!("dual snake fails in dim {n}")]
        },
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_e2_hold_in_small_dimensions() {
        for n in [0, 1, 2, 5] {
            assert!(check_e1_e2(Field::Rationals, n).passed(), "dim {n}");
            assert!(check_e1_e2(Field::Prime(7), n).passed(), "dim {n}");
        }
    }

    #[test]
    fn dual_transpose_identity() {
        // ev·(U(f)*⊗1) = ev·(1⊗U(f)) on U(B)*⊗U(A)
        let q = Field::Rationals;
        let f = Matrix::from_i64_rows(q, &[vec![1, 2, 0], vec![-1, 3, 4]]);
        let lhs = Matrix::evaluation(q, 3).mul(&f.transpose().kron(&Matrix::identity(q, 3)));
        let rhs = Matrix::evaluation(q, 2).mul(&Matrix::identity(q, 2).kron(&f));
        assert_eq!(lhs, rhs);
    }
}
