//! The semibialgebra structure on `End∨U`, the endomorphism `S`, and the
//! axiom suite: semibialgebra laws, the von Neumann axiom, antipodality,
//! the fusion operator with its pentagon-type equation, and the partial
//! inverse.

use thiserror::Error;

use crate::coend::{cop_general_matrix, CoendError, CoendSpace};
use crate::exactla::{kron_all, Field, Matrix, Scalar};
use crate::fincat::Instance;
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("{0} does not descend to the coend")]
    NotWellDefined(&'static str),
    #[error("tensor product {0} ⊗ {1} is not tabulated")]
    MissingTensor(String, String),
    #[error("u_{0} is missing or singular")]
    BadDuality(String),
    #[error("core already has a unit")]
    AlreadyUnital,
    #[error(transparent)]
    Coend(#[from] CoendError),
}

/// A finite-dimensional VN-core candidate: `μ: E⊗E → E`, `δ: E → E⊗E`, `S: E → E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VnCore {
    pub field: Field,
    pub dim: usize,
    pub mu: Matrix,
    pub delta: Matrix,
    pub s: Matrix,
    pub unit: Option<Vec<Scalar>>,
}

impl VnCore {
    pub fn has_unit(&self) -> bool {
        self.unit.is_some()
    }

    fn id(&self) -> Matrix {
        Matrix::identity(self.field, self.dim)
    }
}

pub fn build_mu(inst: &Instance, e: &CoendSpace) -> Result<Matrix, CoreError> {
    let p = &inst.presentation;
    let u = &inst.functor;
    let field = p.field;
    let amb = e.ambient_dim();
    let mut ambient = Matrix::zeros(field, e.dim(), amb * amb);
    for &a in &e.generators {
        for &b in &e.generators {
            let t = p
                .tensor(a, b)
                .ok_or_else(|| CoreError::MissingTensor(p.name(a).into(), p.name(b).into()))?;
            let (da, db) = (p.u_dim(a), p.u_dim(b));
            // (φ⊗a)⊗(ψ⊗b) ↦ (φ⊗ψ)⊗(a⊗b)
            let regroup = kron_all(&[
                &Matrix::identity(field, da),
                &Matrix::swap(field, da, db),
                &Matrix::identity(field, db),
            ]);
            let legs = u.i[&(a, b)].transpose().kron(&u.r[&(a, b)]);
            let block = cop_general_matrix(inst, e, t)?.mul(&legs).mul(&regroup);
            let (oa, ob) = (e.block_offsets[&a], e.block_offsets[&b]);
            let (na, nb) = (da * da, db * db);
            for x in 0..na {
                for y in 0..nb {
                    let col = (oa + x) * amb + ob + y;
                    for r in 0..e.dim() {
                        ambient.set(r, col, block.get(r, x * nb + y).clone());
                    }
                }
            }
        }
    }
    let section = e.quotient.section.kron(&e.quotient.section);
    let mu = ambient.mul(&section);
    if mu.mul(&e.quotient.projection.kron(&e.quotient.projection)) != ambient {
        return Err(CoreError::NotWellDefined("μ"));
    }
    Ok(mu)
}

pub fn build_delta(inst: &Instance, e: &CoendSpace) -> Result<Matrix, CoreError> {
    let p = &inst.presentation;
    let field = p.field;
    let n = e.dim();
    let mut ambient = Matrix::zeros(field, n * n, e.ambient_dim());
    for &a in &e.generators {
        let da = p.u_dim(a);
        // φ⊗a ↦ Σ_i (φ⊗e_i)⊗(e^i⊗a)
        let mut insert = Matrix::zeros(field, da.pow(4), da * da);
        for phi in 0..da {
            for x in 0..da {
                for i in 0..da {
                    insert.set(
                        ((phi * da + i) * da + i) * da + x,
                        phi * da + x,
                        field.one(),
                    );
                }
            }
        }
        let block = e.cop[&a].kron(&e.cop[&a]).mul(&insert);
        ambient.set_block(0, e.block_offsets[&a], &block);
    }
    let delta = ambient.mul(&e.quotient.section);
    if delta.mul(&e.quotient.projection) != ambient {
        return Err(CoreError::NotWellDefined("δ"));
    }
    Ok(delta)
}

pub fn build_s(inst: &Instance, e: &CoendSpace) -> Result<Matrix, CoreError> {
    let p = &inst.presentation;
    let g = &inst.generators;
    let field = p.field;
    let mut ambient = Matrix::zeros(field, e.dim(), e.ambient_dim());
    for &a in &e.generators {
        let bad = || CoreError::BadDuality(p.name(a).to_string());
        let star = *g.star_obj.get(&a).ok_or_else(bad)?;
        let u = g.u.get(&a).ok_or_else(bad)?;
        let u_inv = u.inverse().ok_or_else(bad)?;
        let ds = p.u_dim(star);
        let cop_star = e.cop.get(&star).ok_or_else(bad)?;
        // σ_A = c ∘ (u⁻¹ ⊗ u*) ∘ (1 ⊗ d), d = 1
        let sigma = Matrix::swap(field, ds, ds).mul(&u_inv.kron(&u.transpose()));
        ambient.set_block(0, e.block_offsets[&a], &cop_star.mul(&sigma));
    }
    let s = ambient.mul(&e.quotient.section);
    if s.mul(&e.quotient.projection) != ambient {
        return Err(CoreError::NotWellDefined("S"));
    }
    Ok(s)
}

/// Builds `(End∨U, μ, δ, S)` for a validated instance.
pub fn build_core(inst: &Instance, e: &CoendSpace) -> Result<VnCore, CoreError> {
    Ok(VnCore {
        field: inst.field(),
        dim: e.dim(),
        mu: build_mu(inst, e)?,
        delta: build_delta(inst, e)?,
        s: build_s(inst, e)?,
        unit: None,
    })
}

fn decode(mut idx: usize, n: usize, legs: usize) -> String {
    let mut parts = vec![0; legs];
    for k in (0..legs).rev() {
        parts[k] = idx % n.max(1);
        idx /= n.max(1);
    }
    let s: Vec<String> = parts.iter().map(|i| format!("e{i}")).collect();
    s.join("⊗")
}

fn compare(report: &mut Report, check: &str, lhs: &Matrix, rhs: &Matrix, n: usize, legs: usize) {
    match lhs.first_difference(rhs) {
        None => report.pass(check, ""),
        Some(c) => {
            let deviation = lhs.sub(rhs).rank();
            report.fail(
                check,
                format!("witness {}; deviation rank {deviation}", decode(c, n, legs)),
            )
        }
    }
}

/// `(1⊗swap⊗1)` on `E⊗E⊗E⊗E` applied to the rows of `m`.
fn middle_swap_rows(m: &Matrix, n: usize) -> Matrix {
    m.permute_rows(|r| {
        let (a, b, c, d) = (r / (n * n * n), (r / (n * n)) % n, (r / n) % n, r % n);
        ((a * n + c) * n + b) * n + d
    })
}

pub fn check_semibialgebra(core: &VnCore) -> Report {
    let mut report = Report::new();
    let n = core.dim;
    let id = core.id();
    let (mu, delta) = (&core.mu, &core.delta);
    compare(
        &mut report,
        "mu_associativity",
        &mu.mul(&mu.kron(&id)),
        &mu.mul(&id.kron(mu)),
        n,
        3,
    );
    compare(
        &mut report,
        "delta_coassociativity",
        &delta.kron(&id).mul(delta),
        &id.kron(delta).mul(delta),
        n,
        1,
    );
    let rhs = mu.kron(mu).mul(&middle_swap_rows(&delta.kron(delta), n));
    compare(
        &mut report,
        "delta_multiplicativity",
        &delta.mul(mu),
        &rhs,
        n,
        2,
    );
    report
}

/// `μ(μ⊗1)(1⊗S⊗1)(1⊗δ)δ`
pub fn vn_composite(core: &VnCore) -> Matrix {
    let id = core.id();
    let (mu, delta, s) = (&core.mu, &core.delta, &core.s);
    mu.mul(&mu.kron(&id))
        .mul(&kron_all(&[&id, s, &id]))
        .mul(&id.kron(delta))
        .mul(delta)
}

pub fn check_vn_axiom(core: &VnCore) -> Report {
    let mut report = Report::new();
    let lhs = vn_composite(core);
    compare(&mut report, "vn_axiom", &lhs, &core.id(), core.dim, 1);
    report
}

/// Antipodality is a property, so the outcome is informational.
pub fn is_antipodal(core: &VnCore) -> bool {
    let n = core.dim;
    let lhs = core.s.mul(&core.mu);
    let rhs = core
        .mu
        .mul(&core.s.kron(&core.s))
        .mul(&Matrix::swap(core.field, n, n));
    let unit_ok = core
        .unit
        .as_ref()
        .is_none_or(|one| &core.s.apply(one) == one);
    lhs == rhs && unit_ok
}

pub fn check_antipodal(core: &VnCore) -> Report {
    let mut report = Report::new();
    report.info("antipodal", format!("antipodal = {}", is_antipodal(core)));
    report
}

/// `V = (μ⊗1)(1⊗δ)` on `E⊗E`.
pub fn fusion_operator(core: &VnCore) -> Matrix {
    let id = core.id();
    core.mu.kron(&id).mul(&id.kron(&core.delta))
}

/// `W = (μ⊗1)(1⊗S⊗1)(1⊗δ)` on `E⊗E`.
pub fn partial_inverse(core: &VnCore) -> Matrix {
    let id = core.id();
    core.mu
        .kron(&id)
        .mul(&kron_all(&[&id, &core.s, &id]))
        .mul(&id.kron(&core.delta))
}

pub fn check_fusion_equation(core: &VnCore) -> Report {
    let mut report = Report::new();
    let n = core.dim;
    let id = core.id();
    let v = fusion_operator(core);
    let v12 = v.kron(&id);
    let v23 = id.kron(&v);
    let p23 = id.kron(&Matrix::swap(core.field, n, n));
    let v13 = p23.mul(&v12).mul(&p23);
    compare(
        &mut report,
        "fusion_equation",
        &v12.mul(&v23),
        &v23.mul(&v13).mul(&v12),
        n,
        3,
    );
    let mirror = v23.mul(&v12) == v12.mul(&v13).mul(&v23);
    report.info("fusion_equation_mirror", format!("holds = {mirror}"));
    report
}

pub fn check_partial_inverse(core: &VnCore) -> Report {
    let mut report = Report::new();
    let n = core.dim;
    let v = fusion_operator(core);
    let w = partial_inverse(core);
    compare(
        &mut report,
        "partial_inverse_vwv",
        &v.mul(&w).mul(&v),
        &v,
        n,
        2,
    );
    let wvw = w.mul(&v).mul(&w) == w;
    report.info("partial_inverse_wvw", format!("holds = {wvw}"));
    report
}

/// `E ⊕ k` with the adjoined element as unit.
pub fn complete_with_unit(core: &VnCore) -> Result<VnCore, CoreError> {
    if core.has_unit() {
        return Err(CoreError::AlreadyUnital);
    }
    let field = core.field;
    let n = core.dim;
    let m = n + 1;
    let one = field.one();
    let mut mu = Matrix::zeros(field, m, m * m);
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                mu.set(r, i * m + j, core.mu.get(r, i * n + j).clone());
            }
        }
        mu.set(i, i * m + n, one.clone());
        mu.set(i, n * m + i, one.clone());
    }
    mu.set(n, n * m + n, one.clone());
    let mut delta = Matrix::zeros(field, m * m, m);
    for j in 0..n {
        for a in 0..n {
            for b in 0..n {
                delta.set(a * m + b, j, core.delta.get(a * n + b, j).clone());
            }
        }
    }
    delta.set(n * m + n, n, one.clone());
    let mut s = Matrix::zeros(field, m, m);
    s.set_block(0, 0, &core.s);
    s.set(n, n, one);
    let mut unit = vec![field.zero(); m];
    unit[n] = field.one();
    Ok(VnCore {
        field,
        dim: m,
        mu,
        delta,
        s,
        unit: Some(unit),
    })
}

/// Two-sided unitality, `δ(1) = 1⊗1` and `S(1) = 1` for unital cores.
pub fn check_unit(core: &VnCore) -> Report {
    let mut report = Report::new();
    let Some(one) = &core.unit else {
        report.fail("unitality", "core has no unit");
        return report;
    };
    let n = core.dim;
    let one_col = Matrix::column(core.field, one.clone());
    let id = core.id();
    let left = core.mu.mul(&one_col.kron(&id));
    let right = core.mu.mul(&id.kron(&one_col));
    let mut bad = Vec::new();
    if !left.is_identity() {
        bad.push("μ(1⊗x) ≠ x".to_string());
    }
    if !right.is_identity() {
        bad.push("μ(x⊗1) ≠ x".to_string());
    }
    report.record("unitality", bad);
    let d1 = core.delta.mul(&one_col);
    report.record(
        "delta_unit",
        if d1 == one_col.kron(&one_col) {
            vec![]
        } else {
            vec!["δ(1) ≠ 1⊗1".into()]
        },
    );
    report.record(
        "s_unit",
        if core.s.mul(&one_col) == one_col {
            vec![]
        } else {
            vec!["S(1) ≠ 1".into()]
        },
    );
    let _ = n;
    report
}

/// Selection of the optional checks run on top of the semibialgebra laws and the VN axiom.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub antipodal: bool,
    pub fusion: bool,
    pub partial_inverse: bool,
}

impl CheckOptions {
    pub fn all() -> Self {
        CheckOptions {
            antipodal: true,
            fusion: true,
            partial_inverse: true,
        }
    }
}

pub fn run_checks(core: &VnCore, opts: CheckOptions) -> Report {
    let mut report = check_semibialgebra(core);
    report.extend(check_vn_axiom(core));
    if opts.antipodal {
        report.extend(check_antipodal(core));
    }
    if opts.fusion {
        report.extend(check_fusion_equation(core));
    }
    if opts.partial_inverse {
        report.extend(check_partial_inverse(core));
    }
    if core.has_unit() {
        report.extend(check_unit(core));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The two-element group-like core: t·t = t, t·s = s·t = s, s·s = t.
    fn z2_like() -> VnCore {
        let q = Field::Rationals;
        let mut mu = Matrix::zeros(q, 2, 4);
        mu.set(0, 0, q.one()); // t t
        mu.set(1, 1, q.one()); // t s
        mu.set(1, 2, q.one()); // s t
        mu.set(0, 3, q.one()); // s s
        let mut delta = Matrix::zeros(q, 4, 2);
        delta.set(0, 0, q.one());
        delta.set(3, 1, q.one());
        VnCore {
            field: q,
            dim: 2,
            mu,
            delta,
            s: Matrix::identity(q, 2),
            unit: None,
        }
    }

    #[test]
    fn group_like_core_passes_everything() {
        let core = z2_like();
        let report = run_checks(&core, CheckOptions::all());
        assert!(report.passed(), "{report}");
        assert!(is_antipodal(&core));
    }

    #[test]
    fn fusion_values() {
        let core = z2_like();
        let v = fusion_operator(&core);
        // V(s⊗s) = t⊗s, V(t⊗s) = s⊗s  (basis t = e0, s = e1)
        assert_eq!(v.col(3), Matrix::identity(core.field, 4).col(1));
        assert_eq!(v.col(1), Matrix::identity(core.field, 4).col(3));
    }

    #[test]
    fn zero_s_breaks_vn_and_partial_inverse() {
        let mut core = z2_like();
        core.s = Matrix::zeros(core.field, 2, 2);
        assert!(check_semibialgebra(&core).passed());
        assert!(check_vn_axiom(&core).failed("vn_axiom"));
        assert!(check_partial_inverse(&core).failed("partial_inverse_vwv"));
    }

    #[test]
    fn completion_of_group_like_core() {
        let done = complete_with_unit(&z2_like()).unwrap();
        assert_eq!(done.dim, 3);
        let report = run_checks(&done, CheckOptions::all());
        assert!(report.passed(), "{report}");
        assert_eq!(
            report.status_of("unitality"),
            Some(crate::report::Status::Pass)
        );
        assert!(complete_with_unit(&done).is_err());
    }

    #[test]
    fn completion_of_zero_core() {
        let q = Field::Rationals;
        let empty = VnCore {
            field: q,
            dim: 0,
            mu: Matrix::zeros(q, 0, 0),
            delta: Matrix::zeros(q, 0, 0),
            s: Matrix::zeros(q, 0, 0),
            unit: None,
        };
        assert!(run_checks(&empty, CheckOptions::all()).passed());
        let k = complete_with_unit(&empty).unwrap();
        assert_eq!(k.dim, 1);
        assert!(k.mu.is_identity());
        assert!(run_checks(&k, CheckOptions::all()).passed());
    }

    #[test]
    fn non_multiplicative_delta_breaks_fusion() {
        let mut core = z2_like();
        // δ(s) = 2 s⊗s is coassociative-breaking and non-multiplicative
        core.delta.set(3, 1, core.field.from_i64(2));
        assert!(check_semibialgebra(&core).failed("delta_multiplicativity"));
        assert!(check_fusion_equation(&core).failed("fusion_equation"));
    }
}
