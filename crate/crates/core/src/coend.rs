//! Coends over the finite generator category, computed as explicit
//! coequalizers of a direct sum.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactla::{induced_on_quotient, quotient_by, Field, LinAlgError, Matrix, QuotientSpace};
use crate::fincat::{Instance, ObjId, Resolution};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoendError {
    #[error("action matrices have inconsistent shapes: {0}")]
    ActionMismatch(String),
    #[error("{object} is not dense: canonical map has rank {rank}, target dimension {target}")]
    NotDense {
        object: String,
        rank: usize,
        target: usize,
    },
    #[error("{0} is neither a generator nor resolved")]
    NoResolution(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// One generating relation of a coend: a middle space `M` with maps into two blocks.
/// Every `m ∈ M` imposes `to_source(m) ~ to_target(m)`.
#[derive(Clone, Debug)]
pub struct WeightAction {
    pub source: usize,
    pub target: usize,
    pub to_source: Matrix,
    pub to_target: Matrix,
}

/// Diagonal blocks `W(A,A)` of a two-sided weight together with its morphism actions.
#[derive(Clone, Debug)]
pub struct CoendWeight {
    pub field: Field,
    pub blocks: Vec<usize>,
    pub actions: Vec<WeightAction>,
}

#[derive(Clone, Debug)]
pub struct GenericCoend {
    pub quotient: QuotientSpace,
    pub block_offsets: Vec<usize>,
}

impl GenericCoend {
    /// Block inclusion followed by projection.
    pub fn coprojection(&self, block: usize, size: usize) -> Matrix {
        let off = self.block_offsets[block];
        self.quotient
            .projection
            .block(0, off, self.quotient.dim, size)
    }
}

pub fn compute_coend_generic(weight: &CoendWeight) -> Result<GenericCoend, CoendError> {
    let mut offsets = Vec::with_capacity(weight.blocks.len());
    let mut total = 0;
    for &b in &weight.blocks {
        offsets.push(total);
        total += b;
    }
    let mut rows: Vec<Matrix> = Vec::new();
    for (k, act) in weight.actions.iter().enumerate() {
        let (s, t) = (act.source, act.target);
        if s >= weight.blocks.len() || t >= weight.blocks.len() {
            return Err(CoendError::ActionMismatch(format!(
                "action {k} names a missing block"
            )));
        }
        if act.to_source.rows() != weight.blocks[s]
            || act.to_target.rows() != weight.blocks[t]
            || act.to_source.cols() != act.to_target.cols()
        {
            return Err(CoendError::ActionMismatch(format!(
                "action {k}: {:?} into block of size {}, {:?} into block of size {}",
                act.to_source.shape(),
                weight.blocks[s],
                act.to_target.shape(),
                weight.blocks[t]
            )));
        }
        // columns of the relation block are the relation vectors
        let mut rel = Matrix::zeros(weight.field, total, act.to_source.cols());
        for c in 0..act.to_source.cols() {
            for r in 0..weight.blocks[s] {
                rel.add_at(offsets[s] + r, c, act.to_source.get(r, c));
            }
            for r in 0..weight.blocks[t] {
                rel.add_at(offsets[t] + r, c, &-act.to_target.get(r, c));
            }
        }
        rows.push(rel.transpose());
    }
    let refs: Vec<&Matrix> = rows.iter().collect();
    let relations = Matrix::vstack(weight.field, total, &refs);
    Ok(GenericCoend {
        quotient: quotient_by(weight.field, total, &relations)?,
        block_offsets: offsets,
    })
}

/// `End∨U = ∫^A U(A)*⊗U(A)` with its coprojections.
#[derive(Clone, Debug)]
pub struct CoendSpace {
    pub quotient: QuotientSpace,
    pub generators: Vec<ObjId>,
    pub block_offsets: BTreeMap<ObjId, usize>,
    /// `cop_A: U(A)*⊗U(A) → E`
    pub cop: BTreeMap<ObjId, Matrix>,
}

impl CoendSpace {
    pub fn dim(&self) -> usize {
        self.quotient.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim
    }
}

pub fn compute_endv(inst: &Instance) -> Result<CoendSpace, CoendError> {
    let p = &inst.presentation;
    let u = &inst.functor;
    let field = p.field;
    let gens = &inst.generators.generators;
    let index: BTreeMap<ObjId, usize> = gens.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let mut weight = CoendWeight {
        field,
        blocks: gens.iter().map(|&a| p.u_dim(a) * p.u_dim(a)).collect(),
        actions: Vec::new(),
    };
    for &a in gens {
        for &b in gens {
            let (da, db) = (p.u_dim(a), p.u_dim(b));
            for k in 0..p.hom_dim(a, b) {
                let uf = u.apply(p, &p.basis_morphism(a, b, k));
                weight.actions.push(WeightAction {
                    source: index[&a],
                    target: index[&b],
                    to_source: uf.transpose().kron(&Matrix::identity(field, da)),
                    to_target: Matrix::identity(field, db).kron(&uf),
                });
            }
        }
    }
    let coend = compute_coend_generic(&weight)?;
    let mut cop = BTreeMap::new();
    let mut block_offsets = BTreeMap::new();
    for (k, &a) in gens.iter().enumerate() {
        block_offsets.insert(a, coend.block_offsets[k]);
        cop.insert(a, coend.coprojection(k, weight.blocks[k]));
    }
    Ok(CoendSpace {
        quotient: coend.quotient,
        generators: gens.clone(),
        block_offsets,
        cop,
    })
}

/// Dinaturality of the coprojections and joint spanning of their images.
pub fn verify_coend(inst: &Instance, e: &CoendSpace) -> Report {
    let p = &inst.presentation;
    let u = &inst.functor;
    let field = p.field;
    let mut report = Report::new();
    let mut bad = Vec::new();
    for &a in &e.generators {
        for &b in &e.generators {
            for k in 0..p.hom_dim(a, b) {
                let uf = u.apply(p, &p.basis_morphism(a, b, k));
                let lhs = e.cop[&a].mul(&uf.transpose().kron(&Matrix::identity(field, p.u_dim(a))));
                let rhs = e.cop[&b].mul(&Matrix::identity(field, p.u_dim(b)).kron(&uf));
                if lhs != rhs {
                    bad.push(format!("cop not dinatural at {}", p.homs[&(a, b)][k]));
                }
            }
        }
    }
    report.record("dinaturality", bad);
    let cops: Vec<&Matrix> = e.generators.iter().map(|a| &e.cop[a]).collect();
    let spans = if cops.is_empty() {
        e.dim() == 0
    } else {
        Matrix::hstack(&cops).rank() == e.dim()
    };
    report.record(
        "cop_spanning",
        if spans {
            vec![]
        } else {
            vec!["coprojection images do not span E".into()]
        },
    );
    report
}

/// Density witness for one object: `∫^A C(A,C)⊗U(A) → U(C)` is bijective.
#[derive(Clone, Debug)]
pub struct DensityWitness {
    pub coend_dim: usize,
    pub rank: usize,
    pub target: usize,
}

pub fn density_check(inst: &Instance, c: ObjId) -> Result<DensityWitness, CoendError> {
    let p = &inst.presentation;
    let u = &inst.functor;
    let field = p.field;
    let gens = &inst.generators.generators;
    let index: BTreeMap<ObjId, usize> = gens.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let mut weight = CoendWeight {
        field,
        blocks: gens.iter().map(|&a| p.hom_dim(a, c) * p.u_dim(a)).collect(),
        actions: Vec::new(),
    };
    for &a in gens {
        for &b in gens {
            let (ha, hb) = (p.hom_dim(a, c), p.hom_dim(b, c));
            for k in 0..p.hom_dim(a, b) {
                let f = p.basis_morphism(a, b, k);
                // precomposition C(B,C) → C(A,C), h ↦ h∘f
                let mut pre = Matrix::zeros(field, ha, hb);
                for j in 0..hb {
                    let h = p.basis_morphism(b, c, j);
                    let hf = p.compose(&h, &f).ok_or_else(|| {
                        CoendError::ActionMismatch(format!("missing composite into {}", p.name(c)))
                    })?;
                    for (r, v) in hf.coeffs.into_iter().enumerate() {
                        pre.set(r, j, v);
                    }
                }
                weight.actions.push(WeightAction {
                    source: index[&a],
                    target: index[&b],
                    to_source: pre.kron(&Matrix::identity(field, p.u_dim(a))),
                    to_target: Matrix::identity(field, hb).kron(&u.apply(p, &f)),
                });
            }
        }
    }
    let coend = compute_coend_generic(&weight)?;
    let dc = p.u_dim(c);
    let mut alpha = Matrix::zeros(field, dc, coend.quotient.ambient_dim);
    for (k, &a) in gens.iter().enumerate() {
        let da = p.u_dim(a);
        for h in 0..p.hom_dim(a, c) {
            let uh = u.apply(p, &p.basis_morphism(a, c, h));
            for i in 0..da {
                for r in 0..dc {
                    alpha.set(r, coend.block_offsets[k] + h * da + i, uh.get(r, i).clone());
                }
            }
        }
    }
    let target = QuotientSpace::trivial(field, dc);
    let induced = induced_on_quotient(&coend.quotient, &target, &alpha)?;
    let rank = induced.rank();
    let witness = DensityWitness {
        coend_dim: coend.quotient.dim,
        rank,
        target: dc,
    };
    if coend.quotient.dim == dc && rank == dc {
        Ok(witness)
    } else {
        Err(CoendError::NotDense {
            object: p.name(c).to_string(),
            rank,
            target: dc,
        })
    }
}

/// Density for every object of the presentation.
pub fn density_report(inst: &Instance) -> Report {
    let mut report = Report::new();
    let mut bad = Vec::new();
    for c in 0..inst.presentation.objects.len() {
        if let Err(err) = density_check(inst, c) {
            bad.push(err.to_string());
        }
    }
    report.record("density", bad);
    report
}

/// `cop_C` as a matrix `U(C)*⊗U(C) → E`, through a given resolution.
pub fn cop_via(inst: &Instance, e: &CoendSpace, c: ObjId, res: &Resolution) -> Matrix {
    let p = &inst.presentation;
    let field = p.field;
    let dc = p.u_dim(c);
    let mut out = Matrix::zeros(field, e.dim(), dc * dc);
    for term in &res.terms {
        let ug = inst.functor.apply(p, &term.inclusion);
        let leg = ug.transpose().kron(&term.lift);
        out = out.add(&e.cop[&term.generator].mul(&leg));
    }
    out
}

/// `cop_C` for a generator or a resolved object.
pub fn cop_general_matrix(inst: &Instance, e: &CoendSpace, c: ObjId) -> Result<Matrix, CoendError> {
    if let Some(m) = e.cop.get(&c) {
        return Ok(m.clone());
    }
    let res = inst
        .generators
        .resolutions
        .get(&c)
        .ok_or_else(|| CoendError::NoResolution(inst.presentation.name(c).to_string()))?;
    Ok(cop_via(inst, e, c, res))
}

/// Image of one element of `U(C)*⊗U(C)` in `E`.
pub fn cop_general(
    inst: &Instance,
    e: &CoendSpace,
    c: ObjId,
    elt: &[crate::exactla::Scalar],
) -> Result<Vec<crate::exactla::Scalar>, CoendError> {
    Ok(cop_general_matrix(inst, e, c)?.apply(elt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn constant_weight_without_actions() {
        let w = CoendWeight {
            field: q(),
            blocks: vec![3],
            actions: vec![WeightAction {
                source: 0,
                target: 0,
                to_source: Matrix::identity(q(), 3),
                to_target: Matrix::identity(q(), 3),
            }],
        };
        let c = compute_coend_generic(&w).unwrap();
        assert_eq!(c.quotient.dim, 3);
    }

    #[test]
    fn rank_one_identification() {
        let w = CoendWeight {
            field: q(),
            blocks: vec![2, 2],
            actions: vec![WeightAction {
                source: 0,
                target: 1,
                to_source: Matrix::from_i64_rows(q(), &[vec![1], vec![0]]),
                to_target: Matrix::from_i64_rows(q(), &[vec![0], vec![1]]),
            }],
        };
        let c = compute_coend_generic(&w).unwrap();
        assert_eq!(c.quotient.dim, 3);
        assert_eq!(c.coprojection(0, 2).col(0), c.coprojection(1, 2).col(1));
    }

    #[test]
    fn action_mismatch() {
        let w = CoendWeight {
            field: q(),
            blocks: vec![2],
            actions: vec![WeightAction {
                source: 0,
                target: 0,
                to_source: Matrix::identity(q(), 3),
                to_target: Matrix::identity(q(), 3),
            }],
        };
        assert!(matches!(
            compute_coend_generic(&w),
            Err(CoendError::ActionMismatch(_))
        ));
    }
}
