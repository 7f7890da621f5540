//! Builders for finite instances: group convolution over a one-object base,
//! promonoidal convolution over a finite discrete base, bundled examples, and
//! mutation operators for checker-sensitivity runs.

mod bundled;
mod group;
mod mutate;
mod promonoidal;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coend::CoendError;
use crate::exactla::{Field, LinAlgError, Matrix, Scalar, SpanCoords};
use crate::fincat::{Instance, ObjId, Resolution, ResolutionTerm};

pub use bundled::{bundled, BUNDLED_NAMES};
pub use group::{build_group_instance, GroupSpec, RepSpec};
pub use mutate::{mutate_instance, Mutant, Mutation, MutationError};
pub use promonoidal::{
    build_promonoidal_instance, regrouped_resolution, PresheafSpec, PromonoidalSpec,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("representation {rep} is not a homomorphism at {element}")]
    Intertwiner { rep: String, element: String },
    #[error("closure failure: {0}")]
    Closure(String),
    #[error("retraction failure: {0}")]
    Retract(String),
    #[error("coupling failure: {0}")]
    Coupling(String),
    #[error(transparent)]
    Coend(#[from] CoendError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Hom basis as flattened columns, with a solver for coordinates.
pub(crate) struct HomBasis {
    pub mats: Vec<Matrix>,
    coords: Option<SpanCoords>,
}

impl HomBasis {
    pub fn new(
        field: Field,
        rows: usize,
        cols: usize,
        mats: Vec<Matrix>,
    ) -> Result<Self, LinAlgError> {
        let mut basis = Matrix::zeros(field, rows * cols, mats.len());
        for (k, m) in mats.iter().enumerate() {
            for (r, v) in m.entries().iter().enumerate() {
                basis.set(r, k, v.clone());
            }
        }
        let coords = if mats.is_empty() {
            None
        } else {
            Some(SpanCoords::new(basis)?)
        };
        Ok(HomBasis { coords, mats })
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn coords(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        match &self.coords {
            None => m.is_zero().then(Vec::new),
            Some(c) => c.coords(m.entries()),
        }
    }
}

/// A second resolution of the same object obtained by an invertible change of
/// inclusions within each generator, compensated on the lifts.
pub fn rebased_resolution(inst: &Instance, res: &Resolution) -> Resolution {
    let p = &inst.presentation;
    let field = p.field;
    let mut groups: BTreeMap<ObjId, Vec<&ResolutionTerm>> = BTreeMap::new();
    for t in &res.terms {
        groups.entry(t.generator).or_default().push(t);
    }
    let mut terms = Vec::new();
    for (gen, group) in groups {
        let m = group.len();
        // upper unitriangular mixing for m > 1, scaling by 2 for singletons
        let t = if m == 1 {
            Matrix::from_i64_rows(field, &[vec![2]])
        } else {
            Matrix::from_fn(
                field,
                m,
                m,
                |r, c| if r <= c { field.one() } else { field.zero() },
            )
        };
        let t_inv = t.inverse().expect("unitriangular");
        for l in 0..m {
            let mut coeffs = vec![field.zero(); group[0].inclusion.coeffs.len()];
            let mut lift = Matrix::zeros(field, group[0].lift.rows(), group[0].lift.cols());
            for k in 0..m {
                let tk = t.get(k, l);
                if !tk.is_zero() {
                    for (o, c) in coeffs.iter_mut().zip(&group[k].inclusion.coeffs) {
                        *o = &*o + &(tk * c);
                    }
                }
                let sk = t_inv.get(l, k);
                if !sk.is_zero() {
                    lift = lift.add(&group[k].lift.scale(sk));
                }
            }
            terms.push(ResolutionTerm {
                generator: gen,
                inclusion: crate::fincat::Morphism {
                    source: gen,
                    target: group[0].inclusion.target,
                    coeffs,
                },
                lift,
            });
        }
    }
    Resolution { terms }
}

/// Objects, faithful hom bases and tensor data from which a presentation is tabulated.
pub(crate) struct Skeleton {
    pub field: Field,
    pub objects: Vec<(String, usize)>,
    pub homs: BTreeMap<(ObjId, ObjId), HomBasis>,
    pub tensor_objects: BTreeMap<(ObjId, ObjId), ObjId>,
    pub r: BTreeMap<(ObjId, ObjId), Matrix>,
    pub i: BTreeMap<(ObjId, ObjId), Matrix>,
}

impl Skeleton {
    pub fn hom(&self, a: ObjId, b: ObjId) -> Option<&HomBasis> {
        self.homs.get(&(a, b)).filter(|h| h.len() > 0)
    }

    /// Structure constants from matrix products; `U(f⊗g) = r·(Uf⊗Ug)·i`.
    pub fn assemble(
        &self,
    ) -> Result<(crate::fincat::CatPresentation, crate::fincat::UFunctorData), InstanceError> {
        use crate::fincat::{CatPresentation, ObjectDecl, UFunctorData};
        let field = self.field;
        let mut p = CatPresentation::new(field);
        p.objects = self
            .objects
            .iter()
            .map(|(name, d)| ObjectDecl {
                name: name.clone(),
                u_dim: *d,
            })
            .collect();
        let mut u = UFunctorData::default();
        for (&(a, b), h) in &self.homs {
            if h.len() == 0 {
                continue;
            }
            let names = (0..h.len())
                .map(|k| format!("{}>{}.{k}", self.objects[a].0, self.objects[b].0))
                .collect();
            p.homs.insert((a, b), names);
            u.on_morphisms.insert((a, b), h.mats.clone());
        }
        for a in 0..self.objects.len() {
            let d = self.objects[a].1;
            let coeffs = match self.hom(a, a) {
                Some(h) => h.coords(&Matrix::identity(field, d)).ok_or_else(|| {
                    InstanceError::Closure(format!(
                        "identity of {} is not tabulated",
                        self.objects[a].0
                    ))
                })?,
                None if d == 0 => Vec::new(),
                None => {
                    return Err(InstanceError::Closure(format!(
                        "{} has no endomorphisms",
                        self.objects[a].0
                    )))
                }
            };
            p.identities.insert(a, coeffs);
        }
        let keys: Vec<(ObjId, ObjId)> = self
            .homs
            .keys()
            .filter(|k| self.hom(k.0, k.1).is_some())
            .copied()
            .collect();
        for &(a, b) in &keys {
            for &(b2, c) in &keys {
                if b2 != b {
                    continue;
                }
                let (hf, hg, hgf) = (&self.homs[&(a, b)], &self.homs[&(b, c)], self.hom(a, c));
                let mut table = Vec::with_capacity(hg.len());
                for g in &hg.mats {
                    let mut row = Vec::with_capacity(hf.len());
                    for f in &hf.mats {
                        let gf = g.mul(f);
                        let coeffs = match hgf {
                            Some(h) => h.coords(&gf),
                            None => gf.is_zero().then(Vec::new),
                        };
                        row.push(coeffs.ok_or_else(|| {
                            InstanceError::Closure(format!(
                                "composite {} → {} → {} leaves the hom basis",
                                self.objects[a].0, self.objects[b].0, self.objects[c].0
                            ))
                        })?);
                    }
                    table.push(row);
                }
                p.composition.insert((a, b, c), table);
            }
        }
        p.tensor_objects = self.tensor_objects.clone();
        for (&(a1, b1), &t1) in &self.tensor_objects {
            for (&(a2, b2), &t2) in &self.tensor_objects {
                let (Some(hf), Some(hg)) = (self.hom(a1, a2), self.hom(b1, b2)) else {
                    continue;
                };
                let target = self.hom(t1, t2);
                let mut table = Vec::with_capacity(hf.len());
                for f in &hf.mats {
                    let mut row = Vec::with_capacity(hg.len());
                    for g in &hg.mats {
                        let fg = self.r[&(a2, b2)].mul(&f.kron(g)).mul(&self.i[&(a1, b1)]);
                        let coeffs = match target {
                            Some(h) => h.coords(&fg),
                            None => fg.is_zero().then(Vec::new),
                        };
                        row.push(coeffs.ok_or_else(|| {
                            InstanceError::Closure(format!(
                                "tensor of morphisms {}⊗{} → {}⊗{} is not tabulated",
                                self.objects[a1].0,
                                self.objects[b1].0,
                                self.objects[a2].0,
                                self.objects[b2].0
                            ))
                        })?);
                    }
                    table.push(row);
                }
                p.tensor_morphisms.insert((a1, b1, a2, b2), table);
            }
        }
        u.r = self.r.clone();
        u.i = self.i.clone();
        Ok((p, u))
    }
}
