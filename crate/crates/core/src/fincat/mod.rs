//! Finite presentations of k-linear categories with a partial strict tensor
//! product, a split-semigroupal functor `U` into vector spaces, and the
//! generator data (antipode functor, duality isos, evaluation maps and
//! density witnesses) consumed by the coend construction.

mod sparse;
mod validate;

use std::collections::BTreeMap;

use crate::exactla::{Field, Matrix, Scalar};

pub use validate::{check_e1_e2, validate_category, validate_generator_data, validate_u};

pub type ObjId = usize;

/// Coefficients of a morphism over a hom basis.
pub type Coeffs = Vec<Scalar>;

/// Structure constants: `table[g][f]` holds the coefficients of `g ∘ f`
/// (or `f ⊗ g` for tensor tables) in the target hom basis.
pub type ConstTable = Vec<Vec<Coeffs>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectDecl {
    pub name: String,
    pub u_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatPresentation {
    pub field: Field,
    pub objects: Vec<ObjectDecl>,
    /// Basis names of each nonzero hom space, keyed by (source, target).
    pub homs: BTreeMap<(ObjId, ObjId), Vec<String>>,
    pub identities: BTreeMap<ObjId, Coeffs>,
    /// Keyed by (a, b, c); `table[g][f]` for `g ∈ hom(b,c)`, `f ∈ hom(a,b)`.
    pub composition: BTreeMap<(ObjId, ObjId, ObjId), ConstTable>,
    pub tensor_objects: BTreeMap<(ObjId, ObjId), ObjId>,
    /// Keyed by (a, b, a2, b2); `table[f][g]` for `f ∈ hom(a,a2)`, `g ∈ hom(b,b2)`,
    /// coefficients in `hom(a⊗b, a2⊗b2)`.
    pub tensor_morphisms: BTreeMap<(ObjId, ObjId, ObjId, ObjId), ConstTable>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: ObjId,
    pub target: ObjId,
    pub coeffs: Coeffs,
}

impl CatPresentation {
    pub fn new(field: Field) -> Self {
        CatPresentation {
            field,
            objects: Vec::new(),
            homs: BTreeMap::new(),
            identities: BTreeMap::new(),
            composition: BTreeMap::new(),
            tensor_objects: BTreeMap::new(),
            tensor_morphisms: BTreeMap::new(),
        }
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o.name == name)
    }

    pub fn name(&self, id: ObjId) -> &str {
        &self.objects[id].name
    }

    pub fn u_dim(&self, id: ObjId) -> usize {
        self.objects[id].u_dim
    }

    pub fn hom_dim(&self, a: ObjId, b: ObjId) -> usize {
        self.homs.get(&(a, b)).map_or(0, Vec::len)
    }

    pub fn tensor(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        self.tensor_objects.get(&(a, b)).copied()
    }

    pub fn identity(&self, a: ObjId) -> Morphism {
        Morphism {
            source: a,
            target: a,
            coeffs: self
                .identities
                .get(&a)
                .cloned()
                .unwrap_or_else(|| vec![self.field.zero(); self.hom_dim(a, a)]),
        }
    }

    pub fn basis_morphism(&self, a: ObjId, b: ObjId, k: usize) -> Morphism {
        let mut coeffs = vec![self.field.zero(); self.hom_dim(a, b)];
        coeffs[k] = self.field.one();
        Morphism {
            source: a,
            target: b,
            coeffs,
        }
    }

    pub fn zero_morphism(&self, a: ObjId, b: ObjId) -> Morphism {
        Morphism {
            source: a,
            target: b,
            coeffs: vec![self.field.zero(); self.hom_dim(a, b)],
        }
    }

    /// `g ∘ f` expanded bilinearly through the composition table.
    /// Returns `None` when a needed table is missing or malformed.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Option<Morphism> {
        if f.target != g.source {
            return None;
        }
        let (a, b, c) = (f.source, f.target, g.target);
        let out_dim = self.hom_dim(a, c);
        let mut out = vec![self.field.zero(); out_dim];
        if g.coeffs.iter().all(Scalar::is_zero) || f.coeffs.iter().all(Scalar::is_zero) {
            return Some(Morphism {
                source: a,
                target: c,
                coeffs: out,
            });
        }
        let table = self.composition.get(&(a, b, c))?;
        bilinear(table, &g.coeffs, &f.coeffs, &mut out)?;
        Some(Morphism {
            source: a,
            target: c,
            coeffs: out,
        })
    }

    /// `f ⊗ g` through the tensor-morphism table, when both tensor objects exist.
    pub fn tensor_mor(&self, f: &Morphism, g: &Morphism) -> Option<Morphism> {
        let s = self.tensor(f.source, g.source)?;
        let t = self.tensor(f.target, g.target)?;
        let mut out = vec![self.field.zero(); self.hom_dim(s, t)];
        if f.coeffs.iter().all(Scalar::is_zero) || g.coeffs.iter().all(Scalar::is_zero) {
            return Some(Morphism {
                source: s,
                target: t,
                coeffs: out,
            });
        }
        let table = self
            .tensor_morphisms
            .get(&(f.source, g.source, f.target, g.target))?;
        bilinear(table, &f.coeffs, &g.coeffs, &mut out)?;
        Some(Morphism {
            source: s,
            target: t,
            coeffs: out,
        })
    }
}

fn bilinear(table: &ConstTable, x: &[Scalar], y: &[Scalar], out: &mut [Scalar]) -> Option<()> {
    if table.len() != x.len() {
        return None;
    }
    for (i, xi) in x.iter().enumerate() {
        if table[i].len() != y.len() {
            return None;
        }
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let entry = &table[i][j];
            if entry.len() != out.len() {
                return None;
            }
            let w = xi * yj;
            for (o, e) in out.iter_mut().zip(entry) {
                if !e.is_zero() {
                    *o = &*o + &(&w * e);
                }
            }
        }
    }
    Some(())
}

/// The functor `U` on hom bases plus the split-semigroupal structure maps.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UFunctorData {
    /// Per hom, one matrix `U_dim(target) × U_dim(source)` per basis element.
    pub on_morphisms: BTreeMap<(ObjId, ObjId), Vec<Matrix>>,
    /// `r_{A,B}: U(A)⊗U(B) → U(A⊗B)` per tabulated pair.
    pub r: BTreeMap<(ObjId, ObjId), Matrix>,
    /// `i_{A,B}: U(A⊗B) → U(A)⊗U(B)` per tabulated pair.
    pub i: BTreeMap<(ObjId, ObjId), Matrix>,
}

impl UFunctorData {
    /// `U(m)`; basis matrices that are missing count as zero.
    pub fn apply(&self, p: &CatPresentation, m: &Morphism) -> Matrix {
        let mut out = Matrix::zeros(p.field, p.u_dim(m.target), p.u_dim(m.source));
        if let Some(basis) = self.on_morphisms.get(&(m.source, m.target)) {
            for (c, b) in m.coeffs.iter().zip(basis) {
                if !c.is_zero() && b.shape() == out.shape() {
                    out = out.add(&b.scale(c));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTerm {
    pub generator: ObjId,
    /// `g_j: A_j → C`
    pub inclusion: Morphism,
    /// `U(C) → U(A_j)`
    pub lift: Matrix,
}

/// A finite family with `Σ_j U(g_j) · lift_j = 1_{U(C)}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Resolution {
    pub terms: Vec<ResolutionTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorData {
    pub generators: Vec<ObjId>,
    pub star_obj: BTreeMap<ObjId, ObjId>,
    /// For each generator hom (A, B), the coefficients of `f*` in `hom(B*, A*)`
    /// for every basis element `f`.
    pub star_mor: BTreeMap<(ObjId, ObjId), Vec<Coeffs>>,
    /// `u_A: U(A*) → U(A)*`
    pub u: BTreeMap<ObjId, Matrix>,
    /// `e_A: (A⊗A*)⊗A → A`
    pub e: BTreeMap<ObjId, Morphism>,
    pub resolutions: BTreeMap<ObjId, Resolution>,
}

impl GeneratorData {
    pub fn is_generator(&self, a: ObjId) -> bool {
        self.generators.contains(&a)
    }

    /// The strictly bracketed triple `(A⊗A*)⊗A` and the middle pair `A⊗A*`.
    pub fn triple(&self, p: &CatPresentation, a: ObjId) -> Option<(ObjId, ObjId)> {
        let star = *self.star_obj.get(&a)?;
        let pair = p.tensor(a, star)?;
        Some((pair, p.tensor(pair, a)?))
    }
}

/// A complete instance: presentation, functor and generator data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub presentation: CatPresentation,
    pub functor: UFunctorData,
    pub generators: GeneratorData,
    /// Free-form key/value metadata (instance name, designated checker for mutants).
    pub meta: BTreeMap<String, String>,
}

impl Instance {
    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn name(&self) -> &str {
        self.meta.get("name").map_or("unnamed", String::as_str)
    }
}
