use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coend::compute_endv;
use crate::exactla::Matrix;
use crate::fincat::Instance;
use crate::vncore::{build_core, VnCore};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    BreakSplit,
    BreakUNaturality,
    ZeroS,
    ScaleCoupling,
    CorruptComposition,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::BreakSplit,
        Mutation::BreakUNaturality,
        Mutation::ZeroS,
        Mutation::ScaleCoupling,
        Mutation::CorruptComposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::BreakSplit => "BreakSplit",
            Mutation::BreakUNaturality => "BreakUNaturality",
            Mutation::ZeroS => "ZeroS",
            Mutation::ScaleCoupling => "ScaleCoupling",
            Mutation::CorruptComposition => "CorruptComposition",
        }
    }

    /// The pipeline stage and the check within it that must catch the mutation.
    pub fn designated(self) -> (&'static str, &'static str) {
        match self {
            Mutation::BreakSplit => ("validate_u", "splitness"),
            Mutation::BreakUNaturality => ("validate_generator_data", "u_naturality"),
            Mutation::ZeroS => ("check", "vn_axiom"),
            Mutation::ScaleCoupling => ("validate_generator_data", "tau_diagram"),
            Mutation::CorruptComposition => ("validate_category", "unit_law"),
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = MutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| MutationError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MutationError {
    #[error("unknown mutation {0}")]
    Unknown(String),
    #[error("{mutation} does not apply to this instance: {reason}")]
    NotApplicable { mutation: Mutation, reason: String },
    #[error("base instance does not build: {0}")]
    Build(String),
}

/// A corrupted instance, or a corrupted core when the mutation acts after building.
#[derive(Clone, Debug)]
pub enum Mutant {
    Instance(Instance),
    Core(VnCore),
}

pub fn mutate_instance(base: &Instance, mutation: Mutation) -> Result<Mutant, MutationError> {
    let not_applicable = |reason: &str| MutationError::NotApplicable {
        mutation,
        reason: reason.to_string(),
    };
    let mut inst = base.clone();
    let p = &mut inst.presentation;
    let field = p.field;
    match mutation {
        Mutation::BreakSplit => {
            let key = p
                .tensor_objects
                .iter()
                .find(|(_, &t)| p.objects[t].u_dim > 0)
                .map(|(k, _)| *k)
                .ok_or_else(|| not_applicable("no nonzero tensor product"))?;
            let half = field.ratio(1, 2);
            let i = inst
                .functor
                .i
                .get_mut(&key)
                .ok_or_else(|| not_applicable("i missing"))?;
            *i = i.scale(&half);
        }
        Mutation::BreakUNaturality => {
            let g = &inst.generators;
            let a = g
                .generators
                .iter()
                .copied()
                .find(|&a| {
                    g.generators
                        .iter()
                        .any(|&b| b != a && (p.hom_dim(a, b) > 0 || p.hom_dim(b, a) > 0))
                })
                .ok_or_else(|| not_applicable("no morphism between distinct generators"))?;
            let two = field.from_i64(2);
            let u = inst.generators.u.get_mut(&a).expect("generator has u");
            *u = u.scale(&two);
        }
        Mutation::ScaleCoupling => {
            let a = *inst
                .generators
                .generators
                .first()
                .ok_or_else(|| not_applicable("no generators"))?;
            let two = field.from_i64(2);
            let e = inst
                .generators
                .e
                .get_mut(&a)
                .ok_or_else(|| not_applicable("e missing"))?;
            for c in &mut e.coeffs {
                *c = &*c * &two;
            }
        }
        Mutation::CorruptComposition => {
            let a = (0..p.objects.len())
                .find(|&a| p.hom_dim(a, a) == 1)
                .ok_or_else(|| {
                    not_applicable("no object with a one-dimensional endomorphism space")
                })?;
            let two = field.from_i64(2);
            let table = p
                .composition
                .get_mut(&(a, a, a))
                .expect("endomorphisms compose");
            for c in &mut table[0][0] {
                *c = &*c * &two;
            }
        }
        Mutation::ZeroS => {
            let e = compute_endv(base).map_err(|err| MutationError::Build(err.to_string()))?;
            let mut core =
                build_core(base, &e).map_err(|err| MutationError::Build(err.to_string()))?;
            core.s = Matrix::zeros(core.field, core.dim, core.dim);
            return Ok(Mutant::Core(core));
        }
    }
    let (stage, check) = mutation.designated();
    inst.meta.insert("mutation".into(), mutation.name().into());
    inst.meta.insert("expect_stage".into(), stage.into());
    inst.meta.insert("expect_check".into(), check.into());
    Ok(Mutant::Instance(inst))
}
