use std::collections::BTreeMap;

use super::{HomBasis, InstanceError, Skeleton};
use crate::exactla::{Field, Matrix, Scalar};
use crate::fincat::{
    validate_generator_data, GeneratorData, Instance, Morphism, ObjId, Resolution, ResolutionTerm,
};

/// A finite discrete base `X` with an involution and a diagonal promonoidal structure.
///
/// `p(x,y,z)` must be a retract of `X(z,x)⊗X(z,y)`, which for discrete `X`
/// vanishes off the diagonal, so only `p(z,z,z)` may be nonzero and it is at
/// most one-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromonoidalSpec {
    pub points: Vec<String>,
    /// `x ↦ x*`; must be an involution.
    pub dual: Vec<usize>,
    /// `dim p(x,y,z)` for the nonzero entries.
    pub p_dims: BTreeMap<(usize, usize, usize), usize>,
    /// Per point `z` with `p(z,z,z) = k`: the pair `(i_z, r_z)` of the retraction.
    pub retraction: BTreeMap<usize, (Scalar, Scalar)>,
    /// `dim j(z) = dim B(z, I)`; carried, used only as the codomain of the coupling.
    pub unit_dims: Vec<usize>,
    /// Composition constant `B(z⊗z, I) ⊗ p(z,z,z) → j(z)` per point.
    pub composition: BTreeMap<usize, Scalar>,
}

/// A finite-dimensional presheaf on discrete `X` with its dual coupling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafSpec {
    pub name: String,
    pub dims: Vec<usize>,
    /// Per point `z`: `χ_z : A(z*)*⊗A(z) → B(z⊗z, I)` as a `1 × d(z*)d(z)` row.
    pub coupling: BTreeMap<usize, Matrix>,
}

struct Layout {
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl Layout {
    fn new(dims: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &d in &dims {
            offsets.push(total);
            total += d;
        }
        Layout { dims, offsets }
    }

    fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    fn point_of(&self, idx: usize) -> (usize, usize) {
        let x = (0..self.dims.len())
            .rev()
            .find(|&x| self.offsets[x] <= idx && self.dims[x] > 0)
            .expect("index in range");
        (x, idx - self.offsets[x])
    }
}

impl PromonoidalSpec {
    fn check(&self, field: Field) -> Result<(), InstanceError> {
        let n = self.points.len();
        if self.dual.len() != n || self.unit_dims.len() != n {
            return Err(InstanceError::InvalidSpec(
                "duality or unit table has the wrong size".into(),
            ));
        }
        for x in 0..n {
            if self.dual[x] >= n || self.dual[self.dual[x]] != x {
                return Err(InstanceError::InvalidSpec(format!(
                    "{}** ≠ {}",
                    self.points[x], self.points[x]
                )));
            }
        }
        for (&(x, y, z), &d) in &self.p_dims {
            if x >= n || y >= n || z >= n {
                return Err(InstanceError::InvalidSpec(
                    "p-table names a missing point".into(),
                ));
            }
            if d > 0 && !(x == z && y == z) {
                return Err(InstanceError::Retract(format!(
                    "p({},{},{}) is not a retract of X({},{})⊗X({},{}) = 0",
                    self.points[x],
                    self.points[y],
                    self.points[z],
                    self.points[z],
                    self.points[x],
                    self.points[z],
                    self.points[y]
                )));
            }
            if d > 1 {
                return Err(InstanceError::Retract(format!(
                    "p at {} exceeds X(z,z)⊗X(z,z)",
                    self.points[z]
                )));
            }
            if d == 1 {
                let (i, r) = self.retraction.get(&z).ok_or_else(|| {
                    InstanceError::Retract(format!("no retraction at {}", self.points[z]))
                })?;
                if !field.contains(i) || !field.contains(r) || !(r * i).is_one() {
                    return Err(InstanceError::Retract(format!(
                        "r·i ≠ 1 at {}",
                        self.points[z]
                    )));
                }
            }
        }
        Ok(())
    }

    fn active(&self, z: usize) -> bool {
        self.p_dims.get(&(z, z, z)).copied().unwrap_or(0) == 1
    }

    fn iota(&self, z: usize) -> &Scalar {
        &self.retraction[&z].0
    }

    fn rho(&self, z: usize) -> &Scalar {
        &self.retraction[&z].1
    }

    /// Day convolution, with the coend over `(x, y)` computed generically.
    fn convolve(
        &self,
        field: Field,
        f: &[usize],
        g: &[usize],
    ) -> Result<Vec<usize>, InstanceError> {
        let n = self.points.len();
        let mut out = Vec::with_capacity(n);
        for z in 0..n {
            let mut blocks = Vec::new();
            let mut actions = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    let d = self.p_dims.get(&(x, y, z)).copied().unwrap_or(0) * f[x] * g[y];
                    // discrete X: only identity morphisms act
                    actions.push(crate::coend::WeightAction {
                        source: blocks.len(),
                        target: blocks.len(),
                        to_source: Matrix::identity(field, d),
                        to_target: Matrix::identity(field, d),
                    });
                    blocks.push(d);
                }
            }
            let weight = crate::coend::CoendWeight {
                field,
                blocks,
                actions,
            };
            out.push(crate::coend::compute_coend_generic(&weight)?.quotient.dim);
        }
        Ok(out)
    }
}

/// Builds the promonoidal-convolution instance on `generators`.
///
/// Objects are presheaves, identified by their dimension vectors; the
/// generators come first, then every distinct tensor product needed for the
/// generator pairs and the triples `(A⊗A*)⊗A`.
pub fn build_promonoidal_instance(
    x: &PromonoidalSpec,
    generators: &[PresheafSpec],
    field: Field,
) -> Result<Instance, InstanceError> {
    x.check(field)?;
    let npts = x.points.len();
    let mut names: Vec<String> = Vec::new();
    let mut dims: Vec<Vec<usize>> = Vec::new();
    for a in generators {
        if a.dims.len() != npts {
            return Err(InstanceError::InvalidSpec(format!(
                "{} has the wrong number of points",
                a.name
            )));
        }
        if names.contains(&a.name) || dims.contains(&a.dims) {
            return Err(InstanceError::InvalidSpec(format!(
                "duplicate presheaf {}",
                a.name
            )));
        }
        names.push(a.name.clone());
        dims.push(a.dims.clone());
    }
    let gens: Vec<ObjId> = (0..generators.len()).collect();

    let mut star_obj = BTreeMap::new();
    for &a in &gens {
        let want: Vec<usize> = (0..npts).map(|z| dims[a][x.dual[z]]).collect();
        let b = dims.iter().position(|d| *d == want).ok_or_else(|| {
            InstanceError::Closure(format!(
                "the dual of {} is not among the generators",
                names[a]
            ))
        })?;
        star_obj.insert(a, b);
    }

    let mut tensor_objects = BTreeMap::new();
    let intern =
        |names: &mut Vec<String>, dims: &mut Vec<Vec<usize>>, d: Vec<usize>, name: String| {
            match dims.iter().position(|e| *e == d) {
                Some(k) => k,
                None => {
                    names.push(name);
                    dims.push(d);
                    dims.len() - 1
                }
            }
        };
    for &a in &gens {
        for &b in &gens {
            let d = x.convolve(field, &dims[a], &dims[b])?;
            let name = format!("{}⊗{}", names[a], names[b]);
            let t = intern(&mut names, &mut dims, d, name);
            tensor_objects.insert((a, b), t);
        }
    }
    for &a in &gens {
        let pair = tensor_objects[&(a, star_obj[&a])];
        let d = x.convolve(field, &dims[pair], &dims[a])?;
        let name = format!("({})⊗{}", names[pair], names[a]);
        let t = intern(&mut names, &mut dims, d, name);
        tensor_objects.insert((pair, a), t);
    }

    let layouts: Vec<Layout> = dims.iter().map(|d| Layout::new(d.clone())).collect();
    let n = names.len();
    let mut homs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            homs.insert(
                (a, b),
                HomBasis::new(
                    field,
                    layouts[b].total(),
                    layouts[a].total(),
                    elementary(field, &layouts[a], &layouts[b]),
                )?,
            );
        }
    }
    let mut r = BTreeMap::new();
    let mut i = BTreeMap::new();
    for (&(a, b), &t) in &tensor_objects {
        let (la, lb, lt) = (&layouts[a], &layouts[b], &layouts[t]);
        let mut rm = Matrix::zeros(field, lt.total(), la.total() * lb.total());
        let mut im = Matrix::zeros(field, la.total() * lb.total(), lt.total());
        for p in 0..la.total() {
            let (xa, pa) = la.point_of(p);
            for q in 0..lb.total() {
                let (xb, qb) = lb.point_of(q);
                if xa != xb || !x.active(xa) {
                    continue;
                }
                let row = lt.offsets[xa] + pa * lb.dims[xa] + qb;
                rm.set(row, p * lb.total() + q, x.rho(xa).clone());
                im.set(p * lb.total() + q, row, x.iota(xa).clone());
            }
        }
        r.insert((a, b), rm);
        i.insert((a, b), im);
    }
    let skeleton = Skeleton {
        field,
        objects: names
            .iter()
            .cloned()
            .zip(layouts.iter().map(Layout::total))
            .collect(),
        homs,
        tensor_objects: tensor_objects.clone(),
        r,
        i,
    };
    let (presentation, functor) = skeleton.assemble()?;

    // u_A: U(A*) → U(A)*, block z of A* onto block z* of A*.
    let mut u_iso = BTreeMap::new();
    for &a in &gens {
        let (la, ls) = (&layouts[a], &layouts[star_obj[&a]]);
        let mut u = Matrix::zeros(field, la.total(), ls.total());
        for z in 0..npts {
            for k in 0..ls.dims[z] {
                u.set(la.offsets[x.dual[z]] + k, ls.offsets[z] + k, field.one());
            }
        }
        u_iso.insert(a, u);
    }

    let mut star_mor = BTreeMap::new();
    for &a in &gens {
        for &b in &gens {
            let Some(h) = skeleton.hom(a, b) else {
                continue;
            };
            let target = skeleton.hom(star_obj[&b], star_obj[&a]);
            let u_a_inv = u_iso[&a].inverse().expect("u is a permutation");
            let mut rows = Vec::new();
            for f in &h.mats {
                let fs = u_a_inv.mul(&f.transpose()).mul(&u_iso[&b]);
                rows.push(target.and_then(|t| t.coords(&fs)).ok_or_else(|| {
                    InstanceError::Closure(format!(
                        "dual of a morphism {} → {} is not natural",
                        names[a], names[b]
                    ))
                })?);
            }
            star_mor.insert((a, b), rows);
        }
    }

    // e_A at z: a⊗β⊗b ↦ κ_z·χ_z(β⊗b)·a
    let mut e_maps = BTreeMap::new();
    for &a in &gens {
        let spec = &generators[a];
        let s = star_obj[&a];
        let pair = tensor_objects[&(a, s)];
        let triple = tensor_objects[&(pair, a)];
        let (la, lt) = (&layouts[a], &layouts[triple]);
        let mut ue = Matrix::zeros(field, la.total(), lt.total());
        for z in 0..npts {
            let (da, ds) = (la.dims[z], layouts[s].dims[z]);
            if lt.dims[z] == 0 {
                continue;
            }
            let chi = spec.coupling.get(&z).ok_or_else(|| {
                InstanceError::Coupling(format!("{} has no coupling at {}", spec.name, x.points[z]))
            })?;
            if chi.shape() != (1, ds * da) {
                return Err(InstanceError::Coupling(format!(
                    "coupling of {} at {} is misshapen",
                    spec.name, x.points[z]
                )));
            }
            let kappa = x
                .composition
                .get(&z)
                .cloned()
                .unwrap_or_else(|| field.zero());
            for p in 0..da {
                for q in 0..ds * da {
                    let v = &kappa * chi.get(0, q);
                    if !v.is_zero() {
                        ue.set(la.offsets[z] + p, lt.offsets[z] + p * ds * da + q, v);
                    }
                }
            }
        }
        let coeffs = skeleton
            .hom(triple, a)
            .and_then(|h| h.coords(&ue))
            .ok_or_else(|| {
                InstanceError::Coupling(format!("ê for {} is not natural", spec.name))
            })?;
        e_maps.insert(
            a,
            Morphism {
                source: triple,
                target: a,
                coeffs,
            },
        );
    }

    let mut resolutions = BTreeMap::new();
    for t in gens.len()..n {
        resolutions.insert(
            t,
            pointwise_resolution(&skeleton, &layouts, &gens, t, false)?,
        );
    }
    let generators_data = GeneratorData {
        generators: gens,
        star_obj,
        star_mor,
        u: u_iso,
        e: e_maps,
        resolutions,
    };
    let report = validate_generator_data(&presentation, &functor, &generators_data);
    for check in ["tau_diagram", "rho_diagram"] {
        if report.failed(check) {
            let detail = report
                .outcomes
                .iter()
                .find(|o| o.check == check)
                .map(|o| o.detail.clone());
            return Err(InstanceError::Coupling(detail.unwrap_or_default()));
        }
    }
    let mut meta = BTreeMap::new();
    meta.insert("kind".to_string(), "promonoidal".to_string());
    meta.insert("points".to_string(), npts.to_string());
    for (name, d) in names.iter().zip(&dims) {
        let list: Vec<String> = d.iter().map(usize::to_string).collect();
        meta.insert(format!("dims.{name}"), list.join(","));
    }
    Ok(Instance {
        presentation,
        functor,
        generators: generators_data,
        meta,
    })
}

/// Elementary matrices `E_{ij}` at each point, as maps `U(a) → U(b)`.
fn elementary(field: Field, la: &Layout, lb: &Layout) -> Vec<Matrix> {
    let mut out = Vec::new();
    for z in 0..la.dims.len() {
        for i in 0..lb.dims[z] {
            for j in 0..la.dims[z] {
                let mut m = Matrix::zeros(field, lb.total(), la.total());
                m.set(lb.offsets[z] + i, la.offsets[z] + j, field.one());
                out.push(m);
            }
        }
    }
    out
}

/// Generator supported at a single point with the given dimension.
fn point_generator(layouts: &[Layout], gens: &[ObjId], z: usize, d: usize) -> Option<ObjId> {
    gens.iter().copied().find(|&g| {
        layouts[g]
            .dims
            .iter()
            .enumerate()
            .all(|(x, &dx)| if x == z { dx == d } else { dx == 0 })
    })
}

/// Resolution by single-point generators; `wide` prefers the widest such generator.
fn pointwise_resolution(
    s: &Skeleton,
    layouts: &[Layout],
    gens: &[ObjId],
    c: ObjId,
    wide: bool,
) -> Result<Resolution, InstanceError> {
    let field = s.field;
    let lc = &layouts[c];
    let mut terms = Vec::new();
    for z in 0..lc.dims.len() {
        let mut k = 0;
        while k < lc.dims[z] {
            let remaining = lc.dims[z] - k;
            let width = if wide {
                (1..=remaining)
                    .rev()
                    .find(|&w| point_generator(layouts, gens, z, w).is_some())
            } else {
                point_generator(layouts, gens, z, 1).map(|_| 1)
            }
            .ok_or_else(|| {
                InstanceError::Closure(format!("no generator at {} resolves {}", z, s.objects[c].0))
            })?;
            let g = point_generator(layouts, gens, z, width).expect("found above");
            let lg = &layouts[g];
            let mut inc = Matrix::zeros(field, lc.total(), lg.total());
            let mut lift = Matrix::zeros(field, lg.total(), lc.total());
            for w in 0..width {
                inc.set(lc.offsets[z] + k + w, lg.offsets[z] + w, field.one());
                lift.set(lg.offsets[z] + w, lc.offsets[z] + k + w, field.one());
            }
            let coeffs = s.hom(g, c).and_then(|h| h.coords(&inc)).ok_or_else(|| {
                InstanceError::Closure(format!(
                    "inclusion into {} is not tabulated",
                    s.objects[c].0
                ))
            })?;
            terms.push(ResolutionTerm {
                generator: g,
                inclusion: Morphism {
                    source: g,
                    target: c,
                    coeffs,
                },
                lift,
            });
            k += width;
        }
    }
    Ok(Resolution { terms })
}

/// A second resolution of `c` that routes through the widest single-point
/// generators, so that it differs from the default one by coend relations
/// rather than by a change of basis.
pub fn regrouped_resolution(inst: &Instance, c: ObjId) -> Option<Resolution> {
    let p = &inst.presentation;
    let gens = &inst.generators.generators;
    let npts: usize = inst.meta.get("points").and_then(|v| v.parse().ok())?;
    let layouts: Vec<Layout> = (0..p.objects.len())
        .map(|o| Layout::new(point_dims(inst, o, npts)))
        .collect();
    let field = p.field;
    let lc = &layouts[c];
    let mut terms = Vec::new();
    for z in 0..npts {
        let mut k = 0;
        while k < lc.dims[z] {
            let remaining = lc.dims[z] - k;
            let width = (1..=remaining)
                .rev()
                .find(|&w| point_generator(&layouts, gens, z, w).is_some())?;
            let g = point_generator(&layouts, gens, z, width)?;
            let lg = &layouts[g];
            let mut coeffs = vec![field.zero(); p.hom_dim(g, c)];
            let mut lift = Matrix::zeros(field, lg.total(), lc.total());
            for w in 0..width {
                // elementary basis of hom(g, c) at z: index over (row i of c, column j of g)
                let base: usize = (0..z).map(|x| lc.dims[x] * lg.dims[x]).sum();
                coeffs[base + (k + w) * lg.dims[z] + w] = field.one();
                lift.set(lg.offsets[z] + w, lc.offsets[z] + k + w, field.one());
            }
            terms.push(ResolutionTerm {
                generator: g,
                inclusion: Morphism {
                    source: g,
                    target: c,
                    coeffs,
                },
                lift,
            });
            k += width;
        }
    }
    Some(Resolution { terms })
}

/// Per-point dimensions of an object, read back from the `dims.<name>` metadata.
fn point_dims(inst: &Instance, o: ObjId, npts: usize) -> Vec<usize> {
    let key = format!("dims.{}", inst.presentation.name(o));
    inst.meta
        .get(&key)
        .map(|v| v.split(',').filter_map(|s| s.parse().ok()).collect())
        .unwrap_or_else(|| vec![0; npts])
}
