use std::collections::BTreeMap;

use super::{HomBasis, InstanceError, Skeleton};
use crate::exactla::{Field, Matrix};
use crate::fincat::{GeneratorData, Instance, Morphism, ObjId, Resolution, ResolutionTerm};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    /// `table[g][h]` is the index of `g·h`.
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
}

/// A representation given by one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSpec {
    pub name: String,
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the identity element, after checking the group axioms.
    fn check(&self) -> Result<usize, InstanceError> {
        let n = self.order();
        let bad = |msg: &str| InstanceError::InvalidSpec(msg.to_string());
        if n == 0 || self.table.len() != n || self.inverse.len() != n {
            return Err(bad("group table has the wrong size"));
        }
        if self
            .table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(bad("group table has the wrong size"));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|g| self.table[e][g] == g && self.table[g][e] == g))
            .ok_or_else(|| bad("no identity element"))?;
        for g in 0..n {
            let gi = self.inverse[g];
            if gi >= n || self.table[g][gi] != e || self.table[gi][g] != e {
                return Err(bad("inverse map is wrong"));
            }
            for h in 0..n {
                for k in 0..n {
                    if self.table[self.table[g][h]][k] != self.table[g][self.table[h][k]] {
                        return Err(bad("multiplication is not associative"));
                    }
                }
            }
        }
        Ok(e)
    }

    /// The cyclic group `ℤ/n` written additively.
    pub fn cyclic(n: usize) -> Self {
        GroupSpec {
            elements: (0..n).map(|k| k.to_string()).collect(),
            table: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
            inverse: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    /// `S₃` as permutations of `{0,1,2}` in lexicographic order, composed as functions.
    pub fn s3() -> Self {
        let perms = permutations3();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| idx([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        let inverse = perms
            .iter()
            .map(|s| {
                let mut inv = [0; 3];
                for (i, &si) in s.iter().enumerate() {
                    inv[si] = i;
                }
                idx(inv)
            })
            .collect();
        GroupSpec {
            elements: perms
                .iter()
                .map(|p| format!("{}{}{}", p[0], p[1], p[2]))
                .collect(),
            table,
            inverse,
        }
    }
}

pub(super) fn permutations3() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

fn check_rep(g: &GroupSpec, field: Field, e: usize, rep: &RepSpec) -> Result<(), InstanceError> {
    let bad = |element: &str| InstanceError::Intertwiner {
        rep: rep.name.clone(),
        element: element.to_string(),
    };
    if rep.matrices.len() != g.order() {
        return Err(bad("(matrix count)"));
    }
    for (k, m) in rep.matrices.iter().enumerate() {
        if m.shape() != (rep.dim, rep.dim) || m.field() != field {
            return Err(bad(&g.elements[k]));
        }
    }
    if !rep.matrices[e].is_identity() {
        return Err(bad(&g.elements[e]));
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if rep.matrices[g.table[a][b]] != rep.matrices[a].mul(&rep.matrices[b]) {
                return Err(bad(&format!("{}·{}", g.elements[a], g.elements[b])));
            }
        }
    }
    Ok(())
}

/// Basis of `{X : ρ_W(g)·X = X·ρ_V(g) for all g}`, as `dim W × dim V` matrices.
pub(super) fn intertwiners(field: Field, v: &[Matrix], w: &[Matrix]) -> Vec<Matrix> {
    let (dv, dw) = (v[0].rows(), w[0].rows());
    let unknowns = dw * dv;
    if unknowns == 0 {
        return Vec::new();
    }
    let mut eqs = Matrix::zeros(field, v.len() * unknowns, unknowns);
    for (g, (rv, rw)) in v.iter().zip(w).enumerate() {
        // (ρ_W X - X ρ_V)[i][j] = Σ_k ρ_W[i][k] X[k][j] - Σ_k X[i][k] ρ_V[k][j]
        for i in 0..dw {
            for j in 0..dv {
                let row = g * unknowns + i * dv + j;
                for k in 0..dw {
                    eqs.add_at(row, k * dv + j, rw.get(i, k));
                }
                for k in 0..dv {
                    eqs.add_at(row, i * dv + k, &-rv.get(k, j));
                }
            }
        }
    }
    let kernel = eqs.kernel_basis();
    (0..kernel.cols())
        .map(|c| Matrix::from_vec(field, dw, dv, kernel.col(c)).expect("shape"))
        .collect()
}

fn dual_rep(g: &GroupSpec, mats: &[Matrix]) -> Vec<Matrix> {
    (0..g.order())
        .map(|k| mats[g.inverse[k]].transpose())
        .collect()
}

/// Builds the group-convolution instance on `reps` as generators.
///
/// Objects are the generators, every ordered generator pair `A⊗B`, and every
/// triple `(A⊗A*)⊗A`, all with the pointwise (Kronecker) tensor product, so
/// `r` and `i` are identities. Hom spaces are full intertwiner spaces.
pub fn build_group_instance(
    g: &GroupSpec,
    reps: &[RepSpec],
    field: Field,
) -> Result<Instance, InstanceError> {
    let e = g.check()?;
    for rep in reps {
        check_rep(g, field, e, rep)?;
    }
    let mut names: Vec<String> = Vec::new();
    let mut mats: Vec<Vec<Matrix>> = Vec::new();
    for rep in reps {
        if names.contains(&rep.name) {
            return Err(InstanceError::InvalidSpec(format!(
                "duplicate representation {}",
                rep.name
            )));
        }
        names.push(rep.name.clone());
        mats.push(rep.matrices.clone());
    }
    let gens: Vec<ObjId> = (0..reps.len()).collect();

    let mut star_obj = BTreeMap::new();
    let mut u_iso = BTreeMap::new();
    for &a in &gens {
        let dual = dual_rep(g, &mats[a]);
        let exact = gens.iter().find(|&&b| mats[b] == dual);
        let (b, u) = match exact {
            Some(&b) => (b, Matrix::identity(field, reps[a].dim)),
            None => gens
                .iter()
                .find_map(|&b| {
                    let hom = intertwiners(field, &mats[b], &dual);
                    (hom.len() == 1 && hom[0].inverse().is_some()).then(|| (b, hom[0].clone()))
                })
                .ok_or_else(|| {
                    InstanceError::Closure(format!(
                        "the dual of {} is not among the generators",
                        names[a]
                    ))
                })?,
        };
        star_obj.insert(a, b);
        u_iso.insert(a, u);
    }

    let mut tensor_objects = BTreeMap::new();
    let add_object =
        |names: &mut Vec<String>, mats: &mut Vec<Vec<Matrix>>, name: String, m: Vec<Matrix>| {
            names.push(name);
            mats.push(m);
            names.len() - 1
        };
    for &a in &gens {
        for &b in &gens {
            let m: Vec<Matrix> = (0..g.order())
                .map(|k| mats[a][k].kron(&mats[b][k]))
                .collect();
            let name = format!("{}⊗{}", names[a], names[b]);
            let t = add_object(&mut names, &mut mats, name, m);
            tensor_objects.insert((a, b), t);
        }
    }
    for &a in &gens {
        let pair = tensor_objects[&(a, star_obj[&a])];
        let m: Vec<Matrix> = (0..g.order())
            .map(|k| mats[pair][k].kron(&mats[a][k]))
            .collect();
        let name = format!("({})⊗{}", names[pair], names[a]);
        let t = add_object(&mut names, &mut mats, name, m);
        tensor_objects.insert((pair, a), t);
    }

    let n = names.len();
    let dims: Vec<usize> = mats.iter().map(|m| m[0].rows()).collect();
    let mut homs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let basis = intertwiners(field, &mats[a], &mats[b]);
            homs.insert((a, b), HomBasis::new(field, dims[b], dims[a], basis)?);
        }
    }
    let mut r = BTreeMap::new();
    let mut i = BTreeMap::new();
    for (&(a, b), &t) in &tensor_objects {
        r.insert((a, b), Matrix::identity(field, dims[t]));
        i.insert((a, b), Matrix::identity(field, dims[t]));
    }
    let skeleton = Skeleton {
        field,
        objects: names.iter().cloned().zip(dims.iter().copied()).collect(),
        homs,
        tensor_objects: tensor_objects.clone(),
        r,
        i,
    };
    let (presentation, functor) = skeleton.assemble()?;

    let mut star_mor = BTreeMap::new();
    for &a in &gens {
        for &b in &gens {
            let Some(h) = skeleton.hom(a, b) else {
                continue;
            };
            let target = skeleton.hom(star_obj[&b], star_obj[&a]);
            let u_a_inv = u_iso[&a].inverse().expect("u is invertible");
            let mut rows = Vec::new();
            for f in &h.mats {
                let fs = u_a_inv.mul(&f.transpose()).mul(&u_iso[&b]);
                rows.push(target.and_then(|t| t.coords(&fs)).ok_or_else(|| {
                    InstanceError::Closure(format!(
                        "dual of a morphism {} → {} is not tabulated",
                        names[a], names[b]
                    ))
                })?);
            }
            star_mor.insert((a, b), rows);
        }
    }

    let mut e_maps = BTreeMap::new();
    for &a in &gens {
        let d = dims[a];
        let pair = tensor_objects[&(a, star_obj[&a])];
        let triple = tensor_objects[&(pair, a)];
        let id = Matrix::identity(field, d);
        let ue = id
            .kron(&Matrix::evaluation(field, d))
            .mul(&id.kron(&u_iso[&a]).kron(&id));
        let coeffs = skeleton
            .hom(triple, a)
            .and_then(|h| h.coords(&ue))
            .ok_or_else(|| {
                InstanceError::Closure(format!("evaluation for {} is not equivariant", names[a]))
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
    let classes = simple_classes(&skeleton, &gens);
    for t in gens.len()..n {
        resolutions.insert(t, isotypic_resolution(&skeleton, &classes, t)?);
    }

    let generators = GeneratorData {
        generators: gens,
        star_obj,
        star_mor,
        u: u_iso,
        e: e_maps,
        resolutions,
    };
    let mut meta = BTreeMap::new();
    meta.insert("kind".to_string(), "group".to_string());
    meta.insert("group_order".to_string(), g.order().to_string());
    Ok(Instance {
        presentation,
        functor,
        generators,
        meta,
    })
}

/// One generator per isomorphism class of generators with one-dimensional endomorphisms.
fn simple_classes(s: &Skeleton, gens: &[ObjId]) -> Vec<ObjId> {
    let mut classes: Vec<ObjId> = Vec::new();
    for &a in gens {
        let simple = s.hom(a, a).is_some_and(|h| h.len() == 1);
        if simple && classes.iter().all(|&c| s.hom(c, a).is_none()) {
            classes.push(a);
        }
    }
    classes
}

/// `Σ_A Σ_{l,k} g_l (G⁻¹)_{lk} h_k` with `G_{kl} = h_k ∘ g_l` over simple classes.
fn isotypic_resolution(
    s: &Skeleton,
    classes: &[ObjId],
    c: ObjId,
) -> Result<Resolution, InstanceError> {
    let field = s.field;
    let name = &s.objects[c].0;
    let dc = s.objects[c].1;
    let mut terms = Vec::new();
    let mut total = Matrix::zeros(field, dc, dc);
    for &a in classes {
        let (Some(inc), Some(proj)) = (s.hom(a, c), s.hom(c, a)) else {
            continue;
        };
        let m = inc.len();
        if proj.len() != m {
            return Err(InstanceError::Closure(format!(
                "{name} is not semisimple over the generators"
            )));
        }
        let gram = Matrix::from_fn(field, m, m, |k, l| {
            proj.mats[k].mul(&inc.mats[l]).get(0, 0).clone()
        });
        let gram_inv = gram.inverse().ok_or_else(|| {
            InstanceError::Closure(format!(
                "{name}: degenerate pairing with {}",
                s.objects[a].0
            ))
        })?;
        for l in 0..m {
            let mut lift = Matrix::zeros(field, s.objects[a].1, dc);
            for k in 0..m {
                lift = lift.add(&proj.mats[k].scale(gram_inv.get(l, k)));
            }
            total = total.add(&inc.mats[l].mul(&lift));
            let mut coeffs = vec![field.zero(); m];
            coeffs[l] = field.one();
            terms.push(ResolutionTerm {
                generator: a,
                inclusion: Morphism {
                    source: a,
                    target: c,
                    coeffs,
                },
                lift,
            });
        }
    }
    if !total.is_identity() {
        return Err(InstanceError::Closure(format!(
            "{name} has no resolution by the generators"
        )));
    }
    Ok(Resolution { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table_is_a_group() {
        let g = GroupSpec::s3();
        assert_eq!(g.check().unwrap(), 0);
        assert_eq!(GroupSpec::cyclic(4).check().unwrap(), 0);
    }

    #[test]
    fn intertwiners_of_sign_and_trivial() {
        let q = Field::Rationals;
        let triv: Vec<Matrix> = (0..2).map(|_| Matrix::identity(q, 1)).collect();
        let sgn = vec![
            Matrix::identity(q, 1),
            Matrix::from_i64_rows(q, &[vec![-1]]),
        ];
        assert_eq!(intertwiners(q, &triv, &sgn).len(), 0);
        assert_eq!(intertwiners(q, &sgn, &sgn).len(), 1);
        let both: Vec<Matrix> = (0..2).map(|k| triv[k].kron(&sgn[k])).collect();
        assert_eq!(intertwiners(q, &both, &sgn).len(), 1);
    }

    #[test]
    fn rejects_non_homomorphism() {
        let q = Field::Rationals;
        let bad = RepSpec {
            name: "bad".into(),
            dim: 1,
            matrices: vec![Matrix::identity(q, 1), Matrix::from_i64_rows(q, &[vec![2]])],
        };
        let err = build_group_instance(&GroupSpec::cyclic(2), &[bad], q).unwrap_err();
        assert!(matches!(err, InstanceError::Intertwiner { .. }));
    }

    #[test]
    fn missing_dual_is_a_closure_error() {
        let f7 = Field::prime(7).unwrap();
        let chi2 = RepSpec {
            name: "chi2".into(),
            dim: 1,
            matrices: [1, 2, 4]
                .iter()
                .map(|&v| Matrix::from_i64_rows(f7, &[vec![v]]))
                .collect(),
        };
        let err = build_group_instance(&GroupSpec::cyclic(3), &[chi2], f7).unwrap_err();
        assert!(matches!(err, InstanceError::Closure(_)));
    }
}
