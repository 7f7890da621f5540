use std::collections::BTreeMap;

use super::group::permutations3;
use super::{
    build_group_instance, build_promonoidal_instance, GroupSpec, PresheafSpec, PromonoidalSpec,
    RepSpec,
};
use crate::exactla::{Field, Matrix};
use crate::fincat::Instance;

pub const BUNDLED_NAMES: [&str; 4] = ["z2", "z3-f7", "s3", "promonoidal-toy"];

/// The bundled example with the given name.
pub fn bundled(name: &str) -> Option<Instance> {
    let mut inst = match name {
        "z2" => z2(),
        "z3-f7" => z3_f7(),
        "s3" => s3(),
        "promonoidal-toy" => promonoidal_toy(),
        _ => return None,
    };
    inst.meta.insert("name".into(), name.into());
    Some(inst)
}

fn scalar_rep(field: Field, name: &str, values: &[i64]) -> RepSpec {
    RepSpec {
        name: name.into(),
        dim: 1,
        matrices: values
            .iter()
            .map(|&v| Matrix::from_i64_rows(field, &[vec![v]]))
            .collect(),
    }
}

fn z2() -> Instance {
    let q = Field::Rationals;
    let reps = [
        scalar_rep(q, "triv", &[1, 1]),
        scalar_rep(q, "sgn", &[1, -1]),
    ];
    build_group_instance(&GroupSpec::cyclic(2), &reps, q).expect("z2 builds")
}

fn z3_f7() -> Instance {
    let f7 = Field::prime(7).expect("7 is prime");
    // characters k ↦ c^k for the cube roots of unity 1, 2, 4 mod 7
    let reps = [
        scalar_rep(f7, "chi1", &[1, 1, 1]),
        scalar_rep(f7, "chi2", &[1, 2, 4]),
        scalar_rep(f7, "chi4", &[1, 4, 2]),
    ];
    build_group_instance(&GroupSpec::cyclic(3), &reps, f7).expect("z3-f7 builds")
}

fn s3() -> Instance {
    let q = Field::Rationals;
    let perms = permutations3();
    let sign = |p: &[usize; 3]| {
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    };
    // std on the basis v1 = e0 - e1, v2 = e1 - e2 of the sum-zero plane;
    // x = a·v1 + b·v2 has a = x0, b = -x2.
    let std_mat = |p: &[usize; 3]| {
        let image = |v: [i64; 3]| {
            let mut x = [0; 3];
            for i in 0..3 {
                x[p[i]] += v[i];
            }
            [x[0], -x[2]]
        };
        let c1 = image([1, -1, 0]);
        let c2 = image([0, 1, -1]);
        Matrix::from_i64_rows(q, &[vec![c1[0], c2[0]], vec![c1[1], c2[1]]])
    };
    let reps = [
        scalar_rep(q, "triv", &[1; 6]),
        scalar_rep(q, "sgn", &perms.iter().map(sign).collect::<Vec<_>>()),
        RepSpec {
            name: "std".into(),
            dim: 2,
            matrices: perms.iter().map(std_mat).collect(),
        },
    ];
    build_group_instance(&GroupSpec::s3(), &reps, q).expect("s3 builds")
}

/// Two points `a`, `b`, self-dual, with retraction `(i, r) = (2, 1/2)` at `a`
/// and `(1, 1)` at `b`. Couplings are `χ = (i²/κ)·ev`.
fn promonoidal_toy() -> Instance {
    let q = Field::Rationals;
    let mut p_dims = BTreeMap::new();
    p_dims.insert((0, 0, 0), 1);
    p_dims.insert((1, 1, 1), 1);
    let mut retraction = BTreeMap::new();
    retraction.insert(0, (q.from_i64(2), q.ratio(1, 2)));
    retraction.insert(1, (q.one(), q.one()));
    let mut composition = BTreeMap::new();
    composition.insert(0, q.from_i64(2));
    composition.insert(1, q.one());
    let spec = PromonoidalSpec {
        points: vec!["a".into(), "b".into()],
        dual: vec![0, 1],
        p_dims,
        retraction,
        unit_dims: vec![1, 1],
        composition,
    };
    let coupling = |z: usize, d: usize, scale: i64| {
        let ev = Matrix::evaluation(q, d).scale(&q.from_i64(scale));
        BTreeMap::from([(z, ev)])
    };
    let gens = [
        PresheafSpec {
            name: "A_a".into(),
            dims: vec![1, 0],
            coupling: coupling(0, 1, 2),
        },
        PresheafSpec {
            name: "A_b".into(),
            dims: vec![0, 1],
            coupling: coupling(1, 1, 1),
        },
        PresheafSpec {
            name: "A_a2".into(),
            dims: vec![2, 0],
            coupling: coupling(0, 2, 2),
        },
    ];
    build_promonoidal_instance(&spec, &gens, q).expect("promonoidal toy builds")
}
