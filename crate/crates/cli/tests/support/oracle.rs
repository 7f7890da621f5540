//! Brute-force coend dimension, independent of the engine's linear algebra.
//!
//! The coend over the generators is ⊕_A U(A)*⊗U(A) modulo the relations
//! `ξ∘U(f) ⊗ x − ξ ⊗ U(f)x` for every hom basis element `f: A → B`, every
//! dual basis vector `ξ` of `U(B)` and every basis vector `x` of `U(A)`.
//! Scalars are read back from their printed form and reduced by a local
//! Gaussian elimination.

use endv_core::{Field, Instance, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn rank_q(mut rows: Vec<Vec<BigRational>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        let pivot: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for k in c..cols {
                    let d = &f * &pivot[k];
                    rows[r][k] -= d;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn rank_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow(rows[rank][c], p - 2);
        let pivot: Vec<u64> = rows[rank].iter().map(|x| x * inv % p).collect();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in c..cols {
                    rows[r][k] = (rows[r][k] + p * p - f * pivot[k] % p) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn to_q(s: &Scalar) -> BigRational {
    let t = s.to_string();
    match t.split_once('/') {
        Some((n, d)) => {
            BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap())
        }
        None => BigRational::from_integer(t.parse::<BigInt>().unwrap()),
    }
}

fn to_p(s: &Scalar, p: u64) -> u64 {
    let v: i128 = s.to_string().parse().unwrap();
    v.rem_euclid(p as i128) as u64
}

/// Dimension of the coend of `U*⊗U` over the full subcategory on the generators.
pub fn coend_dim(inst: &Instance) -> usize {
    let p = &inst.presentation;
    let gens = &inst.generators.generators;
    let mut offset = Vec::new();
    let mut total = 0;
    for &g in gens {
        offset.push(total);
        total += p.u_dim(g) * p.u_dim(g);
    }
    // sparse relation rows: (index, matrix entry, sign)
    let mut relations: Vec<Vec<(usize, &Scalar, bool)>> = Vec::new();
    for (ia, &a) in gens.iter().enumerate() {
        for (ib, &b) in gens.iter().enumerate() {
            let Some(mats) = inst.functor.on_morphisms.get(&(a, b)) else {
                continue;
            };
            let (da, db) = (p.u_dim(a), p.u_dim(b));
            for m in mats {
                for j in 0..db {
                    for i in 0..da {
                        let mut row = Vec::new();
                        for l in 0..da {
                            row.push((offset[ia] + l * da + i, m.get(j, l), true));
                        }
                        for k in 0..db {
                            row.push((offset[ib] + j * db + k, m.get(k, i), false));
                        }
                        relations.push(row);
                    }
                }
            }
        }
    }
    let rank = match p.field {
        Field::Rationals => {
            let rows = relations
                .iter()
                .map(|row| {
                    let mut v = vec![BigRational::zero(); total];
                    for &(k, s, plus) in row {
                        let x = to_q(s);
                        if plus {
                            v[k] += x;
                        } else {
                            v[k] -= x;
                        }
                    }
                    v
                })
                .collect();
            rank_q(rows, total)
        }
        Field::Prime(q) => {
            let rows = relations
                .iter()
                .map(|row| {
                    let mut v = vec![0u64; total];
                    for &(k, s, plus) in row {
                        let x = to_p(s, q);
                        v[k] = if plus {
                            (v[k] + x) % q
                        } else {
                            (v[k] + q - x) % q
                        };
                    }
                    v
                })
                .collect();
            rank_p(rows, total, q)
        }
    };
    total - rank
}

#[allow(dead_code)]
pub fn self_test() {
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    assert_eq!(rank_q(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2), 1);
    assert_eq!(rank_p(vec![vec![1, 2], vec![2, 4]], 2, 7), 1);
    assert_eq!(rank_p(vec![vec![1, 2], vec![3, 4]], 2, 2), 1);
}
