#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use onepoint::bounds::check_all_partitions;
use onepoint::generators::{
    canonical_examples, enumerate_onepoint_triangles_2d, zpw_simplex, Atlas, Verification,
};
use onepoint::points::enumerate_interior;
use onepoint::simplex::{barycentric_of_int, IntVector};
use onepoint::{LatticeSimplex, Rat, DEFAULT_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_0001;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * cofactor_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// A unimodular matrix from `ops` random elementary row operations with
/// unit coefficients.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize, ops: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..ops {
        match rng.random_range(0..3) {
            0 if d > 1 => {
                let a = rng.random_range(0..d);
                let b = (a + rng.random_range(1..d)) % d;
                let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                let source_row = u[a].clone();
                for (t, v) in u[b].iter_mut().zip(&source_row) {
                    *t += sign * v;
                }
            }
            1 if d > 1 => {
                let a = rng.random_range(0..d);
                let b = (a + rng.random_range(1..d)) % d;
                u.swap(a, b);
            }
            _ => {
                let a = rng.random_range(0..d);
                u[a].iter_mut().for_each(|v| *v = -*v);
            }
        }
    }
    u
}

pub fn apply_affine(u: &[Vec<i64>], shift: &[i64], x: &[BigInt]) -> IntVector {
    u.iter()
        .zip(shift)
        .map(|(row, s)| {
            row.iter()
                .zip(x)
                .map(|(a, b)| BigInt::from(*a) * b)
                .sum::<BigInt>()
                + s
        })
        .collect()
}

pub fn map_simplex(u: &[Vec<i64>], shift: &[i64], s: &LatticeSimplex) -> LatticeSimplex {
    LatticeSimplex::new(
        s.vertices()
            .iter()
            .map(|v| apply_affine(u, shift, v))
            .collect(),
    )
    .expect("unimodular image is a simplex")
}

/// Positive rationals summing to one, from random integer weights.
pub fn random_beta(rng: &mut ChaCha8Rng, len: usize, max_weight: i64) -> Vec<Rat> {
    let w: Vec<i64> = (0..len).map(|_| rng.random_range(1..=max_weight)).collect();
    let total: i64 = w.iter().sum();
    w.iter()
        .map(|&x| Rat::new(BigInt::from(x), BigInt::from(total)))
        .collect()
}

pub fn random_simplex(rng: &mut ChaCha8Rng, d: usize, radius: i64) -> Option<LatticeSimplex> {
    let vertices: Vec<IntVector> = (0..=d)
        .map(|_| {
            (0..d)
                .map(|_| BigInt::from(rng.random_range(-radius..=radius)))
                .collect()
        })
        .collect();
    LatticeSimplex::new(vertices)
        .ok()
        .filter(LatticeSimplex::is_full_dimensional)
}

/// A simplex with at least two interior points together with an interior
/// point at which some split inequality fails.
pub fn random_violating_instance(rng: &mut ChaCha8Rng, d: usize) -> (LatticeSimplex, IntVector) {
    let radius = if d == 2 { 6 } else { 4 };
    loop {
        let Some(s) = random_simplex(rng, d, radius) else {
            continue;
        };
        let census = enumerate_interior(&s, DEFAULT_CAP).expect("small box");
        if census.len() < 2 {
            continue;
        }
        let start = rng.random_range(0..census.len());
        for k in 0..census.len() {
            let p = &census.points[(start + k) % census.len()];
            let beta = barycentric_of_int(&s, p).expect("interior");
            if !check_all_partitions(&beta).pass {
                return (s, p.clone());
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub simplex: LatticeSimplex,
    pub point: IntVector,
}

/// Sylvester simplices and both canonical families for `d <= max_dim`.
pub fn generated_corpus(max_dim: usize) -> Vec<Member> {
    let mut out = Vec::new();
    for d in 1..=max_dim {
        let z = zpw_simplex(d, Verification::Verify, DEFAULT_CAP).expect("zpw");
        out.push(Member {
            name: z.name,
            simplex: z.simplex,
            point: z.interior_point,
        });
        for g in canonical_examples(d, Verification::Verify, DEFAULT_CAP).expect("canonical") {
            out.push(Member {
                name: g.name,
                simplex: g.simplex,
                point: g.interior_point,
            });
        }
    }
    out
}

pub fn atlas_members(atlas: &Atlas) -> Vec<Member> {
    atlas
        .classes
        .iter()
        .enumerate()
        .map(|(k, c)| Member {
            name: format!("atlas-{k}"),
            simplex: c.form.simplex.clone(),
            point: vec![BigInt::zero(), BigInt::zero()],
        })
        .collect()
}

pub fn default_atlas() -> Atlas {
    enumerate_onepoint_triangles_2d(30, DEFAULT_CAP).expect("atlas")
}
