//! Example simplices and the exhaustive planar atlas.
//!
//! * Sylvester-like terms `2, 3, 7, 43, ...` and the simplex
//!   `conv{o, t_1 e_1, ..., t_d e_d}` built from them.
//! * The dilated standard simplex and the reflected cross-type simplex, both
//!   centred on their unique interior point.
//! * A normal form for planar lattice triangles under affine unimodular maps
//!   and a search that lists every one-point triangle class.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bounds::{beta_lower_bounds, chain_decompose, check_all_partitions, SortedBary};
use crate::error::{Error, Result};
use crate::exact::{hnf_rows, BigInt, IntMatrix, Rat};
use crate::points::{count_closure_points, enumerate_interior, is_onepoint};
use crate::simplex::{barycentric_of_int, normalized_volume, IntVector, LatticeSimplex};

/// Terms `t_1, ..., t_n` of `t_1 = 2`, `t_n = t_{n-1}^2 - t_{n-1} + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterSeq {
    terms: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterChecks {
    /// `t_n = 1 + prod_{i<n} t_i`
    pub product_form: bool,
    /// `2^(2^(n-2)) <= t_n <= 2^(2^(n-1))`
    pub bounds: bool,
    /// `sum_{i<=n} 1/t_i + 1/(t_{n+1} - 1) = 1`
    pub unit_partition: bool,
}

impl SylvesterChecks {
    pub fn all(&self) -> bool {
        self.product_form && self.bounds && self.unit_partition
    }
}

impl SylvesterSeq {
    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    /// `t_n`, one-based.
    pub fn term(&self, n: usize) -> &BigInt {
        &self.terms[n - 1]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-derives every invariant from the stored terms.
    pub fn check(&self) -> SylvesterChecks {
        let two = BigInt::from(2);
        let mut product = BigInt::one();
        let mut product_form = true;
        let mut bounds = true;
        let mut unit_partition = true;
        let mut reciprocal_sum = Rat::zero();
        for (idx, t) in self.terms.iter().enumerate() {
            let n = idx + 1;
            if n >= 2 && *t != &product + 1 {
                product_form = false;
            }
            product *= t;
            let upper = num_traits::pow(two.clone(), 1usize << (n - 1));
            let lower_ok = if n == 1 {
                // 2^(1/2) <= t_1, compared after squaring.
                two <= t * t
            } else {
                num_traits::pow(two.clone(), 1usize << (n - 2)) <= *t
            };
            bounds &= lower_ok && *t <= upper;
            reciprocal_sum += Rat::new(BigInt::one(), t.clone());
            let next = t * t - t + 1;
            let closing = Rat::new(BigInt::one(), next - 1);
            unit_partition &= (&reciprocal_sum + closing).is_one();
        }
        SylvesterChecks {
            product_form,
            bounds,
            unit_partition,
        }
    }
}

/// The first `n` terms. Every invariant is asserted on construction.
pub fn sylvester(n: usize) -> SylvesterSeq {
    assert!(n >= 1, "the sequence starts at t_1");
    let mut terms = vec![BigInt::from(2)];
    while terms.len() < n {
        let t = terms.last().expect("nonempty");
        terms.push(t * t - t + 1);
    }
    let seq = SylvesterSeq { terms };
    let checks = seq.check();
    assert!(checks.all(), "Sylvester invariants failed: {checks:?}");
    seq
}

/// Whether a generator confirms the interior point with a lattice scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Verify,
    /// Skip the scan; the result is marked unverified.
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSimplex {
    pub name: String,
    pub simplex: LatticeSimplex,
    pub interior_point: IntVector,
    pub verified: bool,
}

fn finish(
    name: String,
    simplex: LatticeSimplex,
    interior_point: IntVector,
    verification: Verification,
    cap: u64,
) -> Result<GeneratedSimplex> {
    let verified = match verification {
        Verification::Skip => false,
        Verification::Verify => {
            let found = is_onepoint(&simplex, cap)?;
            if found.as_ref() != Some(&interior_point) {
                return Err(Error::Internal(format!(
                    "{name}: expected unique interior point {interior_point:?}, scan found {found:?}"
                )));
            }
            true
        }
    };
    Ok(GeneratedSimplex {
        name,
        simplex,
        interior_point,
        verified,
    })
}

fn axis_simplex(scales: &[BigInt]) -> LatticeSimplex {
    let d = scales.len();
    let mut vertices = vec![vec![BigInt::zero(); d]];
    for (k, s) in scales.iter().enumerate() {
        let mut v = vec![BigInt::zero(); d];
        v[k] = s.clone();
        vertices.push(v);
    }
    LatticeSimplex::new(vertices).expect("axis simplex is nondegenerate")
}

/// `conv{o, t_1 e_1, ..., t_d e_d}` with interior point `(1, ..., 1)`.
pub fn zpw_simplex(d: usize, verification: Verification, cap: u64) -> Result<GeneratedSimplex> {
    if d == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let seq = sylvester(d);
    finish(
        format!("zpw-{d}"),
        axis_simplex(seq.terms()),
        vec![BigInt::one(); d],
        verification,
        cap,
    )
}

/// `conv{o, (d+1) e_1, ..., (d+1) e_d}` and `conv{-(e_1+...+e_d), e_1, ..., e_d}`.
/// Both have the centroid as unique interior point.
pub fn canonical_examples(
    d: usize,
    verification: Verification,
    cap: u64,
) -> Result<Vec<GeneratedSimplex>> {
    if d == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let dilated = axis_simplex(&vec![BigInt::from(d + 1); d]);
    let mut vertices = vec![vec![BigInt::from(-1); d]];
    for k in 0..d {
        let mut v = vec![BigInt::zero(); d];
        v[k] = BigInt::one();
        vertices.push(v);
    }
    let reflected = LatticeSimplex::new(vertices)?;
    let out = vec![
        finish(
            format!("dilated-{d}"),
            dilated,
            vec![BigInt::one(); d],
            verification,
            cap,
        )?,
        finish(
            format!("reflected-{d}"),
            reflected,
            vec![BigInt::zero(); d],
            verification,
            cap,
        )?,
    ];
    let centroid = Rat::new(BigInt::one(), BigInt::from(d + 1));
    for g in &out {
        let beta = barycentric_of_int(&g.simplex, &g.interior_point)?;
        if beta.coords().iter().any(|b| *b != centroid) {
            return Err(Error::Internal(format!(
                "{}: interior point is not the centroid",
                g.name
            )));
        }
    }
    Ok(out)
}

/// Canonical representative of a planar triangle under affine maps that
/// preserve `Z^2`. Vertex `k` of `simplex` is
/// `transform * (original[vertex_order[k]] - translation)`.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub simplex: LatticeSimplex,
    pub transform: IntMatrix,
    pub translation: IntVector,
    pub vertex_order: [usize; 3],
}

impl CanonicalForm {
    pub fn key(&self) -> &[IntVector] {
        self.simplex.vertices()
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CanonicalForm {}

const ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Normal form relative to a chosen interior point `anchor`.
pub fn normal_form_2d_at(s: &LatticeSimplex, anchor: &[BigInt]) -> Result<CanonicalForm> {
    if s.ambient_dim() != 2 || !s.is_full_dimensional() {
        return Err(Error::Dimension("normal form is defined for triangles in Z^2".into()));
    }
    let shifted: Vec<IntVector> = s
        .vertices()
        .iter()
        .map(|v| v.iter().zip(anchor).map(|(a, b)| a - b).collect())
        .collect();
    let mut best: Option<(Vec<IntVector>, IntMatrix, [usize; 3])> = None;
    for order in ORDERS {
        let cols: Vec<IntVector> = order.iter().map(|&k| shifted[k].clone()).collect();
        let (h, u) = hnf_rows(&IntMatrix::from_cols(&cols)?);
        let candidate: Vec<IntVector> = (0..3).map(|c| h.col(c)).collect();
        if best.as_ref().is_none_or(|(b, _, _)| candidate < *b) {
            best = Some((candidate, u, order));
        }
    }
    let (vertices, transform, vertex_order) = best.expect("six orders");
    Ok(CanonicalForm {
        simplex: LatticeSimplex::new(vertices)?,
        transform,
        translation: anchor.to_vec(),
        vertex_order,
    })
}

/// Normal form minimized over every interior point as anchor, so it does not
/// depend on which interior point a map sends where.
pub fn normal_form_2d(s: &LatticeSimplex, cap: u64) -> Result<CanonicalForm> {
    if s.ambient_dim() != 2 || !s.is_full_dimensional() {
        return Err(Error::Dimension("normal form is defined for triangles in Z^2".into()));
    }
    let census = enumerate_interior(s, cap)?;
    if census.is_empty() {
        return Err(Error::Precondition(
            "normal form needs an interior lattice point".into(),
        ));
    }
    let mut best: Option<CanonicalForm> = None;
    for anchor in &census.points {
        let f = normal_form_2d_at(s, anchor)?;
        if best.as_ref().is_none_or(|b| f.key() < b.key()) {
            best = Some(f);
        }
    }
    Ok(best.expect("nonempty census"))
}

/// Planar volume bound `v(2) <= 27/2`.
pub fn planar_volume_bound() -> Rat {
    Rat::new(BigInt::from(27), BigInt::from(2))
}

/// Twice-area limit of the search: double the bound, so classes above it
/// would be found and reported rather than excluded up front.
pub const SEARCH_TWICE_AREA: i64 = 54;

pub const MIN_ATLAS_RADIUS: i64 = 9;
pub const MAX_ATLAS_RADIUS: i64 = 200;

#[derive(Clone, Debug)]
pub struct AtlasClass {
    pub form: CanonicalForm,
    pub volume: Rat,
    pub points: u64,
    pub sorted_beta: Vec<Rat>,
    pub min_slack: Rat,
    /// Number of enumerated triangles that landed in this class.
    pub hits: usize,
    pub theorem_pass: bool,
    pub beta_bounds_pass: bool,
    pub chain_pass: bool,
    pub volume_bound_pass: bool,
}

impl AtlasClass {
    pub fn pass(&self) -> bool {
        self.theorem_pass && self.beta_bounds_pass && self.chain_pass && self.volume_bound_pass
    }
}

#[derive(Clone, Debug)]
pub struct Atlas {
    pub radius: i64,
    pub twice_area_limit: i64,
    pub triangles: usize,
    pub classes: Vec<AtlasClass>,
}

impl Atlas {
    pub fn max_volume(&self) -> Option<&AtlasClass> {
        self.classes.iter().max_by(|a, b| a.volume.cmp(&b.volume))
    }

    pub fn max_points(&self) -> Option<u64> {
        self.classes.iter().map(|c| c.points).max()
    }

    pub fn keys(&self) -> Vec<Vec<IntVector>> {
        self.classes.iter().map(|c| c.form.key().to_vec()).collect()
    }

    pub fn pass(&self) -> bool {
        self.classes.iter().all(AtlasClass::pass)
    }
}

fn det2(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn gcd_steps(a: (i64, i64), b: (i64, i64)) -> i64 {
    (b.0 - a.0).gcd(&(b.1 - a.1))
}

/// Every triangle with vertices in `[-r, r]^2` whose only interior lattice
/// point is the origin, listed once with counter-clockwise vertices and the
/// lexicographically smallest vertex first.
///
/// Writing `k = det(a, b)`, `u = det(b, c)`, `v = det(c, a)`, the origin is
/// interior iff all three are positive, and then `c = -(u a + v b) / k` and
/// twice the area is `k + u + v`. Pick's formula turns "exactly one interior
/// point" into "boundary count equals twice the area".
pub fn onepoint_triangles_in_box(radius: i64, twice_area_limit: i64) -> Vec<[(i64, i64); 3]> {
    let coords: Vec<(i64, i64)> = (-radius..=radius)
        .flat_map(|x| (-radius..=radius).map(move |y| (x, y)))
        .filter(|&p| p != (0, 0))
        .collect();
    coords
        .par_iter()
        .flat_map_iter(|&a| {
            let mut found = Vec::new();
            for &b in &coords {
                if b <= a {
                    continue;
                }
                let k = det2(a, b);
                if k < 1 || k > twice_area_limit - 2 {
                    continue;
                }
                for u in 1..=twice_area_limit - k - 1 {
                    for v in 1..=twice_area_limit - k - u {
                        let nx = a.0 * u + b.0 * v;
                        let ny = a.1 * u + b.1 * v;
                        if nx % k != 0 || ny % k != 0 {
                            continue;
                        }
                        let c = (-nx / k, -ny / k);
                        if c <= a || c.0.abs() > radius || c.1.abs() > radius {
                            continue;
                        }
                        let boundary = gcd_steps(a, b) + gcd_steps(b, c) + gcd_steps(c, a);
                        if boundary == k + u + v {
                            found.push([a, b, c]);
                        }
                    }
                }
            }
            found.into_iter()
        })
        .collect()
}

/// All one-point triangle classes found in the box of the given radius,
/// each checked against the partition inequalities, the coordinate bounds,
/// the chain bounds and the planar volume bound.
pub fn enumerate_onepoint_triangles_2d(radius: i64, cap: u64) -> Result<Atlas> {
    if !(MIN_ATLAS_RADIUS..=MAX_ATLAS_RADIUS).contains(&radius) {
        return Err(Error::Precondition(format!(
            "atlas radius {radius} outside {MIN_ATLAS_RADIUS}..={MAX_ATLAS_RADIUS}"
        )));
    }
    let twice_area_limit = SEARCH_TWICE_AREA;
    let raw = onepoint_triangles_in_box(radius, twice_area_limit);
    let origin = vec![BigInt::zero(), BigInt::zero()];
    let forms: Vec<CanonicalForm> = raw
        .par_iter()
        .map(|tri| {
            let s = LatticeSimplex::new(
                tri.iter()
                    .map(|&(x, y)| vec![BigInt::from(x), BigInt::from(y)])
                    .collect(),
            )?;
            normal_form_2d_at(&s, &origin)
        })
        .collect::<Result<_>>()?;
    let mut grouped: BTreeMap<Vec<IntVector>, (CanonicalForm, usize)> = BTreeMap::new();
    for f in forms {
        grouped
            .entry(f.key().to_vec())
            .and_modify(|e| e.1 += 1)
            .or_insert((f, 1));
    }
    let classes = grouped
        .into_values()
        .map(|(form, hits)| classify(form, hits, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(Atlas {
        radius,
        twice_area_limit,
        triangles: raw.len(),
        classes,
    })
}

fn classify(form: CanonicalForm, hits: usize, cap: u64) -> Result<AtlasClass> {
    let s = &form.simplex;
    // Independent of the Pick filter: the scan must see exactly the origin.
    let p = is_onepoint(s, cap)?
        .ok_or_else(|| Error::Internal(format!("{s:?} failed the interior scan")))?;
    if p.iter().any(|c| !c.is_zero()) {
        return Err(Error::Internal(format!("{s:?} has interior point {p:?}")));
    }
    let beta = barycentric_of_int(s, &p)?;
    let ineq = check_all_partitions(&beta);
    let chain = chain_decompose(s, cap)?;
    let volume = normalized_volume(s);
    Ok(AtlasClass {
        volume_bound_pass: volume <= planar_volume_bound(),
        volume,
        points: count_closure_points(s, cap)?,
        sorted_beta: SortedBary::new(&beta).sorted,
        min_slack: ineq.min_slack().expect("partitions exist").clone(),
        hits,
        theorem_pass: ineq.pass,
        beta_bounds_pass: beta_lower_bounds(&beta).pass,
        chain_pass: chain.pass,
        form,
    })
}
