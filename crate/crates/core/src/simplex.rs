//! Lattice simplices, barycentric coordinates, faces and sections.
//!
//! The lattice is always `Z^d` in standard coordinates. A [`LatticeSimplex`]
//! may be lower-dimensional (a face embedded in `Z^d`); operations that need
//! barycentric coordinates require a full-dimensional simplex.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    common_denominator, det_int, factorial, snf_divisors, BigInt, IntMatrix, Rat, RatMatrix,
};

pub type IntVector = Vec<BigInt>;
pub type RatVector = Vec<Rat>;

pub fn int_vector(coords: &[i64]) -> IntVector {
    coords.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn to_rat_vector(v: &[BigInt]) -> RatVector {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Integer affine functionals `l_i(x) = (a_i . x + b_i) / den` with `den > 0`.
///
/// Row `i` holds `(a_i, b_i)`; these are the rows of the adjugate of the
/// augmented vertex matrix, so `l_i(p_j) = delta_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForms {
    pub rows: Vec<Vec<BigInt>>,
    pub den: BigInt,
}

impl AffineForms {
    /// Numerator `a_i . x + b_i` of the `i`-th barycentric coordinate.
    pub fn numerator(&self, i: usize, x: &[BigInt]) -> BigInt {
        let row = &self.rows[i];
        let d = row.len() - 1;
        let mut acc = row[d].clone();
        for (a, xi) in row[..d].iter().zip(x) {
            acc += a * xi;
        }
        acc
    }

    pub fn numerators(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows.len()).map(|i| self.numerator(i, x)).collect()
    }
}

/// `d+1` affinely independent integer points, possibly spanning a face of
/// lower dimension than the ambient space.
#[derive(Clone)]
pub struct LatticeSimplex {
    vertices: Vec<IntVector>,
    forms: OnceLock<AffineForms>,
}

impl PartialEq for LatticeSimplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for LatticeSimplex {}

impl std::hash::Hash for LatticeSimplex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl fmt::Debug for LatticeSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_int_vector(v))?;
        }
        write!(f, "}}")
    }
}

impl LatticeSimplex {
    pub fn new(vertices: Vec<IntVector>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidSimplex("no vertices".into()));
        };
        let ambient = first.len();
        if ambient == 0 {
            return Err(Error::InvalidSimplex("zero-dimensional ambient space".into()));
        }
        if let Some(i) = vertices.iter().position(|v| v.len() != ambient) {
            return Err(Error::Dimension(format!(
                "vertex {i} has {} coordinates, expected {ambient}",
                vertices[i].len()
            )));
        }
        let k = vertices.len() - 1;
        if k > ambient {
            return Err(Error::InvalidSimplex(format!(
                "{} vertices cannot be affinely independent in dimension {ambient}",
                vertices.len()
            )));
        }
        let rank = snf_divisors(&edge_matrix(&vertices)).len();
        if rank != k {
            return Err(Error::InvalidSimplex(
                "vertices are affinely dependent".into(),
            ));
        }
        Ok(LatticeSimplex {
            vertices,
            forms: OnceLock::new(),
        })
    }

    pub fn from_i64(vertices: &[&[i64]]) -> Result<Self> {
        Self::new(vertices.iter().map(|v| int_vector(v)).collect())
    }

    /// Intrinsic dimension: number of vertices minus one.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Integer barycentric functionals of a full-dimensional simplex.
    pub fn forms(&self) -> Result<&AffineForms> {
        if !self.is_full_dimensional() {
            return Err(Error::Dimension(format!(
                "barycentric coordinates need a full-dimensional simplex, got dimension {} in Z^{}",
                self.dim(),
                self.ambient_dim()
            )));
        }
        Ok(self.forms.get_or_init(|| compute_forms(&self.vertices)))
    }

    /// Componentwise integer bounding box `(lo, hi)` of the vertices.
    pub fn bounding_box(&self) -> (IntVector, IntVector) {
        let d = self.ambient_dim();
        let lo = (0..d)
            .map(|k| self.vertices.iter().map(|v| &v[k]).min().unwrap().clone())
            .collect();
        let hi = (0..d)
            .map(|k| self.vertices.iter().map(|v| &v[k]).max().unwrap().clone())
            .collect();
        (lo, hi)
    }

    /// The point with the given barycentric weights.
    pub fn point_at(&self, weights: &[Rat]) -> Result<RatVector> {
        if weights.len() != self.vertex_count() {
            return Err(Error::Dimension(format!(
                "{} weights for {} vertices",
                weights.len(),
                self.vertex_count()
            )));
        }
        let mut x = vec![Rat::zero(); self.ambient_dim()];
        for (w, v) in weights.iter().zip(&self.vertices) {
            for (xk, vk) in x.iter_mut().zip(v) {
                *xk += w * Rat::from_integer(vk.clone());
            }
        }
        Ok(x)
    }
}

/// `d x k` matrix whose columns are `p_j - p_0`.
fn edge_matrix(vertices: &[IntVector]) -> IntMatrix {
    let base = &vertices[0];
    let cols: Vec<IntVector> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if cols.is_empty() {
        return IntMatrix::zeros(base.len(), 0);
    }
    IntMatrix::from_cols(&cols).expect("rectangular edges")
}

/// The augmented `(d+1) x (d+1)` matrix `[p_0 .. p_d; 1 .. 1]`.
pub fn augmented_vertex_matrix(vertices: &[IntVector]) -> IntMatrix {
    let cols: Vec<IntVector> = vertices
        .iter()
        .map(|v| {
            let mut c = v.clone();
            c.push(BigInt::one());
            c
        })
        .collect();
    IntMatrix::from_cols(&cols).expect("rectangular vertices")
}

fn compute_forms(vertices: &[IntVector]) -> AffineForms {
    let m = augmented_vertex_matrix(vertices);
    let n = m.rows();
    let det = det_int(&m).expect("square");
    // adj(M)[i][j] = (-1)^{i+j} * minor(j, i)
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let minor = minor(&m, j, i);
            let c = det_int(&minor).expect("square");
            *entry = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    if det.is_negative() {
        for row in &mut rows {
            for e in row.iter_mut() {
                *e = -&*e;
            }
        }
    }
    AffineForms {
        rows,
        den: det.abs(),
    }
}

fn minor(m: &IntMatrix, skip_r: usize, skip_c: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .filter(|&r| r != skip_r)
        .map(|r| {
            (0..m.cols())
                .filter(|&c| c != skip_c)
                .map(|c| m[(r, c)].clone())
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(rows).expect("rectangular minor")
}

/// Barycentric coordinates `beta_0, ..., beta_d`, summing to exactly one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BarycentricVector {
    coords: Vec<Rat>,
}

impl BarycentricVector {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Dimension(
                "barycentric vectors need at least two coordinates".into(),
            ));
        }
        let sum: Rat = coords.iter().sum();
        if !sum.is_one() {
            return Err(Error::Precondition(format!(
                "barycentric coordinates sum to {sum}, expected 1"
            )));
        }
        Ok(BarycentricVector { coords })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(Signed::is_positive)
    }

    /// Simplex dimension `d` (one less than the number of coordinates).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl std::ops::Index<usize> for BarycentricVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.coords[i]
    }
}

impl fmt::Debug for BarycentricVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rat_vector(&self.coords))
    }
}

/// A face `F_I = conv{p_j : j in J}` named by the removed indices `I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FaceIndex {
    removed: Vec<usize>,
    kept: Vec<usize>,
}

impl FaceIndex {
    /// Face of a simplex with `vertex_count` vertices obtained by dropping
    /// the indices in `removed`.
    pub fn removing(vertex_count: usize, removed: &[usize]) -> Result<Self> {
        let mut removed = removed.to_vec();
        removed.sort_unstable();
        removed.dedup();
        if let Some(&bad) = removed.iter().find(|&&i| i >= vertex_count) {
            return Err(Error::InvalidFace(format!(
                "index {bad} out of range for {vertex_count} vertices"
            )));
        }
        let kept: Vec<usize> = (0..vertex_count).filter(|i| !removed.contains(i)).collect();
        if kept.is_empty() {
            return Err(Error::InvalidFace("J is empty".into()));
        }
        Ok(FaceIndex { removed, kept })
    }

    pub fn keeping(vertex_count: usize, kept: &[usize]) -> Result<Self> {
        let removed: Vec<usize> = (0..vertex_count).filter(|i| !kept.contains(i)).collect();
        if let Some(&bad) = kept.iter().find(|&&i| i >= vertex_count) {
            return Err(Error::InvalidFace(format!(
                "index {bad} out of range for {vertex_count} vertices"
            )));
        }
        Self::removing(vertex_count, &removed)
    }

    /// The removed index set `I`.
    pub fn removed(&self) -> &[usize] {
        &self.removed
    }

    /// The kept index set `J`.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn vertex_count(&self) -> usize {
        self.removed.len() + self.kept.len()
    }

    /// Every face of a simplex with `vertex_count` vertices, the whole simplex
    /// included, ordered by the bitmask of `I`.
    pub fn all(vertex_count: usize) -> Vec<FaceIndex> {
        let full = (1u64 << vertex_count) - 1;
        (0..full)
            .map(|mask| {
                let removed: Vec<usize> =
                    (0..vertex_count).filter(|&i| mask >> i & 1 == 1).collect();
                FaceIndex::removing(vertex_count, &removed).expect("J nonempty")
            })
            .collect()
    }
}

/// Simplex with rational vertices, used for sections through a point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatSimplex {
    vertices: Vec<RatVector>,
}

impl RatSimplex {
    pub fn new(vertices: Vec<RatVector>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidSimplex("no vertices".into()));
        };
        let d = first.len();
        if vertices.iter().any(|v| v.len() != d) {
            return Err(Error::Dimension("ragged rational vertices".into()));
        }
        let s = RatSimplex { vertices };
        let (scaled, _) = s.scaled_edges();
        if snf_divisors(&scaled).len() != s.dim() {
            return Err(Error::InvalidSimplex(
                "rational vertices are affinely dependent".into(),
            ));
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    /// Edge matrix scaled by the lcm of its denominators, and that lcm.
    fn scaled_edges(&self) -> (IntMatrix, BigInt) {
        let base = &self.vertices[0];
        let edges: Vec<RatVector> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let scale = common_denominator(edges.iter().flatten());
        let cols: Vec<IntVector> = edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|x| (x * Rat::from_integer(scale.clone())).to_integer())
                    .collect()
            })
            .collect();
        if cols.is_empty() {
            return (IntMatrix::zeros(base.len(), 0), scale);
        }
        (IntMatrix::from_cols(&cols).expect("rectangular"), scale)
    }

    /// Normalized volume with respect to `Z^d` intersected with the direction
    /// space: scale to an integer simplex, then divide by `scale^k`.
    pub fn normalized_volume(&self) -> Rat {
        let (scaled, scale) = self.scaled_edges();
        let k = self.dim();
        let index: BigInt = snf_divisors(&scaled).iter().product();
        Rat::new(index, factorial(k) * num_traits::pow(scale, k))
    }
}

/// Barycentric coordinates of a rational point with respect to a
/// full-dimensional simplex.
pub fn barycentric_of(s: &LatticeSimplex, x: &[Rat]) -> Result<BarycentricVector> {
    let forms = s.forms()?;
    if x.len() != s.ambient_dim() {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, simplex lives in Z^{}",
            x.len(),
            s.ambient_dim()
        )));
    }
    let den = Rat::from_integer(forms.den.clone());
    let coords = forms
        .rows
        .iter()
        .map(|row| {
            let d = row.len() - 1;
            let mut acc = Rat::from_integer(row[d].clone());
            for (a, xi) in row[..d].iter().zip(x) {
                acc += Rat::from_integer(a.clone()) * xi;
            }
            acc / &den
        })
        .collect();
    BarycentricVector::new(coords)
}

/// Barycentric coordinates via an explicit inverse of the augmented vertex
/// matrix. Independent of the adjugate route used by [`barycentric_of`].
pub fn barycentric_by_inverse(s: &LatticeSimplex, x: &[Rat]) -> Result<BarycentricVector> {
    if !s.is_full_dimensional() {
        return Err(Error::Dimension("simplex is not full-dimensional".into()));
    }
    if x.len() != s.ambient_dim() {
        return Err(Error::Dimension("point dimension mismatch".into()));
    }
    let m: RatMatrix = augmented_vertex_matrix(s.vertices()).to_rat();
    let inv = crate::exact::invert_rat(&m)?;
    let mut rhs = x.to_vec();
    rhs.push(Rat::one());
    BarycentricVector::new(inv.mul_vec(&rhs)?)
}

pub fn barycentric_of_int(s: &LatticeSimplex, x: &[BigInt]) -> Result<BarycentricVector> {
    barycentric_of(s, &to_rat_vector(x))
}

/// The face `conv{p_j : j in J}`, vertex order inherited from `s`.
pub fn face_of(s: &LatticeSimplex, fi: &FaceIndex) -> Result<LatticeSimplex> {
    if fi.vertex_count() != s.vertex_count() {
        return Err(Error::InvalidFace(format!(
            "face index for {} vertices applied to a simplex with {}",
            fi.vertex_count(),
            s.vertex_count()
        )));
    }
    let vertices = fi.kept().iter().map(|&j| s.vertices[j].clone()).collect();
    LatticeSimplex::new(vertices)
}

/// Normalized volume: the product of Smith divisors of the edge matrix over
/// `k!`. For a full-dimensional simplex this is `|det| / d!`.
pub fn normalized_volume(f: &LatticeSimplex) -> Rat {
    let k = f.dim();
    let index: BigInt = snf_divisors(&edge_matrix(f.vertices())).iter().product();
    Rat::new(index, factorial(k))
}

/// The section `T_I = {x in T : l_i(x) = beta_i for i in I}` through the
/// point with barycentric coordinates `beta`.
pub fn section_simplex(
    s: &LatticeSimplex,
    beta: &BarycentricVector,
    fi: &FaceIndex,
) -> Result<RatSimplex> {
    if beta.len() != s.vertex_count() || fi.vertex_count() != s.vertex_count() {
        return Err(Error::Dimension("section inputs disagree on vertex count".into()));
    }
    if !beta.is_interior() {
        return Err(Error::Precondition(
            "section needs an interior point (all coordinates positive)".into(),
        ));
    }
    let beta_j: Rat = fi.kept().iter().map(|&j| &beta[j]).sum();
    let d = s.ambient_dim();
    let mut anchor = vec![Rat::zero(); d];
    for &i in fi.removed() {
        for (a, v) in anchor.iter_mut().zip(&s.vertices[i]) {
            *a += &beta[i] * Rat::from_integer(v.clone());
        }
    }
    let vertices = fi
        .kept()
        .iter()
        .map(|&j| {
            anchor
                .iter()
                .zip(&s.vertices[j])
                .map(|(a, v)| a + &beta_j * Rat::from_integer(v.clone()))
                .collect()
        })
        .collect();
    RatSimplex::new(vertices)
}

pub fn format_int_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn format_rat_vector(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn format_index_set(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}
