//! The partition inequalities and the bounds built on top of them.
//!
//! For a simplex with exactly one interior lattice point `p` and barycentric
//! coordinates `beta` of `p`, every split `(I, J)` of the vertex indices
//! satisfies `sum_I beta >= prod_J beta`. This module evaluates those
//! inequalities exactly, together with the coordinate lower bounds, the face
//! chain volume bounds, the face-volume-versus-coordinate bound, the section
//! volume law, and the corpus summaries `v(d)` and `c(d)`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{det_rat, factorial, BigInt, Rat, RatMatrix};
use crate::generators::{sylvester, zpw_simplex, Verification};
use crate::points::{
    blichfeldt_check, count_face_points, scan_slab_interior, unique_interior_point,
    BlichfeldtCheck,
};
use crate::simplex::{
    barycentric_of_int, face_of, normalized_volume, section_simplex, BarycentricVector,
    FaceIndex, IntVector, LatticeSimplex,
};

/// A split `(I, J)` of `{0, ..., d}` into two nonempty disjoint sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    i: Vec<usize>,
    j: Vec<usize>,
}

impl Partition {
    /// Partition of `vertex_count` indices with the given `I`.
    pub fn new(vertex_count: usize, i: &[usize]) -> Result<Self> {
        let mut i = i.to_vec();
        i.sort_unstable();
        i.dedup();
        if let Some(&bad) = i.iter().find(|&&x| x >= vertex_count) {
            return Err(Error::InvalidPartition(format!(
                "index {bad} out of range for {vertex_count} vertices"
            )));
        }
        let j: Vec<usize> = (0..vertex_count).filter(|x| !i.contains(x)).collect();
        if i.is_empty() || j.is_empty() {
            return Err(Error::InvalidPartition("I and J must both be nonempty".into()));
        }
        Ok(Partition { i, j })
    }

    pub fn from_mask(vertex_count: usize, mask: u64) -> Result<Self> {
        let i: Vec<usize> = (0..vertex_count).filter(|&k| mask >> k & 1 == 1).collect();
        Self::new(vertex_count, &i)
    }

    /// Bitmask of `I`.
    pub fn mask(&self) -> u64 {
        self.i.iter().fold(0, |m, &k| m | 1 << k)
    }

    /// All `2^(d+1) - 2` partitions, ordered by the bitmask of `I`.
    pub fn all(vertex_count: usize) -> Vec<Partition> {
        (1..(1u64 << vertex_count) - 1)
            .map(|m| Partition::from_mask(vertex_count, m).expect("proper mask"))
            .collect()
    }

    pub fn i(&self) -> &[usize] {
        &self.i
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn vertex_count(&self) -> usize {
        self.i.len() + self.j.len()
    }
}

fn check_len(beta: &BarycentricVector, n: usize) -> Result<()> {
    if beta.len() != n {
        return Err(Error::Dimension(format!(
            "{} barycentric coordinates for a partition of {n} indices",
            beta.len()
        )));
    }
    Ok(())
}

/// `sum_{i in I} beta_i - prod_{j in J} beta_j`.
pub fn partition_slack(beta: &BarycentricVector, part: &Partition) -> Result<Rat> {
    check_len(beta, part.vertex_count())?;
    let lhs: Rat = part.i.iter().map(|&k| &beta[k]).sum();
    let rhs: Rat = part.j.iter().map(|&k| &beta[k]).product();
    Ok(lhs - rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRecord {
    pub partition: Partition,
    pub lhs: Rat,
    pub rhs: Rat,
    pub slack: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub records: Vec<PartitionRecord>,
    pub pass: bool,
}

impl InequalityReport {
    pub fn min_slack(&self) -> Option<&Rat> {
        self.records.iter().map(|r| &r.slack).min()
    }

    /// The violated partition with the smallest bitmask.
    pub fn first_violation(&self) -> Option<&PartitionRecord> {
        self.records.iter().find(|r| r.slack.is_negative())
    }
}

pub fn check_all_partitions(beta: &BarycentricVector) -> InequalityReport {
    let records: Vec<PartitionRecord> = Partition::all(beta.len())
        .into_iter()
        .map(|partition| {
            let lhs: Rat = partition.i.iter().map(|&k| &beta[k]).sum();
            let rhs: Rat = partition.j.iter().map(|&k| &beta[k]).product();
            let slack = &lhs - &rhs;
            PartitionRecord {
                partition,
                lhs,
                rhs,
                slack,
            }
        })
        .collect();
    let pass = records.iter().all(|r| !r.slack.is_negative());
    InequalityReport { records, pass }
}

/// Coordinates sorted non-increasingly; `perm[k]` is the original vertex
/// index of the `k`-th largest coordinate. Ties keep the original order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedBary {
    pub sorted: Vec<Rat>,
    pub perm: Vec<usize>,
}

impl SortedBary {
    pub fn new(beta: &BarycentricVector) -> Self {
        let mut perm: Vec<usize> = (0..beta.len()).collect();
        perm.sort_by(|&a, &b| beta[b].cmp(&beta[a]));
        let sorted = perm.iter().map(|&k| beta[k].clone()).collect();
        SortedBary { sorted, perm }
    }

    /// Coordinates back in original vertex order.
    pub fn unsorted(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.sorted.len()];
        for (k, &orig) in self.perm.iter().enumerate() {
            out[orig] = self.sorted[k].clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.sorted.len() - 1
    }

    /// The partition with `J` = the `t` largest coordinates, in original
    /// indices.
    pub fn cut(&self, t: usize) -> Result<Partition> {
        if t == 0 || t > self.dim() {
            return Err(Error::InvalidPartition(format!(
                "cut {t} outside 1..={}",
                self.dim()
            )));
        }
        Partition::new(self.sorted.len(), &self.perm[t..])
    }
}

/// `sum_{i > j} beta_i - prod_{i <= j} beta_i` for `j = 0, ..., d-1` over
/// non-increasing coordinates.
pub fn reduced_system(sb: &SortedBary) -> Vec<Rat> {
    let d = sb.dim();
    let mut prefix = Rat::one();
    let mut tail: Rat = sb.sorted.iter().sum();
    (0..d)
        .map(|j| {
            prefix *= &sb.sorted[j];
            tail -= &sb.sorted[j];
            &tail - &prefix
        })
        .collect()
}

/// The `(t+1) x (t+1)` matrix with diagonal `1/beta_j`, a last column and
/// last row of `-1`, and `1` in the corner.
pub fn b_matrix(beta_j: &[Rat]) -> RatMatrix {
    let t = beta_j.len();
    let mut b = RatMatrix::zeros(t + 1, t + 1);
    for (k, beta) in beta_j.iter().enumerate() {
        b[(k, k)] = beta.recip();
        b[(k, t)] = -Rat::one();
        b[(t, k)] = -Rat::one();
    }
    b[(t, t)] = Rat::one();
    b
}

/// `det B = sum_I beta / prod_J beta`, checked against the determinant of
/// the explicit matrix.
pub fn det_b(beta: &BarycentricVector, part: &Partition) -> Result<Rat> {
    check_len(beta, part.vertex_count())?;
    if !beta.is_interior() {
        return Err(Error::Precondition("det B needs positive coordinates".into()));
    }
    let num: Rat = part.i.iter().map(|&k| &beta[k]).sum();
    let den: Rat = part.j.iter().map(|&k| &beta[k]).product();
    let formula = num / den;
    let beta_j: Vec<Rat> = part.j.iter().map(|&k| beta[k].clone()).collect();
    let explicit = det_rat(&b_matrix(&beta_j))?;
    if explicit != formula {
        return Err(Error::Internal(format!(
            "det B formula {formula} disagrees with elimination {explicit}"
        )));
    }
    Ok(formula)
}

/// The unique interior point and its barycentric coordinates.
pub fn onepoint_beta(s: &LatticeSimplex, cap: u64) -> Result<(IntVector, BarycentricVector)> {
    let p = unique_interior_point(s, cap)?;
    let beta = barycentric_of_int(s, &p)?;
    Ok((p, beta))
}

/// `(d+1)^(-2^i)` as an exact rational.
pub fn beta_lower_bound(d: usize, i: usize) -> Rat {
    let base = BigInt::from(d + 1);
    Rat::new(BigInt::one(), num_traits::pow(base, 1usize << i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaBoundRecord {
    pub index: usize,
    pub vertex: usize,
    pub beta: Rat,
    pub bound: Rat,
    pub pass: bool,
    pub tight: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedRecord {
    pub j: usize,
    /// `(d+1) * beta_{j+1}`
    pub lhs: Rat,
    /// `prod_{i <= j} beta_i`
    pub rhs: Rat,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaBoundsReport {
    pub sorted: SortedBary,
    pub bounds: Vec<BetaBoundRecord>,
    pub relaxed: Vec<RelaxedRecord>,
    pub pass: bool,
}

/// Lower bounds `beta_i >= (d+1)^(-2^i)` on sorted coordinates, plus the
/// relaxed recursion `(d+1) beta_{j+1} >= prod_{i <= j} beta_i`.
pub fn beta_lower_bounds(beta: &BarycentricVector) -> BetaBoundsReport {
    let sorted = SortedBary::new(beta);
    let d = sorted.dim();
    let bounds: Vec<BetaBoundRecord> = sorted
        .sorted
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let bound = beta_lower_bound(d, i);
            BetaBoundRecord {
                index: i,
                vertex: sorted.perm[i],
                beta: b.clone(),
                pass: *b >= bound,
                tight: *b == bound,
                bound,
            }
        })
        .collect();
    let factor = Rat::from_integer(BigInt::from(d + 1));
    let mut prefix = Rat::one();
    let relaxed: Vec<RelaxedRecord> = (0..d)
        .map(|j| {
            prefix *= &sorted.sorted[j];
            let lhs = &factor * &sorted.sorted[j + 1];
            RelaxedRecord {
                j,
                pass: lhs >= prefix,
                lhs,
                rhs: prefix.clone(),
            }
        })
        .collect();
    let pass = bounds.iter().all(|r| r.pass) && relaxed.iter().all(|r| r.pass);
    BetaBoundsReport {
        sorted,
        bounds,
        relaxed,
        pass,
    }
}

/// Membership-checked version of [`beta_lower_bounds`].
pub fn beta_lower_bounds_check(s: &LatticeSimplex, cap: u64) -> Result<BetaBoundsReport> {
    let (_, beta) = onepoint_beta(s, cap)?;
    Ok(beta_lower_bounds(&beta))
}

/// `(d+1)^(2^i - 1) / i!`
pub fn chain_volume_bound(d: usize, i: usize) -> Rat {
    let power = num_traits::pow(BigInt::from(d + 1), (1usize << i) - 1);
    Rat::new(power, factorial(i))
}

/// `i + (d+1)^(2^i - 1)`
pub fn chain_card_bound(d: usize, i: usize) -> BigInt {
    BigInt::from(i) + num_traits::pow(BigInt::from(d + 1), (1usize << i) - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLevel {
    pub level: usize,
    pub face: FaceIndex,
    pub volume: Rat,
    pub points: u64,
    pub volume_bound: Rat,
    pub card_bound: BigInt,
    pub volume_pass: bool,
    pub card_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub point: IntVector,
    pub sorted: SortedBary,
    pub levels: Vec<ChainLevel>,
    /// `G_i` is contained in `G_{i+1}` and `G_d` is the whole simplex.
    pub nested: bool,
    pub pass: bool,
}

/// Face chain `G_1 ⊆ ... ⊆ G_d`, where `G_i` is spanned by the vertices
/// carrying the `i+1` largest coordinates, with exact volumes and point
/// counts compared against the upper bounds.
pub fn chain_decompose(s: &LatticeSimplex, cap: u64) -> Result<ChainReport> {
    let (point, beta) = onepoint_beta(s, cap)?;
    let sorted = SortedBary::new(&beta);
    let d = sorted.dim();
    let mut levels = Vec::with_capacity(d);
    for level in 1..=d {
        let face = FaceIndex::keeping(d + 1, &sorted.perm[..=level])?;
        let g = face_of(s, &face)?;
        let volume = normalized_volume(&g);
        let points = count_face_points(s, &face, cap)?;
        let volume_bound = chain_volume_bound(d, level);
        let card_bound = chain_card_bound(d, level);
        levels.push(ChainLevel {
            level,
            volume_pass: volume <= volume_bound,
            card_pass: BigInt::from(points) <= card_bound,
            face,
            volume,
            points,
            volume_bound,
            card_bound,
        });
    }
    let nested = levels
        .windows(2)
        .all(|w| w[0].face.kept().iter().all(|k| w[1].face.kept().contains(k)))
        && levels.iter().all(|l| l.face.kept().len() == l.level + 1)
        && levels.last().is_some_and(|l| l.face.removed().is_empty());
    let pass = nested && levels.iter().all(|l| l.volume_pass && l.card_pass);
    Ok(ChainReport {
        point,
        sorted,
        levels,
        nested,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLowerLevel {
    pub level: usize,
    pub volume: Rat,
    /// `(t_{i+1} - 1) / i!`
    pub product_volume: Rat,
    pub identity_holds: bool,
    /// `(2^(2^(i-1)) - 1) / i!`
    pub volume_bound: Rat,
    pub volume_pass: bool,
    pub points: u64,
    /// `2^(2^(i-1))`, compared against the squared point count.
    pub squared_card_bound: BigInt,
    pub card_pass: bool,
}

/// Lower-bound chain of the Sylvester simplex: `G_i = conv{o, t_1 e_1, ..,
/// t_i e_i}`.
pub fn zpw_chain_lower_check(d: usize, cap: u64) -> Result<Vec<ChainLowerLevel>> {
    let gen = zpw_simplex(d, Verification::Skip, cap)?;
    let s = &gen.simplex;
    let seq = sylvester(d + 1);
    let mut out = Vec::with_capacity(d);
    for level in 1..=d {
        let face = FaceIndex::keeping(d + 1, &(0..=level).collect::<Vec<_>>())?;
        let g = face_of(s, &face)?;
        let volume = normalized_volume(&g);
        let product_volume = Rat::new(&seq.terms()[level] - 1, factorial(level));
        let two = BigInt::from(2);
        let volume_bound = Rat::new(
            num_traits::pow(two.clone(), 1usize << (level - 1)) - 1,
            factorial(level),
        );
        let points = count_face_points(s, &face, cap)?;
        let squared_card_bound = num_traits::pow(two, 1usize << (level - 1));
        let count = BigInt::from(points);
        out.push(ChainLowerLevel {
            level,
            identity_holds: volume == product_volume,
            volume_pass: volume >= volume_bound,
            card_pass: &count * &count >= squared_card_bound,
            volume,
            product_volume,
            volume_bound,
            points,
            squared_card_bound,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceVolumeCheck {
    pub face: FaceIndex,
    pub n: Vec<usize>,
    pub volume: Rat,
    pub bound: Rat,
    pub slack: Rat,
    pub pass: bool,
}

/// `vol(F_I) <= 1 / (|N|! prod_{n in N} beta_n)` for disjoint `I`, `N` with
/// `|I ∪ N| = d`. With `I` empty this is the full-simplex volume bound.
pub fn face_volume_bound_check(
    s: &LatticeSimplex,
    beta: &BarycentricVector,
    removed: &[usize],
    n: &[usize],
) -> Result<FaceVolumeCheck> {
    let count = s.vertex_count();
    check_len(beta, count)?;
    let face = FaceIndex::removing(count, removed)?;
    let mut n_sorted = n.to_vec();
    n_sorted.sort_unstable();
    n_sorted.dedup();
    if n_sorted.len() != n.len() || n_sorted.iter().any(|&k| k >= count) {
        return Err(Error::InvalidFace("N must be distinct vertex indices".into()));
    }
    if n_sorted.iter().any(|k| face.removed().contains(k)) {
        return Err(Error::InvalidFace("I and N must be disjoint".into()));
    }
    if face.removed().len() + n_sorted.len() != count - 1 {
        return Err(Error::InvalidFace(format!(
            "|I| + |N| must equal d = {}",
            count - 1
        )));
    }
    let prod: Rat = n_sorted.iter().map(|&k| &beta[k]).product();
    let bound = (Rat::from_integer(factorial(n_sorted.len())) * prod).recip();
    let volume = normalized_volume(&face_of(s, &face)?);
    let slack = &bound - &volume;
    Ok(FaceVolumeCheck {
        face,
        n: n_sorted,
        pass: !slack.is_negative(),
        volume,
        bound,
        slack,
    })
}

/// Every admissible `(I, N)` pair, ordered by the bitmask of `I` and then by
/// the index left out of `N`.
pub fn all_face_volume_checks(
    s: &LatticeSimplex,
    beta: &BarycentricVector,
) -> Result<Vec<FaceVolumeCheck>> {
    let mut out = Vec::new();
    for face in FaceIndex::all(s.vertex_count()) {
        for &skip in face.kept() {
            let n: Vec<usize> = face.kept().iter().copied().filter(|&k| k != skip).collect();
            out.push(face_volume_bound_check(s, beta, face.removed(), &n)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionIdentity {
    pub face: FaceIndex,
    pub section_volume: Rat,
    pub beta_j: Rat,
    pub face_volume: Rat,
    /// `beta_J^(|J|-1) * vol(F_I)`
    pub predicted: Rat,
    pub pass: bool,
}

/// `vol(T_I) = beta_J^(|J|-1) vol(F_I)`, both sides exact.
pub fn section_volume_identity_check(
    s: &LatticeSimplex,
    beta: &BarycentricVector,
    fi: &FaceIndex,
) -> Result<SectionIdentity> {
    let section = section_simplex(s, beta, fi)?;
    let section_volume = section.normalized_volume();
    let beta_j: Rat = fi.kept().iter().map(|&j| &beta[j]).sum();
    let face_volume = normalized_volume(&face_of(s, fi)?);
    let predicted = num_traits::pow(beta_j.clone(), fi.kept().len() - 1) * &face_volume;
    Ok(SectionIdentity {
        face: fi.clone(),
        pass: section_volume == predicted,
        section_volume,
        beta_j,
        face_volume,
        predicted,
    })
}

/// The parallelotope `{x : 0 <= l_i(x) <= 2 beta_i, i != apex}` centred at
/// the interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelotopeBox {
    pub center: IntVector,
    pub apex: usize,
    /// `2 beta_i` for every `i != apex`, in vertex order.
    pub half_extents: Vec<Rat>,
    /// `2^d prod beta_i * d! vol(T)`.
    pub volume: Rat,
}

impl ParallelotopeBox {
    pub fn new(s: &LatticeSimplex, beta: &BarycentricVector, center: &[BigInt], apex: usize) -> Result<Self> {
        check_len(beta, s.vertex_count())?;
        if apex >= s.vertex_count() {
            return Err(Error::InvalidFace(format!("apex {apex} out of range")));
        }
        let d = s.dim();
        let half_extents: Vec<Rat> = (0..=d)
            .filter(|&i| i != apex)
            .map(|i| &beta[i] * Rat::from_integer(BigInt::from(2)))
            .collect();
        let volume = half_extents.iter().product::<Rat>()
            * Rat::from_integer(factorial(d))
            * normalized_volume(s);
        Ok(ParallelotopeBox {
            center: center.to_vec(),
            apex,
            half_extents,
            volume,
        })
    }

    /// Vertices `p_apex + sum c_i (p_i - p_apex)`, `c_i in {0, 2 beta_i}`.
    pub fn corners(&self, s: &LatticeSimplex) -> Vec<Vec<Rat>> {
        let others: Vec<usize> = (0..s.vertex_count()).filter(|&i| i != self.apex).collect();
        let base = &s.vertices()[self.apex];
        (0..1u64 << others.len())
            .map(|mask| {
                let mut x: Vec<Rat> = base.iter().cloned().map(Rat::from_integer).collect();
                for (k, &i) in others.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        for (xc, (a, b)) in x.iter_mut().zip(s.vertices()[i].iter().zip(base)) {
                            *xc += &self.half_extents[k] * Rat::from_integer(a - b);
                        }
                    }
                }
                x
            })
            .collect()
    }

    /// Volume from the edge determinant, independent of the product formula.
    pub fn volume_by_edges(&self, s: &LatticeSimplex) -> Result<Rat> {
        let corners = self.corners(s);
        let base = &corners[0];
        let d = s.dim();
        let cols: Vec<Vec<Rat>> = (0..d)
            .map(|k| corners[1 << k].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        Ok(det_rat(&RatMatrix::from_cols(&cols)?)?.abs())
    }

    pub fn interior_points(&self, s: &LatticeSimplex, cap: u64) -> Result<Vec<IntVector>> {
        let corners = self.corners(s);
        let d = s.ambient_dim();
        let lo: Vec<BigInt> = (0..d)
            .map(|k| corners.iter().map(|c| c[k].floor().to_integer()).min().unwrap())
            .collect();
        let hi: Vec<BigInt> = (0..d)
            .map(|k| corners.iter().map(|c| c[k].ceil().to_integer()).max().unwrap())
            .collect();
        let bounded: Vec<usize> = (0..s.vertex_count()).filter(|&i| i != self.apex).collect();
        scan_slab_interior(s, &bounded, &self.center, &lo, &hi, cap)
    }

    pub fn within_minkowski(&self, d: usize) -> bool {
        self.volume <= Rat::from_integer(num_traits::pow(BigInt::from(2), d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdCdSummary {
    pub dim: usize,
    pub members: usize,
    pub max_volume: Rat,
    pub max_volume_member: usize,
    pub min_beta: Rat,
    pub min_beta_member: usize,
    /// `(d+1)^(2^d - 1) / d!`
    pub volume_bound: Rat,
    /// `(d+1)^(-2^d)`
    pub beta_bound: Rat,
    /// `14^(-2^(d+1))`, printed for comparison only.
    pub alternative_beta_bound: Rat,
    pub pass: bool,
}

/// Maximum volume and minimum smallest coordinate over a corpus of
/// one-point simplices of a common dimension.
pub fn vd_cd_report(corpus: &[LatticeSimplex], cap: u64) -> Result<VdCdSummary> {
    let Some(first) = corpus.first() else {
        return Err(Error::Precondition("empty corpus".into()));
    };
    let d = first.dim();
    if let Some(bad) = corpus.iter().position(|s| s.dim() != d || !s.is_full_dimensional()) {
        return Err(Error::Dimension(format!(
            "corpus member {bad} is not a full-dimensional simplex of dimension {d}"
        )));
    }
    let mut max_volume = Rat::zero();
    let mut max_volume_member = 0;
    let mut min_beta = Rat::one();
    let mut min_beta_member = 0;
    for (k, s) in corpus.iter().enumerate() {
        let (_, beta) = onepoint_beta(s, cap)?;
        let volume = normalized_volume(s);
        if volume > max_volume {
            max_volume = volume;
            max_volume_member = k;
        }
        let smallest = beta.coords().iter().min().expect("nonempty").clone();
        if smallest < min_beta {
            min_beta = smallest;
            min_beta_member = k;
        }
    }
    let volume_bound = chain_volume_bound(d, d);
    let beta_bound = beta_lower_bound(d, d);
    let alternative_beta_bound = Rat::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(14), 1usize << (d + 1)),
    );
    Ok(VdCdSummary {
        dim: d,
        members: corpus.len(),
        pass: max_volume <= volume_bound && min_beta >= beta_bound,
        max_volume,
        max_volume_member,
        min_beta,
        min_beta_member,
        volume_bound,
        beta_bound,
        alternative_beta_bound,
    })
}

/// Blichfeldt's inequality for the simplex and each of its faces of
/// dimension at least one.
pub fn blichfeldt_all_faces(s: &LatticeSimplex, cap: u64) -> Result<Vec<(FaceIndex, BlichfeldtCheck)>> {
    FaceIndex::all(s.vertex_count())
        .into_iter()
        .filter(|f| f.kept().len() >= 2)
        .map(|f| {
            let g = face_of(s, &f)?;
            let k = count_face_points(s, &f, cap)?;
            Ok((f, blichfeldt_check(&g, k)))
        })
        .collect()
}
