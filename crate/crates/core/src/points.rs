//! Lattice point classification and bounding-box enumeration.
//!
//! Scans walk the integer box in lexicographic order and evaluate the
//! integer barycentric numerators incrementally. When every numerator is
//! guaranteed to fit, the walk runs on `i128`; otherwise it falls back to
//! `BigInt`. The first axis is split across rayon workers and the slices are
//! concatenated in order, so output is deterministic.

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{factorial, BigInt, Rat};
use crate::simplex::{
    barycentric_of_int, face_of, normalized_volume, AffineForms, FaceIndex, IntVector,
    LatticeSimplex,
};

/// Default limit on the number of candidate points a single scan may visit.
pub const DEFAULT_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointClass {
    Interior,
    /// On the boundary; carries the inclusion-minimal face containing the point.
    Boundary(FaceIndex),
    Outside,
}

/// All interior lattice points, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorCensus {
    pub points: Vec<IntVector>,
    pub scanned_box: Vec<(BigInt, BigInt)>,
}

impl InteriorCensus {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn classify_point(s: &LatticeSimplex, x: &[BigInt]) -> Result<PointClass> {
    let beta = barycentric_of_int(s, x)?;
    if beta.coords().iter().any(Signed::is_negative) {
        return Ok(PointClass::Outside);
    }
    let zeros: Vec<usize> = (0..beta.len()).filter(|&i| beta[i].is_zero()).collect();
    if zeros.is_empty() {
        Ok(PointClass::Interior)
    } else {
        Ok(PointClass::Boundary(FaceIndex::removing(beta.len(), &zeros)?))
    }
}

/// Sign requirement on one barycentric numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Positive,
    NonNegative,
    Zero,
}

/// A set of constraints `lower_i < / <= / = numerator_i (< upper_i)`.
#[derive(Clone, Debug)]
struct Constraint {
    row: Vec<BigInt>,
    sign: Sign,
    /// Optional strict upper bound on the numerator.
    upper: Option<BigInt>,
}

fn box_size(lo: &[BigInt], hi: &[BigInt]) -> BigInt {
    lo.iter()
        .zip(hi)
        .map(|(l, h)| {
            let w: BigInt = h - l + 1;
            if w.is_negative() {
                BigInt::zero()
            } else {
                w
            }
        })
        .product()
}

fn check_cap(lo: &[BigInt], hi: &[BigInt], cap: u64) -> Result<()> {
    let size = box_size(lo, hi);
    if size > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            cap,
            needed: size.to_string(),
        });
    }
    Ok(())
}

/// Numeric lane used by the scanner.
trait Lane: Clone + Send + Sync + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn add_assign(&mut self, other: &Self);
    fn mul_add(acc: &mut Self, a: &Self, x: i64);
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_zero_lane(&self) -> bool;
    fn lt(&self, other: &Self) -> bool;
}

impl Lane for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    fn mul_add(acc: &mut Self, a: &Self, x: i64) {
        *acc += *a * x as i128;
    }
    fn is_pos(&self) -> bool {
        *self > 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn is_zero_lane(&self) -> bool {
        *self == 0
    }
    fn lt(&self, other: &Self) -> bool {
        self < other
    }
}

impl Lane for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_add(acc: &mut Self, a: &Self, x: i64) {
        *acc += a * BigInt::from(x);
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_zero_lane(&self) -> bool {
        self.is_zero()
    }
    fn lt(&self, other: &Self) -> bool {
        self < other
    }
}

struct LaneConstraint<T> {
    coeffs: Vec<T>,
    constant: T,
    sign: Sign,
    upper: Option<T>,
}

impl<T: Lane> LaneConstraint<T> {
    fn from_constraint(c: &Constraint) -> Option<Self> {
        let d = c.row.len() - 1;
        Some(LaneConstraint {
            coeffs: c.row[..d].iter().map(T::from_big).collect::<Option<_>>()?,
            constant: T::from_big(&c.row[d])?,
            sign: c.sign,
            upper: match &c.upper {
                Some(u) => Some(T::from_big(u)?),
                None => None,
            },
        })
    }

    fn eval(&self, x: &[i64]) -> T {
        let mut acc = self.constant.clone();
        for (a, &xi) in self.coeffs.iter().zip(x) {
            T::mul_add(&mut acc, a, xi);
        }
        acc
    }

    fn accepts(&self, v: &T) -> bool {
        let ok = match self.sign {
            Sign::Positive => v.is_pos(),
            Sign::NonNegative => !v.is_neg(),
            Sign::Zero => v.is_zero_lane(),
        };
        ok && self.upper.as_ref().is_none_or(|u| v.lt(u))
    }
}

/// Whether every numerator stays far inside the `i128` range on the box.
fn fits_i128(constraints: &[Constraint], lo: &[i64], hi: &[i64]) -> bool {
    let limit = BigInt::from(1u128 << 120);
    let reach: BigInt = lo
        .iter()
        .zip(hi)
        .map(|(&l, &h)| BigInt::from(l.abs().max(h.abs())))
        .sum::<BigInt>()
        + 1;
    constraints.iter().all(|c| {
        let biggest = c.row.iter().map(|a| a.abs()).max().unwrap_or_default();
        let upper_ok = c.upper.as_ref().is_none_or(|u| u.abs() < limit);
        &biggest * &reach < limit && upper_ok
    })
}

/// Walks the box `[lo, hi]`, keeping points accepted by every constraint.
/// `collect` selects between returning points and only counting them.
fn scan(
    constraints: &[Constraint],
    lo: &[BigInt],
    hi: &[BigInt],
    cap: u64,
    collect: bool,
) -> Result<ScanOut> {
    check_cap(lo, hi, cap)?;
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Ok(ScanOut::default());
    }
    // A box under the cap can still sit far from the origin.
    let lo_i: Option<Vec<i64>> = lo.iter().map(ToPrimitive::to_i64).collect();
    let hi_i: Option<Vec<i64>> = hi.iter().map(ToPrimitive::to_i64).collect();
    let (Some(lo_i), Some(hi_i)) = (lo_i, hi_i) else {
        return Err(Error::CapExceeded {
            cap,
            needed: "coordinates beyond 64-bit range".into(),
        });
    };
    if fits_i128(constraints, &lo_i, &hi_i) {
        let lanes: Option<Vec<LaneConstraint<i128>>> =
            constraints.iter().map(LaneConstraint::from_constraint).collect();
        if let Some(lanes) = lanes {
            return Ok(scan_lanes(&lanes, &lo_i, &hi_i, collect));
        }
    }
    let lanes: Vec<LaneConstraint<BigInt>> = constraints
        .iter()
        .map(|c| LaneConstraint::from_constraint(c).expect("BigInt lanes always convert"))
        .collect();
    Ok(scan_lanes(&lanes, &lo_i, &hi_i, collect))
}

#[derive(Default)]
struct ScanOut {
    points: Vec<Vec<i64>>,
    count: u64,
}

fn scan_lanes<T: Lane>(
    lanes: &[LaneConstraint<T>],
    lo: &[i64],
    hi: &[i64],
    collect: bool,
) -> ScanOut {
    let d = lo.len();
    let slices: Vec<ScanOut> = (lo[0]..=hi[0])
        .into_par_iter()
        .map(|first| {
            let mut out = ScanOut::default();
            let mut x = lo.to_vec();
            x[0] = first;
            let last = d - 1;
            let step: Vec<&T> = lanes.iter().map(|l| &l.coeffs[last]).collect();
            'outer: loop {
                // Evaluate at the start of the innermost run, then step.
                let mut values: Vec<T> = lanes.iter().map(|l| l.eval(&x)).collect();
                let start = if last == 0 { first } else { lo[last] };
                let end = if last == 0 { first } else { hi[last] };
                x[last] = start;
                loop {
                    if lanes.iter().zip(&values).all(|(l, v)| l.accepts(v)) {
                        out.count += 1;
                        if collect {
                            out.points.push(x.clone());
                        }
                    }
                    if x[last] == end {
                        break;
                    }
                    x[last] += 1;
                    for (v, s) in values.iter_mut().zip(&step) {
                        v.add_assign(s);
                    }
                }
                // Odometer carry over the middle axes.
                let mut axis = last;
                loop {
                    if axis <= 1 {
                        break 'outer;
                    }
                    axis -= 1;
                    if x[axis] < hi[axis] {
                        x[axis] += 1;
                        x[axis + 1..d].clone_from_slice(&lo[axis + 1..d]);
                        break;
                    }
                }
            }
            out
        })
        .collect();
    let mut merged = ScanOut::default();
    for s in slices {
        merged.count += s.count;
        merged.points.extend(s.points);
    }
    merged
}

fn to_big_points(points: Vec<Vec<i64>>) -> Vec<IntVector> {
    points
        .into_iter()
        .map(|p| p.into_iter().map(BigInt::from).collect())
        .collect()
}

fn interior_constraints(forms: &AffineForms) -> Vec<Constraint> {
    forms
        .rows
        .iter()
        .map(|row| Constraint {
            row: row.clone(),
            sign: Sign::Positive,
            upper: None,
        })
        .collect()
}

/// All integer points strictly inside a full-dimensional simplex.
pub fn enumerate_interior(s: &LatticeSimplex, cap: u64) -> Result<InteriorCensus> {
    let forms = s.forms()?;
    let (lo, hi) = s.bounding_box();
    let out = scan(&interior_constraints(forms), &lo, &hi, cap, true)?;
    Ok(InteriorCensus {
        points: to_big_points(out.points),
        scanned_box: lo.into_iter().zip(hi).collect(),
    })
}

/// Interior points of the region `0 < l_i(x) < 2 * beta_i` for `i` in
/// `bounded`, scanned over `[lo, hi]`. Used for the parallelotope around an
/// interior point.
pub(crate) fn scan_slab_interior(
    s: &LatticeSimplex,
    bounded: &[usize],
    point: &[BigInt],
    lo: &[BigInt],
    hi: &[BigInt],
    cap: u64,
) -> Result<Vec<IntVector>> {
    let forms = s.forms()?;
    let constraints: Vec<Constraint> = bounded
        .iter()
        .map(|&i| Constraint {
            row: forms.rows[i].clone(),
            sign: Sign::Positive,
            upper: Some(forms.numerator(i, point) * 2),
        })
        .collect();
    Ok(to_big_points(scan(&constraints, lo, hi, cap, true)?.points))
}

/// Lattice points of the face `F_I`, counted over the face's bounding box.
pub fn count_face_points(s: &LatticeSimplex, fi: &FaceIndex, cap: u64) -> Result<u64> {
    let forms = s.forms()?;
    let face = face_of(s, fi)?;
    let (lo, hi) = face.bounding_box();
    let constraints: Vec<Constraint> = (0..s.vertex_count())
        .map(|i| Constraint {
            row: forms.rows[i].clone(),
            sign: if fi.removed().contains(&i) {
                Sign::Zero
            } else {
                Sign::NonNegative
            },
            upper: None,
        })
        .collect();
    let out = scan(&constraints, &lo, &hi, cap, false)?;
    Ok(out.count)
}

/// All lattice points of a full-dimensional simplex, boundary included.
pub fn count_closure_points(s: &LatticeSimplex, cap: u64) -> Result<u64> {
    count_face_points(s, &FaceIndex::removing(s.vertex_count(), &[])?, cap)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlichfeldtCheck {
    pub dim: usize,
    pub points: u64,
    pub bound: Rat,
    pub slack: Rat,
    pub pass: bool,
}

/// `k_dim + k_dim! * vol(f) >= k` in the intrinsic dimension of `f`.
pub fn blichfeldt_check(f: &LatticeSimplex, points: u64) -> BlichfeldtCheck {
    let k = f.dim();
    let bound = Rat::from_integer(BigInt::from(k))
        + Rat::from_integer(factorial(k)) * normalized_volume(f);
    let slack = &bound - Rat::from_integer(BigInt::from(points));
    BlichfeldtCheck {
        dim: k,
        points,
        pass: !slack.is_negative(),
        bound,
        slack,
    }
}

/// The unique interior lattice point, if there is exactly one.
pub fn is_onepoint(s: &LatticeSimplex, cap: u64) -> Result<Option<IntVector>> {
    let census = enumerate_interior(s, cap)?;
    Ok(match census.points.len() {
        1 => census.points.into_iter().next(),
        _ => None,
    })
}

/// Like [`is_onepoint`], but a wrong interior count is an error.
pub fn unique_interior_point(s: &LatticeSimplex, cap: u64) -> Result<IntVector> {
    let census = enumerate_interior(s, cap)?;
    if census.points.len() != 1 {
        return Err(Error::NotOnePoint {
            interior: census.points.len(),
        });
    }
    Ok(census.points.into_iter().next().expect("one point"))
}
