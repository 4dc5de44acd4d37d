//! Constructive search for a second interior lattice point.
//!
//! Given an interior lattice point `p` with coordinates `beta` and a split
//! whose inequality fails (`det B < 1`), Minkowski's theorem yields integers
//! `m_0, ..., m_{t-1}, m` with `|m_k / beta_k - m| < 1` and `|m - sum m_k| < 1`.
//! Then `q = (m + 1) p - sum m_k p_k` is another interior lattice point.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bounds::{b_matrix, det_b, Partition, SortedBary};
use crate::error::{Error, Result};
use crate::exact::{det_rat, invert_rat, BigInt, Rat, RatMatrix};
use crate::points::{classify_point, PointClass};
use crate::simplex::{barycentric_of_int, IntVector, LatticeSimplex, RatVector};

/// A nonzero integer `x` with `max_k |(A x)_k| < 1`, for `0 < |det A| < 1`.
///
/// Searches every lattice point of `A^{-1} (-1, 1)^n`: the bounding box of
/// that parallelotope seeds the coordinate ranges, and a depth-first search
/// narrows each coordinate from every row before branching. Among solutions
/// normalized to a positive leading entry, returns the one with the smallest
/// `l1` norm, ties going to the lexicographically largest. `cap` bounds the
/// number of search nodes.
pub fn minkowski_solve(a: &RatMatrix, cap: u64) -> Result<IntVector> {
    let det = det_rat(a)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if det.abs() >= Rat::one() {
        return Err(Error::Precondition(format!(
            "|det A| = {} is not below 1",
            det.abs()
        )));
    }
    let inv = invert_rat(a)?;
    let n = a.rows();
    // |x_k| < sum_i |inv_{k,i}|, so |x_k| <= ceil(sum) - 1.
    let reach: Vec<BigInt> = (0..n)
        .map(|k| {
            let s: Rat = inv.row(k).iter().map(|v| v.abs()).sum();
            s.ceil().to_integer() - 1
        })
        .collect();
    // Row k of A scaled by its common denominator: |rows_k . x| < dens_k.
    let (rows, dens): (Vec<Vec<BigInt>>, Vec<BigInt>) = (0..n)
        .map(|k| {
            let den = a
                .row(k)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let row = a
                .row(k)
                .iter()
                .map(|v| v.numer() * (&den / v.denom()))
                .collect();
            (row, den)
        })
        .unzip();
    // Widest coordinate first; the rest are pinned down by the rows.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| reach[y].cmp(&reach[x]));
    let mut search = Search {
        rows: &rows,
        dens: &dens,
        order: &order,
        lo: reach.iter().map(|r| -r).collect(),
        hi: reach.clone(),
        x: vec![BigInt::zero(); n],
        best: None,
        nodes: 0,
        cap,
    };
    search.descend(0)?;
    search
        .best
        .map(|(_, v)| v)
        .ok_or_else(|| Error::Internal("no lattice point found despite |det A| < 1".into()))
}

struct Search<'a> {
    rows: &'a [Vec<BigInt>],
    dens: &'a [BigInt],
    order: &'a [usize],
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
    x: Vec<BigInt>,
    best: Option<(BigInt, IntVector)>,
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    /// Coordinates `order[..depth]` are fixed in `x`; the rest range over
    /// `lo..=hi`.
    fn descend(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::CapExceeded {
                cap: self.cap,
                needed: format!("more than {}", self.cap),
            });
        }
        if depth == self.order.len() {
            self.accept();
            return Ok(());
        }
        let var = self.order[depth];
        let fixed = &self.order[..depth];
        let mut lo = self.lo[var].clone();
        let mut hi = self.hi[var].clone();
        for (row, den) in self.rows.iter().zip(self.dens) {
            let coef = &row[var];
            if coef.is_zero() {
                continue;
            }
            // Range of the row without `var`.
            let mut s_min = BigInt::zero();
            let mut s_max = BigInt::zero();
            for (j, r) in row.iter().enumerate() {
                if j == var || r.is_zero() {
                    continue;
                }
                if fixed.contains(&j) {
                    let v = r * &self.x[j];
                    s_min += &v;
                    s_max += v;
                } else {
                    let (a, b) = (r * &self.lo[j], r * &self.hi[j]);
                    if a <= b {
                        s_min += a;
                        s_max += b;
                    } else {
                        s_min += b;
                        s_max += a;
                    }
                }
            }
            // -den < coef * var + s < den, strictly.
            let (mut num_lo, mut num_hi) = (-den - &s_max, den - &s_min);
            let mut c = coef.clone();
            if c.is_negative() {
                (num_lo, num_hi) = (-num_hi, -num_lo);
                c = -c;
            }
            lo = lo.max(num_lo.div_floor(&c) + 1);
            hi = hi.min(-((-num_hi).div_floor(&c)) - 1);
            if lo > hi {
                return Ok(());
            }
        }
        let mut v = lo;
        while v <= hi {
            self.x[var] = v.clone();
            self.descend(depth + 1)?;
            v += 1;
        }
        Ok(())
    }

    fn accept(&mut self) {
        let x = &self.x;
        if x.iter().all(Zero::is_zero) || !leading_positive(x) {
            return;
        }
        let inside = self.rows.iter().zip(self.dens).all(|(row, den)| {
            let v: BigInt = row.iter().zip(x).map(|(r, c)| r * c).sum();
            v.abs() < *den
        });
        if !inside {
            return;
        }
        let norm: BigInt = x.iter().map(|c| c.abs()).sum();
        let better = match &self.best {
            None => true,
            Some((bn, bx)) => norm < *bn || (norm == *bn && x > bx),
        };
        if better {
            self.best = Some((norm, x.clone()));
        }
    }
}

fn leading_positive(x: &[BigInt]) -> bool {
    x.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
}

/// Integers with `m = sum m_k`, `m > 0` and `m_k / beta_k - m < 1` for every
/// `k`. `m_values[k]` pairs with `beta_j[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleM {
    pub m_values: Vec<BigInt>,
    pub m: BigInt,
}

impl AdmissibleM {
    /// Re-checks the three defining conditions against `beta_j`.
    pub fn verify(&self, beta_j: &[Rat]) -> bool {
        self.m_values.len() == beta_j.len()
            && self.m.is_positive()
            && self.m_values.iter().sum::<BigInt>() == self.m
            && self.m_values.iter().zip(beta_j).all(|(mk, b)| {
                Rat::from_integer(mk.clone()) / b - Rat::from_integer(self.m.clone()) < Rat::one()
            })
    }
}

/// For the cut `J` = the `t` largest coordinates: `None` when `det B >= 1`,
/// otherwise the admissible integers from a Minkowski solution of `B`.
pub fn find_admissible_m(sb: &SortedBary, t: usize, cap: u64) -> Result<Option<AdmissibleM>> {
    let part = sb.cut(t)?;
    let beta = crate::simplex::BarycentricVector::new(sb.unsorted())?;
    if det_b(&beta, &part)? >= Rat::one() {
        return Ok(None);
    }
    let beta_j = &sb.sorted[..t];
    let mut x = minkowski_solve(&b_matrix(beta_j), cap)?;
    if x[t].is_negative() {
        x.iter_mut().for_each(|c| *c = -&*c);
    }
    let m = x.pop().expect("t + 1 entries");
    if m.is_zero() {
        return Err(Error::Internal("Minkowski solution has m = 0".into()));
    }
    // |m - sum m_k| < 1 between integers forces equality.
    let found = AdmissibleM { m_values: x, m };
    if !found.verify(beta_j) {
        return Err(Error::Internal(format!(
            "Minkowski solution {found:?} is not admissible"
        )));
    }
    Ok(Some(found))
}

/// Witness that a simplex has at least two interior lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondPointCertificate {
    pub point: IntVector,
    /// Original vertex indices in non-increasing coordinate order.
    pub perm: Vec<usize>,
    /// Number of largest coordinates placed in `J`.
    pub cut: usize,
    pub partition: Partition,
    /// Coordinates of the `J` vertices, in the order of `perm`.
    pub beta_j: Vec<Rat>,
    pub det_b: Rat,
    pub admissible: AdmissibleM,
    /// `sum (m_k / m) p_k` over the `J` vertices.
    pub r: RatVector,
    pub q: IntVector,
    pub q_interior: bool,
    pub q_distinct: bool,
}

/// Tries the cuts `t = 1, ..., d` in order and certifies the first one with
/// `det B < 1`. `None` means every split inequality holds at `p`.
pub fn second_interior_point(
    s: &LatticeSimplex,
    p: &[BigInt],
    cap: u64,
) -> Result<Option<SecondPointCertificate>> {
    if classify_point(s, p)? != PointClass::Interior {
        return Err(Error::Precondition(format!(
            "{} is not an interior point",
            crate::simplex::format_int_vector(p)
        )));
    }
    let beta = barycentric_of_int(s, p)?;
    let sb = SortedBary::new(&beta);
    for t in 1..=sb.dim() {
        let Some(admissible) = find_admissible_m(&sb, t, cap)? else {
            continue;
        };
        let partition = sb.cut(t)?;
        let j_vertices: Vec<&IntVector> = sb.perm[..t].iter().map(|&k| &s.vertices()[k]).collect();
        let dim = p.len();
        let mut weighted = vec![BigInt::zero(); dim];
        for (mk, v) in admissible.m_values.iter().zip(&j_vertices) {
            for (w, c) in weighted.iter_mut().zip(v.iter()) {
                *w += mk * c;
            }
        }
        let r: RatVector = weighted
            .iter()
            .map(|w| Rat::new(w.clone(), admissible.m.clone()))
            .collect();
        let q: IntVector = p
            .iter()
            .zip(&weighted)
            .map(|(pc, w)| (&admissible.m + 1) * pc - w)
            .collect();
        let q_interior = classify_point(s, &q)? == PointClass::Interior;
        let q_distinct = q.as_slice() != p;
        if !q_interior || !q_distinct {
            return Err(Error::Internal(format!(
                "certificate point {} failed verification",
                crate::simplex::format_int_vector(&q)
            )));
        }
        return Ok(Some(SecondPointCertificate {
            point: p.to_vec(),
            perm: sb.perm.clone(),
            cut: t,
            det_b: det_b(&beta, &partition)?,
            partition,
            beta_j: sb.sorted[..t].to_vec(),
            admissible,
            r,
            q,
            q_interior,
            q_distinct,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::generators::{zpw_simplex, Verification};
    use crate::points::{enumerate_interior, DEFAULT_CAP};
    use crate::simplex::{int_vector, BarycentricVector};

    fn diag(entries: &[Rat]) -> RatMatrix {
        let mut m = RatMatrix::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        m
    }

    #[test]
    fn minkowski_examples() {
        let x = minkowski_solve(&diag(&[rat(1, 2), rat(1, 2)]), DEFAULT_CAP).unwrap();
        assert_eq!(x, int_vector(&[1, 0]));
        let x = minkowski_solve(&diag(&[rat(2, 1), rat(1, 3)]), DEFAULT_CAP).unwrap();
        assert_eq!(x, int_vector(&[0, 1]));
        assert_eq!(
            minkowski_solve(&diag(&[rat(1, 1), rat(1, 1)]), DEFAULT_CAP),
            Err(Error::Precondition("|det A| = 1 is not below 1".into()))
        );
        assert_eq!(
            minkowski_solve(&diag(&[rat(0, 1), rat(1, 2)]), DEFAULT_CAP),
            Err(Error::Singular)
        );
    }

    #[test]
    fn minkowski_on_violated_split() {
        let b = b_matrix(&[rat(1, 2), rat(5, 14)]);
        let x = minkowski_solve(&b, DEFAULT_CAP).unwrap();
        assert_eq!(x, int_vector(&[1, 1, 2]));
    }

    #[test]
    fn admissible_for_triangle() {
        let beta = BarycentricVector::new(vec![rat(5, 14), rat(1, 7), rat(1, 2)]).unwrap();
        let sb = SortedBary::new(&beta);
        assert_eq!(sb.perm, vec![2, 0, 1]);
        assert_eq!(find_admissible_m(&sb, 1, DEFAULT_CAP).unwrap(), None);
        let m = find_admissible_m(&sb, 2, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(m.m_values, int_vector(&[1, 1]));
        assert_eq!(m.m, BigInt::from(2));
    }

    #[test]
    fn admissible_absent_when_inequalities_hold() {
        let zpw2 = BarycentricVector::new(vec![rat(1, 6), rat(1, 2), rat(1, 3)]).unwrap();
        let sb = SortedBary::new(&zpw2);
        for t in 1..=2 {
            assert_eq!(find_admissible_m(&sb, t, DEFAULT_CAP).unwrap(), None);
        }
        let half = BarycentricVector::new(vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(find_admissible_m(&SortedBary::new(&half), 1, DEFAULT_CAP).unwrap(), None);
    }

    #[test]
    fn certificate_for_triangle() {
        let s = LatticeSimplex::from_i64(&[&[0, 0], &[7, 0], &[0, 2]]).unwrap();
        let cert = second_interior_point(&s, &int_vector(&[1, 1]), DEFAULT_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(cert.q, int_vector(&[3, 1]));
        assert_eq!(cert.r, vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(cert.admissible.m, BigInt::from(2));
        assert_eq!(cert.det_b, rat(4, 5));
        assert_eq!(cert.partition.i(), &[1]);
        let census = enumerate_interior(&s, DEFAULT_CAP).unwrap();
        assert!(census.points.contains(&cert.q));
    }

    #[test]
    fn certificate_absent_cases() {
        let z3 = zpw_simplex(3, Verification::Verify, DEFAULT_CAP).unwrap();
        assert_eq!(
            second_interior_point(&z3.simplex, &z3.interior_point, DEFAULT_CAP).unwrap(),
            None
        );
        // Three interior points, yet no split fails at (1,1).
        let s = LatticeSimplex::from_i64(&[&[0, 0], &[4, 0], &[0, 4]]).unwrap();
        assert_eq!(enumerate_interior(&s, DEFAULT_CAP).unwrap().len(), 3);
        assert_eq!(
            second_interior_point(&s, &int_vector(&[1, 1]), DEFAULT_CAP).unwrap(),
            None
        );
        assert!(matches!(
            second_interior_point(&s, &int_vector(&[0, 0]), DEFAULT_CAP),
            Err(Error::Precondition(_))
        ));
    }
}
