mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use onepoint::bounds::{check_all_partitions, partition_slack, Partition, ParallelotopeBox};
use onepoint::certificate::minkowski_solve;
use onepoint::exact::{det_int, det_rat, invert_rat, snf_divisors};
use onepoint::generators::normal_form_2d;
use onepoint::points::{
    classify_point, count_closure_points, count_face_points, enumerate_interior, PointClass,
    DEFAULT_CAP,
};
use onepoint::simplex::{barycentric_by_inverse, barycentric_of, barycentric_of_int};
use onepoint::{BarycentricVector, FaceIndex, IntMatrix, LatticeSimplex, Rat, RatMatrix};
use proptest::prelude::*;
use rand::Rng;

fn int_matrix(n: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, n), n)
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn simplex_strategy(d: usize, radius: i64) -> impl Strategy<Value = LatticeSimplex> {
    prop::collection::vec(prop::collection::vec(-radius..=radius, d), d + 1).prop_filter_map(
        "degenerate",
        |v| {
            LatticeSimplex::new(to_big(&v))
                .ok()
                .filter(LatticeSimplex::is_full_dimensional)
        },
    )
}

/// All nonzero solutions of `|A x|_inf < 1` in the bounding box, by brute force.
fn brute_minkowski(a: &RatMatrix, reach: i64) -> Vec<Vec<i64>> {
    let n = a.rows();
    let mut out = Vec::new();
    let mut x = vec![-reach; n];
    loop {
        if x.iter().any(|&c| c != 0) {
            let inside = (0..n).all(|r| {
                let v: Rat = (0..n).map(|c| &a[(r, c)] * Rat::from_integer(BigInt::from(x[c]))).sum();
                v.abs() < Rat::one()
            });
            if inside {
                out.push(x.clone());
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if x[k] < reach {
                x[k] += 1;
                break;
            }
            x[k] = -reach;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_matches_cofactor_oracle(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-9..=9)).collect()).collect();
        let big = to_big(&rows);
        let m = IntMatrix::from_rows(big.clone()).unwrap();
        prop_assert_eq!(det_int(&m).unwrap(), common::cofactor_det(&big));
        prop_assert_eq!(det_rat(&m.to_rat()).unwrap(), Rat::from_integer(common::cofactor_det(&big)));
    }

    #[test]
    fn inverse_is_exact(rows in int_matrix(3, 6), dens in prop::collection::vec(1i64..=5, 9)) {
        let entries: Vec<Vec<Rat>> = rows
            .iter()
            .enumerate()
            .map(|(r, row)| row.iter().enumerate().map(|(c, &v)| Rat::new(v.into(), dens[3 * r + c].into())).collect())
            .collect();
        let m = RatMatrix::from_rows(entries).unwrap();
        match invert_rat(&m) {
            Ok(inv) => prop_assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3)),
            Err(_) => prop_assert!(det_rat(&m).unwrap().is_zero()),
        }
    }

    #[test]
    fn smith_divisors_chain(rows in 1usize..=4, cols in 1usize..=4, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let entries: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-8..=8)).collect()).collect();
        let m = IntMatrix::from_rows(to_big(&entries)).unwrap();
        let divs = snf_divisors(&m);
        prop_assert!(divs.iter().all(|d| d.is_positive()));
        for w in divs.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        if rows == cols {
            let det = det_int(&m).unwrap();
            if det.is_zero() {
                prop_assert!(divs.len() < rows);
            } else {
                prop_assert_eq!(divs.iter().product::<BigInt>(), det.abs());
            }
        }
    }

    #[test]
    fn barycentric_round_trip(s in simplex_strategy(3, 5), weights in prop::collection::vec(-6i64..=6, 3)) {
        // Weights summing to one, the last one absorbing the remainder.
        let mut alpha: Vec<Rat> = weights.iter().map(|&w| Rat::new(w.into(), 7.into())).collect();
        let rest: Rat = Rat::one() - alpha.iter().sum::<Rat>();
        alpha.push(rest);
        let x = s.point_at(&alpha).unwrap();
        let direct = barycentric_of(&s, &x).unwrap();
        let by_inverse = barycentric_by_inverse(&s, &x).unwrap();
        prop_assert_eq!(direct.coords(), alpha.as_slice());
        prop_assert_eq!(by_inverse.coords(), alpha.as_slice());
    }

    #[test]
    fn census_agrees_with_classification(s in simplex_strategy(2, 6)) {
        let census = enumerate_interior(&s, DEFAULT_CAP).unwrap();
        let (lo, hi) = s.bounding_box();
        let mut interior = Vec::new();
        let mut closure = 0u64;
        let (x0, x1) = (i64::try_from(&lo[0]).unwrap(), i64::try_from(&hi[0]).unwrap());
        let (y0, y1) = (i64::try_from(&lo[1]).unwrap(), i64::try_from(&hi[1]).unwrap());
        for x in x0..=x1 {
            for y in y0..=y1 {
                let p = vec![BigInt::from(x), BigInt::from(y)];
                match classify_point(&s, &p).unwrap() {
                    PointClass::Interior => { interior.push(p); closure += 1; }
                    PointClass::Boundary(_) => closure += 1,
                    PointClass::Outside => {}
                }
            }
        }
        prop_assert_eq!(&census.points, &interior);
        let full = count_face_points(&s, &FaceIndex::removing(3, &[]).unwrap(), DEFAULT_CAP).unwrap();
        prop_assert_eq!(full, closure);
        prop_assert_eq!(count_closure_points(&s, DEFAULT_CAP).unwrap(), closure);
        prop_assert!(closure >= census.len() as u64 + 3);
    }

    #[test]
    fn moving_larger_coordinate_into_j_never_loosens(seed in any::<u64>(), d in 1usize..=5) {
        let mut rng = common::rng(seed);
        let beta = BarycentricVector::new(common::random_beta(&mut rng, d + 1, 30)).unwrap();
        for part in Partition::all(d + 1) {
            for &i in part.i() {
                for &j in part.j() {
                    if beta[i] <= beta[j] {
                        continue;
                    }
                    let mut new_i: Vec<usize> = part.i().iter().copied().filter(|&k| k != i).collect();
                    new_i.push(j);
                    let swapped = Partition::new(d + 1, &new_i).unwrap();
                    let before = partition_slack(&beta, &part).unwrap();
                    let after = partition_slack(&beta, &swapped).unwrap();
                    prop_assert!(after <= before, "{:?} -> {:?}", part, swapped);
                }
            }
        }
    }

    #[test]
    fn normal_form_is_affine_invariant(seed in any::<u64>(), member in 0usize..4, order in 0usize..6) {
        let bases: [&[&[i64]]; 4] = [
            &[&[0, 0], &[3, 0], &[0, 3]],
            &[&[0, 0], &[2, 0], &[0, 3]],
            &[&[0, 0], &[7, 0], &[0, 2]],
            &[&[-1, -1], &[1, 0], &[0, 1]],
        ];
        let s = LatticeSimplex::from_i64(bases[member]).unwrap();
        let mut rng = common::rng(seed);
        let u = common::random_unimodular(&mut rng, 2, 4);
        let shift = [rng.random_range(-9..=9), rng.random_range(-9..=9)];
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let image = common::map_simplex(&u, &shift, &s);
        let permuted = LatticeSimplex::new(perms[order].iter().map(|&k| image.vertices()[k].clone()).collect()).unwrap();
        let a = normal_form_2d(&s, DEFAULT_CAP).unwrap();
        let b = normal_form_2d(&permuted, DEFAULT_CAP).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&normal_form_2d(&a.simplex, DEFAULT_CAP).unwrap(), &a);
        let det = a.transform[(0, 0)].clone() * &a.transform[(1, 1)] - &a.transform[(0, 1)] * &a.transform[(1, 0)];
        prop_assert!(det.abs().is_one());
    }

    #[test]
    fn pruned_minkowski_matches_brute_force(n in 1usize..=3, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let entries: Vec<Vec<Rat>> = (0..n)
            .map(|_| (0..n).map(|_| Rat::new(rng.random_range(-6i64..=6).into(), rng.random_range(1i64..=4).into())).collect())
            .collect();
        let a = RatMatrix::from_rows(entries).unwrap();
        let det = det_rat(&a).unwrap();
        prop_assume!(!det.is_zero() && det.abs() < Rat::one());
        let inv = invert_rat(&a).unwrap();
        let reach = (0..n)
            .map(|k| inv.row(k).iter().map(|v| v.abs()).sum::<Rat>().ceil().to_integer())
            .max()
            .unwrap();
        prop_assume!(reach <= BigInt::from(12));
        let reach = i64::try_from(&reach).unwrap();
        let all = brute_minkowski(&a, reach);
        let expected = all
            .into_iter()
            .filter(|x| x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0))
            .min_by(|x, y| {
                let nx: i64 = x.iter().map(|c| c.abs()).sum();
                let ny: i64 = y.iter().map(|c| c.abs()).sum();
                nx.cmp(&ny).then(y.cmp(x))
            })
            .expect("Minkowski guarantees a solution");
        let got = minkowski_solve(&a, DEFAULT_CAP).unwrap();
        prop_assert_eq!(got, expected.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}

#[test]
fn parallelotope_holds_only_the_interior_point() {
    for m in common::generated_corpus(3) {
        let beta = barycentric_of_int(&m.simplex, &m.point).unwrap();
        let d = m.simplex.dim();
        for apex in 0..=d {
            let b = ParallelotopeBox::new(&m.simplex, &beta, &m.point, apex).unwrap();
            assert_eq!(b.interior_points(&m.simplex, DEFAULT_CAP).unwrap(), vec![m.point.clone()], "{}", m.name);
            assert_eq!(b.volume_by_edges(&m.simplex).unwrap(), b.volume);
            assert!(b.within_minkowski(d), "{}", m.name);
        }
    }
}

#[test]
fn census_commutes_with_unimodular_maps() {
    let mut rng = common::rng(31);
    for k in 0..60 {
        let d = 1 + k % 3;
        let Some(s) = common::random_simplex(&mut rng, d, 4) else {
            continue;
        };
        let u = common::random_unimodular(&mut rng, d, d + 2);
        let shift: Vec<i64> = (0..d).map(|_| rng.random_range(-3..=3)).collect();
        let image = common::map_simplex(&u, &shift, &s);
        let mut mapped: Vec<_> = enumerate_interior(&s, DEFAULT_CAP)
            .unwrap()
            .points
            .iter()
            .map(|x| common::apply_affine(&u, &shift, x))
            .collect();
        mapped.sort();
        assert_eq!(enumerate_interior(&image, DEFAULT_CAP).unwrap().points, mapped);
        assert_eq!(
            onepoint::simplex::normalized_volume(&s),
            onepoint::simplex::normalized_volume(&image)
        );
        let vol_times_fact = onepoint::simplex::normalized_volume(&s)
            * Rat::from_integer(onepoint::exact::factorial(d));
        assert!(vol_times_fact.is_integer() && vol_times_fact.is_positive());
    }
}

#[test]
fn corpus_det_b_at_least_one() {
    for m in common::generated_corpus(4) {
        let beta = barycentric_of_int(&m.simplex, &m.point).unwrap();
        for part in Partition::all(beta.len()) {
            let det = onepoint::bounds::det_b(&beta, &part).unwrap();
            assert!(det >= Rat::one(), "{} {:?}", m.name, part);
        }
        assert!(check_all_partitions(&beta).pass);
    }
}
