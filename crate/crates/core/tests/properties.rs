use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use symcircle::complex::{Simplex, SimplicialComplex};
use symcircle::geometry::{in_d, in_p, in_s, p_map, rat, Point3};
use symcircle::homology::{
    boundary_matrix, homology_groups, rational_betti_numbers, rational_rank, smith_normal_form,
    smith_normal_form_with_transforms, IntMatrix,
};
use symcircle::quotient::{apply_vertex_map, is_isomorphic, VertexMap};

fn complex_strategy(max_vertex: u32) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0..max_vertex, 1..=4), 1..10).prop_map(
        |facets| {
            SimplicialComplex::generated_by(facets.into_iter().map(|f| Simplex::new(f).unwrap()))
        },
    )
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn square_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-5i64..=5, n), n))
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    if m.len() == 1 {
        return i128::from(m[0][0]);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| *x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * i128::from(m[0][j]) * cofactor_det(&minor)
        })
        .sum()
}

fn permutation_strategy(n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle()
}

fn relabel(perm: &[u32], offset: u32) -> VertexMap {
    VertexMap::new(
        perm.iter()
            .enumerate()
            .map(|(i, &p)| (i as u32, p + offset)),
    )
}

fn point_strategy() -> impl Strategy<Value = Point3> {
    (1i64..=12, -14i64..=14, -14i64..=14, -14i64..=14)
        .prop_map(|(n, a, b, c)| Point3::new(rat(a, n), rat(b, n), rat(c, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn boundary_of_boundary_vanishes(k in complex_strategy(8)) {
        let top = k.dim().unwrap();
        for d in 2..=top {
            let lower = boundary_matrix(&k, d - 1).unwrap();
            let upper = boundary_matrix(&k, d).unwrap();
            prop_assert!(lower.mul(&upper).is_zero(), "d = {}", d);
        }
    }

    #[test]
    fn euler_characteristic_two_ways(k in complex_strategy(8)) {
        let from_betti: i64 = homology_groups(&k, false)
            .iter()
            .enumerate()
            .map(|(d, g)| if d % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum();
        prop_assert_eq!(k.euler_characteristic(), from_betti);
    }

    #[test]
    fn integral_and_rational_betti_agree(k in complex_strategy(8)) {
        let integral: Vec<usize> = homology_groups(&k, false).iter().map(|g| g.betti).collect();
        prop_assert_eq!(integral, rational_betti_numbers(&k));
    }

    #[test]
    fn snf_factors_form_a_divisibility_chain(rows in matrix_strategy(6)) {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        let f = &snf.invariant_factors;
        prop_assert!(f.iter().all(|d| d.is_positive()));
        for w in f.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]), "{:?}", f);
        }
        prop_assert_eq!(snf.rank(), rational_rank(&m));
    }

    #[test]
    fn snf_preserves_absolute_determinant(rows in square_strategy(6)) {
        let n = rows.len();
        let det = BigInt::from(cofactor_det(&rows)).abs();
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
        if snf.rank() < n {
            prop_assert!(det.is_zero());
        } else {
            let product: BigInt = snf.invariant_factors.iter().product();
            prop_assert_eq!(product, det);
        }
    }

    #[test]
    fn snf_transforms_diagonalize(rows in matrix_strategy(5)) {
        let m = IntMatrix::from_rows(&rows);
        let dec = smith_normal_form_with_transforms(&m);
        prop_assert_eq!(dec.u.mul(&m).mul(&dec.v), dec.diagonal.clone());
        prop_assert_eq!(dec.result, smith_normal_form(&m));
    }

    #[test]
    fn strata_are_nested(pt in point_strategy()) {
        if in_d(&pt) {
            prop_assert!(in_s(&pt));
        }
        if in_s(&pt) {
            prop_assert!(in_p(&pt));
        }
    }

    #[test]
    fn p_ignores_order_and_integer_shifts(pt in point_strategy(), shifts in (-3i64..=3, -3i64..=3, -3i64..=3)) {
        let img = p_map(&pt);
        let Point3 { x, y, z } = pt.clone();
        let permuted = Point3::new(z.clone(), x.clone(), y.clone());
        prop_assert_eq!(p_map(&permuted), img.clone());
        let shifted = Point3::new(x + rat(shifts.0, 1), y + rat(shifts.1, 1), z + rat(shifts.2, 1));
        prop_assert_eq!(p_map(&shifted), img);
    }

    #[test]
    fn full_subcomplex_is_idempotent(k in complex_strategy(8), keep in prop::collection::btree_set(0u32..8, 1..8)) {
        let keep: BTreeSet<u32> = keep.into_iter().filter(|v| k.vertices().contains(v)).collect();
        prop_assume!(!keep.is_empty());
        let once = k.full_subcomplex(&keep).unwrap();
        let twice = once.full_subcomplex(&keep).unwrap();
        prop_assert!(k.has_subcomplex(&once));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn vertex_maps_compose(k in complex_strategy(8), p1 in permutation_strategy(8), p2 in permutation_strategy(8)) {
        let f = relabel(&p1, 0);
        let g = relabel(&p2, 100);
        let stepwise = apply_vertex_map(&apply_vertex_map(&k, &f).unwrap().complex, &g).unwrap().complex;
        let composed = apply_vertex_map(&k, &f.then(&g).unwrap()).unwrap().complex;
        prop_assert_eq!(stepwise, composed);
    }

    #[test]
    fn isomorphism_is_found_and_symmetric(k in complex_strategy(7), p in permutation_strategy(7)) {
        let image = apply_vertex_map(&k, &relabel(&p, 20)).unwrap().complex;
        let forward = is_isomorphic(&k, &image);
        prop_assert!(forward.is_some());
        let witness = forward.unwrap();
        prop_assert_eq!(apply_vertex_map(&k, &witness).unwrap().complex, image.clone());
        prop_assert!(is_isomorphic(&image, &k).is_some());
    }

    #[test]
    fn isomorphism_answers_are_symmetric(a in complex_strategy(6), b in complex_strategy(6)) {
        prop_assert_eq!(is_isomorphic(&a, &b).is_some(), is_isomorphic(&b, &a).is_some());
    }
}
