use std::collections::BTreeSet;

use symcircle::complex::{Simplex, SimplicialComplex};
use symcircle::fixtures;
use symcircle::geometry::{
    p_map, prism_vertex_coordinates, verify_lemma_identifications, verify_stratification,
    verify_vertex_q_consistency,
};
use symcircle::homology::{homology_groups, rational_betti_numbers, HomologyGroup};
use symcircle::knot::{
    abelianization_invariants, alexander_polynomial, alexander_polynomial_deleting,
    edge_path_presentation, exists_nonabelian_s3_rep, knot_complement_complex, knot_pipeline,
    tietze_simplify, KnotError, LaurentPolynomial, Presentation, Word, DEFAULT_BUDGET,
};
use symcircle::quotient::*;

fn sorted_rows<const N: usize>(rows: &[[u32; N]]) -> BTreeSet<Vec<u32>> {
    rows.iter()
        .map(|r| {
            let mut r = r.to_vec();
            r.sort_unstable();
            r
        })
        .collect()
}

fn facet_rows(k: &SimplicialComplex) -> BTreeSet<Vec<u32>> {
    k.facets().iter().map(|f| f.vertices().to_vec()).collect()
}

fn shape(h: &[HomologyGroup]) -> Vec<(usize, usize)> {
    h.iter().map(|g| (g.betti, g.torsion.len())).collect()
}

fn trefoil_polynomial() -> LaurentPolynomial {
    LaurentPolynomial::from_coefficients(&[1, -1, 1])
}

#[test]
fn tables_match() {
    let prism = prism_complex();
    assert_eq!(prism.f_vector()[0], 12);
    assert_eq!(prism.facets().len(), 19);
    assert_eq!(facet_rows(&prism), sorted_rows(&PRISM_FACETS));
    let b = barnette_complex();
    assert_eq!(b.vertices(), [0, 1, 2, 3, 8, 9, 10, 11]);
    assert_eq!(facet_rows(&b), sorted_rows(&BARNETTE_FACETS));
    assert_eq!(facet_rows(&mobius_complex()), sorted_rows(&MOBIUS_FACETS));
    assert_eq!(facet_rows(&knot_cycle_complex()), sorted_rows(&KNOT_EDGES));
}

#[test]
fn folding_map_is_an_isomorphism_onto_the_sphere() {
    let mapped = apply_vertex_map(&prism_complex(), &q_map()).unwrap();
    assert_eq!(mapped.complex, barnette_complex());
    assert!(mapped.facet_map_is_bijective());
    let iso = is_isomorphic(&mapped.complex, &barnette_complex()).unwrap();
    assert_eq!(
        apply_vertex_map(&mapped.complex, &iso).unwrap().complex,
        barnette_complex()
    );
}

#[test]
fn glued_triangles_fold_together() {
    let q = q_map();
    for pair in lemma_identification_pairs() {
        for (s, t) in pair.correspondence() {
            assert_eq!(q.get(s), q.get(t), "{pair:?}");
        }
    }
}

#[test]
fn barnette_is_a_homology_sphere_with_trivial_group() {
    let s = barnette_complex();
    let report = s.check_closed_3_manifold();
    assert!(report.passed(), "{:?}", report.failures);
    for &v in s.vertices() {
        let link = s.link(&Simplex::new([v]).unwrap()).unwrap();
        assert!(link.is_closed_surface());
        assert_eq!(link.euler_characteristic(), 2);
    }
    for e in s.faces(1).unwrap() {
        assert!(s.link(&e).unwrap().is_cycle());
    }
    assert!(s.orientability().unwrap().orientable);
    assert_eq!(
        shape(&homology_groups(&s, false)),
        [(1, 0), (0, 0), (0, 0), (1, 0)]
    );
    let p = edge_path_presentation(&s, 0).unwrap();
    assert_eq!(p.n_generators, 27 - 8 + 1);
    assert_eq!(
        tietze_simplify(&p, DEFAULT_BUDGET)
            .presentation
            .n_generators,
        0
    );
}

#[test]
fn prism_is_a_ball() {
    let p = prism_complex();
    assert_eq!(
        shape(&homology_groups(&p, true)),
        [(0, 0), (0, 0), (0, 0), (0, 0)]
    );
    assert_eq!(p.euler_characteristic(), 1);
    let b = p.boundary().unwrap();
    assert_eq!(b.euler_characteristic(), 2);
    assert!(b.is_closed_surface());
}

#[test]
fn mobius_band() {
    let m = mobius_complex();
    assert_eq!(m.euler_characteristic(), 0);
    assert!(!m.orientability().unwrap().orientable);
    assert_eq!(shape(&homology_groups(&m, false)), [(1, 0), (1, 0), (0, 0)]);
    let boundary = m.boundary().unwrap();
    assert_eq!(boundary, knot_cycle_complex());
    assert!(boundary.is_cycle() && boundary.is_connected());
    assert_eq!(boundary.vertices().len(), 6);
}

#[test]
fn strata_nest() {
    let (k, m, s) = (knot_cycle_complex(), mobius_complex(), barnette_complex());
    assert!(m.has_subcomplex(&k));
    assert!(s.has_subcomplex(&m));
    assert!(!k.has_subcomplex(&m));
}

#[test]
fn subdivision_preserves_homology() {
    for k in [
        barnette_complex(),
        mobius_complex(),
        knot_cycle_complex(),
        prism_complex(),
    ] {
        let sd = k.barycentric_subdivision().complex;
        assert_eq!(homology_groups(&sd, false), homology_groups(&k, false));
        assert_eq!(sd.f_vector()[0], k.all_faces().len());
    }
}

#[test]
fn integral_and_rational_betti_numbers_agree_on_the_instances() {
    let sphere4 = SimplicialComplex::from_text(fixtures::SPHERE4).unwrap();
    let complement = knot_complement_complex(&barnette_complex(), &knot_cycle_complex()).unwrap();
    for k in [
        prism_complex(),
        barnette_complex(),
        mobius_complex(),
        knot_cycle_complex(),
        sphere4,
        barnette_complex().barycentric_subdivision().complex,
        complement,
    ] {
        let integral: Vec<usize> = homology_groups(&k, false).iter().map(|g| g.betti).collect();
        assert_eq!(integral, rational_betti_numbers(&k));
    }
}

#[test]
fn trefoil_pipeline() {
    let report = knot_pipeline(&barnette_complex(), &knot_cycle_complex(), DEFAULT_BUDGET).unwrap();
    assert_eq!(shape(&report.complement_homology)[..2], [(1, 0), (1, 0)]);
    assert!(report.raw_abelianization.is_infinite_cyclic());
    assert!(report.abelianization_preserved());
    assert!(!report.tietze_exhausted);
    assert_eq!(report.alexander, trefoil_polynomial());
    assert!(report.s3_nonabelian);
    let lines = report.lines();
    assert!(lines.contains(&"alexander 1 -1 1".to_string()));
    assert!(lines.contains(&"s3_nonabelian true".to_string()));
    // every admissible column of the simplified matrix agrees
    let exps = report
        .simplified_abelianization
        .free_exponents
        .clone()
        .unwrap();
    for (j, e) in exps.iter().enumerate().filter(|(_, e)| **e != 0) {
        assert_eq!(
            alexander_polynomial_deleting(&report.simplified, j).unwrap(),
            trefoil_polynomial(),
            "{e}"
        );
    }
}

#[test]
fn unknot_control() {
    let sphere = SimplicialComplex::from_text(fixtures::SPHERE4).unwrap();
    let unknot = SimplicialComplex::from_text(fixtures::UNKNOT).unwrap();
    let report = knot_pipeline(&sphere, &unknot, DEFAULT_BUDGET).unwrap();
    assert_eq!(report.alexander, LaurentPolynomial::one());
    assert!(!report.s3_nonabelian);
    assert_eq!(
        report
            .lines()
            .iter()
            .find(|l| l.starts_with("alexander"))
            .unwrap(),
        "alexander 1"
    );
}

#[test]
fn pipeline_rejects_bad_knots() {
    let s = barnette_complex();
    let foreign = SimplicialComplex::new([[0, 3], [3, 4], [0, 4]]).unwrap();
    let err = knot_pipeline(&s, &foreign, DEFAULT_BUDGET).unwrap_err();
    assert_eq!(err.stage, "complement");
    assert_eq!(err.source, KnotError::NotSubcomplex);
    let err = knot_pipeline(&s, &mobius_complex(), DEFAULT_BUDGET).unwrap_err();
    assert_eq!(err.stage, "complement");
    let err = knot_pipeline(&mobius_complex(), &knot_cycle_complex(), DEFAULT_BUDGET).unwrap_err();
    assert!(matches!(err.source, KnotError::NotClosed3Manifold(_)));
}

fn pres(n: usize, rels: &[&[i32]]) -> Presentation {
    Presentation::new(
        n,
        rels.iter().map(|r| Word::new(r.iter().copied())).collect(),
    )
    .unwrap()
}

fn trefoil_variants() -> Vec<Presentation> {
    vec![
        // aba = bab
        pres(2, &[&[1, 2, 1, -2, -1, -2]]),
        // x^2 = y^3
        pres(2, &[&[1, 1, -2, -2, -2]]),
        // Wirtinger, all three crossings
        pres(3, &[&[1, 2, -3, -2], &[2, 3, -1, -3], &[3, 1, -2, -1]]),
        // aba = bab with a redundant generator c = ab
        pres(3, &[&[1, 2, 1, -2, -1, -2], &[3, -2, -1]]),
        // inverted relator conjugated by a
        pres(2, &[&[1, 2, 1, 2, -1, -2, -1, -1]]),
    ]
}

#[test]
fn alexander_polynomial_is_a_group_invariant() {
    for p in trefoil_variants() {
        let ab = abelianization_invariants(&p);
        assert!(ab.is_infinite_cyclic(), "{p}");
        let exps = ab.free_exponents.unwrap();
        assert_eq!(
            alexander_polynomial(&p).unwrap(),
            trefoil_polynomial(),
            "{p}"
        );
        for (j, _) in exps.iter().enumerate().filter(|(_, e)| **e != 0) {
            assert_eq!(
                alexander_polynomial_deleting(&p, j).unwrap(),
                trefoil_polynomial(),
                "{p} column {j}"
            );
        }
        let simplified = tietze_simplify(&p, DEFAULT_BUDGET).presentation;
        assert_eq!(
            alexander_polynomial(&simplified).unwrap(),
            trefoil_polynomial(),
            "{simplified}"
        );
        assert!(exists_nonabelian_s3_rep(&p).unwrap());
        assert!(exists_nonabelian_s3_rep(&simplified).unwrap());
    }
}

#[test]
fn sampling_checks() {
    for n in [1, 12] {
        let pairs = verify_lemma_identifications(n);
        assert_eq!(pairs.len(), 4);
        for (name, r) in &pairs {
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert_eq!(r.checked, ((n + 1) * (n + 2) / 2) as usize);
        }
        let st = verify_stratification(n);
        assert!(st.sampling.passed(), "{:?}", st.sampling.failures);
        assert!(st.in_d <= st.in_s && st.in_s <= st.in_p);
    }
    let st = verify_stratification(12);
    assert!(st.open_cell_points > 0 && st.in_d > 0);
    let v = verify_vertex_q_consistency();
    assert!(v.passed(), "{:?}", v.failures);
    assert_eq!(v.checked, 12);
}

#[test]
fn vertex_images() {
    let coords = prism_vertex_coordinates();
    assert_eq!(coords.len(), 12);
    for (v, pt) in &coords {
        let n = p_map(pt).len();
        assert_eq!(n, if matches!(v, 3 | 7 | 11) { 3 } else { 1 }, "vertex {v}");
    }
}
