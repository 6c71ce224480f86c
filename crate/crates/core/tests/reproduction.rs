use biunitary::equivalence::{commutativity_graph, max_commuting_subset, ueb_normalize};
use biunitary::linalg::{commutes, dagger, proportional};
use biunitary::reproduction::{
    build_tabulated_ueb, check_not_nice, check_not_qsm, compare_with_fixture, embedded_fixture, reproduce_appendix_a,
};
use biunitary::structures::{verify_ueb, UnitaryErrorBasis};
use biunitary::{CMatrix, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn element<'a>(u: &'a UnitaryErrorBasis, label: [usize; 3]) -> &'a CMatrix {
    u.element(u.index_of_label(&label).unwrap())
}

#[test]
fn fixture_is_a_ueb_on_its_own() {
    let fixture = embedded_fixture(&tol()).unwrap();
    assert_eq!(fixture.len(), 64);
    let report = verify_ueb(fixture.elements(), &tol());
    assert!(report.passed(), "{}", report.summary());
    assert!((report.lambda.unwrap() - 8.0).abs() < 1e-10 * 8.0);
    assert_eq!(element(&fixture, [1, 1, 1]).max_abs_diff(&CMatrix::identity(8)), Some(0.0));
}

#[test]
fn built_basis_matches_every_tabulated_matrix() {
    let built = build_tabulated_ueb(&tol()).unwrap();
    let fixture = embedded_fixture(&tol()).unwrap();
    let cmp = compare_with_fixture(&built, &fixture, &tol()).unwrap();
    assert_eq!(cmp.matched, 64, "mismatched: {:?}", cmp.mismatched);
    assert!(cmp.max_deviation < 1e-12);
}

#[test]
fn element_114_is_a_signed_antidiagonal_block_permutation() {
    let built = build_tabulated_ueb(&tol()).unwrap();
    let m = element(&built, [1, 1, 4]);
    for i in 0..8 {
        let nonzero: Vec<usize> = (0..8).filter(|&j| m[(i, j)].norm() > 1e-12).collect();
        assert_eq!(nonzero.len(), 1);
        let z = m[(i, nonzero[0])];
        assert!((z.re.abs() - 1.0).abs() < 1e-15 && z.im == 0.0);
    }
}

#[test]
fn construction_is_deterministic() {
    let a = build_tabulated_ueb(&tol()).unwrap();
    let b = build_tabulated_ueb(&tol()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn adjoint_of_112_has_no_partner() {
    let u = build_tabulated_ueb(&tol()).unwrap();
    let adj = dagger(element(&u, [1, 1, 2]));
    assert!(u.elements().iter().all(|e| !proportional(&adj, e, &tol())));
    let report = check_not_nice(&u, &tol()).unwrap();
    assert!(report.not_nice);
    assert_eq!(report.witness_label.as_deref(), Some("112"));
}

#[test]
fn commuting_sets_are_small() {
    let u = build_tabulated_ueb(&tol()).unwrap();
    let best = max_commuting_subset(&u, &tol()).unwrap();
    assert_eq!(best.size, 4);
    assert_eq!(best.labels[0], "111");
    let graph = commutativity_graph(&u, &tol(), true);
    assert_eq!(graph.len(), 63);
    assert_eq!(graph.max_clique().len(), 3);
    let report = check_not_qsm(&u, &tol()).unwrap();
    assert!(report.not_qsm);
    assert_eq!((report.max_commuting, report.dimension), (4, 8));
}

#[test]
fn drawn_adjacencies_hold() {
    let u = build_tabulated_ueb(&tol()).unwrap();
    let graph = commutativity_graph(&u, &tol(), true);
    for (a, b) in [("121", "131"), ("121", "141"), ("131", "141"), ("124", "324")] {
        assert!(graph.has_edge(a, b), "{a} - {b}");
    }
    let c = |l| element(&u, l);
    assert!(commutes(c([1, 2, 1]), c([1, 3, 1]), &tol()).unwrap());
    assert!(commutes(c([1, 2, 4]), c([3, 2, 4]), &tol()).unwrap());
}

#[test]
fn clique_size_survives_renormalization() {
    let u = build_tabulated_ueb(&tol()).unwrap();
    for pivot in [1, 17, 42, 63] {
        let v = ueb_normalize(&u, pivot, &tol()).unwrap();
        assert_eq!(max_commuting_subset(&v, &tol()).unwrap().size, 4, "pivot {pivot}");
    }
}

#[test]
fn summary_line() {
    let fixture = embedded_fixture(&tol()).unwrap();
    let report = reproduce_appendix_a(&fixture, &tol()).unwrap();
    assert!(report.passed());
    assert_eq!(
        report.summary(),
        "64/64 matrices match; not nice (witness 112); not QSM (max commuting 4 < 8)"
    );
}
