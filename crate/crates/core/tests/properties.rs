use biunitary::constructions::{had_had_to_qls, hosoya_suzuki, qsm};
use biunitary::equivalence::{
    dephase_hadamard, hadamard_equivalent, max_commuting_subset, maximum_clique, ueb_normalize,
};
use biunitary::io::{from_json_str, to_json_string, Document};
use biunitary::linalg::{dagger, kron, regroup, trace_inner};
use biunitary::samples::{twisted_copy, twisted_fourier, twisted_fourier_family};
use biunitary::structures::{cyclic_latin, fourier, pauli_ueb, qls_from_latin, verify_qls, verify_ueb, Candidate};
use biunitary::{CMatrix, Tolerance, C64};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn scalar() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(scalar(), rows * cols).prop_map(move |d| CMatrix::new(rows, cols, d).unwrap())
}

fn close(a: &CMatrix, b: &CMatrix, eps: f64) -> bool {
    a.max_abs_diff(b).is_some_and(|d| d <= eps)
}

fn bits(m: &CMatrix) -> Vec<(u64, u64)> {
    m.as_slice().iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect()
}

/// Largest clique by checking every vertex subset; ties go to the
/// lexicographically least sorted member list.
fn brute_force_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut best: Vec<usize> = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let is_clique = members.iter().all(|&a| members.iter().all(|&b| a == b || adj[a][b]));
        if is_clique && (members.len() > best.len() || (members.len() == best.len() && members < best)) {
            best = members;
        }
    }
    best
}

fn graph() -> impl Strategy<Value = Vec<Vec<bool>>> {
    (0usize..=12).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut adj = vec![vec![false; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    adj[i][j] = bits[i * n + j];
                    adj[j][i] = bits[i * n + j];
                }
            }
            adj
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dagger_reverses_products((a, b) in (1usize..5, 1usize..5, 1usize..5)
        .prop_flat_map(|(r, k, c)| (matrix(r, k), matrix(k, c))))
    {
        let lhs = dagger(&(&a * &b));
        let rhs = &dagger(&b) * &dagger(&a);
        prop_assert!(close(&lhs, &rhs, 1e-12));
        prop_assert_eq!(dagger(&dagger(&a)), a);
    }

    #[test]
    fn kron_is_associative(a in matrix(2, 3), b in matrix(1, 2), c in matrix(3, 2)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn kron_mixes_with_products(a in matrix(2, 2), b in matrix(3, 3), c in matrix(2, 2), d in matrix(3, 3)) {
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(close(&lhs, &rhs, 1e-11));
    }

    #[test]
    fn regroup_round_trips(
        (t, dims, perm) in prop::collection::vec(1usize..4, 1..6).prop_flat_map(|dims| {
            let total: usize = dims.iter().product();
            let rank = dims.len();
            (matrix(1, total), Just(dims), Just((0..rank).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let total = t.cols();
        let forward = regroup(&t, &dims, &perm, (total, 1)).unwrap();
        let permuted_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let mut inverse = vec![0; perm.len()];
        for (k, &p) in perm.iter().enumerate() {
            inverse[p] = k;
        }
        let back = regroup(&forward, &permuted_dims, &inverse, (1, total)).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn trace_inner_of_self_is_squared_norm(a in (1usize..6).prop_flat_map(|n| matrix(n, n))) {
        let z = trace_inner(&a, &a).unwrap();
        prop_assert!((z.re - a.norm_sqr()).abs() <= 1e-12 * a.norm_sqr().max(1.0));
        prop_assert!(z.im.abs() <= 1e-12 * a.norm_sqr().max(1.0));
    }

    #[test]
    fn twisted_fourier_copies_are_equivalent(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let h = twisted_fourier(n, &mut rng);
        let (w, _) = twisted_copy(h.matrix(), &mut rng);
        let witness = hadamard_equivalent(h.matrix(), &w, &tol()).unwrap().expect("equivalent");
        prop_assert!(close(&witness.apply(h.matrix()), &w, tol().compare_tol));
        prop_assert!(witness.max_phase_defect() < 1e-12);
        prop_assert!(close(&witness.inverse().apply(&w), h.matrix(), 1e-12));
        let back = hadamard_equivalent(&w, h.matrix(), &tol()).unwrap();
        prop_assert!(back.is_some());
    }

    #[test]
    fn dephasing_is_idempotent(n in 1usize..=6, seed in any::<u64>()) {
        let h = twisted_fourier(n, &mut StdRng::seed_from_u64(seed));
        let once = dephase_hadamard(&h);
        prop_assert!((0..n).all(|k| once.entry(0, k) == C64::new(1.0, 0.0) && once.entry(k, 0) == C64::new(1.0, 0.0)));
        let twice = dephase_hadamard(&once);
        prop_assert!(close(twice.matrix(), once.matrix(), 1e-14));
        prop_assert!(close(once.matrix(), fourier(n).unwrap().matrix(), 1e-12));
    }

    #[test]
    fn clique_matches_brute_force(adj in graph()) {
        let fast = maximum_clique(&adj);
        prop_assert_eq!(&fast, &brute_force_clique(&adj));
        let n = adj.len();
        let complete = (0..n).all(|i| (0..n).all(|j| i == j || adj[i][j]));
        prop_assert_eq!(fast.len() == n, complete);
    }

    #[test]
    fn normalization_preserves_validity_and_clique_size(n in 1usize..=4, pivot_seed in any::<usize>()) {
        let u = pauli_ueb(n).unwrap();
        let pivot = pivot_seed % u.len();
        let v = ueb_normalize(&u, pivot, &tol()).unwrap();
        prop_assert!(verify_ueb(v.elements(), &tol()).passed());
        prop_assert_eq!(
            max_commuting_subset(&v, &tol()).unwrap().size,
            max_commuting_subset(&u, &tol()).unwrap().size
        );
        prop_assert!(max_commuting_subset(&v, &tol()).unwrap().size >= 1);
    }

    #[test]
    fn documents_round_trip_bit_exact(
        data in (1usize..4).prop_flat_map(|n| prop::collection::vec(
            (any::<f64>(), any::<f64>()).prop_filter("finite", |(a, b)| a.is_finite() && b.is_finite()),
            n * n * n * n,
        ).prop_map(move |v| (n, v)))
    ) {
        let (n, raw) = data;
        let entries: Vec<C64> = raw.iter().map(|&(re, im)| C64::new(re, im)).collect();
        let elements: Vec<CMatrix> = entries
            .chunks(n * n)
            .map(|c| CMatrix::new(n, n, c.to_vec()).unwrap())
            .collect();
        let doc = Document::Ueb { elements: elements.clone(), label_dims: vec![n, n] };
        let back = from_json_str(&to_json_string(&doc).unwrap()).unwrap();
        match back {
            Document::Ueb { elements: got, label_dims } => {
                prop_assert_eq!(label_dims, vec![n, n]);
                for (a, b) in got.iter().zip(&elements) {
                    prop_assert_eq!(bits(a), bits(b));
                }
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
        let family = Document::Controlled {
            control_dims: vec![n],
            items: elements.iter().take(n).map(|m| Candidate::Hadamard(m.clone())).collect(),
        };
        let back = from_json_str(&to_json_string(&family).unwrap()).unwrap();
        prop_assert_eq!(back, family);
    }

    #[test]
    fn random_twists_stay_closed(n in 1usize..=5, m in 1usize..=4, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = twisted_fourier(n, &mut rng);
        let g = twisted_fourier(n, &mut rng);
        let q = had_had_to_qls(&f, &g, &tol()).unwrap();
        prop_assert!(verify_qls(&q.to_grid(), &tol()).passed());

        let h = twisted_fourier_family(vec![n], n, &mut rng);
        let u = qsm(&h, &q, &tol()).unwrap();
        prop_assert!(verify_ueb(u.elements(), &tol()).passed());
        let u = qsm(&h, &qls_from_latin(&cyclic_latin(n).unwrap()), &tol()).unwrap();
        prop_assert!(verify_ueb(u.elements(), &tol()).passed());

        let j = twisted_fourier_family(vec![m], n, &mut rng);
        let k = twisted_fourier_family(vec![n], m, &mut rng);
        let big = hosoya_suzuki(&j, &k, &tol()).unwrap();
        prop_assert_eq!(big.n(), n * m);
    }
}
