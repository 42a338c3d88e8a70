use hyperrad::c64;
use hyperrad::operators::{annihilation, embed, expectation, kron, spin_ops, trace_distance, Operator};
use proptest::prelude::*;

fn matrix(side: usize) -> impl Strategy<Value = Operator> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), side * side).prop_map(move |v| {
        Operator::from_fn(vec![side], |i, j| {
            let (re, im) = v[i * side + j];
            c64::new(re, im)
        })
        .unwrap()
    })
}

fn hermitian(side: usize) -> impl Strategy<Value = Operator> {
    matrix(side).prop_map(|m| (&m + &m.dagger()).scale(0.5))
}

/// A random density matrix `M M† / Tr(M M†)`.
fn density(side: usize) -> impl Strategy<Value = Operator> {
    matrix(side).prop_filter_map("degenerate sample", |m| {
        let p = &m * &m.dagger();
        let t = p.trace().re;
        (t > 1e-6).then(|| p.scale(1.0 / t))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(3), c in matrix(2), d in matrix(3)) {
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_dims_and_trace(a in matrix(2), b in matrix(4)) {
        let k = kron(&a, &b);
        prop_assert_eq!(k.dims(), &[2, 4]);
        prop_assert!((k.trace() - a.trace() * b.trace()).norm() < 1e-12);
    }

    #[test]
    fn hermitian_expectations_are_real(h in hermitian(4), rho in density(4)) {
        let e = expectation(&rho, &h).unwrap();
        prop_assert!(e.im.abs() < 1e-12);
        let eig = h.hermitian_eigenvalues();
        let (lo, hi) = (eig[0], eig[eig.len() - 1]);
        prop_assert!(e.re >= lo - 1e-12 && e.re <= hi + 1e-12);
    }

    #[test]
    fn commutators_are_traceless(a in matrix(5), b in matrix(5)) {
        prop_assert!(Operator::commutator(&a, &b).trace().norm() < 1e-12);
    }

    #[test]
    fn density_matrices_are_positive(rho in density(5)) {
        prop_assert!(rho.is_hermitian(1e-12));
        prop_assert!(rho.hermitian_eigenvalues()[0] > -1e-12);
    }

    #[test]
    fn trace_distance_is_a_metric(a in density(3), b in density(3), c in density(3)) {
        let (ab, bc, ac) = (trace_distance(&a, &b), trace_distance(&b, &c), trace_distance(&a, &c));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&ab));
        prop_assert!((ab - trace_distance(&b, &a)).abs() < 1e-12);
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert!(trace_distance(&a, &a) < 1e-12);
    }

    #[test]
    fn embedding_commutes_across_sites(cutoff in 1usize..5) {
        let s = spin_ops();
        let dims = [2, 2, cutoff + 1];
        let a = embed(&annihilation(cutoff).unwrap(), 2, &dims).unwrap();
        let s1 = embed(&s.lowering, 0, &dims).unwrap();
        let s2 = embed(&s.raising, 1, &dims).unwrap();
        prop_assert!(Operator::commutator(&a, &s1).frobenius_norm() < 1e-14);
        prop_assert!(Operator::commutator(&s1, &s2).frobenius_norm() < 1e-14);
    }
}

#[test]
fn number_operator_spectrum() {
    let a = annihilation(6).unwrap();
    let n = &a.dagger() * &a;
    let eig = n.hermitian_eigenvalues();
    for (k, e) in eig.iter().enumerate() {
        assert!((e - k as f64).abs() < 1e-12);
    }
}
