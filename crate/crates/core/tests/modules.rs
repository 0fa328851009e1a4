use rand::{Rng, SeedableRng};
use unipoiss::algebra::matrix::matrix_sum;
use unipoiss::algebra::{ring_matrix_product, Field, RingMatrix, Scalar, TermOrder};
use unipoiss::modules::{
    emit_u_presentation, emit_v_presentation, induced_tensor_map, is_a_module_map, tensor_module, AModuleStructure,
};
use unipoiss::poisson::{verify_poisson_module, PoissonModuleStructure};
use unipoiss::samples;
use unipoiss::universal::universal_algebra;

fn block_sum(f: Field, a: &RingMatrix<Scalar>, b: &RingMatrix<Scalar>) -> RingMatrix<Scalar> {
    let (da, db) = (a.rows(), b.rows());
    RingMatrix::from_fn(da + db, da + db, |r, c| match (r < da, c < da) {
        (true, true) => a.get(r, c).clone(),
        (false, false) => b.get(r - da, c - da).clone(),
        _ => f.zero(),
    })
}

fn intertwines(f: Field, phi: &RingMatrix<Scalar>, from: &RingMatrix<Scalar>, to: &RingMatrix<Scalar>) -> bool {
    ring_matrix_product(&f, phi, from).unwrap() == ring_matrix_product(&f, to, phi).unwrap()
}

#[test]
fn tensor_with_trivial_u_is_trivial() {
    let f = Field::prime(3).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    let p = samples::three_dim(f);
    let u = universal_algebra(&p, &p, false, TermOrder::DegRevLex).unwrap();
    let zero = PoissonModuleStructure::trivial(p.clone(), 2).unwrap();
    let v = samples::random_a_module(&u, 2, &mut rng).unwrap();
    let t = tensor_module(&zero, &v).unwrap();
    assert!(t.dot().is_empty() && t.harpoon().is_empty());
    assert_eq!(t.dim(), 4);
}

#[test]
fn counit_specialization_returns_u() {
    let f = Field::prime(3).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    let p = samples::three_dim(f);
    let a = universal_algebra(&p, &p, false, TermOrder::DegRevLex).unwrap();
    let v = AModuleStructure::counit(a).unwrap();
    for _ in 0..5 {
        let u = samples::random_poisson_module(&p, 2, &mut rng).unwrap();
        let t = tensor_module(&u, &v).unwrap();
        for i in 0..3 {
            assert_eq!(t.dot_matrix(i), u.dot_matrix(i));
            assert_eq!(t.harpoon_matrix(i), u.harpoon_matrix(i));
        }
    }
}

#[test]
fn tensor_modules_satisfy_the_axioms() {
    let f = Field::prime(3).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(1..=2);
        let p = samples::random_algebra(f, n, &mut rng);
        let q = samples::random_algebra(f, m, &mut rng);
        let a = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
        let u = samples::random_poisson_module(&p, rng.gen_range(1..=2), &mut rng).unwrap();
        let v = samples::random_a_module(&a, rng.gen_range(1..=2), &mut rng).unwrap();
        let t = tensor_module(&u, &v).unwrap();
        assert!(verify_poisson_module(&t).unwrap().is_empty());
    }
}

#[test]
fn tensor_is_functorial_in_v() {
    let f = Field::prime(3).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(29);
    for _ in 0..10 {
        let p = samples::random_algebra(f, 2, &mut rng);
        let q = samples::random_algebra(f, rng.gen_range(1..=2), &mut rng);
        let a = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
        let u = samples::random_poisson_module(&p, 2, &mut rng).unwrap();
        let v1 = samples::random_a_module(&a, 1, &mut rng).unwrap();
        let v2 = samples::random_a_module(&a, 1, &mut rng).unwrap();
        // projection V1 ⊕ V2 → V1
        let sum_actions: Vec<_> = v1
            .actions()
            .iter()
            .zip(v2.actions())
            .map(|(x, y)| block_sum(f, x, y))
            .collect();
        let sum = AModuleStructure::new(a.clone(), sum_actions).unwrap();
        let phi = RingMatrix::from_fn(1, 2, |_, c| if c == 0 { f.one() } else { f.zero() });
        assert!(is_a_module_map(&sum, &v1, &phi).unwrap());
        let lifted = induced_tensor_map(f, u.dim(), &phi);
        let (ts, t1) = (tensor_module(&u, &sum).unwrap(), tensor_module(&u, &v1).unwrap());
        for i in 0..q.dim() {
            assert!(intertwines(f, &lifted, &ts.dot_matrix(i), &t1.dot_matrix(i)));
            assert!(intertwines(f, &lifted, &ts.harpoon_matrix(i), &t1.harpoon_matrix(i)));
        }
        // and the sum of two module maps is one
        let twice = matrix_sum(&f, &phi, &phi).unwrap();
        assert!(is_a_module_map(&sum, &v1, &twice).unwrap());
    }
}

#[test]
fn emitted_presentations_are_stable() {
    let f = Field::prime(3).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(41);
    let p = samples::three_dim(f);
    let q = samples::aff2(f);
    let a = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
    let u = samples::random_poisson_module(&p, 2, &mut rng).unwrap();
    let w = samples::random_poisson_module(&q, 2, &mut rng).unwrap();
    let v = samples::random_a_module(&a, 2, &mut rng).unwrap();
    let (u1, u2) = (emit_u_presentation(&u, &w).unwrap(), emit_u_presentation(&u, &w).unwrap());
    assert_eq!(u1, u2);
    assert_eq!(u1.to_string(), u2.to_string());
    assert_eq!(u1.generators().len(), 4);
    let (v1, v2) = (emit_v_presentation(&v, &w).unwrap(), emit_v_presentation(&v, &w).unwrap());
    assert_eq!(v1, v2);
    assert_eq!(v1.generators().len(), 4);
    let keys: Vec<_> = u1.relations().iter().map(|r| (r.indices, r.family)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
