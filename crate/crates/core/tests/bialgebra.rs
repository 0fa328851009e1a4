use proptest::prelude::*;
use rand::SeedableRng;
use unipoiss::algebra::{Field, RingMatrix, Scalar, TermOrder};
use unipoiss::bialgebra::{
    automorphism_group, convolution, gamma_bar, group_likes, reduced_delta, tensor_string, universal_bialgebra,
    universal_bialgebra_with_order, verify_bialgebra, verify_comodule, GroupLike,
};
use unipoiss::oracle;
use unipoiss::poisson::{check_poisson_morphism, PoissonStructure};
use unipoiss::samples;

fn residues(m: &RingMatrix<Scalar>) -> Vec<u64> {
    m.entries().iter().map(|c| c.residue().unwrap() as u64).collect()
}

#[test]
fn final_example_delta_in_lex() {
    let p = samples::three_dim(Field::Rationals);
    let (u, c) = universal_bialgebra_with_order(&p, TermOrder::Lex).unwrap();
    let names = u.ring().variables().to_vec();
    let reduced = reduced_delta(&u, &c).unwrap();
    let show = |s, i| tensor_string(&reduced[u.var_index(s, i)], &names, names.len());
    assert_eq!(show(0, 0), "x11⊗x11");
    assert_eq!(show(2, 2), "x33⊗x33");
    assert_eq!(show(1, 0), "x11^2⊗x21 + x21⊗x11");
    assert_eq!(show(2, 0), "x33⊗x31 + x31⊗x11");
    for (s, i, want) in [(0, 0, 1), (1, 0, 0), (2, 0, 0), (2, 2, 1)] {
        assert_eq!(*c.counit().get(s, i), Field::Rationals.from_i64(want));
    }
}

#[test]
fn identity_is_group_like() {
    let f = Field::prime(3).unwrap();
    let p = samples::three_dim(f);
    let (u, _) = universal_bialgebra(&p).unwrap();
    let ids = RingMatrix::identity(&f, 3);
    let all = group_likes(&u, f).unwrap();
    assert!(all.iter().any(|g| *g.matrix() == ids));
}

#[test]
fn convolution_is_composition_on_all_group_likes() {
    for q in [2, 3] {
        let f = Field::prime(q).unwrap();
        let p = samples::three_dim(f);
        let (u, _) = universal_bialgebra(&p).unwrap();
        let all = group_likes(&u, f).unwrap();
        let endos = oracle::morphisms(&p, &p, f).unwrap();
        assert_eq!(all.len(), endos.len());
        for a in &all {
            assert!(check_poisson_morphism(&gamma_bar(a), &p, &p, &f, false).unwrap());
            for b in &all {
                let ab = convolution(f, a.matrix(), b.matrix()).unwrap();
                assert!(all.iter().any(|g| *g.matrix() == ab));
                let composed = oracle::mat_mul(
                    &residues(gamma_bar(a).matrix()),
                    &residues(gamma_bar(b).matrix()),
                    3,
                    q as u64,
                );
                let via = residues(gamma_bar(&GroupLike::new(f, ab)).matrix());
                assert_eq!(via, composed);
            }
        }
    }
}

#[test]
fn automorphism_tables_match_brute_force() {
    for (q, order, abelian) in [(2, 4, true), (3, 18, false)] {
        let f = Field::prime(q).unwrap();
        let p = samples::three_dim(f);
        let g = automorphism_group(&p, f).unwrap();
        let (elems, table) = oracle::automorphisms(&p, f).unwrap();
        assert_eq!(g.order(), order);
        assert_eq!(elems.len(), order);
        assert_eq!(g.is_abelian(), abelian);
        let to_oracle: Vec<usize> = g
            .elements()
            .iter()
            .map(|e| {
                let d = residues(gamma_bar(e).matrix());
                elems.iter().position(|x| *x == d).expect("automorphism known to the oracle")
            })
            .collect();
        for a in 0..order {
            for b in 0..order {
                assert_eq!(to_oracle[g.table()[a][b]], table[to_oracle[a]][to_oracle[b]]);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn laws_hold_for_random_algebras(seed in any::<u64>(), n in 1usize..=3, finite in any::<bool>()) {
        let f = if finite { Field::prime(5).unwrap() } else { Field::Rationals };
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let p: PoissonStructure = samples::random_algebra(f, n, &mut rng);
        let (u, c) = universal_bialgebra(&p).unwrap();
        prop_assert!(verify_bialgebra(&u, &c).unwrap().is_empty());
        prop_assert!(verify_comodule(&u, &c).unwrap().is_empty());
    }
}
