use std::collections::BTreeSet;

use unipoiss::algebra::{Field, FiniteAbelianGroup, RingMatrix};
use unipoiss::bialgebra::automorphism_group;
use unipoiss::gradings::{
    classify_gradings, enumerate_bialgebra_maps, enumerate_gradings, grading_from_theta, theta_from_grading,
    verify_grading, Grading,
};
use unipoiss::oracle;
use unipoiss::poisson::PoissonStructure;
use unipoiss::samples;

fn oracle_orbit_count(p: &PoissonStructure, f: Field, gradings: &[Grading]) -> usize {
    let (elems, _) = oracle::automorphisms(p, f).unwrap();
    let n = p.dim();
    let autos: Vec<RingMatrix<_>> = elems
        .iter()
        .map(|d| RingMatrix::from_fn(n, n, |r, c| f.from_i64(d[r * n + c] as i64)))
        .collect();
    let mut remaining: BTreeSet<Grading> = gradings.iter().cloned().collect();
    let mut count = 0;
    while let Some(g) = remaining.pop_first() {
        count += 1;
        for w in &autos {
            remaining.remove(&g.transform(w).unwrap());
        }
    }
    count
}

fn cases() -> Vec<(PoissonStructure, FiniteAbelianGroup, Field)> {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    vec![
        (samples::three_dim(f3), FiniteAbelianGroup::cyclic(2).unwrap(), f3),
        (samples::three_dim(f2), FiniteAbelianGroup::cyclic(3).unwrap(), f2),
        (samples::aff2(f3), FiniteAbelianGroup::cyclic(2).unwrap(), f3),
        (samples::heisenberg(f2), FiniteAbelianGroup::cyclic(2).unwrap(), f2),
    ]
}

#[test]
fn gradings_are_exactly_the_bialgebra_maps() {
    for (p, g, f) in cases() {
        let direct: Vec<Grading> = enumerate_gradings(&p, &g, f).unwrap();
        let maps = enumerate_bialgebra_maps(&p, &g, f).unwrap();
        let via: BTreeSet<Grading> = maps.iter().map(|m| grading_from_theta(&p, m).unwrap()).collect();
        assert_eq!(maps.len(), via.len(), "distinct maps give distinct gradings");
        assert_eq!(direct.iter().cloned().collect::<BTreeSet<_>>(), via);
        for gr in &direct {
            assert!(verify_grading(&p, gr).unwrap());
            let theta = theta_from_grading(&p, gr).unwrap();
            theta.validate(&p).unwrap();
            assert_eq!(&grading_from_theta(&p, &theta).unwrap(), gr);
        }
        for m in &maps {
            let gr = grading_from_theta(&p, m).unwrap();
            assert_eq!(&theta_from_grading(&p, &gr).unwrap(), m);
        }
    }
}

#[test]
fn classification_matches_brute_force_orbits() {
    for (p, g, f) in cases() {
        let all = enumerate_gradings(&p, &g, f).unwrap();
        let classes = classify_gradings(&p, &g, f).unwrap();
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), all.len());
        assert_eq!(classes.len(), oracle_orbit_count(&p, f, &all));
    }
}

#[test]
fn final_example_has_two_classes_over_f3() {
    let f3 = Field::prime(3).unwrap();
    let p = samples::three_dim(f3);
    let g = FiniteAbelianGroup::cyclic(2).unwrap();
    assert_eq!(enumerate_gradings(&p, &g, f3).unwrap().len(), 4);
    let classes = classify_gradings(&p, &g, f3).unwrap();
    let shown: Vec<(String, usize)> = classes
        .iter()
        .map(|c| (c.representative.to_string(), c.size))
        .collect();
    assert_eq!(
        shown,
        [
            ("(0): span{(1,0,0), (0,1,0)}; (1): span{(0,0,1)}".to_string(), 3),
            ("(0): span{(1,0,0), (0,1,0), (0,0,1)}".to_string(), 1),
        ]
    );
}

#[test]
fn conjugation_transports_gradings() {
    for (p, g, f) in cases() {
        let aut = automorphism_group(&p, f).unwrap();
        for m in enumerate_bialgebra_maps(&p, &g, f).unwrap() {
            let base = grading_from_theta(&p, &m).unwrap();
            for a in aut.elements() {
                let c = m.conjugate(a).unwrap();
                c.validate(&p).unwrap();
                assert_eq!(grading_from_theta(&p, &c).unwrap(), base.transform(a.matrix()).unwrap());
            }
        }
    }
}
