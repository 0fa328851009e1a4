//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use serde_json::Value;

use unipoiss::algebra::{buchberger, ideal_equal, Field, IdealBasis, Polynomial, RingMatrix, TermOrder};
use unipoiss::bialgebra::{automorphism_group, gamma_bar, universal_bialgebra, verify_bialgebra, verify_comodule};
use unipoiss::gradings::{
    classify_gradings, enumerate_bialgebra_maps, enumerate_gradings, grading_from_theta, theta_from_grading, Grading,
};
use unipoiss::modules::tensor_module;
use unipoiss::oracle;
use unipoiss::poisson::{check_poisson_morphism, verify_poisson_module, PoissonStructure};
use unipoiss::samples;
use unipoiss::universal::{algebra_map_points, eta, universal_algebra, UniversalPresentation};
use unipoiss_cli::run_command;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (Value, i32) {
    let mut argv = vec!["unipoiss".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let out = run_command(&argv);
    (serde_json::from_str(&out.text).expect("report is JSON"), out.code)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|s| s.as_str().expect("string").to_string())
        .collect()
}

fn ideal(u: &UniversalPresentation, gens: Vec<Polynomial>) -> IdealBasis {
    buchberger(u.ring(), &gens).unwrap()
}

fn within(start: Instant, limit: Duration) {
    let spent = start.elapsed();
    assert!(spent < limit, "took {spent:?}, limit {limit:?}");
}

/// Tensor terms compared as a set, so the order of summands does not matter.
fn tensor_terms(s: &str) -> BTreeSet<String> {
    s.split(" + ").map(str::to_string).collect()
}

fn criterion_1() {
    let start = Instant::now();
    let (report, code) = cli(&["universal", &data("ex_dx.json"), &data("ex_aff2.json")]);
    assert_eq!(code, 0);
    let out = &report["outputs"];
    assert_eq!(out["generated"], 16);
    // independent recomputation of the expected ideal in the same ring
    let f = Field::Rationals;
    let u = universal_algebra(&samples::dual_numbers(f), &samples::aff2(f), false, TermOrder::DegRevLex).unwrap();
    let x = |s, i| u.generator(s, i);
    let want = ideal(&u, vec![&x(0, 0) * &x(0, 0), x(0, 1), &x(0, 0) * &x(1, 0), x(1, 1)]);
    assert!(ideal_equal(u.ideal(), &want).unwrap());
    let printed: Vec<String> = u.ideal().basis().iter().map(|g| g.to_string()).collect();
    assert_eq!(strings(&out["groebner_basis"]), printed);
    within(start, Duration::from_secs(1));
}

fn criterion_2() {
    let start = Instant::now();
    let f = Field::Rationals;
    let p = samples::three_dim(f);
    let u = universal_algebra(&p, &p, false, TermOrder::DegRevLex).unwrap();
    assert_eq!(u.relations().generated, 54);
    let x = |s, i| u.generator(s, i);
    let x11 = x(0, 0);
    let want = ideal(
        &u,
        vec![
            x(0, 1),
            x(0, 2),
            x(1, 2),
            x(2, 1),
            &x(1, 1) - &(&x11 * &x11),
            &x(2, 2) - &(&x11 * &x(2, 2)),
        ],
    );
    assert!(ideal_equal(u.ideal(), &want).unwrap());

    // survivors x11, x21, x31, x33 need the lex order (x22 is eliminated, not x11^2)
    let (report, code) = cli(&["bialgebra", "--order", "lex", &data("ex_h3.json")]);
    assert_eq!(code, 0);
    let out = &report["outputs"];
    assert_eq!(strings(&out["surviving_generators"]), ["x11", "x21", "x31", "x33"]);
    let delta = &out["delta"];
    let expect = [
        ("x21", "x21⊗x11 + x11^2⊗x21"),
        ("x31", "x31⊗x11 + x33⊗x31"),
        ("x11", "x11⊗x11"),
        ("x33", "x33⊗x33"),
    ];
    for (g, d) in expect {
        assert_eq!(tensor_terms(delta[g].as_str().unwrap()), tensor_terms(d), "Δ({g})");
    }
    for (g, e) in [("x11", "1"), ("x21", "0"), ("x31", "0"), ("x33", "1")] {
        assert_eq!(out["counit_on_survivors"][g], e);
    }
    assert_eq!(out["eta"]["e2"], "e2⊗x11^2");
    assert_eq!(out["eta"]["e3"], "e3⊗x33");
    assert_eq!(out["laws_hold"], true);
    within(start, Duration::from_secs(1));
}

fn criterion_3() {
    for f in [Field::Rationals, Field::prime(2).unwrap(), Field::prime(5).unwrap()] {
        for n in 1..=3 {
            for m in 1..=3 {
                let p = PoissonStructure::abelian(f, n).unwrap();
                let q = PoissonStructure::abelian(f, m).unwrap();
                let u = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
                assert!(u.relations().is_empty());
                assert!(u.ideal().is_zero_ideal());
                assert_eq!(u.surviving_generators().len(), n * m);
            }
        }
    }
}

fn random_pairs() -> Vec<(PoissonStructure, PoissonStructure)> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    (0..200)
        .map(|k| {
            let f = if k % 2 == 0 { Field::Rationals } else { Field::prime(5).unwrap() };
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            (samples::random_algebra(f, n, &mut rng), samples::random_algebra(f, m, &mut rng))
        })
        .collect()
}

fn criterion_4() {
    let start = Instant::now();
    for (p, q) in random_pairs() {
        let u = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
        assert!(check_poisson_morphism(eta(&u).map(), &q, &p, &u.quotient(), false).unwrap());
    }
    within(start, Duration::from_secs(60));
}

fn criterion_5() {
    for (p, _) in random_pairs() {
        let (u, c) = universal_bialgebra(&p).unwrap();
        assert!(verify_bialgebra(&u, &c).unwrap().is_empty());
        assert!(verify_comodule(&u, &c).unwrap().is_empty());
    }
}

fn criterion_6() {
    let start = Instant::now();
    for (q, order) in [(2u32, 4usize), (3, 18)] {
        let f = Field::prime(q).unwrap();
        let p = samples::three_dim(f);
        let group = automorphism_group(&p, f).unwrap();
        let (elems, table) = oracle::automorphisms(&p, f).unwrap();
        assert_eq!(group.order(), order);
        assert_eq!(elems.len(), order);
        let image: Vec<usize> = group
            .elements()
            .iter()
            .map(|g| {
                let d: Vec<u64> = gamma_bar(g)
                    .matrix()
                    .entries()
                    .iter()
                    .map(|c| c.residue().unwrap() as u64)
                    .collect();
                elems.iter().position(|e| *e == d).expect("γ̄ lands in the automorphisms")
            })
            .collect();
        assert_eq!(image.iter().collect::<BTreeSet<_>>().len(), order, "γ̄ is a bijection");
        for a in 0..order {
            for b in 0..order {
                assert_eq!(image[group.table()[a][b]], table[image[a]][image[b]]);
            }
        }
        let (report, code) = cli(&["automorphisms", &data("ex_h3.json"), "--field", &format!("F{q}")]);
        assert_eq!(code, 0);
        assert_eq!(report["outputs"]["order"], order);
    }
    within(start, Duration::from_secs(30));
}

fn criterion_7() {
    let count = |p: &PoissonStructure, f: Field| {
        let u = universal_algebra(p, p, false, TermOrder::DegRevLex).unwrap();
        let via_j = algebra_map_points(&u).unwrap().len();
        let brute = oracle::morphisms(p, p, f).unwrap().len();
        assert_eq!(via_j, brute);
        via_j
    };
    let f2 = Field::prime(2).unwrap();
    assert_eq!(count(&samples::three_dim(f2), f2), 12);
    let mut rng = rand::rngs::StdRng::seed_from_u64(77);
    for k in 0..20 {
        let f = Field::prime(if k % 2 == 0 { 2 } else { 3 }).unwrap();
        count(&samples::random_algebra(f, 2, &mut rng), f);
    }
}

fn criterion_8() {
    let start = Instant::now();
    let f = Field::prime(3).unwrap();
    let p = samples::three_dim(f);
    let g = unipoiss::algebra::FiniteAbelianGroup::cyclic(2).unwrap();
    let direct: BTreeSet<Grading> = enumerate_gradings(&p, &g, f).unwrap().into_iter().collect();
    let maps = enumerate_bialgebra_maps(&p, &g, f).unwrap();
    let via: BTreeSet<Grading> = maps.iter().map(|m| grading_from_theta(&p, m).unwrap()).collect();
    assert_eq!(direct, via);
    assert_eq!(maps.len(), via.len());
    for m in &maps {
        assert_eq!(&theta_from_grading(&p, &grading_from_theta(&p, m).unwrap()).unwrap(), m);
    }
    for gr in &direct {
        assert_eq!(&grading_from_theta(&p, &theta_from_grading(&p, gr).unwrap()).unwrap(), gr);
    }
    let classes = classify_gradings(&p, &g, f).unwrap();
    assert_eq!(classes.len(), 2);
    // oracle: every brute-force automorphism applied to every grading
    let (elems, _) = oracle::automorphisms(&p, f).unwrap();
    let autos: Vec<RingMatrix<_>> = elems
        .iter()
        .map(|d| RingMatrix::from_fn(3, 3, |r, c| f.from_i64(d[r * 3 + c] as i64)))
        .collect();
    let mut remaining = direct.clone();
    let mut orbits = 0;
    while let Some(first) = remaining.pop_first() {
        orbits += 1;
        for w in &autos {
            remaining.remove(&first.transform(w).unwrap());
        }
    }
    assert_eq!(orbits, 2);
    within(start, Duration::from_secs(60));
}

fn criterion_9() {
    let f = Field::prime(3).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(909);
    for _ in 0..50 {
        let p = samples::random_algebra(f, rng.gen_range(1..=2), &mut rng);
        let q = samples::random_algebra(f, rng.gen_range(1..=2), &mut rng);
        let a = universal_algebra(&p, &q, false, TermOrder::DegRevLex).unwrap();
        let u = samples::random_poisson_module(&p, rng.gen_range(1..=2), &mut rng).unwrap();
        let v = samples::random_a_module(&a, rng.gen_range(1..=2), &mut rng).unwrap();
        let t = tensor_module(&u, &v).unwrap();
        assert!(verify_poisson_module(&t).unwrap().is_empty());
    }
}

fn criterion_10() {
    let h3 = data("ex_h3.json");
    let runs: Vec<Vec<String>> = vec![
        vec!["verify".into(), h3.clone()],
        vec!["verify".into(), data("ex_bad_jacobi.json")],
        vec!["universal".into(), data("ex_dx.json"), data("ex_aff2.json")],
        vec!["universal".into(), h3.clone(), h3.clone(), "--order".into(), "lex".into()],
        vec!["bialgebra".into(), h3.clone()],
        vec!["endomorphisms".into(), h3.clone(), "--field".into(), "F2".into()],
        vec!["automorphisms".into(), h3.clone(), "--field".into(), "F3".into()],
        vec!["gradings".into(), h3.clone(), "--group".into(), "Z2".into(), "--field".into(), "F3".into(), "--classify".into()],
        vec![
            "tensor-module".into(),
            h3.clone(),
            h3.clone(),
            data("mod_h3_line.json"),
            data("amod_h3_counit.json"),
        ],
        vec!["presentation".into(), "U".into(), h3.clone(), h3.clone(), data("mod_h3_line.json"), data("mod_h3_line.json")],
        vec!["presentation".into(), "V".into(), h3.clone(), h3.clone(), data("amod_h3_counit.json"), data("mod_h3_line.json")],
    ];
    for args in runs {
        let mut argv = vec!["unipoiss".to_string()];
        argv.extend(args.iter().cloned());
        let (a, b) = (run_command(&argv), run_command(&argv));
        assert_eq!(a, b, "{args:?}");
    }
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("1 dual numbers into aff(2): 16 relations, ideal (X11^2, X12, X11X21, X22)", criterion_1),
        ("2 three-dimensional example: 54 relations, ideal, Δ, ε, η", criterion_2),
        ("3 abelian pairs give free algebras", criterion_3),
        ("4 η is a Poisson morphism on 200 random pairs", criterion_4),
        ("5 bialgebra and comodule laws on the same 200 algebras", criterion_5),
        ("6 group-likes under convolution match brute-force automorphisms", criterion_6),
        ("7 algebra maps satisfying J match brute-force endomorphisms", criterion_7),
        ("8 gradings bijection and two orbits", criterion_8),
        ("9 tensor modules satisfy the module axioms", criterion_9),
        ("10 reports are byte-identical across runs", criterion_10),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        let secs = start.elapsed().as_secs_f64();
        println!("{} criterion {name} ({secs:.2}s)", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
