//! End-to-end acceptance suite. Each test covers one criterion and prints
//! a single pass line (visible with `--nocapture`); a failure panics with
//! the concrete witness.

use std::process::Command;
use std::sync::Arc;

use qdomain::category::{all_functors, check_adjoint, QCategory, QFunctor};
use qdomain::continuity::{
    algebraic_equivalence, check_algebraic, check_continuous, check_interpolation, is_compact,
    phi_s, way_below,
};
use qdomain::distributor::{cograph, graph, QDistributor};
use qdomain::ideal::{
    check_cocomplete, is_conical, is_conical_ideal, is_flat, is_irreducible, phi_category,
    saturation_harness, IdealClassId,
};
use qdomain::models::{self, chain_quantale, powerset_quantale, q_power, q_power_d, Tensor};
use qdomain::quantaloid::b_q;
use qdomain::oracle::{all_posets_up_to_iso, cross_validate, named_posets, poset_oracle};
use qdomain::presheaf::{
    f_from, f_to, representable, sup, Presheaf, PresheafCategory, DEFAULT_ENUM_CAP,
};

const CAP: usize = DEFAULT_ENUM_CAP;

/// Classes closed under colimits, used wherever a saturated class is
/// required.
const SATURATED: [IdealClassId; 8] = [
    IdealClassId::All,
    IdealClassId::Irreducible,
    IdealClassId::InhabitedIrreducible,
    IdealClassId::Flat,
    IdealClassId::InhabitedFlat,
    IdealClassId::WeaklyFlat,
    IdealClassId::Conical,
    IdealClassId::ConicalIdeal,
];

fn category_fixtures() -> Vec<(String, Arc<QCategory>)> {
    models::catalog()
        .into_iter()
        .filter_map(|e| match e.fixture {
            models::Fixture::Category(c) => Some((e.name.to_string(), c)),
            _ => None,
        })
        .collect()
}

fn poset_corpus() -> Vec<(String, qdomain::category::Preorder)> {
    let mut corpus = Vec::new();
    for n in 1..=4 {
        for (i, p) in all_posets_up_to_iso(n).into_iter().enumerate() {
            corpus.push((format!("poset-{n}-{i}"), p));
        }
    }
    corpus.extend(named_posets());
    corpus
}

#[test]
fn criterion_01_poset_ideal_correspondence() {
    let corpus = poset_corpus();
    for (name, p) in &corpus {
        for class in [IdealClassId::InhabitedFlat, IdealClassId::InhabitedIrreducible] {
            let cv = cross_validate(p, class, CAP).unwrap();
            assert!(
                cv.pass(),
                "{name} [{}]: {:?}",
                class.name(),
                cv.mismatches
            );
        }
    }
    println!(
        "criterion 1 (poset ideal correspondence, {} posets): pass",
        corpus.len()
    );
}

#[test]
fn criterion_02_way_below_and_verdict_correspondence() {
    let corpus = poset_corpus();
    for (name, p) in &corpus {
        // the oracle itself computes way-below and verdicts independently
        let _ = poset_oracle(p);
        for class in [
            IdealClassId::InhabitedFlat,
            IdealClassId::InhabitedIrreducible,
            IdealClassId::ConicalIdeal,
        ] {
            let cv = cross_validate(p, class, CAP).unwrap();
            assert!(
                cv.pass(),
                "{name} [{}]: {:?}",
                class.name(),
                cv.mismatches
            );
        }
    }
    println!(
        "criterion 2 (way-below and continuity/algebraicity correspondence, {} posets): pass",
        corpus.len()
    );
}

#[test]
fn criterion_03_calculus_laws() {
    let fixtures = category_fixtures();
    // Yoneda lemma and residual adjunctions on every fixture
    for (name, cat) in &fixtures {
        let q = cat.ambient();
        let pa = PresheafCategory::build(cat.clone(), CAP).unwrap();
        for x in 0..cat.len() {
            let yx = representable(cat, x);
            for mu in pa.presheaves() {
                assert_eq!(
                    pa.hom_value(&yx, mu),
                    mu.values[x],
                    "{name}: Yoneda fails at {}",
                    cat.id(x)
                );
            }
        }
        for p in 0..q.objects().len() {
            for m in 0..q.objects().len() {
                for r in 0..q.objects().len() {
                    for u in 0..q.hom(p, m).len() {
                        for v in 0..q.hom(p, r).len() {
                            for w in 0..q.hom(m, r).len() {
                                let left = q.hom(p, r).leq(q.compose(p, m, r, w, u), v);
                                assert_eq!(
                                    left,
                                    q.hom(m, r).leq(w, q.lres(p, m, r, v, u)),
                                    "{name}: left residual adjunction fails"
                                );
                            }
                            for w in 0..q.hom(p, m).len() {
                                for uu in 0..q.hom(m, r).len() {
                                    let left = q.hom(p, r).leq(q.compose(p, m, r, uu, w), v);
                                    assert_eq!(
                                        left,
                                        q.hom(p, m).leq(w, q.rres(p, m, r, uu, v)),
                                        "{name}: right residual adjunction fails"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // functor-level laws, exhaustively over all functors between
    // same-ambient fixture pairs
    for (na, a) in &fixtures {
        for (nb, b) in &fixtures {
            if a.ambient() != b.ambient() {
                continue;
            }
            for f in all_functors(a, b) {
                // graph ⊣ cograph
                let unit_ok = QDistributor::identity(a.clone()).leq(
                    &graph(&f).then(&cograph(&f)).unwrap(),
                );
                let counit_ok = cograph(&f)
                    .then(&graph(&f))
                    .unwrap()
                    .leq(&QDistributor::identity(b.clone()));
                assert!(unit_ok && counit_ok, "{na}->{nb}: graph/cograph adjunction fails");
                // pushforward ⊣ pullback on presheaves
                let pa = PresheafCategory::build(a.clone(), CAP).unwrap();
                let pb = PresheafCategory::build(b.clone(), CAP).unwrap();
                for mu in pa.presheaves() {
                    for lam in pb.presheaves() {
                        if mu.typ != lam.typ {
                            continue;
                        }
                        assert_eq!(
                            pb.hom_value(&f_to(&f, mu), lam),
                            pa.hom_value(mu, &f_from(&f, lam)),
                            "{na}->{nb}: pushforward adjunction fails"
                        );
                    }
                }
                // graphs of composites
                for (nc, c) in &fixtures {
                    if b.ambient() != c.ambient() {
                        continue;
                    }
                    for g in all_functors(b, c) {
                        let gf = f.then(&g).unwrap();
                        assert_eq!(
                            graph(&gf),
                            graph(&f).then(&graph(&g)).unwrap(),
                            "{na}->{nb}->{nc}: graph of composite differs"
                        );
                    }
                }
            }
        }
    }
    println!("criterion 3 (calculus laws on {} fixtures): pass", fixtures.len());
}

#[test]
fn criterion_04_saturation_instances() {
    let fixtures: Vec<(String, Arc<QCategory>)> = ["fix-v", "fix-2", "fix-bg3cat"]
        .iter()
        .map(|n| (n.to_string(), models::fixture_category(n).unwrap()))
        .collect();
    for class in [
        IdealClassId::Irreducible,
        IdealClassId::InhabitedIrreducible,
        IdealClassId::Flat,
        IdealClassId::InhabitedFlat,
        IdealClassId::WeaklyFlat,
        IdealClassId::Conical,
        IdealClassId::ConicalIdeal,
    ] {
        let report = saturation_harness(class, &fixtures, 7, CAP).unwrap();
        for check in &report.checks {
            assert!(
                check.pass,
                "[{}] {}: {:?}",
                class.name(),
                check.name,
                check.witness
            );
        }
    }
    println!("criterion 4 (saturation instances, 7 classes x 3 fixtures): pass");
}

#[test]
fn criterion_05_presheaf_category_continuity() {
    for name in ["fix-v", "fix-2"] {
        let cat = models::fixture_category(name).unwrap();
        let pa = Arc::new(PresheafCategory::build(cat, CAP).unwrap());
        let ppa = Arc::new(PresheafCategory::build(pa.category().clone(), CAP).unwrap());
        let phi = phi_category(IdealClassId::All, ppa, CAP).unwrap();
        let coc = check_cocomplete(&phi);
        assert!(coc.verdict, "{name}: presheaf category not cocomplete");
        assert_eq!(coc.adjunction_ok, Some(true), "{name}: sup not left adjoint to Yoneda");
        let phis = phi_s(&phi).unwrap();
        let cont = check_continuous(&phis, CAP).unwrap();
        assert!(cont.verdict, "{name}: presheaf category not continuous");
        assert_eq!(cont.adjunction_ok, Some(true), "{name}: approximation not left adjoint to sup");
    }
    println!("criterion 5 (presheaf categories are cocomplete and continuous): pass");
}

#[test]
fn criterion_06_ideal_category_structure() {
    let mut ran = 0usize;
    let mut skipped = Vec::new();
    for (name, cat) in category_fixtures() {
        let pa = Arc::new(PresheafCategory::build(cat.clone(), CAP).unwrap());
        for class in SATURATED {
            let phi = phi_category(class, pa.clone(), CAP).unwrap();
            if phi.len() > 8 {
                skipped.push(format!("{name} [{}] (|ΦA| = {})", class.name(), phi.len()));
                continue;
            }
            let b = phi.category().clone();
            let pb = Arc::new(PresheafCategory::build(b.clone(), CAP).unwrap());
            let phi_b = phi_category(class, pb, CAP).unwrap();
            let coc = check_cocomplete(&phi_b);
            assert!(coc.verdict, "{name} [{}]: ideal category not cocomplete", class.name());
            let phis_b = phi_s(&phi_b).unwrap();
            let wb = way_below(&phis_b).unwrap();
            for a in 0..cat.len() {
                let ya = phi.yoneda_corestricted().apply(a);
                assert!(
                    is_compact(&phis_b, &wb, ya).unwrap(),
                    "{name} [{}]: representable of `{}` not compact",
                    class.name(),
                    cat.id(a)
                );
            }
            let alg = check_algebraic(&phis_b, CAP).unwrap();
            assert!(alg.verdict, "{name} [{}]: ideal category not algebraic", class.name());
            let eq = algebraic_equivalence(&phis_b, CAP).unwrap();
            assert!(
                eq.round_trip_iso && eq.ideal_round_trip_exact,
                "{name} [{}]: reconstruction from compacts fails",
                class.name()
            );
            ran += 1;
        }
    }
    for s in &skipped {
        println!("criterion 6: skipped {s}");
    }
    println!("criterion 6 (ideal category structure, {ran} runs, {} skips): pass", skipped.len());
}

#[test]
fn criterion_07_interpolation() {
    let mut ran = 0usize;
    for (name, cat) in category_fixtures() {
        let pa = Arc::new(PresheafCategory::build(cat.clone(), CAP).unwrap());
        for class in SATURATED {
            let phi = phi_category(class, pa.clone(), CAP).unwrap();
            let phis = phi_s(&phi).unwrap();
            if !check_continuous(&phis, CAP).unwrap().verdict {
                continue;
            }
            let wb = way_below(&phis).unwrap();
            if let Err((y, x)) = check_interpolation(&wb) {
                panic!(
                    "{name} [{}]: approximation does not interpolate at ({}, {})",
                    class.name(),
                    cat.id(y),
                    cat.id(x)
                );
            }
            ran += 1;
        }
    }
    println!("criterion 7 (interpolation on {ran} continuous instances): pass");
}

#[test]
fn criterion_08_divisible_quantales() {
    let g3 = chain_quantale(3, Tensor::Godel);
    let luk3 = chain_quantale(3, Tensor::Lukasiewicz);
    let pwr2 = powerset_quantale(&["1", "2"]);
    for (name, q) in [("G3", &g3), ("Luk3", &luk3), ("Pwr2", &pwr2)] {
        assert!(q.check_divisible().is_ok(), "{name} not divisible");
        // b_q validates its output on construction
        b_q(q).unwrap_or_else(|e| panic!("{name}: divisibility quantaloid invalid: {e}"));
    }
    for (name, q) in [("G3", &g3), ("Pwr2", &pwr2)] {
        let bq = Arc::new(b_q(q).unwrap());
        let top_obj = q.lattice().id(q.lattice().top()).to_string();
        let a = bq.object_index(&top_obj).unwrap();
        // the quantale is integral, so the anchor object's identity is a top
        assert_eq!(bq.identity(a), bq.hom(a, a).top());
        let qa = Arc::new(q_power(bq.clone(), a));
        let pa = PresheafCategory::build(qa.clone(), CAP).unwrap();
        let d = q_power_d(&bq, a, &qa);
        // d is a functor left adjoint to sup
        let d_map: Vec<usize> = d.iter().map(|p| pa.index_of(p).unwrap()).collect();
        let d_fun = QFunctor::validate(qa.clone(), pa.category().clone(), d_map).unwrap();
        let sup_map: Vec<usize> = pa
            .presheaves()
            .iter()
            .map(|mu| sup(&qa, mu).canonical.unwrap())
            .collect();
        let sup_fun = QFunctor::validate(pa.category().clone(), qa.clone(), sup_map).unwrap();
        assert!(
            check_adjoint(&d_fun, &sup_fun).is_ok(),
            "{name}: d is not left adjoint to sup"
        );
        // integral simplification: d(f)(g) = f ∘ ⊤, and every d(f) is flat
        let arrow_of = |e: usize| (0..e).filter(|&x| qa.typ(x) == qa.typ(e)).count();
        for fe in 0..qa.len() {
            for ge in 0..qa.len() {
                let top = bq.hom(qa.typ(ge), a).top();
                assert_eq!(
                    d[fe].values[ge],
                    bq.compose(qa.typ(ge), a, qa.typ(fe), arrow_of(fe), top),
                    "{name}: integral simplification fails"
                );
            }
            assert!(
                is_flat(&qa, &d[fe], CAP).unwrap().is_ok(),
                "{name}: d({}) is not flat",
                qa.id(fe)
            );
        }
    }
    println!("criterion 8 (divisible quantale results on G3, Luk3, Pwr2): pass");
}

#[test]
fn criterion_09_negative_controls() {
    let v = models::fixture_category("fix-v").unwrap();
    let pa = Arc::new(PresheafCategory::build(v.clone(), CAP).unwrap());
    // the non-directed lower set {x, y}
    let xy = Presheaf::validate(&v, 0, vec![1, 1, 0]).unwrap();
    let flat_witness = is_flat(&v, &xy, CAP).unwrap().unwrap_err();
    let irr_witness = is_irreducible(&pa, &xy).unwrap_err();
    assert!(is_conical(&v, &xy));
    assert!(is_conical_ideal(&v, &xy).unwrap().is_err());
    let phi = phi_category(IdealClassId::All, pa, CAP).unwrap();
    let coc = check_cocomplete(&phi);
    assert!(!coc.verdict);
    let empty = Presheaf::validate(&v, 0, vec![0, 0, 0]).unwrap();
    let empty_idx = phi.index_of(&empty).unwrap();
    assert!(coc.missing.contains(&empty_idx), "empty ideal should lack a sup");
    println!(
        "criterion 9 (negative controls; witnesses: flat {:?}/{:?}, irreducible {:?}/{:?}, cocompleteness ∅): pass",
        flat_witness.0.values, flat_witness.1.values, irr_witness.0.values, irr_witness.1.values
    );
}

fn cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qdomain"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap())
}

#[test]
fn criterion_10_cli_determinism_and_exit_codes() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["fixtures", "list", "--json"],
        vec!["enumerate", "--fixture", "fix-v", "--json"],
        vec!["check-ideal", "--fixture", "fix-v", "--class", "flat", "--type", "*", "--json"],
        vec!["phi-cat", "--fixture", "fix-v", "--class", "inhabited-flat", "--json"],
        vec!["check-cocomplete", "--fixture", "fix-v", "--class", "all", "--json"],
        vec!["way-below", "--fixture", "fix-g3chain2", "--class", "inhabited-flat", "--json"],
        vec!["check-continuous", "--fixture", "fix-v", "--class", "inhabited-flat", "--json"],
        vec!["check-algebraic", "--fixture", "fix-g3chain2", "--class", "inhabited-flat", "--json"],
        vec!["equivalence", "--fixture", "fix-v", "--class", "inhabited-flat", "--json"],
        vec!["saturation-harness", "--class", "conical-ideal", "--fixture", "fix-v", "--fixture", "fix-2", "--seed", "7", "--json"],
        vec!["cross-validate", "--max-poset", "3", "--json"],
    ];
    for args in &commands {
        let (a, code_a) = cli(args);
        let (b, code_b) = cli(args);
        assert_eq!(a, b, "non-deterministic output for {args:?}");
        assert_eq!(code_a, code_b);
        assert_eq!(code_a, 0, "command failed: {args:?}");
    }
    // exit-code protocol
    let dir = std::env::temp_dir().join("qdomain-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"objects\":").unwrap();
    let (_, code) = cli(&["validate", "--quantaloid", bad.to_str().unwrap()]);
    assert_eq!(code, 3, "malformed JSON should exit 3");
    let broken = dir.join("broken.json");
    // composition table violates the unit law at 0.5
    std::fs::write(
        &broken,
        r#"{"objects":["*"],
            "homs":{"*|*":{"carrier":["0","0.5","1"],"leq":[["0","0.5"],["0.5","1"]]}},
            "compose":{"*|*|*":[["0","0","0"],["0","0.5","0"],["0","1","0"],
                                 ["0.5","0","0"],["0.5","0.5","0"],["0.5","1","0"],
                                 ["1","0","0"],["1","0.5","0.5"],["1","1","1"]]},
            "identity":{"*":"1"}}"#,
    )
    .unwrap();
    let (_, code) = cli(&["validate", "--quantaloid", broken.to_str().unwrap()]);
    assert_eq!(code, 2, "axiom violation should exit 2");
    let (_, code) = cli(&["enumerate", "--fixture", "fix-v", "--cap", "2"]);
    assert_eq!(code, 4, "cap overflow should exit 4");
    let (_, code) = cli(&[
        "check-algebraic", "--fixture", "fix-g3chain2", "--class", "inhabited-flat", "--assert",
    ]);
    assert_eq!(code, 1, "negative verdict under --assert should exit 1");
    println!(
        "criterion 10 (determinism over {} commands and exit-code protocol): pass",
        commands.len()
    );
}
