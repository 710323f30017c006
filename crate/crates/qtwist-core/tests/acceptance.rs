//! Acceptance criteria, one line per criterion. Runs without the libtest harness
//! so the summary lines always reach the terminal.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qtwist_core::cartan::validate_cartan;
use qtwist_core::cocycles::{
    cocycle_suite, deform_product, deform_product_over, monomials_up_to, star_product, Bicharacter, ExpCocycle,
    GroupCocycle, GroupCocycleTable, HopfCocycle,
};
use qtwist_core::datum::{build_dj_datum, dj_twist_bicharacter, validate_reduced_datum, QMatrix, ReducedDatum};
use qtwist_core::ideals::{graded_dimension, ideal_member};
use qtwist_core::linalg::kernel;
use qtwist_core::qgroups::{hpr_halfroot_cocycle, serre_expand, twist_to_dj, verify_halfroot, verify_isomorphism, SerreKind};
use qtwist_core::racks::{
    compose_with_group_twist, fk_relations, nichols_hilbert, parse_group_table, search_twist_table, transposition_rack, twist_rack_cocycle,
    validate_rack_cocycle, verify_exp_deformation, TranspositionCocycle,
};
use qtwist_core::smash::{braided_adjoint, coproduct, SmashElement, SmashMonomial};
use qtwist_core::yd::{index_word, quantum_symmetrizer, symmetric_group, word_index, GroupElement};
use qtwist_core::{q_binom, Error, RadicalTable, Rational};

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn datum(cartan: &[&[i64]], q: &[&[&str]]) -> ReducedDatum {
    let c = validate_cartan(cartan.iter().map(|row| row.to_vec()).collect()).unwrap();
    let q = QMatrix::new(q.iter().map(|row| row.iter().map(|s| r(s)).collect()).collect()).unwrap();
    validate_reduced_datum(c, q, None).unwrap()
}

fn sl2() -> ReducedDatum {
    datum(&[&[2]], &[&["4"]])
}

fn a2() -> ReducedDatum {
    datum(&[&[2, -1], &[-1, 2]], &[&["4", "6"], &["1/24", "4"]])
}

fn b2() -> ReducedDatum {
    datum(&[&[2, -1], &[-2, 2]], &[&["16", "2"], &["1/32", "4"]])
}

fn g2() -> ReducedDatum {
    datum(&[&[2, -1], &[-3, 2]], &[&["8", "3"], &["1/24", "2"]])
}

fn gl(g: GroupElement) -> SmashMonomial {
    SmashMonomial::group_like(g)
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../qtwist-cli/tests/fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn phi_table(name: &str) -> GroupCocycleTable {
    let v: serde_json::Value = serde_json::from_str(&fixture(name)).unwrap();
    let values: BTreeMap<String, String> = serde_json::from_value(v["phi"]["values"].clone()).unwrap();
    GroupCocycleTable::unchecked(parse_group_table(4, &values).unwrap())
}

fn c1_q_pascal() {
    let mut rng = StdRng::seed_from_u64(1);
    let mut qs = Vec::new();
    while qs.len() < 10 {
        let (p, d) = (rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9));
        let q = Rational::frac(p, d);
        if !q.is_zero() && !q.is_one() && q != r("-1") && !qs.contains(&q) {
            qs.push(q);
        }
    }
    // binom(m, k) vanishes for k > m
    let b = |m: u32, k: u32, q: &Rational| if k > m { r("0") } else { q_binom(m, k, q).unwrap() };
    for q in &qs {
        for n in 1..=8u32 {
            for k in 1..=n {
                let lhs = b(n, k, q);
                assert_eq!(lhs, q.pow(k as i64) * b(n - 1, k, q) + b(n - 1, k - 1, q), "n={n} k={k} q={q}");
                assert_eq!(lhs, b(n - 1, k, q) + q.pow((n - k) as i64) * b(n - 1, k - 1, q), "n={n} k={k} q={q}");
            }
        }
    }
}

fn c2_serre_closed_form() {
    for d in [a2(), b2(), g2()] {
        let v = d.module();
        let t = d.theta();
        for (i, j) in [(0, 1), (1, 0)] {
            for n in 0..=4u32 {
                for (kind, off) in [(SerreKind::X, 0), (SerreKind::Y, t)] {
                    let x = SmashElement::letter(&v, off + i);
                    let mut z = SmashElement::letter(&v, off + j);
                    for _ in 0..n {
                        z = braided_adjoint(&v, &x, &z).unwrap();
                    }
                    assert_eq!(serre_expand(kind, i, j, n, &d).unwrap(), z, "{kind:?} {i} {j} {n}");
                }
            }
        }
    }
}

fn c3_skew_primitive() {
    for d in [a2(), b2()] {
        let v = d.module();
        let a12 = d.cartan().get(0, 1);
        let n = (1 - a12) as u32;
        let z = serre_expand(SerreKind::X, 0, 1, n, &d).unwrap();
        let deg = d.k(0).pow(n as i32).mul(&d.k(1));
        let mut want = BTreeMap::new();
        for (m, c) in z.terms() {
            want.insert((m.clone(), gl(v.identity().clone())), c.clone());
            want.insert((gl(deg.clone()), m.clone()), c.clone());
        }
        assert_eq!(coproduct(&v, &z, 6).unwrap(), want, "a12 = {a12}");
    }
}

fn c4_isomorphism() {
    for d in [sl2(), a2()] {
        let rep = verify_isomorphism(&d, 4, None).unwrap();
        assert!(rep.pass);
        for dir in ["phi", "psi", "phi.psi", "psi.phi"] {
            assert!(rep.checks.iter().any(|c| c.direction == dir));
        }
        assert!(rep.checks.iter().all(|c| c.bound == 4));
    }
    let bad = verify_isomorphism(&a2(), 4, Some(&r("1"))).unwrap();
    assert!(!bad.pass);
    assert!(bad.checks.iter().any(|c| c.relation.starts_with("R5") && !c.member));
}

fn c5_twist_to_dj() {
    let d = a2();
    let out = twist_to_dj(&d, &[r("2")], 4).unwrap();
    assert!(out.report.pass);
    for item in ["i", "ii", "iii"] {
        assert!(out.report.checks.iter().any(|c| c.item == item && c.pass));
    }
    let v = d.module();
    assert_eq!(out.sigma.eval_monomials(&v, &gl(d.k(0)), &gl(d.k(1))), r("1/12"));
    let links = out.report.checks.iter().filter(|c| c.item == "iii").count();
    assert_eq!(links, 4);
    assert!(twist_to_dj(&b2(), &[r("2")], 4).unwrap().report.pass);
}

fn c6_cocycle_suite() {
    let d = a2();
    let v = d.module();
    let dj = build_dj_datum(&d, &[r("2")]).unwrap();
    let sigma = HopfCocycle::bicharacter(dj_twist_bicharacter(&d, &dj).unwrap());
    let groups = [v.identity().clone(), d.k(0), d.l(1)];
    let rep = cocycle_suite(&sigma, &v, 3, &groups);
    assert!(rep.pass(), "DJ twist {rep:?}");

    let mut m = vec![vec![r("1"); 4]; 4];
    m[0][3] = r("5");
    m[2][1] = r("1/7");
    let tau = HopfCocycle::bicharacter(Bicharacter::new(m, None));
    let composite = HopfCocycle::Convolved(vec![tau, sigma]);
    let rep = cocycle_suite(&composite, &v, 3, &groups);
    assert!(rep.pass(), "composite {rep:?}");

    let s = sl2();
    let radicals = RadicalTable::new([(r("4"), r("2"))]).unwrap();
    let half = hpr_halfroot_cocycle(&s, &radicals).unwrap();
    let w = s.module();
    let rep = cocycle_suite(&half, &w, 3, &[w.identity().clone(), s.k(0), s.l(0).inverse()]);
    assert!(rep.pass(), "half-root {rep:?}");

    let x = transposition_rack(3).unwrap();
    let g = symmetric_group(3);
    // the {+1, -1} table twisting chi to -1 on S_3
    let twist = search_twist_table(3).unwrap().expect("twist table on S_3");
    assert!(!twist.values().is_empty());
    let table = HopfCocycle::table(twist);
    let vc = x.module(TranspositionCocycle::Chi);
    let rep = cocycle_suite(&table, &vc, 3, &[vc.identity().clone(), g[1].clone()]);
    assert!(rep.pass(), "S_3 table {rep:?}");

    let vs = x.module(TranspositionCocycle::MinusOne);
    let exp = HopfCocycle::Exp(ExpCocycle::uniform(vs.clone(), r("1/3"), &g).unwrap());
    let rep = cocycle_suite(&exp, &vs, 3, &[vs.identity().clone(), g[1].clone()]);
    assert!(rep.pass(), "exp {rep:?}");
}

fn c7_groupoid() {
    let d = a2();
    let v = d.module();
    let dj = build_dj_datum(&d, &[r("2")]).unwrap();
    let sigma = HopfCocycle::bicharacter(dj_twist_bicharacter(&d, &dj).unwrap());
    let mut m = vec![vec![r("1"); 4]; 4];
    m[1][2] = r("3");
    m[3][0] = r("2/5");
    let tau = HopfCocycle::bicharacter(Bicharacter::new(m, None));
    let composite = HopfCocycle::Convolved(vec![tau.clone(), sigma.clone()]);
    let mut gens: Vec<SmashElement> = (0..v.len()).map(|i| SmashElement::letter(&v, i)).collect();
    for i in 0..d.theta() {
        gens.push(SmashElement::group_like(d.k(i)));
        gens.push(SmashElement::group_like(d.l(i)));
    }
    for a in &gens {
        for b in &gens {
            let two_step = deform_product_over(&tau, Some(&sigma), &v, a, b, 2).unwrap();
            assert_eq!(two_step, deform_product(&composite, &v, a, b, 2).unwrap());
        }
    }
    let trivial = HopfCocycle::Convolved(vec![sigma.inverse(), sigma]);
    let ms = monomials_up_to(&v, 2, &[v.identity().clone(), d.k(0), d.l(1)]);
    for a in &ms {
        for b in &ms {
            let want = if a.word.is_empty() && b.word.is_empty() { r("1") } else { r("0") };
            assert_eq!(trivial.eval_monomials(&v, a, b), want);
        }
    }
}

fn c8_star_product() {
    let d = a2();
    let v = d.module();
    let dj = build_dj_datum(&d, &[r("2")]).unwrap();
    let b = dj_twist_bicharacter(&d, &dj).unwrap();
    let phi = GroupCocycle::Bicharacter(b.clone());
    let lifted = HopfCocycle::bicharacter(b);
    let ms = monomials_up_to(&v, 2, &[v.identity().clone(), d.k(0), d.l(1), d.k(1).inverse()]);
    let mut pairs = 0;
    for a in &ms {
        for c in &ms {
            let (x, y) = (SmashElement::monomial(a.clone(), r("1")), SmashElement::monomial(c.clone(), r("1")));
            assert_eq!(star_product(&phi, &v, &x, &y).unwrap(), deform_product(&lifted, &v, &x, &y, 4).unwrap());
            pairs += 1;
        }
    }
    assert!(pairs > 1000);
}

fn c9_racks() {
    for n in [3, 4] {
        let x = transposition_rack(n).unwrap();
        assert_eq!(x.rack().len(), n * (n - 1) / 2);
        for kind in [TranspositionCocycle::MinusOne, TranspositionCocycle::Chi] {
            validate_rack_cocycle(x.rack(), x.cocycle_values(kind)).unwrap();
        }
    }
    let x = transposition_rack(3).unwrap();
    let mut rng = StdRng::seed_from_u64(9);
    let (mut valid, mut invalid) = (0, 0);
    for k in 0..100 {
        let kind = if k % 2 == 0 { TranspositionCocycle::MinusOne } else { TranspositionCocycle::Chi };
        let q = x.cocycle(kind).unwrap();
        let phi: Vec<Vec<Rational>> =
            (0..3).map(|_| (0..3).map(|_| if rng.gen_bool(0.5) { r("-1") } else { r("1") }).collect()).collect();
        let t = twist_rack_cocycle(x.rack(), &q, &phi).unwrap();
        let direct = validate_rack_cocycle(x.rack(), t.q_phi.clone()).is_ok();
        assert_eq!(t.valid, direct);
        assert_eq!(t.cocycle_valid, direct);
        if direct {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    assert!(valid > 0 && invalid > 0);
}

fn c10_fk_kernels() {
    for n in [3, 4] {
        for kind in [TranspositionCocycle::MinusOne, TranspositionCocycle::Chi] {
            let x = transposition_rack(n).unwrap();
            let v = x.module(kind);
            let p = fk_relations(n, kind).unwrap();
            let q2 = quantum_symmetrizer(&v, 2).unwrap();
            let ker = kernel(&q2);
            if n == 3 {
                assert_eq!(ker.len(), 5);
            }
            assert_eq!(graded_dimension(&p, 2).unwrap(), v.len() * v.len() - ker.len());
            for rel in p.relations() {
                let mut image: BTreeMap<usize, Rational> = BTreeMap::new();
                for (m, c) in rel.terms() {
                    for (row, val) in &q2[word_index(&m.word, v.len())] {
                        *image.entry(*row).or_insert_with(|| r("0")) += &(val * c);
                    }
                }
                assert!(image.values().all(|x| x.is_zero()), "relation outside ker Q_2");
            }
            for vec in &ker {
                let mut e = SmashElement::zero();
                for (idx, c) in vec {
                    e.add_term(SmashMonomial::new(index_word(*idx, v.len(), 2), v.identity().clone()), c.clone());
                }
                assert!(ideal_member(&e, &p, 2).unwrap().decision, "kernel vector outside the span");
            }
        }
    }
}

fn c11_hilbert() {
    for kind in [TranspositionCocycle::MinusOne, TranspositionCocycle::Chi] {
        let h = nichols_hilbert(3, kind, 4).unwrap();
        assert_eq!(h, vec![1, 3, 4, 3, 1]);
        assert_eq!(h.iter().sum::<usize>(), 12);
        let p = fk_relations(3, kind).unwrap();
        let g: Vec<usize> = (0..=4).map(|d| graded_dimension(&p, d).unwrap()).collect();
        assert_eq!(g, h);
    }
}

fn c12_exp_deformation() {
    for (lam, t) in [("1", ("2", "3")), ("5/3", ("10/3", "5"))] {
        let rep = verify_exp_deformation(4, &r(lam)).unwrap();
        assert!(rep.pass, "lambda = {lam}");
        assert_eq!(rep.target_t, (r(t.0), r(t.1)));
        assert!(rep.target_checks.iter().all(|c| c.member));
        for family in ["square", "disjoint", "cyclic"] {
            assert!(rep.target_checks.iter().any(|c| c.relation.starts_with(family)));
        }
    }
    let rep = verify_exp_deformation(4, &r("0")).unwrap();
    assert!(rep.pass && rep.undeformed);
}

fn c13_compose() {
    let phi = phi_table("phi_s4.json");
    phi.validate(&symmetric_group(4)).unwrap();
    let rep = compose_with_group_twist(4, &phi, &r("1")).unwrap();
    assert!(rep.pass);
    assert!(rep.deformation.target_checks.iter().all(|c| c.member));
    let bad = phi_table("phi_bad.json");
    match compose_with_group_twist(4, &bad, &r("1")) {
        Err(Error::BadTwistTable { x, y }) => assert!(!x.is_empty() && !y.is_empty()),
        other => panic!("expected BadTwistTable, got {other:?}"),
    }
}

fn c14_halfroot() {
    let s = sl2();
    let radicals = RadicalTable::new([(r("4"), r("2"))]).unwrap();
    let rep = verify_halfroot(&s, &s, &radicals, 3).unwrap();
    assert!(rep.group_values && rep.vanishing);
    assert!(rep.products.iter().all(|c| c.pass));
    assert!(rep.pass);
    let w = s.module();
    let sigma = hpr_halfroot_cocycle(&s, &radicals).unwrap();
    assert_eq!(sigma.eval_monomials(&w, &gl(s.k(0)), &gl(s.k(0))), r("2"));
    assert_eq!(sigma.eval_monomials(&w, &gl(s.l(0).inverse()), &gl(s.k(0))), r("2"));
}

fn main() {
    let criteria: [(&str, fn(), Duration); 14] = [
        ("q-Pascal identities", c1_q_pascal, Duration::from_secs(1)),
        ("Serre closed form equals iterated braided adjoint", c2_serre_closed_form, Duration::from_secs(5)),
        ("Serre elements are skew-primitive", c3_skew_primitive, Duration::from_secs(5)),
        ("U_q(g_A) isomorphic to U~(D_q, l) at D = 4", c4_isomorphism, Duration::from_secs(60)),
        ("DJ-twist deformation of U~(D_red, l)", c5_twist_to_dj, Duration::from_secs(30)),
        ("cocycle identity, normalization and associativity", c6_cocycle_suite, Duration::from_secs(120)),
        ("groupoid law for convolution", c7_groupoid, Duration::from_secs(10)),
        ("star product equals the lifted cocycle product", c8_star_product, Duration::from_secs(10)),
        ("racks, rack cocycles and the twist condition", c9_racks, Duration::from_secs(30)),
        ("FK relations span ker Q_2", c10_fk_kernels, Duration::from_secs(60)),
        ("Hilbert series of B(O_2^3, q)", c11_hilbert, Duration::from_secs(60)),
        ("exp deformation gives H(Q_4^-1[(2l, 3l)])", c12_exp_deformation, Duration::from_secs(120)),
        ("composite deformation of B(O_2^4, chi) # kS_4", c13_compose, Duration::from_secs(120)),
        ("half-root cocycle on sl2", c14_halfroot, Duration::from_secs(30)),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        let took = start.elapsed();
        let status = if ok { "PASS" } else { "FAIL" };
        let note = if took > *budget { " (over time budget)" } else { "" };
        println!("criterion {:>2} {status}  {name}  [{:.2}s / {}s]{note}", k + 1, took.as_secs_f64(), budget.as_secs());
        failed += usize::from(!ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
