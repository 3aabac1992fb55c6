use proptest::prelude::*;

use sra_trace::algebra::{h0_basis, singlet, AlgebraElement, Sra};
use sra_trace::dihedral::GroupBasis;
use sra_trace::exactnum::rational::{int, rat, Rational};
use sra_trace::exactnum::{CycloNumber, Poly};
use sra_trace::genfun::solve_gk;
use sra_trace::ideal::*;
use sra_trace::trace::{
    degenerate_values, trace_space, DegenerateFamily, FamilyKind, Kappa, KappaTrace, DEFAULT_SLACK,
};

fn family(n: u32, kind: FamilyKind, z: i64) -> KappaTrace {
    degenerate_values(n, &DegenerateFamily::new(kind, z, int(1))).unwrap()
}

fn label(generator: Generator, p: u32, power: u32) -> BasisLabel {
    BasisLabel {
        generator,
        p,
        power,
    }
}

#[test]
fn provenance_flags() {
    let sp = family(3, FamilyKind::TraceZ, 1);
    let full = build_moment_table(&sp, 6, 12).unwrap();
    assert!(full
        .m
        .iter()
        .flatten()
        .all(|e| e.provenance == Provenance::BothAgree));
    let capped = build_moment_table(&sp, 6, 4).unwrap();
    for row in &capped.m {
        for (s, e) in row.iter().enumerate() {
            let want = if s <= 2 {
                Provenance::BothAgree
            } else {
                Provenance::ClosedForm
            };
            assert_eq!(e.provenance, want);
        }
    }
    assert_eq!(
        capped.provenance_summary(),
        ProvenanceSummary {
            brute_force: 0,
            closed_form: 12,
            both_agree: 9
        }
    );
    let generic = KappaTrace::from_rationals(3, rat(1, 4), Kappa::Plus, &[int(1)]).unwrap();
    let only = build_moment_table(&generic, 2, 4).unwrap();
    assert!(only
        .m
        .iter()
        .flatten()
        .all(|e| e.provenance == Provenance::BruteForce));
    assert!(build_moment_table(&generic, 4, 4).is_err());
}

#[test]
fn zeroth_moment_is_fourier_of_rotations() {
    for sp in [
        family(3, FamilyKind::TraceZ, 2),
        family(5, FamilyKind::SuperTraceZ, 3),
        KappaTrace::from_rationals(5, rat(1, 7), Kappa::Minus, &[int(1), rat(1, 2), int(-2)])
            .unwrap(),
    ] {
        let n = sp.n() as i64;
        let mt = build_moment_table(&sp, 0, 2).unwrap();
        let field = sp.field();
        for p in 0..n {
            let mut want = CycloNumber::zero(field);
            for k in 0..n {
                want += &(&CycloNumber::lambda_pow(field, -k * p) * &sp.rotation_value(k));
            }
            assert_eq!(mt.get(p, 0), &want.scale(&rat(1, n)));
        }
    }
}

#[test]
fn n3_z1_moment_rows() {
    let mt = build_moment_table(&family(3, FamilyKind::TraceZ, 1), 6, 12).unwrap();
    for p in 1..3 {
        assert!((0..=6).all(|s| mt.get(p, s).is_zero()));
    }
    assert!(!mt.get(0, 0).is_zero());
}

/// Gram entries against sp(xy) evaluated on the algebra.
#[test]
fn gram_matches_normal_form_products() {
    const J: u32 = 2;
    for sp in [
        family(3, FamilyKind::SuperTraceZ, 2),
        KappaTrace::from_rationals(3, rat(1, 4), Kappa::Plus, &[rat(3, 2)]).unwrap(),
        KappaTrace::from_rationals(3, rat(2, 7), Kappa::Minus, &[int(1), int(-3)]).unwrap(),
    ] {
        let h = Sra::new(3, sp.nu().clone()).unwrap();
        let space = trace_space(&h, sp.kappa(), 4 * J, DEFAULT_SLACK).unwrap();
        let gram = build_gram(&build_moment_table(&sp, 2 * J, 4 * J).unwrap(), J).unwrap();
        let basis = h0_basis(&h, J).unwrap();
        let to_label = |g: GroupBasis, power| match g {
            GroupBasis::Q(p) => label(Generator::Q, p, power),
            GroupBasis::L(p) => label(Generator::L, p, power),
        };
        for x in &basis {
            for y in &basis {
                let want = space
                    .evaluate(&sp, &x.element.mul(&y.element).unwrap())
                    .unwrap();
                let got = gram
                    .get(&to_label(x.group, x.power), &to_label(y.group, y.power))
                    .unwrap();
                assert_eq!(got, &want, "{:?}^{} {:?}^{}", x.group, x.power, y.group, y.power);
            }
        }
        assert!(gram.is_symmetric());
    }
}

#[test]
fn odd_singlet_moments_on_l_vanish() {
    let sp = family(5, FamilyKind::TraceZ, 2);
    let h = Sra::new(5, sp.nu().clone()).unwrap();
    let space = trace_space(&h, Kappa::Plus, 8, DEFAULT_SLACK).unwrap();
    let s = singlet(&h);
    for p in 0..5 {
        let mut x = AlgebraElement::group_basis(&h, GroupBasis::L(p));
        for k in 0..=4 {
            let v = space.evaluate(&sp, &x).unwrap();
            if k == 0 && p == 0 {
                assert_eq!(v, sp.group_value(GroupBasis::L(0)));
            } else {
                assert!(v.is_zero(), "s^{k} L{p}");
            }
            x = s.mul(&x).unwrap();
        }
    }
}

#[test]
fn gram_entry_examples() {
    let n = 5;
    let mt = build_moment_table(&family(n, FamilyKind::TraceZ, 2), 4, 8).unwrap();
    let g = build_gram(&mt, 2).unwrap();
    let e = |a, b| g.get(&a, &b).unwrap().clone();
    assert_eq!(
        e(label(Generator::Q, 1, 1), label(Generator::Q, 1, 1)),
        mt.get(1, 2).clone()
    );
    assert!(e(label(Generator::Q, 1, 1), label(Generator::Q, 2, 1)).is_zero());
    assert_eq!(
        e(label(Generator::L, 1, 1), label(Generator::L, n - 1, 1)),
        -mt.get(n as i64 - 1, 2).clone()
    );
    assert!(build_gram(&mt, 3).is_err());
}

#[test]
fn n3_z1_annihilators() {
    let sp = family(3, FamilyKind::TraceZ, 1);
    let set = solve_gk(&sp).unwrap();
    // α⁰_0 vanishes, so D_0 is d/dt alone
    assert!(set.alpha(0, 0).is_zero());
    let gram = build_gram(&build_moment_table(&sp, 10, 12).unwrap(), 5).unwrap();
    let field = sp.field();
    let x = Poly::x(field);
    let one = Poly::one(field);
    let phis = annihilators(&gram).unwrap();
    assert_eq!(phis[0].q, x);
    assert_eq!(phis[1].q, one);
    assert_eq!(phis[2].q, one);
    for a in &phis {
        assert_eq!(a.q, a.l_minus_p);
        assert_eq!(a.q, predicted_annihilator(&set, a.p));
    }
}

#[test]
fn cosh_support_gives_cubic_annihilator() {
    // μ = 4 > n: α⁰_1 ≠ 0 and the singlet series has a cosh term
    for kind in [FamilyKind::TraceZ, FamilyKind::SuperTraceZ] {
        let sp = family(3, kind, 4);
        let set = solve_gk(&sp).unwrap();
        let field = sp.field();
        let support: Vec<i64> = (0..4).filter(|&l| !set.alpha(0, l).is_zero()).collect();
        assert_eq!(support, vec![1]);
        let gram = build_gram(&build_moment_table(&sp, 10, 12).unwrap(), 5).unwrap();
        let phi = gram.minimal_annihilator(Generator::Q, 0).unwrap();
        let x = Poly::x(field);
        let want = &x * &(&(&x * &x) - &Poly::constant(CycloNumber::from_int(field, 15)));
        assert_eq!(phi, want);
    }
}

/// φ_p⁰(𝔰)Q_p pairs to zero with the H⁰ basis under the brute-force
/// trace, while Q_p itself does not.
#[test]
fn kernel_membership_by_normal_forms() {
    const J: u32 = 3;
    for (kind, z) in [(FamilyKind::TraceZ, 4), (FamilyKind::SuperTraceZ, 2)] {
        let sp = family(3, kind, z);
        let h = Sra::new(3, sp.nu().clone()).unwrap();
        let set = solve_gk(&sp).unwrap();
        let basis = h0_basis(&h, J).unwrap();
        let space = trace_space(&h, sp.kappa(), 12, DEFAULT_SLACK).unwrap();
        let s = singlet(&h);
        for p in 0..3 {
            let phi = predicted_annihilator(&set, p);
            assert!(phi.degree().unwrap() <= 3);
            let q = AlgebraElement::group_basis(&h, GroupBasis::Q(p));
            let mut elem = AlgebraElement::zero(&h);
            let mut pow = q.clone();
            for c in phi.coeffs() {
                elem = elem.add(&pow.scale(c)).unwrap();
                pow = s.mul(&pow).unwrap();
            }
            for f in &basis {
                let v = space.evaluate(&sp, &elem.mul(&f.element).unwrap()).unwrap();
                assert!(v.is_zero(), "z={z} p={p} f={:?}^{}", f.group, f.power);
            }
        }
        let q0 = AlgebraElement::group_basis(&h, GroupBasis::Q(0));
        assert!(basis
            .iter()
            .any(|f| !space.evaluate(&sp, &q0.mul(&f.element).unwrap()).unwrap().is_zero()));
    }
}

#[test]
fn membership_examples() {
    let sp = family(3, FamilyKind::TraceZ, 1);
    let gram = build_gram(&build_moment_table(&sp, 6, 12).unwrap(), 3).unwrap();
    let field = sp.field();
    let one = CycloNumber::one(field);
    assert!(gram.kernel_membership(&[]).unwrap());
    assert!(!gram
        .kernel_membership(&[(label(Generator::Q, 0, 0), one.clone())])
        .unwrap());
    let d0 = gram.poly_vector(&Poly::x(field), Generator::Q, 0);
    assert!(gram.kernel_membership(&d0).unwrap());
    assert!(gram
        .kernel_membership(&[(label(Generator::Q, 0, 4), one)])
        .is_err());
}

#[test]
fn annihilators_stable_in_j() {
    for (n, z) in [(3, 4), (5, 2), (3, 5)] {
        let sp = family(n, FamilyKind::SuperTraceZ, z);
        let phis = |j: u32| {
            let mt = build_moment_table(&sp, 2 * j, 8).unwrap();
            annihilators(&build_gram(&mt, j).unwrap()).unwrap()
        };
        let base = phis(4);
        for j in [5, 7] {
            for (a, b) in base.iter().zip(phis(j)) {
                assert_eq!(a.q, b.q, "n={n} z={z} p={} J={j}", a.p);
                assert_eq!(b.row_rank, b.q.degree().unwrap());
            }
        }
    }
}

#[test]
fn generic_nu_needs_larger_j() {
    let sp = KappaTrace::from_rationals(3, rat(1, 4), Kappa::Plus, &[int(1)]).unwrap();
    let gram = build_gram(&build_moment_table(&sp, 4, 8).unwrap(), 2).unwrap();
    let err = gram.minimal_annihilator(Generator::Q, 1).unwrap_err();
    assert!(err.to_string().contains("increase J"));
    assert_eq!(gram.kernel_dimension().unwrap(), 0);
}

#[test]
fn witnesses_for_n3_z1() {
    for kind in [FamilyKind::TraceZ, FamilyKind::SuperTraceZ] {
        let sp = family(3, kind, 1);
        let gram = build_gram(&build_moment_table(&sp, 10, 12).unwrap(), 5).unwrap();
        let phis = annihilators(&gram).unwrap();
        let w = nonzero_ideal_witness(&gram, &phis).unwrap();
        assert!(w.holds());
        assert_eq!(w.witnesses.len(), 3);
        assert!(w.witnesses.iter().all(|x| x.degree <= 3));
    }
}

#[test]
fn certificate_json_shape() {
    let c = coincide(3, 2, default_j(2), &int(1), 12).unwrap();
    assert_eq!(c.j_max, 7);
    assert!(c.verified());
    let v = serde_json::to_value(&c).unwrap();
    for key in ["n", "z", "J", "per_p", "verdict", "moment_provenance"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["verdict"], "equal");
    assert!(v["per_p"][0].get("phi_plus").is_some());
    assert!(coincide(3, 3, 5, &int(1), 0).is_err());
}

fn z_for(n: u32) -> impl Strategy<Value = i64> {
    let max = if n == 7 { 3 } else { 5 };
    (1..=max as i64)
        .prop_flat_map(|z| prop_oneof![Just(z), Just(-z)])
        .prop_filter("z not divisible by n", move |z| z.rem_euclid(n as i64) != 0)
}

fn case() -> impl Strategy<Value = (u32, i64, Rational)> {
    prop_oneof![Just(3u32), Just(5), Just(7)].prop_flat_map(|n| {
        (
            Just(n),
            z_for(n),
            (1i64..20, 1i64..20, any::<bool>())
                .prop_map(|(a, b, neg)| rat(if neg { -a } else { a }, b)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn coincide_from_closed_forms((n, z, tau) in case()) {
        let c = coincide(n, z, default_j(z), &tau, 0).unwrap();
        prop_assert!(c.verified(), "{}", serde_json::to_string(&c).unwrap());
        // φ_p⁰ does not depend on τ
        let unit = coincide(n, z, default_j(z), &int(1), 0).unwrap();
        for (a, b) in c.per_p.iter().zip(&unit.per_p) {
            prop_assert_eq!(&a.phi_plus, &b.phi_plus);
        }
    }
}

#[test]
fn full_algebra_truncated_kernels_agree() {
    for (n, z, plus) in [(3u32, 1i64, 89usize), (3, 2, 74)] {
        let c = truncated_kernel_comparison(n, z, 2, 4, &int(1)).unwrap();
        assert!(c.equal, "({n},{z})");
        assert_eq!((c.kernel_plus, c.kernel_minus), (plus, plus));
        assert!(c.sectors.iter().all(|s| s.equal && s.kernel_plus == s.kernel_minus));
    }
    assert!(truncated_kernel_comparison(3, 3, 1, 2, &int(1)).is_err());
}

#[test]
fn truncated_kernel_comparison_detects_difference() {
    let str1 = family(3, FamilyKind::SuperTraceZ, 1);
    // a supertrace at the same ν, not proportional to str_1
    let other = KappaTrace::from_rationals(3, rat(1, 3), Kappa::Minus, &[int(1), int(2)]).unwrap();
    let c = compare_truncated_kernels(&str1, &other, 2, 4).unwrap();
    assert!(!c.equal);
    assert!(c.kernel_minus < c.kernel_plus);
    let same = compare_truncated_kernels(&str1, &str1, 2, 4).unwrap();
    assert!(same.equal);
}
