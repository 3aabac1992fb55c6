use std::f64::consts::PI;
use std::sync::Arc;

use proptest::prelude::*;
use sra_trace::exactnum::rational::{parse_rational, rat, Rational};
use sra_trace::exactnum::{CycloField, CycloNumber, Poly};

fn field(n: u32) -> Arc<CycloField> {
    CycloField::for_dihedral(n).unwrap()
}

/// Numeric value of Σ r_k ζ^k with ζ = exp(2πi/order), straight from the
/// unreduced coefficient list.
fn float_eval(order: u32, raw: &[(i64, i64)]) -> (f64, f64) {
    raw.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &(p, q))| {
        let t = 2.0 * PI * k as f64 / order as f64;
        let c = p as f64 / q as f64;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs());
    (a.0 - b.0).abs() < 1e-9 * scale && (a.1 - b.1).abs() < 1e-9 * scale
}

fn raw_coeffs(len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=6), 0..=len)
}

fn number(f: &Arc<CycloField>, raw: &[(i64, i64)]) -> CycloNumber {
    CycloNumber::from_coeffs(f, raw.iter().map(|&(p, q)| rat(p, q)).collect())
}

fn n_strategy() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reduction_preserves_value(n in n_strategy(), raw in raw_coeffs(40)) {
        let f = field(n);
        let x = number(&f, &raw);
        prop_assert!(x.coeffs().len() <= f.degree());
        prop_assert!(close(x.approx(), float_eval(f.order(), &raw)));
    }

    #[test]
    fn ring_axioms(n in n_strategy(), a in raw_coeffs(24), b in raw_coeffs(24), c in raw_coeffs(24)) {
        let f = field(n);
        let (x, y, z) = (number(&f, &a), number(&f, &b), number(&f, &c));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x + &(-&x), CycloNumber::zero(&f));
        prop_assert_eq!(&x * &CycloNumber::one(&f), x.clone());
        // products agree with complex multiplication
        let (p, q) = (x.approx(), y.approx());
        prop_assert!(close((&x * &y).approx(), (p.0 * q.0 - p.1 * q.1, p.0 * q.1 + p.1 * q.0)));
    }

    #[test]
    fn inverses(n in n_strategy(), a in raw_coeffs(24)) {
        let f = field(n);
        let x = number(&f, &a);
        if x.is_zero() {
            prop_assert!(x.inv().is_err());
        } else {
            let xi = x.inv().unwrap();
            prop_assert!((&x * &xi).is_one());
            prop_assert_eq!(x.checked_div(&x).unwrap(), CycloNumber::one(&f));
        }
    }

    #[test]
    fn conjugation_is_an_automorphism(n in n_strategy(), a in raw_coeffs(24), b in raw_coeffs(24)) {
        let f = field(n);
        let (x, y) = (number(&f, &a), number(&f, &b));
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        let (re, im) = x.approx();
        prop_assert!(close(x.conj().approx(), (re, -im)));
        // x·x̄ is real and non-negative
        let nx = &x * &x.conj();
        prop_assert_eq!(nx.conj(), nx.clone());
        prop_assert!(nx.approx().0 >= -1e-9);
    }

    #[test]
    fn powers_of_zeta(n in n_strategy(), e in -200i64..200, k in 0u32..9) {
        let f = field(n);
        let z = CycloNumber::zeta_pow(&f, e);
        prop_assert_eq!(z.pow(k), CycloNumber::zeta_pow(&f, e * k as i64));
        prop_assert!(CycloNumber::zeta_pow(&f, f.order() as i64 * e).is_one());
        let t = 2.0 * PI * e as f64 / f.order() as f64;
        prop_assert!(close(z.approx(), (t.cos(), t.sin())));
    }

    #[test]
    fn json_round_trip(n in n_strategy(), a in raw_coeffs(24)) {
        let x = number(&field(n), &a);
        let s = serde_json::to_string(&x).unwrap();
        let back: CycloNumber = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rational_text_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
        let r = rat(p, q);
        let s = sra_trace::exactnum::rational::format_rational(&r);
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }

    #[test]
    fn polynomial_division(n in n_strategy(), a in raw_coeffs(6), roots in prop::collection::vec(-4i64..=4, 1..4)) {
        let f = field(n);
        let i = CycloNumber::i(&f);
        let rs: Vec<CycloNumber> = roots.iter().map(|&l| i.scale(&Rational::from_integer(l.into()))).collect();
        let d = Poly::from_roots(&f, &rs);
        prop_assert!(d.is_monic());
        for r in &rs {
            prop_assert!(d.eval(r).is_zero());
        }
        let c = number(&f, &a);
        let p = &(&d * &Poly::new(&f, vec![c.clone(), CycloNumber::one(&f)])) + &Poly::constant(c.clone());
        let (quo, rem) = p.div_rem(&d).unwrap();
        prop_assert_eq!(&(&quo * &d) + &rem, p);
        prop_assert!(rem.degree().is_none_or(|k| k < d.degree().unwrap()));
    }
}

#[test]
fn fields_of_equal_order_interoperate() {
    let (f, g) = (field(5), CycloField::new(20).unwrap());
    assert!(!Arc::ptr_eq(&f, &g));
    let x = &CycloNumber::zeta_pow(&f, 3) * &CycloNumber::zeta_pow(&g, 17);
    assert!(x.is_one());
}
