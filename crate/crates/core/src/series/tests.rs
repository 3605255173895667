use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::scalar::Fp;

type Q = BigRational;

fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

fn xy(cap: u32) -> Arc<Layout> {
    Layout::new(&["x", "y"], &[], cap, None).unwrap()
}

fn xonly(cap: u32) -> Arc<Layout> {
    Layout::new(&["x"], &[], cap, None).unwrap()
}

fn parse(l: &Arc<Layout>, s: &str) -> MultiSeries<Q> {
    MultiSeries::parse(l, s).unwrap()
}

#[test]
fn mul_examples() {
    let l = xy(6);
    let x = MultiSeries::<Q>::var(&l, "x").unwrap();
    let y = MultiSeries::<Q>::var(&l, "y").unwrap();
    let prod = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
    assert_eq!(prod.render(), "x^2 - y^2");
    assert_eq!(prod.mul(&MultiSeries::one(&l)).unwrap(), prod);
    let top = x.pow(6).unwrap();
    assert!(!top.is_zero());
    assert!(top.mul(&x).unwrap().is_zero());
}

#[test]
fn layout_mismatch_is_error() {
    let a = MultiSeries::<Q>::var(&xy(4), "x").unwrap();
    let b = MultiSeries::<Q>::var(&xy(5), "x").unwrap();
    assert_eq!(a.mul(&b), Err(Error::VariableMismatch));
}

#[test]
fn compose_examples() {
    let l = xy(6);
    let outer = parse(&l, "x^2");
    let sum = parse(&l, "x + y");
    assert_eq!(outer.compose(&[("x", &sum)]).unwrap().render(), "x^2 + 2*x*y + y^2");

    let outer = parse(&l, "3 + x + x^2*y");
    let zero = MultiSeries::zero(&l);
    assert_eq!(outer.compose(&[("x", &zero)]).unwrap().render(), "3");

    let bad = parse(&l, "1 + y");
    assert!(matches!(
        outer.compose(&[("x", &bad)]),
        Err(Error::NonzeroConstantTerm(_))
    ));
}

#[test]
fn invert_examples() {
    let l = xonly(7);
    let s = parse(&l, "1 - x");
    let inv = s.invert_unit().unwrap();
    assert_eq!(inv.render(), "1 + x + x^2 + x^3 + x^4 + x^5 + x^6 + x^7");
    assert_eq!(inv.invert_unit().unwrap(), s);
    assert_eq!(parse(&l, "x + x^2").invert_unit(), Err(Error::NonUnitConstantTerm));
}

#[test]
fn invert_in_char_two_with_u() {
    let l = Layout::new(&["a"], &["u"], 5, Some(4)).unwrap();
    let s = MultiSeries::<Fp<2>>::parse(&l, "1 + u*a").unwrap();
    let inv = s.invert_unit().unwrap();
    assert_eq!(inv.render(), "1 + u*a + u^2*a^2 + u^3*a^3");
}

/// Fixed-point oracle for the reversion: iterate `r ↦ x − (s∘r − x)`, which
/// converges for `s = x + (higher)` one degree per round.
fn reversion_oracle(s: &MultiSeries<Q>) -> MultiSeries<Q> {
    let l = s.layout().clone();
    let x = MultiSeries::var(&l, "x").unwrap();
    let mut r = x.clone();
    for _ in 0..=l.formal_cap() {
        let sr = s.compose(&[("x", &r)]).unwrap();
        r = r.sub(&sr.sub(&x).unwrap()).unwrap();
    }
    r
}

#[test]
fn reversion_catalan() {
    let l = xonly(6);
    let s = parse(&l, "x + x^2");
    let r = s.reversion("x").unwrap();
    assert_eq!(r, reversion_oracle(&s));
    // Frozen from the oracle: signed Catalan numbers.
    assert_eq!(r.render(), "x - x^2 + 2*x^3 - 5*x^4 + 14*x^5 - 42*x^6");
    assert_eq!(parse(&l, "x").reversion("x").unwrap(), parse(&l, "x"));
}

#[test]
fn reversion_requires_unit_linear_term() {
    let l = xonly(4);
    assert_eq!(parse(&l, "x^2").reversion("x"), Err(Error::NonUnitLinearCoefficient));
    let lp = Layout::new(&["x"], &[], 4, None).unwrap();
    let s = MultiSeries::<Fp<3>>::parse(&lp, "3*x + x^2").unwrap();
    assert_eq!(s.reversion("x"), Err(Error::NonUnitLinearCoefficient));
}

#[test]
fn render_parse_round_trip_with_coefficients() {
    let l = Layout::new(&["x", "y"], &["u1", "u2"], 8, None).unwrap();
    let text = "x + y - 1/2*u1*x*y + 3*u2^2*x^3*y";
    let s = parse(&l, text);
    assert_eq!(s.render(), text);
}

fn arb_uni(cap: u32) -> impl Strategy<Value = MultiSeries<Q>> {
    proptest::collection::vec(-4i64..5, (cap as usize) + 1).prop_map(move |cs| {
        let l = xonly(cap);
        let mut s = MultiSeries::zero(&l);
        for (e, c) in cs.into_iter().enumerate() {
            s.add_term(Monomial::var(0, e as u16), q(c));
        }
        s
    })
}

fn arb_unit_linear(cap: u32) -> impl Strategy<Value = MultiSeries<Q>> {
    (proptest::collection::vec(-3i64..4, cap as usize - 1), prop_oneof![Just(1i64), Just(-1), Just(2)])
        .prop_map(move |(cs, lin)| {
            let l = xonly(cap);
            let mut s = MultiSeries::zero(&l);
            s.add_term(Monomial::var(0, 1), q(lin));
            for (k, c) in cs.into_iter().enumerate() {
                s.add_term(Monomial::var(0, k as u16 + 2), q(c));
            }
            s
        })
}

fn arb_biv(cap: u32) -> impl Strategy<Value = MultiSeries<Fp<5>>> {
    proptest::collection::vec((0u16..4, 0u16..4, 0u32..5), 0..8).prop_map(move |ts| {
        let l = Layout::new(&["x", "y"], &[], cap, None).unwrap();
        let mut s = MultiSeries::zero(&l);
        for (a, b, c) in ts {
            s.add_term(Monomial::var(0, a).with_exp(1, b), Fp::new(c));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn mul_assoc_comm(a in arb_biv(6), b in arb_biv(6), c in arb_biv(6)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn compose_assoc(f in arb_unit_linear(5), g in arb_unit_linear(5), h in arb_unit_linear(5)) {
        let fg = f.compose(&[("x", &g)]).unwrap();
        let gh = g.compose(&[("x", &h)]).unwrap();
        prop_assert_eq!(fg.compose(&[("x", &h)]).unwrap(), f.compose(&[("x", &gh)]).unwrap());
    }

    #[test]
    fn reversion_is_two_sided_inverse(s in arb_unit_linear(7)) {
        let r = s.reversion("x").unwrap();
        let x = MultiSeries::var(s.layout(), "x").unwrap();
        prop_assert_eq!(s.compose(&[("x", &r)]).unwrap(), x.clone());
        prop_assert_eq!(r.compose(&[("x", &s)]).unwrap(), x);
    }

    #[test]
    fn render_round_trip(s in arb_uni(6)) {
        prop_assert_eq!(MultiSeries::parse(s.layout(), &s.render()).unwrap(), s);
    }
}
