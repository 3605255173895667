use std::sync::OnceLock;

use proptest::prelude::*;

use super::*;
use crate::fgl::{build_fgl, ChromaticConfig};
use crate::{Fp, USeries, WeightValue};

pub(crate) type Fixture<const P: u32> = DvrSetup<P>;

pub(crate) fn f21() -> &'static Fixture<2> {
    static F: OnceLock<Fixture<2>> = OnceLock::new();
    F.get_or_init(|| DvrSetup::for_config(&ChromaticConfig::new(2, 1).unwrap()).unwrap())
}

pub(crate) fn f31() -> &'static Fixture<3> {
    static F: OnceLock<Fixture<3>> = OnceLock::new();
    F.get_or_init(|| DvrSetup::for_config(&ChromaticConfig::new(3, 1).unwrap()).unwrap())
}

pub(crate) fn f22() -> &'static Fixture<2> {
    static F: OnceLock<Fixture<2>> = OnceLock::new();
    F.get_or_init(|| DvrSetup::for_config(&ChromaticConfig::new(2, 2).unwrap()).unwrap())
}

fn useries<const P: u32>(coeffs: &[u32], m: usize) -> USeries<P> {
    USeries::from_coeffs(coeffs.iter().map(|&c| Fp::new(c)).collect(), m)
}

#[test]
fn reduce_to_un_examples() {
    fn check<const P: u32>(n: u32) {
        let f = build_fgl::<P>(&ChromaticConfig::new(P, n).unwrap()).unwrap();
        let red = reduce_to_un(&f).unwrap();
        let pn = P.pow(n);
        let low = red.p_series.truncate(&red.p_series.layout().with_caps(pn, None)).unwrap();
        assert_eq!(low.render(), format!("u*a^{pn}"));
        let at_zero = red.p_series.substitute_zero("u").unwrap();
        let top = at_zero.truncate(&red.p_series.layout().with_caps(pn * P, None)).unwrap();
        assert_eq!(top.render(), format!("a^{}", pn * P));
    }
    check::<2>(1);
    check::<3>(1);
    check::<2>(2);
    // n = 1 kills no u's: the addition keeps its u-terms.
    let f = build_fgl::<2>(&ChromaticConfig::new(2, 1).unwrap()).unwrap();
    let red = reduce_to_un(&f).unwrap();
    assert_eq!(red.addition.len(), f.reduced_addition.len());
}

#[test]
fn distinguished_factor_at_2_1_matches_oracle() {
    let g = &f21().factorization.distinguished;
    let low: Vec<String> = g.coeffs().iter().map(|c| c.truncated(8).render()).collect();
    // Frozen from the brute-force division oracle in scripts/.
    assert_eq!(low, vec!["u^1 + u^4 + u^7", "0", "1"]);
}

#[test]
fn preparation_invariants() {
    fn check<const P: u32>(fx: &Fixture<P>) {
        let g = &fx.factorization.distinguished;
        assert_eq!(g.degree() as u32, fx.law.params.d());
        assert!(g.reduces_to_monomial());
        assert_eq!(g.coeffs()[0].valuation(), Some(1));
        assert!(eisenstein_check(g));
        assert!(fx.factorization.unit_is_unit());
        let rec = fx.factorization.reconstruction(fx.law.p_series()).unwrap();
        assert!(rec.exact, "defect {}", rec.defect);
        assert_eq!(rec.u_precision, 32);
        let again = weierstrass_prepare(fx.law.p_series(), fx.factorization.pole_order, g.degree(), 32).unwrap();
        assert_eq!(&again.distinguished, g);
        assert_eq!(again.unit_coeffs(), fx.factorization.unit_coeffs());
    }
    check(f21());
    check(f31());
    check(f22());
}

#[test]
fn eisenstein_examples() {
    let m = 4;
    let monomial = DistinguishedPoly::<2>::from_coeffs(vec![USeries::zero(m), USeries::zero(m), USeries::one(m)]).unwrap();
    assert!(!eisenstein_check(&monomial));
    let square = DistinguishedPoly::<2>::from_coeffs(vec![useries(&[0, 0, 1], m), USeries::zero(m), USeries::one(m)]).unwrap();
    assert!(!eisenstein_check(&square));
    let good = DistinguishedPoly::<2>::from_coeffs(vec![useries(&[0, 1], m), USeries::zero(m), USeries::one(m)]).unwrap();
    assert!(eisenstein_check(&good));
    assert!(DistinguishedPoly::<2>::from_coeffs(vec![USeries::zero(m), useries(&[0, 1], m)]).is_err());
}

#[test]
fn not_preparable_inputs() {
    let fx = f21();
    let s = fx.law.p_series();
    assert!(matches!(weierstrass_prepare(s, 1, 2, 8), Err(crate::Error::NotPreparable(_))));
    assert!(matches!(weierstrass_prepare(s, 2, 3, 8), Err(crate::Error::NotPreparable(_))));
}

#[test]
fn ring_basics() {
    fn check<const P: u32>(fx: &Fixture<P>) {
        let r = &fx.ring;
        let d = r.d();
        let a = r.a();
        assert_eq!(r.valuation_of(&a), 1);
        assert_eq!(a.weight(), WeightValue::finite(1, d as u64));
        assert_eq!(r.valuation_of(&r.u()), d);
        assert_eq!(r.u().weight(), WeightValue::finite(1, 1));
        assert_eq!(r.mul(&a, &r.one()), a);
        // a^{d−1}·a = a^d = −(g_0 + … + g_{d−1} a^{d−1}), by monic division.
        let top = r.mul(&r.monomial(0, d - 1), &a);
        let expected = r
            .from_coeffs(fx.factorization.distinguished.coeffs()[..d].iter().map(USeries::neg).collect())
            .unwrap();
        assert_eq!(top, expected);
        assert_eq!(r.valuation_of(&top), d);
    }
    check(f21());
    check(f31());
    check(f22());
}

#[test]
fn valuation_of_u_a_cubed_at_2_1() {
    let r = &f21().ring;
    let a = r.a();
    let x = r.mul(&r.mul(&r.mul(&r.u(), &a), &a), &a);
    assert_eq!(r.valuation_of(&x), 5);
}

#[test]
fn psi_examples() {
    let fx = f21();
    let psi = compute_psi(&fx.law, &fx.ring).unwrap();
    assert_eq!(psi.psi, fx.ring.a());
    fn check<const P: u32>(fx: &Fixture<P>) {
        let psi = compute_psi(&fx.law, &fx.ring).unwrap();
        assert!(!psi.psi.is_zero());
        assert_eq!(psi.psi.weight(), WeightValue::finite(P as u64 - 1, fx.ring.d() as u64));
        assert!(psi.products_agree(&fx.ring));
    }
    check(f21());
    check(f31());
    check(f22());
}

#[test]
fn division_and_inverse() {
    let fx = f31();
    let r = &fx.ring;
    let psi = compute_psi(&fx.law, r).unwrap().psi;
    let q = r.exact_div(&r.u(), &psi).unwrap();
    assert!(r.equal(&r.mul(&q, &psi), &r.u()));
    assert_eq!(r.valuation_of(&q), r.d() - 2);
    assert!(r.exact_div(&psi, &r.u()).is_err());
    let unit = r.add(&r.one(), &r.a());
    let inv = r.unit_inverse(&unit).unwrap();
    assert!(r.equal(&r.mul(&unit, &inv), &r.one()));
    assert!(r.div_by_a(&r.one()).is_err());
    assert_eq!(r.div_by_a(&r.u()).unwrap().weight(), WeightValue::finite(5, 6));
}

fn arb_element(d: usize, m: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(proptest::collection::vec(0u32..3, m), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn valuation_is_additive(x in arb_element(6, 6), y in arb_element(6, 6), sx in 0usize..3, sy in 0usize..3) {
        let r = &f31().ring;
        let m = r.precision();
        let build = |c: &Vec<Vec<u32>>, s: usize| {
            let coeffs = c.iter().map(|v| useries::<3>(v, m).shift_up(s)).collect();
            r.from_coeffs(coeffs).unwrap()
        };
        let (x, y) = (build(&x, sx), build(&y, sy));
        let prod = r.mul(&x, &y);
        if let (Some(vx), Some(vy)) = (x.valuation(), y.valuation()) {
            if vx + vy < prod.horizon() {
                prop_assert_eq!(prod.valuation(), Some(vx + vy));
            }
        }
        // R/(a, u) = 𝔽_p and reduction is multiplicative.
        prop_assert_eq!(r.residue(&prod), r.residue(&x) * r.residue(&y));
    }
}
