use super::*;
use crate::dvr::tests::{f21, f22, f31, Fixture};
use crate::{Fp, USeries, WeightValue};

fn outcome<const P: u32>(fx: &Fixture<P>) -> IsogenyOutcome<P> {
    run_isogeny(&fx.law, &fx.ring, &fx.psi).unwrap()
}

#[test]
fn norm_coordinate_at_p_2() {
    let fx = f21();
    let r = &fx.ring;
    let norm = norm_coordinate(&fx.law, r).unwrap();
    assert!(norm.f[0].is_zero());
    // f(x) = x·F(x, [−1](a)), so f_1 = [−1](a) and f_2 = F_1([−1](a)).
    let minus_a = r.from_series(fx.law.i_series(-1).unwrap()).unwrap();
    assert_eq!(norm.f[1], minus_a);
    let f1_at = evaluate_at(r, &fx.law.rows[1], &minus_a).unwrap();
    assert!(r.equal(&norm.f[2], &f1_at));
}

#[test]
fn linear_coefficient_valuation() {
    fn check<const P: u32>(fx: &Fixture<P>) {
        let norm = norm_coordinate(&fx.law, &fx.ring).unwrap();
        assert_eq!(norm.linear_coefficient().valuation(), Some(P as usize - 1));
        assert!(fx.ring.equal(norm.linear_coefficient(), &fx.psi.negative_product));
    }
    check(f21());
    check(f31());
    check(f22());
}

#[test]
fn isogeny_identity_and_nbar() {
    fn check<const P: u32>(fx: &Fixture<P>) -> i8 {
        let r = &fx.ring;
        let n = fx.config.n;
        let out = outcome(fx);
        assert!(out.defect_is_zero());
        assert!(out.quotient.integral().iter().all(|&b| b));
        assert!(out.quotient.coefficient(0).unwrap().is_zero());
        assert!(out.quotient.coefficient(1).unwrap().is_zero());
        for j in 1..P.pow(n) as usize {
            assert!(out.quotient.coefficient(j).unwrap().is_zero(), "y^{j} at ({P},{n})");
        }
        let d = r.d() as u64;
        assert_eq!(out.nbar_extracted.weight(), WeightValue::finite(P as u64 - 1, d));
        assert_eq!(out.nbar_divided.weight(), WeightValue::finite(P as u64 - 1, d));
        assert!(out.routes_agree(r));
        let prod = r.mul(&out.nbar_divided, &r.pow(&fx.psi.psi, P.pow(n) as u64 - 1));
        assert!(r.equal(&prod, &r.u()));
        let s1 = norm_sign_check(r, &out.nbar_extracted, &fx.psi.psi, n).unwrap();
        let s2 = norm_sign_check(r, &out.nbar_divided, &fx.psi.psi, n).unwrap();
        assert_eq!(s1.epsilon, s2.epsilon);
        s1.epsilon
    }
    assert_eq!(check(f21()), 1);
    assert_eq!(check(f22()), 1);
    assert_eq!(check(f31()), 1);
}

#[test]
fn sign_at_p_2_is_trivial() {
    let fx = f21();
    let out = outcome(fx);
    let s = norm_sign_check(&fx.ring, &out.nbar_divided, &fx.psi.psi, 1).unwrap();
    assert!(s.plus_holds && s.minus_holds);
    assert_eq!(s.epsilon, 1);
}

/// Oracle at (2,1): `r = r_0 + r_1 a` with `r·a = u`. Using
/// `a² = −g_0 − g_1 a`: `r_1 = −u/g_0` and `r_0 = r_1 g_1`.
#[test]
fn nbar_at_2_1_by_linear_solve() {
    let fx = f21();
    let r = &fx.ring;
    let m = r.precision();
    let g = fx.factorization.distinguished.coeffs();
    let u = USeries::<2>::monomial(Fp::new(1), 1, m + 1);
    let g0_over_u = g[0].truncated(m + 1).shift_down(1).truncated(m);
    let r1 = u.shift_down(1).truncated(m).mul_trunc(&g0_over_u.inverse().unwrap()).neg();
    let r0 = r1.mul_trunc(&g[1].truncated(m));
    let oracle = r.from_coeffs(vec![r0, r1]).unwrap();
    let divided = nbar_by_division(r, &fx.psi.psi, 1).unwrap();
    assert!(r.equal(&oracle, &divided));
    assert_eq!(divided.valuation(), Some(1));
}

#[test]
fn extract_requires_vanishing() {
    let fx = f21();
    let mut q = outcome(fx).quotient;
    q.coefficients[1] = FracElement::integral(fx.ring.one());
    assert_eq!(extract_nbar_un(&q, 1), Err(Error::PrerequisiteVanishingFailed(1)));
}

#[test]
fn frac_normalization() {
    let r = &f31().ring;
    let a = r.a();
    let x = FracElement { numerator: r.mul(&a, &a), shift: 3 }.normalize(r).unwrap();
    assert_eq!((x.shift, x.valuation()), (1, Some(-1)));
    assert!(!x.is_integral());
    let y = FracElement { numerator: r.u(), shift: 2 }.normalize(r).unwrap();
    assert!(y.is_integral());
    assert_eq!(y.valuation(), Some(r.d() as i64 - 2));
    let back = y.div_a_pow(0, r).unwrap().mul_integral(&r.mul(&a, &a), r).unwrap();
    assert!(back.equals(&FracElement::integral(r.u()), r).unwrap());
}

