use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::dvr::tests::{f21, f22, f31, Fixture};
use crate::isogeny::nbar_by_division;

fn nbar<const P: u32>(fx: &Fixture<P>) -> DvrElement<P> {
    nbar_by_division(&fx.ring, &fx.psi.psi, fx.config.n).unwrap()
}

fn z<const P: u32>(coeffs: &[u32]) -> USeries<P> {
    USeries::from_coeffs(coeffs.iter().map(|&c| Fp::new(c)).collect(), 32)
}

#[test]
fn u_descends_in_one_step() {
    let fx = f21();
    let nb = nbar(fx);
    let trace = descent_run(&fx.ring, &nb, &z::<2>(&[0, 1])).unwrap();
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].chosen_index, 1);
    assert_eq!(trace.steps[0].image_weight, "1/2");
    assert_eq!(trace.terminal_weight, "0");
    assert!(trace.invariants_hold());
}

#[test]
fn u_squared_picks_index_zero() {
    let fx = f21();
    let nb = nbar(fx);
    let (next, i) = descent_step(&fx.ring, &nb, &z::<2>(&[0, 0, 1])).unwrap();
    assert_eq!(i, 0);
    assert_eq!(weight_of(&next), WeightValue::finite(1, 1));
}

#[test]
fn units_and_zero_are_rejected() {
    let fx = f21();
    let nb = nbar(fx);
    let unit = z::<2>(&[1, 1]);
    assert!(matches!(descent_step(&fx.ring, &nb, &unit), Err(Error::Precondition(_))));
    let trace = descent_run(&fx.ring, &nb, &unit).unwrap();
    assert!(trace.steps.is_empty());
    assert!(trace.invariants_hold());
    assert!(matches!(descent_run(&fx.ring, &nb, &z::<2>(&[])), Err(Error::Precondition(_))));
}

#[test]
fn phi_extract_bounds() {
    let fx = f21();
    let r = &fx.ring;
    assert!(matches!(phi_extract(r, &r.u(), 2), Err(Error::IndexOutOfRange(..))));
    let c = phi_extract(r, &r.u(), 0).unwrap();
    assert_eq!(c.valuation(), Some(1));
}

#[test]
fn random_traces_all_configs() {
    fn check<const P: u32>(fx: &Fixture<P>, seed: u64) {
        let nb = nbar(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let z = random_z::<P>(&mut rng, 20, 32);
            let w = z.valuation().unwrap();
            assert!((1..=20).contains(&w));
            let trace = descent_run(&fx.ring, &nb, &z).unwrap();
            assert!(trace.invariants_hold(), "{trace:?}");
            assert!(trace.steps.len() as u64 <= w as u64 * fx.ring.d() as u64);
        }
    }
    check(f21(), 7);
    check(f31(), 11);
    check(f22(), 13);
}

#[test]
fn weight_of_sum_follows_min_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs: Vec<_> = (0..200).map(|_| (random_z::<3>(&mut rng, 20, 32), random_z::<3>(&mut rng, 20, 32))).collect();
    let check = weight_sum_rules(&pairs);
    assert!(check.samples > 100);
    assert_eq!(check.min_rule_holds, check.samples);
    assert!(check.additive_rule_holds < check.samples);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_is_a_ring_map(x in proptest::collection::vec(0u32..2, 32), y in proptest::collection::vec(0u32..2, 32)) {
        let fx = f21();
        let r = &fx.ring;
        let nb = nbar(fx);
        let (x, y) = (z::<2>(&x), z::<2>(&y));
        let sum = apply_nbar(r, &x.add_trunc(&y), &nb);
        prop_assert!(r.equal(&sum, &r.add(&apply_nbar(r, &x, &nb), &apply_nbar(r, &y, &nb))));
        let prod = apply_nbar(r, &x.mul_trunc(&y), &nb);
        prop_assert!(r.equal(&prod, &r.mul(&apply_nbar(r, &x, &nb), &apply_nbar(r, &y, &nb))));
    }
}

#[test]
fn weight_of_examples() {
    assert_eq!(weight_of(&z::<2>(&[0, 1])), WeightValue::finite(1, 1));
    assert_eq!(weight_of(&z::<2>(&[1, 1])), WeightValue::finite(0, 1));
    assert_eq!(weight_of(&z::<2>(&[0, 0, 0, 0, 0, 1, 0, 1])), WeightValue::finite(5, 1));
    assert_eq!(weight_of(&z::<2>(&[])), WeightValue::Infinite);
}

#[test]
fn phi_is_the_dual_basis() {
    fn check<const P: u32>(fx: &Fixture<P>) {
        let r = &fx.ring;
        let d = r.d();
        for i in 0..d {
            for j in 0..d {
                let c = phi_extract(r, &r.monomial(0, j), i).unwrap();
                let want = if i == j { 1 } else { 0 };
                assert_eq!(c.coeff(0), Fp::new(want));
                assert!(c.truncated(c.precision()).coeffs().iter().skip(1).all(|x| x.residue() == 0));
            }
            let c = phi_extract(r, &r.monomial(1, i), i).unwrap();
            assert_eq!(c.valuation(), Some(1));
            assert_eq!(c.coeff(1), Fp::new(1));
        }
    }
    check(f21());
    check(f31());
    check(f22());
}

#[test]
fn image_weight_of_monomials() {
    fn check<const P: u32>(fx: &Fixture<P>) {
        let nb = nbar(fx);
        let d = fx.ring.d() as u64;
        for t in 1..12 {
            let mut coeffs = vec![0; t + 1];
            coeffs[t] = 1;
            let image = apply_nbar(&fx.ring, &z::<P>(&coeffs), &nb);
            assert_eq!(image.weight(), WeightValue::finite(t as u64 * (P as u64 - 1), d));
        }
        assert!(fx.ring.equal(&apply_nbar(&fx.ring, &z::<P>(&[1]), &nb), &fx.ring.one()));
        assert!(fx.ring.equal(&apply_nbar(&fx.ring, &z::<P>(&[0, 1]), &nb), &nb));
    }
    check(f21());
    check(f31());
    check(f22());
}
