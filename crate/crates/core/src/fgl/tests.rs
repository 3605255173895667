use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::Scalar;

fn rational(n: i64) -> BigRational {
    <BigRational as Scalar>::from_i64(n)
}

fn law<const P: u32>(n: u32) -> FormalGroupLaw<P> {
    build_fgl::<P>(&ChromaticConfig::new(P, n).unwrap()).unwrap()
}

fn xy_layout() -> Arc<Layout> {
    Layout::new(&["x", "y"], &[], 8, None).unwrap()
}

#[test]
fn c_poly_examples() {
    let l = xy_layout();
    assert_eq!(c_poly(2, 1, &l).unwrap().render(), "-x*y");
    assert_eq!(c_poly(3, 1, &l).unwrap().render(), "-x^2*y - x*y^2");
    assert_eq!(c_poly(2, 2, &l).unwrap().render(), "-2*x^3*y - 3*x^2*y^2 - 2*x*y^3");
    assert!(c_poly(2, 0, &l).is_err());
}

#[test]
fn gamma_examples() {
    for k in 1..4 {
        assert!(gamma(0, k, 2).is_zero());
        assert!(gamma(1, k, 3).is_zero());
    }
    assert_eq!(gamma(3, 1, 2), rational(-3));
}

/// Independent oracle: the same quotient with machine integers.
#[test]
fn gamma_at_p_is_one_mod_p() {
    for (p, k) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let pi = p as i128;
        let oracle = (pi - pi.pow(p.pow(k))) / pi;
        let g = gamma(p as u64, k, p);
        assert_eq!(g, BigRational::from_integer(BigInt::from(oracle)));
        assert_eq!(oracle.rem_euclid(pi), 1, "p={p} k={k}");
    }
}

#[test]
fn config_validation() {
    assert!(ChromaticConfig::new(4, 1).is_err());
    assert!(ChromaticConfig::new(19, 1).is_err());
    assert!(ChromaticConfig::new(2, 0).is_err());
    assert!(ChromaticConfig::with_caps(2, 1, 4, 32).is_err());
    let c = ChromaticConfig::new(3, 1).unwrap();
    assert_eq!((c.formal_degree_cap, c.u_precision, c.d()), (11, 32, 6));
}

#[test]
fn low_degree_shape_at_2_1() {
    let f = law::<2>(1);
    let cubic = f.bi_layout.with_caps(2, None);
    assert_eq!(f.addition.truncate(&cubic).unwrap().render(), "x + y - u1*x*y");
    let x = RationalSeries::var(&f.bi_layout, "x").unwrap();
    let zero = RationalSeries::zero(&f.bi_layout);
    assert_eq!(f.addition.compose(&[("x", &x), ("y", &zero)]).unwrap(), x);
}

#[test]
fn formal_inverse_cancels() {
    let f = law::<3>(1);
    let iota = formal_inverse(&f).unwrap();
    let x = RationalSeries::var(&f.uni_layout, "x").unwrap();
    assert!(f.add_series(&x, &iota).unwrap().is_zero());
    assert_eq!(iota.truncate(&f.uni_layout.with_caps(1, None)).unwrap().render(), "-x");
    let zero = RationalSeries::zero(&f.uni_layout);
    assert!(iota.compose(&[("x", &zero)]).unwrap().is_zero());
}

#[test]
fn additive_law_inverse_is_negation() {
    let l = Layout::new(&["x"], &[], 6, None).unwrap();
    let log = RationalSeries::var(&l, "x").unwrap();
    let exp = log.reversion("x").unwrap();
    assert_eq!(exp.compose(&[("x", &log.neg())]).unwrap().render(), "-x");
}

#[test]
fn i_series_basics() {
    let f = law::<2>(1);
    let x = RationalSeries::var(&f.uni_layout, "x").unwrap();
    assert_eq!(i_series(&f, 1).unwrap(), x);
    assert!(i_series(&f, 0).unwrap().is_zero());
    let two = i_series(&f, 2).unwrap();
    let residue = verify::pseries_residue(&f, &two, 1).unwrap();
    assert_eq!(residue.render(), "u1*x^2");
    let minus = i_series(&f, -2).unwrap();
    assert!(f.add_series(&two, &minus).unwrap().is_zero());
}

#[test]
fn report_at_2_1() {
    let f = law::<2>(1);
    let report = verify_fgl_congruences(&f).unwrap();
    for c in &report.checks {
        assert!(c.passed, "{} failed: {:?}", c.name, c.defect);
    }
    assert_eq!(report.get("pseries_i2_k1").unwrap().residue, "u1*x^2");
    assert_eq!(report.get("pseries_i2_top").unwrap().residue, "x^4");
    assert_eq!(report.get("pseries_i1_k1").unwrap().residue, "x");
    assert_eq!(report.get("pseries_i0_top").unwrap().residue, "0");
    // 4 axioms + integrality, 2 addition congruences, 6 rows × 2 ideals.
    assert_eq!(report.checks.len(), 5 + 2 + 12);
}

#[test]
fn reduced_law_matches_full_law() {
    fn check<const P: u32>(n: u32) {
        let f = law::<P>(n);
        let params = ReducedParams::for_config(&f.config);
        let small = ReducedParams { a_cap: f.config.formal_degree_cap, x_cap: 3, ..params };
        let red = ReducedLaw::<P>::build(&small).unwrap();
        let mut killed = f.reduced_addition.clone();
        for k in 1..n {
            killed = killed.substitute_zero(&format!("u{k}")).unwrap();
        }
        // Rename u_n to u and compare rows.
        let cap = f.config.formal_degree_cap;
        for i in 0..=3u16 {
            let mut expected = ModSeries::<P>::zero(&red.layout);
            for (m, c) in killed.terms() {
                if m.exp(0) == i {
                    let mono = Monomial::var(0, m.exp(1)).with_exp(1, m.exp(1 + n as usize));
                    expected.add_term(mono, *c);
                }
            }
            let got = red.rows[i as usize].truncate(&red.layout.with_caps(cap - i as u32, None)).unwrap();
            let expected = expected.truncate(&red.layout.with_caps(cap - i as u32, None)).unwrap();
            assert_eq!(got, expected, "row {i} at ({P},{n})");
        }
        let full_p = f.reduce(&i_series(&f, P as i64).unwrap()).unwrap();
        let mut expected = ModSeries::<P>::zero(&red.layout);
        for (m, c) in full_p.terms() {
            if (1..n as usize).all(|k| m.exp(k) == 0) {
                expected.add_term(Monomial::var(0, m.exp(0)).with_exp(1, m.exp(n as usize)), *c);
            }
        }
        let top = red.layout.with_caps(cap, None);
        assert_eq!(red.p_series().truncate(&top).unwrap(), expected.truncate(&top).unwrap());
    }
    check::<2>(1);
    check::<3>(1);
    check::<2>(2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn i_series_is_additive(i in -3i64..4, j in -3i64..4) {
        let f = law::<2>(1);
        let lhs = i_series(&f, i + j).unwrap();
        let rhs = f.add_series(&i_series(&f, i).unwrap(), &i_series(&f, j).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn i_series_composes(i in -2i64..4, j in -2i64..4) {
        let f = law::<3>(1);
        let inner = i_series(&f, j).unwrap();
        let lhs = i_series(&f, i).unwrap().compose(&[("x", &inner)]).unwrap();
        prop_assert_eq!(lhs, i_series(&f, i * j).unwrap());
    }
}
