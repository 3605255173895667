use std::sync::Arc;

use serde::Serialize;

use super::apoly::{self, APoly};
use crate::error::{Error, Result};
use crate::fgl::{i_series, FormalGroupLaw};
use crate::series::{Layout, Monomial};
use crate::{ModSeries, USeries};

/// The law and its p-series modulo `(p, u_1, …, u_{n−1})`, with `u_n`
/// renamed `u`, at the formal cap of `f`.
#[derive(Clone, Debug)]
pub struct UnReduction<const P: u32> {
    /// In the layout `[x, y; u]`.
    pub addition: ModSeries<P>,
    /// In the layout `[a; u]`.
    pub p_series: ModSeries<P>,
}

fn rename_to_un<const P: u32>(s: &ModSeries<P>, n: usize, target: &Arc<Layout>) -> ModSeries<P> {
    let src = s.layout();
    let nf = src.n_formal();
    let mut out = ModSeries::<P>::zero(target);
    for (m, c) in s.terms() {
        if (1..n).any(|k| m.exp(nf + k - 1) != 0) {
            continue;
        }
        let mut t = Monomial::one().with_exp(nf, m.exp(nf + n - 1));
        for i in 0..nf {
            t = t.with_exp(i, m.exp(i));
        }
        out.add_term(t, *c);
    }
    out
}

pub fn reduce_to_un<const P: u32>(f: &FormalGroupLaw<P>) -> Result<UnReduction<P>> {
    let n = f.config.n as usize;
    let cap = f.config.formal_degree_cap;
    let bi = Layout::new(&["x", "y"], &["u"], cap, None)?;
    let uni = Layout::new(&["a"], &["u"], cap, None)?;
    let p_series = f.reduce(&i_series(f, P as i64)?)?;
    Ok(UnReduction {
        addition: rename_to_un(&f.reduced_addition, n, &bi),
        p_series: rename_to_un(&p_series, n, &uni),
    })
}

/// A monic polynomial in `a` over `𝔽_p[[u]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedPoly<const P: u32> {
    coeffs: Vec<USeries<P>>,
}

impl<const P: u32> DistinguishedPoly<P> {
    /// `coeffs[i]` is the coefficient of `a^i`; the last one must be `1`.
    pub fn from_coeffs(coeffs: Vec<USeries<P>>) -> Result<Self> {
        match coeffs.last() {
            Some(top) if *top == USeries::one(top.precision()) => Ok(DistinguishedPoly { coeffs }),
            _ => Err(Error::NotPreparable("polynomial is not monic".into())),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[USeries<P>] {
        &self.coeffs
    }

    pub fn precision(&self) -> usize {
        self.coeffs[0].precision()
    }

    /// True iff the reduction mod `u` is `a^d`.
    pub fn reduces_to_monomial(&self) -> bool {
        self.coeffs[..self.degree()].iter().all(|c| c.coeff(0).residue() == 0)
    }

    pub fn render(&self) -> String {
        apoly::render(&self.coeffs)
    }
}

/// Lower coefficients in `(u)` and constant term not in `(u²)`.
pub fn eisenstein_check<const P: u32>(g: &DistinguishedPoly<P>) -> bool {
    g.reduces_to_monomial() && g.coeffs[0].valuation() == Some(1)
}

/// `[p](a) = U · a^{pole_order} · g(a)`.
#[derive(Clone, Debug)]
pub struct WeierstrassFactorization<const P: u32> {
    unit: APoly<P>,
    pub distinguished: DistinguishedPoly<P>,
    pub pole_order: usize,
    /// Refinement rounds, equal to the `u`-precision.
    pub rounds: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionReport {
    pub exact: bool,
    pub u_precision: usize,
    pub a_cap: usize,
    pub defect: String,
}

impl<const P: u32> WeierstrassFactorization<P> {
    pub fn unit_coeffs(&self) -> &[USeries<P>] {
        &self.unit
    }

    pub fn unit_part(&self, layout: &Arc<Layout>) -> Result<ModSeries<P>> {
        apoly::to_series(&self.unit, layout)
    }

    pub fn unit_is_unit(&self) -> bool {
        self.unit.first().is_some_and(|c| c.coeff(0).residue() != 0)
    }

    /// `U · a^{pole_order} · g` against `p_series`, modulo `u^rounds` and
    /// above the `a`-cap of `p_series`.
    pub fn reconstruction(&self, p_series: &ModSeries<P>) -> Result<ReconstructionReport> {
        let a_cap = p_series.layout().formal_cap() as usize;
        let len = a_cap + 1;
        let target = apoly::from_series(p_series, len, self.rounds)?;
        let mut shifted = apoly::zero(len, self.rounds);
        for (i, c) in self.distinguished.coeffs.iter().enumerate() {
            if i + self.pole_order < len {
                shifted[i + self.pole_order] = c.clone();
            }
        }
        let product = apoly::mul(&self.unit, &shifted, len);
        let defect = apoly::add(&product, &apoly::neg(&target));
        let exact = defect.iter().all(USeries::is_zero);
        Ok(ReconstructionReport {
            exact,
            u_precision: self.rounds,
            a_cap,
            defect: apoly::render(&defect),
        })
    }
}

/// Weierstrass preparation of `h = [p](a) / a^{pole_order}` by successive
/// approximation: `rounds` passes of the division `a^d = q·h + r`, each
/// gaining one power of `u`; then `g = a^d − r` and `U = q^{-1}`.
///
/// `p_series` lives in the layout `[a; u]`; its `a`-cap bounds the data used.
pub fn weierstrass_prepare<const P: u32>(
    p_series: &ModSeries<P>,
    pole_order: usize,
    d: usize,
    rounds: usize,
) -> Result<WeierstrassFactorization<P>> {
    let a_cap = p_series.layout().formal_cap() as usize;
    if a_cap < pole_order + d {
        return Err(Error::NotPreparable(format!("a-cap {a_cap} below p^n + d = {}", pole_order + d)));
    }
    let m = rounds;
    let full = apoly::from_series(p_series, a_cap + 1, m)?;
    if let Some(i) = full[..pole_order].iter().position(|c| !c.is_zero()) {
        return Err(Error::NotPreparable(format!("nonzero coefficient at a^{i} below a^{pole_order}")));
    }
    let h: APoly<P> = full[pole_order..].to_vec();
    let len = h.len();
    if let Some(i) = h[..d].iter().position(|c| c.coeff(0).residue() != 0) {
        return Err(Error::NotPreparable(format!("coefficient of a^{i} is not divisible by u")));
    }
    if h[d].coeff(0).residue() == 0 {
        return Err(Error::NotPreparable(format!("coefficient of a^{d} is not a unit")));
    }
    let h_low: APoly<P> = h[..d].to_vec();
    let h_high_inv = apoly::inverse(&h[d..], len)?;

    let mut r: APoly<P> = apoly::zero(d, m);
    let mut q: APoly<P> = apoly::zero(len, m);
    let mut e: APoly<P> = apoly::zero(len, m);
    e[d] = USeries::one(m);
    for _ in 0..rounds {
        for i in 0..d {
            r[i] = r[i].add_trunc(&e[i]);
        }
        let high: APoly<P> = e.get(d..).map(<[_]>::to_vec).unwrap_or_default();
        let t = apoly::mul(&high, &h_high_inv, len);
        q = apoly::add(&q, &t);
        e = apoly::neg(&apoly::mul(&t, &h_low, len));
    }
    if e.iter().any(|c| !c.is_zero()) {
        return Err(Error::PrecisionExhausted("preparation did not settle within the rounds".into()));
    }
    let mut g: Vec<USeries<P>> = r.iter().map(USeries::neg).collect();
    g.push(USeries::one(m));
    let distinguished = DistinguishedPoly::from_coeffs(g)?;
    let unit = apoly::inverse(&q, len)?;
    Ok(WeierstrassFactorization { unit, distinguished, pole_order, rounds })
}
