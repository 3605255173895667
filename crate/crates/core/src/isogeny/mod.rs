//! The degree-p isogeny with kernel generated by `a`, seen through its norm
//! coordinate `f(x) = Π_{0≤k<p} (x −_F [k](a))`, and the reduced power
//! operation `N̄` read off the quotient p-series.
//!
//! Series in `x` or `y` over `R` are dense vectors of [`DvrElement`]s
//! indexed by degree.

mod frac;

use serde::{Deserialize, Serialize};

pub use frac::FracElement;

use crate::dvr::{apoly, DvrElement, DvrRing, Psi};
use crate::error::{Error, Result};
use crate::fgl::ReducedLaw;
use crate::ModSeries;

pub type RSeries<const P: u32> = Vec<DvrElement<P>>;

fn rs_mul<const P: u32>(ring: &DvrRing<P>, f: &[DvrElement<P>], g: &[DvrElement<P>], len: usize) -> RSeries<P> {
    let mut out = vec![ring.zero(); len];
    for (i, a) in f.iter().enumerate().take(len) {
        if a.is_zero() && a.horizon() >= ring.horizon() {
            continue;
        }
        for (j, b) in g.iter().enumerate().take(len - i) {
            out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
        }
    }
    out
}

/// `Σ_j s_j y^j` at `y = c`, for `s` in the layout `[a; u]` (with `a`
/// standing for `y`) and `val(c) ≥ 1`.
fn evaluate_at<const P: u32>(ring: &DvrRing<P>, s: &ModSeries<P>, c: &DvrElement<P>) -> Result<DvrElement<P>> {
    let cap = s.layout().formal_cap() as usize;
    let dense = apoly::from_series(s, cap + 1, ring.precision())?;
    let mut acc = ring.zero();
    for coeff in dense.iter().rev() {
        acc = ring.add(&ring.mul(&acc, c), &ring.from_useries(coeff));
    }
    // The tail beyond the cap has valuation above the cap.
    Ok(ring.with_horizon(&acc, cap + 1))
}

/// `F(s(x), c) = Σ_i s(x)^i F_i(c)`, truncated at `x`-degree `len − 1`.
fn add_point<const P: u32>(
    law: &ReducedLaw<P>,
    ring: &DvrRing<P>,
    s: &[DvrElement<P>],
    c: &DvrElement<P>,
    len: usize,
) -> Result<RSeries<P>> {
    let mut out = vec![ring.zero(); len];
    let mut power: RSeries<P> = {
        let mut one = vec![ring.zero(); len];
        one[0] = ring.one();
        one
    };
    for row in law.rows.iter() {
        if power.iter().all(|e| e.is_zero()) {
            break;
        }
        let value = evaluate_at(ring, row, c)?;
        for (o, p) in out.iter_mut().zip(&power) {
            *o = ring.add(o, &ring.mul(p, &value));
        }
        power = rs_mul(ring, &power, s, len);
    }
    Ok(out)
}

/// The norm coordinate and the points `[−k](a)` it is built from.
#[derive(Clone, Debug)]
pub struct NormCoordinate<const P: u32> {
    /// `f(x)` up to `x`-degree `x_cap`.
    pub f: RSeries<P>,
    /// `[−k](a)` for `0 ≤ k < p`.
    pub points: Vec<DvrElement<P>>,
}

impl<const P: u32> NormCoordinate<P> {
    pub fn linear_coefficient(&self) -> &DvrElement<P> {
        &self.f[1]
    }
}

pub fn norm_coordinate<const P: u32>(law: &ReducedLaw<P>, ring: &DvrRing<P>) -> Result<NormCoordinate<P>> {
    let len = law.params.x_cap as usize + 1;
    let mut x = vec![ring.zero(); len];
    x[1] = ring.one();
    let mut points = vec![ring.zero()];
    let mut f = x.clone();
    for k in 1..P as i64 {
        let c = ring.from_series(law.i_series(-k)?)?;
        let factor = add_point(law, ring, &x, &c, len)?;
        f = rs_mul(ring, &f, &factor, len);
        points.push(c);
    }
    Ok(NormCoordinate { f, points })
}

/// `[p](x)` over `R`, up to `x`-degree `len − 1`.
fn p_series_over_r<const P: u32>(law: &ReducedLaw<P>, ring: &DvrRing<P>, len: usize) -> Result<RSeries<P>> {
    let dense = apoly::from_series(law.p_series(), len, law.params.u_cap as usize)?;
    Ok(dense.iter().map(|c| ring.from_useries(c)).collect())
}

/// `Π_k ([p](x) −_F [k](a))`, the left side of the isogeny identity.
pub fn isogeny_lhs<const P: u32>(law: &ReducedLaw<P>, ring: &DvrRing<P>, norm: &NormCoordinate<P>) -> Result<RSeries<P>> {
    let len = norm.f.len();
    let px = p_series_over_r(law, ring, len)?;
    let mut out = px.clone();
    for c in &norm.points[1..] {
        out = rs_mul(ring, &out, &add_point(law, ring, &px, c, len)?, len);
    }
    Ok(out)
}

/// `[p]_{F′}(y) = Σ_j q_j y^j` over the fraction field of `R`.
#[derive(Clone, Debug)]
pub struct QuotientPSeries<const P: u32> {
    pub coefficients: Vec<FracElement<P>>,
}

impl<const P: u32> QuotientPSeries<P> {
    pub fn integral(&self) -> Vec<bool> {
        self.coefficients.iter().map(FracElement::is_integral).collect()
    }

    pub fn coefficient(&self, j: usize) -> Result<&FracElement<P>> {
        self.coefficients.get(j).ok_or(Error::IndexOutOfRange(j, self.coefficients.len()))
    }

    fn integral_coefficients(&self) -> Result<Vec<DvrElement<P>>> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, q)| {
                q.to_integral().cloned().ok_or_else(|| {
                    Error::IntegralityFailure(format!("coefficient of y^{j} is {} with a pole", q.render()))
                })
            })
            .collect()
    }
}

/// Solve `[p]_{F′}(f(x)) = lhs(x)` degree by degree:
/// `q_j = (lhs_j − Σ_{i<j} q_i [x^j] f^i) / f_1^j`.
pub fn quotient_p_series<const P: u32>(
    ring: &DvrRing<P>,
    norm: &NormCoordinate<P>,
    lhs: &[DvrElement<P>],
) -> Result<QuotientPSeries<P>> {
    let len = norm.f.len();
    let lin = norm.linear_coefficient();
    let v = lin
        .valuation()
        .ok_or_else(|| Error::PrecisionExhausted("linear coefficient of f vanishes".into()))?;
    let lin_unit_inv = ring.unit_inverse(&ring.div_by_a_pow(lin, v)?)?;

    // powers[i] = f^i up to degree len − 1
    let mut powers: Vec<RSeries<P>> = Vec::with_capacity(len);
    let mut one = vec![ring.zero(); len];
    one[0] = ring.one();
    powers.push(one);
    for i in 1..len {
        let next = rs_mul(ring, &powers[i - 1], &norm.f, len);
        powers.push(next);
    }

    let mut q: Vec<FracElement<P>> = Vec::with_capacity(len);
    q.push(FracElement::integral(lhs[0].clone()));
    let mut unit_pow = ring.one();
    for j in 1..len {
        let mut acc = FracElement::integral(lhs[j].clone());
        for (i, qi) in q.iter().enumerate() {
            if qi.is_zero() && qi.precision() >= ring.horizon() as i64 {
                continue;
            }
            acc = acc.sub(&qi.mul_integral(&powers[i][j], ring)?, ring)?;
        }
        unit_pow = ring.mul(&unit_pow, &lin_unit_inv);
        q.push(acc.mul_integral(&unit_pow, ring)?.div_a_pow(j * v, ring)?);
    }
    Ok(QuotientPSeries { coefficients: q })
}

/// Every coefficient must lie in `R`.
pub fn certify_integral<const P: u32>(q: &QuotientPSeries<P>) -> Result<Vec<DvrElement<P>>> {
    q.integral_coefficients()
}

/// `Σ_j q_j f(x)^j − lhs(x)` by Horner's rule in `y = f(x)`.
pub fn back_substitution_defect<const P: u32>(
    ring: &DvrRing<P>,
    q: &QuotientPSeries<P>,
    norm: &NormCoordinate<P>,
    lhs: &[DvrElement<P>],
) -> Result<RSeries<P>> {
    let coeffs = q.integral_coefficients()?;
    let len = norm.f.len();
    let mut acc = vec![ring.zero(); len];
    for c in coeffs.iter().rev() {
        acc = rs_mul(ring, &acc, &norm.f, len);
        acc[0] = ring.add(&acc[0], c);
    }
    Ok(acc.iter().zip(lhs).map(|(a, b)| ring.sub(a, b)).collect())
}

/// Valuation summary of one coefficient `q_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub degree: usize,
    pub integral: bool,
    pub zero: bool,
    pub valuation: Option<i64>,
    pub precision: i64,
}

pub fn coefficient_table<const P: u32>(q: &QuotientPSeries<P>) -> Vec<CoefficientEntry> {
    q.coefficients
        .iter()
        .enumerate()
        .map(|(degree, c)| CoefficientEntry {
            degree,
            integral: c.is_integral(),
            zero: c.is_zero(),
            valuation: c.valuation(),
            precision: c.precision(),
        })
        .collect()
}

/// `N̄(u_n)`: the coefficient of `y^{p^n}`, after checking that the
/// coefficients of `y^{p^i}` for `i < n` vanish.
pub fn extract_nbar_un<const P: u32>(q: &QuotientPSeries<P>, n: u32) -> Result<DvrElement<P>> {
    for i in 0..n {
        let j = P.pow(i) as usize;
        if !q.coefficient(j)?.is_zero() {
            return Err(Error::PrerequisiteVanishingFailed(j));
        }
    }
    let j = P.pow(n) as usize;
    q.coefficient(j)?
        .to_integral()
        .cloned()
        .ok_or_else(|| Error::IntegralityFailure(format!("coefficient of y^{j} has a pole")))
}

/// The unique `r` with `r · Ψ^{p^n − 1} = u`.
pub fn nbar_by_division<const P: u32>(ring: &DvrRing<P>, psi: &DvrElement<P>, n: u32) -> Result<DvrElement<P>> {
    let divisor = ring.pow(psi, P.pow(n) as u64 - 1);
    ring.exact_div(&ring.u(), &divisor)
}

/// Which of `N̄(u)·Ψ^{p^n} = ±u·Ψ` hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCheck {
    pub epsilon: i8,
    pub plus_holds: bool,
    pub minus_holds: bool,
    /// Rendering of `N̄(u)·Ψ^{p^n} − ε·u·Ψ` for the reported `ε` (or for
    /// `ε = +1` when neither holds).
    pub defect: String,
    /// Valuation below which the comparison was made.
    pub horizon: usize,
}

pub fn norm_sign_check<const P: u32>(
    ring: &DvrRing<P>,
    nbar_un: &DvrElement<P>,
    psi: &DvrElement<P>,
    n: u32,
) -> Result<SignCheck> {
    let lhs = ring.mul(nbar_un, &ring.pow(psi, P.pow(n) as u64));
    let u_psi = ring.mul(&ring.u(), psi);
    let plus = ring.sub(&lhs, &u_psi);
    let minus = ring.add(&lhs, &u_psi);
    let (plus_holds, minus_holds) = (plus.is_zero(), minus.is_zero());
    let epsilon = match (plus_holds, minus_holds) {
        (true, _) => 1,
        (false, true) => -1,
        (false, false) => return Err(Error::NeitherSignHolds),
    };
    let defect = if epsilon == 1 { &plus } else { &minus };
    Ok(SignCheck { epsilon, plus_holds, minus_holds, defect: defect.render(), horizon: defect.horizon() })
}

/// Everything the isogeny stage produces for one configuration.
#[derive(Clone, Debug)]
pub struct IsogenyOutcome<const P: u32> {
    pub norm: NormCoordinate<P>,
    pub lhs: RSeries<P>,
    pub quotient: QuotientPSeries<P>,
    pub defect: RSeries<P>,
    pub nbar_extracted: DvrElement<P>,
    pub nbar_divided: DvrElement<P>,
}

impl<const P: u32> IsogenyOutcome<P> {
    pub fn defect_is_zero(&self) -> bool {
        self.defect.iter().all(DvrElement::is_zero)
    }

    pub fn routes_agree(&self, ring: &DvrRing<P>) -> bool {
        ring.equal(&self.nbar_extracted, &self.nbar_divided)
    }
}

pub fn run_isogeny<const P: u32>(law: &ReducedLaw<P>, ring: &DvrRing<P>, psi: &Psi<P>) -> Result<IsogenyOutcome<P>> {
    let norm = norm_coordinate(law, ring)?;
    let lhs = isogeny_lhs(law, ring, &norm)?;
    let quotient = quotient_p_series(ring, &norm, &lhs)?;
    let defect = back_substitution_defect(ring, &quotient, &norm, &lhs)?;
    let nbar_extracted = extract_nbar_un(&quotient, law.params.n)?;
    let nbar_divided = nbar_by_division(ring, &psi.psi, law.params.n)?;
    Ok(IsogenyOutcome { norm, lhs, quotient, defect, nbar_extracted, nbar_divided })
}

#[cfg(test)]
mod tests;
