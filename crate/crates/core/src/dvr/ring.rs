use std::fmt;

use super::apoly;
use super::weierstrass::DistinguishedPoly;
use crate::error::{Error, Result};
use crate::{Fp, ModSeries, USeries, WeightValue};

/// `R = 𝔽_p[[u]][a]/g(a)` at a finite valuation horizon.
///
/// Every element carries its own horizon `H`: the stored representative is
/// correct modulo terms `u^t a^i` with `t·d + i ≥ H`, and such terms are
/// never stored. The ring horizon bounds all element horizons, since `g`
/// itself is only known that far.
#[derive(Clone, Debug)]
pub struct DvrRing<const P: u32> {
    d: usize,
    m: usize,
    horizon: usize,
    /// `g_0, …, g_{d−1}` at the full precision of the preparation.
    g_low: Vec<USeries<P>>,
    u_over_a: DvrElement<P>,
}

/// `Σ_{i<d} c_i(u) a^i`, known below valuation `horizon`.
#[derive(Clone, PartialEq, Eq)]
pub struct DvrElement<const P: u32> {
    coeffs: Vec<USeries<P>>,
    horizon: usize,
}

impl<const P: u32> DvrElement<P> {
    pub fn coeffs(&self) -> &[USeries<P>] {
        &self.coeffs
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Lowest `t·d + i` over nonzero stored terms.
    pub fn valuation(&self) -> Option<usize> {
        let d = self.coeffs.len();
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.valuation().map(|t| t * d + i))
            .min()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(USeries::is_zero)
    }

    pub fn weight(&self) -> WeightValue {
        match self.valuation() {
            Some(v) => WeightValue::finite(v as u64, self.coeffs.len() as u64),
            None => WeightValue::Infinite,
        }
    }

    /// Polynomial in `a` with `u`-series coefficients, e.g. `u + u^2*a`.
    pub fn render(&self) -> String {
        apoly::render(&self.coeffs)
    }
}

impl<const P: u32> fmt::Debug for DvrElement<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (horizon {})", self.render(), self.horizon)
    }
}

impl<const P: u32> DvrRing<P> {
    /// The ring defined by `g` with elements known below valuation
    /// `horizon`.
    pub fn new(g: &DistinguishedPoly<P>, horizon: usize) -> Result<Self> {
        let d = g.degree();
        if d == 0 || horizon == 0 {
            return Err(Error::InvalidConfig("ring needs d ≥ 1 and a positive horizon".into()));
        }
        let m = horizon.div_ceil(d);
        if g.precision() < m {
            return Err(Error::PrecisionMismatch(g.precision(), m));
        }
        let g_low = g.coeffs()[..d].to_vec();
        if g_low[0].valuation() != Some(1) {
            return Err(Error::NotPreparable("constant term of g is not u times a unit".into()));
        }
        let mut ring = DvrRing {
            d,
            m,
            horizon,
            g_low,
            u_over_a: DvrElement { coeffs: vec![USeries::zero(m); d], horizon: 0 },
        };
        // u/a = −ε^{-1}(a^{d−1} + g_{d−1} a^{d−2} + … + g_1) with g_0 = u·ε.
        let eps_inv = ring.g_low[0].shift_down(1).inverse()?;
        let mut coeffs: Vec<USeries<P>> = (1..d).map(|i| ring.g_low[i].clone()).collect();
        coeffs.push(USeries::one(eps_inv.precision()));
        let coeffs = coeffs.iter().map(|c| c.mul_trunc(&eps_inv).neg().truncated(m)).collect();
        ring.u_over_a = ring.masked(coeffs, horizon - 1);
        Ok(ring)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `u`-precision of stored coefficients, `⌈H/d⌉`.
    pub fn precision(&self) -> usize {
        self.m
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    fn masked(&self, mut coeffs: Vec<USeries<P>>, horizon: usize) -> DvrElement<P> {
        let horizon = horizon.min(self.horizon);
        coeffs.resize(self.d, USeries::zero(self.m));
        for (i, c) in coeffs.iter_mut().enumerate() {
            let mut c2 = c.truncated(self.m);
            for t in 0..self.m {
                if t * self.d + i >= horizon {
                    c2.set_coeff(t, Fp::new(0));
                }
            }
            *c = c2;
        }
        DvrElement { coeffs, horizon }
    }

    pub fn zero(&self) -> DvrElement<P> {
        self.masked(Vec::new(), self.horizon)
    }

    pub fn one(&self) -> DvrElement<P> {
        self.from_useries(&USeries::one(self.m))
    }

    pub fn a(&self) -> DvrElement<P> {
        self.monomial(0, 1)
    }

    pub fn u(&self) -> DvrElement<P> {
        self.monomial(1, 0)
    }

    /// `u^t a^i` for `i < d`.
    pub fn monomial(&self, t: usize, i: usize) -> DvrElement<P> {
        assert!(i < self.d, "a-exponent {i} not below d = {}", self.d);
        let mut coeffs = vec![USeries::zero(self.m); self.d];
        coeffs[i] = USeries::monomial(Fp::new(1), t, self.m);
        self.masked(coeffs, self.horizon)
    }

    /// Image of `z ∈ 𝔽_p[[u]]` under the structure map.
    pub fn from_useries(&self, z: &USeries<P>) -> DvrElement<P> {
        let horizon = z.precision().saturating_mul(self.d);
        self.masked(vec![z.truncated(self.m)], horizon)
    }

    /// Element with the given coefficients of `1, a, …, a^{d−1}`.
    pub fn from_coeffs(&self, coeffs: Vec<USeries<P>>) -> Result<DvrElement<P>> {
        if coeffs.len() > self.d {
            return Err(Error::IndexOutOfRange(coeffs.len() - 1, self.d));
        }
        Ok(self.masked(coeffs, self.horizon))
    }

    /// `Σ c_j a^j` for a series in the layout `[a; u]`, reduced mod `g` by
    /// Horner's rule. A series known through `a`-degree `A` is exact below
    /// valuation `A + 1`.
    pub fn from_series(&self, s: &ModSeries<P>) -> Result<DvrElement<P>> {
        let cap = s.layout().formal_cap() as usize;
        let dense = apoly::from_series(s, cap + 1, self.m)?;
        Ok(self.from_dense(&dense, cap + 1))
    }

    /// Horner evaluation of dense coefficients, exact below `horizon`.
    pub fn from_dense(&self, dense: &[USeries<P>], horizon: usize) -> DvrElement<P> {
        let mut acc = vec![USeries::zero(self.m); self.d];
        for c in dense.iter().rev() {
            acc = self.times_a(&acc);
            acc[0] = acc[0].add_trunc(&c.truncated(self.m));
        }
        self.masked(acc, horizon)
    }

    /// Multiply reduced coefficients by `a` and reduce once.
    fn times_a(&self, c: &[USeries<P>]) -> Vec<USeries<P>> {
        let d = self.d;
        let top = c[d - 1].clone();
        let mut out = Vec::with_capacity(d);
        out.push(USeries::zero(self.m));
        out.extend(c[..d - 1].iter().cloned());
        if !top.is_zero() {
            for (i, gi) in self.g_low.iter().enumerate() {
                out[i] = out[i].sub_trunc(&top.mul_trunc(gi));
            }
        }
        out
    }

    pub fn add(&self, x: &DvrElement<P>, y: &DvrElement<P>) -> DvrElement<P> {
        let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a.add_trunc(b)).collect();
        self.masked(coeffs, x.horizon.min(y.horizon))
    }

    pub fn neg(&self, x: &DvrElement<P>) -> DvrElement<P> {
        DvrElement { coeffs: x.coeffs.iter().map(USeries::neg).collect(), horizon: x.horizon }
    }

    pub fn sub(&self, x: &DvrElement<P>, y: &DvrElement<P>) -> DvrElement<P> {
        self.add(x, &self.neg(y))
    }

    fn val_or_horizon(x: &DvrElement<P>) -> usize {
        x.valuation().unwrap_or(x.horizon)
    }

    /// Product reduced by monic division by `g`. The horizon of the result is
    /// `min(H₁ + v₂, H₂ + v₁)`.
    pub fn mul(&self, x: &DvrElement<P>, y: &DvrElement<P>) -> DvrElement<P> {
        let d = self.d;
        let mut wide = apoly::mul(&x.coeffs, &y.coeffs, 2 * d - 1);
        for j in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut wide[j], USeries::zero(self.m));
            if c.is_zero() {
                continue;
            }
            for (i, gi) in self.g_low.iter().enumerate() {
                wide[j - d + i] = wide[j - d + i].sub_trunc(&c.mul_trunc(gi));
            }
        }
        wide.truncate(d);
        let horizon = (x.horizon + Self::val_or_horizon(y)).min(y.horizon + Self::val_or_horizon(x));
        self.masked(wide, horizon)
    }

    pub fn scale(&self, z: &USeries<P>, x: &DvrElement<P>) -> DvrElement<P> {
        self.mul(&self.from_useries(z), x)
    }

    pub fn pow(&self, x: &DvrElement<P>, mut e: u64) -> DvrElement<P> {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// True iff `x − y` vanishes below the smaller horizon.
    pub fn equal(&self, x: &DvrElement<P>, y: &DvrElement<P>) -> bool {
        self.sub(x, y).is_zero()
    }

    /// Reduction mod `(a, u)`, which lands in `𝔽_p`.
    pub fn residue(&self, x: &DvrElement<P>) -> Fp<P> {
        x.coeffs[0].coeff(0)
    }

    /// Coefficient of `a^i` in the reduced representative.
    pub fn phi(&self, x: &DvrElement<P>, i: usize) -> Result<USeries<P>> {
        x.coeffs.get(i).cloned().ok_or(Error::IndexOutOfRange(i, self.d))
    }

    /// `x / a`; requires `val(x) ≥ 1`. Costs one unit of horizon.
    pub fn div_by_a(&self, x: &DvrElement<P>) -> Result<DvrElement<P>> {
        if x.coeffs[0].coeff(0).residue() != 0 {
            return Err(Error::InexactDivision(format!("{} is not divisible by a", x.render())));
        }
        let mut shifted: Vec<USeries<P>> = x.coeffs[1..].to_vec();
        shifted.push(USeries::zero(self.m));
        let c0 = x.coeffs[0].shift_down(1);
        let tail = self.mul(&self.from_useries(&c0), &self.u_over_a);
        let head = self.masked(shifted, x.horizon.saturating_sub(1));
        let mut out = self.add(&head, &tail);
        out.horizon = out.horizon.min(x.horizon.saturating_sub(1));
        Ok(self.masked(out.coeffs, out.horizon))
    }

    pub fn div_by_a_pow(&self, x: &DvrElement<P>, k: usize) -> Result<DvrElement<P>> {
        let mut out = x.clone();
        for _ in 0..k {
            out = self.div_by_a(&out)?;
        }
        Ok(out)
    }

    /// Inverse of an element of valuation 0, by Newton iteration.
    pub fn unit_inverse(&self, x: &DvrElement<P>) -> Result<DvrElement<P>> {
        let c = x.coeffs[0].coeff(0).inverse().ok_or(Error::NonUnitConstantTerm)?;
        let one = self.masked(vec![USeries::one(self.m)], x.horizon);
        let mut y = self.masked(vec![USeries::monomial(c, 0, self.m)], x.horizon);
        for _ in 0..64 {
            let err = self.sub(&one, &self.mul(x, &y));
            if err.is_zero() {
                y.horizon = x.horizon;
                return Ok(self.masked(y.coeffs, x.horizon));
            }
            y = self.add(&y, &self.mul(&y, &err));
            y.horizon = x.horizon;
        }
        Err(Error::PrecisionExhausted("unit inverse did not converge".into()))
    }

    /// The unique `r` with `r·y = x`. Fails when `val(x) < val(y)`.
    pub fn exact_div(&self, x: &DvrElement<P>, y: &DvrElement<P>) -> Result<DvrElement<P>> {
        let vy = y
            .valuation()
            .ok_or_else(|| Error::InexactDivision("divisor is zero up to its horizon".into()))?;
        match x.valuation() {
            Some(vx) if vx < vy => {
                return Err(Error::InexactDivision(format!("val {vx} of dividend below val {vy} of divisor")))
            }
            _ => {}
        }
        let num = self.div_by_a_pow(x, vy)?;
        let den = self.unit_inverse(&self.div_by_a_pow(y, vy)?)?;
        Ok(self.mul(&num, &den))
    }

    /// Valuation of an element known to be nonzero below its horizon.
    pub fn valuation_of(&self, x: &DvrElement<P>) -> usize {
        x.valuation().expect("element vanishes below its horizon")
    }

    /// `x` with its horizon lowered to `h` (never raised).
    pub fn with_horizon(&self, x: &DvrElement<P>, h: usize) -> DvrElement<P> {
        self.masked(x.coeffs.clone(), h.min(x.horizon))
    }
}
