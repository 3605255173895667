use crate::dvr::{DvrElement, DvrRing};
use crate::error::{Error, Result};

/// `numerator · a^{−shift}` in the fraction field of `R`.
///
/// Normalized means `shift = 0` or `val(numerator) = 0`. A value that
/// vanishes below its precision is stored with `shift = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracElement<const P: u32> {
    pub numerator: DvrElement<P>,
    pub shift: usize,
}

impl<const P: u32> FracElement<P> {
    pub fn integral(x: DvrElement<P>) -> Self {
        FracElement { numerator: x, shift: 0 }
    }

    pub fn is_integral(&self) -> bool {
        self.shift == 0
    }

    pub fn to_integral(&self) -> Option<&DvrElement<P>> {
        self.is_integral().then_some(&self.numerator)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `val(numerator) − shift`; `None` for zero up to precision.
    pub fn valuation(&self) -> Option<i64> {
        self.numerator.valuation().map(|v| v as i64 - self.shift as i64)
    }

    /// The value is known modulo elements of valuation at least this.
    pub fn precision(&self) -> i64 {
        self.numerator.horizon() as i64 - self.shift as i64
    }

    pub fn normalize(self, ring: &DvrRing<P>) -> Result<Self> {
        let FracElement { mut numerator, mut shift } = self;
        if numerator.is_zero() {
            if numerator.horizon() < shift {
                return Err(Error::PrecisionExhausted(format!(
                    "fraction with horizon {} below its shift {shift}",
                    numerator.horizon()
                )));
            }
            let h = numerator.horizon() - shift;
            return Ok(FracElement { numerator: ring.with_horizon(&ring.zero(), h), shift: 0 });
        }
        while shift > 0 && numerator.valuation().is_some_and(|v| v > 0) {
            numerator = ring.div_by_a(&numerator)?;
            shift -= 1;
        }
        Ok(FracElement { numerator, shift })
    }

    fn times_a_pow(ring: &DvrRing<P>, x: &DvrElement<P>, k: usize) -> DvrElement<P> {
        if k == 0 {
            x.clone()
        } else {
            ring.mul(x, &ring.pow(&ring.a(), k as u64))
        }
    }

    pub fn add(&self, other: &Self, ring: &DvrRing<P>) -> Result<Self> {
        let s = self.shift.max(other.shift);
        let x = Self::times_a_pow(ring, &self.numerator, s - self.shift);
        let y = Self::times_a_pow(ring, &other.numerator, s - other.shift);
        FracElement { numerator: ring.add(&x, &y), shift: s }.normalize(ring)
    }

    pub fn neg(&self, ring: &DvrRing<P>) -> Self {
        FracElement { numerator: ring.neg(&self.numerator), shift: self.shift }
    }

    pub fn sub(&self, other: &Self, ring: &DvrRing<P>) -> Result<Self> {
        self.add(&other.neg(ring), ring)
    }

    pub fn mul(&self, other: &Self, ring: &DvrRing<P>) -> Result<Self> {
        FracElement {
            numerator: ring.mul(&self.numerator, &other.numerator),
            shift: self.shift + other.shift,
        }
        .normalize(ring)
    }

    pub fn mul_integral(&self, x: &DvrElement<P>, ring: &DvrRing<P>) -> Result<Self> {
        self.mul(&FracElement::integral(x.clone()), ring)
    }

    /// Multiply by `a^{−k}`.
    pub fn div_a_pow(&self, k: usize, ring: &DvrRing<P>) -> Result<Self> {
        FracElement { numerator: self.numerator.clone(), shift: self.shift + k }.normalize(ring)
    }

    /// Equality after cross-normalization, below the smaller precision.
    pub fn equals(&self, other: &Self, ring: &DvrRing<P>) -> Result<bool> {
        Ok(self.sub(other, ring)?.is_zero())
    }

    pub fn render(&self) -> String {
        match self.shift {
            0 => self.numerator.render(),
            s => format!("({}) / a^{s}", self.numerator.render()),
        }
    }
}
