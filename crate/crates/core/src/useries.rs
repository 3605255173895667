//! Truncated power series in `u_n` over 𝔽_p.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Fp;
use crate::weight::WeightValue;

/// `Σ c_t u^t` for `t < precision`; everything at or above the precision is
/// unknown and stored as zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct USeries<const P: u32> {
    coeffs: Vec<Fp<P>>,
}

impl<const P: u32> USeries<P> {
    pub fn zero(precision: usize) -> Self {
        USeries { coeffs: vec![Fp::zero(); precision] }
    }

    pub fn one(precision: usize) -> Self {
        Self::monomial(Fp::new(1), 0, precision)
    }

    /// `c · u^t`, or zero when `t` is past the horizon.
    pub fn monomial(c: Fp<P>, t: usize, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if t < precision {
            s.coeffs[t] = c;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Fp<P>>, precision: usize) -> Self {
        coeffs.resize(precision, Fp::zero());
        USeries { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Fp<P>] {
        &self.coeffs
    }

    pub fn coeff(&self, t: usize) -> Fp<P> {
        self.coeffs.get(t).copied().unwrap_or_else(Fp::zero)
    }

    pub fn set_coeff(&mut self, t: usize, c: Fp<P>) {
        if t < self.coeffs.len() {
            self.coeffs[t] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// u-adic valuation; `None` when zero up to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn weight(&self) -> WeightValue {
        match self.valuation() {
            Some(t) => WeightValue::finite(t as u64, 1),
            None => WeightValue::Infinite,
        }
    }

    pub fn truncated(&self, precision: usize) -> Self {
        Self::from_coeffs(self.coeffs[..precision.min(self.precision())].to_vec(), precision)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.precision() != other.precision() {
            return Err(Error::PrecisionMismatch(self.precision(), other.precision()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_trunc(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_trunc(other))
    }

    /// Sum at the smaller of the two precisions.
    pub fn add_trunc(&self, other: &Self) -> Self {
        let m = self.precision().min(other.precision());
        let coeffs = (0..m).map(|t| self.coeffs[t] + other.coeffs[t]).collect();
        USeries { coeffs }
    }

    pub fn sub_trunc(&self, other: &Self) -> Self {
        let m = self.precision().min(other.precision());
        let coeffs = (0..m).map(|t| self.coeffs[t] - other.coeffs[t]).collect();
        USeries { coeffs }
    }

    /// Product at the smaller of the two precisions.
    pub fn mul_trunc(&self, other: &Self) -> Self {
        let m = self.precision().min(other.precision());
        let mut out = vec![0u64; m];
        let p = P as u64;
        for (i, a) in self.coeffs.iter().enumerate().take(m) {
            if a.is_zero() {
                continue;
            }
            let a = a.residue() as u64;
            for (j, b) in other.coeffs.iter().enumerate().take(m - i) {
                out[i + j] = (out[i + j] + a * b.residue() as u64) % p;
            }
        }
        USeries { coeffs: out.into_iter().map(|c| Fp::new(c as u32)).collect() }
    }

    pub fn neg(&self) -> Self {
        USeries { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }

    pub fn scale(&self, c: Fp<P>) -> Self {
        USeries { coeffs: self.coeffs.iter().map(|&x| x * c).collect() }
    }

    /// Multiply by `u^k`, keeping the precision.
    pub fn shift_up(&self, k: usize) -> Self {
        let m = self.precision();
        let mut coeffs = vec![Fp::zero(); m];
        if k < m {
            coeffs[k..].copy_from_slice(&self.coeffs[..m - k]);
        }
        USeries { coeffs }
    }

    /// Divide by `u^k`; the top `k` coefficients become unknown (zero).
    /// Requires valuation ≥ k.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        let m = self.precision();
        let mut coeffs = vec![Fp::zero(); m];
        if k < m {
            coeffs[..m - k].copy_from_slice(&self.coeffs[k..]);
        }
        USeries { coeffs }
    }

    /// Inverse of a unit (constant term nonzero).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0).inverse().ok_or(Error::NonUnitConstantTerm)?;
        let m = self.precision();
        let mut inv = vec![Fp::<P>::zero(); m];
        if m == 0 {
            return Ok(USeries { coeffs: inv });
        }
        inv[0] = c0;
        for t in 1..m {
            let mut acc = Fp::zero();
            for s in 1..=t {
                acc = acc + self.coeffs[s] * inv[t - s];
            }
            inv[t] = -(acc * c0);
        }
        Ok(USeries { coeffs: inv })
    }

    /// Canonical rendering: ascending powers, `c*u^t` monomials with decimal
    /// residues.
    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| render_u_monomial(c.residue(), t))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

pub(crate) fn render_u_monomial(c: u32, t: usize) -> String {
    match (c, t) {
        (c, 0) => c.to_string(),
        (1, t) => format!("u^{t}"),
        (c, t) => format!("{c}*u^{t}"),
    }
}

impl<const P: u32> fmt::Debug for USeries<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(u^{})", self.render(), self.precision())
    }
}
