//! The p-typical formal group law with Hazewinkel-style generators
//! `v_k = u_k` (k ≤ n), `v_{n+1} = 1`, built exactly over ℚ and certified
//! p-integral.

mod reduced;
mod verify;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use reduced::{ReducedLaw, ReducedParams};
pub use verify::{verify_fgl_congruences, CongruenceCheck, CongruenceReport};
pub(crate) use verify::pseries_congruences;

use crate::error::{Error, Result};
use crate::scalar::{is_p_integral, is_prime, reduce_mod_p, PLocalRational};
use crate::series::{Layout, Monomial};
use crate::{ModSeries, RationalSeries};

pub const MAX_PRIME: u32 = 17;
pub const DEFAULT_U_PRECISION: u32 = 32;

/// Global parameters: the prime, `n` (height `n + 1`), the formal degree
/// cap `D`, and the `u_n`-precision `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticConfig {
    pub p: u32,
    pub n: u32,
    pub formal_degree_cap: u32,
    pub u_precision: u32,
}

impl ChromaticConfig {
    /// Config with the default caps `D = p^{n+1} + 2` and `M = 32`.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        let top = p.checked_pow(n + 1).ok_or_else(|| Error::InvalidConfig("p^(n+1) overflows".into()))?;
        Self::with_caps(p, n, top + 2, DEFAULT_U_PRECISION)
    }

    pub fn with_caps(p: u32, n: u32, formal_degree_cap: u32, u_precision: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidConfig(format!("p = {p} must be a prime ≤ {MAX_PRIME}")));
        }
        if n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        let top = p
            .checked_pow(n + 1)
            .filter(|&t| t < u16::MAX as u32 / 2)
            .ok_or_else(|| Error::InvalidConfig("p^(n+1) too large".into()))?;
        if formal_degree_cap < top + 1 {
            return Err(Error::InvalidConfig(format!(
                "formal degree cap {formal_degree_cap} must be at least p^(n+1) + 1 = {}",
                top + 1
            )));
        }
        if u_precision == 0 {
            return Err(Error::InvalidConfig("u-precision must be positive".into()));
        }
        Ok(ChromaticConfig { p, n, formal_degree_cap, u_precision })
    }

    /// `p^k`.
    pub fn pk(&self, k: u32) -> u32 {
        self.p.pow(k)
    }

    /// Degree of the distinguished polynomial, `p^{n+1} − p^n`.
    pub fn d(&self) -> u32 {
        self.pk(self.n + 1) - self.pk(self.n)
    }

    pub fn u_names(&self) -> Vec<String> {
        (1..=self.n).map(|k| format!("u{k}")).collect()
    }
}

/// `C_{p^m}(x, y) = (x^{p^m} + y^{p^m} − (x + y)^{p^m}) / p`, built in a
/// layout whose first two formal variables are `x` and `y`.
pub fn c_poly(p: u32, m: u32, layout: &Arc<Layout>) -> Result<RationalSeries> {
    if m == 0 {
        return Err(Error::InvalidConfig("C_{p^m} needs m ≥ 1".into()));
    }
    let (ix, iy) = xy_indices(layout)?;
    let deg = p.pow(m);
    let mut out = RationalSeries::zero(layout);
    let mut binom = BigInt::one();
    let pb = BigInt::from(p);
    for j in 1..deg {
        binom = binom * BigInt::from(deg - j + 1) / BigInt::from(j);
        let c = BigRational::new(-binom.clone(), pb.clone());
        out.add_term(Monomial::var(ix, j as u16).with_exp(iy, (deg - j) as u16), c);
    }
    Ok(out)
}

fn xy_indices(layout: &Layout) -> Result<(usize, usize)> {
    match (layout.index("x"), layout.index("y")) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::VariableMismatch),
    }
}

/// `γ_{i,k} = (i − i^{p^k}) / p`, an integer by Fermat.
pub fn gamma(i: u64, k: u32, p: u32) -> PLocalRational {
    let ib = BigInt::from(i);
    let pow = num_traits::pow(ib.clone(), p.pow(k) as usize);
    BigRational::new(ib - pow, BigInt::from(p))
}

/// Logarithm coefficients `m_j` from `p·m_j = Σ_{i<j} m_i v_{j−i}^{p^i}`,
/// `m_0 = 1`, as series in the coefficient variables of `layout`.
///
/// `gens[k-1]` is `v_k` for `1 ≤ k ≤ n` (`None` means zero); `v_{n+1} = 1`
/// and all later generators vanish.
pub fn log_coefficients(
    p: u32,
    gens: &[Option<RationalSeries>],
    layout: &Arc<Layout>,
    count: usize,
) -> Result<Vec<RationalSeries>> {
    let n = gens.len();
    let v = |k: usize| -> Option<RationalSeries> {
        if (1..=n).contains(&k) {
            gens[k - 1].clone()
        } else if k == n + 1 {
            Some(RationalSeries::one(layout))
        } else {
            None
        }
    };
    let inv_p = BigRational::new(BigInt::one(), BigInt::from(p));
    let mut m: Vec<RationalSeries> = vec![RationalSeries::one(layout)];
    for j in 1..count {
        let mut acc = RationalSeries::zero(layout);
        for (i, mi) in m.iter().enumerate() {
            if let Some(vk) = v(j - i) {
                let term = mi.mul(&vk.pow(p.pow(i as u32))?)?;
                acc = acc.add(&term)?;
            }
        }
        m.push(acc.scale(&inv_p));
    }
    Ok(m)
}

/// `Σ_j m_j x^{p^j}` up to the formal cap of `layout`.
pub fn log_series(p: u32, gens: &[Option<RationalSeries>], layout: &Arc<Layout>, var: &str) -> Result<RationalSeries> {
    let idx = layout.index(var).ok_or(Error::VariableMismatch)?;
    let cap = layout.formal_cap();
    let mut count = 1;
    while p.pow(count as u32) <= cap {
        count += 1;
    }
    let m = log_coefficients(p, gens, layout, count)?;
    let mut out = RationalSeries::zero(layout);
    for (j, mj) in m.iter().enumerate() {
        let x = Monomial::var(idx, p.pow(j as u32) as u16);
        out = out.add(&mj.shift(&x))?;
    }
    Ok(out)
}

/// A p-typical formal group law over `ℤ_(p)[u_1, …, u_n]`, truncated at
/// total degree `D`, with its reduction mod p.
#[derive(Clone, Debug)]
pub struct FormalGroupLaw<const P: u32> {
    pub config: ChromaticConfig,
    /// Layout `[x; u1..un]`.
    pub uni_layout: Arc<Layout>,
    /// Layout `[x, y; u1..un]`.
    pub bi_layout: Arc<Layout>,
    pub log_series: RationalSeries,
    pub exp_series: RationalSeries,
    pub addition: RationalSeries,
    pub reduced_addition: ModSeries<P>,
}

pub(crate) fn certify<const P: u32>(s: &RationalSeries, what: &str) -> Result<ModSeries<P>> {
    for (m, c) in s.terms() {
        if !is_p_integral(c, P) {
            return Err(Error::IntegralityFailure(format!(
                "{what}: coefficient {c} of {} is not {P}-integral",
                s.layout().render_monomial(m)
            )));
        }
    }
    s.try_map(reduce_mod_p::<P>)
}

pub fn build_fgl<const P: u32>(config: &ChromaticConfig) -> Result<FormalGroupLaw<P>> {
    if config.p != P {
        return Err(Error::InvalidConfig(format!("config prime {} used at P = {P}", config.p)));
    }
    let names = config.u_names();
    let u: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let cap = config.formal_degree_cap;
    let uni = Layout::new(&["x"], &u, cap, None)?;
    let bi = Layout::new(&["x", "y"], &u, cap, None)?;
    let gens: Vec<Option<RationalSeries>> =
        u.iter().map(|name| RationalSeries::var(&uni, name).map(Some)).collect::<Result<_>>()?;
    let log = log_series(P, &gens, &uni, "x")?;
    let exp = log.reversion("x")?;
    let y = RationalSeries::var(&bi, "y")?;
    let x = RationalSeries::var(&bi, "x")?;
    let log_x = log.compose(&[("x", &x)])?;
    let log_y = log.compose(&[("x", &y)])?;
    let addition = exp.compose(&[("x", &log_x.add(&log_y)?)])?;
    let reduced_addition = certify::<P>(&addition, "F(x,y)")?;
    Ok(FormalGroupLaw {
        config: config.clone(),
        uni_layout: uni,
        bi_layout: bi,
        log_series: log,
        exp_series: exp,
        addition,
        reduced_addition,
    })
}

impl<const P: u32> FormalGroupLaw<P> {
    /// `F(s, t)` for series `s`, `t` in the univariate layout.
    pub fn add_series(&self, s: &RationalSeries, t: &RationalSeries) -> Result<RationalSeries> {
        self.addition.compose(&[("x", s), ("y", t)])
    }

    /// Reduce a rational series mod p after certifying integrality.
    pub fn reduce(&self, s: &RationalSeries) -> Result<ModSeries<P>> {
        certify::<P>(s, "series")
    }
}

/// The formal inverse `ι(x) = exp(−log x)`, so `F(x, ι(x)) = 0`.
pub fn formal_inverse<const P: u32>(f: &FormalGroupLaw<P>) -> Result<RationalSeries> {
    let neg_log = f.log_series.neg();
    f.exp_series.compose(&[("x", &neg_log)])
}

/// `[i]_F(x)`: `[0] = 0`, `[i] = F([i−1](x), x)`, `[−i] = ι([i](x))`.
pub fn i_series<const P: u32>(f: &FormalGroupLaw<P>, i: i64) -> Result<RationalSeries> {
    let x = RationalSeries::var(&f.uni_layout, "x")?;
    let mut acc = RationalSeries::zero(&f.uni_layout);
    for _ in 0..i.unsigned_abs() {
        acc = f.add_series(&acc, &x)?;
    }
    if i < 0 {
        let inv = formal_inverse(f)?;
        acc = inv.compose(&[("x", &acc)])?;
    }
    Ok(acc)
}

/// `[0], [1], …, [imax]` sharing the recursion.
pub fn i_series_table<const P: u32>(f: &FormalGroupLaw<P>, imax: u64) -> Result<Vec<RationalSeries>> {
    let x = RationalSeries::var(&f.uni_layout, "x")?;
    let mut out = vec![RationalSeries::zero(&f.uni_layout)];
    for i in 1..=imax as usize {
        let next = f.add_series(&out[i - 1], &x)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
