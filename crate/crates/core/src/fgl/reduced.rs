//! The law after killing `p, u_1, …, u_{n−1}`, in one variable `a` over
//! `𝔽_p[[u]]` with `u = u_n`.
//!
//! The full bivariate law is never expanded to the degrees needed here.
//! Instead `[k](a)` comes from solving `L([k](a)) = k·L(a)` and the addition
//! is kept as rows `F(x, y) = Σ_i x^i F_i(y)`, obtained from
//! `F(x, y) = Σ_r L(x)^r / r! · E_r(y)` with `E_0 = y`,
//! `E_r = E_{r−1}'(y) / L'(y)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{certify, log_series, ChromaticConfig};
use crate::error::{Error, Result};
use crate::series::Layout;
use crate::{ModSeries, RationalSeries};

/// Caps of the reduced stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedParams {
    pub p: u32,
    pub n: u32,
    /// Highest `x`-degree used by the isogeny computation.
    pub x_cap: u32,
    /// Highest `a`-degree kept in every series.
    pub a_cap: u32,
    /// Number of `u`-coefficients kept (`u^t`, `t < u_cap`).
    pub u_cap: u32,
}

impl ReducedParams {
    /// Default `x`-cap `p^{n+1} + p + 2` and an `a`-cap large enough for the
    /// isogeny divisions and for `N̄` of any `z` at `u`-precision `M`.
    pub fn for_config(config: &ChromaticConfig) -> Self {
        let (p, n) = (config.p, config.n);
        let x_cap = p.pow(n + 1) + p + 2;
        let a_cap = Self::default_a_cap(p, n, x_cap, config.u_precision);
        Self::with_caps(config, x_cap, a_cap)
    }

    pub fn default_a_cap(p: u32, n: u32, x_cap: u32, u_precision: u32) -> u32 {
        let d = p.pow(n + 1) - p.pow(n);
        (2 * x_cap * (p - 1) + 3 * d + p.pow(n)).max(u_precision * (p - 1) + 2 * d)
    }

    pub fn with_caps(config: &ChromaticConfig, x_cap: u32, a_cap: u32) -> Self {
        let d = config.d();
        let u_cap = config.u_precision.max((a_cap + 1).div_ceil(d) + 1);
        ReducedParams { p: config.p, n: config.n, x_cap, a_cap, u_cap }
    }

    pub fn d(&self) -> u32 {
        self.p.pow(self.n + 1) - self.p.pow(self.n)
    }

    /// Layout `[a; u]` with caps `a_cap` and `u_cap`.
    pub fn layout(&self) -> Result<Arc<Layout>> {
        Layout::new(&["a"], &["u"], self.a_cap, Some(self.u_cap))
    }
}

/// The reduced law: `[k](a)` for `k = p` and `0 < |k| < p`, and the rows
/// `F_i(y)` for `i ≤ x_cap`, all with coefficients in `𝔽_p[u]`.
#[derive(Clone, Debug)]
pub struct ReducedLaw<const P: u32> {
    pub params: ReducedParams,
    pub layout: Arc<Layout>,
    pub log: RationalSeries,
    i_series: BTreeMap<i64, ModSeries<P>>,
    pub rows: Vec<ModSeries<P>>,
}

fn rational_log(params: &ReducedParams, layout: &Arc<Layout>) -> Result<RationalSeries> {
    let mut gens: Vec<Option<RationalSeries>> = vec![None; params.n as usize - 1];
    gens.push(Some(RationalSeries::var(layout, "u")?));
    log_series(params.p, &gens, layout, "a")
}

impl<const P: u32> ReducedLaw<P> {
    pub fn build(params: &ReducedParams) -> Result<Self> {
        if params.p != P {
            return Err(Error::InvalidConfig(format!("reduced stage for p = {} used at P = {P}", params.p)));
        }
        let layout = params.layout()?;
        let log = rational_log(params, &layout)?;
        let mut i_series = BTreeMap::new();
        let p = P as i64;
        for k in (1 - p..p).chain(std::iter::once(p)) {
            let target = log.scale(&BigRational::from_integer(BigInt::from(k)));
            let s = log.solve_composition("a", &target)?;
            i_series.insert(k, certify::<P>(&s, &format!("[{k}](a)"))?);
        }
        let rows = addition_rows::<P>(params)?;
        Ok(ReducedLaw { params: params.clone(), layout, log, i_series, rows })
    }

    /// `[k](a)` for `k = p` or `0 ≤ |k| < p`.
    pub fn i_series(&self, k: i64) -> Result<&ModSeries<P>> {
        self.i_series
            .get(&k)
            .ok_or_else(|| Error::InvalidConfig(format!("[{k}](a) is not kept by the reduced law")))
    }

    pub fn p_series(&self) -> &ModSeries<P> {
        &self.i_series[&(P as i64)]
    }
}

/// Rows `F_i(y)` (`0 ≤ i ≤ x_cap`) of the reduced addition, in the variable
/// `a` standing for `y`.
fn addition_rows<const P: u32>(params: &ReducedParams) -> Result<Vec<ModSeries<P>>> {
    let x_cap = params.x_cap;
    // Each derivative loses one degree, so work x_cap degrees higher.
    let work = Layout::new(&["a"], &["u"], params.a_cap + x_cap, Some(params.u_cap))?;
    let log = rational_log(params, &work)?;
    let slope_inv = log.derivative("a")?.invert_unit()?;

    let mut e = vec![RationalSeries::var(&work, "a")?];
    for r in 1..=x_cap as usize {
        let next = e[r - 1].derivative("a")?.mul(&slope_inv)?;
        e.push(next);
    }

    // [x^i] L(x)^r / r!, computed at x-degree x_cap.
    let short = work.with_caps(x_cap, Some(params.u_cap));
    let log_short = log.truncate(&short)?;
    let mut power = RationalSeries::one(&short);
    let mut factorial = BigRational::one();
    let mut weights: Vec<RationalSeries> = Vec::new();
    for r in 0..=x_cap {
        if r > 0 {
            power = power.mul(&log_short)?;
            factorial *= BigRational::from_integer(BigInt::from(r));
        }
        weights.push(power.scale(&factorial.recip()));
    }

    let out_layout = params.layout()?;
    let mut rows = Vec::with_capacity(x_cap as usize + 1);
    for i in 0..=x_cap as u16 {
        let mut row = RationalSeries::zero(&work);
        for (r, w) in weights.iter().enumerate().take(i as usize + 1) {
            let c = w.coefficient_of("a", i)?;
            if c.is_zero() {
                continue;
            }
            row = row.add(&c.relayout(&work)?.mul(&e[r])?)?;
        }
        let row = row.truncate(&out_layout)?;
        rows.push(certify::<P>(&row, &format!("row F_{i}(y)"))?);
    }
    Ok(rows)
}
