//! Weight descent: apply `N̄`, read off the coefficient of smallest weight,
//! and repeat until a unit appears.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dvr::{DvrElement, DvrRing};
use crate::error::{Error, Result};
use crate::{Fp, USeries, WeightValue};

/// `u`-adic valuation of `z`, `Infinite` for zero up to precision.
pub fn weight_of<const P: u32>(z: &USeries<P>) -> WeightValue {
    z.weight()
}

/// `Σ_t z_t N̄(u)^t` in `R`. The unknown tail of `z` starts at
/// `u^{precision}`, so the image is known below `precision · val(N̄(u))`.
pub fn apply_nbar<const P: u32>(ring: &DvrRing<P>, z: &USeries<P>, nbar_un: &DvrElement<P>) -> DvrElement<P> {
    let mut acc = ring.zero();
    for c in z.coeffs().iter().rev() {
        acc = ring.mul(&acc, nbar_un);
        if c.residue() != 0 {
            let term = ring.from_useries(&USeries::monomial(*c, 0, ring.precision()));
            acc = ring.add(&acc, &term);
        }
    }
    let tail = nbar_un.valuation().map_or(usize::MAX, |v| v.saturating_mul(z.precision()));
    ring.with_horizon(&acc, tail)
}

/// Coefficient of `a^i`, at the `u`-precision its horizon supports.
pub fn phi_extract<const P: u32>(ring: &DvrRing<P>, r: &DvrElement<P>, i: usize) -> Result<USeries<P>> {
    let c = ring.phi(r, i)?;
    let known = r.horizon().saturating_sub(i).div_ceil(ring.d());
    Ok(c.truncated(known))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStep {
    pub z: String,
    pub weight: String,
    pub image_weight: String,
    pub chosen_index: usize,
    pub extracted: String,
    pub extracted_weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentTrace {
    pub initial: String,
    pub initial_weight: String,
    pub steps: Vec<DescentStep>,
    pub terminal: String,
    pub terminal_weight: String,
    /// Steps allowed by the bound `wt(z)·d`.
    pub step_bound: u64,
    pub strictly_decreasing: bool,
}

/// One step: `r = N̄(z)`, then the coefficient `φ_i(r)` of least weight,
/// ties going to the smallest `i`.
pub fn descent_step<const P: u32>(
    ring: &DvrRing<P>,
    nbar_un: &DvrElement<P>,
    z: &USeries<P>,
) -> Result<(USeries<P>, usize)> {
    let w = z
        .valuation()
        .ok_or_else(|| Error::Precondition("z vanishes up to its precision".into()))?;
    if w == 0 {
        return Err(Error::Precondition("z is a unit; no step is taken".into()));
    }
    let r = apply_nbar(ring, z, nbar_un);
    if r.is_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "N̄(z) vanishes below horizon {} for z of weight {w}",
            r.horizon()
        )));
    }
    let mut best: Option<(usize, usize, USeries<P>)> = None;
    for i in 0..ring.d() {
        let q = phi_extract(ring, &r, i)?;
        if let Some(t) = q.valuation() {
            if best.as_ref().is_none_or(|(bt, _, _)| t < *bt) {
                best = Some((t, i, q));
            }
        }
    }
    let (t, i, q) = best.expect("nonzero element has a nonzero coefficient");
    if t >= w {
        return Err(Error::WeightNotReduced(w.to_string(), t.to_string()));
    }
    Ok((q, i))
}

pub fn descent_run<const P: u32>(ring: &DvrRing<P>, nbar_un: &DvrElement<P>, z: &USeries<P>) -> Result<DescentTrace> {
    let w0 = z
        .valuation()
        .ok_or_else(|| Error::Precondition("descent needs a nonzero z".into()))?;
    let d = ring.d() as u64;
    let bound = w0 as u64 * d;
    let mut steps = Vec::new();
    let mut current = z.clone();
    let mut strictly_decreasing = true;
    while current.valuation().is_some_and(|w| w >= 1) {
        if steps.len() as u64 >= bound {
            return Err(Error::WeightNotReduced(
                current.weight().render(),
                format!("step bound {bound} reached"),
            ));
        }
        let r_weight = apply_nbar(ring, &current, nbar_un).weight();
        let (next, index) = descent_step(ring, nbar_un, &current)?;
        strictly_decreasing &= next.weight() < current.weight();
        steps.push(DescentStep {
            z: current.render(),
            weight: current.weight().render(),
            image_weight: r_weight.render(),
            chosen_index: index,
            extracted: next.render(),
            extracted_weight: next.weight().render(),
        });
        current = next;
    }
    Ok(DescentTrace {
        initial: z.render(),
        initial_weight: z.weight().render(),
        steps,
        terminal: current.render(),
        terminal_weight: current.weight().render(),
        step_bound: bound,
        strictly_decreasing,
    })
}

impl DescentTrace {
    /// Weights strictly decrease, each extracted value is the next `z`,
    /// the terminal has weight 0 and the step bound holds.
    pub fn invariants_hold(&self) -> bool {
        let chained = self.steps.windows(2).all(|w| w[0].extracted == w[1].z);
        let last = self.steps.last().map_or(&self.initial, |s| &s.extracted);
        self.strictly_decreasing
            && chained
            && *last == self.terminal
            && self.terminal_weight == "0"
            && self.steps.len() as u64 <= self.step_bound
    }
}

/// Random `z` with `u`-adic weight in `1..=max_weight`.
pub fn random_z<const P: u32>(rng: &mut impl Rng, max_weight: usize, precision: usize) -> USeries<P> {
    let w = rng.gen_range(1..=max_weight.min(precision - 1));
    let mut coeffs = vec![Fp::<P>::new(0); precision];
    coeffs[w] = Fp::new(rng.gen_range(1..P));
    for c in coeffs.iter_mut().skip(w + 1) {
        *c = Fp::new(rng.gen_range(0..P));
    }
    USeries::from_coeffs(coeffs, precision)
}

/// Outcome of testing the two readings of the weight of a sum on pairs of
/// different weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSumCheck {
    pub samples: usize,
    pub min_rule_holds: usize,
    pub additive_rule_holds: usize,
}

pub fn weight_sum_rules<const P: u32>(pairs: &[(USeries<P>, USeries<P>)]) -> WeightSumCheck {
    let mut out = WeightSumCheck { samples: 0, min_rule_holds: 0, additive_rule_holds: 0 };
    for (x, y) in pairs {
        let (wx, wy) = (x.valuation(), y.valuation());
        let (Some(a), Some(b)) = (wx, wy) else { continue };
        if a == b {
            continue;
        }
        out.samples += 1;
        let ws = x.add_trunc(y).valuation();
        if ws == Some(a.min(b)) {
            out.min_rule_holds += 1;
        }
        if ws == Some(a + b) {
            out.additive_rule_holds += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests;
