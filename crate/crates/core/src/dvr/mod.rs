//! The discrete valuation ring `R = 𝔽_p[[u]][a]/g(a)` cut out of the
//! p-series by Weierstrass preparation, with `u = u_n`.

pub mod apoly;
mod ring;
mod weierstrass;

pub use ring::{DvrElement, DvrRing};
pub use weierstrass::{
    eisenstein_check, reduce_to_un, weierstrass_prepare, DistinguishedPoly, ReconstructionReport, UnReduction,
    WeierstrassFactorization,
};

use crate::error::Result;
use crate::fgl::{ChromaticConfig, ReducedLaw, ReducedParams};

/// Horizon of `R` when `[p](a)` is known through `a`-degree `A`: the data of
/// `h = [p](a)/a^{p^n}` stops at `a^{A − p^n}`.
pub fn ring_horizon(params: &ReducedParams) -> usize {
    (params.a_cap - params.p.pow(params.n) + 1) as usize
}

/// Factor the p-series of `law` with `rounds` refinement rounds and build `R`.
pub fn prepare<const P: u32>(
    law: &ReducedLaw<P>,
    rounds: usize,
) -> Result<(WeierstrassFactorization<P>, DvrRing<P>)> {
    let params = &law.params;
    let d = params.d() as usize;
    let pole = P.pow(params.n) as usize;
    let wf = weierstrass_prepare(law.p_series(), pole, d, rounds)?;
    let ring = DvrRing::new(&wf.distinguished, ring_horizon(params))?;
    Ok((wf, ring))
}

/// `Ψ = Π_{0<i<p} [i](a)` and the companion product over `[−i](a)`.
#[derive(Clone, Debug)]
pub struct Psi<const P: u32> {
    pub psi: DvrElement<P>,
    pub negative_product: DvrElement<P>,
}

impl<const P: u32> Psi<P> {
    pub fn products_agree(&self, ring: &DvrRing<P>) -> bool {
        ring.equal(&self.psi, &self.negative_product)
    }
}

pub fn compute_psi<const P: u32>(law: &ReducedLaw<P>, ring: &DvrRing<P>) -> Result<Psi<P>> {
    let mut psi = ring.one();
    let mut negative_product = ring.one();
    for i in 1..P as i64 {
        psi = ring.mul(&psi, &ring.from_series(law.i_series(i)?)?);
        negative_product = ring.mul(&negative_product, &ring.from_series(law.i_series(-i)?)?);
    }
    Ok(Psi { psi, negative_product })
}

/// The reduced law, its factorization, the ring `R` and `Ψ` for one
/// configuration.
#[derive(Clone, Debug)]
pub struct DvrSetup<const P: u32> {
    pub config: ChromaticConfig,
    pub law: ReducedLaw<P>,
    pub factorization: WeierstrassFactorization<P>,
    pub ring: DvrRing<P>,
    pub psi: Psi<P>,
}

impl<const P: u32> DvrSetup<P> {
    pub fn build(config: &ChromaticConfig, params: &ReducedParams) -> Result<Self> {
        let law = ReducedLaw::<P>::build(params)?;
        let (factorization, ring) = prepare(&law, config.u_precision as usize)?;
        let psi = compute_psi(&law, &ring)?;
        Ok(DvrSetup { config: config.clone(), law, factorization, ring, psi })
    }

    pub fn for_config(config: &ChromaticConfig) -> Result<Self> {
        Self::build(config, &ReducedParams::for_config(config))
    }
}

#[cfg(test)]
pub(crate) mod tests;
