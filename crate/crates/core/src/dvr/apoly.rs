//! Dense polynomials in `a` with `𝔽_p[[u]]` coefficients, truncated in both
//! variables. Index `i` holds the coefficient of `a^i`.

use crate::error::{Error, Result};
use crate::series::{Layout, Monomial};
use crate::{Fp, ModSeries, USeries};

pub type APoly<const P: u32> = Vec<USeries<P>>;

pub fn zero<const P: u32>(len: usize, m: usize) -> APoly<P> {
    vec![USeries::zero(m); len]
}

pub fn add<const P: u32>(x: &[USeries<P>], y: &[USeries<P>]) -> APoly<P> {
    let len = x.len().max(y.len());
    (0..len)
        .map(|i| match (x.get(i), y.get(i)) {
            (Some(a), Some(b)) => a.add_trunc(b),
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

pub fn neg<const P: u32>(x: &[USeries<P>]) -> APoly<P> {
    x.iter().map(USeries::neg).collect()
}

/// Product truncated to `len` coefficients.
pub fn mul<const P: u32>(x: &[USeries<P>], y: &[USeries<P>], len: usize) -> APoly<P> {
    let m = x.first().or(y.first()).map_or(0, |s| s.precision());
    let mut out = zero(len, m);
    for (i, a) in x.iter().enumerate().take(len) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(len - i) {
            if !b.is_zero() {
                out[i + j] = out[i + j].add_trunc(&a.mul_trunc(b));
            }
        }
    }
    out
}

/// Inverse of a series whose `a^0` coefficient is a unit of `𝔽_p[[u]]`.
pub fn inverse<const P: u32>(x: &[USeries<P>], len: usize) -> Result<APoly<P>> {
    let c0 = x.first().ok_or(Error::NonUnitConstantTerm)?.inverse()?;
    let m = c0.precision();
    let mut inv: APoly<P> = zero(len, m);
    if len == 0 {
        return Ok(inv);
    }
    inv[0] = c0.clone();
    for k in 1..len {
        let mut acc = USeries::zero(m);
        for j in 1..=k.min(x.len() - 1) {
            acc = acc.add_trunc(&x[j].mul_trunc(&inv[k - j]));
        }
        inv[k] = acc.mul_trunc(&c0).neg();
    }
    Ok(inv)
}

/// Dense form of a series in the layout `[a; u]`: `len` coefficients, each at
/// `u`-precision `m`.
pub fn from_series<const P: u32>(s: &ModSeries<P>, len: usize, m: usize) -> Result<APoly<P>> {
    let layout = s.layout();
    let ia = layout.index("a").ok_or(Error::VariableMismatch)?;
    let iu = layout.index("u");
    let mut out = zero(len, m);
    for (mono, c) in s.terms() {
        let i = mono.exp(ia) as usize;
        let t = iu.map_or(0, |k| mono.exp(k) as usize);
        if i < len && t < m {
            let v = out[i].coeff(t) + *c;
            out[i].set_coeff(t, v);
        }
    }
    Ok(out)
}

/// Sparse form in `layout`, which must have variables `a` and `u`.
pub fn to_series<const P: u32>(x: &[USeries<P>], layout: &std::sync::Arc<Layout>) -> Result<ModSeries<P>> {
    let ia = layout.index("a").ok_or(Error::VariableMismatch)?;
    let iu = layout.index("u").ok_or(Error::VariableMismatch)?;
    let mut out = ModSeries::<P>::zero(layout);
    for (i, c) in x.iter().enumerate() {
        for (t, v) in c.coeffs().iter().enumerate() {
            if *v != Fp::new(0) {
                out.add_term(Monomial::var(ia, i as u16).with_exp(iu, t as u16), *v);
            }
        }
    }
    Ok(out)
}

/// Canonical rendering `c*u^t*a^i`, ordered by `a`-degree then `u`-degree.
pub fn render<const P: u32>(x: &[USeries<P>]) -> String {
    let mut terms = Vec::new();
    for (i, c) in x.iter().enumerate() {
        for (t, v) in c.coeffs().iter().enumerate() {
            if v.residue() == 0 {
                continue;
            }
            let u = match t {
                0 => None,
                1 => Some("u".to_string()),
                t => Some(format!("u^{t}")),
            };
            let a = match i {
                0 => None,
                1 => Some("a".to_string()),
                i => Some(format!("a^{i}")),
            };
            let mono: Vec<String> = [u, a].into_iter().flatten().collect();
            terms.push(match (v.residue(), mono.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => mono.join("*"),
                (c, false) => format!("{c}*{}", mono.join("*")),
            });
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
