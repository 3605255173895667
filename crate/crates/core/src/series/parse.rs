use std::str::FromStr;
use std::sync::Arc;

use super::{Layout, Monomial, MultiSeries};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

impl<S: Scalar + FromStr> MultiSeries<S> {
    /// Parse the canonical rendering produced by [`MultiSeries::render`].
    pub fn parse(layout: &Arc<Layout>, text: &str) -> Result<Self> {
        let mut out = Self::zero(layout);
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        // Split on the " + " / " - " separators emitted by render.
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut rest = text;
        let mut negative = false;
        loop {
            let plus = rest.find(" + ");
            let minus = rest.find(" - ");
            let next = match (plus, minus) {
                (Some(a), Some(b)) => Some(if a < b { (a, false) } else { (b, true) }),
                (Some(a), None) => Some((a, false)),
                (None, Some(b)) => Some((b, true)),
                (None, None) => None,
            };
            match next {
                Some((pos, neg)) => {
                    pieces.push((negative, &rest[..pos]));
                    negative = neg;
                    rest = &rest[pos + 3..];
                }
                None => {
                    pieces.push((negative, rest));
                    break;
                }
            }
        }
        for (neg, piece) in pieces {
            let (mut c, m) = parse_term::<S>(layout, piece)?;
            if neg {
                c = -c;
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn parse_term<S: Scalar + FromStr>(layout: &Layout, piece: &str) -> Result<(S, Monomial)> {
    let mut coeff = S::one();
    let mut body = piece.trim();
    if let Some(stripped) = body.strip_prefix('-') {
        coeff = -coeff;
        body = stripped;
    }
    let mut m = Monomial::one();
    for factor in body.split('*') {
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u16>().map_err(|e| Error::Parse(e.to_string()))?),
            None => (factor, 1),
        };
        match layout.index(name) {
            Some(idx) => m = m.with_exp(idx, m.exp(idx) + e),
            None => {
                let c = S::from_str(factor)
                    .map_err(|_| Error::Parse(format!("bad factor `{factor}` in `{piece}`")))?;
                coeff = coeff * c;
            }
        }
    }
    Ok((coeff, m))
}
