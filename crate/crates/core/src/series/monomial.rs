use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// Exponent tuple, indexed by variable position in a [`Layout`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(idx: usize, e: u16) -> Self {
        let mut m = Self::one();
        m.0[idx] = e;
        m
    }

    pub fn exp(&self, idx: usize) -> u16 {
        self.0[idx]
    }

    pub fn with_exp(mut self, idx: usize, e: u16) -> Self {
        self.0[idx] = e;
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a + b;
        }
        Monomial(out)
    }
}

/// Variable names and truncation caps shared by every series in a
/// computation.
///
/// Variables split into two groups: formal variables (`x`, `y`, `z`, `a`),
/// truncated jointly at total degree `> formal_cap`, and coefficient
/// variables (`u1`, …), each truncated at exponent `>= coeff_cap` when a cap
/// is set. Formal variables always come first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Layout {
    names: Vec<String>,
    n_formal: usize,
    formal_cap: u32,
    coeff_cap: Option<u32>,
}

impl Layout {
    pub fn new(
        formal: &[&str],
        coeff: &[&str],
        formal_cap: u32,
        coeff_cap: Option<u32>,
    ) -> Result<Arc<Layout>> {
        let names: Vec<String> = formal.iter().chain(coeff.iter()).map(|s| s.to_string()).collect();
        if names.len() > MAX_VARS {
            return Err(Error::InvalidConfig(format!(
                "at most {MAX_VARS} variables supported, got {}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidConfig(format!("duplicate variable {n}")));
            }
        }
        Ok(Arc::new(Layout { names, n_formal: formal.len(), formal_cap, coeff_cap }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n_vars(&self) -> usize {
        self.names.len()
    }

    pub fn n_formal(&self) -> usize {
        self.n_formal
    }

    pub fn formal_cap(&self) -> u32 {
        self.formal_cap
    }

    pub fn coeff_cap(&self) -> Option<u32> {
        self.coeff_cap
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_formal(&self, idx: usize) -> bool {
        idx < self.n_formal
    }

    pub fn formal_degree(&self, m: &Monomial) -> u32 {
        m.0[..self.n_formal].iter().map(|&e| e as u32).sum()
    }

    /// True iff the monomial survives truncation.
    pub fn admits(&self, m: &Monomial) -> bool {
        if self.formal_degree(m) > self.formal_cap {
            return false;
        }
        match self.coeff_cap {
            Some(cap) => m.0[self.n_formal..self.names.len()].iter().all(|&e| (e as u32) < cap),
            None => true,
        }
    }

    pub fn with_caps(&self, formal_cap: u32, coeff_cap: Option<u32>) -> Arc<Layout> {
        Arc::new(Layout { formal_cap, coeff_cap, ..self.clone() })
    }

    /// Canonical order key: total formal degree ascending, then formal
    /// exponents lexicographically descending (so `x` precedes `y`), then
    /// coefficient exponents ascending.
    pub fn order_key(&self, m: &Monomial) -> (u32, Vec<std::cmp::Reverse<u16>>, Vec<u16>) {
        (
            self.formal_degree(m),
            m.0[..self.n_formal].iter().map(|&e| std::cmp::Reverse(e)).collect(),
            m.0[self.n_formal..self.names.len()].to_vec(),
        )
    }

    /// `u1*x^2*y` style rendering; coefficient variables first. Empty for
    /// the unit monomial.
    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        let order = (self.n_formal..self.names.len()).chain(0..self.n_formal);
        for idx in order {
            match m.0[idx] {
                0 => {}
                1 => parts.push(self.names[idx].clone()),
                e => parts.push(format!("{}^{}", self.names[idx], e)),
            }
        }
        parts.join("*")
    }
}
