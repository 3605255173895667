//! Sparse truncated multivariate series over an exact scalar ring.

mod monomial;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

pub use monomial::{Layout, Monomial, MAX_VARS};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A polynomial truncated at the caps of its [`Layout`]. Zero coefficients
/// are never stored and no stored term exceeds a cap.
#[derive(Clone)]
pub struct MultiSeries<S> {
    layout: Arc<Layout>,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> PartialEq for MultiSeries<S> {
    fn eq(&self, other: &Self) -> bool {
        *self.layout == *other.layout && self.terms == other.terms
    }
}

impl<S: Scalar> MultiSeries<S> {
    pub fn zero(layout: &Arc<Layout>) -> Self {
        MultiSeries { layout: layout.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(layout: &Arc<Layout>, c: S) -> Self {
        Self::monomial(layout, Monomial::one(), c)
    }

    pub fn one(layout: &Arc<Layout>) -> Self {
        Self::constant(layout, S::one())
    }

    pub fn monomial(layout: &Arc<Layout>, m: Monomial, c: S) -> Self {
        let mut s = Self::zero(layout);
        s.add_term(m, c);
        s
    }

    pub fn var(layout: &Arc<Layout>, name: &str) -> Result<Self> {
        let idx = layout.index(name).ok_or(Error::VariableMismatch)?;
        Ok(Self::monomial(layout, Monomial::var(idx, 1), S::one()))
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c·m` in place, respecting caps and dropping zeros.
    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() || !self.layout.admits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.layout, &other.layout) || *self.layout == *other.layout {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MultiSeries {
            layout: self.layout.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(&self.layout);
        for (m, c) in &self.terms {
            out.add_term(*m, c.mul_ref(k));
        }
        out
    }

    /// Multiply by a monomial.
    pub fn shift(&self, by: &Monomial) -> Self {
        let mut out = Self::zero(&self.layout);
        for (m, c) in &self.terms {
            out.add_term(m.mul(by), c.clone());
        }
        out
    }

    /// Product truncated at the caps.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let layout = &self.layout;
        let cap = layout.formal_cap();
        let mut lhs: Vec<(u32, &Monomial, &S)> =
            self.terms.iter().map(|(m, c)| (layout.formal_degree(m), m, c)).collect();
        let mut rhs: Vec<(u32, &Monomial, &S)> =
            other.terms.iter().map(|(m, c)| (layout.formal_degree(m), m, c)).collect();
        lhs.sort_by_key(|t| t.0);
        rhs.sort_by_key(|t| t.0);
        let mut acc: HashMap<Monomial, S> = HashMap::new();
        for &(da, ma, ca) in &lhs {
            for &(db, mb, cb) in &rhs {
                if da + db > cap {
                    break;
                }
                let m = ma.mul(mb);
                if !layout.admits(&m) {
                    continue;
                }
                acc.entry(m).or_insert_with(S::zero).mul_add_assign(ca, cb);
            }
        }
        Ok(MultiSeries {
            layout: layout.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut cache = PowCache::new(self);
        Ok(cache.pow(e as u16)?.clone())
    }

    /// Re-truncate at new caps on the same variables.
    pub fn truncate(&self, layout: &Arc<Layout>) -> Result<Self> {
        if layout.names() != self.layout.names() {
            return Err(Error::VariableMismatch);
        }
        let mut out = Self::zero(layout);
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Move into another layout, matching variables by name. Variables absent
    /// from the target must not occur.
    pub fn relayout(&self, layout: &Arc<Layout>) -> Result<Self> {
        let map: Vec<Option<usize>> =
            self.layout.names().iter().map(|n| layout.index(n)).collect();
        let mut out = Self::zero(layout);
        for (m, c) in &self.terms {
            let mut t = Monomial::one();
            for (i, target) in map.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match target {
                    Some(j) => t = t.with_exp(*j, e),
                    None => return Err(Error::VariableMismatch),
                }
            }
            out.add_term(t, c.clone());
        }
        Ok(out)
    }

    /// Substitute `name ↦ 0`.
    pub fn substitute_zero(&self, name: &str) -> Result<Self> {
        let idx = self.layout.index(name).ok_or(Error::VariableMismatch)?;
        Ok(MultiSeries {
            layout: self.layout.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(idx) == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        })
    }

    /// Terms of total formal degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        MultiSeries {
            layout: self.layout.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.layout.formal_degree(m) == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The part free of formal variables, as a series in the same layout.
    pub fn formal_constant_term(&self) -> Self {
        self.homogeneous_part(0)
    }

    /// Coefficient of `var^e` (other formal variables absent), as a series in
    /// the coefficient variables.
    pub fn coefficient_of(&self, var: &str, e: u16) -> Result<Self> {
        let idx = self.layout.index(var).ok_or(Error::VariableMismatch)?;
        let nf = self.layout.n_formal();
        let mut out = Self::zero(&self.layout);
        for (m, c) in &self.terms {
            let only_var = (0..nf).all(|i| if i == idx { m.exp(i) == e } else { m.exp(i) == 0 });
            if only_var {
                out.add_term(m.with_exp(idx, 0), c.clone());
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, var: &str) -> Result<Self> {
        let idx = self.layout.index(var).ok_or(Error::VariableMismatch)?;
        let mut out = Self::zero(&self.layout);
        for (m, c) in &self.terms {
            let e = m.exp(idx);
            if e > 0 {
                out.add_term(m.with_exp(idx, e - 1), c.clone() * S::from_i64(e as i64));
            }
        }
        Ok(out)
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<MultiSeries<T>> {
        let mut out = MultiSeries::<T>::zero(&self.layout);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Substitute series for variables. All substituted series must share one
    /// layout, which becomes the layout of the result; variables of `self`
    /// that are not substituted are matched by name in that layout.
    pub fn compose(&self, subs: &[(&str, &MultiSeries<S>)]) -> Result<Self> {
        let target = match subs.first() {
            Some((_, s)) => s.layout.clone(),
            None => self.layout.clone(),
        };
        let n = self.layout.n_vars();
        let mut sub_of: Vec<Option<usize>> = vec![None; n];
        for (k, (name, s)) in subs.iter().enumerate() {
            if *s.layout != *target {
                return Err(Error::VariableMismatch);
            }
            let idx = self.layout.index(name).ok_or(Error::VariableMismatch)?;
            if self.layout.is_formal(idx) && !s.formal_constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm(name.to_string()));
            }
            sub_of[idx] = Some(k);
        }
        let mut keep: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            if sub_of[i].is_none() {
                let j = target.index(&self.layout.names()[i]);
                if j.is_none() && self.terms.keys().any(|m| m.exp(i) != 0) {
                    return Err(Error::VariableMismatch);
                }
                keep[i] = j;
            }
        }

        // Group outer terms by their substituted exponents so each product of
        // powers is formed once.
        let mut groups: BTreeMap<Vec<u16>, Vec<(Monomial, &S)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u16> = subs
                .iter()
                .map(|(name, _)| m.exp(self.layout.index(name).unwrap()))
                .collect();
            let mut rest = Monomial::one();
            for (i, slot) in keep.iter().enumerate().take(n) {
                if let Some(j) = *slot {
                    rest = rest.with_exp(j, m.exp(i));
                }
            }
            groups.entry(key).or_default().push((rest, c));
        }

        let mut caches: Vec<PowCache<S>> = subs.iter().map(|(_, s)| PowCache::new(s)).collect();
        let mut acc: HashMap<Monomial, S> = HashMap::new();
        for (key, members) in &groups {
            let mut prod = MultiSeries::one(&target);
            for (k, &e) in key.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(caches[k].pow(e)?)?;
                }
            }
            for (rest, c) in members {
                for (m, pc) in &prod.terms {
                    let t = m.mul(rest);
                    if target.admits(&t) {
                        acc.entry(t).or_insert_with(S::zero).mul_add_assign(c, pc);
                    }
                }
            }
        }
        Ok(MultiSeries {
            layout: target,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Multiplicative inverse up to the caps. The constant coefficient must be
    /// a unit scalar and the caps must make the remaining part nilpotent.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.coeff(&Monomial::one()).inverse().ok_or(Error::NonUnitConstantTerm)?;
        let one = Self::one(&self.layout);
        let mut t = Self::constant(&self.layout, c0);
        for _ in 0..64 {
            let err = one.sub(&self.mul(&t)?)?;
            if err.is_zero() {
                return Ok(t);
            }
            t = t.add(&t.mul(&err)?)?;
        }
        Err(Error::PrecisionExhausted(
            "unit inverse does not converge under the layout caps".into(),
        ))
    }

    /// Solve `self(s) = target` for `s`, where `self` is a series in the
    /// single formal variable `var` with zero constant term and unit linear
    /// coefficient, and `target` has zero formal constant term.
    pub fn solve_composition(&self, var: &str, target: &Self) -> Result<Self> {
        self.check(target)?;
        let idx = self.layout.index(var).ok_or(Error::VariableMismatch)?;
        if !self.layout.is_formal(idx) {
            return Err(Error::VariableMismatch);
        }
        if !self.formal_constant_term().is_zero() || !target.formal_constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm(var.to_string()));
        }
        let lin = self.coefficient_of(var, 1)?;
        if lin.coeff(&Monomial::one()).inverse().is_none() {
            return Err(Error::NonUnitLinearCoefficient);
        }
        let full = self.layout.formal_cap();
        let coeff_cap = self.layout.coeff_cap();
        let deriv = self.derivative(var)?;

        let mut prec = full.min(1);
        let mut layout = self.layout.with_caps(prec, coeff_cap);
        let mut s = target.truncate(&layout)?.mul(&lin.truncate(&layout)?.invert_unit()?)?;
        let mut settled = 0;
        while settled < 2 {
            prec = (prec * 2).clamp(1, full);
            layout = self.layout.with_caps(prec, coeff_cap);
            s = s.truncate(&layout)?;
            let outer = self.truncate(&layout)?;
            let value = outer.compose(&[(var, &s)])?;
            let residual = value.sub(&target.truncate(&layout)?)?;
            if residual.is_zero() {
                if prec == full {
                    return s.truncate(&self.layout);
                }
                continue;
            }
            let slope = deriv.truncate(&layout)?.compose(&[(var, &s)])?;
            s = s.sub(&residual.mul(&slope.invert_unit()?)?)?;
            if prec == full {
                settled += 1;
            }
        }
        let check = self.compose(&[(var, &s)])?.sub(target)?;
        if check.is_zero() {
            Ok(s)
        } else {
            Err(Error::ResidualMismatch("Newton iteration did not converge".into()))
        }
    }

    /// Compositional inverse in the formal variable `var`.
    pub fn reversion(&self, var: &str) -> Result<Self> {
        let x = Self::var(&self.layout, var)?;
        self.solve_composition(var, &x)
    }

    /// Canonical text rendering, e.g. `x + y - u1*x*y`.
    pub fn render(&self) -> String {
        let mut entries: Vec<(&Monomial, &S)> = self.terms.iter().collect();
        entries.sort_by_key(|(m, _)| self.layout.order_key(m));
        let mut out = String::new();
        for (k, (m, c)) in entries.iter().enumerate() {
            let mono = self.layout.render_monomial(m);
            let cs = c.to_string();
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if k == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for MultiSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<S: Scalar> fmt::Display for MultiSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Memoized powers of one series (square-and-multiply with shared results).
struct PowCache<'a, S> {
    base: &'a MultiSeries<S>,
    memo: HashMap<u16, MultiSeries<S>>,
}

impl<'a, S: Scalar> PowCache<'a, S> {
    fn new(base: &'a MultiSeries<S>) -> Self {
        let mut memo = HashMap::new();
        memo.insert(0, MultiSeries::one(&base.layout));
        memo.insert(1, base.clone());
        PowCache { base, memo }
    }

    fn pow(&mut self, e: u16) -> Result<&MultiSeries<S>> {
        if !self.memo.contains_key(&e) {
            let value = if e.is_multiple_of(2) {
                let half = self.pow(e / 2)?.clone();
                half.mul(&half)?
            } else {
                let prev = self.pow(e - 1)?.clone();
                prev.mul(self.base)?
            };
            self.memo.insert(e, value);
        }
        Ok(&self.memo[&e])
    }
}

#[cfg(test)]
mod tests;
