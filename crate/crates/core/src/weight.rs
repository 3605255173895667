use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

/// Weight of an element: a valuation rescaled by `d`, so `wt(u_n) = 1` and
/// `wt(a) = 1/d`. `Infinite` marks zero up to the precision horizon.
#[derive(Clone, Copy, Debug)]
pub enum WeightValue {
    Finite { numerator: u64, denominator: u64 },
    Infinite,
}

impl WeightValue {
    pub fn finite(numerator: u64, denominator: u64) -> Self {
        assert!(denominator > 0);
        WeightValue::Finite { numerator, denominator }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, WeightValue::Infinite)
    }

    /// Raw valuation (numerator over the stored denominator).
    pub fn valuation(&self) -> Option<u64> {
        match *self {
            WeightValue::Finite { numerator, .. } => Some(numerator),
            WeightValue::Infinite => None,
        }
    }

    /// `(num, den)` in lowest terms.
    pub fn reduced(&self) -> Option<(u64, u64)> {
        match *self {
            WeightValue::Finite { numerator, denominator } => {
                let g = numerator.gcd(&denominator);
                Some((numerator / g, denominator / g))
            }
            WeightValue::Infinite => None,
        }
    }

    /// Exact fraction string in lowest terms, e.g. `"1/2"`, `"3"`, `"inf"`.
    pub fn render(&self) -> String {
        match self.reduced() {
            Some((n, 1)) => n.to_string(),
            Some((n, d)) => format!("{n}/{d}"),
            None => "inf".to_string(),
        }
    }

    /// Integer part, i.e. the u_n-exponent that carries this weight.
    pub fn floor(&self) -> Option<u64> {
        match *self {
            WeightValue::Finite { numerator, denominator } => Some(numerator / denominator),
            WeightValue::Infinite => None,
        }
    }
}

impl fmt::Display for WeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialEq for WeightValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for WeightValue {}

impl PartialOrd for WeightValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeightValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use WeightValue::*;
        match (*self, *other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, _) => Ordering::Greater,
            (_, Infinite) => Ordering::Less,
            (
                Finite { numerator: a, denominator: b },
                Finite { numerator: c, denominator: d },
            ) => (a as u128 * d as u128).cmp(&(c as u128 * b as u128)),
        }
    }
}
