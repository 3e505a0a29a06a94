//! Univariate Descartes machinery: sign changes, the component-count form of
//! the rule, and the behaviour of a one-variable signomial on `[1, inf)` when
//! it starts negative.

use alloc::vec::Vec;

use crate::signomial::UnivariateSignomial;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(value: f64) -> Option<Sign> {
        if value > 0.0 {
            Some(Sign::Positive)
        } else if value < 0.0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// Coefficient signs ordered by increasing exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSequence {
    signs: Vec<Sign>,
}

impl SignSequence {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self { signs }
    }

    /// Zero coefficients are skipped.
    pub fn from_coefficients(coeffs: impl IntoIterator<Item = f64>) -> Self {
        Self {
            signs: coeffs.into_iter().filter_map(Sign::of).collect(),
        }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Sign of the highest-exponent coefficient.
    pub fn leading(&self) -> Option<Sign> {
        self.signs.last().copied()
    }

    pub fn sign_changes(&self) -> usize {
        self.signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn reversed(&self) -> Self {
        Self {
            signs: self.signs.iter().rev().copied().collect(),
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| s.flipped()).collect(),
        }
    }

    pub fn component_bounds(&self) -> ComponentBounds {
        let rho = self.sign_changes();
        let (leading, opposite) = if rho.is_multiple_of(2) {
            (rho / 2 + 1, rho / 2)
        } else {
            (rho.div_ceil(2), rho.div_ceil(2))
        };
        ComponentBounds {
            sign_changes: rho,
            max_components: rho + 1,
            max_with_leading_sign: leading,
            max_with_opposite_sign: opposite,
        }
    }

    /// `(negative bound, positive bound)` on the connected components of
    /// `(0, inf)` minus the zero set. `None` for an empty sequence.
    pub fn signed_bounds(&self) -> Option<(usize, usize)> {
        let b = self.component_bounds();
        Some(match self.leading()? {
            Sign::Positive => (b.max_with_opposite_sign, b.max_with_leading_sign),
            Sign::Negative => (b.max_with_leading_sign, b.max_with_opposite_sign),
        })
    }
}

impl core::fmt::Display for SignSequence {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("(")?;
        for s in &self.signs {
            write!(f, "{}", s.symbol())?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComponentBounds {
    pub sign_changes: usize,
    pub max_components: usize,
    pub max_with_leading_sign: usize,
    pub max_with_opposite_sign: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailBehavior {
    /// Negative on `[1, root)`, positive on `(root, inf)`.
    CrossesOnceThenPositive { root: f64 },
    /// Negative on all of `[1, inf)`.
    StaysNegative,
}

/// Behaviour of `g` on `[1, inf)` given `g(1) < 0`.
///
/// Requires either a positive leading coefficient with at most two sign
/// changes, or a negative leading coefficient with at most one; anything
/// else is rejected rather than guessed.
pub fn classify_at_negative_start(g: &UnivariateSignomial) -> Result<TailBehavior, Error> {
    let start = g.evaluate(1.0);
    if !(start < 0.0) {
        return Err(Error::Precondition(alloc::format!(
            "g(1) = {start} is not negative"
        )));
    }
    let seq = g.sign_sequence();
    let rho = seq.sign_changes();
    match seq.leading() {
        Some(Sign::Positive) if rho <= 2 => {
            Ok(TailBehavior::CrossesOnceThenPositive { root: bracket_root(g)? })
        }
        Some(Sign::Negative) if rho <= 1 => Ok(TailBehavior::StaysNegative),
        _ => Err(Error::Precondition(alloc::format!(
            "sign sequence {seq} with {rho} changes is outside the classified cases"
        ))),
    }
}

/// Doubles `t` until `g(t) > 0`, then bisects to `1e-10` in `t`.
fn bracket_root(g: &UnivariateSignomial) -> Result<f64, Error> {
    let mut lo = 1.0;
    let mut hi = 2.0;
    let mut doublings = 0;
    while !(g.evaluate(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 1000 || !hi.is_finite() {
            return Err(Error::Overflow);
        }
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g.evaluate(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
