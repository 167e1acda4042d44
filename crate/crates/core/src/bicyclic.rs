//! The bicyclic monoid `B = ⟨a, b | ab = 1⟩` under deformed multiplication.
//!
//! Every element has a unique canonical form `b^m a^k`, stored as the pair
//! `(m, k)`. Throughout, the sandwich element is `α = b^m a^k` and a generic
//! element is `ξ = b^t a^s`.
//!
//! In `(B, *_α)` the idempotents are exactly `ε_i = b^(k+i) a^(m+i)`, forming
//! a descending chain. The windows `P_i ∩ Q_i` (elements not fixed by
//! `ε_i *_α ·` and by `· *_α ε_i`) have `(k+i)(m+i)` elements, which pins
//! down `α`; hence distinct sandwich elements give non-isomorphic
//! semigroups. Swapping exponents is an anti-isomorphism from `(B, *_α)` to
//! `(B, *_α⁻¹)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_error, Error, Result};

/// `b^m a^k` in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BicyclicElement {
    /// Power of `b`.
    pub m: u64,
    /// Power of `a`.
    pub k: u64,
}

impl BicyclicElement {
    pub const IDENTITY: BicyclicElement = BicyclicElement { m: 0, k: 0 };

    pub const fn new(m: u64, k: u64) -> Self {
        BicyclicElement { m, k }
    }

    /// Canonical-form product using `ab = 1`:
    /// `b^m a^k · b^t a^s = b^m a^(k-t+s)` if `k ≥ t`, else `b^(m+t-k) a^s`.
    pub fn checked_mul(self, other: Self) -> Result<Self> {
        let (m, k, t, s) = (self.m, self.k, other.m, other.k);
        if k >= t {
            Ok(BicyclicElement::new(m, (k - t).checked_add(s).ok_or(Error::Overflow)?))
        } else {
            Ok(BicyclicElement::new(m.checked_add(t - k).ok_or(Error::Overflow)?, s))
        }
    }

    /// `(b^m a^k)⁻¹ = b^k a^m`.
    pub fn inverse(self) -> Self {
        BicyclicElement::new(self.k, self.m)
    }

    /// `self *_alpha other = self · alpha · other`.
    pub fn deformed_mul(self, alpha: Self, other: Self) -> Result<Self> {
        self.checked_mul(alpha)?.checked_mul(other)
    }
}

impl fmt::Display for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.k) {
            (0, 0) => f.write_str("1"),
            (m, 0) => write!(f, "b^{m}"),
            (0, k) => write!(f, "a^{k}"),
            (m, k) => write!(f, "b^{m} a^{k}"),
        }
    }
}

impl fmt::Debug for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BicyclicElement {
    type Err = Error;

    /// Accepts `b^m a^k`, with either factor omissible and `1` for the
    /// identity. A bare `b` or `a` means exponent one.
    fn from_str(input: &str) -> Result<Self> {
        let kind = "bicyclic";
        let text = input.trim();
        if text == "1" {
            return Ok(Self::IDENTITY);
        }
        if text.is_empty() {
            return Err(parse_error(kind, input, "empty literal"));
        }
        let mut out = Self::IDENTITY;
        let mut seen_a = false;
        let mut seen_b = false;
        for token in text.split_whitespace() {
            let (base, exp) = match token.split_once('^') {
                Some((base, exp)) => {
                    let exp = exp
                        .parse::<u64>()
                        .map_err(|_| parse_error(kind, input, format!("bad exponent in `{token}`")))?;
                    (base, exp)
                }
                None => (token, 1),
            };
            match base {
                "b" if !seen_b && !seen_a => {
                    seen_b = true;
                    out.m = exp;
                }
                "a" if !seen_a => {
                    seen_a = true;
                    out.k = exp;
                }
                _ => {
                    return Err(parse_error(kind, input, "expected `b^m a^k` in canonical order"));
                }
            }
        }
        Ok(out)
    }
}

serde_via_display!(BicyclicElement);

pub fn bmul(x: BicyclicElement, y: BicyclicElement) -> Result<BicyclicElement> {
    x.checked_mul(y)
}

pub fn binv(x: BicyclicElement) -> BicyclicElement {
    x.inverse()
}

/// `ε_i = b^(k+i) a^(m+i)` for `α = b^m a^k`.
pub fn epsilon(alpha: BicyclicElement, i: u64) -> Result<BicyclicElement> {
    Ok(BicyclicElement::new(
        alpha.k.checked_add(i).ok_or(Error::Overflow)?,
        alpha.m.checked_add(i).ok_or(Error::Overflow)?,
    ))
}

/// `ξ *_α ξ = ξ`, by direct evaluation.
pub fn is_deformed_idempotent(xi: BicyclicElement, alpha: BicyclicElement) -> Result<bool> {
    Ok(xi.deformed_mul(alpha, xi)? == xi)
}

/// The `i` with `ξ = ε_i(α)`, if `ξ` is an idempotent of `(B, *_α)`.
pub fn idempotent_index(xi: BicyclicElement, alpha: BicyclicElement) -> Option<u64> {
    let i = xi.m.checked_sub(alpha.k)?;
    (xi.k.checked_sub(alpha.m)? == i).then_some(i)
}

/// Natural order on the chain: `ε_i ≤ ε_j` iff `i ≥ j`.
pub fn idempotent_leq(i: u64, j: u64) -> bool {
    i >= j
}

/// `e ≤ f` in the natural order of idempotents of `(B, *_α)`, evaluated
/// directly: `e *_α f = f *_α e = e`.
pub fn natural_leq(e: BicyclicElement, f: BicyclicElement, alpha: BicyclicElement) -> Result<bool> {
    Ok(e.deformed_mul(alpha, f)? == e && f.deformed_mul(alpha, e)? == e)
}

/// `ξ ∈ P_i`: `ε_i *_α ξ ≠ ξ`, by direct evaluation.
pub fn in_p(xi: BicyclicElement, alpha: BicyclicElement, i: u64) -> Result<bool> {
    Ok(epsilon(alpha, i)?.deformed_mul(alpha, xi)? != xi)
}

/// `ξ ∈ Q_i`: `ξ *_α ε_i ≠ ξ`, by direct evaluation.
pub fn in_q(xi: BicyclicElement, alpha: BicyclicElement, i: u64) -> Result<bool> {
    Ok(xi.deformed_mul(alpha, epsilon(alpha, i)?)? != xi)
}

/// Closed form of [`in_p`]: `b^t a^s ∈ P_i` iff `t < k + i`.
pub fn in_p_closed(xi: BicyclicElement, alpha: BicyclicElement, i: u64) -> bool {
    (xi.m as u128) < alpha.k as u128 + i as u128
}

/// Closed form of [`in_q`]: `b^t a^s ∈ Q_i` iff `s < m + i`.
pub fn in_q_closed(xi: BicyclicElement, alpha: BicyclicElement, i: u64) -> bool {
    (xi.k as u128) < alpha.m as u128 + i as u128
}

/// `|P_i ∩ Q_j| = (k+i)(m+j)`.
pub fn pq_cross_cardinality(alpha: BicyclicElement, i: u64, j: u64) -> Result<u64> {
    let rows = alpha.k.checked_add(i).ok_or(Error::Overflow)?;
    let cols = alpha.m.checked_add(j).ok_or(Error::Overflow)?;
    rows.checked_mul(cols).ok_or(Error::Overflow)
}

/// `|P_i ∩ Q_i| = (k+i)(m+i)`.
pub fn pq_cardinality(alpha: BicyclicElement, i: u64) -> Result<u64> {
    pq_cross_cardinality(alpha, i, i)
}

/// Members of `P_i ∩ Q_j` found by testing every `b^t a^s` with
/// `t, s ≤ bound` against the definitions.
///
/// Outside `t < k+i, s < m+j` nothing belongs to the intersection, so any
/// `bound ≥ max(k+i, m+j)` gives the full set.
pub fn pq_scan(alpha: BicyclicElement, i: u64, j: u64, bound: u64) -> Result<Vec<BicyclicElement>> {
    let mut members = Vec::new();
    for t in 0..=bound {
        for s in 0..=bound {
            let xi = BicyclicElement::new(t, s);
            if in_p(xi, alpha, i)? && in_q(xi, alpha, j)? {
                members.push(xi);
            }
        }
    }
    Ok(members)
}

/// `(|P_1∩Q_1|, |P_1∩Q_0|, |P_0∩Q_1|)` measured by [`pq_scan`].
pub fn cardinality_triple(alpha: BicyclicElement) -> Result<(u64, u64, u64)> {
    let bound = alpha.m.max(alpha.k).checked_add(2).ok_or(Error::Overflow)?;
    let count = |i, j| pq_scan(alpha, i, j, bound).map(|v| v.len() as u64);
    Ok((count(1, 1)?, count(1, 0)?, count(0, 1)?))
}

/// Recovers `α = b^m a^k` from `c11 = |P_1∩Q_1|`, `c10 = |P_1∩Q_0|`,
/// `c01 = |P_0∩Q_1|`: `k = c11 − c10 − 1` and `m = c11 − c01 − 1`.
pub fn recover_sandwich(c11: u64, c10: u64, c01: u64) -> Result<BicyclicElement> {
    let inconsistent = || Error::InconsistentCardinalities(format!("c11 = {c11}, c10 = {c10}, c01 = {c01}"));
    let k = c11
        .checked_sub(c10)
        .and_then(|d| d.checked_sub(1))
        .ok_or_else(inconsistent)?;
    let m = c11
        .checked_sub(c01)
        .and_then(|d| d.checked_sub(1))
        .ok_or_else(inconsistent)?;
    let alpha = BicyclicElement::new(m, k);
    if pq_cross_cardinality(alpha, 1, 1)? != c11
        || pq_cross_cardinality(alpha, 1, 0)? != c10
        || pq_cross_cardinality(alpha, 0, 1)? != c01
    {
        return Err(inconsistent());
    }
    Ok(alpha)
}

/// `φ(b^x a^y) = b^y a^x`, an anti-isomorphism `(B, *_α) → (B, *_α⁻¹)`.
pub fn anti_iso_phi(xi: BicyclicElement) -> BicyclicElement {
    xi.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    const fn e(m: u64, k: u64) -> BicyclicElement {
        BicyclicElement::new(m, k)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(bmul(e(2, 3), e(1, 2)).unwrap(), e(2, 4));
        assert_eq!(bmul(e(4, 7), BicyclicElement::IDENTITY).unwrap(), e(4, 7));
        assert_eq!(bmul(e(1, 1), e(3, 0)).unwrap(), e(3, 0));
        // ab = 1
        assert_eq!(bmul(e(0, 1), e(1, 0)).unwrap(), BicyclicElement::IDENTITY);
        assert_eq!(bmul(e(1, 0), e(0, 1)).unwrap(), e(1, 1));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(bmul(e(u64::MAX, 0), e(1, 0)).unwrap_err(), Error::Overflow);
        assert_eq!(bmul(e(0, u64::MAX), e(0, 1)).unwrap_err(), Error::Overflow);
        assert_eq!(epsilon(e(0, u64::MAX), 1).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(binv(e(2, 3)), e(3, 2));
        assert_eq!(binv(BicyclicElement::IDENTITY), BicyclicElement::IDENTITY);
        for m in 0..6 {
            for k in 0..6 {
                let x = e(m, k);
                assert_eq!(binv(binv(x)), x);
                assert_eq!(x.checked_mul(binv(x)).unwrap().checked_mul(x).unwrap(), x);
            }
        }
    }

    #[test]
    fn associativity_exhaustive() {
        let grid: Vec<_> = (0..=8).flat_map(|m| (0..=8).map(move |k| e(m, k))).collect();
        for &x in &grid {
            for &y in &grid {
                let xy = x.checked_mul(y).unwrap();
                for &z in &grid {
                    assert_eq!(
                        xy.checked_mul(z).unwrap(),
                        x.checked_mul(y.checked_mul(z).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(e(2, 1), 0).unwrap(), e(1, 2));
        assert_eq!(epsilon(BicyclicElement::IDENTITY, 3).unwrap(), e(3, 3));
        for m in 0..=6 {
            for k in 0..=6 {
                for i in 0..=6 {
                    let eps = epsilon(e(m, k), i).unwrap();
                    assert!(is_deformed_idempotent(eps, e(m, k)).unwrap());
                }
            }
        }
    }

    #[test]
    fn idempotent_characterization() {
        let alpha = e(2, 1);
        assert!(is_deformed_idempotent(epsilon(alpha, 2).unwrap(), alpha).unwrap());
        assert!(!is_deformed_idempotent(e(1, 1), alpha).unwrap());
        for m in 0..=4 {
            for k in 0..=4 {
                let alpha = e(m, k);
                for t in 0..=12 {
                    for s in 0..=12 {
                        let xi = e(t, s);
                        let direct = is_deformed_idempotent(xi, alpha).unwrap();
                        assert_eq!(direct, idempotent_index(xi, alpha).is_some(), "{xi} under {alpha}");
                    }
                }
            }
        }
    }

    #[test]
    fn chain_order() {
        assert!(idempotent_leq(3, 3));
        assert!(idempotent_leq(5, 2));
        assert!(!idempotent_leq(1, 4));
        let alpha = e(3, 1);
        for i in 0..=8 {
            for j in 0..=8 {
                let (ei, ej) = (epsilon(alpha, i).unwrap(), epsilon(alpha, j).unwrap());
                assert_eq!(natural_leq(ei, ej, alpha).unwrap(), idempotent_leq(i, j));
            }
        }
    }

    #[test]
    fn membership_examples() {
        let alpha = e(2, 3);
        assert!(!in_p(e(5, 0), alpha, 0).unwrap());
        assert!(in_p(BicyclicElement::IDENTITY, alpha, 0).unwrap());
        assert!(in_q(BicyclicElement::IDENTITY, alpha, 0).unwrap());
        // ε_0 = b^3 a^2 sits on the corner of the window
        let eps = epsilon(alpha, 0).unwrap();
        assert!(!in_p(eps, alpha, 0).unwrap());
        assert!(!in_q(eps, alpha, 0).unwrap());
    }

    #[test]
    fn membership_closed_forms_agree() {
        for m in 0..=4 {
            for k in 0..=4 {
                let alpha = e(m, k);
                for i in 0..=3 {
                    for t in 0..=10 {
                        for s in 0..=10 {
                            let xi = e(t, s);
                            assert_eq!(in_p(xi, alpha, i).unwrap(), in_p_closed(xi, alpha, i));
                            assert_eq!(in_q(xi, alpha, i).unwrap(), in_q_closed(xi, alpha, i));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn window_examples() {
        assert_eq!(pq_cardinality(e(2, 3), 1).unwrap(), 12);
        assert_eq!(pq_cardinality(BicyclicElement::IDENTITY, 0).unwrap(), 0);
        assert_eq!(pq_cardinality(e(1, 1), 2).unwrap(), 9);
        assert_eq!(pq_scan(e(1, 1), 2, 2, 8).unwrap().len(), 9);
    }

    #[test]
    fn recovery_examples() {
        assert_eq!(cardinality_triple(e(2, 3)).unwrap(), (12, 8, 9));
        assert_eq!(recover_sandwich(12, 8, 9).unwrap(), e(2, 3));
        assert_eq!(cardinality_triple(BicyclicElement::IDENTITY).unwrap(), (1, 0, 0));
        assert_eq!(recover_sandwich(1, 0, 0).unwrap(), BicyclicElement::IDENTITY);
        assert!(matches!(
            recover_sandwich(1, 1, 0),
            Err(Error::InconsistentCardinalities(_))
        ));
        assert!(matches!(
            recover_sandwich(5, 1, 1),
            Err(Error::InconsistentCardinalities(_))
        ));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(anti_iso_phi(e(2, 3)), e(3, 2));
        assert_eq!(anti_iso_phi(BicyclicElement::IDENTITY), BicyclicElement::IDENTITY);
        let alpha = e(1, 2);
        for x in 0..=4 {
            for y in 0..=4 {
                for u in 0..=4 {
                    for v in 0..=4 {
                        let (xi, eta) = (e(x, y), e(u, v));
                        let lhs = anti_iso_phi(xi.deformed_mul(alpha, eta).unwrap());
                        let rhs = anti_iso_phi(eta)
                            .deformed_mul(alpha.inverse(), anti_iso_phi(xi))
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn literal_grammar() {
        for (text, value) in [
            ("1", e(0, 0)),
            ("b^2 a^1", e(2, 1)),
            ("b^2", e(2, 0)),
            ("a^5", e(0, 5)),
            ("b a", e(1, 1)),
            ("  b^0 a^0 ", e(0, 0)),
        ] {
            assert_eq!(text.parse::<BicyclicElement>().unwrap(), value, "{text}");
        }
        for bad in ["", "a^1 b^1", "b^x", "c^2", "b^1 b^2", "1 a"] {
            assert!(bad.parse::<BicyclicElement>().is_err(), "{bad}");
        }
        for m in 0..4 {
            for k in 0..4 {
                let x = e(m, k);
                assert_eq!(x.to_string().parse::<BicyclicElement>().unwrap(), x);
            }
        }
    }
}
