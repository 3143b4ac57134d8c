//! Closed-form lower bounds on DNF rank and the binomial tail estimate
//! behind the "almost all functions" version.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rationals used for every bound comparison.
pub type Rational = Ratio<i128>;

pub(crate) fn ratio_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn serialize_ratio<S: Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_to_string(r))
}

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i128)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem2Regime {
    EpsLeQuarter,
    QuarterLtEpsLtThird,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// `k/2 - m`.
    #[serde(serialize_with = "serialize_ratio")]
    pub delta: Rational,
    /// `2 delta / k`.
    #[serde(serialize_with = "serialize_ratio")]
    pub epsilon: Rational,
    /// Strict lower bound on the rank of any DNF.
    #[serde(serialize_with = "serialize_ratio")]
    pub value: Rational,
    pub regime: Theorem2Regime,
}

/// `10n/3 - 5n eps / (3(1 + eps))`.
pub fn theorem2_first_form(n: usize, eps: Rational) -> Rational {
    let n = int(n);
    Rational::new(10, 3) * n
        - Rational::from_integer(5) * n * eps
            / (Rational::from_integer(3) * (Rational::one() + eps))
}

/// `10n/3 - 13n eps / (9 + 3 eps)`.
pub fn theorem2_second_form(n: usize, eps: Rational) -> Rational {
    let n = int(n);
    Rational::new(10, 3) * n
        - Rational::from_integer(13) * n * eps
            / (Rational::from_integer(9) + Rational::from_integer(3) * eps)
}

/// `(k - 2m) / k`.
pub fn epsilon(k: usize, m: usize) -> Result<Rational> {
    if k == 0 || 2 * m > k {
        return Err(Error::InvalidParameter(format!(
            "need k > 0 and m <= k/2, got k = {k}, m = {m}"
        )));
    }
    Ok(Rational::new(k as i128 - 2 * m as i128, k as i128))
}

/// Rank lower bound for functions whose zero-matrix columns all have weight
/// at least `m`, where `floor(k/3) + 1 <= m <= k/2`.
pub fn theorem2_bound(n: usize, k: usize, m: usize) -> Result<BoundReport> {
    let eps = epsilon(k, m)?;
    if m < k / 3 + 1 {
        return Err(Error::InvalidParameter(format!(
            "bound needs m >= floor(k/3) + 1 = {}, got m = {m}",
            k / 3 + 1
        )));
    }
    let (value, regime) = if eps <= Rational::new(1, 4) {
        (theorem2_first_form(n, eps), Theorem2Regime::EpsLeQuarter)
    } else {
        (
            theorem2_second_form(n, eps),
            Theorem2Regime::QuarterLtEpsLtThird,
        )
    };
    Ok(BoundReport {
        n,
        k,
        m,
        delta: Rational::new(k as i128 - 2 * m as i128, 2),
        epsilon: eps,
        value,
        regime,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem3Regime {
    /// Only the first expression applies.
    First,
    /// Both expressions apply.
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem3Report {
    pub m: f64,
    pub k: usize,
    pub alpha: f64,
    pub lambda: f64,
    pub first: f64,
    pub second: Option<f64>,
    pub regime: Theorem3Regime,
}

/// The two "almost all functions" expressions with
/// `lambda = alpha sqrt(2 ln m / k)`. Floating point: the square root and
/// logarithm are irrational in general.
pub fn theorem3_bound(m: f64, k: usize, alpha: f64) -> Result<Theorem3Report> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if k == 0 || !m.is_finite() || m < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "need k > 0 and m >= 1, got k = {k}, m = {m}"
        )));
    }
    let ln_m = m.ln();
    let upper = k as f64 / 32.0;
    // Allow rounding noise when m is given as exp(k/32).
    if ln_m > upper * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "ln m = {ln_m} exceeds k/32 = {upper}"
        )));
    }
    let lambda = alpha * (2.0 * ln_m / k as f64).sqrt();
    let first = 10.0 * m / 3.0 - 5.0 * m * (1.0 - lambda) / (3.0 + 3.0 * lambda);
    let both = ln_m > k as f64 / 162.0 && ln_m < upper;
    let second = both.then(|| 10.0 * m / 3.0 - 13.0 * m * (1.0 - lambda) / (9.0 + 3.0 * lambda));
    Ok(Theorem3Report {
        m,
        k,
        alpha,
        lambda,
        first,
        second,
        regime: if both {
            Theorem3Regime::Both
        } else {
            Theorem3Regime::First
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChernoffReport {
    pub k: usize,
    pub lambda: f64,
    /// `floor(k/2 - lambda)`.
    pub upper_index: usize,
    #[serde(serialize_with = "serialize_biguint")]
    pub exact_sum: BigUint,
    /// `2^k exp(-2 lambda^2 / k)`, rounded up.
    pub bound: f64,
    pub holds: bool,
}

fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Compares the exact binomial tail `sum_{t <= k/2 - lambda} C(k, t)` with
/// `2^k exp(-2 lambda^2 / k)`.
pub fn chernoff_tail_check(k: usize, lambda: f64) -> Result<ChernoffReport> {
    if k == 0 || k > 1000 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= 1000, got {k}"
        )));
    }
    let half = k as f64 / 2.0;
    if !(lambda >= 0.0 && lambda <= half) {
        return Err(Error::InvalidParameter(format!(
            "lambda must lie in [0, k/2], got {lambda}"
        )));
    }
    let upper_index = (half - lambda).floor() as usize;
    let mut sum = BigUint::zero();
    let mut binom = BigUint::one();
    for t in 0..=upper_index {
        sum += &binom;
        binom = binom * BigUint::from(k - t) / BigUint::from(t + 1);
    }
    let mut bound = (k as f64).exp2() * (-2.0 * lambda * lambda / k as f64).exp();
    for _ in 0..4 {
        bound = bound.next_up();
    }
    let holds = match BigUint::from_f64(bound.floor()) {
        Some(b) => sum <= b,
        None => false,
    };
    Ok(ChernoffReport {
        k,
        lambda,
        upper_index,
        exact_sum: sum,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem2_examples() {
        let r = theorem2_bound(3, 4, 2).unwrap();
        assert_eq!(r.epsilon, Rational::zero());
        assert_eq!(r.value, Rational::from_integer(10));
        assert_eq!(r.regime, Theorem2Regime::EpsLeQuarter);
        // k = 8, m = 3: eps = 1/4.
        let r = theorem2_bound(12, 8, 3).unwrap();
        assert_eq!(r.epsilon, Rational::new(1, 4));
        assert_eq!(r.value, Rational::from_integer(36));
        // k = 5, m = 2: eps = 1/5.
        let r = theorem2_bound(6, 5, 2).unwrap();
        assert_eq!(
            r.value,
            Rational::new(10, 3) * 6
                - Rational::new(5, 3) * 6 * Rational::new(1, 5) / Rational::new(6, 5)
        );
        // k = 11, m = 4: eps = 3/11, past the seam.
        let r = theorem2_bound(4, 11, 4).unwrap();
        assert_eq!(r.regime, Theorem2Regime::QuarterLtEpsLtThird);
        assert!(theorem2_bound(3, 6, 2).is_err());
        assert!(theorem2_bound(3, 4, 3).is_err());
    }

    #[test]
    fn forms_meet_at_quarter() {
        for n in [1, 7, 100] {
            let q = Rational::new(1, 4);
            assert_eq!(theorem2_first_form(n, q), int(3 * n));
            assert_eq!(theorem2_second_form(n, q), int(3 * n));
        }
    }

    #[test]
    fn theorem3_examples() {
        let r = theorem3_bound(1.0, 64, 0.5).unwrap();
        assert_eq!(r.lambda, 0.0);
        assert!((r.first - 5.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.regime, Theorem3Regime::First);

        let m = (320.0f64 / 32.0).exp();
        let r = theorem3_bound(m, 320, 0.5).unwrap();
        let lambda = 0.5 * (2.0 * 10.0 / 320.0f64).sqrt();
        assert!((r.lambda - lambda).abs() < 1e-12);
        let expected = 10.0 * m / 3.0 - 5.0 * m * (1.0 - lambda) / (3.0 + 3.0 * lambda);
        assert!((r.first - expected).abs() < 1e-6 * expected);

        let r = theorem3_bound(100.0, 320, 0.5).unwrap();
        assert_eq!(r.regime, Theorem3Regime::Both);
        assert!(r.second.is_some());

        assert!(theorem3_bound(100.0, 320, 1.0).is_err());
        assert!(theorem3_bound(100.0, 320, 0.0).is_err());
        assert!(theorem3_bound(1e6, 32, 0.5).is_err());
    }

    #[test]
    fn chernoff_examples() {
        let r = chernoff_tail_check(4, 1.0).unwrap();
        assert_eq!(r.exact_sum, BigUint::from(5u32));
        assert!((r.bound - 16.0 * (-0.5f64).exp()).abs() < 1e-9);
        assert!(r.holds);

        let r = chernoff_tail_check(6, 0.0).unwrap();
        assert_eq!(r.exact_sum, BigUint::from(1u32 + 6 + 15 + 20));
        assert!(r.holds);

        let r = chernoff_tail_check(30, 5.0).unwrap();
        let brute: u64 = (0..=10u64).map(|t| binom(30, t)).sum();
        assert_eq!(r.exact_sum, BigUint::from(brute));
        assert!(r.holds);

        assert!(chernoff_tail_check(4, 2.5).is_err());
        assert!(chernoff_tail_check(4, -1.0).is_err());
    }

    fn binom(n: u64, t: u64) -> u64 {
        (0..t).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}
