//! Rational Poincaré series of the form `N(t) / ∏ (1 - t^w)`.
//!
//! Everything here is exact. The numerator is a dense integer polynomial and
//! the denominator is a multiset of positive weights. The pole order and the
//! leading Laurent coefficient at `t = 1` are read off by synthetic division.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series has zero numerator")]
    ZeroSeries,
    #[error("denominator weight must be at least 1")]
    ZeroWeight,
    #[error("cannot parse series: {0}")]
    Parse(String),
}

/// A Poincaré series `numerator(t) / ∏_{w ∈ weights} (1 - t^w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesExpr {
    num: Vec<BigInt>,
    weights: Vec<u32>,
}

impl SeriesExpr {
    pub fn new(num: Vec<BigInt>, weights: Vec<u32>) -> Result<Self, SeriesError> {
        if weights.contains(&0) {
            return Err(SeriesError::ZeroWeight);
        }
        let mut num = num;
        poly::trim(&mut num);
        Ok(SeriesExpr { num, weights })
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_i64(num: &[i64], weights: &[u32]) -> Result<Self, SeriesError> {
        Self::new(num.iter().map(|&c| BigInt::from(c)).collect(), weights.to_vec())
    }

    /// The series `1`.
    pub fn one() -> Self {
        SeriesExpr { num: vec![BigInt::one()], weights: Vec::new() }
    }

    pub fn zero() -> Self {
        SeriesExpr { num: Vec::new(), weights: Vec::new() }
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Coefficients of `t^0 ..= t^d`, by long division of the numerator
    /// through each `(1 - t^w)` in turn.
    pub fn expand(&self, d: usize) -> Vec<BigInt> {
        let mut coeffs: Vec<BigInt> = (0..=d)
            .map(|i| self.num.get(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        // c / (1 - t^w): b_i = c_i + b_{i-w}
        for &w in &self.weights {
            let w = w as usize;
            for i in w..=d {
                let prev = coeffs[i - w].clone();
                coeffs[i] += prev;
            }
        }
        coeffs
    }

    /// `|weights| - mult_{t=1}(numerator)`. Negative or zero values mean the
    /// series has no pole at `t = 1`.
    pub fn pole_order(&self) -> Result<i64, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroSeries);
        }
        let (m, _) = poly::split_one_minus_t(&self.num);
        Ok(self.weights.len() as i64 - m as i64)
    }

    /// `lim_{t→1} (1-t)^{pole_order} · s(t)`.
    pub fn degree_at_one(&self) -> Result<BigRational, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroSeries);
        }
        let (_, quotient) = poly::split_one_minus_t(&self.num);
        let top = poly::eval_at_one(&quotient);
        let bottom: BigInt = self.weights.iter().map(|&w| BigInt::from(w)).product();
        Ok(BigRational::new(top, bottom))
    }

    /// Pole order and degree together.
    pub fn laurent_lead(&self) -> Result<(i64, BigRational), SeriesError> {
        Ok((self.pole_order()?, self.degree_at_one()?))
    }

    pub fn mul(&self, other: &SeriesExpr) -> SeriesExpr {
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        weights.sort_unstable();
        SeriesExpr { num: poly::mul(&self.num, &other.num), weights }
    }

    /// Sum over the smallest common denominator (multiset maximum of the two
    /// weight multisets).
    pub fn add(&self, other: &SeriesExpr) -> SeriesExpr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (common, extra_a, extra_b) = merge_weights(&self.weights, &other.weights);
        let a = poly::mul(&self.num, &poly::one_minus_t_product(&extra_a));
        let b = poly::mul(&other.num, &poly::one_minus_t_product(&extra_b));
        let mut num = poly::add(&a, &b);
        poly::trim(&mut num);
        if num.is_empty() {
            return SeriesExpr::zero();
        }
        SeriesExpr { num, weights: common }
    }

    pub fn neg(&self) -> SeriesExpr {
        SeriesExpr { num: self.num.iter().map(|c| -c).collect(), weights: self.weights.clone() }
    }

    pub fn sub(&self, other: &SeriesExpr) -> SeriesExpr {
        self.add(&other.neg())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: u32) -> SeriesExpr {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut num = vec![BigInt::zero(); k as usize];
        num.extend(self.num.iter().cloned());
        SeriesExpr { num, weights: self.weights.clone() }
    }

    /// Canonical representative: weights ascending, and every denominator
    /// factor `(1 - t^w)` that divides the numerator cancelled, smallest `w`
    /// first. The zero series normalizes to `(0, {})`.
    pub fn normalize(&self) -> SeriesExpr {
        if self.is_zero() {
            return SeriesExpr::zero();
        }
        let mut weights = self.weights.clone();
        weights.sort_unstable();
        let mut num = self.num.clone();
        let mut kept = Vec::with_capacity(weights.len());
        for w in weights {
            match poly::div_one_minus_t_pow(&num, w) {
                Some(q) => num = q,
                None => kept.push(w),
            }
        }
        SeriesExpr { num, weights: kept }
    }

    /// Exact value at a rational point `tau` with `tau^w ≠ 1` for every weight.
    pub fn eval(&self, tau: &BigRational) -> BigRational {
        let top = poly::eval_rational(&self.num, tau);
        let mut bottom = BigRational::one();
        for &w in &self.weights {
            bottom *= BigRational::one() - pow_rational(tau, w);
        }
        top / bottom
    }

    /// `(1 - tau)^{pole_order} · s(tau)` evaluated exactly at `tau`.
    pub fn scaled_eval(&self, tau: &BigRational) -> Result<BigRational, SeriesError> {
        let pole = self.pole_order()?;
        let gap = BigRational::one() - tau;
        let factor = if pole >= 0 {
            pow_rational(&gap, pole as u32)
        } else {
            BigRational::one() / pow_rational(&gap, (-pole) as u32)
        };
        Ok(factor * self.eval(tau))
    }

    /// True when every numerator coefficient is nonnegative. Such a series
    /// has nonnegative expansion coefficients as well.
    pub fn has_nonnegative_numerator(&self) -> bool {
        self.num.iter().all(|c| !c.is_negative())
    }
}

fn pow_rational(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Returns (multiset max, what `a` is missing, what `b` is missing).
fn merge_weights(a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let (mut i, mut j) = (0, 0);
    let mut common = Vec::new();
    let mut extra_a = Vec::new();
    let mut extra_b = Vec::new();
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                common.push(*x);
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                common.push(*x);
                extra_b.push(*x);
                i += 1;
            }
            (Some(x), None) => {
                common.push(*x);
                extra_b.push(*x);
                i += 1;
            }
            (_, Some(y)) => {
                common.push(*y);
                extra_a.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (common, extra_a, extra_b)
}

impl fmt::Display for SeriesExpr {
    /// `num: [c0, c1, ...]; den: [w1, w2, ...]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "num: [")?;
        for (i, c) in self.num.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]; den: [")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for SeriesExpr {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeriesError::Parse(s.to_string());
        let (num_part, den_part) = s.split_once(';').ok_or_else(bad)?;
        let list = |part: &str, key: &str| -> Result<Vec<String>, SeriesError> {
            let body = part.trim().strip_prefix(key).ok_or_else(bad)?.trim_start();
            let body = body.strip_prefix(':').ok_or_else(bad)?.trim();
            let body = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
            Ok(body
                .split(',')
                .map(|x| x.trim().replace('\u{2212}', "-"))
                .filter(|x| !x.is_empty())
                .collect())
        };
        let num = list(num_part, "num")?
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let weights = list(den_part, "den")?
            .iter()
            .map(|w| w.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        SeriesExpr::new(num, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(num: &[i64], w: &[u32]) -> SeriesExpr {
        SeriesExpr::from_i64(num, w).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Expansion by multiplying the numerator with each truncated geometric
    /// series `1 + t^w + t^{2w} + ...`; no division involved.
    fn expand_by_convolution(series: &SeriesExpr, d: usize) -> Vec<BigInt> {
        let mut acc: Vec<BigInt> = (0..=d)
            .map(|i| series.numerator().get(i).cloned().unwrap_or_default())
            .collect();
        for &w in series.weights() {
            let mut next = vec![BigInt::zero(); d + 1];
            for (i, c) in acc.iter().enumerate() {
                let mut j = i;
                while j <= d {
                    next[j] += c;
                    j += w as usize;
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn expand_examples() {
        assert_eq!(s(&[1], &[1]).expand(3), ints(&[1, 1, 1, 1]));
        let a = s(&[1, 1], &[2]);
        assert_eq!(expand_by_convolution(&a, 4), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(a.expand(4), ints(&[1, 1, 1, 1, 1]));
        let b = s(&[1, 0, -1], &[1, 1]);
        assert_eq!(expand_by_convolution(&b, 3), ints(&[1, 2, 2, 2]));
        assert_eq!(b.expand(3), ints(&[1, 2, 2, 2]));
        assert_eq!(SeriesExpr::zero().expand(2), ints(&[0, 0, 0]));
    }

    #[test]
    fn pole_order_examples() {
        assert_eq!(s(&[1], &[1, 1, 1]).pole_order().unwrap(), 3);
        assert_eq!(s(&[1, 0, -2, 1], &[1, 1]).pole_order().unwrap(), 1);
        assert_eq!(s(&[1, -1], &[1]).pole_order().unwrap(), 0);
        assert_eq!(SeriesExpr::zero().pole_order(), Err(SeriesError::ZeroSeries));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(s(&[1], &[1]).degree_at_one().unwrap(), q(1, 1));
        let q8 = s(&[1, 2, 2, 1], &[4]);
        assert_eq!(q8.degree_at_one().unwrap(), q(3, 2));
        assert_eq!(s(&[1, 0, -1], &[1, 1, 2]).degree_at_one().unwrap(), q(1, 1));
        assert_eq!(SeriesExpr::zero().degree_at_one(), Err(SeriesError::ZeroSeries));
    }

    #[test]
    fn degree_matches_evaluation_near_one() {
        let q8 = s(&[1, 2, 2, 1], &[4]);
        let tau = q(999_999, 1_000_000);
        let approx = q8.scaled_eval(&tau).unwrap();
        let err = (approx - q(3, 2)).abs();
        assert!(err < q(1, 1000));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(&[1], &[1]).mul(&s(&[1], &[1])), s(&[1], &[1, 1]));
        assert_eq!(s(&[1, 1], &[]).mul(&s(&[1], &[2])), s(&[1, 1], &[2]));
        let a = s(&[1, 0, -1], &[1, 1]);
        let b = s(&[1], &[1]);
        let lhs = a.mul(&b).pole_order().unwrap();
        assert_eq!(lhs, a.pole_order().unwrap() + b.pole_order().unwrap());
        assert_eq!(lhs, 2);
    }

    #[test]
    fn add_examples() {
        let one = s(&[1], &[1]);
        assert_eq!(one.add(&one).expand(3), ints(&[2, 2, 2, 2]));
        let cancelled = one.add(&s(&[-1], &[1])).normalize();
        assert!(cancelled.is_zero());
        let mixed = one.add(&s(&[1], &[2]));
        let oracle: Vec<BigInt> = (0..8).map(|i| BigInt::from(if i % 2 == 0 { 2 } else { 1 })).collect();
        assert_eq!(mixed.expand(7), oracle);
    }

    #[test]
    fn shift_examples() {
        let a = s(&[1], &[1]);
        assert_eq!(a.shift(0), a);
        assert_eq!(a.shift(2).expand(4), ints(&[0, 0, 1, 1, 1]));
        let q8 = s(&[1, 2, 2, 1], &[4]);
        assert_eq!(q8.shift(5).degree_at_one().unwrap(), q(3, 2));
    }

    #[test]
    fn normalize_cancels_smallest_first() {
        // (1-t) divides 1-t^2 once; neither (1-t) nor (1-t^2) divides 1+t.
        let a = s(&[1, 0, -1], &[2, 1, 1]).normalize();
        assert_eq!(a, s(&[1, 1], &[1, 2]));
        assert_eq!(a.expand(10), s(&[1, 0, -1], &[1, 1, 2]).expand(10));
    }

    #[test]
    fn text_round_trip() {
        let a = s(&[1, 0, 0, 1], &[4]);
        let text = a.to_string();
        assert_eq!(text, "num: [1, 0, 0, 1]; den: [4]");
        assert_eq!(text.parse::<SeriesExpr>().unwrap(), a);
        assert!("num [1]".parse::<SeriesExpr>().is_err());
        assert_eq!(SeriesExpr::from_i64(&[1], &[0]), Err(SeriesError::ZeroWeight));
    }
}
