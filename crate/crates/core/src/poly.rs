//! Dense univariate integer polynomials, lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x + y);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// `∏ (1 - t^w)` over the given weights.
pub(crate) fn one_minus_t_product(weights: &[u32]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for &w in weights {
        if w == 0 {
            return Vec::new();
        }
        let mut factor = vec![BigInt::zero(); w as usize + 1];
        factor[0] = BigInt::one();
        factor[w as usize] = -BigInt::one();
        acc = mul(&acc, &factor);
    }
    acc
}

/// Exact quotient by `(1 - t^w)`, or `None` if it does not divide.
pub(crate) fn div_one_minus_t_pow(p: &[BigInt], w: u32) -> Option<Vec<BigInt>> {
    let w = w as usize;
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.len() <= w {
        return None;
    }
    // p = (1 - t^w) q  =>  q_i = p_i + q_{i-w}
    let qlen = p.len() - w;
    let mut q: Vec<BigInt> = Vec::with_capacity(qlen);
    for i in 0..qlen {
        let mut c = p[i].clone();
        if i >= w {
            c += &q[i - w];
        }
        q.push(c);
    }
    // remaining coefficients must match -q_{i-w}
    for i in qlen..p.len() {
        let expected = if i >= w { -q[i - w].clone() } else { BigInt::zero() };
        if p[i] != expected {
            return None;
        }
    }
    Some(q)
}

/// Splits `p = (1 - t)^m · q` with `q(1) ≠ 0`; `p` must be nonzero.
pub(crate) fn split_one_minus_t(p: &[BigInt]) -> (usize, Vec<BigInt>) {
    debug_assert!(!p.is_empty());
    let mut q = p.to_vec();
    let mut m = 0;
    while eval_at_one(&q).is_zero() {
        q = div_one_minus_t_pow(&q, 1).expect("root at t=1 implies divisibility");
        m += 1;
    }
    (m, q)
}

pub(crate) fn eval_at_one(p: &[BigInt]) -> BigInt {
    p.iter().sum()
}

pub(crate) fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}
