//! Gaussian coefficients and bounds on A(n, d, w) and A_q(n, d, k).
//!
//! Everything here is exact: big integers and canonical rationals. Fractional
//! parts of `M w / n` sit next to integers for many inputs, so floating point
//! would flip the bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

fn big_pow(q: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

/// The q-ary Gaussian coefficient `[n ℓ]_q`; zero when `ℓ > n`.
pub fn gaussian(n: u64, l: u64, q: u64) -> BigUint {
    if l > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..l {
        num *= big_pow(q, n - i) - 1u32;
        den *= big_pow(q, i + 1) - 1u32;
    }
    num / den
}

/// One step of the Johnson recursion: `⌊ n · a_prev / w ⌋`, where `a_prev`
/// bounds A(n-1, d, w-1).
pub fn johnson_step(n: u64, _d: u64, w: u64, a_prev: &BigUint) -> Result<BigUint> {
    if w == 0 || w > n {
        return Err(Error::InvalidParameter(format!("need n >= w > 0, got n={n}, w={w}")));
    }
    Ok(BigUint::from(n) * a_prev / BigUint::from(w))
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// The quantity `b(M)` for A(n, 2δ, w):
/// `δ - w(n-w)/n + (n/M²) {M w/n} {M (n-w)/n}`.
pub fn avz_b(n: u64, delta: u64, w: u64, m: u64) -> Result<Rational> {
    if m == 0 || w == 0 || w > n {
        return Err(Error::InvalidParameter(format!(
            "need M >= 1 and 0 < w <= n, got n={n}, w={w}, M={m}"
        )));
    }
    let r = |a: u64, b: u64| Rational::new(BigInt::from(a), BigInt::from(b));
    let nr = Rational::from_integer(BigInt::from(n));
    let mw = frac(&r(m * w, n));
    let mnw = frac(&r(m * (n - w), n));
    Ok(Rational::from_integer(BigInt::from(delta)) - r(w * (n - w), n)
        + nr / Rational::from_integer(BigInt::from(m) * BigInt::from(m)) * mw * mnw)
}

/// `⌊δ / b⌋`, or `None` when `b <= 0` (the bound says nothing).
pub fn avz_ceiling(delta: u64, b: &Rational) -> Option<BigInt> {
    if !b.is_positive() {
        return None;
    }
    Some((Rational::from_integer(BigInt::from(delta)) / b).floor().to_integer())
}

/// A candidate size ruled out by `b(M) > 0` and `M > ⌊δ / b(M)⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvzExclusion {
    pub m: u64,
    pub b: Rational,
    pub ceiling: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvzResult {
    pub bound: u64,
    /// Why `bound + 1` fails, when `bound < cap`.
    pub witness: Option<AvzExclusion>,
}

/// Checks whether size `m` is excluded for A(n, 2δ, w).
pub fn avz_excludes(n: u64, delta: u64, w: u64, m: u64) -> Result<Option<AvzExclusion>> {
    let b = avz_b(n, delta, w, m)?;
    Ok(match avz_ceiling(delta, &b) {
        Some(ceiling) if BigInt::from(m) > ceiling => Some(AvzExclusion { m, b, ceiling }),
        _ => None,
    })
}

/// Largest `M <= cap` that the implicit bound does not exclude. Every
/// candidate is checked; `b(M)` is not monotone in M.
pub fn avz_bound(n: u64, delta: u64, w: u64, cap: u64) -> Result<AvzResult> {
    let mut bound = 0;
    for m in (1..=cap).rev() {
        if avz_excludes(n, delta, w, m)?.is_none() {
            bound = m;
            break;
        }
    }
    let witness = if bound < cap { avz_excludes(n, delta, w, bound + 1)? } else { None };
    Ok(AvzResult { bound, witness })
}

fn check_nk(n: u64, k: u64) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

/// `(q^n - q^k (q^r - 1) - 1) / (q^k - 1)` with `r = n mod k`: a lower bound
/// on A_q(n, 2k, k) from partial spreads.
pub fn partial_spread_lower_bound(n: u64, k: u64, q: u64) -> Result<BigUint> {
    check_nk(n, k)?;
    let r = n % k;
    let num = big_pow(q, n) - big_pow(q, k) * (big_pow(q, r) - 1u32) - 1u32;
    let den = big_pow(q, k) - 1u32;
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    Ok(quot)
}

/// Size of the constant weight code built from the partial spread above:
/// `(q^{2n-k} - q^n (q^r - 1) - q^{n-k}) / (q^k - 1)`.
pub fn fdtw_size_from_partial_spread(n: u64, k: u64, q: u64) -> Result<BigUint> {
    check_nk(n, k)?;
    let r = n % k;
    let num = big_pow(q, 2 * n - k) - big_pow(q, n) * (big_pow(q, r) - 1u32) - big_pow(q, n - k);
    let den = big_pow(q, k) - 1u32;
    Ok(num / den)
}

/// `(2^m + 1, 2^{2m-1} + 2^{m-1})`: the exact values of
/// A(2^{2m-1} - 1, 2^{m+1} - 4, 2^m - 1) and A(2^{2m-1}, 2^{m+1} - 4, 2^m).
pub fn optimal_family_values(m: u64) -> Result<(BigUint, BigUint)> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("defined for m >= 3, got m={m}")));
    }
    Ok((big_pow(2, m) + 1u32, big_pow(2, 2 * m - 1) + big_pow(2, m - 1)))
}

/// `q^{n-k} ⌊(q^n - 1) / (q^k - 1)⌋`, an upper bound on A(q^n, 2q^k - 2, q^k).
pub fn spread_upper_bound(n: u64, k: u64, q: u64) -> Result<BigUint> {
    check_nk(n, k)?;
    Ok(big_pow(q, n - k) * ((big_pow(q, n) - 1u32) / (big_pow(q, k) - 1u32)))
}
