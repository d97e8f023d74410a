//! Overflow-checked integer binomials.
//!
//! [`binomial`] is the combinatorial coefficient with `C(n, k) = 0` outside
//! `0 <= k <= n`. [`poly_binomial`] is the polynomial `x(x-1)...(x-k+1)/k!`,
//! which is what Euler characteristics of line bundles need for negative `x`.

use crate::error::{Error, Result};

/// `C(n, k)` for integers, zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<i64> {
    if k < 0 || n < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc
            .checked_mul((n - i) as i128)
            .ok_or(Error::Overflow("binomial"))?
            / (i as i128 + 1);
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}

/// The binomial polynomial `C(x, k) = x(x-1)...(x-k+1)/k!` for any integer `x`
/// and `k >= 0`. Agrees with [`binomial`] when `x >= 0`.
pub fn poly_binomial(x: i64, k: u32) -> Result<i64> {
    if x >= 0 {
        return binomial(x, k as i64);
    }
    // C(-y, k) = (-1)^k C(y+k-1, k) for y > 0.
    let y = x.checked_neg().ok_or(Error::Overflow("binomial"))?;
    let top = y
        .checked_add(k as i64 - 1)
        .ok_or(Error::Overflow("binomial"))?;
    let c = binomial(top, k as i64)?;
    Ok(if k % 2 == 0 { c } else { -c })
}

pub(crate) fn to_dim(v: i64) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow("dimension"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling(x: i64, k: u32) -> i128 {
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for i in 0..k as i64 {
            num *= (x - i) as i128;
            den *= (i + 1) as i128;
        }
        num / den
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(4, 0).unwrap(), 1);
        assert_eq!(binomial(3, 4).unwrap(), 0);
        assert_eq!(binomial(3, -1).unwrap(), 0);
        assert_eq!(binomial(-1, 0).unwrap(), 0);
    }

    #[test]
    fn polynomial_matches_falling_factorial() {
        for x in -20..=20 {
            for k in 0..=6 {
                assert_eq!(poly_binomial(x, k).unwrap() as i128, falling(x, k), "C({x},{k})");
            }
        }
        assert_eq!(poly_binomial(-1, 1).unwrap(), -1);
    }

    #[test]
    fn overflow_is_an_error() {
        assert_eq!(binomial(200, 100), Err(Error::Overflow("binomial")));
        assert!(binomial(60, 30).is_ok());
    }
}
