//! Twisted exterior powers of the cotangent bundle on a single projective
//! space, and their cohomology through the Bott formula.
//!
//! Everything the crate computes is eventually reduced to `h^q(P^n, Ω^p(k))`.
//! A [`FactorSheaf`] is always stored in Ω-normal form: tangent-side bundles
//! are converted with [`FactorSheaf::from_wedge_tangent`] and line bundles are
//! the `p = 0` case.

use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;

use crate::binom::{binomial, poly_binomial, to_dim};
use crate::error::{Error, Result};

/// `Ω^p(k)` on `P^n`, with `0 <= p <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSheaf {
    n: u32,
    p: u32,
    k: i64,
}

impl FactorSheaf {
    pub fn omega(n: u32, p: i64, k: i64) -> Result<Self> {
        if p < 0 || p > n as i64 {
            return Err(Error::ExteriorPowerOutOfRange { n, p });
        }
        Ok(FactorSheaf::folded(n, p as u32, k))
    }

    // Ω^n(k) = O(k-n-1): keep line bundles exactly at p = 0.
    fn folded(n: u32, p: u32, k: i64) -> Self {
        if p == n && n > 0 {
            FactorSheaf { n, p: 0, k: k - n as i64 - 1 }
        } else {
            FactorSheaf { n, p, k }
        }
    }

    pub fn line(n: u32, k: i64) -> Self {
        FactorSheaf { n, p: 0, k }
    }

    /// `Λ^p T(k)` rewritten as `Ω^{n-p}(k+n+1)`.
    pub fn from_wedge_tangent(n: u32, p: i64, k: i64) -> Result<Self> {
        if p < 0 || p > n as i64 {
            return Err(Error::ExteriorPowerOutOfRange { n, p });
        }
        Ok(FactorSheaf::folded(n, n - p as u32, k + n as i64 + 1))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// Twist of the line bundle, if this is one. Construction folds
    /// `Ω^n(k)` into `O(k-n-1)`, so line bundles are exactly `p = 0`.
    pub fn as_line(&self) -> Option<i64> {
        (self.p == 0).then_some(self.k)
    }

    pub fn is_line(&self) -> bool {
        self.as_line().is_some()
    }

    pub fn rank(&self) -> Result<i64> {
        binomial(self.n as i64, self.p as i64)
    }

    /// `(Ω^p(k))^* = Ω^{n-p}(n+1-k)`.
    pub fn dual(&self) -> Self {
        FactorSheaf::folded(self.n, self.n - self.p, self.n as i64 + 1 - self.k)
    }

    pub fn tensor_line(&self, c: i64) -> Self {
        FactorSheaf { k: self.k + c, ..*self }
    }

    /// Tensor product, defined when at least one side is a line bundle.
    pub fn tensor(&self, other: &FactorSheaf) -> Option<FactorSheaf> {
        debug_assert_eq!(self.n, other.n);
        if let Some(c) = self.as_line() {
            Some(other.tensor_line(c))
        } else {
            other.as_line().map(|c| self.tensor_line(c))
        }
    }

    /// `h^q(P^n, Ω^p(k))` for every `q`.
    pub fn cohomology(&self) -> Result<FactorCohomology> {
        bott_cohomology(self)
    }

    pub fn euler_char(&self) -> Result<i64> {
        self.cohomology()?.euler_char()
    }

    /// The class of `Ω^p(k)` in K₀ as a signed combination of line bundles
    /// `O(t)`, unwinding `0 → Ω^p → Λ^p V ⊗ O(-p) → Ω^{p-1} → 0`.
    /// Returned as `(coefficient, twist)` pairs.
    pub fn line_expansion(&self) -> Result<Vec<(i64, i64)>> {
        let n = self.n as i64;
        let mut terms = Vec::with_capacity(self.p as usize + 1);
        // [Ω^p(k)] = Σ_{j=0}^{p} (-1)^{p-j} C(n+1, j) [O(k-j)]
        for j in 0..=self.p as i64 {
            let c = binomial(n + 1, j)?;
            let sign = if (self.p as i64 - j) % 2 == 0 { 1 } else { -1 };
            terms.push((sign * c, self.k - j));
        }
        Ok(terms)
    }
}

impl fmt::Display for FactorSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_line() {
            Some(k) => write!(f, "O({k})"),
            None => write!(f, "Om({},{})", self.p, self.k),
        }
    }
}

/// Cohomology of a single [`FactorSheaf`]: at most one degree is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorCohomology {
    n: u32,
    nonzero: Option<(u32, u64)>,
}

impl FactorCohomology {
    pub fn get(&self, q: u32) -> u64 {
        match self.nonzero {
            Some((deg, dim)) if deg == q => dim,
            _ => 0,
        }
    }

    pub fn nonzero(&self) -> Option<(u32, u64)> {
        self.nonzero
    }

    pub fn dims(&self) -> Vec<u64> {
        (0..=self.n).map(|q| self.get(q)).collect()
    }

    pub fn euler_char(&self) -> Result<i64> {
        match self.nonzero {
            None => Ok(0),
            Some((q, dim)) => {
                let v = i64::try_from(dim).map_err(|_| Error::Overflow("euler characteristic"))?;
                Ok(if q % 2 == 0 { v } else { -v })
            }
        }
    }
}

fn memo() -> &'static DashMap<(u32, u32, i64), FactorCohomology> {
    static MEMO: OnceLock<DashMap<(u32, u32, i64), FactorCohomology>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// Bott formula for `h^q(P^n, Ω^p(k))`, memoized on `(n, p, k)`.
pub fn bott_cohomology(fs: &FactorSheaf) -> Result<FactorCohomology> {
    let key = (fs.n, fs.p, fs.k);
    if let Some(hit) = memo().get(&key) {
        return Ok(*hit);
    }
    let value = bott_uncached(fs)?;
    memo().insert(key, value);
    Ok(value)
}

fn bott_uncached(fs: &FactorSheaf) -> Result<FactorCohomology> {
    let (n, p, k) = (fs.n as i64, fs.p as i64, fs.k);
    let nonzero = if k > p {
        let h0 = binomial(k + n - p, k)?
            .checked_mul(binomial(k - 1, p)?)
            .ok_or(Error::Overflow("bott h^0"))?;
        Some((0, to_dim(h0)?))
    } else if k == 0 {
        Some((fs.p, 1))
    } else if k < p - n {
        let hn = binomial(p - k, -k)?
            .checked_mul(binomial(-k - 1, n - p)?)
            .ok_or(Error::Overflow("bott h^n"))?;
        Some((fs.n, to_dim(hn)?))
    } else {
        None
    };
    Ok(FactorCohomology { n: fs.n, nonzero: nonzero.filter(|&(_, d)| d != 0) })
}

/// `χ(O(d))` on `P^n` as the polynomial `C(d+n, n)`.
pub fn euler_char_line(n: u32, d: i64) -> Result<i64> {
    poly_binomial(d + n as i64, n)
}
