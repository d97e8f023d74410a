//! Sheaves on `X = P^{n_1} × ⋯ × P^{n_r}` built from [`FactorSheaf`]s:
//! external tensor products, finite direct sums of them, and their cohomology
//! by the Künneth formula.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::binom::poly_binomial;
use crate::error::{Error, Result};
use crate::factor::FactorSheaf;

/// A product of projective spaces, given by its factor dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    dims: Vec<u32>,
}

impl Space {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSpace("at least one factor is required".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidSpace("factor dimensions must be positive".into()));
        }
        Ok(Space { dims })
    }

    pub fn projective(n: u32) -> Result<Self> {
        Space::new(vec![n])
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Number of factors.
    pub fn r(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension.
    pub fn d(&self) -> u32 {
        self.dims.iter().sum()
    }

    /// Rank of K₀, `Π (n_i + 1)`.
    pub fn k0_rank(&self) -> usize {
        self.dims.iter().map(|&n| n as usize + 1).product()
    }

    /// `K_X = O(-n_1-1, …, -n_r-1)`.
    pub fn canonical(&self) -> MultiDegree {
        MultiDegree(self.dims.iter().map(|&n| -(n as i64) - 1).collect())
    }

    /// `K_X^{-k}`, the twist carrying helix block `i` to block `i + k(d+1)`.
    pub fn anticanonical_power(&self, k: i64) -> MultiDegree {
        self.canonical().scale(-k)
    }

    pub fn diagonal(&self, t: i64) -> MultiDegree {
        MultiDegree(vec![t; self.r()])
    }

    pub fn zero_degree(&self) -> MultiDegree {
        self.diagonal(0)
    }

    pub(crate) fn check_degree(&self, a: &MultiDegree) -> Result<()> {
        if a.len() != self.r() {
            return Err(Error::ArityMismatch { expected: self.r(), found: a.len() });
        }
        Ok(())
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| format!("P{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// An integer vector indexed by the factors of a [`Space`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: i64) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * c).collect())
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        debug_assert_eq!(self.len(), rhs.len());
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        debug_assert_eq!(self.len(), rhs.len());
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &MultiDegree {
    type Output = MultiDegree;
    fn neg(self) -> MultiDegree {
        self.scale(-1)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// External tensor product `F_1 ⊠ ⋯ ⊠ F_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxProduct {
    factors: Vec<FactorSheaf>,
}

impl BoxProduct {
    pub fn new(factors: Vec<FactorSheaf>) -> Self {
        BoxProduct { factors }
    }

    pub fn line(space: &Space, a: &MultiDegree) -> Result<Self> {
        space.check_degree(a)?;
        Ok(BoxProduct {
            factors: space.dims.iter().zip(&a.0).map(|(&n, &k)| FactorSheaf::line(n, k)).collect(),
        })
    }

    pub fn factors(&self) -> &[FactorSheaf] {
        &self.factors
    }

    pub fn is_line(&self) -> bool {
        self.factors.iter().all(FactorSheaf::is_line)
    }

    pub fn as_line(&self) -> Option<MultiDegree> {
        self.factors.iter().map(FactorSheaf::as_line).collect::<Option<Vec<_>>>().map(MultiDegree)
    }

    pub fn rank(&self) -> Result<i64> {
        self.factors.iter().try_fold(1i64, |acc, f| {
            acc.checked_mul(f.rank()?).ok_or(Error::Overflow("rank"))
        })
    }

    pub fn check_space(&self, space: &Space) -> Result<()> {
        if self.factors.len() != space.r() {
            return Err(Error::ArityMismatch { expected: space.r(), found: self.factors.len() });
        }
        for (i, (f, &n)) in self.factors.iter().zip(space.dims()).enumerate() {
            if f.n() != n {
                return Err(Error::FactorMismatch { factor: i, expected: n, found: f.n() });
            }
        }
        Ok(())
    }

    pub fn twist(&self, t: &MultiDegree) -> BoxProduct {
        debug_assert_eq!(t.len(), self.factors.len());
        BoxProduct {
            factors: self.factors.iter().zip(&t.0).map(|(f, &c)| f.tensor_line(c)).collect(),
        }
    }

    /// Factor-wise dual.
    pub fn dual(&self) -> BoxProduct {
        BoxProduct { factors: self.factors.iter().map(FactorSheaf::dual).collect() }
    }

    /// Factor-wise tensor product; every factor pair needs a line bundle on
    /// at least one side.
    pub fn tensor(&self, other: &BoxProduct) -> Result<BoxProduct> {
        if self.factors.len() != other.factors.len() {
            return Err(Error::ArityMismatch { expected: self.factors.len(), found: other.factors.len() });
        }
        let factors = self
            .factors
            .iter()
            .zip(&other.factors)
            .enumerate()
            .map(|(i, (a, b))| {
                a.tensor(b).ok_or_else(|| Error::OutsideBottFamily {
                    factor: i,
                    left: a.to_string(),
                    right: b.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoxProduct { factors })
    }

    /// Künneth: the cohomology table is the convolution of the factor tables.
    pub fn cohomology(&self) -> Result<CohomologyTable> {
        let mut dims = vec![1u64];
        for f in &self.factors {
            let fc = f.cohomology()?;
            let mut next = vec![0u64; dims.len() + f.n() as usize];
            if let Some((q, h)) = fc.nonzero() {
                for (i, &v) in dims.iter().enumerate() {
                    next[i + q as usize] = v.checked_mul(h).ok_or(Error::Overflow("kunneth"))?;
                }
            }
            dims = next;
        }
        Ok(CohomologyTable { dims })
    }
}

impl fmt::Display for BoxProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_line() {
            Some(a) if self.factors.len() > 1 => {
                let parts: Vec<String> = a.0.iter().map(|x| x.to_string()).collect();
                write!(f, "O({})", parts.join(","))
            }
            _ => {
                let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join("#"))
            }
        }
    }
}

/// A finite direct sum `⊕ m_j B_j` kept in normal form: terms sorted,
/// duplicates merged, multiplicities positive. No terms is the zero sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SplitSheaf {
    terms: Vec<(u64, BoxProduct)>,
}

impl SplitSheaf {
    pub fn zero() -> Self {
        SplitSheaf { terms: Vec::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (u64, BoxProduct)>>(terms: I) -> Self {
        let mut merged: BTreeMap<BoxProduct, u64> = BTreeMap::new();
        for (m, b) in terms {
            if m > 0 {
                *merged.entry(b).or_insert(0) += m;
            }
        }
        SplitSheaf { terms: merged.into_iter().map(|(b, m)| (m, b)).collect() }
    }

    pub fn line(space: &Space, a: &MultiDegree) -> Result<Self> {
        Ok(SplitSheaf::from_terms([(1, BoxProduct::line(space, a)?)]))
    }

    pub fn lines<'a, I: IntoIterator<Item = &'a MultiDegree>>(space: &Space, degrees: I) -> Result<Self> {
        let terms = degrees
            .into_iter()
            .map(|a| Ok((1, BoxProduct::line(space, a)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SplitSheaf::from_terms(terms))
    }

    pub fn terms(&self) -> &[(u64, BoxProduct)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn check_space(&self, space: &Space) -> Result<()> {
        self.terms.iter().try_for_each(|(_, b)| b.check_space(space))
    }

    /// Line-bundle summands with multiplicity, or an error naming the first
    /// summand that is not a line bundle.
    pub fn line_terms(&self) -> Result<Vec<(u64, MultiDegree)>> {
        self.terms
            .iter()
            .map(|(m, b)| b.as_line().map(|a| (*m, a)).ok_or_else(|| Error::NotLineBundleSum(b.to_string())))
            .collect()
    }

    pub fn direct_sum(&self, other: &SplitSheaf) -> SplitSheaf {
        SplitSheaf::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn twist(&self, t: &MultiDegree) -> Result<SplitSheaf> {
        if let Some((_, b)) = self.terms.first() {
            if b.factors().len() != t.len() {
                return Err(Error::ArityMismatch { expected: b.factors().len(), found: t.len() });
            }
        }
        Ok(SplitSheaf::from_terms(self.terms.iter().map(|(m, b)| (*m, b.twist(t)))))
    }

    /// `B ⊗ F`, term by term.
    pub fn tensor_box(&self, b: &BoxProduct) -> Result<SplitSheaf> {
        let terms = self
            .terms
            .iter()
            .map(|(m, t)| Ok((*m, b.tensor(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SplitSheaf::from_terms(terms))
    }
}

impl fmt::Display for SplitSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, b)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m != 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// `h^q` for `q = 0..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    dims: Vec<u64>,
}

impl CohomologyTable {
    pub fn zero(d: u32) -> Self {
        CohomologyTable { dims: vec![0; d as usize + 1] }
    }

    pub fn get(&self, q: usize) -> u64 {
        self.dims.get(q).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&h| h == 0)
    }

    /// Lowest `q > 0` with `h^q ≠ 0`.
    pub fn first_higher(&self) -> Option<(usize, u64)> {
        self.dims.iter().enumerate().skip(1).find(|(_, &h)| h != 0).map(|(q, &h)| (q, h))
    }

    pub fn euler_char(&self) -> Result<i64> {
        self.dims.iter().enumerate().try_fold(0i64, |acc, (q, &h)| {
            let v = i64::try_from(h).map_err(|_| Error::Overflow("euler characteristic"))?;
            Ok(if q % 2 == 0 { acc + v } else { acc - v })
        })
    }

    fn add_scaled(&mut self, other: &CohomologyTable, m: u64) -> Result<()> {
        for (a, b) in self.dims.iter_mut().zip(&other.dims) {
            *a = b
                .checked_mul(m)
                .and_then(|v| a.checked_add(v))
                .ok_or(Error::Overflow("cohomology sum"))?;
        }
        Ok(())
    }
}

/// Cohomology of a split sheaf, additive over its summands.
pub fn cohomology(space: &Space, f: &SplitSheaf) -> Result<CohomologyTable> {
    f.check_space(space)?;
    let mut table = CohomologyTable::zero(space.d());
    for (m, b) in f.terms() {
        table.add_scaled(&b.cohomology()?, *m)?;
    }
    Ok(table)
}

/// `Ext^q(A, F) = H^q(A^* ⊗ F)`.
///
/// Defined when each factor of `A^*` or of the matching factor of every
/// summand of `F` is a line bundle; in particular whenever `F` is a sum of
/// line bundles.
pub fn ext_table(space: &Space, a: &BoxProduct, f: &SplitSheaf) -> Result<CohomologyTable> {
    a.check_space(space)?;
    f.check_space(space)?;
    cohomology(space, &f.tensor_box(&a.dual())?)
}

/// `χ(O(a), O(b)) = Π_i C(b_i - a_i + n_i, n_i)`.
pub fn euler_pairing(space: &Space, a: &MultiDegree, b: &MultiDegree) -> Result<i64> {
    space.check_degree(a)?;
    space.check_degree(b)?;
    space.dims().iter().zip(a.0.iter().zip(&b.0)).try_fold(1i64, |acc, (&n, (&ai, &bi))| {
        acc.checked_mul(poly_binomial(bi - ai + n as i64, n)?).ok_or(Error::Overflow("euler pairing"))
    })
}
