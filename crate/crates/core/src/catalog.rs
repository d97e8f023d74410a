//! Deterministic sheaf catalogs for the verification suites.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::product::{MultiDegree, SplitSheaf, Space};

/// Seed shared by every catalog; each catalog mixes in its own salt.
pub const CATALOG_SEED: u64 = 0x5eed_b10c_4e91;

/// Every multidegree with `|a_i| <= bound`, lexicographic.
pub fn degree_grid(space: &Space, bound: i64) -> Vec<MultiDegree> {
    space.dims().iter().map(|_| -bound..=bound).multi_cartesian_product().map(MultiDegree).collect()
}

/// Every line bundle `O(a)` with `|a_i| <= bound`.
pub fn line_grid(space: &Space, bound: i64) -> Vec<SplitSheaf> {
    degree_grid(space, bound)
        .into_iter()
        .map(|a| SplitSheaf::line(space, &a).expect("grid degrees match the space"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub count: usize,
    pub min_terms: usize,
    pub max_terms: usize,
    /// Degrees are drawn from `[-degree_bound, degree_bound]`.
    pub degree_bound: i64,
    pub max_multiplicity: u64,
    pub salt: u64,
}

impl RandomSpec {
    pub fn new(count: usize, terms: usize, degree_bound: i64) -> Self {
        RandomSpec { count, min_terms: terms, max_terms: terms, degree_bound, max_multiplicity: 1, salt: 0 }
    }
}

/// Random split sheaves of line bundles. The same space and parameters always give
/// the same list.
pub fn random_split(space: &Space, spec: &RandomSpec) -> Result<Vec<SplitSheaf>> {
    let dims_salt = space.dims().iter().fold(0u64, |h, &n| h.wrapping_mul(31).wrapping_add(n as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(CATALOG_SEED ^ spec.salt.rotate_left(17) ^ dims_salt.rotate_left(41));
    let b = spec.degree_bound;
    (0..spec.count)
        .map(|_| {
            let terms = rng.gen_range(spec.min_terms..=spec.max_terms);
            let mut f = SplitSheaf::zero();
            for _ in 0..terms {
                let a = MultiDegree(space.dims().iter().map(|_| rng.gen_range(-b..=b)).collect());
                let mult = rng.gen_range(1..=spec.max_multiplicity.max(1));
                for _ in 0..mult {
                    f = f.direct_sum(&SplitSheaf::line(space, &a)?);
                }
            }
            Ok(f)
        })
        .collect()
}

/// Line-bundle grid with `|a_i| <= bound` followed by `random` three-term sums
/// with degrees in the same range.
pub fn standard_catalog(space: &Space, bound: i64, random: usize) -> Result<Vec<SplitSheaf>> {
    let mut out = line_grid(space, bound);
    out.extend(random_split(space, &RandomSpec { salt: 3, ..RandomSpec::new(random, 3, bound) })?);
    Ok(out)
}
