//! Regularity of split sheaves: Castelnuovo–Mumford on `P^n`, regularity with
//! respect to a block collection, and the multigraded staircase condition on
//! products of projective spaces; plus the comparisons between them and the
//! resolution terms a regular sheaf gets from its dual collection.
//!
//! Conventions for block regularity:
//!
//! * On a single `P^n` the collection is `(O, O(1), …, O(n))`, so block
//!   regularity agrees with Castelnuovo–Mumford regularity. `F` is
//!   `m`-regular when `H^q(Ω^j(m+j) ⊗ F) = 0` for `q > 0` and `0 <= j <= n`.
//! * On a product the collection is the fundamental one. Only the aligned
//!   values `m = k(d+1) - d` are decidable from closed-form duals; there `F`
//!   is `m`-regular when `H^q(⊠ Ω^{-a_i}(-a_i) ⊗ F ⊗ K^{-k}) = 0` for `q > 0`
//!   and every `-n_i <= a_i <= 0`.

use std::fmt;

use itertools::Itertools;

use crate::blocks::{aligned_window_dual, window_dual, DualPair, K0Class, K0Lattice};
use crate::error::{Error, Result};
use crate::product::{cohomology, ext_table, BoxProduct, MultiDegree, SplitSheaf, Space};

/// Hard cap on predicate evaluations in a least-regular search.
pub const SEARCH_CAP: u32 = 512;

/// What a nonzero cohomology group was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe {
    /// `H^q(F ⊗ O(t))`.
    Twist(MultiDegree),
    /// `Ext^q(object, F)`, where `object` is the dual attached to `member`.
    TestObject { member: MultiDegree, object: BoxProduct },
}

/// A concrete nonvanishing that refutes a regularity claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub probe: Probe,
    pub degree: usize,
    pub dimension: u64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.probe {
            Probe::Twist(t) => write!(f, "h^{}(F{}) = {}", self.degree, t, self.dimension),
            Probe::TestObject { member, object } => {
                write!(f, "ext^{}({}, F) = {} [dual of O{}]", self.degree, object, self.dimension, member)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Regular,
    NotRegular(Witness),
}

impl Outcome {
    pub fn is_regular(&self) -> bool {
        matches!(self, Outcome::Regular)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Regular => None,
            Outcome::NotRegular(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityKind {
    CastelnuovoMumford,
    Block,
    BlockAligned,
    HoffmanWang,
}

impl fmt::Display for RegularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegularityKind::CastelnuovoMumford => "cm",
            RegularityKind::Block => "block",
            RegularityKind::BlockAligned => "block-aligned",
            RegularityKind::HoffmanWang => "hw",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictValue {
    /// The zero sheaf.
    NegInfinity,
    Exact(i64),
    /// Least aligned `m = k(d+1) - d`; the true value lies in
    /// `(lower_exclusive, m]`.
    Aligned { k: i64, m: i64, lower_exclusive: i64 },
    /// Least `t` with the sheaf regular at `(t, …, t)`.
    Diagonal(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub kind: RegularityKind,
    pub value: VerdictValue,
    /// Why the value cannot be lowered: a failure one lattice step below.
    pub witnesses: Vec<Witness>,
    /// Set for staircase conditions on more than two factors.
    pub experimental: bool,
}

impl RegularityVerdict {
    /// The headline integer: exact value, aligned `m`, or diagonal `t`.
    pub fn value(&self) -> Option<i64> {
        match self.value {
            VerdictValue::NegInfinity => None,
            VerdictValue::Exact(v) | VerdictValue::Diagonal(v) => Some(v),
            VerdictValue::Aligned { m, .. } => Some(m),
        }
    }

    fn neg_infinity(kind: RegularityKind, experimental: bool) -> Self {
        RegularityVerdict { kind, value: VerdictValue::NegInfinity, witnesses: Vec::new(), experimental }
    }
}

fn require_lines(space: &Space, f: &SplitSheaf) -> Result<Vec<(u64, MultiDegree)>> {
    f.check_space(space)?;
    f.line_terms()
}

fn single_factor(n: u32) -> Result<Space> {
    Space::projective(n)
}

/// Least lattice parameter `t` with `pred(t)` regular, assuming monotonicity
/// in `t`. Brackets geometrically from `seed`, then bisects. Returns the
/// value and the failure at `t - 1`.
fn least_regular<P>(seed: i64, mut pred: P) -> Result<(i64, Witness)>
where
    P: FnMut(i64) -> Result<Outcome>,
{
    let mut evals = 0u32;
    let mut eval = |t: i64| -> Result<Outcome> {
        evals += 1;
        if evals > SEARCH_CAP {
            return Err(Error::SearchCap(SEARCH_CAP));
        }
        pred(t)
    };
    let (mut lo, mut hi, mut lo_witness);
    match eval(seed)? {
        Outcome::Regular => {
            hi = seed;
            let mut step = 1i64;
            loop {
                let t = seed.checked_sub(step).ok_or(Error::SearchCap(SEARCH_CAP))?;
                match eval(t)? {
                    Outcome::Regular => {
                        hi = t;
                        step = step.checked_mul(2).ok_or(Error::SearchCap(SEARCH_CAP))?;
                    }
                    Outcome::NotRegular(w) => {
                        lo = t;
                        lo_witness = w;
                        break;
                    }
                }
            }
        }
        Outcome::NotRegular(w) => {
            lo = seed;
            lo_witness = w;
            let mut step = 1i64;
            loop {
                let t = seed.checked_add(step).ok_or(Error::SearchCap(SEARCH_CAP))?;
                match eval(t)? {
                    Outcome::Regular => {
                        hi = t;
                        break;
                    }
                    Outcome::NotRegular(w) => {
                        lo = t;
                        lo_witness = w;
                        step = step.checked_mul(2).ok_or(Error::SearchCap(SEARCH_CAP))?;
                    }
                }
            }
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match eval(mid)? {
            Outcome::Regular => hi = mid,
            Outcome::NotRegular(w) => {
                lo = mid;
                lo_witness = w;
            }
        }
    }
    Ok((hi, lo_witness))
}

/// Largest `-a_i` over all summands and factors: every twist at or above it
/// is globally generated, a good starting point for the searches.
fn degree_seed(lines: &[(u64, MultiDegree)]) -> i64 {
    lines.iter().flat_map(|(_, a)| a.0.iter().map(|x| -x)).max().unwrap_or(0)
}

/// `H^i(P^n, F(m-i)) = 0` for `0 < i <= n`.
pub fn cm_regular(n: u32, f: &SplitSheaf, m: i64) -> Result<Outcome> {
    let space = single_factor(n)?;
    require_lines(&space, f)?;
    for i in 1..=n as i64 {
        let t = MultiDegree(vec![m - i]);
        let table = cohomology(&space, &f.twist(&t)?)?;
        let h = table.get(i as usize);
        if h != 0 {
            return Ok(Outcome::NotRegular(Witness { probe: Probe::Twist(t), degree: i as usize, dimension: h }));
        }
    }
    Ok(Outcome::Regular)
}

pub fn cm_regularity(n: u32, f: &SplitSheaf) -> Result<RegularityVerdict> {
    let space = single_factor(n)?;
    let lines = require_lines(&space, f)?;
    if lines.is_empty() {
        return Ok(RegularityVerdict::neg_infinity(RegularityKind::CastelnuovoMumford, false));
    }
    let (m, w) = least_regular(degree_seed(&lines), |m| cm_regular(n, f, m))?;
    Ok(RegularityVerdict {
        kind: RegularityKind::CastelnuovoMumford,
        value: VerdictValue::Exact(m),
        witnesses: vec![w],
        experimental: false,
    })
}

/// Vanishing of all higher `Ext(R, F)` over the dual objects of a window.
fn check_window(space: &Space, f: &SplitSheaf, duals: &[Vec<DualPair>]) -> Result<Outcome> {
    for pair in duals.iter().flatten() {
        let table = ext_table(space, &pair.dual, f)?;
        if let Some((degree, dimension)) = table.first_higher() {
            return Ok(Outcome::NotRegular(Witness {
                probe: Probe::TestObject { member: pair.member.clone(), object: pair.dual.clone() },
                degree,
                dimension,
            }));
        }
    }
    Ok(Outcome::Regular)
}

/// The window whose top block is `O(-m)` on `P^n`, with duals `Λ^j T(-m-j)`.
fn pn_window(space: &Space, m: i64) -> Result<Vec<Vec<DualPair>>> {
    Ok(window_dual(space, -m)?.expect("single-factor windows always have duals"))
}

/// `H^q(Ω^j(m+j) ⊗ F) = 0` for all `q > 0` and `0 <= j <= n`.
pub fn block_regular_pn(n: u32, f: &SplitSheaf, m: i64) -> Result<Outcome> {
    let space = single_factor(n)?;
    require_lines(&space, f)?;
    check_window(&space, f, &pn_window(&space, m)?)
}

pub fn block_regularity_pn(n: u32, f: &SplitSheaf) -> Result<RegularityVerdict> {
    let space = single_factor(n)?;
    let lines = require_lines(&space, f)?;
    if lines.is_empty() {
        return Ok(RegularityVerdict::neg_infinity(RegularityKind::Block, false));
    }
    let (m, w) = least_regular(degree_seed(&lines), |m| block_regular_pn(n, f, m))?;
    Ok(RegularityVerdict { kind: RegularityKind::Block, value: VerdictValue::Exact(m), witnesses: vec![w], experimental: false })
}

/// Helix lattice point `m = k(d+1) - d`.
pub fn aligned_m(space: &Space, k: i64) -> i64 {
    k * (space.d() as i64 + 1) - space.d() as i64
}

/// Inverse of [`aligned_m`], if `m` is aligned.
pub fn aligned_k(space: &Space, m: i64) -> Option<i64> {
    let period = space.d() as i64 + 1;
    let shifted = m + space.d() as i64;
    (shifted.rem_euclid(period) == 0).then(|| shifted / period)
}

/// Block regularity at the aligned value `m = k(d+1) - d`, tested against
/// the closed-form dual of the window `B_{-k(d+1)}`.
pub fn block_regular_aligned(space: &Space, f: &SplitSheaf, k: i64) -> Result<Outcome> {
    require_lines(space, f)?;
    check_window(space, f, &aligned_window_dual(space, -k)?)
}

/// Least aligned `m` at which `F` is block regular. Monotonicity gives the
/// true regularity in `(m - (d+1), m]`.
pub fn block_regularity_aligned(space: &Space, f: &SplitSheaf) -> Result<RegularityVerdict> {
    let lines = require_lines(space, f)?;
    if lines.is_empty() {
        return Ok(RegularityVerdict::neg_infinity(RegularityKind::BlockAligned, false));
    }
    let period = space.d() as i64 + 1;
    let seed = (degree_seed(&lines) + space.d() as i64).div_euclid(period);
    let (k, w) = least_regular(seed, |k| block_regular_aligned(space, f, k))?;
    let m = aligned_m(space, k);
    Ok(RegularityVerdict {
        kind: RegularityKind::BlockAligned,
        value: VerdictValue::Aligned { k, m, lower_exclusive: m - period },
        witnesses: vec![w],
        experimental: false,
    })
}

/// The staircase `St_i(base)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StSet {
    pub i: i64,
    pub base: MultiDegree,
    pub members: Vec<MultiDegree>,
}

/// Compositions of `total` into `parts` non-negative integers, lexicographic.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `St_i(base)`: for `i >= 1` the offsets `l` with every `l_j < 0` and
/// `Σ l_j = -(r-1) - i`; for `i <= 0` the offsets with every `l_j >= 0` and
/// `Σ l_j = -i`. Members are `base + l` in lexicographic order.
pub fn st_set(space: &Space, i: i64, base: &MultiDegree) -> Result<StSet> {
    space.check_degree(base)?;
    let r = space.r();
    let offsets: Vec<MultiDegree> = if i >= 1 {
        compositions(i - 1, r).into_iter().map(|u| MultiDegree(u.into_iter().map(|x| -1 - x).collect())).collect()
    } else {
        compositions(-i, r).into_iter().map(MultiDegree).collect()
    };
    let mut members: Vec<MultiDegree> = offsets.iter().map(|l| base + l).collect();
    members.sort();
    Ok(StSet { i, base: base.clone(), members })
}

/// `H^i(F(l)) = 0` for every `l ∈ St_i(base)`, `1 <= i <= d`.
pub fn hw_regular(space: &Space, f: &SplitSheaf, base: &MultiDegree) -> Result<Outcome> {
    require_lines(space, f)?;
    for i in 1..=space.d() as i64 {
        for l in st_set(space, i, base)?.members {
            let h = cohomology(space, &f.twist(&l)?)?.get(i as usize);
            if h != 0 {
                return Ok(Outcome::NotRegular(Witness { probe: Probe::Twist(l), degree: i as usize, dimension: h }));
            }
        }
    }
    Ok(Outcome::Regular)
}

/// Least `t` with `F` regular at `(t, …, t)`.
pub fn hw_min_diagonal(space: &Space, f: &SplitSheaf) -> Result<RegularityVerdict> {
    let lines = require_lines(space, f)?;
    let experimental = space.r() > 2;
    if lines.is_empty() {
        return Ok(RegularityVerdict::neg_infinity(RegularityKind::HoffmanWang, experimental));
    }
    let (t, w) = least_regular(degree_seed(&lines), |t| hw_regular(space, f, &space.diagonal(t)))?;
    Ok(RegularityVerdict {
        kind: RegularityKind::HoffmanWang,
        value: VerdictValue::Diagonal(t),
        witnesses: vec![w],
        experimental,
    })
}

/// Staircase regularity at the origin against block regularity at `m = -d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub hw: Outcome,
    pub block: Outcome,
}

impl Equivalence {
    pub fn agree(&self) -> bool {
        self.hw.is_regular() == self.block.is_regular()
    }
}

/// `(0,…,0)`-regular in the staircase sense versus `(-d)`-regular with
/// respect to the fundamental collection.
pub fn hw_block_equivalence(space: &Space, f: &SplitSheaf) -> Result<Equivalence> {
    Ok(Equivalence {
        hw: hw_regular(space, f, &space.zero_degree())?,
        block: block_regular_aligned(space, f, 0)?,
    })
}

/// A failed implication from the transfer bounds between the two notions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransferFailure {
    /// Block `p`-regular but not staircase regular at `base`.
    BlockToHw { p: i64, base: MultiDegree, witness: Witness },
    /// Staircase regular at `base` but not block regular at `m`.
    HwToBlock { base: MultiDegree, m: i64, witness: Witness },
}

impl fmt::Display for TransferFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferFailure::BlockToHw { p, base, witness } => {
                write!(f, "block {p}-regular but not hw-regular at {base}: {witness}")
            }
            TransferFailure::HwToBlock { base, m, witness } => {
                write!(f, "hw-regular at {base} but not block {m}-regular: {witness}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransferReport {
    /// Number of implications evaluated.
    pub checked: usize,
    pub failure: Option<TransferFailure>,
}

/// Staircase base implied by block `p`-regularity: with
/// `p = λ(d+1) + ρ`, `0 < ρ <= d+1`, the base `((λ+2)(n_i+1))_i`.
pub fn hw_base_from_block(space: &Space, p: i64) -> MultiDegree {
    let lambda = (p - 1).div_euclid(space.d() as i64 + 1);
    MultiDegree(space.dims().iter().map(|&n| (lambda + 2) * (n as i64 + 1)).collect())
}

/// Block regularity implied by staircase regularity at `base`: with
/// `base_i = λ_i(n_i+1) + ρ_i`, `0 < ρ_i <= n_i+1`, and `φ = max λ_i`, the
/// value `φ(d+1) + 1`. Returns `(φ + 1, φ(d+1) + 1)`; the first entry is the
/// aligned `k` whose `m` it is.
pub fn block_bound_from_hw(space: &Space, base: &MultiDegree) -> (i64, i64) {
    let phi = space
        .dims()
        .iter()
        .zip(&base.0)
        .map(|(&n, &b)| (b - 1).div_euclid(n as i64 + 1))
        .max()
        .expect("spaces have at least one factor");
    (phi + 1, phi * (space.d() as i64 + 1) + 1)
}

/// Evaluates both transfer implications on `F`: from every block-regular
/// `p` in `[m, m + 2(d+1)]` (with `m` the least aligned value) to staircase
/// regularity, and from every staircase-regular base in a box around the
/// diagonal minimum to block regularity.
pub fn hw_block_transfer(space: &Space, f: &SplitSheaf) -> Result<TransferReport> {
    let mut report = TransferReport::default();
    let block = block_regularity_aligned(space, f)?;
    let hw = hw_min_diagonal(space, f)?;
    let (Some(m0), Some(t0)) = (block.value(), hw.value()) else {
        return Ok(report);
    };
    let period = space.d() as i64 + 1;
    for p in m0..=m0 + 2 * period {
        let base = hw_base_from_block(space, p);
        report.checked += 1;
        if let Outcome::NotRegular(witness) = hw_regular(space, f, &base)? {
            report.failure = Some(TransferFailure::BlockToHw { p, base, witness });
            return Ok(report);
        }
    }
    let spread = space.dims().iter().map(|&n| n as i64 + 1).max().unwrap_or(1);
    for base in space.dims().iter().map(|_| t0 - spread..=t0 + spread).multi_cartesian_product() {
        let base = MultiDegree(base);
        if !hw_regular(space, f, &base)?.is_regular() {
            continue;
        }
        let (k, m) = block_bound_from_hw(space, &base);
        report.checked += 1;
        if let Outcome::NotRegular(witness) = block_regular_aligned(space, f, k)? {
            report.failure = Some(TransferFailure::HwToBlock { base, m, witness });
            return Ok(report);
        }
    }
    Ok(report)
}

/// Regular at `m` implies regular one lattice step higher: every integer on
/// `P^n` (for both CM and block regularity), the aligned step on products,
/// and the diagonal step for the staircase condition. Returns a description
/// of the first broken implication.
pub fn monotonicity_check(space: &Space, f: &SplitSheaf, m: i64) -> Result<Option<String>> {
    let broken = |name: &str, from: i64, to: i64, w: &Witness| Some(format!("{name}: regular at {from} but not at {to}: {w}"));
    if space.r() == 1 {
        let n = space.d();
        if cm_regular(n, f, m)?.is_regular() {
            if let Outcome::NotRegular(w) = cm_regular(n, f, m + 1)? {
                return Ok(broken("cm", m, m + 1, &w));
            }
        }
        if block_regular_pn(n, f, m)?.is_regular() {
            if let Outcome::NotRegular(w) = block_regular_pn(n, f, m + 1)? {
                return Ok(broken("block", m, m + 1, &w));
            }
        }
    }
    if let Some(k) = aligned_k(space, m) {
        if block_regular_aligned(space, f, k)?.is_regular() {
            if let Outcome::NotRegular(w) = block_regular_aligned(space, f, k + 1)? {
                return Ok(broken("block-aligned", m, aligned_m(space, k + 1), &w));
            }
        }
    }
    if hw_regular(space, f, &space.diagonal(m))?.is_regular() {
        if let Outcome::NotRegular(w) = hw_regular(space, f, &space.diagonal(m + 1))? {
            return Ok(broken("hw", m, m + 1, &w));
        }
    }
    Ok(None)
}

/// The block regularity used for comparisons: exact on `P^n`, aligned on
/// products. `None` is `-∞`.
pub fn block_regularity(space: &Space, f: &SplitSheaf) -> Result<RegularityVerdict> {
    if space.r() == 1 {
        block_regularity_pn(space.d(), f)
    } else {
        block_regularity_aligned(space, f)
    }
}

/// `Reg(F ⊕ G) = max(Reg F, Reg G)` for block regularity (and for the other
/// notions that apply), plus the bound `Reg(F_2) <= max(Reg F_1, Reg F_3)`
/// on the split sequence `0 → F → F ⊕ G → G → 0`.
pub fn direct_sum_check(space: &Space, f: &SplitSheaf, g: &SplitSheaf) -> Result<Option<String>> {
    let sum = f.direct_sum(g);
    let values = |x: &SplitSheaf| -> Result<Vec<(&'static str, Option<i64>)>> {
        let mut v = vec![
            ("block", block_regularity(space, x)?.value()),
            ("hw", hw_min_diagonal(space, x)?.value()),
        ];
        if space.r() == 1 {
            v.push(("cm", cm_regularity(space.d(), x)?.value()));
        }
        Ok(v)
    };
    let (vf, vg, vs) = (values(f)?, values(g)?, values(&sum)?);
    for (((name, a), (_, b)), (_, s)) in vf.into_iter().zip(vg).zip(vs) {
        let max = a.max(b);
        if s > max {
            return Ok(Some(format!("{name}: Reg(F+G) = {s:?} exceeds max(Reg F, Reg G) = {max:?}")));
        }
        if s != max {
            return Ok(Some(format!("{name}: Reg(F+G) = {s:?} but max(Reg F, Reg G) = {max:?}")));
        }
    }
    Ok(None)
}

/// One term `L_p = ⊕ E^{mult}` of the resolution of a regular sheaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTerm {
    pub p: i64,
    /// Line bundles of helix block `-m + p` with their multiplicities
    /// `h^0(R^* ⊗ F)`; zero multiplicities are kept so every block member is
    /// listed.
    pub summands: Vec<(MultiDegree, u64)>,
}

/// Terms `L_{-d}, …, L_0` of `0 → L_{-d} → ⋯ → L_0 → F → 0` for an
/// `m`-regular `F`. On `P^n` any integer `m` is accepted (collection
/// `(O, …, O(n))`); on products `m` must be aligned.
pub fn beilinson_terms(space: &Space, f: &SplitSheaf, m: i64) -> Result<Vec<ResolutionTerm>> {
    require_lines(space, f)?;
    let duals = if space.r() == 1 {
        pn_window(space, m)?
    } else {
        let k = aligned_k(space, m).ok_or(Error::NotAligned { m, d: space.d() })?;
        aligned_window_dual(space, -k)?
    };
    if !check_window(space, f, &duals)?.is_regular() {
        return Err(Error::NotRegular { m });
    }
    let mut terms = Vec::with_capacity(duals.len());
    // duals[j] sits j blocks below the top, i.e. at p = -j.
    for (j, pairs) in duals.iter().enumerate().rev() {
        let summands = pairs
            .iter()
            .map(|pair| Ok((pair.member.clone(), ext_table(space, &pair.dual, f)?.get(0))))
            .collect::<Result<Vec<_>>>()?;
        terms.push(ResolutionTerm { p: -(j as i64), summands });
    }
    Ok(terms)
}

/// `Σ_p (-1)^p [L_p]` in K₀.
pub fn resolution_class(lattice: &K0Lattice, terms: &[ResolutionTerm]) -> Result<K0Class> {
    let mut total = K0Class::zero(lattice.rank());
    for term in terms {
        let sign = if term.p % 2 == 0 { 1 } else { -1 };
        for (a, mult) in &term.summands {
            let c = lattice.class_of_line(a)?;
            total = &total + &c.scale(sign * *mult as i64);
        }
    }
    Ok(total)
}
