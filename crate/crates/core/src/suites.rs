//! Verification suites: each sweeps a deterministic catalog on one space and
//! collects every counterexample it finds.

use std::fmt;
use std::str::FromStr;

use crate::blocks::{
    aligned_window_dual, fundamental_collection, helix_block, helix_window, verify_exceptional_structure, K0Lattice,
};
use crate::catalog::{degree_grid, random_split, standard_catalog, RandomSpec};
use crate::error::{Error, Result};
use crate::product::{SplitSheaf, Space};
use crate::regularity::{
    aligned_k, block_regular_aligned, block_regularity_aligned, block_regularity_pn, cm_regular,
    cm_regularity, direct_sum_check, hw_block_equivalence, hw_block_transfer, hw_min_diagonal, hw_regular,
    monotonicity_check, VerdictValue,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Staircase regularity at the origin versus block regularity at `-d`.
    HwBlockEquivalence,
    /// Both transfer bounds between staircase and block regularity.
    HwBlockTransfer,
    /// Helix members `E` of block `i` have block regularity `-i`.
    HelixRegularity,
    /// Block, staircase and CM regularity coincide on `P^n`.
    CmAgreement,
    Monotonicity,
    /// Twisting moves the staircase base and the aligned index.
    ShiftLaws,
    DirectSum,
    /// Gram matrices, exceptionality of windows and dual classes in K₀.
    DualClasses,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::HwBlockEquivalence,
        Suite::HwBlockTransfer,
        Suite::HelixRegularity,
        Suite::CmAgreement,
        Suite::Monotonicity,
        Suite::ShiftLaws,
        Suite::DirectSum,
        Suite::DualClasses,
    ];

    /// Command-line name.
    pub fn token(self) -> &'static str {
        match self {
            Suite::HwBlockEquivalence => "thm55",
            Suite::HwBlockTransfer => "cor56",
            Suite::HelixRegularity => "prop49",
            Suite::CmAgreement => "prop414",
            Suite::Monotonicity => "monotone",
            Suite::ShiftLaws => "shift",
            Suite::DirectSum => "dualsum",
            Suite::DualClasses => "duals",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.token() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Bound on `|a_i|` for the line-bundle grid.
    pub max_degree: i64,
    /// Number of random three-term sums added to the grid.
    pub random: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_degree: 4, random: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteFailure {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub space: Space,
    pub cases: usize,
    /// Reason the suite does not apply to this space.
    pub skipped: Option<String>,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteReport {
    fn new(suite: Suite, space: &Space) -> Self {
        SuiteReport { suite, space: space.clone(), cases: 0, skipped: None, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, case: impl fmt::Display, detail: Option<String>) {
        self.cases += 1;
        if let Some(detail) = detail {
            self.failures.push(SuiteFailure { case: case.to_string(), detail });
        }
    }
}

pub fn run_suite(space: &Space, suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(suite, space);
    match suite {
        Suite::HwBlockEquivalence => equivalence(space, config, &mut report)?,
        Suite::HwBlockTransfer => transfer(space, config, &mut report)?,
        Suite::HelixRegularity => helix(space, &mut report)?,
        Suite::CmAgreement => agreement(space, &mut report)?,
        Suite::Monotonicity => monotone(space, config, &mut report)?,
        Suite::ShiftLaws => shifts(space, config, &mut report)?,
        Suite::DirectSum => sums(space, config, &mut report)?,
        Suite::DualClasses => duals(space, &mut report)?,
    }
    Ok(report)
}

pub fn run_all(space: &Space, config: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(space, s, config)).collect()
}

fn catalog(space: &Space, config: &SuiteConfig) -> Result<Vec<SplitSheaf>> {
    standard_catalog(space, config.max_degree, config.random)
}

fn equivalence(space: &Space, config: &SuiteConfig, report: &mut SuiteReport) -> Result<()> {
    for f in catalog(space, config)? {
        let e = hw_block_equivalence(space, &f)?;
        let detail = (!e.agree()).then(|| {
            let show = |o: &crate::regularity::Outcome| match o.witness() {
                None => "regular".to_string(),
                Some(w) => format!("not regular ({w})"),
            };
            format!("hw at origin: {}; block at -d: {}", show(&e.hw), show(&e.block))
        });
        report.check(&f, detail);
    }
    Ok(())
}

fn transfer(space: &Space, config: &SuiteConfig, report: &mut SuiteReport) -> Result<()> {
    for f in catalog(space, config)? {
        let t = hw_block_transfer(space, &f)?;
        report.check(&f, t.failure.map(|x| x.to_string()));
    }
    Ok(())
}

fn helix(space: &Space, report: &mut SuiteReport) -> Result<()> {
    if space.r() == 1 {
        for i in -10..=10i64 {
            let f = SplitSheaf::line(space, &crate::product::MultiDegree(vec![i]))?;
            let v = block_regularity_pn(space.d(), &f)?.value();
            report.check(&f, (v != Some(-i)).then(|| format!("expected {}, got {v:?}", -i)));
        }
        return Ok(());
    }
    let period = space.d() as i64 + 1;
    for i in -7..=7i64 {
        for a in helix_block(space, i).members() {
            let f = SplitSheaf::line(space, a)?;
            let v = block_regularity_aligned(space, &f)?;
            let VerdictValue::Aligned { m, lower_exclusive, .. } = v.value else {
                report.check(&f, Some("no aligned value".into()));
                continue;
            };
            let contains = lower_exclusive < -i && -i <= m;
            let exact = aligned_k(space, -i).is_none() || m == -i;
            let detail = (!contains || !exact)
                .then(|| format!("block {i}: expected {} in ({lower_exclusive}, {m}], period {period}", -i));
            report.check(format!("{f} in block {i}"), detail);
        }
    }
    Ok(())
}

fn agreement(space: &Space, report: &mut SuiteReport) -> Result<()> {
    if space.r() != 1 {
        report.skipped = Some("only defined on a single projective space".into());
        return Ok(());
    }
    let n = space.d();
    let spec = RandomSpec { min_terms: 1, max_terms: 4, max_multiplicity: 2, salt: 414, ..RandomSpec::new(200, 1, 6) };
    for f in random_split(space, &spec)? {
        let cm = cm_regularity(n, &f)?.value();
        let block = block_regularity_pn(n, &f)?.value();
        let hw = hw_min_diagonal(space, &f)?.value();
        let mut detail = None;
        if cm != block || cm != hw {
            detail = Some(format!("cm {cm:?}, block {block:?}, hw {hw:?}"));
        } else if let Some(m) = cm {
            for t in m - 2..=m + 1 {
                let a = cm_regular(n, &f, t)?.is_regular();
                let b = hw_regular(space, &f, &space.diagonal(t))?.is_regular();
                if a != b {
                    detail = Some(format!("at {t}: cm {a}, hw {b}"));
                    break;
                }
            }
        }
        report.check(&f, detail);
    }
    Ok(())
}

fn monotone(space: &Space, config: &SuiteConfig, report: &mut SuiteReport) -> Result<()> {
    let reach = config.max_degree + space.d() as i64 + 2;
    for f in catalog(space, config)? {
        let mut detail = None;
        for m in -reach..=reach {
            if let Some(d) = monotonicity_check(space, &f, m)? {
                detail = Some(d);
                break;
            }
        }
        report.check(&f, detail);
    }
    Ok(())
}

fn shifts(space: &Space, config: &SuiteConfig, report: &mut SuiteReport) -> Result<()> {
    let offsets = degree_grid(space, 1);
    for f in catalog(space, config)? {
        let mut detail = None;
        for p in &offsets {
            let a = hw_regular(space, &f, p)?.is_regular();
            let b = hw_regular(space, &f.twist(p)?, &space.zero_degree())?.is_regular();
            if a != b {
                detail = Some(format!("hw at {p}: {a}, after twist at origin: {b}"));
                break;
            }
        }
        for k in -2..=2 {
            if detail.is_some() {
                break;
            }
            let a = block_regular_aligned(space, &f, k)?.is_regular();
            let b = block_regular_aligned(space, &f.twist(&space.anticanonical_power(k))?, 0)?.is_regular();
            if a != b {
                detail = Some(format!("block at k={k}: {a}, after twist at k=0: {b}"));
            }
        }
        report.check(&f, detail);
    }
    Ok(())
}

fn sums(space: &Space, config: &SuiteConfig, report: &mut SuiteReport) -> Result<()> {
    let sheaves = catalog(space, config)?;
    for (i, f) in sheaves.iter().enumerate() {
        let g = &sheaves[(i * 7 + 3) % sheaves.len()];
        report.check(format!("{f} ; {g}"), direct_sum_check(space, f, g)?);
        if i % 10 == 0 {
            report.check(format!("{f} ; {f}"), direct_sum_check(space, f, f)?);
        }
    }
    Ok(())
}

fn duals(space: &Space, report: &mut SuiteReport) -> Result<()> {
    let lattice = K0Lattice::new(space)?;
    let fc = fundamental_collection(space);
    report.check("fundamental Gram matrix", (!lattice.gram().is_unitriangular()).then(|| "not unitriangular".into()));
    for base in -6..=6 {
        let r = verify_exceptional_structure(space, &helix_window(space, base))?;
        let detail = match (&r.violation, r.full_rank) {
            (Some(v), _) => Some(format!("{}: ext^{}(O{}, O{}) = {}", v.kind, v.degree, v.from, v.to, v.dimension)),
            (None, false) => Some("member count differs from K0 rank".into()),
            (None, true) => None,
        };
        report.check(format!("window {base}"), detail);
    }
    let period = space.d() as i64 + 1;
    for k in -2..=2 {
        let solved = lattice.left_dual_classes(k * period)?;
        let mutated = lattice.dual_classes_by_mutation(k * period)?;
        let closed: Vec<_> = aligned_window_dual(space, k)?.into_iter().rev().flatten().collect();
        let mut detail = None;
        if solved.len() != closed.len() || solved.len() != fc.member_count() {
            detail = Some("window sizes differ".to_string());
        }
        for ((s, m), c) in solved.iter().zip(&mutated).zip(&closed) {
            if detail.is_some() {
                break;
            }
            let box_class = lattice.class_of_box(&c.dual)?;
            let expanded = lattice.class_by_expansion(&c.dual)?;
            if s.member != c.member || m.member != c.member {
                detail = Some(format!("member order differs at O{}", c.member));
            } else if s.class != box_class || s.class != expanded || s.class != m.class {
                detail = Some(format!(
                    "dual of O{}: solve {}, mutation {}, closed form {} / {}",
                    c.member, s.class, m.class, box_class, expanded
                ));
            }
        }
        report.check(format!("aligned window k={k}"), detail);
    }
    Ok(())
}
