//! Block collections of line bundles on products of projective spaces, their
//! helix, dual collections, Gram matrices, and classes in K₀.
//!
//! The fundamental collection has blocks
//! `E_j = { O(a) : -n_i <= a_i <= 0, Σ a_i = j - d }` for `j = 0..=d`, and the
//! helix continues it periodically: `E_{j + k(d+1)} = E_j ⊗ K_X^{-k}`.
//! K₀ coordinates are always taken in the flattened fundamental collection.

use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::factor::FactorSheaf;
use crate::product::{euler_pairing, ext_table, BoxProduct, MultiDegree, SplitSheaf, Space};

/// Line bundles `O(a)` that are mutually Ext-orthogonal; members kept in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    members: Vec<MultiDegree>,
}

impl Block {
    pub fn new(mut members: Vec<MultiDegree>) -> Self {
        members.sort();
        members.dedup();
        Block { members }
    }

    pub fn members(&self) -> &[MultiDegree] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn twist(&self, t: &MultiDegree) -> Block {
        Block::new(self.members.iter().map(|a| a + t).collect())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|a| format!("O{a}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Consecutive blocks `E_base, …, E_{base+len-1}` on a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCollection {
    space: Space,
    blocks: Vec<Block>,
    base_index: i64,
}

impl BlockCollection {
    /// No structural checks beyond arity; use [`verify_exceptional_structure`]
    /// for the Ext conditions.
    pub fn new(space: Space, blocks: Vec<Block>, base_index: i64) -> Result<Self> {
        for a in blocks.iter().flat_map(|b| b.members()) {
            space.check_degree(a)?;
        }
        Ok(BlockCollection { space, blocks, base_index })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn base_index(&self) -> i64 {
        self.base_index
    }

    /// `(α_0, …, α_m)`.
    pub fn block_type(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::len).collect()
    }

    /// Members in collection order, tagged with their helix block index.
    pub fn flattened(&self) -> Vec<(i64, MultiDegree)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(j, b)| b.members().iter().map(move |a| (self.base_index + j as i64, a.clone())))
            .collect()
    }

    pub fn member_count(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }
}

/// Lattice points `-n_i <= a_i <= 0` with `Σ a_i = level`, in lexicographic order.
fn level_members(dims: &[u32], level: i64) -> Vec<MultiDegree> {
    fn rec(dims: &[u32], rest: i64, prefix: &mut Vec<i64>, out: &mut Vec<MultiDegree>) {
        let Some((&n, tail)) = dims.split_first() else {
            if rest == 0 {
                out.push(MultiDegree(prefix.clone()));
            }
            return;
        };
        let tail_min: i64 = -tail.iter().map(|&m| m as i64).sum::<i64>();
        for a in -(n as i64)..=0 {
            let need = rest - a;
            if need < tail_min || need > 0 {
                continue;
            }
            prefix.push(a);
            rec(tail, need, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dims, level, &mut Vec::new(), &mut out);
    out
}

fn fundamental_block(space: &Space, j: u32) -> Block {
    Block::new(level_members(space.dims(), j as i64 - space.d() as i64))
}

/// The `d`-block collection `(E_0, …, E_d)` of all line bundles with
/// `-n_i <= a_i <= 0`, graded by `Σ a_i`.
pub fn fundamental_collection(space: &Space) -> BlockCollection {
    let blocks = (0..=space.d()).map(|j| fundamental_block(space, j)).collect();
    BlockCollection { space: space.clone(), blocks, base_index: 0 }
}

/// Splits a helix index as `i = j + k(d+1)` with `0 <= j <= d`.
pub fn helix_position(space: &Space, i: i64) -> (u32, i64) {
    let period = space.d() as i64 + 1;
    (i.rem_euclid(period) as u32, i.div_euclid(period))
}

/// Helix block `E_i = E_j ⊗ K_X^{-k}` where `i = j + k(d+1)`.
pub fn helix_block(space: &Space, i: i64) -> Block {
    let (j, k) = helix_position(space, i);
    fundamental_block(space, j).twist(&space.anticanonical_power(k))
}

/// The `d + 1` consecutive helix blocks starting at `base`.
pub fn helix_window(space: &Space, base: i64) -> BlockCollection {
    let blocks = (0..=space.d() as i64).map(|j| helix_block(space, base + j)).collect();
    BlockCollection { space: space.clone(), blocks, base_index: base }
}

/// A window member together with the matching object of the left dual
/// collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPair {
    /// Helix block index of the member.
    pub block: i64,
    /// Distance of that block from the top of the window (the `j` in `R^{(j)}`).
    pub distance: u32,
    pub member: MultiDegree,
    pub dual: BoxProduct,
}

/// Closed-form left dual of the window starting at `base`, when one is known:
/// aligned windows (`base` a multiple of `d + 1`) on any space, and every
/// window on a single projective space. Ordered `R^{(0)}E_top, …, R^{(d)}E_base`.
pub fn window_dual(space: &Space, base: i64) -> Result<Option<Vec<Vec<DualPair>>>> {
    let d = space.d() as i64;
    let period = d + 1;
    let shift = if space.r() == 1 {
        // On P^n the blocks are single line bundles, and the window at `base`
        // is the aligned one at 0 twisted by O(base).
        MultiDegree(vec![base])
    } else if base.rem_euclid(period) == 0 {
        space.anticanonical_power(base / period)
    } else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(d as usize + 1);
    for j in 0..=space.d() {
        let block = fundamental_block(space, space.d() - j);
        let pairs = block
            .members()
            .iter()
            .map(|a| {
                let factors = space
                    .dims()
                    .iter()
                    .zip(a.0.iter().zip(&shift.0))
                    .map(|(&n, (&ai, &si))| FactorSheaf::from_wedge_tangent(n, -ai, ai + si))
                    .collect::<Result<Vec<_>>>()?;
                Ok(DualPair {
                    block: base + d - j as i64,
                    distance: j,
                    member: a + &shift,
                    dual: BoxProduct::new(factors),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(pairs);
    }
    Ok(Some(out))
}

/// Left dual collection of the aligned window `B_{k(d+1)}`: the member
/// `O(a + k(n+1))` of block `E_{k(d+1)+d-j}` pairs with
/// `⊠ Λ^{-a_i} T(a_i + k(n_i+1))`.
pub fn aligned_window_dual(space: &Space, k: i64) -> Result<Vec<Vec<DualPair>>> {
    let base = k * (space.d() as i64 + 1);
    Ok(window_dual(space, base)?.expect("aligned windows always have a closed-form dual"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `End(E)` is not one-dimensional or `E` has self-extensions.
    NotExceptional,
    /// Two members of one block are not Ext-orthogonal.
    IntraBlock,
    /// Nonzero Ext from a later block to an earlier one.
    Backward,
    /// Nonzero higher Ext from an earlier block to a later one.
    ForwardHigher,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::NotExceptional => "not exceptional",
            ViolationKind::IntraBlock => "intra-block Ext",
            ViolationKind::Backward => "backward Ext",
            ViolationKind::ForwardHigher => "forward higher Ext",
        })
    }
}

/// `Ext^degree(O(from), O(to))` has the given nonzero dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub from: MultiDegree,
    pub to: MultiDegree,
    pub degree: usize,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub violation: Option<Violation>,
    /// Whether the member count equals the rank of K₀.
    pub full_rank: bool,
}

impl ExceptionalReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn line_ext(space: &Space, from: &MultiDegree, to: &MultiDegree) -> Result<Vec<u64>> {
    let t = ext_table(space, &BoxProduct::line(space, from)?, &SplitSheaf::line(space, to)?)?;
    Ok(t.dims().to_vec())
}

/// Checks the strong exceptionality and block conditions of a collection of
/// line bundles and reports the first violating pair.
pub fn verify_exceptional_structure(space: &Space, c: &BlockCollection) -> Result<ExceptionalReport> {
    let flagged = |kind, from: &MultiDegree, to: &MultiDegree, q, h| {
        Ok(ExceptionalReport {
            violation: Some(Violation { kind, from: from.clone(), to: to.clone(), degree: q, dimension: h }),
            full_rank: c.member_count() == space.k0_rank(),
        })
    };
    let blocks = c.blocks();
    for (bi, block) in blocks.iter().enumerate() {
        for (u, a) in block.members().iter().enumerate() {
            let own = line_ext(space, a, a)?;
            if own[0] != 1 {
                return flagged(ViolationKind::NotExceptional, a, a, 0, own[0]);
            }
            if let Some((q, &h)) = own.iter().enumerate().skip(1).find(|(_, &h)| h != 0) {
                return flagged(ViolationKind::NotExceptional, a, a, q, h);
            }
            for (v, b) in block.members().iter().enumerate() {
                if u == v {
                    continue;
                }
                if let Some((q, &h)) = line_ext(space, a, b)?.iter().enumerate().find(|(_, &h)| h != 0) {
                    return flagged(ViolationKind::IntraBlock, a, b, q, h);
                }
            }
            for later in &blocks[bi + 1..] {
                for b in later.members() {
                    if let Some((q, &h)) = line_ext(space, b, a)?.iter().enumerate().find(|(_, &h)| h != 0) {
                        return flagged(ViolationKind::Backward, b, a, q, h);
                    }
                    if let Some((q, &h)) = line_ext(space, a, b)?.iter().enumerate().skip(1).find(|(_, &h)| h != 0)
                    {
                        return flagged(ViolationKind::ForwardHigher, a, b, q, h);
                    }
                }
            }
        }
    }
    Ok(ExceptionalReport { violation: None, full_rank: c.member_count() == space.k0_rank() })
}

/// `G_{uv} = χ(E_u, E_v)` over the flattened collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    entries: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn from_rows(entries: Vec<Vec<i64>>) -> Self {
        GramMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, u: usize, v: usize) -> i64 {
        self.entries[u][v]
    }

    pub fn is_unitriangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(u, row)| row.iter().enumerate().all(|(v, &x)| if u == v { x == 1 } else if v < u { x == 0 } else { true }))
    }

    fn check_unitriangular(&self) -> Result<()> {
        for (u, row) in self.entries.iter().enumerate() {
            if row[u] != 1 || row[..u].iter().any(|&x| x != 0) {
                return Err(Error::NotUnitriangular(u));
            }
        }
        Ok(())
    }

    /// Solves `G x = b` for upper unitriangular `G`.
    pub fn solve(&self, b: &[i64]) -> Result<Vec<i64>> {
        self.check_unitriangular()?;
        let n = self.size();
        let mut x = vec![0i64; n];
        for u in (0..n).rev() {
            let mut acc = b[u];
            for v in u + 1..n {
                acc = acc
                    .checked_sub(self.entries[u][v].checked_mul(x[v]).ok_or(Error::Overflow("gram solve"))?)
                    .ok_or(Error::Overflow("gram solve"))?;
            }
            x[u] = acc;
        }
        Ok(x)
    }

    /// Solves `G^T y = t` for upper unitriangular `G`.
    pub fn solve_transpose(&self, t: &[i64]) -> Result<Vec<i64>> {
        self.check_unitriangular()?;
        let n = self.size();
        let mut y = vec![0i64; n];
        for u in 0..n {
            let mut acc = t[u];
            for v in 0..u {
                acc = acc
                    .checked_sub(self.entries[v][u].checked_mul(y[v]).ok_or(Error::Overflow("gram solve"))?)
                    .ok_or(Error::Overflow("gram solve"))?;
            }
            y[u] = acc;
        }
        Ok(y)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn gram_matrix(space: &Space, c: &BlockCollection) -> Result<GramMatrix> {
    let members = c.flattened();
    let entries = members
        .iter()
        .map(|(_, a)| members.iter().map(|(_, b)| euler_pairing(space, a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(GramMatrix { entries })
}

/// Integer coordinates in the flattened fundamental collection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Class {
    coords: Vec<i64>,
}

impl K0Class {
    pub fn new(coords: Vec<i64>) -> Self {
        K0Class { coords }
    }

    pub fn zero(rank: usize) -> Self {
        K0Class { coords: vec![0; rank] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Rank of the class (every basis element is a line bundle).
    pub fn rank(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn scale(&self, c: i64) -> K0Class {
        K0Class { coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, rhs: &K0Class) -> K0Class {
        K0Class { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &K0Class {
    type Output = K0Class;
    fn sub(self, rhs: &K0Class) -> K0Class {
        K0Class { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// K₀ class of a mutation of an exceptional pair `(A, B)`:
/// `[L_A B] = χ(A,B)[A] - [B]` and `[R_B A] = χ(A,B)[B] - [A]`.
pub fn mutation_class(side: Side, a: &K0Class, b: &K0Class, chi_ab: i64) -> K0Class {
    match side {
        Side::Left => &a.scale(chi_ab) - b,
        Side::Right => &b.scale(chi_ab) - a,
    }
}

/// The fundamental basis of K₀ together with its Gram matrix.
#[derive(Debug, Clone)]
pub struct K0Lattice {
    space: Space,
    basis: Vec<MultiDegree>,
    gram: GramMatrix,
}

impl K0Lattice {
    pub fn new(space: &Space) -> Result<Self> {
        let fc = fundamental_collection(space);
        let gram = gram_matrix(space, &fc)?;
        let basis = fc.flattened().into_iter().map(|(_, a)| a).collect();
        Ok(K0Lattice { space: space.clone(), basis, gram })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn basis(&self) -> &[MultiDegree] {
        &self.basis
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `χ(x, y) = x^T G y`.
    pub fn pairing(&self, x: &K0Class, y: &K0Class) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for u in 0..n {
            if x.coords[u] == 0 {
                continue;
            }
            let row: i64 = (0..n).map(|v| self.gram.get(u, v) * y.coords[v]).sum();
            acc += x.coords[u] * row;
        }
        acc
    }

    fn solve_against(&self, chis: Vec<i64>) -> Result<K0Class> {
        Ok(K0Class::new(self.gram.solve(&chis)?))
    }

    pub fn class_of_line(&self, a: &MultiDegree) -> Result<K0Class> {
        let chis = self.basis.iter().map(|e| euler_pairing(&self.space, e, a)).collect::<Result<Vec<_>>>()?;
        self.solve_against(chis)
    }

    /// Class of a box product from `χ(E_u, B)`, each computed as the
    /// alternating sum of an Ext table.
    pub fn class_of_box(&self, b: &BoxProduct) -> Result<K0Class> {
        let target = SplitSheaf::from_terms([(1, b.clone())]);
        let chis = self
            .basis
            .iter()
            .map(|e| ext_table(&self.space, &BoxProduct::line(&self.space, e)?, &target)?.euler_char())
            .collect::<Result<Vec<_>>>()?;
        self.solve_against(chis)
    }

    /// Class of a box product by expanding each factor into line bundles with
    /// the Euler sequence and pairing linearly. Independent of Ext tables.
    pub fn class_by_expansion(&self, b: &BoxProduct) -> Result<K0Class> {
        b.check_space(&self.space)?;
        let mut expansion: Vec<(i64, Vec<i64>)> = vec![(1, Vec::new())];
        for f in b.factors() {
            let terms = f.line_expansion()?;
            let mut next = Vec::with_capacity(expansion.len() * terms.len());
            for (c, prefix) in &expansion {
                for &(e, t) in &terms {
                    let mut deg = prefix.clone();
                    deg.push(t);
                    next.push((c * e, deg));
                }
            }
            expansion = next;
        }
        let mut total = K0Class::zero(self.rank());
        for (c, deg) in expansion {
            total = &total + &self.class_of_line(&MultiDegree(deg))?.scale(c);
        }
        Ok(total)
    }

    pub fn class_of_sheaf(&self, f: &SplitSheaf) -> Result<K0Class> {
        f.check_space(&self.space)?;
        let mut total = K0Class::zero(self.rank());
        for (m, b) in f.terms() {
            let c = match b.as_line() {
                Some(a) => self.class_of_line(&a)?,
                None => self.class_of_box(b)?,
            };
            total = &total + &c.scale(*m as i64);
        }
        Ok(total)
    }

    /// Right mutation through a whole block, `Σ_F χ(x, F)[F] - x`.
    pub fn right_mutation_through(&self, x: &K0Class, block: &Block) -> Result<K0Class> {
        let mut acc = x.scale(-1);
        for a in block.members() {
            let f = self.class_of_line(a)?;
            acc = &acc + &f.scale(self.pairing(x, &f));
        }
        Ok(acc)
    }

    /// Left mutation through a whole block, `Σ_E χ(E, y)[E] - y`.
    pub fn left_mutation_through(&self, block: &Block, y: &K0Class) -> Result<K0Class> {
        let mut acc = y.scale(-1);
        for a in block.members() {
            let e = self.class_of_line(a)?;
            acc = &acc + &e.scale(self.pairing(&e, y));
        }
        Ok(acc)
    }

    /// `R^{(j)}` of each member of the window at `base`, computed by iterated
    /// block mutations towards the top of the window.
    pub fn dual_classes_by_mutation(&self, base: i64) -> Result<Vec<DualClass>> {
        let d = self.space.d() as i64;
        let window = helix_window(&self.space, base);
        let mut out = Vec::new();
        for (bi, block) in window.blocks().iter().enumerate() {
            for a in block.members() {
                let mut x = self.class_of_line(a)?;
                for above in &window.blocks()[bi + 1..] {
                    x = self.right_mutation_through(&x, above)?;
                }
                out.push(DualClass { block: base + bi as i64, distance: (d - bi as i64) as u32, member: a.clone(), class: x });
            }
        }
        Ok(out)
    }

    /// Left dual classes of the window at `base` from the orthogonality
    /// conditions alone: `χ(H, E) = 0` for every other window member and
    /// `χ(H, E) = (-1)^j` for its own member, `j` blocks below the top.
    pub fn left_dual_classes(&self, base: i64) -> Result<Vec<DualClass>> {
        let d = self.space.d() as i64;
        let window = helix_window(&self.space, base);
        let members = window.flattened();
        let gram = gram_matrix(&self.space, &window)?;
        let classes = members.iter().map(|(_, a)| self.class_of_line(a)).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::with_capacity(members.len());
        for (v, (block, a)) in members.iter().enumerate() {
            let distance = (base + d - block) as u32;
            let mut target = vec![0i64; members.len()];
            target[v] = if distance % 2 == 0 { 1 } else { -1 };
            let y = gram.solve_transpose(&target)?;
            let mut h = K0Class::zero(self.rank());
            for (w, c) in y.iter().zip(&classes) {
                h = &h + &c.scale(*w);
            }
            out.push(DualClass { block: *block, distance, member: a.clone(), class: h });
        }
        Ok(out)
    }
}

/// K₀ class of the left dual object attached to a window member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualClass {
    pub block: i64,
    pub distance: u32,
    pub member: MultiDegree,
    pub class: K0Class,
}

pub fn k0_class(space: &Space, f: &SplitSheaf) -> Result<K0Class> {
    K0Lattice::new(space)?.class_of_sheaf(f)
}

pub fn left_dual_classes_k0(space: &Space, window_base: i64) -> Result<Vec<DualClass>> {
    K0Lattice::new(space)?.left_dual_classes(window_base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(d: &[u32]) -> Space {
        Space::new(d.to_vec()).unwrap()
    }

    fn md(a: &[i64]) -> MultiDegree {
        MultiDegree(a.to_vec())
    }

    fn blk(ms: &[&[i64]]) -> Block {
        Block::new(ms.iter().map(|a| md(a)).collect())
    }

    #[test]
    fn fundamental_examples() {
        let x = sp(&[1, 1]);
        let fc = fundamental_collection(&x);
        assert_eq!(fc.blocks(), &[blk(&[&[-1, -1]]), blk(&[&[-1, 0], &[0, -1]]), blk(&[&[0, 0]])]);
        assert_eq!(fc.block_type(), vec![1, 2, 1]);
        let p2 = fundamental_collection(&sp(&[2]));
        assert_eq!(p2.blocks(), &[blk(&[&[-2]]), blk(&[&[-1]]), blk(&[&[0]])]);
        let y = fundamental_collection(&sp(&[2, 1]));
        assert_eq!(y.block_type(), vec![1, 2, 2, 1]);
        assert_eq!(y.member_count(), 6);
    }

    #[test]
    fn helix_examples() {
        let x = sp(&[1, 1]);
        assert_eq!(helix_block(&x, 3), blk(&[&[1, 1]]));
        assert_eq!(helix_block(&x, -1), blk(&[&[-2, -2]]));
        // E_7 = E_1 ⊗ K^{-2} = O(-1) ⊗ O(6)
        assert_eq!(helix_block(&sp(&[2]), 7), blk(&[&[5]]));
        assert_eq!(helix_position(&x, -1), (2, -1));
    }

    #[test]
    fn dual_of_projective_space() {
        let p = sp(&[3]);
        // window (O, O(1), O(2), O(3)) has dual (O(3), T(2), Λ^2T(1), Λ^3T)
        let dual = window_dual(&p, 3).unwrap().unwrap();
        for (j, pairs) in dual.iter().enumerate() {
            assert_eq!(pairs.len(), 1);
            let want = FactorSheaf::from_wedge_tangent(3, j as i64, 3 - j as i64).unwrap();
            assert_eq!(pairs[0].dual, BoxProduct::new(vec![want]));
            assert_eq!(pairs[0].member, md(&[3 - j as i64]));
        }
        let aligned = aligned_window_dual(&p, 0).unwrap();
        for (j, pairs) in aligned.iter().enumerate() {
            let want = FactorSheaf::from_wedge_tangent(3, j as i64, -(j as i64)).unwrap();
            assert_eq!(pairs[0].dual, BoxProduct::new(vec![want]));
            assert_eq!(pairs[0].member, md(&[-(j as i64)]));
        }
    }

    #[test]
    fn dual_of_p1xp1() {
        let x = sp(&[1, 1]);
        let dual = aligned_window_dual(&x, 0).unwrap();
        assert_eq!(dual[2][0].member, md(&[-1, -1]));
        assert_eq!(dual[2][0].dual, BoxProduct::line(&x, &md(&[1, 1])).unwrap());
        assert_eq!(dual[0][0].member, md(&[0, 0]));
        assert_eq!(dual[0][0].dual, BoxProduct::line(&x, &md(&[0, 0])).unwrap());
        assert!(window_dual(&x, 1).unwrap().is_none());
    }

    #[test]
    fn exceptional_checks() {
        let x = sp(&[1, 1]);
        let rep = verify_exceptional_structure(&x, &fundamental_collection(&x)).unwrap();
        assert!(rep.passed() && rep.full_rank);

        let reversed = BlockCollection::new(
            x.clone(),
            vec![blk(&[&[0, 0]]), blk(&[&[-1, 0], &[0, -1]]), blk(&[&[-1, -1]])],
            0,
        )
        .unwrap();
        let v = verify_exceptional_structure(&x, &reversed).unwrap().violation.unwrap();
        assert_eq!(v.kind, ViolationKind::Backward);
        assert_eq!((v.degree, v.dimension), (0, 2));

        let lumped = BlockCollection::new(x.clone(), vec![blk(&[&[0, 0], &[1, 1]])], 0).unwrap();
        let rep = verify_exceptional_structure(&x, &lumped).unwrap();
        let v = rep.violation.unwrap();
        assert_eq!(v.kind, ViolationKind::IntraBlock);
        assert_eq!((v.from, v.to, v.degree, v.dimension), (md(&[0, 0]), md(&[1, 1]), 0, 4));
        assert!(!rep.full_rank);
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(&sp(&[1]), &fundamental_collection(&sp(&[1]))).unwrap();
        assert_eq!(g.rows(), &[vec![1, 2], vec![0, 1]]);
        let x = sp(&[1, 1]);
        let g = gram_matrix(&x, &fundamental_collection(&x)).unwrap();
        assert_eq!(g.rows(), &[vec![1, 2, 2, 4], vec![0, 1, 0, 2], vec![0, 0, 1, 2], vec![0, 0, 0, 1]]);
        assert!(g.is_unitriangular());
        let bad = GramMatrix::from_rows(vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(bad.solve(&[0, 0]), Err(Error::NotUnitriangular(1)));
    }

    #[test]
    fn k0_examples() {
        let p1 = sp(&[1]);
        let l = K0Lattice::new(&p1).unwrap();
        // basis (O(-1), O)
        assert_eq!(l.class_of_line(&md(&[1])).unwrap(), K0Class::new(vec![-1, 2]));
        let t = BoxProduct::new(vec![FactorSheaf::from_wedge_tangent(1, 1, -1).unwrap()]);
        assert_eq!(l.class_of_box(&t).unwrap(), K0Class::new(vec![-1, 2]));
        let x = sp(&[1, 1]);
        let lx = K0Lattice::new(&x).unwrap();
        assert_eq!(lx.class_of_line(&md(&[0, 0])).unwrap(), K0Class::new(vec![0, 0, 0, 1]));
    }

    #[test]
    fn mutation_examples() {
        let l = K0Lattice::new(&sp(&[1])).unwrap();
        let om1 = l.class_of_line(&md(&[-1])).unwrap();
        let o = l.class_of_line(&md(&[0])).unwrap();
        let o1 = l.class_of_line(&md(&[1])).unwrap();
        assert_eq!(mutation_class(Side::Right, &om1, &o, 2), o1);
        assert_eq!(mutation_class(Side::Left, &o, &o1, 2), om1);

        let x = sp(&[1, 1]);
        let lx = K0Lattice::new(&x).unwrap();
        let start = lx.class_of_line(&md(&[-1, -1])).unwrap();
        let fc = fundamental_collection(&x);
        let step = lx.right_mutation_through(&start, &fc.blocks()[1]).unwrap();
        let end = lx.right_mutation_through(&step, &fc.blocks()[2]).unwrap();
        assert_eq!(end, lx.class_of_line(&md(&[1, 1])).unwrap());
        // and back
        let back = lx.left_mutation_through(&fc.blocks()[2], &end).unwrap();
        assert_eq!(back, step);
    }

    #[test]
    fn dual_classes_examples() {
        let p1 = sp(&[1]);
        let l = K0Lattice::new(&p1).unwrap();
        let duals = l.left_dual_classes(0).unwrap();
        // window members O(-1) (j = 1) and O (j = 0)
        assert_eq!(duals[0].class, l.class_of_line(&md(&[1])).unwrap());
        assert_eq!(duals[1].class, l.class_of_line(&md(&[0])).unwrap());
        assert_eq!(euler_pairing(&p1, &md(&[1]), &md(&[-1])).unwrap(), -1);

        let x = sp(&[1, 1]);
        let lx = K0Lattice::new(&x).unwrap();
        let duals = lx.left_dual_classes(1).unwrap();
        let o = duals.iter().find(|c| c.member == md(&[0, 0])).unwrap();
        let want = &lx.class_of_line(&md(&[1, 1])).unwrap().scale(4) - &lx.class_of_line(&md(&[0, 0])).unwrap();
        assert_eq!(o.class, want);
        assert_eq!(o.class.rank(), 3);
        assert_eq!(o.distance, 1);
    }
}
