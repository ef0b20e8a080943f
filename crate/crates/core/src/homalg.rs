//! Koszul homology, Tor and Ext against the residue field, projective
//! dimension, and depth by three independent routes.
//!
//! Over a graded polynomial algebra the Koszul complex on the full
//! generator list is a free resolution of the residue field, so `Tor` and
//! `Ext` against `F2` reduce to exact rank computations on the expanded
//! multiplication matrices, degree by degree. No syzygies are ever
//! computed.
//!
//! Truncation is handled by certification, not guessing: a table is
//! `stability_ok` only if every row vanishes identically on a top window
//! of internal degrees as wide as the largest ring generator degree plus
//! one. Consumers that need certified output raise `CutoffInsufficient`
//! when the window is dirty, so an undersized cutoff is always an explicit
//! error rather than a silently wrong depth.

use crate::dickson::{dickson_classes, dtilde_generators, DicksonSystem, SubgroupFlag};
use crate::error::Error;
use crate::f2poly::{cohomology_ring, AlgebraMap, Polynomial, Ring};
use crate::grmodule::{
    kernel_of_mult, quotient_by_elements, restrict_scalars, ring_hilbert, DegreewiseModule,
};
use crate::linalg::BitMatrix;
use crate::Result;

/// Depth of a module; the zero module has infinite depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(u32),
    Infinite,
}

impl Depth {
    pub fn plus(self, k: u32) -> Depth {
        match self {
            Depth::Finite(d) => Depth::Finite(d + k),
            Depth::Infinite => Depth::Infinite,
        }
    }

    pub fn at_least(self, k: u32) -> bool {
        match self {
            Depth::Finite(d) => d >= k,
            Depth::Infinite => true,
        }
    }
}

impl std::fmt::Display for Depth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

/// Projective dimension; the zero module has projective dimension minus
/// infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjDim {
    MinusInfinite,
    Finite(u32),
}

impl std::fmt::Display for ProjDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjDim::Finite(d) => write!(f, "{d}"),
            ProjDim::MinusInfinite => write!(f, "-inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthMethod {
    TorAuslanderBuchsbaum,
    ExtVanishing,
    DicksonRegular,
}

impl std::fmt::Display for DepthMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DepthMethod::TorAuslanderBuchsbaum => write!(f, "ab"),
            DepthMethod::ExtVanishing => write!(f, "ext"),
            DepthMethod::DicksonRegular => write!(f, "dickson"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DepthReport {
    pub depth: Depth,
    pub method: DepthMethod,
    pub projective_dimension: ProjDim,
    /// For the regular-sequence route: the maximal regular prefix found.
    pub witnesses: Option<Vec<Polynomial>>,
}

/// Dimensions of `Tor_i(F2, M)_d` for a module over a polynomial ring with
/// `s` generators; rows above `s` are structurally absent.
#[derive(Debug, Clone)]
pub struct BettiTable {
    ring: Ring,
    cutoff: u32,
    entries: Vec<Vec<usize>>,
    stability_ok: bool,
}

impl BettiTable {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, d: u32) -> usize {
        self.entries[i][d as usize]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.entries[i]
    }

    pub fn stability_ok(&self) -> bool {
        self.stability_ok
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.entries[i].iter().all(|&v| v == 0)
    }

    /// Largest homological index with a nonzero row.
    pub fn max_nonzero_row(&self) -> Option<usize> {
        (0..self.entries.len())
            .rev()
            .find(|&i| !self.row_is_zero(i))
    }

    /// All nonzero entries as (homological index, internal degree, dim).
    pub fn triples(&self) -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (d, &v) in row.iter().enumerate() {
                if v > 0 {
                    out.push((i, d as u32, v));
                }
            }
        }
        out
    }
}

/// Dimensions of `Ext^i(F2, M)_d`; internal degrees run over a window that
/// includes negative degrees because dualizing the Koszul resolution shifts
/// downward by the generator degrees.
#[derive(Debug, Clone)]
pub struct ExtTable {
    min_degree: i64,
    max_degree: i64,
    entries: Vec<Vec<usize>>,
    stability_ok: bool,
}

impl ExtTable {
    pub fn entry(&self, i: usize, d: i64) -> usize {
        self.entries[i][(d - self.min_degree) as usize]
    }

    pub fn degree_range(&self) -> (i64, i64) {
        (self.min_degree, self.max_degree)
    }

    pub fn stability_ok(&self) -> bool {
        self.stability_ok
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.entries[i].iter().all(|&v| v == 0)
    }

    pub fn min_nonzero_row(&self) -> Option<usize> {
        (0..self.entries.len()).find(|&i| !self.row_is_zero(i))
    }
}

fn subsets_by_size(s: usize) -> Vec<Vec<u64>> {
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); s + 1];
    for mask in 0..(1u64 << s) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    by_size
}

fn subset_degree(mask: u64, ring: &Ring) -> u32 {
    (0..ring.num_gens())
        .filter(|j| mask >> j & 1 == 1)
        .map(|j| ring.gen_degree(j))
        .sum()
}

/// Dimension of the internal-degree-`d` slice of the Koszul chain group for
/// subsets of one fixed size. Slices outside `[0, cutoff]` contribute zero.
fn chain_slice_dims(module: &DegreewiseModule, masks: &[u64], d: i64) -> Vec<usize> {
    masks
        .iter()
        .map(|&mask| {
            let e = d - subset_degree(mask, module.ring()) as i64;
            if e < 0 || e > module.cutoff() as i64 {
                0
            } else {
                module.dim(e as u32)
            }
        })
        .collect()
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        out.push(acc);
        acc += d;
    }
    out
}

/// The Koszul differential from subsets of size `i` to size `i-1` in
/// internal degree `d`: the block from `T` to `T \ {j}` is multiplication
/// by the `j`-th generator out of degree `d - deg(T)`.
fn boundary_matrix(module: &DegreewiseModule, by_size: &[Vec<u64>], i: usize, d: u32) -> BitMatrix {
    let src_masks = &by_size[i];
    let tgt_masks = &by_size[i - 1];
    let src_dims = chain_slice_dims(module, src_masks, d as i64);
    let tgt_dims = chain_slice_dims(module, tgt_masks, d as i64);
    let src_off = offsets(&src_dims);
    let tgt_off = offsets(&tgt_dims);
    let rows_total: usize = src_dims.iter().sum();
    let cols_total: usize = tgt_dims.iter().sum();
    let mut out = BitMatrix::zero(rows_total, cols_total);
    for (b, &mask) in src_masks.iter().enumerate() {
        if src_dims[b] == 0 {
            continue;
        }
        let slice_deg = d - subset_degree(mask, module.ring());
        for j in 0..module.ring().num_gens() {
            if mask >> j & 1 == 0 {
                continue;
            }
            let tmask = mask & !(1u64 << j);
            let tb = tgt_masks.binary_search(&tmask).expect("subset exists");
            let act = module.action(j, slice_deg);
            for r in 0..src_dims[b] {
                out.row_mut(src_off[b] + r)
                    .xor_shifted(act.row(r), tgt_off[tb]);
            }
        }
    }
    out
}

/// The dual Koszul differential from subsets of size `i` to size `i+1` in
/// internal degree `d`: the block from `T` to `T + {j}` is multiplication
/// by the `j`-th generator out of degree `d + deg(T)`.
fn coboundary_matrix(
    module: &DegreewiseModule,
    by_size: &[Vec<u64>],
    i: usize,
    d: i64,
) -> BitMatrix {
    let src_masks = &by_size[i];
    let tgt_masks = &by_size[i + 1];
    let src_dims: Vec<usize> = src_masks
        .iter()
        .map(|&mask| {
            let e = d + subset_degree(mask, module.ring()) as i64;
            if e < 0 || e > module.cutoff() as i64 {
                0
            } else {
                module.dim(e as u32)
            }
        })
        .collect();
    let tgt_dims: Vec<usize> = tgt_masks
        .iter()
        .map(|&mask| {
            let e = d + subset_degree(mask, module.ring()) as i64;
            if e < 0 || e > module.cutoff() as i64 {
                0
            } else {
                module.dim(e as u32)
            }
        })
        .collect();
    let src_off = offsets(&src_dims);
    let tgt_off = offsets(&tgt_dims);
    let mut out = BitMatrix::zero(src_dims.iter().sum(), tgt_dims.iter().sum());
    for (b, &mask) in src_masks.iter().enumerate() {
        if src_dims[b] == 0 {
            continue;
        }
        let slice_deg = d + subset_degree(mask, module.ring()) as i64;
        for j in 0..module.ring().num_gens() {
            if mask >> j & 1 == 1 {
                continue;
            }
            let tmask = mask | (1u64 << j);
            let tb = tgt_masks.binary_search(&tmask).expect("subset exists");
            if tgt_dims[tb] == 0 {
                continue;
            }
            let act = module.action(j, slice_deg as u32);
            for r in 0..src_dims[b] {
                out.row_mut(src_off[b] + r)
                    .xor_shifted(act.row(r), tgt_off[tb]);
            }
        }
    }
    out
}

fn stability_window(cutoff: u32, width: u32) -> std::ops::RangeInclusive<u32> {
    let lo = (cutoff + 1).saturating_sub(width);
    lo..=cutoff
}

/// Homology of the Koszul complex on the full generator list tensored with
/// the module: `entries[i][d] = dim Tor_i(F2, M)_d`. Exact for every
/// internal degree up to the module's cutoff.
pub fn koszul_tor(module: &DegreewiseModule) -> BettiTable {
    let ring = module.ring().clone();
    let s = ring.num_gens();
    let by_size = subsets_by_size(s);
    let cutoff = module.cutoff();
    // ranks[i][d] = rank of the differential out of size-i subsets
    let mut ranks = vec![vec![0usize; cutoff as usize + 1]; s + 2];
    for i in 1..=s {
        for d in 0..=cutoff {
            ranks[i][d as usize] = boundary_matrix(module, &by_size, i, d).rank();
        }
    }
    let mut entries = vec![vec![0usize; cutoff as usize + 1]; s + 1];
    for i in 0..=s {
        for d in 0..=cutoff {
            let dim: usize = chain_slice_dims(module, &by_size[i], d as i64).iter().sum();
            entries[i][d as usize] = dim - ranks[i][d as usize] - ranks[i + 1][d as usize];
        }
    }
    let width = ring.max_gen_degree() + 1;
    let stability_ok = entries
        .iter()
        .all(|row| stability_window(cutoff, width).all(|d| row[d as usize] == 0));
    BettiTable {
        ring,
        cutoff,
        entries,
        stability_ok,
    }
}

/// Cohomology of the dual Koszul complex: `Ext^i(F2, M)` degreewise, over
/// the window of internal degrees where every contributing slice of the
/// module is below the cutoff.
pub fn koszul_ext(module: &DegreewiseModule) -> Result<ExtTable> {
    let ring = module.ring().clone();
    let s = ring.num_gens();
    let total = ring.total_gen_degree() as i64;
    let cutoff = module.cutoff() as i64;
    if total > cutoff {
        return Err(Error::CutoffInsufficient {
            cutoff: module.cutoff(),
            detail: format!("dual Koszul window is empty: generator degrees sum to {total}"),
        });
    }
    let min_degree = -total;
    let max_degree = cutoff - total;
    let by_size = subsets_by_size(s);
    let width = (max_degree - min_degree + 1) as usize;
    let mut ranks = vec![vec![0usize; width]; s + 2]; // ranks[i+1] = rank of delta out of level i
    for i in 0..s {
        for (idx, d) in (min_degree..=max_degree).enumerate() {
            ranks[i + 1][idx] = coboundary_matrix(module, &by_size, i, d).rank();
        }
    }
    let mut entries = vec![vec![0usize; width]; s + 1];
    for i in 0..=s {
        for (idx, d) in (min_degree..=max_degree).enumerate() {
            let dim: usize = by_size[i]
                .iter()
                .map(|&mask| {
                    let e = d + subset_degree(mask, &ring) as i64;
                    if e < 0 || e > cutoff {
                        0
                    } else {
                        module.dim(e as u32)
                    }
                })
                .sum();
            // delta out of level i has rank ranks[i+1]; into level i, ranks[i]
            entries[i][idx] = dim - ranks[i + 1][idx] - ranks[i][idx];
        }
    }
    let window = ring.max_gen_degree() as usize + 1;
    let stability_ok = entries
        .iter()
        .all(|row| row.iter().rev().take(window).all(|&v| v == 0));
    Ok(ExtTable {
        min_degree,
        max_degree,
        entries,
        stability_ok,
    })
}

/// Largest homological index with nonzero Tor; requires a certified table.
pub fn projective_dimension(table: &BettiTable) -> Result<ProjDim> {
    if !table.stability_ok {
        return Err(Error::CutoffInsufficient {
            cutoff: table.cutoff,
            detail: "Betti table rows do not vanish on the top window".into(),
        });
    }
    Ok(match table.max_nonzero_row() {
        Some(i) => ProjDim::Finite(i as u32),
        None => ProjDim::MinusInfinite,
    })
}

/// Depth as the number of ring generators minus the projective dimension.
pub fn depth_via_ab(module: &DegreewiseModule) -> Result<DepthReport> {
    let s = module.ring().num_gens() as u32;
    let table = koszul_tor(module);
    let pd = projective_dimension(&table)?;
    let depth = match pd {
        ProjDim::MinusInfinite => Depth::Infinite,
        ProjDim::Finite(dp) => Depth::Finite(s - dp),
    };
    Ok(DepthReport {
        depth,
        method: DepthMethod::TorAuslanderBuchsbaum,
        projective_dimension: pd,
        witnesses: None,
    })
}

/// Depth as the least cohomological index with nonvanishing Ext against the
/// residue field.
pub fn depth_via_ext(module: &DegreewiseModule) -> Result<DepthReport> {
    let s = module.ring().num_gens() as u32;
    if module.is_zero() {
        return Ok(DepthReport {
            depth: Depth::Infinite,
            method: DepthMethod::ExtVanishing,
            projective_dimension: ProjDim::MinusInfinite,
            witnesses: None,
        });
    }
    let table = koszul_ext(module)?;
    if !table.stability_ok() {
        return Err(Error::CutoffInsufficient {
            cutoff: module.cutoff(),
            detail: "Ext table rows do not vanish on the top window".into(),
        });
    }
    match table.min_nonzero_row() {
        Some(i) => Ok(DepthReport {
            depth: Depth::Finite(i as u32),
            method: DepthMethod::ExtVanishing,
            projective_dimension: ProjDim::Finite(s - i as u32),
            witnesses: None,
        }),
        None => Err(Error::CutoffInsufficient {
            cutoff: module.cutoff(),
            detail: "nonzero module with no visible Ext in the window".into(),
        }),
    }
}

/// One step of the regular-sequence test. Returns whether multiplication by
/// `alpha` is injective on the module (by two routes: the kernel must
/// vanish, and the quotient dimensions must drop by exactly the dimension
/// of the shifted module) together with the quotient for chaining.
pub fn regular_step(
    module: &DegreewiseModule,
    alpha: &Polynomial,
) -> Result<(bool, DegreewiseModule)> {
    let deg = alpha
        .degree()
        .ok_or_else(|| Error::Unsupported("a regular-sequence element must be nonzero".into()))?;
    if deg == 0 {
        return Err(Error::Unsupported(
            "a regular-sequence element must have positive degree".into(),
        ));
    }
    if deg > module.cutoff() {
        return Err(Error::CutoffInsufficient {
            cutoff: module.cutoff(),
            detail: format!("cannot test regularity of a degree-{deg} element"),
        });
    }
    let kernel_trivial = kernel_of_mult(module, alpha)?.is_zero();
    let quotient = quotient_by_elements(module, std::slice::from_ref(alpha))?;
    let mut hilbert_ok = true;
    for d in 0..=module.cutoff() {
        let expected = module.dim(d) as i64
            - if d >= deg {
                module.dim(d - deg) as i64
            } else {
                0
            };
        // a non-injective multiplication makes the quotient strictly larger
        if quotient.dim(d) as i64 != expected {
            hilbert_ok = false;
            break;
        }
    }
    if kernel_trivial != hilbert_ok {
        // the kernel window is [0, cutoff - deg]; the Hilbert window reaches
        // the cutoff, so a clean kernel with a dirty Hilbert identity means
        // the drop happens in degrees only one of the two routes can see
        return Err(Error::CutoffInsufficient {
            cutoff: module.cutoff(),
            detail: "kernel test and Hilbert identity disagree in the top window".into(),
        });
    }
    Ok((kernel_trivial && hilbert_ok, quotient))
}

#[derive(Debug, Clone)]
pub struct RegularSequenceReport {
    pub regular: bool,
    /// Index of the first element that fails, if any.
    pub failed_at: Option<usize>,
}

/// Test whether the listed homogeneous elements form a regular sequence on
/// the module, by iterated `regular_step`.
pub fn is_regular_sequence(
    module: &DegreewiseModule,
    alphas: &[Polynomial],
) -> Result<RegularSequenceReport> {
    let mut current = module.clone();
    for (k, alpha) in alphas.iter().enumerate() {
        let (ok, quotient) = regular_step(&current, alpha)?;
        if !ok {
            return Ok(RegularSequenceReport {
                regular: false,
                failed_at: Some(k),
            });
        }
        current = quotient;
    }
    Ok(RegularSequenceReport {
        regular: true,
        failed_at: None,
    })
}

/// Length of the maximal regular prefix of the Dickson classes on a module
/// over `F2[t1..tn]`. A lower bound for the depth in general; the suites
/// cross-check it against the homological routes.
pub fn depth_via_dickson(module: &DegreewiseModule, system: &DicksonSystem) -> Result<DepthReport> {
    let n = module.ring().num_gens() as u32;
    if module.is_zero() {
        return Ok(DepthReport {
            depth: Depth::Infinite,
            method: DepthMethod::DicksonRegular,
            projective_dimension: ProjDim::MinusInfinite,
            witnesses: Some(Vec::new()),
        });
    }
    if system.rank() != n {
        return Err(Error::RingMismatch(format!(
            "Dickson system of rank {} against a module over {} variables",
            system.rank(),
            n
        )));
    }
    let mut current = module.clone();
    let mut witnesses = Vec::new();
    for class in system.classes() {
        let (ok, quotient) = regular_step(&current, class)?;
        if !ok {
            break;
        }
        witnesses.push(class.clone());
        current = quotient;
    }
    let k = witnesses.len() as u32;
    Ok(DepthReport {
        depth: Depth::Finite(k),
        method: DepthMethod::DicksonRegular,
        projective_dimension: ProjDim::Finite(n - k),
        witnesses: Some(witnesses),
    })
}

/// Depths of the same module computed over the base polynomial ring, over
/// the Dickson subalgebra, and over the intermediate invariant algebra of
/// the standard corank-one flag.
#[derive(Debug, Clone)]
pub struct ThreeRingDepths {
    pub over_base: Depth,
    pub over_dickson: Depth,
    pub over_intermediate: Depth,
}

impl ThreeRingDepths {
    pub fn agree(&self) -> bool {
        self.over_base == self.over_dickson && self.over_base == self.over_intermediate
    }
}

/// Compute depth over `F2[t1..tn]`, over the Dickson invariants, and over
/// the intermediate invariants, and report all three.
pub fn depth_over_dickson_agrees(module: &DegreewiseModule) -> Result<ThreeRingDepths> {
    let n = module.ring().num_gens() as u32;
    if n == 0 {
        return Err(Error::Unsupported(
            "invariant-ring comparison needs at least one variable".into(),
        ));
    }
    let over_base = depth_via_ab(module)?.depth;

    let system = dickson_classes(n);
    let over_dv = restrict_scalars(module, &system.inclusion())?;
    let over_dickson = depth_via_ab(&over_dv)?.depth;

    let flag = SubgroupFlag::standard(n, 1)?;
    let (gens, dtilde_ring) = dtilde_generators(&flag)?;
    let hv = cohomology_ring(n);
    let incl = AlgebraMap::new(&dtilde_ring, &hv, gens)?;
    let over_dt = restrict_scalars(module, &incl)?;
    let over_intermediate = depth_via_ab(&over_dt)?.depth;

    Ok(ThreeRingDepths {
        over_base,
        over_dickson,
        over_intermediate,
    })
}

/// Hilbert-series consequence of the free factorization over the first `k`
/// Dickson classes: the Hilbert function of the module must equal the
/// convolution of the Hilbert function of `F2[c1..ck]` with that of the
/// quotient by `(c1..ck)`, in all degrees up to `cutoff - max class degree`.
pub fn structure_check(module: &DegreewiseModule, k: u32, system: &DicksonSystem) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    if k > system.rank() {
        return Err(Error::Unsupported(format!(
            "structure check with k={k} exceeds rank {}",
            system.rank()
        )));
    }
    let classes = &system.classes()[..k as usize];
    let max_deg = classes
        .iter()
        .map(|c| c.degree().expect("classes are nonzero"))
        .max()
        .unwrap();
    if max_deg > module.cutoff() {
        return Err(Error::CutoffInsufficient {
            cutoff: module.cutoff(),
            detail: "structure check window is empty".into(),
        });
    }
    let upto = module.cutoff() - max_deg;
    let quotient = quotient_by_elements(module, classes)?;
    let sub_descr = crate::f2poly::RingDescriptor::new(
        classes
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("c{}", i + 1), c.degree().unwrap()))
            .collect(),
    )?;
    let free_part = ring_hilbert(&sub_descr, upto);
    let conv = free_part.convolve(&quotient.hilbert(), upto);
    Ok(conv == module.hilbert().truncate(upto))
}

/// Depth bound along a short exact sequence: the middle term's depth is at
/// least the smaller of the outer depths.
pub fn ses_depth_bound(left: Depth, middle: Depth, right: Depth) -> bool {
    middle >= left.min(right)
}

/// Exact degreewise alternating-sum identity of the Koszul complex: the
/// Euler characteristic of the homology equals that of the chain groups.
pub fn koszul_euler_identity_holds(module: &DegreewiseModule) -> bool {
    let table = koszul_tor(module);
    let ring = module.ring();
    let by_size = subsets_by_size(ring.num_gens());
    for d in 0..=module.cutoff() {
        let mut homology: i64 = 0;
        for i in 0..table.num_rows() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            homology += sign * table.entry(i, d) as i64;
        }
        let mut chains: i64 = 0;
        for (i, masks) in by_size.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let dim: usize = chain_slice_dims(module, masks, d as i64).iter().sum();
            chains += sign * dim as i64;
        }
        if homology != chains {
            return false;
        }
    }
    true
}
