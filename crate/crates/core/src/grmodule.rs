//! Finitely presented graded modules and their degreewise expansion.
//!
//! A `GradedPresentation` lists generators with degrees and homogeneous
//! relation rows. `expand` turns it into the form all homological algebra
//! here runs on: for every degree up to an explicit cutoff, a GF(2) basis
//! of the graded piece, and for every ring generator the multiplication
//! matrix between graded pieces. Expansion works degree by degree: the
//! free span of monomial-times-generator symbols is cut down by the row
//! space of all monomial shifts of the relations, with reduced row echelon
//! form fixing a canonical basis.
//!
//! Every derived construction (kernels and quotients of multiplications,
//! suspensions, sums, base change, restriction of scalars) produces the
//! same expanded form, so results compose freely. Operations that need
//! degrees beyond the cutoff shrink it rather than guess: a kernel of
//! multiplication by a degree-`e` element is only known up to `cutoff - e`.

use std::collections::HashMap;

use crate::error::Error;
use crate::f2poly::{monomial_basis, same_ring, AlgebraMap, Monomial, Polynomial, Ring};
use crate::linalg::{BitMatrix, BitVec, Echelon, QuotientMap};
use crate::Result;

/// A module given by generators with degrees and homogeneous relations.
#[derive(Debug, Clone)]
pub struct GradedPresentation {
    ring: Ring,
    generators: Vec<(String, u32)>,
    relations: Vec<Vec<Polynomial>>,
}

impl GradedPresentation {
    pub fn new(
        ring: &Ring,
        generators: Vec<(String, u32)>,
        relations: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let mut names: Vec<&str> = Vec::new();
        for (name, _) in &generators {
            if ring.index_of(name).is_some() {
                return Err(Error::InvalidRing(format!(
                    "module generator {name} clashes with a ring generator"
                )));
            }
            if names.contains(&name.as_str()) {
                return Err(Error::InvalidRing(format!(
                    "duplicate module generator {name}"
                )));
            }
            names.push(name);
        }
        for (index, row) in relations.iter().enumerate() {
            if row.len() != generators.len() {
                return Err(Error::InhomogeneousRelation {
                    index,
                    detail: format!(
                        "expected {} coefficients, found {}",
                        generators.len(),
                        row.len()
                    ),
                });
            }
            let mut rdeg: Option<u32> = None;
            for (j, coeff) in row.iter().enumerate() {
                if !same_ring(coeff.ring(), ring) {
                    return Err(Error::RingMismatch(format!(
                        "relation {index} coefficient {j} lives in another ring"
                    )));
                }
                if let Some(cd) = coeff.degree() {
                    let total = cd + generators[j].1;
                    match rdeg {
                        None => rdeg = Some(total),
                        Some(r) if r != total => {
                            return Err(Error::InhomogeneousRelation {
                                index,
                                detail: format!(
                                    "term at generator {} has degree {}, relation degree {}",
                                    generators[j].0, total, r
                                ),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(GradedPresentation {
            ring: ring.clone(),
            generators,
            relations,
        })
    }

    /// Free module on the given generators.
    pub fn free(ring: &Ring, generators: Vec<(String, u32)>) -> Result<Self> {
        GradedPresentation::new(ring, generators, Vec::new())
    }

    /// The zero module over a ring.
    pub fn zero(ring: &Ring) -> Self {
        GradedPresentation {
            ring: ring.clone(),
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// Cyclic module: one generator in degree 0 cut by the given elements.
    pub fn cyclic_quotient(ring: &Ring, elements: &[Polynomial]) -> Result<Self> {
        let relations = elements.iter().map(|a| vec![a.clone()]).collect();
        GradedPresentation::new(ring, vec![("g".into(), 0)], relations)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<Polynomial>] {
        &self.relations
    }

    /// Degree of a relation row; zero rows have none.
    pub fn relation_degree(&self, index: usize) -> Option<u32> {
        self.relations[index]
            .iter()
            .zip(&self.generators)
            .find_map(|(c, (_, gdeg))| c.degree().map(|cd| cd + gdeg))
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(|(_, d)| *d).max().unwrap_or(0)
    }

    pub fn max_relation_degree(&self) -> u32 {
        (0..self.relations.len())
            .filter_map(|i| self.relation_degree(i))
            .max()
            .unwrap_or(0)
    }

    /// Default expansion cutoff: generous enough that the invariants in
    /// scope are visible in the certified window for ordinary inputs.
    pub fn suggested_cutoff(&self) -> u32 {
        self.max_generator_degree() + self.max_relation_degree() + self.ring.num_gens() as u32 + 8
    }
}

/// The degreewise Hilbert function `d -> dim M_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    values: Vec<usize>,
}

impl HilbertFunction {
    pub fn new(values: Vec<usize>) -> Self {
        HilbertFunction { values }
    }

    pub fn value(&self, d: u32) -> usize {
        self.values[d as usize]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn max_degree(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    /// Convolution `sum_e self_e * other_{d-e}` for `d <= upto`.
    pub fn convolve(&self, other: &HilbertFunction, upto: u32) -> HilbertFunction {
        let mut values = vec![0usize; upto as usize + 1];
        for (d, v) in values.iter_mut().enumerate() {
            for e in 0..=d {
                if e < self.values.len() && d - e < other.values.len() {
                    *v += self.values[e] * other.values[d - e];
                }
            }
        }
        HilbertFunction { values }
    }

    pub fn truncate(&self, upto: u32) -> HilbertFunction {
        HilbertFunction {
            values: self.values[..=upto as usize].to_vec(),
        }
    }
}

/// Hilbert function of the polynomial ring itself (number of monomials per
/// degree), by coin-change dynamic programming over the generator degrees.
pub fn ring_hilbert(ring: &Ring, upto: u32) -> HilbertFunction {
    let mut values = vec![0usize; upto as usize + 1];
    values[0] = 1;
    for j in 0..ring.num_gens() {
        let dj = ring.gen_degree(j) as usize;
        for d in dj..values.len() {
            values[d] += values[d - dj];
        }
    }
    HilbertFunction { values }
}

/// A module expanded into per-degree bases and multiplication matrices.
///
/// `action[j][d]` is the matrix of multiplication by the `j`-th ring
/// generator from degree `d` to degree `d + deg_j`, in row convention; it
/// exists for every `d` with `d + deg_j <= cutoff`.
#[derive(Debug, Clone)]
pub struct DegreewiseModule {
    ring: Ring,
    cutoff: u32,
    dims: Vec<usize>,
    action: Vec<Vec<BitMatrix>>,
    labels: Vec<Vec<String>>,
}

impl DegreewiseModule {
    pub fn zero(ring: &Ring, cutoff: u32) -> Self {
        let dims = vec![0usize; cutoff as usize + 1];
        let action = (0..ring.num_gens())
            .map(|j| {
                let dj = ring.gen_degree(j);
                if dj > cutoff {
                    Vec::new()
                } else {
                    (0..=(cutoff - dj)).map(|_| BitMatrix::zero(0, 0)).collect()
                }
            })
            .collect();
        let labels = vec![Vec::new(); cutoff as usize + 1];
        DegreewiseModule {
            ring: ring.clone(),
            cutoff,
            dims,
            action,
            labels,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn dim(&self, d: u32) -> usize {
        self.dims[d as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self, d: u32) -> &[String] {
        &self.labels[d as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Multiplication by the `j`-th ring generator out of degree `d`.
    pub fn action(&self, j: usize, d: u32) -> &BitMatrix {
        &self.action[j][d as usize]
    }

    pub fn has_action(&self, j: usize, d: u32) -> bool {
        d + self.ring.gen_degree(j) <= self.cutoff
    }

    pub fn hilbert(&self) -> HilbertFunction {
        HilbertFunction::new(self.dims.clone())
    }

    /// Matrix of multiplication by a monomial out of degree `d`.
    fn monomial_action(&self, m: &Monomial, d: u32) -> BitMatrix {
        let mut acc = BitMatrix::identity(self.dims[d as usize]);
        let mut cur = d;
        for (j, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                acc = acc.compose(self.action(j, cur));
                cur += self.ring.gen_degree(j);
            }
        }
        acc
    }

    /// Matrix of multiplication by a homogeneous element of the given
    /// degree out of degree `d` (the element may be zero).
    pub fn mult_matrix_deg(&self, alpha: &Polynomial, deg: u32, d: u32) -> Result<BitMatrix> {
        if let Some(actual) = alpha.degree() {
            if actual != deg {
                return Err(Error::DegreeMismatch(format!(
                    "element has degree {actual}, expected {deg}"
                )));
            }
        }
        if !alpha.is_zero() && !same_ring(alpha.ring(), &self.ring) {
            return Err(Error::RingMismatch(
                "multiplier not in the module's ring".into(),
            ));
        }
        if d + deg > self.cutoff {
            return Err(Error::CutoffInsufficient {
                cutoff: self.cutoff,
                detail: format!("multiplication from degree {d} by degree {deg} leaves the window"),
            });
        }
        let mut out = BitMatrix::zero(self.dims[d as usize], self.dims[(d + deg) as usize]);
        for m in alpha.terms() {
            out.xor_assign(&self.monomial_action(m, d));
        }
        Ok(out)
    }

    /// Matrix of multiplication by a nonzero homogeneous element.
    pub fn mult_matrix(&self, alpha: &Polynomial, d: u32) -> Result<BitMatrix> {
        let deg = alpha.degree().ok_or_else(|| {
            Error::Unsupported("multiplication by the zero element has no degree".into())
        })?;
        self.mult_matrix_deg(alpha, deg, d)
    }

    /// Check the pairwise commutation of action matrices everywhere the
    /// composites stay under the cutoff, and the shape bookkeeping.
    pub fn validate(&self) -> Result<()> {
        let n = self.ring.num_gens();
        for j in 0..n {
            let dj = self.ring.gen_degree(j);
            if dj > self.cutoff {
                continue;
            }
            for d in 0..=(self.cutoff - dj) {
                let a = self.action(j, d);
                if a.rows() != self.dims[d as usize] || a.cols() != self.dims[(d + dj) as usize] {
                    return Err(Error::Inconsistency(format!(
                        "action matrix shape mismatch for generator {j} at degree {d}"
                    )));
                }
            }
        }
        for j in 0..n {
            for k in j + 1..n {
                let dj = self.ring.gen_degree(j);
                let dk = self.ring.gen_degree(k);
                if dj + dk > self.cutoff {
                    continue;
                }
                for d in 0..=(self.cutoff - dj - dk) {
                    let jk = self.action(j, d).compose(self.action(k, d + dj));
                    let kj = self.action(k, d).compose(self.action(j, d + dk));
                    if jk != kj {
                        return Err(Error::Inconsistency(format!(
                            "action matrices for generators {j} and {k} do not commute at degree {d}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Per-generator, per-degree ranks of the action matrices. Two modules
    /// with equal dimensions and equal rank profiles are indistinguishable
    /// to every check in this crate.
    pub fn action_rank_profile(&self) -> Vec<Vec<usize>> {
        (0..self.ring.num_gens())
            .map(|j| self.action[j].iter().map(|m| m.rank()).collect())
            .collect()
    }

    /// Same dimensions and action ranks up to the given degree (which must
    /// not exceed either cutoff).
    pub fn profile_eq_upto(&self, other: &DegreewiseModule, upto: u32) -> bool {
        assert!(upto <= self.cutoff && upto <= other.cutoff);
        if !same_ring(&self.ring, &other.ring) {
            return false;
        }
        for d in 0..=upto {
            if self.dims[d as usize] != other.dims[d as usize] {
                return false;
            }
        }
        for j in 0..self.ring.num_gens() {
            let dj = self.ring.gen_degree(j);
            if dj > upto {
                continue;
            }
            for d in 0..=(upto - dj) {
                if self.action(j, d).rank() != other.action(j, d).rank() {
                    return false;
                }
            }
        }
        true
    }

    /// Sub-object cut out by one echelon subspace per degree. The spaces
    /// must be closed under the ring action; coordinates in the sub-object
    /// are taken in the echelon bases.
    pub(crate) fn submodule(&self, spaces: Vec<Echelon>) -> DegreewiseModule {
        let new_cutoff = (spaces.len() - 1) as u32;
        assert!(new_cutoff <= self.cutoff);
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        let labels: Vec<Vec<String>> = spaces
            .iter()
            .enumerate()
            .map(|(d, s)| {
                s.pivots()
                    .iter()
                    .map(|&p| self.labels[d][p].clone())
                    .collect()
            })
            .collect();
        let n = self.ring.num_gens();
        let mut action: Vec<Vec<BitMatrix>> = Vec::with_capacity(n);
        for j in 0..n {
            let dj = self.ring.gen_degree(j);
            let mut per_degree = Vec::new();
            if dj <= new_cutoff {
                for d in 0..=(new_cutoff - dj) {
                    let src = &spaces[d as usize];
                    let tgt = &spaces[(d + dj) as usize];
                    let rows = src
                        .rows()
                        .iter()
                        .map(|r| {
                            let w = self.action(j, d).apply(r);
                            tgt.coords_in_span(&w)
                                .expect("subspaces are closed under the ring action")
                        })
                        .collect();
                    per_degree.push(BitMatrix::from_rows(rows, tgt.dim()));
                }
            }
            action.push(per_degree);
        }
        DegreewiseModule {
            ring: self.ring.clone(),
            cutoff: new_cutoff,
            dims,
            action,
            labels,
        }
    }

    /// Quotient by one echelon subspace per degree (one per degree up to the
    /// cutoff). The spaces must be closed under the ring action.
    pub(crate) fn quotient(&self, spaces: Vec<Echelon>) -> DegreewiseModule {
        assert_eq!(spaces.len(), self.dims.len());
        let qmaps: Vec<QuotientMap> = spaces.into_iter().map(QuotientMap::new).collect();
        let dims: Vec<usize> = qmaps.iter().map(|q| q.dim()).collect();
        let labels: Vec<Vec<String>> = qmaps
            .iter()
            .enumerate()
            .map(|(d, q)| {
                q.nonpivots()
                    .iter()
                    .map(|&p| self.labels[d][p].clone())
                    .collect()
            })
            .collect();
        let n = self.ring.num_gens();
        let mut action: Vec<Vec<BitMatrix>> = Vec::with_capacity(n);
        for j in 0..n {
            let dj = self.ring.gen_degree(j);
            let mut per_degree = Vec::new();
            if dj <= self.cutoff {
                for d in 0..=(self.cutoff - dj) {
                    let src = &qmaps[d as usize];
                    let tgt = &qmaps[(d + dj) as usize];
                    let rows = (0..src.dim())
                        .map(|k| tgt.project(&self.action(j, d).apply(&src.representative(k))))
                        .collect();
                    per_degree.push(BitMatrix::from_rows(rows, tgt.dim()));
                }
            }
            action.push(per_degree);
        }
        DegreewiseModule {
            ring: self.ring.clone(),
            cutoff: self.cutoff,
            dims,
            action,
            labels,
        }
    }
}

/// Expand a presentation into degreewise form up to the cutoff.
pub fn expand(pres: &GradedPresentation, cutoff: u32) -> Result<DegreewiseModule> {
    let ring = pres.ring();

    // free basis per degree: (generator index, monomial), generator-major
    let mut free_basis: Vec<Vec<(usize, Monomial)>> = Vec::with_capacity(cutoff as usize + 1);
    let mut index: Vec<HashMap<(usize, Monomial), usize>> = Vec::with_capacity(cutoff as usize + 1);
    for d in 0..=cutoff {
        let mut basis = Vec::new();
        for (gi, (_, gdeg)) in pres.generators().iter().enumerate() {
            if *gdeg <= d {
                for m in monomial_basis(ring, d - gdeg) {
                    basis.push((gi, m));
                }
            }
        }
        let map = basis
            .iter()
            .enumerate()
            .map(|(i, key)| (key.clone(), i))
            .collect();
        free_basis.push(basis);
        index.push(map);
    }

    // relation span per degree
    let mut qmaps: Vec<QuotientMap> = Vec::with_capacity(cutoff as usize + 1);
    for d in 0..=cutoff {
        let len = free_basis[d as usize].len();
        let mut ech = Echelon::new(len);
        for (ri, row) in pres.relations().iter().enumerate() {
            let rdeg = match pres.relation_degree(ri) {
                Some(r) => r,
                None => continue, // zero relation spans nothing
            };
            if rdeg > d {
                continue;
            }
            for shift in monomial_basis(ring, d - rdeg) {
                let mut v = BitVec::zeros(len);
                for (gi, coeff) in row.iter().enumerate() {
                    for mu in coeff.terms() {
                        let key = (gi, shift.mul(mu));
                        let idx = index[d as usize][&key];
                        v.toggle(idx);
                    }
                }
                ech.insert(v);
            }
        }
        qmaps.push(QuotientMap::new(ech));
    }

    let dims: Vec<usize> = qmaps.iter().map(|q| q.dim()).collect();
    let labels: Vec<Vec<String>> = qmaps
        .iter()
        .enumerate()
        .map(|(d, q)| {
            q.nonpivots()
                .iter()
                .map(|&p| {
                    let (gi, m) = &free_basis[d][p];
                    let gname = &pres.generators()[*gi].0;
                    if m.exps().iter().all(|&e| e == 0) {
                        gname.clone()
                    } else {
                        format!("{}*{}", m.render(ring), gname)
                    }
                })
                .collect()
        })
        .collect();

    let nring = ring.num_gens();
    let mut action: Vec<Vec<BitMatrix>> = Vec::with_capacity(nring);
    for j in 0..nring {
        let dj = ring.gen_degree(j);
        let mut per_degree = Vec::new();
        if dj <= cutoff {
            for d in 0..=(cutoff - dj) {
                let src = &qmaps[d as usize];
                let tgt = &qmaps[(d + dj) as usize];
                let var = Monomial::var(nring, j);
                let rows = src
                    .nonpivots()
                    .iter()
                    .map(|&p| {
                        let (gi, m) = &free_basis[d as usize][p];
                        let key = (*gi, m.mul(&var));
                        let idx = index[(d + dj) as usize][&key];
                        tgt.project(&BitVec::unit(tgt.ambient_dim(), idx))
                    })
                    .collect();
                per_degree.push(BitMatrix::from_rows(rows, tgt.dim()));
            }
        }
        action.push(per_degree);
    }

    Ok(DegreewiseModule {
        ring: ring.clone(),
        cutoff,
        dims,
        action,
        labels,
    })
}

pub fn hilbert_function(module: &DegreewiseModule) -> HilbertFunction {
    module.hilbert()
}

/// Degreewise kernel of multiplication by a nonzero homogeneous element.
/// The result is only known up to `cutoff - deg(alpha)`.
pub fn kernel_of_mult(module: &DegreewiseModule, alpha: &Polynomial) -> Result<DegreewiseModule> {
    let deg = alpha.degree().ok_or_else(|| {
        Error::Unsupported("kernel of the zero multiplication is everything".into())
    })?;
    if deg == 0 {
        // the only degree-0 element is 1; multiplication is the identity
        return Ok(DegreewiseModule::zero(&module.ring, module.cutoff));
    }
    if deg > module.cutoff {
        return Err(Error::CutoffInsufficient {
            cutoff: module.cutoff,
            detail: format!("kernel of a degree-{deg} element needs a larger window"),
        });
    }
    let new_cutoff = module.cutoff - deg;
    let mut spaces = Vec::with_capacity(new_cutoff as usize + 1);
    for d in 0..=new_cutoff {
        spaces.push(module.mult_matrix(alpha, d)?.left_kernel());
    }
    Ok(module.submodule(spaces))
}

/// Iterated kernel: elements killed by every listed element.
pub fn kernel_of_mult_iterated(
    module: &DegreewiseModule,
    alphas: &[Polynomial],
) -> Result<DegreewiseModule> {
    match alphas.split_last() {
        None => Ok(module.clone()),
        Some((last, rest)) => {
            let inner = kernel_of_mult_iterated(module, rest)?;
            kernel_of_mult(&inner, last)
        }
    }
}

/// Quotient by the submodule generated by the images of the listed
/// homogeneous elements: `M / (alpha_1 M + .. + alpha_k M)`.
pub fn quotient_by_elements(
    module: &DegreewiseModule,
    alphas: &[Polynomial],
) -> Result<DegreewiseModule> {
    let mut spaces: Vec<Echelon> = (0..=module.cutoff)
        .map(|d| Echelon::new(module.dim(d)))
        .collect();
    for alpha in alphas {
        let deg = match alpha.degree() {
            None => continue, // zero element contributes nothing
            Some(0) => {
                return Err(Error::Unsupported(
                    "quotient by a degree-0 unit is the zero module".into(),
                ))
            }
            Some(e) => e,
        };
        for d in deg..=module.cutoff {
            let mult = module.mult_matrix(alpha, d - deg)?;
            for i in 0..mult.rows() {
                spaces[d as usize].insert(mult.row(i).clone());
            }
        }
    }
    Ok(module.quotient(spaces))
}

/// Shift all degrees up by `s`.
pub fn suspension(module: &DegreewiseModule, s: u32) -> DegreewiseModule {
    if s == 0 {
        return module.clone();
    }
    let cutoff = module.cutoff + s;
    let mut dims = vec![0usize; s as usize];
    dims.extend_from_slice(&module.dims);
    let mut labels = vec![Vec::new(); s as usize];
    labels.extend_from_slice(&module.labels);
    let n = module.ring.num_gens();
    let mut action = Vec::with_capacity(n);
    for j in 0..n {
        let dj = module.ring.gen_degree(j);
        let mut per_degree = Vec::new();
        if dj <= cutoff {
            for d in 0..=(cutoff - dj) {
                if d < s {
                    per_degree.push(BitMatrix::zero(0, dims[(d + dj) as usize]));
                } else {
                    per_degree.push(module.action(j, d - s).clone());
                }
            }
        }
        action.push(per_degree);
    }
    DegreewiseModule {
        ring: module.ring.clone(),
        cutoff,
        dims,
        action,
        labels,
    }
}

/// Blockwise direct sum; the cutoff is the smaller of the two.
pub fn direct_sum(a: &DegreewiseModule, b: &DegreewiseModule) -> Result<DegreewiseModule> {
    if !same_ring(&a.ring, &b.ring) {
        return Err(Error::RingMismatch(
            "direct sum over different rings".into(),
        ));
    }
    let cutoff = a.cutoff.min(b.cutoff);
    let dims: Vec<usize> = (0..=cutoff).map(|d| a.dim(d) + b.dim(d)).collect();
    let labels: Vec<Vec<String>> = (0..=cutoff)
        .map(|d| {
            let mut l: Vec<String> = a.labels(d).to_vec();
            l.extend(b.labels(d).iter().cloned());
            l
        })
        .collect();
    let n = a.ring.num_gens();
    let mut action = Vec::with_capacity(n);
    for j in 0..n {
        let dj = a.ring.gen_degree(j);
        let mut per_degree = Vec::new();
        if dj <= cutoff {
            for d in 0..=(cutoff - dj) {
                per_degree.push(a.action(j, d).block_diag(b.action(j, d)));
            }
        }
        action.push(per_degree);
    }
    Ok(DegreewiseModule {
        ring: a.ring.clone(),
        cutoff,
        dims,
        action,
        labels,
    })
}

/// Extension of scalars on presentations: push every relation coefficient
/// through the map. Realizes `R (x)_S N` when `R` is free over `S`, which
/// holds for the polynomial inclusions used here; callers are responsible
/// for that hypothesis.
pub fn base_change(pres: &GradedPresentation, map: &AlgebraMap) -> Result<GradedPresentation> {
    if !same_ring(pres.ring(), map.source()) {
        return Err(Error::RingMismatch(
            "presentation is not over the source of the map".into(),
        ));
    }
    let relations = pres
        .relations()
        .iter()
        .map(|row| row.iter().map(|c| map.apply(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    GradedPresentation::new(map.target(), pres.generators().to_vec(), relations)
}

/// View a module over `R` as a module over `S` along `phi: S -> R`: same
/// graded pieces, the action of each `S`-generator is multiplication by its
/// image.
pub fn restrict_scalars(module: &DegreewiseModule, map: &AlgebraMap) -> Result<DegreewiseModule> {
    if !same_ring(&module.ring, map.target()) {
        return Err(Error::RingMismatch(
            "module is not over the target of the map".into(),
        ));
    }
    let source = map.source();
    let cutoff = module.cutoff;
    let n = source.num_gens();
    let mut action = Vec::with_capacity(n);
    for j in 0..n {
        let dj = source.gen_degree(j);
        let mut per_degree = Vec::new();
        if dj <= cutoff {
            for d in 0..=(cutoff - dj) {
                per_degree.push(module.mult_matrix_deg(&map.images()[j], dj, d)?);
            }
        }
        action.push(per_degree);
    }
    Ok(DegreewiseModule {
        ring: source.clone(),
        cutoff,
        dims: module.dims.clone(),
        action,
        labels: module.labels.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dickson::dickson_classes;
    use crate::f2poly::{cohomology_ring, parse_polynomial, RingDescriptor};

    fn p(ring: &Ring, s: &str) -> Polynomial {
        parse_polynomial(ring, s).unwrap()
    }

    fn hv_free(n: u32, cutoff: u32) -> DegreewiseModule {
        let ring = cohomology_ring(n);
        let pres = GradedPresentation::free(&ring, vec![("g".into(), 0)]).unwrap();
        expand(&pres, cutoff).unwrap()
    }

    /// Independent oracle for expansion dimensions: plain bool-vector
    /// Gaussian elimination over the monomial-times-generator span, written
    /// against none of the crate's linear algebra.
    fn naive_quotient_dims(
        ring: &Ring,
        gens: &[u32],
        relations: &[Vec<Polynomial>],
        cutoff: u32,
    ) -> Vec<usize> {
        let mut dims = Vec::new();
        for d in 0..=cutoff {
            let mut basis: Vec<(usize, Vec<u32>)> = Vec::new();
            for (gi, gdeg) in gens.iter().enumerate() {
                if *gdeg <= d {
                    for m in monomial_basis(ring, d - gdeg) {
                        basis.push((gi, m.exps().to_vec()));
                    }
                }
            }
            // index lookup
            let find = |gi: usize, e: &[u32]| basis.iter().position(|(g, x)| *g == gi && x == e);
            let mut rows: Vec<Vec<bool>> = Vec::new();
            for row in relations {
                let rdeg = row
                    .iter()
                    .zip(gens)
                    .find_map(|(c, gd)| c.degree().map(|cd| cd + gd));
                let rdeg = match rdeg {
                    Some(r) if r <= d => r,
                    _ => continue,
                };
                for shift in monomial_basis(ring, d - rdeg) {
                    let mut v = vec![false; basis.len()];
                    for (gi, coeff) in row.iter().enumerate() {
                        for mu in coeff.terms() {
                            let prod: Vec<u32> = shift
                                .exps()
                                .iter()
                                .zip(mu.exps())
                                .map(|(a, b)| a + b)
                                .collect();
                            let idx = find(gi, &prod).unwrap();
                            v[idx] = !v[idx];
                        }
                    }
                    rows.push(v);
                }
            }
            // naive elimination
            let mut rank = 0usize;
            let width = basis.len();
            for col in 0..width {
                if let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col]) {
                    rows.swap(rank, pr);
                    for r in 0..rows.len() {
                        if r != rank && rows[r][col] {
                            for c in 0..width {
                                rows[r][c] ^= rows[rank][c];
                            }
                        }
                    }
                    rank += 1;
                }
            }
            dims.push(width - rank);
        }
        dims
    }

    #[test]
    fn expand_free_module_dims() {
        let m = hv_free(2, 3);
        assert_eq!(m.dims(), &[1, 2, 3, 4]);
        m.validate().unwrap();
    }

    #[test]
    fn expand_single_relation_matches_oracle() {
        let ring = cohomology_ring(2);
        let rel = p(&ring, "t1^2*t2 + t1*t2^2");
        let pres = GradedPresentation::cyclic_quotient(&ring, &[rel.clone()]).unwrap();
        let m = expand(&pres, 4).unwrap();
        assert_eq!(m.dims(), &[1, 2, 3, 3, 3]);
        let oracle = naive_quotient_dims(&ring, &[0], &[vec![rel]], 4);
        assert_eq!(m.dims(), &oracle[..]);
        m.validate().unwrap();
    }

    #[test]
    fn expand_trivial_module() {
        let ring = cohomology_ring(2);
        let pres = GradedPresentation::new(
            &ring,
            vec![("g".into(), 0)],
            vec![vec![p(&ring, "t1")], vec![p(&ring, "t2")]],
        )
        .unwrap();
        let m = expand(&pres, 5).unwrap();
        assert_eq!(m.dims(), &[1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn inhomogeneous_relation_rejected_with_index() {
        let ring = cohomology_ring(2);
        let bad = GradedPresentation::new(
            &ring,
            vec![("g".into(), 0), ("h".into(), 0)],
            vec![
                vec![p(&ring, "t1"), p(&ring, "t2")],
                vec![p(&ring, "t1"), p(&ring, "t2^2")],
            ],
        );
        match bad {
            Err(Error::InhomogeneousRelation { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected inhomogeneous relation error, got {other:?}"),
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hv_free(2, 4).hilbert().values(), &[1, 2, 3, 4, 5]);

        let ring = cohomology_ring(2);
        let sum = GradedPresentation::new(
            &ring,
            vec![("a".into(), 0), ("b".into(), 1)],
            vec![
                vec![p(&ring, "t1"), Polynomial::zero(&ring)],
                vec![p(&ring, "t2"), Polynomial::zero(&ring)],
                vec![Polynomial::zero(&ring), p(&ring, "t1")],
                vec![Polynomial::zero(&ring), p(&ring, "t2")],
            ],
        )
        .unwrap();
        let m = expand(&sum, 4).unwrap();
        assert_eq!(m.hilbert().values(), &[1, 1, 0, 0, 0]);
    }

    #[test]
    fn kernel_examples() {
        // free module: no torsion
        let m = hv_free(2, 8);
        let ring = cohomology_ring(2);
        let k = kernel_of_mult(&m, &p(&ring, "t2")).unwrap();
        assert!(k.is_zero());

        // F2[t1]/(t1^2), kernel of t1 is the span of t1*g
        let r1 = cohomology_ring(1);
        let pres = GradedPresentation::cyclic_quotient(&r1, &[p(&r1, "t1^2")]).unwrap();
        let m = expand(&pres, 6).unwrap();
        let k = kernel_of_mult(&m, &p(&r1, "t1")).unwrap();
        assert_eq!(k.dims(), &[0, 1, 0, 0, 0, 0]);

        // F2[t1,t2]/(t2^2), kernel of t2
        let pres = GradedPresentation::cyclic_quotient(&ring, &[p(&ring, "t2^2")]).unwrap();
        let m = expand(&pres, 6).unwrap();
        let k = kernel_of_mult(&m, &p(&ring, "t2")).unwrap();
        assert_eq!(k.dims(), &[0, 1, 1, 1, 1, 1]);
        k.validate().unwrap();
    }

    #[test]
    fn quotient_examples() {
        let ring = cohomology_ring(2);
        let m = hv_free(2, 8);

        let q = quotient_by_elements(&m, &[p(&ring, "t2")]).unwrap();
        assert_eq!(q.dims(), &[1, 1, 1, 1, 1, 1, 1, 1, 1]);

        let sys = dickson_classes(2);
        let q = quotient_by_elements(&m, sys.classes()).unwrap();
        assert_eq!(q.dims(), &[1, 2, 2, 1, 0, 0, 0, 0, 0]);
        assert_eq!(q.dims().iter().sum::<usize>(), 6); // product of class degrees

        // the trivial module is untouched by any quotient
        let pres = GradedPresentation::new(
            &ring,
            vec![("g".into(), 0)],
            vec![vec![p(&ring, "t1")], vec![p(&ring, "t2")]],
        )
        .unwrap();
        let f2 = expand(&pres, 8).unwrap();
        let q = quotient_by_elements(&f2, sys.classes()).unwrap();
        assert_eq!(q.dims(), f2.dims());
    }

    #[test]
    fn suspension_examples() {
        let m = hv_free(2, 5);
        let s0 = suspension(&m, 0);
        assert_eq!(s0.dims(), m.dims());

        let ring = cohomology_ring(2);
        let pres = GradedPresentation::new(
            &ring,
            vec![("g".into(), 0)],
            vec![vec![p(&ring, "t1")], vec![p(&ring, "t2")]],
        )
        .unwrap();
        let f2 = expand(&pres, 4).unwrap();
        let s1 = suspension(&f2, 1);
        assert_eq!(s1.dims(), &[0, 1, 0, 0, 0, 0]);

        let s3 = suspension(&m, 3);
        for d in 0..=5u32 {
            assert_eq!(s3.dim(d + 3), m.dim(d));
        }
        s3.validate().unwrap();
    }

    #[test]
    fn direct_sum_examples() {
        let ring = cohomology_ring(2);
        let m = hv_free(2, 6);
        let pres = GradedPresentation::new(
            &ring,
            vec![("g".into(), 0)],
            vec![vec![p(&ring, "t1")], vec![p(&ring, "t2")]],
        )
        .unwrap();
        let f2 = expand(&pres, 6).unwrap();
        let s = direct_sum(&m, &f2).unwrap();
        assert_eq!(s.dims(), &[2, 2, 3, 4, 5, 6, 7]);
        s.validate().unwrap();

        let z = DegreewiseModule::zero(&ring, 6);
        let s = direct_sum(&m, &z).unwrap();
        assert_eq!(s.dims(), m.dims());

        let h1 = m.hilbert();
        let h2 = f2.hilbert();
        let hs = direct_sum(&m, &f2).unwrap().hilbert();
        for d in 0..=6u32 {
            assert_eq!(hs.value(d), h1.value(d) + h2.value(d));
        }
    }

    #[test]
    fn base_change_examples() {
        // q*: F2[t2] -> F2[t1,t2]
        let source = RingDescriptor::new(vec![("t2".into(), 1)]).unwrap();
        let hv = cohomology_ring(2);
        let q = AlgebraMap::inclusion(&source, &hv).unwrap();

        let free = GradedPresentation::free(&source, vec![("g".into(), 0)]).unwrap();
        let up = base_change(&free, &q).unwrap();
        assert_eq!(expand(&up, 5).unwrap().dims(), &[1, 2, 3, 4, 5, 6]);

        let trunc = GradedPresentation::cyclic_quotient(&source, &[p(&source, "t2^2")]).unwrap();
        let up = base_change(&trunc, &q).unwrap();
        let expected = GradedPresentation::cyclic_quotient(&hv, &[p(&hv, "t2^2")]).unwrap();
        assert_eq!(
            expand(&up, 6).unwrap().dims(),
            expand(&expected, 6).unwrap().dims()
        );

        // convolution identity: hilbert(R (x)_S N) = hilbert(F2[t1]) * hilbert(N)
        let n_mod = expand(&trunc, 8).unwrap();
        let up_mod = expand(&up, 8).unwrap();
        let t1_only = RingDescriptor::new(vec![("t1".into(), 1)]).unwrap();
        let conv = ring_hilbert(&t1_only, 8).convolve(&n_mod.hilbert(), 8);
        assert_eq!(up_mod.hilbert(), conv);
    }

    #[test]
    fn restrict_scalars_examples() {
        let hv = cohomology_ring(2);
        let m = hv_free(2, 8);

        // along the identity: same dims and ranks
        let id = AlgebraMap::identity(&hv);
        let r = restrict_scalars(&m, &id).unwrap();
        assert!(r.profile_eq_upto(&m, 8));

        // along the Dickson inclusion: degree-0 action of the top class has rank 1
        let sys = dickson_classes(2);
        let dv = restrict_scalars(&m, &sys.inclusion()).unwrap();
        assert_eq!(dv.ring().num_gens(), 2);
        let top = dv.action(1, 0); // c2: degree 0 -> 3
        assert_eq!(top.rank(), 1);
        // the image is the expansion of t1^2*t2 + t1*t2^2 in the monomial basis
        let labels = m.labels(3);
        let image: Vec<&str> = top.row(0).iter_ones().map(|i| labels[i].as_str()).collect();
        assert_eq!(image, vec!["t1^2*t2*g", "t1*t2^2*g"]);
        dv.validate().unwrap();

        // t2 acts freely on F2[t1,t2] viewed over F2[t2]
        let t2_only = RingDescriptor::new(vec![("t2".into(), 1)]).unwrap();
        let q = AlgebraMap::inclusion(&t2_only, &hv).unwrap();
        let over_t2 = restrict_scalars(&m, &q).unwrap();
        let k = kernel_of_mult(&over_t2, &p(&t2_only, "t2")).unwrap();
        assert!(k.is_zero());
    }

    #[test]
    fn expansion_is_presentation_order_independent() {
        let ring = cohomology_ring(2);
        let a = p(&ring, "t1^2 + t1*t2");
        let b = p(&ring, "t2^3");
        let pres1 = GradedPresentation::new(
            &ring,
            vec![("x".into(), 0), ("y".into(), 1)],
            vec![
                vec![a.clone(), Polynomial::zero(&ring)],
                vec![b.clone(), p(&ring, "t1^2 + t2^2")],
            ],
        )
        .unwrap();
        let pres2 = GradedPresentation::new(
            &ring,
            vec![("y".into(), 1), ("x".into(), 0)],
            vec![
                vec![p(&ring, "t1^2 + t2^2"), b],
                vec![Polynomial::zero(&ring), a],
            ],
        )
        .unwrap();
        let m1 = expand(&pres1, 8).unwrap();
        let m2 = expand(&pres2, 8).unwrap();
        assert_eq!(m1.dims(), m2.dims());
        for j in 0..2 {
            for d in 0..=7u32 {
                assert_eq!(m1.action(j, d).rank(), m2.action(j, d).rank());
            }
        }
    }

    #[test]
    fn exactness_bookkeeping() {
        let ring = cohomology_ring(2);
        let pres = GradedPresentation::cyclic_quotient(&ring, &[p(&ring, "t2^2")]).unwrap();
        let m = expand(&pres, 8).unwrap();
        let alpha = p(&ring, "t2");
        let torsion = kernel_of_mult(&m, &alpha).unwrap();
        let coinv = quotient_by_elements(&m, &[alpha.clone()]).unwrap();
        for d in 0..=7u32 {
            let rank_out = m.mult_matrix(&alpha, d).unwrap().rank();
            assert_eq!(m.dim(d), torsion.dim(d) + rank_out);
        }
        for d in 1..=8u32 {
            let rank_in = m.mult_matrix(&alpha, d - 1).unwrap().rank();
            assert_eq!(coinv.dim(d), m.dim(d) - rank_in);
        }
    }

    #[test]
    fn iterated_quotients_compose() {
        let ring = cohomology_ring(2);
        let m = hv_free(2, 10);
        let a = p(&ring, "t1^2 + t1*t2 + t2^2");
        let b = p(&ring, "t1^2*t2 + t1*t2^2");
        let both = quotient_by_elements(&m, &[a.clone(), b.clone()]).unwrap();
        let one = quotient_by_elements(&m, &[a]).unwrap();
        let then = quotient_by_elements(&one, &[b]).unwrap();
        assert_eq!(both.dims(), then.dims());
    }

    #[test]
    fn kernel_iterated_matches_nested() {
        let ring = cohomology_ring(2);
        let pres = GradedPresentation::cyclic_quotient(&ring, &[p(&ring, "t1*t2")]).unwrap();
        let m = expand(&pres, 9).unwrap();
        let t1 = p(&ring, "t1");
        let t2 = p(&ring, "t2");
        let nested = kernel_of_mult(&kernel_of_mult(&m, &t2).unwrap(), &t1).unwrap();
        let joint = kernel_of_mult_iterated(&m, &[t1, t2]).unwrap();
        assert_eq!(nested.dims(), joint.dims());
    }

    #[test]
    fn zero_module_everywhere() {
        let ring = cohomology_ring(2);
        let z = expand(&GradedPresentation::zero(&ring), 6).unwrap();
        assert!(z.is_zero());
        assert!(kernel_of_mult(&z, &p(&ring, "t1")).unwrap().is_zero());
        assert!(quotient_by_elements(&z, &[p(&ring, "t1")])
            .unwrap()
            .is_zero());
        assert!(suspension(&z, 2).is_zero());
    }

    #[test]
    fn weighted_ring_expansion() {
        // F2[c1,c2] with degrees (2,3): Hilbert 1,0,1,1,1,1,2,...
        let ring = RingDescriptor::new(vec![("c1".into(), 2), ("c2".into(), 3)]).unwrap();
        let pres = GradedPresentation::free(&ring, vec![("g".into(), 0)]).unwrap();
        let m = expand(&pres, 8).unwrap();
        assert_eq!(m.dims(), &[1, 0, 1, 1, 1, 1, 2, 1, 2]);
        assert_eq!(ring_hilbert(&ring, 8).values(), m.dims());
        m.validate().unwrap();
    }
}
