//! The algebraic side of a corank-one restriction: coinvariants, torsion,
//! and the exactness and depth identities that relate a module over
//! `F2[t1..tn]` to its counterpart over `F2[t1..t_{n-1}]`.
//!
//! For a corank-one subgroup flag, the engine never constructs a transfer
//! map. The short exact sequence linking the coinvariants, the subgroup
//! module and the torsion is consumed through its dimension shadow: the
//! subgroup module must be degreewise as large as coinvariants plus
//! torsion, and each side's depth enters the biconditional and inequality
//! checks below. Modules attached to the subgroup are always supplied by
//! the caller (catalog data); the engine validates the pair instead of
//! deriving one side from the other.

use crate::dickson::{dickson_classes, dtilde_generators, SubgroupFlag};
use crate::error::Error;
use crate::f2poly::{cohomology_ring, AlgebraMap, Polynomial};
use crate::grmodule::{
    base_change, expand, kernel_of_mult, quotient_by_elements, restrict_scalars, suspension,
    DegreewiseModule, GradedPresentation,
};
use crate::homalg::{depth_via_ab, koszul_tor, Depth};
use crate::Result;

/// Rewrite a module in the coordinates of the flag, after which the
/// subgroup is cut out by the literal last variables.
pub fn normalize_coordinates(
    module: &DegreewiseModule,
    flag: &SubgroupFlag,
) -> Result<DegreewiseModule> {
    if module.ring().num_gens() != flag.ambient_rank() as usize {
        return Err(Error::RingMismatch(
            "flag rank does not match the module's variable count".into(),
        ));
    }
    if flag.is_standard() {
        Ok(module.clone())
    } else {
        restrict_scalars(module, &flag.change_of_basis_map())
    }
}

/// Reinterpret a module over `F2[t1..tn]` on which the last `codim`
/// variables act as zero as a module over `F2[t1..tm]`, `m = n - codim`.
pub fn forget_killed_variables(module: &DegreewiseModule, codim: u32) -> Result<DegreewiseModule> {
    let n = module.ring().num_gens();
    let m = n - codim as usize;
    for j in m..n {
        let dj = module.ring().gen_degree(j);
        if dj > module.cutoff() {
            continue;
        }
        for d in 0..=(module.cutoff() - dj) {
            let mat = module.action(j, d);
            if (0..mat.rows()).any(|r| !mat.row(r).is_zero()) {
                return Err(Error::Inconsistency(format!(
                    "variable {} does not act as zero at degree {d}",
                    module.ring().gen_name(j)
                )));
            }
        }
    }
    let hw = cohomology_ring(m as u32);
    let keep = AlgebraMap::new(
        &hw,
        module.ring(),
        (0..m).map(|j| Polynomial::var(module.ring(), j)).collect(),
    )?;
    restrict_scalars(module, &keep)
}

/// Coinvariants and torsion of the killed variable, both as modules over
/// the subgroup's ring. The torsion side is only known up to `cutoff - 1`.
pub fn gysin_split(
    m_v: &DegreewiseModule,
    flag: &SubgroupFlag,
) -> Result<(DegreewiseModule, DegreewiseModule)> {
    if flag.codim() != 1 {
        return Err(Error::Unsupported(format!(
            "splitting needs a corank-one flag, got codimension {}",
            flag.codim()
        )));
    }
    let normalized = normalize_coordinates(m_v, flag)?;
    let n = flag.ambient_rank();
    let hv = cohomology_ring(n);
    let tn = Polynomial::var(&hv, n as usize - 1);
    let coinv = quotient_by_elements(&normalized, std::slice::from_ref(&tn))?;
    let torsion = kernel_of_mult(&normalized, &tn)?;
    Ok((
        forget_killed_variables(&coinv, 1)?,
        forget_killed_variables(&torsion, 1)?,
    ))
}

/// A module over the ambient group's ring paired with catalog data for the
/// subgroup, together with its computed coinvariants and torsion.
#[derive(Debug, Clone)]
pub struct GysinTriple {
    pub m_v: DegreewiseModule,
    pub flag: SubgroupFlag,
    pub m_w: DegreewiseModule,
    pub coinv: DegreewiseModule,
    pub torsion: DegreewiseModule,
}

impl GysinTriple {
    pub fn new(m_v: DegreewiseModule, flag: SubgroupFlag, m_w: DegreewiseModule) -> Result<Self> {
        if flag.codim() != 1 {
            return Err(Error::Unsupported("triples need a corank-one flag".into()));
        }
        let expected_w = cohomology_ring(flag.subgroup_rank());
        if !crate::f2poly::same_ring(m_w.ring(), &expected_w) {
            return Err(Error::RingMismatch(
                "subgroup module is not over the subgroup's ring".into(),
            ));
        }
        let (coinv, torsion) = gysin_split(&m_v, &flag)?;
        Ok(GysinTriple {
            m_v,
            flag,
            m_w,
            coinv,
            torsion,
        })
    }

    /// Largest degree through which all three modules are known.
    pub fn common_cutoff(&self) -> u32 {
        self.m_w
            .cutoff()
            .min(self.coinv.cutoff())
            .min(self.torsion.cutoff())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub ok: bool,
    pub first_failure: Option<u32>,
}

/// Degreewise dimension additivity of the short exact sequence: the
/// subgroup module must be exactly as large as coinvariants plus torsion.
pub fn gysin_consistency(triple: &GysinTriple) -> ConsistencyReport {
    for d in 0..=triple.common_cutoff() {
        let lhs = triple.m_w.dim(d);
        let rhs = triple.coinv.dim(d) + triple.torsion.dim(d);
        if lhs != rhs {
            return ConsistencyReport {
                ok: false,
                first_failure: Some(d),
            };
        }
    }
    ConsistencyReport {
        ok: true,
        first_failure: None,
    }
}

/// Depth biconditional for a split pair: the subgroup module has depth at
/// least `k` exactly when both the coinvariants and the torsion do.
pub fn split_depth_biconditional(triple: &GysinTriple, k: u32) -> Result<bool> {
    let depth_w = depth_via_ab(&triple.m_w)?.depth;
    let depth_coinv = depth_via_ab(&triple.coinv)?.depth;
    let depth_torsion = depth_via_ab(&triple.torsion)?.depth;
    let lhs = depth_w.at_least(k);
    let rhs = depth_coinv.at_least(k) && depth_torsion.at_least(k);
    Ok(lhs == rhs)
}

#[derive(Debug, Clone)]
pub struct RankOneTorReport {
    /// Degree-zero Tor over the rank-one subring: the coinvariants.
    pub q0: DegreewiseModule,
    /// Degree-one Tor: the suspended torsion.
    pub q1: DegreewiseModule,
    /// Whether the independent Koszul ranks reproduce both Hilbert
    /// functions.
    pub dims_match: bool,
    /// Tor above homological degree one is structurally absent.
    pub vanishing_above_one: bool,
}

/// Tor of the module against `F2` over the rank-one polynomial subring of
/// the killed variable, computed two ways: by the kernel/quotient
/// constructions (producing honest modules over the subgroup ring) and by
/// the generic Koszul rank machinery (producing dimensions only). The two
/// must agree degreewise.
pub fn rank_one_tor_split(m_v: &DegreewiseModule, flag: &SubgroupFlag) -> Result<RankOneTorReport> {
    if flag.codim() != 1 {
        return Err(Error::Unsupported("corank-one flags only".into()));
    }
    let (coinv, torsion) = gysin_split(m_v, flag)?;
    let q1 = suspension(&torsion, 1);

    // independent route: restrict to F2[t_n] and run the Koszul machinery
    let normalized = normalize_coordinates(m_v, flag)?;
    let hv = cohomology_ring(flag.ambient_rank());
    let qring = flag.quotient_ring();
    let include = AlgebraMap::new(
        &qring,
        &hv,
        vec![Polynomial::var(&hv, flag.ambient_rank() as usize - 1)],
    )?;
    let over_tn = restrict_scalars(&normalized, &include)?;
    let table = koszul_tor(&over_tn);

    let mut dims_match = true;
    for d in 0..=coinv.cutoff() {
        if table.entry(0, d) != coinv.dim(d) {
            dims_match = false;
        }
    }
    for d in 0..=q1.cutoff().min(table.cutoff()) {
        if table.entry(1, d) != q1.dim(d) {
            dims_match = false;
        }
    }
    let vanishing_above_one = table.num_rows() == 2;
    Ok(RankOneTorReport {
        q0: coinv,
        q1,
        dims_match,
        vanishing_above_one,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingVerdict {
    /// The hypotheses on the two auxiliary tables are not met.
    NotApplicable,
    Holds,
    Fails {
        first_bad_row: usize,
    },
}

#[derive(Debug, Clone)]
pub struct SequenceSReport {
    pub euler_ok: bool,
    pub first_euler_failure: Option<u32>,
    pub vanishing: VanishingVerdict,
}

/// Exactness bookkeeping of the two-row change-of-rings comparison. With
/// `A_p` the Tor of the coinvariants over the subgroup invariants, `B_p`
/// the Tor of the suspended torsion over the same ring, and `C_p` the Tor
/// of the module over the intermediate invariant algebra, the alternating
/// sum `sum_p (-1)^p (A_{p,d} - C_{p,d} + B_{p-1,d})` vanishes in every
/// internal degree. When the `A` rows vanish from `n-k` on and the `B`
/// rows from `n-k` on (all certified), the `C` rows must vanish from
/// `n-k+1` on.
pub fn sequence_s_check(
    m_v: &DegreewiseModule,
    flag: &SubgroupFlag,
    k: u32,
) -> Result<SequenceSReport> {
    if flag.codim() != 1 {
        return Err(Error::Unsupported("corank-one flags only".into()));
    }
    let n = flag.ambient_rank();
    let m = flag.subgroup_rank();
    let (coinv, torsion) = gysin_split(m_v, flag)?;
    let suspended = suspension(&torsion, 1);

    let hw = cohomology_ring(m);
    let table_a;
    let table_b;
    if m >= 1 {
        let dw = dickson_classes(m);
        let incl_dw = AlgebraMap::new(dw.ring_dv(), &hw, dw.classes().to_vec())?;
        table_a = koszul_tor(&restrict_scalars(&coinv, &incl_dw)?);
        table_b = koszul_tor(&restrict_scalars(&suspended, &incl_dw)?);
    } else {
        table_a = koszul_tor(&coinv);
        table_b = koszul_tor(&suspended);
    }

    let normalized = normalize_coordinates(m_v, flag)?;
    let hv = cohomology_ring(n);
    let (dt_gens, dt_ring) = dtilde_generators(flag)?;
    let incl_dt = AlgebraMap::new(&dt_ring, &hv, dt_gens)?;
    let table_c = koszul_tor(&restrict_scalars(&normalized, &incl_dt)?);

    let upto = table_a.cutoff().min(table_b.cutoff()).min(table_c.cutoff());
    let mut euler_ok = true;
    let mut first_euler_failure = None;
    for d in 0..=upto {
        let mut acc: i64 = 0;
        for p in 0..=(n as usize) {
            let sign = if p % 2 == 0 { 1i64 } else { -1 };
            let a = if p < table_a.num_rows() {
                table_a.entry(p, d) as i64
            } else {
                0
            };
            let c = if p < table_c.num_rows() {
                table_c.entry(p, d) as i64
            } else {
                0
            };
            let b = if p >= 1 && p - 1 < table_b.num_rows() {
                table_b.entry(p - 1, d) as i64
            } else {
                0
            };
            acc += sign * (a - c + b);
        }
        if acc != 0 {
            euler_ok = false;
            first_euler_failure = Some(d);
            break;
        }
    }

    let vanishing = if k == 0 || k > m {
        VanishingVerdict::NotApplicable
    } else if !(table_a.stability_ok() && table_b.stability_ok() && table_c.stability_ok()) {
        return Err(Error::CutoffInsufficient {
            cutoff: m_v.cutoff(),
            detail: "auxiliary Tor tables are not certified".into(),
        });
    } else {
        let bound = (n - k) as usize;
        let a_hyp = (bound..table_a.num_rows()).all(|p| table_a.row_is_zero(p));
        let b_hyp = (bound..table_b.num_rows()).all(|p| table_b.row_is_zero(p));
        if !(a_hyp && b_hyp) {
            VanishingVerdict::NotApplicable
        } else {
            match (bound + 1..table_c.num_rows()).find(|&p| !table_c.row_is_zero(p)) {
                None => VanishingVerdict::Holds,
                Some(p) => VanishingVerdict::Fails { first_bad_row: p },
            }
        }
    };

    Ok(SequenceSReport {
        euler_ok,
        first_euler_failure,
        vanishing,
    })
}

/// Depth can only drop when passing to a subgroup: one corank-one step.
pub fn subgroup_depth_inequality(m_v: &DegreewiseModule, m_w: &DegreewiseModule) -> Result<bool> {
    let depth_v = depth_via_ab(m_v)?.depth;
    let depth_w = depth_via_ab(m_w)?.depth;
    Ok(depth_w <= depth_v)
}

/// Depth inequality along a full chain of corank-one restrictions:
/// `levels[j]` is the module over the rank `n - j` ring. Checks every
/// consecutive step.
pub fn subgroup_depth_chain(levels: &[DegreewiseModule]) -> Result<bool> {
    for pair in levels.windows(2) {
        if !subgroup_depth_inequality(&pair[0], &pair[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DepthStepVerdict {
    /// The torsion of the killed variable is nonzero, so the equality is
    /// not asserted.
    HypothesisNotMet,
    Holds {
        ambient: Depth,
        coinvariants: Depth,
    },
    Fails {
        ambient: Depth,
        coinvariants: Depth,
    },
}

/// For a module with vanishing torsion of the killed variable, depth over
/// the ambient ring exceeds the coinvariants' depth over the subgroup ring
/// by exactly one.
pub fn torsion_free_depth_step(
    module: &DegreewiseModule,
    flag: &SubgroupFlag,
) -> Result<DepthStepVerdict> {
    let (coinv, torsion) = gysin_split(module, flag)?;
    if !torsion.is_zero() {
        return Ok(DepthStepVerdict::HypothesisNotMet);
    }
    let ambient = depth_via_ab(module)?.depth;
    let coinvariants = depth_via_ab(&coinv)?.depth;
    if ambient == coinvariants.plus(1) {
        Ok(DepthStepVerdict::Holds {
            ambient,
            coinvariants,
        })
    } else {
        Ok(DepthStepVerdict::Fails {
            ambient,
            coinvariants,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionShiftReport {
    pub depth_source: Depth,
    pub depth_extended: Depth,
    pub holds: bool,
}

/// Extension of scalars from the rank-one quotient ring to the full ring
/// shifts depth by the subgroup rank: both sides computed by the Tor route.
pub fn extension_depth_shift(
    source: &GradedPresentation,
    ambient_rank: u32,
    cutoff: u32,
) -> Result<ExtensionShiftReport> {
    let hv = cohomology_ring(ambient_rank);
    let qstar = AlgebraMap::inclusion(source.ring(), &hv)?;
    let extended_pres = base_change(source, &qstar)?;
    let source_module = expand(source, cutoff)?;
    let extended = expand(&extended_pres, cutoff)?;
    let depth_source = depth_via_ab(&source_module)?.depth;
    let depth_extended = depth_via_ab(&extended)?.depth;
    let holds = depth_extended == depth_source.plus(ambient_rank - 1);
    Ok(ExtensionShiftReport {
        depth_source,
        depth_extended,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::{parse_polynomial, Ring};
    use crate::grmodule::direct_sum;

    fn p(ring: &Ring, s: &str) -> Polynomial {
        parse_polynomial(ring, s).unwrap()
    }

    fn free_rank_one(n: u32, cutoff: u32) -> DegreewiseModule {
        let ring = cohomology_ring(n);
        expand(
            &GradedPresentation::free(&ring, vec![("g".into(), 0)]).unwrap(),
            cutoff,
        )
        .unwrap()
    }

    fn cyclic(n: u32, rels: &[&str], cutoff: u32) -> DegreewiseModule {
        let ring = cohomology_ring(n);
        let elements: Vec<Polynomial> = rels.iter().map(|s| p(&ring, s)).collect();
        expand(
            &GradedPresentation::cyclic_quotient(&ring, &elements).unwrap(),
            cutoff,
        )
        .unwrap()
    }

    fn trivial_sum(n: u32, count: usize, cutoff: u32) -> DegreewiseModule {
        let ring = cohomology_ring(n);
        let gens: Vec<(String, u32)> = (0..count).map(|i| (format!("g{i}"), 0)).collect();
        let mut relations = Vec::new();
        for i in 0..count {
            for j in 0..n as usize {
                let mut row = vec![Polynomial::zero(&ring); count];
                row[i] = Polynomial::var(&ring, j);
                relations.push(row);
            }
        }
        expand(
            &GradedPresentation::new(&ring, gens, relations).unwrap(),
            cutoff,
        )
        .unwrap()
    }

    #[test]
    fn split_of_free_module() {
        let flag = SubgroupFlag::standard(2, 1).unwrap();
        let m = free_rank_one(2, 10);
        let (coinv, torsion) = gysin_split(&m, &flag).unwrap();
        assert_eq!(coinv.ring().num_gens(), 1);
        assert_eq!(coinv.dims(), &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert!(torsion.is_zero());
    }

    #[test]
    fn split_of_truncated_module() {
        let flag = SubgroupFlag::standard(2, 1).unwrap();
        let m = cyclic(2, &["t2^2"], 10);
        let (coinv, torsion) = gysin_split(&m, &flag).unwrap();
        assert_eq!(coinv.dims()[..5], [1, 1, 1, 1, 1]);
        assert_eq!(torsion.dims()[..5], [0, 1, 1, 1, 1]);
    }

    #[test]
    fn split_where_variable_acts_as_zero() {
        let flag = SubgroupFlag::standard(2, 1).unwrap();
        // F2[t1] with t2 acting as zero
        let m = cyclic(2, &["t2"], 10);
        let (coinv, torsion) = gysin_split(&m, &flag).unwrap();
        assert_eq!(coinv.dims(), m.dims());
        assert_eq!(torsion.dims(), &m.dims()[..torsion.dims().len()]);
    }

    #[test]
    fn consistency_examples() {
        let flag = SubgroupFlag::standard(2, 1).unwrap();

        // trivial action on a point
        let triple =
            GysinTriple::new(free_rank_one(2, 10), flag.clone(), free_rank_one(1, 10)).unwrap();
        assert!(gysin_consistency(&triple).ok);

        // free action: one orbit upstairs, two downstairs
        let triple =
            GysinTriple::new(trivial_sum(2, 1, 10), flag.clone(), trivial_sum(1, 2, 10)).unwrap();
        assert!(gysin_consistency(&triple).ok);

        // two fixed points: M_V = F2[t1] with t2 acting 0, M_W = H*W (+) H*W
        let two_w = {
            let ring = cohomology_ring(1);
            expand(
                &GradedPresentation::free(&ring, vec![("a".into(), 0), ("b".into(), 0)]).unwrap(),
                10,
            )
            .unwrap()
        };
        let triple = GysinTriple::new(cyclic(2, &["t2"], 10), flag.clone(), two_w).unwrap();
        assert!(gysin_consistency(&triple).ok);

        // a wrong pair is reported with its first failing degree
        let triple = GysinTriple::new(cyclic(2, &["t2"], 10), flag, free_rank_one(1, 10)).unwrap();
        let report = gysin_consistency(&triple);
        assert!(!report.ok);
        assert_eq!(report.first_failure, Some(0));
    }

    #[test]
    fn depth_biconditional_examples() {
        let flag = SubgroupFlag::standard(2, 1).unwrap();

        // trivial pair: both sides of the biconditional true for k = 1
        let triple =
            GysinTriple::new(free_rank_one(2, 12), flag.clone(), free_rank_one(1, 12)).unwrap();
        assert!(split_depth_biconditional(&triple, 1).unwrap());

        // free pair: both sides false for k = 1
        let triple =
            GysinTriple::new(trivial_sum(2, 1, 12), flag.clone(), trivial_sum(1, 2, 12)).unwrap();
        assert!(split_depth_biconditional(&triple, 1).unwrap());

        // two-point pair at k = 1: equality case
        let two_w = {
            let ring = cohomology_ring(1);
            expand(
                &GradedPresentation::free(&ring, vec![("a".into(), 0), ("b".into(), 0)]).unwrap(),
                12,
            )
            .unwrap()
        };
        let triple = GysinTriple::new(cyclic(2, &["t2"], 12), flag, two_w).unwrap();
        assert!(split_depth_biconditional(&triple, 1).unwrap());
    }

    #[test]
    fn rank_one_tor_examples() {
        let flag = SubgroupFlag::standard(2, 1).unwrap();

        let report = rank_one_tor_split(&free_rank_one(2, 10), &flag).unwrap();
        assert!(report.dims_match);
        assert!(report.vanishing_above_one);
        assert!(report.q1.is_zero());

        let report = rank_one_tor_split(&cyclic(2, &["t2^2"], 10), &flag).unwrap();
        assert!(report.dims_match);
        assert_eq!(report.q1.dims()[..5], [0, 0, 1, 1, 1]);

        // t2 acting as zero: q1 is the whole module suspended
        let m = cyclic(2, &["t2"], 10);
        let report = rank_one_tor_split(&m, &flag).unwrap();
        assert!(report.dims_match);
        for d in 0..=9u32 {
            assert_eq!(report.q1.dim(d + 1), m.dim(d));
        }
    }

    #[test]
    fn sequence_s_examples() {
        let flag = SubgroupFlag::standard(2, 1).unwrap();

        // free module, k = 1: torsion vanishes and rows collapse
        let report = sequence_s_check(&free_rank_one(2, 14), &flag, 1).unwrap();
        assert!(report.euler_ok);
        assert_eq!(report.vanishing, VanishingVerdict::Holds);

        // the trivial module
        let report = sequence_s_check(&trivial_sum(2, 1, 14), &flag, 1).unwrap();
        assert!(report.euler_ok);

        // torsion-free with a relation
        let report = sequence_s_check(&cyclic(2, &["t1"], 14), &flag, 1).unwrap();
        assert!(report.euler_ok);
    }

    #[test]
    fn depth_inequality_examples() {
        // trivial action: n-1 <= n
        assert!(subgroup_depth_inequality(&free_rank_one(2, 12), &free_rank_one(1, 12)).unwrap());
        // free action: 0 <= 0
        assert!(subgroup_depth_inequality(&trivial_sum(2, 1, 12), &trivial_sum(1, 2, 12)).unwrap());
        // equality case: two points
        let two_w = {
            let ring = cohomology_ring(1);
            expand(
                &GradedPresentation::free(&ring, vec![("a".into(), 0), ("b".into(), 0)]).unwrap(),
                12,
            )
            .unwrap()
        };
        assert!(subgroup_depth_inequality(&cyclic(2, &["t2"], 12), &two_w).unwrap());
    }

    #[test]
    fn torsion_free_step_examples() {
        let flag = SubgroupFlag::standard(2, 1).unwrap();

        match torsion_free_depth_step(&free_rank_one(2, 12), &flag).unwrap() {
            DepthStepVerdict::Holds {
                ambient,
                coinvariants,
            } => {
                assert_eq!(ambient, Depth::Finite(2));
                assert_eq!(coinvariants, Depth::Finite(1));
            }
            other => panic!("expected equality, got {other:?}"),
        }

        // H*V/(t1) with the flag killing t2: torsion-free, 1 = 0 + 1
        match torsion_free_depth_step(&cyclic(2, &["t1"], 12), &flag).unwrap() {
            DepthStepVerdict::Holds {
                ambient,
                coinvariants,
            } => {
                assert_eq!(ambient, Depth::Finite(1));
                assert_eq!(coinvariants, Depth::Finite(0));
            }
            other => panic!("expected equality, got {other:?}"),
        }

        // the trivial module has torsion
        assert_eq!(
            torsion_free_depth_step(&trivial_sum(2, 1, 12), &flag).unwrap(),
            DepthStepVerdict::HypothesisNotMet
        );
    }

    #[test]
    fn extension_shift_examples() {
        let tn = crate::f2poly::RingDescriptor::new(vec![("t2".into(), 1)]).unwrap();

        // free source: 2 = 1 + 1
        let free = GradedPresentation::free(&tn, vec![("g".into(), 0)]).unwrap();
        let report = extension_depth_shift(&free, 2, 12).unwrap();
        assert!(report.holds);
        assert_eq!(report.depth_source, Depth::Finite(1));
        assert_eq!(report.depth_extended, Depth::Finite(2));

        // truncated source: 1 = 0 + 1
        let trunc = GradedPresentation::cyclic_quotient(&tn, &[p(&tn, "t2^2")]).unwrap();
        let report = extension_depth_shift(&trunc, 2, 12).unwrap();
        assert!(report.holds);

        // a direct sum mixing depths: the minimum rules both sides
        let mixed = GradedPresentation::new(
            &tn,
            vec![("a".into(), 0), ("b".into(), 0)],
            vec![vec![Polynomial::zero(&tn), p(&tn, "t2")]],
        )
        .unwrap();
        let report = extension_depth_shift(&mixed, 2, 12).unwrap();
        assert_eq!(report.depth_source, Depth::Finite(0));
        assert_eq!(report.depth_extended, Depth::Finite(1));
        assert!(report.holds);
    }

    #[test]
    fn non_standard_flag_normalization() {
        // flag whose basis change swaps t1 and t2: killing "t2" after the
        // change means killing t1 before it
        let mut swap = crate::linalg::BitMatrix::zero(2, 2);
        swap.set(0, 1, true);
        swap.set(1, 0, true);
        let flag = SubgroupFlag::new(2, swap, 1).unwrap();
        let m = cyclic(2, &["t1"], 10); // t1 acts as zero
        let (coinv, torsion) = gysin_split(&m, &flag).unwrap();
        // after normalization the killed variable acts as zero on all of M
        assert_eq!(coinv.dims(), m.dims());
        assert!(!torsion.is_zero());
        for d in 0..torsion.dims().len() {
            assert_eq!(torsion.dims()[d], m.dims()[d]);
        }
    }

    #[test]
    fn sum_with_suspension_splits() {
        let flag = SubgroupFlag::standard(3, 1).unwrap();
        let a = free_rank_one(3, 10);
        let b = suspension(&cyclic(3, &["t3"], 9), 1);
        let m = direct_sum(&a, &b).unwrap();
        let (coinv, torsion) = gysin_split(&m, &flag).unwrap();
        // rank-nullity of the killed variable: the rank out of degree d-1 is
        // dim M_{d-1} - dim torsion_{d-1}, and the coinvariants absorb the rest
        assert_eq!(coinv.dim(0), m.dim(0));
        for d in 1..=torsion.cutoff() + 1 {
            let rank_in = m.dim(d - 1) - torsion.dim(d - 1);
            assert_eq!(coinv.dim(d), m.dim(d) - rank_in, "degree {d}");
        }
        // coinvariants of the sum: F2[t1,t2] (+) suspended F2[t1,t2]
        assert_eq!(coinv.dim(0), 1);
        assert_eq!(coinv.dim(1), 3);
    }
}
