//! Curated module families and seeded random presentations.
//!
//! Every builtin entry models a concrete action on a finite complex: a
//! point with the trivial action, a circle with the trivial action, the
//! group acting on itself, the two-point quotient, spheres of real
//! representations, and disjoint unions. Each entry carries a tower of
//! presentations, one per rank of the standard flag of subgroups, so
//! corank-greater-than-one checks walk the tower one step at a time. The
//! subgroup-side presentations are data, hand-built from the elementary
//! orbit structure of the named action and validated mechanically by the
//! dimension consistency check; they are never derived from the ambient
//! side.
//!
//! Random presentations exist for the ring-theoretic identity suites only
//! (depth-versus-projective-dimension bookkeeping, method agreement, Euler
//! characteristics); the named entries alone feed the statements whose
//! hypotheses a random module need not satisfy.

use crate::dickson::SubgroupFlag;
use crate::f2poly::{cohomology_ring, monomial_basis, Polynomial, RingDescriptor};
use crate::grmodule::GradedPresentation;
use crate::homalg::Depth;
use crate::Result;

/// Verification suite names; also the CLI vocabulary for `verify --suite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Ab,
    Methods,
    Euler,
    Thm31,
    Prop241,
    Lemma3122,
    SeqS,
    Prop2311,
    Lemma2322,
    Structure,
    Dickson,
}

impl Suite {
    pub fn all() -> &'static [Suite] {
        &[
            Suite::Ab,
            Suite::Methods,
            Suite::Euler,
            Suite::Thm31,
            Suite::Prop241,
            Suite::Lemma3122,
            Suite::SeqS,
            Suite::Prop2311,
            Suite::Lemma2322,
            Suite::Structure,
            Suite::Dickson,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ab => "ab",
            Suite::Methods => "methods",
            Suite::Euler => "euler",
            Suite::Thm31 => "thm31",
            Suite::Prop241 => "prop241",
            Suite::Lemma3122 => "lemma3122",
            Suite::SeqS => "seqS",
            Suite::Prop2311 => "prop2311",
            Suite::Lemma2322 => "lemma2322",
            Suite::Structure => "structure",
            Suite::Dickson => "dickson",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::all().iter().copied().find(|x| x.name() == s)
    }
}

/// A named module pair (with its full subgroup tower) and its expected
/// invariants.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub rank: u32,
    pub flag: SubgroupFlag,
    /// `levels[j]` presents the module over the rank `rank - j` ring; the
    /// tower descends to rank 0.
    pub levels: Vec<GradedPresentation>,
    /// Expected depth at each level, confirmed mechanically by the suites.
    pub expected_depths: Vec<Depth>,
    /// For extension-of-scalars entries: the module over the rank-one
    /// quotient ring that induces the top level.
    pub scalar_source: Option<GradedPresentation>,
    pub tags: Vec<Suite>,
}

impl CatalogEntry {
    pub fn presentation_v(&self) -> &GradedPresentation {
        &self.levels[0]
    }

    pub fn presentation_w(&self) -> &GradedPresentation {
        &self.levels[1]
    }

    pub fn has_tag(&self, suite: Suite) -> bool {
        self.tags.contains(&suite)
    }
}

fn free_module(rank: u32, gens: Vec<(String, u32)>) -> GradedPresentation {
    let ring = cohomology_ring(rank);
    GradedPresentation::free(&ring, gens).expect("valid free presentation")
}

/// `count` generators in the listed degrees, each killed by every variable.
fn trivial_module(rank: u32, degrees: &[u32]) -> GradedPresentation {
    let ring = cohomology_ring(rank);
    let gens: Vec<(String, u32)> = degrees
        .iter()
        .enumerate()
        .map(|(i, d)| (format!("g{i}"), *d))
        .collect();
    let mut relations = Vec::new();
    for i in 0..gens.len() {
        for j in 0..rank as usize {
            let mut row = vec![Polynomial::zero(&ring); gens.len()];
            row[i] = Polynomial::var(&ring, j);
            relations.push(row);
        }
    }
    GradedPresentation::new(&ring, gens, relations).expect("valid trivial presentation")
}

fn cyclic_with_relation(rank: u32, relation: Polynomial) -> GradedPresentation {
    let ring = cohomology_ring(rank);
    GradedPresentation::cyclic_quotient(&ring, &[relation]).expect("valid cyclic presentation")
}

/// Presentation of the rank-one quotient ring `F2[t_n]` modulo `t_n^m`
/// (`m = 0` meaning no relation).
fn quotient_ring_module(n: u32, power: u32) -> GradedPresentation {
    let ring = RingDescriptor::new(vec![(format!("t{n}"), 1)]).expect("valid ring");
    if power == 0 {
        GradedPresentation::free(&ring, vec![("g".into(), 0)]).expect("valid")
    } else {
        let tn = Polynomial::var(&ring, 0).pow(power);
        GradedPresentation::cyclic_quotient(&ring, &[tn]).expect("valid")
    }
}

const COMMON_TAGS: &[Suite] = &[
    Suite::Ab,
    Suite::Methods,
    Suite::Euler,
    Suite::Thm31,
    Suite::Prop241,
    Suite::Lemma3122,
    Suite::SeqS,
    Suite::Prop2311,
    Suite::Structure,
];

/// The builtin families at a given ambient rank (2 through 4).
pub fn builtin_entries(n: u32) -> Result<Vec<CatalogEntry>> {
    if !(2..=4).contains(&n) {
        return Err(crate::error::Error::Unsupported(format!(
            "builtin catalog covers ranks 2..=4, got {n}"
        )));
    }
    let flag = SubgroupFlag::standard(n, 1)?;
    let mut entries = Vec::new();

    // (a) trivial action on a point: the free rank-one module at each level
    entries.push(CatalogEntry {
        name: format!("point_n{n}"),
        rank: n,
        flag: flag.clone(),
        levels: (0..=n)
            .rev()
            .map(|m| free_module(m, vec![("g".into(), 0)]))
            .collect(),
        expected_depths: (0..=n).rev().map(Depth::Finite).collect(),
        scalar_source: None,
        tags: COMMON_TAGS.to_vec(),
    });

    // (b) trivial action on a circle: a free generator in each of degrees 0, 1
    entries.push(CatalogEntry {
        name: format!("circle_trivial_n{n}"),
        rank: n,
        flag: flag.clone(),
        levels: (0..=n)
            .rev()
            .map(|m| free_module(m, vec![("e0".into(), 0), ("e1".into(), 1)]))
            .collect(),
        expected_depths: (0..=n).rev().map(Depth::Finite).collect(),
        scalar_source: None,
        tags: COMMON_TAGS.to_vec(),
    });

    // (c) the group acting on itself: one free orbit, doubling at each step
    entries.push(CatalogEntry {
        name: format!("free_n{n}"),
        rank: n,
        flag: flag.clone(),
        levels: (0..=n)
            .map(|j| trivial_module(n - j, &vec![0; 1 << j]))
            .collect(),
        expected_depths: vec![Depth::Finite(0); n as usize + 1],
        scalar_source: None,
        tags: COMMON_TAGS.to_vec(),
    });

    // (d) the two-point quotient: the subgroup ring with the killed variable
    // acting as zero, then two fixed points at every lower level
    {
        let mut levels = vec![{
            let ring = cohomology_ring(n);
            cyclic_with_relation(n, Polynomial::var(&ring, n as usize - 1))
        }];
        for j in 1..=n {
            levels.push(free_module(n - j, vec![("a".into(), 0), ("b".into(), 0)]));
        }
        let mut depths = vec![Depth::Finite(n - 1)];
        depths.extend((0..=n - 1).rev().map(Depth::Finite));
        entries.push(CatalogEntry {
            name: format!("two_points_n{n}"),
            rank: n,
            flag: flag.clone(),
            levels,
            expected_depths: depths,
            scalar_source: None,
            tags: COMMON_TAGS.to_vec(),
        });
    }

    // (e) the sphere of a real representation with Euler class t1: the
    // hypersurface cut by t1 while t1 survives, two free points at rank 0
    {
        let mut levels = Vec::new();
        let mut depths = Vec::new();
        for j in 0..n {
            let m = n - j;
            let ring = cohomology_ring(m);
            levels.push(cyclic_with_relation(m, Polynomial::var(&ring, 0)));
            depths.push(Depth::Finite(m - 1));
        }
        levels.push(free_module(0, vec![("a".into(), 0), ("b".into(), 0)]));
        depths.push(Depth::Finite(0));
        entries.push(CatalogEntry {
            name: format!("sphere_euler_t1_n{n}"),
            rank: n,
            flag: flag.clone(),
            levels,
            expected_depths: depths,
            scalar_source: None,
            tags: COMMON_TAGS.to_vec(),
        });
    }

    // (f) disjoint union of a point with a free orbit
    {
        let mut levels = Vec::new();
        for j in 0..=n {
            let m = n - j;
            let ring = cohomology_ring(m);
            let orbit_points = 1usize << j;
            let mut gens = vec![("p".to_string(), 0u32)];
            gens.extend((0..orbit_points).map(|i| (format!("q{i}"), 0)));
            let mut relations = Vec::new();
            for i in 0..orbit_points {
                for v in 0..m as usize {
                    let mut row = vec![Polynomial::zero(&ring); gens.len()];
                    row[i + 1] = Polynomial::var(&ring, v);
                    relations.push(row);
                }
            }
            levels
                .push(GradedPresentation::new(&ring, gens, relations).expect("valid presentation"));
        }
        entries.push(CatalogEntry {
            name: format!("disjoint_union_n{n}"),
            rank: n,
            flag: flag.clone(),
            levels,
            expected_depths: vec![Depth::Finite(0); n as usize + 1],
            scalar_source: None,
            tags: COMMON_TAGS.to_vec(),
        });
    }

    // (g) extension-of-scalars family: spheres of multiples of the
    // representation whose Euler class is t_n (power 0 is the free source)
    for power in 0..=3u32 {
        let mut tags = COMMON_TAGS.to_vec();
        tags.push(Suite::Lemma2322);
        let (levels, depths) = if power == 0 {
            // the ambient ring itself
            let levels: Vec<GradedPresentation> = (0..=n)
                .rev()
                .map(|m| free_module(m, vec![("g".into(), 0)]))
                .collect();
            let depths = (0..=n).rev().map(Depth::Finite).collect();
            (levels, depths)
        } else {
            let ring = cohomology_ring(n);
            let tn = Polynomial::var(&ring, n as usize - 1).pow(power);
            let mut levels = vec![cyclic_with_relation(n, tn)];
            let mut depths = vec![Depth::Finite(n - 1)];
            for j in 1..=n {
                let m = n - j;
                levels.push(free_module(
                    m,
                    vec![("e0".into(), 0), ("e1".into(), power - 1)],
                ));
                depths.push(Depth::Finite(m));
            }
            (levels, depths)
        };
        entries.push(CatalogEntry {
            name: format!("scalar_ext_m{power}_n{n}"),
            rank: n,
            flag: flag.clone(),
            levels,
            expected_depths: depths,
            scalar_source: Some(quotient_ring_module(n, power)),
            tags,
        });
    }

    Ok(entries)
}

/// All builtin entries for the listed ranks.
pub fn builtin_entries_for_ranks(ranks: &[u32]) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for &n in ranks {
        out.extend(builtin_entries(n)?);
    }
    Ok(out)
}

/// Look up an entry by name across the supported ranks.
pub fn find_entry(name: &str) -> Result<CatalogEntry> {
    for n in 2..=4 {
        for entry in builtin_entries(n)? {
            if entry.name == name {
                return Ok(entry);
            }
        }
    }
    Err(crate::error::Error::Unsupported(format!(
        "no catalog entry named {name}"
    )))
}

/// Deterministic generator state; the stream is fixed forever so fixture
/// files never rot.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }
}

/// Seeded pseudo-random homogeneous presentation over `F2[t1..tn]`.
pub fn random_presentation(
    seed: u64,
    n: u32,
    max_gens: u32,
    max_rels: u32,
    max_deg: u32,
) -> GradedPresentation {
    assert!(n >= 1 && max_gens >= 1 && max_deg >= 1);
    let ring = cohomology_ring(n);
    let mut rng = SplitMix64(seed.wrapping_mul(0x2545f4914f6cdd1d).wrapping_add(1));
    let gen_count = 1 + rng.below(max_gens as u64) as usize;
    let generators: Vec<(String, u32)> = (0..gen_count)
        .map(|i| (format!("g{i}"), rng.below(3) as u32))
        .collect();
    let rel_count = rng.below(max_rels as u64 + 1) as usize;
    let mut relations = Vec::new();
    for _ in 0..rel_count {
        let rdeg = 1 + rng.below(max_deg as u64) as u32;
        let mut row = Vec::with_capacity(gen_count);
        let mut nonzero = false;
        for (_, gdeg) in &generators {
            if rdeg < *gdeg {
                row.push(Polynomial::zero(&ring));
                continue;
            }
            let cdeg = rdeg - gdeg;
            let basis = monomial_basis(&ring, cdeg);
            let picked: Vec<_> = basis.into_iter().filter(|_| rng.next() & 1 == 1).collect();
            if !picked.is_empty() {
                nonzero = true;
            }
            row.push(
                Polynomial::from_monomials(&ring, picked).expect("homogeneous by construction"),
            );
        }
        if nonzero {
            relations.push(row);
        }
    }
    GradedPresentation::new(&ring, generators, relations).expect("generated rows are homogeneous")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmodule::{expand, hilbert_function};
    use crate::gysin::{gysin_consistency, GysinTriple};
    use crate::homalg::depth_via_ab;

    #[test]
    fn builtin_families_exist() {
        let entries = builtin_entries(2).unwrap();
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        assert!(names.contains(&"point_n2"));
        assert!(names.contains(&"circle_trivial_n2"));
        assert!(names.contains(&"free_n2"));
        assert!(names.contains(&"two_points_n2"));
        assert!(names.contains(&"sphere_euler_t1_n2"));
        assert!(names.contains(&"disjoint_union_n2"));
        assert!(names.contains(&"scalar_ext_m0_n2"));
        assert!(names.contains(&"scalar_ext_m3_n2"));
        assert!(builtin_entries(5).is_err());
        assert!(builtin_entries(1).is_err());
    }

    #[test]
    fn towers_have_full_depth_ladders() {
        for entry in builtin_entries(3).unwrap() {
            assert_eq!(entry.levels.len(), 4, "{}", entry.name);
            assert_eq!(entry.expected_depths.len(), 4, "{}", entry.name);
            for (j, level) in entry.levels.iter().enumerate() {
                assert_eq!(level.ring().num_gens(), 3 - j, "{} level {j}", entry.name);
            }
        }
    }

    #[test]
    fn expected_depths_confirmed_at_rank_two() {
        for entry in builtin_entries(2).unwrap() {
            for (j, pres) in entry.levels.iter().enumerate() {
                let m = expand(pres, 12).unwrap();
                let got = depth_via_ab(&m).unwrap().depth;
                assert_eq!(got, entry.expected_depths[j], "{} level {j}", entry.name);
            }
        }
    }

    #[test]
    fn towers_are_gysin_consistent_at_rank_two() {
        for entry in builtin_entries(2).unwrap() {
            for j in 0..entry.levels.len() - 1 {
                let rank = entry.rank - j as u32;
                let flag = SubgroupFlag::standard(rank, 1).unwrap();
                let m_v = expand(&entry.levels[j], 12).unwrap();
                let m_w = expand(&entry.levels[j + 1], 12).unwrap();
                let triple = GysinTriple::new(m_v, flag, m_w).unwrap();
                let report = gysin_consistency(&triple);
                assert!(
                    report.ok,
                    "{} step {j}: first failure {:?}",
                    entry.name, report.first_failure
                );
            }
        }
    }

    #[test]
    fn entry_d_hilbert_shape() {
        let entry = find_entry("two_points_n2").unwrap();
        let m = expand(entry.presentation_v(), 6).unwrap();
        assert_eq!(hilbert_function(&m).values(), &[1, 1, 1, 1, 1, 1, 1]);
        let w = expand(entry.presentation_w(), 6).unwrap();
        assert_eq!(hilbert_function(&w).values(), &[2, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn random_presentations_are_deterministic() {
        let a = random_presentation(1, 2, 3, 3, 4);
        let b = random_presentation(1, 2, 3, 3, 4);
        assert_eq!(a.generators(), b.generators());
        assert_eq!(a.relations(), b.relations());
        let c = random_presentation(2, 2, 3, 3, 4);
        let differs = a.generators() != c.generators() || a.relations() != c.relations();
        assert!(differs, "different seeds should differ");
    }

    #[test]
    fn random_with_no_relations_is_free() {
        let pres = random_presentation(7, 2, 3, 0, 4);
        assert!(pres.relations().is_empty());
        let m = expand(&pres, 10).unwrap();
        assert_eq!(depth_via_ab(&m).unwrap().depth, Depth::Finite(2));
    }

    #[test]
    fn scalar_sources_match_powers() {
        let entry = find_entry("scalar_ext_m2_n2").unwrap();
        let src = entry.scalar_source.as_ref().unwrap();
        assert_eq!(src.ring().num_gens(), 1);
        assert_eq!(src.relations().len(), 1);
        let m = expand(src, 6).unwrap();
        assert_eq!(m.dims(), &[1, 1, 0, 0, 0, 0, 0]);
    }
}
