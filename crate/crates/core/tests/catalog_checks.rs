//! Cross-module checks on the builtin catalog: expected depth ladders,
//! the short-exact-sequence depth bound on real split triples, and the
//! bounded-depth monotonicity property.

use f2mod::catalog::builtin_entries_for_ranks;
use f2mod::dickson::SubgroupFlag;
use f2mod::grmodule::expand;
use f2mod::gysin::{gysin_consistency, GysinTriple};
use f2mod::homalg::{depth_via_ab, ses_depth_bound, Depth};

#[test]
fn expected_depths_confirmed_at_rank_three() {
    for entry in builtin_entries_for_ranks(&[3]).unwrap() {
        for (j, pres) in entry.levels.iter().enumerate() {
            let module = expand(pres, pres.suggested_cutoff().max(16)).unwrap();
            let got = depth_via_ab(&module).unwrap().depth;
            assert_eq!(got, entry.expected_depths[j], "{} level {j}", entry.name);
        }
    }
}

#[test]
fn ses_depth_bound_on_catalog_triples() {
    // the subgroup module sits in a short exact sequence between the
    // coinvariants and the torsion, so its depth is at least their minimum
    for entry in builtin_entries_for_ranks(&[2, 3]).unwrap() {
        for j in 0..entry.levels.len() - 1 {
            let rank = entry.rank - j as u32;
            if rank < 1 {
                continue;
            }
            let flag = SubgroupFlag::standard(rank, 1).unwrap();
            let m_v = expand(&entry.levels[j], 14).unwrap();
            let m_w = expand(&entry.levels[j + 1], 14).unwrap();
            let triple = GysinTriple::new(m_v, flag, m_w).unwrap();
            assert!(gysin_consistency(&triple).ok, "{} step {j}", entry.name);
            let left = depth_via_ab(&triple.coinv).unwrap().depth;
            let middle = depth_via_ab(&triple.m_w).unwrap().depth;
            let right = depth_via_ab(&triple.torsion).unwrap().depth;
            assert!(
                ses_depth_bound(left, middle, right),
                "{} step {j}: {middle} < min({left}, {right})",
                entry.name
            );
        }
    }
}

#[test]
fn bounded_depth_descends_to_subgroups() {
    // if the top depth is at most k, every level's depth is at most k
    for entry in builtin_entries_for_ranks(&[2, 3]).unwrap() {
        let depths: Vec<Depth> = entry
            .levels
            .iter()
            .map(|p| {
                depth_via_ab(&expand(p, p.suggested_cutoff().max(16)).unwrap())
                    .unwrap()
                    .depth
            })
            .collect();
        for k in 0..=entry.rank {
            if depths[0] <= Depth::Finite(k) {
                for (j, d) in depths.iter().enumerate() {
                    assert!(
                        *d <= Depth::Finite(k),
                        "{}: level {j} exceeds the bound {k}",
                        entry.name
                    );
                }
            }
        }
    }
}
