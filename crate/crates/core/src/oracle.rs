//! A self-contained classical-poset oracle (ideals, way-below, continuity,
//! algebraicity) and cross-validation of the enriched pipeline against it.
//!
//! The oracle deliberately duplicates logic instead of calling into the
//! enriched engine: it is plain set-theoretic brute force over subsets, so
//! it can serve as independent ground truth.

use std::sync::Arc;

use crate::category::Preorder;
use crate::continuity::{check_algebraic, check_continuous, phi_s, way_below};
use crate::error::EngineError;
use crate::ideal::{phi_category, IdealClassId};
use crate::models::poset_to_2cat;
use crate::presheaf::PresheafCategory;

/// Classical domain-theoretic data for a finite poset, computed by brute
/// force over subsets.
#[derive(Debug, Clone)]
pub struct PosetOracle {
    pub poset: Preorder,
    /// Ideals (nonempty directed lower sets) as characteristic vectors.
    pub ideals: Vec<Vec<bool>>,
    /// `way_below[a][b]` holds iff every ideal with a sup above `b`
    /// contains `a`.
    pub way_below: Vec<Vec<bool>>,
    pub compacts: Vec<usize>,
    pub continuous: bool,
    pub algebraic: bool,
}

fn subset(mask: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask & (1 << i) != 0).collect()
}

/// Least upper bound of a subset, if any.
fn sup_of(p: &Preorder, members: &[bool]) -> Option<usize> {
    let n = p.len();
    let uppers: Vec<usize> = (0..n)
        .filter(|&u| (0..n).all(|s| !members[s] || p.leq[s][u]))
        .collect();
    uppers.iter().copied().find(|&u| uppers.iter().all(|&v| p.leq[u][v]))
}

fn is_ideal(p: &Preorder, members: &[bool]) -> bool {
    let n = p.len();
    let nonempty = members.iter().any(|&m| m);
    let lower = (0..n).all(|a| !(0..n).any(|b| members[b] && p.leq[a][b]) || members[a]);
    let directed = (0..n).all(|a| {
        (0..n).all(|b| {
            !(members[a] && members[b])
                || (0..n).any(|u| members[u] && p.leq[a][u] && p.leq[b][u])
        })
    });
    nonempty && lower && directed
}

/// Brute-force classical analysis of a finite poset.
pub fn poset_oracle(p: &Preorder) -> PosetOracle {
    let n = p.len();
    assert!(n <= 20, "oracle is exponential in the carrier");
    assert!(p.is_antisymmetric());
    let ideals: Vec<Vec<bool>> = (1u32..(1 << n))
        .map(|mask| subset(mask, n))
        .filter(|m| is_ideal(p, m))
        .collect();
    let way_below: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    ideals.iter().all(|i| match sup_of(p, i) {
                        Some(s) => !p.leq[b][s] || i[a],
                        None => true,
                    })
                })
                .collect()
        })
        .collect();
    let compacts: Vec<usize> = (0..n).filter(|&a| way_below[a][a]).collect();
    let continuous = (0..n).all(|b| {
        let down: Vec<bool> = (0..n).map(|a| way_below[a][b]).collect();
        is_ideal(p, &down) && sup_of(p, &down) == Some(b)
    });
    let algebraic = (0..n).all(|b| {
        let down: Vec<bool> = (0..n).map(|a| way_below[a][a] && p.leq[a][b]).collect();
        is_ideal(p, &down) && sup_of(p, &down) == Some(b)
    });
    PosetOracle { poset: p.clone(), ideals, way_below, compacts, continuous, algebraic }
}

/// Outcome of one oracle-versus-engine comparison.
#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub class: IdealClassId,
    pub mismatches: Vec<String>,
}

impl CrossValidation {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs the enriched pipeline on the poset viewed as a category over the
/// Boolean quantale and compares ideals, way-below, continuity and
/// algebraicity with the classical oracle.
pub fn cross_validate(p: &Preorder, class: IdealClassId, cap: usize) -> Result<CrossValidation, EngineError> {
    assert!(matches!(
        class,
        IdealClassId::InhabitedFlat | IdealClassId::InhabitedIrreducible | IdealClassId::ConicalIdeal
    ));
    let oracle = poset_oracle(p);
    let cat = Arc::new(poset_to_2cat(p).expect("oracle input is a poset"));
    let pa = Arc::new(PresheafCategory::build(cat.clone(), cap)?);
    let phi = phi_category(class, pa, cap)?;
    let mut mismatches = Vec::new();

    // ideal sets must coincide as characteristic vectors
    let mut engine_ideals: Vec<Vec<bool>> = phi
        .ideals()
        .map(|mu| mu.values.iter().map(|&v| v == 1).collect())
        .collect();
    let mut oracle_ideals = oracle.ideals.clone();
    engine_ideals.sort();
    oracle_ideals.sort();
    if engine_ideals != oracle_ideals {
        mismatches.push(format!(
            "ideal sets differ: engine {engine_ideals:?} vs oracle {oracle_ideals:?}"
        ));
    }

    let phis = phi_s(&phi)?;
    let wb = way_below(&phis)?;
    for a in 0..p.len() {
        for b in 0..p.len() {
            if (wb.at(a, b) == 1) != oracle.way_below[a][b] {
                mismatches.push(format!(
                    "way-below differs at ({}, {})",
                    p.ids[a], p.ids[b]
                ));
            }
        }
    }

    let cont = check_continuous(&phis, cap)?;
    if cont.verdict != oracle.continuous {
        mismatches.push(format!(
            "continuity differs: engine {} vs oracle {}",
            cont.verdict, oracle.continuous
        ));
    }
    let alg = check_algebraic(&phis, cap)?;
    if alg.verdict != oracle.algebraic {
        mismatches.push(format!(
            "algebraicity differs: engine {} vs oracle {}",
            alg.verdict, oracle.algebraic
        ));
    }
    if alg.compacts != oracle.compacts {
        mismatches.push(format!(
            "compacts differ: engine {:?} vs oracle {:?}",
            alg.compacts, oracle.compacts
        ));
    }
    Ok(CrossValidation { class, mismatches })
}

/// All posets on `n <= 4` elements, one representative per isomorphism
/// class, via canonical-form deduplication. Elements are named
/// `e0, e1, ...`.
pub fn all_posets_up_to_iso(n: usize) -> Vec<Preorder> {
    assert!(n <= 4, "exhaustive generation is limited to four elements");
    let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    if n == 0 {
        return vec![Preorder { ids, leq: vec![] }];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                leq[a][b] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k]))
        });
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
        if !transitive || !antisymmetric {
            continue;
        }
        let canon = perms
            .iter()
            .map(|perm| {
                let mut bits = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        bits.push(leq[perm[i]][perm[j]]);
                    }
                }
                bits
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(Preorder { ids: ids.clone(), leq });
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

fn named(ids: &[&str], strict: &[(&str, &str)]) -> Preorder {
    let ids: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    let n = ids.len();
    let idx = |s: &str| ids.iter().position(|i| i == s).unwrap();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    for (a, b) in strict {
        leq[idx(a)][idx(b)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                leq[i][j] |= leq[i][k] && leq[k][j];
            }
        }
    }
    Preorder { ids, leq }
}

/// Named posets beyond the exhaustive four-element corpus.
pub fn named_posets() -> Vec<(String, Preorder)> {
    vec![
        (
            "W".to_string(),
            named(
                &["a", "b", "c", "d", "e"],
                &[("a", "d"), ("b", "d"), ("b", "e"), ("c", "e")],
            ),
        ),
        (
            "M".to_string(),
            named(
                &["a", "b", "c", "d", "e"],
                &[("d", "a"), ("d", "b"), ("e", "b"), ("e", "c")],
            ),
        ),
        ("chain5".to_string(), named(
            &["0", "1", "2", "3", "4"],
            &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4")],
        )),
    ]
}
