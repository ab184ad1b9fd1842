//! Standard quantales, quantaloids, categories and the named fixture
//! catalog used throughout the test suites and the CLI.

use std::sync::Arc;

use crate::category::{Preorder, QCategory};
use crate::error::ValidationError;
use crate::lattice::FiniteLattice;
use crate::presheaf::Presheaf;
use crate::quantaloid::{b_q, Quantale, Quantaloid};

/// Tensor choice for [`chain_quantale`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tensor {
    /// `a & b = min(a, b)`.
    Godel,
    /// `a & b = max(0, a + b - 1)` on the chain `0, 1/(n-1), ..., 1`.
    Lukasiewicz,
}

/// The two-element Boolean quantale: chain `0 < 1`, tensor = meet, unit 1.
pub fn boolean2() -> Quantale {
    chain_quantale(2, Tensor::Godel)
}

/// The `n`-element chain `0 < 1/(n-1) < ... < 1` with the chosen tensor and
/// unit 1. Element names are the decimal values.
pub fn chain_quantale(n: usize, tensor: Tensor) -> Quantale {
    assert!(n >= 2);
    let names: Vec<String> = (0..n).map(|k| format!("{}", k as f64 / (n - 1) as f64)).collect();
    let lattice = FiniteLattice::chain(names);
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match tensor {
                    Tensor::Godel => a.min(b),
                    Tensor::Lukasiewicz => (a + b).saturating_sub(n - 1),
                })
                .collect()
        })
        .collect();
    Quantale::validate(lattice, table, n - 1).expect("chain quantale is valid")
}

/// The powerset of a finite set, ordered by inclusion, with tensor given by
/// intersection and unit the whole set.
pub fn powerset_quantale(elements: &[&str]) -> Quantale {
    let n = elements.len();
    let size = 1usize << n;
    let name = |mask: usize| -> String {
        let members: Vec<&str> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| elements[i]).collect();
        format!("{{{}}}", members.join(","))
    };
    let names: Vec<String> = (0..size).map(name).collect();
    let mut pairs = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a & b == a {
                pairs.push((names[a].clone(), names[b].clone()));
            }
        }
    }
    let lattice = FiniteLattice::validate(names, &pairs).expect("powerset is a lattice");
    let table: Vec<Vec<usize>> = (0..size).map(|a| (0..size).map(|b| a & b).collect()).collect();
    Quantale::validate(lattice, table, size - 1).expect("powerset quantale is valid")
}

/// Encodes a poset as a category over the Boolean quantale:
/// `hom(a, b) = 1 ⟺ a <= b`.
pub fn poset_to_2cat(poset: &Preorder) -> Result<QCategory, ValidationError> {
    let two = Arc::new(boolean2().suspension().clone());
    let n = poset.len();
    let hom = (0..n)
        .map(|a| (0..n).map(|b| usize::from(poset.leq[a][b])).collect())
        .collect();
    QCategory::validate(two, poset.ids.clone(), vec![0; n], hom)
}

/// Reads the underlying preorder back off a category over the Boolean
/// quantale; inverse of [`poset_to_2cat`] on posets.
pub fn cat2_to_poset(cat: &QCategory) -> Result<Preorder, ValidationError> {
    let two = boolean2();
    if cat.ambient().as_ref() != two.suspension() {
        return Err(ValidationError::NotOverTwo);
    }
    Ok(cat.underlying_preorder())
}

fn poset(ids: &[&str], strict: &[(&str, &str)]) -> Preorder {
    let ids: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    let n = ids.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    let idx = |s: &str| ids.iter().position(|i| i == s).unwrap();
    for (a, b) in strict {
        leq[idx(a)][idx(b)] = true;
    }
    // transitive closure
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                leq[i][j] |= leq[i][k] && leq[k][j];
            }
        }
    }
    Preorder { ids, leq }
}

/// The three-element poset `V`: `x <= z`, `y <= z`, `x` and `y` unrelated.
pub fn fix_v() -> QCategory {
    poset_to_2cat(&poset(&["x", "y", "z"], &[("x", "z"), ("y", "z")])).expect("V is a poset")
}

/// The two-element antichain over the Boolean quantale.
pub fn antichain2() -> QCategory {
    poset_to_2cat(&poset(&["a", "b"], &[])).expect("an antichain is a poset")
}

/// The crisp two-element chain `a <= b` enriched in the Goedel
/// three-chain: `hom(a, b) = 1`, `hom(b, a) = 0`. Found by exhaustive
/// search as the smallest category that is continuous but not algebraic
/// for inhabited flat ideals: the ideal `(1, 0.5)` has sup `b`, which
/// forces the self-approximation of `b` down to `0.5`.
pub fn g3_chain2() -> QCategory {
    let g3 = chain_quantale(3, Tensor::Godel);
    let q = Arc::new(g3.suspension().clone());
    QCategory::validate(
        q,
        vec!["a".into(), "b".into()],
        vec![0, 0],
        vec![vec![2, 2], vec![0, 2]],
    )
    .expect("the crisp chain is a category")
}

/// `Q^A`: the category of all arrows out of `A`, typed by codomain, with
/// `hom(g, f) = f ↙ g`. Elements are named `arrow:codomain`.
pub fn q_power(q: Arc<Quantaloid>, a: usize) -> QCategory {
    let mut ids = Vec::new();
    let mut typ = Vec::new();
    let mut arrows = Vec::new();
    for c in 0..q.objects().len() {
        for f in 0..q.hom(a, c).len() {
            ids.push(format!("{}:{}", q.hom(a, c).id(f), q.objects()[c]));
            typ.push(c);
            arrows.push(f);
        }
    }
    let n = ids.len();
    let hom = (0..n)
        .map(|g| {
            (0..n)
                .map(|f| q.lres(a, typ[g], typ[f], arrows[f], arrows[g]))
                .collect()
        })
        .collect();
    QCategory::validate(q, ids, typ, hom).expect("Q^A is a category")
}

/// The presheaves `d(f)` on `Q^A`, one per element, with
/// `d(f)(g) = f ∘ (1_A ↙ g)`. Returned in the element order of `qa`,
/// which must be `q_power(q, a)`.
pub fn q_power_d(q: &Quantaloid, a: usize, qa: &QCategory) -> Vec<Presheaf> {
    // recover each element's arrow from the construction order: type groups
    // are contiguous and arrows appear in hom order within a group
    let arrow_of = |e: usize| -> usize { (0..e).filter(|&x| qa.typ(x) == qa.typ(e)).count() };
    (0..qa.len())
        .map(|fe| {
            let cf = qa.typ(fe);
            let f = arrow_of(fe);
            let values = (0..qa.len())
                .map(|ge| {
                    let cg = qa.typ(ge);
                    let g = arrow_of(ge);
                    let w = q.lres(a, cg, a, q.identity(a), g);
                    q.compose(cg, a, cf, f, w)
                })
                .collect();
            Presheaf::validate(qa, cf, values).expect("d(f) is a presheaf")
        })
        .collect()
}

/// A named fixture: either a category (with its ambient quantaloid), a
/// quantale, or a bare quantaloid.
#[derive(Debug, Clone)]
pub enum Fixture {
    Category(Arc<QCategory>),
    Quantale(Quantale),
    Quantaloid(Arc<Quantaloid>),
}

#[derive(Debug, Clone)]
pub struct FixtureEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub fixture: Fixture,
}

/// Builds the full fixture catalog; every entry is validated on
/// construction.
pub fn catalog() -> Vec<FixtureEntry> {
    let g3 = chain_quantale(3, Tensor::Godel);
    let bg3 = Arc::new(b_q(&g3).expect("G3 is divisible"));
    let bg3_one = bg3.object_index("1").unwrap();
    let two = Arc::new(boolean2().suspension().clone());
    vec![
        FixtureEntry {
            name: "fix-2",
            description: "two-element antichain over the Boolean quantale",
            fixture: Fixture::Category(Arc::new(antichain2())),
        },
        FixtureEntry {
            name: "fix-v",
            description: "poset V (x <= z, y <= z) over the Boolean quantale",
            fixture: Fixture::Category(Arc::new(fix_v())),
        },
        FixtureEntry {
            name: "fix-g3",
            description: "Goedel three-chain quantale (tensor = min)",
            fixture: Fixture::Quantale(g3.clone()),
        },
        FixtureEntry {
            name: "fix-luk3",
            description: "Lukasiewicz three-chain quantale",
            fixture: Fixture::Quantale(chain_quantale(3, Tensor::Lukasiewicz)),
        },
        FixtureEntry {
            name: "fix-pwr2",
            description: "powerset quantale of a two-element set",
            fixture: Fixture::Quantale(powerset_quantale(&["1", "2"])),
        },
        FixtureEntry {
            name: "fix-bg3",
            description: "divisibility quantaloid of the Goedel three-chain",
            fixture: Fixture::Quantaloid(bg3.clone()),
        },
        FixtureEntry {
            name: "fix-qa",
            description: "arrow category of the Boolean quantale at its object",
            fixture: Fixture::Category(Arc::new(q_power(two, 0))),
        },
        FixtureEntry {
            name: "fix-g3chain2",
            description: "crisp two-chain over the Goedel three-chain; continuous but not algebraic for inhabited flat ideals",
            fixture: Fixture::Category(Arc::new(g3_chain2())),
        },
        FixtureEntry {
            name: "fix-bg3cat",
            description: "arrow category of the Goedel divisibility quantaloid at 1",
            fixture: Fixture::Category(Arc::new(q_power(bg3, bg3_one))),
        },
    ]
}

/// Looks a fixture up by its CLI name.
pub fn fixture(name: &str) -> Option<Fixture> {
    catalog().into_iter().find(|e| e.name == name).map(|e| e.fixture)
}

/// The fixture as a category, if it is one.
pub fn fixture_category(name: &str) -> Option<Arc<QCategory>> {
    match fixture(name)? {
        Fixture::Category(c) => Some(c),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::check_adjoint;
    use crate::presheaf::{sup, PresheafCategory, DEFAULT_ENUM_CAP};
    use crate::quantaloid::SUSPENSION_OBJECT;

    #[test]
    fn boolean2_shape() {
        let q = boolean2();
        assert_eq!(q.lattice().ids(), &["0".to_string(), "1".to_string()]);
        assert_eq!(q.unit(), q.lattice().top());
        assert_eq!(q.suspension().objects(), &[SUSPENSION_OBJECT.to_string()]);
    }

    #[test]
    fn powerset_of_two_is_divisible() {
        let q = powerset_quantale(&["1", "2"]);
        assert_eq!(q.lattice().len(), 4);
        assert_eq!(q.lattice().id(q.lattice().top()), "{1,2}");
        assert!(q.check_divisible().is_ok());
    }

    #[test]
    fn poset_round_trip_on_v() {
        let v = fix_v();
        let p = cat2_to_poset(&v).unwrap();
        let back = poset_to_2cat(&p).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn cat_over_g3_is_not_over_two() {
        let g3 = Arc::new(chain_quantale(3, Tensor::Godel).suspension().clone());
        let unit = g3.identity(0);
        let cat = QCategory::validate(g3, vec!["a".into()], vec![0], vec![vec![unit]]).unwrap();
        assert_eq!(cat2_to_poset(&cat), Err(ValidationError::NotOverTwo));
    }

    #[test]
    fn q_power_of_boolean2_is_the_two_chain() {
        let two = Arc::new(boolean2().suspension().clone());
        let qa = q_power(two, 0);
        assert_eq!(qa.len(), 2);
        let pre = qa.underlying_preorder();
        assert!(pre.leq[0][1] && !pre.leq[1][0]);
    }

    /// Index of the arrow an element of `Q^A` stands for, recovered from
    /// the construction order (type groups are contiguous, arrows in hom
    /// order within a group).
    fn arrow_index(qa: &QCategory, e: usize) -> usize {
        (0..e).filter(|&x| qa.typ(x) == qa.typ(e)).count()
    }

    #[test]
    fn q_power_sup_is_evaluation_at_identity() {
        // sup(μ) = μ(1_A) on every enumerated presheaf of Q^A
        let cases: Vec<(Arc<Quantaloid>, usize)> = vec![
            (Arc::new(boolean2().suspension().clone()), 0),
            (Arc::new(b_q(&chain_quantale(3, Tensor::Godel)).unwrap()), 2),
        ];
        for (q, a) in cases {
            let qa = Arc::new(q_power(q.clone(), a));
            let ident = qa
                .index_of(&format!("{}:{}", q.hom(a, a).id(q.identity(a)), q.objects()[a]))
                .unwrap();
            let pa = PresheafCategory::build(qa.clone(), DEFAULT_ENUM_CAP).unwrap();
            for mu in pa.presheaves() {
                let s = sup(&qa, mu);
                assert!(s.exists());
                // the sup is the arrow μ(1_A): A -> tμ
                let target = (0..qa.len())
                    .find(|&e| qa.typ(e) == mu.typ && arrow_index(&qa, e) == mu.values[ident])
                    .unwrap();
                assert!(s.representatives.contains(&target));
            }
        }
    }

    #[test]
    fn d_is_left_adjoint_to_sup_over_boolean2() {
        // over 2, d(f)(g) = f for every g
        let two = Arc::new(boolean2().suspension().clone());
        let qa = Arc::new(q_power(two.clone(), 0));
        let d = q_power_d(&two, 0, &qa);
        for (f, df) in d.iter().enumerate() {
            for g in 0..qa.len() {
                assert_eq!(df.values[g], f);
            }
            let s = sup(&qa, df);
            assert_eq!(s.canonical, Some(f));
        }
    }

    #[test]
    fn d_simplifies_through_top_when_integral() {
        // B_G3 is integral (1_A is the top of hom(A, A)); d(f)(g) = f ∘ ⊤
        let bg3 = Arc::new(b_q(&chain_quantale(3, Tensor::Godel)).unwrap());
        let one = bg3.object_index("1").unwrap();
        assert_eq!(bg3.identity(one), bg3.hom(one, one).top());
        let qa = q_power(bg3.clone(), one);
        let d = q_power_d(&bg3, one, &qa);
        for fe in 0..qa.len() {
            let cf = qa.typ(fe);
            let f = arrow_index(&qa, fe);
            for ge in 0..qa.len() {
                let cg = qa.typ(ge);
                let top = bg3.hom(cg, one).top();
                assert_eq!(d[fe].values[ge], bg3.compose(cg, one, cf, f, top));
            }
        }
    }

    #[test]
    fn d_adjunction_on_bg3_via_graphs() {
        // PA(d(f), μ) = hom(sup domain): d ⊣ sup means
        // P(Q^A)(d(f), μ) = Q^A(f, sup μ) for all f and enumerated μ
        let bg3 = Arc::new(b_q(&chain_quantale(3, Tensor::Godel)).unwrap());
        let one = bg3.object_index("1").unwrap();
        let qa = Arc::new(q_power(bg3.clone(), one));
        let pa = PresheafCategory::build(qa.clone(), DEFAULT_ENUM_CAP).unwrap();
        let d = q_power_d(&bg3, one, &qa);
        for (fe, df) in d.iter().enumerate() {
            for mu in pa.presheaves() {
                let s = sup(&qa, mu);
                let sup_elem = s.canonical.expect("Q^A is totally cocomplete");
                let lhs = pa.hom_value(df, mu);
                let rhs = qa.hom(fe, sup_elem);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn d_as_functor_is_adjoint_to_sup_functor() {
        let two = Arc::new(boolean2().suspension().clone());
        let qa = Arc::new(q_power(two.clone(), 0));
        let pa = PresheafCategory::build(qa.clone(), DEFAULT_ENUM_CAP).unwrap();
        let d = q_power_d(&two, 0, &qa);
        let d_map: Vec<usize> = d.iter().map(|p| pa.index_of(p).unwrap()).collect();
        let d_fun = crate::category::QFunctor::validate(qa.clone(), pa.category().clone(), d_map).unwrap();
        let sup_map: Vec<usize> = pa
            .presheaves()
            .iter()
            .map(|mu| sup(&qa, mu).canonical.unwrap())
            .collect();
        let sup_fun = crate::category::QFunctor::validate(pa.category().clone(), qa.clone(), sup_map).unwrap();
        assert!(check_adjoint(&d_fun, &sup_fun).is_ok());
    }

    #[test]
    fn fixture_catalog_loads_and_resolves() {
        let cat = catalog();
        assert_eq!(cat.len(), 9);
        assert!(fixture_category("fix-v").is_some());
        assert!(fixture_category("fix-g3").is_none());
        assert!(fixture("nope").is_none());
    }
}
