//! Ideal classes of presheaves, the full subcategory ΦA of Φ-ideals,
//! Φ-distributors, Φ-cocompleteness and Φ-cocontinuity, and an
//! instance-level saturation harness.
//!
//! The harness is a refutation tool: it gathers evidence on concrete
//! finite instances and can only ever disprove saturation, not prove it.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::{all_functors, check_adjoint, QCategory, QFunctor};
use crate::distributor::QDistributor;
use crate::error::CapError;
use crate::presheaf::{
    enumerate_copresheaves, f_to, inhabited, inhabited_co, representable, sup, Copresheaf,
    Presheaf, PresheafCategory, SupResult,
};

/// Subset searches for directed generators give up beyond this many
/// dominated representables.
pub const DIRECTED_SEARCH_CAP: usize = 16;

/// Exhaustive functor-space checks switch to seeded sampling above this
/// many candidates.
pub const HARNESS_EXHAUSTIVE_CAP: usize = 5_000;

/// Sample size used when the harness falls back to sampling.
pub const HARNESS_SAMPLE_SIZE: usize = 1_000;

/// The built-in ideal classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealClassId {
    Representable,
    All,
    Irreducible,
    InhabitedIrreducible,
    Flat,
    InhabitedFlat,
    WeaklyFlat,
    Conical,
    ConicalIdeal,
}

impl IdealClassId {
    pub const ALL_CLASSES: [IdealClassId; 9] = [
        IdealClassId::Representable,
        IdealClassId::All,
        IdealClassId::Irreducible,
        IdealClassId::InhabitedIrreducible,
        IdealClassId::Flat,
        IdealClassId::InhabitedFlat,
        IdealClassId::WeaklyFlat,
        IdealClassId::Conical,
        IdealClassId::ConicalIdeal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdealClassId::Representable => "representable",
            IdealClassId::All => "all",
            IdealClassId::Irreducible => "irreducible",
            IdealClassId::InhabitedIrreducible => "inhabited-irreducible",
            IdealClassId::Flat => "flat",
            IdealClassId::InhabitedFlat => "inhabited-flat",
            IdealClassId::WeaklyFlat => "weakly-flat",
            IdealClassId::Conical => "conical",
            IdealClassId::ConicalIdeal => "conical-ideal",
        }
    }

    pub fn parse(name: &str) -> Option<IdealClassId> {
        Self::ALL_CLASSES.into_iter().find(|c| c.name() == name)
    }
}

/// `φ ∘ λ` for a presheaf `φ: A ⇸ {tφ}` and copresheaf `λ: {tλ} ⇸ A`:
/// a single arrow `tλ -> tφ`.
fn presheaf_after_copresheaf(base: &QCategory, phi: &Presheaf, lambda: &Copresheaf) -> usize {
    let q = base.ambient();
    q.hom(lambda.typ, phi.typ).join(
        (0..base.len()).map(|a| q.compose(lambda.typ, base.typ(a), phi.typ, phi.values[a], lambda.values[a])),
    )
}

/// Irreducibility: `PA(φ, φ₁∨φ₂) = PA(φ, φ₁) ∨ PA(φ, φ₂)` over all
/// enumerated same-type presheaf pairs. `Err` carries the first failing
/// pair.
pub fn is_irreducible(
    pa: &PresheafCategory,
    phi: &Presheaf,
) -> Result<(), (Presheaf, Presheaf)> {
    let base = pa.base();
    let q = base.ambient();
    for p1 in pa.presheaves() {
        for p2 in pa.presheaves() {
            if p1.typ != p2.typ {
                continue;
            }
            let lhs = pa.hom_value(phi, &p1.join(base, p2));
            let rhs = q.hom(phi.typ, p1.typ).join2(pa.hom_value(phi, p1), pa.hom_value(phi, p2));
            if lhs != rhs {
                return Err((p1.clone(), p2.clone()));
            }
        }
    }
    Ok(())
}

/// Flatness: `φ ∘ (λ₁∧λ₂) = (φ∘λ₁) ∧ (φ∘λ₂)` over all enumerated
/// same-type copresheaf pairs.
pub fn is_flat(base: &QCategory, phi: &Presheaf, cap: usize) -> Result<Result<(), (Copresheaf, Copresheaf)>, CapError> {
    flatness(base, phi, cap, false)
}

/// Weak flatness: the flatness equation restricted to inhabited
/// copresheaf pairs.
pub fn is_weakly_flat(
    base: &QCategory,
    phi: &Presheaf,
    cap: usize,
) -> Result<Result<(), (Copresheaf, Copresheaf)>, CapError> {
    flatness(base, phi, cap, true)
}

fn flatness(
    base: &QCategory,
    phi: &Presheaf,
    cap: usize,
    inhabited_only: bool,
) -> Result<Result<(), (Copresheaf, Copresheaf)>, CapError> {
    let q = base.ambient();
    for t in 0..q.objects().len() {
        let cos = enumerate_copresheaves(base, t, cap)?;
        for l1 in &cos {
            if inhabited_only && !inhabited_co(base, l1) {
                continue;
            }
            for l2 in &cos {
                if inhabited_only && !inhabited_co(base, l2) {
                    continue;
                }
                let lhs = presheaf_after_copresheaf(base, phi, &l1.meet(base, l2));
                let rhs = q.hom(t, phi.typ).meet2(
                    presheaf_after_copresheaf(base, phi, l1),
                    presheaf_after_copresheaf(base, phi, l2),
                );
                if lhs != rhs {
                    return Ok(Err((l1.clone(), l2.clone())));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Elements whose representable presheaf sits below `φ` (same type only).
fn dominated_representables(base: &QCategory, phi: &Presheaf) -> Vec<usize> {
    (0..base.len())
        .filter(|&a| base.typ(a) == phi.typ && representable(base, a).leq(base, phi))
        .collect()
}

/// Conicality: `φ` is the pointwise join of its dominated representables.
pub fn is_conical(base: &QCategory, phi: &Presheaf) -> bool {
    let q = base.ambient();
    let gens = dominated_representables(base, phi);
    (0..base.len()).all(|x| {
        let join = q
            .hom(base.typ(x), phi.typ)
            .join(gens.iter().map(|&a| base.hom(x, a)));
        join == phi.values[x]
    })
}

/// Conical-ideal test: brute-force search for a directed subset `S` of the
/// dominated representables with `⋁ Y(S) = φ`. Directedness is with
/// respect to the underlying preorder, with upper bounds inside `S`.
/// Returns the witness set on success.
pub fn is_conical_ideal(base: &QCategory, phi: &Presheaf) -> Result<Result<Vec<usize>, ()>, CapError> {
    let q = base.ambient();
    let gens = dominated_representables(base, phi);
    if gens.len() > DIRECTED_SEARCH_CAP {
        return Err(CapError::SubsetSearchCapExceeded(gens.len()));
    }
    for mask in 1u32..(1 << gens.len()) {
        let s: Vec<usize> = (0..gens.len()).filter(|&i| mask & (1 << i) != 0).map(|i| gens[i]).collect();
        let directed = s
            .iter()
            .all(|&a| s.iter().all(|&b| s.iter().any(|&u| base.underlying_leq(a, u) && base.underlying_leq(b, u))));
        if !directed {
            continue;
        }
        let generates = (0..base.len()).all(|x| {
            q.hom(base.typ(x), phi.typ).join(s.iter().map(|&a| base.hom(x, a))) == phi.values[x]
        });
        if generates {
            return Ok(Ok(s));
        }
    }
    Ok(Err(()))
}

/// Class membership for a single presheaf.
pub fn membership(
    class: IdealClassId,
    pa: &PresheafCategory,
    phi: &Presheaf,
    cap: usize,
) -> Result<bool, CapError> {
    let base = pa.base();
    Ok(match class {
        IdealClassId::All => true,
        IdealClassId::Representable => {
            // exact equality suffices: PA is skeletal
            (0..base.len()).any(|a| base.typ(a) == phi.typ && &representable(base, a) == phi)
        }
        IdealClassId::Irreducible => is_irreducible(pa, phi).is_ok(),
        IdealClassId::InhabitedIrreducible => inhabited(base, phi) && is_irreducible(pa, phi).is_ok(),
        IdealClassId::Flat => is_flat(base, phi, cap)?.is_ok(),
        IdealClassId::InhabitedFlat => inhabited(base, phi) && is_flat(base, phi, cap)?.is_ok(),
        IdealClassId::WeaklyFlat => is_weakly_flat(base, phi, cap)?.is_ok(),
        IdealClassId::Conical => is_conical(base, phi),
        IdealClassId::ConicalIdeal => is_conical_ideal(base, phi)?.is_ok(),
    })
}

/// The full subcategory ΦA of `PA` on the Φ-ideals, with the inclusion
/// into `PA` and the co-restricted Yoneda embedding.
#[derive(Debug, Clone)]
pub struct PhiCategory {
    class: IdealClassId,
    pa: Arc<PresheafCategory>,
    /// Indices into `pa` of the member presheaves, ascending.
    members: Vec<usize>,
    cat: Arc<QCategory>,
    inclusion: QFunctor,
    yoneda: QFunctor,
}

impl PhiCategory {
    pub fn class(&self) -> IdealClassId {
        self.class
    }

    pub fn base(&self) -> &Arc<QCategory> {
        self.pa.base()
    }

    pub fn presheaf_category(&self) -> &Arc<PresheafCategory> {
        &self.pa
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ideal(&self, i: usize) -> &Presheaf {
        self.pa.presheaf(self.members[i])
    }

    pub fn ideals(&self) -> impl Iterator<Item = &Presheaf> {
        self.members.iter().map(|&m| self.pa.presheaf(m))
    }

    pub fn index_of(&self, phi: &Presheaf) -> Option<usize> {
        let in_pa = self.pa.index_of(phi)?;
        self.members.binary_search(&in_pa).ok()
    }

    /// ΦA as a plain category (full subcategory of `PA`).
    pub fn category(&self) -> &Arc<QCategory> {
        &self.cat
    }

    /// The full inclusion `ΦA -> PA`.
    pub fn inclusion(&self) -> &QFunctor {
        &self.inclusion
    }

    /// The Yoneda embedding co-restricted to `ΦA`.
    pub fn yoneda_corestricted(&self) -> &QFunctor {
        &self.yoneda
    }
}

/// Builds ΦA by filtering the enumerated `PA` through the class predicate.
pub fn phi_category(
    class: IdealClassId,
    pa: Arc<PresheafCategory>,
    cap: usize,
) -> Result<PhiCategory, CapError> {
    let mut members = Vec::new();
    for (i, phi) in pa.presheaves().iter().enumerate() {
        if membership(class, &pa, phi, cap)? {
            members.push(i);
        }
    }
    let cat = Arc::new(pa.category().full_subcategory(&members));
    let inclusion = QFunctor::validate(cat.clone(), pa.category().clone(), members.clone())
        .expect("a full subcategory includes into its host");
    let y = pa.yoneda();
    let y_map: Vec<usize> = (0..pa.base().len())
        .map(|x| {
            members
                .binary_search(&y.apply(x))
                .expect("every representable is a member of every class")
        })
        .collect();
    let yoneda = QFunctor::validate(pa.base().clone(), cat.clone(), y_map)
        .expect("Yoneda co-restricts to ΦA");
    Ok(PhiCategory { class, pa, members, cat, inclusion, yoneda })
}

/// Column-wise Φ-ideal check on a distributor; `Err` carries the first
/// failing codomain element.
pub fn is_phi_distributor(
    class: IdealClassId,
    pa_dom: &PresheafCategory,
    phi: &QDistributor,
    cap: usize,
) -> Result<Result<(), usize>, CapError> {
    debug_assert_eq!(pa_dom.base(), phi.dom());
    for b in 0..phi.cod().len() {
        let column = Presheaf {
            typ: phi.cod().typ(b),
            values: (0..phi.dom().len()).map(|x| phi.at(x, b)).collect(),
        };
        if !membership(class, pa_dom, &column, cap)? {
            return Ok(Err(b));
        }
    }
    Ok(Ok(()))
}

/// Outcome of a Φ-cocompleteness check.
#[derive(Debug, Clone)]
pub struct CocompletenessReport {
    pub verdict: bool,
    /// ΦA indices of ideals with no supremum.
    pub missing: Vec<usize>,
    /// Per-ideal sup search results, in ΦA order.
    pub sup_table: Vec<SupResult>,
    /// When cocomplete: whether `sup ⊣ Yoneda` held.
    pub adjunction_ok: Option<bool>,
}

/// Checks that every Φ-ideal has a supremum; on success additionally
/// verifies that the canonical sup assignment is a functor left adjoint to
/// the co-restricted Yoneda embedding.
pub fn check_cocomplete(phi: &PhiCategory) -> CocompletenessReport {
    let base = phi.base();
    let sup_table: Vec<SupResult> = phi.ideals().map(|mu| sup(base, mu)).collect();
    let missing: Vec<usize> = sup_table
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.exists())
        .map(|(i, _)| i)
        .collect();
    let verdict = missing.is_empty();
    let adjunction_ok = verdict.then(|| {
        let map: Vec<usize> = sup_table.iter().map(|s| s.canonical.unwrap()).collect();
        match QFunctor::validate(phi.category().clone(), base.clone(), map) {
            Ok(sup_fun) => check_adjoint(&sup_fun, phi.yoneda_corestricted()).is_ok(),
            Err(_) => false,
        }
    });
    CocompletenessReport { verdict, missing, sup_table, adjunction_ok }
}

/// Φ-cocontinuity of `F: A -> B`: every existing sup of a Φ-ideal is
/// preserved, up to isomorphism, by pushing the ideal forward. `Err`
/// carries the first ideal whose sup is not preserved.
pub fn check_cocontinuous(
    phi_dom: &PhiCategory,
    f: &QFunctor,
) -> Result<(), Presheaf> {
    debug_assert_eq!(phi_dom.base(), f.dom());
    let b = f.cod();
    for mu in phi_dom.ideals() {
        let s = sup(f.dom(), mu);
        let Some(sa) = s.canonical else { continue };
        let pushed = f_to(f, mu);
        let target = sup(b, &pushed);
        let preserved = target
            .representatives
            .iter()
            .any(|&r| b.isomorphic(r, f.apply(sa)));
        if !preserved {
            return Err(mu.clone());
        }
    }
    Ok(())
}

/// All distributors `A ⇸ B` whose columns are Φ-ideals on `A`, built by
/// per-column choice and filtered through the bimodule condition.
pub fn enumerate_phi_distributors(
    phi_dom: &PhiCategory,
    cod: &Arc<QCategory>,
) -> Vec<QDistributor> {
    let dom = phi_dom.base().clone();
    let choices: Vec<Vec<usize>> = (0..cod.len())
        .map(|b| {
            (0..phi_dom.len())
                .filter(|&i| phi_dom.ideal(i).typ == cod.typ(b))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; cod.len()];
    fn rec(
        phi_dom: &PhiCategory,
        dom: &Arc<QCategory>,
        cod: &Arc<QCategory>,
        choices: &[Vec<usize>],
        pick: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<QDistributor>,
    ) {
        if depth == cod.len() {
            let matrix: Vec<Vec<usize>> = (0..dom.len())
                .map(|x| (0..cod.len()).map(|b| phi_dom.ideal(pick[b]).values[x]).collect())
                .collect();
            if let Ok(d) = QDistributor::validate(dom.clone(), cod.clone(), matrix) {
                out.push(d);
            }
            return;
        }
        for &c in &choices[depth] {
            pick[depth] = c;
            rec(phi_dom, dom, cod, choices, pick, depth + 1, out);
        }
    }
    if cod.is_empty() {
        let matrix = vec![Vec::new(); dom.len()];
        out.push(QDistributor::validate(dom.clone(), cod.clone(), matrix).expect("empty matrix"));
        return out;
    }
    rec(phi_dom, &dom, cod, &choices, &mut pick, 0, &mut out);
    out
}

/// One named check inside a harness report.
#[derive(Debug, Clone)]
pub struct HarnessCheck {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub sampled: bool,
    pub cases: usize,
}

/// Instance-level saturation evidence for one class over a set of
/// fixtures. A failing check refutes saturation; passing checks prove
/// nothing beyond the instances tested.
#[derive(Debug, Clone)]
pub struct HarnessReport {
    pub class: IdealClassId,
    pub checks: Vec<HarnessCheck>,
}

impl HarnessReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the three saturation checks (colimit closure, Φ-distributor
/// composition closure, the sup-transfer formula) over every ordered pair
/// of fixtures sharing an ambient quantaloid.
pub fn saturation_harness(
    class: IdealClassId,
    fixtures: &[(String, Arc<QCategory>)],
    seed: u64,
    cap: usize,
) -> Result<HarnessReport, CapError> {
    let mut checks = Vec::new();
    let mut phis = Vec::new();
    for (name, cat) in fixtures {
        let pa = Arc::new(PresheafCategory::build(cat.clone(), cap)?);
        phis.push((name.clone(), phi_category(class, pa, cap)?));
    }
    for (name_a, phi_a) in &phis {
        for (name_b, phi_b) in &phis {
            if phi_a.base().ambient() != phi_b.base().ambient() {
                continue;
            }
            let pair = format!("{name_a}->{name_b}");
            checks.push(colim_closure_check(class, phi_a, phi_b, &pair, seed, cap)?);
            checks.push(composition_closure_check(class, phi_a, phi_b, &pair, cap)?);
        }
        checks.push(sup_transfer_check(class, phi_a, name_a, cap)?);
    }
    Ok(HarnessReport { class, checks })
}

/// Def. of saturation, clause tested directly: `colim(μ, G)` stays in ΦB
/// for every Φ-ideal μ on A and every functor `G: A -> ΦB`.
fn colim_closure_check(
    class: IdealClassId,
    phi_a: &PhiCategory,
    phi_b: &PhiCategory,
    pair: &str,
    seed: u64,
    cap: usize,
) -> Result<HarnessCheck, CapError> {
    let a = phi_a.base();
    let candidate_count: usize = (0..a.len())
        .map(|x| (0..phi_b.len()).filter(|&i| phi_b.ideal(i).typ == a.typ(x)).count())
        .product();
    let mut functors = all_functors(a, phi_b.category());
    let sampled = candidate_count > HARNESS_EXHAUSTIVE_CAP;
    if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        functors.shuffle(&mut rng);
        functors.truncate(HARNESS_SAMPLE_SIZE);
    }
    let b_pa = phi_b.presheaf_category();
    let q = a.ambient();
    let mut cases = 0usize;
    for g in &functors {
        for mu in phi_a.ideals() {
            cases += 1;
            // colim(μ, G)(x) = ⋁_a μ(a) ∘ G(a)(x), computed in PB
            let values: Vec<usize> = (0..phi_b.base().len())
                .map(|x| {
                    let tx = phi_b.base().typ(x);
                    q.hom(tx, mu.typ).join((0..a.len()).map(|ai| {
                        let ga = phi_b.ideal(g.apply(ai));
                        q.compose(tx, a.typ(ai), mu.typ, mu.values[ai], ga.values[x])
                    }))
                })
                .collect();
            let col = Presheaf { typ: mu.typ, values };
            if !membership(class, b_pa, &col, cap)? {
                return Ok(HarnessCheck {
                    name: format!("colim-closure {pair}"),
                    pass: false,
                    witness: Some(format!(
                        "weight {:?} with functor image {:?} leaves the class",
                        mu.values,
                        g.map()
                    )),
                    sampled,
                    cases,
                });
            }
        }
    }
    Ok(HarnessCheck {
        name: format!("colim-closure {pair}"),
        pass: true,
        witness: None,
        sampled,
        cases,
    })
}

/// Composition closure: ψ ∘ φ of Φ-distributors is again a Φ-distributor.
fn composition_closure_check(
    class: IdealClassId,
    phi_a: &PhiCategory,
    phi_b: &PhiCategory,
    pair: &str,
    cap: usize,
) -> Result<HarnessCheck, CapError> {
    let from = enumerate_phi_distributors(phi_a, phi_b.base());
    let back = enumerate_phi_distributors(phi_b, phi_a.base());
    let mut cases = 0usize;
    for phi in &from {
        for psi in &back {
            cases += 1;
            let composite = phi.then(psi).expect("endpoints match");
            if let Err(b) = is_phi_distributor(class, phi_a.presheaf_category(), &composite, cap)? {
                return Ok(HarnessCheck {
                    name: format!("composition-closure {pair}"),
                    pass: false,
                    witness: Some(format!("column at `{}` leaves the class", phi_a.base().id(b))),
                    sampled: false,
                    cases,
                });
            }
        }
    }
    Ok(HarnessCheck {
        name: format!("composition-closure {pair}"),
        pass: true,
        witness: None,
        sampled: false,
        cases,
    })
}

/// The sup-transfer formula: for Ψ a Φ-ideal on ΦA, the sup of Ψ inside
/// ΦA equals the `PA`-sup of the pushed-forward presheaf.
fn sup_transfer_check(
    class: IdealClassId,
    phi_a: &PhiCategory,
    name: &str,
    cap: usize,
) -> Result<HarnessCheck, CapError> {
    let pa = phi_a.presheaf_category();
    let pphi = Arc::new(PresheafCategory::build(phi_a.category().clone(), cap)?);
    let phi_phi = phi_category(class, pphi, cap)?;
    let mut cases = 0usize;
    for psi in phi_phi.ideals() {
        cases += 1;
        let pushed = f_to(phi_a.inclusion(), psi);
        let target = pa.sup_of_presheaf_on_pa(&pushed);
        let inner = sup(phi_a.category(), psi);
        let ok = match phi_a.index_of(&target) {
            Some(m) => inner.representatives.contains(&m),
            None => !inner.exists(),
        };
        if !ok {
            return Ok(HarnessCheck {
                name: format!("sup-transfer {name}"),
                pass: false,
                witness: Some(format!("ideal of ideals {:?}", psi.values)),
                sampled: false,
                cases,
            });
        }
        // saturated classes must keep the transferred sup inside ΦA
        if phi_a.index_of(&target).is_none() {
            return Ok(HarnessCheck {
                name: format!("sup-transfer {name}"),
                pass: false,
                witness: Some(format!("transferred sup {:?} leaves the class", target.values)),
                sampled: false,
                cases,
            });
        }
    }
    Ok(HarnessCheck {
        name: format!("sup-transfer {name}"),
        pass: true,
        witness: None,
        sampled: false,
        cases,
    })
}
