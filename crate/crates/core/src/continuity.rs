//! The continuity engine: Φ_s subcategories, the way-below distributor
//! and functor, Φ-continuity and interpolation, compact elements, the
//! Σ/S constructions, Φ-algebraicity, and the representation equivalence
//! `A ≃ Φ(A_c)`.
//!
//! Every decision with two provably-equivalent characterizations computes
//! both and treats disagreement as an implementation bug
//! ([`InternalInconsistency`]), never as a finding.

use std::sync::Arc;

use crate::category::{check_adjoint, QCategory, QFunctor};
use crate::distributor::QDistributor;
use crate::error::{CapError, EngineError, InternalInconsistency};
use crate::ideal::{check_cocomplete, is_phi_distributor, membership, phi_category, PhiCategory};
use crate::presheaf::{f_to, representable, sup, Presheaf, PresheafCategory};

/// The Φ-ideals with an existing supremum, as a full subcategory of ΦA.
#[derive(Debug, Clone)]
pub struct PhiS {
    phi: PhiCategory,
    /// Indices into ΦA of members with existing sup.
    members: Vec<usize>,
    /// Canonical sup element per member, parallel to `members`.
    sups: Vec<usize>,
    cat: Arc<QCategory>,
}

impl PhiS {
    pub fn phi(&self) -> &PhiCategory {
        &self.phi
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn sups(&self) -> &[usize] {
        &self.sups
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ideal(&self, i: usize) -> &Presheaf {
        self.phi.ideal(self.members[i])
    }

    pub fn ideals(&self) -> impl Iterator<Item = &Presheaf> {
        self.members.iter().map(|&m| self.phi.ideal(m))
    }

    /// Φ_sA as a plain category (full subcategory of ΦA).
    pub fn category(&self) -> &Arc<QCategory> {
        &self.cat
    }

    pub fn base(&self) -> &Arc<QCategory> {
        self.phi.base()
    }

    pub fn index_of(&self, phi: &Presheaf) -> Option<usize> {
        let in_phi = self.phi.index_of(phi)?;
        self.members.binary_search(&in_phi).ok()
    }
}

/// Filters ΦA down to the ideals with an existing sup and sanity-checks
/// the Yoneda/sup inequalities that hold by construction.
pub fn phi_s(phi: &PhiCategory) -> Result<PhiS, InternalInconsistency> {
    let base = phi.base();
    let mut members = Vec::new();
    let mut sups = Vec::new();
    for (i, mu) in phi.ideals().enumerate() {
        let s = sup(base, mu);
        if let Some(c) = s.canonical {
            members.push(i);
            sups.push(c);
        }
    }
    let cat = Arc::new(phi.category().full_subcategory(&members));
    let out = PhiS { phi: phi.clone(), members, sups, cat };
    // sup(Y(a)) ≅ a for every element
    for a in 0..base.len() {
        let s = sup(base, &representable(base, a));
        if !s.representatives.iter().any(|&r| base.isomorphic(r, a)) {
            return Err(InternalInconsistency(format!(
                "sup of the representable at `{}` missed its element",
                base.id(a)
            )));
        }
    }
    // Y(sup μ) ≥ μ for every member
    for (i, &m) in out.members.iter().enumerate() {
        let mu = out.phi.ideal(m);
        if !mu.leq(base, &representable(base, out.sups[i])) {
            return Err(InternalInconsistency(format!(
                "ideal above the representable of its own sup `{}`",
                base.id(out.sups[i])
            )));
        }
    }
    Ok(out)
}

/// The way-below distributor
/// `⇓(y, x) = ⋀_{φ ∈ Φ_sA} A(x, sup φ) ↘ φ(y)`, with its two defining
/// invariants (`⇓ ≤ A`, `⇓∘⇓ ≤ ⇓`) checked.
pub fn way_below(phis: &PhiS) -> Result<QDistributor, InternalInconsistency> {
    let base = phis.base();
    let q = base.ambient();
    let matrix: Vec<Vec<usize>> = (0..base.len())
        .map(|y| {
            (0..base.len())
                .map(|x| {
                    let (ty, tx) = (base.typ(y), base.typ(x));
                    q.hom(ty, tx).meet(phis.ideals().zip(phis.sups()).map(|(mu, &s)| {
                        q.rres(ty, tx, mu.typ, base.hom(x, s), mu.values[y])
                    }))
                })
                .collect()
        })
        .collect();
    let wb = QDistributor::validate(base.clone(), base.clone(), matrix)
        .map_err(|e| InternalInconsistency(format!("way-below is not a distributor: {e}")))?;
    let ident = QDistributor::identity(base.clone());
    if !wb.leq(&ident) {
        return Err(InternalInconsistency("way-below exceeds the hom distributor".into()));
    }
    if !wb.then(&wb).expect("endo endpoints").leq(&wb) {
        return Err(InternalInconsistency("way-below is not transitive".into()));
    }
    Ok(wb)
}

/// The way-below functor on objects: `F_⇓(a) = ⇓(-, a)` as a presheaf,
/// with `F_⇓(a) ≤ Y(a)` checked.
pub fn way_below_functor(phis: &PhiS, wb: &QDistributor) -> Vec<Presheaf> {
    let base = phis.base();
    (0..base.len())
        .map(|a| {
            let p = Presheaf::validate(
                base,
                base.typ(a),
                (0..base.len()).map(|y| wb.at(y, a)).collect(),
            )
            .expect("way-below columns are presheaves");
            debug_assert!(p.leq(base, &representable(base, a)));
            p
        })
        .collect()
}

/// Per-element detail in a [`ContinuityReport`].
#[derive(Debug, Clone)]
pub struct ContinuityPerElement {
    /// `F_⇓(a)`.
    pub ideal: Presheaf,
    /// Whether `F_⇓(a)` is a Φ-ideal with an existing sup.
    pub in_phi_s: bool,
    /// Whether `sup F_⇓(a) ≅ a` (isomorphism, not equality).
    pub sup_ok: bool,
}

/// Outcome of a Φ-continuity decision.
#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub verdict: bool,
    /// Indexed by element of the base category.
    pub per_element: Vec<ContinuityPerElement>,
    /// Whether `A = A ↙ ⇓` (the approximating identity).
    pub approx_ok: bool,
    /// The two characterizations agreed (guaranteed: disagreement is an
    /// error, not a report).
    pub cross_check_ok: bool,
    /// When continuous: whether the co-restricted `F_⇓ ⊣ sup` held.
    pub adjunction_ok: Option<bool>,
}

/// Decides Φ-continuity by two independent routes and requires agreement:
/// per-element (`F_⇓(a) ∈ Φ_sA` and `sup F_⇓(a) ≅ a`) versus global
/// (`⇓` is a Φ-distributor and `A = A ↙ ⇓`).
pub fn check_continuous(phis: &PhiS, cap: usize) -> Result<ContinuityReport, EngineError> {
    let base = phis.base();
    let pa = phis.phi().presheaf_category();
    let class = phis.phi().class();
    let wb = way_below(phis)?;
    let columns = way_below_functor(phis, &wb);

    let mut per_element = Vec::with_capacity(base.len());
    for (a, ideal) in columns.iter().enumerate() {
        let is_ideal = membership(class, pa, ideal, cap).map_err(CapError::from)?;
        let s = sup(base, ideal);
        let in_phi_s = is_ideal && s.exists();
        let sup_ok = s.representatives.iter().any(|&r| base.isomorphic(r, a));
        per_element.push(ContinuityPerElement { ideal: ideal.clone(), in_phi_s, sup_ok });
    }
    let verdict_elementwise = per_element.iter().all(|p| p.in_phi_s && p.sup_ok);

    let is_phi_dist = is_phi_distributor(class, pa, &wb, cap)
        .map_err(CapError::from)?
        .is_ok();
    let ident = QDistributor::identity(base.clone());
    let approx_ok = ident.lres(&wb).expect("endo endpoints") == ident;
    let verdict_global = is_phi_dist && approx_ok;

    if verdict_elementwise != verdict_global {
        return Err(InternalInconsistency(format!(
            "continuity characterizations disagree: per-element {verdict_elementwise}, global {verdict_global}"
        ))
        .into());
    }

    let adjunction_ok = verdict_elementwise.then(|| {
        let map: Vec<usize> = columns
            .iter()
            .map(|c| phis.index_of(c).expect("columns are in Φ_s when continuous"))
            .collect();
        match QFunctor::validate(base.clone(), phis.category().clone(), map) {
            Ok(f_down) => {
                let sup_map = phis.sups().to_vec();
                match QFunctor::validate(phis.category().clone(), base.clone(), sup_map) {
                    Ok(sup_fun) => check_adjoint(&f_down, &sup_fun).is_ok(),
                    Err(_) => false,
                }
            }
            Err(_) => false,
        }
    });

    Ok(ContinuityReport {
        verdict: verdict_elementwise,
        per_element,
        approx_ok,
        cross_check_ok: true,
        adjunction_ok,
    })
}

/// Interpolation: `⇓ = ⇓ ∘ ⇓`; `Err` carries the first failing entry.
pub fn check_interpolation(wb: &QDistributor) -> Result<(), (usize, usize)> {
    let composed = wb.then(wb).expect("endo endpoints");
    for y in 0..wb.dom().len() {
        for x in 0..wb.cod().len() {
            if composed.at(y, x) != wb.at(y, x) {
                return Err((y, x));
            }
        }
    }
    Ok(())
}

/// Φ-compactness of one element, decided by two routes that must agree:
/// `1_{ta} ≤ ⇓(a, a)` versus `A(a, sup φ) ≤ φ(a)` for all `φ ∈ Φ_sA`.
pub fn is_compact(phis: &PhiS, wb: &QDistributor, a: usize) -> Result<bool, InternalInconsistency> {
    let base = phis.base();
    let q = base.ambient();
    let t = base.typ(a);
    let reflexive = q.hom(t, t).leq(q.identity(t), wb.at(a, a));
    let pointwise = phis.ideals().zip(phis.sups()).all(|(mu, &s)| {
        q.hom(t, mu.typ).leq(base.hom(a, s), mu.values[a])
    });
    if reflexive != pointwise {
        return Err(InternalInconsistency(format!(
            "compactness characterizations disagree at `{}`: reflexive {reflexive}, pointwise {pointwise}",
            base.id(a)
        )));
    }
    Ok(reflexive)
}

/// All Φ-compact elements, ascending.
pub fn compacts(phis: &PhiS, wb: &QDistributor) -> Result<Vec<usize>, InternalInconsistency> {
    (0..phis.base().len())
        .filter_map(|a| match is_compact(phis, wb, a) {
            Ok(true) => Some(Ok(a)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// `Σ_A(x, y) = ⋁_{a compact} A(a, y) ∘ A(x, a)` and the object map
/// `S_A(y) = Σ_A(-, y)`.
pub fn sigma_and_s(base: &Arc<QCategory>, compact_elems: &[usize]) -> (QDistributor, Vec<Presheaf>) {
    let q = base.ambient();
    let matrix: Vec<Vec<usize>> = (0..base.len())
        .map(|x| {
            (0..base.len())
                .map(|y| {
                    let (tx, ty) = (base.typ(x), base.typ(y));
                    q.hom(tx, ty).join(
                        compact_elems
                            .iter()
                            .map(|&a| q.compose(tx, base.typ(a), ty, base.hom(a, y), base.hom(x, a))),
                    )
                })
                .collect()
        })
        .collect();
    let sigma = QDistributor::validate(base.clone(), base.clone(), matrix)
        .expect("Σ is a distributor");
    let s = (0..base.len())
        .map(|y| {
            Presheaf::validate(
                base,
                base.typ(y),
                (0..base.len()).map(|x| sigma.at(x, y)).collect(),
            )
            .expect("Σ columns are presheaves")
        })
        .collect();
    (sigma, s)
}

/// Outcome of a Φ-algebraicity decision.
#[derive(Debug, Clone)]
pub struct AlgebraicityReport {
    pub compacts: Vec<usize>,
    pub sigma: QDistributor,
    /// `S_A(a)` per element.
    pub s: Vec<Presheaf>,
    pub verdict: bool,
    /// Whether `S_A = F_⇓` exactly (the Prop-level cross-characterization
    /// together with continuity).
    pub s_equals_fdown: bool,
    pub continuous: bool,
}

/// Decides Φ-algebraicity directly (`S_A(a) ∈ Φ_sA` and `sup S_A(a) ≅ a`)
/// and cross-checks against "continuous and `S_A = F_⇓`".
pub fn check_algebraic(phis: &PhiS, cap: usize) -> Result<AlgebraicityReport, EngineError> {
    let base = phis.base();
    let pa = phis.phi().presheaf_category();
    let class = phis.phi().class();
    let wb = way_below(phis)?;
    let comp = compacts(phis, &wb)?;
    let (sigma, s) = sigma_and_s(base, &comp);
    if !sigma.leq(&wb) {
        return Err(InternalInconsistency("Σ exceeds the way-below distributor".into()).into());
    }

    let mut verdict = true;
    for (a, sa) in s.iter().enumerate() {
        let is_ideal = membership(class, pa, sa, cap).map_err(CapError::from)?;
        let srch = sup(base, sa);
        let ok = is_ideal && srch.representatives.iter().any(|&r| base.isomorphic(r, a));
        if !ok {
            verdict = false;
        }
    }

    let continuity = check_continuous(phis, cap)?;
    let fdown = way_below_functor(phis, &wb);
    let s_equals_fdown = s == fdown;
    let cross = continuity.verdict && s_equals_fdown;
    if verdict != cross {
        return Err(InternalInconsistency(format!(
            "algebraicity characterizations disagree: direct {verdict}, via continuity {cross}"
        ))
        .into());
    }

    Ok(AlgebraicityReport {
        compacts: comp,
        sigma,
        s,
        verdict,
        s_equals_fdown,
        continuous: continuity.verdict,
    })
}

/// The representation equivalence for a Φ-cocomplete Φ-algebraic `A`:
/// `F: A -> Φ(A_c)` by `x ↦ A(j-, x)` and `G: Φ(A_c) -> A` by
/// `φ ↦ sup(φ ∘ j♮)`. Returns both functors plus the verdict that
/// `G∘F ≅ 1` (isomorphism) and `F∘G = 1` (exact: Φ(A_c) is skeletal).
pub struct Equivalence {
    pub a_c: Arc<QCategory>,
    pub phi_ac: PhiCategory,
    pub to_ideals: QFunctor,
    pub to_base: QFunctor,
    pub round_trip_iso: bool,
    pub ideal_round_trip_exact: bool,
}

pub fn algebraic_equivalence(phis: &PhiS, cap: usize) -> Result<Equivalence, EngineError> {
    let base = phis.base();
    let class = phis.phi().class();
    if !check_cocomplete(phis.phi()).verdict {
        return Err(EngineError::PreconditionFailed("category is not cocomplete for the class".into()));
    }
    let alg = check_algebraic(phis, cap)?;
    if !alg.verdict {
        return Err(EngineError::PreconditionFailed("category is not algebraic".into()));
    }
    let comp = alg.compacts.clone();
    let a_c = Arc::new(base.full_subcategory(&comp));
    let pac = Arc::new(PresheafCategory::build(a_c.clone(), cap).map_err(CapError::from)?);
    let phi_ac = phi_category(class, pac, cap).map_err(CapError::from)?;
    let incl = QFunctor::validate(a_c.clone(), base.clone(), comp.clone())
        .expect("A_c includes into A");

    // F(x) = A(j-, x), looked up as a Φ-ideal on A_c
    let f_map: Vec<usize> = (0..base.len())
        .map(|x| {
            let p = Presheaf::validate(
                &a_c,
                base.typ(x),
                comp.iter().map(|&a| base.hom(a, x)).collect(),
            )
            .expect("restricted representables are presheaves");
            phi_ac
                .index_of(&p)
                .ok_or(())
                .expect("restricted representables of an algebraic category are Φ-ideals")
        })
        .collect();
    let to_ideals = QFunctor::validate(base.clone(), phi_ac.category().clone(), f_map)
        .expect("x ↦ A(j-, x) is a functor");

    // G(φ) = sup(φ ∘ j♮), computed through f_to along the inclusion
    let g_map: Vec<usize> = phi_ac
        .ideals()
        .map(|phi| {
            sup(base, &f_to(&incl, phi))
                .canonical
                .ok_or(())
                .expect("pushed Φ-ideals of an algebraic category have sups")
        })
        .collect();
    let to_base = QFunctor::validate(phi_ac.category().clone(), base.clone(), g_map)
        .expect("φ ↦ sup(φ ∘ j♮) is a functor");

    let round_trip_iso =
        (0..base.len()).all(|x| base.isomorphic(to_base.apply(to_ideals.apply(x)), x));
    let ideal_round_trip_exact =
        (0..phi_ac.len()).all(|i| to_ideals.apply(to_base.apply(i)) == i);
    Ok(Equivalence { a_c, phi_ac, to_ideals, to_base, round_trip_iso, ideal_round_trip_exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::IdealClassId;
    use crate::models;
    use crate::presheaf::DEFAULT_ENUM_CAP;

    fn phis_of(cat: Arc<QCategory>, class: IdealClassId) -> PhiS {
        let pa = Arc::new(PresheafCategory::build(cat, DEFAULT_ENUM_CAP).unwrap());
        let phi = phi_category(class, pa, DEFAULT_ENUM_CAP).unwrap();
        phi_s(&phi).unwrap()
    }

    #[test]
    fn crisp_chain_over_goedel3_is_continuous_but_not_algebraic() {
        let phis = phis_of(Arc::new(models::g3_chain2()), IdealClassId::InhabitedFlat);
        let wb = way_below(&phis).unwrap();
        // `a` approximates itself fully; `b` only to degree 0.5, because
        // the ideal (1, 0.5) has sup b without containing b at degree 1
        assert_eq!(wb.at(0, 0), 2);
        assert_eq!(wb.at(1, 1), 1);
        let cont = check_continuous(&phis, DEFAULT_ENUM_CAP).unwrap();
        assert!(cont.verdict);
        let alg = check_algebraic(&phis, DEFAULT_ENUM_CAP).unwrap();
        assert!(!alg.verdict);
        assert_eq!(alg.compacts, vec![0]);
        assert!(!is_compact(&phis, &wb, 1).unwrap());
    }

    fn one_point() -> Arc<QCategory> {
        let two = Arc::new(models::boolean2().suspension().clone());
        Arc::new(QCategory::validate(two, vec!["*".into()], vec![0], vec![vec![1]]).unwrap())
    }

    #[test]
    fn phi_s_sizes_on_fix_v() {
        let v = Arc::new(models::fix_v());
        assert_eq!(phis_of(v.clone(), IdealClassId::All).len(), 4);
        assert_eq!(phis_of(v.clone(), IdealClassId::InhabitedFlat).len(), 3);
        assert_eq!(phis_of(v, IdealClassId::Representable).len(), 3);
    }

    #[test]
    fn way_below_is_the_order_on_fix_v() {
        let v = Arc::new(models::fix_v());
        for class in [IdealClassId::InhabitedFlat, IdealClassId::ConicalIdeal] {
            let phis = phis_of(v.clone(), class);
            let wb = way_below(&phis).unwrap();
            for y in 0..v.len() {
                for x in 0..v.len() {
                    assert_eq!(wb.at(y, x) == 1, v.underlying_leq(y, x), "{}", class.name());
                }
            }
        }
    }

    #[test]
    fn way_below_for_all_ideals_excludes_the_join_point() {
        // the non-directed lower set {x, y} has sup z without containing z,
        // so z is not way-below itself once every presheaf is admitted
        let v = Arc::new(models::fix_v());
        let phis = phis_of(v.clone(), IdealClassId::All);
        let wb = way_below(&phis).unwrap();
        let z = v.index_of("z").unwrap();
        for y in 0..v.len() {
            for x in 0..v.len() {
                let expected = v.underlying_leq(y, x) && !(y == z && x == z);
                assert_eq!(wb.at(y, x) == 1, expected);
            }
        }
        // still continuous: F_⇓(z) = {x,y} has sup z
        let report = check_continuous(&phis, DEFAULT_ENUM_CAP).unwrap();
        assert!(report.verdict);
        // but z is not compact, so the compact set shrinks
        assert_eq!(compacts(&phis, &wb).unwrap(), vec![0, 1]);
    }

    #[test]
    fn way_below_on_one_point_is_identity() {
        let p = one_point();
        let phis = phis_of(p.clone(), IdealClassId::InhabitedFlat);
        let wb = way_below(&phis).unwrap();
        assert_eq!(wb, QDistributor::identity(p));
    }

    #[test]
    fn way_below_functor_column_on_fix_v() {
        let v = Arc::new(models::fix_v());
        let phis = phis_of(v.clone(), IdealClassId::InhabitedFlat);
        let wb = way_below(&phis).unwrap();
        let cols = way_below_functor(&phis, &wb);
        let z = v.index_of("z").unwrap();
        assert_eq!(cols[z].values, vec![1, 1, 1]);
        for a in 0..v.len() {
            assert!(cols[a].leq(&v, &representable(&v, a)));
        }
    }

    #[test]
    fn fix_v_is_continuous_for_builtin_classes() {
        let v = Arc::new(models::fix_v());
        for class in [IdealClassId::InhabitedFlat, IdealClassId::ConicalIdeal] {
            let phis = phis_of(v.clone(), class);
            let report = check_continuous(&phis, DEFAULT_ENUM_CAP).unwrap();
            assert!(report.verdict, "{}", class.name());
            assert!(report.approx_ok);
            assert_eq!(report.adjunction_ok, Some(true));
        }
    }

    #[test]
    fn presheaf_category_of_fix_v_is_continuous_for_all() {
        let v = Arc::new(models::fix_v());
        let pa = Arc::new(PresheafCategory::build(v, DEFAULT_ENUM_CAP).unwrap());
        let phis = phis_of(pa.category().clone(), IdealClassId::All);
        let report = check_continuous(&phis, DEFAULT_ENUM_CAP).unwrap();
        assert!(report.verdict);
        let wb = way_below(&phis).unwrap();
        assert!(check_interpolation(&wb).is_ok());
    }

    #[test]
    fn interpolation_on_continuous_fixtures() {
        let v = Arc::new(models::fix_v());
        for class in [IdealClassId::InhabitedFlat, IdealClassId::ConicalIdeal] {
            let phis = phis_of(v.clone(), class);
            assert!(check_continuous(&phis, DEFAULT_ENUM_CAP).unwrap().verdict);
            let wb = way_below(&phis).unwrap();
            assert!(check_interpolation(&wb).is_ok());
        }
        let p = one_point();
        let phis = phis_of(p, IdealClassId::InhabitedFlat);
        assert!(check_interpolation(&way_below(&phis).unwrap()).is_ok());
    }

    #[test]
    fn all_of_fix_v_is_compact() {
        let v = Arc::new(models::fix_v());
        let phis = phis_of(v.clone(), IdealClassId::InhabitedFlat);
        let wb = way_below(&phis).unwrap();
        assert_eq!(compacts(&phis, &wb).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn representables_are_compact_in_phi_a() {
        // Prop-level fact instance-checked: Y(x) is compact in ΦA
        let v = Arc::new(models::fix_v());
        for class in [IdealClassId::InhabitedFlat, IdealClassId::All] {
            let pa = Arc::new(PresheafCategory::build(v.clone(), DEFAULT_ENUM_CAP).unwrap());
            let phi = phi_category(class, pa.clone(), DEFAULT_ENUM_CAP).unwrap();
            let phis_on_phi = phis_of(phi.category().clone(), class);
            let wb = way_below(&phis_on_phi).unwrap();
            for x in 0..v.len() {
                let yx = phi.yoneda_corestricted().apply(x);
                assert!(is_compact(&phis_on_phi, &wb, yx).unwrap(), "{}", class.name());
            }
        }
    }

    #[test]
    fn sigma_on_fix_v_is_the_order() {
        let v = Arc::new(models::fix_v());
        let (sigma, s) = sigma_and_s(&v, &[0, 1, 2]);
        assert_eq!(sigma, QDistributor::identity(v.clone()));
        assert_eq!(s.len(), 3);
        let (sigma_empty, _) = sigma_and_s(&v, &[]);
        for x in 0..v.len() {
            for y in 0..v.len() {
                assert_eq!(sigma_empty.at(x, y), 0);
            }
        }
        let p = one_point();
        let (sigma_point, _) = sigma_and_s(&p, &[0]);
        assert_eq!(sigma_point, QDistributor::identity(p));
    }

    #[test]
    fn fix_v_is_algebraic() {
        let v = Arc::new(models::fix_v());
        let phis = phis_of(v, IdealClassId::InhabitedFlat);
        let report = check_algebraic(&phis, DEFAULT_ENUM_CAP).unwrap();
        assert!(report.verdict);
        assert!(report.s_equals_fdown);
        assert!(report.continuous);
        assert_eq!(report.compacts, vec![0, 1, 2]);
    }

    #[test]
    fn phi_a_is_algebraic_for_saturated_classes() {
        let v = Arc::new(models::fix_v());
        for class in [IdealClassId::InhabitedFlat, IdealClassId::ConicalIdeal] {
            let pa = Arc::new(PresheafCategory::build(v.clone(), DEFAULT_ENUM_CAP).unwrap());
            let phi = phi_category(class, pa, DEFAULT_ENUM_CAP).unwrap();
            let phis = phis_of(phi.category().clone(), class);
            let report = check_algebraic(&phis, DEFAULT_ENUM_CAP).unwrap();
            assert!(report.verdict, "{}", class.name());
        }
    }

    #[test]
    fn equivalence_on_fix_v() {
        let v = Arc::new(models::fix_v());
        let phis = phis_of(v.clone(), IdealClassId::InhabitedFlat);
        let eq = algebraic_equivalence(&phis, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(eq.phi_ac.len(), 3);
        assert!(eq.round_trip_iso);
        assert!(eq.ideal_round_trip_exact);
        // V is skeletal, so the round trip is exact on the nose
        for x in 0..v.len() {
            assert_eq!(eq.to_base.apply(eq.to_ideals.apply(x)), x);
        }
    }

    #[test]
    fn equivalence_on_one_point() {
        let p = one_point();
        let phis = phis_of(p, IdealClassId::InhabitedFlat);
        let eq = algebraic_equivalence(&phis, DEFAULT_ENUM_CAP).unwrap();
        assert!(eq.round_trip_iso && eq.ideal_round_trip_exact);
    }

    #[test]
    fn reconstruction_of_phi_b_from_compacts() {
        // ΦB is algebraic; rebuilding it from its compacts is an
        // isomorphic category
        let b = Arc::new(models::antichain2());
        let class = IdealClassId::InhabitedFlat;
        let pa = Arc::new(PresheafCategory::build(b, DEFAULT_ENUM_CAP).unwrap());
        let phi_b = phi_category(class, pa, DEFAULT_ENUM_CAP).unwrap();
        let phis = phis_of(phi_b.category().clone(), class);
        let eq = algebraic_equivalence(&phis, DEFAULT_ENUM_CAP).unwrap();
        assert!(eq.round_trip_iso && eq.ideal_round_trip_exact);
        assert_eq!(eq.phi_ac.len(), phi_b.len());
    }

    #[test]
    fn equivalence_requires_algebraicity() {
        // (All, FIX-V) is not even cocomplete, hence not algebraic
        let v = Arc::new(models::fix_v());
        let phis = phis_of(v, IdealClassId::All);
        match algebraic_equivalence(&phis, DEFAULT_ENUM_CAP) {
            Err(EngineError::PreconditionFailed(_)) => {}
            other => panic!("expected precondition failure, got {:?}", other.map(|_| ())),
        }
    }
}
