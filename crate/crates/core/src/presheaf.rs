//! Presheaves and copresheaves on a Q-category, their exhaustive
//! enumeration, the presheaf category, Yoneda embedding, suprema and
//! weighted colimits, and the image/preimage functors along a Q-functor.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{QCategory, QFunctor};
use crate::distributor::QDistributor;
use crate::error::{CapError, ValidationError};

/// Default cap on enumerated presheaves per `(category, type)` pair.
pub const DEFAULT_ENUM_CAP: usize = 20_000;

/// A presheaf `μ: A ⇸ {q}`: per-element values `μ(x): tx -> q` satisfying
/// `μ(x') ∘ A(x, x') <= μ(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presheaf {
    pub typ: usize,
    pub values: Vec<usize>,
}

/// A copresheaf `λ: {q} ⇸ A`: values `λ(x): q -> tx` satisfying
/// `A(x', x) ∘ λ(x') <= λ(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Copresheaf {
    pub typ: usize,
    pub values: Vec<usize>,
}

impl Presheaf {
    pub fn validate(base: &QCategory, typ: usize, values: Vec<usize>) -> Result<Self, ValidationError> {
        if values.len() != base.len() {
            return Err(ValidationError::PartialTable("presheaf values must be total".into()));
        }
        let q = base.ambient();
        for (x, &v) in values.iter().enumerate() {
            if v >= q.hom(base.typ(x), typ).len() {
                return Err(ValidationError::ForeignElement(format!("value at `{}`", base.id(x))));
            }
        }
        for x in 0..base.len() {
            for x1 in 0..base.len() {
                let lhs = q.compose(base.typ(x), base.typ(x1), typ, values[x1], base.hom(x, x1));
                if !q.hom(base.typ(x), typ).leq(lhs, values[x]) {
                    return Err(ValidationError::BimoduleInequalityViolated(
                        base.id(x).to_string(),
                        base.id(x1).to_string(),
                        base.ambient().objects()[typ].clone(),
                        base.ambient().objects()[typ].clone(),
                    ));
                }
            }
        }
        Ok(Presheaf { typ, values })
    }

    pub fn leq(&self, base: &QCategory, other: &Presheaf) -> bool {
        debug_assert_eq!(self.typ, other.typ);
        let q = base.ambient();
        (0..base.len()).all(|x| q.hom(base.typ(x), self.typ).leq(self.values[x], other.values[x]))
    }

    pub fn join(&self, base: &QCategory, other: &Presheaf) -> Presheaf {
        debug_assert_eq!(self.typ, other.typ);
        let q = base.ambient();
        let values = (0..base.len())
            .map(|x| q.hom(base.typ(x), self.typ).join2(self.values[x], other.values[x]))
            .collect();
        Presheaf { typ: self.typ, values }
    }

    /// The distributor `A ⇸ {q}` presentation, with `{q}` the one-object
    /// discrete category at this presheaf's type.
    pub fn as_distributor(&self, base: &Arc<QCategory>) -> QDistributor {
        let one = Arc::new(discrete_object(base.ambient().clone(), self.typ));
        QDistributor::validate(base.clone(), one, self.values.iter().map(|&v| vec![v]).collect())
            .expect("a presheaf is a distributor")
    }
}

impl Copresheaf {
    pub fn validate(base: &QCategory, typ: usize, values: Vec<usize>) -> Result<Self, ValidationError> {
        if values.len() != base.len() {
            return Err(ValidationError::PartialTable("copresheaf values must be total".into()));
        }
        let q = base.ambient();
        for (x, &v) in values.iter().enumerate() {
            if v >= q.hom(typ, base.typ(x)).len() {
                return Err(ValidationError::ForeignElement(format!("value at `{}`", base.id(x))));
            }
        }
        for x1 in 0..base.len() {
            for x in 0..base.len() {
                let lhs = q.compose(typ, base.typ(x1), base.typ(x), base.hom(x1, x), values[x1]);
                if !q.hom(typ, base.typ(x)).leq(lhs, values[x]) {
                    return Err(ValidationError::BimoduleInequalityViolated(
                        base.ambient().objects()[typ].clone(),
                        base.ambient().objects()[typ].clone(),
                        base.id(x1).to_string(),
                        base.id(x).to_string(),
                    ));
                }
            }
        }
        Ok(Copresheaf { typ, values })
    }

    pub fn meet(&self, base: &QCategory, other: &Copresheaf) -> Copresheaf {
        debug_assert_eq!(self.typ, other.typ);
        let q = base.ambient();
        let values = (0..base.len())
            .map(|x| q.hom(self.typ, base.typ(x)).meet2(self.values[x], other.values[x]))
            .collect();
        Copresheaf { typ: self.typ, values }
    }
}

/// The one-object discrete category `{q}` with hom `1_q`.
pub fn discrete_object(ambient: Arc<crate::quantaloid::Quantaloid>, q: usize) -> QCategory {
    let name = ambient.objects()[q].clone();
    let unit = ambient.identity(q);
    QCategory::validate(ambient, vec![name], vec![q], vec![vec![unit]]).expect("{q} is a category")
}

/// Enumerates all presheaves of type `q` on `A` by backtracking with
/// inequality pruning, in lexicographic order (element 0 most
/// significant, values in hom-carrier order).
pub fn enumerate_presheaves(base: &QCategory, typ: usize, cap: usize) -> Result<Vec<Presheaf>, CapError> {
    let n = base.len();
    let mut out = Vec::new();
    let mut partial: Vec<usize> = Vec::with_capacity(n);
    fn ok(base: &QCategory, typ: usize, partial: &[usize]) -> bool {
        let q = base.ambient();
        let k = partial.len() - 1;
        for x in 0..partial.len() {
            // both orientations against the newest value
            let a = q.compose(base.typ(x), base.typ(k), typ, partial[k], base.hom(x, k));
            if !q.hom(base.typ(x), typ).leq(a, partial[x]) {
                return false;
            }
            let b = q.compose(base.typ(k), base.typ(x), typ, partial[x], base.hom(k, x));
            if !q.hom(base.typ(k), typ).leq(b, partial[k]) {
                return false;
            }
        }
        true
    }
    fn rec(
        base: &QCategory,
        typ: usize,
        partial: &mut Vec<usize>,
        out: &mut Vec<Presheaf>,
        cap: usize,
    ) -> Result<(), CapError> {
        if partial.len() == base.len() {
            if out.len() >= cap {
                return Err(CapError::EnumerationCapExceeded(cap));
            }
            out.push(Presheaf { typ, values: partial.clone() });
            return Ok(());
        }
        let x = partial.len();
        for v in 0..base.ambient().hom(base.typ(x), typ).len() {
            partial.push(v);
            if ok(base, typ, partial) {
                rec(base, typ, partial, out, cap)?;
            }
            partial.pop();
        }
        Ok(())
    }
    rec(base, typ, &mut partial, &mut out, cap)?;
    Ok(out)
}

/// Enumerates all copresheaves of type `q` on `A`, same order conventions
/// as [`enumerate_presheaves`].
pub fn enumerate_copresheaves(base: &QCategory, typ: usize, cap: usize) -> Result<Vec<Copresheaf>, CapError> {
    let n = base.len();
    let mut out = Vec::new();
    let mut partial: Vec<usize> = Vec::with_capacity(n);
    fn ok(base: &QCategory, typ: usize, partial: &[usize]) -> bool {
        let q = base.ambient();
        let k = partial.len() - 1;
        for x in 0..partial.len() {
            let a = q.compose(typ, base.typ(k), base.typ(x), base.hom(k, x), partial[k]);
            if !q.hom(typ, base.typ(x)).leq(a, partial[x]) {
                return false;
            }
            let b = q.compose(typ, base.typ(x), base.typ(k), base.hom(x, k), partial[x]);
            if !q.hom(typ, base.typ(k)).leq(b, partial[k]) {
                return false;
            }
        }
        true
    }
    fn rec(
        base: &QCategory,
        typ: usize,
        partial: &mut Vec<usize>,
        out: &mut Vec<Copresheaf>,
        cap: usize,
    ) -> Result<(), CapError> {
        if partial.len() == base.len() {
            if out.len() >= cap {
                return Err(CapError::EnumerationCapExceeded(cap));
            }
            out.push(Copresheaf { typ, values: partial.clone() });
            return Ok(());
        }
        let x = partial.len();
        for v in 0..base.ambient().hom(typ, base.typ(x)).len() {
            partial.push(v);
            if ok(base, typ, partial) {
                rec(base, typ, partial, out, cap)?;
            }
            partial.pop();
        }
        Ok(())
    }
    rec(base, typ, &mut partial, &mut out, cap)?;
    Ok(out)
}

/// The category `PA` of all presheaves on `A`, with `PA(μ, μ') = μ' ↙ μ`.
///
/// Elements are named `p0, p1, ...` in enumeration order (types in
/// quantaloid object order, assignments lexicographic).
#[derive(Debug, Clone)]
pub struct PresheafCategory {
    base: Arc<QCategory>,
    cat: Arc<QCategory>,
    presheaves: Vec<Presheaf>,
    index: HashMap<Presheaf, usize>,
}

impl PresheafCategory {
    pub fn build(base: Arc<QCategory>, cap: usize) -> Result<Self, CapError> {
        let q = base.ambient().clone();
        let mut presheaves = Vec::new();
        for t in 0..q.objects().len() {
            presheaves.extend(enumerate_presheaves(&base, t, cap)?);
        }
        let ids: Vec<String> = (0..presheaves.len()).map(|i| format!("p{i}")).collect();
        let typ: Vec<usize> = presheaves.iter().map(|p| p.typ).collect();
        let hom: Vec<Vec<usize>> = presheaves
            .iter()
            .map(|mu| {
                presheaves
                    .iter()
                    .map(|mu1| {
                        // PA(μ, μ') = ⋀_x μ'(x) ↙ μ(x)
                        q.hom(mu.typ, mu1.typ).meet(
                            (0..base.len()).map(|x| q.lres(base.typ(x), mu.typ, mu1.typ, mu1.values[x], mu.values[x])),
                        )
                    })
                    .collect()
            })
            .collect();
        let cat = Arc::new(QCategory::validate(q, ids, typ, hom).expect("PA is a category"));
        debug_assert!(cat.is_skeletal());
        let index = presheaves.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(PresheafCategory { base, cat, presheaves, index })
    }

    pub fn base(&self) -> &Arc<QCategory> {
        &self.base
    }

    pub fn category(&self) -> &Arc<QCategory> {
        &self.cat
    }

    pub fn len(&self) -> usize {
        self.presheaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.presheaves.is_empty()
    }

    pub fn presheaf(&self, i: usize) -> &Presheaf {
        &self.presheaves[i]
    }

    pub fn presheaves(&self) -> &[Presheaf] {
        &self.presheaves
    }

    pub fn index_of(&self, p: &Presheaf) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `PA(μ, μ')` for arbitrary presheaves, not necessarily enumerated.
    pub fn hom_value(&self, mu: &Presheaf, mu1: &Presheaf) -> usize {
        let q = self.base.ambient();
        q.hom(mu.typ, mu1.typ).meet(
            (0..self.base.len()).map(|x| q.lres(self.base.typ(x), mu.typ, mu1.typ, mu1.values[x], mu.values[x])),
        )
    }

    /// The Yoneda embedding `A -> PA`, `x ↦ A(-, x)`.
    pub fn yoneda(&self) -> QFunctor {
        let map: Vec<usize> = (0..self.base.len())
            .map(|x| {
                let rep = representable(&self.base, x);
                self.index_of(&rep).expect("representables are enumerated")
            })
            .collect();
        QFunctor::validate(self.base.clone(), self.cat.clone(), map).expect("Yoneda is a functor")
    }

    /// `sup(Ψ) = Ψ ∘ (Y_A)♮` for a presheaf `Ψ` on `PA`; exact because `PA`
    /// is skeletal.
    pub fn sup_of_presheaf_on_pa(&self, psi: &Presheaf) -> Presheaf {
        let q = self.base.ambient();
        let values = (0..self.base.len())
            .map(|b| {
                let tb = self.base.typ(b);
                q.hom(tb, psi.typ).join(self.presheaves.iter().enumerate().map(|(i, mu)| {
                    q.compose(tb, mu.typ, psi.typ, psi.values[i], mu.values[b])
                }))
            })
            .collect();
        Presheaf { typ: psi.typ, values }
    }
}

/// The copresheaf category `P†A`, with `P†A(λ, λ') = λ' ↘ λ`.
#[derive(Debug, Clone)]
pub struct CopresheafCategory {
    base: Arc<QCategory>,
    cat: Arc<QCategory>,
    copresheaves: Vec<Copresheaf>,
}

impl CopresheafCategory {
    pub fn build(base: Arc<QCategory>, cap: usize) -> Result<Self, CapError> {
        let q = base.ambient().clone();
        let mut copresheaves = Vec::new();
        for t in 0..q.objects().len() {
            copresheaves.extend(enumerate_copresheaves(&base, t, cap)?);
        }
        let ids: Vec<String> = (0..copresheaves.len()).map(|i| format!("c{i}")).collect();
        let typ: Vec<usize> = copresheaves.iter().map(|p| p.typ).collect();
        let hom: Vec<Vec<usize>> = copresheaves
            .iter()
            .map(|la| {
                copresheaves
                    .iter()
                    .map(|la1| {
                        // P†A(λ, λ') = ⋀_x λ'(x) ↘ λ(x)
                        q.hom(la.typ, la1.typ).meet(
                            (0..base.len()).map(|x| q.rres(la.typ, la1.typ, base.typ(x), la1.values[x], la.values[x])),
                        )
                    })
                    .collect()
            })
            .collect();
        let cat = Arc::new(QCategory::validate(q, ids, typ, hom).expect("P†A is a category"));
        Ok(CopresheafCategory { base, cat, copresheaves })
    }

    pub fn base(&self) -> &Arc<QCategory> {
        &self.base
    }

    pub fn category(&self) -> &Arc<QCategory> {
        &self.cat
    }

    pub fn copresheaves(&self) -> &[Copresheaf] {
        &self.copresheaves
    }
}

/// The representable presheaf `A(-, x)`.
pub fn representable(base: &QCategory, x: usize) -> Presheaf {
    Presheaf {
        typ: base.typ(x),
        values: (0..base.len()).map(|a| base.hom(a, x)).collect(),
    }
}

/// The corepresentable copresheaf `A(x, -)`.
pub fn corepresentable(base: &QCategory, x: usize) -> Copresheaf {
    Copresheaf {
        typ: base.typ(x),
        values: (0..base.len()).map(|a| base.hom(x, a)).collect(),
    }
}

/// Outcome of a supremum search: the full isomorphism class of elements
/// satisfying `A(s, -) = A ↙ μ`, with the canonical representative being
/// the first in carrier order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupResult {
    pub representatives: Vec<usize>,
    pub canonical: Option<usize>,
}

impl SupResult {
    pub fn exists(&self) -> bool {
        self.canonical.is_some()
    }
}

/// The supremum of a presheaf: scans for elements `s` of the right type
/// with `A(s, -) = A ↙ μ` pointwise.
pub fn sup(base: &QCategory, mu: &Presheaf) -> SupResult {
    let q = base.ambient();
    // (A ↙ μ)(b) = ⋀_x A(x, b) ↙ μ(x)
    let target: Vec<usize> = (0..base.len())
        .map(|b| {
            q.hom(mu.typ, base.typ(b)).meet(
                (0..base.len()).map(|x| q.lres(base.typ(x), mu.typ, base.typ(b), base.hom(x, b), mu.values[x])),
            )
        })
        .collect();
    let representatives: Vec<usize> = (0..base.len())
        .filter(|&s| base.typ(s) == mu.typ && (0..base.len()).all(|b| base.hom(s, b) == target[b]))
        .collect();
    let canonical = representatives.first().copied();
    SupResult { representatives, canonical }
}

/// The weighted colimit `colim(θ, F)` of `F: B -> A` by `θ: B ⇸ C`,
/// computed per `c` as `sup(θ(-, c) ∘ F♮)`. Non-existence is a per-`c`
/// result, not an error.
pub fn colim(theta: &QDistributor, f: &QFunctor) -> Result<Vec<SupResult>, ValidationError> {
    if theta.dom() != f.dom() {
        return Err(ValidationError::TypeMismatch("weight and functor must share their domain".into()));
    }
    let b = f.dom();
    let a = f.cod();
    let c = theta.cod();
    let q = a.ambient();
    Ok((0..c.len())
        .map(|ci| {
            let tc = c.typ(ci);
            let values: Vec<usize> = (0..a.len())
                .map(|ai| {
                    let ta = a.typ(ai);
                    q.hom(ta, tc).join(
                        (0..b.len()).map(|bi| q.compose(ta, b.typ(bi), tc, theta.at(bi, ci), a.hom(ai, f.apply(bi)))),
                    )
                })
                .collect();
            sup(a, &Presheaf { typ: tc, values })
        })
        .collect())
}

/// `F→(μ) = μ ∘ F♮-cograph`: pushes a presheaf on `A` forward along
/// `F: A -> B`.
pub fn f_to(f: &QFunctor, mu: &Presheaf) -> Presheaf {
    let (a, b) = (f.dom(), f.cod());
    let q = a.ambient();
    let values = (0..b.len())
        .map(|y| {
            let ty = b.typ(y);
            q.hom(ty, mu.typ)
                .join((0..a.len()).map(|x| q.compose(ty, a.typ(x), mu.typ, mu.values[x], b.hom(y, f.apply(x)))))
        })
        .collect();
    Presheaf { typ: mu.typ, values }
}

/// `F←(λ) = λ ∘ F♮`: pulls a presheaf on `B` back along `F: A -> B`.
pub fn f_from(f: &QFunctor, lambda: &Presheaf) -> Presheaf {
    let (a, b) = (f.dom(), f.cod());
    let q = a.ambient();
    let values = (0..a.len())
        .map(|x| {
            let tx = a.typ(x);
            q.hom(tx, lambda.typ)
                .join((0..b.len()).map(|y| q.compose(tx, b.typ(y), lambda.typ, lambda.values[y], b.hom(f.apply(x), y))))
        })
        .collect();
    Presheaf { typ: lambda.typ, values }
}

/// `1_q <= ⋁ {μ(a) : ta = q}`.
pub fn inhabited(base: &QCategory, mu: &Presheaf) -> bool {
    let q = base.ambient();
    let hom = q.hom(mu.typ, mu.typ);
    let join = hom.join((0..base.len()).filter(|&a| base.typ(a) == mu.typ).map(|a| mu.values[a]));
    hom.leq(q.identity(mu.typ), join)
}

/// Dual of [`inhabited`] for copresheaves.
pub fn inhabited_co(base: &QCategory, lambda: &Copresheaf) -> bool {
    let q = base.ambient();
    let hom = q.hom(lambda.typ, lambda.typ);
    let join = hom.join((0..base.len()).filter(|&a| base.typ(a) == lambda.typ).map(|a| lambda.values[a]));
    hom.leq(q.identity(lambda.typ), join)
}
