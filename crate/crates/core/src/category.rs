//! Q-typed sets, Q-categories and Q-functors over a finite quantaloid,
//! with eager validation, the underlying preorder, isomorphism classes
//! and adjunction checks.
//!
//! Hom direction follows `hom(a, b): ta -> tb`, so the composition
//! inequality reads `hom(a', a'') ∘ hom(a, a') <= hom(a, a'')`.

use std::sync::Arc;

use crate::error::ValidationError;
use crate::quantaloid::Quantaloid;

/// A validated Q-category: a typed element set with hom-arrows satisfying
/// the composition and unit inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct QCategory {
    ambient: Arc<Quantaloid>,
    ids: Vec<String>,
    typ: Vec<usize>,
    hom: Vec<Vec<usize>>,
}

impl QCategory {
    pub fn validate(
        ambient: Arc<Quantaloid>,
        ids: Vec<String>,
        typ: Vec<usize>,
        hom: Vec<Vec<usize>>,
    ) -> Result<Self, ValidationError> {
        let n = ids.len();
        if typ.len() != n || hom.len() != n || hom.iter().any(|row| row.len() != n) {
            return Err(ValidationError::PartialTable("hom table must be total on the carrier".into()));
        }
        for (x, &t) in typ.iter().enumerate() {
            if t >= ambient.objects().len() {
                return Err(ValidationError::TypeMismatch(format!("element `{}` has unknown type", ids[x])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if hom[a][b] >= ambient.hom(typ[a], typ[b]).len() {
                    return Err(ValidationError::ForeignElement(format!("hom({}, {})", ids[a], ids[b])));
                }
            }
        }
        for a in 0..n {
            let t = typ[a];
            if !ambient.hom(t, t).leq(ambient.identity(t), hom[a][a]) {
                return Err(ValidationError::UnitInequalityViolated(ids[a].clone()));
            }
        }
        for a in 0..n {
            for a1 in 0..n {
                for a2 in 0..n {
                    // hom(a1, a2) ∘ hom(a, a1) <= hom(a, a2)
                    let lhs = ambient.compose(typ[a], typ[a1], typ[a2], hom[a1][a2], hom[a][a1]);
                    if !ambient.hom(typ[a], typ[a2]).leq(lhs, hom[a][a2]) {
                        return Err(ValidationError::CompositionInequalityViolated(
                            ids[a].clone(),
                            ids[a1].clone(),
                            ids[a2].clone(),
                        ));
                    }
                }
            }
        }
        Ok(QCategory { ambient, ids, typ, hom })
    }

    pub fn ambient(&self) -> &Arc<Quantaloid> {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, a: usize) -> &str {
        &self.ids[a]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|i| i == id)
    }

    pub fn typ(&self, a: usize) -> usize {
        self.typ[a]
    }

    /// The hom-arrow `A(a, b): ta -> tb`.
    pub fn hom(&self, a: usize, b: usize) -> usize {
        self.hom[a][b]
    }

    /// `x <= y` in the underlying preorder: same type and `1_tx <= A(x, y)`.
    pub fn underlying_leq(&self, x: usize, y: usize) -> bool {
        self.typ[x] == self.typ[y] && {
            let t = self.typ[x];
            self.ambient.hom(t, t).leq(self.ambient.identity(t), self.hom[x][y])
        }
    }

    pub fn underlying_preorder(&self) -> Preorder {
        let n = self.len();
        let leq = (0..n)
            .map(|x| (0..n).map(|y| self.underlying_leq(x, y)).collect())
            .collect();
        Preorder { ids: self.ids.clone(), leq }
    }

    /// Partition of the carrier into isomorphism classes (mutual `<=`),
    /// each sorted in carrier order, classes ordered by first member.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let class: Vec<usize> = (x..n)
                .filter(|&y| self.underlying_leq(x, y) && self.underlying_leq(y, x))
                .collect();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn is_skeletal(&self) -> bool {
        self.iso_classes().iter().all(|c| c.len() == 1)
    }

    pub fn isomorphic(&self, x: usize, y: usize) -> bool {
        self.underlying_leq(x, y) && self.underlying_leq(y, x)
    }

    /// The full subcategory on the given elements (kept in the given order).
    pub fn full_subcategory(&self, members: &[usize]) -> QCategory {
        let ids = members.iter().map(|&m| self.ids[m].clone()).collect();
        let typ = members.iter().map(|&m| self.typ[m]).collect();
        let hom = members
            .iter()
            .map(|&a| members.iter().map(|&b| self.hom[a][b]).collect())
            .collect();
        QCategory { ambient: self.ambient.clone(), ids, typ, hom }
    }
}

/// A reflexive transitive relation on a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    pub ids: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl Preorder {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq[a][b] && self.leq[b][a])))
    }
}

/// A validated Q-functor: a type-preserving map satisfying the hom
/// inequality `A(a', a) <= B(Fa', Fa)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QFunctor {
    dom: Arc<QCategory>,
    cod: Arc<QCategory>,
    map: Vec<usize>,
}

impl QFunctor {
    pub fn validate(dom: Arc<QCategory>, cod: Arc<QCategory>, map: Vec<usize>) -> Result<Self, ValidationError> {
        if dom.ambient() != cod.ambient() {
            return Err(ValidationError::TypeMismatch("functor endpoints live over different quantaloids".into()));
        }
        if map.len() != dom.len() {
            return Err(ValidationError::PartialTable("functor map must be total".into()));
        }
        for (a, &fa) in map.iter().enumerate() {
            if fa >= cod.len() {
                return Err(ValidationError::ForeignElement(format!("image of `{}`", dom.id(a))));
            }
            if dom.typ(a) != cod.typ(fa) {
                return Err(ValidationError::NotTypePreserving(dom.id(a).to_string()));
            }
        }
        let q = dom.ambient();
        for a1 in 0..dom.len() {
            for a in 0..dom.len() {
                let (p, r) = (dom.typ(a1), dom.typ(a));
                let lhs = dom.hom(a1, a);
                let rhs = cod.hom(map[a1], map[a]);
                if !q.hom(p, r).leq(lhs, rhs) {
                    return Err(ValidationError::HomInequalityViolated(dom.id(a1).to_string(), dom.id(a).to_string()));
                }
            }
        }
        Ok(QFunctor { dom, cod, map })
    }

    pub fn identity(cat: Arc<QCategory>) -> QFunctor {
        let map = (0..cat.len()).collect();
        QFunctor { dom: cat.clone(), cod: cat, map }
    }

    pub fn dom(&self) -> &Arc<QCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<QCategory> {
        &self.cod
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `G ∘ F` for `F = self: A -> B` and `G: B -> C`.
    pub fn then(&self, g: &QFunctor) -> Result<QFunctor, ValidationError> {
        if self.cod != g.dom {
            return Err(ValidationError::TypeMismatch("functor composition endpoints do not match".into()));
        }
        let map = self.map.iter().map(|&b| g.map[b]).collect();
        Ok(QFunctor { dom: self.dom.clone(), cod: g.cod.clone(), map })
    }

    pub fn is_fully_faithful(&self) -> bool {
        (0..self.dom.len()).all(|a1| {
            (0..self.dom.len()).all(|a| self.dom.hom(a1, a) == self.cod.hom(self.map[a1], self.map[a]))
        })
    }
}

/// Checks `B(Fx, y) = A(x, Gy)` for all `x, y`; returns the first failing
/// pair on failure.
pub fn check_adjoint(f: &QFunctor, g: &QFunctor) -> Result<(), (String, String)> {
    let (a, b) = (f.dom(), f.cod());
    debug_assert_eq!(g.dom(), b);
    debug_assert_eq!(g.cod(), a);
    for x in 0..a.len() {
        for y in 0..b.len() {
            if b.hom(f.apply(x), y) != a.hom(x, g.apply(y)) {
                return Err((a.id(x).to_string(), b.id(y).to_string()));
            }
        }
    }
    Ok(())
}

/// Enumerates every type-preserving map `A -> B` that satisfies the functor
/// inequality, in lexicographic order of the underlying element maps.
pub fn all_functors(dom: &Arc<QCategory>, cod: &Arc<QCategory>) -> Vec<QFunctor> {
    let choices: Vec<Vec<usize>> = (0..dom.len())
        .map(|a| (0..cod.len()).filter(|&b| cod.typ(b) == dom.typ(a)).collect())
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![0usize; dom.len()];
    fn rec(
        dom: &Arc<QCategory>,
        cod: &Arc<QCategory>,
        choices: &[Vec<usize>],
        stack: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<QFunctor>,
    ) {
        if depth == dom.len() {
            if let Ok(f) = QFunctor::validate(dom.clone(), cod.clone(), stack.clone()) {
                out.push(f);
            }
            return;
        }
        for &b in &choices[depth] {
            stack[depth] = b;
            rec(dom, cod, choices, stack, depth + 1, out);
        }
    }
    if dom.is_empty() {
        if let Ok(f) = QFunctor::validate(dom.clone(), cod.clone(), Vec::new()) {
            out.push(f);
        }
        return out;
    }
    rec(dom, cod, &choices, &mut stack, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn fix_v_is_a_valid_category() {
        let v = models::fix_v();
        assert_eq!(v.len(), 3);
        let pre = v.underlying_preorder();
        let (x, y, z) = (0, 1, 2);
        assert!(pre.leq[x][z] && pre.leq[y][z]);
        assert!(!pre.leq[x][y] && !pre.leq[z][x]);
        assert!(pre.is_antisymmetric());
        assert!(v.is_skeletal());
    }

    #[test]
    fn identity_functor_is_valid_and_self_adjoint() {
        let v = Arc::new(models::fix_v());
        let id = QFunctor::identity(v.clone());
        QFunctor::validate(v.clone(), v.clone(), id.map().to_vec()).unwrap();
        assert!(check_adjoint(&id, &id).is_ok());
        assert!(id.is_fully_faithful());
    }

    #[test]
    fn non_skeletal_pair_is_isomorphic() {
        // two elements with hom 1 both ways over Boolean 2
        let two = Arc::new(models::boolean2().suspension().clone());
        let cat = QCategory::validate(
            two,
            vec!["a".into(), "b".into()],
            vec![0, 0],
            vec![vec![1, 1], vec![1, 1]],
        )
        .unwrap();
        assert!(cat.isomorphic(0, 1));
        assert!(!cat.is_skeletal());
        assert_eq!(cat.iso_classes(), vec![vec![0, 1]]);
    }

    #[test]
    fn constant_functor_has_no_right_adjoint_on_fix_v() {
        let v = Arc::new(models::fix_v());
        let z = v.index_of("z").unwrap();
        let constant = QFunctor::validate(v.clone(), v.clone(), vec![z, z, z]).unwrap();
        for g in all_functors(&v, &v) {
            assert!(check_adjoint(&constant, &g).is_err());
        }
    }

    #[test]
    fn broken_composition_inequality_is_rejected() {
        let two = Arc::new(models::boolean2().suspension().clone());
        // hom(a, b) = hom(b, c) = 1 but hom(a, c) = 0 breaks transitivity
        let err = QCategory::validate(
            two,
            vec!["a".into(), "b".into(), "c".into()],
            vec![0, 0, 0],
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            ValidationError::CompositionInequalityViolated("a".into(), "b".into(), "c".into())
        );
    }
}
