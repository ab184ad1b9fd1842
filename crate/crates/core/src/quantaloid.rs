//! Finite quantaloids and quantales: composition, identities, residuals,
//! divisibility, and the `B_Q` construction over a divisible quantale.
//!
//! An arrow `u: p -> q` is an element of the hom-lattice `hom(p, q)`,
//! referenced by its index in that lattice's carrier.

use crate::error::ValidationError;
use crate::lattice::FiniteLattice;

/// Homs larger than this get join-continuity checked on pairs plus the
/// empty join only, instead of over all subsets.
pub const SUBSET_CHECK_CAP: usize = 12;

/// A validated finite quantaloid.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantaloid {
    objects: Vec<String>,
    /// `homs[p][q]` is the complete lattice of arrows `p -> q`.
    homs: Vec<Vec<FiniteLattice>>,
    /// `comp[p][q][r][v][u]` is `v ∘ u` for `u: p -> q`, `v: q -> r`.
    comp: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
    /// `identity[q]` is the unit arrow in `hom(q, q)`.
    identity: Vec<usize>,
    /// Caps applied during validation, for report disclosure.
    disclosures: Vec<String>,
}

impl Quantaloid {
    /// Validates objects, hom-lattices, total composition tables and
    /// identities against the quantaloid axioms.
    ///
    /// `comp[p][q][r]` must be a total table indexed `[v][u]`. All three
    /// axiom families are checked exhaustively; join-continuity falls back
    /// to pairs plus the empty join above [`SUBSET_CHECK_CAP`].
    pub fn validate(
        objects: Vec<String>,
        homs: Vec<Vec<FiniteLattice>>,
        comp: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
        identity: Vec<usize>,
    ) -> Result<Self, ValidationError> {
        let n = objects.len();
        if homs.len() != n || comp.len() != n || identity.len() != n {
            return Err(ValidationError::PartialTable("hom/compose/identity tables must cover all objects".into()));
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let t = &comp[p][q][r];
                    if t.len() != homs[q][r].len() || t.iter().any(|row| row.len() != homs[p][q].len()) {
                        return Err(ValidationError::PartialTable(format!(
                            "compose table {}|{}|{} is not total",
                            objects[p], objects[q], objects[r]
                        )));
                    }
                    for row in t {
                        for &x in row {
                            if x >= homs[p][r].len() {
                                return Err(ValidationError::ForeignElement(format!(
                                    "compose result index {x} out of range in {}|{}|{}",
                                    objects[p], objects[q], objects[r]
                                )));
                            }
                        }
                    }
                }
            }
        }
        let q = Quantaloid { objects, homs, comp, identity, disclosures: Vec::new() };
        q.check_axioms()
    }

    fn check_axioms(mut self) -> Result<Self, ValidationError> {
        let n = self.objects.len();
        // identity laws
        for p in 0..n {
            for r in 0..n {
                for u in 0..self.homs[p][r].len() {
                    if self.compose(p, r, r, self.identity[r], u) != u
                        || self.compose(p, p, r, u, self.identity[p]) != u
                    {
                        return Err(ValidationError::UnitLawViolated(self.arrow_name(p, r, u)));
                    }
                }
            }
        }
        // associativity
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        for w in 0..self.homs[r][s].len() {
                            for v in 0..self.homs[q][r].len() {
                                for u in 0..self.homs[p][q].len() {
                                    let left = self.compose(p, r, s, w, self.compose(p, q, r, v, u));
                                    let right = self.compose(p, q, s, self.compose(q, r, s, w, v), u);
                                    if left != right {
                                        return Err(ValidationError::NotAssociative(
                                            self.arrow_name(r, s, w),
                                            self.arrow_name(q, r, v),
                                            self.arrow_name(p, q, u),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        // join continuity in each argument separately
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let left_size = self.homs[p][q].len();
                    let right_size = self.homs[q][r].len();
                    // v ∘ (⋁ u_i) = ⋁ (v ∘ u_i)
                    for v in 0..right_size {
                        self.check_join_continuity(p, q, r, left_size, |slf, set| {
                            let joined = slf.homs[p][q].join(set.iter().copied());
                            let lhs = slf.compose(p, q, r, v, joined);
                            let rhs = slf.homs[p][r].join(set.iter().map(|&u| slf.compose(p, q, r, v, u)));
                            (lhs, rhs)
                        })
                        .map_err(|_| {
                            ValidationError::NotJoinContinuous(format!(
                                "left argument of - ∘ {} on {}|{}",
                                self.arrow_name(q, r, v),
                                self.objects[p],
                                self.objects[q]
                            ))
                        })?;
                    }
                    // (⋁ v_j) ∘ u = ⋁ (v_j ∘ u)
                    for u in 0..left_size {
                        self.check_join_continuity(p, q, r, right_size, |slf, set| {
                            let joined = slf.homs[q][r].join(set.iter().copied());
                            let lhs = slf.compose(p, q, r, joined, u);
                            let rhs = slf.homs[p][r].join(set.iter().map(|&v| slf.compose(p, q, r, v, u)));
                            (lhs, rhs)
                        })
                        .map_err(|_| {
                            ValidationError::NotJoinContinuous(format!(
                                "right argument of {} ∘ - on {}|{}",
                                self.arrow_name(p, q, u),
                                self.objects[q],
                                self.objects[r]
                            ))
                        })?;
                    }
                    let max = left_size.max(right_size);
                    if max > SUBSET_CHECK_CAP {
                        let note = format!(
                            "join-continuity on hom of size {max} checked on pairs and the empty join only (subset cap {SUBSET_CHECK_CAP})"
                        );
                        if !self.disclosures.contains(&note) {
                            self.disclosures.push(note);
                        }
                    }
                }
            }
        }
        Ok(self)
    }

    fn check_join_continuity(
        &self,
        _p: usize,
        _q: usize,
        _r: usize,
        size: usize,
        eval: impl Fn(&Self, &[usize]) -> (usize, usize),
    ) -> Result<(), ()> {
        if size <= SUBSET_CHECK_CAP {
            for mask in 0u32..(1 << size) {
                let set: Vec<usize> = (0..size).filter(|&i| mask & (1 << i) != 0).collect();
                let (lhs, rhs) = eval(self, &set);
                if lhs != rhs {
                    return Err(());
                }
            }
        } else {
            let (lhs, rhs) = eval(self, &[]);
            if lhs != rhs {
                return Err(());
            }
            for a in 0..size {
                for b in 0..size {
                    let (lhs, rhs) = eval(self, &[a, b]);
                    if lhs != rhs {
                        return Err(());
                    }
                }
            }
        }
        Ok(())
    }

    fn arrow_name(&self, p: usize, q: usize, u: usize) -> String {
        format!("{}: {} -> {}", self.homs[p][q].id(u), self.objects[p], self.objects[q])
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == id)
    }

    pub fn hom(&self, p: usize, q: usize) -> &FiniteLattice {
        &self.homs[p][q]
    }

    pub fn identity(&self, q: usize) -> usize {
        self.identity[q]
    }

    /// `v ∘ u` for `u: p -> q` and `v: q -> r`.
    pub fn compose(&self, p: usize, q: usize, r: usize, v: usize, u: usize) -> usize {
        self.comp[p][q][r][v][u]
    }

    /// `v ↙ u`: the largest `w: q -> r` with `w ∘ u <= v`, for `u: p -> q`
    /// and `v: p -> r`. Computed as a join over all satisfying arrows, so
    /// the adjunction holds by construction.
    pub fn lres(&self, p: usize, q: usize, r: usize, v: usize, u: usize) -> usize {
        let hom = &self.homs[q][r];
        let target = &self.homs[p][r];
        hom.join((0..hom.len()).filter(|&w| target.leq(self.compose(p, q, r, w, u), v)))
    }

    /// `u ↘ v`: the largest `w: p -> q` with `u ∘ w <= v`, for `u: q -> r`
    /// and `v: p -> r`.
    pub fn rres(&self, p: usize, q: usize, r: usize, u: usize, v: usize) -> usize {
        let hom = &self.homs[p][q];
        let target = &self.homs[p][r];
        hom.join((0..hom.len()).filter(|&w| target.leq(self.compose(p, q, r, u, w), v)))
    }

    pub fn disclosures(&self) -> &[String] {
        &self.disclosures
    }
}

/// A unital quantale: a complete lattice with a join-continuous associative
/// tensor. Validated via its one-object quantaloid embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantale {
    lattice: FiniteLattice,
    /// `tensor[a][b]` is `a & b`.
    tensor: Vec<Vec<usize>>,
    unit: usize,
    suspension: Quantaloid,
}

/// The single object name used when embedding a quantale as a quantaloid.
pub const SUSPENSION_OBJECT: &str = "*";

impl Quantale {
    pub fn validate(lattice: FiniteLattice, tensor: Vec<Vec<usize>>, unit: usize) -> Result<Self, ValidationError> {
        let n = lattice.len();
        if tensor.len() != n || tensor.iter().any(|row| row.len() != n) {
            return Err(ValidationError::PartialTable("tensor table is not total".into()));
        }
        let suspension = Quantaloid::validate(
            vec![SUSPENSION_OBJECT.to_string()],
            vec![vec![lattice.clone()]],
            vec![vec![vec![tensor.clone()]]],
            vec![unit],
        )?;
        Ok(Quantale { lattice, tensor, unit, suspension })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a][b]
    }

    /// `a \ b`: the largest `w` with `a & w <= b`.
    pub fn lresid(&self, a: usize, b: usize) -> usize {
        self.suspension.rres(0, 0, 0, a, b)
    }

    /// `b / a`: the largest `w` with `w & a <= b`.
    pub fn rresid(&self, b: usize, a: usize) -> usize {
        self.suspension.lres(0, 0, 0, b, a)
    }

    /// The one-object quantaloid with this quantale as its hom.
    pub fn suspension(&self) -> &Quantaloid {
        &self.suspension
    }

    /// Checks `a & (a \ b) = a ∧ b = (b / a) & a` for all pairs.
    /// Returns the first violating pair on failure.
    pub fn check_divisible(&self) -> Result<(), (String, String)> {
        let l = &self.lattice;
        for a in 0..l.len() {
            for b in 0..l.len() {
                let meet = l.meet2(a, b);
                if self.tensor(a, self.lresid(a, b)) != meet || self.tensor(self.rresid(b, a), a) != meet {
                    return Err((l.id(a).to_string(), l.id(b).to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Builds the quantaloid `B_Q` of a divisible quantale: objects are the
/// elements of `Q`, `hom(x, y)` is the down-set of `x ∧ y`, composition is
/// `b ∘ a = b & (y \ a)`, and `1_x = x`.
pub fn b_q(q: &Quantale) -> Result<Quantaloid, ValidationError> {
    if let Err((a, b)) = q.check_divisible() {
        return Err(ValidationError::NotDivisible(a, b));
    }
    let l = q.lattice();
    let n = l.len();
    let objects: Vec<String> = l.ids().to_vec();
    // hom(x, y) carries every a <= x ∧ y, as a sublattice of Q
    let members = |x: usize, y: usize| -> Vec<usize> {
        let cap = l.meet2(x, y);
        (0..n).filter(|&a| l.leq(a, cap)).collect()
    };
    let mut homs = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let mem = members(x, y);
            let ids: Vec<String> = mem.iter().map(|&a| l.id(a).to_string()).collect();
            let mut pairs = Vec::new();
            for &a in &mem {
                for &b in &mem {
                    if l.leq(a, b) {
                        pairs.push((l.id(a).to_string(), l.id(b).to_string()));
                    }
                }
            }
            row.push(FiniteLattice::validate(ids, &pairs)?);
        }
        homs.push(row);
    }
    let mut comp = vec![vec![vec![Vec::new(); n]; n]; n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let from = members(x, y);
                let mid = members(y, z);
                let out = &homs[x][z];
                let mut table = vec![vec![0usize; from.len()]; mid.len()];
                for (bi, &b) in mid.iter().enumerate() {
                    for (ai, &a) in from.iter().enumerate() {
                        let val = q.tensor(b, q.lresid(y, a));
                        table[bi][ai] = out
                            .index_of(l.id(val))
                            .ok_or_else(|| ValidationError::ForeignElement(l.id(val).to_string()))?;
                    }
                }
                comp[x][y][z] = table;
            }
        }
    }
    let identity: Vec<usize> = (0..n)
        .map(|x| homs[x][x].index_of(l.id(x)).expect("x <= x ∧ x"))
        .collect();
    Quantaloid::validate(objects, homs, comp, identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn boolean2_suspension_is_valid() {
        let q = models::boolean2();
        assert_eq!(q.suspension().objects(), &["*".to_string()]);
    }

    #[test]
    fn broken_unit_law_is_rejected() {
        let l = FiniteLattice::chain(vec!["0".into(), "1".into()]);
        // 1 & 1 = 0 contradicts 1 being the unit
        let tensor = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(
            Quantale::validate(l, tensor, 1),
            Err(ValidationError::UnitLawViolated("1: * -> *".into()))
        );
    }

    #[test]
    fn residuals_in_boolean2() {
        let q = models::boolean2();
        // v ↙ u computed as join over satisfying elements
        assert_eq!(q.suspension().lres(0, 0, 0, 0, 1), 0); // 0 ↙ 1 = 0
        assert_eq!(q.suspension().lres(0, 0, 0, 0, 0), 1); // anything ↙ 0 = 1
        assert_eq!(q.suspension().lres(0, 0, 0, 1, 0), 1);
    }

    #[test]
    fn residual_adjunction_pointwise() {
        for q in [models::chain_quantale(3, models::Tensor::Godel), models::chain_quantale(3, models::Tensor::Lukasiewicz)] {
            let s = q.suspension();
            let n = q.lattice().len();
            for u in 0..n {
                for v in 0..n {
                    let lr = s.lres(0, 0, 0, v, u);
                    let rr = s.rres(0, 0, 0, u, v);
                    for w in 0..n {
                        assert_eq!(q.lattice().leq(s.compose(0, 0, 0, w, u), v), q.lattice().leq(w, lr));
                        assert_eq!(q.lattice().leq(s.compose(0, 0, 0, u, w), v), q.lattice().leq(w, rr));
                    }
                }
            }
        }
    }

    #[test]
    fn godel_rres_example() {
        let q = models::chain_quantale(3, models::Tensor::Godel);
        // u ↘ v with u = 1/2, v = 0: largest w with min(1/2, w) <= 0
        let half = q.lattice().index_of("0.5").unwrap();
        let zero = q.lattice().index_of("0").unwrap();
        assert_eq!(q.suspension().rres(0, 0, 0, half, zero), zero);
    }

    #[test]
    fn divisibility_verdicts() {
        assert!(models::chain_quantale(3, models::Tensor::Godel).check_divisible().is_ok());
        assert!(models::chain_quantale(3, models::Tensor::Lukasiewicz).check_divisible().is_ok());
        // nilpotent minimum on the 4-chain: x & y = 0 when x + y <= 1,
        // else min; fails divisibility at (b, a)
        let l = FiniteLattice::chain(vec!["0".into(), "a".into(), "b".into(), "1".into()]);
        let tensor = (0..4)
            .map(|x| (0..4).map(|y| if x + y <= 3 { 0 } else { x.min(y) }).collect())
            .collect();
        let q = Quantale::validate(l, tensor, 3).unwrap();
        let witness = q.check_divisible().unwrap_err();
        assert_eq!(witness, ("b".into(), "a".into()));
    }

    #[test]
    fn b_q_of_boolean2() {
        let b = b_q(&models::boolean2()).unwrap();
        assert_eq!(b.objects().len(), 2);
        assert_eq!(b.hom(0, 0).ids(), &["0".to_string()]);
        assert_eq!(b.hom(1, 1).ids(), &["0".to_string(), "1".to_string()]);
    }

    #[test]
    fn b_g3_composition_and_identity() {
        let g3 = models::chain_quantale(3, models::Tensor::Godel);
        let b = b_q(&g3).unwrap();
        let one = b.object_index("1").unwrap();
        let half = b.object_index("0.5").unwrap();
        // a = 1/2 in hom(1, 1/2), b = 1/2 in hom(1/2, 1): b ∘ a = min(1/2, 1/2 \ 1/2) = 1/2
        let a = b.hom(one, half).index_of("0.5").unwrap();
        let bb = b.hom(half, one).index_of("0.5").unwrap();
        let res = b.compose(one, half, one, bb, a);
        assert_eq!(b.hom(one, one).id(res), "0.5");
        // identity at 1/2 is 1/2, the top of hom(1/2, 1/2)
        assert_eq!(b.hom(half, half).id(b.identity(half)), "0.5");
        assert_eq!(b.identity(half), b.hom(half, half).top());
    }
}
