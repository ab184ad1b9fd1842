//! Q-distributors: dense matrices of quantaloid arrows with the bimodule
//! inequality, their composition, residuals, and functor (co)graphs.

use std::sync::Arc;

use crate::category::{QCategory, QFunctor};
use crate::error::ValidationError;

/// A validated Q-distributor `A ⇸ B`, stored as the dense matrix
/// `matrix[x][y] = φ(x, y): tx -> ty` for `x ∈ A`, `y ∈ B`.
#[derive(Debug, Clone, PartialEq)]
pub struct QDistributor {
    dom: Arc<QCategory>,
    cod: Arc<QCategory>,
    matrix: Vec<Vec<usize>>,
}

impl QDistributor {
    pub fn validate(
        dom: Arc<QCategory>,
        cod: Arc<QCategory>,
        matrix: Vec<Vec<usize>>,
    ) -> Result<Self, ValidationError> {
        if dom.ambient() != cod.ambient() {
            return Err(ValidationError::TypeMismatch("distributor endpoints live over different quantaloids".into()));
        }
        if matrix.len() != dom.len() || matrix.iter().any(|row| row.len() != cod.len()) {
            return Err(ValidationError::PartialTable("distributor matrix must be total".into()));
        }
        let q = dom.ambient();
        for x in 0..dom.len() {
            for y in 0..cod.len() {
                if matrix[x][y] >= q.hom(dom.typ(x), cod.typ(y)).len() {
                    return Err(ValidationError::ForeignElement(format!(
                        "matrix({}, {})",
                        dom.id(x),
                        cod.id(y)
                    )));
                }
            }
        }
        // B(y', y) ∘ φ(x', y') ∘ A(x, x') <= φ(x, y)
        for x in 0..dom.len() {
            for x1 in 0..dom.len() {
                for y1 in 0..cod.len() {
                    for y in 0..cod.len() {
                        let (tx, tx1, ty1, ty) = (dom.typ(x), dom.typ(x1), cod.typ(y1), cod.typ(y));
                        let inner = q.compose(tx, tx1, ty1, matrix[x1][y1], dom.hom(x, x1));
                        let lhs = q.compose(tx, ty1, ty, cod.hom(y1, y), inner);
                        if !q.hom(tx, ty).leq(lhs, matrix[x][y]) {
                            return Err(ValidationError::BimoduleInequalityViolated(
                                dom.id(x).to_string(),
                                dom.id(x1).to_string(),
                                cod.id(y1).to_string(),
                                cod.id(y).to_string(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(QDistributor { dom, cod, matrix })
    }

    /// The identity distributor on `A`: the hom-arrows of `A`.
    pub fn identity(cat: Arc<QCategory>) -> QDistributor {
        let matrix = (0..cat.len())
            .map(|x| (0..cat.len()).map(|y| cat.hom(x, y)).collect())
            .collect();
        QDistributor { dom: cat.clone(), cod: cat, matrix }
    }

    pub fn dom(&self) -> &Arc<QCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<QCategory> {
        &self.cod
    }

    pub fn at(&self, x: usize, y: usize) -> usize {
        self.matrix[x][y]
    }

    /// Pointwise order in the hom-lattices; endpoints must match.
    pub fn leq(&self, other: &QDistributor) -> bool {
        debug_assert_eq!(self.dom, other.dom);
        debug_assert_eq!(self.cod, other.cod);
        let q = self.dom.ambient();
        (0..self.dom.len()).all(|x| {
            (0..self.cod.len()).all(|y| {
                q.hom(self.dom.typ(x), self.cod.typ(y)).leq(self.matrix[x][y], other.matrix[x][y])
            })
        })
    }

    /// `ψ ∘ φ` for `φ = self: A ⇸ B` and `ψ: B ⇸ C`:
    /// `(ψ ∘ φ)(x, z) = ⋁_y ψ(y, z) ∘ φ(x, y)`.
    pub fn then(&self, psi: &QDistributor) -> Result<QDistributor, ValidationError> {
        if self.cod != psi.dom {
            return Err(ValidationError::TypeMismatch("distributor composition endpoints do not match".into()));
        }
        let q = self.dom.ambient();
        let mid = &self.cod;
        let matrix = (0..self.dom.len())
            .map(|x| {
                (0..psi.cod.len())
                    .map(|z| {
                        let (tx, tz) = (self.dom.typ(x), psi.cod.typ(z));
                        q.hom(tx, tz).join((0..mid.len()).map(|y| {
                            q.compose(tx, mid.typ(y), tz, psi.matrix[y][z], self.matrix[x][y])
                        }))
                    })
                    .collect()
            })
            .collect();
        Ok(QDistributor { dom: self.dom.clone(), cod: psi.cod.clone(), matrix })
    }

    /// `φ ↘ ψ: C ⇸ A` for `φ = self: A ⇸ B` and `ψ: C ⇸ B`:
    /// `(φ ↘ ψ)(c, a) = ⋀_b φ(a, b) ↘ ψ(c, b)`.
    pub fn rres(&self, psi: &QDistributor) -> Result<QDistributor, ValidationError> {
        if self.cod != psi.cod {
            return Err(ValidationError::TypeMismatch("↘ requires a common codomain".into()));
        }
        let q = self.dom.ambient();
        let (a, b, c) = (&self.dom, &self.cod, &psi.dom);
        let matrix = (0..c.len())
            .map(|ci| {
                (0..a.len())
                    .map(|ai| {
                        let (tc, ta) = (c.typ(ci), a.typ(ai));
                        q.hom(tc, ta).meet((0..b.len()).map(|bi| {
                            q.rres(tc, ta, b.typ(bi), self.matrix[ai][bi], psi.matrix[ci][bi])
                        }))
                    })
                    .collect()
            })
            .collect();
        Ok(QDistributor { dom: psi.dom.clone(), cod: self.dom.clone(), matrix })
    }

    /// `φ ↙ γ: C ⇸ B` for `φ = self: A ⇸ B` and `γ: A ⇸ C`:
    /// `(φ ↙ γ)(c, b) = ⋀_a φ(a, b) ↙ γ(a, c)`.
    pub fn lres(&self, gamma: &QDistributor) -> Result<QDistributor, ValidationError> {
        if self.dom != gamma.dom {
            return Err(ValidationError::TypeMismatch("↙ requires a common domain".into()));
        }
        let q = self.dom.ambient();
        let (a, b, c) = (&self.dom, &self.cod, &gamma.cod);
        let matrix = (0..c.len())
            .map(|ci| {
                (0..b.len())
                    .map(|bi| {
                        let (tc, tb) = (c.typ(ci), b.typ(bi));
                        q.hom(tc, tb).meet((0..a.len()).map(|ai| {
                            q.lres(a.typ(ai), tc, tb, self.matrix[ai][bi], gamma.matrix[ai][ci])
                        }))
                    })
                    .collect()
            })
            .collect();
        Ok(QDistributor { dom: gamma.cod.clone(), cod: self.cod.clone(), matrix })
    }

    /// Pointwise join of parallel distributors.
    pub fn join(&self, other: &QDistributor) -> QDistributor {
        debug_assert_eq!(self.dom, other.dom);
        debug_assert_eq!(self.cod, other.cod);
        let q = self.dom.ambient();
        let matrix = (0..self.dom.len())
            .map(|x| {
                (0..self.cod.len())
                    .map(|y| {
                        q.hom(self.dom.typ(x), self.cod.typ(y)).join2(self.matrix[x][y], other.matrix[x][y])
                    })
                    .collect()
            })
            .collect();
        QDistributor { dom: self.dom.clone(), cod: self.cod.clone(), matrix }
    }

    /// Pointwise meet of parallel distributors.
    pub fn meet(&self, other: &QDistributor) -> QDistributor {
        debug_assert_eq!(self.dom, other.dom);
        debug_assert_eq!(self.cod, other.cod);
        let q = self.dom.ambient();
        let matrix = (0..self.dom.len())
            .map(|x| {
                (0..self.cod.len())
                    .map(|y| {
                        q.hom(self.dom.typ(x), self.cod.typ(y)).meet2(self.matrix[x][y], other.matrix[x][y])
                    })
                    .collect()
            })
            .collect();
        QDistributor { dom: self.dom.clone(), cod: self.cod.clone(), matrix }
    }
}

/// The graph `F♮: A ⇸ B` of `F: A -> B`, `F♮(x, y) = B(Fx, y)`.
pub fn graph(f: &QFunctor) -> QDistributor {
    let (a, b) = (f.dom(), f.cod());
    let matrix = (0..a.len())
        .map(|x| (0..b.len()).map(|y| b.hom(f.apply(x), y)).collect())
        .collect();
    QDistributor { dom: a.clone(), cod: b.clone(), matrix }
}

/// The cograph `F♮: B ⇸ A` of `F: A -> B`, with `(y, x) ↦ B(y, Fx)`.
pub fn cograph(f: &QFunctor) -> QDistributor {
    let (a, b) = (f.dom(), f.cod());
    let matrix = (0..b.len())
        .map(|y| (0..a.len()).map(|x| b.hom(y, f.apply(x))).collect())
        .collect();
    QDistributor { dom: b.clone(), cod: a.clone(), matrix }
}
