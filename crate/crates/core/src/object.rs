//! Object syntax shared by every model.
//!
//! An [`ObjectExpr`] is a finite tree over model-specific atoms. Equality is
//! purely structural: `A ⊗ (B ⊗ C)` and `(A ⊗ B) ⊗ C` are different
//! expressions even in a model that interprets them identically. Models decide
//! interpretation equality on their own.

use std::fmt;
use std::sync::Arc;

use crate::model::cplane::CNum;
use crate::model::fmat::FinitenessSpace;

/// A model-specific base object.
#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    /// A finite dimension, read by `Mat` directly and by `FMat` through the
    /// inclusion `n ↦ ({0..n-1}, P, P)`.
    Dim(usize),
    /// A complex number, the objects of the discrete plane model.
    Num(CNum),
    /// An explicit finiteness space.
    Space(Arc<FinitenessSpace>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObjectExpr {
    Base(Atom),
    Tensor(Box<ObjectExpr>, Box<ObjectExpr>),
    Par(Box<ObjectExpr>, Box<ObjectExpr>),
    TensorUnit,
    ParUnit,
    Dagger(Box<ObjectExpr>),
    Dual(Box<ObjectExpr>),
}

impl ObjectExpr {
    pub fn dim(n: usize) -> Self {
        ObjectExpr::Base(Atom::Dim(n))
    }

    pub fn num(z: CNum) -> Self {
        ObjectExpr::Base(Atom::Num(z))
    }

    pub fn space(s: FinitenessSpace) -> Self {
        ObjectExpr::Base(Atom::Space(Arc::new(s)))
    }

    pub fn top() -> Self {
        ObjectExpr::TensorUnit
    }

    pub fn bot() -> Self {
        ObjectExpr::ParUnit
    }

    pub fn tensor(&self, other: &ObjectExpr) -> Self {
        ObjectExpr::Tensor(Box::new(self.clone()), Box::new(other.clone()))
    }

    pub fn par(&self, other: &ObjectExpr) -> Self {
        ObjectExpr::Par(Box::new(self.clone()), Box::new(other.clone()))
    }

    pub fn dag(&self) -> Self {
        ObjectExpr::Dagger(Box::new(self.clone()))
    }

    pub fn dual(&self) -> Self {
        ObjectExpr::Dual(Box::new(self.clone()))
    }

    /// Splits `L ⊕ R` into its two halves.
    pub fn as_par(&self) -> Option<(&ObjectExpr, &ObjectExpr)> {
        match self {
            ObjectExpr::Par(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn as_tensor(&self) -> Option<(&ObjectExpr, &ObjectExpr)> {
        match self {
            ObjectExpr::Tensor(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ObjectExpr::Base(_) | ObjectExpr::TensorUnit | ObjectExpr::ParUnit => 1,
            ObjectExpr::Tensor(l, r) | ObjectExpr::Par(l, r) => 1 + l.depth().max(r.depth()),
            ObjectExpr::Dagger(x) | ObjectExpr::Dual(x) => 1 + x.depth(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Dim(n) => write!(f, "{n}"),
            Atom::Num(z) => write!(f, "({z})"),
            Atom::Space(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectExpr::Base(a) => write!(f, "{a}"),
            ObjectExpr::Tensor(l, r) => write!(f, "({l} ⊗ {r})"),
            ObjectExpr::Par(l, r) => write!(f, "({l} ⊕ {r})"),
            ObjectExpr::TensorUnit => write!(f, "⊤"),
            ObjectExpr::ParUnit => write!(f, "⊥"),
            ObjectExpr::Dagger(x) => write!(f, "{x}†"),
            ObjectExpr::Dual(x) => write!(f, "{x}*"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_structural() {
        let a = ObjectExpr::dim(2);
        let b = ObjectExpr::dim(3);
        let c = ObjectExpr::dim(1);
        let left = a.tensor(&b.tensor(&c));
        let right = a.tensor(&b).tensor(&c);
        assert_ne!(left, right);
        assert_eq!(left, a.tensor(&b.tensor(&c)));
        assert_ne!(a.dag().dag(), a);
    }

    #[test]
    fn display_nests() {
        let a = ObjectExpr::dim(2);
        assert_eq!(a.par(&ObjectExpr::bot()).dag().to_string(), "(2 ⊕ ⊥)†");
        assert_eq!(a.dual().tensor(&ObjectExpr::top()).to_string(), "(2* ⊗ ⊤)");
        assert_eq!(a.dag().dag().depth(), 3);
    }
}
