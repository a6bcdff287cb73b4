//! Names of the structural morphisms of a mixed unitary category, with their
//! canonical typing.
//!
//! Typing is model independent: a name plus its object arguments fixes the
//! domain and codomain as [`ObjectExpr`]s. Models only supply payloads.
//! The functor `M` from the unitary subcategory is the identity on object
//! syntax, so `M(A)` is written as `A` and the Frobenius strengths of `M`
//! are typed as endo-like maps between syntactically equal objects.

use std::fmt;

use crate::error::{Error, Result};
use crate::object::ObjectExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructuralMapName {
    /// `a⊗ : A ⊗ (B ⊗ C) → (A ⊗ B) ⊗ C`
    AssocTensor,
    /// `a⊕ : A ⊕ (B ⊕ C) → (A ⊕ B) ⊕ C`
    AssocPar,
    /// `u⊗ᴸ : ⊤ ⊗ A → A`
    UnitTensorLeft,
    /// `u⊗ᴿ : A ⊗ ⊤ → A`
    UnitTensorRight,
    /// `u⊕ᴸ : ⊥ ⊕ A → A`
    UnitParLeft,
    /// `u⊕ᴿ : A ⊕ ⊥ → A`
    UnitParRight,
    /// `c⊗ : A ⊗ B → B ⊗ A`
    SymTensor,
    /// `c⊕ : A ⊕ B → B ⊕ A`
    SymPar,
    /// `δᴸ : A ⊗ (B ⊕ C) → (A ⊗ B) ⊕ C`
    DistLeft,
    /// `δᴿ : (A ⊕ B) ⊗ C → A ⊕ (B ⊗ C)`
    DistRight,
    /// `m : ⊥ → ⊤`
    Mix,
    /// `mx : A ⊗ B → A ⊕ B`
    Mixor,
    /// `λ⊗ : A† ⊗ B† → (A ⊕ B)†`
    LaxTensor,
    /// `λ⊕ : A† ⊕ B† → (A ⊗ B)†`
    LaxPar,
    /// `λ⊤ : ⊤ → ⊥†`
    LaxTop,
    /// `λ⊥ : ⊥ → ⊤†`
    LaxBot,
    /// `ι : A → A††`
    Involutor,
    /// `φ : A → A†`, only on unitary objects.
    Unitary,
    /// `η : ⊤ → A* ⊕ A`
    DualUnit,
    /// `ε : A ⊗ A* → ⊥`
    DualCounit,
    /// `ρ : M(A†) → M(A)†`
    Preservator,
    /// `m⊤ : ⊤ → M(⊤)`
    StrengthTop,
    /// `m⊗ : M(A) ⊗ M(B) → M(A ⊗ B)`
    StrengthTensor,
    /// `n⊕ : M(A ⊕ B) → M(A) ⊕ M(B)`
    StrengthPar,
    /// `n⊥ : M(⊥) → ⊥`
    StrengthBot,
}

use StructuralMapName as S;

impl StructuralMapName {
    pub const ALL: [StructuralMapName; 25] = [
        S::AssocTensor,
        S::AssocPar,
        S::UnitTensorLeft,
        S::UnitTensorRight,
        S::UnitParLeft,
        S::UnitParRight,
        S::SymTensor,
        S::SymPar,
        S::DistLeft,
        S::DistRight,
        S::Mix,
        S::Mixor,
        S::LaxTensor,
        S::LaxPar,
        S::LaxTop,
        S::LaxBot,
        S::Involutor,
        S::Unitary,
        S::DualUnit,
        S::DualCounit,
        S::Preservator,
        S::StrengthTop,
        S::StrengthTensor,
        S::StrengthPar,
        S::StrengthBot,
    ];

    pub fn arity(self) -> usize {
        match self {
            S::Mix | S::LaxTop | S::LaxBot | S::StrengthTop | S::StrengthBot => 0,
            S::UnitTensorLeft
            | S::UnitTensorRight
            | S::UnitParLeft
            | S::UnitParRight
            | S::Involutor
            | S::Unitary
            | S::DualUnit
            | S::DualCounit
            | S::Preservator => 1,
            S::SymTensor
            | S::SymPar
            | S::Mixor
            | S::LaxTensor
            | S::LaxPar
            | S::StrengthTensor
            | S::StrengthPar => 2,
            S::AssocTensor | S::AssocPar | S::DistLeft | S::DistRight => 3,
        }
    }

    /// Whether the map has a (structural) inverse.
    pub fn invertible(self) -> bool {
        !matches!(self, S::DualUnit | S::DualCounit)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            S::AssocTensor => "a⊗",
            S::AssocPar => "a⊕",
            S::UnitTensorLeft => "u⊗L",
            S::UnitTensorRight => "u⊗R",
            S::UnitParLeft => "u⊕L",
            S::UnitParRight => "u⊕R",
            S::SymTensor => "c⊗",
            S::SymPar => "c⊕",
            S::DistLeft => "δL",
            S::DistRight => "δR",
            S::Mix => "m",
            S::Mixor => "mx",
            S::LaxTensor => "λ⊗",
            S::LaxPar => "λ⊕",
            S::LaxTop => "λ⊤",
            S::LaxBot => "λ⊥",
            S::Involutor => "ι",
            S::Unitary => "φ",
            S::DualUnit => "η",
            S::DualCounit => "ε",
            S::Preservator => "ρ",
            S::StrengthTop => "m⊤",
            S::StrengthTensor => "m⊗",
            S::StrengthPar => "n⊕",
            S::StrengthBot => "n⊥",
        }
    }

    /// Canonical `(domain, codomain)` for the given arguments.
    pub fn signature(self, args: &[ObjectExpr]) -> Result<(ObjectExpr, ObjectExpr)> {
        if args.len() != self.arity() {
            return Err(Error::ArityError {
                name: self.symbol().to_string(),
                expected: self.arity(),
                got: args.len(),
            });
        }
        let top = ObjectExpr::top();
        let bot = ObjectExpr::bot();
        Ok(match self {
            S::AssocTensor => {
                let (a, b, c) = (&args[0], &args[1], &args[2]);
                (a.tensor(&b.tensor(c)), a.tensor(b).tensor(c))
            }
            S::AssocPar => {
                let (a, b, c) = (&args[0], &args[1], &args[2]);
                (a.par(&b.par(c)), a.par(b).par(c))
            }
            S::UnitTensorLeft => (top.tensor(&args[0]), args[0].clone()),
            S::UnitTensorRight => (args[0].tensor(&top), args[0].clone()),
            S::UnitParLeft => (bot.par(&args[0]), args[0].clone()),
            S::UnitParRight => (args[0].par(&bot), args[0].clone()),
            S::SymTensor => (args[0].tensor(&args[1]), args[1].tensor(&args[0])),
            S::SymPar => (args[0].par(&args[1]), args[1].par(&args[0])),
            S::DistLeft => {
                let (a, b, c) = (&args[0], &args[1], &args[2]);
                (a.tensor(&b.par(c)), a.tensor(b).par(c))
            }
            S::DistRight => {
                let (a, b, c) = (&args[0], &args[1], &args[2]);
                (a.par(b).tensor(c), a.par(&b.tensor(c)))
            }
            S::Mix => (bot, top),
            S::Mixor => (args[0].tensor(&args[1]), args[0].par(&args[1])),
            S::LaxTensor => (
                args[0].dag().tensor(&args[1].dag()),
                args[0].par(&args[1]).dag(),
            ),
            S::LaxPar => (
                args[0].dag().par(&args[1].dag()),
                args[0].tensor(&args[1]).dag(),
            ),
            S::LaxTop => (top, bot.dag()),
            S::LaxBot => (bot, top.dag()),
            S::Involutor => (args[0].clone(), args[0].dag().dag()),
            S::Unitary => (args[0].clone(), args[0].dag()),
            S::DualUnit => (top, args[0].dual().par(&args[0])),
            S::DualCounit => (args[0].tensor(&args[0].dual()), bot),
            S::Preservator => (args[0].dag(), args[0].dag()),
            S::StrengthTop => (top.clone(), top),
            S::StrengthTensor => {
                let t = args[0].tensor(&args[1]);
                (t.clone(), t)
            }
            S::StrengthPar => {
                let p = args[0].par(&args[1]);
                (p.clone(), p)
            }
            S::StrengthBot => (bot.clone(), bot),
        })
    }

    /// Typing of the inverse map.
    pub fn inverse_signature(self, args: &[ObjectExpr]) -> Result<(ObjectExpr, ObjectExpr)> {
        if !self.invertible() {
            return Err(Error::TypingError(format!(
                "{} has no structural inverse",
                self.symbol()
            )));
        }
        let (dom, cod) = self.signature(args)?;
        Ok((cod, dom))
    }
}

impl fmt::Display for StructuralMapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_is_enforced() {
        let a = ObjectExpr::dim(2);
        let err = S::SymTensor.signature(std::slice::from_ref(&a)).unwrap_err();
        assert!(matches!(err, Error::ArityError { expected: 2, got: 1, .. }));
        assert!(S::Mix.signature(&[a]).is_err());
    }

    #[test]
    fn laxor_typing() {
        let a = ObjectExpr::dim(2);
        let b = ObjectExpr::dim(3);
        let (dom, cod) = S::LaxTensor.signature(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(dom, a.dag().tensor(&b.dag()));
        assert_eq!(cod, a.par(&b).dag());
        let (dom, cod) = S::LaxTensor.inverse_signature(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(cod, a.dag().tensor(&b.dag()));
        assert_eq!(dom, a.par(&b).dag());
    }

    #[test]
    fn duality_maps_have_no_inverse() {
        let a = ObjectExpr::dim(2);
        assert!(S::DualUnit.inverse_signature(std::slice::from_ref(&a)).is_err());
        assert!(S::DualCounit.inverse_signature(&[a]).is_err());
    }

    #[test]
    fn every_name_types_with_its_arity() {
        let args: Vec<ObjectExpr> = (1..=3).map(ObjectExpr::dim).collect();
        for name in S::ALL {
            let (dom, cod) = name.signature(&args[..name.arity()]).unwrap();
            assert!(dom.depth() >= 1 && cod.depth() >= 1, "{name}");
        }
    }
}
