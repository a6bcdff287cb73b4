//! Finiteness spaces `(X, A, B)` with `B = A^⊥` and `A = B^⊥`, where
//! `a ⊥ b` means `a ∩ b` is finite.
//!
//! Carriers are either finite label sets or the symbolic countable set `ω`.
//! Over `ω` only the two tags `FIN` (finite subsets) and `ALL` (all subsets)
//! are expressible, plus explicit finite families of finite sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Subset = BTreeSet<u64>;

/// Largest set whose subsets are enumerated when closing a family downward.
pub const MAX_CLOSURE_SET: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndexSet {
    /// Distinct labels; the position of a label is its index here.
    Finite(Vec<u64>),
    /// The natural numbers, handled symbolically.
    Omega,
}

impl IndexSet {
    pub fn finite(labels: Vec<u64>) -> Result<Self> {
        let distinct: BTreeSet<u64> = labels.iter().copied().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidValue("index labels must be distinct".into()));
        }
        Ok(IndexSet::Finite(labels))
    }

    pub fn range(n: usize) -> Self {
        IndexSet::Finite((0..n as u64).collect())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, IndexSet::Finite(_))
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            IndexSet::Finite(l) => Some(l.len()),
            IndexSet::Omega => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn contains(&self, x: u64) -> bool {
        match self {
            IndexSet::Finite(l) => l.contains(&x),
            IndexSet::Omega => true,
        }
    }

    pub fn position(&self, x: u64) -> Option<usize> {
        match self {
            IndexSet::Finite(l) => l.iter().position(|&y| y == x),
            IndexSet::Omega => usize::try_from(x).ok(),
        }
    }

    pub fn label(&self, i: usize) -> Option<u64> {
        match self {
            IndexSet::Finite(l) => l.get(i).copied(),
            IndexSet::Omega => Some(i as u64),
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        match self {
            IndexSet::Finite(l) => Some(l),
            IndexSet::Omega => None,
        }
    }

    fn as_subset(&self) -> Option<Subset> {
        self.labels().map(|l| l.iter().copied().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetFamily {
    /// All finite subsets.
    Fin,
    /// All subsets.
    All,
    /// An explicit finite family of finite sets, with a flag recording
    /// whether it is closed downward.
    Explicit { sets: BTreeSet<Subset>, closed: bool },
}

impl SetFamily {
    /// The downward closure of `sets`.
    pub fn explicit<I: IntoIterator<Item = Subset>>(sets: I) -> Result<Self> {
        let mut closed = BTreeSet::new();
        for s in sets {
            if s.len() > MAX_CLOSURE_SET {
                return Err(Error::TooLarge(1 << s.len().min(63)));
            }
            let elems: Vec<u64> = s.iter().copied().collect();
            for mask in 0u64..(1u64 << elems.len()) {
                let sub: Subset = elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                closed.insert(sub);
            }
        }
        Ok(SetFamily::Explicit { sets: closed, closed: true })
    }

    /// A family taken literally, without closing it.
    pub fn unclosed<I: IntoIterator<Item = Subset>>(sets: I) -> Self {
        SetFamily::Explicit {
            sets: sets.into_iter().collect(),
            closed: false,
        }
    }

    /// Membership of a finite set.
    pub fn contains(&self, s: &Subset) -> bool {
        match self {
            SetFamily::Fin | SetFamily::All => true,
            SetFamily::Explicit { sets, .. } => sets.contains(s),
        }
    }

    /// Canonical form relative to a carrier: over a finite carrier both tags
    /// and every closed family containing the carrier denote `P(X)`.
    pub fn normalized(&self, x: &IndexSet) -> SetFamily {
        match (x, self) {
            (IndexSet::Finite(_), SetFamily::Fin | SetFamily::All) => SetFamily::All,
            (IndexSet::Finite(_), SetFamily::Explicit { sets, closed: true }) => {
                let full = x.as_subset().unwrap_or_default();
                if sets.contains(&full) {
                    SetFamily::All
                } else {
                    self.clone()
                }
            }
            _ => self.clone(),
        }
    }

    pub fn equivalent(&self, other: &SetFamily, x: &IndexSet) -> bool {
        self.normalized(x) == other.normalized(x)
    }

    fn tag(&self) -> String {
        match self {
            SetFamily::Fin => "fin".into(),
            SetFamily::All => "all".into(),
            SetFamily::Explicit { sets, closed } => {
                format!("{}{}", sets.len(), if *closed { "↓" } else { "?" })
            }
        }
    }
}

/// `F^⊥ = { b | ∀a ∈ F. a ∩ b finite }`.
pub fn perp(f: &SetFamily, x: &IndexSet) -> SetFamily {
    perp_with(f, x, true)
}

/// As [`perp`]; with `closure == false` the finite case returns the bare
/// family `{X}` instead of its downward closure `P(X)`.
pub fn perp_with(f: &SetFamily, x: &IndexSet, closure: bool) -> SetFamily {
    match x {
        IndexSet::Finite(_) => {
            if closure {
                SetFamily::All
            } else {
                SetFamily::unclosed([x.as_subset().unwrap_or_default()])
            }
        }
        IndexSet::Omega => match f {
            SetFamily::All => SetFamily::Fin,
            // every set meets a finite set, or a finite family of finite sets,
            // in finitely many points
            SetFamily::Fin | SetFamily::Explicit { .. } => SetFamily::All,
        },
    }
}

#[derive(Debug, Clone)]
pub struct FinitenessSpace {
    x: IndexSet,
    a: SetFamily,
    b: SetFamily,
}

impl FinitenessSpace {
    /// Validated construction.
    pub fn new(x: IndexSet, a: SetFamily, b: SetFamily) -> Result<Self> {
        let s = FinitenessSpace { x, a, b };
        if !check_finiteness_space(&s.x, &s.a, &s.b) {
            return Err(Error::InvalidValue(format!("{s} is not a finiteness space")));
        }
        Ok(s)
    }

    pub fn new_unchecked(x: IndexSet, a: SetFamily, b: SetFamily) -> Self {
        FinitenessSpace { x, a, b }
    }

    /// `(X, P(X), P(X))`.
    pub fn finite(labels: Vec<u64>) -> Result<Self> {
        Ok(FinitenessSpace {
            x: IndexSet::finite(labels)?,
            a: SetFamily::All,
            b: SetFamily::All,
        })
    }

    /// `({0, …, n−1}, P, P)`, the image of dimension `n`.
    pub fn range(n: usize) -> Self {
        FinitenessSpace {
            x: IndexSet::range(n),
            a: SetFamily::All,
            b: SetFamily::All,
        }
    }

    /// `(ω, FIN, ALL)`.
    pub fn omega_fin() -> Self {
        FinitenessSpace {
            x: IndexSet::Omega,
            a: SetFamily::Fin,
            b: SetFamily::All,
        }
    }

    /// `(ω, ALL, FIN)`.
    pub fn omega_all() -> Self {
        FinitenessSpace {
            x: IndexSet::Omega,
            a: SetFamily::All,
            b: SetFamily::Fin,
        }
    }

    pub fn carrier(&self) -> &IndexSet {
        &self.x
    }

    pub fn family_a(&self) -> &SetFamily {
        &self.a
    }

    pub fn family_b(&self) -> &SetFamily {
        &self.b
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite()
    }

    pub fn size(&self) -> Option<usize> {
        self.x.len()
    }

    /// `(X, A, B)† = (X, B, A)`.
    pub fn dagger(&self) -> Self {
        FinitenessSpace {
            x: self.x.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Product space on finite carriers, labelled by position
    /// `pos(x)·|Y| + pos(y)`.
    pub fn product(&self, other: &FinitenessSpace) -> Result<Self> {
        match (self.size(), other.size()) {
            (Some(n), Some(m)) => Ok(FinitenessSpace::range(n * m)),
            _ => Err(Error::unsupported("fmat", "products of infinite finiteness spaces")),
        }
    }

    pub fn is_valid(&self) -> bool {
        check_finiteness_space(&self.x, &self.a, &self.b)
    }
}

impl PartialEq for FinitenessSpace {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.a.equivalent(&other.a, &self.x) && self.b.equivalent(&other.b, &self.x)
    }
}

impl fmt::Display for FinitenessSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.x {
            IndexSet::Finite(labels) => {
                let l: Vec<String> = labels.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", l.join(","))?;
            }
            IndexSet::Omega => write!(f, "ω")?,
        }
        let (a, b) = (self.a.normalized(&self.x), self.b.normalized(&self.x));
        if !(self.x.is_finite() && a == SetFamily::All && b == SetFamily::All) {
            write!(f, "[{},{}]", a.tag(), b.tag())?;
        }
        Ok(())
    }
}

/// `B = A^⊥` and `A = B^⊥`.
pub fn check_finiteness_space(x: &IndexSet, a: &SetFamily, b: &SetFamily) -> bool {
    check_finiteness_space_with(x, a, b, true)
}

pub fn check_finiteness_space_with(x: &IndexSet, a: &SetFamily, b: &SetFamily, closure: bool) -> bool {
    perp_with(a, x, closure).equivalent(b, x) && perp_with(b, x, closure).equivalent(a, x)
}

/// Checks that a finite relation `R ⊆ X × Y` is a finiteness relation:
/// `aR ∈ A'` for every `a ∈ A` and `Rb' ∈ B` for every `b' ∈ B'`.
pub fn check_finiteness_relation(r: &BTreeSet<(u64, u64)>, src: &FinitenessSpace, tgt: &FinitenessSpace) -> bool {
    if r.iter().any(|&(x, y)| !src.x.contains(x) || !tgt.x.contains(y)) {
        return false;
    }
    let forward: Vec<(u64, u64)> = r.iter().copied().collect();
    let backward: Vec<(u64, u64)> = r.iter().map(|&(x, y)| (y, x)).collect();
    images_land(&forward, &src.a, &tgt.a) && images_land(&backward, &tgt.b, &src.b)
}

/// For every `s` in `from`, the image of `s` under `rel` lies in `into`.
fn images_land(rel: &[(u64, u64)], from: &SetFamily, into: &SetFamily) -> bool {
    let image = |s: &dyn Fn(u64) -> bool| -> Subset {
        rel.iter().filter(|(x, _)| s(*x)).map(|&(_, y)| y).collect()
    };
    match from {
        // the largest image comes from the (finite) domain of the relation,
        // and `into` is closed downward
        SetFamily::Fin | SetFamily::All => match into {
            SetFamily::Explicit { closed: false, .. } => {
                let dom: Vec<u64> = rel.iter().map(|&(x, _)| x).collect::<Subset>().into_iter().collect();
                if dom.len() > MAX_CLOSURE_SET {
                    return into.contains(&image(&|_| true));
                }
                (0u64..(1u64 << dom.len())).all(|mask| {
                    let chosen: Subset = dom
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &x)| x)
                        .collect();
                    into.contains(&image(&|x| chosen.contains(&x)))
                })
            }
            _ => into.contains(&image(&|_| true)),
        },
        SetFamily::Explicit { sets, .. } => sets.iter().all(|s| into.contains(&image(&|x| s.contains(&x)))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u64]) -> Subset {
        xs.iter().copied().collect()
    }

    #[test]
    fn perp_of_finite_carrier_is_power_set() {
        let x = IndexSet::range(3);
        let f = SetFamily::explicit([set(&[]), set(&[0])]).unwrap();
        assert!(perp(&f, &x).equivalent(&SetFamily::All, &x));
    }

    #[test]
    fn perp_on_omega_swaps_tags() {
        assert_eq!(perp(&SetFamily::Fin, &IndexSet::Omega), SetFamily::All);
        assert_eq!(perp(&SetFamily::All, &IndexSet::Omega), SetFamily::Fin);
        let twice = perp(&perp(&SetFamily::Fin, &IndexSet::Omega), &IndexSet::Omega);
        assert_eq!(twice, SetFamily::Fin);
    }

    #[test]
    fn finiteness_space_checks() {
        let x = IndexSet::range(3);
        assert!(check_finiteness_space(&x, &SetFamily::All, &SetFamily::All));
        let small = SetFamily::explicit([set(&[0, 1])]).unwrap();
        assert!(!check_finiteness_space(&x, &small, &SetFamily::All));
        assert!(check_finiteness_space(&IndexSet::Omega, &SetFamily::Fin, &SetFamily::All));
        assert!(!check_finiteness_space(&IndexSet::Omega, &SetFamily::All, &SetFamily::All));
    }

    #[test]
    fn skipping_closure_breaks_finite_spaces() {
        let x = IndexSet::range(2);
        assert!(!check_finiteness_space_with(&x, &SetFamily::All, &SetFamily::All, false));
    }

    #[test]
    fn explicit_families_are_closed_downward() {
        let f = SetFamily::explicit([set(&[1, 2])]).unwrap();
        for s in [set(&[]), set(&[1]), set(&[2]), set(&[1, 2])] {
            assert!(f.contains(&s));
        }
        assert!(!f.contains(&set(&[3])));
    }

    #[test]
    fn relations() {
        let fin = FinitenessSpace::omega_fin();
        assert!(check_finiteness_relation(&BTreeSet::new(), &fin, &fin));
        let r: BTreeSet<(u64, u64)> = [(0, 5), (3, 5), (7, 1)].into_iter().collect();
        assert!(check_finiteness_relation(&r, &fin, &fin));
        let (s, t) = (FinitenessSpace::range(3), FinitenessSpace::range(2));
        let r: BTreeSet<(u64, u64)> = [(0, 1), (2, 0)].into_iter().collect();
        assert!(check_finiteness_relation(&r, &s, &t));
        let outside: BTreeSet<(u64, u64)> = [(9, 0)].into_iter().collect();
        assert!(!check_finiteness_relation(&outside, &s, &t));
    }

    #[test]
    fn explicit_target_family_restricts_relations() {
        let x = IndexSet::range(3);
        let narrow = FinitenessSpace::new_unchecked(x.clone(), SetFamily::explicit([set(&[0])]).unwrap(), SetFamily::All);
        let wide = FinitenessSpace::range(3);
        let r: BTreeSet<(u64, u64)> = [(0, 1)].into_iter().collect();
        assert!(!check_finiteness_relation(&r, &wide, &narrow));
        let r: BTreeSet<(u64, u64)> = [(2, 0)].into_iter().collect();
        assert!(check_finiteness_relation(&r, &wide, &narrow));
    }

    #[test]
    fn display() {
        assert_eq!(FinitenessSpace::finite(vec![4, 1]).unwrap().to_string(), "{4,1}");
        assert_eq!(FinitenessSpace::omega_fin().to_string(), "ω[fin,all]");
    }
}
