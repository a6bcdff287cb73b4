//! Finitely supported complex matrices typed by finiteness spaces.

use std::collections::{BTreeMap, BTreeSet};

use super::space::{check_finiteness_relation, FinitenessSpace};
use crate::error::{Error, Result};
use crate::model::matc::{DenseMatrix, C64, MAX_ENTRIES};

/// Entries of smaller magnitude are not part of the support.
pub const SUPPORT_EPS: f64 = 1e-14;

/// A matrix `X × Y → ℂ` from `src = (X, A, B)` to `tgt = (Y, A', B')`,
/// keyed by `(x, y)` labels.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    src: FinitenessSpace,
    tgt: FinitenessSpace,
    entries: BTreeMap<(u64, u64), C64>,
}

impl SparseMatrix {
    /// Drops negligible entries and checks that the support is a finiteness
    /// relation.
    pub fn new(
        src: FinitenessSpace,
        tgt: FinitenessSpace,
        entries: impl IntoIterator<Item = ((u64, u64), C64)>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for ((x, y), z) in entries {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidValue(format!("non-finite entry at ({x}, {y})")));
            }
            if z.norm() >= SUPPORT_EPS {
                *kept.entry((x, y)).or_insert(C64::new(0.0, 0.0)) += z;
            }
        }
        kept.retain(|_, z: &mut C64| z.norm() >= SUPPORT_EPS);
        let m = SparseMatrix { src, tgt, entries: kept };
        if !check_finiteness_relation(&m.support(), &m.src, &m.tgt) {
            return Err(Error::SpaceMismatch(format!(
                "support is not a finiteness relation {} → {}",
                m.src, m.tgt
            )));
        }
        Ok(m)
    }

    pub fn zero(src: FinitenessSpace, tgt: FinitenessSpace) -> Self {
        SparseMatrix {
            src,
            tgt,
            entries: BTreeMap::new(),
        }
    }

    /// The identity on a finite space.
    pub fn identity(s: &FinitenessSpace) -> Result<Self> {
        let labels = s
            .carrier()
            .labels()
            .ok_or_else(|| Error::unsupported("fmat", "identity on an infinite carrier"))?;
        let entries = labels.iter().map(|&x| ((x, x), C64::new(1.0, 0.0)));
        SparseMatrix::new(s.clone(), s.clone(), entries)
    }

    pub fn src(&self) -> &FinitenessSpace {
        &self.src
    }

    pub fn tgt(&self) -> &FinitenessSpace {
        &self.tgt
    }

    pub fn entries(&self) -> &BTreeMap<(u64, u64), C64> {
        &self.entries
    }

    pub fn support(&self) -> BTreeSet<(u64, u64)> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, x: u64, y: u64) -> C64 {
        self.entries.get(&(x, y)).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Positional conversion to a `|Y| × |X|` matrix (column convention).
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        let (n, m) = match (self.src.size(), self.tgt.size()) {
            (Some(n), Some(m)) => (n, m),
            _ => return Err(Error::unsupported("fmat", "dense view of an infinite space")),
        };
        let mut d = DenseMatrix::zeros(m, n)?;
        for (&(x, y), &z) in &self.entries {
            let col = self.src.carrier().position(x).unwrap_or(usize::MAX);
            let row = self.tgt.carrier().position(y).unwrap_or(usize::MAX);
            d[(row, col)] = z;
        }
        Ok(d)
    }

    /// Reads a `|Y| × |X|` dense matrix positionally onto finite spaces.
    pub fn from_dense(src: FinitenessSpace, tgt: FinitenessSpace, d: &DenseMatrix) -> Result<Self> {
        let (xs, ys) = match (src.carrier().labels(), tgt.carrier().labels()) {
            (Some(xs), Some(ys)) => (xs.to_vec(), ys.to_vec()),
            _ => return Err(Error::unsupported("fmat", "dense matrix on an infinite space")),
        };
        if d.shape() != (ys.len(), xs.len()) {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} matrix for spaces of sizes {} → {}",
                d.rows(),
                d.cols(),
                xs.len(),
                ys.len()
            )));
        }
        let mut entries = Vec::new();
        for (col, &x) in xs.iter().enumerate() {
            for (row, &y) in ys.iter().enumerate() {
                entries.push(((x, y), d[(row, col)]));
            }
        }
        SparseMatrix::new(src, tgt, entries)
    }

    /// Kronecker product on finite spaces, with product labels
    /// `pos(x₁)·|X₂| + pos(x₂)`.
    pub fn kron(&self, other: &SparseMatrix) -> Result<Self> {
        let src = self.src.product(&other.src)?;
        let tgt = self.tgt.product(&other.tgt)?;
        if src.size().unwrap_or(0).max(tgt.size().unwrap_or(0)) > MAX_ENTRIES {
            return Err(Error::TooLarge(src.size().unwrap_or(0) * tgt.size().unwrap_or(0)));
        }
        let (n2, m2) = (other.src.size().unwrap_or(0) as u64, other.tgt.size().unwrap_or(0) as u64);
        let pos = |s: &FinitenessSpace, l: u64| s.carrier().position(l).unwrap_or(0) as u64;
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (&(x1, y1), &z1) in &self.entries {
            for (&(x2, y2), &z2) in &other.entries {
                let x = pos(&self.src, x1) * n2 + pos(&other.src, x2);
                let y = pos(&self.tgt, y1) * m2 + pos(&other.tgt, y2);
                entries.push(((x, y), z1 * z2));
            }
        }
        SparseMatrix::new(src, tgt, entries)
    }

    /// Largest entrywise difference over the union of supports.
    pub fn max_abs_diff(&self, other: &SparseMatrix) -> f64 {
        let keys: BTreeSet<(u64, u64)> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter()
            .map(|(x, y)| (self.get(x, y) - other.get(x, y)).norm())
            .fold(0.0, f64::max)
    }
}

/// `(M₁ ; M₂)(x, z) = Σ_y M₁(x, y) · M₂(y, z)`, a finite sum over supports.
pub fn fmat_compose(m1: &SparseMatrix, m2: &SparseMatrix) -> Result<SparseMatrix> {
    if m1.tgt != m2.src {
        return Err(Error::SpaceMismatch(format!("{} vs {}", m1.tgt, m2.src)));
    }
    let mut by_row: BTreeMap<u64, Vec<(u64, C64)>> = BTreeMap::new();
    for (&(y, z), &w) in &m2.entries {
        by_row.entry(y).or_default().push((z, w));
    }
    let mut out: BTreeMap<(u64, u64), C64> = BTreeMap::new();
    for (&(x, y), &v) in &m1.entries {
        if let Some(row) = by_row.get(&y) {
            for &(z, w) in row {
                *out.entry((x, z)).or_insert(C64::new(0.0, 0.0)) += v * w;
            }
        }
    }
    SparseMatrix::new(m1.src.clone(), m2.tgt.clone(), out)
}

/// Conjugated entries, transposed support, daggered typing.
pub fn fmat_dagger(m: &SparseMatrix) -> SparseMatrix {
    SparseMatrix {
        src: m.tgt.dagger(),
        tgt: m.src.dagger(),
        entries: m.entries.iter().map(|(&(x, y), z)| ((y, x), z.conj())).collect(),
    }
}

/// The inclusion `M` on a matrix `n → m`: the same entries between
/// `({0..n-1}, P, P)` and `({0..m-1}, P, P)`.
pub fn include_mat(d: &DenseMatrix) -> Result<SparseMatrix> {
    SparseMatrix::from_dense(FinitenessSpace::range(d.cols()), FinitenessSpace::range(d.rows()), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fmat::space::{IndexSet, SetFamily};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn tiny_entries_leave_the_support() {
        let s = FinitenessSpace::range(2);
        let m = SparseMatrix::new(s.clone(), s, [((0, 0), c(1e-15, 0.0)), ((1, 1), c(2.0, 0.0))]).unwrap();
        assert_eq!(m.support(), [(1, 1)].into_iter().collect());
    }

    #[test]
    fn identity_is_neutral() {
        let (s, t) = (FinitenessSpace::finite(vec![5, 2]).unwrap(), FinitenessSpace::range(3));
        let m = SparseMatrix::new(s.clone(), t.clone(), [((5, 0), c(1.0, 1.0)), ((2, 2), c(-3.0, 0.0))]).unwrap();
        assert_eq!(fmat_compose(&SparseMatrix::identity(&s).unwrap(), &m).unwrap(), m);
        assert_eq!(fmat_compose(&m, &SparseMatrix::identity(&t).unwrap()).unwrap(), m);
    }

    #[test]
    fn single_term_products() {
        let s = FinitenessSpace::range(3);
        let a = SparseMatrix::new(s.clone(), s.clone(), [((0, 1), c(2.0, 0.0))]).unwrap();
        let b = SparseMatrix::new(s.clone(), s.clone(), [((1, 2), c(0.0, 3.0))]).unwrap();
        let ab = fmat_compose(&a, &b).unwrap();
        assert_eq!(ab.entries().len(), 1);
        assert_eq!(ab.get(0, 2), c(0.0, 6.0));
        let disjoint = SparseMatrix::new(s.clone(), s.clone(), [((2, 0), c(1.0, 0.0))]).unwrap();
        assert!(fmat_compose(&a, &disjoint).unwrap().entries().is_empty());
    }

    #[test]
    fn composition_checks_spaces() {
        let a = SparseMatrix::zero(FinitenessSpace::range(2), FinitenessSpace::range(2));
        let b = SparseMatrix::zero(FinitenessSpace::range(3), FinitenessSpace::range(2));
        assert!(matches!(fmat_compose(&a, &b), Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn dagger_flips_everything() {
        let s = FinitenessSpace::omega_fin();
        let m = SparseMatrix::new(s.clone(), s.clone(), [((3, 7), c(1.0, 1.0))]).unwrap();
        let d = fmat_dagger(&m);
        assert_eq!(d.get(7, 3), c(1.0, -1.0));
        assert_eq!(d.src(), &FinitenessSpace::omega_all());
        assert_eq!(fmat_dagger(&d), m);
    }

    #[test]
    fn include_matches_dense_layout() {
        let d = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]).unwrap();
        let s = include_mat(&d).unwrap();
        // column index is the source label
        assert_eq!(s.get(1, 0), c(2.0, 0.0));
        assert_eq!(s.get(0, 2), c(5.0, 0.0));
        assert_eq!(s.to_dense().unwrap(), d);
    }

    #[test]
    fn kron_commutes_with_include() {
        let f = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, -1.0]]).unwrap();
        let g = DenseMatrix::from_real_rows(&[&[0.0, 1.0, 3.0]]).unwrap();
        let lhs = include_mat(&f.kron(&g).unwrap()).unwrap();
        let rhs = include_mat(&f).unwrap().kron(&include_mat(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn typing_rejects_bad_supports() {
        let x = IndexSet::range(2);
        let narrow = FinitenessSpace::new_unchecked(
            x,
            SetFamily::explicit([[0u64].into_iter().collect()]).unwrap(),
            SetFamily::All,
        );
        let wide = FinitenessSpace::range(2);
        let bad = SparseMatrix::new(wide, narrow, [((0, 1), c(1.0, 0.0))]);
        assert!(matches!(bad, Err(Error::SpaceMismatch(_))));
    }
}
