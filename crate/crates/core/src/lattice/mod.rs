//! ℤ-lattices in ℚⁿ with a Euclidean structure at ∞: reduction, enumeration,
//! minima, and realization of finitely supported adelic data.

mod adelic;
mod enumerate;
mod hnf;
mod lll;

pub use adelic::{realize_adelic, AdelicSpaceQ};
pub use enumerate::{canonical_order, canonical_sign, enumerate_gram, ShortVector};
pub use hnf::{hnf, int_identity, IntMat};
pub use lll::{gram_schmidt, int_mat_to_i64, int_mat_to_qf2, lll_gram, GramSchmidt};

use crate::error::{Error, Result};
use crate::exactnum::{Qf2, Rat, Real};
use crate::forms::QuadForm;
use crate::linalg::{self, Mat, Vector};

/// Default cap on the number of vectors a single enumeration may return.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 2_000_000;

/// A full-rank lattice L = Bℤⁿ ⊂ ℚⁿ together with a positive-definite
/// ambient Gram matrix G, so that ‖Bx‖² = xᵀBᵀGBx.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePresentation {
    basis: Mat,
    gram: QuadForm,
}

impl LatticePresentation {
    pub fn new(basis: Mat, gram: QuadForm) -> Result<Self> {
        let n = gram.dim();
        if basis.len() != n || basis.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: basis.len() });
        }
        if !basis.iter().flatten().all(Qf2::is_rational) {
            return Err(Error::InvalidInput("lattice basis must be rational".into()));
        }
        if linalg::det(&basis).is_zero() {
            return Err(Error::Singular);
        }
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(LatticePresentation { basis, gram })
    }

    /// ℤⁿ with Gram matrix `gram`.
    pub fn standard(gram: QuadForm) -> Result<Self> {
        LatticePresentation::new(linalg::identity(gram.dim()), gram)
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn gram(&self) -> &QuadForm {
        &self.gram
    }

    /// BᵀGB: the Gram matrix in lattice coordinates.
    pub fn coord_gram(&self) -> Mat {
        linalg::congruence(self.gram.matrix(), &self.basis)
    }

    pub fn point(&self, coords: &[i64]) -> Vector {
        let c: Vector = coords.iter().map(|&x| Qf2::from_int(x)).collect();
        linalg::mul_vec(&self.basis, &c)
    }

    /// Coordinates of an ambient vector, if it lies in the lattice.
    pub fn coords_of(&self, v: &[Qf2]) -> Result<Option<Vec<i64>>> {
        let c = linalg::mul_vec(&linalg::inverse(&self.basis)?, v);
        Ok(c.iter()
            .map(|x| x.as_rat().filter(|r| r.is_integer()).and_then(|r| i64::try_from(r.to_integer()).ok()))
            .collect())
    }

    /// det(BᵀGB) = covolume².
    pub fn covolume_sq(&self) -> Qf2 {
        linalg::det(&self.coord_gram())
    }

    fn with_basis(&self, basis: Mat) -> Self {
        LatticePresentation { basis, gram: self.gram.clone() }
    }
}

/// LLL-reduced basis of the same lattice.
pub fn lll(l: &LatticePresentation, delta: &Rat) -> Result<LatticePresentation> {
    let (u, _) = lll_gram(&l.coord_gram(), delta)?;
    Ok(l.with_basis(linalg::mul(&l.basis, &int_mat_to_qf2(&u))))
}

/// All nonzero lattice vectors with ‖v‖² ≤ r_sq, one per ± pair, in
/// coordinates of `l`'s basis, canonically signed and ordered.
pub fn enumerate_within(l: &LatticePresentation, r_sq: &Qf2) -> Result<Vec<ShortVector>> {
    enumerate_within_limit(l, r_sq, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_within_limit(
    l: &LatticePresentation,
    r_sq: &Qf2,
    limit: usize,
) -> Result<Vec<ShortVector>> {
    let (u, reduced) = lll_gram(&l.coord_gram(), &Rat::new(3.into(), 4.into()))?;
    let u = int_mat_to_i64(&u);
    let mut out: Vec<ShortVector> = enumerate_gram(&reduced, r_sq, limit)?
        .into_iter()
        .map(|s| {
            let mut coords: Vec<i64> =
                u.iter().map(|row| row.iter().zip(&s.coords).map(|(a, b)| a * b).sum()).collect();
            canonical_sign(&mut coords);
            ShortVector { coords, norm_sq: s.norm_sq }
        })
        .collect();
    out.sort_by(canonical_order);
    Ok(out)
}

/// λ₁² — the minimal squared norm of a nonzero lattice vector.
pub fn first_minimum(l: &LatticePresentation) -> Result<Qf2> {
    let (_, reduced) = lll_gram(&l.coord_gram(), &Rat::new(3.into(), 4.into()))?;
    let seed = (0..l.dim())
        .map(|i| reduced[i][i].clone())
        .min_by(|a, b| a.cmp_exact(b))
        .expect("nonempty lattice");
    let found = enumerate_gram(&reduced, &seed, DEFAULT_ENUMERATION_LIMIT)?;
    Ok(found
        .into_iter()
        .map(|s| s.norm_sq)
        .min_by(|a, b| a.cmp_exact(b))
        .unwrap_or(seed))
}

/// √det of the Gram matrix of independent ambient vectors.
pub fn sublattice_height(l: &LatticePresentation, vectors: &[Vector]) -> Result<Real> {
    if vectors.iter().any(|v| v.len() != l.dim()) {
        return Err(Error::DimensionMismatch { expected: l.dim(), got: vectors[0].len() });
    }
    if linalg::rank(vectors) < vectors.len() {
        return Err(Error::RankDeficient);
    }
    let b = linalg::from_columns(vectors);
    let d = linalg::det(&linalg::congruence(l.gram.matrix(), &b));
    Ok(Real::exact(d).sqrt())
}
