//! Per-place data and the twisted adelic space E_t on E × ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactnum::{padic_abs, Magnitude, Qf2, Rat};
use crate::forms::{dual_norm, Place, QuadForm};
use crate::lattice::{realize_adelic, AdelicSpaceQ, LatticePresentation};
use crate::linalg::{self, Mat, Vector};

use super::twist::{norm_p, twisted_gram_inf, xi_matrix};

/// α_v with q(α_v) = 1 and its twist parameter t_v at one place of V.
#[derive(Clone, Debug)]
pub struct PlaceData {
    pub place: Place,
    pub alpha: Vector,
    /// |t_v|_v > 1 at finite places; t ≥ 1 at ∞.
    pub t: Rat,
    /// ‖α_v‖_{E,v}.
    pub alpha_norm: Magnitude,
    /// ‖b(·, α_v)‖_{E^∨,v}.
    pub dual_norm: Magnitude,
    /// ‖α‖²_G and ‖b(·,α)‖² at ∞, exact.
    pub alpha_norm_sq: Option<Qf2>,
    pub dual_norm_sq: Option<Qf2>,
}

impl PlaceData {
    /// Validates α_v and computes its norms in E; `t` is checked separately
    /// so that the archimedean parameter can be filled in from a budget.
    pub fn new(e: &AdelicSpaceQ, q: &QuadForm, place: Place, alpha: Vector, t: Rat) -> Result<Self> {
        let n = q.dim();
        if alpha.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: alpha.len() });
        }
        if q.eval(&alpha)? != Qf2::one() {
            return Err(Error::InvalidInput(format!("q(α) ≠ 1 at place {place}")));
        }
        let dual = dual_norm(q, &alpha, place, &e.gram, e.local_matrix(place_prime(place)))?;
        match place {
            Place::Infinity => {
                let sq = e.gram.eval(&alpha)?;
                let dsq = dual.square.clone().expect("archimedean dual norm carries its square");
                Ok(PlaceData {
                    place,
                    t: t.abs(),
                    alpha_norm: Magnitude::sqrt_of(&sq),
                    dual_norm: Magnitude::sqrt_of(&dsq),
                    alpha_norm_sq: Some(sq),
                    dual_norm_sq: Some(dsq),
                    alpha,
                })
            }
            Place::Finite(p) => {
                if !alpha.iter().all(Qf2::is_rational) {
                    return Err(Error::InvalidInput(format!("α at {p} must be rational")));
                }
                if padic_abs(&t, p) <= Rat::one() {
                    return Err(Error::Domain(format!("need |t|_{p} > 1, got t = {t}")));
                }
                let an = norm_p(&alpha, p, e.local_matrix(p))?;
                let dn = dual.value.as_rat().expect("finite dual norm is rational").clone();
                Ok(PlaceData {
                    place,
                    t,
                    alpha_norm: Magnitude::rat(an)?,
                    dual_norm: Magnitude::rat(dn)?,
                    alpha_norm_sq: None,
                    dual_norm_sq: None,
                    alpha,
                })
            }
        }
    }

    /// ‖α_v‖‖b(·,α_v)‖ ≥ 1.
    pub fn alpha_dual(&self) -> Magnitude {
        self.alpha_norm.mul(&self.dual_norm)
    }

    /// |t_v/2|_v.
    pub fn half_t_abs(&self) -> Magnitude {
        let h = &self.t / Rat::from_integer(2.into());
        match self.place {
            Place::Infinity => Magnitude::rat(h).expect("t > 0"),
            Place::Finite(p) => Magnitude::rat(padic_abs(&h, p)).expect("t ≠ 0"),
        }
    }
}

/// 0 stands for ∞ in local-matrix lookups (no matrix there).
fn place_prime(place: Place) -> u64 {
    match place {
        Place::Infinity => 0,
        Place::Finite(p) => p,
    }
}

/// E × ℚ with the norms at V twisted by ξ_v and rescaled by ‖α_v‖.
#[derive(Clone, Debug)]
pub struct TwistedSpace {
    pub base: AdelicSpaceQ,
    pub q: QuadForm,
    pub places: Vec<PlaceData>,
    /// Archimedean Gram of E_t on ℚⁿ⁺¹.
    pub gram_t: QuadForm,
    /// Local matrices of E_t at every prime where they differ from the identity.
    pub local_t: BTreeMap<u64, Mat>,
    /// {z : ‖z‖_{E_t,p} ≤ 1 for all p}.
    pub lattice_t: LatticePresentation,
    /// |α| = ∏_{v∈V} ‖α_v‖_{E,v}.
    pub alpha_module: Magnitude,
}

/// |α| = ∏_{v∈V} ‖α_v‖_{E,v}.
pub fn alpha_module(places: &[PlaceData]) -> Magnitude {
    places.iter().fold(Magnitude::int(1), |m, p| m.mul(&p.alpha_norm))
}

fn with_last(a: &Mat, last: Qf2) -> Mat {
    let n = a.len();
    let mut m = linalg::zeros(n + 1, n + 1);
    for i in 0..n {
        m[i][..n].clone_from_slice(&a[i]);
    }
    m[n][n] = last;
    m
}

pub fn build_twisted(e: &AdelicSpaceQ, q: &QuadForm, places: Vec<PlaceData>) -> Result<TwistedSpace> {
    let n = q.dim();
    if e.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: e.dim() });
    }
    let mut seen = std::collections::BTreeSet::new();
    for p in &places {
        if !seen.insert(p.place) {
            return Err(Error::InvalidInput(format!("place {} listed twice", p.place)));
        }
        if p.place.is_infinite() && p.t < Rat::one() {
            return Err(Error::Domain(format!("need t ≥ 1 at ∞, got {}", p.t)));
        }
    }
    let inf = places.iter().find(|p| p.place.is_infinite());
    let gram_t = match inf {
        Some(pd) => QuadForm::new(twisted_gram_inf(q, &e.gram, &pd.alpha, &pd.t)?)?,
        None => e.gram.direct_sum(&QuadForm::identity(1)),
    };
    let mut local_t = BTreeMap::new();
    for (&p, a) in &e.local {
        local_t.insert(p, with_last(a, Qf2::one()));
    }
    for pd in places.iter().filter(|pd| !pd.place.is_infinite()) {
        let p = place_prime(pd.place);
        let a = e.local_matrix(p).cloned().unwrap_or_else(|| linalg::identity(n));
        let scale = pd.alpha_norm.as_rat().expect("finite norms are rational").recip();
        let m = linalg::mul(&with_last(&a, Qf2::from_rat(scale)), &xi_matrix(q, &pd.alpha, &pd.t)?);
        local_t.insert(p, m);
    }
    let et = AdelicSpaceQ::new(gram_t.clone(), local_t.clone())?;
    let lattice_t = realize_adelic(&et)?;
    let space = TwistedSpace {
        base: e.clone(),
        q: q.clone(),
        alpha_module: alpha_module(&places),
        places,
        gram_t,
        local_t,
        lattice_t,
    };
    if !space.height_identity_holds() {
        return Err(Error::InvalidInput("twisted covolume does not match |α|·H(E)".into()));
    }
    Ok(space)
}

impl TwistedSpace {
    pub fn dim(&self) -> usize {
        self.q.dim() + 1
    }

    pub fn place(&self, v: Place) -> Option<&PlaceData> {
        self.places.iter().find(|p| p.place == v)
    }

    /// H(E_t)² = (|α|·H(E))², compared exactly on the realized lattice.
    pub fn height_identity_holds(&self) -> bool {
        let mut expected = self.base.gram.det();
        let local = self.base.local_det_product();
        expected = &expected * &Qf2::from_rat(&local * &local);
        for p in &self.places {
            let sq = match &p.alpha_norm_sq {
                Some(sq) => sq.clone(),
                None => {
                    let r = p.alpha_norm.as_rat().expect("rational");
                    Qf2::from_rat(r * r)
                }
            };
            expected = &expected * &sq;
        }
        self.lattice_t.covolume_sq() == expected
    }

    /// ‖z‖²_{E_t,∞}.
    pub fn norm_sq_inf(&self, z: &[Qf2]) -> Result<Qf2> {
        self.gram_t.eval(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn v(xs: &[(i64, i64)]) -> Vector {
        xs.iter().map(|&(a, b)| Qf2::from_rat(rat(a, b))).collect()
    }

    #[test]
    fn empty_v_is_product_space() {
        let e = AdelicSpaceQ::standard(QuadForm::from_ints(&[&[2, 1], &[1, 3]]).unwrap());
        let q = QuadForm::identity(2);
        let s = build_twisted(&e, &q, vec![]).unwrap();
        assert_eq!(s.lattice_t.covolume_sq(), Qf2::from_int(5));
        assert_eq!(s.alpha_module.as_rat(), Some(&rat(1, 1)));
    }

    #[test]
    fn archimedean_twist_preserves_det() {
        let q = QuadForm::from_ints(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 1]]).unwrap();
        let e = AdelicSpaceQ::standard(q.clone());
        let alpha = v(&[(0, 1), (0, 1), (1, 1)]);
        let pd = PlaceData::new(&e, &q, Place::Infinity, alpha, rat(13, 4)).unwrap();
        let s = build_twisted(&e, &q, vec![pd]).unwrap();
        assert_eq!(s.gram_t.det(), q.det());
    }

    #[test]
    fn five_adic_twist() {
        let q = QuadForm::identity(3);
        let e = AdelicSpaceQ::standard(q.clone());
        let alpha = v(&[(3, 5), (4, 5), (0, 1)]);
        let inf = PlaceData::new(&e, &q, Place::Infinity, alpha.clone(), rat(2, 1)).unwrap();
        let five = PlaceData::new(&e, &q, Place::Finite(5), alpha, rat(1, 25)).unwrap();
        assert_eq!(five.alpha_norm.as_rat(), Some(&rat(5, 1)));
        assert_eq!(five.dual_norm.as_rat(), Some(&rat(5, 1)));
        assert_eq!(five.half_t_abs().as_rat(), Some(&rat(25, 1)));
        let s = build_twisted(&e, &q, vec![inf, five]).unwrap();
        assert_eq!(s.alpha_module.as_rat(), Some(&rat(5, 1)));
        assert_eq!(s.lattice_t.covolume_sq(), Qf2::from_int(25));
    }

    #[test]
    fn rejects_bad_parameters() {
        let q = QuadForm::identity(2);
        let e = AdelicSpaceQ::standard(q.clone());
        let alpha = v(&[(3, 5), (4, 5)]);
        assert!(PlaceData::new(&e, &q, Place::Finite(5), alpha.clone(), rat(5, 1)).is_err());
        assert!(PlaceData::new(&e, &q, Place::Infinity, v(&[(1, 1), (1, 1)]), rat(2, 1)).is_err());
        let low = PlaceData::new(&e, &q, Place::Infinity, alpha, rat(1, 2)).unwrap();
        assert!(build_twisted(&e, &q, vec![low]).is_err());
    }
}
