//! Realizing {x ∈ ℚⁿ : |A_p x|_p ≤ 1 for all p} as a single ℤ-lattice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::hnf::{hnf, IntMat};
use super::LatticePresentation;
use crate::error::{Error, Result};
use crate::exactnum::{padic_abs, padic_valuation, Int, Qf2, Rat, Real};
use crate::forms::QuadForm;
use crate::linalg::{self, Mat};

/// A rigid adelic space over ℚ: Gram matrix at ∞ and local matrices A_p at
/// finitely many primes (identity elsewhere).
#[derive(Clone, Debug, PartialEq)]
pub struct AdelicSpaceQ {
    pub gram: QuadForm,
    pub local: BTreeMap<u64, Mat>,
}

#[derive(Serialize, Deserialize)]
struct AdelicRepr {
    gram: QuadForm,
    #[serde(default)]
    local: BTreeMap<String, Vec<Vec<Qf2>>>,
}

impl AdelicSpaceQ {
    pub fn new(gram: QuadForm, local: BTreeMap<u64, Mat>) -> Result<Self> {
        let n = gram.dim();
        for (p, a) in &local {
            crate::forms::Place::finite(*p)?;
            if a.len() != n || a.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, got: a.len() });
            }
            if !a.iter().flatten().all(Qf2::is_rational) {
                return Err(Error::InvalidInput(format!("A_{p} must be rational")));
            }
            if linalg::det(a).is_zero() {
                return Err(Error::Singular);
            }
        }
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(AdelicSpaceQ { gram, local })
    }

    /// ℤⁿ with Gram matrix `gram`.
    pub fn standard(gram: QuadForm) -> Self {
        AdelicSpaceQ { gram, local: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn local_matrix(&self, p: u64) -> Option<&Mat> {
        self.local.get(&p)
    }

    /// ∏_p |det A_p|_p.
    pub fn local_det_product(&self) -> Rat {
        self.local
            .iter()
            .map(|(p, a)| padic_abs(linalg::det(a).as_rat().expect("rational"), *p))
            .product()
    }

    /// H(E) = √det G · ∏_p |det A_p|_p.
    pub fn height(&self) -> Real {
        Real::exact(self.gram.det()).sqrt().mul(&Real::rat(self.local_det_product()))
    }
}

impl Serialize for AdelicSpaceQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AdelicRepr {
            gram: self.gram.clone(),
            local: self.local.iter().map(|(p, a)| (p.to_string(), a.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdelicSpaceQ {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = AdelicRepr::deserialize(de)?;
        let mut local = BTreeMap::new();
        for (k, a) in r.local {
            let p: u64 = k.parse().map_err(|_| D::Error::custom(format!("bad prime key {k:?}")))?;
            local.insert(p, a);
        }
        AdelicSpaceQ::new(r.gram, local).map_err(D::Error::custom)
    }
}

fn rat_entries(m: &Mat) -> Vec<Vec<Rat>> {
    linalg::to_rat(m).expect("rational matrix")
}

fn common_denominator(m: &[Vec<Rat>]) -> Int {
    m.iter().flatten().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

/// HNF basis of the ℤ-span of the given rational columns (n rows).
fn span(gens: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let d = common_denominator(gens);
    let ints: IntMat = gens
        .iter()
        .map(|r| r.iter().map(|x| (x * Rat::from_integer(d.clone())).to_integer()).collect())
        .collect();
    let h = hnf(&ints)?;
    Ok(h.into_iter()
        .map(|r| r.into_iter().map(|x| Rat::new(x, d.clone())).collect())
        .collect())
}

fn rat_inverse_transpose(b: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let m = linalg::from_rat(b);
    Ok(rat_entries(&linalg::transpose(&linalg::inverse(&m)?)))
}

/// L₁ ∩ L₂ = (L₁* + L₂*)*, with duals taken as B^{-T}.
fn intersect(b1: &[Vec<Rat>], b2: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let d1 = rat_inverse_transpose(b1)?;
    let d2 = rat_inverse_transpose(b2)?;
    let gens: Vec<Vec<Rat>> = d1.into_iter().zip(d2).map(|(a, b)| a.into_iter().chain(b).collect()).collect();
    rat_inverse_transpose(&span(&gens)?)
}

/// Smallest b ≥ 0 with A_p⁻¹ℤ_pⁿ ⊂ p^{-b}ℤ_pⁿ.
fn denominator_exponent(p: u64, a_p: &Mat) -> Result<u32> {
    let inv = rat_entries(&linalg::inverse(a_p)?);
    Ok(min_valuation_deficit(&inv, p))
}

/// max(0, −min v_p) over the nonzero entries.
fn min_valuation_deficit(m: &[Vec<Rat>], p: u64) -> u32 {
    m.iter()
        .flatten()
        .filter(|x| !x.is_zero())
        .map(|x| -padic_valuation(x, p))
        .max()
        .unwrap_or(0)
        .max(0) as u32
}

/// A lattice equal to A_p⁻¹ℤ_pⁿ at p and containing the target lattice at
/// every other prime: (1/c)ℤ_qⁿ where c is a unit at p.
fn local_factor(p: u64, a_p: &Mat, c: &Int) -> Result<Vec<Vec<Rat>>> {
    let n = a_p.len();
    let inv = rat_entries(&linalg::inverse(a_p)?);
    // clear denominators prime to p; this is a unit at p
    let mut m = common_denominator(&inv);
    let pb = BigInt::from(p);
    while (&m % &pb).is_zero() {
        m /= &pb;
    }
    let scaled: Vec<Vec<Rat>> =
        inv.iter().map(|r| r.iter().map(|x| x * Rat::from_integer(m.clone())).collect()).collect();
    // p^k ℤ_pⁿ ⊂ A_p⁻¹ℤ_pⁿ once p^k A_p is p-integral
    let k = min_valuation_deficit(&rat_entries(a_p), p);
    let extra = Rat::new(pb.pow(k), c.clone());
    let gens: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = scaled[i].clone();
            row.extend((0..n).map(|j| if i == j { extra.clone() } else { Rat::zero() }));
            row
        })
        .collect();
    span(&gens)
}

/// Basis of L = {x : |A_p x|_p ≤ 1 for every finite p} with the Gram
/// matrix of `e` at ∞. The covolume is checked against ∏_p |det A_p|_p.
pub fn realize_adelic(e: &AdelicSpaceQ) -> Result<LatticePresentation> {
    let n = e.dim();
    let mut exps = BTreeMap::new();
    for (p, a) in &e.local {
        exps.insert(*p, denominator_exponent(*p, a)?);
    }
    let mut basis: Option<Vec<Vec<Rat>>> = None;
    for (p, a) in &e.local {
        let c: Int = exps
            .iter()
            .filter(|(q, _)| *q != p)
            .map(|(q, b)| BigInt::from(*q).pow(*b))
            .product();
        let lp = local_factor(*p, a, &c)?;
        basis = Some(match basis {
            None => lp,
            Some(b) => intersect(&b, &lp)?,
        });
    }
    let basis = basis.unwrap_or_else(|| rat_entries(&linalg::identity(n)));
    let b = linalg::from_rat(&basis);
    let covol = linalg::det(&b).as_rat().expect("rational").abs();
    if covol != e.local_det_product() {
        return Err(Error::Domain(format!(
            "realized covolume {covol} differs from the local determinant product {}",
            e.local_det_product()
        )));
    }
    LatticePresentation::new(b, e.gram.clone())
}
