//! The thresholds 𝒯₀, 𝒯₁, 𝒯 over ℚ (ε = 0, c₁(ℚ) = 1, c^BV = c^Λ = c*).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Magnitude, Rat};
use crate::forms::{heights, QuadForm};
use crate::lattice::{first_minimum, realize_adelic, AdelicSpaceQ};

use super::constants::{c_star, gamma_source, GammaSource};
use super::space::{alpha_module, PlaceData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// i(Q) = i(q) + 1: the base statement applies.
    #[serde(rename = "iQ_eq_iq_plus_1")]
    IqPlusOne,
    /// i(Q) = i(q) ≥ 1: 𝒯₀ is replaced by max(𝒯₀, 𝒯₁).
    #[serde(rename = "iQ_eq_iq")]
    IqEqual,
}

/// Thresholds for one instance; every field is exact or a certified real.
#[derive(Clone, Debug)]
pub struct Thresholds {
    pub n: usize,
    pub iq: usize,
    pub i_big: usize,
    pub case: Case,
    pub gamma_source: GammaSource,
    pub h1q: Magnitude,
    pub alpha_module: Magnitude,
    pub height_e: Magnitude,
    /// λ₁^BV(E): the first minimum of the lattice realizing E.
    pub lambda1: Magnitude,
    pub t0: Magnitude,
    pub t1: Option<Magnitude>,
    pub t: Magnitude,
}

/// Input to [`thresholds`] beyond the places: the two isotropy indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Indices {
    pub iq: usize,
    pub i_big: usize,
}

pub fn height_e(e: &AdelicSpaceQ) -> Result<Magnitude> {
    let sq = e.gram.det();
    let local = Magnitude::rat(e.local_det_product())?;
    Ok(Magnitude::sqrt_of(&sq).mul(&local))
}

pub fn lambda1(e: &AdelicSpaceQ) -> Result<Magnitude> {
    Ok(Magnitude::sqrt_of(&first_minimum(&realize_adelic(e)?)?))
}

pub fn h1q(e: &AdelicSpaceQ, q: &QuadForm) -> Result<Magnitude> {
    Ok(Magnitude::from_real(heights(q, &e.gram, &e.local)?.h_1q))
}

fn root2() -> Magnitude {
    Magnitude::int(2).sqrt()
}

pub fn thresholds(e: &AdelicSpaceQ, q: &QuadForm, places: &[PlaceData], idx: Indices) -> Result<Thresholds> {
    let n = q.dim();
    let Indices { iq, i_big } = idx;
    if i_big == 0 {
        return Err(Error::NoSolutionExists);
    }
    if i_big != iq && i_big != iq + 1 {
        return Err(Error::InvalidInput(format!("inconsistent isotropy indices i(q)={iq}, i(Q)={i_big}")));
    }
    let case = if i_big == iq + 1 { Case::IqPlusOne } else { Case::IqEqual };
    let m = n + 1 - i_big;
    let h1q = h1q(e, q)?;
    let am = alpha_module(places);
    let he = height_e(e)?;
    let l1 = lambda1(e)?;
    let constants = Magnitude::from_surd(c_star(i_big)?.mul(&c_star(m)?));
    let t0 = constants
        .mul(&Magnitude::int(2).mul(&h1q).powi(m as u32).sqrt())
        .mul(&am)
        .mul(&he);
    let ratio = root2().div(&l1);
    let t1 = match case {
        Case::IqPlusOne => None,
        Case::IqEqual => Some(Magnitude::int(4).mul(&ratio.powi(i_big as u32)).mul(&t0.powi(2))),
    };
    let eff = match &t1 {
        Some(t1) => t0.max(t1),
        None => t0.clone(),
    };
    let t = eff.root(i_big as u32).max(&ratio.powi(i_big as u32 - 1).mul(&eff));
    Ok(Thresholds {
        n,
        iq,
        i_big,
        case,
        gamma_source: gamma_source(i_big.max(m)),
        h1q,
        alpha_module: am,
        height_e: he,
        lambda1: l1,
        t0,
        t1,
        t,
    })
}

/// 𝒯₀ and 𝒯 of the two-form statement, for integral q, E = (ℤⁿ, q₀) and V = {∞}.
#[derive(Clone, Debug)]
pub struct TwoFormThresholds {
    pub t0: Magnitude,
    pub t: Magnitude,
}

pub fn two_form_thresholds(
    q: &QuadForm,
    q0: &QuadForm,
    alpha_norm: &Magnitude,
    inf_norm: &Magnitude,
    lambda1: &Magnitude,
    iq: usize,
) -> Result<TwoFormThresholds> {
    let n = q.dim();
    let nn = Magnitude::int(n as i64).powi(n as u32).sqrt();
    let big = Magnitude::int(2).mul(&inf_norm.max(&Magnitude::int(1))).powi((n - iq) as u32).sqrt();
    let det = Magnitude::sqrt_of(&q0.det());
    let t0 = nn.mul(&big).mul(alpha_norm).mul(&det);
    let t = t0.root(iq as u32 + 1).max(&root2().div(lambda1).powi(iq as u32).mul(&t0));
    Ok(TwoFormThresholds { t0, t })
}

/// (2γₙ)^{n/2}·√det q, the single-form threshold.
pub fn sphere_threshold(q: &QuadForm) -> Result<Magnitude> {
    let n = q.dim();
    let (g, _) = super::constants::hermite(n)?;
    let two_g = Magnitude::from_surd(g).mul(&Magnitude::int(2));
    Ok(two_g.powi(n as u32).sqrt().mul(&Magnitude::sqrt_of(&q.det())))
}

/// Smallest dyadic with `bits` fractional bits that is ≥ x·k.
pub fn dyadic_ceil(x: &Magnitude, k: i64, bits: u32) -> Result<Rat> {
    let scaled = x.mul(&Magnitude::int(k));
    if let Some(r) = scaled.as_rat() {
        if r.is_integer() {
            return Ok(r.clone());
        }
    }
    let den = Rat::from_integer(num_bigint::BigInt::from(1) << bits);
    let hi = scaled.upper(bits + 8)?;
    Ok(Rat::from_integer(crate::exactnum::rat_ceil(&(hi * &den))) / den)
}
