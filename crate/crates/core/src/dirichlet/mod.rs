//! The approximation engine: twisted spaces E_t, thresholds, the guaranteed
//! search and exactly evaluated certificates.

mod checks;
mod constants;
mod solve;
mod space;
mod thresholds;
mod twist;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use checks::{all_pass, Candidate, Check, CheckContext, Relation, Status};
pub use constants::{
    c_star, constants_row, gamma_source, harmonic, harmonic_inequality_holds, hermite, qbar_log_constant,
    ConstantsRow, GammaSource,
};
pub use solve::{solve, solve_prepared, verify, Certificate, SolveOptions, ThresholdSummary, Verdict};
pub use space::{alpha_module, build_twisted, PlaceData, TwistedSpace};
pub use thresholds::{
    dyadic_ceil, h1q, height_e, lambda1, sphere_threshold, thresholds, two_form_thresholds, Case, Indices,
    Thresholds, TwoFormThresholds,
};
pub use twist::{
    big_q, norm_p, product_norm_sq_inf, twist_coords, twisted_gram_inf, twisted_norm_p, xi_apply, xi_inverse,
    xi_matrix,
};

use crate::error::{Error, Result};
use crate::exactnum::{serde_rat, Magnitude, Rat};
use crate::forms::{inf_norm, AlgVector, Place, QuadForm};
use crate::lattice::AdelicSpaceQ;
use crate::witt::index_pair;

/// One place of V as given in an instance file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaceSpec {
    pub v: Place,
    pub alpha: AlgVector,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rat::opt")]
    pub t: Option<Rat>,
}

/// A problem instance: the form, the space E, the places V and a budget.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub q: QuadForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q0: Option<QuadForm>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<AdelicSpaceQ>,
    pub places: Vec<PlaceSpec>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none", with = "serde_rat::opt")]
    pub big_t: Option<Rat>,
}

impl Instance {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }

    /// E, defaulting to (ℤⁿ, q₀) and then to (ℤⁿ, q).
    pub fn space(&self) -> Result<AdelicSpaceQ> {
        match (&self.e, &self.q0) {
            (Some(e), Some(q0)) if &e.gram != q0 => {
                Err(Error::InvalidInput("E.gram and q0 are both given and differ".into()))
            }
            (Some(e), _) => Ok(e.clone()),
            (None, Some(q0)) => Ok(AdelicSpaceQ::standard(q0.clone())),
            (None, None) => Ok(AdelicSpaceQ::standard(self.q.clone())),
        }
    }
}

/// How the archimedean budget was specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Budget {
    /// Global T, with t_∞ = T/𝒯.
    Total(Rat),
    /// t_∞ given directly, T = t_∞·𝒯.
    Scale(Rat),
    /// ∞ ∉ V.
    None,
}

/// An instance with everything except the search resolved.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub ctx: CheckContext,
    pub budget: Budget,
}

impl Prepared {
    pub fn new(inst: &Instance, indices: Option<Indices>, max_bits: u32) -> Result<Self> {
        let q = &inst.q;
        let e = inst.space()?;
        let n = q.dim();
        if e.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: e.dim() });
        }
        let idx = match indices {
            Some(i) => i,
            None => {
                let (small, big) = index_pair(q)?;
                Indices { iq: small.index, i_big: big.index }
            }
        };
        let inf = inst.places.iter().find(|p| p.v.is_infinite());
        let budget = match (inf, &inst.big_t) {
            (Some(p), Some(_)) if p.t.is_some() => {
                return Err(Error::InvalidInput("give either T or t at ∞, not both".into()))
            }
            (Some(_), Some(t)) => Budget::Total(t.clone()),
            (Some(p), None) => match &p.t {
                Some(t) => Budget::Scale(t.clone()),
                None => return Err(Error::InvalidInput("∞ ∈ V needs T or t".into())),
            },
            (None, Some(_)) => return Err(Error::InvalidInput("T needs ∞ among the places".into())),
            (None, None) => Budget::None,
        };
        if let Budget::Total(t) | Budget::Scale(t) = &budget {
            if t <= &Rat::zero() {
                return Err(Error::BudgetBelowThreshold(format!("budget {t} is not positive")));
            }
        }
        let mut places = Vec::with_capacity(inst.places.len());
        for ps in &inst.places {
            let t = match (ps.v, &ps.t) {
                (Place::Infinity, Some(t)) => t.clone(),
                (Place::Infinity, None) => Rat::one(),
                (Place::Finite(p), None) => {
                    return Err(Error::InvalidInput(format!("place {p} needs t")));
                }
                (Place::Finite(_), Some(t)) => t.clone(),
            };
            if let Place::Finite(p) = ps.v {
                Place::finite(p)?;
            }
            places.push(PlaceData::new(&e, q, ps.v, ps.alpha.entries().to_vec(), t)?);
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(p) = places.iter().find(|p| !seen.insert(p.place)) {
            return Err(Error::InvalidInput(format!("place {} listed twice", p.place)));
        }
        let th = thresholds(&e, q, &places, idx)?;
        let big_t = match &budget {
            Budget::Total(t) => Some(Magnitude::rat(t.clone())?),
            Budget::Scale(t) => Some(th.t.mul(&Magnitude::rat(t.clone())?)),
            Budget::None => None,
        };
        let only_inf = places.len() == 1 && places[0].place.is_infinite() && e.local.is_empty();
        let single_form = only_inf && e.gram == *q && q.is_integral() && q.is_positive_definite();
        let two_form = if only_inf && q.is_integral() && e.gram.is_integral() && idx.i_big == idx.iq + 1 {
            let pd = &places[0];
            let norm = Magnitude::from_real(inf_norm(q, &e.gram)?);
            let two = two_form_thresholds(q, &e.gram, &pd.alpha_norm, &norm, &th.lambda1, idx.iq)?;
            let covered = match &big_t {
                Some(bt) => two.t.le(bt, max_bits).unwrap_or(false),
                None => false,
            };
            covered.then_some(two)
        } else {
            None
        };
        let ctx = CheckContext {
            e,
            q: q.clone(),
            places,
            thresholds: th,
            big_t,
            single_form,
            two_form,
            max_bits,
        };
        Ok(Prepared { ctx, budget })
    }

    /// T ≥ 𝒯 in T-mode, t_∞ ≥ 1 in t-mode.
    pub fn check_budget(&self) -> Result<()> {
        match &self.budget {
            Budget::Total(t) => {
                let bt = Magnitude::rat(t.clone())?;
                match bt.cmp(&self.ctx.thresholds.t, self.ctx.max_bits) {
                    Ok(o) if o.is_ge() => Ok(()),
                    Ok(_) => Err(Error::BudgetBelowThreshold(format!(
                        "T = {t} < 𝒯 = {} ≈ {:.6}",
                        self.ctx.thresholds.t,
                        self.ctx.thresholds.t.to_f64()
                    ))),
                    Err(_) => Err(Error::Undecidable { what: "T versus 𝒯".into(), bits: self.ctx.max_bits }),
                }
            }
            Budget::Scale(t) if t < &Rat::one() => {
                Err(Error::BudgetBelowThreshold(format!("t at ∞ is {t} < 1")))
            }
            _ => Ok(()),
        }
    }
}
