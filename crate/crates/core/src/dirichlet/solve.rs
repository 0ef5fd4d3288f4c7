//! The guaranteed search and the independent verifier.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{serde_rat, simplest_between, Magnitude, Qf2, Rat, DEFAULT_MAX_BITS};

use crate::lattice::{enumerate_within_limit, lll, DEFAULT_ENUMERATION_LIMIT};

use super::checks::{all_pass, Candidate, Check, Status};
use super::space::build_twisted;
use super::thresholds::{Case, Indices};
use super::constants::GammaSource;
use super::{Budget, Instance, Prepared};
#[cfg(test)]
use crate::forms::Place;

/// Bits used to pick a rational t_∞ near T/𝒯.
const T_PRECISION: u32 = 20;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Minimize |q(α_∞φ − υ)| over the whole guaranteed ball.
    pub best: bool,
    pub max_bits: u32,
    pub enumeration_limit: usize,
    /// Precomputed (i(q), i(Q)); computed with `witt` when absent.
    pub indices: Option<Indices>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            best: false,
            max_bits: DEFAULT_MAX_BITS,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            indices: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSummary {
    pub case: Case,
    pub gamma_source: GammaSource,
    pub i_q: usize,
    pub i_big_q: usize,
    pub t0: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<String>,
    pub t: String,
    pub t_approx: f64,
    /// 𝒯 of the two-form statement when its checks were applied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_form_t: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "serde_rat::vec")]
    pub upsilon: Vec<Rat>,
    #[serde(with = "serde_rat")]
    pub phi: Rat,
    /// The rational t_∞ of the lattice that was searched.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rat::opt")]
    pub t_inf: Option<Rat>,
    /// T when ∞ ∈ V (given, or t_∞·𝒯).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
    pub twisted_norm_sq: String,
    pub thresholds: ThresholdSummary,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn candidate(&self) -> Candidate {
        Candidate { upsilon: self.upsilon.clone(), phi: self.phi.clone() }
    }
}

/// The verifier's outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub accepted: bool,
    /// Some check could not be decided at the precision cap.
    pub undecidable: bool,
    pub failures: Vec<String>,
    pub checks: Vec<Check>,
}

fn summary(p: &Prepared) -> ThresholdSummary {
    let th = &p.ctx.thresholds;
    ThresholdSummary {
        case: th.case,
        gamma_source: th.gamma_source,
        i_q: th.iq,
        i_big_q: th.i_big,
        t0: th.t0.to_string(),
        t1: th.t1.as_ref().map(Magnitude::to_string),
        t: th.t.to_string(),
        t_approx: th.t.to_f64(),
        two_form_t: p.ctx.two_form.as_ref().map(|t| t.t.to_string()),
    }
}

/// A rational t′ ≥ 1 for the searched lattice and the radius inflation K
/// with ‖·‖_{E_{t′}} ≤ K‖·‖_{E_t} on the twisted coordinates.
fn lattice_parameter(p: &Prepared) -> Result<(Option<Rat>, Rat)> {
    let one = Rat::one();
    match &p.budget {
        Budget::None => Ok((None, one)),
        Budget::Scale(t) => Ok((Some(t.clone()), one)),
        Budget::Total(big_t) => {
            let exact = Magnitude::rat(big_t.clone())?.div(&p.ctx.thresholds.t);
            if let Some(r) = exact.as_rat() {
                return Ok((Some(r.clone().max(one.clone())), one));
            }
            let iv = exact.enclose(T_PRECISION)?;
            let (lo, hi) = (iv.lo().clone().max(one.clone()), iv.hi().clone().max(one.clone()));
            let t = simplest_between(&lo, &hi);
            // ξ_t = ξ_s ∘ ξ_{t′} with s = t/t′; ‖ξ_s w − w‖ ≤ max(|s−1|,|1/s−1|)·‖α‖‖b‖·‖w‖
            let (s_lo, s_hi) = (iv.lo() / &t, iv.hi() / &t);
            let dev = [&s_lo - &one, &s_hi - &one, s_lo.recip() - &one, s_hi.recip() - &one]
                .into_iter()
                .map(|x| x.abs())
                .max()
                .expect("nonempty");
            let pd = p.ctx.places.iter().find(|pd| pd.place.is_infinite()).expect("∞ ∈ V");
            let ab = pd.alpha_dual().upper(T_PRECISION)?;
            Ok((Some(t), one + dev * ab))
        }
    }
}

fn to_rats(z: &[Qf2]) -> Vec<Rat> {
    z.iter().map(|x| x.as_rat().expect("lattice vectors are rational").clone()).collect()
}

struct Found {
    cand: Candidate,
    norm_sq: Qf2,
    checks: Vec<Check>,
}

pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<Certificate> {
    let p = Prepared::new(inst, opts.indices, opts.max_bits)?;
    p.check_budget()?;
    solve_prepared(&p, opts)
}

/// Searches E_{t′} in rounds of growing radius up to the guaranteed one.
pub fn solve_prepared(p: &Prepared, opts: &SolveOptions) -> Result<Certificate> {
    let ctx = &p.ctx;
    let n = ctx.q.dim();
    let (t_inf, k) = lattice_parameter(p)?;
    let mut places = ctx.places.clone();
    if let (Some(t), Some(pd)) = (&t_inf, places.iter_mut().find(|pd| pd.place.is_infinite())) {
        pd.t = t.clone();
    }
    let space = build_twisted(&ctx.e, &ctx.q, places)?;
    let radius = ctx.thresholds.t.powi(2);
    let r_max: Rat = match radius.as_rat() {
        Some(r) if k.is_one() => r.clone(),
        _ => {
            let kt = &k * ctx.thresholds.t.upper(40)?;
            &kt * &kt
        }
    };
    let reduced = lll(&space.lattice_t, &Rat::new(3.into(), 4.into()))?;
    let g = reduced.coord_gram();
    let r_max = Qf2::from(&r_max);
    let mut r2 = if opts.best {
        r_max.clone()
    } else {
        let d = (0..g.len()).map(|i| g[i][i].clone()).min_by(|a, b| a.cmp_exact(b)).expect("nonempty");
        if d.cmp_exact(&r_max).is_lt() {
            d
        } else {
            r_max.clone()
        }
    };
    let mut seen: Option<Qf2> = None;
    let mut best: Option<(Qf2, Found)> = None;
    let inf = ctx.places.iter().find(|pd| pd.place.is_infinite());
    loop {
        let vs = enumerate_within_limit(&reduced, &r2, opts.enumeration_limit)?;
        for sv in vs {
            if seen.as_ref().is_some_and(|s| sv.norm_sq.cmp_exact(s).is_le()) {
                continue;
            }
            let z = reduced.point(&sv.coords);
            if z[n].is_zero() || ctx.q.eval(&z[..n])? != &z[n] * &z[n] {
                continue;
            }
            let mut upsilon = to_rats(&z[..n]);
            let mut phi = z[n].as_rat().expect("rational").clone();
            if phi.is_negative() {
                phi = -phi;
                upsilon.iter_mut().for_each(|x| *x = -x.clone());
            }
            let cand = Candidate { upsilon, phi };
            let checks = ctx.evaluate(&cand, t_inf.as_ref())?;
            if !all_pass(&checks) {
                continue;
            }
            let found = Found { cand, norm_sq: sv.norm_sq, checks };
            if !opts.best {
                return Ok(certificate(p, t_inf, found));
            }
            let err = match inf {
                Some(pd) => {
                    let phi = Qf2::from(&found.cand.phi);
                    let diff: Vec<Qf2> =
                        pd.alpha.iter().zip(&found.cand.upsilon).map(|(a, x)| &(a * &phi) - &Qf2::from(x)).collect();
                    ctx.q.eval(&diff)?.abs()
                }
                None => Qf2::zero(),
            };
            if best.as_ref().map_or(true, |(e, _)| err.cmp_exact(e).is_lt()) {
                best = Some((err, found));
            }
        }
        if r2.cmp_exact(&r_max).is_ge() {
            break;
        }
        let next = &r2 * &Qf2::from_int(4);
        seen = Some(r2);
        r2 = if next.cmp_exact(&r_max).is_lt() { next } else { r_max.clone() };
    }
    match best {
        Some((_, found)) => Ok(certificate(p, t_inf, found)),
        None => Err(Error::SearchExhausted),
    }
}

fn certificate(p: &Prepared, t_inf: Option<Rat>, f: Found) -> Certificate {
    Certificate {
        upsilon: f.cand.upsilon,
        phi: f.cand.phi,
        t_inf,
        budget: p.ctx.big_t.as_ref().map(Magnitude::to_string),
        twisted_norm_sq: f.norm_sq.to_string(),
        thresholds: summary(p),
        checks: f.checks,
    }
}

/// Re-derives every check from the instance and the certificate's (υ, φ, t_∞).
pub fn verify(inst: &Instance, cert: &Certificate, opts: &SolveOptions) -> Result<Verdict> {
    let p = Prepared::new(inst, opts.indices, opts.max_bits)?;
    let t_used = match &p.budget {
        Budget::Scale(t) => Some(t.clone()),
        Budget::Total(_) => cert.t_inf.clone().filter(|t| t >= &Rat::one()),
        Budget::None => None,
    };
    let checks = p.ctx.evaluate(&cert.candidate(), t_used.as_ref())?;
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| match c.place {
            Some(v) => format!("{}@{}", c.name, v),
            None => c.name.clone(),
        })
        .collect();
    Ok(Verdict {
        accepted: failures.is_empty(),
        undecidable: checks.iter().any(|c| c.status == Status::Undecidable),
        failures,
        checks,
    })
}
