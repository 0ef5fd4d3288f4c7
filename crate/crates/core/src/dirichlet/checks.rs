//! Named, exactly evaluated inequalities that make up a certificate.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factor, padic_abs, serde_rat, Magnitude, Qf2, Rat, Real};
use crate::forms::{Place, QuadForm};
use crate::lattice::AdelicSpaceQ;
use crate::linalg::Vector;

use super::space::PlaceData;
use super::thresholds::{sphere_threshold, Thresholds, TwoFormThresholds};
use super::twist::{norm_p, twist_coords, twisted_gram_inf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<=")]
    Le,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Le => "<=",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The enclosures still straddle at the precision cap.
    Undecidable,
}

/// One inequality or identity with both sides as exact expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub place: Option<Place>,
    pub lhs: String,
    pub relation: Relation,
    pub rhs: String,
    pub status: Status,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn mag(x: &Qf2) -> Magnitude {
    Magnitude::from_real(Real::exact(x.clone()))
}

fn mag_rat(x: &Rat) -> Magnitude {
    Magnitude::from_real(Real::rat(x.clone()))
}

fn le_check(name: &str, place: Option<Place>, lhs: &Magnitude, rhs: &Magnitude, bits: u32) -> Check {
    let status = match lhs.cmp(rhs, bits) {
        Ok(o) if o.is_le() => Status::Pass,
        Ok(_) => Status::Fail,
        Err(_) => Status::Undecidable,
    };
    Check {
        name: name.into(),
        place,
        lhs: lhs.to_string(),
        relation: Relation::Le,
        rhs: rhs.to_string(),
        status,
    }
}

fn exact_check(name: &str, place: Option<Place>, lhs: &Qf2, rel: Relation, rhs: &Qf2) -> Check {
    let holds = match rel {
        Relation::Eq => lhs == rhs,
        Relation::Ne => lhs != rhs,
        Relation::Le => lhs.cmp_exact(rhs).is_le(),
    };
    Check {
        name: name.into(),
        place,
        lhs: lhs.to_string(),
        relation: rel,
        rhs: rhs.to_string(),
        status: if holds { Status::Pass } else { Status::Fail },
    }
}

/// Everything needed to evaluate the checks, independent of any search.
#[derive(Clone, Debug)]
pub struct CheckContext {
    pub e: AdelicSpaceQ,
    pub q: QuadForm,
    pub places: Vec<PlaceData>,
    pub thresholds: Thresholds,
    /// Global budget T when ∞ ∈ V (given, or t_∞·𝒯).
    pub big_t: Option<Magnitude>,
    /// Single-form setting: V = {∞}, E = (ℤⁿ, q), q integral.
    pub single_form: bool,
    pub two_form: Option<TwoFormThresholds>,
    pub max_bits: u32,
}

/// A candidate (υ, φ) with the budget parameter used for the identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    #[serde(with = "serde_rat::vec")]
    pub upsilon: Vec<Rat>,
    #[serde(with = "serde_rat")]
    pub phi: Rat,
}

impl CheckContext {
    fn in_v(&self, v: Place) -> Option<&PlaceData> {
        self.places.iter().find(|p| p.place == v)
    }

    /// T_v = (2𝒯)^{ε_v}·‖α_v‖·‖b(·,α_v)‖·|t_v/2|_v; at ∞ this is T·‖α‖·‖b‖.
    pub fn place_budget(&self, pd: &PlaceData) -> Magnitude {
        match (pd.place, &self.big_t) {
            (Place::Infinity, Some(t)) => t.mul(&pd.alpha_dual()),
            (Place::Infinity, None) => unreachable!("∞ ∈ V always carries a budget"),
            (Place::Finite(_), _) => pd.alpha_dual().mul(&pd.half_t_abs()),
        }
    }

    /// Primes outside V where (υ, φ) could fail to be integral in E.
    fn relevant_primes(&self, c: &Candidate) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> = self.e.local.keys().copied().collect();
        for x in c.upsilon.iter().chain(std::iter::once(&c.phi)) {
            out.extend(factor(x.denom()).into_iter().map(|(p, _)| p));
        }
        out.retain(|&p| self.in_v(Place::Finite(p)).is_none());
        out
    }

    pub fn evaluate(&self, c: &Candidate, t_used: Option<&Rat>) -> Result<Vec<Check>> {
        let n = self.q.dim();
        if c.upsilon.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: c.upsilon.len() });
        }
        let bits = self.max_bits;
        let u: Vector = c.upsilon.iter().map(Qf2::from).collect();
        let phi = Qf2::from(&c.phi);
        let th = &self.thresholds;
        let mut out = vec![
            exact_check("isotropy", None, &self.q.eval(&u)?, Relation::Eq, &(&phi * &phi)),
            exact_check("phi_nonzero", None, &phi, Relation::Ne, &Qf2::zero()),
        ];
        if self.in_v(Place::Infinity).is_none() {
            let lhs = &self.e.gram.eval(&u)? + &(&phi * &phi);
            out.push(le_check("bound1", Some(Place::Infinity), &mag(&lhs), &th.t.powi(2), bits));
        }
        for p in self.relevant_primes(c) {
            let lhs = norm_p(&u, p, self.e.local_matrix(p))?.max(padic_abs(&c.phi, p));
            out.push(exact_check("bound1", Some(Place::Finite(p)), &Qf2::from(lhs), Relation::Le, &Qf2::one()));
        }
        for pd in &self.places {
            let budget = self.place_budget(pd);
            let diff: Vector = pd.alpha.iter().zip(&u).map(|(a, x)| &(a * &phi) - x).collect();
            let err = self.q.eval(&diff)?;
            match pd.place {
                Place::Infinity => {
                    let a_sq = pd.alpha_norm_sq.as_ref().expect("archimedean");
                    let lhs = &self.e.gram.eval(&u)? + &(&(&phi * &phi) * a_sq);
                    out.push(le_check("bound2", Some(pd.place), &mag(&lhs), &budget.powi(2), bits));
                    let rhs = Magnitude::int(8)
                        .sqrt()
                        .mul(&th.t.powi(2))
                        .mul(&mag_rat(&c.phi.abs()))
                        .div(&budget)
                        .mul(&pd.alpha_norm)
                        .mul(&pd.dual_norm.powi(2));
                    out.push(le_check("bound3", Some(pd.place), &mag(&err.abs()), &rhs, bits));
                }
                Place::Finite(p) => {
                    let a_norm = pd.alpha_norm.as_rat().expect("rational");
                    let lhs = norm_p(&u, p, self.e.local_matrix(p))?.max(padic_abs(&c.phi, p) * a_norm);
                    out.push(le_check("bound2", Some(pd.place), &mag_rat(&lhs), &budget, bits));
                    let err = padic_abs(err.as_rat().expect("rational at finite places"), p);
                    let rhs = mag_rat(&padic_abs(&c.phi, p))
                        .div(&budget)
                        .mul(&pd.alpha_norm)
                        .mul(&pd.dual_norm.powi(2));
                    out.push(le_check("bound3", Some(pd.place), &mag_rat(&err), &rhs, bits));
                }
            }
        }
        if self.single_form {
            self.single_form_checks(c, &u, &phi, t_used, &mut out)?;
        }
        if let Some(two) = &self.two_form {
            self.two_form_checks(two, c, &u, &phi, &mut out)?;
        }
        Ok(out)
    }

    fn single_form_checks(
        &self,
        c: &Candidate,
        u: &[Qf2],
        phi: &Qf2,
        t_used: Option<&Rat>,
        out: &mut Vec<Check>,
    ) -> Result<()> {
        let bits = self.max_bits;
        let pd = self.in_v(Place::Infinity).expect("single-form setting has ∞ ∈ V");
        let big_t = self.big_t.as_ref().expect("budget");
        out.push(exact_check("thm1.phi_lower", None, &Qf2::one(), Relation::Le, phi));
        out.push(le_check("thm1.phi_upper", None, &mag(phi), big_t, bits));
        if c.phi.is_zero() {
            return Ok(());
        }
        let ratio: Vector = pd.alpha.iter().zip(u).map(|(a, x)| a - &(x / phi)).collect();
        let err = self.q.eval(&ratio)?;
        let s = sphere_threshold(&self.q)?;
        let rhs = Magnitude::int(8).sqrt().mul(&s.powi(2)).div(&mag(phi)).div(big_t);
        out.push(le_check("thm1.approximation", None, &mag(&err), &rhs, bits));
        let b = self.q.bilinear(u, &pd.alpha)?;
        let two = Qf2::from_int(2);
        let chain = &two * &(phi - &b);
        out.push(exact_check("thm1.identity", None, &(&err * phi), Relation::Eq, &chain));
        if let Some(t) = t_used {
            let (x, y) = twist_coords(&b, phi, t)?;
            let twisted = &(&two / &Qf2::from(t)) * &(&y - &x);
            out.push(exact_check("thm1.identity_twist", None, &chain, Relation::Eq, &twisted));
            let g = QuadForm::new(twisted_gram_inf(&self.q, &self.e.gram, &pd.alpha, t)?)?;
            let mut z = u.to_vec();
            z.push(phi.clone());
            let t2 = Qf2::from(t * t);
            out.push(exact_check("thm1.phi_vs_twisted_norm", None, &(phi * phi), Relation::Le, &(&t2 * &g.eval(&z)?)));
        }
        Ok(())
    }

    fn two_form_checks(
        &self,
        two: &TwoFormThresholds,
        c: &Candidate,
        u: &[Qf2],
        phi: &Qf2,
        out: &mut Vec<Check>,
    ) -> Result<()> {
        let bits = self.max_bits;
        let pd = self.in_v(Place::Infinity).expect("two-form setting has ∞ ∈ V");
        let big_t = self.big_t.as_ref().expect("budget");
        let integral = c.upsilon.iter().chain(std::iter::once(&c.phi)).all(Rat::is_integer);
        out.push(Check {
            name: "thm2.integral".into(),
            place: None,
            lhs: "(upsilon, phi)".into(),
            relation: Relation::Eq,
            rhs: "integer vector".into(),
            status: if integral { Status::Pass } else { Status::Fail },
        });
        let a_sq = pd.alpha_norm_sq.as_ref().expect("archimedean");
        let lhs = &self.e.gram.eval(u)? + &(&(phi * phi) * a_sq);
        let rhs = pd.alpha_dual().mul(big_t).powi(2);
        out.push(le_check("thm2.norm", None, &mag(&lhs), &rhs, bits));
        let diff: Vector = pd.alpha.iter().zip(u).map(|(a, x)| &(a * phi) - x).collect();
        let err = self.q.eval(&diff)?.abs();
        let rhs = Magnitude::int(8)
            .sqrt()
            .mul(&two.t.powi(2))
            .mul(&mag_rat(&c.phi.abs()))
            .mul(&pd.dual_norm)
            .div(big_t);
        out.push(le_check("thm2.approximation", None, &mag(&err), &rhs, bits));
        Ok(())
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

