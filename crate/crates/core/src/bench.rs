//! The single-form benchmark corpus and observed-versus-bound ratios.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::dirichlet::{
    dyadic_ceil, solve_prepared, Certificate, Indices, Instance, PlaceSpec, Prepared, SolveOptions,
};
use crate::error::Result;
use crate::exactnum::{rat_ceil, Magnitude, Qf2, Rat};
use crate::forms::{Place, QuadForm};
use crate::witt::{index_pair, random_sphere_points};

/// Budget multiples of 𝒯 used by the corpus: ⌈𝒯⌉, then 10𝒯 and 100𝒯
/// rounded up to 20-bit dyadics.
pub const BUDGET_MULTIPLES: [i64; 3] = [1, 10, 100];

/// Bits of the dyadic rounding of k·𝒯.
pub const BUDGET_BITS: u32 = 20;

/// Entry bound of the random directions behind the sphere points.
pub const DIRECTION_HEIGHT: i64 = 100;

/// A named form with a rational base point on q = 1.
#[derive(Clone, Debug)]
pub struct CorpusForm {
    pub name: &'static str,
    pub q: QuadForm,
    pub x0: Vec<Rat>,
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|j| Rat::from_integer(((i == j) as i64).into())).collect()
}

/// I₂, I₃, I₄, diag(1,2,3) and [[2,1],[1,2]] ⊕ ⟨1⟩.
pub fn corpus_forms() -> Vec<CorpusForm> {
    let hex = QuadForm::from_ints(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 1]]).expect("regular");
    vec![
        CorpusForm { name: "I2", q: QuadForm::identity(2), x0: unit(2, 0) },
        CorpusForm { name: "I3", q: QuadForm::identity(3), x0: unit(3, 0) },
        CorpusForm { name: "I4", q: QuadForm::identity(4), x0: unit(4, 0) },
        CorpusForm { name: "diag(1,2,3)", q: QuadForm::diagonal_ints(&[1, 2, 3]), x0: unit(3, 0) },
        CorpusForm { name: "A2+<1>", q: hex, x0: unit(3, 2) },
    ]
}

/// One corpus instance with the indices of its form precomputed.
#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub label: String,
    pub instance: Instance,
    pub indices: Indices,
}

/// The budgets for a threshold 𝒯.
pub fn corpus_budgets(t: &Magnitude) -> Result<Vec<Rat>> {
    BUDGET_MULTIPLES
        .iter()
        .map(|&k| match k {
            1 => Ok(match t.as_rat() {
                Some(r) => Rat::from_integer(rat_ceil(r)),
                None => Rat::from_integer(rat_ceil(&t.upper(64)?)),
            }),
            k => dyadic_ceil(t, k, BUDGET_BITS),
        })
        .collect()
}

/// `points` sphere points per form, every budget in [`corpus_budgets`].
pub fn corpus(points: usize, seed: u64) -> Result<Vec<CorpusInstance>> {
    let mut out = Vec::new();
    for (fi, f) in corpus_forms().into_iter().enumerate() {
        let (small, big) = index_pair(&f.q)?;
        let indices = Indices { iq: small.index, i_big: big.index };
        let pts = random_sphere_points(&f.q, &f.x0, points, DIRECTION_HEIGHT, seed.wrapping_add(fi as u64))?;
        for (pi, p) in pts.into_iter().enumerate() {
            let mut inst = Instance {
                q: f.q.clone(),
                q0: None,
                e: None,
                places: vec![PlaceSpec { v: Place::Infinity, alpha: p.alpha, t: None }],
                big_t: Some(Rat::from_integer(1.into())),
            };
            let prepared = Prepared::new(&inst, Some(indices), crate::exactnum::DEFAULT_MAX_BITS)?;
            for (k, budget) in BUDGET_MULTIPLES.iter().zip(corpus_budgets(&prepared.ctx.thresholds.t)?) {
                inst.big_t = Some(budget);
                out.push(CorpusInstance { label: format!("{}#{pi}x{k}", f.name), instance: inst.clone(), indices });
            }
        }
    }
    Ok(out)
}

/// One bench line: the observed error |q(αφ − υ)|/φ against the bound
/// 2√2𝒯²‖α‖‖b‖²/T_∞ it must respect.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub threshold: String,
    pub budget: String,
    pub phi: String,
    pub bound: String,
    pub observed: String,
    pub ratio: f64,
    pub accepted: bool,
}

pub fn bench_row(label: &str, inst: &Instance, opts: &SolveOptions) -> Result<(BenchRow, Certificate)> {
    let p = Prepared::new(inst, opts.indices, opts.max_bits)?;
    p.check_budget()?;
    let cert = solve_prepared(&p, opts)?;
    let ctx = &p.ctx;
    let pd = ctx.places.iter().find(|pd| pd.place.is_infinite()).expect("bench instances have ∞ ∈ V");
    let budget = ctx.place_budget(pd);
    let bound = Magnitude::int(8)
        .sqrt()
        .mul(&ctx.thresholds.t.powi(2))
        .mul(&pd.alpha_norm)
        .mul(&pd.dual_norm.powi(2))
        .div(&budget);
    let phi = Qf2::from(&cert.phi);
    let diff: Vec<Qf2> =
        pd.alpha.iter().zip(&cert.upsilon).map(|(a, x)| &(a * &phi) - &Qf2::from(x)).collect();
    let observed = &ctx.q.eval(&diff)?.abs() / &Qf2::from(&cert.phi.abs());
    let ratio = observed.to_f64() / bound.to_f64();
    let row = BenchRow {
        instance: label.to_string(),
        threshold: ctx.thresholds.t.to_string(),
        budget: ctx.big_t.as_ref().map(Magnitude::to_string).unwrap_or_default(),
        phi: crate::exactnum::rat_to_string(&cert.phi),
        bound: bound.to_string(),
        observed: observed.to_string(),
        ratio,
        accepted: cert.checks.iter().all(|c| c.passed()),
    };
    Ok((row, cert))
}

pub fn run_bench(instances: &[CorpusInstance], opts: &SolveOptions) -> Result<Vec<BenchRow>> {
    instances
        .iter()
        .map(|c| {
            let o = SolveOptions { indices: Some(c.indices), ..opts.clone() };
            bench_row(&c.label, &c.instance, &o).map(|(r, _)| r)
        })
        .collect()
}
