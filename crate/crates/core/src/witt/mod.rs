//! Rational isotropy: isotropic vectors with anisotropy certificates, Witt
//! index by hyperbolic splitting, representation of 1, and rational points
//! on q = 1.

mod local;
mod search;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use local::{hilbert_symbol, is_local_square, local_obstruction, locally_isotropic};
pub use search::IntForm;

use crate::error::{Error, Result};
use crate::exactnum::{serde_rat, Int, Qf2, Rat};
use crate::forms::{AlgVector, Place, QuadForm};
use crate::lattice::{enumerate_within_limit, LatticePresentation};
use crate::linalg::{self, Mat, Vector};
use search::{box_size, SearchOutcome};

/// Largest box (in free-coordinate points) exhausted by the bounded search;
/// beyond it anisotropy is certified by a local obstruction instead.
pub const SEARCH_BUDGET: u128 = 50_000_000;

/// Cap on the enumeration used to pick the canonical isotropic vector.
const CANONICAL_LIMIT: usize = 200_000;

/// Why a form has no nontrivial rational zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnisotropyCertificate {
    /// q or −q is positive-definite (includes every regular 1-dimensional form).
    Definite,
    /// No zero with sup-norm ≤ `bound`, the complete Cassels-type radius.
    BoundedSearch { bound: u128 },
    /// The form has no zero over the completion at `place`.
    LocalObstruction { place: Place },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isotropy {
    /// Primitive integer zero, canonical under the majorant ordering.
    Isotropic(Vec<Int>),
    Anisotropic(AnisotropyCertificate),
}

fn check_regular(q: &QuadForm) -> Result<()> {
    if !q.is_regular() {
        return Err(Error::InvalidInput("form must be regular (det ≠ 0)".into()));
    }
    Ok(())
}

fn is_definite(q: &QuadForm) -> bool {
    q.is_positive_definite() || q.scaled(&Qf2::from_int(-1)).is_positive_definite()
}

/// Diagonal entries of a congruent diagonal form, or `None` if elimination
/// meets an isotropic basis vector.
fn diagonalize(q: &QuadForm) -> Option<Vec<Rat>> {
    let mut a = q.rational_matrix()?;
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][i].is_zero())?;
        if (k..n).any(|i| a[i][i].is_zero() && (k..n).any(|j| !a[i][j].is_zero())) {
            return None;
        }
        a.swap(p, k);
        for row in a.iter_mut() {
            row.swap(p, k);
        }
        let piv = a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &piv;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
        for j in k + 1..n {
            a[k][j] = Rat::zero();
        }
        for i in k + 1..n {
            a[i][k] = Rat::zero();
        }
        out.push(piv);
    }
    Some(out)
}

/// Positive-definite majorant |A| + n·max|a_ij|·I used to order zeros.
fn majorant(f: &IntForm) -> QuadForm {
    let n = f.dim();
    let shift = n as i128 * f.max_abs();
    let m: Mat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = f.a[i][j].abs() + if i == j { shift } else { 0 };
                    Qf2::from_rat(Rat::from_integer(v.into()))
                })
                .collect()
        })
        .collect();
    QuadForm::new(m).expect("symmetric")
}

/// The canonical zero: minimal majorant norm, then lexicographically largest.
fn canonical_zero(f: &IntForm, found: Vec<i128>) -> Vec<i128> {
    let g = majorant(f);
    let qv: Vector = found.iter().map(|&x| Qf2::from_rat(Rat::from_integer(x.into()))).collect();
    let r_sq = g.eval(&qv).expect("dims");
    let lat = LatticePresentation::standard(g).expect("majorant is positive-definite");
    match enumerate_within_limit(&lat, &r_sq, CANONICAL_LIMIT) {
        Ok(vs) => vs
            .into_iter()
            .map(|s| s.coords.into_iter().map(i128::from).collect::<Vec<_>>())
            .find(|c| f.eval(c) == 0)
            .unwrap_or(found),
        Err(_) => found,
    }
}

/// Decides isotropy of a regular rational form, with a certificate either way.
pub fn isotropy(q: &QuadForm) -> Result<Isotropy> {
    check_regular(q)?;
    let f = IntForm::from_form(q)?;
    let n = f.dim();
    let to_int = |v: Vec<i128>| v.into_iter().map(Int::from).collect();
    if is_definite(q) {
        return Ok(Isotropy::Anisotropic(AnisotropyCertificate::Definite));
    }
    let bound = f.cassels_bound();
    if box_size(n - 1, bound) <= SEARCH_BUDGET {
        return Ok(match f.search(Some(bound)) {
            SearchOutcome::Found(v) => Isotropy::Isotropic(to_int(canonical_zero(&f, v))),
            SearchOutcome::Exhausted => {
                Isotropy::Anisotropic(AnisotropyCertificate::BoundedSearch { bound })
            }
        });
    }
    if let Some(diag) = diagonalize(q) {
        let ints: Vec<Int> = diag.iter().map(|d| d.numer() * d.denom()).collect();
        if let Some(place) = local_obstruction(&ints) {
            return Ok(Isotropy::Anisotropic(AnisotropyCertificate::LocalObstruction { place }));
        }
    }
    // locally isotropic everywhere, hence isotropic: the unbounded search terminates
    match f.search(None) {
        SearchOutcome::Found(v) => Ok(Isotropy::Isotropic(to_int(canonical_zero(&f, v)))),
        SearchOutcome::Exhausted => unreachable!("unbounded search returns only on success"),
    }
}

/// A primitive integer zero of q, or `None` when q is anisotropic.
pub fn isotropic_vector(q: &QuadForm) -> Result<Option<Vec<Int>>> {
    Ok(match isotropy(q)? {
        Isotropy::Isotropic(v) => Some(v),
        Isotropy::Anisotropic(_) => None,
    })
}

/// Witt decomposition: hyperbolic pairs plus an anisotropic residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WittReport {
    pub index: usize,
    pub hyperbolic_pairs: Vec<HyperbolicPair>,
    /// Columns spanning the residual anisotropic subspace.
    pub anisotropic_basis: Vec<RatVector>,
    /// Gram matrix of q on `anisotropic_basis`; absent when it is empty.
    pub anisotropic_gram: Option<QuadForm>,
    /// Anisotropy of the residual; absent when it is empty.
    pub certificate: Option<AnisotropyCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVector(#[serde(with = "serde_rat::vec")] pub Vec<Rat>);

/// u, w with q(u) = q(w) = 0 and b(u, w) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicPair {
    pub u: RatVector,
    pub w: RatVector,
}

fn to_qf2(v: &[Rat]) -> Vector {
    v.iter().map(Qf2::from).collect()
}

fn to_rat(v: &[Qf2]) -> Vec<Rat> {
    v.iter().map(|x| x.as_rat().expect("rational").clone()).collect()
}

impl WittReport {
    /// Re-checks every identity and the dimension count exactly.
    pub fn verify(&self, q: &QuadForm) -> Result<bool> {
        let b = |x: &[Rat], y: &[Rat]| q.bilinear(&to_qf2(x), &to_qf2(y));
        let mut span: Vec<&[Rat]> = Vec::new();
        for (i, pair) in self.hyperbolic_pairs.iter().enumerate() {
            let (u, w) = (&pair.u.0[..], &pair.w.0[..]);
            if !b(u, u)?.is_zero() || !b(w, w)?.is_zero() || b(u, w)? != Qf2::one() {
                return Ok(false);
            }
            for other in &self.hyperbolic_pairs[..i] {
                for x in [&other.u.0[..], &other.w.0[..]] {
                    if !b(u, x)?.is_zero() || !b(w, x)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            span.push(u);
            span.push(w);
        }
        for r in &self.anisotropic_basis {
            for x in &span {
                if !b(&r.0, x)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        let all: Vec<Vector> = span
            .iter()
            .map(|x| to_qf2(x))
            .chain(self.anisotropic_basis.iter().map(|r| to_qf2(&r.0)))
            .collect();
        Ok(self.index == self.hyperbolic_pairs.len()
            && 2 * self.index + self.anisotropic_basis.len() == q.dim()
            && linalg::rank(&all) == q.dim())
    }
}

/// Splits hyperbolic planes off q until the residual is anisotropic.
pub fn witt_index(q: &QuadForm) -> Result<WittReport> {
    check_regular(q)?;
    if !q.is_rational() {
        return Err(Error::InvalidInput("witt_index needs a rational form".into()));
    }
    let n = q.dim();
    let mut basis: Vec<Vector> = (0..n).map(|j| linalg::column(&linalg::identity(n), j)).collect();
    let mut pairs = Vec::new();
    loop {
        if basis.is_empty() {
            return Ok(WittReport {
                index: pairs.len(),
                hyperbolic_pairs: pairs,
                anisotropic_basis: Vec::new(),
                anisotropic_gram: None,
                certificate: None,
            });
        }
        let w_mat = linalg::from_columns(&basis);
        let restricted = q.pullback(&w_mat);
        let v = match isotropy(&restricted)? {
            Isotropy::Anisotropic(cert) => {
                return Ok(WittReport {
                    index: pairs.len(),
                    hyperbolic_pairs: pairs,
                    anisotropic_basis: basis.iter().map(|c| RatVector(to_rat(c))).collect(),
                    anisotropic_gram: Some(restricted),
                    certificate: Some(cert),
                });
            }
            Isotropy::Isotropic(v) => v,
        };
        let vq: Vector = v.iter().map(|x| Qf2::from_rat(Rat::from_integer(x.clone()))).collect();
        let u = linalg::mul_vec(&w_mat, &vq);
        let pairing = linalg::mul_vec(restricted.matrix(), &vq);
        let j = pairing.iter().position(|x| !x.is_zero()).expect("regular restriction");
        let mut w: Vector = basis[j].iter().map(|x| x / &pairing[j]).collect();
        let half_qw = &q.eval(&w)? / &Qf2::from_int(2);
        w = w.iter().zip(&u).map(|(wi, ui)| wi - &(&half_qw * ui)).collect();
        let au = q.linear_form(&u)?;
        let aw = q.linear_form(&w)?;
        let cons: Mat = vec![
            basis.iter().map(|c| linalg::dot(&au, c)).collect(),
            basis.iter().map(|c| linalg::dot(&aw, c)).collect(),
        ];
        let kernel = linalg::null_space(&cons, basis.len());
        basis = kernel.iter().map(|k| linalg::mul_vec(&w_mat, k)).collect();
        pairs.push(HyperbolicPair { u: RatVector(to_rat(&u)), w: RatVector(to_rat(&w)) });
    }
}

/// Outcome of asking whether q takes the value 1 on ℚⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneRepresentation {
    Witness(Vec<Rat>),
    /// Q(x, y) = q(x) − y² is anisotropic.
    Impossible(AnisotropyCertificate),
}

/// Finds x ∈ ℚⁿ with q(x) = 1 through the isotropy of q(x) − y².
pub fn represents_one(q: &QuadForm) -> Result<OneRepresentation> {
    check_regular(q)?;
    let n = q.dim();
    if let Some(i) = (0..n).find(|&i| *q.entry(i, i) == Qf2::one()) {
        let mut x = vec![Rat::zero(); n];
        x[i] = Rat::from_integer(1.into());
        return Ok(OneRepresentation::Witness(x));
    }
    let big = q.direct_sum(&QuadForm::diagonal_ints(&[-1]));
    let v = match isotropy(&big)? {
        Isotropy::Anisotropic(c) => return Ok(OneRepresentation::Impossible(c)),
        Isotropy::Isotropic(v) => v,
    };
    let y = Rat::from_integer(v[n].clone());
    if !y.is_zero() {
        return Ok(OneRepresentation::Witness(
            v[..n].iter().map(|x| Rat::from_integer(x.clone()) / &y).collect(),
        ));
    }
    // q itself is isotropic: q(u/2 + w) = b(u, w) = 1 on a hyperbolic pair
    let report = witt_index(q)?;
    let pair = report.hyperbolic_pairs.first().expect("q is isotropic");
    let half = Rat::new(1.into(), 2.into());
    Ok(OneRepresentation::Witness(
        pair.u.0.iter().zip(&pair.w.0).map(|(u, w)| u * &half + w).collect(),
    ))
}

/// A point α with q(α) = 1 exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub alpha: AlgVector,
}

/// Second intersection of the line x0 + s·m with q = 1, for each direction m.
///
/// s = −2b(x0, m)/q(m). Directions with q(m) = b(x0, m) = 0 lie on the
/// quadric's asymptotic cone through x0 and are skipped; q(m) = 0 with
/// b(x0, m) ≠ 0 meets the quadric only at x0.
pub fn sphere_points(q: &QuadForm, x0: &[Rat], directions: &[Vec<Rat>]) -> Result<Vec<SpherePoint>> {
    let x0q = to_qf2(x0);
    if q.eval(&x0q)? != Qf2::one() {
        return Err(Error::InvalidInput("base point must satisfy q(x0) = 1".into()));
    }
    let mut out = Vec::new();
    for m in directions {
        let mq = to_qf2(m);
        let qm = q.eval(&mq)?;
        let b = q.bilinear(&x0q, &mq)?;
        if qm.is_zero() {
            if !b.is_zero() {
                out.push(SpherePoint { alpha: AlgVector::from_rat(x0.to_vec()) });
            }
            continue;
        }
        let s = &(&b * &Qf2::from_int(-2)) / &qm;
        let alpha: Vector = x0q.iter().zip(&mq).map(|(x, d)| x + &(&s * d)).collect();
        debug_assert_eq!(q.eval(&alpha)?, Qf2::one());
        out.push(SpherePoint { alpha: AlgVector::new(alpha)? });
    }
    Ok(out)
}

/// `count` sphere points from directions with integer entries in
/// [−height, height], drawn from a ChaCha stream seeded by `seed`.
/// Points equal to x0 are skipped so that every output is distinct from it.
pub fn random_sphere_points(
    q: &QuadForm,
    x0: &[Rat],
    count: usize,
    height: i64,
    seed: u64,
) -> Result<Vec<SpherePoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = q.dim();
    let base = AlgVector::from_rat(x0.to_vec());
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::InvalidInput("could not generate enough sphere points".into()));
        }
        let m: Vec<Rat> =
            (0..n).map(|_| Rat::from_integer(rng.gen_range(-height..=height).into())).collect();
        if m.iter().all(Zero::is_zero) {
            continue;
        }
        for p in sphere_points(q, x0, &[m])? {
            if p.alpha != base {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// i(q) and i(Q) for Q(x, y) = q(x) − y².
pub fn index_pair(q: &QuadForm) -> Result<(WittReport, WittReport)> {
    let small = witt_index(q)?;
    let big = witt_index(&q.direct_sum(&QuadForm::diagonal_ints(&[-1])))?;
    Ok((small, big))
}

/// Signature (positive, negative) of a regular rational form.
pub fn signature(q: &QuadForm) -> Option<(usize, usize)> {
    let d = diagonalize(q)?;
    let pos = d.iter().filter(|x| x.is_positive()).count();
    Some((pos, d.len() - pos))
}
