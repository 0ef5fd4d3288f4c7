//! Quadratic forms over ℚ, their values on ℚ(√d)-vectors, local and
//! archimedean norms, and heights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{
    char_poly, factor, is_prime, isolate_real_roots, padic_abs, DyadicInterval, Qf2, Rat, Real,
    RootOf,
};
use crate::linalg::{self, Mat};

/// A place of ℚ: the real absolute value or a p-adic one with |p|_p = 1/p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Finite(u64),
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not prime")))
        }
    }

    /// ε_v: 1 at the archimedean place, 0 otherwise.
    pub fn epsilon(&self) -> u32 {
        matches!(self, Place::Infinity) as u32
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// |r|_v for a rational r.
    pub fn abs(&self, r: &Rat) -> Rat {
        match self {
            Place::Infinity => r.abs(),
            Place::Finite(p) => padic_abs(r, *p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Infinity => s.serialize_str("inf"),
            Place::Finite(p) => s.serialize_u64(*p),
        }
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            P(u64),
        }
        let p = match Raw::deserialize(de)? {
            Raw::S(s) if s == "inf" => return Ok(Place::Infinity),
            Raw::S(s) => s.parse().map_err(|_| D::Error::custom(format!("bad place {s:?}")))?,
            Raw::P(p) => p,
        };
        Place::finite(p).map_err(D::Error::custom)
    }
}

/// A vector whose entries all lie in one field ℚ(√d).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AlgVector(Vec<Qf2>);

impl AlgVector {
    pub fn new(entries: Vec<Qf2>) -> Result<Self> {
        let d = entries.iter().map(Qf2::d).find(|&d| d != 1).unwrap_or(1);
        if let Some(bad) = entries.iter().find(|x| x.d() != 1 && x.d() != d) {
            return Err(Error::IncompatibleField(d, bad.d()));
        }
        Ok(AlgVector(entries))
    }

    pub fn from_rat(v: Vec<Rat>) -> Self {
        AlgVector(v.into_iter().map(Qf2::from_rat).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        AlgVector(v.iter().map(|&x| Qf2::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Qf2] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Qf2> {
        self.0
    }

    /// Common field parameter (1 when all entries are rational).
    pub fn d(&self) -> u64 {
        self.0.iter().map(Qf2::d).max().unwrap_or(1)
    }

    pub fn as_rat(&self) -> Option<Vec<Rat>> {
        self.0.iter().map(|x| x.as_rat().cloned()).collect()
    }
}

impl<'de> Deserialize<'de> for AlgVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        AlgVector::new(Vec::<Qf2>::deserialize(de)?).map_err(D::Error::custom)
    }
}

impl fmt::Debug for AlgVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl std::ops::Deref for AlgVector {
    type Target = [Qf2];
    fn deref(&self) -> &[Qf2] {
        &self.0
    }
}

/// A quadratic form q(x) = xᵀAx given by its symmetric matrix A.
///
/// Entries are rational for user-supplied forms; Gram matrices produced by
/// archimedean twisting may have entries in ℚ(√d).
#[derive(Clone, PartialEq, Eq)]
pub struct QuadForm {
    matrix: Mat,
}

#[derive(Serialize, Deserialize)]
struct QuadFormRepr {
    dim: usize,
    matrix: Vec<Vec<Qf2>>,
}

impl QuadForm {
    pub fn new(matrix: Mat) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidInput("form of dimension 0".into()));
        }
        if let Some(r) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        if !linalg::is_symmetric(&matrix) {
            return Err(Error::InvalidInput("form matrix is not symmetric".into()));
        }
        AlgVector::new(matrix.iter().flatten().cloned().collect())?;
        Ok(QuadForm { matrix })
    }

    pub fn from_rat(m: Vec<Vec<Rat>>) -> Result<Self> {
        QuadForm::new(linalg::from_rat(&m))
    }

    pub fn from_ints(m: &[&[i64]]) -> Result<Self> {
        QuadForm::new(linalg::from_ints(m))
    }

    pub fn identity(n: usize) -> Self {
        QuadForm { matrix: linalg::identity(n) }
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        let n = d.len();
        let mut m = linalg::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m[i][i] = Qf2::from_rat(x.clone());
        }
        QuadForm { matrix: m }
    }

    pub fn diagonal_ints(d: &[i64]) -> Self {
        QuadForm::diagonal(&d.iter().map(|&x| Rat::from_integer(x.into())).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Qf2 {
        &self.matrix[i][j]
    }

    pub fn rational_matrix(&self) -> Option<Vec<Vec<Rat>>> {
        linalg::to_rat(&self.matrix)
    }

    pub fn is_rational(&self) -> bool {
        self.matrix.iter().flatten().all(Qf2::is_rational)
    }

    pub fn is_integral(&self) -> bool {
        self.matrix.iter().flatten().all(|x| x.as_rat().is_some_and(Rat::is_integer))
    }

    fn check_dim(&self, x: &[Qf2]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    /// q(x) = xᵀAx.
    pub fn eval(&self, x: &[Qf2]) -> Result<Qf2> {
        self.check_dim(x)?;
        Ok(linalg::bilinear(&self.matrix, x, x))
    }

    /// b(x, y) = xᵀAy, so that b(x, x) = q(x).
    pub fn bilinear(&self, x: &[Qf2], y: &[Qf2]) -> Result<Qf2> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(linalg::bilinear(&self.matrix, x, y))
    }

    /// The linear form b(·, α) as the coefficient vector Aα.
    pub fn linear_form(&self, alpha: &[Qf2]) -> Result<Vec<Qf2>> {
        self.check_dim(alpha)?;
        Ok(linalg::mul_vec(&self.matrix, alpha))
    }

    pub fn det(&self) -> Qf2 {
        linalg::det(&self.matrix)
    }

    pub fn is_regular(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.matrix)
    }

    /// The form x ↦ q(Bx), i.e. matrix BᵀAB.
    pub fn pullback(&self, basis: &Mat) -> QuadForm {
        QuadForm { matrix: linalg::congruence(&self.matrix, basis) }
    }

    pub fn scaled(&self, c: &Qf2) -> QuadForm {
        QuadForm { matrix: self.matrix.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    /// Orthogonal sum q ⊥ r.
    pub fn direct_sum(&self, other: &QuadForm) -> QuadForm {
        let (n, m) = (self.dim(), other.dim());
        let mut out = linalg::zeros(n + m, n + m);
        for i in 0..n {
            out[i][..n].clone_from_slice(&self.matrix[i]);
        }
        for i in 0..m {
            out[n + i][n..].clone_from_slice(&other.matrix[i]);
        }
        QuadForm { matrix: out }
    }
}

/// det A(q) for a rational form.
pub fn gram_det(q: &QuadForm) -> Result<Rat> {
    q.det()
        .as_rat()
        .cloned()
        .ok_or_else(|| Error::InvalidInput("gram_det needs a rational form".into()))
}

pub fn eval_q(q: &QuadForm, x: &AlgVector) -> Result<Qf2> {
    q.eval(x)
}

pub fn eval_b(q: &QuadForm, x: &AlgVector, y: &AlgVector) -> Result<Qf2> {
    q.bilinear(x, y)
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.matrix).finish()
    }
}

impl Serialize for QuadForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadFormRepr { dim: self.dim(), matrix: self.matrix.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadForm {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = QuadFormRepr::deserialize(de)?;
        if r.matrix.len() != r.dim {
            return Err(D::Error::custom(format!(
                "dim {} does not match {} matrix rows",
                r.dim,
                r.matrix.len()
            )));
        }
        QuadForm::new(r.matrix).map_err(D::Error::custom)
    }
}

fn rational_entries(q: &QuadForm) -> Result<Vec<Vec<Rat>>> {
    q.rational_matrix()
        .ok_or_else(|| Error::InvalidInput("p-adic norms need a rational form".into()))
}

fn max_padic(entries: impl IntoIterator<Item = Rat>, p: u64) -> Rat {
    entries.into_iter().map(|x| padic_abs(&x, p)).max().unwrap_or_else(Rat::zero)
}

/// ‖q‖_p = max_ij |A_ij|_p in the standard basis.
pub fn local_norm(q: &QuadForm, p: u64) -> Result<Rat> {
    Ok(max_padic(rational_entries(q)?.into_iter().flatten(), p))
}

/// ‖q‖_p when the unit ball is {x : A_p x ∈ ℤ_pⁿ}: the standard norm of the
/// form expressed in the basis A_p⁻¹.
pub fn local_norm_in(q: &QuadForm, p: u64, a_p: &Mat) -> Result<Rat> {
    let inv = linalg::inverse(a_p)?;
    local_norm(&q.pullback(&inv), p)
}

/// ‖x‖_p for the unit ball {x : A_p x ∈ ℤ_pⁿ}; `None` means A_p = I.
pub fn vector_norm_p(x: &[Rat], p: u64, a_p: Option<&Mat>) -> Rat {
    match a_p {
        None => max_padic(x.iter().cloned(), p),
        Some(a) => {
            let xs: Vec<Qf2> = x.iter().map(Qf2::from).collect();
            max_padic(
                linalg::mul_vec(a, &xs).into_iter().map(|c| c.as_rat().expect("rational").clone()),
                p,
            )
        }
    }
}

/// ‖x‖² = xᵀG₀x at the archimedean place.
pub fn vector_norm_sq(g0: &QuadForm, x: &[Qf2]) -> Result<Qf2> {
    g0.eval(x)
}

fn check_pd(g0: &QuadForm, n: usize) -> Result<()> {
    if g0.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g0.dim() });
    }
    if !g0.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(())
}

/// ‖q‖_∞ = max |xᵀAy| over G₀-unit x, y: the spectral radius of G₀⁻¹A,
/// as an exact algebraic number.
pub fn inf_norm(q: &QuadForm, g0: &QuadForm) -> Result<Real> {
    check_pd(g0, q.dim())?;
    let m = linalg::mul(&linalg::inverse(g0.matrix())?, q.matrix());
    let poly = char_poly(&m);
    let roots = isolate_real_roots(&poly);
    if roots.is_empty() {
        return Ok(Real::int(0));
    }
    let sf = poly.squarefree();
    let smallest = &roots[0];
    let largest = &roots[roots.len() - 1];
    let top = Real::root_of(RootOf::new(sf.clone(), largest.0.clone(), largest.1.clone(), "λmax"));
    let bottom = Real::root_of(RootOf::new(sf, smallest.0.clone(), smallest.1.clone(), "λmin"));
    Ok(top.abs().max(&bottom.abs()))
}

/// Certified enclosure of ‖q‖_∞ with width about 2^-bits.
pub fn inf_norm_bound(q: &QuadForm, g0: &QuadForm, bits: u32) -> Result<DyadicInterval> {
    inf_norm(q, g0)?.enclose(bits)
}

/// Norm of the linear form b(·, α).
#[derive(Clone, Debug)]
pub struct DualNorm {
    /// Exact square of the norm at ∞; `None` at finite places.
    pub square: Option<Qf2>,
    pub value: Real,
}

/// Operator norm of x ↦ b(x, α) at a place.
///
/// At ∞ with Gram G₀ this is √(fᵀG₀⁻¹f) for f = Aα. At p with unit ball
/// {x : A_p x ∈ ℤ_pⁿ} it is max_i |(A_p⁻ᵀ f)_i|_p.
pub fn dual_norm(
    q: &QuadForm,
    alpha: &[Qf2],
    place: Place,
    g0: &QuadForm,
    a_p: Option<&Mat>,
) -> Result<DualNorm> {
    let f = q.linear_form(alpha)?;
    match place {
        Place::Infinity => {
            check_pd(g0, q.dim())?;
            let inv = linalg::inverse(g0.matrix())?;
            let sq = linalg::bilinear(&inv, &f, &f);
            Ok(DualNorm { value: Real::exact(sq.clone()).sqrt(), square: Some(sq) })
        }
        Place::Finite(p) => {
            let f = match a_p {
                None => f,
                Some(a) => linalg::mul_vec(&linalg::transpose(&linalg::inverse(a)?), &f),
            };
            let coords: Option<Vec<Rat>> = f.iter().map(|x| x.as_rat().cloned()).collect();
            let coords = coords.ok_or_else(|| {
                Error::InvalidInput("finite-place α must have rational entries".into())
            })?;
            Ok(DualNorm { square: None, value: Real::rat(max_padic(coords, p)) })
        }
    }
}

/// Primes at which ‖q‖_p (standard basis) can differ from 1.
pub fn bad_primes(q: &QuadForm) -> Result<BTreeSet<u64>> {
    let m = rational_entries(q)?;
    let nonzero: Vec<&Rat> = m.iter().flatten().filter(|x| !x.is_zero()).collect();
    let mut out = BTreeSet::new();
    if nonzero.is_empty() {
        return Ok(out);
    }
    let content = nonzero.iter().fold(BigInt::zero(), |g, x| g.gcd(x.numer()));
    let denom = nonzero.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    for n in [content, denom] {
        out.extend(factor(&n).into_iter().map(|(p, _)| p));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Heights {
    pub h_q: Real,
    pub h_1q: Real,
    pub inf_norm: Real,
    /// ‖q‖_p at every prime where it differs from 1.
    pub local: BTreeMap<u64, Rat>,
}

/// H(q) = ∏_v ‖q‖_v and H(1,q) = ∏_v max(1, ‖q‖_v) over all places of ℚ,
/// for E given by G₀ at ∞ and local matrices A_p (identity elsewhere).
pub fn heights(q: &QuadForm, g0: &QuadForm, local: &BTreeMap<u64, Mat>) -> Result<Heights> {
    let inf = inf_norm(q, g0)?;
    if q.matrix().iter().flatten().all(Qf2::is_zero) {
        return Ok(Heights {
            h_q: Real::int(0),
            h_1q: Real::int(1),
            inf_norm: inf,
            local: BTreeMap::new(),
        });
    }
    let mut primes = bad_primes(q)?;
    primes.extend(local.keys().copied());
    let mut norms = BTreeMap::new();
    let (mut prod, mut prod1) = (Rat::one(), Rat::one());
    for p in primes {
        let np = match local.get(&p) {
            Some(a) => local_norm_in(q, p, a)?,
            None => local_norm(q, p)?,
        };
        if np.is_one() {
            continue;
        }
        prod *= &np;
        prod1 *= np.clone().max(Rat::one());
        norms.insert(p, np);
    }
    Ok(Heights {
        h_q: inf.mul(&Real::rat(prod)),
        h_1q: inf.max(&Real::int(1)).mul(&Real::rat(prod1)),
        inf_norm: inf,
        local: norms,
    })
}

/// (H(q), H(1,q)) for E = (ℤⁿ, G₀).
pub fn height_q(q: &QuadForm, g0: &QuadForm) -> Result<(Real, Real)> {
    let h = heights(q, g0, &BTreeMap::new())?;
    Ok((h.h_q, h.h_1q))
}
