//! The hyperbolic twist ξ of ℚⁿ × ℚ along a point α with q(α) = 1, and
//! the twisted norms it induces at a place.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{padic_abs, Qf2, Rat};
use crate::forms::QuadForm;
use crate::linalg::{self, Mat, Vector};

fn half() -> Qf2 {
    Qf2::from_rat(Rat::new(1.into(), 2.into()))
}

/// (½(1/t + t), ½(1/t − t)).
fn twist_pair(t: &Rat) -> Result<(Qf2, Qf2)> {
    if t.is_zero() {
        return Err(Error::Domain("twist parameter t must be nonzero".into()));
    }
    let inv = Qf2::from_rat(t.recip());
    let t = Qf2::from_rat(t.clone());
    Ok((&half() * &(&inv + &t), &half() * &(&inv - &t)))
}

/// (𝒳, 𝒴) = (½(1/t+t)·b + ½(1/t−t)·y, ½(1/t−t)·b + ½(1/t+t)·y).
pub fn twist_coords(bx_alpha: &Qf2, y: &Qf2, t: &Rat) -> Result<(Qf2, Qf2)> {
    let (c, s) = twist_pair(t)?;
    Ok((&(&c * bx_alpha) + &(&s * y), &(&s * bx_alpha) + &(&c * y)))
}

fn check_alpha(q: &QuadForm, alpha: &[Qf2]) -> Result<()> {
    if alpha.len() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), got: alpha.len() });
    }
    if q.eval(alpha)? != Qf2::one() {
        return Err(Error::InvalidInput("twist point must satisfy q(α) = 1".into()));
    }
    Ok(())
}

fn apply_with(q: &QuadForm, alpha: &[Qf2], t: &Rat, x: &[Qf2], y: &Qf2) -> Result<(Vector, Qf2)> {
    check_alpha(q, alpha)?;
    let b = q.bilinear(x, alpha)?;
    let (cx, cy) = twist_coords(&b, y, t)?;
    let shift = &cx - &b;
    Ok((x.iter().zip(alpha).map(|(xi, ai)| xi + &(&shift * ai)).collect(), cy))
}

/// ξ(x, y) = (x − b(x,α)α + 𝒳α, 𝒴).
pub fn xi_apply(q: &QuadForm, alpha: &[Qf2], t: &Rat, x: &[Qf2], y: &Qf2) -> Result<(Vector, Qf2)> {
    apply_with(q, alpha, t, x, y)
}

/// ξ⁻¹, which is the twist with parameter 1/t.
pub fn xi_inverse(q: &QuadForm, alpha: &[Qf2], t: &Rat, x: &[Qf2], y: &Qf2) -> Result<(Vector, Qf2)> {
    if t.is_zero() {
        return Err(Error::Domain("twist parameter t must be nonzero".into()));
    }
    apply_with(q, alpha, &t.recip(), x, y)
}

/// Matrix of ξ on ℚⁿ⁺¹ (last coordinate y).
pub fn xi_matrix(q: &QuadForm, alpha: &[Qf2], t: &Rat) -> Result<Mat> {
    check_alpha(q, alpha)?;
    let n = q.dim();
    let (c, s) = twist_pair(t)?;
    let f = q.linear_form(alpha)?;
    let cm1 = &c - &Qf2::one();
    let mut m = linalg::identity(n + 1);
    for i in 0..n {
        for j in 0..n {
            m[i][j] = &m[i][j] + &(&cm1 * &(&alpha[i] * &f[j]));
        }
        m[i][n] = &s * &alpha[i];
        m[n][i] = &s * &f[i];
    }
    m[n][n] = c;
    Ok(m)
}

/// Q(x, y) = q(x) − y².
pub fn big_q(q: &QuadForm, x: &[Qf2], y: &Qf2) -> Result<Qf2> {
    Ok(&q.eval(x)? - &(y * y))
}

/// Gram matrix of (x, y) ↦ ‖x − b(x,α)α + 𝒳α‖²_G + 𝒴²‖α‖²_G.
pub fn twisted_gram_inf(q: &QuadForm, g: &QuadForm, alpha: &[Qf2], t: &Rat) -> Result<Mat> {
    let xi = xi_matrix(q, alpha, t)?;
    let alpha_sq = g.eval(alpha)?;
    let mut d = g.direct_sum(&QuadForm::diagonal(&[Rat::one()])).matrix().clone();
    let n = q.dim();
    d[n][n] = alpha_sq;
    Ok(linalg::congruence(&d, &xi))
}

/// ‖x‖²_G + y²·‖α‖²_G: the square of m_∞(‖x‖, ‖yα‖).
pub fn product_norm_sq_inf(g: &QuadForm, alpha_sq: &Qf2, x: &[Qf2], y: &Qf2) -> Result<Qf2> {
    Ok(&g.eval(x)? + &(&(y * y) * alpha_sq))
}

fn rat_entries(v: &[Qf2]) -> Result<Vec<Rat>> {
    v.iter()
        .map(|x| x.as_rat().cloned())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidInput("finite places need rational vectors".into()))
}

/// ‖x‖_{E,p} = |A_p x|_p.
pub fn norm_p(x: &[Qf2], p: u64, a_p: Option<&Mat>) -> Result<Rat> {
    Ok(crate::forms::vector_norm_p(&rat_entries(x)?, p, a_p))
}

/// max(‖x − b(x,α)α + 𝒳α‖_{E,p}, |𝒴|_p‖α‖_{E,p}).
pub fn twisted_norm_p(
    q: &QuadForm,
    alpha: &[Qf2],
    t: &Rat,
    p: u64,
    a_p: Option<&Mat>,
    x: &[Qf2],
    y: &Qf2,
) -> Result<Rat> {
    let (u, w) = xi_apply(q, alpha, t, x, y)?;
    let alpha_norm = norm_p(alpha, p, a_p)?;
    let w = w.as_rat().ok_or_else(|| Error::InvalidInput("finite places need rational y".into()))?;
    Ok(norm_p(&u, p, a_p)?.max(padic_abs(w, p) * alpha_norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn v(xs: &[(i64, i64)]) -> Vector {
        xs.iter().map(|&(a, b)| Qf2::from_rat(rat(a, b))).collect()
    }

    #[test]
    fn twist_coordinate_examples() {
        let (x, y) = twist_coords(&Qf2::from_int(7), &Qf2::from_int(-3), &rat(1, 1)).unwrap();
        assert_eq!((x, y), (Qf2::from_int(7), Qf2::from_int(-3)));
        let (x, y) = twist_coords(&Qf2::from_int(5), &Qf2::from_int(5), &rat(2, 1)).unwrap();
        assert_eq!((x, y), (Qf2::from_rat(rat(5, 2)), Qf2::from_rat(rat(5, 2))));
        let (x, y) = twist_coords(&Qf2::zero(), &Qf2::one(), &rat(3, 1)).unwrap();
        assert_eq!((x, y), (Qf2::from_rat(rat(-4, 3)), Qf2::from_rat(rat(5, 3))));
        assert!(twist_coords(&Qf2::one(), &Qf2::one(), &rat(0, 1)).is_err());
    }

    #[test]
    fn xi_examples() {
        let q = QuadForm::identity(2);
        let alpha = v(&[(3, 5), (4, 5)]);
        let (x, y) = xi_apply(&q, &alpha, &rat(2, 1), &v(&[(3, 1), (4, 1)]), &Qf2::from_int(5)).unwrap();
        assert_eq!(x, v(&[(3, 2), (2, 1)]));
        assert_eq!(y, Qf2::from_rat(rat(5, 2)));
        let x0 = v(&[(7, 1), (-2, 3)]);
        let (x1, y1) = xi_apply(&q, &alpha, &rat(1, 1), &x0, &Qf2::from_int(4)).unwrap();
        assert_eq!((x1, y1), (x0, Qf2::from_int(4)));
        assert!(xi_apply(&q, &v(&[(1, 1), (1, 1)]), &rat(2, 1), &alpha, &Qf2::one()).is_err());
    }

    #[test]
    fn matrix_agrees_with_map_and_inverse_round_trips() {
        let q = QuadForm::from_ints(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 1]]).unwrap();
        let alpha = v(&[(0, 1), (0, 1), (1, 1)]);
        let t = rat(7, 3);
        let x = v(&[(1, 2), (-3, 1), (5, 7)]);
        let y = Qf2::from_rat(rat(-2, 5));
        let (u, w) = xi_apply(&q, &alpha, &t, &x, &y).unwrap();
        let m = xi_matrix(&q, &alpha, &t).unwrap();
        let mut xy = x.clone();
        xy.push(y.clone());
        let mut uw = u.clone();
        uw.push(w.clone());
        assert_eq!(linalg::mul_vec(&m, &xy), uw);
        assert_eq!(linalg::det(&m), Qf2::one());
        assert_eq!(xi_inverse(&q, &alpha, &t, &u, &w).unwrap(), (x.clone(), y.clone()));
        assert_eq!(big_q(&q, &u, &w).unwrap(), big_q(&q, &x, &y).unwrap());
    }

    #[test]
    fn irrational_alpha() {
        let q = QuadForm::identity(2);
        let s = Qf2::sqrt_of(2).unwrap();
        let h = &s / &Qf2::from_int(2);
        let alpha = vec![h.clone(), h];
        let x = v(&[(3, 1), (4, 1)]);
        let y = Qf2::from_int(5);
        let (u, w) = xi_apply(&q, &alpha, &rat(5, 2), &x, &y).unwrap();
        assert_eq!(big_q(&q, &u, &w).unwrap(), Qf2::zero());
        let g = twisted_gram_inf(&q, &q, &alpha, &rat(5, 2)).unwrap();
        assert_eq!(linalg::det(&g), Qf2::one());
    }

    #[test]
    fn finite_twisted_norm() {
        let q = QuadForm::identity(3);
        let alpha = v(&[(3, 5), (4, 5), (0, 1)]);
        let t = rat(1, 25);
        // e_3 is q-orthogonal to α, so ξ fixes it
        let n = twisted_norm_p(&q, &alpha, &t, 5, None, &v(&[(0, 1), (0, 1), (1, 1)]), &Qf2::zero()).unwrap();
        assert_eq!(n, rat(1, 1));
        // (α, 1): b = 1, 𝒳 = 𝒴 = 1/t, so the norm is |25|_5 · ‖α‖_5 = 1/25 · 5
        let n = twisted_norm_p(&q, &alpha, &t, 5, None, &alpha, &Qf2::one()).unwrap();
        assert_eq!(n, rat(1, 5));
    }
}
