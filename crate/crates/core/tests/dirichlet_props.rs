use num_traits::{One, Zero};
use proptest::prelude::*;

use quadric_approx::dirichlet::{
    big_q, solve, twist_coords, twisted_gram_inf, verify, xi_apply, xi_inverse, Instance, PlaceSpec,
    SolveOptions,
};
use quadric_approx::exactnum::{Qf2, Rat};
use quadric_approx::forms::{AlgVector, Place, QuadForm};
use quadric_approx::linalg::{self, Vector};
use quadric_approx::witt::sphere_points;

fn rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn ternary() -> impl Strategy<Value = QuadForm> {
    prop_oneof![
        Just(QuadForm::identity(3)),
        Just(QuadForm::diagonal_ints(&[1, 2, 3])),
        Just(QuadForm::diagonal_ints(&[1, 1, -1])),
        Just(QuadForm::from_ints(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 1]]).unwrap()),
    ]
}

/// α on q = 1 through e₃ (every form above has q(e₃) = ±1; we keep those with +1).
fn alpha_on(q: &QuadForm, dir: &[i64; 3]) -> Option<Vector> {
    let x0 = [Rat::zero(), Rat::zero(), Rat::one()];
    if q.entry(2, 2) != &Qf2::one() {
        return None;
    }
    let m: Vec<Rat> = dir.iter().map(|&d| Rat::from_integer(d.into())).collect();
    sphere_points(q, &x0, &[m]).ok()?.pop().map(|p| p.alpha.into_entries())
}

fn qv(v: &[Rat]) -> Vector {
    v.iter().map(Qf2::from).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn twist_is_an_isometry_of_big_q(
        q in ternary(),
        dir in prop::array::uniform3(-9i64..=9),
        t in nonzero_rat(),
        x in prop::collection::vec(rat(), 3),
        y in rat(),
    ) {
        let Some(alpha) = alpha_on(&q, &dir) else { return Ok(()) };
        let (x, y) = (qv(&x), Qf2::from(&y));
        let (xx, yy) = xi_apply(&q, &alpha, &t, &x, &y).unwrap();
        prop_assert_eq!(big_q(&q, &xx, &yy).unwrap(), big_q(&q, &x, &y).unwrap());
        prop_assert_eq!(xi_inverse(&q, &alpha, &t, &xx, &yy).unwrap(), (x, y));
    }

    #[test]
    fn twisted_gram_keeps_the_determinant(
        dir in prop::array::uniform3(-9i64..=9),
        t in nonzero_rat(),
    ) {
        let q = QuadForm::diagonal_ints(&[1, 2, 3]);
        let Some(alpha) = alpha_on(&q, &dir) else { return Ok(()) };
        let g = twisted_gram_inf(&q, &q, &alpha, &t).unwrap();
        prop_assert_eq!(linalg::det(&g), q.det());
    }

    #[test]
    fn twist_coordinates_satisfy_the_identity(b in rat(), y in rat(), t in nonzero_rat()) {
        // 𝒴 − 𝒳 = t(y − b) and 𝒳² − 𝒴² = b² − y²
        let (bx, yq) = (Qf2::from(&b), Qf2::from(&y));
        let (x, yy) = twist_coords(&bx, &yq, &t).unwrap();
        prop_assert_eq!(&yy - &x, &Qf2::from(&t) * &(&yq - &bx));
        prop_assert_eq!(&(&x * &x) - &(&yy * &yy), &(&bx * &bx) - &(&yq * &yq));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solved_certificates_verify_and_carry_the_identity_chain(
        dir in prop::array::uniform3(-6i64..=6),
        k in 1i64..=40,
    ) {
        let q = QuadForm::identity(3);
        let Some(alpha) = alpha_on(&q, &dir) else { return Ok(()) };
        let inst = Instance {
            q,
            q0: None,
            e: None,
            places: vec![PlaceSpec { v: Place::Infinity, alpha: AlgVector::new(alpha).unwrap(), t: None }],
            big_t: Some(Rat::from_integer((5 * k).into())),
        };
        let cert = solve(&inst, &SolveOptions::default()).unwrap();
        for name in ["thm1.identity", "thm1.identity_twist", "thm1.phi_vs_twisted_norm"] {
            prop_assert!(cert.checks.iter().any(|c| c.name == name && c.passed()), "{name}");
        }
        prop_assert!(verify(&inst, &cert, &SolveOptions::default()).unwrap().accepted);
    }
}
