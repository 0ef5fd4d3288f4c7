//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadric_approx::bench::{bench_row, corpus, corpus_forms, BenchRow};
use quadric_approx::dirichlet::{
    big_q, build_twisted, constants_row, dyadic_ceil, harmonic_inequality_holds, solve, twisted_gram_inf,
    twisted_norm_p, verify, xi_apply, Case, Instance, PlaceData, PlaceSpec, Prepared,
    SolveOptions,
};
use quadric_approx::exactnum::{padic_abs, rat, Qf2, Rat, DEFAULT_MAX_BITS};
use quadric_approx::forms::{heights, AlgVector, Place, QuadForm};
use quadric_approx::lattice::{enumerate_within, AdelicSpaceQ, LatticePresentation};
use quadric_approx::linalg::{self, Vector};
use quadric_approx::witt::{index_pair, random_sphere_points, witt_index, AnisotropyCertificate};

const SEED: u64 = 20_240_611;
const A1_POINTS: usize = 50;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q2(v: &[Rat]) -> Vector {
    v.iter().map(Qf2::from).collect()
}

fn r(x: &Qf2) -> Rat {
    x.as_rat().expect("rational").clone()
}

/// (2γₙ)ⁿ·det q for the corpus forms, from the classical γ table.
fn sphere_constant_sq(q: &QuadForm) -> Rat {
    let two_gamma_pow = match q.dim() {
        2 => rat(16, 3),
        3 => rat(16, 1),
        4 => rat(64, 1),
        n => panic!("no corpus form of dimension {n}"),
    };
    two_gamma_pow * r(&q.det())
}

fn a1(rows: &mut Vec<BenchRow>) -> Outcome {
    let instances = corpus(A1_POINTS, SEED).map_err(|e| e.to_string())?;
    let mut slowest = Duration::ZERO;
    for ci in &instances {
        let inst = &ci.instance;
        let opts = SolveOptions { indices: Some(ci.indices), ..Default::default() };
        let start = Instant::now();
        let (row, cert) = bench_row(&ci.label, inst, &opts).map_err(|e| format!("{}: {e}", ci.label))?;
        slowest = slowest.max(start.elapsed());
        rows.push(row);
        // independent exact re-evaluation of the three conclusions
        let q = &inst.q;
        let big_t = inst.big_t.clone().unwrap();
        let alpha = inst.places[0].alpha.entries().to_vec();
        let u = q2(&cert.upsilon);
        let phi = cert.phi.clone();
        ensure(r(&q.eval(&u).unwrap()) == &phi * &phi, || format!("{}: q(υ) ≠ φ²", ci.label))?;
        ensure(Rat::one() <= phi && phi <= big_t, || format!("{}: φ = {phi} outside [1, T]", ci.label))?;
        let approx: Vector = alpha.iter().zip(&u).map(|(a, x)| a - &(x / &Qf2::from(&phi))).collect();
        let lhs = r(&q.eval(&approx).unwrap());
        let c = sphere_constant_sq(q);
        let denom = &phi * &big_t;
        // lhs ≤ √8·c/(φT) ⟺ lhs ≤ 0 or lhs² ≤ 8c²/(φT)²
        let ok = !lhs.is_positive() || &lhs * &lhs <= rat(8, 1) * &c * &c / (&denom * &denom);
        ensure(ok, || format!("{}: approximation bound fails, q(α−υ/φ) = {lhs}", ci.label))?;
        ensure(slowest < Duration::from_secs(10), || format!("{}: {slowest:?} ≥ 10 s", ci.label))?;
    }
    Ok(format!("{} instances, slowest {:.3}s", instances.len(), slowest.as_secs_f64()))
}

fn a2() -> Outcome {
    let mut count = 0;
    for f in corpus_forms() {
        let pts = random_sphere_points(&f.q, &f.x0, 10, 100, SEED).map_err(|e| e.to_string())?;
        let (small, big) = index_pair(&f.q).map_err(|e| e.to_string())?;
        let idx = quadric_approx::dirichlet::Indices { iq: small.index, i_big: big.index };
        for p in pts {
            let inst = single_form_instance(&f.q, p.alpha, rat(1, 1));
            let prep = Prepared::new(&inst, Some(idx), DEFAULT_MAX_BITS).map_err(|e| e.to_string())?;
            let t = &prep.ctx.thresholds.t;
            let sq = t.powi(2);
            ensure(sq.as_rat() == Some(&sphere_constant_sq(&f.q)), || {
                format!("{}: 𝒯² = {sq}, expected {}", f.name, sphere_constant_sq(&f.q))
            })?;
            ensure(t.surd().is_some(), || format!("{}: threshold lost its exact form", f.name))?;
            count += 1;
        }
    }
    Ok(format!("{count} thresholds equal (2γₙ)^(n/2)·√det q exactly"))
}

fn single_form_instance(q: &QuadForm, alpha: AlgVector, big_t: Rat) -> Instance {
    Instance {
        q: q.clone(),
        q0: None,
        e: None,
        places: vec![PlaceSpec { v: Place::Infinity, alpha, t: None }],
        big_t: Some(big_t),
    }
}

fn random_rat(rng: &mut ChaCha8Rng, h: i64) -> Rat {
    Rat::new(rng.gen_range(-h..=h).into(), rng.gen_range(1..=h).into())
}

fn random_t(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let t = random_rat(rng, 30);
        if !t.is_zero() {
            return t;
        }
    }
}

fn a3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut trials = 0;
    for f in corpus_forms() {
        let n = f.q.dim();
        let pts = random_sphere_points(&f.q, &f.x0, 50, 100, rng.gen()).map_err(|e| e.to_string())?;
        for k in 0..1000 {
            let alpha = pts[k % pts.len()].alpha.entries().to_vec();
            let t = random_t(&mut rng);
            let g = twisted_gram_inf(&f.q, &f.q, &alpha, &t).map_err(|e| e.to_string())?;
            ensure(linalg::det(&g) == f.q.det(), || format!("{}: det gram_t ≠ det q at t = {t}", f.name))?;
            let x: Vector = (0..n).map(|_| Qf2::from(&random_rat(&mut rng, 50))).collect();
            let y = Qf2::from(&random_rat(&mut rng, 50));
            let (xx, yy) = xi_apply(&f.q, &alpha, &t, &x, &y).map_err(|e| e.to_string())?;
            ensure(big_q(&f.q, &xx, &yy).unwrap() == big_q(&f.q, &x, &y).unwrap(), || {
                format!("{}: Q(ξ(x,y)) ≠ Q(x,y)", f.name)
            })?;
            trials += 1;
        }
    }
    Ok(format!("{trials} trials, zero failures"))
}

fn a4() -> Outcome {
    let mut count = 0;
    for f in corpus_forms().into_iter().filter(|f| f.q.is_integral()) {
        let big_q = f.q.direct_sum(&QuadForm::diagonal_ints(&[-1]));
        let g = f.q.direct_sum(&QuadForm::identity(1));
        let h = heights(&big_q, &g, &Default::default()).map_err(|e| e.to_string())?;
        let iv = h.h_q.enclose(40).map_err(|e| e.to_string())?;
        let width_ok = iv.width() < Rat::new(1.into(), (num_bigint::BigInt::from(1) << 30u32).into());
        ensure(iv.contains(&Rat::one()) && width_ok, || format!("{}: H(Q) ∈ {iv:?}", f.name))?;
        count += 1;
    }
    Ok(format!("H(Q) encloses 1 for {count} forms"))
}

/// The two twisted-norm lemmas at one place, exactly.
fn lemma_sample(
    q: &QuadForm,
    e: &AdelicSpaceQ,
    pd: &PlaceData,
    x: &[Qf2],
    y: &Qf2,
) -> Result<(bool, bool), String> {
    let s = |e: quadric_approx::Error| e.to_string();
    let zero = vec![Qf2::zero()];
    match pd.place {
        Place::Infinity => {
            let g = QuadForm::new(twisted_gram_inf(q, &e.gram, &pd.alpha, &pd.t).map_err(s)?).map_err(s)?;
            let a_sq = pd.alpha_norm_sq.clone().unwrap();
            let b_sq = pd.dual_norm_sq.clone().unwrap();
            let mut z = x.to_vec();
            z.push(y.clone());
            let lhs = &e.gram.eval(x).map_err(s)? + &(&(y * y) * &a_sq);
            let t_sq = Qf2::from(&(&pd.t * &pd.t));
            let rhs = &(&t_sq * &(&a_sq * &b_sq)) * &g.eval(&z).map_err(s)?;
            let mut z0 = x.to_vec();
            z0.extend(zero);
            let first = lhs.cmp_exact(&rhs).is_le();
            let second = e.gram.eval(x).map_err(s)?.cmp_exact(&(&Qf2::from_int(2) * &g.eval(&z0).map_err(s)?)).is_le();
            Ok((first, second))
        }
        Place::Finite(p) => {
            let a = e.local_matrix(p);
            let an = pd.alpha_norm.as_rat().unwrap().clone();
            let bn = pd.dual_norm.as_rat().unwrap().clone();
            let xn = quadric_approx::dirichlet::norm_p(x, p, a).map_err(s)?;
            let lhs = xn.clone().max(padic_abs(&r(y), p) * &an);
            let tw = twisted_norm_p(q, &pd.alpha, &pd.t, p, a, x, y).map_err(s)?;
            let half_t = padic_abs(&(&pd.t / rat(2, 1)), p);
            let first = lhs <= half_t * an * bn * tw;
            let tw0 = twisted_norm_p(q, &pd.alpha, &pd.t, p, a, x, &Qf2::zero()).map_err(s)?;
            Ok((first, xn <= tw0))
        }
    }
}

fn a5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let q = QuadForm::diagonal_ints(&[1, 2, 3]);
    let e = AdelicSpaceQ::standard(QuadForm::identity(3));
    let pts = random_sphere_points(&q, &[rat(1, 1), rat(0, 1), rat(0, 1)], 40, 20, SEED).map_err(|e| e.to_string())?;
    let mut total = 0;
    for place in [Place::Infinity, Place::Finite(2), Place::Finite(5)] {
        for k in 0..1000 {
            let alpha = pts[k % pts.len()].alpha.entries().to_vec();
            let t = match place {
                Place::Infinity => random_rat(&mut rng, 30).abs() + Rat::one(),
                Place::Finite(p) => {
                    let u = Rat::from_integer(rng.gen_range(1..50i64).into());
                    let u = if padic_abs(&u, p) == Rat::one() { u } else { u + Rat::one() };
                    let u = if padic_abs(&u, p) == Rat::one() { u } else { u + Rat::one() };
                    u / Rat::from_integer(num_bigint::BigInt::from(p).pow(rng.gen_range(1..4u32)))
                }
            };
            let pd = PlaceData::new(&e, &q, place, alpha, t).map_err(|e| e.to_string())?;
            let x: Vector = (0..3).map(|_| Qf2::from(&random_rat(&mut rng, 40))).collect();
            let y = Qf2::from(&random_rat(&mut rng, 40));
            let (first, second) = lemma_sample(&q, &e, &pd, &x, &y)?;
            ensure(first && second, || format!("lemma fails at {place} (first {first}, second {second})"))?;
            total += 1;
        }
    }
    Ok(format!("{total} samples at inf, 2, 5; zero failures"))
}

fn a6() -> Outcome {
    let inst = Instance::from_json(
        r#"{"q":{"dim":3,"matrix":[["1","0","0"],["0","1","0"],["0","0","1"]]},
            "places":[{"v":"inf","alpha":["3/5","4/5","0"],"t":"2"},
                      {"v":5,"alpha":["3/5","4/5","0"],"t":"1/25"}]}"#,
    )
    .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let prep = Prepared::new(&inst, None, DEFAULT_MAX_BITS).map_err(|e| e.to_string())?;
    ensure(prep.ctx.thresholds.t.as_rat() == Some(&rat(20, 1)), || format!("𝒯 = {}", prep.ctx.thresholds.t))?;
    let space = build_twisted(&prep.ctx.e, &prep.ctx.q, prep.ctx.places.clone()).map_err(|e| e.to_string())?;
    ensure(space.lattice_t.covolume_sq() == Qf2::from_int(25), || "covolume² ≠ 25".into())?;
    let cert = solve(&inst, &SolveOptions::default()).map_err(|e| e.to_string())?;
    for place in [Place::Infinity, Place::Finite(5)] {
        for name in ["bound2", "bound3"] {
            ensure(cert.checks.iter().any(|c| c.name == name && c.place == Some(place) && c.passed()), || {
                format!("{name} missing or failing at {place}")
            })?;
        }
    }
    let v = verify(&inst, &cert, &SolveOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.accepted, || format!("verifier rejects: {:?}", v.failures))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("(υ, φ) = ({:?}, {}), {:.3}s", strs(&cert.upsilon), cert.phi, elapsed.as_secs_f64()))
}

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn a7() -> Outcome {
    let s = |e: quadric_approx::Error| e.to_string();
    let q = QuadForm::diagonal_ints(&[1, 1, -1]);
    let (small, big) = index_pair(&q).map_err(s)?;
    ensure(small.index == 1 && big.index == 2, || format!("i(q) = {}, i(Q) = {}", small.index, big.index))?;
    ensure(small.verify(&q).map_err(s)? && big.verify(&q.direct_sum(&QuadForm::diagonal_ints(&[-1]))).map_err(s)?, || {
        "Witt witnesses do not verify".into()
    })?;
    let mut inst = Instance {
        q: q.clone(),
        q0: Some(QuadForm::identity(3)),
        e: None,
        places: vec![PlaceSpec { v: Place::Infinity, alpha: AlgVector::from_ints(&[1, 1, 1]), t: None }],
        big_t: Some(rat(1_000_000, 1)),
    };
    let prep = Prepared::new(&inst, None, DEFAULT_MAX_BITS).map_err(s)?;
    let t2 = prep.ctx.two_form.clone().ok_or("two-form thresholds not applicable")?;
    // ‖α‖ = √3, ‖q‖_∞ = 1, λ₁ = 1: 𝒯₀ = 3^{3/2}·2·√3 = 18, 𝒯 = 18√2
    ensure(t2.t0.as_rat() == Some(&rat(18, 1)) && t2.t.powi(2).as_rat() == Some(&rat(648, 1)), || {
        format!("𝒯₀ = {}, 𝒯 = {}", t2.t0, t2.t)
    })?;
    let big_t = dyadic_ceil(&t2.t, 2, 20).map_err(s)?;
    inst.big_t = Some(big_t.clone());
    let cert = solve(&inst, &SolveOptions::default()).map_err(s)?;
    let names = ["thm2.integral", "thm2.norm", "thm2.approximation", "phi_nonzero"];
    for n in names {
        ensure(cert.checks.iter().any(|c| c.name == n && c.passed()), || format!("{n} missing or failing"))?;
    }
    // independent: ‖υ‖² + 3φ² ≤ (3T)² and q(αφ−υ)² ≤ 8·648²·3·φ²/T²
    let u = q2(&cert.upsilon);
    let phi = &cert.phi;
    let norm = r(&QuadForm::identity(3).eval(&u).unwrap()) + rat(3, 1) * phi * phi;
    ensure(norm <= rat(9, 1) * &big_t * &big_t, || "‖υ‖² + φ²‖α‖² too large".into())?;
    let diff: Vector = [1, 1, 1].iter().zip(&u).map(|(a, x)| &Qf2::from(&(rat(*a, 1) * phi)) - x).collect();
    let err = r(&q.eval(&diff).unwrap());
    ensure(&err * &err <= rat(8 * 648 * 648 * 3, 1) * phi * phi / (&big_t * &big_t), || {
        format!("|q(αφ−υ)| = {err} too large")
    })?;
    let v = verify(&inst, &cert, &SolveOptions::default()).map_err(s)?;
    ensure(v.accepted, || format!("verifier rejects: {:?}", v.failures))?;
    Ok(format!("T = {big_t}, (υ, φ) = ({:?}, {})", strs(&cert.upsilon), cert.phi))
}

fn a8() -> Outcome {
    let s = |e: quadric_approx::Error| e.to_string();
    let q = QuadForm::diagonal_ints(&[1, -1, 3, 3]);
    let big = q.direct_sum(&QuadForm::diagonal_ints(&[-1]));
    let (rq, rbig) = (witt_index(&q).map_err(s)?, witt_index(&big).map_err(s)?);
    ensure(rq.index == 1 && rbig.index == 1, || format!("i(q) = {}, i(Q) = {}", rq.index, rbig.index))?;
    ensure(rq.verify(&q).map_err(s)? && rbig.verify(&big).map_err(s)?, || "Witt witnesses do not verify".into())?;
    let residual = rq.anisotropic_gram.clone().ok_or("no residual")?;
    ensure(residual.dim() == 2 && witt_index(&residual).map_err(s)?.index == 0, || "residual of q".into())?;
    ensure(
        matches!(
            rbig.certificate,
            Some(AnisotropyCertificate::BoundedSearch { .. } | AnisotropyCertificate::LocalObstruction { .. })
        ),
        || format!("residual of Q certified by {:?}", rbig.certificate),
    )?;
    let mut inst = Instance {
        q: q.clone(),
        q0: Some(QuadForm::identity(4)),
        e: None,
        places: vec![PlaceSpec { v: Place::Infinity, alpha: AlgVector::from_ints(&[2, 3, 1, 1]), t: None }],
        big_t: Some(rat(1, 1)),
    };
    let prep = Prepared::new(&inst, None, DEFAULT_MAX_BITS).map_err(s)?;
    let th = &prep.ctx.thresholds;
    let t1 = th.t1.clone().ok_or("𝒯₁ absent")?;
    ensure(th.case == Case::IqEqual, || format!("case {:?}", th.case))?;
    // 𝒯₀ = c*(1)c*(4)(2·3)²‖α‖ = 72√15, 𝒯₁ = 4√2·𝒯₀², 𝒯 = 𝒯₁
    ensure(th.t0.powi(2).as_rat() == Some(&rat(72 * 72 * 15, 1)), || format!("𝒯₀ = {}", th.t0))?;
    ensure(t1.powi(2).as_rat() == Some(&(rat(32, 1) * rat(72 * 72 * 15, 1) * rat(72 * 72 * 15, 1))), || {
        format!("𝒯₁ = {t1}")
    })?;
    ensure(th.t.cmp(&t1, DEFAULT_MAX_BITS).map_err(s)?.is_eq(), || "𝒯 ≠ 𝒯₁".into())?;
    let big_t = dyadic_ceil(&th.t, 1, 20).map_err(s)?;
    inst.big_t = Some(big_t);
    let cert = solve(&inst, &SolveOptions::default()).map_err(s)?;
    let v = verify(&inst, &cert, &SolveOptions::default()).map_err(s)?;
    ensure(v.accepted, || format!("verifier rejects: {:?}", v.failures))?;
    Ok(format!("𝒯 ≈ {:.1}, (υ, φ) = ({:?}, {})", th.t.to_f64(), strs(&cert.upsilon), cert.phi))
}

fn random_lattice(rng: &mut ChaCha8Rng) -> LatticePresentation {
    loop {
        let d = rng.gen_range(1..=3usize);
        let basis: Vec<Vec<Qf2>> =
            (0..d).map(|_| (0..d).map(|_| Qf2::from_int(rng.gen_range(-3..=3))).collect()).collect();
        let gram = if rng.gen_bool(0.5) {
            QuadForm::identity(d)
        } else {
            let c: Vec<Vec<Qf2>> =
                (0..d).map(|_| (0..d).map(|_| Qf2::from_int(rng.gen_range(-2..=2))).collect()).collect();
            let mut g = linalg::mul(&linalg::transpose(&c), &c);
            (0..d).for_each(|i| g[i][i] = &g[i][i] + &Qf2::one());
            QuadForm::new(g).unwrap()
        };
        if let Ok(l) = LatticePresentation::new(basis, gram) {
            return l;
        }
    }
}

fn brute_force(l: &LatticePresentation, r_sq: i64) -> BTreeSet<(Vec<i64>, String)> {
    let g = l.coord_gram();
    let d = l.dim();
    // |c_i| ≤ √(R²·(G⁻¹)_ii)
    let inv = linalg::inverse(&g).unwrap();
    let bounds: Vec<i64> = (0..d).map(|i| ((r_sq as f64) * inv[i][i].to_f64()).sqrt().floor() as i64 + 1).collect();
    let mut out = BTreeSet::new();
    let mut c = bounds.iter().map(|b| -b).collect::<Vec<_>>();
    loop {
        if c.iter().any(|&x| x != 0) && c.iter().find(|&&x| x != 0).unwrap() > &0 {
            let v: Vector = c.iter().map(|&x| Qf2::from_int(x)).collect();
            let n = linalg::bilinear(&g, &v, &v);
            if n.cmp_exact(&Qf2::from_int(r_sq)).is_le() {
                out.insert((c.clone(), n.to_string()));
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            c[i] += 1;
            if c[i] <= bounds[i] {
                break;
            }
            c[i] = -bounds[i];
            i += 1;
        }
    }
}

/// Largest k such that k independent isotropic box vectors span a totally isotropic space.
fn isotropic_subspace_oracle(q: &QuadForm, box_size: i64) -> usize {
    let n = q.dim();
    let mut iso: Vec<Vector> = Vec::new();
    let mut c = vec![-box_size; n];
    'outer: loop {
        if c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
            let v: Vector = c.iter().map(|&x| Qf2::from_int(x)).collect();
            if q.eval(&v).unwrap().is_zero() {
                iso.push(v);
            }
        }
        for i in 0..n {
            c[i] += 1;
            if c[i] <= box_size {
                continue 'outer;
            }
            c[i] = -box_size;
        }
        break;
    }
    if iso.is_empty() {
        return 0;
    }
    for a in 0..iso.len() {
        for b in a + 1..iso.len() {
            if q.bilinear(&iso[a], &iso[b]).unwrap().is_zero() && linalg::rank(&[iso[a].clone(), iso[b].clone()]) == 2 {
                return 2;
            }
        }
    }
    1
}

fn a9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for k in 0..200 {
        let l = random_lattice(&mut rng);
        let r_sq = rng.gen_range(1..=10i64);
        let got: BTreeSet<(Vec<i64>, String)> = enumerate_within(&l, &Qf2::from_int(r_sq))
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|s| (s.coords, s.norm_sq.to_string()))
            .collect();
        ensure(got == brute_force(&l, r_sq), || format!("lattice #{k}: enumeration differs from box search"))?;
    }
    let mut forms = 0;
    while forms < 100 {
        let n = rng.gen_range(1..=4usize);
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-3..=3);
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
        let q = QuadForm::from_ints(&rows).unwrap();
        if !q.is_regular() {
            continue;
        }
        let w = witt_index(&q).map_err(|e| e.to_string())?;
        let oracle = isotropic_subspace_oracle(&q, 6);
        ensure(w.index == oracle, || format!("{m:?}: witt_index {} vs exhaustive {oracle}", w.index))?;
        forms += 1;
    }
    Ok("200 lattices and 100 forms agree with exhaustive search".into())
}

fn a10() -> Outcome {
    for a in 1..=50 {
        for b in 1..=50 {
            ensure(harmonic_inequality_holds(a, b), || format!("harmonic inequality fails at ({a}, {b})"))?;
        }
    }
    let mut rows = 0;
    for n in 1..=10 {
        for i in 0..n {
            let row = constants_row(n, i, &rat(1, 1)).map_err(|e| e.to_string())?;
            ensure(row.holds(), || format!("constants row n={n}, i={i} fails"))?;
            rows += 1;
        }
    }
    Ok(format!("2500 harmonic pairs, {rows} constants rows"))
}

fn a11(rows: &[BenchRow]) -> Outcome {
    ensure(!rows.is_empty(), || "no bench rows (A1 did not run)".into())?;
    let mut ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    ensure(ratios.iter().all(|&x| x <= 1.0), || "some observed/bound ratio exceeds 1".into())?;
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(format!(
        "{} rows, ratio min {:.3e}, median {:.3e}, max {:.3e}",
        ratios.len(),
        ratios[0],
        ratios[ratios.len() / 2],
        ratios[ratios.len() - 1]
    ))
}

fn main() {
    let mut rows = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("A1", a1(&mut rows)),
        ("A2", a2()),
        ("A3", a3()),
        ("A4", a4()),
        ("A5", a5()),
        ("A6", a6()),
        ("A7", a7()),
        ("A8", a8()),
        ("A9", a9()),
        ("A10", a10()),
        ("A11", a11(&rows)),
    ];
    let mut failed = false;
    for (name, res) in &results {
        match res {
            Ok(msg) => println!("{name} PASS {msg}"),
            Err(msg) => {
                failed = true;
                println!("{name} FAIL {msg}");
            }
        }
    }
    if failed {
        std::process::exit(1);
    }
}
