//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use berkovich::analytic::{
    degree_sum_check, diam_via_witnesses, rigid_sample, sampled_image, witnesses, BallMap, PolynomialMap, RationalMap,
};
use berkovich::montel::{cantor_coding, degree_explosion_probe, pointwise_limit_probe, schwarz_check, MapFamily};
use berkovich::newton::{
    annuli_orbit, classify_fixed_point, find_julia_ray_point, julia_breakpoints, FixedPointKind, TruncatedEntireSeries,
};
use berkovich::residue::{enumerate_restricted_maps, enumerate_restricted_maps_brute_force, P1Point};
use berkovich::{rat, BerkovichPoint, DirectionClass, Error, FieldDescriptor, FieldElement, LogValue, Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e(err: Error) -> String {
    err.to_string()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `u · π^k` with a small random integer unit-ish `u ≠ 0`.
fn random_scalar(d: FieldDescriptor, r: &mut ChaCha8Rng, k: std::ops::RangeInclusive<i64>) -> FieldElement {
    let p = d.residue_characteristic() as i64;
    let u = loop {
        let u = r.gen_range(-20i64..=20);
        if u != 0 && (p == 0 || u % p != 0) {
            break u;
        }
    };
    d.int(u) * d.uniformizer_pow(r.gen_range(k))
}

fn random_poly(d: FieldDescriptor, r: &mut ChaCha8Rng, max_deg: usize) -> PolynomialMap {
    let deg = r.gen_range(1..=max_deg);
    let mut c: Vec<FieldElement> =
        (0..=deg).map(|_| if r.gen_bool(0.3) { d.zero() } else { random_scalar(d, r, -2..=2) }).collect();
    c[deg] = random_scalar(d, r, -2..=2);
    PolynomialMap::from_coeffs(c).unwrap()
}

// φ(τ) = max_n (nτ − n(n−1)/2) for the geometric series with v(λ) = −1.
fn geometric_oracle(t: &Rational, terms: i64) -> Rational {
    (1..=terms).map(|n| rat(n, 1) * t - rat(n * (n - 1) / 2, 1)).max().unwrap()
}

fn geometric_polygon() -> Result<(), String> {
    // Extending the window past 20 exposes the corner at 20 itself.
    let phi = TruncatedEntireSeries::geometric(rat(1, 1), 22).valuation_polygon(rat(0, 1), rat(41, 2)).map_err(e)?;
    let want: Vec<Rational> = (1..=20).map(|n| rat(n, 1)).collect();
    ensure!(phi.vertices() == want, "breakpoints {:?}", phi.vertices());
    for n in 0..21 {
        let mid = rat(2 * n + 1, 2);
        ensure!(phi.slope_at(&mid).map_err(e)? == n + 1, "slope on ({n}, {})", n + 1);
    }
    for k in 0..=82 {
        let t = rat(k, 4);
        ensure!(phi.eval(&t).map_err(e)? == geometric_oracle(&t, 30), "value at {t}");
    }
    Ok(())
}

fn wandering_annuli() -> Result<(), String> {
    // ℓ_{n+2} = (n+1)(ℓ_{n+1} − ℓ_n), endpoints ℓ_n − ℓ_{n+1}.
    let mut ell: Vec<i128> = vec![-1, -4];
    for n in 5..16 {
        let (a, b) = (ell[n - 5], ell[n - 4]);
        ell.push((n as i128 + 1) * (b - a));
    }
    let ends: Vec<i128> = (0..8).map(|i| ell[i] - ell[i + 1]).collect();
    ensure!(ends[..4] == [3, 14, 80, 542], "oracle endpoints {ends:?}");
    let steps = annuli_orbit(rat(1, 1), rat(-1, 1), rat(-4, 1), 5, 10).map_err(e)?;
    ensure!(steps.len() == 6, "{} steps", steps.len());
    for s in &steps {
        let i = s.n - 5;
        ensure!(
            s.inner == rat(ends[i] as i64, 1) && s.outer == rat(ends[i + 1] as i64, 1),
            "A_{} = ({}, {})",
            s.n,
            s.inner,
            s.outer
        );
        ensure!(
            s.image_inner == s.outer && s.image_outer == rat(ends[i + 2] as i64, 1),
            "φ(A_{}) ≠ A_{}",
            s.n,
            s.n + 1
        );
        ensure!(s.slope == s.n as i64 + 1, "slope {} on A_{}", s.slope, s.n);
        ensure!(s.maps_onto_next && s.identity_holds && s.growth_holds, "step {} flags", s.n);
    }
    Ok(())
}

fn julia_ray() -> Result<(), String> {
    let s = TruncatedEntireSeries::geometric(rat(1, 1), 21);
    let phi = s.valuation_polygon(rat(0, 1), rat(5, 1)).map_err(e)?;
    let got: Vec<Rational> = julia_breakpoints(&phi).into_iter().map(|(t, _)| t).filter(|t| *t > rat(0, 1)).collect();
    ensure!(got == (2..=5).map(|n| rat(n, 1)).collect::<Vec<_>>(), "breakpoints {got:?}");
    let phi = s.valuation_polygon(rat(0, 1), rat(20, 1)).map_err(e)?;
    let p = find_julia_ray_point(&phi, &rat(0, 1), 8).map_err(e)?;
    ensure!(p.tau == rat(2, 1) && p.m == 0, "ray point τ = {}, m = {}", p.tau, p.m);
    Ok(())
}

/// Candidate corners `k/m`, `m ≤ 8`, in `[lo, hi]`.
fn fractions(lo: i64, hi: i64) -> Vec<Rational> {
    let set: BTreeSet<Rational> = (1..=8i64).flat_map(|m| (lo * m..=hi * m).map(move |k| rat(k, m))).collect();
    set.into_iter().collect()
}

fn convexity_suite() -> Result<(), String> {
    let mut r = rng(4);
    let grid = fractions(-4, 4);
    for case in 0..200 {
        let d = FieldDescriptor::padic([2, 3, 5][case % 3]).unwrap();
        let f = random_poly(d, &mut r, 8);
        let a = d.int(r.gen_range(-30..=30));
        let taus: Vec<Rational> = grid
            .iter()
            .map(|t| f.image_of_ball(&BerkovichPoint::ball(a.clone(), t.clone())).map(|y| y.finite_tau().unwrap()))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        // Every corner is on the grid, so the profile is affine between grid points.
        let slopes: Vec<Rational> =
            (1..grid.len()).map(|i| (&taus[i] - &taus[i - 1]) / (&grid[i] - &grid[i - 1])).collect();
        ensure!(slopes.iter().all(|s| s.is_integer()), "case {case}: non-integer slope");
        ensure!(slopes.windows(2).all(|w| w[0] <= w[1]), "case {case}: not convex");
        for (i, t) in grid.iter().enumerate() {
            if !t.is_integer() || i == 0 || i + 1 == grid.len() {
                continue;
            }
            let x = BerkovichPoint::ball(a.clone(), t.clone());
            let down = x.direction_to(&BerkovichPoint::rigid(a.clone())).map_err(e)?;
            let below = f.directional_degree(&x, down.class()).map_err(e)?;
            let above = f.local_degree(&x).map_err(e)?;
            ensure!(
                rat(below as i64, 1) == slopes[i - 1],
                "case {case}: slope below {t} is {} but degree {below}",
                slopes[i - 1]
            );
            ensure!(
                rat(above as i64, 1) == slopes[i],
                "case {case}: slope above {t} is {} but degree {above}",
                slopes[i]
            );
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Result<(), String> {
    let q = FieldDescriptor::laurent_q();
    let mut r = rng(5);
    let mut cases = 0;
    while cases < 100 {
        let num = random_poly(q, &mut r, 5).poly().clone();
        let den = if r.gen_bool(0.5) { Poly::constant(q.one()) } else { random_poly(q, &mut r, 2).poly().clone() };
        let Ok(f) = RationalMap::new(num, den) else { continue };
        let x = BerkovichPoint::ball(random_scalar(q, &mut r, -2..=2), rat(r.gen_range(-3..=3), 1));
        if !f.pole_free(&x).map_err(e)? {
            continue;
        }
        cases += 1;
        let image = f.image_of_ball(&x).map_err(e)?;
        let diam = diam_via_witnesses(&f, &x).map_err(e)?;
        ensure!(image.tau() == diam, "case {cases}: image {image} but witness diameter {diam}");
        let sample = rigid_sample(&x, 50, &mut r).map_err(e)?;
        let seen = sampled_image(&f, &sample).map_err(e)?;
        ensure!(seen.leq(&image), "case {cases}: sampled image {seen} escapes {image}");
        if seen != image {
            let mut refined = sample.clone();
            refined.extend(witnesses(&f, &x, f.degree() + 2).map_err(e)?);
            let again = sampled_image(&f, &refined).map_err(e)?;
            ensure!(again == image, "case {cases}: refined sample gives {again}, want {image}");
        }
    }
    Ok(())
}

fn degree_sum() -> Result<(), String> {
    let d = FieldDescriptor::padic(3).unwrap();
    let f = PolynomialMap::from_coeffs(vec![d.zero(), d.zero(), d.one()]).unwrap();
    let domain = BerkovichPoint::ball(d.zero(), rat(2, 1));
    let mut r = rng(6);
    for i in 0..20 {
        // Targets around squares, so the fibers have points in the field.
        let y = d.int(r.gen_range(-40..=40)) * d.uniformizer_pow(r.gen_range(-2..=1));
        let sigma = r.gen_range(-4..=4);
        let target = BerkovichPoint::ball(&y * &y, rat(sigma, 1));
        let rep = degree_sum_check(&f, &domain, &target).map_err(e)?;
        ensure!(rep.sum == 2 && rep.holds, "target {i} = {target}: sum {}", rep.sum);
        ensure!(rep.balls.iter().all(|b| b.image_matches), "target {i}: image mismatch");
    }
    Ok(())
}

fn enumeration() -> Result<(), String> {
    for q in [2u32, 3] {
        let set: Vec<P1Point> = {
            let d = FieldDescriptor::padic(q).unwrap().residue_field();
            vec![DirectionClass::Residue(d.zero()), DirectionClass::Residue(d.one()), DirectionClass::Infinity]
        };
        let en = enumerate_restricted_maps(q, &set, 3).map_err(e)?;
        ensure!(en.maps.len() == 6, "q = {q}: {} maps", en.maps.len());
        ensure!(en.maps.iter().all(|m| m.degree() <= 1), "q = {q}: degree above 1");
        for d_max in 1..=3 {
            let a = enumerate_restricted_maps(q, &set, d_max).map_err(e)?;
            let b = enumerate_restricted_maps_brute_force(q, &set, d_max).map_err(e)?;
            ensure!(a.maps == b.maps, "q = {q}, d_max = {d_max}: normal form and brute force differ");
        }
    }
    Ok(())
}

fn fixed_points() -> Result<(), String> {
    let backends =
        [FieldDescriptor::padic(3).unwrap(), FieldDescriptor::laurent_q(), FieldDescriptor::laurent_fp(5).unwrap()];
    for d in backends {
        for (k, want) in
            [(1, FixedPointKind::Attracting), (0, FixedPointKind::Indifferent), (-1, FixedPointKind::Repelling)]
        {
            let z0 = d.int(2);
            // f(z) = z₀ + λ(z − z₀) + (z − z₀)², v(λ) = k.
            let g = Poly::new(vec![d.zero(), d.int(1) * d.uniformizer_pow(k), d.one()]);
            let f = &g.taylor_shift(&-&z0) + &Poly::constant(z0.clone());
            let c = classify_fixed_point(&f, &z0).map_err(e)?;
            ensure!(c.kind == want, "{d:?}, v(λ) = {k}: {:?}", c.kind);
            ensure!(
                c.multiplier_valuation == LogValue::int(k),
                "{d:?}: multiplier valuation {}",
                c.multiplier_valuation
            );
            ensure!(c.normal == (k >= 0), "{d:?}, v(λ) = {k}: normality");
        }
    }
    Ok(())
}

fn limit_probe() -> Result<(), String> {
    let q = FieldDescriptor::laurent_q();
    let mut r = rng(9);
    for i in 0..100 {
        let (rr, ss) = (r.gen_range(1..=3), r.gen_range(3..=5));
        let a = random_scalar(q, &mut r, -2..=2);
        let fam = MapFamily::ShiftedMonomial { r: rr, s: ss, a: a.clone() };
        let z = q
            .laurent(&[(r.gen_range(-2..=2), rat(r.gen_range(1..=9), r.gen_range(1..=5))), (3, rat(1, 1))])
            .map_err(e)?;
        let c = z.pow(rr as u64);
        let ws = vec![c.clone(), q.zero(), q.one()];
        let rep = pointwise_limit_probe(&fam, &BerkovichPoint::rigid(z.clone()), 12, &ws).map_err(e)?;
        let want = BerkovichPoint::new(c, a.log_abs() + z.log_abs().scale(ss as i64));
        ensure!(rep.inferred.as_ref() == Some(&want), "case {i}: inferred {:?}, want {want}", rep.inferred);
    }
    Ok(())
}

fn degree_explosion() -> Result<(), String> {
    let l = FieldDescriptor::laurent_fp(2).unwrap();
    let fam = MapFamily::ScaledPower { u: l.uniformizer() };
    let mut r = rng(10);
    for i in 0..20 {
        let tau = loop {
            let t = rat(r.gen_range(-12..=3), r.gen_range(1..=4));
            if t < rat(1, 1) {
                break t;
            }
        };
        let a = l.int(r.gen_range(0..2)) + l.uniformizer_pow(r.gen_range(-3..=3));
        let x = BerkovichPoint::ball(a, tau.clone());
        let rep = degree_explosion_probe(&fam, &x, 12).map_err(e)?;
        let want: Vec<_> = (1..=12u32).map(|n| LogValue::Finite(rat(1 << n, 1) * (&tau - rat(1, 1)))).collect();
        ensure!(rep.taus == want, "ball {i}: {:?}", rep.taus);
        ensure!(rep.taus.windows(2).all(|w| w[1] < w[0]), "ball {i}: not strictly decreasing");
    }
    Ok(())
}

fn cantor() -> Result<(), String> {
    let d = FieldDescriptor::padic(2).unwrap();
    let rep = cantor_coding(&d.ratio(3, 16), 9).map_err(e)?;
    let s = rep.separation_level.ok_or("no separation")?;
    for (k, n) in rep.counts.iter().enumerate().skip(s) {
        ensure!(*n == 1 << (k - s + 1), "level {k} has {n} balls");
    }
    ensure!(rep.disjoint_ok && rep.images_ok && rep.nesting_ok && rep.degree_sums_ok, "tree checks failed");
    ensure!(rep.itinerary_depth >= 8, "itineraries only to depth {}", rep.itinerary_depth);
    ensure!(rep.itineraries_ok && rep.shift_ok && rep.words_distinct, "itinerary checks failed");
    ensure!(rep.holds, "report does not hold");
    Ok(())
}

fn schwarz() -> Result<(), String> {
    let mut r = rng(12);
    let fields = [
        FieldDescriptor::padic(2).unwrap(),
        FieldDescriptor::padic(3).unwrap(),
        FieldDescriptor::laurent_fp(3).unwrap(),
    ];
    let mut cases = 0;
    while cases < 50 {
        let d = fields[cases % 3];
        let f = random_poly(d, &mut r, 6);
        let x = BerkovichPoint::ball(d.int(r.gen_range(-9..=9)), rat(r.gen_range(-3..=2), 1));
        // Push the image into the unit ball by scaling.
        let mut g = f.poly().clone();
        let rep = loop {
            match schwarz_check(&PolynomialMap::new(g.clone()).unwrap(), &x) {
                Err(Error::ImageNotInUnitBall) => g = g.scale(&d.uniformizer()),
                other => break other.map_err(e)?,
            }
        };
        ensure!(rep.equal && rep.sup_norm == rep.seminorm, "case {cases}: {} vs {}", rep.sup_norm, rep.seminorm);
        cases += 1;
    }
    Ok(())
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 12] = [
        ("geometric valuation polygon", geometric_polygon),
        ("wandering annuli", wandering_annuli),
        ("julia ray point", julia_ray),
        ("convexity and directional degrees", convexity_suite),
        ("image oracles agree", oracle_equivalence),
        ("degree sums over fibers", degree_sum),
        ("restricted map enumeration", enumeration),
        ("fixed point trichotomy", fixed_points),
        ("shifted monomial limits", limit_probe),
        ("degree explosion collapse", degree_explosion),
        ("cantor coding", cantor),
        ("schwarz identity", schwarz),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
