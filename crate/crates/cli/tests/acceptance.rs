//! Acceptance suite: one line per criterion.
//!
//! Criterion 10 asks for `d²·disc(f)` to be a square. Since
//! `disc(f_{s,t}) = t²·(d²)²`, that holds exactly when `d²` is a square, i.e.
//! for cyclic specializations only. The criterion is run as stated and is
//! expected to fail; the harness instead asserts that the failure is exactly
//! the one the identity predicts.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gal_cli::{search_grid, Axis, Certify, SearchSpec};
use gal_core::families::formulas::d_squared;
use gal_core::families::{
    c3_branch_value, c3_isom_witness, check_witness, d4_branch_i, d4_branch_ii, d4_isom_witness, d5_f1, family_poly,
    lehmer_poly, s3_from_u, s3_isom_witness, s3_resolvent, to_brumer, BrumerInput,
};
use gal_core::intersect::{classify_intersection, galois_group};
use gal_core::numres::{
    brumer_configs, derive_rho_map, find_roots, numeric_resolvent, poly_from_roots, quintic_to_brumer,
    rationalize_poly, Complex, NumKind,
};
use gal_core::qpoly::{int, is_square, rat, same_square_class};
use gal_core::zfactor::{factor_over_q, factor_with_cap};
use gal_core::{FamilyId, GroupLabel, IntersectionReport, ParamPoint, QPoly, Rat, Relation, ResolventKind};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6761_6c00 + tag)
}

fn gal(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gal")).args(args).env_remove("GAL_RHO_CACHE").output().map_err(e2s)?;
    if !out.stderr.is_empty() {
        eprintln!("{}", String::from_utf8_lossy(&out.stderr));
    }
    Ok((out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).map_err(e2s)?))
}

fn json_field(s: &str, key: &str) -> Result<String, String> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(e2s)?;
    v[key].as_str().map(str::to_string).ok_or_else(|| format!("no {key} in output"))
}

fn within(t: Instant, budget: Duration) -> Result<(), String> {
    let el = t.elapsed();
    ensure(el < budget, format!("took {el:?}, budget {budget:?}"))
}

fn c1() -> Outcome {
    let t0 = Instant::now();
    let (code, out) = gal(&["--output", "json", "resolvent", "--family", "d5", "--a", "0,3", "--b", "10,3", "--kind", "1"])?;
    ensure(code == 0, "kind 1 exited non-zero")?;
    let f1 = QPoly::parse_canonical(&json_field(&out, "coefficients")?).map_err(e2s)?;
    let want1 = &(&QPoly::from_ints(&[5, 1]).pow(3) * &QPoly::from_ints(&[150, -15, 1]))
        * &QPoly::from_ints(&[-9375, 0, -625, 0, 0, 1]);
    ensure(f1 == want1, format!("kind 1 gave {f1}"))?;

    let (code, out) = gal(&["--output", "json", "resolvent", "--family", "d5", "--a", "0,3", "--b", "10,3", "--kind", "2"])?;
    ensure(code == 0, "kind 2 exited non-zero")?;
    ensure(json_field(&out, "certification")? == "numeric", "kind 2 did not take the numeric path")?;
    let f2 = QPoly::parse_canonical(&json_field(&out, "coefficients")?).map_err(e2s)?;
    let q1 = QPoly::from_coeffs(vec![rat(-3125, 27), rat(6250, 81), int(0), rat(-125, 9), int(0), int(1)]);
    let q2 = QPoly::from_coeffs(vec![rat(15625, 27), rat(15625, 81), rat(625, 9), rat(-125, 9), int(0), int(1)]);
    ensure(f2 == &q1 * &q2, format!("kind 2 gave {f2}"))?;

    let (code, out) = gal(&["--output", "json", "intersect", "--family", "d5", "--a", "0,3", "--b", "10,3"])?;
    ensure(code == 0, "intersect exited non-zero")?;
    let r: IntersectionReport = serde_json::from_str(&out).map_err(e2s)?;
    ensure((r.group_a, r.group_b) == (GroupLabel::D5, GroupLabel::D5), "groups")?;
    let dt1 = r.dt1.as_ref().map(|d| d.partition.clone());
    let dt2 = r.dt2.as_ref().map(|d| d.partition.clone());
    ensure(dt1 == Some(vec![5, 2, 2, 1]) && dt2 == Some(vec![5, 5]), format!("dts {dt1:?} {dt2:?}"))?;
    ensure(r.relation == Relation::Equal, "relation")?;
    let (_, text) = gal(&["intersect", "--family", "d5", "--a", "0,3", "--b", "10,3"])?;
    ensure(text.contains("relation: L_a = L_b") && text.contains("G_a = D5"), "text phrasing")?;
    within(t0, Duration::from_secs(5))?;
    Ok(format!("F1, F2 exact; D5,D5 [5,2,2,1]/[5,5] Equal in {:.1?}", t0.elapsed()))
}

fn s3_ok(a: &Rat) -> bool {
    !a.is_zero() && !(int(4) * a + int(27)).is_zero()
}

fn s3_group(a: &Rat) -> Option<GroupLabel> {
    galois_group(FamilyId::S3, &ParamPoint(vec![a.clone()])).ok()
}

fn random_s3(r: &mut ChaCha8Rng) -> Rat {
    loop {
        let a = int(r.gen_range(-60..=60));
        if s3_ok(&a) && s3_group(&a) == Some(GroupLabel::S3) {
            return a;
        }
    }
}

fn disc_class(a: &Rat) -> Rat {
    -(int(4) * a + int(27))
}

fn classify_s3(a: &Rat, b: &Rat) -> Result<IntersectionReport, String> {
    classify_intersection(FamilyId::S3, &ParamPoint(vec![a.clone()]), &ParamPoint(vec![b.clone()])).map_err(e2s)
}

fn dt1(r: &IntersectionReport) -> Vec<usize> {
    r.dt1.as_ref().map(|d| d.partition.clone()).unwrap_or_default()
}

fn c2() -> Outcome {
    let t0 = Instant::now();
    let mut r = rng(2);
    // (a) constructed equal pairs
    let mut n = 0;
    while n < 50 {
        let a = random_s3(&mut r);
        let u = rat(r.gen_range(-40..=40), r.gen_range(1..=4));
        let Some(b) = s3_from_u(&a, &u) else { continue };
        if b == a || !s3_ok(&b) {
            continue;
        }
        let rep = classify_s3(&a, &b)?;
        ensure(rep.relation == Relation::Equal && dt1(&rep) == [3, 2, 1], format!("({a},{b}) gave {} {:?}", rep.relation, dt1(&rep)))?;
        n += 1;
    }
    // (b) square-class comparison, half forced into a shared class
    let (mut same, mut diff) = (0, 0);
    while same + diff < 50 {
        let a = random_s3(&mut r);
        let b = if same <= diff {
            let k = int(r.gen_range(2..=9));
            (-disc_class(&a) * &k * &k - int(27)) / int(4)
        } else {
            random_s3(&mut r)
        };
        if b == a || !s3_ok(&b) || s3_group(&b) != Some(GroupLabel::S3) {
            continue;
        }
        let rep = classify_s3(&a, &b)?;
        if rep.relation == Relation::Equal {
            continue;
        }
        let shared = same_square_class(&disc_class(&a), &disc_class(&b));
        let want = if shared { (vec![3, 3], Relation::QuadraticMeet) } else { (vec![6], Relation::TrivialMeet) };
        ensure((dt1(&rep), rep.relation) == want, format!("({a},{b}) gave {} {:?}", rep.relation, dt1(&rep)))?;
        if shared {
            same += 1
        } else {
            diff += 1
        }
    }
    // (c) reducible specializations with a rational root r: s = −r³/(r+1)
    let mut c2s = Vec::new();
    while c2s.len() < 20 {
        let x = rat(r.gen_range(-30..=30), r.gen_range(1..=3));
        if x.is_zero() || x == -Rat::one() {
            continue;
        }
        let s = -(&x * &x * &x) / (&x + int(1));
        if s3_ok(&s) && s3_group(&s) == Some(GroupLabel::C2) && !c2s.contains(&s) {
            c2s.push(s);
        }
    }
    let mut rows = 0;
    for (i, b) in c2s.iter().enumerate() {
        let a = if i % 2 == 0 {
            random_s3(&mut r)
        } else {
            let k = int(r.gen_range(2..=7));
            let a = (-disc_class(b) * &k * &k - int(27)) / int(4);
            if !s3_ok(&a) || s3_group(&a) != Some(GroupLabel::S3) {
                continue;
            }
            a
        };
        let rep = classify_s3(&a, b)?;
        let shared = same_square_class(&disc_class(&a), &disc_class(b));
        let want = if shared { (vec![3, 3], Relation::AContainsB) } else { (vec![6], Relation::NotComparableTrivialMeet) };
        ensure((dt1(&rep), rep.relation) == want, format!("S3/C2 ({a},{b}) gave {} {:?}", rep.relation, dt1(&rep)))?;
        rows += 1;
    }
    for w in c2s.windows(2) {
        let rep = classify_s3(&w[0], &w[1])?;
        let shared = same_square_class(&disc_class(&w[0]), &disc_class(&w[1]));
        let want = if shared { (vec![2, 2, 1, 1], Relation::Equal) } else { (vec![4, 2], Relation::TrivialMeet) };
        ensure((dt1(&rep), rep.relation) == want, format!("C2/C2 ({},{}) gave {}", w[0], w[1], rep.relation))?;
        rows += 1;
    }
    within(t0, Duration::from_secs(60))?;
    Ok(format!("50 constructed Equal; {same} shared-class + {diff} distinct-class pairs; {rows} C2-row pairs"))
}

fn c3() -> Outcome {
    let t0 = Instant::now();
    let mut r = rng(3);
    let mut n = 0;
    while n < 20 {
        let a = int(r.gen_range(-40..=40));
        let b = int(r.gen_range(-40..=40));
        if a == b || !s3_ok(&a) || !s3_ok(&b) {
            continue;
        }
        let d = s3_resolvent(&a, &b).map_err(e2s)?.discriminant();
        let pw = |x: &Rat, e: usize| num_traits::pow(x.clone(), e);
        let want = pw(&a, 10) * pw(&b, 4) * pw(&(int(4) * &a + int(27)), 15) * pw(&(int(4) * &b + int(27)), 3);
        ensure(d == want, format!("({a},{b}): {d} vs {want}"))?;
        n += 1;
    }
    within(t0, Duration::from_secs(30))?;
    Ok("20 random pairs match a^10 b^4 (4a+27)^15 (4b+27)^3".into())
}

/// Rationalized numeric resolvent, trying 128 then 256 digits.
fn numeric_at_most_256(fam: FamilyId, a: &ParamPoint, b: &ParamPoint, kind: NumKind) -> Result<QPoly, String> {
    let mut last = String::new();
    for d in [128, 256] {
        match numeric_resolvent(fam, a, b, kind, d) {
            Ok(c) => match rationalize_poly(&c, d) {
                Some(p) => return Ok(p),
                None => last = format!("rationalization failed at {d} digits"),
            },
            Err(e) => last = e.to_string(),
        }
    }
    Err(format!("({a}) ({b}): {last}"))
}

fn random_d5(r: &mut ChaCha8Rng, range: i64) -> ParamPoint {
    loop {
        let p = ParamPoint::ints(&[r.gen_range(-range..=range), r.gen_range(-range..=range)]);
        if family_poly(FamilyId::D5, &p).is_ok() {
            return p;
        }
    }
}

fn c4() -> Outcome {
    let t0 = Instant::now();
    let mut r = rng(4);
    let mut n = 0;
    while n < 20 {
        let (a, b) = (int(r.gen_range(-50..=50)), int(r.gen_range(-50..=50)));
        if a == b || !s3_ok(&a) || !s3_ok(&b) {
            continue;
        }
        let (pa, pb) = (ParamPoint(vec![a.clone()]), ParamPoint(vec![b.clone()]));
        let got = numeric_at_most_256(FamilyId::S3, &pa, &pb, NumKind::S3Theta)?;
        ensure(got == s3_resolvent(&a, &b).map_err(e2s)?, format!("S3 ({a},{b})"))?;
        n += 1;
    }
    for _ in 0..10 {
        let (a, b) = (random_d5(&mut r, 15), random_d5(&mut r, 15));
        let got = numeric_at_most_256(FamilyId::D5, &a, &b, NumKind::D5P)?;
        ensure(got == d5_f1(&a, &b), format!("D5 ({a}) ({b})"))?;
    }
    within(t0, Duration::from_secs(300))?;
    Ok(format!("20 S3 + 10 D5 pairs exact in {:.1?}", t0.elapsed()))
}

fn targets(spec: &SearchSpec) -> Result<Vec<ParamPoint>, String> {
    let out = search_grid(spec).map_err(e2s)?;
    ensure(out.errors.is_empty(), format!("{} skipped pairs", out.errors.len()))?;
    Ok(out.hits.into_iter().map(|h| h.b).collect())
}

fn sorted(v: &[[i64; 2]]) -> Vec<ParamPoint> {
    let mut v: Vec<ParamPoint> = v.iter().map(|p| ParamPoint::ints(p)).collect();
    v.sort();
    v
}

fn c5() -> Outcome {
    let x1 = sorted(&[
        [0, 1], [4, -1], [4, 5], [-6, 1], [-24, 19], [34, 11], [36, -5], [46, -1], [-188, 23], [264, 31], [372, -5], [378, 43],
    ]);
    let x2 = sorted(&[
        [-1, -1], [-1, 1], [5, -1], [41, 1], [-43, 5], [47, 13], [59, -5], [59, 19], [101, 19], [125, -23], [149, 11],
        [155, 25], [-169, 55],
    ]);
    let grid = vec![Axis::Range { lo: -400, hi: 400 }, Axis::Range { lo: -400, hi: 400 }];
    let t0 = Instant::now();
    let spec = SearchSpec::new(FamilyId::D5, grid.clone())
        .with_target(ParamPoint::ints(&[0, 1]))
        .with_kinds(&[ResolventKind::One]);
    let got1 = targets(&spec)?;
    ensure(got1 == x1, format!("X1 = {got1:?}"))?;
    within(t0, Duration::from_secs(15 * 60))?;
    let t1 = t0.elapsed();

    let t0 = Instant::now();
    let mut spec = SearchSpec::new(FamilyId::D5, grid)
        .with_target(ParamPoint::ints(&[0, 1]))
        .with_kinds(&[ResolventKind::Two]);
    spec.rho_cache = Some(derive_rho_map(400, 6).map_err(e2s)?);
    spec.certify = Certify::Exact;
    let got2 = targets(&spec)?;
    ensure(got2 == x2, format!("X2 = {got2:?}"))?;
    within(t0, Duration::from_secs(15 * 60))?;
    Ok(format!("X1 (12) in {t1:.1?}; X2 (13, derived rho cache) in {:.1?}", t0.elapsed()))
}

fn c6() -> Outcome {
    let t0 = Instant::now();
    let spec = SearchSpec::new(FamilyId::D5, vec![Axis::Range { lo: -500, hi: 500 }, Axis::Fixed(int(1))]);
    let out = search_grid(&spec).map_err(e2s)?;
    ensure(out.errors.is_empty(), "skipped pairs")?;
    let got: Vec<(Rat, Rat)> = out.hits.iter().map(|h| (h.a.s().clone(), h.b.s().clone())).collect();
    let mut want: Vec<(Rat, Rat)> = [(-6, 0), (-1, 41), (-94, -10), (-1, 0), (-6, -1), (-18, -7), (1, 34), (0, 41), (-6, 41), (-167, -8)]
        .iter()
        .map(|&(x, y)| (int(x), int(y)))
        .collect();
    want.sort();
    ensure(got == want, format!("pairs {got:?}"))?;
    within(t0, Duration::from_secs(15 * 60))?;
    Ok(format!("10 pairs in {:.1?}", t0.elapsed()))
}

fn c7() -> Outcome {
    let t0 = Instant::now();
    for (n, want) in [(-2, [-18, 1]), (-1, [-13, -1])] {
        let (p, _) = to_brumer(&BrumerInput::Lehmer(int(n)), 128).map_err(e2s)?;
        ensure(p == ParamPoint::ints(&want), format!("to_brumer({n}) = ({p})"))?;
        // Independent route: cross-ratio recovery straight from h_n.
        let q = quintic_to_brumer(&lehmer_poly(&int(n)), 128).map_err(e2s)?;
        let rep = classify_intersection(FamilyId::D5, &p, &q).map_err(e2s)?;
        ensure(rep.relation == Relation::Equal, format!("({p}) vs ({q}) is {}", rep.relation))?;
    }
    let spec = SearchSpec::new(FamilyId::Lehmer, vec![Axis::Range { lo: -200, hi: 200 }]);
    let out = search_grid(&spec).map_err(e2s)?;
    ensure(out.errors.is_empty(), "skipped pairs")?;
    let got: Vec<(ParamPoint, ParamPoint)> = out.hits.iter().map(|h| (h.a.clone(), h.b.clone())).collect();
    ensure(got == [(ParamPoint::ints(&[-2]), ParamPoint::ints(&[-1]))], format!("pairs {got:?}"))?;
    within(t0, Duration::from_secs(15 * 60))?;
    Ok(format!("only (-2,-1); maps (-18,1), (-13,-1) in {:.1?}", t0.elapsed()))
}

fn roots_of(f: &QPoly, digits: u32) -> Result<Vec<Complex>, String> {
    find_roots(f, digits).map_err(e2s)
}

/// Rationalized `∏(X − θ)` over the given values, factored.
fn factor_degrees_of(vals: &[Complex], digits: u32) -> Result<Vec<usize>, String> {
    let prec = vals[0].prec();
    let p = rationalize_poly(&poly_from_roots(vals, prec), digits).ok_or("linear form did not rationalize")?;
    if !p.is_squarefree() {
        return Err("linear form resolvent has repeated roots".into());
    }
    Ok(factor_with_cap(&p, 32).map_err(e2s)?.degrees())
}

/// Cubic fields: degrees of `∏(X − α_i − 2β_j)`, three cubics exactly when
/// the fields coincide.
fn cubic_pair_degrees(f: &QPoly, g: &QPoly) -> Result<Vec<usize>, String> {
    let (ra, rb) = (roots_of(f, 100)?, roots_of(g, 100)?);
    let prec = ra[0].prec();
    let two = Complex::from_i64(2, prec);
    let mut vals = Vec::new();
    for a in &ra {
        for b in &rb {
            vals.push(a + &(&two * &b.with_prec(prec)));
        }
    }
    factor_degrees_of(&vals, 100)
}

/// Biquadratic family: `θ = α_i + 3α_j + 7β_k` with `α_j ≠ ±α_i`. The 32
/// values form a Galois-stable set; each orbit has size `[Spl(f)(β_k) : ℚ]`,
/// so every factor has degree 8 exactly when `g` splits in `Spl(f)`.
fn quartic_split_degrees(f: &QPoly, g: &QPoly) -> Result<Vec<usize>, String> {
    let digits = 400;
    let (ra, rb) = (roots_of(f, digits)?, roots_of(g, digits)?);
    let prec = ra[0].prec().max(rb[0].prec());
    let (three, seven) = (Complex::from_i64(3, prec), Complex::from_i64(7, prec));
    let mut vals = Vec::new();
    for (i, a) in ra.iter().enumerate() {
        for (j, a2) in ra.iter().enumerate() {
            // `α_j = −α_i` is the only other root whose sum with `α_i` vanishes.
            if i == j || (a + a2).log2_abs() < -((prec / 2) as f64) {
                continue;
            }
            for b in &rb {
                vals.push(&(&a.with_prec(prec) + &(&three * &a2.with_prec(prec))) + &(&seven * &b.with_prec(prec)));
            }
        }
    }
    if vals.len() != 32 {
        return Err(format!("{} linear-form values", vals.len()));
    }
    factor_degrees_of(&vals, digits)
}

fn c8() -> Outcome {
    let t0 = Instant::now();
    let mut r = rng(8);
    let small = |r: &mut ChaCha8Rng| rat(r.gen_range(-12..=12), r.gen_range(1..=3));
    // forward/inverse round trips
    let mut n = 0;
    while n < 100 {
        let m = int(r.gen_range(-40..=40));
        let z = small(&mut r);
        let Some(m2) = c3_branch_value(&m, &z, 1 + (n % 2) as u8) else { continue };
        if m2 == m {
            continue;
        }
        let w = c3_isom_witness(&m, &m2).map_err(e2s)?.ok_or(format!("C3 ({m},{m2}) lost"))?;
        ensure(check_witness(&w, std::slice::from_ref(&m), std::slice::from_ref(&m2)), "C3 witness invalid")?;
        if n < 10 {
            let f = |x: &Rat| family_poly(FamilyId::C3, &ParamPoint(vec![x.clone()])).map_err(e2s);
            let degs = cubic_pair_degrees(&f(&m)?, &f(&m2)?)?;
            ensure(degs.iter().all(|&d| d == 3), format!("C3 oracle misses ({m},{m2})"))?;
        }
        n += 1;
    }
    let mut n = 0;
    while n < 100 {
        let a = random_s3(&mut r);
        let Some(b) = s3_from_u(&a, &small(&mut r)) else { continue };
        if b == a || !s3_ok(&b) {
            continue;
        }
        let w = s3_isom_witness(&a, &b).map_err(e2s)?.ok_or(format!("S3 ({a},{b}) lost"))?;
        ensure(check_witness(&w, std::slice::from_ref(&a), std::slice::from_ref(&b)), "S3 witness invalid")?;
        n += 1;
    }
    let d4 = |p: &ParamPoint| galois_group(FamilyId::D4, p).ok() == Some(GroupLabel::D4);
    let random_d4 = |r: &mut ChaCha8Rng| loop {
        let p = ParamPoint::ints(&[r.gen_range(-20..=20), r.gen_range(-20..=20)]);
        if d4(&p) {
            return p;
        }
    };
    let mut n = 0;
    while n < 100 {
        let a = random_d4(&mut r);
        let (p, q) = (int(r.gen_range(-6..=6)), int(r.gen_range(-6..=6)));
        let (s2, t2) = if n % 2 == 0 { d4_branch_i(a.s(), a.t(), &p, &q) } else { d4_branch_ii(a.s(), a.t(), &p, &q) };
        let b = ParamPoint(vec![s2.clone(), t2.clone()]);
        if !d4(&b) {
            continue;
        }
        let w = d4_isom_witness(a.s(), a.t(), &s2, &t2).map_err(e2s)?.ok_or(format!("D4 ({a}) ({b}) lost"))?;
        ensure(check_witness(&w, &a.0, &b.0), "D4 witness invalid")?;
        if n < 10 {
            let fa = family_poly(FamilyId::D4, &a).map_err(e2s)?;
            let fb = family_poly(FamilyId::D4, &b).map_err(e2s)?;
            let degs = quartic_split_degrees(&fa, &fb)?;
            ensure(degs.iter().all(|&d| d == 8), format!("D4 oracle misses ({a}) ({b}): {degs:?}"))?;
        }
        n += 1;
    }
    // random pairs: a witness appears exactly when an independent test says equal
    let mut found = [0; 3];
    for _ in 0..100 {
        let (m, m2) = (int(r.gen_range(-30..=30)), int(r.gen_range(-30..=30)));
        if m == m2 {
            continue;
        }
        let w = c3_isom_witness(&m, &m2).map_err(e2s)?;
        let f = |x: &Rat| family_poly(FamilyId::C3, &ParamPoint(vec![x.clone()])).map_err(e2s);
        let degs = cubic_pair_degrees(&f(&m)?, &f(&m2)?)?;
        let equal = degs.iter().all(|&d| d == 3);
        ensure(w.is_some() == equal, format!("C3 ({m},{m2}): witness {w:?}, degrees {degs:?}"))?;
        found[0] += equal as usize;
    }
    for _ in 0..100 {
        let (a, b) = (random_s3(&mut r), random_s3(&mut r));
        if a == b {
            continue;
        }
        let w = s3_isom_witness(&a, &b).map_err(e2s)?;
        let equal = classify_s3(&a, &b)?.relation == Relation::Equal;
        ensure(w.is_some() == equal, format!("S3 ({a},{b})"))?;
        found[1] += equal as usize;
    }
    for _ in 0..100 {
        let (a, b) = (random_d4(&mut r), random_d4(&mut r));
        if a == b {
            continue;
        }
        let w = d4_isom_witness(a.s(), a.t(), b.s(), b.t()).map_err(e2s)?;
        let fa = family_poly(FamilyId::D4, &a).map_err(e2s)?;
        let fb = family_poly(FamilyId::D4, &b).map_err(e2s)?;
        let degs = quartic_split_degrees(&fa, &fb)?;
        let equal = degs.iter().all(|&d| d == 8);
        ensure(w.is_some() == equal, format!("D4 ({a}) ({b}): witness {w:?}, degrees {degs:?}"))?;
        found[2] += equal as usize;
    }
    within(t0, Duration::from_secs(120))?;
    Ok(format!("300 round trips (oracles confirm 20 of them); random pairs equal (C3,S3,D4) = {found:?}, all matched by independent tests"))
}

fn c9() -> Outcome {
    let t0 = Instant::now();
    let mut r = rng(9);
    let rp = |r: &mut ChaCha8Rng, deg: usize| {
        let mut c: Vec<i64> = (0..deg).map(|_| r.gen_range(-9..=9)).collect();
        c.push(r.gen_range(1..=3));
        QPoly::from_ints(&c)
    };
    for _ in 0..40 {
        let (df, dg) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let (f, g) = (rp(&mut r, df), rp(&mut r, dg));
        let p = &(&f * &f) * &g;
        let parts = p.squarefree_decomposition();
        let back = parts.iter().fold(QPoly::constant(p.lc()), |acc, (q, m)| &acc * &q.pow(*m));
        ensure(back == p, format!("squarefree reconstruction of {p}"))?;
        ensure(factor_over_q(&p).map_err(e2s)?.expand() == p, format!("factor round trip of {p}"))?;
    }
    for _ in 0..10 {
        let p = rp(&mut r, 5);
        if !p.is_squarefree() {
            continue;
        }
        let roots = find_roots(&p, 128).map_err(e2s)?;
        let back = rationalize_poly(&poly_from_roots(&roots, roots[0].prec()), 128).ok_or("roots do not rebuild")?;
        ensure(back == p.monic(), format!("root reconstruction of {p}"))?;
    }
    let cache = derive_rho_map(400, 6).map_err(e2s)?;
    for _ in 0..20 {
        let (a, b) = (random_d5(&mut r, 30), random_d5(&mut r, 30));
        ensure(brumer_configs(&a, 128).map_err(e2s)?.len() == 10, "configuration count")?;
        ensure(d5_f1(&a, &b) == d5_f1(&b, &a), "F1 swap symmetry")?;
        let Ok(img) = cache.apply(&a) else { continue };
        ensure(cache.apply(&img).map_err(e2s)? == a, format!("rho involution at ({a})"))?;
    }
    within(t0, Duration::from_secs(600))?;
    Ok("reconstruction, factor round trip, root rebuild, 10 configurations, F1 symmetry, rho involution".into())
}

struct C10 {
    disc_square: usize,
    product_square: usize,
    identity_holds: bool,
    product_square_iff_d2_square: bool,
}

fn c10_run() -> Result<C10, String> {
    let mut r = rng(10);
    let mut out = C10 { disc_square: 0, product_square: 0, identity_holds: true, product_square_iff_d2_square: true };
    for _ in 0..100 {
        let a = random_d5(&mut r, 200);
        let disc = family_poly(FamilyId::D5, &a).map_err(e2s)?.discriminant();
        let d2 = d_squared(a.s(), a.t());
        out.disc_square += is_square(&disc) as usize;
        let prod = is_square(&(&d2 * &disc));
        out.product_square += prod as usize;
        out.identity_holds &= disc == a.t() * a.t() * &d2 * &d2;
        out.product_square_iff_d2_square &= prod == is_square(&d2);
    }
    Ok(out)
}

fn c10() -> Outcome {
    let t0 = Instant::now();
    let c = c10_run()?;
    within(t0, Duration::from_secs(60))?;
    let msg = format!("disc square {}/100, d2*disc square {}/100", c.disc_square, c.product_square);
    ensure(c.disc_square == 100 && c.product_square == 100, msg.clone())?;
    Ok(msg)
}

fn main() {
    let crits: [(u32, fn() -> Outcome); 10] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10)];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut unexpected = Vec::new();
    for (n, f) in crits {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match &res {
            Ok(m) => println!("criterion {n:>2}: PASS  {m}"),
            Err(m) => println!("criterion {n:>2}: FAIL  {m}"),
        }
        if n == 10 {
            // Expected red; the failure must be the one the identity explains.
            let c = c10_run().expect("criterion 10 data");
            println!(
                "criterion 10: analysis  disc = t^2 (d^2)^2 at every sample: {}; d2*disc square exactly when d2 is: {}",
                c.identity_holds, c.product_square_iff_d2_square
            );
            if !(c.identity_holds && c.product_square_iff_d2_square && c.disc_square == 100) {
                unexpected.push(n);
            }
        } else if res.is_err() {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
