//! Seeded property suites behind `sp6flags verify` and the acceptance run.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::census::{run_census, CensusConfig, Level, Mode};
use crate::composition::{cd_mul, CDTower, ZornElement};
use crate::freudenthal::{algebra_trace_form, CompAlgebra, FreudenthalAlgebra};
use crate::invariants::{f1, f1_f2_semistable, f2, f2_of, phi_matrix};
use crate::matrix::Matrix;
use crate::orbits::{
    canonicalize_v, lie_stabilizer, normal_form_point, paper_witness, q_of, quaternion_norm_from_stabilizer,
    split_form, NormalFormX, Witness,
};
use crate::qforms::{hermitian_trace_form, qform_equivalent, HermitianForm};
use crate::scalars::{Field, Fp, Modulus, QuadElem, QuadField, Rational};
use crate::wedge::{
    act_decomposed, act_product, act_wedge3, check_symplectic, h_a, join_components, m_j, random_sp6, random_trivector,
    split_components, TriVector,
};

pub const SUITES: [&str; 13] = [
    "phi",
    "covariance",
    "invariance",
    "canary",
    "f2poly",
    "composition",
    "canonicalize",
    "witness",
    "stabilizer",
    "quaternion",
    "freudenthal",
    "census_x",
    "census_v",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub checked: u64,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

struct Recorder {
    checked: u64,
    failures: Vec<String>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.check(false, || what);
    }
}

fn rng_for(seed: u64, salt: &str) -> ChaCha8Rng {
    let h = salt.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn f5() -> Modulus {
    Modulus::new(5).expect("prime")
}

fn nonzero_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let a = rng.gen_range(-bound..=bound);
        if a != 0 {
            return a;
        }
    }
}

fn nonzero_elem<F: Field, R: Rng>(ctx: &F::Ctx, rng: &mut R, bound: i64) -> F {
    loop {
        let a = F::from_int(ctx, rng.gen_range(-bound..=bound));
        if !a.eq_zero() {
            return a;
        }
    }
}

fn phi_scalar<F: Field, R: Rng>(rec: &mut Recorder, ctx: &F::Ctx, rng: &mut R, trials: usize) {
    for _ in 0..trials {
        let t = random_trivector::<F, _>(ctx, rng, 9);
        let p = phi_matrix(&t);
        rec.check(p.mul(&p).scalar_value().is_some(), || format!("phi^2 not scalar at {}", t.to_text()));
    }
}

pub fn suite_phi(seed: u64, trials: usize) -> SuiteOutcome {
    run("phi", |rec| {
        let mut rng = rng_for(seed, "phi");
        phi_scalar::<Rational, _>(rec, &(), &mut rng, trials);
        phi_scalar::<Fp, _>(rec, &f5(), &mut rng, trials);
    })
}

pub fn suite_covariance(seed: u64, trials: usize) -> SuiteOutcome {
    run("covariance", |rec| {
        let mut rng = rng_for(seed, "covariance");
        for _ in 0..trials {
            let g = loop {
                let g = Matrix::from_fn(&(), 6, 6, |_, _| Rational::from_int(&(), rng.gen_range(-3..=3)));
                if !g.det().eq_zero() {
                    break g;
                }
            };
            let t = random_trivector::<Rational, _>(&(), &mut rng, 5);
            let lhs = phi_matrix(&act_wedge3(&g, &t));
            let rhs = g.mul(&phi_matrix(&t)).mul(&g.inverse().expect("det != 0")).scale(&g.det());
            rec.check(lhs == rhs, || format!("covariance fails at {}", t.to_text()));
        }
    })
}

fn invariance<F: Field, R: Rng>(rec: &mut Recorder, ctx: &F::Ctx, rng: &mut R, trials: usize) {
    for _ in 0..trials {
        let g = random_sp6::<F, _>(ctx, rng, 12);
        let t = random_trivector::<F, _>(ctx, rng, 4);
        let (a, b) = (f1_f2_semistable(&t), f1_f2_semistable(&act_wedge3(&g, &t)));
        rec.check(a.is_ok() && a == b, || format!("Sp6 invariance fails at {}", t.to_text()));
    }
}

pub fn suite_invariance(seed: u64, trials: usize) -> SuiteOutcome {
    run("invariance", |rec| {
        let mut rng = rng_for(seed, "invariance");
        invariance::<Rational, _>(rec, &(), &mut rng, trials);
        invariance::<Fp, _>(rec, &Modulus::new(7).expect("prime"), &mut rng, trials);
        let id = Matrix::<Rational>::identity(&(), 6);
        let one = Rational::from_int(&(), 1);
        for _ in 0..trials.div_ceil(5) {
            let t = random_trivector::<Rational, _>(&(), &mut rng, 4);
            let a = Rational::from_int(&(), nonzero_int(&mut rng, 6));
            let b = Rational::from_int(&(), nonzero_int(&mut rng, 6));
            let (f1t, f2t) = (f1(&t).expect("scalar"), f2(&t));
            let s = act_product(&id, &a, &b, &t);
            rec.check(f1(&s).expect("scalar") == f1t.clone() * a.pow(4), || "f1 character a^4".into());
            rec.check(f2(&s) == f2t.clone() * a.square() * b.square(), || "f2 character a^2 b^2".into());
            let s = act_product(&h_a(&a), &one, &one, &t);
            rec.check(f1(&s).expect("scalar") == f1t * a.pow(6), || "f1 character a^6 under h_a".into());
            rec.check(f2(&s) == f2t * a.pow(4), || "f2 character a^4 under h_a".into());
        }
    })
}

pub fn suite_canary(_seed: u64, _trials: usize) -> SuiteOutcome {
    run("canary", |rec| {
        for y0 in [1, 2, 3, 5] {
            let x = split_form(&Rational::from_int(&(), y0));
            let got = m_j::<Rational>(&()).mul(&phi_matrix(&x));
            let z = Matrix::zeros(&(), 3, 3);
            let y = Matrix::identity(&(), 3).scale(&Rational::from_int(&(), y0));
            let want = Matrix::from_blocks(&z, &y, &y, &z);
            rec.check(got == want, || format!("M_J phi block identity fails for y0 = {y0}"));
        }
    })
}

pub fn suite_f2poly(seed: u64, trials: usize) -> SuiteOutcome {
    run("f2poly", |rec| {
        let mut rng = rng_for(seed, "f2poly");
        for _ in 0..trials {
            let y: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
            let v: Vec<i64> = (0..6).map(|_| rng.gen_range(-9..=9)).collect();
            let x = TriVector::<Rational>::from_int_terms(
                &(),
                &[(-1, [1, 2, 3]), (-y[0], [4, 5, 6]), (y[1], [1, 5, 6]), (y[2], [4, 2, 6]), (y[3], [4, 5, 3])],
            );
            let poly = y[2] * y[3] * v[0] * v[0]
                + y[3] * y[1] * v[1] * v[1]
                + y[1] * y[2] * v[2] * v[2]
                + y[1] * v[3] * v[3]
                + y[2] * v[4] * v[4]
                + y[3] * v[5] * v[5]
                + y[0] * (v[0] * v[3] + v[1] * v[4] + v[2] * v[5]);
            let vr: Vec<Rational> = v.iter().map(|&a| Rational::from_int(&(), a)).collect();
            let got = f2_of(&x, &vr);
            rec.check(got == Rational::from_int(&(), -poly), || format!("f2 polynomial fails at y = {y:?}, v = {v:?}"));
        }
    })
}

fn composition_for<F: Field, R: Rng>(rec: &mut Recorder, ctx: &F::Ctx, rng: &mut R, trials: usize) {
    for len in 0..=3 {
        for _ in 0..trials {
            let lambdas = (0..len).map(|_| nonzero_elem::<F, _>(ctx, rng, 5)).collect();
            let tower = match CDTower::new(ctx, lambdas) {
                Ok(t) => t,
                Err(e) => {
                    rec.fail(format!("tower: {e}"));
                    continue;
                }
            };
            let n = tower.dim();
            let mut el =
                || tower.element((0..n).map(|_| F::from_int(ctx, rng.gen_range(-5..=5))).collect()).expect("dim");
            let (u, v) = (el(), el());
            let mul = |a, b| cd_mul(a, b).expect("same tower");
            let uv = mul(&u, &v);
            rec.check(uv.norm() == u.norm() * &v.norm(), || format!("N(uv) != N(u)N(v) in {tower:?}"));
            let uu = mul(&u, &u);
            rec.check(mul(&uu, &v) == mul(&u, &uv), || format!("left alternativity fails in {tower:?}"));
            let vu = mul(&v, &u);
            rec.check(mul(&vu, &u) == mul(&v, &uu), || format!("right alternativity fails in {tower:?}"));
        }
    }
    for _ in 0..trials {
        let mut el =
            || ZornElement::from_coords(&(0..8).map(|_| F::from_int(ctx, rng.gen_range(-5..=5))).collect::<Vec<F>>());
        let (u, v) = (el(), el());
        let uv = u.mul(&v);
        rec.check(uv.norm() == u.norm() * &v.norm(), || "Zorn N(uv) != N(u)N(v)".into());
        let uu = u.mul(&u);
        rec.check(uu.mul(&v) == u.mul(&uv), || "Zorn left alternativity".into());
        rec.check(v.mul(&u).mul(&u) == v.mul(&uu), || "Zorn right alternativity".into());
    }
}

pub fn suite_composition(seed: u64, trials: usize) -> SuiteOutcome {
    run("composition", |rec| {
        let mut rng = rng_for(seed, "composition");
        composition_for::<Rational, _>(rec, &(), &mut rng, trials);
        composition_for::<Fp, _>(rec, &f5(), &mut rng, trials);
    })
}

fn canonicalize_for<F: Field, R: Rng>(rec: &mut Recorder, ctx: &F::Ctx, rng: &mut R, trials: usize) {
    let mut done = 0;
    while done < trials {
        let v: Vec<F> = (0..6).map(|_| F::from_int(ctx, rng.gen_range(-6..=6))).collect();
        let y0 = nonzero_elem::<F, _>(ctx, rng, 6);
        if q_of(&v).eq_zero() {
            continue;
        }
        done += 1;
        match canonicalize_v(&y0, &v) {
            Ok(c) => {
                let zero = F::zero_in(ctx);
                let one = F::one_in(ctx);
                let want = vec![q_of(&v), zero.clone(), zero.clone(), one, zero.clone(), zero];
                let image = act_decomposed(&c.g.g, &join_components(&split_form(&y0), &v));
                let symplectic = check_symplectic(&c.g.g).map(|s| s.lambda.eq_one()).unwrap_or(false);
                rec.check(symplectic && c.v == want && image == join_components(&split_form(&y0), &want), || {
                    format!("canonicalization fails for v = {v:?}")
                });
            }
            Err(e) => rec.fail(format!("canonicalize_v({v:?}): {e}")),
        }
    }
}

pub fn suite_canonicalize(seed: u64, trials: usize) -> SuiteOutcome {
    run("canonicalize", |rec| {
        let mut rng = rng_for(seed, "canonicalize");
        canonicalize_for::<Rational, _>(rec, &(), &mut rng, trials);
        canonicalize_for::<Fp, _>(rec, &f5(), &mut rng, trials);
    })
}

pub fn suite_witness(_seed: u64, _trials: usize) -> SuiteOutcome {
    run("witness", |rec| {
        let k = QuadField::from_int(-1).expect("Q(i)");
        let e = |n: i64| QuadElem::from_int(&k, n);
        // y1 y2 y3 = y0²/4 + 1 with y2 = 1.
        for y0 in [0, 2, 6] {
            for y1 in [1, 2, -1] {
                let y3 = e(y0 * y0 / 4 + 1).div(&e(y1));
                let w = Witness::ThmCdG { i: e(1), y0: e(y0), y1: e(y1), y2: e(1), y3 };
                match paper_witness(&w) {
                    Ok(r) => rec.check(r.verified, || format!("thmCD_g fails for y0 = {y0}, y1 = {y1}")),
                    Err(err) => rec.fail(format!("thmCD_g y0 = {y0}, y1 = {y1}: {err}")),
                }
            }
        }
        for a in [4, 9] {
            let w = Witness::SpPvChain { a: Rational::from_int(&(), a), i: Rational::from_int(&(), -1) };
            match paper_witness(&w) {
                Ok(r) => rec.check(r.verified, || format!("spPV_chain fails for a = {a}")),
                Err(err) => rec.fail(format!("spPV_chain a = {a}: {err}")),
            }
        }
    })
}

pub fn suite_stabilizer(seed: u64, trials: usize) -> SuiteOutcome {
    run("stabilizer", |rec| {
        let mut rng = rng_for(seed, "stabilizer");
        let split = split_form(&Rational::from_int(&(), 2));
        rec.check(lie_stabilizer(&split).dim() == 8, || "split point stabilizer is not 8-dimensional".into());
        let mut done = 0;
        while done < trials {
            let t = random_trivector::<Rational, _>(&(), &mut rng, 3);
            if !f1_f2_semistable(&t).map(|r| r.semistable).unwrap_or(false) {
                continue;
            }
            done += 1;
            let d = lie_stabilizer(&t).dim();
            rec.check(d == 3, || format!("dim stab = {d} at {}", t.to_text()));
            let (x, _) = split_components(&t);
            let d = lie_stabilizer(&x).dim();
            rec.check(d == 8, || format!("dim stab = {d} on the X-part of {}", t.to_text()));
        }
    })
}

pub fn suite_quaternion(seed: u64, trials: usize) -> SuiteOutcome {
    run("quaternion", |rec| {
        let mut rng = rng_for(seed, "quaternion");
        let mut done = 0;
        while done < trials {
            let y =
                [rng.gen_range(-6..=6), nonzero_int(&mut rng, 6), nonzero_int(&mut rng, 6), nonzero_int(&mut rng, 6)];
            let nf = NormalFormX::<Rational>::from_ints(&(), y).expect("normal form");
            let i = nf.f1();
            if i.eq_zero() {
                continue;
            }
            done += 1;
            for m in 1..=3 {
                let ym = nf.ys()[m - 1].clone();
                let t = normal_form_point(&nf, &nf.pattern(m).expect("pattern"));
                if f2(&t).eq_zero() {
                    rec.fail(format!("pattern {m} of {y:?} is not semistable"));
                    continue;
                }
                let killing = quaternion_norm_from_stabilizer(&lie_stabilizer(&t));
                let trace = HermitianForm::new(i.clone(), vec![Rational::from_int(&(), 1), ym.clone()])
                    .map(|h| hermitian_trace_form(&h));
                let tower = CDTower::new(&(), vec![-i.clone(), -ym]).map(|c| c.norm_form());
                match (killing, trace, tower) {
                    (Ok(a), Ok(b), Ok(c)) => {
                        let eq = |p: &_, q: &_| qform_equivalent(p, q).unwrap_or(false);
                        rec.check(eq(&a, &b) && eq(&b, &c) && eq(&a, &c), || {
                            format!("triangle fails for y = {y:?}, m = {m}: {a} / {b} / {c}")
                        });
                    }
                    (a, b, c) => rec.fail(format!("y = {y:?}, m = {m}: {:?} {:?} {:?}", a.err(), b.err(), c.err())),
                }
            }
        }
    })
}

/// The six coordinate algebras: `k`, `K`, `Q`, `C` by doubling with random constants,
/// the Cayley octonions `CD(-1,-1,-1)` and Zorn's vector matrices.
fn coordinate_algebra<R: Rng>(kind: usize, rng: &mut R) -> CompAlgebra<Rational> {
    let mut lam = |n: usize| (0..n).map(|_| Rational::from_int(&(), nonzero_int(rng, 5))).collect::<Vec<_>>();
    match kind {
        0..=3 => CompAlgebra::Tower(CDTower::new(&(), lam(kind)).expect("length <= 3")),
        4 => CompAlgebra::Tower(CDTower::new(&(), vec![Rational::from_int(&(), -1); 3]).expect("length 3")),
        _ => CompAlgebra::Zorn(()),
    }
}

fn random_gamma<R: Rng>(rng: &mut R) -> [Rational; 3] {
    std::array::from_fn(|_| Rational::from_int(&(), nonzero_int(rng, 5)))
}

pub fn suite_freudenthal(seed: u64, trials: usize) -> SuiteOutcome {
    run("freudenthal", |rec| {
        let mut rng = rng_for(seed, "freudenthal");
        for n in 0..trials {
            let alg =
                FreudenthalAlgebra::new(coordinate_algebra(n % 6, &mut rng), random_gamma(&mut rng)).expect("char 0");
            let x = alg.random(&mut rng, 4);
            match x.cubic_data() {
                Ok(d) => {
                    rec.check(x.jordan_mul(&d.adjoint).ok() == Some(alg.scalar_matrix(&d.n)), || "X.X# != N I".into())
                }
                Err(e) => rec.fail(format!("cubic identity: {e}")),
            }
        }
        for n in 0..trials.div_ceil(25) {
            let alg =
                FreudenthalAlgebra::new(coordinate_algebra(n % 6, &mut rng), random_gamma(&mut rng)).expect("char 0");
            match algebra_trace_form(&alg) {
                Ok(r) => {
                    rec.check(r.certified == Some(true), || format!("trace form {} vs {}", r.gram_form, r.formula))
                }
                Err(e) => rec.fail(format!("trace form: {e}")),
            }
        }
    })
}

pub fn suite_census(level: Level, seed: u64) -> SuiteOutcome {
    let name = match level {
        Level::X => "census_x",
        Level::V => "census_v",
    };
    run(name, |rec| {
        let mut configs = vec![CensusConfig::new(3, level)];
        if level == Level::V {
            configs.push(CensusConfig { mode: Mode::Brute, seed, ..CensusConfig::new(3, level) });
        }
        for cfg in configs {
            match run_census(&cfg) {
                Ok(r) => rec.check(r.is_match, || {
                    format!("{} census mismatch: {:?} vs {:?}", cfg.mode, r.fiber_counts, r.predictions)
                }),
                Err(e) => rec.fail(e.to_string()),
            }
        }
    })
}

fn run(name: &str, body: impl FnOnce(&mut Recorder)) -> SuiteOutcome {
    let start = Instant::now();
    let mut rec = Recorder::new();
    body(&mut rec);
    SuiteOutcome { name: name.to_string(), checked: rec.checked, failures: rec.failures, elapsed: start.elapsed() }
}

pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<SuiteOutcome, CheckError> {
    Ok(match name {
        "phi" => suite_phi(seed, trials),
        "covariance" => suite_covariance(seed, trials),
        "invariance" => suite_invariance(seed, trials),
        "canary" => suite_canary(seed, trials),
        "f2poly" => suite_f2poly(seed, trials),
        "composition" => suite_composition(seed, trials),
        "canonicalize" => suite_canonicalize(seed, trials),
        "witness" => suite_witness(seed, trials),
        "stabilizer" => suite_stabilizer(seed, trials),
        "quaternion" => suite_quaternion(seed, trials),
        "freudenthal" => suite_freudenthal(seed, trials),
        "census_x" => suite_census(Level::X, seed),
        "census_v" => suite_census(Level::V, seed),
        other => return Err(CheckError::UnknownSuite(other.to_string())),
    })
}

/// `all` expands to every suite.
pub fn run_suites(name: &str, seed: u64, trials: usize) -> Result<Vec<SuiteOutcome>, CheckError> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, seed, trials)).collect()
    } else {
        Ok(vec![run_suite(name, seed, trials)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for s in SUITES.iter().filter(|s| !s.starts_with("census")) {
            let out = run_suite(s, 1, 5).unwrap();
            assert!(out.passed(), "{s}: {:?}", out.failures);
        }
        assert!(matches!(run_suite("nope", 1, 1), Err(CheckError::UnknownSuite(_))));
    }

    #[test]
    fn suites_are_seed_deterministic() {
        let a = suite_f2poly(3, 20);
        let b = suite_f2poly(3, 20);
        assert_eq!((a.checked, a.failures), (b.checked, b.failures));
    }
}
