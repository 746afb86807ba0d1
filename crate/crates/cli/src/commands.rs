use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use sp6flags::census::{
    predicted_orbit_counts, run_census, CensusConfig, Level, Mode, DEFAULT_BUDGET, EXTENDED_BUDGET,
};
use sp6flags::checks::run_suites;
use sp6flags::composition::CDTower;
use sp6flags::flags::{flag_of_point, CompositionClass};
use sp6flags::freudenthal::{
    algebra_trace_form, orbit_to_freudenthal, CompAlgebra, FreudenthalAlgebra, TraceFormReport,
};
use sp6flags::invariants::f1_f2_semistable;
use sp6flags::matrix::Matrix;
use sp6flags::orbits::{
    canonicalize_v, lie_stabilizer, normal_form_point, paper_witness, quaternion_norm_from_stabilizer, split_form,
    NormalFormX, Witness,
};
use sp6flags::scalars::{Field, FieldCtx, Fp, QuadElem, Rational};
use sp6flags::wedge::{act_decomposed, join_components, TriVector};

use crate::error::{parse_err, pre, CliResult};
use crate::json;
use crate::{AlgebraArg, Command, LevelArg, ModeArg, PointArgs, WitnessCase};

/// Runs `$body` with `$F` bound to the scalar type named by `$field` and `$ctx` to its context.
macro_rules! with_field {
    ($field:expr, |$ctx:ident: $F:ident| $body:expr) => {{
        match parse_field($field)? {
            FieldCtx::Rationals => {
                type $F = Rational;
                let $ctx = ();
                $body
            }
            FieldCtx::QuadExt(k) => {
                type $F = QuadElem;
                let $ctx = k;
                $body
            }
            FieldCtx::PrimeField(m) => {
                type $F = Fp;
                let $ctx = m;
                $body
            }
        }
    }};
}

fn parse_field(s: &str) -> CliResult<FieldCtx> {
    s.parse::<FieldCtx>().map_err(parse_err)
}

fn parse_scalar<F: Field>(ctx: &F::Ctx, s: &str) -> CliResult<F> {
    Ok(F::parse(ctx, s)?)
}

fn json_atoms(v: &Value) -> CliResult<Vec<String>> {
    let Value::Array(items) = v else { return Err(parse_err("expected a JSON array")) };
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(parse_err(format!("unexpected JSON value {other}"))),
        })
        .collect()
}

/// `a,b,c` or a JSON array.
fn parse_list<F: Field>(ctx: &F::Ctx, s: &str) -> CliResult<Vec<F>> {
    let t = s.trim();
    let atoms = if t.starts_with('[') {
        json_atoms(&serde_json::from_str(t).map_err(parse_err)?)?
    } else if t.is_empty() {
        Vec::new()
    } else {
        t.split(',').map(|a| a.trim().to_string()).collect()
    };
    atoms.iter().map(|a| parse_scalar(ctx, a)).collect()
}

fn parse_fixed<F: Field, const N: usize>(ctx: &F::Ctx, s: &str, what: &str) -> CliResult<[F; N]> {
    let v = parse_list::<F>(ctx, s)?;
    let n = v.len();
    v.try_into().map_err(|_| parse_err(format!("{what} needs {N} entries, got {n}")))
}

/// Rows separated by `;`, or a JSON array of rows.
fn parse_matrix<F: Field>(ctx: &F::Ctx, s: &str) -> CliResult<Matrix<F>> {
    let t = s.trim();
    let rows: Vec<Vec<F>> = if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(parse_err)?;
        let Value::Array(rows) = v else { return Err(parse_err("expected a JSON array of rows")) };
        rows.iter().map(|r| json_atoms(r)?.iter().map(|a| parse_scalar(ctx, a)).collect()).collect::<CliResult<_>>()?
    } else {
        t.split(';').map(|r| parse_list(ctx, r)).collect::<CliResult<_>>()?
    };
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(parse_err("matrix rows must be nonempty and of equal length"));
    }
    Ok(Matrix::from_rows(ctx, rows))
}

fn parse_trivector<F: Field>(ctx: &F::Ctx, s: &str) -> CliResult<TriVector<F>> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: BTreeMap<String, Value> = serde_json::from_str(t).map_err(parse_err)?;
        let map = v
            .into_iter()
            .map(|(k, x)| match x {
                Value::String(s) => Ok((k, s)),
                Value::Number(n) => Ok((k, n.to_string())),
                other => Err(parse_err(format!("unexpected JSON value {other}"))),
            })
            .collect::<CliResult<BTreeMap<_, _>>>()?;
        Ok(TriVector::from_json_map(ctx, &map)?)
    } else {
        Ok(TriVector::parse(ctx, t)?)
    }
}

fn need<'a>(x: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    x.as_deref().ok_or_else(|| parse_err(format!("--{flag} is required for this case")))
}

fn parse_nf<F: Field>(ctx: &F::Ctx, s: &str) -> CliResult<NormalFormX<F>> {
    let [y0, y1, y2, y3] = parse_fixed::<F, 4>(ctx, s, "--nf")?;
    Ok(NormalFormX::new(y0, y1, y2, y3)?)
}

fn parse_point<F: Field>(ctx: &F::Ctx, p: &PointArgs) -> CliResult<TriVector<F>> {
    match (&p.trivector, &p.nf) {
        (Some(t), _) => parse_trivector(ctx, t),
        (None, Some(nf)) => {
            let nf = parse_nf::<F>(ctx, nf)?;
            let v = match (p.pattern, &p.v) {
                (Some(m), _) => nf.pattern(m)?,
                (None, Some(v)) => parse_fixed::<F, 6>(ctx, v, "--v")?.to_vec(),
                (None, None) => vec![F::zero_in(ctx); 6],
            };
            Ok(normal_form_point(&nf, &v))
        }
        (None, None) => Err(parse_err("one of --trivector or --nf is required")),
    }
}

pub fn run(cmd: &Command) -> CliResult<(Value, bool)> {
    match cmd {
        Command::Eval { field, point } => with_field!(&field.field, |ctx: F| eval::<F>(&ctx, point)),
        Command::Canonicalize { field, y0, v } => with_field!(&field.field, |ctx: F| canonicalize::<F>(&ctx, y0, v)),
        Command::Stabilizer { field, point } => with_field!(&field.field, |ctx: F| stabilizer::<F>(&ctx, point)),
        Command::Flag { field, nf, pattern } => flag(&field.field, nf, *pattern),
        Command::Freudenthal { field, algebra, lambdas, gamma, nf, pattern, seed, trials } => match nf {
            Some(nf) => freudenthal_flag(&field.field, nf, *pattern, gamma, *seed),
            None => {
                with_field!(&field.field, |ctx: F| freudenthal::<F>(&ctx, *algebra, lambdas, gamma, *seed, *trials))
            }
        },
        Command::Census { p, level, mode, workers, seed, sample_percent, extended_budget } => {
            let cfg = CensusConfig {
                p: *p,
                level: match level {
                    LevelArg::X => Level::X,
                    LevelArg::V => Level::V,
                },
                mode: match mode {
                    ModeArg::Formula => Mode::Formula,
                    ModeArg::Brute => Mode::Brute,
                },
                workers: *workers,
                seed: *seed,
                sample_percent: *sample_percent,
                budget: if *extended_budget { EXTENDED_BUDGET } else { DEFAULT_BUDGET },
            };
            census(&cfg)
        }
        Command::Verify { suite, seed, trials } => verify(suite, *seed, *trials),
        Command::Witness { field, case, i, y, a, y0, q, matrix } => with_field!(&field.field, |ctx: F| {
            let w: Witness<F> = match case {
                WitnessCase::ThmCdG => {
                    let [y0, y1, y2, y3] = parse_fixed::<F, 4>(&ctx, need(y, "y")?, "--y")?;
                    Witness::ThmCdG { i: parse_scalar(&ctx, need(i, "i")?)?, y0, y1, y2, y3 }
                }
                WitnessCase::SpPvChain => {
                    Witness::SpPvChain { a: parse_scalar(&ctx, need(a, "a")?)?, i: parse_scalar(&ctx, need(i, "i")?)? }
                }
                WitnessCase::Sl2Embed => Witness::Sl2Embed {
                    c1: parse_matrix(&ctx, need(matrix, "matrix")?)?,
                    y0: parse_scalar(&ctx, need(y0, "y0")?)?,
                    q: parse_scalar(&ctx, need(q, "q")?)?,
                },
                WitnessCase::Sl3Embed => Witness::Sl3Embed {
                    a: parse_matrix(&ctx, need(matrix, "matrix")?)?,
                    y0: parse_scalar(&ctx, need(y0, "y0")?)?,
                },
            };
            witness(&w)
        }),
    }
}

fn field_name<F: Field>(ctx: &F::Ctx) -> String {
    F::describe(ctx).to_string()
}

fn eval<F: Field>(ctx: &F::Ctx, p: &PointArgs) -> CliResult<(Value, bool)> {
    let t = parse_point::<F>(ctx, p)?;
    let r = f1_f2_semistable(&t)?;
    let doc = json!({
        "field": field_name::<F>(ctx),
        "trivector": json::trivector(&t),
        "f": json::scalar(&r.f),
        "f1": json::scalar(&r.f1),
        "f2": json::scalar(&r.f2),
        "semistable": r.semistable,
    });
    Ok((doc, true))
}

fn canonicalize<F: Field>(ctx: &F::Ctx, y0: &str, v: &str) -> CliResult<(Value, bool)> {
    let y0 = parse_scalar::<F>(ctx, y0)?;
    let v = parse_fixed::<F, 6>(ctx, v, "--v")?;
    let c = canonicalize_v(&y0, &v)?;
    let verified = act_decomposed(&c.g.g, &join_components(&split_form(&y0), &v)) == c.canonical;
    let doc = json!({
        "field": field_name::<F>(ctx),
        "y0": json::scalar(&y0),
        "v": json::scalars(&v),
        "q": json::scalar(&c.v[0]),
        "canonical_v": json::scalars(&c.v),
        "canonical": json::trivector(&c.canonical),
        "g": json::matrix(&c.g.g),
        "lambda": json::scalar(&c.g.lambda),
        "swapped_pair": c.swapped,
        "verified": verified,
    });
    Ok((doc, verified))
}

fn stabilizer<F: Field>(ctx: &F::Ctx, p: &PointArgs) -> CliResult<(Value, bool)> {
    let t = parse_point::<F>(ctx, p)?;
    let l = lie_stabilizer(&t);
    let quaternion = if l.dim() == 3 { Some(json::qform(&quaternion_norm_from_stabilizer(&l)?)) } else { None };
    let doc = json!({
        "field": field_name::<F>(ctx),
        "trivector": json::trivector(&t),
        "dim": l.dim(),
        "basis": l.basis.iter().map(json::matrix).collect::<Vec<_>>(),
        "killing": json::matrix(&l.killing),
        "quaternion_norm": quaternion,
    });
    Ok((doc, true))
}

fn class_name(c: &CompositionClass) -> String {
    c.to_string()
}

fn flag(field: &str, nf: &str, m: usize) -> CliResult<(Value, bool)> {
    if parse_field(field)? != FieldCtx::Rationals {
        return Err(pre("flags are classified over Q only"));
    }
    let nf = parse_nf::<Rational>(&(), nf)?;
    let d = flag_of_point(&nf, m)?;
    let octonion = CompositionClass::Octonion(d.octonion_class);
    let doc = json!({
        "field": "Q",
        "normal_form": json::scalars(&[nf.y0.clone(), nf.y1.clone(), nf.y2.clone(), nf.y3.clone()]),
        "pattern": m,
        "v": json::scalars(&nf.pattern(m)?),
        "i": json::scalar(&d.i),
        "i_squarefree": d.i_class.to_string(),
        "split": d.split,
        "hermitian_form": { "d": json::scalar(d.h.d()), "diag": json::scalars(d.h.diag()) },
        "K": { "norm": json::qform(&d.quadratic_norm), "class": class_name(&d.quadratic_class) },
        "Q": {
            "norm": json::qform(&d.quaternion_norm),
            "class": class_name(&d.quaternion_class),
            "ramified_at": d.quaternion_ramification().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        },
        "C": { "norm": json::qform(&d.octonion_norm), "class": class_name(&octonion), "kind": d.octonion_class.to_string() },
        "flag": ["Q", class_name(&d.quadratic_class), class_name(&d.quaternion_class), class_name(&octonion)],
    });
    Ok((doc, true))
}

fn algebra_name<F: Field>(c: &CompAlgebra<F>) -> String {
    match c {
        CompAlgebra::Tower(t) => format!("{t:?}"),
        CompAlgebra::Zorn(_) => "Zorn".into(),
    }
}

fn trace_report<F: Field>(r: &TraceFormReport<F>) -> Value {
    json!({
        "gram": json::qform(&r.gram_form),
        "formula": json::qform(&r.formula),
        "certified": r.certified,
    })
}

fn freudenthal<F: Field>(
    ctx: &F::Ctx,
    algebra: AlgebraArg,
    lambdas: &str,
    gamma: &str,
    seed: u64,
    trials: usize,
) -> CliResult<(Value, bool)> {
    let comp = match algebra {
        AlgebraArg::Tower => CompAlgebra::Tower(CDTower::new(ctx, parse_list::<F>(ctx, lambdas)?)?),
        AlgebraArg::Zorn => CompAlgebra::Zorn(ctx.clone()),
    };
    let gamma = parse_fixed::<F, 3>(ctx, gamma, "--gamma")?;
    let alg = FreudenthalAlgebra::new(comp, gamma)?;
    let report = algebra_trace_form(&alg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..trials {
        if alg.random(&mut rng, 5).cubic_data().is_ok() {
            passed += 1;
        }
    }
    let ok = passed == trials && report.certified != Some(false);
    let doc = json!({
        "field": field_name::<F>(ctx),
        "coordinate_algebra": algebra_name(alg.comp()),
        "gamma": json::scalars(alg.gamma()),
        "dim": alg.dim(),
        "trace_form": trace_report(&report),
        "identities": { "seed": seed, "trials": trials, "passed": passed },
    });
    Ok((doc, ok))
}

fn freudenthal_flag(field: &str, nf: &str, m: usize, gamma: &str, seed: u64) -> CliResult<(Value, bool)> {
    if parse_field(field)? != FieldCtx::Rationals {
        return Err(pre("flags are classified over Q only"));
    }
    let nf = parse_nf::<Rational>(&(), nf)?;
    let gamma = parse_fixed::<Rational, 3>(&(), gamma, "--gamma")?;
    let d = flag_of_point(&nf, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = orbit_to_freudenthal(&d, gamma, &mut rng)?;
    let ok =
        f.inclusions_verified && f.dim6_algebra.certified != Some(false) && f.dim9_algebra.certified != Some(false);
    let doc = json!({
        "field": "Q",
        "seed": seed,
        "dim6": json::qform(&f.dim6),
        "dim6_algebra": trace_report(&f.dim6_algebra),
        "dim9": json::qform(&f.dim9),
        "dim9_algebra": trace_report(&f.dim9_algebra),
        "b1": json::scalar(&f.b1),
        "c1": json::scalar(&f.c1),
        "tower": f.tower.iter().map(|a| json!({ "coordinate_algebra": algebra_name(a.comp()), "dim": a.dim() })).collect::<Vec<_>>(),
        "inclusions_verified": f.inclusions_verified,
    });
    Ok((doc, ok))
}

fn big(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(n) => json!(n),
        Err(_) => json!(n.to_string()),
    }
}

fn census(cfg: &CensusConfig) -> CliResult<(Value, bool)> {
    let table = predicted_orbit_counts(cfg.p)?;
    let r = run_census(cfg)?;
    let map = |m: &BTreeMap<_, u64>| {
        m.iter()
            .map(|(k, v): (&sp6flags::census::FiberKey, &u64)| (k.to_string(), json!(v)))
            .collect::<serde_json::Map<_, _>>()
    };
    let profile: Vec<Value> = r
        .per_x_profile
        .iter()
        .map(|((k, n), c)| json!({ "fiber": k.to_string(), "vectors_per_x": n, "x_count": c }))
        .collect();
    let doc = json!({
        "p": r.p,
        "level": r.level.to_string(),
        "mode": r.mode.to_string(),
        "workers": r.workers,
        "seed": r.seed,
        "sample_percent": r.sample_percent,
        "scanned": r.scanned,
        "semistable_x": r.semistable_x,
        "fiber_counts": map(&r.fiber_counts),
        "predictions": map(&r.predictions),
        "total": r.total(),
        "group_orders": {
            "Sp6": big(table.sp6), "SL3": big(table.sl3), "SU3": big(table.su3), "SL2": big(table.sl2),
        },
        "v_orbit_count": table.v_orbit_count,
        "per_x_profile": profile,
        "brute_mismatches": r.brute_mismatches,
        "match": r.is_match,
        "elapsed_ms": r.elapsed.as_millis() as u64,
    });
    Ok((doc, r.is_match))
}

fn verify(suite: &str, seed: u64, trials: usize) -> CliResult<(Value, bool)> {
    let outcomes = run_suites(suite, seed, trials)?;
    let all = outcomes.iter().all(|o| o.passed());
    let suites: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "name": o.name,
                "passed": o.passed(),
                "checked": o.checked,
                "failures": o.failures,
                "elapsed_ms": o.elapsed.as_millis() as u64,
            })
        })
        .collect();
    Ok((json!({ "seed": seed, "trials": trials, "suites": suites, "all_passed": all }), all))
}

fn witness<F: Field>(w: &Witness<F>) -> CliResult<(Value, bool)> {
    let r = paper_witness(w)?;
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "g": json::matrix(&s.g),
                "x_scale": json::scalar(&s.x_scale),
                "v_scale": json::scalar(&s.v_scale),
                "lambda": s.lambda.as_ref().map(json::scalar),
            })
        })
        .collect();
    let doc = json!({
        "case_id": r.case_id,
        "steps": steps,
        "source": json::trivector(&r.source),
        "target": json::trivector(&r.target),
        "image": json::trivector(&r.image),
        "in_group": r.in_group,
        "verified": r.verified,
    });
    Ok((doc, r.verified))
}
