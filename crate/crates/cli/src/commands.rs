use berkovich::analytic::{
    degree_bound_check, degree_sum_check, fast_arc, rigid_sample, Affinoid, BallMap, PolynomialMap, RationalMap,
};
use berkovich::field::{FiniteField, ResidueElem, ResidueField};
use berkovich::montel::{
    cantor_coding, degree_explosion_probe, good_reduction_limit_probe, pointwise_limit_probe, schwarz_check, MapFamily,
};
use berkovich::newton::{annuli_orbit, classify_fixed_point, find_julia_ray_point, iterate_ray, julia_breakpoints};
use berkovich::residue::{
    classify_direction, enumerate_restricted_maps, enumerate_restricted_maps_brute_force, OrbitBudget, P1Point,
    ResidueRationalMap,
};
use berkovich::{BerkovichPoint, DirectionClass, FieldDescriptor, Log, PlMap, Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{series, Params, RunConfig};
use crate::report::{Failure, Outcome};

fn r(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn l(x: &Log) -> Value {
    Value::String(x.to_string())
}

fn class_json(c: &P1Point) -> Value {
    match c {
        DirectionClass::Residue(r) => Value::String(r.to_string()),
        DirectionClass::Infinity => Value::String("inf".into()),
    }
}

fn parse_class(field: ResidueField, v: &Value) -> Result<P1Point, Failure> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Failure::config(format!("bad residue class {v}"))),
    };
    if s == "inf" {
        return Ok(DirectionClass::Infinity);
    }
    ResidueElem::parse(field, &s)
        .map(DirectionClass::Residue)
        .ok_or_else(|| Failure::config(format!("{s} is not an element of the residue field")))
}

fn polygon(p: &Params) -> Result<PlMap, Failure> {
    let (lo, hi) = p.window()?;
    let s = series(p.get("series")?, &hi)?;
    Ok(s.valuation_polygon(lo, hi)?)
}

pub fn run(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Outcome, Failure> {
    let desc = cfg.field;
    let m = &cfg.params;
    match cfg.command.as_str() {
        "phi" => phi(&Params::new(desc, m, &["series", "window"])?),
        "julia-ray" => julia_ray(&Params::new(desc, m, &["series", "window", "tau_x", "max_m"])?),
        "iterate" => iterate(&Params::new(desc, m, &["series", "window", "tau", "steps"])?),
        "annuli" => annuli(&Params::new(desc, m, &["v_lambda", "l5", "l6", "n_lo", "n_hi"])?),
        "enumerate" => enumerate(&Params::new(desc, m, &["q", "set", "d_max", "brute_force"])?),
        "probe" => probe(desc, m),
        "cantor" => cantor(&Params::new(desc, m, &["c", "depth"])?),
        "fast-arc" => arc(&Params::new(desc, m, &["map", "affinoid", "x0", "samples"])?),
        "degree-check" => {
            degree_check(&Params::new(desc, m, &["map", "domain", "targets", "random_targets"])?, cfg.seed, pool)
        }
        "classify" => classify(desc, m),
        other => Err(Failure::config(format!("unknown command \"{other}\""))),
    }
}

fn phi(p: &Params) -> Result<Outcome, Failure> {
    let phi = polygon(p)?;
    let samples = phi.samples();
    let rows = samples.iter().map(|(t, y)| vec![t.to_string(), y.to_string()]).collect();
    Ok(Outcome {
        result: json!({
            "window": [r(phi.lo()), r(phi.hi())],
            "knots": phi.knots().iter().map(r).collect::<Vec<_>>(),
            "slopes": phi.slopes(),
            "values": phi.values().iter().map(r).collect::<Vec<_>>(),
            "samples": samples.iter().map(|(t, y)| json!([r(t), r(y)])).collect::<Vec<_>>(),
            "convex": phi.is_convex(),
            "increasing": phi.is_increasing(),
        }),
        table: Some((vec!["tau", "phi"], rows)),
        holds: phi.is_convex(),
    })
}

fn julia_ray(p: &Params) -> Result<Outcome, Failure> {
    let phi = polygon(p)?;
    let tau_x = p.rational("tau_x")?;
    let point = find_julia_ray_point(&phi, &tau_x, p.usize_or("max_m", 16)?)?;
    let bps = julia_breakpoints(&phi);
    Ok(Outcome {
        result: json!({
            "breakpoints": bps.iter().map(|(t, y)| json!({"tau": r(t), "image": r(y)})).collect::<Vec<_>>(),
            "ray_point": {"tau": r(&point.tau), "m": point.m, "breakpoint": r(&point.breakpoint)},
        }),
        table: None,
        holds: bps.iter().any(|(t, _)| *t == point.breakpoint),
    })
}

fn iterate(p: &Params) -> Result<Outcome, Failure> {
    let phi = polygon(p)?;
    let orbit = iterate_ray(&phi, &p.rational("tau")?, p.usize("steps")?)?;
    Ok(Outcome { result: json!({"orbit": orbit.iter().map(r).collect::<Vec<_>>()}), table: None, holds: true })
}

fn annuli(p: &Params) -> Result<Outcome, Failure> {
    let steps = annuli_orbit(
        -p.rational("v_lambda")?,
        p.rational("l5")?,
        p.rational("l6")?,
        p.usize("n_lo")?,
        p.usize("n_hi")?,
    )?;
    let holds = steps.iter().all(|s| s.maps_onto_next && s.identity_holds && s.growth_holds);
    let rows: Vec<Value> = steps
        .iter()
        .map(|s| {
            json!({
                "n": s.n, "inner": r(&s.inner), "outer": r(&s.outer),
                "image_inner": r(&s.image_inner), "image_outer": r(&s.image_outer), "slope": s.slope,
                "maps_onto_next": s.maps_onto_next, "identity_holds": s.identity_holds, "growth_holds": s.growth_holds,
            })
        })
        .collect();
    Ok(Outcome { result: json!({"steps": rows}), table: None, holds })
}

fn enumerate(p: &Params) -> Result<Outcome, Failure> {
    let q = u32::try_from(p.usize("q")?).map_err(|_| Failure::config("q is too large"))?;
    let field = ResidueField::Fp(FiniteField::with_order(q)?);
    let set = p
        .get("set")?
        .as_array()
        .ok_or_else(|| Failure::config("\"set\" must be a list"))?
        .iter()
        .map(|v| parse_class(field, v))
        .collect::<Result<Vec<_>, _>>()?;
    let d_max = p.usize("d_max")?;
    let e = enumerate_restricted_maps(q, &set, d_max)?;
    let mut holds = e.bound_satisfied && e.ramification_consistent;
    let mut result = json!({
        "maps": e.maps.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        "summary": {"count": e.maps.len(), "max_degree": e.max_degree, "bound_satisfied": e.bound_satisfied},
        "ramification_consistent": e.ramification_consistent,
    });
    if p.has("brute_force") && p.get("brute_force")?.as_bool() == Some(true) {
        let bf = enumerate_restricted_maps_brute_force(q, &set, d_max)?;
        holds &= bf.maps == e.maps;
        result["brute_force_matches"] = json!(bf.maps == e.maps);
    }
    Ok(Outcome { result, table: None, holds })
}

fn probe(desc: FieldDescriptor, m: &serde_json::Map<String, Value>) -> Result<Outcome, Failure> {
    let mode = match m.get("mode") {
        None => "limit",
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(Failure::config("\"mode\" must be a string")),
    };
    match mode {
        "limit" => {
            let p = Params::new(desc, m, &["mode", "family", "point", "witnesses", "n_max"])?;
            let family = MapFamily::from_json(desc, p.get("family")?)?;
            let ws = p
                .get("witnesses")?
                .as_array()
                .ok_or_else(|| Failure::config("\"witnesses\" must be a list"))?
                .iter()
                .map(|w| berkovich::FieldElement::from_json(desc, w))
                .collect::<Result<Vec<_>, _>>()?;
            let rep = pointwise_limit_probe(&family, &p.point("point")?, p.usize("n_max")?, &ws)?;
            let n_max = rep.values.first().map_or(0, |v| v.len());
            let rows: Vec<Value> = (0..n_max)
                .map(|i| json!({"n": i + 1, "values": rep.values.iter().map(|v| l(&v[i])).collect::<Vec<_>>()}))
                .collect();
            let table = (0..n_max)
                .flat_map(|i| {
                    rep.values
                        .iter()
                        .enumerate()
                        .map(move |(j, v)| vec![(i + 1).to_string(), j.to_string(), v[i].to_string()])
                })
                .collect();
            Ok(Outcome {
                result: json!({
                    "mode": "limit",
                    "point": rep.point.to_json(),
                    "witnesses": rep.witnesses.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
                    "rows": rows,
                    "verdicts": rep.verdicts.iter().map(|v| v.as_ref().map(l)).collect::<Vec<_>>(),
                    "inferred": rep.inferred.as_ref().map(|b| b.to_json()),
                }),
                table: Some((vec!["n", "witness", "value"], table)),
                holds: true,
            })
        }
        "explosion" => {
            let p = Params::new(desc, m, &["mode", "family", "point", "n_max"])?;
            let family = MapFamily::from_json(desc, p.get("family")?)?;
            let rep = degree_explosion_probe(&family, &p.point("point")?, p.usize("n_max")?)?;
            let holds = rep.predicted.as_ref().is_none_or(|pr| *pr == rep.taus && rep.eventually_decreasing);
            Ok(Outcome {
                result: json!({
                    "mode": "explosion",
                    "taus": rep.taus.iter().map(l).collect::<Vec<_>>(),
                    "degrees": rep.degrees,
                    "predicted": rep.predicted.as_ref().map(|p| p.iter().map(l).collect::<Vec<_>>()),
                    "eventually_decreasing": rep.eventually_decreasing,
                }),
                table: None,
                holds,
            })
        }
        "good-reduction" => {
            let p = Params::new(desc, m, &["mode", "map", "class", "n_max"])?;
            let map = RationalMap::from_json(desc, p.get("map")?)?;
            let class = parse_class(desc.residue_field(), p.get("class")?)?;
            let rep = good_reduction_limit_probe(&map, &class, p.usize("n_max")?)?;
            Ok(Outcome {
                result: json!({
                    "mode": "good-reduction",
                    "reduction": rep.reduction.to_json(),
                    "verdict": rep.classification.verdict,
                    "case": rep.case,
                    "verified_up_to": rep.verified_up_to,
                    "predicted": rep.predicted.iter().map(class_json).collect::<Vec<_>>(),
                    "diameters": rep.diameters.iter().map(l).collect::<Vec<_>>(),
                    "returns": rep.returns.iter().map(l).collect::<Vec<_>>(),
                    "equivariant": rep.equivariant,
                }),
                table: None,
                holds: rep.holds,
            })
        }
        "schwarz" => {
            let p = Params::new(desc, m, &["mode", "map", "point"])?;
            let f = PolynomialMap::from_json(desc, p.get("map")?)?;
            let rep = schwarz_check(&f, &p.point("point")?)?;
            Ok(Outcome {
                result: json!({"mode": "schwarz", "sup_norm": l(&rep.sup_norm), "seminorm": l(&rep.seminorm), "equal": rep.equal}),
                table: None,
                holds: rep.equal,
            })
        }
        other => Err(Failure::config(format!("unknown probe mode \"{other}\""))),
    }
}

fn cantor(p: &Params) -> Result<Outcome, Failure> {
    let rep = cantor_coding(&p.elem("c")?, p.usize("depth")?)?;
    let levels: Vec<Value> = rep
        .levels
        .iter()
        .map(|lv| {
            Value::Array(
                lv.iter()
                    .map(|b| json!({"address": b.address, "ball": b.ball.to_json(), "image": b.image, "degree": b.degree}))
                    .collect(),
            )
        })
        .collect();
    Ok(Outcome {
        result: json!({
            "start": rep.start.to_json(),
            "counts": rep.counts,
            "separation_level": rep.separation_level,
            "checks": {
                "counts": rep.counts_ok, "disjoint": rep.disjoint_ok, "images": rep.images_ok,
                "nesting": rep.nesting_ok, "degree_sums": rep.degree_sums_ok,
                "itineraries": rep.itineraries_ok, "shift": rep.shift_ok, "words_distinct": rep.words_distinct,
            },
            "itinerary_depth": rep.itinerary_depth,
            "itineraries_checked": rep.itineraries_checked,
            "levels": levels,
            "holds": rep.holds,
        }),
        table: None,
        holds: rep.holds,
    })
}

fn arc(p: &Params) -> Result<Outcome, Failure> {
    let f = PolynomialMap::from_json(p.desc, p.get("map")?)?;
    let y = Affinoid::from_json(p.desc, p.get("affinoid")?)?;
    let rep = fast_arc(&f, &y, &p.point("x0")?)?;
    let mut holds = rep.bound_holds && rep.image_increasing && rep.degrees_monotone;
    let mut result = json!({
        "arc": rep.arc.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "segment_degrees": rep.segment_degrees,
        "image_taus": rep.image_taus.iter().map(l).collect::<Vec<_>>(),
        "val_y": rep.val_y,
        "c": r(&rep.c),
        "skeleton_c": r(&rep.skeleton_c),
        "start_degree": rep.start_degree,
        "boundary_degree": rep.boundary_degree,
        "bound_holds": rep.bound_holds,
        "image_increasing": rep.image_increasing,
        "degrees_monotone": rep.degrees_monotone,
    });
    if p.has("samples") {
        let b = degree_bound_check(&f, &y, &p.points("samples")?)?;
        holds &= b.all_hold;
        result["degree_bound"] = json!({
            "boundary_max": b.boundary_max,
            "samples": b.samples.iter().map(|s| json!({"point": s.point.to_json(), "degree": s.degree, "c": r(&s.c), "holds": s.holds})).collect::<Vec<_>>(),
            "all_hold": b.all_hold,
        });
    }
    Ok(Outcome { result, table: None, holds })
}

fn degree_check(p: &Params, seed: u64, pool: &rayon::ThreadPool) -> Result<Outcome, Failure> {
    let f = PolynomialMap::from_json(p.desc, p.get("map")?)?;
    let domain = p.point("domain")?;
    let mut targets = if p.has("targets") { p.points("targets")? } else { Vec::new() };
    if p.has("random_targets") {
        let image = f.image_of_ball(&domain)?;
        let top = image.finite_tau().ok_or_else(|| Failure::config("domain must be a ball of finite radius"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..p.usize("random_targets")? {
            let z = rigid_sample(&domain, 1, &mut rng)?.pop().unwrap();
            let drop: i64 = rng.gen_range(0..4);
            targets.push(BerkovichPoint::ball(f.eval(&z), &top - Rational::from_integer(drop.into())));
        }
    }
    if targets.is_empty() {
        return Err(Failure::config("degree-check needs \"targets\" or \"random_targets\""));
    }
    let reports = pool.install(|| targets.par_iter().map(|t| degree_sum_check(&f, &domain, t)).collect::<Vec<_>>());
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
    let all_hold = reports.iter().all(|r| r.holds);
    let rows: Vec<Value> = reports
        .iter()
        .map(|rep| {
            json!({
                "target": rep.target.to_json(),
                "balls": rep.balls.iter().map(|b| json!({"ball": b.ball.to_json(), "local_degree": b.local_degree, "image_matches": b.image_matches})).collect::<Vec<_>>(),
                "sum": rep.sum,
                "domain_degree": rep.domain_degree,
                "holds": rep.holds,
            })
        })
        .collect();
    Ok(Outcome {
        result: json!({"domain": domain.to_json(), "targets": rows, "all_hold": all_hold}),
        table: None,
        holds: all_hold,
    })
}

fn classify(desc: FieldDescriptor, m: &serde_json::Map<String, Value>) -> Result<Outcome, Failure> {
    match m.get("kind").and_then(|k| k.as_str()) {
        Some("fixed-point") => {
            let p = Params::new(desc, m, &["kind", "map", "z0"])?;
            let f = PolynomialMap::from_json(desc, p.get("map")?)?;
            let c = classify_fixed_point(f.poly(), &p.elem("z0")?)?;
            Ok(Outcome {
                result: json!({"kind": "fixed-point", "class": c.kind, "multiplier_valuation": l(&c.multiplier_valuation), "normal": c.normal}),
                table: None,
                holds: true,
            })
        }
        Some("direction") => {
            let p = Params::new(desc, m, &["kind", "residue_map", "point"])?;
            let field = desc.residue_field();
            let obj = p
                .get("residue_map")?
                .as_object()
                .ok_or_else(|| Failure::config("\"residue_map\" must be an object"))?;
            let coeffs = |k: &str| -> Result<Poly<ResidueElem>, Failure> {
                let arr = obj
                    .get(k)
                    .and_then(|a| a.as_array())
                    .ok_or_else(|| Failure::config(format!("residue_map needs \"{k}\"")))?;
                let c = arr
                    .iter()
                    .map(|v| match parse_class(field, v)? {
                        DirectionClass::Residue(x) => Ok(x),
                        DirectionClass::Infinity => Err(Failure::config("coefficients must be finite")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Poly::new(c))
            };
            let den = if obj.contains_key("den") { coeffs("den")? } else { Poly::constant(field.one()) };
            let map = ResidueRationalMap::new(coeffs("num")?, den, field)?;
            let c = classify_direction(&map, &parse_class(field, p.get("point")?)?, OrbitBudget::default());
            Ok(Outcome {
                result: json!({
                    "kind": "direction",
                    "verdict": c.verdict,
                    "prefix": c.prefix.iter().map(class_json).collect::<Vec<_>>(),
                    "cycle": c.cycle.iter().map(class_json).collect::<Vec<_>>(),
                    "critical_on_cycle": c.critical_on_cycle.iter().map(class_json).collect::<Vec<_>>(),
                }),
                table: None,
                holds: true,
            })
        }
        _ => Err(Failure::config("classify needs \"kind\": \"fixed-point\" or \"direction\"")),
    }
}
