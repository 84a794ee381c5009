use mirrorci::hypergeom::{build_i, build_sprime, CISpec, EquivContext, Regime};
use mirrorci::locrec::{
    closed_form_z, initial_condition_boundary, initial_condition_boundary_closed, initial_condition_cy_closed,
    lines_count, polynomiality_check, solve_class_p, solve_recursion, transform_abc, Direction, InitialCondition,
};
use mirrorci::mirror::{mirror_map, normalize, verify_theorem_form, MirrorFrame};
use mirrorci::pfcheck::{closed_form_relation, pf_operator, quantum_top_pairing, relation_extract, verify_annihilation};
use mirrorci::{BigRational, Error, RatFuncH, Result, TruncSeries};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::report::{rational, series, Report};
use crate::RunArgs;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Genericity(_) => 3,
        Error::InvalidSpec(_) | Error::Unsupported(_) | Error::Domain(_) => 2,
        Error::NonInvertible | Error::Structure(_) => 1,
    }
}

pub fn run(name: &str, args: &RunArgs) -> Result<Report> {
    let spec = CISpec::new(args.ambient, args.degrees.clone())?;
    let spec_json = json!({
        "label": spec.to_string(),
        "ambient": spec.n(),
        "degrees": spec.degrees(),
        "regime": spec.regime().to_string(),
    });
    let mut report = Report::new(name, spec_json, args.order, args.seed);
    match name {
        "instantons" => instantons(&spec, args, &mut report)?,
        "pf-verify" => pf_verify(&spec, args, &mut report)?,
        "relation" => relation(&spec, &mut report)?,
        "recursion-verify" => recursion_verify(&spec, args, &mut report)?,
        "polynomiality" => polynomiality(&spec, args, &mut report)?,
        "lines" => lines(&spec, args, &mut report)?,
        "mirror-map" => mirror_map_cmd(&spec, args, &mut report)?,
        other => return Err(Error::InvalidSpec(format!("unknown command {other}"))),
    }
    Ok(report)
}

fn sample(spec: &CISpec, order: usize, args: &RunArgs, offset: u64) -> Result<EquivContext> {
    EquivContext::sample(spec, order, args.seed.wrapping_add(offset), args.trials as usize)
}

fn first_nonzero(s: &TruncSeries<RatFuncH>) -> Option<usize> {
    s.coeffs().iter().position(|c| !c.is_zero())
}

fn instantons(spec: &CISpec, args: &RunArgs, report: &mut Report) -> Result<()> {
    spec.require(Regime::CalabiYau)?;
    if spec.fiber_dim() != 3 {
        return Err(Error::Unsupported(format!("{spec} is not a threefold")));
    }
    if args.order == 0 {
        report.result("instantons", json!({}));
        return Ok(());
    }
    let frame = MirrorFrame::build(spec, args.order)?;
    let table = frame.instantons(spec)?;
    let k = frame.k.as_ref().expect("threefold frame has K");
    let counts: serde_json::Map<String, Value> = table.counts().iter().map(|(d, n)| (d.to_string(), rational(n))).collect();
    report.result("instantons", Value::Object(counts));
    report.result("yukawa", series(k));
    report.result("mirror_map", json!({ "delta": series(&frame.delta), "q_of_q": series(&frame.q_of_q) }));
    let residuals = verify_theorem_form(&table, &frame.normalized_j, k, spec, args.order)?;
    let detail = match residuals.first_failure() {
        None => "right-hand side and fourth-order equation hold exactly".to_string(),
        Some(d) => format!("first nonzero residual at Q^{d}"),
    };
    report.check("theorem_form", residuals.is_zero(), detail);
    report.check("integrality", table.all_integral(), "all n_d integral");
    let ctx = sample(spec, 1, args, 0)?;
    let lines = lines_count(spec, &ctx)?;
    let n1 = table.get(1).cloned().unwrap_or_default();
    report.check("lines_oracle", lines == n1, format!("lines_count = {lines}, n_1 = {n1}"));
    Ok(())
}

fn pf_verify(spec: &CISpec, args: &RunArgs, report: &mut Report) -> Result<()> {
    let op = pf_operator(spec)?;
    let s = build_i(spec, args.order)?;
    let res = verify_annihilation(&op, &s, args.order)?;
    report.result("operator", Value::String(op.to_string()));
    let first = res
        .components()
        .iter()
        .flat_map(|c| c.coeffs().iter())
        .filter_map(|s| s.coeffs().iter().position(|v| !v.is_zero()))
        .min();
    let detail = match first {
        None => format!("residual vanishes through q^{}", args.order),
        Some(d) => format!("nonzero residual at q^{d}"),
    };
    report.check("annihilation", res.is_zero(), detail);
    Ok(())
}

fn relation(spec: &CISpec, report: &mut Report) -> Result<()> {
    let rel = relation_extract(spec)?;
    let closed = closed_form_relation(spec)?;
    report.result("relation", Value::String(rel.display_relation()));
    report.check("closed_form", rel == closed, format!("closed form: {}", closed.display_relation()));
    if spec.fiber_dim() + 1 == spec.pf_order() {
        let top = quantum_top_pairing(spec, &rel)?;
        report.result("top_pairing", Value::String(top.to_string()));
    }
    Ok(())
}

fn recursion_verify(spec: &CISpec, args: &RunArgs, report: &mut Report) -> Result<()> {
    let order = args.order;
    let ctx = sample(spec, order, args, 0)?;
    report.result("lambda", Value::Array(ctx.lambda().iter().map(rational).collect()));
    report.result("lambda_prime", Value::Array(ctx.lambda_prime().iter().map(rational).collect()));
    let closed = closed_form_z(spec, &ctx, order)?;
    match spec.regime() {
        Regime::Fano => {
            let solved = solve_recursion(spec, &ctx, &InitialCondition::trivial(), order)?;
            report.check("recursion_equals_closed_form", solved == closed, "trivial initial condition");
        }
        Regime::Boundary => {
            let solved = solve_recursion(spec, &ctx, &initial_condition_boundary_closed(spec, &ctx, order)?, order)?;
            report.check("recursion_equals_closed_form", solved == closed, "exponential initial condition");
            let corrected = solve_recursion(spec, &ctx, &initial_condition_boundary(spec, &ctx, order)?, order)?;
            let sprime = build_sprime(spec, &ctx, order)?;
            let ok = corrected.per_point().iter().zip(&sprime).all(|(a, b)| a == b.coeffs());
            report.check("boundary_correction", ok, "closed form times exp(-l_1!...l_r! Q)");
        }
        Regime::CalabiYau => {
            let solved = solve_recursion(spec, &ctx, &initial_condition_cy_closed(spec, &ctx, order)?, order)?;
            report.check("recursion_equals_closed_form", solved == closed, "closed-form initial condition");
            let p = solve_class_p(spec, &ctx, order)?;
            let fwd = transform_abc(&p, spec, &ctx, order, Direction::Forward)?;
            let mismatch = fwd.per_point().iter().zip(closed.per_point()).filter_map(|(a, b)| first_nonzero(&a.sub(b))).min();
            let detail = match mismatch {
                None => format!("transformed solution equals the hypergeometric one through q^{order}"),
                Some(d) => format!("first mismatch at q^{d}"),
            };
            report.check("transformations", mismatch.is_none(), detail);
            let back = transform_abc(&closed, spec, &ctx, order, Direction::Inverse)?;
            let asymptotic = back.per_point().iter().all(|s| {
                s.coeffs()[1..]
                    .iter()
                    .all(|c| c.expand_at_infinity(2).is_some_and(|v| v.iter().all(Zero::is_zero)))
            });
            report.check("inverse_asymptotics", asymptotic, "inverse transform is 1 + 0/ħ + O(1/ħ^2)");
        }
    }
    Ok(())
}

fn polynomiality(spec: &CISpec, args: &RunArgs, report: &mut Report) -> Result<()> {
    let ctx = sample(spec, args.order, args, 0)?;
    let z = closed_form_z(spec, &ctx, args.order)?;
    let rep = polynomiality_check(spec, &ctx, &z, args.order)?;
    let degrees: Vec<Value> = rep
        .orders
        .iter()
        .map(|c| json!({ "order": c.order, "degree_in_p": c.e.as_ref().map(|e| e.len().saturating_sub(1)) }))
        .collect();
    report.result("e_d", Value::Array(degrees));
    for c in &rep.orders {
        let detail = format!(
            "parts polynomial: {}, interpolation conditions: {}, reconstruction consistent: {}, degree bound: {}",
            c.parts_polynomial,
            c.conditions_hold,
            c.e.is_some(),
            c.degree_ok
        );
        report.check(&format!("polynomial_D{}", c.order), c.passed(), detail);
    }
    Ok(())
}

fn lines(spec: &CISpec, args: &RunArgs, report: &mut Report) -> Result<()> {
    let values = (0..3)
        .map(|k| sample(spec, 1, args, k).and_then(|ctx| lines_count(spec, &ctx)))
        .collect::<Result<Vec<_>>>()?;
    report.result("lines", rational(&values[0]));
    report.check("seed_independent", values.iter().all(|v| v == &values[0]), "three weight samples agree");
    report.check("integral", values[0].is_integer(), values[0].to_string());
    Ok(())
}

fn mirror_map_cmd(spec: &CISpec, args: &RunArgs, report: &mut Report) -> Result<()> {
    spec.require(Regime::CalabiYau)?;
    let order = args.order.max(1);
    let j = normalize(spec, &build_i(spec, order)?)?;
    let (delta, q_of_q) = mirror_map(&j)?;
    report.result("delta", series(&delta));
    report.result("q_of_q", series(&q_of_q));
    let big_q = TruncSeries::var(&BigRational::one(), order).mul(&delta.exp()?);
    let id = TruncSeries::var(&BigRational::one(), order);
    report.check("round_trip", big_q.compose(&q_of_q)? == id && q_of_q.compose(&big_q)? == id, "Q(q(Q)) = Q and q(Q(q)) = q");
    Ok(())
}
