use std::fs;
use std::path::Path;

use log::{debug, info};
use quasimod::completeness::{
    classify_cauchy, converges_to, greedy_net, heine_borel_report, lp_tail_criterion, lp_two_eps_net, split_radius,
    two_sided_cells,
};
use quasimod::envelopes::{lipschitz_violation, lower_envelope, upper_envelope};
use quasimod::gauge::{check_axioms, convexity_check, enriched_triangle_check, make_tabulated};
use quasimod::graph::{
    asymmetry_index, backward_distance_table, backward_energy, energy_luxemburg, forward_distance_table,
    forward_energy, graph_gauge,
};
use quasimod::io::{self, LoadedGauge};
use quasimod::luxemburg::{luxemburg_table, quasi_pseudometric_check_with_slack};
use quasimod::orlicz::{
    luxemburg_norm, modular, one_sided_gauges, one_sided_modulars, quasi_metric_from_gauges, unit_ball_check,
};
use quasimod::topology::{critical_thresholds, quasi_uniformity_report, verify_join_equality};
use quasimod::{
    Axiom, DistanceTable, EdgeOrliczFamily, Error, ExtValue, Gauge, Grid, LuxemburgOptions, Regime, Result, Side,
    TConorm,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::{Cli, Command, Common};

/// Runs the selected command; `Ok(false)` means violations were found.
pub fn run(cli: &Cli) -> Result<bool> {
    let c = &cli.common;
    if c.tol <= 0.0 || !c.tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "--tol must be positive, got {}",
            c.tol
        )));
    }
    let input = c
        .input
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("--input is required".into()))?;
    info!("loading {}", input.display());
    let doc = io::read_json(input)?;
    let (name, (passed, body)) = match &cli.command {
        Command::CheckAxioms {
            convexity,
            enriched,
            corruptions,
        } => ("check-axioms", check(c, &doc, *convexity, *enriched, *corruptions)?),
        Command::Topology => ("topology", topology(c, &doc)?),
        Command::Cover {
            radius,
            scale,
            limit,
            eps,
        } => (
            "cover",
            cover(c, &doc, input.parent(), *radius, *scale, limit.as_deref(), *eps)?,
        ),
        Command::Luxemburg { threshold } => ("luxemburg", luxemburg(c, &doc, *threshold)?),
        Command::Graph {
            schedule,
            time,
            function,
            power,
        } => (
            "graph",
            graph(c, &doc, schedule.as_deref(), *time, function.as_deref(), *power)?,
        ),
        Command::Orlicz => ("orlicz", orlicz(c, &doc)?),
        Command::Envelope => ("envelope", envelope(c, &doc)?),
    };
    emit(c, name, passed, body)?;
    Ok(passed)
}

fn emit(c: &Common, name: &str, passed: bool, body: Map<String, Value>) -> Result<()> {
    let mut report = Map::new();
    report.insert("command".into(), json!(name));
    report.insert("seed".into(), json!(c.seed));
    report.insert("tol".into(), json!(c.tol));
    report.insert("passed".into(), json!(passed));
    report.extend(body);
    let text = io::to_pretty(&Value::Object(report));
    match &c.output {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write_csv(c: &Common, labels: &[String], d: &DistanceTable<f64>) -> Result<()> {
    if let Some(path) = &c.csv {
        write(path, &io::table_csv(labels, d))?;
    }
    Ok(())
}

fn to_json<S: serde::Serialize>(v: &S) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn table_json(d: &DistanceTable<f64>) -> Value {
    Value::Array(
        d.rows()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(io::ext_json).collect()))
            .collect(),
    )
}

/// The document's gauge, with `--grid` and `--conorm` applied.
fn load_gauge(c: &Common, doc: &Value) -> Result<(Gauge, Grid)> {
    let LoadedGauge { gauge, grid } = io::gauge_from_value::<f64>(doc)?;
    let grid = match &c.grid {
        Some(scales) => Grid::new(scales.clone())?,
        None => grid.ok_or_else(|| Error::InvalidParameter("no grid in the document; pass --grid".into()))?,
    };
    let Some(conorm) = c.conorm else {
        return Ok((gauge, grid));
    };
    if gauge.regime().is_additive() {
        return Err(Error::InvalidParameter(
            "--conorm applies to conorm-regime gauges only".into(),
        ));
    }
    let n = gauge.len();
    let mut values = Vec::with_capacity(n * n * grid.len());
    for x in 0..n {
        for y in 0..n {
            for &t in grid.scales() {
                values.push(gauge.evaluate(x, y, t)?);
            }
        }
    }
    let conorm: TConorm = conorm.into();
    debug!("re-tabulating with conorm {}", conorm.name());
    let relabeled =
        make_tabulated(Regime::Conorm(conorm), grid.clone(), n, values)?.with_labels(gauge.labels().to_vec())?;
    Ok((relabeled, grid))
}

fn base_body(g: &Gauge, grid: &Grid) -> Map<String, Value> {
    let mut body = Map::new();
    body.insert("points".into(), json!(g.labels()));
    body.insert("grid".into(), json!(grid.scales()));
    body.insert(
        "regime".into(),
        json!(match g.regime() {
            Regime::Additive => "additive".to_string(),
            Regime::Conorm(c) => format!("conorm:{}", c.name()),
        }),
    );
    body.insert("warnings".into(), json!(g.warnings()));
    body
}

fn check(
    c: &Common,
    doc: &Value,
    convexity: bool,
    enriched: bool,
    corruptions: usize,
) -> Result<(bool, Map<String, Value>)> {
    let (g, grid) = load_gauge(c, doc)?;
    let points = g.all_points();
    let mut report = check_axioms(&g, &points, &grid)?;
    if convexity {
        report.merge(convexity_check(&g, &points, &grid)?);
    }
    if enriched {
        report.merge(enriched_triangle_check(&g, &points, &grid)?);
    }
    report.sort();
    let mut passed = report.is_clean();
    let mut body = base_body(&g, &grid);
    body.insert("checked".into(), to_json(&report.checked));
    body.insert("violations".into(), to_json(&report.violations));
    if corruptions > 0 {
        let (all_detected, trials) = corruption_suite(&g, &grid, corruptions, c.seed)?;
        passed &= all_detected;
        body.insert("corruption_trials".into(), trials);
    }
    Ok((passed, body))
}

/// Raises one off-diagonal entry above its predecessor scale and checks that
/// the monotonicity sweep reports exactly that pair.
fn corruption_suite(g: &Gauge, grid: &Grid, trials: usize, seed: u64) -> Result<(bool, Value)> {
    let n = g.len();
    let m = grid.len();
    let scales = grid.scales();
    let mut values = Vec::with_capacity(n * n * m);
    for x in 0..n {
        for y in 0..n {
            for &t in scales {
                values.push(g.evaluate(x, y, t)?);
            }
        }
    }
    let additive = g.regime().is_additive();
    let bumped = |prev: f64| -> Option<f64> {
        let v = if additive { prev + 1.0 } else { (prev + 1.0) / 2.0 };
        (v.is_finite() && v > prev && (additive || v < 1.0)).then_some(v)
    };
    let mut candidates = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for k in 1..m {
                if x != y && bumped(values[(x * n + y) * m + k - 1].get()).is_some() {
                    candidates.push((x, y, k));
                }
            }
        }
    }
    let mono = if additive { Axiom::QM3 } else { Axiom::W4 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut all = true;
    for _ in 0..trials {
        let Some(&(x, y, k)) = candidates.choose(&mut rng) else {
            break;
        };
        let mut corrupted = values.clone();
        let prev = corrupted[(x * n + y) * m + k - 1].get();
        corrupted[(x * n + y) * m + k] = ExtValue::new(bumped(prev).expect("candidate"))?;
        let cg = make_tabulated(g.regime(), grid.clone(), n, corrupted)?;
        let report = check_axioms(&cg, &cg.all_points(), grid)?;
        let detected = report
            .violations_of(mono)
            .any(|v| v.points == [x, y] && v.params == [scales[k - 1], scales[k]]);
        all &= detected;
        out.push(json!({"x": x, "y": y, "scale_index": k, "detected": detected}));
    }
    if candidates.is_empty() {
        info!("no entry admits a corruption");
    }
    Ok((all, Value::Array(out)))
}

fn topology(c: &Common, doc: &Value) -> Result<(bool, Map<String, Value>)> {
    let (g, grid) = load_gauge(c, doc)?;
    let points = g.all_points();
    let join = verify_join_equality(&g, &points, &grid)?;
    let qu = quasi_uniformity_report(&g, &points, &grid)?;
    let thresholds = critical_thresholds(&g, &points, &grid)?;
    let mut body = base_body(&g, &grid);
    let passed = join.join_equals_sym && qu.is_clean();
    if let Value::Object(m) = to_json(&join) {
        body.extend(m);
    }
    body.insert("thresholds".into(), to_json(&thresholds));
    body.insert("quasi_uniformity".into(), to_json(&qu));
    Ok((passed, body))
}

fn cover(
    c: &Common,
    doc: &Value,
    base: Option<&Path>,
    radius: Option<f64>,
    scale: Option<f64>,
    limit: Option<&str>,
    eps: f64,
) -> Result<(bool, Map<String, Value>)> {
    let mut body = Map::new();
    if doc.get("members").is_some() {
        let fam = io::family_from_value::<f64>(doc)?;
        let rep = lp_tail_criterion(&fam, eps)?;
        let mut passed = rep.totally_bounded_verdict;
        body.insert("eps".into(), json!(eps));
        body.insert("tail".into(), to_json(&rep));
        if let (true, Some(n)) = (rep.totally_bounded_verdict, rep.tail_index) {
            let net = lp_two_eps_net(&fam, eps, n)?;
            passed &= net.verified;
            body.insert("net".into(), to_json(&net));
        }
        return Ok((passed, body));
    }
    let need =
        |v: Option<f64>, flag: &str| v.ok_or_else(|| Error::InvalidParameter(format!("{flag} is required here")));
    if doc.get("sequence").is_some() {
        let (loaded, seq) = io::sequence_from_value::<f64>(doc, base)?;
        let g = loaded.gauge;
        let (r, t) = (need(radius, "--radius")?, need(scale, "--scale")?);
        let class = classify_cauchy(&seq, &g, r, t)?;
        body.insert("points".into(), json!(g.labels()));
        body.insert("cauchy".into(), to_json(&class));
        let mut passed = true;
        if let Some(label) = limit {
            let x = g.point_index(label)?;
            let conv = converges_to(&seq, &g, x, r, t, c.side.into())?;
            passed = conv.converges;
            body.insert("convergence".into(), to_json(&conv));
        }
        return Ok((passed, body));
    }
    let (g, grid) = load_gauge(c, doc)?;
    let points = g.all_points();
    let mut body = base_body(&g, &grid);
    match (radius, scale) {
        (None, None) => {
            let rep = heine_borel_report(&g, &points, &grid)?;
            body.insert("covers".into(), to_json(&rep));
            Ok((rep.all_verified, body))
        }
        (r, t) => {
            let (r, t) = (need(r, "--radius")?, need(t, "--scale")?);
            let net = greedy_net(&points, &g, r, t, c.side.into())?;
            let s = split_radius(&g, r);
            let half = t / 2.0;
            let fwd = greedy_net(&points, &g, s, half, Side::Forward)?;
            let bwd = greedy_net(&points, &g, s, half, Side::Backward)?;
            let cells = two_sided_cells(&g, &fwd, &bwd, r, t)?;
            let passed = net.verified && cells.failures.is_empty();
            body.insert("net".into(), to_json(&net));
            body.insert("cells".into(), to_json(&cells));
            Ok((passed, body))
        }
    }
}

fn luxemburg(c: &Common, doc: &Value, threshold: f64) -> Result<(bool, Map<String, Value>)> {
    let LoadedGauge { gauge: g, .. } = io::gauge_from_value::<f64>(doc)?;
    let opts = LuxemburgOptions {
        threshold,
        tol: c.tol,
        ..LuxemburgOptions::default()
    };
    let d = luxemburg_table(&g, &opts)?;
    let n = g.len();
    let sym = DistanceTable::from_fn(n, |x, y| d.get(x, y).max(d.get(y, x)));
    let report = quasi_pseudometric_check_with_slack(&d, &g.all_points(), 2.0 * c.tol);
    write_csv(c, g.labels(), &d)?;
    let mut body = Map::new();
    body.insert("points".into(), json!(g.labels()));
    body.insert("threshold".into(), json!(threshold));
    body.insert("distances".into(), table_json(&d));
    body.insert("symmetrized".into(), table_json(&sym));
    body.insert("quasi_pseudometric".into(), to_json(&report));
    Ok((report.is_clean(), body))
}

fn graph(
    c: &Common,
    doc: &Value,
    schedule: Option<&Path>,
    time: f64,
    function: Option<&Path>,
    power: f64,
) -> Result<(bool, Map<String, Value>)> {
    let g = io::graph_from_value::<f64>(doc)?;
    let labels = g.vertices().to_vec();
    let mut body = Map::new();
    body.insert("vertices".into(), json!(labels));
    let costs = match schedule {
        Some(path) => {
            let s = io::schedule_from_value(&io::read_json(path)?, &g)?;
            let snap = s.snapshot(time);
            body.insert(
                "schedule".into(),
                json!({"requested": time, "time": snap.time, "clamped": snap.clamped}),
            );
            snap.costs
        }
        None => g.costs(),
    };
    let fwd = forward_distance_table(&g, &costs)?;
    let bwd = backward_distance_table(&g, &costs)?;
    write_csv(c, &labels, &fwd)?;
    body.insert("forward".into(), table_json(&fwd));
    body.insert("backward".into(), table_json(&bwd));
    body.insert("asymmetry_index".into(), json!(asymmetry_index(&g, &costs)?));
    let mut passed = true;
    if let Some(scales) = &c.grid {
        let grid = Grid::new(scales.clone())?;
        let w = graph_gauge(&g, &costs)?;
        let report = check_axioms(&w, &w.all_points(), &grid)?;
        passed &= report.is_clean();
        body.insert("gauge_axioms".into(), to_json(&report));
    }
    if let Some(path) = function {
        let f = io::function_from_value::<f64>(&io::read_json(path)?, &labels)?;
        let phi = EdgeOrliczFamily::power(power)?;
        let opts = LuxemburgOptions::with_tol(c.tol);
        body.insert(
            "energy".into(),
            json!({
                "power": power,
                "forward": to_json(&forward_energy(&g, &f, &phi)?),
                "backward": to_json(&backward_energy(&g, &f, &phi)?),
                "luxemburg": to_json(&energy_luxemburg(&g, &f, &phi, &opts)?),
            }),
        );
    }
    Ok((passed, body))
}

fn orlicz(c: &Common, doc: &Value) -> Result<(bool, Map<String, Value>)> {
    let field = |k: &str| doc.get(k).ok_or_else(|| Error::MissingValue(k.into()));
    let space = io::space_from_value::<f64>(field("space")?)?;
    let labels = space.points().to_vec();
    let f = io::function_from_value::<f64>(field("function")?, &labels)?;
    let opts = LuxemburgOptions::with_tol(c.tol);
    let mut body = Map::new();
    body.insert("points".into(), json!(labels));
    let mut passed = true;
    let mut any = false;
    if let Some(phi) = doc.get("phi") {
        any = true;
        let phi = io::orlicz_from_value(phi, &space)?;
        let rho = modular(&space, &phi, &f)?;
        let norm = luxemburg_norm(&space, &phi, &f, &opts)?;
        let unit = unit_ball_check(&space, &phi, &f, &opts)?;
        passed &= unit.holds();
        body.insert("modular".into(), to_json(&rho));
        body.insert("norm".into(), to_json(&norm));
        body.insert("unit_ball".into(), to_json(&unit));
    }
    if doc.get("psi1").is_some() || doc.get("psi2").is_some() {
        any = true;
        let pair = io::one_sided_pair_from_value(doc, &space)?;
        let (rp, rm) = one_sided_modulars(&space, &pair, &f)?;
        let norms = one_sided_gauges(&space, &pair, &f, &opts)?;
        body.insert(
            "one_sided_modulars".into(),
            json!({"plus": to_json(&rp), "minus": to_json(&rm)}),
        );
        body.insert("one_sided_norms".into(), to_json(&norms));
        if let Some(gv) = doc.get("g") {
            let g = io::function_from_value::<f64>(gv, &labels)?;
            let (fg_plus, fg_minus) = quasi_metric_from_gauges(&space, &pair, &f, &g, &opts)?;
            let (gf_plus, gf_minus) = quasi_metric_from_gauges(&space, &pair, &g, &f, &opts)?;
            body.insert(
                "quasi_metric".into(),
                json!({
                    "f_to_g": {"plus": to_json(&fg_plus), "minus": to_json(&fg_minus)},
                    "g_to_f": {"plus": to_json(&gf_plus), "minus": to_json(&gf_minus)},
                }),
            );
        }
    }
    if !any {
        return Err(Error::MissingValue("phi or psi1/psi2".into()));
    }
    Ok((passed, body))
}

fn envelope(_c: &Common, doc: &Value) -> Result<(bool, Map<String, Value>)> {
    let (labels, d, f) = io::envelope_problem_from_value::<f64>(doc)?;
    let points: Vec<usize> = (0..labels.len()).collect();
    let upper = upper_envelope(&f, &d, &points)?;
    let lower = lower_envelope(&f, &d, &points)?;
    let l = f.lipschitz();
    let upper_violation = lipschitz_violation(&upper, &d, l, &points);
    let lower_violation = lipschitz_violation(&lower, &d, l, &points);
    let upper_compat = f.upper_compatibility(&d);
    let lower_compat = f.lower_compatibility(&d);
    let ordered = points.iter().all(|&x| match (upper[x], lower[x]) {
        (Some(u), Some(lo)) => u >= lo,
        _ => true,
    });
    let agrees = |e: &[Option<f64>]| f.domain().iter().zip(f.values()).all(|(&a, &v)| e[a] == Some(v));
    let passed =
        upper_violation.is_none() && lower_violation.is_none() && upper_compat.is_none() && lower_compat.is_none();
    let pair = |p: Option<(usize, usize)>| p.map(|(a, b)| json!([labels[a], labels[b]]));
    let mut body = Map::new();
    body.insert("points".into(), json!(labels));
    body.insert("lipschitz".into(), json!(l));
    body.insert("upper".into(), io::function_to_value(&labels, &upper));
    body.insert("lower".into(), io::function_to_value(&labels, &lower));
    body.insert("upper_lipschitz_violation".into(), json!(pair(upper_violation)));
    body.insert("lower_lipschitz_violation".into(), json!(pair(lower_violation)));
    body.insert("upper_compatibility_violation".into(), json!(pair(upper_compat)));
    body.insert("lower_compatibility_violation".into(), json!(pair(lower_compat)));
    body.insert("upper_at_least_lower".into(), json!(ordered));
    body.insert("upper_agrees_on_domain".into(), json!(agrees(&upper)));
    body.insert("lower_agrees_on_domain".into(), json!(agrees(&lower)));
    Ok((passed, body))
}
