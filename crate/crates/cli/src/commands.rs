use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use associator::{
    check_axioms, interpolate, pexp_word_coefficient, pin_lambda, Associator, Origin, TauFamily,
};
use confint::{
    at_one_vertex_coefficient, propagator_diagonal_expansion, tetra_prefactor, tetra_scaling,
    tetra_type1_fundamental_domain, tetra_type1_halves, tetra_weight_from, QuadratureSpec,
    WeightResult, TETRA_SYMMETRY_FACTOR,
};
use graphcx::{
    builtin, differential, divergence, gc_bracket, grt_check, phi_map, pi_project, psi_map, Graph,
    GraphLinComb,
};
use kz::{anti_kz, mzv, phi_kz, MzvIndex};
use ncalg::LieSeries;
use scalars::{q, rational_to_f64, Complex64, Rational, Scalar};
use serde_json::{json, Value};

use crate::error::compute;
use crate::{Check, CliError, Command, GcAction, JobConfig, Report};

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn zeta3() -> f64 {
    mzv(&MzvIndex::new(vec![3]).expect("admissible"), 1e-15).value
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Accepts a bare object or a report whose `artifact` holds it.
fn unwrap_artifact(v: Value) -> Value {
    match v.get("artifact") {
        Some(a) if !a.is_null() => a.clone(),
        _ => v,
    }
}

// ---------- KZ associator and its cache ----------

/// Cache file for `Φ_KZ` keyed by `(N, M, tol)`.
pub fn kz_cache_path(cfg: &JobConfig) -> PathBuf {
    cfg.cache_dir.join(format!(
        "phi_kz_n{}_m{}_tol{:e}.json",
        cfg.order,
        cfg.series_order,
        kz_tol(cfg)
    ))
}

fn kz_tol(cfg: &JobConfig) -> f64 {
    if cfg.tol > 0.0 {
        cfg.tol
    } else {
        1e-9
    }
}

/// Loads `Φ_KZ` from the cache or computes and stores it. Returns the
/// associator and whether it came from the cache.
pub fn load_or_compute_kz(cfg: &JobConfig) -> Result<(Associator<Complex64>, bool), CliError> {
    let path = kz_cache_path(cfg);
    let tol = kz_tol(cfg);
    if path.exists() {
        let v = read_json(&path)?;
        let phi = Associator::from_json(&v, tol)
            .map_err(|e| CliError::Io(format!("corrupt cache entry {}: {e}", path.display())))?;
        return Ok((phi.with_origin(Origin::Kz), true));
    }
    let computed = phi_kz(cfg.order, cfg.series_order, tol).map_err(compute)?;
    let phi = Associator::new(computed.series, Origin::Kz, tol).map_err(compute)?;
    fs::create_dir_all(&cfg.cache_dir)
        .map_err(|e| CliError::Io(format!("cache directory {}: {e}", cfg.cache_dir.display())))?;
    let text = serde_json::to_string(&phi.to_json()).expect("serializable");
    fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok((phi, false))
}

fn axiom_checks(
    report: &mut Report,
    phi: &Associator<Complex64>,
    tol: f64,
) -> Result<(), CliError> {
    let ax = check_axioms(phi, tol).map_err(compute)?;
    report
        .check(Check::residual(
            "pentagon",
            "pentagon equation in T_4",
            ax.pentagon,
            tol,
        ))
        .check(Check::residual(
            "hexagon",
            "hexagon equation in T_3",
            ax.hexagon,
            tol,
        ))
        .check(Check::residual(
            "duality",
            "Φ(X,Y) Φ(Y,X) = 1",
            ax.duality,
            tol,
        ))
        .check(Check::residual(
            "grouplike",
            "shuffle group-likeness",
            ax.grouplike,
            tol,
        ));
    Ok(())
}

pub fn run_kz(cfg: &JobConfig) -> Result<Report, CliError> {
    let mut report = Report::new("kz");
    let (phi, cached) = load_or_compute_kz(cfg)?;
    report
        .value("order", cfg.order)
        .value("series_order", cfg.series_order)
        .value("cached", cached)
        .value("cache_file", kz_cache_path(cfg).display().to_string());
    if cfg.order >= 2 {
        report.value("coeff_XY", cjson(phi.series().coeff(&[1, 2])));
    }
    axiom_checks(&mut report, &phi, cfg.tol)?;
    report.artifact = Some(phi.to_json());
    Ok(report)
}

pub fn run_check(cfg: &JobConfig) -> Result<Report, CliError> {
    let mut report = Report::new("check");
    let phi = match &cfg.input {
        Some(p) => {
            let v = unwrap_artifact(read_json(p)?);
            Associator::from_json(&v, cfg.tol)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
        }
        None => load_or_compute_kz(cfg)?.0,
    };
    report
        .value("order", phi.order())
        .value("origin", phi.origin().label());
    axiom_checks(&mut report, &phi, cfg.tol)?;
    Ok(report)
}

// ---------- interpolation ----------

/// `[X,[X,Y]] − [[X,Y],Y]`.
fn psi3(n: usize) -> Result<LieSeries<Complex64>, CliError> {
    let mut psi = LieSeries::zero(2, n);
    psi.set_coeff(&[1, 1, 2], Complex64::one())
        .map_err(compute)?;
    psi.set_coeff(&[1, 2, 2], -Complex64::one())
        .map_err(compute)?;
    Ok(psi)
}

fn degree_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn run_interp(cfg: &JobConfig) -> Result<Report, CliError> {
    let mut report = Report::new("interp");
    if cfg.order < 3 {
        return Err(CliError::Input("interpolation needs --order >= 3".into()));
    }
    let phi = match &cfg.input {
        Some(p) => {
            let v = unwrap_artifact(read_json(p)?);
            let a = Associator::<Complex64>::from_json(&v, cfg.tol)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            if a.order() != cfg.order {
                return Err(CliError::Input(format!(
                    "input has order {} but --order is {}",
                    a.order(),
                    cfg.order
                )));
            }
            a
        }
        None => load_or_compute_kz(cfg)?.0,
    };
    let n = cfg.order;
    let target = anti_kz(phi.series());
    let psi = psi3(n)?;
    let pin = pin_lambda(&phi, &psi, &target, cfg.tol).map_err(compute)?;
    let fam = TauFamily::empty()
        .with(3, psi.scale(&pin.lambda))
        .map_err(compute)?;
    let zero = q(0, 1);
    let phi_t = interpolate(&phi, &zero, &cfg.t, &fam, cfg.tol).map_err(compute)?;

    report
        .value("order", n)
        .value("t", cfg.t_text.clone())
        .value("lambda", cjson(pin.lambda))
        .value(
            "lambda_over_zeta3_pi3",
            (pin.lambda.im * PI.powi(3) / zeta3()).to_string(),
        );
    report.check(Check::residual(
        "pin_degree3",
        "Φ^1 = Φ_KZ(−X,−Y) in degree 3 fixes λ",
        pin.degree3_residual,
        1e-10,
    ));
    let t = &cfg.t;
    if *t == q(0, 1) {
        let d = phi_t.series().sub(phi.series()).max_abs();
        report.check(Check::residual("identity_at_0", "Φ^0 = Φ_KZ", d, 1e-12));
    }
    if *t == q(1, 1) && n >= 4 {
        let r4 = degree_residual(phi_t.series().degree_slice(4), target.degree_slice(4));
        report.value("degree4_residual", r4);
        report.check(Check::residual(
            "anti_kz_degree4",
            "degree-4 coefficients of Φ^1 equal those of Φ_KZ(−X,−Y)",
            r4,
            cfg.tol,
        ));
    }
    let ax = check_axioms(&phi_t, cfg.tol).map_err(compute)?;
    report.check(Check::residual(
        "axioms",
        "Φ^t is an associator (max residual)",
        ax.max(),
        cfg.tol.max(1e-9),
    ));
    report.artifact = Some(
        phi_t
            .with_origin(Origin::Interpolated(rational_to_f64(t)))
            .to_json(),
    );
    Ok(report)
}

// ---------- exact coefficients ----------

fn rational_pair(r: &Rational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

pub fn run_etingof(_cfg: &JobConfig) -> Result<Report, CliError> {
    let mut report = Report::new("etingof");
    let c_a = pexp_word_coefficient(&[3, 5], &q(0, 1), &q(1, 2));
    let c_b = pexp_word_coefficient(&[3, 5], &q(1, 2), &q(1, 1));
    let differ = c_a != c_b;
    report
        .value("c_a", c_a.to_string())
        .value("c_b", c_b.to_string())
        .value(
            "verdict",
            if differ {
                "strong form fails (c_a != c_b)"
            } else {
                "c_a = c_b"
            },
        );
    report.check(Check::flag(
        "c_a_ne_c_b",
        "coefficients of σ3σ5 on [0,1/2] and [1/2,1] differ",
        differ,
    ));
    report.artifact =
        Some(json!({ "c_a": rational_pair(&c_a), "c_b": rational_pair(&c_b), "differ": differ }));
    Ok(report)
}

// ---------- graph complex ----------

fn load_operand(name: &str) -> Result<GraphLinComb, CliError> {
    if let Ok(g) = builtin(name) {
        return Ok(GraphLinComb::from_graph(&g));
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "{name:?} is neither a built-in graph nor a file"
        )));
    }
    operand_from_json(&unwrap_artifact(read_json(path)?))
}

fn operand_from_json(v: &Value) -> Result<GraphLinComb, CliError> {
    let bad = |e: graphcx::GcError| CliError::Input(e.to_string());
    if v.get("terms").is_some() {
        GraphLinComb::from_json(v).map_err(bad)
    } else {
        Ok(GraphLinComb::from_graph(&Graph::from_json(v).map_err(bad)?))
    }
}

pub fn run_gc(
    cfg: &JobConfig,
    action: GcAction,
    graph: Option<&str>,
    with: Option<&str>,
) -> Result<Report, CliError> {
    let x = match (graph.or(cfg.graph.as_deref()), &cfg.input) {
        (Some(name), _) => load_operand(name)?,
        (None, Some(p)) => operand_from_json(&unwrap_artifact(read_json(p)?))?,
        (None, None) => {
            return Err(CliError::Input(
                "gc needs a graph (name, --graph or --in)".into(),
            ))
        }
    };
    let label = graph
        .or(cfg.graph.as_deref())
        .map(str::to_string)
        .unwrap_or_else(|| "input".into());
    let mut report = Report::new(&format!("gc {action:?}").to_lowercase());
    report.value("graph", label).value("terms", x.len());
    match action {
        GcAction::Delta => {
            let d = differential(&x);
            report
                .value("result_terms", d.len())
                .value("closed", d.is_zero());
            report.artifact = Some(d.to_json());
        }
        GcAction::Cocycle => {
            let d = differential(&x);
            report.value("closed", d.is_zero());
            report.check(Check::flag("closed", "δγ = 0", d.is_zero()));
            report.artifact = Some(d.to_json());
        }
        GcAction::Divergence => {
            let d = divergence(&x);
            report
                .value("result_terms", d.len())
                .value("zero", d.is_zero());
            report.artifact = Some(d.to_json());
        }
        GcAction::Bracket => {
            let other = with.ok_or_else(|| CliError::Input("bracket needs --with GRAPH".into()))?;
            let y = load_operand(other)?;
            let b = gc_bracket(&x, &y);
            report.value("with", other).value("result_terms", b.len());
            report.artifact = Some(b.to_json());
        }
        GcAction::Psi => {
            let p = psi_map(&x);
            report.value("result_terms", p.len());
            report.artifact = Some(p.to_json());
        }
        GcAction::Phi => {
            let psi = phi_map(&x).map_err(compute)?;
            let res = grt_check(&psi).map_err(compute)?;
            let order = x
                .terms()
                .map(|(g, _)| g.vertices().saturating_sub(1))
                .max()
                .unwrap_or(1)
                .max(1);
            let sder = pi_project(&psi_map(&x), order);
            if let Some(c) = psi.coeff(&[1, 1, 2]) {
                report.value("coeff_XXY", c.to_string());
            }
            report
                .check(Check::residual(
                    "antisymmetry",
                    "ψ(X,Y) + ψ(Y,X) = 0",
                    res.anti,
                    0.0,
                ))
                .check(Check::residual(
                    "hexagon",
                    "ψ(X,Y) + ψ(Y,Z) + ψ(Z,X) = 0 with X+Y+Z = 0",
                    res.hexa,
                    0.0,
                ))
                .check(Check::residual(
                    "pentagon",
                    "five-term relation in tder_4",
                    res.penta,
                    0.0,
                ));
            report.artifact = Some(json!({ "grt": psi.to_json(), "sder": sder.to_json() }));
        }
    }
    Ok(report)
}

// ---------- configuration-space integrals ----------

fn quad_spec(cfg: &JobConfig) -> QuadratureSpec {
    let spec = QuadratureSpec::with_tol(cfg.tol);
    match cfg.budget {
        Some(b) => spec.with_budget(b),
        None => spec,
    }
}

fn weight_json(w: &WeightResult) -> Value {
    w.to_json()
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    let scale = b.norm();
    if scale == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / scale
    }
}

/// `(log|1 − z|)/z + (log|z|)/(1 − z)`.
fn at_shape(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (one - z).norm().ln() / z + z.norm().ln() / (one - z)
}

pub fn run_weights(cfg: &JobConfig, target: &str, z: Option<&str>) -> Result<Report, CliError> {
    let target = match (target, cfg.graph.as_deref()) {
        ("tetrahedron", Some(g)) => g,
        (t, _) => t,
    };
    let t = rational_to_f64(&cfg.t);
    let spec = quad_spec(cfg);
    let mut report = Report::new(&format!("weights {target}"));
    report.value("t", cfg.t_text.clone()).value("tol", cfg.tol);
    match target {
        "tetrahedron" => {
            let (up, down) = tetra_type1_halves(&spec).map_err(compute)?;
            let type1 = WeightResult {
                value: up.value + down.value,
                error: up.error + down.error,
                nodes: up.nodes + down.nodes,
                t: None,
            };
            let third = tetra_type1_fundamental_domain(&spec).map_err(compute)?;
            let w = tetra_weight_from(&type1, t);
            let z3 = zeta3();
            let reduced = -z3 / (4.0 * PI.powi(3));
            let full = 3.0 * reduced;
            let lambda = Complex64::new(0.0, 60.0 * z3 / (8.0 * PI.powi(3)));
            let expected = lambda * (t * (1.0 - t)).powi(2);
            report
                .value("type1", weight_json(&type1))
                .value("type1_closed_form", full)
                .value("type1_reduced_target", reduced)
                .value("type1_ratio_to_reduced", type1.value.re / reduced)
                .value("type1_fundamental_domain", weight_json(&third))
                .value("symmetry_factor", TETRA_SYMMETRY_FACTOR)
                .value("prefactor", cjson(tetra_prefactor()))
                .value("scaling", tetra_scaling(t))
                .value("weight", weight_json(&w))
                .value(
                    "weight_over_i_zeta3_pi3",
                    (w.value.im * PI.powi(3) / z3).to_string(),
                );
            report
                .check(Check::residual(
                    "type1_closed_form",
                    "∫F dφ dψ over the plane equals −3ζ(3)/(4π³)",
                    relative(type1.value, Complex64::new(full, 0.0)),
                    1e-4,
                ))
                .check(Check::residual(
                    "fundamental_domain",
                    "∫F dφ dψ over {|w| < 1, Re w < 1/2} equals −ζ(3)/(4π³)",
                    relative(third.value, Complex64::new(reduced, 0.0)),
                    1e-4,
                ))
                .check(Check::residual(
                    "type1_halves",
                    "upper and lower half-plane contributions agree",
                    (up.value - down.value).norm(),
                    up.error + down.error + 1e-12,
                ))
                .check(Check::residual(
                    "pinned_normalization",
                    "c^t = λ (t(1−t))² with λ pinned by the anti-KZ boundary value",
                    if expected.norm() == 0.0 {
                        w.value.norm()
                    } else {
                        relative(w.value, expected)
                    },
                    1e-4,
                ));
            report.artifact = Some(weight_json(&w));
        }
        "at" => {
            let z = crate::config::parse_complex(z.unwrap_or("0.3,0.4"))?;
            let r = at_one_vertex_coefficient(t, z, &spec).map_err(compute)?;
            let shape = at_shape(z);
            let dz_cf = shape * ((1.0 - t) * t * (1.0 - t) / (2.0 * PI * PI));
            let dzbar_cf = -shape.conj() * (t * t * (1.0 - t) / (2.0 * PI * PI));
            let floor = 1e-12;
            let check = |a: Complex64, b: Complex64| {
                if b.norm() < floor {
                    a.norm()
                } else {
                    relative(a, b)
                }
            };
            report
                .value("z", cjson(z))
                .value("dz", cjson(r.dz))
                .value("dzbar", cjson(r.dzbar))
                .value("error", r.error)
                .value("nodes", r.nodes)
                .value("dz_closed_form", cjson(dz_cf))
                .value("dzbar_closed_form", cjson(dzbar_cf));
            report
                .check(Check::residual(
                    "dz",
                    "dz coefficient equals (1−t)²t/(2π²)·(log|1−z|/z + log|z|/(1−z))",
                    check(r.dz, dz_cf),
                    1e-4,
                ))
                .check(Check::residual(
                    "dzbar",
                    "dz̄ coefficient equals −t²(1−t)/(2π²)·conj(log|1−z|/z + log|z|/(1−z))",
                    check(r.dzbar, dzbar_cf),
                    1e-4,
                ));
            report.artifact = Some(r.to_json());
        }
        "propagator" => {
            let fit = propagator_diagonal_expansion(t, &[1e-1, 3e-2, 1e-2, 3e-3, 1e-3])
                .map_err(compute)?;
            let expected = Complex64::new(1.0 - 2.0 * t, 0.0) / Complex64::new(0.0, 2.0 * PI);
            report
                .value("radial", cjson(fit.radial))
                .value("angular", cjson(fit.angular))
                .value("fit_residual", fit.residual);
            report
                .check(Check::residual(
                    "radial",
                    "dρ/ρ coefficient equals (1−2t)/(2πi)",
                    (fit.radial - expected).norm(),
                    1e-6,
                ))
                .check(Check::residual(
                    "angular",
                    "dφ coefficient equals 1/(2π)",
                    (fit.angular - Complex64::new(1.0 / (2.0 * PI), 0.0)).norm(),
                    1e-6,
                ));
            report.artifact =
                Some(json!({ "radial": cjson(fit.radial), "angular": cjson(fit.angular) }));
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown weights target {other:?} (expected tetrahedron, at or propagator)"
            )))
        }
    }
    Ok(report)
}

/// Runs the configured subcommand and stamps the elapsed time.
pub fn run(cfg: &JobConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match &cfg.command {
        Command::Kz => run_kz(cfg),
        Command::Interp => run_interp(cfg),
        Command::Etingof => run_etingof(cfg),
        Command::Gc {
            action,
            graph,
            with,
        } => run_gc(cfg, *action, graph.as_deref(), with.as_deref()),
        Command::Weights { target, z } => run_weights(cfg, target, z.as_deref()),
        Command::Check => run_check(cfg),
    }?;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Writes the report JSON to `--out` when given.
pub fn write_output(cfg: &JobConfig, report: &Report) -> Result<(), CliError> {
    if let Some(path) = &cfg.output {
        let text = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
        fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
