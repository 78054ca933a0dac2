//! Implementations of the individual commands.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use gl3_geom::combinatorics::{verify_parabolic_moebius, verify_sigma_identity, verify_tau_hat_prime_identity, VerificationReport};
use gl3_geom::convex_weight::{
    c_m0_weight, default_steps, hull_volume_direct, hull_volume_limit, norm_quadruple, HullSpec, NormWeightInput,
    DEFAULT_DIRECTION,
};
use gl3_geom::orbit_classifier::{classify, jordan_decompose, parse_q, RationalMatrix3, UnipotentSubtype};
use gl3_geom::root_system::{
    dual_weights, gram_constant, gram_determinant, omega_restricted, positive_roots, q_to_f64, simple_roots, weyl_group,
    AVector, Parabolic, Root, WeylElement,
};
use gl3_geom::woi_quadrature::{
    j_g_unipotent, j_m0, j_m0_t, j_m21, j_m21_t, ConstantMode, Estimate, TestFunction, WeightParams,
};
use gl3_geom::zeta_engine::{
    assemble_coefficients, local_log_norm_enumeration, local_log_norm_integral, zeta_partial, zeta_partial_derivative,
    PrimeSet,
};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cli::{CoeffArgs, HullMethod, Identity, LocintArgs, WoiArgs, WoiKind, ZetaArgs};
use crate::config::{Config, Source};
use crate::error::{CliError, CliResult};
use crate::report::{computed, computed_exact, to_value};

/// What a command produced, before it is wrapped into a report.
#[derive(Clone, Debug, Default)]
pub struct Body {
    /// Echo of the parsed inputs.
    pub inputs: Value,
    /// Computed outputs.
    pub outputs: Value,
    /// Provenance notes.
    pub provenance: BTreeMap<String, String>,
    /// False when a verification ran and failed.
    pub verified: bool,
    /// Diagnostic lines for stderr.
    pub log: Vec<String>,
}

impl Body {
    fn new(inputs: Value, outputs: Value) -> Self {
        Body { inputs, outputs, provenance: BTreeMap::new(), verified: true, log: Vec::new() }
    }

    fn note(mut self, key: &str, value: String) -> Self {
        self.provenance.insert(key.to_string(), value);
        self
    }
}

fn parse_error(e: gl3_geom::Error) -> CliError {
    CliError::Parse(e.to_string())
}

fn parse_f64_list<const N: usize>(text: &str, what: &str) -> CliResult<[f64; N]> {
    let vals: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Parse(format!("{what}: cannot parse {t:?}"))))
        .collect::<CliResult<_>>()?;
    if vals.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Parse(format!("{what}: values must be finite")));
    }
    vals.try_into()
        .map_err(|v: Vec<f64>| CliError::Parse(format!("{what}: expected {N} values, found {}", v.len())))
}

fn avec(v: &AVector) -> Value {
    json!(v.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn root_json(r: &Root) -> Value {
    json!({ "name": r.name, "vector": avec(&r.vector), "coroot": avec(&r.coroot()) })
}

/// `rootdata dump`.
pub fn rootdata_dump() -> CliResult<Body> {
    let (a, b) = simple_roots();
    let (wa, wb) = dual_weights();
    let parabolics: Vec<Value> = Parabolic::ALL
        .iter()
        .map(|&p| {
            let gram = gram_determinant(p).ok().map(|g| g.to_string());
            let constant = gram_constant(p).ok();
            json!({
                "name": p.to_string(),
                "corank": p.corank(),
                "delta": p.delta().iter().map(root_json).collect::<Vec<_>>(),
                "delta_hat": p.delta_hat().iter().map(avec).collect::<Vec<_>>(),
                "rho": avec(&p.rho()),
                "a_p_basis": p.a_p_basis().iter().map(avec).collect::<Vec<_>>(),
                "gram_determinant": gram,
                "gram_constant": constant,
                "contained_in": Parabolic::ALL.iter().filter(|&&q| p.is_contained_in(q)).map(|q| q.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let (elements, table) = weyl_group();
    let weyl: Vec<Value> = elements
        .iter()
        .map(|s| json!({ "label": s.label(), "sign": s.sign(), "matrix": s.matrix(), "inverse": s.inverse().label() }))
        .collect();
    let table: Vec<Vec<String>> = table.iter().map(|row| row.iter().map(|&k| elements[k].label()).collect()).collect();
    let mut omega = serde_json::Map::new();
    for src in Parabolic::ALL.iter().filter(|p| **p != Parabolic::G) {
        for tgt in Parabolic::ALL {
            let labels: Vec<String> = omega_restricted(*src, tgt)?.iter().map(WeylElement::label).collect();
            omega.insert(format!("{src}->{tgt}"), json!(labels));
        }
    }
    let outputs = json!({
        "simple_roots": [root_json(&a), root_json(&b)],
        "positive_roots": positive_roots().iter().map(root_json).collect::<Vec<_>>(),
        "dual_weights": { "alpha": avec(&wa), "beta": avec(&wb) },
        "parabolics": parabolics,
        "weyl_group": { "elements": weyl, "multiplication_table": table },
        "omega_restricted": omega,
    });
    Ok(Body::new(json!({}), outputs)
        .note("roots, weights, parabolics, weyl group", computed_exact("rational arithmetic"))
        .note("gram_constant", computed("square root of the exact gram determinant", f64::EPSILON)))
}

/// `verify lemmas`.
pub fn verify_identities(which: Identity, samples: usize, seed: u64) -> CliResult<Body> {
    let mut reports: Vec<VerificationReport> = Vec::new();
    if matches!(which, Identity::Sigma | Identity::All) {
        reports.push(verify_sigma_identity(samples, seed));
    }
    if matches!(which, Identity::TauHatPrime | Identity::All) {
        for p in [Parabolic::P0, Parabolic::P21, Parabolic::P12] {
            reports.push(verify_tau_hat_prime_identity(p, samples, seed)?);
        }
    }
    if matches!(which, Identity::Moebius | Identity::All) {
        reports.push(verify_parabolic_moebius());
    }
    let failures: Vec<Value> = reports.iter().flat_map(|r| r.failures.iter().map(to_value)).collect();
    let verified = failures.is_empty();
    let identity = match which {
        Identity::Sigma => "sigma",
        Identity::TauHatPrime => "tau-hat-prime",
        Identity::Moebius => "moebius",
        Identity::All => "all",
    };
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    let outputs = json!({
        "identity": identity,
        "samples": samples,
        "checks": checks,
        "failures": failures,
        "passed": verified,
        "reports": reports.iter().map(to_value).collect::<Vec<_>>(),
    });
    let mut body = Body::new(json!({ "which": identity, "samples": samples, "seed": seed }), outputs)
        .note("failures", computed_exact("pointwise comparison in rational arithmetic"));
    body.verified = verified;
    Ok(body)
}

fn parse_h_family(text: &str) -> CliResult<[[f64; 3]; 6]> {
    let all = WeylElement::all();
    let mut out: [Option<[f64; 3]>; 6] = [None; 6];
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (label, coords) = item
            .split_once(':')
            .ok_or_else(|| CliError::Parse(format!("--H entry {item:?} is not of the form s:x,y,z")))?;
        let s = WeylElement::from_label(label.trim()).map_err(parse_error)?;
        let idx = all.iter().position(|w| *w == s).expect("S3 element");
        if out[idx].is_some() {
            return Err(CliError::Parse(format!("--H lists {} twice", s.label())));
        }
        out[idx] = Some(parse_f64_list::<3>(coords, "--H")?);
    }
    let mut h = [[0.0; 3]; 6];
    for (i, v) in out.iter().enumerate() {
        h[i] = v.ok_or_else(|| CliError::Parse(format!("--H is missing {}", all[i].label())))?;
    }
    Ok(h)
}

/// `weight hull`.
pub fn weight_hull(t: &str, h: &str, method: HullMethod) -> CliResult<Body> {
    let t = parse_f64_list::<3>(t, "--T")?;
    let h = parse_h_family(h)?;
    let spec = HullSpec::from_group_data(&t, &h);
    let (volume, method_name, note) = match method {
        HullMethod::Direct => {
            (hull_volume_direct(&spec), "direct", computed("convex hull and shoelace area", f64::EPSILON))
        }
        HullMethod::Limit => {
            let steps = default_steps(&spec, &DEFAULT_DIRECTION)?;
            let v = hull_volume_limit(&spec, &DEFAULT_DIRECTION, &steps)?;
            (v, "limit", computed("chamber sum with Neville extrapolation", 1e-8))
        }
    };
    let labels: Vec<String> = WeylElement::all().iter().map(WeylElement::label).collect();
    let vertices: BTreeMap<String, [f64; 3]> = labels.iter().cloned().zip(spec.vertices).collect();
    let inputs = json!({ "T": t, "H": labels.iter().cloned().zip(h).collect::<BTreeMap<_, _>>(), "method": method_name });
    let outputs = json!({
        "volume": volume,
        "vertices": vertices,
        "positive_orthogonal": spec.is_positive_orthogonal(1e-9),
        "direction": if method == HullMethod::Limit { json!(DEFAULT_DIRECTION) } else { Value::Null },
    });
    Ok(Body::new(inputs, outputs).note("volume", note))
}

/// `weight cm0`.
pub fn weight_cm0(n: &str) -> CliResult<Body> {
    let [n1, n2, n3] = parse_f64_list::<3>(n, "--n")?;
    let input = NormWeightInput { n1, n2, n3 };
    let [a, b, c, d] = norm_quadruple(&input);
    let outputs = json!({ "value": c_m0_weight(&input), "norms": { "A": a, "B": b, "C": c, "D": d } });
    Ok(Body::new(json!({ "n": [n1, n2, n3] }), outputs)
        .note("value", computed("closed-form logarithms", f64::EPSILON)))
}

fn classify_json(m: &RationalMatrix3) -> CliResult<Value> {
    let class = classify(m)?;
    let jordan = jordan_decompose(m)?;
    let mut v = to_value(&class);
    let obj = v.as_object_mut().expect("struct serialises to an object");
    obj.insert("matrix".into(), to_value(m));
    obj.insert("jordan".into(), to_value(&jordan));
    Ok(v)
}

/// `orbit classify`.
pub fn orbit_classify(matrix: Option<&str>, file: Option<&Path>) -> CliResult<Body> {
    let note = computed_exact("rational characteristic polynomial factorisation");
    if let Some(text) = matrix {
        let m = RationalMatrix3::parse(text).map_err(parse_error)?;
        let out = classify_json(&m)?;
        return Ok(Body::new(json!({ "matrix": text }), out).note("classification", note));
    }
    let path = file.ok_or_else(|| CliError::Parse("either --matrix or --file is required".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let mut results = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let m = RationalMatrix3::parse(line).map_err(|e| CliError::Parse(format!("line {}: {e}", i + 1)))?;
        let mut out = classify_json(&m)?;
        out.as_object_mut().expect("object").insert("line".into(), json!(i + 1));
        results.push(out);
    }
    Ok(Body::new(json!({ "file": path.display().to_string() }), json!({ "results": results }))
        .note("classification", note))
}

/// Outcome of one quadrature: value and error estimate even when the
/// requested tolerance was not met.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Attempt {
    /// Best value.
    pub value: f64,
    /// Error estimate.
    pub error_estimate: f64,
    /// Requested tolerance when it was not met.
    pub tolerance_not_met: Option<f64>,
}

impl Attempt {
    /// Converts a quadrature result, keeping the estimate of a tolerance failure.
    pub fn from_result(r: gl3_geom::Result<Estimate>) -> CliResult<Attempt> {
        match r {
            Ok(e) => Ok(Attempt { value: e.value, error_estimate: e.error, tolerance_not_met: None }),
            Err(gl3_geom::Error::ToleranceNotMet { estimate, error, requested }) => {
                Ok(Attempt { value: estimate, error_estimate: error, tolerance_not_met: Some(requested) })
            }
            Err(e) => Err(e.into()),
        }
    }

    /// True when the tolerance was met.
    pub fn met(&self) -> bool {
        self.tolerance_not_met.is_none()
    }
}

/// `woi`.
pub fn woi(args: &WoiArgs, config: &Config) -> CliResult<Body> {
    let z = q_to_f64(&parse_q(&args.z).map_err(parse_error)?);
    let center = parse_q(&args.center).map_err(parse_error)?;
    if !(args.sigma.is_finite() && args.sigma > 0.0) {
        return Err(CliError::Parse("--sigma must be positive".into()));
    }
    let mut spec = config.quadrature.clone();
    if let Some(t) = args.tol {
        spec.abs_tol = t;
        spec.rel_tol = t;
    }
    spec.validate().map_err(parse_error)?;
    let f = TestFunction::gaussian(RationalMatrix3::scalar(center.clone()), args.sigma)?;
    let constant_mode = args.constant.map_or(ConstantMode::DropO1, ConstantMode::UserConstant);
    let params = WeightParams { t1: args.t1, t2: args.t2, constant_mode };
    let result = match args.kind {
        WoiKind::Jm0 => j_m0(&f, &spec, &params),
        WoiKind::Jm21 => j_m21(&f, &spec),
        WoiKind::Jm0T => j_m0_t(z, &f, &spec, &params),
        WoiKind::Jm21T => j_m21_t(z, &f, &spec, &params, args.with_u),
        WoiKind::Jgmin => j_g_unipotent(z, UnipotentSubtype::Min, &f, &spec),
        WoiKind::Jgreg => j_g_unipotent(z, UnipotentSubtype::Reg, &f, &spec),
    };
    let estimate = result?;
    let kind = woi_name(args.kind);
    let spec_echo = json!({
        "integral": kind,
        "z": args.z,
        "T1": args.t1,
        "T2": args.t2,
        "constant_mode": to_value(&constant_mode),
        "with_u": args.with_u,
        "test_function": { "family": "GaussianFrobenius", "center": center.to_string(), "sigma": args.sigma },
        "quadrature": to_value(&spec),
    });
    let outputs = json!({ "value": estimate.value, "error_estimate": estimate.error, "spec_echo": spec_echo.clone() });
    let tol_source = if args.tol.is_some() { Source::Flag } else { config.source("abs_tol") };
    Ok(Body::new(spec_echo, outputs)
        .note("value", computed("adaptive Gauss-Kronrod 10/21 on mapped half-lines", spec.abs_tol))
        .note("tolerance", format!("configured ({tol_source})")))
}

fn woi_name(kind: WoiKind) -> &'static str {
    match kind {
        WoiKind::Jm0 => "jm0",
        WoiKind::Jm21 => "jm21",
        WoiKind::Jm0T => "jm0T",
        WoiKind::Jm21T => "jm21T",
        WoiKind::Jgmin => "jgmin",
        WoiKind::Jgreg => "jgreg",
    }
}

fn parse_s(text: &str) -> CliResult<Complex64> {
    let parts: Vec<&str> = text.split(',').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| CliError::Parse(format!("--s: cannot parse {t:?}")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Parse("--s expects re or re,im".into())),
    }
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// `zeta`.
pub fn zeta(args: &ZetaArgs, config: &Config) -> CliResult<Body> {
    let s = parse_s(&args.s)?;
    let set: PrimeSet = args.set.parse().map_err(parse_error)?;
    let prec = args.prec.unwrap_or(config.precision);
    let value = zeta_partial(s, &set, prec)?;
    let derivative = zeta_partial_derivative(s, &set, prec)?;
    let inputs = json!({ "s": complex_json(s), "S": set.to_string(), "precision": prec });
    let outputs = json!({ "value": complex_json(value), "derivative": complex_json(derivative), "S": to_value(&set) });
    let note = computed("Euler-Maclaurin with Euler factors removed", prec);
    Ok(Body::new(inputs, outputs).note("value", note.clone()).note("derivative", note))
}

/// `coeff`.
pub fn coeff(args: &CoeffArgs, config: &Config) -> CliResult<Body> {
    let mut cfg = config.clone();
    let flags = [
        ("vol_M0", args.vol_m0),
        ("vol_M21", args.vol_m21),
        ("vol_G", args.vol_g),
        ("c_Q", args.c_q),
        ("C", args.c),
        ("precision", args.prec),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, &v.to_string(), Source::Flag)?;
        }
    }
    if let Some(p) = &args.ln2_placement {
        cfg.set("ln2_placement", p, Source::Flag)?;
    }
    cfg.validate()?;
    let set: PrimeSet = args.set.parse().map_err(parse_error)?;
    let cc = cfg.coefficient_config(set);
    let coefficients = assemble_coefficients(&cc)?;
    let prec = cfg.precision;
    let mut body = Body::new(to_value(&cc), to_value(&coefficients));
    for key in ["vol_M0", "vol_M21", "vol_G", "c_Q", "C", "ln2_placement", "precision"] {
        body = body.note(key, cfg.provenance(key));
    }
    let assembled = computed("assembly from Laurent data at 1 and the log-derivative at 2", prec);
    for key in ["a_m21_min", "a_g_min", "a_g_reg"] {
        body = body.note(key, assembled.clone());
    }
    body = body
        .note("a_m0_1, a_m21_1, a_g_1", "configured (volumes)".into())
        .note("a_g_reg_slope", computed("vol_M0/(3 c_Q^2)", f64::EPSILON))
        .note("c_q_s", computed("c_Q times Euler factors", prec))
        .note("laurent", computed("Euler-Maclaurin Taylor data times Euler factors", prec))
        .note("zeta_log_derivative_at_2", computed("Euler-Maclaurin", prec));
    body.log.push("note: C is an undetermined constant; its configured value is echoed in config_echo".into());
    Ok(body)
}

/// `locint`.
pub fn locint(args: &LocintArgs) -> CliResult<Body> {
    if args.oracle_depth == 0 || args.oracle_depth > 64 {
        return Err(CliError::Parse("--oracle-depth must be in 1..=64".into()));
    }
    let closed = local_log_norm_integral(args.p)?;
    let oracle = local_log_norm_enumeration(args.p, args.oracle_depth)?;
    let outputs = json!({
        "closed_form": { "exact": closed.exact, "value": closed.value },
        "oracle": { "depth": args.oracle_depth, "value": oracle },
        "difference": closed.value - oracle,
    });
    Ok(Body::new(json!({ "p": args.p, "oracle_depth": args.oracle_depth }), outputs)
        .note("closed_form", computed("closed form", f64::EPSILON))
        .note("oracle", computed_exact("residue classes grouped by valuation")))
}
