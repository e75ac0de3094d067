//! Command execution over typed inputs. Every command is a pure function of
//! (kind, input, seed, tol, trials), so stored reports replay bit-for-bit.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use nonassoc_core::algebra::CommAlgebra;
use nonassoc_core::certificates::{
    alternativity_derivation_certificate, associativity_derivation_certificate, candidate_screen,
    check_assumptions_driver, conjugation_certificate, golden_idempotent_certificate,
    h4o_jordan_failure_witness, nilpotent_violation_certificate, CertError,
};
use nonassoc_core::compat::compat_profile;
use nonassoc_core::events::{certify_event, check_assumptions, AssumptionsConfig};
use nonassoc_core::identities::{
    check_associative, check_formally_real_sampled, check_jordan_identity,
    check_power_associative, JordanMode, Verdict,
};
use nonassoc_core::scalar::{Rat, Scalar};
use nonassoc_core::spec_io::{
    build_algebra, build_element, build_ring, element_to_json, AlgebraSpec, ElementSpec, RingSpec,
};
use nonassoc_core::spectral::{spectral_resolution, ResolvedPairs};
use nonassoc_core::starring::{RingElement, StarRing};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

#[derive(Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub kind: String,
    pub seed: u64,
    pub tol: f64,
    pub trials: usize,
    pub input: Value,
    pub result: Value,
}

/// Inline JSON (starts with '{') or a file path.
pub fn read_spec_text(s: &str) -> Result<String, CliError> {
    if s.trim_start().starts_with('{') {
        Ok(s.to_string())
    } else {
        std::fs::read_to_string(s).map_err(|e| CliError::Input(format!("cannot read {s}: {e}")))
    }
}

fn algebra_from(input: &Value) -> Result<CommAlgebra<Rat>, CliError> {
    let spec: AlgebraSpec = serde_json::from_value(
        input.get("algebra").cloned().ok_or_else(|| CliError::Input("missing algebra".into()))?,
    )
    .map_err(|e| CliError::Input(format!("algebra spec: {e}")))?;
    build_algebra(&spec).map_err(|e| CliError::Input(e.to_string()))
}

fn ring_from(input: &Value) -> Result<Arc<StarRing>, CliError> {
    let spec: RingSpec = serde_json::from_value(
        input.get("ring").cloned().ok_or_else(|| CliError::Input("missing ring".into()))?,
    )
    .map_err(|e| CliError::Input(format!("ring spec: {e}")))?;
    build_ring(&spec).map(Arc::new).map_err(|e| CliError::Input(e.to_string()))
}

fn ring_element_from(
    ring: &StarRing,
    input: &Value,
    key: &str,
) -> Result<Option<RingElement>, CliError> {
    match input.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let coeffs: Vec<Rat> = serde_json::from_value(v.clone())
                .map_err(|e| CliError::Input(format!("{key}: {e}")))?;
            if coeffs.len() != ring.dim {
                return Err(CliError::Input(format!(
                    "{key}: expected {} coefficients, got {}",
                    ring.dim,
                    coeffs.len()
                )));
            }
            Ok(Some(RingElement { coeffs }))
        }
    }
}

fn element_from(
    a: &CommAlgebra<Rat>,
    input: &Value,
    key: &str,
) -> Result<nonassoc_core::algebra::Element<Rat>, CliError> {
    let spec: ElementSpec = serde_json::from_value(
        input.get(key).cloned().ok_or_else(|| CliError::Input(format!("missing {key}")))?,
    )
    .map_err(|e| CliError::Input(format!("{key}: {e}")))?;
    build_element(a, &spec).map_err(|e| CliError::Input(e.to_string()))
}

fn verdict_json(a: &CommAlgebra<Rat>, v: &Verdict<Rat>) -> Value {
    json!({
        "identity": v.identity,
        "status": v.status.as_str(),
        "witness": v.witness.iter().map(|w| element_to_json(a, w)).collect::<Vec<_>>(),
        "residual": v.residual.as_ref().map(|r| element_to_json(a, r)),
        "seed": v.seed,
        "trials": v.trials,
    })
}

pub fn execute(
    kind: &str,
    input: &Value,
    seed: u64,
    tol: f64,
    trials: usize,
) -> Result<Value, CliError> {
    match kind {
        "build" => {
            let a = algebra_from(input)?;
            Ok(json!({
                "dim": a.dim,
                "provenance": a.provenance.describe(),
                "labels": a.basis_labels,
            }))
        }
        "identities" => {
            let a = algebra_from(input)?;
            let mode = match input.get("mode").and_then(Value::as_str) {
                Some("sampled") => JordanMode::Sampled,
                _ => JordanMode::Linearized,
            };
            let pa = check_power_associative(&a, None, trials.min(16), seed);
            let jordan = check_jordan_identity(&a, mode, trials, seed);
            let assoc = check_associative(&a);
            let fr = check_formally_real_sampled(&a, trials.min(32), seed);
            Ok(json!({
                "power_associative": verdict_json(&a, &pa),
                "jordan": verdict_json(&a, &jordan),
                "associative": verdict_json(&a, &assoc),
                "formally_real": verdict_json(&a, &fr),
            }))
        }
        "check-assumptions" => {
            let a = algebra_from(input)?;
            let event_count =
                input.get("event_count").and_then(Value::as_u64).unwrap_or(6) as usize;
            let cfg = AssumptionsConfig { samples: trials.min(24), seed, tol };
            match input.get("events") {
                None | Some(Value::Null) => {
                    let out = check_assumptions_driver(&a, event_count, cfg);
                    Ok(json!({
                        "overall": if out.report.passed { "pass" } else { "fail" },
                        "report": out.report,
                        "golden_certificate": out.golden,
                    }))
                }
                Some(list) => {
                    let specs: Vec<ElementSpec> = serde_json::from_value(
                        list.get("events").cloned().unwrap_or_else(|| list.clone()),
                    )
                    .map_err(|e| CliError::Input(format!("events: {e}")))?;
                    let mut events = Vec::new();
                    for s in &specs {
                        let e = build_element(&a, s).map_err(|e| CliError::Input(e.to_string()))?;
                        let ev = certify_event(&a, &e, tol)
                            .map_err(|e| CliError::Input(format!("event: {e}")))?;
                        events.push(ev);
                    }
                    let states = a
                        .canonical_states(6, seed)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let report = check_assumptions(&a, &events, &states, cfg);
                    Ok(json!({
                        "overall": if report.passed { "pass" } else { "fail" },
                        "report": report,
                        "golden_certificate": Value::Null,
                    }))
                }
            }
        }
        "compat" => {
            let a = algebra_from(input)?;
            let e = element_from(&a, input, "e")?;
            let f = element_from(&a, input, "f")?;
            let states = a.canonical_states(4, seed).unwrap_or_default();
            pair_profile(&a, &e, &f, &states, tol)
        }
        "compat-batch" => {
            let a = algebra_from(input)?;
            let list = input["pairs"]
                .get("pairs")
                .or(Some(&input["pairs"]))
                .and_then(Value::as_array)
                .cloned()
                .ok_or_else(|| CliError::Input("pairs must be a JSON array".into()))?;
            let states = a.canonical_states(4, seed).unwrap_or_default();
            let mut out = Vec::new();
            let mut violations = 0usize;
            for (k, pair) in list.iter().enumerate() {
                let e = element_from(&a, pair, "e")
                    .map_err(|e| CliError::Input(format!("pair {k}: {e:?}")))?;
                let f = element_from(&a, pair, "f")
                    .map_err(|e| CliError::Input(format!("pair {k}: {e:?}")))?;
                let profile = pair_profile(&a, &e, &f, &states, tol)?;
                if profile["chain_violations"].as_array().is_some_and(|v| !v.is_empty()) {
                    violations += 1;
                }
                out.push(profile);
            }
            Ok(json!({ "profiles": out, "chain_violations": violations }))
        }
        "spectral" => {
            let a = algebra_from(input)?;
            let x = element_from(&a, input, "element")?;
            match spectral_resolution(&a, &x, tol) {
                Ok(res) => {
                    let pairs: Vec<Value> = match &res.pairs {
                        ResolvedPairs::Exact(p) => p
                            .iter()
                            .map(|(t, e)| {
                                json!({ "eigenvalue": t.to_string(),
                                        "eigenvalue_f64": t.to_f64(),
                                        "idempotent": element_to_json(&a, e) })
                            })
                            .collect(),
                        ResolvedPairs::Numeric(p) => {
                            let af = a.to_f64();
                            p.iter()
                                .map(|(t, e)| {
                                    json!({ "eigenvalue": t.to_string(),
                                            "eigenvalue_f64": t,
                                            "idempotent": element_to_json(&af, e) })
                                })
                                .collect()
                        }
                    };
                    Ok(json!({
                        "status": "resolved",
                        "exact": res.is_exact(),
                        "pairs": pairs,
                        "norm": res.max_abs_eigenvalue(),
                    }))
                }
                Err(err) => Ok(json!({
                    "status": "error",
                    "error": err.to_string(),
                })),
            }
        }
        "certify-golden" => {
            let ring = ring_from(input)?;
            let alpha = match ring_element_from(&ring, input, "alpha")? {
                Some(a) => a,
                None => ring.find_norm_minus_one().ok_or_else(|| {
                    CliError::Input("no direction with α*α = −1 found in this ring".into())
                })?,
            };
            let cert = golden_idempotent_certificate(&ring, &alpha).map_err(cert_input_err)?;
            Ok(serde_json::to_value(cert).unwrap())
        }
        "certify-nilpotent" => {
            let ring = ring_from(input)?;
            let alpha = match ring_element_from(&ring, input, "alpha")? {
                Some(a) => a,
                None => ring.find_norm_zero().ok_or_else(|| {
                    CliError::Input("no nonzero direction with α*α = 0 found in this ring".into())
                })?,
            };
            let cert = nilpotent_violation_certificate(&ring, &alpha).map_err(cert_input_err)?;
            Ok(serde_json::to_value(cert).unwrap())
        }
        "certify-alternativity" => {
            let ring = ring_from(input)?;
            let (alpha, beta) = match (
                ring_element_from(&ring, input, "alpha")?,
                ring_element_from(&ring, input, "beta")?,
            ) {
                (Some(a), Some(b)) => (a, b),
                (a, b) => {
                    if let Some((wa, wb)) = ring.find_alternativity_unit_witness() {
                        (a.unwrap_or(wa), b.unwrap_or(wb))
                    } else {
                        // Alternative ring: default to a basis probe.
                        let fallback = ring.basis_element(if ring.dim > 1 { 1 } else { 0 });
                        (a.unwrap_or_else(|| fallback.clone()), b.unwrap_or(fallback))
                    }
                }
            };
            let cert =
                alternativity_derivation_certificate(&ring, &alpha, &beta).map_err(cert_input_err)?;
            Ok(serde_json::to_value(cert).unwrap())
        }
        "certify-associativity" => {
            let ring = ring_from(input)?;
            let witness = ring.associator_basis_witness();
            let pick = |given: Option<RingElement>, idx: Option<usize>| match (given, idx) {
                (Some(x), _) => x,
                (None, Some(k)) => ring.basis_element(k),
                (None, None) => ring.one(),
            };
            let alpha = pick(ring_element_from(&ring, input, "alpha")?, witness.map(|w| w.0));
            let beta = pick(ring_element_from(&ring, input, "beta")?, witness.map(|w| w.1));
            let gamma = pick(ring_element_from(&ring, input, "gamma")?, witness.map(|w| w.2));
            let cert = associativity_derivation_certificate(&ring, &alpha, &beta, &gamma);
            Ok(serde_json::to_value(cert).unwrap())
        }
        "certify-conjugation" => {
            let ring = ring_from(input)?;
            let cert = conjugation_certificate(&ring).map_err(cert_input_err)?;
            Ok(serde_json::to_value(cert).unwrap())
        }
        "screen" => {
            let ring = ring_from(input)?;
            let n = input.get("n").and_then(Value::as_u64).unwrap_or(2) as usize;
            if n == 0 {
                return Err(CliError::Input("screen needs n ≥ 1".into()));
            }
            let report = candidate_screen(&ring, n);
            Ok(serde_json::to_value(report).unwrap())
        }
        "h4o-jordan" => {
            let budget = input.get("budget").and_then(Value::as_u64).unwrap_or(1000) as usize;
            match h4o_jordan_failure_witness(seed, budget) {
                Ok(cert) => Ok(serde_json::to_value(cert).unwrap()),
                Err(e) => Ok(json!({ "status": "error", "error": e.to_string() })),
            }
        }
        other => Err(CliError::Input(format!("unknown command kind \"{other}\""))),
    }
}

fn pair_profile(
    a: &CommAlgebra<Rat>,
    e: &nonassoc_core::algebra::Element<Rat>,
    f: &nonassoc_core::algebra::Element<Rat>,
    states: &[nonassoc_core::algebra::State<Rat>],
    tol: f64,
) -> Result<Value, CliError> {
    let ev_e = certify_event(a, e, tol)
        .map_err(|err| CliError::Input(format!("e is not an event: {err}")))?;
    let ev_f = certify_event(a, f, tol)
        .map_err(|err| CliError::Input(format!("f is not an event: {err}")))?;
    let profile = compat_profile(a, &ev_e, &ev_f, states, tol);
    let mut v = profile.to_json();
    v["e"] = element_to_json(a, e);
    v["f"] = element_to_json(a, f);
    Ok(v)
}

fn cert_input_err(e: CertError) -> CliError {
    CliError::Input(e.to_string())
}

/// Baseline success predicate per command, before --expect entries.
pub fn default_success(kind: &str, result: &Value) -> bool {
    match kind {
        "check-assumptions" => result["overall"] == "pass",
        "compat" => result["chain_violations"].as_array().is_none_or(|v| v.is_empty()),
        "compat-batch" => result["chain_violations"] == 0,
        "spectral" => result["status"] == "resolved",
        "certify-golden" | "certify-nilpotent" | "certify-alternativity"
        | "certify-associativity" | "certify-conjugation" | "h4o-jordan" => {
            result["passed"] == true
        }
        _ => true,
    }
}

/// Dotted-path lookup with prefix matching: "holds" matches
/// "holds-certified" and "holds-sampled".
pub fn expectations_satisfied(result: &Value, expect: &[(String, String)]) -> bool {
    expect.iter().all(|(key, want)| {
        let mut cur = result;
        for part in key.split('.') {
            match cur.get(part) {
                Some(v) => cur = v,
                None => return false,
            }
        }
        // A bare key like "jordan" resolves to the verdict object; compare
        // against its status (or verdict) field.
        if cur.is_object() {
            match cur.get("status").or_else(|| cur.get("verdict")) {
                Some(v) => cur = v,
                None => return false,
            }
        }
        let got = match cur {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        got == *want || got.starts_with(&format!("{want}-"))
    })
}

pub fn render_text(kind: &str, result: &Value) -> String {
    match kind {
        "build" => format!(
            "dim {}, {}",
            result["dim"],
            result["provenance"].as_str().unwrap_or("?")
        ),
        "identities" => ["power_associative", "jordan", "associative", "formally_real"]
            .iter()
            .map(|k| format!("{k}: {}", result[k]["status"].as_str().unwrap_or("?")))
            .collect::<Vec<_>>()
            .join("\n"),
        "check-assumptions" => {
            let mut lines = vec![format!("overall: {}", result["overall"].as_str().unwrap_or("?"))];
            if let Some(conds) = result["report"]["conditions"].as_array() {
                for c in conds {
                    lines.push(format!(
                        "  ({}) {}: {}",
                        c["condition"].as_str().unwrap_or("?"),
                        if c["passed"] == true { "pass" } else { "FAIL" },
                        c["detail"].as_str().unwrap_or(""),
                    ));
                }
            }
            lines.join("\n")
        }
        "compat-batch" => format!(
            "{} profiles, {} chain violations",
            result["profiles"].as_array().map(|v| v.len()).unwrap_or(0),
            result["chain_violations"]
        ),
        "compat" => format!(
            "level: {}\nflags: {}",
            result["level"].as_str().unwrap_or("?"),
            result["flags"]
                .as_array()
                .map(|v| v
                    .iter()
                    .map(|f| format!(
                        "{}={}",
                        f["condition"].as_str().unwrap_or("?"),
                        f["holds"]
                    ))
                    .collect::<Vec<_>>()
                    .join(" "))
                .unwrap_or_default()
        ),
        "spectral" => {
            if result["status"] == "resolved" {
                let pairs = result["pairs"].as_array().map(|p| {
                    p.iter()
                        .map(|q| q["eigenvalue"].as_str().unwrap_or("?").to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                });
                format!(
                    "resolved ({}): eigenvalues [{}]",
                    if result["exact"] == true { "exact" } else { "numeric" },
                    pairs.unwrap_or_default()
                )
            } else {
                format!("error: {}", result["error"].as_str().unwrap_or("?"))
            }
        }
        "screen" => format!(
            "{} at n={}: {}{}",
            result["ring"].as_str().unwrap_or("?"),
            result["n"],
            result["verdict"].as_str().unwrap_or("?"),
            result["reason"].as_str().map(|r| format!(" ({r})")).unwrap_or_default()
        ),
        _ => {
            // Certificates: kind, pass/fail, check lines.
            let mut lines = vec![format!(
                "{}: {}",
                result["kind"].as_str().unwrap_or(kind),
                if result["passed"] == true { "pass" } else { "FAIL" }
            )];
            if let Some(checks) = result["checks"].as_array() {
                for c in checks {
                    lines.push(format!(
                        "  [{}] {}",
                        if c["pass"] == true { "ok" } else { "XX" },
                        c["assertion"].as_str().unwrap_or("?")
                    ));
                }
            }
            if let Some(v) = result.get("residual_vanishes") {
                lines.push(format!("residual vanishes: {v}"));
            }
            lines.join("\n")
        }
    }
}
