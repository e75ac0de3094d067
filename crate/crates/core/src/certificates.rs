//! Self-contained, replayable certificates for the concrete matrix-algebra
//! computations: the golden-ratio idempotent whose conditioning breaks
//! positivity, the nilpotent direction that breaks the order unit, the
//! H_3 derivation forcing alternative coefficients, the H_4 derivation
//! forcing associative coefficients, the conjugation characterization, the
//! coefficient-ring screening table, and the Jordan-identity failure witness
//! in H_4 over the octonions.
//!
//! Every certificate embeds a full table spec of its ring, so replay never
//! depends on the registry staying stable.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{CommAlgebra, Element};
use crate::events::{certify_event, check_assumptions, u_apply, AssumptionsConfig, AssumptionsReport, Event};
use crate::hermitian::{diag_element, diag_sum, hermitian_matrix_algebra, offdiag_element};
use crate::identities::jordan_defect;
use crate::sample;
use crate::scalar::{Rat, Scalar, Sqrt5};
use crate::spec_io::{build_ring, element_to_json, ring_element_to_json, ring_to_table_spec, RingSpec};
use crate::spectral::{is_positive, spectral_resolution, Positivity, ResolvedPairs};
use crate::starring::{AltVerdict, Definiteness, RingElement, SaVerdict, StarRing};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertError {
    #[error("α*α = αα* = −1 required")]
    NormNotMinusOne,
    #[error("nonzero α with α*α = αα* = 0 required")]
    NormNotZero,
    #[error("α*α = 1 required")]
    NormNotOne,
    #[error("the construction needs a ring with self-adjoint part ℝ·1")]
    NotScalarHermitian,
    #[error("no witness found within the search budget; retry with a new seed")]
    SearchBudgetExceeded,
    #[error("replay input invalid: {0}")]
    BadInput(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CertCheck {
    pub assertion: String,
    pub pass: bool,
    pub residual: String,
}

impl CertCheck {
    fn exact(assertion: &str, residual_zero: bool, rendered: String) -> Self {
        CertCheck { assertion: assertion.into(), pass: residual_zero, residual: rendered }
    }
}

/// A replayable record: inputs sufficient to regenerate, the computed
/// objects, and the list of (assertion, pass, residual) checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub kind: String,
    pub inputs: Value,
    pub objects: Value,
    pub checks: Vec<CertCheck>,
    pub passed: bool,
    /// For the derivation certificates: whether the derived residual
    /// vanishes (i.e. the ring satisfies the derived constraint).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_vanishes: Option<bool>,
}

impl Certificate {
    fn new(kind: &str, inputs: Value, objects: Value, checks: Vec<CertCheck>) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        Certificate { schema: 1, kind: kind.into(), inputs, objects, checks, passed, residual_vanishes: None }
    }
}

fn ring_input(ring: &StarRing) -> Value {
    serde_json::to_value(ring_to_table_spec(ring)).expect("ring spec serializes")
}

fn rendered<S: Scalar>(x: &Element<S>, a: &CommAlgebra<S>) -> String {
    a.render(x)
}

/// The golden-ratio idempotent f = ½(1−√5)a₁₁ + ½(1+√5)a₂₂ + αa₁₂ + α*a₂₁
/// for α of norm −1: certifies f∘f = f exactly over ℚ(√5), that
/// U_e f = ½(1−√5)e for e = a₁₁, and that this image has the negative
/// eigenvalue ½(1−√5) — so conditioning on e maps an event to a non-positive
/// element, which no positive projection may do.
pub fn golden_idempotent_certificate(
    ring: &Arc<StarRing>,
    alpha: &RingElement,
) -> Result<Certificate, CertError> {
    let minus_one = ring.one().scale(&Rat::from_i64(-1));
    if ring.norm_form(alpha) != minus_one
        || ring.mul(alpha, &ring.star(alpha)) != minus_one
    {
        return Err(CertError::NormNotMinusOne);
    }
    let h2 = hermitian_matrix_algebra(ring, 2);
    let a5 = h2.to_sqrt5();
    let phi_minus = Sqrt5::golden_minus();
    let phi_plus = Sqrt5::golden_plus();
    let e = diag_element(&a5, 0);
    let f = diag_element(&a5, 0)
        .scale(&phi_minus)
        .add(&diag_element(&a5, 1).scale(&phi_plus))
        .add(&offdiag_element(&a5, 0, 1, alpha));
    let mut checks = Vec::new();

    let f_defect = a5.jordan_mul(&f, &f).sub(&f);
    checks.push(CertCheck::exact(
        "f∘f − f = 0 exactly over ℚ(√5)",
        f_defect.is_zero(),
        rendered(&f_defect, &a5),
    ));
    let ev_e = certify_event(&a5, &e, 0.0).expect("a11 is idempotent");
    let uef = u_apply(&ev_e, &f);
    let expected = e.scale(&phi_minus);
    let u_defect = uef.sub(&expected);
    checks.push(CertCheck::exact(
        "U_e f = ½(1−√5)·e exactly",
        u_defect.is_zero(),
        rendered(&u_defect, &a5),
    ));
    let also_triple = a5.triple_product(&e, &f, &e).sub(&expected);
    checks.push(CertCheck::exact(
        "{e, f, e} agrees with the cached projection",
        also_triple.is_zero(),
        rendered(&also_triple, &a5),
    ));
    let res = spectral_resolution(&a5, &uef, 0.0);
    let neg_eig = match &res {
        Ok(r) => match &r.pairs {
            ResolvedPairs::Exact(pairs) => pairs
                .iter()
                .any(|(t, _)| *t == phi_minus && t.sign() == std::cmp::Ordering::Less),
            ResolvedPairs::Numeric(_) => false,
        },
        Err(_) => false,
    };
    checks.push(CertCheck::exact(
        "U_e f resolves exactly with eigenvalue ½(1−√5) < 0",
        neg_eig,
        res.as_ref().map(|r| format!("{:?}", r.eigenvalues_f64())).unwrap_or_else(|e| e.to_string()),
    ));
    checks.push(CertCheck::exact(
        "U_e f is not positive",
        is_positive(&a5, &uef, &[], 0.0) == Positivity::NotPositive,
        String::new(),
    ));

    let objects = json!({
        "e": element_to_json(&a5, &e),
        "f": element_to_json(&a5, &f),
        "U_e f": element_to_json(&a5, &uef),
    });
    let inputs = json!({
        "ring": ring_input(ring),
        "alpha": ring_element_to_json(ring, alpha),
        "alpha_coeffs": alpha.coeffs,
    });
    Ok(Certificate::new("golden-idempotent", inputs, objects, checks))
}

/// x = αa₁₂ + α*a₂₁ for nilpotent-norm α: certifies x² = 0 and e∘x = x/2,
/// hence (e + sx)² = e + sx for every scalar s — an unbounded family of
/// idempotents below the unit, forcing x = 0 under the order-unit axioms.
pub fn nilpotent_violation_certificate(
    ring: &Arc<StarRing>,
    alpha: &RingElement,
) -> Result<Certificate, CertError> {
    let zero = RingElement::zero(ring.dim);
    if alpha.is_zero()
        || ring.norm_form(alpha) != zero
        || ring.mul(alpha, &ring.star(alpha)) != zero
    {
        return Err(CertError::NormNotZero);
    }
    let h2 = hermitian_matrix_algebra(ring, 2);
    let e = diag_element(&h2, 0);
    let x = offdiag_element(&h2, 0, 1, alpha);
    let mut checks = Vec::new();
    let x2 = h2.jordan_mul(&x, &x);
    checks.push(CertCheck::exact("x∘x = 0 exactly", x2.is_zero(), rendered(&x2, &h2)));
    let ex = h2.jordan_mul(&e, &x).scale(&Rat::from_i64(2)).sub(&x);
    checks.push(CertCheck::exact("2(e∘x) = x exactly", ex.is_zero(), rendered(&ex, &h2)));
    let ee = h2.jordan_mul(&e, &e).sub(&e);
    checks.push(CertCheck::exact("e∘e = e", ee.is_zero(), rendered(&ee, &h2)));
    // (e+sx)² − (e+sx) = (e²−e) + s(2e∘x − x) + s²x² vanishes coefficientwise
    // in s by the three checks above; record the conclusion as a check that
    // spot-evaluates a few scalars.
    let mut family = true;
    for s in [-7i64, 1, 13] {
        let y = e.add(&x.scale(&Rat::from_i64(s)));
        if h2.jordan_mul(&y, &y) != y {
            family = false;
        }
    }
    checks.push(CertCheck::exact(
        "(e + sx)² = e + sx for all s (coefficientwise in s; spot-checked)",
        family,
        String::new(),
    ));
    let objects = json!({
        "e": element_to_json(&h2, &e),
        "x": element_to_json(&h2, &x),
    });
    let inputs = json!({
        "ring": ring_input(ring),
        "alpha": ring_element_to_json(ring, alpha),
        "alpha_coeffs": alpha.coeffs,
    });
    Ok(Certificate::new("nilpotent-violation", inputs, objects, checks))
}

/// In H_3(R) with e = ½(a₁₁+a₂₂+αa₁₂+α*a₂₁), x = βa₂₃+β*a₃₂, f = a₃₃:
/// certifies 8·U_e x = [α*(αβ)−β]a₂₃ + h.c. and 16·f∘U_e x = the same,
/// so the structure forces α*(αβ) = β. The residual vanishes exactly when
/// the ring is alternative at (α, β).
pub fn alternativity_derivation_certificate(
    ring: &Arc<StarRing>,
    alpha: &RingElement,
    beta: &RingElement,
) -> Result<Certificate, CertError> {
    if !ring.hermitian_scalar_check().holds() {
        return Err(CertError::NotScalarHermitian);
    }
    let one = ring.one();
    if ring.norm_form(alpha) != one || ring.mul(alpha, &ring.star(alpha)) != one {
        return Err(CertError::NormNotOne);
    }
    let h3 = hermitian_matrix_algebra(ring, 3);
    let half = Rat::from_frac(1, 2);
    let e = diag_element(&h3, 0)
        .add(&diag_element(&h3, 1))
        .add(&offdiag_element(&h3, 0, 1, alpha))
        .scale(&half);
    let x = offdiag_element(&h3, 1, 2, beta);
    let f = diag_element(&h3, 2);
    let mut checks = Vec::new();
    let ev_e = match certify_event(&h3, &e, 0.0) {
        Ok(ev) => ev,
        Err(_) => return Err(CertError::NormNotOne),
    };
    checks.push(CertCheck::exact("e = ½(a11+a22+αa12+α*a21) is an event", true, String::new()));
    // Ring-side residual δ = α*(αβ) − β.
    let delta = ring.mul(&ring.star(alpha), &ring.mul(alpha, beta)).sub(beta);
    let paired = offdiag_element(&h3, 1, 2, &delta);
    let uex = u_apply(&ev_e, &x);
    let d8 = uex.scale(&Rat::from_i64(8)).sub(&paired);
    checks.push(CertCheck::exact(
        "8·U_e x = [α*(αβ)−β]a23 + h.c. exactly",
        d8.is_zero(),
        rendered(&d8, &h3),
    ));
    let fuex = h3.jordan_mul(&f, &uex);
    let d16 = fuex.scale(&Rat::from_i64(16)).sub(&paired);
    checks.push(CertCheck::exact(
        "16·f∘(U_e x) equals the same pairing exactly",
        d16.is_zero(),
        rendered(&d16, &h3),
    ));
    let vanishes = delta.is_zero();
    let objects = json!({
        "e": element_to_json(&h3, &e),
        "x": element_to_json(&h3, &x),
        "U_e x": element_to_json(&h3, &uex),
        "residual alpha*(alpha beta) - beta": ring_element_to_json(ring, &delta),
    });
    let inputs = json!({
        "ring": ring_input(ring),
        "alpha": ring_element_to_json(ring, alpha),
        "alpha_coeffs": alpha.coeffs,
        "beta": ring_element_to_json(ring, beta),
        "beta_coeffs": beta.coeffs,
    });
    let mut cert = Certificate::new("alternativity-derivation", inputs, objects, checks);
    cert.residual_vanishes = Some(vanishes);
    Ok(cert)
}

/// In H_4(R) with x = αa₁₂+α*a₂₁, y = βa₂₃+β*a₃₂, z = γa₃₄+γ*a₄₃ and
/// e = a₁₁+a₂₂: certifies that the operator-commutation defect
/// x∘(z∘y) − z∘(x∘y) equals ¼([α(βγ)−(αβ)γ]a₁₄ + h.c.), so the structure
/// forces associative coefficients.
pub fn associativity_derivation_certificate(
    ring: &Arc<StarRing>,
    alpha: &RingElement,
    beta: &RingElement,
    gamma: &RingElement,
) -> Certificate {
    let h4 = hermitian_matrix_algebra(ring, 4);
    let x = offdiag_element(&h4, 0, 1, alpha);
    let y = offdiag_element(&h4, 1, 2, beta);
    let z = offdiag_element(&h4, 2, 3, gamma);
    let e = diag_sum(&h4, &[0, 1]);
    let mut checks = Vec::new();
    let ev_e = certify_event(&h4, &e, 0.0).expect("a11 + a22 is idempotent");
    let in_range = u_apply(&ev_e, &x).sub(&x);
    checks.push(CertCheck::exact("x lies in U_e A", in_range.is_zero(), rendered(&in_range, &h4)));
    let ev_ec = certify_event(&h4, &h4.unit.sub(&e), 0.0).expect("complement event");
    let z_range = u_apply(&ev_ec, &z).sub(&z);
    checks.push(CertCheck::exact(
        "z lies in U_{e'} A",
        z_range.is_zero(),
        rendered(&z_range, &h4),
    ));
    let assoc =
        ring.mul(alpha, &ring.mul(beta, gamma)).sub(&ring.mul(&ring.mul(alpha, beta), gamma));
    let paired = offdiag_element(&h4, 0, 3, &assoc);
    let defect = h4
        .jordan_mul(&x, &h4.jordan_mul(&z, &y))
        .sub(&h4.jordan_mul(&z, &h4.jordan_mul(&x, &y)));
    let d4 = defect.scale(&Rat::from_i64(4)).sub(&paired);
    checks.push(CertCheck::exact(
        "4·[x∘(z∘y) − z∘(x∘y)] = [α(βγ)−(αβ)γ]a14 + h.c. exactly",
        d4.is_zero(),
        rendered(&d4, &h4),
    ));
    let vanishes = assoc.is_zero();
    let objects = json!({
        "defect": element_to_json(&h4, &defect),
        "associator": ring_element_to_json(ring, &assoc),
    });
    let inputs = json!({
        "ring": ring_input(ring),
        "alpha_coeffs": alpha.coeffs,
        "beta_coeffs": beta.coeffs,
        "gamma_coeffs": gamma.coeffs,
    });
    let mut cert = Certificate::new("associativity-derivation", inputs, objects, checks);
    cert.residual_vanishes = Some(vanishes);
    cert
}

/// Certifies 1* = 1 and, for every basis unit j with j² = −1, that j* = −j,
/// reproducing the computation t := j*j ∈ ℝ, −tj = j*, t² = 1.
pub fn conjugation_certificate(ring: &Arc<StarRing>) -> Result<Certificate, CertError> {
    if !ring.hermitian_scalar_check().holds() {
        return Err(CertError::NotScalarHermitian);
    }
    let mut checks = Vec::new();
    let one = ring.one();
    let star_one = ring.star(&one).sub(&one);
    checks.push(CertCheck::exact("1* = 1", star_one.is_zero(), String::new()));
    let minus_one = one.scale(&Rat::from_i64(-1));
    let mut units = 0;
    for k in 0..ring.dim {
        let j = ring.basis_element(k);
        if ring.mul(&j, &j) != minus_one {
            continue;
        }
        units += 1;
        let jstar = ring.star(&j);
        let d = jstar.add(&j);
        checks.push(CertCheck::exact(
            &format!("{}* = −{}", ring.labels[k], ring.labels[k]),
            d.is_zero(),
            ring.render(&d),
        ));
        let t = ring
            .scalar_of(&ring.mul(&jstar, &j))
            .ok_or(CertError::NotScalarHermitian)?;
        let t_sq = t.times(&t).minus(&Rat::one());
        checks.push(CertCheck::exact(
            &format!("t = {}*{} is scalar with t² = 1", ring.labels[k], ring.labels[k]),
            t_sq.is_zero(),
            t.to_string(),
        ));
        let relation = j.scale(&t.negated()).sub(&jstar);
        checks.push(CertCheck::exact(
            &format!("−t·{} = {}*", ring.labels[k], ring.labels[k]),
            relation.is_zero(),
            ring.render(&relation),
        ));
    }
    let objects = json!({ "square_minus_one_units": units });
    let inputs = json!({ "ring": ring_input(ring) });
    Ok(Certificate::new("conjugation", inputs, objects, checks))
}

/// Seeded random search in H_4(octonions) for an exact Jordan-identity
/// failure x²∘(x∘y) ≠ x∘(x²∘y).
pub fn h4o_jordan_failure_witness(seed: u64, budget: usize) -> Result<Certificate, CertError> {
    let ring = Arc::new(StarRing::named("octonions").expect("registry"));
    let h4 = hermitian_matrix_algebra(&ring, 4);
    let mut rng = sample::rng(seed);
    for trial in 0..budget {
        let x = sample::random_element(&h4, &mut rng, 2);
        let y = sample::random_element(&h4, &mut rng, 2);
        let d = jordan_defect(&h4, &x, &y);
        if !d.is_zero() {
            let checks = vec![CertCheck::exact(
                "x²∘(x∘y) − x∘(x²∘y) is exactly nonzero",
                true,
                h4.render(&d),
            )];
            let objects = json!({
                "x": element_to_json(&h4, &x),
                "y": element_to_json(&h4, &y),
                "defect": element_to_json(&h4, &d),
                "x_coeffs": x.coeffs,
                "y_coeffs": y.coeffs,
            });
            let inputs = json!({ "seed": seed, "budget": budget, "trial": trial });
            return Ok(Certificate::new("h4o-jordan-failure", inputs, objects, checks));
        }
    }
    Err(CertError::SearchBudgetExceeded)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScreenVerdict {
    #[serde(rename = "jb-consistent")]
    JbConsistent,
    #[serde(rename = "spin-dense")]
    SpinDense,
    #[serde(rename = "excluded")]
    Excluded,
    #[serde(rename = "outside-theorem-scope")]
    OutsideTheoremScope,
}

impl ScreenVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ScreenVerdict::JbConsistent => "jb-consistent",
            ScreenVerdict::SpinDense => "spin-dense",
            ScreenVerdict::Excluded => "excluded",
            ScreenVerdict::OutsideTheoremScope => "outside-theorem-scope",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScreenReport {
    pub ring: String,
    pub n: usize,
    pub verdict: ScreenVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub notes: Vec<String>,
    pub checks: Vec<CertCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

/// Decision tree for whether H_n(R) can satisfy the order-unit assumptions:
/// scalar self-adjoint part → norm definiteness → alternativity (needed for
/// n ≥ 3) → associativity (n ≥ 4). Every exclusion carries a re-verifiable
/// certificate.
pub fn candidate_screen(ring: &Arc<StarRing>, n: usize) -> ScreenReport {
    assert!(n >= 1);
    let mut notes = Vec::new();
    let mut checks = Vec::new();
    let sa = ring.hermitian_scalar_check();
    if let SaVerdict::Witness(w) = &sa {
        notes.push(format!(
            "self-adjoint part exceeds ℝ·1 (witness {}); the verdict depends on the \
             involution convention — this ring uses the tensor involution on both factors",
            ring.render(w)
        ));
        if n >= 4 {
            if let Some((i, j, k)) = ring.associator_basis_witness() {
                let cert = associativity_derivation_certificate(
                    ring,
                    &ring.basis_element(i),
                    &ring.basis_element(j),
                    &ring.basis_element(k),
                );
                if cert.residual_vanishes == Some(false) {
                    return ScreenReport {
                        ring: ring.name.clone(),
                        n,
                        verdict: ScreenVerdict::Excluded,
                        reason: Some("nonassociative-coefficients".into()),
                        notes,
                        checks,
                        certificate: Some(cert),
                    };
                }
            }
        }
        return ScreenReport {
            ring: ring.name.clone(),
            n,
            verdict: ScreenVerdict::OutsideTheoremScope,
            reason: Some("self-adjoint-part-not-scalar".into()),
            notes,
            checks,
            certificate: None,
        };
    }
    checks.push(CertCheck::exact("self-adjoint part is ℝ·1", true, String::new()));
    if n == 1 {
        notes.push("H_1(R) = R_sa = ℝ".into());
        return ScreenReport {
            ring: ring.name.clone(),
            n,
            verdict: ScreenVerdict::JbConsistent,
            reason: None,
            notes,
            checks,
            certificate: conjugation_certificate(ring).ok(),
        };
    }
    match ring.norm_definiteness_check().expect("scalar part verified") {
        Definiteness::NegativeWitness(_) => {
            let Some(alpha) = ring.find_norm_minus_one() else {
                notes.push(
                    "norm form is indefinite but no exactly-scaled α*α = −1 direction was found"
                        .into(),
                );
                return ScreenReport {
                    ring: ring.name.clone(),
                    n,
                    verdict: ScreenVerdict::OutsideTheoremScope,
                    reason: Some("indefinite-norm-no-exact-witness".into()),
                    notes,
                    checks,
                    certificate: None,
                };
            };
            let cert = golden_idempotent_certificate(ring, &alpha)
                .expect("norm −1 direction verified");
            ScreenReport {
                ring: ring.name.clone(),
                n,
                verdict: ScreenVerdict::Excluded,
                reason: Some("negative-norm-direction".into()),
                notes,
                checks,
                certificate: Some(cert),
            }
        }
        Definiteness::ZeroWitness(_) => {
            let cert = ring
                .find_norm_zero()
                .and_then(|alpha| nilpotent_violation_certificate(ring, &alpha).ok());
            ScreenReport {
                ring: ring.name.clone(),
                n,
                verdict: ScreenVerdict::Excluded,
                reason: Some("nilpotent-direction".into()),
                notes,
                checks,
                certificate: cert,
            }
        }
        Definiteness::PositiveDefinite => {
            checks.push(CertCheck::exact("norm form positive definite", true, String::new()));
            screen_definite(ring, n, notes, checks)
        }
    }
}

fn screen_definite(
    ring: &Arc<StarRing>,
    n: usize,
    mut notes: Vec<String>,
    mut checks: Vec<CertCheck>,
) -> ScreenReport {
    let name = ring.name.clone();
    if ring.is_associative() {
        checks.push(CertCheck::exact("coefficient ring associative", true, String::new()));
        return ScreenReport {
            ring: name,
            n,
            verdict: ScreenVerdict::JbConsistent,
            reason: None,
            notes,
            checks,
            certificate: conjugation_certificate(ring).ok(),
        };
    }
    match ring.alternativity_check() {
        AltVerdict::Holds => {
            checks.push(CertCheck::exact(
                "coefficient ring alternative (polarized laws on all basis triples)",
                true,
                String::new(),
            ));
            if n <= 3 {
                ScreenReport {
                    ring: name,
                    n,
                    verdict: ScreenVerdict::JbConsistent,
                    reason: None,
                    notes,
                    checks,
                    certificate: conjugation_certificate(ring).ok(),
                }
            } else {
                let (i, j, k) = ring
                    .associator_basis_witness()
                    .expect("non-associative alternative ring has an associator");
                let cert = associativity_derivation_certificate(
                    ring,
                    &ring.basis_element(i),
                    &ring.basis_element(j),
                    &ring.basis_element(k),
                );
                ScreenReport {
                    ring: name,
                    n,
                    verdict: ScreenVerdict::Excluded,
                    reason: Some("nonassociative-coefficients".into()),
                    notes,
                    checks,
                    certificate: Some(cert),
                }
            }
        }
        AltVerdict::Witness { .. } => {
            if n == 2 {
                checks.extend(spin_dense_evidence(ring));
                notes.push("H_2(R): the trace-zero part carries a definite inner product".into());
                ScreenReport {
                    ring: name,
                    n,
                    verdict: ScreenVerdict::SpinDense,
                    reason: None,
                    notes,
                    checks,
                    certificate: None,
                }
            } else {
                let cert = ring
                    .find_alternativity_unit_witness()
                    .map(|(alpha, beta)| {
                        alternativity_derivation_certificate(ring, &alpha, &beta)
                            .expect("unit-norm witness verified")
                    });
                ScreenReport {
                    ring: name,
                    n,
                    verdict: ScreenVerdict::Excluded,
                    reason: Some("nonalternative-coefficients".into()),
                    notes,
                    checks,
                    certificate: cert,
                }
            }
        }
    }
}

/// Verifies the spin-factor shape of H_2(R) for definite rings with scalar
/// self-adjoint part: products of trace-zero basis vectors are scalar and
/// their squares are positive.
fn spin_dense_evidence(ring: &Arc<StarRing>) -> Vec<CertCheck> {
    let h2 = hermitian_matrix_algebra(ring, 2);
    let mut v_basis: Vec<Element<Rat>> =
        vec![diag_element(&h2, 0).sub(&diag_element(&h2, 1))];
    for k in 0..ring.dim {
        v_basis.push(offdiag_element(&h2, 0, 1, &ring.basis_element(k)));
    }
    let mut scalar_ok = true;
    let mut definite_ok = true;
    for (i, x) in v_basis.iter().enumerate() {
        for (j, y) in v_basis.iter().enumerate() {
            let p = h2.jordan_mul(x, y);
            let on_unit = p.coeffs == h2.unit.scale(&p.coeffs[find_unit_coord(&h2)]).coeffs;
            if !on_unit {
                scalar_ok = false;
            }
            if i == j && p.coeffs[find_unit_coord(&h2)].sign() != std::cmp::Ordering::Greater {
                definite_ok = false;
            }
        }
    }
    vec![
        CertCheck::exact("x∘y ∈ ℝ1 on the trace-zero part", scalar_ok, String::new()),
        CertCheck::exact("x∘x > 0 for trace-zero basis vectors", definite_ok, String::new()),
    ]
}

fn find_unit_coord(a: &CommAlgebra<Rat>) -> usize {
    a.unit.coeffs.iter().position(|c| !c.is_zero()).expect("unit is nonzero")
}

/// Driver used by the CLI and the acceptance suite: auto events and states,
/// plus the golden augmentation — when the coefficient ring has a norm −1
/// direction, the induced ℚ(√5) golden event is added so that the positivity
/// failure of condition (vii) is surfaced, with the certificate attached.
pub struct AssumptionsDriverReport {
    pub report: AssumptionsReport,
    pub golden: Option<Certificate>,
}

pub fn check_assumptions_driver(
    a: &CommAlgebra<Rat>,
    event_count: usize,
    cfg: AssumptionsConfig,
) -> AssumptionsDriverReport {
    let mut rng = sample::rng(cfg.seed);
    let raw_events = sample::auto_events(a, &mut rng, event_count);
    let states = a.canonical_states(6, cfg.seed).unwrap_or_default();

    let golden_alpha = match &a.provenance {
        crate::algebra::Provenance::HermitianMatrix { ring, n, .. } if *n >= 2 => {
            ring.find_norm_minus_one().map(|alpha| (Arc::clone(ring), alpha))
        }
        _ => None,
    };

    match golden_alpha {
        Some((ring, alpha)) => {
            // Work over ℚ(√5) so the golden event is exactly idempotent.
            let a5 = a.to_sqrt5();
            let mut events: Vec<Event<Sqrt5>> = raw_events
                .iter()
                .filter_map(|e| {
                    certify_event(&a5, &e.map_scalars(&|c| Sqrt5::from_rat(c.clone())), 0.0).ok()
                })
                .collect();
            let f = diag_element(&a5, 0)
                .scale(&Sqrt5::golden_minus())
                .add(&diag_element(&a5, 1).scale(&Sqrt5::golden_plus()))
                .add(&offdiag_element(&a5, 0, 1, &alpha));
            if let Ok(ev) = certify_event(&a5, &f, 0.0) {
                events.push(ev);
            }
            let states5: Vec<_> = states
                .iter()
                .map(|s| s.map_scalars(&|c| Sqrt5::from_rat(c.clone())))
                .collect();
            let report = check_assumptions(&a5, &events, &states5, cfg);
            let golden = golden_idempotent_certificate(&ring, &alpha).ok();
            AssumptionsDriverReport { report, golden }
        }
        None => {
            let events: Vec<Event<Rat>> = raw_events
                .iter()
                .filter_map(|e| certify_event(a, e, 0.0).ok())
                .collect();
            let report = check_assumptions(a, &events, &states, cfg);
            AssumptionsDriverReport { report, golden: None }
        }
    }
}

/// Regenerates a certificate from its embedded inputs; replay compares the
/// result with the stored document.
pub fn regenerate(cert: &Certificate) -> Result<Certificate, CertError> {
    let ring_of = |inputs: &Value| -> Result<Arc<StarRing>, CertError> {
        let spec: RingSpec = serde_json::from_value(
            inputs.get("ring").cloned().ok_or_else(|| CertError::BadInput("missing ring".into()))?,
        )
        .map_err(|e| CertError::BadInput(e.to_string()))?;
        build_ring(&spec).map(Arc::new).map_err(|e| CertError::BadInput(e.to_string()))
    };
    let elem_of = |inputs: &Value, key: &str| -> Result<RingElement, CertError> {
        let coeffs: Vec<Rat> = serde_json::from_value(
            inputs
                .get(key)
                .cloned()
                .ok_or_else(|| CertError::BadInput(format!("missing {key}")))?,
        )
        .map_err(|e| CertError::BadInput(e.to_string()))?;
        Ok(RingElement { coeffs })
    };
    match cert.kind.as_str() {
        "golden-idempotent" => {
            golden_idempotent_certificate(&ring_of(&cert.inputs)?, &elem_of(&cert.inputs, "alpha_coeffs")?)
        }
        "nilpotent-violation" => {
            nilpotent_violation_certificate(&ring_of(&cert.inputs)?, &elem_of(&cert.inputs, "alpha_coeffs")?)
        }
        "alternativity-derivation" => alternativity_derivation_certificate(
            &ring_of(&cert.inputs)?,
            &elem_of(&cert.inputs, "alpha_coeffs")?,
            &elem_of(&cert.inputs, "beta_coeffs")?,
        ),
        "associativity-derivation" => Ok(associativity_derivation_certificate(
            &ring_of(&cert.inputs)?,
            &elem_of(&cert.inputs, "alpha_coeffs")?,
            &elem_of(&cert.inputs, "beta_coeffs")?,
            &elem_of(&cert.inputs, "gamma_coeffs")?,
        )),
        "conjugation" => conjugation_certificate(&ring_of(&cert.inputs)?),
        "h4o-jordan-failure" => {
            let seed = cert.inputs["seed"].as_u64().ok_or_else(|| CertError::BadInput("seed".into()))?;
            let budget = cert.inputs["budget"].as_u64().unwrap_or(1000) as usize;
            h4o_jordan_failure_witness(seed, budget)
        }
        other => Err(CertError::BadInput(format!("unknown certificate kind \"{other}\""))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(name: &str) -> Arc<StarRing> {
        Arc::new(StarRing::named(name).unwrap())
    }

    #[test]
    fn golden_certificate_split_complex() {
        let sc = ring("split-complex");
        let j = sc.basis_element(1);
        let cert = golden_idempotent_certificate(&sc, &j).unwrap();
        assert!(cert.passed, "{:#?}", cert.checks);
        // Complex numbers have a positive-definite norm form: rejected.
        let c = ring("complex");
        let i = c.basis_element(1);
        assert!(matches!(
            golden_idempotent_certificate(&c, &i),
            Err(CertError::NormNotMinusOne)
        ));
    }

    #[test]
    fn golden_certificate_split_quaternions_via_search() {
        let sq = ring("split-quaternions");
        let alpha = sq.find_norm_minus_one().unwrap();
        let cert = golden_idempotent_certificate(&sq, &alpha).unwrap();
        assert!(cert.passed);
        let so = ring("split-octonions");
        let alpha = so.find_norm_minus_one().unwrap();
        assert!(golden_idempotent_certificate(&so, &alpha).unwrap().passed);
    }

    #[test]
    fn nilpotent_certificate() {
        let sc = ring("split-complex");
        // α = 1 + j: α*α = (1−j)(1+j) = 1 − j² = 0.
        let alpha = sc.one().add(&sc.basis_element(1));
        let cert = nilpotent_violation_certificate(&sc, &alpha).unwrap();
        assert!(cert.passed, "{:#?}", cert.checks);
        // Octonions: every nonzero α has α*α > 0.
        let o = ring("octonions");
        assert!(matches!(
            nilpotent_violation_certificate(&o, &o.basis_element(1)),
            Err(CertError::NormNotZero)
        ));
        assert!(matches!(
            nilpotent_violation_certificate(&sc, &RingElement::zero(2)),
            Err(CertError::NormNotZero)
        ));
    }

    #[test]
    fn alternativity_certificate_octonions_vanishes() {
        let o = ring("octonions");
        // Basis unit and a Pythagorean combination, both of exact norm 1.
        for alpha in [
            o.basis_element(1),
            o.basis_element(1)
                .scale(&Rat::from_frac(3, 5))
                .add(&o.basis_element(2).scale(&Rat::from_frac(4, 5))),
        ] {
            for k in [0, 3, 7] {
                let cert =
                    alternativity_derivation_certificate(&o, &alpha, &o.basis_element(k))
                        .unwrap();
                assert!(cert.passed, "{:#?}", cert.checks);
                assert_eq!(cert.residual_vanishes, Some(true));
            }
        }
        // The trivial ring.
        let r = ring("reals");
        let cert = alternativity_derivation_certificate(&r, &r.one(), &r.one()).unwrap();
        assert!(cert.passed && cert.residual_vanishes == Some(true));
    }

    #[test]
    fn alternativity_certificate_sedenions_fails_to_vanish() {
        let s = ring("sedenions");
        let (alpha, beta) = s.find_alternativity_unit_witness().unwrap();
        let cert = alternativity_derivation_certificate(&s, &alpha, &beta).unwrap();
        // The dual-route identity checks pass; the residual does not vanish.
        assert!(cert.passed, "{:#?}", cert.checks);
        assert_eq!(cert.residual_vanishes, Some(false));
    }

    #[test]
    fn associativity_certificate() {
        let h = ring("quaternions");
        for (i, j, k) in [(1, 2, 3), (2, 3, 1), (1, 1, 2)] {
            let cert = associativity_derivation_certificate(
                &h,
                &h.basis_element(i),
                &h.basis_element(j),
                &h.basis_element(k),
            );
            assert!(cert.passed);
            assert_eq!(cert.residual_vanishes, Some(true));
        }
        let o = ring("octonions");
        // Frozen octonion associator triple (e1, e2, e4).
        let cert = associativity_derivation_certificate(
            &o,
            &o.basis_element(1),
            &o.basis_element(2),
            &o.basis_element(4),
        );
        assert!(cert.passed, "{:#?}", cert.checks);
        assert_eq!(cert.residual_vanishes, Some(false));
        // γ = 1 always associates.
        let cert = associativity_derivation_certificate(
            &o,
            &o.basis_element(1),
            &o.basis_element(2),
            &o.one(),
        );
        assert_eq!(cert.residual_vanishes, Some(true));
    }

    #[test]
    fn conjugation_certificates() {
        let o = ring("octonions");
        let cert = conjugation_certificate(&o).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.objects["square_minus_one_units"], serde_json::json!(7));
        // Split-complex: j² = +1, so the j-clause is vacuous and 1* = 1 passes.
        let sc = ring("split-complex");
        let cert = conjugation_certificate(&sc).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.objects["square_minus_one_units"], serde_json::json!(0));
        assert!(conjugation_certificate(&ring("complex")).unwrap().passed);
        assert!(matches!(
            conjugation_certificate(&ring("bioctonions")),
            Err(CertError::NotScalarHermitian)
        ));
    }

    #[test]
    fn h4o_witness_found_and_deterministic() {
        let c1 = h4o_jordan_failure_witness(20260809, 1000).unwrap();
        let c2 = h4o_jordan_failure_witness(20260809, 1000).unwrap();
        assert!(c1.passed);
        assert_eq!(
            serde_json::to_string(&c1).unwrap(),
            serde_json::to_string(&c2).unwrap()
        );
        let trial = c1.inputs["trial"].as_u64().unwrap();
        assert!(trial < 10, "the defect is generic; found at trial {trial}");
    }

    #[test]
    fn replay_regenerates_identically() {
        let sc = ring("split-complex");
        let cert = golden_idempotent_certificate(&sc, &sc.basis_element(1)).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let parsed: Certificate = serde_json::from_str(&text).unwrap();
        let again = regenerate(&parsed).unwrap();
        assert_eq!(serde_json::to_string(&again).unwrap(), text);
        let s = ring("sedenions");
        let (alpha, beta) = s.find_alternativity_unit_witness().unwrap();
        let cert = alternativity_derivation_certificate(&s, &alpha, &beta).unwrap();
        let again = regenerate(&cert).unwrap();
        assert_eq!(
            serde_json::to_string(&again).unwrap(),
            serde_json::to_string(&cert).unwrap()
        );
    }

    #[test]
    fn screen_spot_checks() {
        assert_eq!(candidate_screen(&ring("octonions"), 3).verdict, ScreenVerdict::JbConsistent);
        let o4 = candidate_screen(&ring("octonions"), 4);
        assert_eq!(o4.verdict, ScreenVerdict::Excluded);
        assert_eq!(o4.reason.as_deref(), Some("nonassociative-coefficients"));
        assert_eq!(o4.certificate.unwrap().residual_vanishes, Some(false));
        let sed2 = candidate_screen(&ring("sedenions"), 2);
        assert_eq!(sed2.verdict, ScreenVerdict::SpinDense);
        let sc = candidate_screen(&ring("split-complex"), 2);
        assert_eq!(sc.verdict, ScreenVerdict::Excluded);
        assert_eq!(sc.reason.as_deref(), Some("negative-norm-direction"));
        assert!(sc.certificate.unwrap().passed);
        let bi = candidate_screen(&ring("bioctonions"), 2);
        assert_eq!(bi.verdict, ScreenVerdict::OutsideTheoremScope);
    }

    #[test]
    fn assumptions_driver_attaches_golden_failure() {
        let sc = ring("split-complex");
        let h2 = hermitian_matrix_algebra(&sc, 2);
        let cfg = AssumptionsConfig { samples: 4, seed: 1729, tol: 1e-9 };
        let out = check_assumptions_driver(&h2, 4, cfg);
        assert!(!out.report.passed);
        let vii = out.report.condition("vii").unwrap();
        assert!(!vii.passed);
        assert!(out.golden.is_some());
        assert!(out.golden.unwrap().passed);
        // Positive control: H_2(R) passes and needs no golden attachment.
        let r2 = hermitian_matrix_algebra(&ring("reals"), 2);
        let out = check_assumptions_driver(&r2, 4, cfg);
        assert!(out.report.passed, "{:#?}", out.report.conditions);
        assert!(out.golden.is_none());
    }
}
