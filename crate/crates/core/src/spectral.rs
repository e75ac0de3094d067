//! Spectral resolutions x = Σ t_k e_k into orthogonal idempotents, the
//! order-unit norm, and decidable positivity.
//!
//! A resolution exists exactly when the element generates an associative
//! subalgebra whose minimal polynomial splits into simple real roots; the
//! pipeline verifies both and reports failures as typed errors. Elements
//! with rational (or ℚ(√5)) spectra keep exact idempotents; irrational
//! spectra fall back to floats behind an explicit conversion.
//!
//! Only finite partitions are handled: at finite dimension the atoms of the
//! spectral measure carry everything, so the Borel σ-additivity of the
//! measure-theoretic definition has no further content here.

use thiserror::Error;

use crate::algebra::{CommAlgebra, Element, State};
use crate::poly::{companion_roots, polish_real_root, rational_reconstruct, Poly};
use crate::scalar::{Rat, Scalar};

/// Roots closer than this are merged and the resolution is recomputed from
/// the square-free data; prevents near-defective Lagrange blowup.
pub const ROOT_MERGE_TOL: f64 = 1e-7;

const RECONSTRUCT_MAX_DEN: u64 = 1 << 40;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("generated subalgebra is not associative (witness basis triple {0:?})")]
    NonAssociativeGenerated((usize, usize, usize)),
    #[error("minimal polynomial has non-real roots")]
    ComplexSpectrum,
    #[error("minimal polynomial has repeated roots; the element is not semisimple")]
    NotSemisimple,
    #[error("candidate idempotent system violates its laws beyond tolerance (defect {defect:.3e})")]
    IdempotentDefect { defect: f64 },
    #[error("float root finding failed (overflow or non-convergence)")]
    NumericalFailure,
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("order-unit norm unavailable: {0}")]
pub struct NormUnavailable(#[from] pub SpectralError);

/// (eigenvalue, idempotent) pairs, eigenvalues descending.
#[derive(Debug, Clone)]
pub enum ResolvedPairs<S: Scalar> {
    Exact(Vec<(S, Element<S>)>),
    Numeric(Vec<(f64, Element<f64>)>),
}

#[derive(Debug, Clone)]
pub struct SpectralResolution<S: Scalar> {
    pub source: Element<S>,
    pub pairs: ResolvedPairs<S>,
}

impl<S: Scalar> SpectralResolution<S> {
    pub fn is_exact(&self) -> bool {
        matches!(self.pairs, ResolvedPairs::Exact(_))
    }

    pub fn len(&self) -> usize {
        match &self.pairs {
            ResolvedPairs::Exact(p) => p.len(),
            ResolvedPairs::Numeric(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn eigenvalues_f64(&self) -> Vec<f64> {
        match &self.pairs {
            ResolvedPairs::Exact(p) => p.iter().map(|(t, _)| t.to_f64()).collect(),
            ResolvedPairs::Numeric(p) => p.iter().map(|(t, _)| *t).collect(),
        }
    }

    pub fn idempotents_f64(&self) -> Vec<Element<f64>> {
        match &self.pairs {
            ResolvedPairs::Exact(p) => p.iter().map(|(_, e)| e.to_f64()).collect(),
            ResolvedPairs::Numeric(p) => p.iter().map(|(_, e)| e.clone()).collect(),
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues_f64().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues_f64().into_iter().map(f64::abs).fold(0.0, f64::max)
    }
}

/// Smallest monic p with p(x) = 0, through the left-normed power sequence.
/// Exact over exact scalars; over floats, rank decisions use a relative
/// threshold on rows normalized to unit magnitude.
pub fn minimal_polynomial<S: Scalar>(a: &CommAlgebra<S>, x: &Element<S>) -> Poly<S> {
    let dim = a.dim;
    // Rows of an augmented echelon: (reduced power vector, combination over
    // the original powers). Pivot bookkeeping mirrors linalg::Echelon but has
    // to track the combination, hence the local copy.
    let mut rows: Vec<(Vec<S>, Vec<S>, usize)> = Vec::new();
    let mut power = a.unit.clone();
    for m in 0..=dim {
        if m > 0 {
            power = a.jordan_mul(x, &power);
        }
        let mut v = power.coeffs.clone();
        let mut combo = vec![S::zero(); m + 1];
        combo[m] = S::one();
        if !S::EXACT {
            // Normalize the row to unit magnitude so the rank threshold
            // below is relative; the combination is scaled identically.
            let imax = (0..v.len())
                .max_by(|&i, &j| v[i].abs().cmp_real(&v[j].abs()))
                .expect("nonempty coefficients");
            if let Some(inv) = v[imax].inverse() {
                for c in v.iter_mut() {
                    *c = c.times(&inv);
                }
                combo[m] = inv;
            }
        }
        for (rv, rc, p) in &rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for j in 0..dim {
                    if !rv[j].is_zero() {
                        v[j] = v[j].minus(&c.times(&rv[j]));
                    }
                }
                for (j, rcj) in rc.iter().enumerate() {
                    if !rcj.is_zero() {
                        combo[j] = combo[j].minus(&c.times(rcj));
                    }
                }
            }
        }
        let pivot = if S::EXACT {
            v.iter().position(|c| !c.is_zero())
        } else {
            let (idx, best) = v
                .iter()
                .enumerate()
                .map(|(i, c)| (i, c.to_f64().abs()))
                .fold((0, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
            (best > 1e-10).then_some(idx)
        };
        match pivot {
            None => return Poly::new(combo),
            Some(p) if m == dim => {
                // Floats may miss a dependence that must exist; surface the
                // best combination and let downstream verification judge it.
                debug_assert!(!S::EXACT);
                let _ = p;
                return Poly::new(combo);
            }
            Some(p) => {
                let inv = v[p].inverse().unwrap();
                for c in v.iter_mut() {
                    *c = c.times(&inv);
                }
                for c in combo.iter_mut() {
                    *c = c.times(&inv);
                }
                rows.push((v, combo, p));
            }
        }
    }
    unreachable!("a linear dependence among 1, x, ..., x^dim always exists")
}

enum Roots<S> {
    Exact(Vec<S>),
    Numeric(Vec<f64>),
}

/// Roots of a square-free monic polynomial over an exact field: exact when
/// the polynomial splits in the field, numeric reals otherwise.
fn split_roots<S: Scalar>(s: &Poly<S>, tol: f64) -> Result<Roots<S>, SpectralError> {
    let deg = s.degree();
    debug_assert!(deg >= 1);
    if S::EXACT {
        if deg == 1 {
            return Ok(Roots::Exact(vec![s.coeffs[0].negated()]));
        }
        if deg == 2 {
            // t² + bt + c
            let b = &s.coeffs[1];
            let c = &s.coeffs[0];
            let disc = b.times(b).minus(&S::from_i64(4).times(c));
            if disc.sign() == std::cmp::Ordering::Less {
                return Err(SpectralError::ComplexSpectrum);
            }
            if let Some(sq) = disc.sqrt_in_field() {
                let half = S::from_rat(&Rat::from_frac(1, 2));
                let r1 = b.negated().plus(&sq).times(&half);
                let r2 = b.negated().minus(&sq).times(&half);
                return Ok(Roots::Exact(vec![r1, r2]));
            }
        } else {
            // Reconstruct rational roots from float approximations and accept
            // only a complete verified factorization.
            let fc = s.to_f64();
            let mut verified: Vec<S> = Vec::new();
            for (re, im) in companion_roots(&fc).unwrap_or_default() {
                if im.abs() > 1e-6 * (1.0 + re.abs()) {
                    continue;
                }
                let polished = polish_real_root(&fc, re);
                if let Some(r) = rational_reconstruct(polished, RECONSTRUCT_MAX_DEN) {
                    let cand = S::from_rat(&r);
                    if s.eval(&cand).is_zero() && !verified.contains(&cand) {
                        verified.push(cand);
                    }
                }
            }
            if verified.len() == deg && Poly::from_roots(&verified).sub(s).is_zero() {
                return Ok(Roots::Exact(verified));
            }
        }
        // Exact splitting failed; decide real-versus-complex exactly.
        if s.sturm_distinct_real_roots() < deg {
            return Err(SpectralError::ComplexSpectrum);
        }
    }
    let fc = s.to_f64();
    let mut reals: Vec<f64> = Vec::new();
    for (re, im) in companion_roots(&fc).ok_or(SpectralError::NumericalFailure)? {
        if !S::EXACT && im.abs() > (tol.max(1e-8)) * (1.0 + re.abs()) {
            return Err(SpectralError::ComplexSpectrum);
        }
        if im.abs() <= 1e-6 * (1.0 + re.abs()) {
            reals.push(polish_real_root(&fc, re));
        }
    }
    reals.sort_by(f64::total_cmp);
    // Merge clusters closer than the documented threshold.
    let mut merged: Vec<f64> = Vec::new();
    for r in reals {
        match merged.last() {
            Some(last) if (r - last).abs() < ROOT_MERGE_TOL * (1.0 + r.abs()) => {}
            _ => merged.push(r),
        }
    }
    if merged.is_empty() {
        return Err(SpectralError::ComplexSpectrum);
    }
    Ok(Roots::Numeric(merged))
}

fn lagrange_idempotents<S: Scalar>(
    a: &CommAlgebra<S>,
    x: &Element<S>,
    roots: &[S],
) -> Vec<(S, Element<S>)> {
    let mut out = Vec::with_capacity(roots.len());
    for (k, rk) in roots.iter().enumerate() {
        let mut num = a.unit.clone();
        let mut den = S::one();
        for (l, rl) in roots.iter().enumerate() {
            if l == k {
                continue;
            }
            num = a.jordan_mul(&num, &x.sub(&a.unit.scale(rl)));
            den = den.times(&rk.minus(rl));
        }
        let e = num.scale(&den.inverse().expect("simple roots have nonzero gaps"));
        out.push((rk.clone(), e));
    }
    out
}

/// Largest violation of the resolution laws: idempotency, orthogonality,
/// partition of the unit, and reconstruction of the source.
fn resolution_defect<S: Scalar>(
    a: &CommAlgebra<S>,
    x: &Element<S>,
    pairs: &[(S, Element<S>)],
) -> f64 {
    let mut defect: f64 = 0.0;
    let mut sum = Element::zero(a.dim);
    let mut rec = Element::zero(a.dim);
    for (k, (t, e)) in pairs.iter().enumerate() {
        defect = defect.max(a.jordan_mul(e, e).sub(e).max_abs_f64());
        for (_, f) in pairs.iter().skip(k + 1) {
            defect = defect.max(a.jordan_mul(e, f).max_abs_f64());
        }
        sum = sum.add(e);
        rec = rec.add(&e.scale(t));
    }
    defect = defect.max(sum.sub(&a.unit).max_abs_f64());
    defect.max(rec.sub(x).max_abs_f64())
}

/// Spectral resolution of `x`, per the existence criterion: the subalgebra
/// generated by x and 1 must be associative and the minimal polynomial must
/// split into simple real roots.
pub fn spectral_resolution<S: Scalar>(
    a: &CommAlgebra<S>,
    x: &Element<S>,
    tol: f64,
) -> Result<SpectralResolution<S>, SpectralError> {
    let closure = a.subalgebra_closure(std::slice::from_ref(x), true, tol);
    if let Some(w) = closure.associator_witness() {
        return Err(SpectralError::NonAssociativeGenerated(w));
    }
    let p = minimal_polynomial(a, x);
    let s = if S::EXACT {
        let s = p.squarefree_part();
        if s.degree() < p.degree() {
            return Err(SpectralError::NotSemisimple);
        }
        s
    } else {
        // Float gcd is unreliable; root merging below plays that role.
        p.monic()
    };
    match split_roots(&s, tol)? {
        Roots::Exact(roots) => {
            let mut pairs = lagrange_idempotents(a, x, &roots);
            let defect = resolution_defect(a, x, &pairs);
            if defect > 0.0 {
                return Err(SpectralError::IdempotentDefect { defect });
            }
            pairs.sort_by(|(s, _), (t, _)| t.cmp_real(s));
            Ok(SpectralResolution { source: x.clone(), pairs: ResolvedPairs::Exact(pairs) })
        }
        Roots::Numeric(roots) => {
            let af = a.to_f64();
            let xf = x.to_f64();
            let mut pairs = lagrange_idempotents(&af, &xf, &roots);
            let defect = resolution_defect(&af, &xf, &pairs);
            if defect > tol {
                return Err(SpectralError::IdempotentDefect { defect });
            }
            pairs.sort_by(|(s, _), (t, _)| t.total_cmp(s));
            Ok(SpectralResolution { source: x.clone(), pairs: ResolvedPairs::Numeric(pairs) })
        }
    }
}

/// ‖x‖ = max |t_k| over the spectral resolution.
pub fn order_unit_norm<S: Scalar>(
    a: &CommAlgebra<S>,
    x: &Element<S>,
    tol: f64,
) -> Result<f64, NormUnavailable> {
    Ok(spectral_resolution(a, x, tol)?.max_abs_eigenvalue())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Positivity {
    Positive,
    NotPositive,
    Unknown,
}

/// Tri-state positivity: decisive when a spectral resolution exists or a
/// supplied state goes negative; `Unknown` otherwise.
pub fn is_positive<S: Scalar>(
    a: &CommAlgebra<S>,
    x: &Element<S>,
    states: &[State<S>],
    tol: f64,
) -> Positivity {
    match spectral_resolution(a, x, tol) {
        Ok(res) => {
            if res.min_eigenvalue() >= -tol {
                Positivity::Positive
            } else {
                Positivity::NotPositive
            }
        }
        Err(_) => {
            for mu in states {
                if mu.eval(x).to_f64() < -tol {
                    return Positivity::NotPositive;
                }
            }
            Positivity::Unknown
        }
    }
}

/// max over n ≤ n_max of |Σ_k t_kⁿ μ(e_k) − μ(xⁿ)|.
pub fn moments_check<S: Scalar>(
    a: &CommAlgebra<S>,
    x: &Element<S>,
    mu: &State<S>,
    n_max: usize,
    tol: f64,
) -> Result<f64, SpectralError> {
    let res = spectral_resolution(a, x, tol)?;
    let eig = res.eigenvalues_f64();
    let weights: Vec<f64> = match &res.pairs {
        ResolvedPairs::Exact(p) => p.iter().map(|(_, e)| mu.eval(e).to_f64()).collect(),
        ResolvedPairs::Numeric(p) => {
            let muf = mu.map_scalars(&|c| c.to_f64());
            p.iter().map(|(_, e)| muf.eval(e)).collect()
        }
    };
    let mut defect: f64 = 0.0;
    let mut power = x.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = a.jordan_mul(x, &power);
        }
        let lhs: f64 =
            eig.iter().zip(&weights).map(|(t, w)| t.powi(n as i32) * w).sum();
        let rhs = mu.eval(&power).to_f64();
        defect = defect.max((lhs - rhs).abs());
    }
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Provenance, Table};
    use crate::hermitian::{diag_element, hermitian_matrix_algebra, offdiag_element};
    use crate::sample;
    use crate::scalar::Sqrt5;
    use crate::starring::StarRing;
    use std::sync::Arc;

    fn ri(n: i64) -> Rat {
        Rat::from_i64(n)
    }

    fn h_n(ring: &str, n: usize) -> CommAlgebra<Rat> {
        hermitian_matrix_algebra(&Arc::new(StarRing::named(ring).unwrap()), n)
    }

    fn poly_i(v: &[i64]) -> Poly<Rat> {
        Poly::new(v.iter().map(|&c| Rat::from_i64(c)).collect())
    }

    #[test]
    fn minimal_polynomial_examples() {
        let a = h_n("reals", 3);
        // Nontrivial idempotent: t² − t.
        let e = diag_element(&a, 0);
        assert_eq!(minimal_polynomial(&a, &e), poly_i(&[0, -1, 1]));
        // diag(1,2,3): (t−1)(t−2)(t−3).
        let x = diag_element(&a, 0)
            .add(&diag_element(&a, 1).scale(&ri(2)))
            .add(&diag_element(&a, 2).scale(&ri(3)));
        assert_eq!(minimal_polynomial(&a, &x), poly_i(&[-6, 11, -6, 1]));
        // The unit: t − 1.
        assert_eq!(minimal_polynomial(&a, &a.unit), poly_i(&[-1, 1]));
    }

    #[test]
    fn exact_resolution_of_rational_spectrum() {
        let a = h_n("reals", 2);
        // [[2,1],[1,2]]: eigenvalues 3 and 1, idempotents ½(1 ± m12).
        let m12 = offdiag_element(&a, 0, 1, &StarRing::reals().one());
        let x = a.unit.scale(&ri(2)).add(&m12);
        let res = spectral_resolution(&a, &x, 1e-9).unwrap();
        assert!(res.is_exact());
        let ResolvedPairs::Exact(pairs) = &res.pairs else { unreachable!() };
        let half = Rat::from_frac(1, 2);
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].0, ri(3));
        assert_eq!(pairs[0].1, a.unit.add(&m12).scale(&half));
        assert_eq!(pairs[1].0, ri(1));
        assert_eq!(pairs[1].1, a.unit.sub(&m12).scale(&half));
    }

    #[test]
    fn idempotent_and_degenerate_resolutions() {
        let a = h_n("reals", 2);
        let e = diag_element(&a, 0);
        let res = spectral_resolution(&a, &e, 1e-9).unwrap();
        assert_eq!(res.eigenvalues_f64(), vec![1.0, 0.0]);
        // The unit and zero resolve to a single pair.
        let res1 = spectral_resolution(&a, &a.unit, 1e-9).unwrap();
        assert_eq!(res1.len(), 1);
        let res0 = spectral_resolution(&a, &Element::zero(a.dim), 1e-9).unwrap();
        assert_eq!(res0.eigenvalues_f64(), vec![0.0]);
    }

    #[test]
    fn spin_resolution_matches_the_half_construction() {
        // x = s·1 + w with ‖w‖ = 5: eigenvalues s ± 5, idempotents ½(1 ± w/5).
        let a = CommAlgebra::<Rat>::spin_factor(3).unwrap();
        let w = a.basis_element(1).scale(&ri(3)).add(&a.basis_element(2).scale(&ri(4)));
        let x = a.unit.scale(&ri(2)).add(&w);
        let res = spectral_resolution(&a, &x, 1e-9).unwrap();
        assert!(res.is_exact());
        let ResolvedPairs::Exact(pairs) = &res.pairs else { unreachable!() };
        assert_eq!(pairs[0].0, ri(7));
        assert_eq!(pairs[1].0, ri(-3));
        let d = a.unit.add(&w.scale(&Rat::from_frac(1, 5))).scale(&Rat::from_frac(1, 2));
        assert_eq!(pairs[0].1, d);
    }

    #[test]
    fn numeric_resolution_for_irrational_spectrum() {
        let a = h_n("reals", 2);
        // [[0,1],[1,1]]: eigenvalues (1±√5)/2, irrational.
        let m12 = offdiag_element(&a, 0, 1, &StarRing::reals().one());
        let x = diag_element(&a, 1).add(&m12);
        let res = spectral_resolution(&a, &x, 1e-9).unwrap();
        assert!(!res.is_exact());
        let eig = res.eigenvalues_f64();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((eig[0] - phi).abs() < 1e-12);
        assert!((eig[1] - (1.0 - phi)).abs() < 1e-12);
    }

    #[test]
    fn norm_examples() {
        let a = h_n("reals", 2);
        assert_eq!(order_unit_norm(&a, &a.unit, 1e-9).unwrap(), 1.0);
        let e = diag_element(&a, 0);
        assert_eq!(order_unit_norm(&a, &e, 1e-9).unwrap(), 1.0);
        let x = diag_element(&a, 0).add(&diag_element(&a, 1).scale(&ri(-4)));
        assert_eq!(order_unit_norm(&a, &x, 1e-9).unwrap(), 4.0);
    }

    #[test]
    fn jb_norm_axioms_on_resolved_elements() {
        let a = h_n("reals", 3);
        let mut rng = sample::rng(31);
        let mut checked = 0;
        for _ in 0..30 {
            let x = sample::random_element(&a, &mut rng, 2);
            let y = sample::random_element(&a, &mut rng, 2);
            let (Ok(nx), Ok(nx2)) = (
                order_unit_norm(&a, &x, 1e-9),
                order_unit_norm(&a, &a.jordan_mul(&x, &x), 1e-9),
            ) else {
                continue;
            };
            assert!((nx2 - nx * nx).abs() < 1e-9 * (1.0 + nx * nx), "‖x²‖ = ‖x‖²");
            let sum = a.jordan_mul(&x, &x).add(&a.jordan_mul(&y, &y));
            if let Ok(nsum) = order_unit_norm(&a, &sum, 1e-9) {
                assert!(nx2 <= nsum + 1e-9 * (1.0 + nsum), "‖x²‖ ≤ ‖x² + y²‖");
                checked += 1;
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn positivity_examples() {
        let a = h_n("reals", 3);
        let e = diag_element(&a, 0);
        assert_eq!(is_positive(&a, &e, &[], 1e-9), Positivity::Positive);
        let mut rng = sample::rng(41);
        for _ in 0..10 {
            let y = sample::random_element(&a, &mut rng, 2);
            let sq = a.jordan_mul(&y, &y);
            assert_eq!(is_positive(&a, &sq, &[], 1e-9), Positivity::Positive);
        }
        // ½(1−√5)·e over ℚ(√5): exactly not positive.
        let a5 = a.to_sqrt5();
        let e5 = e.map_scalars(&|c| Sqrt5::from_rat(c.clone()));
        let x = e5.scale(&Sqrt5::golden_minus());
        assert_eq!(is_positive(&a5, &x, &[], 0.0), Positivity::NotPositive);
        let res = spectral_resolution(&a5, &x, 0.0).unwrap();
        assert!(res.is_exact());
        let ResolvedPairs::Exact(pairs) = &res.pairs else { unreachable!() };
        assert!(pairs.iter().any(|(t, _)| *t == Sqrt5::golden_minus()));
    }

    #[test]
    fn moments_against_trace_state() {
        let a = h_n("reals", 2);
        let x = diag_element(&a, 0).add(&diag_element(&a, 1).scale(&ri(2)));
        let trace = &a.canonical_states(0, 1).unwrap()[0];
        let defect = moments_check(&a, &x, trace, 6, 1e-9).unwrap();
        assert!(defect < 1e-9, "exact spectrum gives exact moments, defect {defect}");
        // Idempotent: eⁿ = e for every n.
        let e = diag_element(&a, 0);
        assert!(moments_check(&a, &e, trace, 8, 1e-9).unwrap() < 1e-12);
    }

    #[test]
    fn affine_functoriality_of_resolutions() {
        let a = h_n("reals", 3);
        let mut rng = sample::rng(57);
        for _ in 0..10 {
            let x = sample::random_element(&a, &mut rng, 2);
            let Ok(res) = spectral_resolution(&a, &x, 1e-9) else { continue };
            let y = x.scale(&ri(3)).add(&a.unit.scale(&ri(2)));
            let res_y = spectral_resolution(&a, &y, 1e-9).unwrap();
            assert_eq!(res.len(), res_y.len());
            let ex = res.eigenvalues_f64();
            let ey = res_y.eigenvalues_f64();
            for (t, s) in ex.iter().zip(&ey) {
                assert!((3.0 * t + 2.0 - s).abs() < 1e-9);
            }
            for (p, q) in res.idempotents_f64().iter().zip(&res_y.idempotents_f64()) {
                assert!(p.sub(q).max_abs_f64() < 1e-8);
            }
        }
    }

    fn bad_table_algebra() -> CommAlgebra<Rat> {
        // Basis {1, a, b}: a² = b, b² = a, a∘b = 0. Not power-associative:
        // the subalgebra generated by a is the whole thing and fails
        // associativity at (a,a,b).
        let one = |k: usize| vec![(k, ri(1))];
        let table: Table<Rat> = vec![
            vec![one(0), one(1), one(2)],
            vec![one(1), one(2), vec![]],
            vec![one(2), vec![], one(1)],
        ];
        CommAlgebra::from_table(
            table,
            Element::basis(3, 0),
            vec!["1".into(), "a".into(), "b".into()],
            Provenance::Custom { label: "twisted".into() },
        )
        .unwrap()
    }

    #[test]
    fn non_associative_generation_is_an_error() {
        let a = bad_table_algebra();
        let x = a.basis_element(1);
        match spectral_resolution(&a, &x, 1e-9) {
            Err(SpectralError::NonAssociativeGenerated(_)) => {}
            other => panic!("expected NonAssociativeGenerated, got {other:?}"),
        }
        assert!(matches!(order_unit_norm(&a, &x, 1e-9), Err(NormUnavailable(_))));
        assert_eq!(is_positive(&a, &x, &[], 1e-9), Positivity::Unknown);
    }

    #[test]
    fn complex_spectrum_and_nilpotents_are_errors() {
        // Symmetrized quaternions: i² = −1, so the minimal polynomial of i
        // is t² + 1.
        let h = StarRing::named("quaternions").unwrap();
        let a = CommAlgebra::<Rat>::symmetrized_ring(&h);
        let i = a.basis_element(1);
        assert!(matches!(spectral_resolution(&a, &i, 1e-9), Err(SpectralError::ComplexSpectrum)));
        // Nilpotent element in a commutative associative table: t².
        let one = |k: usize| vec![(k, ri(1))];
        let table: Table<Rat> = vec![vec![one(0), one(1)], vec![one(1), vec![]]];
        let a = CommAlgebra::from_table(
            table,
            Element::basis(2, 0),
            vec!["1".into(), "n".into()],
            Provenance::Custom { label: "dual-numbers".into() },
        )
        .unwrap();
        let n = a.basis_element(1);
        assert!(matches!(spectral_resolution(&a, &n, 1e-9), Err(SpectralError::NotSemisimple)));
    }

    #[test]
    fn golden_scalar_multiple_resolves_exactly_over_sqrt5() {
        let a = h_n("reals", 2).to_sqrt5();
        let e = diag_element(&a, 0);
        let x = e.scale(&Sqrt5::golden_minus());
        let res = spectral_resolution(&a, &x, 0.0).unwrap();
        assert!(res.is_exact());
        let ResolvedPairs::Exact(pairs) = &res.pairs else { unreachable!() };
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].0, Sqrt5::zero());
        assert_eq!(pairs[1].0, Sqrt5::golden_minus());
    }
}
