//! Univariate polynomials over a scalar field: exact division, gcd,
//! square-free parts, Sturm real-root counts, and numeric root helpers.

use crate::scalar::{Rat, Scalar};

/// Coefficients in ascending order with no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![S::zero()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &S {
        self.coeffs.last().unwrap()
    }

    pub fn monic(&self) -> Poly<S> {
        let inv = self.leading().inverse().expect("leading coefficient is nonzero");
        Poly::new(self.coeffs.iter().map(|c| c.times(&inv)).collect())
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly<S> {
        if self.degree() == 0 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.times(&S::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[S], k: usize| v.get(k).cloned().unwrap_or_else(S::zero);
        Poly::new((0..n).map(|k| get(&self.coeffs, k).minus(&get(&rhs.coeffs, k))).collect())
    }

    /// Euclidean division by a nonzero divisor.
    pub fn divrem(&self, rhs: &Poly<S>) -> (Poly<S>, Poly<S>) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        if rem.degree() < rhs.degree() && rem.is_zero() {
            return (Poly::zero(), rem);
        }
        let mut quot = vec![S::zero(); self.degree().saturating_sub(rhs.degree()) + 1];
        let lead_inv = rhs.leading().inverse().expect("nonzero divisor");
        while !rem.is_zero() && rem.degree() >= rhs.degree() {
            let shift = rem.degree() - rhs.degree();
            let c = rem.leading().times(&lead_inv);
            quot[shift] = quot[shift].plus(&c);
            let mut sub = vec![S::zero(); shift];
            sub.extend(rhs.coeffs.iter().map(|b| b.times(&c)));
            rem = rem.sub(&Poly::new(sub));
            if rem.coeffs.len() == 1 && rem.coeffs[0].is_zero() {
                break;
            }
        }
        (Poly::new(quot), rem)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Poly<S>) -> Poly<S> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// p / gcd(p, p'): same roots, all simple.
    pub fn squarefree_part(&self) -> Poly<S> {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Monic Π (t − r).
    pub fn from_roots(roots: &[S]) -> Poly<S> {
        let mut p = Poly::new(vec![S::one()]);
        for r in roots {
            p = p.mul(&Poly::new(vec![r.negated(), S::one()]));
        }
        p
    }

    /// Cauchy-style bound: all real roots lie strictly inside (−B, B).
    pub fn root_bound(&self) -> S {
        let lead_inv = self.leading().inverse().expect("nonzero polynomial");
        let mut m = S::zero();
        for c in &self.coeffs[..self.degree()] {
            let a = c.times(&lead_inv).abs();
            if a.cmp_real(&m) == std::cmp::Ordering::Greater {
                m = a;
            }
        }
        S::one().plus(&m)
    }

    /// Number of distinct real roots, by Sturm's theorem. The polynomial must
    /// be square-free; exact for exact scalars.
    pub fn sturm_distinct_real_roots(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let last = &chain[chain.len() - 1];
            if last.is_zero() {
                chain.pop();
                break;
            }
            if last.degree() == 0 {
                break;
            }
            let prev = &chain[chain.len() - 2];
            let (_, r) = prev.divrem(last);
            if r.is_zero() {
                break;
            }
            chain.push(Poly::new(r.coeffs.iter().map(S::negated).collect()));
        }
        let bound = self.root_bound();
        let variations = |x: &S| -> usize {
            let mut count = 0;
            let mut prev_sign = std::cmp::Ordering::Equal;
            for p in &chain {
                let s = p.eval(x).sign();
                if s != std::cmp::Ordering::Equal {
                    if prev_sign != std::cmp::Ordering::Equal && s != prev_sign {
                        count += 1;
                    }
                    prev_sign = s;
                }
            }
            count
        };
        variations(&bound.negated()) - variations(&bound)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(S::to_f64).collect()
    }
}

/// Horner evaluation of f64 coefficients, with derivative.
fn horner_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Newton polish of an approximate real root against exact-derived f64
/// coefficients.
pub fn polish_real_root(coeffs: &[f64], x0: f64) -> f64 {
    let mut x = x0;
    let mut best = x0;
    let (mut best_val, _) = horner_with_derivative(coeffs, x0);
    for _ in 0..64 {
        let (p, dp) = horner_with_derivative(coeffs, x);
        if p.abs() < best_val.abs() {
            best_val = p;
            best = x;
        }
        if p == 0.0 || dp == 0.0 || !p.is_finite() {
            break;
        }
        let step = p / dp;
        if !step.is_finite() || step.abs() < f64::EPSILON * (x.abs() + 1.0) {
            break;
        }
        x -= step;
    }
    let (p, _) = horner_with_derivative(coeffs, x);
    if p.abs() <= best_val.abs() {
        x
    } else {
        best
    }
}

/// Roots of a polynomial as eigenvalues of its companion matrix. `None` when
/// the coefficients are not finite or the Schur iteration fails to converge
/// within its budget.
pub fn companion_roots(coeffs: &[f64]) -> Option<Vec<(f64, f64)>> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1);
    let lead = coeffs[deg];
    if coeffs.iter().any(|c| !c.is_finite()) || lead == 0.0 {
        return None;
    }
    if deg == 1 {
        return Some(vec![(-coeffs[0] / lead, 0.0)]);
    }
    let mut m = nalgebra::DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -coeffs[i] / lead;
    }
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 100_000)?;
    Some(schur.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect())
}

/// Best rational approximation with bounded denominator, by continued
/// fractions. Used to reconstruct exact rational roots from float ones.
pub fn rational_reconstruct(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut x = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = x.floor();
        if a > i64::MAX as f64 {
            return None;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a;
        if frac < 1e-13 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let num = if negative { -p1 } else { p1 };
    Some(Rat::from_frac(num as i64, q1 as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn poly_i(v: &[i64]) -> Poly<Rat> {
        Poly::new(v.iter().map(|&c| Rat::from_i64(c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        // (t−1)(t−2)(t−3) = t³ − 6t² + 11t − 6
        let p = poly_i(&[-6, 11, -6, 1]);
        let d = poly_i(&[-1, 1]);
        let (q, r) = p.divrem(&d);
        assert!(r.is_zero());
        assert_eq!(q, poly_i(&[6, -5, 1])); // (t−2)(t−3)
        let g = p.gcd(&poly_i(&[-2, 1]));
        assert_eq!(g, poly_i(&[-2, 1]));
    }

    #[test]
    fn squarefree_collapses_multiplicity() {
        // (t−1)²(t+2) = t³ − 3t + 2
        let p = poly_i(&[2, -3, 0, 1]);
        let s = p.squarefree_part();
        assert_eq!(s, poly_i(&[-2, 1, 1])); // (t−1)(t+2)
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(poly_i(&[-6, 11, -6, 1]).sturm_distinct_real_roots(), 3);
        assert_eq!(poly_i(&[1, 0, 1]).sturm_distinct_real_roots(), 0); // t²+1
        assert_eq!(poly_i(&[-2, 0, 1]).sturm_distinct_real_roots(), 2); // t²−2
        assert_eq!(poly_i(&[1, 1, 1, 0, 1]).squarefree_part().sturm_distinct_real_roots(), 0);
    }

    #[test]
    fn companion_and_polish() {
        let p = poly_i(&[-2, 0, 1]); // t² − 2
        let roots = companion_roots(&p.to_f64()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(companion_roots(&[f64::NAN, 0.0, 1.0]).is_none());
        for (re, im) in roots {
            assert!(im.abs() < 1e-9);
            let polished = polish_real_root(&p.to_f64(), re);
            assert!((polished.abs() - 2f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn rational_reconstruction() {
        assert_eq!(rational_reconstruct(0.5, 1 << 20), Some(Rat::from_frac(1, 2)));
        assert_eq!(rational_reconstruct(-2.0 / 3.0, 1 << 20), Some(Rat::from_frac(-2, 3)));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let r = rational_reconstruct(phi, 1000).unwrap();
        // Approximation exists but never verifies as an exact root of t²−t−1.
        let p = poly_i(&[-1, -1, 1]);
        assert!(!p.eval(&r).is_zero());
    }
}
