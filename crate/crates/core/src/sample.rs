//! Deterministic seeded sampling of elements, events, and sphere points.
//!
//! Everything fans out from a ChaCha stream cipher so that identical seeds
//! reproduce identical reports byte for byte.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CommAlgebra, Element, Provenance};
use crate::hermitian;
use crate::scalar::{Rat, Scalar};
use crate::starring::RingElement;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random element with integer coordinates in `[-bound, bound]`.
pub fn random_element<S: Scalar>(
    a: &CommAlgebra<S>,
    rng: &mut impl Rng,
    bound: i64,
) -> Element<S> {
    Element { coeffs: (0..a.dim).map(|_| S::from_i64(rng.gen_range(-bound..=bound))).collect() }
}

/// Exact rational point on the unit sphere S^{m-1} ⊆ ℚ^m, via the rational
/// parametrization u = (1 − ‖v‖², 2v) / (1 + ‖v‖²).
pub fn rational_sphere_point(rng: &mut impl Rng, m: usize) -> Vec<Rat> {
    assert!(m >= 1);
    if m == 1 {
        return vec![Rat::from_i64(if rng.gen_bool(0.5) { 1 } else { -1 })];
    }
    let v: Vec<Rat> = (0..m - 1)
        .map(|_| Rat::from_frac(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3)))
        .collect();
    let t = v.iter().fold(Rat::zero(), |acc, x| acc.plus(&x.times(x)));
    let denom_inv = Rat::one().plus(&t).inverse().expect("1 + ‖v‖² > 0");
    let mut u = vec![Rat::one().minus(&t).times(&denom_inv)];
    let two = Rat::from_i64(2);
    u.extend(v.iter().map(|x| x.times(&two).times(&denom_inv)));
    u
}

/// Spin-factor idempotent ½(1 + u) from a unit vector u of the Hilbert part.
pub fn spin_event<S: Scalar>(a: &CommAlgebra<S>, u: &[Rat]) -> Element<S> {
    assert!(matches!(a.provenance, Provenance::SpinFactor { .. }));
    assert_eq!(u.len(), a.dim - 1);
    let half = Rat::from_frac(1, 2);
    let mut coeffs = vec![S::from_rat(&half)];
    coeffs.extend(u.iter().map(|c| S::from_rat(&c.times(&half))));
    Element { coeffs }
}

/// The unit vector of the Hilbert part behind a spin event, if the element
/// has the ½(1 + u) shape.
pub fn spin_event_direction(_a: &CommAlgebra<Rat>, e: &Element<Rat>) -> Option<Vec<Rat>> {
    if e.coeffs[0] != Rat::from_frac(1, 2) {
        return None;
    }
    let two = Rat::from_i64(2);
    let u: Vec<Rat> = e.coeffs[1..].iter().map(|c| c.times(&two)).collect();
    let n = u.iter().fold(Rat::zero(), |acc, x| acc.plus(&x.times(x)));
    (n == Rat::one()).then_some(u)
}

pub fn random_spin_event<S: Scalar>(a: &CommAlgebra<S>, rng: &mut impl Rng) -> Element<S> {
    let u = rational_sphere_point(rng, a.dim - 1);
    spin_event(a, &u)
}

/// Random exact idempotent of a Hermitian algebra. Rank-one projectors from
/// random vectors for associative rings; for octonion-like rings the vector
/// support is restricted to two slots so the coordinates associate.
pub fn random_hermitian_event(a: &CommAlgebra<Rat>, rng: &mut impl Rng) -> Element<Rat> {
    let (ring, n, _) = hermitian::meta_of(a).expect("hermitian event sampler");
    let associative = ring.dim <= 4 && ring.alternativity_check().holds();
    loop {
        let mut v = hermitian::random_vector(ring, n, rng, 2);
        if !associative {
            // Keep at most two nonzero slots.
            let keep_a = rng.gen_range(0..n);
            let keep_b = rng.gen_range(0..n);
            for (i, vi) in v.iter_mut().enumerate() {
                if i != keep_a && i != keep_b {
                    *vi = RingElement::zero(ring.dim);
                }
            }
        }
        if v.iter().all(|vi| vi.is_zero()) {
            continue;
        }
        if let Some(e) = hermitian::rank_one_candidate(a, &v) {
            return e;
        }
    }
}

/// A varied family of exact events: 0, 1, diagonal sums, rank-one projectors
/// and complements for Hermitian algebras; ½(1 ± u) for spin factors.
pub fn auto_events(a: &CommAlgebra<Rat>, rng: &mut impl Rng, count: usize) -> Vec<Element<Rat>> {
    let mut out = vec![Element::zero(a.dim), a.unit.clone()];
    match &a.provenance {
        Provenance::HermitianMatrix { n, .. } => {
            for i in 0..*n {
                out.push(hermitian::diag_element(a, i));
            }
            if *n >= 2 {
                out.push(hermitian::diag_sum(a, &[0, 1]));
            }
            while out.len() < count + 2 {
                let e = random_hermitian_event(a, rng);
                out.push(a.unit.sub(&e));
                out.push(e);
            }
        }
        Provenance::SpinFactor { .. } => {
            while out.len() < count + 2 {
                let e = random_spin_event(a, rng);
                out.push(a.unit.sub(&e));
                out.push(e);
            }
        }
        Provenance::Custom { .. } => {
            // Idempotents of a custom table are not enumerable in general;
            // scan small scalar multiples of basis vectors.
            for k in 0..a.dim {
                let e = a.basis_element(k);
                if a.jordan_mul(&e, &e) == e {
                    out.push(e);
                }
            }
        }
    }
    out.truncate(count.max(2) + 2);
    out
}
