//! Exact deciders for algebraic identities: associativity, the Jordan
//! identity (sampled or certified by full linearization), power-associativity
//! (sampled; no finite multilinear certificate exists at fixed degree), and
//! necessary conditions for formal reality.

use serde::{Deserialize, Serialize};

use crate::algebra::{table_associator_witness, CommAlgebra, Element};
use crate::sample;
use crate::scalar::Scalar;
use crate::spectral::spectral_resolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    #[serde(rename = "holds-certified")]
    HoldsCertified,
    #[serde(rename = "holds-sampled")]
    HoldsSampled,
    #[serde(rename = "fails")]
    Fails,
}

impl VerdictStatus {
    pub fn holds(self) -> bool {
        !matches!(self, VerdictStatus::Fails)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::HoldsCertified => "holds-certified",
            VerdictStatus::HoldsSampled => "holds-sampled",
            VerdictStatus::Fails => "fails",
        }
    }
}

/// Outcome of an identity check. A failing verdict always carries a witness
/// whose residual is exactly nonzero for exact scalars.
#[derive(Debug, Clone)]
pub struct Verdict<S: Scalar> {
    pub identity: String,
    pub status: VerdictStatus,
    pub witness: Vec<Element<S>>,
    pub residual: Option<Element<S>>,
    pub seed: Option<u64>,
    pub trials: usize,
}

impl<S: Scalar> Verdict<S> {
    fn holds(identity: &str, certified: bool, trials: usize, seed: Option<u64>) -> Self {
        Verdict {
            identity: identity.into(),
            status: if certified { VerdictStatus::HoldsCertified } else { VerdictStatus::HoldsSampled },
            witness: Vec::new(),
            residual: None,
            seed,
            trials,
        }
    }

    fn fails(
        identity: &str,
        witness: Vec<Element<S>>,
        residual: Element<S>,
        trials: usize,
        seed: Option<u64>,
    ) -> Self {
        debug_assert!(!residual.is_zero());
        Verdict {
            identity: identity.into(),
            status: VerdictStatus::Fails,
            witness,
            residual: Some(residual),
            seed,
            trials,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JordanMode {
    Sampled,
    Linearized,
}

/// Defect of the Jordan identity at (x, y): x²∘(x∘y) − x∘(x²∘y).
pub fn jordan_defect<S: Scalar>(
    a: &CommAlgebra<S>,
    x: &Element<S>,
    y: &Element<S>,
) -> Element<S> {
    let x2 = a.jordan_mul(x, x);
    a.jordan_mul(&x2, &a.jordan_mul(x, y)).sub(&a.jordan_mul(x, &a.jordan_mul(&x2, y)))
}

/// Exact check of (x∘y)∘z = x∘(y∘z) on all basis triples.
pub fn check_associative<S: Scalar>(a: &CommAlgebra<S>) -> Verdict<S> {
    match table_associator_witness(a.sparse_table(), 0.0) {
        None => Verdict::holds("associative", true, 0, None),
        Some((i, j, k)) => {
            let (x, y, z) = (a.basis_element(i), a.basis_element(j), a.basis_element(k));
            let residual =
                a.jordan_mul(&a.jordan_mul(&x, &y), &z).sub(&a.jordan_mul(&x, &a.jordan_mul(&y, &z)));
            Verdict::fails("associative", vec![x, y, z], residual, 0, None)
        }
    }
}

/// The Jordan identity. `Sampled` evaluates the defect on seeded random
/// pairs; `Linearized` polarizes the identity in x and checks the resulting
/// multilinear identity on all basis tuples — an exact certificate.
pub fn check_jordan_identity<S: Scalar>(
    a: &CommAlgebra<S>,
    mode: JordanMode,
    trials: usize,
    seed: u64,
) -> Verdict<S> {
    match mode {
        JordanMode::Sampled => {
            let mut rng = sample::rng(seed);
            for _ in 0..trials {
                let x = sample::random_element(a, &mut rng, 2);
                let y = sample::random_element(a, &mut rng, 2);
                let d = jordan_defect(a, &x, &y);
                if !d.is_zero() {
                    return Verdict::fails("jordan", vec![x, y], d, trials, Some(seed));
                }
            }
            Verdict::holds("jordan", false, trials, Some(seed))
        }
        JordanMode::Linearized => check_jordan_linearized(a, seed),
    }
}

/// Full linearization of x²∘(x∘y) = x∘(x²∘y) in x. With
/// L(u,v,w;y) := Σ over the three pairings of (u∘v)∘(w∘y) − w∘((u∘v)∘y),
/// the identity holds for all x iff L vanishes on all basis tuples
/// (characteristic zero; L(x,x,x;y) = 3·defect(x,y)).
fn check_jordan_linearized<S: Scalar>(a: &CommAlgebra<S>, seed: u64) -> Verdict<S> {
    let dim = a.dim;
    // Cache sparse basis products p_ij.
    let mut prod: Vec<Vec<Vec<(usize, S)>>> = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let p = a.basis_product(i, j).sparse();
            prod[i][j] = p.clone();
            prod[j][i] = p;
        }
    }
    let basis_row = |k: usize| vec![(k, S::one())];
    for i in 0..dim {
        for j in i..dim {
            for k in j..dim {
                for l in 0..dim {
                    let ekl = basis_row(l);
                    let mut acc = vec![S::zero(); dim];
                    for (u, v, w) in [(i, j, k), (i, k, j), (j, k, i)] {
                        // (e_u ∘ e_v) ∘ (e_w ∘ e_l)
                        let t1 = a.mul_sparse(&prod[u][v], &prod[w][l]);
                        // e_w ∘ ((e_u ∘ e_v) ∘ e_l)
                        let inner = crate::algebra::sparsify(&a.mul_sparse(&prod[u][v], &ekl));
                        let t2 = a.mul_sparse(&basis_row(w), &inner);
                        for m in 0..dim {
                            acc[m] = acc[m].plus(&t1[m].minus(&t2[m]));
                        }
                    }
                    if acc.iter().any(|c| !c.is_zero()) {
                        return jordan_linearized_witness(a, (i, j, k, l), seed);
                    }
                }
            }
        }
    }
    Verdict::holds("jordan", true, 0, None)
}

/// Converts a linearized failure at basis tuple (i,j,k,l) into an element
/// witness (x, y) of the plain Jordan identity.
fn jordan_linearized_witness<S: Scalar>(
    a: &CommAlgebra<S>,
    tuple: (usize, usize, usize, usize),
    seed: u64,
) -> Verdict<S> {
    let (i, j, k, l) = tuple;
    let y = a.basis_element(l);
    let combos: [(i64, i64, i64); 6] =
        [(1, 1, 1), (1, 2, 3), (1, -1, 2), (2, 1, -1), (3, 1, 1), (1, 3, -2)];
    for (ci, cj, ck) in combos {
        let x = a
            .basis_element(i)
            .scale(&S::from_i64(ci))
            .add(&a.basis_element(j).scale(&S::from_i64(cj)))
            .add(&a.basis_element(k).scale(&S::from_i64(ck)));
        let d = jordan_defect(a, &x, &y);
        if !d.is_zero() {
            return Verdict::fails("jordan", vec![x, y], d, 0, None);
        }
    }
    // Cube polarization guarantees some small combination fails; fall back to
    // a seeded search for robustness.
    let mut rng = sample::rng(seed);
    for _ in 0..1000 {
        let x = sample::random_element(a, &mut rng, 2);
        let y = sample::random_element(a, &mut rng, 2);
        let d = jordan_defect(a, &x, &y);
        if !d.is_zero() {
            return Verdict::fails("jordan", vec![x, y], d, 1000, Some(seed));
        }
    }
    unreachable!("linearized Jordan failure admits an element witness")
}

/// Sampled power-associativity: xⁿ∘xᵐ = x^{n+m} for all n+m ≤ degree bound,
/// over seeded random rational elements. The default bound per trial is
/// dim(subalgebra generated by x and 1) + 2.
pub fn check_power_associative<S: Scalar>(
    a: &CommAlgebra<S>,
    degree_bound: Option<usize>,
    trials: usize,
    seed: u64,
) -> Verdict<S> {
    let mut rng = sample::rng(seed);
    for _ in 0..trials {
        let x = sample::random_element(a, &mut rng, 2);
        let bound = degree_bound
            .unwrap_or_else(|| a.subalgebra_generated(std::slice::from_ref(&x), true, 0.0).len() + 2)
            .max(4);
        let mut powers: Vec<Element<S>> = Vec::with_capacity(bound + 1);
        powers.push(x.clone());
        for _ in 1..bound {
            let last = powers.last().unwrap();
            powers.push(a.jordan_mul(&x, last));
        }
        for n in 1..bound {
            for m in n..bound {
                if n + m > bound {
                    break;
                }
                let lhs = a.jordan_mul(&powers[n - 1], &powers[m - 1]);
                let d = lhs.sub(&powers[n + m - 1]);
                if !d.is_zero() {
                    return Verdict::fails("power-associative", vec![x], d, trials, Some(seed));
                }
            }
        }
    }
    Verdict::holds("power-associative", false, trials, Some(seed))
}

/// Mechanical audit of "associative ⟹ Jordan ⟹ power-associative" for one
/// algebra, used as a cross-module property check.
pub fn implication_audit<S: Scalar>(a: &CommAlgebra<S>, trials: usize, seed: u64) -> bool {
    let assoc = check_associative(a).status.holds();
    let jordan = check_jordan_identity(a, JordanMode::Linearized, trials, seed).status.holds();
    let pa = check_power_associative(a, None, trials, seed).status.holds();
    (!assoc || jordan) && (!jordan || pa)
}

/// Necessary-condition test for formal reality: sampled sums of squares must
/// not vanish nontrivially, and sampled squares must not resolve with a
/// negative eigenvalue. Holds only ever as `holds-sampled`.
pub fn check_formally_real_sampled<S: Scalar>(
    a: &CommAlgebra<S>,
    trials: usize,
    seed: u64,
) -> Verdict<S> {
    let mut rng = sample::rng(seed);
    for _ in 0..trials {
        let xs: Vec<Element<S>> =
            (0..3).map(|_| sample::random_element(a, &mut rng, 2)).collect();
        let sum = xs
            .iter()
            .fold(Element::zero(a.dim), |acc, x| acc.add(&a.jordan_mul(x, x)));
        if sum.is_zero() && xs.iter().any(|x| !x.is_zero()) {
            let residual = xs.iter().find(|x| !x.is_zero()).unwrap().clone();
            return Verdict::fails("formally-real", xs, residual, trials, Some(seed));
        }
        let x = &xs[0];
        let square = a.jordan_mul(x, x);
        match spectral_resolution(a, &square, 1e-12) {
            Ok(res) if res.min_eigenvalue() < -1e-9 => {
                return Verdict::fails("formally-real", vec![x.clone()], square, trials, Some(seed));
            }
            Ok(_) | Err(_) => {}
        }
    }
    Verdict::holds("formally-real", false, trials, Some(seed))
}
