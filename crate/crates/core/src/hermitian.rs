//! Hermitian matrix algebras H_n(R) over a *-ring, with the symmetrized
//! product a∘b = (ab + ba)/2.
//!
//! Basis: every Hermitian matrix decomposes over `a_ii·h` (h running over a
//! basis of R_sa) and the paired off-diagonal forms `α a_ij + α* a_ji` for
//! i < j and α running over the ring basis — each basis vector is Hermitian
//! by construction. Dimension: n·dim(R_sa) + n(n−1)/2·dim(R).

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{sparsify, CommAlgebra, Element, Provenance, State, Table};
use crate::linalg::Echelon;
use crate::scalar::{Rat, Scalar};
use crate::starring::{RingElement, StarRing};

/// Basis bookkeeping for an H_n(R) table.
pub struct HermitianMeta {
    /// Unit-first echelon basis of R_sa.
    pub sa_basis: Vec<RingElement>,
    /// `diag_index[i][h]` = coefficient index of a_ii·sa_basis[h].
    pub diag_index: Vec<Vec<usize>>,
    /// `offdiag_index[(i,j)][k]` = index of e_k a_ij + e_k* a_ji, i < j.
    pub offdiag_index: Vec<Vec<Vec<usize>>>,
}

impl HermitianMeta {
    pub fn offdiag(&self, i: usize, j: usize) -> &[usize] {
        assert!(i < j, "off-diagonal slots are indexed with i < j");
        &self.offdiag_index[i][j]
    }
}

type RingMatrix = Vec<Vec<RingElement>>;

fn zero_matrix(ring: &StarRing, n: usize) -> RingMatrix {
    vec![vec![RingElement::zero(ring.dim); n]; n]
}

fn matrix_mul(ring: &StarRing, a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
    let n = a.len();
    let mut out = zero_matrix(ring, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = RingElement::zero(ring.dim);
            for k in 0..n {
                acc = acc.add(&ring.mul(&a[i][k], &b[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Builds H_n(R). The ring involution and unit laws were validated when the
/// ring was constructed; the resulting table is validated again by
/// `CommAlgebra::from_table`.
pub fn hermitian_matrix_algebra(ring: &Arc<StarRing>, n: usize) -> CommAlgebra<Rat> {
    assert!(n >= 1, "H_n needs n >= 1");
    let sa_basis = ring.sa_basis();
    let d_sa = sa_basis.len();
    let d = ring.dim;

    let mut diag_index = vec![vec![0usize; d_sa]; n];
    let mut offdiag_index = vec![vec![Vec::new(); n]; n];
    let mut basis_matrices: Vec<RingMatrix> = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for (h, sa) in sa_basis.iter().enumerate() {
            diag_index[i][h] = basis_matrices.len();
            let mut m = zero_matrix(ring, n);
            m[i][i] = sa.clone();
            basis_matrices.push(m);
            labels.push(if h == 0 {
                format!("a{}{}", i + 1, i + 1)
            } else {
                format!("a{}{}[{}]", i + 1, i + 1, ring.labels[find_leading(sa)])
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut slots = Vec::with_capacity(d);
            for k in 0..d {
                slots.push(basis_matrices.len());
                let alpha = ring.basis_element(k);
                let mut m = zero_matrix(ring, n);
                m[i][j] = alpha.clone();
                m[j][i] = ring.star(&alpha);
                basis_matrices.push(m);
                labels.push(format!("m{}{}[{}]", i + 1, j + 1, ring.labels[k]));
            }
            offdiag_index[i][j] = slots;
        }
    }
    let dim = basis_matrices.len();
    debug_assert_eq!(dim, n * d_sa + n * (n - 1) / 2 * d);

    let mut sa_ech = Echelon::new(d, 0.0);
    for b in &sa_basis {
        sa_ech.insert(b.coeffs.clone());
    }
    let meta =
        Arc::new(HermitianMeta { sa_basis: sa_basis.clone(), diag_index, offdiag_index });

    let decompose = |m: &RingMatrix| -> Vec<Rat> {
        let mut coords = vec![Rat::zero(); dim];
        for i in 0..n {
            let c = sa_ech
                .coords(&m[i][i].coeffs)
                .expect("diagonal entry of a Hermitian product lies in R_sa");
            for (h, v) in c.into_iter().enumerate() {
                coords[meta.diag_index[i][h]] = v;
            }
            for j in i + 1..n {
                for (k, slot) in meta.offdiag_index[i][j].iter().enumerate() {
                    coords[*slot] = m[i][j].coeffs[k].clone();
                }
            }
        }
        coords
    };

    let half = Rat::from_frac(1, 2);
    let mut table: Table<Rat> = vec![vec![Vec::new(); dim]; dim];
    for p in 0..dim {
        for q in p..dim {
            let ab = matrix_mul(ring, &basis_matrices[p], &basis_matrices[q]);
            let ba = matrix_mul(ring, &basis_matrices[q], &basis_matrices[p]);
            let mut sym = zero_matrix(ring, n);
            for i in 0..n {
                for j in 0..n {
                    sym[i][j] = ab[i][j].add(&ba[i][j]).scale(&half);
                }
            }
            let row = sparsify(&decompose(&sym));
            table[p][q] = row.clone();
            table[q][p] = row;
        }
    }

    let mut unit = Element::zero(dim);
    for i in 0..n {
        unit.coeffs[meta.diag_index[i][0]] = Rat::one();
    }
    CommAlgebra::from_table(
        table,
        unit,
        labels,
        Provenance::HermitianMatrix { ring: Arc::clone(ring), n, meta },
    )
    .expect("H_n(R) table is symmetric and unital")
}

fn find_leading(x: &RingElement) -> usize {
    x.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

pub fn meta_of<S: Scalar>(a: &CommAlgebra<S>) -> Option<(&Arc<StarRing>, usize, &Arc<HermitianMeta>)> {
    match &a.provenance {
        Provenance::HermitianMatrix { ring, n, meta } => Some((ring, *n, meta)),
        _ => None,
    }
}

/// The diagonal unit matrix a_{ii} as an element.
pub fn diag_element<S: Scalar>(a: &CommAlgebra<S>, i: usize) -> Element<S> {
    let (_, _, meta) = meta_of(a).expect("diag_element needs a Hermitian algebra");
    let mut e = Element::zero(a.dim);
    e.coeffs[meta.diag_index[i][0]] = S::one();
    e
}

/// Sum of diagonal units a_{ii} over a set of indices.
pub fn diag_sum<S: Scalar>(a: &CommAlgebra<S>, indices: &[usize]) -> Element<S> {
    indices.iter().fold(Element::zero(a.dim), |acc, &i| acc.add(&diag_element(a, i)))
}

/// The paired off-diagonal element α a_ij + α* a_ji for rational α.
pub fn offdiag_element<S: Scalar>(
    a: &CommAlgebra<S>,
    i: usize,
    j: usize,
    alpha: &RingElement,
) -> Element<S> {
    let (ring, _, meta) = meta_of(a).expect("offdiag_element needs a Hermitian algebra");
    assert_eq!(alpha.coeffs.len(), ring.dim, "ring element dimension mismatch");
    let mut e = Element::zero(a.dim);
    for (k, slot) in meta.offdiag(i, j).iter().enumerate() {
        e.coeffs[*slot] = S::from_rat(&alpha.coeffs[k]);
    }
    e
}

/// Renders an element as the n×n Hermitian matrix of ring elements.
pub fn to_matrix(a: &CommAlgebra<Rat>, x: &Element<Rat>) -> RingMatrix {
    let (ring, n, meta) = meta_of(a).expect("to_matrix needs a Hermitian algebra");
    let mut m = zero_matrix(ring, n);
    for i in 0..n {
        for (h, sa) in meta.sa_basis.iter().enumerate() {
            let c = &x.coeffs[meta.diag_index[i][h]];
            if !c.is_zero() {
                m[i][i] = m[i][i].add(&sa.scale(c));
            }
        }
        for j in i + 1..n {
            for (k, slot) in meta.offdiag(i, j).iter().enumerate() {
                let c = &x.coeffs[*slot];
                if !c.is_zero() {
                    let alpha = ring.basis_element(k).scale(c);
                    m[i][j] = m[i][j].add(&alpha);
                    m[j][i] = m[j][i].add(&ring.star(&alpha));
                }
            }
        }
    }
    m
}

/// Decomposes a Hermitian ring matrix into basis coordinates; `None` when the
/// matrix is not Hermitian or a diagonal entry falls outside R_sa.
pub fn from_matrix(a: &CommAlgebra<Rat>, m: &RingMatrix) -> Option<Element<Rat>> {
    let (ring, n, meta) = meta_of(a).expect("from_matrix needs a Hermitian algebra");
    let mut sa_ech = Echelon::new(ring.dim, 0.0);
    for b in &meta.sa_basis {
        sa_ech.insert(b.coeffs.clone());
    }
    let mut coords = vec![Rat::zero(); a.dim];
    for i in 0..n {
        for j in 0..n {
            if ring.star(&m[j][i]) != m[i][j] {
                return None;
            }
        }
        let c = sa_ech.coords(&m[i][i].coeffs)?;
        for (h, v) in c.into_iter().enumerate() {
            coords[meta.diag_index[i][h]] = v;
        }
        for j in i + 1..n {
            for (k, slot) in meta.offdiag(i, j).iter().enumerate() {
                coords[*slot] = m[i][j].coeffs[k].clone();
            }
        }
    }
    Some(Element { coeffs: coords })
}

/// The matrix product (not symmetrized) of two elements, back in coordinates
/// when it is Hermitian — an independent route for oracle tests like
/// U_e x = exe over associative rings.
pub fn matrix_product_element(
    a: &CommAlgebra<Rat>,
    x: &Element<Rat>,
    y: &Element<Rat>,
) -> Option<Element<Rat>> {
    let (ring, _, _) = meta_of(a)?;
    let p = matrix_mul(ring, &to_matrix(a, x), &to_matrix(a, y));
    from_matrix(a, &p)
}

pub fn triple_matrix_product_element(
    a: &CommAlgebra<Rat>,
    x: &Element<Rat>,
    y: &Element<Rat>,
    z: &Element<Rat>,
) -> Option<Element<Rat>> {
    let (ring, _, _) = meta_of(a)?;
    let p = matrix_mul(ring, &matrix_mul(ring, &to_matrix(a, x), &to_matrix(a, y)), &to_matrix(a, z));
    from_matrix(a, &p)
}

/// The real trace functional τ(x) = Σ Re(x_ii): the coefficient sum over the
/// diagonal-unit coordinates.
pub fn real_trace_functional<S: Scalar>(a: &CommAlgebra<S>) -> Vec<S> {
    let (_, n, meta) = meta_of(a).expect("trace needs a Hermitian algebra");
    let mut f = vec![S::zero(); a.dim];
    for i in 0..n {
        f[meta.diag_index[i][0]] = S::one();
    }
    f
}

pub fn real_trace<S: Scalar>(a: &CommAlgebra<S>, x: &Element<S>) -> S {
    real_trace_functional(a)
        .iter()
        .zip(&x.coeffs)
        .fold(S::zero(), |acc, (f, c)| acc.plus(&f.times(c)))
}

/// Normalized trace-against-density state ν(x) = τ(d∘x)/τ(d); `None` when
/// τ(d) = 0.
pub fn density_state<S: Scalar>(a: &CommAlgebra<S>, d: &Element<S>, kind: &str) -> Option<State<S>> {
    let tau_d = real_trace(a, d);
    let inv = tau_d.inverse()?;
    let t_d = a.mult_operator(d);
    let tau = real_trace_functional(a);
    let functional: Vec<S> = t_d.apply_left(&tau).iter().map(|v| v.times(&inv)).collect();
    Some(State { functional, normalized: true, kind: kind.to_string() })
}

/// Canonical states for H_n(R): the uniform trace state plus density states
/// τ(y²∘x)/τ(y²) for seeded random y.
pub fn hermitian_states<S: Scalar>(a: &CommAlgebra<S>, samples: usize, seed: u64) -> Vec<State<S>> {
    let (_, n, _) = meta_of(a).expect("hermitian_states needs a Hermitian algebra");
    let inv_n = S::from_i64(n as i64).inverse().expect("n >= 1");
    let tau = real_trace_functional(a);
    let mut out = vec![State {
        functional: tau.iter().map(|v| v.times(&inv_n)).collect(),
        normalized: true,
        kind: "trace".into(),
    }];
    let mut rng = crate::sample::rng(seed);
    let mut t = 0;
    while out.len() < samples + 1 && t < samples * 4 + 8 {
        t += 1;
        let y = crate::sample::random_element(a, &mut rng, 2);
        let d = a.jordan_mul(&y, &y);
        if let Some(st) = density_state(a, &d, &format!("density[{t}]")) {
            out.push(st);
        }
    }
    out
}

/// Rank-one candidate vv*/⟨v,v⟩ from a column vector of ring entries.
/// The result is an exact idempotent whenever the coordinates of `v`
/// associate (always for associative rings; for octonions restrict the
/// support of `v` to two slots). `None` when ⟨v,v⟩ is not invertible-scalar.
pub fn rank_one_candidate(a: &CommAlgebra<Rat>, v: &[RingElement]) -> Option<Element<Rat>> {
    let (ring, n, _) = meta_of(a)?;
    assert_eq!(v.len(), n, "vector length must match the matrix size");
    let mut norm = RingElement::zero(ring.dim);
    for vi in v {
        norm = norm.add(&ring.mul(vi, &ring.star(vi)));
    }
    let scalar = ring.scalar_of(&norm)?;
    let inv = scalar.inverse()?;
    let mut m = zero_matrix(ring, n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] = ring.mul(&v[i], &ring.star(&v[j])).scale(&inv);
        }
    }
    from_matrix(a, &m)
}

/// Seeded random elements of H_n(R) with small integer coordinates.
pub fn random_vector(ring: &StarRing, n: usize, rng: &mut impl Rng, bound: i64) -> Vec<RingElement> {
    (0..n)
        .map(|_| {
            let coeffs = (0..ring.dim).map(|_| Rat::from_i64(rng.gen_range(-bound..=bound))).collect();
            RingElement { coeffs }
        })
        .collect()
}
