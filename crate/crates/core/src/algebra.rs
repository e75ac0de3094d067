//! Commutative (generally nonassociative) finite-dimensional real algebras
//! given by structure constants, and the element/state machinery over them.
//!
//! The two families the lab cares about are the Hermitian matrix algebras
//! H_n(R) (see [`crate::hermitian`]) and the spin factors; arbitrary custom
//! tables are accepted for counterexample construction.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hermitian::{self, HermitianMeta};
use crate::linalg::{Echelon, Matrix};
use crate::scalar::{Rat, Scalar, Sqrt5};
use crate::starring::StarRing;

pub type SparseRow<S> = Vec<(usize, S)>;
pub type Table<S> = Vec<Vec<SparseRow<S>>>;

/// A multiplication operator T_x or a projection U_e, as a coefficient matrix.
pub type LinearOperator<S> = Matrix<S>;

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("multiplication table is not symmetric at basis pair ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("declared unit is not a multiplicative identity on basis element {0}")]
    UnitFails(usize),
    #[error("spin factor needs total dimension ≥ 2, got {0}")]
    SpinDimension(usize),
    #[error("table shape does not match declared dimension")]
    BadShape,
}

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error("no state construction known for a custom algebra without a square sampling budget")]
    UnknownProvenance,
}

/// Coefficient vector relative to an algebra basis.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Element<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Element<S> {
    pub fn zero(dim: usize) -> Self {
        Element { coeffs: vec![S::zero(); dim] }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[k] = S::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, rhs: &Element<S>) -> Element<S> {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn sub(&self, rhs: &Element<S>) -> Element<S> {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.minus(b)).collect() }
    }

    pub fn scale(&self, c: &S) -> Element<S> {
        Element { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn negated(&self) -> Element<S> {
        Element { coeffs: self.coeffs.iter().map(S::negated).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn sparse(&self) -> SparseRow<S> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }

    pub fn map_scalars<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> Element<T> {
        Element { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Element<f64> {
        self.map_scalars(&|c| c.to_f64())
    }
}

/// Where an algebra table came from; carries the data needed to build
/// canonical states and named elements.
#[derive(Clone)]
pub enum Provenance {
    HermitianMatrix { ring: Arc<StarRing>, n: usize, meta: Arc<HermitianMeta> },
    SpinFactor { dim: usize },
    Custom { label: String },
}

impl fmt::Debug for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::HermitianMatrix { ring, n, .. } => {
                write!(f, "hermitian_matrix({}, {n})", ring.name)
            }
            Provenance::SpinFactor { dim } => write!(f, "spin_factor({dim})"),
            Provenance::Custom { label } => write!(f, "custom({label})"),
        }
    }
}

impl Provenance {
    pub fn describe(&self) -> String {
        format!("{self:?}")
    }
}

/// Finite-dimensional commutative real algebra by structure constants.
/// Immutable after construction; all operations are pure.
#[derive(Clone)]
pub struct CommAlgebra<S: Scalar> {
    pub dim: usize,
    table: Table<S>,
    pub unit: Element<S>,
    pub basis_labels: Vec<String>,
    pub provenance: Provenance,
}

impl<S: Scalar> fmt::Debug for CommAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommAlgebra(dim {}, {:?})", self.dim, self.provenance)
    }
}

pub(crate) fn sparsify<S: Scalar>(dense: &[S]) -> SparseRow<S> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl<S: Scalar> CommAlgebra<S> {
    /// Accepts a table after verifying symmetry and the unit law.
    pub fn from_table(
        table: Table<S>,
        unit: Element<S>,
        basis_labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<Self, AlgebraError> {
        let dim = table.len();
        if table.iter().any(|r| r.len() != dim) || unit.dim() != dim || basis_labels.len() != dim {
            return Err(AlgebraError::BadShape);
        }
        let a = CommAlgebra { dim, table, unit, basis_labels, provenance };
        for i in 0..dim {
            for j in i..dim {
                let xy = a.basis_product(i, j);
                let yx = a.basis_product(j, i);
                if xy != yx {
                    return Err(AlgebraError::NotSymmetric(i, j));
                }
            }
        }
        for i in 0..dim {
            let e = Element::basis(dim, i);
            if a.jordan_mul(&a.unit.clone(), &e) != e {
                return Err(AlgebraError::UnitFails(i));
            }
        }
        Ok(a)
    }

    /// Spin factor ℝ1 ⊕ H of total dimension `d`: (s1+u)∘(t1+v) =
    /// (st + ⟨u,v⟩)1 + sv + tu on an orthonormal basis of H.
    pub fn spin_factor(d: usize) -> Result<CommAlgebra<S>, AlgebraError> {
        if d < 2 {
            return Err(AlgebraError::SpinDimension(d));
        }
        let mut table = vec![vec![SparseRow::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                table[i][j] = if i == 0 {
                    vec![(j, S::one())]
                } else if j == 0 {
                    vec![(i, S::one())]
                } else if i == j {
                    vec![(0, S::one())]
                } else {
                    SparseRow::new()
                };
            }
        }
        let mut labels = vec!["1".to_string()];
        labels.extend((1..d).map(|k| format!("u{k}")));
        CommAlgebra::from_table(
            table,
            Element::basis(d, 0),
            labels,
            Provenance::SpinFactor { dim: d },
        )
    }

    /// A *-ring viewed as a commutative algebra under a∘b = (ab+ba)/2.
    pub fn symmetrized_ring(ring: &StarRing) -> CommAlgebra<Rat> {
        let d = ring.dim;
        let half = Rat::from_frac(1, 2);
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let p = ring
                    .mul(&ring.basis_element(i), &ring.basis_element(j))
                    .add(&ring.mul(&ring.basis_element(j), &ring.basis_element(i)))
                    .scale(&half);
                table[i][j] = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
            }
        }
        let mut unit = Element::zero(d);
        unit.coeffs[ring.unit] = Rat::one();
        CommAlgebra::from_table(
            table,
            unit,
            ring.labels.clone(),
            Provenance::Custom { label: format!("sym({})", ring.name) },
        )
        .expect("symmetrization of a unital ring is commutative and unital")
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Element<S> {
        let mut out = Element::zero(self.dim);
        for (k, v) in &self.table[i][j] {
            out.coeffs[*k] = v.clone();
        }
        out
    }

    pub fn sparse_table(&self) -> &Table<S> {
        &self.table
    }

    pub fn basis_element(&self, k: usize) -> Element<S> {
        Element::basis(self.dim, k)
    }

    /// The commutative bilinear product x∘y.
    pub fn jordan_mul(&self, x: &Element<S>, y: &Element<S>) -> Element<S> {
        assert_eq!(x.dim(), self.dim, "element dimension mismatch");
        assert_eq!(y.dim(), self.dim, "element dimension mismatch");
        let mut out = vec![S::zero(); self.dim];
        for (i, cx) in x.coeffs.iter().enumerate() {
            if cx.is_zero() {
                continue;
            }
            for (j, cy) in y.coeffs.iter().enumerate() {
                if cy.is_zero() {
                    continue;
                }
                let c = cx.times(cy);
                for (k, v) in &self.table[i][j] {
                    out[*k] = out[*k].plus(&c.times(v));
                }
            }
        }
        Element { coeffs: out }
    }

    /// Product of two sparse coefficient rows, returned dense.
    pub fn mul_sparse(&self, a: &SparseRow<S>, b: &SparseRow<S>) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, cx) in a {
            for (j, cy) in b {
                let c = cx.times(cy);
                for (k, v) in &self.table[*i][*j] {
                    out[*k] = out[*k].plus(&c.times(v));
                }
            }
        }
        out
    }

    /// The triple product {a,b,c} = a∘(b∘c) − b∘(c∘a) + c∘(a∘b).
    pub fn triple_product(&self, a: &Element<S>, b: &Element<S>, c: &Element<S>) -> Element<S> {
        self.jordan_mul(a, &self.jordan_mul(b, c))
            .sub(&self.jordan_mul(b, &self.jordan_mul(c, a)))
            .add(&self.jordan_mul(c, &self.jordan_mul(a, b)))
    }

    /// Left-normed power x^n, n ≥ 1, via x^{n+1} = x ∘ x^n.
    pub fn power(&self, x: &Element<S>, n: usize) -> Element<S> {
        assert!(n >= 1, "powers start at x^1");
        let mut acc = x.clone();
        for _ in 1..n {
            acc = self.jordan_mul(x, &acc);
        }
        acc
    }

    /// Matrix of the multiplication operator T_x: y ↦ x∘y.
    pub fn mult_operator(&self, x: &Element<S>) -> LinearOperator<S> {
        assert_eq!(x.dim(), self.dim, "element dimension mismatch");
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.jordan_mul(x, &self.basis_element(j));
            for i in 0..self.dim {
                if !col.coeffs[i].is_zero() {
                    *m.at_mut(i, j) = col.coeffs[i].clone();
                }
            }
        }
        m
    }

    /// Echelonized basis of the smallest product-closed subspace containing
    /// the generators (and the unit, when asked). Closure by iterating
    /// products until the rank stabilizes.
    pub fn subalgebra_generated(
        &self,
        gens: &[Element<S>],
        with_unit: bool,
        tol: f64,
    ) -> Vec<Element<S>> {
        self.subalgebra_closure(gens, with_unit, tol).basis
    }

    /// Same closure, but also expresses the products in subalgebra
    /// coordinates so associativity can be decided inside the span.
    pub fn subalgebra_closure(
        &self,
        gens: &[Element<S>],
        with_unit: bool,
        tol: f64,
    ) -> SubAlgebra<S> {
        let mut ech = Echelon::new(self.dim, tol);
        if with_unit {
            ech.insert(self.unit.coeffs.clone());
        }
        for g in gens {
            assert_eq!(g.dim(), self.dim, "element dimension mismatch");
            ech.insert(g.coeffs.clone());
        }
        loop {
            let current: Vec<Vec<S>> = ech.basis().to_vec();
            let mut grew = false;
            for (i, a) in current.iter().enumerate() {
                for b in current.iter().skip(i) {
                    let p = self.jordan_mul(
                        &Element { coeffs: a.clone() },
                        &Element { coeffs: b.clone() },
                    );
                    if ech.insert(p.coeffs) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let basis: Vec<Element<S>> =
            ech.basis().iter().map(|v| Element { coeffs: v.clone() }).collect();
        let m = basis.len();
        let mut table = vec![vec![SparseRow::new(); m]; m];
        for i in 0..m {
            for j in i..m {
                let p = self.jordan_mul(&basis[i], &basis[j]);
                let coords = ech
                    .coords(&p.coeffs)
                    .expect("closure left a product outside the span");
                let row = sparsify(&coords);
                table[i][j] = row.clone();
                table[j][i] = row;
            }
        }
        SubAlgebra { basis, table, tol }
    }

    /// Canonical states for the algebra's provenance; see the module docs of
    /// [`crate::hermitian`] for the Hermitian families. Custom algebras get
    /// sampled-positive candidates only (a necessary condition, reported as
    /// such), and need a nonzero sampling budget.
    pub fn canonical_states(&self, samples: usize, seed: u64) -> Result<Vec<State<S>>, StateError> {
        match &self.provenance {
            Provenance::HermitianMatrix { .. } => Ok(hermitian::hermitian_states(self, samples, seed)),
            Provenance::SpinFactor { .. } => Ok(self.spin_states(samples, seed)),
            Provenance::Custom { .. } => self.sampled_states(samples, seed),
        }
    }

    fn spin_states(&self, samples: usize, seed: u64) -> Vec<State<S>> {
        use rand::Rng;
        let d = self.dim;
        let mut out = Vec::new();
        // μ_0: the unit-coefficient functional.
        let mut f = vec![S::zero(); d];
        f[0] = S::one();
        out.push(State { functional: f, normalized: true, kind: "spin[u=0]".into() });
        let mut rng = crate::sample::rng(seed);
        for t in 0..samples {
            if t % 2 == 0 {
                // Pure state from an exact rational point on the unit sphere.
                let u = crate::sample::rational_sphere_point(&mut rng, d - 1);
                let mut f = vec![S::one()];
                f.extend(u.iter().map(|c| S::from_rat(c)));
                out.push(State { functional: f, normalized: true, kind: format!("spin-pure[{t}]") });
            } else {
                // Interior state: ‖u‖ ≤ 1/2 by construction.
                let mut f = vec![S::one()];
                for _ in 1..d {
                    let num = rng.gen_range(-2i64..=2);
                    f.push(S::from_rat(&Rat::from_frac(num, 4 * (d as i64))));
                }
                out.push(State { functional: f, normalized: true, kind: format!("spin-mixed[{t}]") });
            }
        }
        out
    }

    fn sampled_states(&self, samples: usize, seed: u64) -> Result<Vec<State<S>>, StateError> {
        use rand::Rng;
        if samples == 0 {
            return Err(StateError::UnknownProvenance);
        }
        let mut rng = crate::sample::rng(seed);
        let squares: Vec<Element<S>> = (0..32)
            .map(|_| {
                let y = crate::sample::random_element(self, &mut rng, 2);
                self.jordan_mul(&y, &y)
            })
            .collect();
        let mut out = Vec::new();
        'outer: for t in 0..samples * 20 {
            if out.len() >= samples {
                break;
            }
            let cand: Vec<S> =
                (0..self.dim).map(|_| S::from_i64(rng.gen_range(-3i64..=3))).collect();
            let on_unit = self
                .unit
                .coeffs
                .iter()
                .zip(&cand)
                .fold(S::zero(), |acc, (u, c)| acc.plus(&u.times(c)));
            let Some(inv) = on_unit.inverse() else { continue };
            let cand: Vec<S> = cand.iter().map(|c| c.times(&inv)).collect();
            let state =
                State { functional: cand, normalized: true, kind: format!("sampled[{t}]") };
            for sq in &squares {
                if state.eval(sq).to_f64() < 0.0 {
                    continue 'outer;
                }
            }
            out.push(state);
        }
        if out.is_empty() {
            return Err(StateError::UnknownProvenance);
        }
        Ok(out)
    }

    /// Explicit scalar conversion; never applied silently.
    pub fn map_scalars<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> CommAlgebra<T> {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().map(|(k, v)| (*k, f(v))).collect())
                    .collect()
            })
            .collect();
        CommAlgebra {
            dim: self.dim,
            table,
            unit: self.unit.map_scalars(f),
            basis_labels: self.basis_labels.clone(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn to_f64(&self) -> CommAlgebra<f64> {
        self.map_scalars(&|c| c.to_f64())
    }

    pub fn render(&self, x: &Element<S>) -> String {
        let mut parts = Vec::new();
        for (k, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}·{}", c, self.basis_labels[k]));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl CommAlgebra<Rat> {
    pub fn to_sqrt5(&self) -> CommAlgebra<Sqrt5> {
        self.map_scalars(&|c| Sqrt5::from_rat(c.clone()))
    }
}

/// Product-closed subspace with its own structure constants, as returned by
/// [`CommAlgebra::subalgebra_closure`].
pub struct SubAlgebra<S: Scalar> {
    pub basis: Vec<Element<S>>,
    pub table: Table<S>,
    pub tol: f64,
}

impl<S: Scalar> SubAlgebra<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// First basis triple violating associativity, if any.
    pub fn associator_witness(&self) -> Option<(usize, usize, usize)> {
        table_associator_witness(&self.table, self.tol)
    }
}

/// Exhaustive basis check of (x∘y)∘z = x∘(y∘z) for a structure-constant
/// table; exact for exact scalars.
pub fn table_associator_witness<S: Scalar>(
    table: &Table<S>,
    tol: f64,
) -> Option<(usize, usize, usize)> {
    let dim = table.len();
    let mul = |a: &SparseRow<S>, b: &SparseRow<S>| -> Vec<S> {
        let mut out = vec![S::zero(); dim];
        for (i, cx) in a {
            for (j, cy) in b {
                let c = cx.times(cy);
                for (k, v) in &table[*i][*j] {
                    out[*k] = out[*k].plus(&c.times(v));
                }
            }
        }
        out
    };
    for i in 0..dim {
        for j in 0..dim {
            let ij = sparsify(&mul(&vec![(i, S::one())], &vec![(j, S::one())]));
            for k in 0..dim {
                let jk = sparsify(&mul(&vec![(j, S::one())], &vec![(k, S::one())]));
                let lhs = mul(&ij, &vec![(k, S::one())]);
                let rhs = mul(&vec![(i, S::one())], &jk);
                let defect_nonzero = lhs
                    .iter()
                    .zip(&rhs)
                    .any(|(a, b)| !a.minus(b).is_negligible(tol));
                if defect_nonzero {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Normalized positive linear functional candidate μ, as a dual coefficient
/// vector: μ(x) = Σ μ_k x_k.
///
/// At finite dimension the dual pairing carries all the topological content
/// of the predual: every linear functional is continuous and all the weak
/// topologies coincide, so the state space is just this vector with its
/// normalization flag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct State<S> {
    pub functional: Vec<S>,
    pub normalized: bool,
    pub kind: String,
}

impl<S: Scalar> State<S> {
    pub fn eval(&self, x: &Element<S>) -> S {
        assert_eq!(self.functional.len(), x.dim(), "state/element dimension mismatch");
        self.functional
            .iter()
            .zip(&x.coeffs)
            .fold(S::zero(), |acc, (f, c)| acc.plus(&f.times(c)))
    }

    /// The functional μ∘U (first condition, then measure).
    pub fn compose(&self, u: &LinearOperator<S>) -> State<S> {
        State {
            functional: u.apply_left(&self.functional),
            normalized: false,
            kind: format!("{}∘U", self.kind),
        }
    }

    pub fn map_scalars<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> State<T> {
        State {
            functional: self.functional.iter().map(f).collect(),
            normalized: self.normalized,
            kind: self.kind.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{
        diag_element, diag_sum, hermitian_matrix_algebra, offdiag_element, rank_one_candidate,
        to_matrix, triple_matrix_product_element,
    };
    use crate::sample;

    fn ri(n: i64) -> Rat {
        Rat::from_i64(n)
    }

    fn h_n(ring: &str, n: usize) -> CommAlgebra<Rat> {
        hermitian_matrix_algebra(&Arc::new(StarRing::named(ring).unwrap()), n)
    }

    #[test]
    fn hermitian_dimension_formula() {
        assert_eq!(h_n("reals", 1).dim, 1);
        assert_eq!(h_n("reals", 2).dim, 3);
        assert_eq!(h_n("complex", 3).dim, 9);
        assert_eq!(h_n("quaternions", 5).dim, 45);
        assert_eq!(h_n("octonions", 3).dim, 27);
        assert_eq!(h_n("octonions", 4).dim, 52);
        // Non-scalar self-adjoint part: dim H_2 = 2·8 + 16.
        let bi = h_n("bioctonions", 2);
        assert_eq!(bi.dim, 32);
    }

    #[test]
    fn unit_law_and_commutativity() {
        let a = h_n("octonions", 3);
        let mut rng = sample::rng(7);
        for _ in 0..20 {
            let x = sample::random_element(&a, &mut rng, 2);
            let y = sample::random_element(&a, &mut rng, 2);
            assert_eq!(a.jordan_mul(&a.unit, &x), x);
            assert_eq!(a.jordan_mul(&x, &y), a.jordan_mul(&y, &x));
        }
    }

    #[test]
    fn h2r_basic_products() {
        let a = h_n("reals", 2);
        // Basis order: a11, a22, m12[1].
        let a11 = diag_element(&a, 0);
        let m12 = offdiag_element(&a, 0, 1, &StarRing::reals().one());
        let p = a.jordan_mul(&a11, &m12);
        assert_eq!(p, m12.scale(&Rat::from_frac(1, 2)));
        let t = a.mult_operator(&a11);
        // T_{a11} = diag(1, 0, 1/2): eigenvalues {1, 1/2, 0}.
        assert_eq!(t.at(0, 0), &ri(1));
        assert_eq!(t.at(1, 1), &ri(0));
        assert_eq!(t.at(2, 2), &Rat::from_frac(1, 2));
    }

    #[test]
    fn spin_factor_products() {
        let a = CommAlgebra::<Rat>::spin_factor(4).unwrap();
        let u = a.basis_element(1);
        let v = a.basis_element(2);
        assert_eq!(a.jordan_mul(&u, &u), a.unit);
        assert!(a.jordan_mul(&u, &v).is_zero());
        assert!(CommAlgebra::<Rat>::spin_factor(1).is_err());
        // (e − e')² = 1 for e = ½(1+u) with a rational unit vector.
        let e = sample::spin_event(&a, &[Rat::from_frac(3, 5), Rat::from_frac(4, 5), ri(0)]);
        let ec = a.unit.sub(&e);
        let d = e.sub(&ec);
        assert_eq!(a.jordan_mul(&d, &d), a.unit);
        assert_eq!(a.jordan_mul(&e, &e), e);
    }

    #[test]
    fn triple_product_examples() {
        let a = h_n("reals", 2);
        let mut rng = sample::rng(3);
        let x = sample::random_element(&a, &mut rng, 3);
        assert_eq!(a.triple_product(&a.unit, &x, &a.unit), x);
        // {e, 1−e, e} = 0 for idempotents.
        let e = diag_element(&a, 0);
        let ec = a.unit.sub(&e);
        assert!(a.triple_product(&e, &ec, &e).is_zero());
        // {e, f, e} = efe as a matrix product over an associative ring.
        for _ in 0..10 {
            let f = sample::random_element(&a, &mut rng, 3);
            let lhs = a.triple_product(&e, &f, &e);
            let rhs = triple_matrix_product_element(&a, &e, &f, &e).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn powers() {
        let a = h_n("reals", 3);
        let e = diag_element(&a, 1);
        assert_eq!(a.power(&e, 1), e);
        assert_eq!(a.power(&e, 5), e);
        let t1 = a.unit.scale(&ri(3));
        assert_eq!(a.power(&t1, 3), a.unit.scale(&ri(27)));
    }

    #[test]
    fn mult_operator_is_linear() {
        let a = CommAlgebra::<Rat>::spin_factor(5).unwrap();
        let mut rng = sample::rng(11);
        let x = sample::random_element(&a, &mut rng, 2);
        let y = sample::random_element(&a, &mut rng, 2);
        let sum = a.mult_operator(&x.add(&y));
        assert_eq!(sum, a.mult_operator(&x).add(&a.mult_operator(&y)));
        assert_eq!(a.mult_operator(&a.unit), crate::linalg::Matrix::identity(a.dim));
    }

    #[test]
    fn subalgebra_generated_examples() {
        let a = h_n("reals", 3);
        // Idempotent with the unit: span{1, e}.
        let e = diag_element(&a, 0);
        assert_eq!(a.subalgebra_generated(std::slice::from_ref(&e), true, 0.0).len(), 2);
        assert_eq!(a.subalgebra_generated(std::slice::from_ref(&a.unit), true, 0.0).len(), 1);
        // diag(1,2,3): three distinct eigenvalues give rank 3.
        let x = diag_element(&a, 0)
            .add(&diag_element(&a, 1).scale(&ri(2)))
            .add(&diag_element(&a, 2).scale(&ri(3)));
        let basis = a.subalgebra_generated(&[x], true, 0.0);
        assert_eq!(basis.len(), 3);
        // Orthogonal idempotent triple: rank 3 and associative.
        let gens = vec![diag_element(&a, 0), diag_element(&a, 1), diag_element(&a, 2)];
        let closure = a.subalgebra_closure(&gens, false, 0.0);
        assert_eq!(closure.dim(), 3);
        assert!(closure.associator_witness().is_none());
        // Idempotence: re-running on the output reproduces the span.
        let again = a.subalgebra_generated(&basis_to_vec(&closure.basis), false, 0.0);
        assert_eq!(again.len(), 3);
    }

    fn basis_to_vec(b: &[Element<Rat>]) -> Vec<Element<Rat>> {
        b.to_vec()
    }

    #[test]
    fn whole_algebra_closure_is_not_associative_for_h2r() {
        let a = h_n("reals", 2);
        let gens: Vec<_> = (0..a.dim).map(|k| a.basis_element(k)).collect();
        let closure = a.subalgebra_closure(&gens, true, 0.0);
        assert_eq!(closure.dim(), 3);
        assert!(closure.associator_witness().is_some());
    }

    #[test]
    fn canonical_states_normalize_and_respect_squares() {
        for a in [h_n("reals", 2), h_n("complex", 3), h_n("octonions", 3)] {
            let states = a.canonical_states(4, 5).unwrap();
            assert!(!states.is_empty());
            let mut rng = sample::rng(23);
            for mu in &states {
                assert_eq!(mu.eval(&a.unit), ri(1));
                for _ in 0..25 {
                    let y = sample::random_element(&a, &mut rng, 2);
                    let sq = a.jordan_mul(&y, &y);
                    assert!(mu.eval(&sq).sign() != std::cmp::Ordering::Less);
                }
            }
        }
        // Trace state value on a diagonal unit: 1/n.
        let a = h_n("reals", 2);
        let trace = &a.canonical_states(0, 1).unwrap()[0];
        assert_eq!(trace.eval(&diag_element(&a, 0)), Rat::from_frac(1, 2));
        // Spin states: μ_0(s·1 + w) = s.
        let s = CommAlgebra::<Rat>::spin_factor(4).unwrap();
        let mu0 = &s.canonical_states(3, 2).unwrap()[0];
        let x = s.unit.scale(&ri(7)).add(&s.basis_element(2).scale(&ri(5)));
        assert_eq!(mu0.eval(&x), ri(7));
    }

    #[test]
    fn hermitian_matrix_roundtrip_and_rank_one() {
        let a = h_n("complex", 3);
        let mut rng = sample::rng(17);
        for _ in 0..10 {
            let x = sample::random_element(&a, &mut rng, 3);
            let m = to_matrix(&a, &x);
            assert_eq!(crate::hermitian::from_matrix(&a, &m).unwrap(), x);
        }
        let (ring, _, _) = crate::hermitian::meta_of(&a).unwrap();
        let v = crate::hermitian::random_vector(ring, 3, &mut rng, 2);
        if let Some(p) = rank_one_candidate(&a, &v) {
            assert_eq!(a.jordan_mul(&p, &p), p);
        }
        // Octonionic rank-one from a two-slot vector stays exactly idempotent.
        let o3 = h_n("octonions", 3);
        let (oring, _, _) = crate::hermitian::meta_of(&o3).unwrap();
        let mut v = crate::hermitian::random_vector(oring, 3, &mut rng, 2);
        v[2] = crate::starring::RingElement::zero(8);
        if let Some(p) = rank_one_candidate(&o3, &v) {
            assert_eq!(o3.jordan_mul(&p, &p), p);
        }
    }

    #[test]
    fn symmetrized_ring_is_commutative_unital() {
        let s = StarRing::named("sedenions").unwrap();
        let a = CommAlgebra::<Rat>::symmetrized_ring(&s);
        assert_eq!(a.dim, 16);
        let mut rng = sample::rng(9);
        let x = sample::random_element(&a, &mut rng, 2);
        assert_eq!(a.jordan_mul(&a.unit, &x), x);
    }

    #[test]
    fn diag_sum_builds_block_events() {
        let a = h_n("reals", 4);
        let e = diag_sum(&a, &[0, 1]);
        assert_eq!(a.jordan_mul(&e, &e), e);
        assert_eq!(crate::hermitian::real_trace(&a, &e), ri(2));
    }

    #[test]
    fn rejects_asymmetric_or_nonunital_tables() {
        // x∘y ≠ y∘x
        let bad: Table<Rat> = vec![
            vec![vec![(0, ri(1))], vec![(1, ri(1))]],
            vec![vec![(0, ri(1))], vec![(1, ri(1))]],
        ];
        let unit = Element::basis(2, 0);
        let labels = vec!["1".into(), "a".into()];
        let err = CommAlgebra::from_table(
            bad,
            unit,
            labels,
            Provenance::Custom { label: "bad".into() },
        );
        assert!(matches!(err, Err(AlgebraError::NotSymmetric(_, _))));
    }
}
