//! Finite-dimensional bimodules given by action matrices, and the linear
//! systems describing maps between them.

use crate::algebra::{AlgebraMorphism, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{solve_linear, AffineSolution, EchelonBuilder, Matrix};
use crate::subspace::Subspace;

/// A `(left, right)`-bimodule on F_p^dim.
///
/// `left_action[i]` is the matrix of `m -> e_i m`; `right_action[j]` the
/// matrix of `m -> m e_j`. One-sided modules use the prime field as the
/// missing side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: FiniteAlgebra,
    right: FiniteAlgebra,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        left: FiniteAlgebra,
        right: FiniteAlgebra,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self> {
        let m = Bimodule::new_unchecked(left, right, dim, left_action, right_action)?;
        let v = m.violations();
        if !v.is_empty() {
            return Err(Error::InvalidBimodule(v.join("; ")));
        }
        Ok(m)
    }

    /// Shape checks only.
    pub fn new_unchecked(
        left: FiniteAlgebra,
        right: FiniteAlgebra,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::FieldMismatch(left.field().modulus(), right.field().modulus()));
        }
        if left_action.len() != left.dim() || right_action.len() != right.dim() {
            return Err(Error::dims("one action matrix per algebra basis element"));
        }
        if left_action
            .iter()
            .chain(&right_action)
            .any(|a| a.rows() != dim || a.cols() != dim)
        {
            return Err(Error::dims(format!("action matrices must be {dim}x{dim}")));
        }
        Ok(Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        })
    }

    /// An algebra as a bimodule over itself.
    pub fn regular(alg: &FiniteAlgebra) -> Self {
        let left_action = (0..alg.dim()).map(|i| alg.left_mul_matrix(&alg.basis(i))).collect();
        let right_action = (0..alg.dim()).map(|i| alg.right_mul_matrix(&alg.basis(i))).collect();
        Bimodule {
            left: alg.clone(),
            right: alg.clone(),
            dim: alg.dim(),
            left_action,
            right_action,
        }
    }

    /// A left module, with the prime field acting on the right.
    pub fn left_module(alg: &FiniteAlgebra, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let k = FiniteAlgebra::prime_field(alg.field());
        let id = vec![Matrix::identity(alg.field(), dim)];
        Bimodule::new(alg.clone(), k, dim, action, id)
    }

    /// A right module, with the prime field acting on the left.
    pub fn right_module(alg: &FiniteAlgebra, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let k = FiniteAlgebra::prime_field(alg.field());
        let id = vec![Matrix::identity(alg.field(), dim)];
        Bimodule::new(k, alg.clone(), dim, id, action)
    }

    /// The zero module.
    pub fn zero(left: &FiniteAlgebra, right: &FiniteAlgebra) -> Self {
        let f = left.field();
        Bimodule {
            left: left.clone(),
            right: right.clone(),
            dim: 0,
            left_action: vec![Matrix::zeros(f, 0, 0); left.dim()],
            right_action: vec![Matrix::zeros(f, 0, 0); right.dim()],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_alg(&self) -> &FiniteAlgebra {
        &self.left
    }

    pub fn right_alg(&self) -> &FiniteAlgebra {
        &self.right
    }

    pub fn left_action(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Matrix] {
        &self.right_action
    }

    /// Matrix of `m -> a m` for a general element `a`.
    pub fn left_act(&self, a: &[u32]) -> Matrix {
        combine(self.field(), self.dim, &self.left_action, a)
    }

    /// Matrix of `m -> m b` for a general element `b`.
    pub fn right_act(&self, b: &[u32]) -> Matrix {
        combine(self.field(), self.dim, &self.right_action, b)
    }

    /// Pull the left action back along `i: B -> left_alg`.
    pub fn restrict_left(&self, i: &AlgebraMorphism) -> Result<Bimodule> {
        if i.target() != &self.left {
            return Err(Error::AlgebraMismatch("restriction target is not the left algebra".into()));
        }
        let left_action = (0..i.source().dim())
            .map(|j| self.left_act(&i.apply(&i.source().basis(j))))
            .collect();
        Ok(Bimodule {
            left: i.source().clone(),
            right: self.right.clone(),
            dim: self.dim,
            left_action,
            right_action: self.right_action.clone(),
        })
    }

    /// Pull the right action back along `i: B -> right_alg`.
    pub fn restrict_right(&self, i: &AlgebraMorphism) -> Result<Bimodule> {
        if i.target() != &self.right {
            return Err(Error::AlgebraMismatch("restriction target is not the right algebra".into()));
        }
        let right_action = (0..i.source().dim())
            .map(|j| self.right_act(&i.apply(&i.source().basis(j))))
            .collect();
        Ok(Bimodule {
            left: self.left.clone(),
            right: i.source().clone(),
            dim: self.dim,
            left_action: self.left_action.clone(),
            right_action,
        })
    }

    /// Keep only the left action.
    pub fn forget_right(&self) -> Bimodule {
        let k = FiniteAlgebra::prime_field(self.field());
        Bimodule {
            left: self.left.clone(),
            right: k,
            dim: self.dim,
            left_action: self.left_action.clone(),
            right_action: vec![Matrix::identity(self.field(), self.dim)],
        }
    }

    /// Keep only the right action.
    pub fn forget_left(&self) -> Bimodule {
        let k = FiniteAlgebra::prime_field(self.field());
        Bimodule {
            left: k,
            right: self.right.clone(),
            dim: self.dim,
            left_action: vec![Matrix::identity(self.field(), self.dim)],
            right_action: self.right_action.clone(),
        }
    }

    /// Restrict to an invariant subspace. Returns `None` if `sub` is not a
    /// sub-bimodule. The result uses the RREF basis of `sub`.
    pub fn submodule(&self, sub: &Subspace) -> Option<Bimodule> {
        let inc = sub.inclusion();
        let restrict = |a: &Matrix| sub.coords_matrix(&a.mul(&inc));
        let left_action = self.left_action.iter().map(restrict).collect::<Option<Vec<_>>>()?;
        let right_action = self.right_action.iter().map(restrict).collect::<Option<Vec<_>>>()?;
        Some(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: sub.dim(),
            left_action,
            right_action,
        })
    }

    /// Quotient by a sub-bimodule, with the projection onto it.
    pub fn quotient(&self, sub: &Subspace) -> Option<(Bimodule, Matrix)> {
        self.submodule(sub)?;
        let (project, section) = sub.quotient_maps();
        let act = |a: &Matrix| project.mul(a).mul(&section);
        let q = Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: project.rows(),
            left_action: self.left_action.iter().map(act).collect(),
            right_action: self.right_action.iter().map(act).collect(),
        };
        Some((q, project))
    }

    /// Every violated bimodule law, as readable messages.
    pub fn violations(&self) -> Vec<String> {
        let f = self.field();
        let id = Matrix::identity(f, self.dim);
        let mut out = Vec::new();
        if self.left_act(self.left.unit()) != id {
            out.push("left action of 1 is not the identity".into());
        }
        if self.right_act(self.right.unit()) != id {
            out.push("right action of 1 is not the identity".into());
        }
        for i in 0..self.left.dim() {
            for j in 0..self.left.dim() {
                let lhs = self.left_act(self.left.product_of_basis(i, j));
                if lhs != self.left_action[i].mul(&self.left_action[j]) {
                    out.push(format!("left action not multiplicative at (e{i}, e{j})"));
                }
            }
        }
        for i in 0..self.right.dim() {
            for j in 0..self.right.dim() {
                let lhs = self.right_act(self.right.product_of_basis(i, j));
                if lhs != self.right_action[j].mul(&self.right_action[i]) {
                    out.push(format!("right action not anti-multiplicative at (e{i}, e{j})"));
                }
            }
        }
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    out.push(format!("actions of left e{i} and right e{j} do not commute"));
                }
            }
        }
        out
    }

    /// Whether `m: self -> target` commutes with both actions.
    pub fn is_map_to(&self, target: &Bimodule, m: &Matrix) -> bool {
        m.rows() == target.dim
            && m.cols() == self.dim
            && self.left == target.left
            && self.right == target.right
            && self
                .left_action
                .iter()
                .zip(&target.left_action)
                .all(|(a, b)| m.mul(a) == b.mul(m))
            && self
                .right_action
                .iter()
                .zip(&target.right_action)
                .all(|(a, b)| m.mul(a) == b.mul(m))
    }

    /// Equations for bimodule maps `self -> target`.
    pub fn hom_system(&self, target: &Bimodule) -> Result<HomSystem> {
        if self.left != target.left || self.right != target.right {
            return Err(Error::AlgebraMismatch("bimodules over different algebras".into()));
        }
        let mut sys = HomSystem::new(self.field(), target.dim, self.dim);
        for (a, b) in self.left_action.iter().zip(&target.left_action) {
            sys.intertwine(a, b);
        }
        for (a, b) in self.right_action.iter().zip(&target.right_action) {
            sys.intertwine(a, b);
        }
        Ok(sys)
    }

    /// Smallest sub-bimodule containing `v`.
    pub fn generated_by(&self, vectors: &[Vec<u32>]) -> Subspace {
        let f = self.field();
        let mut b = EchelonBuilder::new(f, self.dim);
        let mut frontier: Vec<Vec<u32>> = Vec::new();
        for v in vectors {
            if b.insert(v) {
                frontier.push(v.clone());
            }
        }
        while let Some(v) = frontier.pop() {
            for a in self.left_action.iter().chain(&self.right_action) {
                let w = a.apply(&v);
                if b.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        Subspace::from_builder(f, self.dim, b)
    }

    /// A generating set, chosen greedily from the standard basis.
    pub fn generators(&self) -> Vec<Vec<u32>> {
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut span = Subspace::zero(self.field(), self.dim);
        for i in 0..self.dim {
            let e = crate::subspace::unit_vector(self.dim, i);
            if !span.contains(&e) {
                gens.push(e);
                span = self.generated_by(&gens);
            }
        }
        gens
    }
}

fn combine(f: PrimeField, dim: usize, mats: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut out = Matrix::zeros(f, dim, dim);
    for (m, &c) in mats.iter().zip(coeffs) {
        out.axpy(c, m);
    }
    out
}

/// A map between bimodules that commutes with both actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    source: Bimodule,
    target: Bimodule,
    matrix: Matrix,
}

impl BimoduleMap {
    pub fn new(source: Bimodule, target: Bimodule, matrix: Matrix) -> Result<Self> {
        if !source.is_map_to(&target, &matrix) {
            return Err(Error::InvalidMorphism("matrix does not commute with the actions".into()));
        }
        Ok(BimoduleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Bimodule {
        &self.source
    }

    pub fn target(&self) -> &Bimodule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// Linear equations in the entries of an unknown `rows x cols` matrix `X`.
///
/// Unknown `X[r][c]` has index `r * cols + c`.
#[derive(Clone, Debug)]
pub struct HomSystem {
    field: PrimeField,
    rows: usize,
    cols: usize,
    equations: EchelonBuilder,
}

impl HomSystem {
    pub fn new(field: PrimeField, rows: usize, cols: usize) -> Self {
        HomSystem {
            field,
            rows,
            cols,
            equations: EchelonBuilder::new(field, rows * cols + 1),
        }
    }

    fn n(&self) -> usize {
        self.rows * self.cols
    }

    /// `X a = b X` with `a` square of size `cols`, `b` square of size `rows`.
    pub fn intertwine(&mut self, a: &Matrix, b: &Matrix) {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        for r in 0..rows {
            for c in 0..cols {
                let mut eq = vec![0u32; self.n() + 1];
                for k in 0..cols {
                    let x = a.get(k, c);
                    if x != 0 {
                        eq[r * cols + k] = f.add(eq[r * cols + k], x);
                    }
                }
                for k in 0..rows {
                    let x = b.get(r, k);
                    if x != 0 {
                        eq[k * cols + c] = f.sub(eq[k * cols + c], x);
                    }
                }
                self.equations.insert(&eq);
            }
        }
    }

    /// `l X = rhs` with `l` of shape `u x rows` and `rhs` of shape `u x cols`.
    pub fn left_compose(&mut self, l: &Matrix, rhs: &Matrix) {
        let f = self.field;
        let cols = self.cols;
        for u in 0..l.rows() {
            for c in 0..cols {
                let mut eq = vec![0u32; self.n() + 1];
                for k in 0..self.rows {
                    eq[k * cols + c] = l.get(u, k);
                }
                eq[self.n()] = f.neg(rhs.get(u, c));
                self.equations.insert(&eq);
            }
        }
    }

    /// `X r = rhs` with `r` of shape `cols x u` and `rhs` of shape `rows x u`.
    pub fn right_compose(&mut self, r: &Matrix, rhs: &Matrix) {
        let f = self.field;
        let cols = self.cols;
        for row in 0..self.rows {
            for u in 0..r.cols() {
                let mut eq = vec![0u32; self.n() + 1];
                for k in 0..cols {
                    eq[row * cols + k] = r.get(k, u);
                }
                eq[self.n()] = f.neg(rhs.get(row, u));
                self.equations.insert(&eq);
            }
        }
    }

    /// `X applied to v equals w`.
    pub fn maps_vector(&mut self, v: &[u32], w: &[u32]) {
        let f = self.field;
        for r in 0..self.rows {
            let mut eq = vec![0u32; self.n() + 1];
            for (c, &x) in v.iter().enumerate() {
                eq[r * self.cols + c] = x;
            }
            eq[self.n()] = f.neg(w[r]);
            self.equations.insert(&eq);
        }
    }

    /// The affine space of solutions, as flattened matrices.
    pub fn solve(self) -> Option<AffineSolution> {
        let n = self.n();
        let (rows, _) = self.equations.into_rref();
        let f = self.field;
        let a = Matrix::from_rows_with_cols(
            f,
            &rows.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>(),
            n,
        )
        .expect("consistent widths");
        // equations are stored as `coeffs . x + const = 0`
        let b: Vec<u32> = rows.iter().map(|r| f.neg(r[n])).collect();
        solve_linear(&a, &b).expect("consistent shapes")
    }

    pub fn to_matrix(&self, flat: &[u32]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| flat[r * self.cols + c])
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

/// All bimodule maps `source -> target` as a basis of matrices.
pub fn hom_basis(source: &Bimodule, target: &Bimodule) -> Result<Vec<Matrix>> {
    let sys = source.hom_system(target)?;
    let (rows, cols) = sys.shape();
    let f = source.field();
    let sol = sys.solve().expect("homogeneous systems are consistent");
    Ok(sol
        .kernel
        .iter()
        .map(|k| Matrix::from_fn(f, rows, cols, |r, c| k[r * cols + c]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn regular_bimodules_are_valid() {
        for alg in [
            FiniteAlgebra::matrix_algebra(f(2), 2),
            FiniteAlgebra::dual_numbers(f(3)),
            FiniteAlgebra::split(f(5), 3),
        ] {
            assert!(Bimodule::regular(&alg).violations().is_empty());
        }
    }

    #[test]
    fn broken_action_is_reported() {
        let alg = FiniteAlgebra::dual_numbers(f(2));
        // x acting as identity is not multiplicative: x*x = 0 but I*I = I.
        let acts = vec![Matrix::identity(f(2), 1), Matrix::identity(f(2), 1)];
        assert!(Bimodule::left_module(&alg, 1, acts).is_err());
    }

    #[test]
    fn bimodule_endomorphisms_of_a_commutative_algebra() {
        // End of A as an A-bimodule is A itself when A is commutative.
        let alg = FiniteAlgebra::dual_numbers(f(3));
        let reg = Bimodule::regular(&alg);
        assert_eq!(hom_basis(&reg, &reg).unwrap().len(), 2);
        // M_2 is central simple: bimodule endos are scalars.
        let m2 = Bimodule::regular(&FiniteAlgebra::matrix_algebra(f(2), 2));
        assert_eq!(hom_basis(&m2, &m2).unwrap().len(), 1);
    }

    #[test]
    fn generators_generate() {
        let m2 = Bimodule::regular(&FiniteAlgebra::matrix_algebra(f(2), 2));
        let g = m2.generators();
        assert_eq!(g.len(), 1);
        assert_eq!(m2.generated_by(&g).dim(), 4);
    }

    #[test]
    fn hom_system_with_constraints() {
        let field = f(3);
        let reg = Bimodule::regular(&FiniteAlgebra::split(field, 2));
        let mut sys = reg.hom_system(&reg).unwrap();
        sys.maps_vector(&[1, 1], &[1, 2]);
        let sol = sys.solve().unwrap();
        assert_eq!(sol.dim(), 0);
        let x = Matrix::from_fn(field, 2, 2, |r, c| sol.particular[r * 2 + c]);
        assert_eq!(x.to_rows(), vec![vec![1, 0], vec![0, 2]]);
    }

    #[test]
    fn right_composition_constraint() {
        // X: F_3^2 -> F_3 with X (1, 1)^T = 2 and X (0, 1)^T = 1
        let field = f(3);
        let mut sys = HomSystem::new(field, 1, 2);
        let r = Matrix::from_rows(field, &[vec![1, 0], vec![1, 1]]).unwrap();
        let rhs = Matrix::from_rows(field, &[vec![2, 1]]).unwrap();
        sys.right_compose(&r, &rhs);
        let sol = sys.solve().unwrap();
        assert_eq!(sol.dim(), 0);
        assert_eq!(sol.particular, vec![1, 1]);
    }
}
