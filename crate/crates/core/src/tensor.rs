//! Tensor products over a base algebra, materialized as explicit quotients
//! of the field tensor product.

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{EchelonBuilder, Matrix};
use crate::subspace::Subspace;

/// `M (x)_B N` for an `(X, B)`-bimodule `M` and a `(B, Y)`-bimodule `N`.
///
/// The field tensor product `M (x) N` has basis `e_a (x) f_c` at index
/// `a * dim N + c`. `project` maps it onto the quotient by the balanced
/// relations `m b (x) n - m (x) b n`; `lift` is a linear section that sends
/// every quotient basis vector to a single pure tensor `e_a (x) f_c`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    left: Bimodule,
    right: Bimodule,
    space: Bimodule,
    relations: Subspace,
    project: Matrix,
    lift: Matrix,
}

pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<TensorSpace> {
    TensorSpace::new(m, n)
}

impl TensorSpace {
    pub fn new(m: &Bimodule, n: &Bimodule) -> Result<Self> {
        if m.right_alg() != n.left_alg() {
            return Err(Error::AlgebraMismatch(
                "right algebra of the left factor differs from left algebra of the right factor".into(),
            ));
        }
        let f = m.field();
        let (dm, dn) = (m.dim(), n.dim());
        let full = dm * dn;
        let mut rel = EchelonBuilder::new(f, full);
        for (rho, lam) in m.right_action().iter().zip(n.left_action()) {
            for a in 0..dm {
                for c in 0..dn {
                    if rel.is_full() {
                        break;
                    }
                    // (e_a b) (x) f_c - e_a (x) (b f_c)
                    let mut v = vec![0u32; full];
                    for a2 in 0..dm {
                        let x = rho.get(a2, a);
                        if x != 0 {
                            let i = a2 * dn + c;
                            v[i] = f.add(v[i], x);
                        }
                    }
                    for c2 in 0..dn {
                        let x = lam.get(c2, c);
                        if x != 0 {
                            let i = a * dn + c2;
                            v[i] = f.sub(v[i], x);
                        }
                    }
                    rel.insert(&v);
                }
            }
        }
        let relations = Subspace::from_builder(f, full, rel);
        let (project, lift) = relations.quotient_maps();
        let idn = Matrix::identity(f, dn);
        let idm = Matrix::identity(f, dm);
        let left_action = m
            .left_action()
            .iter()
            .map(|a| project.mul(&a.kron(&idn)).mul(&lift))
            .collect();
        let right_action = n
            .right_action()
            .iter()
            .map(|b| project.mul(&idm.kron(b)).mul(&lift))
            .collect();
        let space = Bimodule::new_unchecked(
            m.left_alg().clone(),
            n.right_alg().clone(),
            project.rows(),
            left_action,
            right_action,
        )?;
        debug_assert!(space.violations().is_empty());
        Ok(TensorSpace {
            left: m.clone(),
            right: n.clone(),
            space,
            relations,
            project,
            lift,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn full_dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    pub fn left(&self) -> &Bimodule {
        &self.left
    }

    pub fn right(&self) -> &Bimodule {
        &self.right
    }

    /// The tensor product with its outer actions.
    pub fn space(&self) -> &Bimodule {
        &self.space
    }

    pub fn project(&self) -> &Matrix {
        &self.project
    }

    pub fn lift(&self) -> &Matrix {
        &self.lift
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// The class of `x (x) y`.
    pub fn pure(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.project.apply(&kron_vec(self.field(), x, y))
    }

    /// The class of `e_a (x) f_c`.
    pub fn pure_basis(&self, a: usize, c: usize) -> Vec<u32> {
        self.project.col(a * self.right.dim() + c)
    }

    /// The pure tensor `e_a (x) f_c` that quotient basis vector `k` lifts to.
    pub fn lifted_pair(&self, k: usize) -> (usize, usize) {
        let idx = (0..self.full_dim())
            .find(|&i| self.lift.get(i, k) != 0)
            .expect("section sends basis vectors to unit vectors");
        (idx / self.right.dim(), idx % self.right.dim())
    }

    /// Coefficients of a lift of `v` in the field tensor product, as a
    /// `dim M x dim N` table.
    pub fn lift_table(&self, v: &[u32]) -> Vec<Vec<u32>> {
        let full = self.lift.apply(v);
        full.chunks(self.right.dim().max(1)).map(|c| c.to_vec()).collect()
    }

    /// Whether a linear map defined on the field tensor product vanishes on
    /// the balanced relations, i.e. descends to the quotient.
    pub fn kills_relations(&self, full_map: &Matrix) -> bool {
        self.relations
            .basis()
            .iter()
            .all(|r| full_map.apply(r).iter().all(|&x| x == 0))
    }

    /// Build the linear map out of the quotient whose value on `e_a (x) f_c`
    /// is `value(a, c)` (coordinates in a space of dimension `target_dim`).
    ///
    /// The formula must be balanced; this is asserted in debug builds.
    pub fn map_from(&self, target_dim: usize, mut value: impl FnMut(usize, usize) -> Vec<u32>) -> Matrix {
        let dn = self.right.dim();
        let cols: Vec<Vec<u32>> = (0..self.full_dim()).map(|i| value(i / dn, i % dn)).collect();
        let full = Matrix::from_cols(self.field(), target_dim, &cols);
        debug_assert!(self.kills_relations(&full), "formula is not balanced over the base algebra");
        full.mul(&self.lift)
    }

    /// Like [`TensorSpace::map_from`], but fails instead of asserting.
    pub fn try_map_from(
        &self,
        target_dim: usize,
        mut value: impl FnMut(usize, usize) -> Vec<u32>,
    ) -> Result<Matrix> {
        let dn = self.right.dim();
        let cols: Vec<Vec<u32>> = (0..self.full_dim()).map(|i| value(i / dn, i % dn)).collect();
        let full = Matrix::from_cols(self.field(), target_dim, &cols);
        if !self.kills_relations(&full) {
            return Err(Error::InvalidMorphism("formula is not balanced over the base algebra".into()));
        }
        Ok(full.mul(&self.lift))
    }

    /// `f (x) g: self -> target` for a right-B-linear `f` and left-B-linear `g`.
    pub fn induced(&self, target: &TensorSpace, f: &Matrix, g: &Matrix) -> Matrix {
        assert_eq!(f.cols(), self.left.dim());
        assert_eq!(g.cols(), self.right.dim());
        assert_eq!(f.rows(), target.left.dim());
        assert_eq!(g.rows(), target.right.dim());
        target.project.mul(&f.kron(g)).mul(&self.lift)
    }
}

/// Kronecker product of coordinate vectors, index `i * y.len() + j`.
pub fn kron_vec(f: PrimeField, x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for &a in x {
        for &b in y {
            out.push(f.mul(a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraMorphism, FiniteAlgebra};

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn diag_in_m2(field: PrimeField) -> AlgebraMorphism {
        let s = FiniteAlgebra::matrix_algebra(field, 2);
        let b = FiniteAlgebra::split(field, 2);
        // e_1 -> E11, e_2 -> E22 (basis E11, E12, E21, E22)
        let m = Matrix::from_rows(field, &[vec![1, 0], vec![0, 0], vec![0, 0], vec![0, 1]]).unwrap();
        AlgebraMorphism::new(b, s, m).unwrap()
    }

    #[test]
    fn unit_isomorphism() {
        for alg in [FiniteAlgebra::dual_numbers(f(2)), FiniteAlgebra::matrix_algebra(f(3), 2)] {
            let reg = Bimodule::regular(&alg);
            let t = tensor_over(&reg, &reg).unwrap();
            assert_eq!(t.dim(), alg.dim());
            // 1 (x) 1 is a generator, and a (x) 1 = 1 (x) a.
            for i in 0..alg.dim() {
                assert_eq!(t.pure(&alg.basis(i), alg.unit()), t.pure(alg.unit(), &alg.basis(i)));
            }
            assert!(t.pure(alg.unit(), alg.unit()).iter().any(|&x| x != 0));
        }
    }

    #[test]
    fn over_a_field_dimensions_multiply() {
        let field = f(2);
        let s = FiniteAlgebra::split(field, 2);
        let i = AlgebraMorphism::new(
            FiniteAlgebra::prime_field(field),
            s.clone(),
            Matrix::from_rows(field, &[vec![1], vec![1]]).unwrap(),
        )
        .unwrap();
        let reg = Bimodule::regular(&s);
        let t = tensor_over(&reg.restrict_right(&i).unwrap(), &reg.restrict_left(&i).unwrap()).unwrap();
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn matrices_over_the_diagonal() {
        // Oracle: S (x)_B S = sum over i,j,k of E_ij (x) E_jk, eight terms.
        let field = f(2);
        let i = diag_in_m2(field);
        let reg = Bimodule::regular(i.target());
        let t = tensor_over(&reg.restrict_right(&i).unwrap(), &reg.restrict_left(&i).unwrap()).unwrap();
        assert_eq!(t.dim(), 8);
        assert_eq!(t.relations().dim(), 16 - 8);
    }

    #[test]
    fn balanced_identity_holds_exhaustively() {
        let field = f(3);
        let i = diag_in_m2(field);
        let reg = Bimodule::regular(i.target());
        let m = reg.restrict_right(&i).unwrap();
        let n = reg.restrict_left(&i).unwrap();
        let t = tensor_over(&m, &n).unwrap();
        for a in 0..m.dim() {
            for c in 0..n.dim() {
                for j in 0..2 {
                    let mb = m.right_action()[j].col(a);
                    let bn = n.left_action()[j].col(c);
                    let ea = crate::subspace::unit_vector(m.dim(), a);
                    let fc = crate::subspace::unit_vector(n.dim(), c);
                    assert_eq!(t.pure(&mb, &fc), t.pure(&ea, &bn));
                }
            }
        }
        assert!(t.space().violations().is_empty());
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let a = Bimodule::regular(&FiniteAlgebra::dual_numbers(f(2)));
        let b = Bimodule::regular(&FiniteAlgebra::split(f(2), 2));
        assert!(matches!(tensor_over(&a, &b), Err(Error::AlgebraMismatch(_))));
    }
}
