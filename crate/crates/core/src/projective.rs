//! Dual modules, dual bases, and the endomorphism ring of a finitely
//! generated projective module.

use crate::algebra::{AlgebraMorphism, FiniteAlgebra};
use crate::bimodule::{Bimodule, HomSystem};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::subspace::{unit_vector, Subspace};
use crate::tensor::TensorSpace;

/// Which action of a bimodule a one-sided construction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// `Hom_A(M, A)` for the `side` action of `M`, with an RREF basis of
/// `dim A x dim M` matrices.
#[derive(Clone, Debug)]
pub struct DualModule {
    alg: FiniteAlgebra,
    side: Side,
    span: Subspace,
    basis: Vec<Matrix>,
}

impl DualModule {
    pub fn new(m: &Bimodule, side: Side) -> Self {
        let (alg, actions) = match side {
            Side::Left => (m.left_alg(), m.left_action()),
            Side::Right => (m.right_alg(), m.right_action()),
        };
        let f = m.field();
        let mut sys = HomSystem::new(f, alg.dim(), m.dim());
        for (j, act) in actions.iter().enumerate() {
            // f(a m) = a f(m) on the left, f(m a) = f(m) a on the right
            let on_alg = match side {
                Side::Left => alg.left_mul_matrix(&alg.basis(j)),
                Side::Right => alg.right_mul_matrix(&alg.basis(j)),
            };
            sys.intertwine(act, &on_alg);
        }
        let sol = sys.solve().expect("homogeneous");
        let span = Subspace::span(f, alg.dim() * m.dim(), &sol.kernel);
        let basis = span
            .basis()
            .iter()
            .map(|v| Matrix::from_fn(f, alg.dim(), m.dim(), |r, c| v[r * m.dim() + c]))
            .collect();
        DualModule {
            alg: alg.clone(),
            side,
            span,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    /// Coordinates of a functional given as a matrix.
    pub fn coords(&self, functional: &Matrix) -> Option<Vec<u32>> {
        self.span.coords(functional.entries())
    }

    /// The functional with the given coordinates.
    pub fn functional(&self, coords: &[u32]) -> Matrix {
        let f = self.alg.field();
        let (r, c) = self
            .basis
            .first()
            .map(|b| (b.rows(), b.cols()))
            .unwrap_or((self.alg.dim(), 0));
        let mut out = Matrix::zeros(f, r, c);
        for (b, &x) in self.basis.iter().zip(coords) {
            out.axpy(x, b);
        }
        out
    }
}

/// Pairs `(m_i, f_i)` with `m = sum_i m_i f_i(m)` (right modules) or
/// `m = sum_i f_i(m) m_i` (left modules).
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub side: Side,
    pub elements: Vec<Vec<u32>>,
    pub functionals: Vec<Matrix>,
}

impl DualBasis {
    /// Re-check the reconstruction identity on every basis vector of `m`.
    pub fn verify(&self, m: &Bimodule) -> bool {
        let f = m.field();
        (0..m.dim()).all(|l| {
            let target = unit_vector(m.dim(), l);
            let mut sum = vec![0u32; m.dim()];
            for (mi, fi) in self.elements.iter().zip(&self.functionals) {
                let a = fi.col(l);
                let act = match self.side {
                    Side::Left => m.left_act(&a),
                    Side::Right => m.right_act(&a),
                };
                for (s, x) in sum.iter_mut().zip(act.apply(mi)) {
                    *s = f.add(*s, x);
                }
            }
            sum == target
        })
    }
}

/// A dual basis for the `side` action of `m`, or `None` if the module is
/// not projective.
///
/// The elements are fixed to the standard basis of `m` (a generating set);
/// a dual basis exists for some generating set iff it exists for this one,
/// since projectivity means the cover by the free module on any generating
/// set splits. What remains is a linear system in the functionals.
pub fn dual_basis(m: &Bimodule, side: Side) -> Option<DualBasis> {
    let dual = DualModule::new(m, side);
    dual_basis_with(m, &dual)
}

pub fn dual_basis_with(m: &Bimodule, dual: &DualModule) -> Option<DualBasis> {
    let f = m.field();
    let n = m.dim();
    let k = dual.dim();
    let actions = match dual.side {
        Side::Left => m.left_action(),
        Side::Right => m.right_action(),
    };
    // unknown c[i][q]: f_i = sum_q c[i][q] F_q, index i * k + q
    let unknowns = n * k;
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for l in 0..n {
        // sum_{i,q} c[i][q] * act(F_q e_l) e_i = e_l
        let mut block = vec![vec![0u32; unknowns]; n];
        for i in 0..n {
            for q in 0..k {
                let a = dual.basis[q].col(l);
                let mut v = vec![0u32; n];
                for (j, &aj) in a.iter().enumerate() {
                    if aj == 0 {
                        continue;
                    }
                    for (r, x) in v.iter_mut().enumerate() {
                        *x = f.add(*x, f.mul(aj, actions[j].get(r, i)));
                    }
                }
                for r in 0..n {
                    block[r][i * k + q] = v[r];
                }
            }
        }
        rows.extend(block);
        rhs.extend(unit_vector(n, l));
    }
    let a = Matrix::from_rows_with_cols(f, &rows, unknowns).expect("widths");
    let sol = crate::matrix::solve_linear(&a, &rhs).expect("shapes")?;
    let functionals = (0..n)
        .map(|i| dual.functional(&sol.particular[i * k..(i + 1) * k]))
        .collect();
    let db = DualBasis {
        side: dual.side,
        elements: (0..n).map(|i| unit_vector(n, i)).collect(),
        functionals,
    };
    debug_assert!(db.verify(m));
    Some(db)
}

/// `S = End_A(M)` for a `(B, A)`-bimodule `M`, with the canonical map
/// `i: B -> S`, the dual `M* = Hom_A(M, A)`, and `xi: M (x)_A M* -> S`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    module: Bimodule,
    end_basis: Vec<Matrix>,
    end_span: Subspace,
    ext: Extension,
    dual: DualModule,
    dual_basis: Option<DualBasis>,
    m_sa: Bimodule,
    mstar_as: Bimodule,
    xi_tensor: TensorSpace,
    xi: Matrix,
}

impl EndAlgebra {
    /// Build everything without requiring `xi` to be invertible.
    pub fn build(m: &Bimodule) -> Result<Self> {
        let f = m.field();
        let n = m.dim();
        let a_alg = m.right_alg();
        // End_A(M): X rho(a) = rho(a) X
        let mut sys = HomSystem::new(f, n, n);
        for rho in m.right_action() {
            sys.intertwine(rho, rho);
        }
        let sol = sys.solve().expect("homogeneous");
        let end_span = Subspace::span(f, n * n, &sol.kernel);
        let end_basis: Vec<Matrix> = end_span
            .basis()
            .iter()
            .map(|v| Matrix::from_fn(f, n, n, |r, c| v[r * n + c]))
            .collect();
        let s_alg = FiniteAlgebra::from_matrix_basis(f, &end_basis)?;
        let coords = |x: &Matrix| end_span.coords(x.entries());

        let i_cols = m
            .left_action()
            .iter()
            .map(|l| coords(l).ok_or_else(|| Error::InvalidBimodule("left action is not A-linear".into())))
            .collect::<Result<Vec<_>>>()?;
        let i = AlgebraMorphism::new(m.left_alg().clone(), s_alg.clone(), Matrix::from_cols(f, s_alg.dim(), &i_cols))?;
        let ext = Extension::new(i)?;

        let m_sa = Bimodule::new(s_alg.clone(), a_alg.clone(), n, end_basis.clone(), m.right_action().to_vec())?;

        let dual = DualModule::new(m, Side::Right);
        let k = dual.dim();
        let left_on_dual = (0..a_alg.dim())
            .map(|j| {
                let la = a_alg.left_mul_matrix(&a_alg.basis(j));
                let cols: Vec<Vec<u32>> = dual
                    .basis()
                    .iter()
                    .map(|fq| dual.coords(&la.mul(fq)).expect("a f is A-linear"))
                    .collect();
                Matrix::from_cols(f, k, &cols)
            })
            .collect();
        let right_on_dual = end_basis
            .iter()
            .map(|e| {
                let cols: Vec<Vec<u32>> = dual
                    .basis()
                    .iter()
                    .map(|fq| dual.coords(&fq.mul(e)).expect("f s is A-linear"))
                    .collect();
                Matrix::from_cols(f, k, &cols)
            })
            .collect();
        let mstar_as = Bimodule::new(a_alg.clone(), s_alg.clone(), k, left_on_dual, right_on_dual)?;

        let xi_tensor = TensorSpace::new(&m_sa, &mstar_as)?;
        // xi(e_a (x) F_q) = [m' -> e_a F_q(m')]
        let xi = xi_tensor.map_from(s_alg.dim(), |a, q| {
            let fq = &dual.basis()[q];
            let endo = Matrix::from_fn(f, n, n, |r, c| {
                let val = fq.col(c);
                m.right_act(&val).get(r, a)
            });
            coords(&endo).expect("xi lands in End_A(M)")
        });
        let dual_basis = dual_basis_with(m, &dual);
        Ok(EndAlgebra {
            module: m.clone(),
            end_basis,
            end_span,
            ext,
            dual,
            dual_basis,
            m_sa,
            mstar_as,
            xi_tensor,
            xi,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.module.field()
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    /// `S = End_A(M)`.
    pub fn algebra(&self) -> &FiniteAlgebra {
        self.ext.top()
    }

    /// `i: B -> S`.
    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    /// The basis of `S` as `dim M x dim M` matrices.
    pub fn end_basis(&self) -> &[Matrix] {
        &self.end_basis
    }

    /// Coordinates in `S` of an `A`-linear endomorphism.
    pub fn coords(&self, endo: &Matrix) -> Option<Vec<u32>> {
        self.end_span.coords(endo.entries())
    }

    pub fn dual(&self) -> &DualModule {
        &self.dual
    }

    pub fn dual_basis(&self) -> Option<&DualBasis> {
        self.dual_basis.as_ref()
    }

    /// `M` as an `(S, A)`-bimodule.
    pub fn m_sa(&self) -> &Bimodule {
        &self.m_sa
    }

    /// `M*` as an `(A, S)`-bimodule.
    pub fn mstar_as(&self) -> &Bimodule {
        &self.mstar_as
    }

    pub fn xi_tensor(&self) -> &TensorSpace {
        &self.xi_tensor
    }

    pub fn xi(&self) -> &Matrix {
        &self.xi
    }

    pub fn xi_is_bijective(&self) -> bool {
        self.xi.is_bijective()
    }
}

/// `End_A(M)` with `xi` required to be an isomorphism.
pub fn end_algebra(m: &Bimodule) -> Result<EndAlgebra> {
    let e = EndAlgebra::build(m)?;
    if !e.xi_is_bijective() {
        return Err(Error::XiNotInvertible);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// F_2^2 over A = F_2 with B = diagonal matrices acting on the left.
    fn plane_over_diag(field: PrimeField) -> Bimodule {
        let b = FiniteAlgebra::split(field, 2);
        let a = FiniteAlgebra::prime_field(field);
        let e1 = Matrix::from_rows(field, &[vec![1, 0], vec![0, 0]]).unwrap();
        let e2 = Matrix::from_rows(field, &[vec![0, 0], vec![0, 1]]).unwrap();
        Bimodule::new(b, a, 2, vec![e1, e2], vec![Matrix::identity(field, 2)]).unwrap()
    }

    #[test]
    fn free_rank_one() {
        let a = FiniteAlgebra::dual_numbers(f(2));
        let m = Bimodule::regular(&a).forget_left();
        let db = dual_basis(&m, Side::Right).unwrap();
        assert!(db.verify(&m));
        let dual = DualModule::new(&m, Side::Right);
        assert_eq!(dual.dim(), 2);
    }

    #[test]
    fn vector_space_over_field() {
        let field = f(2);
        let k = FiniteAlgebra::prime_field(field);
        let m = Bimodule::right_module(&k, 2, vec![Matrix::identity(field, 2)]).unwrap();
        let db = dual_basis(&m, Side::Right).unwrap();
        // with the standard basis fixed, the functionals are the coordinates
        assert_eq!(db.functionals[0].to_rows(), vec![vec![1, 0]]);
        assert_eq!(db.functionals[1].to_rows(), vec![vec![0, 1]]);
    }

    #[test]
    fn simple_module_over_dual_numbers_is_not_projective() {
        // Oracle: Hom_A(F_2, A) is spanned by 1 -> x, so every functional
        // lands in (x) and sum m_i f_i(m) lies in m * (x) = 0 for all
        // candidate systems.
        let field = f(2);
        let a = FiniteAlgebra::dual_numbers(field);
        let m = Bimodule::right_module(&a, 1, vec![Matrix::identity(field, 1), Matrix::zeros(field, 1, 1)]).unwrap();
        let dual = DualModule::new(&m, Side::Right);
        assert_eq!(dual.dim(), 1);
        assert_eq!(dual.basis()[0].to_rows(), vec![vec![0], vec![1]]);
        for c in 0..2u32 {
            let fi = dual.functional(&[c]);
            let recon = m.right_act(&fi.col(0)).apply(&[1]);
            assert_ne!(recon, vec![1]);
        }
        assert!(dual_basis(&m, Side::Right).is_none());
        let e = EndAlgebra::build(&m).unwrap();
        assert!(!e.xi_is_bijective());
        assert!(matches!(end_algebra(e.module()), Err(Error::XiNotInvertible)));
    }

    #[test]
    fn end_of_a_line() {
        let field = f(2);
        let k = FiniteAlgebra::prime_field(field);
        let m = Bimodule::regular(&k);
        let e = end_algebra(&m).unwrap();
        assert_eq!(e.algebra().dim(), 1);
        assert_eq!(e.extension().map().matrix(), &Matrix::identity(field, 1));
    }

    #[test]
    fn end_of_plane_with_diagonal_action() {
        let field = f(2);
        let m = plane_over_diag(field);
        let e = end_algebra(&m).unwrap();
        assert_eq!(e.algebra().dim(), 4);
        let i = e.extension().map();
        assert!(i.is_injective());
        // image of i is exactly the diagonal matrices
        let diag: Vec<Vec<u32>> = [[1u32, 0, 0, 0], [0, 0, 0, 1]]
            .iter()
            .map(|d| {
                let mat = Matrix::from_fn(field, 2, 2, |r, c| d[r * 2 + c]);
                e.coords(&mat).unwrap()
            })
            .collect();
        assert_eq!(i.image(), Subspace::span(field, 4, &diag));
        assert!(e.xi_is_bijective());
        assert!(e.mstar_as().violations().is_empty());
    }

    #[test]
    fn left_dual_basis() {
        let field = f(3);
        let s = FiniteAlgebra::matrix_algebra(field, 2);
        // S as a left module over itself is free of rank one
        let m = Bimodule::regular(&s).forget_right();
        let db = dual_basis(&m, Side::Left).unwrap();
        assert!(db.verify(&m));
    }
}
