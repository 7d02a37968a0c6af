use super::{Coring, TensorModel};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::projective::{DualBasis, EndAlgebra};
use crate::subspace::unit_vector;
use crate::tensor::{tensor_over, TensorSpace};

/// The comatrix coring `M* (x)_B M` of a `(B, A)`-bimodule with `M_A`
/// finitely generated projective, together with `S = End_A(M)`.
#[derive(Clone, Debug)]
pub struct ComatrixCoring {
    coring: Coring,
    end: EndAlgebra,
    sigma: TensorSpace,
    dual_basis: DualBasis,
    /// Coordinates in `M*` of the dual basis functionals.
    dual_coords: Vec<Vec<u32>>,
}

impl ComatrixCoring {
    pub fn coring(&self) -> &Coring {
        &self.coring
    }

    pub fn end(&self) -> &EndAlgebra {
        &self.end
    }

    /// `M* (x)_B M` with its `(A, A)`-actions.
    pub fn sigma(&self) -> &TensorSpace {
        &self.sigma
    }

    pub fn dual_basis(&self) -> &DualBasis {
        &self.dual_basis
    }

    pub fn dual_coords(&self) -> &[Vec<u32>] {
        &self.dual_coords
    }

    pub fn module(&self) -> &Bimodule {
        self.end.module()
    }
}

/// Build `M* (x)_B M` with `Delta(phi (x) m) = sum_i (phi (x) m_i) (x)_A
/// (f_i (x) m)` for the dual basis `(m_i, f_i)` and `eps(phi (x) m) =
/// phi(m)`.
pub fn build_comatrix(m: &Bimodule) -> Result<ComatrixCoring> {
    let end = EndAlgebra::build(m)?;
    let dual_basis = end.dual_basis().cloned().ok_or(Error::NotProjective)?;
    let dual = end.dual();
    let dual_coords = dual_basis
        .functionals
        .iter()
        .map(|fi| dual.coords(fi).expect("dual basis functionals lie in M*"))
        .collect::<Vec<_>>();
    let mstar_ab = end.mstar_as().restrict_right(end.extension().map())?;
    let sigma = tensor_over(&mstar_ab, m)?;
    let a = m.right_alg().clone();
    let carrier = sigma.space().clone();
    let square = tensor_over(&carrier, &carrier)?;
    let cube = tensor_over(square.space(), &carrier)?;
    let (k, n) = (dual.dim(), m.dim());
    let f = m.field();
    let comult = sigma.map_from(square.dim(), |q, c| {
        let phi = unit_vector(k, q);
        let mut v = vec![0u32; square.dim()];
        for (mi, fi) in dual_basis.elements.iter().zip(&dual_coords) {
            let w = square.pure(&sigma.pure(&phi, mi), &sigma.pure(fi, &unit_vector(n, c)));
            for (x, y) in v.iter_mut().zip(w) {
                *x = f.add(*x, y);
            }
        }
        v
    });
    let counit = sigma.map_from(a.dim(), |q, c| dual.basis()[q].col(c));
    let coring = Coring::new(a, carrier, comult, counit, TensorModel::Generic { square, cube })?;
    Ok(ComatrixCoring {
        coring,
        end,
        sigma,
        dual_basis,
        dual_coords,
    })
}

