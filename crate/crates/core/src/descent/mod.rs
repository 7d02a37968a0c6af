//! Subbimodules of `S` and the maps comparing them with coring
//! endomorphisms of `S (x)_B S`.

mod comatrix;
mod context;
mod prop31;
mod witness;

pub use comatrix::{gamma0, hat_map, triangle_check, ComatrixDescent, HatReport, TriangleReport};
pub use context::{Budgets, Descent, EmbeddingReport, InvReport, Mutation};
pub use prop31::{prop31_report, Prop31Report};
pub use witness::{GammaWitness, Order};

use std::collections::HashMap;

use crate::bimodule::Bimodule;
use crate::coring::{Coring, CoringMorphism, SweedlerModel};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::monoid::MonoidTable;
use crate::projective::Side;
use crate::subspace::{all_subspaces, unit_vector, Subspace};
use crate::tensor::{tensor_over, TensorSpace};

/// Default number of subspaces the lattice enumeration may visit.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 1_000_000;

/// A `B`-subbimodule of `S`: a subspace closed under left and right
/// multiplication by `i(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubBimodule(Subspace);

impl SubBimodule {
    pub fn new(ext: &Extension, subspace: Subspace) -> Result<Self> {
        if subspace.ambient_dim() != ext.top().dim() {
            return Err(Error::dims("subspace does not live in S"));
        }
        if !is_closed(ext, &subspace) {
            return Err(Error::InvalidBimodule(format!(
                "{} is not closed under multiplication by the base",
                subspace.label()
            )));
        }
        Ok(SubBimodule(subspace))
    }

    /// `i(B)`, the identity of the monoid.
    pub fn base_image(ext: &Extension) -> Self {
        SubBimodule(ext.map().image())
    }

    pub fn subspace(&self) -> &Subspace {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn label(&self) -> String {
        self.0.label()
    }

    /// `I` as a `(B, B)`-bimodule on its RREF basis.
    pub fn bimodule(&self, ext: &Extension) -> Bimodule {
        ext.s_bb().submodule(&self.0).expect("closed under the base actions")
    }
}

fn is_closed(ext: &Extension, sub: &Subspace) -> bool {
    let s = ext.top();
    let b = ext.base();
    let images: Vec<Vec<u32>> = (0..b.dim()).map(|j| ext.embed(&b.basis(j))).collect();
    sub.basis()
        .iter()
        .all(|v| images.iter().all(|x| sub.contains(&s.mul(x, v)) && sub.contains(&s.mul(v, x))))
}

/// Every `B`-subbimodule of `S`, in RREF-lexicographic order.
pub fn enumerate_subbimodules(ext: &Extension, budget: u128) -> Result<Vec<SubBimodule>> {
    if !ext.is_injective() {
        return Err(Error::NotInjective);
    }
    Ok(all_subspaces(ext.field(), ext.top().dim(), budget)?
        .into_iter()
        .filter(|sub| is_closed(ext, sub))
        .map(SubBimodule)
        .collect())
}

/// `IJ`, spanned by products of basis elements.
pub fn subbimodule_product(ext: &Extension, i: &SubBimodule, j: &SubBimodule) -> SubBimodule {
    let s = ext.top();
    let products = i
        .0
        .basis()
        .iter()
        .flat_map(|x| j.0.basis().iter().map(move |y| s.mul(x, y)));
    SubBimodule(Subspace::span(ext.field(), s.dim(), products))
}

/// `I_B(S)` with its multiplication table.
#[derive(Clone, Debug)]
pub struct SubbimoduleMonoid {
    pub elements: Vec<SubBimodule>,
    pub table: MonoidTable,
}

impl SubbimoduleMonoid {
    pub fn build(ext: &Extension, budget: u128) -> Result<Self> {
        let elements = enumerate_subbimodules(ext, budget)?;
        let index: HashMap<&SubBimodule, usize> = elements.iter().enumerate().map(|(k, e)| (e, k)).collect();
        let table = elements
            .iter()
            .map(|i| {
                elements
                    .iter()
                    .map(|j| index[&subbimodule_product(ext, i, j)])
                    .collect()
            })
            .collect();
        let table = MonoidTable::from_table(table).expect("i(B) is a two-sided identity");
        debug_assert_eq!(elements[table.identity()], SubBimodule::base_image(ext));
        Ok(SubbimoduleMonoid { elements, table })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, i: &SubBimodule) -> Option<usize> {
        self.elements.binary_search(i).ok()
    }

    pub fn identity(&self) -> usize {
        self.table.identity()
    }
}

/// The multiplication maps `S (x)_B I -> S` and `I (x)_B S -> S`.
#[derive(Clone, Debug)]
pub struct MMaps {
    pub left: TensorSpace,
    pub right: TensorSpace,
    pub m_l: Matrix,
    pub m_r: Matrix,
}

impl MMaps {
    /// Membership in `I^l`.
    pub fn left_invertible(&self) -> bool {
        self.m_l.is_bijective()
    }

    /// Membership in `I^r`.
    pub fn right_invertible(&self) -> bool {
        self.m_r.is_bijective()
    }
}

pub fn m_maps(ext: &Extension, i: &SubBimodule) -> MMaps {
    let s = ext.top();
    let ds = s.dim();
    let ib = i.bimodule(ext);
    let basis = i.0.basis();
    let left = tensor_over(ext.s_sb(), &ib).expect("S_B and _B I match");
    let right = tensor_over(&ib, ext.s_bs()).expect("I_B and _B S match");
    let m_l = left.map_from(ds, |a, c| s.mul(&unit_vector(ds, a), &basis[c]));
    let m_r = right.map_from(ds, |c, a| s.mul(&basis[c], &unit_vector(ds, a)));
    MMaps { left, right, m_l, m_r }
}

fn sweedler(coring: &Coring) -> Result<&SweedlerModel> {
    coring
        .sweedler()
        .ok_or_else(|| Error::AlgebraMismatch("expected the Sweedler coring of an extension".into()))
}

fn accumulate(f: PrimeField, acc: &mut [u32], coef: u32, v: &[u32]) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = f.add(*a, f.mul(coef, x));
    }
}

/// `Gamma(I)` before validation.
pub(crate) fn gamma_matrix(coring: &Coring, i: &SubBimodule) -> Result<Matrix> {
    let model = sweedler(coring)?;
    let ext = model.extension();
    let f = ext.field();
    let s = ext.top();
    let ds = s.dim();
    let mm = m_maps(ext, i);
    let inv = mm.m_l.inverse().ok_or(Error::NotInvertible("left"))?;
    let c = model.tensor();
    let basis = i.0.basis();
    // s (x) t -> sum x_k (x) y_k t with (m^l)^-1(s) = sum x_k (x) y_k
    Ok(c.map_from(c.dim(), |a, b| {
        let mut v = vec![0u32; c.dim()];
        for (x, row) in mm.left.lift_table(&inv.col(a)).iter().enumerate() {
            for (y, &coef) in row.iter().enumerate() {
                if coef != 0 {
                    let t = s.mul(&basis[y], &unit_vector(ds, b));
                    accumulate(f, &mut v, coef, &c.pure(&unit_vector(ds, x), &t));
                }
            }
        }
        v
    }))
}

/// `Gamma(I) = (1 (x) m^r_I) o ((m^l_I)^-1 (x) 1)` for `I` in `I^l`.
pub fn gamma(coring: &Coring, i: &SubBimodule) -> Result<CoringMorphism> {
    coring.morphism(gamma_matrix(coring, i)?)
}

/// `Gamma'(I) = (m^l_I (x) 1) o (1 (x) (m^r_I)^-1)` for `I` in `I^r`.
pub fn gamma_prime(coring: &Coring, i: &SubBimodule) -> Result<CoringMorphism> {
    let model = sweedler(coring)?;
    let ext = model.extension();
    let f = ext.field();
    let s = ext.top();
    let ds = s.dim();
    let mm = m_maps(ext, i);
    let inv = mm.m_r.inverse().ok_or(Error::NotInvertible("right"))?;
    let c = model.tensor();
    let basis = i.0.basis();
    let matrix = c.map_from(c.dim(), |a, b| {
        let mut v = vec![0u32; c.dim()];
        for (y, row) in mm.right.lift_table(&inv.col(b)).iter().enumerate() {
            for (x, &coef) in row.iter().enumerate() {
                if coef != 0 {
                    let sy = s.mul(&unit_vector(ds, a), &basis[y]);
                    accumulate(f, &mut v, coef, &c.pure(&sy, &unit_vector(ds, x)));
                }
            }
        }
        v
    });
    coring.morphism(matrix)
}

/// `J(g) = {s : g(s (x) 1) = 1 (x) s}` (left) or
/// `J'(g) = {s : s (x) 1 = g(1 (x) s)}` (right).
pub fn j_of(coring: &Coring, g: &CoringMorphism, side: Side) -> Result<SubBimodule> {
    let model = sweedler(coring)?;
    let ext = model.extension();
    let ds = ext.top().dim();
    let f = ext.field();
    let s_one = Matrix::from_cols(f, coring.dim(), &(0..ds).map(|a| model.s_one(&unit_vector(ds, a))).collect::<Vec<_>>());
    let one_s = Matrix::from_cols(f, coring.dim(), &(0..ds).map(|a| model.one_s(&unit_vector(ds, a))).collect::<Vec<_>>());
    let diff = match side {
        Side::Left => g.matrix().mul(&s_one).sub(&one_s),
        Side::Right => s_one.sub(&g.matrix().mul(&one_s)),
    };
    SubBimodule::new(ext, Subspace::kernel(&diff))
}
