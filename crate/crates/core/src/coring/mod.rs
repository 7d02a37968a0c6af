//! Corings over a finite-dimensional algebra: axioms, morphisms, and the
//! complete enumeration of coring endomorphisms.

mod comatrix;
mod comodule;
mod sweedler;

pub use comatrix::{build_comatrix, ComatrixCoring};
pub(crate) use comodule::comparison_with_unit;
pub use comodule::{comparison_functor, equalizer_rs, twist_comodule, Comodule, Equalizer};
pub use sweedler::{build_sweedler, build_sweedler_generic, SweedlerModel};

use crate::algebra::FiniteAlgebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::monoid::MonoidTable;
use crate::subspace::unit_vector;
use crate::tensor::TensorSpace;

/// Default number of candidates `coring_endomorphisms` may enumerate.
pub const DEFAULT_ENDO_BUDGET: u128 = 1 << 20;

/// How `C (x)_A C` and `C (x)_A C (x)_A C` are represented.
#[derive(Clone, Debug)]
pub enum TensorModel {
    /// Explicit tensor products over the base algebra.
    Generic { square: TensorSpace, cube: TensorSpace },
    /// The Sweedler coring of `B -> S`, with `C (x)_S C` identified with
    /// `S (x)_B S (x)_B S` and the cube with four factors.
    Sweedler(Box<SweedlerModel>),
}

impl TensorModel {
    fn square_dim(&self) -> usize {
        match self {
            TensorModel::Generic { square, .. } => square.dim(),
            TensorModel::Sweedler(s) => s.t3().dim(),
        }
    }

    /// The class of `x (x)_A y`.
    fn pair(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        match self {
            TensorModel::Generic { square, .. } => square.pure(x, y),
            TensorModel::Sweedler(s) => s.pair(x, y),
        }
    }

    /// A decomposition of a square element into pure tensors `x (x) y`.
    fn pure_terms(&self, w: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
        match self {
            TensorModel::Generic { square, .. } => {
                let f = square.field();
                let (dl, dr) = (square.left().dim(), square.right().dim());
                let mut out = Vec::new();
                for (a, row) in square.lift_table(w).iter().enumerate() {
                    for (c, &x) in row.iter().enumerate() {
                        if x != 0 {
                            let e = unit_vector(dl, a).iter().map(|&v| f.mul(v, x)).collect();
                            out.push((e, unit_vector(dr, c)));
                        }
                    }
                }
                out
            }
            TensorModel::Sweedler(s) => s.pure_terms(w),
        }
    }

    /// `Delta (x) 1` on the square.
    fn comult_left(&self, carrier: &Bimodule, comult: &Matrix) -> Matrix {
        match self {
            TensorModel::Generic { square, cube } => {
                square.map_from(cube.dim(), |a, c| cube.pure(&comult.col(a), &unit_vector(carrier.dim(), c)))
            }
            TensorModel::Sweedler(s) => s.comult_left(comult),
        }
    }

    /// `1 (x) Delta` on the square.
    fn comult_right(&self, carrier: &Bimodule, comult: &Matrix) -> Matrix {
        match self {
            TensorModel::Generic { square, cube } => {
                let f = carrier.field();
                let n = carrier.dim();
                square.map_from(cube.dim(), |a, c| {
                    let mut v = vec![0u32; cube.dim()];
                    for (x, row) in square.lift_table(&comult.col(c)).iter().enumerate() {
                        for (y, &coef) in row.iter().enumerate() {
                            if coef == 0 {
                                continue;
                            }
                            let w = cube.pure(&square.pure_basis(a, x), &unit_vector(n, y));
                            for (vi, wi) in v.iter_mut().zip(w) {
                                *vi = f.add(*vi, f.mul(coef, wi));
                            }
                        }
                    }
                    v
                })
            }
            TensorModel::Sweedler(s) => s.comult_right(comult),
        }
    }

    /// `eps (x) 1` on the square.
    fn counit_left(&self, carrier: &Bimodule, counit: &Matrix) -> Matrix {
        match self {
            TensorModel::Generic { square, .. } => {
                square.map_from(carrier.dim(), |a, c| carrier.left_act(&counit.col(a)).col(c))
            }
            TensorModel::Sweedler(s) => s.counit_left(counit),
        }
    }

    /// `1 (x) eps` on the square.
    fn counit_right(&self, carrier: &Bimodule, counit: &Matrix) -> Matrix {
        match self {
            TensorModel::Generic { square, .. } => {
                square.map_from(carrier.dim(), |a, c| carrier.right_act(&counit.col(c)).col(a))
            }
            TensorModel::Sweedler(s) => s.counit_right(counit),
        }
    }

    /// `g (x) g` on the square.
    fn square_map(&self, g: &Matrix) -> Matrix {
        match self {
            TensorModel::Generic { square, .. } => square.induced(square, g, g),
            TensorModel::Sweedler(s) => s.square_map(g),
        }
    }
}

/// A bimodule generator together with a pure decomposition of its
/// comultiplication, used to test multiplicativity on generators only.
#[derive(Clone, Debug)]
struct Generator {
    element: Vec<u32>,
    comult_terms: Vec<(Vec<u32>, Vec<u32>)>,
}

/// An `A`-coring: an `(A, A)`-bimodule `C` with comultiplication
/// `C -> C (x)_A C` and counit `C -> A`.
#[derive(Clone, Debug)]
pub struct Coring {
    base: FiniteAlgebra,
    carrier: Bimodule,
    comult: Matrix,
    counit: Matrix,
    model: TensorModel,
    generators: Vec<Generator>,
}

impl Coring {
    /// Assemble a coring and check its axioms.
    pub fn new(base: FiniteAlgebra, carrier: Bimodule, comult: Matrix, counit: Matrix, model: TensorModel) -> Result<Self> {
        let c = Coring::new_unchecked(base, carrier, comult, counit, model)?;
        let v = c.axiom_violations();
        if !v.is_empty() {
            return Err(Error::CoringAxioms(v));
        }
        Ok(c)
    }

    /// Shape checks only.
    pub fn new_unchecked(
        base: FiniteAlgebra,
        carrier: Bimodule,
        comult: Matrix,
        counit: Matrix,
        model: TensorModel,
    ) -> Result<Self> {
        if carrier.left_alg() != &base || carrier.right_alg() != &base {
            return Err(Error::AlgebraMismatch("carrier must be a bimodule over the base".into()));
        }
        let n = carrier.dim();
        if comult.cols() != n || comult.rows() != model.square_dim() {
            return Err(Error::dims("comultiplication has the wrong shape"));
        }
        if counit.cols() != n || counit.rows() != base.dim() {
            return Err(Error::dims("counit has the wrong shape"));
        }
        let generators = carrier
            .generators()
            .into_iter()
            .map(|element| {
                let comult_terms = model.pure_terms(&comult.apply(&element));
                Generator { element, comult_terms }
            })
            .collect();
        Ok(Coring {
            base,
            carrier,
            comult,
            counit,
            model,
            generators,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.base.field()
    }

    pub fn base(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn model(&self) -> &TensorModel {
        &self.model
    }

    pub fn sweedler(&self) -> Option<&SweedlerModel> {
        match &self.model {
            TensorModel::Sweedler(s) => Some(s),
            TensorModel::Generic { .. } => None,
        }
    }

    /// Dimension of the model of `C (x)_A C`.
    pub fn square_dim(&self) -> usize {
        self.model.square_dim()
    }

    /// The class of `x (x)_A y` in the square.
    pub fn pair(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.model.pair(x, y)
    }

    /// `g (x) g` on the square.
    pub fn square_map(&self, g: &Matrix) -> Matrix {
        self.model.square_map(g)
    }

    /// Every failed coring law, as readable messages.
    pub fn axiom_violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self.carrier.violations();
        let reg = Bimodule::regular(&self.base);
        let square_space = match &self.model {
            TensorModel::Generic { square, .. } => square.space(),
            TensorModel::Sweedler(s) => s.t3().space(),
        };
        if !self.carrier.is_map_to(square_space, &self.comult) {
            out.push("comultiplication is not a bimodule map".into());
        }
        if !self.carrier.is_map_to(&reg, &self.counit) {
            out.push("counit is not a bimodule map".into());
        }
        let lhs = self.model.comult_left(&self.carrier, &self.comult).mul(&self.comult);
        let rhs = self.model.comult_right(&self.carrier, &self.comult).mul(&self.comult);
        if lhs != rhs {
            out.push("comultiplication is not coassociative".into());
        }
        let id = Matrix::identity(self.field(), self.dim());
        if self.model.counit_left(&self.carrier, &self.counit).mul(&self.comult) != id {
            out.push("left counit law fails".into());
        }
        if self.model.counit_right(&self.carrier, &self.counit).mul(&self.comult) != id {
            out.push("right counit law fails".into());
        }
        out
    }

    /// Every reason `g` fails to be a coring endomorphism, checked on the
    /// full matrices.
    pub fn morphism_violations(&self, g: &Matrix) -> Vec<String> {
        let mut out = Vec::new();
        if g.rows() != self.dim() || g.cols() != self.dim() {
            out.push("wrong shape".into());
            return out;
        }
        if self.counit.mul(g) != self.counit {
            out.push("does not preserve the counit".into());
        }
        if !self.carrier.is_map_to(&self.carrier, g) {
            // g (x) g is only defined for bimodule maps
            out.push("not a bimodule map".into());
        } else if self.comult.mul(g) != self.model.square_map(g).mul(&self.comult) {
            out.push("does not preserve the comultiplication".into());
        }
        out
    }

    pub fn is_morphism(&self, g: &Matrix) -> bool {
        self.morphism_violations(g).is_empty()
    }

    pub fn morphism(&self, g: Matrix) -> Result<CoringMorphism> {
        let v = self.morphism_violations(&g);
        if !v.is_empty() {
            return Err(Error::NotCoringMorphism(v.join("; ")));
        }
        Ok(CoringMorphism(g))
    }

    pub fn identity_morphism(&self) -> CoringMorphism {
        CoringMorphism(Matrix::identity(self.field(), self.dim()))
    }

    /// Express elements of this coring's square in another model of the
    /// same coring, as a matrix `square -> other square`.
    pub fn transport_square(&self, other: &Coring) -> Matrix {
        let f = self.field();
        let n = self.square_dim();
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|k| {
                let mut v = vec![0u32; other.square_dim()];
                for (x, y) in self.model.pure_terms(&unit_vector(n, k)) {
                    for (vi, wi) in v.iter_mut().zip(other.pair(&x, &y)) {
                        *vi = f.add(*vi, wi);
                    }
                }
                v
            })
            .collect();
        Matrix::from_cols(f, other.square_dim(), &cols)
    }
}

/// An endomorphism of a coring, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoringMorphism(Matrix);

impl CoringMorphism {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// `self o other`.
    pub fn compose(&self, other: &CoringMorphism) -> CoringMorphism {
        CoringMorphism(self.0.mul(&other.0))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Matrix::identity(self.0.field(), self.0.rows())
    }
}

/// The endomorphism monoid of a coring.
#[derive(Clone, Debug)]
pub struct CoringEndos {
    pub elements: Vec<CoringMorphism>,
    pub table: MonoidTable,
    /// Dimension of the affine space of counit-preserving bimodule maps.
    pub candidate_dim: usize,
    pub candidates: u128,
}

impl CoringEndos {
    pub fn index_of(&self, g: &Matrix) -> Option<usize> {
        self.elements.iter().position(|e| e.matrix() == g)
    }

    /// Indices of the automorphisms.
    pub fn automorphisms(&self) -> Vec<usize> {
        self.table.units()
    }
}

/// Every endomorphism of `c`, sorted by matrix entries, with the
/// composition table.
///
/// Counit-preserving bimodule maps form an affine space; each point is
/// tested for multiplicativity on the bimodule generators of the carrier,
/// which suffices because both sides of `Delta g = (g (x) g) Delta` are
/// bimodule maps.
pub fn coring_endomorphisms(c: &Coring, budget: u128) -> Result<CoringEndos> {
    let f = c.field();
    let n = c.dim();
    let mut sys = c.carrier.hom_system(&c.carrier)?;
    sys.left_compose(&c.counit, &c.counit);
    let sol = sys.solve().expect("the identity is a solution");
    let d = sol.dim();
    let candidates = (f.modulus() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if candidates > budget {
        return Err(Error::BudgetExceeded {
            what: "enumerating coring endomorphism candidates",
            required: candidates,
            budget,
        });
    }
    let to_matrix = |flat: &[u32]| Matrix::from_fn(f, n, n, |r, col| flat[r * n + col]);
    let base = to_matrix(&sol.particular);
    let dirs: Vec<Matrix> = sol.kernel.iter().map(|k| to_matrix(k)).collect();

    // images of every probe vector under the particular solution and each direction
    struct Probe {
        base: Vec<u32>,
        dirs: Vec<Vec<u32>>,
    }
    let probe = |v: &[u32]| Probe {
        base: base.apply(v),
        dirs: dirs.iter().map(|m| m.apply(v)).collect(),
    };
    let eval = |p: &Probe, coeffs: &[u32]| {
        let mut out = p.base.clone();
        for (d, &x) in p.dirs.iter().zip(coeffs) {
            if x != 0 {
                for (o, &y) in out.iter_mut().zip(d) {
                    *o = f.add(*o, f.mul(x, y));
                }
            }
        }
        out
    };
    let probes: Vec<(Probe, Vec<(Probe, Probe)>)> = c
        .generators
        .iter()
        .map(|g| {
            let terms = g.comult_terms.iter().map(|(x, y)| (probe(x), probe(y))).collect();
            (probe(&g.element), terms)
        })
        .collect();

    let mut survivors = Vec::new();
    let mut coeffs = vec![0u32; d];
    loop {
        let ok = probes.iter().all(|(gen, terms)| {
            let lhs = c.comult.apply(&eval(gen, &coeffs));
            let mut rhs = vec![0u32; c.square_dim()];
            for (x, y) in terms {
                for (r, v) in rhs.iter_mut().zip(c.pair(&eval(x, &coeffs), &eval(y, &coeffs))) {
                    *r = f.add(*r, v);
                }
            }
            lhs == rhs
        });
        if ok {
            let mut g = base.clone();
            for (m, &x) in dirs.iter().zip(&coeffs) {
                if x != 0 {
                    g.axpy(x, m);
                }
            }
            survivors.push(g);
        }
        if !crate::subspace::next_digits(&mut coeffs, f.modulus()) {
            break;
        }
    }
    survivors.sort();
    let elements = survivors
        .into_iter()
        .map(|g| c.morphism(g))
        .collect::<Result<Vec<_>>>()?;
    let table = MonoidTable::build(&elements, |a, b| a.compose(b))
        .ok_or_else(|| Error::NotCoringMorphism("endomorphisms are not closed under composition".into()))?;
    Ok(CoringEndos {
        elements,
        table,
        candidate_dim: d,
        candidates,
    })
}
