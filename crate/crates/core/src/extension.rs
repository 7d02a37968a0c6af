use crate::algebra::{AlgebraMorphism, FiniteAlgebra};
use crate::bimodule::Bimodule;
use crate::error::Result;
use crate::field::PrimeField;
use crate::matrix::Matrix;

/// A ring extension `i: B -> S`, with `S` cached in the bimodule shapes the
/// constructions need.
#[derive(Clone, Debug)]
pub struct Extension {
    map: AlgebraMorphism,
    s_ss: Bimodule,
    s_sb: Bimodule,
    s_bs: Bimodule,
    s_bb: Bimodule,
}

impl Extension {
    pub fn new(map: AlgebraMorphism) -> Result<Self> {
        let s_ss = Bimodule::regular(map.target());
        let s_sb = s_ss.restrict_right(&map)?;
        let s_bs = s_ss.restrict_left(&map)?;
        let s_bb = s_sb.restrict_left(&map)?;
        Ok(Extension {
            map,
            s_ss,
            s_sb,
            s_bs,
            s_bb,
        })
    }

    pub fn from_matrix(base: FiniteAlgebra, top: FiniteAlgebra, matrix: Matrix) -> Result<Self> {
        Extension::new(AlgebraMorphism::new(base, top, matrix)?)
    }

    /// The identity extension `B -> B`.
    pub fn identity(alg: FiniteAlgebra) -> Self {
        Extension::new(AlgebraMorphism::identity(alg)).expect("identity is a morphism")
    }

    /// `F_p -> S`, the unit map.
    pub fn over_prime_field(top: FiniteAlgebra) -> Self {
        let field = top.field();
        let base = FiniteAlgebra::prime_field(field);
        let m = Matrix::from_cols(field, top.dim(), &[top.unit().to_vec()]);
        Extension::from_matrix(base, top, m).expect("unit map is a morphism")
    }

    pub fn field(&self) -> PrimeField {
        self.map.source().field()
    }

    pub fn base(&self) -> &FiniteAlgebra {
        self.map.source()
    }

    pub fn top(&self) -> &FiniteAlgebra {
        self.map.target()
    }

    pub fn map(&self) -> &AlgebraMorphism {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        self.map.is_injective()
    }

    /// Coordinates of `i(b)` in `S`.
    pub fn embed(&self, b: &[u32]) -> Vec<u32> {
        self.map.apply(b)
    }

    /// `S` as an `(S, S)`-bimodule.
    pub fn s_ss(&self) -> &Bimodule {
        &self.s_ss
    }

    /// `S` as an `(S, B)`-bimodule.
    pub fn s_sb(&self) -> &Bimodule {
        &self.s_sb
    }

    /// `S` as a `(B, S)`-bimodule.
    pub fn s_bs(&self) -> &Bimodule {
        &self.s_bs
    }

    /// `S` as a `(B, B)`-bimodule.
    pub fn s_bb(&self) -> &Bimodule {
        &self.s_bb
    }
}
