use super::{Coring, TensorModel};
use crate::error::Result;
use crate::extension::Extension;
use crate::matrix::Matrix;
use crate::subspace::unit_vector;
use crate::tensor::{tensor_over, TensorSpace};

/// Tensor data for the Sweedler coring `C = S (x)_B S`.
///
/// `C (x)_S C` is modelled by `T3 = S (x)_B S (x)_B S` through
/// `(s (x) t) (x) (s' (x) t') -> s (x) t s' (x) t'`, and the triple power
/// by `T4` with four factors. `T3` is built as `C (x)_B S`, so its basis
/// vector `(k, l)` is the class of `c_k (x) e_l`, which corresponds to
/// `c_k (x)_S (1 (x) e_l)`.
#[derive(Clone, Debug)]
pub struct SweedlerModel {
    ext: Extension,
    c: TensorSpace,
    t3: TensorSpace,
    t4: TensorSpace,
    /// The pure tensor `e_x (x) e_y` each basis vector of `C` lifts to.
    c_pairs: Vec<(usize, usize)>,
    /// `S^(x)3` over the field onto `T3`.
    triple: Matrix,
    /// `S^(x)4` over the field onto `T4`.
    quad: Matrix,
}

impl SweedlerModel {
    pub fn new(ext: &Extension) -> Result<Self> {
        let f = ext.field();
        let i = ext.map();
        let ds = ext.top().dim();
        let c = tensor_over(ext.s_sb(), ext.s_bs())?;
        let t3 = tensor_over(&c.space().restrict_right(i)?, ext.s_bs())?;
        let t4 = tensor_over(&t3.space().restrict_right(i)?, ext.s_bs())?;
        let id = Matrix::identity(f, ds);
        let triple = t3.project().mul(&c.project().kron(&id));
        let quad = t4.project().mul(&triple.kron(&id));
        let c_pairs = (0..c.dim()).map(|k| c.lifted_pair(k)).collect();
        Ok(SweedlerModel {
            ext: ext.clone(),
            c,
            t3,
            t4,
            c_pairs,
            triple,
            quad,
        })
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    /// `S (x)_B S`.
    pub fn tensor(&self) -> &TensorSpace {
        &self.c
    }

    pub fn t3(&self) -> &TensorSpace {
        &self.t3
    }

    pub fn t4(&self) -> &TensorSpace {
        &self.t4
    }

    fn ds(&self) -> usize {
        self.ext.top().dim()
    }

    /// The class of `s (x) 1`.
    pub fn s_one(&self, s: &[u32]) -> Vec<u32> {
        self.c.pure(s, self.ext.top().unit())
    }

    /// The class of `1 (x) s`.
    pub fn one_s(&self, s: &[u32]) -> Vec<u32> {
        self.c.pure(self.ext.top().unit(), s)
    }

    /// `x (x)_S y` for `x, y` in `C`, i.e. the middle product
    /// `sum x_ij y_kl e_i (x) e_j e_k (x) e_l`.
    pub(super) fn pair(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.ext.field();
        let s = self.ext.top();
        let ds = self.ds();
        let tx = self.c.lift_table(x);
        let ty = self.c.lift_table(y);
        let mut full = vec![0u32; ds * ds * ds];
        for (i, row) in tx.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (k, row2) in ty.iter().enumerate() {
                    let prod = s.product_of_basis(j, k);
                    for (l, &b) in row2.iter().enumerate() {
                        if b == 0 {
                            continue;
                        }
                        let ab = f.mul(a, b);
                        for (m, &cm) in prod.iter().enumerate() {
                            if cm != 0 {
                                let idx = (i * ds + m) * ds + l;
                                full[idx] = f.add(full[idx], f.mul(ab, cm));
                            }
                        }
                    }
                }
            }
        }
        self.triple.apply(&full)
    }

    pub(super) fn pure_terms(&self, w: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
        let f = self.ext.field();
        let ds = self.ds();
        let mut out = Vec::new();
        for (k, row) in self.t3.lift_table(w).iter().enumerate() {
            for (l, &x) in row.iter().enumerate() {
                if x != 0 {
                    let ck = unit_vector(self.c.dim(), k).iter().map(|&v| f.mul(v, x)).collect();
                    out.push((ck, self.one_s(&unit_vector(ds, l))));
                }
            }
        }
        out
    }

    pub(super) fn comult_left(&self, comult: &Matrix) -> Matrix {
        let ds = self.ds();
        self.t3
            .map_from(self.t4.dim(), |k, l| self.t4.pure(&comult.col(k), &unit_vector(ds, l)))
    }

    pub(super) fn comult_right(&self, comult: &Matrix) -> Matrix {
        let f = self.ext.field();
        let s = self.ext.top();
        let ds = self.ds();
        self.t3.map_from(self.t4.dim(), |k, l| {
            let (x, y) = self.c_pairs[k];
            let w = comult.apply(&self.one_s(&unit_vector(ds, l)));
            let mut full = vec![0u32; ds * ds * ds * ds];
            for (r, row) in self.t3.lift_table(&w).iter().enumerate() {
                let (p, q) = self.c_pairs[r];
                let prod = s.product_of_basis(y, p);
                for (l2, &coef) in row.iter().enumerate() {
                    if coef == 0 {
                        continue;
                    }
                    for (m, &cm) in prod.iter().enumerate() {
                        if cm != 0 {
                            let idx = ((x * ds + m) * ds + q) * ds + l2;
                            full[idx] = f.add(full[idx], f.mul(coef, cm));
                        }
                    }
                }
            }
            self.quad.apply(&full)
        })
    }

    pub(super) fn counit_left(&self, counit: &Matrix) -> Matrix {
        let ds = self.ds();
        let space = self.c.space();
        self.t3.map_from(self.c.dim(), |k, l| {
            space.left_act(&counit.col(k)).apply(&self.one_s(&unit_vector(ds, l)))
        })
    }

    pub(super) fn counit_right(&self, counit: &Matrix) -> Matrix {
        let ds = self.ds();
        let space = self.c.space();
        self.t3.map_from(self.c.dim(), |k, l| {
            let e = counit.apply(&self.one_s(&unit_vector(ds, l)));
            space.right_act(&e).col(k)
        })
    }

    pub(super) fn square_map(&self, g: &Matrix) -> Matrix {
        let ds = self.ds();
        self.t3.map_from(self.t3.dim(), |k, l| {
            self.pair(&g.col(k), &g.apply(&self.one_s(&unit_vector(ds, l))))
        })
    }
}

/// The Sweedler coring `S (x)_B S` of an extension, as an `S`-coring with
/// `Delta(s (x) t) = s (x) 1 (x) t` and `eps(s (x) t) = s t`.
pub fn build_sweedler(ext: &Extension) -> Result<Coring> {
    let model = SweedlerModel::new(ext)?;
    let s = ext.top();
    let ds = s.dim();
    let c = model.tensor();
    let t3 = model.t3();
    let comult = c.map_from(t3.dim(), |a, b| t3.pure(&model.s_one(&unit_vector(ds, a)), &unit_vector(ds, b)));
    let counit = c.map_from(ds, |a, b| s.product_of_basis(a, b).to_vec());
    let carrier = c.space().clone();
    Coring::new(s.clone(), carrier, comult, counit, TensorModel::Sweedler(Box::new(model)))
}

/// The same coring with `C (x)_S C` built as an explicit tensor product
/// over `S`. Much more expensive; used to cross-check the identification.
pub fn build_sweedler_generic(ext: &Extension) -> Result<Coring> {
    let s = ext.top();
    let ds = s.dim();
    let c = tensor_over(ext.s_sb(), ext.s_bs())?;
    let carrier = c.space().clone();
    let square = tensor_over(&carrier, &carrier)?;
    let cube = tensor_over(square.space(), &carrier)?;
    let comult = c.map_from(square.dim(), |a, b| {
        square.pure(&c.pure(&unit_vector(ds, a), s.unit()), &c.pure(s.unit(), &unit_vector(ds, b)))
    });
    let counit = c.map_from(ds, |a, b| s.product_of_basis(a, b).to_vec());
    Coring::new(s.clone(), carrier, comult, counit, TensorModel::Generic { square, cube })
}
