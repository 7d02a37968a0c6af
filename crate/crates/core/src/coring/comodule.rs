use super::{Coring, CoringMorphism};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::matrix::Matrix;
use crate::projective::Side;
use crate::subspace::{unit_vector, Subspace};
use crate::tensor::{tensor_over, TensorSpace};

/// A comodule over the Sweedler coring of `B -> S`.
///
/// A left comodule is a left `S`-module `Y` with coaction
/// `Y -> S (x)_B Y` (the identification of `C (x)_S Y` with `S (x)_B Y`);
/// a right comodule is a right `S`-module with `Y -> Y (x)_B S`.
#[derive(Clone, Debug)]
pub struct Comodule {
    ext: Extension,
    side: Side,
    carrier: Bimodule,
    restricted: Bimodule,
    tensor: TensorSpace,
    coaction: Matrix,
}

impl Comodule {
    /// A comodule with its laws checked.
    pub fn new(ext: &Extension, side: Side, carrier: Bimodule, coaction: Matrix) -> Result<Self> {
        let y = Comodule::new_unchecked(ext, side, carrier, coaction)?;
        let v = y.law_violations();
        if !v.is_empty() {
            return Err(Error::ComoduleLaws(v.join("; ")));
        }
        Ok(y)
    }

    /// Shape checks only. `carrier` must be an `S`-module on `side`.
    pub fn new_unchecked(ext: &Extension, side: Side, carrier: Bimodule, coaction: Matrix) -> Result<Self> {
        let mut y = Comodule::frame(ext, side, carrier)?;
        if coaction.cols() != y.dim() || coaction.rows() != y.tensor.dim() {
            return Err(Error::dims("coaction has the wrong shape"));
        }
        y.coaction = coaction;
        Ok(y)
    }

    /// The carrier and its tensor spaces, with a zero coaction.
    fn frame(ext: &Extension, side: Side, carrier: Bimodule) -> Result<Self> {
        let i = ext.map();
        let (carrier, restricted, tensor) = match side {
            Side::Left => {
                let c = carrier.forget_right();
                let r = c.restrict_left(i)?;
                let t = tensor_over(ext.s_sb(), &r)?;
                (c, r, t)
            }
            Side::Right => {
                let c = carrier.forget_left();
                let r = c.restrict_right(i)?;
                let t = tensor_over(&r, ext.s_bs())?;
                (c, r, t)
            }
        };
        Ok(Comodule {
            ext: ext.clone(),
            side,
            coaction: Matrix::zeros(ext.field(), tensor.dim(), carrier.dim()),
            carrier,
            restricted,
            tensor,
        })
    }

    /// `(S, s -> s (x) 1)` as a left comodule.
    pub fn left_regular(ext: &Extension) -> Self {
        let s = ext.top();
        let mut y = Comodule::frame(ext, Side::Left, Bimodule::regular(s)).expect("S acts on itself");
        let cols: Vec<Vec<u32>> = (0..s.dim())
            .map(|a| y.tensor.pure(&unit_vector(s.dim(), a), s.unit()))
            .collect();
        y.coaction = Matrix::from_cols(ext.field(), y.tensor.dim(), &cols);
        y
    }

    /// `(S, s -> 1 (x) s)` as a right comodule.
    pub fn right_regular(ext: &Extension) -> Self {
        let s = ext.top();
        let mut y = Comodule::frame(ext, Side::Right, Bimodule::regular(s)).expect("S acts on itself");
        let cols: Vec<Vec<u32>> = (0..s.dim())
            .map(|a| y.tensor.pure(s.unit(), &unit_vector(s.dim(), a)))
            .collect();
        y.coaction = Matrix::from_cols(ext.field(), y.tensor.dim(), &cols);
        y
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `Y` as an `S`-module.
    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    /// `Y` as a `B`-module.
    pub fn restricted(&self) -> &Bimodule {
        &self.restricted
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// `S (x)_B Y` or `Y (x)_B S`.
    pub fn tensor(&self) -> &TensorSpace {
        &self.tensor
    }

    pub fn coaction(&self) -> &Matrix {
        &self.coaction
    }

    /// `eta_Y`: `y -> 1 (x) y` or `y -> y (x) 1`.
    pub fn unit_map(&self) -> Matrix {
        let one = self.ext.top().unit();
        let n = self.dim();
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|c| match self.side {
                Side::Left => self.tensor.pure(one, &unit_vector(n, c)),
                Side::Right => self.tensor.pure(&unit_vector(n, c), one),
            })
            .collect();
        Matrix::from_cols(self.ext.field(), self.tensor.dim(), &cols)
    }

    /// `alpha_Y`: the action `S (x)_B Y -> Y` (or `Y (x)_B S -> Y`).
    pub fn action_map(&self) -> Matrix {
        let ds = self.ext.top().dim();
        let n = self.dim();
        match self.side {
            Side::Left => self
                .tensor
                .map_from(n, |a, c| self.carrier.left_act(&unit_vector(ds, a)).col(c)),
            Side::Right => self
                .tensor
                .map_from(n, |a, c| self.carrier.right_act(&unit_vector(ds, c)).col(a)),
        }
    }

    /// `S (x)_B (S (x)_B Y)` or `(Y (x)_B S) (x)_B S`.
    pub fn double_tensor(&self) -> Result<TensorSpace> {
        let i = self.ext.map();
        match self.side {
            Side::Left => tensor_over(self.ext.s_sb(), &self.tensor.space().restrict_left(i)?),
            Side::Right => tensor_over(&self.tensor.space().restrict_right(i)?, self.ext.s_bs()),
        }
    }

    /// `S (x)_B f` (or `f (x)_B S`) for a `B`-linear `f: Y -> S (x)_B Y`.
    pub fn extend(&self, double: &TensorSpace, f: &Matrix) -> Matrix {
        let id = Matrix::identity(self.ext.field(), self.ext.top().dim());
        match self.side {
            Side::Left => self.tensor.induced(double, &id, f),
            Side::Right => self.tensor.induced(double, f, &id),
        }
    }

    /// Every failed comodule law.
    pub fn law_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.carrier.is_map_to(self.tensor.space(), &self.coaction) {
            out.push("coaction is not S-linear".into());
        }
        if self.action_map().mul(&self.coaction) != Matrix::identity(self.ext.field(), self.dim()) {
            out.push("counit law fails".into());
        }
        match self.double_tensor() {
            Ok(double) => {
                let lhs = self.extend(&double, &self.coaction).mul(&self.coaction);
                let rhs = self.extend(&double, &self.unit_map()).mul(&self.coaction);
                if lhs != rhs {
                    out.push("coassociativity fails".into());
                }
            }
            Err(e) => out.push(e.to_string()),
        }
        out
    }

    /// Coassociativity stated with the comultiplication of `coring`
    /// instead of the unit `eta_Y`.
    pub fn coassociative_via(&self, coring: &Coring) -> Result<bool> {
        let model = sweedler_of(coring, &self.ext)?;
        let f = self.ext.field();
        let s = self.ext.top();
        let ds = s.dim();
        let double = self.double_tensor()?;
        let c = model.tensor();
        let t3 = model.t3();
        let delta_y = self.tensor.map_from(double.dim(), |a, col| {
            let w = match self.side {
                Side::Left => coring.comult().apply(&model.s_one(&unit_vector(ds, a))),
                Side::Right => coring.comult().apply(&model.one_s(&unit_vector(ds, col))),
            };
            let mut v = vec![0u32; double.dim()];
            for (k, row) in t3.lift_table(&w).iter().enumerate() {
                let (p, q) = c.lifted_pair(k);
                for (r, &coef) in row.iter().enumerate() {
                    if coef == 0 {
                        continue;
                    }
                    let term = match self.side {
                        Side::Left => {
                            let ry = self.carrier.left_act(&unit_vector(ds, r)).col(col);
                            double.pure(&unit_vector(ds, p), &self.tensor.pure(&unit_vector(ds, q), &ry))
                        }
                        Side::Right => {
                            let yp = self.carrier.right_act(&unit_vector(ds, p)).col(a);
                            double.pure(&self.tensor.pure(&yp, &unit_vector(ds, q)), &unit_vector(ds, r))
                        }
                    };
                    for (x, y) in v.iter_mut().zip(term) {
                        *x = f.add(*x, f.mul(coef, y));
                    }
                }
            }
            v
        });
        let lhs = delta_y.mul(&self.coaction);
        let rhs = self.extend(&double, &self.coaction).mul(&self.coaction);
        Ok(lhs == rhs)
    }
}

fn sweedler_of<'a>(coring: &'a Coring, ext: &Extension) -> Result<&'a super::SweedlerModel> {
    let model = coring
        .sweedler()
        .ok_or_else(|| Error::AlgebraMismatch("not a Sweedler coring".into()))?;
    if model.extension().map() != ext.map() {
        return Err(Error::AlgebraMismatch("comodule and coring come from different extensions".into()));
    }
    Ok(model)
}

/// Twist the coaction of `y` by a coring endomorphism `g`: `(g (x) 1) o
/// theta` for left comodules, `(1 (x) g) o theta` for right ones.
pub fn twist_comodule(coring: &Coring, g: &CoringMorphism, y: &Comodule) -> Result<Comodule> {
    let model = sweedler_of(coring, &y.ext)?;
    if !coring.is_morphism(g.matrix()) {
        return Err(Error::NotCoringMorphism("not an endomorphism of this coring".into()));
    }
    let f = y.ext.field();
    let ds = y.ext.top().dim();
    let c = model.tensor();
    let t = &y.tensor;
    let g = g.matrix();
    let twist = t.map_from(t.dim(), |a, col| {
        let w = match y.side {
            Side::Left => g.apply(&model.s_one(&unit_vector(ds, a))),
            Side::Right => g.apply(&model.one_s(&unit_vector(ds, col))),
        };
        let mut v = vec![0u32; t.dim()];
        for (i, row) in c.lift_table(&w).iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let term = match y.side {
                    Side::Left => t.pure(&unit_vector(ds, i), &y.carrier.left_act(&unit_vector(ds, j)).col(col)),
                    Side::Right => t.pure(&y.carrier.right_act(&unit_vector(ds, i)).col(a), &unit_vector(ds, j)),
                };
                for (o, z) in v.iter_mut().zip(term) {
                    *o = f.add(*o, f.mul(x, z));
                }
            }
        }
        v
    });
    Comodule::new(&y.ext, y.side, y.carrier.clone(), twist.mul(&y.coaction))
}

/// `K_S(X) = (S (x)_B X, S (x)_B eta_X)` for a left `B`-module `X`, with
/// the unit `X -> S (x)_B X`.
pub(crate) fn comparison_with_unit(ext: &Extension, x: &Bimodule) -> Result<(Comodule, Matrix)> {
    if x.left_alg() != ext.base() {
        return Err(Error::AlgebraMismatch("X must be a left module over the base".into()));
    }
    let x = x.forget_right();
    let sx = tensor_over(ext.s_sb(), &x)?;
    let s = ext.top();
    let ds = s.dim();
    let mut y = Comodule::frame(ext, Side::Left, sx.space().clone())?;
    let theta = sx.map_from(y.tensor.dim(), |a, c| {
        y.tensor.pure(&unit_vector(ds, a), &sx.pure(s.unit(), &unit_vector(x.dim(), c)))
    });
    y.coaction = theta;
    let v = y.law_violations();
    if !v.is_empty() {
        return Err(Error::ComoduleLaws(v.join("; ")));
    }
    let unit = Matrix::from_cols(
        ext.field(),
        sx.dim(),
        &(0..x.dim()).map(|c| sx.pure(s.unit(), &unit_vector(x.dim(), c))).collect::<Vec<_>>(),
    );
    Ok((y, unit))
}

/// The comparison functor on a left `B`-module.
pub fn comparison_functor(ext: &Extension, x: &Bimodule) -> Result<Comodule> {
    Ok(comparison_with_unit(ext, x)?.0)
}

/// `R_S(Y)`: the kernel of `eta_Y - theta_Y` with its inclusion.
#[derive(Clone, Debug)]
pub struct Equalizer {
    pub subspace: Subspace,
    /// The kernel as a `B`-module.
    pub module: Bimodule,
    pub inclusion: Matrix,
}

pub fn equalizer_rs(y: &Comodule) -> Equalizer {
    let diff = y.unit_map().sub(&y.coaction);
    let subspace = Subspace::kernel(&diff);
    let module = y
        .restricted
        .submodule(&subspace)
        .expect("an equalizer of B-linear maps is a B-submodule");
    Equalizer {
        inclusion: subspace.inclusion(),
        subspace,
        module,
    }
}
