use serde::Serialize;

use super::{j_of, m_maps, sweedler};
use crate::coring::{equalizer_rs, twist_comodule, Comodule, Coring, CoringMorphism};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::projective::Side;
use crate::subspace::Subspace;
use crate::tensor::tensor_over;

/// The four conditions on a coring endomorphism `g`, each computed on its
/// own, with `Y` the left regular comodule twisted by `g`.
#[derive(Clone, Debug, Serialize)]
pub struct Prop31Report {
    pub j: String,
    /// `m^l_{J(g)}` is bijective.
    pub left_invertible: bool,
    /// The counit `alpha_Y o (S (x) e)` at `Y` is bijective.
    pub counit_iso: bool,
    /// `S (x)_B -` keeps `J(g) -> S => S (x)_B S` an equalizer.
    pub preserves_equalizer: bool,
    /// `S (x)_B J(g) -> S (x)_B S` is injective.
    pub tensor_inclusion_injective: bool,
    /// The counit at `Y` equals `m^l_{J(g)}` as a matrix.
    pub counit_equals_m_l: bool,
    /// `R_S(Y) = J(g)` as subspaces.
    pub equalizer_equals_j: bool,
}

impl Prop31Report {
    pub fn conditions(&self) -> [bool; 4] {
        [
            self.left_invertible,
            self.counit_iso,
            self.preserves_equalizer,
            self.tensor_inclusion_injective,
        ]
    }

    /// All four conditions agree.
    pub fn agree(&self) -> bool {
        let c = self.conditions();
        c.iter().all(|&x| x == c[0])
    }
}

pub fn prop31_report(coring: &Coring, g: &CoringMorphism) -> Result<Prop31Report> {
    let ext = sweedler(coring)?.extension();
    let jg = j_of(coring, g, Side::Left)?;
    let mm = m_maps(ext, &jg);

    let y = twist_comodule(coring, g, &Comodule::left_regular(ext))?;
    let eq = equalizer_rs(&y);
    let id = Matrix::identity(ext.field(), ext.top().dim());
    let s_eq = tensor_over(ext.s_sb(), &eq.module)?;
    let s_e = s_eq.induced(y.tensor(), &id, &eq.inclusion);
    let counit = y.action_map().mul(&s_e);

    let double = y.double_tensor()?;
    let pair = y.extend(&double, y.coaction()).sub(&y.extend(&double, &y.unit_map()));
    let preserves_equalizer = s_e.is_injective() && Subspace::image(&s_e) == Subspace::kernel(&pair);

    Ok(Prop31Report {
        j: jg.label(),
        left_invertible: mm.m_l.is_bijective(),
        counit_iso: counit.is_bijective(),
        preserves_equalizer,
        tensor_inclusion_injective: s_e.is_injective(),
        counit_equals_m_l: counit == mm.m_l,
        equalizer_equals_j: &eq.subspace == jg.subspace(),
    })
}
