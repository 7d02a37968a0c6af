//! Sufficient conditions for `S (x)_B -` and `- (x)_B S` to be comonadic,
//! and direct checks of the conditions they imply on the comodules the
//! descent comparisons use.

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::bimodule::Bimodule;
use crate::coring::{comparison_with_unit, equalizer_rs, Comodule};
use crate::error::Result;
use crate::extension::Extension;
use crate::matrix::Matrix;
use crate::projective::{dual_basis, DualBasis, Side};
use crate::subspace::{all_subspaces, Subspace};
use crate::tensor::tensor_over;

/// Proper left ideals (`side = Left`) or right ideals of `b`.
pub fn proper_ideals(b: &FiniteAlgebra, side: Side, budget: u128) -> Result<Vec<Subspace>> {
    let reg = one_sided_regular(b, side);
    Ok(all_subspaces(b.field(), b.dim(), budget)?
        .into_iter()
        .filter(|l| l.dim() < b.dim() && reg.submodule(l).is_some())
        .collect())
}

/// The maximal elements of [`proper_ideals`].
pub fn maximal_ideals(b: &FiniteAlgebra, side: Side, budget: u128) -> Result<Vec<Subspace>> {
    let all = proper_ideals(b, side, budget)?;
    Ok(all
        .iter()
        .filter(|l| !all.iter().any(|m| m != *l && l.is_subspace_of(m)))
        .cloned()
        .collect())
}

fn one_sided_regular(b: &FiniteAlgebra, side: Side) -> Bimodule {
    match side {
        Side::Left => Bimodule::regular(b).forget_right(),
        Side::Right => Bimodule::regular(b).forget_left(),
    }
}

/// `B/L` as a left module (`side = Left`) or right module.
fn cyclic(b: &FiniteAlgebra, l: &Subspace, side: Side) -> Bimodule {
    one_sided_regular(b, side).quotient(l).expect("an ideal").0
}

/// Dimension of `M (x)_B B/L` (`side = Right`, `L` a left ideal) or
/// `B/L (x)_B M` (`side = Left`, `L` a right ideal).
fn tensor_with_cyclic(m: &Bimodule, l: &Subspace, side: Side) -> Result<usize> {
    Ok(match side {
        Side::Right => {
            let b = m.right_alg();
            tensor_over(&m.forget_left(), &cyclic(b, l, Side::Left))?.dim()
        }
        Side::Left => {
            let b = m.left_alg();
            tensor_over(&cyclic(b, l, Side::Right), &m.forget_right())?.dim()
        }
    })
}

/// One nonvanishing check `M (x)_B B/L != 0`.
#[derive(Clone, Debug, Serialize)]
pub struct IdealCheck {
    pub ideal: String,
    pub tensor_dim: usize,
}

/// Projectivity plus nonvanishing on every simple cyclic module.
#[derive(Clone, Debug)]
pub struct FlatWitness {
    pub side: Side,
    pub dual_basis: DualBasis,
    pub checks: Vec<IdealCheck>,
}

/// Whether `M` is faithfully flat over `B` on `side`: `Right` means `M_B`
/// (so `M (x)_B -` is faithfully exact), `Left` means `_B M`.
///
/// Flatness is projectivity at finite dimension. Faithfulness is tested on
/// the simple modules `B/L`, `L` maximal, which suffices for flat modules.
pub fn is_faithfully_flat(m: &Bimodule, side: Side, budget: u128) -> Result<Option<FlatWitness>> {
    let Some(db) = dual_basis(m, side) else {
        return Ok(None);
    };
    let b = match side {
        Side::Right => m.right_alg(),
        Side::Left => m.left_alg(),
    };
    let ideal_side = match side {
        Side::Right => Side::Left,
        Side::Left => Side::Right,
    };
    let mut checks = Vec::new();
    for l in maximal_ideals(b, ideal_side, budget)? {
        let d = tensor_with_cyclic(m, &l, side)?;
        if d == 0 {
            return Ok(None);
        }
        checks.push(IdealCheck {
            ideal: l.label(),
            tensor_dim: d,
        });
    }
    Ok(Some(FlatWitness {
        side,
        dual_basis: db,
        checks,
    }))
}

/// A `(B, B)`-bimodule map `pi: S -> B` with `pi o i = id`.
pub fn is_direct_summand(ext: &Extension) -> Option<Matrix> {
    let b = ext.base();
    let target = Bimodule::regular(b);
    let mut sys = ext.s_bb().hom_system(&target).ok()?;
    sys.right_compose(ext.map().matrix(), &Matrix::identity(ext.field(), b.dim()));
    let sol = sys.solve()?;
    Some(sys_matrix(ext, &sol.particular))
}

fn sys_matrix(ext: &Extension, flat: &[u32]) -> Matrix {
    let (rows, cols) = (ext.base().dim(), ext.top().dim());
    Matrix::from_fn(ext.field(), rows, cols, |r, c| flat[r * cols + c])
}

/// `S (x)_B B/L != 0` for every proper left ideal `L`. Returns the first
/// ideal that is killed, if any.
pub fn is_conservative(ext: &Extension, budget: u128) -> Result<std::result::Result<Vec<IdealCheck>, Subspace>> {
    let mut checks = Vec::new();
    for l in proper_ideals(ext.base(), Side::Left, budget)? {
        let d = tensor_with_cyclic(ext.s_sb(), &l, Side::Right)?;
        if d == 0 {
            return Ok(Err(l));
        }
        checks.push(IdealCheck {
            ideal: l.label(),
            tensor_dim: d,
        });
    }
    Ok(Ok(checks))
}

/// Whether the functor keeps `R_S(Y) -> Y => S (x)_B Y` an equalizer, and
/// whether the always-split `Y -> S (x)_B Y => S (x)_B S (x)_B Y` is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EqualizerCheck {
    pub preserved: bool,
    pub split_self_test: bool,
}

pub fn preserves_equalizer(y: &Comodule) -> Result<EqualizerCheck> {
    let ext = y.extension();
    let eq = equalizer_rs(y);
    let id = Matrix::identity(ext.field(), ext.top().dim());
    let extended = match y.side() {
        Side::Left => tensor_over(ext.s_sb(), &eq.module)?.induced(y.tensor(), &id, &eq.inclusion),
        Side::Right => tensor_over(&eq.module, ext.s_bs())?.induced(y.tensor(), &eq.inclusion, &id),
    };
    let double = y.double_tensor()?;
    let pair = y.extend(&double, y.coaction()).sub(&y.extend(&double, &y.unit_map()));
    let kernel = Subspace::kernel(&pair);
    Ok(EqualizerCheck {
        preserved: extended.is_injective() && Subspace::image(&extended) == kernel,
        split_self_test: y.coaction().is_injective() && Subspace::image(y.coaction()) == kernel,
    })
}

/// The kinds of evidence a certificate can carry, in the order tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceKind {
    /// `S_B` faithfully flat: `S (x)_B -` is faithfully exact.
    LeftFaithfullyFlat,
    /// `_B S` faithfully flat: `- (x)_B S` is faithfully exact.
    RightFaithfullyFlat,
    /// `B` is a direct summand of `S` as a bimodule.
    BimoduleRetraction,
    /// `_B M` faithfully flat.
    LeftFlatM,
    /// `M*_B` faithfully flat.
    RightFlatMDual,
}

impl EvidenceKind {
    /// Comonadicity of `S (x)_B -` follows.
    pub fn left_comonadic(self) -> bool {
        matches!(self, EvidenceKind::LeftFaithfullyFlat | EvidenceKind::BimoduleRetraction)
    }

    /// Comonadicity of `- (x)_B S` follows.
    pub fn right_comonadic(self) -> bool {
        matches!(self, EvidenceKind::RightFaithfullyFlat | EvidenceKind::BimoduleRetraction)
    }

    pub fn name(self) -> &'static str {
        match self {
            EvidenceKind::LeftFaithfullyFlat => "left-faithfully-flat",
            EvidenceKind::RightFaithfullyFlat => "right-faithfully-flat",
            EvidenceKind::BimoduleRetraction => "bimodule-retraction",
            EvidenceKind::LeftFlatM => "left-ff-M",
            EvidenceKind::RightFlatMDual => "right-ff-Mdual",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Witness {
    Flat { module: Bimodule, witness: FlatWitness },
    Retraction(Matrix),
}

#[derive(Clone, Debug)]
pub struct Evidence {
    pub kind: EvidenceKind,
    pub witness: Witness,
}

impl Evidence {
    /// Check the witness again from scratch.
    pub fn reverify(&self, ext: &Extension) -> bool {
        match &self.witness {
            Witness::Retraction(pi) => {
                let b = ext.base();
                pi.mul(ext.map().matrix()) == Matrix::identity(ext.field(), b.dim())
                    && ext.s_bb().is_map_to(&Bimodule::regular(b), pi)
            }
            Witness::Flat { module, witness } => {
                witness.dual_basis.side == witness.side
                    && witness.dual_basis.verify(module)
                    && witness.checks.iter().all(|c| c.tensor_dim > 0)
            }
        }
    }
}

/// All evidence found for an extension, in the fixed order; the first
/// entry is the one selected.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub evidence: Vec<Evidence>,
}

impl Certificate {
    pub fn kind(&self) -> EvidenceKind {
        self.evidence[0].kind
    }

    pub fn kinds(&self) -> Vec<EvidenceKind> {
        self.evidence.iter().map(|e| e.kind).collect()
    }

    pub fn has(&self, kind: EvidenceKind) -> bool {
        self.evidence.iter().any(|e| e.kind == kind)
    }

    pub fn left_comonadic(&self) -> bool {
        self.evidence.iter().any(|e| e.kind.left_comonadic())
    }

    pub fn right_comonadic(&self) -> bool {
        self.evidence.iter().any(|e| e.kind.right_comonadic())
    }

    /// Evidence about `S` itself, as opposed to `M`.
    pub fn on_extension(&self) -> bool {
        self.left_comonadic() || self.right_comonadic()
    }
}

/// Collect every kind of evidence. `m` is the `(B, A)`-bimodule of the
/// comatrix case, with `m_dual` the right `B`-module `M*`.
pub fn certify(ext: &Extension, m: Option<(&Bimodule, &Bimodule)>, budget: u128) -> Result<Option<Certificate>> {
    let mut evidence = Vec::new();
    push_flat(&mut evidence, EvidenceKind::LeftFaithfullyFlat, ext.s_sb(), Side::Right, budget)?;
    push_flat(&mut evidence, EvidenceKind::RightFaithfullyFlat, ext.s_bs(), Side::Left, budget)?;
    if let Some(pi) = is_direct_summand(ext) {
        evidence.push(Evidence {
            kind: EvidenceKind::BimoduleRetraction,
            witness: Witness::Retraction(pi),
        });
    }
    if let Some((m, m_dual)) = m {
        push_flat(&mut evidence, EvidenceKind::LeftFlatM, m, Side::Left, budget)?;
        push_flat(&mut evidence, EvidenceKind::RightFlatMDual, m_dual, Side::Right, budget)?;
    }
    Ok((!evidence.is_empty()).then_some(Certificate { evidence }))
}

fn push_flat(out: &mut Vec<Evidence>, kind: EvidenceKind, module: &Bimodule, side: Side, budget: u128) -> Result<()> {
    if let Some(witness) = is_faithfully_flat(module, side, budget)? {
        out.push(Evidence {
            kind,
            witness: Witness::Flat {
                module: module.clone(),
                witness,
            },
        });
    }
    Ok(())
}

/// The unit `X -> R_S K_S(X)` on every cyclic `X = B/L`.
#[derive(Clone, Debug, Serialize)]
pub struct UnitReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl UnitReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn unit_on_cyclics(ext: &Extension, budget: u128) -> Result<UnitReport> {
    let b = ext.base();
    let ideals = proper_ideals(b, Side::Left, budget)?;
    let mut failures = Vec::new();
    for l in &ideals {
        let x = cyclic(b, l, Side::Left);
        let (k, unit) = comparison_with_unit(ext, &x)?;
        let r = equalizer_rs(&k);
        if !(unit.is_injective() && Subspace::image(&unit) == r.subspace) {
            failures.push(l.label());
        }
    }
    Ok(UnitReport {
        checked: ideals.len(),
        failures,
    })
}
