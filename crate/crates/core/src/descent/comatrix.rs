use serde::Serialize;

use super::witness::{assemble, Sides};
use super::{accumulate, gamma, j_of, m_maps, Budgets, Descent, GammaWitness, Order, SubBimodule};
use crate::bimodule::Bimodule;
use crate::coring::{build_comatrix, coring_endomorphisms, ComatrixCoring, Coring, CoringEndos, CoringMorphism};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::projective::Side;
use crate::subspace::unit_vector;

/// `Gamma_0(I)` (left, `I` in `I^l`) or `Gamma'_0(I)` (right, `I` in `I^r`)
/// on `M* (x)_B M`, where `ext` is `B -> End_A(M)`.
pub fn gamma0(sigma: &ComatrixCoring, ext: &Extension, i: &SubBimodule, side: Side) -> Result<CoringMorphism> {
    if !ext.is_injective() {
        return Err(Error::NotInjective);
    }
    let end = sigma.end();
    let f = ext.field();
    let s = ext.top();
    let ds = s.dim();
    let n = sigma.module().dim();
    let sig = sigma.sigma();
    let mm = m_maps(ext, i);
    let basis = i.subspace().basis();
    let one = s.unit();
    // (x_k, y_k) with sum x_k (x) y_k the preimage of 1
    let mut terms: Vec<(u32, Vec<u32>, Vec<u32>)> = Vec::new();
    match side {
        Side::Left => {
            let w = mm.m_l.inverse().ok_or(Error::NotInvertible("left"))?.apply(one);
            for (x, row) in mm.left.lift_table(&w).iter().enumerate() {
                for (y, &c) in row.iter().enumerate() {
                    if c != 0 {
                        terms.push((c, unit_vector(ds, x), basis[y].clone()));
                    }
                }
            }
        }
        Side::Right => {
            let w = mm.m_r.inverse().ok_or(Error::NotInvertible("right"))?.apply(one);
            for (y, row) in mm.right.lift_table(&w).iter().enumerate() {
                for (x, &c) in row.iter().enumerate() {
                    if c != 0 {
                        terms.push((c, unit_vector(ds, x), basis[y].clone()));
                    }
                }
            }
        }
    }
    let on_dual = |s: &[u32]| end.mstar_as().right_act(s);
    let on_module = |s: &[u32]| end.m_sa().left_act(s);
    let matrix = sig.map_from(sig.dim(), |q, c| {
        let phi = unit_vector(sig.left().dim(), q);
        let m = unit_vector(n, c);
        let mut v = vec![0u32; sig.dim()];
        for (coef, x, y) in &terms {
            // left: phi x (x) y m; right: phi y (x) x m
            let (l, r) = match side {
                Side::Left => (x, y),
                Side::Right => (y, x),
            };
            accumulate(f, &mut v, *coef, &sig.pure(&on_dual(l).apply(&phi), &on_module(r).apply(&m)));
        }
        v
    });
    sigma.coring().morphism(matrix)
}

/// `g^ = (xi (x) xi) o (M (x) g (x) M*) o (xi^-1 (x) xi^-1)`, an
/// endomorphism of the Sweedler coring of `B -> End_A(M)`.
pub fn hat_map(sigma: &ComatrixCoring, sweedler: &Coring, g: &CoringMorphism) -> Result<CoringMorphism> {
    let model = sweedler
        .sweedler()
        .ok_or_else(|| Error::AlgebraMismatch("expected the Sweedler coring of End_A(M)".into()))?;
    let end = sigma.end();
    let xi_inv = end.xi().inverse().ok_or(Error::XiNotInvertible)?;
    let xt = end.xi_tensor();
    let sig = sigma.sigma();
    let f = end.field();
    let (n, k) = (xt.left().dim(), xt.right().dim());
    // xi(m_u (x) F_q)
    let xi_pure: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|u| (0..k).map(|q| end.xi().apply(&xt.pure_basis(u, q))).collect())
        .collect();
    let c = model.tensor();
    let matrix = c.map_from(c.dim(), |a, b| {
        let ta = xt.lift_table(&xi_inv.col(a));
        let tb = xt.lift_table(&xi_inv.col(b));
        let mut v = vec![0u32; c.dim()];
        for (u, row_a) in ta.iter().enumerate() {
            for (q, &alpha) in row_a.iter().enumerate() {
                if alpha == 0 {
                    continue;
                }
                for (vv, row_b) in tb.iter().enumerate() {
                    for (r, &beta) in row_b.iter().enumerate() {
                        if beta == 0 {
                            continue;
                        }
                        let w = g.matrix().apply(&sig.pure_basis(q, vv));
                        for (q2, row_w) in sig.lift_table(&w).iter().enumerate() {
                            for (v2, &gamma) in row_w.iter().enumerate() {
                                if gamma != 0 {
                                    let coef = f.mul(f.mul(alpha, beta), gamma);
                                    accumulate(f, &mut v, coef, &c.pure(&xi_pure[u][q2], &xi_pure[v2][r]));
                                }
                            }
                        }
                    }
                }
            }
        }
        v
    });
    sweedler.morphism(matrix)
}

/// `g -> g^` on every endomorphism of the comatrix coring.
#[derive(Clone, Debug, Serialize)]
pub struct HatReport {
    /// Sweedler endomorphism index of each `g^`.
    pub images: Vec<Option<usize>>,
    pub injective: bool,
    pub multiplicative: bool,
    pub counterexamples: Vec<String>,
}

/// `Gamma = hat o Gamma_0` on `I^l`.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl TriangleReport {
    pub fn commutes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compare `Gamma(I)` with `hat_map(Gamma_0(I))` for every `I` in `I^l`.
pub fn triangle_check(d: &ComatrixDescent) -> TriangleReport {
    let mut violations = Vec::new();
    let domain = d.descent.left_invertible();
    for &k in &domain {
        let i = &d.descent.lattice().elements[k];
        let lhs = gamma(d.descent.coring(), i);
        let rhs = gamma0(&d.sigma, d.descent.extension(), i, Side::Left).and_then(|g| d.hat(&g));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(_), Ok(_)) => violations.push(format!("Gamma and hat o Gamma_0 differ at {}", i.label())),
            (Err(e), _) | (_, Err(e)) => violations.push(format!("{}: {e}", i.label())),
        }
    }
    TriangleReport {
        checked: domain.len(),
        violations,
    }
}

/// The comatrix setting for a `(B, A)`-bimodule `M`: the coring
/// `M* (x)_B M`, its endomorphisms, and the descent data of
/// `B -> End_A(M)`.
#[derive(Clone, Debug)]
pub struct ComatrixDescent {
    sigma: ComatrixCoring,
    sigma_endos: CoringEndos,
    descent: Descent,
}

impl ComatrixDescent {
    pub fn new(m: &Bimodule, budgets: Budgets) -> Result<Self> {
        let sigma = build_comatrix(m)?;
        if !sigma.end().xi_is_bijective() {
            return Err(Error::XiNotInvertible);
        }
        let descent = Descent::new(sigma.end().extension(), budgets)?;
        let sigma_endos = coring_endomorphisms(sigma.coring(), budgets.endos)?;
        Ok(ComatrixDescent {
            sigma,
            sigma_endos,
            descent,
        })
    }

    pub fn sigma(&self) -> &ComatrixCoring {
        &self.sigma
    }

    pub fn sigma_endos(&self) -> &CoringEndos {
        &self.sigma_endos
    }

    pub fn descent(&self) -> &Descent {
        &self.descent
    }

    pub fn gamma0(&self, i: &SubBimodule, side: Side) -> Result<CoringMorphism> {
        gamma0(&self.sigma, self.descent.extension(), i, side)
    }

    pub fn hat(&self, g: &CoringMorphism) -> Result<CoringMorphism> {
        hat_map(&self.sigma, self.descent.coring(), g)
    }

    pub fn hat_report(&self) -> HatReport {
        let mut counterexamples = Vec::new();
        let endos = self.descent.endos();
        let images: Vec<Option<usize>> = self
            .sigma_endos
            .elements
            .iter()
            .enumerate()
            .map(|(t, g)| match self.hat(g) {
                Ok(h) => {
                    let idx = endos.index_of(h.matrix());
                    if idx.is_none() {
                        counterexamples.push(format!("hat of #{t} is missing from the Sweedler endomorphisms"));
                    }
                    idx
                }
                Err(e) => {
                    counterexamples.push(format!("hat of #{t}: {e}"));
                    None
                }
            })
            .collect();
        let mut seen: Vec<usize> = images.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        let injective = images.iter().all(Option::is_some) && seen.len() == images.len();
        let table = &self.sigma_endos.table;
        let mut multiplicative = images[table.identity()] == Some(endos.table.identity());
        for a in 0..images.len() {
            for b in 0..images.len() {
                let ok = match (images[a], images[b], images[table.product(a, b)]) {
                    (Some(x), Some(y), Some(z)) => endos.table.product(x, y) == z,
                    _ => false,
                };
                if !ok {
                    multiplicative = false;
                    counterexamples.push(format!("hat does not respect the product of #{a} and #{b}"));
                }
            }
        }
        HatReport {
            images,
            injective,
            multiplicative,
            counterexamples,
        }
    }

    pub fn triangle(&self) -> TriangleReport {
        triangle_check(self)
    }

    fn sides(&self) -> Sides<'_> {
        Sides {
            lattice: &self.descent.lattice().table,
            endos: &self.sigma_endos.table,
        }
    }

    /// Lattice index of `J(g^)` (or `J'(g^)`) for each `g` in `targets`.
    fn recovered(&self, targets: &[usize], side: Side) -> Vec<Option<usize>> {
        targets
            .iter()
            .map(|&t| {
                let h = self.hat(&self.sigma_endos.elements[t]).ok()?;
                let j = j_of(self.descent.coring(), &h, side).ok()?;
                self.descent.lattice().index_of(&j)
            })
            .collect()
    }

    fn witness(&self, domain: Vec<usize>, targets: Vec<usize>, side: Side) -> GammaWitness {
        let mut notes = Vec::new();
        let lattice = self.descent.lattice();
        let forward: Vec<Option<usize>> = domain
            .iter()
            .map(|&k| match self.gamma0(&lattice.elements[k], side) {
                Ok(g) => self.sigma_endos.index_of(g.matrix()),
                Err(e) => {
                    notes.push(format!("Gamma_0({}) undefined: {e}", lattice.elements[k].label()));
                    None
                }
            })
            .collect();
        let backward = self.recovered(&targets, side);
        let order = match side {
            Side::Left => Order::Preserves,
            Side::Right => Order::Reverses,
        };
        assemble(
            self.sides(),
            domain,
            targets,
            &forward,
            &backward,
            order,
            |k| self.descent.label(k),
            notes,
        )
    }

    /// `Gamma_0: I^l -> End(Sigma)` against `g -> J(g^)`.
    pub fn gamma0_witness(&self) -> GammaWitness {
        let targets = (0..self.sigma_endos.elements.len()).collect();
        self.witness(self.descent.left_invertible(), targets, Side::Left)
    }

    /// `Gamma'_0: I^r -> End(Sigma)` against `g -> J'(g^)`.
    pub fn gamma0_prime_witness(&self) -> GammaWitness {
        let targets = (0..self.sigma_endos.elements.len()).collect();
        self.witness(self.descent.right_invertible(), targets, Side::Right)
    }

    /// `Gamma_0: Inv -> Aut(Sigma)`.
    pub fn gamma0_group_witness(&self) -> GammaWitness {
        self.witness(self.descent.invertible(), self.sigma_endos.automorphisms(), Side::Left)
    }
}
