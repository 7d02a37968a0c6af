use serde::Serialize;

use super::witness::{assemble, Sides};
use super::{
    gamma_matrix, gamma_prime, j_of, m_maps, prop31_report, GammaWitness, MMaps, Order, Prop31Report,
    SubbimoduleMonoid, DEFAULT_SUBSPACE_BUDGET,
};
use crate::coring::{build_sweedler, coring_endomorphisms, Coring, CoringEndos, DEFAULT_ENDO_BUDGET};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::matrix::Matrix;
use crate::monoid::MonoidTable;
use crate::projective::Side;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub subspaces: u128,
    pub endos: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            subspaces: DEFAULT_SUBSPACE_BUDGET,
            endos: DEFAULT_ENDO_BUDGET,
        }
    }
}

/// Deliberate corruption used to check that the verification notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Add one to entry `(0, 0)` of the first computed `Gamma(I)`.
    FlipGammaEntry,
}

/// Everything the descent comparisons need for one extension: the Sweedler
/// coring, `I_B(S)` with its multiplication maps, and the endomorphisms.
#[derive(Clone, Debug)]
pub struct Descent {
    ext: Extension,
    coring: Coring,
    lattice: SubbimoduleMonoid,
    mmaps: Vec<MMaps>,
    endos: CoringEndos,
    mutation: Option<Mutation>,
}

/// `Inv_B(S)` and the restriction of `Gamma` to it.
#[derive(Clone, Debug, Serialize)]
pub struct InvReport {
    pub members: Vec<usize>,
    pub table: MonoidTable,
    /// Whether `Inv` coincides with `I^l` intersected with `I^r` here.
    pub equals_left_right_intersection: bool,
    pub witness: GammaWitness,
}

/// Proper inclusions `I < J` that `S (x)_B -` turns into bijections.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub pairs_checked: usize,
    pub counterexamples: Vec<(usize, usize)>,
}

impl EmbeddingReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl Descent {
    pub fn new(ext: &Extension, budgets: Budgets) -> Result<Self> {
        if !ext.is_injective() {
            return Err(Error::NotInjective);
        }
        let lattice = SubbimoduleMonoid::build(ext, budgets.subspaces)?;
        let mmaps = lattice.elements.iter().map(|i| m_maps(ext, i)).collect();
        let coring = build_sweedler(ext)?;
        let endos = coring_endomorphisms(&coring, budgets.endos)?;
        Ok(Descent {
            ext: ext.clone(),
            coring,
            lattice,
            mmaps,
            endos,
            mutation: None,
        })
    }

    pub fn with_mutation(mut self, mutation: Option<Mutation>) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn coring(&self) -> &Coring {
        &self.coring
    }

    pub fn lattice(&self) -> &SubbimoduleMonoid {
        &self.lattice
    }

    pub fn endos(&self) -> &CoringEndos {
        &self.endos
    }

    pub fn m_maps(&self, k: usize) -> &MMaps {
        &self.mmaps[k]
    }

    /// Lattice indices of `I^l`.
    pub fn left_invertible(&self) -> Vec<usize> {
        (0..self.lattice.len()).filter(|&k| self.mmaps[k].left_invertible()).collect()
    }

    /// Lattice indices of `I^r`.
    pub fn right_invertible(&self) -> Vec<usize> {
        (0..self.lattice.len()).filter(|&k| self.mmaps[k].right_invertible()).collect()
    }

    /// Lattice indices of `Inv`, the elements with a two-sided inverse.
    pub fn invertible(&self) -> Vec<usize> {
        self.lattice.table.units()
    }

    pub fn label(&self, k: usize) -> String {
        self.lattice.elements[k].label()
    }

    fn sides(&self) -> Sides<'_> {
        Sides {
            lattice: &self.lattice.table,
            endos: &self.endos.table,
        }
    }

    /// Endomorphism indices of `Gamma(I)` over `domain`, with failures.
    fn gamma_images(&self, domain: &[usize]) -> (Vec<Option<usize>>, Vec<String>) {
        let mut notes = Vec::new();
        let images = domain
            .iter()
            .enumerate()
            .map(|(pos, &k)| {
                let mut g = match gamma_matrix(&self.coring, &self.lattice.elements[k]) {
                    Ok(g) => g,
                    Err(e) => {
                        notes.push(format!("Gamma({}) undefined: {e}", self.label(k)));
                        return None;
                    }
                };
                if pos == 0 && self.mutation == Some(Mutation::FlipGammaEntry) {
                    let f = self.ext.field();
                    g.set(0, 0, f.add(g.get(0, 0), 1));
                }
                self.image_index(g, || format!("Gamma({})", self.label(k)), &mut notes)
            })
            .collect();
        (images, notes)
    }

    fn image_index(&self, g: Matrix, name: impl Fn() -> String, notes: &mut Vec<String>) -> Option<usize> {
        match self.coring.morphism(g) {
            Ok(g) => {
                let idx = self.endos.index_of(g.matrix());
                if idx.is_none() {
                    notes.push(format!("{} is missing from the enumerated endomorphisms", name()));
                }
                idx
            }
            Err(e) => {
                notes.push(format!("{}: {e}", name()));
                None
            }
        }
    }

    /// Lattice index of `J(g)` (or `J'(g)`) for every endomorphism.
    pub fn j_indices(&self, side: Side) -> Vec<Option<usize>> {
        self.endos
            .elements
            .iter()
            .map(|g| {
                j_of(&self.coring, g, side)
                    .ok()
                    .and_then(|j| self.lattice.index_of(&j))
            })
            .collect()
    }

    /// `Gamma: I^l -> End` against `g -> J(g)`.
    pub fn gamma_witness(&self) -> GammaWitness {
        let domain = self.left_invertible();
        let (forward, notes) = self.gamma_images(&domain);
        let targets = (0..self.endos.elements.len()).collect();
        assemble(
            self.sides(),
            domain,
            targets,
            &forward,
            &self.j_indices(Side::Left),
            Order::Preserves,
            |k| self.label(k),
            notes,
        )
    }

    /// `Gamma': I^r -> End` against `g -> J'(g)`, expected to reverse
    /// products.
    pub fn gamma_prime_witness(&self) -> GammaWitness {
        let domain = self.right_invertible();
        let mut notes = Vec::new();
        let forward: Vec<Option<usize>> = domain
            .iter()
            .map(|&k| match gamma_prime(&self.coring, &self.lattice.elements[k]) {
                Ok(g) => self.image_index(g.into_matrix(), || format!("Gamma'({})", self.label(k)), &mut notes),
                Err(e) => {
                    notes.push(format!("Gamma'({}) undefined: {e}", self.label(k)));
                    None
                }
            })
            .collect();
        let targets = (0..self.endos.elements.len()).collect();
        assemble(
            self.sides(),
            domain,
            targets,
            &forward,
            &self.j_indices(Side::Right),
            Order::Reverses,
            |k| self.label(k),
            notes,
        )
    }

    /// `Gamma: Inv -> Aut`.
    pub fn inv_group(&self) -> InvReport {
        let members = self.invertible();
        let table = self
            .lattice
            .table
            .restrict(&members)
            .expect("units of a monoid form a submonoid");
        let left = self.left_invertible();
        let right = self.right_invertible();
        let both: Vec<usize> = left.iter().copied().filter(|k| right.contains(k)).collect();
        let (forward, notes) = self.gamma_images(&members);
        let targets = self.endos.automorphisms();
        let j = self.j_indices(Side::Left);
        let backward: Vec<Option<usize>> = targets.iter().map(|&t| j[t]).collect();
        let witness = assemble(
            self.sides(),
            members.clone(),
            targets,
            &forward,
            &backward,
            Order::Preserves,
            |k| self.label(k),
            notes,
        );
        InvReport {
            equals_left_right_intersection: both == members,
            members,
            table,
            witness,
        }
    }

    /// The four conditions for every endomorphism, in order.
    pub fn prop31(&self) -> Result<Vec<Prop31Report>> {
        self.endos
            .elements
            .iter()
            .map(|g| prop31_report(&self.coring, g))
            .collect()
    }

    /// Whether every inclusion of subbimodules that becomes bijective after
    /// `S (x)_B -` is an equality.
    pub fn embedding_report(&self) -> EmbeddingReport {
        let id = Matrix::identity(self.ext.field(), self.ext.top().dim());
        let mut pairs_checked = 0;
        let mut counterexamples = Vec::new();
        for (a, i) in self.lattice.elements.iter().enumerate() {
            for (b, j) in self.lattice.elements.iter().enumerate() {
                if a == b || !i.subspace().is_subspace_of(j.subspace()) {
                    continue;
                }
                pairs_checked += 1;
                let inc = j
                    .subspace()
                    .coords_matrix(&i.subspace().inclusion())
                    .expect("I lies in J");
                let induced = self.mmaps[a].left.induced(&self.mmaps[b].left, &id, &inc);
                if induced.is_bijective() {
                    counterexamples.push((a, b));
                }
            }
        }
        EmbeddingReport {
            pairs_checked,
            counterexamples,
        }
    }
}
