use serde::Serialize;

use crate::monoid::MonoidTable;

/// Whether a map is expected to preserve or reverse products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    Preserves,
    Reverses,
}

/// The comparison between a family of subbimodules and a family of coring
/// endomorphisms through a forward map and its candidate inverse.
///
/// Positions in `forward` index `targets`; positions in `backward` index
/// `domain`. Both lists hold indices into the ambient monoids.
#[derive(Clone, Debug, Serialize)]
pub struct GammaWitness {
    pub domain: Vec<usize>,
    pub targets: Vec<usize>,
    pub forward: Vec<Option<usize>>,
    pub backward: Vec<Option<usize>>,
    pub order: Order,
    /// The domain is closed under products.
    pub domain_closed: bool,
    pub preserves_unit: bool,
    /// Products (of domain elements whose product stays in the domain) are
    /// preserved or reversed according to `order`.
    pub homomorphism: bool,
    /// `forward` is a bijection onto `targets` and `backward` undoes it.
    pub bijection: bool,
    /// `backward o forward` and `forward o backward` are both identities.
    pub inverse_law: bool,
    pub counterexamples: Vec<String>,
}

impl GammaWitness {
    pub fn is_isomorphism(&self) -> bool {
        self.domain_closed && self.preserves_unit && self.homomorphism && self.bijection && self.inverse_law
    }
}

pub(crate) struct Sides<'a> {
    pub lattice: &'a MonoidTable,
    pub endos: &'a MonoidTable,
}

/// `forward_raw[k]` is the ambient endomorphism index of the image of
/// `domain[k]`; `backward_raw[t]` the ambient lattice index assigned to
/// `targets[t]`.
pub(crate) fn assemble(
    sides: Sides<'_>,
    domain: Vec<usize>,
    targets: Vec<usize>,
    forward_raw: &[Option<usize>],
    backward_raw: &[Option<usize>],
    order: Order,
    label: impl Fn(usize) -> String,
    mut counterexamples: Vec<String>,
) -> GammaWitness {
    let pos = |list: &[usize], x: usize| list.iter().position(|&y| y == x);
    let forward: Vec<Option<usize>> = domain
        .iter()
        .zip(forward_raw)
        .map(|(&d, raw)| {
            let t = raw.and_then(|e| pos(&targets, e));
            if raw.is_some() && t.is_none() {
                counterexamples.push(format!("image of {} lies outside the target family", label(d)));
            }
            t
        })
        .collect();
    let backward: Vec<Option<usize>> = targets
        .iter()
        .zip(backward_raw)
        .map(|(&t, raw)| {
            let d = raw.and_then(|l| pos(&domain, l));
            if d.is_none() {
                counterexamples.push(format!("endomorphism #{t} is not recovered from the domain"));
            }
            d
        })
        .collect();

    let mut domain_closed = true;
    let mut homomorphism = true;
    for (a, &x) in domain.iter().enumerate() {
        for (b, &y) in domain.iter().enumerate() {
            let Some(p) = pos(&domain, sides.lattice.product(x, y)) else {
                domain_closed = false;
                continue;
            };
            let (Some(fa), Some(fb), Some(fp)) = (forward[a], forward[b], forward[p]) else {
                homomorphism = false;
                continue;
            };
            let (l, r) = match order {
                Order::Preserves => (fa, fb),
                Order::Reverses => (fb, fa),
            };
            if sides.endos.product(targets[l], targets[r]) != targets[fp] {
                homomorphism = false;
                counterexamples.push(format!("product of {} and {} is not respected", label(x), label(y)));
            }
        }
    }

    let unit = pos(&domain, sides.lattice.identity());
    let target_unit = pos(&targets, sides.endos.identity());
    let preserves_unit = unit.is_some() && target_unit.is_some() && unit.and_then(|u| forward[u]) == target_unit;
    if !preserves_unit {
        counterexamples.push("the identity is not sent to the identity".into());
    }

    let mut hit = vec![false; targets.len()];
    let mut injective = true;
    for t in forward.iter().flatten() {
        injective &= !std::mem::replace(&mut hit[*t], true);
    }
    let total = forward.iter().all(Option::is_some);
    let back_forth = forward
        .iter()
        .enumerate()
        .all(|(k, t)| t.is_some_and(|t| backward[t] == Some(k)));
    let forth_back = backward
        .iter()
        .enumerate()
        .all(|(t, d)| d.is_some_and(|d| forward[d] == Some(t)));
    if !injective {
        counterexamples.push("two domain elements share an image".into());
    }
    let bijection = total && injective && hit.iter().all(|&h| h) && back_forth;
    GammaWitness {
        domain,
        targets,
        forward,
        backward,
        order,
        domain_closed,
        preserves_unit,
        homomorphism,
        bijection,
        inverse_law: back_forth && forth_back,
        counterexamples,
    }
}
