//! Seeded random extensions run through the full verification suite.
//!
//! Draw `k` uses a ChaCha8 stream `k` of the master seed, so any case can
//! be regenerated from `(seed, index)` alone; each case also carries its
//! instance text.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{validate_algebra, AlgebraMorphism, FiniteAlgebra};
use crate::builtin::Builtin;
use crate::descent::{Budgets, Mutation};
use crate::error::Result;
use crate::extension::Extension;
use crate::field::PrimeField;
use crate::instance::{parse_instance, BudgetBlock, InstanceFile};
use crate::matrix::Matrix;
use crate::report::{run_suite_with, RunOptions, Status, Suite};

const ALGEBRA_TRIES: usize = 1000;
const MORPHISM_TRIES: usize = 200;

#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig {
    pub p: u32,
    pub max_dim_top: usize,
    pub max_dim_base: usize,
    /// Number of certified instances to check.
    pub count: usize,
    pub seed: u64,
    pub budgets: Budgets,
    pub mutation: Option<Mutation>,
}

impl FuzzConfig {
    pub fn new(p: u32, max_dim: usize, count: usize, seed: u64) -> Self {
        FuzzConfig {
            p,
            max_dim_top: max_dim,
            max_dim_base: max_dim,
            count,
            seed,
            budgets: Budgets::default(),
            mutation: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzCase {
    pub index: u64,
    pub base_dim: usize,
    pub top_dim: usize,
    pub evidence: &'static str,
    pub violations: Vec<String>,
    pub instance: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub p: u32,
    pub seed: u64,
    pub draws: u64,
    pub uncertified: u64,
    pub cases: Vec<FuzzCase>,
}

impl FuzzReport {
    pub fn violations(&self) -> usize {
        self.cases.iter().map(|c| c.violations.len()).sum()
    }

    pub fn failing_cases(&self) -> Vec<&FuzzCase> {
        self.cases.iter().filter(|c| !c.violations.is_empty()).collect()
    }
}

/// A unital algebra with `e_0 = 1` and the remaining products drawn
/// uniformly, resampled until associative.
pub fn random_algebra(rng: &mut impl Rng, field: PrimeField, dim: usize) -> Option<FiniteAlgebra> {
    let p = field.modulus();
    for _ in 0..ALGEBRA_TRIES {
        let consts: Vec<Vec<Vec<u32>>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match (i, j) {
                        (0, k) | (k, 0) => (0..dim).map(|t| u32::from(t == k)).collect(),
                        _ => (0..dim).map(|_| rng.gen_range(0..p)).collect(),
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![0; dim];
        unit[0] = 1;
        let alg = FiniteAlgebra::new_unchecked(field, &consts, &unit).ok()?;
        if validate_algebra(&alg).is_empty() {
            return Some(alg);
        }
    }
    None
}

/// An injective unital morphism `base -> top`, resampled until valid.
pub fn random_extension(rng: &mut impl Rng, base: &FiniteAlgebra, top: &FiniteAlgebra) -> Option<Extension> {
    let field = top.field();
    let p = field.modulus();
    for _ in 0..MORPHISM_TRIES {
        let m = Matrix::from_fn(field, top.dim(), base.dim(), |r, c| {
            if c == 0 {
                top.unit()[r]
            } else {
                rng.gen_range(0..p)
            }
        });
        if let Ok(map) = AlgebraMorphism::new(base.clone(), top.clone(), m) {
            if map.is_injective() {
                return Extension::new(map).ok();
            }
        }
    }
    None
}

fn draw(config: &FuzzConfig, field: PrimeField, index: u64) -> Option<Extension> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    let top_dim = rng.gen_range(1..=config.max_dim_top);
    let base_dim = rng.gen_range(1..=top_dim.min(config.max_dim_base));
    let top = random_algebra(&mut rng, field, top_dim)?;
    let base = random_algebra(&mut rng, field, base_dim)?;
    random_extension(&mut rng, &base, &top)
}

/// Draw until `config.count` certified instances have been checked, or
/// twenty times that many draws were made.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    let field = PrimeField::new(config.p)?;
    let mut report = FuzzReport {
        p: config.p,
        seed: config.seed,
        draws: 0,
        uncertified: 0,
        cases: Vec::new(),
    };
    let max_draws = (config.count as u64).saturating_mul(20);
    let mut index = 0u64;
    while report.cases.len() < config.count && index < max_draws {
        let k = index;
        index += 1;
        report.draws += 1;
        let Some(ext) = draw(config, field, k) else {
            continue;
        };
        let mut file = InstanceFile::from_builtin(&Builtin {
            name: format!("fuzz(seed={}, index={k})", config.seed),
            extension: ext,
            comatrix: None,
        });
        file.seed = config.seed;
        file.budgets = Some(BudgetBlock {
            subspaces: u64::try_from(config.budgets.subspaces).ok(),
            endos: u64::try_from(config.budgets.endos).ok(),
        });
        let text = file.to_toml();
        let spec = parse_instance(&text)?;
        let options = RunOptions {
            timing: false,
            mutation: config.mutation,
        };
        let run = run_suite_with(&spec, Suite::All, options)?;
        let Some(evidence) = run.certificate.selected else {
            report.uncertified += 1;
            continue;
        };
        let mut violations: Vec<String> = run
            .verdicts
            .iter()
            .filter(|v| v.status == Status::Fail)
            .map(|v| format!("{}: {}", v.name, v.detail))
            .collect();
        if let Some(g) = &run.guard {
            violations.push(format!("resource guard: {g}"));
        }
        report.cases.push(FuzzCase {
            index: k,
            base_dim: spec.extension.base().dim(),
            top_dim: spec.extension.top().dim(),
            evidence,
            violations,
            instance: text,
        });
    }
    Ok(report)
}
