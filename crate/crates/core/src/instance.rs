//! Instance files.
//!
//! An instance is a TOML document naming a prime `p`, one or more algebras
//! by structure constants, and either an `[extension]` block (the matrix of
//! `i: B -> S`) or a `[comatrix]` block (a `(B, A)`-bimodule `M`, whose
//! extension is `B -> End_A(M)`).
//!
//! ```toml
//! name = "split2(2)"
//! p = 2
//! seed = 0
//!
//! [[algebra]]
//! name = "B"
//! dim = 1
//! unit = [1]
//! struct_consts = [[[1]]]
//!
//! [[algebra]]
//! name = "S"
//! dim = 2
//! unit = [1, 1]
//! struct_consts = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
//!
//! [extension]
//! base = "B"
//! top = "S"
//! matrix = [[1], [1]]
//! ```
//!
//! `struct_consts[i][j]` holds the coordinates of `e_i e_j`; matrices are
//! lists of rows and act on column vectors.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{validate_algebra, FiniteAlgebra};
use crate::bimodule::Bimodule;
use crate::builtin::{builtin, Builtin};
use crate::descent::Budgets;
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::projective::EndAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    pub p: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(rename = "algebra")]
    pub algebras: Vec<AlgebraBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comatrix: Option<ComatrixBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<BudgetBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub name: String,
    pub dim: usize,
    pub unit: Vec<u32>,
    pub struct_consts: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionBlock {
    pub base: String,
    pub top: String,
    /// `dim S` rows, `dim B` columns.
    pub matrix: Vec<Vec<u32>>,
}

/// `M` as a `(base, algebra)`-bimodule: one `dim x dim` matrix per basis
/// element of each algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComatrixBlock {
    pub base: String,
    pub algebra: String,
    pub dim: usize,
    pub left_action: Vec<Vec<Vec<u32>>>,
    pub right_action: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspaces: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endos: Option<u64>,
}

/// A validated instance.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub name: String,
    pub seed: u64,
    pub extension: Extension,
    pub comatrix: Option<Bimodule>,
    pub budgets: Budgets,
    /// Hex SHA-256 of the source text.
    pub hash: String,
    pub file: InstanceFile,
}

impl InstanceSpec {
    pub fn field(&self) -> PrimeField {
        self.extension.field()
    }

    /// A rough upper estimate of peak memory: the largest tensor spaces are
    /// the four-fold `S (x)_B S (x)_B S (x)_B S` and, for comatrix
    /// instances, the cube of `M* (x)_B M`, each held with a dense
    /// projection matrix.
    pub fn estimated_bytes(&self) -> u128 {
        let dense = |full: u128| 8 * full * full;
        let ds = self.extension.top().dim() as u128;
        let mut bytes = dense(ds.pow(4));
        if let Some(m) = &self.comatrix {
            let n = m.dim() as u128;
            bytes += dense(n.pow(6));
        }
        bytes
    }

    /// The canonical text of a built-in instance, parsed back.
    pub fn builtin(name: &str) -> Result<Self> {
        parse_instance(&render_builtin(name)?)
    }
}

/// Line lookups for error messages.
struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn line_of(&self, pred: impl Fn(&str) -> bool, occurrence: usize) -> Option<usize> {
        self.text
            .lines()
            .enumerate()
            .filter(|(_, l)| pred(l.trim()))
            .nth(occurrence)
            .map(|(n, _)| n + 1)
    }

    fn table(&self, header: &str, occurrence: usize) -> String {
        let h = header.to_string();
        self.line_of(|l| l.replace(' ', "") == h, occurrence)
            .map_or_else(String::new, |n| format!("line {n}: "))
    }

    fn key(&self, key: &str) -> String {
        self.line_of(|l| l.split('=').next().is_some_and(|k| k.trim() == key) && l.contains('='), 0)
            .map_or_else(String::new, |n| format!("line {n}: "))
    }
}

/// Parse and validate an instance. Errors carry the line of the offending
/// block and the field path.
pub fn parse_instance(text: &str) -> Result<InstanceSpec> {
    let file: InstanceFile = toml::from_str(text).map_err(|e| Error::Instance(vec![syntax_error(text, &e)]))?;
    let hash = hex::encode(Sha256::digest(text.as_bytes()));
    build_spec(file, hash, &Locator { text })
}

fn syntax_error(text: &str, e: &toml::de::Error) -> String {
    let msg = e.message().trim().to_string();
    match e.span() {
        Some(span) => {
            let line = text[..span.start.min(text.len())].matches('\n').count() + 1;
            format!("line {line}: syntax: {msg}")
        }
        None => format!("syntax: {msg}"),
    }
}

fn build_spec(file: InstanceFile, hash: String, loc: &Locator<'_>) -> Result<InstanceSpec> {
    let field = PrimeField::new(file.p).map_err(|e| Error::Instance(vec![format!("{}p: {e}", loc.key("p"))]))?;
    let mut errors = Vec::new();
    let mut algebras: Vec<(String, FiniteAlgebra)> = Vec::new();
    for (k, block) in file.algebras.iter().enumerate() {
        let at = format!("{}algebra[{k}] `{}`", loc.table("[[algebra]]", k), block.name);
        if algebras.iter().any(|(n, _)| *n == block.name) {
            errors.push(format!("{at}: duplicate algebra name"));
            continue;
        }
        match algebra_from_block(field, block) {
            Ok(a) => algebras.push((block.name.clone(), a)),
            Err(msgs) => errors.extend(msgs.into_iter().map(|m| format!("{at}: {m}"))),
        }
    }
    if !errors.is_empty() {
        return Err(Error::Instance(errors));
    }
    let lookup = |name: &str, at: &str, field_name: &str| -> std::result::Result<FiniteAlgebra, String> {
        algebras
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a.clone())
            .ok_or_else(|| format!("{at}.{field_name}: unknown algebra `{name}`"))
    };

    let (extension, comatrix) = match (&file.extension, &file.comatrix) {
        (Some(_), Some(_)) => {
            return Err(Error::Instance(vec![format!(
                "{}comatrix: give either [extension] or [comatrix], not both",
                loc.table("[comatrix]", 0)
            )]))
        }
        (None, None) => return Err(Error::Instance(vec!["missing [extension] or [comatrix] block".into()])),
        (Some(block), None) => {
            let at = format!("{}extension", loc.table("[extension]", 0));
            let base = lookup(&block.base, &at, "base");
            let top = lookup(&block.top, &at, "top");
            let (base, top) = match (base, top) {
                (Ok(b), Ok(t)) => (b, t),
                (b, t) => return Err(Error::Instance(b.err().into_iter().chain(t.err()).collect())),
            };
            let matrix = matrix_field(field, &block.matrix, top.dim(), base.dim())
                .map_err(|m| Error::Instance(vec![format!("{at}.matrix: {m}")]))?;
            let ext = Extension::from_matrix(base, top, matrix)
                .map_err(|e| Error::Instance(vec![format!("{at}.matrix: {e}")]))?;
            (ext, None)
        }
        (None, Some(block)) => {
            let at = format!("{}comatrix", loc.table("[comatrix]", 0));
            let base = lookup(&block.base, &at, "base");
            let right = lookup(&block.algebra, &at, "algebra");
            let (base, right) = match (base, right) {
                (Ok(b), Ok(a)) => (b, a),
                (b, a) => return Err(Error::Instance(b.err().into_iter().chain(a.err()).collect())),
            };
            let m = bimodule_from_block(field, block, &base, &right)
                .map_err(|msg| Error::Instance(vec![format!("{at}.{msg}")]))?;
            let end = EndAlgebra::build(&m).map_err(|e| Error::Instance(vec![format!("{at}: {e}")]))?;
            (end.extension().clone(), Some(m))
        }
    };
    if !extension.is_injective() {
        let at = match comatrix {
            Some(_) => format!("{}comatrix.left_action", loc.table("[comatrix]", 0)),
            None => format!("{}extension.matrix", loc.table("[extension]", 0)),
        };
        return Err(Error::Instance(vec![format!("{at}: {}", Error::NotInjective)]));
    }
    let defaults = Budgets::default();
    let budgets = file.budgets.unwrap_or_default();
    let budgets = Budgets {
        subspaces: budgets.subspaces.map_or(defaults.subspaces, u128::from),
        endos: budgets.endos.map_or(defaults.endos, u128::from),
    };
    Ok(InstanceSpec {
        name: file.name.clone(),
        seed: file.seed,
        extension,
        comatrix,
        budgets,
        hash,
        file,
    })
}

fn algebra_from_block(field: PrimeField, block: &AlgebraBlock) -> std::result::Result<FiniteAlgebra, Vec<String>> {
    let d = block.dim;
    if d == 0 {
        return Err(vec!["dim: must be at least 1".into()]);
    }
    let mut errors = Vec::new();
    if block.unit.len() != d {
        errors.push(format!("unit: {} coordinates, dim is {d}", block.unit.len()));
    }
    if block.struct_consts.len() != d {
        errors.push(format!("struct_consts: {} rows, dim is {d}", block.struct_consts.len()));
    }
    for (i, row) in block.struct_consts.iter().enumerate() {
        if row.len() != d {
            errors.push(format!("struct_consts[{i}]: {} entries, dim is {d}", row.len()));
        }
        for (j, v) in row.iter().enumerate() {
            if v.len() != d {
                errors.push(format!("struct_consts[{i}][{j}]: {} coordinates, dim is {d}", v.len()));
            }
        }
    }
    errors.extend(out_of_range(field, block.unit.iter().chain(block.struct_consts.iter().flatten().flatten())));
    if !errors.is_empty() {
        return Err(errors);
    }
    let alg = FiniteAlgebra::new_unchecked(field, &block.struct_consts, &block.unit).map_err(|e| vec![e.to_string()])?;
    let diags = validate_algebra(&alg);
    if !diags.is_empty() {
        return Err(diags.iter().map(|d| d.to_string()).collect());
    }
    Ok(alg)
}

fn out_of_range<'a>(field: PrimeField, values: impl Iterator<Item = &'a u32>) -> Option<String> {
    let p = field.modulus();
    values
        .copied()
        .find(|&v| v >= p)
        .map(|v| format!("entry {v} is not reduced mod {p}"))
}

fn matrix_field(field: PrimeField, rows: &[Vec<u32>], r: usize, c: usize) -> std::result::Result<Matrix, String> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        let got_cols = rows.first().map_or(0, Vec::len);
        return Err(format!("expected {r}x{c}, got {}x{got_cols}", rows.len()));
    }
    if let Some(m) = out_of_range(field, rows.iter().flatten()) {
        return Err(m);
    }
    Matrix::from_rows_with_cols(field, rows, c).map_err(|e| e.to_string())
}

fn bimodule_from_block(
    field: PrimeField,
    block: &ComatrixBlock,
    left: &FiniteAlgebra,
    right: &FiniteAlgebra,
) -> std::result::Result<Bimodule, String> {
    let n = block.dim;
    let actions = |name: &str, mats: &[Vec<Vec<u32>>], count: usize| -> std::result::Result<Vec<Matrix>, String> {
        if mats.len() != count {
            return Err(format!("{name}: {} matrices, the algebra has dimension {count}", mats.len()));
        }
        mats.iter()
            .enumerate()
            .map(|(k, m)| matrix_field(field, m, n, n).map_err(|e| format!("{name}[{k}]: {e}")))
            .collect()
    };
    let l = actions("left_action", &block.left_action, left.dim())?;
    let r = actions("right_action", &block.right_action, right.dim())?;
    Bimodule::new(left.clone(), right.clone(), n, l, r).map_err(|e| format!("actions: {e}"))
}

fn algebra_block(name: &str, alg: &FiniteAlgebra) -> AlgebraBlock {
    AlgebraBlock {
        name: name.into(),
        dim: alg.dim(),
        unit: alg.unit().to_vec(),
        struct_consts: alg.struct_consts(),
    }
}

impl InstanceFile {
    pub fn from_builtin(b: &Builtin) -> Self {
        let ext = &b.extension;
        let p = ext.field().modulus();
        match &b.comatrix {
            None => InstanceFile {
                name: b.name.clone(),
                p,
                seed: 0,
                algebras: vec![algebra_block("B", ext.base()), algebra_block("S", ext.top())],
                extension: Some(ExtensionBlock {
                    base: "B".into(),
                    top: "S".into(),
                    matrix: ext.map().matrix().to_rows(),
                }),
                comatrix: None,
                budgets: None,
            },
            Some(m) => InstanceFile {
                name: b.name.clone(),
                p,
                seed: 0,
                algebras: vec![algebra_block("B", m.left_alg()), algebra_block("A", m.right_alg())],
                extension: None,
                comatrix: Some(ComatrixBlock {
                    base: "B".into(),
                    algebra: "A".into(),
                    dim: m.dim(),
                    left_action: m.left_action().iter().map(Matrix::to_rows).collect(),
                    right_action: m.right_action().iter().map(Matrix::to_rows).collect(),
                }),
                budgets: None,
            },
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("instance files serialize")
    }
}

/// Canonical TOML text of a built-in instance.
pub fn render_builtin(name: &str) -> Result<String> {
    Ok(InstanceFile::from_builtin(&builtin(name)?).to_toml())
}

/// File name under `instances/` for a built-in, e.g. `split2-p2.toml`.
pub fn builtin_file_name(name: &str) -> String {
    let stem = match name.split_once('(') {
        Some((family, rest)) => format!("{family}-p{}", rest.trim_end_matches(')')),
        None => name.to_string(),
    };
    format!("{stem}.toml")
}
