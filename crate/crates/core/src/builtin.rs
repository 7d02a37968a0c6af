//! The built-in instance library.

use crate::algebra::FiniteAlgebra;
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::projective::EndAlgebra;

/// Instances shipped as data files under `instances/`.
pub const SHIPPED: &[&str] = &[
    "id-ext(2)",
    "id-ext(3)",
    "split2(2)",
    "split2(3)",
    "dual-numbers(2)",
    "dual-numbers(3)",
    "field4",
    "mat2(2)",
    "diag-mat2(2)",
    "diag-mat2(3)",
    "comatrix-mat2(2)",
    "comatrix-diag-mat2(2)",
];

/// A named extension, optionally derived from a comatrix bimodule `M`.
#[derive(Clone, Debug)]
pub struct Builtin {
    pub name: String,
    pub extension: Extension,
    pub comatrix: Option<Bimodule>,
}

/// Look up `family(p)` or `field4`.
pub fn builtin(name: &str) -> Result<Builtin> {
    let bad = || Error::Instance(vec![format!("unknown built-in instance `{name}`")]);
    if name == "field4" {
        return Ok(Builtin {
            name: name.into(),
            extension: Extension::over_prime_field(FiniteAlgebra::field4()),
            comatrix: None,
        });
    }
    let (family, rest) = name.split_once('(').ok_or_else(bad)?;
    let p: u32 = rest.strip_suffix(')').and_then(|s| s.trim().parse().ok()).ok_or_else(bad)?;
    let field = PrimeField::new(p)?;
    let (extension, comatrix) = match family {
        "id-ext" => (Extension::identity(FiniteAlgebra::prime_field(field)), None),
        "split2" => (Extension::over_prime_field(FiniteAlgebra::split(field, 2)), None),
        "dual-numbers" => (Extension::over_prime_field(FiniteAlgebra::dual_numbers(field)), None),
        "mat2" => (Extension::over_prime_field(FiniteAlgebra::matrix_algebra(field, 2)), None),
        "diag-mat2" => (diagonal_in_mat2(field)?, None),
        "comatrix-mat2" => comatrix(plane(field, &FiniteAlgebra::prime_field(field))?)?,
        "comatrix-diag-mat2" => comatrix(plane(field, &FiniteAlgebra::split(field, 2))?)?,
        _ => return Err(bad()),
    };
    Ok(Builtin {
        name: name.into(),
        extension,
        comatrix,
    })
}

/// The diagonal `F_p x F_p` inside `M_2(F_p)`.
pub fn diagonal_in_mat2(field: PrimeField) -> Result<Extension> {
    let m = Matrix::from_rows(field, &[vec![1, 0], vec![0, 0], vec![0, 0], vec![0, 1]])?;
    Extension::from_matrix(FiniteAlgebra::split(field, 2), FiniteAlgebra::matrix_algebra(field, 2), m)
}

/// `F_p^2` as a `(B, F_p)`-bimodule, with `B` either `F_p` (scalars) or
/// `F_p x F_p` (diagonal matrices).
fn plane(field: PrimeField, b: &FiniteAlgebra) -> Result<Bimodule> {
    let action = match b.dim() {
        1 => vec![Matrix::identity(field, 2)],
        _ => vec![
            Matrix::from_rows(field, &[vec![1, 0], vec![0, 0]])?,
            Matrix::from_rows(field, &[vec![0, 0], vec![0, 1]])?,
        ],
    };
    Bimodule::new(
        b.clone(),
        FiniteAlgebra::prime_field(field),
        2,
        action,
        vec![Matrix::identity(field, 2)],
    )
}

fn comatrix(m: Bimodule) -> Result<(Extension, Option<Bimodule>)> {
    let end = EndAlgebra::build(&m)?;
    Ok((end.extension().clone(), Some(m)))
}
