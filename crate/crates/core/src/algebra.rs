//! Finite-dimensional unital associative algebras over F_p, given by
//! structure constants, and algebra morphisms between them.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::subspace::{unit_vector, Subspace};

/// A finite-dimensional algebra with basis `e_0..e_{d-1}`.
///
/// `e_i * e_j = sum_k c[i][j][k] e_k`. Construction through
/// [`FiniteAlgebra::new`] runs [`validate_algebra`] and rejects anything
/// that is not associative and unital.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    field: PrimeField,
    dim: usize,
    // flattened c[(i * d + j) * d + k]
    consts: Vec<u32>,
    unit: Vec<u32>,
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("p", &self.field.modulus())
            .field("dim", &self.dim)
            .field("unit", &self.unit)
            .finish()
    }
}

/// One violated algebra law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraDiagnostic {
    Shape(String),
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl fmt::Display for AlgebraDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraDiagnostic::Shape(s) => write!(f, "shape: {s}"),
            AlgebraDiagnostic::Associativity { i, j, k } => {
                write!(f, "associativity fails at (e{i}, e{j}, e{k})")
            }
            AlgebraDiagnostic::LeftUnit { i } => write!(f, "1 * e{i} != e{i}"),
            AlgebraDiagnostic::RightUnit { i } => write!(f, "e{i} * 1 != e{i}"),
        }
    }
}

impl FiniteAlgebra {
    /// `struct_consts[i][j]` holds the coordinates of `e_i * e_j`.
    pub fn new(field: PrimeField, struct_consts: &[Vec<Vec<u32>>], unit: &[u32]) -> Result<Self> {
        let alg = FiniteAlgebra::new_unchecked(field, struct_consts, unit)?;
        let diags = validate_algebra(&alg);
        if !diags.is_empty() {
            return Err(Error::InvalidAlgebra(diags.iter().map(|d| d.to_string()).collect()));
        }
        Ok(alg)
    }

    /// Build without checking the algebra laws; only the shape is checked.
    pub fn new_unchecked(field: PrimeField, struct_consts: &[Vec<Vec<u32>>], unit: &[u32]) -> Result<Self> {
        let d = struct_consts.len();
        if d == 0 {
            return Err(Error::InvalidAlgebra(vec!["dimension must be at least 1".into()]));
        }
        if unit.len() != d {
            return Err(Error::InvalidAlgebra(vec![format!(
                "unit has {} coordinates, dimension is {d}",
                unit.len()
            )]));
        }
        let mut consts = Vec::with_capacity(d * d * d);
        for (i, row) in struct_consts.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidAlgebra(vec![format!("struct_consts[{i}] has {} entries", row.len())]));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != d {
                    return Err(Error::InvalidAlgebra(vec![format!(
                        "struct_consts[{i}][{j}] has {} coordinates",
                        v.len()
                    )]));
                }
                consts.extend(v.iter().map(|&x| x % field.modulus()));
            }
        }
        Ok(FiniteAlgebra {
            field,
            dim: d,
            consts,
            unit: unit.iter().map(|&x| x % field.modulus()).collect(),
        })
    }

    /// F_p itself.
    pub fn prime_field(field: PrimeField) -> Self {
        FiniteAlgebra {
            field,
            dim: 1,
            consts: vec![1],
            unit: vec![1],
        }
    }

    /// F_p^k with orthogonal idempotents `e_i`.
    pub fn split(field: PrimeField, k: usize) -> Self {
        let mut consts = vec![0; k * k * k];
        for i in 0..k {
            consts[(i * k + i) * k + i] = 1;
        }
        FiniteAlgebra {
            field,
            dim: k,
            consts,
            unit: vec![1; k],
        }
    }

    /// F_p[x]/(x^2) with basis `1, x`.
    pub fn dual_numbers(field: PrimeField) -> Self {
        let mut consts = vec![0; 8];
        let c = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        consts[c(0, 0, 0)] = 1;
        consts[c(0, 1, 1)] = 1;
        consts[c(1, 0, 1)] = 1;
        FiniteAlgebra {
            field,
            dim: 2,
            consts,
            unit: vec![1, 0],
        }
    }

    /// F_p[x]/(f) for a monic `f = x^n + sum coeffs[k] x^k`, basis `1, x, .., x^{n-1}`.
    pub fn quotient_polynomial(field: PrimeField, coeffs: &[u32]) -> Self {
        let n = coeffs.len();
        assert!(n >= 1);
        // x^m reduced, for m < 2n - 1
        let mut powers: Vec<Vec<u32>> = (0..n).map(|i| unit_vector(n, i)).collect();
        for m in n..2 * n - 1 {
            let prev = powers[m - 1].clone();
            let mut next = vec![0; n];
            next[1..n].copy_from_slice(&prev[..n - 1]);
            let top = prev[n - 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] = field.sub(next[k], field.mul(top, *c));
            }
            powers.push(next);
        }
        let mut consts = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                consts.extend_from_slice(&powers[i + j]);
            }
        }
        FiniteAlgebra {
            field,
            dim: n,
            consts,
            unit: unit_vector(n, 0),
        }
    }

    /// The field with four elements, F_2[x]/(x^2 + x + 1).
    pub fn field4() -> Self {
        FiniteAlgebra::quotient_polynomial(PrimeField::new(2).unwrap(), &[1, 1])
    }

    /// `n x n` matrices with basis `E_{ij}` ordered row-major (`E_11, E_12, ..`).
    pub fn matrix_algebra(field: PrimeField, n: usize) -> Self {
        let d = n * n;
        let mut consts = vec![0; d * d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    let a = i * n + j;
                    let b = j * n + l;
                    consts[(a * d + b) * d + i * n + l] = 1;
                }
            }
        }
        let mut unit = vec![0; d];
        for i in 0..n {
            unit[i * n + i] = 1;
        }
        FiniteAlgebra {
            field,
            dim: d,
            consts,
            unit,
        }
    }

    /// Subalgebra of `n x n` matrices spanned by `basis` (which must contain
    /// the identity in its span and be closed under products).
    pub fn from_matrix_basis(field: PrimeField, basis: &[Matrix]) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::InvalidAlgebra(vec!["empty basis".into()]));
        };
        let n = first.rows();
        let flat = |m: &Matrix| m.entries().to_vec();
        let span = Subspace::span(field, n * n, basis.iter().map(flat));
        if span.dim() != basis.len() {
            return Err(Error::InvalidAlgebra(vec!["basis matrices are linearly dependent".into()]));
        }
        // coordinates relative to the given basis, not the RREF one
        let to_basis = {
            let rref_coords = span
                .coords_matrix(&Matrix::from_cols(field, n * n, &basis.iter().map(flat).collect::<Vec<_>>()))
                .expect("basis lies in its span");
            rref_coords.inverse().expect("basis change is invertible")
        };
        let coords = |m: &Matrix| -> Result<Vec<u32>> {
            let c = span
                .coords(m.entries())
                .ok_or_else(|| Error::InvalidAlgebra(vec!["span of basis is not closed under products".into()]))?;
            Ok(to_basis.apply(&c))
        };
        let d = basis.len();
        let mut consts = Vec::with_capacity(d * d * d);
        for a in basis {
            for b in basis {
                consts.extend(coords(&a.mul(b))?);
            }
        }
        let unit = coords(&Matrix::identity(field, n))
            .map_err(|_| Error::InvalidAlgebra(vec!["identity matrix not in span".into()]))?;
        let alg = FiniteAlgebra {
            field,
            dim: d,
            consts,
            unit,
        };
        debug_assert!(validate_algebra(&alg).is_empty());
        Ok(alg)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<u32> {
        unit_vector(self.dim, i)
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.consts[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn struct_consts(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.product_of_basis(i, j).to_vec()).collect())
            .collect()
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let d = self.dim;
        let mut acc = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj) as u64;
                for (a, &e) in acc.iter_mut().zip(self.product_of_basis(i, j)) {
                    *a += c * e as u64;
                }
            }
        }
        acc.into_iter().map(|a| f.reduce(a)).collect()
    }

    /// Matrix of `y -> x y`.
    pub fn left_mul_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_mul_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.product_of_basis(i, j) == self.product_of_basis(j, i)))
    }

    /// Two-sided inverse of `x`, if any.
    pub fn inverse(&self, x: &[u32]) -> Option<Vec<u32>> {
        let l = self.left_mul_matrix(x);
        let y = l.inverse()?.apply(&self.unit);
        (self.mul(&y, x) == self.unit).then_some(y)
    }
}

/// Check associativity on all basis triples and the unit law on all basis
/// elements. An empty result means `alg` is a valid unital algebra.
pub fn validate_algebra(alg: &FiniteAlgebra) -> Vec<AlgebraDiagnostic> {
    let mut out = Vec::new();
    let d = alg.dim;
    if alg.unit.len() != d || alg.consts.len() != d * d * d {
        out.push(AlgebraDiagnostic::Shape("inconsistent sizes".into()));
        return out;
    }
    for i in 0..d {
        for j in 0..d {
            let eij = alg.product_of_basis(i, j).to_vec();
            for k in 0..d {
                let left = alg.mul(&eij, &alg.basis(k));
                let ejk = alg.product_of_basis(j, k).to_vec();
                let right = alg.mul(&alg.basis(i), &ejk);
                if left != right {
                    out.push(AlgebraDiagnostic::Associativity { i, j, k });
                }
            }
        }
    }
    for i in 0..d {
        let e = alg.basis(i);
        if alg.mul(&alg.unit, &e) != e {
            out.push(AlgebraDiagnostic::LeftUnit { i });
        }
        if alg.mul(&e, &alg.unit) != e {
            out.push(AlgebraDiagnostic::RightUnit { i });
        }
    }
    out
}

/// A unital algebra morphism, stored as a `target.dim x source.dim` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, matrix: Matrix) -> Result<Self> {
        if source.field != target.field {
            return Err(Error::FieldMismatch(source.field.modulus(), target.field.modulus()));
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::dims(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        let m = AlgebraMorphism {
            source,
            target,
            matrix,
        };
        let problems = m.violations();
        if !problems.is_empty() {
            return Err(Error::InvalidMorphism(problems.join("; ")));
        }
        Ok(m)
    }

    pub fn identity(alg: FiniteAlgebra) -> Self {
        let matrix = Matrix::identity(alg.field, alg.dim);
        AlgebraMorphism {
            source: alg.clone(),
            target: alg,
            matrix,
        }
    }

    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.apply(self.source.unit()) != self.target.unit() {
            out.push("f(1) != 1".to_string());
        }
        for i in 0..self.source.dim {
            for j in 0..self.source.dim {
                let lhs = self.apply(self.source.product_of_basis(i, j));
                let rhs = self
                    .target
                    .mul(&self.apply(&self.source.basis(i)), &self.apply(&self.source.basis(j)));
                if lhs != rhs {
                    out.push(format!("f(e{i} e{j}) != f(e{i}) f(e{j})"));
                }
            }
        }
        out
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.apply(x)
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    /// Image of the source as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::image(&self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn builtins_validate() {
        for p in [2, 3, 5] {
            let field = f(p);
            assert!(validate_algebra(&FiniteAlgebra::prime_field(field)).is_empty());
            assert!(validate_algebra(&FiniteAlgebra::split(field, 3)).is_empty());
            assert!(validate_algebra(&FiniteAlgebra::dual_numbers(field)).is_empty());
            assert!(validate_algebra(&FiniteAlgebra::matrix_algebra(field, 2)).is_empty());
        }
        assert!(validate_algebra(&FiniteAlgebra::field4()).is_empty());
    }

    #[test]
    fn f2_is_valid() {
        let a = FiniteAlgebra::new(f(2), &[vec![vec![1]]], &[1]).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn product_algebra_is_valid() {
        let c = vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]];
        assert!(FiniteAlgebra::new(f(2), &c, &[1, 1]).is_ok());
    }

    #[test]
    fn wrong_unit_is_reported() {
        // e2*e2 = e1, everything else zero, unit declared as e2.
        let c = vec![vec![vec![0, 0], vec![0, 0]], vec![vec![0, 0], vec![1, 0]]];
        let alg = FiniteAlgebra::new_unchecked(f(2), &c, &[0, 1]).unwrap();
        let d = validate_algebra(&alg);
        // Direct evaluation: 1*e1 = e2*e1 = 0 != e1, and e1*1 = 0 likewise.
        assert!(d.contains(&AlgebraDiagnostic::LeftUnit { i: 0 }));
        assert!(d.contains(&AlgebraDiagnostic::RightUnit { i: 0 }));
        // 1*e2 = e2*e2 = e1 != e2
        assert!(d.contains(&AlgebraDiagnostic::LeftUnit { i: 1 }));
        assert!(FiniteAlgebra::new(f(2), &c, &[0, 1]).is_err());
    }

    #[test]
    fn nonassociative_table_is_reported() {
        // e0 = 1, e1*e1 = e1 + e0 over F_2 is associative (it is F_4);
        // break it by making e1*e0 = 0.
        let good = FiniteAlgebra::field4();
        let mut c = good.struct_consts();
        c[1][0] = vec![0, 0];
        let bad = FiniteAlgebra::new_unchecked(f(2), &c, &[1, 0]).unwrap();
        assert!(!validate_algebra(&bad).is_empty());
    }

    #[test]
    fn field4_units() {
        let f4 = FiniteAlgebra::field4();
        for x in [[1u32, 0], [0, 1], [1, 1]] {
            let y = f4.inverse(&x).unwrap();
            assert_eq!(f4.mul(&x, &y), vec![1, 0]);
        }
    }

    #[test]
    fn morphism_checks() {
        let field = f(2);
        let s = FiniteAlgebra::split(field, 2);
        let b = FiniteAlgebra::prime_field(field);
        let diag = Matrix::from_rows(field, &[vec![1], vec![1]]).unwrap();
        assert!(AlgebraMorphism::new(b.clone(), s.clone(), diag).unwrap().is_injective());
        let bad = Matrix::from_rows(field, &[vec![1], vec![0]]).unwrap();
        assert!(matches!(AlgebraMorphism::new(b, s, bad), Err(Error::InvalidMorphism(_))));
    }

    #[test]
    fn matrix_basis_subalgebra() {
        let field = f(3);
        let e11 = Matrix::from_rows(field, &[vec![1, 0], vec![0, 0]]).unwrap();
        let e22 = Matrix::from_rows(field, &[vec![0, 0], vec![0, 1]]).unwrap();
        let d = FiniteAlgebra::from_matrix_basis(field, &[e11, e22]).unwrap();
        assert_eq!(d, FiniteAlgebra::split(field, 2));
    }
}
