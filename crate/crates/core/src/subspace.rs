//! Subspaces of F_p^n in canonical reduced row echelon form.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{EchelonBuilder, Matrix};

/// A subspace of F_p^n. Basis rows are in RREF, so two subspaces are equal
/// iff their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace::span(
            field,
            ambient_dim,
            (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)),
        )
    }

    pub fn span<V: AsRef<[u32]>>(
        field: PrimeField,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = V>,
    ) -> Self {
        let mut b = EchelonBuilder::new(field, ambient_dim);
        for v in vectors {
            b.insert(v.as_ref());
        }
        Subspace::from_builder(field, ambient_dim, b)
    }

    pub(crate) fn from_builder(field: PrimeField, ambient_dim: usize, b: EchelonBuilder) -> Self {
        let (basis, pivots) = b.into_rref();
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    /// Column space of a matrix.
    pub fn image(m: &Matrix) -> Self {
        Subspace::span(m.field(), m.rows(), (0..m.cols()).map(|j| m.col(j)))
    }

    /// Null space of a matrix.
    pub fn kernel(m: &Matrix) -> Self {
        Subspace::span(m.field(), m.cols(), m.kernel())
    }

    /// Trust the caller that `basis` is already in RREF.
    fn from_rref_unchecked(field: PrimeField, ambient_dim: usize, basis: Vec<Vec<u32>>, pivots: Vec<usize>) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix: the
    /// inclusion map into the ambient space.
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_cols(self.field, self.ambient_dim, &self.basis)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` lies outside.
    /// Because the basis is reduced, the coordinates are just the entries of
    /// `v` at the pivot columns.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient_dim);
        let f = self.field;
        let c: Vec<u32> = self.pivots.iter().map(|&p| v[p] % f.modulus()).collect();
        let mut residue: Vec<u32> = v.iter().map(|&x| x % f.modulus()).collect();
        for (coef, row) in c.iter().zip(&self.basis) {
            if *coef == 0 {
                continue;
            }
            for (x, &y) in residue.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(*coef, y));
            }
        }
        residue.iter().all(|&x| x == 0).then_some(c)
    }

    /// Coordinates of every column of `m` (which must land in the subspace).
    pub fn coords_matrix(&self, m: &Matrix) -> Option<Matrix> {
        let cols = (0..m.cols())
            .map(|j| self.coords(&m.col(j)))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix::from_cols(self.field, self.dim(), &cols))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field, self.ambient_dim, self.basis.iter().chain(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x in both iff x = U a = W b; solve [U | -W] (a, b) = 0.
        let u = self.inclusion();
        let w = other.inclusion().scale(self.field.neg(1));
        let m = Matrix::from_fn(self.field, self.ambient_dim, u.cols() + w.cols(), |i, j| {
            if j < u.cols() {
                u.get(i, j)
            } else {
                w.get(i, j - u.cols())
            }
        });
        let vecs = m
            .kernel()
            .into_iter()
            .map(|k| u.apply(&k[..u.cols()]))
            .collect::<Vec<_>>();
        Subspace::span(self.field, self.ambient_dim, vecs)
    }

    /// Projection onto the quotient `ambient / self` and a linear section of it.
    ///
    /// The quotient basis is indexed by the non-pivot columns: a vector is
    /// reduced modulo the subspace and its non-pivot entries read off. The
    /// section sends quotient basis vector `k` to the unit vector at the
    /// `k`-th non-pivot column.
    pub fn quotient_maps(&self) -> (Matrix, Matrix) {
        let f = self.field;
        let n = self.ambient_dim;
        let mut pivot_row = vec![None; n];
        for (i, &c) in self.pivots.iter().enumerate() {
            pivot_row[c] = Some(i);
        }
        let free: Vec<usize> = (0..n).filter(|&c| pivot_row[c].is_none()).collect();
        let mut free_index = vec![usize::MAX; n];
        for (k, &c) in free.iter().enumerate() {
            free_index[c] = k;
        }
        let mut project = Matrix::zeros(f, free.len(), n);
        for c in 0..n {
            match pivot_row[c] {
                None => project.set(free_index[c], c, 1),
                Some(r) => {
                    for (k, &fc) in free.iter().enumerate() {
                        let x = self.basis[r][fc];
                        if x != 0 {
                            project.set(k, c, f.neg(x));
                        }
                    }
                }
            }
        }
        let mut section = Matrix::zeros(f, n, free.len());
        for (k, &c) in free.iter().enumerate() {
            section.set(c, k, 1);
        }
        (project, section)
    }

    /// A compact label: the RREF rows.
    pub fn label(&self) -> String {
        if self.basis.is_empty() {
            return "0".to_string();
        }
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("<{}>", rows.join("|"))
    }
}

/// RREF-lexicographic order: by dimension, then pivots, then entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim, self.dim(), &self.pivots, &self.basis).cmp(&(
            other.ambient_dim,
            other.dim(),
            &other.pivots,
            &other.basis,
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Number of `k`-dimensional subspaces of F_p^n.
pub fn gaussian_binomial(p: u32, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(p.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(p.saturating_pow((i + 1) as u32) - 1);
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// Total number of subspaces of F_p^n.
pub fn subspace_count(p: u32, n: usize) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(p, n, k)))
}

/// Every subspace of F_p^n, in RREF-lexicographic order (by dimension, then
/// pivot set, then entries). Fails before enumerating if the Gaussian
/// binomial count exceeds `budget`.
pub fn all_subspaces(field: PrimeField, n: usize, budget: u128) -> Result<Vec<Subspace>> {
    let total = subspace_count(field.modulus(), n);
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: "enumerating subspaces",
            required: total,
            budget,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=n {
        for_each_subspace_of_dim(field, n, k, |s| out.push(s));
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

/// Visit every `k`-dimensional subspace of F_p^n.
pub fn for_each_subspace_of_dim(field: PrimeField, n: usize, k: usize, mut visit: impl FnMut(Subspace)) {
    let p = field.modulus();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        if k <= n {
            // free positions: (row r, column c) with c > pivot_r, c not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pv = &pivots;
                    (pv[r] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut basis = vec![vec![0u32; n]; k];
                for (r, &c) in pivots.iter().enumerate() {
                    basis[r][c] = 1;
                }
                for (&(r, c), &d) in free.iter().zip(&digits) {
                    basis[r][c] = d;
                }
                visit(Subspace::from_rref_unchecked(field, n, basis, pivots.clone()));
                if !next_digits(&mut digits, p) {
                    break;
                }
            }
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
}

/// Odometer increment, last position fastest. False once it wraps around.
pub(crate) fn next_digits(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 || k > n {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
