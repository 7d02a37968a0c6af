//! Finite monoids given by multiplication tables.

use serde::Serialize;

/// A finite monoid on `0..n`, `table[i][j] = i * j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl MonoidTable {
    /// Tabulate `op` on `elements`. Returns `None` if the set is not closed
    /// under `op` or has no two-sided identity.
    pub fn build<T: PartialEq>(elements: &[T], mut op: impl FnMut(&T, &T) -> T) -> Option<Self> {
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                let z = op(x, y);
                table[i][j] = elements.iter().position(|e| *e == z)?;
            }
        }
        MonoidTable::from_table(table)
    }

    /// Wrap a raw table, locating the identity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Option<Self> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return None;
        }
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))?;
        Some(MonoidTable { table, identity })
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_associative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.product(self.product(a, b), c) == self.product(a, self.product(b, c))))
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.product(a, b) == self.product(b, a)))
    }

    /// Two-sided inverse of `i`, if any.
    pub fn inverse(&self, i: usize) -> Option<usize> {
        (0..self.len()).find(|&j| self.product(i, j) == self.identity && self.product(j, i) == self.identity)
    }

    /// Indices of the invertible elements, in order.
    pub fn units(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.inverse(i).is_some()).collect()
    }

    pub fn is_group(&self) -> bool {
        self.units().len() == self.len()
    }

    /// The table of the subset `indices`, renumbered in the given order.
    /// `None` if the subset is not a submonoid.
    pub fn restrict(&self, indices: &[usize]) -> Option<MonoidTable> {
        let pos = |x: usize| indices.iter().position(|&i| i == x);
        let mut table = vec![vec![0; indices.len()]; indices.len()];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                table[a][b] = pos(self.product(i, j))?;
            }
        }
        let sub = MonoidTable::from_table(table)?;
        (indices[sub.identity] == self.identity).then_some(sub)
    }

    /// Whether `map` (indexed by elements of `self`) preserves products and
    /// the identity.
    pub fn is_homomorphism_to(&self, target: &MonoidTable, map: &[usize]) -> bool {
        map.len() == self.len()
            && map[self.identity] == target.identity
            && (0..self.len())
                .all(|a| (0..self.len()).all(|b| map[self.product(a, b)] == target.product(map[a], map[b])))
    }

    /// Whether `map` reverses products and preserves the identity.
    pub fn is_anti_homomorphism_to(&self, target: &MonoidTable, map: &[usize]) -> bool {
        map.len() == self.len()
            && map[self.identity] == target.identity
            && (0..self.len())
                .all(|a| (0..self.len()).all(|b| map[self.product(a, b)] == target.product(map[b], map[a])))
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = self.closure(&gens);
        for i in 0..self.len() {
            if !reached[i] {
                gens.push(i);
                reached = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        if self.is_empty() {
            return seen;
        }
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.product(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// An isomorphism `self -> other` as an index map, found by trying every
    /// assignment of images to a generating set.
    pub fn find_isomorphism(&self, other: &MonoidTable) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let gens = self.generators();
        let mut choice = vec![0usize; gens.len()];
        loop {
            if let Some(map) = self.extend(other, &gens, &choice) {
                return Some(map);
            }
            // next assignment, odometer style
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return None;
                }
                choice[k] += 1;
                if choice[k] < n {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    fn extend(&self, other: &MonoidTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.len();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = other.identity;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.product(x, g);
                let img = other.product(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = img;
                    stack.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        let mut hit = vec![false; n];
        for &m in &map {
            if m == usize::MAX || hit[m] {
                return None;
            }
            hit[m] = true;
        }
        self.is_homomorphism_to(other, &map).then_some(map)
    }

    pub fn is_isomorphic_to(&self, other: &MonoidTable) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// The symmetric group on `n` letters, permutations in lexicographic order.
    pub fn symmetric_group(n: usize) -> MonoidTable {
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut cur: Vec<usize> = (0..n).collect();
        while next_permutation(&mut cur) {
            perms.push(cur.clone());
        }
        MonoidTable::build(&perms, |a, b| b.iter().map(|&i| a[i]).collect()).expect("a group")
    }

    /// Z/n under addition.
    pub fn cyclic_group(n: usize) -> MonoidTable {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        MonoidTable::from_table(table).expect("a group")
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
