//! Brute-force oracle for subbimodule monoids and Sweedler coring
//! endomorphisms, sharing nothing with the library beyond the raw
//! structure constants.
//!
//! Coring endomorphisms of `S (x)_B S` are counted as elements `e` of
//! `S (x)_B S` that commute with `i(B)`, satisfy `mu(e) = 1`, and satisfy
//! `e^1 (x) 1 (x) e^2 = e (x)_S e` in `S (x)_B S (x)_B S`; the map is
//! `s (x) t -> s e t`.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use descent_forge::Extension;

pub struct Oracle {
    p: u32,
    ds: usize,
    db: usize,
    /// `mul[a][b]` = coordinates of `s_a s_b`.
    mul: Vec<Vec<Vec<u32>>>,
    /// Images `i(b_k)` of the base basis.
    base: Vec<Vec<u32>>,
    unit: Vec<u32>,
}

/// Row-reduced span used as a normal form for quotients.
#[derive(Clone)]
struct Span {
    p: u32,
    rows: Vec<(usize, Vec<u32>)>,
}

fn inv(p: u32, a: u32) -> u32 {
    (1..p).find(|&x| (a * x) % p == 1).unwrap()
}

impl Span {
    fn new(p: u32) -> Self {
        Span { p, rows: Vec::new() }
    }

    fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(self.p, v[piv]);
        for x in v.iter_mut() {
            *x = (*x * s) % self.p;
        }
        let p = self.p;
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn canonical(&self) -> Vec<Vec<u32>> {
        let mut rows: Vec<_> = self.rows.clone();
        rows.sort();
        rows.into_iter().map(|(_, r)| r).collect()
    }

    fn pivots(&self) -> BTreeSet<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

fn add_scaled(p: u32, acc: &mut [u32], c: u32, v: &[u32]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a = (*a + c * x) % p;
    }
}

/// A subbimodule as the explicit set of its vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sub(pub BTreeSet<Vec<u32>>);

impl Oracle {
    pub fn new(ext: &Extension) -> Self {
        let s = ext.top();
        let b = ext.base();
        let ds = s.dim();
        Oracle {
            p: ext.field().modulus(),
            ds,
            db: b.dim(),
            mul: s.struct_consts(),
            base: (0..b.dim()).map(|k| ext.map().matrix().col(k)).collect(),
            unit: s.unit().to_vec(),
        }
    }

    fn times(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.ds];
        for (a, &xa) in x.iter().enumerate() {
            for (b, &yb) in y.iter().enumerate() {
                if xa != 0 && yb != 0 {
                    add_scaled(self.p, &mut out, xa * yb % self.p, &self.mul[a][b]);
                }
            }
        }
        out
    }

    fn basis(&self, a: usize) -> Vec<u32> {
        (0..self.ds).map(|k| u32::from(k == a)).collect()
    }

    fn all_vectors(&self, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..self.p).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn span_set(&self, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
        let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
        set.insert(vec![0; self.ds]);
        for g in gens {
            let current: Vec<Vec<u32>> = set.iter().cloned().collect();
            for v in current {
                for c in 1..self.p {
                    let mut w = v.clone();
                    add_scaled(self.p, &mut w, c, g);
                    set.insert(w);
                }
            }
        }
        set
    }

    /// Every subbimodule of `S`, found by closing spans of vector sets.
    pub fn subbimodules(&self) -> Vec<Sub> {
        let vectors = self.all_vectors(self.ds);
        let mut seen: BTreeSet<BTreeSet<Vec<u32>>> = BTreeSet::new();
        let mut frontier = vec![self.span_set(&[])];
        seen.insert(frontier[0].clone());
        while let Some(sp) = frontier.pop() {
            for v in &vectors {
                if sp.contains(v) {
                    continue;
                }
                let mut gens: Vec<Vec<u32>> = sp.iter().cloned().collect();
                gens.push(v.clone());
                let next = self.span_set(&gens);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.into_iter()
            .filter(|set| {
                set.iter().all(|v| {
                    self.base
                        .iter()
                        .all(|b| set.contains(&self.times(b, v)) && set.contains(&self.times(v, b)))
                })
            })
            .map(Sub)
            .collect()
    }

    fn basis_of(&self, sub: &Sub) -> Vec<Vec<u32>> {
        let mut sp = Span::new(self.p);
        let mut out = Vec::new();
        for v in &sub.0 {
            if sp.insert(v.clone()) {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn product(&self, x: &Sub, y: &Sub) -> Sub {
        let gens: Vec<Vec<u32>> = self
            .basis_of(x)
            .iter()
            .flat_map(|a| self.basis_of(y).into_iter().map(move |b| (a.clone(), b)))
            .map(|(a, b)| self.times(&a, &b))
            .collect();
        Sub(self.span_set(&gens))
    }

    /// `S (x)_B I -> S` is bijective: `S I = S` and the tensor product has
    /// dimension `dim S`.
    pub fn left_invertible(&self, sub: &Sub) -> bool {
        let xs = self.basis_of(sub);
        let mut image = Span::new(self.p);
        for a in 0..self.ds {
            for x in &xs {
                image.insert(self.times(&self.basis(a), x));
            }
        }
        let n = xs.len();
        let coords = |v: &[u32]| -> Vec<u32> {
            // coordinates of v in the basis xs
            let mut sols = self.all_vectors(n).into_iter().filter(|c| {
                let mut w = vec![0; self.ds];
                for (k, &ck) in c.iter().enumerate() {
                    add_scaled(self.p, &mut w, ck, &xs[k]);
                }
                w == v
            });
            sols.next().expect("v lies in the span")
        };
        let mut rel = Span::new(self.p);
        for a in 0..self.ds {
            for b in &self.base {
                let sb = self.times(&self.basis(a), b);
                for (k, x) in xs.iter().enumerate() {
                    // s_a i(b) (x) x - s_a (x) i(b) x
                    let mut v = vec![0; self.ds * n];
                    for (c, &sc) in sb.iter().enumerate() {
                        v[c * n + k] = (v[c * n + k] + sc) % self.p;
                    }
                    let bx = coords(&self.times(b, x));
                    for (m, &cm) in bx.iter().enumerate() {
                        v[a * n + m] = (v[a * n + m] + self.p - cm) % self.p;
                    }
                    rel.insert(v);
                }
            }
        }
        image.rank() == self.ds && self.ds * n - rel.rank() == self.ds
    }

    fn square_relations(&self) -> Span {
        let d = self.ds;
        let mut rel = Span::new(self.p);
        for a in 0..d {
            for c in 0..d {
                for b in &self.base {
                    let mut v = vec![0; d * d];
                    let left = self.times(&self.basis(a), b);
                    let right = self.times(b, &self.basis(c));
                    for x in 0..d {
                        v[x * d + c] = (v[x * d + c] + left[x]) % self.p;
                        v[a * d + x] = (v[a * d + x] + self.p - right[x]) % self.p;
                    }
                    rel.insert(v);
                }
            }
        }
        rel
    }

    fn cube_relations(&self) -> Span {
        let d = self.ds;
        let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
        let mut rel = Span::new(self.p);
        for a in 0..d {
            for m in 0..d {
                for c in 0..d {
                    for b in &self.base {
                        // slot 1|2
                        let mut v = vec![0; d * d * d];
                        let l = self.times(&self.basis(a), b);
                        let r = self.times(b, &self.basis(m));
                        for x in 0..d {
                            v[idx(x, m, c)] = (v[idx(x, m, c)] + l[x]) % self.p;
                            v[idx(a, x, c)] = (v[idx(a, x, c)] + self.p - r[x]) % self.p;
                        }
                        rel.insert(v);
                        // slot 2|3
                        let mut v = vec![0; d * d * d];
                        let l = self.times(&self.basis(m), b);
                        let r = self.times(b, &self.basis(c));
                        for x in 0..d {
                            v[idx(a, x, c)] = (v[idx(a, x, c)] + l[x]) % self.p;
                            v[idx(a, m, x)] = (v[idx(a, m, x)] + self.p - r[x]) % self.p;
                        }
                        rel.insert(v);
                    }
                }
            }
        }
        rel
    }

    /// `x e y` for `e` in `S (x) S` coordinates.
    fn sandwich(&self, x: &[u32], e: &[u32], y: &[u32]) -> Vec<u32> {
        let d = self.ds;
        let mut out = vec![0; d * d];
        for a in 0..d {
            for b in 0..d {
                let c = e[a * d + b];
                if c == 0 {
                    continue;
                }
                let l = self.times(x, &self.basis(a));
                let r = self.times(&self.basis(b), y);
                for (u, &lu) in l.iter().enumerate() {
                    for (v, &rv) in r.iter().enumerate() {
                        out[u * d + v] = (out[u * d + v] + c * lu % self.p * rv) % self.p;
                    }
                }
            }
        }
        out
    }

    /// Normal forms of the coring endomorphisms and their composition table
    /// (`table[i][j]` is `e_i o e_j`), identity included.
    pub fn endomorphisms(&self) -> (Vec<Vec<u32>>, Vec<Vec<usize>>) {
        let d = self.ds;
        let p = self.p;
        let rel2 = self.square_relations();
        let rel3 = self.cube_relations();
        let pivots = rel2.pivots();
        let free: Vec<usize> = (0..d * d).filter(|k| !pivots.contains(k)).collect();
        let normal = |mut v: Vec<u32>| {
            rel2.reduce(&mut v);
            v
        };
        let mut found = Vec::new();
        for coeffs in self.all_vectors(free.len()) {
            let mut e = vec![0; d * d];
            for (k, &c) in free.iter().zip(&coeffs) {
                e[*k] = c;
            }
            // mu(e) = 1
            let mut mu = vec![0; d];
            for a in 0..d {
                for b in 0..d {
                    if e[a * d + b] != 0 {
                        add_scaled(p, &mut mu, e[a * d + b], &self.mul[a][b]);
                    }
                }
            }
            if mu != self.unit {
                continue;
            }
            let commutes = self
                .base
                .iter()
                .all(|b| normal(self.sandwich(b, &e, &self.unit)) == normal(self.sandwich(&self.unit, &e, b)));
            if !commutes {
                continue;
            }
            // e^1 (x) 1 (x) e^2 against e^1 (x) e^2 f^1 (x) f^2 with f = e
            let mut lhs = vec![0; d * d * d];
            let mut rhs = vec![0; d * d * d];
            for a in 0..d {
                for b in 0..d {
                    let c1 = e[a * d + b];
                    if c1 == 0 {
                        continue;
                    }
                    for (x, &ux) in self.unit.iter().enumerate() {
                        let k = (a * d + x) * d + b;
                        lhs[k] = (lhs[k] + c1 * ux) % p;
                    }
                    for c in 0..d {
                        for f in 0..d {
                            let c2 = e[c * d + f];
                            if c2 == 0 {
                                continue;
                            }
                            let mid = &self.mul[b][c];
                            for (x, &mx) in mid.iter().enumerate() {
                                let k = (a * d + x) * d + f;
                                rhs[k] = (rhs[k] + c1 * c2 % p * mx) % p;
                            }
                        }
                    }
                }
            }
            rel3.reduce(&mut lhs);
            rel3.reduce(&mut rhs);
            if lhs == rhs {
                found.push(e);
            }
        }
        let index: HashMap<Vec<u32>, usize> = found.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        let table = found
            .iter()
            .map(|e| {
                found
                    .iter()
                    .map(|f| {
                        // (g_e o g_f)(1 (x) 1) = g_e(f) = f^1 e f^2
                        let mut out = vec![0; d * d];
                        for a in 0..d {
                            for b in 0..d {
                                let c = f[a * d + b];
                                if c != 0 {
                                    add_scaled(p, &mut out, c, &self.sandwich(&self.basis(a), e, &self.basis(b)));
                                }
                            }
                        }
                        index[&normal(out)]
                    })
                    .collect()
            })
            .collect();
        (found, table)
    }

    /// `I^l` with its product table.
    pub fn left_invertible_monoid(&self) -> (Vec<Sub>, Vec<Vec<usize>>) {
        let subs: Vec<Sub> = self.subbimodules().into_iter().filter(|s| self.left_invertible(s)).collect();
        let table = subs
            .iter()
            .map(|x| {
                subs.iter()
                    .map(|y| {
                        let xy = self.product(x, y);
                        subs.iter().position(|s| *s == xy).expect("I^l is closed")
                    })
                    .collect()
            })
            .collect();
        (subs, table)
    }

    /// The units of the monoid of all subbimodules.
    pub fn invertible(&self) -> Vec<Sub> {
        let subs = self.subbimodules();
        let one = Sub(self.span_set(&self.base));
        subs.iter()
            .filter(|x| subs.iter().any(|y| self.product(x, y) == one && self.product(y, x) == one))
            .cloned()
            .collect()
    }
}

/// Whether a Cayley table describes a group.
pub fn is_group(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    let Some(e) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
        return false;
    };
    (0..n).all(|x| (0..n).any(|y| table[x][y] == e && table[y][x] == e))
}

pub fn is_commutative(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    (0..n).all(|x| (0..n).all(|y| table[x][y] == table[y][x]))
}

/// Spans of explicit vector sets, for comparing with library subspaces.
pub fn span_of(p: u32, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut s = Span::new(p);
    for v in vectors {
        s.insert(v.clone());
    }
    s.canonical()
}

/// Endomorphisms of the comatrix coalgebra `M* (x)_B M` for `M = F_p^n`
/// with `A = F_p`, `B` acting on the left through `left[k]` (rows).
/// Brute force over every linear map; returns `(|End|, |Aut|)`.
pub fn comatrix_counts(p: u32, n: usize, left: &[Vec<Vec<u32>>]) -> (usize, usize) {
    // coordinates (i, j) stand for e_i* (x) e_j
    let mut rel = Span::new(p);
    for l in left {
        for i in 0..n {
            for j in 0..n {
                let mut v = vec![0; n * n];
                for x in 0..n {
                    v[x * n + j] = (v[x * n + j] + l[i][x]) % p;
                    v[i * n + x] = (v[i * n + x] + p - l[x][j]) % p;
                }
                rel.insert(v);
            }
        }
    }
    let pivots = rel.pivots();
    let free: Vec<usize> = (0..n * n).filter(|k| !pivots.contains(k)).collect();
    let q = free.len();
    let to_sigma = |mut v: Vec<u32>| -> Vec<u32> {
        rel.reduce(&mut v);
        free.iter().map(|&k| v[k]).collect()
    };
    let basis: Vec<(usize, usize)> = free.iter().map(|&k| (k / n, k % n)).collect();
    let counit: Vec<u32> = basis.iter().map(|&(i, j)| u32::from(i == j)).collect();
    // comultiplication of each basis element in Sigma (x) Sigma coordinates
    let delta: Vec<Vec<u32>> = basis
        .iter()
        .map(|&(i, j)| {
            let mut out = vec![0; q * q];
            for x in 0..n {
                let mut l = vec![0; n * n];
                l[i * n + x] = 1;
                let mut r = vec![0; n * n];
                r[x * n + j] = 1;
                let (l, r) = (to_sigma(l), to_sigma(r));
                for (a, &la) in l.iter().enumerate() {
                    for (b, &rb) in r.iter().enumerate() {
                        out[a * q + b] = (out[a * q + b] + la * rb) % p;
                    }
                }
            }
            out
        })
        .collect();
    let oracle = Oracle {
        p,
        ds: 0,
        db: 0,
        mul: vec![],
        base: vec![],
        unit: vec![],
    };
    let mut ends = 0;
    let mut auts = 0;
    for flat in oracle.all_vectors(q * q) {
        // column c of g is flat[c*q..]
        let col = |c: usize| &flat[c * q..(c + 1) * q];
        let preserves_counit = (0..q).all(|c| {
            let v = col(c);
            (0..q).map(|a| v[a] * counit[a]).sum::<u32>() % p == counit[c]
        });
        if !preserves_counit {
            continue;
        }
        let comult = (0..q).all(|c| {
            let g = col(c);
            let mut lhs = vec![0; q * q];
            for (a, &ga) in g.iter().enumerate() {
                add_scaled(p, &mut lhs, ga, &delta[a]);
            }
            let mut rhs = vec![0; q * q];
            for a in 0..q {
                for b in 0..q {
                    let t = delta[c][a * q + b];
                    if t == 0 {
                        continue;
                    }
                    for (x, &gx) in col(a).iter().enumerate() {
                        for (y, &gy) in col(b).iter().enumerate() {
                            rhs[x * q + y] = (rhs[x * q + y] + t * gx % p * gy) % p;
                        }
                    }
                }
            }
            lhs == rhs
        });
        if comult {
            ends += 1;
            let mut sp = Span::new(p);
            for c in 0..q {
                sp.insert(col(c).to_vec());
            }
            if sp.rank() == q {
                auts += 1;
            }
        }
    }
    (ends, auts)
}
