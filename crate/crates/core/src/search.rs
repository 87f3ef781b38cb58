//! Backtracking search for bijections that preserve a binary operation.
//!
//! Shared by semigroup, monoid, lattice and partial-automorphism searches.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

const UNSET: usize = usize::MAX;

/// A finite binary operation given by its flat table.
#[derive(Clone, Copy)]
pub(crate) struct Magma<'a> {
    pub n: usize,
    pub table: &'a [usize],
}

impl Magma<'_> {
    #[inline]
    fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }
}

fn hash_of(v: impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// Isomorphism-invariant key per element; `extra` is folded in when given.
pub(crate) fn element_keys(m: Magma<'_>, extra: Option<&[u64]>) -> Vec<u64> {
    let n = m.n;
    let mut sqrt = vec![0u32; n];
    for y in 0..n {
        sqrt[m.mul(y, y)] += 1;
    }
    let mut stamp = vec![UNSET; 2 * n];
    let mut pos = vec![UNSET; n];
    let base: Vec<u64> = (0..n)
        .map(|x| {
            // Powers of x until the first repeat.
            let mut seen = Vec::new();
            let mut p = x;
            let (index, period) = loop {
                if pos[p] != UNSET {
                    break (pos[p] + 1, seen.len() - pos[p]);
                }
                pos[p] = seen.len();
                seen.push(p);
                p = m.mul(p, x);
            };
            for &q in &seen {
                pos[q] = UNSET;
            }
            let (mut row, mut col) = (0u32, 0u32);
            let (mut rstab, mut lstab, mut rid, mut lid, mut comm) = (0u32, 0u32, 0u32, 0u32, 0u32);
            for y in 0..n {
                let (xy, yx) = (m.mul(x, y), m.mul(y, x));
                if stamp[xy] != x {
                    stamp[xy] = x;
                    row += 1;
                }
                if stamp[n + yx] != x {
                    stamp[n + yx] = x;
                    col += 1;
                }
                rstab += (xy == x) as u32;
                lstab += (yx == x) as u32;
                lid += (xy == y) as u32;
                rid += (yx == y) as u32;
                comm += (xy == yx) as u32;
            }
            let e = extra.map_or(0, |e| e[x]);
            hash_of((m.mul(x, x) == x, index, period, row, col, rstab, lstab, lid, rid, comm, sqrt[x], e))
        })
        .collect();
    if n > 2048 {
        return base;
    }
    // One refinement round: the multiset of (key y, key xy, key yx).
    (0..n)
        .map(|x| {
            let mut nb: Vec<(u64, u64, u64)> = (0..n).map(|y| (base[y], base[m.mul(x, y)], base[m.mul(y, x)])).collect();
            nb.sort_unstable();
            hash_of((base[x], nb))
        })
        .collect()
}

pub(crate) struct Search<'a> {
    s: Magma<'a>,
    t: Magma<'a>,
    ks: Vec<u64>,
    kt: Vec<u64>,
    gens: Vec<usize>,
    forced: Vec<Option<usize>>,
    map: Vec<usize>,
    inv: Vec<usize>,
    trail: Vec<usize>,
    limit: Option<usize>,
    found: usize,
}

impl<'a> Search<'a> {
    /// Prepares a search; `None` when the invariant multisets already differ.
    pub(crate) fn new(
        s: Magma<'a>,
        t: Magma<'a>,
        extra: Option<(&[u64], &[u64])>,
        forced: &[(usize, usize)],
    ) -> Option<Self> {
        if s.n != t.n {
            return None;
        }
        let ks = element_keys(s, extra.map(|e| e.0));
        let kt = element_keys(t, extra.map(|e| e.1));
        let (mut a, mut b) = (ks.clone(), kt.clone());
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let n = s.n;
        let mut class_size = std::collections::HashMap::new();
        for &k in &ks {
            *class_size.entry(k).or_insert(0usize) += 1;
        }
        let mut rank: Vec<usize> = (0..n).collect();
        rank.sort_by_key(|&x| (class_size[&ks[x]], x));

        let mut gens: Vec<usize> = Vec::new();
        let mut forced_img = Vec::new();
        for &(x, y) in forced {
            if !gens.contains(&x) {
                gens.push(x);
                forced_img.push(Some(y));
            }
        }
        let mut closed = closure(s, &gens);
        for &x in &rank {
            if closed.iter().all(|&c| c) {
                break;
            }
            if !closed[x] {
                gens.push(x);
                forced_img.push(None);
                closed = closure(s, &gens);
            }
        }
        Some(Self {
            s,
            t,
            ks,
            kt,
            gens,
            forced: forced_img,
            map: vec![UNSET; n],
            inv: vec![UNSET; n],
            trail: Vec::new(),
            limit: None,
            found: 0,
        })
    }

    /// Runs the search, calling `visit` with each verified bijection.
    pub(crate) fn run(mut self, limit: Option<usize>, visit: &mut dyn FnMut(&[usize])) -> usize {
        self.limit = limit;
        if limit == Some(0) {
            return 0;
        }
        self.extend(0, visit);
        self.found
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.found >= l)
    }

    fn extend(&mut self, k: usize, visit: &mut dyn FnMut(&[usize])) {
        if k == self.gens.len() {
            if self.verify() {
                self.found += 1;
                visit(&self.map);
            }
            return;
        }
        let g = self.gens[k];
        let candidates: Vec<usize> = match self.forced[k] {
            Some(y) => vec![y],
            None => (0..self.t.n).collect(),
        };
        for y in candidates {
            if self.done() {
                return;
            }
            if self.map[g] != UNSET {
                // Forced generators can be reached from earlier ones.
                if self.map[g] == y {
                    self.extend(k + 1, visit);
                }
                return;
            }
            if self.inv[y] != UNSET || self.ks[g] != self.kt[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign_generator(k, y) {
                self.extend(k + 1, visit);
            }
            self.undo(mark);
        }
    }

    fn set(&mut self, x: usize, y: usize, queue: &mut Vec<usize>) -> bool {
        if self.map[x] != UNSET {
            return self.map[x] == y;
        }
        if self.inv[y] != UNSET || self.ks[x] != self.kt[y] {
            return false;
        }
        self.map[x] = y;
        self.inv[y] = x;
        self.trail.push(x);
        queue.push(x);
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.inv[self.map[x]] = UNSET;
            self.map[x] = UNSET;
        }
    }

    fn assign_generator(&mut self, k: usize, y: usize) -> bool {
        let g = self.gens[k];
        let mut queue = Vec::new();
        if !self.set(g, y, &mut queue) {
            return false;
        }
        let assigned: Vec<usize> = self.trail.clone();
        for w in assigned {
            if !self.close_pair(w, g, &mut queue) || !self.close_pair(g, w, &mut queue) {
                return false;
            }
        }
        while let Some(u) = queue.pop() {
            for j in 0..=k {
                let h = self.gens[j];
                if !self.close_pair(u, h, &mut queue) || !self.close_pair(h, u, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn close_pair(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) -> bool {
        let p = self.s.mul(a, b);
        let q = self.t.mul(self.map[a], self.map[b]);
        self.set(p, q, queue)
    }

    fn verify(&self) -> bool {
        let n = self.s.n;
        self.map.iter().all(|&y| y != UNSET)
            && (0..n).all(|x| (0..n).all(|y| self.map[self.s.mul(x, y)] == self.t.mul(self.map[x], self.map[y])))
    }
}

fn closure(m: Magma<'_>, gens: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; m.n];
    let mut queue: Vec<usize> = Vec::new();
    for &g in gens {
        if !inside[g] {
            inside[g] = true;
            queue.push(g);
        }
    }
    while let Some(w) = queue.pop() {
        for &g in gens {
            for p in [m.mul(w, g), m.mul(g, w)] {
                if !inside[p] {
                    inside[p] = true;
                    queue.push(p);
                }
            }
        }
    }
    inside
}

/// All bijections (up to `limit`) preserving the operation, in deterministic order.
pub(crate) fn find(
    s: Magma<'_>,
    t: Magma<'_>,
    extra: Option<(&[u64], &[u64])>,
    forced: &[(usize, usize)],
    limit: Option<usize>,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if let Some(search) = Search::new(s, t, extra, forced) {
        search.run(limit, &mut |m| out.push(m.to_vec()));
    }
    out
}
