//! Brute-force reference implementations used to cross-check the library.
//! Nothing here goes through the library's partition refinement, stabilizer
//! chains or restricted-growth enumeration.

#![allow(dead_code)]

use symbreak::Graph;

/// All automorphisms of `g` other than the identity, found by extending
/// partial adjacency-preserving maps vertex by vertex. Sorted by support
/// size so that cheap symmetries are tried first.
pub fn nontrivial_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g, 0, &mut image, &mut used, &mut out);
    out.retain(|a| a.iter().enumerate().any(|(v, &w)| v != w));
    out.sort_by_key(|a| a.iter().enumerate().filter(|&(v, &w)| v != w).count());
    out
}

fn extend(g: &Graph, v: usize, image: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let n = image.len();
    if v == n {
        out.push(image.to_vec());
        return;
    }
    for w in 0..n {
        if used[w] || g.degree(w) != g.degree(v) {
            continue;
        }
        if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w)) {
            image[v] = w;
            used[w] = true;
            extend(g, v + 1, image, used, out);
            used[w] = false;
        }
    }
    image[v] = usize::MAX;
}

/// Number of bijections of `V(g)` preserving adjacency, by filtering all
/// `n!` permutations.
pub fn automorphism_count_by_filtering(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    permutations(&mut perm, 0, &mut |p| {
        if edges.iter().all(|&(u, v)| g.has_edge(p[u], p[v])) {
            count += 1;
        }
    });
    count
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `true`.
pub fn any_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            if go(v + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Calls `f` on every assignment of values `0..base` to `len` slots until
/// it returns `true`.
pub fn any_word(len: usize, base: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if base == 0 {
        return len == 0 && f(&[]);
    }
    let mut w = vec![0; len];
    loop {
        if f(&w) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == len {
                return false;
            }
            w[i] += 1;
            if w[i] < base {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive parameter oracle for one graph.
pub struct Oracle {
    pub n: usize,
    pub auts: Vec<Vec<usize>>,
}

impl Oracle {
    pub fn new(g: &Graph) -> Self {
        Self {
            n: g.vertex_count(),
            auts: nontrivial_automorphisms(g),
        }
    }

    pub fn group_order(&self) -> usize {
        self.auts.len() + 1
    }

    pub fn is_distinguishing(&self, colors: &[usize]) -> bool {
        !self
            .auts
            .iter()
            .any(|a| (0..self.n).all(|v| colors[v] == colors[a[v]]))
    }

    pub fn is_determining(&self, set: &[usize]) -> bool {
        !self.auts.iter().any(|a| set.iter().all(|&v| a[v] == v))
    }

    pub fn det(&self) -> usize {
        (0..=self.n)
            .find(|&k| any_subset(self.n, k, &mut |s| self.is_determining(s)))
            .expect("V is determining")
    }

    /// Largest color class over `d`-distinguishing colorings, by trying
    /// complements of increasing size and every coloring of them with the
    /// remaining `d-1` colors.
    pub fn max_class(&self, d: usize) -> Option<usize> {
        let n = self.n;
        let mut colors = vec![0; n];
        for s in 0..=n {
            if d == 1 && s > 0 {
                return None;
            }
            let found = any_subset(n, s, &mut |set| {
                // a complement that is not determining is fixed pointwise by
                // some symmetry, which then preserves the whole coloring
                if !self.is_determining(set) {
                    return false;
                }
                any_word(s, d - 1, &mut |w| {
                    colors.iter_mut().for_each(|c| *c = 0);
                    for (&v, &c) in set.iter().zip(w) {
                        colors[v] = c + 1;
                    }
                    self.is_distinguishing(&colors)
                })
            });
            if found {
                return Some(n - s);
            }
        }
        None
    }

    pub fn paint_cost(&self, d: usize) -> Option<usize> {
        self.max_class(d).map(|r| self.n - r)
    }

    pub fn dist(&self) -> usize {
        (1..=self.n.max(1))
            .find(|&d| self.max_class(d).is_some())
            .expect("n colors always distinguish")
    }

    pub fn fdist(&self) -> usize {
        let det = self.det();
        (self.dist()..=det + 1)
            .find(|&d| self.paint_cost(d) == Some(det))
            .expect("rho^{det+1} = det")
    }

    /// Smallest class size over `d`-distinguishing colorings using all `d`
    /// colors, from all `d^n` colorings.
    pub fn cost_number(&self, d: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        any_word(self.n, d, &mut |w| {
            let mut sizes = vec![0; d];
            for &c in w {
                sizes[c] += 1;
            }
            if sizes.iter().all(|&s| s > 0) && self.is_distinguishing(w) {
                let small = *sizes.iter().min().unwrap();
                best = Some(best.map_or(small, |b: usize| b.min(small)));
            }
            false
        });
        best
    }
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices, by canonicalizing every labeled graph under all `n!`
/// relabelings.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permutations(&mut p, 0, &mut |q| perms.push(q.to_vec()));
    let index = |i: usize, j: usize| -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        j * (j - 1) / 2 + i
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|q| {
                edges
                    .iter()
                    .fold(0u64, |acc, &(u, v)| acc | 1 << index(q[u], q[v]))
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}
