//! Automorphism groups of (vertex-colored) graphs by equitable refinement and
//! individualization.
//!
//! The search walks the leftmost path of the individualization tree to a
//! discrete partition, then on the way back up tries every sibling that is
//! not already in the orbit of the leftmost child. A sibling subtree either
//! contains a leaf whose alignment with the first leaf is an automorphism, or
//! the sibling is not in that orbit. Nodes are compared by their cell-size
//! sequence only.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;
use crate::group::{orbits_of, PermutationGroup};
use crate::perm::Permutation;

/// Ordered partition of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn unit(n: usize) -> Self {
        Self {
            cells: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    /// One cell per color class, ordered by color index; empty classes dropped.
    pub fn from_colors(colors: &[usize]) -> Self {
        let k = colors.iter().copied().max().map_or(0, |c| c + 1);
        let mut cells = vec![Vec::new(); k];
        for (v, &c) in colors.iter().enumerate() {
            cells[c].push(v);
        }
        cells.retain(|c| !c.is_empty());
        Self { cells }
    }

    /// Validates that `cells` partition `0..n`.
    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Option<Self> {
        let mut seen = vec![false; n];
        for c in &cells {
            if c.is_empty() {
                return None;
            }
            for &v in c {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return None;
                }
            }
        }
        seen.iter().all(|&s| s).then_some(Self { cells })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// True iff every vertex of a cell has the same number of neighbours in
    /// each cell.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        self.cells.iter().all(|splitter| {
            let set = to_bitset(g.vertex_count(), splitter);
            self.cells.iter().all(|cell| {
                let mut counts = cell.iter().map(|&v| count_into(g, v, &set));
                let first = counts.next();
                counts.all(|c| Some(c) == first)
            })
        })
    }

    fn individualize(&self, v: usize) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for c in &self.cells {
            if c.contains(&v) && c.len() > 1 {
                cells.push(vec![v]);
                cells.push(c.iter().copied().filter(|&w| w != v).collect());
            } else {
                cells.push(c.clone());
            }
        }
        Self { cells }
    }

    /// Index of the first smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(k, c)| (c.len(), *k))
            .map(|(k, _)| k)
    }
}

fn to_bitset(n: usize, cell: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for &v in cell {
        s.insert(v);
    }
    s
}

fn count_into(g: &Graph, v: usize, set: &FixedBitSet) -> usize {
    g.neighbor_set(v).intersection_count(set)
}

/// Coarsest equitable partition refining `p`.
///
/// Cells are split by neighbour counts into each splitter cell in turn;
/// fragments replace their parent in place, ordered by increasing count.
pub fn refine(g: &Graph, p: &OrderedPartition) -> OrderedPartition {
    let n = g.vertex_count();
    let mut cells = p.cells.clone();
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = to_bitset(n, &cells[s]);
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> =
                    cell.iter().map(|&v| (count_into(g, v, &splitter), v)).collect();
                keyed.sort_unstable();
                if keyed.first().unwrap().0 == keyed.last().unwrap().0 {
                    next.push(cell.clone());
                    continue;
                }
                changed = true;
                let mut k = 0;
                while k < keyed.len() {
                    let key = keyed[k].0;
                    let mut frag = Vec::new();
                    while k < keyed.len() && keyed[k].0 == key {
                        frag.push(keyed[k].1);
                        k += 1;
                    }
                    next.push(frag);
                }
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return OrderedPartition { cells };
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    colors: Option<&'a [usize]>,
    first_leaf: Vec<usize>,
    first_sizes: Vec<Vec<usize>>,
    gens: Vec<Permutation>,
}

impl Search<'_> {
    fn first_path(&mut self, p: OrderedPartition, depth: usize) {
        let p = refine(self.g, &p);
        self.first_sizes.push(p.cell_sizes());
        let Some(t) = p.target_cell() else {
            self.first_leaf = p.cells.iter().map(|c| c[0]).collect();
            return;
        };
        let mut candidates = p.cells[t].clone();
        candidates.sort_unstable();
        let w0 = candidates[0];
        self.first_path(p.individualize(w0), depth + 1);
        let mut failed: Vec<usize> = Vec::new();
        for &w in &candidates[1..] {
            let orbits = orbits_of(self.g.vertex_count(), &self.gens);
            let root = |x: usize| orbits.iter().position(|o| o.contains(&x)).unwrap();
            if root(w) == root(w0) || failed.iter().any(|&f| root(f) == root(w)) {
                continue;
            }
            match self.find_equivalent(p.individualize(w), depth + 1) {
                Some(gamma) => self.gens.push(gamma),
                None => failed.push(w),
            }
        }
    }

    fn find_equivalent(&self, p: OrderedPartition, depth: usize) -> Option<Permutation> {
        let p = refine(self.g, &p);
        if self.first_sizes.get(depth) != Some(&p.cell_sizes()) {
            return None;
        }
        match p.target_cell() {
            None => {
                let mut images = vec![0; self.g.vertex_count()];
                for (k, c) in p.cells.iter().enumerate() {
                    images[self.first_leaf[k]] = c[0];
                }
                let gamma = Permutation::from_images(images).ok()?;
                self.is_automorphism(&gamma).then_some(gamma)
            }
            Some(t) => {
                let mut candidates = p.cells[t].clone();
                candidates.sort_unstable();
                candidates
                    .into_iter()
                    .find_map(|w| self.find_equivalent(p.individualize(w), depth + 1))
            }
        }
    }

    fn is_automorphism(&self, gamma: &Permutation) -> bool {
        if let Some(colors) = self.colors {
            if !gamma.preserves_labels(colors) {
                return false;
            }
        }
        is_automorphism(self.g, gamma)
    }
}

/// True iff `gamma` maps edges to edges.
pub fn is_automorphism(g: &Graph, gamma: &Permutation) -> bool {
    gamma.degree() == g.vertex_count()
        && g
            .edges()
            .into_iter()
            .all(|(u, v)| g.has_edge(gamma.apply(u), gamma.apply(v)))
}

/// Automorphism group of `g`, restricted to color-preserving automorphisms
/// when `colors` is given.
pub fn automorphism_group(g: &Graph, colors: Option<&[usize]>) -> PermutationGroup {
    let n = g.vertex_count();
    if n == 0 {
        return PermutationGroup::trivial(0);
    }
    if let Some(c) = colors {
        assert_eq!(c.len(), n, "coloring must be total");
    }
    let initial = match colors {
        Some(c) => OrderedPartition::from_colors(c),
        None => OrderedPartition::unit(n),
    };
    let mut search = Search {
        g,
        colors,
        first_leaf: Vec::new(),
        first_sizes: Vec::new(),
        gens: Vec::new(),
    };
    search.first_path(initial, 0);
    PermutationGroup::new(n, search.gens).expect("generators have the graph's degree")
}

pub fn is_asymmetric(g: &Graph) -> bool {
    automorphism_group(g, None).is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{self, Family};

    /// Every bijection of the vertex set, filtered by edge (and color)
    /// preservation.
    fn brute_force_count(g: &Graph, colors: Option<&[usize]>) -> usize {
        let n = g.vertex_count();
        let mut images: Vec<usize> = (0..n).collect();
        let mut count = 0;
        permute(&mut images, 0, &mut |im| {
            let p = Permutation::from_images(im.to_vec()).unwrap();
            if is_automorphism(g, &p) && colors.is_none_or(|c| p.preserves_labels(c)) {
                count += 1;
            }
        });
        count
    }

    fn permute(v: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn refine_examples() {
        let c5 = graph::cycle(5).unwrap();
        assert_eq!(refine(&c5, &OrderedPartition::unit(5)).len(), 1);
        let star = graph::complete_bipartite(5, 1).unwrap();
        let p = refine(&star, &OrderedPartition::unit(6));
        assert_eq!(p.cells(), &[vec![1, 2, 3, 4, 5], vec![0]]);
        let (b, _) = graph::book(4, 3).unwrap();
        let p = refine(&b, &OrderedPartition::unit(8));
        assert_eq!(p.cells(), &[vec![2, 3, 4, 5, 6, 7], vec![0, 1]]);
        assert!(p.is_equitable(&b));
        assert_eq!(refine(&b, &p), p);
    }

    #[test]
    fn from_cells_validates() {
        assert!(OrderedPartition::from_cells(3, vec![vec![0, 2], vec![1]]).is_some());
        assert!(OrderedPartition::from_cells(3, vec![vec![0, 2]]).is_none());
        assert!(OrderedPartition::from_cells(3, vec![vec![0, 1], vec![1, 2]]).is_none());
    }

    #[test]
    fn known_orders() {
        let c5 = graph::cycle(5).unwrap();
        assert_eq!(automorphism_group(&c5, None).order_u64(), Some(10));
        let colored = automorphism_group(&c5, Some(&[1, 2, 0, 0, 0]));
        assert!(colored.is_trivial());
        let q3 = graph::hypercube(3).unwrap();
        assert_eq!(automorphism_group(&q3, None).order_u64(), Some(48));
        assert_eq!(brute_force_count(&q3, None), 48);
        let (b, _) = graph::book(4, 3).unwrap();
        assert_eq!(automorphism_group(&b, None).order_u64(), Some(12));
    }

    #[test]
    fn asymmetry() {
        assert!(is_asymmetric(&graph::complete(1).unwrap()));
        assert!(!is_asymmetric(&graph::cycle(5).unwrap()));
        let a6 = graph::asymmetric6();
        assert!(is_asymmetric(&a6));
        assert_eq!(brute_force_count(&a6, None), 1);
    }

    #[test]
    fn matches_brute_force_on_families() {
        let fams = [
            "cycle:3", "cycle:6", "cycle:7", "path:5", "complete:5", "complete_bipartite:2,3",
            "complete_bipartite:3,3", "hypercube:2", "book:3,3", "book:4,2", "book:5,1",
            "asym6",
        ];
        for f in fams {
            let g = f.parse::<Family>().unwrap().build().unwrap();
            let grp = automorphism_group(&g, None);
            assert_eq!(grp.order_u64(), Some(brute_force_count(&g, None) as u64), "{f}");
            for gen in grp.generators() {
                assert!(is_automorphism(&g, gen));
            }
        }
    }

    #[test]
    fn colored_groups_match_brute_force() {
        let g = graph::book(4, 2).unwrap().0;
        for colors in [
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![2, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0],
        ] {
            let grp = automorphism_group(&g, Some(&colors));
            assert_eq!(
                grp.order_u64(),
                Some(brute_force_count(&g, Some(&colors)) as u64),
                "{colors:?}"
            );
        }
    }

    #[test]
    fn hypercube_eight_is_fast() {
        let q8 = graph::hypercube(8).unwrap();
        let grp = automorphism_group(&q8, None);
        // 8! * 2^8
        assert_eq!(grp.order_u64(), Some(40_320 * 256));
    }
}
