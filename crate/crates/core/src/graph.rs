//! Finite simple graphs and the families used throughout the crate.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// Coordinates of a book graph `B(m,n)`: `n` copies of the cycle `C_m`
/// glued along one spine edge.
///
/// Vertex numbering: spine `v_0 = 0`, `v_{m-1} = 1`, then path vertices in
/// page-major order, so `v_{j,i}` (position `j` in `1..=m-2` on page `i` in
/// `1..=n`) sits at `2 + (i-1)(m-2) + (j-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BookLayout {
    pub m: usize,
    pub n: usize,
}

impl BookLayout {
    pub fn spinal(&self) -> [usize; 2] {
        [0, 1]
    }

    /// Index of `v_{j,i}`; `j` in `1..=m-2`, `i` in `1..=n`.
    pub fn path_vertex(&self, j: usize, i: usize) -> usize {
        assert!((1..=self.m - 2).contains(&j) && (1..=self.n).contains(&i));
        2 + (i - 1) * (self.m - 2) + (j - 1)
    }

    pub fn vertex_count(&self) -> usize {
        2 + self.n * (self.m - 2)
    }

    pub fn edge_count(&self) -> usize {
        1 + self.n * (self.m - 1)
    }

    /// Inverse of the numbering: `None` for spinal vertices, `(j, i)` otherwise.
    pub fn coordinates(&self, v: usize) -> Option<(usize, usize)> {
        (v >= 2).then(|| ((v - 2) % (self.m - 2) + 1, (v - 2) / (self.m - 2) + 1))
    }

    pub fn label(&self, v: usize) -> String {
        match v {
            0 => "v0".to_string(),
            1 => format!("v{}", self.m - 1),
            _ => {
                let (j, i) = self.coordinates(v).unwrap();
                format!("v{j},{i}")
            }
        }
    }
}

/// Fiber coordinates of a Cartesian product `G □ H`: vertex `(g, h)` sits at
/// `g * h_order + h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductLayout {
    pub left_order: usize,
    pub right_order: usize,
}

impl ProductLayout {
    pub fn index(&self, left: usize, right: usize) -> usize {
        left * self.right_order + right
    }

    pub fn coordinates(&self, v: usize) -> (usize, usize) {
        (v / self.right_order, v % self.right_order)
    }

    /// The `H`-fiber over `left`.
    pub fn right_fiber(&self, left: usize) -> Vec<usize> {
        (0..self.right_order).map(|h| self.index(left, h)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Layout {
    Book(BookLayout),
    Product(ProductLayout),
}

/// Finite simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored as one bitset per vertex and is always symmetric and
/// loop-free.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
    layout: Option<Layout>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
            layout: None,
        }
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range
    /// endpoints. Repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub(crate) fn with_layout(mut self, layout: Layout) -> Self {
        self.layout = Some(layout);
        self
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for v in self.adjacency[u].ones().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Looks a vertex up by label, falling back to a decimal index.
    pub fn vertex_by_label(&self, name: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(v) = labels.iter().position(|l| l == name) {
                return Some(v);
            }
        }
        name.parse::<usize>()
            .ok()
            .filter(|&v| v < self.vertex_count())
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.layout.as_ref()
    }

    pub fn book_layout(&self) -> Option<BookLayout> {
        match self.layout {
            Some(Layout::Book(b)) => Some(b),
            _ => None,
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in self.adjacency[v].ones() {
                if !seen.put(w) {
                    stack.push(w);
                }
            }
        }
        seen.count_ones(..) == n
    }

    /// Checks symmetry, loop-freeness and index range of the adjacency.
    pub fn audit(&self) -> Result<()> {
        let n = self.vertex_count();
        for (u, adj) in self.adjacency.iter().enumerate() {
            if adj.len() != n {
                return Err(Error::InvalidGraph(format!("row {u} has width {}", adj.len())));
            }
            if adj.contains(u) {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            for v in adj.ones() {
                if !self.adjacency[v].contains(u) {
                    return Err(Error::InvalidGraph(format!("edge {u}-{v} is not symmetric")));
                }
            }
        }
        Ok(())
    }

    /// Plain-text edge list: `n m` on the first line, then `u v` per edge.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.vertex_count(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, reason: &str| Error::EdgeList {
            line,
            reason: reason.to_string(),
        };
        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let nums = parse_pair(header).ok_or_else(|| err(hline, "header must be `n m`"))?;
        let (n, m) = nums;
        let mut g = Self::empty(n);
        let mut count = 0;
        for (line, text) in lines {
            let (u, v) = parse_pair(text).ok_or_else(|| err(line, "expected `u v`"))?;
            g.add_edge(u, v).map_err(|e| err(line, &e.to_string()))?;
            count += 1;
        }
        if count != m {
            return Err(err(hline, &format!("header promises {m} edges, found {count}")));
        }
        Ok(g)
    }
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} vertices, edges {:?})", self.vertex_count(), self.edges())
    }
}

/// `B(m,n)`: `n` pages, each a cycle `C_m`, sharing the spine edge `v_0 v_{m-1}`.
pub fn book(m: usize, n: usize) -> Result<(Graph, BookLayout)> {
    if m < 3 {
        return Err(Error::Domain(format!("book needs m >= 3, got {m}")));
    }
    if n < 1 {
        return Err(Error::Domain(format!("book needs n >= 1, got {n}")));
    }
    let layout = BookLayout { m, n };
    let mut g = Graph::empty(layout.vertex_count());
    g.add_edge(0, 1)?;
    for i in 1..=n {
        g.add_edge(0, layout.path_vertex(1, i))?;
        for j in 1..m - 2 {
            g.add_edge(layout.path_vertex(j, i), layout.path_vertex(j + 1, i))?;
        }
        g.add_edge(layout.path_vertex(m - 2, i), 1)?;
    }
    let labels = (0..layout.vertex_count()).map(|v| layout.label(v)).collect();
    let g = g.with_labels(labels)?.with_layout(Layout::Book(layout));
    Ok((g, layout))
}

pub fn cycle(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::Domain(format!("cycle needs m >= 3, got {m}")));
    }
    let edges: Vec<_> = (0..m).map(|v| (v, (v + 1) % m)).collect();
    Graph::from_edges(m, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Domain("path needs at least one vertex".into()));
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Domain("complete graph needs at least one vertex".into()));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// `K_{a,b}`. The smaller part is numbered first (ties: the `a` part), so
/// `K_{5,1}` has its centre at vertex 0.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(Error::Domain(format!("complete_bipartite needs a, b >= 1, got {a},{b}")));
    }
    let (first, second) = if b < a { (b, a) } else { (a, b) };
    let mut edges = Vec::new();
    for u in 0..first {
        for v in first..first + second {
            edges.push((u, v));
        }
    }
    Graph::from_edges(a + b, &edges)
}

/// `Q_k`, vertex `x` labelled by its `k`-bit binary string (most significant
/// bit first).
pub fn hypercube(k: usize) -> Result<Graph> {
    if !(1..=16).contains(&k) {
        return Err(Error::Domain(format!("hypercube dimension must be in 1..=16, got {k}")));
    }
    let n = 1usize << k;
    let mut edges = Vec::new();
    for x in 0..n {
        for bit in 0..k {
            let y = x ^ (1 << bit);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    let labels = (0..n).map(|x| format!("{x:0k$b}")).collect();
    Graph::from_edges(n, &edges)?.with_labels(labels)
}

/// A 6-vertex graph with trivial automorphism group: the path
/// `0-1-2-3-4` plus vertex 5 adjacent to 2 and 3.
pub fn asymmetric6() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (3, 5)]).unwrap()
}

/// Cartesian product `G □ H`: `(g1,h1) ~ (g2,h2)` iff `g1 = g2` and
/// `h1 ~ h2`, or `h1 = h2` and `g1 ~ g2`.
pub fn cartesian_product(left: &Graph, right: &Graph) -> Result<Graph> {
    if left.vertex_count() == 0 || right.vertex_count() == 0 {
        return Err(Error::Domain("cartesian product of an empty graph".into()));
    }
    let layout = ProductLayout {
        left_order: left.vertex_count(),
        right_order: right.vertex_count(),
    };
    let mut g = Graph::empty(layout.left_order * layout.right_order);
    for a in 0..layout.left_order {
        for (h1, h2) in right.edges() {
            g.add_edge(layout.index(a, h1), layout.index(a, h2))?;
        }
    }
    for h in 0..layout.right_order {
        for (a1, a2) in left.edges() {
            g.add_edge(layout.index(a1, h), layout.index(a2, h))?;
        }
    }
    let labels = (0..g.vertex_count())
        .map(|v| {
            let (a, h) = layout.coordinates(v);
            format!("({},{})", left.label(a), right.label(h))
        })
        .collect();
    Ok(g.with_labels(labels)?.with_layout(Layout::Product(layout)))
}

/// A graph family descriptor, written `name:arg,arg` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Cycle { m: usize },
    Path { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Hypercube { k: usize },
    Asym6,
    Book { m: usize, n: usize },
    /// `K_q □ A6`, with `A6` the embedded asymmetric graph.
    CompleteAsym { q: usize },
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Cycle { m } => cycle(m),
            Family::Path { n } => path(n),
            Family::Complete { n } => complete(n),
            Family::CompleteBipartite { a, b } => complete_bipartite(a, b),
            Family::Hypercube { k } => hypercube(k),
            Family::Asym6 => Ok(asymmetric6()),
            Family::Book { m, n } => book(m, n).map(|(g, _)| g),
            Family::CompleteAsym { q } => cartesian_product(&complete(q)?, &asymmetric6()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), a.trim()),
            None => (s.trim(), ""),
        };
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| {
                    a.trim()
                        .parse()
                        .map_err(|_| Error::Domain(format!("bad family argument `{a}` in `{s}`")))
                })
                .collect::<Result<_>>()?
        };
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Domain(format!("family `{name}` takes {k} argument(s)")))
            }
        };
        let fam = match name {
            "cycle" => {
                arity(1)?;
                Family::Cycle { m: nums[0] }
            }
            "path" => {
                arity(1)?;
                Family::Path { n: nums[0] }
            }
            "complete" => {
                arity(1)?;
                Family::Complete { n: nums[0] }
            }
            "complete_bipartite" | "bipartite" => {
                arity(2)?;
                Family::CompleteBipartite { a: nums[0], b: nums[1] }
            }
            "hypercube" => {
                arity(1)?;
                Family::Hypercube { k: nums[0] }
            }
            "asym6" => {
                arity(0)?;
                Family::Asym6
            }
            "book" => {
                arity(2)?;
                Family::Book { m: nums[0], n: nums[1] }
            }
            "complete_asym" => {
                arity(1)?;
                Family::CompleteAsym { q: nums[0] }
            }
            _ => return Err(Error::UnknownFamily(name.to_string())),
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Cycle { m } => write!(f, "cycle:{m}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::CompleteBipartite { a, b } => write!(f, "complete_bipartite:{a},{b}"),
            Family::Hypercube { k } => write!(f, "hypercube:{k}"),
            Family::Asym6 => write!(f, "asym6"),
            Family::Book { m, n } => write!(f, "book:{m},{n}"),
            Family::CompleteAsym { q } => write!(f, "complete_asym:{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn book_counts() {
        for m in 3..=10 {
            for n in 1..=10 {
                let (g, layout) = book(m, n).unwrap();
                g.audit().unwrap();
                assert_eq!(g.vertex_count(), 2 + n * (m - 2));
                assert_eq!(g.edge_count(), 1 + n * (m - 1));
                assert_eq!(layout.vertex_count(), g.vertex_count());
                assert_eq!(layout.edge_count(), g.edge_count());
            }
        }
    }

    #[test]
    fn book_small_cases() {
        let (g, _) = book(4, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 10));
        let (g, _) = book(3, 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 5));
        assert_eq!(g.degree(2), 2);
        assert_eq!(book(8, 473).unwrap().1.vertex_count(), 2840);
        assert_eq!(book(8, 703).unwrap().1.vertex_count(), 4220);
    }

    #[test]
    fn book_pages_are_paths() {
        let (g, layout) = book(6, 4).unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                let v = layout.path_vertex(j, i);
                assert_eq!(layout.coordinates(v), Some((j, i)));
                // inside the page only consecutive positions are adjacent
                for j2 in 1..=4 {
                    let w = layout.path_vertex(j2, i);
                    assert_eq!(g.has_edge(v, w), j.abs_diff(j2) == 1);
                }
            }
        }
        assert_eq!(g.label(layout.path_vertex(2, 3)), "v2,3");
        assert_eq!(g.label(1), "v5");
    }

    #[test]
    fn book_rejects_bad_sizes() {
        assert!(matches!(book(2, 3), Err(Error::Domain(_))));
        assert!(matches!(book(4, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn families() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
        let q3 = hypercube(3).unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        assert_eq!(q3.labels().unwrap()[0], "000");
        assert_eq!(q3.labels().unwrap()[7], "111");
        assert_eq!(q3.vertex_by_label("101"), Some(5));
        let star = complete_bipartite(5, 1).unwrap();
        assert_eq!(star.degree(0), 5);
        assert!((1..6).all(|v| star.degree(v) == 1));
        assert!(asymmetric6().is_connected());
    }

    #[test]
    fn family_grammar() {
        assert_eq!("cycle:5".parse::<Family>().unwrap(), Family::Cycle { m: 5 });
        assert_eq!("book:4,3".parse::<Family>().unwrap(), Family::Book { m: 4, n: 3 });
        assert_eq!("asym6".parse::<Family>().unwrap(), Family::Asym6);
        assert!(matches!("wheel:5".parse::<Family>(), Err(Error::UnknownFamily(_))));
        assert!("cycle:2".parse::<Family>().unwrap().build().is_err());
        assert!("book:4".parse::<Family>().is_err());
        for s in ["cycle:7", "complete_bipartite:2,3", "hypercube:2", "complete_asym:3"] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn product_shapes() {
        let k2 = complete(2).unwrap();
        let c4 = cartesian_product(&k2, &k2).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert!((0..4).all(|v| c4.degree(v) == 2));
        let k1 = complete(1).unwrap();
        let p = cartesian_product(&k2, &k1).unwrap();
        assert_eq!(p.edges(), vec![(0, 1)]);
        let kp = Family::CompleteAsym { q: 4 }.build().unwrap();
        assert_eq!(kp.vertex_count(), 24);
        assert_eq!(kp.edge_count(), 4 * 6 + 6 * 6);
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = book(4, 2).unwrap().0;
        let text = g.to_edge_list();
        let h = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(h.edges(), g.edges());
        assert!(matches!(
            Graph::parse_edge_list("3 1\n0 3\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1\n"),
            Err(Error::EdgeList { .. })
        ));
        assert!(Graph::parse_edge_list("2 1\n1 1\n").is_err());
    }
}
