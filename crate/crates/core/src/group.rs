//! Permutation groups backed by a stabilizer chain.
//!
//! The chain is built with the deterministic Schreier–Sims algorithm. Order and
//! membership come straight from the chain; subgroups defined by a vertex
//! labeling (setwise stabilizers, color-preserving subgroups, pointwise
//! stabilizers) are found by depth-first search over base images with
//! first-in-orbit pruning.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default refusal threshold for [`PermutationGroup::elements`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Points of the basic orbit, in discovery order (base point first).
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn build(degree: usize, base: usize, gens: &[&Permutation]) -> Self {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        let mut orbit = vec![base];
        let mut head = 0;
        while head < orbit.len() {
            let beta = orbit[head];
            head += 1;
            for s in gens {
                let gamma = s.apply(beta);
                if transversal[gamma].is_none() {
                    let u = s.compose_unchecked(transversal[beta].as_ref().unwrap());
                    transversal[gamma] = Some(u);
                    orbit.push(gamma);
                }
            }
        }
        let inverse = transversal
            .iter()
            .map(|u| u.as_ref().map(Permutation::inverse))
            .collect();
        Self {
            base,
            orbit,
            transversal,
            inverse,
        }
    }

    fn rep(&self, point: usize) -> Option<&Permutation> {
        self.transversal[point].as_ref()
    }
}

/// A permutation group given by generators, together with a base and strong
/// generating set.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Builds the group generated by `generators`, acting on `degree` points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Like [`PermutationGroup::new`] but forces the chain's base to start
    /// with `prefix`.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if let Some(&v) = prefix.iter().find(|&&v| v >= degree) {
            return Err(Error::VertexOutOfRange { vertex: v, n: degree });
        }
        let mut strong: Vec<Permutation> = Vec::new();
        for g in &generators {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for &p in prefix {
            if !base.contains(&p) {
                base.push(p);
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        let mut chain = Chain {
            degree,
            base,
            strong,
            levels: Vec::new(),
        };
        chain.schreier_sims();
        let Chain { strong, levels, .. } = chain;
        Ok(Self {
            degree,
            generators,
            strong,
            levels,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Sizes of the basic orbits along the chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as `u64`, `None` on overflow.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    /// Sifts `g` through the chain from `start`; returns the residue and the
    /// level at which sifting stopped (`levels.len()` when it went through).
    fn strip(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (k, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base);
            match &level.inverse[beta] {
                Some(uinv) => g = uinv.compose_unchecked(&g),
                None => return (g, k),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, stop) = self.strip(g.clone(), 0);
        stop == self.levels.len() && residue.is_identity()
    }

    /// Orbit partition of `0..degree`, each orbit sorted, orbits ordered by
    /// their smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// The orbit containing `v`, sorted.
    pub fn orbit_of(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[v] = true;
        let mut stack = vec![v];
        let mut out = vec![v];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Every element exactly once, as products of coset representatives.
    /// Refuses when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        match order.to_u64() {
            Some(o) if o <= cap => {}
            _ => {
                return Err(Error::EnumerationCap {
                    order: order.to_string(),
                    cap,
                })
            }
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = level.rep(p).unwrap();
                next.extend(out.iter().map(|g| u.compose_unchecked(g)));
            }
            out = next;
        }
        Ok(out)
    }

    /// Subgroup of elements fixing every point of `set`.
    pub fn pointwise_stabilizer(&self, set: &[usize]) -> Result<PermutationGroup> {
        if let Some(&v) = set.iter().find(|&&v| v >= self.degree) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.degree });
        }
        if set.is_empty() || self.is_trivial() {
            return Ok(self.clone());
        }
        let rebased = PermutationGroup::with_base_prefix(self.degree, self.strong.clone(), set)?;
        let mut prefix: Vec<usize> = Vec::new();
        for &p in set {
            if !prefix.contains(&p) {
                prefix.push(p);
            }
        }
        let depth = prefix.len();
        let strong: Vec<Permutation> = rebased
            .strong
            .iter()
            .filter(|g| prefix.iter().all(|&b| g.apply(b) == b))
            .cloned()
            .collect();
        let levels = rebased.levels[depth.min(rebased.levels.len())..].to_vec();
        Ok(PermutationGroup {
            degree: self.degree,
            generators: strong.clone(),
            strong,
            levels,
        })
    }

    /// Subgroup mapping `set` onto itself.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermutationGroup> {
        let mut labels = vec![0u32; self.degree];
        for &v in set {
            if v >= self.degree {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.degree });
            }
            labels[v] = 1;
        }
        Ok(self.label_stabilizer(&labels))
    }

    /// Subgroup of elements `g` with `labels[g(v)] == labels[v]` for all `v`.
    pub fn label_stabilizer(&self, labels: &[u32]) -> PermutationGroup {
        debug_assert_eq!(labels.len(), self.degree);
        let mut found: Vec<Permutation> = Vec::new();
        let search = LabelSearch { group: self, labels };
        for i in (0..self.levels.len()).rev() {
            let level = &self.levels[i];
            let base = level.base;
            for &gamma in &level.orbit[1..] {
                if labels[gamma] != labels[base] {
                    continue;
                }
                if orbits_of(self.degree, &found)
                    .iter()
                    .any(|o| o.contains(&base) && o.contains(&gamma))
                {
                    continue;
                }
                if let Some(g) = search.find_in_coset(i, gamma) {
                    found.push(g);
                }
            }
        }
        PermutationGroup::new(self.degree, found).expect("degrees agree")
    }

    /// Some non-identity element preserving `labels`, if one exists.
    pub fn find_label_preserver(&self, labels: &[u32]) -> Option<Permutation> {
        debug_assert_eq!(labels.len(), self.degree);
        let search = LabelSearch { group: self, labels };
        for i in (0..self.levels.len()).rev() {
            let level = &self.levels[i];
            for &gamma in &level.orbit[1..] {
                if labels[gamma] != labels[level.base] {
                    continue;
                }
                if let Some(g) = search.find_in_coset(i, gamma) {
                    return Some(g);
                }
            }
        }
        None
    }
}

struct LabelSearch<'a> {
    group: &'a PermutationGroup,
    labels: &'a [u32],
}

impl LabelSearch<'_> {
    /// Searches the coset of elements fixing `base[..level]` and sending
    /// `base[level]` to `gamma` for one that preserves the labels.
    fn find_in_coset(&self, level: usize, gamma: usize) -> Option<Permutation> {
        let prefix = self.group.levels[level].rep(gamma).unwrap().clone();
        self.descend(level + 1, prefix)
    }

    fn descend(&self, depth: usize, prefix: Permutation) -> Option<Permutation> {
        let levels = &self.group.levels;
        if depth == levels.len() {
            return prefix.preserves_labels(self.labels).then_some(prefix);
        }
        let level = &levels[depth];
        let want = self.labels[level.base];
        for &p in &level.orbit {
            if self.labels[prefix.apply(p)] != want {
                continue;
            }
            let next = prefix.compose_unchecked(level.rep(p).unwrap());
            if let Some(g) = self.descend(depth + 1, next) {
                return Some(g);
            }
        }
        None
    }
}

/// Orbit partition of the group generated by `gens` (union-find over images).
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for v in 0..degree {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g.apply(v)));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); degree];
    for v in 0..degree {
        let r = find(&mut parent, v);
        buckets[r].push(v);
    }
    buckets.into_iter().filter(|b| !b.is_empty()).collect()
}

struct Chain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl Chain {
    fn level_gens(&self, i: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|g| self.base[..i].iter().all(|&b| g.apply(b) == b))
            .collect()
    }

    fn rebuild_level(&mut self, i: usize) {
        let level = Level::build(self.degree, self.base[i], &self.level_gens(i));
        if i < self.levels.len() {
            self.levels[i] = level;
        } else {
            self.levels.push(level);
        }
    }

    fn strip(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for k in start..self.levels.len() {
            let beta = g.apply(self.levels[k].base);
            match &self.levels[k].inverse[beta] {
                Some(uinv) => g = uinv.compose_unchecked(&g),
                None => return (g, k),
            }
        }
        (g, self.levels.len())
    }

    /// First Schreier generator at level `i` that does not sift, with the
    /// level where sifting stopped.
    fn failing_schreier_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        let gens = self.level_gens(i);
        for &beta in &level.orbit {
            let u_beta = level.rep(beta).unwrap();
            for s in &gens {
                let gamma = s.apply(beta);
                let h = level.inverse[gamma]
                    .as_ref()
                    .unwrap()
                    .compose_unchecked(&s.compose_unchecked(u_beta));
                if h.is_identity() {
                    continue;
                }
                let (residue, stop) = self.strip(h, i + 1);
                if stop < self.levels.len() || !residue.is_identity() {
                    return Some((residue, stop));
                }
            }
        }
        None
    }

    fn schreier_sims(&mut self) {
        for i in 0..self.base.len() {
            self.rebuild_level(i);
        }
        let mut i = self.levels.len();
        while i > 0 {
            let cur = i - 1;
            match self.failing_schreier_generator(cur) {
                None => i -= 1,
                Some((h, stop)) => {
                    if stop == self.levels.len() {
                        let moved = h.first_moved().expect("non-identity residue");
                        self.base.push(moved);
                    }
                    self.strong.push(h);
                    for l in cur + 1..=stop {
                        self.rebuild_level(l);
                    }
                    i = stop + 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    /// Closure by breadth-first multiplication; independent of the chain.
    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(degree);
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for s in gens {
                let h = s.compose(&g).unwrap();
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        seen
    }

    fn dihedral5() -> Vec<Permutation> {
        vec![
            cyc(5, &[&[0, 1, 2, 3, 4]]),
            cyc(5, &[&[1, 4], &[2, 3]]),
        ]
    }

    #[test]
    fn dihedral_order_ten() {
        let g = PermutationGroup::new(5, dihedral5()).unwrap();
        assert_eq!(g.order_u64(), Some(10));
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermutationGroup::new(6, vec![]).unwrap();
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.is_trivial());
        assert_eq!(g.orbits().len(), 6);
        assert_eq!(g.elements(10).unwrap(), vec![Permutation::identity(6)]);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let r = PermutationGroup::new(4, vec![Permutation::identity(5)]);
        assert!(matches!(r, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn product_of_symmetric_groups() {
        // Sym({1,2,3}) x Sym({4,5}) with 0 fixed
        let gens = vec![
            cyc(6, &[&[1, 2]]),
            cyc(6, &[&[1, 2, 3]]),
            cyc(6, &[&[4, 5]]),
        ];
        let g = PermutationGroup::new(6, gens).unwrap();
        assert_eq!(g.order_u64(), Some(12));
        assert_eq!(g.orbits(), vec![vec![0], vec![1, 2, 3], vec![4, 5]]);
    }

    #[test]
    fn chain_order_matches_closure() {
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (5, dihedral5()),
            (6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])]),
            (7, vec![cyc(7, &[&[0, 1, 2]]), cyc(7, &[&[2, 3, 4]]), cyc(7, &[&[5, 6]])]),
            (8, vec![cyc(8, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]), cyc(8, &[&[0, 2, 4, 6]])]),
        ];
        for (n, gens) in cases {
            let g = PermutationGroup::new(n, gens.clone()).unwrap();
            let all = closure(n, &gens);
            assert_eq!(g.order_u64(), Some(all.len() as u64));
            let elems = g.elements(DEFAULT_ENUMERATION_CAP).unwrap();
            let as_set: HashSet<_> = elems.iter().cloned().collect();
            assert_eq!(as_set.len(), elems.len());
            assert_eq!(as_set, all);
            for e in &all {
                assert!(g.contains(e));
            }
        }
    }

    #[test]
    fn membership_rejects_non_members() {
        let g = PermutationGroup::new(5, dihedral5()).unwrap();
        assert!(!g.contains(&cyc(5, &[&[0, 1]])));
        assert!(!g.contains(&Permutation::identity(4)));
    }

    #[test]
    fn elements_refuse_over_cap() {
        let g = PermutationGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])])
            .unwrap();
        assert!(matches!(g.elements(719), Err(Error::EnumerationCap { .. })));
        assert_eq!(g.elements(720).unwrap().len(), 720);
    }

    #[test]
    fn stabilizers_of_symmetric_group() {
        let s5 = PermutationGroup::new(6, vec![cyc(6, &[&[1, 2, 3, 4, 5]]), cyc(6, &[&[1, 2]])])
            .unwrap();
        assert_eq!(s5.order_u64(), Some(120));
        let set = s5.setwise_stabilizer(&[1, 2, 3]).unwrap();
        assert_eq!(set.order_u64(), Some(12));
        let pw = s5.pointwise_stabilizer(&[1, 2, 3, 4]).unwrap();
        assert!(pw.is_trivial());
        let pw = s5.pointwise_stabilizer(&[1, 2]).unwrap();
        assert_eq!(pw.order_u64(), Some(6));
        assert_eq!(s5.pointwise_stabilizer(&[]).unwrap().order_u64(), Some(120));
    }

    #[test]
    fn label_preserver_search() {
        let d5 = PermutationGroup::new(5, dihedral5()).unwrap();
        assert!(d5.find_label_preserver(&[1, 2, 0, 0, 0]).is_none());
        let g = d5.find_label_preserver(&[1, 0, 0, 0, 0]).unwrap();
        assert!(!g.is_identity());
        assert_eq!(g.apply(0), 0);
        assert_eq!(d5.label_stabilizer(&[0; 5]).order_u64(), Some(10));
    }
}
