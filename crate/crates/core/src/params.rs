//! Exact symmetry-breaking parameters by exhaustive search.
//!
//! All searches run against the automorphism group computed once per graph.
//! A `d`-coloring is distinguishing iff no non-identity automorphism preserves
//! its classes. Searches for a largest color class go through the complement
//! `S` of that class: the coloring is distinguishing iff `S` is a determining
//! set and the induced `(d-1)`-coloring of `S` leaves no non-identity element
//! of the setwise stabilizer of `S` intact. Complements are enumerated by
//! increasing size, in lexicographic order, with the smallest element
//! restricted to orbit minima. Colorings of `S` are enumerated up to renaming
//! of colors.
//!
//! Colorings do not have to use every color, except for the cost number,
//! which asks for all `d` classes to be nonempty.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::autsearch::automorphism_group;
use crate::enumerate::{binomial, for_each_combination, for_each_rgs, rgs_count, stirling2};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// Default cap on the number of candidates a single search may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Total vertex coloring with colors `0..d`; not every color has to occur.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    colors: Vec<usize>,
    d: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, d: usize) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= d) {
            return Err(Error::Domain(format!("color {c} is not below d = {d}")));
        }
        Ok(Self { colors, d })
    }

    /// Uses the smallest `d` that fits the given colors.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let d = colors.iter().copied().max().map_or(1, |c| c + 1);
        Self { colors, d }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color classes indexed by color (possibly empty).
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.d];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    fn labels(&self) -> Vec<u32> {
        self.colors.iter().map(|&c| c as u32).collect()
    }
}

/// Search knobs shared by every exhaustive computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Upper bound on candidates a search may be about to visit; checked
    /// level by level before the level is searched.
    pub budget: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            jobs: None,
        }
    }
}

struct Budget {
    limit: u64,
    spent: u128,
    what: String,
}

impl Budget {
    fn new(limit: u64, what: impl Into<String>) -> Self {
        Self {
            limit,
            spent: 0,
            what: what.into(),
        }
    }

    fn charge(&mut self, amount: u128) -> Result<()> {
        self.spent = self.spent.saturating_add(amount);
        if self.spent > self.limit as u128 {
            return Err(Error::BudgetExceeded {
                what: self.what.clone(),
                budget: self.limit,
            });
        }
        Ok(())
    }
}

/// A largest color class and the coloring realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxClass {
    /// `R^d`: the size of the largest class.
    pub size: usize,
    /// Witness; the largest class carries color 0.
    pub coloring: Coloring,
}

/// Parameter searches for one graph.
pub struct Analyzer<'g> {
    graph: &'g Graph,
    group: PermutationGroup,
    orbit_min: Vec<bool>,
    config: SearchConfig,
    pool: Option<rayon::ThreadPool>,
}

impl<'g> Analyzer<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self::with_config(graph, SearchConfig::default())
    }

    pub fn with_config(graph: &'g Graph, config: SearchConfig) -> Self {
        let group = automorphism_group(graph, None);
        let mut orbit_min = vec![false; graph.vertex_count()];
        for orbit in group.orbits() {
            orbit_min[orbit[0]] = true;
        }
        let pool = config.jobs.map(|j| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .expect("thread pool")
        });
        Self {
            graph,
            group,
            orbit_min,
            config,
            pool,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// `Aut(G)`.
    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    fn check_set(&self, set: &[usize]) -> Result<()> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &v in set {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Domain(format!("vertex {v} listed twice")));
            }
        }
        Ok(())
    }

    fn check_coloring(&self, c: &Coloring) -> Result<()> {
        if c.len() != self.n() {
            return Err(Error::Domain(format!(
                "coloring has {} entries for {} vertices",
                c.len(),
                self.n()
            )));
        }
        Ok(())
    }

    /// A non-identity automorphism preserving every class of `c`, if any.
    pub fn violating_automorphism(&self, c: &Coloring) -> Result<Option<Permutation>> {
        self.check_coloring(c)?;
        Ok(self.group.find_label_preserver(&c.labels()))
    }

    pub fn is_distinguishing(&self, c: &Coloring) -> Result<bool> {
        Ok(self.violating_automorphism(c)?.is_none())
    }

    /// Labels giving every vertex of `set` its own value.
    fn pinning_labels(&self, set: &[usize]) -> Vec<u32> {
        let mut labels = vec![0u32; self.n()];
        for (k, &v) in set.iter().enumerate() {
            labels[v] = k as u32 + 1;
        }
        labels
    }

    fn determines(&self, set: &[usize]) -> bool {
        self.group.find_label_preserver(&self.pinning_labels(set)).is_none()
    }

    pub fn is_determining_set(&self, set: &[usize]) -> Result<bool> {
        self.check_set(set)?;
        Ok(self.determines(set))
    }

    /// Vertices allowed as the smallest element of a candidate subset.
    fn first_elements(&self, size: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&v| self.orbit_min[v] && v + size <= self.n())
            .collect()
    }

    /// Lexicographically least `size`-subset accepted by `probe`, among
    /// subsets whose smallest element is an orbit minimum.
    fn search_subsets<T: Send>(
        &self,
        size: usize,
        probe: impl Fn(&[usize]) -> Option<T> + Sync,
    ) -> Option<T> {
        if size == 0 {
            return probe(&[]);
        }
        let firsts = self.first_elements(size);
        let n = self.n();
        self.install(|| {
            firsts.par_iter().find_map_first(|&f| {
                let pool: Vec<usize> = (f + 1..n).collect();
                let mut set = vec![f; size];
                let flow = for_each_combination(&pool, size - 1, |rest| {
                    set[1..].copy_from_slice(rest);
                    match probe(&set) {
                        Some(t) => ControlFlow::Break(t),
                        None => ControlFlow::Continue(()),
                    }
                });
                match flow {
                    ControlFlow::Break(t) => Some(t),
                    ControlFlow::Continue(()) => None,
                }
            })
        })
    }

    /// `det(G)` with the lexicographically least minimum determining set.
    pub fn determining_number(&self) -> Result<(usize, Vec<usize>)> {
        let mut budget = Budget::new(self.config.budget, "det");
        for size in 0..=self.n() {
            budget.charge(binomial(self.n(), size))?;
            let found = self.search_subsets(size, |set| self.determines(set).then(|| set.to_vec()));
            if let Some(set) = found {
                return Ok((size, set));
            }
        }
        Err(Error::Internal("the full vertex set is always determining".into()))
    }

    /// Colors `complement` with at most `colors` colors so that, together
    /// with one more class on the rest of the graph, the coloring is
    /// distinguishing. Returns the full coloring (rest = color 0).
    fn color_complement(&self, complement: &[usize], colors: usize, d: usize) -> Option<Coloring> {
        if !self.determines(complement) {
            return None;
        }
        let n = self.n();
        let mut labels = vec![0u32; n];
        for &v in complement {
            labels[v] = 1;
        }
        let stab = self.group.label_stabilizer(&labels);
        let flow = for_each_rgs(complement.len(), colors, false, |rgs| {
            for (&v, &c) in complement.iter().zip(rgs) {
                labels[v] = c as u32 + 1;
            }
            if stab.find_label_preserver(&labels).is_none() {
                let mut out = vec![0usize; n];
                for (&v, &c) in complement.iter().zip(rgs) {
                    out[v] = c + 1;
                }
                ControlFlow::Break(Coloring { colors: out, d })
            } else {
                ControlFlow::Continue(())
            }
        });
        match flow {
            ControlFlow::Break(c) => Some(c),
            ControlFlow::Continue(()) => None,
        }
    }

    /// `R^d(G)`: the largest color class over all `d`-distinguishing colorings.
    pub fn max_color_class(&self, d: usize) -> Result<MaxClass> {
        if d == 0 {
            return Err(Error::Domain("d must be at least 1".into()));
        }
        let n = self.n();
        let mut budget = Budget::new(self.config.budget, format!("R^{d}"));
        for size in 0..=n {
            if size > 0 && d == 1 {
                break;
            }
            budget.charge(binomial(n, size).saturating_mul(rgs_count(size, d - 1)))?;
            let found = self.search_subsets(size, |set| self.color_complement(set, d - 1, d));
            if let Some(coloring) = found {
                return Ok(MaxClass {
                    size: n - size,
                    coloring,
                });
            }
        }
        Err(Error::NotDistinguishable(d))
    }

    /// `ρ^d(G) = |V| - R^d(G)`, with the witness coloring.
    pub fn paint_cost(&self, d: usize) -> Result<(usize, Coloring)> {
        let mc = self.max_color_class(d)?;
        Ok((self.n() - mc.size, mc.coloring))
    }

    /// `dist(G)` and a distinguishing coloring with a largest possible class.
    pub fn distinguishing_number(&self) -> Result<(usize, MaxClass)> {
        for d in 1..=self.n().max(1) {
            match self.max_color_class(d) {
                Ok(mc) => return Ok((d, mc)),
                Err(Error::NotDistinguishable(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::Internal("all-distinct colors always distinguish".into()))
    }

    /// `ρ_d(G)`: smallest class size over `d`-distinguishing colorings that
    /// use all `d` colors. The witness puts the small class on color 0.
    pub fn cost_number(&self, d: usize) -> Result<(usize, Coloring)> {
        let n = self.n();
        if d == 0 || d > n {
            return Err(Error::Domain(format!(
                "cost number needs 1 <= d <= |V| = {n}, got {d}"
            )));
        }
        let mut budget = Budget::new(self.config.budget, format!("rho_{d}"));
        for size in 1..=n - (d - 1) {
            if d == 1 && size < n {
                continue;
            }
            budget.charge(binomial(n, size).saturating_mul(stirling2(n - size, d - 1)))?;
            let found = self.search_subsets(size, |class| {
                let mut in_class = vec![false; n];
                for &v in class {
                    in_class[v] = true;
                }
                let rest: Vec<usize> = (0..n).filter(|&v| !in_class[v]).collect();
                if !self.determines(&rest) {
                    return None;
                }
                let mut labels: Vec<u32> = vec![0; n];
                for &v in &rest {
                    labels[v] = 1;
                }
                let stab = self.group.label_stabilizer(&labels);
                let flow = for_each_rgs(rest.len(), d - 1, true, |rgs| {
                    for (&v, &c) in rest.iter().zip(rgs) {
                        labels[v] = c as u32 + 1;
                    }
                    if stab.find_label_preserver(&labels).is_none() {
                        ControlFlow::Break(labels.iter().map(|&l| l as usize).collect::<Vec<_>>())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                match flow {
                    ControlFlow::Break(colors) => Some(Coloring { colors, d }),
                    ControlFlow::Continue(()) => None,
                }
            });
            if let Some(c) = found {
                return Ok((size, c));
            }
        }
        Err(Error::NotDistinguishable(d))
    }

    /// `ρ^u(G) = ρ^{dist(G)}(G)`.
    pub fn upper_paint_cost(&self) -> Result<usize> {
        let (_, mc) = self.distinguishing_number()?;
        Ok(self.n() - mc.size)
    }

    /// `ρ^ℓ(G) = det(G)`.
    pub fn lower_paint_cost(&self) -> Result<usize> {
        Ok(self.determining_number()?.0)
    }

    /// Least `d >= dist(G)` with `ρ^d(G) = det(G)`; the search stops at
    /// `det(G) + 1`, where equality always holds.
    pub fn frugal_distinguishing_number(&self) -> Result<usize> {
        let (dist, mc) = self.distinguishing_number()?;
        let (det, _) = self.determining_number()?;
        if self.n() - mc.size == det {
            return Ok(dist);
        }
        for d in dist + 1..=det + 1 {
            if self.paint_cost(d)?.0 == det {
                return Ok(d);
            }
        }
        Err(Error::Internal(format!("rho^{} exceeds det = {det}", det + 1)))
    }

    /// `setstab(S)`.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermutationGroup> {
        self.check_set(set)?;
        self.group.setwise_stabilizer(set)
    }

    /// True iff every element of `setstab(S)` preserving the classes of
    /// `colors` (given in the order of `set`) fixes `S` pointwise.
    pub fn is_set_distinguishing(&self, set: &[usize], colors: &[usize]) -> Result<bool> {
        self.check_set(set)?;
        if colors.len() != set.len() {
            return Err(Error::Domain(format!(
                "{} colors for a set of {} vertices",
                colors.len(),
                set.len()
            )));
        }
        let mut labels = vec![0u32; self.n()];
        for (&v, &c) in set.iter().zip(colors) {
            labels[v] = c as u32 + 1;
        }
        Ok(self.set_distinguished_by(set, &labels))
    }

    fn set_distinguished_by(&self, set: &[usize], labels: &[u32]) -> bool {
        self.group
            .label_stabilizer(labels)
            .generators()
            .iter()
            .all(|g| set.iter().all(|&v| g.apply(v) == v))
    }

    /// Least number of colors admitting a set-distinguishing coloring of
    /// `set`, with that coloring (in the order of `set`).
    pub fn set_distinguishing_number(&self, set: &[usize]) -> Result<(usize, Vec<usize>)> {
        self.check_set(set)?;
        if set.is_empty() {
            return Err(Error::Domain("set must be nonempty".into()));
        }
        let mut budget = Budget::new(self.config.budget, "set distinguishing number");
        let mut labels = vec![0u32; self.n()];
        for k in 1..=set.len() {
            budget.charge(stirling2(set.len(), k))?;
            let flow = for_each_rgs(set.len(), k, true, |rgs| {
                for (&v, &c) in set.iter().zip(rgs) {
                    labels[v] = c as u32 + 1;
                }
                if self.set_distinguished_by(set, &labels) {
                    ControlFlow::Break(rgs.to_vec())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if let ControlFlow::Break(colors) = flow {
                return Ok((k, colors));
            }
        }
        Err(Error::Internal("distinct colors always distinguish a set".into()))
    }

    /// Every parameter with witnesses. Searches that hit the budget leave
    /// their fields empty and are listed under `skipped`.
    pub fn full_report(&self) -> Result<ParamReport> {
        let g = self.graph;
        let mut report = ParamReport {
            schema_version: REPORT_SCHEMA_VERSION,
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            group_order: self.group.order().to_string(),
            dist: None,
            det: None,
            paint_cost: BTreeMap::new(),
            upper_paint: None,
            lower_paint: None,
            fdist: None,
            witnesses: Witnesses {
                distinguishing: None,
                determining_set: None,
                paint_cost: BTreeMap::new(),
                labels: g.labels().map(<[String]>::to_vec),
            },
            skipped: Vec::new(),
        };
        let skip = |report: &mut ParamReport, e: Error, fields: &[&str]| -> Result<()> {
            match e {
                Error::BudgetExceeded { .. } => {
                    report.skipped.extend(fields.iter().map(|f| f.to_string()));
                    Ok(())
                }
                other => Err(other),
            }
        };

        let det = match self.determining_number() {
            Ok((det, set)) => {
                if !self.verify_determining(&set)? {
                    return Err(Error::Internal(format!("witness {set:?} is not determining")));
                }
                report.det = Some(det);
                report.lower_paint = Some(det);
                report.witnesses.determining_set = Some(set);
                Some(det)
            }
            Err(e) => {
                skip(&mut report, e, &["det", "lower_paint", "fdist"])?;
                None
            }
        };

        let dist = match self.distinguishing_number() {
            Ok((dist, mc)) => {
                self.verify_distinguishing(&mc.coloring)?;
                report.dist = Some(dist);
                report.upper_paint = Some(g.vertex_count() - mc.size);
                report.paint_cost.insert(dist, g.vertex_count() - mc.size);
                report.witnesses.distinguishing = Some(mc.coloring.colors.clone());
                report.witnesses.paint_cost.insert(dist, mc.coloring.colors);
                Some(dist)
            }
            Err(e) => {
                skip(&mut report, e, &["dist", "upper_paint", "paint_cost", "fdist"])?;
                None
            }
        };

        if let (Some(dist), Some(det)) = (dist, det) {
            let mut d = dist;
            loop {
                let cost = report.paint_cost[&d];
                if cost == det {
                    report.fdist = Some(d);
                    break;
                }
                d += 1;
                if d > det + 1 {
                    return Err(Error::Internal(format!("rho^{} exceeds det = {det}", det + 1)));
                }
                match self.paint_cost(d) {
                    Ok((cost, c)) => {
                        self.verify_distinguishing(&c)?;
                        report.paint_cost.insert(d, cost);
                        report.witnesses.paint_cost.insert(d, c.colors);
                    }
                    Err(e) => {
                        skip(&mut report, e, &["fdist"])?;
                        break;
                    }
                }
            }
        }
        Ok(report)
    }

    /// Re-checks a witness through an independent automorphism search.
    fn verify_distinguishing(&self, c: &Coloring) -> Result<()> {
        if automorphism_group(self.graph, Some(&c.colors)).is_trivial() {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "witness {:?} is not distinguishing",
                c.colors
            )))
        }
    }

    fn verify_determining(&self, set: &[usize]) -> Result<bool> {
        Ok(self.group.pointwise_stabilizer(set)?.is_trivial())
    }
}

/// Witness colorings and sets backing a [`ParamReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// Coloring realizing `dist` (with a largest possible class on color 0).
    pub distinguishing: Option<Vec<usize>>,
    pub determining_set: Option<Vec<usize>>,
    /// Optimal coloring for each computed `ρ^d`, keyed by `d`.
    pub paint_cost: BTreeMap<usize, Vec<usize>>,
    /// Vertex labels (book or cube coordinates) echoed for reading the
    /// colorings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Every parameter of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamReport {
    pub schema_version: u32,
    pub vertices: usize,
    pub edges: usize,
    pub group_order: String,
    pub dist: Option<usize>,
    pub det: Option<usize>,
    /// `ρ^d` for `d` from `dist` up to `fdist`.
    pub paint_cost: BTreeMap<usize, usize>,
    pub upper_paint: Option<usize>,
    pub lower_paint: Option<usize>,
    pub fdist: Option<usize>,
    pub witnesses: Witnesses,
    pub skipped: Vec<String>,
}

impl ParamReport {
    pub fn is_complete(&self) -> bool {
        self.skipped.is_empty()
    }

    pub fn without_witnesses(mut self) -> Self {
        self.witnesses = Witnesses {
            distinguishing: None,
            determining_set: None,
            paint_cost: BTreeMap::new(),
            labels: None,
        };
        self
    }
}

/// True iff only the identity automorphism preserves the classes of `c`.
/// Runs a fresh colored automorphism search.
pub fn is_distinguishing(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.len() != g.vertex_count() {
        return Err(Error::Domain("coloring must cover every vertex".into()));
    }
    Ok(automorphism_group(g, Some(c.colors())).is_trivial())
}

pub fn distinguishing_number(g: &Graph) -> Result<usize> {
    Ok(Analyzer::new(g).distinguishing_number()?.0)
}

pub fn determining_number(g: &Graph) -> Result<(usize, Vec<usize>)> {
    Analyzer::new(g).determining_number()
}

pub fn is_determining_set(g: &Graph, set: &[usize]) -> Result<bool> {
    Analyzer::new(g).is_determining_set(set)
}

pub fn paint_cost(g: &Graph, d: usize) -> Result<usize> {
    Ok(Analyzer::new(g).paint_cost(d)?.0)
}

pub fn max_color_class(g: &Graph, d: usize) -> Result<MaxClass> {
    Analyzer::new(g).max_color_class(d)
}

pub fn cost_number(g: &Graph, d: usize) -> Result<usize> {
    Ok(Analyzer::new(g).cost_number(d)?.0)
}

pub fn frugal_distinguishing_number(g: &Graph) -> Result<usize> {
    Analyzer::new(g).frugal_distinguishing_number()
}

pub fn full_report(g: &Graph) -> Result<ParamReport> {
    Analyzer::new(g).full_report()
}
