//! Closed-form parameter values for book graphs `B(m,n)` and for products
//! `K_{2^m} □ H` with `H` asymmetric.
//!
//! Book-graph notation: with `d` colors and red the color whose use is
//! maximized, `n_j` counts the path-colorings with at most `j` non-red
//! vertices and `N_j` counts the red vertices across them:
//!
//! ```text
//! n_j = sum_{i=0..=j} C(m-2, i) (d-1)^i
//! N_j = sum_{i=0..=j} (m-2-i) C(m-2, i) (d-1)^i
//! ```
//!
//! Everything that can outgrow 64 bits is computed in [`BigUint`].

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::autsearch::is_asymmetric;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::Coloring;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn check_book(m: u32, n: u64) -> Result<()> {
    if m < 3 {
        return Err(Error::Domain(format!("book pages need m >= 3, got {m}")));
    }
    if n < 2 {
        return Err(Error::Domain(format!(
            "book graphs need n >= 2 pages, got {n} (B(m,1) is a cycle)"
        )));
    }
    Ok(())
}

/// `|V(B(m,n))| = 2 + n(m-2)`.
pub fn book_vertices(m: u32, n: u64) -> BigUint {
    big(2) + big(n) * big(m.saturating_sub(2) as u64)
}

pub fn book_det(m: u32, n: u64) -> Result<u64> {
    check_book(m, n)?;
    Ok(if m == 3 { n } else { n - 1 })
}

/// Least `k` with `k^e >= n`, by binary search.
fn ceil_root(n: u64, e: u32) -> u64 {
    let target = big(n);
    let (mut lo, mut hi) = (1u64, n.max(1));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if big(mid).pow(e) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// The `k` with `(k-1)^{m-2} < n <= k^{m-2}`; `n` itself when `m = 3`.
pub fn book_dist(m: u32, n: u64) -> Result<u64> {
    check_book(m, n)?;
    Ok(if m == 3 { n } else { ceil_root(n, m - 2) })
}

fn check_j(m: u32, d: u64, j: u32) -> Result<()> {
    if m < 3 {
        return Err(Error::Domain(format!("book pages need m >= 3, got {m}")));
    }
    if d == 0 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    if j > m - 2 {
        return Err(Error::Domain(format!("j = {j} outside 0..={}", m - 2)));
    }
    Ok(())
}

/// Terms `C(m-2, i) (d-1)^i` for `i = 0..=j`.
fn path_coloring_counts(m: u32, d: u64, j: u32) -> Vec<BigUint> {
    let len = (m - 2) as u64;
    let mut out = Vec::with_capacity(j as usize + 1);
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    for i in 0..=j as u64 {
        out.push(&binom * &power);
        binom = binom * big(len - i) / big(i + 1);
        power *= big(d - 1);
    }
    out
}

/// `n_j`: number of `d`-path-colorings with at most `j` non-red vertices.
pub fn book_nj(m: u32, d: u64, j: u32) -> Result<BigUint> {
    check_j(m, d, j)?;
    Ok(path_coloring_counts(m, d, j).into_iter().sum())
}

/// `N_j`: red vertices used by those `n_j` path-colorings.
#[allow(non_snake_case)]
pub fn book_Nj(m: u32, d: u64, j: u32) -> Result<BigUint> {
    check_j(m, d, j)?;
    Ok(path_coloring_counts(m, d, j)
        .into_iter()
        .enumerate()
        .map(|(i, c)| c * big((m - 2) as u64 - i as u64))
        .sum())
}

/// A closed-form paint cost: either pinned down or known to lie in
/// `[lower, upper_exclusive)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PaintCost {
    Exact {
        #[serde(serialize_with = "serialize_big")]
        value: BigUint,
    },
    Interval {
        #[serde(serialize_with = "serialize_big")]
        lower: BigUint,
        #[serde(serialize_with = "serialize_big")]
        upper_exclusive: BigUint,
    },
}

impl PaintCost {
    fn exact(value: BigUint) -> Self {
        PaintCost::Exact { value }
    }

    pub fn exact_value(&self) -> Option<&BigUint> {
        match self {
            PaintCost::Exact { value } => Some(value),
            PaintCost::Interval { .. } => None,
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        let x = big(x);
        match self {
            PaintCost::Exact { value } => *value == x,
            PaintCost::Interval {
                lower,
                upper_exclusive,
            } => *lower <= x && x < *upper_exclusive,
        }
    }
}

impl std::fmt::Display for PaintCost {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PaintCost::Exact { value } => write!(f, "{value}"),
            PaintCost::Interval {
                lower,
                upper_exclusive,
            } => write!(f, "[{lower},{upper_exclusive})"),
        }
    }
}

/// Smallest `j` with `n <= n_j`. The first `j` reaching `n` is the one the
/// greedy red-maximizing construction stops at.
fn small_n_level(m: u32, d: u64, n: u64) -> u32 {
    let target = big(n);
    let mut acc = BigUint::zero();
    for (j, term) in path_coloring_counts(m, d, m - 2).into_iter().enumerate() {
        acc += term;
        if acc >= target {
            return j as u32;
        }
    }
    m - 2
}

/// `a - b`, or 0 when `b > a`. The small-n lower bound counts red vertices
/// over all `n_j` path-colorings and goes negative when `n` is far below
/// `n_j`.
fn floor_sub(a: &BigUint, b: BigUint) -> BigUint {
    if b > *a {
        BigUint::zero()
    } else {
        a - b
    }
}

/// `ρ^d(B(m,n))` for `d >= dist(B(m,n))`.
///
/// For `n >= d^{m-2} - (d-1)^{m-2}` the value is exact. Below that, it is
/// exact when `n` equals some `n_j` and an interval otherwise. For `m = 3`
/// every `d >= n` gives `n`.
pub fn book_paint_cost(m: u32, n: u64, d: u64) -> Result<PaintCost> {
    let dist = book_dist(m, n)?;
    if d < dist {
        return Err(Error::NotDistinguishable(d as usize));
    }
    if m == 3 {
        return Ok(PaintCost::exact(big(n)));
    }
    let e = m - 2;
    let full = big(d).pow(e);
    let threshold = &full - big(d - 1).pow(e);
    let nb = big(n);
    let pages = big(e as u64);
    if nb >= threshold {
        // nb <= full because d >= dist
        let base = &pages * (&nb - big(d).pow(e - 1));
        return Ok(PaintCost::exact(if nb == threshold || nb == full {
            base + 1u32
        } else {
            base
        }));
    }
    let j = small_n_level(m, d, n);
    let vertices = book_vertices(m, n);
    let lower = floor_sub(&vertices, book_Nj(m, d, j)? + 1u32);
    if book_nj(m, d, j)? == nb {
        return Ok(PaintCost::exact(lower));
    }
    let upper_exclusive = &vertices - book_Nj(m, d, j - 1)? - 1u32;
    Ok(PaintCost::Interval {
        lower,
        upper_exclusive,
    })
}

/// Which published bound a value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// `(m-2)(n-k^{m-3})+1 <= ρ^u < (m-2)(n-(k-1)^{m-3})+1`.
    Broad,
    /// `|V|-N^k_j-1 <= ρ^u < |V|-N^k_{j-1}-1`.
    Refined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    #[serde(serialize_with = "serialize_big")]
    pub value: BigUint,
    pub source: BoundSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperPaintBounds {
    pub lower: Bound,
    pub upper_exclusive: Bound,
    pub discrepancies: Vec<Discrepancy>,
}

/// Corollary bounds on `ρ^u(B(m,n))`, `m >= 4`, keeping the tighter side of
/// each. The refined pair is used only while `n <= n^k_{m-3}`, where it is
/// non-degenerate; ties go to the broad bound.
pub fn book_upper_paint_bounds(m: u32, n: u64) -> Result<UpperPaintBounds> {
    check_book(m, n)?;
    if m == 3 {
        return Err(Error::Domain("corollary bounds are stated for m >= 4".into()));
    }
    let k = book_dist(m, n)?;
    let e = m - 2;
    let nb = big(n);
    let pages = big(e as u64);
    let mut lower = Bound {
        value: floor_sub(&(&pages * &nb + 1u32), &pages * big(k).pow(e - 1)),
        source: BoundSource::Broad,
    };
    let mut upper = Bound {
        value: &pages * (&nb - big(k - 1).pow(e - 1)) + 1u32,
        source: BoundSource::Broad,
    };
    let j = small_n_level(m, k, n);
    if j >= 1 && j <= m - 3 {
        let vertices = book_vertices(m, n);
        let lo = floor_sub(&vertices, book_Nj(m, k, j)? + 1u32);
        let hi = &vertices - book_Nj(m, k, j - 1)? - 1u32;
        if lo > lower.value {
            lower = Bound {
                value: lo,
                source: BoundSource::Refined,
            };
        }
        if hi < upper.value {
            upper = Bound {
                value: hi,
                source: BoundSource::Refined,
            };
        }
    }
    let mut discrepancies = Vec::new();
    if let PaintCost::Exact { value } = book_paint_cost(m, n, k)? {
        if value < lower.value {
            discrepancies.push(Discrepancy {
                quantity: "upper_paint_lower_bound".into(),
                emitted: lower.value.to_string(),
                paper_value: lower.value.to_string(),
                note: format!(
                    "the broad corollary lower bound exceeds the exact theorem value {value}"
                ),
            });
        }
    }
    Ok(UpperPaintBounds {
        lower,
        upper_exclusive: upper,
        discrepancies,
    })
}

/// `fdist(B(m,n)) = 2 + floor((n-1)/(m-2))`, or `n` when `m = 3`.
pub fn book_fdist(m: u32, n: u64) -> Result<u64> {
    check_book(m, n)?;
    Ok(if m == 3 { n } else { 2 + (n - 1) / (m as u64 - 2) })
}

/// A value whose published worked example disagrees with the theorem it
/// illustrates. The theorem value is emitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub quantity: String,
    pub emitted: String,
    pub paper_value: String,
    pub note: String,
}

/// Discrepancies recorded for `B(m,n)`.
pub fn book_discrepancies(m: u32, n: u64) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    if (m, n) == (8, 703) {
        if let Ok(cost) = book_paint_cost(m, n, 3) {
            out.push(Discrepancy {
                quantity: "upper_paint".into(),
                emitted: cost.to_string(),
                paper_value: "2762".into(),
                note: "theorem value 6*(703-243); both spinal vertices can be red here, \
                       the worked example counts neither"
                    .into(),
            });
        }
        if let Ok(f) = book_fdist(m, n) {
            out.push(Discrepancy {
                quantity: "fdist".into(),
                emitted: f.to_string(),
                paper_value: "118".into(),
                note: "theorem value 2+floor(702/6); the worked example uses 700=116*6+7".into(),
            });
        }
    }
    out
}

/// Every closed-form value for one book graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BookParams {
    pub m: u32,
    pub n: u64,
    #[serde(serialize_with = "serialize_big")]
    pub vertices: BigUint,
    pub dist: u64,
    pub det: u64,
    pub fdist: u64,
    /// `ρ^u = ρ^{dist}`.
    pub upper_paint: PaintCost,
    /// `ρ^ℓ = det`.
    pub lower_paint: u64,
    pub discrepancies: Vec<Discrepancy>,
}

pub fn book_params(m: u32, n: u64) -> Result<BookParams> {
    let dist = book_dist(m, n)?;
    Ok(BookParams {
        m,
        n,
        vertices: book_vertices(m, n),
        dist,
        det: book_det(m, n)?,
        fdist: book_fdist(m, n)?,
        upper_paint: book_paint_cost(m, n, dist)?,
        lower_paint: book_det(m, n)?,
        discrepancies: book_discrepancies(m, n),
    })
}

/// Values for `K_{2^m} □ H` with `H` asymmetric on `m` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductParams {
    pub m: u32,
    #[serde(serialize_with = "serialize_big")]
    pub vertices: BigUint,
    pub dist: u64,
    /// `ρ^2 = m 2^{m-1}`.
    #[serde(serialize_with = "serialize_big")]
    pub paint2: BigUint,
    /// `2^m - 1`.
    #[serde(serialize_with = "serialize_big")]
    pub det: BigUint,
    /// `ceil((2^m - 1)/m) + 1`.
    #[serde(serialize_with = "serialize_big")]
    pub fdist: BigUint,
}

pub fn product_params(m: u32) -> Result<ProductParams> {
    if m == 0 || (2..=5).contains(&m) {
        return Err(Error::Domain(format!("no asymmetric graph on {m} vertices")));
    }
    let q = BigUint::one() << m as usize;
    let det = &q - 1u32;
    let mb = big(m as u64);
    Ok(ProductParams {
        m,
        vertices: &q * &mb,
        dist: 2,
        paint2: &mb * (&q >> 1usize),
        fdist: (&det + &mb - 1u32) / &mb + 1u32,
        det,
    })
}

/// Distinguishing test for a coloring of `K_q □ H` (vertex `(z, h)` at
/// index `z|H| + h`), `H` asymmetric: automorphisms permute whole
/// `H`-fibers, so the coloring distinguishes iff the fiber color patterns
/// are pairwise distinct.
pub fn product_is_distinguishing(q: usize, h: &Graph, c: &Coloring) -> Result<bool> {
    if !is_asymmetric(h) {
        return Err(Error::Domain("fiber graph is not asymmetric".into()));
    }
    let width = h.vertex_count();
    if c.len() != q * width {
        return Err(Error::Domain(format!(
            "coloring has {} entries, K_{q} x H has {}",
            c.len(),
            q * width
        )));
    }
    let mut patterns: Vec<&[usize]> = c.colors().chunks(width.max(1)).collect();
    if width == 0 {
        return Ok(q <= 1);
    }
    patterns.sort_unstable();
    Ok(patterns.windows(2).all(|w| w[0] != w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(v: u64) -> PaintCost {
        PaintCost::exact(big(v))
    }

    #[test]
    fn det_and_dist() {
        assert_eq!(book_det(4, 3).unwrap(), 2);
        assert_eq!(book_det(3, 5).unwrap(), 5);
        assert_eq!(book_det(8, 473).unwrap(), 472);
        assert_eq!(book_dist(8, 473).unwrap(), 3);
        assert_eq!(book_dist(4, 5).unwrap(), 3);
        assert_eq!(book_dist(4, 4).unwrap(), 2);
        assert_eq!(book_dist(4, 2).unwrap(), 2);
        assert_eq!(book_dist(3, 7).unwrap(), 7);
        assert_eq!(book_dist(40, 2).unwrap(), 2);
        assert!(book_det(4, 1).is_err());
        assert!(book_dist(2, 4).is_err());
    }

    #[test]
    fn dist_respects_root_boundaries() {
        for m in 4..=7u32 {
            for k in 2..=6u64 {
                let e = m - 2;
                let top = k.pow(e);
                let bottom = (k - 1).pow(e) + 1;
                assert_eq!(book_dist(m, top).unwrap(), k);
                if bottom >= 2 {
                    assert_eq!(book_dist(m, bottom).unwrap(), k);
                }
                assert_eq!(book_dist(m, top + 1).unwrap(), k + 1);
            }
        }
    }

    #[test]
    fn path_coloring_sums() {
        assert_eq!(book_nj(8, 3, 4).unwrap(), big(473));
        assert_eq!(book_Nj(8, 3, 4).unwrap(), big(1266));
        assert_eq!(book_Nj(8, 3, 6).unwrap(), big(1458));
        assert_eq!(book_nj(4, 2, 1).unwrap(), big(3));
        assert!(book_nj(4, 2, 3).is_err());
    }

    #[test]
    fn paint_cost_cases() {
        assert_eq!(book_paint_cost(4, 3, 2).unwrap(), exact(3));
        assert_eq!(book_paint_cost(8, 473, 3).unwrap(), exact(1573));
        assert_eq!(book_paint_cost(8, 703, 3).unwrap(), exact(2760));
        assert_eq!(book_paint_cost(4, 6, 3).unwrap(), exact(6));
        assert_eq!(book_paint_cost(4, 4, 2).unwrap(), exact(5));
        assert_eq!(book_paint_cost(5, 4, 2).unwrap(), exact(4));
        assert_eq!(book_paint_cost(4, 5, 3).unwrap(), exact(5));
        assert_eq!(book_paint_cost(3, 4, 6).unwrap(), exact(4));
        assert_eq!(
            book_paint_cost(4, 2, 2).unwrap(),
            PaintCost::Interval {
                lower: big(1),
                upper_exclusive: big(3)
            }
        );
        assert!(matches!(book_paint_cost(4, 5, 2), Err(Error::NotDistinguishable(2))));
    }

    #[test]
    fn worked_example_values() {
        let p = book_params(8, 473).unwrap();
        assert_eq!((p.dist, p.det, p.fdist), (3, 472, 80));
        assert_eq!(p.upper_paint, exact(1573));
        assert!(p.discrepancies.is_empty());
        let q = book_params(8, 703).unwrap();
        assert_eq!(q.vertices, big(4220));
        assert_eq!(q.upper_paint, exact(2760));
        assert_eq!(q.fdist, 119);
        let quantities: Vec<_> = q.discrepancies.iter().map(|d| d.quantity.as_str()).collect();
        assert_eq!(quantities, ["upper_paint", "fdist"]);
        assert_eq!(q.discrepancies[0].paper_value, "2762");
        assert_eq!(q.discrepancies[1].paper_value, "118");
    }

    #[test]
    fn upper_paint_bounds() {
        let b = book_upper_paint_bounds(8, 473).unwrap();
        assert_eq!(b.lower.value, big(1573));
        assert_eq!(b.lower.source, BoundSource::Refined);
        let b = book_upper_paint_bounds(4, 3).unwrap();
        assert_eq!((b.lower.value.clone(), b.upper_exclusive.value.clone()), (big(3), big(5)));
        assert_eq!(b.lower.source, BoundSource::Broad);
        let b = book_upper_paint_bounds(8, 703).unwrap();
        assert_eq!(b.lower.value, big(2761));
        assert_eq!(b.discrepancies.len(), 1);
        assert!(book_upper_paint_bounds(3, 4).is_err());
    }

    #[test]
    fn fdist_formula() {
        assert_eq!(book_fdist(8, 473).unwrap(), 80);
        assert_eq!(book_fdist(8, 703).unwrap(), 119);
        assert_eq!(book_fdist(4, 3).unwrap(), 3);
        assert_eq!(book_fdist(3, 6).unwrap(), 6);
    }

    #[test]
    fn product_formulas() {
        let p = product_params(1).unwrap();
        assert_eq!(
            (p.dist, p.paint2.clone(), p.det.clone(), p.fdist.clone()),
            (2, big(1), big(1), big(2))
        );
        let p = product_params(6).unwrap();
        assert_eq!((p.paint2.clone(), p.det.clone(), p.fdist.clone()), (big(192), big(63), big(12)));
        let p = product_params(7).unwrap();
        assert_eq!((p.det.clone(), p.fdist.clone()), (big(127), big(20)));
        for m in 2..=5 {
            assert!(matches!(product_params(m), Err(Error::Domain(_))));
        }
        assert_eq!(product_params(200).unwrap().det.bits(), 200);
    }

    #[test]
    fn fiber_patterns() {
        let h = crate::graph::asymmetric6();
        let mut colors = vec![0; 24];
        colors[0] = 1;
        colors[7] = 1;
        colors[14] = 1;
        let c = Coloring::new(colors.clone(), 2).unwrap();
        assert!(product_is_distinguishing(4, &h, &c).unwrap());
        colors[7] = 0;
        colors[6] = 1;
        // fibers 0 and 1 now both read 100000
        let c = Coloring::new(colors, 2).unwrap();
        assert!(!product_is_distinguishing(4, &h, &c).unwrap());
        let c6 = crate::graph::cycle(6).unwrap();
        assert!(product_is_distinguishing(4, &c6, &c).is_err());
        assert!(product_is_distinguishing(3, &h, &c).is_err());
    }

    #[test]
    fn serialized_paint_cost() {
        let v = serde_json::to_value(exact(7)).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "exact", "value": "7"}));
    }
}
