//! Simple graphs at desk scale (≤ 64 vertices, bitset adjacency), the
//! niceness predicate, brute-force isomorphism, copies graphs, and small
//! catalog enumeration.

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`, `n ≤ 64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph> {
        if n > 64 {
            return Err(Error::cap("graphs are limited to 64 vertices"));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(SimpleGraph { n, adj })
    }

    pub fn edgeless(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, &[]).unwrap()
    }

    pub fn path(n: usize) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::new(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        assert!(n >= 3);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        SimpleGraph::new(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(n, &edges).unwrap()
    }

    pub fn star(leaves: usize) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
        SimpleGraph::new(leaves + 1, &edges).unwrap()
    }

    /// Graph on `n` vertices from a bitmask over the pairs `(u,v)`, `u < v`,
    /// in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> SimpleGraph {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        SimpleGraph::new(n, &edges).unwrap()
    }

    pub fn edge_mask(&self) -> u64 {
        let mut mask = 0u64;
        let mut bit = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// The graph with vertex `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        SimpleGraph::new(self.n, &edges).unwrap()
    }
}

/// Clause-by-clause niceness report. The implemented predicate:
/// (i) at least two vertices, (ii) no triangles, (iii) no 4-cycles,
/// (iv) for every ordered pair of distinct vertices `(u,v)` some third
/// vertex is adjacent to `u` but not to `v`.
///
/// The witness vertex in (iv) is required to differ from both `u` and `v`;
/// under the laxer reading every edge would satisfy its own pair, which
/// would admit degenerate graphs like a single edge. The strict reading is
/// also the one under which disjoint copies of a nice graph stay nice.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NiceReport {
    pub at_least_two_vertices: bool,
    pub triangle_free: bool,
    pub triangle_witness: Option<(usize, usize, usize)>,
    pub square_free: bool,
    pub square_witness: Option<(usize, usize, usize, usize)>,
    pub separated: bool,
    pub separation_failure: Option<(usize, usize)>,
}

impl NiceReport {
    pub fn is_nice(&self) -> bool {
        self.at_least_two_vertices && self.triangle_free && self.square_free && self.separated
    }
}

pub fn nice_report(g: &SimpleGraph) -> NiceReport {
    let n = g.n();
    let mut report = NiceReport {
        at_least_two_vertices: n >= 2,
        triangle_free: true,
        triangle_witness: None,
        square_free: true,
        square_witness: None,
        separated: true,
        separation_failure: None,
    };
    'tri: for u in 0..n {
        for v in u + 1..n {
            let common = g.neighbors(u) & g.neighbors(v);
            if g.adjacent(u, v) && common != 0 {
                let w = common.trailing_zeros() as usize;
                report.triangle_free = false;
                report.triangle_witness = Some((u, v, w));
                break 'tri;
            }
        }
    }
    'sq: for u in 0..n {
        for v in u + 1..n {
            let common = g.neighbors(u) & g.neighbors(v);
            if common.count_ones() >= 2 {
                let w1 = common.trailing_zeros() as usize;
                let w2 = (common & !(1 << w1)).trailing_zeros() as usize;
                report.square_free = false;
                report.square_witness = Some((u, w1, v, w2));
                break 'sq;
            }
        }
    }
    'sep: for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let witnesses = g.neighbors(u) & !g.neighbors(v) & !(1 << u) & !(1 << v);
            if witnesses == 0 {
                report.separated = false;
                report.separation_failure = Some((u, v));
                break 'sep;
            }
        }
    }
    report
}

pub fn is_nice(g: &SimpleGraph) -> bool {
    nice_report(g).is_nice()
}

/// Brute-force graph isomorphism with degree pruning; returns a witnessing
/// bijection when one exists. Capped at `caps.graph_vertices` vertices.
pub fn graph_iso(a: &SimpleGraph, b: &SimpleGraph, caps: &Caps) -> Result<Option<Vec<usize>>> {
    if a.n() > caps.graph_vertices || b.n() > caps.graph_vertices {
        return Err(Error::cap(format!(
            "graph isomorphism search is capped at {} vertices",
            caps.graph_vertices
        )));
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let n = a.n();
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    {
        let mut sa = deg_a.clone();
        let mut sb = deg_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(None);
        }
    }
    // assign images for vertices of `a` in order of descending degree
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg_a[v]));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(a, b, &order, 0, &mut image, &mut used, &mut deg_a, &mut deg_b) {
        Ok(Some(image))
    } else {
        Ok(None)
    }
}

fn assign(
    a: &SimpleGraph,
    b: &SimpleGraph,
    order: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    deg_a: &mut Vec<usize>,
    deg_b: &mut Vec<usize>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for t in 0..b.n() {
        if used[t] || deg_a[u] != deg_b[t] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| a.adjacent(u, w) == b.adjacent(t, image[w]));
        if !consistent {
            continue;
        }
        image[u] = t;
        used[t] = true;
        if assign(a, b, order, depth + 1, image, used, deg_a, deg_b) {
            return true;
        }
        used[t] = false;
        image[u] = usize::MAX;
    }
    false
}

/// `k` disjoint copies of `Γ`: vertex `(c, v)` is numbered `c·n + v`, and
/// `(c,u) ~ (d,v)` iff `c = d` and `u ~ v`.
pub fn copies_graph(g: &SimpleGraph, k: usize, caps: &Caps) -> Result<SimpleGraph> {
    let n = g.n();
    if k == 0 {
        return Err(Error::invalid("need at least one copy"));
    }
    if k * n > caps.copies_vertices {
        return Err(Error::cap(format!(
            "copies graph has {} vertices, cap is {}",
            k * n,
            caps.copies_vertices
        )));
    }
    let mut edges = Vec::new();
    for c in 0..k {
        for (u, v) in g.edges() {
            edges.push((c * n + u, c * n + v));
        }
    }
    SimpleGraph::new(k * n, &edges)
}

/// The permutation of `0..k·n` swapping copies `i` and `j` of a copies
/// graph; a graph automorphism by construction.
pub fn copy_swap_permutation(n: usize, k: usize, i: usize, j: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k * n).collect();
    for v in 0..n {
        p.swap(i * n + v, j * n + v);
    }
    p
}

/// Canonical edge mask: the minimum over all vertex relabelings. Usable as
/// an isomorphism-class key for `n ≤ 8`.
pub fn canonical_edge_mask(g: &SimpleGraph) -> u64 {
    let n = g.n();
    let mut best = u64::MAX;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        best = best.min(g.relabel(&perm).edge_mask());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All labeled graphs on exactly `n` vertices.
pub fn all_graphs(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= 6, "labeled enumeration meant for n ≤ 6");
    let bits = n * (n - 1) / 2;
    (0u64..1 << bits)
        .map(|mask| SimpleGraph::from_edge_mask(n, mask))
        .collect()
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, with the count of labeled graphs in each class.
pub fn graph_classes(n: usize) -> Vec<(SimpleGraph, usize)> {
    let mut by_canon: std::collections::BTreeMap<u64, (SimpleGraph, usize)> =
        std::collections::BTreeMap::new();
    for g in all_graphs(n) {
        let key = canonical_edge_mask(&g);
        by_canon
            .entry(key)
            .and_modify(|e| e.1 += 1)
            .or_insert((g, 1));
    }
    by_canon.into_values().collect()
}

/// Nice graphs on `2..=max_n` vertices, one representative per isomorphism
/// class, with labeled counts.
pub fn nice_catalog(max_n: usize, predicate: impl Fn(&SimpleGraph) -> bool) -> Vec<(SimpleGraph, usize)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for (g, count) in graph_classes(n) {
            if predicate(&g) {
                out.push((g, count));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn niceness_examples() {
        assert!(is_nice(&SimpleGraph::cycle(5)));
        let k3 = nice_report(&SimpleGraph::complete(3));
        assert!(!k3.triangle_free && !k3.is_nice());
        let c4 = nice_report(&SimpleGraph::cycle(4));
        assert!(c4.triangle_free && !c4.square_free && !c4.is_nice());
        // single edge fails separation under the strict third-vertex reading
        let k2 = nice_report(&SimpleGraph::complete(2));
        assert!(!k2.separated && !k2.is_nice());
        // paths fail separation at their endpoints
        assert!(!is_nice(&SimpleGraph::path(4)));
    }

    #[test]
    fn nice_graphs_have_no_isolated_vertices() {
        // an isolated vertex breaks clause (iv) outright
        let mut g = SimpleGraph::edgeless(3);
        g = SimpleGraph::new(3, &[(0, 1)]).unwrap();
        assert!(!is_nice(&g));
    }

    #[test]
    fn c5_is_the_only_nice_class_up_to_five_vertices() {
        let catalog = nice_catalog(5, is_nice);
        assert_eq!(catalog.len(), 1);
        let (g, labeled) = &catalog[0];
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(*labeled, 12); // 5!/10 labelings of C5
        assert!(graph_iso(g, &SimpleGraph::cycle(5), &Caps::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn copies_of_nice_graphs_stay_nice() {
        let caps = Caps::default();
        let c5 = SimpleGraph::cycle(5);
        let doubled = copies_graph(&c5, 2, &caps).unwrap();
        assert_eq!(doubled.n(), 10);
        assert_eq!(doubled.edge_count(), 10);
        assert!(is_nice(&doubled));
        // k = 1 is the graph itself
        let same = copies_graph(&c5, 1, &caps).unwrap();
        assert_eq!(same, c5);
        // 2 copies of a single edge: 4 vertices, 2 edges, no cross edges
        let e2 = copies_graph(&SimpleGraph::complete(2), 2, &caps).unwrap();
        assert_eq!((e2.n(), e2.edge_count()), (4, 2));
        assert!(!e2.adjacent(0, 2) && !e2.adjacent(1, 3));
    }

    #[test]
    fn copy_swap_is_an_automorphism() {
        let caps = Caps::default();
        let base = SimpleGraph::path(3);
        let doubled = copies_graph(&base, 2, &caps).unwrap();
        let swap = copy_swap_permutation(3, 2, 0, 1);
        assert_eq!(doubled.relabel(&swap), doubled);
    }

    #[test]
    fn graph_iso_examples() {
        let caps = Caps::default();
        let c5 = SimpleGraph::cycle(5);
        let witness = graph_iso(&c5, &c5, &caps).unwrap();
        assert!(witness.is_some());

        let p5 = SimpleGraph::path(5);
        assert!(graph_iso(&c5, &p5, &caps).unwrap().is_none());

        let p4 = SimpleGraph::path(4);
        let relabeled = p4.relabel(&[2, 0, 3, 1]);
        let w = graph_iso(&p4, &relabeled, &caps).unwrap().unwrap();
        // verify the witness is an isomorphism
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(p4.adjacent(u, v), relabeled.adjacent(w[u], w[v]));
            }
        }
    }

    #[test]
    fn graph_iso_cap() {
        let caps = Caps::default();
        let big = SimpleGraph::edgeless(9);
        assert!(matches!(
            graph_iso(&big, &big, &caps),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn class_counts_on_four_vertices() {
        // 11 isomorphism classes of graphs on 4 vertices, 64 labeled total
        let classes = graph_classes(4);
        assert_eq!(classes.len(), 11);
        assert_eq!(classes.iter().map(|(_, c)| c).sum::<usize>(), 64);
    }
}
