//! The class-2, exponent-p group `G(Γ)` of a graph, in closed normal form.
//!
//! Elements are pairs `(a, b)` with `a ∈ 𝔽_p^{vertices}` and
//! `b ∈ 𝔽_p^{non-edges}`; generators `x_v` commute exactly along the edges
//! of `Γ`, and the commutators `[x_u, x_v]` of non-adjacent pairs span the
//! central `b`-part. Multiplication collects via the 2-cocycle
//! `(a,b)·(a',b') = (a+a', b+b'+χ(a,a'))`, where `χ` contributes `a_t·a'_s`
//! on the non-edge `(s,t)` with `s < t`. Any consistent alternating
//! collection convention yields an isomorphic group; this one is fixed and
//! property-tested for associativity.

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::{EnumerableGroup, GroupOps};
use crate::mekler::graph::SimpleGraph;

/// A Mekler group `G(Γ)` for an odd prime `p`, with the vertex order fixed
/// to the natural index order of the graph.
#[derive(Debug, Clone)]
pub struct MeklerGroup {
    graph: SimpleGraph,
    p: u32,
    non_edges: Vec<(usize, usize)>,
}

/// Normal form `(a, b)` of a Mekler group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MeklerElement {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
}

fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl MeklerGroup {
    pub fn new(graph: SimpleGraph, p: u32) -> Result<MeklerGroup> {
        if !is_odd_prime(p) {
            return Err(Error::invalid(format!("p = {p} must be an odd prime")));
        }
        let non_edges = graph.non_edges();
        Ok(MeklerGroup {
            graph,
            p,
            non_edges,
        })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    pub fn non_edges(&self) -> &[(usize, usize)] {
        &self.non_edges
    }

    /// `log_p |G(Γ)| = n + #non-edges`, by uniqueness of the normal form.
    pub fn order_exponent(&self) -> usize {
        self.graph.n() + self.non_edges.len()
    }

    pub fn identity(&self) -> MeklerElement {
        MeklerElement {
            a: vec![0; self.graph.n()],
            b: vec![0; self.non_edges.len()],
        }
    }

    /// The generator `x_v`.
    pub fn generator(&self, v: usize) -> MeklerElement {
        let mut e = self.identity();
        e.a[v] = 1;
        e
    }

    /// The central element with a single `b`-coordinate on `non_edges[i]`.
    pub fn central_generator(&self, i: usize) -> MeklerElement {
        let mut e = self.identity();
        e.b[i] = 1;
        e
    }

    fn check(&self, x: &MeklerElement) -> Result<()> {
        if x.a.len() != self.graph.n() || x.b.len() != self.non_edges.len() {
            return Err(Error::invalid("element does not conform to this group"));
        }
        Ok(())
    }

    /// The cocycle `χ(a, a')`: on non-edge `(s,t)` with `s < t` the
    /// contribution is `a_t · a'_s`.
    fn chi(&self, a: &[u8], a2: &[u8]) -> Vec<u8> {
        self.non_edges
            .iter()
            .map(|&(s, t)| ((a[t] as u32 * a2[s] as u32) % self.p) as u8)
            .collect()
    }

    pub fn mul(&self, x: &MeklerElement, y: &MeklerElement) -> MeklerElement {
        let p = self.p;
        let a: Vec<u8> = x
            .a
            .iter()
            .zip(&y.a)
            .map(|(&u, &v)| ((u as u32 + v as u32) % p) as u8)
            .collect();
        let chi = self.chi(&x.a, &y.a);
        let b: Vec<u8> = x
            .b
            .iter()
            .zip(&y.b)
            .zip(&chi)
            .map(|((&u, &v), &c)| ((u as u32 + v as u32 + c as u32) % p) as u8)
            .collect();
        MeklerElement { a, b }
    }

    /// Checked multiplication (dimension mismatch is an input error).
    pub fn mul_checked(&self, x: &MeklerElement, y: &MeklerElement) -> Result<MeklerElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// `(a,b)⁻¹ = (−a, −b + χ(a,a))`.
    pub fn inverse(&self, x: &MeklerElement) -> MeklerElement {
        let p = self.p;
        let a: Vec<u8> = x.a.iter().map(|&u| ((p - u as u32) % p) as u8).collect();
        let chi_aa = self.chi(&x.a, &x.a);
        let b: Vec<u8> = x
            .b
            .iter()
            .zip(&chi_aa)
            .map(|(&u, &c)| ((p - u as u32 + c as u32) % p) as u8)
            .collect();
        MeklerElement { a, b }
    }

    pub fn power(&self, x: &MeklerElement, mut k: u32) -> MeklerElement {
        let mut out = self.identity();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        out
    }

    /// Mixed-radix index of an element (a-digits, then b-digits, little
    /// endian), a bijection onto `0..p^(n+m)`.
    pub fn element_index(&self, x: &MeklerElement) -> u64 {
        let p = self.p as u64;
        let mut idx = 0u64;
        let mut place = 1u64;
        for &d in x.a.iter().chain(x.b.iter()) {
            idx += d as u64 * place;
            place *= p;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> MeklerElement {
        let p = self.p as u64;
        let n = self.graph.n();
        let m = self.non_edges.len();
        let mut digits = Vec::with_capacity(n + m);
        for _ in 0..n + m {
            digits.push((idx % p) as u8);
            idx /= p;
        }
        MeklerElement {
            a: digits[..n].to_vec(),
            b: digits[n..].to_vec(),
        }
    }

    /// All elements, erroring when `p^(n+m)` exceeds the cap.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<MeklerElement>> {
        let total = (self.p as u64).checked_pow(self.order_exponent() as u32);
        let total = total
            .filter(|&t| t <= cap as u64)
            .ok_or_else(|| Error::cap(format!("group order p^{} exceeds {cap}", self.order_exponent())))?;
        Ok((0..total).map(|i| self.element_at(i)).collect())
    }
}

impl GroupOps for MeklerGroup {
    type E = MeklerElement;

    fn id(&self) -> MeklerElement {
        self.identity()
    }

    fn mul(&self, a: &MeklerElement, b: &MeklerElement) -> MeklerElement {
        MeklerGroup::mul(self, a, b)
    }

    fn inv(&self, a: &MeklerElement) -> MeklerElement {
        self.inverse(a)
    }

    fn generators(&self) -> Vec<MeklerElement> {
        (0..self.graph.n()).map(|v| self.generator(v)).collect()
    }

    fn describe(&self, e: &MeklerElement) -> String {
        format!("a{:?}b{:?}", e.a, e.b)
    }
}

impl EnumerableGroup for MeklerGroup {
    fn elements(&self) -> Vec<MeklerElement> {
        self.enumerate(usize::MAX).expect("unbounded enumerate")
    }

    fn order(&self) -> usize {
        (self.p as u64).pow(self.order_exponent() as u32) as usize
    }
}

/// Computable isomorphism invariants of `G(Γ)`: group order, center order,
/// abelianization (all as exponents of `p`), and the multiset of
/// centralizer-defect ranks over `a ∈ 𝔽_p^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupFingerprint {
    pub p: u32,
    pub order_exp: usize,
    pub center_order_exp: usize,
    pub abelianization_exp: usize,
    /// Sorted `(rank, multiplicity)` pairs of the map
    /// `a' ↦ χ(a,a') − χ(a',a)` over all `a`.
    pub centralizer_rank_multiset: Vec<(usize, usize)>,
}

/// Rank over 𝔽_p of the matrix sending `a'` to `χ(a,a') − χ(a',a)`, rows
/// indexed by non-edges.
fn defect_rank(group: &MeklerGroup, a: &[u8]) -> usize {
    let p = group.p as i64;
    let m = group.non_edges().len();
    let n = group.vertex_count();
    // row (s,t): a_t·a'_s − a_s·a'_t, i.e. coefficient a_t at column s and
    // −a_s at column t
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(m);
    for &(s, t) in group.non_edges() {
        let mut row = vec![0i64; n];
        row[s] = (a[t] as i64) % p;
        row[t] = (-(a[s] as i64)).rem_euclid(p);
        rows.push(row);
    }
    rank_mod_p(&mut rows, p)
}

fn rank_mod_p(rows: &mut [Vec<i64>], p: i64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| rows[r][col] % p != 0);
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = mod_inv(rows[rank][col].rem_euclid(p), p);
        for c in col..ncols {
            rows[rank][c] = (rows[rank][c] * inv).rem_euclid(p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col].rem_euclid(p);
                for c in col..ncols {
                    rows[r][c] = (rows[r][c] - factor * rows[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn mod_inv(a: i64, p: i64) -> i64 {
    // p is prime, so a^(p-2) works; p ≤ a handful of digits here
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Fingerprint of `G(Γ)`; the rank sweep over `p^n` vectors is capped.
pub fn fingerprint(group: &MeklerGroup, caps: &Caps) -> Result<GroupFingerprint> {
    let n = group.vertex_count();
    let p = group.p();
    let total = (p as u64).checked_pow(n as u32);
    let total = total
        .filter(|&t| t <= caps.fingerprint_points as u64)
        .ok_or_else(|| {
            Error::cap(format!(
                "fingerprint sweep p^n = {p}^{n} exceeds cap {}",
                caps.fingerprint_points
            ))
        })?;

    let mut rank_counts: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut a = vec![0u8; n];
    for step in 0..total {
        if step > 0 {
            // increment base-p counter
            for digit in a.iter_mut() {
                if (*digit as u32) + 1 < p {
                    *digit += 1;
                    break;
                }
                *digit = 0;
            }
        }
        let r = defect_rank(group, &a);
        *rank_counts.entry(r).or_insert(0) += 1;
    }

    // center: a-part supported on vertices touching no non-edge
    let in_non_edge: std::collections::HashSet<usize> = group
        .non_edges()
        .iter()
        .flat_map(|&(s, t)| [s, t])
        .collect();
    let center_a_dim = (0..n).filter(|v| !in_non_edge.contains(v)).count();

    Ok(GroupFingerprint {
        p,
        order_exp: group.order_exponent(),
        center_order_exp: center_a_dim + group.non_edges().len(),
        abelianization_exp: n,
        centralizer_rank_multiset: rank_counts.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mekler::graph;
    use rand::{Rng, SeedableRng};

    fn non_adjacent_pair() -> MeklerGroup {
        MeklerGroup::new(SimpleGraph::edgeless(2), 3).unwrap()
    }

    fn adjacent_pair() -> MeklerGroup {
        MeklerGroup::new(SimpleGraph::complete(2), 3).unwrap()
    }

    #[test]
    fn identity_and_inverse_laws() {
        let g = non_adjacent_pair();
        for idx in 0..27 {
            let x = g.element_at(idx);
            assert_eq!(g.mul(&x, &g.identity()), x);
            assert_eq!(g.mul(&g.identity(), &x), x);
            assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
            assert_eq!(g.mul(&g.inverse(&x), &x), g.identity());
        }
    }

    #[test]
    fn non_adjacent_generators_do_not_commute() {
        let g = non_adjacent_pair();
        let x0 = g.generator(0);
        let x1 = g.generator(1);
        let xy = g.mul(&x0, &x1);
        let yx = g.mul(&x1, &x0);
        assert_ne!(xy, yx);
        assert_eq!(xy.a, yx.a);
        // they differ in exactly the b-coordinate of the non-edge {0,1}
        let diff = (xy.b[0] as i32 - yx.b[0] as i32).rem_euclid(3);
        assert!(diff == 1 || diff == 2);
        let comm = g.commutator(&x0, &x1);
        assert_ne!(comm, g.identity());
        assert_eq!(comm.a, vec![0, 0]);
    }

    #[test]
    fn adjacent_generators_commute() {
        let g = adjacent_pair();
        let x0 = g.generator(0);
        let x1 = g.generator(1);
        assert_eq!(g.mul(&x0, &x1), g.mul(&x1, &x0));
        assert_eq!(g.order_exponent(), 2); // abelian p² group
    }

    /// The order-27 extraspecial group of exponent 3 in its upper
    /// unitriangular 3×3 matrix model, used as a cross-check oracle.
    fn heisenberg_mul(x: (u8, u8, u8), y: (u8, u8, u8)) -> (u8, u8, u8) {
        // [[1, a, c], [0, 1, b], [0, 0, 1]] entries mod 3
        (
            (x.0 + y.0) % 3,
            (x.1 + y.1) % 3,
            (x.2 + y.2 + x.0 * y.1) % 3,
        )
    }

    #[test]
    fn non_adjacent_pair_matches_unitriangular_model() {
        // map x_1 ↦ E(a=1), x_0 ↦ E(b=1); the collection convention puts
        // χ's contribution on the larger-index vertex acting from the left
        let g = non_adjacent_pair();
        let to_model = |e: &MeklerElement| -> (u8, u8, u8) { (e.a[1], e.a[0], e.b[0]) };
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x = g.element_at(rng.gen_range(0..27));
            let y = g.element_at(rng.gen_range(0..27));
            let lhs = to_model(&g.mul(&x, &y));
            let rhs = heisenberg_mul(to_model(&x), to_model(&y));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn associativity_exhaustive_for_order_27() {
        let g = non_adjacent_pair();
        let elements = g.enumerate(100).unwrap();
        assert_eq!(elements.len(), 27);
        for x in &elements {
            for y in &elements {
                for z in &elements {
                    assert_eq!(g.mul(&g.mul(x, y), z), g.mul(x, &g.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn exponent_p_holds() {
        let g = MeklerGroup::new(SimpleGraph::cycle(5), 3).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let total = 3u64.pow(10);
        for _ in 0..500 {
            let x = g.element_at(rng.gen_range(0..total));
            assert_eq!(g.power(&x, 3), g.identity());
        }
    }

    #[test]
    fn order_exponents() {
        assert_eq!(non_adjacent_pair().order_exponent(), 3); // 27
        assert_eq!(adjacent_pair().order_exponent(), 2); // 9
        let c5 = MeklerGroup::new(SimpleGraph::cycle(5), 3).unwrap();
        assert_eq!(c5.order_exponent(), 10); // 5 vertices + 5 non-edges
    }

    #[test]
    fn order_verified_by_enumeration_and_cancellation() {
        for graph in [
            SimpleGraph::edgeless(2),
            SimpleGraph::complete(2),
            SimpleGraph::path(3),
            SimpleGraph::edgeless(3),
        ] {
            let g = MeklerGroup::new(graph, 3).unwrap();
            let elements = g.enumerate(100_000).unwrap();
            assert_eq!(elements.len(), 3usize.pow(g.order_exponent() as u32));
            // left multiplication by a fixed element is injective
            let t = g.generator(0);
            let mut images: std::collections::HashSet<MeklerElement> = Default::default();
            for x in &elements {
                assert!(images.insert(g.mul(&t, x)));
            }
        }
    }

    #[test]
    fn rejects_non_prime_or_even_p() {
        assert!(MeklerGroup::new(SimpleGraph::edgeless(2), 2).is_err());
        assert!(MeklerGroup::new(SimpleGraph::edgeless(2), 9).is_err());
        assert!(MeklerGroup::new(SimpleGraph::edgeless(2), 5).is_ok());
    }

    #[test]
    fn mul_checked_rejects_foreign_elements() {
        let g = non_adjacent_pair();
        let other = MeklerGroup::new(SimpleGraph::edgeless(3), 3).unwrap();
        let x = other.identity();
        assert!(g.mul_checked(&x, &g.identity()).is_err());
    }

    #[test]
    fn fingerprint_of_small_graphs() {
        let caps = Caps::default();
        // abelian case: all ranks 0
        let fp = fingerprint(&adjacent_pair(), &caps).unwrap();
        assert_eq!(fp.centralizer_rank_multiset, vec![(0, 9)]);
        assert_eq!(fp.center_order_exp, 2);
        assert_eq!(fp.abelianization_exp, 2);

        // non-adjacent pair: rank 0 once (a = 0), rank 1 for the other 8
        let fp2 = fingerprint(&non_adjacent_pair(), &caps).unwrap();
        assert_eq!(fp2.centralizer_rank_multiset, vec![(0, 1), (1, 8)]);
        assert_eq!(fp2.center_order_exp, 1);
        assert_eq!(fp2.order_exp, 3);
    }

    #[test]
    fn center_exponent_matches_brute_force() {
        let caps = Caps::default();
        for graph in [
            SimpleGraph::edgeless(2),
            SimpleGraph::complete(2),
            SimpleGraph::path(3),
            SimpleGraph::star(2),
        ] {
            let g = MeklerGroup::new(graph, 3).unwrap();
            let fp = fingerprint(&g, &caps).unwrap();
            let elements = g.enumerate(100_000).unwrap();
            let center = crate::groups::center_elements(&g);
            assert_eq!(center.len(), 3usize.pow(fp.center_order_exp as u32));
            assert!(center.len() <= elements.len());
        }
    }

    #[test]
    fn fingerprint_is_relabel_invariant() {
        let caps = Caps::default();
        let g = SimpleGraph::path(4);
        let relabeled = g.relabel(&[3, 1, 0, 2]);
        let f1 = fingerprint(&MeklerGroup::new(g, 3).unwrap(), &caps).unwrap();
        let f2 = fingerprint(&MeklerGroup::new(relabeled, 3).unwrap(), &caps).unwrap();
        assert_eq!(f1, f2);
    }

    #[test]
    fn fingerprints_separate_p4_and_star() {
        let caps = Caps::default();
        let p4 = fingerprint(&MeklerGroup::new(SimpleGraph::path(4), 3).unwrap(), &caps).unwrap();
        let star =
            fingerprint(&MeklerGroup::new(SimpleGraph::star(3), 3).unwrap(), &caps).unwrap();
        assert_ne!(p4, star);
    }

    #[test]
    fn associativity_random_on_c5() {
        let g = MeklerGroup::new(graph::SimpleGraph::cycle(5), 3).unwrap();
        let total = 3u64.pow(10);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(17);
        for _ in 0..2_000 {
            let x = g.element_at(rng.gen_range(0..total));
            let y = g.element_at(rng.gen_range(0..total));
            let z = g.element_at(rng.gen_range(0..total));
            assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        }
    }
}
