//! Isomorphism machinery for Mekler groups: lifting graph isomorphisms to
//! group isomorphisms, and the exact decision procedure over `GL(n,p)`.
//!
//! For these class-2 exponent-p groups the commutator pairing is natural:
//! any isomorphism `G(Γ₁) → G(Γ₂)` induces `S ∈ GL(n,p)` on the
//! abelianizations whose wedge square maps the edge-relation subspace
//! `R₁ = span{u∧v : u ~ v}` onto `R₂`, and conversely any such `S` lifts.
//! So `G(Γ₁) ≅ G(Γ₂)` is decided by an exhaustive pruned search over `S`.

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::GroupOps;
use crate::mekler::graph::SimpleGraph;
use crate::mekler::group::{MeklerElement, MeklerGroup};

/// A group isomorphism `G(Γ₁) → G(Γ₂)` induced by a graph isomorphism:
/// `x_v ↦ x_{φ(v)}`, extended to normal forms through re-collection (which
/// fixes the sign corrections on the central part automatically).
#[derive(Debug, Clone)]
pub struct InducedIso {
    phi: Vec<usize>,
    gen_images: Vec<MeklerElement>,
    central_images: Vec<MeklerElement>,
    source: MeklerGroup,
    target: MeklerGroup,
}

/// Verifies `φ` is a graph isomorphism and builds the induced group map.
pub fn induced_group_iso(
    phi: &[usize],
    source: &MeklerGroup,
    target: &MeklerGroup,
) -> Result<InducedIso> {
    let n = source.vertex_count();
    if target.vertex_count() != n || phi.len() != n {
        return Err(Error::invalid("vertex counts do not match"));
    }
    if source.p() != target.p() {
        return Err(Error::invalid("primes do not match"));
    }
    let mut seen = vec![false; n];
    for &v in phi {
        if v >= n || seen[v] {
            return Err(Error::invalid("φ is not a bijection"));
        }
        seen[v] = true;
    }
    for u in 0..n {
        for v in 0..n {
            if source.graph().adjacent(u, v) != target.graph().adjacent(phi[u], phi[v]) {
                return Err(Error::invalid(format!(
                    "φ is not a graph isomorphism: adjacency differs at ({u},{v})"
                )));
            }
        }
    }

    let gen_images: Vec<MeklerElement> = (0..n).map(|v| target.generator(phi[v])).collect();

    // image of the central generator on non-edge (u,v): transport the
    // commutator witness. In the source, z_{(u,v)} equals [x_v, x_u] up to
    // a sign; match that sign in the target.
    let p = source.p();
    let mut central_images = Vec::with_capacity(source.non_edges().len());
    for &(u, v) in source.non_edges() {
        let c_src = source.commutator(&source.generator(v), &source.generator(u));
        let z = source.central_generator(
            source
                .non_edges()
                .iter()
                .position(|&e| e == (u, v))
                .unwrap(),
        );
        // c_src = z^ε with ε ∈ {1, …, p−1}; find ε and raise the target
        // commutator to the inverse power
        let mut eps = None;
        let mut acc = source.identity();
        for k in 1..p {
            acc = source.mul(&acc, &c_src);
            if acc == z {
                eps = Some(k);
                break;
            }
        }
        let eps = eps.ok_or_else(|| {
            Error::Degenerate("commutator does not generate the central coordinate".into())
        })?;
        let c_tgt = target.commutator(&gen_images[v], &gen_images[u]);
        central_images.push(target.power(&c_tgt, eps));
    }

    Ok(InducedIso {
        phi: phi.to_vec(),
        gen_images,
        central_images,
        source: source.clone(),
        target: target.clone(),
    })
}

impl InducedIso {
    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// Applies the map to a normal form: write `(a,b)` as the canonical
    /// generator word times a central correction, then multiply the images
    /// out in the target group.
    pub fn apply(&self, x: &MeklerElement) -> MeklerElement {
        let src = &self.source;
        // canonical word Π_v x_v^{a_v} in ascending vertex order
        let mut word = src.identity();
        for (v, &av) in x.a.iter().enumerate() {
            if av != 0 {
                word = src.mul(&word, &src.power(&src.generator(v), av as u32));
            }
        }
        // central correction c = b − word.b
        let p = src.p();
        let correction: Vec<u8> = x
            .b
            .iter()
            .zip(&word.b)
            .map(|(&b, &w)| ((b as u32 + p - w as u32) % p) as u8)
            .collect();

        let tgt = &self.target;
        let mut out = tgt.identity();
        for (v, &av) in x.a.iter().enumerate() {
            if av != 0 {
                out = tgt.mul(&out, &tgt.power(&self.gen_images[v], av as u32));
            }
        }
        for (i, &c) in correction.iter().enumerate() {
            if c != 0 {
                out = tgt.mul(&out, &tgt.power(&self.central_images[i], c as u32));
            }
        }
        out
    }

    /// Seeded spot check that the map is a homomorphism, plus an exact
    /// bijectivity check on the central part.
    pub fn verify(&self, samples: usize, seed: u64) -> Result<()> {
        use rand::{Rng, SeedableRng};
        let total = (self.source.p() as u64).pow(self.source.order_exponent() as u32);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = self.source.element_at(rng.gen_range(0..total));
            let y = self.source.element_at(rng.gen_range(0..total));
            let lhs = self.apply(&self.source.mul(&x, &y));
            let rhs = self.target.mul(&self.apply(&x), &self.apply(&y));
            if lhs != rhs {
                return Err(Error::Degenerate(format!(
                    "induced map is not a homomorphism at {x:?}, {y:?}"
                )));
            }
        }
        // bijectivity: a-part is a permutation by construction; the central
        // images must span the target's b-space
        let m = self.source.non_edges().len();
        let p = self.source.p() as i64;
        let mut rows: Vec<Vec<i64>> = self
            .central_images
            .iter()
            .map(|z| z.b.iter().map(|&d| d as i64).collect())
            .collect();
        if central_rank(&mut rows, p) != m {
            return Err(Error::Degenerate(
                "central images do not span the target center".into(),
            ));
        }
        Ok(())
    }
}

fn central_rank(rows: &mut [Vec<i64>], p: i64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col].rem_euclid(p) != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pv = rows[rank][col].rem_euclid(p);
        let inv = (1..p).find(|&x| (x * pv) % p == 1).unwrap();
        for c in 0..ncols {
            rows[rank][c] = (rows[rank][c] * inv).rem_euclid(p);
        }
        for r in 0..rows.len() {
            if r != rank {
                let f = rows[r][col].rem_euclid(p);
                if f != 0 {
                    for c in 0..ncols {
                        rows[r][c] = (rows[r][c] - f * rows[rank][c]).rem_euclid(p);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn wedge_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j);
    // position of (i,j) among pairs in lexicographic order
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Row-echelon basis of a subspace of 𝔽_p^dim given by spanning vectors.
struct EchelonBasis {
    rows: Vec<Vec<u32>>,
    p: u32,
}

impl EchelonBasis {
    fn new(vectors: Vec<Vec<u32>>, dim: usize, p: u32) -> Self {
        let mut basis = EchelonBasis { rows: Vec::new(), p };
        for v in vectors {
            basis.insert(v, dim);
        }
        basis
    }

    fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        let p = self.p;
        for row in &self.rows {
            let lead = row.iter().position(|&x| x != 0).unwrap();
            let f = v[lead] % p;
            if f != 0 {
                let inv_lead = row[lead];
                // rows are normalized with leading 1
                debug_assert_eq!(inv_lead, 1);
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + p * f - (f * r) % p) % p;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<u32>, _dim: usize) -> bool {
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(lead) = v.iter().position(|&x| x % p != 0) else {
            return false;
        };
        let inv = (1..p).find(|&x| (x * v[lead]) % p == 1).unwrap();
        for x in v.iter_mut() {
            *x = (*x * inv) % p;
        }
        self.rows.push(v);
        self.rows.sort_by_key(|r| r.iter().position(|&x| x != 0));
        true
    }

    fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x % self.p == 0)
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Decides `G(Γ₁) ≅ G(Γ₂)` by exhaustive search for `S ∈ GL(n,p)` whose
/// wedge square carries the edge span of `Γ₁` onto that of `Γ₂`.
///
/// Searches column by column with rank pruning and early edge-constraint
/// checks; parallelized over the first column choice. `n = 4` (a ~2.4·10⁷
/// element group) is compiled in only with the `gl4-search` feature.
pub fn exact_iso(g1: &SimpleGraph, g2: &SimpleGraph, p: u32, caps: &Caps) -> Result<bool> {
    let n = g1.n();
    if n != g2.n() {
        return Ok(false);
    }
    if n > caps.exact_iso_vertices {
        return Err(Error::cap(format!(
            "exact isomorphism search capped at {} vertices",
            caps.exact_iso_vertices
        )));
    }
    if n == 4 && !cfg!(feature = "gl4-search") {
        return Err(Error::cap(
            "n = 4 exact search requires the `gl4-search` feature",
        ));
    }
    if g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }

    let wdim = n * (n - 1) / 2;
    let r2 = EchelonBasis::new(
        g2.edges()
            .iter()
            .map(|&(u, v)| {
                let mut w = vec![0u32; wdim];
                w[wedge_index(u, v, n)] = 1;
                w
            })
            .collect(),
        wdim,
        p,
    );
    // both spans have dimension = edge count (distinct wedge basis vectors)
    debug_assert_eq!(r2.rank(), g2.edge_count());

    // order the source vertices so edge constraints apply early
    let mut order: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = (0..n).collect();
    while !remaining.is_empty() {
        let (pos, &best) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(_, &v)| {
                order
                    .iter()
                    .filter(|&&u| g1.adjacent(u, v))
                    .count()
                    .max(g1.degree(v).min(1))
            })
            .unwrap();
        order.push(best);
        remaining.remove(pos);
    }

    let pn: usize = (p as usize).pow(n as u32);
    let candidates: Vec<Vec<u32>> = (1..pn)
        .map(|mut idx| {
            let mut v = vec![0u32; n];
            for slot in v.iter_mut() {
                *slot = (idx % p as usize) as u32;
                idx /= p as usize;
            }
            v
        })
        .collect();

    let found = candidates.par_iter().any(|first| {
        let mut columns: Vec<Vec<u32>> = vec![Vec::new(); n];
        columns[order[0]] = first.clone();
        let mut span = EchelonBasis::new(vec![first.clone()], n, p);
        search_columns(g1, &order, 1, &mut columns, &mut span, &r2, &candidates, p, n)
    });
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search_columns(
    g1: &SimpleGraph,
    order: &[usize],
    depth: usize,
    columns: &mut Vec<Vec<u32>>,
    span: &mut EchelonBasis,
    r2: &EchelonBasis,
    candidates: &[Vec<u32>],
    p: u32,
    n: usize,
) -> bool {
    if depth == n {
        return true;
    }
    let v = order[depth];
    'next: for cand in candidates {
        // linear independence of the columns chosen so far
        if span.contains(cand) {
            continue;
        }
        // every edge {u, v} with u already placed must map into R2
        for &u in &order[..depth] {
            if g1.adjacent(u, v) {
                let w = wedge_of(&columns[u], cand, u < v, p, n);
                if !r2.contains(&w) {
                    continue 'next;
                }
            }
        }
        let rows_before = span.rows.clone();
        span.insert(cand.clone(), n);
        columns[v] = cand.clone();
        if search_columns(g1, order, depth + 1, columns, span, r2, candidates, p, n) {
            return true;
        }
        columns[v].clear();
        span.rows = rows_before;
    }
    false
}

/// `S_u ∧ S_v` in wedge coordinates (ordered so the pair corresponds to the
/// source edge with `min(u,v)` first).
fn wedge_of(cu: &[u32], cv: &[u32], u_before_v: bool, p: u32, n: usize) -> Vec<u32> {
    let (x, y) = if u_before_v { (cu, cv) } else { (cv, cu) };
    let mut w = vec![0u32; n * (n - 1) / 2];
    for i in 0..n {
        for j in i + 1..n {
            let val = (x[i] * y[j] % p + p - x[j] * y[i] % p) % p;
            w[wedge_index(i, j, n)] = val;
        }
    }
    w
}
