//! Finite groups: table-backed concrete groups, generic group-operation
//! traits for oracle-backed constructions, and closure utilities.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};

/// Group operations over an abstract element type. Implemented by the
/// table-backed [`FinGroup`] and by lazily evaluated constructions
/// (products, semidirect products, Mekler groups).
pub trait GroupOps {
    type E: Clone + Eq + Hash + Ord + Debug;

    fn id(&self) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn generators(&self) -> Vec<Self::E>;
    fn describe(&self, e: &Self::E) -> String;

    fn conj(&self, h: &Self::E, g: &Self::E) -> Self::E {
        let hg = self.mul(h, g);
        self.mul(&hg, &self.inv(h))
    }

    fn commutator(&self, a: &Self::E, b: &Self::E) -> Self::E {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&ab, &self.inv(&ba))
    }
}

/// A group whose elements can be listed exhaustively.
pub trait EnumerableGroup: GroupOps {
    fn elements(&self) -> Vec<Self::E>;

    fn order(&self) -> usize {
        self.elements().len()
    }
}

/// A finite group with elements `0..n` and a full multiplication table.
#[derive(Debug, Clone)]
pub struct FinGroup {
    names: Vec<String>,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
    gens: Vec<u32>,
}

impl FinGroup {
    /// Builds and validates a group from a raw multiplication table.
    ///
    /// Identity and inverse laws are checked in full; associativity is
    /// exhaustive up to order 64 and sampled (seeded, 20k triples) above.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<u32>>) -> Result<FinGroup> {
        let n = names.len();
        if n == 0 {
            return Err(Error::invalid("group must be nonempty"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("multiplication table must be n×n"));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            for &v in row {
                if v as usize >= n {
                    return Err(Error::invalid(format!("table entry {v} out of range")));
                }
                flat.push(v);
            }
        }
        let mul = |a: usize, b: usize| flat[a * n + b] as usize;

        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|a| mul(e, a) == a && mul(a, e) == a) {
                identity = Some(e);
                break;
            }
        }
        let identity =
            identity.ok_or_else(|| Error::invalid("table has no identity element"))? as u32;

        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul(a, b) == identity as usize && mul(b, a) == identity as usize)
            {
                Some(b) => inv[a] = b as u32,
                None => {
                    return Err(Error::invalid(format!(
                        "element {} has no two-sided inverse",
                        names[a]
                    )))
                }
            }
        }

        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                return Err(Error::invalid(format!(
                    "table not associative at ({}, {}, {})",
                    names[a], names[b], names[c]
                )));
            }
            Ok(())
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha12Rng::seed_from_u64(0x617373);
            for _ in 0..20_000 {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }

        Ok(FinGroup {
            names,
            table: flat,
            inv,
            identity,
            gens: (0..n as u32).collect(),
        })
    }

    fn from_table_unchecked(names: Vec<String>, flat: Vec<u32>, identity: u32) -> FinGroup {
        let n = names.len();
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n as u32)
                .find(|&b| flat[a * n + b as usize] == identity)
                .expect("group table closed");
        }
        FinGroup {
            names,
            table: flat,
            inv,
            identity,
            gens: (0..n as u32).collect(),
        }
    }

    pub fn with_generators(mut self, gens: Vec<u32>) -> FinGroup {
        self.gens = gens;
        self
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order() + b as usize]
    }

    pub fn inv_idx(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn name(&self, a: u32) -> &str {
        &self.names[a as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// The trivial group.
    pub fn trivial() -> FinGroup {
        FinGroup::cyclic(1)
    }

    /// ℤ/n with elements named `0..n`.
    pub fn cyclic(n: usize) -> FinGroup {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                flat.push(((a + b) % n) as u32);
            }
        }
        let gens = if n > 1 { vec![1] } else { vec![0] };
        FinGroup::from_table_unchecked(names, flat, 0).with_generators(gens)
    }

    /// Closure of a set of permutations of `0..points`, as a table group.
    pub fn from_permutations(points: usize, gens: &[Vec<usize>], cap: usize) -> Result<FinGroup> {
        for g in gens {
            if g.len() != points || !is_permutation(g) {
                return Err(Error::invalid("generator is not a permutation"));
            }
        }
        let id: Vec<usize> = (0..points).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q: Vec<usize> = (0..points).map(|i| g[p[i]]).collect();
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::cap(format!(
                            "permutation closure exceeded {cap} elements"
                        )));
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Vec<usize>> = seen.into_iter().collect();
        elements.sort();
        let index: HashMap<&[usize], u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i as u32))
            .collect();
        let n = elements.len();
        let mut flat = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let prod: Vec<usize> = (0..points).map(|i| a[b[i]]).collect();
                flat.push(index[prod.as_slice()]);
            }
        }
        let names = elements
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect();
        let identity = index[(0..points).collect::<Vec<_>>().as_slice()];
        let gen_idx = gens
            .iter()
            .map(|g| index[g.as_slice()])
            .collect::<Vec<_>>();
        Ok(FinGroup::from_table_unchecked(names, flat, identity).with_generators(gen_idx))
    }

    /// Symmetric group on `n` points.
    pub fn symmetric(n: usize) -> FinGroup {
        assert!(n >= 1);
        if n == 1 {
            return FinGroup::trivial();
        }
        let mut cycle: Vec<usize> = (1..n).collect();
        cycle.push(0);
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        FinGroup::from_permutations(n, &[cycle, swap], 1 << 20).unwrap()
    }

    /// Alternating group on `n` points (n ≥ 3).
    pub fn alternating(n: usize) -> FinGroup {
        assert!(n >= 3);
        let mut three: Vec<usize> = (0..n).collect();
        three[0] = 1;
        three[1] = 2;
        three[2] = 0;
        let mut gens = vec![three];
        if n > 3 {
            if n % 2 == 1 {
                let mut cycle: Vec<usize> = (1..n).collect();
                cycle.push(0);
                gens.push(cycle);
            } else {
                // (0 1)(2 3 ... n-1) is even when n is even
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(0, 1);
                let tail: Vec<usize> = (2..n).collect();
                for (i, &v) in tail.iter().enumerate() {
                    p[v] = tail[(i + 1) % tail.len()];
                }
                gens.push(p);
            }
        }
        FinGroup::from_permutations(n, &gens, 1 << 20).unwrap()
    }

    /// Dihedral group of order `2n` (symmetries of the regular n-gon, n ≥ 3).
    pub fn dihedral(n: usize) -> FinGroup {
        assert!(n >= 3);
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FinGroup::from_permutations(n, &[rotation, reflection], 1 << 20).unwrap()
    }

    /// The quaternion group of order 8.
    pub fn quaternion8() -> FinGroup {
        // elements encoded as (sign, axis) with axes 1, i, j, k
        let names: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let code = |idx: usize| -> (i8, usize) { (if idx % 2 == 0 { 1 } else { -1 }, idx / 2) };
        let decode =
            |sign: i8, axis: usize| -> u32 { (axis * 2 + if sign > 0 { 0 } else { 1 }) as u32 };
        let axis_mul = |a: usize, b: usize| -> (i8, usize) {
            match (a, b) {
                (0, x) => (1, x),
                (x, 0) => (1, x),
                (x, y) if x == y => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            }
        };
        let mut flat = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let (sa, xa) = code(a);
                let (sb, xb) = code(b);
                let (s, x) = axis_mul(xa, xb);
                flat.push(decode(sa * sb * s, x));
            }
        }
        FinGroup::from_table_unchecked(names, flat, 0).with_generators(vec![2, 4])
    }

    /// Direct product, elements named `(a,b)`.
    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> FinGroup {
        let na = a.order();
        let nb = b.order();
        let n = na * nb;
        let mut names = Vec::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                names.push(format!("({},{})", a.name(i as u32), b.name(j as u32)));
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                let pa = a.mul_idx(xa as u32, ya as u32) as usize;
                let pb = b.mul_idx(xb as u32, yb as u32) as usize;
                flat.push((pa * nb + pb) as u32);
            }
        }
        let identity = a.identity as usize * nb + b.identity as usize;
        let mut gens = Vec::new();
        for &g in &a.gens {
            gens.push(g * nb as u32 + b.identity);
        }
        for &g in &b.gens {
            gens.push(a.identity * nb as u32 + g);
        }
        FinGroup::from_table_unchecked(names, flat, identity as u32).with_generators(gens)
    }

    /// Number of conjugacy classes.
    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = 0;
        for g in 0..n as u32 {
            if assigned[g as usize] {
                continue;
            }
            classes += 1;
            for h in 0..n as u32 {
                let c = self.mul_idx(self.mul_idx(h, g), self.inv_idx(h));
                assigned[c as usize] = true;
            }
        }
        classes
    }

    /// The regular permutation action of the group on itself, `g ↦ (x ↦ gx)`.
    pub fn regular_permutations(&self) -> Vec<Vec<usize>> {
        (0..self.order() as u32)
            .map(|g| {
                (0..self.order() as u32)
                    .map(|x| self.mul_idx(g, x) as usize)
                    .collect()
            })
            .collect()
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl GroupOps for FinGroup {
    type E = u32;

    fn id(&self) -> u32 {
        self.identity
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_idx(*a, *b)
    }

    fn inv(&self, a: &u32) -> u32 {
        self.inv_idx(*a)
    }

    fn generators(&self) -> Vec<u32> {
        self.gens.clone()
    }

    fn describe(&self, e: &u32) -> String {
        self.name(*e).to_string()
    }
}

impl EnumerableGroup for FinGroup {
    fn elements(&self) -> Vec<u32> {
        (0..self.order() as u32).collect()
    }

    fn order(&self) -> usize {
        FinGroup::order(self)
    }
}

/// Direct product of two oracle groups.
pub struct ProductGroup<'a, A: GroupOps, B: GroupOps> {
    pub left: &'a A,
    pub right: &'a B,
}

impl<A: GroupOps, B: GroupOps> GroupOps for ProductGroup<'_, A, B> {
    type E = (A::E, B::E);

    fn id(&self) -> Self::E {
        (self.left.id(), self.right.id())
    }

    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        (self.left.mul(&a.0, &b.0), self.right.mul(&a.1, &b.1))
    }

    fn inv(&self, a: &Self::E) -> Self::E {
        (self.left.inv(&a.0), self.right.inv(&a.1))
    }

    fn generators(&self) -> Vec<Self::E> {
        let mut gens = Vec::new();
        for g in self.left.generators() {
            gens.push((g, self.right.id()));
        }
        for h in self.right.generators() {
            gens.push((self.left.id(), h));
        }
        gens
    }

    fn describe(&self, e: &Self::E) -> String {
        format!(
            "({},{})",
            self.left.describe(&e.0),
            self.right.describe(&e.1)
        )
    }
}

impl<A: EnumerableGroup, B: EnumerableGroup> EnumerableGroup for ProductGroup<'_, A, B> {
    fn elements(&self) -> Vec<Self::E> {
        let mut out = Vec::with_capacity(self.left.order() * self.right.order());
        for a in self.left.elements() {
            for b in self.right.elements() {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }

    fn order(&self) -> usize {
        self.left.order() * self.right.order()
    }
}

/// BFS closure of `seed` under multiplication by the seed elements and their
/// inverses; errors when the closure exceeds `cap`.
pub fn subgroup_closure<G: GroupOps>(group: &G, seed: &[G::E], cap: usize) -> Result<Vec<G::E>> {
    let mut gens: Vec<G::E> = seed.to_vec();
    gens.extend(seed.iter().map(|g| group.inv(g)));
    let mut seen: HashSet<G::E> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(group.id());
    queue.push_back(group.id());
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = group.mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::cap(format!("subgroup closure exceeded {cap}")));
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<G::E> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Closure of a large seed set, keeping only the seeds that enlarge the
/// running subgroup. Avoids quadratic blowup when the seed list is itself
/// close to the subgroup it generates.
pub fn subgroup_closure_greedy<G: GroupOps>(
    group: &G,
    seeds: impl IntoIterator<Item = G::E>,
    cap: usize,
) -> Result<HashSet<G::E>> {
    let mut kept: Vec<G::E> = Vec::new();
    let mut closure: HashSet<G::E> = HashSet::new();
    closure.insert(group.id());
    for s in seeds {
        if closure.contains(&s) {
            continue;
        }
        kept.push(s);
        let listed = subgroup_closure(group, &kept, cap)?;
        closure = listed.into_iter().collect();
    }
    Ok(closure)
}

/// The commutator subgroup `[G,G]`: the normal closure of the commutators of
/// the generating set.
pub fn commutator_subgroup<G: GroupOps>(group: &G, cap: usize) -> Result<HashSet<G::E>> {
    let gens = group.generators();
    let mut seeds = Vec::new();
    for a in &gens {
        for b in &gens {
            let c = group.commutator(a, b);
            if c != group.id() {
                seeds.push(c);
            }
        }
    }
    // Conjugation orbit of the seeds under the group generators, then the
    // subgroup those conjugates generate.
    let mut conjugators = gens.clone();
    conjugators.extend(gens.iter().map(|g| group.inv(g)));
    let mut orbit: HashSet<G::E> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<G::E> = seeds.into_iter().collect();
    while let Some(x) = queue.pop_front() {
        for c in &conjugators {
            let y = group.conj(c, &x);
            if orbit.insert(y.clone()) {
                if orbit.len() > cap {
                    return Err(Error::cap(format!("conjugation orbit exceeded {cap}")));
                }
                queue.push_back(y);
            }
        }
    }
    let mut orbit_vec: Vec<G::E> = orbit.into_iter().collect();
    orbit_vec.sort();
    subgroup_closure_greedy(group, orbit_vec, cap)
}

/// The center `{g : gh = hg for all h}`, computed against the generators.
pub fn center_elements<G: EnumerableGroup>(group: &G) -> Vec<G::E> {
    let gens = group.generators();
    group
        .elements()
        .into_iter()
        .filter(|g| gens.iter().all(|h| group.mul(g, h) == group.mul(h, g)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_are_cyclic() {
        let z6 = FinGroup::cyclic(6);
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.conjugacy_class_count(), 6);
        assert_eq!(z6.mul_idx(4, 5), 3);
        assert_eq!(z6.inv_idx(2), 4);
    }

    #[test]
    fn named_groups_have_expected_orders_and_classes() {
        let s3 = FinGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.conjugacy_class_count(), 3);

        let s4 = FinGroup::symmetric(4);
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.conjugacy_class_count(), 5);

        let a4 = FinGroup::alternating(4);
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.conjugacy_class_count(), 4);

        let a5 = FinGroup::alternating(5);
        assert_eq!(a5.order(), 60);
        assert_eq!(a5.conjugacy_class_count(), 5);

        let d4 = FinGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.conjugacy_class_count(), 5);

        let q8 = FinGroup::quaternion8();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.conjugacy_class_count(), 5);
    }

    #[test]
    fn quaternion_table_is_a_group() {
        let q8 = FinGroup::quaternion8();
        // i·j = k and j·i = -k
        let i = q8.index_of("i").unwrap();
        let j = q8.index_of("j").unwrap();
        assert_eq!(q8.name(q8.mul_idx(i, j)), "k");
        assert_eq!(q8.name(q8.mul_idx(j, i)), "-k");
        // re-validate through the checked constructor
        let table: Vec<Vec<u32>> = (0..8)
            .map(|a| (0..8).map(|b| q8.mul_idx(a, b)).collect())
            .collect();
        FinGroup::from_table(q8.names().to_vec(), table).unwrap();
    }

    #[test]
    fn from_table_rejects_non_groups() {
        let bad = FinGroup::from_table(
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![0, 0]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn product_and_commutator_subgroup() {
        let a5 = FinGroup::alternating(5);
        let z2 = FinGroup::cyclic(2);
        let g = FinGroup::direct_product(&a5, &z2);
        assert_eq!(g.order(), 120);
        let derived = commutator_subgroup(&g, 10_000).unwrap();
        // [A5 × Z2, ·] = A5 × {0}
        assert_eq!(derived.len(), 60);
        let z = center_elements(&g);
        assert_eq!(z.len(), 2);
    }

    #[test]
    fn closure_caps_are_enforced() {
        let s4 = FinGroup::symmetric(4);
        let all: Vec<u32> = s4.elements();
        assert!(subgroup_closure(&s4, &all, 5).is_err());
    }
}
