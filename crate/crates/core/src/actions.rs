//! Finite measure-preserving group actions: validation, freeness and
//! ergodicity reports, orbit signatures and orbit equivalence, plus the two
//! concrete action families (Bernoulli shifts and mod-N torus actions).
//!
//! On a finite space whose atoms all carry strictly positive mass, the
//! measure-theoretic notions collapse to combinatorics: invariant sets are
//! unions of orbits, so *ergodic* means a single orbit, and *a.e. free*
//! means no nonidentity element fixes any atom.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::FinGroup;

pub type Weight = BigRational;

pub fn ratio(num: i64, den: i64) -> Weight {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn weight_to_f64(w: &Weight) -> f64 {
    w.to_f64().expect("rational weight fits in f64")
}

/// A finite atomic probability space. Weights are exact rationals; float
/// inputs are converted to their exact binary value first, so equality
/// checks on weights are always exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteProbSpace {
    pub atoms: Vec<String>,
    pub weights: Vec<Weight>,
}

impl FiniteProbSpace {
    pub fn new(atoms: Vec<String>, weights: Vec<Weight>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != weights.len() {
            return Err(Error::invalid(
                "space needs matching, nonempty atom and weight lists",
            ));
        }
        for w in &weights {
            if !w.is_positive() {
                return Err(Error::invalid("atom weights must be strictly positive"));
            }
        }
        let total: Weight = weights.iter().sum();
        if !total.is_one() {
            let drift = (weight_to_f64(&total) - 1.0).abs();
            if drift > 1e-9 {
                return Err(Error::invalid(format!(
                    "weights sum to {total}, expected 1"
                )));
            }
        }
        Ok(FiniteProbSpace { atoms, weights })
    }

    pub fn uniform(n: usize) -> Self {
        FiniteProbSpace::new(
            (0..n).map(|i| i.to_string()).collect(),
            vec![ratio(1, n as i64); n],
        )
        .unwrap()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// The complete finite invariant of an orbit equivalence class: the multiset
/// of orbits, each described by its sorted list of atom weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSignature(Vec<Vec<Weight>>);

impl OrbitSignature {
    pub fn from_orbits(space: &FiniteProbSpace, orbits: &[Vec<usize>]) -> Self {
        let mut descriptors: Vec<Vec<Weight>> = orbits
            .iter()
            .map(|orbit| {
                let mut ws: Vec<Weight> = orbit.iter().map(|&x| space.weights[x].clone()).collect();
                ws.sort();
                ws
            })
            .collect();
        descriptors.sort();
        OrbitSignature(descriptors)
    }

    pub fn descriptors(&self) -> &[Vec<Weight>] {
        &self.0
    }
}

impl Serialize for OrbitSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for orbit in &self.0 {
            let strings: Vec<String> = orbit.iter().map(|w| w.to_string()).collect();
            seq.serialize_element(&strings)?;
        }
        seq.end()
    }
}

/// A validated measure-preserving action of a finite group on a finite
/// probability space, one permutation of the atoms per group element.
#[derive(Debug, Clone)]
pub struct FiniteAction {
    pub group: FinGroup,
    pub space: FiniteProbSpace,
    perms: Vec<Vec<usize>>,
}

/// Freeness/ergodicity report together with the orbit partition.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ActionReport {
    pub is_free: bool,
    pub is_ergodic: bool,
    pub orbits: Vec<Vec<usize>>,
    pub signature: OrbitSignature,
}

/// Validates and constructs a finite action (the `make_action` operation).
pub fn make_action(
    group: FinGroup,
    space: FiniteProbSpace,
    perms: Vec<Vec<usize>>,
) -> Result<FiniteAction> {
    let n = space.len();
    if perms.len() != group.order() {
        return Err(Error::invalid(format!(
            "need one permutation per group element ({} given, order {})",
            perms.len(),
            group.order()
        )));
    }
    for (g, p) in perms.iter().enumerate() {
        if p.len() != n {
            return Err(Error::invalid(format!(
                "permutation for {} has wrong length",
                group.name(g as u32)
            )));
        }
        let mut seen = vec![false; n];
        for &x in p {
            if x >= n || seen[x] {
                return Err(Error::invalid(format!(
                    "map for {} is not a permutation of the atoms",
                    group.name(g as u32)
                )));
            }
            seen[x] = true;
        }
    }
    // measure preservation: weight(g·x) = weight(x), exact comparison
    for (g, p) in perms.iter().enumerate() {
        for x in 0..n {
            if space.weights[p[x]] != space.weights[x] {
                return Err(Error::NotMeasurePreserving {
                    g: group.name(g as u32).to_string(),
                    atom: space.atoms[x].clone(),
                });
            }
        }
    }
    // homomorphism: perm(g)∘perm(h) = perm(gh) on every atom
    for g in 0..group.order() as u32 {
        for h in 0..group.order() as u32 {
            let gh = group.mul_idx(g, h);
            for x in 0..n {
                if perms[g as usize][perms[h as usize][x]] != perms[gh as usize][x] {
                    return Err(Error::HomomorphismFailure {
                        g: group.name(g).to_string(),
                        h: group.name(h).to_string(),
                        atom: space.atoms[x].clone(),
                    });
                }
            }
        }
    }
    Ok(FiniteAction {
        group,
        space,
        perms,
    })
}

impl FiniteAction {
    pub fn apply(&self, g: u32, atom: usize) -> usize {
        self.perms[g as usize][atom]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Orbit partition, each orbit sorted, orbits ordered by least atom.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.space.len();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut stack = vec![x];
            seen[x] = true;
            while let Some(y) = stack.pop() {
                orbit.push(y);
                for p in &self.perms {
                    let z = p[y];
                    if !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn signature(&self) -> OrbitSignature {
        OrbitSignature::from_orbits(&self.space, &self.orbits())
    }

    /// Freeness, ergodicity, orbits and the orbit signature.
    pub fn report(&self) -> ActionReport {
        let orbits = self.orbits();
        let e = self.group.identity_index() as usize;
        let is_free = self
            .perms
            .iter()
            .enumerate()
            .all(|(g, p)| g == e || (0..self.space.len()).all(|x| p[x] != x));
        ActionReport {
            is_free,
            is_ergodic: orbits.len() == 1,
            signature: OrbitSignature::from_orbits(&self.space, &orbits),
            orbits,
        }
    }

    /// Disjoint union of `weights.len()` copies of the regular action, the
    /// general form of a free action. Orbit `i` carries total mass
    /// `weights[i]`, spread uniformly over its `|G|` atoms.
    pub fn disjoint_regular(group: FinGroup, orbit_weights: &[Weight]) -> Result<FiniteAction> {
        let n = group.order();
        let k = orbit_weights.len();
        let mut atoms = Vec::with_capacity(n * k);
        let mut weights = Vec::with_capacity(n * k);
        for (i, w) in orbit_weights.iter().enumerate() {
            for g in 0..n as u32 {
                atoms.push(format!("o{i}:{}", group.name(g)));
                weights.push(w / BigInt::from(n as i64));
            }
        }
        let space = FiniteProbSpace::new(atoms, weights)?;
        let regular = group.regular_permutations();
        let perms: Vec<Vec<usize>> = (0..n)
            .map(|g| {
                let mut p = Vec::with_capacity(n * k);
                for copy in 0..k {
                    for x in 0..n {
                        p.push(copy * n + regular[g][x]);
                    }
                }
                p
            })
            .collect();
        make_action(group, space, perms)
    }

    /// The trivial action of `group` on `space`.
    pub fn trivial(group: FinGroup, space: FiniteProbSpace) -> Result<FiniteAction> {
        let id: Vec<usize> = (0..space.len()).collect();
        let perms = vec![id; group.order()];
        make_action(group, space, perms)
    }

    /// Action through permutations of `points` given per group element.
    pub fn from_point_permutations(
        group: FinGroup,
        space: FiniteProbSpace,
        perms: Vec<Vec<usize>>,
    ) -> Result<FiniteAction> {
        make_action(group, space, perms)
    }
}

/// Orbit equivalence: a measure-preserving bijection matching orbits to
/// orbits exists iff the orbit signatures agree as multisets.
pub fn orbit_equivalent(a: &FiniteAction, b: &FiniteAction) -> bool {
    a.signature() == b.signature()
}

/// The left Bernoulli shift of `group` over a base space: points are
/// functions `G → base`, the shift acts by `(g·x)(h) = x(g⁻¹h)`, and the
/// product measure is preserved by construction (still re-validated).
pub fn bernoulli_action(
    group: &FinGroup,
    base: &FiniteProbSpace,
    caps: &Caps,
) -> Result<FiniteAction> {
    let b = base.len();
    let n = group.order();
    let total = b.checked_pow(n as u32).filter(|&t| t <= caps.bernoulli_atoms);
    let total = total.ok_or_else(|| {
        Error::cap(format!(
            "Bernoulli space |base|^|G| = {b}^{n} exceeds cap {}",
            caps.bernoulli_atoms
        ))
    })?;

    let single_char = base.atoms.iter().all(|a| a.chars().count() == 1);
    let digits = |mut idx: usize| -> Vec<usize> {
        let mut d = vec![0usize; n];
        for slot in d.iter_mut() {
            *slot = idx % b;
            idx /= b;
        }
        d
    };
    let mut atoms = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    for idx in 0..total {
        let d = digits(idx);
        let label: Vec<&str> = d.iter().map(|&v| base.atoms[v].as_str()).collect();
        atoms.push(if single_char {
            label.concat()
        } else {
            label.join(",")
        });
        let mut w = Weight::one();
        for &v in &d {
            w *= base.weights[v].clone();
        }
        weights.push(w);
    }
    let space = FiniteProbSpace::new(atoms, weights)?;

    let perms: Vec<Vec<usize>> = (0..n as u32)
        .map(|g| {
            let ginv = group.inv_idx(g);
            (0..total)
                .map(|idx| {
                    let d = digits(idx);
                    let mut out = 0usize;
                    let mut place = 1usize;
                    for h in 0..n as u32 {
                        let src = group.mul_idx(ginv, h) as usize;
                        out += d[src] * place;
                        place *= b;
                    }
                    out
                })
                .collect()
        })
        .collect();
    make_action(group.clone(), space, perms)
}

/// 2×2 integer matrix reduced mod N.
type MatModN = [u64; 4];

fn mat_mul_mod(a: &MatModN, b: &MatModN, n: u64) -> MatModN {
    [
        (a[0] * b[0] + a[1] * b[2]) % n,
        (a[0] * b[1] + a[1] * b[3]) % n,
        (a[2] * b[0] + a[3] * b[2]) % n,
        (a[2] * b[1] + a[3] * b[3]) % n,
    ]
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

fn mat_inverse_mod(m: &MatModN, n: u64) -> Option<MatModN> {
    let det = ((m[0] * m[3]) % n + n - (m[1] * m[2]) % n) % n;
    let det_inv = mod_inverse(det, n)?;
    Some([
        (m[3] * det_inv) % n,
        ((n - m[1] % n) % n * det_inv) % n,
        ((n - m[2] % n) % n * det_inv) % n,
        (m[0] * det_inv) % n,
    ])
}

/// Finite quotient of the linear torus action: the subgroup of 2×2 matrices
/// mod N generated by `mats` acting on the N² characters `y ↦ (g⁻¹)ᵀ y`.
pub fn torus_action(n: u64, mats: &[[[i64; 2]; 2]], caps: &Caps) -> Result<FiniteAction> {
    if n < 1 {
        return Err(Error::invalid("modulus N must be ≥ 1"));
    }
    let reduce = |m: &[[i64; 2]; 2]| -> MatModN {
        [
            m[0][0].rem_euclid(n as i64) as u64,
            m[0][1].rem_euclid(n as i64) as u64,
            m[1][0].rem_euclid(n as i64) as u64,
            m[1][1].rem_euclid(n as i64) as u64,
        ]
    };
    let mut gens: Vec<MatModN> = Vec::new();
    for m in mats {
        let red = reduce(m);
        if n > 1 && mat_inverse_mod(&red, n).is_none() {
            return Err(Error::invalid(format!(
                "matrix {m:?} is not invertible mod {n}"
            )));
        }
        gens.push(red);
    }
    let identity: MatModN = [1 % n, 0, 0, 1 % n];

    // closure under multiplication (finite, so inverses come for free)
    let mut elements = vec![identity];
    let mut index = std::collections::HashMap::new();
    index.insert(identity, 0u32);
    let mut frontier = vec![identity];
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let p = mat_mul_mod(&m, g, n.max(1));
            if !index.contains_key(&p) {
                if elements.len() >= caps.torus_closure {
                    return Err(Error::cap(format!(
                        "matrix group closure exceeded {}",
                        caps.torus_closure
                    )));
                }
                index.insert(p, elements.len() as u32);
                elements.push(p);
                frontier.push(p);
            }
        }
    }
    if elements.len() > caps.group_order {
        return Err(Error::cap(format!(
            "torus group order {} exceeds table cap {}",
            elements.len(),
            caps.group_order
        )));
    }

    let order = elements.len();
    let names: Vec<String> = elements
        .iter()
        .map(|m| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]))
        .collect();
    let mut table = vec![vec![0u32; order]; order];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            table[i][j] = index[&mat_mul_mod(a, b, n.max(1))];
        }
    }
    let group = FinGroup::from_table(names, table)?;

    let atoms: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("({i},{j})")))
        .collect();
    let space = FiniteProbSpace::new(
        atoms,
        vec![ratio(1, (n * n) as i64); (n * n) as usize],
    )?;
    let perms: Vec<Vec<usize>> = elements
        .iter()
        .map(|g| {
            let gi = if n == 1 {
                *g
            } else {
                mat_inverse_mod(g, n).expect("group elements invertible")
            };
            // transpose of g^{-1} applied to (i, j)
            (0..n * n)
                .map(|y| {
                    let (i, j) = (y / n, y % n);
                    let ni = (gi[0] * i + gi[2] * j) % n.max(1);
                    let nj = (gi[1] * i + gi[3] * j) % n.max(1);
                    (ni * n + nj) as usize
                })
                .collect()
        })
        .collect();
    make_action(group, space, perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn swap_action() -> FiniteAction {
        let z2 = FinGroup::cyclic(2);
        let space = FiniteProbSpace::uniform(2);
        make_action(z2, space, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn swap_is_valid_free_ergodic() {
        let a = swap_action();
        let r = a.report();
        assert!(r.is_free);
        assert!(r.is_ergodic);
        assert_eq!(r.orbits.len(), 1);
    }

    #[test]
    fn unbalanced_swap_is_not_measure_preserving() {
        let z2 = FinGroup::cyclic(2);
        let space = FiniteProbSpace::new(
            vec!["a".into(), "b".into()],
            vec![ratio(1, 3), ratio(2, 3)],
        )
        .unwrap();
        let err = make_action(z2, space, vec![vec![0, 1], vec![1, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotMeasurePreserving { .. }));
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let z2 = FinGroup::cyclic(2);
        let space = FiniteProbSpace::uniform(3);
        // "swap" squares to a 3-cycle? use g=1 mapping that is not an involution
        let err = make_action(z2, space, vec![vec![0, 1, 2], vec![1, 2, 0]]).unwrap_err();
        assert!(matches!(err, Error::HomomorphismFailure { .. }));
    }

    #[test]
    fn trivial_action_report() {
        let z2 = FinGroup::cyclic(2);
        let a = FiniteAction::trivial(z2, FiniteProbSpace::uniform(2)).unwrap();
        let r = a.report();
        assert!(!r.is_free);
        assert!(!r.is_ergodic);
        assert_eq!(r.orbits.len(), 2);
    }

    #[test]
    fn z4_rotation_is_free_ergodic() {
        let z4 = FinGroup::cyclic(4);
        let a = FiniteAction::disjoint_regular(z4, &[Weight::one()]).unwrap();
        let r = a.report();
        assert!(r.is_free && r.is_ergodic);
    }

    #[test]
    fn orbit_equivalence_examples() {
        // Z/4 rotation vs Klein group regular action: same signature
        let z4 = FinGroup::cyclic(4);
        let klein = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        let a = FiniteAction::disjoint_regular(z4, &[Weight::one()]).unwrap();
        let b = FiniteAction::disjoint_regular(klein, &[Weight::one()]).unwrap();
        assert!(orbit_equivalent(&a, &b));
        assert!(orbit_equivalent(&a, &a));

        let swap = swap_action();
        let trivial =
            FiniteAction::trivial(FinGroup::cyclic(2), FiniteProbSpace::uniform(2)).unwrap();
        assert!(!orbit_equivalent(&swap, &trivial));
    }

    /// Brute-force orbit-equivalence oracle: searches all weight-preserving
    /// bijections for one matching the orbit relations.
    fn oe_brute_force(a: &FiniteAction, b: &FiniteAction) -> bool {
        let n = a.space.len();
        if n != b.space.len() || n > 8 {
            return false;
        }
        let rel = |act: &FiniteAction| -> Vec<Vec<bool>> {
            let orbits = act.orbits();
            let mut m = vec![vec![false; act.space.len()]; act.space.len()];
            for orbit in orbits {
                for &x in &orbit {
                    for &y in &orbit {
                        m[x][y] = true;
                    }
                }
            }
            m
        };
        let ra = rel(a);
        let rb = rel(b);
        let mut perm: Vec<usize> = (0..n).collect();
        // Heap's-algorithm-free approach: just iterate lexicographic perms.
        loop {
            let weight_ok = (0..n).all(|x| a.space.weights[x] == b.space.weights[perm[x]]);
            if weight_ok {
                let rel_ok =
                    (0..n).all(|x| (0..n).all(|y| ra[x][y] == rb[perm[x]][perm[y]]));
                if rel_ok {
                    return true;
                }
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
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

    #[test]
    fn signature_oe_matches_brute_force_on_small_actions() {
        let z2 = FinGroup::cyclic(2);
        let z4 = FinGroup::cyclic(4);
        let klein = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        let candidates = vec![
            swap_action(),
            FiniteAction::trivial(z2.clone(), FiniteProbSpace::uniform(2)).unwrap(),
            FiniteAction::disjoint_regular(z4, &[Weight::one()]).unwrap(),
            FiniteAction::disjoint_regular(klein, &[Weight::one()]).unwrap(),
            FiniteAction::disjoint_regular(z2.clone(), &[ratio(1, 2), ratio(1, 2)]).unwrap(),
            FiniteAction::disjoint_regular(z2, &[ratio(1, 3), ratio(2, 3)]).unwrap(),
        ];
        for (i, a) in candidates.iter().enumerate() {
            for (j, b) in candidates.iter().enumerate() {
                if a.space.len() != b.space.len() {
                    continue;
                }
                assert_eq!(
                    orbit_equivalent(a, b),
                    oe_brute_force(a, b),
                    "signature and brute force disagree at pair ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn oe_is_an_equivalence_relation_on_catalog() {
        let z2 = FinGroup::cyclic(2);
        let z3 = FinGroup::cyclic(3);
        let actions = vec![
            swap_action(),
            FiniteAction::disjoint_regular(z2.clone(), &[ratio(1, 2), ratio(1, 2)]).unwrap(),
            FiniteAction::disjoint_regular(z3, &[Weight::one()]).unwrap(),
            FiniteAction::trivial(z2, FiniteProbSpace::uniform(2)).unwrap(),
        ];
        for a in &actions {
            assert!(orbit_equivalent(a, a));
        }
        for a in &actions {
            for b in &actions {
                assert_eq!(orbit_equivalent(a, b), orbit_equivalent(b, a));
                for c in &actions {
                    if orbit_equivalent(a, b) && orbit_equivalent(b, c) {
                        assert!(orbit_equivalent(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn bernoulli_z2_orbits() {
        let caps = Caps::default();
        let z2 = FinGroup::cyclic(2);
        let base = FiniteProbSpace::uniform(2);
        let a = bernoulli_action(&z2, &base, &caps).unwrap();
        assert_eq!(a.space.len(), 4);
        let r = a.report();
        assert_eq!(r.orbits.len(), 3);
        assert!(!r.is_free);
        assert!(!r.is_ergodic);
    }

    #[test]
    fn bernoulli_z3_orbits() {
        let caps = Caps::default();
        let z3 = FinGroup::cyclic(3);
        let base = FiniteProbSpace::uniform(2);
        let a = bernoulli_action(&z3, &base, &caps).unwrap();
        assert_eq!(a.space.len(), 8);
        let orbits = a.orbits();
        assert_eq!(orbits.len(), 4);
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 3, 3]);
    }

    #[test]
    fn bernoulli_biased_base_still_validates() {
        let caps = Caps::default();
        let z2 = FinGroup::cyclic(2);
        let base = FiniteProbSpace::new(
            vec!["0".into(), "1".into()],
            vec![ratio(1, 4), ratio(3, 4)],
        )
        .unwrap();
        // make_action inside bernoulli_action re-checks measure preservation
        let a = bernoulli_action(&z2, &base, &caps).unwrap();
        let idx01 = a.space.atoms.iter().position(|s| s == "01").unwrap();
        let idx10 = a.space.atoms.iter().position(|s| s == "10").unwrap();
        assert_eq!(a.space.weights[idx01], a.space.weights[idx10]);
        assert_eq!(a.space.weights[idx01], ratio(3, 16));
    }

    #[test]
    fn bernoulli_cap() {
        let caps = Caps::default();
        let z12 = FinGroup::cyclic(12);
        let base = FiniteProbSpace::uniform(3);
        assert!(matches!(
            bernoulli_action(&z12, &base, &caps),
            Err(Error::CapExceeded(_))
        ));
    }

    const A_MAT: [[i64; 2]; 2] = [[1, 2], [0, 1]];
    const B_MAT: [[i64; 2]; 2] = [[1, 0], [2, 1]];

    #[test]
    fn torus_mod2_is_trivial() {
        let caps = Caps::default();
        let a = torus_action(2, &[A_MAT, B_MAT], &caps).unwrap();
        assert_eq!(a.group.order(), 1);
        assert_eq!(a.space.len(), 4);
        assert_eq!(a.orbits().len(), 4);
    }

    #[test]
    fn torus_mod1_single_atom() {
        let caps = Caps::default();
        let a = torus_action(1, &[A_MAT, B_MAT], &caps).unwrap();
        assert_eq!(a.space.len(), 1);
        let r = a.report();
        assert!(r.is_ergodic);
    }

    #[test]
    fn torus_mod3_fixes_origin() {
        let caps = Caps::default();
        let a = torus_action(3, &[A_MAT, B_MAT], &caps).unwrap();
        // ⟨A, B⟩ mod 3 is all of SL(2, Z/3)
        assert_eq!(a.group.order(), 24);
        let r = a.report();
        assert!(!r.is_free);
        assert!(!r.is_ergodic);
        assert!(r.orbits.len() >= 2);
        // origin is fixed by every element
        let origin = a.space.atoms.iter().position(|s| s == "(0,0)").unwrap();
        for g in 0..a.group.order() as u32 {
            assert_eq!(a.apply(g, origin), origin);
        }
    }

    #[test]
    fn torus_rejects_singular_matrices() {
        let caps = Caps::default();
        let err = torus_action(4, &[[[2, 0], [0, 2]]], &caps).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn signatures_total_mass_one() {
        let caps = Caps::default();
        let z3 = FinGroup::cyclic(3);
        let a = bernoulli_action(&z3, &FiniteProbSpace::uniform(2), &caps).unwrap();
        let sig = a.signature();
        let total: Weight = sig
            .descriptors()
            .iter()
            .flat_map(|orbit| orbit.iter().cloned())
            .sum();
        assert!(total.is_one());
        // distinct atoms across orbits
        let all: HashSet<usize> = a.orbits().into_iter().flatten().collect();
        assert_eq!(all.len(), a.space.len());
    }
}
