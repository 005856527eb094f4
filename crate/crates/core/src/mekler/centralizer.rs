//! Semidirect products with verified automorphism actions, and the
//! character-support centralizer experiment.
//!
//! For a finite group the characters (one-dimensional representations)
//! separate exactly the nontrivial classes of the abelianization, so the
//! support set `D = {g : some character is nontrivial on g}` is the
//! complement of the commutator subgroup. The operation returns the
//! centralizer of `D`, computed by scanning every element against `D`.

use std::collections::HashSet;

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groups::{commutator_subgroup, EnumerableGroup, FinGroup, GroupOps, ProductGroup};
use crate::mekler::graph::{copies_graph, copy_swap_permutation, SimpleGraph};
use crate::mekler::group::MeklerGroup;
use crate::mekler::iso::{induced_group_iso, InducedIso};

/// `N ⋊ H` with an explicit action `H → Aut(N)` given as a closure.
/// The constructor spot-checks the automorphism laws on seeded samples.
pub struct SemidirectGroup<'a, N: EnumerableGroup, H: EnumerableGroup> {
    pub normal: &'a N,
    pub acting: &'a H,
    act: Box<dyn Fn(&H::E, &N::E) -> N::E + Sync + 'a>,
}

impl<'a, N: EnumerableGroup, H: EnumerableGroup> SemidirectGroup<'a, N, H> {
    pub fn new(
        normal: &'a N,
        acting: &'a H,
        act: Box<dyn Fn(&H::E, &N::E) -> N::E + Sync + 'a>,
        caps: &Caps,
    ) -> Result<Self> {
        let order = normal
            .order()
            .checked_mul(acting.order())
            .filter(|&o| o <= caps.enumeration)
            .ok_or_else(|| {
                Error::cap(format!(
                    "semidirect product order exceeds cap {}",
                    caps.enumeration
                ))
            })?;
        let _ = order;
        let group = SemidirectGroup {
            normal,
            acting,
            act,
        };
        group.verify_action(2_000, 0x5e3d)?;
        Ok(group)
    }

    fn act_on(&self, h: &H::E, g: &N::E) -> N::E {
        (self.act)(h, g)
    }

    /// Sampled verification: each `act(h)` is a homomorphism fixing the
    /// identity, and `act` itself is a homomorphism `H → Aut(N)`.
    fn verify_action(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let n_elems = self.normal.elements();
        let h_elems = self.acting.elements();
        for h in &h_elems {
            if self.act_on(h, &self.normal.id()) != self.normal.id() {
                return Err(Error::invalid("action does not fix the identity"));
            }
        }
        for _ in 0..samples {
            let h = &h_elems[rng.gen_range(0..h_elems.len())];
            let a = &n_elems[rng.gen_range(0..n_elems.len())];
            let b = &n_elems[rng.gen_range(0..n_elems.len())];
            if self.act_on(h, &self.normal.mul(a, b))
                != self
                    .normal
                    .mul(&self.act_on(h, a), &self.act_on(h, b))
            {
                return Err(Error::invalid("act(h) is not a homomorphism"));
            }
            let h2 = &h_elems[rng.gen_range(0..h_elems.len())];
            let lhs = self.act_on(&self.acting.mul(h, h2), a);
            let rhs = self.act_on(h, &self.act_on(h2, a));
            if lhs != rhs {
                return Err(Error::invalid("act is not a homomorphism into Aut(N)"));
            }
        }
        Ok(())
    }
}

impl<N: EnumerableGroup, H: EnumerableGroup> GroupOps for SemidirectGroup<'_, N, H> {
    type E = (N::E, H::E);

    fn id(&self) -> Self::E {
        (self.normal.id(), self.acting.id())
    }

    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        (
            self.normal.mul(&a.0, &self.act_on(&a.1, &b.0)),
            self.acting.mul(&a.1, &b.1),
        )
    }

    fn inv(&self, a: &Self::E) -> Self::E {
        let hinv = self.acting.inv(&a.1);
        (self.act_on(&hinv, &self.normal.inv(&a.0)), hinv)
    }

    fn generators(&self) -> Vec<Self::E> {
        let mut gens: Vec<Self::E> = self
            .normal
            .generators()
            .into_iter()
            .map(|g| (g, self.acting.id()))
            .collect();
        gens.extend(
            self.acting
                .generators()
                .into_iter()
                .map(|h| (self.normal.id(), h)),
        );
        gens
    }

    fn describe(&self, e: &Self::E) -> String {
        format!(
            "({}⋊{})",
            self.normal.describe(&e.0),
            self.acting.describe(&e.1)
        )
    }
}

impl<N: EnumerableGroup, H: EnumerableGroup> EnumerableGroup for SemidirectGroup<'_, N, H> {
    fn elements(&self) -> Vec<Self::E> {
        let mut out = Vec::with_capacity(self.order());
        for g in self.normal.elements() {
            for h in self.acting.elements() {
                out.push((g.clone(), h.clone()));
            }
        }
        out
    }

    fn order(&self) -> usize {
        self.normal.order() * self.acting.order()
    }
}

/// Table-backed semidirect product of two table groups, with the action
/// given per `H`-element as a permutation of `N`'s indices.
pub fn semidirect_table(normal: &FinGroup, acting: &FinGroup, act: &[Vec<u32>]) -> Result<FinGroup> {
    let n = normal.order();
    let h = acting.order();
    if act.len() != h || act.iter().any(|a| a.len() != n) {
        return Err(Error::invalid("need one automorphism table per H element"));
    }
    // verify automorphisms exhaustively (table scale)
    for (hi, table) in act.iter().enumerate() {
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if table[normal.mul_idx(a, b) as usize]
                    != normal.mul_idx(table[a as usize], table[b as usize])
                {
                    return Err(Error::invalid(format!(
                        "act({}) is not an automorphism",
                        acting.name(hi as u32)
                    )));
                }
            }
        }
    }
    let names: Vec<String> = (0..n * h)
        .map(|i| {
            format!(
                "({}⋊{})",
                normal.name((i / h) as u32),
                acting.name((i % h) as u32)
            )
        })
        .collect();
    let mut table = vec![vec![0u32; n * h]; n * h];
    for g1 in 0..n as u32 {
        for h1 in 0..h as u32 {
            for g2 in 0..n as u32 {
                for h2 in 0..h as u32 {
                    let acted = act[h1 as usize][g2 as usize];
                    let g = normal.mul_idx(g1, acted);
                    let hh = acting.mul_idx(h1, h2);
                    table[(g1 as usize) * h + h1 as usize][(g2 as usize) * h + h2 as usize] =
                        g * h as u32 + hh;
                }
            }
        }
    }
    FinGroup::from_table(names, table)
}

/// Result of the character-support centralizer computation.
#[derive(Debug, Clone)]
pub struct CharSupportReport<E> {
    /// `|[G,G]|`; the support `D` is its complement.
    pub derived_order: usize,
    pub group_order: usize,
    /// `D` is empty exactly when the group is perfect.
    pub support_empty: bool,
    /// Elements commuting with all of `D`, sorted.
    pub centralizer: Vec<E>,
}

/// Computes `D = {g : χ(g) ≠ 1 for some character χ}` (the complement of
/// the commutator subgroup) and returns its centralizer by brute-force
/// scan. The scan order is a seeded shuffle so failing witnesses are found
/// quickly regardless of enumeration order.
pub fn char_support_centralizer<G: EnumerableGroup>(
    group: &G,
    caps: &Caps,
) -> Result<CharSupportReport<G::E>> {
    let elements = group.elements();
    if elements.len() > caps.enumeration {
        return Err(Error::cap(format!(
            "group order {} exceeds enumeration cap {}",
            elements.len(),
            caps.enumeration
        )));
    }
    let derived: HashSet<G::E> = commutator_subgroup(group, caps.enumeration)?;
    let group_order = elements.len();
    let derived_order = derived.len();

    if derived_order == group_order {
        // perfect group: no nontrivial characters, D = ∅, centralizer = G
        let mut centralizer = elements;
        centralizer.sort();
        return Ok(CharSupportReport {
            derived_order,
            group_order,
            support_empty: true,
            centralizer,
        });
    }

    let mut scan_order: Vec<usize> = (0..elements.len()).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(0xd5ca);
    scan_order.shuffle(&mut rng);

    let mut centralizer = Vec::new();
    'candidates: for x in &elements {
        for &i in &scan_order {
            let d = &elements[i];
            if derived.contains(d) {
                continue;
            }
            if group.mul(x, d) != group.mul(d, x) {
                continue 'candidates;
            }
        }
        centralizer.push(x.clone());
    }
    centralizer.sort();
    Ok(CharSupportReport {
        derived_order,
        group_order,
        support_empty: false,
        centralizer,
    })
}

/// The finite stand-in for the copies-graph semidirect construction:
/// `G(k copies of Γ) ⋊ ℤ/2`, with ℤ/2 swapping the first two copies
/// through the lifted graph automorphism.
pub struct MeklerSwapSemidirect {
    pub mekler: MeklerGroup,
    pub z2: FinGroup,
    pub swap: InducedIso,
    /// Swap images indexed by `element_index`, precomputed when the group
    /// is small enough to table.
    swap_table: Option<Vec<crate::mekler::group::MeklerElement>>,
}

impl MeklerSwapSemidirect {
    pub fn new(base: &SimpleGraph, copies: usize, p: u32, caps: &Caps) -> Result<Self> {
        if copies < 2 {
            return Err(Error::invalid("need at least two copies to swap"));
        }
        let doubled = copies_graph(base, copies, caps)?;
        let mekler = MeklerGroup::new(doubled, p)?;
        let phi = copy_swap_permutation(base.n(), copies, 0, 1);
        let swap = induced_group_iso(&phi, &mekler, &mekler)?;
        swap.verify(2_000, 0x55a9)?;
        let total = (p as u64).checked_pow(mekler.order_exponent() as u32);
        let swap_table = total.filter(|&t| t <= 1 << 20).map(|t| {
            (0..t)
                .map(|i| swap.apply(&mekler.element_at(i)))
                .collect()
        });
        Ok(MeklerSwapSemidirect {
            mekler,
            z2: FinGroup::cyclic(2),
            swap,
            swap_table,
        })
    }

    pub fn semidirect<'a>(&'a self, caps: &Caps) -> Result<SemidirectGroup<'a, MeklerGroup, FinGroup>> {
        let swap = &self.swap;
        let mekler = &self.mekler;
        let table = self.swap_table.as_deref();
        SemidirectGroup::new(
            mekler,
            &self.z2,
            Box::new(move |h: &u32, g| {
                if *h == 1 {
                    match table {
                        Some(t) => t[mekler.element_index(g) as usize].clone(),
                        None => swap.apply(g),
                    }
                } else {
                    g.clone()
                }
            }),
            caps,
        )
    }
}

/// Named centralizer experiments reachable from the CLI. The fourth entry
/// is the finite analog of the paper-scale construction: a perfect factor
/// times a copies-graph Mekler semidirect product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralizerPreset {
    Z2,
    A5,
    A5xZ2,
    A5xMeklerSemidirect,
}

impl CentralizerPreset {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "Z2" => Ok(CentralizerPreset::Z2),
            "A5" => Ok(CentralizerPreset::A5),
            "A5xZ2" => Ok(CentralizerPreset::A5xZ2),
            "A5xMeklerSemidirect" => Ok(CentralizerPreset::A5xMeklerSemidirect),
            other => Err(Error::invalid(format!(
                "unknown centralizer preset `{other}` \
                 (known: Z2, A5, A5xZ2, A5xMeklerSemidirect)"
            ))),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            CentralizerPreset::Z2 => "Z/2",
            CentralizerPreset::A5 => "A5 (perfect)",
            CentralizerPreset::A5xZ2 => "A5 × Z/2",
            CentralizerPreset::A5xMeklerSemidirect => {
                "A5 × (G(2 copies of an edge) ⋊ Z/2), finite analog"
            }
        }
    }
}

/// Summary with element descriptions, for reports.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PresetCentralizerReport {
    pub preset: String,
    pub group_order: usize,
    pub derived_order: usize,
    pub support_empty: bool,
    pub centralizer_order: usize,
    pub centralizer_sample: Vec<String>,
    pub note: String,
}

pub fn char_support_preset(preset: CentralizerPreset, caps: &Caps) -> Result<PresetCentralizerReport> {
    let note = "computed, not asserted: the centralizer of the character \
                support need not recover a perfect direct factor"
        .to_string();
    let build = |order, derived, empty, sample: Vec<String>| PresetCentralizerReport {
        preset: preset.describe().to_string(),
        group_order: order,
        derived_order: derived,
        support_empty: empty,
        centralizer_order: sample.len(),
        centralizer_sample: sample.into_iter().take(16).collect(),
        note: note.clone(),
    };
    match preset {
        CentralizerPreset::Z2 => {
            let g = FinGroup::cyclic(2);
            let r = char_support_centralizer(&g, caps)?;
            let sample = r.centralizer.iter().map(|e| g.describe(e)).collect();
            Ok(build(r.group_order, r.derived_order, r.support_empty, sample))
        }
        CentralizerPreset::A5 => {
            let g = FinGroup::alternating(5);
            let r = char_support_centralizer(&g, caps)?;
            let sample = r.centralizer.iter().map(|e| g.describe(e)).collect();
            Ok(build(r.group_order, r.derived_order, r.support_empty, sample))
        }
        CentralizerPreset::A5xZ2 => {
            let g = FinGroup::direct_product(&FinGroup::alternating(5), &FinGroup::cyclic(2));
            let r = char_support_centralizer(&g, caps)?;
            let sample = r.centralizer.iter().map(|e| g.describe(e)).collect();
            Ok(build(r.group_order, r.derived_order, r.support_empty, sample))
        }
        CentralizerPreset::A5xMeklerSemidirect => {
            let edge = SimpleGraph::complete(2);
            let stand_in = MeklerSwapSemidirect::new(&edge, 2, 3, caps)?;
            let semi = stand_in.semidirect(caps)?;
            let a5 = FinGroup::alternating(5);
            let g = ProductGroup {
                left: &a5,
                right: &semi,
            };
            let r = char_support_centralizer(&g, caps)?;
            let sample = r.centralizer.iter().map(|e| g.describe(e)).collect();
            Ok(build(r.group_order, r.derived_order, r.support_empty, sample))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn trivial_acting_group_copies_n() {
        let caps = caps();
        let z5 = FinGroup::cyclic(5);
        let triv = FinGroup::trivial();
        let semi = SemidirectGroup::new(
            &z5,
            &triv,
            Box::new(|_h: &u32, g: &u32| *g),
            &caps,
        )
        .unwrap();
        assert_eq!(semi.order(), 5);
        // the law reduces to Z5's
        let a = (2u32, 0u32);
        let b = (4u32, 0u32);
        assert_eq!(semi.mul(&a, &b), (1, 0));
    }

    #[test]
    fn semidirect_order_multiplies() {
        let caps = caps();
        let edge = SimpleGraph::complete(2);
        let ms = MeklerSwapSemidirect::new(&edge, 2, 3, &caps).unwrap();
        let semi = ms.semidirect(&caps).unwrap();
        // |G(2 copies of K2)| = 3^(4 + 4), times |Z/2|
        assert_eq!(semi.order(), 3usize.pow(8) * 2);
    }

    #[test]
    fn semidirect_law_is_associative_on_samples() {
        use rand::{Rng, SeedableRng};
        let caps = caps();
        let edge = SimpleGraph::complete(2);
        let ms = MeklerSwapSemidirect::new(&edge, 2, 3, &caps).unwrap();
        let semi = ms.semidirect(&caps).unwrap();
        let elements = semi.elements();
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        for _ in 0..10_000 {
            let x = &elements[rng.gen_range(0..elements.len())];
            let y = &elements[rng.gen_range(0..elements.len())];
            let z = &elements[rng.gen_range(0..elements.len())];
            assert_eq!(
                semi.mul(&semi.mul(x, y), z),
                semi.mul(x, &semi.mul(y, z))
            );
            assert_eq!(semi.mul(x, &semi.inv(x)), semi.id());
        }
    }

    #[test]
    fn non_automorphism_action_is_rejected() {
        let caps = caps();
        let z4 = FinGroup::cyclic(4);
        let z2 = FinGroup::cyclic(2);
        // x ↦ x+1 is a bijection of Z4 but not an automorphism
        let bad = SemidirectGroup::new(
            &z4,
            &z2,
            Box::new(|h: &u32, g: &u32| if *h == 1 { (*g + 1) % 4 } else { *g }),
            &caps,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn semidirect_table_builds_dihedral() {
        let z4 = FinGroup::cyclic(4);
        let z2 = FinGroup::cyclic(2);
        // inversion action gives D4
        let act = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let d4 = semidirect_table(&z4, &z2, &act).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.conjugacy_class_count(), 5);

        let bad = semidirect_table(&z4, &z2, &[vec![0, 1, 2, 3], vec![1, 2, 3, 0]]);
        assert!(bad.is_err());
    }

    #[test]
    fn char_support_z2_is_whole_group() {
        let caps = caps();
        let z2 = FinGroup::cyclic(2);
        let r = char_support_centralizer(&z2, &caps).unwrap();
        assert_eq!(r.derived_order, 1);
        assert!(!r.support_empty);
        assert_eq!(r.centralizer, vec![0, 1]);
    }

    #[test]
    fn char_support_a5_is_empty_support() {
        let caps = caps();
        let a5 = FinGroup::alternating(5);
        let r = char_support_centralizer(&a5, &caps).unwrap();
        assert!(r.support_empty);
        assert_eq!(r.centralizer.len(), 60);
    }

    #[test]
    fn char_support_a5xz2() {
        let caps = caps();
        let g = FinGroup::direct_product(&FinGroup::alternating(5), &FinGroup::cyclic(2));
        let r = char_support_centralizer(&g, &caps).unwrap();
        assert_eq!(r.derived_order, 60);
        // centralizer of D = A5 × {1} ∪ ... is {e} × Z2
        assert_eq!(r.centralizer.len(), 2);
        let names: Vec<String> = r.centralizer.iter().map(|e| g.describe(e)).collect();
        assert!(names.iter().all(|n| n.starts_with("(0.1.2.3.4,")));
    }
}
