//! Consonance and co-consonance, checked family by family with certificates.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, IndexedLattice};
use crate::subset::{combinations, Subset};
use crate::topology::{topology_equal, Topology};
use crate::Caps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Consonant,
    CoConsonant,
}

/// A Scott-open family of opens, as a set of indices into `O(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScottOpenFamily {
    members: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `Q` with `U ∈ □Q ⊆ 𝓕`.
    Compact(Subset),
    /// `𝓔` with `U ∈ ⋂{◊A : A ∈ 𝓔} ⊆ 𝓕`.
    Closed(Vec<Subset>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub mode: Mode,
    pub family: Subset,
    pub target: usize,
    pub witness: Witness,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsonanceReport {
    pub mode: Mode,
    pub holds: bool,
    /// Verdict of the family-by-family check; `None` past the family cap.
    pub quantified: Option<bool>,
    /// Verdict of the topology comparison on `O(X)`.
    pub topological: bool,
    pub families: usize,
    /// Pairs `(𝓕, ∅)` skipped because `∅` is in no box or diamond.
    pub empty_targets: usize,
    pub certificates: Vec<WitnessCertificate>,
}

impl ConsonanceReport {
    pub fn formulations_agree(&self) -> bool {
        self.quantified.is_none_or(|q| q == self.topological)
    }
}

impl ScottOpenFamily {
    /// Checks `members` both as an up-set of `O(X)` and against the
    /// directed-join condition; on a finite lattice the two must agree.
    pub fn new(lattice: &IndexedLattice, members: Subset) -> Result<Self> {
        let order = lattice.order();
        let up = order.is_up_set(&members);
        let scott = order.is_scott_open(&members);
        if up != scott {
            return Err(Error::TransportHypothesisFailed(
                "up-set and Scott-open checks disagree".into(),
            ));
        }
        if !scott {
            return Err(Error::FamilyNotScottOpen);
        }
        Ok(ScottOpenFamily { members })
    }

    /// The opens satisfying `pred`.
    pub fn from_predicate(lattice: &IndexedLattice, pred: impl FnMut(&Subset) -> bool) -> Result<Self> {
        Self::new(lattice, lattice.extent(pred))
    }

    /// `↑U` in `O(X)`.
    pub fn principal(lattice: &IndexedLattice, u: usize) -> Result<Self> {
        Self::new(lattice, lattice.order().up(u).clone())
    }

    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }
}

/// Every Scott-open family of `O(X)`, in canonical order.
pub fn scott_open_families(lattice: &IndexedLattice, cap: usize) -> Result<Vec<ScottOpenFamily>> {
    lattice
        .order()
        .up_sets(cap)?
        .into_iter()
        .map(|m| ScottOpenFamily::new(lattice, m))
        .collect()
}

/// `□Q` as indices of `O(X)`.
pub fn box_extent(lattice: &IndexedLattice, q: &Subset) -> Subset {
    lattice.extent(|v| q.is_subset(v))
}

/// `⋂{◊A : A ∈ e}` as indices of `O(X)`.
pub fn diamond_extent(lattice: &IndexedLattice, e: &[Subset]) -> Subset {
    lattice.extent(|v| e.iter().all(|a| v.intersects(a)))
}

impl WitnessCertificate {
    pub fn extent(&self, lattice: &IndexedLattice) -> Subset {
        match &self.witness {
            Witness::Compact(q) => box_extent(lattice, q),
            Witness::Closed(e) => diamond_extent(lattice, e),
        }
    }

    /// Re-checks the certificate from the sets alone.
    pub fn verify(&self, space: &FiniteSpace, lattice: &IndexedLattice) -> bool {
        let shape_ok = match &self.witness {
            Witness::Compact(q) => {
                self.mode == Mode::Consonant
                    && !q.is_empty()
                    && space.is_open(q)
                    && space.is_compact(q, lattice)
            }
            Witness::Closed(e) => {
                self.mode == Mode::CoConsonant
                    && !e.is_empty()
                    && e.iter().all(|a| space.is_closed(a))
            }
        };
        let extent = self.extent(lattice);
        shape_ok
            && self.target < lattice.len()
            && extent.contains(self.target)
            && extent.is_subset(&self.family)
    }

    pub(crate) fn checked(mut self, space: &FiniteSpace, lattice: &IndexedLattice) -> Result<Self> {
        self.verified = self.verify(space, lattice);
        if !self.verified {
            return Err(Error::TransportHypothesisFailed(
                "extracted certificate does not verify".into(),
            ));
        }
        Ok(self)
    }
}

pub(crate) fn check_target(family: &ScottOpenFamily, lattice: &IndexedLattice, target: usize) -> Result<()> {
    if target >= lattice.len() || !family.contains(target) {
        return Err(Error::TargetNotInFamily);
    }
    if lattice.set(target).is_empty() {
        return Err(Error::EmptyTargetUnwitnessable);
    }
    Ok(())
}

/// A compact saturated `Q` with `U ∈ □Q ⊆ 𝓕`.
///
/// `Q = U` by default. With `minimize`, the smallest such `Q`, ties broken
/// by canonical order.
pub fn consonance_witness(
    space: &FiniteSpace,
    lattice: &IndexedLattice,
    family: &ScottOpenFamily,
    target: usize,
    minimize: bool,
) -> Result<WitnessCertificate> {
    check_target(family, lattice, target)?;
    let u = lattice.set(target);
    let q = if minimize {
        lattice
            .sets()
            .iter()
            .filter(|q| !q.is_empty() && q.is_subset(u))
            .filter(|q| box_extent(lattice, q).is_subset(family.members()))
            .min_by_key(|q| q.count())
            .cloned()
            .ok_or_else(|| Error::TransportHypothesisFailed("no compact witness found".into()))?
    } else {
        u.clone()
    };
    WitnessCertificate {
        mode: Mode::Consonant,
        family: family.members().clone(),
        target,
        witness: Witness::Compact(q),
        verified: false,
    }
    .checked(space, lattice)
}

/// A finite family of closed sets `𝓔` with `U ∈ ⋂◊𝓔 ⊆ 𝓕`.
///
/// Finds a smallest `F₀ ⊆ U` with `↑F₀ ∈ 𝓕` and returns `{↓x : x ∈ F₀}`.
/// Moving each point of `F₀` down to a minimal point of `U` keeps `↑F₀`
/// inside `U` and only enlarges it, so the search runs over subsets of
/// `min U`, by size and then in lexicographic order.
pub fn co_consonance_witness(
    space: &FiniteSpace,
    lattice: &IndexedLattice,
    family: &ScottOpenFamily,
    target: usize,
) -> Result<WitnessCertificate> {
    check_target(family, lattice, target)?;
    let u = lattice.set(target);
    let minimal = space.order().minimal(u).to_vec();
    let f0 = (1..=minimal.len())
        .find_map(|size| {
            combinations(&minimal, size).find(|c| {
                let sat = space.saturation(&Subset::from_indices(space.len(), c.iter().copied()));
                lattice.index_of(&sat).is_some_and(|i| family.contains(i))
            })
        })
        .ok_or_else(|| Error::TransportHypothesisFailed("no finite F₀ found".into()))?;
    let e = f0.iter().map(|&x| space.order().down(x).clone()).collect();
    WitnessCertificate {
        mode: Mode::CoConsonant,
        family: family.members().clone(),
        target,
        witness: Witness::Closed(e),
        verified: false,
    }
    .checked(space, lattice)
}

/// The topology on `O(X)` generated by `{□Q : Q ∈ Q(X)}`.
pub fn compact_open_topology(space: &FiniteSpace, lattice: &IndexedLattice) -> Topology {
    let subbase: Vec<Subset> = lattice
        .sets()
        .iter()
        .filter(|q| !q.is_empty() && space.is_compact(q, lattice))
        .map(|q| box_extent(lattice, q))
        .collect();
    Topology::from_subbase(lattice.order().labels().to_vec(), &subbase)
}

/// Runs both formulations of (co-)consonance.
///
/// The family-by-family check extracts and re-verifies a certificate for
/// every Scott-open family and nonempty member. The topological check
/// compares `σ(O(X))` with the topology generated by boxes (consonance) or
/// with the upper topology (co-consonance).
pub fn check_consonance(space: &FiniteSpace, mode: Mode, caps: Caps) -> Result<ConsonanceReport> {
    let lattice = space.open_set_lattice(caps.families)?;
    let scott = Topology::scott(lattice.order(), caps.families)?;
    let other = match mode {
        Mode::Consonant => compact_open_topology(space, &lattice),
        Mode::CoConsonant => Topology::upper(lattice.order()),
    };
    let topological = topology_equal(&scott, &other)?.equal;

    let mut report = ConsonanceReport {
        mode,
        holds: topological,
        quantified: None,
        topological,
        families: 0,
        empty_targets: 0,
        certificates: Vec::new(),
    };
    let families = match scott_open_families(&lattice, caps.families) {
        Ok(f) => f,
        Err(Error::CapExceeded { .. }) => return Ok(report),
        Err(e) => return Err(e),
    };
    let mut all_ok = true;
    for family in &families {
        for target in family.members().iter() {
            if lattice.set(target).is_empty() {
                report.empty_targets += 1;
                continue;
            }
            let cert = match mode {
                Mode::Consonant => consonance_witness(space, &lattice, family, target, false),
                Mode::CoConsonant => co_consonance_witness(space, &lattice, family, target),
            };
            match cert {
                Ok(c) => report.certificates.push(c),
                Err(_) => all_ok = false,
            }
        }
    }
    report.families = families.len();
    report.quantified = Some(all_ok);
    report.holds = all_ok && topological;
    Ok(report)
}
