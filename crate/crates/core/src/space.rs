//! Finite T0 spaces through their specialization order.
//!
//! A finite T0 topology is determined by its specialization order: the opens
//! are exactly the up-sets. Everything here works on that poset.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::{show_labels, Direction, FinitePoset};
use crate::subset::{combinations, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    order: FinitePoset,
}

/// A family of subsets of one carrier, sorted canonically and ordered by
/// inclusion. Used for `O(X)`, `Γ(X)` and `Q(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedLattice {
    carrier_len: usize,
    sets: Vec<Subset>,
    order: FinitePoset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    source: FiniteSpace,
    target: FiniteSpace,
    assignment: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SobrietyReport {
    pub irreducibles: Vec<Subset>,
    pub is_sober: bool,
    /// `↓x` is the least closed set containing `x`, for every point.
    pub closure_identity: bool,
}

/// Open sets `U`, `V` and a closed set `W` with `U∩W` and `V∩W` nonempty
/// but `U∩V∩W` empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcViolation {
    pub u: Subset,
    pub v: Subset,
    pub w: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceProperties {
    pub sober: bool,
    pub well_filtered: bool,
    pub coherent: bool,
    pub locally_compact: bool,
    pub core_compact: bool,
    pub intersection_compatible: bool,
    pub ic_violation: Option<IcViolation>,
}

impl FiniteSpace {
    pub fn new(order: FinitePoset) -> Self {
        FiniteSpace { order }
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        self.order.labels()
    }

    pub fn show(&self, s: &Subset) -> String {
        self.order.show(s)
    }

    pub fn is_open(&self, s: &Subset) -> bool {
        self.order.is_up_set(s)
    }

    pub fn is_closed(&self, s: &Subset) -> bool {
        self.order.is_down_set(s)
    }

    /// The saturation `↑A`, the intersection of all opens containing `A`.
    pub fn saturation(&self, s: &Subset) -> Subset {
        self.order.closure(s, Direction::Up)
    }

    /// Topological closure, `↓A`.
    pub fn closure(&self, s: &Subset) -> Subset {
        self.order.closure(s, Direction::Down)
    }

    pub fn opens(&self, cap: usize) -> Result<Vec<Subset>> {
        self.order.up_sets(cap)
    }

    pub fn closed_sets(&self, cap: usize) -> Result<Vec<Subset>> {
        self.order.down_sets(cap)
    }

    pub fn open_set_lattice(&self, cap: usize) -> Result<IndexedLattice> {
        Ok(IndexedLattice::new(self.labels(), self.opens(cap)?))
    }

    pub fn closed_set_lattice(&self, cap: usize) -> Result<IndexedLattice> {
        Ok(IndexedLattice::new(self.labels(), self.closed_sets(cap)?))
    }

    /// `K` is compact: every directed family of opens covering `K` has a
    /// member covering `K`. Equivalently, the opens containing `K` form a
    /// Scott-open family of `opens`.
    pub fn is_compact(&self, k: &Subset, opens: &IndexedLattice) -> bool {
        let nbhds = opens.extent(|u| k.is_subset(u));
        opens.order().is_scott_open(&nbhds)
    }

    /// `Q(X)`: nonempty saturated sets, each checked compact.
    pub fn compact_saturated_sets(&self, cap: usize) -> Result<Vec<Subset>> {
        let opens = self.open_set_lattice(cap)?;
        let out: Vec<Subset> = opens
            .sets()
            .iter()
            .filter(|k| !k.is_empty())
            .cloned()
            .collect();
        if let Some(k) = out.iter().find(|k| !self.is_compact(k, &opens)) {
            return Err(Error::TransportHypothesisFailed(alloc::format!(
                "saturated set {} is not compact",
                self.show(k)
            )));
        }
        Ok(out)
    }

    /// A finite `F` with `K ⊆ ↑F ⊆ U`, if one exists.
    ///
    /// `min K` is tried first; otherwise subsets of `U` by increasing size,
    /// for `U` of at most 16 points.
    pub fn strong_compactness_witness(&self, k: &Subset, u: &Subset) -> Option<Subset> {
        let fits = |f: &Subset| {
            let sat = self.saturation(f);
            k.is_subset(&sat) && sat.is_subset(u)
        };
        let first = self.order.minimal(k);
        if fits(&first) {
            return Some(first);
        }
        let items = u.to_vec();
        if items.len() > 16 {
            return None;
        }
        (0..=items.len()).find_map(|size| {
            combinations(&items, size)
                .map(|c| Subset::from_indices(self.len(), c))
                .find(|f| fits(f))
        })
    }

    /// Every open `U ⊇ K` admits a finite `F` with `K ⊆ ↑F ⊆ U`.
    pub fn is_strongly_compact(&self, k: &Subset, cap: usize) -> Result<bool> {
        Ok(self
            .opens(cap)?
            .iter()
            .filter(|u| k.is_subset(u))
            .all(|u| self.strong_compactness_witness(k, u).is_some()))
    }

    /// Irreducible closed sets and sobriety.
    ///
    /// A closed `C` covered by two closed sets is covered by their traces on
    /// `C`, and each proper closed subset of `C` lies in some `C∖{m}` with
    /// `m` maximal in `C`. Irreducibility is therefore decided on pairs of
    /// those maximal proper closed subsets.
    pub fn sobriety_report(&self, cap: usize) -> Result<SobrietyReport> {
        let closed = self.closed_sets(cap)?;
        let mut irreducibles = Vec::new();
        for c in closed.iter().filter(|c| !c.is_empty()) {
            let tops = self.order.maximal(c).to_vec();
            let mut reducible = false;
            'pairs: for (i, &m1) in tops.iter().enumerate() {
                for &m2 in &tops[i + 1..] {
                    let mut a = c.clone();
                    a.remove(m1);
                    let mut b = c.clone();
                    b.remove(m2);
                    if c.is_subset(&a.union(&b)) {
                        reducible = true;
                        break 'pairs;
                    }
                }
            }
            if !reducible {
                irreducibles.push(c.clone());
            }
        }
        let is_sober = irreducibles
            .iter()
            .all(|c| (0..self.len()).filter(|&x| self.order.down(x) == c).count() == 1);
        let closure_identity = (0..self.len()).all(|x| {
            let cl = self.order.down(x);
            self.is_closed(cl)
                && closed
                    .iter()
                    .filter(|c| c.contains(x))
                    .all(|c| cl.is_subset(c))
        });
        Ok(SobrietyReport {
            irreducibles,
            is_sober,
            closure_identity,
        })
    }

    /// The first violating triple in canonical order, if any.
    pub fn intersection_compatibility_violation(&self, cap: usize) -> Result<Option<IcViolation>> {
        let opens = self.opens(cap)?;
        let closed = self.closed_sets(cap)?;
        for u in &opens {
            for v in &opens {
                let uv = u.intersection(v);
                for w in &closed {
                    if u.intersects(w) && v.intersects(w) && !uv.intersects(w) {
                        return Ok(Some(IcViolation {
                            u: u.clone(),
                            v: v.clone(),
                            w: w.clone(),
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn properties(&self, cap: usize) -> Result<SpaceProperties> {
        let opens = self.open_set_lattice(cap)?;
        let compacts = self.compact_saturated_sets(cap)?;
        let ic_violation = self.intersection_compatibility_violation(cap)?;
        Ok(SpaceProperties {
            sober: self.sobriety_report(cap)?.is_sober,
            well_filtered: self.is_well_filtered(&opens, &compacts),
            coherent: self.is_coherent(&opens, &compacts),
            locally_compact: self.is_locally_compact(&opens),
            core_compact: opens.order().is_continuous(),
            intersection_compatible: ic_violation.is_none(),
            ic_violation,
        })
    }

    /// Filtered families of `Q(X)` are the directed subsets of `Q(X)` under
    /// reverse inclusion; closing one upward in that order changes neither
    /// its intersection nor whether a member fits in `U`.
    fn is_well_filtered(&self, opens: &IndexedLattice, compacts: &[Subset]) -> bool {
        let q = FinitePoset::reverse_inclusion_order(compacts, |s| self.show(s));
        q.ideals().iter().all(|ideal| {
            let mut meet = self.carrier();
            for i in ideal.members.iter() {
                meet.intersect_with(&compacts[i]);
            }
            opens.sets().iter().all(|u| {
                !meet.is_subset(u) || ideal.members.iter().any(|i| compacts[i].is_subset(u))
            })
        })
    }

    /// An empty intersection of two compact sets counts as compact.
    fn is_coherent(&self, opens: &IndexedLattice, compacts: &[Subset]) -> bool {
        compacts.iter().enumerate().all(|(i, a)| {
            compacts[i..].iter().all(|b| {
                let meet = a.intersection(b);
                meet.is_empty() || self.is_compact(&meet, opens)
            })
        })
    }

    /// For `x ∈ U` open, some open `V` and compact `K` with `x ∈ V ⊆ K ⊆ U`.
    /// `K` may be taken saturated, since `↑K` is compact when `K` is and
    /// still lies in `U`.
    fn is_locally_compact(&self, opens: &IndexedLattice) -> bool {
        let sets = opens.sets();
        sets.iter().all(|u| {
            u.iter().all(|x| {
                sets.iter()
                    .filter(|v| v.contains(x) && v.is_subset(u))
                    .any(|v| {
                        sets.iter()
                            .filter(|k| v.is_subset(k) && k.is_subset(u))
                            .any(|k| self.is_compact(k, opens))
                    })
            })
        })
    }

    pub fn carrier(&self) -> Subset {
        self.order.carrier()
    }

    pub fn empty_set(&self) -> Subset {
        self.order.empty_set()
    }
}

impl IndexedLattice {
    /// Sorts and deduplicates `sets`, then orders them by inclusion.
    pub fn new(base_labels: &[String], mut sets: Vec<Subset>) -> Self {
        sets.sort();
        sets.dedup();
        let order = FinitePoset::inclusion_order(&sets, |s| show_labels(base_labels, s));
        IndexedLattice {
            carrier_len: base_labels.len(),
            sets,
            order,
        }
    }

    pub fn carrier_len(&self) -> usize {
        self.carrier_len
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &Subset {
        &self.sets[i]
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.sets.binary_search(s).ok()
    }

    /// Indices of the members satisfying `pred`.
    pub fn extent(&self, mut pred: impl FnMut(&Subset) -> bool) -> Subset {
        Subset::from_indices(
            self.len(),
            self.sets
                .iter()
                .enumerate()
                .filter(|(_, s)| pred(s))
                .map(|(i, _)| i),
        )
    }

    pub fn is_union_closed(&self) -> bool {
        self.sets.iter().all(|a| {
            self.sets
                .iter()
                .all(|b| self.index_of(&a.union(b)).is_some())
        })
    }

    pub fn is_intersection_closed(&self) -> bool {
        self.sets.iter().all(|a| {
            self.sets
                .iter()
                .all(|b| self.index_of(&a.intersection(b)).is_some())
        })
    }
}

impl ContinuousMap {
    /// Validates `assignment` as a continuous map `source -> target`.
    ///
    /// Preimages of the basic opens `↑y` are checked, and separately
    /// monotonicity; the two must agree.
    pub fn new(source: FiniteSpace, target: FiniteSpace, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() || assignment.iter().any(|&y| y >= target.len()) {
            return Err(Error::BadAssignment);
        }
        let failure = (0..target.len()).find_map(|y| {
            let open = target.order().up(y).clone();
            let preimage = open.preimage(&assignment);
            (!source.is_open(&preimage)).then_some((open, preimage))
        });
        let monotone = source.order().is_monotone(target.order(), &assignment);
        if monotone == failure.is_some() {
            return Err(Error::TransportHypothesisFailed(
                "monotonicity and preimage-openness disagree".into(),
            ));
        }
        if let Some((open, preimage)) = failure {
            return Err(Error::NotContinuous { open, preimage });
        }
        Ok(ContinuousMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        ContinuousMap {
            source: space.clone(),
            target: space.clone(),
            assignment: (0..space.len()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn image(&self, s: &Subset) -> Subset {
        s.image(self.target.len(), &self.assignment)
    }

    pub fn preimage(&self, s: &Subset) -> Subset {
        s.preimage(&self.assignment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::named;
    use alloc::vec;

    fn space(p: FinitePoset) -> FiniteSpace {
        FiniteSpace::new(p)
    }

    fn set(x: &FiniteSpace, labels: &[&str]) -> Subset {
        Subset::from_indices(x.len(), labels.iter().map(|l| x.order().index_of(l).unwrap()))
    }

    fn shown(x: &FiniteSpace, sets: &[Subset]) -> Vec<String> {
        sets.iter().map(|s| x.show(s)).collect()
    }

    #[test]
    fn open_and_closed_lattices() {
        let c2 = space(named::chain(2));
        assert_eq!(shown(&c2, &c2.opens(64).unwrap()), ["{}", "{1}", "{0,1}"]);
        assert_eq!(shown(&c2, &c2.closed_sets(64).unwrap()), ["{}", "{0}", "{0,1}"]);
        assert!(c2.open_set_lattice(64).unwrap().order().is_chain());
        let d = space(named::diamond());
        let opens = d.open_set_lattice(64).unwrap();
        assert_eq!(
            shown(&d, opens.sets()),
            ["{}", "{1}", "{a,1}", "{b,1}", "{a,b,1}", "{0,a,b,1}"]
        );
        assert!(opens.is_union_closed() && opens.is_intersection_closed());
        assert_eq!(space(named::lambda()).opens(64).unwrap().len(), 5);
        assert_eq!(space(named::antichain2()).opens(64).unwrap().len(), 4);
        assert_eq!(space(named::singleton()).closed_sets(64).unwrap().len(), 2);
    }

    #[test]
    fn sobriety_examples() {
        let a2 = space(named::antichain2());
        let r = a2.sobriety_report(64).unwrap();
        assert_eq!(shown(&a2, &r.irreducibles), ["{a}", "{b}"]);
        assert!(r.is_sober && r.closure_identity);
        let d = space(named::diamond());
        let r = d.sobriety_report(64).unwrap();
        assert_eq!(shown(&d, &r.irreducibles), ["{0}", "{0,a}", "{0,b}", "{0,a,b,1}"]);
        assert!(r.is_sober);
    }

    #[test]
    fn compact_saturated_examples() {
        let a2 = space(named::antichain2());
        assert_eq!(
            shown(&a2, &a2.compact_saturated_sets(64).unwrap()),
            ["{a}", "{b}", "{a,b}"]
        );
        let c2 = space(named::chain(2));
        assert_eq!(shown(&c2, &c2.compact_saturated_sets(64).unwrap()), ["{1}", "{0,1}"]);
        assert_eq!(space(named::singleton()).compact_saturated_sets(64).unwrap().len(), 1);
    }

    #[test]
    fn strong_compactness_examples() {
        let a2 = space(named::antichain2());
        assert!(a2.is_strongly_compact(&a2.carrier(), 64).unwrap());
        let p = space(named::p_infinity(2));
        assert!(p.is_strongly_compact(&p.carrier(), 64).unwrap());
        let d = space(named::diamond());
        assert!(d.is_strongly_compact(&set(&d, &["1"]), 64).unwrap());
    }

    #[test]
    fn property_examples() {
        let c2 = space(named::chain(2)).properties(64).unwrap();
        assert!(c2.sober && c2.well_filtered && c2.coherent);
        assert!(c2.locally_compact && c2.core_compact && c2.intersection_compatible);
        let a2 = space(named::antichain2());
        let p = a2.properties(64).unwrap();
        let v = p.ic_violation.unwrap();
        assert_eq!(
            (a2.show(&v.u), a2.show(&v.v), a2.show(&v.w)),
            ("{a}".into(), "{b}".into(), "{a,b}".into())
        );
        let d = space(named::diamond()).properties(64).unwrap();
        assert!(d.sober && d.well_filtered && d.coherent && d.core_compact);
    }

    #[test]
    fn continuous_map_examples() {
        let d = space(named::diamond());
        assert!(ContinuousMap::new(d.clone(), d.clone(), vec![0, 1, 2, 3]).is_ok());
        let a2 = space(named::antichain2());
        let c2 = space(named::chain(2));
        assert!(ContinuousMap::new(a2, c2.clone(), vec![1, 1]).is_ok());
        match ContinuousMap::new(c2.clone(), c2.clone(), vec![1, 0]) {
            Err(Error::NotContinuous { open, preimage }) => {
                assert_eq!(c2.show(&open), "{1}");
                assert_eq!(c2.show(&preimage), "{0}");
            }
            other => panic!("expected NotContinuous, got {other:?}"),
        }
        assert_eq!(
            ContinuousMap::new(c2.clone(), c2, vec![0]).unwrap_err(),
            Error::BadAssignment
        );
    }
}
