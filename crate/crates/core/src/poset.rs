//! Finite posets stored as full order relations.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// How the pairs handed to [`FinitePoset::build`] are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationMode {
    /// Pairs are generators; the reflexive-transitive closure is taken.
    Covers,
    /// Pairs are the order itself. Only the diagonal is added implicitly.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

/// A directed down-set together with its join, when that join exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub members: Subset,
    pub join: Option<usize>,
}

struct Frame {
    k: usize,
    chosen: Subset,
    maximal: Vec<usize>,
    forbidden: Subset,
}

/// Structural flags computed by [`FinitePoset::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub is_chain: bool,
    pub is_lattice: bool,
    pub is_complete_lattice: bool,
    pub is_continuous: bool,
    pub is_frame: bool,
}

/// A finite partially ordered set.
///
/// Elements are the indices `0..len()`; labels are only used for input and
/// display. `up[x]` and `down[x]` hold the principal up- and down-sets, so
/// `x <= y` is a single bit lookup.
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<Subset>,
    down: Vec<Subset>,
    ideals: OnceBox<Vec<Ideal>>,
}

impl Clone for FinitePoset {
    fn clone(&self) -> Self {
        let ideals = OnceBox::new();
        if let Some(v) = self.ideals.get() {
            let _ = ideals.set(Box::new(v.clone()));
        }
        FinitePoset {
            labels: self.labels.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            ideals,
        }
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("labels", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

impl FinitePoset {
    /// Builds a poset from labels and label pairs `(a, b)` meaning `a <= b`.
    pub fn build<S: AsRef<str>>(
        labels: &[S],
        pairs: &[(S, S)],
        mode: RelationMode,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_owned()))
        };
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx_pairs.push((lookup(a)?, lookup(b)?));
        }
        match mode {
            RelationMode::Covers => Self::from_generators(labels, &idx_pairs),
            RelationMode::Full => {
                let n = labels.len();
                let mut rel = vec![Subset::empty(n); n];
                for (i, row) in rel.iter_mut().enumerate() {
                    row.insert(i);
                }
                for &(a, b) in &idx_pairs {
                    rel[a].insert(b);
                }
                Self::from_up_rows(labels, rel)
            }
        }
    }

    /// Reflexive-transitive closure of index pairs `(a, b)` meaning `a <= b`.
    pub fn from_generators(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut rel = vec![Subset::empty(n); n];
        for (i, row) in rel.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::BadAssignment);
            }
            rel[a].insert(b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = rel[k].clone();
            for row in rel.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_rows(labels, rel)
    }

    /// Builds from a relation predicate `leq(i, j)`; the diagonal is forced.
    pub fn from_relation<F: Fn(usize, usize) -> bool>(labels: Vec<String>, leq: F) -> Result<Self> {
        let n = labels.len();
        let rel = (0..n)
            .map(|i| Subset::from_indices(n, (0..n).filter(|&j| i == j || leq(i, j))))
            .collect();
        Self::from_up_rows(labels, rel)
    }

    /// Validates and stores a relation given as rows `up[i] = { j : i <= j }`.
    fn from_up_rows(labels: Vec<String>, up: Vec<Subset>) -> Result<Self> {
        let n = labels.len();
        {
            let mut seen = BTreeMap::new();
            for l in &labels {
                if seen.insert(l.as_str(), ()).is_some() {
                    return Err(Error::DuplicateLabel(l.clone()));
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::CycleDetected {
                        first: labels[i.min(j)].clone(),
                        second: labels[i.max(j)].clone(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].difference(&up[i]).first().expect("nonempty difference");
                    return Err(Error::NotTransitive {
                        from: labels[i].clone(),
                        via: labels[j].clone(),
                        to: labels[k].clone(),
                    });
                }
            }
        }
        let mut down = vec![Subset::empty(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Ok(FinitePoset {
            labels,
            up,
            down,
            ideals: OnceBox::new(),
        })
    }

    /// The poset of `sets` ordered by inclusion, labelled by `label`.
    pub fn inclusion_order(sets: &[Subset], mut label: impl FnMut(&Subset) -> String) -> Self {
        Self::set_order(sets, &mut label, false)
    }

    /// The poset of `sets` ordered by reverse inclusion.
    pub fn reverse_inclusion_order(
        sets: &[Subset],
        mut label: impl FnMut(&Subset) -> String,
    ) -> Self {
        Self::set_order(sets, &mut label, true)
    }

    fn set_order(
        sets: &[Subset],
        label: &mut dyn FnMut(&Subset) -> String,
        reverse: bool,
    ) -> Self {
        let n = sets.len();
        let labels: Vec<String> = sets.iter().map(label).collect();
        let mut up = vec![Subset::empty(n); n];
        for i in 0..n {
            for j in 0..n {
                let below = if reverse {
                    sets[j].is_subset(&sets[i])
                } else {
                    sets[i].is_subset(&sets[j])
                };
                if below {
                    up[i].insert(j);
                }
            }
        }
        // Inclusion is a partial order on distinct sets; duplicates would be a caller bug.
        Self::from_up_rows(labels, up).expect("distinct sets under inclusion form a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Principal up-set of `x`.
    pub fn up(&self, x: usize) -> &Subset {
        &self.up[x]
    }

    /// Principal down-set of `x`.
    pub fn down(&self, x: usize) -> &Subset {
        &self.down[x]
    }

    pub fn empty_set(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.len())
    }

    /// `↑S` or `↓S`.
    pub fn closure(&self, s: &Subset, direction: Direction) -> Subset {
        let rows = match direction {
            Direction::Up => &self.up,
            Direction::Down => &self.down,
        };
        let mut out = self.empty_set();
        for x in s.iter() {
            out.union_with(&rows[x]);
        }
        out
    }

    pub fn is_up_set(&self, s: &Subset) -> bool {
        s.iter().all(|x| self.up[x].is_subset(s))
    }

    pub fn is_down_set(&self, s: &Subset) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    pub fn upper_bounds(&self, s: &Subset) -> Subset {
        let mut out = self.carrier();
        for x in s.iter() {
            out.intersect_with(&self.up[x]);
        }
        out
    }

    pub fn lower_bounds(&self, s: &Subset) -> Subset {
        let mut out = self.carrier();
        for x in s.iter() {
            out.intersect_with(&self.down[x]);
        }
        out
    }

    /// Least element of `s`, if any.
    pub fn least(&self, s: &Subset) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(&self.up[x]))
    }

    /// Greatest element of `s`, if any.
    pub fn greatest(&self, s: &Subset) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(&self.down[x]))
    }

    pub fn minimal(&self, s: &Subset) -> Subset {
        Subset::from_indices(
            self.len(),
            s.iter().filter(|&x| self.down[x].intersection_count(s) == 1),
        )
    }

    pub fn maximal(&self, s: &Subset) -> Subset {
        Subset::from_indices(
            self.len(),
            s.iter().filter(|&x| self.up[x].intersection_count(s) == 1),
        )
    }

    /// Join (least upper bound) or meet of `s`; `None` when it does not exist.
    pub fn bounds(&self, s: &Subset, kind: BoundKind) -> Option<usize> {
        match kind {
            BoundKind::Join => self.least(&self.upper_bounds(s)),
            BoundKind::Meet => self.greatest(&self.lower_bounds(s)),
        }
    }

    pub fn join(&self, s: &Subset) -> Option<usize> {
        self.bounds(s, BoundKind::Join)
    }

    pub fn meet(&self, s: &Subset) -> Option<usize> {
        self.bounds(s, BoundKind::Meet)
    }

    pub fn join2(&self, a: usize, b: usize) -> Option<usize> {
        self.least(&self.up[a].intersection(&self.up[b]))
    }

    pub fn meet2(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest(&self.down[a].intersection(&self.down[b]))
    }

    /// Nonempty, and every pair of members has an upper bound inside `s`.
    ///
    /// Every member lies below a maximal member and an upper bound of two
    /// maximal members bounds everything below them, so only pairs of
    /// maximal members are tested.
    pub fn is_directed(&self, s: &Subset) -> bool {
        if s.is_empty() {
            return false;
        }
        let tops = self.maximal(s).to_vec();
        tops.iter().enumerate().all(|(i, &a)| {
            tops[i + 1..]
                .iter()
                .all(|&b| self.up[a].intersection(&self.up[b]).intersects(s))
        })
    }

    /// Nonempty, and every pair of members has a lower bound inside `s`.
    pub fn is_filtered(&self, s: &Subset) -> bool {
        if s.is_empty() {
            return false;
        }
        let bottoms = self.minimal(s).to_vec();
        bottoms.iter().enumerate().all(|(i, &a)| {
            bottoms[i + 1..]
                .iter()
                .all(|&b| self.down[a].intersection(&self.down[b]).intersects(s))
        })
    }

    /// Elements sorted so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].count(), x));
        order
    }

    /// Every directed down-set of the poset, with its join.
    ///
    /// A directed set `D` and its down-closure `↓D` have the same upper
    /// bounds and meet the same up-sets, so the directed-set quantifiers in
    /// the Scott-open and way-below definitions can range over directed
    /// down-sets alone. These are found by an exhaustive search over
    /// down-sets, deciding elements from the top. A branch is abandoned as
    /// soon as two chosen elements have no common upper bound left among the
    /// elements not yet excluded; each surviving leaf is then checked for
    /// directedness. The result is cached.
    pub fn ideals(&self) -> &[Ideal] {
        self.ideals.get_or_init(|| Box::new(self.search_ideals()))
    }

    fn search_ideals(&self) -> Vec<Ideal> {
        let n = self.len();
        let mut order = self.linear_extension();
        order.reverse();
        let mut found = Vec::new();
        let mut stack = vec![Frame {
            k: 0,
            chosen: self.empty_set(),
            maximal: Vec::new(),
            forbidden: self.empty_set(),
        }];
        while let Some(Frame {
            mut k,
            chosen,
            maximal,
            forbidden,
        }) = stack.pop()
        {
            while k < n && (forbidden.contains(order[k]) || chosen.contains(order[k])) {
                k += 1;
            }
            if k == n {
                if self.is_directed(&chosen) {
                    found.push(Ideal {
                        join: self.join(&chosen),
                        members: chosen,
                    });
                }
                continue;
            }
            let x = order[k];
            // Excluding x excludes everything above it; none of that is chosen
            // because chosen is a down-set not containing x.
            let mut excl = forbidden.clone();
            excl.union_with(&self.up[x]);
            if self.maximal_pairs_have_room(&maximal, &excl) {
                stack.push(Frame {
                    k: k + 1,
                    chosen: chosen.clone(),
                    maximal: maximal.clone(),
                    forbidden: excl,
                });
            }
            let room_for_x = maximal
                .iter()
                .all(|&m| self.up[x].meets_outside(&self.up[m], &forbidden));
            if room_for_x {
                let mut chosen = chosen;
                chosen.union_with(&self.down[x]);
                let mut maximal: Vec<usize> =
                    maximal.into_iter().filter(|&m| !self.leq(m, x)).collect();
                maximal.push(x);
                let forbidden = self.exclude_roomless(&chosen, &maximal, forbidden);
                stack.push(Frame {
                    k: k + 1,
                    chosen,
                    maximal,
                    forbidden,
                });
            }
        }
        found.sort_by(|a, b| a.members.cmp(&b.members));
        found
    }

    /// Excludes, in bulk and up to a fixpoint, every undecided element that
    /// has no room for a common upper bound with some maximal chosen element.
    fn exclude_roomless(&self, chosen: &Subset, maximal: &[usize], forbidden: Subset) -> Subset {
        let mut forbidden = forbidden;
        loop {
            let mut viable = self.carrier();
            for &m in maximal {
                let room = self.up[m].difference(&forbidden);
                viable.intersect_with(&self.closure(&room, Direction::Down));
            }
            let mut dead = viable.complement();
            dead.difference_with(chosen);
            dead.difference_with(&forbidden);
            if dead.is_empty() {
                return forbidden;
            }
            for y in dead.iter() {
                forbidden.union_with(&self.up[y]);
            }
        }
    }

    fn maximal_pairs_have_room(&self, maximal: &[usize], forbidden: &Subset) -> bool {
        maximal.iter().enumerate().all(|(i, &a)| {
            !forbidden.contains(a)
                && maximal[i + 1..]
                    .iter()
                    .all(|&b| self.up[a].meets_outside(&self.up[b], forbidden))
        })
    }

    /// `x ≪ y`: every directed set whose join exists and lies above `y`
    /// contains an element above `x`.
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        self.ideals().iter().all(|ideal| match ideal.join {
            Some(j) if self.leq(y, j) => ideal.members.contains(x),
            _ => true,
        })
    }

    /// Scott-open by definition: an up-set met by every directed set whose
    /// join exists and lies in it.
    pub fn is_scott_open(&self, s: &Subset) -> bool {
        self.is_up_set(s)
            && self.ideals().iter().all(|ideal| match ideal.join {
                Some(j) if s.contains(j) => ideal.members.intersects(s),
                _ => true,
            })
    }

    /// Elements `x` for which `↑x` fails the Scott condition.
    ///
    /// `↑x` misses a directed down-set `I` with join `j >= x` exactly when
    /// `x` is in `↓j` but not in `I`.
    pub fn principal_scott_failures(&self) -> Subset {
        let mut bad = self.empty_set();
        for ideal in self.ideals() {
            if let Some(j) = ideal.join {
                bad.union_with(&self.down[j].difference(&ideal.members));
            }
        }
        bad
    }

    /// `⇊y`, the elements way below `y`.
    pub fn way_below_set(&self, y: usize) -> Subset {
        let mut out = self.carrier();
        for ideal in self.ideals() {
            if let Some(j) = ideal.join {
                if self.leq(y, j) {
                    out.intersect_with(&ideal.members);
                }
            }
        }
        out
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// Every pair has a join and a meet.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a..n).all(|b| self.join2(a, b).is_some() && self.meet2(a, b).is_some()))
    }

    /// Every subset has a join (which also gives every meet).
    ///
    /// For finite posets this amounts to being a lattice with a bottom and
    /// a top, which is what is checked, together with the join of every
    /// subset when the carrier is small enough to enumerate.
    pub fn is_complete_lattice(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let pairs_ok = self.is_lattice()
            && self.join(&self.empty_set()).is_some()
            && self.meet(&self.empty_set()).is_some();
        if !pairs_ok {
            return false;
        }
        if n <= 16 {
            for mask in 0u64..(1u64 << n) {
                if self.join(&Subset::from_mask(n, mask)).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Every element is the join of the directed set of elements way below it.
    pub fn is_continuous(&self) -> bool {
        (0..self.len()).all(|a| {
            let wb = self.way_below_set(a);
            self.is_directed(&wb) && self.join(&wb) == Some(a)
        })
    }

    /// Complete lattice in which `x ∧ ⋁S = ⋁{x ∧ s : s ∈ S}` for every `x`
    /// and every subset `S`.
    ///
    /// Subsets are enumerated exhaustively up to 16 elements. Past that the
    /// check runs over subsets of size at most two, which is equivalent
    /// for finite lattices since a binary-distributive finite lattice is
    /// distributive for every finite join.
    pub fn is_frame(&self) -> bool {
        if !self.is_complete_lattice() {
            return false;
        }
        let n = self.len();
        let meet = |a: usize, b: usize| self.meet2(a, b).expect("lattice");
        let law = |x: usize, s: &Subset| {
            let lhs = meet(x, self.join(s).expect("complete"));
            let image = Subset::from_indices(n, s.iter().map(|e| meet(x, e)));
            Some(lhs) == self.join(&image)
        };
        if n <= 16 {
            (0..n).all(|x| (0u64..(1u64 << n)).all(|mask| law(x, &Subset::from_mask(n, mask))))
        } else {
            (0..n).all(|x| {
                (0..n).all(|a| (a..n).all(|b| law(x, &Subset::from_indices(n, [a, b]))))
            })
        }
    }

    pub fn classify(&self) -> Classification {
        let is_complete_lattice = self.is_complete_lattice();
        Classification {
            is_chain: self.is_chain(),
            is_lattice: self.is_lattice(),
            is_complete_lattice,
            is_continuous: self.is_continuous(),
            is_frame: is_complete_lattice && self.is_frame(),
        }
    }

    /// Componentwise order on pairs; pair `(p, q)` has index `p * |Q| + q`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let m = other.len();
        let labels = self
            .labels
            .iter()
            .flat_map(|p| other.labels.iter().map(move |q| format!("({p},{q})")))
            .collect::<Vec<_>>();
        let n = labels.len();
        let up = (0..n)
            .map(|i| {
                let (p, q) = (i / m, i % m);
                Subset::from_indices(
                    n,
                    self.up[p]
                        .iter()
                        .flat_map(|p2| other.up[q].iter().map(move |q2| p2 * m + q2)),
                )
            })
            .collect();
        Self::from_up_rows(labels, up).expect("product of posets is a poset")
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].iter() {
                if a != b && self.up[a].intersection(&self.down[b]).count() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Monotone index map `self -> target`.
    pub fn is_monotone(&self, target: &FinitePoset, map: &[usize]) -> bool {
        (0..self.len()).all(|x| self.up[x].iter().all(|y| target.leq(map[x], map[y])))
    }

    /// Calls `visit` on every up-set, stopping with `CapExceeded` after `cap`.
    ///
    /// Up-sets correspond to their antichains of minimal elements, which are
    /// enumerated depth first by adding elements in increasing index order.
    /// Visiting order is unspecified.
    pub fn for_each_up_set(&self, cap: usize, mut visit: impl FnMut(&Subset)) -> Result<usize> {
        let n = self.len();
        let mut count = 0usize;
        // (up-set so far, elements still addable to the antichain)
        let mut stack = vec![(self.empty_set(), self.carrier())];
        while let Some((current, allowed)) = stack.pop() {
            count += 1;
            if count > cap {
                return Err(Error::CapExceeded {
                    what: "up-set enumeration",
                    cap,
                });
            }
            visit(&current);
            let candidates = allowed.to_vec();
            for (pos, &x) in candidates.iter().enumerate() {
                let mut next = Subset::from_indices(n, candidates[pos + 1..].iter().copied());
                next.difference_with(&self.up[x]);
                next.difference_with(&self.down[x]);
                stack.push((current.union(&self.up[x]), next));
            }
        }
        Ok(count)
    }

    /// All up-sets in canonical order.
    pub fn up_sets(&self, cap: usize) -> Result<Vec<Subset>> {
        let mut out = Vec::new();
        self.for_each_up_set(cap, |s| out.push(s.clone()))?;
        out.sort();
        Ok(out)
    }

    /// All down-sets in canonical order.
    pub fn down_sets(&self, cap: usize) -> Result<Vec<Subset>> {
        let mut out = Vec::new();
        self.for_each_up_set(cap, |s| out.push(s.complement()))?;
        out.sort();
        Ok(out)
    }

    /// Reading of `s` by labels, e.g. `{a,b}`.
    pub fn show(&self, s: &Subset) -> String {
        show_labels(&self.labels, s)
    }
}

pub fn show_labels(labels: &[String], s: &Subset) -> String {
    let mut out = String::from("{");
    for (k, i) in s.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&labels[i]);
    }
    out.push('}');
    out
}

/// Named small posets used throughout tests, examples and the corpus.
pub mod named {
    use super::*;

    fn labels(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    /// One point.
    pub fn singleton() -> FinitePoset {
        FinitePoset::from_generators(labels(&["*"]), &[]).unwrap()
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> FinitePoset {
        let l = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_generators(l, &pairs).unwrap()
    }

    /// Two incomparable points `a`, `b`.
    pub fn antichain2() -> FinitePoset {
        FinitePoset::from_generators(labels(&["a", "b"]), &[]).unwrap()
    }

    /// `0 < a, b < 1`.
    pub fn diamond() -> FinitePoset {
        FinitePoset::from_generators(
            labels(&["0", "a", "b", "1"]),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    /// `x, y < t`.
    pub fn lambda() -> FinitePoset {
        FinitePoset::from_generators(labels(&["x", "y", "t"]), &[(0, 2), (1, 2)]).unwrap()
    }

    /// `{0, ..., n, inf}` with every `k < inf` and the numbers pairwise incomparable.
    pub fn p_infinity(n: usize) -> FinitePoset {
        let mut l: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        l.push("inf".to_string());
        let pairs: Vec<_> = (0..=n).map(|i| (i, n + 1)).collect();
        FinitePoset::from_generators(l, &pairs).unwrap()
    }

    /// The square `2 x 2`, as the lattice `bot < a, b < top`.
    pub fn square() -> FinitePoset {
        chain(2).product(&chain(2))
    }
}
