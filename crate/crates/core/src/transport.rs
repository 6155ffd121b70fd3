//! Retractions, and certificates carried along retractions and between a
//! space and its powerspaces.
//!
//! Each transport follows a constructive argument step by step. Steps the
//! argument guarantees are checked as they happen and reported as
//! [`Error::TransportHypothesisFailed`] if they ever fail; the final
//! certificate is re-verified from scratch on its own space.

use core::cell::OnceCell;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::consonance::{
    check_target, co_consonance_witness, consonance_witness, diamond_extent, Mode,
    ScottOpenFamily, Witness, WitnessCertificate,
};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::powerspace::{product_space, Extent, PowerKind, PowerSpace};
use crate::space::{ContinuousMap, FiniteSpace, IcViolation, IndexedLattice};
use crate::subset::Subset;
use crate::topology::{product_scott_check, Topology};
use crate::Caps;

/// `X` as a retract of `Y`: `f: X -> Y`, `g: Y -> X` with `g∘f = id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    section: ContinuousMap,
    retraction: ContinuousMap,
    strong: bool,
}

/// A transported certificate together with the space and open-set lattice
/// it lives on, and a readable account of the intermediate objects.
#[derive(Debug, Clone)]
pub struct Transported {
    pub space: FiniteSpace,
    pub lattice: IndexedLattice,
    pub certificate: WitnessCertificate,
    pub trace: Vec<String>,
}

fn ensure(cond: bool, step: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::TransportHypothesisFailed(step.into()))
    }
}

fn index_in(lattice: &IndexedLattice, s: &Subset, step: &str) -> Result<usize> {
    lattice
        .index_of(s)
        .ok_or_else(|| Error::TransportHypothesisFailed(format!("{step}: set not in lattice")))
}

fn witness_sets(c: &WitnessCertificate) -> Vec<Subset> {
    match &c.witness {
        Witness::Compact(q) => alloc::vec![q.clone()],
        Witness::Closed(e) => e.clone(),
    }
}

fn dedup_keep_order(items: Vec<Subset>) -> Vec<Subset> {
    let mut out: Vec<Subset> = Vec::with_capacity(items.len());
    for s in items {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn certify(
    space: &FiniteSpace,
    lattice: &IndexedLattice,
    mode: Mode,
    family: &ScottOpenFamily,
    target: usize,
    witness: Witness,
) -> Result<WitnessCertificate> {
    WitnessCertificate {
        mode,
        family: family.members().clone(),
        target,
        witness,
        verified: false,
    }
    .checked(space, lattice)
}

/// Checks `g∘f = id`, and with `require_strong` also `f∘g >= id`.
pub fn verify_retraction(f: ContinuousMap, g: ContinuousMap, require_strong: bool) -> Result<Retraction> {
    let (x, y) = (f.source(), f.target());
    if g.source().len() != y.len() || g.target().len() != x.len() {
        return Err(Error::CarrierMismatch {
            left: f.source().len(),
            right: g.target().len(),
        });
    }
    if let Some(element) = (0..x.len()).find(|&e| g.apply(f.apply(e)) != e) {
        return Err(Error::NotRetraction { element });
    }
    let lagging = (0..y.len()).find(|&e| !y.order().leq(e, f.apply(g.apply(e))));
    if require_strong {
        if let Some(element) = lagging {
            return Err(Error::NotStrong { element });
        }
    }
    Ok(Retraction {
        section: f,
        retraction: g,
        strong: lagging.is_none(),
    })
}

impl Retraction {
    pub fn identity(x: &FiniteSpace) -> Self {
        Retraction {
            section: ContinuousMap::identity(x),
            retraction: ContinuousMap::identity(x),
            strong: true,
        }
    }

    /// The retract `X`.
    pub fn x(&self) -> &FiniteSpace {
        self.section.source()
    }

    /// The ambient space `Y`.
    pub fn y(&self) -> &FiniteSpace {
        self.section.target()
    }

    pub fn section(&self) -> &ContinuousMap {
        &self.section
    }

    pub fn retraction(&self) -> &ContinuousMap {
        &self.retraction
    }

    pub fn is_strong(&self) -> bool {
        self.strong
    }
}

/// `𝓕̃ = {V ∈ O(Y) : f⁻¹(V) ∈ 𝓕}`.
fn pull_back_family(
    r: &Retraction,
    lat_x: &IndexedLattice,
    lat_y: &IndexedLattice,
    family: &ScottOpenFamily,
) -> Result<ScottOpenFamily> {
    let mut members = Subset::empty(lat_y.len());
    for (i, v) in lat_y.sets().iter().enumerate() {
        let pre = index_in(lat_x, &r.section().preimage(v), "preimage of an open under f")?;
        if family.contains(pre) {
            members.insert(i);
        }
    }
    ScottOpenFamily::new(lat_y, members).map_err(|_| {
        Error::TransportHypothesisFailed("pulled-back family is not Scott open".into())
    })
}

fn retract_setup(
    r: &Retraction,
    lat_x: &IndexedLattice,
    family: &ScottOpenFamily,
    target: usize,
    caps: Caps,
) -> Result<(IndexedLattice, ScottOpenFamily, usize)> {
    check_target(family, lat_x, target)?;
    let lat_y = r.y().open_set_lattice(caps.families)?;
    let pulled = pull_back_family(r, lat_x, &lat_y, family)?;
    let gu = r.retraction().preimage(lat_x.set(target));
    let gu = index_in(&lat_y, &gu, "g⁻¹(U)")?;
    ensure(pulled.contains(gu), "g⁻¹(U) lies in the pulled-back family")?;
    Ok((lat_y, pulled, gu))
}

/// Consonance certificate on `X` obtained through a certificate on `Y`:
/// `Q = ↑g(Q_Y)`.
pub fn transport_consonance(
    r: &Retraction,
    lat_x: &IndexedLattice,
    family: &ScottOpenFamily,
    target: usize,
    caps: Caps,
) -> Result<Transported> {
    let (lat_y, pulled, gu) = retract_setup(r, lat_x, family, target, caps)?;
    let cy = consonance_witness(r.y(), &lat_y, &pulled, gu, false)?;
    let qy = witness_sets(&cy).remove(0);
    let q = r.x().saturation(&r.retraction().image(&qy));
    ensure(q.is_subset(lat_x.set(target)), "↑g(Q) ⊆ U")?;
    let trace = alloc::vec![
        format!("g⁻¹(U) = {}", r.y().show(lat_y.set(gu))),
        format!("Q_Y = {}", r.y().show(&qy)),
        format!("Q = ↑g(Q_Y) = {}", r.x().show(&q)),
    ];
    let certificate = certify(r.x(), lat_x, Mode::Consonant, family, target, Witness::Compact(q))?;
    Ok(Transported {
        space: r.x().clone(),
        lattice: lat_x.clone(),
        certificate,
        trace,
    })
}

/// Co-consonance certificate on `X` obtained through a certificate on `Y`:
/// `Ẽ = {f⁻¹(A) : A ∈ 𝓔}`.
pub fn transport_co_consonance(
    r: &Retraction,
    lat_x: &IndexedLattice,
    family: &ScottOpenFamily,
    target: usize,
    caps: Caps,
) -> Result<Transported> {
    let (lat_y, pulled, gu) = retract_setup(r, lat_x, family, target, caps)?;
    let cy = co_consonance_witness(r.y(), &lat_y, &pulled, gu)?;
    let mut e = witness_sets(&cy);
    let mut trace = alloc::vec![format!("g⁻¹(U) = {}", r.y().show(lat_y.set(gu)))];
    // Each A must contain a point y of g⁻¹(U) with f(g(y)) = y. A witness
    // {↓y : y ∈ F₀} without one is moved to {↓f(g(y)) : y ∈ F₀}, which is
    // again a witness for g⁻¹(U) since f⁻¹(↑f(g(F₀))) = ↑g(F₀) ⊇ f⁻¹(↑F₀).
    let fg = |y: usize| r.section().apply(r.retraction().apply(y));
    let anchored = |a: &Subset| a.iter().any(|y| lat_y.set(gu).contains(y) && fg(y) == y);
    if !e.iter().all(anchored) {
        let mut moved = Vec::with_capacity(e.len());
        for a in &e {
            let y = r.y().order().greatest(a).ok_or_else(|| {
                Error::TransportHypothesisFailed("witness set is not a principal down-set".into())
            })?;
            moved.push(r.y().order().down(fg(y)).clone());
        }
        let moved = dedup_keep_order(moved);
        let check = certify(r.y(), &lat_y, Mode::CoConsonant, &pulled, gu, Witness::Closed(moved))?;
        e = witness_sets(&check);
        trace.push(format!(
            "witness moved into f(X): {}",
            e.iter().map(|a| r.y().show(a)).collect::<Vec<_>>().join(" ")
        ));
    }
    ensure(e.iter().all(anchored), "y = f(g(y)) for some y ∈ g⁻¹(U) ∩ A")?;
    let pulled_e = dedup_keep_order(e.iter().map(|a| r.section().preimage(a)).collect());
    for a in &e {
        trace.push(format!(
            "A = {} pulls back to {}",
            r.y().show(a),
            r.x().show(&r.section().preimage(a))
        ));
    }
    let certificate = certify(
        r.x(),
        lat_x,
        Mode::CoConsonant,
        family,
        target,
        Witness::Closed(pulled_e),
    )?;
    Ok(Transported {
        space: r.x().clone(),
        lattice: lat_x.clone(),
        certificate,
        trace,
    })
}

/// `P_S(X)` as a strong retract of `P_S(P_S(X))`.
#[derive(Debug, Clone)]
pub struct DoubleSmyth {
    pub ps: PowerSpace,
    pub pss: PowerSpace,
    pub retraction: Retraction,
}

/// `φ(Q) = ↑ξ(Q)` with `ξ(x) = ↑x`, and `ψ(𝒜) = ⋃𝒜`.
pub fn double_smyth_retraction(x: &FiniteSpace, caps: Caps) -> Result<DoubleSmyth> {
    let ps = PowerSpace::smyth(x, caps.points)?;
    let pss = PowerSpace::smyth(ps.space(), caps.points)?;
    let mut phi = Vec::with_capacity(ps.len());
    for q in ps.points() {
        // Points of P_S(X) below some ξ(x), x ∈ Q, in reverse inclusion.
        let up_xi = Subset::from_indices(
            ps.len(),
            ps.points()
                .iter()
                .enumerate()
                .filter(|(_, k)| q.iter().any(|e| k.is_subset(x.order().up(e))))
                .map(|(i, _)| i),
        );
        phi.push(
            pss.index_of(&up_xi)
                .ok_or_else(|| Error::TransportHypothesisFailed("φ(Q) is not a point".into()))?,
        );
    }
    let mut psi = Vec::with_capacity(pss.len());
    for a in pss.points() {
        let mut union = x.empty_set();
        for k in a.iter() {
            union.union_with(ps.point(k));
        }
        psi.push(
            ps.index_of(&union)
                .ok_or_else(|| Error::TransportHypothesisFailed("ψ(𝒜) is not a point".into()))?,
        );
    }
    let f = ContinuousMap::new(ps.space().clone(), pss.space().clone(), phi)?;
    let g = ContinuousMap::new(pss.space().clone(), ps.space().clone(), psi)?;
    let retraction = verify_retraction(f, g, true)?;
    Ok(DoubleSmyth { ps, pss, retraction })
}

/// Whether `map` sends the join of every directed set to the join of its
/// image.
pub fn preserves_directed_joins(source: &FinitePoset, target: &FinitePoset, map: &[usize]) -> bool {
    source.ideals().iter().all(|ideal| match ideal.join {
        Some(j) => target.join(&ideal.members.image(target.len(), map)) == Some(map[j]),
        None => true,
    })
}

/// `Σ(Q(L))` as a retract of `Σ(σ(σ(L)))`.
#[derive(Debug, Clone)]
pub struct QlRetraction {
    /// `Q(L)`, the nonempty compact saturated sets of `ΣL`.
    pub q_points: Vec<Subset>,
    /// `σ(L)` ordered by inclusion.
    pub sigma: IndexedLattice,
    /// `σ(σ(L))`: Scott-open families of `σ(L)`, as index sets.
    pub sigma2: IndexedLattice,
    pub retraction: Retraction,
    pub directed_joins_preserved: bool,
}

/// `f(Q) = □Q` and `g(𝓕) = ⋂{U ∈ 𝓕 : U ≠ ∅}`.
///
/// The empty open is excluded from the intersection: it lies in the top
/// family only, where every nonempty Scott open contains the top of `L`.
pub fn ql_retraction(l: &FinitePoset, caps: Caps) -> Result<QlRetraction> {
    if !l.is_complete_lattice() {
        return Err(Error::NotCompleteLattice);
    }
    let sigma_l = Topology::scott(l, caps.families)?;
    let scott_l = sigma_l.to_space()?;
    let sigma = IndexedLattice::new(l.labels(), sigma_l.open_sets(caps.families)?);
    let q_points = scott_l.compact_saturated_sets(caps.points)?;
    let q_order = FinitePoset::reverse_inclusion_order(&q_points, |s| l.show(s));
    let q_space = Topology::scott(&q_order, caps.families)?.to_space()?;

    let sigma2_topology = Topology::scott(sigma.order(), caps.families)?;
    let sigma2 = IndexedLattice::new(sigma.order().labels(), sigma2_topology.open_sets(caps.families)?);
    let sigma2_space = Topology::scott(sigma2.order(), caps.families)?.to_space()?;

    let mut f = Vec::with_capacity(q_points.len());
    for q in &q_points {
        let boxed = sigma.extent(|u| q.is_subset(u));
        f.push(index_in(&sigma2, &boxed, "□Q in σ(σ(L))")?);
    }
    let mut g = Vec::with_capacity(sigma2.len());
    for fam in sigma2.sets() {
        let mut meet = l.carrier();
        for u in fam.iter().map(|i| sigma.set(i)).filter(|u| !u.is_empty()) {
            meet.intersect_with(u);
        }
        g.push(
            q_points
                .binary_search(&meet)
                .map_err(|_| Error::TransportHypothesisFailed("⋂𝓕 is not in Q(L)".into()))?,
        );
    }
    let directed_joins_preserved = preserves_directed_joins(&q_order, sigma2.order(), &f)
        && preserves_directed_joins(sigma2.order(), &q_order, &g);
    let f = ContinuousMap::new(q_space.clone(), sigma2_space.clone(), f)?;
    let g = ContinuousMap::new(sigma2_space, q_space, g)?;
    let retraction = verify_retraction(f, g, false)?;
    Ok(QlRetraction {
        q_points,
        sigma,
        sigma2,
        retraction,
        directed_joins_preserved,
    })
}

/// `X` as a retract of `X × Y` via `x ↦ (x, y0)` and the projection.
pub fn product_section_retraction(x: &FiniteSpace, y: &FiniteSpace, y0: usize) -> Result<Retraction> {
    if y0 >= y.len() {
        return Err(Error::BadAssignment);
    }
    let xy = product_space(x, y)?;
    let m = y.len();
    let alpha = (0..x.len()).map(|e| e * m + y0).collect();
    let proj = (0..xy.len()).map(|i| i / m).collect();
    let f = ContinuousMap::new(x.clone(), xy.clone(), alpha)?;
    let g = ContinuousMap::new(xy, x.clone(), proj)?;
    verify_retraction(f, g, false)
}

/// Retractions of `Y` onto its induced sub-posets: for each proper
/// nonempty subset `S` (canonical order), the first monotone `g: Y -> S`
/// fixing `S`, if any.
pub fn sub_poset_retractions(y: &FiniteSpace, limit: usize) -> Vec<Retraction> {
    let n = y.len();
    let order = y.order();
    let mut out = Vec::new();
    if n == 0 || n > 16 {
        return out;
    }
    for mask in 1u64..(1u64 << n) - 1 {
        if out.len() >= limit {
            break;
        }
        let s = Subset::from_mask(n, mask);
        let members = s.to_vec();
        let Some(g) = monotone_retraction(order, &s) else {
            continue;
        };
        let labels: Vec<String> = members.iter().map(|&e| order.label(e).into()).collect();
        let Ok(sub) = FinitePoset::from_relation(labels, |a, b| order.leq(members[a], members[b])) else {
            continue;
        };
        let x = FiniteSpace::new(sub);
        let pos = |e: usize| members.binary_search(&e).expect("retraction lands in S");
        let f = ContinuousMap::new(x.clone(), y.clone(), members.clone());
        let g = ContinuousMap::new(y.clone(), x, g.into_iter().map(pos).collect());
        if let (Ok(f), Ok(g)) = (f, g) {
            if let Ok(r) = verify_retraction(f, g, false) {
                out.push(r);
            }
        }
    }
    out
}

/// Backtracking search for a monotone map onto `s` fixing `s` pointwise.
fn monotone_retraction(order: &FinitePoset, s: &Subset) -> Option<Vec<usize>> {
    let n = order.len();
    let targets = s.to_vec();
    let sequence = order.linear_extension();
    let mut g: Vec<Option<usize>> = (0..n).map(|e| s.contains(e).then_some(e)).collect();
    fn consistent(order: &FinitePoset, g: &[Option<usize>], e: usize, v: usize) -> bool {
        (0..g.len()).all(|o| match g[o] {
            Some(w) => {
                (!order.leq(o, e) || order.leq(w, v)) && (!order.leq(e, o) || order.leq(v, w))
            }
            None => true,
        })
    }
    fn go(
        order: &FinitePoset,
        g: &mut Vec<Option<usize>>,
        sequence: &[usize],
        targets: &[usize],
        k: usize,
    ) -> bool {
        if k == sequence.len() {
            return true;
        }
        let e = sequence[k];
        if g[e].is_some() {
            return go(order, g, sequence, targets, k + 1);
        }
        for &v in targets {
            if consistent(order, g, e, v) {
                g[e] = Some(v);
                if go(order, g, sequence, targets, k + 1) {
                    return true;
                }
                g[e] = None;
            }
        }
        false
    }
    if go(order, &mut g, &sequence, &targets, 0) {
        Some(g.into_iter().map(|v| v.expect("assigned")).collect())
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// From the base space to the powerspace.
    Up,
    /// From the powerspace back to the base space.
    Down,
}

/// Greedy growth in canonical order until the union lies in the family,
/// then pruning in the same order while it still does.
fn finite_subfamily(
    pieces: &[(usize, Subset)],
    mut inside: impl FnMut(&Subset) -> bool,
    len: usize,
) -> Result<Vec<usize>> {
    let union_of = |chosen: &[usize]| {
        let mut u = Subset::empty(len);
        for &c in chosen {
            u.union_with(&pieces[c].1);
        }
        u
    };
    let mut chosen = Vec::new();
    let mut reached = false;
    for c in 0..pieces.len() {
        chosen.push(c);
        if inside(&union_of(&chosen)) {
            reached = true;
            break;
        }
    }
    ensure(reached, "some finite subfamily has its union in the family")?;
    let mut k = 0;
    while k < chosen.len() {
        let mut trial = chosen.clone();
        trial.remove(k);
        if !trial.is_empty() && inside(&union_of(&trial)) {
            chosen = trial;
        } else {
            k += 1;
        }
    }
    Ok(chosen)
}

/// All ways of choosing one element from each list, in lexicographic
/// order. An empty list of lists has exactly one (empty) choice.
fn choices<T: Clone>(lists: &[Vec<T>], cap: usize) -> Result<Vec<Vec<T>>> {
    let total = lists
        .iter()
        .try_fold(1usize, |acc, l| acc.checked_mul(l.len()))
        .unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::CapExceeded {
            what: "distribution choices",
            cap,
        });
    }
    let mut out: Vec<Vec<T>> = alloc::vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for item in list {
                let mut c = prefix.clone();
                c.push(item.clone());
                next.push(c);
            }
        }
        out = next;
    }
    Ok(out)
}

fn check_product_hypothesis(lat_x: &IndexedLattice, caps: Caps) -> Result<()> {
    ensure(
        product_scott_check(lat_x.order(), lat_x.order(), caps.families)?,
        "σ(O(X)×O(X)) is the product topology",
    )
}

fn least_in(s: &Subset, step: &str) -> Result<usize> {
    s.first()
        .ok_or_else(|| Error::TransportHypothesisFailed(format!("{step}: nothing to pick")))
}

/// A space with one of its powerspaces and both open-set lattices, built
/// once and shared by every transport on that pair. Hypothesis checks are
/// run on first use and remembered.
#[derive(Debug)]
pub struct PowerContext {
    x: FiniteSpace,
    power: PowerSpace,
    lat_x: IndexedLattice,
    lat_power: IndexedLattice,
    caps: Caps,
    product_hypothesis: OnceCell<Result<()>>,
    strong_compactness: OnceCell<Result<()>>,
    ic_violation: OnceCell<Result<Option<IcViolation>>>,
}

impl PowerContext {
    pub fn new(x: &FiniteSpace, kind: PowerKind, caps: Caps) -> Result<Self> {
        let power = PowerSpace::new(kind, x, caps.points)?;
        let lat_x = x.open_set_lattice(caps.families)?;
        let lat_power = power.space().open_set_lattice(caps.families)?;
        Ok(PowerContext {
            x: x.clone(),
            power,
            lat_x,
            lat_power,
            caps,
            product_hypothesis: OnceCell::new(),
            strong_compactness: OnceCell::new(),
            ic_violation: OnceCell::new(),
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.x
    }

    pub fn power(&self) -> &PowerSpace {
        &self.power
    }

    pub fn base_lattice(&self) -> &IndexedLattice {
        &self.lat_x
    }

    pub fn power_lattice(&self) -> &IndexedLattice {
        &self.lat_power
    }

    /// `σ(O(X) × O(X))` is the product topology.
    pub fn product_hypothesis(&self) -> Result<()> {
        self.product_hypothesis
            .get_or_init(|| check_product_hypothesis(&self.lat_x, self.caps))
            .clone()
    }

    fn strong_compactness(&self) -> Result<()> {
        self.strong_compactness
            .get_or_init(|| {
                let ks = self.x.compact_saturated_sets(self.caps.points)?;
                for k in &ks {
                    ensure(
                        self.x.is_strongly_compact(k, self.caps.families)?,
                        "every compact subset is strongly compact",
                    )?;
                }
                Ok(())
            })
            .clone()
    }

    fn intersection_compatible(&self) -> Result<()> {
        let found = self
            .ic_violation
            .get_or_init(|| self.x.intersection_compatibility_violation(self.caps.families))
            .clone()?;
        match found {
            Some(v) => Err(Error::NotIntersectionCompatible {
                u: v.u,
                v: v.v,
                w: v.w,
            }),
            None => Ok(()),
        }
    }

    /// Runs the transport matching the powerspace kind. `Down` takes a
    /// family on `O(X)`; `Up` a family on the powerspace's open sets.
    pub fn transport(&self, direction: Direction, family: &Subset, target: usize) -> Result<Transported> {
        match (self.power.kind(), direction) {
            (PowerKind::Smyth, Direction::Down) => {
                let family = ScottOpenFamily::new(&self.lat_x, family.clone())?;
                smyth_down(self, &family, target)
            }
            (PowerKind::Smyth, Direction::Up) => {
                let family = ScottOpenFamily::new(&self.lat_power, family.clone())?;
                smyth_up(self, &family, target)
            }
            (PowerKind::Lower, Direction::Down) => {
                let family = ScottOpenFamily::new(&self.lat_x, family.clone())?;
                lower_down(self, &family, target)
            }
            (PowerKind::Lower, Direction::Up) => {
                self.intersection_compatible()?;
                let family = ScottOpenFamily::new(&self.lat_power, family.clone())?;
                lower_up(self, &family, target)
            }
        }
    }
}

/// Sample families for one direction: principal families of basic
/// opens and of unions of consecutive pairs; on the base, also the
/// point filters `{V : x ∈ V}`.
pub fn transport_samples(ctx: &PowerContext, direction: Direction) -> Result<Vec<(Subset, usize)>> {
    let mut out = Vec::new();
    let lat_x = ctx.base_lattice();
    let opens: Vec<&Subset> = lat_x.sets().iter().filter(|u| !u.is_empty()).collect();
    match direction {
        Direction::Down => {
            for (i, u) in lat_x.sets().iter().enumerate() {
                if !u.is_empty() {
                    out.push((lat_x.order().up(i).clone(), i));
                }
            }
            for x in 0..ctx.space().len() {
                let target = lat_x.index_of(ctx.space().order().up(x)).expect("principal up-set is open");
                out.push((lat_x.extent(|v| v.contains(x)), target));
            }
        }
        Direction::Up => {
            let lat = ctx.power_lattice();
            let ps = ctx.power();
            let basic = |u: &Subset| match ps.kind() {
                PowerKind::Smyth => ps.extent(Extent::Box, u),
                PowerKind::Lower => ps.extent(Extent::Diamond, u),
            };
            let mut targets = Vec::new();
            for u in &opens {
                targets.push(basic(u)?);
            }
            for pair in opens.windows(2) {
                let (a, b) = (basic(pair[0])?, basic(pair[1])?);
                targets.push(a.union(&b));
                if ps.kind() == PowerKind::Lower {
                    targets.push(a.intersection(&b));
                }
            }
            targets.sort();
            targets.dedup();
            for t in targets.iter().filter(|t| !t.is_empty()) {
                let i = lat.index_of(t).expect("basic opens are open");
                out.push((lat.order().up(i).clone(), i));
            }
        }
    }
    Ok(out)
}

/// Transport between `X` and its Smyth powerspace.
///
/// `Down`: `family` and `target` live on `O(X)`; the certificate is built
/// from one on `P_S(X)` and lands on `X`. `Up`: `family` and `target` live
/// on `O(P_S(X))`; the certificate is assembled from certificates on `X`
/// and lands on `P_S(X)`.
pub fn smyth_witness_transport(
    x: &FiniteSpace,
    direction: Direction,
    family: &Subset,
    target: usize,
    caps: Caps,
) -> Result<Transported> {
    PowerContext::new(x, PowerKind::Smyth, caps)?.transport(direction, family, target)
}

fn smyth_down(ctx: &PowerContext, family: &ScottOpenFamily, target: usize) -> Result<Transported> {
    let (x, ps, lat_x, lat_ps) = (&ctx.x, &ctx.power, &ctx.lat_x, &ctx.lat_power);
    check_target(family, lat_x, target)?;
    ctx.strong_compactness()?;
    let u = lat_x.set(target);
    let xi: Vec<usize> = (0..x.len())
        .map(|e| index_in_points(ps, x.order().up(e), "ξ(x) = ↑x"))
        .collect::<Result<_>>()?;
    ContinuousMap::new(x.clone(), ps.space().clone(), xi.clone())?;
    let pull = |w: &Subset| index_in(lat_x, &w.preimage(&xi), "ξ⁻¹ of an open");
    let mut pulled = Subset::empty(lat_ps.len());
    for (i, w) in lat_ps.sets().iter().enumerate() {
        if family.contains(pull(w)?) {
            pulled.insert(i);
        }
    }
    let pulled = ScottOpenFamily::new(lat_ps, pulled)?;
    let box_u = index_in(lat_ps, &ps.extent(Extent::Box, u)?, "□U")?;
    ensure(pulled.contains(box_u), "□U lies in f⁻¹(𝓗)")?;

    let cert_ps = co_consonance_witness(ps.space(), lat_ps, &pulled, box_u)?;
    let closed_ps = witness_sets(&cert_ps);
    let mut trace = Vec::new();
    let mut points = x.empty_set();
    let mut picks = Vec::new();
    for f in &closed_ps {
        let q_f = least_in(&f.intersection(lat_ps.set(box_u)), "Q_F ∈ F ∩ □U")?;
        let q = ps.point(q_f);
        let n_f = x
            .strong_compactness_witness(q, u)
            .ok_or_else(|| Error::TransportHypothesisFailed("finite N_F".into()))?;
        trace.push(format!("Q_F = {}, N_F = {}", x.show(q), x.show(&n_f)));
        points.union_with(&n_f);
        picks.push((f.clone(), n_f));
    }
    let e: Vec<Subset> = points.iter().map(|p| x.order().down(p).clone()).collect();

    // Claim 1 and claim 2, replayed over the extent of the new witness.
    let extent = diamond_extent(lat_x, &e);
    ensure(extent.contains(target), "U ∈ ⋂◊Ẽ")?;
    for v in extent.iter() {
        let vs = lat_x.set(v);
        ensure(points.is_subset(vs), "⋃N_F ⊆ V")?;
        let box_v = ps.extent(Extent::Box, vs)?;
        for (f, n_f) in &picks {
            let up_n = index_in_points(ps, &x.saturation(n_f), "↑N_F")?;
            ensure(f.contains(up_n) && box_v.contains(up_n), "↑N_F ∈ □V ∩ F")?;
        }
        let box_v = index_in(lat_ps, &box_v, "□V")?;
        ensure(pulled.contains(box_v), "□V ∈ f⁻¹(𝓗)")?;
        ensure(pull(lat_ps.set(box_v))? == v, "f(□V) = V")?;
        ensure(family.contains(v), "V ∈ 𝓗")?;
    }
    let certificate = certify(x, lat_x, Mode::CoConsonant, family, target, Witness::Closed(e))?;
    Ok(Transported {
        space: x.clone(),
        lattice: lat_x.clone(),
        certificate,
        trace,
    })
}

fn index_in_points(ps: &PowerSpace, s: &Subset, step: &str) -> Result<usize> {
    ps.index_of(s)
        .ok_or_else(|| Error::TransportHypothesisFailed(format!("{step}: not a point")))
}

fn smyth_up(ctx: &PowerContext, family: &ScottOpenFamily, target: usize) -> Result<Transported> {
    let (x, ps, lat_x, lat_ps) = (&ctx.x, &ctx.power, &ctx.lat_x, &ctx.lat_power);
    check_target(family, lat_ps, target)?;
    ctx.product_hypothesis()?;
    let frak = lat_ps.set(target);
    // 𝔉 = ⋃{□K : K ∈ 𝔉}: each member K is open in X and □K ⊆ 𝔉.
    let mut pieces = Vec::new();
    for k in frak.iter() {
        let boxed = ps.extent(Extent::Box, ps.point(k))?;
        ensure(boxed.contains(k) && boxed.is_subset(frak), "□K ⊆ 𝔉")?;
        pieces.push((k, boxed));
    }
    let chosen = finite_subfamily(
        &pieces,
        |s| lat_ps.index_of(s).is_some_and(|i| family.contains(i)),
        ps.len(),
    )?;
    let opens: Vec<Subset> = chosen.iter().map(|&c| ps.point(pieces[c].0).clone()).collect();
    let mut trace = alloc::vec![format!(
        "U_k = {}",
        opens.iter().map(|o| x.show(o)).collect::<Vec<_>>().join(" ")
    )];

    let mut boxes = Vec::new();
    let mut certs = Vec::new();
    for uk in &opens {
        let i = index_in(lat_x, uk, "U_k")?;
        let h = ScottOpenFamily::principal(lat_x, i)?;
        let c = co_consonance_witness(x, lat_x, &h, i)?;
        trace.push(format!(
            "𝓔_k for {} = {}",
            x.show(uk),
            witness_sets(&c).iter().map(|a| x.show(a)).collect::<Vec<_>>().join(" ")
        ));
        certs.push(witness_sets(&c));
        boxes.push(h);
    }
    let mut e_sets = Vec::new();
    for (k, ek) in certs.iter().enumerate() {
        let mut ext = Subset::full(ps.len());
        for v in ek {
            ext.intersect_with(&ps.extent(Extent::Diamond, v)?);
        }
        ensure(ps.space().is_closed(&ext), "E_k is closed in P_S(X)")?;
        // Claim 1: F_k = ↑{x_{k,V}} lies in □U_k ∩ E_k.
        let mut picks = x.empty_set();
        for v in ek {
            picks.insert(least_in(&opens[k].intersection(v), "x_{k,V} ∈ U_k ∩ V")?);
        }
        let fk = index_in_points(ps, &x.saturation(&picks), "F_k")?;
        ensure(ext.contains(fk) && ps.point(fk).is_subset(&opens[k]), "F_k ∈ □U_k ∩ E_k")?;
        e_sets.push(ext);
    }

    // Claim 2, replayed over the extent of the new witness.
    let extent = diamond_extent(lat_ps, &e_sets);
    for a in extent.iter() {
        let a_set = lat_ps.set(a);
        let mut union = Subset::empty(ps.len());
        for (k, ek) in e_sets.iter().enumerate() {
            let q = least_in(&a_set.intersection(ek), "Q_k ∈ 𝔄 ∩ E_k")?;
            let w = ps.point(q);
            ensure(certs[k].iter().all(|v| w.intersects(v)), "W_k ∈ ⋂◊𝓔_k")?;
            ensure(boxes[k].contains(index_in(lat_x, w, "W_k")?), "W_k ∈ 𝓗_k")?;
            union.union_with(&ps.extent(Extent::Box, w)?);
        }
        let beta = index_in(lat_ps, &union, "β(W_1,…,W_n)")?;
        ensure(family.contains(beta) && union.is_subset(a_set), "β(W) ∈ 𝓕 below 𝔄")?;
    }
    let certificate = certify(
        ps.space(),
        lat_ps,
        Mode::CoConsonant,
        family,
        target,
        Witness::Closed(e_sets),
    )?;
    Ok(Transported {
        space: ps.space().clone(),
        lattice: lat_ps.clone(),
        certificate,
        trace,
    })
}

/// Transport between `X` and its lower powerspace; directions as for
/// [`smyth_witness_transport`]. `Up` requires `X` intersection-compatible.
pub fn lower_witness_transport(
    x: &FiniteSpace,
    direction: Direction,
    family: &Subset,
    target: usize,
    caps: Caps,
) -> Result<Transported> {
    if direction == Direction::Up {
        if let Some(v) = x.intersection_compatibility_violation(caps.families)? {
            return Err(Error::NotIntersectionCompatible {
                u: v.u,
                v: v.v,
                w: v.w,
            });
        }
    }
    PowerContext::new(x, PowerKind::Lower, caps)?.transport(direction, family, target)
}

fn lower_down(ctx: &PowerContext, family: &ScottOpenFamily, target: usize) -> Result<Transported> {
    let (x, ph, lat_x, lat_ph) = (&ctx.x, &ctx.power, &ctx.lat_x, &ctx.lat_power);
    check_target(family, lat_x, target)?;
    let u = lat_x.set(target);
    let xi: Vec<usize> = (0..x.len())
        .map(|e| index_in_points(ph, x.order().down(e), "ξ(x) = cl{x}"))
        .collect::<Result<_>>()?;
    ContinuousMap::new(x.clone(), ph.space().clone(), xi.clone())?;
    let eta = |w: &Subset| index_in(lat_x, &w.preimage(&xi), "η of an open");
    let mut pulled = Subset::empty(lat_ph.len());
    for (i, w) in lat_ph.sets().iter().enumerate() {
        if family.contains(eta(w)?) {
            pulled.insert(i);
        }
    }
    let pulled = ScottOpenFamily::new(lat_ph, pulled)?;
    let dia_u = ph.extent(Extent::Diamond, u)?;
    let dia_u = index_in(lat_ph, &dia_u, "◊U")?;
    ensure(pulled.contains(dia_u), "◊U ∈ η⁻¹(𝓕)")?;

    let cert_ph = co_consonance_witness(ph.space(), lat_ph, &pulled, dia_u)?;
    let mut trace = Vec::new();
    let mut picks = Vec::new();
    for a in witness_sets(&cert_ph) {
        let f_a = least_in(&a.intersection(lat_ph.set(dia_u)), "F_A ∈ ◊U ∩ A")?;
        trace.push(format!("F_A = {}", x.show(ph.point(f_a))));
        picks.push((a, f_a));
    }
    let e = dedup_keep_order(picks.iter().map(|(_, f)| ph.point(*f).clone()).collect());

    let extent = diamond_extent(lat_x, &e);
    ensure(extent.contains(target), "U ∈ ⋂◊Ẽ")?;
    for v in extent.iter() {
        let dia_v = ph.extent(Extent::Diamond, lat_x.set(v))?;
        for (a, f_a) in &picks {
            ensure(dia_v.contains(*f_a) && a.contains(*f_a), "F_A ∈ ◊V ∩ A")?;
        }
        let dia_v = index_in(lat_ph, &dia_v, "◊V")?;
        ensure(pulled.contains(dia_v), "◊V ∈ η⁻¹(𝓕)")?;
        ensure(eta(lat_ph.set(dia_v))? == v, "η(◊V) = V")?;
    }
    let certificate = certify(x, lat_x, Mode::CoConsonant, family, target, Witness::Closed(e))?;
    Ok(Transported {
        space: x.clone(),
        lattice: lat_x.clone(),
        certificate,
        trace,
    })
}

/// A finite intersection `⋂◊U_k` equal to a union of basic opens of
/// `P_H(X)` lying in a Scott-open family, found by greedy selection and
/// distribution of `⋃ᵢ⋂ⱼ◊U_j` into `⋂◊(⋃ⱼ U_{j})`.
fn lower_normal_form(
    x: &FiniteSpace,
    ph: &PowerSpace,
    open: &Subset,
    mut inside: impl FnMut(&Subset) -> bool,
    caps: Caps,
) -> Result<Vec<Subset>> {
    // Basic open around A: ⋂{◊↑a : a maximal in A}, which is {B : A ⊆ B}.
    let mut pieces = Vec::new();
    let mut generators = Vec::new();
    for a in open.iter() {
        let tops: Vec<Subset> = x
            .order()
            .maximal(ph.point(a))
            .iter()
            .map(|t| x.order().up(t).clone())
            .collect();
        let mut basic = Subset::full(ph.len());
        for t in &tops {
            basic.intersect_with(&ph.extent(Extent::Diamond, t)?);
        }
        ensure(basic.contains(a) && basic.is_subset(open), "basic open inside 𝔉")?;
        pieces.push((a, basic));
        generators.push(tops);
    }
    let chosen = finite_subfamily(&pieces, &mut inside, ph.len())?;
    let lists: Vec<Vec<Subset>> = chosen.iter().map(|&c| generators[c].clone()).collect();
    let mut s1: Vec<Subset> = choices(&lists, caps.families)?
        .into_iter()
        .map(|c| {
            let mut u = x.empty_set();
            for part in &c {
                u.union_with(part);
            }
            u
        })
        .collect();
    s1.sort();
    s1.dedup();
    let mut meet = Subset::full(ph.len());
    for u in &s1 {
        meet.intersect_with(&ph.extent(Extent::Diamond, u)?);
    }
    let mut union = Subset::empty(ph.len());
    for &c in &chosen {
        union.union_with(&pieces[c].1);
    }
    ensure(meet == union, "⋃ᵢ⋂ⱼ◊U_j = ⋂◊(⋃U)")?;
    Ok(s1)
}

fn lower_up(ctx: &PowerContext, family: &ScottOpenFamily, target: usize) -> Result<Transported> {
    let (x, ph, lat_x, lat_ph) = (&ctx.x, &ctx.power, &ctx.lat_x, &ctx.lat_power);
    let caps = ctx.caps;
    check_target(family, lat_ph, target)?;
    ctx.product_hypothesis()?;
    let in_family = |s: &Subset| lat_ph.index_of(s).is_some_and(|i| family.contains(i));
    let opens = lower_normal_form(x, ph, lat_ph.set(target), in_family, caps)?;
    let beta = |us: &[Subset]| -> Result<Subset> {
        let mut m = Subset::full(ph.len());
        for u in us {
            m.intersect_with(&ph.extent(Extent::Diamond, u)?);
        }
        Ok(m)
    };
    ensure(in_family(&beta(&opens)?), "⋂◊U_k ∈ 𝓕")?;
    let mut trace = alloc::vec![format!(
        "S₁ = {}",
        opens.iter().map(|o| x.show(o)).collect::<Vec<_>>().join(" ")
    )];

    let mut boxes = Vec::new();
    let mut certs = Vec::new();
    for uk in &opens {
        let i = index_in(lat_x, uk, "U_k")?;
        let h = ScottOpenFamily::principal(lat_x, i)?;
        let c = co_consonance_witness(x, lat_x, &h, i)?;
        trace.push(format!(
            "𝓕_k for {} = {}",
            x.show(uk),
            witness_sets(&c).iter().map(|a| x.show(a)).collect::<Vec<_>>().join(" ")
        ));
        certs.push(witness_sets(&c));
        boxes.push(h);
    }
    let mut e1 = Vec::new();
    for choice in choices(&certs, caps.families)? {
        let mut b = x.empty_set();
        for a in &choice {
            b.union_with(a);
        }
        let m = ph.extent(Extent::Box, &b)?;
        // Claim 1: ⋃cl{x_j} with x_j ∈ U_j ∩ A_j lies in ⋂◊U_j ∩ M.
        let mut witness = x.empty_set();
        for (uj, aj) in opens.iter().zip(&choice) {
            let xj = least_in(&uj.intersection(aj), "x_j ∈ U_j ∩ A_j")?;
            witness.union_with(x.order().down(xj));
        }
        let w = index_in_points(ph, &witness, "⋃cl{x_j}")?;
        ensure(m.contains(w) && beta(&opens)?.contains(w), "⋃cl{x_j} ∈ ⋂◊U_j ∩ M")?;
        e1.push(m);
    }
    e1.sort();
    e1.dedup();

    // Claim 2, replayed over the extent of the new witness.
    let extent = diamond_extent(lat_ph, &e1);
    for a in extent.iter() {
        let vs = lower_normal_form(x, ph, lat_ph.set(a), |s| extent_contains(lat_ph, &extent, s), caps)?;
        let bv = beta(&vs)?;
        ensure(bv.is_subset(lat_ph.set(a)), "⋂◊V_i ⊆ 𝒜")?;
        let meets_all = |v: &Subset, k: usize| certs[k].iter().all(|c| v.intersects(c));
        let mut gs = opens.clone();
        for v in &vs {
            let mut placed = false;
            for (k, g) in gs.iter_mut().enumerate() {
                if meets_all(v, k) {
                    g.intersect_with(v);
                    placed = true;
                }
            }
            ensure(placed, "each V_i lies in some ⋂◊𝓕_k")?;
        }
        for (k, g) in gs.iter().enumerate() {
            ensure(meets_all(g, k), "G_k ∈ ⋂◊𝓕_k")?;
            ensure(boxes[k].contains(index_in(lat_x, g, "G_k")?), "G_k ∈ 𝓗_k")?;
        }
        let bg = beta(&gs)?;
        ensure(bg.is_subset(&bv), "⋂◊G_k ⊆ ⋂◊V_i")?;
        ensure(in_family(&bg), "⋂◊G_k ∈ 𝓕")?;
    }
    let certificate = certify(
        ph.space(),
        lat_ph,
        Mode::CoConsonant,
        family,
        target,
        Witness::Closed(e1),
    )?;
    Ok(Transported {
        space: ph.space().clone(),
        lattice: lat_ph.clone(),
        certificate,
        trace,
    })
}

fn extent_contains(lattice: &IndexedLattice, extent: &Subset, s: &Subset) -> bool {
    lattice.index_of(s).is_some_and(|i| extent.contains(i))
}
