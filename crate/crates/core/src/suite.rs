//! Per-instance battery of checks: topology coincidence, (co-)consonance,
//! space properties, powerspace laws, retractions, transports and the
//! implications between them.
//!
//! Every check computes its hypotheses and conclusions with the ordinary
//! checkers of this crate. Anything that runs past a cap is reported as
//! skipped rather than failed.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::consonance::{check_consonance, co_consonance_witness, ConsonanceReport, Mode, ScottOpenFamily};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::powerspace::{product_space, Extent, PowerKind, PowerSpace};
use crate::space::{FiniteSpace, IndexedLattice};
use crate::subset::Subset;
use crate::topology::{product_scott_check, topology_equal, Topology};
use crate::transport::{
    double_smyth_retraction, ql_retraction, sub_poset_retractions, transport_co_consonance,
    transport_consonance, transport_samples, Direction, PowerContext, Retraction,
};
use crate::Caps;

/// Largest base space for which `P_S(P_S(X))` is built.
pub const DOUBLE_SMYTH_MAX: usize = 4;
/// Largest `Q(L)` on which joins are compared over every subfamily.
pub const SUBFAMILY_MAX: usize = 16;
/// Sub-poset retractions sampled per instance, besides the identity.
pub const RETRACTIONS_PER_INSTANCE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub verdict: Verdict,
    pub detail: String,
    /// Named counts, e.g. certificates produced or pairs tried.
    pub metrics: Vec<(String, usize)>,
}

impl CheckRecord {
    pub fn metric(&self, key: &str) -> Option<usize> {
        self.metrics.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceReport {
    pub name: String,
    pub size: usize,
    pub checks: Vec<CheckRecord>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// The outcome of a check before it is filed.
struct Outcome {
    ok: bool,
    skip: bool,
    detail: String,
    metrics: Vec<(String, usize)>,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            skip: false,
            detail: detail.into(),
            metrics: Vec::new(),
        }
    }

    fn with(mut self, key: &str, value: usize) -> Self {
        self.metrics.push((key.to_string(), value));
        self
    }
}

fn skipped(why: &str) -> Result<Option<Outcome>> {
    let mut o = Outcome::new(true, why);
    o.skip = true;
    Ok(Some(o))
}

fn file(id: &str, r: Result<Option<Outcome>>) -> CheckRecord {
    let (verdict, detail, metrics) = match r {
        Ok(Some(o)) => (
            match (o.skip, o.ok) {
                (true, _) => Verdict::Skipped,
                (false, true) => Verdict::Pass,
                (false, false) => Verdict::Fail,
            },
            o.detail,
            o.metrics,
        ),
        Ok(None) => (Verdict::Skipped, "not applicable".to_string(), Vec::new()),
        Err(Error::CapExceeded { what, cap }) => (
            Verdict::Skipped,
            format!("{what} exceeds cap {cap}"),
            Vec::new(),
        ),
        Err(e) => (Verdict::Fail, e.to_string(), Vec::new()),
    };
    CheckRecord {
        id: id.to_string(),
        verdict,
        detail,
        metrics,
    }
}

/// An implication check: vacuous when the hypothesis fails.
fn implication(hypothesis: bool, conclusion: impl FnOnce() -> Result<bool>) -> Result<Option<Outcome>> {
    if !hypothesis {
        return Ok(Some(Outcome::new(true, "hypothesis false")));
    }
    let c = conclusion()?;
    Ok(Some(Outcome::new(
        c,
        if c { "hypothesis true, conclusion true" } else { "hypothesis true, conclusion false" },
    )))
}

struct Runner<'a> {
    name: &'a str,
    p: &'a FinitePoset,
    x: FiniteSpace,
    caps: Caps,
    lattice: Result<IndexedLattice>,
    consonant: Result<ConsonanceReport>,
    co_consonant: Result<ConsonanceReport>,
}

pub fn run_instance(name: &str, p: &FinitePoset, caps: Caps) -> InstanceReport {
    let x = FiniteSpace::new(p.clone());
    let r = Runner {
        name,
        p,
        lattice: x.open_set_lattice(caps.families),
        consonant: check_consonance(&x, Mode::Consonant, caps),
        co_consonant: check_consonance(&x, Mode::CoConsonant, caps),
        x,
        caps,
    };
    let smyth = PowerContext::new(&r.x, PowerKind::Smyth, caps);
    let lower = PowerContext::new(&r.x, PowerKind::Lower, caps);
    let checks = alloc::vec![
        file("topology.coincidence", r.topology_coincidence()),
        file("poset.way-below", r.way_below()),
        file("consonance.consonant", r.consonance(Mode::Consonant)),
        file("consonance.co-consonant", r.consonance(Mode::CoConsonant)),
        file("space.properties", r.properties()),
        file("powerspace.laws", r.powerspace_laws()),
        file("powerspace.double-smyth", r.double_smyth()),
        file("lattice.q-frame", r.q_frame()),
        file("lattice.ql-retraction", r.ql()),
        file("transport.retract", r.retracts()),
        file("transport.product-hypothesis", r.product_hypothesis()),
        file("transport.smyth-down", r.power_transport(&smyth, Direction::Down)),
        file("transport.smyth-up", r.power_transport(&smyth, Direction::Up)),
        file("transport.lower-down", r.power_transport(&lower, Direction::Down)),
        file("transport.lower-up", r.lower_up(&lower)),
        file("implication.co-consonant-scott-sober", r.scott_sober()),
        file("implication.continuous-co-consonant", r.continuous_co_consonant()),
        file("implication.double-smyth-retract", r.double_smyth_implication()),
        file("implication.closed-set-retract", r.closed_set_implication()),
        file("implication.ql-retract", r.ql_implication()),
        file("implication.core-compact-smyth", r.core_compact_smyth()),
        file("implication.product-factor", r.product_factor()),
        file("implication.compact-strongly-compact", r.strongly_compact()),
    ];
    InstanceReport {
        name: name.to_string(),
        size: p.len(),
        checks,
    }
}

/// Runs every instance in order. Reports come back in input order.
pub fn run_suite(instances: &[(String, FinitePoset)], caps: Caps) -> Vec<InstanceReport> {
    instances.iter().map(|(n, p)| run_instance(n, p, caps)).collect()
}

fn report_of(r: &Result<ConsonanceReport>) -> Result<&ConsonanceReport> {
    r.as_ref().map_err(Clone::clone)
}

fn holds(space: &FiniteSpace, mode: Mode, caps: Caps) -> Result<bool> {
    Ok(check_consonance(space, mode, caps)?.holds)
}

impl Runner<'_> {
    fn lattice(&self) -> Result<&IndexedLattice> {
        self.lattice.as_ref().map_err(Clone::clone)
    }

    fn report(&self, mode: Mode) -> Result<&ConsonanceReport> {
        match mode {
            Mode::Consonant => report_of(&self.consonant),
            Mode::CoConsonant => report_of(&self.co_consonant),
        }
    }

    fn topology_coincidence(&self) -> Result<Option<Outcome>> {
        let a = Topology::alexandroff(self.p);
        let s = Topology::scott(self.p, self.caps.families)?;
        let u = Topology::upper(self.p);
        let (sa, ua) = (topology_equal(&s, &a)?, topology_equal(&u, &a)?);
        let mut detail = String::from("scott = upper = alexandroff");
        if let Some(w) = sa.witness.or(ua.witness) {
            detail = format!("mismatch on {}", self.x.show(&w));
        }
        Ok(Some(Outcome::new(sa.equal && ua.equal, detail)))
    }

    fn way_below(&self) -> Result<Option<Outcome>> {
        let n = self.p.len();
        let bad = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.p.way_below(a, b) != self.p.leq(a, b));
        let continuous = self.p.classify().is_continuous;
        let detail = match bad {
            Some((a, b)) => format!("way-below differs from order at ({}, {})", self.p.label(a), self.p.label(b)),
            None => "way-below coincides with the order".to_string(),
        };
        Ok(Some(Outcome::new(bad.is_none() && continuous, detail)))
    }

    fn consonance(&self, mode: Mode) -> Result<Option<Outcome>> {
        let report = self.report(mode)?;
        let lattice = self.lattice()?;
        let reverified = report.certificates.iter().all(|c| c.verified && c.verify(&self.x, lattice));
        let ok = report.holds && reverified && report.formulations_agree();
        let detail = match report.quantified {
            Some(q) => format!(
                "families {}, quantified {q}, topological {}",
                report.families, report.topological
            ),
            None => format!("family enumeration over cap, topological {}", report.topological),
        };
        Ok(Some(
            Outcome::new(ok, detail)
                .with("families", report.families)
                .with("certificates", report.certificates.len())
                .with("empty_targets", report.empty_targets),
        ))
    }

    fn properties(&self) -> Result<Option<Outcome>> {
        let props = self.x.properties(self.caps.families)?;
        let sob = self.x.sobriety_report(self.caps.families)?;
        let core = self.lattice()?.order().classify().is_continuous;
        let ok = props.sober
            && sob.is_sober
            && sob.closure_identity
            && props.well_filtered
            && props.coherent
            && props.locally_compact
            && props.core_compact == core
            && props.core_compact;
        let mut detail = format!(
            "sober {}, well-filtered {}, coherent {}, locally compact {}, core-compact {}, intersection-compatible {}",
            props.sober,
            props.well_filtered,
            props.coherent,
            props.locally_compact,
            props.core_compact,
            props.intersection_compatible
        );
        if let Some(v) = &props.ic_violation {
            detail.push_str(&format!(
                " (U={}, V={}, W={})",
                self.x.show(&v.u),
                self.x.show(&v.v),
                self.x.show(&v.w)
            ));
        }
        Ok(Some(Outcome::new(ok, detail).with("irreducibles", sob.irreducibles.len())))
    }

    fn powerspace_laws(&self) -> Result<Option<Outcome>> {
        let ps = PowerSpace::smyth(&self.x, self.caps.points)?;
        let ph = PowerSpace::lower(&self.x, self.caps.points)?;
        let opens = self.x.opens(self.caps.families)?;
        let closed = self.x.closed_sets(self.caps.families)?;
        let mut pairs = 0;
        for (i, u) in opens.iter().enumerate() {
            for v in &opens[i..] {
                pairs += 1;
                let boxes = ps.extent(Extent::Box, &u.intersection(v))?
                    == ps.extent(Extent::Box, u)?.intersection(&ps.extent(Extent::Box, v)?);
                let diamonds = ph.extent(Extent::Diamond, &u.union(v))?
                    == ph.extent(Extent::Diamond, u)?.union(&ph.extent(Extent::Diamond, v)?);
                if !boxes || !diamonds {
                    return Ok(Some(Outcome::new(
                        false,
                        format!("fails on U={}, V={}", self.x.show(u), self.x.show(v)),
                    )));
                }
            }
        }
        for (i, a) in closed.iter().enumerate() {
            for b in &closed[i..] {
                let diamonds = ps.extent(Extent::Diamond, &a.union(b))?
                    == ps.extent(Extent::Diamond, a)?.union(&ps.extent(Extent::Diamond, b)?);
                let boxes = ph.extent(Extent::Box, &a.intersection(b))?
                    == ph.extent(Extent::Box, a)?.intersection(&ph.extent(Extent::Box, b)?);
                if !boxes || !diamonds {
                    return Ok(Some(Outcome::new(
                        false,
                        format!("fails on closed A={}, B={}", self.x.show(a), self.x.show(b)),
                    )));
                }
            }
        }
        let smyth_order = ps.specialization_law_holds();
        let lower_order = ph.specialization_law_holds();
        Ok(Some(
            Outcome::new(
                smyth_order && lower_order,
                format!(
                    "smyth specialization is reverse inclusion: {smyth_order}; lower specialization is inclusion: {lower_order}"
                ),
            )
            .with("open_pairs", pairs)
            .with("smyth_points", ps.len())
            .with("lower_points", ph.len()),
        ))
    }

    fn double_smyth(&self) -> Result<Option<Outcome>> {
        if self.x.len() > DOUBLE_SMYTH_MAX {
            return skipped("base space too large");
        }
        let ds = double_smyth_retraction(&self.x, self.caps)?;
        Ok(Some(
            Outcome::new(ds.retraction.is_strong(), "ψ∘φ = id and φ∘ψ ≥ id")
                .with("smyth_points", ds.ps.len())
                .with("double_smyth_points", ds.pss.len()),
        ))
    }

    fn q_frame(&self) -> Result<Option<Outcome>> {
        if !self.p.is_complete_lattice() {
            return skipped("not a complete lattice");
        }
        let scott = Topology::scott(self.p, self.caps.families)?.to_space()?;
        let q = scott.compact_saturated_sets(self.caps.points)?;
        let order = FinitePoset::reverse_inclusion_order(&q, |s| self.p.show(s));
        let frame = order.is_frame();
        let n = q.len();
        let join_is_meet = |members: &Subset| {
            let mut meet = self.p.carrier();
            for i in members.iter() {
                meet.intersect_with(&q[i]);
            }
            !meet.is_empty() && order.join(members).is_some_and(|j| q[j] == meet)
        };
        let (families, ok) = if n <= SUBFAMILY_MAX {
            let total = (1u64 << n) - 1;
            let ok = (1..=total).all(|m| join_is_meet(&Subset::from_mask(n, m)));
            (total as usize, ok)
        } else {
            let pairs: Vec<Subset> = (0..n)
                .flat_map(|a| (a..n).map(move |b| Subset::from_indices(n, [a, b])))
                .collect();
            (pairs.len(), pairs.iter().all(join_is_meet))
        };
        Ok(Some(
            Outcome::new(frame && ok, format!("frame {frame}, joins are intersections {ok}"))
                .with("q_points", n)
                .with("subfamilies", families),
        ))
    }

    fn ql(&self) -> Result<Option<Outcome>> {
        if !self.p.is_complete_lattice() {
            return skipped("not a complete lattice");
        }
        let ql = ql_retraction(self.p, self.caps)?;
        Ok(Some(
            Outcome::new(ql.directed_joins_preserved, "g∘f = id, directed joins preserved")
                .with("q_points", ql.q_points.len())
                .with("sigma_sigma", ql.sigma2.len()),
        ))
    }

    fn retracts(&self) -> Result<Option<Outcome>> {
        let mut pairs = sub_poset_retractions(&self.x, RETRACTIONS_PER_INSTANCE);
        let sampled = pairs.len();
        pairs.push(Retraction::identity(&self.x));
        let mut certificates = 0;
        for r in &pairs {
            let lat = r.x().open_set_lattice(self.caps.families)?;
            for target in 0..lat.len() {
                if lat.set(target).is_empty() {
                    continue;
                }
                let family = ScottOpenFamily::principal(&lat, target)?;
                for t in [
                    transport_consonance(r, &lat, &family, target, self.caps)?,
                    transport_co_consonance(r, &lat, &family, target, self.caps)?,
                ] {
                    if !t.certificate.verify(r.x(), &lat) {
                        return Ok(Some(Outcome::new(false, "transported certificate fails to verify")));
                    }
                    certificates += 1;
                }
            }
        }
        // The identity retraction hands back the direct certificate.
        let identity = pairs.last().expect("identity present");
        let lat = self.lattice()?;
        for target in (0..lat.len()).filter(|&t| !lat.set(t).is_empty()) {
            let family = ScottOpenFamily::principal(lat, target)?;
            let direct = co_consonance_witness(&self.x, lat, &family, target)?;
            let through = transport_co_consonance(identity, lat, &family, target, self.caps)?;
            if direct != through.certificate {
                return Ok(Some(Outcome::new(false, "identity retraction changed a certificate")));
            }
        }
        Ok(Some(
            Outcome::new(true, format!("{sampled} sub-poset retractions and the identity"))
                .with("pairs", sampled)
                .with("certificates", certificates),
        ))
    }

    fn product_hypothesis(&self) -> Result<Option<Outcome>> {
        let order = self.lattice()?.order();
        let ok = product_scott_check(order, order, self.caps.families)?;
        Ok(Some(Outcome::new(ok, "σ(O(X)×O(X)) is the product topology")))
    }

    fn power_transport(&self, ctx: &Result<PowerContext>, direction: Direction) -> Result<Option<Outcome>> {
        let ctx = ctx.as_ref().map_err(Clone::clone)?;
        let samples = transport_samples(ctx, direction)?;
        for (family, target) in &samples {
            let t = ctx.transport(direction, family, *target)?;
            if !t.certificate.verify(&t.space, &t.lattice) {
                return Ok(Some(Outcome::new(false, "transported certificate fails to verify")));
            }
        }
        Ok(Some(
            Outcome::new(true, format!("{} sampled families", samples.len()))
                .with("certificates", samples.len())
                .with("power_points", ctx.power().len()),
        ))
    }

    fn lower_up(&self, ctx: &Result<PowerContext>) -> Result<Option<Outcome>> {
        let violation = self.x.intersection_compatibility_violation(self.caps.families)?;
        let Some(v) = violation else {
            return self.power_transport(ctx, Direction::Up);
        };
        let ctx = ctx.as_ref().map_err(Clone::clone)?;
        let lat = ctx.power_lattice();
        let top = lat.len() - 1;
        let found = ctx.transport(Direction::Up, lat.order().up(top), top);
        let matches = matches!(&found, Err(Error::NotIntersectionCompatible { u, v: vv, w })
            if *u == v.u && *vv == v.v && *w == v.w);
        Ok(Some(Outcome::new(
            matches,
            format!(
                "not intersection-compatible: U={}, V={}, W={}",
                self.x.show(&v.u),
                self.x.show(&v.v),
                self.x.show(&v.w)
            ),
        )))
    }

    fn scott_sober(&self) -> Result<Option<Outcome>> {
        let hyp = self.report(Mode::CoConsonant)?.holds;
        implication(hyp, || {
            let order = self.lattice()?.order();
            let sigma = Topology::scott(order, self.caps.families)?.to_space()?;
            Ok(sigma.sobriety_report(self.caps.families)?.is_sober)
        })
    }

    fn continuous_co_consonant(&self) -> Result<Option<Outcome>> {
        implication(self.p.classify().is_continuous, || {
            let sigma = Topology::scott(self.p, self.caps.families)?.to_space()?;
            if sigma == self.x {
                return Ok(self.report(Mode::CoConsonant)?.holds);
            }
            holds(&sigma, Mode::CoConsonant, self.caps)
        })
    }

    /// Both modes: the hypothesis for one space, the conclusion for the
    /// other.
    fn both_modes(&self, hyp_space: &FiniteSpace, concl: impl Fn(Mode) -> Result<bool>) -> Result<Option<Outcome>> {
        let mut details = Vec::new();
        let mut ok = true;
        for mode in [Mode::Consonant, Mode::CoConsonant] {
            let h = holds(hyp_space, mode, self.caps)?;
            let c = if h { concl(mode)? } else { true };
            ok &= !h || c;
            details.push(format!("{mode:?}: hypothesis {h}, conclusion {}", if h { c.to_string() } else { "not needed".into() }));
        }
        Ok(Some(Outcome::new(ok, details.join("; "))))
    }

    fn double_smyth_implication(&self) -> Result<Option<Outcome>> {
        if self.x.len() > DOUBLE_SMYTH_MAX {
            return skipped("base space too large");
        }
        let ds = double_smyth_retraction(&self.x, self.caps)?;
        self.both_modes(ds.pss.space(), |mode| holds(ds.ps.space(), mode, self.caps))
    }

    fn closed_set_implication(&self) -> Result<Option<Outcome>> {
        if !self.p.is_complete_lattice() {
            return skipped("not a complete lattice");
        }
        let sigma = Topology::scott(self.p, self.caps.families)?.to_space()?;
        let closed = sigma.closed_sets(self.caps.families)?;
        let gamma = FinitePoset::inclusion_order(&closed, |s| self.p.show(s));
        let gamma = Topology::scott(&gamma, self.caps.families)?.to_space()?;
        self.both_modes(&gamma, |mode| holds(&sigma, mode, self.caps))
    }

    fn ql_implication(&self) -> Result<Option<Outcome>> {
        if !self.p.is_complete_lattice() {
            return skipped("not a complete lattice");
        }
        let sigma = Topology::scott(self.p, self.caps.families)?.to_space()?;
        let base = holds(&sigma, Mode::Consonant, self.caps)?;
        if !base {
            return Ok(Some(Outcome::new(true, "Scott space not consonant")));
        }
        let ql = ql_retraction(self.p, self.caps)?;
        let r = ql.retraction;
        self.both_modes(r.y(), |mode| holds(r.x(), mode, self.caps))
    }

    fn core_compact_smyth(&self) -> Result<Option<Outcome>> {
        let hyp = self.report(Mode::CoConsonant)?.holds && self.x.properties(self.caps.families)?.core_compact;
        implication(hyp, || {
            let ps = PowerSpace::smyth(&self.x, self.caps.points)?;
            holds(ps.space(), Mode::CoConsonant, self.caps)
        })
    }

    fn product_factor(&self) -> Result<Option<Outcome>> {
        let c2 = FiniteSpace::new(crate::poset::named::chain(2));
        let xy = product_space(&self.x, &c2)?;
        self.both_modes(&xy, |mode| Ok(self.report(mode)?.holds))
    }

    fn strongly_compact(&self) -> Result<Option<Outcome>> {
        let hyp = self.report(Mode::CoConsonant)?.holds;
        let outcome = implication(hyp, || {
            for k in self.x.compact_saturated_sets(self.caps.points)? {
                if !self.x.is_strongly_compact(&k, self.caps.families)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        Ok(outcome.map(|mut o| {
            if self.name.starts_with("P∞") {
                o.detail.push_str("; the whole carrier is strongly compact here, unlike in the infinite version of this poset");
            }
            o
        }))
    }
}
