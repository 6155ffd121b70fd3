//! Acceptance run over the default corpus. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.
//!
//! Hypotheses and conclusions are recomputed here by brute force over
//! bitmasks wherever that is feasible, rather than read back from the
//! library's own checkers.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use fintop::corpus::{generate_corpus, posets_up_to_isomorphism, GenSpec};
use fintop_core::consonance::{
    check_consonance, co_consonance_witness, consonance_witness, scott_open_families, Mode, Witness,
    WitnessCertificate,
};
use fintop_core::poset::named;
use fintop_core::suite::{run_instance, Verdict};
use fintop_core::topology::Topology;
use fintop_core::transport::{
    double_smyth_retraction, ql_retraction, sub_poset_retractions, transport_co_consonance,
    transport_consonance, transport_samples, Direction, PowerContext, Retraction,
};
use fintop_core::{
    Caps, Error, Extent, FinitePoset, FiniteSpace, IndexedLattice, PowerKind, PowerSpace, ScottOpenFamily,
    Subset,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0u64..1 << n).map(move |m| Subset::from_mask(n, m))
}

fn is_up(p: &FinitePoset, s: &Subset) -> bool {
    s.iter().all(|x| (0..p.len()).all(|y| !p.leq(x, y) || s.contains(y)))
}

fn is_down(p: &FinitePoset, s: &Subset) -> bool {
    s.iter().all(|x| (0..p.len()).all(|y| !p.leq(y, x) || s.contains(y)))
}

fn brute_up_sets(p: &FinitePoset) -> Vec<Subset> {
    all_subsets(p.len()).filter(|s| is_up(p, s)).collect()
}

fn brute_down_sets(p: &FinitePoset) -> Vec<Subset> {
    all_subsets(p.len()).filter(|s| is_down(p, s)).collect()
}

fn upper_bounds(p: &FinitePoset, s: &Subset) -> Vec<usize> {
    (0..p.len()).filter(|&u| s.iter().all(|x| p.leq(x, u))).collect()
}

fn brute_join(p: &FinitePoset, s: &Subset) -> Option<usize> {
    let ub = upper_bounds(p, s);
    ub.iter().copied().find(|&j| ub.iter().all(|&u| p.leq(j, u)))
}

fn brute_directed(p: &FinitePoset, s: &Subset) -> bool {
    !s.is_empty() && s.iter().all(|a| s.iter().all(|b| s.iter().any(|c| p.leq(a, c) && p.leq(b, c))))
}

/// Up-sets `U` with `D ∩ U ≠ ∅` for every directed `D` whose join is in `U`.
fn brute_scott_opens(p: &FinitePoset) -> BTreeSet<Subset> {
    let directed: Vec<(Subset, usize)> = all_subsets(p.len())
        .filter(|d| brute_directed(p, d))
        .filter_map(|d| brute_join(p, &d).map(|j| (d, j)))
        .collect();
    brute_up_sets(p)
        .into_iter()
        .filter(|u| directed.iter().all(|(d, j)| !u.contains(*j) || d.intersects(u)))
        .collect()
}

/// Unions of finite intersections of the sets `P ∖ ↓x`.
fn brute_upper_opens(p: &FinitePoset) -> BTreeSet<Subset> {
    let n = p.len();
    let sub: Vec<Subset> = (0..n)
        .map(|x| Subset::from_indices(n, (0..n).filter(|&y| !p.leq(y, x))))
        .collect();
    let basis: Vec<Subset> = all_subsets(n)
        .map(|pick| {
            let mut b = Subset::full(n);
            for i in pick.iter() {
                b.intersect_with(&sub[i]);
            }
            b
        })
        .collect();
    all_subsets(n)
        .filter(|s| {
            let mut cover = Subset::empty(n);
            for b in basis.iter().filter(|b| b.is_subset(s)) {
                cover.union_with(b);
            }
            &cover == s
        })
        .collect()
}

fn monotone(src: &FinitePoset, tgt: &FinitePoset, map: &[usize]) -> bool {
    (0..src.len()).all(|a| (0..src.len()).all(|b| !src.leq(a, b) || tgt.leq(map[a], map[b])))
}

/// Joins of directed subsets with a join are preserved. Only used on
/// carriers of at most 16 points.
fn brute_scott_continuous(src: &FinitePoset, tgt: &FinitePoset, map: &[usize]) -> bool {
    assert!(src.len() <= 16);
    monotone(src, tgt, map)
        && all_subsets(src.len()).filter(|d| brute_directed(src, d)).all(|d| match brute_join(src, &d) {
            Some(j) => brute_join(tgt, &d.image(tgt.len(), map)) == Some(map[j]),
            None => true,
        })
}

/// Recomputes the extent of a certificate over every open of `X` and
/// compares it with the family.
fn brute_verify(x: &FiniteSpace, lat: &IndexedLattice, c: &WitnessCertificate) -> bool {
    let p = x.order();
    let sets = match &c.witness {
        Witness::Compact(q) => {
            if q.is_empty() || !is_up(p, q) {
                return false;
            }
            vec![q.clone()]
        }
        Witness::Closed(e) => {
            if e.is_empty() || !e.iter().all(|a| is_down(p, a)) {
                return false;
            }
            e.clone()
        }
    };
    let in_extent = |v: &Subset| match &c.witness {
        Witness::Compact(_) => sets[0].is_subset(v),
        Witness::Closed(_) => sets.iter().all(|a| a.intersects(v)),
    };
    // Past 16 points the opens are taken from the lattice itself, each
    // checked to be an up-set.
    let opens = if p.len() <= 16 {
        brute_up_sets(p)
    } else if lat.sets().iter().all(|v| is_up(p, v)) {
        lat.sets().to_vec()
    } else {
        return false;
    };
    c.family.contains(c.target)
        && in_extent(lat.set(c.target))
        && opens
            .iter()
            .filter(|v| in_extent(v))
            .all(|v| lat.index_of(v).is_some_and(|i| c.family.contains(i)))
}

/// Largest `O(X)` whose subsets are enumerated to list families.
const BRUTE_FAMILY_MAX: usize = 16;

/// Scott-open families of `O(X)`: the up-sets of the finite lattice.
fn brute_families(lat: &IndexedLattice) -> Vec<Subset> {
    brute_up_sets(lat.order())
}

struct Corpus {
    items: Vec<(String, FinitePoset)>,
}

fn criterion_1(c: &Corpus) -> Outcome {
    for (name, p) in &c.items {
        let scott = brute_scott_opens(p);
        let upper = brute_upper_opens(p);
        let alex: BTreeSet<Subset> = brute_up_sets(p).into_iter().collect();
        let lib: BTreeSet<Subset> = Topology::scott(p, 1 << 16)
            .and_then(|t| t.open_sets(1 << 16))
            .map_err(|e| format!("{name}: {e}"))?
            .into_iter()
            .collect();
        check(scott == alex && upper == alex && lib == alex, || format!("{name}: topologies differ"))?;
    }
    Ok(format!("{} posets, zero mismatches", c.items.len()))
}

fn criterion_2(c: &Corpus) -> Outcome {
    let mut certs = 0;
    let mut counted = 0;
    for (name, p) in &c.items {
        let x = FiniteSpace::new(p.clone());
        let lat = x.open_set_lattice(1 << 16).map_err(|e| e.to_string())?;
        for mode in [Mode::Consonant, Mode::CoConsonant] {
            let r = check_consonance(&x, mode, Caps::default()).map_err(|e| format!("{name}: {e}"))?;
            check(r.holds && r.quantified == Some(true) && r.topological, || {
                format!("{name}: {mode:?} does not hold")
            })?;
            check(r.formulations_agree(), || format!("{name}: formulations disagree"))?;
            if lat.len() <= BRUTE_FAMILY_MAX {
                let expected = brute_families(&lat)
                    .iter()
                    .map(|f| f.iter().filter(|&u| !lat.set(u).is_empty()).count())
                    .sum::<usize>();
                check(r.certificates.len() == expected, || {
                    format!("{name}: {} certificates, expected {expected}", r.certificates.len())
                })?;
                counted += 1;
            }
            for cert in &r.certificates {
                check(brute_verify(&x, &lat, cert), || format!("{name}: certificate fails to re-verify"))?;
            }
            certs += r.certificates.len();
        }
    }
    Ok(format!(
        "{} instances, {certs} certificates re-verified, counts matched by enumeration on {} runs",
        c.items.len(),
        counted
    ))
}

fn criterion_3() -> Outcome {
    let mut pairs = 0;
    let mut spaces = 0;
    for n in 1..=3 {
        for p in posets_up_to_isomorphism(n) {
            spaces += 1;
            let x = FiniteSpace::new(p);
            let lat = x.open_set_lattice(1 << 16).map_err(|e| e.to_string())?;
            let families = brute_families(&lat);
            let lib = scott_open_families(&lat, 1 << 16).map_err(|e| e.to_string())?;
            let lib: Vec<Subset> = lib.iter().map(|f| f.members().clone()).collect();
            check(
                families.iter().collect::<BTreeSet<_>>() == lib.iter().collect::<BTreeSet<_>>(),
                || "Scott-open families differ from the up-sets of O(X)".into(),
            )?;
            for fam in &families {
                let family = ScottOpenFamily::new(&lat, fam.clone()).map_err(|e| e.to_string())?;
                for u in fam.iter().filter(|&u| !lat.set(u).is_empty()) {
                    let w = co_consonance_witness(&x, &lat, &family, u).map_err(|e| e.to_string())?;
                    let Witness::Closed(e) = &w.witness else {
                        return Err("wrong witness kind".into());
                    };
                    let extent: Vec<usize> = (0..lat.len())
                        .filter(|&v| e.iter().all(|a| a.intersects(lat.set(v))))
                        .collect();
                    check(extent.contains(&u) && extent.iter().all(|&v| fam.contains(v)), || {
                        format!("extent of witness for U={} not between U and the family", x.show(lat.set(u)))
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{spaces} spaces, {pairs} (family, member) pairs"))
}

fn retraction_sound(r: &Retraction) -> bool {
    let (f, g) = (r.section().assignment(), r.retraction().assignment());
    (0..r.x().len()).all(|x| g[f[x]] == x)
        && monotone(r.x().order(), r.y().order(), f)
        && monotone(r.y().order(), r.x().order(), g)
}

fn criterion_4(c: &Corpus) -> Outcome {
    let caps = Caps::default();
    let mut pairs = 0;
    let mut certs = 0;
    for (name, p) in &c.items {
        let y = FiniteSpace::new(p.clone());
        for r in sub_poset_retractions(&y, 3) {
            check(retraction_sound(&r), || format!("{name}: bad retraction"))?;
            pairs += 1;
            let lat = r.x().open_set_lattice(1 << 16).map_err(|e| e.to_string())?;
            let families = match scott_open_families(&lat, 2000) {
                Ok(f) => f,
                Err(_) => (0..lat.len())
                    .map(|u| ScottOpenFamily::principal(&lat, u))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?,
            };
            for fam in &families {
                for u in fam.members().iter().filter(|&u| !lat.set(u).is_empty()) {
                    for t in [
                        transport_consonance(&r, &lat, fam, u, caps),
                        transport_co_consonance(&r, &lat, fam, u, caps),
                    ] {
                        let t = t.map_err(|e| format!("{name}: {e}"))?;
                        check(brute_verify(r.x(), &lat, &t.certificate), || {
                            format!("{name}: transported certificate fails to re-verify")
                        })?;
                        certs += 1;
                    }
                }
            }
        }
        let lat = y.open_set_lattice(1 << 16).map_err(|e| e.to_string())?;
        let id = Retraction::identity(&y);
        for u in (0..lat.len()).filter(|&u| !lat.set(u).is_empty()) {
            let fam = ScottOpenFamily::principal(&lat, u).map_err(|e| e.to_string())?;
            let direct_c = consonance_witness(&y, &lat, &fam, u, false).map_err(|e| e.to_string())?;
            let via_c = transport_consonance(&id, &lat, &fam, u, caps).map_err(|e| e.to_string())?;
            let direct_o = co_consonance_witness(&y, &lat, &fam, u).map_err(|e| e.to_string())?;
            let via_o = transport_co_consonance(&id, &lat, &fam, u, caps).map_err(|e| e.to_string())?;
            check(direct_c == via_c.certificate && direct_o == via_o.certificate, || {
                format!("{name}: identity retraction changed a certificate")
            })?;
        }
    }
    check(pairs >= 20, || format!("only {pairs} retraction pairs"))?;
    Ok(format!("{pairs} retraction pairs, {certs} transported certificates, identity is a no-op"))
}

fn criterion_5(c: &Corpus) -> Outcome {
    let mut checked = 0;
    for (name, p) in c.items.iter().filter(|(_, p)| p.len() <= 4) {
        let x = FiniteSpace::new(p.clone());
        let ds = double_smyth_retraction(&x, Caps::default()).map_err(|e| format!("{name}: {e}"))?;
        let r = &ds.retraction;
        let (phi, psi) = (r.section().assignment(), r.retraction().assignment());
        let pss = ds.pss.space().order();
        check(retraction_sound(r), || format!("{name}: ψ∘φ ≠ id or a map is not continuous"))?;
        check((0..pss.len()).all(|a| pss.leq(a, phi[psi[a]])), || format!("{name}: φ∘ψ ≱ id"))?;
        checked += 1;
    }
    let x = FiniteSpace::new(named::antichain2());
    let ds = double_smyth_retraction(&x, Caps::default()).map_err(|e| e.to_string())?;
    let shown: BTreeSet<BTreeSet<String>> = ds
        .pss
        .points()
        .iter()
        .map(|a| a.iter().map(|k| x.show(ds.ps.point(k))).collect())
        .collect();
    let hand: BTreeSet<BTreeSet<String>> = [
        vec!["{a}"],
        vec!["{b}"],
        vec!["{a}", "{b}"],
        vec!["{a}", "{b}", "{a,b}"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    check(shown == hand, || format!("P_S(P_S(A2)) points {shown:?}"))?;
    Ok(format!("{checked} spaces with at most 4 points; A2 gives the expected 4 points"))
}

fn criterion_6(c: &Corpus) -> Outcome {
    let mut lattices = 0;
    for (name, l) in c.items.iter().filter(|(_, l)| l.is_complete_lattice()) {
        lattices += 1;
        // Σ L is Alexandroff, so Q(L) is the set of nonempty up-sets.
        let q: Vec<Subset> = brute_up_sets(l).into_iter().filter(|s| !s.is_empty()).collect();
        let space = Topology::scott(l, 1 << 16)
            .and_then(|t| t.to_space())
            .map_err(|e| e.to_string())?;
        let mut lib = space.compact_saturated_sets(1 << 16).map_err(|e| e.to_string())?;
        lib.sort();
        let mut sorted = q.clone();
        sorted.sort();
        check(lib == sorted, || format!("{name}: Q(L) differs"))?;
        let order = FinitePoset::reverse_inclusion_order(&q, |s| l.show(s));
        let n = q.len();
        let meet = |a, b| brute_join(&order.dual_view(), &Subset::from_indices(n, [a, b]));
        let join = |a, b| brute_join(&order, &Subset::from_indices(n, [a, b]));
        let distributive = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let lhs = join(b, c).and_then(|bc| meet(a, bc));
                    let rhs = match (meet(a, b), meet(a, c)) {
                        (Some(x), Some(y)) => join(x, y),
                        _ => None,
                    };
                    lhs.is_some() && lhs == rhs
                })
            })
        });
        check(distributive, || format!("{name}: Q(L) is not a frame"))?;
        check(n <= 16, || format!("{name}: Q(L) too large for subfamilies"))?;
        for m in 1u64..1 << n {
            let fam = Subset::from_mask(n, m);
            let mut inter = l.carrier();
            for i in fam.iter() {
                inter.intersect_with(&q[i]);
            }
            let j = brute_join(&order, &fam);
            check(!inter.is_empty() && j.is_some_and(|j| q[j] == inter), || {
                format!("{name}: join of a subfamily is not its intersection")
            })?;
        }
    }
    Ok(format!("{lattices} complete lattices"))
}

/// The order with `leq` reversed, so `brute_join` computes meets.
trait Dual {
    fn dual_view(&self) -> FinitePoset;
}

impl Dual for FinitePoset {
    fn dual_view(&self) -> FinitePoset {
        FinitePoset::from_relation(self.labels().to_vec(), |a, b| self.leq(b, a)).expect("dual of a poset")
    }
}

fn criterion_7() -> Outcome {
    for (name, l) in [
        ("C2", named::chain(2)),
        ("2×2", named::square()),
        ("C3", named::chain(3)),
    ] {
        let ql = ql_retraction(&l, Caps::default()).map_err(|e| format!("{name}: {e}"))?;
        let r = &ql.retraction;
        let (f, g) = (r.section().assignment(), r.retraction().assignment());
        check((0..f.len()).all(|q| g[f[q]] == q), || format!("{name}: g∘f ≠ id"))?;
        check(
            brute_scott_continuous(r.x().order(), r.y().order(), f)
                && brute_scott_continuous(r.y().order(), r.x().order(), g),
            || format!("{name}: a map is not Scott-continuous"),
        )?;
    }
    let ql = ql_retraction(&named::chain(2), Caps::default()).map_err(|e| e.to_string())?;
    let o = ql.sigma2.order();
    check(o.len() == 4 && o.is_chain(), || format!("σ(σ(C2)) has {} points", o.len()))?;
    Ok("C2, 2×2 and C3; σ(σ(C2)) is a 4-chain".into())
}

fn criterion_8(c: &Corpus) -> Outcome {
    let mut pairs = 0;
    for (name, p) in &c.items {
        let x = FiniteSpace::new(p.clone());
        let opens = brute_up_sets(p);
        let closed = brute_down_sets(p);
        let ps = PowerSpace::smyth(&x, 1 << 12).map_err(|e| e.to_string())?;
        let ph = PowerSpace::lower(&x, 1 << 12).map_err(|e| e.to_string())?;
        let ext = |s: &PowerSpace, pred: &dyn Fn(&Subset) -> bool| {
            Subset::from_indices(s.len(), (0..s.len()).filter(|&i| pred(s.point(i))))
        };
        for u in &opens {
            check(ps.extent(Extent::Box, u).ok() == Some(ext(&ps, &|k| k.is_subset(u))), || {
                format!("{name}: □ extent differs")
            })?;
            check(ph.extent(Extent::Diamond, u).ok() == Some(ext(&ph, &|k| k.intersects(u))), || {
                format!("{name}: ◊ extent differs")
            })?;
            for v in &opens {
                pairs += 1;
                let bx = |w: &Subset| ext(&ps, &|k| k.is_subset(w));
                let dm = |w: &Subset| ext(&ph, &|k| k.intersects(w));
                check(dm(&u.union(v)) == dm(u).union(&dm(v)), || format!("{name}: ◊ law"))?;
                check(bx(&u.intersection(v)) == bx(u).intersection(&bx(v)), || format!("{name}: □ law"))?;
            }
        }
        // Points are Q(X), without the empty set, and all of Γ(X).
        let q: BTreeSet<&Subset> = opens.iter().filter(|s| !s.is_empty()).collect();
        let g: BTreeSet<&Subset> = closed.iter().collect();
        check(ps.points().iter().collect::<BTreeSet<_>>() == q, || format!("{name}: Smyth points"))?;
        check(ph.points().iter().collect::<BTreeSet<_>>() == g, || format!("{name}: lower points"))?;
        // Specialization read off the generated topology: a ≤ b iff every
        // open containing a contains b.
        for (s, reverse) in [(&ps, true), (&ph, false)] {
            let topo = s.topology().open_sets(1 << 16).map_err(|e| e.to_string())?;
            for a in 0..s.len() {
                for b in 0..s.len() {
                    let spec = topo.iter().all(|w| !w.contains(a) || w.contains(b));
                    let incl = if reverse {
                        s.point(b).is_subset(s.point(a))
                    } else {
                        s.point(a).is_subset(s.point(b))
                    };
                    check(spec == incl, || format!("{name}: specialization law"))?;
                }
            }
        }
    }
    Ok(format!("{} spaces, {pairs} open pairs", c.items.len()))
}

fn brute_ic_violation(p: &FinitePoset) -> Option<(Subset, Subset, Subset)> {
    let opens = brute_up_sets(p);
    let closed = brute_down_sets(p);
    for u in &opens {
        for v in &opens {
            for w in &closed {
                if u.intersects(w) && v.intersects(w) && !u.intersection(v).intersects(w) {
                    return Some((u.clone(), v.clone(), w.clone()));
                }
            }
        }
    }
    None
}

fn criterion_9(c: &Corpus) -> Outcome {
    let caps = Caps::default();
    let mut certs = 0;
    let mut non_ic = 0;
    for (name, p) in &c.items {
        let x = FiniteSpace::new(p.clone());
        let ic = brute_ic_violation(p);
        for kind in [PowerKind::Smyth, PowerKind::Lower] {
            let ctx = PowerContext::new(&x, kind, caps).map_err(|e| format!("{name}: {e}"))?;
            ctx.product_hypothesis().map_err(|e| format!("{name}: product hypothesis: {e}"))?;
            for dir in [Direction::Down, Direction::Up] {
                let samples = transport_samples(&ctx, dir).map_err(|e| e.to_string())?;
                for (family, target) in &samples {
                    match (ctx.transport(dir, family, *target), kind, dir) {
                        (Err(Error::NotIntersectionCompatible { u, v, w }), PowerKind::Lower, Direction::Up) => {
                            let genuine = is_up(p, &u)
                                && is_up(p, &v)
                                && is_down(p, &w)
                                && u.intersects(&w)
                                && v.intersects(&w)
                                && !u.intersection(&v).intersects(&w);
                            check(ic.is_some() && genuine, || {
                                format!("{name}: lower-up refused without a genuine violating triple")
                            })?;
                        }
                        (Ok(t), ..) => {
                            check(ic.is_none() || kind == PowerKind::Smyth || dir == Direction::Down, || {
                                format!("{name}: lower-up succeeded on a space that is not intersection-compatible")
                            })?;
                            let ok = brute_verify(&t.space, &t.lattice, &t.certificate);
                            check(ok, || format!("{name}: {kind:?} {dir:?} certificate fails to re-verify"))?;
                            certs += 1;
                        }
                        (Err(e), ..) => return Err(format!("{name}: {kind:?} {dir:?}: {e}")),
                    }
                }
            }
        }
        if ic.is_some() {
            non_ic += 1;
        }
    }
    let a2 = named::antichain2();
    let x = FiniteSpace::new(a2.clone());
    let ctx = PowerContext::new(&x, PowerKind::Lower, caps).map_err(|e| e.to_string())?;
    let (family, target) = transport_samples(&ctx, Direction::Up).map_err(|e| e.to_string())?.remove(0);
    match ctx.transport(Direction::Up, &family, target) {
        Err(Error::NotIntersectionCompatible { u, v, w }) => {
            let shown = (x.show(&u), x.show(&v), x.show(&w));
            check(shown == ("{a}".into(), "{b}".into(), "{a,b}".into()), || format!("A2 triple {shown:?}"))?;
        }
        other => return Err(format!("A2 lower-up: {other:?}")),
    }
    Ok(format!(
        "{certs} transported certificates; {non_ic} instances not intersection-compatible, each refused with its triple"
    ))
}

fn criterion_10(c: &Corpus) -> Outcome {
    let mut held = 0;
    let mut vacuous = 0;
    let mut skipped = 0;
    for (name, p) in &c.items {
        let report = run_instance(name, p, Caps::default());
        for r in &report.checks {
            check(r.verdict != Verdict::Fail, || format!("{name}: {} failed: {}", r.id, r.detail))?;
            if r.id.starts_with("implication.") {
                match r.verdict {
                    Verdict::Skipped => skipped += 1,
                    _ if r.detail.starts_with("hypothesis false") => vacuous += 1,
                    _ => held += 1,
                }
            }
        }
    }
    Ok(format!(
        "{held} implications with true hypothesis hold, {vacuous} vacuous, {skipped} out of scope or over cap"
    ))
}

fn criterion_11() -> Outcome {
    let args = ["fintop", "suite", "--json", "--gen", "max_size=4,count=25,seed=1"];
    let once = || {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = fintop::run(args, &mut out, &mut err);
        (code, out)
    };
    let (c1, a) = once();
    let (c2, b) = once();
    check(c1 == 0 && c2 == 0, || format!("exit codes {c1}, {c2}"))?;
    check(a == b, || "outputs differ".into())?;
    Ok(format!("two runs, {} identical bytes, exit 0", a.len()))
}

fn main() {
    let corpus = Corpus {
        items: generate_corpus(&GenSpec::default())
            .iter()
            .map(|f| (f.name.clone(), f.poset().expect("generated instances parse")))
            .collect(),
    };
    let criteria: Vec<Criterion<'_>> = vec![
        ("topology coincidence", Box::new(|| criterion_1(&corpus))),
        ("finite consonance and co-consonance", Box::new(|| criterion_2(&corpus))),
        ("witness extraction oracle", Box::new(criterion_3)),
        ("retract transport", Box::new(|| criterion_4(&corpus))),
        ("double Smyth strong retraction", Box::new(|| criterion_5(&corpus))),
        ("Q(L) frame structure", Box::new(|| criterion_6(&corpus))),
        ("Q(L) retraction", Box::new(criterion_7)),
        ("powerspace laws", Box::new(|| criterion_8(&corpus))),
        ("powerspace transports", Box::new(|| criterion_9(&corpus))),
        ("implication suite", Box::new(|| criterion_10(&corpus))),
        ("determinism", Box::new(criterion_11)),
    ];
    let mut failed = 0;
    let stdout = std::io::stdout();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let line = match &outcome {
            Ok(msg) => format!("PASS criterion {:>2} {title}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                format!("FAIL criterion {:>2} {title}: {msg} ({secs:.1}s)", i + 1)
            }
        };
        let _ = writeln!(stdout.lock(), "{line}");
    }
    if failed > 0 {
        let _ = writeln!(stdout.lock(), "{failed} criteria failed");
        std::process::exit(1);
    }
}
