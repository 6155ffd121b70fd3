//! Brute-force oracles over bitmasks against the library's searches, on
//! random posets of up to six points.

use std::collections::BTreeSet;

use fintop_core::consonance::{check_consonance, Mode};
use fintop_core::poset::named;
use fintop_core::topology::{topology_equal, Topology};
use fintop_core::{Caps, ContinuousMap, FinitePoset, FiniteSpace, Subset};
use proptest::prelude::*;

fn poset_from_bits(n: usize, bits: &[bool]) -> FinitePoset {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FinitePoset::from_generators(labels, &edges).unwrap()
}

fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| poset_from_bits(n, &bits))
    })
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

fn directed(p: &FinitePoset, s: &Subset) -> bool {
    !s.is_empty() && s.iter().all(|a| s.iter().all(|b| s.iter().any(|c| p.leq(a, c) && p.leq(b, c))))
}

fn join(p: &FinitePoset, s: &Subset) -> Option<usize> {
    let ub: Vec<usize> = (0..p.len()).filter(|&u| s.iter().all(|x| p.leq(x, u))).collect();
    ub.iter().copied().find(|&j| ub.iter().all(|&u| p.leq(j, u)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ideals_are_the_directed_down_sets(p in arb_poset(6)) {
        let brute: Vec<(Subset, Option<usize>)> = all_subsets(p.len())
            .filter(|s| is_down(&p, s) && directed(&p, s))
            .map(|s| { let j = join(&p, &s); (s, j) })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let lib: Vec<(Subset, Option<usize>)> =
            p.ideals().iter().map(|i| (i.members.clone(), i.join)).collect();
        prop_assert_eq!(lib, brute);
    }

    #[test]
    fn way_below_matches_the_definition(p in arb_poset(5)) {
        let dirs: Vec<(Subset, usize)> = all_subsets(p.len())
            .filter(|d| directed(&p, d))
            .filter_map(|d| join(&p, &d).map(|j| (d, j)))
            .collect();
        for x in 0..p.len() {
            for y in 0..p.len() {
                let brute = dirs
                    .iter()
                    .all(|(d, j)| !p.leq(y, *j) || d.iter().any(|e| p.leq(x, e)));
                prop_assert_eq!(p.way_below(x, y), brute);
                // On a finite poset way-below is the order itself.
                prop_assert_eq!(brute, p.leq(x, y));
            }
        }
    }

    #[test]
    fn up_set_enumeration_matches_masks(p in arb_poset(6)) {
        let brute: Vec<Subset> = all_subsets(p.len()).filter(|s| is_up(&p, s)).collect();
        let mut lib = p.up_sets(1 << 12).unwrap();
        lib.sort();
        let mut b = brute.clone();
        b.sort();
        prop_assert_eq!(lib, b);
        let mut count = 0;
        p.for_each_up_set(1 << 12, |_| count += 1).unwrap();
        prop_assert_eq!(count, brute.len());
    }

    #[test]
    fn sobriety_from_all_closed_pairs(p in arb_poset(5)) {
        let x = FiniteSpace::new(p.clone());
        let closed: Vec<Subset> = all_subsets(p.len()).filter(|s| is_down(&p, s)).collect();
        let irreducible: BTreeSet<Subset> = closed
            .iter()
            .filter(|c| !c.is_empty())
            .filter(|c| {
                closed.iter().all(|a| {
                    closed.iter().all(|b| !c.is_subset(&a.union(b)) || c.is_subset(a) || c.is_subset(b))
                })
            })
            .cloned()
            .collect();
        let report = x.sobriety_report(1 << 12).unwrap();
        let lib: BTreeSet<Subset> = report.irreducibles.iter().cloned().collect();
        prop_assert_eq!(&lib, &irreducible);
        let sober = irreducible
            .iter()
            .all(|c| (0..p.len()).filter(|&e| p.down(e) == c).count() == 1);
        prop_assert!(sober);
        prop_assert!(report.is_sober && report.closure_identity);
    }

    #[test]
    fn closure_and_saturation_are_idempotent(p in arb_poset(6), mask in any::<u64>()) {
        let x = FiniteSpace::new(p.clone());
        let s = Subset::from_mask(p.len(), mask & ((1 << p.len()) - 1));
        let cl = x.closure(&s);
        let sat = x.saturation(&s);
        prop_assert_eq!(x.closure(&cl), cl.clone());
        prop_assert_eq!(x.saturation(&sat), sat.clone());
        prop_assert!(s.is_subset(&cl) && s.is_subset(&sat));
        prop_assert!(x.is_closed(&cl) && x.is_open(&sat));
        // Least closed superset, least open superset.
        for c in all_subsets(p.len()).filter(|c| s.is_subset(c)) {
            if is_down(&p, &c) {
                prop_assert!(cl.is_subset(&c));
            }
            if is_up(&p, &c) {
                prop_assert!(sat.is_subset(&c));
            }
        }
    }

    #[test]
    fn product_is_associative(a in arb_poset(3), b in arb_poset(3), c in arb_poset(2)) {
        let left = a.product(&b).product(&c);
        let right = a.product(&b.product(&c));
        prop_assert_eq!(left.len(), right.len());
        // ((x, y), z) and (x, (y, z)) share the index (x·|B| + y)·|C| + z.
        for i in 0..left.len() {
            for j in 0..left.len() {
                prop_assert_eq!(left.leq(i, j), right.leq(i, j));
            }
        }
    }

    #[test]
    fn monotone_iff_preimages_of_opens_are_open(
        p in arb_poset(4),
        q in arb_poset(4),
        raw in proptest::collection::vec(any::<usize>(), 4),
    ) {
        let map: Vec<usize> = (0..p.len()).map(|i| raw[i] % q.len()).collect();
        let by_preimage = all_subsets(q.len())
            .filter(|v| is_up(&q, v))
            .all(|v| is_up(&p, &v.preimage(&map)));
        prop_assert_eq!(p.is_monotone(&q, &map), by_preimage);
        let cont = ContinuousMap::new(FiniteSpace::new(p.clone()), FiniteSpace::new(q.clone()), map.clone());
        prop_assert_eq!(cont.is_ok(), by_preimage);
    }

    #[test]
    fn complement_is_an_anti_isomorphism(p in arb_poset(6)) {
        let x = FiniteSpace::new(p.clone());
        let opens = x.open_set_lattice(1 << 12).unwrap();
        let closed = x.closed_set_lattice(1 << 12).unwrap();
        prop_assert_eq!(opens.len(), closed.len());
        let to_closed: Vec<usize> = opens
            .sets()
            .iter()
            .map(|u| closed.index_of(&u.complement()).expect("complement of an open is closed"))
            .collect();
        prop_assert_eq!(to_closed.iter().collect::<BTreeSet<_>>().len(), opens.len());
        for i in 0..opens.len() {
            for j in 0..opens.len() {
                prop_assert_eq!(opens.order().leq(i, j), closed.order().leq(to_closed[j], to_closed[i]));
            }
        }
    }

    #[test]
    fn three_topologies_coincide(p in arb_poset(6)) {
        let a = Topology::alexandroff(&p);
        let s = Topology::scott(&p, 1 << 12).unwrap();
        let u = Topology::upper(&p);
        prop_assert!(topology_equal(&s, &a).unwrap().equal);
        prop_assert!(topology_equal(&u, &a).unwrap().equal);
        prop_assert_eq!(s.specialization().unwrap(), p);
    }

    #[test]
    fn small_spaces_are_consonant_both_ways(p in arb_poset(4)) {
        let x = FiniteSpace::new(p);
        for mode in [Mode::Consonant, Mode::CoConsonant] {
            let r = check_consonance(&x, mode, Caps::default()).unwrap();
            prop_assert!(r.holds && r.formulations_agree());
            prop_assert_eq!(r.quantified, Some(true));
        }
    }

    #[test]
    fn subset_operations_match_bool_vectors(
        a in proptest::collection::vec(any::<bool>(), 1..130),
        raw in proptest::collection::vec(any::<bool>(), 130),
    ) {
        let n = a.len();
        let b = &raw[..n];
        let of = |v: &[bool]| Subset::from_indices(n, (0..n).filter(|&i| v[i]));
        let bits = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&i| f(i)).collect::<Vec<_>>();
        let (sa, sb) = (of(&a), of(b));
        prop_assert_eq!(sa.union(&sb).to_vec(), bits(&|i| a[i] || b[i]));
        prop_assert_eq!(sa.intersection(&sb).to_vec(), bits(&|i| a[i] && b[i]));
        prop_assert_eq!(sa.difference(&sb).to_vec(), bits(&|i| a[i] && !b[i]));
        prop_assert_eq!(sa.complement().to_vec(), bits(&|i| !a[i]));
        prop_assert_eq!(sa.is_subset(&sb), (0..n).all(|i| !a[i] || b[i]));
        prop_assert_eq!(sa.intersects(&sb), (0..n).any(|i| a[i] && b[i]));
        prop_assert_eq!(sa.count(), a.iter().filter(|&&x| x).count());
        if n <= 64 {
            let mask = (0..n).filter(|&i| a[i]).fold(0u64, |m, i| m | 1 << i);
            prop_assert_eq!(Subset::from_mask(n, mask), sa);
        }
    }
}

#[test]
fn named_way_below_and_frames() {
    // Frozen values: each named instance is finite, so x ≪ y iff x ≤ y.
    for p in [named::diamond(), named::lambda(), named::p_infinity(3), named::square()] {
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(p.way_below(x, y), p.leq(x, y));
            }
        }
    }
    assert!(named::square().is_frame());
    assert!(named::diamond().is_frame());
    assert!(!named::lambda().is_lattice());
}
