//! Topologies on a finite carrier, stored as minimal open neighbourhoods.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::space::FiniteSpace;
use crate::subset::Subset;

/// A topology on `0..n`. `min_nbhd[x]` is the smallest open set containing
/// `x`; a set is open iff it is a union of these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    labels: Vec<String>,
    min_nbhd: Vec<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyComparison {
    pub equal: bool,
    /// A set open in exactly one of the two topologies.
    pub witness: Option<Subset>,
}

impl Topology {
    /// The topology generated by `subbase`: the minimal neighbourhood of `x`
    /// is the intersection of the subbasic sets containing it.
    pub fn from_subbase(labels: Vec<String>, subbase: &[Subset]) -> Self {
        let n = labels.len();
        let min_nbhd = (0..n)
            .map(|x| {
                let mut m = Subset::full(n);
                for s in subbase.iter().filter(|s| s.contains(x)) {
                    m.intersect_with(s);
                }
                m
            })
            .collect();
        Topology { labels, min_nbhd }
    }

    pub fn alexandroff(p: &FinitePoset) -> Self {
        Topology {
            labels: p.labels().to_vec(),
            min_nbhd: (0..p.len()).map(|x| p.up(x).clone()).collect(),
        }
    }

    /// Scott topology, from the definition.
    ///
    /// `↑x` is the least up-set containing `x`, so when it passes the Scott
    /// condition it is the minimal neighbourhood. Otherwise the Scott-open
    /// up-sets containing `x` are enumerated and intersected.
    pub fn scott(p: &FinitePoset, cap: usize) -> Result<Self> {
        let failures = p.principal_scott_failures();
        let mut min_nbhd = Vec::with_capacity(p.len());
        let mut scott_opens: Option<Vec<Subset>> = None;
        for x in 0..p.len() {
            if !failures.contains(x) {
                min_nbhd.push(p.up(x).clone());
                continue;
            }
            if scott_opens.is_none() {
                let mut opens = Vec::new();
                p.for_each_up_set(cap, |u| {
                    if p.is_scott_open(u) {
                        opens.push(u.clone());
                    }
                })?;
                scott_opens = Some(opens);
            }
            let mut m = p.carrier();
            for u in scott_opens.iter().flatten().filter(|u| u.contains(x)) {
                m.intersect_with(u);
            }
            min_nbhd.push(m);
        }
        Ok(Topology {
            labels: p.labels().to_vec(),
            min_nbhd,
        })
    }

    /// Upper topology, generated by the sets `P∖↓x`.
    pub fn upper(p: &FinitePoset) -> Self {
        let subbase: Vec<Subset> = (0..p.len()).map(|x| p.down(x).complement()).collect();
        Self::from_subbase(p.labels().to_vec(), &subbase)
    }

    pub fn indiscrete(labels: Vec<String>) -> Self {
        let n = labels.len();
        Topology {
            labels,
            min_nbhd: alloc::vec![Subset::full(n); n],
        }
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

    pub fn min_nbhd(&self, x: usize) -> &Subset {
        &self.min_nbhd[x]
    }

    pub fn is_open(&self, s: &Subset) -> bool {
        s.iter().all(|x| self.min_nbhd[x].is_subset(s))
    }

    /// All open sets in canonical order, as unions of minimal neighbourhoods.
    pub fn open_sets(&self, cap: usize) -> Result<Vec<Subset>> {
        let n = self.len();
        let mut opens = alloc::collections::BTreeSet::new();
        opens.insert(Subset::empty(n));
        let mut frontier: Vec<Subset> = alloc::vec![Subset::empty(n)];
        while let Some(s) = frontier.pop() {
            for m in &self.min_nbhd {
                let t = s.union(m);
                if opens.insert(t.clone()) {
                    if opens.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "open-set enumeration",
                            cap,
                        });
                    }
                    frontier.push(t);
                }
            }
        }
        Ok(opens.into_iter().collect())
    }

    /// Specialization order: `x <= y` iff `x ∈ cl{y}` iff `y ∈ min_nbhd(x)`.
    pub fn specialization(&self) -> Result<FinitePoset> {
        let n = self.len();
        for x in 0..n {
            for y in self.min_nbhd[x].iter() {
                if x != y && self.min_nbhd[y].contains(x) {
                    return Err(Error::NotT0);
                }
            }
        }
        FinitePoset::from_relation(self.labels.clone(), |x, y| self.min_nbhd[x].contains(y))
    }

    /// The finite T0 space carrying this topology.
    pub fn to_space(&self) -> Result<FiniteSpace> {
        Ok(FiniteSpace::new(self.specialization()?))
    }
}

pub fn topology_equal(a: &Topology, b: &Topology) -> Result<TopologyComparison> {
    if a.len() != b.len() {
        return Err(Error::CarrierMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    for x in 0..a.len() {
        let (ma, mb) = (a.min_nbhd(x), b.min_nbhd(x));
        if ma != mb {
            // If each minimal neighbourhood were open in the other topology,
            // each would contain the other.
            let witness = if !b.is_open(ma) { ma } else { mb };
            return Ok(TopologyComparison {
                equal: false,
                witness: Some(witness.clone()),
            });
        }
    }
    Ok(TopologyComparison {
        equal: true,
        witness: None,
    })
}

/// Whether `σ(P×Q)` equals the product of `σ(P)` and `σ(Q)`.
///
/// Minimal neighbourhoods in a product topology are products of minimal
/// neighbourhoods.
pub fn product_scott_check(p: &FinitePoset, q: &FinitePoset, cap: usize) -> Result<bool> {
    let pq = p.product(q);
    let joint = Topology::scott(&pq, cap)?;
    let (sp, sq) = (Topology::scott(p, cap)?, Topology::scott(q, cap)?);
    let m = q.len();
    let min_nbhd = (0..pq.len())
        .map(|i| {
            Subset::from_indices(
                pq.len(),
                sp.min_nbhd(i / m)
                    .iter()
                    .flat_map(|a| sq.min_nbhd(i % m).iter().map(move |b| a * m + b)),
            )
        })
        .collect();
    let product = Topology {
        labels: pq.labels().to_vec(),
        min_nbhd,
    };
    Ok(topology_equal(&joint, &product)?.equal)
}
