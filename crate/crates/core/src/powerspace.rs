//! Smyth and lower powerspaces of finite spaces.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::space::FiniteSpace;
use crate::subset::Subset;
use crate::topology::{topology_equal, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    /// `Q(X)` with the upper Vietoris topology, based on `□U`.
    Smyth,
    /// `Γ(X)` with the lower Vietoris topology, subbased on `◊U`.
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    /// Points contained in the argument.
    Box,
    /// Points meeting the argument.
    Diamond,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSpace {
    kind: PowerKind,
    base: FiniteSpace,
    points: Vec<Subset>,
    topology: Topology,
    space: FiniteSpace,
}

impl PowerSpace {
    pub fn smyth(base: &FiniteSpace, cap: usize) -> Result<Self> {
        let points = base.compact_saturated_sets(cap)?;
        Self::generate(PowerKind::Smyth, base, points, cap)
    }

    /// Points are all closed sets, the empty one included.
    pub fn lower(base: &FiniteSpace, cap: usize) -> Result<Self> {
        let points = base.closed_sets(cap)?;
        Self::generate(PowerKind::Lower, base, points, cap)
    }

    pub fn new(kind: PowerKind, base: &FiniteSpace, cap: usize) -> Result<Self> {
        match kind {
            PowerKind::Smyth => Self::smyth(base, cap),
            PowerKind::Lower => Self::lower(base, cap),
        }
    }

    fn generate(kind: PowerKind, base: &FiniteSpace, points: Vec<Subset>, cap: usize) -> Result<Self> {
        if points.len() > cap {
            return Err(Error::CapExceeded {
                what: "powerspace points",
                cap,
            });
        }
        let labels: Vec<String> = points.iter().map(|p| base.show(p)).collect();
        let generators: Vec<Subset> = base
            .opens(cap)?
            .iter()
            .map(|u| match kind {
                PowerKind::Smyth => Self::extent_over(&points, Extent::Box, u),
                PowerKind::Lower => Self::extent_over(&points, Extent::Diamond, u),
            })
            .collect();
        let topology = Topology::from_subbase(labels, &generators);
        let space = topology.to_space()?;
        Ok(PowerSpace {
            kind,
            base: base.clone(),
            points,
            topology,
            space,
        })
    }

    fn extent_over(points: &[Subset], e: Extent, a: &Subset) -> Subset {
        Subset::from_indices(
            points.len(),
            points
                .iter()
                .enumerate()
                .filter(|(_, k)| match e {
                    Extent::Box => k.is_subset(a),
                    Extent::Diamond => k.intersects(a),
                })
                .map(|(i, _)| i),
        )
    }

    pub fn kind(&self) -> PowerKind {
        self.kind
    }

    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn points(&self) -> &[Subset] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Subset {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.points.binary_search(s).ok()
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    /// The powerspace as a finite space, ordered by the specialization
    /// order of the generated topology.
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    /// `□A` or `◊A` as a set of point indices.
    ///
    /// On `P_S(X)`, `□` takes opens and `◊` closed sets; on `P_H(X)`, `◊`
    /// takes opens and `□` closed sets. Other combinations are rejected.
    pub fn extent(&self, e: Extent, a: &Subset) -> Result<Subset> {
        let wants_open = matches!(
            (self.kind, e),
            (PowerKind::Smyth, Extent::Box) | (PowerKind::Lower, Extent::Diamond)
        );
        if wants_open && !self.base.is_open(a) {
            return Err(Error::KindMismatch("argument must be open in the base space"));
        }
        if !wants_open && !self.base.is_closed(a) {
            return Err(Error::KindMismatch("argument must be closed in the base space"));
        }
        Ok(Self::extent_over(&self.points, e, a))
    }

    /// The specialization order is reverse inclusion for `P_S` and
    /// inclusion for `P_H`.
    pub fn specialization_law_holds(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let expected = match self.kind {
                    PowerKind::Smyth => self.points[j].is_subset(&self.points[i]),
                    PowerKind::Lower => self.points[i].is_subset(&self.points[j]),
                };
                self.space.order().leq(i, j) == expected
            })
        })
    }
}

/// `X × Y` with the product of the two Alexandroff topologies. Pair
/// `(x, y)` has index `x * |Y| + y`.
pub fn product_space(x: &FiniteSpace, y: &FiniteSpace) -> Result<FiniteSpace> {
    let order = x.order().product(y.order());
    let m = y.len();
    let boxes: Vec<Subset> = (0..order.len())
        .map(|i| {
            Subset::from_indices(
                order.len(),
                x.order()
                    .up(i / m)
                    .iter()
                    .flat_map(|a| y.order().up(i % m).iter().map(move |b| a * m + b)),
            )
        })
        .collect();
    let product = Topology::from_subbase(order.labels().to_vec(), &boxes);
    if !topology_equal(&product, &Topology::alexandroff(&order))?.equal {
        return Err(Error::TransportHypothesisFailed(
            "product order does not carry the product topology".into(),
        ));
    }
    Ok(FiniteSpace::new(order))
}
