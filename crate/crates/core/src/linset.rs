//! Linear sets of rank n on PG(1, q^n), built from the shapes
//! (y^{q^h}, f(y)) and their σ-swaps (f(y), y^{q^h}).
//!
//! Points are normalized by the second coordinate: ⟨(u,v)⟩ is stored as the
//! ratio u/v when v ≠ 0 and as the point at infinity ⟨(1,0)⟩ otherwise.
//! With that chart the intersection tests of the criteria modules become
//! ratio-set comparisons, and [`shape_slots`] exposes the point set as a
//! bitset over ratio slots for the sweep oracles.
//!
//! Everything here enumerates F_{q^n}^* directly; these are the ground-truth
//! oracles the theorem checkers are validated against.

use crate::bitset::SlotSet;
use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use crate::qpoly::QPoly;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A normalized point of PG(1, q^n): either ⟨(u,1)⟩ or ⟨(1,0)⟩.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ProjPoint {
    Affine(Elt),
    Infinity,
}

impl ProjPoint {
    /// Normalize a nonzero vector (u, v).
    pub fn from_vector(ctx: &FieldCtx, u: Elt, v: Elt) -> ProjPoint {
        if v == Elt::ZERO {
            assert!(u != Elt::ZERO, "zero vector spans no point");
            ProjPoint::Infinity
        } else {
            ProjPoint::Affine(ctx.div(u, v).unwrap())
        }
    }

    pub fn from_slot(slot: u64, field_size: u64) -> ProjPoint {
        if slot == field_size {
            ProjPoint::Infinity
        } else {
            ProjPoint::Affine(Elt(slot))
        }
    }

    pub fn slot(&self, field_size: u64) -> u64 {
        match self {
            ProjPoint::Affine(r) => r.0,
            ProjPoint::Infinity => field_size,
        }
    }

    /// Homogeneous representative pair, (u,1) or (1,0).
    pub fn pair(&self) -> (u64, u64) {
        match self {
            ProjPoint::Affine(r) => (r.0, 1),
            ProjPoint::Infinity => (1, 0),
        }
    }

    /// Image under σ: ⟨(u,v)⟩ ↦ ⟨(v,u)⟩.
    pub fn swap(&self, ctx: &FieldCtx) -> ProjPoint {
        match self {
            ProjPoint::Infinity => ProjPoint::Affine(Elt::ZERO),
            ProjPoint::Affine(r) if *r == Elt::ZERO => ProjPoint::Infinity,
            ProjPoint::Affine(r) => ProjPoint::Affine(ctx.inv(*r).unwrap()),
        }
    }
}

/// Defining shape of a constructed linear set, kept for reports.
#[derive(Clone, Debug)]
pub struct ShapeDesc {
    pub f: Vec<u64>,
    pub h: usize,
    pub swapped: bool,
}

/// A linear set with per-point weights.
#[derive(Clone, Debug)]
pub struct LinearSet {
    ctx: Arc<FieldCtx>,
    weights: BTreeMap<ProjPoint, usize>,
    rank: usize,
    source: ShapeDesc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Scattered,
    Club { head: ProjPoint },
    Other,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub kind: ClassKind,
    pub weight_histogram: BTreeMap<usize, usize>,
}

#[inline]
fn point_slot(ctx: &FieldCtx, f: &QPoly, h: usize, swapped: bool, y: Elt) -> u64 {
    let yh = ctx.frobenius(y, h);
    let fy = f.evaluate(y);
    let (first, second) = if swapped { (fy, yh) } else { (yh, fy) };
    if second == Elt::ZERO {
        ctx.size()
    } else {
        ctx.div(first, second).unwrap().0
    }
}

/// Point set of the shape (y^{q^h}, f(y)) (σ-swapped when requested) as a
/// bitset over ratio slots. One pass over F_{q^n}^*.
pub fn shape_slots(f: &QPoly, h: usize, swapped: bool) -> SlotSet {
    let ctx = f.ctx();
    let mut set = SlotSet::for_field_size(ctx.size());
    for y in ctx.nonzero_elements() {
        set.insert(point_slot(ctx, f, h, swapped, y));
    }
    set
}

/// Point set of the graph shape (x, g(x)).
pub fn graph_slots(g: &QPoly) -> SlotSet {
    shape_slots(g, 0, false)
}

/// Build the linear set for the shape, with weights from fiber counts.
pub fn build(f: &QPoly, h: usize, swapped: bool) -> LinearSet {
    let ctx = f.ctx().clone();
    let n = ctx.n();
    assert!(h < n, "h must lie in [0, n)");
    let size = ctx.size();
    let mut fiber = vec![0u64; size as usize + 1];
    for y in ctx.nonzero_elements() {
        fiber[point_slot(&ctx, f, h, swapped, y) as usize] += 1;
    }
    let q = ctx.q();
    let mut weights = BTreeMap::new();
    let mut vector_count = 0u64;
    for (slot, &cnt) in fiber.iter().enumerate() {
        if cnt == 0 {
            continue;
        }
        let w = exact_log(q, cnt + 1)
            .unwrap_or_else(|| panic!("fiber count {cnt} + 1 is not a power of q"));
        weights.insert(ProjPoint::from_slot(slot as u64, size), w);
        vector_count += cnt;
    }
    assert_eq!(vector_count, size - 1, "vector count balance violated");
    LinearSet {
        ctx,
        weights,
        rank: n,
        source: ShapeDesc {
            f: f.coeff_ints(),
            h,
            swapped,
        },
    }
}

impl LinearSet {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn source(&self) -> &ShapeDesc {
        &self.source
    }
    pub fn len(&self) -> usize {
        self.weights.len()
    }
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
    pub fn points(&self) -> impl Iterator<Item = &ProjPoint> {
        self.weights.keys()
    }
    pub fn weight(&self, p: &ProjPoint) -> Option<usize> {
        self.weights.get(p).copied()
    }
    pub fn weights(&self) -> &BTreeMap<ProjPoint, usize> {
        &self.weights
    }
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.weights.contains_key(p)
    }

    pub fn classify(&self) -> Classification {
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for &w in self.weights.values() {
            *hist.entry(w).or_insert(0) += 1;
        }
        let kind = if hist.len() == 1 && hist.contains_key(&1) {
            ClassKind::Scattered
        } else if self.rank >= 2
            && hist.get(&(self.rank - 1)) == Some(&1)
            && hist.len() == 2
            && hist.get(&1) == Some(&(self.weights.len() - 1))
        {
            let head = *self
                .weights
                .iter()
                .find(|(_, &w)| w == self.rank - 1)
                .unwrap()
                .0;
            ClassKind::Club { head }
        } else {
            ClassKind::Other
        };
        Classification {
            kind,
            weight_histogram: hist,
        }
    }

    /// Exact intersection of the normalized point sets.
    pub fn intersect(&self, other: &LinearSet) -> Result<Vec<ProjPoint>> {
        if !self.ctx.same_field(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self
            .weights
            .keys()
            .filter(|p| other.contains(p))
            .copied()
            .collect())
    }
}

/// First pair (x̄, ȳ) ∈ (F_{q^n}^*)² on the intersection curve, in packed
/// element order; None when the two point sets are disjoint.
///
/// Unswapped solves x̄·f(ȳ) = ȳ^{q^h}·g(x̄); swapped solves
/// x̄·ȳ^{q^h} = f(ȳ)·g(x̄). Either equation is the 2×2 determinant of the
/// corresponding pair of shape vectors, so a solution exists iff the linear
/// sets meet.
pub fn curve_affine_witness(
    g: &QPoly,
    f: &QPoly,
    h: usize,
    swapped: bool,
) -> Result<Option<(Elt, Elt)>> {
    let ctx = g.ctx();
    if !ctx.same_field(f.ctx()) {
        return Err(Error::ContextMismatch);
    }
    for x in ctx.nonzero_elements() {
        let gx = g.evaluate(x);
        for y in ctx.nonzero_elements() {
            let yh = ctx.frobenius(y, h);
            let fy = f.evaluate(y);
            let (lhs, rhs) = if swapped {
                (ctx.mul(x, yh), ctx.mul(fy, gx))
            } else {
                (ctx.mul(x, fy), ctx.mul(yh, gx))
            };
            if lhs == rhs {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

fn exact_log(base: u64, value: u64) -> Option<usize> {
    let mut acc = 1u64;
    let mut e = 0;
    while acc < value {
        acc *= base;
        e += 1;
    }
    (acc == value).then_some(e)
}
