//! Exhaustive and seeded-random parameter sweeps that validate every
//! criterion against the enumeration oracles, plus the aggregated
//! verification suite behind `verify-all` and the acceptance tests.
//!
//! Sweep policy, pinned here once for every caller:
//!
//! * fields are all towers (p, m, n) with n ≥ 2 and p^{mn} ≤ `max_field`;
//! * coefficient enumeration is exhaustive on the small prime fields
//!   (q = 2 with n ≤ 4, q = 3 with n ≤ 4 for shapes with at most two free
//!   coefficients, n ≤ 3 otherwise) and seeded-random elsewhere, with
//!   `random_tuples` tuples per family and field;
//! * every random draw is keyed by (seed, field, family, index), so reports
//!   are byte-identical across runs and thread schedules.

use crate::bitset::SlotSet;
use crate::criteria::{
    self, club_primo, club_same_field, club_secondo, club_sigma_bound, iff_criterion_quiet,
    pseudoregulus_conditions_quiet, sufficient_bound_quiet, sufficient_via_adjoint_quiet,
    BinomialParams, ClubParams, IffFamily, SufficientFamily, Verdict,
};
use crate::curve_bounds::{
    clubs_sigma_profile, clubs_sigma_report, family_profile, genus_artin_schreier, genus_kummer,
    genus_report, GenusFamily,
};
use crate::error::Result;
use crate::field::{make_field, Elt, FieldCtx};
use crate::linset::{graph_slots, shape_slots};
use crate::qpoly::QPoly;
use crate::rng::Xorshift64Star;
use crate::semifield::{
    check_cor42, check_cor43, check_thm41, is_presemifield, left_multiplications_invertible,
    resolve_open_case, BelPair, OPEN_CASES,
};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// Knobs for the verification suite. The defaults pin the acceptance scale.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Field-size bound for the main sweeps.
    pub max_field: u64,
    /// Field-size bound for the σ-club bound sweep.
    pub sigma_max_field: u64,
    /// Field-size bound for implied-witness confirmation.
    pub witness_max_field: u64,
    /// Random tuples per (family, field) outside the exhaustive tier.
    pub random_tuples: usize,
    /// Random polynomials per field for the adjoint identity check.
    pub adjoint_random_fs: usize,
    pub seed: u64,
    /// Cap on q^{2n} for zero-divisor scans.
    pub scan_cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_field: 1024,
            sigma_max_field: 4096,
            witness_max_field: 4096,
            random_tuples: 10_000,
            adjoint_random_fs: 1_000,
            seed: 0x5EED_0001,
            scan_cap: 1 << 26,
        }
    }
}

/// Outcome of one verification check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub description: String,
    pub checked: u64,
    pub failure_count: u64,
    /// At most [`FAILURE_SAMPLE`] failure descriptions.
    pub failures: Vec<String>,
    /// Informational lines (archived decisions, elapsed notes).
    pub details: Vec<String>,
}

pub const FAILURE_SAMPLE: usize = 25;

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failure_count: u64,
    failures: Vec<String>,
    details: Vec<String>,
}

impl Tally {
    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < FAILURE_SAMPLE {
            self.failures.push(msg);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < FAILURE_SAMPLE {
                self.failures.push(f);
            }
        }
        self.details.extend(other.details);
        self
    }

    fn into_report(self, id: &str, description: &str) -> CheckReport {
        CheckReport {
            id: id.to_string(),
            description: description.to_string(),
            checked: self.checked,
            failure_count: self.failure_count,
            failures: self.failures,
            details: self.details,
        }
    }
}

/// All towers (p, m, n) with n ≥ 2 and p^{mn} ≤ max, ordered.
pub fn fields_up_to(max: u64) -> Vec<(u64, usize, usize)> {
    let mut out = Vec::new();
    for p in 2..=max {
        if !crate::field::is_prime(p) {
            continue;
        }
        if p * p > max {
            break;
        }
        for m in 1..=20 {
            let q = (p as u128).pow(m as u32);
            if q * q > max as u128 {
                break;
            }
            for n in 2..=20 {
                if q.pow(n as u32) > max as u128 {
                    break;
                }
                out.push((p, m, n));
            }
        }
    }
    out
}

fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut s = base ^ 0x9E37_79B9_7F4A_7C15;
    for &t in tags {
        s = s
            .rotate_left(17)
            .wrapping_add(t.wrapping_mul(0xA24B_AED4_963E_E407))
            ^ (s >> 31);
    }
    s
}

fn field_tag(ctx: &FieldCtx) -> u64 {
    ctx.p() * 1_000_000 + ctx.m() as u64 * 1_000 + ctx.n() as u64
}

/// Exhaustive tier for shapes with at most two free field coefficients.
fn exhaustive_two_coeff(ctx: &FieldCtx) -> bool {
    ctx.m() == 1 && (ctx.p() == 2 || ctx.p() == 3) && ctx.n() <= 4
}

/// Exhaustive tier for shapes with three or more free field coefficients.
fn exhaustive_many_coeff(ctx: &FieldCtx) -> bool {
    ctx.m() == 1
        && ((ctx.p() == 2 && ctx.n() <= 4) || (ctx.p() == 3 && ctx.n() <= 3))
}

fn sample_nonzero(ctx: &FieldCtx, rng: &mut Xorshift64Star) -> Elt {
    Elt(1 + rng.below(ctx.size() - 1))
}

fn sample_f_with_support(
    ctx: &Arc<FieldCtx>,
    rng: &mut Xorshift64Star,
    max_support: u64,
    max_degree: usize,
) -> QPoly {
    let slots = ctx.n().min(max_degree + 1);
    let mut coeffs = vec![0u64; ctx.n()];
    let nnz = 1 + rng.below(max_support.min(slots as u64));
    let mut placed = 0;
    while placed < nnz {
        let i = rng.below(slots as u64) as usize;
        if coeffs[i] == 0 {
            coeffs[i] = 1 + rng.below(ctx.size() - 1);
            placed += 1;
        }
    }
    QPoly::from_ints(ctx.clone(), &coeffs)
}

/// Shared slot-set cache for one field's sweep.
struct OracleCache {
    ctx: Arc<FieldCtx>,
    g_masks: HashMap<(usize, u64, u64), SlotSet>,
}

impl OracleCache {
    fn new(ctx: Arc<FieldCtx>) -> Self {
        OracleCache {
            ctx,
            g_masks: HashMap::new(),
        }
    }

    fn g_mask(&mut self, k: usize, alpha: Elt, beta: Elt) -> &SlotSet {
        let OracleCache { ctx, g_masks } = self;
        g_masks
            .entry((k, alpha.0, beta.0))
            .or_insert_with(|| graph_slots(&QPoly::binomial_g(ctx.clone(), alpha, k, beta)))
    }

    fn meets(&mut self, p: &BinomialParams, f_mask: &SlotSet) -> bool {
        self.g_mask(p.k, p.alpha, p.beta).intersects(f_mask)
    }
}

/// Trace-one data for fast club point sets: the non-head slots of
/// {⟨(x, α·Tr_{q^n/q^r}(x))⟩} are α^{-1}·(trace-one set), and the σ-swap's
/// slots are α·(inverted trace-one set) with the head mapped to slot 0.
struct ClubMasks {
    ctx: Arc<FieldCtx>,
    trace_one: Vec<u64>,
    trace_one_inv: Vec<u64>,
}

impl ClubMasks {
    fn new(ctx: Arc<FieldCtx>, r: usize) -> Self {
        let trace_one: Vec<u64> = ctx
            .elements()
            .filter(|&u| ctx.rel_trace(u, r).unwrap() == Elt::ONE)
            .map(|u| u.0)
            .collect();
        let trace_one_inv = trace_one
            .iter()
            .map(|&u| ctx.inv(Elt(u)).unwrap().0)
            .collect();
        ClubMasks {
            ctx,
            trace_one,
            trace_one_inv,
        }
    }

    fn mask(&self, alpha: Elt, swapped: bool) -> SlotSet {
        let ctx = &self.ctx;
        let mut set = SlotSet::for_field_size(ctx.size());
        if swapped {
            set.insert(0);
            for &w in &self.trace_one_inv {
                set.insert(ctx.mul(alpha, Elt(w)).0);
            }
        } else {
            set.insert(ctx.size());
            let ai = ctx.inv(alpha).unwrap();
            for &u in &self.trace_one {
                set.insert(ctx.mul(ai, Elt(u)).0);
            }
        }
        set
    }
}

fn proper_divisors(n: usize) -> Vec<usize> {
    (1..n).filter(|r| n % r == 0).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ======================================================================
// Check 1: iff-criteria match the oracle exactly
// ======================================================================

pub fn check_iff_soundness(cfg: &VerifyConfig) -> CheckReport {
    let fields = fields_up_to(cfg.max_field);
    let tally = fields
        .par_iter()
        .map(|&(p, m, n)| {
            let ctx = make_field(p, m, n).expect("field within cap");
            let mut t = Tally::default();
            if exhaustive_two_coeff(&ctx) {
                iff_exhaustive(&ctx, &mut t);
            } else {
                for fam in IffFamily::ALL {
                    iff_random(&ctx, fam, cfg, &mut t);
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.into_report(
        "iff-soundness",
        "exact criteria (norm tests) agree with the enumeration oracle",
    )
}

fn check_iff_tuple(p: &BinomialParams, fam: IffFamily, cache: &mut OracleCache, t: &mut Tally) {
    let Ok(v) = iff_criterion_quiet(p, fam) else { return };
    let f_mask = shape_slots(&p.f, p.h, fam.swapped());
    let oracle = cache.meets(p, &f_mask);
    t.checked += 1;
    if v.verdict != Verdict::Decided(oracle) {
        t.fail(format!(
            "{} mismatch at q={} n={}: f={:?} h={} k={} alpha={} beta={} oracle={}",
            fam.label(),
            p.ctx.q(),
            p.ctx.n(),
            p.f,
            p.h,
            p.k,
            p.alpha.0,
            p.beta.0,
            oracle
        ));
    }
}

fn iff_exhaustive(ctx: &Arc<FieldCtx>, t: &mut Tally) {
    let n = ctx.n();
    // monomial families; the shape conditions route each tuple to the
    // families that accept it
    let mon_combos: Vec<(usize, usize, usize)> = (1..n)
        .flat_map(|k| (0..n).flat_map(move |h| (0..n).map(move |d| (k, h, d))))
        .collect();
    let mon_tally = mon_combos
        .par_iter()
        .map(|&(k, h, d)| {
            let mut t = Tally::default();
            let mut cache = OracleCache::new(ctx.clone());
            for ad in ctx.nonzero_elements() {
                let f = QPoly::monomial(ctx.clone(), ad, d);
                let f_mask = shape_slots(&f, h, false);
                let f_mask_sw = shape_slots(&f, h, true);
                let mut p =
                    BinomialParams::new(ctx.clone(), Elt::ONE, Elt::ZERO, k, f, h).unwrap();
                for alpha in ctx.nonzero_elements() {
                    p.alpha = alpha;
                    for beta in ctx.elements() {
                        p.beta = beta;
                        for fam in [IffFamily::MonHEqD, IffFamily::MonBeta0] {
                            check_iff_tuple_masked(&p, fam, &f_mask, &mut cache, &mut t);
                        }
                        check_iff_tuple_masked(
                            &p,
                            IffFamily::SigmaMonSpecial,
                            &f_mask_sw,
                            &mut cache,
                            &mut t,
                        );
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    // binomial special shape: beta forced to a_h
    let mut bin_combos: Vec<(usize, usize, usize, usize)> = Vec::new();
    for ell in 0..n {
        for d in ell + 1..n {
            for h in [d, ell] {
                for k in 1..n {
                    bin_combos.push((ell, d, h, k));
                }
            }
        }
    }
    let bin_tally = bin_combos
        .par_iter()
        .map(|&(ell, d, h, k)| {
            let mut t = Tally::default();
            let mut cache = OracleCache::new(ctx.clone());
            for ad in ctx.nonzero_elements() {
                for al in ctx.nonzero_elements() {
                    let mut coeffs = vec![0u64; n];
                    coeffs[d] = ad.0;
                    coeffs[ell] = al.0;
                    let f = QPoly::from_ints(ctx.clone(), &coeffs);
                    let f_mask = shape_slots(&f, h, false);
                    let beta = if h == d { ad } else { al };
                    let mut p =
                        BinomialParams::new(ctx.clone(), Elt::ONE, beta, k, f, h).unwrap();
                    for alpha in ctx.nonzero_elements() {
                        p.alpha = alpha;
                        check_iff_tuple_masked(
                            &p,
                            IffFamily::BinomialSpecial,
                            &f_mask,
                            &mut cache,
                            &mut t,
                        );
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    let merged = mon_tally.merge(bin_tally);
    *t = std::mem::take(t).merge(merged);
}

fn check_iff_tuple_masked(
    p: &BinomialParams,
    fam: IffFamily,
    f_mask: &SlotSet,
    cache: &mut OracleCache,
    t: &mut Tally,
) {
    let Ok(v) = iff_criterion_quiet(p, fam) else { return };
    let oracle = cache.meets(p, f_mask);
    t.checked += 1;
    if v.verdict != Verdict::Decided(oracle) {
        t.fail(format!(
            "{} mismatch at q={} n={}: f={:?} h={} k={} alpha={} beta={}",
            fam.label(),
            p.ctx.q(),
            p.ctx.n(),
            p.f,
            p.h,
            p.k,
            p.alpha.0,
            p.beta.0
        ));
    }
}

fn iff_random(ctx: &Arc<FieldCtx>, fam: IffFamily, cfg: &VerifyConfig, t: &mut Tally) {
    let n = ctx.n();
    let mut cache = OracleCache::new(ctx.clone());
    for i in 0..cfg.random_tuples {
        let mut rng = Xorshift64Star::new(derive_seed(
            cfg.seed,
            &[1, field_tag(ctx), fam as u64, i as u64],
        ));
        let k = 1 + rng.below(n as u64 - 1) as usize;
        let alpha = sample_nonzero(ctx, &mut rng);
        let (f, h, beta) = match fam {
            IffFamily::MonHEqD => {
                let d = rng.below(n as u64) as usize;
                (
                    QPoly::monomial(ctx.clone(), sample_nonzero(ctx, &mut rng), d),
                    d,
                    Elt(rng.below(ctx.size())),
                )
            }
            IffFamily::MonBeta0 => {
                let d = rng.below(n as u64) as usize;
                let h = loop {
                    let h = rng.below(n as u64) as usize;
                    if h != d {
                        break h;
                    }
                };
                (
                    QPoly::monomial(ctx.clone(), sample_nonzero(ctx, &mut rng), d),
                    h,
                    Elt::ZERO,
                )
            }
            IffFamily::BinomialSpecial => {
                let d = 1 + rng.below(n as u64 - 1) as usize;
                let ell = rng.below(d as u64) as usize;
                let mut coeffs = vec![0u64; n];
                coeffs[d] = 1 + rng.below(ctx.size() - 1);
                coeffs[ell] = 1 + rng.below(ctx.size() - 1);
                let h = if rng.below(2) == 0 { d } else { ell };
                let beta = Elt(coeffs[h]);
                (QPoly::from_ints(ctx.clone(), &coeffs), h, beta)
            }
            IffFamily::SigmaMonSpecial => {
                let d = rng.below(n as u64) as usize;
                let (h, beta) = if rng.below(2) == 0 {
                    (d, Elt(rng.below(ctx.size())))
                } else {
                    (rng.below(n as u64) as usize, Elt::ZERO)
                };
                (
                    QPoly::monomial(ctx.clone(), sample_nonzero(ctx, &mut rng), d),
                    h,
                    beta,
                )
            }
        };
        let p = BinomialParams::new(ctx.clone(), alpha, beta, k, f, h).unwrap();
        check_iff_tuple(&p, fam, &mut cache, t);
    }
}

// ======================================================================
// Check 2: sufficient criteria never fire on empty intersections
// ======================================================================

pub fn check_sufficient_soundness(cfg: &VerifyConfig) -> CheckReport {
    let fields = fields_up_to(cfg.max_field);
    let mut tally = fields
        .par_iter()
        .map(|&(p, m, n)| {
            let ctx = make_field(p, m, n).expect("field within cap");
            let mut t = Tally::default();
            sufficient_sweep_field(&ctx, cfg, &mut t);
            club_primo_sweep_field(&ctx, &mut t);
            pseudoregulus_sweep_field(&ctx, cfg, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally = tally.merge(club_sigma_sweep(cfg));
    tally.into_report(
        "sufficient-soundness",
        "every fired bound is confirmed nonempty by the oracle",
    )
}

/// Shape masks computed on first use and reused across the (α, β) loops.
struct LazyShapeMasks {
    plain: Option<SlotSet>,
    swapped: Option<SlotSet>,
}

impl LazyShapeMasks {
    fn new() -> Self {
        LazyShapeMasks {
            plain: None,
            swapped: None,
        }
    }

    fn get(&mut self, f: &QPoly, h: usize, swapped: bool) -> &SlotSet {
        let slot = if swapped { &mut self.swapped } else { &mut self.plain };
        slot.get_or_insert_with(|| shape_slots(f, h, swapped))
    }
}

fn check_sufficient_tuple(
    p: &BinomialParams,
    fam: SufficientFamily,
    f_masks: &mut LazyShapeMasks,
    cache: &mut OracleCache,
    t: &mut Tally,
) {
    let Ok(v) = sufficient_bound_quiet(p, fam) else { return };
    t.checked += 1;
    // adjoint corollaries must agree with their delegated base theorem
    if fam.adjoint_base().is_some() {
        let delegated = sufficient_via_adjoint_quiet(p, fam).expect("same domain");
        if delegated.verdict != v.verdict {
            t.fail(format!(
                "{} table/delegation split at q={} n={}: f={:?} h={} k={} alpha={} beta={}",
                fam.label(),
                p.ctx.q(),
                p.ctx.n(),
                p.f,
                p.h,
                p.k,
                p.alpha.0,
                p.beta.0
            ));
        }
    }
    if v.verdict != Verdict::GuaranteedNonEmpty {
        return;
    }
    let f_mask = f_masks.get(&p.f, p.h, fam.swapped());
    if !cache.g_mask(p.k, p.alpha, p.beta).intersects(f_mask) {
        t.fail(format!(
            "{} fired on empty intersection at q={} n={}: f={:?} h={} k={} alpha={} beta={}",
            fam.label(),
            p.ctx.q(),
            p.ctx.n(),
            p.f,
            p.h,
            p.k,
            p.alpha.0,
            p.beta.0
        ));
    }
}

fn sufficient_sweep_field(ctx: &Arc<FieldCtx>, cfg: &VerifyConfig, t: &mut Tally) {
    let n = ctx.n();
    if exhaustive_two_coeff(ctx) {
        // monomial shapes exhaustively
        let combos: Vec<(usize, usize, usize)> = (1..n)
            .flat_map(|k| (0..n).flat_map(move |h| (0..n).map(move |d| (k, h, d))))
            .collect();
        let mon = combos
            .par_iter()
            .map(|&(k, h, d)| {
                let mut t = Tally::default();
                let mut cache = OracleCache::new(ctx.clone());
                for ad in ctx.nonzero_elements() {
                    let f = QPoly::monomial(ctx.clone(), ad, d);
                    let mut p =
                        BinomialParams::new(ctx.clone(), Elt::ONE, Elt::ZERO, k, f, h).unwrap();
                    let mut f_masks = LazyShapeMasks::new();
                    for alpha in ctx.nonzero_elements() {
                        for beta in ctx.elements() {
                            p.alpha = alpha;
                            p.beta = beta;
                            for fam in [SufficientFamily::MonGeneral, SufficientFamily::SigmaMon] {
                                check_sufficient_tuple(&p, fam, &mut f_masks, &mut cache, &mut t);
                            }
                        }
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        *t = std::mem::take(t).merge(mon);
    }
    if exhaustive_many_coeff(ctx) {
        // binomial f exhaustively for the non-monomial families
        let mut combos: Vec<(usize, usize, usize, usize)> = Vec::new();
        for ell in 0..n {
            for d in ell + 1..n {
                for k in 1..n {
                    for h in 0..n {
                        combos.push((ell, d, k, h));
                    }
                }
            }
        }
        let bin = combos
            .par_iter()
            .map(|&(ell, d, k, h)| {
                let mut t = Tally::default();
                let mut cache = OracleCache::new(ctx.clone());
                for ad in ctx.nonzero_elements() {
                    for al in ctx.nonzero_elements() {
                        let mut coeffs = vec![0u64; n];
                        coeffs[d] = ad.0;
                        coeffs[ell] = al.0;
                        let f = QPoly::from_ints(ctx.clone(), &coeffs);
                        let mut p =
                            BinomialParams::new(ctx.clone(), Elt::ONE, Elt::ZERO, k, f, h)
                                .unwrap();
                        let mut f_masks = LazyShapeMasks::new();
                        for alpha in ctx.nonzero_elements() {
                            for beta in ctx.elements() {
                                p.alpha = alpha;
                                p.beta = beta;
                                for fam in SufficientFamily::ALL {
                                    if fam == SufficientFamily::MonGeneral
                                        || fam == SufficientFamily::SigmaMon
                                    {
                                        continue;
                                    }
                                    check_sufficient_tuple(
                                        &p,
                                        fam,
                                        &mut f_masks,
                                        &mut cache,
                                        &mut t,
                                    );
                                }
                            }
                        }
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        *t = std::mem::take(t).merge(bin);
    }
    // seeded-random tuples for every family, all fields (covers trinomials
    // and the fields outside the exhaustive tier)
    let rand = SufficientFamily::ALL
        .par_iter()
        .map(|&fam| {
            let mut t = Tally::default();
            let mut cache = OracleCache::new(ctx.clone());
            for i in 0..cfg.random_tuples {
                let mut rng = Xorshift64Star::new(derive_seed(
                    cfg.seed,
                    &[2, field_tag(ctx), fam as u64 + 100, i as u64],
                ));
                let monomial = matches!(
                    fam,
                    SufficientFamily::MonGeneral | SufficientFamily::SigmaMon
                );
                let f = if monomial {
                    QPoly::monomial(
                        ctx.clone(),
                        sample_nonzero(ctx, &mut rng),
                        rng.below(n as u64) as usize,
                    )
                } else {
                    let f = sample_f_with_support(ctx, &mut rng, 4, n - 1);
                    if f.indices().map(|i| i.is_monomial).unwrap_or(true) {
                        continue;
                    }
                    f
                };
                let p = BinomialParams::new(
                    ctx.clone(),
                    sample_nonzero(ctx, &mut rng),
                    Elt(rng.below(ctx.size())),
                    1 + rng.below(n as u64 - 1) as usize,
                    f,
                    rng.below(n as u64) as usize,
                )
                .unwrap();
                let mut f_masks = LazyShapeMasks::new();
                check_sufficient_tuple(&p, fam, &mut f_masks, &mut cache, &mut t);
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    *t = std::mem::take(t).merge(rand);
}

fn club_primo_sweep_field(ctx: &Arc<FieldCtx>, t: &mut Tally) {
    let n = ctx.n();
    let divisors = proper_divisors(n);
    for &r1 in &divisors {
        let masks1 = ClubMasks::new(ctx.clone(), r1);
        let l1 = masks1.mask(Elt::ONE, false);
        for &r2 in &divisors {
            if gcd(r1 as u64, r2 as u64) != 1 {
                continue;
            }
            let masks2 = ClubMasks::new(ctx.clone(), r2);
            for alpha in ctx.nonzero_elements() {
                let p = ClubParams::new(ctx.clone(), r1, r2, alpha).unwrap();
                let v = club_primo(&p).unwrap();
                t.checked += 1;
                if v.verdict == Verdict::GuaranteedNonEmpty {
                    let count = l1.intersection_count(&masks2.mask(alpha, false));
                    if count < 2 {
                        t.fail(format!(
                            "club_primo fired with only {count} common points: q={} n={} r=({r1},{r2}) alpha={}",
                            ctx.q(), n, alpha.0
                        ));
                    }
                }
            }
        }
    }
}

fn pseudoregulus_sweep_field(ctx: &Arc<FieldCtx>, cfg: &VerifyConfig, t: &mut Tally) {
    let n = ctx.n();
    let xq = QPoly::monomial(ctx.clone(), Elt::ONE, 1);
    let g_mask = graph_slots(&xq);
    let run = |f: &QPoly, h: usize, swapped: bool, t: &mut Tally| {
        let Ok(v) = pseudoregulus_conditions_quiet(f, h, swapped) else {
            return;
        };
        t.checked += 1;
        let decided_or_fired = match v.verdict {
            Verdict::Decided(b) => Some(b),
            Verdict::GuaranteedNonEmpty => Some(true),
            Verdict::Inconclusive => None,
        };
        let oracle = || g_mask.intersects(&shape_slots(f, h, swapped));
        match v.verdict {
            Verdict::Decided(b) => {
                if oracle() != b {
                    t.fail(format!(
                        "pseudoregulus exact verdict wrong: q={} n={} f={f:?} h={h} swapped={swapped}",
                        ctx.q(), n
                    ));
                }
            }
            Verdict::GuaranteedNonEmpty => {
                if !oracle() {
                    t.fail(format!(
                        "pseudoregulus fired on empty: q={} n={} f={f:?} h={h} swapped={swapped}",
                        ctx.q(),
                        n
                    ));
                }
            }
            Verdict::Inconclusive => {}
        }
        let _ = decided_or_fired;
    };
    if exhaustive_many_coeff(ctx) {
        // every f over the whole coefficient space
        for packed in 1..ctx.size().pow(n as u32).min(1 << 22) {
            let mut coeffs = vec![0u64; n];
            let mut v = packed;
            for c in coeffs.iter_mut() {
                *c = v % ctx.size();
                v /= ctx.size();
            }
            let f = QPoly::from_ints(ctx.clone(), &coeffs);
            if f.is_zero() {
                continue;
            }
            for h in 0..n {
                run(&f, h, false, t);
                run(&f, h, true, t);
            }
        }
    } else {
        for i in 0..cfg.random_tuples {
            let mut rng = Xorshift64Star::new(derive_seed(
                cfg.seed,
                &[3, field_tag(ctx), i as u64],
            ));
            // degree capped at 3 to mirror the documented sweep shape
            let f = sample_f_with_support(ctx, &mut rng, 3, 3.min(n - 1));
            let h = rng.below(n as u64) as usize;
            run(&f, h, rng.below(2) == 1, t);
        }
    }
}

fn club_sigma_sweep(cfg: &VerifyConfig) -> Tally {
    fields_up_to(cfg.sigma_max_field)
        .par_iter()
        .map(|&(p, m, n)| {
            let ctx = make_field(p, m, n).expect("field within cap");
            let mut t = Tally::default();
            let divisors = proper_divisors(n);
            for &r1 in &divisors {
                let masks1 = ClubMasks::new(ctx.clone(), r1);
                let l1 = masks1.mask(Elt::ONE, false);
                for &r2 in &divisors {
                    if gcd(r1 as u64, r2 as u64) != 1 {
                        continue;
                    }
                    let p0 = ClubParams::new(ctx.clone(), r1, r2, Elt::ONE).unwrap();
                    let fires =
                        club_sigma_bound(&p0).unwrap().verdict == Verdict::GuaranteedNonEmpty;
                    if !fires {
                        t.checked += 1;
                        continue;
                    }
                    let masks2 = ClubMasks::new(ctx.clone(), r2);
                    for alpha in ctx.nonzero_elements() {
                        t.checked += 1;
                        if !l1.intersects(&masks2.mask(alpha, true)) {
                            t.fail(format!(
                                "club_sigma_bound fired on empty: q={} n={} r=({r1},{r2}) alpha={}",
                                ctx.q(),
                                n,
                                alpha.0
                            ));
                        }
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

// ======================================================================
// Check 3: the factorizable-alpha characterization is exact
// ======================================================================

pub fn check_secondo_characterization(cfg: &VerifyConfig) -> CheckReport {
    let fields: Vec<_> = fields_up_to(cfg.max_field.min(256))
        .into_iter()
        .filter(|&(p, m, _)| m == 1 && (p == 2 || p == 3))
        .collect();
    let tally = fields
        .par_iter()
        .map(|&(p, m, n)| {
            let ctx = make_field(p, m, n).expect("field within cap");
            let mut t = Tally::default();
            let divisors = proper_divisors(n);
            for &r1 in &divisors {
                let masks1 = ClubMasks::new(ctx.clone(), r1);
                let l1 = masks1.mask(Elt::ONE, false);
                for &r2 in &divisors {
                    if gcd(r1 as u64, r2 as u64) != 1 {
                        continue;
                    }
                    let masks2 = ClubMasks::new(ctx.clone(), r2);
                    let sub1 = ctx.subfield_elements(r1).unwrap();
                    let sub2 = ctx.subfield_elements(r2).unwrap();
                    for &a in &sub1 {
                        if a == Elt::ZERO {
                            continue;
                        }
                        for &b in &sub2 {
                            if b == Elt::ZERO {
                                continue;
                            }
                            let alpha = ctx.mul(a, b);
                            let p = ClubParams::new(ctx.clone(), r1, r2, alpha).unwrap();
                            let v = club_secondo(&p, a, b).unwrap();
                            let count = l1.intersection_count(&masks2.mask(alpha, false));
                            t.checked += 1;
                            if v.verdict != Verdict::Decided(count >= 2) {
                                t.fail(format!(
                                    "club_secondo mismatch: q={} n={n} r=({r1},{r2}) a={} b={} oracle_count={count}",
                                    ctx.q(), a.0, b.0
                                ));
                            }
                        }
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.into_report(
        "secondo-characterization",
        "factorizable-alpha clubs share a non-head point exactly per the trace test",
    )
}

// ======================================================================
// Check 4: the adjoint preserves the point set
// ======================================================================

pub fn check_adjoint_identity(cfg: &VerifyConfig) -> CheckReport {
    let fields = fields_up_to(cfg.max_field);
    let tally = fields
        .par_iter()
        .map(|&(p, m, n)| {
            let ctx = make_field(p, m, n).expect("field within cap");
            let mut t = Tally::default();
            for i in 0..cfg.adjoint_random_fs {
                let mut rng = Xorshift64Star::new(derive_seed(
                    cfg.seed,
                    &[4, field_tag(&ctx), i as u64],
                ));
                let f = loop {
                    let coeffs: Vec<u64> =
                        (0..n).map(|_| rng.below(ctx.size())).collect();
                    let f = QPoly::from_ints(ctx.clone(), &coeffs);
                    if !f.is_zero() {
                        break f;
                    }
                };
                t.checked += 1;
                if shape_slots(&f, 0, false) != shape_slots(&f.adjoint(), 0, false) {
                    t.fail(format!(
                        "adjoint changed the point set at q={} n={}: f={:?}",
                        ctx.q(),
                        n,
                        f
                    ));
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.into_report(
        "adjoint-identity",
        "L_f and L_{f-adjoint} are the same point set",
    )
}

// ======================================================================
// Check 5: structure counts for the canonical club and pseudoregulus
// ======================================================================

pub fn check_structure_counts(cfg: &VerifyConfig) -> CheckReport {
    let fields = fields_up_to(cfg.max_field);
    let tally = fields
        .par_iter()
        .map(|&(p, m, n)| {
            let ctx = make_field(p, m, n).expect("field within cap");
            let mut t = Tally::default();
            let q = ctx.q();
            let club = crate::linset::build(
                &QPoly::trace_form(ctx.clone(), 1).unwrap(),
                0,
                false,
            );
            t.checked += 1;
            let expected = ctx.size() / q + 1;
            if club.len() as u64 != expected
                || club.weight(&crate::linset::ProjPoint::Infinity) != Some(n - 1)
            {
                t.fail(format!(
                    "trace club counts wrong at q={q} n={n}: {} points, head weight {:?}",
                    club.len(),
                    club.weight(&crate::linset::ProjPoint::Infinity)
                ));
            }
            let preg =
                crate::linset::build(&QPoly::monomial(ctx.clone(), Elt::ONE, 1), 0, false);
            t.checked += 1;
            if preg.len() as u64 != (ctx.size() - 1) / (q - 1)
                || preg.classify().kind != crate::linset::ClassKind::Scattered
            {
                t.fail(format!(
                    "pseudoregulus counts wrong at q={q} n={n}: {} points",
                    preg.len()
                ));
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.into_report(
        "structure-counts",
        "club and pseudoregulus sizes match the closed forms",
    )
}

// ======================================================================
// Check 6: genus formulas, profile agreement, implied witnesses
// ======================================================================

pub fn check_genus_machinery(cfg: &VerifyConfig) -> CheckReport {
    let fields = fields_up_to(cfg.witness_max_field);
    let tally = fields
        .par_iter()
        .map(|&(p, m, n)| {
            let ctx = make_field(p, m, n).expect("field within cap");
            let mut t = Tally::default();
            let compare = ctx.size() <= cfg.max_field;
            genus_binomial_sweep_field(&ctx, cfg, compare, &mut t);
            genus_clubs_sweep_field(&ctx, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.into_report(
        "genus-machinery",
        "closed-form genus equals the profile evaluation; implied points exist",
    )
}

fn genus_binomial_sweep_field(
    ctx: &Arc<FieldCtx>,
    cfg: &VerifyConfig,
    compare_profiles: bool,
    t: &mut Tally,
) {
    let n = ctx.n();
    let mut cache = OracleCache::new(ctx.clone());
    // support patterns: all monomials and binomials, a slice of trinomials
    let mut patterns: Vec<Vec<usize>> = Vec::new();
    for d in 0..n {
        patterns.push(vec![d]);
    }
    for ell in 0..n {
        for d in ell + 1..n {
            patterns.push(vec![ell, d]);
        }
    }
    for ell in 0..n.saturating_sub(2) {
        patterns.push(vec![ell, ell + 1, ell + 2]);
    }
    if n >= 4 {
        patterns.push(vec![0, 2, n - 1]);
    }
    for (pi, pattern) in patterns.iter().enumerate() {
        for k in 1..n {
            for h in 0..n {
                for trial in 0..3u64 {
                    let mut rng = Xorshift64Star::new(derive_seed(
                        cfg.seed,
                        &[6, field_tag(ctx), pi as u64, k as u64, h as u64, trial],
                    ));
                    let mut coeffs = vec![0u64; n];
                    for &i in pattern {
                        coeffs[i] = 1 + rng.below(ctx.size() - 1);
                    }
                    let f = QPoly::from_ints(ctx.clone(), &coeffs);
                    let alpha = sample_nonzero(ctx, &mut rng);
                    let a_h = f.coeff(h);
                    // targeted β values hit each m_h selector case
                    let mut betas = vec![Elt::ZERO, Elt(rng.below(ctx.size())), a_h];
                    if a_h != Elt::ZERO {
                        betas.push(ctx.inv(a_h).unwrap());
                    }
                    for beta in betas {
                        let p = BinomialParams::new(
                            ctx.clone(),
                            alpha,
                            beta,
                            k,
                            f.clone(),
                            h,
                        )
                        .unwrap();
                        for fam in GenusFamily::BINOMIAL {
                            let Ok(rep) = genus_report(&p, fam) else { continue };
                            t.checked += 1;
                            if compare_profiles {
                                let prof = family_profile(&p, fam).unwrap();
                                match genus_kummer(&prof) {
                                    Ok(g) if g == rep.genus => {}
                                    other => t.fail(format!(
                                        "{} closed form {} vs profile {:?} at q={} n={} f={:?} h={h} k={k} beta={}",
                                        fam.label(), rep.genus, other, ctx.q(), n, f, beta.0
                                    )),
                                }
                            }
                            if rep.implies_point {
                                let f_mask = shape_slots(&p.f, p.h, fam.swapped());
                                if !cache.g_mask(p.k, p.alpha, p.beta).intersects(&f_mask) {
                                    t.fail(format!(
                                        "{} implied a point on an empty intersection at q={} n={} f={:?} h={h} k={k} beta={}",
                                        fam.label(), ctx.q(), n, f, beta.0
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

fn genus_clubs_sweep_field(ctx: &Arc<FieldCtx>, t: &mut Tally) {
    let n = ctx.n();
    let q = ctx.q() as i64;
    let divisors = proper_divisors(n);
    for &r1 in &divisors {
        for &r2 in &divisors {
            if gcd(r1 as u64, r2 as u64) != 1 {
                continue;
            }
            let p = ClubParams::new(ctx.clone(), r1, r2, Elt::ONE).unwrap();
            let rep = clubs_sigma_report(&p).unwrap();
            t.checked += 1;
            let closed = (q.pow(r1 as u32) - 1) * (q.pow(r2 as u32) - 1);
            if rep.genus != closed {
                t.fail(format!(
                    "clubs-sigma genus {} differs from closed form {closed} at q={q} n={n} r=({r1},{r2})",
                    rep.genus
                ));
            }
            match genus_artin_schreier(&clubs_sigma_profile(&p)) {
                Ok(g) if g == rep.genus => {}
                other => t.fail(format!(
                    "clubs-sigma profile route {:?} differs at q={q} n={n} r=({r1},{r2})",
                    other
                )),
            }
            if rep.implies_point {
                let masks1 = ClubMasks::new(ctx.clone(), r1);
                let l1 = masks1.mask(Elt::ONE, false);
                let masks2 = ClubMasks::new(ctx.clone(), r2);
                for alpha in ctx.nonzero_elements() {
                    t.checked += 1;
                    if !l1.intersects(&masks2.mask(alpha, true)) {
                        t.fail(format!(
                            "clubs-sigma implied point missing at q={q} n={n} r=({r1},{r2}) alpha={}",
                            alpha.0
                        ));
                    }
                }
            }
        }
    }
}

// ======================================================================
// Check 7: presemifield machinery
// ======================================================================

pub fn check_semifield_consistency(cfg: &VerifyConfig) -> CheckReport {
    let mut t = Tally::default();

    // dual-oracle agreement on random pairs
    for (p, n) in [(2u64, 3usize), (3, 2), (2, 4)] {
        let ctx = make_field(p, 1, n).unwrap();
        for i in 0..200u64 {
            let mut rng = Xorshift64Star::new(derive_seed(cfg.seed, &[7, p, n as u64, i]));
            let l1 = loop {
                let f = sample_f_with_support(&ctx, &mut rng, n as u64, n - 1);
                if !f.is_zero() {
                    break f;
                }
            };
            let l2 = sample_f_with_support(&ctx, &mut rng, n as u64, n - 1);
            let pair = BelPair::new(l1, l2).unwrap();
            let rep = is_presemifield(&pair).unwrap();
            t.checked += 1;
            if rep.is_presemifield != left_multiplications_invertible(&pair) {
                t.fail(format!(
                    "scan and invertibility oracles disagree at q={p} n={n}: l1={:?} l2={:?}",
                    pair.l1, pair.l2
                ));
            }
        }
    }

    // trace-pair degree bound: all L2 of q-degree ≤ 1 at q=2, n ∈ {4, 6}
    for n in [4usize, 6] {
        let ctx = make_field(2, 1, n).unwrap();
        let tr = QPoly::trace_form(ctx.clone(), 1).unwrap();
        for a0 in ctx.elements() {
            for a1 in ctx.elements() {
                if a0 == Elt::ZERO && a1 == Elt::ZERO {
                    continue;
                }
                let pair =
                    BelPair::new(tr.clone(), QPoly::from_ints(ctx.clone(), &[a0.0, a1.0]))
                        .unwrap();
                let rep = check_thm41(&pair).unwrap();
                t.checked += 1;
                if !rep.consistent {
                    t.fail(format!(
                        "degree bound violated by a semifield at n={n}: L2=[{},{}]",
                        a0.0, a1.0
                    ));
                }
            }
        }
    }

    // two-trace bound across coprime divisor pairs and all alpha
    for (p, n) in [(2u64, 4usize), (2, 6), (2, 8), (3, 4)] {
        let ctx = make_field(p, 1, n).unwrap();
        let divisors = proper_divisors(n);
        for &r1 in &divisors {
            for &r2 in &divisors {
                if gcd(r1 as u64, r2 as u64) != 1 {
                    continue;
                }
                for alpha in ctx.nonzero_elements() {
                    let rep = check_cor42(&ctx, r1, r2, alpha).unwrap();
                    t.checked += 1;
                    if !rep.consistent {
                        t.fail(format!(
                            "two-trace bound violated at q={p} n={n} r=({r1},{r2}) alpha={}",
                            alpha.0
                        ));
                    }
                }
            }
        }
    }

    // open trace-pair cases at q = 2 (archived as data)
    for case in OPEN_CASES {
        match resolve_open_case(2, 1, case, cfg.scan_cap) {
            Ok(rep) => {
                t.checked += 1;
                t.details.push(
                    serde_json::to_string(&rep).expect("report serializes"),
                );
                if case == (2, 2) && !rep.is_presemifield {
                    t.fail("case (2,2) must be a presemifield (product is x^q·y)".into());
                }
            }
            Err(e) => t.details.push(format!(
                "open case {:?} skipped at q=2: {e}",
                case
            )),
        }
    }

    // necessary conditions for pairs (f, g): violations force zero divisors
    {
        let ctx = make_field(2, 1, 4).unwrap();
        for i in 0..1500u64 {
            let mut rng = Xorshift64Star::new(derive_seed(cfg.seed, &[8, i]));
            let f = sample_f_with_support(&ctx, &mut rng, 4, 3);
            let k = 1 + rng.below(3) as usize;
            let alpha = sample_nonzero(&ctx, &mut rng);
            let beta = Elt(rng.below(ctx.size()));
            let g = QPoly::binomial_g(ctx.clone(), alpha, k, beta);
            if g.indices().map(|x| x.d) != Ok(k) {
                continue;
            }
            let pair = BelPair::new(f, g).unwrap();
            let conditions = check_cor43(&pair).unwrap();
            let rep = is_presemifield(&pair).unwrap();
            t.checked += 1;
            if rep.is_presemifield {
                for (cond, holds) in &conditions {
                    if !holds {
                        t.fail(format!("presemifield violates required condition: {cond}"));
                    }
                }
            } else if conditions.iter().any(|(_, holds)| !holds) {
                // violated bullet correctly predicted the zero divisor
            }
        }
    }

    t.into_report(
        "semifield-consistency",
        "scan oracles agree; degree/trace bounds hold; open cases archived",
    )
}

/// Run the full verification suite. The returned reports are deterministic
/// for a fixed config (including across thread schedules).
pub fn run_all_checks(cfg: &VerifyConfig) -> Vec<CheckReport> {
    vec![
        check_iff_soundness(cfg),
        check_sufficient_soundness(cfg),
        check_secondo_characterization(cfg),
        check_adjoint_identity(cfg),
        check_structure_counts(cfg),
        check_genus_machinery(cfg),
        check_semifield_consistency(cfg),
    ]
}

/// One combined sweep usable from the CLI for a single family tag.
pub fn sweep_family(
    family: &str,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let report = match family {
        "iff" => check_iff_soundness(cfg),
        "sufficient" => check_sufficient_soundness(cfg),
        "secondo" => check_secondo_characterization(cfg),
        "adjoint" => check_adjoint_identity(cfg),
        "structure" => check_structure_counts(cfg),
        "genus" => check_genus_machinery(cfg),
        "semifield" => check_semifield_consistency(cfg),
        other => {
            return Err(crate::error::Error::PreconditionViolated(format!(
                "unknown sweep family '{other}'"
            ).into()))
        }
    };
    Ok(report)
}

/// Convenience: oracle verdict for a criterion CLI call, when affordable.
pub fn oracle_for_binomial(p: &BinomialParams, swapped: bool) -> (bool, Option<(u64, u64)>) {
    let g_mask = graph_slots(&p.g());
    let f_mask = shape_slots(&p.f, p.h, swapped);
    let meets = g_mask.intersects(&f_mask);
    let witness = crate::linset::curve_affine_witness(&p.g(), &p.f, p.h, swapped)
        .ok()
        .flatten()
        .map(|(x, y)| (x.0, y.0));
    (meets, witness)
}

/// Oracle for club criteria: number of common points of L_{r1} and the
/// (possibly σ-swapped) α-club.
pub fn oracle_for_clubs(p: &ClubParams, swapped: bool) -> u32 {
    let masks1 = ClubMasks::new(p.ctx.clone(), p.r1);
    let masks2 = ClubMasks::new(p.ctx.clone(), p.r2);
    masks1
        .mask(Elt::ONE, false)
        .intersection_count(&masks2.mask(p.alpha, swapped))
}

/// Same-field criterion convenience used by the CLI.
pub fn same_field_with_oracle(p: &ClubParams) -> Result<(criteria::CriterionVerdict, bool)> {
    let v = club_same_field(p)?;
    let oracle = oracle_for_clubs(p, true) > 0;
    Ok((v, oracle))
}
