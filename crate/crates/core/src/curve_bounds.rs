//! Closed-form genus formulas for the intersection curves, Hasse-Weil
//! intervals, and the "bound exceeds excluded points ⇒ affine witness"
//! predicate.
//!
//! Each curve family carries a valuation profile read off its proof: the
//! places where the defining rational function F has zeros or poles, with
//! multiplicities. [`genus_kummer`] and [`genus_artin_schreier`] evaluate
//! the textbook genus formulas on such a profile; [`genus_report`] instead
//! evaluates the per-family closed forms and assembles the excluded-point
//! count Z. The two routes must agree — that is one of the acceptance
//! sweeps. No general function-field machinery is involved: profiles are
//! transcribed tables, not computed divisors.

use crate::criteria::{
    m_h_gt_ell, m_h_le_ell, m_h_sigma_gt, m_h_sigma_le, BinomialParams, ClubParams,
};
use crate::error::{Error, Result};
use crate::field::Elt;
use std::fmt;

/// Kummer (degree m, p ∤ m) or generalized Artin-Schreier (degree q̄ = p-power).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    Kummer { m: i64 },
    ArtinSchreier { q_bar: i64 },
}

/// A class of places of the base function field with identical behavior.
#[derive(Clone, Debug)]
pub struct PlaceClass {
    pub label: String,
    /// Valuation of the defining function u at each place of the class.
    pub valuation: i64,
    pub count: i64,
    pub degree: i64,
}

/// Base field data plus the itemized zero/pole classes of u.
#[derive(Clone, Debug)]
pub struct ValuationProfile {
    pub kind: ProfileKind,
    pub base_genus: i64,
    /// Characteristic, used for the p ∤ m checks.
    pub p: u64,
    pub places: Vec<PlaceClass>,
}

fn gcd64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd64(b, a % b)
    }
}

/// Genus of the Kummer extension T^m = u over a base of genus g:
/// g′ = 1 + m(g−1) + ½·Σ (m − (m, v_P(u)))·deg(P).
///
/// Requires p ∤ m and at least one listed place with (m, v_P(u)) = 1, which
/// certifies irreducibility of T^m − u.
pub fn genus_kummer(profile: &ValuationProfile) -> Result<i64> {
    let ProfileKind::Kummer { m } = profile.kind else {
        return Err(Error::ProfileInvalid("expected a Kummer profile".into()));
    };
    if m < 1 {
        return Err(Error::ProfileInvalid(format!(
            "degree m = {m} must be positive"
        )));
    }
    if m as u64 % profile.p == 0 {
        return Err(Error::ProfileInvalid(format!(
            "p = {} divides the Kummer degree m = {m}",
            profile.p
        )));
    }
    if !profile
        .places
        .iter()
        .any(|pl| pl.count > 0 && gcd64(m, pl.valuation) == 1)
    {
        return Err(Error::IrreducibilityUnverified(
            "no place with (m, v_P(u)) = 1 in the profile".into(),
        ));
    }
    let ram_sum: i64 = profile
        .places
        .iter()
        .map(|pl| pl.count * pl.degree * (m - gcd64(m, pl.valuation)))
        .sum();
    assert!(ram_sum % 2 == 0, "Kummer ramification sum must be even");
    let genus = 1 + m * (profile.base_genus - 1) + ram_sum / 2;
    assert!(genus >= 0, "negative genus indicates a transcribed-profile bug");
    Ok(genus)
}

/// Genus of the generalized Artin-Schreier extension L(T) = u of degree q̄:
/// g′ = q̄·g + ((q̄−1)/2)·(−2 + Σ (m_P + 1)·deg(P)), with m_P = −1 at places
/// where v_P(u − L(z)) ≥ 0 for some z, and m_P = −v_P(u) > 0 prime to p at
/// the totally ramified places.
pub fn genus_artin_schreier(profile: &ValuationProfile) -> Result<i64> {
    let ProfileKind::ArtinSchreier { q_bar } = profile.kind else {
        return Err(Error::ProfileInvalid(
            "expected an Artin-Schreier profile".into(),
        ));
    };
    let mut pw = q_bar;
    while pw > 1 && pw % profile.p as i64 == 0 {
        pw /= profile.p as i64;
    }
    if pw != 1 || q_bar < 2 {
        return Err(Error::ProfileInvalid(format!(
            "q-bar = {q_bar} is not a positive power of p = {}",
            profile.p
        )));
    }
    let mut sum = 0i64;
    let mut has_ramified = false;
    for pl in &profile.places {
        if pl.count == 0 {
            continue;
        }
        let m_p = if pl.valuation >= 0 { -1 } else { -pl.valuation };
        if m_p > 0 {
            if m_p as u64 % profile.p == 0 {
                return Err(Error::ProfileInvalid(format!(
                    "ramification jump m_P = {m_p} divisible by p at {}",
                    pl.label
                )));
            }
            has_ramified = true;
        }
        sum += pl.count * pl.degree * (m_p + 1);
    }
    if !has_ramified {
        return Err(Error::ProfileInvalid(
            "no totally ramified place (every m_P = −1)".into(),
        ));
    }
    let num = (q_bar - 1) * (sum - 2);
    assert!(num % 2 == 0, "Artin-Schreier genus numerator must be even");
    let genus = q_bar * profile.base_genus + num / 2;
    assert!(genus >= 0, "negative genus indicates a transcribed-profile bug");
    Ok(genus)
}

/// Hasse-Weil interval for a curve of the given genus over a field of the
/// given size: (q^n + 1 − ⌈2g√(q^n)⌉, q^n + 1 + ⌊2g√(q^n)⌋). The square
/// root is exact when 4g²q^n is a perfect square; otherwise the lower end
/// rounds the root up and the upper end rounds it down. The raw lower bound
/// may be negative and is reported unclamped.
pub fn hasse_weil_interval(genus: i64, field_size: u64) -> (i64, i64) {
    assert!(genus >= 0);
    let s2 = 4 * (genus as i128) * (genus as i128) * field_size as i128;
    let root = isqrt(s2 as u128) as i128;
    let ceil_root = if root * root == s2 { root } else { root + 1 };
    let base = field_size as i128 + 1;
    ((base - ceil_root) as i64, (base + root) as i64)
}

fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = 1u128 << (v.ilog2() / 2 + 1);
    loop {
        let y = (x + v / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Curve families with transcribed genus formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusFamily {
    /// f monomial, β ≠ 0, h ≠ d.
    Mon,
    HLeEll,
    HGtEll,
    SigmaHLeEll,
    SigmaHGtEll,
    ClubsSigma,
}

impl GenusFamily {
    pub const BINOMIAL: [GenusFamily; 5] = [
        GenusFamily::Mon,
        GenusFamily::HLeEll,
        GenusFamily::HGtEll,
        GenusFamily::SigmaHLeEll,
        GenusFamily::SigmaHGtEll,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            GenusFamily::Mon => "MON",
            GenusFamily::HLeEll => "H_LE_ELL",
            GenusFamily::HGtEll => "H_GT_ELL",
            GenusFamily::SigmaHLeEll => "SIGMA_H_LE_ELL",
            GenusFamily::SigmaHGtEll => "SIGMA_H_GT_ELL",
            GenusFamily::ClubsSigma => "CLUBS_SIGMA",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [
            GenusFamily::Mon,
            GenusFamily::HLeEll,
            GenusFamily::HGtEll,
            GenusFamily::SigmaHLeEll,
            GenusFamily::SigmaHGtEll,
            GenusFamily::ClubsSigma,
        ]
        .into_iter()
        .find(|f| f.label() == s)
    }

    /// Whether the family's curve describes L_g against σ(L_f).
    pub fn swapped(&self) -> bool {
        matches!(
            self,
            GenusFamily::SigmaHLeEll | GenusFamily::SigmaHGtEll | GenusFamily::ClubsSigma
        )
    }
}

/// One line of the excluded-point itemization.
#[derive(Clone, Debug)]
pub struct ZItem {
    pub label: String,
    pub count: i64,
}

/// Genus, Hasse-Weil interval, excluded count, and the implication flag.
#[derive(Clone, Debug)]
pub struct GenusReport {
    pub family: GenusFamily,
    pub genus: i64,
    pub hw_low: i64,
    pub hw_high: i64,
    pub excluded: i64,
    pub excluded_items: Vec<ZItem>,
    /// hw_low > excluded: the curve must have an affine rational point with
    /// nonzero coordinates, so the two linear sets meet.
    pub implies_point: bool,
    pub epsilon_h: Option<i64>,
}

impl fmt::Display for GenusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: genus={} hw=[{}, {}] excluded={} implies_point={}",
            self.family.label(),
            self.genus,
            self.hw_low,
            self.hw_high,
            self.excluded,
            self.implies_point
        )
    }
}

fn report(
    family: GenusFamily,
    genus: i64,
    field_size: u64,
    excluded_items: Vec<ZItem>,
    epsilon_h: Option<i64>,
) -> GenusReport {
    let (hw_low, hw_high) = hasse_weil_interval(genus, field_size);
    let excluded: i64 = excluded_items.iter().map(|z| z.count).sum();
    GenusReport {
        family,
        genus,
        hw_low,
        hw_high,
        excluded,
        excluded_items,
        implies_point: hw_low > excluded,
        epsilon_h,
    }
}

fn zi(label: &str, count: i64) -> ZItem {
    ZItem {
        label: label.to_string(),
        count,
    }
}

fn require(cond: bool, msg: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(msg.into()))
    }
}

/// Closed-form genus report for the binomial-g curve families.
pub fn genus_report(p: &BinomialParams, family: GenusFamily) -> Result<GenusReport> {
    let ctx = &p.ctx;
    let q = ctx.q() as i64;
    let size = ctx.size();
    let k = p.k as u32;
    let idx = p.indices();
    let (d, ell) = (idx.d, idx.ell);
    let a_h = p.f.coeff(p.h);
    let is_binomial = !idx.is_monomial && idx.ell2 == idx.d;
    let qp = |e: u32| -> i64 { q.pow(e) };
    let g3 = |a: u32, b: u32| -> u32 { gcd64(a as i64, b as i64) as u32 };

    match family {
        GenusFamily::Mon => {
            require(idx.is_monomial, "family needs a monomial f")?;
            require(p.h != d, "curve degenerates when h = d")?;
            require(
                p.beta != Elt::ZERO,
                "β = 0 is the exact norm case, no curve needed",
            )?;
            let dd = d.abs_diff(p.h) as u32;
            let num = (qp(k) - 2) * (qp(dd) - 3) + qp(k) - qp(g3(k, dd));
            assert!(num % 2 == 0);
            let genus = num / 2;
            assert!(genus >= 0);
            let z = vec![
                zi("poles of x or y", qp(g3(k, dd)) - 1),
                zi("zeros of y", qp(k) - 1),
                zi("zeros of x", qp(dd) - 1),
            ];
            Ok(report(family, genus, size, z, None))
        }
        GenusFamily::HLeEll => {
            require(!idx.is_monomial, "family needs a non-monomial f")?;
            require(p.h <= ell, "family needs h ≤ ℓ")?;
            require(
                !(is_binomial && p.h == ell && a_h == p.beta),
                "excluded: binomial with h = ℓ and a_h = β",
            )?;
            let (m, _) = m_h_le_ell(&idx, a_h, p.beta, p.h);
            let (m, dh) = (m as u32, (d - p.h) as u32);
            let num = (qp(k) - 2) * (qp(dh - m) - 3) + 2 * qp(k) - qp(g3(k, dh)) - qp(g3(k, m));
            assert!(num % 2 == 0);
            let genus = num / 2;
            assert!(genus >= 0);
            let z = vec![
                zi("poles of x or y", qp(g3(k, dh)) - 1),
                zi("zeros of y", qp(g3(k, m)) - 1),
                zi("zeros of x", qp(dh) - 1),
            ];
            Ok(report(family, genus, size, z, None))
        }
        GenusFamily::HGtEll => {
            require(!idx.is_monomial, "family needs a non-monomial f")?;
            require(p.h > ell, "family needs h > ℓ")?;
            let a_d = p.f.coeff(d);
            require(
                !(is_binomial && p.h == d && a_d == p.beta),
                "excluded: binomial with h = d and a_h = β",
            )?;
            let (m, _) = m_h_gt_ell(&idx, a_d, p.beta, p.h);
            let ml = (m - ell) as u32;
            let hl = (p.h - ell) as u32;
            let mh = m.abs_diff(p.h) as u32;
            let num = (qp(k) - 2) * (qp(ml) - 3) + 2 * qp(k) - qp(g3(k, hl)) - qp(g3(k, mh));
            assert!(num % 2 == 0);
            let genus = num / 2;
            assert!(genus >= 0);
            let z = vec![
                zi("poles of y", qp(g3(k, mh)) - 1),
                zi("zeros of y", qp(g3(k, hl)) - 1),
                zi("zeros of x off the poles of y", qp(ml) - 1),
            ];
            Ok(report(family, genus, size, z, None))
        }
        GenusFamily::SigmaHLeEll => {
            require(!idx.is_monomial, "family needs a non-monomial f")?;
            require(p.h <= ell, "family needs h ≤ ℓ")?;
            let (m, _) = m_h_sigma_le(ctx, &idx, a_h, p.beta, p.h);
            let beta_ah_one = ctx.mul(p.beta, a_h) == Elt::ONE;
            let v0: i64 = if beta_ah_one {
                qp((ell - p.h) as u32) * (qp((idx.ell2 - ell) as u32) - 1)
            } else {
                -(qp((ell - p.h) as u32) - 1)
            };
            let vinf: i64 = if p.beta == Elt::ZERO {
                qp((d - p.h) as u32) - 1
            } else {
                0
            };
            let eps = 2 * qp(k) - 2 - gcd64(qp(k) - 1, vinf) - gcd64(qp(k) - 1, v0);
            let num = (qp(k) - 2) * (qp((d - m) as u32) + qp((d - ell) as u32) - 4) + eps;
            assert!(num % 2 == 0);
            let genus = num / 2;
            assert!(genus >= 0);
            let z = vec![
                zi("poles of y", gcd64(qp(k) - 1, vinf)),
                zi("zeros of y", gcd64(qp(k) - 1, v0)),
                zi("poles of x", qp((d - ell) as u32) - 1),
                zi("zeros of x off the poles of y", qp((d - m) as u32) - 1),
            ];
            Ok(report(family, genus, size, z, Some(eps)))
        }
        GenusFamily::SigmaHGtEll => {
            require(!idx.is_monomial, "family needs a non-monomial f")?;
            require(p.h > ell, "family needs h > ℓ")?;
            let (m, _) = m_h_sigma_gt(ctx, &idx, a_h, p.beta, p.h);
            let beta_ad_one = ctx.mul(p.beta, p.f.coeff(d)) == Elt::ONE;
            let v0: i64 = if p.beta == Elt::ZERO {
                qp((p.h - ell) as u32) - 1
            } else {
                0
            };
            let vinf: i64 = if p.beta != Elt::ZERO && (p.h < d || (p.h == d && !beta_ad_one)) {
                0
            } else if p.h == d && beta_ad_one {
                let l3 = idx.ell3.expect("non-monomial");
                qp((l3 - ell) as u32) * (qp((d - l3) as u32) - 1)
            } else {
                // β = 0 or h > d
                qp((d - ell) as u32) - qp((p.h - ell) as u32)
            };
            let eps = 2 * qp(k) - 2 - gcd64(qp(k) - 1, vinf) - gcd64(qp(k) - 1, v0);
            let num = (qp(k) - 2) * (qp((m - ell) as u32) + qp((d - ell) as u32) - 4) + eps;
            assert!(num % 2 == 0);
            let genus = num / 2;
            assert!(genus >= 0);
            let z = vec![
                zi("poles of y", gcd64(qp(k) - 1, vinf)),
                zi("zeros of y", gcd64(qp(k) - 1, v0)),
                zi("poles of x off the poles of y", qp((d - ell) as u32) - 1),
                zi(
                    "zeros of x off the zeros and poles of y",
                    qp((m - ell) as u32) - 1,
                ),
            ];
            Ok(report(family, genus, size, z, Some(eps)))
        }
        GenusFamily::ClubsSigma => Err(Error::PreconditionViolated(
            "CLUBS_SIGMA takes club parameters; use clubs_sigma_report".into(),
        )),
    }
}

/// Genus report for the product curve of L_{r1} against σ(L_{r2}):
/// genus (q^{r1}−1)(q^{r2}−1), no rational excluded places (the poles of
/// both coordinates are non-rational by the unit-trace choice of γ1, γ2).
pub fn clubs_sigma_report(p: &ClubParams) -> Result<GenusReport> {
    if !p.coprime() {
        return Err(Error::PreconditionViolated(
            "reduce with normalize_club first: (r1, r2) must be coprime".into(),
        ));
    }
    let q = p.ctx.q() as i64;
    let genus = (q.pow(p.r1 as u32) - 1) * (q.pow(p.r2 as u32) - 1);
    Ok(report(
        GenusFamily::ClubsSigma,
        genus,
        p.ctx.size(),
        vec![zi("rational zeros or poles of the coordinates", 0)],
        None,
    ))
}

/// Kummer valuation profile transcribed from the proof of the family's
/// bound; `genus_kummer` on this must reproduce the closed form.
pub fn family_profile(p: &BinomialParams, family: GenusFamily) -> Result<ValuationProfile> {
    let ctx = &p.ctx;
    let q = ctx.q() as i64;
    let k = p.k as u32;
    let idx = p.indices();
    let (d, ell) = (idx.d, idx.ell);
    let a_h = p.f.coeff(p.h);
    let qp = |e: u32| -> i64 { q.pow(e) };
    let m_kummer = qp(k) - 1;
    let place = |label: &str, v: i64, count: i64| PlaceClass {
        label: label.to_string(),
        valuation: v,
        count,
        degree: 1,
    };

    let places = match family {
        GenusFamily::Mon => {
            let dd = d.abs_diff(p.h) as u32;
            vec![
                place("pole of y", -(qp(dd) - 1), 1),
                place("simple zeros of F", 1, qp(dd) - 1),
            ]
        }
        GenusFamily::HLeEll => {
            let (m, _) = m_h_le_ell(&idx, a_h, p.beta, p.h);
            let (m, dh) = (m as u32, (d - p.h) as u32);
            vec![
                place("pole of y", -(qp(dh) - 1), 1),
                place("zero of y", qp(m) - 1, 1),
                place("nonzero roots of F", qp(m), qp(dh - m) - 1),
            ]
        }
        GenusFamily::HGtEll => {
            let a_d = p.f.coeff(d);
            let (m, _) = m_h_gt_ell(&idx, a_d, p.beta, p.h);
            let hl = (p.h - ell) as u32;
            let ml = (m - ell) as u32;
            vec![
                place("pole of y", qp(hl) - qp(ml), 1),
                place("zero of y", -(qp(hl) - 1), 1),
                place("nonzero roots of the numerator", 1, qp(ml) - 1),
            ]
        }
        GenusFamily::SigmaHLeEll => {
            let beta_ah_one = ctx.mul(p.beta, a_h) == Elt::ONE;
            let v0 = if beta_ah_one {
                qp((ell - p.h) as u32) * (qp((idx.ell2 - ell) as u32) - 1)
            } else {
                -(qp((ell - p.h) as u32) - 1)
            };
            let vinf = if p.beta == Elt::ZERO {
                qp((d - p.h) as u32) - 1
            } else {
                0
            };
            let (eta_val, eta_count) = if p.beta == Elt::ZERO {
                (1, 0)
            } else if !beta_ah_one {
                (1, qp((d - p.h) as u32) - 1)
            } else {
                (qp((idx.ell2 - p.h) as u32), qp((d - idx.ell2) as u32) - 1)
            };
            vec![
                place("zero of y", v0, 1),
                place("pole of y", vinf, 1),
                place("roots of the numerator", eta_val, eta_count),
                place(
                    "roots of the shifted f",
                    -qp((ell - p.h) as u32),
                    qp((d - ell) as u32) - 1,
                ),
            ]
        }
        GenusFamily::SigmaHGtEll => {
            let beta_ad_one = ctx.mul(p.beta, p.f.coeff(d)) == Elt::ONE;
            let v0 = if p.beta == Elt::ZERO {
                qp((p.h - ell) as u32) - 1
            } else {
                0
            };
            let vinf = if p.beta != Elt::ZERO && (p.h < d || (p.h == d && !beta_ad_one)) {
                0
            } else if p.h == d && beta_ad_one {
                let l3 = idx.ell3.expect("non-monomial");
                qp((l3 - ell) as u32) * (qp((d - l3) as u32) - 1)
            } else {
                qp((d - ell) as u32) - qp((p.h - ell) as u32)
            };
            let eta_count = if p.beta == Elt::ZERO {
                0
            } else if p.h != d || !beta_ad_one {
                qp((d.max(p.h) - ell) as u32) - 1
            } else {
                qp((idx.ell3.unwrap() - ell) as u32) - 1
            };
            vec![
                place("zero of y", v0, 1),
                place("pole of y", vinf, 1),
                place("roots of the numerator", 1, eta_count),
                place("roots of the shifted f", -1, qp((d - ell) as u32) - 1),
            ]
        }
        GenusFamily::ClubsSigma => {
            return Err(Error::PreconditionViolated(
                "CLUBS_SIGMA has an Artin-Schreier profile; use clubs_sigma_profile".into(),
            ))
        }
    };
    Ok(ValuationProfile {
        kind: ProfileKind::Kummer { m: m_kummer },
        base_genus: 0,
        p: ctx.p(),
        places,
    })
}

/// Artin-Schreier profile of the club product curve: F(v) has q^{r2}
/// simple poles (the roots of v^{q^{r2}} − v + γ2) and no other poles.
pub fn clubs_sigma_profile(p: &ClubParams) -> ValuationProfile {
    let q = p.ctx.q() as i64;
    ValuationProfile {
        kind: ProfileKind::ArtinSchreier {
            q_bar: q.pow(p.r1 as u32),
        },
        base_genus: 0,
        p: p.ctx.p(),
        places: vec![PlaceClass {
            label: "simple poles of F(v)".into(),
            valuation: -1,
            count: q.pow(p.r2 as u32),
            degree: 1,
        }],
    }
}
