//! Arithmetic in the tower F_p ⊂ F_q = F_{p^m} ⊂ F_{q^n}.
//!
//! A [`FieldCtx`] represents F_{q^n} as a single extension F_p[t]/(modulus)
//! of degree m·n, with the deterministic modulus fixed as the monic
//! irreducible whose coefficient vector (a_0,…,a_{mn−1}) packs to the
//! smallest integer Σ a_i p^i. Subfields are never separate objects; they
//! are cut out by Frobenius fixed-point conditions.
//!
//! Elements are packed integers in [0, p^{mn}) (base-p digits = coordinates
//! in the power basis of the modulus root), which is also the serialization
//! format. Multiplication and powering run on discrete-log tables; the
//! inverse table is filled by extended Euclid on polynomials.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Default cap on p^{mn} for field construction.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// A field element, packed as Σ coeffs[i]·p^i.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elt(pub u64);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);
}

/// Immutable context for F_{q^n} = F_{p^{mn}}; shareable across threads.
pub struct FieldCtx {
    p: u64,
    m: usize,
    n: usize,
    size: u64,
    cap: u64,
    modulus: Vec<u64>,
    p_pows: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u64>,
    inv_tab: Vec<u64>,
    frob_q_tab: Vec<u64>,
    fq_elements: Vec<Elt>,
    zeta_pows: Vec<Elt>,
    coord_minv: Vec<Vec<u64>>,
}

/// Build F_{q^n} with q = p^m under the default size cap.
pub fn make_field(p: u64, m: usize, n: usize) -> Result<Arc<FieldCtx>> {
    make_field_with_cap(p, m, n, DEFAULT_FIELD_CAP)
}

/// Build F_{q^n} with an explicit cap on p^{mn}.
pub fn make_field_with_cap(p: u64, m: usize, n: usize, cap: u64) -> Result<Arc<FieldCtx>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert!(m >= 1 && n >= 1, "extension degrees must be positive");
    let deg = m * n;
    let size = checked_pow(p, deg as u32, cap).ok_or(Error::SizeCapExceeded {
        required: (p as u128).pow(deg as u32),
        cap: cap as u128,
    })?;

    let modulus = smallest_irreducible(p, deg);
    let p_pows: Vec<u64> = (0..=deg).map(|i| p.pow(i as u32)).collect();

    // Discrete-log tables from the smallest generator of the multiplicative group.
    let gen = smallest_generator(p, &modulus, size);
    let mut exp = vec![0u64; (size - 1) as usize];
    let mut log = vec![0u64; size as usize];
    let gen_poly = unpack(gen, p);
    let mut cur = vec![1u64];
    for (i, e) in exp.iter_mut().enumerate() {
        let packed = pack(&cur, p);
        *e = packed;
        log[packed as usize] = i as u64;
        cur = poly_mul_mod(&cur, &gen_poly, &modulus, p);
    }

    let mut inv_tab = vec![0u64; size as usize];
    for x in 1..size {
        inv_tab[x as usize] = pack(&poly_ext_inv(&unpack(x, p), &modulus, p), p);
    }

    let mut ctx = FieldCtx {
        p,
        m,
        n,
        size,
        cap,
        modulus,
        p_pows,
        exp,
        log,
        inv_tab,
        frob_q_tab: Vec::new(),
        fq_elements: Vec::new(),
        zeta_pows: Vec::new(),
        coord_minv: Vec::new(),
    };

    // x ↦ x^q as m repeated p-th powerings.
    let mut frob_q_tab = vec![0u64; size as usize];
    for x in 0..size {
        let mut y = Elt(x);
        for _ in 0..m {
            y = ctx.pow_p(y);
        }
        frob_q_tab[x as usize] = y.0;
    }
    ctx.frob_q_tab = frob_q_tab;

    ctx.fq_elements = (0..size)
        .map(Elt)
        .filter(|&x| ctx.frob_q_tab[x.0 as usize] == x.0)
        .collect();
    debug_assert_eq!(ctx.fq_elements.len() as u64, ctx.q());

    // ζ generates F_q^*; {t^i ζ^j} is an F_p-basis adapted to the F_q-structure.
    let zeta = if ctx.q() == 2 {
        Elt::ONE
    } else {
        ctx.pow(Elt(gen), (size - 1) / (ctx.q() - 1))
    };
    ctx.zeta_pows = (0..m).map(|j| ctx.pow(zeta, j as u64)).collect();
    ctx.coord_minv = ctx.build_coord_minv();

    Ok(Arc::new(ctx))
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// q = p^m.
    pub fn q(&self) -> u64 {
        self.p_pows[self.m]
    }
    /// Field size q^n = p^{mn}.
    pub fn size(&self) -> u64 {
        self.size
    }
    pub fn cap(&self) -> u64 {
        self.cap
    }
    /// Modulus coefficients, low degree first, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    /// Contexts agree when they present the same tower (modulus is determined).
    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.p == other.p && self.m == other.m && self.n == other.n
    }

    pub fn zero(&self) -> Elt {
        Elt::ZERO
    }
    pub fn one(&self) -> Elt {
        Elt::ONE
    }
    /// −1, the field's actual additive inverse of 1 (equals 1 in char 2).
    pub fn minus_one(&self) -> Elt {
        self.neg(Elt::ONE)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.size).map(Elt)
    }
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elt> {
        (1..self.size).map(Elt)
    }
    /// The q elements of F_q inside F_{q^n}.
    pub fn fq_elements(&self) -> &[Elt] {
        &self.fq_elements
    }

    /// Base-p digits of x (length mn, low digit first).
    pub fn coeffs(&self, x: Elt) -> Vec<u64> {
        let mut v = x.0;
        (0..self.m * self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Elt {
        assert!(coeffs.len() <= self.m * self.n);
        let mut v = 0;
        for (i, &c) in coeffs.iter().enumerate() {
            assert!(c < self.p);
            v += c * self.p_pows[i];
        }
        Elt(v)
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        debug_assert!(a.0 < self.size && b.0 < self.size);
        if self.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += (x % self.p + y % self.p) % self.p * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elt(out)
    }

    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            let d = x % self.p;
            if d > 0 {
                out += (self.p - d) * place;
            }
            x /= self.p;
            place *= self.p;
        }
        Elt(out)
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        Elt(self.exp[((la + lb) % (self.size - 1)) as usize])
    }

    /// Multiplicative inverse; None for zero. Table filled by extended Euclid.
    pub fn inv(&self, a: Elt) -> Option<Elt> {
        if a.0 == 0 {
            None
        } else {
            Some(Elt(self.inv_tab[a.0 as usize]))
        }
    }

    /// a/b; None when b = 0.
    pub fn div(&self, a: Elt, b: Elt) -> Option<Elt> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if a.0 == 0 {
            return if e == 0 { Elt::ONE } else { Elt::ZERO };
        }
        let ord = self.size - 1;
        let la = self.log[a.0 as usize];
        Elt(self.exp[((la * (e % ord)) % ord) as usize])
    }

    /// p-th power map, the characteristic-p Frobenius building block.
    fn pow_p(&self, a: Elt) -> Elt {
        self.pow(a, self.p)
    }

    /// x ↦ x^{q^r}, as m·r repeated p-th powerings (tabulated per q-step).
    pub fn frobenius(&self, x: Elt, r: usize) -> Elt {
        debug_assert!(x.0 < self.size);
        let r = r % self.n;
        let mut y = x;
        for _ in 0..r {
            y = Elt(self.frob_q_tab[y.0 as usize]);
        }
        y
    }

    /// One q-Frobenius step via the precomputed table.
    #[inline]
    pub fn frob_q(&self, x: Elt) -> Elt {
        Elt(self.frob_q_tab[x.0 as usize])
    }

    fn check_divisor(&self, r: usize) -> Result<()> {
        if r == 0 || self.n % r != 0 {
            Err(Error::NotADivisor { r, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Tr_{q^n/q^r}(x) = Σ_{i=0}^{n/r−1} x^{q^{ir}}.
    pub fn rel_trace(&self, x: Elt, r: usize) -> Result<Elt> {
        self.check_divisor(r)?;
        let mut acc = Elt::ZERO;
        let mut y = x;
        for i in 0..self.n / r {
            if i > 0 {
                for _ in 0..r {
                    y = self.frob_q(y);
                }
            }
            acc = self.add(acc, y);
        }
        debug_assert_eq!(self.frobenius(acc, r), acc);
        Ok(acc)
    }

    /// N_{q^n/q^r}(x) = x^{(q^n−1)/(q^r−1)}.
    pub fn rel_norm(&self, x: Elt, r: usize) -> Result<Elt> {
        self.check_divisor(r)?;
        let qr = self.p_pows[self.m * r];
        Ok(self.pow(x, (self.size - 1) / (qr - 1)))
    }

    /// Membership in the intermediate subfield F_{q^r}.
    pub fn is_in_subfield(&self, x: Elt, r: usize) -> bool {
        self.frobenius(x, r) == x
    }

    /// Elements of F_{q^r} (r | n), in packed order.
    pub fn subfield_elements(&self, r: usize) -> Result<Vec<Elt>> {
        self.check_divisor(r)?;
        Ok(self
            .elements()
            .filter(|&x| self.frobenius(x, r) == x)
            .collect())
    }

    /// First element (packed order) with Tr_{q^n/q^r} equal to 1.
    pub fn first_with_trace_one(&self, r: usize) -> Result<Elt> {
        self.check_divisor(r)?;
        for x in self.elements() {
            if self.rel_trace(x, r)? == Elt::ONE {
                return Ok(x);
            }
        }
        unreachable!("relative trace is surjective");
    }

    /// Solve w^{q^r} − w = gamma; None when Tr_{q^n/q^r}(gamma) ≠ 0.
    ///
    /// The F_p-linear system is solved in the power basis; the returned w is
    /// the particular solution with free variables set to zero, so repeated
    /// calls are deterministic. The full solution set is w + F_{q^r}.
    pub fn hilbert90_solve(&self, gamma: Elt, r: usize) -> Result<Option<Elt>> {
        self.check_divisor(r)?;
        if self.rel_trace(gamma, r)? != Elt::ZERO {
            return Ok(None);
        }
        let deg = self.m * self.n;
        // columns: coeffs(e_i^{q^r} − e_i)
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(deg);
        for i in 0..deg {
            let e = Elt(self.p_pows[i]);
            let img = self.sub(self.frobenius(e, r), e);
            cols.push(self.coeffs(img));
        }
        let rhs = self.coeffs(gamma);
        let sol = solve_fp_system(&cols, &rhs, deg, self.p)
            .expect("trace-zero gamma is always in the image of w ↦ w^{q^r} − w");
        Ok(Some(self.from_coeffs(&sol)))
    }

    // ------------------------------------------------------------------
    // F_q-structure: coordinates of F_{q^n} in the basis {t^i}_{i<n} over F_q
    // ------------------------------------------------------------------

    fn build_coord_minv(&self) -> Vec<Vec<u64>> {
        let deg = self.m * self.n;
        let t = if deg == 1 { Elt::ONE } else { Elt(self.p) };
        let mut mat: Vec<Vec<u64>> = Vec::with_capacity(deg);
        for i in 0..self.n {
            let ti = self.pow(t, i as u64);
            for j in 0..self.m {
                mat.push(self.coeffs(self.mul(ti, self.zeta_pows[j])));
            }
        }
        invert_fp_matrix(&mat, deg, self.p).expect("adapted basis matrix is invertible")
    }

    /// Coordinates of v in the F_q-basis {1, t, …, t^{n−1}}; entries lie in F_q.
    pub fn fq_coords(&self, v: Elt) -> Vec<Elt> {
        let deg = self.m * self.n;
        let digits = self.coeffs(v);
        let mu: Vec<u64> = (0..deg)
            .map(|row| {
                let mut acc = 0u64;
                for (k, &d) in digits.iter().enumerate() {
                    acc = (acc + self.coord_minv[row][k] * d) % self.p;
                }
                acc
            })
            .collect();
        (0..self.n)
            .map(|i| {
                let mut lam = Elt::ZERO;
                for j in 0..self.m {
                    lam = self.add(lam, self.mul(Elt(mu[i * self.m + j]), self.zeta_pows[j]));
                }
                lam
            })
            .collect()
    }
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FieldCtx(p={}, m={}, n={}, modulus={:?})",
            self.p, self.m, self.n, self.modulus
        )
    }
}

// ----------------------------------------------------------------------
// integer and F_p[x] helpers
// ----------------------------------------------------------------------

pub(crate) fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u64, e: u32, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

pub(crate) fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            out.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}


fn unpack(mut v: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while v > 0 {
        out.push(v % p);
        v /= p;
    }
    if out.is_empty() {
        out.push(0);
    }
    out
}

fn pack(poly: &[u64], p: u64) -> u64 {
    let mut acc = 0;
    for &c in poly.iter().rev() {
        acc = acc * p + c;
    }
    acc
}

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead_inv = fp_inv(bb[db], p);
    while !poly_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let f = r[dr] * lead_inv % p;
        let shift = dr - db;
        for i in 0..=db {
            let sub = f * bb[i] % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), modulus, p)
}

fn poly_pow_mod(a: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a, modulus, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, modulus, p);
        }
        base = poly_mul_mod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on integers
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i64) as u64
}

/// Inverse of a mod modulus via extended Euclid in F_p[x].
fn poly_ext_inv(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = modulus.to_vec();
    let mut r1 = poly_rem(a, modulus, p);
    let mut s0: Vec<u64> = vec![0];
    let mut s1: Vec<u64> = vec![1];
    while !poly_is_zero(&r1) {
        // division with quotient
        let (quot, rem) = poly_divmod(&r0, &r1, p);
        let qs1 = poly_mul(&quot, &s1, p);
        let new_s = poly_sub(&s0, &qs1, p);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = new_s;
    }
    // r0 = gcd (a unit for invertible a); normalize
    debug_assert_eq!(r0.len(), 1);
    let c = fp_inv(r0[0], p);
    let mut out = poly_rem(&s0, modulus, p);
    for v in out.iter_mut() {
        *v = *v * c % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out = vec![0u64; len];
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    if poly_is_zero(&r) || r.len() - 1 < db {
        return (vec![0], r);
    }
    let mut quot = vec![0u64; r.len().saturating_sub(db).max(1)];
    let lead_inv = fp_inv(bb[db], p);
    while !poly_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let f = r[dr] * lead_inv % p;
        let shift = dr - db;
        quot[shift] = f;
        for i in 0..=db {
            let sub = f * bb[i] % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, r)
}

/// Irreducibility of monic f of degree D over F_p: x^{p^D} ≡ x (mod f) and
/// gcd(x^{p^{D/t}} − x, f) = 1 for every prime t | D.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // iterate Frobenius: frob_j = x^{p^j} mod f
    let mut frob = x.clone();
    let mut frob_at: Vec<Vec<u64>> = vec![frob.clone()];
    for _ in 0..deg {
        frob = poly_pow_mod(&frob, p, f, p);
        frob_at.push(frob.clone());
    }
    if frob_at[deg] != poly_rem(&x, f, p) {
        return false;
    }
    for t in prime_factors(deg as u64) {
        let j = deg / t as usize;
        let diff = poly_sub(&frob_at[j], &x, p);
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Monic irreducible of given degree whose packed coefficient value is least.
fn smallest_irreducible(p: u64, deg: usize) -> Vec<u64> {
    let bound = p.pow(deg as u32);
    for c in 0..bound {
        let mut f = unpack(c, p);
        f.resize(deg, 0);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

fn smallest_generator(p: u64, modulus: &[u64], size: u64) -> u64 {
    if size == 2 {
        return 1;
    }
    let factors = prime_factors(size - 1);
    'cand: for c in 2..size {
        let cp = unpack(c, p);
        for &t in &factors {
            let e = (size - 1) / t;
            if poly_pow_mod(&cp, e, modulus, p) == vec![1] {
                continue 'cand;
            }
        }
        return c;
    }
    unreachable!("multiplicative group of a finite field is cyclic");
}

/// Solve Σ x_i·col_i = rhs over F_p; particular solution with zero free vars.
fn solve_fp_system(cols: &[Vec<u64>], rhs: &[u64], dim: usize, p: u64) -> Option<Vec<u64>> {
    let ncols = cols.len();
    // augmented row-major matrix
    let mut a = vec![vec![0u64; ncols + 1]; dim];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..dim {
            a[i][j] = col[i];
        }
    }
    for i in 0..dim {
        a[i][ncols] = rhs[i];
    }
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..dim).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let pinv = fp_inv(a[row][col], p);
        for v in a[row].iter_mut() {
            *v = *v * pinv % p;
        }
        for r in 0..dim {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c2 in 0..=ncols {
                    let sub = f * a[row][c2] % p;
                    a[r][c2] = (a[r][c2] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == dim {
            break;
        }
    }
    // consistency
    for r in row..dim {
        if a[r][ncols] != 0 {
            return None;
        }
    }
    let mut sol = vec![0u64; ncols];
    for (r, &c) in pivot_col_of_row.iter().enumerate() {
        sol[c] = a[r][ncols];
    }
    Some(sol)
}

/// Inverse of a square matrix given as a list of columns over F_p.
fn invert_fp_matrix(cols: &[Vec<u64>], dim: usize, p: u64) -> Option<Vec<Vec<u64>>> {
    // Gauss-Jordan on [A | I]; A is column-major input.
    let mut a = vec![vec![0u64; 2 * dim]; dim];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..dim {
            a[i][j] = col[i];
        }
    }
    for i in 0..dim {
        a[i][dim + i] = 1;
    }
    for col in 0..dim {
        let pr = (col..dim).find(|&r| a[r][col] != 0)?;
        a.swap(col, pr);
        let pinv = fp_inv(a[col][col], p);
        for v in a[col].iter_mut() {
            *v = *v * pinv % p;
        }
        for r in 0..dim {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for c2 in 0..2 * dim {
                    let sub = f * a[col][c2] % p;
                    a[r][c2] = (a[r][c2] + p - sub) % p;
                }
            }
        }
    }
    Some((0..dim)
        .map(|i| a[i][dim..].to_vec())
        .collect())
}
