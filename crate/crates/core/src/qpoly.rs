//! Reduced q-polynomials Σ a_i x^{q^i} modulo x^{q^n} − x.
//!
//! A [`QPoly`] keeps exactly n coefficients (the reduced representative) and
//! a handle to its field context. Everything downstream — linear sets,
//! criteria, presemifield products — is phrased in terms of these maps.

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx};
use std::sync::Arc;

/// A reduced q-polynomial over F_{q^n}.
#[derive(Clone)]
pub struct QPoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<Elt>,
}

/// Shift shapes from the rewriting step before the curve analysis:
/// `Bar` divides exponents by q^h (requires ℓ ≥ h), `Tilde` by q^ℓ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftMode {
    Bar,
    Tilde,
}

/// Support indices of a nonzero q-polynomial.
///
/// `ell2` is the second-lowest support index, by convention equal to `d`
/// for monomials; `ell3` is the second-highest and absent for monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QPolyIndices {
    pub d: usize,
    pub ell: usize,
    pub ell2: usize,
    pub ell3: Option<usize>,
    pub is_monomial: bool,
}

impl PartialEq for QPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.coeffs == other.coeffs
    }
}
impl Eq for QPoly {}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QPoly{:?}", self.coeff_ints())
    }
}

impl QPoly {
    pub fn new(ctx: Arc<FieldCtx>, mut coeffs: Vec<Elt>) -> Self {
        assert!(coeffs.len() <= ctx.n(), "more than n coefficients");
        coeffs.resize(ctx.n(), Elt::ZERO);
        debug_assert!(coeffs.iter().all(|c| c.0 < ctx.size()));
        QPoly { ctx, coeffs }
    }

    pub fn from_ints(ctx: Arc<FieldCtx>, ints: &[u64]) -> Self {
        Self::new(ctx, ints.iter().map(|&v| Elt(v)).collect())
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        Self::new(ctx, vec![])
    }

    /// The identity map x.
    pub fn identity(ctx: Arc<FieldCtx>) -> Self {
        Self::new(ctx, vec![Elt::ONE])
    }

    /// a·x^{q^i}.
    pub fn monomial(ctx: Arc<FieldCtx>, a: Elt, i: usize) -> Self {
        let n = ctx.n();
        assert!(i < n);
        let mut coeffs = vec![Elt::ZERO; n];
        coeffs[i] = a;
        QPoly { ctx, coeffs }
    }

    /// α·x^{q^k} + β·x.
    pub fn binomial_g(ctx: Arc<FieldCtx>, alpha: Elt, k: usize, beta: Elt) -> Self {
        let n = ctx.n();
        assert!(k >= 1 && k < n, "k must lie in [1, n)");
        let mut coeffs = vec![Elt::ZERO; n];
        coeffs[0] = beta;
        coeffs[k] = ctx.add(coeffs[k], alpha);
        QPoly { ctx, coeffs }
    }

    /// Tr_{q^n/q^r} as a q-polynomial (coefficient 1 at every multiple of r).
    pub fn trace_form(ctx: Arc<FieldCtx>, r: usize) -> Result<Self> {
        if r == 0 || ctx.n() % r != 0 {
            return Err(Error::NotADivisor { r, n: ctx.n() });
        }
        let n = ctx.n();
        let mut coeffs = vec![Elt::ZERO; n];
        for i in 0..n / r {
            coeffs[i * r] = Elt::ONE;
        }
        Ok(QPoly { ctx, coeffs })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elt {
        self.coeffs.get(i).copied().unwrap_or(Elt::ZERO)
    }

    pub fn coeff_ints(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == Elt::ZERO)
    }

    /// α·f.
    pub fn scaled(&self, alpha: Elt) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| self.ctx.mul(alpha, c)).collect();
        QPoly {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &QPoly) -> Result<Self> {
        if !self.ctx.same_field(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.ctx.add(a, b))
            .collect();
        Ok(QPoly {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// Σ a_i x^{q^i} by walking the Frobenius ladder once.
    pub fn evaluate(&self, x: Elt) -> Elt {
        debug_assert!(x.0 < self.ctx.size(), "element from a different context");
        let Some(d) = self.coeffs.iter().rposition(|&a| a != Elt::ZERO) else {
            return Elt::ZERO;
        };
        let mut acc = Elt::ZERO;
        let mut y = x;
        for i in 0..=d {
            if i > 0 {
                y = self.ctx.frob_q(y);
            }
            let a = self.coeffs[i];
            if a != Elt::ZERO {
                acc = self.ctx.add(acc, self.ctx.mul(a, y));
            }
        }
        acc
    }

    /// Adjoint under the trace bilinear form: coefficient a_i moves to
    /// exponent (n−i) mod n as a_i^{q^{n−i}}.
    pub fn adjoint(&self) -> Self {
        let n = self.ctx.n();
        let mut coeffs = vec![Elt::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != Elt::ZERO {
                let j = (n - i) % n;
                coeffs[j] = self.ctx.frobenius(a, j);
            }
        }
        QPoly {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Reduced representative of f∘g.
    pub fn compose(&self, g: &QPoly) -> Result<Self> {
        if !self.ctx.same_field(&g.ctx) {
            return Err(Error::ContextMismatch);
        }
        let n = self.ctx.n();
        let mut coeffs = vec![Elt::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Elt::ZERO {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                if b == Elt::ZERO {
                    continue;
                }
                let k = (i + j) % n;
                let term = self.ctx.mul(a, self.ctx.frobenius(b, i));
                coeffs[k] = self.ctx.add(coeffs[k], term);
            }
        }
        Ok(QPoly {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// dim_{F_q} ker f = n − rank of the matrix of f in the basis {t^i} over F_q.
    pub fn kernel_dim(&self) -> usize {
        let ctx = &self.ctx;
        let n = ctx.n();
        let t = if ctx.m() * n == 1 { Elt::ONE } else { Elt(ctx.p()) };
        let cols: Vec<Vec<Elt>> = (0..n)
            .map(|j| ctx.fq_coords(self.evaluate(ctx.pow(t, j as u64))))
            .collect();
        let mut mat: Vec<Vec<Elt>> = (0..n)
            .map(|i| (0..n).map(|j| cols[j][i]).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(pr) = (rank..n).find(|&r| mat[r][col] != Elt::ZERO) else {
                continue;
            };
            mat.swap(rank, pr);
            let pinv = ctx.inv(mat[rank][col]).unwrap();
            for c in col..n {
                mat[rank][c] = ctx.mul(mat[rank][c], pinv);
            }
            for r in 0..n {
                if r != rank && mat[r][col] != Elt::ZERO {
                    let f = mat[r][col];
                    for c in col..n {
                        let sub = ctx.mul(f, mat[rank][c]);
                        mat[r][c] = ctx.sub(mat[r][c], sub);
                    }
                }
            }
            rank += 1;
        }
        n - rank
    }

    /// Support indices (d, ℓ, ℓ2, ℓ3); errors on the zero polynomial.
    pub fn indices(&self) -> Result<QPolyIndices> {
        let mut d: Option<usize> = None;
        let mut ell: Option<usize> = None;
        let mut ell2: Option<usize> = None;
        let mut ell3: Option<usize> = None;
        let mut count = 0usize;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Elt::ZERO {
                continue;
            }
            count += 1;
            if ell.is_none() {
                ell = Some(i);
            } else if ell2.is_none() {
                ell2 = Some(i);
            }
            if let Some(prev) = d {
                ell3 = Some(prev);
            }
            d = Some(i);
        }
        let Some(d) = d else {
            return Err(Error::ZeroPolynomial);
        };
        Ok(QPolyIndices {
            d,
            ell: ell.unwrap(),
            ell2: ell2.unwrap_or(d),
            ell3,
            is_monomial: count == 1,
        })
    }

    /// Divide exponents by q^h (`Bar`, needs ℓ ≥ h) or by q^ℓ (`Tilde`).
    pub fn shift_form(&self, h: usize, mode: ShiftMode) -> Result<Self> {
        if mode == ShiftMode::Bar && h == 0 {
            return Ok(self.clone());
        }
        let idx = self.indices().map_err(|_| {
            Error::PreconditionViolated("cannot shift the zero polynomial".into())
        })?;
        let shift = match mode {
            ShiftMode::Bar => {
                if idx.ell < h {
                    return Err(Error::PreconditionViolated(format!(
                        "bar shift needs ell >= h, got ell={} h={}",
                        idx.ell, h
                    ).into()));
                }
                h
            }
            ShiftMode::Tilde => idx.ell,
        };
        let n = self.ctx.n();
        let mut coeffs = vec![Elt::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != Elt::ZERO {
                coeffs[i - shift] = a;
            }
        }
        Ok(QPoly {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// Rewrite the shape (y^{q^h}, f(y)) through the adjoint: returns
    /// (f_adj, h′) with h′ = n−h (or 0 when h = 0) such that the linear set
    /// in shape (y^{q^{h′}}, f_adj(y)) is the same point set. Coefficient a_i
    /// moves to exponent (n−i) mod n as a_i^{q^{(n+h−i) mod n}}.
    pub fn adjoint_form(&self, h: usize) -> Result<(Self, usize)> {
        let n = self.ctx.n();
        assert!(h < n, "h must lie in [0, n)");
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = vec![Elt::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != Elt::ZERO {
                let j = (n - i) % n;
                let fr = (n + h - i) % n;
                coeffs[j] = self.ctx.frobenius(a, fr);
            }
        }
        let h2 = if h > 0 { n - h } else { 0 };
        Ok((
            QPoly {
                ctx: self.ctx.clone(),
                coeffs,
            },
            h2,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    #[test]
    fn evaluate_identity() {
        let ctx = make_field(2, 1, 4).unwrap();
        let f = QPoly::identity(ctx.clone());
        for x in ctx.elements() {
            assert_eq!(f.evaluate(x), x);
        }
    }

    #[test]
    fn evaluate_trace_form_matches_rel_trace() {
        let ctx = make_field(2, 1, 4).unwrap();
        let f = QPoly::trace_form(ctx.clone(), 1).unwrap();
        for x in ctx.elements() {
            assert_eq!(f.evaluate(x), ctx.rel_trace(x, 1).unwrap());
        }
    }

    #[test]
    fn evaluate_is_fq_linear() {
        for (p, m, n) in [(2u64, 1usize, 8usize), (2, 2, 3), (3, 1, 4)] {
            let ctx = make_field(p, m, n).unwrap();
            let f = QPoly::from_ints(ctx.clone(), &(1..=n as u64).collect::<Vec<_>>());
            for &lam in ctx.fq_elements() {
                for x in ctx.elements() {
                    for y in [Elt(1), Elt(ctx.size() / 2), Elt(ctx.size() - 1)] {
                        let lhs = f.evaluate(ctx.add(ctx.mul(lam, x), y));
                        let rhs = ctx.add(ctx.mul(lam, f.evaluate(x)), f.evaluate(y));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_fixes_degree_zero_term() {
        let ctx = make_field(2, 1, 5).unwrap();
        let f = QPoly::monomial(ctx.clone(), Elt(7), 0);
        assert_eq!(f.adjoint(), f);
    }

    #[test]
    fn adjoint_monomial_formula() {
        let ctx = make_field(2, 1, 5).unwrap();
        let a = Elt(13);
        for i in 1..5 {
            let f = QPoly::monomial(ctx.clone(), a, i);
            let fh = f.adjoint();
            let expect = QPoly::monomial(ctx.clone(), ctx.frobenius(a, 5 - i), 5 - i);
            assert_eq!(fh, expect);
        }
    }

    #[test]
    fn adjoint_duality_exhaustive() {
        // Tr(x f(y)) = Tr(y f̂(x)) for all x, y
        for (p, m, n) in [(2u64, 1usize, 4usize), (3, 1, 2), (2, 2, 2)] {
            let ctx = make_field(p, m, n).unwrap();
            let f = QPoly::from_ints(ctx.clone(), &(2..2 + n as u64).collect::<Vec<_>>());
            let fh = f.adjoint();
            for x in ctx.elements() {
                for y in ctx.elements() {
                    let lhs = ctx.rel_trace(ctx.mul(x, f.evaluate(y)), 1).unwrap();
                    let rhs = ctx.rel_trace(ctx.mul(y, fh.evaluate(x)), 1).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn compose_with_identity() {
        let ctx = make_field(2, 1, 3).unwrap();
        let f = QPoly::from_ints(ctx.clone(), &[3, 0, 5]);
        let id = QPoly::identity(ctx.clone());
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);
    }

    #[test]
    fn compose_monomials_shift() {
        let ctx = make_field(2, 1, 3).unwrap();
        let xq = QPoly::monomial(ctx.clone(), Elt::ONE, 1);
        let xq2 = xq.compose(&xq).unwrap();
        assert_eq!(xq2, QPoly::monomial(ctx.clone(), Elt::ONE, 2));
    }

    #[test]
    fn compose_associative_pointwise() {
        let ctx = make_field(2, 1, 4).unwrap();
        let f = QPoly::from_ints(ctx.clone(), &[1, 3, 0, 7]);
        let g = QPoly::from_ints(ctx.clone(), &[5, 0, 2, 0]);
        let h = QPoly::from_ints(ctx.clone(), &[0, 11, 0, 1]);
        let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        for x in ctx.elements() {
            assert_eq!(lhs.evaluate(x), rhs.evaluate(x));
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_dims() {
        let ctx = make_field(2, 1, 3).unwrap();
        assert_eq!(QPoly::identity(ctx.clone()).kernel_dim(), 0);
        assert_eq!(QPoly::zero(ctx.clone()).kernel_dim(), 3);
        let tr = QPoly::trace_form(ctx.clone(), 1).unwrap();
        assert_eq!(tr.kernel_dim(), 2);
        // oracle: kernel of Tr has 4 elements = q^2
        let roots = ctx.elements().filter(|&x| tr.evaluate(x) == Elt::ZERO).count();
        assert_eq!(roots, 4);
    }

    #[test]
    fn kernel_dim_matches_enumeration() {
        for (p, m, n) in [(2u64, 1usize, 6usize), (3, 1, 4), (2, 2, 3), (2, 3, 2)] {
            let ctx = make_field(p, m, n).unwrap();
            let q = ctx.q();
            let mut polys = vec![
                QPoly::trace_form(ctx.clone(), 1).unwrap(),
                QPoly::from_ints(ctx.clone(), &[1, 1]),
                QPoly::monomial(ctx.clone(), Elt(1), n - 1),
            ];
            if n >= 3 {
                polys.push(QPoly::from_ints(ctx.clone(), &[0, 2, 3]));
            }
            for f in polys {
                let roots = ctx.elements().filter(|&x| f.evaluate(x) == Elt::ZERO).count() as u64;
                let dim = f.kernel_dim() as u32;
                assert_eq!(q.pow(dim), roots, "f={f:?} over p={p},m={m},n={n}");
            }
        }
    }

    #[test]
    fn indices_examples() {
        let ctx = make_field(2, 1, 5).unwrap();
        let f = QPoly::monomial(ctx.clone(), Elt(3), 2);
        let idx = f.indices().unwrap();
        assert_eq!((idx.d, idx.ell, idx.ell2, idx.ell3, idx.is_monomial), (2, 2, 2, None, true));

        let f = QPoly::from_ints(ctx.clone(), &[0, 1, 0, 1, 0]); // x^{q^3} + x^q
        let idx = f.indices().unwrap();
        assert_eq!((idx.d, idx.ell, idx.ell2, idx.ell3), (3, 1, 3, Some(1)));

        let f = QPoly::from_ints(ctx.clone(), &[1, 0, 1, 0, 1]); // x^{q^4} + x^{q^2} + x
        let idx = f.indices().unwrap();
        assert_eq!((idx.d, idx.ell, idx.ell2, idx.ell3), (4, 0, 2, Some(2)));

        assert_eq!(QPoly::zero(ctx).indices(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn shift_form_examples() {
        let ctx = make_field(2, 1, 4).unwrap();
        let f = QPoly::from_ints(ctx.clone(), &[0, 3, 5, 0]); // a_2 x^{q^2} + a_1 x^q
        assert_eq!(f.shift_form(0, ShiftMode::Bar).unwrap(), f);
        let bar = f.shift_form(1, ShiftMode::Bar).unwrap();
        assert_eq!(bar, QPoly::from_ints(ctx.clone(), &[3, 5, 0, 0]));
        assert!(f.shift_form(2, ShiftMode::Bar).is_err()); // ell = 1 < 2

        let g = QPoly::from_ints(ctx.clone(), &[0, 0, 7, 9]); // ell = 2
        let tilde = g.shift_form(0, ShiftMode::Tilde).unwrap();
        assert_eq!(tilde, QPoly::from_ints(ctx.clone(), &[7, 9, 0, 0]));
    }

    #[test]
    fn adjoint_form_monomial_h0() {
        let ctx = make_field(2, 1, 4).unwrap();
        let a = Elt(9);
        let f = QPoly::monomial(ctx.clone(), a, 3);
        let (ff, h2) = f.adjoint_form(0).unwrap();
        assert_eq!(h2, 0);
        assert_eq!(ff, QPoly::monomial(ctx.clone(), ctx.frobenius(a, 1), 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adjoint_involution(raw in proptest::collection::vec(0u64..32, 5)) {
            let ctx = make_field(2, 1, 5).unwrap();
            let f = QPoly::from_ints(ctx, &raw);
            prop_assert_eq!(f.adjoint().adjoint(), f);
        }

        #[test]
        fn compose_evaluation_identity(
            fa in proptest::collection::vec(0u64..8, 3),
            ga in proptest::collection::vec(0u64..8, 3),
        ) {
            let ctx = make_field(2, 1, 3).unwrap();
            let f = QPoly::from_ints(ctx.clone(), &fa);
            let g = QPoly::from_ints(ctx.clone(), &ga);
            let fg = f.compose(&g).unwrap();
            for x in ctx.elements() {
                prop_assert_eq!(fg.evaluate(x), f.evaluate(g.evaluate(x)));
            }
        }
    }

    #[test]
    fn compose_context_mismatch() {
        let c1 = make_field(2, 1, 3).unwrap();
        let c2 = make_field(2, 1, 4).unwrap();
        let f = QPoly::identity(c1);
        let g = QPoly::identity(c2);
        assert_eq!(f.compose(&g).unwrap_err(), Error::ContextMismatch);
    }
}
