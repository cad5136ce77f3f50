//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! `Poly` is the workhorse of the whole crate: every displayed identity is
//! reconstructed by exact arithmetic on these values. Terms live in a
//! `BTreeMap` keyed by [`Monomial`] under the graded-lex order, so equal
//! polynomials always have identical internal layout and serialization.
//! No stored coefficient is ever zero.

use crate::monomial::Monomial;
use crate::vars::VarId;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Errors raised by polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable {0} has no value in the assignment")]
    MissingVariable(VarId),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("degree in {var} is {degree}, need at least {needed}")]
    DegreeTooLow {
        var: VarId,
        degree: u32,
        needed: u32,
    },
}

/// Sparse exact multivariate polynomial over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Poly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        Poly { terms }
    }

    pub fn var(v: VarId) -> Poly {
        Poly::term(BigInt::one(), Monomial::var(v))
    }

    pub fn var_pow(v: VarId, e: u16) -> Poly {
        Poly::term(BigInt::one(), Monomial::var_pow(v, e))
    }

    pub fn term(coeff: BigInt, mono: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::ONE))
    }

    /// The constant value when `is_constant`, else `None`.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            self.terms.get(&Monomial::ONE).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (descending graded-lex).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    /// Leading term under the graded-lex order; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exp(v) as u32).max().unwrap_or(0)
    }

    /// Smallest exponent of `v` across all terms (0 for the zero polynomial).
    pub fn min_degree_in(&self, v: VarId) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exp(v) as u32)
            .min()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Variables occurring with nonzero exponent, in table order.
    pub fn vars(&self) -> Vec<VarId> {
        VarId::all().filter(|&v| self.contains_var(v)).collect()
    }

    fn insert_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul_term(&self, coeff: &BigInt, mono: &Monomial) -> Poly {
        if coeff.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        match k {
            0 => Poly::one(),
            1 => self.clone(),
            _ => {
                let mut base = self.clone();
                let mut exp = k;
                let mut acc = Poly::one();
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc.mul(&base);
                    }
                    exp >>= 1;
                    if exp > 0 {
                        base = base.mul(&base);
                    }
                }
                acc
            }
        }
    }

    /// Replace every occurrence of `v` by `q`, fully expanded.
    pub fn substitute(&self, v: VarId, q: &Poly) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        // powers of q computed once per occurring exponent
        let mut powers: BTreeMap<u16, Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                out.insert_term(*m, c.clone());
                continue;
            }
            let qe = powers
                .entry(e)
                .or_insert_with(|| q.pow(e as u32))
                .clone();
            let rest = Poly::term(c.clone(), m.without(v));
            out = out.add(&rest.mul(&qe));
        }
        out
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, subs: &[(VarId, &Poly)]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut residue = Monomial::ONE;
            for (v, e) in m.vars() {
                if let Some((_, q)) = subs.iter().find(|(sv, _)| *sv == v) {
                    term = term.mul(&q.pow(e as u32));
                } else {
                    residue = residue.mul(&Monomial::var_pow(v, e));
                }
            }
            out = out.add(&term.mul_term(&BigInt::one(), &residue));
        }
        out
    }

    /// Exact big-integer value at a full assignment of the occurring variables.
    pub fn evaluate(&self, assignment: &BTreeMap<VarId, BigInt>) -> Result<BigInt, PolyError> {
        for v in self.vars() {
            if !assignment.contains_key(&v) {
                return Err(PolyError::MissingVariable(v));
            }
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in m.vars() {
                val *= assignment[&v].pow(e as u32);
            }
            total += val;
        }
        Ok(total)
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut dm = m.without(v);
            if e > 1 {
                dm = dm.mul(&Monomial::var_pow(v, e - 1));
            }
            out.insert_term(dm, c * BigInt::from(e));
        }
        out
    }

    /// Coefficients of `v^0, v^1, ...` as polynomials in the remaining
    /// variables. Always returns `degree_in(v) + 1` entries; reassembling
    /// `sum coeffs[k] * v^k` gives back the input.
    pub fn univariate_coeffs(&self, v: VarId) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].insert_term(m.without(v), c.clone());
        }
        out
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coeff_in(&self, v: VarId, k: u16) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                out.insert_term(m.without(v), c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when the division is not exact.
    pub fn divide_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            let mut terms = BTreeMap::new();
            for (m, a) in &self.terms {
                let (q, r) = a.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                terms.insert(*m, q);
            }
            return Some(Poly { terms });
        }
        let (dm, dc) = d.leading().unwrap();
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            quot.insert_term(qm, qc.clone());
            rem = rem.sub(&d.mul_term(&qc, &qm));
        }
        Some(quot)
    }

    /// Integer content (gcd of coefficients, carrying the sign of the leading
    /// coefficient) together with the primitive part. `p = content * primitive`
    /// with coprime coefficients and positive leading coefficient on the
    /// primitive part.
    pub fn content_primitive(&self) -> Result<(BigInt, Poly), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.leading().unwrap().1.is_negative() {
            g = -g;
        }
        let prim = self.divide_exact(&Poly::constant(g.clone())).unwrap();
        Ok((g, prim))
    }

    /// Integer content as a nonnegative value; 0 for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Sign-normalized copy: leading coefficient made positive.
    pub fn normalize_sign(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::{A1, A2, A3, T};

    fn a1() -> Poly {
        Poly::var(A1)
    }
    fn a3() -> Poly {
        Poly::var(A3)
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Poly>();
        assert_send_sync::<crate::monomial::Monomial>();
    }

    #[test]
    fn add_cancellation() {
        // (a1 + 1) + (a1 - 1) = 2*a1
        let p = a1().add(&Poly::one());
        let q = a1().sub(&Poly::one());
        assert_eq!(p.add(&q), a1().mul_scalar(&BigInt::from(2)));
    }

    #[test]
    fn add_identity() {
        let p = a1().mul(&a3()).add(&Poly::constant(7));
        assert_eq!(p.add(&Poly::zero()), p);
    }

    #[test]
    fn mul_square() {
        // (a1 + a3)^2 = a1^2 + 2 a1 a3 + a3^2
        let s = a1().add(&a3());
        let expect = Poly::var_pow(A1, 2)
            .add(&a1().mul(&a3()).mul_scalar(&BigInt::from(2)))
            .add(&Poly::var_pow(A3, 2));
        assert_eq!(s.mul(&s), expect);
    }

    #[test]
    fn mul_by_zero() {
        let p = a1().add(&Poly::constant(3));
        assert!(p.mul(&Poly::zero()).is_zero());
    }

    #[test]
    fn pow_zero_is_one() {
        assert_eq!(a1().pow(0), Poly::one());
    }

    #[test]
    fn pow_binomial() {
        // (2 a1 + a3)^2 = 4 a1^2 + 4 a1 a3 + a3^2
        let p = a1().mul_scalar(&BigInt::from(2)).add(&a3());
        let expect = Poly::var_pow(A1, 2)
            .mul_scalar(&BigInt::from(4))
            .add(&a1().mul(&a3()).mul_scalar(&BigInt::from(4)))
            .add(&Poly::var_pow(A3, 2));
        assert_eq!(p.pow(2), expect);
    }

    #[test]
    fn substitute_expansion() {
        // a2^2 with a2 := f a1 + g a3
        use crate::vars::{F, G};
        let repl = Poly::var(F).mul(&a1()).add(&Poly::var(G).mul(&a3()));
        let got = Poly::var_pow(A2, 2).substitute(A2, &repl);
        assert_eq!(got, repl.pow(2));
    }

    #[test]
    fn substitute_self_is_identity() {
        let p = a1().mul(&a3()).add(&Poly::var_pow(A1, 3));
        assert_eq!(p.substitute(A1, &Poly::var(A1)), p);
    }

    #[test]
    fn evaluate_example() {
        // 21 a1^2 + 2 a1 a3 + a3^2 at a1 = 6, a3 = -17 -> 841
        let q = Poly::var_pow(A1, 2)
            .mul_scalar(&BigInt::from(21))
            .add(&a1().mul(&a3()).mul_scalar(&BigInt::from(2)))
            .add(&Poly::var_pow(A3, 2));
        let mut asn = BTreeMap::new();
        asn.insert(A1, BigInt::from(6));
        asn.insert(A3, BigInt::from(-17));
        assert_eq!(q.evaluate(&asn).unwrap(), BigInt::from(841));
    }

    #[test]
    fn evaluate_constant() {
        let p = Poly::constant(7);
        assert_eq!(p.evaluate(&BTreeMap::new()).unwrap(), BigInt::from(7));
    }

    #[test]
    fn evaluate_missing_variable() {
        let p = a1().add(&a3());
        let mut asn = BTreeMap::new();
        asn.insert(A1, BigInt::from(1));
        assert_eq!(p.evaluate(&asn), Err(PolyError::MissingVariable(A3)));
    }

    #[test]
    fn univariate_coeffs_reassembly() {
        let p = Poly::var_pow(A2, 2)
            .mul(&a1())
            .add(&Poly::var(A2).mul_scalar(&BigInt::from(-3)))
            .add(&a3().pow(2));
        let cs = p.univariate_coeffs(A2);
        assert_eq!(cs.len(), 3);
        let mut back = Poly::zero();
        for (k, c) in cs.iter().enumerate() {
            back = back.add(&c.mul(&Poly::var_pow(A2, k as u16)));
        }
        assert_eq!(back, p);
    }

    #[test]
    fn univariate_coeffs_constant() {
        let cs = Poly::constant(5).univariate_coeffs(T);
        assert_eq!(cs, vec![Poly::constant(5)]);
    }

    #[test]
    fn divide_exact_roundtrip() {
        let p = a1().add(&a3()).mul(&a1().sub(&a3()));
        assert_eq!(p.divide_exact(&a1().add(&a3())), Some(a1().sub(&a3())));
        assert_eq!(a1().divide_exact(&a3()), None);
        // coefficient inexactness
        let two_a1 = a1().mul_scalar(&BigInt::from(2));
        assert_eq!(a1().divide_exact(&two_a1), None);
    }

    #[test]
    fn content_primitive_examples() {
        // 4t^3 + 28t^2 + 4t - 420 -> (4, t^3 + 7t^2 + t - 105)
        let p = Poly::var_pow(T, 3)
            .mul_scalar(&BigInt::from(4))
            .add(&Poly::var_pow(T, 2).mul_scalar(&BigInt::from(28)))
            .add(&Poly::var(T).mul_scalar(&BigInt::from(4)))
            .add(&Poly::constant(-420));
        let (c, prim) = p.content_primitive().unwrap();
        assert_eq!(c, BigInt::from(4));
        assert_eq!(prim.mul_scalar(&BigInt::from(4)), p);

        // -2 a1 -> (-2, a1): sign goes to the content
        let (c, prim) = a1().mul_scalar(&BigInt::from(-2)).content_primitive().unwrap();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(prim, a1());

        // constant 7 -> (7, 1)
        let (c, prim) = Poly::constant(7).content_primitive().unwrap();
        assert_eq!(c, BigInt::from(7));
        assert!(prim.is_one());

        assert_eq!(
            Poly::zero().content_primitive(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn derivative_basic() {
        let p = Poly::var_pow(A1, 3).mul(&a3()).add(&a1().mul_scalar(&BigInt::from(5)));
        let d = p.derivative(A1);
        let expect = Poly::var_pow(A1, 2)
            .mul(&a3())
            .mul_scalar(&BigInt::from(3))
            .add(&Poly::constant(5));
        assert_eq!(d, expect);
    }
}
