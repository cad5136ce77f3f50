//! Polynomial GCD, square-free splitting and exact square roots.
//!
//! GCDs use the primitive pseudo-remainder sequence, recursing on the main
//! variable. That is enough for every extraction this construction needs;
//! no general factorization lives here or anywhere else in the crate.

use crate::poly::{Poly, PolyError};
use crate::vars::VarId;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Pseudo-remainder of `a` by `b` with respect to `v`:
/// `lc_v(b)^(deg_v(a) - deg_v(b) + 1) * a = q*b + r` with `deg_v(r) < deg_v(b)`.
pub(crate) fn pseudo_rem(a: &Poly, b: &Poly, v: VarId) -> Poly {
    let db = b.degree_in(v);
    debug_assert!(!b.is_zero());
    let lcb = b.coeff_in(v, db as u16);
    let da = a.degree_in(v);
    if da < db {
        // multiplier exponent is da - db + 1 <= 0; by convention prem = lcb^? * a
        // only the da >= db case is ever used here
        return a.clone();
    }
    let mut r = a.clone();
    let mut mult_left = (da - db + 1) as i64;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coeff_in(v, dr as u16);
        let shift = Poly::var_pow(v, (dr - db) as u16);
        r = r.mul(&lcb).sub(&b.mul(&lcr).mul(&shift));
        mult_left -= 1;
    }
    for _ in 0..mult_left {
        r = r.mul(&lcb);
    }
    r
}

/// First variable (in table order) occurring in either polynomial.
fn main_var(p: &Poly, q: &Poly) -> Option<VarId> {
    VarId::all().find(|&v| p.contains_var(v) || q.contains_var(v))
}

/// Content of `p` viewed as univariate in `v`: the full GCD of its
/// coefficient polynomials (integer content included).
fn content_in(p: &Poly, v: VarId) -> Poly {
    let mut g = Poly::zero();
    for c in p.univariate_coeffs(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_full(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Full polynomial GCD over the integers, up to sign (result is
/// sign-normalized; integer content of the gcd is retained).
pub fn gcd_full(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.normalize_sign();
    }
    if q.is_zero() {
        return p.normalize_sign();
    }
    if p.is_constant() || q.is_constant() {
        let g = p.integer_content().gcd(&q.integer_content());
        return Poly::constant(g);
    }
    let v = main_var(p, q).expect("nonconstant polynomials have a variable");
    if !p.contains_var(v) {
        // any common divisor is v-free, hence divides the v-content of q
        return gcd_full(p, &content_in(q, v));
    }
    if !q.contains_var(v) {
        return gcd_full(&content_in(p, v), q);
    }
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let pp = p.divide_exact(&cp).expect("content divides");
    let qq = q.divide_exact(&cq).expect("content divides");
    let c = gcd_full(&cp, &cq);

    let (mut a, mut b) = if pp.degree_in(v) >= qq.degree_in(v) {
        (pp, qq)
    } else {
        (qq, pp)
    };
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = if r.is_zero() {
            Poly::zero()
        } else {
            let cr = content_in(&r, v);
            r.divide_exact(&cr).expect("content divides")
        };
    }
    c.mul(&a).normalize_sign()
}

/// Greatest common divisor, primitive and sign-normalized.
/// `gcd(p, 0)` is the primitive part of `p`.
pub fn gcd(p: &Poly, q: &Poly) -> Poly {
    let g = gcd_full(p, q);
    if g.is_zero() {
        return g;
    }
    let (_, prim) = g.content_primitive().expect("nonzero");
    prim
}

/// Split a nonnegative integer as `s^2 * c` with `c` square-free,
/// by trial division.
pub(crate) fn int_square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut c = n.abs();
    let mut s = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= c {
        let dd = &d * &d;
        while (&c % &dd).is_zero() {
            s *= &d;
            c /= &dd;
        }
        d += 1;
    }
    if n.is_negative() {
        c = -c;
    }
    (s, c)
}

/// GCD of `p` with all its partial derivatives; for `p = prod q_i^{e_i}`
/// this is `prod q_i^{e_i - 1}` up to content.
fn gcd_with_partials(p: &Poly) -> Poly {
    let mut g = p.clone();
    for v in p.vars() {
        g = gcd(&g, &p.derivative(v));
        if g.is_constant() {
            break;
        }
    }
    g
}

/// Maximal-square extraction: `p = square_root_part^2 * cofactor` with the
/// cofactor square-free (over all variables, integer square content included).
pub fn squarefree_split_all(p: &Poly) -> (Poly, Poly) {
    if p.is_zero() {
        return (Poly::one(), Poly::zero());
    }
    let (ic, pp) = p.content_primitive().expect("nonzero");
    let (si, _) = int_square_split(&ic);

    // multiplicity filtration: at level k the quotient r_k is the product of
    // factors of multiplicity >= k, and a factor of multiplicity e belongs to
    // r_1..r_e, so collecting the even levels yields floor(e/2) copies each
    let mut s_poly = Poly::one();
    let mut d = pp;
    let mut level = 1u32;
    while !d.is_constant() {
        let g = gcd_with_partials(&d);
        let r = d.divide_exact(&g).expect("gcd divides");
        if level.is_multiple_of(2) {
            s_poly = s_poly.mul(&r.normalize_sign());
        }
        d = g;
        level += 1;
        if level > 64 {
            break; // exceeds any multiplicity arising here
        }
    }
    let s = s_poly.mul_scalar(&si);
    let c = p
        .divide_exact(&s.mul(&s))
        .expect("square part divides by construction");
    (s.normalize_sign(), c)
}

/// Square extraction relative to one variable, per the construction's
/// "factor out the squared factor" steps: the content of `p` in `v` is
/// split globally, the `v`-primitive part via the derivative in `v`.
pub fn squarefree_split(p: &Poly, v: VarId) -> (Poly, Poly) {
    if p.is_zero() {
        return (Poly::one(), Poly::zero());
    }
    if !p.contains_var(v) {
        return squarefree_split_all(p);
    }
    let cont = content_in(p, v);
    let pp = p.divide_exact(&cont).expect("content divides");
    let (s_cont, _) = squarefree_split_all(&cont);

    let mut s_poly = Poly::one();
    let mut d = pp;
    let mut level = 1u32;
    while d.contains_var(v) {
        let g = gcd(&d, &d.derivative(v));
        let r = d.divide_exact(&g).expect("gcd divides");
        if level.is_multiple_of(2) {
            s_poly = s_poly.mul(&r.normalize_sign());
        }
        d = g;
        level += 1;
        if level > 64 {
            break;
        }
    }
    let s = s_poly.mul(&s_cont);
    let c = p
        .divide_exact(&s.mul(&s))
        .expect("square part divides by construction");
    (s.normalize_sign(), c)
}

/// Exact polynomial square root: `Some(s)` with `s^2 = p` and positive
/// leading coefficient, or `None` when `p` is not a perfect square.
pub fn poly_sqrt(p: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    let (lm, lc) = p.leading().unwrap();
    if lc.is_negative() {
        return None;
    }
    let slc = lc.sqrt();
    if &slc * &slc != *lc {
        return None;
    }
    let mut half = Vec::new();
    for (v, e) in lm.vars() {
        if e % 2 != 0 {
            return None;
        }
        half.push((v, e / 2));
    }
    let mut sm = crate::monomial::Monomial::ONE;
    for (v, e) in half {
        sm = sm.mul(&crate::monomial::Monomial::var_pow(v, e));
    }
    let two_slc = BigInt::from(2) * &slc;
    let mut root = Poly::term(slc, sm);
    let mut rem = p.sub(&root.mul(&root));
    while !rem.is_zero() {
        let (rm, rc) = rem.leading().unwrap();
        let um = rm.div(&sm)?;
        if um >= sm {
            return None; // next term would not be smaller: not a square
        }
        let (uc, r) = rc.div_rem(&two_slc);
        if !r.is_zero() {
            return None;
        }
        let u = Poly::term(uc, um);
        // rem(new) = p - (root + u)^2 = rem - u*(2*root + u)
        let two_root = root.mul_scalar(&BigInt::from(2));
        rem = rem.sub(&u.mul(&two_root.add(&u)));
        root = root.add(&u);
    }
    Some(root)
}

/// Rational function of polynomials: reduced numerator/denominator pair
/// with sign-normalized denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoly {
    numerator: Poly,
    denominator: Poly,
}

impl RationalPoly {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<RationalPoly, PolyError> {
        if denominator.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if numerator.is_zero() {
            return Ok(RationalPoly {
                numerator,
                denominator: Poly::one(),
            });
        }
        let g = gcd_full(&numerator, &denominator);
        let mut num = numerator.divide_exact(&g).expect("gcd divides");
        let mut den = denominator.divide_exact(&g).expect("gcd divides");
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Ok(RationalPoly {
            numerator: num,
            denominator: den,
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }
}

impl std::fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::{A1, A3, T};

    fn a1() -> Poly {
        Poly::var(A1)
    }
    fn a3() -> Poly {
        Poly::var(A3)
    }

    #[test]
    fn gcd_difference_of_squares() {
        let p = Poly::var_pow(A1, 2).sub(&Poly::var_pow(A3, 2));
        let q = a1().add(&a3());
        assert_eq!(gcd(&p, &q), q);
    }

    #[test]
    fn gcd_self_is_primitive_normalized() {
        let p = a1()
            .mul_scalar(&BigInt::from(-6))
            .add(&a3().mul_scalar(&BigInt::from(-9)));
        let g = gcd(&p, &p);
        // -6a1 - 9a3 -> primitive sign-normalized 2a1 + 3a3
        let expect = a1()
            .mul_scalar(&BigInt::from(2))
            .add(&a3().mul_scalar(&BigInt::from(3)));
        assert_eq!(g, expect);
    }

    #[test]
    fn gcd_with_zero_is_primitive_part() {
        let p = a1().mul(&a3()).mul_scalar(&BigInt::from(-4));
        assert_eq!(gcd(&p, &Poly::zero()), a1().mul(&a3()));
    }

    #[test]
    fn gcd_no_common_variable() {
        let p = a1().mul_scalar(&BigInt::from(2));
        let q = a3().mul_scalar(&BigInt::from(4));
        assert_eq!(gcd_full(&p, &q), Poly::constant(2));
        assert!(gcd(&p, &q).is_one());
    }

    #[test]
    fn gcd_planted_factor() {
        let common = a1().mul_scalar(&BigInt::from(3)).add(&a3());
        let p = common.mul(&a1().add(&Poly::one()));
        let q = common.mul(&a3().sub(&Poly::constant(5)));
        assert_eq!(gcd(&p, &q), common);
    }

    #[test]
    fn squarefree_split_planted() {
        // (2a1+a3)^2 * (21a1^2 + 2a1a3 + a3^2) -> split exactly
        let s = a1().mul_scalar(&BigInt::from(2)).add(&a3());
        let c = Poly::var_pow(A1, 2)
            .mul_scalar(&BigInt::from(21))
            .add(&a1().mul(&a3()).mul_scalar(&BigInt::from(2)))
            .add(&Poly::var_pow(A3, 2));
        let p = s.mul(&s).mul(&c);
        let (got_s, got_c) = squarefree_split(&p, A1);
        assert_eq!(got_s, s);
        assert_eq!(got_c, c);
        let (gs2, gc2) = squarefree_split_all(&p);
        assert_eq!(gs2, s);
        assert_eq!(gc2, c);
    }

    #[test]
    fn squarefree_split_pure_power_content() {
        // a3^2 * (a1 + a3): the squared pure power lands in the root part
        let p = Poly::var_pow(A3, 2).mul(&a1().add(&a3()));
        let (s, c) = squarefree_split(&p, A1);
        assert_eq!(s, a3());
        assert_eq!(c, a1().add(&a3()));
        assert_eq!(s.mul(&s).mul(&c), p);
    }

    #[test]
    fn squarefree_split_squarefree_input() {
        let p = a1().add(&a3());
        let (s, c) = squarefree_split(&p, A1);
        assert!(s.is_one());
        assert_eq!(c, p);
    }

    #[test]
    fn squarefree_split_integer_square() {
        let p = a1().add(&a3()).mul_scalar(&BigInt::from(12)); // 12 = 2^2 * 3
        let (s, c) = squarefree_split_all(&p);
        assert_eq!(s, Poly::constant(2));
        assert_eq!(c, a1().add(&a3()).mul_scalar(&BigInt::from(3)));
    }

    #[test]
    fn poly_sqrt_quartic() {
        // t^4 + 4t^3 + 46t^2 + 84t + 441 = (t^2 + 2t + 21)^2
        let s = Poly::var_pow(T, 2)
            .add(&Poly::var(T).mul_scalar(&BigInt::from(2)))
            .add(&Poly::constant(21));
        assert_eq!(poly_sqrt(&s.mul(&s)), Some(s));
    }

    #[test]
    fn poly_sqrt_with_constant() {
        // 4(2a1+a3)^2 -> 2(2a1+a3)
        let l = a1().mul_scalar(&BigInt::from(2)).add(&a3());
        let p = l.mul(&l).mul_scalar(&BigInt::from(4));
        assert_eq!(poly_sqrt(&p), Some(l.mul_scalar(&BigInt::from(2))));
    }

    #[test]
    fn poly_sqrt_not_square() {
        let p = Poly::var_pow(A1, 2).add(&Poly::one());
        assert_eq!(poly_sqrt(&p), None);
        assert_eq!(poly_sqrt(&a1().mul_scalar(&BigInt::from(-1)).pow(3)), None);
    }

    #[test]
    fn poly_sqrt_sign_normalized() {
        let s = a1().mul_scalar(&BigInt::from(-3)).add(&a3());
        let got = poly_sqrt(&s.mul(&s)).unwrap();
        assert_eq!(got, s.neg()); // 3a1 - a3, positive leading coefficient
    }

    #[test]
    fn rational_poly_reduces() {
        // (a1^2 - a3^2) / (a1 + a3) -> (a1 - a3) / 1
        let num = Poly::var_pow(A1, 2).sub(&Poly::var_pow(A3, 2));
        let den = a1().add(&a3());
        let r = RationalPoly::new(num, den).unwrap();
        assert_eq!(*r.numerator(), a1().sub(&a3()));
        assert!(r.denominator().is_one());
    }

    #[test]
    fn rational_poly_zero_denominator() {
        assert!(RationalPoly::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn int_square_split_basic() {
        let (s, c) = int_square_split(&BigInt::from(-1008)); // 1008 = 144*7
        assert_eq!(s, BigInt::from(12));
        assert_eq!(c, BigInt::from(-7));
    }
}
