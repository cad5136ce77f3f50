//! Resultants via a fraction-free subresultant remainder sequence, and the
//! discriminant built on top of them.
//!
//! Naive determinant expansion of the Sylvester matrix is hopeless for the
//! sextic that drives the first vanishing condition; the subresultant
//! sequence keeps every intermediate division exact and the coefficient
//! growth polynomial.

use crate::gcd::pseudo_rem;
use crate::poly::{Poly, PolyError};
use crate::vars::VarId;

/// Full content (integer and polynomial) of `p` viewed as univariate in `v`.
fn full_content(p: &Poly, v: VarId) -> Poly {
    let mut g = Poly::zero();
    for c in p.univariate_coeffs(v) {
        if c.is_zero() {
            continue;
        }
        g = crate::gcd::gcd_full(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Resultant of `p` and `q` with respect to `v`.
///
/// Vanishes exactly when `p` and `q` share a factor of positive degree in
/// `v`. Computed by the subresultant pseudo-remainder sequence; the result
/// is the genuine Sylvester resultant, sign included.
pub fn resultant(p: &Poly, q: &Poly, v: VarId) -> Result<Poly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut neg = false;
    if a.degree_in(v) < b.degree_in(v) {
        if a.degree_in(v) * b.degree_in(v) % 2 == 1 {
            neg = !neg;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if db == 0 {
        // res(a, const b) = b^deg(a)
        let mut r = b.pow(da);
        if neg {
            r = r.neg();
        }
        return Ok(r);
    }
    let ca = full_content(&a, v);
    let cb = full_content(&b, v);
    let mut a = a.divide_exact(&ca).expect("content divides");
    let mut b = b.divide_exact(&cb).expect("content divides");
    // contents contribute ca^deg(b) * cb^deg(a)
    let scale = ca.pow(db).mul(&cb.pow(da));

    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        if r.is_zero() {
            // positive-degree common factor
            return Ok(Poly::zero());
        }
        let divisor = g.mul(&h.pow(delta));
        b = r.divide_exact(&divisor).expect("subresultant division is exact");
        g = a.coeff_in(v, a.degree_in(v) as u16);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .divide_exact(&h.pow(delta - 1))
                .expect("subresultant h-update is exact"),
        };
        if b.degree_in(v) == 0 {
            break;
        }
    }
    // b is now v-free and nonzero; res = scale * b^deg(a) / h^(deg(a) - 1)
    let da = a.degree_in(v);
    let num = b.pow(da);
    let res = num
        .divide_exact(&h.pow(da - 1))
        .expect("final subresultant division is exact");
    let mut out = scale.mul(&res);
    if neg {
        out = out.neg();
    }
    Ok(out)
}

/// Discriminant with respect to `v`:
/// `disc_v(p) = (-1)^(n(n-1)/2) * res_v(p, dp/dv) / lc_v(p)` with `n = deg_v(p)`.
pub fn discriminant(p: &Poly, v: VarId) -> Result<Poly, PolyError> {
    let n = p.degree_in(v);
    if n < 2 {
        return Err(PolyError::DegreeTooLow {
            var: v,
            degree: n,
            needed: 2,
        });
    }
    let res = resultant(p, &p.derivative(v), v)?;
    let lc = p.coeff_in(v, n as u16);
    let mut d = res
        .divide_exact(&lc)
        .expect("leading coefficient divides the resultant");
    if (n * (n - 1) / 2) % 2 == 1 {
        d = d.neg();
    }
    Ok(d)
}

/// Sylvester-matrix resultant by fraction-free (Bareiss) elimination.
///
/// Slow compared to [`resultant`] but entirely independent of it; kept as
/// the second route for cross-checks.
pub fn resultant_sylvester(p: &Poly, q: &Poly, v: VarId) -> Result<Poly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let m = p.degree_in(v) as usize;
    let n = q.degree_in(v) as usize;
    if m == 0 && n == 0 {
        return Ok(Poly::one());
    }
    let pc = p.univariate_coeffs(v);
    let qc = q.univariate_coeffs(v);
    let size = m + n;
    let mut mat = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in pc.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in qc.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    // Bareiss fraction-free elimination
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            let swap = (k + 1..size).find(|&i| !mat[i][k].is_zero());
            match swap {
                Some(i) => {
                    mat.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.divide_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = Poly::zero();
        }
        prev = mat[k][k].clone();
    }
    let mut det = mat[size - 1][size - 1].clone();
    if sign {
        det = det.neg();
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::{A1, A3, U, V, W};
    use num_bigint::BigInt;

    fn a1() -> Poly {
        Poly::var(A1)
    }
    fn a3() -> Poly {
        Poly::var(A3)
    }

    #[test]
    fn resultant_linear() {
        // res(a1 - a3, a1 + a3, a1) = 2 a3
        let r = resultant(&a1().sub(&a3()), &a1().add(&a3()), A1).unwrap();
        assert_eq!(r, a3().mul_scalar(&BigInt::from(2)));
    }

    #[test]
    fn resultant_shared_factor_is_zero() {
        let p = a1().add(&a3()).mul(&a1().sub(&Poly::one()));
        assert!(resultant(&p, &p, A1).unwrap().is_zero());
    }

    #[test]
    fn resultant_of_zero_errors() {
        assert!(resultant(&Poly::zero(), &a1(), A1).is_err());
    }

    #[test]
    fn resultant_quadratic_with_derivative() {
        // res(u a1^2 + v a1 + w, 2u a1 + v, a1) = u (4uw - v^2)
        let p = Poly::var(U)
            .mul(&Poly::var_pow(A1, 2))
            .add(&Poly::var(V).mul(&a1()))
            .add(&Poly::var(W));
        let r = resultant(&p, &p.derivative(A1), A1).unwrap();
        let expect = Poly::var(U).mul(
            &Poly::var(U)
                .mul(&Poly::var(W))
                .mul_scalar(&BigInt::from(4))
                .sub(&Poly::var_pow(V, 2)),
        );
        assert_eq!(r, expect);
    }

    #[test]
    fn discriminant_quadratic() {
        // disc(u a1^2 + v a1 + w, a1) = v^2 - 4uw
        let p = Poly::var(U)
            .mul(&Poly::var_pow(A1, 2))
            .add(&Poly::var(V).mul(&a1()))
            .add(&Poly::var(W));
        let d = discriminant(&p, A1).unwrap();
        let expect = Poly::var_pow(V, 2).sub(
            &Poly::var(U)
                .mul(&Poly::var(W))
                .mul_scalar(&BigInt::from(4)),
        );
        assert_eq!(d, expect);
    }

    #[test]
    fn discriminant_repeated_root_vanishes() {
        // (a1 - a3)^2 (a1 + a3)
        let p = a1().sub(&a3()).pow(2).mul(&a1().add(&a3()));
        assert!(discriminant(&p, A1).unwrap().is_zero());
    }

    #[test]
    fn discriminant_degree_too_low() {
        assert!(matches!(
            discriminant(&a1(), A1),
            Err(PolyError::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn subresultant_matches_sylvester() {
        // moderately sized bivariate pair, both routes agree exactly
        let p = Poly::var_pow(A1, 4)
            .mul(&a3())
            .add(&Poly::var_pow(A1, 2).mul_scalar(&BigInt::from(3)))
            .sub(&a3().pow(3))
            .add(&Poly::constant(7));
        let q = Poly::var_pow(A1, 3)
            .sub(&a1().mul(&a3()).mul_scalar(&BigInt::from(2)))
            .add(&a3().add(&Poly::one()));
        let fast = resultant(&p, &q, A1).unwrap();
        let slow = resultant_sylvester(&p, &q, A1).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn resultant_constant_argument() {
        let p = Poly::var_pow(A1, 3).add(&a3());
        let r = resultant(&p, &Poly::constant(5), A1).unwrap();
        assert_eq!(r, Poly::constant(125));
    }
}
