//! Domain model for Tarry-Escott instances and parametric families.
//!
//! An ideal solution of degree 7 is two multisets of eight integers with
//! equal power sums for r = 1..7. All families here are symmetric: the
//! second half of each side is the negation of the first, which settles the
//! odd exponents identically and reduces the check to r = 2, 4, 6 on the
//! four-term halves.

use crate::poly::Poly;
use crate::vars::T;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TepError {
    #[error("all sixteen entries are zero")]
    AllZero,
    #[error("instantiation produced the all-zero instance")]
    DegenerateInstance,
    #[error("family side must have {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("bad integer literal {0:?}")]
    BadInteger(String),
}

/// Sum of r-th powers of a slice of integers.
pub fn power_sum(values: &[BigInt], r: u32) -> BigInt {
    values.iter().map(|v| v.pow(r)).sum()
}

/// One concrete candidate ideal solution: two eight-term multisets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TepInstance {
    pub xs: [BigInt; 8],
    pub ys: [BigInt; 8],
}

/// Four-term half of a symmetric instance (the reduced r = 2, 4, 6 system;
/// the display of that system misprints the right side's exponent as a
/// literal 4, read here as r, as the surrounding "r = 2, 4, 6" forces).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfInstance {
    pub xs: [BigInt; 4],
    pub ys: [BigInt; 4],
}

impl HalfInstance {
    pub fn power_sum_xs(&self, r: u32) -> BigInt {
        power_sum(&self.xs, r)
    }

    pub fn power_sum_ys(&self, r: u32) -> BigInt {
        power_sum(&self.ys, r)
    }

    pub fn check_multigrade(&self, degrees: &BTreeSet<u32>) -> bool {
        degrees
            .iter()
            .all(|&r| self.power_sum_xs(r) == self.power_sum_ys(r))
    }

    /// Symmetric extension per `x_{i+4} = -x_i, y_{i+4} = -y_i`.
    pub fn extend_symmetric(&self) -> TepInstance {
        let ext = |h: &[BigInt; 4]| -> [BigInt; 8] {
            std::array::from_fn(|i| {
                if i < 4 {
                    h[i].clone()
                } else {
                    -h[i - 4].clone()
                }
            })
        };
        TepInstance {
            xs: ext(&self.xs),
            ys: ext(&self.ys),
        }
    }
}

impl TepInstance {
    pub fn power_sum_xs(&self, r: u32) -> BigInt {
        power_sum(&self.xs, r)
    }

    pub fn power_sum_ys(&self, r: u32) -> BigInt {
        power_sum(&self.ys, r)
    }

    /// True iff the two sides have equal power sums for every listed degree.
    pub fn check_multigrade(&self, degrees: &BTreeSet<u32>) -> bool {
        degrees
            .iter()
            .all(|&r| self.power_sum_xs(r) == self.power_sum_ys(r))
    }

    /// True iff the two sides coincide as multisets.
    pub fn is_trivial(&self) -> bool {
        let mut a = self.xs.to_vec();
        let mut b = self.ys.to_vec();
        a.sort();
        b.sort();
        a == b
    }

    /// Canonical form: divide out the common GCD of all sixteen entries, sort
    /// each side descending, and orient so the lexicographically larger side
    /// is `xs`. Deterministic and idempotent.
    pub fn canonicalize(&self) -> Result<TepInstance, TepError> {
        let mut g = BigInt::zero();
        for v in self.xs.iter().chain(self.ys.iter()) {
            g = g.gcd(v);
        }
        if g.is_zero() {
            return Err(TepError::AllZero);
        }
        let reduce = |side: &[BigInt; 8]| -> [BigInt; 8] {
            let mut out: Vec<BigInt> = side.iter().map(|v| v / &g).collect();
            out.sort_by(|a, b| b.cmp(a));
            out.try_into().unwrap()
        };
        let a = reduce(&self.xs);
        let b = reduce(&self.ys);
        if a >= b {
            Ok(TepInstance { xs: a, ys: b })
        } else {
            Ok(TepInstance { xs: b, ys: a })
        }
    }
}

/// Report of a symbolic family verification.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    /// (degree, residual identically zero) in ascending degree order.
    pub per_degree: Vec<(u32, bool)>,
    /// The residual polynomial for the first failing degree, if any.
    pub first_failure: Option<(u32, Poly)>,
    /// Whether the family's sides coincide as polynomial multisets.
    pub trivial: bool,
}

impl FamilyReport {
    pub fn all_zero(&self) -> bool {
        self.per_degree.iter().all(|&(_, ok)| ok)
    }
}

/// Parametric solution: eight x-polynomials and eight y-polynomials in `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolutionFamily {
    pub xs: [Poly; 8],
    pub ys: [Poly; 8],
    pub label: String,
    pub degrees_claimed: BTreeSet<u32>,
}

/// Four-term half of a symmetric family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfFamily {
    pub xs: [Poly; 4],
    pub ys: [Poly; 4],
}

impl HalfFamily {
    /// Symmetric extension to a full family.
    pub fn extend_symmetric(&self, label: &str) -> SolutionFamily {
        let ext = |h: &[Poly; 4]| -> [Poly; 8] {
            std::array::from_fn(|i| if i < 4 { h[i].clone() } else { h[i - 4].neg() })
        };
        SolutionFamily {
            xs: ext(&self.xs),
            ys: ext(&self.ys),
            label: label.to_string(),
            degrees_claimed: (1..=7).collect(),
        }
    }

    /// Instantiate the half family at an integer point.
    pub fn instantiate_int(&self, t0: &BigInt) -> Result<HalfInstance, TepError> {
        let mut asn = BTreeMap::new();
        asn.insert(T, t0.clone());
        let eval = |p: &Poly| p.evaluate(&asn).expect("entries only involve t");
        let xs: [BigInt; 4] = std::array::from_fn(|i| eval(&self.xs[i]));
        let ys: [BigInt; 4] = std::array::from_fn(|i| eval(&self.ys[i]));
        if xs.iter().chain(ys.iter()).all(|v| v.is_zero()) {
            return Err(TepError::DegenerateInstance);
        }
        Ok(HalfInstance { xs, ys })
    }
}

impl SolutionFamily {
    /// Symbolic multigrade check: for each degree, is the residual
    /// polynomial `sum xs_i(t)^r - sum ys_i(t)^r` identically zero?
    pub fn verify(&self, degrees: &BTreeSet<u32>) -> FamilyReport {
        let mut per_degree = Vec::new();
        let mut first_failure = None;
        for &r in degrees {
            let res = self.residual(r);
            let ok = res.is_zero();
            per_degree.push((r, ok));
            if !ok && first_failure.is_none() {
                first_failure = Some((r, res));
            }
        }
        FamilyReport {
            per_degree,
            first_failure,
            trivial: self.is_trivial(),
        }
    }

    /// The residual polynomial `sum xs_i(t)^r - sum ys_i(t)^r`.
    pub fn residual(&self, r: u32) -> Poly {
        let mut acc = Poly::zero();
        for p in &self.xs {
            acc = acc.add(&p.pow(r));
        }
        for p in &self.ys {
            acc = acc.sub(&p.pow(r));
        }
        acc
    }

    /// True iff the two sides agree as multisets of polynomials.
    pub fn is_trivial(&self) -> bool {
        let key = |side: &[Poly; 8]| -> Vec<String> {
            let mut v: Vec<String> = side.iter().map(|p| p.to_string()).collect();
            v.sort();
            v
        };
        key(&self.xs) == key(&self.ys)
    }

    /// Largest degree in `t` over all sixteen entries.
    pub fn max_degree(&self) -> u32 {
        self.xs
            .iter()
            .chain(self.ys.iter())
            .map(|p| p.degree_in(T))
            .max()
            .unwrap_or(0)
    }

    /// Instantiate at rational `t0 = p/q`: every entry is scaled by the same
    /// factor `q^D`, `D` the family's maximal degree, keeping arithmetic
    /// integral; the result is canonicalized.
    pub fn instantiate(&self, t0: &BigRational) -> Result<TepInstance, TepError> {
        let d = self.max_degree();
        let p = t0.numer();
        let q = t0.denom();
        let eval = |poly: &Poly| -> BigInt {
            // q^D * poly(p/q) = sum c_k p^k q^(D-k)
            let mut total = BigInt::zero();
            for (m, c) in poly.terms() {
                let k = m.exp(T) as u32;
                total += c * p.pow(k) * q.pow(d - k);
            }
            total
        };
        let xs: [BigInt; 8] = std::array::from_fn(|i| eval(&self.xs[i]));
        let ys: [BigInt; 8] = std::array::from_fn(|i| eval(&self.ys[i]));
        TepInstance { xs, ys }
            .canonicalize()
            .map_err(|_| TepError::DegenerateInstance)
    }

    pub fn instantiate_int(&self, t0: i64) -> Result<TepInstance, TepError> {
        self.instantiate(&BigRational::from_integer(BigInt::from(t0)))
    }
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

/// JSON shape of a family: per-entry ascending coefficient lists, decimal
/// strings: `{"label": ..., "x": [[c0..c4] x8], "y": [[c0..c4] x8]}`.
#[derive(Serialize, Deserialize)]
pub struct FamilyJson {
    pub label: String,
    pub x: Vec<Vec<String>>,
    pub y: Vec<Vec<String>>,
}

fn poly_to_coeffs(p: &Poly, min_len: usize) -> Vec<String> {
    let deg = p.degree_in(T) as usize;
    let mut out = vec!["0".to_string(); (deg + 1).max(min_len)];
    for (m, c) in p.terms() {
        out[m.exp(T) as usize] = c.to_string();
    }
    out
}

fn coeffs_to_poly(cs: &[String]) -> Result<Poly, TepError> {
    let mut p = Poly::zero();
    for (k, c) in cs.iter().enumerate() {
        let coeff = BigInt::from_str(c).map_err(|_| TepError::BadInteger(c.clone()))?;
        p = p.add(&Poly::term(
            coeff,
            crate::monomial::Monomial::var_pow(T, k as u16),
        ));
    }
    Ok(p)
}

impl SolutionFamily {
    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            label: self.label.clone(),
            x: self.xs.iter().map(|p| poly_to_coeffs(p, 5)).collect(),
            y: self.ys.iter().map(|p| poly_to_coeffs(p, 5)).collect(),
        }
    }

    pub fn from_json(j: &FamilyJson) -> Result<SolutionFamily, TepError> {
        if j.x.len() != 8 || j.y.len() != 8 {
            return Err(TepError::WrongLength {
                expected: 8,
                got: j.x.len().max(j.y.len()),
            });
        }
        let xs: Result<Vec<Poly>, TepError> = j.x.iter().map(|c| coeffs_to_poly(c)).collect();
        let ys: Result<Vec<Poly>, TepError> = j.y.iter().map(|c| coeffs_to_poly(c)).collect();
        Ok(SolutionFamily {
            xs: xs?.try_into().unwrap(),
            ys: ys?.try_into().unwrap(),
            label: j.label.clone(),
            degrees_claimed: (1..=7).collect(),
        })
    }
}

/// One line of scan output: the parameter value and the canonical instance.
#[derive(Serialize, Deserialize)]
pub struct ScanRecord {
    pub t: String,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
}

impl ScanRecord {
    pub fn new(t0: &BigInt, inst: &TepInstance) -> ScanRecord {
        ScanRecord {
            t: t0.to_string(),
            xs: inst.xs.iter().map(|v| v.to_string()).collect(),
            ys: inst.ys.iter().map(|v| v.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn half_t2() -> HalfInstance {
        // the printed numerical example at t = 2
        HalfInstance {
            xs: [big(101), big(268), big(249), big(97)],
            ys: [big(73), big(123), big(244), big(271)],
        }
    }

    #[test]
    fn power_sum_printed_instance() {
        let h = half_t2();
        assert_eq!(h.power_sum_xs(2), big(153435));
        assert_eq!(h.power_sum_ys(2), big(153435));
        let zeros = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        assert_eq!(power_sum(&zeros, 5), BigInt::zero());
    }

    #[test]
    fn multigrade_printed_instance() {
        let h = half_t2();
        let deg246: BTreeSet<u32> = [2, 4, 6].into_iter().collect();
        assert!(h.check_multigrade(&deg246));
        let deg8: BTreeSet<u32> = [8].into_iter().collect();
        assert!(!h.check_multigrade(&deg8));
    }

    #[test]
    fn multigrade_equal_sides() {
        let h = HalfInstance {
            xs: [big(1), big(2), big(3), big(4)],
            ys: [big(1), big(2), big(3), big(4)],
        };
        let all: BTreeSet<u32> = (1..=9).collect();
        assert!(h.check_multigrade(&all));
    }

    #[test]
    fn extend_symmetric_definition() {
        let h = HalfInstance {
            xs: [big(1), big(2), big(3), big(4)],
            ys: [big(5), big(6), big(7), big(8)],
        };
        let e = h.extend_symmetric();
        assert_eq!(e.xs[4], big(-1));
        assert_eq!(e.ys[7], big(-8));
    }

    #[test]
    fn extended_t2_passes_degrees_1_through_7() {
        let e = half_t2().extend_symmetric();
        let d17: BTreeSet<u32> = (1..=7).collect();
        assert!(e.check_multigrade(&d17));
        let d8: BTreeSet<u32> = [8].into_iter().collect();
        assert!(!e.check_multigrade(&d8));
    }

    #[test]
    fn canonicalize_scaling_and_idempotence() {
        let e = half_t2().extend_symmetric();
        let scaled = TepInstance {
            xs: e.xs.clone().map(|v| v * big(3)),
            ys: e.ys.clone().map(|v| v * big(3)),
        };
        let c1 = scaled.canonicalize().unwrap();
        let c2 = e.canonicalize().unwrap();
        assert_eq!(c1, c2);
        assert_eq!(c1.canonicalize().unwrap(), c1);
    }

    #[test]
    fn canonicalize_all_zero() {
        let z = TepInstance {
            xs: std::array::from_fn(|_| BigInt::zero()),
            ys: std::array::from_fn(|_| BigInt::zero()),
        };
        assert_eq!(z.canonicalize(), Err(TepError::AllZero));
    }

    #[test]
    fn canonical_orientation_is_lexicographic() {
        let c = half_t2().extend_symmetric().canonicalize().unwrap();
        // the side holding 271 sorts lexicographically larger
        assert_eq!(c.xs[0], big(271));
        assert_eq!(c.ys[0], big(268));
    }

    #[test]
    fn trivial_when_sides_match() {
        let h = HalfInstance {
            xs: [big(3), big(1), big(2), big(0)],
            ys: [big(0), big(1), big(2), big(3)],
        };
        assert!(h.extend_symmetric().is_trivial());
        assert!(!half_t2().extend_symmetric().is_trivial());
    }

    #[test]
    fn negated_sides_are_trivial_under_symmetry() {
        // xs = -ys elementwise: after symmetric extension both sides hold
        // the same multiset
        let h = HalfInstance {
            xs: [big(1), big(-7), big(4), big(2)],
            ys: [big(-1), big(7), big(-4), big(-2)],
        };
        assert!(h.extend_symmetric().is_trivial());
    }

    #[test]
    fn all_zero_family_is_zero_but_trivial() {
        let z = HalfFamily {
            xs: std::array::from_fn(|_| Poly::zero()),
            ys: std::array::from_fn(|_| Poly::zero()),
        };
        let fam = z.extend_symmetric("zero");
        let rep = fam.verify(&(1..=7).collect());
        assert!(rep.all_zero());
        assert!(rep.trivial);
    }

    #[test]
    fn instantiate_at_common_root_is_degenerate() {
        let e: Poly = "t - 1".parse().unwrap();
        let half = HalfFamily {
            xs: std::array::from_fn(|_| e.clone()),
            ys: std::array::from_fn(|_| e.clone()),
        };
        let fam = half.extend_symmetric("vanishing");
        assert_eq!(fam.instantiate_int(1), Err(TepError::DegenerateInstance));
        assert!(fam.instantiate_int(2).is_ok());
    }

    #[test]
    fn family_json_roundtrip() {
        let p: Poly = "t^4 + 6*t^3 - 32*t^2 - 158*t + 279".parse().unwrap();
        let q: Poly = "4*t^3 + 28*t^2 + 4*t - 420".parse().unwrap();
        let half = HalfFamily {
            xs: [p.clone(), q.clone(), p.clone(), q.clone()],
            ys: [q.clone(), p.clone(), q.clone(), p.clone()],
        };
        let fam = half.extend_symmetric("test");
        let js = serde_json::to_string(&fam.to_json()).unwrap();
        let back = SolutionFamily::from_json(&serde_json::from_str(&js).unwrap()).unwrap();
        assert_eq!(back, fam);
    }

    #[test]
    fn instantiate_rational_homogenizes() {
        // family entries t^2 and 2t: at t = 3/2 scaled by 2^2 -> 9 and 12
        let t2: Poly = "t^2".parse().unwrap();
        let tt: Poly = "2*t".parse().unwrap();
        let half = HalfFamily {
            xs: [t2.clone(), tt.clone(), t2.clone(), tt.clone()],
            ys: [t2.clone(), tt.clone(), t2.clone(), tt.clone()],
        };
        let fam = half.extend_symmetric("diag");
        let t0 = BigRational::new(big(3), big(2));
        let inst = fam.instantiate(&t0).unwrap();
        // canonical form divides by gcd(9,12) = 3
        assert!(inst.xs.contains(&big(3)) && inst.xs.contains(&big(4)));
    }
}
