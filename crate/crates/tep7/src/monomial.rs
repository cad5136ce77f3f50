//! Monomials: exponent vectors over the fixed variable table.

use crate::vars::{VarId, NUM_VARS};
use std::cmp::Ordering;
use std::fmt;

/// A power product of ring variables.
///
/// Exponents are stored densely over the fixed table; absent variables simply
/// have exponent zero. Comparison is graded lexicographic: higher total degree
/// first, ties broken lexicographically by the fixed variable order with `a1`
/// most significant. `Ord` here means "earlier in the canonical term order
/// compares greater", so iterating a `BTreeMap` in reverse yields canonical
/// order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u16; NUM_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; NUM_VARS],
    };

    pub fn var(v: VarId) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: u16) -> Monomial {
        let mut exps = [0; NUM_VARS];
        exps[v.index()] = e;
        Monomial { exps }
    }

    pub fn exp(&self, v: VarId) -> u16 {
        self.exps[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Variables with nonzero exponent, in table order.
    pub fn vars(&self) -> impl Iterator<Item = (VarId, u16)> + '_ {
        VarId::all()
            .zip(self.exps.iter())
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| (v, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; NUM_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        Monomial { exps }
    }

    /// Quotient monomial, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0; NUM_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].checked_sub(other.exps[i])?;
        }
        Some(Monomial { exps })
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut exps = [0; NUM_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i]
                .checked_mul(k)
                .expect("monomial exponent overflow");
        }
        Monomial { exps }
    }

    /// Exponent of `v` set to zero.
    pub fn without(&self, v: VarId) -> Monomial {
        let mut exps = self.exps;
        exps[v.index()] = 0;
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.total_degree();
        let db = other.total_degree();
        if da != db {
            return da.cmp(&db);
        }
        // lex with a1 most significant; a higher exponent on an earlier
        // variable compares greater
        for i in 0..NUM_VARS {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}
