//! Stored display constants: the base-solution entries, the factored r = 6
//! residual, both quartic forms, the two vanishing conditions, the conic
//! parametrization, and the four built-in quartic families.
//!
//! Everything here is data for regression checks; the pipeline recomputes
//! each object independently and `verifier::fixture_regression` compares the
//! two routes. Fixtures are parsed once and handed out as shared references;
//! a checksum over the canonical serializations guards against accidental
//! edits.

use crate::poly::Poly;
use crate::tep::{HalfFamily, HalfInstance, SolutionFamily};
use num_bigint::BigInt;
use std::sync::OnceLock;

fn parse(src: &str) -> Poly {
    src.parse().unwrap_or_else(|e| panic!("bad fixture {:?}: {}", src, e))
}

/// The eight base-solution entries (x1..x4 then y1..y4), linear in m, n.
pub const BASE_ENTRIES_SRC: [&str; 8] = [
    "a1*m + (a1 + 2*a3)*(a1 + 2*a2 + a3)*n",
    "a2*m - (a1 - a3)*(2*a1 + a2 + 2*a3)*n",
    "a3*m - (2*a1 + a3)*(a1 + 2*a2 + a3)*n",
    "-(a1 + a2 + a3)*m + (a1 - a3)*(a1 - a2 + a3)*n",
    "-a1*m + (a1 + 2*a3)*(a1 + 2*a2 + a3)*n",
    "-a2*m - (a1 - a3)*(2*a1 + a2 + 2*a3)*n",
    "-a3*m - (2*a1 + a3)*(a1 + 2*a2 + a3)*n",
    "(a1 + a2 + a3)*m + (a1 - a3)*(a1 - a2 + a3)*n",
];

/// The quadratic factor of the r = 6 residual (also the denominator of the
/// m-solution).
pub const Q_SRC: &str = "2*a1^2 - a1*a2 + 5*a1*a3 - a2^2 - a2*a3 + 2*a3^2";

/// The quartic factor of the r = 6 residual.
pub const K_SRC: &str = "2*a1^4 - a1^3*a2 + 9*a1^3*a3 - a1^2*a2^2 + 37*a1^2*a2*a3 \
                         + 14*a1^2*a3^2 + 38*a1*a2^2*a3 + 37*a1*a2*a3^2 + 9*a1*a3^3 \
                         - a2^2*a3^2 - a2*a3^3 + 2*a3^4";

/// Factors of the r = 6 residual, as printed.
pub const R6_FACTORS_SRC: [&str; 8] = [
    "m",
    "n",
    "a1^2 - a3^2",
    "a1 + a2",
    "a1 + 2*a2 + a3",
    "a2 + a3",
    "m^2 - 9*(a1 + a3)^2*n^2",
    "(2*a1^2 - a1*a2 + 5*a1*a3 - a2^2 - a2*a3 + 2*a3^2)*m^2 \
     - (2*a1^4 - a1^3*a2 + 9*a1^3*a3 - a1^2*a2^2 + 37*a1^2*a2*a3 + 14*a1^2*a3^2 \
     + 38*a1*a2^2*a3 + 37*a1*a2*a3^2 + 9*a1*a3^3 - a2^2*a3^2 - a2*a3^3 + 2*a3^4)*n^2",
];

/// Constant in front of the factored r = 6 residual. The display equates the
/// product to zero, which leaves the transposition orientation open; the
/// exact residual `sum x_i^6 - sum y_i^6` of the stored base entries equals
/// `-12` times the factors above, so that is the stored constant.
pub const R6_CONSTANT: i64 = -12;

/// Collected quartic-in-a2 form of the sextic surface.
pub const PHI_COLLECTED_SRC: &str = "(a1^2 - 38*a1*a3 + a3^2)*a2^4 \
    + 2*(a1 + a3)*(a1^2 - 38*a1*a3 + a3^2)*a2^3 \
    - (3*a1^4 - 26*a1^3*a3 - 98*a1^2*a3^2 - 26*a1*a3^3 + 3*a3^4)*a2^2 \
    - 2*(2*a1 + a3)*(a1 + 2*a3)*(a1 + a3)*(a1^2 - 18*a1*a3 + a3^2)*a2 \
    + (a1 + 2*a3)^2*(2*a1 + a3)^2*(a1 + a3)^2";

/// First vanishing condition: ten squared linear factors, a quadratic, and a
/// sextic, as printed.
pub const FIRST_CONDITION_FACTORS_SRC: [&str; 12] = [
    "(f + 2)^2",
    "(f - 1)^2",
    "(f - g)^2",
    "(2*f - g)^2",
    "(f - 2*g)^2",
    "(f + g + 1)^2",
    "(f - 2*g - 1)^2",
    "(2*f - g + 1)^2",
    "(g + 2)^2",
    "(g - 1)^2",
    "9*f^2 - 22*f*g + 9*g^2 - 2*f - 2*g + 9",
    "f^6 + 114*f^5*g + 4335*f^4*g^2 + 55100*f^3*g^3 + 4335*f^2*g^4 + 114*f*g^5 + g^6 \
     + 60*f^5 + 4620*f^4*g + 91320*f^3*g^2 + 91320*f^2*g^3 + 4620*f*g^4 + 60*g^5 \
     - 20667*f^4 + 48228*f^3*g + 141678*f^2*g^2 + 48228*f*g^3 - 20667*g^4 \
     - 35620*f^3 + 72420*f^2*g + 72420*f*g^2 - 35620*g^3 \
     - 20667*f^2 + 46254*f*g - 20667*g^2 + 60*f + 60*g + 1",
];

/// Quartic left on the f = -2 branch after the squared a3 is factored out.
pub const PHI1_SRC: &str = "((3*g + 7)*a1 - (g + 2)*(g - 1)*a3) \
    * ((3*g + 87)*a1^3 - (g^2 + 115*g + 64)*a1^2*a3 \
       + (19*g + 11)*(2*g + 1)*a1*a3^2 - (g + 2)*(g - 1)*a3^3)";

/// Second vanishing condition on the f = -2 branch, as printed.
pub const SECOND_CONDITION_FACTORS_SRC: [&str; 7] = [
    "(g - 1)^4",
    "(g + 1)^2",
    "(g + 2)^4",
    "(g + 3)^2",
    "(g + 4)^2",
    "(2*g + 3)^2",
    "g^4 - 226*g^3 - 300*g^2 - 130*g - 155",
];

/// The printed conic parametrization and its square root.
pub const CONIC_SRC: &str = "21*a1^2 + 2*a1*a3 + a3^2";
pub const CONIC_ALPHA1_SRC: &str = "2*t + 2";
pub const CONIC_ALPHA3_SRC: &str = "t^2 - 21";
pub const CONIC_SQRT_SRC: &str = "t^2 + 2*t + 21";
pub const CONIC_ALPHA2_SRC: &str = "-t^2 - 4*t + 17";

/// The four printed quartic half-families (x1..x4 then y1..y4 each).
pub const FAMILY_SRC: [[&str; 8]; 4] = [
    [
        "t^4 + 6*t^3 - 32*t^2 - 158*t + 279",
        "4*t^3 + 28*t^2 + 4*t - 420",
        "t^4 + 6*t^3 - 4*t^2 - 102*t - 93",
        "t^4 - 50*t^2 - 56*t + 393",
        "t^4 + 8*t^3 - 26*t^2 - 112*t + 321",
        "t^4 + 2*t^3 - 16*t^2 + 46*t + 63",
        "4*t^3 - 4*t^2 - 60*t + 348",
        "t^4 + 2*t^3 - 44*t^2 - 10*t + 435",
    ],
    [
        "3*t^4 + 40*t^3 - 274*t^2 + 48*t + 1383",
        "t^4 - 88*t^3 - 214*t^2 + 736*t - 675",
        "7*t^4 + 14*t^3 - 152*t^2 + 962*t + 609",
        "4*t^4 - 70*t^3 + 46*t^2 + 254*t - 1914",
        "4*t^4 - 6*t^3 - 274*t^2 - 642*t + 1158",
        "3*t^4 - 92*t^3 - 62*t^2 + 676*t + 1155",
        "7*t^4 + 12*t^3 - 14*t^2 - 1124*t - 81",
        "t^4 + 66*t^3 + 184*t^2 + 238*t - 1929",
    ],
    [
        "2*t^4 + 42*t^3 - 170*t^2 + 942*t - 48",
        "t^4 - 84*t^3 - 242*t^2 - 68*t - 1911",
        "5*t^4 + 12*t^3 - 10*t^2 + 1724*t + 1341",
        "3*t^4 - 58*t^3 + 92*t^2 - 310*t - 1263",
        "3*t^4 - 16*t^3 - 170*t^2 - 1320*t - 1569",
        "2*t^4 - 86*t^3 - 106*t^2 - 146*t + 1872",
        "5*t^4 + 10*t^3 + 164*t^2 - 1562*t - 921",
        "t^4 + 56*t^3 + 266*t^2 + 928*t - 483",
    ],
    [
        "4*t^4 + 18*t^3 + 34*t^2 + 526*t + 378",
        "3*t^4 + 16*t^3 - 86*t^2 - 32*t + 579",
        "t^4 - 12*t^3 + 74*t^2 + 1020*t + 1317",
        "2*t^4 + 42*t^3 + 110*t^2 + 230*t + 1056",
        "4*t^4 + 14*t^3 - 122*t^2 - 958*t - 1338",
        "2*t^4 - 14*t^3 - 242*t^2 - 658*t - 48",
        "3*t^4 + 40*t^3 + 74*t^2 - 696*t - 861",
        "t^4 + 44*t^3 + 202*t^2 + 164*t - 891",
    ],
];

/// The printed t = 2 numerical example.
pub const T2_INSTANCE: ([i64; 4], [i64; 4]) = ([101, 268, 249, 97], [73, 123, 244, 271]);

// ---------------------------------------------------------------------------
// Parsed accessors
// ---------------------------------------------------------------------------

pub fn base_entries() -> &'static [Poly; 8] {
    static CELL: OnceLock<[Poly; 8]> = OnceLock::new();
    CELL.get_or_init(|| std::array::from_fn(|i| parse(BASE_ENTRIES_SRC[i])))
}

pub fn quadratic_q() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(Q_SRC))
}

pub fn quartic_k() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(K_SRC))
}

/// Product form of the sextic surface: Q * K.
pub fn phi_product() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| quadratic_q().mul(quartic_k()))
}

pub fn phi_collected() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(PHI_COLLECTED_SRC))
}

/// The full factored r = 6 residual, constant included.
pub fn r6_product() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut acc = Poly::constant(R6_CONSTANT);
        for src in R6_FACTORS_SRC {
            acc = acc.mul(&parse(src));
        }
        acc
    })
}

/// The printed first condition (product of all factors, no constant).
pub fn first_condition_product() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut acc = Poly::one();
        for src in FIRST_CONDITION_FACTORS_SRC {
            acc = acc.mul(&parse(src));
        }
        acc
    })
}

pub fn phi1() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(PHI1_SRC))
}

/// The printed second condition on the f = -2 branch (no constant).
pub fn second_condition_product() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut acc = Poly::one();
        for src in SECOND_CONDITION_FACTORS_SRC {
            acc = acc.mul(&parse(src));
        }
        acc
    })
}

pub fn conic() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(CONIC_SRC))
}

pub fn conic_alpha1() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(CONIC_ALPHA1_SRC))
}

pub fn conic_alpha3() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(CONIC_ALPHA3_SRC))
}

pub fn conic_sqrt() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(CONIC_SQRT_SRC))
}

pub fn conic_alpha2() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| parse(CONIC_ALPHA2_SRC))
}

/// Built-in family by print order (1-based index 1..=4), symmetric-extended.
pub fn builtin_family(index: usize) -> SolutionFamily {
    assert!((1..=4).contains(&index), "builtin family index is 1..=4");
    let srcs = &FAMILY_SRC[index - 1];
    let half = HalfFamily {
        xs: std::array::from_fn(|i| parse(srcs[i])),
        ys: std::array::from_fn(|i| parse(srcs[i + 4])),
    };
    half.extend_symmetric(&format!("builtin:{}", index))
}

pub fn t2_half_instance() -> HalfInstance {
    HalfInstance {
        xs: T2_INSTANCE.0.map(BigInt::from),
        ys: T2_INSTANCE.1.map(BigInt::from),
    }
}

/// FNV-1a checksum over the canonical serializations of every fixture.
/// Guards the stored data against accidental edits; the expected value is
/// pinned in the tests.
pub fn checksum() -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |s: &str| {
        for b in s.bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for p in base_entries() {
        feed(&p.to_string());
    }
    feed(&r6_product().to_string());
    feed(&phi_product().to_string());
    feed(&phi_collected().to_string());
    feed(&first_condition_product().to_string());
    feed(&phi1().to_string());
    feed(&second_condition_product().to_string());
    feed(&conic().to_string());
    feed(&conic_alpha1().to_string());
    feed(&conic_alpha3().to_string());
    feed(&conic_sqrt().to_string());
    feed(&conic_alpha2().to_string());
    for i in 1..=4 {
        let fam = builtin_family(i);
        for p in fam.xs.iter().chain(fam.ys.iter()) {
            feed(&p.to_string());
        }
    }
    let inst = t2_half_instance();
    for v in inst.xs.iter().chain(inst.ys.iter()) {
        feed(&v.to_string());
    }
    hash
}
