//! The construction engine: from the base solution through both
//! discriminant-vanishing stages to assembled quartic families.
//!
//! The walk is: take the stored base solution (linear in m, n), expand its
//! r = 6 residual and keep the last factor `Q m^2 - K n^2`; setting
//! `m = n y / Q` turns it into `y^2 = phi` with `phi = Q K`, a quartic in
//! `a2` whose constant term is already a perfect square. Substituting
//! `a2 = f a1 + g a3` makes `phi` a homogeneous sextic in `(a1, a3)`; forcing
//! its a1-discriminant to vanish (ten linear factors are available) pulls
//! out a squared factor and leaves a quartic; one more vanishing condition
//! on the remaining parameter leaves a quadratic, and any rational point on
//! `y^2 = quadratic` gives polynomial values of `(a1, a3)`, hence of
//! everything, in one parameter `t`. Dividing common factors out of the
//! eight entries yields the quartic families.

use crate::fixtures;
use crate::gcd::{gcd_full, poly_sqrt, squarefree_split_all, RationalPoly};
use crate::poly::Poly;
use crate::resultant::discriminant;
use crate::tep::{HalfFamily, SolutionFamily};
use crate::vars::{VarId, A1, A2, A3, F, G, N, T, Y};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("no squared factor appears on this branch")]
    NoSquaredFactor,
    #[error("stage-one cofactor has degree {0}, expected a quartic")]
    DegenerateCofactor(u32),
    #[error("no rational point found on y^2 = {0}")]
    NoRationalPoint(Poly),
    #[error("the assembled family is trivial (equal sides)")]
    TrivialFamily,
    #[error("phi fails to become a perfect square after substitution")]
    NotASquare,
    #[error("all assembled entries vanish identically")]
    ZeroFamily,
    #[error("assembled family fails the multigrade check at degree {0}")]
    Verification(u32),
    #[error("the chosen root does not annihilate the second condition")]
    RootMismatch,
}

// ---------------------------------------------------------------------------
// Base solution and the sextic surface
// ---------------------------------------------------------------------------

/// The stored base solution: eight entries linear in (m, n), solving the
/// four-term system for r = 1, 2, 4.
pub fn rmjm_base() -> &'static [Poly; 8] {
    fixtures::base_entries()
}

/// The fully expanded r = 6 residual `sum x_i^6 - sum y_i^6` of the base.
pub fn residual_r6() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| {
        let base = rmjm_base();
        let mut acc = Poly::zero();
        for p in &base[..4] {
            acc = acc.add(&p.pow(6));
        }
        for p in &base[4..] {
            acc = acc.sub(&p.pow(6));
        }
        acc
    })
}

/// The last factor `Q m^2 - K n^2` of the r = 6 residual, obtained by exact
/// division by the trivial factors.
pub fn last_factor() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut rem = residual_r6().clone();
        let trivial = [
            "m",
            "n",
            "a1^2 - a3^2",
            "a1 + a2",
            "a1 + 2*a2 + a3",
            "a2 + a3",
            "m^2 - 9*(a1 + a3)^2*n^2",
        ];
        for src in trivial {
            let f: Poly = src.parse().unwrap();
            rem = rem
                .divide_exact(&f)
                .expect("trivial factor divides the r=6 residual");
        }
        rem.divide_exact(&Poly::constant(-12))
            .expect("residual constant is -12")
    })
}

/// The quadratic `Q` (coefficient of m^2 in the last factor).
pub fn quadratic_q() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| last_factor().coeff_in(crate::vars::M, 2))
}

/// The quartic `K` (negated coefficient of n^2 in the last factor).
pub fn quartic_k() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| last_factor().coeff_in(N, 2).neg())
}

/// Solving the last factor for m: `m = n y / Q`.
pub fn solve_m() -> RationalPoly {
    let num = Poly::var(N).mul(&Poly::var(Y));
    RationalPoly::new(num, quadratic_q().clone()).expect("Q is nonzero")
}

/// The sextic surface `phi = Q * K` with `y^2 = phi`.
pub fn phi() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| quadratic_q().mul(quartic_k()))
}

/// `phi` after `a2 = f a1 + g a3`, both parameters symbolic: a homogeneous
/// sextic in `(a1, a3)` with coefficients in `(f, g)`.
pub fn substituted_phi_symbolic() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| {
        let repl = Poly::var(F)
            .mul(&Poly::var(A1))
            .add(&Poly::var(G).mul(&Poly::var(A3)));
        phi().substitute(A2, &repl)
    })
}

/// `phi` after `a2 = f0 a1 + g0 a3` at rational values. To stay integral the
/// whole (a1, a2, a3) vector is scaled by the common denominator `d`, which
/// multiplies `phi` by the square `d^6` and changes nothing downstream.
pub fn substituted_phi_at(f0: &BigRational, g0: &BigRational) -> Poly {
    let d = f0.denom().lcm(g0.denom());
    let a1d = Poly::var(A1).mul_scalar(&d);
    let a3d = Poly::var(A3).mul_scalar(&d);
    let fa = (f0 * BigRational::from_integer(d.clone())).to_integer();
    let ga = (g0 * BigRational::from_integer(d.clone())).to_integer();
    let a2d = Poly::var(A1)
        .mul_scalar(&fa)
        .add(&Poly::var(A3).mul_scalar(&ga));
    phi().substitute_all(&[(A1, &a1d), (A2, &a2d), (A3, &a3d)])
}

/// Strip the maximal pure powers of a1 and a3; returns (a1 power, a3 power,
/// stripped polynomial).
pub fn strip_pure_powers(p: &Poly) -> (u32, u32, Poly) {
    if p.is_zero() {
        return (0, 0, Poly::zero());
    }
    let j = p.min_degree_in(A1);
    let k = p.min_degree_in(A3);
    let d = Poly::var_pow(A1, j as u16).mul(&Poly::var_pow(A3, k as u16));
    (j, k, p.divide_exact(&d).expect("pure powers divide"))
}

/// First vanishing condition: the a1-discriminant of the substituted sextic
/// with symbolic f, g, pure powers stripped. This is the heaviest symbolic
/// computation in the crate and is cached.
pub fn first_condition() -> &'static Poly {
    static CELL: OnceLock<Poly> = OnceLock::new();
    CELL.get_or_init(|| {
        let disc = discriminant(substituted_phi_symbolic(), A1).expect("sextic in a1");
        let (_, _, stripped) = strip_pure_powers(&disc);
        stripped
    })
}

// ---------------------------------------------------------------------------
// Branches
// ---------------------------------------------------------------------------

/// One of the ten linear factors of the first condition, read as a
/// substitution that fixes one parameter in terms of the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub index: usize,
    pub factor_src: &'static str,
    pub fixed: VarId,
    pub replacement_src: &'static str,
    pub free: VarId,
}

impl Branch {
    pub fn replacement(&self) -> Poly {
        self.replacement_src.parse().unwrap()
    }

    pub fn factor(&self) -> Poly {
        self.factor_src.parse().unwrap()
    }

    /// Resolve (f0, g0) once the free parameter takes a value.
    pub fn values_at(&self, root: &BigRational) -> (BigRational, BigRational) {
        let fixed_val = eval_univariate_rational(&self.replacement(), self.free, root);
        match self.fixed {
            v if v == F => (fixed_val, root.clone()),
            _ => (root.clone(), fixed_val),
        }
    }

    /// Substitution label like `f = -2` or `g = 2*f + 1`.
    pub fn substitution(&self) -> String {
        format!("{} = {}", self.fixed, self.replacement_src)
    }
}

/// The ten linear-factor branches in print order. Each is solved for
/// whichever parameter carries a unit coefficient, keeping the replacement
/// integral.
pub fn linear_factor_choices() -> Vec<Branch> {
    let spec: [(&str, VarId, &str, VarId); 10] = [
        ("f + 2", F, "-2", G),
        ("f - 1", F, "1", G),
        ("f - g", F, "g", G),
        ("2*f - g", G, "2*f", F),
        ("f - 2*g", F, "2*g", G),
        ("f + g + 1", F, "-g - 1", G),
        ("f - 2*g - 1", F, "2*g + 1", G),
        ("2*f - g + 1", G, "2*f + 1", F),
        ("g + 2", G, "-2", F),
        ("g - 1", G, "1", F),
    ];
    spec.iter()
        .enumerate()
        .map(|(i, &(fsrc, fixed, rsrc, free))| Branch {
            index: i,
            factor_src: fsrc,
            fixed,
            replacement_src: rsrc,
            free,
        })
        .collect()
}

/// A fully specified pipeline branch: linear factor plus stage-two root.
#[derive(Clone, Debug)]
pub struct BranchChoice {
    pub branch: Branch,
    pub second_root: BigRational,
}

impl BranchChoice {
    /// Validated constructor: the root must annihilate the branch's second
    /// condition exactly.
    pub fn new(branch: Branch, second_root: BigRational) -> Result<BranchChoice, PipelineError> {
        if !root_satisfies_condition(&branch, &second_root) {
            return Err(PipelineError::RootMismatch);
        }
        Ok(BranchChoice {
            branch,
            second_root,
        })
    }

    /// Walk stage two for this fully specified choice.
    pub fn run(&self) -> Result<RootOutcome, PipelineError> {
        let red = reduce_once(&self.branch)?;
        Ok(run_root(&self.branch, &red, &self.second_root))
    }
}

/// Result of the first reduction: the substituted sextic splits as
/// `a1^stripped_a1 * a3^stripped_a3 * square_part^2 * cofactor`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub stripped_a1: u32,
    pub stripped_a3: u32,
    pub square_part: Poly,
    pub cofactor: Poly,
}

impl Reduction {
    /// Degree of the cofactor in (a1, a3); 4 on the productive branches.
    pub fn cofactor_degree(&self) -> u32 {
        self.cofactor
            .terms()
            .map(|(m, _)| m.exp(A1) as u32 + m.exp(A3) as u32)
            .max()
            .unwrap_or(0)
    }
}

/// Factor the squared part out of the substituted sextic on one branch.
pub fn reduce_once(branch: &Branch) -> Result<Reduction, PipelineError> {
    let sub = substituted_phi_symbolic().substitute(branch.fixed, &branch.replacement());
    let (j, k, stripped) = strip_pure_powers(&sub);
    let (s, c) = squarefree_split_all(&stripped);
    if j < 2 && k < 2 && s.is_constant() {
        return Err(PipelineError::NoSquaredFactor);
    }
    Ok(Reduction {
        stripped_a1: j,
        stripped_a3: k,
        square_part: s,
        cofactor: c,
    })
}

/// Second vanishing condition: the a1-discriminant of the stage-one quartic
/// cofactor, pure powers stripped; a polynomial in the branch's free
/// parameter.
pub fn second_condition(branch: &Branch) -> Result<Poly, PipelineError> {
    let red = reduce_once(branch)?;
    second_condition_of(&red)
}

pub fn second_condition_of(red: &Reduction) -> Result<Poly, PipelineError> {
    if red.cofactor.degree_in(A1) < 2 {
        return Err(PipelineError::DegenerateCofactor(red.cofactor.degree_in(A1)));
    }
    let disc = discriminant(&red.cofactor, A1).expect("degree checked");
    let (_, _, stripped) = strip_pure_powers(&disc);
    Ok(stripped)
}

// ---------------------------------------------------------------------------
// Rational roots
// ---------------------------------------------------------------------------

fn eval_univariate_rational(p: &Poly, v: VarId, at: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        debug_assert!(m.without(v).is_one(), "polynomial must be univariate");
        let k = m.exp(v) as u32;
        total += BigRational::from_integer(c.clone()) * at.pow(k as i32);
    }
    total
}

/// All positive divisors of |n| by trial division. Divisors with a prime
/// factor beyond the trial bound are unreachable, which only matters for
/// roots of astronomically large height; every candidate is verified by
/// exact evaluation anyway.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &d * &d <= m && d <= bound {
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for q in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(q * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Exact rational roots of a univariate polynomial: squarefree reduction,
/// then the rational root test with every candidate verified by exact
/// evaluation. No general factorization. Sorted by (denominator, numerator).
pub fn rational_roots(p: &Poly, v: VarId) -> Vec<BigRational> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    let mut roots: Vec<BigRational> = Vec::new();
    let k = p.min_degree_in(v);
    if k > 0 {
        roots.push(BigRational::zero());
    }
    let stripped = p
        .divide_exact(&Poly::var_pow(v, k as u16))
        .expect("pure power divides");
    if stripped.is_constant() {
        roots.sort();
        return roots;
    }
    // squarefree part keeps the roots and shrinks the coefficients
    let g = crate::gcd::gcd(&stripped, &stripped.derivative(v));
    let sf = stripped.divide_exact(&g).expect("gcd divides");
    let (_, sf) = sf.content_primitive().expect("nonzero");
    let deg = sf.degree_in(v);
    let lead = sf.coeff_in(v, deg as u16).as_constant().expect("univariate");
    let tail = sf.coeff_in(v, 0).as_constant().expect("univariate");
    debug_assert!(!tail.is_zero());
    for num in divisors(&tail) {
        for den in divisors(&lead) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(&num * BigInt::from(sign), den.clone());
                if eval_univariate_rational(&sf, v, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort_by(|a, b| (a.denom(), a.numer()).cmp(&(b.denom(), b.numer())));
    roots
}

// ---------------------------------------------------------------------------
// Conic parametrization
// ---------------------------------------------------------------------------

/// How the rational point on the conic was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamMethod {
    /// The quadratic is itself a perfect square; any line works.
    PerfectSquareLine,
    /// The a1^2 coefficient is a square: point at (1, 0).
    AxisA1,
    /// The a3^2 coefficient is a square: point at (0, 1).
    AxisA3,
    /// The discriminant is a square: the form has a rational zero.
    SplitConic,
}

impl std::fmt::Display for ParamMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ParamMethod::PerfectSquareLine => "perfect-square",
            ParamMethod::AxisA1 => "a1-axis",
            ParamMethod::AxisA3 => "a3-axis",
            ParamMethod::SplitConic => "split-conic",
        };
        f.write_str(s)
    }
}

/// Polynomial parametrization of `y^2 = q(a1, a3)`.
#[derive(Clone, Debug)]
pub struct ConicParam {
    pub alpha1: Poly,
    pub alpha3: Poly,
    pub y: Poly,
    pub method: ParamMethod,
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Parametrize `y^2 = q` for a homogeneous quadratic `q` in (a1, a3), by a
/// line through a rational point. Points are searched on the axes first,
/// then via the completed discriminant; anything further is out of reach by
/// design and reported as `NoRationalPoint`.
pub fn parametrize_square(q: &Poly) -> Result<ConicParam, PipelineError> {
    assert!(
        q.vars().iter().all(|&v| v == A1 || v == A3) && q.total_degree() == 2,
        "expected a quadratic in (a1, a3), got {}",
        q
    );
    let a = q.coeff_in(A1, 2).as_constant().unwrap_or_default();
    let b = q
        .coeff_in(A1, 1)
        .coeff_in(A3, 1)
        .as_constant()
        .unwrap_or_default();
    let c = q.coeff_in(A3, 2).as_constant().unwrap_or_default();
    let t = Poly::var(T);
    let finish = |alpha1: Poly, alpha3: Poly, method: ParamMethod| -> ConicParam {
        let qt = q.substitute_all(&[(A1, &alpha1), (A3, &alpha3)]);
        let y = poly_sqrt(&qt).expect("line through a conic point yields a square");
        ConicParam {
            alpha1,
            alpha3,
            y,
            method,
        }
    };
    if let Some(root) = poly_sqrt(q) {
        let y = root.substitute_all(&[(A1, &t), (A3, &Poly::one())]);
        return Ok(ConicParam {
            alpha1: t,
            alpha3: Poly::one(),
            y,
            method: ParamMethod::PerfectSquareLine,
        });
    }
    if let Some(sa) = int_sqrt_exact(&a) {
        // point (a1, a3, y) = (1, 0, sa)
        let alpha1 = Poly::constant(c.clone()).sub(&Poly::var_pow(T, 2));
        let alpha3 = Poly::var(T)
            .mul_scalar(&(BigInt::from(2) * &sa))
            .sub(&Poly::constant(b.clone()));
        return Ok(finish(alpha1, alpha3, ParamMethod::AxisA1));
    }
    if let Some(sc) = int_sqrt_exact(&c) {
        // point (a1, a3, y) = (0, 1, sc)
        let alpha1 = Poly::var(T)
            .mul_scalar(&(BigInt::from(2) * &sc))
            .sub(&Poly::constant(b.clone()));
        let alpha3 = Poly::constant(a.clone()).sub(&Poly::var_pow(T, 2));
        return Ok(finish(alpha1, alpha3, ParamMethod::AxisA3));
    }
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if let Some(s) = int_sqrt_exact(&disc) {
        // rational zero of the form: (x0, z0, 0) with x0 = -(b+s), z0 = 2a
        let mut x0 = -(&b + &s);
        let mut z0 = BigInt::from(2) * &a;
        let g = x0.gcd(&z0);
        if !g.is_zero() {
            x0 /= &g;
            z0 /= &g;
        }
        let alpha1 = Poly::var_pow(T, 2)
            .mul_scalar(&-&x0)
            .sub(&Poly::constant(&a * &x0 + &b * &z0));
        let alpha3 = Poly::constant(&a * &z0).sub(&Poly::var_pow(T, 2).mul_scalar(&z0));
        return Ok(finish(alpha1, alpha3, ParamMethod::SplitConic));
    }
    Err(PipelineError::NoRationalPoint(q.clone()))
}

// ---------------------------------------------------------------------------
// Family assembly
// ---------------------------------------------------------------------------

/// The live symbols of a completed derivation, stage by stage.
#[derive(Clone, Debug)]
pub struct PipelineState {
    pub f_choice: BigRational,
    pub g_choice: BigRational,
    /// Stage-one cofactor (the quartic left after the squared factor).
    pub phi1: Poly,
    /// The final quadratic handed to the conic parametrization.
    pub conic: Poly,
    pub alpha1: Poly,
    pub alpha2: Poly,
    pub alpha3: Poly,
    pub y_sqrt: Poly,
    pub m_of_t: Poly,
    pub n_of_t: Poly,
}

/// A family together with the derivation state that produced it.
#[derive(Clone, Debug)]
pub struct DerivedFamily {
    pub family: SolutionFamily,
    pub state: PipelineState,
    pub method: ParamMethod,
}

fn mul_rational_exact(p: &Poly, r: &BigRational) -> Poly {
    let num = p.mul_scalar(r.numer());
    num.divide_exact(&Poly::constant(r.denom().clone()))
        .expect("denominator divides after scaling")
}

/// Assemble the family for fixed rational (f0, g0) and a parametrization of
/// the final quadratic. Scales `(a1, a2, a3)` by the common denominator of
/// (f0, g0), takes `m = y(t), n = Q(t)` (the base is linear homogeneous in
/// (m, n), so the scale is free), and divides the eight entries by their
/// common polynomial GCD and integer content.
pub fn build_family(
    f0: &BigRational,
    g0: &BigRational,
    param: &ConicParam,
    label: &str,
) -> Result<(SolutionFamily, PipelineState), PipelineError> {
    let d = f0.denom().lcm(g0.denom());
    let alpha1 = param.alpha1.mul_scalar(&d);
    let alpha3 = param.alpha3.mul_scalar(&d);
    let alpha2 = mul_rational_exact(&alpha1, f0).add(&mul_rational_exact(&alpha3, g0));

    let subs: [(VarId, &Poly); 3] = [(A1, &alpha1), (A2, &alpha2), (A3, &alpha3)];
    let phi_t = phi().substitute_all(&subs);
    let y_t = poly_sqrt(&phi_t).ok_or(PipelineError::NotASquare)?;
    let m_t = y_t.clone();
    let n_t = quadratic_q().substitute_all(&subs);

    let full_subs: [(VarId, &Poly); 5] = [
        (A1, &alpha1),
        (A2, &alpha2),
        (A3, &alpha3),
        (crate::vars::M, &m_t),
        (N, &n_t),
    ];
    let entries: Vec<Poly> = rmjm_base()
        .iter()
        .map(|p| p.substitute_all(&full_subs))
        .collect();
    if entries.iter().all(|p| p.is_zero()) {
        return Err(PipelineError::ZeroFamily);
    }
    let mut g = Poly::zero();
    for e in &entries {
        g = gcd_full(&g, e);
    }
    let reduced: Vec<Poly> = entries
        .iter()
        .map(|e| e.divide_exact(&g).expect("gcd divides"))
        .collect();
    let half = HalfFamily {
        xs: std::array::from_fn(|i| reduced[i].clone()),
        ys: std::array::from_fn(|i| reduced[i + 4].clone()),
    };
    let fam = half.extend_symmetric(label);
    let report = fam.verify(&(1..=7).collect());
    if let Some((r, _)) = report.first_failure {
        return Err(PipelineError::Verification(r));
    }
    if report.trivial {
        return Err(PipelineError::TrivialFamily);
    }
    let state = PipelineState {
        f_choice: f0.clone(),
        g_choice: g0.clone(),
        phi1: Poly::zero(), // branch context, filled by run_root
        conic: Poly::zero(),
        alpha1,
        alpha2,
        alpha3,
        y_sqrt: y_t,
        m_of_t: m_t,
        n_of_t: n_t,
    };
    Ok((fam, state))
}

// ---------------------------------------------------------------------------
// Branch walk and enumeration
// ---------------------------------------------------------------------------

/// Outcome of one (branch, root) pair.
#[derive(Clone, Debug)]
pub enum RootResult {
    Family(Box<DerivedFamily>),
    Trivial(u32),
    QuarticVanishes,
    CofactorDegenerate { degree: u32 },
    NoRationalPoint(Poly),
    NotASquare,
    ZeroFamily,
}

impl RootResult {
    pub fn label(&self) -> String {
        match self {
            RootResult::Family(d) => format!("family[{}] via {}", d.family.label, d.method),
            RootResult::Trivial(d) => format!("trivial (degree {})", d),
            RootResult::QuarticVanishes => "quartic vanishes identically".into(),
            RootResult::CofactorDegenerate { degree: 4 } => {
                "no squared factor at this root (second condition unsatisfied)".into()
            }
            RootResult::CofactorDegenerate { degree } => {
                format!("final cofactor degenerate (degree {})", degree)
            }
            RootResult::NoRationalPoint(q) => format!("no rational point on y^2 = {}", q),
            RootResult::NotASquare => "phi not a perfect square".into(),
            RootResult::ZeroFamily => "all entries vanish".into(),
        }
    }

    pub fn family(&self) -> Option<&SolutionFamily> {
        match self {
            RootResult::Family(d) => Some(&d.family),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootOutcome {
    pub root: BigRational,
    pub f0: BigRational,
    pub g0: BigRational,
    pub result: RootResult,
}

/// Everything that happened on one branch.
#[derive(Clone, Debug)]
pub struct BranchReport {
    pub branch: Branch,
    pub reduction: Option<Reduction>,
    pub second_condition: Option<Poly>,
    pub roots: Vec<RootOutcome>,
    pub failure: Option<PipelineError>,
}

/// Stage two at one root: substitute, split the square, parametrize, build.
pub fn run_root(branch: &Branch, red: &Reduction, root: &BigRational) -> RootOutcome {
    let (f0, g0) = branch.values_at(root);
    let result = run_root_inner(branch, red, root, &f0, &g0);
    RootOutcome {
        root: root.clone(),
        f0,
        g0,
        result,
    }
}

fn run_root_inner(
    branch: &Branch,
    red: &Reduction,
    root: &BigRational,
    f0: &BigRational,
    g0: &BigRational,
) -> RootResult {
    // substitute the root into the quartic cofactor; clear denominators by
    // den^deg, then pull the integer square part back out so the remaining
    // quadratic is the honest conic modulo rational squares
    let den = root.denom();
    let deg_free = red.cofactor.degree_in(branch.free);
    let mut quartic = Poly::zero();
    for (m, c) in red.cofactor.terms() {
        let k = m.exp(branch.free) as u32;
        let scaled = c * root.numer().pow(k) * den.pow(deg_free - k);
        quartic = quartic.add(&Poly::term(scaled, m.without(branch.free)));
    }
    if quartic.is_zero() {
        return RootResult::QuarticVanishes;
    }
    let (_, conic) = squarefree_split_all(&quartic);
    let cdeg = conic.total_degree();
    if cdeg != 2 {
        return RootResult::CofactorDegenerate { degree: cdeg };
    }
    let param = match parametrize_square(&conic) {
        Ok(p) => p,
        Err(PipelineError::NoRationalPoint(q)) => return RootResult::NoRationalPoint(q),
        Err(_) => unreachable!("parametrize_square only fails with NoRationalPoint"),
    };
    let label = format!("derived:{},{}={}", branch.factor_src, branch.free, root);
    match build_family(f0, g0, &param, &label) {
        Ok((fam, mut state)) => {
            state.phi1 = red.cofactor.clone();
            state.conic = conic;
            RootResult::Family(Box::new(DerivedFamily {
                family: fam,
                state,
                method: param.method,
            }))
        }
        Err(PipelineError::TrivialFamily) => {
            // rebuild without the triviality gate to report the degree
            RootResult::Trivial(trivial_family_degree(f0, g0, &param))
        }
        Err(PipelineError::NotASquare) => RootResult::NotASquare,
        Err(PipelineError::ZeroFamily) => RootResult::ZeroFamily,
        Err(e) => panic!("unexpected assembly failure: {}", e),
    }
}

fn trivial_family_degree(f0: &BigRational, g0: &BigRational, param: &ConicParam) -> u32 {
    // mirror of build_family up to the entries, for reporting only
    let d = f0.denom().lcm(g0.denom());
    let alpha1 = param.alpha1.mul_scalar(&d);
    let alpha3 = param.alpha3.mul_scalar(&d);
    let alpha2 = mul_rational_exact(&alpha1, f0).add(&mul_rational_exact(&alpha3, g0));
    let subs: [(VarId, &Poly); 3] = [(A1, &alpha1), (A2, &alpha2), (A3, &alpha3)];
    let phi_t = phi().substitute_all(&subs);
    let y_t = poly_sqrt(&phi_t).unwrap_or_else(Poly::zero);
    let n_t = quadratic_q().substitute_all(&subs);
    let full: [(VarId, &Poly); 5] = [
        (A1, &alpha1),
        (A2, &alpha2),
        (A3, &alpha3),
        (crate::vars::M, &y_t),
        (N, &n_t),
    ];
    let entries: Vec<Poly> = rmjm_base().iter().map(|p| p.substitute_all(&full)).collect();
    let mut g = Poly::zero();
    for e in &entries {
        g = gcd_full(&g, e);
    }
    entries
        .iter()
        .map(|e| {
            e.divide_exact(&g)
                .map(|q| q.degree_in(T))
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Walk one branch end to end.
pub fn run_branch(branch: &Branch) -> BranchReport {
    let red = match reduce_once(branch) {
        Ok(r) => r,
        Err(e) => {
            return BranchReport {
                branch: branch.clone(),
                reduction: None,
                second_condition: None,
                roots: Vec::new(),
                failure: Some(e),
            }
        }
    };
    let cond = match second_condition_of(&red) {
        Ok(c) => c,
        Err(e) => {
            return BranchReport {
                branch: branch.clone(),
                reduction: Some(red),
                second_condition: None,
                roots: Vec::new(),
                failure: Some(e),
            }
        }
    };
    let roots = rational_roots(&cond, branch.free);
    let outcomes: Vec<RootOutcome> = roots.iter().map(|r| run_root(branch, &red, r)).collect();
    BranchReport {
        branch: branch.clone(),
        reduction: Some(red),
        second_condition: Some(cond),
        roots: outcomes,
        failure: None,
    }
}

/// Full enumeration: every branch, every rational root, deduplicated into
/// equivalence classes. Deterministic: branch order is print order, root
/// order is (denominator, numerator).
pub struct Enumeration {
    pub reports: Vec<BranchReport>,
    /// One representative per equivalence class, in discovery order.
    pub classes: Vec<SolutionFamily>,
    /// (branch index, root) of each class representative.
    pub class_origins: Vec<(usize, BigRational)>,
}

pub fn enumerate_families() -> Enumeration {
    let mut reports = Vec::new();
    let mut classes: Vec<SolutionFamily> = Vec::new();
    let mut origins = Vec::new();
    for branch in linear_factor_choices() {
        let report = run_branch(&branch);
        for out in &report.roots {
            if let Some(fam) = out.result.family() {
                if !classes.iter().any(|c| equivalent(c, fam)) {
                    classes.push(fam.clone());
                    origins.push((branch.index, out.root.clone()));
                }
            }
        }
        reports.push(report);
    }
    Enumeration {
        reports,
        classes,
        class_origins: origins,
    }
}

// ---------------------------------------------------------------------------
// Family equivalence
// ---------------------------------------------------------------------------

type RatCoeffs = Vec<BigRational>; // ascending

fn rat_coeffs(p: &Poly) -> RatCoeffs {
    let d = p.degree_in(T) as usize;
    let mut out = vec![BigRational::zero(); d + 1];
    for (m, c) in p.terms() {
        out[m.exp(T) as usize] = BigRational::from_integer(c.clone());
    }
    out
}

/// Coefficients of p(a t + b), ascending.
fn compose_affine(coeffs: &[BigRational], a: &BigRational, b: &BigRational) -> RatCoeffs {
    // Horner: result = (..(c_d * (a t + b) + c_{d-1}) * (a t + b) ..)
    let mut acc: RatCoeffs = vec![BigRational::zero()];
    for c in coeffs.iter().rev() {
        // acc = acc * (a t + b) + c
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (i, v) in acc.iter().enumerate() {
            next[i] += v * b;
            next[i + 1] += v * a;
        }
        next[0] += c;
        while next.len() > 1 && next.last().unwrap().is_zero() {
            next.pop();
        }
        acc = next;
    }
    acc
}

fn scale_coeffs(coeffs: &[BigRational], lam: &BigRational) -> RatCoeffs {
    coeffs.iter().map(|c| c * lam).collect()
}

/// Shift that kills the subleading coefficient of a degree-d polynomial.
fn depress_shift(coeffs: &[BigRational]) -> BigRational {
    let d = coeffs.len() - 1;
    if d == 0 {
        return BigRational::zero();
    }
    -(&coeffs[d - 1] / (&coeffs[d] * BigRational::from_integer(BigInt::from(d as i64))))
}

fn nth_root_rational(r: &BigRational, n: u32) -> Option<BigRational> {
    let (num, den) = (r.numer(), r.denom());
    if num.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let nr = num.abs().nth_root(n);
    if nr.pow(n) != num.abs() {
        return None;
    }
    let dr = den.nth_root(n);
    if dr.pow(n) != *den {
        return None;
    }
    let signed = if num.is_negative() { -nr } else { nr };
    Some(BigRational::new(signed, dr))
}

/// Candidate transforms (a, b, lambda) with `q(t) = lambda p(a t + b)`,
/// extracted from the depressed coefficient ratios of one entry pair.
fn candidates_from_pair(p: &RatCoeffs, q: &RatCoeffs) -> Vec<(BigRational, BigRational, BigRational)> {
    let d = p.len() - 1;
    if d == 0 || q.len() != p.len() {
        return Vec::new();
    }
    let mu_p = depress_shift(p);
    let mu_q = depress_shift(q);
    let pd = compose_affine(p, &BigRational::one(), &mu_p);
    let qd = compose_affine(q, &BigRational::one(), &mu_q);
    let mut out = Vec::new();
    for k in (0..d).rev() {
        let (al, be) = (&pd[k], &qd[k]);
        match (al.is_zero(), be.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return Vec::new(), // support mismatch
            (false, false) => {
                let gap = (d - k) as u32;
                // a^gap = (alpha_k * beta_d) / (alpha_d * beta_k)
                let ratio = al * &qd[d] / (&pd[d] * be);
                let mut cands = Vec::new();
                if let Some(root) = nth_root_rational(&ratio, gap) {
                    cands.push(root.clone());
                    if gap.is_multiple_of(2) {
                        cands.push(-root);
                    }
                }
                for a in cands {
                    if a.is_zero() {
                        continue;
                    }
                    let lam = &qd[d] / (&pd[d] * a.pow(d as i32));
                    let b = &mu_p - &a * &mu_q;
                    out.push((a, b, lam));
                }
                return out;
            }
        }
    }
    Vec::new()
}

fn side_key(side: &[RatCoeffs]) -> Vec<RatCoeffs> {
    let mut v = side.to_vec();
    v.sort();
    v
}

/// Equivalence of families up to rational reparametrization `t -> a t + b`,
/// global scaling, per-side permutation, side swap, and global sign: decided
/// by extracting candidate transforms from depressed coefficient ratios and
/// verifying the full multiset map symbolically.
pub fn equivalent(a: &SolutionFamily, b: &SolutionFamily) -> bool {
    if a.max_degree() != b.max_degree() {
        return false;
    }
    let dmax = a.max_degree() as usize;
    if dmax == 0 {
        return false; // degenerate constant families are never identified
    }
    let acoef: Vec<RatCoeffs> = a.xs.iter().map(rat_coeffs).collect();
    let acoef_y: Vec<RatCoeffs> = a.ys.iter().map(rat_coeffs).collect();
    let bcoef: Vec<RatCoeffs> = b.xs.iter().map(rat_coeffs).collect();
    let bcoef_y: Vec<RatCoeffs> = b.ys.iter().map(rat_coeffs).collect();
    let b_x_key = side_key(&bcoef);
    let b_y_key = side_key(&bcoef_y);

    let refs: Vec<&RatCoeffs> = acoef
        .iter()
        .chain(acoef_y.iter())
        .filter(|c| c.len() == dmax + 1)
        .collect();
    let targets: Vec<&RatCoeffs> = bcoef
        .iter()
        .chain(bcoef_y.iter())
        .filter(|c| c.len() == dmax + 1)
        .collect();

    let verify = |aa: &BigRational, bb: &BigRational, lam: &BigRational| -> bool {
        let tx: Vec<RatCoeffs> = acoef
            .iter()
            .map(|c| scale_coeffs(&compose_affine(c, aa, bb), lam))
            .collect();
        let ty: Vec<RatCoeffs> = acoef_y
            .iter()
            .map(|c| scale_coeffs(&compose_affine(c, aa, bb), lam))
            .collect();
        let kx = side_key(&tx);
        let ky = side_key(&ty);
        (kx == b_x_key && ky == b_y_key) || (kx == b_y_key && ky == b_x_key)
    };

    // A reference entry whose depressed form is not a pure power pins the
    // candidate transforms against every possible target: if equivalence
    // holds, the true image of the reference is among them. References that
    // produce no candidates anywhere are skipped.
    for r in &refs {
        let mut produced = false;
        for q in &targets {
            for sign in [1i64, -1] {
                let qs: RatCoeffs = q
                    .iter()
                    .map(|c| c * BigRational::from_integer(BigInt::from(sign)))
                    .collect();
                for (aa, bb, lam) in candidates_from_pair(r, &qs) {
                    produced = true;
                    if !lam.is_zero() && verify(&aa, &bb, &lam) {
                        return true;
                    }
                }
            }
        }
        if produced {
            return false;
        }
    }
    // every reference depresses to a pure power; the only transforms left
    // undetermined are pure scalings, which the identity candidates cover
    for aa in [BigRational::one(), -BigRational::one()] {
        if let (Some(r), Some(q)) = (refs.first(), targets.first()) {
            let lam = &q[dmax] / &r[dmax];
            let b = depress_shift(r) - &aa * depress_shift(q);
            if verify(&aa, &b, &lam) {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Worked derivation for explicit (f, g)
// ---------------------------------------------------------------------------

/// Outcome of `derive` at fully fixed (f, g).
#[derive(Clone, Debug)]
pub struct DeriveOutcome {
    /// Branches whose linear factor vanishes at (f0, g0), with per-branch
    /// results.
    pub attempts: Vec<(Branch, RootResult)>,
    /// The first successful family, if any.
    pub family: Option<SolutionFamily>,
}

/// Run the construction at explicit rational values of both parameters. The
/// values must annihilate one of the ten linear factors; each matching
/// branch is attempted in print order.
pub fn derive_at(f0: &BigRational, g0: &BigRational) -> DeriveOutcome {
    let mut attempts = Vec::new();
    let mut family = None;
    for branch in linear_factor_choices() {
        let factor = branch.factor();
        let val = eval_bivariate_rational(&factor, f0, g0);
        if !val.is_zero() {
            continue;
        }
        let root = if branch.free == F { f0.clone() } else { g0.clone() };
        let red = match reduce_once(&branch) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let out = run_root(&branch, &red, &root);
        if family.is_none() {
            if let Some(f) = out.result.family() {
                family = Some(f.clone());
            }
        }
        attempts.push((branch, out.result));
    }
    DeriveOutcome { attempts, family }
}

fn eval_bivariate_rational(p: &Poly, f0: &BigRational, g0: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let kf = m.exp(F) as i32;
        let kg = m.exp(G) as i32;
        total += BigRational::from_integer(c.clone()) * f0.pow(kf) * g0.pow(kg);
    }
    total
}

/// Numeric check that a root annihilates the second condition of a branch.
pub fn root_satisfies_condition(branch: &Branch, root: &BigRational) -> bool {
    match second_condition(branch) {
        Ok(cond) => eval_univariate_rational(&cond, branch.free, root).is_zero(),
        Err(_) => false,
    }
}
