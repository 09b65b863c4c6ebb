//! Exact scalar arithmetic over the supported coefficient fields.
//!
//! Three kinds of field are supported: the rationals, cyclotomic extensions
//! `Q(zeta_n)` for prime `n <= 7`, and prime fields `F_p`.  Every scalar is
//! kept in a canonical reduced form so that structural equality is semantic
//! equality, and all arithmetic is exact: there is no floating point anywhere
//! in this crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

use crate::error::CoreError;

/// Cyclotomic orders we support: prime, so that `Phi_n(x) = 1 + x + ... + x^(n-1)`.
const CYCLOTOMIC_ORDERS: [u32; 4] = [2, 3, 5, 7];

/// Largest admissible prime-field characteristic.  Keeping `p < 2^31` means
/// products of residues fit in `u64` without overflow.
const MAX_PRIME: u64 = 1 << 31;

/// Identifies a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// `Q(zeta_n)`, elements represented modulo the n-th cyclotomic polynomial.
    Cyclotomic(u32),
    /// `F_p` for a prime `p`.
    PrimeField(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), CoreError> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Cyclotomic(n) => {
                if CYCLOTOMIC_ORDERS.contains(&n) {
                    Ok(())
                } else {
                    Err(CoreError::UnsupportedField(format!(
                        "cyclotomic order {n} not supported (prime orders up to 7 only)"
                    )))
                }
            }
            FieldSpec::PrimeField(p) => {
                if p < 2 || p >= MAX_PRIME || !is_prime(p) {
                    Err(CoreError::UnsupportedField(format!(
                        "characteristic {p} is not an admissible prime"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar {
                repr: Repr::Rat(BigRational::zero()),
            },
            FieldSpec::Cyclotomic(n) => Scalar {
                repr: Repr::Cyc {
                    order: n,
                    coeffs: vec![BigRational::zero(); (n - 1) as usize],
                },
            },
            FieldSpec::PrimeField(p) => Scalar {
                repr: Repr::Fp { p, value: 0 },
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_integer(&BigInt::one())
    }

    pub fn from_integer(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar {
                repr: Repr::Rat(BigRational::from_integer(n.clone())),
            },
            FieldSpec::Cyclotomic(order) => {
                let mut coeffs = vec![BigRational::zero(); (order - 1) as usize];
                coeffs[0] = BigRational::from_integer(n.clone());
                Scalar {
                    repr: Repr::Cyc { order, coeffs },
                }
            }
            FieldSpec::PrimeField(p) => Scalar {
                repr: Repr::Fp {
                    p,
                    value: bigint_mod(n, p),
                },
            },
        }
    }

    /// Builds `num/den`.  Fails when `den` is zero, or maps to zero in `F_p`.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, CoreError> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let n = self.from_integer(num);
        let d = self.from_integer(den);
        n.div(&d)
    }

    /// The generator `zeta_n` of a cyclotomic field.
    pub fn zeta(&self) -> Result<Scalar, CoreError> {
        match *self {
            FieldSpec::Cyclotomic(order) => {
                let mut coeffs = vec![BigRational::zero(); (order - 1) as usize];
                if coeffs.len() > 1 {
                    coeffs[1] = BigRational::one();
                } else {
                    // zeta_2 = -1
                    coeffs[0] = -BigRational::one();
                }
                Ok(Scalar {
                    repr: Repr::Cyc { order, coeffs },
                })
            }
            _ => Err(CoreError::UnsupportedField(
                "zeta is only defined in cyclotomic fields".into(),
            )),
        }
    }

    /// The textual name used by the DSL, e.g. `Q`, `Q(zeta3)`, `F5`.
    pub fn dsl_name(&self) -> String {
        match *self {
            FieldSpec::Rationals => "Q".into(),
            FieldSpec::Cyclotomic(n) => format!("Q(zeta{n})"),
            FieldSpec::PrimeField(p) => format!("F{p}"),
        }
    }

    /// Parses a DSL field name.
    pub fn parse_name(name: &str) -> Option<FieldSpec> {
        if name == "Q" {
            return Some(FieldSpec::Rationals);
        }
        if let Some(rest) = name.strip_prefix("Q(zeta").and_then(|s| s.strip_suffix(')')) {
            let n: u32 = rest.parse().ok()?;
            let spec = FieldSpec::Cyclotomic(n);
            return spec.validate().ok().map(|_| spec);
        }
        if let Some(rest) = name.strip_prefix('F') {
            let p: u64 = rest.parse().ok()?;
            let spec = FieldSpec::PrimeField(p);
            return spec.validate().ok().map(|_| spec);
        }
        None
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::PrimeField(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dsl_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    /// Residue modulo `Phi_order`; `coeffs[k]` is the coefficient of `zeta^k`,
    /// always of length `order - 1`.
    Cyc { order: u32, coeffs: Vec<BigRational> },
    Fp { p: u64, value: u64 },
}

/// An exact field element in canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.repr {
            Repr::Rat(_) => FieldSpec::Rationals,
            Repr::Cyc { order, .. } => FieldSpec::Cyclotomic(*order),
            Repr::Fp { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Cyc { coeffs, .. } => coeffs.iter().all(BigRational::is_zero),
            Repr::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    /// `(p, residue)` when this scalar lives in a prime field.
    pub fn prime_value(&self) -> Option<(u64, u64)> {
        match &self.repr {
            Repr::Fp { p, value } => Some((*p, *value)),
            _ => None,
        }
    }

    fn same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across distinct fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar {
                repr: Repr::Rat(a + b),
            },
            (
                Repr::Cyc { order, coeffs: a },
                Repr::Cyc { coeffs: b, .. },
            ) => Scalar {
                repr: Repr::Cyc {
                    order: *order,
                    coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                },
            },
            (Repr::Fp { p, value: a }, Repr::Fp { value: b, .. }) => Scalar {
                repr: Repr::Fp {
                    p: *p,
                    value: (a + b) % p,
                },
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Rat(a) => Scalar {
                repr: Repr::Rat(-a),
            },
            Repr::Cyc { order, coeffs } => Scalar {
                repr: Repr::Cyc {
                    order: *order,
                    coeffs: coeffs.iter().map(|x| -x).collect(),
                },
            },
            Repr::Fp { p, value } => Scalar {
                repr: Repr::Fp {
                    p: *p,
                    value: if *value == 0 { 0 } else { p - value },
                },
            },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar {
                repr: Repr::Rat(a * b),
            },
            (
                Repr::Cyc { order, coeffs: a },
                Repr::Cyc { coeffs: b, .. },
            ) => {
                let deg = (*order - 1) as usize;
                let mut prod = vec![BigRational::zero(); 2 * deg.max(1)];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] += x * y;
                    }
                }
                reduce_mod_cyclotomic(&mut prod, *order);
                prod.truncate(deg);
                Scalar {
                    repr: Repr::Cyc {
                        order: *order,
                        coeffs: prod,
                    },
                }
            }
            (Repr::Fp { p, value: a }, Repr::Fp { value: b, .. }) => Scalar {
                repr: Repr::Fp {
                    p: *p,
                    value: (a * b) % p,
                },
            },
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse.  The only failure mode is inverting zero.
    pub fn inv(&self) -> Result<Scalar, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        match &self.repr {
            Repr::Rat(a) => Ok(Scalar {
                repr: Repr::Rat(a.recip()),
            }),
            Repr::Cyc { order, coeffs } => {
                let inv = cyclotomic_inverse(coeffs, *order);
                Ok(Scalar {
                    repr: Repr::Cyc {
                        order: *order,
                        coeffs: inv,
                    },
                })
            }
            Repr::Fp { p, value } => Ok(Scalar {
                repr: Repr::Fp {
                    p: *p,
                    value: mod_inverse(*value, *p),
                },
            }),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, CoreError> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => write!(f, "{}", format_rational(r)),
            Repr::Fp { value, .. } => write!(f, "{value}"),
            Repr::Cyc { order, coeffs } => {
                let mut parts: Vec<String> = Vec::new();
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let base = match k {
                        0 => String::new(),
                        1 => format!("zeta{order}"),
                        _ => format!("zeta{order}^{k}"),
                    };
                    let piece = if base.is_empty() {
                        format_rational(c)
                    } else if c.is_one() {
                        base
                    } else {
                        format!("{}*{}", format_rational(c), base)
                    };
                    parts.push(piece);
                }
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join("+").replace("+-", "-"))
                }
            }
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The operation selector for [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked scalar arithmetic: rejects field mismatches and inversion of zero.
pub fn scalar_arith(op: ScalarOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar, CoreError> {
    if let Some(b) = b {
        if a.field() != b.field() {
            return Err(CoreError::FieldMismatch {
                left: a.field().dsl_name(),
                right: b.field().dsl_name(),
            });
        }
    }
    match op {
        ScalarOp::Add => {
            let b = b.ok_or(CoreError::MissingOperand)?;
            Ok(a.add(b))
        }
        ScalarOp::Mul => {
            let b = b.ok_or(CoreError::MissingOperand)?;
            Ok(a.mul(b))
        }
        ScalarOp::Neg => Ok(a.neg()),
        ScalarOp::Inv => a.inv(),
    }
}

/// Reduces a coefficient vector modulo `Phi_n(x) = 1 + x + ... + x^(n-1)`.
fn reduce_mod_cyclotomic(coeffs: &mut Vec<BigRational>, order: u32) {
    let deg = (order - 1) as usize;
    let mut top = coeffs.len();
    while top > deg {
        top -= 1;
        let c = std::mem::replace(&mut coeffs[top], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        // x^top = x^(top-deg) * x^deg, and x^deg = -(1 + x + ... + x^(deg-1)).
        let shift = top - deg;
        for k in 0..deg {
            coeffs[shift + k] -= &c;
        }
        top = coeffs.len();
        while top > deg && coeffs[top - 1].is_zero() {
            top -= 1;
        }
    }
}

/// Extended Euclid in `Q[x]` against `Phi_n`, which is irreducible for prime `n`.
fn cyclotomic_inverse(coeffs: &[BigRational], order: u32) -> Vec<BigRational> {
    let deg = (order - 1) as usize;
    let mut phi = vec![BigRational::one(); order as usize];
    let f: Vec<BigRational> = coeffs.to_vec();

    // Invariants: r0 = s0 * f (mod phi), r1 = s1 * f (mod phi).
    let mut r0 = std::mem::take(&mut phi);
    let mut r1 = f;
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    poly_trim(&mut r1);
    while poly_degree(&r1) > 0 {
        let (q, rem) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul_q(&q, &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r1 is a nonzero constant c with c = s1 * f (mod phi); inverse is s1 / c.
    let c = r1.first().cloned().unwrap_or_else(BigRational::zero);
    assert!(!c.is_zero(), "cyclotomic polynomial must be coprime to a nonzero residue");
    let cinv = c.recip();
    let mut inv: Vec<BigRational> = s1.iter().map(|x| x * &cinv).collect();
    reduce_mod_cyclotomic(&mut inv, order);
    inv.resize(deg, BigRational::zero());
    inv
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().map(BigRational::is_zero).unwrap_or(false) {
        p.pop();
    }
}

fn poly_degree(p: &[BigRational]) -> isize {
    p.len() as isize - 1
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

fn poly_mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = poly_degree(b);
    assert!(db >= 0, "division by the zero polynomial");
    let lead = b.last().unwrap().clone();
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(b.len()) + 1];
    while poly_degree(&rem) >= db {
        let dr = poly_degree(&rem) as usize;
        let coef = rem.last().unwrap() / &lead;
        let shift = dr - db as usize;
        quot[shift] = coef.clone();
        for (k, y) in b.iter().enumerate() {
            let delta = &coef * y;
            rem[shift + k] -= delta;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    use num::ToPrimitive;
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().expect("reduced residue fits u64")
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on signed 128-bit; p is prime and a != 0 mod p.
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "inverse of a noninvertible residue");
    (t.rem_euclid(p as i128)) as u64
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rationals
            .from_ratio(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn rational_sum() {
        // 1/2 + 1/3 = 5/6
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
    }

    #[test]
    fn cube_root_of_unity() {
        let f = FieldSpec::Cyclotomic(3);
        let rho = f.zeta().unwrap();
        let cube = rho.mul(&rho).mul(&rho);
        assert_eq!(cube, f.one());
        // 1 + rho + rho^2 = 0
        let sum = f.one().add(&rho).add(&rho.mul(&rho));
        assert!(sum.is_zero());
    }

    #[test]
    fn prime_field_inverse_of_two_mod_three() {
        // Exhaustive oracle: the inverse of 2 in F_3 is the unique x with 2x = 1.
        let f = FieldSpec::PrimeField(3);
        let two = f.from_integer(&BigInt::from(2));
        let mut found = Vec::new();
        for x in 0..3 {
            let cand = f.from_integer(&BigInt::from(x));
            if two.mul(&cand) == f.one() {
                found.push(x);
            }
        }
        assert_eq!(found, vec![2]);
        assert_eq!(two.inv().unwrap(), f.from_integer(&BigInt::from(2)));
    }

    #[test]
    fn zero_inversion_rejected() {
        let z = FieldSpec::Rationals.zero();
        assert!(matches!(z.inv(), Err(CoreError::DivisionByZero)));
        assert!(matches!(
            scalar_arith(ScalarOp::Inv, &z, None),
            Err(CoreError::DivisionByZero)
        ));
    }

    #[test]
    fn field_mismatch_rejected() {
        let a = FieldSpec::Rationals.one();
        let b = FieldSpec::PrimeField(5).one();
        assert!(matches!(
            scalar_arith(ScalarOp::Add, &a, Some(&b)),
            Err(CoreError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn field_axioms_exhaustive_f5() {
        let f = FieldSpec::PrimeField(5);
        let elems: Vec<Scalar> = (0..5).map(|x| f.from_integer(&BigInt::from(x))).collect();
        for a in &elems {
            for b in &elems {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                for c in &elems {
                    assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
                    assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
                if !b.is_zero() {
                    assert_eq!(a.div(b).unwrap().mul(b), *a);
                }
            }
        }
    }

    #[test]
    fn field_axioms_cyclotomic3_small_residues() {
        let f = FieldSpec::Cyclotomic(3);
        let mut elems = Vec::new();
        for a0 in -2i64..=2 {
            for a1 in -2i64..=2 {
                let s = f
                    .from_integer(&BigInt::from(a0))
                    .add(&f.from_integer(&BigInt::from(a1)).mul(&f.zeta().unwrap()));
                elems.push(s);
            }
        }
        for a in &elems {
            for b in &elems {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                if !b.is_zero() {
                    let quot = a.div(b).unwrap();
                    assert_eq!(quot.mul(b), *a);
                }
            }
        }
        // distributivity on a fixed slice of triples keeps this test quick
        for a in elems.iter().take(8) {
            for b in elems.iter().take(8) {
                for c in elems.iter().take(8) {
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
                }
            }
        }
    }

    #[test]
    fn field_axioms_random_rationals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let sample = |rng: &mut rand::rngs::StdRng| {
            let n = rng.gen_range(-40i64..=40);
            let d = rng.gen_range(1i64..=12);
            q(n, d)
        };
        for _ in 0..100 {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let c = sample(&mut rng);
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !b.is_zero() {
                assert_eq!(a.div(&b).unwrap().mul(&b), a);
            }
        }
    }

    #[test]
    fn cyclotomic_inverse_of_generator() {
        for n in [3u32, 5, 7] {
            let f = FieldSpec::Cyclotomic(n);
            let z = f.zeta().unwrap();
            let zi = z.inv().unwrap();
            assert_eq!(z.mul(&zi), f.one());
        }
    }

    #[test]
    fn field_names_round_trip() {
        for f in [
            FieldSpec::Rationals,
            FieldSpec::Cyclotomic(3),
            FieldSpec::Cyclotomic(5),
            FieldSpec::PrimeField(2),
            FieldSpec::PrimeField(7),
        ] {
            assert_eq!(FieldSpec::parse_name(&f.dsl_name()), Some(f));
        }
        assert_eq!(FieldSpec::parse_name("F4"), None);
        assert_eq!(FieldSpec::parse_name("Q(zeta4)"), None);
    }
}
