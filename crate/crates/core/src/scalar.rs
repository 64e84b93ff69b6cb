//! Exact scalar fields: rationals over arbitrary-precision integers and prime
//! fields `F_p` with `p < 2^31`.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of a computation, as named in problem files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    Rationals,
    PrimeField { p: u32 },
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField { p } => *p as u64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField { p } => {
                if *p < 2 || !is_prime(*p as u64) {
                    Err(Error::validation("field.p", format!("{p} is not prime")))
                } else if *p as u64 >= (1u64 << 31) {
                    Err(Error::validation("field.p", format!("{p} is not below 2^31")))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField { p } => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Every value is kept in canonical form (lowest terms, least residue), so
/// `==` is mathematical equality.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn field() -> FieldSpec;

    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Parses the canonical string form (`"n/d"`, `"n"`, or a residue).
    fn parse_scalar(s: &str) -> Result<Self>;

    /// Roots in the ground field of `sum coeffs[k] t^k`, as far as they can be
    /// found cheaply. An empty answer does not prove there are none.
    fn find_roots(coeffs: &[Self]) -> Vec<Self>;

    fn is_zero_ref(&self) -> bool {
        self.is_zero()
    }
}

pub type Rational = BigRational;

impl Scalar for BigRational {
    fn field() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }

    fn find_roots(coeffs: &[Self]) -> Vec<Self> {
        rational_roots(coeffs)
    }
}

/// Rational root theorem search. Gives up (returns what it has) when the
/// integer coefficients are too large to enumerate divisors by trial division.
fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // factor out t^k
    let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(BigRational::zero());
        c.drain(..lead_zeros);
    }
    if c.len() <= 1 {
        return roots;
    }
    let lcm = c
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let (Some(p_div), Some(q_div)) = (small_divisors(&a0), small_divisors(&an)) else {
        return roots;
    };
    let eval = |r: &BigRational| {
        c.iter().rev().fold(BigRational::zero(), |acc, k| acc * r + k)
    };
    let mut cands: Vec<BigRational> = Vec::new();
    for p in &p_div {
        for q in &q_div {
            let r = BigRational::new(BigInt::from(*p), BigInt::from(*q));
            for s in [r.clone(), -r] {
                if !cands.contains(&s) {
                    cands.push(s);
                }
            }
        }
    }
    cands.sort();
    for r in cands {
        if eval(&r).is_zero() && !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Element of the prime field `F_P`, stored as its least nonnegative residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const MODULUS: u32 = P;

    pub fn new(v: u64) -> Self {
        Fp((v % P as u64) as u32)
    }

    pub fn value(&self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp::<P>::zero() - self
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl<const P: u32> Scalar for Fp<P> {
    fn field() -> FieldSpec {
        FieldSpec::PrimeField { p: P }
    }

    fn from_i64(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u32)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = Self::parse_scalar(n)?;
            let d = Self::parse_scalar(d)?;
            return d
                .inv()
                .map(|d| n * d)
                .ok_or_else(|| Error::Parse(format!("zero denominator in {s:?}")));
        }
        let v: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("not an element of F_{P}: {s:?}")))?;
        Ok(Self::from_i64(v))
    }

    fn find_roots(coeffs: &[Self]) -> Vec<Self> {
        let limit = if P <= 1 << 16 { P } else { 4096 };
        (0..limit)
            .map(|v| Fp::<P>(v))
            .filter(|r| {
                coeffs
                    .iter()
                    .rev()
                    .fold(Fp::<P>::zero(), |acc, k| acc * *r + *k)
                    .is_zero()
            })
            .collect()
    }
}

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
/// Largest prime below 2^31.
pub type FMersenne31 = Fp<2147483647>;

/// Invokes `$body` with `$S` bound to the scalar type of a [`FieldSpec`].
/// Prime fields are supported for the moduli listed here.
#[macro_export]
macro_rules! with_scalar {
    ($field:expr, $S:ident => $body:expr, $unsupported:expr) => {{
        use $crate::scalar::{FieldSpec, Fp, Rational};
        match $field {
            FieldSpec::Rationals => {
                type $S = Rational;
                $body
            }
            FieldSpec::PrimeField { p } => $crate::with_scalar!(@primes p, $S => $body, $unsupported;
                2, 3, 5, 7, 11, 13, 101, 257, 32003, 65521, 2147483647),
        }
    }};
    (@primes $p:ident, $S:ident => $body:expr, $unsupported:expr; $($prime:literal),*) => {{
        match $p {
            $( $prime => { type $S = Fp<$prime>; $body } )*
            _ => $unsupported,
        }
    }};
}

/// Moduli accepted by [`with_scalar!`].
pub fn supported_prime(p: u32) -> bool {
    let field = FieldSpec::PrimeField { p };
    with_scalar!(field, S => { let _ = S::zero(); true }, false)
}
