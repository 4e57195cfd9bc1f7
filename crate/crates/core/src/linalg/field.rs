use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::poly::{self, Factorization, Poly};
use crate::error::{Error, Result};

/// Default modulus for prime-field computations.
pub const DEFAULT_PRIME: u64 = 1_000_003;
/// Second modulus used by cross-characteristic runs.
pub const SECONDARY_PRIME: u64 = 1_000_033;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// Which base field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    #[serde(rename = "char")]
    pub characteristic: u64,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
            characteristic: 0,
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        let spec = FieldSpec {
            kind: FieldKind::PrimeField,
            characteristic: p,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn default_prime() -> Self {
        FieldSpec {
            kind: FieldKind::PrimeField,
            characteristic: DEFAULT_PRIME,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            FieldKind::Rationals if self.characteristic != 0 => Err(Error::InvalidInput(
                "the rationals have characteristic 0".into(),
            )),
            FieldKind::PrimeField if !is_prime(self.characteristic) => Err(Error::InvalidInput(
                format!("{} is not a prime", self.characteristic),
            )),
            FieldKind::PrimeField if self.characteristic >= 1 << 32 => Err(Error::InvalidInput(
                format!("prime {} does not fit in 32 bits", self.characteristic),
            )),
            _ => Ok(()),
        }
    }

    /// Parses the command-line form: `q` or `fp:<prime>` (a bare `fp` means the default prime).
    pub fn parse_flag(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "q" | "Q" | "rationals" => Ok(Self::rationals()),
            "fp" => Ok(Self::default_prime()),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .ok_or_else(|| Error::parse("--field", format!("expected q or fp:<prime>, got {s:?}")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::parse("--field", format!("bad prime {p:?}")))?;
                Self::prime(p)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "q"),
            FieldKind::PrimeField => write!(f, "fp:{}", self.characteristic),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A field given as a context object; elements carry no reference to it.
///
/// All arithmetic goes through the context so that a prime field can carry
/// its modulus at runtime while elements stay plain machine words.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - b * c`, the elimination kernel.
    fn mul_sub(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }

    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Canonical string form: `3/4` for rationals, the residue in `[0, p)` for prime fields.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Factors a nonzero polynomial into monic irreducibles.
    ///
    /// Over the rationals only rational roots are split off; whatever remains
    /// is returned as one factor with `complete = false` when its
    /// irreducibility is unknown.
    fn factor(&self, f: &Poly<Self>, rng: &mut dyn RngCore) -> Factorization<Self>;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field of rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-50..=50))
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        BigRational::from_str(s.trim())
            .map_err(|e| Error::parse(format!("rational {s:?}"), e.to_string()))
    }

    fn factor(&self, f: &Poly<Self>, _rng: &mut dyn RngCore) -> Factorization<Self> {
        poly::factor_rational(f)
    }
}

/// The prime field `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec {
            kind: FieldKind::PrimeField,
            characteristic: self.p,
        }
    }

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul_sub(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let bc = b * c % self.p;
        self.sub(a, &bc)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u64)
    }

    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = self.parse(num)?;
            let d = self.parse(den)?;
            return self
                .inv(&d)
                .map(|di| self.mul(&n, &di))
                .ok_or_else(|| Error::parse(format!("residue {s:?}"), "division by zero"));
        }
        let v = BigInt::from_str(s).map_err(|e| Error::parse(format!("residue {s:?}"), e.to_string()))?;
        let r = ((v % BigInt::from(self.p)) + BigInt::from(self.p)) % BigInt::from(self.p);
        Ok(r.to_u64().expect("reduced residue fits"))
    }

    fn factor(&self, f: &Poly<Self>, rng: &mut dyn RngCore) -> Factorization<Self> {
        poly::factor_prime_field(self, f, rng)
    }
}

/// Converts a rational to a prime-field residue (used when re-reading rational data mod p).
pub fn rational_mod_p(field: &PrimeField, q: &BigRational) -> Option<u64> {
    let p = BigInt::from(field.modulus());
    let reduce = |v: &BigInt| -> u64 {
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("reduced residue fits")
    };
    let n = reduce(q.numer());
    let d = reduce(q.denom());
    field.inv(&d).map(|di| field.mul(&n, &di))
}

pub(crate) fn bigint_abs_u128(v: &BigInt) -> Option<u128> {
    v.abs().to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.parse("-1").unwrap(), 6);
        assert_eq!(f.parse("1/3").unwrap(), 5);
    }

    #[test]
    fn inverses_in_default_prime() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        for a in [1u64, 2, 17, 999_999, DEFAULT_PRIME - 1] {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
    }

    #[test]
    fn field_specs() {
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(SECONDARY_PRIME).is_ok());
        assert_eq!(FieldSpec::parse_flag("q").unwrap(), FieldSpec::rationals());
        assert_eq!(
            FieldSpec::parse_flag("fp:7").unwrap(),
            FieldSpec::prime(7).unwrap()
        );
        assert!(FieldSpec::parse_flag("fp:8").is_err());
        assert_eq!(FieldSpec::default_prime().to_string(), "fp:1000003");
        let json = serde_json::to_string(&FieldSpec::default_prime()).unwrap();
        assert_eq!(json, r#"{"kind":"prime-field","char":1000003}"#);
    }

    #[test]
    fn rational_strings() {
        let q = Rationals;
        let a = q.parse("3/4").unwrap();
        assert_eq!(q.format(&a), "3/4");
        assert_eq!(q.format(&q.parse("6/8").unwrap()), "3/4");
        assert_eq!(q.format(&q.from_i64(-2)), "-2");
    }
}
