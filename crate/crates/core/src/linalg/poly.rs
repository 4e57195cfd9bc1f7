//! Dense univariate polynomials over a [`Field`] context, with factorization
//! over prime fields (square-free, distinct-degree, then equal-degree
//! splitting) and rational-root splitting over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

use super::field::{bigint_abs_u128, Field, PrimeField, Rationals};

/// Coefficients from the constant term upwards; never has a trailing zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K: Field> {
    coeffs: Vec<K::Elem>,
}

/// Monic factors with multiplicities.
#[derive(Clone, Debug)]
pub struct Factorization<K: Field> {
    pub factors: Vec<(Poly<K>, usize)>,
    /// `false` when some listed factor may still be reducible.
    pub complete: bool,
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(field: &K, c: K::Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn one(field: &K) -> Self {
        Self::constant(field, field.one())
    }

    /// The polynomial `x`.
    pub fn x(field: &K) -> Self {
        Poly {
            coeffs: vec![field.zero(), field.one()],
        }
    }

    /// `x - a`
    pub fn linear(field: &K, a: &K::Elem) -> Self {
        Poly {
            coeffs: vec![field.neg(a), field.one()],
        }
    }

    pub fn from_coeffs(field: &K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K::Elem> {
        self.coeffs.last()
    }

    pub fn is_one(&self, field: &K) -> bool {
        self.coeffs.len() == 1 && field.is_one(&self.coeffs[0])
    }

    pub fn monic(&self, field: &K) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let li = field.inv(l).expect("nonzero leading coefficient");
                Poly {
                    coeffs: self.coeffs.iter().map(|c| field.mul(c, &li)).collect(),
                }
            }
        }
    }

    pub fn add(&self, field: &K, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = field.zero();
        let coeffs = (0..n)
            .map(|i| {
                field.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn sub(&self, field: &K, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = field.zero();
        let coeffs = (0..n)
            .map(|i| {
                field.sub(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn scale(&self, field: &K, c: &K::Elem) -> Self {
        Self::from_coeffs(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &K, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(field, out)
    }

    pub fn pow(&self, field: &K, e: usize) -> Self {
        let mut acc = Self::one(field);
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, field: &K, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if field.is_zero(&rem[k]) {
                continue;
            }
            let q = field.mul(&rem[k], &lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = field.mul_sub(&rem[k - dd + j], &q, d);
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(field, quot), Self::from_coeffs(field, rem))
    }

    pub fn rem(&self, field: &K, divisor: &Self) -> Self {
        self.divrem(field, divisor).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, field: &K, divisor: &Self) -> Self {
        let (q, r) = self.divrem(field, divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, field: &K, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, field: &K, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(field, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(field, &q.mul(field, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(field, &q.mul(field, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = field.inv(l).unwrap();
                (r0.scale(field, &li), s0.scale(field, &li), t0.scale(field, &li))
            }
        }
    }

    pub fn derivative(&self, field: &K) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    /// `self^e mod modulus` by square and multiply.
    pub fn powmod(&self, field: &K, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(field, modulus);
        let mut acc = Self::one(field).rem(field, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus);
            }
            base = base.mul(field, &base).rem(field, modulus);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, field: &K, x: &K::Elem) -> K::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }
}

/// Square-free decomposition of a monic polynomial over `F_p`: pairs `(g, m)` with
/// pairwise coprime square-free `g` and `f = Π g^m`.
fn squarefree_prime(field: &PrimeField, f: &Poly<PrimeField>) -> Vec<(Poly<PrimeField>, usize)> {
    let p = field.modulus() as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(field, &f.derivative(field));
    let mut w = f.div_exact(field, &c);
    let mut i = 1;
    while !w.is_one(field) {
        let y = w.gcd(field, &c);
        let fac = w.div_exact(field, &y);
        if !fac.is_one(field) {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(field, &w);
        i += 1;
    }
    if !c.is_one(field) {
        // c is a p-th power; in F_p its root keeps the coefficients at multiples of p
        let root_coeffs = c.coeffs().iter().step_by(p).cloned().collect();
        let root = Poly::from_coeffs(field, root_coeffs);
        for (g, m) in squarefree_prime(field, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(field: &PrimeField, f: &Poly<PrimeField>) -> Vec<(Poly<PrimeField>, usize)> {
    let p = field.modulus();
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(field, p, &rest);
        let g = rest.gcd(field, &h.sub(field, &x));
        if !g.is_one(field) {
            rest = rest.div_exact(field, &g);
            h = h.rem(field, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly(field: &PrimeField, below: usize, rng: &mut dyn RngCore) -> Poly<PrimeField> {
    let coeffs = (0..below).map(|_| field.random(rng)).collect();
    Poly::from_coeffs(field, coeffs)
}

/// Equal-degree splitting (Cantor–Zassenhaus; trace map in characteristic 2).
fn equal_degree(
    field: &PrimeField,
    f: &Poly<PrimeField>,
    d: usize,
    rng: &mut dyn RngCore,
) -> Vec<Poly<PrimeField>> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let p = field.modulus();
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(field, f);
        let candidate = if !g.is_one(field) {
            g
        } else if p == 2 {
            let mut t = a.clone();
            let mut sq = a.clone();
            for _ in 1..d {
                sq = sq.mul(field, &sq).rem(field, f);
                t = t.add(field, &sq);
            }
            t.gcd(field, f)
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut norm = a.clone();
            let mut frob = a.clone();
            for _ in 1..d {
                frob = frob.powmod(field, p, f);
                norm = norm.mul(field, &frob).rem(field, f);
            }
            let b = norm.powmod(field, (p - 1) / 2, f).sub(field, &Poly::one(field));
            b.gcd(field, f)
        };
        let deg = candidate.degree().unwrap_or(0);
        if deg > 0 && deg < n {
            let other = f.div_exact(field, &candidate);
            let mut out = equal_degree(field, &candidate, d, rng);
            out.extend(equal_degree(field, &other, d, rng));
            return out;
        }
    }
}

pub(crate) fn factor_prime_field(
    field: &PrimeField,
    f: &Poly<PrimeField>,
    rng: &mut dyn RngCore,
) -> Factorization<PrimeField> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let f = f.monic(field);
    let mut factors = Vec::new();
    for (g, m) in squarefree_prime(field, &f) {
        for (h, d) in distinct_degree(field, &g) {
            for irr in equal_degree(field, &h, d, rng) {
                factors.push((irr, m));
            }
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });
    Factorization {
        factors,
        complete: true,
    }
}

fn divisors(n: u128) -> Option<Vec<u128>> {
    const LIMIT: u128 = 1_000_000_000_000;
    if n == 0 || n > LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

pub(crate) fn factor_rational(f: &Poly<Rationals>) -> Factorization<Rationals> {
    let q = Rationals;
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut rest = f.monic(&q);
    let mut factors: Vec<(Poly<Rationals>, usize)> = Vec::new();

    let mut zero_mult = 0;
    while rest.degree().unwrap_or(0) > 0 && q.is_zero(&rest.coeffs()[0]) {
        rest = rest.div_exact(&q, &Poly::x(&q));
        zero_mult += 1;
    }
    if zero_mult > 0 {
        factors.push((Poly::x(&q), zero_mult));
    }

    if rest.degree().unwrap_or(0) >= 1 {
        let lcm = rest
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = rest
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = bigint_abs_u128(ints.last().unwrap());
        let constant = bigint_abs_u128(&ints[0]);
        if let (Some(ld), Some(cd)) = (lead.and_then(divisors), constant.and_then(divisors)) {
            let mut candidates = Vec::new();
            for a in &cd {
                for b in &ld {
                    let r = BigRational::new(BigInt::from(*a), BigInt::from(*b));
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                let mut mult = 0;
                while rest.degree().unwrap_or(0) > 0 && rest.eval(&q, &r).is_zero() {
                    rest = rest.div_exact(&q, &Poly::linear(&q, &r));
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((Poly::linear(&q, &r), mult));
                }
            }
        }
    }

    let leftover = rest.degree().unwrap_or(0);
    let mut complete = true;
    if leftover >= 1 {
        // a quadratic or cubic without rational roots is irreducible
        complete = leftover <= 3;
        factors.push((rest, 1));
    }
    factors.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    Factorization { factors, complete }
}

/// A random monic polynomial of the given degree; test support.
pub fn random_monic<K: Field>(field: &K, degree: usize, rng: &mut dyn RngCore) -> Poly<K> {
    let mut c: Vec<K::Elem> = (0..degree).map(|_| field.random(rng)).collect();
    c.push(field.one());
    Poly::from_coeffs(field, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(field: &PrimeField, c: &[i64]) -> Poly<PrimeField> {
        Poly::from_coeffs(field, c.iter().map(|&v| field.from_i64(v)).collect())
    }

    fn product(field: &PrimeField, fac: &Factorization<PrimeField>) -> Poly<PrimeField> {
        fac.factors
            .iter()
            .fold(Poly::one(field), |acc, (g, m)| acc.mul(field, &g.pow(field, *m)))
    }

    #[test]
    fn divrem_and_gcd() {
        let f = PrimeField::new(101).unwrap();
        let a = p(&f, &[-1, 0, 1]); // x^2 - 1
        let b = p(&f, &[1, 1]); // x + 1
        let (q, r) = a.divrem(&f, &b);
        assert_eq!(q, p(&f, &[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&f, &p(&f, &[-1, 1])), p(&f, &[-1, 1]));
        let (g, s, t) = a.xgcd(&f, &p(&f, &[2, 1]));
        assert!(g.is_one(&f));
        assert!(s.mul(&f, &a).add(&f, &t.mul(&f, &p(&f, &[2, 1]))).is_one(&f));
    }

    #[test]
    fn factors_small_prime_products() {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // (x+1)^2 (x^2+1) (x+3); x^2+1 is irreducible mod 7
        let g = p(&f, &[1, 1])
            .pow(&f, 2)
            .mul(&f, &p(&f, &[1, 0, 1]))
            .mul(&f, &p(&f, &[3, 1]));
        let fac = f.factor(&g, &mut rng);
        assert!(fac.complete);
        assert_eq!(product(&f, &fac), g);
        assert_eq!(fac.factors.len(), 3);
        assert!(fac.factors.iter().any(|(h, m)| *m == 2 && h == &p(&f, &[1, 1])));
        assert!(fac.factors.iter().any(|(h, _)| h.degree() == Some(2)));
    }

    #[test]
    fn factors_p_th_powers() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x+1)^3 (x+2) has derivative with a p-th power part
        let g = p(&f, &[1, 1]).pow(&f, 3).mul(&f, &p(&f, &[2, 1]));
        let fac = f.factor(&g, &mut rng);
        assert_eq!(product(&f, &fac), g);
        assert!(fac.factors.iter().any(|(_, m)| *m == 3));
    }

    #[test]
    fn factors_in_characteristic_two() {
        let f = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        // (x^2 + x + 1)(x^3 + x + 1)(x^3 + x^2 + 1)
        let g = p(&f, &[1, 1, 1])
            .mul(&f, &p(&f, &[1, 1, 0, 1]))
            .mul(&f, &p(&f, &[1, 0, 1, 1]));
        let fac = f.factor(&g, &mut rng);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(product(&f, &fac), g);
    }

    #[test]
    fn random_factorizations_multiply_back() {
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for deg in 1..9 {
            let a = random_monic(&f, deg, &mut rng);
            let b = random_monic(&f, 9 - deg, &mut rng);
            let g = a.mul(&f, &b).mul(&f, &a);
            let fac = f.factor(&g, &mut rng);
            assert_eq!(product(&f, &fac), g);
        }
    }

    #[test]
    fn rational_roots_split() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // (x - 1/2)^2 (x + 3) x
        let half = q.parse("1/2").unwrap();
        let g = Poly::linear(&q, &half)
            .pow(&q, 2)
            .mul(&q, &Poly::linear(&q, &q.from_i64(-3)))
            .mul(&q, &Poly::x(&q));
        let fac = q.factor(&g, &mut rng);
        assert!(fac.complete);
        assert_eq!(fac.factors.len(), 3);
        // x^2 + 1 has no rational roots and is reported as one irreducible factor
        let h = Poly::from_coeffs(&q, vec![q.one(), q.zero(), q.one()]);
        let fac = q.factor(&h, &mut rng);
        assert!(fac.complete);
        assert_eq!(fac.factors, vec![(h, 1)]);
    }
}
