//! Exact scalars in `Q(i)(sqrt 2, sqrt 3, ...)`.
//!
//! A value is a finite sum of monomials `q * sqrt(r) * i^e` with `q`
//! rational, `r` squarefree and `e` in {0, 1}. These monomials are linearly
//! independent over `Q`, so the representation is canonical and zero tests are
//! exact. The cube root of unity is `-1/2 + (sqrt 3 / 2) i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64 as C64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `(squarefree radicand, has factor i)`.
type Key = (u128, bool);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExactScalar {
    terms: BTreeMap<Key, BigRational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::monomial(q, 1, false)
    }

    pub fn integer(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn fraction(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Parses an unsigned decimal literal such as `12` or `0.7071` exactly.
    pub fn decimal(text: &str) -> Option<Self> {
        let (int_part, frac_part) = match text.split_once('.') {
            Some((a, b)) => (a, b),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = format!("{int_part}{frac_part}");
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        Some(Self::rational(BigRational::new(num, den)))
    }

    /// `i`.
    pub fn imaginary_unit() -> Self {
        Self::monomial(BigRational::one(), 1, true)
    }

    /// `sqrt(k)` for `k >= 0`, with square factors pulled out.
    pub fn sqrt(k: u64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let (outer, radicand) = split_square(k as u128);
        Self::monomial(BigRational::from_integer(BigInt::from(outer)), radicand, false)
    }

    /// `w = exp(2 pi i / 3)`.
    pub fn omega() -> Self {
        let mut w = Self::fraction(-1, 2);
        w.add_term((3, true), BigRational::new(BigInt::from(1), BigInt::from(2)));
        w
    }

    pub fn omega_pow(k: u64) -> Self {
        match k % 3 {
            0 => Self::one(),
            1 => Self::omega(),
            _ => Self::omega().conj(),
        }
    }

    fn monomial(q: BigRational, radicand: u128, imag: bool) -> Self {
        let mut s = Self::zero();
        s.add_term((radicand, imag), q);
        s
    }

    fn add_term(&mut self, key: Key, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn conj(&self) -> Self {
        self.galois(&[], true)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse via the product of all nontrivial Galois
    /// conjugates; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let primes = self.primes();
        let mut others = Self::one();
        let patterns = 1usize << (primes.len() + 1);
        for pattern in 1..patterns {
            let flip_i = pattern & 1 == 1;
            let flipped: Vec<u128> = primes
                .iter()
                .enumerate()
                .filter(|(b, _)| pattern >> (b + 1) & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            others = &others * &self.galois(&flipped, flip_i);
        }
        let norm = self * &others;
        debug_assert!(norm.terms.keys().all(|k| *k == (1, false)));
        let n = norm.terms.get(&(1, false))?.clone();
        Some(&others * &Self::rational(n.recip()))
    }

    /// Applies the automorphism negating `sqrt p` for each listed prime and,
    /// if `flip_i`, sending `i -> -i`.
    fn galois(&self, flipped: &[u128], flip_i: bool) -> Self {
        let mut out = Self::zero();
        for (&(r, imag), q) in &self.terms {
            let odd = flipped.iter().filter(|&&p| r % p == 0).count() % 2 == 1;
            let neg = odd ^ (flip_i && imag);
            out.add_term((r, imag), if neg { -q.clone() } else { q.clone() });
        }
        out
    }

    fn primes(&self) -> Vec<u128> {
        let mut primes: Vec<u128> = Vec::new();
        for &(r, _) in self.terms.keys() {
            for p in prime_factors(r) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        primes.sort_unstable();
        primes
    }

    pub fn to_complex(&self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (&(r, imag), q) in &self.terms {
            let v = rational_to_f64(q) * (r as f64).sqrt();
            if imag {
                acc.im += v;
            } else {
                acc.re += v;
            }
        }
        acc
    }

    /// Canonical text in the ket grammar; sums are parenthesized.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (&(r, imag), q)) in self.terms.iter().enumerate() {
            let neg = q.is_negative();
            if idx > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            out.push_str(&render_monomial(&q.abs(), r, imag));
        }
        if self.terms.len() > 1 {
            format!("({out})")
        } else {
            out
        }
    }
}

fn render_monomial(q: &BigRational, r: u128, imag: bool) -> String {
    let mut parts = Vec::new();
    let unit = q.is_one();
    if !unit || (r == 1 && !imag) {
        if q.denom().is_one() {
            parts.push(q.numer().to_string());
        } else {
            parts.push(format!("{}/{}", q.numer(), q.denom()));
        }
    }
    if r > 1 {
        parts.push(format!("sqrt({r})"));
    }
    if imag {
        parts.push("i".into());
    }
    parts.join("*")
}

fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Returns `(s, r)` with `k = s^2 r` and `r` squarefree.
fn split_square(mut k: u128) -> (u128, u128) {
    let mut outer = 1u128;
    let mut radicand = 1u128;
    let mut p = 2u128;
    while p * p <= k {
        let mut e = 0;
        while k % p == 0 {
            k /= p;
            e += 1;
        }
        outer *= p.pow(e / 2);
        if e % 2 == 1 {
            radicand *= p;
        }
        p += 1;
    }
    (outer, radicand * k)
}

fn prime_factors(mut r: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= r {
        if r % p == 0 {
            out.push(p);
            while r % p == 0 {
                r /= p;
            }
        }
        p += 1;
    }
    if r > 1 {
        out.push(r);
    }
    out
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for (&k, q) in &rhs.terms {
            out.add_term(k, q.clone());
        }
        out
    }
}

impl std::ops::Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(k, q)| (*k, -q.clone())).collect(),
        }
    }
}

impl std::ops::Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (&(ra, ia), qa) in &self.terms {
            for (&(rb, ib), qb) in &rhs.terms {
                // sqrt(a) sqrt(b) = g sqrt(ab / g^2) for squarefree a, b
                let g = ra.gcd(&rb);
                let radicand = (ra / g) * (rb / g);
                let mut q = qa * qb * BigRational::from_integer(BigInt::from(g));
                if ia && ib {
                    q = -q;
                }
                out.add_term((radicand, ia ^ ib), q);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_simplifies() {
        assert_eq!(ExactScalar::sqrt(8), &ExactScalar::integer(2) * &ExactScalar::sqrt(2));
        assert_eq!(ExactScalar::sqrt(9), ExactScalar::integer(3));
        assert_eq!(&ExactScalar::sqrt(6) * &ExactScalar::sqrt(6), ExactScalar::integer(6));
        assert_eq!(
            &ExactScalar::sqrt(2) * &ExactScalar::sqrt(3),
            ExactScalar::sqrt(6)
        );
    }

    #[test]
    fn omega_is_cube_root_of_unity() {
        let w = ExactScalar::omega();
        assert_eq!(w.pow(3), ExactScalar::one());
        assert_eq!(&(&ExactScalar::one() + &w) + &w.pow(2), ExactScalar::zero());
        let c = w.to_complex();
        let expect = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((c - expect).norm() < 1e-15);
        assert_eq!(ExactScalar::omega_pow(2), w.conj());
    }

    #[test]
    fn inverses() {
        let i = ExactScalar::imaginary_unit();
        assert_eq!(&i * &i, ExactScalar::integer(-1));
        let x = &(&ExactScalar::one() + &ExactScalar::sqrt(2)) + &(&ExactScalar::sqrt(3) * &i);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, ExactScalar::one());
        let y = &ExactScalar::sqrt(6) + &ExactScalar::sqrt(10);
        assert_eq!(&y * &y.inverse().unwrap(), ExactScalar::one());
        assert!(ExactScalar::zero().inverse().is_none());
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(ExactScalar::decimal("0.25").unwrap(), ExactScalar::fraction(1, 4));
        assert_eq!(ExactScalar::decimal("12").unwrap(), ExactScalar::integer(12));
        assert!(ExactScalar::decimal(".").is_none());
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(ExactScalar::omega().render(), "(-1/2 + 1/2*sqrt(3)*i)");
        assert_eq!(
            (&ExactScalar::fraction(1, 2) * &ExactScalar::sqrt(2)).render(),
            "1/2*sqrt(2)"
        );
        assert_eq!((-&ExactScalar::imaginary_unit()).render(), "-i");
        assert_eq!(ExactScalar::integer(3).render(), "3");
    }
}
