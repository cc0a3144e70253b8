//! Arbitrary-precision rational helpers.
//!
//! `Rat` is always stored in lowest terms with a positive denominator; this is
//! maintained by `num_rational::BigRational` itself.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Rational from an integer pair, reduced.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Canonical text form: `"a"` for integers, `"a/b"` with `b > 1` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a"` or `"a/b"`. Rejects zero denominators and empty input.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidSeries("malformed rational, expected \"a\" or \"a/b\"");
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let num = n.trim().parse::<BigInt>().map_err(|_| bad())?;
            let den = d.trim().parse::<BigInt>().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(r: &Rat) -> Rat {
    r - r.floor()
}

/// The p-primary component of a class in `Q/Z`.
///
/// For `r = u / (p^e d)` in lowest terms with `gcd(d, p) = 1`, returns
/// `[u d' / p^e]` where `d d' = 1 mod p^e`; entries with p-free denominator
/// map to zero.
pub fn p_primary_part(r: &Rat, p: u32) -> Rat {
    if r.is_zero() {
        return Rat::zero();
    }
    let p_big = BigInt::from(p);
    let mut d = r.denom().clone();
    let mut e = 0u32;
    while (&d % &p_big).is_zero() {
        d /= &p_big;
        e += 1;
    }
    if e == 0 {
        return Rat::zero();
    }
    let pe = p_big.pow(e);
    let d_inv = mod_inverse(&d, &pe).expect("denominator coprime to p^e by construction");
    let num = (r.numer() * d_inv).mod_floor(&pe);
    frac_part(&Rat::new(num, pe))
}

/// The unique representative `n / p^e` of `r` modulo `p Z_(p)` whose
/// denominator is a pure p-power and whose numerator lies in `[0, p^{e+1})`.
///
/// Writing `r = a / (p^e u)` with `gcd(u, p) = 1`, the representative is
/// `(a u^{-1} mod p^{e+1}) / p^e`.
pub fn canonical_mod_p(r: &Rat, p: u32) -> Rat {
    if r.is_zero() {
        return Rat::zero();
    }
    let p_big = BigInt::from(p);
    let mut u = r.denom().clone();
    let mut e = 0u32;
    while (&u % &p_big).is_zero() {
        u /= &p_big;
        e += 1;
    }
    let modulus = p_big.pow(e + 1);
    let u_inv = mod_inverse(&u, &modulus).expect("u coprime to p");
    let n = (r.numer() * u_inv).mod_floor(&modulus);
    Rat::new(n, p_big.pow(e))
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let ext = a.extended_gcd(m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(m))
    } else {
        None
    }
}

/// lcm of the denominator of `r` with `acc`.
pub fn lcm_denom(acc: &BigUint, r: &Rat) -> BigUint {
    acc.lcm(&r.denom().abs().to_biguint().expect("positive denominator"))
}
