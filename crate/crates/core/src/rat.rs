//! Helpers around `num::BigRational`: parsing, formatting, gcd, directed
//! float conversion, exact roots.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parses `"p/q"` or a plain integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| mk_err())?;
            let q: Int = q.trim().parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator: {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: Int = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Renders as `p` or `p/q` (always reduced; `num` keeps Ratio normalized).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Nonnegative gcd of two integers.
pub fn gcd_int(a: &Int, b: &Int) -> Int {
    num::integer::gcd(a.clone(), b.clone())
}

/// Gcd of a set of rationals: the positive generator of the fractional ideal
/// they span over ℤ, i.e. gcd of numerators over lcm of denominators after
/// clearing to a common denominator.
pub fn rat_gcd(values: &[Rat]) -> Rat {
    let mut den = Int::one();
    for v in values {
        den = num::integer::lcm(den, v.denom().clone());
    }
    let mut num_gcd = Int::zero();
    for v in values {
        let scaled = v.numer() * (&den / v.denom());
        num_gcd = num::integer::gcd(num_gcd, scaled.abs());
    }
    Rat::new(num_gcd, den)
}

/// Exact `r^k` for integer `k` (negative allowed; `r` must be nonzero then).
pub fn pow_rat(r: &Rat, k: i64) -> Rat {
    if k >= 0 {
        let n = num::pow::pow(r.numer().clone(), k as usize);
        let d = num::pow::pow(r.denom().clone(), k as usize);
        Rat::new(n, d)
    } else {
        let n = num::pow::pow(r.numer().clone(), (-k) as usize);
        let d = num::pow::pow(r.denom().clone(), (-k) as usize);
        Rat::new(d, n)
    }
}

/// Exact q-th root of a positive rational when it is rational, `None` otherwise.
pub fn exact_root(r: &Rat, q: u32) -> Option<Rat> {
    if q == 0 || r.is_negative() || r.is_zero() {
        return None;
    }
    let n = r.numer().nth_root(q);
    let d = r.denom().nth_root(q);
    let candidate = Rat::new(n, d);
    if pow_rat(&candidate, q as i64) == *r {
        Some(candidate)
    } else {
        None
    }
}

/// A rational upper bound on `r^(1/q)` (outward rounded); exact when the root
/// is rational.
pub fn root_upper_bound(r: &Rat, q: u32) -> Rat {
    assert!(q > 0 && !r.is_negative());
    if let Some(exact) = exact_root(r, q) {
        return exact;
    }
    let approx = to_f64(r).powf(1.0 / q as f64) * (1.0 + 1e-6) + 1e-12;
    Rat::from_float(approx).unwrap_or_else(|| r.clone() + Rat::one())
}

/// Factorial as a big integer.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

pub fn is_positive_sign(i: &Int) -> bool {
    i.sign() == Sign::Plus
}

/// 12-significant-digit decimal rendering used by reports.
pub fn fmt_f64_12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}
