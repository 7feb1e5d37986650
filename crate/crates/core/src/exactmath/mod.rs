//! Exact rational arithmetic and the combinatorial kernels shared by every
//! formula in the crate: the bracket symbol `[x]_i^k` and shifted
//! fractional factorials.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub mod linalg;

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Serializes as `"p/q"`, or `"p"` when the denominator is one. The sign is
/// carried by the numerator.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for m in 2..=n {
        acc *= BigInt::from(m);
    }
    Rational::from_integer(acc)
}

/// `Π_{m=0}^{k} (m + x)`; the empty product `1` when `k < 0`.
///
/// `(k + s/N)!` in the closed forms is `shifted_factorial(k, s/N)`.
/// Results are memoized per thread.
pub fn shifted_factorial(k: i64, x: &Rational) -> Rational {
    if k < 0 {
        return Rational::one();
    }
    let key = (x.clone(), k);
    if let Some(hit) = SHIFTED_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    // Π (p + m·q) / q^{k+1} with x = p/q, reduced once
    let (p, q) = (x.numer(), x.denom());
    let mut num = BigInt::one();
    let mut term = p.clone();
    for _ in 0..=k {
        num *= &term;
        term += q;
    }
    let value = Rational::new(num, num_traits::pow(q.clone(), (k + 1) as usize));
    SHIFTED_CACHE.with(|c| c.borrow_mut().insert(key, value.clone()));
    value
}

thread_local! {
    static SHIFTED_CACHE: RefCell<HashMap<(Rational, i64), Rational>> = RefCell::new(HashMap::new());
}

thread_local! {
    static BRACKET_CACHE: RefCell<HashMap<(Rational, u32), Vec<Rational>>> =
        RefCell::new(HashMap::new());
}

/// Coefficients `c_0..c_{k+1}` with `Σ s^i c_i = Π_{j=0}^{k} (s + x + j)`.
///
/// Results are memoized per thread.
pub fn bracket_coefficients(x: &Rational, k: u32) -> Vec<Rational> {
    let key = (x.clone(), k);
    if let Some(hit) = BRACKET_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let coeffs = expand_bracket(x, k);
    BRACKET_CACHE.with(|c| c.borrow_mut().insert(key, coeffs.clone()));
    coeffs
}

fn expand_bracket(x: &Rational, k: u32) -> Vec<Rational> {
    // start from the constant polynomial 1 and multiply by (s + x + j)
    let mut poly = vec![Rational::one()];
    for j in 0..=k {
        let root = x + int(j as i64);
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c * &root;
            next[i + 1] += c;
        }
        poly = next;
    }
    poly
}

/// The bracket symbol `[x]_i^k`: coefficient of `s^i` in `Π_{j=0}^{k}(s+x+j)`.
pub fn bracket_symbol(x: &Rational, i: i64, k: u32) -> Result<Rational> {
    if i < 0 || i > k as i64 + 1 {
        return Err(Error::Range {
            index: i,
            max: k as i64 + 1,
        });
    }
    Ok(bracket_coefficients(x, k)[i as usize].clone())
}

/// `[x]_i^k` with `k` allowed to be `-1` (empty product, `[x]_0^{-1} = 1`)
/// and out-of-range `i` mapped to zero. Convenient inside operator sums.
pub fn bracket_or_zero(x: &Rational, i: i64, k: i64) -> Rational {
    if k < 0 {
        return if i == 0 { Rational::one() } else { Rational::zero() };
    }
    bracket_symbol(x, i, k as u32).unwrap_or_else(|_| Rational::zero())
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Converts an integral rational to `i64`.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    let n = x.numer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    n.to_string().parse().ok()
}

/// Fractional part `⟨x⟩ ∈ [0, 1)`.
pub fn fractional_part(x: &Rational) -> Rational {
    x - x.floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    // product of (s + x + j) by explicit polynomial multiplication over
    // integer-indexed dense vectors, kept separate from `expand_bracket`
    fn oracle_product(x: &Rational, k: u32) -> Vec<Rational> {
        let mut p: Vec<Rational> = vec![int(1)];
        for j in 0..=k {
            let lin = [x + int(j as i64), int(1)];
            let mut out = vec![int(0); p.len() + 1];
            for a in 0..p.len() {
                for (b, l) in lin.iter().enumerate() {
                    out[a + b] = &out[a + b] + &p[a] * l;
                }
            }
            p = out;
        }
        p
    }

    #[test]
    fn bracket_small_values() {
        let x = rat(3, 7);
        assert_eq!(bracket_symbol(&x, 0, 0).unwrap(), x);
        assert_eq!(bracket_symbol(&x, 1, 0).unwrap(), int(1));
        assert_eq!(bracket_symbol(&int(1), 0, 2).unwrap(), int(6));
        assert_eq!(bracket_symbol(&int(1), 1, 2).unwrap(), int(11));
        assert_eq!(bracket_symbol(&int(1), 2, 2).unwrap(), int(6));
        assert_eq!(bracket_symbol(&int(1), 3, 2).unwrap(), int(1));
        assert_eq!(oracle_product(&int(1), 2), bracket_coefficients(&int(1), 2));
    }

    #[test]
    fn bracket_rejects_bad_index() {
        assert!(matches!(
            bracket_symbol(&int(2), 4, 2),
            Err(Error::Range { index: 4, max: 3 })
        ));
        assert!(bracket_symbol(&int(2), -1, 2).is_err());
    }

    #[test]
    fn shifted_factorial_examples() {
        assert_eq!(shifted_factorial(0, &rat(2, 5)), rat(2, 5));
        assert_eq!(shifted_factorial(-1, &rat(2, 5)), int(1));
        assert_eq!(shifted_factorial(-7, &rat(2, 5)), int(1));
        assert_eq!(shifted_factorial(2, &rat(1, 2)), rat(15, 8));
        assert_eq!(shifted_factorial(3, &int(-2)), int(0));
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(parse_rational(" -3/2 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("4/-8").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn fractional_part_of_negative() {
        assert_eq!(fractional_part(&rat(-1, 3)), rat(2, 3));
        assert_eq!(fractional_part(&rat(7, 3)), rat(1, 3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rational> {
            (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn bracket_expands_product(x in small_rat(), k in 0u32..=8,
                                       ss in proptest::collection::vec(small_rat(), 5)) {
                let coeffs = bracket_coefficients(&x, k);
                prop_assert_eq!(coeffs.len(), k as usize + 2);
                prop_assert_eq!(&coeffs[k as usize + 1], &int(1));
                for s in ss {
                    let mut lhs = int(0);
                    let mut pow = int(1);
                    for c in &coeffs {
                        lhs += c * &pow;
                        pow *= &s;
                    }
                    let mut rhs = int(1);
                    for j in 0..=k {
                        rhs *= &s + &x + int(j as i64);
                    }
                    prop_assert_eq!(lhs, rhs);
                }
            }

            #[test]
            fn shifted_factorial_step(x in small_rat(), k in -1i64..10) {
                let step = shifted_factorial(k, &x) * (int(k + 1) + &x);
                prop_assert_eq!(step, shifted_factorial(k + 1, &x));
            }

            #[test]
            fn bracket_zero_is_shifted_factorial(x in small_rat(), k in 0u32..8) {
                prop_assert_eq!(bracket_symbol(&x, 0, k).unwrap(),
                                shifted_factorial(k as i64, &x));
            }

            #[test]
            fn printed_rationals_reparse(n in -10_000i64..10_000, d in 1i64..500) {
                let x = rat(n, d);
                prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
            }
        }
    }
}
