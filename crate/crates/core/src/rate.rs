//! Exact bounds kept as products of integer powers, and their per-vertex
//! growth rates rendered to six decimal places without floating point.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `base^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Factor {
    pub base: u64,
    pub exponent: u64,
}

impl Factor {
    pub fn new(base: u64, exponent: u64) -> Self {
        Self { base, exponent }
    }

    /// `n` written as `b^e` with the smallest possible base `b`.
    pub fn perfect_power(n: u64) -> Self {
        if n < 4 {
            return Self::new(n, 1);
        }
        for e in (2..64).rev() {
            let b = integer_root(n, e);
            if b >= 2 && b.checked_pow(e as u32) == Some(n) {
                return Self::new(b, e);
            }
        }
        Self::new(n, 1)
    }
}

fn integer_root(n: u64, e: u64) -> u64 {
    let r = BigUint::from(n).nth_root(e as u32);
    r.try_into().unwrap_or(u64::MAX)
}

/// Multiplies out a factor list.
pub fn product(factors: &[Factor]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, f| acc * BigUint::from(f.base).pow(f.exponent as u32))
}

/// Merges equal bases and drops trivial factors, keeping first-seen order.
pub fn normalize(factors: &[Factor]) -> Vec<Factor> {
    if factors.iter().any(|f| f.base == 0 && f.exponent > 0) {
        return alloc::vec![Factor::new(0, 1)];
    }
    let mut out: Vec<Factor> = Vec::new();
    for &f in factors {
        if f.base == 1 || f.exponent == 0 {
            continue;
        }
        match out.iter_mut().find(|g| g.base == f.base) {
            Some(g) => g.exponent += f.exponent,
            None => out.push(f),
        }
    }
    out
}

/// Renders a factor list as `14^2·2^12`.
pub fn format_factors(factors: &[Factor]) -> String {
    let f = normalize(factors);
    if f.is_empty() {
        return String::from("1");
    }
    f.iter()
        .map(|f| if f.exponent == 1 { format!("{}", f.base) } else { format!("{}^{}", f.base, f.exponent) })
        .collect::<Vec<_>>()
        .join("·")
}

/// `(Π base^exponent)^{1/v}` to six decimal places, rounded half to even.
///
/// With `X` the product, this finds the integer `r = ⌊10^6 X^{1/v}⌋` by
/// bisection on `r^v ≤ 10^{6v} X`, then decides the rounding by comparing
/// `(2r+1)^v` with `2^v 10^{6v} X`.
pub fn per_vertex_rate(factors: &[Factor], v: u64) -> String {
    assert!(v > 0, "rates need at least one vertex");
    let x = product(factors);
    let scale = BigUint::from(10u32).pow(6 * v as u32);
    let target = &x * &scale;
    let v32 = v as u32;
    let mut r = target.nth_root(v32);
    // nth_root is exact floor; guard anyway
    while r.pow(v32) > target {
        r -= 1u32;
    }
    while (&r + 1u32).pow(v32) <= target {
        r += 1u32;
    }
    let lhs = (&r * 2u32 + 1u32).pow(v32);
    let rhs = BigUint::from(2u32).pow(v32) * &target;
    let rounded = match lhs.cmp(&rhs) {
        core::cmp::Ordering::Less => &r + 1u32,
        core::cmp::Ordering::Greater => r,
        core::cmp::Ordering::Equal => {
            if (&r % 2u32).is_zero() {
                r
            } else {
                &r + 1u32
            }
        }
    };
    let million = BigUint::from(1_000_000u32);
    let int = &rounded / &million;
    let frac = &rounded % &million;
    format!("{int}.{frac:0>6}")
}

/// `(Π base^exponent)^{1/v}` written symbolically, e.g. `14^{1/36}·2^{1/6}`.
pub fn per_vertex_form(factors: &[Factor], v: u64) -> String {
    let f = normalize(factors);
    if f.is_empty() {
        return String::from("1");
    }
    f.iter()
        .map(|f| {
            let g = num_integer::gcd(f.exponent, v);
            let (num, den) = (f.exponent / g, v / g);
            if den == 1 {
                format!("{}^{}", f.base, num)
            } else {
                format!("{}^{{{}/{}}}", f.base, num, den)
            }
        })
        .collect::<Vec<_>>()
        .join("·")
}

/// The rate of a per-vertex form `Π base^{num/den}` (for example
/// `14^{1/36}·2^{1/6}`): raises everything to the common denominator.
pub fn rate_of_root_form(terms: &[(u64, u64, u64)]) -> String {
    let den = terms.iter().fold(1u64, |acc, &(_, _, d)| num_integer::lcm(acc, d));
    let factors: Vec<Factor> = terms.iter().map(|&(b, n, d)| Factor::new(b, n * (den / d))).collect();
    per_vertex_rate(&factors, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn known_rates() {
        assert_eq!(per_vertex_rate(&[Factor::new(14, 2), Factor::new(2, 12)], 72), "1.207838");
        assert_eq!(per_vertex_rate(&[Factor::new(2, 2)], 72), "1.019441");
        assert_eq!(rate_of_root_form(&[(2, 2, 5)]), "1.319508");
        assert_eq!(rate_of_root_form(&[(2, 1, 8)]), "1.090508");
        assert_eq!(rate_of_root_form(&[(2, 3, 8)]), "1.296840");
        assert_eq!(rate_of_root_form(&[(10, 1, 45), (2, 1, 5)]), "1.209005");
    }

    #[test]
    fn exact_values() {
        assert_eq!(per_vertex_rate(&[Factor::new(4, 1)], 2), "2.000000");
        assert_eq!(per_vertex_rate(&[Factor::new(1, 1)], 5), "1.000000");
        assert_eq!(per_vertex_rate(&[Factor::new(2, 1)], 2), "1.414214");
        assert_eq!(per_vertex_rate(&[Factor::new(0, 1)], 3), "0.000000");
    }

    #[test]
    fn factor_helpers() {
        assert_eq!(Factor::perfect_power(4), Factor::new(2, 2));
        assert_eq!(Factor::perfect_power(196), Factor::new(14, 2));
        assert_eq!(Factor::perfect_power(12), Factor::new(12, 1));
        assert_eq!(format_factors(&[Factor::new(14, 2), Factor::new(2, 12)]), "14^2·2^12");
        assert_eq!(normalize(&[Factor::new(2, 3), Factor::new(1, 9), Factor::new(2, 2)]), vec![Factor::new(2, 5)]);
        assert_eq!(product(&[Factor::new(2, 3), Factor::new(3, 1)]), BigUint::from(24u32));
        assert_eq!(per_vertex_form(&[Factor::new(14, 2), Factor::new(2, 12)], 72), "14^{1/36}·2^{1/6}");
        assert_eq!(per_vertex_form(&[Factor::new(10, 3), Factor::new(2, 27)], 135), "10^{1/45}·2^{1/5}");
        assert_eq!(per_vertex_form(&[Factor::new(2, 1), Factor::new(2, 2)], 8), "2^{3/8}");
        assert_eq!(per_vertex_form(&[Factor::new(2, 4)], 2), "2^2");
    }
}
