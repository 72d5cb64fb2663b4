//! Exact scalars: arbitrary-precision rationals and integers.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Parse "p/q" or "p". Decimal points and exponents are rejected; exact input only.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Schema(format!("not an exact rational: {s:?}"));
    if t.is_empty() || t.contains(['.', 'e', 'E', ' ']) {
        return Err(bad());
    }
    let mut parts = t.splitn(2, '/');
    let num: Int = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(d) => {
            let den: Int = d.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(num, den))
        }
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor_rat(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Smallest integer k >= 1 with k*v integral: the lcm of coordinate denominators.
pub fn mu(v: &[Rat]) -> Int {
    let mut m = Int::one();
    for c in v {
        m = m.lcm(c.denom());
    }
    m.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rat("4/6").unwrap(), ratio(2, 3));
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1e3").is_err());
        assert!(parse_rat("1/0").is_err());
        assert_eq!(format_rat(&ratio(-1, 2)), "-1/2");
        assert_eq!(format_rat(&rat(7)), "7");
    }

    #[test]
    fn mu_examples() {
        // (1/2, 1/2) -> 2; (0) -> 1; (-1/3) -> 3
        assert_eq!(mu(&[ratio(1, 2), ratio(1, 2)]), Int::from(2));
        assert_eq!(mu(&[rat(0)]), Int::from(1));
        assert_eq!(mu(&[ratio(-1, 3)]), Int::from(3));
        // minimality: no k < mu(v) clears denominators
        let v = [ratio(3, 4), ratio(1, 6)];
        let m = mu(&v);
        assert_eq!(m, Int::from(12));
        let mut k = Int::one();
        while k < m {
            assert!(v.iter().any(|c| !(c * Rat::from_integer(k.clone())).denom().is_one()));
            k += 1;
        }
    }
}
