//! Exact field elements: arbitrary-precision rationals and prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The ground field a structure is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Field {
    /// The rationals.
    Q,
    /// The prime field with `p` elements. `p` must be prime.
    Fp(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { p, val: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { p, val: 1 % p },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, val: m }
            }
        }
    }

    /// `num/den` as an element of the field. Panics if `den` vanishes
    /// (or is not invertible mod p).
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Q => Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den))),
            Field::Fp(_) => self
                .from_i64(num)
                .div_checked(&self.from_i64(den))
                .expect("denominator not invertible in Fp"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (the `BigRational` canonical form); prime-field values are
/// reduced representatives in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { p, val } => *val == 1 % p,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp {
                    p: *p,
                    val: (a + b) % p,
                }
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp {
                    p: *p,
                    val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                }
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    /// Multiplicative inverse; `None` on zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: mod_inverse(*val, *p),
            },
        })
    }

    pub fn div_checked(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|i| self.mul(&i))
    }

    /// `1/n!`, used when expanding exponential cocycles. `None` when `n!`
    /// is not invertible (characteristic divides it).
    pub fn inv_factorial(field: Field, n: u64) -> Option<Scalar> {
        let mut acc = field.one();
        for k in 1..=n {
            match field {
                Field::Q => {}
                Field::Fp(p) => {
                    if k % p == 0 {
                        return None;
                    }
                }
            }
            acc = acc.mul(&field.from_i64(k as i64));
        }
        acc.inv()
    }
}

/// Inverse of `a` mod prime `p` by the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

impl Scalar {
    /// Parse "n" or "n/d" over the given field.
    pub fn parse(field: Field, s: &str) -> Result<Scalar, String> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        match field {
            Field::Q => {
                let n: BigInt = num.parse().map_err(|e| format!("bad numerator: {e}"))?;
                let d: BigInt = den.parse().map_err(|e| format!("bad denominator: {e}"))?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            Field::Fp(_) => {
                let n: i64 = num.parse().map_err(|e| format!("bad numerator: {e}"))?;
                let d: i64 = den.parse().map_err(|e| format!("bad denominator: {e}"))?;
                if d == 0 {
                    return Err("zero denominator".into());
                }
                field
                    .from_i64(n)
                    .div_checked(&field.from_i64(d))
                    .ok_or_else(|| "denominator not invertible".into())
            }
        }
    }

    /// Serialize as "n" or "n/d".
    pub fn to_fraction_string(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => format!("{val}"),
        }
    }

    /// Numerator magnitude, used only for display heuristics.
    pub fn abs_numer_bits(&self) -> u64 {
        match self {
            Scalar::Q(r) => r.numer().abs().bits(),
            Scalar::Fp { .. } => 64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let a = Field::Q.ratio(2, 4);
        let b = Field::Q.ratio(1, 2);
        assert_eq!(a, b);
        let c = Field::Q.ratio(1, -2);
        assert_eq!(c, b.neg());
        assert_eq!(c.to_fraction_string(), "-1/2");
    }

    #[test]
    fn field_ops_q() {
        let f = Field::Q;
        let x = f.ratio(3, 7);
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert!(x.sub(&x).is_zero());
        assert_eq!(f.from_i64(2).add(&f.from_i64(3)), f.from_i64(5));
    }

    #[test]
    fn field_ops_fp() {
        let f = Field::Fp(7);
        for v in 1..7 {
            let x = f.from_i64(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert!(f.from_i64(7).is_zero());
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(Field::Q.one().div_checked(&Field::Q.zero()).is_none());
        assert!(Field::Fp(5).one().div_checked(&Field::Fp(5).zero()).is_none());
    }

    #[test]
    fn inv_factorial_truncates_in_char_p() {
        assert!(Scalar::inv_factorial(Field::Q, 5).is_some());
        assert!(Scalar::inv_factorial(Field::Fp(3), 2).is_some());
        assert!(Scalar::inv_factorial(Field::Fp(3), 3).is_none());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3"] {
            let x = Scalar::parse(Field::Q, s).unwrap();
            assert_eq!(x.to_fraction_string(), s);
        }
        assert!(Scalar::parse(Field::Q, "1/0").is_err());
    }
}
