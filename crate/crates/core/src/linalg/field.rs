use super::rat::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The ground field: the rationals or a prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

/// A field element. Prime-field elements carry their modulus so that the
/// arithmetic operators need no context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    F { v: u64, p: u64 },
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Validating constructor for prime fields.
    pub fn prime(p: u64) -> Option<FieldSpec> {
        if is_prime(p) && p < (1 << 62) {
            Some(FieldSpec::PrimeField(p))
        } else {
            None
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rat::from_int(n)),
            FieldSpec::PrimeField(p) => Scalar::F { v: n.rem_euclid(*p as i64) as u64, p: *p },
        }
    }

    /// Maps a rational into this field; fails when the denominator is
    /// divisible by the characteristic.
    pub fn from_rat(&self, r: &Rat) -> Option<Scalar> {
        match self {
            FieldSpec::Rationals => Some(Scalar::Q(r.clone())),
            FieldSpec::PrimeField(p) => super::rat::rat_mod_p(r, *p).map(|v| Scalar::F { v, p: *p }),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Option<Scalar> {
        self.from_rat(&Rat::parse(s)?)
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (FieldSpec::Rationals, Scalar::Q(_)) => true,
            (FieldSpec::PrimeField(p), Scalar::F { v, p: q }) => p == q && v < p,
            _ => false,
        }
    }

    /// Every element of a prime field, in order. `None` over the rationals.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some((0..*p).map(|v| Scalar::F { v, p: *p }).collect()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Q({p})"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::F { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::F { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::F { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::F { v: a, p }, Scalar::F { v: b, .. }) => {
                let s = a + b;
                Scalar::F { v: if s >= *p { s - p } else { s }, p: *p }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.sub(b)),
            (Scalar::F { v: a, p }, Scalar::F { v: b, .. }) => {
                Scalar::F { v: if a >= b { a - b } else { a + p - b }, p: *p }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::F { v: a, p }, Scalar::F { v: b, .. }) => Scalar::F { v: mulmod(*a, *b, *p), p: *p },
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::F { v, p } => Scalar::F { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(a) => a.inv().map(Scalar::Q),
            Scalar::F { v: 0, .. } => None,
            Scalar::F { v, p } => Some(Scalar::F { v: powmod(*v, p - 2, *p), p: *p }),
        }
    }

    pub fn div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut r = self.field().one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Q(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::F { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FieldSpec::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::F { v: 6, p: 7 });
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
        assert!(FieldSpec::prime(9).is_none());
    }

    #[test]
    fn rational_pow() {
        let f = FieldSpec::Rationals;
        assert_eq!(f.from_i64(-2).pow(5), f.from_i64(-32));
    }
}
