//! Exact scalars: arbitrary-precision integers, rationals, and prime-field
//! residues.  No floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::basic_data::Coefficients;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    /// Residue in `[0, p)` together with its modulus.
    Mod(u64, u64),
}

impl Scalar {
    pub fn from_i64(v: i64, coeff: Coefficients) -> Self {
        match coeff {
            Coefficients::Integers => Scalar::Int(BigInt::from(v)),
            Coefficients::Rationals => Scalar::Rat(BigRational::from(BigInt::from(v))),
            Coefficients::PrimeField(p) => Scalar::Mod(v.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn one(coeff: Coefficients) -> Self {
        Self::from_i64(1, coeff)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar::Mod((a + b) % p, *p)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Scalar::Mod((a * b) % p, *p)
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, p) => Scalar::Mod((p - a) % p, *p),
        }
    }

    pub fn mul_i64(&self, v: i64) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(a * v),
            Scalar::Rat(a) => Scalar::Rat(a * BigRational::from(BigInt::from(v))),
            Scalar::Mod(a, p) => {
                let r = v.rem_euclid(*p as i64) as u64;
                Scalar::Mod((a * r) % p, *p)
            }
        }
    }

    /// Reduces an integer scalar modulo the additive order of the monomial
    /// that carries it (`order = 0` means infinite order, no reduction).
    pub fn reduce_mod_order(&self, order: u64) -> Scalar {
        match (self, order) {
            (Scalar::Int(a), p) if p > 0 => {
                let m = BigInt::from(p);
                let mut r = a % &m;
                if r.is_negative() {
                    r += &m;
                }
                Scalar::Int(r)
            }
            _ => self.clone(),
        }
    }

    /// The residue value for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod(v, _) => Some(*v),
            _ => None,
        }
    }

    /// Reduces an integer scalar modulo `p`, returning the residue.
    pub fn int_residue(&self, p: u64) -> Option<u64> {
        use num_traits::ToPrimitive;
        match self {
            Scalar::Int(v) => {
                let m = BigInt::from(p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                r.to_u64()
            }
            Scalar::Mod(v, q) if *q == p => Some(*v),
            _ => None,
        }
    }

    /// True when the scalar is `1` or `-1` (for field scalars: `1` or `p-1`).
    pub fn is_unit_sign(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one() || (-v).is_one(),
            Scalar::Rat(v) => v.is_one() || (-v).is_one(),
            Scalar::Mod(v, p) => *v == 1 || *v + 1 == *p,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => write!(f, "{v}"),
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_arithmetic_wraps() {
        let p = Coefficients::PrimeField(5);
        let a = Scalar::from_i64(-1, p);
        assert_eq!(a, Scalar::Mod(4, 5));
        assert_eq!(a.mul(&a), Scalar::Mod(1, 5));
        assert_eq!(a.add(&Scalar::from_i64(1, p)), Scalar::Mod(0, 5));
        assert!(a.is_unit_sign());
    }

    #[test]
    fn integer_order_reduction() {
        let z = Coefficients::Integers;
        let a = Scalar::from_i64(-7, z);
        assert_eq!(a.reduce_mod_order(3), Scalar::from_i64(2, z));
        assert_eq!(a.reduce_mod_order(0), a);
    }
}
