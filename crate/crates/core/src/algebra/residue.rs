use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

macro_rules! residue {
    ($name:ident, $modulus:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(into = "u8", try_from = "i64")]
        pub struct $name(u8);

        impl $name {
            pub const MODULUS: i64 = $modulus;
            pub const ZERO: Self = Self(0);

            /// Least nonnegative representative of `v`.
            pub fn new(v: i64) -> Self {
                Self(v.rem_euclid(Self::MODULUS) as u8)
            }

            pub fn value(self) -> u8 {
                self.0
            }

            pub fn is_zero(self) -> bool {
                self.0 == 0
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self::new(self.0 as i64 + rhs.0 as i64)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: Self) {
                *self = *self + rhs;
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self + (-rhs)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self::new(-(self.0 as i64))
            }
        }

        impl From<$name> for u8 {
            fn from(v: $name) -> u8 {
                v.0
            }
        }

        impl TryFrom<i64> for $name {
            type Error = String;
            fn try_from(v: i64) -> Result<Self, String> {
                if (0..Self::MODULUS).contains(&v) {
                    Ok(Self(v as u8))
                } else {
                    Err(format!("residue {} not in 0..{}", v, Self::MODULUS))
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

residue!(Z4, 4, "Residue modulo 4, the range of a double linking number.");
residue!(Z2, 2, "Residue modulo 2, the range of a triple linking number.");

/// The natural projection `Z4 -> Z2`.
pub fn lambda(x: Z4) -> Z2 {
    Z2::new(x.value() as i64)
}

/// The natural inclusion `Z2 -> Z4`, `1 |-> 2`.
pub fn kappa(x: Z2) -> Z4 {
    Z4::new(2 * x.value() as i64)
}

/// The natural projection `Z -> Z2`.
pub fn nu(x: i64) -> Z2 {
    Z2::new(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_negative_values() {
        assert_eq!(Z4::new(-1).value(), 3);
        assert_eq!(Z4::new(-6).value(), 2);
        assert_eq!(Z2::new(-3).value(), 1);
        assert_eq!(-Z4::new(1), Z4::new(3));
        assert_eq!(-Z4::new(2), Z4::new(2));
    }

    #[test]
    fn maps_between_rings() {
        assert_eq!(kappa(Z2::new(1)), Z4::new(2));
        assert_eq!(lambda(Z4::new(3)), Z2::new(1));
        assert_eq!(lambda(Z4::new(2)), Z2::ZERO);
        assert_eq!(nu(5), Z2::new(1));
        assert_eq!(nu(-4), Z2::ZERO);
    }

    #[test]
    fn serde_rejects_unnormalized() {
        assert!(serde_json::from_str::<Z4>("4").is_err());
        assert_eq!(serde_json::from_str::<Z4>("3").unwrap(), Z4::new(3));
    }
}
