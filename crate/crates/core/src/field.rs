//! Small prime fields `F_p`.

use crate::error::{Error, Result};

/// An element of `F_p`, stored as its representative in `0..p`.
pub type Scalar = u8;

/// The coefficient field `F_p` for a prime `p <= 7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldChar(u8);

impl FieldChar {
    pub const F2: FieldChar = FieldChar(2);
    pub const F3: FieldChar = FieldChar(3);

    pub fn new(p: u32) -> Result<Self> {
        match p {
            2 | 3 | 5 | 7 => Ok(FieldChar(p as u8)),
            _ => Err(Error::InvalidField(p)),
        }
    }

    pub fn p(self) -> u8 {
        self.0
    }

    pub fn check(self, value: u32) -> Result<Scalar> {
        if value < u32::from(self.0) {
            Ok(value as Scalar)
        } else {
            Err(Error::InvalidScalar {
                value,
                p: u32::from(self.0),
            })
        }
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        ((u16::from(a) + u16::from(b)) % u16::from(self.0)) as Scalar
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        ((u16::from(a) + u16::from(self.0) - u16::from(b)) % u16::from(self.0)) as Scalar
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        ((u16::from(a) * u16::from(b)) % u16::from(self.0)) as Scalar
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(self, a: Scalar) -> Scalar {
        debug_assert!(a != 0);
        (1..self.0).find(|b| self.mul(a, *b) == 1).expect("prime field")
    }
}

impl Default for FieldChar {
    fn default() -> Self {
        FieldChar::F2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_for_supported_primes() {
        for p in [2u32, 3, 5, 7] {
            let f = FieldChar::new(p).unwrap();
            for a in 0..f.p() {
                assert_eq!(f.add(a, f.sub(0, a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..f.p() {
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn rejects_unsupported() {
        for p in [0, 1, 4, 9, 11] {
            assert_eq!(FieldChar::new(p), Err(Error::InvalidField(p)));
        }
        assert!(FieldChar::F3.check(3).is_err());
        assert_eq!(FieldChar::F3.check(2), Ok(2));
    }
}
