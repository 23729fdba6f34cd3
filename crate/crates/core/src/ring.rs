use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The ground ring k = Z/n. Prime n gives a field; the linear-algebra
/// routines need that, the structural checks do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BaseRing {
    modulus: u32,
}

impl BaseRing {
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Format(format!("modulus must be at least 2, got {modulus}")));
        }
        if modulus > 1 << 16 {
            return Err(Error::Format(format!("modulus {modulus} is too large")));
        }
        Ok(BaseRing { modulus })
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_field(self) -> bool {
        let n = self.modulus;
        (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    pub fn require_field(self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.modulus))
        }
    }

    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.modulus as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.modulus as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.modulus as u64 - b as u64) % self.modulus as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.modulus as u64) as u32
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inv(self, a: u32) -> Option<u32> {
        let (mut r0, mut r1) = (self.modulus as i64, (a % self.modulus) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| self.reduce(t0))
    }

    pub fn in_range(self, a: u32) -> bool {
        a < self.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_prime() {
        let k = BaseRing::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
        }
        assert_eq!(k.inv(0), None);
    }

    #[test]
    fn composite_modulus() {
        let k = BaseRing::new(6).unwrap();
        assert!(!k.is_field());
        assert_eq!(k.inv(2), None);
        assert_eq!(k.inv(5), Some(5));
        assert!(k.require_field().is_err());
    }

    #[test]
    fn rejects_tiny_modulus() {
        assert!(BaseRing::new(1).is_err());
        assert!(BaseRing::new(0).is_err());
    }
}
