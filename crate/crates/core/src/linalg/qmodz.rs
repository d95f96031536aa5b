use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Integer, Rational};

/// An element of Q/Z, stored as its representative in `[0, 1)`.
///
/// Read as the exponent `x` of the root of unity `e^{2 pi i x}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(Rational);

impl QmodZ {
    pub fn new(value: Rational) -> Self {
        let floor = value.floor();
        QmodZ(value - floor)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        QmodZ(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// Order of the element in Q/Z.
    pub fn denominator(&self) -> &Integer {
        self.0.denom()
    }

    /// The representative in `(-1/2, 1/2]`.
    pub fn centered(&self) -> Rational {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        if self.0 > half {
            &self.0 - Rational::one()
        } else {
            self.0.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 + rhs.0)
    }
}

impl AddAssign for QmodZ {
    fn add_assign(&mut self, rhs: QmodZ) {
        *self = QmodZ::new(&self.0 + rhs.0);
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 - rhs.0)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0)
    }
}

impl Mul<&Integer> for &QmodZ {
    type Output = QmodZ;
    fn mul(self, k: &Integer) -> QmodZ {
        QmodZ::new(&self.0 * Rational::from_integer(k.clone()))
    }
}

impl Mul<i64> for &QmodZ {
    type Output = QmodZ;
    fn mul(self, k: i64) -> QmodZ {
        self * &BigInt::from(k)
    }
}

impl From<Rational> for QmodZ {
    fn from(r: Rational) -> Self {
        QmodZ::new(r)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
