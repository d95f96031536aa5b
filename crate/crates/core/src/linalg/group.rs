use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntMatrix, Integer};

/// A finite abelian group in invariant-factor form `Z/d1 x ... x Z/dk`,
/// `1 < d1 | d2 | ... | dk`. The trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    invariant_factors: Vec<Integer>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn cyclic(order: impl Into<Integer>) -> Self {
        Self::from_cyclic_orders([order.into()])
    }

    /// Normalizes an arbitrary product of finite cyclic groups. Orders must
    /// be positive.
    pub fn from_cyclic_orders<I: IntoIterator<Item = Integer>>(orders: I) -> Self {
        let orders: Vec<Integer> = orders.into_iter().collect();
        assert!(orders.iter().all(Integer::is_positive), "cyclic orders must be positive");
        let snf = smith_normal_form(&IntMatrix::diagonal_matrix(&orders));
        Self::from_smith_diagonal(&snf.diagonal())
    }

    /// Builds the group from an already divisibility-ordered diagonal,
    /// dropping units. Zero entries are not allowed.
    pub(crate) fn from_smith_diagonal(diag: &[Integer]) -> Self {
        debug_assert!(diag.iter().all(|d| !d.is_zero()));
        let invariant_factors = diag.iter().filter(|d| !d.abs().is_one()).map(|d| d.abs()).collect();
        AbelianGroup { invariant_factors }
    }

    pub fn invariant_factors(&self) -> &[Integer] {
        &self.invariant_factors
    }

    pub fn order(&self) -> Integer {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn exponent(&self) -> Integer {
        self.invariant_factors.last().cloned().unwrap_or_else(Integer::one)
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        Self::from_cyclic_orders(
            self.invariant_factors.iter().chain(other.invariant_factors.iter()).cloned(),
        )
    }

    /// The part of the group of order prime to `m` (the group tensored
    /// with `Z[1/m]`).
    pub fn prime_to(&self, m: &Integer) -> AbelianGroup {
        Self::from_cyclic_orders(self.invariant_factors.iter().map(|d| {
            let mut d = d.clone();
            loop {
                let g = d.gcd(m);
                if g.is_one() {
                    break d;
                }
                d /= g;
            }
        }))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}
