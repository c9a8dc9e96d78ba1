//! Two-dimensional multi-indices.

use std::fmt;

/// A multi-index `(a1, a2)` in `Z_+^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    pub a1: u32,
    pub a2: u32,
}

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex { a1: 0, a2: 0 };

    pub fn new(a1: u32, a2: u32) -> Self {
        Self { a1, a2 }
    }

    /// Length `|alpha| = a1 + a2`.
    pub fn order(&self) -> u32 {
        self.a1 + self.a2
    }

    /// `alpha! = a1! a2!` as a float (orders stay small).
    pub fn factorial(&self) -> f64 {
        fn fact(n: u32) -> f64 {
            (1..=n).map(|k| k as f64).product()
        }
        fact(self.a1) * fact(self.a2)
    }

    /// Monomial `x^alpha = x1^{a1} x2^{a2}`.
    pub fn pow(&self, x: [f64; 2]) -> f64 {
        x[0].powi(self.a1 as i32) * x[1].powi(self.a2 as i32)
    }

    /// `(-x)^alpha`, the sign convention used by all moment coefficients.
    pub fn pow_neg(&self, x: [f64; 2]) -> f64 {
        let sign = if self.order() % 2 == 0 { 1.0 } else { -1.0 };
        sign * self.pow(x)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

/// All multi-indices with `|alpha| = k`, ordered by descending `a1`.
pub fn of_order(k: u32) -> Vec<MultiIndex> {
    (0..=k).map(|a2| MultiIndex::new(k - a2, a2)).collect()
}

/// All multi-indices with `|alpha| <= k`, grouped by order.
pub fn up_to_order(k: u32) -> Vec<MultiIndex> {
    (0..=k).flat_map(of_order).collect()
}

/// All pairs `(l, beta)` with `2l + |beta| = k`, time order first.
pub fn time_space_of_order(k: u32) -> Vec<(u32, MultiIndex)> {
    let mut out = Vec::new();
    for l in 0..=(k / 2) {
        for beta in of_order(k - 2 * l) {
            out.push((l, beta));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_factorial() {
        let a = MultiIndex::new(2, 1);
        assert_eq!(a.order(), 3);
        assert_eq!(a.factorial(), 2.0);
        assert_eq!(MultiIndex::ZERO.factorial(), 1.0);
    }

    #[test]
    fn pow_signs() {
        let a = MultiIndex::new(1, 0);
        assert_eq!(a.pow([2.0, 3.0]), 2.0);
        assert_eq!(a.pow_neg([2.0, 3.0]), -2.0);
        let b = MultiIndex::new(1, 1);
        assert_eq!(b.pow_neg([2.0, 3.0]), 6.0);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(of_order(4).len(), 5);
        assert_eq!(up_to_order(7).len(), 36);
        // 2l + |beta| = 4: l=0 gives 5, l=1 gives 3, l=2 gives 1.
        assert_eq!(time_space_of_order(4).len(), 9);
        assert_eq!(time_space_of_order(3).len(), 4 + 2);
    }
}
