use std::fmt;

use serde::Serialize;

/// `q^(e/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HalfPower(pub i32);

impl HalfPower {
    pub fn times(self, other: HalfPower) -> HalfPower {
        HalfPower(self.0 + other.0)
    }
}

impl fmt::Display for HalfPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "1"),
            2 => write!(f, "q"),
            e if e % 2 == 0 => write!(f, "q^({})", e / 2),
            e => write!(f, "q^({e}/2)"),
        }
    }
}

/// Tropical lambda lengths of `α`, `β` and `α*` for one lamination of
/// `M₁`. For the excluded curve only the product `c(α)c(β)` is recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TropicalRow {
    pub lamination: &'static str,
    pub alpha: Option<HalfPower>,
    pub beta: Option<HalfPower>,
    pub product: HalfPower,
    pub alphastar: HalfPower,
    pub excluded: bool,
}

impl TropicalRow {
    fn new(lamination: &'static str, alpha: i32, beta: i32, alphastar: i32) -> Self {
        let (a, b) = (HalfPower(alpha), HalfPower(beta));
        TropicalRow {
            lamination,
            alpha: Some(a),
            beta: Some(b),
            product: a.times(b),
            alphastar: HalfPower(alphastar),
            excluded: false,
        }
    }

    /// `c(α)c(β) = c(α*)`.
    pub fn multiplicative(&self) -> bool {
        self.product == self.alphastar
    }
}

/// The two elementary laminations of `M₁`, then the curve bounding `M₁`,
/// for which multiplicativity fails.
pub fn m1_tropical_table() -> Vec<TropicalRow> {
    vec![
        TropicalRow::new("L1", -1, -1, -2),
        TropicalRow::new("L2", 0, -2, -2),
        TropicalRow {
            lamination: "bounding",
            alpha: None,
            beta: None,
            product: HalfPower(-2),
            alphastar: HalfPower(0),
            excluded: true,
        },
    ]
}
