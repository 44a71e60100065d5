//! Conditional probability tables `P(ab|xy)` for both measurement orders.

use std::fmt;

use crate::error::{Error, Result};

/// Which party's device operates first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    AliceFirst,
    BobFirst,
}

impl Order {
    pub const BOTH: [Order; 2] = [Order::AliceFirst, Order::BobFirst];
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::AliceFirst => "alice_first",
            Order::BobFirst => "bob_first",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

/// `P(ab)` for one input pair and one order, indexed `[a][b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDistribution([[f64; 2]; 2]);

impl JointDistribution {
    /// Checks entries lie in `[0, 1]` and sum to 1, both within `tol`.
    pub fn new(table: [[f64; 2]; 2], tol: f64) -> Result<Self> {
        let bad = |reason: String| Error::InvalidTable {
            key: format!("{table:?}"),
            reason,
        };
        for p in table.iter().flatten() {
            if !p.is_finite() || *p < -tol || *p > 1.0 + tol {
                return Err(bad(format!("entry {p} outside [0, 1]")));
            }
        }
        let sum: f64 = table.iter().flatten().sum();
        if (sum - 1.0).abs() > tol {
            return Err(bad(format!("entries sum to {sum}")));
        }
        Ok(Self(table))
    }

    /// No validation; callers guarantee normalization.
    pub(crate) fn from_raw(table: [[f64; 2]; 2]) -> Self {
        Self(table)
    }

    /// All weight on `(a, b)`.
    pub fn deterministic(a: usize, b: usize) -> Self {
        let mut t = [[0.0; 2]; 2];
        t[a][b] = 1.0;
        Self(t)
    }

    pub fn uniform() -> Self {
        Self([[0.25; 2]; 2])
    }

    pub fn p(&self, a: usize, b: usize) -> f64 {
        self.0[a][b]
    }

    pub fn table(&self) -> &[[f64; 2]; 2] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().flatten().sum()
    }

    /// `Σ_b P(ab)`.
    pub fn alice_marginal(&self, a: usize) -> f64 {
        self.0[a][0] + self.0[a][1]
    }

    /// `Σ_a P(ab)`.
    pub fn bob_marginal(&self, b: usize) -> f64 {
        self.0[0][b] + self.0[1][b]
    }

    /// `E = Σ (−1)^{a⊕b} P(ab)`.
    pub fn correlator(&self) -> f64 {
        self.0[0][0] + self.0[1][1] - self.0[0][1] - self.0[1][0]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                d = d.max((self.0[a][b] - other.0[a][b]).abs());
            }
        }
        d
    }
}

/// One order's complete behavior, indexed `[x][y]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Behavior([[JointDistribution; 2]; 2]);

impl Behavior {
    pub fn new(tables: [[JointDistribution; 2]; 2]) -> Self {
        Self(tables)
    }

    /// Builds the behavior from `f(x, y, a, b) = P(ab|xy)`.
    #[allow(clippy::needless_range_loop)]
    pub fn from_fn(tol: f64, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Result<Self> {
        let mut out = [[JointDistribution::uniform(); 2]; 2];
        for x in 0..2 {
            for y in 0..2 {
                let t = [[f(x, y, 0, 0), f(x, y, 0, 1)], [f(x, y, 1, 0), f(x, y, 1, 1)]];
                out[x][y] = JointDistribution::new(t, tol).map_err(|e| match e {
                    Error::InvalidTable { reason, .. } => Error::InvalidTable {
                        key: format!("{x}{y}"),
                        reason,
                    },
                    e => e,
                })?;
            }
        }
        Ok(Self(out))
    }

    pub fn get(&self, x: usize, y: usize) -> &JointDistribution {
        &self.0[x][y]
    }

    pub fn p(&self, a: usize, b: usize, x: usize, y: usize) -> f64 {
        self.0[x][y].p(a, b)
    }

    pub fn tables(&self) -> &[[JointDistribution; 2]; 2] {
        &self.0
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for x in 0..2 {
            for y in 0..2 {
                d = d.max(self.0[x][y].max_abs_diff(&other.0[x][y]));
            }
        }
        d
    }

    /// The behavior with both parties' outcomes flipped.
    pub fn relabeled(&self) -> Self {
        let mut out = self.0;
        for row in out.iter_mut() {
            for t in row.iter_mut() {
                let s = t.0;
                t.0 = [[s[1][1], s[1][0]], [s[0][1], s[0][0]]];
            }
        }
        Self(out)
    }
}

/// A two-party device: one behavior per measurement order plus a free-text
/// note on where the tables came from.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlocalBox {
    pub alice_first: Behavior,
    pub bob_first: Behavior,
    pub provenance: String,
}

impl NonlocalBox {
    pub fn new(alice_first: Behavior, bob_first: Behavior, provenance: impl Into<String>) -> Self {
        Self {
            alice_first,
            bob_first,
            provenance: provenance.into(),
        }
    }

    /// Same behavior in both orders.
    pub fn order_independent(b: Behavior, provenance: impl Into<String>) -> Self {
        Self::new(b, b, provenance)
    }

    pub fn behavior(&self, order: Order) -> &Behavior {
        match order {
            Order::AliceFirst => &self.alice_first,
            Order::BobFirst => &self.bob_first,
        }
    }
}
