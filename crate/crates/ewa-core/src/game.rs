//! 2x2 bimatrix games: payoff reduction, coordination/dominance parameters,
//! classification and Nash equilibria.
//!
//! The payoff bimatrix is stored in the layout
//!
//! ```text
//!            col 1    col 2
//!   row 1   (a, e)   (b, g)
//!   row 2   (c, f)   (d, h)
//! ```
//!
//! where the first entry of each cell goes to player Row. Everything the
//! learning dynamics (and the equilibrium structure) sees enters through the
//! four payoff differences `H = a-c`, `K = d-b`, `L = e-g`, `M = h-f`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A pure-strategy profile `(row strategy, column strategy)`, both in `{1, 2}`.
pub type Cell = (u8, u8);

#[derive(Debug, Error, PartialEq)]
pub enum GameError {
    /// Some comparison pair is tied (`a=c`, `b=d`, `e=g` or `f=h`); the class
    /// and equilibria are not well defined, so we refuse to guess.
    #[error("degenerate game: a tied payoff comparison leaves the class undefined")]
    Degenerate,
    /// `|AC| = |BD|` exactly; the parameter-based prediction is undecidable.
    #[error("coordination and dominance balance exactly; no class prediction")]
    Boundary,
    #[error("invalid payoff input: {0}")]
    Parse(String),
}

/// The eight payoff entries of a 2x2 bimatrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
}

/// Payoff differences `H = a-c`, `K = d-b`, `L = e-g`, `M = h-f`.
///
/// Two games with the same reduction have the same pure and mixed equilibria
/// and identical logit learning dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedPayoff {
    pub h: f64,
    pub k: f64,
    pub l: f64,
    pub m: f64,
}

/// Per-player coordination and dominance parameters.
///
/// `row_coord` (A) measures Row's preference for the diagonal profiles (1,1)
/// and (2,2); `row_dom` (B) the strength of Row's strategy 1 over strategy 2.
/// `col_coord` (C) and `col_dom` (D) are the same quantities for Column. All
/// four carry the 1/4 normalization, i.e. `A = (H+K)/4` and so on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub row_coord: f64,
    pub row_dom: f64,
    pub col_coord: f64,
    pub col_dom: f64,
}

/// Game class by the number and type of Nash equilibria.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameClass {
    /// Two pure NE on the diagonal, (1,1) and (2,2), plus one mixed NE.
    Coordination,
    /// Two pure NE off the diagonal, (1,2) and (2,1), plus one mixed NE.
    Anticoordination,
    /// No pure NE; a unique mixed NE (e.g. Matching Pennies).
    Discoordination,
    /// A unique pure NE, surviving iterated elimination of dominated
    /// strategies.
    DominanceSolvable(Cell),
}

impl GameClass {
    pub fn label(&self) -> &'static str {
        match self {
            GameClass::Coordination => "coordination",
            GameClass::Anticoordination => "anticoordination",
            GameClass::Discoordination => "discoordination",
            GameClass::DominanceSolvable(_) => "dominance-solvable",
        }
    }
}

/// Class prediction from `(A, B, C, D)` alone.
///
/// The parameters determine the class only one way: large dominance forces
/// dominance-solvable, but large coordination does not exclude it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassPrediction {
    Coordination,
    Anticoordination,
    Discoordination,
    DominanceSolvable,
    /// `|AC| > |BD|` but `|B| >= |A|` or `|D| >= |C|`: both a coordination
    /// type and dominance-solvable are consistent with the parameters.
    Ambiguous,
}

impl ClassPrediction {
    pub fn label(&self) -> &'static str {
        match self {
            ClassPrediction::Coordination => "coordination",
            ClassPrediction::Anticoordination => "anticoordination",
            ClassPrediction::Discoordination => "discoordination",
            ClassPrediction::DominanceSolvable => "dominance-solvable",
            ClassPrediction::Ambiguous => "ambiguous",
        }
    }
}

impl PayoffMatrix {
    #[allow(clippy::too_many_arguments)]
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64, g: f64, h: f64) -> Self {
        Self { a, b, c, d, e, f, g, h }
    }

    /// Entries in the order `a,b,c,d,e,f,g,h` (Row's payoffs row-major, then
    /// Column's payoffs row-major).
    pub fn entries(&self) -> [f64; 8] {
        [self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.h]
    }

    pub fn from_entries(v: [f64; 8]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7])
    }

    /// Diagonal game with Row payoffs `(a, d)` and Column payoffs `(e, h)`,
    /// all off-diagonal entries zero.
    pub fn diagonal(a: f64, d: f64, e: f64, h: f64) -> Self {
        Self::new(a, 0.0, 0.0, d, e, 0.0, 0.0, h)
    }

    /// Compact CSV row `a,b,c,d,e,f,g,h`.
    pub fn csv_row(&self) -> String {
        self.entries()
            .iter()
            .map(|v| crate::numfmt::sig12(*v))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse a CSV row of eight finite numbers in entry order.
    pub fn from_csv_row(row: &str) -> Result<Self, GameError> {
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if fields.len() != 8 {
            return Err(GameError::Parse(format!(
                "expected 8 comma-separated payoffs, got {}",
                fields.len()
            )));
        }
        let mut v = [0.0; 8];
        for (slot, field) in v.iter_mut().zip(&fields) {
            let x: f64 = field
                .parse()
                .map_err(|_| GameError::Parse(format!("not a number: {field:?}")))?;
            if !x.is_finite() {
                return Err(GameError::Parse(format!("payoff not finite: {field:?}")));
            }
            *slot = x;
        }
        Ok(Self::from_entries(v))
    }

    /// True when any comparison pair is tied, making classification and
    /// equilibrium structure ill-defined.
    pub fn is_degenerate(&self) -> bool {
        self.a == self.c || self.b == self.d || self.e == self.g || self.f == self.h
    }

    /// The payoff differences that fully determine equilibria and dynamics.
    pub fn reduced(&self) -> ReducedPayoff {
        ReducedPayoff {
            h: self.a - self.c,
            k: self.d - self.b,
            l: self.e - self.g,
            m: self.h - self.f,
        }
    }

    /// The equivalent diagonal-form game `((H,L), 0; 0, (K,M))`.
    pub fn diagonal_form(&self) -> PayoffMatrix {
        let r = self.reduced();
        PayoffMatrix::diagonal(r.h, r.k, r.l, r.m)
    }

    /// Coordination/dominance parameters of this game.
    pub fn params(&self) -> GameParams {
        GameParams::from_reduced(&self.reduced())
    }

    /// Classify by the pairwise payoff orderings.
    pub fn classify(&self) -> Result<GameClass, GameError> {
        if self.is_degenerate() {
            return Err(GameError::Degenerate);
        }
        let r = self.reduced();
        let row_diag = r.h > 0.0 && r.k > 0.0;
        let row_anti = r.h < 0.0 && r.k < 0.0;
        let col_diag = r.l > 0.0 && r.m > 0.0;
        let col_anti = r.l < 0.0 && r.m < 0.0;
        Ok(if row_diag && col_diag {
            GameClass::Coordination
        } else if row_anti && col_anti {
            GameClass::Anticoordination
        } else if (row_diag && col_anti) || (row_anti && col_diag) {
            GameClass::Discoordination
        } else {
            GameClass::DominanceSolvable(self.eliminate_dominated(&r))
        })
    }

    /// One round of iterated elimination; enough in a dominance-solvable 2x2
    /// game, where at least one player has a strictly dominant strategy.
    fn eliminate_dominated(&self, r: &ReducedPayoff) -> Cell {
        if r.h > 0.0 && r.k < 0.0 {
            // Row's strategy 1 dominates; Column best-responds to row 1.
            (1, if r.l > 0.0 { 1 } else { 2 })
        } else if r.h < 0.0 && r.k > 0.0 {
            // Row's strategy 2 dominates; Column best-responds to row 2.
            (2, if r.m > 0.0 { 2 } else { 1 })
        } else if r.l > 0.0 && r.m < 0.0 {
            // Column's strategy 1 dominates; Row best-responds to column 1.
            (if r.h > 0.0 { 1 } else { 2 }, 1)
        } else {
            // Column's strategy 2 dominates; Row best-responds to column 2.
            (if r.k > 0.0 { 2 } else { 1 }, 2)
        }
    }

    /// All pure-strategy Nash equilibria (mutual best responses), sorted.
    pub fn pure_ne(&self) -> Result<Vec<Cell>, GameError> {
        if self.is_degenerate() {
            return Err(GameError::Degenerate);
        }
        let r = self.reduced();
        let mut cells = Vec::new();
        if r.h > 0.0 && r.l > 0.0 {
            cells.push((1, 1));
        }
        if r.k < 0.0 && r.l < 0.0 {
            cells.push((1, 2));
        }
        if r.h < 0.0 && r.m < 0.0 {
            cells.push((2, 1));
        }
        if r.k > 0.0 && r.m > 0.0 {
            cells.push((2, 2));
        }
        cells.sort_unstable();
        Ok(cells)
    }

    /// The interior mixed Nash equilibrium as `(x, y)`, the probabilities of
    /// strategy 1 for Row and Column.
    ///
    /// Row mixes to make Column indifferent, so `x = M/(L+M)` is built from
    /// Column's payoffs, and symmetrically `y = K/(H+K)`. Returns `None` for
    /// dominance-solvable games, where no interior equilibrium exists.
    pub fn mixed_ne(&self) -> Result<Option<(f64, f64)>, GameError> {
        match self.classify()? {
            GameClass::DominanceSolvable(_) => Ok(None),
            _ => {
                let r = self.reduced();
                // In the remaining classes H,K share a sign and L,M share a
                // sign, so both denominators are nonzero.
                let x = r.m / (r.l + r.m);
                let y = r.k / (r.h + r.k);
                Ok(Some((x, y)))
            }
        }
    }
}

impl ReducedPayoff {
    /// Rebuild the diagonal-form matrix carrying exactly these differences.
    pub fn to_matrix(self) -> PayoffMatrix {
        PayoffMatrix::diagonal(self.h, self.k, self.l, self.m)
    }
}

impl GameParams {
    pub fn new(row_coord: f64, row_dom: f64, col_coord: f64, col_dom: f64) -> Self {
        Self { row_coord, row_dom, col_coord, col_dom }
    }

    pub fn from_reduced(r: &ReducedPayoff) -> Self {
        Self {
            row_coord: (r.h + r.k) / 4.0,
            row_dom: (r.h - r.k) / 4.0,
            col_coord: (r.l + r.m) / 4.0,
            col_dom: (r.l - r.m) / 4.0,
        }
    }

    /// A symmetric parameter set (`C = A`, `D = B`).
    pub fn symmetric(coord: f64, dom: f64) -> Self {
        Self::new(coord, dom, coord, dom)
    }

    /// An antisymmetric parameter set (`C = -A`, `D = -B`).
    pub fn antisymmetric(coord: f64, dom: f64) -> Self {
        Self::new(coord, dom, -coord, -dom)
    }

    /// The payoff differences `(H, K, L, M)` reproducing these parameters.
    pub fn to_reduced(&self) -> ReducedPayoff {
        ReducedPayoff {
            h: 2.0 * (self.row_coord + self.row_dom),
            k: 2.0 * (self.row_coord - self.row_dom),
            l: 2.0 * (self.col_coord + self.col_dom),
            m: 2.0 * (self.col_coord - self.col_dom),
        }
    }

    /// Signed coordination parameter `A*C`.
    pub fn coordination(&self) -> f64 {
        self.row_coord * self.col_coord
    }

    /// Dominance parameter `|B*D|`.
    pub fn dominance(&self) -> f64 {
        (self.row_dom * self.col_dom).abs()
    }

    /// Coordination without the 1/4 normalizations, `(H+K)(L+M)`.
    pub fn coordination16(&self) -> f64 {
        16.0 * self.coordination()
    }

    /// Dominance without the 1/4 normalizations, `|(H-K)(L-M)|`.
    pub fn dominance16(&self) -> f64 {
        16.0 * self.dominance()
    }

    /// Predict the class from the parameters alone.
    ///
    /// `|AC| < |BD|` forces dominance-solvable. In the opposite case the sign
    /// pattern decides only when `|B| < |A|` and `|D| < |C|` both hold;
    /// otherwise the prediction is [`ClassPrediction::Ambiguous`].
    pub fn predict_class(&self) -> Result<ClassPrediction, GameError> {
        let coord = self.coordination();
        let dom = self.dominance();
        if coord.abs() == dom {
            return Err(GameError::Boundary);
        }
        if coord.abs() < dom {
            return Ok(ClassPrediction::DominanceSolvable);
        }
        if self.row_dom.abs() < self.row_coord.abs() && self.col_dom.abs() < self.col_coord.abs() {
            Ok(if coord < 0.0 {
                ClassPrediction::Discoordination
            } else if self.row_coord > 0.0 {
                ClassPrediction::Coordination
            } else {
                ClassPrediction::Anticoordination
            })
        } else {
            Ok(ClassPrediction::Ambiguous)
        }
    }
}
