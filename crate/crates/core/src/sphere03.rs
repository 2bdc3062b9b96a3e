//! Decorated moduli space of the thrice-punctured sphere: classification
//! into the four top cells and three walls of its flip tripod.
//!
//! The three convexity conditions attached to the edges of the central
//! triangulation are, with `t = t012` and decoration weights `w`:
//!
//! ```text
//! c0 = w1 - w2 t + w0 t^2
//! c1 = w2 - w0 t + w1 t^2
//! c2 = w0 - w1 t + w2 t^2
//! ```
//!
//! All three positive: the central cell. `c1 < 0`: the cell of the
//! triangulation flipped at the edge avoiding puncture 0, and cyclically
//! (`c2 < 0` for puncture 1, `c0 < 0` for puncture 2). At most one condition
//! can be negative; the conditions do not involve `e01` at all.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Sign, Trichotomy};

/// A decorated point: the two moduli plus one positive weight per cusp.
#[derive(Debug, Clone)]
pub struct DecoratedS03<S> {
    pub t012: S,
    pub e01: S,
    pub w: [S; 3],
}

impl<S: Scalar> DecoratedS03<S> {
    pub fn new(t012: S, e01: S, w: [S; 3]) -> Result<Self> {
        for (x, name) in [(&t012, "t012"), (&e01, "e01"), (&w[0], "w0"), (&w[1], "w1"), (&w[2], "w2")]
        {
            if x.sign().map_err(|_| {
                Error::Indeterminate(format!("field {name} cannot be certified positive"))
            })? != Sign::Pos
            {
                return Err(Error::Domain(format!("field {name} must be positive")));
            }
        }
        Ok(DecoratedS03 { t012, e01, w })
    }

    /// Cyclic relabelling of the cusps `0 -> 1 -> 2 -> 0`.
    pub fn rotate_weights(&self) -> Self {
        DecoratedS03 {
            t012: self.t012.clone(),
            e01: self.e01.clone(),
            w: [self.w[2].clone(), self.w[0].clone(), self.w[1].clone()],
        }
    }
}

/// The four cells of the flip tripod.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum S03Cell {
    /// Central cell: all three conditions positive.
    Central,
    /// Flipped at the edge not meeting puncture `i`.
    Flipped(u8),
}

impl S03Cell {
    pub fn name(self) -> String {
        match self {
            S03Cell::Central => "central".into(),
            S03Cell::Flipped(i) => format!("flipped{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct S03CellDescriptor {
    pub cell: S03Cell,
    /// Indices of vanishing conditions (walls). Wall `i` separates the
    /// central cell from `Flipped((i + 2) % 3)`.
    pub walls: Vec<u8>,
    /// Wall decisions that relied on the tolerance band.
    pub tolerance_warnings: Vec<u8>,
}

/// Evaluates the three convexity conditions.
pub fn s03_conditions<S: Scalar>(d: &DecoratedS03<S>) -> [S; 3] {
    let t = &d.t012;
    let w = &d.w;
    let cond = |a: &S, b: &S, c: &S| a.clone() - b.clone() * t.clone() + c.clone() * t.square();
    [
        cond(&w[1], &w[2], &w[0]),
        cond(&w[2], &w[0], &w[1]),
        cond(&w[0], &w[1], &w[2]),
    ]
}

/// Condition index whose negativity marks the cell `Flipped(i)`.
pub fn condition_index_of_cell(i: u8) -> usize {
    // Flipped(0) <-> c1 < 0, Flipped(1) <-> c2 < 0, Flipped(2) <-> c0 < 0.
    ((i as usize) + 1) % 3
}

/// Classifies a decorated point into a cell or onto walls.
pub fn s03_classify<S: Scalar>(d: &DecoratedS03<S>, tol: &S) -> Result<S03CellDescriptor> {
    let conds = s03_conditions(d);
    let mut neg: Vec<u8> = Vec::new();
    let mut walls: Vec<u8> = Vec::new();
    let mut warnings: Vec<u8> = Vec::new();
    for (i, c) in conds.iter().enumerate() {
        let class = match c.sign() {
            Ok(Sign::Pos) => Trichotomy::Above,
            Ok(Sign::Neg) => Trichotomy::Below,
            Ok(Sign::Zero) => Trichotomy::Within,
            Err(_) => {
                let t = c.cmp3(&S::zero(), tol)?;
                if t == Trichotomy::Within {
                    warnings.push(i as u8);
                }
                t
            }
        };
        match class {
            Trichotomy::Below => neg.push(i as u8),
            Trichotomy::Within => walls.push(i as u8),
            Trichotomy::Above => {}
        }
    }
    if neg.len() > 1 {
        return Err(Error::InternalInvariant(format!(
            "{} conditions negative simultaneously; impossible for positive data",
            neg.len()
        )));
    }
    let cell = match neg.first() {
        // c_{i} < 0 marks Flipped((i + 2) % 3).
        Some(&i) => S03Cell::Flipped(((i + 2) % 3) as u8),
        None => S03Cell::Central,
    };
    Ok(S03CellDescriptor { cell, walls, tolerance_warnings: warnings })
}
