//! Leg embeddings `r12, r13, r23` of `r ∈ P⊗P` into `P⊗P⊗P` and their
//! slotwise products. The formal unit `𝟙` occupying the free slot of an
//! embedding is never materialized as a coordinate; it only survives in
//! [`UnitLegTensor`] when both factors share the same legs.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::{RTensor, StructureTensor, Tensor3Element};

/// Which two of the three tensor slots an `r` occupies.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Legs {
    L12,
    L13,
    L23,
}

impl Legs {
    /// Zero-based slot positions of the two legs, in increasing order.
    pub fn slots(self) -> (usize, usize) {
        match self {
            Legs::L12 => (0, 1),
            Legs::L13 => (0, 2),
            Legs::L23 => (1, 2),
        }
    }

    /// Zero-based position of the formal unit.
    pub fn unit_slot(self) -> usize {
        match self {
            Legs::L12 => 2,
            Legs::L13 => 1,
            Legs::L23 => 0,
        }
    }
}

impl fmt::Display for Legs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.slots();
        write!(f, "{}{}", a + 1, b + 1)
    }
}

/// `r_{pq}`: an element of `P⊗P` placed in two of three slots, the third
/// holding the formal unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LegEmbedding {
    pub r: RTensor,
    pub legs: Legs,
}

pub fn embed_leg(r: &RTensor, legs: Legs) -> LegEmbedding {
    LegEmbedding { r: r.clone(), legs }
}

impl LegEmbedding {
    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    /// Nonzero terms as `(coefficient, slot contents)`, `None` marking `𝟙`.
    pub fn terms(&self) -> Vec<(Rational, [Option<usize>; 3])> {
        let n = self.r.dim();
        let (p, q) = self.legs.slots();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = self.r.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let mut slots = [None; 3];
                slots[p] = Some(i);
                slots[q] = Some(j);
                out.push((c.clone(), slots));
            }
        }
        out
    }
}

impl fmt::Display for LegEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, slots)) in terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})")?;
            }
            let names: Vec<String> =
                slots.iter().map(|s| s.map_or("𝟙".to_string(), |i| format!("e{}", i + 1))).collect();
            write!(f, "{}", names.join("⊗"))?;
        }
        Ok(())
    }
}

/// A product `r_{pq} ∘ s_{uv}` of two embeddings: the left factor's legs, then the right's.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LegPattern {
    pub left: Legs,
    pub right: Legs,
}

impl LegPattern {
    pub const fn new(left: Legs, right: Legs) -> Self {
        LegPattern { left, right }
    }
}

fn shared_slot(a: Legs, b: Legs) -> Option<usize> {
    if a == b {
        return None;
    }
    let (a0, a1) = a.slots();
    let (b0, b1) = b.slots();
    [a0, a1].into_iter().find(|s| *s == b0 || *s == b1)
}

/// `r_{pq} ∘ s_{uv}` where the two embeddings share exactly one slot; `op`
/// multiplies the shared slot (left factor's element first) and the
/// remaining slots pass through. `op` is the bracket for `[r_{pq}, s_{uv}]`.
pub fn leg_product(r: &RTensor, s: &RTensor, pattern: LegPattern, op: &StructureTensor) -> Result<Tensor3Element> {
    let n = op.dim();
    if r.dim() != n || s.dim() != n {
        return Err(Error::Shape(format!(
            "leg product: r has dim {}, s has dim {}, operation has dim {n}",
            r.dim(),
            s.dim()
        )));
    }
    let shared = shared_slot(pattern.left, pattern.right).ok_or(Error::LegsCoincide)?;
    let (p0, p1) = pattern.left.slots();
    let (q0, q1) = pattern.right.slots();
    let mut out = Tensor3Element::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let a = r.get(i, j);
            if a.is_zero() {
                continue;
            }
            let mut left = [None; 3];
            left[p0] = Some(i);
            left[p1] = Some(j);
            for k in 0..n {
                for l in 0..n {
                    let b = s.get(k, l);
                    if b.is_zero() {
                        continue;
                    }
                    let mut right = [None; 3];
                    right[q0] = Some(k);
                    right[q1] = Some(l);
                    let coef = a * b;
                    let (x, y) = (left[shared].unwrap(), right[shared].unwrap());
                    let prod = op.product_of_basis(x, y);
                    let mut idx = [0usize; 3];
                    for slot in 0..3 {
                        if slot != shared {
                            idx[slot] = left[slot].or(right[slot]).expect("every slot is filled");
                        }
                    }
                    for (m, c) in prod.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        idx[shared] = m;
                        out.add_at(idx[0], idx[1], idx[2], &(&coef * c));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Element of `P⊗P⊗P` with the formal unit in one slot: `Σ t[i][j]` placed
/// in the two non-unit slots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitLegTensor {
    pub unit_slot: usize,
    pub t: RTensor,
}

impl UnitLegTensor {
    pub fn is_zero(&self) -> bool {
        self.t.is_zero()
    }
}

/// `r_{pq} ∘ s_{pq}`: both legs collide, the unit slot survives.
pub fn same_leg_product(r: &RTensor, s: &RTensor, legs: Legs, op: &StructureTensor) -> Result<UnitLegTensor> {
    let n = op.dim();
    if r.dim() != n || s.dim() != n {
        return Err(Error::Shape("same-leg product: dimension mismatch".into()));
    }
    let mut t = RTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let a = r.get(i, j);
            if a.is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let b = s.get(k, l);
                    if b.is_zero() {
                        continue;
                    }
                    let coef = a * b;
                    let x = op.product_of_basis(i, k);
                    let y = op.product_of_basis(j, l);
                    for (p, xp) in x.iter().enumerate() {
                        if xp.is_zero() {
                            continue;
                        }
                        let cx = &coef * xp;
                        for (q, yq) in y.iter().enumerate() {
                            if !yq.is_zero() {
                                let v = t.get(p, q) + &(&cx * yq);
                                t.set(p, q, v);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(UnitLegTensor { unit_slot: legs.unit_slot(), t })
}
