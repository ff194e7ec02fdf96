use serde::Serialize;

use crate::linear::{LinearMap, Vector};
use crate::rational::Rational;
use crate::tensor::{RTensor, Tensor3Element};

/// Left-minus-right side of one axiom, evaluated on every basis tuple.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Residual {
    pub label: String,
    pub shape: Vec<usize>,
    pub data: Vec<Rational>,
    /// Index tuple of the first nonzero entry in row-major order.
    pub witness: Option<Vec<usize>>,
}

fn unravel(mut flat: usize, shape: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for (slot, &s) in idx.iter_mut().zip(shape).rev() {
        *slot = flat % s;
        flat /= s;
    }
    idx
}

/// Visits every index tuple of `shape` in row-major order.
pub fn for_each_index(shape: &[usize], mut f: impl FnMut(&[usize])) {
    if shape.contains(&0) {
        return;
    }
    let mut idx = vec![0; shape.len()];
    loop {
        f(&idx);
        let mut k = shape.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

impl Residual {
    pub fn new(label: impl Into<String>, shape: Vec<usize>, data: Vec<Rational>) -> Self {
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        let witness = data.iter().position(|x| !x.is_zero()).map(|p| unravel(p, &shape));
        Residual { label: label.into(), shape, data, witness }
    }

    /// Evaluates `f` on every tuple of `outer` and concatenates the returned
    /// coordinate vectors (each of length `inner`).
    pub fn collect(
        label: impl Into<String>,
        outer: &[usize],
        inner: usize,
        mut f: impl FnMut(&[usize]) -> Vector,
    ) -> Self {
        let mut data = Vec::with_capacity(outer.iter().product::<usize>() * inner);
        for_each_index(outer, |idx| {
            let v = f(idx);
            debug_assert_eq!(v.len(), inner);
            data.extend(v);
        });
        let mut shape = outer.to_vec();
        shape.push(inner);
        Residual::new(label, shape, data)
    }

    /// Like [`Residual::collect`] for operator-valued identities on a module of
    /// dimension `m`: entry `[.., u, v]` is the `f_v`-coordinate of `f(idx)` applied to `f_u`.
    pub fn collect_ops(
        label: impl Into<String>,
        outer: &[usize],
        m: usize,
        mut f: impl FnMut(&[usize]) -> LinearMap,
    ) -> Self {
        let mut data = Vec::with_capacity(outer.iter().product::<usize>() * m * m);
        for_each_index(outer, |idx| {
            let op = f(idx);
            debug_assert!(op.rows() == m && op.cols() == m);
            for u in 0..m {
                for v in 0..m {
                    data.push(op.get(v, u).clone());
                }
            }
        });
        let mut shape = outer.to_vec();
        shape.extend([m, m]);
        Residual::new(label, shape, data)
    }

    /// Scalar residual that is `1` when `holds` is false.
    pub fn flag(label: impl Into<String>, holds: bool) -> Self {
        let v = if holds { Rational::zero() } else { Rational::one() };
        Residual::new(label, vec![1], vec![v])
    }

    pub fn from_map(label: impl Into<String>, m: &LinearMap) -> Self {
        Residual::new(label, vec![m.rows(), m.cols()], m.entries().to_vec())
    }

    pub fn from_r(label: impl Into<String>, r: &RTensor) -> Self {
        Residual::new(label, vec![r.dim(), r.dim()], r.entries().to_vec())
    }

    pub fn from_tensor3(label: impl Into<String>, t: &Tensor3Element) -> Self {
        let n = t.dim();
        Residual::new(label, vec![n, n, n], t.entries().to_vec())
    }

    /// Stacks per-basis `P⊗P⊗P` values into one residual indexed `[k][i][j][l]`.
    pub fn from_tensor3_family(label: impl Into<String>, ts: &[Tensor3Element]) -> Self {
        let n = ts.first().map_or(0, Tensor3Element::dim);
        let data = ts.iter().flat_map(|t| t.entries().iter().cloned()).collect();
        Residual::new(label, vec![ts.len(), n, n, n], data)
    }

    pub fn from_r_family(label: impl Into<String>, rs: &[RTensor]) -> Self {
        let n = rs.first().map_or(0, RTensor::dim);
        let data = rs.iter().flat_map(|t| t.entries().iter().cloned()).collect();
        Residual::new(label, vec![rs.len(), n, n], data)
    }

    /// Same data under a different multi-index shape of equal size.
    pub fn reshaped(self, shape: Vec<usize>) -> Self {
        Residual::new(self.label, shape, self.data)
    }

    pub fn is_zero(&self) -> bool {
        self.witness.is_none()
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        let flat = idx.iter().zip(&self.shape).fold(0, |acc, (i, s)| acc * s + i);
        &self.data[flat]
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Value at the witness index, if any.
    pub fn witness_value(&self) -> Option<&Rational> {
        self.witness.as_ref().map(|w| self.get(w))
    }

    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.label = format!("{prefix}.{}", self.label);
        self
    }
}

/// Pass/fail helpers on a residual battery.
pub trait ResidualSet {
    fn passes(&self) -> bool;
    fn failing(&self) -> Vec<&Residual>;
    fn find(&self, label: &str) -> Option<&Residual>;
    fn failing_labels(&self) -> Vec<String> {
        self.failing().iter().map(|r| r.label.clone()).collect()
    }
}

impl ResidualSet for [Residual] {
    fn passes(&self) -> bool {
        self.iter().all(Residual::is_zero)
    }

    fn failing(&self) -> Vec<&Residual> {
        self.iter().filter(|r| !r.is_zero()).collect()
    }

    fn find(&self, label: &str) -> Option<&Residual> {
        self.iter().find(|r| r.label == label)
    }
}

impl ResidualSet for Vec<Residual> {
    fn passes(&self) -> bool {
        self.as_slice().passes()
    }

    fn failing(&self) -> Vec<&Residual> {
        self.as_slice().failing()
    }

    fn find(&self, label: &str) -> Option<&Residual> {
        self.as_slice().find(label)
    }
}

pub(crate) fn prefix_all(prefix: &str, rs: Vec<Residual>) -> Vec<Residual> {
    rs.into_iter().map(|r| r.prefixed(prefix)).collect()
}
