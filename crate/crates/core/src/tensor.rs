use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{axpy, is_zero_vec, zero_vec, LinearMap, Vector};
use crate::rational::Rational;

fn check_dim(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Shape(format!("{what}: expected dimension {expected}, found {found}")));
    }
    Ok(())
}

/// Bilinear operation by structure constants: `e_i * e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StructureTensor {
    dim: usize,
    c: Vec<Rational>,
}

impl StructureTensor {
    pub fn zeros(dim: usize) -> Self {
        StructureTensor { dim, c: zero_vec(dim * dim * dim) }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t.c[(i * dim + j) * dim + k] = f(i, j, k);
                }
            }
        }
        t
    }

    /// Sparse constructor from `(i, j, k, value)` entries.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Self {
        let mut t = Self::zeros(dim);
        for (i, j, k, v) in entries {
            t.set(*i, *j, *k, v.clone());
        }
        t
    }

    pub fn from_flat(dim: usize, c: Vec<Rational>) -> Result<Self> {
        check_dim("structure tensor entries", dim * dim * dim, c.len())?;
        Ok(StructureTensor { dim, c })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.dim;
        self.c[(i * d + j) * d + k] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.c
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.c
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.c)
    }

    /// Output coordinates of `e_i * e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.c[start..start + self.dim]
    }

    /// `x * y` for coordinate vectors.
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.product_of_basis(i, j));
            }
        }
        out
    }

    /// Left multiplication `L(x): y ↦ x * y`.
    pub fn left(&self, x: &[Rational]) -> LinearMap {
        let n = self.dim;
        let mut m = LinearMap::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        let v = m.get(k, j) + &(xi * c);
                        m.set(k, j, v);
                    }
                }
            }
        }
        m
    }

    /// Right multiplication `R(y): x ↦ x * y`.
    pub fn right(&self, y: &[Rational]) -> LinearMap {
        let n = self.dim;
        let mut m = LinearMap::zeros(n, n);
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for i in 0..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        let v = m.get(k, i) + &(yj * c);
                        m.set(k, i, v);
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, s: &Rational) -> Self {
        StructureTensor { dim: self.dim, c: self.c.iter().map(|x| s * x).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim("structure tensor sum", self.dim, other.dim)?;
        Ok(StructureTensor { dim: self.dim, c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() })
    }

    /// The opposite operation `(x, y) ↦ y * x`.
    pub fn opposite(&self) -> Self {
        Self::from_fn(self.dim, |i, j, k| self.get(j, i, k).clone())
    }
}

/// Linear map `A → End(V)`: `S(e_x) f_u = Σ_v s[x][u][v] f_v`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ActionTensor {
    alg_dim: usize,
    mod_dim: usize,
    s: Vec<Rational>,
}

impl ActionTensor {
    pub fn zeros(alg_dim: usize, mod_dim: usize) -> Self {
        ActionTensor { alg_dim, mod_dim, s: zero_vec(alg_dim * mod_dim * mod_dim) }
    }

    pub fn from_fn(alg_dim: usize, mod_dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut t = Self::zeros(alg_dim, mod_dim);
        for x in 0..alg_dim {
            for u in 0..mod_dim {
                for v in 0..mod_dim {
                    t.set(x, u, v, f(x, u, v));
                }
            }
        }
        t
    }

    pub fn from_flat(alg_dim: usize, mod_dim: usize, s: Vec<Rational>) -> Result<Self> {
        check_dim("action tensor entries", alg_dim * mod_dim * mod_dim, s.len())?;
        Ok(ActionTensor { alg_dim, mod_dim, s })
    }

    /// The adjoint (or left-regular) action of an algebra on itself.
    pub fn regular(op: &StructureTensor) -> Self {
        ActionTensor { alg_dim: op.dim(), mod_dim: op.dim(), s: op.entries().to_vec() }
    }

    /// Builds the action whose operator at `e_x` is the given matrix.
    pub fn from_operators(ops: &[LinearMap]) -> Result<Self> {
        let m = ops.first().map_or(0, LinearMap::rows);
        let mut t = Self::zeros(ops.len(), m);
        for (x, op) in ops.iter().enumerate() {
            if op.rows() != m || op.cols() != m {
                return Err(Error::Shape("action operators must be square of equal size".into()));
            }
            for u in 0..m {
                for v in 0..m {
                    t.set(x, u, v, op.get(v, u).clone());
                }
            }
        }
        Ok(t)
    }

    pub fn alg_dim(&self) -> usize {
        self.alg_dim
    }

    pub fn mod_dim(&self) -> usize {
        self.mod_dim
    }

    pub fn get(&self, x: usize, u: usize, v: usize) -> &Rational {
        &self.s[(x * self.mod_dim + u) * self.mod_dim + v]
    }

    pub fn set(&mut self, x: usize, u: usize, v: usize, val: Rational) {
        let m = self.mod_dim;
        self.s[(x * m + u) * m + v] = val;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.s
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.s
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.s)
    }

    /// Operator matrix of `S(x)` on `V`.
    pub fn operator(&self, x: &[Rational]) -> LinearMap {
        let m = self.mod_dim;
        let mut out = LinearMap::zeros(m, m);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for u in 0..m {
                for v in 0..m {
                    let s = self.get(a, u, v);
                    if !s.is_zero() {
                        let val = out.get(v, u) + &(xa * s);
                        out.set(v, u, val);
                    }
                }
            }
        }
        out
    }

    /// `S(x) u`.
    pub fn act(&self, x: &[Rational], u: &[Rational]) -> Vector {
        let m = self.mod_dim;
        let mut out = zero_vec(m);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, ub) in u.iter().enumerate() {
                if ub.is_zero() {
                    continue;
                }
                let start = (a * m + b) * m;
                axpy(&mut out, &(xa * ub), &self.s[start..start + m]);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ActionTensor { alg_dim: self.alg_dim, mod_dim: self.mod_dim, s: self.s.iter().map(|x| c * x).collect() }
    }
}

/// Dual action `ρ*`: `⟨ρ*(x)v*, u⟩ = −⟨v*, ρ(x)u⟩`, i.e. `ρ*[x] = −ρ[x]ᵀ`.
pub fn dual_action(rho: &ActionTensor) -> ActionTensor {
    ActionTensor::from_fn(rho.alg_dim, rho.mod_dim, |x, v, u| -rho.get(x, u, v))
}

/// Element `r = Σ r[i][j] e_i⊗e_j` of `P⊗P`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RTensor {
    dim: usize,
    r: Vec<Rational>,
}

impl RTensor {
    pub fn zeros(dim: usize) -> Self {
        RTensor { dim, r: zero_vec(dim * dim) }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                t.r[i * dim + j] = f(i, j);
            }
        }
        t
    }

    pub fn from_flat(dim: usize, r: Vec<Rational>) -> Result<Self> {
        check_dim("r-tensor entries", dim * dim, r.len())?;
        Ok(RTensor { dim, r })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| Rational::from_int(rows[i][j]))
    }

    /// Simple tensor `a ⊗ b`.
    pub fn outer(a: &[Rational], b: &[Rational]) -> Self {
        Self::from_fn(a.len(), |i, j| &a[i] * &b[j])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.r[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.r[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.r
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.r
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.r)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        RTensor { dim: self.dim, r: self.r.iter().zip(&o.r).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        RTensor { dim: self.dim, r: self.r.iter().zip(&o.r).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RTensor { dim: self.dim, r: self.r.iter().map(|x| c * x).collect() }
    }

    /// `(F⊗G) r`.
    pub fn apply_maps(&self, f: &LinearMap, g: &LinearMap) -> Self {
        let n = self.dim;
        let mut tmp = vec![Rational::zero(); n * n];
        // tmp = r Gᵀ
        for i in 0..n {
            for j in 0..n {
                let rij = self.get(i, j);
                if rij.is_zero() {
                    continue;
                }
                for q in 0..n {
                    let gq = g.get(q, j);
                    if !gq.is_zero() {
                        tmp[i * n + q] += rij * gq;
                    }
                }
            }
        }
        let mut out = Self::zeros(n);
        for p in 0..n {
            for i in 0..n {
                let fp = f.get(p, i);
                if fp.is_zero() {
                    continue;
                }
                for q in 0..n {
                    let t = &tmp[i * n + q];
                    if !t.is_zero() {
                        out.r[p * n + q] += fp * t;
                    }
                }
            }
        }
        out
    }

    /// `r` as a map `P* → P` via `⟨r(a*), b*⟩ = ⟨a*⊗b*, r⟩`; its matrix is `rᵀ`.
    pub fn as_map(&self) -> LinearMap {
        LinearMap::from_fn(self.dim, self.dim, |j, i| self.get(i, j).clone())
    }
}

/// Exchange operator `τ(a⊗b) = b⊗a`.
pub fn flip_tau(x: &RTensor) -> RTensor {
    RTensor::from_fn(x.dim, |i, j| x.get(j, i).clone())
}

/// Element of `P⊗P⊗P`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Tensor3Element {
    dim: usize,
    t: Vec<Rational>,
}

impl Tensor3Element {
    pub fn zeros(dim: usize) -> Self {
        Tensor3Element { dim, t: zero_vec(dim * dim * dim) }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t.t[(i * dim + j) * dim + k] = f(i, j, k);
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.t[(i * self.dim + j) * self.dim + k]
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, v: &Rational) {
        let d = self.dim;
        self.t[(i * d + j) * d + k] += v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.t)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        Tensor3Element { dim: self.dim, t: self.t.iter().zip(&o.t).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        Tensor3Element { dim: self.dim, t: self.t.iter().zip(&o.t).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Tensor3Element { dim: self.dim, t: self.t.iter().map(|x| c * x).collect() }
    }

    /// `(F⊗G⊗H) t`.
    pub fn apply_maps(&self, f: &LinearMap, g: &LinearMap, h: &LinearMap) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = self.get(i, j, k);
                    if t.is_zero() {
                        continue;
                    }
                    for p in 0..n {
                        let fp = f.get(p, i);
                        if fp.is_zero() {
                            continue;
                        }
                        let a = t * fp;
                        for q in 0..n {
                            let gq = g.get(q, j);
                            if gq.is_zero() {
                                continue;
                            }
                            let b = &a * gq;
                            for s in 0..n {
                                let hs = h.get(s, k);
                                if !hs.is_zero() {
                                    out.add_at(p, q, s, &(&b * hs));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Exchanges the first two tensor legs.
    pub fn flip12(&self) -> Self {
        Self::from_fn(self.dim, |i, j, k| self.get(j, i, k).clone())
    }
}

/// Comultiplication `δ(e_k) = Σ d[k][i][j] e_i⊗e_j`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoStructureTensor {
    dim: usize,
    d: Vec<Rational>,
}

impl CoStructureTensor {
    pub fn zeros(dim: usize) -> Self {
        CoStructureTensor { dim, d: zero_vec(dim * dim * dim) }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut t = Self::zeros(dim);
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    t.d[(k * dim + i) * dim + j] = f(k, i, j);
                }
            }
        }
        t
    }

    pub fn from_flat(dim: usize, d: Vec<Rational>) -> Result<Self> {
        check_dim("co-structure tensor entries", dim * dim * dim, d.len())?;
        Ok(CoStructureTensor { dim, d })
    }

    /// Assembles `δ` from its values on the basis.
    pub fn from_values(values: &[RTensor]) -> Self {
        let n = values.len();
        Self::from_fn(n, |k, i, j| values[k].get(i, j).clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.d[(k * self.dim + i) * self.dim + j]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: Rational) {
        let n = self.dim;
        self.d[(k * n + i) * n + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.d
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.d
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.d)
    }

    /// `δ(e_k)`.
    pub fn value(&self, k: usize) -> RTensor {
        let n = self.dim;
        RTensor::from_flat(n, self.d[k * n * n..(k + 1) * n * n].to_vec()).expect("slice has n² entries")
    }

    /// `δ(x)` for a coordinate vector.
    pub fn apply(&self, x: &[Rational]) -> RTensor {
        let n = self.dim;
        let mut out = zero_vec(n * n);
        for (k, xk) in x.iter().enumerate() {
            axpy(&mut out, xk, &self.d[k * n * n..(k + 1) * n * n]);
        }
        RTensor::from_flat(n, out).expect("n² entries")
    }

    /// `(id⊗δ) X` for `X ∈ P⊗P`: expands the second leg.
    pub fn expand_right(&self, x: &RTensor) -> Tensor3Element {
        let n = self.dim;
        let mut out = Tensor3Element::zeros(n);
        for p in 0..n {
            for m in 0..n {
                let c = x.get(p, m);
                if c.is_zero() {
                    continue;
                }
                for q in 0..n {
                    for r in 0..n {
                        let d = self.get(m, q, r);
                        if !d.is_zero() {
                            out.add_at(p, q, r, &(c * d));
                        }
                    }
                }
            }
        }
        out
    }

    /// `(δ⊗id) X` for `X ∈ P⊗P`: expands the first leg.
    pub fn expand_left(&self, x: &RTensor) -> Tensor3Element {
        let n = self.dim;
        let mut out = Tensor3Element::zeros(n);
        for m in 0..n {
            for r in 0..n {
                let c = x.get(m, r);
                if c.is_zero() {
                    continue;
                }
                for p in 0..n {
                    for q in 0..n {
                        let d = self.get(m, p, q);
                        if !d.is_zero() {
                            out.add_at(p, q, r, &(c * d));
                        }
                    }
                }
            }
        }
        out
    }
}
