use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{basis_vec, sub_vec, LinearMap, Vector};
use crate::residual::Residual;
use crate::tensor::StructureTensor;

/// `(A, ∘, α)` with an optional unit.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomAssocAlgebra {
    pub alpha: LinearMap,
    pub mul: StructureTensor,
    pub unit: Option<Vector>,
}

/// `(L, [·,·], α)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomLieAlgebra {
    pub alpha: LinearMap,
    pub bracket: StructureTensor,
}

/// `(P, [·,·], ∘, α)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomPoissonAlgebra {
    pub alpha: LinearMap,
    pub mul: StructureTensor,
    pub bracket: StructureTensor,
}

pub(crate) fn check_square(what: &str, m: &LinearMap, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::Shape(format!("{what} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
    }
    Ok(())
}

pub(crate) fn check_op(what: &str, t: &StructureTensor, n: usize) -> Result<()> {
    if t.dim() != n {
        return Err(Error::Shape(format!("{what} has dim {}, expected {n}", t.dim())));
    }
    Ok(())
}

impl HomAssocAlgebra {
    pub fn new(alpha: LinearMap, mul: StructureTensor) -> Self {
        HomAssocAlgebra { alpha, mul, unit: None }
    }

    pub fn dim(&self) -> usize {
        self.mul.dim()
    }

    pub fn validate(&self) -> Result<()> {
        check_square("alpha", &self.alpha, self.dim())?;
        if let Some(u) = &self.unit {
            if u.len() != self.dim() {
                return Err(Error::Shape("unit vector length".into()));
            }
        }
        Ok(())
    }
}

impl HomLieAlgebra {
    pub fn new(alpha: LinearMap, bracket: StructureTensor) -> Self {
        HomLieAlgebra { alpha, bracket }
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn validate(&self) -> Result<()> {
        check_square("alpha", &self.alpha, self.dim())
    }
}

impl HomPoissonAlgebra {
    pub fn new(alpha: LinearMap, mul: StructureTensor, bracket: StructureTensor) -> Self {
        HomPoissonAlgebra { alpha, mul, bracket }
    }

    /// Both operations zero, `α = id`.
    pub fn zero(n: usize) -> Self {
        HomPoissonAlgebra::new(LinearMap::identity(n), StructureTensor::zeros(n), StructureTensor::zeros(n))
    }

    pub fn dim(&self) -> usize {
        self.mul.dim()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        check_square("alpha", &self.alpha, n)?;
        check_op("bracket", &self.bracket, n)
    }

    pub fn assoc_part(&self) -> HomAssocAlgebra {
        HomAssocAlgebra::new(self.alpha.clone(), self.mul.clone())
    }

    pub fn lie_part(&self) -> HomLieAlgebra {
        HomLieAlgebra::new(self.alpha.clone(), self.bracket.clone())
    }

    /// Yau twist: composes both operations with `alpha`; an ordinary Poisson
    /// algebra and a multiplicative `alpha` give a Hom-Poisson algebra.
    pub fn yau_twist(&self, alpha: &LinearMap) -> Result<Self> {
        let n = self.dim();
        check_square("twist", alpha, n)?;
        let twist = |t: &StructureTensor| {
            StructureTensor::from_fn(n, |i, j, k| {
                (0..n).map(|m| alpha.get(k, m) * t.get(i, j, m)).sum()
            })
        };
        Ok(HomPoissonAlgebra::new(alpha.compose(&self.alpha)?, twist(&self.mul), twist(&self.bracket)))
    }
}

fn alpha_multiplicative(label: &str, op: &StructureTensor, alpha: &LinearMap) -> Residual {
    let n = op.dim();
    let a: Vec<Vector> = (0..n).map(|i| alpha.column(i)).collect();
    Residual::collect(label, &[n, n], n, |idx| {
        let (i, j) = (idx[0], idx[1]);
        sub_vec(&alpha.apply(op.product_of_basis(i, j)), &op.eval(&a[i], &a[j]))
    })
}

pub fn check_hom_associative(a: &HomAssocAlgebra, require_commutative: bool) -> Result<Vec<Residual>> {
    a.validate()?;
    let n = a.dim();
    let c = &a.mul;
    let al: Vec<Vector> = (0..n).map(|i| a.alpha.column(i)).collect();
    let e: Vec<Vector> = (0..n).map(|i| basis_vec(n, i)).collect();
    let mut out = vec![alpha_multiplicative("alpha-multiplicative", c, &a.alpha)];
    out.push(Residual::collect("hom-associativity", &[n, n, n], n, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let lhs = c.eval(&al[i], c.product_of_basis(j, k));
        let rhs = c.eval(c.product_of_basis(i, j), &al[k]);
        sub_vec(&lhs, &rhs)
    }));
    if require_commutative {
        out.push(Residual::collect("commutativity", &[n, n], n, |idx| {
            sub_vec(c.product_of_basis(idx[0], idx[1]), c.product_of_basis(idx[1], idx[0]))
        }));
    }
    if let Some(u) = &a.unit {
        out.push(Residual::collect("unit-fixed", &[], n, |_| sub_vec(&a.alpha.apply(u), u)));
        out.push(Residual::collect("left-unit", &[n], n, |idx| sub_vec(&c.eval(u, &e[idx[0]]), &al[idx[0]])));
        out.push(Residual::collect("right-unit", &[n], n, |idx| sub_vec(&c.eval(&e[idx[0]], u), &al[idx[0]])));
    }
    Ok(out)
}

pub fn check_hom_lie(l: &HomLieAlgebra) -> Result<Vec<Residual>> {
    l.validate()?;
    let n = l.dim();
    let b = &l.bracket;
    let al: Vec<Vector> = (0..n).map(|i| l.alpha.column(i)).collect();
    let antisym = Residual::collect("antisymmetry", &[n, n], n, |idx| {
        let (i, j) = (idx[0], idx[1]);
        b.product_of_basis(i, j).iter().zip(b.product_of_basis(j, i)).map(|(x, y)| x + y).collect()
    });
    let morph = alpha_multiplicative("bracket-alpha-morphism", b, &l.alpha);
    let jacobi = Residual::collect("hom-jacobi", &[n, n, n], n, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut v = b.eval(&al[i], b.product_of_basis(j, k));
        for (x, y) in v.iter_mut().zip(b.eval(&al[j], b.product_of_basis(k, i))) {
            *x += y;
        }
        for (x, y) in v.iter_mut().zip(b.eval(&al[k], b.product_of_basis(i, j))) {
            *x += y;
        }
        v
    });
    Ok(vec![antisym, morph, jacobi])
}

/// `[α(x), y∘z] − α(y)∘[x,z] − α(z)∘[x,y]`.
pub fn check_leibniz(p: &HomPoissonAlgebra) -> Result<Residual> {
    p.validate()?;
    let n = p.dim();
    let (c, b) = (&p.mul, &p.bracket);
    let al: Vec<Vector> = (0..n).map(|i| p.alpha.column(i)).collect();
    Ok(Residual::collect("leibniz", &[n, n, n], n, |idx| {
        let (x, y, z) = (idx[0], idx[1], idx[2]);
        let mut v = b.eval(&al[x], c.product_of_basis(y, z));
        for (s, t) in v.iter_mut().zip(c.eval(&al[y], b.product_of_basis(x, z))) {
            *s -= t;
        }
        for (s, t) in v.iter_mut().zip(c.eval(&al[z], b.product_of_basis(x, y))) {
            *s -= t;
        }
        v
    }))
}

pub fn check_hom_poisson(p: &HomPoissonAlgebra) -> Result<Vec<Residual>> {
    let mut out = check_hom_associative(&p.assoc_part(), true)?;
    out.extend(check_hom_lie(&p.lie_part())?);
    out.push(check_leibniz(p)?);
    Ok(out)
}

/// `f` preserves bracket, product and twist.
pub fn check_poisson_homomorphism(
    f: &LinearMap,
    src: &HomPoissonAlgebra,
    dst: &HomPoissonAlgebra,
) -> Result<Vec<Residual>> {
    src.validate()?;
    dst.validate()?;
    let (m, n) = (src.dim(), dst.dim());
    if f.rows() != n || f.cols() != m {
        return Err(Error::Shape(format!("map is {}x{}, expected {n}x{m}", f.rows(), f.cols())));
    }
    let fe: Vec<Vector> = (0..m).map(|i| f.column(i)).collect();
    let preserve = |label: &str, s: &StructureTensor, d: &StructureTensor| {
        Residual::collect(label, &[m, m], n, |idx| {
            let (i, j) = (idx[0], idx[1]);
            sub_vec(&f.apply(s.product_of_basis(i, j)), &d.eval(&fe[i], &fe[j]))
        })
    };
    let twist = f.compose(&src.alpha)?.sub(&dst.alpha.compose(f)?)?;
    Ok(vec![
        preserve("hom-bracket", &src.bracket, &dst.bracket),
        preserve("hom-product", &src.mul, &dst.mul),
        Residual::from_map("hom-twist", &twist),
    ])
}
