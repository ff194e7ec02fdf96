use serde::{Deserialize, Serialize};

use crate::algebra::{check_square, HomAssocAlgebra, HomLieAlgebra, HomPoissonAlgebra};
use crate::error::{Error, Result};
use crate::linear::{dual_map, LinearMap};
use crate::rational::Rational;
use crate::residual::{prefix_all, Residual, ResidualSet};
use crate::tensor::{dual_action, ActionTensor, StructureTensor};

/// `(V, S, T, β)` over a Hom-Poisson algebra: `S` the Lie action, `T` the
/// associative action.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PoissonModule {
    pub base: HomPoissonAlgebra,
    pub beta: LinearMap,
    pub s: ActionTensor,
    pub t: ActionTensor,
}

impl PoissonModule {
    pub fn vdim(&self) -> usize {
        self.beta.rows()
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        check_action("S", &self.s, self.base.dim(), self.vdim())?;
        check_action("T", &self.t, self.base.dim(), self.vdim())?;
        check_square("beta", &self.beta, self.vdim())
    }

    /// `(P, ad, L_∘, α)`.
    pub fn adjoint(p: &HomPoissonAlgebra) -> Self {
        PoissonModule {
            base: p.clone(),
            beta: p.alpha.clone(),
            s: ActionTensor::regular(&p.bracket),
            t: ActionTensor::regular(&p.mul),
        }
    }

    /// `(P*, ad*, −L*_∘, α*)`.
    pub fn coadjoint(p: &HomPoissonAlgebra) -> Self {
        PoissonModule {
            base: p.clone(),
            beta: dual_map(&p.alpha),
            s: coadjoint_action(&p.bracket),
            t: neg_coregular_action(&p.mul),
        }
    }
}

/// `ad*`: the dual of the adjoint action of `op`.
pub fn coadjoint_action(op: &StructureTensor) -> ActionTensor {
    dual_action(&ActionTensor::regular(op))
}

/// `−L*`: minus the dual of left multiplication.
pub fn neg_coregular_action(op: &StructureTensor) -> ActionTensor {
    dual_action(&ActionTensor::regular(op)).scale(&Rational::from_int(-1))
}

pub(crate) fn check_action(what: &str, a: &ActionTensor, n: usize, m: usize) -> Result<()> {
    if a.alg_dim() != n || a.mod_dim() != m {
        return Err(Error::Shape(format!(
            "{what} acts {}→End({}), expected {n}→End({m})",
            a.alg_dim(),
            a.mod_dim()
        )));
    }
    Ok(())
}

/// Operators of an action at every basis vector and at every `α(e_x)`.
pub(crate) struct OpTable {
    pub at: Vec<LinearMap>,
    pub at_alpha: Vec<LinearMap>,
}

impl OpTable {
    pub fn new(act: &ActionTensor, alpha: &LinearMap) -> Self {
        let n = act.alg_dim();
        let at = (0..n).map(|x| act.operator(&crate::linear::basis_vec(n, x))).collect();
        let at_alpha = (0..n).map(|x| act.operator(&alpha.column(x))).collect();
        OpTable { at, at_alpha }
    }
}

/// `β ρ(x) = ρ(α x) β` and `ρ([x,y]) β = ρ(α x) ρ(y) − ρ(α y) ρ(x)`.
pub fn check_lie_rep(l: &HomLieAlgebra, rho: &ActionTensor, beta: &LinearMap) -> Result<Vec<Residual>> {
    l.validate()?;
    let (n, m) = (l.dim(), beta.rows());
    check_square("beta", beta, m)?;
    check_action("rho", rho, n, m)?;
    let ops = OpTable::new(rho, &l.alpha);
    let twist = Residual::collect_ops("rep-twist", &[n], m, |i| {
        beta.dot(&ops.at[i[0]]).minus(&ops.at_alpha[i[0]].dot(beta))
    });
    let bracket = Residual::collect_ops("rep-bracket", &[n, n], m, |i| {
        let (x, y) = (i[0], i[1]);
        rho.operator(l.bracket.product_of_basis(x, y))
            .dot(beta)
            .minus(&ops.at_alpha[x].dot(&ops.at[y]))
            .plus(&ops.at_alpha[y].dot(&ops.at[x]))
    });
    Ok(vec![twist, bracket])
}

/// `μ(x∘y) ν = μ(α x) μ(y)`.
pub fn check_assoc_rep(a: &HomAssocAlgebra, mu: &ActionTensor, nu: &LinearMap) -> Result<Vec<Residual>> {
    a.validate()?;
    let (n, m) = (a.dim(), nu.rows());
    check_square("nu", nu, m)?;
    check_action("mu", mu, n, m)?;
    let ops = OpTable::new(mu, &a.alpha);
    Ok(vec![Residual::collect_ops("assoc-rep", &[n, n], m, |i| {
        let (x, y) = (i[0], i[1]);
        mu.operator(a.mul.product_of_basis(x, y)).dot(nu).minus(&ops.at_alpha[x].dot(&ops.at[y]))
    })])
}

pub fn check_poisson_module(md: &PoissonModule) -> Result<Vec<Residual>> {
    md.validate()?;
    let p = &md.base;
    let (n, m) = (p.dim(), md.vdim());
    let beta = &md.beta;
    let s = OpTable::new(&md.s, &p.alpha);
    let t = OpTable::new(&md.t, &p.alpha);
    let mut out = vec![
        Residual::collect_ops("module-twist-S", &[n], m, |i| {
            beta.dot(&s.at[i[0]]).minus(&s.at_alpha[i[0]].dot(beta))
        }),
        Residual::collect_ops("module-twist-T", &[n], m, |i| {
            beta.dot(&t.at[i[0]]).minus(&t.at_alpha[i[0]].dot(beta))
        }),
        Residual::collect_ops("module-product", &[n, n], m, |i| {
            let (x, y) = (i[0], i[1]);
            md.s.operator(p.mul.product_of_basis(x, y))
                .dot(beta)
                .minus(&t.at_alpha[y].dot(&s.at[x]))
                .minus(&t.at_alpha[x].dot(&s.at[y]))
        }),
        Residual::collect_ops("module-bracket", &[n, n], m, |i| {
            let (x, y) = (i[0], i[1]);
            md.t.operator(p.bracket.product_of_basis(x, y))
                .dot(beta)
                .minus(&s.at_alpha[x].dot(&t.at[y]))
                .plus(&t.at_alpha[y].dot(&s.at[x]))
        }),
    ];
    out.extend(prefix_all("S", check_lie_rep(&p.lie_part(), &md.s, beta)?));
    out.extend(prefix_all("T", check_assoc_rep(&p.assoc_part(), &md.t, beta)?));
    Ok(out)
}

/// `P ⋉ V`: bracket `{x1+v1, x2+v2} = {x1,x2} + S(x1)v2 − S(x2)v1`, product
/// `x1∘x2 + T(x1)v2 + T(x2)v1`, twist `α ⊕ β`. Built for any module, valid or not.
pub fn semidirect_product(md: &PoissonModule) -> Result<HomPoissonAlgebra> {
    md.validate()?;
    let p = &md.base;
    let (n, m) = (p.dim(), md.vdim());
    let big = n + m;
    let mut bracket = StructureTensor::zeros(big);
    let mut mul = StructureTensor::zeros(big);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                bracket.set(i, j, k, p.bracket.get(i, j, k).clone());
                mul.set(i, j, k, p.mul.get(i, j, k).clone());
            }
        }
    }
    for x in 0..n {
        for u in 0..m {
            for v in 0..m {
                let sv = md.s.get(x, u, v);
                bracket.set(x, n + u, n + v, sv.clone());
                bracket.set(n + u, x, n + v, -sv);
                let tv = md.t.get(x, u, v);
                mul.set(x, n + u, n + v, tv.clone());
                mul.set(n + u, x, n + v, tv.clone());
            }
        }
    }
    Ok(HomPoissonAlgebra::new(p.alpha.direct_sum(&md.beta), mul, bracket))
}

/// Conditions under which `(V*, S*, −T*, β*)` is again a module. Each is the
/// transpose of one module axiom of the dual:
/// `β S(αx) = S(x) β`, `β T(αx) = T(x) β`,
/// `β S(x∘y) = S(x)T(αy) + S(y)T(αx)`, `β T([x,y]) = S(x)T(αy) − T(y)S(αx)`,
/// `β S([x,y]) = S(x)S(αy) − S(y)S(αx)`, `β T(x∘y) = T(y)T(αx)`.
pub fn dual_module_hypotheses(md: &PoissonModule) -> Result<Vec<Residual>> {
    md.validate()?;
    let p = &md.base;
    let (n, m) = (p.dim(), md.vdim());
    let beta = &md.beta;
    let s = OpTable::new(&md.s, &p.alpha);
    let t = OpTable::new(&md.t, &p.alpha);
    Ok(vec![
        Residual::collect_ops("dual-twist-S", &[n], m, |i| {
            beta.dot(&s.at_alpha[i[0]]).minus(&s.at[i[0]].dot(beta))
        }),
        Residual::collect_ops("dual-twist-T", &[n], m, |i| {
            beta.dot(&t.at_alpha[i[0]]).minus(&t.at[i[0]].dot(beta))
        }),
        Residual::collect_ops("dual-product", &[n, n], m, |i| {
            let (x, y) = (i[0], i[1]);
            beta.dot(&md.s.operator(p.mul.product_of_basis(x, y)))
                .minus(&s.at[x].dot(&t.at_alpha[y]))
                .minus(&s.at[y].dot(&t.at_alpha[x]))
        }),
        Residual::collect_ops("dual-bracket", &[n, n], m, |i| {
            let (x, y) = (i[0], i[1]);
            beta.dot(&md.t.operator(p.bracket.product_of_basis(x, y)))
                .minus(&s.at[x].dot(&t.at_alpha[y]))
                .plus(&t.at[y].dot(&s.at_alpha[x]))
        }),
        Residual::collect_ops("dual-lie-rep", &[n, n], m, |i| {
            let (x, y) = (i[0], i[1]);
            beta.dot(&md.s.operator(p.bracket.product_of_basis(x, y)))
                .minus(&s.at[x].dot(&s.at_alpha[y]))
                .plus(&s.at[y].dot(&s.at_alpha[x]))
        }),
        Residual::collect_ops("dual-assoc-rep", &[n, n], m, |i| {
            let (x, y) = (i[0], i[1]);
            beta.dot(&md.t.operator(p.mul.product_of_basis(x, y))).minus(&t.at[y].dot(&t.at_alpha[x]))
        }),
    ])
}

/// `(V*, S*, −T*, β*)`, refused unless [`dual_module_hypotheses`] all vanish.
pub fn dual_module(md: &PoissonModule) -> Result<PoissonModule> {
    let hyp = dual_module_hypotheses(md)?;
    if let Some(bad) = hyp.failing().first() {
        return Err(Error::HypothesisViolated {
            label: bad.label.clone(),
            witness: bad.witness.clone().unwrap_or_default(),
        });
    }
    Ok(PoissonModule {
        base: md.base.clone(),
        beta: dual_map(&md.beta),
        s: dual_action(&md.s),
        t: dual_action(&md.t).scale(&Rational::from_int(-1)),
    })
}
