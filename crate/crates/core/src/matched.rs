use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    check_hom_associative, check_hom_lie, check_hom_poisson, HomAssocAlgebra, HomLieAlgebra, HomPoissonAlgebra,
};
use crate::error::{Error, Result};
use crate::linear::{basis_vec, dual_map, sub_vec, zero_vec, LinearMap, Vector};
use crate::modules::{
    check_action, check_assoc_rep, check_lie_rep, check_poisson_module, coadjoint_action, neg_coregular_action,
    PoissonModule,
};
use crate::rational::Rational;
use crate::residual::{prefix_all, Residual};
use crate::tensor::{ActionTensor, StructureTensor};

/// `ρ1: L1 → End(L2)`, `ρ2: L2 → End(L1)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatchedPairLie {
    pub l1: HomLieAlgebra,
    pub l2: HomLieAlgebra,
    pub rho1: ActionTensor,
    pub rho2: ActionTensor,
}

/// `μ1: A1 → End(A2)`, `μ2: A2 → End(A1)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatchedPairAssoc {
    pub a1: HomAssocAlgebra,
    pub a2: HomAssocAlgebra,
    pub mu1: ActionTensor,
    pub mu2: ActionTensor,
}

/// `(ρ1, μ1)` act by `P1` on `P2`, `(ρ2, μ2)` by `P2` on `P1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatchedPairPoisson {
    pub p1: HomPoissonAlgebra,
    pub p2: HomPoissonAlgebra,
    pub rho1: ActionTensor,
    pub mu1: ActionTensor,
    pub rho2: ActionTensor,
    pub mu2: ActionTensor,
}

/// Bilinear form with Gram matrix `B[i][j] = B(e_i, e_j)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BilinearForm {
    pub gram: LinearMap,
}

impl BilinearForm {
    pub fn new(gram: LinearMap) -> Self {
        BilinearForm { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// The pairing form on `P ⊕ P*`: `B(x + a*, y + b*) = ⟨x, b*⟩ + ⟨a*, y⟩`.
    pub fn hyperbolic(n: usize) -> Self {
        let mut g = LinearMap::zeros(2 * n, 2 * n);
        for i in 0..n {
            g.set(i, n + i, Rational::one());
            g.set(n + i, i, Rational::one());
        }
        BilinearForm { gram: g }
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy = self.gram.apply(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }
}

impl MatchedPairPoisson {
    pub fn lie_part(&self) -> MatchedPairLie {
        MatchedPairLie {
            l1: self.p1.lie_part(),
            l2: self.p2.lie_part(),
            rho1: self.rho1.clone(),
            rho2: self.rho2.clone(),
        }
    }

    pub fn assoc_part(&self) -> MatchedPairAssoc {
        MatchedPairAssoc {
            a1: self.p1.assoc_part(),
            a2: self.p2.assoc_part(),
            mu1: self.mu1.clone(),
            mu2: self.mu2.clone(),
        }
    }

    /// `P1` acting on `P2` by `(ρ1, μ1)` with twist `α2`.
    pub fn module1(&self) -> PoissonModule {
        PoissonModule { base: self.p1.clone(), beta: self.p2.alpha.clone(), s: self.rho1.clone(), t: self.mu1.clone() }
    }

    /// `P2` acting on `P1` by `(ρ2, μ2)` with twist `α1`.
    pub fn module2(&self) -> PoissonModule {
        PoissonModule { base: self.p2.clone(), beta: self.p1.alpha.clone(), s: self.rho2.clone(), t: self.mu2.clone() }
    }

    /// The pair `(P, Pstar)` with coadjoint actions `ad*`, `−L*` in both directions.
    pub fn coadjoint(p: &HomPoissonAlgebra, pstar: &HomPoissonAlgebra) -> Result<Self> {
        p.validate()?;
        pstar.validate()?;
        if p.dim() != pstar.dim() {
            return Err(Error::Shape(format!("dim(P) = {} but dim(P*) = {}", p.dim(), pstar.dim())));
        }
        Ok(MatchedPairPoisson {
            p1: p.clone(),
            p2: pstar.clone(),
            rho1: coadjoint_action(&p.bracket),
            mu1: neg_coregular_action(&p.mul),
            rho2: coadjoint_action(&pstar.bracket),
            mu2: neg_coregular_action(&pstar.mul),
        })
    }
}

fn basis_table(n: usize) -> Vec<Vector> {
    (0..n).map(|i| basis_vec(n, i)).collect()
}

fn alpha_table(alpha: &LinearMap) -> Vec<Vector> {
    (0..alpha.cols()).map(|i| alpha.column(i)).collect()
}

fn lin(terms: &[(i64, Vector)], n: usize) -> Vector {
    let mut out = zero_vec(n);
    for (c, v) in terms {
        let c = Rational::from_int(*c);
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &c * x;
            }
        }
    }
    out
}

fn check_lie_actions(mp: &MatchedPairLie) -> Result<(usize, usize)> {
    mp.l1.validate()?;
    mp.l2.validate()?;
    let (n1, n2) = (mp.l1.dim(), mp.l2.dim());
    check_action("rho1", &mp.rho1, n1, n2)?;
    check_action("rho2", &mp.rho2, n2, n1)?;
    Ok((n1, n2))
}

/// Cross-compatibilities of a Lie matched pair:
/// `ρ1(α1x)[a,b]2 = [ρ1(x)a, α2b]2 + [α2a, ρ1(x)b]2 − ρ1(ρ2(a)x)α2b + ρ1(ρ2(b)x)α2a`
/// and the same with the roles of the two algebras exchanged.
fn lie_compat(
    label: &str,
    l1: &HomLieAlgebra,
    l2: &HomLieAlgebra,
    rho1: &ActionTensor,
    rho2: &ActionTensor,
) -> Residual {
    let (n1, n2) = (l1.dim(), l2.dim());
    let e1 = basis_table(n1);
    let e2 = basis_table(n2);
    let a1 = alpha_table(&l1.alpha);
    let a2 = alpha_table(&l2.alpha);
    let b2 = &l2.bracket;
    Residual::collect(label, &[n1, n2, n2], n2, |idx| {
        let (x, a, b) = (idx[0], idx[1], idx[2]);
        lin(
            &[
                (1, rho1.act(&a1[x], b2.product_of_basis(a, b))),
                (-1, b2.eval(&rho1.act(&e1[x], &e2[a]), &a2[b])),
                (-1, b2.eval(&a2[a], &rho1.act(&e1[x], &e2[b]))),
                (1, rho1.act(&rho2.act(&e2[a], &e1[x]), &a2[b])),
                (-1, rho1.act(&rho2.act(&e2[b], &e1[x]), &a2[a])),
            ],
            n2,
        )
    })
}

pub fn check_matched_pair_lie(mp: &MatchedPairLie) -> Result<Vec<Residual>> {
    check_lie_actions(mp)?;
    let mut out = prefix_all("L1", check_hom_lie(&mp.l1)?);
    out.extend(prefix_all("L2", check_hom_lie(&mp.l2)?));
    out.extend(prefix_all("rho1", check_lie_rep(&mp.l1, &mp.rho1, &mp.l2.alpha)?));
    out.extend(prefix_all("rho2", check_lie_rep(&mp.l2, &mp.rho2, &mp.l1.alpha)?));
    out.push(lie_compat("mp-lie-1", &mp.l1, &mp.l2, &mp.rho1, &mp.rho2));
    out.push(lie_compat("mp-lie-2", &mp.l2, &mp.l1, &mp.rho2, &mp.rho1));
    Ok(out)
}

/// Copies `t1` and `t2` into the diagonal blocks of an `(n1 + n2)`-dimensional tensor.
fn block_sum(t1: &StructureTensor, t2: &StructureTensor) -> StructureTensor {
    let (n1, n2) = (t1.dim(), t2.dim());
    let mut out = StructureTensor::zeros(n1 + n2);
    for i in 0..n1 {
        for j in 0..n1 {
            for k in 0..n1 {
                out.set(i, j, k, t1.get(i, j, k).clone());
            }
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            for k in 0..n2 {
                out.set(n1 + i, n1 + j, n1 + k, t2.get(i, j, k).clone());
            }
        }
    }
    out
}

/// `[x, a] = −ρ2(a)x + ρ1(x)a` on `L1 ⊕ L2`, twist `α1 ⊕ α2`.
pub fn bowtie_lie(mp: &MatchedPairLie) -> Result<HomLieAlgebra> {
    let (n1, n2) = check_lie_actions(mp)?;
    let mut b = block_sum(&mp.l1.bracket, &mp.l2.bracket);
    for x in 0..n1 {
        for a in 0..n2 {
            for k in 0..n1 {
                let v = mp.rho2.get(a, x, k);
                b.set(x, n1 + a, k, -v);
                b.set(n1 + a, x, k, v.clone());
            }
            for k in 0..n2 {
                let v = mp.rho1.get(x, a, k);
                b.set(x, n1 + a, n1 + k, v.clone());
                b.set(n1 + a, x, n1 + k, -v);
            }
        }
    }
    Ok(HomLieAlgebra::new(mp.l1.alpha.direct_sum(&mp.l2.alpha), b))
}

fn check_assoc_actions(mp: &MatchedPairAssoc) -> Result<(usize, usize)> {
    mp.a1.validate()?;
    mp.a2.validate()?;
    let (n1, n2) = (mp.a1.dim(), mp.a2.dim());
    check_action("mu1", &mp.mu1, n1, n2)?;
    check_action("mu2", &mp.mu2, n2, n1)?;
    Ok((n1, n2))
}

/// `β2(μ1(x)a) = μ1(β1x)β2(a)`.
fn assoc_twist(label: &str, a1: &HomAssocAlgebra, a2: &HomAssocAlgebra, mu1: &ActionTensor) -> Residual {
    let (n1, n2) = (a1.dim(), a2.dim());
    let e1 = basis_table(n1);
    let e2 = basis_table(n2);
    let b1 = alpha_table(&a1.alpha);
    let b2 = alpha_table(&a2.alpha);
    Residual::collect(label, &[n1, n2], n2, |idx| {
        let (x, a) = (idx[0], idx[1]);
        sub_vec(&a2.alpha.apply(&mu1.act(&e1[x], &e2[a])), &mu1.act(&b1[x], &b2[a]))
    })
}

/// `μ1(β1x)(a∘b) = (μ1(x)a)∘β2(b) + μ1(μ2(a)x)β2(b)`.
fn assoc_compat(
    label: &str,
    a1: &HomAssocAlgebra,
    a2: &HomAssocAlgebra,
    mu1: &ActionTensor,
    mu2: &ActionTensor,
) -> Residual {
    let (n1, n2) = (a1.dim(), a2.dim());
    let e1 = basis_table(n1);
    let e2 = basis_table(n2);
    let b1 = alpha_table(&a1.alpha);
    let b2 = alpha_table(&a2.alpha);
    let m2 = &a2.mul;
    Residual::collect(label, &[n1, n2, n2], n2, |idx| {
        let (x, a, b) = (idx[0], idx[1], idx[2]);
        lin(
            &[
                (1, mu1.act(&b1[x], m2.product_of_basis(a, b))),
                (-1, m2.eval(&mu1.act(&e1[x], &e2[a]), &b2[b])),
                (-1, mu1.act(&mu2.act(&e2[a], &e1[x]), &b2[b])),
            ],
            n2,
        )
    })
}

pub fn check_matched_pair_assoc(mp: &MatchedPairAssoc) -> Result<Vec<Residual>> {
    check_assoc_actions(mp)?;
    let mut out = prefix_all("A1", check_hom_associative(&mp.a1, true)?);
    out.extend(prefix_all("A2", check_hom_associative(&mp.a2, true)?));
    out.extend(prefix_all("mu1", check_assoc_rep(&mp.a1, &mp.mu1, &mp.a2.alpha)?));
    out.extend(prefix_all("mu2", check_assoc_rep(&mp.a2, &mp.mu2, &mp.a1.alpha)?));
    out.push(assoc_twist("mp-assoc-twist-1", &mp.a1, &mp.a2, &mp.mu1));
    out.push(assoc_twist("mp-assoc-twist-2", &mp.a2, &mp.a1, &mp.mu2));
    out.push(assoc_compat("mp-assoc-1", &mp.a1, &mp.a2, &mp.mu1, &mp.mu2));
    out.push(assoc_compat("mp-assoc-2", &mp.a2, &mp.a1, &mp.mu2, &mp.mu1));
    Ok(out)
}

/// `x∘a = a∘x = μ2(a)x + μ1(x)a` on `A1 ⊕ A2`, twist `β1 ⊕ β2`.
pub fn bowtie_assoc(mp: &MatchedPairAssoc) -> Result<HomAssocAlgebra> {
    let (n1, n2) = check_assoc_actions(mp)?;
    let mut c = block_sum(&mp.a1.mul, &mp.a2.mul);
    for x in 0..n1 {
        for a in 0..n2 {
            for k in 0..n1 {
                let v = mp.mu2.get(a, x, k);
                c.set(x, n1 + a, k, v.clone());
                c.set(n1 + a, x, k, v.clone());
            }
            for k in 0..n2 {
                let v = mp.mu1.get(x, a, k);
                c.set(x, n1 + a, n1 + k, v.clone());
                c.set(n1 + a, x, n1 + k, v.clone());
            }
        }
    }
    Ok(HomAssocAlgebra::new(mp.a1.alpha.direct_sum(&mp.a2.alpha), c))
}

/// Leibniz cross terms with the second algebra acting on products of the first:
/// `ρ2(α2a)(x∘y) = (ρ2(a)x)∘α1(y) + α1(x)∘(ρ2(a)y) − μ2(ρ1(x)a)α1(y) − μ2(ρ1(y)a)α1(x)`.
fn poisson_compat_product(
    label: &str,
    p1: &HomPoissonAlgebra,
    p2: &HomPoissonAlgebra,
    rho1: &ActionTensor,
    rho2: &ActionTensor,
    mu2: &ActionTensor,
) -> Residual {
    let (n1, n2) = (p1.dim(), p2.dim());
    let e1 = basis_table(n1);
    let e2 = basis_table(n2);
    let a1 = alpha_table(&p1.alpha);
    let a2 = alpha_table(&p2.alpha);
    let c1 = &p1.mul;
    Residual::collect(label, &[n2, n1, n1], n1, |idx| {
        let (a, x, y) = (idx[0], idx[1], idx[2]);
        lin(
            &[
                (1, rho2.act(&a2[a], c1.product_of_basis(x, y))),
                (-1, c1.eval(&rho2.act(&e2[a], &e1[x]), &a1[y])),
                (-1, c1.eval(&a1[x], &rho2.act(&e2[a], &e1[y]))),
                (1, mu2.act(&rho1.act(&e1[x], &e2[a]), &a1[y])),
                (1, mu2.act(&rho1.act(&e1[y], &e2[a]), &a1[x])),
            ],
            n1,
        )
    })
}

/// Leibniz cross terms with the second algebra's product action inside a bracket:
/// `[α1x, μ2(a)y]1 = ρ2(μ1(y)a)α1(x) + μ2(ρ1(x)a)α1(y) − (ρ2(a)x)∘α1(y) + μ2(α2a)[x,y]1`.
#[allow(clippy::too_many_arguments)]
fn poisson_compat_bracket(
    label: &str,
    p1: &HomPoissonAlgebra,
    p2: &HomPoissonAlgebra,
    rho1: &ActionTensor,
    mu1: &ActionTensor,
    rho2: &ActionTensor,
    mu2: &ActionTensor,
) -> Residual {
    let (n1, n2) = (p1.dim(), p2.dim());
    let e1 = basis_table(n1);
    let e2 = basis_table(n2);
    let a1 = alpha_table(&p1.alpha);
    let a2 = alpha_table(&p2.alpha);
    let (c1, b1) = (&p1.mul, &p1.bracket);
    Residual::collect(label, &[n1, n2, n1], n1, |idx| {
        let (x, a, y) = (idx[0], idx[1], idx[2]);
        lin(
            &[
                (1, b1.eval(&a1[x], &mu2.act(&e2[a], &e1[y]))),
                (-1, rho2.act(&mu1.act(&e1[y], &e2[a]), &a1[x])),
                (-1, mu2.act(&rho1.act(&e1[x], &e2[a]), &a1[y])),
                (1, c1.eval(&rho2.act(&e2[a], &e1[x]), &a1[y])),
                (-1, mu2.act(&a2[a], b1.product_of_basis(x, y))),
            ],
            n1,
        )
    })
}

pub fn check_matched_pair_poisson(mp: &MatchedPairPoisson) -> Result<Vec<Residual>> {
    let mut out = prefix_all("P1", check_hom_poisson(&mp.p1)?);
    out.extend(prefix_all("P2", check_hom_poisson(&mp.p2)?));
    out.extend(prefix_all("lie", check_matched_pair_lie(&mp.lie_part())?));
    out.extend(prefix_all("assoc", check_matched_pair_assoc(&mp.assoc_part())?));
    out.extend(prefix_all("module1", check_poisson_module(&mp.module1())?));
    out.extend(prefix_all("module2", check_poisson_module(&mp.module2())?));
    let (p1, p2) = (&mp.p1, &mp.p2);
    out.push(poisson_compat_product("mp-poisson-1", p1, p2, &mp.rho1, &mp.rho2, &mp.mu2));
    out.push(poisson_compat_bracket("mp-poisson-2", p1, p2, &mp.rho1, &mp.mu1, &mp.rho2, &mp.mu2));
    out.push(poisson_compat_product("mp-poisson-3", p2, p1, &mp.rho2, &mp.rho1, &mp.mu1));
    out.push(poisson_compat_bracket("mp-poisson-4", p2, p1, &mp.rho2, &mp.mu2, &mp.rho1, &mp.mu1));
    Ok(out)
}

/// Bracket and product of the Lie and associative bowties, twist `α1 ⊕ α2`.
pub fn bowtie_poisson(mp: &MatchedPairPoisson) -> Result<HomPoissonAlgebra> {
    let lie = bowtie_lie(&mp.lie_part())?;
    let assoc = bowtie_assoc(&mp.assoc_part())?;
    Ok(HomPoissonAlgebra::new(lie.alpha, assoc.mul, lie.bracket))
}

fn form_invariance(label: &str, op: &StructureTensor, alpha: &LinearMap, b: &BilinearForm) -> Residual {
    let n = op.dim();
    let al = alpha_table(alpha);
    let mut data = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = b.eval(op.product_of_basis(x, y), &al[z]);
                let rhs = b.eval(&al[x], op.product_of_basis(y, z));
                data.push(lhs - rhs);
            }
        }
    }
    Residual::new(label, vec![n, n, n], data)
}

/// Symmetry, nondegeneracy and `B([x,y], αz) = B(αx, [y,z])`, `B(x∘y, αz) = B(αx, y∘z)`.
pub fn check_invariant_form(p: &HomPoissonAlgebra, b: &BilinearForm) -> Result<Vec<Residual>> {
    p.validate()?;
    let n = p.dim();
    if b.gram.rows() != n || b.gram.cols() != n {
        return Err(Error::Shape(format!("form is {}x{}, algebra has dim {n}", b.gram.rows(), b.gram.cols())));
    }
    Ok(vec![
        Residual::from_map("form-symmetry", &b.gram.minus(&b.gram.transpose())),
        Residual::flag("form-nondegenerate", !b.gram.determinant()?.is_zero()),
        form_invariance("form-invariant-bracket", &p.bracket, &p.alpha, b),
        form_invariance("form-invariant-product", &p.mul, &p.alpha, b),
    ])
}

/// Coordinates of `op`-products of one part landing outside it.
fn closure(label: &str, op: &StructureTensor, part: &[usize], other: &[usize]) -> Residual {
    let k = part.len();
    let mut data = Vec::with_capacity(k * k * other.len());
    for &i in part {
        for &j in part {
            let v = op.product_of_basis(i, j);
            data.extend(other.iter().map(|&o| v[o].clone()));
        }
    }
    Residual::new(label, vec![k, k, other.len()], data)
}

fn twist_closure(label: &str, alpha: &LinearMap, part: &[usize], other: &[usize]) -> Residual {
    let data = part.iter().flat_map(|&i| other.iter().map(move |&o| alpha.get(o, i).clone())).collect();
    Residual::new(label, vec![part.len(), other.len()], data)
}

fn isotropy(label: &str, b: &BilinearForm, part: &[usize]) -> Residual {
    let data = part.iter().flat_map(|&i| part.iter().map(move |&j| b.gram.get(i, j).clone())).collect();
    Residual::new(label, vec![part.len(), part.len()], data)
}

/// `P = P⁺ ⊕ P⁻` split along a basis partition, both parts isotropic
/// subalgebras closed under `α`, plus invariance of `B`.
pub fn check_manin_triple(
    p: &HomPoissonAlgebra,
    plus: &[usize],
    minus: &[usize],
    b: &BilinearForm,
) -> Result<Vec<Residual>> {
    p.validate()?;
    let n = p.dim();
    let sp: BTreeSet<usize> = plus.iter().copied().collect();
    let sm: BTreeSet<usize> = minus.iter().copied().collect();
    if sp.len() != plus.len() || sm.len() != minus.len() {
        return Err(Error::PartitionInvalid("repeated index".into()));
    }
    if !sp.is_disjoint(&sm) {
        return Err(Error::PartitionInvalid("the two parts overlap".into()));
    }
    if sp.len() + sm.len() != n || sp.iter().chain(&sm).any(|&i| i >= n) {
        return Err(Error::PartitionInvalid(format!("parts do not cover 0..{n}")));
    }
    let mut out = prefix_all("ambient", check_hom_poisson(p)?);
    for (name, part, other) in [("plus", plus, minus), ("minus", minus, plus)] {
        out.push(closure(&format!("{name}-closed-bracket"), &p.bracket, part, other));
        out.push(closure(&format!("{name}-closed-product"), &p.mul, part, other));
        out.push(twist_closure(&format!("{name}-closed-twist"), &p.alpha, part, other));
        out.push(isotropy(&format!("{name}-isotropic"), b, part));
    }
    out.extend(check_invariant_form(p, b)?);
    Ok(out)
}

/// `P ⋈ P*` with coadjoint actions and the pairing form; the dual algebra must
/// carry the twist `α*`.
pub fn standard_manin_triple(
    p: &HomPoissonAlgebra,
    pstar: &HomPoissonAlgebra,
) -> Result<(HomPoissonAlgebra, BilinearForm)> {
    let mp = MatchedPairPoisson::coadjoint(p, pstar)?;
    if pstar.alpha != dual_map(&p.alpha) {
        return Err(Error::TwistMismatch);
    }
    Ok((bowtie_poisson(&mp)?, BilinearForm::hyperbolic(p.dim())))
}

/// Basis partition `(P, P*)` of a standard Manin triple on `2n` coordinates.
pub fn standard_partition(n: usize) -> (Vec<usize>, Vec<usize>) {
    ((0..n).collect(), (n..2 * n).collect())
}
