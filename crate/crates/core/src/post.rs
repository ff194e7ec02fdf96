//! Module Hom-Poisson algebras, O-operators and the post-Hom-Poisson
//! structures they split into, including the ones carried by the dual of a
//! quasitriangular bialgebra.

use serde::{Deserialize, Serialize};

use crate::algebra::{check_hom_poisson, check_op, check_square, HomAssocAlgebra, HomLieAlgebra, HomPoissonAlgebra};
use crate::bialgebra::{
    chybe_residual, check_theorem44, coboundary_coproduct, coboundary_delta, haybe_residual, HaybeVariant,
    HomPoissonBialgebra,
};
use crate::error::{Error, Result};
use crate::linear::{basis_vec, sub_vec, LinearMap, Vector};
use crate::modules::{
    check_action, check_lie_rep, check_poisson_module, coadjoint_action, neg_coregular_action, OpTable,
    PoissonModule,
};
use crate::rational::Rational;
use crate::residual::{prefix_all, Residual, ResidualSet};
use crate::tensor::{flip_tau, ActionTensor, RTensor, StructureTensor};

fn basis_table(n: usize) -> Vec<Vector> {
    (0..n).map(|i| basis_vec(n, i)).collect()
}

fn alpha_table(alpha: &LinearMap) -> Vec<Vector> {
    (0..alpha.cols()).map(|i| alpha.column(i)).collect()
}

/// `Σ c_i v_i` for integer coefficients.
fn comb(n: usize, terms: &[(i64, Vector)]) -> Vector {
    let mut out = vec![Rational::zero(); n];
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

/// `ρ` a representation of `L` on `L'` acting by `α'`-twisted derivations:
/// `ρ(αx)[u,v]' = [ρ(x)u, α'v]' + [α'u, ρ(x)v]'`.
pub fn check_l_hom_lie_algebra(l: &HomLieAlgebra, lp: &HomLieAlgebra, rho: &ActionTensor) -> Result<Vec<Residual>> {
    l.validate()?;
    lp.validate()?;
    let (n, m) = (l.dim(), lp.dim());
    check_action("rho", rho, n, m)?;
    let mut out = check_lie_rep(l, rho, &lp.alpha)?;
    let ops = OpTable::new(rho, &l.alpha);
    let (e, b) = (basis_table(m), alpha_table(&lp.alpha));
    let br = &lp.bracket;
    out.push(Residual::collect("derivation", &[n, m, m], m, |i| {
        let (x, u, v) = (i[0], i[1], i[2]);
        comb(
            m,
            &[
                (1, ops.at_alpha[x].apply(br.product_of_basis(u, v))),
                (-1, br.eval(&ops.at[x].apply(&e[u]), &b[v])),
                (-1, br.eval(&b[u], &ops.at[x].apply(&e[v]))),
            ],
        )
    }));
    Ok(out)
}

/// `μ(x∘y)β = μ(αx)μ(y)`, `μ(αx)(u·v) = (μ(x)u)·βv` and `β μ(x) = μ(αx) β`.
pub fn check_module_hom_algebra(a: &HomAssocAlgebra, r: &HomAssocAlgebra, mu: &ActionTensor) -> Result<Vec<Residual>> {
    a.validate()?;
    r.validate()?;
    let (n, m) = (a.dim(), r.dim());
    check_action("mu", mu, n, m)?;
    let beta = &r.alpha;
    let ops = OpTable::new(mu, &a.alpha);
    let (e, b) = (basis_table(m), alpha_table(beta));
    let product = Residual::collect_ops("module-alg-product", &[n, n], m, |i| {
        let (x, y) = (i[0], i[1]);
        mu.operator(a.mul.product_of_basis(x, y)).dot(beta).minus(&ops.at_alpha[x].dot(&ops.at[y]))
    });
    let mult = Residual::collect("module-alg-multiplication", &[n, m, m], m, |i| {
        let (x, u, v) = (i[0], i[1], i[2]);
        sub_vec(&ops.at_alpha[x].apply(r.mul.product_of_basis(u, v)), &r.mul.eval(&ops.at[x].apply(&e[u]), &b[v]))
    });
    let twist = Residual::collect_ops("module-alg-twist", &[n], m, |i| {
        beta.dot(&ops.at[i[0]]).minus(&ops.at_alpha[i[0]].dot(beta))
    });
    Ok(vec![product, mult, twist])
}

/// `V` a Hom-Poisson algebra on which `P` acts by `S` (Lie) and `T` (associative).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModuleHomPoisson {
    pub base: HomPoissonAlgebra,
    pub v: HomPoissonAlgebra,
    pub s: ActionTensor,
    pub t: ActionTensor,
}

impl ModuleHomPoisson {
    pub fn vdim(&self) -> usize {
        self.v.dim()
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        self.v.validate()?;
        check_action("S", &self.s, self.base.dim(), self.vdim())?;
        check_action("T", &self.t, self.base.dim(), self.vdim())
    }

    /// `P` over itself through `ad` and `L_∘`.
    pub fn adjoint(p: &HomPoissonAlgebra) -> Self {
        ModuleHomPoisson {
            base: p.clone(),
            v: p.clone(),
            s: ActionTensor::regular(&p.bracket),
            t: ActionTensor::regular(&p.mul),
        }
    }

    /// The underlying `(V, S, T, β)`.
    pub fn poisson_module(&self) -> PoissonModule {
        PoissonModule { base: self.base.clone(), beta: self.v.alpha.clone(), s: self.s.clone(), t: self.t.clone() }
    }
}

/// Cross identities between the actions and the operations of `V`.
fn mixed_identities(md: &ModuleHomPoisson) -> Vec<Residual> {
    let p = &md.base;
    let v = &md.v;
    let (n, m) = (p.dim(), v.dim());
    let beta = &v.alpha;
    let s = OpTable::new(&md.s, &p.alpha);
    let t = OpTable::new(&md.t, &p.alpha);
    let (e, b) = (basis_table(m), alpha_table(beta));
    let (c1, b1) = (&v.mul, &v.bracket);
    vec![
        Residual::collect_ops("twist-S", &[n], m, |i| beta.dot(&s.at[i[0]]).minus(&s.at_alpha[i[0]].dot(beta))),
        Residual::collect_ops("twist-T", &[n], m, |i| beta.dot(&t.at[i[0]]).minus(&t.at_alpha[i[0]].dot(beta))),
        Residual::collect("S-on-product", &[n, m, m], m, |i| {
            let (x, u, w) = (i[0], i[1], i[2]);
            comb(
                m,
                &[
                    (1, s.at_alpha[x].apply(c1.product_of_basis(u, w))),
                    (-1, c1.eval(&s.at[x].apply(&e[u]), &b[w])),
                    (-1, c1.eval(&b[u], &s.at[x].apply(&e[w]))),
                ],
            )
        }),
        Residual::collect("T-on-bracket", &[n, m, m], m, |i| {
            let (x, u, w) = (i[0], i[1], i[2]);
            comb(
                m,
                &[
                    (1, b1.eval(&b[u], &t.at[x].apply(&e[w]))),
                    (1, c1.eval(&s.at[x].apply(&e[u]), &b[w])),
                    (-1, t.at_alpha[x].apply(b1.product_of_basis(u, w))),
                ],
            )
        }),
    ]
}

/// All four groups of conditions, with `V` itself required to be Hom-Poisson.
pub fn check_module_hom_poisson(md: &ModuleHomPoisson) -> Result<Vec<Residual>> {
    md.validate()?;
    let mut out = prefix_all("V", check_hom_poisson(&md.v)?);
    out.extend(prefix_all("lie-alg", check_l_hom_lie_algebra(&md.base.lie_part(), &md.v.lie_part(), &md.s)?));
    out.extend(prefix_all("assoc-alg", check_module_hom_algebra(&md.base.assoc_part(), &md.v.assoc_part(), &md.t)?));
    out.extend(prefix_all("module", check_poisson_module(&md.poisson_module())?));
    out.extend(prefix_all("mixed", mixed_identities(md)));
    Ok(out)
}

/// `P ⊕ V` with `[(x,u),(y,v)] = ([x,y], S(x)v − S(y)u + [u,v]₁)`,
/// `(x,u)∘(y,v) = (x∘y, T(x)v + T(y)u + u∘₁v)` and twist `α ⊕ β`.
pub fn module_semidirect(md: &ModuleHomPoisson) -> Result<HomPoissonAlgebra> {
    md.validate()?;
    let (n, m) = (md.base.dim(), md.vdim());
    let total = n + m;
    let mut mul = StructureTensor::zeros(total);
    let mut br = StructureTensor::zeros(total);
    let embed = |dst: &mut StructureTensor, src: &StructureTensor, off: usize| {
        let d = src.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    dst.set(off + i, off + j, off + k, src.get(i, j, k).clone());
                }
            }
        }
    };
    embed(&mut mul, &md.base.mul, 0);
    embed(&mut br, &md.base.bracket, 0);
    embed(&mut mul, &md.v.mul, n);
    embed(&mut br, &md.v.bracket, n);
    for x in 0..n {
        for u in 0..m {
            for w in 0..m {
                let sv = md.s.get(x, u, w);
                br.set(x, n + u, n + w, sv.clone());
                br.set(n + u, x, n + w, -sv.clone());
                let tv = md.t.get(x, u, w);
                mul.set(x, n + u, n + w, tv.clone());
                mul.set(n + u, x, n + w, tv.clone());
            }
        }
    }
    Ok(HomPoissonAlgebra::new(md.base.alpha.direct_sum(&md.v.alpha), mul, br))
}

/// Five operations `([·,·], ⋄, ·, ≻)` with twist `α`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PostHomPoisson {
    pub alpha: LinearMap,
    pub lie: StructureTensor,
    pub diamond: StructureTensor,
    pub dot: StructureTensor,
    pub succ: StructureTensor,
}

impl PostHomPoisson {
    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        check_square("alpha", &self.alpha, n)?;
        check_op("diamond", &self.diamond, n)?;
        check_op("dot", &self.dot, n)?;
        check_op("succ", &self.succ, n)
    }

    /// Every operation zero.
    pub fn zero(alpha: LinearMap) -> Self {
        let n = alpha.rows();
        let z = StructureTensor::zeros(n);
        PostHomPoisson { alpha, lie: z.clone(), diamond: z.clone(), dot: z.clone(), succ: z }
    }
}

fn multiplicative(label: &str, op: &StructureTensor, alpha: &LinearMap) -> Residual {
    let n = op.dim();
    let a = alpha_table(alpha);
    Residual::collect(label, &[n, n], n, |i| sub_vec(&alpha.apply(op.product_of_basis(i[0], i[1])), &op.eval(&a[i[0]], &a[i[1]])))
}

/// Evaluates an identity in three variables on all basis triples.
fn triple(label: &str, n: usize, f: impl Fn(usize, usize, usize) -> Vector) -> Residual {
    Residual::collect(label, &[n, n, n], n, |i| f(i[0], i[1], i[2]))
}

/// Antisymmetry and Hom-Jacobi of `[·,·]`, the `⋄`-identity
/// `α(z)⋄(y⋄x) − α(y)⋄(z⋄x) + (y⋄z)⋄α(x) − (z⋄y)⋄α(x) + [y,z]⋄α(x)` and
/// `α(z)⋄[x,y] − [z⋄x, α(y)] − [α(x), z⋄y]`.
pub fn check_post_hom_lie(lie: &StructureTensor, diamond: &StructureTensor, alpha: &LinearMap) -> Result<Vec<Residual>> {
    let n = lie.dim();
    check_op("diamond", diamond, n)?;
    check_square("alpha", alpha, n)?;
    let a = alpha_table(alpha);
    let (b, d) = (lie, diamond);
    Ok(vec![
        Residual::collect("post-lie-antisymmetry", &[n, n], n, |i| {
            comb(n, &[(1, b.product_of_basis(i[0], i[1]).to_vec()), (1, b.product_of_basis(i[1], i[0]).to_vec())])
        }),
        triple("post-lie-jacobi", n, |x, y, z| {
            comb(
                n,
                &[
                    (1, b.eval(b.product_of_basis(x, y), &a[z])),
                    (1, b.eval(b.product_of_basis(z, x), &a[y])),
                    (1, b.eval(b.product_of_basis(y, z), &a[x])),
                ],
            )
        }),
        triple("post-lie-diamond", n, |x, y, z| {
            comb(
                n,
                &[
                    (1, d.eval(&a[z], d.product_of_basis(y, x))),
                    (-1, d.eval(&a[y], d.product_of_basis(z, x))),
                    (1, d.eval(d.product_of_basis(y, z), &a[x])),
                    (-1, d.eval(d.product_of_basis(z, y), &a[x])),
                    (1, d.eval(b.product_of_basis(y, z), &a[x])),
                ],
            )
        }),
        triple("post-lie-derivation", n, |x, y, z| {
            comb(
                n,
                &[
                    (1, d.eval(&a[z], b.product_of_basis(x, y))),
                    (-1, b.eval(d.product_of_basis(z, x), &a[y])),
                    (-1, b.eval(&a[x], d.product_of_basis(z, y))),
                ],
            )
        }),
        multiplicative("post-lie-alpha-bracket", b, alpha),
        multiplicative("post-lie-alpha-diamond", d, alpha),
    ])
}

/// `x·y = y·x`, `(x·y)·α(z) = α(x)·(y·z)`,
/// `(x≻y + y≻x + x·y)≻α(z) = α(x)≻(y≻z)` and `(x≻y)·α(z) = α(x)≻(y·z)`.
pub fn check_comm_dendriform(dot: &StructureTensor, succ: &StructureTensor, alpha: &LinearMap) -> Result<Vec<Residual>> {
    let n = dot.dim();
    check_op("succ", succ, n)?;
    check_square("alpha", alpha, n)?;
    let a = alpha_table(alpha);
    let (p, s) = (dot, succ);
    Ok(vec![
        Residual::collect("dend-commutativity", &[n, n], n, |i| {
            sub_vec(p.product_of_basis(i[0], i[1]), p.product_of_basis(i[1], i[0]))
        }),
        triple("dend-associativity", n, |x, y, z| {
            sub_vec(&p.eval(p.product_of_basis(x, y), &a[z]), &p.eval(&a[x], p.product_of_basis(y, z)))
        }),
        triple("dend-succ", n, |x, y, z| {
            let sum = comb(
                n,
                &[
                    (1, s.product_of_basis(x, y).to_vec()),
                    (1, s.product_of_basis(y, x).to_vec()),
                    (1, p.product_of_basis(x, y).to_vec()),
                ],
            );
            sub_vec(&s.eval(&sum, &a[z]), &s.eval(&a[x], s.product_of_basis(y, z)))
        }),
        triple("dend-mixed", n, |x, y, z| {
            sub_vec(&p.eval(s.product_of_basis(x, y), &a[z]), &s.eval(&a[x], p.product_of_basis(y, z)))
        }),
        multiplicative("dend-alpha-dot", p, alpha),
        multiplicative("dend-alpha-succ", s, alpha),
    ])
}

/// The Lie and dendriform batteries plus the five compatibilities
/// `[α(x), y·z] = [x,y]·α(z) + α(y)·[x,z]`,
/// `[α(x), z≻y] = α(z)≻[x,y] − α(y)·(z⋄x)`,
/// `α(x)⋄(y·z) = (x⋄y)·α(z) + α(y)·(x⋄z)`,
/// `(y≻z + z≻y + y·z)⋄α(x) = α(z)≻(y⋄x) + α(y)≻(z⋄x)`,
/// `α(x)⋄(z≻y) = α(z)≻(x⋄y) + (x⋄z − z⋄x + [x,z])≻α(y)`.
pub fn check_post_hom_poisson(ph: &PostHomPoisson) -> Result<Vec<Residual>> {
    ph.validate()?;
    let n = ph.dim();
    let mut out = check_post_hom_lie(&ph.lie, &ph.diamond, &ph.alpha)?;
    out.extend(check_comm_dendriform(&ph.dot, &ph.succ, &ph.alpha)?);
    let a = alpha_table(&ph.alpha);
    let (b, d, p, s) = (&ph.lie, &ph.diamond, &ph.dot, &ph.succ);
    out.push(triple("post-compat-1", n, |x, y, z| {
        comb(
            n,
            &[
                (1, b.eval(&a[x], p.product_of_basis(y, z))),
                (-1, p.eval(b.product_of_basis(x, y), &a[z])),
                (-1, p.eval(&a[y], b.product_of_basis(x, z))),
            ],
        )
    }));
    out.push(triple("post-compat-2", n, |x, y, z| {
        comb(
            n,
            &[
                (1, b.eval(&a[x], s.product_of_basis(z, y))),
                (-1, s.eval(&a[z], b.product_of_basis(x, y))),
                (1, p.eval(&a[y], d.product_of_basis(z, x))),
            ],
        )
    }));
    out.push(triple("post-compat-3", n, |x, y, z| {
        comb(
            n,
            &[
                (1, d.eval(&a[x], p.product_of_basis(y, z))),
                (-1, p.eval(d.product_of_basis(x, y), &a[z])),
                (-1, p.eval(&a[y], d.product_of_basis(x, z))),
            ],
        )
    }));
    out.push(triple("post-compat-4", n, |x, y, z| {
        let sum = comb(
            n,
            &[
                (1, s.product_of_basis(y, z).to_vec()),
                (1, s.product_of_basis(z, y).to_vec()),
                (1, p.product_of_basis(y, z).to_vec()),
            ],
        );
        comb(
            n,
            &[
                (1, d.eval(&sum, &a[x])),
                (-1, s.eval(&a[z], d.product_of_basis(y, x))),
                (-1, s.eval(&a[y], d.product_of_basis(z, x))),
            ],
        )
    }));
    out.push(triple("post-compat-5", n, |x, y, z| {
        let inner = comb(
            n,
            &[
                (1, d.product_of_basis(x, z).to_vec()),
                (-1, d.product_of_basis(z, x).to_vec()),
                (1, b.product_of_basis(x, z).to_vec()),
            ],
        );
        comb(
            n,
            &[
                (1, d.eval(&a[x], s.product_of_basis(z, y))),
                (-1, s.eval(&a[z], d.product_of_basis(x, y))),
                (-1, s.eval(&inner, &a[y])),
            ],
        )
    }));
    Ok(out)
}

/// `{x,y} = x⋄y − y⋄x + [x,y]` and `x∘y = x≻y + y≻x + x·y`.
pub fn associated_hom_poisson(ph: &PostHomPoisson) -> Result<HomPoissonAlgebra> {
    ph.validate()?;
    let n = ph.dim();
    let br = StructureTensor::from_fn(n, |i, j, k| ph.diamond.get(i, j, k) - ph.diamond.get(j, i, k) + ph.lie.get(i, j, k));
    let mul = StructureTensor::from_fn(n, |i, j, k| ph.succ.get(i, j, k) + ph.succ.get(j, i, k) + ph.dot.get(i, j, k));
    Ok(HomPoissonAlgebra::new(ph.alpha.clone(), mul, br))
}

/// A map `R: V → P` of weight `λ` over a module Hom-Poisson algebra.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OOperator {
    pub r: LinearMap,
    pub weight: Rational,
    pub module: ModuleHomPoisson,
}

fn check_r_shape(r: &LinearMap, n: usize, m: usize) -> Result<()> {
    if r.rows() != n || r.cols() != m {
        return Err(Error::Shape(format!("R is {}x{}, expected {n}x{m}", r.rows(), r.cols())));
    }
    Ok(())
}

/// `αR − Rβ`, `[Ru,Rv] − R(S(Ru)v − S(Rv)u + λ[u,v]₁)` and
/// `Ru∘Rv − R(T(Ru)v + T(Rv)u + λ u∘₁v)`.
fn o_residuals(md: &ModuleHomPoisson, r: &LinearMap, lambda: &Rational) -> Result<Vec<Residual>> {
    md.validate()?;
    let (p, v) = (&md.base, &md.v);
    let (n, m) = (p.dim(), v.dim());
    check_r_shape(r, n, m)?;
    let e = basis_table(m);
    let re: Vec<Vector> = (0..m).map(|u| r.column(u)).collect();
    let s_at: Vec<LinearMap> = re.iter().map(|x| md.s.operator(x)).collect();
    let t_at: Vec<LinearMap> = re.iter().map(|x| md.t.operator(x)).collect();
    let twist = p.alpha.dot(r).minus(&r.dot(&v.alpha));
    let identity = |label: &str, op: &StructureTensor, act: &[LinearMap], own: &StructureTensor, sign: i64| {
        Residual::collect(label, &[m, m], n, |i| {
            let (u, w) = (i[0], i[1]);
            let mut inner = comb(m, &[(1, act[u].apply(&e[w])), (sign, act[w].apply(&e[u]))]);
            for (o, x) in inner.iter_mut().zip(own.product_of_basis(u, w)) {
                if !x.is_zero() {
                    *o += lambda * x;
                }
            }
            sub_vec(&op.eval(&re[u], &re[w]), &r.apply(&inner))
        })
    };
    Ok(vec![
        Residual::from_map("o-twist", &twist),
        identity("o-bracket", &p.bracket, &s_at, &v.bracket, -1),
        identity("o-product", &p.mul, &t_at, &v.mul, 1),
    ])
}

/// The O-operator identities; the module must pass its own battery first.
pub fn check_o_operator(o: &OOperator) -> Result<Vec<Residual>> {
    let res = check_module_hom_poisson(&o.module)?;
    if !res.passes() {
        return Err(Error::InvalidModule(res.failing_labels().join(", ")));
    }
    o_residuals(&o.module, &o.r, &o.weight)
}

/// O-operator identities on the adjoint self-module.
pub fn check_rota_baxter(p: &HomPoissonAlgebra, r: &LinearMap, lambda: &Rational) -> Result<Vec<Residual>> {
    o_residuals(&ModuleHomPoisson::adjoint(p), r, lambda)
}

/// `{u,v} = λ[u,v]₁`, `u⋄v = S(Ru)v`, `u·v = λ u∘₁v`, `u≻v = T(Ru)v` on `V`.
pub fn post_from_o_operator(o: &OOperator) -> Result<PostHomPoisson> {
    let res = check_o_operator(o)?;
    if !res.passes() {
        return Err(Error::InvalidOOperator(res.failing_labels().join(", ")));
    }
    Ok(post_from_o_unchecked(o))
}

fn post_from_o_unchecked(o: &OOperator) -> PostHomPoisson {
    let md = &o.module;
    let m = md.vdim();
    let s_at: Vec<LinearMap> = (0..m).map(|u| md.s.operator(&o.r.column(u))).collect();
    let t_at: Vec<LinearMap> = (0..m).map(|u| md.t.operator(&o.r.column(u))).collect();
    PostHomPoisson {
        alpha: md.v.alpha.clone(),
        lie: md.v.bracket.scale(&o.weight),
        diamond: StructureTensor::from_fn(m, |u, w, k| s_at[u].get(k, w).clone()),
        dot: md.v.mul.scale(&o.weight),
        succ: StructureTensor::from_fn(m, |u, w, k| t_at[u].get(k, w).clone()),
    }
}

/// `φ = (r − τr)/2` and `ψ = (r + τr)/2`.
pub fn symmetric_parts(r: &RTensor) -> (RTensor, RTensor) {
    let half = Rational::new(1, 2);
    let t = flip_tau(r);
    (r.sub(&t).scale(&half), r.add(&t).scale(&half))
}

/// CHYBE, HAYBE and the coboundary conditions for `r`, after confirming that
/// `δ, Δ` are the coboundary structures of `r`.
pub fn check_quasitriangular(b: &HomPoissonBialgebra, r: &RTensor) -> Result<Vec<Residual>> {
    b.validate()?;
    let p = &b.p;
    if coboundary_delta(p, r)? != b.delta {
        return Err(Error::CoalgebraMismatch("delta".into()));
    }
    if coboundary_coproduct(p, r)? != b.coproduct {
        return Err(Error::CoalgebraMismatch("Delta".into()));
    }
    let mut out = vec![
        Residual::from_tensor3("chybe", &chybe_residual(&p.lie_part(), r)?),
        Residual::from_tensor3("haybe", &haybe_residual(&p.assoc_part(), r, HaybeVariant::Standard)?.proper),
    ];
    out.extend(prefix_all("coboundary", check_theorem44(p, r)?.conditions));
    Ok(out)
}

fn require_quasitriangular(b: &HomPoissonBialgebra, r: &RTensor) -> Result<()> {
    let res = check_quasitriangular(b, r)?;
    if !res.passes() {
        return Err(Error::NotQuasitriangular(res.failing_labels().join(", ")));
    }
    Ok(())
}

/// Operator matrix `v ↦ act(x) v` for the dual actions, evaluated at `x = f(a)`.
fn dual_ops(act: &ActionTensor, map: &LinearMap) -> Vec<LinearMap> {
    (0..map.cols()).map(|a| act.operator(&map.column(a))).collect()
}

/// `P*` with `{a,b} = −2 ad*(ψa)b`, `a·b = 2 L*(ψa)b`, acted on by
/// `(ad*, −L*, α*)`, and `R = r` viewed as a map `P* → P` of weight 1.
pub fn quasitriangular_dual_module(b: &HomPoissonBialgebra, r: &RTensor) -> Result<(ModuleHomPoisson, OOperator)> {
    require_quasitriangular(b, r)?;
    let p = &b.p;
    let n = p.dim();
    let (_, psi) = symmetric_parts(r);
    let psi_map = psi.as_map();
    let ad_star = coadjoint_action(&p.bracket);
    let neg_l_star = neg_coregular_action(&p.mul);
    let ad_psi = dual_ops(&ad_star, &psi_map);
    // L*(x) = −(−L*)(x)
    let l_psi = dual_ops(&neg_l_star, &psi_map);
    let bracket = StructureTensor::from_fn(n, |a, c, k| Rational::from_int(-2) * ad_psi[a].get(k, c));
    let mul = StructureTensor::from_fn(n, |a, c, k| Rational::from_int(-2) * l_psi[a].get(k, c));
    let v = HomPoissonAlgebra::new(p.alpha.transpose(), mul, bracket);
    let md = ModuleHomPoisson { base: p.clone(), v, s: ad_star, t: neg_l_star };
    let o = OOperator { r: r.as_map(), weight: Rational::one(), module: md.clone() };
    Ok((md, o))
}

/// The post-Hom-Poisson structure on `P*` read off directly from `r`:
/// `{a,b} = −2ad*(ψa)b`, `a⋄b = ad*(r(a))b`, `a·b = 2L*(ψa)b`, `a≻b = −L*(r(a))b`.
pub fn post_from_quasitriangular(b: &HomPoissonBialgebra, r: &RTensor) -> Result<PostHomPoisson> {
    require_quasitriangular(b, r)?;
    let p = &b.p;
    let n = p.dim();
    let (_, psi) = symmetric_parts(r);
    let ad_star = coadjoint_action(&p.bracket);
    let neg_l_star = neg_coregular_action(&p.mul);
    let at = |ops: &[LinearMap], c: i64| {
        StructureTensor::from_fn(n, |a, x, k| Rational::from_int(c) * ops[a].get(k, x))
    };
    Ok(PostHomPoisson {
        alpha: p.alpha.transpose(),
        lie: at(&dual_ops(&ad_star, &psi.as_map()), -2),
        diamond: at(&dual_ops(&ad_star, &r.as_map()), 1),
        dot: at(&dual_ops(&neg_l_star, &psi.as_map()), -2),
        succ: at(&dual_ops(&neg_l_star, &r.as_map()), 1),
    })
}
