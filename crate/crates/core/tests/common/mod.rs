//! Shared test support: the index-loop oracle, random instances and a
//! per-species comparison driver used by the oracle-equivalence tests and
//! the acceptance run.

#![allow(dead_code)]

pub mod criteria;

use hompoisson::algebra::{check_hom_associative, check_hom_lie, check_hom_poisson, check_poisson_homomorphism, HomAssocAlgebra, HomLieAlgebra, HomPoissonAlgebra};
use hompoisson::bialgebra::{
    check_poisson_bialgebra, check_theorem44, chybe_residual, coboundary_coproduct_with, coboundary_delta, haybe_residual,
    w_residual, CoproductSign, HaybeVariant, HomPoissonBialgebra,
};
use hompoisson::fixtures;
use hompoisson::linear::LinearMap;
use hompoisson::matched::{check_manin_triple, check_matched_pair_poisson, BilinearForm, MatchedPairPoisson};
use hompoisson::modules::{check_poisson_module, dual_module_hypotheses, PoissonModule};
use hompoisson::post::{associated_hom_poisson, check_module_hom_poisson, check_o_operator, check_post_hom_poisson, check_rota_baxter, ModuleHomPoisson, OOperator, PostHomPoisson};
use hompoisson::residual::Residual;
use hompoisson::tensor::{ActionTensor, RTensor};
use hompoisson::Rational;
use rand::seq::SliceRandom;
use rand::Rng;

use gen::{act, co, entry, lm, mat, rt, st, tensor, twist, Rng8};
use oracle::{compare, matrix, rmat, structure, Alg, Battery, Post, Z};

/// Every structure whose checker is compared against the oracle.
pub const SPECIES: &[&str] = &[
    "hom-assoc",
    "hom-lie",
    "hom-poisson",
    "homomorphism",
    "poisson-module",
    "dual-module",
    "matched-pair",
    "manin-triple",
    "bialgebra",
    "coboundary",
    "chybe",
    "haybe",
    "theorem44",
    "w-tensor",
    "post",
    "module-hom-poisson",
    "o-operator",
];

fn dim(rng: &mut Rng8) -> usize {
    rng.gen_range(1..=3)
}

fn tensor_residual(label: &str, t: &hompoisson::tensor::Tensor3Element) -> Residual {
    Residual::from_tensor3(label, t)
}

fn push_t3(b: &mut Battery, label: &str, t: &oracle::T3) {
    let n = t.len();
    b.push(label, vec![n, n, n], t.iter().flatten().flatten().copied().collect());
}

fn lib<T>(r: hompoisson::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

/// An `r` that is invariant under a diagonal twist, random where allowed.
fn invariant_r(rng: &mut Rng8, alpha: &LinearMap) -> RTensor {
    let a = matrix(alpha);
    let n = a.len();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || a[i][j] == 0));
    let r: oracle::M = (0..n)
        .map(|i| (0..n).map(|j| if diagonal && a[i][i] * a[j][j] == 1 { entry(rng) } else { 0 }).collect())
        .collect();
    rt(&r)
}

fn random_action(rng: &mut Rng8, n: usize, m: usize) -> ActionTensor {
    act(&tensor(rng, n, m, m))
}

fn random_post(rng: &mut Rng8, n: usize) -> PostHomPoisson {
    if rng.gen_range(0..4) == 0 {
        return PostHomPoisson::zero(LinearMap::identity(n));
    }
    PostHomPoisson {
        alpha: lm(&twist(rng, n)),
        lie: st(&tensor(rng, n, n, n)),
        diamond: st(&tensor(rng, n, n, n)),
        dot: st(&tensor(rng, n, n, n)),
        succ: st(&tensor(rng, n, n, n)),
    }
}

fn raw_post(ph: &PostHomPoisson) -> Post {
    Post {
        a: matrix(&ph.alpha),
        lie: structure(&ph.lie),
        diamond: structure(&ph.diamond),
        dot: structure(&ph.dot),
        succ: structure(&ph.succ),
    }
}

fn random_module_hp(rng: &mut Rng8) -> ModuleHomPoisson {
    let n = dim(rng);
    match rng.gen_range(0..3) {
        0 => ModuleHomPoisson::adjoint(&gen::fixture_of_dim(rng, n)),
        _ => {
            let m = dim(rng);
            ModuleHomPoisson {
                base: gen::algebra(rng, n),
                v: gen::algebra(rng, m),
                s: random_action(rng, n, m),
                t: random_action(rng, n, m),
            }
        }
    }
}

/// One random instance of `species`; `Ok` iff library and oracle agree exactly.
pub fn run_case(species: &str, rng: &mut Rng8) -> Result<(), String> {
    match species {
        "hom-assoc" => {
            let n = dim(rng);
            let p = gen::algebra(rng, n);
            let unit = rng.gen_bool(0.3).then(|| (0..n).map(|_| Rational::from_int(entry(rng) as i64)).collect::<Vec<_>>());
            let comm = rng.gen_bool(0.5);
            let a = HomAssocAlgebra { alpha: p.alpha.clone(), mul: p.mul.clone(), unit: unit.clone() };
            let want_unit: Option<oracle::V> = unit.as_ref().map(|u| u.iter().map(oracle::z).collect());
            let want = oracle::hom_assoc(&matrix(&p.alpha), &structure(&p.mul), comm, want_unit.as_ref());
            compare(&lib(check_hom_associative(&a, comm))?, &want)
        }
        "hom-lie" => {
            let p = { let n = dim(rng); gen::algebra(rng, n) };
            let want = oracle::hom_lie(&matrix(&p.alpha), &structure(&p.bracket));
            compare(&lib(check_hom_lie(&HomLieAlgebra::new(p.alpha.clone(), p.bracket.clone())))?, &want)
        }
        "hom-poisson" => {
            let p = { let n = dim(rng); gen::algebra(rng, n) };
            compare(&lib(check_hom_poisson(&p))?, &oracle::hom_poisson(&Alg::of(&p)))
        }
        "homomorphism" => {
            let (m, n) = (dim(rng), dim(rng));
            let (src, dst) = (gen::algebra(rng, m), gen::algebra(rng, n));
            let f = if m == n && rng.gen_bool(0.3) { LinearMap::identity(n) } else { lm(&mat(rng, n, m)) };
            let want = oracle::homomorphism(&matrix(&f), &Alg::of(&src), &Alg::of(&dst));
            compare(&lib(check_poisson_homomorphism(&f, &src, &dst))?, &want)
        }
        "poisson-module" | "dual-module" => {
            let n = dim(rng);
            let md = match rng.gen_range(0..4) {
                0 => PoissonModule::adjoint(&gen::fixture_of_dim(rng, n)),
                1 => PoissonModule::coadjoint(&gen::fixture_of_dim(rng, n)),
                _ => {
                    let m = dim(rng);
                    PoissonModule {
                        base: gen::algebra(rng, n),
                        beta: lm(&twist(rng, m)),
                        s: random_action(rng, n, m),
                        t: random_action(rng, n, m),
                    }
                }
            };
            let (p, beta, s, t) = (Alg::of(&md.base), matrix(&md.beta), oracle::action(&md.s), oracle::action(&md.t));
            if species == "poisson-module" {
                compare(&lib(check_poisson_module(&md))?, &oracle::poisson_module(&p, &beta, &s, &t))
            } else {
                compare(&lib(dual_module_hypotheses(&md))?, &oracle::dual_module_hypotheses(&p, &beta, &s, &t))
            }
        }
        "matched-pair" => {
            let n1 = dim(rng);
            let mp = if rng.gen_bool(0.3) {
                let p = gen::fixture_of_dim(rng, n1);
                let pstar = HomPoissonAlgebra::zero(n1);
                let pstar = HomPoissonAlgebra { alpha: p.alpha.transpose(), ..pstar };
                lib(MatchedPairPoisson::coadjoint(&p, &pstar))?
            } else {
                let n2 = dim(rng);
                MatchedPairPoisson {
                    p1: gen::algebra(rng, n1),
                    p2: gen::algebra(rng, n2),
                    rho1: random_action(rng, n1, n2),
                    mu1: random_action(rng, n1, n2),
                    rho2: random_action(rng, n2, n1),
                    mu2: random_action(rng, n2, n1),
                }
            };
            let want = oracle::matched_poisson(
                &Alg::of(&mp.p1),
                &Alg::of(&mp.p2),
                &oracle::action(&mp.rho1),
                &oracle::action(&mp.mu1),
                &oracle::action(&mp.rho2),
                &oracle::action(&mp.mu2),
            );
            compare(&lib(check_matched_pair_poisson(&mp))?, &want)
        }
        "manin-triple" => {
            let n = rng.gen_range(2..=3);
            let p = gen::algebra(rng, n);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(rng);
            let k = rng.gen_range(1..n);
            let (mut plus, mut minus) = (idx[..k].to_vec(), idx[k..].to_vec());
            plus.sort_unstable();
            minus.sort_unstable();
            let g = if rng.gen_bool(0.3) { oracle::identity(n) } else { mat(rng, n, n) };
            let want = oracle::manin_triple(&Alg::of(&p), &plus, &minus, &g);
            compare(&lib(check_manin_triple(&p, &plus, &minus, &BilinearForm::new(lm(&g))))?, &want)
        }
        "bialgebra" => {
            let b = if rng.gen_bool(0.3) {
                let all = fixtures::bialgebras();
                let small: Vec<_> = all.into_iter().filter(|(_, b)| b.dim() <= 3).collect();
                small.choose(rng).unwrap().1.clone()
            } else {
                let n = dim(rng);
                HomPoissonBialgebra::new(gen::algebra(rng, n), co(&tensor(rng, n, n, n)), co(&tensor(rng, n, n, n)))
            };
            let want = oracle::poisson_bialgebra(&Alg::of(&b.p), &oracle::costructure(&b.delta), &oracle::costructure(&b.coproduct));
            compare(&lib(check_poisson_bialgebra(&b))?, &want)
        }
        "coboundary" => {
            let p = { let n = dim(rng); gen::algebra(rng, n) };
            let r = invariant_r(rng, &p.alpha);
            let raw = Alg::of(&p);
            let mut got = Vec::new();
            let mut want = Battery::default();
            got.push(co_residual("delta", &lib(coboundary_delta(&p, &r))?));
            push_t3(&mut want, "delta", &oracle::coboundary_delta(&raw, &rmat(&r)));
            for (label, sign, printed) in [("coproduct", CoproductSign::Standard, false), ("coproduct-as-printed", CoproductSign::AsPrinted, true)] {
                got.push(co_residual(label, &lib(coboundary_coproduct_with(&p, &r, sign))?));
                push_t3(&mut want, label, &oracle::coboundary_coproduct(&raw, &rmat(&r), printed));
            }
            compare(&got, &want)
        }
        "chybe" => {
            let p = { let n = dim(rng); gen::algebra(rng, n) };
            let r = rt(&mat(rng, p.dim(), p.dim()));
            let got = vec![tensor_residual("chybe", &lib(chybe_residual(&p.lie_part(), &r))?)];
            let mut want = Battery::default();
            push_t3(&mut want, "chybe", &oracle::chybe(&structure(&p.bracket), &rmat(&r)));
            compare(&got, &want)
        }
        "haybe" => {
            let p = { let n = dim(rng); gen::algebra(rng, n) };
            let r = rt(&mat(rng, p.dim(), p.dim()));
            let printed = rng.gen_bool(0.5);
            let variant = if printed { HaybeVariant::AsPrinted } else { HaybeVariant::Standard };
            let got = lib(haybe_residual(&p.assoc_part(), &r, variant))?.residuals();
            let (t, unit) = oracle::haybe(&structure(&p.mul), &rmat(&r), printed);
            let mut want = Battery::default();
            push_t3(&mut want, "haybe", &t);
            if let Some(u) = unit {
                let n = u.len();
                want.push("haybe-unit-leg", vec![n, n], u.into_iter().flatten().collect());
            }
            compare(&got, &want)
        }
        "theorem44" => {
            let n = dim(rng);
            let p = if rng.gen_bool(0.5) {
                let mut p = gen::random_algebra(rng, n);
                p.alpha = LinearMap::identity(n);
                p
            } else {
                gen::fixture_of_dim(rng, n)
            };
            let r = invariant_r(rng, &p.alpha);
            let rep = lib(check_theorem44(&p, &r))?;
            let (want, want_printed) = oracle::theorem44(&Alg::of(&p), &rmat(&r));
            compare(&rep.conditions, &want)?;
            compare(&rep.as_printed, &want_printed)
        }
        "w-tensor" => {
            let p = { let n = dim(rng); gen::algebra(rng, n) };
            let n = p.dim();
            let (d, c) = (tensor(rng, n, n, n), tensor(rng, n, n, n));
            let ts = lib(w_residual(&p, &co(&d), &co(&c)))?;
            let got = vec![Residual::from_tensor3_family("w", &ts)];
            let mut want = Battery::default();
            let w = oracle::w(&matrix(&p.alpha), &d, &c);
            want.push("w", vec![n, n, n, n], w.into_iter().flatten().flatten().flatten().collect());
            compare(&got, &want)
        }
        "post" => {
            let ph = { let n = dim(rng); random_post(rng, n) };
            let raw = raw_post(&ph);
            compare(&lib(check_post_hom_poisson(&ph))?, &oracle::post_hom_poisson(&raw))?;
            let assoc = lib(associated_hom_poisson(&ph))?;
            let (br, mul) = oracle::associated(&raw);
            if structure(&assoc.bracket) != br || structure(&assoc.mul) != mul || matrix(&assoc.alpha) != raw.a {
                return Err("associated structure differs from oracle".into());
            }
            Ok(())
        }
        "module-hom-poisson" => {
            let md = random_module_hp(rng);
            let want = oracle::module_hom_poisson(&Alg::of(&md.base), &Alg::of(&md.v), &oracle::action(&md.s), &oracle::action(&md.t));
            compare(&lib(check_module_hom_poisson(&md))?, &want)
        }
        "o-operator" => {
            let lambda: Z = *[-1, 0, 1, 2].choose(rng).unwrap();
            let weight = Rational::from_int(lambda as i64);
            if rng.gen_bool(0.5) {
                let p = { let n = dim(rng); gen::algebra(rng, n) };
                let n = p.dim();
                let r = lm(&mat(rng, n, n));
                let raw = Alg::of(&p);
                let want = oracle::o_operator(&raw, &raw, &raw.br, &raw.mul, &matrix(&r), lambda);
                compare(&lib(check_rota_baxter(&p, &r, &weight))?, &want)
            } else {
                // A module that passes its battery: adjoint, or zero actions on a fixture.
                let n = dim(rng);
                let base = gen::fixture_of_dim(rng, n);
                let module = if rng.gen_bool(0.5) {
                    ModuleHomPoisson::adjoint(&base)
                } else {
                    let m = dim(rng);
                    let v = gen::fixture_of_dim(rng, m);
                    ModuleHomPoisson { base, v, s: ActionTensor::zeros(n, m), t: ActionTensor::zeros(n, m) }
                };
                let r = lm(&mat(rng, n, module.vdim()));
                let want = oracle::o_operator(
                    &Alg::of(&module.base),
                    &Alg::of(&module.v),
                    &oracle::action(&module.s),
                    &oracle::action(&module.t),
                    &matrix(&r),
                    lambda,
                );
                compare(&lib(check_o_operator(&OOperator { r, weight, module }))?, &want)
            }
        }
        other => Err(format!("unknown species {other}")),
    }
}

fn co_residual(label: &str, d: &hompoisson::tensor::CoStructureTensor) -> Residual {
    let n = d.dim();
    Residual::new(label, vec![n, n, n], d.entries().to_vec())
}

/// Run `cases` seeded instances of every species; the first disagreement, if any.
pub fn sweep(seed: u64, cases: usize) -> Result<usize, String> {
    let mut total = 0;
    for (s, species) in SPECIES.iter().enumerate() {
        let mut rng = gen::rng(seed.wrapping_mul(1000).wrapping_add(s as u64));
        for case in 0..cases {
            run_case(species, &mut rng).map_err(|e| format!("{species} case {case}: {e}"))?;
            total += 1;
        }
    }
    Ok(total)
}
