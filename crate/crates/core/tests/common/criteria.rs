//! End-to-end checks shared by the pipeline tests and the acceptance run.
//! Each returns a one-line summary on success and the first problem otherwise.

#![allow(dead_code)]

use std::time::{Duration, Instant};

use hompoisson::algebra::{check_hom_poisson, check_poisson_homomorphism, HomPoissonAlgebra};
use hompoisson::bialgebra::{
    check_infinitesimal, check_lie_cocycle, check_poisson_bialgebra, check_theorem44, chybe_residual, coboundary_coproduct,
    coboundary_delta, double_bialgebra, haybe_residual, is_alpha_invariant, HaybeVariant, HomPoissonBialgebra,
};
use hompoisson::fixtures;
use hompoisson::linear::LinearMap;
use hompoisson::matched::{check_manin_triple, check_matched_pair_poisson, standard_manin_triple, standard_partition, MatchedPairPoisson};
use hompoisson::modules::{check_poisson_module, semidirect_product, PoissonModule};
use hompoisson::post::{
    associated_hom_poisson, check_post_hom_poisson, post_from_o_operator, post_from_quasitriangular, quasitriangular_dual_module,
    ModuleHomPoisson, OOperator,
};
use hompoisson::residual::ResidualSet;
use hompoisson::solver::{solve, Grid, SearchSpec, Target};
use hompoisson::tensor::{ActionTensor, RTensor};
use hompoisson::Rational;
use rand::Rng;

use super::gen::{self, lm, mat, Rng8};
use super::oracle;

pub type Outcome = Result<String, String>;

fn within(label: &str, t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    if e > limit {
        return Err(format!("{label} took {e:.2?}, limit {limit:?}"));
    }
    Ok(e)
}

fn lib<T>(r: hompoisson::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

pub fn oracle_equivalence(cases: usize) -> Outcome {
    let t = Instant::now();
    let total = super::sweep(11, cases)?;
    let e = within("oracle sweep", t, Duration::from_secs(60))?;
    Ok(format!("{total} instances over {} species agree exactly ({e:.2?})", super::SPECIES.len()))
}

/// A module that passes its battery, perturbed in one entry half the time.
/// `dim(P) + dim(V) <= 5`.
pub fn module_case(rng: &mut Rng8) -> PoissonModule {
    let pool: Vec<HomPoissonAlgebra> = fixtures::algebras().into_iter().map(|(_, p)| p).filter(|p| p.dim() <= 3).collect();
    let base = pool[rng.gen_range(0..pool.len())].clone();
    let n = base.dim();
    let mut md = match rng.gen_range(0..3) {
        0 => PoissonModule::adjoint(&base),
        1 => PoissonModule::coadjoint(&base),
        _ => {
            let m = rng.gen_range(1..=5 - n);
            let beta = lm(&mat(rng, m, m));
            PoissonModule { base, beta, s: ActionTensor::zeros(n, m), t: ActionTensor::zeros(n, m) }
        }
    };
    if rng.gen_bool(0.5) {
        match rng.gen_range(0..3) {
            0 => gen::mutate_entry(rng, md.s.entries_mut()),
            1 => gen::mutate_entry(rng, md.t.entries_mut()),
            _ => gen::mutate_entry(rng, md.beta.entries_mut()),
        }
    }
    md
}

pub fn semidirect_biconditional(cases: usize) -> Outcome {
    let mut rng = gen::rng(25);
    let (mut valid, mut invalid) = (0, 0);
    for case in 0..cases {
        let md = module_case(&mut rng);
        let module_ok = lib(check_poisson_module(&md))?.passes();
        let semi_ok = lib(check_hom_poisson(&lib(semidirect_product(&md))?))?.passes();
        if module_ok != semi_ok {
            return Err(format!("case {case}: module {module_ok}, semidirect {semi_ok}"));
        }
        if module_ok {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    if valid == 0 || invalid == 0 {
        return Err(format!("degenerate sample: {valid} valid, {invalid} invalid"));
    }
    Ok(format!("{cases} modules ({valid} valid, {invalid} invalid), no counterexample"))
}

/// Random rational `r` supported where a diagonal twist leaves `e_i⊗e_j` fixed.
pub fn random_invariant_r(rng: &mut Rng8, alpha: &LinearMap) -> RTensor {
    let a = oracle::matrix(alpha);
    let n = a.len();
    RTensor::from_fn(n, |i, j| {
        let keep = a[i][i] * a[j][j] == 1 && (0..n).all(|k| (k == i || a[i][k] == 0) && (k == j || a[j][k] == 0));
        if keep {
            Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4))
        } else {
            Rational::zero()
        }
    })
}

pub fn coboundary_automatics(per_fixture: usize) -> Outcome {
    let mut rng = gen::rng(33);
    let fx = fixtures::algebras();
    for (name, p) in &fx {
        for case in 0..per_fixture {
            let r = random_invariant_r(&mut rng, &p.alpha);
            if !is_alpha_invariant(&p.alpha, &r) {
                return Err(format!("{name}: generated r is not α-invariant"));
            }
            let delta = lib(coboundary_delta(p, &r))?;
            let cop = lib(coboundary_coproduct(p, &r))?;
            if !lib(check_lie_cocycle(&p.lie_part(), &delta))?.is_zero() {
                return Err(format!("{name} case {case}: cocycle residual nonzero"));
            }
            if !lib(check_infinitesimal(&p.assoc_part(), &cop))?.is_zero() {
                return Err(format!("{name} case {case}: infinitesimal residual nonzero"));
            }
        }
    }
    Ok(format!("{per_fixture} α-invariant r on each of {} fixtures", fx.len()))
}

pub fn chybe_regression() -> Outcome {
    let t = Instant::now();
    let p = fixtures::nonabelian_plane();
    let report = lib(solve(&SearchSpec::new(Target::Chybe, p.clone(), Grid::ints(&[-1, 0, 1]))))?;
    let e = within("CHYBE search", t, Duration::from_secs(5))?;
    let br = oracle::structure(&p.bracket);
    let found: Vec<oracle::M> = report.solutions.iter().map(|s| oracle::rmat(&s.as_r())).collect();
    for r in &found {
        if oracle::chybe(&br, r).iter().flatten().flatten().any(|x| *x != 0) {
            return Err(format!("solver returned {r:?}, which the oracle rejects"));
        }
    }
    for (what, want) in [("0", vec![vec![0, 0], vec![0, 0]]), ("e1⊗e2−e2⊗e1", vec![vec![0, 1], vec![-1, 0]])] {
        if !found.contains(&want) {
            return Err(format!("solution set misses r = {what}"));
        }
    }
    Ok(format!("{} of {} points solve, all re-verified, 0 and skew r found ({e:.2?})", found.len(), report.points))
}

pub fn drinfeld_doubles() -> Outcome {
    let mut lines = Vec::new();
    for (name, b) in fixtures::bialgebras() {
        let t = Instant::now();
        let (db, r) = lib(double_bialgebra(&b))?;
        let d = &db.p;
        if !lib(chybe_residual(&d.lie_part(), &r))?.is_zero() {
            return Err(format!("{name}: chybe nonzero on the double"));
        }
        if !lib(haybe_residual(&d.assoc_part(), &r, HaybeVariant::Standard))?.is_zero() {
            return Err(format!("{name}: haybe nonzero on the double"));
        }
        let cond = lib(check_theorem44(d, &r))?;
        if !cond.passes() {
            return Err(format!("{name}: coboundary conditions fail: {}", cond.conditions.failing_labels().join(", ")));
        }
        let bi = lib(check_poisson_bialgebra(&db))?;
        if !bi.passes() {
            return Err(format!("{name}: double bialgebra fails: {}", bi.failing_labels().join(", ")));
        }
        let e = within(&name, t, Duration::from_secs(10))?;
        lines.push(format!("{name} {e:.1?}"));
    }
    Ok(format!("{} doubles pass ({})", lines.len(), lines.join(", ")))
}

fn three_way(b: &HomPoissonBialgebra) -> Result<(bool, bool, bool), String> {
    let bialg = lib(check_poisson_bialgebra(b))?.passes();
    let pstar = b.dual_algebra();
    let pair = lib(check_matched_pair_poisson(&lib(MatchedPairPoisson::coadjoint(&b.p, &pstar))?))?.passes();
    let (d, form) = lib(standard_manin_triple(&b.p, &pstar))?;
    let (plus, minus) = standard_partition(b.dim());
    let manin = lib(check_manin_triple(&d, &plus, &minus, &form))?.passes();
    Ok((bialg, pair, manin))
}

pub fn three_way_equivalence(mutations: usize) -> Outcome {
    let mut rng = gen::rng(36);
    let mut total = 0;
    let mut passing = 0;
    for (name, b) in fixtures::bialgebras() {
        let (x, y, z) = three_way(&b)?;
        if !(x && y && z) {
            return Err(format!("{name}: unmutated fixture gives {x}/{y}/{z}"));
        }
        for m in 0..mutations {
            let mut bm = b.clone();
            match rng.gen_range(0..4) {
                0 => gen::mutate_entry(&mut rng, bm.p.mul.entries_mut()),
                1 => gen::mutate_entry(&mut rng, bm.p.bracket.entries_mut()),
                2 => gen::mutate_entry(&mut rng, bm.delta.entries_mut()),
                _ => gen::mutate_entry(&mut rng, bm.coproduct.entries_mut()),
            }
            let (x, y, z) = three_way(&bm)?;
            if x != y || y != z {
                return Err(format!("{name} mutation {m}: bialgebra {x}, matched pair {y}, Manin triple {z}"));
            }
            passing += usize::from(x);
            total += 1;
        }
    }
    Ok(format!("{total} mutations agree ({passing} still pass)"))
}

fn split_once(p: &HomPoissonAlgebra, r: LinearMap, weight: Rational) -> Result<(), String> {
    let o = OOperator { r: r.clone(), weight, module: ModuleHomPoisson::adjoint(p) };
    let post = lib(post_from_o_operator(&o))?;
    let post_res = lib(check_post_hom_poisson(&post))?;
    if !post_res.passes() {
        return Err(format!("post structure fails {}", post_res.failing_labels().join(", ")));
    }
    let assoc = lib(associated_hom_poisson(&post))?;
    if !lib(check_hom_poisson(&assoc))?.passes() {
        return Err("associated algebra fails".into());
    }
    let hom = lib(check_poisson_homomorphism(&r, &assoc, p))?;
    if !hom.passes() {
        return Err(format!("R is not a homomorphism: {}", hom.failing_labels().join(", ")));
    }
    Ok(())
}

pub const SPLIT_WEIGHTS: [i64; 3] = [0, 1, -1];

pub fn splitting() -> Outcome {
    let t = Instant::now();
    let mut count = 0;
    for (name, p) in fixtures::algebras() {
        let n = p.dim();
        for w in [-1, 0, 1, 2] {
            split_once(&p, LinearMap::zeros(n, n), Rational::from_int(w)).map_err(|e| format!("{name}, R=0, λ={w}: {e}"))?;
            count += 1;
        }
        split_once(&p, LinearMap::identity(n), Rational::from_int(-1)).map_err(|e| format!("{name}, R=id, λ=-1: {e}"))?;
        count += 1;
    }
    let mut found = 0;
    for (name, p) in fixtures::algebras().into_iter().filter(|(_, p)| p.dim() == 2) {
        for w in SPLIT_WEIGHTS {
            let mut spec = SearchSpec::new(Target::RotaBaxter, p.clone(), Grid::ints(&[-1, 0, 1]));
            spec.weight = Some(Rational::from_int(w));
            for s in lib(solve(&spec))?.solutions {
                split_once(&p, s.as_map(), Rational::from_int(w))
                    .map_err(|e| format!("{name}, grid R {:?}, λ={w}: {e}", s.grid_index))?;
                found += 1;
            }
        }
    }
    let e = within("splitting", t, Duration::from_secs(30))?;
    Ok(format!("{count} fixed operators and {found} grid-found Rota-Baxter operators split and recombine ({e:.2?})"))
}

/// Quasitriangular pairs: each double, the skew plane and `r = 0` on the trivial fixtures.
pub fn quasitriangular_fixtures() -> Result<Vec<(String, HomPoissonBialgebra, RTensor)>, String> {
    let mut out = Vec::new();
    for (name, b) in fixtures::bialgebras() {
        let (db, r) = lib(double_bialgebra(&b))?;
        out.push((format!("double of {name}"), db, r));
        if name.ends_with("/trivial") {
            out.push((name.clone(), b.clone(), RTensor::zeros(b.dim())));
        }
    }
    let skew = fixtures::bialgebra_by_name("nonabelian-plane/skew").ok_or("missing skew fixture")?;
    out.push(("nonabelian-plane/skew".into(), skew, fixtures::skew_plane_r()));
    Ok(out)
}

pub fn quasitriangular() -> Outcome {
    let cases = quasitriangular_fixtures()?;
    for (name, b, r) in &cases {
        let direct = lib(post_from_quasitriangular(b, r))?;
        let (_, o) = lib(quasitriangular_dual_module(b, r))?;
        let via_o = lib(post_from_o_operator(&o))?;
        if direct != via_o {
            return Err(format!("{name}: the two post structures differ"));
        }
        for (which, ph) in [("direct", &direct), ("via O-operator", &via_o)] {
            let res = lib(check_post_hom_poisson(ph))?;
            if !res.passes() {
                return Err(format!("{name} ({which}): {}", res.failing_labels().join(", ")));
            }
        }
    }
    Ok(format!("{} quasitriangular fixtures: both routes agree entrywise and pass", cases.len()))
}
