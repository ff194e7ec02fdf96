//! `hompoisson`: check, construct and search Hom-Poisson structures stored
//! as JSON structure files.
//!
//! Exit status: 0 all residuals vanish, 1 some residual is nonzero, 2 the
//! input is unreadable or violates a precondition, 3 a search cap was hit.

mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hompoisson::algebra::{check_hom_associative, check_hom_lie, check_hom_poisson};
use hompoisson::bialgebra::{
    check_poisson_bialgebra, check_theorem44, chybe_residual, coboundary_bialgebra, double_bialgebra,
    haybe_residual, HaybeVariant,
};
use hompoisson::error::{Error, Result};
use hompoisson::fixtures;
use hompoisson::format::StructureFile;
use hompoisson::matched::{bowtie_poisson, check_manin_triple, check_matched_pair_poisson, standard_manin_triple, standard_partition};
use hompoisson::modules::{check_poisson_module, dual_module, semidirect_product};
use hompoisson::post::{
    associated_hom_poisson, check_module_hom_poisson, check_o_operator, check_post_hom_poisson, module_semidirect,
    post_from_o_operator,
};
use hompoisson::residual::{Residual, ResidualSet};
use hompoisson::solver::{solve, SearchSpec};
use report::Format;

#[derive(Parser)]
#[command(name = "hompoisson", version, about = "Exact checks and constructions for Hom-Poisson structures")]
struct Cli {
    /// Reading of the associative Yang-Baxter equation.
    #[arg(long, global = true, value_enum)]
    haybe_variant: Option<Variant>,

    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Variant {
    Standard,
    AsPrinted,
}

impl From<Variant> for HaybeVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Standard => HaybeVariant::Standard,
            Variant::AsPrinted => HaybeVariant::AsPrinted,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Species {
    HomAssoc,
    HomLie,
    HomPoisson,
    Module,
    MatchedPair,
    ManinTriple,
    Bialgebra,
    Post,
    OOperator,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Kind {
    Semidirect,
    DualModule,
    Bowtie,
    StandardManin,
    Coboundary,
    Double,
    PostFromO,
    Associated,
}

#[derive(Subcommand)]
enum Command {
    /// Print the residual battery of a structure; exit 0 iff every residual vanishes.
    Check {
        file: PathBuf,
        #[arg(long = "as", value_enum)]
        species: Species,
    },
    /// Build a new structure from an input file.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Enumerate a search grid.
    Solve {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Print one named residual tensor in full.
    Residual {
        file: PathBuf,
        #[arg(long)]
        eq: String,
        /// Species whose battery holds the tag; defaults to the file's own.
        #[arg(long = "as", value_enum)]
        species: Option<Species>,
    },
    /// Write a bundled fixture to a structure file.
    Fixture {
        /// Algebra name, or `<algebra>/trivial`, `nonabelian-plane/skew` for bialgebras.
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
}

fn species_of(file: &StructureFile) -> Species {
    match file.species() {
        Some("module-hom-poisson") => Species::Module,
        Some(s) => Species::from_str(s, true).unwrap_or(Species::HomPoisson),
        None => Species::HomPoisson,
    }
}

fn battery(file: &StructureFile, species: Species) -> Result<Vec<Residual>> {
    match species {
        Species::HomAssoc => check_hom_associative(&file.hom_assoc()?, false),
        Species::HomLie => check_hom_lie(&file.hom_lie()?),
        Species::HomPoisson => check_hom_poisson(&file.hom_poisson()?),
        Species::Module if file.has("mul1") || file.has("bracket1") => {
            check_module_hom_poisson(&file.module_hom_poisson()?)
        }
        Species::Module => check_poisson_module(&file.poisson_module()?),
        Species::MatchedPair => check_matched_pair_poisson(&file.matched_pair()?),
        Species::ManinTriple => {
            let (p, plus, minus, b) = file.manin_triple()?;
            check_manin_triple(&p, &plus, &minus, &b)
        }
        Species::Bialgebra => check_poisson_bialgebra(&file.bialgebra()?),
        Species::Post => check_post_hom_poisson(&file.post()?),
        Species::OOperator => {
            let o = file.o_operator()?;
            let module = check_module_hom_poisson(&o.module)?;
            if !module.passes() {
                return Ok(module.into_iter().map(|r| r.prefixed("module")).collect());
            }
            check_o_operator(&o)
        }
    }
}

/// Yang-Baxter and coboundary residuals of the file's `r`, if it has one.
fn r_battery(file: &StructureFile, variant: HaybeVariant) -> Result<Vec<Residual>> {
    if !file.has("r") {
        return Ok(Vec::new());
    }
    let p = file.hom_poisson()?;
    let r = file.r_tensor("r")?;
    let mut out = vec![Residual::from_tensor3("chybe", &chybe_residual(&p.lie_part(), &r)?)];
    out.extend(haybe_residual(&p.assoc_part(), &r, variant)?.residuals());
    let t = check_theorem44(&p, &r)?;
    out.extend(t.conditions);
    out.extend(t.as_printed);
    Ok(out)
}

fn construct(kind: Kind, input: &StructureFile) -> Result<StructureFile> {
    Ok(match kind {
        Kind::Semidirect if input.has("mul1") || input.has("bracket1") => {
            StructureFile::from_hom_poisson(&module_semidirect(&input.module_hom_poisson()?)?)
        }
        Kind::Semidirect => StructureFile::from_hom_poisson(&semidirect_product(&input.poisson_module()?)?),
        Kind::DualModule => StructureFile::from_poisson_module(&dual_module(&input.poisson_module()?)?),
        Kind::Bowtie => StructureFile::from_hom_poisson(&bowtie_poisson(&input.matched_pair()?)?),
        Kind::StandardManin => {
            let b = input.bialgebra()?;
            let (d, form) = standard_manin_triple(&b.p, &b.dual_algebra())?;
            let (plus, minus) = standard_partition(b.dim());
            StructureFile::from_manin_triple(&d, &plus, &minus, &form)
        }
        Kind::Coboundary => {
            let r = input.r_tensor("r")?;
            let mut f = StructureFile::from_bialgebra(&coboundary_bialgebra(&input.hom_poisson()?, &r)?);
            f.set_r("r", &r);
            f
        }
        Kind::Double => {
            let (b, r) = double_bialgebra(&input.bialgebra()?)?;
            let mut f = StructureFile::from_bialgebra(&b);
            f.set_r("r", &r);
            f
        }
        Kind::PostFromO => StructureFile::from_post(&post_from_o_operator(&input.o_operator()?)?),
        Kind::Associated => StructureFile::from_hom_poisson(&associated_hom_poisson(&input.post()?)?),
    })
}

fn export_fixture(name: &str) -> Result<StructureFile> {
    if let Some(p) = fixtures::algebra_by_name(name) {
        return Ok(StructureFile::from_hom_poisson(&p));
    }
    if let Some(b) = fixtures::bialgebra_by_name(name) {
        let mut f = StructureFile::from_bialgebra(&b);
        if name == "nonabelian-plane/skew" {
            f.set_r("r", &fixtures::skew_plane_r());
        }
        return Ok(f);
    }
    Err(Error::InvalidSpec(format!("no fixture named `{name}`; try --list")))
}

fn verdict(res: &[Residual]) -> u8 {
    if res.passes() {
        0
    } else {
        1
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8> {
    let fmt = cli.format;
    match cli.command {
        Command::Check { file, species } => {
            let res = battery(&StructureFile::load(&file)?, species)?;
            report::battery(out, fmt, &res)?;
            Ok(verdict(&res))
        }
        Command::Construct { kind, input, out: path } => {
            let built = construct(kind, &StructureFile::load(&input)?)?;
            built.save(&path)?;
            writeln!(out, "wrote {} ({}, dim {})", path.display(), built.species().unwrap_or("structure"), built.dim)?;
            Ok(0)
        }
        Command::Solve { spec } => {
            let mut spec = SearchSpec::load(&spec)?;
            if let Some(v) = cli.haybe_variant {
                spec.haybe_variant = v.into();
            }
            report::search(out, fmt, &solve(&spec)?)?;
            Ok(0)
        }
        Command::Residual { file, eq, species } => {
            let file = StructureFile::load(&file)?;
            let species = species.unwrap_or_else(|| species_of(&file));
            let variant = cli.haybe_variant.map(HaybeVariant::from).unwrap_or_default();
            let mut all = battery(&file, species)?;
            all.extend(r_battery(&file, variant)?);
            match all.iter().find(|r| r.label == eq) {
                Some(r) => {
                    report::tensor(out, fmt, r)?;
                    Ok(verdict(std::slice::from_ref(r)))
                }
                None => {
                    let tags: Vec<&str> = all.iter().map(|r| r.label.as_str()).collect();
                    Err(Error::InvalidSpec(format!("no residual `{eq}`; available: {}", tags.join(", "))))
                }
            }
        }
        Command::Fixture { name, out: path, list } => {
            if list || name.is_none() {
                for (n, _) in fixtures::algebras() {
                    writeln!(out, "{n}")?;
                }
                for (n, _) in fixtures::bialgebras() {
                    writeln!(out, "{n}")?;
                }
                return Ok(0);
            }
            let f = export_fixture(name.as_deref().unwrap_or_default())?;
            match path {
                Some(p) => f.save(&p)?,
                None => out.write_all(f.to_json().as_bytes())?,
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
