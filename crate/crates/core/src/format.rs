//! Versioned JSON structure files.
//!
//! A file carries the ambient dimension, an optional secondary dimension
//! `vdim` (module, partner algebra or O-operator domain), the twist `alpha`
//! and a flat map of named tensors. Every scalar is a `"p/q"` string.
//!
//! ```json
//! {
//!   "schema": "hompoisson/1",
//!   "dim": 2,
//!   "alpha": [["1", "0"], ["0", "1"]],
//!   "tensors": {
//!     "bracket": [[["0", "0"], ["0", "1"]], [["0", "-1"], ["0", "0"]]]
//!   }
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{Map, Value};

use crate::algebra::{HomAssocAlgebra, HomLieAlgebra, HomPoissonAlgebra};
use crate::bialgebra::HomPoissonBialgebra;
use crate::error::{Error, Result};
use crate::linear::LinearMap;
use crate::matched::{BilinearForm, MatchedPairPoisson};
use crate::modules::PoissonModule;
use crate::post::{ModuleHomPoisson, OOperator, PostHomPoisson};
use crate::rational::Rational;
use crate::tensor::{ActionTensor, CoStructureTensor, RTensor, StructureTensor};

pub const SCHEMA: &str = "hompoisson/1";

/// Which dimension each axis of a role's tensor runs over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Axis {
    N,
    M,
}

/// Expected axes of every known tensor role.
fn role_axes(role: &str) -> Option<&'static [Axis]> {
    use Axis::{M, N};
    Some(match role {
        "mul" | "bracket" | "delta" | "Delta" | "lie" | "diamond" | "dot" | "succ" => &[N, N, N],
        "r" | "B" => &[N, N],
        "unit" => &[N],
        "R" => &[N, M],
        "beta" => &[M, M],
        "S" | "T" | "rho1" | "mu1" => &[N, M, M],
        "rho2" | "mu2" => &[M, N, N],
        "mul1" | "bracket1" => &[M, M, M],
        _ => return None,
    })
}

/// Dense tensor of a role, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RawTensor {
    pub shape: Vec<usize>,
    pub data: Vec<Rational>,
}

/// In-memory form of a structure file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureFile {
    pub dim: usize,
    pub vdim: Option<usize>,
    pub basis: Vec<String>,
    pub alpha: LinearMap,
    pub tensors: BTreeMap<String, RawTensor>,
    pub weight: Option<Rational>,
    pub partition: Option<(Vec<usize>, Vec<usize>)>,
    pub metadata: Map<String, Value>,
}

fn shape_str(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join("×"))
}

fn default_basis(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl StructureFile {
    pub fn new(dim: usize) -> Self {
        StructureFile {
            dim,
            vdim: None,
            basis: default_basis(dim),
            alpha: LinearMap::identity(dim),
            tensors: BTreeMap::new(),
            weight: None,
            partition: None,
            metadata: Map::new(),
        }
    }

    pub fn with_species(mut self, species: &str) -> Self {
        self.metadata.insert("species".into(), Value::String(species.into()));
        self
    }

    pub fn species(&self) -> Option<&str> {
        self.metadata.get("species").and_then(Value::as_str)
    }

    fn m(&self) -> usize {
        self.vdim.unwrap_or(self.dim)
    }

    fn expected_shape(&self, role: &str) -> Result<Vec<usize>> {
        let axes = role_axes(role).ok_or_else(|| Error::SchemaMismatch(format!("unknown tensor role `{role}`")))?;
        Ok(axes.iter().map(|a| if *a == Axis::N { self.dim } else { self.m() }).collect())
    }

    fn put(&mut self, role: &str, shape: Vec<usize>, data: Vec<Rational>) {
        debug_assert_eq!(self.expected_shape(role).ok(), Some(shape.clone()), "role {role}");
        self.tensors.insert(role.to_string(), RawTensor { shape, data });
    }

    fn get(&self, role: &str) -> Result<&RawTensor> {
        let t = self.tensors.get(role).ok_or_else(|| Error::MissingTensor(role.to_string()))?;
        let expected = self.expected_shape(role)?;
        if t.shape != expected {
            return Err(Error::ShapeError {
                role: role.to_string(),
                expected: shape_str(&expected),
                found: shape_str(&t.shape),
            });
        }
        Ok(t)
    }

    pub fn has(&self, role: &str) -> bool {
        self.tensors.contains_key(role)
    }

    pub fn set_structure(&mut self, role: &str, t: &StructureTensor) {
        let n = t.dim();
        self.put(role, vec![n, n, n], t.entries().to_vec());
    }

    pub fn set_costructure(&mut self, role: &str, t: &CoStructureTensor) {
        let n = t.dim();
        self.put(role, vec![n, n, n], t.entries().to_vec());
    }

    pub fn set_r(&mut self, role: &str, r: &RTensor) {
        let n = r.dim();
        self.put(role, vec![n, n], r.entries().to_vec());
    }

    pub fn set_map(&mut self, role: &str, m: &LinearMap) {
        self.put(role, vec![m.rows(), m.cols()], m.entries().to_vec());
    }

    pub fn set_action(&mut self, role: &str, a: &ActionTensor) {
        self.put(role, vec![a.alg_dim(), a.mod_dim(), a.mod_dim()], a.entries().to_vec());
    }

    pub fn structure(&self, role: &str) -> Result<StructureTensor> {
        let t = self.get(role)?;
        StructureTensor::from_flat(t.shape[0], t.data.clone())
    }

    pub fn costructure(&self, role: &str) -> Result<CoStructureTensor> {
        let t = self.get(role)?;
        CoStructureTensor::from_flat(t.shape[0], t.data.clone())
    }

    pub fn r_tensor(&self, role: &str) -> Result<RTensor> {
        let t = self.get(role)?;
        RTensor::from_flat(t.shape[0], t.data.clone())
    }

    pub fn map(&self, role: &str) -> Result<LinearMap> {
        let t = self.get(role)?;
        let cols = t.shape[1];
        Ok(LinearMap::from_fn(t.shape[0], cols, |i, j| t.data[i * cols + j].clone()))
    }

    pub fn action(&self, role: &str) -> Result<ActionTensor> {
        let t = self.get(role)?;
        ActionTensor::from_flat(t.shape[0], t.shape[1], t.data.clone())
    }

    fn structure_or_zero(&self, role: &str, n: usize) -> Result<StructureTensor> {
        if self.has(role) {
            self.structure(role)
        } else {
            Ok(StructureTensor::zeros(n))
        }
    }

    pub fn weight(&self) -> Result<Rational> {
        self.weight.clone().ok_or_else(|| Error::MissingTensor("weight".into()))
    }

    pub fn hom_assoc(&self) -> Result<HomAssocAlgebra> {
        let mut a = HomAssocAlgebra::new(self.alpha.clone(), self.structure("mul")?);
        if self.has("unit") {
            a.unit = Some(self.get("unit")?.data.clone());
        }
        Ok(a)
    }

    pub fn hom_lie(&self) -> Result<HomLieAlgebra> {
        Ok(HomLieAlgebra::new(self.alpha.clone(), self.structure("bracket")?))
    }

    /// A missing operation is read as zero as long as the other one is present.
    pub fn hom_poisson(&self) -> Result<HomPoissonAlgebra> {
        if !self.has("mul") && !self.has("bracket") {
            return Err(Error::MissingTensor("mul".into()));
        }
        let n = self.dim;
        Ok(HomPoissonAlgebra::new(
            self.alpha.clone(),
            self.structure_or_zero("mul", n)?,
            self.structure_or_zero("bracket", n)?,
        ))
    }

    /// The secondary algebra `(V, ∘₁, [·,·]₁, β)`.
    pub fn v_algebra(&self) -> Result<HomPoissonAlgebra> {
        let m = self.m();
        Ok(HomPoissonAlgebra::new(
            self.map("beta")?,
            self.structure_or_zero("mul1", m)?,
            self.structure_or_zero("bracket1", m)?,
        ))
    }

    pub fn poisson_module(&self) -> Result<PoissonModule> {
        Ok(PoissonModule { base: self.hom_poisson()?, beta: self.map("beta")?, s: self.action("S")?, t: self.action("T")? })
    }

    pub fn module_hom_poisson(&self) -> Result<ModuleHomPoisson> {
        Ok(ModuleHomPoisson { base: self.hom_poisson()?, v: self.v_algebra()?, s: self.action("S")?, t: self.action("T")? })
    }

    pub fn matched_pair(&self) -> Result<MatchedPairPoisson> {
        Ok(MatchedPairPoisson {
            p1: self.hom_poisson()?,
            p2: self.v_algebra()?,
            rho1: self.action("rho1")?,
            mu1: self.action("mu1")?,
            rho2: self.action("rho2")?,
            mu2: self.action("mu2")?,
        })
    }

    pub fn manin_triple(&self) -> Result<(HomPoissonAlgebra, Vec<usize>, Vec<usize>, BilinearForm)> {
        let (plus, minus) = self.partition.clone().ok_or_else(|| Error::MissingTensor("partition".into()))?;
        Ok((self.hom_poisson()?, plus, minus, BilinearForm::new(self.map("B")?)))
    }

    pub fn bialgebra(&self) -> Result<HomPoissonBialgebra> {
        Ok(HomPoissonBialgebra::new(self.hom_poisson()?, self.costructure("delta")?, self.costructure("Delta")?))
    }

    pub fn post(&self) -> Result<PostHomPoisson> {
        let n = self.dim;
        Ok(PostHomPoisson {
            alpha: self.alpha.clone(),
            lie: self.structure_or_zero("lie", n)?,
            diamond: self.structure_or_zero("diamond", n)?,
            dot: self.structure_or_zero("dot", n)?,
            succ: self.structure_or_zero("succ", n)?,
        })
    }

    pub fn o_operator(&self) -> Result<OOperator> {
        Ok(OOperator { r: self.map("R")?, weight: self.weight()?, module: self.module_hom_poisson()? })
    }

    pub fn from_hom_assoc(a: &HomAssocAlgebra) -> Self {
        let mut f = StructureFile::new(a.dim()).with_species("hom-assoc");
        f.alpha = a.alpha.clone();
        f.set_structure("mul", &a.mul);
        if let Some(u) = &a.unit {
            f.put("unit", vec![u.len()], u.clone());
        }
        f
    }

    pub fn from_hom_lie(l: &HomLieAlgebra) -> Self {
        let mut f = StructureFile::new(l.dim()).with_species("hom-lie");
        f.alpha = l.alpha.clone();
        f.set_structure("bracket", &l.bracket);
        f
    }

    pub fn from_hom_poisson(p: &HomPoissonAlgebra) -> Self {
        let mut f = StructureFile::new(p.dim()).with_species("hom-poisson");
        f.alpha = p.alpha.clone();
        f.set_structure("mul", &p.mul);
        f.set_structure("bracket", &p.bracket);
        f
    }

    fn set_v_algebra(&mut self, v: &HomPoissonAlgebra) {
        self.vdim = Some(v.dim());
        self.set_map("beta", &v.alpha);
        self.set_structure("mul1", &v.mul);
        self.set_structure("bracket1", &v.bracket);
    }

    pub fn from_poisson_module(md: &PoissonModule) -> Self {
        let mut f = StructureFile::from_hom_poisson(&md.base).with_species("module");
        f.vdim = Some(md.vdim());
        f.set_map("beta", &md.beta);
        f.set_action("S", &md.s);
        f.set_action("T", &md.t);
        f
    }

    pub fn from_module_hom_poisson(md: &ModuleHomPoisson) -> Self {
        let mut f = StructureFile::from_hom_poisson(&md.base).with_species("module-hom-poisson");
        f.set_v_algebra(&md.v);
        f.set_action("S", &md.s);
        f.set_action("T", &md.t);
        f
    }

    pub fn from_matched_pair(mp: &MatchedPairPoisson) -> Self {
        let mut f = StructureFile::from_hom_poisson(&mp.p1).with_species("matched-pair");
        f.set_v_algebra(&mp.p2);
        f.set_action("rho1", &mp.rho1);
        f.set_action("mu1", &mp.mu1);
        f.set_action("rho2", &mp.rho2);
        f.set_action("mu2", &mp.mu2);
        f
    }

    pub fn from_manin_triple(p: &HomPoissonAlgebra, plus: &[usize], minus: &[usize], b: &BilinearForm) -> Self {
        let mut f = StructureFile::from_hom_poisson(p).with_species("manin-triple");
        f.set_map("B", &b.gram);
        f.partition = Some((plus.to_vec(), minus.to_vec()));
        f
    }

    pub fn from_bialgebra(b: &HomPoissonBialgebra) -> Self {
        let mut f = StructureFile::from_hom_poisson(&b.p).with_species("bialgebra");
        f.set_costructure("delta", &b.delta);
        f.set_costructure("Delta", &b.coproduct);
        f
    }

    pub fn from_post(ph: &PostHomPoisson) -> Self {
        let mut f = StructureFile::new(ph.dim()).with_species("post");
        f.alpha = ph.alpha.clone();
        f.set_structure("lie", &ph.lie);
        f.set_structure("diamond", &ph.diamond);
        f.set_structure("dot", &ph.dot);
        f.set_structure("succ", &ph.succ);
        f
    }

    pub fn from_o_operator(o: &OOperator) -> Self {
        let mut f = StructureFile::from_module_hom_poisson(&o.module).with_species("o-operator");
        f.set_map("R", &o.r);
        f.weight = Some(o.weight.clone());
        f
    }

    pub fn to_json(&self) -> String {
        let mut tensors = Map::new();
        for (role, t) in &self.tensors {
            tensors.insert(role.clone(), nest(&t.shape, &t.data));
        }
        let mut top = Map::new();
        top.insert("schema".into(), Value::String(SCHEMA.into()));
        top.insert("dim".into(), Value::from(self.dim));
        if let Some(m) = self.vdim {
            top.insert("vdim".into(), Value::from(m));
        }
        top.insert("basis".into(), Value::Array(self.basis.iter().cloned().map(Value::String).collect()));
        top.insert("alpha".into(), nest(&[self.alpha.rows(), self.alpha.cols()], self.alpha.entries()));
        if let Some(w) = &self.weight {
            top.insert("weight".into(), Value::String(w.to_string()));
        }
        if let Some((p, q)) = &self.partition {
            let mut part = Map::new();
            part.insert("plus".into(), Value::from(p.clone()));
            part.insert("minus".into(), Value::from(q.clone()));
            top.insert("partition".into(), Value::Object(part));
        }
        top.insert("tensors".into(), Value::Object(tensors));
        if !self.metadata.is_empty() {
            top.insert("metadata".into(), Value::Object(self.metadata.clone()));
        }
        let mut out = String::new();
        write_value(&mut out, &Value::Object(top), 0);
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
        let obj = v.as_object().ok_or_else(|| Error::SchemaMismatch("top level must be an object".into()))?;
        match obj.get("schema").and_then(Value::as_str) {
            Some(SCHEMA) => {}
            Some(other) => return Err(Error::SchemaMismatch(format!("unsupported schema `{other}`, expected `{SCHEMA}`"))),
            None => return Err(Error::SchemaMismatch("missing `schema`".into())),
        }
        let dim = read_count(obj, "dim")?.ok_or_else(|| Error::SchemaMismatch("missing `dim`".into()))?;
        let mut f = StructureFile::new(dim);
        f.vdim = read_count(obj, "vdim")?;
        if let Some(b) = obj.get("basis") {
            let names: Option<Vec<String>> =
                b.as_array().map(|a| a.iter().map(|x| x.as_str().map(str::to_string)).collect()).unwrap_or(None);
            let names = names.ok_or_else(|| Error::SchemaMismatch("`basis` must be a list of strings".into()))?;
            if names.len() != dim {
                return Err(Error::ShapeError {
                    role: "basis".into(),
                    expected: shape_str(&[dim]),
                    found: shape_str(&[names.len()]),
                });
            }
            f.basis = names;
        }
        if let Some(a) = obj.get("alpha") {
            let data = read_tensor("alpha", a, &[dim, dim])?;
            f.alpha = LinearMap::from_fn(dim, dim, |i, j| data[i * dim + j].clone());
        }
        if let Some(w) = obj.get("weight") {
            f.weight = Some(read_scalar("weight", w)?);
        }
        if let Some(p) = obj.get("partition") {
            let read = |key: &str| -> Result<Vec<usize>> {
                p.get(key)
                    .and_then(Value::as_array)
                    .and_then(|a| a.iter().map(|x| x.as_u64().map(|u| u as usize)).collect())
                    .ok_or_else(|| Error::SchemaMismatch(format!("`partition.{key}` must be a list of indices")))
            };
            f.partition = Some((read("plus")?, read("minus")?));
        }
        if let Some(t) = obj.get("tensors") {
            let t = t.as_object().ok_or_else(|| Error::SchemaMismatch("`tensors` must be an object".into()))?;
            for (role, val) in t {
                let shape = f.expected_shape(role)?;
                let data = read_tensor(role, val, &shape)?;
                f.tensors.insert(role.clone(), RawTensor { shape, data });
            }
        }
        if let Some(Value::Object(m)) = obj.get("metadata") {
            f.metadata = m.clone();
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        StructureFile::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

fn read_count(obj: &Map<String, Value>, key: &str) -> Result<Option<usize>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|u| Some(u as usize))
            .ok_or_else(|| Error::SchemaMismatch(format!("`{key}` must be a non-negative integer"))),
    }
}

fn read_scalar(role: &str, v: &Value) -> Result<Rational> {
    let s = v.as_str().ok_or_else(|| Error::BadScalar {
        role: role.to_string(),
        message: format!("expected a \"p/q\" string, found {v}"),
    })?;
    s.parse().map_err(|e| Error::BadScalar { role: role.to_string(), message: format!("`{s}`: {e}") })
}

/// Flattens nested arrays, checking the nesting against `shape`.
fn read_tensor(role: &str, v: &Value, shape: &[usize]) -> Result<Vec<Rational>> {
    fn found_shape(v: &Value) -> Vec<usize> {
        let mut s = Vec::new();
        let mut cur = v;
        while let Value::Array(a) = cur {
            s.push(a.len());
            match a.first() {
                Some(x) => cur = x,
                None => break,
            }
        }
        s
    }
    fn walk(role: &str, v: &Value, shape: &[usize], out: &mut Vec<Rational>) -> std::result::Result<(), ()> {
        match shape.split_first() {
            None => {
                if v.is_array() {
                    return Err(());
                }
                out.push(read_scalar(role, v).map_err(|_| ())?);
                Ok(())
            }
            Some((&len, rest)) => {
                let a = v.as_array().ok_or(())?;
                if a.len() != len {
                    return Err(());
                }
                a.iter().try_for_each(|x| walk(role, x, rest, out))
            }
        }
    }
    let mut out = Vec::with_capacity(shape.iter().product());
    if walk(role, v, shape, &mut out).is_ok() {
        return Ok(out);
    }
    let found = found_shape(v);
    if found.as_slice() != shape {
        return Err(Error::ShapeError { role: role.to_string(), expected: shape_str(shape), found: shape_str(&found) });
    }
    // Right nesting, so the failure is a scalar or a ragged inner list.
    let mut probe = Vec::new();
    match first_bad_scalar(role, v, &mut probe) {
        Some(e) => Err(e),
        None => Err(Error::ShapeError {
            role: role.to_string(),
            expected: shape_str(shape),
            found: "ragged nesting".into(),
        }),
    }
}

fn first_bad_scalar(role: &str, v: &Value, idx: &mut Vec<usize>) -> Option<Error> {
    match v {
        Value::Array(a) => a.iter().enumerate().find_map(|(i, x)| {
            idx.push(i);
            let e = first_bad_scalar(role, x, idx);
            idx.pop();
            e
        }),
        _ => read_scalar(role, v).err().map(|e| match e {
            Error::BadScalar { role, message } => Error::BadScalar { role, message: format!("at {idx:?}: {message}") },
            other => other,
        }),
    }
}

fn nest(shape: &[usize], data: &[Rational]) -> Value {
    match shape.split_first() {
        None => Value::String(data[0].to_string()),
        Some((&len, rest)) => {
            let stride: usize = rest.iter().product();
            Value::Array((0..len).map(|i| nest(rest, &data[i * stride..(i + 1) * stride])).collect())
        }
    }
}

/// Pretty printer that keeps lists of scalars on one line.
fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(m) => {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String(k.clone()));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = a.iter().map(Value::to_string).collect();
            let _ = write!(out, "[{}]", items.join(", "));
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        other => out.push_str(&other.to_string()),
    }
}
