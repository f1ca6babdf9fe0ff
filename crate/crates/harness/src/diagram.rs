//! Diagram files: a TOML document with named objects, named morphisms, a
//! shape and a role binding for each morphism slot of the shape.
//!
//! ```toml
//! backend = "fgab"
//! shape = "pair"
//!
//! [[objects]]
//! name = "X"
//! rank = 1
//! relations = [[2]]
//!
//! [[morphisms]]
//! name = "f"
//! dom = "X"
//! cod = "X"
//! matrix = [[1]]
//!
//! [bindings]
//! f = "f"
//! g = "f"
//! ```
//!
//! Abelian objects are `Z^rank` modulo the column span of `relations`
//! (`rank` rows); morphism matrices have one row per generator of the
//! codomain. Pointed-set objects are `{0, .., size-1}` with basepoint `0`
//! and morphisms are value tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use lambek_core::{
    Category, ChaseError, Fgab, FiveColumnDiagram, Group, GroupMap, Int, IntMatrix, PSetCategory, PSetMorphism,
    PSetObject, Square, TwoSquareDiagram,
};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LoadError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

fn invalid(msg: impl Into<String>) -> LoadError {
    LoadError::Validation(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Fgab,
    Pset,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Fgab => "fgab",
            Backend::Pset => "pset",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fgab" => Ok(Backend::Fgab),
            "pset" => Ok(Backend::Pset),
            _ => Err(format!("unknown backend '{s}' (expected fgab or pset)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Pair,
    Square,
    TwoSquare,
    FiveColumn,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Pair => "pair",
            Shape::Square => "square",
            Shape::TwoSquare => "two-square",
            Shape::FiveColumn => "five-column",
        }
    }

    /// Morphism roles, in file order.
    pub fn roles(self) -> &'static [&'static str] {
        match self {
            Shape::Pair => &["f", "g"],
            Shape::Square => &["f", "a", "b", "f'"],
            Shape::TwoSquare => &["f", "g", "f'", "g'", "a", "b", "c"],
            Shape::FiveColumn => &["f", "g", "h", "k", "f'", "g'", "h'", "k'", "a", "b", "c", "d", "e"],
        }
    }

    /// Object names by position, and the `(dom, cod)` positions of each role.
    fn layout(self) -> (&'static [&'static str], &'static [(usize, usize)]) {
        match self {
            Shape::Pair => (&["X", "Y", "Z"], &[(0, 1), (1, 2)]),
            Shape::Square => (&["A", "B", "C", "D"], &[(0, 1), (0, 2), (1, 3), (2, 3)]),
            Shape::TwoSquare => (
                &["A", "B", "C", "A'", "B'", "C'"],
                &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
            ),
            Shape::FiveColumn => (
                &["A", "B", "C", "D", "E", "A'", "B'", "C'", "D'", "E'"],
                &[
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (5, 6),
                    (6, 7),
                    (7, 8),
                    (8, 9),
                    (0, 5),
                    (1, 6),
                    (2, 7),
                    (3, 8),
                    (4, 9),
                ],
            ),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pair" => Ok(Shape::Pair),
            "square" => Ok(Shape::Square),
            "two-square" => Ok(Shape::TwoSquare),
            "five-column" => Ok(Shape::FiveColumn),
            _ => Err(format!("unknown shape '{s}' (expected pair, square, two-square or five-column)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub name: String,
    pub dom: String,
    pub cod: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub backend: Backend,
    pub shape: Shape,
    #[serde(default)]
    pub objects: Vec<ObjectEntry>,
    #[serde(default)]
    pub morphisms: Vec<MorphismEntry>,
    #[serde(default)]
    pub bindings: BTreeMap<String, String>,
}

/// A validated diagram of one shape.
#[derive(Clone, Debug)]
pub enum Payload<M> {
    Pair { f: M, g: M },
    Square(Square<M>),
    TwoSquare(TwoSquareDiagram<M>),
    FiveColumn(FiveColumnDiagram<M>),
}

impl<M: Clone> Payload<M> {
    pub fn shape(&self) -> Shape {
        match self {
            Payload::Pair { .. } => Shape::Pair,
            Payload::Square(_) => Shape::Square,
            Payload::TwoSquare(_) => Shape::TwoSquare,
            Payload::FiveColumn(_) => Shape::FiveColumn,
        }
    }

    /// Morphisms in the order of [`Shape::roles`].
    pub fn morphisms(&self) -> Vec<M> {
        match self {
            Payload::Pair { f, g } => vec![f.clone(), g.clone()],
            Payload::Square(s) => vec![s.top.clone(), s.left.clone(), s.right.clone(), s.bottom.clone()],
            Payload::TwoSquare(d) => {
                vec![d.f.clone(), d.g.clone(), d.fp.clone(), d.gp.clone(), d.a.clone(), d.b.clone(), d.c.clone()]
            }
            Payload::FiveColumn(d) => d.top.iter().chain(&d.bottom).chain(&d.verticals).cloned().collect(),
        }
    }

    /// Rebuilds a payload of `shape` from morphisms in role order, checking
    /// the commutativity and nullness constraints of the shape.
    pub fn assemble<C: Category<Mor = M> + ?Sized>(cat: &C, shape: Shape, ms: Vec<M>) -> Result<Self, LoadError> {
        let roles = shape.roles();
        if ms.len() != roles.len() {
            return Err(invalid(format!("shape {shape} needs {} morphisms, got {}", roles.len(), ms.len())));
        }
        let (names, ends) = shape.layout();
        let mut at: Vec<Option<(C::Obj, &str)>> = vec![None; names.len()];
        for (i, (d, c)) in ends.iter().enumerate() {
            for (pos, obj, end) in [(*d, cat.dom(&ms[i]), "domain"), (*c, cat.cod(&ms[i]), "codomain")] {
                match &at[pos] {
                    Some((o, who)) if *o != obj => {
                        return Err(invalid(format!(
                            "{end} of {} does not match object {} as fixed by {who}",
                            roles[i], names[pos]
                        )))
                    }
                    Some(_) => {}
                    None => at[pos] = Some((obj, roles[i])),
                }
            }
        }
        let mut it = ms.into_iter();
        let mut next = || it.next().expect("length checked");
        let result = match shape {
            Shape::Pair => {
                let (f, g) = (next(), next());
                let gf = cat.compose(&g, &f).map_err(chase_to_validation)?;
                if !cat.is_null(&gf) {
                    return Err(invalid("pair is not null: g∘f is not null"));
                }
                Ok(Payload::Pair { f, g })
            }
            Shape::Square => {
                let (top, left, right, bottom) = (next(), next(), next(), next());
                Square::new(cat, top, left, right, bottom)
                    .map_err(|e| match e {
                        ChaseError::NotCommutative(_) => ChaseError::NotCommutative("square S does not commute".into()),
                        other => other,
                    })
                    .map(Payload::Square)
            }
            Shape::TwoSquare => {
                let (f, g, fp, gp, a, b, c) = (next(), next(), next(), next(), next(), next(), next());
                TwoSquareDiagram::new(cat, f, g, fp, gp, a, b, c).map(Payload::TwoSquare)
            }
            Shape::FiveColumn => {
                let top = [next(), next(), next(), next()];
                let bottom = [next(), next(), next(), next()];
                let verticals = [next(), next(), next(), next(), next()];
                FiveColumnDiagram::new(cat, top, bottom, verticals).map(Payload::FiveColumn)
            }
        };
        result.map_err(chase_to_validation)
    }
}

fn chase_to_validation(e: ChaseError) -> LoadError {
    match e {
        ChaseError::NotCommutative(m) | ChaseError::NotNullRows(m) | ChaseError::NotComposable(m) => invalid(m),
        other => invalid(other.to_string()),
    }
}

#[derive(Clone, Debug)]
pub enum Diagram {
    Fgab(Payload<GroupMap>),
    Pset(Payload<PSetMorphism>),
}

impl Diagram {
    pub fn backend(&self) -> Backend {
        match self {
            Diagram::Fgab(_) => Backend::Fgab,
            Diagram::Pset(_) => Backend::Pset,
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            Diagram::Fgab(p) => p.shape(),
            Diagram::Pset(p) => p.shape(),
        }
    }
}

impl DiagramFile {
    pub fn from_toml(text: &str) -> Result<Self, LoadError> {
        toml::from_str(text).map_err(|e| LoadError::Parse(e.message().to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("diagram files always serialize")
    }

    /// Resolves names and checks every constraint of the declared shape.
    pub fn validate(&self) -> Result<Diagram, LoadError> {
        if self.objects.is_empty() {
            return Err(invalid("object list is empty"));
        }
        let mut seen = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if seen.insert(o.name.as_str(), i).is_some() {
                return Err(invalid(format!("object '{}' is declared twice", o.name)));
            }
        }
        let mut morphism_index = HashMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if morphism_index.insert(m.name.as_str(), i).is_some() {
                return Err(invalid(format!("morphism '{}' is declared twice", m.name)));
            }
            for end in [&m.dom, &m.cod] {
                if !seen.contains_key(end.as_str()) {
                    return Err(invalid(format!("morphism '{}' refers to unknown object '{end}'", m.name)));
                }
            }
        }
        let roles = self.shape.roles();
        for role in self.bindings.keys() {
            if !roles.contains(&role.as_str()) {
                return Err(invalid(format!("role '{role}' does not belong to shape {}", self.shape)));
            }
        }
        let mut bound = Vec::with_capacity(roles.len());
        for role in roles {
            let name = self
                .bindings
                .get(*role)
                .ok_or_else(|| invalid(format!("role '{role}' is not bound")))?;
            let idx = *morphism_index
                .get(name.as_str())
                .ok_or_else(|| invalid(format!("role '{role}' is bound to unknown morphism '{name}'")))?;
            bound.push(idx);
        }
        match self.backend {
            Backend::Fgab => {
                let objects = self.fgab_objects()?;
                let ms = bound
                    .iter()
                    .map(|&i| self.fgab_morphism(&self.morphisms[i], &objects))
                    .collect::<Result<Vec<_>, _>>()?;
                Payload::assemble(&Fgab::new(), self.shape, ms).map(Diagram::Fgab)
            }
            Backend::Pset => {
                let objects = self.pset_objects()?;
                let ms = bound
                    .iter()
                    .map(|&i| pset_morphism(&self.morphisms[i], &objects))
                    .collect::<Result<Vec<_>, _>>()?;
                Payload::assemble(&PSetCategory::new(), self.shape, ms).map(Diagram::Pset)
            }
        }
    }

    fn fgab_objects(&self) -> Result<HashMap<String, Group>, LoadError> {
        let mut out = HashMap::new();
        for o in &self.objects {
            if o.size.is_some() {
                return Err(invalid(format!("object '{}': 'size' belongs to pointed sets", o.name)));
            }
            let rank = o.rank.ok_or_else(|| invalid(format!("object '{}' has no rank", o.name)))?;
            let rows = o.relations.clone().unwrap_or_else(|| vec![Vec::new(); rank]);
            if rows.len() != rank {
                return Err(invalid(format!(
                    "object '{}': relation matrix has {} rows, expected {rank}",
                    o.name,
                    rows.len()
                )));
            }
            let cols = rows.first().map_or(0, Vec::len);
            let m = int_matrix(rows, cols).ok_or_else(|| invalid(format!("object '{}': ragged relation matrix", o.name)))?;
            let g = Group::new(rank, &m).map_err(|e| invalid(format!("object '{}': {e}", o.name)))?;
            out.insert(o.name.clone(), g);
        }
        Ok(out)
    }

    fn fgab_morphism(&self, m: &MorphismEntry, objects: &HashMap<String, Group>) -> Result<GroupMap, LoadError> {
        if m.table.is_some() {
            return Err(invalid(format!("morphism '{}': 'table' belongs to pointed sets", m.name)));
        }
        let (dom, cod) = (&objects[&m.dom], &objects[&m.cod]);
        let rows = m.matrix.clone().ok_or_else(|| invalid(format!("morphism '{}' has no matrix", m.name)))?;
        if rows.len() != cod.rank() {
            return Err(invalid(format!(
                "morphism '{}': matrix has {} rows, codomain has rank {}",
                m.name,
                rows.len(),
                cod.rank()
            )));
        }
        let matrix = int_matrix(rows, dom.rank()).ok_or_else(|| {
            invalid(format!("morphism '{}': every matrix row needs {} entries", m.name, dom.rank()))
        })?;
        GroupMap::new(dom.clone(), cod.clone(), matrix).map_err(|e| invalid(format!("morphism '{}': {e}", m.name)))
    }

    fn pset_objects(&self) -> Result<HashMap<String, PSetObject>, LoadError> {
        let mut out = HashMap::new();
        for o in &self.objects {
            if o.rank.is_some() || o.relations.is_some() {
                return Err(invalid(format!("object '{}': rank and relations belong to abelian groups", o.name)));
            }
            let size = o.size.ok_or_else(|| invalid(format!("object '{}' has no size", o.name)))?;
            let x = PSetObject::new(size).map_err(|e| invalid(format!("object '{}': {e}", o.name)))?;
            out.insert(o.name.clone(), x);
        }
        Ok(out)
    }

    /// Canonical file for a validated diagram: objects are named by their
    /// position in the shape and morphisms by their role.
    pub fn from_diagram(d: &Diagram) -> Self {
        match d {
            Diagram::Fgab(p) => {
                let cat = Fgab::new();
                build_file(&cat, Backend::Fgab, p, fgab_object_entry, |m| MorphismEntry {
                    name: String::new(),
                    dom: String::new(),
                    cod: String::new(),
                    matrix: Some(matrix_rows(m.matrix())),
                    table: None,
                })
            }
            Diagram::Pset(p) => {
                let cat = PSetCategory::new();
                build_file(
                    &cat,
                    Backend::Pset,
                    p,
                    |name, x: &PSetObject| ObjectEntry { name, rank: None, relations: None, size: Some(x.size()) },
                    |m| MorphismEntry {
                        name: String::new(),
                        dom: String::new(),
                        cod: String::new(),
                        matrix: None,
                        table: Some(m.table().to_vec()),
                    },
                )
            }
        }
    }
}

fn pset_morphism(m: &MorphismEntry, objects: &HashMap<String, PSetObject>) -> Result<PSetMorphism, LoadError> {
    if m.matrix.is_some() {
        return Err(invalid(format!("morphism '{}': 'matrix' belongs to abelian groups", m.name)));
    }
    let table = m.table.clone().ok_or_else(|| invalid(format!("morphism '{}' has no table", m.name)))?;
    PSetMorphism::new(objects[&m.dom], objects[&m.cod], table).map_err(|e| invalid(format!("morphism '{}': {e}", m.name)))
}

fn build_file<C: Category + ?Sized>(
    cat: &C,
    backend: Backend,
    p: &Payload<C::Mor>,
    object_entry: impl Fn(String, &C::Obj) -> ObjectEntry,
    morphism_entry: impl Fn(&C::Mor) -> MorphismEntry,
) -> DiagramFile {
    let shape = p.shape();
    let (names, ends) = shape.layout();
    let ms = p.morphisms();
    let mut objects: Vec<Option<ObjectEntry>> = vec![None; names.len()];
    for (m, (d, c)) in ms.iter().zip(ends) {
        objects[*d].get_or_insert_with(|| object_entry(names[*d].to_string(), &cat.dom(m)));
        objects[*c].get_or_insert_with(|| object_entry(names[*c].to_string(), &cat.cod(m)));
    }
    let mut morphisms = Vec::new();
    let mut bindings = BTreeMap::new();
    for ((m, role), (d, c)) in ms.iter().zip(shape.roles()).zip(ends) {
        let mut e = morphism_entry(m);
        e.name = role.to_string();
        e.dom = names[*d].to_string();
        e.cod = names[*c].to_string();
        morphisms.push(e);
        bindings.insert(role.to_string(), role.to_string());
    }
    DiagramFile { backend, shape, objects: objects.into_iter().flatten().collect(), morphisms, bindings }
}

fn fgab_object_entry(name: String, g: &Group) -> ObjectEntry {
    ObjectEntry { name, rank: Some(g.rank()), relations: Some(matrix_rows(g.relations().basis())), size: None }
}

fn int_matrix(rows: Vec<Vec<i64>>, cols: usize) -> Option<IntMatrix> {
    let rows = rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect();
    IntMatrix::from_rows(rows, cols)
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_vecs()
        .into_iter()
        .map(|r| r.iter().map(|v| v.to_i64().expect("matrix entry fits in 64 bits")).collect())
        .collect()
}

pub fn load_diagram(path: &Path) -> Result<(DiagramFile, Diagram), LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let file = DiagramFile::from_toml(&text)?;
    let diagram = file.validate()?;
    Ok((file, diagram))
}

pub fn save_diagram(file: &DiagramFile, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, file.to_toml())
}
