//! JSON document formats for quantaloids, categories, functors,
//! distributors and presheaves, plus the report envelope used by the CLI.
//!
//! Dumps are deterministic: object keys are sorted and list entries follow
//! carrier order, so identical inputs serialize to identical bytes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::category::{QCategory, QFunctor};
use crate::distributor::QDistributor;
use crate::error::ValidationError;
use crate::lattice::FiniteLattice;
use crate::presheaf::Presheaf;
use crate::quantaloid::Quantaloid;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::Parse(e.to_string()))
}

#[derive(Deserialize)]
struct HomDoc {
    carrier: Vec<String>,
    leq: Vec<(String, String)>,
}

#[derive(Deserialize)]
struct QuantaloidDoc {
    objects: Vec<String>,
    homs: BTreeMap<String, HomDoc>,
    compose: BTreeMap<String, Vec<(String, String, String)>>,
    identity: BTreeMap<String, String>,
}

/// Reflexive-transitive closure, so documents may list either generators
/// or the full relation.
fn closed_lattice(doc: &HomDoc) -> Result<FiniteLattice, DocError> {
    let n = doc.carrier.len();
    if n == 0 {
        return Err(ValidationError::EmptyCarrier.into());
    }
    let idx = |s: &str| {
        doc.carrier
            .iter()
            .position(|c| c == s)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(s.to_string())))
    };
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    for (a, b) in &doc.leq {
        leq[idx(a)?][idx(b)?] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                leq[i][j] |= leq[i][k] && leq[k][j];
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                pairs.push((doc.carrier[i].clone(), doc.carrier[j].clone()));
            }
        }
    }
    Ok(FiniteLattice::validate(doc.carrier.clone(), &pairs)?)
}

pub fn load_quantaloid(text: &str) -> Result<Quantaloid, DocError> {
    let doc: QuantaloidDoc = parse(text)?;
    let n = doc.objects.len();
    let obj = |s: &str| {
        doc.objects
            .iter()
            .position(|o| o == s)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(s.to_string())))
    };
    let mut homs: Vec<Vec<FiniteLattice>> = Vec::with_capacity(n);
    for p in 0..n {
        let mut row = Vec::with_capacity(n);
        for q in 0..n {
            let key = format!("{}|{}", doc.objects[p], doc.objects[q]);
            let hd = doc.homs.get(&key).ok_or_else(|| {
                DocError::Validation(ValidationError::PartialTable(format!("missing hom `{key}`")))
            })?;
            row.push(closed_lattice(hd)?);
        }
        homs.push(row);
    }
    let mut comp = vec![vec![vec![Vec::new(); n]; n]; n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let key = format!("{}|{}|{}", doc.objects[p], doc.objects[q], doc.objects[r]);
                let entries = doc.compose.get(&key).ok_or_else(|| {
                    DocError::Validation(ValidationError::PartialTable(format!(
                        "missing compose table `{key}`"
                    )))
                })?;
                let nb = homs[q][r].len();
                let na = homs[p][q].len();
                let mut table = vec![vec![usize::MAX; na]; nb];
                for (b, a, res) in entries {
                    let bi = homs[q][r].index_of(b).ok_or_else(|| {
                        DocError::Validation(ValidationError::ForeignElement(b.clone()))
                    })?;
                    let ai = homs[p][q].index_of(a).ok_or_else(|| {
                        DocError::Validation(ValidationError::ForeignElement(a.clone()))
                    })?;
                    let ri = homs[p][r].index_of(res).ok_or_else(|| {
                        DocError::Validation(ValidationError::ForeignElement(res.clone()))
                    })?;
                    table[bi][ai] = ri;
                }
                if table.iter().any(|row| row.contains(&usize::MAX)) {
                    return Err(ValidationError::PartialTable(format!(
                        "compose table `{key}` misses entries"
                    ))
                    .into());
                }
                comp[p][q][r] = table;
            }
        }
    }
    let mut identity = vec![usize::MAX; n];
    for (q, e) in &doc.identity {
        let qi = obj(q)?;
        identity[qi] = homs[qi][qi]
            .index_of(e)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(e.clone())))?;
    }
    if identity.contains(&usize::MAX) {
        return Err(ValidationError::PartialTable("identity table misses objects".into()).into());
    }
    Ok(Quantaloid::validate(doc.objects, homs, comp, identity)?)
}

pub fn dump_quantaloid(q: &Quantaloid) -> Value {
    let objects = q.objects();
    let mut homs = serde_json::Map::new();
    let mut compose = serde_json::Map::new();
    let mut identity = serde_json::Map::new();
    for (p, po) in objects.iter().enumerate() {
        for (r, ro) in objects.iter().enumerate() {
            let h = q.hom(p, r);
            let mut leq = Vec::new();
            for a in 0..h.len() {
                for b in 0..h.len() {
                    if h.leq(a, b) {
                        leq.push(json!([h.id(a), h.id(b)]));
                    }
                }
            }
            homs.insert(
                format!("{po}|{ro}"),
                json!({"carrier": h.ids(), "leq": leq}),
            );
        }
    }
    for (p, po) in objects.iter().enumerate() {
        for (m, mo) in objects.iter().enumerate() {
            for (r, ro) in objects.iter().enumerate() {
                let mut entries = Vec::new();
                for b in 0..q.hom(m, r).len() {
                    for a in 0..q.hom(p, m).len() {
                        entries.push(json!([
                            q.hom(m, r).id(b),
                            q.hom(p, m).id(a),
                            q.hom(p, r).id(q.compose(p, m, r, b, a)),
                        ]));
                    }
                }
                compose.insert(format!("{po}|{mo}|{ro}"), Value::Array(entries));
            }
        }
    }
    for (p, po) in objects.iter().enumerate() {
        identity.insert(po.clone(), json!(q.hom(p, p).id(q.identity(p))));
    }
    json!({"objects": objects, "homs": homs, "compose": compose, "identity": identity})
}

#[derive(Deserialize)]
struct ElementDoc {
    id: String,
    #[serde(rename = "type")]
    typ: String,
}

#[derive(Deserialize)]
struct CategoryDoc {
    elements: Vec<ElementDoc>,
    hom: Vec<(String, String, String)>,
}

pub fn load_category(text: &str, ambient: Arc<Quantaloid>) -> Result<QCategory, DocError> {
    let doc: CategoryDoc = parse(text)?;
    let ids: Vec<String> = doc.elements.iter().map(|e| e.id.clone()).collect();
    let mut typ = Vec::with_capacity(ids.len());
    for e in &doc.elements {
        typ.push(ambient.object_index(&e.typ).ok_or_else(|| {
            DocError::Validation(ValidationError::TypeMismatch(format!(
                "element `{}` has unknown type `{}`",
                e.id, e.typ
            )))
        })?);
    }
    let n = ids.len();
    let elem = |s: &str| {
        ids.iter()
            .position(|i| i == s)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(s.to_string())))
    };
    let mut hom = vec![vec![usize::MAX; n]; n];
    for (a, b, v) in &doc.hom {
        let ai = elem(a)?;
        let bi = elem(b)?;
        hom[ai][bi] = ambient
            .hom(typ[ai], typ[bi])
            .index_of(v)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(v.clone())))?;
    }
    if hom.iter().any(|row| row.contains(&usize::MAX)) {
        return Err(ValidationError::PartialTable("hom table must be total".into()).into());
    }
    Ok(QCategory::validate(ambient, ids, typ, hom)?)
}

pub fn dump_category(cat: &QCategory) -> Value {
    let q = cat.ambient();
    let elements: Vec<Value> = (0..cat.len())
        .map(|x| json!({"id": cat.id(x), "type": q.objects()[cat.typ(x)]}))
        .collect();
    let mut hom = Vec::new();
    for a in 0..cat.len() {
        for b in 0..cat.len() {
            hom.push(json!([
                cat.id(a),
                cat.id(b),
                q.hom(cat.typ(a), cat.typ(b)).id(cat.hom(a, b)),
            ]));
        }
    }
    json!({"elements": elements, "hom": hom})
}

#[derive(Deserialize)]
struct FunctorDoc {
    map: BTreeMap<String, String>,
}

pub fn load_functor(
    text: &str,
    dom: Arc<QCategory>,
    cod: Arc<QCategory>,
) -> Result<QFunctor, DocError> {
    let doc: FunctorDoc = parse(text)?;
    let mut map = vec![usize::MAX; dom.len()];
    for (a, b) in &doc.map {
        let ai = dom
            .index_of(a)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(a.clone())))?;
        map[ai] = cod
            .index_of(b)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(b.clone())))?;
    }
    if map.contains(&usize::MAX) {
        return Err(ValidationError::PartialTable("functor map must be total".into()).into());
    }
    Ok(QFunctor::validate(dom, cod, map)?)
}

pub fn dump_functor(f: &QFunctor) -> Value {
    let mut map = serde_json::Map::new();
    for a in 0..f.dom().len() {
        map.insert(f.dom().id(a).to_string(), json!(f.cod().id(f.apply(a))));
    }
    json!({"map": map})
}

#[derive(Deserialize)]
struct DistributorDoc {
    matrix: Vec<(String, String, String)>,
}

pub fn load_distributor(
    text: &str,
    dom: Arc<QCategory>,
    cod: Arc<QCategory>,
) -> Result<QDistributor, DocError> {
    let doc: DistributorDoc = parse(text)?;
    let q = dom.ambient().clone();
    let mut matrix = vec![vec![usize::MAX; cod.len()]; dom.len()];
    for (x, y, v) in &doc.matrix {
        let xi = dom
            .index_of(x)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(x.clone())))?;
        let yi = cod
            .index_of(y)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(y.clone())))?;
        matrix[xi][yi] = q
            .hom(dom.typ(xi), cod.typ(yi))
            .index_of(v)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(v.clone())))?;
    }
    if matrix.iter().any(|row| row.contains(&usize::MAX)) {
        return Err(ValidationError::PartialTable("distributor matrix must be total".into()).into());
    }
    Ok(QDistributor::validate(dom, cod, matrix)?)
}

pub fn dump_distributor(phi: &QDistributor) -> Value {
    let q = phi.dom().ambient();
    let mut matrix = Vec::new();
    for x in 0..phi.dom().len() {
        for y in 0..phi.cod().len() {
            matrix.push(json!([
                phi.dom().id(x),
                phi.cod().id(y),
                q.hom(phi.dom().typ(x), phi.cod().typ(y)).id(phi.at(x, y)),
            ]));
        }
    }
    json!({"matrix": matrix})
}

#[derive(Deserialize)]
struct PresheafDoc {
    #[serde(rename = "type")]
    typ: String,
    values: BTreeMap<String, String>,
}

pub fn load_presheaf(text: &str, base: &QCategory) -> Result<Presheaf, DocError> {
    let doc: PresheafDoc = parse(text)?;
    let q = base.ambient();
    let typ = q.object_index(&doc.typ).ok_or_else(|| {
        DocError::Validation(ValidationError::TypeMismatch(format!(
            "unknown type `{}`",
            doc.typ
        )))
    })?;
    let mut values = vec![usize::MAX; base.len()];
    for (x, v) in &doc.values {
        let xi = base
            .index_of(x)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(x.clone())))?;
        values[xi] = q
            .hom(base.typ(xi), typ)
            .index_of(v)
            .ok_or_else(|| DocError::Validation(ValidationError::ForeignElement(v.clone())))?;
    }
    if values.contains(&usize::MAX) {
        return Err(ValidationError::PartialTable("presheaf values must be total".into()).into());
    }
    Ok(Presheaf::validate(base, typ, values)?)
}

pub fn dump_presheaf(base: &QCategory, mu: &Presheaf) -> Value {
    let q = base.ambient();
    let mut values = serde_json::Map::new();
    for x in 0..base.len() {
        values.insert(
            base.id(x).to_string(),
            json!(q.hom(base.typ(x), mu.typ).id(mu.values[x])),
        );
    }
    json!({"type": q.objects()[mu.typ], "values": values})
}

/// Machine- and human-readable result envelope. The JSON rendering is
/// deterministic (sorted keys, no timing); timing belongs only to the
/// human rendering produced by the caller.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub verdict: Option<bool>,
    pub witnesses: Vec<String>,
    pub disclosures: Vec<String>,
    pub data: Value,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            verdict: None,
            witnesses: Vec::new(),
            disclosures: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "schema": 1,
            "command": self.command,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "disclosures": self.disclosures,
            "data": self.data,
        });
        serde_json::to_string_pretty(&v).expect("report serialization cannot fail")
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command    {}\n", self.command));
        match self.verdict {
            Some(true) => out.push_str("verdict    PASS\n"),
            Some(false) => out.push_str("verdict    FAIL\n"),
            None => out.push_str("verdict    (none)\n"),
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness    {w}\n"));
        }
        for d in &self.disclosures {
            out.push_str(&format!("disclosed  {d}\n"));
        }
        if self.data != Value::Null {
            out.push_str(&format!(
                "data       {}\n",
                serde_json::to_string(&self.data).unwrap()
            ));
        }
        out
    }
}
