//! JSON lexicon files.
//!
//! See `docs/lexicon-format.md` for the schema. Loading checks every field
//! and reports problems with a path into the document, e.g.
//! `words.beer.data[1].count`.

use std::fs;
use std::path::Path;

use densem::compose::{Space, SpaceRegistry, VerbMatrix, WordMeaning};
use densem::density::pure;
use densem::lexicon::{build_from_subsets, Lexicon, SubsetRecord, VerbEntry};
use densem::pregroup::PregroupType;
use densem::specmat::SymMatrix;
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum LexError {
    #[error("cannot read `{file}`: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
    #[error("not valid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
}

type Res<T> = Result<T, LexError>;

fn schema<T>(path: &str, msg: impl Into<String>) -> Res<T> {
    Err(LexError::Schema {
        path: if path.is_empty() { "<root>".into() } else { path.into() },
        msg: msg.into(),
    })
}

fn key(path: &str, k: &str) -> String {
    if path.is_empty() {
        k.to_string()
    } else {
        format!("{path}.{k}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Res<&'a Map<String, Value>> {
    v.as_object().map_or_else(|| schema(path, "expected an object"), Ok)
}

fn array<'a>(v: &'a Value, path: &str) -> Res<&'a Vec<Value>> {
    v.as_array().map_or_else(|| schema(path, "expected an array"), Ok)
}

fn string<'a>(v: &'a Value, path: &str) -> Res<&'a str> {
    v.as_str().map_or_else(|| schema(path, "expected a string"), Ok)
}

fn number(v: &Value, path: &str) -> Res<f64> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => schema(path, "expected a finite number"),
    }
}

fn numbers(v: &Value, path: &str) -> Res<Vec<f64>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| number(x, &format!("{path}[{i}]")))
        .collect()
}

fn rows(v: &Value, path: &str) -> Res<Vec<Vec<f64>>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| numbers(r, &format!("{path}[{i}]")))
        .collect()
}

fn allow_keys(m: &Map<String, Value>, path: &str, allowed: &[&str]) -> Res<()> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => schema(&key(path, k), format!("unknown field (allowed: {})", allowed.join(", "))),
        None => Ok(()),
    }
}

fn field<'a>(m: &'a Map<String, Value>, path: &str, name: &str) -> Res<&'a Value> {
    m.get(name)
        .map_or_else(|| schema(path, format!("missing field `{name}`")), Ok)
}

fn domain<T>(path: &str, r: densem::Result<T>) -> Res<T> {
    r.or_else(|e| schema(path, e.to_string()))
}

/// Parses and validates a lexicon document.
pub fn from_str(text: &str) -> Res<Lexicon> {
    let doc: Value = serde_json::from_str(text)?;
    from_value(&doc)
}

pub fn from_value(doc: &Value) -> Res<Lexicon> {
    let root = object(doc, "")?;
    allow_keys(root, "", &["spaces", "words", "verbs"])?;

    let mut registry = SpaceRegistry::new();
    if let Some(spaces) = root.get("spaces") {
        for (name, v) in object(spaces, "spaces")? {
            let path = key("spaces", name);
            registry.insert(name.clone(), parse_space(v, &path)?);
        }
    }
    let mut lex = Lexicon::new(registry);

    if let Some(words) = root.get("words") {
        for (name, v) in object(words, "words")? {
            let path = key("words", name);
            let meaning = parse_word(name, v, &path, &lex.registry)?;
            domain(&path, lex.insert_word(meaning))?;
        }
    }
    if let Some(verbs) = root.get("verbs") {
        for (name, v) in object(verbs, "verbs")? {
            let path = key("verbs", name);
            let entry = parse_verb(v, &path, &lex.registry)?;
            domain(&path, lex.insert_verb(name, entry))?;
        }
    }
    Ok(lex)
}

fn parse_space(v: &Value, path: &str) -> Res<Space> {
    let m = object(v, path)?;
    allow_keys(m, path, &["dim", "labels"])?;
    let dim = match field(m, path, "dim")?.as_u64() {
        Some(d) if d > 0 => d as usize,
        _ => return schema(&key(path, "dim"), "expected a positive integer"),
    };
    let labels: Vec<String> = match m.get("labels") {
        None => (0..dim).map(|i| i.to_string()).collect(),
        Some(l) => {
            let lp = key(path, "labels");
            let labels = array(l, &lp)?
                .iter()
                .enumerate()
                .map(|(i, s)| string(s, &format!("{lp}[{i}]")).map(str::to_string))
                .collect::<Res<Vec<_>>>()?;
            if labels.len() != dim {
                return schema(&lp, format!("{} labels for dimension {dim}", labels.len()));
            }
            labels
        }
    };
    domain(path, Space::new(labels))
}

fn parse_word(name: &str, v: &Value, path: &str, reg: &SpaceRegistry) -> Res<WordMeaning> {
    let m = object(v, path)?;
    allow_keys(m, path, &["type", "kind", "data", "spaces"])?;
    let tpath = key(path, "type");
    let ptype: PregroupType = domain(&tpath, string(field(m, path, "type")?, &tpath)?.parse())?;
    if ptype.is_empty() {
        return schema(&tpath, "a word needs at least one simple type");
    }
    let spaces: Vec<String> = match m.get("spaces") {
        None => ptype.simples.iter().map(|s| s.base.clone()).collect(),
        Some(s) => {
            let sp = key(path, "spaces");
            let names = array(s, &sp)?
                .iter()
                .enumerate()
                .map(|(i, x)| string(x, &format!("{sp}[{i}]")).map(str::to_string))
                .collect::<Res<Vec<_>>>()?;
            if names.len() != ptype.len() {
                return schema(&sp, format!("{} spaces for {} wires", names.len(), ptype.len()));
            }
            names
        }
    };
    let mut dims = Vec::with_capacity(spaces.len());
    for (i, s) in spaces.iter().enumerate() {
        let at = if m.contains_key("spaces") {
            format!("{}[{i}]", key(path, "spaces"))
        } else {
            tpath.clone()
        };
        dims.push(domain(&at, reg.get(s))?.dim());
    }
    let total: usize = dims.iter().product();

    let kpath = key(path, "kind");
    let dpath = key(path, "data");
    let data = field(m, path, "data")?;
    let op = match string(field(m, path, "kind")?, &kpath)? {
        "pure" => {
            let v = match data {
                Value::Object(coords) if spaces.len() == 1 => {
                    let space = domain(&dpath, reg.get(&spaces[0]))?;
                    let mut v = vec![0.0; space.dim()];
                    for (label, c) in coords {
                        let i = domain(&key(&dpath, label), space.index_of(label))?;
                        v[i] += number(c, &key(&dpath, label))?;
                    }
                    v
                }
                _ => numbers(data, &dpath)?,
            };
            if v.len() != total {
                return schema(&dpath, format!("{} coordinates, wires need {total}", v.len()));
            }
            domain(&dpath, pure(&v))?.into_op()
        }
        "subsets" => {
            if spaces.len() != 1 {
                return schema(&kpath, "`subsets` words must have a single wire");
            }
            let space = domain(&dpath, reg.get(&spaces[0]))?;
            let mut records = Vec::new();
            for (i, r) in array(data, &dpath)?.iter().enumerate() {
                let rp = format!("{dpath}[{i}]");
                let rm = object(r, &rp)?;
                allow_keys(rm, &rp, &["features", "count"])?;
                let fp = key(&rp, "features");
                let features = array(field(rm, &rp, "features")?, &fp)?
                    .iter()
                    .enumerate()
                    .map(|(j, f)| {
                        let at = format!("{fp}[{j}]");
                        let label = string(f, &at)?;
                        domain(&at, space.index_of(label))?;
                        Ok(label.to_string())
                    })
                    .collect::<Res<Vec<_>>>()?;
                let count = number(field(rm, &rp, "count")?, &key(&rp, "count"))?;
                if count < 0.0 {
                    return schema(&key(&rp, "count"), "counts cannot be negative");
                }
                records.push(SubsetRecord::new(name, features, count));
            }
            if records.is_empty() {
                return schema(&dpath, "at least one record is required");
            }
            domain(&dpath, build_from_subsets(space, &records))?.into_op()
        }
        "matrix" => {
            let r = rows(data, &dpath)?;
            if r.len() != total || r.iter().any(|row| row.len() != total) {
                return schema(&dpath, format!("expected a {total}x{total} matrix"));
            }
            domain(&dpath, SymMatrix::from_rows(&r))?
        }
        other => return schema(&kpath, format!("unknown kind `{other}` (expected pure, subsets, or matrix)")),
    };
    domain(path, WordMeaning::with_spaces(name, ptype, spaces, op, reg))
}

fn parse_verb(v: &Value, path: &str, reg: &SpaceRegistry) -> Res<VerbEntry> {
    let m = object(v, path)?;
    allow_keys(m, path, &["subject_space", "object_space", "rows"])?;
    let space = |k: &str| -> Res<String> {
        let p = key(path, k);
        let s = string(field(m, path, k)?, &p)?;
        domain(&p, reg.get(s))?;
        Ok(s.to_string())
    };
    let subject_space = space("subject_space")?;
    let object_space = space("object_space")?;
    let rp = key(path, "rows");
    let table = domain(&rp, VerbMatrix::from_rows(&rows(field(m, path, "rows")?, &rp)?))?;
    Ok(VerbEntry {
        subject_space,
        object_space,
        table,
    })
}

pub fn load(file: impl AsRef<Path>) -> Res<Lexicon> {
    let file = file.as_ref();
    let text = fs::read_to_string(file).map_err(|source| LexError::Io {
        file: file.display().to_string(),
        source,
    })?;
    from_str(&text)
}

/// Every word is written as a `matrix`, so loading the result gives back
/// the same operators bit for bit.
pub fn to_value(lex: &Lexicon) -> Value {
    let spaces: Map<String, Value> = lex
        .registry
        .iter()
        .map(|(name, s)| (name.clone(), json!({ "dim": s.dim(), "labels": s.labels() })))
        .collect();
    let words: Map<String, Value> = lex
        .words()
        .map(|w| {
            let mut entry = json!({
                "type": w.ptype.to_string(),
                "kind": "matrix",
                "data": w.op().to_rows(),
            });
            let default: Vec<&str> = w.ptype.simples.iter().map(|s| s.base.as_str()).collect();
            if w.spaces != default {
                entry["spaces"] = json!(w.spaces);
            }
            (w.word.clone(), entry)
        })
        .collect();
    let verbs: Map<String, Value> = lex
        .verbs()
        .map(|(name, v)| {
            let entry = json!({
                "subject_space": v.subject_space,
                "object_space": v.object_space,
                "rows": v.table.to_rows(),
            });
            (name.clone(), entry)
        })
        .collect();
    json!({ "spaces": spaces, "words": words, "verbs": verbs })
}

/// Fails on non-finite entries, which JSON cannot represent.
pub fn to_string(lex: &Lexicon) -> Res<String> {
    for w in lex.words() {
        if w.op().as_slice().iter().any(|x| !x.is_finite()) {
            return schema(&key("words", &w.word), "non-finite entry");
        }
    }
    for (name, v) in lex.verbs() {
        if v.table.to_rows().iter().flatten().any(|x| !x.is_finite()) {
            return schema(&key("verbs", name), "non-finite entry");
        }
    }
    let mut s = serde_json::to_string_pretty(&to_value(lex))?;
    s.push('\n');
    Ok(s)
}

pub fn save(lex: &Lexicon, file: impl AsRef<Path>) -> Res<()> {
    let file = file.as_ref();
    fs::write(file, to_string(lex)?).map_err(|source| LexError::Io {
        file: file.display().to_string(),
        source,
    })
}
