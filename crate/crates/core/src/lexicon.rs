//! Word and verb representations estimated from aggregated counts.
//!
//! Non-atomic words are built from feature-subset records: each record says
//! a word co-occurred `count` times with exactly the basis vectors in `B`,
//! and contributes `count · |ψ_B⟩⟨ψ_B|` with `ψ_B = Σ_{b ∈ B} |b⟩`.
//! Verb tables are sums of `count · subj ⊗ obj` over observed pairs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::compose::{Space, SpaceRegistry, VerbMatrix, WordMeaning};
use crate::density::{mixture, normalize, DensityMatrix};
use crate::specmat::SymMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetRecord {
    pub word: String,
    pub features: BTreeSet<String>,
    pub count: f64,
}

impl SubsetRecord {
    pub fn new<S: Into<String>>(word: &str, features: impl IntoIterator<Item = S>, count: f64) -> Self {
        SubsetRecord {
            word: word.to_string(),
            features: features.into_iter().map(Into::into).collect(),
            count,
        }
    }
}

/// Coordinates keyed by basis label.
pub type LabeledVector = Vec<(String, f64)>;

#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    pub verb: String,
    pub subj: LabeledVector,
    pub obj: LabeledVector,
    pub count: f64,
}

fn single_word<'a>(mut words: impl Iterator<Item = &'a String>) -> Result<&'a String> {
    let first = words.next().ok_or(Error::Degenerate("no records"))?;
    if let Some(other) = words.find(|w| *w != first) {
        return Err(Error::InvalidArgument(alloc::format!(
            "records mix `{first}` and `{other}`"
        )));
    }
    Ok(first)
}

fn check_count(count: f64) -> Result<()> {
    if !(count > 0.0 && count.is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!("count {count} is not positive")));
    }
    Ok(())
}

/// `Σ count · |ψ_B⟩⟨ψ_B|` over the records of one word.
pub fn build_from_subsets(space: &Space, records: &[SubsetRecord]) -> Result<DensityMatrix> {
    single_word(records.iter().map(|r| &r.word))?;
    let mut acc = SymMatrix::zeros(space.dim());
    for r in records {
        check_count(r.count)?;
        if r.features.is_empty() {
            return Err(Error::InvalidArgument(alloc::format!(
                "`{}` has a record with no features",
                r.word
            )));
        }
        let psi = space.vector(r.features.iter().map(|f| (f.as_str(), 1.0)))?;
        acc = acc.add_scaled(r.count, &SymMatrix::outer(&psi))?;
    }
    DensityMatrix::new(acc)
}

/// Weighted mixture of normalized child meanings, e.g. `beer = lager + ale`.
pub fn taxonomy_mix(children: &[(&str, f64)], lex: &Lexicon) -> Result<DensityMatrix> {
    let parts = children
        .iter()
        .map(|(w, _)| lex.word(w).and_then(WordMeaning::density).and_then(|d| normalize(&d)))
        .collect::<Result<Vec<_>>>()?;
    let weights: Vec<f64> = children.iter().map(|(_, w)| *w).collect();
    mixture(&weights, &parts)
}

/// `Σ count · subj ⊗ obj` as a subject-by-object table.
pub fn build_verb_from_pairs(records: &[PairRecord], subj_space: &Space, obj_space: &Space) -> Result<VerbMatrix> {
    single_word(records.iter().map(|r| &r.verb))?;
    let mut table = VerbMatrix::zeros(subj_space.dim(), obj_space.dim());
    for r in records {
        check_count(r.count)?;
        let s = subj_space.vector(r.subj.iter().map(|(l, c)| (l.as_str(), *c)))?;
        let o = obj_space.vector(r.obj.iter().map(|(l, c)| (l.as_str(), *c)))?;
        for (i, si) in s.iter().enumerate().filter(|(_, x)| **x != 0.0) {
            for (j, oj) in o.iter().enumerate() {
                table.add(i, j, r.count * si * oj);
            }
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerbEntry {
    pub subject_space: String,
    pub object_space: String,
    pub table: VerbMatrix,
}

/// Typed word meanings and verb tables over a set of named spaces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lexicon {
    pub registry: SpaceRegistry,
    words: BTreeMap<String, WordMeaning>,
    verbs: BTreeMap<String, VerbEntry>,
}

impl Lexicon {
    pub fn new(registry: SpaceRegistry) -> Self {
        Lexicon {
            registry,
            ..Default::default()
        }
    }

    /// Adds a word after checking its wires against the registry.
    pub fn insert_word(&mut self, meaning: WordMeaning) -> Result<()> {
        for (space, dim) in meaning.spaces.iter().zip(&meaning.wire_dims) {
            let have = self.registry.get(space)?.dim();
            if have != *dim {
                return Err(Error::Registry(alloc::format!(
                    "`{}` uses space `{space}` with dimension {dim}, registered as {have}",
                    meaning.word
                )));
            }
        }
        self.words.insert(meaning.word.clone(), meaning);
        Ok(())
    }

    pub fn insert_verb(&mut self, name: &str, entry: VerbEntry) -> Result<()> {
        let rows = self.registry.get(&entry.subject_space)?.dim();
        let cols = self.registry.get(&entry.object_space)?.dim();
        if (rows, cols) != (entry.table.rows(), entry.table.cols()) {
            return Err(Error::Registry(alloc::format!(
                "verb `{name}` table is {}x{}, spaces give {rows}x{cols}",
                entry.table.rows(),
                entry.table.cols()
            )));
        }
        self.verbs.insert(name.to_string(), entry);
        Ok(())
    }

    pub fn word(&self, name: &str) -> Result<&WordMeaning> {
        self.words.get(name).ok_or_else(|| Error::Lookup(name.to_string()))
    }

    pub fn verb(&self, name: &str) -> Result<&VerbEntry> {
        self.verbs.get(name).ok_or_else(|| Error::Lookup(name.to_string()))
    }

    pub fn words(&self) -> impl Iterator<Item = &WordMeaning> {
        self.words.values()
    }

    pub fn verbs(&self) -> impl Iterator<Item = (&String, &VerbEntry)> {
        self.verbs.iter()
    }
}
