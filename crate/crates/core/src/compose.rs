//! From word operators to sentence operators.
//!
//! A [`WordMeaning`] is an operator on the tensor product of one space per
//! simple type of its pregroup type. Index layout is row-major over the
//! wires, so for wires `(a, b, c)` with dims `(da, db, dc)` the flat index is
//! `(a * db + b) * dc + c`.
//!
//! [`compose`] applies the doubled cups of a [`ReductionDiagram`]: every
//! link `(p, q)` identifies the row index of wire `p` with the row index of
//! wire `q`, and likewise for the column indices, and sums. Residual wires
//! become the wires of the result. Left and right cups are numerically the
//! same map; only the pregroup layer cares about word order.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::density::DensityMatrix;
use crate::pregroup::{PregroupType, ReductionDiagram};
use crate::specmat::SymMatrix;
use crate::{Error, Result};

/// A finite-dimensional meaning space with named basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    labels: Vec<String>,
}

impl Space {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Registry("a space needs at least one basis vector".to_string()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Registry(alloc::format!("duplicate basis label `{l}`")));
            }
        }
        Ok(Space { labels })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Registry(alloc::format!("unknown basis label `{label}`")))
    }

    pub fn basis(&self, label: &str) -> Result<Vec<f64>> {
        let mut v = vec![0.0; self.dim()];
        v[self.index_of(label)?] = 1.0;
        Ok(v)
    }

    /// Dense coordinates of `Σ cᵢ |labelᵢ⟩`; repeated labels add.
    pub fn vector<'a>(&self, coords: impl IntoIterator<Item = (&'a str, f64)>) -> Result<Vec<f64>> {
        let mut v = vec![0.0; self.dim()];
        for (label, c) in coords {
            v[self.index_of(label)?] += c;
        }
        Ok(v)
    }
}

/// Named meaning spaces. By default a basic type `n` lives in the space
/// named `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpaceRegistry {
    spaces: BTreeMap<String, Space>,
}

impl SpaceRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, space: Space) -> Option<Space> {
        self.spaces.insert(name.into(), space)
    }

    pub fn with(mut self, name: impl Into<String>, space: Space) -> Self {
        self.insert(name, space);
        self
    }

    pub fn get(&self, name: &str) -> Result<&Space> {
        self.spaces
            .get(name)
            .ok_or_else(|| Error::Registry(alloc::format!("no space named `{name}`")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Space)> {
        self.spaces.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }
}

/// A word's operator together with its grammatical type and wire layout.
#[derive(Debug, Clone, PartialEq)]
pub struct WordMeaning {
    pub word: String,
    pub ptype: PregroupType,
    /// Space name per wire.
    pub spaces: Vec<String>,
    pub wire_dims: Vec<usize>,
    op: SymMatrix,
}

impl WordMeaning {
    /// Wires live in the spaces named after their atoms.
    pub fn new(word: impl Into<String>, ptype: PregroupType, op: SymMatrix, registry: &SpaceRegistry) -> Result<Self> {
        let spaces = ptype.simples.iter().map(|s| s.base.clone()).collect();
        Self::with_spaces(word, ptype, spaces, op, registry)
    }

    /// Explicit space per wire, for words whose wires use a space other than
    /// their atom's.
    pub fn with_spaces(
        word: impl Into<String>,
        ptype: PregroupType,
        spaces: Vec<String>,
        op: SymMatrix,
        registry: &SpaceRegistry,
    ) -> Result<Self> {
        let dims = spaces
            .iter()
            .map(|s| registry.get(s).map(Space::dim))
            .collect::<Result<Vec<_>>>()?;
        let mut w = Self::from_dims(word, ptype, dims, op)?;
        w.spaces = spaces;
        Ok(w)
    }

    /// Without a registry; spaces are named after the atoms.
    pub fn from_dims(word: impl Into<String>, ptype: PregroupType, wire_dims: Vec<usize>, op: SymMatrix) -> Result<Self> {
        let word = word.into();
        if wire_dims.len() != ptype.len() {
            return Err(Error::Shape(alloc::format!(
                "`{word}` has {} wires for type `{ptype}`",
                wire_dims.len()
            )));
        }
        if wire_dims.contains(&0) {
            return Err(Error::Shape(alloc::format!("`{word}` has a zero-dimensional wire")));
        }
        let total: usize = wire_dims.iter().product();
        if total != op.dim() {
            return Err(Error::Shape(alloc::format!(
                "`{word}`: operator is {0}x{0} but wires {wire_dims:?} need {total}",
                op.dim()
            )));
        }
        Ok(WordMeaning {
            spaces: ptype.simples.iter().map(|s| s.base.clone()).collect(),
            word,
            ptype,
            wire_dims,
            op,
        })
    }

    pub fn op(&self) -> &SymMatrix {
        &self.op
    }

    /// The operator as a validated density matrix.
    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.op.clone())
    }
}

/// Contracts word operators along a reduction diagram.
///
/// The result is typed by `diagram.target`, carries the residual wires in
/// order, and is not normalized.
pub fn compose(words: &[WordMeaning], diagram: &ReductionDiagram) -> Result<WordMeaning> {
    let source = PregroupType::concat(words.iter().map(|w| &w.ptype));
    if source != diagram.source {
        return Err(Error::Shape(alloc::format!(
            "words have type `{source}` but the diagram reduces `{}`",
            diagram.source
        )));
    }
    diagram.validate()?;

    let dims: Vec<usize> = words.iter().flat_map(|w| w.wire_dims.iter().copied()).collect();
    let spaces: Vec<&String> = words.iter().flat_map(|w| w.spaces.iter()).collect();
    for &(p, q) in &diagram.links {
        if dims[p] != dims[q] {
            return Err(Error::Shape(alloc::format!(
                "link ({p}, {q}) joins wires of dimension {} and {}",
                dims[p],
                dims[q]
            )));
        }
    }

    // (word, wire offset) per word
    let mut offsets = Vec::with_capacity(words.len());
    let mut off = 0;
    for w in words {
        offsets.push(off);
        off += w.ptype.len();
    }

    let out_dims: Vec<usize> = diagram.residuals.iter().map(|&r| dims[r]).collect();
    let out_dim: usize = out_dims.iter().product();
    let link_dims: Vec<usize> = diagram.links.iter().map(|&(p, _)| dims[p]).collect();
    let link_total: usize = link_dims.iter().product();

    let mut rows = vec![0usize; dims.len()];
    let mut cols = vec![0usize; dims.len()];
    let mut data = vec![0.0; out_dim * out_dim];
    for r_out in 0..out_dim {
        assign(&mut rows, &diagram.residuals, &out_dims, r_out);
        for c_out in r_out..out_dim {
            assign(&mut cols, &diagram.residuals, &out_dims, c_out);
            let mut acc = 0.0;
            for r_link in 0..link_total {
                assign_links(&mut rows, &diagram.links, &link_dims, r_link);
                for c_link in 0..link_total {
                    assign_links(&mut cols, &diagram.links, &link_dims, c_link);
                    let mut prod = 1.0;
                    for (w, &o) in words.iter().zip(&offsets) {
                        let n = w.wire_dims.len();
                        let ri = flat(&rows[o..o + n], &w.wire_dims);
                        let ci = flat(&cols[o..o + n], &w.wire_dims);
                        prod *= w.op.get(ri, ci);
                        if prod == 0.0 {
                            break;
                        }
                    }
                    acc += prod;
                }
            }
            data[r_out * out_dim + c_out] = acc;
            data[c_out * out_dim + r_out] = acc;
        }
    }

    let word = words.iter().map(|w| w.word.as_str()).collect::<Vec<_>>().join(" ");
    let mut out = WordMeaning::from_dims(word, diagram.target.clone(), out_dims, SymMatrix::symmetrized(out_dim, data))?;
    out.spaces = diagram.residuals.iter().map(|&r| spaces[r].clone()).collect();
    Ok(out)
}

/// Writes the multi-index `k` (row-major over `dims`) into `idx` at `positions`.
fn assign(idx: &mut [usize], positions: &[usize], dims: &[usize], mut k: usize) {
    for (&p, &d) in positions.iter().zip(dims).rev() {
        idx[p] = k % d;
        k /= d;
    }
}

fn assign_links(idx: &mut [usize], links: &[(usize, usize)], dims: &[usize], mut k: usize) {
    for (&(p, q), &d) in links.iter().zip(dims).rev() {
        idx[p] = k % d;
        idx[q] = k % d;
        k /= d;
    }
}

fn flat(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

/// Subject–verb–object composition,
/// `S[j, j′] = Σ subj[i, i′] · verb[(i, j, k), (i′, j′, k′)] · obj[k, k′]`.
///
/// The verb must have three wires; its first contracts with the subject and
/// its last with the object.
pub fn compose_transitive(subj: &WordMeaning, verb: &WordMeaning, obj: &WordMeaning) -> Result<WordMeaning> {
    let typed = |w: &WordMeaning, n: usize| {
        if w.ptype.len() != n {
            return Err(Error::Shape(alloc::format!(
                "`{}` has type `{}`, expected {n} simple type(s)",
                w.word,
                w.ptype
            )));
        }
        Ok(())
    };
    typed(subj, 1)?;
    typed(verb, 3)?;
    typed(obj, 1)?;
    let v = &verb.ptype.simples;
    if !subj.ptype.simples[0].contracts_with(&v[0]) || !v[2].contracts_with(&obj.ptype.simples[0]) {
        return Err(Error::Shape(alloc::format!(
            "`{} {} {}` does not contract to the verb's middle type",
            subj.ptype,
            verb.ptype,
            obj.ptype
        )));
    }
    let (a, s, b) = (verb.wire_dims[0], verb.wire_dims[1], verb.wire_dims[2]);
    if subj.wire_dims[0] != a || obj.wire_dims[0] != b {
        return Err(Error::Shape(alloc::format!(
            "verb wires {:?} against subject {} and object {}",
            verb.wire_dims,
            subj.wire_dims[0],
            obj.wire_dims[0]
        )));
    }

    let vidx = |i: usize, j: usize, k: usize| (i * s + j) * b + k;
    let mut data = vec![0.0; s * s];
    for j in 0..s {
        for jp in j..s {
            let mut acc = 0.0;
            for i in 0..a {
                for ip in 0..a {
                    let si = subj.op.get(i, ip);
                    if si == 0.0 {
                        continue;
                    }
                    for k in 0..b {
                        for kp in 0..b {
                            acc += si * verb.op.get(vidx(i, j, k), vidx(ip, jp, kp)) * obj.op.get(k, kp);
                        }
                    }
                }
            }
            data[j * s + jp] = acc;
            data[jp * s + j] = acc;
        }
    }
    let mut out = WordMeaning::from_dims(
        alloc::format!("{} {} {}", subj.word, verb.word, obj.word),
        PregroupType::new(vec![v[1].clone()]),
        vec![s],
        SymMatrix::symmetrized(s, data),
    )?;
    out.spaces = vec![verb.spaces[1].clone()];
    Ok(out)
}

/// `|η⟩⟨η|` with `η = Σᵢ |i⟩ ⊗ |i⟩`: the doubled cap on a wire of dimension `dim`.
pub fn cup_state(dim: usize) -> SymMatrix {
    let mut eta = vec![0.0; dim * dim];
    for i in 0..dim {
        eta[i * dim + i] = 1.0;
    }
    SymMatrix::outer(&eta)
}

/// A rectangular table of verb weights, subject basis by object basis.
#[derive(Debug, Clone, PartialEq)]
pub struct VerbMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl VerbMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        VerbMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::Shape("verb table is empty".to_string()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Shape(alloc::format!(
                "verb table row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        Ok(VerbMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn add(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.cols + j] += x;
    }

    /// Subject index major, object index minor.
    pub fn flatten(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> VerbMatrix {
        let mut t = VerbMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }
}

/// `|v⟩⟨v| ⊙ (subj ⊗ obj)` where `v` is the flattened verb table.
///
/// Positive by the Schur product theorem; not normalized.
pub fn compose_kronecker(verb: &VerbMatrix, subj: &DensityMatrix, obj: &DensityMatrix) -> Result<DensityMatrix> {
    if verb.rows != subj.dim() || verb.cols != obj.dim() {
        return Err(Error::Shape(alloc::format!(
            "{}x{} verb table against subject dim {} and object dim {}",
            verb.rows,
            verb.cols,
            subj.dim(),
            obj.dim()
        )));
    }
    let verb_state = SymMatrix::outer(verb.flatten());
    let product = subj.op().kron(obj.op());
    Ok(DensityMatrix::from_psd(verb_state.hadamard(&product)?))
}
