//! Pregroup types and contraction-only reductions.
//!
//! A simple type is an atom with an integer adjoint order: `n^l` is order
//! −1, `n` is 0, `n^r` is +1. Adjacent simples `a^(z) a^(z+1)` contract to the
//! unit, which covers both `aˡ a ≤ 1` and `a aʳ ≤ 1`.
//!
//! [`reduce`] decides whether a sequence of word types contracts to a target
//! type and returns the link diagram that witnesses it. The search is an
//! interval DP over the concatenated simple types; among several valid
//! diagrams the lexicographically least sorted link list is returned.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub base: String,
    /// Adjoint order: negative for left adjoints, positive for right.
    pub z: i32,
}

impl SimpleType {
    pub fn new(base: impl Into<String>, z: i32) -> Self {
        SimpleType {
            base: base.into(),
            z,
        }
    }

    pub fn left_adjoint(&self) -> Self {
        SimpleType::new(self.base.clone(), self.z - 1)
    }

    pub fn right_adjoint(&self) -> Self {
        SimpleType::new(self.base.clone(), self.z + 1)
    }

    /// `self · next ≤ 1`.
    pub fn contracts_with(&self, next: &SimpleType) -> bool {
        self.base == next.base && next.z == self.z + 1
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        let suffix = if self.z < 0 { "^l" } else { "^r" };
        for _ in 0..self.z.unsigned_abs() {
            f.write_str(suffix)?;
        }
        Ok(())
    }
}

/// A product of simple types; empty is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PregroupType {
    pub simples: Vec<SimpleType>,
}

impl PregroupType {
    pub fn new(simples: Vec<SimpleType>) -> Self {
        PregroupType { simples }
    }

    pub fn unit() -> Self {
        PregroupType::default()
    }

    pub fn atom(base: &str) -> Self {
        PregroupType::new(vec![SimpleType::new(base, 0)])
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn concat<'a>(types: impl IntoIterator<Item = &'a PregroupType>) -> PregroupType {
        PregroupType::new(types.into_iter().flat_map(|t| t.simples.iter().cloned()).collect())
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.simples.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for PregroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_type(s)
    }
}

fn is_atom_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Parses whitespace-separated simple types such as `n^r s n^l`.
///
/// Suffixes `^l` and `^r` may repeat; each `^l` lowers the adjoint order by
/// one and each `^r` raises it. Error positions are character offsets.
pub fn parse_type(text: &str) -> Result<PregroupType> {
    let chars: Vec<char> = text.chars().collect();
    let mut simples = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && is_atom_char(chars[i]) {
            i += 1;
        }
        if i == start {
            return Err(Error::Parse {
                pos: start,
                msg: alloc::format!("expected an atom name, found `{}`", chars[start]),
            });
        }
        let base: String = chars[start..i].iter().collect();
        let mut z = 0i32;
        while i < chars.len() && chars[i] == '^' {
            match chars.get(i + 1) {
                Some('l') => z -= 1,
                Some('r') => z += 1,
                Some(c) => {
                    return Err(Error::Parse {
                        pos: i + 1,
                        msg: alloc::format!("adjoint suffix must be `l` or `r`, found `{c}`"),
                    })
                }
                None => {
                    return Err(Error::Parse {
                        pos: i + 1,
                        msg: "dangling `^`".to_string(),
                    })
                }
            }
            i += 2;
        }
        if i < chars.len() && !chars[i].is_whitespace() {
            return Err(Error::Parse {
                pos: i,
                msg: alloc::format!("unexpected `{}` after simple type", chars[i]),
            });
        }
        simples.push(SimpleType { base, z });
    }
    Ok(PregroupType { simples })
}

pub fn format_type(t: &PregroupType) -> String {
    t.to_string()
}

/// A witness that a concatenated type contracts to `target`.
///
/// Positions index the concatenation `source` of all word types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReductionDiagram {
    pub source: PregroupType,
    /// Sorted `(i, j)` pairs with `i < j`.
    pub links: Vec<(usize, usize)>,
    /// Uncontracted positions, ascending.
    pub residuals: Vec<usize>,
    pub target: PregroupType,
}

impl ReductionDiagram {
    /// Checks the structural invariants: links are planar and well-typed,
    /// every position is used exactly once, no residual sits under a link,
    /// and the residuals spell out the target.
    pub fn validate(&self) -> Result<()> {
        let m = self.source.len();
        let bad = |msg: String| Err(Error::Shape(msg));
        let mut used = vec![false; m];
        for &(i, j) in &self.links {
            if !(i < j && j < m) {
                return bad(alloc::format!("link ({i}, {j}) out of order or range"));
            }
            if !self.source.simples[i].contracts_with(&self.source.simples[j]) {
                return bad(alloc::format!(
                    "link ({i}, {j}) joins {} and {}, which do not contract",
                    self.source.simples[i],
                    self.source.simples[j]
                ));
            }
            for p in [i, j] {
                if core::mem::replace(&mut used[p], true) {
                    return bad(alloc::format!("position {p} used twice"));
                }
            }
        }
        for (a, &(i, j)) in self.links.iter().enumerate() {
            for &(k, l) in &self.links[a + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    return bad(alloc::format!("links ({i}, {j}) and ({k}, {l}) cross"));
                }
            }
        }
        for &r in &self.residuals {
            if r >= m || core::mem::replace(&mut used[r], true) {
                return bad(alloc::format!("residual {r} out of range or reused"));
            }
            if self.links.iter().any(|&(i, j)| i < r && r < j) {
                return bad(alloc::format!("residual {r} is enclosed by a link"));
            }
        }
        if used.iter().any(|u| !u) {
            return bad("some position is neither linked nor residual".to_string());
        }
        if self.residuals.windows(2).any(|w| w[0] >= w[1]) {
            return bad("residuals are not ascending".to_string());
        }
        let residual_types: Vec<&SimpleType> =
            self.residuals.iter().map(|&r| &self.source.simples[r]).collect();
        if residual_types != self.target.simples.iter().collect::<Vec<_>>() {
            return bad(alloc::format!("residuals do not spell the target {}", self.target));
        }
        Ok(())
    }
}

impl fmt::Display for ReductionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("links: [")?;
        for (k, (i, j)) in self.links.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{i},{j}]")?;
        }
        f.write_str("]; residuals: [")?;
        for (k, r) in self.residuals.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

struct Reducer<'a> {
    seq: &'a [SimpleType],
    target: &'a [SimpleType],
    /// `vanish[i][j]`: the half-open segment `i..j` contracts to the unit.
    vanish: Vec<Vec<bool>>,
    /// `feasible[p][q]`: positions `p..` reduce to `target[q..]`.
    feasible: Vec<Vec<bool>>,
}

impl<'a> Reducer<'a> {
    fn new(seq: &'a [SimpleType], target: &'a [SimpleType]) -> Self {
        let m = seq.len();
        let mut vanish = vec![vec![false; m + 1]; m + 1];
        for i in 0..=m {
            vanish[i][i] = true;
        }
        for len in (2..=m).step_by(2) {
            for i in 0..=m - len {
                let j = i + len;
                vanish[i][j] = (i + 1..j)
                    .step_by(2)
                    .any(|k| seq[i].contracts_with(&seq[k]) && vanish[i + 1][k] && vanish[k + 1][j]);
            }
        }
        let t = target.len();
        let mut feasible = vec![vec![false; t + 1]; m + 1];
        feasible[m][t] = true;
        for p in (0..m).rev() {
            for q in 0..=t {
                let keep = q < t && seq[p] == target[q] && feasible[p + 1][q + 1];
                feasible[p][q] = keep
                    || (p + 1..m).step_by(2).any(|k| {
                        seq[p].contracts_with(&seq[k]) && vanish[p + 1][k] && feasible[k + 1][q]
                    });
            }
        }
        Reducer {
            seq,
            target,
            vanish,
            feasible,
        }
    }

    /// Lexicographically least link set for a segment that must vanish.
    fn vanish_links(&self, mut i: usize, j: usize, links: &mut Vec<(usize, usize)>) {
        while i < j {
            let k = (i + 1..j)
                .step_by(2)
                .find(|&k| self.seq[i].contracts_with(&self.seq[k]) && self.vanish[i + 1][k] && self.vanish[k + 1][j])
                .expect("segment was checked to vanish");
            links.push((i, k));
            self.vanish_links(i + 1, k, links);
            i = k + 1;
        }
    }

    /// Greedy walk over `feasible`: contracting at `p` (with the nearest
    /// partner) always sorts before leaving `p` as a residual.
    fn extract(&self) -> (Vec<(usize, usize)>, Vec<usize>) {
        let m = self.seq.len();
        let (mut links, mut residuals) = (Vec::new(), Vec::new());
        let (mut p, mut q) = (0, 0);
        while p < m {
            let partner = (p + 1..m).step_by(2).find(|&k| {
                self.seq[p].contracts_with(&self.seq[k]) && self.vanish[p + 1][k] && self.feasible[k + 1][q]
            });
            if let Some(k) = partner {
                links.push((p, k));
                self.vanish_links(p + 1, k, &mut links);
                p = k + 1;
            } else {
                debug_assert!(q < self.target.len() && self.seq[p] == self.target[q]);
                residuals.push(p);
                p += 1;
                q += 1;
            }
        }
        links.sort_unstable();
        (links, residuals)
    }
}

/// Finds a contraction-only reduction of the concatenated `seq` to `target`.
pub fn reduce(seq: &[PregroupType], target: &PregroupType) -> Option<ReductionDiagram> {
    let source = PregroupType::concat(seq);
    let reducer = Reducer::new(&source.simples, &target.simples);
    if !reducer.feasible[0][0] {
        return None;
    }
    let (links, residuals) = reducer.extract();
    Some(ReductionDiagram {
        source,
        links,
        residuals,
        target: target.clone(),
    })
}

/// Whether the word types reduce to the sentence type `s`.
pub fn is_grammatical(seq: &[PregroupType]) -> bool {
    reduce(seq, &PregroupType::atom("s")).is_some()
}
