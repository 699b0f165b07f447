//! Worked-example data, embedded so the repro cases need no files.

use densem::compose::{Space, SpaceRegistry, VerbMatrix, WordMeaning};
use densem::density::{mixture, pure, DensityMatrix};
use densem::lexicon::{build_from_subsets, Lexicon, SubsetRecord, VerbEntry};
use densem::pregroup::PregroupType;
use densem::specmat::SymMatrix;
use densem::Result;

fn t(s: &str) -> PregroupType {
    s.parse().expect("fixture types are well formed")
}

/// Two animals and two foods, with a sentence space of dimension `s`.
fn truth_registry(animals: [&str; 2], s: usize) -> SpaceRegistry {
    let labels: Vec<String> = match s {
        1 => vec!["true".into()],
        _ => vec!["true".into(), "false".into()],
    };
    SpaceRegistry::new()
        .with("animal", Space::new(animals).unwrap())
        .with("food", Space::new(["meat", "plants"]).unwrap())
        .with("s", Space::new(labels).unwrap())
}

fn noun(reg: &SpaceRegistry, word: &str, space: &str, op: SymMatrix) -> Result<WordMeaning> {
    WordMeaning::with_spaces(word, t("n"), vec![space.into()], op, reg)
}

fn verb(reg: &SpaceRegistry, word: &str, op: SymMatrix) -> Result<WordMeaning> {
    let spaces = vec!["animal".into(), "s".into(), "food".into()];
    WordMeaning::with_spaces(word, t("n^r s n^l"), spaces, op, reg)
}

/// `lions` and `sloths` as basis states and `mammals` as their even mixture.
pub fn lions_sloths_mammals() -> (DensityMatrix, DensityMatrix, DensityMatrix) {
    let lions = pure(&[1.0, 0.0]).unwrap();
    let sloths = pure(&[0.0, 1.0]).unwrap();
    let mammals = mixture(&[0.5, 0.5], &[lions.clone(), sloths.clone()]).unwrap();
    (lions, sloths, mammals)
}

fn animal_words(lex: &mut Lexicon) -> Result<()> {
    let (lions, sloths, mammals) = lions_sloths_mammals();
    let reg = lex.registry.clone();
    lex.insert_word(noun(&reg, "lions", "animal", lions.into_op())?)?;
    lex.insert_word(noun(&reg, "sloths", "animal", sloths.into_op())?)?;
    lex.insert_word(noun(&reg, "mammals", "animal", mammals.into_op())?)?;
    lex.insert_word(noun(&reg, "meat", "food", SymMatrix::diag(&[1.0, 0.0]))?)?;
    lex.insert_word(noun(&reg, "plants", "food", SymMatrix::diag(&[0.0, 1.0]))?)?;
    Ok(())
}

/// One-dimensional sentence space; `eat` is the pure state
/// `|sloths plants⟩ + |lions meat⟩`.
pub fn truth_1d() -> Lexicon {
    let reg = truth_registry(["lions", "sloths"], 1);
    let mut lex = Lexicon::new(reg.clone());
    animal_words(&mut lex).unwrap();
    // wires (animal, s, food), row-major
    let mut psi = [0.0; 4];
    psi[0] = 1.0; // lions, meat
    psi[3] = 1.0; // sloths, plants
    lex.insert_word(verb(&reg, "eat", SymMatrix::outer(&psi)).unwrap()).unwrap();
    lex
}

/// Two-dimensional sentence space with `true = |0⟩`, `false = |1⟩`.
///
/// `eat` sums `|a₁⟩⟨a₂| ⊗ |x⟩⟨x| ⊗ |b₁⟩⟨b₂|` where `x` is true exactly when
/// both `(a₁, b₁)` and `(a₂, b₂)` are lions/meat or sloths/plants. The sum is
/// symmetric but not positive.
pub fn truth_2d() -> Lexicon {
    let reg = truth_registry(["lions", "sloths"], 2);
    let mut lex = Lexicon::new(reg.clone());
    animal_words(&mut lex).unwrap();
    let fits = |a: usize, b: usize| a == b;
    let idx = |a: usize, x: usize, b: usize| (a * 2 + x) * 2 + b;
    let mut data = vec![0.0; 64];
    for a1 in 0..2 {
        for a2 in 0..2 {
            for b1 in 0..2 {
                for b2 in 0..2 {
                    let x = if fits(a1, b1) && fits(a2, b2) { 0 } else { 1 };
                    data[idx(a1, x, b1) * 8 + idx(a2, x, b2)] += 1.0;
                }
            }
        }
    }
    let op = SymMatrix::new(8, data).unwrap();
    lex.insert_word(verb(&reg, "eat", op).unwrap()).unwrap();
    lex
}

/// Lions eat only meat; dogs eat meat and plants with truth value
/// `amp·(|0⟩ + |1⟩)`. Also holds `mammals = ½ lions + ½ dogs`.
pub fn dogs_2d(amp: f64) -> Lexicon {
    let reg = truth_registry(["lions", "dogs"], 2);
    let mut lex = Lexicon::new(reg.clone());
    let lions = pure(&[1.0, 0.0]).unwrap();
    let dogs = pure(&[0.0, 1.0]).unwrap();
    let mammals = mixture(&[0.5, 0.5], &[lions.clone(), dogs.clone()]).unwrap();
    for (word, op) in [("lions", lions), ("dogs", dogs), ("mammals", mammals)] {
        lex.insert_word(noun(&reg, word, "animal", op.into_op()).unwrap()).unwrap();
    }
    lex.insert_word(noun(&reg, "meat", "food", SymMatrix::diag(&[1.0, 0.0])).unwrap()).unwrap();
    let idx = |a: usize, x: usize, b: usize| (a * 2 + x) * 2 + b;
    let mut psi = [0.0; 8];
    psi[idx(0, 0, 0)] = 1.0;
    psi[idx(0, 1, 1)] = 1.0;
    for food in 0..2 {
        psi[idx(1, 0, food)] = amp;
        psi[idx(1, 1, food)] = amp;
    }
    lex.insert_word(verb(&reg, "eat", SymMatrix::outer(&psi)).unwrap()).unwrap();
    lex
}

pub fn drinks_space() -> Space {
    Space::new(["pub", "pitcher", "tonic"]).unwrap()
}

pub fn people_space() -> Space {
    Space::new(["patient", "mental", "surgery"]).unwrap()
}

pub fn lager() -> DensityMatrix {
    pure(&[6.0, 5.0, 0.0]).unwrap()
}

/// Six sightings with just `pub`, seven with `pub` and `pitcher`.
pub fn beer() -> DensityMatrix {
    let records = [
        SubsetRecord::new("beer", ["pub"], 6.0),
        SubsetRecord::new("beer", ["pub", "pitcher"], 7.0),
    ];
    build_from_subsets(&drinks_space(), &records).unwrap()
}

pub fn psychiatrist() -> DensityMatrix {
    DensityMatrix::new(SymMatrix::diag(&[2.0, 5.0, 0.0])).unwrap()
}

pub fn doctor() -> DensityMatrix {
    DensityMatrix::new(SymMatrix::diag(&[5.0, 2.0, 3.0])).unwrap()
}

/// Rows are subjects (patient, mental, surgery), columns objects
/// (pub, pitcher, tonic).
pub fn drink() -> VerbMatrix {
    VerbMatrix::from_rows(&[vec![4.0, 5.0, 3.0], vec![6.0, 3.0, 2.0], vec![1.0, 2.0, 1.0]]).unwrap()
}

/// Nouns and the `drink` table over `people` (subjects) and `drinks`
/// (objects).
pub fn drinking() -> Lexicon {
    let reg = SpaceRegistry::new()
        .with("people", people_space())
        .with("drinks", drinks_space());
    let mut lex = Lexicon::new(reg.clone());
    let words = [
        ("lager", "drinks", lager()),
        ("beer", "drinks", beer()),
        ("psychiatrist", "people", psychiatrist()),
        ("doctor", "people", doctor()),
    ];
    for (word, space, rho) in words {
        lex.insert_word(noun(&reg, word, space, rho.into_op()).unwrap()).unwrap();
    }
    let entry = VerbEntry {
        subject_space: "people".into(),
        object_space: "drinks".into(),
        table: drink(),
    };
    lex.insert_verb("drink", entry).unwrap();
    lex
}
