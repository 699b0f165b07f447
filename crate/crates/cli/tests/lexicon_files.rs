use std::path::PathBuf;

use densem::compose::{Space, SpaceRegistry, WordMeaning};
use densem::lexicon::Lexicon;
use densem::specmat::SymMatrix;
use densem_cli::{fixtures, lexfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/lexicons").join(name)
}

fn round_trip(lex: &Lexicon) -> Lexicon {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("lex.json");
    lexfile::save(lex, &file).unwrap();
    lexfile::load(&file).unwrap()
}

fn assert_bit_equal(a: &Lexicon, b: &Lexicon) {
    assert_eq!(a, b);
    for (x, y) in a.words().zip(b.words()) {
        let bits = |m: &WordMeaning| m.op().as_slice().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(x), bits(y), "{}", x.word);
    }
}

#[test]
fn empty_lexicon_round_trips() {
    let lex = Lexicon::default();
    assert_eq!(round_trip(&lex), lex);
    assert_eq!(lexfile::from_str("{}").unwrap(), lex);
}

#[test]
fn beer_lexicon_round_trips() {
    let lex = lexfile::load(sample("beer.json")).unwrap();
    assert_bit_equal(&round_trip(&lex), &lex);
}

#[test]
fn lexicon_with_verb_round_trips() {
    let lex = fixtures::drinking();
    let back = round_trip(&lex);
    assert_bit_equal(&back, &lex);
    assert_eq!(back.verb("drink").unwrap().table, fixtures::drink());
}

#[test]
fn embedded_examples_round_trip() {
    for lex in [fixtures::truth_1d(), fixtures::truth_2d(), fixtures::dogs_2d(0.5f64.sqrt())] {
        assert_bit_equal(&round_trip(&lex), &lex);
    }
}

#[test]
fn awkward_doubles_survive_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let reg = SpaceRegistry::new().with("n", Space::new(["a", "b", "c"]).unwrap());
    let mut lex = Lexicon::new(reg.clone());
    for k in 0..50 {
        let v: Vec<f64> = (0..3)
            .map(|_| rng.gen_range(-1.0..1.0) * 10f64.powi(rng.gen_range(-150..150)))
            .collect();
        let op = SymMatrix::outer(&v).add_scaled(1.0 / 3.0, &SymMatrix::identity(3)).unwrap();
        let w = WordMeaning::new(format!("w{k}"), "n".parse().unwrap(), op, &reg).unwrap();
        lex.insert_word(w).unwrap();
    }
    assert_bit_equal(&round_trip(&lex), &lex);
}

#[test]
fn refuses_to_write_infinities() {
    let reg = SpaceRegistry::new().with("n", Space::new(["a"]).unwrap());
    let mut lex = Lexicon::new(reg.clone());
    let op = SymMatrix::diag(&[f64::INFINITY]);
    lex.insert_word(WordMeaning::new("w", "n".parse().unwrap(), op, &reg).unwrap()).unwrap();
    let err = lexfile::to_string(&lex).unwrap_err().to_string();
    assert!(err.starts_with("words.w:"), "{err}");
}

#[test]
fn sample_file_matches_embedded_data() {
    let lex = lexfile::load(sample("beer.json")).unwrap();
    let op = |w: &str| lex.word(w).unwrap().op().clone();
    assert_eq!(&op("lager"), fixtures::lager().op());
    assert_eq!(&op("beer"), fixtures::beer().op());
    assert_eq!(&op("psychiatrist"), fixtures::psychiatrist().op());
    assert_eq!(&op("doctor"), fixtures::doctor().op());
    assert_eq!(lex.verb("drink").unwrap().table, fixtures::drink());
    assert_eq!(lex.word("doctor").unwrap().spaces, ["people"]);
}

#[test]
fn verb_errors_point_into_the_document() {
    let text = r#"{"spaces": {"n": {"dim": 2}},
        "verbs": {"v": {"subject_space": "n", "object_space": "m", "rows": [[1, 2], [3, 4]]}}}"#;
    let err = lexfile::from_str(text).unwrap_err().to_string();
    assert!(err.starts_with("verbs.v.object_space:"), "{err}");

    let text = r#"{"spaces": {"n": {"dim": 2}},
        "verbs": {"v": {"subject_space": "n", "object_space": "n", "rows": [[1, 2, 3], [3, 4, 5]]}}}"#;
    let err = lexfile::from_str(text).unwrap_err().to_string();
    assert!(err.starts_with("verbs.v:"), "{err}");

    let text = r#"{"spaces": {"n": {"dim": 2}},
        "verbs": {"v": {"subject_space": "n", "object_space": "n", "rows": [[1, 2], [3]]}}}"#;
    let err = lexfile::from_str(text).unwrap_err().to_string();
    assert!(err.starts_with("verbs.v.rows:"), "{err}");
}

#[test]
fn word_wiring_errors_point_into_the_document() {
    let base = r#"{"spaces": {"n": {"dim": 2}, "s": {"dim": 1}}, "words": {"w": WORD}}"#;
    let cases = [
        (r#"{"type": "n s", "kind": "matrix", "spaces": ["n"], "data": [[1, 0], [0, 1]]}"#, "words.w.spaces"),
        (r#"{"type": "n", "kind": "matrix", "spaces": ["q"], "data": [[1, 0], [0, 1]]}"#, "words.w.spaces[0]"),
        (r#"{"type": "n s", "kind": "subsets", "data": []}"#, "words.w.kind"),
        (r#"{"type": "n", "kind": "subsets", "data": []}"#, "words.w.data"),
        (r#"{"type": "n", "kind": "pure", "data": [1, 0, 0]}"#, "words.w.data"),
        (r#"{"type": "n", "kind": "pure", "data": {"x": 1}}"#, "words.w.data.x"),
        (r#"{"type": "n", "kind": "matrix", "data": [[1, 0]]}"#, "words.w.data"),
        (r#"{"type": "n", "kind": "pure"}"#, "words.w"),
        (r#"{"type": "", "kind": "pure", "data": []}"#, "words.w.type"),
        (r#"{"type": "n", "kind": "pure", "data": [1, 0], "extra": 0}"#, "words.w.extra"),
    ];
    for (word, path) in cases {
        let err = lexfile::from_str(&base.replace("WORD", word)).unwrap_err().to_string();
        assert!(err.starts_with(&format!("{path}:")), "{word}: {err}");
    }
}
