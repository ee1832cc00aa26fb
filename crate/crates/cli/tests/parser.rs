mod common;

use common::q;
use proptest::prelude::*;
use sullivan::model_file::Options;
use sullivan::{parse_model, ModelFile, ParseErrorKind, Position};
use sullivan_core::{corpus, FreeAlgebra, Generator, Polynomial};

#[test]
fn sphere_grammar_instance() {
    let f = parse_model("gen x 2\ngen y 3\nd y = x^2").unwrap();
    assert_eq!(f.model().unwrap(), corpus::s2());
}

#[test]
fn like_terms_merge() {
    let f = parse_model("gen x 2\ngen y 3\nd y = x^2 + 1/2 x^2").unwrap();
    let m = f.raw_model();
    let x2 = m.algebra().power(&m.algebra().generator(0), 2);
    assert_eq!(m.differential_of(1), &x2.scale(&sullivan_core::Rational::new(3.into(), 2.into())));
}

#[test]
fn degree_one_rejected() {
    let e = parse_model("gen x 1").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::DegreeTooSmall(1));
    assert_eq!(e.position, Position { line: 1, column: 7 });
    assert!(e.to_string().contains("degree >= 2"));
}

#[test]
fn unknown_names_have_positions() {
    let e = parse_model("gen x 2\ngen y 3\nd y = x^2 + 2 x*w").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::UnknownGenerator("w".into()));
    assert_eq!(e.position, Position { line: 3, column: 17 });
    let e = parse_model("gen x 2\n\nd q = x^2").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::UnknownGenerator("q".into()));
    assert_eq!(e.position, Position { line: 3, column: 3 });
}

#[test]
fn duplicates_rejected() {
    let e = parse_model("gen x 2\ngen x 4").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::DuplicateGenerator("x".into()));
    assert_eq!(e.position.line, 2);
    let e = parse_model("gen x 2\ngen y 3\nd y = x^2\nd y = x^2").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::DuplicateDifferential("y".into()));
}

#[test]
fn malformed_lines() {
    for (text, line) in [
        ("gen x 2\nfoo 3", 2),
        ("gen x 2\ngen y 3\nd y x^2", 3),
        ("gen x 2\ngen y 3\nd y = x^2 x^", 3),
        ("gen x 2\ngen y 3\nd y = 1/0 x^2", 3),
        ("gen x 2 7", 1),
        ("expect q 3", 1),
        ("cap 3\ncap 4", 2),
    ] {
        assert_eq!(parse_model(text).unwrap_err().position.line, line, "{text}");
    }
}

#[test]
fn products_use_graded_signs() {
    let f = parse_model("gen a 2\ngen u 3\ngen v 3\ngen w 7\nd w = v u a + a^4 + u*u*a").unwrap();
    let m = f.raw_model();
    let alg = m.algebra();
    let (a, u, v) = (alg.generator(0), alg.generator(1), alg.generator(2));
    let auv = alg.multiply(&alg.multiply(&a, &u).unwrap(), &v).unwrap();
    let expected = alg.power(&a, 4).sub(&auv);
    assert_eq!(m.differential_of(3), &expected);
}

#[test]
fn declaration_order_is_free() {
    let f = parse_model("d y = x^2\ngen y 3\ngen x 2").unwrap();
    assert_eq!(f.generators[0].name, "y");
    assert!(f.model().is_ok());
}

#[test]
fn options_parse() {
    let f = parse_model("name t\ngen x 2\ncap 9\nmax-degree 8\nexpect r 0\nexpect N -1").unwrap();
    assert_eq!(f.options.cap, Some(9));
    assert_eq!(f.options.max_degree, Some(8));
    assert_eq!(f.options.expect.get("N"), Some(&-1));
}

#[test]
fn corpus_files_match_reference_models() {
    let pairs = [
        ("s2", corpus::s2()),
        ("s3", corpus::s3()),
        ("s2s2", corpus::s2_times_s2()),
        ("cp3", corpus::cp3()),
        ("a2b2y5z5", corpus::a2b2y5z5()),
        ("mixed_a2_y3_z5", corpus::mixed_a2_y3_z5()),
        ("mixed_a2_y3_z7", corpus::mixed_a2_y3_z7()),
        ("mixed_a2_b4_y3_z7", corpus::mixed_a2_b4_y3_z7()),
        ("nonpure_a2_u3_v3_w7", corpus::nonpure_a2_u3_v3_w7()),
        ("polynomial_x2", corpus::polynomial_x2()),
    ];
    for (name, expected) in pairs {
        let (file, model) = common::load(name);
        assert_eq!(file.name, name);
        assert_eq!(model, expected, "{name}");
    }
}

#[test]
fn corpus_files_round_trip() {
    for name in common::corpus_names() {
        let (file, _) = common::load(&name);
        assert_eq!(parse_model(&file.serialize()).unwrap(), file);
    }
}

fn model_file() -> impl Strategy<Value = ModelFile> {
    let gens = prop::collection::vec(2u32..=7, 1..=4);
    let terms = prop::collection::vec((0usize..1000, -9i64..=9, 1i64..=6, 0usize..4), 0..8);
    let expect = prop::collection::btree_map(prop::sample::select(sullivan::model_file::EXPECT_KEYS.to_vec()), -5i64..20, 0..3);
    (gens, terms, prop::option::of(0u32..30), prop::option::of(0u32..30), expect, "[a-z][a-z0-9_]{0,8}").prop_map(
        |(degs, terms, cap, max_degree, expect, name)| {
            let generators: Vec<Generator> =
                degs.iter().enumerate().map(|(i, &d)| Generator::new(format!("g{i}"), d)).collect();
            let alg = FreeAlgebra::new(generators.clone()).unwrap();
            let mut differential = std::collections::BTreeMap::new();
            for (pick, num, den, target) in terms {
                let target = target % generators.len();
                let degree = (pick % 12) as u32;
                let basis = alg.basis(degree);
                if basis.is_empty() || num == 0 {
                    continue;
                }
                let m = basis.monomials[pick % basis.len()].clone();
                let c = sullivan_core::Rational::new(num.into(), den.into());
                let entry = differential.entry(generators[target].name.clone()).or_insert_with(Polynomial::zero);
                entry.add_term(m, c);
            }
            differential.retain(|_, p: &mut Polynomial| !p.is_zero());
            ModelFile {
                name,
                generators,
                differential,
                options: Options {
                    cap,
                    max_degree,
                    expect: expect.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                },
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_after_serialize_is_identity(f in model_file()) {
        let text = f.serialize();
        prop_assert_eq!(parse_model(&text).unwrap(), f);
    }
}

#[test]
fn merged_coefficient_value() {
    let f = parse_model("gen x 2\ngen y 3\nd y = 2 x^2 - 2 x^2").unwrap();
    assert!(f.differential.is_empty());
    let f = parse_model("gen x 2\ngen y 3\nd y = -x^2").unwrap();
    let (_, c) = f.differential["y"].terms().next().unwrap();
    assert_eq!(c, &q(-1));
}
