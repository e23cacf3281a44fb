use posinfer::pattern::{matches, PatternExpr};
use posinfer::pipeline::{generate, run_ncd_method, run_tandem_method, ClusterReport, CorpusSpec, Cut, NcdOptions};
use posinfer::tandem::DEFAULT_MAX_DEPTH;
use posinfer::{Alphabet, Corpus, Linkage};

const SPECS: [&str; 3] = [
    r#"{"alphabet":"ab","languages":[{"pattern":"a+"},{"pattern":"a+b+"},{"pattern":"ab+a"},{"pattern":"(ab)+"}],
        "min_len":50,"max_len":200,"count":40,"stratified":true}"#,
    r#"{"alphabet":"abc","languages":[{"pattern":"a+"},{"pattern":"(ab)+"},{"pattern":"(abc)+"},{"pattern":"a(bc)+a"}],
        "min_len":6,"max_len":60,"count":100}"#,
    r#"{"alphabet":"abcd","languages":[{"pattern":"(a{2}b)+c"},{"pattern":"d(ab)*d"},{"pattern":"(c+d)+a","weight":2},{"pattern":"b{3..5}(cd){2}"}],
        "min_len":4,"max_len":40,"count":60}"#,
];

fn corpus(spec: &str, seed: u64) -> (CorpusSpec, Corpus) {
    let mut s = CorpusSpec::from_json(spec, &Alphabet::lowercase()).unwrap();
    s.seed = seed;
    let c = generate(&s).unwrap();
    (s, c)
}

fn assert_sound(report: &ClusterReport, corpus: &Corpus, alphabet: &Alphabet) {
    let mut seen: Vec<usize> = report.clusters.iter().flat_map(|c| c.members.clone()).collect();
    seen.sort_unstable();
    assert_eq!(seen, (0..corpus.len()).collect::<Vec<_>>());
    for (c, p) in report.clusters.iter().zip(report.patterns().unwrap()) {
        for &i in &c.members {
            assert!(
                matches(&p, &corpus.strings[i], alphabet.len()),
                "{} misses {}",
                c.pattern,
                alphabet.render(&corpus.strings[i])
            );
        }
    }
}

#[test]
fn generation_is_seeded() {
    for spec in SPECS {
        let (s, a) = corpus(spec, 3);
        assert_eq!(a, corpus(spec, 3).1);
        assert_ne!(a, corpus(spec, 4).1);
        for (x, l) in a.strings.iter().zip(a.labels.as_ref().unwrap()) {
            let lang = s.languages.iter().find(|g| &g.label == l).unwrap();
            assert!(matches(&lang.pattern, x, s.alphabet.len()));
            assert!((s.min_len..=s.max_len).contains(&x.len()));
        }
    }
}

#[test]
fn both_methods_cover_and_partition() {
    for spec in SPECS {
        for seed in 0..3 {
            let (s, c) = corpus(spec, seed);
            let t = run_tandem_method(&c.strings, &s.alphabet, DEFAULT_MAX_DEPTH).unwrap();
            assert_sound(&t, &c, &s.alphabet);
            for cut in [Cut::K(1), Cut::K(4), Cut::Threshold(0.8)] {
                let opts = NcdOptions {
                    linkage: Linkage::Average,
                    cut,
                    relabel: false,
                };
                assert_sound(
                    &run_ncd_method(&c.strings, &s.alphabet, &opts).unwrap().report,
                    &c,
                    &s.alphabet,
                );
            }
        }
    }
}

#[test]
fn tandem_groups_never_mix_skeletons() {
    let (s, c) = corpus(SPECS[1], 0);
    let r = run_tandem_method(&c.strings, &s.alphabet, DEFAULT_MAX_DEPTH).unwrap();
    let labels = c.labels.unwrap();
    for cl in &r.clusters {
        assert!(
            cl.members.iter().all(|&i| labels[i] == labels[cl.members[0]]),
            "{}",
            cl.pattern
        );
    }
}

#[test]
fn reports_are_byte_identical() {
    let (s, c) = corpus(SPECS[0], 1);
    let opts = NcdOptions {
        linkage: Linkage::Complete,
        cut: Cut::K(4),
        relabel: true,
    };
    let a = run_ncd_method(&c.strings, &s.alphabet, &opts).unwrap();
    let b = run_ncd_method(&c.strings, &s.alphabet, &opts).unwrap();
    assert_eq!(a.report.to_json(), b.report.to_json());
    assert_eq!(a.dendrogram.to_newick(), b.dendrogram.to_newick());
    let t1 = run_tandem_method(&c.strings, &s.alphabet, 3).unwrap();
    assert_eq!(
        t1.to_json(),
        run_tandem_method(&c.strings, &s.alphabet, 3).unwrap().to_json()
    );
}

#[test]
fn unsatisfiable_specs_name_the_pattern() {
    let spec =
        r#"{"alphabet":"ab","languages":[{"pattern":"a+"},{"pattern":"(ab){2}"}],"min_len":5,"max_len":9,"count":4}"#;
    let s = CorpusSpec::from_json(spec, &Alphabet::lowercase()).unwrap();
    let err = generate(&s).unwrap_err().to_string();
    assert!(err.contains("(ab){2}"), "{err}");
    let ab = Alphabet::first_letters(2).unwrap();
    assert!(PatternExpr::parse("(ab", &ab).is_err());
}
