use frolicher::corpus::{corpus_get, corpus_list, corpus_run, Origin, Quantity};

#[test]
fn entries_reproduce_except_the_example2_degree_two_cells() {
    for name in corpus_list() {
        let run = corpus_run(name, false).unwrap();
        let diffs: Vec<String> = run.diffs().map(|d| d.expected.quantity.to_string()).collect();
        if name == "example2" {
            // the printed tables miss [x1∧x̄1] and [x̄1∧ȳ2]; see the README
            assert_eq!(diffs, ["h11", "h02", "h04", "b2", "b4"]);
        } else {
            assert!(diffs.is_empty(), "{name}: {diffs:?}");
        }
    }
}

#[test]
fn example2_disagreements_are_against_printed_or_derived_values_only() {
    let run = corpus_run("example2", false).unwrap();
    for d in run.diffs() {
        assert!(matches!(d.expected.origin, Origin::Literature(_) | Origin::ClosedForm(_)));
    }
    let computed = |q: Quantity| run.rows.iter().find(|d| d.expected.quantity == q).unwrap().computed;
    assert_eq!(computed(Quantity::Dolbeault(1, 1)), 4);
    assert_eq!(computed(Quantity::Betti(4)), 18);
    assert_eq!(computed(Quantity::Rstep), 1);
}

#[test]
fn every_expected_number_has_a_note() {
    for name in corpus_list() {
        for e in corpus_get(name).unwrap().expected {
            assert!(!e.origin.note().is_empty(), "{name} {}", e.quantity);
        }
    }
}

#[test]
fn example2_parses_to_four_generators_and_one_character() {
    let m = corpus_get("example2").unwrap().model();
    assert_eq!(m.declared().count(), 4);
    assert_eq!(m.n_generators(), 8);
    assert_eq!(m.n_chars(), 1);
}
