use super::*;
use proptest::prelude::*;

pub(crate) fn walking_arrow() -> Gset {
    Gset::fixture(
        "G",
        &[
            ("a", 0, None, None),
            ("b", 0, None, None),
            ("f", 1, Some("a"), Some("b")),
        ],
    )
}

fn discrete2() -> Gset {
    Gset::fixture("G", &[("u", 0, None, None), ("v", 0, None, None)])
}

fn c2() -> Gset {
    Gset::fixture(
        "G",
        &[
            ("a", 0, None, None),
            ("b", 0, None, None),
            ("f", 1, Some("a"), Some("b")),
            ("g", 1, Some("a"), Some("b")),
            ("alpha", 2, Some("f"), Some("g")),
        ],
    )
}

fn loop_fixture() -> Gset {
    Gset::fixture(
        "G",
        &[("a", 0, None, None), ("e", 1, Some("a"), Some("a"))],
    )
}

#[test]
fn walking_arrow_is_valid() {
    let w = walking_arrow();
    assert_eq!(w.dim_cells(0).len(), 2);
    assert_eq!(w.dim_cells(1).len(), 1);
}

#[test]
fn identity_cell_with_wrong_source_is_rejected() {
    // Declares e as i(a) but e runs a -> b.
    let raw = RawGset {
        name: "G".to_string(),
        cells: vec![
            RawCell { name: "a".into(), dim: 0, src: None, tgt: None },
            RawCell { name: "b".into(), dim: 0, src: None, tgt: None },
            RawCell { name: "e".into(), dim: 1, src: Some("a".into()), tgt: Some("b".into()) },
        ],
        idents: vec![("a".to_string(), "e".to_string())],
    };
    let errs = validate_globular(&raw).unwrap_err();
    assert!(errs.iter().any(|v| v.identity == REFLEXIVE_IDENTITY && v.cell == "e"));
}

#[test]
fn non_parallel_two_cell_is_rejected() {
    // alpha : f -> g with s(f) = a but s(g) = c.
    let raw = RawGset {
        name: "G".to_string(),
        cells: vec![
            RawCell { name: "a".into(), dim: 0, src: None, tgt: None },
            RawCell { name: "b".into(), dim: 0, src: None, tgt: None },
            RawCell { name: "c".into(), dim: 0, src: None, tgt: None },
            RawCell { name: "f".into(), dim: 1, src: Some("a".into()), tgt: Some("b".into()) },
            RawCell { name: "g".into(), dim: 1, src: Some("c".into()), tgt: Some("b".into()) },
            RawCell { name: "alpha".into(), dim: 2, src: Some("f".into()), tgt: Some("g".into()) },
        ],
        idents: vec![],
    };
    let errs = validate_globular(&raw).unwrap_err();
    assert!(errs.iter().any(|v| v.identity == GLOBULAR_IDENTITY && v.cell == "alpha"));
}

// Independent reachability oracle for pi0: brute-force transitive closure.
fn pi0_oracle(g: &Gset) -> Vec<Vec<CellId>> {
    let verts = g.dim_cells(0);
    let mut reach: BTreeMap<CellId, BTreeSet<CellId>> = verts
        .iter()
        .map(|&v| (v, BTreeSet::from([v])))
        .collect();
    loop {
        let mut changed = false;
        for e in g.dim_cells(1) {
            let (s, t) = (g.cell(e).src.unwrap(), g.cell(e).tgt.unwrap());
            let merged: BTreeSet<CellId> = reach[&s].union(&reach[&t]).copied().collect();
            if merged != reach[&s] || merged != reach[&t] {
                changed = true;
                for m in merged.clone() {
                    let all = merged.clone();
                    reach.get_mut(&m).map(|set| set.extend(all));
                }
                reach.insert(s, merged.clone());
                reach.insert(t, merged);
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: BTreeSet<Vec<CellId>> = BTreeSet::new();
    for v in verts {
        classes.insert(reach[&v].iter().copied().collect());
    }
    classes.into_iter().collect()
}

#[test]
fn pi0_walking_arrow_single_class() {
    assert_eq!(pi0(&walking_arrow()).len(), 1);
}

#[test]
fn pi0_discrete_two_classes() {
    assert_eq!(pi0(&discrete2()).len(), 2);
}

#[test]
fn pi0_path_plus_isolated_matches_oracle() {
    let g = Gset::fixture(
        "G",
        &[
            ("a", 0, None, None),
            ("b", 0, None, None),
            ("c", 0, None, None),
            ("d", 0, None, None),
            ("f", 1, Some("a"), Some("b")),
            ("g", 1, Some("b"), Some("c")),
        ],
    );
    let got = pi0(&g);
    let expected = pi0_oracle(&g);
    assert_eq!(got.len(), 2);
    assert_eq!(
        got.into_iter().collect::<BTreeSet<_>>(),
        expected.into_iter().collect::<BTreeSet<_>>()
    );
}

#[test]
fn truncate_walking_arrow_to_zero_is_a_point() {
    let t = truncate(&walking_arrow(), 0);
    assert_eq!(t.dim_cells(0).len(), 1);
    assert_eq!(t.max_dim(), 0);
}

#[test]
fn truncate_discrete_to_zero_keeps_two_points() {
    let t = truncate(&discrete2(), 0);
    assert_eq!(t.dim_cells(0).len(), 2);
}

#[test]
fn truncate_c2_merges_parallel_edges() {
    let t = truncate(&c2(), 1);
    assert_eq!(t.dim_cells(1).len(), 1);
    assert_eq!(t.max_dim(), 1);
    // The class is named after the smaller member.
    assert!(t.lookup("f").is_some());
    assert!(t.lookup("g").is_none());
}

#[test]
fn pi0_commutes_with_one_truncation() {
    for g in [walking_arrow(), discrete2(), c2(), loop_fixture()] {
        let direct: Vec<usize> = pi0(&g).iter().map(|c| c.len()).collect();
        let via: Vec<usize> = pi0(&truncate(&g, 1)).iter().map(|c| c.len()).collect();
        assert_eq!(direct.len(), via.len());
        assert_eq!(direct, via);
    }
}

#[test]
fn reduce_cancelling_pair() {
    let w = walking_arrow();
    let f = w.lookup("f").unwrap();
    let a = w.lookup("a").unwrap();
    let out = reduce_word(
        &w,
        a,
        &[RawLetter::Edge(f, Dir::Fwd), RawLetter::Edge(f, Dir::Inv)],
    )
    .unwrap();
    assert_eq!(out, Word::identity(a));
}

#[test]
fn reduce_identity_letter() {
    let w = walking_arrow();
    let a = w.lookup("a").unwrap();
    let out = reduce_word(&w, a, &[RawLetter::Ident(a)]).unwrap();
    assert_eq!(out, Word::identity(a));
}

// Exhaustive rewriting oracle: applies single cancellation steps in all
// possible orders and checks every maximal rewrite gives the same word.
fn reduce_oracle(g: &Gset, start: CellId, letters: Vec<Letter>) -> BTreeSet<Vec<Letter>> {
    fn step(letters: &[Letter]) -> Vec<Vec<Letter>> {
        let mut out = vec![];
        for i in 0..letters.len().saturating_sub(1) {
            if letters[i].edge == letters[i + 1].edge && letters[i].dir == letters[i + 1].dir.flip()
            {
                let mut next = letters.to_vec();
                next.drain(i..=i + 1);
                out.push(next);
            }
        }
        out
    }
    let _ = (g, start);
    let mut normal_forms = BTreeSet::new();
    let mut frontier = vec![letters];
    while let Some(cur) = frontier.pop() {
        let nexts = step(&cur);
        if nexts.is_empty() {
            normal_forms.insert(cur);
        } else {
            frontier.extend(nexts);
        }
    }
    normal_forms
}

#[test]
fn reduce_path_no_cancellation_matches_oracle() {
    let g = Gset::fixture(
        "G",
        &[
            ("a", 0, None, None),
            ("b", 0, None, None),
            ("c", 0, None, None),
            ("f", 1, Some("a"), Some("b")),
            ("g", 1, Some("b"), Some("c")),
        ],
    );
    let (a, f, gg) = (g.lookup("a").unwrap(), g.lookup("f").unwrap(), g.lookup("g").unwrap());
    let out = reduce_word(
        &g,
        a,
        &[RawLetter::Edge(f, Dir::Fwd), RawLetter::Edge(gg, Dir::Fwd)],
    )
    .unwrap();
    assert_eq!(out.letters.len(), 2);
    let oracle = reduce_oracle(
        &g,
        a,
        vec![
            Letter { edge: f, dir: Dir::Fwd },
            Letter { edge: gg, dir: Dir::Fwd },
        ],
    );
    assert_eq!(oracle.len(), 1);
    assert_eq!(oracle.into_iter().next().unwrap(), out.letters);
}

#[test]
fn reduce_chaining_mismatch() {
    let g = walking_arrow();
    let f = g.lookup("f").unwrap();
    let b = g.lookup("b").unwrap();
    assert!(reduce_word(&g, b, &[RawLetter::Edge(f, Dir::Fwd)]).is_err());
}

// Brute-force hom oracle: all letter sequences up to the bound, reduced.
fn hom_oracle(g: &Gset, a: CellId, b: CellId, max_len: usize) -> BTreeSet<Word> {
    let edges = g.dim_cells(1);
    let mut all_seqs: Vec<Vec<RawLetter>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = all_seqs.clone();
        for seq in &all_seqs {
            for &e in &edges {
                for d in [Dir::Fwd, Dir::Inv] {
                    let mut s = seq.clone();
                    s.push(RawLetter::Edge(e, d));
                    next.push(s);
                }
            }
        }
        all_seqs = next;
    }
    all_seqs
        .into_iter()
        .filter_map(|seq| reduce_word(g, a, &seq).ok())
        .filter(|w| w.to == b && w.len() <= max_len)
        .collect()
}

#[test]
fn hom_walking_arrow_is_singleton() {
    let g = walking_arrow();
    let (a, b) = (g.lookup("a").unwrap(), g.lookup("b").unwrap());
    let hom = free_groupoid_hom(&g, a, b, 4);
    assert_eq!(hom.len(), 1);
    assert_eq!(hom[0].letters.len(), 1);
    let oracle = hom_oracle(&g, a, b, 4);
    assert_eq!(hom.into_iter().collect::<BTreeSet<_>>(), oracle);
}

#[test]
fn hom_loop_length_two() {
    let g = loop_fixture();
    let a = g.lookup("a").unwrap();
    let hom = free_groupoid_hom(&g, a, a, 2);
    // Free group on one generator: words of length <= 2.
    assert_eq!(hom.len(), 5);
    let oracle = hom_oracle(&g, a, a, 2);
    assert_eq!(hom.into_iter().collect::<BTreeSet<_>>(), oracle);
}

#[test]
fn hom_discrete_is_empty() {
    let g = discrete2();
    let (u, v) = (g.lookup("u").unwrap(), g.lookup("v").unwrap());
    assert!(free_groupoid_hom(&g, u, v, 6).is_empty());
}

#[test]
fn forest_hom_unique_within_component() {
    let g = Gset::fixture(
        "G",
        &[
            ("a", 0, None, None),
            ("b", 0, None, None),
            ("c", 0, None, None),
            ("d", 0, None, None),
            ("f", 1, Some("a"), Some("b")),
            ("g", 1, Some("b"), Some("c")),
        ],
    );
    assert!(is_forest(&g));
    for &x in &g.dim_cells(0) {
        for &y in &g.dim_cells(0) {
            let hom = free_groupoid_hom(&g, x, y, 8);
            let same_comp = pi0(&g).iter().any(|cl| cl.contains(&x) && cl.contains(&y));
            assert_eq!(hom.len(), usize::from(same_comp), "hom({x},{y})");
        }
    }
    assert!(!is_forest(&loop_fixture()));
}

// Word composition is associative, unital, and inverses cancel, exhaustively
// on bounded words.
#[test]
fn word_groupoid_laws_exhaustive() {
    let g = loop_fixture();
    let a = g.lookup("a").unwrap();
    let words = free_groupoid_hom(&g, a, a, 3);
    for w1 in &words {
        let id = Word::identity(a);
        assert_eq!(w1.then(&g, &id), *w1);
        assert_eq!(id.then(&g, w1), *w1);
        assert_eq!(w1.then(&g, &w1.inverse()), id);
        assert_eq!(w1.inverse().then(&g, w1), id);
        for w2 in &words {
            for w3 in &words {
                assert_eq!(
                    w1.then(&g, w2).then(&g, w3),
                    w1.then(&g, &w2.then(&g, w3))
                );
            }
        }
    }
}

pub(crate) fn terminal_groupoid() -> FiniteGroupoid {
    FiniteGroupoid {
        objects: vec!["*".into()],
        arrows: vec![GArrow { name: "1".into(), dom: 0, cod: 0 }],
        compose: vec![vec![Some(0)]],
        identity: vec![0],
        inverse: vec![0],
    }
}

pub(crate) fn discrete_groupoid(n: usize) -> FiniteGroupoid {
    let objects = (0..n).map(|i| format!("o{}", i)).collect();
    let arrows = (0..n)
        .map(|i| GArrow { name: format!("1_{}", i), dom: i, cod: i })
        .collect();
    let compose = (0..n)
        .map(|g| (0..n).map(|f| if g == f { Some(g) } else { None }).collect())
        .collect();
    FiniteGroupoid {
        objects,
        arrows,
        compose,
        identity: (0..n).collect(),
        inverse: (0..n).collect(),
    }
}

pub(crate) fn walking_iso_groupoid() -> FiniteGroupoid {
    // Objects a, b; arrows 1a, 1b, f : a -> b, g : b -> a.
    let objects = vec!["a".to_string(), "b".to_string()];
    let arrows = vec![
        GArrow { name: "1a".into(), dom: 0, cod: 0 },
        GArrow { name: "1b".into(), dom: 1, cod: 1 },
        GArrow { name: "f".into(), dom: 0, cod: 1 },
        GArrow { name: "g".into(), dom: 1, cod: 0 },
    ];
    let mut compose = vec![vec![None; 4]; 4];
    compose[0][0] = Some(0);
    compose[1][1] = Some(1);
    compose[2][0] = Some(2); // f . 1a = f
    compose[1][2] = Some(2); // 1b . f = f
    compose[3][1] = Some(3); // g . 1b = g
    compose[0][3] = Some(3); // 1a . g = g
    compose[3][2] = Some(0); // g . f = 1a
    compose[2][3] = Some(1); // f . g = 1b
    FiniteGroupoid {
        objects,
        arrows,
        compose,
        identity: vec![0, 1],
        inverse: vec![0, 1, 3, 2],
    }
}

#[test]
fn identity_functor_is_equivalence() {
    let g = walking_iso_groupoid();
    let f = FunctorData {
        object_map: (0..g.objects.len()).collect(),
        arrow_map: (0..g.arrows.len()).collect(),
    };
    let report = check_equivalence(&g, &g, &f).unwrap();
    assert_eq!(
        report,
        EquivalenceReport { faithful: true, full: true, essentially_surjective: true }
    );
}

#[test]
fn discrete_two_to_terminal_not_full() {
    let src = discrete_groupoid(2);
    let tgt = terminal_groupoid();
    let f = FunctorData {
        object_map: vec![0, 0],
        arrow_map: vec![0, 0],
    };
    let report = check_equivalence(&src, &tgt, &f).unwrap();
    assert_eq!(
        report,
        EquivalenceReport { faithful: true, full: false, essentially_surjective: true }
    );
}

#[test]
fn walking_iso_to_terminal_is_equivalence() {
    let src = walking_iso_groupoid();
    let tgt = terminal_groupoid();
    let f = FunctorData {
        object_map: vec![0, 0],
        arrow_map: vec![0, 0, 0, 0],
    };
    let report = check_equivalence(&src, &tgt, &f).unwrap();
    assert_eq!(
        report,
        EquivalenceReport { faithful: true, full: true, essentially_surjective: true }
    );
}

#[test]
fn non_functorial_input_rejected() {
    // Sends the identities of discrete-2 to the non-identity arrows of the
    // walking isomorphism: endpoints break, so the data is not a functor.
    let src = discrete_groupoid(2);
    let tgt = walking_iso_groupoid();
    let bad = FunctorData {
        object_map: vec![0, 1],
        arrow_map: vec![2, 3],
    };
    assert!(check_equivalence(&src, &tgt, &bad).is_err());
}

#[test]
fn gset_file_roundtrip() {
    let g = c2();
    let text = write_gset_file(&g);
    let raw = parse_gset_file(&text).unwrap();
    let back = validate_globular(&raw).unwrap();
    assert_eq!(back.dim_cells(0).len(), 2);
    assert_eq!(back.dim_cells(1).len(), 2);
    assert_eq!(back.dim_cells(2).len(), 1);
}

#[test]
fn gset_file_rejects_declared_reflexive_cells() {
    assert!(parse_gset_file("gset v1\ncell a : 0\ncell f : 0 a a\n").is_err());
    assert!(parse_gset_file("cell a : 0\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // reduce_word is idempotent and confluent: any interleaving of
    // single-step cancellations reaches the same normal form.
    #[test]
    fn reduction_confluent(seq in proptest::collection::vec(0usize..4, 0..10)) {
        let g = loop_fixture();
        let a = g.lookup("a").unwrap();
        let e = g.lookup("e").unwrap();
        let letters: Vec<Letter> = seq
            .iter()
            .map(|&i| Letter { edge: e, dir: if i % 2 == 0 { Dir::Fwd } else { Dir::Inv } })
            .collect();
        let raw: Vec<RawLetter> = letters.iter().map(|l| RawLetter::Edge(l.edge, l.dir)).collect();
        let reduced = reduce_word(&g, a, &raw).unwrap();
        let oracle = reduce_oracle(&g, a, letters);
        prop_assert_eq!(oracle.len(), 1);
        prop_assert_eq!(oracle.into_iter().next().unwrap(), reduced.letters.clone());
        // Idempotence.
        let again_raw: Vec<RawLetter> =
            reduced.letters.iter().map(|l| RawLetter::Edge(l.edge, l.dir)).collect();
        prop_assert_eq!(reduce_word(&g, a, &again_raw).unwrap(), reduced);
    }
}
