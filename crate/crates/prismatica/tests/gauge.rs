use proptest::prelude::*;

use prismatica::cli::fixtures::fixture;
use prismatica::gauge::{
    check_cocycle, check_compatibility, check_degeneracy_rule, check_phillips_stone, Element, Group, GroupOps, TransitionFn, TransitionSet,
};
use prismatica::simplicial_core::GenId;

const CONFIGS: [&str; 4] = [
    include_str!("../data/z5.json"),
    include_str!("../data/s3.json"),
    include_str!("../data/so2.json"),
    include_str!("../data/so2_nonflat.json"),
];

fn parse<'a>(s: &'a prismatica::simplicial_core::SimplicialSet, text: &str) -> prismatica::Result<TransitionSet<'a>> {
    TransitionSet::from_json(s, &serde_json::from_str(text).unwrap())
}

#[test]
fn configs_round_trip_through_json() {
    let s = fixture("simplex2", 4).unwrap();
    for text in CONFIGS {
        let t = parse(&s, text).unwrap();
        let back = TransitionSet::from_json(&s, &t.to_json().unwrap()).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), back.entries().collect::<Vec<_>>());
        let (a, b) = (check_compatibility(&t, 5, 3).unwrap(), check_compatibility(&back, 5, 3).unwrap());
        assert_eq!((a.evaluations, a.max_discrepancy), (b.evaluations, b.max_discrepancy));
    }
}

#[test]
fn shipped_configs_satisfy_the_simplicial_laws() {
    let s = fixture("simplex2", 4).unwrap();
    for text in CONFIGS {
        let t = parse(&s, text).unwrap();
        assert!(check_compatibility(&t, 25, 0).unwrap().ok());
        assert!(check_cocycle(&t, 25, 0).unwrap().ok());
        assert!(check_degeneracy_rule(&t, 25, 0).unwrap().ok());
    }
}

#[test]
fn transport_boundary_conditions_fail_on_shipped_configs() {
    let s = fixture("simplex2", 4).unwrap();
    for text in CONFIGS {
        let ps = check_phillips_stone(&parse(&s, text).unwrap(), 10, 0).unwrap();
        assert!(!ps.cocycle.ok() || !ps.compatibility.ok());
    }
    let torus = fixture("torus7", 4).unwrap();
    let ps = check_phillips_stone(&TransitionSet::trivial(&torus, Group::Zmod { m: 5 }), 10, 0).unwrap();
    assert!(ps.cocycle.ok() && ps.compatibility.ok());
}

#[test]
fn bad_configs_are_rejected() {
    let s = fixture("simplex2", 4).unwrap();
    let bad = [
        r#"{"group":{"kind":"zmod","m":5},"values":{"0,1":7,"0,2":3,"1,2":2,"0,1,2":2}}"#,
        r#"{"group":{"kind":"zmod","m":5},"values":{"0,3":1}}"#,
        r#"{"group":{"kind":"perm","n":3},"values":{"0,1":[0,0,1]}}"#,
        r#"{"group":{"kind":"matrix","dim":2},"values":{"0,1":[[1,1],[1,1]]}}"#,
        r#"{"group":{"kind":"lie"},"values":{}}"#,
    ];
    for text in bad {
        assert!(parse(&s, text).is_err(), "{text}");
    }
}

fn perm(k: usize) -> Element {
    const ALL: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    Element::Perm(ALL[k].to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn edge_values_on_a_graph_are_unconstrained(ks in proptest::collection::vec(0usize..6, 3)) {
        let s = fixture("circle", 3).unwrap();
        let mut t = TransitionSet::new(&s, Group::Perm { n: 3 });
        for (index, k) in ks.iter().enumerate() {
            t.insert(GenId { dim: 1, index }, TransitionFn::Constant { value: perm(*k) }).unwrap();
        }
        prop_assert!(check_compatibility(&t, 3, 0).unwrap().ok());
        prop_assert!(check_cocycle(&t, 3, 0).unwrap().ok());
        prop_assert!(check_degeneracy_rule(&t, 3, 0).unwrap().ok());
    }

    #[test]
    fn perm_group_laws(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let g = Group::Perm { n: 3 };
        let (x, y, z) = (perm(a), perm(b), perm(c));
        prop_assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
        prop_assert_eq!(g.multiply(&x, &g.inverse(&x).unwrap()), g.identity());
        prop_assert_eq!(g.multiply(&g.identity(), &y), y);
    }
}
