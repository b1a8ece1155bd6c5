use prismatica::cli::fixtures::{fixture, fixture_complex};
use prismatica::prismatic::{MultiDegree, PrismaticSet};
use prismatica::star::{check_pbar, check_pbar_faces, in_star, pbar, pbar_inverse, st_iso, star_cells, star_complex};

#[test]
fn star_complex_of_an_edge() {
    let st = star_complex(&fixture_complex("interval").unwrap()).unwrap();
    assert_eq!(st.vertices.len(), 4);
    let s = prismatica::simplicial_core::SimplicialSet::from_complex(&st).unwrap();
    assert_eq!((s.generator_count(0), s.generator_count(1), s.generator_count(2), s.generator_count(3)), (4, 5, 2, 0));
}

#[test]
fn st_iso_is_bijective_on_small_complexes() {
    for name in ["point", "interval", "circle"] {
        for d in st_iso(&fixture_complex(name).unwrap(), 4).unwrap() {
            assert!(d.bijective, "{name} {d:?}");
            assert_eq!(d.complex_side, d.set_side);
        }
    }
}

#[test]
fn st_iso_on_a_filled_triangle_is_not_bijective() {
    let dims = st_iso(&fixture_complex("simplex2").unwrap(), 1).unwrap();
    assert!(dims[0].bijective);
    assert_eq!((dims[1].complex_side, dims[1].set_side, dims[1].outside_image), (36, 34, 2));
}

#[test]
fn pbar_lands_in_the_star_and_commutes_with_faces() {
    for name in ["circle", "simplex2", "loop"] {
        let s = fixture(name, 7).unwrap();
        let degs = MultiDegree::bounded(1, 2);
        let rep = check_pbar_faces(&s, &degs).unwrap();
        assert!(rep.violations.is_empty(), "{name}: {:?}", rep.violations.first());
        assert!(rep.checked > 0);
        for deg in &degs {
            for g in PrismaticSet::pbar(&s).cells(deg).unwrap() {
                let c = pbar(&s, &g).unwrap();
                assert!(in_star(&s, &c.sigma, &c.tau).unwrap(), "{name} {g}");
            }
        }
    }
}

#[test]
fn inverse_undoes_pbar_on_complexes() {
    let s = fixture("simplex2", 8).unwrap();
    for deg in MultiDegree::bounded(2, 1) {
        for g in PrismaticSet::pbar(&s).cells(&deg).unwrap() {
            assert_eq!(pbar_inverse(&s, &pbar(&s, &g).unwrap()).unwrap(), g);
        }
    }
}

#[test]
fn pbar_is_injective_but_misses_star_cells() {
    let s = fixture("circle", 7).unwrap();
    let degs: Vec<MultiDegree> = ["0,0", "0,1", "1,0,0"].iter().map(|d| d.parse().unwrap()).collect();
    let reps = check_pbar(&s, &degs).unwrap();
    let counts: Vec<(usize, usize, usize)> = reps.iter().map(|r| (r.pbar_cells, r.star_cells, r.unreached_count)).collect();
    assert_eq!(counts, vec![(6, 9, 3), (9, 15, 6), (12, 24, 12)]);
    for r in &reps {
        assert_eq!(r.image, r.pbar_cells);
        assert_eq!(r.inverse_after_pbar_failures, Some(0));
        assert_eq!(star_cells(&s, &r.deg).unwrap().len(), r.star_cells);
    }
}
