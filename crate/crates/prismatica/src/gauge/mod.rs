mod checks;
mod group;
mod transition;

pub use checks::{
    check_cocycle, check_compatibility, check_degeneracy_rule, check_phillips_stone, pl_path, random_simplex_point, sample_points,
    simplex_rng, transport_v, GaugeReport, GaugeViolation, PhillipsStoneReport,
};
pub use group::{rotation, Element, Group, GroupOps, MATRIX_TOL};
pub use transition::{normalize_constant, FaceSpec, TransitionFn, TransitionSet};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::cli::fixtures::fixture;
    use crate::simplicial_core::{GenId, NormalForm, SimplicialSet};

    const SAMPLES: usize = 25;

    fn load<'a>(s: &'a SimplicialSet, text: &str) -> TransitionSet<'a> {
        TransitionSet::from_json(s, &serde_json::from_str(text).unwrap()).unwrap()
    }

    fn triangle() -> SimplicialSet {
        fixture("simplex2", 4).unwrap()
    }

    fn top(s: &SimplicialSet) -> NormalForm {
        NormalForm::of(GenId { dim: 2, index: 0 }).clone().tap(|x| assert_eq!(s.vertices(x).unwrap(), vec![0, 1, 2]))
    }

    trait Tap: Sized {
        fn tap(self, f: impl FnOnce(&Self)) -> Self {
            f(&self);
            self
        }
    }
    impl<T> Tap for T {}

    #[test]
    fn fixture_configs_pass() {
        let s = triangle();
        for text in [include_str!("../../data/z5.json"), include_str!("../../data/s3.json"), include_str!("../../data/so2.json")] {
            let t = load(&s, text);
            let c = check_compatibility(&t, SAMPLES, 0).unwrap();
            assert!(c.ok(), "{:?}", c.violations.first());
            assert!(c.evaluations >= 2 * SAMPLES);
            let k = check_cocycle(&t, SAMPLES, 0).unwrap();
            assert!(k.ok(), "{:?}", k.violations.first());
        }
    }

    #[test]
    fn nonflat_rotation_is_still_compatible() {
        let s = triangle();
        let t = load(&s, include_str!("../../data/so2_nonflat.json"));
        assert!(check_compatibility(&t, SAMPLES, 0).unwrap().ok());
        assert!(check_cocycle(&t, SAMPLES, 0).unwrap().ok());
    }

    #[test]
    fn perturbed_edge_is_located() {
        let s = triangle();
        let mut t = load(&s, include_str!("../../data/z5.json"));
        let e12 = s.simplex_from_vertices(&[1, 2]).unwrap().gen;
        t.insert(e12, TransitionFn::Constant { value: Element::Mod(4) }).unwrap();
        let rep = check_compatibility(&t, SAMPLES, 0).unwrap();
        assert!(!rep.ok());
        assert!(rep.violations.iter().all(|v| v.simplex == "<0,1,2>" && v.check == "compatibility ε^0"));
    }

    #[test]
    fn trivial_set_passes_everything() {
        for name in ["circle", "simplex2", "torus7", "loop"] {
            let s = fixture(name, 4).unwrap();
            let t = TransitionSet::trivial(&s, Group::Perm { n: 3 });
            assert!(check_compatibility(&t, 5, 1).unwrap().ok());
            assert!(check_cocycle(&t, 5, 1).unwrap().ok());
            let ps = check_phillips_stone(&t, 5, 1).unwrap();
            assert!(ps.cocycle.ok() && ps.compatibility.ok());
        }
    }

    #[test]
    fn face_values() {
        let s = triangle();
        let t = load(&s, include_str!("../../data/z5.json"));
        let x = top(&s);
        let g = t.group();
        let at = |spec: FaceSpec, pt: &[f64]| t.extend_to_faces(&x, &spec).unwrap().eval(g, pt).unwrap();
        assert_eq!(at(FaceSpec::IteratedLast { i: 1 }, &[1.0]), Element::Mod(3));
        assert_eq!(at(FaceSpec::IteratedLast { i: 2 }, &[0.3, 0.7]), Element::Mod(2));
        assert_eq!(at(FaceSpec::Single { i: 0 }, &[0.5, 0.5]), Element::Mod(0));
        assert_eq!(at(FaceSpec::Composite { kept: vec![1] }, &[1.0]), Element::Mod(2));
        assert_eq!(at(FaceSpec::Composite { kept: vec![2] }, &[1.0]), Element::Mod(0));
        assert_eq!(at(FaceSpec::Composite { kept: vec![0] }, &[1.0]), Element::Mod(3));
        assert!(matches!(t.extend_to_faces(&x, &FaceSpec::IteratedLast { i: 0 }), Err(crate::Error::UnsupportedFaceSpec(_))));
    }

    #[test]
    fn missing_entry() {
        let s = triangle();
        let t = TransitionSet::new(&s, Group::Zmod { m: 5 });
        assert!(matches!(check_compatibility(&t, 1, 0), Err(crate::Error::MissingEntry(_))));
    }

    #[test]
    fn degenerate_values() {
        let s = fixture("loop", 4).unwrap();
        let mut t = TransitionSet::new(&s, Group::Zmod { m: 5 });
        let e = GenId { dim: 1, index: 0 };
        t.insert(e, TransitionFn::Constant { value: Element::Mod(2) }).unwrap();
        let x = NormalForm::of(e);
        let g = t.group();
        assert_eq!(t.v(&s.degeneracy(&x, 0).unwrap()).unwrap().eval(g, &[0.5, 0.5]).unwrap(), Element::Mod(2));
        assert_eq!(t.v(&s.degeneracy(&x, 1).unwrap()).unwrap().eval(g, &[0.5, 0.5]).unwrap(), Element::Mod(0));
        assert!(check_degeneracy_rule(&t, 5, 0).unwrap().ok());
        let s3 = triangle();
        let t3 = load(&s3, include_str!("../../data/s3.json"));
        assert!(check_degeneracy_rule(&t3, 5, 0).unwrap().ok());
    }

    #[test]
    fn path_points() {
        let (pts, t) = pl_path(2, &[1.0]).unwrap();
        assert_eq!(pts, vec![vec![0.0, 1.0, 0.0]]);
        assert_eq!(t, vec![0.0, 1.0]);
        let (_, t) = pl_path(2, &[0.0]).unwrap();
        assert_eq!(t, vec![1.0, 0.0]);
        let (s1, s2) = (0.3, 0.6);
        let (pts, _) = pl_path(3, &[s1, s2]).unwrap();
        let want = [(1.0 - s2) * (1.0 - s1), (1.0 - s2) * s1, s2, 0.0];
        assert!(pts[1].iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
        assert!(pl_path(2, &[1.5]).is_err());
        assert_eq!(pl_path(1, &[]).unwrap().1, vec![1.0]);
    }

    #[test]
    fn transport_constant() {
        let s = triangle();
        let t = load(&s, include_str!("../../data/z5.json"));
        for c in [0.0, 0.4, 1.0] {
            assert_eq!(transport_v(&t, &top(&s), &[c]).unwrap(), Element::Mod(2));
        }
    }

    #[test]
    fn normalization_recovers_the_normalized_set() {
        let s = triangle();
        let t = load(&s, include_str!("../../data/s3.json"));
        let g = *t.group();
        let h = |k: usize| {
            Element::Perm(match k % 3 {
                0 => vec![1, 2, 0],
                1 => vec![0, 2, 1],
                _ => vec![2, 1, 0],
            })
        };
        let mut family = BTreeMap::new();
        let mut hs: BTreeMap<GenId, Element> = BTreeMap::new();
        for (k, gen) in s.all_generators().enumerate() {
            hs.insert(gen, if gen.dim == 0 { g.identity() } else { h(k) });
        }
        for gen in s.all_generators().filter(|g| g.dim >= 1) {
            let x = NormalForm::of(gen);
            for i in 0..=gen.dim {
                let v = if i == gen.dim { t.v(&x).unwrap().eval(&g, &vec![0.5; gen.dim]).unwrap() } else { g.identity() };
                let face = s.face(&x, i).unwrap().gen;
                let w = g.multiply(&g.multiply(&g.inverse(&hs[&gen]).unwrap(), &v), &hs[&face]);
                family.insert((gen, i), w);
            }
        }
        let (norm, residual) = normalize_constant(&s, g, &family).unwrap();
        assert!(residual.is_empty(), "{residual:?}");
        for (gen, f) in norm.entries() {
            let x = NormalForm::of(*gen);
            let pt = vec![1.0 / gen.dim as f64; gen.dim];
            assert_eq!(f.eval(&g, &pt).unwrap(), t.v(&x).unwrap().eval(&g, &pt).unwrap());
        }
    }
}
