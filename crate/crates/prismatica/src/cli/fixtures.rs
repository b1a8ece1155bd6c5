use crate::error::{Error, Result};
use crate::simplicial_core::{NormalForm, OrderedComplex, SimplicialSet, SimplicialSetBuilder};

/// Names accepted by [`fixture`]; `triangle` is an alias of `simplex2`.
pub const FIXTURES: [&str; 9] = ["point", "interval", "circle", "simplex2", "torus7", "rp2_6", "mobius5", "two_edges", "loop"];

/// The fixtures that come from simplicial complexes.
pub fn fixture_complex(name: &str) -> Result<OrderedComplex> {
    let k = |n: usize, f: &[&[usize]]| OrderedComplex::from_facets(n, &f.iter().map(|x| x.to_vec()).collect::<Vec<_>>());
    Ok(match name {
        "point" => k(1, &[]),
        "interval" => k(2, &[&[0, 1]]),
        "circle" => k(3, &[&[0, 1], &[1, 2], &[0, 2]]),
        "simplex2" | "triangle" => k(3, &[&[0, 1, 2]]),
        "torus7" => {
            let mut facets = Vec::new();
            for i in 0..7 {
                facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
                facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
            }
            OrderedComplex::from_facets(7, &facets)
        }
        "rp2_6" => {
            k(6, &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5], &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[2, 4, 5], &[1, 3, 5]])
        }
        "mobius5" => k(5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[0, 3, 4], &[0, 1, 4]]),
        "two_edges" => k(4, &[&[0, 1], &[2, 3]]),
        _ => return Err(Error::Invalid(format!("no complex fixture named {name:?}"))),
    })
}

/// A fixture as a simplicial set truncated at `d` (raised to its top generator
/// dimension if needed). `loop` is one vertex with one edge attached at both ends.
pub fn fixture(name: &str, d: usize) -> Result<SimplicialSet> {
    if name == "loop" {
        let mut b = SimplicialSetBuilder::new(d.max(1));
        let v = NormalForm::of(b.add_generator(0, Some("v".into()), vec![])?);
        b.add_generator(1, Some("e".into()), vec![v.clone(), v])?;
        return Ok(b.build());
    }
    let s = SimplicialSet::from_complex(&fixture_complex(name)?)?;
    let d = d.max(s.truncation());
    s.with_truncation(d)
}
