use serde::Serialize;

use super::set::{NormalForm, SimplicialSet};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub identity: String,
    pub simplex: NormalForm,
    pub lhs: NormalForm,
    pub rhs: NormalForm,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every simplicial identity on every simplex whose operands stay
/// within the truncation bound. Errors from the face tables are reported as
/// violations with the offending simplex on both sides.
pub fn verify_identities(s: &SimplicialSet) -> IdentityReport {
    let mut rep = IdentityReport::default();
    let top = s.truncation();
    for n in 0..=top {
        let Ok(cells) = s.simplices(n) else { continue };
        for x in &cells {
            check_simplex(s, x, n, top, &mut rep);
        }
    }
    rep
}

fn record(rep: &mut IdentityReport, name: String, x: &NormalForm, lhs: Result<NormalForm>, rhs: Result<NormalForm>) {
    rep.checked += 1;
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if l == r => {}
        (l, r) => rep.violations.push(IdentityViolation {
            identity: name,
            simplex: x.clone(),
            lhs: l.unwrap_or_else(|_| x.clone()),
            rhs: r.unwrap_or_else(|_| x.clone()),
        }),
    }
}

fn check_simplex(s: &SimplicialSet, x: &NormalForm, n: usize, top: usize, rep: &mut IdentityReport) {
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                let lhs = s.face(x, j).and_then(|y| s.face(&y, i));
                let rhs = s.face(x, i).and_then(|y| s.face(&y, j - 1));
                record(rep, format!("d{i} d{j} = d{} d{i}", j - 1), x, lhs, rhs);
            }
        }
    }
    if n + 2 <= top {
        for j in 0..=n {
            for i in 0..=j {
                let lhs = s.degeneracy(x, j).and_then(|y| s.degeneracy(&y, i));
                let rhs = s.degeneracy(x, i).and_then(|y| s.degeneracy(&y, j + 1));
                record(rep, format!("s{i} s{j} = s{} s{i}", j + 1), x, lhs, rhs);
            }
        }
    }
    if n < top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = s.degeneracy(x, j).and_then(|y| s.face(&y, i));
                let (name, rhs) = if i < j {
                    (format!("d{i} s{j} = s{} d{i}", j - 1), s.face(x, i).and_then(|y| s.degeneracy(&y, j - 1)))
                } else if i == j || i == j + 1 {
                    (format!("d{i} s{j} = id"), Ok(x.clone()))
                } else {
                    (format!("d{i} s{j} = s{j} d{}", i - 1), s.face(x, i - 1).and_then(|y| s.degeneracy(&y, j)))
                };
                record(rep, name, x, lhs, rhs);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial_core::complex::OrderedComplex;
    use crate::simplicial_core::set::{GenId, SimplicialSetBuilder};

    #[test]
    fn complexes_satisfy_identities() {
        let k = OrderedComplex::from_facets(4, &[vec![0, 1, 2], vec![1, 2, 3]]);
        let s = SimplicialSet::from_complex(&k).unwrap().with_truncation(4).unwrap();
        let rep = verify_identities(&s);
        assert!(rep.ok(), "{:?}", rep.violations.first());
        assert!(rep.checked > 100);
    }

    #[test]
    fn empty_set_passes() {
        assert!(verify_identities(&SimplicialSet::empty()).ok());
    }

    #[test]
    fn swapped_faces_are_caught() {
        let mut b = SimplicialSetBuilder::new(2);
        let v: Vec<GenId> = (0..3).map(|_| b.add_generator(0, None, vec![]).unwrap()).collect();
        let nf = |g: GenId| NormalForm::of(g);
        let e01 = b.add_generator(1, None, vec![nf(v[1]), nf(v[0])]).unwrap();
        let e02 = b.add_generator(1, None, vec![nf(v[2]), nf(v[0])]).unwrap();
        let e12 = b.add_generator(1, None, vec![nf(v[2]), nf(v[1])]).unwrap();
        // correct order would be (e12, e02, e01); d_0 and d_1 swapped
        b.add_generator(2, None, vec![nf(e02), nf(e12), nf(e01)]).unwrap();
        let rep = verify_identities(&b.build());
        let names: Vec<&str> = rep.violations.iter().map(|v| v.identity.as_str()).collect();
        // both swapped faces end at v2, so d0 d1 = d0 d0 survives the swap
        assert!(names.contains(&"d0 d2 = d1 d0"));
        assert!(names.contains(&"d1 d2 = d1 d1"));
        assert!(!names.contains(&"d0 d1 = d0 d0"));
    }

    #[test]
    fn swapped_last_faces_break_d0_d1() {
        let mut b = SimplicialSetBuilder::new(2);
        let v: Vec<GenId> = (0..3).map(|_| b.add_generator(0, None, vec![]).unwrap()).collect();
        let nf = |g: GenId| NormalForm::of(g);
        let e01 = b.add_generator(1, None, vec![nf(v[1]), nf(v[0])]).unwrap();
        let e02 = b.add_generator(1, None, vec![nf(v[2]), nf(v[0])]).unwrap();
        let e12 = b.add_generator(1, None, vec![nf(v[2]), nf(v[1])]).unwrap();
        b.add_generator(2, None, vec![nf(e12), nf(e01), nf(e02)]).unwrap();
        let rep = verify_identities(&b.build());
        assert!(rep.violations.iter().any(|v| v.identity == "d0 d1 = d0 d0"));
    }
}
