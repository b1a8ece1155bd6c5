use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

/// Tolerance for the matrix backend.
pub const MATRIX_TOL: f64 = 1e-9;

/// The group interface used by transition functions. `tol` is ignored by
/// exact backends.
pub trait GroupOps {
    type Elem;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem, tol: f64) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Group {
    /// Integers mod `m` under addition.
    Zmod { m: u64 },
    /// Permutations of `0..n`, composed as functions: `(ab)(i) = a(b(i))`.
    Perm { n: usize },
    /// Invertible real `dim × dim` matrices.
    Matrix { dim: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Mod(u64),
    Perm(Vec<usize>),
    Matrix(DMatrix<f64>),
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Element::Mod(x) => s.serialize_u64(*x),
            Element::Perm(p) => p.serialize(s),
            Element::Matrix(m) => {
                let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
                rows.serialize(s)
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

pub fn rotation(angle: f64) -> Element {
    let (s, c) = angle.sin_cos();
    Element::Matrix(DMatrix::from_row_slice(2, 2, &[c, -s, s, c]))
}

impl Group {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Group::Matrix { .. })
    }

    /// Comparison tolerance of this backend.
    pub fn tolerance(&self) -> f64 {
        if self.is_exact() {
            0.0
        } else {
            MATRIX_TOL
        }
    }

    /// 0 for equal elements; for matrices, the largest entrywise difference.
    pub fn distance(&self, a: &Element, b: &Element) -> f64 {
        match (a, b) {
            (Element::Matrix(x), Element::Matrix(y)) => (x - y).amax(),
            _ => {
                if a == b {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        let ok = match (self, e) {
            (Group::Zmod { m }, Element::Mod(x)) => x < m,
            (Group::Perm { n }, Element::Perm(p)) => {
                let mut seen = vec![false; *n];
                p.len() == *n && p.iter().all(|&i| i < *n && !std::mem::replace(&mut seen[i], true))
            }
            (Group::Matrix { dim }, Element::Matrix(m)) => {
                m.nrows() == *dim && m.ncols() == *dim && m.iter().all(|x| x.is_finite()) && m.determinant().abs() > MATRIX_TOL
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{e} is not an element of {self:?}")))
        }
    }

    /// Parses an element: an integer for `zmod`, an array for `perm`, rows for
    /// `matrix`, or `{"angle": a}` for a 2×2 rotation.
    pub fn parse_element(&self, v: &Value) -> Result<Element> {
        let bad = || Error::Invalid(format!("cannot read {v} as an element of {self:?}"));
        let e = match self {
            Group::Zmod { .. } => Element::Mod(v.as_u64().ok_or_else(bad)?),
            Group::Perm { .. } => Element::Perm(serde_json::from_value::<Vec<usize>>(v.clone()).map_err(|_| bad())?),
            Group::Matrix { dim } => {
                if let Some(a) = v.get("angle") {
                    if *dim != 2 {
                        return Err(bad());
                    }
                    rotation(a.as_f64().ok_or_else(bad)?)
                } else {
                    let rows: Vec<Vec<f64>> = serde_json::from_value(v.clone()).map_err(|_| bad())?;
                    if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                        return Err(bad());
                    }
                    Element::Matrix(DMatrix::from_row_iterator(*dim, *dim, rows.into_iter().flatten()))
                }
            }
        };
        self.check(&e)?;
        Ok(e)
    }
}

impl GroupOps for Group {
    type Elem = Element;

    fn identity(&self) -> Element {
        match *self {
            Group::Zmod { .. } => Element::Mod(0),
            Group::Perm { n } => Element::Perm((0..n).collect()),
            Group::Matrix { dim } => Element::Matrix(DMatrix::identity(dim, dim)),
        }
    }

    fn multiply(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (Group::Zmod { m }, Element::Mod(x), Element::Mod(y)) => Element::Mod((x + y) % m),
            (_, Element::Perm(x), Element::Perm(y)) => Element::Perm(y.iter().map(|&i| x[i]).collect()),
            (_, Element::Matrix(x), Element::Matrix(y)) => Element::Matrix(x * y),
            _ => panic!("mixed group elements {a} and {b}"),
        }
    }

    fn inverse(&self, a: &Element) -> Result<Element> {
        Ok(match (self, a) {
            (Group::Zmod { m }, Element::Mod(x)) => Element::Mod((m - x % m) % m),
            (_, Element::Perm(x)) => {
                let mut inv = vec![0; x.len()];
                for (i, &v) in x.iter().enumerate() {
                    inv[v] = i;
                }
                Element::Perm(inv)
            }
            (_, Element::Matrix(x)) => {
                Element::Matrix(x.clone().try_inverse().ok_or_else(|| Error::Invalid(format!("singular matrix {a}")))?)
            }
            _ => return Err(Error::Invalid(format!("{a} is not an element of {self:?}"))),
        })
    }

    fn equal(&self, a: &Element, b: &Element, tol: f64) -> bool {
        self.distance(a, b) <= tol
    }
}
