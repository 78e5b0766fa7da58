//! The `.dgcat` file format: a JSON document describing a finite dg category
//! over ℚ. See `docs/dgcat-format.md` for the grammar.

use std::fmt;
use std::str::FromStr;

use hodgecor_core::dgcat::{validate, DgCategory};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, Location};

pub type Q = BigRational;

/// An exact rational written as `"p/q"`, `"p"` or a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub Q);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational \"p/q\" or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational(Q::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational(Q::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        let t = v.trim();
        let ok = !t.is_empty() && !t.starts_with('/') && !t.ends_with('/') && !t.contains('+');
        match Q::from_str(t) {
            Ok(q) if ok => Ok(Rational(q)),
            _ => Err(E::custom(format!("malformed rational {v:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

fn one() -> Rational {
    Rational(Q::one())
}

fn is_one(r: &Rational) -> bool {
    r.0.is_one()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomEntry {
    pub source: String,
    pub target: String,
    pub basis: Vec<BasisEntry>,
}

/// `d(from) += coeff·to` inside `Hom(hom[0], hom[1])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub hom: [String; 2],
    pub from: String,
    pub to: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub coeff: Rational,
}

/// `first·second += coeff·result` for `first: X→Y`, `second: Y→Z` (first, then second).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionEntry {
    pub objects: [String; 3],
    pub first: String,
    pub second: String,
    pub result: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityEntry {
    pub object: String,
    pub label: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgcatFile {
    pub objects: Vec<String>,
    pub homs: Vec<HomEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DifferentialEntry>,
    #[serde(default)]
    pub composition: Vec<CompositionEntry>,
    pub identities: Vec<IdentityEntry>,
}

pub(crate) fn json_location(file: &str, e: &serde_json::Error) -> Location {
    Location { file: file.to_string(), line: e.line().max(1), column: e.column().max(1) }
}

/// Syntax only: the document as written, without building the category.
pub fn parse_dgcat_file(text: &str, file: &str) -> Result<DgcatFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { location: json_location(file, &e), message: strip_position(&e) })
}

/// serde_json appends " at line L column C" to its messages; the location is
/// reported separately.
pub(crate) fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

impl DgcatFile {
    /// Builds and validates the category. Unknown names are reported with the
    /// path of the offending entry; failed axioms with their witnesses.
    pub fn build(&self) -> Result<DgCategory<Q>, CliError> {
        let mut b = DgCategory::<Q>::builder();
        let at = |path: String| move |e: hodgecor_core::dgcat::DgCatError| CliError::invalid("dg category", format!("{path}: {e}"));
        for (i, o) in self.objects.iter().enumerate() {
            b.object(o).map_err(at(format!("objects[{i}]")))?;
        }
        for (i, h) in self.homs.iter().enumerate() {
            for (j, e) in h.basis.iter().enumerate() {
                b.basis_element(&h.source, &h.target, &e.label, e.degree).map_err(at(format!("homs[{i}].basis[{j}]")))?;
            }
        }
        for (i, d) in self.differential.iter().enumerate() {
            b.differential(&d.hom[0], &d.hom[1], &d.from, &d.to, d.coeff.0.clone()).map_err(at(format!("differential[{i}]")))?;
        }
        for (i, c) in self.composition.iter().enumerate() {
            let [x, y, z] = &c.objects;
            b.composition(x, y, z, &c.first, &c.second, &c.result, c.coeff.0.clone())
                .map_err(at(format!("composition[{i}]")))?;
        }
        for (i, id) in self.identities.iter().enumerate() {
            b.identity(&id.object, &id.label, id.coeff.0.clone()).map_err(at(format!("identities[{i}]")))?;
        }
        let cat = b.build().map_err(at("identities".into()))?;
        let report = validate(&cat);
        if !report.is_valid() {
            return Err(CliError::Validation {
                context: "dg category axioms".into(),
                violations: report.violations.iter().map(ToString::to_string).collect(),
            });
        }
        Ok(cat)
    }

    /// The canonical document of a category: objects and basis in index order,
    /// table entries sorted by basis index.
    pub fn from_category(cat: &DgCategory<Q>) -> Self {
        let objects = cat.objects().to_vec();
        let name = |o: usize| objects[o].clone();
        let basis = cat.basis();
        let label = |e: usize| basis[e].label.clone();
        let mut homs = Vec::new();
        for s in 0..objects.len() {
            for t in 0..objects.len() {
                let idx = cat.hom(s, t);
                if !idx.is_empty() {
                    homs.push(HomEntry {
                        source: name(s),
                        target: name(t),
                        basis: idx.iter().map(|&e| BasisEntry { label: label(e), degree: basis[e].degree }).collect(),
                    });
                }
            }
        }
        let mut differential = Vec::new();
        for (e, b) in basis.iter().enumerate() {
            for (t, c) in cat.d(e) {
                if !c.is_zero() {
                    differential.push(DifferentialEntry {
                        hom: [name(b.source), name(b.target)],
                        from: label(e),
                        to: label(*t),
                        coeff: Rational(c.clone()),
                    });
                }
            }
        }
        let mut entries: Vec<_> = cat.composition_entries().collect();
        entries.sort_by_key(|(k, _)| **k);
        let mut composition = Vec::new();
        for ((f, g), terms) in entries {
            for (h, c) in terms {
                composition.push(CompositionEntry {
                    objects: [name(basis[*f].source), name(basis[*f].target), name(basis[*g].target)],
                    first: label(*f),
                    second: label(*g),
                    result: label(*h),
                    coeff: Rational(c.clone()),
                });
            }
        }
        let mut identities = Vec::new();
        for o in 0..objects.len() {
            for (e, c) in cat.identity(o) {
                identities.push(IdentityEntry { object: name(o), label: label(*e), coeff: Rational(c.clone()) });
            }
        }
        DgcatFile { objects, homs, differential, composition, identities }
    }
}

/// Parses, builds and validates a `.dgcat` document.
pub fn parse_dgcat(text: &str, file: &str) -> Result<DgCategory<Q>, CliError> {
    parse_dgcat_file(text, file)?.build()
}

pub fn serialize_dgcat(cat: &DgCategory<Q>) -> String {
    serde_json::to_string_pretty(&DgcatFile::from_category(cat)).expect("dgcat documents serialize")
}

/// The one-object category with `End = ℚ`.
pub const POINT_DGCAT: &str = include_str!("../../../docs/examples/point.dgcat");

#[cfg(test)]
mod tests {
    use super::*;
    use hodgecor_core::dgcat::samples;

    #[test]
    fn point_file_is_the_point_category() {
        let cat = parse_dgcat(POINT_DGCAT, "point.dgcat").unwrap();
        assert_eq!(cat.objects().len(), 1);
        assert_eq!(cat.basis().len(), 1);
        assert_eq!(DgcatFile::from_category(&cat), DgcatFile::from_category(&samples::point()));
    }

    #[test]
    fn malformed_rational_is_located() {
        let text = "{\n  \"objects\": [\"pt\"],\n  \"homs\": [{\"source\": \"pt\", \"target\": \"pt\", \"basis\": [{\"label\": \"1\", \"degree\": 0}]}],\n  \"composition\": [{\"objects\": [\"pt\", \"pt\", \"pt\"], \"first\": \"1\", \"second\": \"1\", \"result\": \"1\",\n    \"coeff\": \"3/\"}],\n  \"identities\": [{\"object\": \"pt\", \"label\": \"1\"}]\n}\n";
        match parse_dgcat(text, "bad.dgcat") {
            Err(CliError::Parse { location, message }) => {
                assert_eq!((location.line, location.file.as_str()), (5, "bad.dgcat"));
                // just past the closing quote of "3/"
                assert_eq!(location.column, 17);
                assert!(message.contains("malformed rational \"3/\""), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rationals() {
        let p = |s: &str| serde_json::from_str::<Rational>(s);
        assert_eq!(p("\"-3/6\"").unwrap().0, Q::new((-1).into(), 2.into()));
        assert_eq!(p("7").unwrap().0, Q::from_integer(7.into()));
        for bad in ["\"3/\"", "\"/3\"", "\"1/0\"", "\"x\"", "\"\"", "1.5"] {
            assert!(p(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn round_trip_on_samples() {
        for cat in [samples::point(), samples::matrix_algebra(2), samples::two_points(), samples::sphere_cohomology()] {
            let text = serialize_dgcat(&cat);
            let again = parse_dgcat(&text, "x").unwrap();
            assert_eq!(serialize_dgcat(&again), text);
        }
    }

    #[test]
    fn unknown_label_names_the_entry() {
        let mut f = DgcatFile::from_category(&samples::point());
        f.composition[0].second = "e".into();
        let e = f.build().unwrap_err();
        assert!(matches!(e, CliError::Validation { .. }));
        assert!(e.to_string().contains("composition[0]"), "{e}");
    }

    #[test]
    fn non_associative_table_names_the_triple() {
        let mut f = DgcatFile::from_category(&samples::matrix_algebra(2));
        // e01·e10 = 2·e00 breaks (e01·e10)·e01 = e01·(e10·e01)
        let k = f.composition.iter().position(|c| c.first == "e01" && c.second == "e10").unwrap();
        f.composition[k].coeff = Rational(Q::from_integer(2.into()));
        match f.build() {
            Err(CliError::Validation { violations, .. }) => {
                assert!(violations.iter().any(|v| v.starts_with("(e01:X→X·e10:X→X)·e01:X→X")), "{violations:?}");
            }
            other => panic!("{other:?}"),
        }
    }
}
