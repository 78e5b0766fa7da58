use std::fmt;

use serde::Serialize;

use crate::graded::{parity_sign, Scalar};

use super::presentation::{push_term, DgCategory};

/// One failed dg-category axiom, with the basis vectors that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// `d` of `element` has a term outside its Hom space or not in degree + 1.
    DifferentialDegree { element: String, term: String },
    /// `compose(first, second)` has a term of the wrong Hom space or degree.
    CompositionDegree { first: String, second: String, term: String },
    /// A composition entry for a non-composable pair.
    NotComposable { first: String, second: String },
    IdentityDegree { object: String },
    IdentityNotClosed { object: String },
    SquareNonZero { element: String },
    NonAssociative { first: String, second: String, third: String },
    LeftUnit { object: String, element: String },
    RightUnit { object: String, element: String },
    Leibniz { first: String, second: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DifferentialDegree { element, term } => write!(f, "d({element}) has misplaced term {term}"),
            Violation::CompositionDegree { first, second, term } => {
                write!(f, "{first}·{second} has misplaced term {term}")
            }
            Violation::NotComposable { first, second } => write!(f, "{first}·{second} is not composable"),
            Violation::IdentityDegree { object } => write!(f, "identity of {object} is not in degree 0"),
            Violation::IdentityNotClosed { object } => write!(f, "d(id_{object}) ≠ 0"),
            Violation::SquareNonZero { element } => write!(f, "d(d({element})) ≠ 0"),
            Violation::NonAssociative { first, second, third } => {
                write!(f, "({first}·{second})·{third} ≠ {first}·({second}·{third})")
            }
            Violation::LeftUnit { object, element } => write!(f, "id_{object}·{element} ≠ {element}"),
            Violation::RightUnit { object, element } => write!(f, "{element}·id_{object} ≠ {element}"),
            Violation::Leibniz { first, second } => write!(f, "Leibniz rule fails on ({first}, {second})"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

type Vector<S> = Vec<(usize, S)>;

fn scaled<S: Scalar>(v: &[(usize, S)], c: &S) -> Vector<S> {
    let mut out = Vec::new();
    for (i, x) in v {
        push_term(&mut out, *i, x.clone() * c.clone());
    }
    out
}

fn sum<S: Scalar>(a: &[(usize, S)], b: &[(usize, S)]) -> Vector<S> {
    let mut out = a.to_vec();
    for (i, x) in b {
        push_term(&mut out, *i, x.clone());
    }
    out
}

fn is_zero<S: Scalar>(v: &[(usize, S)]) -> bool {
    v.iter().all(|(_, x)| x.is_zero())
}

impl<S: Scalar> DgCategory<S> {
    pub(crate) fn d_vec(&self, v: &[(usize, S)]) -> Vector<S> {
        let mut out = Vec::new();
        for (i, c) in v {
            for (j, x) in self.d(*i) {
                push_term(&mut out, *j, x.clone() * c.clone());
            }
        }
        out
    }

    pub(crate) fn compose_vec(&self, u: &[(usize, S)], v: &[(usize, S)]) -> Vector<S> {
        let mut out = Vec::new();
        for (i, a) in u {
            for (j, b) in v {
                for (k, x) in self.compose(*i, *j) {
                    push_term(&mut out, *k, x.clone() * a.clone() * b.clone());
                }
            }
        }
        out
    }

    fn name(&self, idx: usize) -> String {
        let b = self.element(idx);
        format!("{}:{}→{}", b.label, self.objects()[b.source], self.objects()[b.target])
    }
}

/// Checks every dg-category axiom on basis vectors and reports each failure.
pub fn validate<S: Scalar>(cat: &DgCategory<S>) -> ValidationReport {
    let mut violations = Vec::new();
    let basis = cat.basis();

    for (i, b) in basis.iter().enumerate() {
        for (j, _) in cat.d(i) {
            let t = &basis[*j];
            if t.source != b.source || t.target != b.target || t.degree != b.degree + 1 {
                violations.push(Violation::DifferentialDegree { element: cat.name(i), term: cat.name(*j) });
            }
        }
    }
    let mut entries: Vec<_> = cat.composition_entries().collect();
    entries.sort_by_key(|(k, _)| **k);
    for (&(f, g), terms) in entries {
        let (bf, bg) = (&basis[f], &basis[g]);
        if bf.target != bg.source {
            violations.push(Violation::NotComposable { first: cat.name(f), second: cat.name(g) });
            continue;
        }
        for (h, _) in terms {
            let bh = &basis[*h];
            if bh.source != bf.source || bh.target != bg.target || bh.degree != bf.degree + bg.degree {
                violations.push(Violation::CompositionDegree {
                    first: cat.name(f),
                    second: cat.name(g),
                    term: cat.name(*h),
                });
            }
        }
    }
    for (o, name) in cat.objects().iter().enumerate() {
        let id = cat.identity(o);
        if id.iter().any(|(e, _)| basis[*e].degree != 0 || basis[*e].source != o || basis[*e].target != o) {
            violations.push(Violation::IdentityDegree { object: name.clone() });
        }
        if !is_zero(&cat.d_vec(id)) {
            violations.push(Violation::IdentityNotClosed { object: name.clone() });
        }
    }
    if !violations.is_empty() {
        // The remaining checks assume well-typed tables.
        return ValidationReport { violations };
    }

    for i in 0..basis.len() {
        if !is_zero(&cat.d_vec(cat.d(i))) {
            violations.push(Violation::SquareNonZero { element: cat.name(i) });
        }
    }
    for (f, bf) in basis.iter().enumerate() {
        let one_f = [(f, S::one())];
        let left = cat.compose_vec(cat.identity(bf.source), &one_f);
        if !is_zero(&sum(&left, &scaled(&one_f, &-S::one()))) {
            violations.push(Violation::LeftUnit { object: cat.objects()[bf.source].clone(), element: cat.name(f) });
        }
        let right = cat.compose_vec(&one_f, cat.identity(bf.target));
        if !is_zero(&sum(&right, &scaled(&one_f, &-S::one()))) {
            violations.push(Violation::RightUnit { object: cat.objects()[bf.target].clone(), element: cat.name(f) });
        }
        for z in 0..cat.objects().len() {
            for &g in cat.hom(bf.target, z) {
                let one_g = [(g, S::one())];
                let fg = cat.compose_vec(&one_f, &one_g);
                // d(fg) = d(f)g + (-1)^|f| f d(g)
                let lhs = cat.d_vec(&fg);
                let sign = S::from_i64(parity_sign(bf.degree as i64) as i64);
                let rhs = sum(
                    &cat.compose_vec(cat.d(f), &one_g),
                    &scaled(&cat.compose_vec(&one_f, cat.d(g)), &sign),
                );
                if !is_zero(&sum(&lhs, &scaled(&rhs, &-S::one()))) {
                    violations.push(Violation::Leibniz { first: cat.name(f), second: cat.name(g) });
                }
                for w in 0..cat.objects().len() {
                    for &h in cat.hom(z, w) {
                        let one_h = [(h, S::one())];
                        let a = cat.compose_vec(&fg, &one_h);
                        let b = cat.compose_vec(&one_f, &cat.compose_vec(&one_g, &one_h));
                        if !is_zero(&sum(&a, &scaled(&b, &-S::one()))) {
                            violations.push(Violation::NonAssociative {
                                first: cat.name(f),
                                second: cat.name(g),
                                third: cat.name(h),
                            });
                        }
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}
