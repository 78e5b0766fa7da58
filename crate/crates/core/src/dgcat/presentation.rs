use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use crate::graded::{GradedVectorSpace, HomComplex, Matrix, Scalar};

use super::DgCatError;

/// One basis vector of some `Hom(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub label: String,
    pub degree: i32,
}

/// Finite presentation of a small dg category.
///
/// All basis vectors of all Hom spaces share one global index space. The
/// composition `Hom(X, Y) ⊗ Hom(Y, Z) → Hom(X, Z)` is written in diagrammatic
/// order: `compose(f, g)` is "first `f`, then `g`".
#[derive(Debug, Clone)]
pub struct DgCategory<S> {
    objects: Vec<String>,
    basis: Vec<BasisElement>,
    /// `hom_index[x][y]` lists global indices of the basis of `Hom(x, y)`.
    hom_index: Vec<Vec<Vec<usize>>>,
    differential: Vec<Vec<(usize, S)>>,
    composition: HashMap<(usize, usize), Vec<(usize, S)>>,
    identities: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> DgCategory<S> {
    pub fn builder() -> DgCategoryBuilder<S> {
        DgCategoryBuilder::default()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, idx: usize) -> &BasisElement {
        &self.basis[idx]
    }

    /// Global indices of the basis of `Hom(source, target)`.
    pub fn hom(&self, source: usize, target: usize) -> &[usize] {
        &self.hom_index[source][target]
    }

    pub fn find(&self, source: usize, target: usize, label: &str) -> Option<usize> {
        self.hom(source, target).iter().copied().find(|&i| self.basis[i].label == label)
    }

    /// `d(e_idx)` as a sparse combination of basis vectors.
    pub fn d(&self, idx: usize) -> &[(usize, S)] {
        &self.differential[idx]
    }

    /// `compose(f, g)`, empty when the pair is not composable or the product vanishes.
    pub fn compose(&self, f: usize, g: usize) -> &[(usize, S)] {
        self.composition.get(&(f, g)).map_or(&[], Vec::as_slice)
    }

    pub fn composition_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, S)>)> {
        self.composition.iter()
    }

    pub fn identity(&self, object: usize) -> &[(usize, S)] {
        &self.identities[object]
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let min = self.basis.iter().map(|b| b.degree).min()?;
        let max = self.basis.iter().map(|b| b.degree).max()?;
        Some((min, max))
    }

    /// The Hom complex `Hom(source, target)` with its differential.
    pub fn hom_complex(&self, source: usize, target: usize) -> Result<HomComplex<S>, DgCatError> {
        let idx = self.hom(source, target);
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for &i in idx {
            by_degree.entry(self.basis[i].degree).or_default().push(i);
        }
        let space = GradedVectorSpace::from_basis(
            by_degree
                .iter()
                .map(|(d, v)| (*d, v.iter().map(|&i| self.basis[i].label.clone()).collect())),
        );
        let mut diffs = BTreeMap::new();
        for (&deg, src) in &by_degree {
            let Some(dst) = by_degree.get(&(deg + 1)) else { continue };
            let mut m = Matrix::zeros(dst.len(), src.len());
            for (c, &i) in src.iter().enumerate() {
                for (j, v) in &self.differential[i] {
                    if let Some(r) = dst.iter().position(|x| x == j) {
                        m.add_to(r, c, v.clone());
                    }
                }
            }
            diffs.insert(deg, m);
        }
        HomComplex::new(space, diffs).map_err(DgCatError::from)
    }

    /// Exact copy; fails for approximate scalars.
    pub fn to_exact(&self) -> Result<DgCategory<BigRational>, DgCatError> {
        let conv = |v: &[(usize, S)]| -> Result<Vec<(usize, BigRational)>, DgCatError> {
            v.iter()
                .map(|(i, s)| s.to_rational().map(|q| (*i, q)).ok_or(DgCatError::NotExact))
                .collect()
        };
        Ok(DgCategory {
            objects: self.objects.clone(),
            basis: self.basis.clone(),
            hom_index: self.hom_index.clone(),
            differential: self.differential.iter().map(|v| conv(v)).collect::<Result<_, _>>()?,
            composition: self
                .composition
                .iter()
                .map(|(k, v)| conv(v).map(|v| (*k, v)))
                .collect::<Result<_, _>>()?,
            identities: self.identities.iter().map(|v| conv(v)).collect::<Result<_, _>>()?,
        })
    }
}

/// Incremental construction by object name and basis label.
#[derive(Debug, Clone)]
pub struct DgCategoryBuilder<S> {
    objects: Vec<String>,
    basis: Vec<BasisElement>,
    differential: Vec<(usize, usize, S)>,
    composition: Vec<(usize, usize, usize, S)>,
    identities: BTreeMap<usize, Vec<(usize, S)>>,
}

impl<S> Default for DgCategoryBuilder<S> {
    fn default() -> Self {
        DgCategoryBuilder {
            objects: Vec::new(),
            basis: Vec::new(),
            differential: Vec::new(),
            composition: Vec::new(),
            identities: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> DgCategoryBuilder<S> {
    pub fn object(&mut self, name: &str) -> Result<usize, DgCatError> {
        if self.objects.iter().any(|o| o == name) {
            return Err(DgCatError::DuplicateObject(name.to_string()));
        }
        self.objects.push(name.to_string());
        Ok(self.objects.len() - 1)
    }

    fn obj(&self, name: &str) -> Result<usize, DgCatError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| DgCatError::UnknownObject(name.to_string()))
    }

    pub fn basis_element(&mut self, source: &str, target: &str, label: &str, degree: i32) -> Result<usize, DgCatError> {
        let (s, t) = (self.obj(source)?, self.obj(target)?);
        if self.basis.iter().any(|b| b.source == s && b.target == t && b.label == label) {
            return Err(DgCatError::DuplicateBasis { domain: source.into(), codomain: target.into(), label: label.into() });
        }
        self.basis.push(BasisElement { source: s, target: t, label: label.to_string(), degree });
        Ok(self.basis.len() - 1)
    }

    pub fn lookup(&self, source: &str, target: &str, label: &str) -> Result<usize, DgCatError> {
        let (s, t) = (self.obj(source)?, self.obj(target)?);
        self.basis
            .iter()
            .position(|b| b.source == s && b.target == t && b.label == label)
            .ok_or_else(|| DgCatError::UnknownBasis { domain: source.into(), codomain: target.into(), label: label.into() })
    }

    /// `(source, target, label)` of every basis vector declared so far.
    pub fn basis_labels(&self) -> Vec<(String, String, String)> {
        self.basis
            .iter()
            .map(|b| (self.objects[b.source].clone(), self.objects[b.target].clone(), b.label.clone()))
            .collect()
    }

    /// `d(from) += coeff · to`, both in `Hom(source, target)`.
    pub fn differential(&mut self, source: &str, target: &str, from: &str, to: &str, coeff: S) -> Result<(), DgCatError> {
        let f = self.lookup(source, target, from)?;
        let t = self.lookup(source, target, to)?;
        self.differential.push((f, t, coeff));
        Ok(())
    }

    /// `compose(f, g) += coeff · h` with `f: x → y`, `g: y → z`, `h: x → z`.
    pub fn composition(&mut self, x: &str, y: &str, z: &str, f: &str, g: &str, h: &str, coeff: S) -> Result<(), DgCatError> {
        let f = self.lookup(x, y, f)?;
        let g = self.lookup(y, z, g)?;
        let h = self.lookup(x, z, h)?;
        self.composition.push((f, g, h, coeff));
        Ok(())
    }

    pub fn identity(&mut self, object: &str, label: &str, coeff: S) -> Result<(), DgCatError> {
        let o = self.obj(object)?;
        let e = self.lookup(object, object, label)?;
        self.identities.entry(o).or_default().push((e, coeff));
        Ok(())
    }

    /// Assembles the category. Does not check the dg axioms; see [`super::validate`].
    pub fn build(self) -> Result<DgCategory<S>, DgCatError> {
        let n = self.objects.len();
        let mut hom_index = vec![vec![Vec::new(); n]; n];
        for (i, b) in self.basis.iter().enumerate() {
            hom_index[b.source][b.target].push(i);
        }
        let mut differential: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.basis.len()];
        for (f, t, c) in self.differential {
            push_term(&mut differential[f], t, c);
        }
        let mut composition: HashMap<(usize, usize), Vec<(usize, S)>> = HashMap::new();
        for (f, g, h, c) in self.composition {
            push_term(composition.entry((f, g)).or_default(), h, c);
        }
        composition.retain(|_, v| !v.is_empty());
        let mut identities = vec![Vec::new(); n];
        for (o, terms) in self.identities {
            for (e, c) in terms {
                push_term(&mut identities[o], e, c);
            }
        }
        for (o, id) in identities.iter().enumerate() {
            if id.is_empty() {
                return Err(DgCatError::MissingIdentity(self.objects[o].clone()));
            }
        }
        Ok(DgCategory { objects: self.objects, basis: self.basis, hom_index, differential, composition, identities })
    }
}

/// Adds `c · e` to a sparse vector kept sorted by index, dropping zeros.
pub(crate) fn push_term<S: Scalar>(v: &mut Vec<(usize, S)>, e: usize, c: S) {
    match v.binary_search_by_key(&e, |(i, _)| *i) {
        Ok(pos) => {
            let sum = v[pos].1.clone() + c;
            if sum.is_zero() {
                v.remove(pos);
            } else {
                v[pos].1 = sum;
            }
        }
        Err(pos) => {
            if !c.is_zero() {
                v.insert(pos, (e, c));
            }
        }
    }
}
