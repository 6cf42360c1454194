use super::{check_ring, present_subquotient, ModulePresentation};
use crate::error::{Error, Result};
use crate::groebner::{syzygies, Vector};
use crate::ring::Degree;

/// A degree-preserving-up-to-shift map M → N, given by the images of M's
/// generators in N's free cover.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: ModulePresentation,
    target: ModulePresentation,
    columns: Vec<Vector>,
    degree: Degree,
}

impl GradedMap {
    /// Checks degrees and that relations of the source map into relations of the target.
    pub fn new(
        source: ModulePresentation,
        target: ModulePresentation,
        columns: Vec<Vector>,
        degree: Degree,
    ) -> Result<Self> {
        check_ring(source.ring(), target.ring())?;
        let ring = source.ring().clone();
        if columns.len() != source.ngens() {
            return Err(Error::Shape(format!("{} columns for {} generators", columns.len(), source.ngens())));
        }
        for (j, c) in columns.iter().enumerate() {
            if c.max_pos().is_some_and(|p| p >= target.ngens()) {
                return Err(Error::Shape("column refers to a missing target generator".into()));
            }
            if c.is_zero() {
                continue;
            }
            let want = &source.degrees()[j] + &degree;
            if c.degree(&ring, target.degrees()) != Some(want) {
                return Err(Error::IllDefinedMap(format!("column {j} does not have degree {}", &source.degrees()[j] + &degree)));
            }
        }
        for (i, r) in source.relations().iter().enumerate() {
            let image = r.apply_columns(&ring, &columns);
            if !target.gb().contains(&image) {
                return Err(Error::IllDefinedMap(format!("relation {i} does not map into the target relations")));
            }
        }
        Ok(GradedMap { source, target, columns, degree })
    }

    pub fn identity(m: &ModulePresentation) -> Self {
        let cols = (0..m.ngens()).map(|j| Vector::unit(m.ring(), j)).collect();
        GradedMap::new(m.clone(), m.clone(), cols, m.ring().zero_degree()).expect("identity is well defined")
    }

    pub fn source(&self) -> &ModulePresentation {
        &self.source
    }

    pub fn target(&self) -> &ModulePresentation {
        &self.target
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    /// Image of an element of the source's free cover.
    pub fn apply(&self, v: &Vector) -> Vector {
        v.apply_columns(self.source.ring(), &self.columns)
    }

    /// Zero as a map: every column lies in the target relations.
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| self.target.gb().contains(c))
    }

    /// Composite self ∘ other.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        let cols = other.columns.iter().map(|c| self.apply(c)).collect();
        GradedMap::new(other.source.clone(), self.target.clone(), cols, &self.degree + &other.degree)
    }
}

/// ker f as a module, presented minimally.
pub fn kernel(f: &GradedMap) -> Result<ModulePresentation> {
    let ring = f.source.ring();
    let n = f.source.ngens();
    let mut cols = f.columns.clone();
    cols.extend(f.target.relations().iter().cloned());
    let syz = syzygies(ring, f.target.ngens(), &cols);
    let k: Vec<Vector> = syz.iter().map(|v| v.project(0..n)).filter(|v| !v.is_zero()).collect();
    Ok(present_subquotient(ring, f.source.degrees(), &k, f.source.relations())?.module)
}
