//! Exact coefficients, monomials, sparse polynomials and graded polynomial rings.

mod coeff;
mod monomial;
mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use coeff::{Coeff, Field};
pub use monomial::{monomials_of_degree, Degree, Exponents, Monomial, MonomialOrder};
pub use poly::{homogeneity_check, poly_arith, DegreeOf, PolyOp, Polynomial};

use crate::error::{Error, Result};

/// Grading of k[x_1..x_n].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Grading {
    /// ℤ-grading with every variable of degree 1.
    #[default]
    Standard,
    /// ℤⁿ-grading with x_i of degree e_i.
    Fine,
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::Standard => write!(f, "standard"),
            Grading::Fine => write!(f, "fine"),
        }
    }
}

/// A graded polynomial ring k[x_1..x_n].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: Field,
    grading: Grading,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        field: Field,
        grading: Grading,
        order: MonomialOrder,
    ) -> Result<RingRef> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.len() > 63 {
            return Err(Error::InvalidRing("at most 63 variables supported".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_alphabetic() && !v.starts_with('_') {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars, field, grading, order }))
    }

    /// ℚ[vars] with the standard grading and degrevlex.
    pub fn rational(vars: &[&str]) -> RingRef {
        Ring::new(vars.iter().copied(), Field::Rationals, Grading::Standard, MonomialOrder::DegRevLex)
            .expect("valid ring")
    }

    /// ℚ[vars] with the fine grading and degrevlex.
    pub fn rational_fine(vars: &[&str]) -> RingRef {
        Ring::new(vars.iter().copied(), Field::Rationals, Grading::Fine, MonomialOrder::DegRevLex)
            .expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Length of degree vectors in this ring.
    pub fn degree_len(&self) -> usize {
        match self.grading {
            Grading::Standard => 1,
            Grading::Fine => self.nvars(),
        }
    }

    pub fn zero_degree(&self) -> Degree {
        Degree::zero(self.degree_len())
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        match self.grading {
            Grading::Standard => Degree(vec![m.total_degree() as i64]),
            Grading::Fine => m.as_degree(),
        }
    }

    /// Degree of the i-th variable.
    pub fn var_degree(&self, i: usize) -> Degree {
        self.monomial_degree(&Monomial::var(self.nvars(), i))
    }

    pub fn with_grading(&self, grading: Grading) -> RingRef {
        Arc::new(Ring { grading, ..self.clone() })
    }

    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(Ring { order, ..self.clone() })
    }

    /// The ring with one more variable appended (name chosen to avoid clashes).
    pub fn with_extra_variable(&self, hint: &str) -> RingRef {
        let mut name = hint.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        Arc::new(Ring { vars, ..self.clone() })
    }

    pub fn one(self: &RingRef) -> Polynomial {
        Polynomial::constant(self, self.field.one())
    }

    pub fn zero(self: &RingRef) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn var(self: &RingRef, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i), self.field.one())
    }

    /// All variables as polynomials, i.e. generators of the irrelevant ideal.
    pub fn variables_as_polys(self: &RingRef) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn parse(self: &RingRef, text: &str) -> Result<Polynomial> {
        parse::parse_polynomial(self, text)
    }

    /// Parse a comma-separated list; convenience for tests and fixtures.
    pub fn parse_list(self: &RingRef, items: &[&str]) -> Result<Vec<Polynomial>> {
        items.iter().map(|s| self.parse(s)).collect()
    }

    pub fn same(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

/// Build a monomial from variable exponents, e.g. `mono(&[2, 1])` = x^2 y.
pub fn mono(exps: &[u32]) -> Monomial {
    Monomial::from_exponents(exps.iter().copied())
}
