//! Number fields `Q(α)` with a designated complex embedding.
//!
//! A field is fixed by a monic irreducible minimal polynomial and a rational
//! rectangle isolating the root that `α` stands for. Elements are rational
//! coefficient vectors in the power basis `1, α, …, α^(d-1)`. The other
//! embeddings of the field are the substitutions `α ↦ ζ_j` over all roots
//! `ζ_j` of the minimal polynomial, computed by [`embeddings`].

mod element;
mod roots;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factor::{check_irreducible, Irreducibility};
use crate::poly::PolyQ;
use crate::rational::{format_rational, Rational};

pub use element::FieldElement;
pub use roots::{embeddings, eval_element, isolate_roots, to_complex_f64, EmbeddingSet};

/// Closed rational rectangle `[re_lo, re_hi] × [im_lo, im_hi]` in C.
#[derive(Clone, PartialEq, Eq)]
pub struct RootBox {
    pub re: (Rational, Rational),
    pub im: (Rational, Rational),
}

impl RootBox {
    pub fn new(re: (Rational, Rational), im: (Rational, Rational)) -> Self {
        RootBox { re, im }
    }

    /// Box on the real axis.
    pub fn real(lo: Rational, hi: Rational) -> Self {
        RootBox {
            re: (lo, hi),
            im: (Rational::zero(), Rational::zero()),
        }
    }

    pub fn is_real_interval(&self) -> bool {
        self.im.0.is_zero() && self.im.1.is_zero()
    }
}

impl fmt::Debug for RootBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] x [{}, {}]i",
            format_rational(&self.re.0),
            format_rational(&self.re.1),
            format_rational(&self.im.0),
            format_rational(&self.im.1)
        )
    }
}

struct FieldData {
    min_poly: PolyQ,
    root_box: RootBox,
}

/// A validated number field. Cloning is cheap; clones compare equal.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.min_poly == other.0.min_poly && self.0.root_box == other.0.root_box)
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(α): {:?}, α ∈ {:?}", self.0.min_poly, self.0.root_box)
    }
}

/// Validates `poly` (normalized to monic) and `root_box` and builds the field.
///
/// The polynomial must be squarefree and irreducible over Q, and the box must
/// contain exactly one of its complex roots.
pub fn make_field(poly: &PolyQ, root_box: RootBox) -> Result<NumberField> {
    let d = match poly.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidSpec(
                "minimal polynomial must have degree at least 1".into(),
            ))
        }
    };
    if root_box.re.0 > root_box.re.1 || root_box.im.0 > root_box.im.1 {
        return Err(Error::InvalidSpec("root box bounds are reversed".into()));
    }
    let min_poly = poly.monic();
    if d > 1 && !min_poly.is_squarefree() {
        return Err(Error::ReduciblePolynomial(
            "polynomial has a repeated factor".into(),
        ));
    }
    if let Irreducibility::Reducible(g) = check_irreducible(&min_poly)? {
        let factor: Vec<String> = g.iter().map(|c| c.to_string()).collect();
        return Err(Error::ReduciblePolynomial(format!(
            "scaled polynomial has the factor [{}] (constant term first)",
            factor.join(", ")
        )));
    }
    if root_box.is_real_interval() {
        match min_poly.count_real_roots_in(&root_box.re.0, &root_box.re.1) {
            0 => {
                // a non-real root cannot sit on a degenerate box
                return Err(Error::EmptyRootBox);
            }
            1 => {}
            k => return Err(Error::AmbiguousRootBox(k)),
        }
    } else {
        roots::count_in_box(&min_poly, &root_box).and_then(|k| match k {
            0 => Err(Error::EmptyRootBox),
            1 => Ok(()),
            k => Err(Error::AmbiguousRootBox(k)),
        })?;
    }
    Ok(NumberField(Arc::new(FieldData { min_poly, root_box })))
}

impl NumberField {
    pub fn min_poly(&self) -> &PolyQ {
        &self.0.min_poly
    }

    pub fn root_box(&self) -> &RootBox {
        &self.0.root_box
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.degree().unwrap()
    }

    /// The designated root is real (the box is a real interval).
    pub fn is_real_embedded(&self) -> bool {
        self.0.root_box.is_real_interval()
    }

    /// The field `Q` presented as `Q(0)` with minimal polynomial `t`.
    pub fn rationals() -> Self {
        NumberField(Arc::new(FieldData {
            min_poly: PolyQ::x(),
            root_box: RootBox::real(Rational::zero(), Rational::zero()),
        }))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_rational(self, Rational::zero())
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_rational(self, num_traits::One::one())
    }

    /// The generator `α`.
    pub fn generator(&self) -> FieldElement {
        FieldElement::from_poly(self, &PolyQ::x())
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        FieldElement::from_rational(self, r)
    }

    /// Element with the given power-basis coefficients (shorter vectors are
    /// zero-padded, longer ones reduced modulo the minimal polynomial).
    pub fn element(&self, coeffs: Vec<Rational>) -> FieldElement {
        FieldElement::from_poly(self, &PolyQ::new(coeffs))
    }
}
