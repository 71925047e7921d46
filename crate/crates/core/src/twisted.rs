//! Alexander matrices of presentations twisted by a linear representation, and
//! the twisted Alexander polynomial
//!
//! ```text
//!   Delta = gcd_I det(M_j^I) / det Phi(x_j - 1)
//! ```
//!
//! where `Phi` sends a group ring element to the matrix
//! `sum c * t^alpha(w) * rho(w)` and `M_j` is the Alexander matrix with the
//! `j`-th block column removed.

use crate::error::{Error, Result};
use crate::group_ring::{fox_derivative, GroupRingElem};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::polymatrix::PolyMatrix;
use crate::presentation::{AbelianizationMap, Presentation, Word};
use crate::ring::{Integers, Ring};

/// An assignment of invertible `n x n` matrices to the generators of a
/// presentation that sends every relator to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<R: Ring> {
    ring: R,
    dim: usize,
    images: Vec<Matrix<R>>,
    inverses: Vec<Matrix<R>>,
    special_linear: bool,
}

impl<R: Ring> Representation<R> {
    /// Validates invertibility and every relator.
    pub fn new(ring: &R, presentation: &Presentation, images: Vec<Matrix<R>>) -> Result<Self> {
        let rep = Self::unchecked(ring, images)?;
        if rep.images.len() != presentation.generator_count() {
            return Err(Error::LengthMismatch {
                expected: presentation.generator_count(),
                found: rep.images.len(),
            });
        }
        if let Some(i) = rep.failing_relator(presentation) {
            return Err(Error::RelatorNotSatisfied(i));
        }
        Ok(rep)
    }

    /// Like [`Representation::new`], additionally requiring determinant 1.
    pub fn new_special_linear(
        ring: &R,
        presentation: &Presentation,
        images: Vec<Matrix<R>>,
    ) -> Result<Self> {
        let rep = Self::new(ring, presentation, images)?;
        if let Some(i) = rep.images.iter().position(|m| m.det() != ring.one()) {
            return Err(Error::NotSpecialLinear(i + 1));
        }
        Ok(rep)
    }

    /// Checks only shapes and invertibility; the result is a homomorphism from
    /// the free group.
    pub fn unchecked(ring: &R, images: Vec<Matrix<R>>) -> Result<Self> {
        let dim = images.first().map_or(0, |m| m.rows());
        if dim == 0 {
            return Err(Error::Dimension("representation needs at least one image of positive size".into()));
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (i, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!("image of generator {} is not {dim}x{dim}", i + 1)));
            }
            inverses.push(m.inverse().ok_or(Error::NotInvertible(i + 1))?);
        }
        let special_linear = images.iter().all(|m| m.det() == ring.one());
        Ok(Representation { ring: ring.clone(), dim, images, inverses, special_linear })
    }

    /// The representation sending every one of `generators` to the `1 x 1`
    /// identity.
    pub fn trivial(ring: &R, generators: usize) -> Self {
        let images = vec![Matrix::identity(ring, 1); generators];
        Self::unchecked(ring, images).expect("identity is invertible")
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Matrix<R>] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Matrix<R> {
        &self.images[generator - 1]
    }

    pub fn is_special_linear(&self) -> bool {
        self.special_linear
    }

    /// The matrix of a word: product of generator images and their inverses.
    pub fn evaluate(&self, w: &Word) -> Matrix<R> {
        let mut acc = Matrix::identity(&self.ring, self.dim);
        for l in w.letters() {
            let m = if l.is_inverse() {
                &self.inverses[l.generator() - 1]
            } else {
                &self.images[l.generator() - 1]
            };
            acc = acc.mul(m);
        }
        acc
    }

    /// First (1-based) relator not mapped to the identity.
    pub fn failing_relator(&self, presentation: &Presentation) -> Option<usize> {
        presentation.relators().iter().position(|r| !self.evaluate(r).is_identity()).map(|i| i + 1)
    }

    /// Conjugates every image by `g`: `x -> g x g^-1`.
    pub fn conjugate(&self, g: &Matrix<R>) -> Result<Self> {
        let ginv = g.inverse().ok_or(Error::NotInvertible(0))?;
        let images = self.images.iter().map(|m| g.mul(m).mul(&ginv)).collect();
        Self::unchecked(&self.ring, images)
    }
}

/// `Phi(e) = sum c * t^alpha(w) * rho(w)` as an `n x n` polynomial matrix.
pub fn phi_block<R: Ring>(
    e: &GroupRingElem,
    rep: &Representation<R>,
    alpha: &AbelianizationMap,
) -> PolyMatrix<R> {
    let ring = rep.ring();
    let n = rep.dim();
    let mut out = PolyMatrix::zeros(ring, n, n);
    for (w, c) in e.terms() {
        let c = ring.from_bigint(c);
        let k = alpha.weight(w);
        let m = rep.evaluate(w);
        for i in 0..n {
            for j in 0..n {
                let v = ring.mul(&c, m.get(i, j));
                if ring.is_zero(&v) {
                    continue;
                }
                let entry = out.get(i, j) + &LaurentPoly::monomial(ring, v, k);
                out.set(i, j, entry);
            }
        }
    }
    out
}

/// `Phi(x_j - 1) = t^alpha(x_j) rho(x_j) - I`.
pub fn phi_generator_minus_one<R: Ring>(
    j: usize,
    rep: &Representation<R>,
    alpha: &AbelianizationMap,
) -> PolyMatrix<R> {
    let mut e = GroupRingElem::generator(j);
    e.add_term(Word::empty(), (-1).into());
    phi_block(&e, rep, alpha)
}

/// The Fox derivatives `d r_i / d x_j` of every relator, computed once per
/// presentation and reused for every representation.
#[derive(Clone, Debug)]
pub struct FoxJacobian {
    generators: usize,
    entries: Vec<Vec<GroupRingElem>>,
}

impl FoxJacobian {
    pub fn new(p: &Presentation) -> FoxJacobian {
        let u = p.generator_count();
        let entries = p
            .relators()
            .iter()
            .map(|r| (1..=u).map(|j| fox_derivative(r, j)).collect())
            .collect();
        FoxJacobian { generators: u, entries }
    }

    pub fn relator_count(&self) -> usize {
        self.entries.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// `d r_i / d x_j`, both indices 1-based.
    pub fn derivative(&self, i: usize, j: usize) -> &GroupRingElem {
        &self.entries[i - 1][j - 1]
    }

    /// The `nv x nu` Alexander matrix: block `(i, j)` is `Phi(d r_i / d x_j)`.
    pub fn alexander_matrix<R: Ring>(
        &self,
        rep: &Representation<R>,
        alpha: &AbelianizationMap,
    ) -> Result<PolyMatrix<R>> {
        if rep.generator_count() != self.generators {
            return Err(Error::LengthMismatch { expected: self.generators, found: rep.generator_count() });
        }
        if alpha.weights().len() != self.generators {
            return Err(Error::LengthMismatch {
                expected: self.generators,
                found: alpha.weights().len(),
            });
        }
        let n = rep.dim();
        let mut m = PolyMatrix::zeros(rep.ring(), n * self.entries.len(), n * self.generators);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, d) in row.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                m.set_block(i * n, j * n, &phi_block(d, rep, alpha));
            }
        }
        Ok(m)
    }
}

pub fn alexander_matrix<R: Ring>(
    p: &Presentation,
    rep: &Representation<R>,
    alpha: &AbelianizationMap,
) -> Result<PolyMatrix<R>> {
    FoxJacobian::new(p).alexander_matrix(rep, alpha)
}

/// `det Phi(x_j - 1)`.
pub fn column_denominator<R: Ring>(
    j: usize,
    rep: &Representation<R>,
    alpha: &AbelianizationMap,
) -> LaurentPoly<R> {
    phi_generator_minus_one(j, rep, alpha).det().expect("square block")
}

/// Smallest generator `j` with `det Phi(x_j - 1) != 0`.
pub fn choose_column<R: Ring>(
    p: &Presentation,
    rep: &Representation<R>,
    alpha: &AbelianizationMap,
) -> Result<usize> {
    (1..=p.generator_count())
        .find(|&j| !column_denominator(j, rep, alpha).is_zero())
        .ok_or(Error::NoInvertibleColumn)
}

/// A twisted Alexander polynomial, kept as a numerator/denominator pair of
/// canonical polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAlexPoly<R: Ring> {
    pub numerator: LaurentPoly<R>,
    pub denominator: LaurentPoly<R>,
    /// Generator whose block column was removed.
    pub column: usize,
    /// The presentation has fewer than `u - 1` relators, so no maximal minors
    /// exist and the numerator is set to zero.
    pub deficient: bool,
}

impl<R: Ring> TwistedAlexPoly<R> {
    /// Cancels the gcd of numerator and denominator.
    pub fn reduced(&self) -> Self {
        if self.numerator.is_zero() {
            return self.clone();
        }
        let g = self.numerator.gcd(&self.denominator).expect("same ring");
        TwistedAlexPoly {
            numerator: self.numerator.exact_div(&g).expect("gcd divides").canonicalize(),
            denominator: self.denominator.exact_div(&g).expect("gcd divides").canonicalize(),
            column: self.column,
            deficient: self.deficient,
        }
    }

    /// Whether `self` and `other` are the same fraction up to a unit:
    /// `num * other.den ~ other.num * den`.
    pub fn same_fraction(&self, other: &Self) -> bool {
        let lhs = &self.numerator * &other.denominator;
        let rhs = &other.numerator * &self.denominator;
        lhs.unit_equivalent(&rhs)
    }
}

/// The twisted Alexander polynomial, computed against a precomputed Fox
/// Jacobian.
pub fn twisted_alexander_with<R: Ring>(
    jacobian: &FoxJacobian,
    rep: &Representation<R>,
    alpha: &AbelianizationMap,
    column: Option<usize>,
) -> Result<TwistedAlexPoly<R>> {
    let u = jacobian.generator_count();
    let n = rep.dim();
    let j = match column {
        Some(j) => {
            if j == 0 || j > u {
                return Err(Error::GeneratorOutOfRange { index: j, count: u });
            }
            j
        }
        None => (1..=u)
            .find(|&j| !column_denominator(j, rep, alpha).is_zero())
            .ok_or(Error::NoInvertibleColumn)?,
    };
    let denominator = column_denominator(j, rep, alpha);
    if denominator.is_zero() {
        return Err(Error::SingularColumn(j));
    }
    let minor_size = n * (u - 1);
    let rows = n * jacobian.relator_count();
    if rows < minor_size {
        return Ok(TwistedAlexPoly {
            numerator: LaurentPoly::zero(rep.ring()),
            denominator: denominator.canonicalize(),
            column: j,
            deficient: true,
        });
    }
    let m = jacobian.alexander_matrix(rep, alpha)?;
    let dropped: Vec<usize> = ((j - 1) * n..j * n).collect();
    let mj = m.remove_columns(&dropped);
    let numerator = mj.gcd_of_maximal_minors(minor_size)?;
    Ok(TwistedAlexPoly {
        numerator: numerator.canonicalize(),
        denominator: denominator.canonicalize(),
        column: j,
        deficient: false,
    })
}

pub fn twisted_alexander<R: Ring>(
    p: &Presentation,
    rep: &Representation<R>,
    alpha: &AbelianizationMap,
    column: Option<usize>,
) -> Result<TwistedAlexPoly<R>> {
    twisted_alexander_with(&FoxJacobian::new(p), rep, alpha, column)
}

/// Numerator of the twisted polynomial for the trivial 1-dimensional
/// representation over the integers with all-ones abelianization: the
/// classical Alexander polynomial of a knot group, canonical up to `±t^k`.
pub fn classical_alexander(p: &Presentation) -> Result<LaurentPoly<Integers>> {
    let rep = Representation::trivial(&Integers, p.generator_count());
    let alpha = AbelianizationMap::all_ones(p.generator_count());
    Ok(twisted_alexander(p, &rep, &alpha, None)?.numerator)
}
