//! The integral group ring of a free group and Fox free differential calculus.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::presentation::{Letter, Word};

/// A finite Z-linear combination of reduced words. Zero coefficients are never
/// stored, so structural equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElem {
    pub fn zero() -> GroupRingElem {
        GroupRingElem::default()
    }

    pub fn one() -> GroupRingElem {
        GroupRingElem::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> GroupRingElem {
        GroupRingElem::term(w, BigInt::one())
    }

    pub fn term(w: Word, c: BigInt) -> GroupRingElem {
        let mut e = GroupRingElem::zero();
        e.add_term(w, c);
        e
    }

    pub fn generator(g: usize) -> GroupRingElem {
        GroupRingElem::from_word(Word::letter(Letter::gen(g)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(&w.reduced()).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * w`, reducing `w` first.
    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w.reduced()) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, w: &Word) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (v, c) in &self.terms {
            out.add_term(w.mul(v), c.clone());
        }
        out
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*({w:?})")?;
        }
        Ok(())
    }
}

impl Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        GroupRingElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

pub fn ring_add(a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
    a + b
}

pub fn ring_mul(a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
    a * b
}

/// The Fox derivative of `w` with respect to generator `j` (1-based).
///
/// Scans `w` left to right: an occurrence of `x_j` contributes the prefix
/// before it, an occurrence of `x_j^-1` contributes minus the prefix up to and
/// including it.
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElem {
    assert!(j >= 1, "generator indices are 1-based");
    let mut out = GroupRingElem::zero();
    let mut prefix = Word::empty();
    for &l in w.letters() {
        if l.generator() == j && !l.is_inverse() {
            out.add_term(prefix.clone(), BigInt::one());
        }
        prefix = prefix.mul(&Word::letter(l));
        if l.generator() == j && l.is_inverse() {
            out.add_term(prefix.clone(), -BigInt::one());
        }
    }
    out
}
