#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use twistalex::group_ring::{fox_derivative, ring_add, ring_mul, GroupRingElem};
use twistalex::knots::load_bundled;
use twistalex::laurent::LaurentPoly;
use twistalex::matrix::Matrix;
use twistalex::polymatrix::PolyMatrix;
use twistalex::presentation::{free_reduce, AbelianizationMap, Presentation, Word};
use twistalex::rep_search::{enumerate_sl2_reps, SearchOptions};
use twistalex::ring::{Integers, PrimeField, Ring};
use twistalex::twisted::{
    column_denominator, phi_block, phi_generator_minus_one, twisted_alexander, FoxJacobian,
    Representation,
};

pub const CASES: u32 = 160;

/// Runs a property with a fixed seed so failures reproduce.
pub fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map(|_| cases).map_err(|e| e.to_string())
}

pub fn f7() -> PrimeField {
    PrimeField::new(7).unwrap()
}

// ---- strategies ----

pub fn word(gens: i32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=gens, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word::from_signed(&v.iter().map(|&(g, inv)| if inv { -g } else { g }).collect::<Vec<_>>()))
}

pub fn reduced_word(gens: i32, max_len: usize) -> impl Strategy<Value = Word> {
    word(gens, max_len).prop_map(|w| w.reduced())
}

pub fn group_ring_elem(gens: i32) -> impl Strategy<Value = GroupRingElem> {
    prop::collection::vec((reduced_word(gens, 4), -3i64..=3), 0..=3).prop_map(|terms| {
        let mut e = GroupRingElem::zero();
        for (w, c) in terms {
            e.add_term(w, c.into());
        }
        e
    })
}

pub fn poly_mod(p: u64, max_len: usize) -> impl Strategy<Value = LaurentPoly<PrimeField>> {
    (-2i64..=2, prop::collection::vec(0..p, 0..=max_len)).prop_map(move |(low, c)| {
        LaurentPoly::from_coeffs(&PrimeField::new(p).unwrap(), low, c)
    })
}

pub fn poly_z(max_len: usize) -> impl Strategy<Value = LaurentPoly<Integers>> {
    (-2i64..=2, prop::collection::vec(-5i64..=5, 0..=max_len))
        .prop_map(|(low, c)| LaurentPoly::from_i64s(&Integers, low, &c))
}

pub fn poly_matrix_mod(p: u64, n: usize) -> impl Strategy<Value = PolyMatrix<PrimeField>> {
    prop::collection::vec(poly_mod(p, 3), n * n).prop_map(move |entries| {
        let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
        PolyMatrix::from_rows(&PrimeField::new(p).unwrap(), rows).unwrap()
    })
}

pub fn poly_matrix_z(n: usize) -> impl Strategy<Value = PolyMatrix<Integers>> {
    prop::collection::vec(poly_z(3), n * n).prop_map(move |entries| {
        let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
        PolyMatrix::from_rows(&Integers, rows).unwrap()
    })
}

// ---- oracles ----

/// Determinant by the Leibniz formula over all permutations.
pub fn leibniz_det<R: Ring>(m: &PolyMatrix<R>) -> LaurentPoly<R> {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = LaurentPoly::zero(m.ring());
    permute(m, &mut perm, 0, &mut total);
    total
}

fn permute<R: Ring>(m: &PolyMatrix<R>, perm: &mut Vec<usize>, k: usize, total: &mut LaurentPoly<R>) {
    let n = perm.len();
    if k == n {
        let mut term = LaurentPoly::one(m.ring());
        for (i, &j) in perm.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        *total = if inversions % 2 == 0 { &*total + &term } else { &*total - &term };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(m, perm, k + 1, total);
        perm.swap(k, i);
    }
}

/// All of SL(2, F_p), by testing every 2x2 matrix.
pub fn sl2_by_brute_force(f: &PrimeField) -> Vec<Matrix<PrimeField>> {
    let p = f.modulus() as i64;
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = Matrix::from_i64_rows(f, &[&[a, b], &[c, d]]).unwrap();
                    if m.det() == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Every pair `(A, B)` of SL(2, F_p) satisfying the relators of a
/// 2-generator presentation, as raw entry tuples.
pub fn two_generator_maps_brute_force(p: &Presentation, f: &PrimeField) -> BTreeSet<Vec<u64>> {
    assert_eq!(p.generator_count(), 2);
    let group = sl2_by_brute_force(f);
    let mut out = BTreeSet::new();
    for a in &group {
        for b in &group {
            if let Ok(rep) = Representation::new(f, p, vec![a.clone(), b.clone()]) {
                out.insert(flatten(&rep));
            }
        }
    }
    out
}

pub fn flatten<R: Ring>(rep: &Representation<R>) -> Vec<R::Elem> {
    rep.images()
        .iter()
        .flat_map(|m| (0..m.rows()).flat_map(move |i| (0..m.cols()).map(move |j| m.get(i, j).clone())))
        .collect()
}

pub fn backtrack_set(p: &Presentation, prime: u64) -> BTreeSet<Vec<u64>> {
    enumerate_sl2_reps(p, &SearchOptions::new(prime)).unwrap().iter().map(flatten).collect()
}

/// The representation `x1 -> [[1,1],[0,1]], ..., x4 -> [[2,4],[5,0]]` viewed
/// on the free group of rank 4.
pub fn figure_eight_images_free() -> Representation<PrimeField> {
    let f = f7();
    let images = vec![
        Matrix::from_i64_rows(&f, &[&[1, 1], &[0, 1]]).unwrap(),
        Matrix::from_i64_rows(&f, &[&[1, 0], &[3, 1]]).unwrap(),
        Matrix::from_i64_rows(&f, &[&[4, 4], &[3, 5]]).unwrap(),
        Matrix::from_i64_rows(&f, &[&[2, 4], &[5, 0]]).unwrap(),
    ];
    Representation::unchecked(&f, images).unwrap()
}

// ---- property suites ----

fn same(a: &GroupRingElem, b: &GroupRingElem) -> Result<(), TestCaseError> {
    prop_assert_eq!(a, b);
    Ok(())
}

pub fn fox_product_rule(cases: u32) -> Result<u32, String> {
    check(cases, (word(3, 8), word(3, 8), 1usize..=3), |(u, v, j)| {
        let uv = Word::new(u.letters().iter().chain(v.letters()).copied().collect());
        let lhs = fox_derivative(&uv, j);
        let rhs = &fox_derivative(&u, j) + &(&GroupRingElem::from_word(u.reduced()) * &fox_derivative(&v, j));
        same(&lhs, &rhs)
    })
}

pub fn fox_inverse_rule(cases: u32) -> Result<u32, String> {
    check(cases, (word(3, 8), 1usize..=3), |(u, j)| {
        let lhs = fox_derivative(&u.inverse(), j);
        let rhs = -&(&GroupRingElem::from_word(u.inverse().reduced()) * &fox_derivative(&u, j));
        same(&lhs, &rhs)
    })
}

pub fn fundamental_identity(cases: u32) -> Result<u32, String> {
    check(cases, word(4, 10), |w| {
        let mut sum = GroupRingElem::zero();
        for j in 1..=4 {
            let mut xm1 = GroupRingElem::generator(j);
            xm1.add_term(Word::empty(), (-1).into());
            sum = &sum + &(&fox_derivative(&w, j) * &xm1);
        }
        let mut expected = GroupRingElem::from_word(w.reduced());
        expected.add_term(Word::empty(), (-1).into());
        same(&sum, &expected)
    })
}

pub fn group_ring_axioms(cases: u32) -> Result<u32, String> {
    check(cases, (group_ring_elem(3), group_ring_elem(3), group_ring_elem(3)), |(a, b, c)| {
        same(&ring_mul(&ring_mul(&a, &b), &c), &ring_mul(&a, &ring_mul(&b, &c)))?;
        same(&ring_mul(&a, &ring_add(&b, &c)), &ring_add(&ring_mul(&a, &b), &ring_mul(&a, &c)))?;
        same(&ring_mul(&ring_add(&a, &b), &c), &ring_add(&ring_mul(&a, &c), &ring_mul(&b, &c)))
    })
}

pub fn phi_ring_homomorphism(cases: u32) -> Result<u32, String> {
    let rep = figure_eight_images_free();
    let alphas = prop::collection::vec(-2i64..=2, 4);
    check(cases, (group_ring_elem(4), group_ring_elem(4), alphas), |(a, b, weights)| {
        let alpha = AbelianizationMap::new(weights);
        let pa = phi_block(&a, &rep, &alpha);
        let pb = phi_block(&b, &rep, &alpha);
        prop_assert_eq!(phi_block(&(&a * &b), &rep, &alpha), pa.mul(&pb).unwrap());
        prop_assert_eq!(phi_block(&(&a + &b), &rep, &alpha), pa.add(&pb).unwrap());
        prop_assert_eq!(phi_block(&GroupRingElem::one(), &rep, &alpha), PolyMatrix::identity(rep.ring(), 2));
        Ok(())
    })
}

/// Bareiss and cofactor expansion against the Leibniz formula, n = 1..=5,
/// over F_7 and Z.
pub fn determinant_agreement(cases: u32) -> Result<u32, String> {
    let mod7 = (1usize..=5).prop_flat_map(|n| poly_matrix_mod(7, n));
    check(cases, mod7, |m| {
        let oracle = leibniz_det(&m);
        prop_assert_eq!(m.det().unwrap(), oracle.clone());
        prop_assert_eq!(m.det_bareiss().unwrap(), oracle.clone());
        prop_assert_eq!(m.det_cofactor().unwrap(), oracle);
        Ok(())
    })?;
    let over_z = (1usize..=5).prop_flat_map(poly_matrix_z);
    check(cases, over_z, |m| {
        let oracle = leibniz_det(&m);
        prop_assert_eq!(m.det_bareiss().unwrap(), oracle.clone());
        prop_assert_eq!(m.det_cofactor().unwrap(), oracle);
        Ok(())
    })
}

pub fn determinant_multiplicative(cases: u32) -> Result<u32, String> {
    let pair = (1usize..=4).prop_flat_map(|n| (poly_matrix_mod(7, n), poly_matrix_mod(7, n)));
    check(cases, pair, |(a, b)| {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        Ok(())
    })
}

/// Random SL(2, F_5) representations of small knot groups, with two columns
/// to remove.
fn knot_reps() -> Vec<(Presentation, Vec<Representation<PrimeField>>)> {
    ["3_1", "4_1", "9_12"]
        .iter()
        .map(|id| {
            let p = load_bundled(id).unwrap().presentation;
            let reps = enumerate_sl2_reps(&p, &SearchOptions::new(5)).unwrap();
            (p, reps)
        })
        .collect()
}

pub fn column_choice_invariance(cases: u32) -> Result<u32, String> {
    let data = knot_reps();
    let strategy = (0..data.len(), any::<prop::sample::Index>(), 0usize..9, 0usize..9);
    check(cases, strategy, |(k, idx, a, b)| {
        let (p, reps) = &data[k];
        let rep = &reps[idx.index(reps.len())];
        let u = p.generator_count();
        let alpha = AbelianizationMap::all_ones(u);
        let (j1, j2) = (a % u + 1, b % u + 1);
        if column_denominator(j1, rep, &alpha).is_zero() || column_denominator(j2, rep, &alpha).is_zero() {
            return Ok(());
        }
        let d1 = twisted_alexander(p, rep, &alpha, Some(j1)).unwrap();
        let d2 = twisted_alexander(p, rep, &alpha, Some(j2)).unwrap();
        prop_assert!(d1.same_fraction(&d2), "columns {} and {} disagree", j1, j2);
        Ok(())
    })
}

/// `sum_j M_ij Phi(x_j - 1) = Phi(r_i - 1) = 0` for a genuine representation.
pub fn alexander_rows_annihilate(cases: u32) -> Result<u32, String> {
    let data = knot_reps();
    check(cases, (0..data.len(), any::<prop::sample::Index>()), |(k, idx)| {
        let (p, reps) = &data[k];
        let rep = &reps[idx.index(reps.len())];
        let u = p.generator_count();
        let alpha = AbelianizationMap::all_ones(u);
        let m = FoxJacobian::new(p).alexander_matrix(rep, &alpha).unwrap();
        let mut column = PolyMatrix::zeros(rep.ring(), 2 * u, 2);
        for j in 1..=u {
            column.set_block(2 * (j - 1), 0, &phi_generator_minus_one(j, rep, &alpha));
        }
        prop_assert!(m.mul(&column).unwrap().is_zero());
        Ok(())
    })
}

pub fn divmod_reconstruction(cases: u32) -> Result<u32, String> {
    check(cases, (poly_mod(7, 7), poly_mod(7, 4)), |(a, b)| {
        if b.is_zero() {
            return Ok(());
        }
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.span() < b.span());
        Ok(())
    })?;
    // over Z with a monic divisor
    check(cases, (poly_z(7), poly_z(3)), |(a, b)| {
        let b = &b + &LaurentPoly::monomial(&Integers, 1.into(), b.max_exponent().map_or(0, |e| e + 1));
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        Ok(())
    })
}

pub fn gcd_divides_both(cases: u32) -> Result<u32, String> {
    check(cases, (poly_mod(7, 5), poly_mod(7, 5), poly_mod(7, 3)), |(a, b, c)| {
        let (a, b) = (&a * &c, &b * &c);
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
        if !a.is_zero() || !b.is_zero() {
            prop_assert!(c.divides(&g).unwrap());
        }
        prop_assert!(g.is_canonical());
        Ok(())
    })?;
    check(cases, (poly_z(4), poly_z(4), poly_z(3)), |(a, b, c)| {
        let (a, b) = (&a * &c, &b * &c);
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
        if !a.is_zero() || !b.is_zero() {
            prop_assert!(c.divides(&g).unwrap());
        }
        Ok(())
    })
}

pub fn canonical_form(cases: u32) -> Result<u32, String> {
    check(cases, (poly_mod(7, 5), 1u64..7, -3i64..=3), |(a, unit, k)| {
        let f = f7();
        let scaled = &a * &LaurentPoly::monomial(&f, unit, k);
        prop_assert_eq!(scaled.canonicalize(), a.canonicalize());
        prop_assert_eq!(a.canonicalize().canonicalize(), a.canonicalize());
        prop_assert!(scaled.unit_equivalent(&a));
        Ok(())
    })?;
    check(cases, (poly_z(5), any::<bool>(), -3i64..=3), |(a, neg, k)| {
        let unit = LaurentPoly::monomial(&Integers, if neg { (-1).into() } else { 1.into() }, k);
        let scaled = &a * &unit;
        prop_assert_eq!(scaled.canonicalize(), a.canonicalize());
        prop_assert_eq!(a.canonicalize().canonicalize(), a.canonicalize());
        Ok(())
    })
}

pub fn free_reduction_of_w_winv(cases: u32) -> Result<u32, String> {
    check(cases, word(4, 12), |w| {
        let ww = Word::new(w.letters().iter().chain(w.inverse().letters()).copied().collect());
        prop_assert!(free_reduce(&ww).is_empty());
        prop_assert!(free_reduce(&w).is_reduced());
        Ok(())
    })
}

pub fn presentation_round_trip(cases: u32) -> Result<u32, String> {
    let strategy = (1usize..=5).prop_flat_map(|u| {
        prop::collection::vec(reduced_word(u as i32, 6).prop_filter("nonempty", |w| !w.is_empty()), 0..=4)
            .prop_map(move |rels| (u, rels))
    });
    check(cases, strategy, |(u, rels)| {
        let rels: Vec<Word> = rels.into_iter().filter(|w| w.max_generator() <= u).collect();
        let p = Presentation::with_default_names(u, rels).unwrap();
        let text = p.to_string();
        prop_assert_eq!(twistalex::presentation::parse_presentation(&text).unwrap(), p);
        Ok(())
    })
}
