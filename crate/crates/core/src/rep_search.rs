//! Enumeration of all homomorphisms from a finitely presented group into
//! `SL(2, F_p)`, and the census of twisted Alexander numerators they produce.
//!
//! The search assigns generators in a fixed plan. Whenever a relator contains
//! exactly one unassigned generator, and that generator occurs once, the
//! relator determines it (a Wirtinger relator `w x_a w^-1 x_b^-1` fixes `x_b`
//! from `w` and `x_a`). Only the remaining generators are enumerated, each over
//! `SL(2, F_p)` in lexicographic order of `(a, b, c, d)`. Relators are checked
//! as soon as all their generators are assigned.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::presentation::{AbelianizationMap, Letter, Presentation};
use crate::ring::{is_prime, PrimeField};
use crate::twisted::{twisted_alexander_with, FoxJacobian, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepFilter {
    All,
    /// Some pair of generator images does not commute.
    NonabelianImage,
    /// No common eigenvector over `F_{p^2}`.
    Irreducible,
}

impl FromStr for RepFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(RepFilter::All),
            "nonabelian-image" => Ok(RepFilter::NonabelianImage),
            "irreducible" => Ok(RepFilter::Irreducible),
            other => Err(Error::Format(format!("unknown filter `{other}`"))),
        }
    }
}

impl fmt::Display for RepFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepFilter::All => "all",
            RepFilter::NonabelianImage => "nonabelian-image",
            RepFilter::Irreducible => "irreducible",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedup {
    None,
    ByPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub prime: u64,
    pub filter: RepFilter,
    pub dedup: Dedup,
    pub parallel_width: usize,
    /// Maximum number of enumerated (not derived) generator assignments.
    pub node_budget: Option<u64>,
}

impl SearchOptions {
    pub fn new(prime: u64) -> SearchOptions {
        SearchOptions {
            prime,
            filter: RepFilter::All,
            dedup: Dedup::ByPolynomial,
            parallel_width: 1,
            node_budget: None,
        }
    }

    pub fn with_filter(mut self, filter: RepFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_parallel_width(mut self, width: usize) -> Self {
        self.parallel_width = width;
        self
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    fn validate(&self) -> Result<()> {
        if !is_prime(self.prime) || self.prime >= 1 << 16 {
            return Err(Error::NotPrime(self.prime));
        }
        if self.parallel_width == 0 {
            return Err(Error::Format("parallel width must be at least 1".into()));
        }
        Ok(())
    }
}

/// A 2x2 matrix `[a b; c d]` mod p, row-major.
pub type Mat2 = [u32; 4];

const IDENTITY: Mat2 = [1, 0, 0, 1];

#[derive(Clone, Copy, Debug)]
struct Sl2 {
    p: u32,
}

impl Sl2 {
    fn mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let p = self.p as u64;
        let m = |a: u32, b: u32, c: u32, d: u32| ((a as u64 * b as u64 + c as u64 * d as u64) % p) as u32;
        [
            m(x[0], y[0], x[1], y[2]),
            m(x[0], y[1], x[1], y[3]),
            m(x[2], y[0], x[3], y[2]),
            m(x[2], y[1], x[3], y[3]),
        ]
    }

    /// Inverse of a determinant-one matrix.
    fn inv(&self, x: &Mat2) -> Mat2 {
        let neg = |v: u32| if v == 0 { 0 } else { self.p - v };
        [x[3], neg(x[1]), neg(x[2]), x[0]]
    }

    /// All of SL(2, F_p) in lexicographic order of `(a, b, c, d)`.
    fn elements(&self) -> Vec<Mat2> {
        let p = self.p;
        let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a as u64 * d as u64 + (p - 1) as u64 * ((b as u64 * c as u64) % p as u64)) % p as u64
                            == 1
                        {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    fn eval(&self, letters: &[Letter], asg: &[Mat2]) -> Mat2 {
        letters.iter().fold(IDENTITY, |acc, l| {
            let m = asg[l.generator() - 1];
            let m = if l.is_inverse() { self.inv(&m) } else { m };
            self.mul(&acc, &m)
        })
    }
}

/// Order of SL(2, F_p): `p (p^2 - 1)`.
pub fn sl2_order(p: u64) -> u64 {
    p * (p * p - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Step {
    /// Enumerate the 0-based generator over the whole group.
    Choose(usize),
    /// `relator = prefix * g^exponent * suffix` with everything else assigned.
    Derive { generator: usize, prefix: Vec<Letter>, suffix: Vec<Letter>, exponent: i8 },
    /// Every generator of the relator is assigned; it must evaluate to I.
    Check(usize),
}

/// The order in which a presentation's generators are assigned.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    steps: Vec<Step>,
    generators: usize,
}

impl SearchPlan {
    pub fn new(p: &Presentation) -> SearchPlan {
        let u = p.generator_count();
        let relators = p.relators();
        let mut assigned = vec![false; u];
        let mut handled = vec![false; relators.len()];
        let mut steps = Vec::new();
        Self::close(relators, &mut assigned, &mut handled, &mut steps);
        while let Some(choice) = Self::pick(relators, &assigned, &handled) {
            assigned[choice] = true;
            steps.push(Step::Choose(choice));
            Self::close(relators, &mut assigned, &mut handled, &mut steps);
        }
        SearchPlan { steps, generators: u }
    }

    /// Number of generators enumerated over the whole group.
    pub fn free_generators(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Choose(_))).count()
    }

    /// Unassigned generator whose choice forces the most others; lowest index
    /// on ties.
    fn pick(relators: &[crate::presentation::Word], assigned: &[bool], handled: &[bool]) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for g in (0..assigned.len()).filter(|&g| !assigned[g]) {
            let mut a = assigned.to_vec();
            let mut h = handled.to_vec();
            a[g] = true;
            Self::close(relators, &mut a, &mut h, &mut Vec::new());
            let count = a.iter().filter(|&&x| x).count();
            if best.map_or(true, |(_, c)| count > c) {
                best = Some((g, count));
            }
        }
        best.map(|(g, _)| g)
    }

    /// Adds derive and check steps until nothing more follows.
    fn close(
        relators: &[crate::presentation::Word],
        assigned: &mut [bool],
        handled: &mut [bool],
        steps: &mut Vec<Step>,
    ) {
        loop {
            let mut progress = false;
            for (ri, r) in relators.iter().enumerate() {
                if handled[ri] {
                    continue;
                }
                let open: Vec<usize> = r
                    .letters()
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| !assigned[l.generator() - 1])
                    .map(|(k, _)| k)
                    .collect();
                if open.is_empty() {
                    handled[ri] = true;
                    steps.push(Step::Check(ri));
                    progress = true;
                } else if open.len() == 1 {
                    let k = open[0];
                    let letter = r.letters()[k];
                    let g = letter.generator() - 1;
                    steps.push(Step::Derive {
                        generator: g,
                        prefix: r.letters()[..k].to_vec(),
                        suffix: r.letters()[k + 1..].to_vec(),
                        exponent: letter.exponent(),
                    });
                    assigned[g] = true;
                    handled[ri] = true;
                    progress = true;
                }
            }
            if !progress {
                return;
            }
        }
    }
}

struct Search<'a> {
    sl2: Sl2,
    plan: &'a SearchPlan,
    relators: &'a [crate::presentation::Word],
    elements: Vec<Mat2>,
    nodes: AtomicU64,
    budget: Option<u64>,
}

impl Search<'_> {
    fn count_node(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.budget {
            Some(b) if n > b => Err(Error::BudgetExceeded(b)),
            _ => Ok(()),
        }
    }

    /// Applies a non-branching step; false if a check fails.
    fn apply(&self, step: &Step, asg: &mut [Mat2]) -> bool {
        match step {
            Step::Derive { generator, prefix, suffix, exponent } => {
                let sp = self.sl2.mul(&self.sl2.eval(suffix, asg), &self.sl2.eval(prefix, asg));
                asg[*generator] = if *exponent > 0 { self.sl2.inv(&sp) } else { sp };
                true
            }
            Step::Check(ri) => self.sl2.eval(self.relators[*ri].letters(), asg) == IDENTITY,
            Step::Choose(_) => unreachable!("choice steps branch"),
        }
    }

    fn dfs(&self, k: usize, asg: &mut Vec<Mat2>, out: &mut Vec<Vec<Mat2>>) -> Result<()> {
        let steps = &self.plan.steps;
        let mut k = k;
        while k < steps.len() {
            if let Step::Choose(g) = steps[k] {
                for e in &self.elements {
                    self.count_node()?;
                    asg[g] = *e;
                    self.dfs(k + 1, asg, out)?;
                }
                return Ok(());
            }
            if !self.apply(&steps[k], asg) {
                return Ok(());
            }
            k += 1;
        }
        out.push(asg.clone());
        Ok(())
    }
}

/// Every homomorphism from `p` into `SL(2, F_prime)`, each exactly once, in
/// deterministic order. The filter in `opts` is not applied here.
pub fn enumerate_sl2_maps(p: &Presentation, opts: &SearchOptions) -> Result<Vec<Vec<Mat2>>> {
    opts.validate()?;
    let plan = SearchPlan::new(p);
    let sl2 = Sl2 { p: opts.prime as u32 };
    let search = Search {
        sl2,
        plan: &plan,
        relators: p.relators(),
        elements: sl2.elements(),
        nodes: AtomicU64::new(0),
        budget: opts.node_budget,
    };
    let mut asg = vec![IDENTITY; plan.generators];
    let steps = &plan.steps;
    let mut k = 0;
    while k < steps.len() && !matches!(steps[k], Step::Choose(_)) {
        if !search.apply(&steps[k], &mut asg) {
            return Ok(Vec::new());
        }
        k += 1;
    }
    let Some(&Step::Choose(g)) = steps.get(k) else {
        return Ok(vec![asg]);
    };
    let branch = |e: &Mat2| -> Result<Vec<Vec<Mat2>>> {
        search.count_node()?;
        let mut a = asg.clone();
        a[g] = *e;
        let mut out = Vec::new();
        search.dfs(k + 1, &mut a, &mut out)?;
        Ok(out)
    };
    let slices: Vec<Result<Vec<Vec<Mat2>>>> = if opts.parallel_width > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel_width)
            .build()
            .map_err(|e| Error::Format(e.to_string()))?;
        pool.install(|| search.elements.par_iter().map(branch).collect())
    } else {
        search.elements.iter().map(branch).collect()
    };
    let mut all = Vec::new();
    for s in slices {
        all.extend(s?);
    }
    Ok(all)
}

pub fn mat2_to_matrix(field: &PrimeField, m: &Mat2) -> Matrix<PrimeField> {
    Matrix::from_rows(field, vec![vec![m[0] as u64, m[1] as u64], vec![m[2] as u64, m[3] as u64]])
        .expect("2x2")
}

/// All representations into `SL(2, F_p)` passing `opts.filter`, each
/// re-validated against the presentation.
pub fn enumerate_sl2_reps(
    p: &Presentation,
    opts: &SearchOptions,
) -> Result<Vec<Representation<PrimeField>>> {
    let field = PrimeField::new(opts.prime)?;
    let maps = enumerate_sl2_maps(p, opts)?;
    let mut reps = Vec::with_capacity(maps.len());
    for m in maps {
        if !passes_filter(&m, opts.filter, opts.prime as u32) {
            continue;
        }
        let images = m.iter().map(|x| mat2_to_matrix(&field, x)).collect();
        reps.push(Representation::new_special_linear(&field, p, images)?);
    }
    Ok(reps)
}

pub fn passes_filter(images: &[Mat2], filter: RepFilter, p: u32) -> bool {
    match filter {
        RepFilter::All => true,
        RepFilter::NonabelianImage => !is_abelian(images, p),
        RepFilter::Irreducible => !is_reducible(images, p),
    }
}

fn is_abelian(images: &[Mat2], p: u32) -> bool {
    let sl2 = Sl2 { p };
    images.iter().enumerate().all(|(i, a)| {
        images[i + 1..].iter().all(|b| sl2.mul(a, b) == sl2.mul(b, a))
    })
}

/// `F_p[s] / (s^2 - a s - b)` for an irreducible quadratic.
#[derive(Clone, Copy)]
struct QuadraticExt {
    p: u64,
    a: u64,
    b: u64,
}

type Ext = (u64, u64);

impl QuadraticExt {
    fn new(p: u64) -> QuadraticExt {
        for a in 0..p {
            for b in 0..p {
                let has_root = (0..p).any(|x| (x * x % p + p * p - a * x % p - b) % p == 0);
                if !has_root {
                    return QuadraticExt { p, a, b };
                }
            }
        }
        unreachable!("every prime field has an irreducible quadratic")
    }

    fn add(&self, x: Ext, y: Ext) -> Ext {
        ((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }

    fn sub(&self, x: Ext, y: Ext) -> Ext {
        ((x.0 + self.p - y.0) % self.p, (x.1 + self.p - y.1) % self.p)
    }

    fn mul(&self, x: Ext, y: Ext) -> Ext {
        let p = self.p;
        // (x0 + x1 s)(y0 + y1 s) with s^2 = a s + b
        let ss = x.1 * y.1 % p;
        let c0 = (x.0 * y.0 + ss * self.b) % p;
        let c1 = (x.0 * y.1 + x.1 * y.0 + ss * self.a) % p;
        (c0, c1)
    }

    fn scalar(&self, v: u32) -> Ext {
        (v as u64 % self.p, 0)
    }
}

/// Whether all images share an eigenvector over `F_{p^2}`.
fn is_reducible(images: &[Mat2], p: u32) -> bool {
    let Some(a) = images.iter().find(|m| !(m[1] == 0 && m[2] == 0 && m[0] == m[3])) else {
        return true;
    };
    let f = QuadraticExt::new(p as u64);
    let pp = p as u64;
    let tr = f.scalar(((a[0] as u64 + a[3] as u64) % pp) as u32);
    let one = (1, 0);
    let mut candidates: Vec<[Ext; 2]> = Vec::new();
    for x0 in 0..pp {
        for x1 in 0..pp {
            let l = (x0, x1);
            // l^2 - tr l + 1
            if f.add(f.sub(f.mul(l, l), f.mul(tr, l)), one) != (0, 0) {
                continue;
            }
            let (a0, a1, a2, a3) = (f.scalar(a[0]), f.scalar(a[1]), f.scalar(a[2]), f.scalar(a[3]));
            let v = if a1 != (0, 0) || f.sub(a0, l) != (0, 0) {
                [a1, f.sub(l, a0)]
            } else {
                [f.sub(a3, l), f.sub((0, 0), a2)]
            };
            if v != [(0, 0), (0, 0)] {
                candidates.push(v);
            }
        }
    }
    candidates.iter().any(|v| {
        images.iter().all(|m| {
            let bv0 = f.add(f.mul(f.scalar(m[0]), v[0]), f.mul(f.scalar(m[1]), v[1]));
            let bv1 = f.add(f.mul(f.scalar(m[2]), v[0]), f.mul(f.scalar(m[3]), v[1]));
            f.sub(f.mul(v[0], bv1), f.mul(v[1], bv0)) == (0, 0)
        })
    })
}

/// The distinct canonical numerators over all representations of a census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepCensus {
    pub prime: u64,
    pub filter: RepFilter,
    /// Representations that passed the filter and produced a defined numerator.
    pub representations: usize,
    /// Representations skipped because `det Phi(x_j - 1) = 0` for every `j`.
    pub skipped: usize,
    /// Homomorphisms removed by the filter.
    pub filtered_out: usize,
    pub numerators: BTreeMap<LaurentPoly<PrimeField>, usize>,
    /// Per-representation numerators in enumeration order, kept when
    /// deduplication is off.
    pub sequence: Option<Vec<LaurentPoly<PrimeField>>>,
}

impl RepCensus {
    pub fn distinct(&self) -> usize {
        self.numerators.len()
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &LaurentPoly<PrimeField>> {
        self.numerators.keys()
    }

    pub fn contains_unit_equivalent(&self, q: &LaurentPoly<PrimeField>) -> bool {
        self.numerators.contains_key(&q.canonicalize())
    }

    pub fn report(&self, presentation: &str) -> CensusReport {
        CensusReport {
            presentation: presentation.to_string(),
            prime: self.prime,
            filter: self.filter,
            representations: self.representations,
            skipped: self.skipped,
            filtered_out: self.filtered_out,
            distinct: self.distinct(),
            polynomials: self
                .numerators
                .iter()
                .map(|(q, m)| CensusEntry { polynomial: q.to_string(), multiplicity: *m })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub polynomial: String,
    pub multiplicity: usize,
}

/// Serializable form of a [`RepCensus`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub presentation: String,
    pub prime: u64,
    pub filter: RepFilter,
    pub representations: usize,
    pub skipped: usize,
    pub filtered_out: usize,
    pub distinct: usize,
    pub polynomials: Vec<CensusEntry>,
}

/// Numerator of the twisted polynomial of every `SL(2, F_p)` representation,
/// deduplicated up to units.
pub fn numerator_census(
    p: &Presentation,
    alpha: &AbelianizationMap,
    opts: &SearchOptions,
) -> Result<RepCensus> {
    let field = PrimeField::new(opts.prime)?;
    let maps = enumerate_sl2_maps(p, opts)?;
    let jacobian = FoxJacobian::new(p);
    let total = maps.len();
    let kept: Vec<&Vec<Mat2>> =
        maps.iter().filter(|m| passes_filter(m, opts.filter, opts.prime as u32)).collect();
    let filtered_out = total - kept.len();

    let numerator = |m: &&Vec<Mat2>| -> Result<Option<LaurentPoly<PrimeField>>> {
        let images = m.iter().map(|x| mat2_to_matrix(&field, x)).collect();
        let rep = Representation::new_special_linear(&field, p, images)?;
        match twisted_alexander_with(&jacobian, &rep, alpha, None) {
            Ok(d) => Ok(Some(d.numerator)),
            Err(Error::NoInvertibleColumn) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let results: Vec<Result<Option<LaurentPoly<PrimeField>>>> = if opts.parallel_width > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel_width)
            .build()
            .map_err(|e| Error::Format(e.to_string()))?;
        pool.install(|| kept.par_iter().map(numerator).collect())
    } else {
        kept.iter().map(numerator).collect()
    };

    let mut numerators = BTreeMap::new();
    let mut sequence = Vec::new();
    let mut skipped = 0;
    let mut representations = 0;
    for r in results {
        match r? {
            Some(q) => {
                representations += 1;
                if opts.dedup == Dedup::None {
                    sequence.push(q.clone());
                }
                *numerators.entry(q).or_insert(0) += 1;
            }
            None => skipped += 1,
        }
    }
    Ok(RepCensus {
        prime: opts.prime,
        filter: opts.filter,
        representations,
        skipped,
        filtered_out,
        numerators,
        sequence: (opts.dedup == Dedup::None).then_some(sequence),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn group_orders() {
        for p in [2u32, 3, 5, 7] {
            let sl2 = Sl2 { p };
            let els = sl2.elements();
            assert_eq!(els.len() as u64, sl2_order(p as u64));
            for e in &els {
                assert_eq!(sl2.mul(e, &sl2.inv(e)), IDENTITY);
            }
            let mut sorted = els.clone();
            sorted.sort();
            assert_eq!(sorted, els);
        }
    }

    #[test]
    fn free_group_count() {
        let p = parse_presentation("<x1, x2 | >").unwrap();
        let maps = enumerate_sl2_maps(&p, &SearchOptions::new(3)).unwrap();
        assert_eq!(maps.len(), 576);
    }

    #[test]
    fn wirtinger_plan_is_small() {
        let p = parse_presentation(
            "<x1,x2,x3,x4 | x4 x2 x4^-1 x1^-1, x1 x2 x1^-1 x3^-1, x2 x4 x2^-1 x3^-1>",
        )
        .unwrap();
        let plan = SearchPlan::new(&p);
        assert_eq!(plan.free_generators(), 2);
    }

    #[test]
    fn single_letter_relator_is_derived() {
        let p = parse_presentation("<a, b | a>").unwrap();
        let maps = enumerate_sl2_maps(&p, &SearchOptions::new(3)).unwrap();
        assert_eq!(maps.len(), 24);
        assert!(maps.iter().all(|m| m[0] == IDENTITY));
    }

    #[test]
    fn budget_is_enforced() {
        let p = parse_presentation("<x1, x2 | >").unwrap();
        let opts = SearchOptions::new(3).with_node_budget(100);
        assert_eq!(enumerate_sl2_maps(&p, &opts), Err(Error::BudgetExceeded(100)));
        let opts = SearchOptions::new(3).with_node_budget(24 + 576);
        assert!(enumerate_sl2_maps(&p, &opts).is_ok());
    }

    #[test]
    fn filters() {
        let p = 7;
        let x: Mat2 = [1, 1, 0, 1];
        let y: Mat2 = [1, 0, 3, 1];
        let diag: Mat2 = [2, 0, 0, 4];
        assert!(is_abelian(&[x, x, IDENTITY], p));
        assert!(!is_abelian(&[x, y], p));
        // upper triangular pair: common eigenvector e1, nonabelian
        let upper: Mat2 = [2, 1, 0, 4];
        assert!(!is_abelian(&[x, upper], p));
        assert!(is_reducible(&[x, upper], p));
        assert!(!is_reducible(&[x, y], p));
        assert!(is_reducible(&[diag, IDENTITY], p));
        // element of order 8 with eigenvalues outside F_7, alone: reducible over F_49
        let elliptic: Mat2 = [0, 6, 1, 3];
        assert!(is_reducible(&[elliptic], p));
        assert!(!is_reducible(&[elliptic, x], p));
    }

    #[test]
    fn parse_filters() {
        assert_eq!("nonabelian-image".parse::<RepFilter>(), Ok(RepFilter::NonabelianImage));
        assert!("abelian".parse::<RepFilter>().is_err());
    }
}
