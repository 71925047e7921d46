//! Surjection obstructions between knot groups.
//!
//! If `phi: G -> G'` is onto, every representation `rho'` of `G'` pulls back to
//! `rho' . phi` on `G`, and the numerator for `G'` divides the numerator for
//! `G`. So a target numerator dividing *no* source numerator rules out every
//! surjection. The classical Alexander polynomial gives the same test with the
//! trivial representation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formats::{resolve_images, HomFile};
use crate::laurent::{divides_up_to_units, LaurentPoly};
use crate::presentation::{AbelianizationMap, Presentation, PresentationFile, Word};
use crate::rep_search::{numerator_census, RepCensus, RepFilter, SearchOptions};
use crate::ring::{PrimeField, Ring};
use crate::twisted::{classical_alexander, Representation};

/// A map from the source generators to words in the target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCandidate {
    source: Presentation,
    target: Presentation,
    images: Vec<Word>,
}

impl HomCandidate {
    pub fn new(source: Presentation, target: Presentation, images: Vec<Word>) -> Result<HomCandidate> {
        if images.len() != source.generator_count() {
            return Err(Error::LengthMismatch { expected: source.generator_count(), found: images.len() });
        }
        for w in &images {
            let g = w.max_generator();
            if g > target.generator_count() {
                return Err(Error::GeneratorOutOfRange { index: g, count: target.generator_count() });
            }
        }
        Ok(HomCandidate { source, target, images })
    }

    pub fn from_file(file: &HomFile, source: Presentation, target: Presentation) -> Result<HomCandidate> {
        let images = resolve_images(file, &source, &target)?;
        Self::new(source, target, images)
    }

    /// `x_i -> x_i` on a presentation.
    pub fn identity(p: &Presentation) -> HomCandidate {
        let images = (1..=p.generator_count()).map(|g| Word::from_signed(&[g as i32])).collect();
        HomCandidate { source: p.clone(), target: p.clone(), images }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of a source word, freely reduced.
    pub fn apply(&self, w: &Word) -> Word {
        w.letters().iter().fold(Word::empty(), |acc, l| {
            let img = &self.images[l.generator() - 1];
            if l.is_inverse() {
                acc.mul(&img.inverse())
            } else {
                acc.mul(img)
            }
        })
    }

    /// Target generator names that occur in no image word.
    pub fn missing_target_generators(&self) -> Vec<String> {
        (1..=self.target.generator_count())
            .filter(|&g| !self.images.iter().any(|w| w.contains_generator(g)))
            .map(|g| self.target.generator_names()[g - 1].clone())
            .collect()
    }
}

/// `rho' . phi`: source generator `y_i` goes to `rho'(phi(y_i))`.
///
/// Fails with `RelatorNotSatisfied` when the composite does not kill a source
/// relator, i.e. when `phi` is not a homomorphism as seen by `rho'`.
pub fn compose_representation<R: Ring>(
    h: &HomCandidate,
    rep: &Representation<R>,
) -> Result<Representation<R>> {
    let images = h.images.iter().map(|w| rep.evaluate(w)).collect();
    Representation::new(rep.ring(), &h.source, images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RelatorFailure {
    /// The image of the relator has nonzero weighted exponent sum.
    Abelian { relator: usize, weighted_sum: i64 },
    /// The image of the relator is not the identity under a battery entry
    /// (0-based index into the battery).
    Representation { relator: usize, representation: usize },
}

/// Outcome of [`verify_homomorphism`]. Passing is a necessary condition for
/// being a homomorphism, not a proof: the word problem is not decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub necessary_condition_only: bool,
    pub relators: usize,
    pub battery_size: usize,
    pub passed: bool,
    pub failures: Vec<RelatorFailure>,
    pub covers_target_generators: bool,
    pub missing_target_generators: Vec<String>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check: necessary condition only (word problem not decided)")?;
        writeln!(f, "relators checked: {}", self.relators)?;
        writeln!(f, "battery size: {}", self.battery_size)?;
        for fail in &self.failures {
            match fail {
                RelatorFailure::Abelian { relator, weighted_sum } => {
                    writeln!(f, "FAIL relator {relator}: abelianized image has exponent sum {weighted_sum}")?
                }
                RelatorFailure::Representation { relator, representation } => writeln!(
                    f,
                    "FAIL relator {relator}: image is not the identity under battery representation {representation}"
                )?,
            }
        }
        if self.covers_target_generators {
            writeln!(f, "images contain every target generator")?;
        } else {
            writeln!(f, "target generators missing from images: {}", self.missing_target_generators.join(", "))?;
        }
        write!(f, "result: {}", if self.passed { "pass" } else { "fail" })
    }
}

/// Checks every source relator: its image must have zero weighted exponent sum
/// under `target_alpha` and evaluate to the identity under every battery
/// representation. Only the first failing battery entry per relator is
/// recorded.
pub fn verify_homomorphism<R: Ring>(
    h: &HomCandidate,
    battery: &[Representation<R>],
    target_alpha: &AbelianizationMap,
) -> Result<VerifyReport> {
    if target_alpha.weights().len() != h.target.generator_count() {
        return Err(Error::LengthMismatch {
            expected: h.target.generator_count(),
            found: target_alpha.weights().len(),
        });
    }
    for rep in battery {
        if rep.generator_count() != h.target.generator_count() {
            return Err(Error::LengthMismatch {
                expected: h.target.generator_count(),
                found: rep.generator_count(),
            });
        }
    }
    let mut failures = Vec::new();
    for (i, r) in h.source.relators().iter().enumerate() {
        let image = h.apply(r);
        let s = target_alpha.weight(&image);
        if s != 0 {
            failures.push(RelatorFailure::Abelian { relator: i + 1, weighted_sum: s });
        }
        if let Some(k) = battery.iter().position(|rep| !rep.evaluate(&image).is_identity()) {
            failures.push(RelatorFailure::Representation { relator: i + 1, representation: k });
        }
    }
    let missing = h.missing_target_generators();
    Ok(VerifyReport {
        necessary_condition_only: true,
        relators: h.source.relator_count(),
        battery_size: battery.len(),
        passed: failures.is_empty(),
        failures,
        covers_target_generators: missing.is_empty(),
        missing_target_generators: missing,
    })
}

/// Whether the classical Alexander polynomial of the target divides that of
/// the source over the integers. `false` rules out surjections.
pub fn classical_screening(source: &Presentation, target: &Presentation) -> Result<bool> {
    divides_up_to_units(&classical_alexander(target)?, &classical_alexander(source)?)
}

/// First (in census order) target numerator that divides no source numerator.
pub fn find_witness(
    source: &RepCensus,
    target: &RepCensus,
) -> Result<Option<LaurentPoly<PrimeField>>> {
    for q in target.polynomials() {
        let mut divides_some = false;
        for s in source.polynomials() {
            if divides_up_to_units(q, s)? {
                divides_some = true;
                break;
            }
        }
        if !divides_some {
            return Ok(Some(q.clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NoSurjection,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NoSurjection => "no-surjection",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSize {
    pub representations: usize,
    pub skipped: usize,
    pub filtered_out: usize,
    pub distinct: usize,
}

impl From<&RepCensus> for CensusSize {
    fn from(c: &RepCensus) -> Self {
        CensusSize {
            representations: c.representations,
            skipped: c.skipped,
            filtered_out: c.filtered_out,
            distinct: c.distinct(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub source: String,
    pub target: String,
    pub prime: u64,
    pub filter: RepFilter,
    pub classical_divisible: bool,
    pub witness_polynomial: Option<LaurentPoly<PrimeField>>,
    pub verdict: Verdict,
    pub source_census: CensusSize,
    pub target_census: CensusSize,
}

/// JSON shape of an [`ObstructionReport`]; field names are stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionRecord {
    pub source: String,
    pub target: String,
    pub prime: u64,
    pub filter: RepFilter,
    pub classical_divisible: bool,
    pub witness_polynomial: Option<String>,
    pub verdict: Verdict,
    pub source_census: CensusSize,
    pub target_census: CensusSize,
}

impl ObstructionReport {
    pub fn record(&self) -> ObstructionRecord {
        ObstructionRecord {
            source: self.source.clone(),
            target: self.target.clone(),
            prime: self.prime,
            filter: self.filter,
            classical_divisible: self.classical_divisible,
            witness_polynomial: self.witness_polynomial.as_ref().map(|q| q.to_string()),
            verdict: self.verdict,
            source_census: self.source_census.clone(),
            target_census: self.target_census.clone(),
        }
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let census = |c: &CensusSize| {
            format!(
                "{} reps, {} distinct numerators, {} skipped, {} filtered out",
                c.representations, c.distinct, c.skipped, c.filtered_out
            )
        };
        let rows = [
            ("source", self.source.clone()),
            ("target", self.target.clone()),
            ("prime", self.prime.to_string()),
            ("filter", self.filter.to_string()),
            ("classical divisible", self.classical_divisible.to_string()),
            (
                "witness",
                self.witness_polynomial.as_ref().map_or_else(|| "none".to_string(), |q| q.to_string()),
            ),
            ("source census", census(&self.source_census)),
            ("target census", census(&self.target_census)),
            ("verdict", self.verdict.to_string()),
        ];
        for (i, (k, v)) in rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{k:<20} {v}")?;
        }
        Ok(())
    }
}

/// Runs both censuses at `opts.prime` and the classical screening, and decides
/// whether a surjection `source -> target` is ruled out.
pub fn surjection_obstruction(
    source: &PresentationFile,
    target: &PresentationFile,
    opts: &SearchOptions,
) -> Result<ObstructionReport> {
    let classical_divisible = classical_screening(&source.presentation, &target.presentation)?;
    let s = numerator_census(&source.presentation, &source.alpha_or_default(), opts)?;
    let t = numerator_census(&target.presentation, &target.alpha_or_default(), opts)?;
    let witness_polynomial = find_witness(&s, &t)?;
    let verdict = if !classical_divisible || witness_polynomial.is_some() {
        Verdict::NoSurjection
    } else {
        Verdict::Inconclusive
    };
    Ok(ObstructionReport {
        source: source.display_name(),
        target: target.display_name(),
        prime: opts.prime,
        filter: opts.filter,
        classical_divisible,
        witness_polynomial,
        verdict,
        source_census: (&s).into(),
        target_census: (&t).into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::RepFile;
    use crate::knots::{load_bundled, FIGURE_EIGHT_REP_MOD_7, SURJECTION_9_37_TO_4_1};

    fn pres(id: &str) -> Presentation {
        load_bundled(id).unwrap().presentation
    }

    #[test]
    fn identity_candidate_passes() {
        let p = pres("4_1");
        let rho = RepFile::parse(FIGURE_EIGHT_REP_MOD_7).unwrap().to_representation(&p).unwrap();
        let h = HomCandidate::identity(&p);
        let r = verify_homomorphism(&h, &[rho], &AbelianizationMap::all_ones(4)).unwrap();
        assert!(r.passed && r.covers_target_generators);
    }

    #[test]
    fn collapsing_candidate_fails_on_second_relator() {
        let p = pres("4_1");
        let rho = RepFile::parse(FIGURE_EIGHT_REP_MOD_7).unwrap().to_representation(&p).unwrap();
        let images = vec![
            Word::from_signed(&[1]),
            Word::from_signed(&[2]),
            Word::from_signed(&[1]),
            Word::from_signed(&[1]),
        ];
        let h = HomCandidate::new(p.clone(), p, images).unwrap();
        let r = verify_homomorphism(&h, &[rho], &AbelianizationMap::all_ones(4)).unwrap();
        assert!(!r.passed);
        assert!(r.failures.contains(&RelatorFailure::Representation { relator: 2, representation: 0 }));
        assert_eq!(r.missing_target_generators, vec!["x3".to_string(), "x4".to_string()]);
    }

    #[test]
    fn surjection_file_composes() {
        let s = pres("9_37");
        let t = pres("4_1");
        let file = HomFile::parse(SURJECTION_9_37_TO_4_1).unwrap();
        let h = HomCandidate::from_file(&file, s, t.clone()).unwrap();
        let rho = RepFile::parse(FIGURE_EIGHT_REP_MOD_7).unwrap().to_representation(&t).unwrap();
        let composed = compose_representation(&h, &rho).unwrap();
        assert_eq!(composed.generator_count(), 9);
        assert!(h.missing_target_generators().is_empty());
    }

    #[test]
    fn screening_examples() {
        assert!(classical_screening(&pres("4_1"), &pres("4_1")).unwrap());
        assert!(!classical_screening(&pres("3_1"), &pres("4_1")).unwrap());
        assert!(classical_screening(&pres("3_1"), &pres("unknot")).unwrap());
    }

    #[test]
    fn unknot_target_is_inconclusive() {
        let r = surjection_obstruction(
            &load_bundled("3_1").unwrap(),
            &load_bundled("unknot").unwrap(),
            &SearchOptions::new(3),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.witness_polynomial.is_none());
    }
}
