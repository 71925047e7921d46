//! Knot presentations shipped with the crate.

use crate::error::{Error, Result};
use crate::presentation::PresentationFile;

/// `(id, file contents)` for every bundled presentation.
pub const BUNDLED_KNOTS: &[(&str, &str)] = &[
    ("unknot", include_str!("../data/knots/unknot.pres")),
    ("3_1", include_str!("../data/knots/3_1.pres")),
    ("4_1", include_str!("../data/knots/4_1.pres")),
    ("8_18", include_str!("../data/knots/8_18.pres")),
    ("8_21", include_str!("../data/knots/8_21.pres")),
    ("9_12", include_str!("../data/knots/9_12.pres")),
    ("9_24", include_str!("../data/knots/9_24.pres")),
    ("9_37", include_str!("../data/knots/9_37.pres")),
    ("9_39", include_str!("../data/knots/9_39.pres")),
    ("9_40", include_str!("../data/knots/9_40.pres")),
];

/// The representation of the figure-eight group into SL(2, Z/7Z) used as the
/// standard example.
pub const FIGURE_EIGHT_REP_MOD_7: &str = include_str!("../data/4_1_rho.rep");

/// The surjection from the 9_37 knot group onto the figure-eight group.
pub const SURJECTION_9_37_TO_4_1: &str = include_str!("../data/9_37_to_4_1.hom");

/// A candidate surjection from the 8_18 knot group onto the figure-eight
/// group; it passes every SL(2, Z/7Z) check but is not proven.
pub const CANDIDATE_8_18_TO_4_1: &str = include_str!("../data/8_18_to_4_1.hom");

/// `(file name, contents)` of the bundled homomorphism candidates.
pub const BUNDLED_HOMS: &[(&str, &str)] = &[
    ("9_37_to_4_1.hom", SURJECTION_9_37_TO_4_1),
    ("8_18_to_4_1.hom", CANDIDATE_8_18_TO_4_1),
];

pub fn bundled_ids() -> impl Iterator<Item = &'static str> {
    BUNDLED_KNOTS.iter().map(|(id, _)| *id)
}

pub fn bundled_text(id: &str) -> Option<&'static str> {
    BUNDLED_KNOTS.iter().find(|(k, _)| *k == id).map(|(_, text)| *text)
}

pub fn load_bundled(id: &str) -> Result<PresentationFile> {
    let text = bundled_text(id).ok_or_else(|| Error::Format(format!("no bundled knot `{id}`")))?;
    PresentationFile::parse(text)
}
