//! Spectrum holdings, band classification and component-carrier formation.
//!
//! An operator's licensed spectrum arrives as a bag of frequency blocks,
//! often accumulated across auctions and mergers. Radio planning wants the
//! opposite view: maximal contiguous runs per band, carved into component
//! carriers no wider than what the radio can channelize. This module does
//! that transformation in two steps:
//!
//! 1. [`contiguity_partition`] sorts validated [`SpectrumBlock`]s and groups
//!    them into runs that are frequency-adjacent *and* share a band tag.
//!    Blocks that merely touch numerically but belong to different bands
//!    stay separate: they can be aggregated across bands (see [`CaGroup`])
//!    but never fused into one carrier.
//! 2. [`channelize`] tiles each run with component carriers of at most the
//!    hardware cap, largest first from the low edge, so an odd remainder
//!    ends up in the final (narrowest) carrier.
//!
//! ```
//! use ranplan::spectrum::{contiguity_partition, channelize, SpectrumBlock};
//!
//! let holdings = vec![
//!     SpectrumBlock::new("c1", "n4", 2110.0, 2120.0).unwrap(),
//!     SpectrumBlock::new("c2", "n4", 2120.0, 2130.0).unwrap(),
//! ];
//! let runs = contiguity_partition(&holdings).unwrap();
//! assert_eq!(runs.len(), 1);
//! let carriers = channelize(&runs[0], 100.0).unwrap();
//! assert_eq!(carriers[0].bandwidth_mhz(), 20.0);
//! assert!(carriers[0].aggregated);
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper edge of the low band, MHz.
pub const LOW_BAND_MAX_MHZ: f64 = 1_000.0;
/// Upper edge of the mid band (and of FR1), MHz.
pub const MID_BAND_MAX_MHZ: f64 = 7_125.0;
/// Lower edge of the high (mmWave) band, MHz.
pub const HIGH_BAND_MIN_MHZ: f64 = 24_000.0;
/// Upper edge of the high band, MHz.
pub const HIGH_BAND_MAX_MHZ: f64 = 47_000.0;

/// Errors raised while validating or partitioning spectrum holdings.
#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("block {label}: f_high {f_high_mhz} MHz must exceed f_low {f_low_mhz} MHz")]
    EmptyInterval {
        label: String,
        f_low_mhz: f64,
        f_high_mhz: f64,
    },
    #[error("block {label}: frequencies must be finite and non-negative")]
    InvalidEdges { label: String },
    #[error("block {label}: band tag must be non-empty")]
    MissingBand { label: String },
    #[error("blocks {a} and {b} overlap")]
    OverlappingBlocks { a: String, b: String },
    #[error(
        "frequency {f_low_mhz} MHz falls outside the low (<= {LOW_BAND_MAX_MHZ}), \
         mid (<= {MID_BAND_MAX_MHZ}) and high ({HIGH_BAND_MIN_MHZ}..={HIGH_BAND_MAX_MHZ}) ranges"
    )]
    UnclassifiableBand { f_low_mhz: f64 },
    #[error("channelization cap must be positive, got {0} MHz")]
    InvalidCap(f64),
}

/// One licensed frequency interval.
///
/// `band` is the 3GPP band tag (`"n4"`, `"n77"`, `"n261"`, ...); only
/// equality of tags matters here, the string is never parsed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBlock {
    pub carrier_label: String,
    pub band: String,
    pub f_low_mhz: f64,
    pub f_high_mhz: f64,
}

impl SpectrumBlock {
    /// Builds and validates a block.
    pub fn new(
        carrier_label: impl Into<String>,
        band: impl Into<String>,
        f_low_mhz: f64,
        f_high_mhz: f64,
    ) -> Result<Self, SpectrumError> {
        let block = SpectrumBlock {
            carrier_label: carrier_label.into(),
            band: band.into(),
            f_low_mhz,
            f_high_mhz,
        };
        block.validate()?;
        Ok(block)
    }

    /// Checks the interval is non-empty, finite and band-tagged.
    pub fn validate(&self) -> Result<(), SpectrumError> {
        if !self.f_low_mhz.is_finite() || !self.f_high_mhz.is_finite() || self.f_low_mhz < 0.0 {
            return Err(SpectrumError::InvalidEdges {
                label: self.carrier_label.clone(),
            });
        }
        if self.f_high_mhz <= self.f_low_mhz {
            return Err(SpectrumError::EmptyInterval {
                label: self.carrier_label.clone(),
                f_low_mhz: self.f_low_mhz,
                f_high_mhz: self.f_high_mhz,
            });
        }
        if self.band.trim().is_empty() {
            return Err(SpectrumError::MissingBand {
                label: self.carrier_label.clone(),
            });
        }
        Ok(())
    }

    pub fn bandwidth_mhz(&self) -> f64 {
        self.f_high_mhz - self.f_low_mhz
    }
}

/// Propagation class of a band, decided by its lower edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BandClass {
    /// Coverage layer, at or below 1 GHz.
    Low,
    /// Capacity layer, above 1 GHz up to 7.125 GHz.
    Mid,
    /// mmWave, 24-47 GHz.
    High,
}

/// 3GPP frequency range; FR2 starts at 24 GHz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrequencyRange {
    #[serde(rename = "FR1")]
    Fr1,
    #[serde(rename = "FR2")]
    Fr2,
}

impl FrequencyRange {
    pub fn label(&self) -> &'static str {
        match self {
            FrequencyRange::Fr1 => "FR1",
            FrequencyRange::Fr2 => "FR2",
        }
    }
}

/// Band class plus the frequency range it implies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandClassification {
    pub class: BandClass,
    pub fr: FrequencyRange,
}

/// Classifies a lower band edge into low/mid/high and FR1/FR2.
///
/// Frequencies in the gap between 7.125 and 24 GHz (or above 47 GHz) are
/// rejected: nothing in this toolkit knows how to plan them.
pub fn classify_range(f_low_mhz: f64) -> Result<BandClassification, SpectrumError> {
    if !f_low_mhz.is_finite() || f_low_mhz < 0.0 {
        return Err(SpectrumError::UnclassifiableBand { f_low_mhz });
    }
    if f_low_mhz <= LOW_BAND_MAX_MHZ {
        Ok(BandClassification {
            class: BandClass::Low,
            fr: FrequencyRange::Fr1,
        })
    } else if f_low_mhz <= MID_BAND_MAX_MHZ {
        Ok(BandClassification {
            class: BandClass::Mid,
            fr: FrequencyRange::Fr1,
        })
    } else if (HIGH_BAND_MIN_MHZ..=HIGH_BAND_MAX_MHZ).contains(&f_low_mhz) {
        Ok(BandClassification {
            class: BandClass::High,
            fr: FrequencyRange::Fr2,
        })
    } else {
        Err(SpectrumError::UnclassifiableBand { f_low_mhz })
    }
}

/// Classifies a block by its lower edge.
pub fn classify_band(block: &SpectrumBlock) -> Result<BandClassification, SpectrumError> {
    block.validate()?;
    classify_range(block.f_low_mhz)
}

/// Splits holdings into maximal runs of frequency-adjacent, same-band
/// blocks, ordered by ascending frequency.
///
/// Adjacency is exact: `next.f_low_mhz == prev.f_high_mhz`. Regulatory
/// block edges are integral (or at worst half-) MHz values, so the equality
/// is meaningful; holdings with deliberate guard gaps simply produce more
/// runs. Overlapping blocks indicate a corrupted holdings list and are
/// rejected.
pub fn contiguity_partition(
    blocks: &[SpectrumBlock],
) -> Result<Vec<Vec<SpectrumBlock>>, SpectrumError> {
    for block in blocks {
        block.validate()?;
    }
    let mut sorted = blocks.to_vec();
    sorted.sort_by(|a, b| {
        a.f_low_mhz
            .total_cmp(&b.f_low_mhz)
            .then_with(|| a.carrier_label.cmp(&b.carrier_label))
    });

    let mut runs: Vec<Vec<SpectrumBlock>> = Vec::new();
    // Rightmost edge seen so far, used for the global overlap check; with
    // disjoint intervals it always belongs to the previous block in sorted
    // order.
    let mut high_water: Option<(f64, String)> = None;
    for block in sorted {
        if let Some((edge, ref label)) = high_water {
            if block.f_low_mhz < edge {
                return Err(SpectrumError::OverlappingBlocks {
                    a: label.clone(),
                    b: block.carrier_label,
                });
            }
        }
        high_water = Some((block.f_high_mhz, block.carrier_label.clone()));

        let extend = runs
            .last()
            .and_then(|run| run.last())
            .is_some_and(|prev| block.f_low_mhz == prev.f_high_mhz && block.band == prev.band);
        if extend {
            runs.last_mut().unwrap().push(block);
        } else {
            runs.push(vec![block]);
        }
    }
    Ok(runs)
}

/// A deployable carrier covering `[f_low_mhz, f_high_mhz)` of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentCarrier {
    /// Ordinal identifier within a holding, `c101`, `c201`, ...
    pub id: String,
    pub f_low_mhz: f64,
    pub f_high_mhz: f64,
    /// Labels of the source blocks this carrier draws spectrum from.
    pub members: Vec<String>,
    /// True when the carrier fuses two or more licensed blocks.
    pub aggregated: bool,
}

impl ComponentCarrier {
    pub fn bandwidth_mhz(&self) -> f64 {
        self.f_high_mhz - self.f_low_mhz
    }
}

/// Tiles one contiguous run with carriers of width at most `cc_cap_mhz`.
///
/// Carriers are cut greedily from the low edge, so all but the last are
/// exactly `cc_cap_mhz` wide and the count is minimal
/// (`ceil(total / cap)`). Carrier ids start at `c101`.
pub fn channelize(
    run: &[SpectrumBlock],
    cc_cap_mhz: f64,
) -> Result<Vec<ComponentCarrier>, SpectrumError> {
    channelize_from(run, cc_cap_mhz, 1)
}

/// [`channelize`] with the starting ordinal exposed, so the runs of one
/// holding can be numbered as a single sequence (`c101`, `c201`, ... across
/// run boundaries).
pub fn channelize_from(
    run: &[SpectrumBlock],
    cc_cap_mhz: f64,
    first_ordinal: usize,
) -> Result<Vec<ComponentCarrier>, SpectrumError> {
    if cc_cap_mhz <= 0.0 || !cc_cap_mhz.is_finite() {
        return Err(SpectrumError::InvalidCap(cc_cap_mhz));
    }
    for block in run {
        block.validate()?;
    }
    let Some(first) = run.first() else {
        return Ok(Vec::new());
    };
    let f_high = run.last().unwrap().f_high_mhz;

    let mut carriers = Vec::new();
    let mut lo = first.f_low_mhz;
    let mut ordinal = first_ordinal;
    while lo < f_high {
        let hi = (lo + cc_cap_mhz).min(f_high);
        let members: Vec<String> = run
            .iter()
            .filter(|b| b.f_low_mhz < hi && b.f_high_mhz > lo)
            .map(|b| b.carrier_label.clone())
            .collect();
        carriers.push(ComponentCarrier {
            id: format!("c{ordinal}01"),
            f_low_mhz: lo,
            f_high_mhz: hi,
            aggregated: members.len() >= 2,
            members,
        });
        lo = hi;
        ordinal += 1;
    }
    Ok(carriers)
}

/// An inter-band carrier-aggregation group.
///
/// Carriers from different bands are combined at the scheduler, not in
/// frequency: the group records their ids side by side and never merges
/// the underlying intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaGroup {
    pub label: String,
    pub cc_ids: Vec<String>,
}

impl CaGroup {
    pub fn new(label: impl Into<String>, carriers: &[ComponentCarrier]) -> Self {
        CaGroup {
            label: label.into(),
            cc_ids: carriers.iter().map(|c| c.id.clone()).collect(),
        }
    }
}
