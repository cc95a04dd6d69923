//! Hierarchical gNB logical identifiers.
//!
//! A deployment addresses its nodes as market / vCU / vDU. Two encodings
//! are in circulation:
//!
//! - the human-facing 11-digit decimal string `MMMCCCCDDDD` (3-digit
//!   market, 4-digit vCU, 4-digit vDU), and
//! - a packed 32-bit form with a 20-bit prefix (`market * 10_000 + vcu`)
//!   and a 12-bit suffix (`vdu`).
//!
//! The packed form cannot hold every decimal identifier: the prefix tops
//! out at 2^20 - 1 = 1_048_575 (so markets above 104 need small vCU
//! numbers) and the suffix at 4_095. [`pack_32`] surfaces both limits as
//! typed errors instead of truncating; [`unpack_32`] is total on `u32`.
//!
//! By convention the thousands digit of the vDU number encodes the band
//! class a DU serves: 4xxx low band, 7xxx mid band, 9xxx ultra-wideband
//! mmWave. [`GnbId::band_hint`] recovers that convention.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const MARKET_MAX: u32 = 999;
pub const VCU_MAX: u32 = 9_999;
pub const VDU_MAX: u32 = 9_999;
/// Packed prefix width: `market * 10_000 + vcu` must fit in 20 bits.
pub const PREFIX_BITS: u32 = 20;
/// Packed suffix width: `vdu` must fit in 12 bits.
pub const SUFFIX_BITS: u32 = 12;
pub const PREFIX_MAX: u32 = (1 << PREFIX_BITS) - 1;
pub const SUFFIX_MAX: u32 = (1 << SUFFIX_BITS) - 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AddressError {
    #[error("{field} {value} out of range 0..={max}")]
    FieldRange {
        field: &'static str,
        value: u32,
        max: u32,
    },
    #[error("identifier must be exactly 11 decimal digits, got {0:?}")]
    Malformed(String),
    #[error("market/vCU prefix {prefix} exceeds the {PREFIX_BITS}-bit packed limit {PREFIX_MAX}")]
    PrefixOverflow { prefix: u32 },
    #[error("vDU {vdu} exceeds the {SUFFIX_BITS}-bit packed limit {SUFFIX_MAX}")]
    SuffixOverflow { vdu: u32 },
}

/// A validated market / vCU / vDU triple.
///
/// Serializes as its 11-digit string form, the representation used in all
/// plan and report documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GnbId {
    market: u16,
    vcu: u16,
    vdu: u16,
}

impl GnbId {
    pub fn new(market: u32, vcu: u32, vdu: u32) -> Result<Self, AddressError> {
        let check = |field, value, max| {
            if value > max {
                Err(AddressError::FieldRange { field, value, max })
            } else {
                Ok(value as u16)
            }
        };
        Ok(GnbId {
            market: check("market", market, MARKET_MAX)?,
            vcu: check("vCU", vcu, VCU_MAX)?,
            vdu: check("vDU", vdu, VDU_MAX)?,
        })
    }

    pub fn market(&self) -> u32 {
        self.market as u32
    }

    pub fn vcu(&self) -> u32 {
        self.vcu as u32
    }

    pub fn vdu(&self) -> u32 {
        self.vdu as u32
    }

    /// Band class suggested by the vDU numbering convention.
    pub fn band_hint(&self) -> BandHint {
        band_hint_from_vdu(self.vdu())
    }
}

impl fmt::Display for GnbId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:03}{:04}{:04}", self.market, self.vcu, self.vdu)
    }
}

impl From<GnbId> for String {
    fn from(id: GnbId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for GnbId {
    type Error = AddressError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl FromStr for GnbId {
    type Err = AddressError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        decode_string(s)
    }
}

/// Renders the 11-digit decimal form, zero-padded per field.
pub fn encode_string(id: &GnbId) -> String {
    id.to_string()
}

/// Parses the 11-digit decimal form; inverse of [`encode_string`].
pub fn decode_string(s: &str) -> Result<GnbId, AddressError> {
    if s.len() != 11 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(AddressError::Malformed(s.to_string()));
    }
    // Three, four and four digits parse below each field maximum by
    // construction, so `new` cannot fail here.
    let market: u32 = s[0..3].parse().unwrap();
    let vcu: u32 = s[3..7].parse().unwrap();
    let vdu: u32 = s[7..11].parse().unwrap();
    GnbId::new(market, vcu, vdu)
}

/// The 32-bit packed identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PackedGnbId(pub u32);

impl PackedGnbId {
    pub fn hex(&self) -> String {
        format!("{:#010x}", self.0)
    }
}

impl fmt::Display for PackedGnbId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#010x}", self.0)
    }
}

/// Packs an identifier into 32 bits: 20-bit `market * 10_000 + vcu`
/// prefix, 12-bit `vdu` suffix.
///
/// Fails with [`AddressError::PrefixOverflow`] or
/// [`AddressError::SuffixOverflow`] for identifiers whose decimal form is
/// valid but whose fields exceed the binary field widths.
pub fn pack_32(id: &GnbId) -> Result<PackedGnbId, AddressError> {
    let prefix = id.market() * 10_000 + id.vcu();
    if prefix > PREFIX_MAX {
        return Err(AddressError::PrefixOverflow { prefix });
    }
    if id.vdu() > SUFFIX_MAX {
        return Err(AddressError::SuffixOverflow { vdu: id.vdu() });
    }
    Ok(PackedGnbId((prefix << SUFFIX_BITS) | id.vdu()))
}

/// Unpacks a 32-bit identifier; total, every `u32` decodes to some triple.
pub fn unpack_32(packed: PackedGnbId) -> GnbId {
    let prefix = packed.0 >> SUFFIX_BITS;
    let vdu = packed.0 & SUFFIX_MAX;
    GnbId {
        market: (prefix / 10_000) as u16,
        vcu: (prefix % 10_000) as u16,
        vdu: vdu as u16,
    }
}

/// Band class encoded in a vDU number's thousands digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandHint {
    /// 4xxx: low-band DU.
    Low,
    /// 7xxx: mid-band DU.
    Mid,
    /// 9xxx: ultra-wideband (mmWave) DU.
    Uwb,
    /// Any other thousands digit carries no convention.
    Unspecified,
}

/// Reads the numbering convention off a vDU number.
pub fn band_hint_from_vdu(vdu: u32) -> BandHint {
    match vdu / 1_000 {
        4 => BandHint::Low,
        7 => BandHint::Mid,
        9 => BandHint::Uwb,
        _ => BandHint::Unspecified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn packed_space_exactly_covers_u32() {
        assert_eq!((1_u64 << PREFIX_BITS) * (1_u64 << SUFFIX_BITS), 1_u64 << 32);
    }

    #[test]
    fn encodes_with_zero_padding() {
        let id = GnbId::new(1, 2, 1003).unwrap();
        assert_eq!(encode_string(&id), "00100021003");
        assert_eq!(id.to_string(), "00100021003");
    }

    #[test]
    fn decodes_the_canonical_forms() {
        let id = decode_string("00100021003").unwrap();
        assert_eq!((id.market(), id.vcu(), id.vdu()), (1, 2, 1003));
        let id = decode_string("99999999999").unwrap();
        assert_eq!((id.market(), id.vcu(), id.vdu()), (999, 9999, 9999));
        let id = decode_string("00000000000").unwrap();
        assert_eq!((id.market(), id.vcu(), id.vdu()), (0, 0, 0));
    }

    #[test]
    fn rejects_malformed_strings() {
        for s in [
            "",
            "123",
            "0010002100",
            "001000210035",
            "0010002100a",
            "-0100021003",
        ] {
            assert_eq!(
                decode_string(s),
                Err(AddressError::Malformed(s.to_string()))
            );
        }
    }

    #[test]
    fn rejects_out_of_range_fields() {
        assert_eq!(
            GnbId::new(1000, 0, 0),
            Err(AddressError::FieldRange {
                field: "market",
                value: 1000,
                max: MARKET_MAX
            })
        );
        assert_eq!(
            GnbId::new(0, 10_000, 0),
            Err(AddressError::FieldRange {
                field: "vCU",
                value: 10_000,
                max: VCU_MAX
            })
        );
        assert_eq!(
            GnbId::new(0, 0, 10_000),
            Err(AddressError::FieldRange {
                field: "vDU",
                value: 10_000,
                max: VDU_MAX
            })
        );
    }

    #[test]
    fn packs_the_worked_example() {
        let id = GnbId::new(1, 2, 1003).unwrap();
        let packed = pack_32(&id).unwrap();
        assert_eq!(packed.0, 10_002 * 4_096 + 1_003);
        assert_eq!(unpack_32(packed), id);
    }

    #[test]
    fn prefix_overflow_is_reachable_from_valid_decimal_ids() {
        // 999/9999 is a perfectly valid decimal identifier whose prefix
        // 9_999_999 cannot fit in 20 bits.
        let id = GnbId::new(999, 9_999, 1).unwrap();
        assert_eq!(
            pack_32(&id),
            Err(AddressError::PrefixOverflow { prefix: 9_999_999 })
        );
        let id = GnbId::new(104, 8_575, 1).unwrap();
        assert_eq!(pack_32(&id).unwrap().0 >> SUFFIX_BITS, PREFIX_MAX);
        let id = GnbId::new(104, 8_576, 1).unwrap();
        assert_eq!(
            pack_32(&id),
            Err(AddressError::PrefixOverflow { prefix: 1_048_576 })
        );
    }

    #[test]
    fn suffix_overflow_is_reachable_from_valid_decimal_ids() {
        let id = GnbId::new(1, 1, 4_095).unwrap();
        assert!(pack_32(&id).is_ok());
        let id = GnbId::new(1, 1, 4_096).unwrap();
        assert_eq!(
            pack_32(&id),
            Err(AddressError::SuffixOverflow { vdu: 4_096 })
        );
    }

    #[test]
    fn band_hints_follow_the_numbering_convention() {
        assert_eq!(band_hint_from_vdu(4_001), BandHint::Low);
        assert_eq!(band_hint_from_vdu(7_250), BandHint::Mid);
        assert_eq!(band_hint_from_vdu(9_999), BandHint::Uwb);
        assert_eq!(band_hint_from_vdu(1_003), BandHint::Unspecified);
        assert_eq!(band_hint_from_vdu(0), BandHint::Unspecified);
        let id = GnbId::new(1, 2, 9_001).unwrap();
        assert_eq!(id.band_hint(), BandHint::Uwb);
    }

    #[test]
    fn hex_rendering_is_stable() {
        let packed = pack_32(&GnbId::new(0, 1, 1).unwrap()).unwrap();
        assert_eq!(packed.hex(), "0x00001001");
        assert_eq!(packed.to_string(), "0x00001001");
    }

    #[test]
    fn serde_uses_the_string_form() {
        let id = GnbId::new(1, 2, 1003).unwrap();
        assert_eq!(serde_json::to_string(&id).unwrap(), "\"00100021003\"");
        let back: GnbId = serde_json::from_str("\"00100021003\"").unwrap();
        assert_eq!(back, id);
        assert!(serde_json::from_str::<GnbId>("\"123\"").is_err());
    }

    fn id_strategy() -> impl Strategy<Value = GnbId> {
        (0_u32..=MARKET_MAX, 0_u32..=VCU_MAX, 0_u32..=VDU_MAX)
            .prop_map(|(m, c, d)| GnbId::new(m, c, d).unwrap())
    }

    proptest! {
        /// decode(encode(id)) == id over the whole decimal domain.
        #[test]
        fn string_round_trip(id in id_strategy()) {
            prop_assert_eq!(decode_string(&encode_string(&id)).unwrap(), id);
        }

        /// Packing succeeds exactly on the documented sub-domain, and
        /// round-trips there.
        #[test]
        fn packed_round_trip_on_its_domain(id in id_strategy()) {
            let prefix = id.market() * 10_000 + id.vcu();
            match pack_32(&id) {
                Ok(packed) => {
                    prop_assert!(prefix <= PREFIX_MAX && id.vdu() <= SUFFIX_MAX);
                    prop_assert_eq!(unpack_32(packed), id);
                }
                Err(AddressError::PrefixOverflow { prefix: p }) => {
                    prop_assert_eq!(p, prefix);
                    prop_assert!(prefix > PREFIX_MAX);
                }
                Err(AddressError::SuffixOverflow { vdu }) => {
                    prop_assert_eq!(vdu, id.vdu());
                    prop_assert!(prefix <= PREFIX_MAX && vdu > SUFFIX_MAX);
                }
                Err(other) => prop_assert!(false, "unexpected error {other:?}"),
            }
        }

        /// Every u32 unpacks, and re-packing lands back on it whenever the
        /// decoded triple is in the packable domain.
        #[test]
        fn unpack_then_pack_is_identity(raw in any::<u32>()) {
            let id = unpack_32(PackedGnbId(raw));
            prop_assert!(id.market() <= MARKET_MAX);
            prop_assert!(id.vcu() <= VCU_MAX);
            prop_assert!(id.vdu() <= SUFFIX_MAX);
            // The 20-bit prefix decodes to market < 105, so packing the
            // decoded triple always succeeds and restores the raw word.
            prop_assert_eq!(pack_32(&id).unwrap().0, raw);
        }

        /// Packed ordering respects (market, vcu, vdu) ordering.
        #[test]
        fn packing_preserves_order(a in id_strategy(), b in id_strategy()) {
            if let (Ok(pa), Ok(pb)) = (pack_32(&a), pack_32(&b)) {
                prop_assert_eq!(pa.0.cmp(&pb.0), a.cmp(&b));
            }
        }
    }
}
