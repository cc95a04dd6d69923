//! gNB logical identifiers: 11-digit decimal form vs 32-bit packed form.
//!
//! The decimal scheme MMMCCCCDDDD addresses up to 10^11 nodes; the packed
//! form squeezes market*10000+vcu into 20 bits and the vDU into 12. The
//! two do not cover the same space, and that mismatch is exactly what
//! this module makes explicit.
//!
//! Run with: cargo run --example gnb_addressing

use ranplan::addressing::{
    band_hint_from_vdu, decode_string, encode_string, pack_32, unpack_32, GnbId, PackedGnbId,
    PREFIX_MAX, SUFFIX_MAX,
};

fn main() {
    // A mid-band DU three-deep in market 1, vCU 2.
    let id = GnbId::new(1, 2, 7003).unwrap();
    println!(
        "fields  : market {} / vCU {} / vDU {}",
        id.market(),
        id.vcu(),
        id.vdu()
    );
    println!("decimal : {}", encode_string(&id));
    println!(
        "band    : {:?} (from the vDU thousands digit)",
        id.band_hint()
    );
    assert_eq!(encode_string(&id), "00100027003");
    assert_eq!(decode_string("00100027003").unwrap(), id);

    // 7003 is a perfectly good decimal vDU but exceeds 12 bits.
    match pack_32(&id) {
        Err(err) => println!("packed  : unavailable -> {err}"),
        Ok(_) => unreachable!("7003 > {SUFFIX_MAX}"),
    }

    // A low-numbered vDU packs fine and round-trips exactly.
    let id = GnbId::new(1, 2, 1003).unwrap();
    let packed = pack_32(&id).unwrap();
    println!(
        "\n{} packs to {} ({})",
        encode_string(&id),
        packed.0,
        packed.hex()
    );
    assert_eq!(packed.0, 10_002 * 4_096 + 1_003);
    assert_eq!(unpack_32(packed), id);

    // The packed prefix tops out at 2^20 - 1: markets above 104 only fit
    // with small vCU numbers.
    println!("\npacked prefix limit {PREFIX_MAX} = market*10000 + vcu");
    let edge = GnbId::new(104, 8575, 0).unwrap();
    println!(
        "  (104, 8575) -> prefix {}  packs: {}",
        104 * 10_000 + 8_575,
        pack_32(&edge).is_ok()
    );
    let over = GnbId::new(104, 8576, 0).unwrap();
    println!(
        "  (104, 8576) -> prefix {}  packs: {}",
        104 * 10_000 + 8_576,
        pack_32(&over).is_ok()
    );
    let max = GnbId::new(999, 9999, 9999).unwrap();
    println!(
        "  (999, 9999) -> prefix {}  packs: {}",
        999 * 10_000 + 9_999,
        pack_32(&max).is_ok()
    );

    // unpack_32 is total: every u32 names some valid decimal identifier.
    for raw in [0u32, 1, u32::MAX / 2, u32::MAX] {
        let id = unpack_32(PackedGnbId(raw));
        println!(
            "  unpack {raw:>10} -> {} (market {}, vCU {}, vDU {})",
            encode_string(&id),
            id.market(),
            id.vcu(),
            id.vdu()
        );
    }

    // The numbering convention ties vDU ranges to the band a DU serves.
    println!("\nvDU numbering convention:");
    for vdu in [4001, 7003, 9001, 1234] {
        println!("  {vdu} -> {:?}", band_hint_from_vdu(vdu));
    }
}
