//! Spectrum holdings -> contiguous runs -> component carriers.
//!
//! Walks the three canonical shapes a licensed portfolio takes:
//! a fully contiguous block set that fuses into one aggregated carrier,
//! the same set with a hole in the middle, and a wide mmWave block that
//! must be split because no DU processes 400 MHz in one carrier.
//!
//! Run with: cargo run --example spectrum_scenarios

use ranplan::spectrum::{channelize, channelize_from, contiguity_partition, SpectrumBlock};

fn show(title: &str, blocks: &[SpectrumBlock], cc_cap_mhz: f64) {
    println!("== {title}");
    for b in blocks {
        println!(
            "   block {:<4} {:>6}  {:>7.1} - {:>7.1} MHz  ({} MHz)",
            b.carrier_label,
            b.band,
            b.f_low_mhz,
            b.f_high_mhz,
            b.bandwidth_mhz()
        );
    }

    let runs = contiguity_partition(blocks).expect("holdings are well-formed");
    println!("   -> {} contiguous run(s)", runs.len());

    let mut ordinal = 1;
    let mut carriers = Vec::new();
    for run in &runs {
        let cut = channelize_from(run, cc_cap_mhz, ordinal).expect("cap is positive");
        ordinal += cut.len();
        carriers.extend(cut);
    }
    for cc in &carriers {
        println!(
            "   carrier {:<5} {:>7.1} - {:>7.1} MHz  {:>5.1} MHz  {}  members: {}",
            cc.id,
            cc.f_low_mhz,
            cc.f_high_mhz,
            cc.bandwidth_mhz(),
            if cc.aggregated {
                "aggregated"
            } else {
                "plain     "
            },
            cc.members.join("+")
        );
    }
    println!("   cells needed: {} (one per carrier)\n", carriers.len());
}

fn main() {
    let b = |label: &str, band: &str, lo: f64, hi: f64| {
        SpectrumBlock::new(label, band, lo, hi).expect("valid block")
    };

    // Four AWS blocks; c1..c3 abut exactly, c7 sits in another band.
    let full_set = vec![
        b("c1", "n4", 2110.0, 2120.0),
        b("c2", "n4", 2120.0, 2130.0),
        b("c3", "n4", 2130.0, 2135.0),
        b("c7", "n7", 2675.0, 2690.0),
    ];
    show(
        "Scenario 1: contiguous mid-band set fuses into one 25 MHz carrier",
        &full_set,
        100.0,
    );

    // Losing c2 splits the run: two small carriers where one stood.
    let holed_set = vec![
        b("c1", "n4", 2110.0, 2120.0),
        b("c3", "n4", 2130.0, 2135.0),
        b("c7", "n7", 2675.0, 2690.0),
    ];
    show(
        "Scenario 2: losing the middle block costs two extra cells",
        &holed_set,
        100.0,
    );

    // One 400 MHz mmWave license, carved at the 100 MHz carrier cap.
    let mmwave = vec![b("uw", "n261", 28_000.0, 28_400.0)];
    show(
        "Scenario 3: 400 MHz mmWave block splits into four carriers",
        &mmwave,
        100.0,
    );

    // The headline arithmetic, stated as code.
    let runs = contiguity_partition(&full_set).unwrap();
    let s1: usize = runs
        .iter()
        .map(|r| channelize(r, 100.0).unwrap().len())
        .sum();
    let runs = contiguity_partition(&holed_set).unwrap();
    let s2: usize = runs
        .iter()
        .map(|r| channelize(r, 100.0).unwrap().len())
        .sum();
    assert_eq!(s1, 2);
    assert_eq!(s2, 3);
    println!(
        "Aggregation saves {} cell id(s) and scheduler context(s) here.",
        s2 - s1
    );
}
