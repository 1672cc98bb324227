//! Counter-based bit streams: reading, even/odd splitting and per-item
//! derivation.
//!
//! ```bash
//! cargo run --example bitstream_split
//! ```

use softerr::BitStream;

fn show(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn main() {
    let stream = BitStream::from_seed(42);
    let (head, rest) = stream.take(16);
    println!("first 16 bits : {}", show(&head));
    println!("cursor after  : {}", rest.cursor());

    // The unread part splits into two disjoint streams.
    let split = rest.split_even_odd();
    let (even, _) = split.even.take(8);
    let (odd, _) = split.odd.take(8);
    println!(
        "even half     : {}  (source bits {:?})",
        show(&even),
        (0..4).map(|i| split.even.source_index(i)).collect::<Vec<_>>()
    );
    println!(
        "odd half      : {}  (source bits {:?})",
        show(&odd),
        (0..4).map(|i| split.odd.source_index(i)).collect::<Vec<_>>()
    );

    // A fixed pattern, cycled.
    let pattern = BitStream::from_bits(&[true, false, true, true, false, false]);
    let halves = pattern.split_even_odd();
    println!(
        "101100 -> even {} odd {}",
        show(&halves.even.take(3).0),
        show(&halves.odd.take(3).0)
    );

    // Independent streams for item i, reproducible from (seed, i) alone.
    for i in 0..3 {
        println!("derive(42, {i}) : {}", show(&BitStream::derive(42, i).take(24).0));
    }
}
