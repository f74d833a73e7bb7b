//! Load a knowledge base and compare word similarity measures.
//!
//! Run with: `cargo run -p entail --example similarity`

use entail::{LexKB, SimMeasure};

fn main() {
    let kb: LexKB = include_str!("../fixtures/mini_wordnet.kb")
        .parse()
        .expect("fixture KB loads");

    println!(
        "knowledge base: {} synsets, {} edges",
        kb.synset_count(),
        kb.edge_count()
    );
    println!();

    let pairs = [
        ("us", "america"),
        ("relative", "uncle"),
        ("emigrate", "come"),
        ("uncle", "man"),
        ("snore", "sleep"), // only linked by ENTAIL, so no IS-A similarity
        ("kill", "plutonium"),
    ];
    println!("{:<22} {:>8} {:>8} {:>8}", "pair", "path", "wup", "lch");
    for (w1, w2) in pairs {
        let score = |m| kb.similarity(w1, w2, m, None);
        println!(
            "{:<22} {:>8.4} {:>8.4} {:>8.4}",
            format!("{w1} / {w2}"),
            score(SimMeasure::Path),
            score(SimMeasure::Wup),
            score(SimMeasure::Lch),
        );
    }
}
