//! Explore oriented lexical paths and the pair-count entailment verdict.
//!
//! Run with: `cargo run -p entail --example lexical_paths`

use entail::{entails_lpe, find_lpe, LexKB, LpeConfig};

fn main() {
    let kb: LexKB = include_str!("../fixtures/mini_wordnet.kb")
        .parse()
        .expect("fixture KB loads");

    println!("single-pair paths:");
    for (w1, w2) in [
        ("snore", "sleep"),
        ("murder", "die"),
        ("uncle", "relative"),
        ("relative", "uncle"), // against the IS-A orientation: no path
        ("emigrate", "travel"),
    ] {
        match find_lpe(&kb, w1, w2, 6) {
            Some(path) => println!("  {w1} -> {w2}: {path}"),
            None => println!("  {w1} -> {w2}: no path"),
        }
    }

    // word lists of the two sentences from the prove_entailment example
    let t_words: Vec<String> = [
        "john", "son", "george", "emigrate", "mike", "uncle", "us", "1969",
    ]
    .map(String::from)
    .to_vec();
    let h_words: Vec<String> = ["george", "relative", "mike", "come", "america"]
        .map(String::from)
        .to_vec();

    let cfg = LpeConfig {
        tau_pairs: 1,
        ..LpeConfig::default()
    };
    let verdict = entails_lpe(&t_words, &h_words, &kb, &cfg);
    println!();
    println!(
        "{} qualifying pairs (threshold {}): entailed = {}",
        verdict.score, cfg.tau_pairs, verdict.entailed
    );
    if let entail::resolution::Evidence::Lpe(witnesses) = &verdict.evidence {
        for witness in witnesses {
            println!("  {witness}");
        }
    }
}
