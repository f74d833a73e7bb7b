//! Decide entailment by refutation with similarity-scored unification and
//! print the full derivation trace.
//!
//! Run with: `cargo run -p entail --example prove_entailment`

use entail::resolution::Evidence;
use entail::{entails_mrm, parse_logic_form, LexKB, ProveConfig, SimMeasure, UnifyConfig};

fn main() {
    let kb: LexKB = include_str!("../fixtures/mini_wordnet.kb")
        .parse()
        .expect("fixture KB loads");

    // T: John and his son, George, emigrated with Mike, John's uncle,
    //    to US in 1969.
    // H: George and his relative, Mike, came to America.
    let t = parse_logic_form(include_str!("../fixtures/t_george.lf").trim()).unwrap();
    let h = parse_logic_form(include_str!("../fixtures/h_george.lf").trim()).unwrap();
    println!("T: {t}");
    println!("H: {h}");
    println!();

    let cfg = ProveConfig {
        unify: UnifyConfig {
            tau_step: 0.2,
            tau_atom: 0.0,
            measure: SimMeasure::Path,
        },
        tau_total: 10.0,
        ..ProveConfig::default()
    };
    let verdict = entails_mrm(&[t], &h, &kb, &cfg);

    let Evidence::Mrm(outcome) = &verdict.evidence else {
        unreachable!()
    };
    if let Some(derivation) = outcome.derivation() {
        print!("{}", derivation.trace());
        println!();
        println!("total score: {}", derivation.total_score);
    }
    println!("outcome: {}", outcome.label());
    println!(
        "entailed at tau-total {}: {}",
        cfg.tau_total, verdict.entailed
    );
}
