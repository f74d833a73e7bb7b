//! Batch-evaluate a corpus of entailment pairs with both methods, compare
//! their verdicts, and sweep the derivation-score threshold.
//!
//! Run with: `cargo run -p entail --example evaluate_corpus`

use entail::{eval_corpus, LexKB, LpeConfig, ProveConfig, SimMeasure, UnifyConfig};

fn main() {
    let kb: LexKB = include_str!("../fixtures/mini_wordnet.kb")
        .parse()
        .expect("fixture KB loads");
    let corpus = include_str!("../fixtures/rte_sample.corpus");

    let prove_cfg = ProveConfig {
        unify: UnifyConfig {
            tau_step: 0.2,
            tau_atom: 0.0,
            measure: SimMeasure::Path,
        },
        tau_total: 10.0,
        ..ProveConfig::default()
    };
    let lpe_cfg = LpeConfig {
        tau_pairs: 1,
        ..LpeConfig::default()
    };

    let report = eval_corpus(corpus, &kb, &prove_cfg, &lpe_cfg);
    print!("{}", report.render());

    println!();
    println!("agreement while sweeping the derivation-score threshold:");
    for tau_total in [0.0, 5.0, 10.0, 15.0, 20.0] {
        let agg = report.aggregates_at(tau_total, lpe_cfg.tau_pairs);
        println!(
            "  tau-total {tau_total:>4}: mrm-accuracy {} agreement {}",
            agg.mrm_accuracy.map_or("n/a".into(), |v| v.to_string()),
            agg.agreement.map_or("n/a".into(), |v| v.to_string()),
        );
    }
}
