//! Turn an annotated sentence into its logic form: one predicate per
//! content word, entity variables for nouns, event variables for verbs,
//! and Agent role atoms for subjects.
//!
//! Run with: `cargo run -p entail --example derive_logic_form`

use entail::{derive_logic_form, parse_annotated_tokens};

fn main() {
    // "John and his son, George, emigrated with Mike, John's uncle,
    //  to US in 1969"
    let tokens = parse_annotated_tokens(include_str!("../fixtures/t_george.ann"))
        .expect("fixture tokens parse");

    println!(
        "{:<5} {:<10} {:<6} {:<6} {:<6}",
        "index", "lemma", "pos", "role", "head"
    );
    for token in &tokens {
        println!(
            "{:<5} {:<10} {:<6} {:<6} {:<6}",
            token.index,
            token.lemma,
            format!("{:?}", token.pos).to_lowercase(),
            format!("{:?}", token.role).to_lowercase(),
            token.head.map_or("-".to_string(), |h| h.to_string()),
        );
    }

    let form = derive_logic_form(&tokens).expect("derivation succeeds");
    println!();
    println!("logic form: {form}");
}
