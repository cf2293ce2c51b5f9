//! Every expected fact of the golden corpus holds against the pipeline.

use std::time::Instant;

use pencil_lab::corpus::{check_item, golden_corpus};

#[test]
fn golden_corpus_facts() {
    let mut failures = Vec::new();
    for item in golden_corpus() {
        let t = Instant::now();
        for o in check_item(&item) {
            println!("{:<6} {:<28} {:<40} {}", if o.passed { "pass" } else { "FAIL" }, o.item, o.fact, o.detail);
            if !o.passed {
                failures.push(o);
            }
        }
        println!("       {:<28} {:.2?}", item.id, t.elapsed());
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
