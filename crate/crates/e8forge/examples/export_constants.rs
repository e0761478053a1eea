//! Structure-constant interchange: export, re-import, and byte-identical
//! re-export.
//!
//!     cargo run --release --example export_constants [model] [path]

use e8forge::assemble;
use e8forge::export::{export_string, import_constants, write_doc};
use e8forge::models::{canonical_scalars, model_spec, ModelId};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "z3".to_string());
    let id = ModelId::parse(&name).expect("model name");
    let alg = assemble(&model_spec(id, canonical_scalars(id)).unwrap()).unwrap();

    let text = export_string(&alg).unwrap();
    println!(
        "{}: {} bytes, {} basis labels, {} nonzero constants (i < j)",
        id.name(),
        text.len(),
        alg.dim(),
        text.lines()
            .filter(|l| l.trim_start().starts_with('['))
            .count()
    );

    if let Some(path) = std::env::args().nth(2) {
        std::fs::write(&path, &text).unwrap();
        println!("wrote {path}");
    }

    let doc = import_constants(text.as_bytes()).unwrap();
    assert!(doc.matches(&alg));
    let mut buf = Vec::new();
    write_doc(&doc, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), text);
    println!("import -> re-export is byte-identical");

    for line in text.lines().take(14) {
        println!("  {line}");
    }
    println!("  ...");
}
