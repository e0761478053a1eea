//! The structure-constant interchange file: a single JSON document with the
//! component table, human-readable basis labels, and the sorted list of
//! nonzero constants for pairs i < j. Output bytes are deterministic, so two
//! runs over the same specification hash identically and an import/re-export
//! round trip is byte-exact.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::assemble::GradedAlgebra;
use crate::scalar::{format_scalar, parse_scalar};
use crate::Error;

#[derive(Clone, Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct ComponentRecord {
    pub degree: Vec<u8>,
    pub dim: usize,
    pub basis_range: [usize; 2],
}

/// Parsed form of the interchange file.
#[derive(Clone, Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct ConstantsDoc {
    pub model: String,
    pub group: Vec<u8>,
    pub dimension: usize,
    pub components: Vec<ComponentRecord>,
    pub basis: Vec<String>,
    /// Entries [i, j, k, "num/den"], only i < j, only nonzero, sorted.
    pub constants: Vec<(u32, u32, u32, String)>,
}

impl ConstantsDoc {
    pub fn from_algebra(alg: &GradedAlgebra) -> Self {
        let components = alg
            .components()
            .iter()
            .map(|c| ComponentRecord {
                degree: c.degree.residues().to_vec(),
                dim: c.dim(),
                basis_range: [c.range.start, c.range.end],
            })
            .collect();
        let basis = (0..alg.dim()).map(|i| alg.basis_label(i)).collect();
        let mut constants = Vec::new();
        for i in 0..alg.dim() {
            for j in i + 1..alg.dim() {
                for (k, c) in alg.bracket_basis(i, j) {
                    constants.push((i as u32, j as u32, *k, format_scalar(c)));
                }
            }
        }
        ConstantsDoc {
            model: alg.model.clone(),
            group: alg.group().moduli().to_vec(),
            dimension: alg.dim(),
            components,
            basis,
            constants,
        }
    }

    /// Structural validation of an imported document.
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::BadConstantsFile(msg));
        if self.basis.len() != self.dimension {
            return bad(format!(
                "{} basis labels for dimension {}",
                self.basis.len(),
                self.dimension
            ));
        }
        let total: usize = self.components.iter().map(|c| c.dim).sum();
        if total != self.dimension {
            return bad(format!(
                "component dims sum to {total}, dimension is {}",
                self.dimension
            ));
        }
        let mut at = 0usize;
        for c in &self.components {
            if c.basis_range != [at, at + c.dim] {
                return bad(format!(
                    "component range {:?} is not contiguous",
                    c.basis_range
                ));
            }
            at += c.dim;
        }
        let mut prev: Option<(u32, u32, u32)> = None;
        for (i, j, k, q) in &self.constants {
            if *i >= *j {
                return bad(format!("constant ({i},{j},{k}) is not upper triangular"));
            }
            if *j as usize >= self.dimension || *k as usize >= self.dimension {
                return bad(format!("constant ({i},{j},{k}) out of range"));
            }
            let key = (*i, *j, *k);
            if let Some(p) = prev {
                if key <= p {
                    return bad(format!("constants not strictly sorted at ({i},{j},{k})"));
                }
            }
            prev = Some(key);
            let v = parse_scalar(q)?;
            if format_scalar(&v) != *q {
                return bad(format!(
                    "constant ({i},{j},{k}) value {q:?} is not in lowest terms"
                ));
            }
        }
        Ok(())
    }

    /// True when the document matches the algebra's constants exactly.
    pub fn matches(&self, alg: &GradedAlgebra) -> bool {
        *self == ConstantsDoc::from_algebra(alg)
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

/// Writes the canonical byte representation of the document.
pub fn write_doc(doc: &ConstantsDoc, w: &mut impl Write) -> Result<(), Error> {
    writeln!(w, "{{")?;
    writeln!(w, "  \"model\": {},", json_str(&doc.model))?;
    let group: Vec<String> = doc.group.iter().map(|m| m.to_string()).collect();
    writeln!(w, "  \"group\": [{}],", group.join(", "))?;
    writeln!(w, "  \"dimension\": {},", doc.dimension)?;
    writeln!(w, "  \"components\": [")?;
    for (t, c) in doc.components.iter().enumerate() {
        let degree: Vec<String> = c.degree.iter().map(|r| r.to_string()).collect();
        let comma = if t + 1 < doc.components.len() {
            ","
        } else {
            ""
        };
        writeln!(
            w,
            "    {{\"degree\": [{}], \"dim\": {}, \"basis_range\": [{}, {}]}}{comma}",
            degree.join(", "),
            c.dim,
            c.basis_range[0],
            c.basis_range[1]
        )?;
    }
    writeln!(w, "  ],")?;
    writeln!(w, "  \"basis\": [")?;
    for (t, label) in doc.basis.iter().enumerate() {
        let comma = if t + 1 < doc.basis.len() { "," } else { "" };
        writeln!(w, "    {}{comma}", json_str(label))?;
    }
    writeln!(w, "  ],")?;
    writeln!(w, "  \"constants\": [")?;
    for (t, (i, j, k, q)) in doc.constants.iter().enumerate() {
        let comma = if t + 1 < doc.constants.len() { "," } else { "" };
        writeln!(w, "    [{i}, {j}, {k}, {}]{comma}", json_str(q))?;
    }
    writeln!(w, "  ]")?;
    writeln!(w, "}}")?;
    Ok(())
}

/// Writes an assembled algebra's constants in the interchange format.
pub fn export_constants(alg: &GradedAlgebra, w: &mut impl Write) -> Result<(), Error> {
    write_doc(&ConstantsDoc::from_algebra(alg), w)
}

pub fn export_string(alg: &GradedAlgebra) -> Result<String, Error> {
    let mut buf = Vec::new();
    export_constants(alg, &mut buf)?;
    Ok(String::from_utf8(buf).expect("json is utf-8"))
}

/// Parses and validates an interchange file.
pub fn import_constants(r: impl Read) -> Result<ConstantsDoc, Error> {
    let doc: ConstantsDoc = serde_json::from_reader(r)?;
    doc.validate()?;
    Ok(doc)
}
