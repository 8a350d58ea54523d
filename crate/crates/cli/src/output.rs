use std::io::Write;

use serde_json::{json, Value};

use schur_core::SRing;

use crate::Format;

/// `println!` that exits quietly once stdout is closed, e.g. by `head`.
macro_rules! emit {
    ($($arg:tt)*) => {
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    };
}

/// Writes either human-readable text or one JSON value per line.
pub struct Out {
    format: Format,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out { format }
    }

    /// A line printed in both formats.
    pub fn line(&mut self, s: &str) {
        emit!("{s}");
    }

    pub fn value(&mut self, v: &Value, text: &str) {
        match self.format {
            Format::Text => emit!("{text}"),
            Format::Machine => emit!("{v}"),
        }
    }

    pub fn sring(&mut self, a: &SRing) {
        match self.format {
            Format::Text => {
                emit!("rank {} over {}", a.rank(), a.group());
                for c in a.class_lists() {
                    emit!("  {c:?}");
                }
            }
            Format::Machine => emit!("{}", a.to_json()),
        }
    }

    pub fn sring_line(&mut self, i: usize, a: &SRing) {
        match self.format {
            Format::Text => emit!("#{i} rank {}: {:?}", a.rank(), a.class_lists()),
            Format::Machine => emit!("{}", a.to_json()),
        }
    }

    pub fn maps<'a>(&mut self, maps: impl Iterator<Item = &'a Vec<usize>>, what: &str) {
        let maps: Vec<&Vec<usize>> = maps.collect();
        match self.format {
            Format::Text => {
                emit!("{} {what}", maps.len());
                for m in &maps {
                    emit!("  {m:?}");
                }
            }
            Format::Machine => emit!("{}", json!({ "count": maps.len(), "maps": maps })),
        }
    }
}

/// Drops `seconds` fields so machine reports do not depend on timing.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("seconds");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
