use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

/// One line of the report. Field order is the serialisation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_anchor: String,
    pub status: Status,
    pub witness: Option<String>,
    /// Milliseconds.
    pub duration: u64,
}

impl CheckResult {
    pub fn pass(id: &str, anchor: &str, duration: u64) -> Self {
        CheckResult { id: id.into(), paper_anchor: anchor.into(), status: Status::Pass, witness: None, duration }
    }

    /// Failures always carry a witness; an empty one is replaced.
    pub fn fail(id: &str, anchor: &str, witness: String, duration: u64) -> Self {
        let witness = if witness.is_empty() { "unspecified failure".to_string() } else { witness };
        CheckResult { id: id.into(), paper_anchor: anchor.into(), status: Status::Fail, witness: Some(witness), duration }
    }

    pub fn skipped(id: &str, anchor: &str, reason: String) -> Self {
        CheckResult { id: id.into(), paper_anchor: anchor.into(), status: Status::Skipped, witness: Some(reason), duration: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn emit(results: &[CheckResult], format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(results).expect("check results serialise");
            out.push(b'\n');
            out
        }
        Format::Text => {
            let mut s = String::new();
            for r in results {
                s.push_str(&format!("{}  {}  {}  {}ms", r.status.label(), r.id, r.paper_anchor, r.duration));
                if r.status != Status::Pass {
                    if let Some(w) = &r.witness {
                        s.push_str(&format!("  witness: {w}"));
                    }
                }
                s.push('\n');
            }
            s.into_bytes()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_json() {
        assert_eq!(emit(&[], Format::Json), b"[]\n");
        assert!(emit(&[], Format::Text).is_empty());
    }

    #[test]
    fn text_lines() {
        let r = vec![CheckResult::pass("a.b", "x = y", 3), CheckResult::fail("a.c", "z = 0", "z = 1".into(), 1)];
        let s = String::from_utf8(emit(&r, Format::Text)).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "PASS  a.b  x = y  3ms");
        assert!(lines[1].starts_with("FAIL  a.c") && lines[1].ends_with("witness: z = 1"));
    }

    #[test]
    fn json_field_order() {
        let s = String::from_utf8(emit(&[CheckResult::pass("a", "b", 0)], Format::Json)).unwrap();
        let keys: Vec<usize> =
            ["\"id\"", "\"paper_anchor\"", "\"status\"", "\"witness\"", "\"duration\""].iter().map(|k| s.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(s.contains("\"status\": \"pass\""));
        assert!(CheckResult::fail("a", "b", String::new(), 0).witness.is_some());
    }
}
