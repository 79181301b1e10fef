use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A computation with nothing to check.
    Info,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        }
    }

    pub fn of(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// A computed object: its text form, plus structured data for tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct Item {
    pub name: String,
    pub text: String,
    pub data: Option<Value>,
}

/// The outcome of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    /// 1-based position of the statement in its script.
    pub index: usize,
    pub line: usize,
    pub command: String,
    pub verdict: Verdict,
    pub structures: Vec<Item>,
    pub witnesses: Vec<String>,
    /// `(seed, trials)` for randomized commands.
    pub sampling: Option<(u64, usize)>,
}

impl Entry {
    pub fn new(command: String, verdict: Verdict) -> Self {
        Entry { index: 0, line: 0, command, verdict, structures: Vec::new(), witnesses: Vec::new(), sampling: None }
    }

    pub fn item(mut self, name: impl Into<String>, text: impl Into<String>) -> Self {
        self.structures.push(Item { name: name.into(), text: text.into(), data: None });
        self
    }

    pub fn data(mut self, name: impl Into<String>, text: impl Into<String>, data: Value) -> Self {
        self.structures.push(Item { name: name.into(), text: text.into(), data: Some(data) });
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != Verdict::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("[{}] {}\n", e.index, e.command));
            out.push_str(&format!("  verdict: {}\n", e.verdict.label()));
            if let Some((seed, trials)) = e.sampling {
                out.push_str(&format!("  seed: {seed}, trials: {trials}\n"));
            }
            for s in &e.structures {
                out.push_str(&format!("  {}: {}\n", s.name, s.text));
            }
            for w in &e.witnesses {
                out.push_str(&format!("  witness: {w}\n"));
            }
        }
        if !self.entries.is_empty() {
            let failed = self.entries.iter().filter(|e| e.verdict == Verdict::Fail).count();
            out.push_str(&format!(
                "{}: {} commands, {failed} failed\n",
                if failed == 0 { "PASS" } else { "FAIL" },
                self.entries.len()
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({
                    "index": e.index,
                    "line": e.line,
                    "command": e.command,
                    "verdict": e.verdict.label(),
                    "structures": e.structures.iter().map(|s| {
                        let mut o = json!({ "name": s.name, "text": s.text });
                        if let Some(d) = &s.data {
                            o["data"] = d.clone();
                        }
                        o
                    }).collect::<Vec<_>>(),
                    "witnesses": e.witnesses,
                });
                if let Some((seed, trials)) = e.sampling {
                    v["seed"] = json!(seed);
                    v["trials"] = json!(trials);
                }
                v
            })
            .collect();
        json!({ "schema": 1, "seed": self.seed, "pass": self.passed(), "entries": entries })
    }
}
