use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA: &str = "padic-ode-lab/1";

/// Keys whose discrepancies are expected and do not change the exit status.
pub const KNOWN_FLAGS: &[&str] = &["3.18", "bernoulli-recurrence", "bernoulli-alt-k2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    ValueMatch,
    Discrepancy,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::ValueMatch => "value-match",
            Status::Discrepancy => "discrepancy",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub key: String,
    pub instance: String,
    pub prime: Option<u64>,
    pub status: Status,
    pub known_flag: bool,
    pub detail: String,
}

impl Record {
    pub fn new(
        suite: &'static str,
        key: impl Into<String>,
        instance: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
    ) -> Self {
        let key = key.into();
        let known_flag =
            status == Status::Discrepancy && KNOWN_FLAGS.iter().any(|k| key == *k || key.starts_with(&format!("{k}:")));
        Self { suite, key, instance: instance.into(), prime: None, status, known_flag, detail: detail.into() }
    }

    pub fn at(mut self, p: u64) -> Self {
        self.prime = Some(p);
        self
    }

    pub fn check(
        suite: &'static str,
        key: impl Into<String>,
        instance: impl Into<String>,
        ok: bool,
        pass: Status,
        detail: impl Into<String>,
    ) -> Self {
        Self::new(suite, key, instance, if ok { pass } else { Status::Discrepancy }, detail)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub value_match: usize,
    pub discrepancy: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub suites: Vec<String>,
    pub primes: Vec<u64>,
    pub precision: u32,
    pub order: usize,
    pub known_flags: Vec<&'static str>,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl SuiteReport {
    pub fn new(suites: Vec<String>, primes: Vec<u64>, precision: u32, order: usize, records: Vec<Record>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Verified => summary.verified += 1,
                Status::ValueMatch => summary.value_match += 1,
                Status::Discrepancy => summary.discrepancy += 1,
            }
            if r.known_flag {
                summary.flagged += 1;
            }
        }
        Self {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            suites,
            primes,
            precision,
            order,
            known_flags: KNOWN_FLAGS.to_vec(),
            summary,
            records,
        }
    }

    /// Discrepancies outside the known-flag list.
    pub fn unexpected(&self) -> usize {
        self.summary.discrepancy - self.summary.flagged
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r).expect("record serializes");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        let _ = writeln!(
            s,
            "padic-lab {} | suites {} | primes {} | precision {} | order {}",
            self.tool_version,
            self.suites.join(","),
            primes.join(","),
            self.precision,
            self.order
        );
        for r in &self.records {
            let p = r.prime.map(|p| format!(" p={p}")).unwrap_or_default();
            let flag = if r.known_flag { " (known flag)" } else { "" };
            let _ = writeln!(s, "[{}{flag}] {} {}{p}: {}", r.status.as_str(), r.key, r.instance, r.detail);
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "{} verified, {} value-match, {} discrepancy ({} known)",
            m.verified, m.value_match, m.discrepancy, m.flagged
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_flags_cover_suffixed_keys() {
        let r = Record::new("catalog", "3.18", "x", Status::Discrepancy, "");
        assert!(r.known_flag);
        let r = Record::new("catalog", "3.18:second-order", "x", Status::Discrepancy, "");
        assert!(r.known_flag);
        let r = Record::new("catalog", "3.13", "x", Status::Discrepancy, "");
        assert!(!r.known_flag);
        let r = Record::new("catalog", "3.18", "x", Status::Verified, "");
        assert!(!r.known_flag);
    }

    #[test]
    fn summary_counts() {
        let records = vec![
            Record::new("s", "a", "", Status::Verified, ""),
            Record::new("s", "bernoulli-alt-k2", "", Status::Discrepancy, "").at(3),
            Record::new("s", "b", "", Status::Discrepancy, ""),
        ];
        let rep = SuiteReport::new(vec!["s".into()], vec![3], 10, 20, records);
        assert_eq!(rep.summary.discrepancy, 2);
        assert_eq!(rep.unexpected(), 1);
        assert!(rep.to_csv().starts_with("suite,key,instance,prime,status,known_flag,detail\n"));
        assert!(rep.to_json().contains("\"schema\": \"padic-ode-lab/1\""));
    }
}
