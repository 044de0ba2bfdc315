use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Nothing to compare: the record only tabulates values.
    Flagged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        }
    }
}

/// Reals are written with 17 significant digits; non-finite values as
/// the strings `inf`, `-inf`, `nan`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(fmt_real(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_str(&fmt_real(self.0))
        }
    }
}

/// Ordered name → real map.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Entries(pub Vec<(String, f64)>);

impl Entries {
    pub fn push(&mut self, name: impl Into<String>, value: f64) {
        self.0.push((name.into(), value));
    }

    pub fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={}", fmt_real(*v))).collect::<Vec<_>>().join(";")
    }
}

impl<const N: usize> From<[(&str, f64); N]> for Entries {
    fn from(items: [(&str, f64); N]) -> Self {
        Entries(items.iter().map(|&(k, v)| (k.to_string(), v)).collect())
    }
}

impl Serialize for Entries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, &Real(*v))?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub id: String,
    pub inputs: Entries,
    pub closed_form: Real,
    pub numeric_routes: Entries,
    pub rel_errors: Entries,
    pub tolerance: Real,
    pub status: Status,
}

impl ReportRecord {
    /// Status is pass iff every relative error is within `tolerance`;
    /// records without comparisons are flagged.
    pub fn new(
        id: impl Into<String>,
        inputs: Entries,
        closed_form: f64,
        numeric_routes: Entries,
        rel_errors: Entries,
        tolerance: f64,
    ) -> Self {
        let status = if rel_errors.0.is_empty() {
            Status::Flagged
        } else if rel_errors.0.iter().all(|&(_, e)| e <= tolerance) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            id: id.into(),
            inputs,
            closed_form: Real(closed_form),
            numeric_routes,
            rel_errors,
            tolerance: Real(tolerance),
            status,
        }
    }
}

pub fn rel_error(value: f64, reference: f64) -> f64 {
    if value == reference {
        0.0
    } else {
        (value - reference).abs() / reference.abs()
    }
}

/// `max(0, value/bound - 1)`: how far an estimate from below overshoots.
pub fn excess(value: f64, bound: f64) -> f64 {
    (value / bound - 1.0).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rules() {
        let r = ReportRecord::new("a", Entries::default(), 1.0, Entries::default(), [("x", 1e-9)].into(), 1e-8);
        assert_eq!(r.status, Status::Pass);
        let r = ReportRecord::new("a", Entries::default(), 1.0, Entries::default(), [("x", 1e-7)].into(), 1e-8);
        assert_eq!(r.status, Status::Fail);
        let r = ReportRecord::new("a", Entries::default(), 1.0, Entries::default(), [("x", f64::NAN)].into(), 1e-8);
        assert_eq!(r.status, Status::Fail);
        let r = ReportRecord::new("a", Entries::default(), 1.0, Entries::default(), Entries::default(), 1e-8);
        assert_eq!(r.status, Status::Flagged);
    }

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(std::f64::consts::PI), "3.1415926535897931e0");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        let json = serde_json::to_string(&Real(0.1)).unwrap();
        assert_eq!(json, "1.0000000000000001e-1");
        assert_eq!(json.parse::<f64>().unwrap(), 0.1);
    }
}
