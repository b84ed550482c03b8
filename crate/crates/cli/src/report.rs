//! JSON and CSV serialization of scenario results.

use std::collections::BTreeMap;
use std::io;

use coercive_kit::inequalities::{ScenarioResult, SweepRow};
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub scenario: &'a str,
    pub kind: &'a str,
    pub claim: &'a str,
    pub parameters: &'a BTreeMap<String, String>,
    pub degree: usize,
    pub constants: &'a BTreeMap<String, f64>,
    pub residual: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma_sharp: Option<f64>,
    pub bound: Option<f64>,
    pub kernel_dim: Option<usize>,
    pub polynomial_intersection_dim: Option<usize>,
    pub verdict: String,
    pub notes: &'a [String],
}

impl<'a> Report<'a> {
    pub fn new(r: &'a ScenarioResult, claim: &'a str) -> Self {
        Self {
            scenario: &r.id,
            kind: r.kind.base_name(),
            claim,
            parameters: &r.parameters,
            degree: r.degree,
            constants: &r.constants,
            residual: r.residual,
            alpha: r.alpha,
            beta: r.beta,
            gamma_sharp: r.gamma_sharp,
            bound: r.bound,
            kernel_dim: r.kernel_dim,
            polynomial_intersection_dim: r.polynomial_intersection_dim,
            verdict: r.verdict.to_string(),
            notes: &r.notes,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepReport<'a> {
    pub scenario: &'a str,
    pub parameters: &'a BTreeMap<String, String>,
    pub rows: Vec<SweepJsonRow>,
}

#[derive(Debug, Serialize)]
pub struct SweepJsonRow {
    pub degree: usize,
    pub constant: Option<f64>,
    pub residual: Option<f64>,
    pub verdict: String,
}

impl From<&SweepRow> for SweepJsonRow {
    fn from(r: &SweepRow) -> Self {
        Self {
            degree: r.degree,
            constant: r.constant,
            residual: r.residual,
            verdict: r.verdict.to_string(),
        }
    }
}

/// Pretty JSON with every float written with 17 significant digits.
struct RoundTrip(serde_json::ser::PrettyFormatter<'static>);

impl Formatter for RoundTrip {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// `{:.16e}` for finite values (17 significant digits); `null` otherwise,
/// since JSON has no NaN or infinity.
pub fn fmt_f64(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        "null".into()
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, RoundTrip(serde_json::ser::PrettyFormatter::new()));
    value.serialize(&mut ser).expect("report serializes");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| {
        if x.is_finite() {
            format!("{x:.16e}")
        } else {
            String::new()
        }
    })
    .unwrap_or_default()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("degree,constant,residual\n");
    for r in rows {
        s.push_str(&format!("{},{},{}\n", r.degree, opt(r.constant), opt(r.residual)));
    }
    s
}

pub fn run_csv(results: &[ScenarioResult]) -> String {
    let mut s = String::from("scenario,degree,constant,gamma_sharp,bound,residual,verdict\n");
    for r in results {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.id,
            r.degree,
            opt(r.primary_constant()),
            opt(r.gamma_sharp),
            opt(r.bound),
            opt(r.residual),
            r.verdict
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        let x = 1.0 + 1.0 / std::f64::consts::PI.powi(2);
        let s = fmt_f64(x);
        assert_eq!(s.split('e').next().unwrap().replace('.', "").len(), 17);
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert_eq!(fmt_f64(f64::NAN), "null");
    }

    #[test]
    fn json_uses_formatter() {
        let json = to_json(&serde_json::json!({"x": 0.5, "n": 3}));
        assert!(json.contains("5.0000000000000000e-1"));
        assert!(json.contains("\"n\": 3"));
    }
}
