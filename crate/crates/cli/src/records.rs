//! Output records and their text, CSV and JSON renderings.

use std::io::Write;

use serde::{Deserialize, Serialize};

use rmoments::exact::{canonical_parts, from_canonical_parts};
use rmoments::{ExactValue, HydrogenState, OscillatorState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Ho,
    Hydrogen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFields {
    Ho {
        dim: u32,
        #[serde(rename = "N")]
        principal: u32,
        #[serde(rename = "K")]
        angular: u32,
    },
    Hydrogen {
        n: u32,
        l: u32,
        #[serde(rename = "Z")]
        z: String,
        a0: String,
    },
}

impl From<&OscillatorState> for StateFields {
    fn from(s: &OscillatorState) -> Self {
        StateFields::Ho {
            dim: s.dim(),
            principal: s.principal(),
            angular: s.angular(),
        }
    }
}

impl From<&HydrogenState> for StateFields {
    fn from(s: &HydrogenState) -> Self {
        StateFields::Hydrogen {
            n: s.n(),
            l: s.l(),
            z: s.z().to_string(),
            a0: s.a0().to_string(),
        }
    }
}

/// `coeff * sqrt(pi)^sqrtpi_exp` with every part as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactParts {
    pub num: String,
    pub den: String,
    pub sqrtpi_exp: String,
}

impl ExactParts {
    pub fn to_value(&self) -> Option<ExactValue> {
        from_canonical_parts(&self.num, &self.den, &self.sqrtpi_exp)
    }
}

impl From<&ExactValue> for ExactParts {
    fn from(value: &ExactValue) -> Self {
        let (num, den, sqrtpi_exp) = canonical_parts(value);
        ExactParts { num, den, sqrtpi_exp }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub system: System,
    pub state: StateFields,
    pub p: String,
    pub method: String,
    pub exact: Option<ExactParts>,
    pub float: String,
    pub flags: Vec<String>,
}

impl OutputRecord {
    pub fn new(
        system: System,
        state: StateFields,
        p: String,
        method: &str,
        exact: Option<&ExactValue>,
        float: f64,
        flags: Vec<String>,
    ) -> Self {
        OutputRecord {
            system,
            state,
            p,
            method: method.to_string(),
            exact: exact.map(ExactParts::from),
            float: format_float(float),
            flags,
        }
    }

    pub fn exact_value(&self) -> Option<ExactValue> {
        self.exact.as_ref().and_then(ExactParts::to_value)
    }

    fn state_label(&self) -> String {
        match &self.state {
            StateFields::Ho {
                dim,
                principal,
                angular,
            } => format!("(n={dim}, N={principal}, K={angular})"),
            StateFields::Hydrogen { n, l, z, a0 } => format!("(n={n}, l={l}, Z={z}, a0={a0})"),
        }
    }

    pub fn text_line(&self) -> String {
        let system = match self.system {
            System::Ho => "ho",
            System::Hydrogen => "hydrogen",
        };
        let value = match self.exact_value() {
            Some(v) => format!("{v} ≈ {}", self.float),
            None => self.float.clone(),
        };
        let mut line = format!("{system} {} <r^{}> = {value} [{}]", self.state_label(), self.p, self.method);
        if !self.flags.is_empty() {
            line.push_str(&format!(" {{{}}}", self.flags.join(", ")));
        }
        line
    }
}

/// Shortest decimal that round-trips to the same `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub const CSV_HEADER: [&str; 7] = ["p", "num", "den", "sqrtpi_exp", "float", "method", "flags"];

pub fn write_records<W: Write>(records: &[OutputRecord], format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Text => write_text(records, out),
        Format::Json => write_json(records, out),
        Format::Csv => write_csv(records, out),
    }
}

fn write_text<W: Write>(records: &[OutputRecord], mut out: W) -> std::io::Result<()> {
    for record in records {
        writeln!(out, "{}", record.text_line())?;
    }
    Ok(())
}

pub fn render_json(records: &[OutputRecord]) -> String {
    let mut text = serde_json::to_string_pretty(records).expect("records serialize");
    text.push('\n');
    text
}

fn write_json<W: Write>(records: &[OutputRecord], mut out: W) -> std::io::Result<()> {
    out.write_all(render_json(records).as_bytes())
}

fn write_csv<W: Write>(records: &[OutputRecord], out: W) -> std::io::Result<()> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for r in records {
        let (num, den, exp) = match &r.exact {
            Some(e) => (e.num.as_str(), e.den.as_str(), e.sqrtpi_exp.as_str()),
            None => ("", "", ""),
        };
        let flags = r.flags.join(";");
        writer.write_record([r.p.as_str(), num, den, exp, r.float.as_str(), r.method.as_str(), flags.as_str()])?;
    }
    writer.flush()?;
    Ok(())
}
