use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::GramMatrix;
use crate::rational::Rational;
use crate::spectra::{CountSet, ManifoldClass, NodalSequence, Parameters, QuantumNumbers, SpectralSequence};

pub const FORMAT_TAG: &str = "nodalseq/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    pub format: String,
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha2: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<String>,
    pub cutoff: Rational,
    pub disclosed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub index: usize,
    pub counts: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<Vec<i64>>>,
}

/// Line-delimited JSON: a header, then one row per distinct eigenvalue.
/// Without disclosure the rows carry counts only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFile {
    pub header: Header,
    pub rows: Vec<Row>,
}

impl SequenceFile {
    pub fn from_spectrum(s: &SpectralSequence, disclose: bool) -> Self {
        let (alpha2, gram) = match (disclose, s.params()) {
            (false, _) => (None, None),
            (true, Parameters::Alpha2(a)) => (Some(a.clone()), None),
            (true, Parameters::Gram(g)) => (None, Some(g.to_spec_string())),
        };
        let rows = s
            .lines()
            .iter()
            .enumerate()
            .map(|(index, line)| Row {
                index,
                counts: line.counts.as_slice().to_vec(),
                value: disclose.then(|| s.value(index)),
                witnesses: if disclose {
                    line.witnesses.as_ref().map(|ws| ws.iter().map(witness_vec).collect())
                } else {
                    None
                },
            })
            .collect();
        SequenceFile {
            header: Header {
                format: FORMAT_TAG.into(),
                class: s.class().tag().into(),
                alpha2,
                gram,
                cutoff: s.cutoff().clone(),
                disclosed: disclose,
            },
            rows,
        }
    }

    pub fn class(&self) -> Result<ManifoldClass> {
        ManifoldClass::from_tag(&self.header.class)
    }

    pub fn nodal_sequence(&self) -> Result<NodalSequence> {
        let entries = self
            .rows
            .iter()
            .map(|r| {
                CountSet::new(r.counts.iter().copied()).map_err(|e| Error::Parse {
                    line: Some(r.index + 2),
                    message: e.to_string(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(NodalSequence::new(self.class()?, entries))
    }

    /// Disclosed Gram matrix, if any.
    pub fn gram(&self) -> Result<Option<GramMatrix>> {
        self.header.gram.as_deref().map(str::parse).transpose()
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "{}", json_line(&self.header))?;
        for row in &self.rows {
            writeln!(w, "{}", json_line(row))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }

    pub fn read_from(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines().enumerate();
        let (_, first) = lines.next().ok_or(Error::Parse { line: Some(1), message: "empty file".into() })?;
        let header: Header = serde_json::from_str(&first?).map_err(|e| parse_err(1, e))?;
        if header.format != FORMAT_TAG {
            return Err(Error::Parse {
                line: Some(1),
                message: format!("unsupported format {:?}, expected {FORMAT_TAG:?}", header.format),
            });
        }
        ManifoldClass::from_tag(&header.class).map_err(|e| Error::Parse { line: Some(1), message: e.to_string() })?;

        let mut rows = Vec::new();
        for (n, line) in lines {
            let lineno = n + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: Row = serde_json::from_str(&line).map_err(|e| parse_err(lineno, e))?;
            let bad = |message: String| Error::Parse { line: Some(lineno), message };
            if row.index != rows.len() {
                return Err(bad(format!("expected index {}, found {}", rows.len(), row.index)));
            }
            if row.counts.is_empty() || row.counts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("counts must be a nonempty strictly ascending list".into()));
            }
            if row.value.is_some() != header.disclosed {
                return Err(bad(if header.disclosed {
                    "disclosed file row lacks a value".into()
                } else {
                    "undisclosed file row carries a value".into()
                }));
            }
            if row.witnesses.is_some() && !header.disclosed {
                return Err(bad("undisclosed file row carries witnesses".into()));
            }
            rows.push(row);
        }
        Ok(SequenceFile { header, rows })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::read_from(text.as_bytes())
    }
}

fn parse_err(line: usize, e: serde_json::Error) -> Error {
    Error::Parse { line: Some(line), message: e.to_string() }
}

fn witness_vec(q: &QuantumNumbers) -> Vec<i64> {
    match q {
        QuantumNumbers::Pair(m, n) => vec![*m, *n],
        QuantumNumbers::Vector(v) => v.clone(),
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain structs serialize")
}
