//! JSON file formats for measures, series and Wittstock quads.
//!
//! Words are written as integer arrays. Every coefficient list rejects
//! duplicate words; measure files must list every word up to `max_len`,
//! series files may omit zero coefficients.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decomposition::{PartTag, WittstockQuad};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::measures::{ComplexNCMeasure, NcFunctional, PositiveNCMeasure};
use crate::transforms::FreeSeries;
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub word: Word,
    pub re: f64,
    pub im: f64,
}

impl CoeffEntry {
    fn new(word: Word, v: C64) -> Self {
        // adding 0.0 turns -0.0 into 0.0
        Self { word, re: v.re + 0.0, im: v.im + 0.0 }
    }
}

fn to_map(entries: &[CoeffEntry], what: &str) -> Result<BTreeMap<Word, C64>> {
    let mut map = BTreeMap::new();
    for e in entries {
        if map.insert(e.word.clone(), C64::new(e.re, e.im)).is_some() {
            return Err(Error::Parse(format!("duplicate word {} in {what}", e.word)));
        }
    }
    Ok(map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Positive,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    pub kind: MeasureKind,
    pub d: usize,
    pub max_len: usize,
    pub moments: Vec<CoeffEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bwd: Option<Vec<CoeffEntry>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    Positive(PositiveNCMeasure),
    Complex(ComplexNCMeasure),
}

impl Measure {
    pub fn positive(&self) -> Result<&PositiveNCMeasure> {
        match self {
            Measure::Positive(m) => Ok(m),
            Measure::Complex(_) => Err(Error::InvalidArgument("expected a positive measure file".into())),
        }
    }

    pub fn to_complex(&self) -> ComplexNCMeasure {
        match self {
            Measure::Positive(m) => m.to_complex(),
            Measure::Complex(m) => m.clone(),
        }
    }
}

impl MeasureFile {
    pub fn from_positive(mu: &PositiveNCMeasure) -> Self {
        Self {
            kind: MeasureKind::Positive,
            d: mu.dim(),
            max_len: mu.max_len(),
            moments: mu.moments().map(|(w, v)| CoeffEntry::new(w, v)).collect(),
            bwd: None,
        }
    }

    pub fn from_complex(mu: &ComplexNCMeasure) -> Self {
        Self {
            kind: MeasureKind::Complex,
            d: mu.dim(),
            max_len: mu.max_len(),
            moments: mu.forward_moments().map(|(w, v)| CoeffEntry::new(w, v)).collect(),
            bwd: Some(mu.backward_moments().map(|(w, v)| CoeffEntry::new(w, v)).collect()),
        }
    }

    pub fn to_measure(&self) -> Result<Measure> {
        let fwd = to_map(&self.moments, "moments")?;
        match (self.kind, &self.bwd) {
            (MeasureKind::Positive, None) => Ok(Measure::Positive(PositiveNCMeasure::from_moments(self.d, self.max_len, &fwd)?)),
            (MeasureKind::Positive, Some(_)) => Err(Error::Parse("positive measures take no \"bwd\" table".into())),
            (MeasureKind::Complex, Some(bwd)) => {
                let bwd = to_map(bwd, "bwd")?;
                Ok(Measure::Complex(ComplexNCMeasure::from_maps(self.d, self.max_len, &fwd, &bwd)?))
            }
            (MeasureKind::Complex, None) => Err(Error::Parse("complex measures need a \"bwd\" table".into())),
        }
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, source: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{source}: {e}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    fs::write(path, to_json(value) + "\n")?;
    Ok(())
}

pub fn parse_measure(text: &str, source: &str) -> Result<Measure> {
    parse_json::<MeasureFile>(text, source)?.to_measure()
}

pub fn read_measure(path: &Path) -> Result<Measure> {
    parse_measure(&read(path)?, &path.display().to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub d: usize,
    pub cap: usize,
    pub coeffs: Vec<CoeffEntry>,
}

impl SeriesFile {
    /// Writes coefficients with modulus above `1e-15`.
    pub fn from_series(s: &FreeSeries) -> Self {
        Self {
            d: s.dim(),
            cap: s.cap(),
            coeffs: s.nonzero_terms(1e-15).into_iter().map(|(w, v)| CoeffEntry::new(w, v)).collect(),
        }
    }

    pub fn to_series(&self) -> Result<FreeSeries> {
        if self.d == 0 {
            return Err(Error::Parse("series alphabet must be non-empty".into()));
        }
        FreeSeries::from_terms(self.d, self.cap, to_map(&self.coeffs, "coeffs")?)
    }
}

pub fn parse_series(text: &str, source: &str) -> Result<FreeSeries> {
    parse_json::<SeriesFile>(text, source)?.to_series()
}

pub fn read_series(path: &Path) -> Result<FreeSeries> {
    parse_series(&read(path)?, &path.display().to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadFile {
    pub parts: [MeasureFile; 4],
    pub target: MeasureFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<[PartTag; 4]>,
}

impl QuadFile {
    pub fn from_quad(q: &WittstockQuad) -> Self {
        Self {
            parts: q.parts().clone().map(|p| MeasureFile::from_positive(&p)),
            target: MeasureFile::from_complex(q.target()),
            tags: Some(q.tags()),
        }
    }

    pub fn to_quad(&self) -> Result<WittstockQuad> {
        let mut parts = Vec::with_capacity(4);
        for p in &self.parts {
            parts.push(p.to_measure()?.positive()?.clone());
        }
        let parts: [PositiveNCMeasure; 4] = parts.try_into().expect("four parts");
        let q = WittstockQuad::new(parts, self.target.to_measure()?.to_complex())?;
        Ok(match self.tags {
            Some(tags) => q.with_tags(tags),
            None => q,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadReport {
    pub reconstruction_residual: f64,
    pub min_eigs: [f64; 4],
    pub tags: [PartTag; 4],
}

impl QuadReport {
    pub fn new(q: &WittstockQuad) -> Result<Self> {
        Ok(Self { reconstruction_residual: q.reconstruction_residual()?, min_eigs: q.min_eigs()?, tags: q.tags() })
    }
}

pub fn parse_quad(text: &str, source: &str) -> Result<WittstockQuad> {
    parse_json::<QuadFile>(text, source)?.to_quad()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::shift_wittstock;

    #[test]
    fn measure_roundtrip() {
        let xi = PositiveNCMeasure::dirac_xi(4);
        let text = to_json(&MeasureFile::from_positive(&xi));
        assert_eq!(parse_measure(&text, "xi").unwrap(), Measure::Positive(xi.clone()));
        let c = xi.to_complex().scale(C64::new(0.0, 2.0));
        let text = to_json(&MeasureFile::from_complex(&c));
        assert_eq!(parse_measure(&text, "c").unwrap(), Measure::Complex(c));
    }

    #[test]
    fn rejects_bad_files() {
        let dup = r#"{"kind":"positive","d":2,"max_len":0,"moments":[{"word":[],"re":1,"im":0},{"word":"","re":1,"im":0}]}"#;
        assert!(matches!(parse_measure(dup, "dup"), Err(Error::Parse(m)) if m.contains("duplicate")));
        let extra = r#"{"kind":"positive","d":2,"max_len":0,"moments":[],"colour":1}"#;
        assert!(matches!(parse_measure(extra, "extra"), Err(Error::Parse(m)) if m.contains("line")));
        let missing = r#"{"kind":"positive","d":2,"max_len":1,"moments":[{"word":[],"re":1,"im":0}]}"#;
        assert!(matches!(parse_measure(missing, "missing"), Err(Error::MissingMoment(_))));
        let long = r#"{"kind":"positive","d":2,"max_len":0,"moments":[{"word":[],"re":1,"im":0},{"word":[1],"re":0,"im":0}]}"#;
        assert!(matches!(parse_measure(long, "long"), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn series_and_quads() {
        let s = FreeSeries::variable(2, 4, 1);
        let text = to_json(&SeriesFile::from_series(&s));
        assert_eq!(parse_series(&text, "s").unwrap(), s);
        let q = shift_wittstock(&PositiveNCMeasure::dirac_xi(6), 2).unwrap();
        let back = parse_quad(&to_json(&QuadFile::from_quad(&q)), "q").unwrap();
        assert_eq!(back.parts(), q.parts());
        assert!(QuadReport::new(&back).unwrap().reconstruction_residual <= 1e-10);
    }
}
