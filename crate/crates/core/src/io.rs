//! File formats.
//!
//! * grid CSV: `r,s,t,x,y,z`
//! * sample CSV: `r,s,t,re,im`
//! * coefficient JSON:
//!   `{"N","M","a","b","T","role","coeffs":[{"k","l","m","re","im"}, …]}`
//!
//! CSV numbers are written with 17 significant digits.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_domain::{grid_points, GridSpec, IndexTriple, Triple};
use crate::interpolation::{CubeSamples, InterpolantAlt, InterpolantStd};
use crate::transform::{CoefficientSet, Role, SampleSet};

/// 17 significant digits, scientific notation.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: "<csv>".into(),
            source,
        },
        kind => Error::Parse {
            line,
            msg: format!("{kind:?}"),
        },
    }
}

fn write_err(e: std::io::Error) -> Error {
    Error::Io {
        path: "<output>".into(),
        source: e,
    }
}

pub fn write_grid_csv<W: Write>(g: &GridSpec<f64>, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    writeln!(w, "r,s,t,x,y,z").map_err(write_err)?;
    for (i, p) in grid_points(g) {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            i.k,
            i.l,
            i.m,
            fmt17(p.x),
            fmt17(p.y),
            fmt17(p.z)
        )
        .map_err(write_err)?;
    }
    w.flush().map_err(write_err)
}

fn write_rows<'a, W, I>(rows: I, w: W) -> Result<()>
where
    W: Write,
    I: Iterator<Item = (IndexTriple, &'a Complex<f64>)>,
{
    let mut w = BufWriter::new(w);
    writeln!(w, "r,s,t,re,im").map_err(write_err)?;
    for (i, v) in rows {
        writeln!(w, "{},{},{},{},{}", i.k, i.l, i.m, fmt17(v.re), fmt17(v.im))
            .map_err(write_err)?;
    }
    w.flush().map_err(write_err)
}

pub fn write_samples_csv<W: Write>(s: &SampleSet<f64>, w: W) -> Result<()> {
    write_rows(s.iter().map(|(i, v)| (*i, v)), w)
}

pub fn write_cube_samples_csv<W: Write>(s: &CubeSamples<f64>, w: W) -> Result<()> {
    let n = s.grid().n() as i64;
    let idx =
        (0..n).flat_map(|r| (0..n).flat_map(move |a| (0..n).map(move |b| Triple::new(r, a, b))));
    write_rows(idx.zip(s.values()), w)
}

#[derive(Debug, Deserialize)]
struct SampleRow {
    r: i64,
    s: i64,
    t: i64,
    re: f64,
    im: f64,
}

/// Reads `r,s,t,re,im` rows. Duplicate indices are a parse error.
pub fn read_sample_rows<R: Read>(r: R) -> Result<BTreeMap<IndexTriple, Complex<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(r);
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let want = ["r", "s", "t", "re", "im"];
    if headers.iter().collect::<Vec<_>>() != want {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "expected header r,s,t,re,im, got {}",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut map = BTreeMap::new();
    for rec in rdr.deserialize::<SampleRow>() {
        let row = rec.map_err(csv_err)?;
        let key = Triple::new(row.r, row.s, row.t);
        if map.insert(key, Complex::new(row.re, row.im)).is_some() {
            return Err(Error::Parse {
                line: map.len() as u64 + 1,
                msg: format!("duplicate sample index {key}"),
            });
        }
    }
    Ok(map)
}

pub fn read_samples_csv<R: Read>(g: GridSpec<f64>, r: R) -> Result<SampleSet<f64>> {
    SampleSet::from_map(g, read_sample_rows(r)?)
}

pub fn read_cube_samples_csv<R: Read>(g: GridSpec<f64>, r: R) -> Result<CubeSamples<f64>> {
    let mut map = read_sample_rows(r)?;
    let n = g.n() as i64;
    let mut values = Vec::with_capacity(g.n().pow(3));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let key = Triple::new(a, b, c);
                values.push(map.remove(&key).ok_or(Error::MissingSample(key))?);
            }
        }
    }
    if let Some((extra, _)) = map.into_iter().next() {
        return Err(Error::UnexpectedKey(extra));
    }
    CubeSamples::from_values(g, values)
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CoefficientEntry {
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub re: f64,
    pub im: f64,
}

/// Serialized form of a [`CoefficientSet`].
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CoefficientFile {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub a: f64,
    pub b: f64,
    #[serde(rename = "T")]
    pub period: f64,
    pub role: Role,
    pub coeffs: Vec<CoefficientEntry>,
}

impl CoefficientFile {
    pub fn from_set(c: &CoefficientSet<f64>) -> Self {
        let g = c.grid();
        let m = match c.role() {
            Role::Beta => None,
            Role::CAlt | Role::CStd => g.half(),
        };
        CoefficientFile {
            n: g.n(),
            m,
            a: g.a(),
            b: g.b(),
            period: g.period(),
            role: c.role(),
            coeffs: c
                .iter()
                .map(|(t, v)| CoefficientEntry {
                    k: t.k,
                    l: t.l,
                    m: t.m,
                    re: v.re,
                    im: v.im,
                })
                .collect(),
        }
    }

    pub fn into_set(self) -> Result<CoefficientSet<f64>> {
        let g = GridSpec::new(self.a, self.b, self.n, self.period)?;
        if let (Some(m), Some(h)) = (self.m, g.half()) {
            if m != h {
                return Err(Error::DimensionMismatch(format!(
                    "M = {m} does not match N = {}",
                    self.n
                )));
            }
        }
        let mut map = BTreeMap::new();
        for e in self.coeffs {
            let key = Triple::new(e.k, e.l, e.m);
            if map.insert(key, Complex::new(e.re, e.im)).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("duplicate coefficient {key}"),
                });
            }
        }
        CoefficientSet::from_map(g, self.role, map)
    }
}

pub fn write_coefficients_json<W: Write>(c: &CoefficientSet<f64>, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    serde_json::to_writer_pretty(&mut w, &CoefficientFile::from_set(c)).map_err(|e| Error::Io {
        path: "<output>".into(),
        source: e.into(),
    })?;
    writeln!(w).map_err(write_err)?;
    w.flush().map_err(write_err)
}

pub fn read_coefficients_json<R: Read>(r: R) -> Result<CoefficientSet<f64>> {
    let file: CoefficientFile = serde_json::from_reader(r).map_err(|e| Error::Parse {
        line: e.line() as u64,
        msg: e.to_string(),
    })?;
    file.into_set()
}

pub fn read_interpolant_alt<R: Read>(r: R) -> Result<InterpolantAlt<f64>> {
    InterpolantAlt::from_coefficients(read_coefficients_json(r)?)
}

pub fn read_interpolant_std<R: Read>(r: R) -> Result<InterpolantStd<f64>> {
    InterpolantStd::from_coefficients(read_coefficients_json(r)?)
}

pub fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| Error::Io {
            path: path.into(),
            source,
        })
}

pub fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })
}
