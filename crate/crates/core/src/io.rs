//! JSON, JSON-lines and CSV forms of representations and census output.
//!
//! Field elements are written as coefficient lists, constant term first, and
//! a matrix [[a, b], [c, d]] as the list of its four entries.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::census::CensusResult;
use crate::error::{Error, Result};
use crate::group::{Family, GroupContext, Matrix, SubgroupKind};
use crate::maniplex::{summarize, ClassTag, ManiplexSummary};
use crate::string_rep::StringRep;

/// Matrix-level form of a string representation. Unknown fields are
/// ignored when reading, so census records load as representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub q: u32,
    pub family: Family,
    pub rank: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
}

impl RepJson {
    pub fn from_rep(ctx: &GroupContext, rep: &StringRep) -> Self {
        RepJson {
            q: ctx.q(),
            family: ctx.family(),
            rank: rep.rank(),
            generators: rep
                .gens()
                .iter()
                .map(|&g| ctx.matrix(g).coeff_lists(ctx.field()))
                .collect(),
        }
    }

    /// The group context this representation lives in.
    pub fn context(&self) -> Result<GroupContext> {
        GroupContext::enumerate(self.q as u64, self.family)
    }

    pub fn to_rep(&self, ctx: &GroupContext) -> Result<StringRep> {
        if self.q != ctx.q() || self.family != ctx.family() {
            return Err(Error::MixedContexts);
        }
        if self.rank != self.generators.len() {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: self.generators.len(),
            });
        }
        let f = ctx.field();
        let gens = self
            .generators
            .iter()
            .map(|m| {
                let [a, b, c, d] = m.as_slice() else {
                    return Err(Error::Parse(format!("matrix needs 4 entries, got {}", m.len())));
                };
                let e = |x: &Vec<u32>| f.from_coeffs(x);
                let g = ctx.group().canonicalize(Matrix::new(e(a)?, e(b)?, e(c)?, e(d)?))?;
                ctx.index_of(&g)
            })
            .collect::<Result<Vec<_>>>()?;
        StringRep::new(ctx, gens)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

/// One census line: the representation and its summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepRecord {
    pub q: u32,
    pub family: Family,
    pub rank: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
    #[serde(rename = "type")]
    pub type_vector: Vec<u64>,
    pub class: Option<ClassTag>,
    pub ip: bool,
    pub orientable: bool,
    pub flag_count: usize,
    pub face_counts: Vec<usize>,
    pub vertex_kind: SubgroupKind,
    pub facet_kind: SubgroupKind,
    pub parabolic_kinds: Vec<SubgroupKind>,
}

impl RepRecord {
    pub fn new(ctx: &GroupContext, rep: &StringRep) -> Result<Self> {
        let s = summarize(ctx, rep)?;
        Ok(Self::from_summary(RepJson::from_rep(ctx, rep), s))
    }

    pub fn from_summary(rep: RepJson, s: ManiplexSummary) -> Self {
        RepRecord {
            q: rep.q,
            family: rep.family,
            rank: rep.rank,
            generators: rep.generators,
            type_vector: s.type_vector,
            class: s.class,
            ip: s.ip,
            orientable: s.orientable,
            flag_count: s.flag_count,
            face_counts: s.face_counts,
            vertex_kind: s.vertex_kind,
            facet_kind: s.facet_kind,
            parabolic_kinds: s.parabolic_kinds,
        }
    }

    pub fn rep(&self) -> RepJson {
        RepJson {
            q: self.q,
            family: self.family,
            rank: self.rank,
            generators: self.generators.clone(),
        }
    }

    pub fn vertices(&self) -> usize {
        self.face_counts[0]
    }

    pub fn facets(&self) -> usize {
        *self.face_counts.last().unwrap()
    }
}

pub fn census_records(ctx: &GroupContext, census: &CensusResult) -> Result<Vec<RepRecord>> {
    census.reps.iter().map(|r| RepRecord::new(ctx, r)).collect()
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(records: &[RepRecord], out: &mut W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl(text: &str) -> Result<Vec<RepRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Ok(serde_json::from_str(l)?))
        .collect()
}

pub const CSV_HEADER: [&str; 12] = [
    "q",
    "family",
    "rank",
    "type",
    "class",
    "ip",
    "orientable",
    "vertices",
    "facets",
    "vertex_kind",
    "facet_kind",
    "generators",
];

fn schlafli(t: &[u64]) -> String {
    let parts: Vec<String> = t.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn write_csv<W: Write>(records: &[RepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.q.to_string(),
            r.family.to_string(),
            r.rank.to_string(),
            schlafli(&r.type_vector),
            r.class.map_or_else(String::new, |c| c.to_string()),
            r.ip.to_string(),
            r.orientable.to_string(),
            r.vertices().to_string(),
            r.facets().to_string(),
            r.vertex_kind.to_string(),
            r.facet_kind.to_string(),
            serde_json::to_string(&r.generators)?,
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => Error::Io(e),
        other => Error::Parse(format!("{other:?}")),
    }
}

/// A short human-readable description.
pub fn write_text<W: Write>(r: &RepRecord, out: &mut W) -> Result<()> {
    writeln!(out, "{}({}), rank {}", r.family, r.q, r.rank)?;
    writeln!(out, "  type        {}", schlafli(&r.type_vector))?;
    if let Some(c) = r.class {
        writeln!(out, "  class       {c}")?;
    }
    writeln!(out, "  flags       {}", r.flag_count)?;
    let faces: Vec<String> = r.face_counts.iter().map(usize::to_string).collect();
    writeln!(out, "  faces       {}", faces.join(" "))?;
    let kinds: Vec<String> = r.parabolic_kinds.iter().map(|k| format!("{k}")).collect();
    writeln!(out, "  parabolics  {}", kinds.join(" "))?;
    writeln!(out, "  orientable  {}", r.orientable)?;
    writeln!(out, "  ip          {}", r.ip)?;
    for (i, g) in r.generators.iter().enumerate() {
        writeln!(out, "  rho{i}        {}", serde_json::to_string(g)?)?;
    }
    Ok(())
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
