//! The table of the fifty fake projective plane classes, with automorphism
//! groups, first homology and a few curated annotations.
//!
//! Each record stands for a pair of complex conjugate surfaces.
//!
//! CSV columns:
//! `field_or_class,p,T1,index_N,suffix,aut,h1,lifts_su21,sc_quotients`.
//! `T1`, `h1` and `sc_quotients` are `;`-joined. A row that the source table
//! writes with two presentations (`∅/{2I}`, suffix `b/b`) is one record:
//! the part after `/` is the alias. `?` in `sc_quotients` marks that the
//! remaining subgroups are unknown rather than non-simply-connected.

use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

/// The shipped dataset.
pub const SHIPPED_CSV: &str = include_str!("../data/fpp_atlas_v1.csv");

/// Overrides the dataset path for [`load`].
pub const DATA_ENV_VAR: &str = "MINIFOLD_ATLAS_DATA";

pub const HEADER: [&str; 9] = [
    "field_or_class",
    "p",
    "T1",
    "index_N",
    "suffix",
    "aut",
    "h1",
    "lifts_su21",
    "sc_quotients",
];

/// Groups that occur as automorphism groups or as their subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Trivial,
    Z3,
    Z7,
    Z3Squared,
    G21,
}

impl Group {
    pub fn order(self) -> u32 {
        match self {
            Group::Trivial => 1,
            Group::Z3 => 3,
            Group::Z7 => 7,
            Group::Z3Squared => 9,
            Group::G21 => 21,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Group::Trivial => "trivial",
            Group::Z3 => "Z/3",
            Group::Z7 => "Z/7",
            Group::Z3Squared => "(Z/3)^2",
            Group::G21 => "G21",
        }
    }

    /// Whether `sub` is isomorphic to a subgroup of `self`.
    pub fn contains(self, sub: Group) -> bool {
        use Group::*;
        matches!(
            (self, sub),
            (_, Trivial)
                | (Z3, Z3)
                | (Z7, Z7)
                | (Z3Squared, Z3 | Z3Squared)
                | (G21, Z3 | Z7 | G21)
        )
    }

    pub fn has_order_seven(self) -> bool {
        self.order().is_multiple_of(7)
    }

    /// Automorphism groups that occur in the table.
    pub fn is_automorphism_group(self) -> bool {
        self != Group::Z7
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "trivial" | "1" | "{1}" => Group::Trivial,
            "Z/3" | "Z3" => Group::Z3,
            "Z/7" | "Z7" => Group::Z7,
            "(Z/3)^2" | "Z3^2" => Group::Z3Squared,
            "G21" | "G_21" => Group::G21,
            other => return Err(Error::UnknownGroup(other.to_string())),
        })
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

/// Subgroups `G` with `S/G` simply connected.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuotientAnnotation {
    pub simply_connected: Vec<Group>,
    /// Set when the table leaves the other subgroups undetermined.
    pub others_unknown: bool,
}

impl QuotientAnnotation {
    pub fn status(&self, g: Group) -> TriState {
        if self.simply_connected.contains(&g) {
            TriState::Yes
        } else if self.others_unknown {
            TriState::Unknown
        } else {
            TriState::No
        }
    }

    fn parse(cell: &str) -> Result<Self> {
        let mut out = QuotientAnnotation::default();
        for part in split_list(cell) {
            if part == "?" {
                out.others_unknown = true;
            } else {
                out.simply_connected.push(part.parse()?);
            }
        }
        Ok(out)
    }

    fn to_cell(&self) -> String {
        let mut parts: Vec<&str> = self.simply_connected.iter().map(|g| g.label()).collect();
        if self.others_unknown {
            parts.push("?");
        }
        parts.join(";")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FppRecord {
    pub field_or_class: String,
    pub p: u32,
    /// Opaque labels such as `2`, `3-`, `17-`, `2I`.
    pub t1: Vec<String>,
    pub t1_alias: Option<Vec<String>>,
    pub index_n: u32,
    /// `-` when the class has a single group.
    pub suffix: String,
    pub suffix_alias: Option<String>,
    pub aut: Group,
    pub h1: Vec<u64>,
    /// Whether the lattice lifts to `SU(2,1)`. The exception is stated for
    /// the classes `C2` and `C18` as a whole; it is stored on each of their
    /// rows.
    pub lifts_su21: bool,
    pub sc_quotients: QuotientAnnotation,
}

impl FppRecord {
    /// `|H_1(S, Z)|`.
    pub fn h1_order(&self) -> u64 {
        self.h1.iter().product()
    }

    pub fn label(&self) -> String {
        let t1 = |v: &[String]| format!("{{{}}}", v.join(","));
        let mut s = format!("{} p={} T1={}", self.field_or_class, self.p, t1(&self.t1));
        if let Some(alias) = &self.t1_alias {
            s.push_str(&format!("/{}", t1(alias)));
        }
        s.push_str(&format!(" N={} {}", self.index_n, self.suffix));
        if let Some(alias) = &self.suffix_alias {
            s.push_str(&format!("/{alias}"));
        }
        s
    }

    fn to_row(&self) -> [String; 9] {
        let t1 = match &self.t1_alias {
            Some(alias) => format!("{}/{}", self.t1.join(";"), alias.join(";")),
            None => self.t1.join(";"),
        };
        let suffix = match &self.suffix_alias {
            Some(alias) => format!("{}/{alias}", self.suffix),
            None => self.suffix.clone(),
        };
        [
            self.field_or_class.clone(),
            self.p.to_string(),
            t1,
            self.index_n.to_string(),
            suffix,
            self.aut.label().to_string(),
            self.h1.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
            self.lifts_su21.to_string(),
            self.sc_quotients.to_cell(),
        ]
    }
}

fn split_list(cell: &str) -> impl Iterator<Item = &str> {
    cell.split(';').map(str::trim).filter(|s| !s.is_empty())
}

fn split_alias(cell: &str) -> (&str, Option<&str>) {
    match cell.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (cell, None),
    }
}

fn parse_record(row: usize, cells: &csv::StringRecord) -> Result<FppRecord> {
    if cells.len() != HEADER.len() {
        return Err(Error::Row {
            row,
            message: format!("expected {} fields, found {}", HEADER.len(), cells.len()),
        });
    }
    let field = |i: usize| cells[i].trim();
    let number = |i: usize| -> Result<u64> {
        field(i).parse().map_err(|_| Error::Row {
            row,
            message: format!("`{}` is not an integer in column {}", field(i), HEADER[i]),
        })
    };
    let invariant = |field: &'static str, message: String| Error::Invariant { row, field, message };

    let field_or_class = field(0).to_string();
    if field_or_class.is_empty() {
        return Err(invariant("field_or_class", "empty label".into()));
    }
    let p = number(1)? as u32;
    if ![2, 3, 5].contains(&p) {
        return Err(invariant("p", format!("{p} is not one of 2, 3, 5")));
    }
    let (t1, t1_alias) = split_alias(field(2));
    let index_n = number(3)? as u32;
    if index_n == 0 {
        return Err(invariant("index_N", "index must be positive".into()));
    }
    let (suffix, suffix_alias) = split_alias(field(4));
    if suffix.is_empty() {
        return Err(invariant("suffix", "empty suffix (use `-`)".into()));
    }
    let aut: Group = field(5).parse().map_err(|e: Error| Error::Row {
        row,
        message: e.to_string(),
    })?;
    if !aut.is_automorphism_group() {
        return Err(invariant("aut", format!("{aut} does not occur as an automorphism group")));
    }
    // Aut(S) = N(Π)/Π sits inside the maximal group, whose index over Π is N.
    if !index_n.is_multiple_of(aut.order()) {
        return Err(invariant("aut", format!("|{aut}| does not divide N = {index_n}")));
    }
    let mut h1 = Vec::new();
    for part in split_list(field(6)) {
        let n: u64 = part.parse().map_err(|_| Error::Row {
            row,
            message: format!("`{part}` is not an integer in column h1"),
        })?;
        if n < 2 {
            return Err(invariant("h1", format!("cyclic factor of order {n}")));
        }
        h1.push(n);
    }
    let lifts_su21 = match field(7) {
        "true" => true,
        "false" => false,
        other => {
            return Err(Error::Row {
                row,
                message: format!("`{other}` is not a boolean in column lifts_su21"),
            })
        }
    };
    let sc_quotients = QuotientAnnotation::parse(field(8)).map_err(|e| Error::Row {
        row,
        message: e.to_string(),
    })?;
    for g in &sc_quotients.simply_connected {
        if !aut.contains(*g) || *g == Group::Trivial {
            return Err(invariant("sc_quotients", format!("{g} is not a nontrivial subgroup of {aut}")));
        }
    }
    let list = |s: &str| split_list(s).map(String::from).collect::<Vec<_>>();
    Ok(FppRecord {
        field_or_class,
        p,
        t1: list(t1),
        t1_alias: t1_alias.map(list),
        index_n,
        suffix: suffix.to_string(),
        suffix_alias: suffix_alias.map(String::from),
        aut,
        h1,
        lifts_su21,
        sc_quotients,
    })
}

/// Parses and validates CSV; errors carry the 1-based line number.
pub fn ingest<R: Read>(input: R) -> Result<Vec<FppRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut records = Vec::new();
    let mut seen_header = false;
    for (i, result) in reader.records().enumerate() {
        let cells = result.map_err(|e| Error::Parse(e.to_string()))?;
        let row = cells.position().map_or(i + 1, |p| p.line() as usize);
        if !seen_header {
            let found: Vec<&str> = cells.iter().map(str::trim).collect();
            if found != HEADER {
                return Err(Error::Row {
                    row,
                    message: format!("expected header `{}`", HEADER.join(",")),
                });
            }
            seen_header = true;
            continue;
        }
        records.push(parse_record(row, &cells)?);
    }
    Ok(records)
}

pub fn ingest_path(path: &Path) -> Result<Vec<FppRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ingest(file)
}

pub fn shipped() -> Vec<FppRecord> {
    ingest(SHIPPED_CSV.as_bytes()).expect("shipped dataset is valid")
}

/// Explicit path, then `MINIFOLD_ATLAS_DATA`, then the shipped dataset.
pub fn load(path: Option<&Path>) -> Result<Vec<FppRecord>> {
    let env = std::env::var_os(DATA_ENV_VAR).map(PathBuf::from);
    match path.map(Path::to_path_buf).or(env) {
        Some(p) => ingest_path(&p),
        None => Ok(shipped()),
    }
}

pub fn serialize<W: Write>(records: &[FppRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    writer.write_record(HEADER).map_err(io)?;
    for r in records {
        writer.write_record(r.to_row()).map_err(io)?;
    }
    writer.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn serialize_to_string(records: &[FppRecord]) -> Result<String> {
    let mut buf = Vec::new();
    serialize(records, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasQueryResult<'a> {
    pub records: Vec<&'a FppRecord>,
}

impl AtlasQueryResult<'_> {
    /// Each record is a pair of complex conjugate surfaces.
    pub fn surface_count(&self) -> usize {
        2 * self.records.len()
    }
}

pub fn query_all(records: &[FppRecord]) -> AtlasQueryResult<'_> {
    AtlasQueryResult {
        records: records.iter().collect(),
    }
}

pub fn query_aut<'a>(records: &'a [FppRecord], group: &str) -> Result<AtlasQueryResult<'a>> {
    let g: Group = group.parse()?;
    Ok(AtlasQueryResult {
        records: records.iter().filter(|r| r.aut == g).collect(),
    })
}

/// No invariant factor of `H_1` is divisible by 3.
pub fn three_torsion_free(record: &FppRecord) -> bool {
    record.h1.iter().all(|n| n % 3 != 0)
}

/// Whether the quotient by `subgroup` is annotated simply connected.
///
/// `subgroup` must contain an element of order 7.
pub fn k_phantom_eligible(record: &FppRecord, subgroup: &str) -> Result<bool> {
    let g: Group = subgroup.parse()?;
    if !g.has_order_seven() {
        return Err(Error::NoOrderSeven(g.label().to_string()));
    }
    Ok(record.aut.contains(g) && record.sc_quotients.status(g) == TriState::Yes)
}

/// All `(record, subgroup)` pairs with an order-7 subgroup and a simply
/// connected quotient.
pub fn k_phantom_pairs(records: &[FppRecord]) -> Vec<(&FppRecord, Group)> {
    let mut out = Vec::new();
    for r in records {
        for g in [Group::Z7, Group::G21] {
            if k_phantom_eligible(r, g.label()).expect("order-7 subgroup") {
                out.push((r, g));
            }
        }
    }
    out
}
