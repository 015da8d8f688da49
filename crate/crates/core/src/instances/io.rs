//! Instance dump/load.
//!
//! CSV layout: a first line `n,orientation,seed` carrying the values, a
//! column line `i,j,weight`, then one row per edge (`i < j` when undirected)
//! with the weight as a hex float. The binary layout is the magic `MCYC`, a
//! version byte, an orientation byte, `n` as u32 LE, the seed as u64 LE and
//! the edge weights as f64 LE in the same order as the CSV rows.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{format_hex_float, parse_hex_float, GraphInstance, Orientation};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"MCYC";
const VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    Csv,
    Binary,
}

pub fn write_instance(g: &GraphInstance, path: &Path, format: InstanceFormat) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    match format {
        InstanceFormat::Csv => write_csv(g, &mut out),
        InstanceFormat::Binary => write_binary(g, &mut out),
    }
    .and_then(|_| out.flush())
    .map_err(|e| Error::io(path, e))
}

/// Read an instance, detecting the format from the leading bytes.
pub fn read_instance(path: &Path) -> Result<GraphInstance> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut input = BufReader::new(file);
    let head = input.fill_buf().map_err(|e| Error::io(path, e))?;
    if head.starts_with(MAGIC) {
        read_binary(&mut input).map_err(|e| with_path(e, path))
    } else {
        read_csv(&mut input).map_err(|e| with_path(e, path))
    }
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    }
}

pub fn write_csv<W: Write>(g: &GraphInstance, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{},{},{}", g.n(), g.orientation(), g.seed())?;
    writeln!(out, "i,j,weight")?;
    for (i, j, w) in g.edges() {
        writeln!(out, "{i},{j},{}", format_hex_float(w))?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(input: &mut R) -> Result<GraphInstance> {
    let mut lines = input.lines().enumerate();
    let mut next_line = |what: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((no, Ok(line))) => Ok((no + 1, line)),
            Some((no, Err(e))) => Err(Error::Parse(format!("line {}: {e}", no + 1))),
            None => Err(Error::Parse(format!("missing {what}"))),
        }
    };
    let (_, header) = next_line("header")?;
    let fields: Vec<&str> = header.trim().split(',').collect();
    let [n, orientation, seed] = fields[..] else {
        return Err(Error::Parse(format!("bad header `{header}`")));
    };
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad n `{n}`")))?;
    let orientation: Orientation = orientation.parse()?;
    let seed: u64 = seed
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad seed `{seed}`")))?;
    let (_, columns) = next_line("column line")?;
    if columns.trim() != "i,j,weight" {
        return Err(Error::Parse(format!("bad column line `{columns}`")));
    }
    let mut edges = Vec::new();
    for (no, line) in lines {
        let line = line.map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: bad edge row `{line}`", no + 1));
        let mut parts = line.trim().split(',');
        let (Some(i), Some(j), Some(w), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(bad());
        };
        let i: usize = i.parse().map_err(|_| bad())?;
        let j: usize = j.parse().map_err(|_| bad())?;
        let w = parse_hex_float(w)?;
        edges.push((i, j, w));
    }
    GraphInstance::from_edges(n, orientation, seed, &edges)
}

pub fn write_binary<W: Write>(g: &GraphInstance, out: &mut W) -> std::io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&[VERSION, orientation_byte(g.orientation())])?;
    out.write_all(&(g.n() as u32).to_le_bytes())?;
    out.write_all(&g.seed().to_le_bytes())?;
    for (_, _, w) in g.edges() {
        out.write_all(&w.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_binary<R: Read>(input: &mut R) -> Result<GraphInstance> {
    let short = |e: std::io::Error| Error::Parse(format!("truncated binary instance: {e}"));
    let mut head = [0u8; 18];
    input.read_exact(&mut head).map_err(short)?;
    if &head[..4] != MAGIC {
        return Err(Error::Parse("bad magic".into()));
    }
    if head[4] != VERSION {
        return Err(Error::Parse(format!("unsupported version {}", head[4])));
    }
    let orientation = match head[5] {
        0 => Orientation::Directed,
        1 => Orientation::Undirected,
        b => return Err(Error::Parse(format!("bad orientation byte {b}"))),
    };
    let n = u32::from_le_bytes(head[6..10].try_into().expect("4 bytes")) as usize;
    let seed = u64::from_le_bytes(head[10..18].try_into().expect("8 bytes"));
    if n < orientation.min_vertices() {
        return Err(Error::Parse(format!("bad n = {n}")));
    }
    let mut edges = Vec::new();
    let mut buf = [0u8; 8];
    for i in 0..n {
        let start = if orientation == Orientation::Undirected {
            i + 1
        } else {
            0
        };
        for j in (start..n).filter(|&j| j != i) {
            input.read_exact(&mut buf).map_err(short)?;
            edges.push((i, j, f64::from_le_bytes(buf)));
        }
    }
    GraphInstance::from_edges(n, orientation, seed, &edges)
}

fn orientation_byte(o: Orientation) -> u8 {
    match o {
        Orientation::Directed => 0,
        Orientation::Undirected => 1,
    }
}
