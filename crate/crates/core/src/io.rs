//! File formats: contribution lists, point clouds and images.
//!
//! Contribution CSV has a header `f1,...,fn,delta` followed by one row per
//! contribution. Reals are written in the shortest form that parses back to
//! the same value.
//!
//! Binary images start with a little-endian `u32` header
//! `n, shape[0], ..., shape[n-1], c, dtype` and continue with row-major
//! voxel values, the `c` channels of a voxel stored together. Dtype codes
//! are listed in [`Dtype`].

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::cubical::{CubicalStream, Image};
use crate::error::{Error, Result};
use crate::filtration::{Contribution, FiltrationVector};
use crate::profile::Canonical;
use crate::vr::PointCloud;

/// Formats a real so that parsing it back yields the same value.
pub fn format_real(v: f64) -> String {
    format!("{v}")
}

fn parse_real(field: &str, location: impl Fn() -> String) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::format(location(), format!("not a number: {field:?}")))
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader)
}

fn csv_error(source: &str, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::format(format!("{source}:{line}"), e.to_string())
}

/// Rows of a numeric CSV table; a first row that does not parse as numbers
/// is taken as a header and skipped.
fn read_table<R: Read>(reader: R, source: &str) -> Result<Vec<Vec<String>>> {
    let mut rows = Vec::new();
    for (i, record) in csv_reader(reader).records().enumerate() {
        let record = record.map_err(|e| csv_error(source, e))?;
        let fields: Vec<String> = record.iter().map(str::to_owned).collect();
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        if i == 0 && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        rows.push(fields);
    }
    Ok(rows)
}

/// Writes contributions as CSV with a `f1,...,fn,delta` header.
pub fn write_contributions<W: Write>(writer: W, contributions: &[Contribution]) -> Result<()> {
    let dim = contributions.first().map_or(1, Contribution::dim);
    write_rows(writer, dim, contributions.iter())
}

/// Writes the contributions of a canonical curve or profile.
pub fn write_canonical<W: Write>(writer: W, canonical: &Canonical) -> Result<()> {
    match canonical {
        Canonical::Curve(c) => {
            let rows: Vec<Contribution> = c.contributions().collect();
            write_rows(writer, 1, rows.iter())
        }
        Canonical::Profile(p) => write_rows(writer, p.dim(), p.contributions().iter()),
    }
}

fn write_rows<'a, W: Write>(
    writer: W,
    dim: usize,
    rows: impl Iterator<Item = &'a Contribution>,
) -> Result<()> {
    let mut w = BufWriter::new(writer);
    let mut line = String::new();
    let io = |e| Error::io("<output>", e);
    for i in 1..=dim {
        line.push_str(&format!("f{i},"));
    }
    line.push_str("delta\n");
    w.write_all(line.as_bytes()).map_err(io)?;
    for c in rows {
        line.clear();
        for &v in c.at.coords() {
            line.push_str(&format_real(v));
            line.push(',');
        }
        line.push_str(&c.delta.to_string());
        line.push('\n');
        w.write_all(line.as_bytes()).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Reads a contribution CSV. The header is optional; every row must have
/// the same number of columns, the last being an integer delta.
pub fn read_contributions<R: Read>(reader: R, source: &str) -> Result<Vec<Contribution>> {
    let rows = read_table(reader, source)?;
    let width = rows.first().map_or(2, Vec::len);
    if width < 2 {
        return Err(Error::format(source, "need at least one filtration column and a delta"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let location = || format!("{source}: row {}", i + 1);
        if row.len() != width {
            return Err(Error::format(
                location(),
                format!("expected {width} columns, found {}", row.len()),
            ));
        }
        let coords = row[..width - 1]
            .iter()
            .map(|f| parse_real(f, location))
            .collect::<Result<Vec<f64>>>()?;
        let delta: i64 = row[width - 1]
            .parse()
            .map_err(|_| Error::format(location(), format!("delta is not an integer: {:?}", row[width - 1])))?;
        let at = FiltrationVector::new(coords)
            .map_err(|e| Error::format(location(), e.to_string()))?;
        out.push(Contribution::new(at, delta));
    }
    Ok(out)
}

pub fn read_contributions_path(path: &Path) -> Result<Vec<Contribution>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_contributions(BufReader::new(file), &path.display().to_string())
}

/// Reads a point cloud: one point per row, optional header.
pub fn read_point_cloud<R: Read>(reader: R, source: &str) -> Result<PointCloud> {
    let rows = read_table(reader, source)?;
    let points = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|f| parse_real(f, || format!("{source}: row {}", i + 1)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PointCloud::new(&points).map_err(|e| Error::format(source, e.to_string()))
}

pub fn read_point_cloud_path(path: &Path) -> Result<PointCloud> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_point_cloud(BufReader::new(file), &path.display().to_string())
}

/// Element types of binary images.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dtype {
    U8 = 0,
    U16 = 1,
    I32 = 2,
    F32 = 3,
    F64 = 4,
}

impl Dtype {
    pub fn from_code(code: u32) -> Option<Self> {
        Some(match code {
            0 => Dtype::U8,
            1 => Dtype::U16,
            2 => Dtype::I32,
            3 => Dtype::F32,
            4 => Dtype::F64,
            _ => return None,
        })
    }

    pub fn size(self) -> usize {
        match self {
            Dtype::U8 => 1,
            Dtype::U16 => 2,
            Dtype::I32 | Dtype::F32 => 4,
            Dtype::F64 => 8,
        }
    }

    fn decode(self, bytes: &[u8], out: &mut Vec<f64>) {
        out.clear();
        let chunks = bytes.chunks_exact(self.size());
        match self {
            Dtype::U8 => out.extend(bytes.iter().map(|&b| b as f64)),
            Dtype::U16 => out.extend(chunks.map(|b| u16::from_le_bytes([b[0], b[1]]) as f64)),
            Dtype::I32 => out.extend(chunks.map(|b| i32::from_le_bytes(b.try_into().unwrap()) as f64)),
            Dtype::F32 => out.extend(chunks.map(|b| f32::from_le_bytes(b.try_into().unwrap()) as f64)),
            Dtype::F64 => out.extend(chunks.map(|b| f64::from_le_bytes(b.try_into().unwrap()))),
        }
    }

    fn encode(self, v: f64, out: &mut Vec<u8>) {
        match self {
            Dtype::U8 => out.push(v as u8),
            Dtype::U16 => out.extend((v as u16).to_le_bytes()),
            Dtype::I32 => out.extend((v as i32).to_le_bytes()),
            Dtype::F32 => out.extend((v as f32).to_le_bytes()),
            Dtype::F64 => out.extend(v.to_le_bytes()),
        }
    }
}

/// Header of a binary image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryHeader {
    pub shape: Vec<usize>,
    pub channels: usize,
    pub dtype: Dtype,
}

fn read_u32<R: Read>(r: &mut R, source: &str, what: &str) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)
        .map_err(|_| Error::format(source, format!("truncated header while reading {what}")))?;
    Ok(u32::from_le_bytes(b))
}

pub fn read_binary_header<R: Read>(r: &mut R, source: &str) -> Result<BinaryHeader> {
    let n = read_u32(r, source, "the number of axes")? as usize;
    if n == 0 || n > 16 {
        return Err(Error::format(source, format!("unsupported number of axes {n}")));
    }
    let shape = (0..n)
        .map(|_| read_u32(r, source, "the shape").map(|s| s as usize))
        .collect::<Result<Vec<_>>>()?;
    let channels = read_u32(r, source, "the channel count")? as usize;
    if channels == 0 {
        return Err(Error::format(source, "channel count is 0"));
    }
    let code = read_u32(r, source, "the dtype")?;
    let dtype = Dtype::from_code(code)
        .ok_or_else(|| Error::format(source, format!("unknown dtype code {code}")))?;
    Ok(BinaryHeader {
        shape,
        channels,
        dtype,
    })
}

/// Streams a binary image through the cubical window, holding two slices
/// at a time. With `compact`, the output is aggregated as it grows.
pub fn cubical_from_binary<R: Read>(
    mut reader: R,
    source: &str,
    compact: bool,
) -> Result<Vec<Contribution>> {
    let header = read_binary_header(&mut reader, source)?;
    let mut stream = CubicalStream::new(&header.shape[1..], header.channels)?;
    if compact {
        stream = stream.compacting(1 << 20);
    }
    let slice_values = header.shape[1..].iter().product::<usize>() * header.channels;
    let mut bytes = vec![0u8; slice_values * header.dtype.size()];
    let mut values = Vec::with_capacity(slice_values);
    for k in 0..header.shape[0] {
        reader
            .read_exact(&mut bytes)
            .map_err(|_| Error::format(source, format!("data ends inside slice {k}")))?;
        header.dtype.decode(&bytes, &mut values);
        stream
            .push_slice(&values)
            .map_err(|e| Error::format(format!("{source}: slice {k}"), e.to_string()))?;
    }
    Ok(stream.finish())
}

pub fn read_image_binary<R: Read>(mut reader: R, source: &str) -> Result<Image> {
    let header = read_binary_header(&mut reader, source)?;
    let count = header.shape.iter().product::<usize>() * header.channels;
    let mut bytes = vec![0u8; count * header.dtype.size()];
    reader
        .read_exact(&mut bytes)
        .map_err(|_| Error::format(source, "data ends before the last voxel"))?;
    let mut values = Vec::with_capacity(count);
    header.dtype.decode(&bytes, &mut values);
    Image::new(header.shape, header.channels, values)
}

/// Writes an image in the binary format. Values are converted to `dtype`
/// with Rust's `as` casts.
pub fn write_image_binary<W: Write>(mut writer: W, img: &Image, dtype: Dtype) -> Result<()> {
    let mut out = Vec::with_capacity(16 + img.values().len() * dtype.size());
    out.extend((img.shape().len() as u32).to_le_bytes());
    for &s in img.shape() {
        out.extend((s as u32).to_le_bytes());
    }
    out.extend((img.channels() as u32).to_le_bytes());
    out.extend((dtype as u32).to_le_bytes());
    for &v in img.values() {
        dtype.encode(v, &mut out);
    }
    writer.write_all(&out).map_err(|e| Error::io("<output>", e))
}

/// Reads an ASCII (`P2`) grayscale PGM.
pub fn read_pgm<R: BufRead>(reader: R, source: &str) -> Result<Image> {
    let mut tokens = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|e| Error::io(source, e))?;
        let content = line.split('#').next().unwrap_or("");
        tokens.extend(content.split_whitespace().map(str::to_owned));
    }
    let mut it = tokens.into_iter();
    if it.next().as_deref() != Some("P2") {
        return Err(Error::format(source, "not an ASCII PGM (missing P2 magic)"));
    }
    let mut header = [0usize; 3];
    for (slot, name) in header.iter_mut().zip(["width", "height", "maxval"]) {
        *slot = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::format(source, format!("missing or invalid {name}")))?;
    }
    let [width, height, maxval] = header;
    let values = it
        .map(|t| {
            let v: usize = t
                .parse()
                .map_err(|_| Error::format(source, format!("invalid pixel {t:?}")))?;
            if v > maxval {
                return Err(Error::format(source, format!("pixel {v} exceeds maxval {maxval}")));
            }
            Ok(v as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    if values.len() != width * height {
        return Err(Error::format(
            source,
            format!("expected {} pixels, found {}", width * height, values.len()),
        ));
    }
    Image::new(vec![height, width], 1, values)
}

/// Reads a single-channel 2-D image from a CSV matrix, one row per line.
pub fn read_image_csv<R: Read>(reader: R, source: &str) -> Result<Image> {
    let rows = read_table(reader, source)?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|f| parse_real(f, || format!("{source}: row {}", i + 1)))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Image::grayscale(&rows).map_err(|e| Error::format(source, e.to_string()))
}

/// Image formats recognised by [`read_image_path`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageFormat {
    Binary,
    Pgm,
    Csv,
}

impl ImageFormat {
    /// Guesses the format from the file extension; binary by default.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("pgm") => ImageFormat::Pgm,
            Some("csv") | Some("txt") => ImageFormat::Csv,
            _ => ImageFormat::Binary,
        }
    }
}

pub fn read_image_path(path: &Path) -> Result<Image> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let source = path.display().to_string();
    let reader = BufReader::new(file);
    match ImageFormat::from_path(path) {
        ImageFormat::Binary => read_image_binary(reader, &source),
        ImageFormat::Pgm => read_pgm(reader, &source),
        ImageFormat::Csv => read_image_csv(reader, &source),
    }
}
