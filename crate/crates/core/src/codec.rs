//! Integer and dictionary codecs.
//!
//! Numeric stream layout: `elastic(count) ‖ mode ‖ [width] ‖ payload`, where
//! mode is 0 (plain), 1 (delta) or 2 (combined columns, delta-coded) and the
//! width byte is present only when the column carries a fixed digit width.
//! Dictionary layout: `elastic(entries) ‖ (elastic(len) ‖ bytes)*`.

use crate::error::{Error, Result};

/// Longest legal elastic encoding of a 64-bit value.
pub const MAX_ELASTIC_LEN: usize = 10;

/// Largest integer carried by numeric streams; keeps every delta inside `i64`.
pub const MAX_NUMERIC: u64 = i64::MAX as u64;

pub fn elastic_encode(mut n: u64, out: &mut Vec<u8>) {
    while n >= 0x80 {
        out.push((n as u8 & 0x7f) | 0x80);
        n >>= 7;
    }
    out.push(n as u8);
}

pub fn elastic_bytes(n: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(2);
    elastic_encode(n, &mut out);
    out
}

/// Decodes one value at `offset`, returning it and the bytes consumed.
pub fn elastic_decode(bytes: &[u8], offset: usize) -> Result<(u64, usize)> {
    let mut value: u64 = 0;
    for i in 0..MAX_ELASTIC_LEN {
        let Some(&b) = bytes.get(offset + i) else {
            return Err(Error::MalformedVarint { offset });
        };
        let chunk = (b & 0x7f) as u64;
        if i == MAX_ELASTIC_LEN - 1 && chunk > 1 {
            return Err(Error::MalformedVarint { offset });
        }
        value |= chunk << (7 * i);
        if b & 0x80 == 0 {
            return Ok((value, i + 1));
        }
    }
    Err(Error::MalformedVarint { offset })
}

pub fn zigzag(n: i64) -> u64 {
    ((n << 1) ^ (n >> 63)) as u64
}

pub fn unzigzag(n: u64) -> i64 {
    ((n >> 1) as i64) ^ -((n & 1) as i64)
}

/// Sequential reader over an encoded buffer.
#[derive(Debug, Clone)]
pub struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Reader { bytes, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }

    pub fn is_empty(&self) -> bool {
        self.remaining() == 0
    }

    pub fn varint(&mut self) -> Result<u64> {
        let (v, n) = elastic_decode(self.bytes, self.pos)?;
        self.pos += n;
        Ok(v)
    }

    /// A count that cannot exceed the bytes left, each item costing at least one byte.
    pub fn count(&mut self) -> Result<usize> {
        let n = self.varint()?;
        if n > self.remaining() as u64 {
            return Err(Error::corrupt(format!("declared count {n} exceeds the {} remaining bytes", self.remaining())));
        }
        Ok(n as usize)
    }

    pub fn byte(&mut self) -> Result<u8> {
        let b = *self.bytes.get(self.pos).ok_or_else(|| Error::corrupt("unexpected end of stream"))?;
        self.pos += 1;
        Ok(b)
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if n > self.remaining() {
            return Err(Error::corrupt("unexpected end of stream"));
        }
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn finish(&self, what: &str) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::inconsistent(format!("{} trailing bytes in {what}", self.remaining())))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericMode {
    Plain,
    Delta,
    /// Delta coding over row-wise concatenated columns.
    Combined,
}

impl NumericMode {
    pub fn code(self) -> u8 {
        match self {
            NumericMode::Plain => 0,
            NumericMode::Delta => 1,
            NumericMode::Combined => 2,
        }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(NumericMode::Plain),
            1 => Ok(NumericMode::Delta),
            2 => Ok(NumericMode::Combined),
            other => Err(Error::corrupt(format!("unknown numeric mode {other}"))),
        }
    }

    pub fn is_delta(self) -> bool {
        self != NumericMode::Plain
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NumericColumnEncoding {
    pub mode: NumericMode,
    pub zigzag: bool,
    /// Every value has exactly this many digits (leading zeros restored on decode).
    pub fixed_width: Option<u8>,
    /// First value of a delta-coded column, filled in by the encoder.
    pub base_value: Option<u64>,
}

impl NumericColumnEncoding {
    pub fn new(mode: NumericMode) -> Self {
        NumericColumnEncoding { mode, zigzag: true, fixed_width: None, base_value: None }
    }

    pub fn with_width(mut self, width: Option<u8>) -> Self {
        self.fixed_width = width;
        self
    }
}

fn mean_abs(values: impl Iterator<Item = u64>, n: usize) -> f64 {
    values.map(|v| v as f64).sum::<f64>() / n as f64
}

/// Delta coding is chosen when the first ten deltas (the first value counting
/// as its own delta) are smaller on average than the raw values.
pub fn dynamic_delta_decide(column: &[u64]) -> NumericMode {
    let sample = &column[..column.len().min(10)];
    if sample.is_empty() {
        return NumericMode::Plain;
    }
    let plain = mean_abs(sample.iter().copied(), sample.len());
    let deltas =
        std::iter::once(sample[0]).chain(sample.windows(2).map(|w| (w[1] as i64 - w[0] as i64).unsigned_abs()));
    let delta = mean_abs(deltas, sample.len());
    if delta < plain {
        NumericMode::Delta
    } else {
        NumericMode::Plain
    }
}

pub fn parse_digits(digits: &[u8]) -> Result<u64> {
    let mut v: u64 = 0;
    for &d in digits {
        if !d.is_ascii_digit() {
            return Err(Error::Overflow(String::from_utf8_lossy(digits).into_owned()));
        }
        v = v
            .checked_mul(10)
            .and_then(|v| v.checked_add((d - b'0') as u64))
            .filter(|&v| v <= MAX_NUMERIC)
            .ok_or_else(|| Error::Overflow(String::from_utf8_lossy(digits).into_owned()))?;
    }
    if digits.is_empty() {
        return Err(Error::Overflow(String::new()));
    }
    Ok(v)
}

/// Appends `v` as decimal, left-padded with zeros to `width`.
pub fn write_digits(v: u64, width: usize, out: &mut Vec<u8>) {
    let mut buf = [0u8; 20];
    let mut i = buf.len();
    let mut n = v;
    loop {
        i -= 1;
        buf[i] = b'0' + (n % 10) as u8;
        n /= 10;
        if n == 0 {
            break;
        }
    }
    let digits = &buf[i..];
    out.resize(out.len() + width.saturating_sub(digits.len()), b'0');
    out.extend_from_slice(digits);
}

/// Encodes integers already parsed from a column. Values must not exceed
/// [`MAX_NUMERIC`].
pub fn encode_integers(values: &[u64], enc: &NumericColumnEncoding, out: &mut Vec<u8>) -> Result<()> {
    if let Some(&bad) = values.iter().find(|&&v| v > MAX_NUMERIC) {
        return Err(Error::Overflow(bad.to_string()));
    }
    elastic_encode(values.len() as u64, out);
    out.push(enc.mode.code());
    if let Some(w) = enc.fixed_width {
        out.push(w);
    }
    let put = |v: i64, out: &mut Vec<u8>| {
        if enc.zigzag {
            elastic_encode(zigzag(v), out)
        } else {
            elastic_encode(v as u64, out)
        }
    };
    match enc.mode {
        NumericMode::Plain => {
            for &v in values {
                put(v as i64, out);
            }
        }
        NumericMode::Delta | NumericMode::Combined => {
            if let Some((&first, rest)) = values.split_first() {
                elastic_encode(first, out);
                let mut prev = first as i64;
                for &v in rest {
                    put(v as i64 - prev, out);
                    prev = v as i64;
                }
            }
        }
    }
    Ok(())
}

/// Parses a digit column and encodes it.
pub fn encode_numeric_column(column: &[&[u8]], enc: &NumericColumnEncoding, out: &mut Vec<u8>) -> Result<()> {
    let values = column.iter().map(|d| parse_digits(d)).collect::<Result<Vec<_>>>()?;
    if let Some(w) = enc.fixed_width {
        if column.iter().any(|d| d.len() != w as usize) {
            return Err(Error::inconsistent("fixed-width column has a value of another width"));
        }
    }
    encode_integers(&values, enc, out)
}

/// Inverse of [`encode_integers`]; header fields are checked against `enc`.
pub fn decode_integers(reader: &mut Reader<'_>, enc: &NumericColumnEncoding) -> Result<Vec<u64>> {
    let count = reader.count()?;
    let mode = NumericMode::from_code(reader.byte()?)?;
    if mode != enc.mode {
        return Err(Error::inconsistent(format!(
            "numeric stream mode {mode:?} disagrees with manifest {:?}",
            enc.mode
        )));
    }
    if let Some(w) = enc.fixed_width {
        let stored = reader.byte()?;
        if stored != w {
            return Err(Error::inconsistent("numeric stream width disagrees with manifest"));
        }
    }
    let mut values = Vec::with_capacity(count);
    let get = |reader: &mut Reader<'_>| -> Result<i64> {
        let raw = reader.varint()?;
        Ok(if enc.zigzag { unzigzag(raw) } else { raw as i64 })
    };
    match mode {
        NumericMode::Plain => {
            for _ in 0..count {
                values.push(get(reader)?);
            }
        }
        NumericMode::Delta | NumericMode::Combined => {
            if count > 0 {
                let mut prev = reader.varint()? as i64;
                values.push(prev);
                for _ in 1..count {
                    prev = prev.checked_add(get(reader)?).ok_or_else(|| Error::corrupt("delta overflow"))?;
                    values.push(prev);
                }
            }
        }
    }
    values
        .into_iter()
        .map(|v| if v < 0 { Err(Error::corrupt("negative value in numeric stream")) } else { Ok(v as u64) })
        .collect()
}

pub fn encode_dictionary<'a, I>(entries: I, out: &mut Vec<u8>)
where
    I: IntoIterator<Item = &'a [u8]>,
    I::IntoIter: ExactSizeIterator,
{
    let entries = entries.into_iter();
    elastic_encode(entries.len() as u64, out);
    for e in entries {
        elastic_encode(e.len() as u64, out);
        out.extend_from_slice(e);
    }
}

pub fn decode_dictionary<'a>(reader: &mut Reader<'a>) -> Result<Vec<&'a [u8]>> {
    let count = reader.count()?;
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let len = reader.count()?;
        entries.push(reader.take(len)?);
    }
    Ok(entries)
}

pub fn encode_ids(ids: &[u32], out: &mut Vec<u8>) {
    elastic_encode(ids.len() as u64, out);
    for &id in ids {
        elastic_encode(id as u64, out);
    }
}

pub fn decode_ids(reader: &mut Reader<'_>, bound: usize) -> Result<Vec<u32>> {
    let count = reader.count()?;
    let mut ids = Vec::with_capacity(count);
    for _ in 0..count {
        let id = reader.varint()?;
        if id >= bound as u64 {
            return Err(Error::inconsistent(format!("id {id} outside dictionary of {bound}")));
        }
        ids.push(id as u32);
    }
    Ok(ids)
}
