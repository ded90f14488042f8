//! Hybrid encoder: type-aware encoding of skeleton groups, unstructured
//! numbers and templates, together with the matching decoders.
//!
//! Template text escapes `\`, `<` and `|` in static tokens with a leading
//! backslash. Placeholders are `|g<k>|` for a row of group `k`, `<*>` for an
//! unstructured string and a length tag such as `<c>` for a three-digit number.

use std::collections::HashMap;

use crate::codec::{
    self, decode_dictionary, decode_ids, decode_integers, dynamic_delta_decide, encode_dictionary, encode_ids,
    encode_integers, parse_digits, write_digits, NumericColumnEncoding, NumericMode, Reader, MAX_NUMERIC,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::model::{SkeletonGroup, SkeletonPart, TokenCoord};
use crate::text;

/// Widest concatenation that still fits a signed 64-bit integer.
pub const MAX_COMBINED_WIDTH: usize = 18;

const SAMPLE_ROWS: usize = 10;

/// `a`..`z` for lengths 1..=26, then `a1`, `a2`, ...
pub fn length_tag(length: usize) -> String {
    assert!(length > 0, "numbers have at least one digit");
    if length <= 26 {
        char::from(b'a' + (length - 1) as u8).to_string()
    } else {
        format!("a{}", length - 26)
    }
}

pub fn parse_length_tag(tag: &[u8]) -> Option<usize> {
    match tag {
        [c] if c.is_ascii_lowercase() => Some((c - b'a') as usize + 1),
        [b'a', rest @ ..] if !rest.is_empty() && rest[0] != b'0' && rest.len() <= 18 => text::is_ascii_digits(rest)
            .then(|| std::str::from_utf8(rest).ok()?.parse::<usize>().ok().map(|n| n + 26))
            .flatten(),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthGroup {
    pub length: usize,
    pub tag: String,
    pub values: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthEncoding {
    Numeric(NumericColumnEncoding),
    /// Values too large for the integer path, stored verbatim.
    Dictionary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthGroupStream {
    pub group: LengthGroup,
    pub encoding: LengthEncoding,
    pub payload: Vec<u8>,
}

/// A token coordinate with the length tag its slot renders as.
pub type TaggedToken = (TokenCoord, String);

/// Partitions unstructured numbers by digit count, encodes each partition and
/// returns the tag assigned to every token.
pub fn encode_unstructured_numbers(
    tokens: &[(TokenCoord, &[u8])],
) -> Result<(Vec<LengthGroupStream>, Vec<TaggedToken>)> {
    let mut by_length: Vec<LengthGroup> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut substitutions = Vec::with_capacity(tokens.len());
    for &(coord, digits) in tokens {
        if !text::is_ascii_digits(digits) {
            return Err(Error::inconsistent("unstructured number with a non-digit byte"));
        }
        let gi = *index.entry(digits.len()).or_insert_with(|| {
            by_length.push(LengthGroup { length: digits.len(), tag: length_tag(digits.len()), values: Vec::new() });
            by_length.len() - 1
        });
        by_length[gi].values.push(digits.to_vec());
        substitutions.push((coord, by_length[gi].tag.clone()));
    }
    by_length.sort_by_key(|g| g.length);
    let streams = by_length.into_iter().map(encode_length_group).collect::<Result<_>>()?;
    Ok((streams, substitutions))
}

fn encode_length_group(group: LengthGroup) -> Result<LengthGroupStream> {
    let parsed: Option<Vec<u64>> = group.values.iter().map(|v| parse_digits(v).ok()).collect();
    let mut payload = Vec::new();
    let encoding = match (parsed, u8::try_from(group.length)) {
        (Some(values), Ok(width)) => {
            let mut enc = NumericColumnEncoding::new(dynamic_delta_decide(&values)).with_width(Some(width));
            if enc.mode == NumericMode::Delta {
                enc.base_value = values.first().copied();
            }
            encode_integers(&values, &enc, &mut payload)?;
            LengthEncoding::Numeric(enc)
        }
        _ => {
            encode_dictionary(group.values.iter().map(Vec::as_slice), &mut payload);
            LengthEncoding::Dictionary
        }
    };
    Ok(LengthGroupStream { group, encoding, payload })
}

/// Decodes a length-group stream into `length`-byte digit strings laid end to end.
pub fn decode_length_group(payload: &[u8], length: usize, encoding: &LengthEncoding) -> Result<Vec<u8>> {
    let mut reader = Reader::new(payload);
    let out = match encoding {
        LengthEncoding::Numeric(enc) => {
            if enc.fixed_width.map(usize::from) != Some(length) {
                return Err(Error::inconsistent("length group width disagrees with its length"));
            }
            let values = decode_integers(&mut reader, enc)?;
            let mut out = Vec::with_capacity(values.len() * length);
            for v in values {
                let before = out.len();
                write_digits(v, length, &mut out);
                if out.len() - before != length {
                    return Err(Error::inconsistent("number wider than its length group"));
                }
            }
            out
        }
        LengthEncoding::Dictionary => {
            let values = decode_dictionary(&mut reader)?;
            let mut out = Vec::with_capacity(values.len() * length);
            for v in values {
                if v.len() != length || !text::is_ascii_digits(v) {
                    return Err(Error::inconsistent("stored number does not match its length group"));
                }
                out.extend_from_slice(v);
            }
            out
        }
    };
    reader.finish("length group stream")?;
    Ok(out)
}

/// Where a group's cells go, before any stream is written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixRoute {
    /// No open slots: every row equals the skeleton.
    Empty,
    /// Each row's digits are concatenated into one integer.
    Combined,
    PerColumn(Vec<ColumnRoute>),
    /// Whole tokens through a dictionary.
    Dictionary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnRoute {
    Numeric { fixed_width: Option<u8> },
    Mixed,
}

/// Everything a decoder needs to know about a group stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixPlan {
    Empty,
    Combined { widths: Vec<u8>, encoding: NumericColumnEncoding },
    Columns(Vec<ColumnPlan>),
    Dictionary { entries: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnPlan {
    Numeric(NumericColumnEncoding),
    /// Parity-coded column; `strings` values live in the string-value dictionary.
    Mixed {
        encoding: NumericColumnEncoding,
        strings: u32,
    },
}

impl MatrixPlan {
    /// Number of string-value dictionary entries this group owns.
    pub fn string_values(&self) -> usize {
        match self {
            MatrixPlan::Columns(cols) => cols
                .iter()
                .map(|c| match c {
                    ColumnPlan::Mixed { strings, .. } => *strings as usize,
                    ColumnPlan::Numeric(_) => 0,
                })
                .sum(),
            MatrixPlan::Dictionary { entries } => *entries as usize,
            _ => 0,
        }
    }
}

fn uniform_width(column: &[Vec<u8>]) -> Option<usize> {
    let w = column.first()?.len();
    column.iter().all(|v| v.len() == w).then_some(w)
}

fn mean_abs_delta(values: &[u64]) -> f64 {
    let n = values.len() - 1;
    values.windows(2).map(|w| w[1].abs_diff(w[0]) as f64).sum::<f64>() / n as f64
}

/// Whether row-wise concatenation beats per-column deltas on the first ten rows.
pub fn combined_column_decide(group: &SkeletonGroup) -> bool {
    let m = &group.matrix;
    if m.width() == 0 || m.rows() < 2 {
        return false;
    }
    let mut total = 0;
    for col in &m.columns {
        if !col.iter().all(|v| text::is_ascii_digits(v)) {
            return false;
        }
        match uniform_width(col) {
            Some(w) => total += w,
            None => return false,
        }
    }
    if total > MAX_COMBINED_WIDTH {
        return false;
    }
    let n = m.rows().min(SAMPLE_ROWS);
    let concatenated: Vec<u64> =
        (0..n).map(|r| m.row(r).fold(0u64, |acc, c| acc * 10u64.pow(c.len() as u32) + digits_value(c))).collect();
    let per_column: f64 =
        m.columns.iter().map(|col| mean_abs_delta(&col[..n].iter().map(|v| digits_value(v)).collect::<Vec<_>>())).sum();
    mean_abs_delta(&concatenated) < per_column
}

/// Value of a short digit string known to fit in 18 digits.
fn digits_value(d: &[u8]) -> u64 {
    d.iter().fold(0u64, |acc, &b| acc * 10 + (b - b'0') as u64)
}

pub fn decide_matrix_encoding(group: &SkeletonGroup, cfg: &Config) -> MatrixRoute {
    if cfg.disable_hybrid_encoder {
        return MatrixRoute::Dictionary;
    }
    let m = &group.matrix;
    if m.width() == 0 {
        return MatrixRoute::Empty;
    }
    let all_digits = m.columns.iter().all(|c| c.iter().all(|v| text::is_ascii_digits(v)));
    if !all_digits {
        return MatrixRoute::PerColumn(vec![ColumnRoute::Mixed; m.width()]);
    }
    if combined_column_decide(group) {
        return MatrixRoute::Combined;
    }
    MatrixRoute::PerColumn(m.columns.iter().map(|c| route_digit_column(c)).collect())
}

fn route_digit_column(column: &[Vec<u8>]) -> ColumnRoute {
    if column.iter().any(|v| parse_digits(v).is_err()) {
        return ColumnRoute::Mixed;
    }
    let leading_zero = column.iter().any(|v| text::has_leading_zero(v));
    match (leading_zero, uniform_width(column)) {
        (false, _) => ColumnRoute::Numeric { fixed_width: None },
        (true, Some(w)) => ColumnRoute::Numeric { fixed_width: Some(w as u8) },
        (true, None) => ColumnRoute::Mixed,
    }
}

/// A group's encoded payload plus the strings it contributes to the
/// string-value dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedGroup {
    pub plan: MatrixPlan,
    pub payload: Vec<u8>,
    pub string_values: Vec<Vec<u8>>,
}

fn delta_encoding(values: &[u64]) -> NumericColumnEncoding {
    let mut enc = NumericColumnEncoding::new(dynamic_delta_decide(values));
    if enc.mode == NumericMode::Delta {
        enc.base_value = values.first().copied();
    }
    enc
}

/// Parity transform of one column: canonical numbers `n` become `2n`, every
/// other value gets a per-column id starting at 1 and becomes `2id + 1`.
pub fn parity_column(column: &[Vec<u8>]) -> (Vec<u64>, Vec<Vec<u8>>) {
    let mut ids: HashMap<&[u8], u64> = HashMap::new();
    let mut strings = Vec::new();
    let values = column
        .iter()
        .map(|v| {
            let number = (text::is_ascii_digits(v) && !text::has_leading_zero(v))
                .then(|| parse_digits(v).ok())
                .flatten()
                .filter(|&n| n <= MAX_NUMERIC / 2);
            match number {
                Some(n) => 2 * n,
                None => {
                    let id = *ids.entry(v.as_slice()).or_insert_with(|| {
                        strings.push(v.clone());
                        strings.len() as u64
                    });
                    2 * id + 1
                }
            }
        })
        .collect();
    (values, strings)
}

pub fn encode_mixed_column(column: &[Vec<u8>], out: &mut Vec<u8>) -> Result<(ColumnPlan, Vec<Vec<u8>>)> {
    let (values, strings) = parity_column(column);
    let encoding = delta_encoding(&values);
    encode_integers(&values, &encoding, out)?;
    Ok((ColumnPlan::Mixed { encoding, strings: strings.len() as u32 }, strings))
}

pub fn encode_group(group: &SkeletonGroup, cfg: &Config) -> Result<EncodedGroup> {
    if !group.is_consistent() {
        return Err(Error::inconsistent("skeleton group with ragged matrix"));
    }
    let m = &group.matrix;
    let mut payload = Vec::new();
    codec::elastic_encode(m.rows() as u64, &mut payload);
    let mut string_values = Vec::new();
    let plan = match decide_matrix_encoding(group, cfg) {
        MatrixRoute::Empty => MatrixPlan::Empty,
        MatrixRoute::Combined => {
            let widths: Vec<u8> = m.columns.iter().map(|c| c[0].len() as u8).collect();
            let values: Vec<u64> = (0..m.rows())
                .map(|r| m.row(r).fold(0u64, |acc, c| acc * 10u64.pow(c.len() as u32) + digits_value(c)))
                .collect();
            let encoding = NumericColumnEncoding::new(NumericMode::Combined);
            encode_integers(&values, &encoding, &mut payload)?;
            MatrixPlan::Combined { widths, encoding }
        }
        MatrixRoute::PerColumn(routes) => {
            let mut plans = Vec::with_capacity(routes.len());
            for (col, route) in m.columns.iter().zip(routes) {
                match route {
                    ColumnRoute::Numeric { fixed_width } => {
                        let values = col.iter().map(|v| parse_digits(v)).collect::<Result<Vec<_>>>()?;
                        let encoding = delta_encoding(&values).with_width(fixed_width);
                        encode_integers(&values, &encoding, &mut payload)?;
                        plans.push(ColumnPlan::Numeric(encoding));
                    }
                    ColumnRoute::Mixed => {
                        let (plan, strings) = encode_mixed_column(col, &mut payload)?;
                        string_values.extend(strings);
                        plans.push(plan);
                    }
                }
            }
            MatrixPlan::Columns(plans)
        }
        MatrixRoute::Dictionary => {
            let mut ids: HashMap<Vec<u8>, u32> = HashMap::new();
            let row_ids: Vec<u32> = (0..m.rows())
                .map(|r| {
                    let token = group.reconstruct_row(r);
                    let next = ids.len() as u32;
                    *ids.entry(token.clone()).or_insert_with(|| {
                        string_values.push(token);
                        next
                    })
                })
                .collect();
            encode_ids(&row_ids, &mut payload);
            MatrixPlan::Dictionary { entries: string_values.len() as u32 }
        }
    };
    Ok(EncodedGroup { plan, payload, string_values })
}

/// Integer content of a group stream, before numbers are turned back into text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodedMatrix {
    Empty { rows: usize },
    Combined { values: Vec<u64>, widths: Vec<u8> },
    Columns { rows: usize, columns: Vec<(ColumnPlan, Vec<u64>)> },
    Dictionary { ids: Vec<u32> },
}

impl DecodedMatrix {
    pub fn rows(&self) -> usize {
        match self {
            DecodedMatrix::Empty { rows } | DecodedMatrix::Columns { rows, .. } => *rows,
            DecodedMatrix::Combined { values, .. } => values.len(),
            DecodedMatrix::Dictionary { ids } => ids.len(),
        }
    }
}

pub fn decode_group_stream(payload: &[u8], plan: &MatrixPlan) -> Result<DecodedMatrix> {
    let mut reader = Reader::new(payload);
    let decoded = decode_matrix(&mut reader, plan)?;
    reader.finish("group stream")?;
    Ok(decoded)
}

/// Reads one row-count-prefixed matrix payload.
pub fn decode_matrix(reader: &mut Reader<'_>, plan: &MatrixPlan) -> Result<DecodedMatrix> {
    let rows = reader.varint()?;
    let rows = usize::try_from(rows).map_err(|_| Error::corrupt("row count out of range"))?;
    let check = |n: usize| {
        if n == rows {
            Ok(())
        } else {
            Err(Error::inconsistent(format!("group column has {n} values for {rows} rows")))
        }
    };
    let decoded = match plan {
        MatrixPlan::Empty => DecodedMatrix::Empty { rows },
        MatrixPlan::Combined { widths, encoding } => {
            let total: usize = widths.iter().map(|&w| w as usize).sum();
            if total > MAX_COMBINED_WIDTH || widths.contains(&0) {
                return Err(Error::corrupt("combined widths out of range"));
            }
            let values = decode_integers(reader, encoding)?;
            check(values.len())?;
            if values.iter().any(|&v| v >= 10u64.pow(total as u32)) {
                return Err(Error::inconsistent("combined value wider than its columns"));
            }
            DecodedMatrix::Combined { values, widths: widths.clone() }
        }
        MatrixPlan::Columns(plans) => {
            let mut columns = Vec::with_capacity(plans.len());
            for plan in plans {
                let encoding = match plan {
                    ColumnPlan::Numeric(e) | ColumnPlan::Mixed { encoding: e, .. } => e,
                };
                let values = decode_integers(reader, encoding)?;
                check(values.len())?;
                if let ColumnPlan::Mixed { strings, .. } = plan {
                    if values.iter().any(|&v| v % 2 == 1 && (v / 2 == 0 || v / 2 > *strings as u64)) {
                        return Err(Error::inconsistent("string id outside its column dictionary"));
                    }
                }
                columns.push((*plan, values));
            }
            DecodedMatrix::Columns { rows, columns }
        }
        MatrixPlan::Dictionary { entries } => {
            let ids = decode_ids(reader, *entries as usize)?;
            check(ids.len())?;
            DecodedMatrix::Dictionary { ids }
        }
    };
    Ok(decoded)
}

/// The refined patterns of one skeleton family and how its occurrences
/// choose among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPlan {
    /// Present when the family has more than one pattern.
    pub selector: Option<NumericColumnEncoding>,
    pub patterns: Vec<MatrixPlan>,
}

impl FamilyPlan {
    pub fn string_values(&self) -> usize {
        self.patterns.iter().map(MatrixPlan::string_values).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedFamily {
    pub plan: FamilyPlan,
    pub payload: Vec<u8>,
    pub string_values: Vec<Vec<u8>>,
}

/// Family stream: `elastic(occurrences) ‖ selector column? ‖ pattern payloads`.
/// `selectors[i]` is the pattern index of the family's `i`-th occurrence.
pub fn encode_family(patterns: &[SkeletonGroup], selectors: &[u64], cfg: &Config) -> Result<EncodedFamily> {
    let rows: usize = patterns.iter().map(SkeletonGroup::rows).sum();
    if patterns.is_empty() || rows != selectors.len() {
        return Err(Error::inconsistent("family selectors disagree with its patterns"));
    }
    let mut payload = Vec::new();
    codec::elastic_encode(rows as u64, &mut payload);
    let selector = if patterns.len() > 1 {
        let encoding = delta_encoding(selectors);
        encode_integers(selectors, &encoding, &mut payload)?;
        Some(encoding)
    } else {
        None
    };
    let mut plans = Vec::with_capacity(patterns.len());
    let mut string_values = Vec::new();
    for p in patterns {
        let g = encode_group(p, cfg)?;
        payload.extend_from_slice(&g.payload);
        string_values.extend(g.string_values);
        plans.push(g.plan);
    }
    Ok(EncodedFamily { plan: FamilyPlan { selector, patterns: plans }, payload, string_values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedFamily {
    /// Pattern index per occurrence; `None` for single-pattern families.
    pub selectors: Option<Vec<u64>>,
    pub patterns: Vec<DecodedMatrix>,
}

impl DecodedFamily {
    pub fn occurrences(&self) -> usize {
        self.patterns.iter().map(DecodedMatrix::rows).sum()
    }
}

pub fn decode_family_stream(payload: &[u8], plan: &FamilyPlan) -> Result<DecodedFamily> {
    let mut reader = Reader::new(payload);
    let rows = reader.varint()?;
    if plan.patterns.is_empty() || plan.selector.is_some() != (plan.patterns.len() > 1) {
        return Err(Error::corrupt("family plan without a usable pattern list"));
    }
    let selectors = match &plan.selector {
        Some(enc) => {
            let s = decode_integers(&mut reader, enc)?;
            if s.len() as u64 != rows {
                return Err(Error::inconsistent("selector count disagrees with occurrences"));
            }
            Some(s)
        }
        None => None,
    };
    let patterns = plan.patterns.iter().map(|p| decode_matrix(&mut reader, p)).collect::<Result<Vec<_>>>()?;
    reader.finish("family stream")?;
    let family = DecodedFamily { selectors, patterns };
    if family.occurrences() as u64 != rows {
        return Err(Error::inconsistent("pattern rows disagree with occurrences"));
    }
    if let Some(s) = &family.selectors {
        let mut counts = vec![0usize; family.patterns.len()];
        for &v in s {
            *counts.get_mut(v as usize).ok_or_else(|| Error::inconsistent("selector out of range"))? += 1;
        }
        if counts.iter().zip(&family.patterns).any(|(&c, p)| c != p.rows()) {
            return Err(Error::inconsistent("selectors disagree with pattern rows"));
        }
    }
    Ok(family)
}

/// Tokens laid end to end with their end offsets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenList {
    pub bytes: Vec<u8>,
    pub ends: Vec<usize>,
}

impl TokenList {
    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u8] {
        let start = if i == 0 { 0 } else { self.ends[i - 1] };
        &self.bytes[start..self.ends[i]]
    }

    fn close(&mut self) {
        self.ends.push(self.bytes.len());
    }
}

/// Skeleton text as stored in the token dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternSegment {
    Literal(Vec<u8>),
    Open,
}

fn write_cell(plan: &ColumnPlan, value: u64, strings: &[&[u8]], out: &mut Vec<u8>) -> Result<()> {
    match plan {
        ColumnPlan::Numeric(enc) => {
            let width = enc.fixed_width.map_or(0, usize::from);
            let before = out.len();
            write_digits(value, width, out);
            if width != 0 && out.len() - before != width {
                return Err(Error::inconsistent("number wider than its fixed width"));
            }
        }
        ColumnPlan::Mixed { .. } => {
            if value.is_multiple_of(2) {
                write_digits(value / 2, 0, out);
            } else {
                out.extend_from_slice(strings[(value / 2 - 1) as usize]);
            }
        }
    }
    Ok(())
}

/// Rebuilds every token of a group. `string_values` is the group's slice of
/// the string-value dictionary, columns in order.
pub fn render_group(pattern: &[PatternSegment], decoded: &DecodedMatrix, string_values: &[&[u8]]) -> Result<TokenList> {
    let open = pattern.iter().filter(|s| matches!(s, PatternSegment::Open)).count();
    let mut out = TokenList::default();
    let rows = decoded.rows();
    let mismatch = || Error::inconsistent("group pattern does not match its stream");
    match decoded {
        DecodedMatrix::Empty { .. } => {
            if open != 0 {
                return Err(mismatch());
            }
            for _ in 0..rows {
                for seg in pattern {
                    if let PatternSegment::Literal(l) = seg {
                        out.bytes.extend_from_slice(l);
                    }
                }
                out.close();
            }
        }
        DecodedMatrix::Combined { values, widths } => {
            if open != widths.len() {
                return Err(mismatch());
            }
            let total: usize = widths.iter().map(|&w| w as usize).sum();
            let mut digits = Vec::with_capacity(total);
            for &v in values {
                digits.clear();
                write_digits(v, total, &mut digits);
                let mut cells = widths.iter().scan(0usize, |at, &w| {
                    let cell = &digits[*at..*at + w as usize];
                    *at += w as usize;
                    Some(cell)
                });
                for seg in pattern {
                    match seg {
                        PatternSegment::Literal(l) => out.bytes.extend_from_slice(l),
                        PatternSegment::Open => out.bytes.extend_from_slice(cells.next().unwrap()),
                    }
                }
                out.close();
            }
        }
        DecodedMatrix::Columns { columns, .. } => {
            if open != columns.len() {
                return Err(mismatch());
            }
            let mut per_column = Vec::with_capacity(columns.len());
            let mut at = 0;
            for (plan, _) in columns {
                let n = match plan {
                    ColumnPlan::Mixed { strings, .. } => *strings as usize,
                    ColumnPlan::Numeric(_) => 0,
                };
                let slice = string_values.get(at..at + n).ok_or_else(mismatch)?;
                per_column.push(slice);
                at += n;
            }
            if at != string_values.len() {
                return Err(mismatch());
            }
            for r in 0..rows {
                let mut c = 0;
                for seg in pattern {
                    match seg {
                        PatternSegment::Literal(l) => out.bytes.extend_from_slice(l),
                        PatternSegment::Open => {
                            let (plan, values) = &columns[c];
                            write_cell(plan, values[r], per_column[c], &mut out.bytes)?;
                            c += 1;
                        }
                    }
                }
                out.close();
            }
        }
        DecodedMatrix::Dictionary { ids } => {
            for &id in ids {
                out.bytes.extend_from_slice(string_values.get(id as usize).ok_or_else(mismatch)?);
                out.close();
            }
        }
    }
    Ok(out)
}

fn escape_into(bytes: &[u8], out: &mut Vec<u8>) {
    for &b in bytes {
        if matches!(b, b'\\' | b'<' | b'|') {
            out.push(b'\\');
        }
        out.push(b);
    }
}

pub fn group_tag(k: usize) -> String {
    format!("|g{k}|")
}

/// Token-dictionary entry for group `k`: its tag followed by the escaped
/// pattern with `<>` for every open slot.
pub fn render_skeleton_entry(k: usize, group: &SkeletonGroup) -> Vec<u8> {
    let mut out = group_tag(k).into_bytes();
    for part in &group.skeleton.parts {
        match part {
            SkeletonPart::Delim(d) | SkeletonPart::Slot(Some(d)) => escape_into(d, &mut out),
            SkeletonPart::Slot(None) => out.extend_from_slice(b"<>"),
        }
    }
    out
}

fn parse_group_tag(entry: &[u8]) -> Result<(usize, usize)> {
    let bad = || Error::corrupt("malformed group tag");
    let rest = entry.strip_prefix(b"|g").ok_or_else(bad)?;
    let end = rest.iter().position(|&b| b == b'|').ok_or_else(bad)?;
    let digits = &rest[..end];
    if digits.is_empty() || digits.len() > 9 || !text::is_ascii_digits(digits) {
        return Err(bad());
    }
    let k = digits.iter().fold(0usize, |acc, &d| acc * 10 + (d - b'0') as usize);
    Ok((k, 2 + end + 1))
}

pub fn parse_skeleton_entry(entry: &[u8]) -> Result<(usize, Vec<PatternSegment>)> {
    let (k, mut i) = parse_group_tag(entry)?;
    let mut segments = Vec::new();
    let mut literal = Vec::new();
    while i < entry.len() {
        match entry[i] {
            b'\\' => {
                let b = *entry.get(i + 1).ok_or_else(|| Error::corrupt("dangling escape"))?;
                literal.push(b);
                i += 2;
            }
            b'<' if entry.get(i + 1) == Some(&b'>') => {
                if !literal.is_empty() {
                    segments.push(PatternSegment::Literal(std::mem::take(&mut literal)));
                }
                segments.push(PatternSegment::Open);
                i += 2;
            }
            b'<' | b'|' => return Err(Error::corrupt("unescaped marker in skeleton entry")),
            b => {
                literal.push(b);
                i += 1;
            }
        }
    }
    if !literal.is_empty() {
        segments.push(PatternSegment::Literal(literal));
    }
    Ok((k, segments))
}

/// What a dynamic token is replaced by in its line's template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotTag {
    Group(usize),
    String,
    Number(usize),
}

/// One item of a line template.
#[derive(Debug, Clone, Copy)]
pub enum TemplatePiece<'a> {
    Static(&'a [u8]),
    Slot(&'a SlotTag),
}

/// Renders `runs[0] item runs[1] item ... runs[n]`.
pub fn render_template<'a>(runs: &[Vec<u8>], items: impl IntoIterator<Item = TemplatePiece<'a>>, out: &mut Vec<u8>) {
    out.extend_from_slice(&runs[0]);
    for (item, run) in items.into_iter().zip(&runs[1..]) {
        match item {
            TemplatePiece::Static(t) => escape_into(t, out),
            TemplatePiece::Slot(SlotTag::Group(k)) => out.extend_from_slice(group_tag(*k).as_bytes()),
            TemplatePiece::Slot(SlotTag::String) => out.extend_from_slice(b"<*>"),
            TemplatePiece::Slot(SlotTag::Number(len)) => {
                out.push(b'<');
                out.extend_from_slice(length_tag(*len).as_bytes());
                out.push(b'>');
            }
        }
        out.extend_from_slice(run);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateSegment {
    Literal(Vec<u8>),
    Slot(SlotTag),
}

pub fn parse_template(template: &[u8]) -> Result<Vec<TemplateSegment>> {
    let mut segments = Vec::new();
    let mut literal = Vec::new();
    let mut i = 0;
    let flush = |literal: &mut Vec<u8>, segments: &mut Vec<TemplateSegment>| {
        if !literal.is_empty() {
            segments.push(TemplateSegment::Literal(std::mem::take(literal)));
        }
    };
    while i < template.len() {
        match template[i] {
            b'\\' => {
                let b = *template.get(i + 1).ok_or_else(|| Error::corrupt("dangling escape"))?;
                literal.push(b);
                i += 2;
            }
            b'<' => {
                let end = template[i..]
                    .iter()
                    .position(|&b| b == b'>')
                    .ok_or_else(|| Error::corrupt("unterminated tag in template"))?;
                let body = &template[i + 1..i + end];
                let tag = if body == b"*" {
                    SlotTag::String
                } else {
                    SlotTag::Number(parse_length_tag(body).ok_or_else(|| Error::corrupt("unknown template tag"))?)
                };
                flush(&mut literal, &mut segments);
                segments.push(TemplateSegment::Slot(tag));
                i += end + 1;
            }
            b'|' => {
                let (k, used) = parse_group_tag(&template[i..])?;
                flush(&mut literal, &mut segments);
                segments.push(TemplateSegment::Slot(SlotTag::Group(k)));
                i += used;
            }
            b => {
                literal.push(b);
                i += 1;
            }
        }
    }
    flush(&mut literal, &mut segments);
    Ok(segments)
}
