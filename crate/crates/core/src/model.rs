//! Domain types shared by every stage of the pipeline.

use crate::config::Config;

/// How a line ended in the source file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminator {
    Lf,
    /// Only possible for the final line of the input.
    None,
}

/// A window of raw lines compressed independently of every other chunk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogChunk {
    pub index: usize,
    pub lines: Vec<Vec<u8>>,
    pub terminators: Vec<Terminator>,
}

impl LogChunk {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn final_terminator(&self) -> Terminator {
        self.terminators.last().copied().unwrap_or(Terminator::Lf)
    }

    /// Appends the chunk's original bytes to `out`.
    pub fn write_to(&self, out: &mut Vec<u8>) {
        for (line, term) in self.lines.iter().zip(&self.terminators) {
            out.extend_from_slice(line);
            if *term == Terminator::Lf {
                out.push(b'\n');
            }
        }
    }
}

/// Splits raw input on LF into chunks of `cfg.chunk_lines` lines.
///
/// CR bytes stay inside the line body. A final line without LF keeps the
/// terminator code [`Terminator::None`].
pub fn chunk_input(bytes: &[u8], cfg: &Config) -> Vec<LogChunk> {
    let per_chunk = cfg.chunk_lines.max(1);
    let mut chunks = Vec::new();
    let mut current = LogChunk { index: 0, lines: Vec::new(), terminators: Vec::new() };
    let mut rest = bytes;
    while !rest.is_empty() {
        let (line, term, next) = match memchr_lf(rest) {
            Some(pos) => (&rest[..pos], Terminator::Lf, &rest[pos + 1..]),
            None => (rest, Terminator::None, &rest[rest.len()..]),
        };
        current.lines.push(line.to_vec());
        current.terminators.push(term);
        rest = next;
        if current.lines.len() == per_chunk {
            let index = current.index + 1;
            chunks
                .push(std::mem::replace(&mut current, LogChunk { index, lines: Vec::new(), terminators: Vec::new() }));
        }
    }
    if !current.lines.is_empty() {
        chunks.push(current);
    }
    chunks
}

fn memchr_lf(bytes: &[u8]) -> Option<usize> {
    bytes.iter().position(|&b| b == b'\n')
}

/// Re-concatenates chunks; the inverse of [`chunk_input`].
pub fn join_chunks(chunks: &[LogChunk]) -> Vec<u8> {
    let mut out = Vec::new();
    for chunk in chunks {
        chunk.write_to(&mut out);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenClass {
    Static,
    StructuredDynamic,
    UnstructuredNumeric,
    UnstructuredString,
}

impl TokenClass {
    pub fn is_dynamic(self) -> bool {
        self != TokenClass::Static
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placeholder {
    /// `<->`
    Structured,
    /// `<*>`; numeric tokens get their length tag at encoding time.
    Unstructured,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TemplateItem {
    Static(Vec<u8>),
    Slot(Placeholder),
}

/// A tokenized line: static tokens and placeholders, the extracted dynamic
/// tokens, and the exact whitespace between tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedLine {
    pub template: Vec<TemplateItem>,
    pub dynamic_tokens: Vec<(TokenClass, Vec<u8>)>,
    /// One more entry than `template`: leading, inter-token, trailing.
    pub whitespace_runs: Vec<Vec<u8>>,
}

impl ClassifiedLine {
    pub fn placeholder_count(&self) -> usize {
        self.template.iter().filter(|i| matches!(i, TemplateItem::Slot(_))).count()
    }

    /// Substitutes the dynamic tokens back into the template.
    pub fn reconstruct(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let mut dynamics = self.dynamic_tokens.iter();
        for (i, item) in self.template.iter().enumerate() {
            out.extend_from_slice(&self.whitespace_runs[i]);
            match item {
                TemplateItem::Static(bytes) => out.extend_from_slice(bytes),
                TemplateItem::Slot(_) => {
                    if let Some((_, bytes)) = dynamics.next() {
                        out.extend_from_slice(bytes);
                    }
                }
            }
        }
        if let Some(last) = self.whitespace_runs.last() {
            out.extend_from_slice(last);
        }
        out
    }
}

/// Position of a token inside a chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TokenCoord {
    pub line: u32,
    pub token: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkeletonPart {
    /// A maximal non-alphanumeric run.
    Delim(Vec<u8>),
    /// An alphanumeric slot, either open (`None`) or refined to a constant.
    Slot(Option<Vec<u8>>),
}

/// The delimiter frame of a structured token. Slots may be refined into
/// embedded constants by pattern mining.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DelimiterSkeleton {
    pub parts: Vec<SkeletonPart>,
}

impl DelimiterSkeleton {
    pub fn slot_count(&self) -> usize {
        self.parts.iter().filter(|p| matches!(p, SkeletonPart::Slot(_))).count()
    }

    pub fn open_slot_count(&self) -> usize {
        self.parts.iter().filter(|p| matches!(p, SkeletonPart::Slot(None))).count()
    }

    /// Whether the token starts / ends with a slot (as opposed to a delimiter run).
    pub fn boundary_flags(&self) -> (bool, bool) {
        let is_slot = |p: Option<&SkeletonPart>| matches!(p, Some(SkeletonPart::Slot(_)));
        (is_slot(self.parts.first()), is_slot(self.parts.last()))
    }

    /// Index into `parts` of the `n`-th open slot.
    pub fn open_slot_part(&self, n: usize) -> Option<usize> {
        self.parts.iter().enumerate().filter(|(_, p)| matches!(p, SkeletonPart::Slot(None))).nth(n).map(|(i, _)| i)
    }

    /// Ordinal among all slots (open or refined) of the `n`-th open slot.
    pub fn open_slot_ordinal(&self, n: usize) -> Option<usize> {
        let mut ordinal = 0;
        let mut open = 0;
        for p in &self.parts {
            if let SkeletonPart::Slot(v) = p {
                if v.is_none() {
                    if open == n {
                        return Some(ordinal);
                    }
                    open += 1;
                }
                ordinal += 1;
            }
        }
        None
    }

    /// Fills the open slot `n` with a constant.
    pub fn embed(&mut self, n: usize, value: Vec<u8>) {
        let idx = self.open_slot_part(n).expect("open slot in range");
        self.parts[idx] = SkeletonPart::Slot(Some(value));
    }

    /// Rebuilds a token from one matrix row.
    pub fn render<'a, I>(&self, cells: I, out: &mut Vec<u8>)
    where
        I: IntoIterator<Item = &'a [u8]>,
    {
        let mut cells = cells.into_iter();
        for part in &self.parts {
            match part {
                SkeletonPart::Delim(d) => out.extend_from_slice(d),
                SkeletonPart::Slot(Some(c)) => out.extend_from_slice(c),
                SkeletonPart::Slot(None) => {
                    if let Some(cell) = cells.next() {
                        out.extend_from_slice(cell);
                    }
                }
            }
        }
    }

    /// Human-readable form, e.g. `2015-<>-<>`.
    pub fn pattern_text(&self) -> String {
        let mut s = String::new();
        for part in &self.parts {
            match part {
                SkeletonPart::Delim(d) | SkeletonPart::Slot(Some(d)) => s.push_str(&String::from_utf8_lossy(d)),
                SkeletonPart::Slot(None) => s.push_str("<>"),
            }
        }
        s
    }
}

/// Column-major sub-token storage for one skeleton group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubTokenMatrix {
    pub columns: Vec<Vec<Vec<u8>>>,
    pub row_ids: Vec<TokenCoord>,
}

impl SubTokenMatrix {
    pub fn rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = &[u8]> + '_ {
        self.columns.iter().map(move |c| c[r].as_slice())
    }

    /// Keeps only the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> SubTokenMatrix {
        SubTokenMatrix {
            columns: self.columns.iter().map(|c| rows.iter().map(|&r| c[r].clone()).collect()).collect(),
            row_ids: rows.iter().map(|&r| self.row_ids[r]).collect(),
        }
    }

    pub fn is_well_formed(&self) -> bool {
        self.columns.iter().all(|c| c.len() == self.rows())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonGroup {
    pub skeleton: DelimiterSkeleton,
    pub matrix: SubTokenMatrix,
}

impl SkeletonGroup {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn reconstruct_row(&self, r: usize) -> Vec<u8> {
        let mut out = Vec::new();
        self.skeleton.render(self.matrix.row(r), &mut out);
        out
    }

    pub fn first_coord(&self) -> Option<TokenCoord> {
        self.matrix.row_ids.first().copied()
    }

    pub fn is_consistent(&self) -> bool {
        self.matrix.is_well_formed() && self.skeleton.open_slot_count() == self.matrix.width()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamKind {
    TokenDictionary,
    TemplateDictionary,
    StringValueDictionary,
    IdStream,
    NumericStream,
    SkeletonCatalog,
    Metadata,
}

impl StreamKind {
    pub(crate) const ALL: [StreamKind; 7] = [
        StreamKind::TokenDictionary,
        StreamKind::TemplateDictionary,
        StreamKind::StringValueDictionary,
        StreamKind::IdStream,
        StreamKind::NumericStream,
        StreamKind::SkeletonCatalog,
        StreamKind::Metadata,
    ];

    pub(crate) fn code(self) -> u8 {
        Self::ALL.iter().position(|k| *k == self).unwrap() as u8
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }
}

/// A named payload destined for the archive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedStream {
    pub name: String,
    pub kind: StreamKind,
    pub payload: Vec<u8>,
}
