//! Byte-level character classes shared by the analyzer and the skeleton scanner.
//!
//! Alphanumeric means Unicode `\p{L}` or `\p{N}`. Bytes that are not part of a
//! valid UTF-8 sequence are never alphanumeric, so they land in delimiter runs.

use std::sync::OnceLock;

use regex::bytes::Regex;

fn alnum_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[\p{L}\p{N}]+").expect("static regex"))
}

/// A maximal run of either alphanumeric or non-alphanumeric bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run<'a> {
    pub alnum: bool,
    pub bytes: &'a [u8],
}

/// Splits `token` into alternating alphanumeric / delimiter runs.
pub fn runs(token: &[u8]) -> Vec<Run<'_>> {
    let mut out = Vec::new();
    if token.is_ascii() {
        let mut start = 0;
        while start < token.len() {
            let alnum = token[start].is_ascii_alphanumeric();
            let mut end = start + 1;
            while end < token.len() && token[end].is_ascii_alphanumeric() == alnum {
                end += 1;
            }
            out.push(Run { alnum, bytes: &token[start..end] });
            start = end;
        }
        return out;
    }
    let mut last = 0;
    for m in alnum_regex().find_iter(token) {
        if m.start() > last {
            out.push(Run { alnum: false, bytes: &token[last..m.start()] });
        }
        out.push(Run { alnum: true, bytes: m.as_bytes() });
        last = m.end();
    }
    if last < token.len() {
        out.push(Run { alnum: false, bytes: &token[last..] });
    }
    out
}

/// Returns `(has_alnum, has_non_alnum)`.
pub fn composition(token: &[u8]) -> (bool, bool) {
    if token.is_ascii() {
        let alnum = token.iter().filter(|b| b.is_ascii_alphanumeric()).count();
        return (alnum > 0, alnum < token.len());
    }
    let mut covered = 0;
    for m in alnum_regex().find_iter(token) {
        covered += m.len();
    }
    (covered > 0, covered < token.len())
}

pub fn is_ascii_digits(bytes: &[u8]) -> bool {
    !bytes.is_empty() && bytes.iter().all(u8::is_ascii_digit)
}

/// A digit string whose integer rendering differs from itself.
pub fn has_leading_zero(digits: &[u8]) -> bool {
    digits.len() > 1 && digits[0] == b'0'
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(token: &[u8]) -> Vec<(bool, String)> {
        runs(token).into_iter().map(|r| (r.alnum, String::from_utf8_lossy(r.bytes).into_owned())).collect()
    }

    #[test]
    fn ascii_runs_alternate() {
        assert_eq!(
            render(b"ftpd[4305]"),
            vec![(true, "ftpd".into()), (false, "[".into()), (true, "4305".into()), (false, "]".into())]
        );
        assert!(runs(b"").is_empty());
    }

    #[test]
    fn unicode_letters_are_alphanumeric() {
        let token = "größe=10".as_bytes();
        assert_eq!(render(token), vec![(true, "größe".into()), (false, "=".into()), (true, "10".into())]);
        assert_eq!(composition(token), (true, true));
    }

    #[test]
    fn invalid_utf8_is_delimiter() {
        let token = [b'a', 0xff, 0xfe, b'7'];
        let r = runs(&token);
        assert_eq!(r.len(), 3);
        assert!(!r[1].alnum);
        assert_eq!(r[1].bytes, &[0xff, 0xfe]);
    }

    #[test]
    fn leading_zero() {
        assert!(has_leading_zero(b"07"));
        assert!(!has_leading_zero(b"0"));
        assert!(!has_leading_zero(b"70"));
    }
}
