//! Token analyzer: whitespace tokenization and dynamic-token classification.

use regex::bytes::Regex;

use crate::config::TokenStrategy;
use crate::model::{ClassifiedLine, LogChunk, Placeholder, TemplateItem, TokenClass};
use crate::text;

pub const NUMERIC_RULE: &str = r"^\S*\d\S*$";
pub const PATH_RULE: &str = r"(/[^/]*)+|([a-zA-Z]:\\(?:[^\\]*\\))";
pub const CLASSPATH_RULE: &str = r"[a-zA-Z_$][a-zA-Z\d_$]*(?:\.[a-zA-Z_$][a-zA-Z\d_$]*)+";

/// The regular expressions that decide whether a token is dynamic.
///
/// The numeric rule is anchored by its own pattern; the path and classpath
/// rules are searched anywhere in the token.
#[derive(Debug, Clone)]
pub struct DynamicRuleSet {
    numeric: Regex,
    path: Option<Regex>,
    classpath: Option<Regex>,
}

impl DynamicRuleSet {
    pub fn new(strategy: TokenStrategy) -> Self {
        let compile = |p: &str| Regex::new(p).expect("static regex");
        DynamicRuleSet {
            numeric: compile(NUMERIC_RULE),
            path: strategy.uses_path().then(|| compile(PATH_RULE)),
            classpath: strategy.uses_classpath().then(|| compile(CLASSPATH_RULE)),
        }
    }

    pub fn path_enabled(&self) -> bool {
        self.path.is_some()
    }

    pub fn classpath_enabled(&self) -> bool {
        self.classpath.is_some()
    }

    pub fn matches(&self, token: &[u8]) -> bool {
        let numeric =
            if token.is_ascii() { token.iter().any(u8::is_ascii_digit) } else { self.numeric.is_match(token) };
        if numeric {
            return true;
        }
        if let Some(path) = &self.path {
            if token.iter().any(|&b| b == b'/' || b == b'\\') && path.is_match(token) {
                return true;
            }
        }
        if let Some(classpath) = &self.classpath {
            if token.contains(&b'.') && classpath.is_match(token) {
                return true;
            }
        }
        false
    }
}

/// Splits a line on ASCII whitespace.
///
/// Returns the tokens and `tokens.len() + 1` separator runs (leading,
/// between each pair, trailing), any of which may be empty.
pub fn tokenize(line: &[u8]) -> (Vec<&[u8]>, Vec<&[u8]>) {
    let mut tokens = Vec::new();
    let mut runs = Vec::new();
    let mut i = 0;
    let mut run_start = 0;
    while i < line.len() {
        if line[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        runs.push(&line[run_start..i]);
        let start = i;
        while i < line.len() && !line[i].is_ascii_whitespace() {
            i += 1;
        }
        tokens.push(&line[start..i]);
        run_start = i;
    }
    runs.push(&line[run_start..]);
    (tokens, runs)
}

pub fn classify(token: &[u8], rules: &DynamicRuleSet) -> TokenClass {
    if token.is_empty() || !rules.matches(token) {
        return TokenClass::Static;
    }
    match text::composition(token) {
        (false, _) => TokenClass::Static,
        (true, true) => TokenClass::StructuredDynamic,
        (true, false) if text::is_ascii_digits(token) => TokenClass::UnstructuredNumeric,
        (true, false) => TokenClass::UnstructuredString,
    }
}

pub fn analyze_line(line: &[u8], rules: &DynamicRuleSet) -> ClassifiedLine {
    let (tokens, runs) = tokenize(line);
    let mut template = Vec::with_capacity(tokens.len());
    let mut dynamic_tokens = Vec::new();
    for token in tokens {
        let class = classify(token, rules);
        match class {
            TokenClass::Static => template.push(TemplateItem::Static(token.to_vec())),
            TokenClass::StructuredDynamic => {
                template.push(TemplateItem::Slot(Placeholder::Structured));
                dynamic_tokens.push((class, token.to_vec()));
            }
            TokenClass::UnstructuredNumeric | TokenClass::UnstructuredString => {
                template.push(TemplateItem::Slot(Placeholder::Unstructured));
                dynamic_tokens.push((class, token.to_vec()));
            }
        }
    }
    ClassifiedLine { template, dynamic_tokens, whitespace_runs: runs.into_iter().map(<[u8]>::to_vec).collect() }
}

pub fn analyze_chunk(chunk: &LogChunk, rules: &DynamicRuleSet) -> Vec<ClassifiedLine> {
    chunk.lines.iter().map(|l| analyze_line(l, rules)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn strs(v: &[&[u8]]) -> Vec<String> {
        v.iter().map(|b| String::from_utf8_lossy(b).into_owned()).collect()
    }

    #[test]
    fn tokenize_examples() {
        let (t, r) = tokenize(b"a  b");
        assert_eq!(strs(&t), ["a", "b"]);
        assert_eq!(strs(&r), ["", "  ", ""]);

        let (t, r) = tokenize(b"");
        assert!(t.is_empty());
        assert_eq!(strs(&r), [""]);

        let (t, r) = tokenize(b" x ");
        assert_eq!(strs(&t), ["x"]);
        assert_eq!(strs(&r), [" ", " "]);

        let (t, r) = tokenize(b" \t ");
        assert!(t.is_empty());
        assert_eq!(strs(&r), [" \t "]);
    }

    #[test]
    fn classify_examples() {
        let rules = DynamicRuleSet::new(TokenStrategy::NumPath);
        assert_eq!(classify(b"2015-07-09", &rules), TokenClass::StructuredDynamic);
        assert_eq!(classify(b"ftpd[4305]", &rules), TokenClass::StructuredDynamic);
        assert_eq!(classify(b"blk", &rules), TokenClass::Static);
        assert_eq!(classify(b"4305", &rules), TokenClass::UnstructuredNumeric);
        assert_eq!(classify(b"/var/log", &rules), TokenClass::StructuredDynamic);
        assert_eq!(classify(b"--", &rules), TokenClass::Static);
        assert_eq!(classify(b"/", &rules), TokenClass::Static);
        assert_eq!(classify(b"blk42x", &rules), TokenClass::UnstructuredString);
        assert_eq!(classify(br"C:\Windows\x", &rules), TokenClass::StructuredDynamic);
    }

    #[test]
    fn strategy_rules() {
        let num = DynamicRuleSet::new(TokenStrategy::Num);
        assert!(!num.path_enabled() && !num.classpath_enabled());
        assert_eq!(classify(b"/var/log", &num), TokenClass::Static);

        let cp = DynamicRuleSet::new(TokenStrategy::NumClasspath);
        assert!(!cp.path_enabled() && cp.classpath_enabled());
        assert_eq!(classify(b"org.apache.Foo", &cp), TokenClass::StructuredDynamic);

        let all = DynamicRuleSet::new(TokenStrategy::All);
        assert!(all.path_enabled() && all.classpath_enabled());
    }

    #[test]
    fn analyze_path_line() {
        let rules = DynamicRuleSet::new(TokenStrategy::NumPath);
        let cl = analyze_line(b"open /var/log/a.log 35", &rules);
        assert_eq!(
            cl.template,
            vec![
                TemplateItem::Static(b"open".to_vec()),
                TemplateItem::Slot(Placeholder::Structured),
                TemplateItem::Slot(Placeholder::Unstructured),
            ]
        );
        assert_eq!(
            cl.dynamic_tokens,
            vec![
                (TokenClass::StructuredDynamic, b"/var/log/a.log".to_vec()),
                (TokenClass::UnstructuredNumeric, b"35".to_vec()),
            ]
        );
    }

    #[test]
    fn analyze_static_and_date_lines() {
        let rules = DynamicRuleSet::new(TokenStrategy::NumPath);
        let cl = analyze_line(b"all static words", &rules);
        assert!(cl.dynamic_tokens.is_empty());
        assert_eq!(cl.template.len(), 3);

        let cl = analyze_line(b"2015-07-09 done", &rules);
        assert_eq!(
            cl.template,
            vec![TemplateItem::Slot(Placeholder::Structured), TemplateItem::Static(b"done".to_vec())]
        );
    }

    proptest! {
        #[test]
        fn tokenize_interleaves_back(line in proptest::collection::vec(
            prop_oneof![Just(b' '), Just(b'\t'), Just(b'\r'), any::<u8>()], 0..80)
        ) {
            let line: Vec<u8> = line.into_iter().filter(|&b| b != b'\n').collect();
            let (tokens, runs) = tokenize(&line);
            prop_assert_eq!(runs.len(), tokens.len() + 1);
            let mut rebuilt = runs[0].to_vec();
            for (t, r) in tokens.iter().zip(&runs[1..]) {
                prop_assert!(!t.is_empty() && !t.iter().any(u8::is_ascii_whitespace));
                rebuilt.extend_from_slice(t);
                rebuilt.extend_from_slice(r);
            }
            prop_assert_eq!(rebuilt, line);
        }

        #[test]
        fn analysis_is_lossless(line in "[ a-z0-9/:.,\\-\\[\\]_=é\t]{0,60}") {
            let rules = DynamicRuleSet::new(TokenStrategy::All);
            let cl = analyze_line(line.as_bytes(), &rules);
            prop_assert_eq!(cl.placeholder_count(), cl.dynamic_tokens.len());
            prop_assert_eq!(cl.reconstruct(), line.as_bytes().to_vec());
        }

        #[test]
        fn noise_lines_are_lossless(line in proptest::collection::vec(any::<u8>(), 0..120)) {
            let line: Vec<u8> = line.into_iter().filter(|&b| b != b'\n').collect();
            let rules = DynamicRuleSet::new(TokenStrategy::NumPath);
            let cl = analyze_line(&line, &rules);
            prop_assert_eq!(cl.placeholder_count(), cl.dynamic_tokens.len());
            prop_assert_eq!(cl.reconstruct(), line);
        }

        #[test]
        fn more_rules_never_fewer_dynamics(line in "[ a-zA-Z0-9/:.\\\\_$]{0,60}") {
            let count = |s| analyze_line(line.as_bytes(), &DynamicRuleSet::new(s)).dynamic_tokens.len();
            let num = count(TokenStrategy::Num);
            prop_assert!(count(TokenStrategy::NumPath) >= num);
            prop_assert!(count(TokenStrategy::NumClasspath) >= num);
            prop_assert!(count(TokenStrategy::All) >= count(TokenStrategy::NumPath));
            prop_assert!(count(TokenStrategy::All) >= count(TokenStrategy::NumClasspath));
        }
    }
}
