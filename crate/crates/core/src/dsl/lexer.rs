use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    /// Unlexable input; the parser rejects it with the expected set at that point.
    Bad(String),
    Eof,
}

impl Tok {
    pub(super) fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Bad(s) => s.clone(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(super) struct Spanned {
    pub tok: Tok,
    pub offset: usize,
}

pub(super) fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub(super) fn error_at(text: &str, offset: usize, found: String, expected: Vec<String>) -> ParseError {
    let (line, column) = position(text, offset);
    ParseError { line, column, offset, found, expected }
}

pub(super) fn tokenize(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                chars.next();
            }
            match text[i..end].parse::<u64>() {
                Ok(value) => out.push(Spanned { tok: Tok::Int(value), offset: i }),
                Err(_) => {
                    let found = format!("integer literal '{}' out of range", &text[i..end]);
                    out.push(Spanned { tok: Tok::Bad(found), offset: i });
                    break;
                }
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = j + 1;
                chars.next();
            }
            out.push(Spanned { tok: Tok::Ident(text[i..end].to_string()), offset: i });
        } else if "/()[],+*^".contains(c) {
            chars.next();
            out.push(Spanned { tok: Tok::Sym(c), offset: i });
        } else {
            out.push(Spanned { tok: Tok::Bad(format!("unexpected character {c:?}")), offset: i });
            break;
        }
    }
    out.push(Spanned { tok: Tok::Eof, offset: text.len() });
    out
}
