//! Tokenizer for the `.quiv` presentation language.

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Star,
    Plus,
    Minus,
    Caret,
    Slash,
    Arrow,
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Int(s) => format!("integer `{s}`"),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let mut advance = |n: usize, line: &mut usize, col: &mut usize| {
            for k in 0..n {
                if chars[i + k] == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
            }
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                advance(1, &mut line, &mut col);
                i += 1;
            }
            '#' => {
                // line comment
                let mut n = 0;
                while i + n < chars.len() && chars[i + n] != '\n' {
                    n += 1;
                }
                advance(n, &mut line, &mut col);
                i += n;
            }
            '{' | '}' | '(' | ')' | ':' | ';' | ',' | '*' | '+' | '^' | '/' => {
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    ':' => TokenKind::Colon,
                    ';' => TokenKind::Semi,
                    ',' => TokenKind::Comma,
                    '*' => TokenKind::Star,
                    '+' => TokenKind::Plus,
                    '^' => TokenKind::Caret,
                    _ => TokenKind::Slash,
                };
                tokens.push(Token {
                    kind,
                    line: tline,
                    col: tcol,
                });
                advance(1, &mut line, &mut col);
                i += 1;
            }
            '-' => {
                if i + 1 < chars.len() && chars[i + 1] == '>' {
                    tokens.push(Token {
                        kind: TokenKind::Arrow,
                        line: tline,
                        col: tcol,
                    });
                    advance(2, &mut line, &mut col);
                    i += 2;
                } else {
                    tokens.push(Token {
                        kind: TokenKind::Minus,
                        line: tline,
                        col: tcol,
                    });
                    advance(1, &mut line, &mut col);
                    i += 1;
                }
            }
            _ if c.is_ascii_digit() => {
                let mut n = 0;
                while i + n < chars.len() && chars[i + n].is_ascii_digit() {
                    n += 1;
                }
                let text: String = chars[i..i + n].iter().collect();
                tokens.push(Token {
                    kind: TokenKind::Int(text),
                    line: tline,
                    col: tcol,
                });
                advance(n, &mut line, &mut col);
                i += n;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let mut n = 0;
                while i + n < chars.len()
                    && (chars[i + n].is_ascii_alphanumeric() || chars[i + n] == '_')
                {
                    n += 1;
                }
                let text: String = chars[i..i + n].iter().collect();
                tokens.push(Token {
                    kind: TokenKind::Ident(text),
                    line: tline,
                    col: tcol,
                });
                advance(n, &mut line, &mut col);
                i += n;
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        col,
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_arrows_and_comments() {
        let toks = tokenize("a: v1 -> v2, # comment\n b").unwrap();
        let kinds: Vec<&TokenKind> = toks.iter().map(|t| &t.kind).collect();
        assert!(matches!(kinds[3], TokenKind::Arrow));
        assert_eq!(toks.last().unwrap().kind, TokenKind::Eof);
        // the comment is skipped entirely
        assert!(kinds
            .iter()
            .all(|k| !matches!(k, TokenKind::Ident(s) if s == "comment")));
    }

    #[test]
    fn reports_position_of_bad_characters() {
        let err = tokenize("ok\n  @").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
    }
}
