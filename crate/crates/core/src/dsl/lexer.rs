use num_bigint::BigInt;

use super::{DslError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Int(BigInt),
    Ident(String),
    Q,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    LParen,
    RParen,
    Comma,
    Semi,
    Inf,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("integer {n}"),
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Q => "`q`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Inf => "`inf`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

/// Splits `src` into maximal-munch tokens. Whitespace separates tokens and
/// is otherwise ignored.
pub fn tokenize(src: &str) -> Result<Vec<Token>, DslError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            TokenKind::Int(src[start..i].parse().expect("digits parse"))
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            match &src[start..i] {
                "q" => TokenKind::Q,
                "inf" => TokenKind::Inf,
                word => TokenKind::Ident(word.to_string()),
            }
        } else {
            i += 1;
            match c {
                b'^' => TokenKind::Caret,
                b'*' => TokenKind::Star,
                b'/' => TokenKind::Slash,
                b'+' => TokenKind::Plus,
                b'-' => TokenKind::Minus,
                b'(' => TokenKind::LParen,
                b')' => TokenKind::RParen,
                b',' => TokenKind::Comma,
                b';' => TokenKind::Semi,
                _ => {
                    let ch = src[start..].chars().next().unwrap_or('?');
                    return Err(DslError::Lex {
                        offset: start,
                        message: format!("unexpected character {ch:?}"),
                    });
                }
            }
        };
        out.push(Token {
            kind,
            span: Span { start, end: i },
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn basics() {
        assert_eq!(
            kinds("q^3"),
            vec![TokenKind::Q, TokenKind::Caret, TokenKind::Int(3.into())]
        );
        let k = kinds("poch(-q^3; q^6; inf)");
        assert_eq!(k[0], TokenKind::Ident("poch".into()));
        assert_eq!(
            &k[1..4],
            &[TokenKind::LParen, TokenKind::Minus, TokenKind::Q]
        );
        assert_eq!(k[k.len() - 2], TokenKind::Inf);
        assert!(matches!(
            tokenize("@"),
            Err(DslError::Lex { offset: 0, .. })
        ));
        assert!(matches!(
            tokenize("q + é"),
            Err(DslError::Lex { offset: 4, .. })
        ));
    }

    #[test]
    fn spans_tile_input() {
        let src = " qq+ 12*(x_1)";
        let toks = tokenize(src).unwrap();
        let joined: String = toks
            .iter()
            .map(|t| &src[t.span.start..t.span.end])
            .collect();
        assert_eq!(joined, src.split_whitespace().collect::<String>());
    }
}
