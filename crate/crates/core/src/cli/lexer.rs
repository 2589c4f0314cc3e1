//! Tokenizer with line/column tracking. `#` starts a comment running to the
//! end of the line.

use std::fmt;

use super::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Semi,
    Eq,
    LParen,
    RParen,
    Comma,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Semi => write!(f, "';'"),
            Tok::Eq => write!(f, "'='"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::LBrack => write!(f, "'['"),
            Tok::RBrack => write!(f, "']'"),
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: u32,
    pub col: u32,
}

pub fn lex(src: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), line: tline, col: tcol });
            continue;
        }
        if c.is_ascii_digit() {
            let mut v: u64 = 0;
            while let Some(&c) = chars.peek() {
                if let Some(d) = c.to_digit(10) {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(d)))
                        .ok_or(CliError::Syntax {
                            line: tline,
                            col: tcol,
                            msg: "integer literal is too large".into(),
                        })?;
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Int(v), line: tline, col: tcol });
            continue;
        }
        let tok = match c {
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            other => {
                return Err(CliError::Syntax {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        bump(&mut chars);
        out.push(Token { tok, line: tline, col: tcol });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based_and_track_lines() {
        let toks = lex("ring R\n= 12;").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("ring".into()));
        assert_eq!((toks[0].line, toks[0].col), (1, 1));
        assert_eq!((toks[1].line, toks[1].col), (1, 6));
        assert_eq!(toks[2].tok, Tok::Eq);
        assert_eq!((toks[2].line, toks[2].col), (2, 1));
        assert_eq!(toks[3].tok, Tok::Int(12));
        assert_eq!(toks[4].tok, Tok::Semi);
    }

    #[test]
    fn comments_run_to_end_of_line() {
        let toks = lex("a # everything here vanishes ;;;\nb").unwrap();
        let idents: Vec<_> = toks
            .iter()
            .map(|t| match &t.tok {
                Tok::Ident(s) => s.clone(),
                _ => panic!(),
            })
            .collect();
        assert_eq!(idents, ["a", "b"]);
    }

    #[test]
    fn unknown_characters_are_located() {
        let err = lex("ring R = poly(x) / (x?);").unwrap_err();
        match err {
            CliError::Syntax { line, col, .. } => assert_eq!((line, col), (1, 22)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn oversized_integers_are_rejected() {
        assert!(lex("99999999999999999999999").is_err());
    }
}
