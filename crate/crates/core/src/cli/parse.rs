//! Sequence input: comma- or whitespace-separated integers, inline or `@path`.

use std::fs;

use thiserror::Error;

use crate::sequence::{DegreeSequence, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("token {position} ({token:?}) is not a non-negative integer")]
    BadToken { position: usize, token: String },
    #[error("no degrees given")]
    Empty,
    #[error("invalid sequence: {0}")]
    Invariant(#[from] SequenceError),
}

/// Resolves `@path` to the file contents; anything else is returned as is.
pub fn read_source(text: &str) -> Result<String, ParseError> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| ParseError::Io {
            path: path.to_string(),
            reason: e.to_string(),
        }),
        None => Ok(text.to_string()),
    }
}

/// Raw degrees in input order, no validation beyond integer syntax.
/// Token positions are 1-based.
pub fn parse_tokens(text: &str) -> Result<Vec<u32>, ParseError> {
    let text = read_source(text)?;
    let degrees = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, token)| {
            token.parse::<u32>().map_err(|_| ParseError::BadToken {
                position: i + 1,
                token: token.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if degrees.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(degrees)
}

pub fn parse_sequence(text: &str, h: u32) -> Result<DegreeSequence, ParseError> {
    Ok(DegreeSequence::new(parse_tokens(text)?, h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn separators() {
        assert_eq!(parse_tokens("3,3,3,3").unwrap(), vec![3, 3, 3, 3]);
        assert_eq!(parse_tokens(" 3 3\n2,\t2 ").unwrap(), vec![3, 3, 2, 2]);
        assert_eq!(parse_tokens("3, 3").unwrap(), vec![3, 3]);
    }

    #[test]
    fn valid_sequence() {
        let seq = parse_sequence("3,3,3,3", 1).unwrap();
        assert_eq!(seq.degrees(), &[3, 3, 3, 3]);
    }

    #[test]
    fn bad_token_position() {
        assert_eq!(
            parse_tokens("3,x,1"),
            Err(ParseError::BadToken {
                position: 2,
                token: "x".into()
            })
        );
        assert!(matches!(
            parse_tokens("1 -2"),
            Err(ParseError::BadToken { position: 2, .. })
        ));
    }

    #[test]
    fn invariants() {
        assert!(matches!(
            parse_sequence("3 3 1 4", 1),
            Err(ParseError::Invariant(SequenceError::NotSorted { .. }))
        ));
        assert_eq!(parse_sequence(" , ", 1), Err(ParseError::Empty));
    }

    #[test]
    fn from_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "2 2\n2").unwrap();
        let arg = format!("@{}", f.path().display());
        assert_eq!(parse_tokens(&arg).unwrap(), vec![2, 2, 2]);
        assert!(matches!(
            parse_tokens("@/nonexistent/seq"),
            Err(ParseError::Io { .. })
        ));
    }
}
