//! Text key files: the count on the first line, then one decimal key per line.

use std::fmt::{Display, Write};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyFileError {
    #[error("empty key file")]
    Empty,
    #[error("line {line}: cannot parse {text:?}")]
    Parse { line: usize, text: String },
    #[error("header says {expected} keys, found {found}")]
    Count { expected: usize, found: usize },
}

/// Parses a key file. A single trailing newline is allowed; blank lines
/// elsewhere are not.
pub fn parse_key_file(text: &str) -> Result<Vec<u64>, KeyFileError> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines
        .next()
        .filter(|h| !h.is_empty())
        .ok_or(KeyFileError::Empty)?;
    let expected: usize = header.trim().parse().map_err(|_| KeyFileError::Parse {
        line: 1,
        text: header.to_string(),
    })?;
    let mut keys = Vec::with_capacity(expected);
    for (i, line) in lines.enumerate() {
        let key = line.trim().parse().map_err(|_| KeyFileError::Parse {
            line: i + 2,
            text: line.to_string(),
        })?;
        keys.push(key);
    }
    if keys.len() != expected {
        return Err(KeyFileError::Count {
            expected,
            found: keys.len(),
        });
    }
    Ok(keys)
}

pub fn format_key_file<T: Display>(keys: &[T]) -> String {
    let mut out = String::with_capacity(keys.len() * 8 + 16);
    writeln!(out, "{}", keys.len()).unwrap();
    for k in keys {
        writeln!(out, "{k}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = format_key_file(&[3u64, 1, 2]);
        assert_eq!(text, "3\n3\n1\n2\n");
        assert_eq!(parse_key_file(&text).unwrap(), [3, 1, 2]);
        assert_eq!(parse_key_file("0\n").unwrap(), Vec::<u64>::new());
        assert_eq!(parse_key_file("2\r\n5\r\n6").unwrap(), [5, 6]);
    }

    #[test]
    fn malformed() {
        assert_eq!(parse_key_file(""), Err(KeyFileError::Empty));
        assert!(matches!(
            parse_key_file("x\n"),
            Err(KeyFileError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_key_file("2\n1\n-3\n"),
            Err(KeyFileError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_key_file("2\n1\n\n"),
            Err(KeyFileError::Parse { line: 3, .. })
        ));
        assert_eq!(
            parse_key_file("3\n1\n2\n"),
            Err(KeyFileError::Count {
                expected: 3,
                found: 2
            })
        );
    }
}
