//! Word and identity text as typed on the command line.
//!
//! A side containing whitespace is a list of variable tokens; otherwise
//! every character is a variable. Tokens `w_<bits>` expand to the family
//! word w_ξ with n = number of bits (0 = identity, 1 = swap).

use std::fs;
use std::path::Path;

use workbench::family::{build_w, SignVector};
use workbench::word::{Identity, Word};

pub fn family_word(bits: &str) -> Result<Word, String> {
    let xi = parse_bits(bits)?;
    build_w(xi.n(), &xi).map_err(|e| e.to_string())
}

pub fn parse_bits(bits: &str) -> Result<SignVector, String> {
    if bits.is_empty() {
        return Err("empty sign vector".into());
    }
    bits.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(format!("sign vector {bits:?} must be a string of 0s and 1s")),
        })
        .collect::<Result<Vec<bool>, _>>()
        .map(SignVector::from_bits)
}

fn shorthand(token: &str) -> Option<&str> {
    token
        .strip_prefix("w_")
        .filter(|b| !b.is_empty() && b.chars().all(|c| c == '0' || c == '1'))
}

pub fn word(text: &str) -> Result<Word, String> {
    let text = text.trim();
    if text == "1" || text.is_empty() {
        return Ok(Word::empty());
    }
    if !text.contains(char::is_whitespace) {
        if let Some(bits) = shorthand(text) {
            return family_word(bits);
        }
        return Word::parse_compact(text).map_err(|e| e.to_string());
    }
    let mut out = Word::empty();
    for token in text.split_whitespace() {
        let part = match shorthand(token) {
            Some(bits) => family_word(bits)?,
            None => Word::parse(token).map_err(|e| e.to_string())?,
        };
        out = out.concat(&part);
    }
    Ok(out)
}

pub fn identity(text: &str) -> Result<Identity, String> {
    let (l, r) = text
        .split_once(['=', '≈'])
        .ok_or_else(|| format!("identity {text:?} needs the form \"u = v\""))?;
    Ok(Identity::new(word(l)?, word(r)?))
}

/// Non-empty lines with `#` comments removed.
pub fn lines(path: &Path) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_owned())
        .filter(|l| !l.is_empty())
        .collect())
}

pub fn word_list(items: &[String]) -> Result<Vec<Word>, String> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(word)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_and_spaced() {
        assert_eq!(word("xyx").unwrap().len(), 3);
        assert_eq!(word("x1 y x1").unwrap().len(), 3);
        assert!(word("1").unwrap().is_empty());
    }

    #[test]
    fn shorthand_expands() {
        let id = identity("w_00 = w_01").unwrap();
        assert_eq!(id.lhs.len(), id.rhs.len());
        assert_ne!(id.lhs, id.rhs);
        assert_eq!(word("w_10").unwrap(), family_word("10").unwrap());
        assert!(parse_bits("012").is_err());
    }

    #[test]
    fn identity_needs_equals() {
        assert!(identity("xy").is_err());
    }
}
