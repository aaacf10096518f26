//! Text literals for words, automorphisms and semidirect elements.
//!
//! ```text
//! word := "1" | term (" " term)*
//! term := gen ("^" int)?
//! gen  := "g"nat | "e"nat | "n[" bits "]"
//! aut  := "id" | "swap{" node ("," node)* "}"      node := "[" bits "]"
//! sd   := "(" word ";" aut ")"
//! ```

use super::word::{Alphabet, Word};
use super::{Backend, Element};
use crate::error::{Error, Result};
use crate::tree::{SdElement, TreeAut, TreeNode};

fn syntax(input: &str, reason: impl Into<String>) -> Error {
    Error::Syntax { input: input.to_string(), reason: reason.into() }
}

/// Splits on whitespace, keeping parenthesised groups in one token.
pub fn tokenize(text: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut start = None;
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => {
                depth += 1;
                start.get_or_insert(i);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(syntax(text, "unbalanced `)`"));
                }
            }
            c if c.is_whitespace() && depth == 0 => {
                if let Some(s) = start.take() {
                    out.push(&text[s..i]);
                }
            }
            _ => {
                start.get_or_insert(i);
            }
        }
    }
    if depth != 0 {
        return Err(syntax(text, "unbalanced `(`"));
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    Ok(out)
}

fn parse_bits(input: &str, bits: &str) -> Result<TreeNode> {
    let bits = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(syntax(input, "node bits must be 0 or 1")),
        })
        .collect::<Result<Vec<_>>>()?;
    TreeNode::from_bits(&bits).ok_or_else(|| syntax(input, "node is deeper than supported"))
}

pub fn parse_node(text: &str) -> Result<TreeNode> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| syntax(text, "node must look like [0101]"))?;
    parse_bits(text, inner)
}

fn split_exponent<'a>(input: &str, token: &'a str) -> Result<(&'a str, i64)> {
    match token.split_once('^') {
        None => Ok((token, 1)),
        Some((head, exp)) => {
            let e = exp.parse::<i64>().map_err(|_| syntax(input, format!("bad exponent in `{token}`")))?;
            Ok((head, e))
        }
    }
}

/// Parses one `gen^int` term, returning its alphabet, generator index and exponent.
pub fn parse_term(input: &str, token: &str) -> Result<(Alphabet, u32, i64)> {
    let (head, exp) = split_exponent(input, token)?;
    let (alphabet, gen) = if let Some(bits) = head.strip_prefix("n[").and_then(|h| h.strip_suffix(']')) {
        (Alphabet::Node, parse_bits(input, bits)?.index())
    } else if let Some(n) = head.strip_prefix('g') {
        (Alphabet::Free, n.parse().map_err(|_| syntax(input, format!("bad generator `{head}`")))?)
    } else if let Some(n) = head.strip_prefix('e') {
        (Alphabet::Abelian, n.parse().map_err(|_| syntax(input, format!("bad generator `{head}`")))?)
    } else {
        return Err(syntax(input, format!("unrecognised term `{token}`")));
    };
    Ok((alphabet, gen, exp))
}

fn expect_alphabet(input: &str, want: Alphabet, got: Alphabet, gen: u32) -> Result<()> {
    if want == got {
        Ok(())
    } else {
        Err(Error::BackendMismatch {
            expected: format!("{want:?} generators"),
            found: format!("`{}` in `{input}`", got.format_gen(gen)),
        })
    }
}

/// Parses the terms of a word literal into raw `(generator, exponent)` pairs.
fn parse_raw_terms(text: &str, alphabet: Alphabet) -> Result<Vec<(u32, i64)>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(syntax(text, "empty word"));
    }
    if tokens == ["1"] {
        return Ok(Vec::new());
    }
    tokens
        .into_iter()
        .map(|tok| {
            let (a, gen, exp) = parse_term(text, tok)?;
            expect_alphabet(text, alphabet, a, gen)?;
            Ok((gen, exp))
        })
        .collect()
}

pub fn parse_word(text: &str, alphabet: Alphabet) -> Result<Word> {
    let raw = parse_raw_terms(text, alphabet)?;
    raw.iter()
        .try_for_each(|&(_, e)| i32::try_from(e).map(|_| ()))
        .map_err(|_| syntax(text, "exponent out of range"))?;
    Ok(Word::reduce(raw))
}

pub fn parse_aut(text: &str) -> Result<TreeAut> {
    let t = text.trim();
    if t == "id" {
        return Ok(TreeAut::identity());
    }
    let inner = t
        .strip_prefix("swap{")
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| syntax(text, "automorphism must be `id` or `swap{...}`"))?;
    if inner.trim().is_empty() {
        return Err(syntax(text, "swap{} needs at least one node; use `id`"));
    }
    let nodes = inner.split(',').map(parse_node).collect::<Result<Vec<_>>>()?;
    Ok(TreeAut::swap(nodes))
}

pub fn parse_sd(text: &str) -> Result<SdElement> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| syntax(text, "semidirect literal must look like (word;aut)"))?;
    let (word, aut) = inner
        .split_once(';')
        .ok_or_else(|| syntax(text, "missing `;` in semidirect literal"))?;
    Ok(SdElement::new(parse_word(word, Alphabet::Node)?, parse_aut(aut)?))
}

pub(crate) fn parse_element(backend: &Backend, text: &str) -> Result<Element> {
    let t = text.trim();
    match backend {
        Backend::Free(_) => Ok(Element::Free(parse_word(t, Alphabet::Free)?)),
        Backend::Abelian(m) => {
            let raw = parse_raw_terms(t, Alphabet::Abelian)?;
            if let Some(&(i, _)) = raw.iter().find(|&&(i, _)| m.modulus(i).is_none()) {
                return Err(Error::UnknownGenerator(Alphabet::Abelian.format_gen(i)));
            }
            Ok(Element::Abelian(m.element(raw)))
        }
        Backend::TreeSd => {
            if t.starts_with('(') {
                Ok(Element::Sd(parse_sd(t)?))
            } else if t == "id" || t.starts_with("swap{") {
                Ok(Element::Sd(SdElement::from_aut(parse_aut(t)?)))
            } else {
                Ok(Element::Sd(SdElement::from_word(parse_word(t, Alphabet::Node)?)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        let w = parse_word("g0^2 g1^-1 g1 g0", Alphabet::Free).unwrap();
        assert_eq!(w.to_string(), "g0^3");
        assert!(parse_word("1", Alphabet::Free).unwrap().is_identity());
        assert_eq!(parse_word("n[] n[01]^-2", Alphabet::Node).unwrap().to_literal(Alphabet::Node), "n[] n[01]^-2");
        assert!(parse_word("g0 h1", Alphabet::Free).is_err());
        assert!(parse_word("g0^x", Alphabet::Free).is_err());
        assert!(parse_word("", Alphabet::Free).is_err());
        assert!(matches!(parse_word("e0", Alphabet::Free), Err(Error::BackendMismatch { .. })));
    }

    #[test]
    fn auts_and_sd() {
        assert!(parse_aut("id").unwrap().is_identity());
        let f = parse_aut("swap{[1],[]}").unwrap();
        assert_eq!(f.to_string(), "swap{[],[1]}");
        assert!(parse_aut("swap{}").is_err());
        assert!(parse_aut("swap{[2]}").is_err());
        let x = parse_sd("(n[0] n[1]^-1;swap{[0]})").unwrap();
        assert_eq!(x.to_string(), "(n[0] n[1]^-1;swap{[0]})");
        assert_eq!(parse_sd(&x.to_string()).unwrap(), x);
        assert!(parse_sd("(n[0] swap{[0]})").is_err());
    }

    #[test]
    fn tokens() {
        assert_eq!(tokenize("g0 (n[] n[0];id) x^-1").unwrap(), vec!["g0", "(n[] n[0];id)", "x^-1"]);
        assert!(tokenize("(g0").is_err());
        assert!(tokenize("g0)").is_err());
    }
}
