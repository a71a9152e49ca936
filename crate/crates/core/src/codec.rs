//! Signed Gauss codes.
//!
//! ```text
//! link      = component ("/" component)*
//! component = "*" | token+
//! token     = ("O" | "U") digit+ ("+" | "-")
//! ```
//!
//! `*` is a crossing-free circle. Whitespace between lexemes is ignored and
//! the empty string is the empty link.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{Diagram, DiagramData, Sign};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

/// One passage of a strand through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub role: Role,
    pub crossing: u32,
    pub sign: Sign,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        let sign = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{role}{}{sign}", self.crossing)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignedGaussCode {
    pub components: Vec<Vec<Token>>,
    pub free_loops: usize,
}

impl SignedGaussCode {
    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Renumbers crossings 1..n in order of first appearance.
    pub fn normalized(&self) -> SignedGaussCode {
        let mut relabel = BTreeMap::new();
        for t in self.components.iter().flatten() {
            let next = relabel.len() as u32 + 1;
            relabel.entry(t.crossing).or_insert(next);
        }
        SignedGaussCode {
            components: self
                .components
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|t| Token {
                            crossing: relabel[&t.crossing],
                            ..*t
                        })
                        .collect()
                })
                .collect(),
            free_loops: self.free_loops,
        }
    }

    /// Checks the pairing invariants: each index twice, once over and once
    /// under, with one sign.
    pub fn check(&self) -> Result<()> {
        if self.components.iter().any(Vec::is_empty) {
            return Err(Error::Syntax {
                position: 0,
                message: "empty component".into(),
            });
        }
        let mut seen: BTreeMap<u32, Vec<Token>> = BTreeMap::new();
        for t in self.components.iter().flatten() {
            if t.crossing == 0 {
                return Err(Error::Syntax {
                    position: 0,
                    message: "crossing indices start at 1".into(),
                });
            }
            seen.entry(t.crossing).or_default().push(*t);
        }
        for (&index, tokens) in &seen {
            if tokens.len() != 2 {
                return Err(Error::IndexCount {
                    index,
                    count: tokens.len(),
                });
            }
            if tokens[0].role == tokens[1].role {
                return Err(Error::RolePair { index });
            }
            if tokens[0].sign != tokens[1].sign {
                return Err(Error::SignMismatch { index });
            }
        }
        Ok(())
    }
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_gauss(self))
    }
}

impl std::str::FromStr for SignedGaussCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_gauss(s)
    }
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn token(&mut self) -> Result<Token> {
        let role = match self.text[self.pos] {
            b'O' => Role::Over,
            b'U' => Role::Under,
            _ => return self.error("expected 'O', 'U', '*' or '/'"),
        };
        self.pos += 1;
        let digits_start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return self.error("expected crossing index");
        }
        let crossing: u32 = std::str::from_utf8(&self.text[digits_start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| self.error("crossing index too large"))?;
        if crossing == 0 {
            return Err(Error::Syntax {
                position: digits_start,
                message: "crossing indices start at 1".into(),
            });
        }
        let sign = match self.text.get(self.pos) {
            Some(b'+') => Sign::Positive,
            Some(b'-') => Sign::Negative,
            _ => return self.error("expected '+' or '-' after crossing index"),
        };
        self.pos += 1;
        Ok(Token {
            role,
            crossing,
            sign,
        })
    }
}

pub fn parse_gauss(text: &str) -> Result<SignedGaussCode> {
    let mut lx = Lexer {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut code = SignedGaussCode::default();
    if lx.peek().is_none() {
        return Ok(code);
    }
    loop {
        match lx.peek() {
            Some(b'*') => {
                lx.pos += 1;
                code.free_loops += 1;
            }
            Some(b'O' | b'U') => {
                let mut tokens = Vec::new();
                while let Some(b'O' | b'U') = lx.peek() {
                    tokens.push(lx.token()?);
                }
                code.components.push(tokens);
            }
            Some(_) => return lx.error("expected 'O', 'U' or '*'"),
            None => return lx.error("expected a component"),
        }
        match lx.peek() {
            None => break,
            Some(b'/') => lx.pos += 1,
            Some(_) => return lx.error("expected '/' between components"),
        }
    }
    code.check()?;
    Ok(code)
}

/// Components in order, single spaces, free loops as trailing `*` components.
pub fn emit_gauss(code: &SignedGaussCode) -> String {
    let mut parts: Vec<String> = code
        .components
        .iter()
        .map(|c| c.iter().map(Token::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    parts.extend(std::iter::repeat_n("*".to_string(), code.free_loops));
    parts.join(" / ")
}

/// Builds the map of a valid code. Passage `t` (counting tokens across all
/// components) gets inbound dart `2t` and outbound dart `2t + 1`; crossings
/// are numbered in order of first appearance.
pub fn to_diagram(code: &SignedGaussCode) -> Diagram {
    let passages: usize = code.components.iter().map(Vec::len).sum();
    let darts = 2 * passages;
    let mut edge_involution = vec![0; darts];
    let mut vertex_of: BTreeMap<u32, usize> = BTreeMap::new();
    let mut slots: Vec<([Option<usize>; 2], Sign)> = Vec::new();

    let mut t = 0;
    for component in &code.components {
        let first = t;
        for (k, token) in component.iter().enumerate() {
            let pass = first + k;
            let next = first + (k + 1) % component.len();
            edge_involution[2 * pass + 1] = 2 * next;
            edge_involution[2 * next] = 2 * pass + 1;
            let v = *vertex_of.entry(token.crossing).or_insert_with(|| {
                slots.push(([None, None], token.sign));
                slots.len() - 1
            });
            let role = usize::from(token.role == Role::Under);
            slots[v].0[role] = Some(pass);
        }
        t += component.len();
    }

    let mut vertex_rotations = Vec::with_capacity(slots.len());
    let mut over_under = Vec::with_capacity(slots.len());
    for ([over, under], sign) in slots {
        let (over, under) = (over.expect("valid code"), under.expect("valid code"));
        let (oi, oo, ui, uo) = (2 * over, 2 * over + 1, 2 * under, 2 * under + 1);
        vertex_rotations.push(match sign {
            Sign::Positive => [oi, ui, oo, uo],
            Sign::Negative => [oi, uo, oo, ui],
        });
        over_under.push([oi, oo, ui, uo]);
    }
    Diagram::new(DiagramData {
        darts,
        edge_involution,
        vertex_rotations,
        over_under,
        free_loops: code.free_loops,
    })
    .expect("a valid Gauss code yields a valid diagram")
}

/// Reads circuits off the map, each starting at the least unvisited inbound
/// dart, numbering crossings by first traversal.
pub fn from_diagram(d: &Diagram) -> SignedGaussCode {
    let mut labels = vec![0u32; d.num_crossings()];
    let mut next = 0;
    let components = d
        .circuits()
        .into_iter()
        .map(|circuit| {
            circuit
                .into_iter()
                .map(|dart| {
                    let v = d.vertex(dart);
                    if labels[v] == 0 {
                        next += 1;
                        labels[v] = next;
                    }
                    Token {
                        role: if d.is_over(dart) { Role::Over } else { Role::Under },
                        crossing: labels[v],
                        sign: d.sign(v),
                    }
                })
                .collect()
        })
        .collect();
    SignedGaussCode {
        components,
        free_loops: d.free_loops(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_classical_trefoil() {
        let code = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(code.components.len(), 1);
        assert_eq!(code.crossing_count(), 3);
        assert!(code.components[0].iter().all(|t| t.sign == Sign::Positive));
    }

    #[test]
    fn parses_free_loop_component() {
        let code = parse_gauss("O1+ U1+ / *").unwrap();
        assert_eq!(code.components.len(), 1);
        assert_eq!(code.free_loops, 1);
    }

    #[test]
    fn whitespace_is_insignificant_between_lexemes() {
        let a = parse_gauss("O1+U2-/U1+ O2-").unwrap();
        let b = parse_gauss("  O1+  U2-  /\n U1+ O2-  ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn indices_are_preserved() {
        let code = parse_gauss("O7+ U3- O3- U7+").unwrap();
        assert_eq!(emit_gauss(&code), "O7+ U3- O3- U7+");
        assert_eq!(emit_gauss(&code.normalized()), "O1+ U2- O2- U1+");
    }

    #[test]
    fn reports_pairing_errors() {
        assert!(matches!(
            parse_gauss("O1+ U2+ U1+"),
            Err(Error::IndexCount { index: 2, count: 1 })
        ));
        assert!(matches!(
            parse_gauss("O1+ U1+ O1+"),
            Err(Error::IndexCount { index: 1, count: 3 })
        ));
        assert!(matches!(parse_gauss("O1+ O1+"), Err(Error::RolePair { index: 1 })));
        assert!(matches!(parse_gauss("O1+ U1-"), Err(Error::SignMismatch { index: 1 })));
    }

    #[test]
    fn reports_syntax_position() {
        match parse_gauss("O1+ X2+") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_gauss("O1+ U1+ /").is_err());
        assert!(parse_gauss("O1+ U1+ / / *").is_err());
        assert!(parse_gauss("* O1+ U1+").is_err());
        assert!(parse_gauss("O0+ U0+").is_err());
        assert!(parse_gauss("O1 U1").is_err());
    }

    #[test]
    fn emits_free_loops_and_empty_link() {
        let code = SignedGaussCode {
            components: vec![],
            free_loops: 2,
        };
        assert_eq!(emit_gauss(&code), "* / *");
        assert_eq!(emit_gauss(&SignedGaussCode::default()), "");
        assert_eq!(parse_gauss("").unwrap(), SignedGaussCode::default());
    }

    #[test]
    fn virtual_trefoil_round_trips() {
        let text = "O1+ O2+ U1+ U2+";
        assert_eq!(emit_gauss(&parse_gauss(text).unwrap()), text);
        let d = to_diagram(&parse_gauss(text).unwrap());
        assert_eq!((d.num_crossings(), d.num_darts() / 2), (2, 4));
        assert_eq!(emit_gauss(&from_diagram(&d)), text);
    }

    #[test]
    fn smallest_kink() {
        let d = to_diagram(&parse_gauss("O1+ U1+").unwrap());
        assert_eq!(d.num_crossings(), 1);
        assert_eq!(d.num_darts(), 4);
        assert!(d.validate().is_empty());
        assert_eq!(emit_gauss(&from_diagram(&d)), "O1+ U1+");
    }

    #[test]
    fn sign_convention_fixes_rotation() {
        let d = to_diagram(&parse_gauss("O1+ U1+").unwrap());
        let c = d.crossing(0);
        assert_eq!(d.rotation(0), [c.over_in, c.under_in, c.over_out, c.under_out]);
        let d = to_diagram(&parse_gauss("O1- U1-").unwrap());
        let c = d.crossing(0);
        assert_eq!(d.rotation(0), [c.over_in, c.under_out, c.over_out, c.under_in]);
    }
}
