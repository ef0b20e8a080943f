//! The presentation file format.
//!
//! ```text
//! # the ambient ring, one generator per line
//! ring {
//!   t1 : 1
//!   t2 : 1
//! }
//! # the module: generators with degrees, then relations
//! module {
//!   gen g : 0
//!   rel t1^2*t2 * g + t1*t2^2 * g
//! }
//! ```
//!
//! A relation is a sum of products; each product ends in a module generator
//! name and the preceding factors multiply into its coefficient. A
//! coefficient with more than one term is parenthesized: `(t1 + t2) * g`.
//! `#` starts a comment. A file without a module block (or with an empty
//! one) is the zero module.

use crate::error::Error;
use crate::f2poly::{tokenize, Polynomial, Ring, RingDescriptor, Token};
use crate::grmodule::GradedPresentation;
use crate::Result;

#[derive(PartialEq)]
enum Block {
    Top,
    Ring,
    Module,
}

pub fn parse_presentation(input: &str) -> Result<GradedPresentation> {
    let mut block = Block::Top;
    let mut ring_gens: Vec<(String, u32)> = Vec::new();
    let mut saw_ring = false;
    let mut module_gens: Vec<(String, u32)> = Vec::new();
    let mut relation_sources: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        match block {
            Block::Top => {
                if line == "ring {" {
                    if saw_ring {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "duplicate ring block".into(),
                        });
                    }
                    saw_ring = true;
                    block = Block::Ring;
                } else if line == "module {" {
                    if !saw_ring {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "module block before ring block".into(),
                        });
                    }
                    block = Block::Module;
                } else {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected 'ring {{' or 'module {{', found {line:?}"),
                    });
                }
            }
            Block::Ring => {
                if line == "}" {
                    block = Block::Top;
                } else {
                    let (name, degree) = parse_name_degree(line, lineno)?;
                    ring_gens.push((name, degree));
                }
            }
            Block::Module => {
                if line == "}" {
                    block = Block::Top;
                } else if let Some(rest) = line.strip_prefix("gen ") {
                    let (name, degree) = parse_name_degree(rest, lineno)?;
                    module_gens.push((name, degree));
                } else if let Some(rest) = line.strip_prefix("rel ") {
                    relation_sources.push((lineno, rest.to_string()));
                } else {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected 'gen', 'rel' or '}}', found {line:?}"),
                    });
                }
            }
        }
    }
    if block != Block::Top {
        return Err(Error::Parse {
            line: input.lines().count(),
            msg: "unclosed block".into(),
        });
    }
    if !saw_ring {
        return Err(Error::Parse {
            line: 1,
            msg: "missing ring block".into(),
        });
    }
    let ring = RingDescriptor::new(ring_gens)?;
    let mut relations = Vec::with_capacity(relation_sources.len());
    for (rel_index, (lineno, src)) in relation_sources.iter().enumerate() {
        let row = parse_relation(&ring, &module_gens, src, *lineno).map_err(|e| match e {
            Error::DegreeMismatch(detail) => Error::InhomogeneousRelation {
                index: rel_index,
                detail,
            },
            other => other,
        })?;
        relations.push(row);
    }
    GradedPresentation::new(&ring, module_gens, relations)
}

fn parse_name_degree(text: &str, lineno: usize) -> Result<(String, u32)> {
    let mut parts = text.splitn(2, ':');
    let name = parts.next().unwrap_or("").trim();
    let degree = parts
        .next()
        .ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("expected 'name : degree', found {text:?}"),
        })?
        .trim();
    let degree = degree.parse::<u32>().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("bad degree {degree:?}"),
    })?;
    if name.is_empty() {
        return Err(Error::Parse {
            line: lineno,
            msg: "empty name".into(),
        });
    }
    Ok((name.to_string(), degree))
}

/// One relation row: a sum of coefficient-times-generator products, the
/// generator last in each product.
fn parse_relation(
    ring: &Ring,
    gens: &[(String, u32)],
    src: &str,
    lineno: usize,
) -> Result<Vec<Polynomial>> {
    let tokens = tokenize(src).map_err(|msg| Error::Parse { line: lineno, msg })?;
    let mut row = vec![Polynomial::zero(ring); gens.len()];
    let mut pos = 0;
    loop {
        let (gen_idx, coeff, next) = parse_relation_term(ring, gens, &tokens, pos, lineno)?;
        row[gen_idx] = row[gen_idx].add(&coeff)?;
        pos = next;
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) => pos += 1,
            Some(other) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected '+' between relation terms, found {other:?}"),
                })
            }
        }
    }
    Ok(row)
}

fn parse_relation_term(
    ring: &Ring,
    gens: &[(String, u32)],
    tokens: &[Token],
    mut pos: usize,
    lineno: usize,
) -> Result<(usize, Polynomial, usize)> {
    let mut coeff = Polynomial::one(ring);
    loop {
        let (factor_end, factor) = parse_factor(ring, gens, tokens, pos, lineno)?;
        match factor {
            Factor::Gen(gen_idx) => {
                // the generator closes the product
                match tokens.get(factor_end) {
                    None | Some(Token::Plus) => return Ok((gen_idx, coeff, factor_end)),
                    Some(other) => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("generator must end its term, found {other:?} after it"),
                        })
                    }
                }
            }
            Factor::Coeff(p) => {
                coeff = coeff.mul(&p)?;
                match tokens.get(factor_end) {
                    Some(Token::Star) => pos = factor_end + 1,
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "relation term does not end with a module generator".into(),
                        })
                    }
                }
            }
        }
    }
}

enum Factor {
    Gen(usize),
    Coeff(Polynomial),
}

fn parse_factor(
    ring: &Ring,
    gens: &[(String, u32)],
    tokens: &[Token],
    pos: usize,
    lineno: usize,
) -> Result<(usize, Factor)> {
    match tokens.get(pos) {
        Some(Token::Ident(name)) => {
            if let Some(gi) = gens.iter().position(|(g, _)| g == name) {
                return Ok((pos + 1, Factor::Gen(gi)));
            }
            let j = ring.index_of(name).ok_or_else(|| Error::Parse {
                line: lineno,
                msg: format!("unknown generator {name}"),
            })?;
            let mut exp = 1u32;
            let mut end = pos + 1;
            if tokens.get(end) == Some(&Token::Caret) {
                match tokens.get(end + 1) {
                    Some(Token::Int(e)) => {
                        exp = *e;
                        end += 2;
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "expected integer exponent after ^".into(),
                        })
                    }
                }
            }
            Ok((end, Factor::Coeff(Polynomial::var(ring, j).pow(exp))))
        }
        Some(Token::Int(0)) => Ok((pos + 1, Factor::Coeff(Polynomial::zero(ring)))),
        Some(Token::Int(1)) => Ok((pos + 1, Factor::Coeff(Polynomial::one(ring)))),
        Some(Token::LParen) => {
            // parenthesized homogeneous coefficient
            let mut depth = 1;
            let mut end = pos + 1;
            while depth > 0 {
                match tokens.get(end) {
                    Some(Token::LParen) => depth += 1,
                    Some(Token::RParen) => depth -= 1,
                    None => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "missing closing parenthesis".into(),
                        })
                    }
                    _ => {}
                }
                end += 1;
            }
            let inner = render_tokens(&tokens[pos + 1..end - 1]);
            let p = crate::f2poly::parse_polynomial(ring, &inner).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: lineno, msg },
                other => other,
            })?;
            Ok((end, Factor::Coeff(p)))
        }
        other => Err(Error::Parse {
            line: lineno,
            msg: format!("expected a factor, found {other:?}"),
        }),
    }
}

fn render_tokens(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| match t {
            Token::Ident(s) => s.clone(),
            Token::Int(v) => v.to_string(),
            Token::Caret => "^".into(),
            Token::Star => "*".into(),
            Token::Plus => " + ".into(),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
        })
        .collect()
}

/// Deterministic text form; `parse_presentation` inverts it exactly.
pub fn emit_presentation(pres: &GradedPresentation) -> String {
    let mut out = String::new();
    out.push_str("ring {\n");
    for (name, deg) in pres.ring().gens() {
        out.push_str(&format!("  {name} : {deg}\n"));
    }
    out.push_str("}\n");
    out.push_str("module {\n");
    for (name, deg) in pres.generators() {
        out.push_str(&format!("  gen {name} : {deg}\n"));
    }
    for row in pres.relations() {
        let mut terms = Vec::new();
        for (j, coeff) in row.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let gname = &pres.generators()[j].0;
            if coeff.terms().len() == 1 && coeff.terms()[0].exps().iter().all(|&e| e == 0) {
                terms.push(gname.clone());
            } else if coeff.terms().len() == 1 {
                terms.push(format!("{coeff}*{gname}"));
            } else {
                terms.push(format!("({coeff}) * {gname}"));
            }
        }
        if !terms.is_empty() {
            out.push_str(&format!("  rel {}\n", terms.join(" + ")));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_entries, random_presentation};
    use crate::f2poly::cohomology_ring;
    use crate::grmodule::expand;

    #[test]
    fn parse_basic_presentation() {
        let text = "\
# a hypersurface
ring {
  t1 : 1
  t2 : 1
}
module {
  gen g : 0
  rel t1^2*t2 * g + t1*t2^2 * g
}
";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(pres.generators().len(), 1);
        assert_eq!(pres.relations().len(), 1);
        assert_eq!(pres.relation_degree(0), Some(3));
        let m = expand(&pres, 4).unwrap();
        assert_eq!(m.dims(), &[1, 2, 3, 3, 3]);
    }

    #[test]
    fn empty_module_is_zero() {
        let text = "ring {\n  t1 : 1\n}\nmodule {\n}\n";
        let pres = parse_presentation(text).unwrap();
        assert!(pres.generators().is_empty());
        assert!(expand(&pres, 4).unwrap().is_zero());

        // a file with no module block at all is also the zero module
        let pres = parse_presentation("ring {\n  t1 : 1\n}\n").unwrap();
        assert!(expand(&pres, 4).unwrap().is_zero());
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let text =
            "ring {\n  t1 : 1\n  t2 : 1\n}\nmodule {\n  gen g : 0\n  rel t1 * g + t2^2 * g\n}\n";
        match parse_presentation(text) {
            Err(Error::InhomogeneousRelation { index, .. }) => assert_eq!(index, 0),
            other => panic!("expected inhomogeneity error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_generator_reported_with_line() {
        let text = "ring {\n  t1 : 1\n}\nmodule {\n  gen g : 0\n  rel t9 * g\n}\n";
        match parse_presentation(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 6);
                assert!(msg.contains("t9"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "ring {\n  t1 : x\n}\n";
        match parse_presentation(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_presentation("module {\n}\n").is_err());
        assert!(parse_presentation("ring {\n").is_err());
    }

    #[test]
    fn parenthesized_coefficients() {
        let text = "\
ring {
  t1 : 1
  t2 : 1
}
module {
  gen a : 0
  gen b : 1
  rel (t1^2 + t1*t2) * a + t2 * b
}
";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(pres.relation_degree(0), Some(2));
    }

    #[test]
    fn round_trip_catalog_entries() {
        for entry in builtin_entries(2).unwrap() {
            for pres in &entry.levels {
                let text = emit_presentation(pres);
                let back = parse_presentation(&text).unwrap_or_else(|e| {
                    panic!("{}: {e}\n{text}", entry.name);
                });
                assert_eq!(back.generators(), pres.generators(), "{}", entry.name);
                assert_eq!(back.relations(), pres.relations(), "{}", entry.name);
            }
        }
    }

    #[test]
    fn round_trip_random_presentations() {
        for seed in 1..=20u64 {
            let pres = random_presentation(seed, 2, 3, 3, 4);
            let back = parse_presentation(&emit_presentation(&pres)).unwrap();
            assert_eq!(back.generators(), pres.generators());
            assert_eq!(back.relations(), pres.relations());
        }
    }

    #[test]
    fn zero_coefficient_factor_is_legal() {
        let ring_text = "ring {\n  t1 : 1\n}\nmodule {\n  gen g : 0\n  rel 0 * g\n}\n";
        let pres = parse_presentation(ring_text).unwrap();
        // the relation row is all zero and spans nothing
        let m = expand(&pres, 3).unwrap();
        assert_eq!(m.dims(), &[1, 1, 1, 1]);
        let _ = cohomology_ring(1);
    }
}
