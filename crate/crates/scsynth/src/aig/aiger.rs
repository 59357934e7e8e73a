//! ASCII AIGER ("aag") reader and writer. Combinational only: a nonzero
//! latch count is rejected.

use super::{Aig, Lit};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AigerError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("sequential input unsupported: {0} latches declared")]
    Sequential(usize),
    #[error("malformed line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("dangling literal reference {0}")]
    DanglingLiteral(u32),
    #[error("combinational loop through variable {0}")]
    Loop(u32),
}

fn parse_u32(tok: &str, line: usize) -> Result<u32, AigerError> {
    tok.parse::<u32>().map_err(|_| AigerError::MalformedLine {
        line,
        reason: format!("expected unsigned integer, got {tok:?}"),
    })
}

/// Parse an ASCII AIGER document into a structurally hashed [`Aig`].
///
/// AND definitions may appear in any order; only logic reachable from the
/// outputs is kept, and constant/idempotence folds apply during
/// reconstruction, so node counts can shrink relative to the document.
pub fn parse_aiger(text: &str) -> Result<Aig, AigerError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| AigerError::MalformedHeader("empty document".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "aag" {
        return Err(AigerError::MalformedHeader(format!(
            "expected \"aag M I L O A\", got {header:?}"
        )));
    }
    let m = parse_u32(toks[1], 1)?;
    let i = parse_u32(toks[2], 1)?;
    let l = parse_u32(toks[3], 1)?;
    let o = parse_u32(toks[4], 1)?;
    let a = parse_u32(toks[5], 1)?;
    if l != 0 {
        return Err(AigerError::Sequential(l as usize));
    }
    if m < i + a {
        return Err(AigerError::MalformedHeader(format!(
            "header claims {m} variables for {i} inputs and {a} ANDs"
        )));
    }

    let mut take_line = |what: &str| -> Result<(usize, &str), AigerError> {
        lines.next().ok_or_else(|| AigerError::MalformedHeader(format!(
            "document ends before {what} section is complete"
        )))
    };

    // Input literals: even, distinct, within range.
    let mut input_var_to_index: HashMap<u32, usize> = HashMap::new();
    for idx in 0..i as usize {
        let (ln, s) = take_line("input")?;
        let lit = parse_u32(s.trim(), ln + 1)?;
        if lit % 2 != 0 || lit == 0 || lit / 2 > m {
            return Err(AigerError::MalformedLine {
                line: ln + 1,
                reason: format!("invalid input literal {lit}"),
            });
        }
        if input_var_to_index.insert(lit / 2, idx).is_some() {
            return Err(AigerError::MalformedLine {
                line: ln + 1,
                reason: format!("duplicate input literal {lit}"),
            });
        }
    }

    let mut output_lits = Vec::with_capacity(o as usize);
    for _ in 0..o {
        let (ln, s) = take_line("output")?;
        let lit = parse_u32(s.trim(), ln + 1)?;
        if lit / 2 > m {
            return Err(AigerError::DanglingLiteral(lit));
        }
        output_lits.push(lit);
    }

    // AND definitions, keyed by defined variable.
    let mut defs: HashMap<u32, (u32, u32)> = HashMap::new();
    for _ in 0..a {
        let (ln, s) = take_line("and")?;
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(AigerError::MalformedLine {
                line: ln + 1,
                reason: format!("expected \"lhs rhs0 rhs1\", got {s:?}"),
            });
        }
        let lhs = parse_u32(toks[0], ln + 1)?;
        let rhs0 = parse_u32(toks[1], ln + 1)?;
        let rhs1 = parse_u32(toks[2], ln + 1)?;
        if lhs % 2 != 0 || lhs == 0 {
            return Err(AigerError::MalformedLine {
                line: ln + 1,
                reason: format!("AND output literal {lhs} must be even and nonzero"),
            });
        }
        for &t in &[lhs, rhs0, rhs1] {
            if t / 2 > m {
                return Err(AigerError::DanglingLiteral(t));
            }
        }
        let var = lhs / 2;
        if input_var_to_index.contains_key(&var) || defs.insert(var, (rhs0, rhs1)).is_some() {
            return Err(AigerError::MalformedLine {
                line: ln + 1,
                reason: format!("variable {var} defined more than once"),
            });
        }
    }
    // Anything after the body (symbols, comments) is ignored.

    // Rebuild the reachable cones through the structural hash.
    let mut g = Aig::new(i as usize);
    let mut resolved: HashMap<u32, Lit> = HashMap::new();
    resolved.insert(0, Lit::FALSE);
    for (&var, &idx) in &input_var_to_index {
        resolved.insert(var, g.input_lit(idx));
    }

    // Iterative post-order over file variables; `in_progress` detects loops.
    let mut in_progress: Vec<u32> = Vec::new();
    let mut resolve = |g: &mut Aig, root: u32| -> Result<Lit, AigerError> {
        let mut stack = vec![root];
        while let Some(&v) = stack.last() {
            if resolved.contains_key(&v) {
                stack.pop();
                if in_progress.last() == Some(&v) {
                    in_progress.pop();
                }
                continue;
            }
            let &(r0, r1) = defs.get(&v).ok_or(AigerError::DanglingLiteral(2 * v))?;
            let need0 = !resolved.contains_key(&(r0 / 2));
            let need1 = !resolved.contains_key(&(r1 / 2));
            if !need0 && !need1 {
                let l0 = resolved[&(r0 / 2)].xor(r0 % 2 == 1);
                let l1 = resolved[&(r1 / 2)].xor(r1 % 2 == 1);
                let lit = g.add_and_unchecked(l0, l1);
                resolved.insert(v, lit);
                stack.pop();
                in_progress.retain(|&x| x != v);
            } else {
                if in_progress.contains(&v) {
                    return Err(AigerError::Loop(v));
                }
                in_progress.push(v);
                if need0 {
                    stack.push(r0 / 2);
                }
                if need1 {
                    stack.push(r1 / 2);
                }
            }
        }
        Ok(resolved[&root])
    };

    for lit in output_lits {
        let base = resolve(&mut g, lit / 2)?;
        g.add_output(base.xor(lit % 2 == 1)).expect("resolved literal in range");
    }
    Ok(g)
}

/// Serialize to the ASCII AIGER format. Variables are already dense and
/// topologically ordered, so the body is emitted directly.
pub fn serialize_aiger(g: &Aig) -> String {
    let i = g.num_inputs();
    let a = g.and_count();
    let mut s = String::new();
    s.push_str(&format!("aag {} {} 0 {} {}\n", i + a, i, g.num_outputs(), a));
    for k in 0..i {
        s.push_str(&format!("{}\n", 2 * (k + 1)));
    }
    for o in g.outputs() {
        s.push_str(&format!("{}\n", o.0));
    }
    let first_and = 1 + i as u32;
    for (k, n) in g.nodes().iter().enumerate() {
        let lhs = 2 * (first_and + k as u32);
        // Larger rhs first, following the usual AIGER convention.
        s.push_str(&format!("{} {} {}\n", lhs, n.hi.0, n.lo.0));
    }
    s
}
