use super::coeff::Coefficient;
use super::poly::{word_boundary, GenId, GenTable, NcPoly, ObjId, Word};
use crate::error::{DgError, Result};

fn err(column: usize, message: impl Into<String>) -> DgError {
    DgError::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

enum Factor {
    Identity(ObjId),
    Gen(GenId),
}

fn parse_identity<T: GenTable + ?Sized>(table: &T, s: &str) -> Option<Result<ObjId>> {
    let inner = s.strip_prefix("1_{")?.strip_suffix('}')?;
    Some(
        table
            .find_object(inner)
            .ok_or_else(|| DgError::UnknownName(inner.to_string())),
    )
}

/// Splits an ASCII chunk such as `y*x` into known generator names.
fn split_ascii<T: GenTable + ?Sized>(table: &T, chunk: &str) -> Option<Vec<Factor>> {
    let pieces: Vec<&str> = chunk.split('*').collect();
    let n = pieces.len();
    // best[i]: a factorisation of pieces[i..]
    let mut best: Vec<Option<Vec<Factor>>> = (0..=n).map(|_| None).collect();
    best[n] = Some(Vec::new());
    for i in (0..n).rev() {
        for j in (i + 1..=n).rev() {
            if best[j].is_none() {
                continue;
            }
            let name = pieces[i..j].join("*");
            let f = if let Some(Ok(o)) = parse_identity(table, &name) {
                Some(Factor::Identity(o))
            } else {
                table.find_generator(&name).map(Factor::Gen)
            };
            if let Some(f) = f {
                let mut v = vec![f];
                v.extend(best[j].take().unwrap());
                best[i] = Some(v);
                break;
            }
        }
    }
    best.swap_remove(0)
}

fn parse_word<T: GenTable + ?Sized>(
    table: &T,
    token: &str,
    column: usize,
) -> Result<(Word, Option<(ObjId, ObjId)>)> {
    let mut factors = Vec::new();
    for chunk in token.split('∘') {
        if chunk.is_empty() {
            return Err(err(column, format!("empty factor in {token}")));
        }
        if let Some(o) = parse_identity(table, chunk) {
            factors.push(Factor::Identity(o.map_err(|e| err(column, e.to_string()))?));
        } else if let Some(g) = table.find_generator(chunk) {
            factors.push(Factor::Gen(g));
        } else if let Some(fs) = split_ascii(table, chunk) {
            factors.extend(fs);
        } else {
            return Err(err(column, format!("unknown generator {chunk}")));
        }
    }
    let mut letters = Vec::new();
    let mut ident: Option<ObjId> = None;
    for f in &factors {
        match f {
            Factor::Gen(g) => letters.push(*g),
            Factor::Identity(o) => {
                if ident.map(|x| x != *o).unwrap_or(false) {
                    return Err(err(column, format!("mismatched identities in {token}")));
                }
                ident = Some(*o);
            }
        }
    }
    let w = Word(letters);
    let boundary = word_boundary(table, &w).map_err(|e| err(column, e.to_string()))?;
    let boundary = match (boundary, ident) {
        (None, Some(o)) => Some((o, o)),
        (b, _) => b,
    };
    Ok((w, boundary))
}

fn is_coefficient(tok: &str) -> bool {
    let t = tok.strip_prefix('-').unwrap_or(tok);
    !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '/')
}

/// Parses the canonical rendering, e.g. `y∘x - 2 a∘b + 1_{L}` or `y*x`.
/// `boundary` fixes source/target; otherwise they are inferred from the words.
pub fn parse_poly<T: GenTable + ?Sized>(
    table: &T,
    text: &str,
    boundary: Option<(ObjId, ObjId)>,
) -> Result<NcPoly> {
    let ring = table.ring();
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    let mut offset = 0;
    for piece in text.split_whitespace() {
        let pos = text[offset..].find(piece).map(|p| p + offset).unwrap_or(offset);
        offset = pos + piece.len();
        tokens.push((text[..pos].chars().count() + 1, piece));
    }
    if tokens.is_empty() {
        return Err(err(1, "empty expression"));
    }
    let mut terms: Vec<(Coefficient, Option<(Word, Option<(ObjId, ObjId)>)>)> = Vec::new();
    let mut i = 0;
    let mut sign = ring.one();
    let mut expect_op = false;
    while i < tokens.len() {
        let (col, tok) = tokens[i];
        if expect_op {
            match tok {
                "+" => sign = ring.one(),
                "-" => sign = ring.one().neg(),
                _ => return Err(err(col, format!("expected + or -, found {tok}"))),
            }
            expect_op = false;
            i += 1;
            continue;
        }
        let mut coef = sign.clone();
        let mut tok = tok;
        if is_coefficient(tok) {
            let c = Coefficient::parse(ring, tok).map_err(|e| err(col, e.to_string()))?;
            coef = coef.mul(&c);
            let next = tokens.get(i + 1).map(|t| t.1);
            match next {
                None | Some("+") | Some("-") => {
                    terms.push((coef, None));
                    i += 1;
                    expect_op = true;
                    continue;
                }
                Some(t) => {
                    i += 1;
                    tok = t;
                }
            }
        } else if let Some(rest) = tok.strip_prefix('-') {
            coef = coef.neg();
            tok = rest;
        }
        let col = tokens[i].0;
        let parsed = parse_word(table, tok, col)?;
        terms.push((coef, Some(parsed)));
        i += 1;
        expect_op = true;
    }
    if !expect_op {
        return Err(err(tokens.last().unwrap().0, "dangling operator"));
    }
    let mut bnd = boundary;
    for (_, t) in &terms {
        if let Some((_, Some(b))) = t {
            match bnd {
                None => bnd = Some(*b),
                Some(x) if x != *b => {
                    return Err(err(1, "terms have different boundaries"));
                }
                _ => {}
            }
        }
    }
    let (src, tgt) = match bnd {
        Some(b) => b,
        None => {
            let is_zero_only = terms.iter().all(|(c, t)| t.is_none() && c.is_zero());
            if is_zero_only {
                return Err(err(1, "cannot infer boundary of 0"));
            }
            return Err(err(1, "cannot infer boundary of a scalar; write 1_{X}"));
        }
    };
    let mut p = NcPoly::zero(ring, src, tgt);
    for (c, t) in terms {
        match t {
            None => {
                if c.is_zero() {
                    continue;
                }
                if src != tgt {
                    return Err(err(1, "scalar term between distinct objects"));
                }
                p.add_term(Word::empty(), c);
            }
            Some((w, b)) => {
                if w.is_empty() && src != tgt {
                    return Err(err(1, "identity between distinct objects"));
                }
                if let Some(b) = b {
                    if b != (src, tgt) {
                        return Err(err(1, "term boundary does not match"));
                    }
                }
                p.add_term(w, c);
            }
        }
    }
    Ok(p)
}
