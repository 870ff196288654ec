//! Text format for custom magic-square specs.
//!
//! ```text
//! # comments start with '#'
//! n 8
//! rows m                # every row; `m` is the magic constant
//! cols m
//! diags m               # both diagonals
//! row 3 260
//! col 2 260
//! diag main m
//! diag anti m
//! block 3 3 4 4 2m      # anchor row, anchor col, height, width, target
//! cells 1,1 1,8 8,1 8,8 130
//! ```
//!
//! Rows, columns and anchors are 1-indexed. The last token of every entry is
//! the target: an integer, `m`, or an integer multiple such as `2m`.

use crate::error::EnergyError;

use super::magic::{block_cells, magic_constant, Constraint, MagicSpec};

pub fn parse_magic_spec(text: &str) -> Result<MagicSpec, EnergyError> {
    let mut n: Option<usize> = None;
    let mut constraints = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |reason: String| EnergyError::Syntax { line, reason };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let keyword = tokens[0];

        if keyword == "n" {
            if n.is_some() {
                return Err(err("n given twice".into()));
            }
            match tokens.as_slice() {
                [_, v] => n = Some(parse_index(v, "n").map_err(err)?),
                _ => return Err(err("expected `n <size>`".into())),
            }
            continue;
        }

        let Some(n) = n else {
            return Err(err("the first entry must be `n <size>`".into()));
        };
        if tokens.len() < 2 {
            return Err(err(format!("{keyword}: missing target")));
        }
        let target = parse_target(tokens[tokens.len() - 1], n).map_err(err)?;
        let args = &tokens[1..tokens.len() - 1];

        match (keyword, args) {
            ("rows", []) | ("cols", []) | ("diags", []) => {
                let lines = MagicSpec::lines(n);
                let picked: Vec<Constraint> = match keyword {
                    "rows" => lines.into_iter().take(n).collect(),
                    "cols" => lines.into_iter().skip(n).take(n).collect(),
                    _ => lines.into_iter().skip(2 * n).collect(),
                };
                constraints.extend(picked.into_iter().map(|c| Constraint { target, ..c }));
            }
            ("row", [r]) | ("col", [r]) => {
                let idx = parse_index(r, keyword).map_err(err)?;
                if idx > n {
                    return Err(err(format!("{keyword} {idx} exceeds n = {n}")));
                }
                let offset = if keyword == "row" { 0 } else { n };
                let mut c = MagicSpec::lines(n).swap_remove(offset + idx - 1);
                c.target = target;
                constraints.push(c);
            }
            ("diag", [which]) => {
                let offset = match *which {
                    "main" => 0,
                    "anti" => 1,
                    other => return Err(err(format!("unknown diagonal {other:?}"))),
                };
                let mut c = MagicSpec::lines(n).swap_remove(2 * n + offset);
                c.target = target;
                constraints.push(c);
            }
            ("block", [r, c, h, w]) => {
                let [r, c, h, w] = [r, c, h, w].map(|t| parse_index(t, "block"));
                let (r, c, h, w) = (
                    r.map_err(err)?,
                    c.map_err(err)?,
                    h.map_err(err)?,
                    w.map_err(err)?,
                );
                if r - 1 + h > n || c - 1 + w > n {
                    return Err(EnergyError::OutOfBounds {
                        label: format!("block {r} {c} {h} {w}"),
                        n,
                    });
                }
                constraints.push(Constraint {
                    label: format!("block {r} {c} {h} {w}"),
                    cells: block_cells(n, r - 1, c - 1, h, w),
                    target,
                });
            }
            ("cells", pairs) if !pairs.is_empty() => {
                let mut cells = Vec::with_capacity(pairs.len());
                for p in pairs {
                    let (r, c) = p
                        .split_once(',')
                        .ok_or_else(|| err(format!("expected row,col, got {p:?}")))?;
                    let r = parse_index(r, "cells").map_err(err)?;
                    let c = parse_index(c, "cells").map_err(err)?;
                    if r > n || c > n {
                        return Err(err(format!("cell {r},{c} outside {n}x{n}")));
                    }
                    cells.push((r - 1) * n + (c - 1));
                }
                constraints.push(Constraint {
                    label: format!("cells {}", pairs.join(" ")),
                    cells,
                    target,
                });
            }
            _ => return Err(err(format!("unrecognised entry {content:?}"))),
        }
    }

    let n = n.ok_or(EnergyError::Syntax {
        line: 0,
        reason: "missing `n <size>`".into(),
    })?;
    MagicSpec::new(n, constraints)
}

fn parse_index(tok: &str, what: &str) -> Result<usize, String> {
    match tok.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("{what}: expected a positive integer, got {tok:?}")),
    }
}

fn parse_target(tok: &str, n: usize) -> Result<i64, String> {
    let m = magic_constant(n) as i64;
    if tok == "m" {
        return Ok(m);
    }
    if let Some(k) = tok.strip_suffix('m') {
        return k
            .parse::<i64>()
            .map(|k| k * m)
            .map_err(|_| format!("bad target {tok:?}"));
    }
    tok.parse::<i64>()
        .map_err(|_| format!("bad target {tok:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{build_magic_spec, MagicVariant};

    #[test]
    fn shorthand_matches_classic8() {
        let text = "# classic\nn 8\nrows m\ncols m\ndiags m\nblock 3 3 4 4 2m\n";
        let parsed = parse_magic_spec(text).unwrap();
        assert_eq!(parsed, build_magic_spec(&MagicVariant::Classic8).unwrap());
    }

    #[test]
    fn single_entries() {
        let text = "n 4\nrow 2 34\ncol 4 m\ndiag anti 34\ncells 1,1 4,4 17 # corners\n";
        let spec = parse_magic_spec(text).unwrap();
        let c = spec.constraints();
        assert_eq!(c.len(), 4);
        assert_eq!(c[0].cells, vec![4, 5, 6, 7]);
        assert_eq!(c[1].cells, vec![3, 7, 11, 15]);
        assert_eq!(c[1].target, 34);
        assert_eq!(c[2].cells, vec![3, 6, 9, 12]);
        assert_eq!(c[3].cells, vec![0, 15]);
        assert_eq!(c[3].target, 17);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_magic_spec("rows m\n").is_err());
        assert!(parse_magic_spec("").is_err());
        assert!(parse_magic_spec("n 4\nrow 5 34\n").is_err());
        assert!(parse_magic_spec("n 4\nblock 3 3 4 4 m\n").is_err());
        assert!(parse_magic_spec("n 4\ndiag sideways m\n").is_err());
        assert!(parse_magic_spec("n 4\ncells 1,1 1,1 5\n").is_err());
        assert!(parse_magic_spec("n 4\nrow 1 x\n").is_err());
        assert!(parse_magic_spec("n 4\nrow\n").is_err());
    }
}
