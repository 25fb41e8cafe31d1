//! The algebra file format and the cocycle expression syntax.
//!
//! Algebra files are line-based and whitespace-insensitive, with `#`
//! comments:
//!
//! ```text
//! # optional comment
//! name A_3
//! dim 4
//! field Q            # or: field gf 3
//! e1 e2 -> e3        # or with coefficients: e1 e2 -> 1*e3 + -2/3*e4
//! e1 e3 -> e4
//! ```
//!
//! Unlisted pairs multiply to zero. Rendering is canonical: pairs in
//! lexicographic order, terms by ascending basis index, so
//! `render(parse(t))` canonicalizes `t` and `parse(render(a)) == a`.
//!
//! Cocycle expressions name elementary skew forms by their index pair:
//! `d34`, `d14+d23`, `2*d24`, with coefficients in the ambient field
//! (`dI,J` for indices past 9).

use crate::algebra::Algebra;
use crate::cohomology::SkewForm;
use crate::error::{Error, Result};
use crate::linalg::pairs;
use crate::scalar::{FieldSpec, Scalar};

/// Parses the algebra file format.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut field: Option<FieldSpec> = None;
    let mut products: Vec<(usize, usize, Vec<Scalar>, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "name" => {
                let value: Vec<&str> = words.collect();
                if value.is_empty() {
                    return Err(err("name needs a value".into()));
                }
                name = Some(value.join(" "));
            }
            "dim" => {
                let value = words
                    .next()
                    .ok_or_else(|| err("dim needs a value".into()))?;
                dim = Some(
                    value
                        .parse()
                        .map_err(|_| err(format!("bad dimension {value:?}")))?,
                );
                if words.next().is_some() {
                    return Err(err("trailing tokens after dim".into()));
                }
            }
            "field" => {
                let kind = words
                    .next()
                    .ok_or_else(|| err("field needs a value".into()))?;
                let spec = match kind {
                    "Q" | "q" => FieldSpec::Rationals,
                    "gf" | "GF" => {
                        let p = words
                            .next()
                            .ok_or_else(|| err("gf needs a prime".into()))?;
                        let p: u64 = p
                            .parse()
                            .map_err(|_| err(format!("bad prime {p:?}")))?;
                        FieldSpec::prime_field(p).map_err(|e| err(e.to_string()))?
                    }
                    other => return Err(err(format!("unknown field {other:?}"))),
                };
                if words.next().is_some() {
                    return Err(err("trailing tokens after field".into()));
                }
                field = Some(spec);
            }
            _ => {
                // Product line: "eI eJ -> terms".
                let d = dim.ok_or_else(|| err("product line before dim".into()))?;
                let f = field.ok_or_else(|| err("product line before field".into()))?;
                let i = parse_basis_index(head, d).map_err(|m| err(m))?;
                let j_tok = words
                    .next()
                    .ok_or_else(|| err("product line needs two factors".into()))?;
                let j = parse_basis_index(j_tok, d).map_err(|m| err(m))?;
                let arrow = words.next();
                if arrow != Some("->") {
                    return Err(err("expected '->' after the factors".into()));
                }
                if i >= j {
                    return Err(err(format!(
                        "products are stored with i < j; rewrite e{} e{} via anticommutativity",
                        i + 1,
                        j + 1
                    )));
                }
                let rhs: String = words.collect::<Vec<_>>().join(" ");
                if rhs.is_empty() {
                    return Err(err("product line needs a right-hand side".into()));
                }
                let coeffs = parse_combination(&rhs, d, f).map_err(|m| err(m))?;
                products.push((i, j, coeffs, lineno));
            }
        }
    }

    let dim = dim.ok_or(Error::Parse {
        line: 0,
        message: "missing dim directive".into(),
    })?;
    let field = field.ok_or(Error::Parse {
        line: 0,
        message: "missing field directive".into(),
    })?;
    let mut algebra = Algebra::trivial(dim, field)?;
    if let Some(n) = name {
        algebra = algebra.with_name(n);
    }
    let mut seen = std::collections::HashSet::new();
    for (i, j, coeffs, lineno) in products {
        if !seen.insert((i, j)) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("duplicate product line for e{} e{}", i + 1, j + 1),
            });
        }
        algebra.set_product(i, j, coeffs)?;
    }
    Ok(algebra)
}

/// "eK" with 1-based K; returns the 0-based index.
fn parse_basis_index(token: &str, dim: usize) -> std::result::Result<usize, String> {
    let digits = token
        .strip_prefix('e')
        .ok_or_else(|| format!("expected a basis vector, got {token:?}"))?;
    let k: usize = digits
        .parse()
        .map_err(|_| format!("bad basis index {token:?}"))?;
    if k == 0 || k > dim {
        return Err(format!("basis index {k} out of range 1..={dim}"));
    }
    Ok(k - 1)
}

/// "c1*eK1 + c2*eK2 + ..." into a coefficient vector.
fn parse_combination(
    text: &str,
    dim: usize,
    field: FieldSpec,
) -> std::result::Result<Vec<Scalar>, String> {
    let mut coeffs = vec![field.zero(); dim];
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err("empty term in combination".into());
        }
        let (scalar, vector) = match term.split_once('*') {
            Some((c, v)) => {
                let s = field
                    .parse_scalar(c.trim())
                    .map_err(|e| e.to_string())?;
                (s, v.trim())
            }
            None => match term.strip_prefix('-') {
                Some(rest) if rest.trim_start().starts_with('e') => {
                    (field.integer(-1), rest.trim_start())
                }
                _ => (field.one(), term),
            },
        };
        let k = parse_basis_index(vector, dim)?;
        coeffs[k] = &coeffs[k] + &scalar;
    }
    Ok(coeffs)
}

/// Renders an algebra in canonical file form.
pub fn render_algebra(a: &Algebra) -> String {
    let mut out = String::new();
    if let Some(name) = a.name() {
        out.push_str(&format!("name {name}\n"));
    }
    out.push_str(&format!("dim {}\n", a.dim()));
    out.push_str(&format!("field {}\n", a.field()));
    for (i, j) in pairs(a.dim()) {
        let coeffs = a.pair_table(i, j);
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                if c.is_one() {
                    format!("e{}", k + 1)
                } else {
                    format!("{}*e{}", c, k + 1)
                }
            })
            .collect();
        out.push_str(&format!("e{} e{} -> {}\n", i + 1, j + 1, terms.join(" + ")));
    }
    out
}

/// Parses a cocycle expression like `d34`, `d14+d23` or `2*d24 + -1*d13`.
pub fn parse_cocycle(text: &str, dim: usize, field: FieldSpec) -> Result<SkewForm> {
    let bad = |msg: String| Error::InvalidArgument(format!("bad cocycle {text:?}: {msg}"));
    let mut form = SkewForm::zero(dim, field);
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(bad("empty term".into()));
        }
        let (scalar, pair_tok) = match term.split_once('*') {
            Some((c, v)) => {
                let s = field.parse_scalar(c.trim())?;
                (s, v.trim())
            }
            None => match term.strip_prefix('-') {
                Some(rest) if rest.trim_start().starts_with('d') => {
                    (field.integer(-1), rest.trim_start())
                }
                _ => (field.one(), term),
            },
        };
        let digits = pair_tok
            .strip_prefix('d')
            .ok_or_else(|| bad(format!("expected dIJ, got {pair_tok:?}")))?;
        let (i, j) = if let Some((a, b)) = digits.split_once(',') {
            let i: usize = a.parse().map_err(|_| bad(format!("bad index {a:?}")))?;
            let j: usize = b.parse().map_err(|_| bad(format!("bad index {b:?}")))?;
            (i, j)
        } else if digits.len() == 2 {
            let mut chars = digits.chars();
            let i = chars.next().unwrap().to_digit(10).ok_or_else(|| bad("bad digit".into()))?;
            let j = chars.next().unwrap().to_digit(10).ok_or_else(|| bad("bad digit".into()))?;
            (i as usize, j as usize)
        } else {
            return Err(bad(format!("cannot read index pair from {pair_tok:?}")));
        };
        if i == 0 || j == 0 || i > dim || j > dim {
            return Err(bad(format!("indices d{i},{j} out of range 1..={dim}")));
        }
        if i >= j {
            return Err(bad(format!("indices must satisfy i < j, got d{i},{j}")));
        }
        let unit = SkewForm::basis_form(dim, field, i - 1, j - 1).scale(&scalar);
        form = form.add(&unit)?;
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_the_extension_base() {
        let text = "name A_3\ndim 4\nfield Q\ne1 e2 -> e3\ne1 e3 -> e4\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.name(), Some("A_3"));
        assert_eq!(a.pair_table(0, 1)[2], FieldSpec::Rationals.one());
        assert_eq!(render_algebra(&a), text);
    }

    #[test]
    fn parse_trivial_finite_field_algebra() {
        let a = parse_algebra("dim 2\nfield gf 3\n").unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.field(), FieldSpec::prime_field(3).unwrap());
        assert!(a.pair_table(0, 1).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn parse_five_dimensional_entry() {
        let text = "dim 5\nfield Q\ne1 e2 -> e3\ne1 e3 -> e4\ne3 e4 -> e5\n";
        let a = parse_algebra(text).unwrap();
        let expected =
            Algebra::from_unit_products(5, FieldSpec::Rationals, &[(1, 2, 3), (1, 3, 4), (3, 4, 5)])
                .unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn parse_rejects_bad_input() {
        // Duplicate product line.
        let dup = "dim 3\nfield Q\ne1 e2 -> e3\ne1 e2 -> e3\n";
        assert!(matches!(parse_algebra(dup), Err(Error::Parse { line: 4, .. })));
        // Index out of range.
        let oob = "dim 3\nfield Q\ne1 e5 -> e3\n";
        assert!(parse_algebra(oob).is_err());
        // i >= j is rejected.
        let swapped = "dim 3\nfield Q\ne2 e1 -> e3\n";
        assert!(parse_algebra(swapped).is_err());
        // Characteristic 2.
        assert!(parse_algebra("dim 3\nfield gf 2\n").is_err());
        // Missing directives.
        assert!(parse_algebra("e1 e2 -> e3\n").is_err());
    }

    #[test]
    fn parse_coefficient_combinations() {
        let text = "dim 4\nfield Q\ne1 e2 -> 1*e3 + -2/3*e4\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.pair_table(0, 1)[3], Scalar::rational(-2, 3).unwrap());
        assert_eq!(render_algebra(&a), "dim 4\nfield Q\ne1 e2 -> e3 + -2/3*e4\n");
    }

    #[test]
    fn render_then_parse_round_trips() {
        let gf5 = FieldSpec::prime_field(5).unwrap();
        let mut a = Algebra::trivial(4, gf5).unwrap();
        a.set_product(
            0,
            2,
            vec![gf5.zero(), gf5.integer(3), gf5.zero(), gf5.integer(4)],
        )
        .unwrap();
        let text = render_algebra(&a);
        assert_eq!(parse_algebra(&text).unwrap(), a);
    }

    #[test]
    fn cocycle_expressions() {
        let q = FieldSpec::Rationals;
        let d34 = parse_cocycle("d34", 4, q).unwrap();
        assert_eq!(d34, SkewForm::basis_form(4, q, 2, 3));
        let sum = parse_cocycle("d14+d23", 4, q).unwrap();
        assert_eq!(sum.coeff(0, 3), q.one());
        assert_eq!(sum.coeff(1, 2), q.one());
        let scaled = parse_cocycle("2*d24", 4, q).unwrap();
        assert_eq!(scaled.coeff(1, 3), q.integer(2));
        let negated = parse_cocycle("-d12 + 1/2*d34", 4, q).unwrap();
        assert_eq!(negated.coeff(0, 1), q.integer(-1));
        assert_eq!(negated.coeff(2, 3), Scalar::rational(1, 2).unwrap());
        assert!(parse_cocycle("d43", 4, q).is_err());
        assert!(parse_cocycle("d99", 4, q).is_err());
        assert!(parse_cocycle("x34", 4, q).is_err());
        // Two-digit indices need the comma form.
        let wide = parse_cocycle("d1,12", 12, q).unwrap();
        assert_eq!(wide.coeff(0, 11), q.one());
    }

    #[test]
    fn cocycle_display_round_trips() {
        let q = FieldSpec::Rationals;
        for text in ["d34", "d14 + d23", "2*d24", "d12 + -2/3*d34"] {
            let form = parse_cocycle(text, 4, q).unwrap();
            let rendered = form.to_string();
            assert_eq!(parse_cocycle(&rendered, 4, q).unwrap(), form);
        }
    }
}
