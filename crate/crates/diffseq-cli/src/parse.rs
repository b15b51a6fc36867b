//! Recursive-descent parsers for polynomial and rational input.
//!
//! The polynomial grammar (whitespace-insensitive):
//!
//! ```text
//! poly     := term (('+' | '-') term)*
//! term     := rational ('*'? 'x' ('^' uint)?)? | 'x' ('^' uint)?
//! rational := int ('/' uint)?
//! ```

use std::fmt;

use diffseq_core::diffalg::Rational;
use diffseq_core::unipoly::UniPoly;
use num_traits::Zero;

/// A parse failure with its byte position and the tokens that would have
/// been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: expected {}",
            self.position,
            self.expected.join(" or ")
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            position: self.pos,
            expected: expected.to_vec(),
        }
    }

    /// An unsigned digit run as an arbitrary-precision integer.
    fn digits(&mut self) -> Result<num_bigint::BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(&["digit"]));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .expect("digit runs parse as integers"))
    }

    /// A small unsigned integer (exponents).
    fn uint(&mut self) -> Result<u64, ParseError> {
        let at = self.pos;
        u64::try_from(self.digits()?).map_err(|_| ParseError {
            position: at,
            expected: vec!["smaller exponent"],
        })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let negative = self.eat(b'-');
        let mut numerator = self.digits()?;
        if negative {
            numerator = -numerator;
        }
        if self.eat(b'/') {
            let at_denominator = self.pos;
            let denominator = self.digits()?;
            if num_traits::Zero::is_zero(&denominator) {
                return Err(ParseError {
                    position: at_denominator,
                    expected: vec!["nonzero denominator"],
                });
            }
            Ok(Rational::new(numerator, denominator))
        } else {
            Ok(Rational::from_integer(numerator))
        }
    }

    /// `term := rational ('*'? 'x' ('^' uint)?)? | 'x' ('^' uint)?`
    fn term(&mut self) -> Result<(Rational, usize), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok((Rational::from_integer(1.into()), self.exponent()?))
            }
            Some(b) if b == b'-' || b.is_ascii_digit() => {
                let coeff = self.rational()?;
                self.skip_ws();
                let explicit_star = self.eat(b'*');
                self.skip_ws();
                if self.eat(b'x') {
                    Ok((coeff, self.exponent()?))
                } else if explicit_star {
                    Err(self.error(&["'x'"]))
                } else {
                    Ok((coeff, 0))
                }
            }
            _ => Err(self.error(&["rational", "'x'"])),
        }
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            Ok(self.uint()? as usize)
        } else {
            Ok(1)
        }
    }

    fn poly(&mut self) -> Result<UniPoly, ParseError> {
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut add = |coeff: Rational, power: usize| {
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Rational::zero());
            }
            coeffs[power] += coeff;
        };
        let (c, e) = self.term()?;
        add(c, e);
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let (c, e) = self.term()?;
                    add(c, e);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let (c, e) = self.term()?;
                    add(-c, e);
                }
                None => break,
                _ => return Err(self.error(&["'+'", "'-'", "end of input"])),
            }
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

/// Parse a polynomial in `x`.
pub fn parse_poly(input: &str) -> Result<UniPoly, ParseError> {
    Parser::new(input).poly()
}

/// Parse a single rational, rejecting trailing input.
pub fn parse_rational(input: &str) -> Result<Rational, ParseError> {
    let mut parser = Parser::new(input);
    parser.skip_ws();
    let value = parser.rational()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error(&["end of input"]));
    }
    Ok(value)
}

/// Parse a comma-separated list of rationals.
pub fn parse_rational_list(input: &str) -> Result<Vec<Rational>, ParseError> {
    input.split(',').map(parse_rational).collect()
}

/// Parse a semicolon-separated list of polynomials.
pub fn parse_poly_list(input: &str) -> Result<Vec<UniPoly>, ParseError> {
    input.split(';').map(parse_poly).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use diffseq_core::diffalg::rat;

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse_poly("3/2*x^2-1").unwrap(),
            UniPoly::from_coeffs(vec![rat(-1, 1), rat(0, 1), rat(3, 2)])
        );
        assert_eq!(parse_poly("x").unwrap(), UniPoly::from_ints(&[0, 1]));
        assert_eq!(
            parse_poly("2x^3 + x - 5").unwrap(),
            UniPoly::from_ints(&[-5, 1, 0, 2])
        );
        assert_eq!(
            parse_poly(" 1 + x ^ 2 ").unwrap(),
            UniPoly::from_ints(&[1, 0, 1])
        );
        // Repeated powers accumulate.
        assert_eq!(parse_poly("x + x").unwrap(), UniPoly::from_ints(&[0, 2]));
    }

    #[test]
    fn zero_denominator_rejected() {
        let err = parse_poly("2/0").unwrap_err();
        assert_eq!(err.expected, vec!["nonzero denominator"]);
        assert_eq!(err.position, 2);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("3*").is_err());
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("1 + + 2").is_err());
        assert!(
            parse_poly("-x").is_err(),
            "terms start with a rational or x"
        );
        assert!(parse_poly("1 2").is_err());
    }

    #[test]
    fn arbitrary_precision_coefficients() {
        let huge = "123456789012345678901234567890";
        let p = parse_poly(&format!("{huge}*x - 1/{huge}")).unwrap();
        assert_eq!(p.coeff(1), huge.parse::<Rational>().unwrap());
        // Round trip through the canonical rendering.
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn rational_lists() {
        assert_eq!(
            parse_rational_list("1,-2/3, 4").unwrap(),
            vec![rat(1, 1), rat(-2, 3), rat(4, 1)]
        );
        assert!(parse_rational_list("1,,2").is_err());
        assert!(parse_rational("1/2 extra").is_err());
    }
}
