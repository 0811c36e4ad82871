use std::collections::HashMap;

use crate::flags::FlagType;
use crate::gfq::{Field, Matrix};

use super::{CodeError, FlagCode};

const MAGIC: &str = "flagcode v1";

impl FlagCode {
    /// Header line
    /// `flagcode v1 q=<q> n=<n> T=<d1,...> construction=<tag> dim=<dim>`,
    /// then every generator matrix in the matrix text form, separated by
    /// blank lines.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{MAGIC} q={} n={} T={} construction={} dim={}\n",
            self.field().order(),
            self.ambient(),
            self.flag_type().dims_text(),
            self.construction(),
            self.dimension()
        );
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            s.push_str(&g.to_text());
        }
        s
    }

    /// Parses [`FlagCode::to_text`] output and rebuilds the codebook.
    pub fn parse_text(text: &str) -> Result<FlagCode, CodeError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| CodeError::Parse("empty code file".into()))?;
        let rest = header
            .strip_prefix(MAGIC)
            .ok_or_else(|| CodeError::Parse(format!("expected {MAGIC:?} header")))?;
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for token in rest.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| CodeError::Parse(format!("bad header token {token:?}")))?;
            if fields.insert(key, value).is_some() {
                return Err(CodeError::Parse(format!("duplicate header key {key:?}")));
            }
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| CodeError::Parse(format!("missing header key {key:?}")))
        };
        let number = |key: &str| -> Result<usize, CodeError> {
            get(key)?
                .parse()
                .map_err(|_| CodeError::Parse(format!("header key {key:?} is not an integer")))
        };
        let q = number("q")?;
        let n = number("n")?;
        let dim = number("dim")?;
        let construction = get("construction")?;
        let field = Field::from_order(u32::try_from(q).map_err(|_| CodeError::Parse("q too large".into()))?)?;
        let ftype = FlagType::parse_dims(n, get("T")?)?;
        if fields.len() != 5 {
            return Err(CodeError::Parse("unexpected header keys".into()));
        }

        let mut body = lines.filter(|l| !l.trim().is_empty()).peekable();
        let mut generators = Vec::new();
        while body.peek().is_some() {
            generators.push(Matrix::parse_lines(&field, &mut body)?);
        }
        FlagCode::new(&field, ftype, construction, dim, generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{code_checkerboard, code_derived, code_lifted, code_sandwich, mrd_field_rep};

    #[test]
    fn round_trip_is_bit_exact() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let codes = vec![
            code_derived(&f2, 4, 1).unwrap(),
            code_derived(&f2, 3, 2).unwrap(),
            code_lifted(&mrd_field_rep(&f3, 2).unwrap(), 4).unwrap(),
            code_sandwich(1, &mrd_field_rep(&f3, 1).unwrap(), &mrd_field_rep(&f3, 2).unwrap()).unwrap(),
            code_checkerboard(&[mrd_field_rep(&f2, 1).unwrap(), mrd_field_rep(&f2, 2).unwrap()]).unwrap(),
        ];
        for code in codes {
            let text = code.to_text();
            let back = FlagCode::parse_text(&text).unwrap();
            assert_eq!(back, code);
            assert_eq!(back.codebook(), code.codebook());
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn header_format() {
        let code = code_derived(&Field::prime(2).unwrap(), 3, 1).unwrap();
        let text = code.to_text();
        assert_eq!(
            text,
            "flagcode v1 q=2 n=3 T=1,2 construction=derived dim=1\n3 3 2\n1 0 0\n0 1 0\n0 0 1\n\n3 3 2\n1 0 1\n0 1 0\n0 0 1\n"
        );
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "flagcode v2 q=2 n=2 T=1 construction=x dim=0\n",
            "flagcode v1 q=6 n=2 T=1 construction=x dim=0\n2 2 6\n1 0\n0 1\n",
            "flagcode v1 q=2 n=2 T=1 construction=x\n2 2 2\n1 0\n0 1\n",
            "flagcode v1 q=2 n=2 T=1 construction=x dim=1\n2 2 2\n1 0\n0 1\n",
            "flagcode v1 q=2 n=2 T=1 construction=x dim=0\n2 2 2\n1 0\n",
            "flagcode v1 q=2 n=2 T=1 construction=x dim=0 extra=1\n2 2 2\n1 0\n0 1\n",
        ] {
            assert!(FlagCode::parse_text(bad).is_err(), "{bad:?}");
        }
        assert!(FlagCode::parse_text("flagcode v1 q=2 n=2 T=1 construction=x dim=0\n2 2 2\n1 0\n0 1\n").is_ok());
    }
}
