//! Textual group expressions.
//!
//! ```text
//! C(n)  D(2n)  S(n)  A(n)  E(p^3)  G375
//! prod(X, Y)
//! semi(N, H, action=<trivial|inv|pow<k>|companion>)
//! file(<path>)
//! ```

use std::path::PathBuf;
use std::str::FromStr;

use crate::build::{GroupSpec, NamedAction};
use crate::error::{Error, Result};

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {tok:?}")))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a group constructor"));
        }
        let start = self.pos;
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.rest().as_bytes();
        let mut len = usize::from(bytes.first() == Some(&b'-'));
        while len < bytes.len() && bytes[len].is_ascii_digit() {
            len += 1;
        }
        self.src[start..start + len]
            .parse()
            .inspect(|_| self.pos += len)
            .map_err(|_| self.error("expected an integer"))
    }

    fn uint(&mut self) -> Result<u64> {
        let at = self.pos;
        let v = self.int()?;
        u64::try_from(v).map_err(|_| Error::Parse {
            pos: at,
            msg: "expected a non-negative integer".into(),
        })
    }

    fn paren_uint(&mut self) -> Result<u64> {
        self.expect("(")?;
        let v = self.uint()?;
        self.expect(")")?;
        Ok(v)
    }

    fn expr(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?.to_string();
        match name.as_str() {
            "C" => Ok(GroupSpec::Cyclic(self.paren_uint()?)),
            "D" => Ok(GroupSpec::Dihedral(self.paren_uint()?)),
            "S" => Ok(GroupSpec::Symmetric(self.paren_uint()?)),
            "A" => Ok(GroupSpec::Alternating(self.paren_uint()?)),
            "E" => {
                self.expect("(")?;
                let p = self.uint()?;
                self.expect("^")?;
                let at = self.pos;
                if self.uint()? != 3 {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "only E(p^3) is supported".into(),
                    });
                }
                self.expect(")")?;
                Ok(GroupSpec::Extraspecial(p))
            }
            "G375" => Ok(GroupSpec::Group375),
            "prod" => {
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                Ok(GroupSpec::prod(a, b))
            }
            "semi" => {
                self.expect("(")?;
                let n = self.expr()?;
                self.expect(",")?;
                let h = self.expr()?;
                self.expect(",")?;
                self.expect("action")?;
                self.expect("=")?;
                let action = self.action()?;
                self.expect(")")?;
                Ok(GroupSpec::semi(n, h, action))
            }
            "file" => {
                self.expect("(")?;
                self.skip_ws();
                let end = self
                    .rest()
                    .find(')')
                    .ok_or_else(|| self.error("unterminated file(...)"))?;
                let path = self.rest()[..end].trim().to_string();
                if path.is_empty() {
                    return Err(self.error("empty path"));
                }
                self.pos += end + 1;
                Ok(GroupSpec::CayleyFile(PathBuf::from(path)))
            }
            _ => Err(Error::Parse {
                pos: start,
                msg: format!("unknown constructor {name:?}"),
            }),
        }
    }

    fn action(&mut self) -> Result<NamedAction> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("pow") {
            return Ok(NamedAction::Power(self.int()?));
        }
        match self.ident()? {
            "trivial" => Ok(NamedAction::Trivial),
            "inv" => Ok(NamedAction::Inverse),
            "companion" => Ok(NamedAction::Companion),
            other => Err(Error::Parse {
                pos: start,
                msg: format!("unknown action {other:?}"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_every_constructor() {
        let cases = [
            "C(12)",
            "D(10)",
            "S(3)",
            "A(4)",
            "E(5^3)",
            "G375",
            "prod(C(6), S(3))",
            "semi(C(7), C(3), action=pow2)",
            "semi(prod(C(5), C(5)), C(3), action=companion)",
            "semi(C(5), C(2), action=inv)",
            "semi(C(5), C(2), action=pow-1)",
            "file(tables/broken.cayley)",
        ];
        for c in cases {
            let spec: GroupSpec = c.parse().unwrap();
            assert_eq!(spec.to_string(), c);
        }
        let spaced: GroupSpec = "  prod( C( 6 ) ,S(3) ) ".parse().unwrap();
        assert_eq!(spaced.to_string(), "prod(C(6), S(3))");
    }

    #[test]
    fn reports_error_position() {
        let err = "prod(C(6), X(3))".parse::<GroupSpec>().unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                pos: 11,
                msg: "unknown constructor \"X\"".into()
            }
        );
        assert!(matches!(
            "C(6".parse::<GroupSpec>(),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            "C(6) x".parse::<GroupSpec>(),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            "E(5^2)".parse::<GroupSpec>(),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            "C(-1)".parse::<GroupSpec>(),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!("semi(C(5), C(2), action=rot)".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
    }

    fn leaf() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1u64..40).prop_map(GroupSpec::Cyclic),
            (1u64..20).prop_map(|n| GroupSpec::Dihedral(2 * n)),
            (1u64..7).prop_map(GroupSpec::Symmetric),
            (1u64..7).prop_map(GroupSpec::Alternating),
            Just(GroupSpec::Extraspecial(3)),
            Just(GroupSpec::Group375),
        ]
    }

    fn spec() -> impl Strategy<Value = GroupSpec> {
        leaf().prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| GroupSpec::prod(a, b)),
                (inner.clone(), inner, -3i64..4).prop_map(|(a, b, k)| GroupSpec::semi(
                    a,
                    b,
                    NamedAction::Power(k)
                )),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parses_back(s in spec()) {
            let text = s.to_string();
            prop_assert_eq!(text.parse::<GroupSpec>().unwrap(), s);
        }
    }
}
