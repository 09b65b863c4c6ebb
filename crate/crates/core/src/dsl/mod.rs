//! The `.quiv` presentation language and the JSON report schema.

use std::fmt;

use crate::presentation::Presentation;
use crate::superpotential::Superpotential;

mod lexer;
mod parser;
mod printer;
mod report;

pub use parser::{parse_presentation, parse_presentation_with_field};
pub use printer::{print_poly, print_presentation};
pub use report::{emit_report, emit_report_pretty, Report, SCHEMA_VERSION};

/// A unit of parser input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub text: String,
    pub origin: String,
}

impl SourceFile {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> SourceFile {
        SourceFile {
            text: text.into(),
            origin: origin.into(),
        }
    }

    /// Validates UTF-8 up front so that arbitrary bytes produce a diagnostic,
    /// never a panic.
    pub fn from_bytes(bytes: &[u8], origin: impl Into<String>) -> Result<SourceFile, ParseError> {
        match std::str::from_utf8(bytes) {
            Ok(text) => Ok(SourceFile::new(text, origin)),
            Err(e) => Err(ParseError {
                line: 1,
                col: e.valid_up_to() + 1,
                message: "input is not valid UTF-8".into(),
            }),
        }
    }
}

/// Parse failure with a position; every error carries a line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed presentation together with its superpotential, when the source
/// declared one.
#[derive(Debug, Clone)]
pub struct ParsedBundle {
    pub presentation: Presentation,
    pub superpotential: Option<Superpotential>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn parse(text: &str) -> Result<ParsedBundle, ParseError> {
        parse_presentation(&SourceFile::new(text, "<test>"))
    }

    #[test]
    fn one_point_quiver_parses() {
        let bundle = parse("quiver pt over Q { vertices: v; }").unwrap();
        assert_eq!(bundle.presentation.name, "pt");
        assert_eq!(bundle.presentation.quiver.vertex_count(), 1);
        assert_eq!(bundle.presentation.quiver.arrow_count(), 0);
        assert!(bundle.presentation.relations.is_empty());
    }

    #[test]
    fn unknown_vertex_is_located() {
        let err = parse("quiver p over Q { vertices: v; arrows: a: v -> M9; }").unwrap_err();
        assert!(err.message.contains("M9"), "{err}");
        assert_eq!(err.line, 1);
        assert!(err.col > 0);
    }

    #[test]
    fn zigzag_round_trips() {
        let text = "quiver zigzag over Q {\n  vertices: pt;\n  arrows: u: pt -> pt, v: pt -> pt;\n  relations: u^2, v^2;\n}\n";
        let bundle = parse(text).unwrap();
        let printed = print_presentation(&bundle.presentation);
        let reparsed = parse(&printed.text).unwrap();
        assert_eq!(bundle.presentation, reparsed.presentation);
    }

    #[test]
    fn prime_field_round_trips() {
        let text = "quiver m over F2 { vertices: a1, a2; arrows: x: a1 -> a2, y: a2 -> a1; relations: x*y*x, y*x*y; }";
        let bundle = parse(text).unwrap();
        assert_eq!(bundle.presentation.field, FieldSpec::PrimeField(2));
        let printed = print_presentation(&bundle.presentation);
        let reparsed = parse(&printed.text).unwrap();
        assert_eq!(bundle.presentation, reparsed.presentation);
    }

    #[test]
    fn non_uniform_relation_reported() {
        let err = parse(
            "quiver p over Q { vertices: v1, v2, v3; arrows: a: v1 -> v2, b: v1 -> v3; relations: a + b; }",
        )
        .unwrap_err();
        assert!(err.message.contains("non-uniform"), "{err}");
    }

    #[test]
    fn order_zero_component_reported() {
        let err = parse("quiver p over Q { vertices: v; arrows: u: v -> v; relations: u + e(v); }")
            .unwrap_err();
        assert!(err.message.contains("order-0"), "{err}");
    }

    #[test]
    fn zeta_requires_cyclotomic_field() {
        let err =
            parse("quiver p over Q { vertices: v; arrows: u: v -> v; relations: zeta3*u; }")
                .unwrap_err();
        assert!(err.message.contains("cyclotomic"), "{err}");
        let ok = parse(
            "quiver p over Q(zeta3) { vertices: v; arrows: u: v -> v; relations: zeta3*u^2; }",
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn field_override_changes_scalars() {
        let src = SourceFile::new(
            "quiver p over Q { vertices: v; arrows: u: v -> v; relations: 3*u^2 - u^3; }",
            "<test>",
        );
        let bundle =
            parse_presentation_with_field(&src, Some(FieldSpec::PrimeField(3))).unwrap();
        assert_eq!(bundle.presentation.field, FieldSpec::PrimeField(3));
        // 3*u^2 vanishes mod 3, leaving -u^3
        assert_eq!(bundle.presentation.relations.len(), 1);
        assert_eq!(bundle.presentation.relations[0].term_count(), 1);
    }

    #[test]
    fn superpotential_expands_to_relations() {
        // W = aba over one vertex: derivatives ba + ab (wrt a) and a^2 (wrt b)
        let bundle = parse(
            "quiver w over Q { vertices: pt; arrows: a: pt -> pt, b: pt -> pt; superpotential: a*b*a; }",
        )
        .unwrap();
        assert!(bundle.superpotential.is_some());
        assert_eq!(bundle.presentation.relations.len(), 2);
        let counts: Vec<usize> = bundle
            .presentation
            .relations
            .iter()
            .map(|r| r.term_count())
            .collect();
        assert_eq!(counts, vec![2, 1]);
    }

    #[test]
    fn rational_coefficients_parse() {
        let bundle = parse(
            "quiver h over Q { vertices: pt; arrows: a: pt -> pt; relations: 1/2*a^2 - a^3; }",
        )
        .unwrap();
        let printed = print_presentation(&bundle.presentation);
        assert_eq!(
            parse(&printed.text).unwrap().presentation,
            bundle.presentation
        );
    }

    #[test]
    fn division_by_zero_is_a_diagnostic() {
        let err = parse("quiver p over Q { vertices: v; arrows: u: v -> v; relations: 1/0*u; }")
            .unwrap_err();
        assert!(err.message.contains("zero"), "{err}");
    }
}
