//! Canonical printer: `parse(print(p))` is structurally identical to `p`.

use crate::field::Scalar;
use crate::presentation::Presentation;
use crate::quiver::Quiver;

use super::SourceFile;

pub fn print_presentation(p: &Presentation) -> SourceFile {
    let mut out = String::new();
    out.push_str(&format!("quiver {} over {} {{\n", p.name, p.field.dsl_name()));
    out.push_str(&format!(
        "  vertices: {};\n",
        p.quiver.vertex_names().join(", ")
    ));
    if !p.quiver.base_vertices().is_empty() {
        let base: Vec<&str> = p
            .quiver
            .base_vertices()
            .iter()
            .map(|v| p.quiver.vertex_name(*v))
            .collect();
        out.push_str(&format!("  base: {};\n", base.join(", ")));
    }
    if p.quiver.arrow_count() > 0 {
        let arrows: Vec<String> = p
            .quiver
            .arrows()
            .map(|(_, a)| {
                format!(
                    "{}: {} -> {}",
                    a.name,
                    p.quiver.vertex_name(a.source),
                    p.quiver.vertex_name(a.target)
                )
            })
            .collect();
        out.push_str(&format!("  arrows: {};\n", arrows.join(", ")));
    }
    if !p.relations.is_empty() {
        let rels: Vec<String> = p
            .relations
            .iter()
            .map(|r| print_poly(r, &p.quiver))
            .collect();
        out.push_str(&format!("  relations: {};\n", rels.join(", ")));
    }
    out.push_str("}\n");
    SourceFile {
        text: out,
        origin: "<printer>".into(),
    }
}

fn print_scalar_factor(c: &Scalar) -> String {
    let text = c.to_string();
    // composite cyclotomic scalars need parentheses to bind before `*`
    if text[1..].contains('+') || text[1..].contains('-') {
        format!("({text})")
    } else {
        text
    }
}

pub fn print_poly(poly: &crate::poly::NCPoly, quiver: &Quiver) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (path, coeff)) in poly.terms().enumerate() {
        let path_text = quiver.path_name(path);
        let coeff_text = if coeff.is_one() {
            path_text.clone()
        } else {
            format!("{}*{}", print_scalar_factor(coeff), path_text)
        };
        if idx == 0 {
            out.push_str(&coeff_text);
        } else if let Some(stripped) = coeff_text.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(&coeff_text);
        }
    }
    out
}
