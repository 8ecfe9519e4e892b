use crate::ideal::Ideal;
use crate::mult::MultSet;
use crate::ring::{FiniteRing, HomLabel, RingHom, Shape};

pub fn render_ring(ring: &FiniteRing) -> String {
    match ring.shape() {
        Shape::Zmod { n } => format!("Z/{n}"),
        Shape::PolyQuot { n, var, modulus } => format!("Z/{n}[{var}]/({})", render_poly(modulus, var)),
        Shape::Product { left, right } => format!("product({}, {})", render_ring(left), render_ring(right)),
        Shape::Quotient { base, kernel_gens, .. } => {
            format!("quot({}, {})", render_ring(base), render_gens("ideal", base, kernel_gens))
        }
        Shape::Subring { parent, gens, .. } => {
            let mut out = format!("sub({}", render_ring(parent));
            for &g in gens {
                out.push_str(", ");
                out.push_str(&render_element(parent, g));
            }
            out.push(')');
            out
        }
        Shape::Amalgam { hom, hom_label, j_gens, .. } => format!(
            "amalg({}, {}, {})",
            render_ring(hom.source()),
            render_hom_labeled(hom, *hom_label),
            render_gens("ideal", hom.target(), j_gens)
        ),
    }
}

fn render_hom_labeled(hom: &RingHom, label: HomLabel) -> String {
    match label {
        HomLabel::Id => "id".into(),
        HomLabel::Reduce => format!("reduce({})", render_ring(hom.target())),
        HomLabel::Table => {
            let mut out = format!("table({}", render_ring(hom.target()));
            for &x in hom.table() {
                out.push_str(&format!(", {x}"));
            }
            out.push(')');
            out
        }
    }
}

/// `id` for an identity map, `reduce(B)` for a map out of `Z/n`, and an
/// explicit table otherwise.
pub fn render_hom(hom: &RingHom) -> String {
    let identity = hom.source().order() == hom.target().order()
        && **hom.source() == **hom.target()
        && hom.table().iter().enumerate().all(|(i, &x)| i == x);
    let label = if identity {
        HomLabel::Id
    } else if matches!(hom.source().shape(), Shape::Zmod { .. }) {
        HomLabel::Reduce
    } else {
        HomLabel::Table
    };
    render_hom_labeled(hom, label)
}

fn render_gens(head: &str, ring: &FiniteRing, gens: &[usize]) -> String {
    let parts: Vec<String> = gens.iter().map(|&g| render_element(ring, g)).collect();
    format!("{head}({})", parts.join(", "))
}

/// Coefficients low degree first.
fn render_poly(coeffs: &[usize], var: &str) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let power = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        terms.push(match (c, deg) {
            (_, 0) => c.to_string(),
            (1, _) => power,
            _ => format!("{c}*{power}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn render_element(ring: &FiniteRing, x: usize) -> String {
    match ring.shape() {
        Shape::Zmod { .. } => x.to_string(),
        Shape::PolyQuot { n, var, modulus } => {
            let deg = modulus.len() - 1;
            let mut coeffs = vec![0usize; deg];
            let mut rest = x;
            for c in coeffs.iter_mut() {
                *c = rest % n;
                rest /= n;
            }
            render_poly(&coeffs, var)
        }
        Shape::Product { left, right } => {
            let (a, b) = ring.unpair(x);
            format!("({}, {})", render_element(left, a), render_element(right, b))
        }
        Shape::Quotient { base, reps, .. } => render_element(base, reps[x]),
        Shape::Subring { parent, members, .. } => render_element(parent, members[x]),
        Shape::Amalgam { hom, pairs, .. } => {
            let (a, b) = pairs[x];
            format!("({}, {})", render_element(hom.source(), a), render_element(hom.target(), b))
        }
    }
}

/// `ideal(...)` with a least generating set; `ideal()` for the zero ideal.
pub fn render_ideal(ideal: &Ideal) -> String {
    render_gens("ideal", ideal.ring(), &ideal.minimal_generators())
}

pub fn render_multset(set: &MultSet) -> String {
    let gens = set.minimal_generators();
    let mut out = render_gens("mult", set.ring(), &gens);
    if !set.contains_one() {
        out.push_str("+noone");
    }
    out
}
