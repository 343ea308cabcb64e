//! Structural predicates on single operations and on bases.

use crate::algebra::{Algebra, Domain, Elem, Operation, A, B};
use crate::error::{Error, Result};

/// Largest arity accepted by [`classify_coordinates`].
pub const CLASSIFY_CAP: usize = 20;

/// Projectivity verdict for one basis operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpProjectivity {
    pub op: String,
    /// Least coordinate satisfying the condition.
    pub coordinate: Option<usize>,
    /// When no coordinate works: for each coordinate, the least violating
    /// argument tuple.
    pub violations: Vec<(usize, Vec<Elem>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityReport {
    pub projective: bool,
    pub per_op: Vec<OpProjectivity>,
}

fn in_mask(m: u8, e: Elem) -> bool {
    m >> e & 1 == 1
}

/// Least tuple breaking the condition at coordinate `i`, if any.
fn violation_at(f: &Operation, i: usize, alpha: u8, beta: u8) -> Option<Vec<Elem>> {
    f.rows().find_map(|(x, v)| {
        let bad = (in_mask(alpha, x[i]) && !in_mask(alpha, v)) || (in_mask(beta, x[i]) && !in_mask(beta, v));
        bad.then_some(x)
    })
}

/// Least coordinate `i` with `x_i ∈ α ⇒ f(x) ∈ α` and `x_i ∈ β ⇒ f(x) ∈ β`.
pub fn projective_coordinate(f: &Operation, alpha: u8, beta: u8) -> Option<usize> {
    (0..f.arity()).find(|&i| violation_at(f, i, alpha, beta).is_none())
}

/// Same test on a bare table of the given arity.
pub fn table_projective_coordinate(table: &[Elem], size: usize, arity: usize, alpha: u8, beta: u8) -> Option<usize> {
    let f = Operation::from_table("g", size, arity, table.to_vec()).ok()?;
    projective_coordinate(&f, alpha, beta)
}

/// αβ-projectivity of a basis (which carries over to every term operation).
pub fn is_alpha_beta_projective(alg: &Algebra, alpha: u8, beta: u8) -> Result<ProjectivityReport> {
    let full = alg.domain().full_mask();
    if alpha | beta != full || alpha & beta == 0 {
        return Err(Error::invalid("need alpha ∪ beta = D and alpha ∩ beta nonempty"));
    }
    let per_op: Vec<OpProjectivity> = alg
        .basis()
        .iter()
        .map(|f| {
            let coordinate = projective_coordinate(f, alpha, beta);
            let violations = if coordinate.is_some() {
                Vec::new()
            } else {
                (0..f.arity())
                    .filter_map(|i| violation_at(f, i, alpha, beta).map(|x| (i, x)))
                    .collect()
            };
            OpProjectivity { op: f.name().to_string(), coordinate, violations }
        })
        .collect();
    Ok(ProjectivityReport { projective: per_op.iter().all(|p| p.coordinate.is_some()), per_op })
}

/// Coordinate label from the a→b / b→a break pattern on `{a,b}^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordinateClass {
    /// a→b breaks only.
    ClassI,
    /// b→a breaks only.
    ClassII,
    /// Both kinds.
    ClassIII,
    None,
}

impl std::fmt::Display for CoordinateClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CoordinateClass::ClassI => "CLASS_I",
            CoordinateClass::ClassII => "CLASS_II",
            CoordinateClass::ClassIII => "CLASS_III",
            CoordinateClass::None => "NONE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateReport {
    pub class: CoordinateClass,
    /// Least tuple with `x_i = a` mapping to `b`.
    pub a_to_b: Option<Vec<Elem>>,
    /// Least tuple with `x_i = b` mapping to `a`.
    pub b_to_a: Option<Vec<Elem>>,
}

pub fn classify_coordinates(f: &Operation) -> Result<Vec<CoordinateReport>> {
    let k = f.arity();
    if k > CLASSIFY_CAP {
        return Err(Error::Cap(format!("coordinate classification needs arity <= {CLASSIFY_CAP}, got {k}")));
    }
    if f.size() < 2 {
        return Err(Error::invalid("domain too small"));
    }
    let mut reports = vec![CoordinateReport { class: CoordinateClass::None, a_to_b: None, b_to_a: None }; k];
    for bits in 0u32..(1u32 << k) {
        let x: Vec<Elem> = (0..k).map(|i| if bits >> (k - 1 - i) & 1 == 1 { B } else { A }).collect();
        let v = f.apply(&x);
        for (i, rep) in reports.iter_mut().enumerate() {
            if x[i] == A && v == B && rep.a_to_b.is_none() {
                rep.a_to_b = Some(x.clone());
            }
            if x[i] == B && v == A && rep.b_to_a.is_none() {
                rep.b_to_a = Some(x.clone());
            }
        }
    }
    for rep in &mut reports {
        rep.class = match (rep.a_to_b.is_some(), rep.b_to_a.is_some()) {
            (true, false) => CoordinateClass::ClassI,
            (false, true) => CoordinateClass::ClassII,
            (true, true) => CoordinateClass::ClassIII,
            (false, false) => CoordinateClass::None,
        };
    }
    Ok(reports)
}

/// Image of `f` with coordinate `i` pinned to `mask` and the others free.
pub fn pinned_image(f: &Operation, i: usize, mask: u8) -> u8 {
    let full = ((1u16 << f.size()) - 1) as u8;
    let mut sets = vec![full; f.arity()];
    sets[i] = mask;
    f.image_of_masks(&sets)
}

/// Generalised Hubie-pol test: pinning any coordinate `i` to `word[i]`
/// still leaves the whole domain as image.
pub fn is_generalized_hubie_pol(f: &Operation, word: &[Elem]) -> Result<bool> {
    if word.len() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: word.len() });
    }
    let full = ((1u16 << f.size()) - 1) as u8;
    Ok(word.iter().enumerate().all(|(i, &z)| pinned_image(f, i, 1 << z) == full))
}

/// Hubie-pol in a single element.
pub fn is_hubie_pol(f: &Operation, z: Elem) -> bool {
    is_generalized_hubie_pol(f, &vec![z; f.arity()]).unwrap_or(false)
}

pub fn render_report(d: &Domain, r: &ProjectivityReport) -> Vec<String> {
    r.per_op
        .iter()
        .map(|p| match p.coordinate {
            Some(i) => format!("{} coordinate={i}", p.op),
            None => {
                let v: Vec<String> = p.violations.iter().map(|(i, x)| format!("{i}:{}", d.fmt_tuple(x))).collect();
                format!("{} violations={}", p.op, v.join(","))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{algebra_rs, algebra_s, named, NamedOp};

    const AC: u8 = 0b101;
    const BC: u8 = 0b110;

    #[test]
    fn projectivity_examples() {
        let r = is_alpha_beta_projective(&algebra_s(), AC, BC).unwrap();
        assert!(r.projective);
        assert_eq!(r.per_op[0].coordinate, Some(0));
        let r = is_alpha_beta_projective(&algebra_rs(), AC, BC).unwrap();
        assert!(!r.projective);
        assert_eq!(r.per_op[0].violations[0], (0, vec![A, B, B, B]));
        assert!(is_alpha_beta_projective(&algebra_s(), 0b001, 0b110).is_err());
    }

    #[test]
    fn classes_of_r_and_s() {
        let r = classify_coordinates(&named(NamedOp::R).unwrap()).unwrap();
        let cls: Vec<_> = r.iter().map(|c| c.class).collect();
        use CoordinateClass::*;
        assert_eq!(cls, vec![ClassI, ClassI, ClassII, ClassII]);
        assert_eq!(r[0].a_to_b, Some(vec![A, B, B, B]));
        let s = classify_coordinates(&named(NamedOp::S).unwrap()).unwrap();
        assert!(s.iter().all(|c| c.class == None));
    }

    #[test]
    fn hubie_examples() {
        let f = named(NamedOp::FA(3)).unwrap();
        assert!(is_hubie_pol(&f, B));
        assert!(!is_hubie_pol(&f, A));
        let p = Operation::projection(3, 2, 0).unwrap();
        assert!(!is_generalized_hubie_pol(&p, &[A, B]).unwrap());
        assert!(is_generalized_hubie_pol(&p, &[A]).is_err());
    }
}
