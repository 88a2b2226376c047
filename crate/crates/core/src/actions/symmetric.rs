use num_traits::One;

use crate::actions::Combination;
use crate::diagrams::{from_diagram, CupDiagram, DeltaWeight, Link};
use crate::error::{Error, Result};
use crate::homology::HomVector;
use crate::number::{rat, Rational};

fn check_index(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange { what: "generator", index: i, max });
    }
    Ok(())
}

/// The transposition `(i j)` acting on line diagrams by relabeling.
pub fn transposition(i: usize, j: usize, v: &HomVector) -> Result<HomVector> {
    check_index(i, v.size())?;
    check_index(j, v.size())?;
    Ok(v.map(|u| HomVector::line(v.size(), u.transpose(i, j))))
}

/// `s_i` on line diagrams.
pub fn s_line(i: usize, v: &HomVector) -> Result<HomVector> {
    check_index(i, v.size().saturating_sub(1))?;
    transposition(i, i + 1, v)
}

/// `e_i` on a diagram: stack a cap on `i, i+1` and add the cup `(i, i+1)`.
/// Returns `None` for zero.
fn e_i(i: usize, a: &CupDiagram) -> Result<Option<(CupDiagram, Rational)>> {
    let s = a.left();
    let mut cups: Vec<(usize, usize)> = a.cups();
    let drop = |cups: &mut Vec<(usize, usize)>, v: usize| cups.retain(|&(l, r)| l != v && r != v);
    let strand = match (a.link(i), a.link(i + 1)) {
        (Link::Ray, Link::Ray) => return Ok(None),
        (Link::Cup(p), _) if p == i + 1 => return Ok(Some((a.clone(), rat(-2)))),
        (Link::Ray, Link::Cup(_)) | (Link::Cup(_), Link::Ray) => None,
        (Link::Cup(x), Link::Cup(y)) => Some((x.min(y), x.max(y))),
    };
    drop(&mut cups, i);
    drop(&mut cups, i + 1);
    if let Some((l, r)) = strand {
        if l > s {
            return Ok(None);
        }
        cups.push((l, r));
    }
    cups.push((i, i + 1));
    let b = CupDiagram::from_cups(a.n(), a.m(), &cups).map_err(|e| Error::Internal(format!("skein move e_{i} on {:?}: {e}", a.cups())))?;
    Ok(Some((b, Rational::one())))
}

/// `s_i · L_α` through the skein relation `s_i = e_i + 1`.
pub fn s_skein(i: usize, alpha: &DeltaWeight) -> Result<Combination> {
    check_index(i, (alpha.n() - alpha.m()).saturating_sub(1))?;
    let mut out = Combination::new();
    out.add(alpha.clone(), Rational::one());
    if let Some((b, c)) = e_i(i, &alpha.cup_diagram())? {
        let beta = from_diagram(&b, alpha.k())
            .ok_or_else(|| Error::Internal(format!("no weight of type k = {} for {:?}", alpha.k(), b.cups())))?;
        out.add(beta, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{l_expand, Subset};

    fn w(s: &str) -> DeltaWeight {
        DeltaWeight::parse(s).unwrap()
    }

    #[test]
    fn line_relabeling() {
        let v = HomVector::line(4, Subset::from_elements(&[1, 4]));
        assert_eq!(s_line(1, &v).unwrap(), HomVector::line(4, Subset::from_elements(&[2, 4])));
        let x = l_expand(&w("v^^v|^v"));
        let y = s_line(3, &x).unwrap();
        let expect = HomVector::from_terms(4, [(Subset::from_elements(&[1, 3]), rat(1)), (Subset::from_elements(&[2, 3]), rat(-1))]);
        assert_eq!(y, expect);
        assert_eq!(s_line(3, &y).unwrap(), x);
        assert!(s_line(4, &x).is_err());
    }

    #[test]
    fn skein_example() {
        let a = w("v^^v|^v");
        let mut minus = Combination::new();
        minus.add(a.clone(), rat(-1));
        assert_eq!(s_skein(1, &a).unwrap(), minus);

        let s2 = s_skein(2, &a).unwrap();
        assert_eq!(s2.len(), 2);
        assert_eq!(s2.coefficient(&a), rat(1));
        assert_eq!(s2.coefficient(&w("^v^v|^v")), rat(1));
        assert_eq!(w("^v^v|^v").cup_diagram().cups(), vec![(2, 3), (4, 5)]);

        let s3 = s_skein(3, &a).unwrap();
        let other = s3.terms().map(|(b, _)| b.clone()).find(|b| *b != a).unwrap();
        assert_eq!(other.cup_diagram().cups(), vec![(1, 2), (3, 4)]);
        assert_eq!(s3.coefficient(&other), rat(1));
        assert_eq!(s3.coefficient(&a), rat(1));
    }
}
