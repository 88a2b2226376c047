//! The twelve acceptance criteria, each an exact check. Prints one line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use delta_springer::actions::{
    dunkl, s_line, s_skein, verify_extremal, verify_hecke_relations, verify_stability, verify_typec, x_last_closed_form, Combination,
    HeckeParams, RelationBasis,
};
use delta_springer::diagrams::{enumerate_cup_diagrams, intersection_class, render, weight_to_cup, Format, IntersectionClass};
use delta_springer::homology::l_expand;
use delta_springer::number::rat;
use delta_springer::report::Report;
use delta_springer::specht::{theorem_summands, verify_specht};
use delta_springer::tensor::{
    commutant_dimension, commutant_dimension_with, equivariance_check, p_vector, GeneratorSet, TensorBasisElt, TensorVector,
};
use delta_springer::{CupDiagram, DeltaWeight, HomVector, Mode, Result, ShapeParams, Subset};
use num_bigint::BigInt;

type Outcome = Result<Option<String>>;
type Criterion = (&'static str, fn() -> Outcome);
type DiagramCase<'a> = (&'a str, &'a [(usize, usize)], &'a [usize]);

fn w(s: &str) -> DeltaWeight {
    DeltaWeight::parse(s).expect("literal weight")
}

fn suite(report: Report, params: ShapeParams) -> Option<String> {
    report.failures().next().map(|c| format!("{params} {}: {}", c.id, c.witness.clone().unwrap_or_default()))
}

fn strict(max_n: usize) -> Vec<ShapeParams> {
    ShapeParams::all_strict(max_n)
}

fn component_count() -> Outcome {
    let p = ShapeParams::strict(6, 3, 2)?;
    let got: Vec<String> = enumerate_cup_diagrams(p)?.iter().map(|a| render(a, Format::Json)).collect();
    let want = [
        r#"{"n":6,"m":2,"cups":[[1,6],[2,5],[3,4]],"rays":[]}"#,
        r#"{"n":6,"m":2,"cups":[[1,6],[2,3],[4,5]],"rays":[]}"#,
        r#"{"n":6,"m":2,"cups":[[1,2],[3,6],[4,5]],"rays":[]}"#,
    ];
    Ok((got != want).then(|| format!("{got:?}")))
}

fn weight_to_diagram() -> Outcome {
    let cases: [DiagramCase; 3] =
        [("vv^v|^^", &[(1, 6), (2, 3), (4, 5)], &[]), ("^vvv|^^", &[(3, 6), (4, 5)], &[1, 2]), ("^^^v|vv", &[], &[1, 2, 3, 4, 5, 6])];
    for (s, cups, rays) in cases {
        let c = weight_to_cup(&w(s));
        if c.cups() != cups || c.rays() != rays {
            return Ok(Some(format!("{s}: cups {:?} rays {:?}", c.cups(), c.rays())));
        }
    }
    Ok(None)
}

fn l_expansion() -> Outcome {
    let got = l_expand(&w("v^^v|^v"));
    let want = HomVector::from_terms(4, [(Subset::from_elements(&[1, 4]), rat(1)), (Subset::from_elements(&[2, 4]), rat(-1))]);
    Ok((got != want).then(|| format!("{got:?}")))
}

fn skein_action() -> Outcome {
    let a = w("v^^v|^v");
    let combo = |terms: &[(&str, i64)]| {
        let mut c = Combination::new();
        for &(s, k) in terms {
            c.add(w(s), rat(k));
        }
        c
    };
    let expected = [combo(&[("v^^v|^v", -1)]), combo(&[("v^^v|^v", 1), ("^v^v|^v", 1)]), combo(&[("v^^v|^v", 1), ("v^v^|^v", 1)])];
    for (i, e) in (1..).zip(&expected) {
        let got = s_skein(i, &a)?;
        if got != *e {
            return Ok(Some(format!("s{i}: {got:?}")));
        }
    }
    if weight_to_cup(&w("v^v^|^v")).cups() != [(1, 2), (3, 4)] {
        return Ok(Some("s3 partner diagram".into()));
    }
    for p in strict(9) {
        let s = p.n - p.m;
        for alpha in delta_springer::diagrams::enumerate_weights(p)? {
            let v = l_expand(&alpha);
            for i in 1..s {
                if s_skein(i, &alpha)?.expand(s) != s_line(i, &v)? {
                    return Ok(Some(format!("{p} s{i} on L[{alpha}]")));
                }
            }
        }
    }
    Ok(None)
}

fn closed_form_x() -> Outcome {
    let alpha = w("vv^vv^|^^v");
    let mut want = Combination::new();
    want.add(w("vv^v^v|^^v"), rat(-3));
    want.add(w("vv^^vv|^^v"), rat(-2));
    want.add(w("vv^vvv|^^^"), rat(-1));
    let got = x_last_closed_form(&alpha)?;
    if got != want {
        return Ok(Some(format!("worked example: {got:?}")));
    }
    let xi9 = HeckeParams::springer(ShapeParams::with_mode(9, 5, 3, Mode::AnyK)?);
    if got.expand(6) != dunkl(6, &xi9, &l_expand(&alpha))? {
        return Ok(Some("worked example disagrees with the Dunkl operator".into()));
    }
    for p in strict(9) {
        let s = p.n - p.m;
        if s == 0 {
            continue;
        }
        let xi = HeckeParams::springer(p);
        for alpha in delta_springer::diagrams::enumerate_weights(p)? {
            let v = l_expand(&alpha);
            let x = dunkl(s, &xi, &v)?;
            let c = alpha.cup_diagram();
            let expected = if c.is_ray(s) {
                Some(HomVector::zero(s))
            } else if c.is_left_end(s) {
                Some(v.scale(&rat(p.m as i64 + 1)))
            } else {
                None
            };
            if let Some(e) = expected {
                if x != e {
                    return Ok(Some(format!("{p} x{s} on L[{alpha}]")));
                }
            }
            if x_last_closed_form(&alpha)?.expand(s) != x {
                return Ok(Some(format!("{p} closed form on L[{alpha}]")));
            }
        }
    }
    Ok(None)
}

fn hecke_relations() -> Outcome {
    for p in strict(8) {
        let r = verify_hecke_relations(p, &HeckeParams::springer(p), RelationBasis::L)?;
        if let Some(f) = suite(r, p) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn stability() -> Outcome {
    for p in strict(8) {
        if let Some(f) = suite(verify_stability(p, &HeckeParams::springer(p))?, p) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn specht() -> Outcome {
    for p in strict(8) {
        if let Some(f) = suite(verify_specht(p)?, p) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn tensor_oracle() -> Outcome {
    let a = CupDiagram::new(7, 3, &[(1, 2), (3, 6), (4, 5)], &[7])?;
    // (v₋⊗v₊ - v₊⊗v₋) ⊗ (v₋v₋v₀ - v₊v₋v₁ - v₋v₊v₁ + v₊v₊v₂)
    let mut want = TensorVector::zero(4, 3);
    for (x, c1) in [("-+", 1), ("+-", -1)] {
        for (y, i, c2) in [("--", 0, 1), ("+-", 1, -1), ("-+", 1, -1), ("++", 2, 1)] {
            let eps = format!("{x}{y}").chars().fold(0u64, |acc, ch| acc << 1 | u64::from(ch == '+'));
            want.add_term(TensorBasisElt { eps, i }, &BigInt::from(c1 * c2));
        }
    }
    let got = p_vector(&a);
    if got != want {
        return Ok(Some(format!("p-vector {got:?}")));
    }
    for p in strict(8) {
        for d in 0..=p.k {
            if let Some(f) = suite(equivariance_check(p, d)?, p) {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

fn irreducibility() -> Outcome {
    let mut control = 0;
    for p in strict(8) {
        for d in 0..=p.k {
            let c = commutant_dimension(p, d)?;
            if c != 1 {
                return Ok(Some(format!("{p} d={d} commutant {c}")));
            }
            let summands = theorem_summands(p, d).len();
            if summands >= 2 {
                let sym = commutant_dimension_with(p, d, GeneratorSet::SymmetricOnly)?;
                if sym <= 1 {
                    return Ok(Some(format!("{p} d={d} symmetric-only commutant {sym} with {summands} summands")));
                }
                control += 1;
            }
        }
    }
    Ok((control == 0).then(|| "no block with two or more summands".into()))
}

fn extremal() -> Outcome {
    for p in strict(8).into_iter().filter(|p| p.m == 0 || p.m == p.k) {
        if let Some(f) = suite(verify_extremal(p)?, p) {
            return Ok(Some(f));
        }
    }
    for p in strict(12).into_iter().filter(|p| p.n - p.m <= 8) {
        if let Some(f) = suite(verify_typec(p, &HeckeParams::springer(p))?, p) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn intersections() -> Outcome {
    let a = CupDiagram::from_cups(7, 2, &[(1, 4), (2, 3), (5, 6)])?;
    let b = CupDiagram::from_cups(7, 2, &[(1, 2), (3, 6), (4, 5)])?;
    let got = intersection_class(&a, &b)?;
    if got != IntersectionClass::Spheres(1) {
        return Ok(Some(format!("worked pair: {got:?}")));
    }
    for p in strict(9) {
        for a in enumerate_cup_diagrams(p)? {
            let got = intersection_class(&a, &a)?;
            if got != IntersectionClass::Spheres(p.k) {
                return Ok(Some(format!("{p} {a:?}: {got:?}")));
            }
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("component count (6,3,2) and canonical JSON", component_count),
        ("weight to diagram examples", weight_to_diagram),
        ("L-expansion of v^^v|^v", l_expansion),
        ("skein action, and skein = line permutation for n <= 9", skein_action),
        ("closed-form x_{n-m}, ray and left-endpoint cases for n <= 9", closed_form_x),
        ("Hecke relations on the L basis for n <= 8", hecke_relations),
        ("stability and closed-form columns for n <= 8", stability),
        ("Specht characters and skew tableau counts for n <= 8", specht),
        ("tensor oracle: p-vector, highest weights, equivariance for n <= 8", tensor_oracle),
        ("irreducibility via commutants, with symmetric-only control, n <= 8", irreducibility),
        ("extremal cases and the type-C identity", extremal),
        ("intersections: worked pair and self-intersections for n <= 9", intersections),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match check() {
            Ok(None) => ("PASS", String::new()),
            Ok(Some(witness)) => ("FAIL", format!(": {witness}")),
            Err(e) => ("FAIL", format!(": error {e}")),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} {name}{detail}", i + 1);
        eprintln!("criterion {:>2} took {:.2?}", i + 1, start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
