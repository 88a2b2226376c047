//! Exhaustive sweeps over small parameters.

use std::collections::BTreeSet;

use delta_springer::actions::{operator_matrix_l, verify_hecke_relations, Generator, HeckeParams, RelationBasis};
use delta_springer::diagrams::{
    cup_to_weight, enumerate_cup_diagrams, enumerate_weights, filling_chain, parse_diagram, render, to_one_boundary, weight_to_cup, Format,
};
use delta_springer::homology::{l_expand, to_l_basis, LBasis};
use delta_springer::linalg::QMatrix;
use delta_springer::number::rat;
use delta_springer::specht::{decompose_homology_rep, theorem_summands};
use delta_springer::tensor::{casimir, gl2_apply, hecke_generators, hecke_tensor, Gl2, TensorVector};
use delta_springer::{Mode, ShapeParams, Subset};

#[test]
fn l_basis_is_independent_with_unitriangular_leading_terms() {
    for p in ShapeParams::all_strict(10) {
        for d in 0..=p.k {
            let basis = LBasis::new(p, d).unwrap();
            assert_eq!(basis.rank(), basis.len(), "{p} d={d}");
            for (alpha, v) in basis.weights().iter().zip(basis.vectors()) {
                let c = alpha.cup_diagram();
                let lead = Subset::from_elements(&c.cups().iter().map(|&(l, _)| l).collect::<Vec<_>>());
                let (first, coeff) = v.terms().next().unwrap();
                assert_eq!((first, coeff.clone()), (lead, rat(1)), "{p} L[{alpha}]");
                assert_eq!(v.len(), 1 << c.left_cups().len());
            }
        }
    }
}

#[test]
fn l_coordinates_round_trip() {
    for p in ShapeParams::all_strict(8) {
        for d in 0..=p.k {
            for alpha in LBasis::new(p, d).unwrap().weights() {
                let coords = to_l_basis(&l_expand(alpha), p, d).unwrap().unwrap();
                assert_eq!(coords, vec![(alpha.clone(), rat(1))]);
            }
        }
    }
}

#[test]
fn diagram_conversions() {
    for n in 1..=10 {
        for m in 0..=n {
            for k in 0..=n / 2 {
                let p = ShapeParams::with_mode(n, k, m, Mode::Relaxed).unwrap();
                let mut counts = vec![0; k + 1];
                for w in enumerate_weights(p).unwrap() {
                    let c = weight_to_cup(&w);
                    assert_eq!(weight_to_cup(&cup_to_weight(&c)), c);
                    counts[c.cup_count()] += 1;
                }
                assert_eq!(counts.iter().sum::<usize>(), enumerate_weights(p).unwrap().len());
                let diagrams = enumerate_cup_diagrams(p).unwrap();
                let images: BTreeSet<_> = diagrams.iter().map(|a| format!("{:?}", to_one_boundary(a))).collect();
                assert_eq!(images.len(), diagrams.len(), "one-boundary map not injective on {p}");
                assert!(diagrams.windows(2).all(|w| cup_to_weight(&w[0]) < cup_to_weight(&w[1])));
            }
        }
    }
}

#[test]
fn filling_chain_covers_the_components() {
    for p in ShapeParams::all_strict(10) {
        let chains = filling_chain(p).unwrap();
        let diagrams = enumerate_cup_diagrams(p).unwrap();
        assert_eq!(chains.iter().map(|c| c.diagram.clone()).collect::<Vec<_>>(), diagrams, "{p}");
        for c in &chains {
            let lefts: BTreeSet<usize> = c.diagram.cups().iter().map(|&(l, _)| l).collect();
            let second: BTreeSet<usize> = c.lambda.rows[1].iter().copied().collect();
            assert_eq!(lefts, second, "{p}");
            assert!(c.lambda_prime.is_decreasing() && c.skew.is_decreasing() && c.lambda.is_decreasing());
        }
    }
}

#[test]
fn renders_round_trip() {
    for n in 1..=8 {
        for m in 0..=n {
            for k in 0..=n / 2 {
                let p = ShapeParams::with_mode(n, k, m, Mode::Relaxed).unwrap();
                for a in enumerate_cup_diagrams(p).unwrap() {
                    for f in [Format::Ascii, Format::Tikz, Format::Json] {
                        let text = render(&a, f);
                        assert_eq!(parse_diagram(&text).unwrap(), a, "{f:?}\n{text}");
                    }
                }
            }
        }
    }
}

#[test]
fn dunkl_relations_hold_for_arbitrary_parameters() {
    for s in 1..=6 {
        let xi = HeckeParams::new((0..=s).map(|d| rat(3 * d as i64 * d as i64 - 7)).collect()).unwrap();
        let p = ShapeParams::with_mode(s, 0, 0, Mode::AnyK).unwrap();
        let r = verify_hecke_relations(p, &xi, RelationBasis::Lines).unwrap();
        assert!(r.passed(), "s={s} {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn multiplicities_follow_the_theorem() {
    for p in ShapeParams::all_strict(8) {
        for d in 0..=p.k {
            let got: Vec<_> = decompose_homology_rep(p, d).unwrap();
            let mut want: Vec<_> = theorem_summands(p, d).into_iter().map(|l| (l, 1)).collect();
            want.sort_by_key(|(l, _)| l.b);
            assert_eq!(got, want, "{p} d={d}");
        }
    }
}

#[test]
fn m_zero_blocks_are_irreducible_for_the_symmetric_group() {
    for p in ShapeParams::all_strict(8).into_iter().filter(|p| p.m == 0) {
        for d in 0..=p.k {
            assert_eq!(theorem_summands(p, d).len(), 1, "{p} d={d}");
        }
    }
}

fn full_matrix(len: usize, m: usize, f: impl Fn(&TensorVector) -> TensorVector) -> QMatrix {
    let basis: Vec<_> = TensorVector::basis(len, m).collect();
    let mut q = QMatrix::zeros(basis.len(), basis.len());
    for (c, &e) in basis.iter().enumerate() {
        for (e2, x) in f(&TensorVector::basis_vector(len, m, e)).terms() {
            q[(e2.index(m), c)] = delta_springer::Rational::from_integer(x.clone());
        }
    }
    q
}

#[test]
fn tensor_hecke_relations_on_the_full_space() {
    for len in 1..=4 {
        for m in 0..=3 {
            let sg: Vec<QMatrix> = (1..len).map(|i| full_matrix(len, m, |v| hecke_tensor(Generator::Sigma(i), v).unwrap())).collect();
            let x: Vec<QMatrix> = (1..=len).map(|i| full_matrix(len, m, |v| hecke_tensor(Generator::X(i), v).unwrap())).collect();
            let id = QMatrix::identity((m + 1) << len);
            for i in 0..sg.len() {
                assert_eq!(sg[i].mul(&sg[i]), id);
                assert_eq!(x[i + 1].mul(&sg[i]).sub(&sg[i].mul(&x[i])), id, "cross len={len} m={m} i={}", i + 1);
                if i + 1 < sg.len() {
                    assert_eq!(sg[i].mul(&sg[i + 1]).mul(&sg[i]), sg[i + 1].mul(&sg[i]).mul(&sg[i + 1]));
                }
                for (j, xj) in x.iter().enumerate() {
                    if j != i && j != i + 1 {
                        assert_eq!(sg[i].mul(xj), xj.mul(&sg[i]));
                    }
                }
                for j in i + 2..sg.len() {
                    assert_eq!(sg[i].mul(&sg[j]), sg[j].mul(&sg[i]));
                }
            }
            for i in 0..len {
                for j in i + 1..len {
                    assert_eq!(x[i].mul(&x[j]), x[j].mul(&x[i]));
                }
            }
        }
    }
}

#[test]
fn tensor_action_commutes_with_gl2() {
    for len in 1..=5 {
        for m in 0..=(7 - len).min(3) {
            for g in hecke_generators(len) {
                let h = full_matrix(len, m, |v| hecke_tensor(g, v).unwrap());
                for op in [Gl2::H1, Gl2::H2, Gl2::E, Gl2::F] {
                    let y = full_matrix(len, m, |v| {
                        let mut out = TensorVector::zero(len, m);
                        for p in 1..=len + 1 {
                            out = out.add(&gl2_apply(op, p, v).unwrap());
                        }
                        out
                    });
                    assert_eq!(h.mul(&y), y.mul(&h), "{g} {op:?} len={len} m={m}");
                }
            }
        }
    }
}

#[test]
fn casimir_is_symmetric_and_swaps_v_factors() {
    for m in 0..=2 {
        for e in TensorVector::basis(3, m) {
            let v = TensorVector::basis_vector(3, m, e);
            let swapped = casimir(1, 2, &v).unwrap();
            let bit = |p: usize| (e.eps >> (3 - p)) & 1;
            let mut eps = e.eps & !0b110;
            eps |= bit(1) << 1 | bit(2) << 2;
            assert_eq!(swapped, TensorVector::basis_vector(3, m, delta_springer::tensor::TensorBasisElt { eps, i: e.i }));
        }
    }
}

#[test]
fn tensor_and_homology_agree_on_all_generators() {
    // Equivariance checks matrices in the p-basis; here the images themselves are compared.
    for p in ShapeParams::all_strict(7) {
        let xi = HeckeParams::springer(p);
        for d in 0..=p.k {
            let basis = LBasis::new(p, d).unwrap();
            let pb = delta_springer::tensor::PBasis::new(&basis).unwrap();
            for g in hecke_generators(basis.size()) {
                let m = operator_matrix_l(g, &basis, &xi).unwrap().matrix;
                for (col, pv) in pb.vectors().iter().enumerate() {
                    let mut rhs = TensorVector::zero(pv.len(), pv.m());
                    for (row, c) in m.column(col) {
                        assert!(c.is_integer(), "{p} {g}");
                        rhs.add_scaled(&pb.vectors()[row], &c.to_integer());
                    }
                    assert_eq!(hecke_tensor(g, pv).unwrap(), rhs, "{p} d={d} {g}");
                }
            }
        }
    }
}
