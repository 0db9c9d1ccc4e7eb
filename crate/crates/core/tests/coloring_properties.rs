mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::{oracle_cf, positive_vector, standard_vector, vec_of};
use tanglekit::coloring::{self, ColorMatrix};

fn matrix_of(terms: &[i128]) -> ColorMatrix {
    coloring::color_tangle(&vec_of(terms), 1, 0).unwrap().matrix
}

/// Affine recolorings making the right column of `t` equal the left column
/// of `s`, or `None` when a column is constant.
fn align(t: &ColorMatrix, s: &ColorMatrix) -> Option<(ColorMatrix, ColorMatrix)> {
    let right = &t.ne - &t.se;
    let left = &s.nw - &s.sw;
    if right.is_zero() || left.is_zero() {
        return None;
    }
    let g = right.gcd(&left);
    let (n1, n2) = (&left / &g, &right / &g);
    let k2 = &n1 * &t.ne - &n2 * &s.nw;
    let t2 = coloring::affine_recolor(t, &n1, &BigInt::zero()).unwrap();
    let s2 = coloring::affine_recolor(s, &n2, &k2).unwrap();
    Some((t2, s2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn diagonal_rule_at_every_stage(
        terms in standard_vector(9, 9),
        top in -20i64..20,
        bottom in -20i64..20,
    ) {
        let n = terms.len();
        for k in 0..n {
            let core = &terms[n - 1 - k..];
            if core.len() % 2 == 0 {
                continue;
            }
            let colored = coloring::color_tangle(&vec_of(core), top, bottom).unwrap();
            prop_assert!(colored.matrix.satisfies_diagonal_rule());
            prop_assert_eq!(colored.arc_colors.len(), 2 + colored.crossings());
        }
    }

    #[test]
    fn sums_add_fractions(a in standard_vector(7, 9), b in standard_vector(7, 9)) {
        let (t, s) = (matrix_of(&a), matrix_of(&b));
        let Some((t, s)) = align(&t, &s) else {
            return Ok(());
        };
        let total = coloring::sum_matrix(&t, &s).unwrap();
        prop_assert!(total.satisfies_diagonal_rule());
        let ft = coloring::f_of_matrix(&t).unwrap();
        let fs = coloring::f_of_matrix(&s).unwrap();
        prop_assert_eq!(ft.clone(), oracle_cf(&a).to_fraction());
        prop_assert_eq!(coloring::f_of_matrix(&total).unwrap(), ft.add(&fs).unwrap());
    }

    #[test]
    fn determinant_is_numerator(
        terms in positive_vector(9, 9),
        negate in any::<bool>(),
        leading_zero in any::<bool>(),
    ) {
        let mut terms = terms;
        if leading_zero && terms.len() > 1 {
            terms[0] = 0;
        }
        if negate {
            terms.iter_mut().for_each(|t| *t = -*t);
        }
        let v = vec_of(&terms);
        prop_assert!(v.is_canonical());
        let colored = coloring::color_tangle(&v, 1, 0).unwrap();
        let det = coloring::closure_determinant(&colored).unwrap();
        prop_assert_eq!(det, BigInt::from(oracle_cf(&terms).0.abs()));
    }
}

#[test]
fn extreme_colors_sit_on_the_periphery() {
    for v in coloring::positive_canonical_vectors(10) {
        let colored = coloring::color_tangle(&v, 1, 0).unwrap();
        let largest = colored.arc_colors.iter().map(|c| c.abs()).max().unwrap();
        let outer = colored
            .peripheral_arcs()
            .iter()
            .map(|&i| colored.arc_colors[i].abs())
            .max()
            .unwrap();
        assert_eq!(largest, outer, "{v}");
    }
}

#[test]
fn trefoil_colorings_are_forced_mod_three() {
    let colored = coloring::color_tangle(&vec_of(&[3]), 1, 0).unwrap();
    let det = coloring::closure_determinant(&colored).unwrap();
    assert_eq!(det, BigInt::from(3));
    let mut residues = coloring::closure_coloring_mod(&colored, &det).unwrap();
    residues.sort();
    assert_eq!(residues, [0, 1, 2].map(BigInt::from));
}
