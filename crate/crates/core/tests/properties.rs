mod common;

use common::*;
use proptest::prelude::*;

fn run(c: Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dd_agrees_with_brute_force(c in random_cone()) {
        run(check_dd_matches_oracle(&c))?;
    }

    #[test]
    fn fm_projection_is_exact(c in random_cone(), keep in 1usize..=3) {
        run(check_fm_projection(&c, keep))?;
    }

    #[test]
    fn lp_certificates_verify(c in random_cone(), obj in random_point(4)) {
        run(check_lp_certificate(&c, &obj[..c.dim]))?;
    }

    #[test]
    fn farkas_and_iis(c in random_cone(), p in random_point(4)) {
        run(check_farkas_and_iis(&c, &p[..c.dim]))?;
    }

    #[test]
    fn canonical_ray_ignores_positive_scaling(
        v in prop::collection::vec(-6i64..=6, 1..8),
        num in 1i64..50,
        den in 1i64..50,
    ) {
        run(check_canonical_scaling(&v, num, den))?;
    }

    #[test]
    fn functional_is_linear(x in 0usize..6, y in 0usize..6, a in -4i64..=4, b in -4i64..=4) {
        run(check_functional_linearity(x, y, a, b))?;
    }
}

#[test]
fn elemental_counts_two_to_six() {
    for n in 2..=6 {
        check_elemental_count(n).unwrap();
    }
}
