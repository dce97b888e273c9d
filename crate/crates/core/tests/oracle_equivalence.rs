use patternlab::oracle::{brute_gf, check_family, class_size, family_oracle, GfSpec};
use patternlab::rec123::{d_table, desc_tower_table};
use patternlab::rec132::{fh_table, incr_tower_table, s3_table, s4_table};
use patternlab::{FamilyId, Gamma3, Parallelism, PatternSet, Permutation, Symmetry};

const SEQ: Parallelism = Parallelism::Sequential;
const PAR: Parallelism = Parallelism::Parallel;

fn set(v: &[&str]) -> PatternSet {
    PatternSet::parse(v).unwrap()
}

fn assert_family(id: FamilyId, n_max: usize) {
    let report = check_family(id, n_max, PAR).unwrap();
    assert!(report.equal, "{report}");
}

#[test]
fn fh_matches_enumeration() {
    assert_family(FamilyId::Fh, 9);
}

#[test]
fn s3_matches_enumeration() {
    assert_family(FamilyId::S3, 7);
}

#[test]
fn p_tables_match_enumeration() {
    for g in Gamma3::ALL {
        assert_family(FamilyId::P(g), 8);
    }
}

#[test]
fn towers_match_enumeration() {
    for m in 2..=4 {
        assert_family(FamilyId::IncrTower(m), 8);
        assert_family(FamilyId::DescTower(m), 7);
    }
}

#[test]
fn s4_matches_enumeration() {
    assert_family(FamilyId::S4, 6);
}

#[test]
fn d_table_matches_enumeration_through_four() {
    assert_family(FamilyId::D, 4);
}

#[test]
fn d_table_first_disagreement() {
    let report = check_family(FamilyId::D, 5, PAR).unwrap();
    let m = report.first_mismatch.expect("recurrence drifts at n = 5");
    assert_eq!(m.n, 5);
    let names = ["s", "q", "x", "y"];
    let oracle = family_oracle(FamilyId::D, 5, SEQ).unwrap();
    let table = d_table(5, SEQ).unwrap().assemble();
    let diff = oracle.sub(table.entry(5)).unwrap();
    // 42513: three left-to-right minima, four 12s, one linv, three 231s
    assert_eq!(diff.to_text(&names), "s^3*q^4*x*y^3 - s^3*q^4*x*y^2");
}

#[test]
fn catalan_mass() {
    let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    let tables = [
        fh_table(10, PAR).unwrap(),
        s3_table(8, PAR).unwrap(),
        incr_tower_table(10, 4, PAR).unwrap(),
        desc_tower_table(10, 4, PAR).unwrap(),
        d_table(10, PAR).unwrap().assemble(),
        s4_table(6, PAR).unwrap().assemble(),
    ];
    for t in &tables {
        for (n, &c) in catalan.iter().enumerate().take(t.n_max() + 1) {
            assert_eq!(t.entry(n).eval_all_ones(), c.into(), "{} n={n}", t.family());
        }
    }
    for (n, &c) in catalan.iter().enumerate().take(11) {
        assert_eq!(class_size(n, &set(&["132"])), c);
        assert_eq!(class_size(n, &set(&["123"])), c);
    }
}

#[test]
fn refinement_chain() {
    let s4 = s4_table(6, PAR).unwrap().assemble();
    let s3 = s3_table(6, PAR).unwrap();
    let fh = fh_table(6, PAR).unwrap();
    let ys: Vec<usize> = (7..21).collect();
    for n in 0..=6 {
        assert_eq!(&s4.entry(n).specialize(&ys).unwrap(), s3.entry(n));
        assert_eq!(
            &s3.entry(n).specialize(&[2, 3, 4, 5, 6]).unwrap(),
            fh.entry(n)
        );
    }
}

#[test]
fn modes_agree_on_tables() {
    assert_eq!(s3_table(7, SEQ).unwrap(), s3_table(7, PAR).unwrap());
    assert_eq!(s4_table(5, SEQ).unwrap(), s4_table(5, PAR).unwrap());
    assert_eq!(d_table(7, SEQ).unwrap(), d_table(7, PAR).unwrap());
}

#[test]
fn family_oracle_respects_variable_order() {
    // single permutation of size 1: one left-to-right minimum, nothing else
    let d = family_oracle(FamilyId::D, 1, SEQ).unwrap();
    assert_eq!(d.to_text(&["s", "q", "x", "y"]), "s");
    let t = family_oracle(FamilyId::DescTower(3), 2, SEQ).unwrap();
    assert_eq!(t.to_text(&["s", "x2", "x3"]), "s^2 + s*x2");
}

#[test]
fn coinversion_specializations() {
    // 231 and 312 over S_n(132); 132 vs 213 and 231 vs 312 over S_n(123)
    for n in 0..=7 {
        for (avoid, a, b) in [
            ("132", "231", "312"),
            ("123", "132", "213"),
            ("123", "231", "312"),
        ] {
            let lhs = brute_gf(&GfSpec::new(n, set(&[avoid]), set(&[a])), SEQ).unwrap();
            let rhs = brute_gf(&GfSpec::new(n, set(&[avoid]), set(&[b])), SEQ).unwrap();
            assert_eq!(lhs, rhs, "n={n} avoid {avoid}: {a} vs {b}");
        }
    }
}

fn patterns_up_to(len: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for k in 1..=len {
        out.extend(patternlab::enumerate_avoiders(k, &PatternSet::empty()));
    }
    out
}

#[test]
fn symmetry_transport_at_oracle_level() {
    let pats = patterns_up_to(3);
    for lambda in &pats {
        for gamma in &pats {
            for n in [4, 6] {
                let base = brute_gf(
                    &GfSpec::new(
                        n,
                        PatternSet::single(lambda.clone()),
                        PatternSet::single(gamma.clone()),
                    ),
                    SEQ,
                )
                .unwrap();
                for action in Symmetry::ALL {
                    let moved = brute_gf(
                        &GfSpec::new(
                            n,
                            PatternSet::single(lambda.apply(action)),
                            PatternSet::single(gamma.apply(action)),
                        ),
                        SEQ,
                    )
                    .unwrap();
                    assert_eq!(base, moved, "{lambda} {gamma} {action:?} n={n}");
                }
            }
        }
    }
}

#[test]
fn symmetry_transport_length_four() {
    let pats: Vec<Permutation> = patternlab::enumerate_avoiders(4, &PatternSet::empty()).collect();
    let lambdas = ["132", "123", "1243", "2413"];
    for l in lambdas {
        let lambda: Permutation = l.parse().unwrap();
        for gamma in pats.iter().step_by(5) {
            let base = brute_gf(
                &GfSpec::new(
                    6,
                    PatternSet::single(lambda.clone()),
                    PatternSet::single(gamma.clone()),
                ),
                PAR,
            )
            .unwrap();
            for action in Symmetry::ALL {
                let moved = brute_gf(
                    &GfSpec::new(
                        6,
                        PatternSet::single(lambda.apply(action)),
                        PatternSet::single(gamma.apply(action)),
                    ),
                    PAR,
                )
                .unwrap();
                assert_eq!(base, moved, "{lambda} {gamma} {action:?}");
            }
        }
    }
}
