//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).

use std::time::Instant;

use skelcat::abelian;
use skelcat::catalog::{builtin_ring, builtin_twists, drinfeld_double_of_group, CatalogKey};
use skelcat::cond;
use skelcat::fusion::{validate_fusion_ring, FusionRing, ObjectVector};
use skelcat::groups::FiniteGroup;
use skelcat::hopf;
use skelcat::modules;
use skelcat::monad;
use skelcat::num::{c64, C64};
use skelcat::pointed;
use skelcat::skel;
use skelcat::solver;

fn status(criterion: &str, pass: bool) {
    println!("ACCEPTANCE {criterion}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {criterion} failed");
}

/// Exhaustive label matching for small rings (the unit is pinned).
fn exhaustive_isomorphic(a: &FusionRing, b: &FusionRing) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    let r = a.rank();
    let others: Vec<usize> = (0..r).filter(|&x| x != a.unit).collect();
    let targets: Vec<usize> = (0..r).filter(|&x| x != b.unit).collect();
    let mut perm: Vec<usize> = (0..others.len()).collect();
    // Heap-style permutation enumeration over at most 8 labels
    fn rec(
        k: usize,
        perm: &mut Vec<usize>,
        a: &FusionRing,
        b: &FusionRing,
        others: &[usize],
        targets: &[usize],
    ) -> bool {
        if k == perm.len() {
            let r = a.rank();
            let mut map = vec![0usize; r];
            map[a.unit] = b.unit;
            for (i, &p) in perm.iter().enumerate() {
                map[others[i]] = targets[p];
            }
            for x in 0..r {
                for y in 0..r {
                    for z in 0..r {
                        if a.n[x][y][z] != b.n[map[x]][map[y]][map[z]] {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            if rec(k + 1, perm, a, b, others, targets) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    rec(0, &mut perm, a, b, &others, &targets)
}

#[test]
fn criterion_1_hopf_verification() {
    let t0 = Instant::now();
    let cases = [("2+e", 2u32), ("1+VecZ3", 1), ("2+tau", 10)];
    for (name, order) in cases {
        let start = Instant::now();
        let h = hopf::builtin_hopf(name).unwrap();
        let report = hopf::check_hopf_axioms(&h, 1e-9).unwrap();
        assert!(report.pass(), "{name}: {report}");
        assert!(report.max_residual < 1e-9);
        assert_eq!(hopf::antipode_order(&h, 64, 1e-7), Some(order), "{name} antipode order");
        assert!(start.elapsed().as_secs() < 10, "{name} exceeded 10 s");
    }
    // 2+e integral is 1 - x with counit value 1
    let h = hopf::builtin_hopf("2+e").unwrap();
    let integral = hopf::find_integral(&h, 1e-9).unwrap();
    assert!(integral.semisimple);
    assert!((integral.vector[0] - c64(1.0, 0.0)).norm() < 1e-8);
    assert!((integral.vector[1] - c64(-1.0, 0.0)).norm() < 1e-8);
    assert!((integral.counit_value - c64(1.0, 0.0)).norm() < 1e-9);
    let _ = t0;
    status("1 (Hopf verification)", true);
}

#[test]
fn criterion_2_module_fusion() {
    let t0 = Instant::now();
    // 2+e modules form Rep(S3)
    let h = hopf::builtin_hopf("2+e").unwrap();
    let irr = modules::irreducible_modules(&h, 7).unwrap();
    let ring = modules::module_fusion_ring(&h, &irr).unwrap();
    assert!(exhaustive_isomorphic(&ring, &builtin_ring(&CatalogKey::RepS3).unwrap()));

    // 1 ⊕ Vec_Z3 modules form the near-group ring with multiplicity 2
    let h = hopf::builtin_hopf("1+VecZ3").unwrap();
    let irr = modules::irreducible_modules(&h, 7).unwrap();
    let ring = modules::module_fusion_ring(&h, &irr).unwrap();
    let near_group = {
        // Z3 invertibles plus rho with rho^2 = sum(g) + 2 rho
        let labels = vec!["1".into(), "g1".into(), "g2".into(), "r".into()];
        let mut n = vec![vec![vec![0u32; 4]; 4]; 4];
        for a in 0..3 {
            for b in 0..3 {
                n[a][b][(a + b) % 3] = 1;
            }
        }
        for g in 0..3 {
            n[g][3][3] = 1;
            n[3][g][3] = 1;
        }
        for g in 0..3 {
            n[3][3][g] = 1;
        }
        n[3][3][3] = 2;
        FusionRing { labels, unit: 0, dual: vec![0, 2, 1, 3], n }
    };
    assert!(validate_fusion_ring(&near_group, 1e-9).unwrap().pass());
    assert!(exhaustive_isomorphic(&ring, &near_group));

    // 2+tau modules form Fib ⊠ Fib on four simples
    let h = hopf::builtin_hopf("2+tau").unwrap();
    let irr = modules::irreducible_modules(&h, 7).unwrap();
    assert_eq!(irr.len(), 4);
    let ring = modules::module_fusion_ring(&h, &irr).unwrap();
    let dfib = {
        let fib = builtin_ring(&CatalogKey::Fib).unwrap();
        let mut n = vec![vec![vec![0u32; 4]; 4]; 4];
        let pair = |x: usize, y: usize| x * 2 + y;
        for a1 in 0..2 {
            for a2 in 0..2 {
                for b1 in 0..2 {
                    for b2 in 0..2 {
                        for c1 in 0..2 {
                            for c2 in 0..2 {
                                n[pair(a1, a2)][pair(b1, b2)][pair(c1, c2)] =
                                    fib.n[a1][b1][c1] * fib.n[a2][b2][c2];
                            }
                        }
                    }
                }
            }
        }
        FusionRing {
            labels: vec!["11".into(), "1t".into(), "t1".into(), "tt".into()],
            unit: 0,
            dual: vec![0, 1, 2, 3],
            n,
        }
    };
    assert!(exhaustive_isomorphic(&ring, &dfib));
    assert!(t0.elapsed().as_secs() < 60, "criterion 2 exceeded 60 s");
    status("2 (module fusion rings)", true);
}

#[test]
fn criterion_3_solver() {
    let t0 = Instant::now();
    // unique orbit on 2+e
    let alg = hopf::one_plus_vec_zp_algebra(2);
    let config = solver::SolverConfig { restarts: 60, seed: 11, ..Default::default() };
    let out = solver::solve_hopf_structures(&alg, &config).unwrap();
    assert_eq!(out.orbits.len(), 1, "2+e expects exactly one orbit");
    let builtin_fp = solver::fingerprint(&hopf::builtin_hopf("2+e").unwrap(), 64).unwrap();
    assert_eq!(out.orbits[0].fingerprint, builtin_fp, "2+e orbit matches the builtin");
    let rep = hopf::check_hopf_axioms(&out.orbits[0].representative, 1e-8).unwrap();
    assert!(rep.pass() && rep.max_residual < 1e-8);

    // unique orbit on 1 ⊕ Vec_Z3
    let alg = hopf::one_plus_vec_zp_algebra(3);
    let config = solver::SolverConfig { restarts: 400, seed: 11, ..Default::default() };
    let out = solver::solve_hopf_structures(&alg, &config).unwrap();
    assert_eq!(out.orbits.len(), 1, "1+VecZ3 expects exactly one orbit");
    let builtin_fp = solver::fingerprint(&hopf::builtin_hopf("1+VecZ3").unwrap(), 64).unwrap();
    assert_eq!(out.orbits[0].fingerprint, builtin_fp);
    let rep = hopf::check_hopf_axioms(&out.orbits[0].representative, 1e-8).unwrap();
    assert!(rep.pass() && rep.max_residual < 1e-8);

    // nothing found on 1 ⊕ Vec_Z5 after 100 seeded restarts (search outcome)
    let alg = hopf::one_plus_vec_zp_algebra(5);
    let config = solver::SolverConfig {
        restarts: 100,
        seed: 11,
        max_iterations: 260,
        ..Default::default()
    };
    let out = solver::solve_hopf_structures(&alg, &config).unwrap();
    assert_eq!(out.orbits.len(), 0, "1+VecZ5: no structure should be found");
    assert!(out.log.len() >= 100);
    println!(
        "  note: 1+VecZ5 outcome is 'not found after {} restarts', not a non-existence proof",
        out.log.len()
    );
    assert!(t0.elapsed().as_secs() < 600, "criterion 3 exceeded 10 min");
    status("3 (Hopf-structure solver)", true);
}

#[test]
fn criterion_4_condensations() {
    // Rep(S3) with A + C
    let t0 = Instant::now();
    let ring = builtin_ring(&CatalogKey::RepS3).unwrap();
    let input = cond::BraidedInput::new(ring, builtin_twists(&CatalogKey::RepS3)).unwrap();
    let algebra = input.ring.parse_object("A+C").unwrap();
    let res = cond::condense(&input, &algebra).unwrap();
    assert_eq!(res.condensed.rank(), 2);
    let unit = res.condensed.unit;
    let e = 1 - unit;
    assert_eq!(res.d[unit], vec![1, 0, 1], "D(A) = 1, D(C) ∋ 1");
    assert_eq!(res.d[e], vec![0, 1, 1], "D(B) = e, D(C) ∋ e");
    assert_eq!(res.e[unit], vec![1, 0, 1], "E(1) = A + C");
    assert_eq!(res.e[e], vec![0, 1, 1], "E(e) = B + C");
    let (_, shape) = cond::comonad_object_map(&res);
    match shape {
        cond::ComonadShape::Tensor { w } => {
            assert_eq!(w.0[unit], 2);
            assert_eq!(w.0[e], 1);
        }
        other => panic!("Rep(S3) comonad should be a tensor: {other:?}"),
    }
    assert!(t0.elapsed().as_secs() < 30);

    // D(S3) with A + C: rank 6 and the full stated rule set (checked in
    // detail by the oracle test; here the block form and rank)
    let t0 = Instant::now();
    let (ring, twists) = drinfeld_double_of_group(&FiniteGroup::s3()).unwrap();
    let input = cond::BraidedInput::new(ring, Some(twists)).unwrap();
    let algebra = input.ring.parse_object("A+C").unwrap();
    let res = cond::condense(&input, &algebra).unwrap();
    assert_eq!(res.condensed.rank(), 6);
    let (_, shape) = cond::comonad_object_map(&res);
    match shape {
        cond::ComonadShape::Blocks { blocks } => {
            assert_eq!(blocks.len(), 2);
            let sizes: Vec<usize> = blocks.iter().map(|(m, _)| m.len()).collect();
            assert_eq!(sizes, vec![3, 3]);
            // one block acted on by an object of total dimension 3 (2 + e),
            // the other by 1 + Y
            let dims: Vec<u32> = blocks.iter().map(|(_, w)| w.0.iter().sum()).collect();
            assert!(dims.contains(&3) && dims.contains(&2));
        }
        other => panic!("D(S3) comonad should have two blocks: {other:?}"),
    }
    assert!(t0.elapsed().as_secs() < 30);

    // DFib with 11 + tt: Fib with the defect confined
    let t0 = Instant::now();
    let fib = builtin_ring(&CatalogKey::Fib).unwrap();
    let mut n = vec![vec![vec![0u32; 4]; 4]; 4];
    let pair = |x: usize, y: usize| x * 2 + y;
    for a1 in 0..2 {
        for a2 in 0..2 {
            for b1 in 0..2 {
                for b2 in 0..2 {
                    for c1 in 0..2 {
                        for c2 in 0..2 {
                            n[pair(a1, a2)][pair(b1, b2)][pair(c1, c2)] =
                                fib.n[a1][b1][c1] * fib.n[a2][b2][c2];
                        }
                    }
                }
            }
        }
    }
    let theta_t = skelcat::num::unit_phase(2.0 / 5.0);
    let dfib = FusionRing {
        labels: vec!["11".into(), "1t".into(), "t1".into(), "tt".into()],
        unit: 0,
        dual: vec![0, 1, 2, 3],
        n,
    };
    let twists = vec![c64(1.0, 0.0), theta_t.conj(), theta_t, c64(1.0, 0.0)];
    let input = cond::BraidedInput::new(dfib, Some(twists)).unwrap();
    let algebra = input.ring.parse_object("11+tt").unwrap();
    let res = cond::condense(&input, &algebra).unwrap();
    assert_eq!(res.condensed.rank(), 2);
    let unit = res.condensed.unit;
    let tau = 1 - unit;
    assert_eq!(res.e[unit], vec![1, 0, 0, 1], "E(1) = 11 + tt");
    assert_eq!(res.e[tau], vec![0, 1, 1, 1], "E(t) = 1t + t1 + tt");
    assert_eq!(res.condensed.n[tau][tau], {
        let mut v = vec![0u32; 2];
        v[unit] = 1;
        v[tau] = 1;
        v
    });
    let confined = res.confined.clone().unwrap();
    assert!(!confined[unit] && confined[tau], "1 deconfined, tau confined");
    let (_, shape) = cond::comonad_object_map(&res);
    match shape {
        cond::ComonadShape::Tensor { w } => {
            assert_eq!(w.0[unit], 2);
            assert_eq!(w.0[tau], 1);
        }
        other => panic!("DFib comonad should be (2+tau) ⊗ -: {other:?}"),
    }
    assert!(t0.elapsed().as_secs() < 30);
    status("4 (condensations)", true);
}

#[test]
fn criterion_5_gauged_so8() {
    let ring = builtin_ring(&CatalogKey::SO8GaugedS3).unwrap();
    assert!(validate_fusion_ring(&ring, 1e-9).unwrap().pass());
    let input = cond::BraidedInput::new(ring, None).unwrap();
    let algebra = input.ring.parse_object("A+C").unwrap();
    let res = cond::condense(&input, &algebra).unwrap();
    assert_eq!(res.condensed.rank(), 12);
    // the simples of dimension <= 2 form a closed rank-9 subring
    let qd = skelcat::fusion::quantum_dimensions(&res.condensed).unwrap();
    let sub: Vec<usize> = (0..12).filter(|&c| qd[c] < 2.0 + 1e-6).collect();
    assert_eq!(sub.len(), 9);
    let nt = &res.condensed.n;
    let closed = sub
        .iter()
        .all(|&a| sub.iter().all(|&b| (0..12).all(|c| nt[a][b][c] == 0 || sub.contains(&c))));
    assert!(closed, "rank-9 subring is closed under fusion");
    // isomorphic to Ising ⊠ Ising
    let pos = |c: usize| sub.iter().position(|&x| x == c).unwrap();
    let mut n2 = vec![vec![vec![0u32; 9]; 9]; 9];
    for &a in &sub {
        for &b in &sub {
            for &c in &sub {
                n2[pos(a)][pos(b)][pos(c)] = nt[a][b][c];
            }
        }
    }
    let subring = FusionRing {
        labels: sub.iter().map(|c| format!("s{c}")).collect(),
        unit: pos(res.condensed.unit),
        dual: sub.iter().map(|&c| pos(res.condensed.dual[c])).collect(),
        n: n2,
    };
    let ising = |x: usize, y: usize| -> Vec<usize> {
        match (x.min(y), x.max(y)) {
            (0, z) => vec![z],
            (1, 1) => vec![0],
            (1, 2) => vec![2],
            (2, 2) => vec![0, 1],
            _ => unreachable!(),
        }
    };
    let mut n3 = vec![vec![vec![0u32; 9]; 9]; 9];
    for a1 in 0..3 {
        for a2 in 0..3 {
            for b1 in 0..3 {
                for b2 in 0..3 {
                    for c1 in ising(a1, b1) {
                        for c2 in ising(a2, b2) {
                            n3[a1 * 3 + a2][b1 * 3 + b2][c1 * 3 + c2] += 1;
                        }
                    }
                }
            }
        }
    }
    let ising2 = FusionRing {
        labels: (0..9).map(|i| format!("i{i}")).collect(),
        unit: 0,
        dual: (0..9).collect(),
        n: n3,
    };
    assert!(
        skelcat::fusion::find_isomorphism(&subring, &ising2).is_some(),
        "rank-9 subring is double-Ising fusion"
    );
    status("5 (gauged SO(8)_1 condensation)", true);
}

#[test]
fn criterion_6_doubled_haagerup_data() {
    for p in [3u32, 5] {
        let g = cond::dhaag_given(p);
        let report = cond::verify_given_condensation(&g);
        assert!(report.pass(), "p = {p}: {report}");
        // T(X) = D(Z_p) + (p^2 + 2) X exactly
        let x = g.condensed_labels.len() - 1;
        for row in 0..x {
            assert_eq!(g.stated_t[row][x], 1, "T(X) contains every double simple once");
        }
        assert_eq!(g.stated_t[x][x], p * p + 2);
    }
    status("6 (doubled Haagerup condensation data)", true);
}

#[test]
fn criterion_7_skeletal_monad_checkers() {
    let t0 = Instant::now();
    // group actions
    let vz2 = skel::builtin_skeletal(&skel::SkelKey::VecGTrivial(vec![2])).unwrap();
    let vz3 = skel::builtin_skeletal(&skel::SkelKey::VecGTrivial(vec![3])).unwrap();
    let z2 = FiniteGroup::cyclic(2);
    let built = vec![
        monad::from_group_action(&vz2, &z2, &[vec![0, 1], vec![0, 1]]).unwrap(),
        monad::from_group_action(&vz3, &z2, &[vec![0, 1, 2], vec![0, 1, 2]]).unwrap(),
        monad::from_group_action(&vz3, &z2, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap(),
        monad::from_hopf_algebra(&hopf::builtin_hopf("2+e").unwrap()).unwrap(),
        monad::from_hopf_algebra(&hopf::builtin_hopf("2+tau").unwrap()).unwrap(),
    ];
    for (i, data) in built.iter().enumerate() {
        let report = monad::check_hopf_monad(data, 1e-9).unwrap();
        assert!(report.pass(), "constructed monad {i}: {report}");
        assert!(report.max_residual < 1e-9);
    }
    // single-entry perturbations of magnitude 0.01 are rejected
    for data in built.iter().take(2) {
        let mut tampered = data.clone();
        let key = *tampered.h_left.keys().next().unwrap();
        let mut m = tampered.h_left[&key].clone();
        m[(0, 0)] += c64(0.01, 0.0);
        tampered.h_left.insert(key, m);
        let report = monad::check_hopf_monad(&tampered, 1e-9).unwrap();
        assert!(!report.pass(), "perturbed monad must fail");
    }
    {
        let mut tampered = built[4].clone();
        let key = (1usize, 1usize, 1usize);
        let mut m = tampered.h_left[&key].clone();
        m[(0, 0)] += c64(0.01, 0.0);
        tampered.h_left.insert(key, m);
        let report = monad::check_hopf_monad(&tampered, 1e-9).unwrap();
        assert!(!report.pass(), "perturbed 2+tau monad must fail");
    }
    assert!(t0.elapsed().as_secs() < 30, "criterion 7 exceeded 30 s");
    status("7 (skeletal Hopf-monad checkers)", true);
}

#[test]
fn criterion_8_bimodule_table() {
    let labels = abelian::z2_bimodule_labels();
    // expected table; published tabulations print the (M2,1 x M2,2) cell as
    // 2M2,2, which contradicts both associativity and the op-symmetry of the
    // bimodule product, so the entry derived from the composition rule
    // (2M1,1) is asserted instead and the divergence is flagged below.
    let expected: [[(u64, &str); 6]; 6] = [
        [(1, "M2"), (1, "M1,1"), (1, "M1,2"), (1, "M4"), (1, "M2,1"), (1, "M2,2")],
        [(1, "M1,1"), (2, "M1,1"), (1, "M2,1"), (1, "M2,1"), (2, "M2,1"), (1, "M1,1")],
        [(1, "M1,2"), (1, "M2,2"), (1, "M2"), (1, "M2,1"), (1, "M4"), (1, "M1,1")],
        [(1, "M4"), (1, "M2,2"), (1, "M2,2"), (2, "M4"), (1, "M4"), (2, "M2,2")],
        [(1, "M2,1"), (1, "M1,1"), (1, "M1,1"), (2, "M2,1"), (1, "M2,1"), (2, "M1,1")],
        [(1, "M2,2"), (2, "M2,2"), (1, "M4"), (1, "M4"), (2, "M4"), (1, "M2,2")],
    ];
    for (i, (ln, ll)) in labels.iter().enumerate() {
        for (j, (rn, rl)) in labels.iter().enumerate() {
            let prod = abelian::bimodule_tensor(ll, rl, 1).unwrap();
            let name = abelian::identify_z2_label(&prod.label).unwrap();
            let (want_m, want_l) = expected[i][j];
            if (i, j) == (4, 5) {
                println!(
                    "  note: cell {ln} x {rn} computed as {}·{name}; the commonly printed 2M2,2 \
                     violates associativity and op-symmetry",
                    prod.multiplicity
                );
            }
            assert_eq!(prod.multiplicity, want_m, "{ln} x {rn} multiplicity");
            assert_eq!(name, want_l, "{ln} x {rn} label");
        }
    }
    // the worked D(Z2) self-products, appendix derivation as the oracle
    let out = abelian::dz2_bimodule_products().unwrap();
    assert_eq!(out.second_axis, (2, true), "(0 x Z2): M ⊠ M = 2M");
    assert_eq!(out.first_axis.0, 1, "(Z2 x 0): appendix derivation gives multiplicity 1");
    println!(
        "  note: for the (Z2 x 0) module the text states multiplicity 2 while the step-by-step \
         derivation gives 1; the engine follows the derivation (flagged, not resolved)"
    );
    status("8 (bimodule tensor table)", true);
}

#[test]
fn criterion_9_pointed_classification() {
    let t0 = Instant::now();
    // omega_{p,k} simple iff k = 1
    for p in [3u32, 5] {
        for k in [1u32, 2, 3] {
            let form = pointed::build_pointed(&pointed::PointedClass::OmegaPK { p, k, u: 1 }).unwrap();
            let (simple, witness) = pointed::is_simple(&form).unwrap();
            assert_eq!(simple, k == 1, "omega_{{{p},{k}}}");
            if !simple {
                assert!(witness.is_some());
            }
        }
    }
    // E_1, E_2 not simple with an isotropic witness
    for k in [1u32, 2] {
        let form = pointed::build_pointed(&pointed::PointedClass::EK(k)).unwrap();
        let (simple, witness) = pointed::is_simple(&form).unwrap();
        assert!(!simple, "E_{k} must not be simple");
        match witness {
            Some(pointed::SimplicityWitness::CondensableSubgroup(h)) => {
                assert!(h.order() > 1);
            }
            other => panic!("E_{k}: expected an isotropic witness, got {other:?}"),
        }
    }
    // su(2)_k analysis for k = 3, 4, 6
    let r3 = pointed::su2k_report(3);
    assert!(!r3.condensable_0k && r3.splits && !r3.simple);
    let r4 = pointed::su2k_report(4);
    assert!(r4.condensable_0k && !r4.splits && !r4.simple);
    let r6 = pointed::su2k_report(6);
    assert!(!r6.condensable_0k && !r6.splits && r6.simple);
    assert!(t0.elapsed().as_secs() < 60, "criterion 9 exceeded 60 s");
    status("9 (pointed classification, omega/E/su2k parts)", true);

    // F_1..F_3 simple, as stated. F_1 holds; for k >= 2 every pointed theory
    // on Z_{2^k} ⊕ Z_{2^k} has a trivial-twist order-2 element (q(2^{k-1}e) =
    // 4^{k-1} q(e) is an integer multiple of 2^{k-3}), which spans an
    // isotropic Z_2, so the stated claim cannot hold; the assertion below is
    // kept faithful to the criterion and the failure is documented.
    for k in [1u32, 2, 3] {
        let form = pointed::build_pointed(&pointed::PointedClass::FK(k)).unwrap();
        let (simple, witness) = pointed::is_simple(&form).unwrap();
        if !simple {
            println!(
                "ACCEPTANCE 9 (F_{k} simplicity): FAIL — isotropic witness {witness:?}; \
                 the quadratic form q(x,y) = (x²+xy+y²)/2^{k} has the boson 2^{{k-1}}·e"
            );
        }
        assert!(simple, "F_{k} stated simple; see printed witness");
    }
    status("9 (pointed classification, F_k part)", true);
}

#[test]
fn criterion_10_property_suites() {
    // random associativity samples over the catalog
    let mut rng = skelcat::num::SplitMix64::new(2024);
    for key in [CatalogKey::RepS3, CatalogKey::FibP(3), CatalogKey::SO8GaugedS3] {
        let ring = builtin_ring(&key).unwrap();
        for _ in 0..10 {
            let rand_obj = |rng: &mut skelcat::num::SplitMix64| {
                ObjectVector((0..ring.rank()).map(|_| (rng.next_u64() % 3) as u32).collect())
            };
            let x = rand_obj(&mut rng);
            let y = rand_obj(&mut rng);
            let z = rand_obj(&mut rng);
            let left = ring
                .decompose_product(&ring.decompose_product(&x, &y).unwrap(), &z)
                .unwrap();
            let right = ring
                .decompose_product(&x, &ring.decompose_product(&y, &z).unwrap())
                .unwrap();
            assert_eq!(left, right);
        }
    }
    // pentagon/hexagon residuals < 1e-9 on all builtin skeletal data
    for key in [
        skel::SkelKey::VecGTrivial(vec![2]),
        skel::SkelKey::Fib,
        skel::SkelKey::DZn(2),
        skel::SkelKey::Pointed(pointed::PointedClass::Omega2K { k: 1, u: 1 }),
    ] {
        let data = skel::builtin_skeletal(&key).unwrap();
        assert!(skel::check_pentagon(&data, 1e-9).unwrap().max_residual < 1e-9);
        assert!(skel::check_hexagon(&data, 1e-9).unwrap().max_residual < 1e-9);
    }
    // D^T D = M exact on successful condensations
    for (key, algebra) in [(CatalogKey::RepS3, "A+C"), (CatalogKey::SO8GaugedS3, "A+C")] {
        let ring = builtin_ring(&key).unwrap();
        let input = cond::BraidedInput::new(ring, builtin_twists(&key)).unwrap();
        let obj = input.ring.parse_object(algebra).unwrap();
        let res = cond::condense(&input, &obj).unwrap();
        let m = cond::hom_count_matrix(&input.ring, &obj);
        for x in 0..input.ring.rank() {
            for y in 0..input.ring.rank() {
                let dot: u32 =
                    (0..res.condensed.rank()).map(|c| res.d[c][x] * res.d[c][y]).sum();
                assert_eq!(dot, m[x][y]);
            }
        }
    }
    // bimodule multiplicity integrality on 200 random label pairs, |G| <= 16
    let mut rng = skelcat::num::SplitMix64::new(77);
    let groups: Vec<Vec<u32>> = vec![vec![2], vec![4], vec![2, 2], vec![3]];
    let mut checked = 0;
    while checked < 200 {
        let factors = &groups[rng.next_range(groups.len())];
        let g = abelian::FiniteAbelianGroup::new(factors);
        let gg = g.direct_sum(&g);
        let labels = abelian::enumerate_module_cats(&gg).unwrap();
        let l = &labels[rng.next_range(labels.len())];
        let r = &labels[rng.next_range(labels.len())];
        let prod = abelian::bimodule_tensor(l, r, factors.len()).unwrap();
        assert!(prod.multiplicity >= 1);
        checked += 1;
    }
    // determinism of seeded solver runs
    let alg = hopf::one_plus_vec_zp_algebra(2);
    let config = solver::SolverConfig { restarts: 4, seed: 5, max_iterations: 80, ..Default::default() };
    let a = solver::solve_hopf_structures(&alg, &config).unwrap();
    let b = solver::solve_hopf_structures(&alg, &config).unwrap();
    assert_eq!(a.log.len(), b.log.len());
    for (x, y) in a.log.iter().zip(b.log.iter()) {
        assert_eq!((x.converged, x.iterations), (y.converged, y.iterations));
        assert!((x.final_residual - y.final_residual).abs() < 1e-15);
    }
    status("10 (property suites)", true);
}
