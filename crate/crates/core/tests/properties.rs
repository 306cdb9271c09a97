use proptest::prelude::*;

use tvl::dsl::{self, AuditTarget, Command, Script, Statement};
use tvl::exact::{rational_reconstruct, vec_lattice};
use tvl::multi::{annihilated_by_all, complete_to_maximal, is_maximal, is_multi_truncation};
use tvl::repr::{f_hat_with, threshold_paths, witnesses, Lambda};
use tvl::sample::Sampler;
use tvl::spectrum::{all_primes, base_set, dense_in_p, enumerate_primes, q_t, spectrum_v, values, PrimeIdeal};
use tvl::truncation::{birkhoff_identities, classify};
use tvl::{MultiTruncation, Rat, RatVec, Truncation, WeightTruncation};

fn rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

fn pos_rat() -> impl Strategy<Value = Rat> {
    (1i64..=12, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

fn vec_of(dim: usize) -> impl Strategy<Value = RatVec> {
    prop::collection::vec(rat(), dim).prop_map(RatVec::new)
}

fn nonneg_of(dim: usize) -> impl Strategy<Value = RatVec> {
    vec_of(dim).prop_map(|v| v.abs())
}

fn trunc_of(dim: usize) -> impl Strategy<Value = WeightTruncation> {
    (prop::collection::vec(any::<bool>(), dim), prop::collection::vec(pos_rat(), dim)).prop_map(move |(mask, ws)| {
        let mut support: Vec<usize> = (0..dim).filter(|&i| mask[i]).collect();
        if support.is_empty() {
            support.push(0);
        }
        let weights = support.iter().map(|&i| ws[i].clone()).collect();
        WeightTruncation::new(dim, support, weights).unwrap()
    })
}

/// A family over a random partition of a random subset of coordinates.
fn family_of(dim: usize) -> impl Strategy<Value = MultiTruncation> {
    (prop::collection::vec(0usize..=3, dim), prop::collection::vec(pos_rat(), dim)).prop_map(move |(owner, ws)| {
        let mut members = Vec::new();
        for k in 0..3 {
            let support: Vec<usize> = (0..dim).filter(|&i| owner[i] == k).collect();
            if !support.is_empty() {
                let weights = support.iter().map(|&i| ws[i].clone()).collect();
                members.push((format!("t{k}"), WeightTruncation::new(dim, support, weights).unwrap()));
            }
        }
        if members.is_empty() {
            members.push(("t0".into(), WeightTruncation::new(dim, vec![0], vec![Rat::one()]).unwrap()));
        }
        MultiTruncation::new(members).unwrap()
    })
}

fn dim() -> impl Strategy<Value = usize> {
    1usize..=6
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn translation_invariance_and_birkhoff_inequality(
        (f, g, h) in dim().prop_flat_map(|n| (vec_of(n), vec_of(n), vec_of(n)))
    ) {
        let fg = vec_lattice(&f, &g).unwrap();
        let shifted = vec_lattice(&f.add(&h).unwrap(), &g.add(&h).unwrap()).unwrap();
        prop_assert_eq!(fg.join.add(&h).unwrap(), shifted.join.clone());
        prop_assert_eq!(fg.meet.add(&h).unwrap(), shifted.meet.clone());
        let lhs = f.meet(&h).unwrap().sub(&g.meet(&h).unwrap()).unwrap().abs();
        prop_assert!(lhs.le(&f.sub(&g).unwrap().abs()).unwrap());
        for x in fg.meet.iter().chain(shifted.join.iter()) {
            prop_assert!(x.is_canonical());
        }
    }

    #[test]
    fn reconstruct_is_simplest_in_interval(a in rat(), b in rat()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let r = rational_reconstruct(&lo, &hi).unwrap();
        prop_assert!(lo <= r && r <= hi);
        let den: i64 = r.denom().try_into().unwrap();
        for d in 1..den {
            let d = Rat::int(d);
            // some k/d lies in [lo, hi] iff ceil(lo d) <= floor(hi d)
            prop_assert!((&lo * &d).ceil() > (&hi * &d).floor());
        }
    }

    #[test]
    fn truncation_axioms(
        (t, f, g) in dim().prop_flat_map(|n| (trunc_of(n), nonneg_of(n), nonneg_of(n)))
    ) {
        let fs = t.apply(&f).unwrap();
        let gs = t.apply(&g).unwrap();
        prop_assert!(f.meet(&gs).unwrap().le(&fs).unwrap());
        prop_assert!(fs.le(&f).unwrap());
        prop_assert_eq!(f.meet(&gs).unwrap(), fs.meet(&g).unwrap());
        prop_assert!(birkhoff_identities(&t, &f, &g).unwrap().all());
        prop_assert_eq!(t.apply(&fs).unwrap(), fs.clone());
        let fg = f.meet(&g).unwrap();
        prop_assert!(t.apply(&fg).unwrap().le(&fs).unwrap());
        prop_assert_eq!(classify(&t).unwrap().weak.holds, t.has_full_support());
        prop_assert_eq!(classify(&t).unwrap().strong_bounded.holds, t.has_full_support());
        prop_assert!(!classify(&t).unwrap().strong_literal.holds);
    }

    #[test]
    fn maximality_both_directions(fam in dim().prop_flat_map(family_of)) {
        let n = fam.dim();
        prop_assert_eq!(is_multi_truncation(fam.members()).unwrap(), None);
        let covers = fam.covered().len() == n;
        prop_assert_eq!(is_maximal(&fam).is_none(), covers);
        let mut probes: Vec<RatVec> = (0..n).map(|i| RatVec::basis(n, i)).collect();
        probes.extend(Sampler::new(n as u64).nonneg_vecs(n, 8));
        prop_assert_eq!(annihilated_by_all(&fam, &probes).is_none(), covers);

        let done = complete_to_maximal(&fam, "T");
        prop_assert_eq!(&done.members()[..fam.len()], fam.members());
        prop_assert_eq!(is_multi_truncation(done.members()).unwrap(), None);
        prop_assert!(is_maximal(&done).is_none());
        prop_assert_eq!(dense_in_p(n, &spectrum_v(&fam).unwrap().point_set()).unwrap(), covers);
    }

    #[test]
    fn values_and_base_sets(
        (t, f) in dim().prop_flat_map(|n| (trunc_of(n), vec_of(n)))
    ) {
        let n = f.dim();
        if !f.is_zero() {
            // primes omitting f, maximal among all primes
            let omit: Vec<PrimeIdeal> = enumerate_primes(n).into_iter().filter(|p| !p.contains(&f)).collect();
            prop_assert_eq!(values(&f).unwrap(), omit.into_iter().collect());
        } else {
            prop_assert!(values(&f).is_err());
        }
        let q = all_primes(n);
        let a = f.abs();
        let below = base_set(&q, &t.apply(&a).unwrap());
        prop_assert!(below.is_subset(&base_set(&q, &a)));
    }

    #[test]
    fn partition_law(fam in dim().prop_flat_map(family_of)) {
        let q = all_primes(fam.dim());
        let part = q_t(&q, &fam).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for b in &part.blocks {
            for p in b {
                prop_assert!(seen.insert(*p));
            }
        }
        prop_assert_eq!(seen, part.union);
    }

    #[test]
    fn threshold_paths_and_witness_independence(
        (t, f, i, seed) in dim().prop_flat_map(|n| (trunc_of(n), vec_of(n), 0..n, any::<u64>()))
    ) {
        prop_assume!(t.in_support(i));
        let p = PrimeIdeal::new(f.dim(), i);
        let mut s = Sampler::new(seed);
        let us = witnesses(&t, &p, 3, &mut s).unwrap();
        let mut seen = Vec::new();
        for u in &us {
            let paths = threshold_paths(&f, &p, &t, u).unwrap();
            prop_assert!(paths.agree());
            seen.push(f_hat_with(&f, &p, &t, u).unwrap());
        }
        prop_assert!(seen.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn lambda_hom_and_truncation_identity(
        (fam, f, g) in dim().prop_flat_map(|n| (family_of(n), vec_of(n), vec_of(n)))
    ) {
        let done = complete_to_maximal(&fam, "T");
        let lambda = Lambda::over_all(&done).unwrap();
        let col = |v: &RatVec| lambda.column(v).unwrap();
        let (cf, cg) = (col(&f), col(&g));
        let sum: Vec<Rat> = cf.iter().zip(&cg).map(|(a, b)| a + b).collect();
        prop_assert_eq!(col(&f.add(&g).unwrap()), sum);
        let meet: Vec<Rat> = cf.iter().zip(&cg).map(|(a, b)| a.clone().min(b.clone())).collect();
        prop_assert_eq!(col(&f.meet(&g).unwrap()), meet);
        for k in 0..done.len() {
            prop_assert!(tvl::repr::check_trunc_identity(&f.abs(), k, &lambda).unwrap().passed());
        }
    }

    #[test]
    fn script_roundtrip(stmts in prop::collection::vec(statement(), 0..12)) {
        let mut script = Script::default();
        for (i, s) in stmts.into_iter().enumerate() {
            script.push(i + 1, s);
        }
        let text = dsl::serialize(&script);
        let back = dsl::parse(&text).unwrap();
        prop_assert_eq!(&back, &script);
        prop_assert_eq!(dsl::serialize(&back), text);
    }
}

fn name() -> impl Strategy<Value = String> {
    "[a-zA-Z_][a-zA-Z0-9_.-]{0,5}".prop_filter("keyword", |s| {
        ![
            "lattice",
            "vec",
            "trunc",
            "family",
            "complete",
            "classify",
            "spectrum",
            "represent",
            "audit",
            "fuzz",
            "in",
            "all",
        ]
        .contains(&s.as_str())
    })
}

fn statement() -> impl Strategy<Value = Statement> {
    let audit = prop::sample::select(tvl::audit::REGISTRY.to_vec()).prop_map(|id| AuditTarget::One(id.into()));
    prop_oneof![
        (1usize..=6).prop_map(|dim| Statement::Lattice { dim }),
        (name(), prop::collection::vec(rat(), 1..6)).prop_map(|(name, entries)| Statement::Vec { name, entries }),
        (name(), prop::collection::btree_set(1usize..=6, 1..4), prop::collection::vec(pos_rat(), 3)).prop_map(
            |(name, s, ws)| {
                let support: Vec<usize> = s.into_iter().collect();
                let weights = ws.into_iter().cycle().take(support.len()).collect();
                Statement::Trunc { name, support, weights }
            }
        ),
        (name(), prop::collection::vec(name(), 1..4)).prop_map(|(name, members)| Statement::Family { name, members }),
        name().prop_map(|n| Statement::Command(Command::Complete(n))),
        name().prop_map(|n| Statement::Command(Command::Classify(n))),
        name().prop_map(|n| Statement::Command(Command::Spectrum(n))),
        (name(), name()).prop_map(|(vector, family)| Statement::Command(Command::Represent { vector, family })),
        prop_oneof![Just(AuditTarget::All), audit].prop_map(|a| Statement::Command(Command::Audit(a))),
        (any::<u64>(), 0usize..1000).prop_map(|(seed, cases)| Statement::Command(Command::Fuzz { seed, cases })),
    ]
}
