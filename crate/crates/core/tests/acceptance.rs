//! Acceptance criteria 1 to 9, one line each. Exits with status 1 when any
//! criterion fails.

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reducta::coeffring::{Coefficient, Rat};
use reducta::linalg::{cauchy_det, cauchy_inverse, cauchy_matrix, ring_cauchy, ring_cauchy_det, ring_cauchy_inverse, ring_residue_identity};
use reducta::projector::{Oracle, ProjectorConfig};
use reducta::stability::{check_stabilization, cut, cut_preimages};
use reducta::weights::{GenOrder, GeneratorId, Weight};
use reducta::zn::{
    build_family, build_relations, central_elements, derive_ordering_rules, epsilon, inversion_rhs, longest_closed_form,
    normal_order, normal_order_with, omega, reduced_word, tring_in_t, verify_weight_block, word_weight, zhelobenko,
    zhelobenko_inverse, zhelobenko_longest, zhelobenko_word, Family, NormalOrderOptions, RuleSet, Strategy, ZElement,
    DENOMINATOR_SHIFT_BOUND,
};

const SEED: u64 = 20_240_517;

type Criterion = Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>;

/// Outcome of one criterion: failures are listed by name.
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn oracle(n: usize) -> Oracle {
    Oracle::new(ProjectorConfig::new(n)).expect("projector images")
}

fn rules(n: usize) -> RuleSet {
    derive_ordering_rules(n, &ProjectorConfig::new(n)).expect("ordering rules")
}

fn gens(n: usize) -> Vec<GeneratorId> {
    GeneratorId::all(n).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn relation_soundness() -> Outcome {
    let mut o = Outcome::new();
    let check = |n: usize, rels: Vec<reducta::zn::Relation>, o: &mut Outcome| {
        let start = Instant::now();
        let orc = oracle(n);
        let count = rels.len();
        for r in rels {
            let ok = orc.eval(&r.plain()).is_zero();
            o.check(ok, || format!("n={n} family {} {:?}", r.family, r.indices));
        }
        o.notes.push(format!("n={n}: {count} instances in {:.1?}", start.elapsed()));
    };
    check(2, build_relations(2), &mut o);
    let n3: Vec<_> = [Family::T1, Family::T3a, Family::T3b, Family::T4a, Family::T4b]
        .into_iter()
        .flat_map(|f| build_family(3, f))
        .collect();
    check(3, n3, &mut o);
    let n4: Vec<_> = build_family(4, Family::T2).into_iter().filter(|r| r.indices == [1, 2, 3, 4]).collect();
    o.check(!n4.is_empty(), || "no type-2 instance for (1,2,3,4)".into());
    check(4, n4, &mut o);
    o
}

fn rule_completeness(rng: &mut ChaCha8Rng) -> Outcome {
    let mut o = Outcome::new();
    for n in 2..=3 {
        let rules = rules(n);
        let expected = n * n * (n * n - 1) / 2;
        o.check(rules.len() == expected, || format!("n={n}: {} rules, expected {expected}", rules.len()));
        let g = gens(n);
        for _ in 0..500 {
            let len = rng.gen_range(1..=4);
            let w: Vec<GeneratorId> = (0..len).map(|_| g[rng.gen_range(0..g.len())]).collect();
            match normal_order_with(&ZElement::word(n, &w), &rules, NormalOrderOptions::default()) {
                Ok((_, stats)) => o.check(stats.measure_increases == 0, || format!("n={n} {w:?}: measure increased")),
                Err(e) => o.failures.push(format!("n={n} {w:?}: {e}")),
            }
        }
    }
    o
}

fn confluence() -> Outcome {
    let mut o = Outcome::new();
    for n in 2..=3 {
        let rules = rules(n);
        let g = gens(n);
        for &a in &g {
            for &b in &g {
                for &c in &g {
                    let x = ZElement::word(n, &[a, b, c]);
                    let left = normal_order_with(&x, &rules, NormalOrderOptions::default()).map(|r| r.0);
                    let right = normal_order_with(&x, &rules, NormalOrderOptions::default().with_strategy(Strategy::Rightmost)).map(|r| r.0);
                    o.check(left.is_ok() && left == right, || format!("n={n} {a}{b}{c}"));
                }
            }
        }
    }
    o
}

fn zhelobenko_suite() -> Outcome {
    let mut o = Outcome::new();
    for n in 3..=4 {
        for i in 1..n - 1 {
            for x in gens(n).into_iter().map(|g| ZElement::word(n, &[g])) {
                let ok = zhelobenko_word(&[i, i + 1, i], &x) == zhelobenko_word(&[i + 1, i, i + 1], &x);
                o.check(ok, || format!("braid n={n} i={i} on {x}"));
            }
        }
        if n == 4 {
            for x in gens(n).into_iter().map(|g| ZElement::word(n, &[g])) {
                o.check(zhelobenko_word(&[1, 3], &x) == zhelobenko_word(&[3, 1], &x), || format!("q1 q3 = q3 q1 on {x}"));
            }
        }
    }
    for n in 2..=4 {
        for i in 1..n {
            for g in gens(n) {
                let ok = zhelobenko_word(&[i, i], &ZElement::word(n, &[g])) == inversion_rhs(n, i, g);
                o.check(ok, || format!("inversion n={n} i={i} on {g}"));
            }
        }
    }
    let n = 3;
    for sigma in permutations(n) {
        let word = reduced_word(&sigma);
        for l in 1..=n {
            let ok = zhelobenko_word(&word, &tring_in_t(n, l)) == tring_in_t(n, sigma[l - 1]);
            o.check(ok, || format!("q_sigma tring[{l}] for {sigma:?}"));
        }
    }
    let mut closed_form_misses = 0;
    for n in 2..=3 {
        for g in gens(n).into_iter().filter(|g| !g.is_cartan()) {
            let ok = zhelobenko_longest(&ZElement::word(n, &[g])) == longest_closed_form(n, g.i as usize, g.j as usize);
            if !ok {
                closed_form_misses += 1;
            }
            o.check(ok, || format!("closed form of q_w0 n={n} on {g}"));
        }
    }
    let mut epsilon_misses = 0;
    for n in 2..=4 {
        for i in 1..n {
            for x in gens(n).into_iter().map(|g| ZElement::word(n, &[g])) {
                let ok = epsilon(&zhelobenko(i, &x)) == zhelobenko_inverse(i, &epsilon(&x));
                if !ok {
                    epsilon_misses += 1;
                }
                o.check(ok, || format!("epsilon q_{i} = q_{i}^-1 epsilon n={n} on {x}"));
                let ok = omega(&zhelobenko(i, &x)) == zhelobenko(n - i, &omega(&x));
                o.check(ok, || format!("omega q_{i} = q_{} omega n={n} on {x}", n - i));
            }
        }
    }
    o.notes.push(format!("closed form misses {closed_form_misses}, epsilon compatibility misses {epsilon_misses}"));
    o
}

fn centrality() -> Outcome {
    let mut o = Outcome::new();
    for n in 2..=3 {
        let rules = rules(n);
        for c in central_elements(n) {
            for x in gens(n).into_iter().map(|g| ZElement::word(n, &[g])) {
                let ok = normal_order(&c.mul(&x).sub(&x.mul(&c)), &rules).is_ok_and(|z| z.is_zero());
                o.check(ok, || format!("n={n} [{c}, {x}]"));
            }
        }
    }
    o
}

fn cauchy(rng: &mut ChaCha8Rng) -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=4 {
        let a = ring_cauchy(n);
        o.check(a.det() == ring_cauchy_det(n), || format!("ring determinant n={n}"));
        let inv = ring_cauchy_inverse(n);
        o.check(a.mul(&inv).is_identity() && inv.mul(&a).is_identity(), || format!("ring inverse n={n}"));
    }
    for m in 1..=4 {
        let n = 2 * m;
        let x: Vec<Coefficient> = (1..=m).map(|i| Coefficient::theta(n, i)).collect();
        let y: Vec<Coefficient> = (1..=m).map(|j| -Coefficient::theta(n, m + j)).collect();
        let a = cauchy_matrix(&x, &y).expect("distinct nodes");
        let inv = cauchy_inverse(&x, &y).expect("distinct nodes");
        o.check(a.mul(&inv).is_identity() && inv.mul(&a).is_identity(), || format!("generic inverse m={m}"));
        o.check(Ok(a.det()) == cauchy_det(&x, &y), || format!("generic determinant m={m}"));
    }
    let n = 4;
    let sides: Vec<(usize, usize, Coefficient, Coefficient)> = (1..=n)
        .flat_map(|i| (1..=n).map(move |k| (i, k)))
        .map(|(i, k)| {
            let (l, r) = ring_residue_identity(n, i, k);
            (i, k, l, r)
        })
        .collect();
    let mut points = 0;
    while points < 100 {
        let p: Vec<Rat> = (0..n)
            .map(|_| Rat::new(BigInt::from(rng.gen_range(-60..=60)), BigInt::from(rng.gen_range(1..=12))))
            .collect();
        let Ok(values) = sides.iter().map(|(_, _, l, r)| Ok::<_, reducta::Error>((l.evaluate(&p)?, r.evaluate(&p)?))).collect::<Result<Vec<_>, _>>() else {
            continue;
        };
        points += 1;
        for ((i, k, _, _), (l, r)) in sides.iter().zip(values) {
            o.check(l == r, || format!("residue identity ({i},{k}) at {p:?}"));
        }
    }
    o
}

fn weight_blocks(n: usize) -> Vec<Weight> {
    if n == 3 {
        return vec![Weight::root(n, 1, 3), Weight::zero(n)];
    }
    let mut ws: Vec<Weight> = Vec::new();
    for a in gens(n) {
        for b in gens(n) {
            let w = word_weight(n, &[a, b]);
            if GenOrder::Standard.lt(b, a) && !ws.contains(&w) {
                ws.push(w);
            }
        }
    }
    ws
}

fn denominators() -> Outcome {
    let mut o = Outcome::new();
    for n in 2..=3 {
        let orc = oracle(n);
        for a in gens(n) {
            for b in gens(n) {
                let p = orc.eval_tilde(&ZElement::word(n, &[a, b]));
                for (w, c) in p.iter() {
                    o.check(c.denominators_within(|l| l >= -1), || format!("n={n} {a}*{b} at {w:?}: {c}"));
                }
            }
        }
    }
    for n in 2..=3 {
        let (rels, rules) = (build_relations(n), rules(n));
        for w in weight_blocks(n) {
            match verify_weight_block(&w, &rels, &rules) {
                Ok(rep) => o.check(rep.denominators_admissible(), || format!("n={n} block {w}: {:?}", rep.bad_denominators)),
                Err(e) => o.failures.push(format!("n={n} block {w}: {e}")),
            }
        }
    }
    o.notes.push(format!("block bound |s| <= {DENOMINATOR_SHIFT_BOUND}"));
    o
}

fn stabilization() -> Outcome {
    let mut o = Outcome::new();
    match check_stabilization(2, &ProjectorConfig::new(2), &ProjectorConfig::new(3)) {
        Ok(rep) => {
            o.check(rep.pairs.len() == 16, || format!("{} pairs", rep.pairs.len()));
            o.notes.push(format!("{} of 16 products change under the embedding", rep.nonzero_differences()));
        }
        Err(e) => o.failures.push(e.to_string()),
    }
    let pre = cut_preimages(&build_relations(3));
    let small = build_relations(2);
    let hit: usize = pre.values().map(Vec::len).sum();
    o.check(hit == small.len(), || format!("{hit} cuttable Z_3 relations for {} Z_2 relations", small.len()));
    for rel in small {
        let hits = pre.get(&rel.body.to_string()).map(Vec::as_slice).unwrap_or_default();
        let ok = hits.len() == 1 && cut(&hits[0]).is_ok_and(|c| c.body == rel.body);
        o.check(ok, || format!("cut preimage of family {} {:?}", rel.family, rel.indices));
    }
    o
}

fn presentations() -> Outcome {
    let mut o = Outcome::new();
    for n in 2..=3 {
        let (rels, rules) = (build_relations(n), rules(n));
        let mut unknowns = 0;
        for w in weight_blocks(n) {
            match verify_weight_block(&w, &rels, &rules) {
                Ok(rep) => {
                    unknowns += rep.unknowns.len();
                    o.check(rep.agrees(), || format!("n={n} block {w}: {:?}", rep.mismatches));
                }
                Err(e) => o.failures.push(format!("n={n} block {w}: {e}")),
            }
        }
        o.notes.push(format!("n={n}: {unknowns} unknowns"));
    }
    o
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("relation soundness", Box::new(|_| relation_soundness())),
        ("ordering-rule completeness", Box::new(rule_completeness)),
        ("confluence on cubic words", Box::new(|_| confluence())),
        ("Zhelobenko suite", Box::new(|_| zhelobenko_suite())),
        ("centrality", Box::new(|_| centrality())),
        ("Cauchy identities", Box::new(cauchy)),
        ("denominator structure", Box::new(|_| denominators())),
        ("stabilization", Box::new(|_| stabilization())),
        ("equivalence of presentations", Box::new(|_| presentations())),
    ];
    let mut red = 0;
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = f(&mut rng);
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {}: {status} {name} ({:.1?})", k + 1, start.elapsed());
        if !o.notes.is_empty() {
            line.push_str(&format!("; {}", o.notes.join("; ")));
        }
        if !o.failures.is_empty() {
            red += 1;
            let shown: Vec<&String> = o.failures.iter().take(4).collect();
            line.push_str(&format!("; {} failures, first: {shown:?}", o.failures.len()));
        }
        println!("{line}");
    }
    if red > 0 {
        std::process::exit(1);
    }
}
