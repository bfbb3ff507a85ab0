//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false` so the lines land on stdout in order.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use regsep::algebra::transition_monoid;
use regsep::automata::parse_pattern;
use regsep::blocks::{block_image, block_preimage, d_cut, BlockAlphabet};
use regsep::deciders::{
    aperiodicity_oracle, brute_force_separator, cover_fo, cover_fomod, cover_mod_bounded, cover_su,
    decide_fo, quasi_aperiodicity_oracle, separate_fo, separate_fomod, separate_mod,
    separate_mod_bounded, separate_su, verify_mod_cover, Certificate, Outcome, Problem, Stratum,
    Verdict,
};
use regsep::enrichment::{
    mod_partition, refine_to_congruence, shift, tag_word, CongruencePartition,
};
use regsep::random::{random_dfa, random_word, rng};
use regsep::transfer::{
    alpha_morphism, expand, pull_back_cover, reduce_instance, rho, sfl, SfAlphabet,
};
use regsep::{Alphabet, Dfa, Limits, RecognizedFamily, Word};

use common::{ab, family, stably_formed_words};

type Report = Result<String, String>;

/// Number, name, runtime budget, body.
type Criterion = (usize, &'static str, Duration, fn() -> Report);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_alphabet(r: &mut impl Rng) -> Alphabet {
    if r.gen_bool(0.5) {
        Alphabet::from_chars("a").unwrap()
    } else {
        ab()
    }
}

fn criterion_1() -> Report {
    let part = mod_partition(&ab(), 3)
        .and_then(|p| p.with_class_names(vec!["P0".into(), "P1".into(), "P2".into()]))
        .map_err(|e| e.to_string())?;
    let w = ab().word("babbbaaa").unwrap();
    let got = part.tagged_alphabet().render(&tag_word(&part, &w));
    let want = "(P0,b)(P1,a)(P2,b)(P0,b)(P1,b)(P2,a)(P0,a)(P1,a)";
    check(got == want, || format!("got {got}"))?;
    Ok(got)
}

/// Smallest `k ≤ 4` with an `SU_k(A_s)` separator of the block images,
/// `Ok(None)` when there is none, `Err` when the search hit a cap.
fn brute_su_over_blocks(x1: &Dfa, x2: &Dfa, limits: &Limits) -> Result<Option<(usize, Dfa)>, ()> {
    let letters = x1.alphabet().len() as u64;
    for k in 0..=4u32 {
        if letters.saturating_pow(k) > 5_000 {
            return Err(());
        }
        match brute_force_separator(Stratum::Su(k as usize), x1, x2, limits) {
            Ok(Some(Certificate::Su {
                separator: Some(sep),
                ..
            })) => return Ok(Some((k as usize, sep))),
            Ok(None) => {}
            _ => return Err(()),
        }
    }
    Ok(None)
}

fn criterion_2() -> Report {
    let limits = Limits::default();
    let mut r = rng(2);
    let (mut separable, mut not_separable, mut inconclusive, mut brute_found) = (0, 0, 0, 0);
    for case in 0..200 {
        let l1 = random_dfa(&mut r, &ab(), 4);
        let l2 = random_dfa(&mut r, &ab(), 4);
        let fam = family(&[&l1, &l2], &limits);
        let inst = reduce_instance(&fam, "L0", &["L1".into()]).map_err(|e| e.to_string())?;
        let verdict = separate_su(&inst.images[0].1, &inst.images[1].1, &limits)
            .map_err(|e| e.to_string())?;

        if let Some(Certificate::Su {
            separator: Some(k), ..
        }) = &verdict.certificate
        {
            let pulled = pull_back_cover(&inst.sf, std::slice::from_ref(k), &limits)
                .map_err(|e| e.to_string())?;
            let ok =
                l1.is_subset_of(&pulled[0]).unwrap() && pulled[0].is_disjoint_from(&l2).unwrap();
            check(ok, || {
                format!("case {case}: pulled-back separator fails over A")
            })?;
            separable += 1;
        } else {
            check(verdict.outcome == Outcome::NotSeparable, || {
                format!("case {case}: separable without certificate")
            })?;
            not_separable += 1;
        }

        let s = inst.stability_index();
        if s > 5 {
            inconclusive += 1;
            continue;
        }
        let blocks = BlockAlphabet::with_limits(&ab(), s, &limits).map_err(|e| e.to_string())?;
        let x1 = block_image(&blocks, &l1, &limits).map_err(|e| e.to_string())?;
        let x2 = block_image(&blocks, &l2, &limits).map_err(|e| e.to_string())?;
        match brute_su_over_blocks(&x1, &x2, &limits) {
            Ok(Some((k, sep))) => {
                brute_found += 1;
                let over_a = block_preimage(&blocks, &sep, &limits).map_err(|e| e.to_string())?;
                let ok = l1.is_subset_of(&over_a).unwrap() && over_a.is_disjoint_from(&l2).unwrap();
                check(ok, || format!("case {case}: brute separator fails over A"))?;
                check(verdict.outcome == Outcome::Separable, || {
                    format!("case {case}: brute found an SU_{k} separator over A_{s}, decider says not separable")
                })?;
            }
            Ok(None) => {
                if verdict.outcome == Outcome::NotSeparable {
                    continue;
                }
                // No separator with k ≤ 4, the decider needs a larger one.
                let Some(Certificate::Su { k, .. }) = verdict.certificate else {
                    unreachable!()
                };
                check(k > 4, || {
                    format!("case {case}: decider claims k = {k}, brute search found none")
                })?;
                inconclusive += 1;
            }
            Err(()) => inconclusive += 1,
        }
    }
    Ok(format!(
        "200 pairs: {separable} separable, {not_separable} not separable, brute separators {brute_found}, inconclusive {inconclusive}"
    ))
}

fn criterion_3() -> Report {
    let limits = Limits::default();
    let mut r = rng(3);
    let mut definable = 0;
    for case in 0..100 {
        let alphabet = small_alphabet(&mut r);
        let l = random_dfa(&mut r, &alphabet, 4);
        let v = decide_fo(Problem::Separation, &l, &[&l.complement()], &limits)
            .map_err(|e| e.to_string())?;
        let oracle = aperiodicity_oracle(&l, &limits).map_err(|e| e.to_string())?;
        check(v.is_positive() == oracle, || {
            format!("case {case}: decider {:?}, aperiodic {oracle}", v.outcome)
        })?;
        definable += oracle as usize;
    }
    Ok(format!("100 languages, {definable} FO-definable"))
}

fn criterion_4() -> Report {
    let limits = Limits::default();
    let mut r = rng(4);
    let (mut definable, mut max_sf) = (0, 0);
    for case in 0..100 {
        let alphabet = small_alphabet(&mut r);
        let l = random_dfa(&mut r, &alphabet, 3);
        let v = separate_fomod(&l, &l.complement(), &limits)
            .map_err(|e| format!("case {case}: {e}"))?;
        let oracle = quasi_aperiodicity_oracle(&l, &limits).map_err(|e| e.to_string())?;
        check(v.is_positive() == oracle, || {
            format!(
                "case {case}: decider {:?}, quasi-aperiodic {oracle}",
                v.outcome
            )
        })?;
        definable += oracle as usize;
        max_sf = max_sf.max(v.trace["sf_monoid_size"].as_u64().unwrap_or(0));
    }
    Ok(format!(
        "100 languages, {definable} FO(<,MOD)-definable, largest S_η monoid {max_sf}"
    ))
}

fn criterion_5() -> Report {
    let limits = Limits::default();
    let a = Alphabet::from_chars("a").unwrap();
    let even = parse_pattern("(aa)*", &a).unwrap();
    let odd = parse_pattern("a(aa)*", &a).unwrap();
    let fo = decide_fo(Problem::Separation, &even, &[&odd], &limits).map_err(|e| e.to_string())?;
    check(fo.outcome == Outcome::NotSeparable, || {
        "fo on parity".into()
    })?;
    let m = separate_mod(&even, &odd).map_err(|e| e.to_string())?;
    let Some(Certificate::Mod { d, residues }) = &m.certificate else {
        return Err("mod gave no certificate".into());
    };
    check((*d, residues.clone()) == (2, vec![0]), || {
        format!("mod certificate d={d} residues={residues:?}")
    })?;
    check(
        verify_mod_cover(&even, &[&odd], *d, residues).unwrap(),
        || "mod certificate does not verify".into(),
    )?;
    let fm = separate_fomod(&even, &odd, &limits).map_err(|e| e.to_string())?;
    check(fm.outcome == Outcome::Separable, || {
        "fo-mod on parity".into()
    })?;
    let e_a = parse_pattern("(b*ab*a)*b*", &ab()).unwrap();
    let fm = separate_fomod(&e_a, &e_a.complement(), &limits).map_err(|e| e.to_string())?;
    check(fm.outcome == Outcome::NotSeparable, || {
        "fo-mod on E_a".into()
    })?;
    Ok("parity under fo/mod/fo-mod and E_a under fo-mod as expected".into())
}

/// A unary lasso: a tail of up to 5 states feeding a cycle of up to 8.
fn random_lasso(r: &mut impl Rng) -> Dfa {
    let (tail, cycle) = (r.gen_range(0..=5), r.gen_range(1..=8));
    let n = tail + cycle;
    let delta: Vec<usize> = (0..n)
        .map(|q| if q + 1 < n { q + 1 } else { tail })
        .collect();
    let finals: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.3)).collect();
    Dfa::new(Alphabet::from_chars("a").unwrap(), n, 0, finals, delta)
        .unwrap()
        .minimize()
}

fn criterion_6() -> Report {
    let mut r = rng(6);
    let (mut separable, mut largest) = (0, 0);
    for case in 0..200 {
        let (l1, l2) = if case % 2 == 0 {
            (random_lasso(&mut r), random_lasso(&mut r))
        } else {
            let alphabet = small_alphabet(&mut r);
            (
                random_dfa(&mut r, &alphabet, 6),
                random_dfa(&mut r, &alphabet, 6),
            )
        };
        let v = separate_mod(&l1, &l2).map_err(|e| e.to_string())?;
        let brute = (1..=30).find(|&d| {
            brute_force_separator(Stratum::Mod(d), &l1, &l2, &Limits::default())
                .unwrap()
                .is_some()
        });
        match (&v.certificate, brute) {
            (Some(Certificate::Mod { d, residues }), found) => {
                check(verify_mod_cover(&l1, &[&l2], *d, residues).unwrap(), || {
                    format!("case {case}: bad certificate")
                })?;
                if *d <= 30 {
                    check(found == Some(*d), || {
                        format!("case {case}: decider d = {d}, brute first d = {found:?}")
                    })?;
                } else {
                    check(found.is_none(), || {
                        format!("case {case}: brute found d = {found:?} below decider d = {d}")
                    })?;
                }
                separable += 1;
                largest = largest.max(*d);
            }
            (None, found) => {
                check(
                    v.outcome == Outcome::NotSeparable && found.is_none(),
                    || format!("case {case}: decider not separable, brute found d = {found:?}"),
                )?;
            }
            (Some(other), _) => {
                return Err(format!("case {case}: unexpected certificate {other:?}"))
            }
        }
    }
    Ok(format!(
        "200 pairs, {separable} separable, largest modulus {largest}"
    ))
}

fn random_partition(r: &mut impl Rng, limits: &Limits) -> CongruencePartition {
    let alphabet = if r.gen_bool(0.7) {
        ab()
    } else {
        Alphabet::from_chars("abc").unwrap()
    };
    if r.gen_bool(0.4) {
        mod_partition(&alphabet, r.gen_range(1..=4)).unwrap()
    } else {
        let langs: Vec<Dfa> = (0..r.gen_range(1..=2))
            .map(|_| random_dfa(r, &alphabet, 4))
            .collect();
        refine_to_congruence(&langs, limits).unwrap()
    }
}

fn random_sf(r: &mut impl Rng, limits: &Limits) -> (RecognizedFamily, SfAlphabet) {
    let l1 = random_dfa(r, &ab(), 4);
    let l2 = random_dfa(r, &ab(), 4);
    let fam = family(&[&l1, &l2], limits);
    let sf = SfAlphabet::new(&fam.morphism).unwrap();
    (fam, sf)
}

fn criterion_7() -> Report {
    let limits = Limits::default();
    let mut r = rng(7);
    let mut counts = [0usize; 8];

    for case in 0..1000 {
        let part = random_partition(&mut r, &limits);
        let base = part.base_alphabet().clone();
        let u = random_word(&mut r, &base, 10);
        let v = random_word(&mut r, &base, 10);
        let a = r.gen_range(0..base.len());
        let mut ua = u.clone();
        ua.push(a);
        let mut expect = tag_word(&part, &u);
        expect.push(part.tagged_symbol(part.class_of(&u), a));
        check(tag_word(&part, &ua) == expect, || {
            format!("tagdecomp case {case}")
        })?;
        counts[0] += 1;
        let lhs = tag_word(&part, &u.concat(&v));
        let rhs =
            tag_word(&part, &u).concat(&shift(&part, part.class_of(&u), &tag_word(&part, &v)));
        check(lhs == rhs, || format!("λ identity case {case}"))?;
        counts[1] += 1;
    }

    for case in 0..1000 {
        let base = if r.gen_bool(0.7) {
            ab()
        } else {
            Alphabet::from_chars("abc").unwrap()
        };
        let d = r.gen_range(1..=4);
        let blocks = BlockAlphabet::new(&base, d).unwrap();
        let u: Word = random_word(&mut r, &base, 12);
        let u: Word = u.iter().copied().take(u.len() / d * d).collect();
        let v = random_word(&mut r, &base, 12);
        let joined = blocks.encode(&u.concat(&v));
        check(
            joined == blocks.encode(&u).concat(&blocks.encode(&v)),
            || format!("blockcut case {case}"),
        )?;
        counts[2] += 1;
        let w = random_word(&mut r, &base, 14);
        let (head, tail) = d_cut(d, &w);
        let expect = if tail.is_empty() {
            blocks.encode(&head)
        } else {
            let mut e = blocks.encode(&head);
            e.push(blocks.symbol_of(&tail));
            e
        };
        check(
            head.concat(&tail) == w && blocks.encode(&w) == expect,
            || format!("cuts case {case}"),
        )?;
        counts[3] += 1;
    }

    let mut rho_cases = 0;
    while rho_cases < 1000 {
        let (fam, sf) = random_sf(&mut r, &limits);
        let sfls: Vec<(Dfa, Dfa)> = fam
            .names()
            .map(|n| {
                (
                    fam.language(n).unwrap(),
                    sfl(&sf, fam.get(n).unwrap()).unwrap(),
                )
            })
            .collect();
        for w in Dfa::universal(ab())
            .enumerate(8)
            .unwrap()
            .into_iter()
            .step_by(7)
        {
            let image = rho(&sf, &w);
            check(sf.is_stably_formed(&image), || {
                format!("ρ({}) not stably formed", ab().render(&w))
            })?;
            check(sf.evaluate(&image) == fam.morphism.image(&w), || {
                format!("ev(ρ({})) ≠ η", ab().render(&w))
            })?;
            for (lang, image_lang) in &sfls {
                check(lang.accepts(&w) == image_lang.accepts(&image), || {
                    format!("ρ membership at {}", ab().render(&w))
                })?;
            }
            rho_cases += 1;
        }
    }
    counts[4] = rho_cases;

    let mut alpha_cases = 0;
    let mut morph_cases = 0;
    while alpha_cases < 1000 || morph_cases < 1000 {
        let (fam, sf) = random_sf(&mut r, &limits);
        let words = stably_formed_words(&sf, 5, 2000);
        let alpha = alpha_morphism(&sf, 1).map_err(|e| e.to_string())?;
        let sfls: Vec<(Dfa, Dfa)> = fam
            .names()
            .map(|n| {
                (
                    fam.language(n).unwrap(),
                    sfl(&sf, fam.get(n).unwrap()).unwrap(),
                )
            })
            .collect();
        for w in words.iter().take(400) {
            let expanded = expand(&alpha, w);
            for (lang, image_lang) in &sfls {
                check(image_lang.accepts(w) == lang.accepts(&expanded), || {
                    "α membership".into()
                })?;
            }
            alpha_cases += 1;
        }
        for d in 1..=3 {
            let alpha = alpha_morphism(&sf, d).map_err(|e| e.to_string())?;
            let blocks = BlockAlphabet::new(&ab(), d).unwrap();
            let gamma: Vec<Word> = alpha.iter().map(|x| blocks.encode(x)).collect();
            for w in words.iter().step_by(3).take(60) {
                check(
                    expand(&gamma, w) == blocks.encode(&expand(&alpha, w)),
                    || format!("createmorph, d = {d}"),
                )?;
                morph_cases += 1;
            }
        }
    }
    counts[5] = alpha_cases;
    counts[6] = morph_cases;

    Ok(format!(
        "tagdecomp {}, λ {}, blockcut {}, cuts {}, ρ {}, α {}, createmorph {}",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5], counts[6]
    ))
}

fn criterion_8() -> Report {
    let limits = Limits::default();
    let a = Alphabet::from_chars("a").unwrap();
    let (parity, _) = transition_monoid(&parse_pattern("(aa)*", &a).unwrap(), &limits)
        .map_err(|e| e.to_string())?;
    check(parity.stability_index().0 == 2, || {
        "parity stability index".into()
    })?;

    let mut r = rng(8);
    let (mut verified, mut max_s) = (0, 0);
    for case in 0..200 {
        let alphabet = small_alphabet(&mut r);
        let l = random_dfa(&mut r, &alphabet, 4);
        let (eta, _) = transition_monoid(&l, &limits).map_err(|e| e.to_string())?;
        let (s, stable) = eta.stability_index();
        let images = |n: usize| -> Vec<usize> {
            let all = Dfa::universal(alphabet.clone());
            let mut v: Vec<usize> = all
                .enumerate(n)
                .unwrap()
                .into_iter()
                .filter(|w| w.len() == n)
                .map(|w| eta.image(&w))
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let k = alphabet.len() as u64;
        if k.saturating_pow(2 * s as u32) > 1_000_000 || 2 * s > limits.max_enum_len {
            continue;
        }
        check(
            images(s) == stable.to_vec() && images(2 * s) == stable.to_vec(),
            || format!("case {case}: s = {s}"),
        )?;
        for t in 1..s {
            check(images(t) != images(2 * t), || {
                format!("case {case}: {t} < {s} already stable")
            })?;
        }
        verified += 1;
        max_s = max_s.max(s);
    }
    Ok(format!(
        "parity s = 2, {verified} random morphisms re-verified, largest s {max_s}"
    ))
}

fn criterion_9() -> Report {
    let limits = Limits::default();
    let mut r = rng(9);
    let mut agree = [0usize; 4];
    for case in 0..100 {
        let alphabet = small_alphabet(&mut r);
        let l1 = random_dfa(&mut r, &alphabet, 3);
        let l2 = random_dfa(&mut r, &alphabet, 3);
        let cuts = [l2.clone()];
        let fam = family(&[&l1, &l2], &limits);
        let pairs: [(Verdict, Verdict); 4] = [
            (
                separate_mod_bounded(&l1, &l2, 30),
                cover_mod_bounded(&l1, &cuts, 30),
            ),
            (
                separate_su(&l1, &l2, &limits),
                cover_su(&l1, &cuts, &limits),
            ),
            (
                separate_fo(&fam, "L0", "L1", &limits),
                cover_fo(&fam, "L0", &["L1".into()], &limits),
            ),
            (
                separate_fomod(&l1, &l2, &limits),
                cover_fomod(&l1, &cuts, &limits),
            ),
        ]
        .map(|(s, c)| (s.unwrap(), c.unwrap()));
        for (i, (sep, cov)) in pairs.iter().enumerate() {
            check(sep.is_positive() == cov.is_positive(), || {
                format!(
                    "case {case}, {}: separation {:?}, covering {:?}",
                    sep.class.as_str(),
                    sep.outcome,
                    cov.outcome
                )
            })?;
            agree[i] += 1;
        }
    }
    Ok(format!(
        "mod-brute {}, su {}, fo {}, fo-mod {} instances agree",
        agree[0], agree[1], agree[2], agree[3]
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "tagging example", Duration::from_secs(1), criterion_1),
        (
            2,
            "transfer with SU vs block brute force",
            Duration::from_secs(300),
            criterion_2,
        ),
        (
            3,
            "FO vs aperiodicity",
            Duration::from_secs(120),
            criterion_3,
        ),
        (
            4,
            "FO(<,MOD) vs quasi-aperiodicity",
            Duration::from_secs(600),
            criterion_4,
        ),
        (5, "named instances", Duration::from_secs(10), criterion_5),
        (
            6,
            "MOD vs brute force d ≤ 30",
            Duration::from_secs(120),
            criterion_6,
        ),
        (7, "invariant suites", Duration::from_secs(180), criterion_7),
        (8, "stability index", Duration::from_secs(60), criterion_8),
        (
            9,
            "covering vs separation",
            Duration::from_secs(300),
            criterion_9,
        ),
    ];
    // `cargo test --test acceptance -- 3 7` runs a subset.
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed <= budget {
                Ok(msg)
            } else {
                Err(format!(
                    "{msg}; over budget ({:.1}s > {}s)",
                    elapsed.as_secs_f64(),
                    budget.as_secs()
                ))
            }
        });
        match result {
            Ok(msg) => println!(
                "criterion {n} ({name}): PASS [{:.2}s] {msg}",
                elapsed.as_secs_f64()
            ),
            Err(msg) => {
                failed += 1;
                println!(
                    "criterion {n} ({name}): FAIL [{:.2}s] {msg}",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
