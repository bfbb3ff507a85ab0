//! First-order logic with and without modular predicates.
//!
//! FO(<) is decided on pointlike sets. FO(<,MOD) is first moved onto
//! stably-formed words, where the modular predicates disappear, and then
//! decided as FO(<) over the alphabet `S_η`.

use serde_json::json;

use super::pointlike::{fo_pointlikes, PointlikeFamily};
use super::verdict::{Certificate, Class, Outcome, Problem, Verdict, Witness};
use crate::algebra::{common_morphism, transition_monoid, RecognizedFamily};
use crate::transfer::{element_names, reduce_instance};
use crate::{Dfa, Error, Limits, Result};

fn pointlike_decision(
    problem: Problem,
    class: Class,
    family: &RecognizedFamily,
    pointlikes: &PointlikeFamily,
    target: &str,
    cuts: &[String],
) -> Result<Verdict> {
    let mut sets = vec![family.get(target)?];
    for c in cuts {
        sets.push(family.get(c)?);
    }
    let obstruction = pointlikes.meeting_all(&sets);
    let witness = obstruction.map(|x| {
        let hits: Vec<usize> = sets
            .iter()
            .map(|s| x.intersection(s).first().expect("meets"))
            .collect();
        let eta = &family.morphism;
        Witness::Pointlike {
            set: x.to_vec(),
            set_labels: x.iter().map(|e| eta.label(e)).collect(),
            hit_labels: hits.iter().map(|&e| eta.label(e)).collect(),
            hits,
        }
    });
    if let Some(Witness::Pointlike { set, hits, .. }) = &witness {
        let ok = hits
            .iter()
            .zip(&sets)
            .all(|(h, s)| set.contains(h) && s.contains(*h));
        if !ok {
            return Err(Error::Internal(
                "pointlike witness failed verification".into(),
            ));
        }
    }
    let positive = witness.is_none();
    Ok(Verdict {
        problem,
        class,
        outcome: Outcome::of(problem, positive),
        certificate: positive.then_some(Certificate::Fo),
        witness,
        trace: serde_json::Value::Null,
        alphabet: family.morphism.alphabet().clone(),
    })
}

/// FO(<)-separation of two entries of a recognized family.
pub fn separate_fo(
    family: &RecognizedFamily,
    i: &str,
    j: &str,
    limits: &Limits,
) -> Result<Verdict> {
    let pointlikes = fo_pointlikes(&family.morphism, limits)?;
    let trace = json!({ "monoid_size": family.morphism.monoid().size(), "maximal_pointlikes": pointlikes.maximal().len() });
    let mut v = pointlike_decision(
        Problem::Separation,
        Class::Fo,
        family,
        &pointlikes,
        i,
        &[j.to_string()],
    )?;
    v.trace = trace;
    Ok(v)
}

/// FO(<)-covering: the target against the multiset of cuts.
pub fn cover_fo(
    family: &RecognizedFamily,
    target: &str,
    cuts: &[String],
    limits: &Limits,
) -> Result<Verdict> {
    let pointlikes = fo_pointlikes(&family.morphism, limits)?;
    let trace = json!({ "monoid_size": family.morphism.monoid().size(), "maximal_pointlikes": pointlikes.maximal().len() });
    let mut v = pointlike_decision(
        Problem::Covering,
        Class::Fo,
        family,
        &pointlikes,
        target,
        cuts,
    )?;
    v.trace = trace;
    Ok(v)
}

/// Names `L0, L1, …` for a target followed by its cuts.
fn named(target: &Dfa, cuts: &[&Dfa]) -> (Vec<(String, Dfa)>, Vec<String>) {
    let all: Vec<(String, Dfa)> = std::iter::once(target)
        .chain(cuts.iter().copied())
        .enumerate()
        .map(|(i, d)| (format!("L{i}"), d.clone()))
        .collect();
    let cut_names = all[1..].iter().map(|(n, _)| n.clone()).collect();
    (all, cut_names)
}

/// Convenience: FO(<) decision straight from automata.
pub fn decide_fo(
    problem: Problem,
    target: &Dfa,
    cuts: &[&Dfa],
    limits: &Limits,
) -> Result<Verdict> {
    let (langs, cut_names) = named(target, cuts);
    let family = common_morphism(&langs, limits)?;
    match problem {
        Problem::Separation => separate_fo(&family, "L0", &cut_names[0], limits),
        Problem::Covering => cover_fo(&family, "L0", &cut_names, limits),
    }
}

fn decide_fomod(problem: Problem, target: &Dfa, cuts: &[&Dfa], limits: &Limits) -> Result<Verdict> {
    let (langs, cut_names) = named(target, cuts);
    let family = common_morphism(&langs, limits)?;
    let instance = reduce_instance(&family, "L0", &cut_names)?;
    let sf_family = common_morphism(&instance.images, limits)?;
    let pointlikes = fo_pointlikes(&sf_family.morphism, limits)?;
    let trace = json!({
        "monoid_size": family.morphism.monoid().size(),
        "stability_index": instance.stability_index(),
        "stable": element_names(&instance.sf, instance.stable()),
        "sf_alphabet": instance.sf.alphabet().names(),
        "sf_monoid_size": sf_family.morphism.monoid().size(),
        "maximal_pointlikes": pointlikes.maximal().len(),
    });
    let mut v = pointlike_decision(
        problem,
        Class::FoMod,
        &sf_family,
        &pointlikes,
        "L0",
        &cut_names,
    )?;
    v.trace = trace;
    v.alphabet = target.alphabet().clone();
    Ok(v)
}

/// FO(<,MOD)-separation of two languages.
pub fn separate_fomod(l1: &Dfa, l2: &Dfa, limits: &Limits) -> Result<Verdict> {
    decide_fomod(Problem::Separation, l1, &[l2], limits)
}

/// FO(<,MOD)-covering of `target` against the multiset `cuts`.
pub fn cover_fomod(target: &Dfa, cuts: &[Dfa], limits: &Limits) -> Result<Verdict> {
    let cuts: Vec<&Dfa> = cuts.iter().collect();
    decide_fomod(Problem::Covering, target, &cuts, limits)
}

/// Whether the stable semigroup of the syntactic morphism of `lang` is
/// aperiodic, i.e. whether `lang` is FO(<,MOD)-definable.
pub fn quasi_aperiodicity_oracle(lang: &Dfa, limits: &Limits) -> Result<bool> {
    let (eta, _) = transition_monoid(&lang.minimize(), limits)?;
    let stable = eta.stable_semigroup();
    eta.monoid().is_aperiodic(Some(&stable))
}

/// Whether the syntactic monoid of `lang` is aperiodic, i.e. whether `lang`
/// is FO(<)-definable.
pub fn aperiodicity_oracle(lang: &Dfa, limits: &Limits) -> Result<bool> {
    let (eta, _) = transition_monoid(&lang.minimize(), limits)?;
    eta.monoid().is_aperiodic(None)
}
