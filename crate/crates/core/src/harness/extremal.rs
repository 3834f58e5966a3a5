use rayon::prelude::*;

use super::{ConjectureRecord, ConjectureStatus, Evaluator, InstanceRecord, Premise, Verdict, VerificationReport};
use crate::canonical::CanonicalKey;
use crate::enumerate::{enumerate_supertrees_with_budget, SupertreeClass};
use crate::error::{Error, Result};
use crate::families;
use crate::spectral::{Comparison, Interval};

/// `winner` against every interval in `others`: confirmed when it beats the
/// highest upper bound, violated when some other one certifiably beats it.
fn beats_all(
    description: String,
    alpha: f64,
    winner: (&str, Interval),
    others: &[(String, Interval)],
    margin: f64,
) -> InstanceRecord {
    let rec = InstanceRecord::new(description, alpha, Verdict::Confirmed).rho(winner.0, winner.1);
    let by = |f: fn(&Interval) -> f64| others.iter().max_by(|a, b| f(&a.1).total_cmp(&f(&b.1)));
    let (Some(highest), Some(strongest)) = (by(|i| i.high), by(|i| i.low)) else {
        return rec.note("no competitors");
    };
    let rec = rec.rho(format!("runner-up {}", highest.0), highest.1).premise(Premise::new(
        "competitors",
        others.len() as f64,
        true,
    ));
    if winner.1.compare(&highest.1, margin) == Comparison::Greater {
        rec
    } else if strongest.1.compare(&winner.1, margin) == Comparison::Greater {
        rec.rho(format!("beaten by {}", strongest.0), strongest.1).verdict(Verdict::Violated)
    } else {
        rec.verdict(Verdict::Inconclusive)
    }
}

fn intervals(classes: &[SupertreeClass], alpha: f64, eval: &Evaluator) -> Result<Vec<Interval>> {
    classes.par_iter().map(|c| eval.interval(&c.graph, alpha)).collect()
}

fn named(classes: &[SupertreeClass], iv: &[Interval], skip: &[&CanonicalKey]) -> Vec<(String, Interval)> {
    classes.iter().zip(iv).filter(|(c, _)| !skip.contains(&&c.key)).map(|(c, i)| (c.key.to_string(), *i)).collect()
}

/// Ranking checks over all supertrees with `m` edges: the hyperstar is the
/// unique maximum, `S(1, m-2)` the unique second, the double stars are
/// ordered by balance, and every class with `N2 = i + 1 >= 2` is beaten by
/// some class with `N2 = i`.
pub fn extremal_scan(k: usize, m: usize, alphas: &[f64], eval: &Evaluator) -> Result<VerificationReport> {
    let margin = eval.options().margin;
    let mut report = VerificationReport::new("extremal", eval.options(), alphas);
    if m <= 2 {
        for &alpha in alphas {
            report.push(
                InstanceRecord::new(format!("k={k} m={m}"), alpha, Verdict::PremiseNotMet)
                    .note("S(1,m-2) undefined for m <= 2"),
            );
        }
        return Ok(report);
    }
    let classes = enumerate_supertrees_with_budget(k, m, eval.options().budget)?;
    let n2: Vec<usize> = classes.iter().map(|c| c.graph.count_non_pendant()).collect();
    let star = families::star(k, m)?;
    let second = families::double_star(k, 1, m - 2)?;
    let star_key = star.canonical_key()?;
    let second_key = second.canonical_key()?;
    let splits: Vec<(usize, usize)> = (1..=(m - 1) / 2).map(|a| (a, m - 1 - a)).collect();
    for &alpha in alphas {
        let iv = intervals(&classes, alpha, eval)?;
        let star_iv = eval.interval(&star, alpha)?;
        let second_iv = eval.interval(&second, alpha)?;
        report.push(beats_all(
            format!("k={k} m={m}: K1,{m} is the unique maximum"),
            alpha,
            ("K1,m", star_iv),
            &named(&classes, &iv, &[&star_key]),
            margin,
        ));
        report.push(beats_all(
            format!("k={k} m={m}: S(1,{}) is the unique second", m - 2),
            alpha,
            ("S(1,m-2)", second_iv),
            &named(&classes, &iv, &[&star_key, &second_key]),
            margin,
        ));
        for (i, &(a, b)) in splits.iter().enumerate() {
            for &(c, d) in &splits[i + 1..] {
                let x = eval.interval(&families::double_star(k, a, b)?, alpha)?;
                let y = eval.interval(&families::double_star(k, c, d)?, alpha)?;
                let rec = InstanceRecord::new(format!("k={k}: S({a},{b}) > S({c},{d})"), alpha, Verdict::Confirmed)
                    .rho(format!("S({a},{b})"), x)
                    .rho(format!("S({c},{d})"), y);
                report.push(rec.verdict(super::verdict_for(x.compare(&y, margin))));
            }
        }
        for (t, class) in classes.iter().enumerate() {
            if n2[t] < 2 {
                continue;
            }
            let target = n2[t] - 1;
            let best = (0..classes.len()).filter(|&j| n2[j] == target).max_by(|&x, &y| iv[x].low.total_cmp(&iv[y].low));
            let rec = InstanceRecord::new(
                format!("k={k} m={m}: N2 reduction from {} (N2={})", class.key, n2[t]),
                alpha,
                Verdict::Confirmed,
            )
            .rho("T", iv[t]);
            report.push(match best {
                Some(j) => rec
                    .rho(format!("best N2={target}: {}", classes[j].key), iv[j])
                    .verdict(super::verdict_for(iv[j].compare(&iv[t], margin))),
                None => rec.verdict(Verdict::Violated).note(format!("no class with N2={target}")),
            });
        }
    }
    Ok(report)
}

/// Non-caterpillar extremal checks. With `d` given only `NC(m, d)` is
/// scanned; otherwise every `4 <= d <= m - 2` is scanned and the maximum over
/// `NC(m)` must sit at diameter 4. The `H1` versus `H2` comparison is
/// reported as conjecture status and never fails the suite.
pub fn nc_scan(k: usize, m: usize, d: Option<usize>, alphas: &[f64], eval: &Evaluator) -> Result<VerificationReport> {
    let margin = eval.options().margin;
    let mut report = VerificationReport::new("nc", eval.options(), alphas).interpret(
        "conjecture: rho(H1(m,d)) >= rho(G) for every G in NC(m,d); reported as status, never as a violation",
    );
    if m < 6 {
        for &alpha in alphas {
            report.push(
                InstanceRecord::new(format!("k={k} m={m}"), alpha, Verdict::PremiseNotMet)
                    .note("NC(m) is empty for m < 6"),
            );
        }
        return Ok(report);
    }
    let diameters: Vec<usize> = match d {
        Some(d) if (4..=m - 2).contains(&d) => vec![d],
        Some(d) => return Err(Error::InvalidParameter(format!("need 4 <= d <= m - 2, got d = {d}, m = {m}"))),
        None => (4..=m - 2).collect(),
    };
    let all = enumerate_supertrees_with_budget(k, m, eval.options().budget)?;
    let nc: Vec<(usize, SupertreeClass)> = all
        .into_iter()
        .filter(|c| !c.graph.is_caterpillar().unwrap_or(true))
        .map(|c| (c.graph.diameter_and_diametral_path().map(|(x, _)| x).unwrap_or(0), c))
        .collect();
    for &alpha in alphas {
        let nc_classes: Vec<SupertreeClass> = nc.iter().map(|(_, c)| c.clone()).collect();
        let iv = intervals(&nc_classes, alpha, eval)?;
        let mut top: Option<(usize, Interval, CanonicalKey, CanonicalKey)> = None;
        for &dd in &diameters {
            let h1 = families::h1(k, m, dd)?;
            let h2 = families::h2(k, m, dd)?;
            let (k1, k2) = (h1.canonical_key()?, h2.canonical_key()?);
            let (i1, i2) = (eval.interval(&h1, alpha)?, eval.interval(&h2, alpha)?);
            let best = if i1.rho >= i2.rho { ("max(H1,H2) = H1", i1) } else { ("max(H1,H2) = H2", i2) };
            let (sub_classes, sub_iv): (Vec<SupertreeClass>, Vec<Interval>) =
                nc.iter().zip(&iv).filter(|((x, _), _)| *x == dd).map(|((_, c), i)| (c.clone(), *i)).unzip();
            let rec = beats_all(
                format!("k={k} NC({m},{dd}): maximum is H1 or H2 ({} classes)", sub_classes.len()),
                alpha,
                best,
                &named(&sub_classes, &sub_iv, &[&k1, &k2]),
                margin,
            );
            let present = sub_classes.iter().any(|c| c.key == k1) && sub_classes.iter().any(|c| c.key == k2);
            report.push(rec.premise(Premise::new("H1, H2 in NC(m,d)", present as u8 as f64, present)));

            let (status, note) = if k1 == k2 {
                (ConjectureStatus::Supported, Some("H1 and H2 are isomorphic".to_string()))
            } else {
                match i1.compare(&i2, margin) {
                    Comparison::Greater => (ConjectureStatus::Supported, None),
                    Comparison::Less => (ConjectureStatus::ContradictedCandidate, None),
                    Comparison::Inconclusive => (ConjectureStatus::Inconclusive, None),
                }
            };
            let verdict = match status {
                ConjectureStatus::Supported => Verdict::Confirmed,
                ConjectureStatus::ContradictedCandidate => Verdict::CounterexampleCandidate,
                ConjectureStatus::Inconclusive => Verdict::Inconclusive,
            };
            let mut rec = InstanceRecord::new(format!("k={k} NC({m},{dd}): conjecture H1 >= H2"), alpha, verdict)
                .rho("H1", i1)
                .rho("H2", i2);
            rec.note = note.clone();
            report.push(rec);
            report.conjecture.push(ConjectureRecord {
                statement: "rho(H1(m,d)) >= rho(G) for all G in NC(m,d)".into(),
                m,
                d: dd,
                alpha,
                status,
                h1: i1,
                h2: i2,
                note,
            });
            if dd == 4 {
                top = Some((4, best.1, k1, k2));
            }
        }
        if d.is_none() {
            let (_, best, k1, k2) = top.expect("d = 4 is always scanned for m >= 6");
            report.push(beats_all(
                format!("k={k} NC({m}): maximum sits at d=4 ({} classes)", nc_classes.len()),
                alpha,
                ("max(H1(m,4),H2(m,4))", best),
                &named(&nc_classes, &iv, &[&k1, &k2]),
                margin,
            ));
        }
    }
    Ok(report)
}
