use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::eval::PointEvaluator;
use super::result::{CensusResult, CensusRun, ShardRange};
use super::spec::{CensusSpec, RankKind};
use crate::algebra::FieldSpec;
use crate::error::{Error, Result};
use crate::lfun::{schur_provider, MatrixProvider};
use crate::univar::TwistPoly;

/// Splits `0..n` into at most `shards` ranges whose boundaries are
/// multiples of a power of `q`, so each shard fixes a prefix of top
/// coefficients.
pub fn shard_ranges(q: u64, m: usize, shards: usize) -> Vec<ShardRange> {
    let n = q.pow(m as u32 + 1);
    let shards = shards.max(1) as u64;
    // smallest block q^j with at least `shards` blocks, when possible
    let mut block = n;
    while block > 1 && n / block < shards {
        block /= q;
    }
    let blocks = n / block;
    let per = blocks.div_ceil(shards.min(blocks));
    (0..blocks)
        .step_by(per as usize)
        .map(|b| ShardRange {
            start: b * block,
            end: ((b + per) * block).min(n),
        })
        .collect()
}

#[derive(Default)]
struct Tally {
    histogram: BTreeMap<u32, u64>,
    enumerated: u64,
    hits: Vec<(TwistPoly, u32)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (r, c) in other.histogram {
            *self.histogram.entry(r).or_default() += c;
        }
        self.enumerated += other.enumerated;
        self.hits.extend(other.hits);
        self
    }

    fn record(&mut self, spec: &CensusSpec, p: TwistPoly, rank: u32, weight: u64) {
        *self.histogram.entry(rank).or_default() += weight;
        self.enumerated += weight;
        if spec.emit_threshold.is_some_and(|t| rank as usize >= t) {
            self.hits.push((p, rank));
        }
    }
}

fn check_spec(spec: &CensusSpec, provider: &MatrixProvider) -> Result<u64> {
    if spec.m != provider.m {
        return Err(Error::InvalidInput(format!(
            "census m={} does not match the provider's m={}",
            spec.m, provider.m
        )));
    }
    spec.check_budget()
}

fn finish(spec: &CensusSpec, provider: &MatrixProvider, tally: Tally, manifest: Vec<ShardRange>, orbits: Option<u64>, started: Instant) -> CensusRun {
    let mut result = CensusResult {
        field: spec.field.clone(),
        m: spec.m,
        provider_id: provider.provider_id(),
        rank_kind: spec.rank_kind,
        filters: spec.filters.clone(),
        enumerated: tally.enumerated,
        counts: BTreeMap::new(),
        histogram: tally.histogram,
        manifest,
        orbit_representatives: orbits,
    };
    result.counts = spec.thresholds.iter().map(|&i| (i, result.count(i))).collect();
    CensusRun {
        result,
        elapsed: started.elapsed(),
        hits: tally.hits,
    }
}

/// Ranks every point of `F_q^(m+1)` passing the filters.
pub fn census(spec: &CensusSpec, provider: &MatrixProvider) -> Result<CensusRun> {
    let started = Instant::now();
    check_spec(spec, provider)?;
    let eval = PointEvaluator::new(provider, &spec.field, spec.rank_kind)?;
    let manifest = shard_ranges(spec.field.order() as u64, spec.m, spec.shards);
    let tallies = manifest
        .par_iter()
        .map(|range| {
            let mut t = Tally::default();
            for n in range.start..range.end {
                let p = spec.point(n);
                if spec.passes(&p)? {
                    let r = eval.rank(&p)?;
                    t.record(spec, p, r, 1);
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<Tally>>>()?;
    let tally = tallies.into_iter().fold(Tally::default(), Tally::merge);
    Ok(finish(spec, provider, tally, manifest, None, started))
}

/// A point where the two rank pipelines disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: TwistPoly,
    pub symbolic: u32,
    pub determinant: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: u64,
    pub disagreements: u64,
    /// The first few disagreements.
    pub witnesses: Vec<Witness>,
}

impl ConsistencyReport {
    pub fn agrees(&self) -> bool {
        self.disagreements == 0
    }
}

const MAX_WITNESSES: usize = 16;

/// Compares the rank at infinity read from the vanishing of the reduced
/// symbolic coefficients with the one from per-point determinants.
pub fn census_consistency(spec: &CensusSpec, provider: &MatrixProvider) -> Result<ConsistencyReport> {
    if spec.rank_kind != RankKind::AtInfinity {
        return Err(Error::InvalidInput("consistency is defined for the rank at infinity".into()));
    }
    let n = check_spec(spec, provider)?;
    let eval = PointEvaluator::new(provider, &spec.field, RankKind::AtInfinity)?;
    let mut report = ConsistencyReport {
        checked: 0,
        disagreements: 0,
        witnesses: Vec::new(),
    };
    for idx in 0..n {
        let p = spec.point(idx);
        if !spec.passes(&p)? {
            continue;
        }
        let symbolic = eval.rank(&p)?;
        let determinant = eval.rank_by_determinant(&p)?;
        report.checked += 1;
        // thresholds only matter through the rank, so compare ranks
        if symbolic != determinant {
            report.disagreements += 1;
            if report.witnesses.len() < MAX_WITNESSES {
                report.witnesses.push(Witness {
                    point: p,
                    symbolic,
                    determinant,
                });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingReport {
    /// `#X(m, i)(F_q)`.
    pub lower: u64,
    /// Points of `X(m+1, i)(F_q)` with `a_(m+1) = 0`.
    pub restricted: u64,
    /// Points in exactly one of the two sets, as degree-`m` twists.
    pub mismatches: Vec<TwistPoly>,
}

impl NestingReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `X(m, i)(F_q)` with the slice `a_(m+1) = 0` of
/// `X(m+1, i)(F_q)`, both for the built-in providers.
pub fn nesting_census(field: &FieldSpec, m: usize, i: usize, kind: RankKind, budget: u64) -> Result<NestingReport> {
    let lower_p = schur_provider(m)?;
    let upper_p = schur_provider(m + 1)?;
    let lower_spec = CensusSpec::new(field.clone(), m, kind).with_budget(budget);
    let upper_spec = CensusSpec::new(field.clone(), m + 1, kind).with_budget(budget);
    lower_spec.check_budget()?;
    upper_spec.check_budget()?;
    let lower_eval = PointEvaluator::new(&lower_p, field, kind)?;
    let upper_eval = PointEvaluator::new(&upper_p, field, kind)?;
    let mut report = NestingReport {
        lower: 0,
        restricted: 0,
        mismatches: Vec::new(),
    };
    // the slice a_(m+1) = 0 is exactly the first q^(m+1) upper indices
    for idx in 0..lower_spec.num_points() as u64 {
        let p = lower_spec.point(idx);
        let in_lower = lower_eval.rank(&p)? as usize >= i;
        let in_upper = upper_eval.rank(&upper_spec.point(idx))? as usize >= i;
        report.lower += in_lower as u64;
        report.restricted += in_upper as u64;
        if in_lower != in_upper {
            report.mismatches.push(p);
        }
    }
    Ok(report)
}

/// Shift-orbit representatives `(minimal index member, orbit size)` of
/// `F_q^(m+1)` under `P(θ) -> P(θ + a)`.
pub fn shift_orbits(field: &FieldSpec, m: usize) -> Vec<(TwistPoly, u64)> {
    let spec = CensusSpec::new(field.clone(), m, RankKind::AtOne);
    (0..spec.num_points() as u64)
        .filter_map(|n| orbit_of(&spec, n))
        .collect()
}

/// `Some((P, orbit size))` if index `n` is its orbit's representative.
fn orbit_of(spec: &CensusSpec, n: u64) -> Option<(TwistPoly, u64)> {
    let p = spec.point(n);
    let mut members: Vec<u64> = spec.field.elements().map(|a| spec.index(&p.shift(a))).collect();
    members.sort_unstable();
    members.dedup();
    (members[0] == n).then(|| (p, members.len() as u64))
}

/// Default number of random points on which shift invariance is checked.
pub const DEFAULT_SHIFT_SAMPLE: usize = 64;

/// Census over one representative per shift orbit, weighted by orbit
/// size. Shift invariance of the rank is first checked on `sample` random
/// points and every shift of each.
pub fn shift_orbit_reduce(spec: &CensusSpec, provider: &MatrixProvider, sample: usize, seed: u64) -> Result<CensusRun> {
    let started = Instant::now();
    let n = check_spec(spec, provider)?;
    let eval = PointEvaluator::new(provider, &spec.field, spec.rank_kind)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..sample {
        let p = spec.point(rng.gen_range(0..n));
        let r = eval.rank(&p)?;
        for a in spec.field.elements() {
            let shifted = p.shift(a);
            let rs = eval.rank(&shifted)?;
            if rs != r {
                return Err(Error::SymmetryViolation(format!(
                    "{} rank of {p} is {r} but of its shift {shifted} is {rs}",
                    spec.rank_kind
                )));
            }
        }
    }
    let mut tally = Tally::default();
    let mut reps = 0;
    for idx in 0..n {
        let Some((p, size)) = orbit_of(spec, idx) else { continue };
        // every filter is shift invariant
        if !spec.passes(&p)? {
            continue;
        }
        reps += 1;
        let r = eval.rank(&p)?;
        tally.record(spec, p, r, size);
    }
    let manifest = vec![ShardRange { start: 0, end: n }];
    Ok(finish(spec, provider, tally, manifest, Some(reps), started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::spec::{Filter, DEFAULT_BUDGET};
    use crate::lfun::parse_provider;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    /// Provider with entries built from `P(t)` and `t^q - t`, which makes
    /// both ranks shift invariant.
    pub(crate) fn shift_invariant_provider(q: u32, m: usize) -> MatrixProvider {
        let k = crate::lfun::build_k(q as u64, m, 1).unwrap();
        let p: Vec<String> = (0..=m).map(|j| format!("a{j}*t^{j}")).collect();
        let p = p.join(" + ");
        let mut text = format!("q: {q}\nm: {m}\nn: 1\nk: {k}\nsource: test\nentries:\n");
        for r in 0..k {
            for c in 0..k {
                let e = if r == c {
                    p.clone()
                } else if c == r + 1 {
                    "1".into()
                } else if r == c + 1 {
                    format!("t^{q} - t")
                } else {
                    "0".into()
                };
                text.push_str(&e);
                text.push('\n');
            }
        }
        parse_provider(&text).unwrap()
    }

    #[test]
    fn top_coefficient_count_over_f2() {
        let spec = CensusSpec::new(f(2), 3, RankKind::AtInfinity).with_thresholds([1]);
        let run = census(&spec, &schur_provider(3).unwrap()).unwrap();
        // deg_T L < 3 iff the 3x3 matrix (a3 0 0; a1 a2 a3; 0 a0 a1) is singular
        let mut expected = 0;
        for n in 0..16u32 {
            let a: Vec<u32> = (0..4).map(|j| (n >> j) & 1).collect();
            let det = a[3] * (a[2] * a[1] + a[3] * a[0]);
            expected += (det % 2 == 0) as u64;
        }
        assert_eq!(run.result.counts[&1], expected);
        assert_eq!(run.result.enumerated, 16);
    }

    #[test]
    fn rank_at_least_zero_is_everything() {
        let spec = CensusSpec::new(f(3), 1, RankKind::AtOne).with_thresholds([0]);
        let run = census(&spec, &schur_provider(1).unwrap()).unwrap();
        assert_eq!(run.result.counts[&0], 9);
    }

    #[test]
    fn filters_can_empty_the_census() {
        // rank 5 is out of reach for k = 1: zero count, no error
        let spec = CensusSpec::new(f(2), 1, RankKind::AtOne)
            .with_filters([Filter::Powerfree, Filter::Monic])
            .with_thresholds([0, 5]);
        let run = census(&spec, &schur_provider(1).unwrap()).unwrap();
        // over F2 the twist condition leaves only the unit 1
        assert_eq!(run.result.enumerated, 1);
        assert_eq!(run.result.counts[&5], 0);
    }

    #[test]
    fn sharding_does_not_change_counts() {
        let provider = schur_provider(4).unwrap();
        let base = CensusSpec::new(f(3), 4, RankKind::AtInfinity).with_thresholds([0, 1, 2, 3]);
        let one = census(&base.clone().with_shards(1), &provider).unwrap().result;
        for shards in [2, 8] {
            let r = census(&base.clone().with_shards(shards), &provider).unwrap().result;
            assert_eq!(r.counts, one.counts);
            assert_eq!(r.histogram, one.histogram);
            assert!(r.manifest.len() > 1);
        }
    }

    #[test]
    fn shard_ranges_cover_and_align() {
        for (q, m, s) in [(2u64, 3, 3), (3, 2, 8), (3, 0, 5), (5, 1, 1)] {
            let r = shard_ranges(q, m, s);
            assert_eq!(r[0].start, 0);
            assert_eq!(r.last().unwrap().end, q.pow(m as u32 + 1));
            assert!(r.windows(2).all(|w| w[0].end == w[1].start));
            assert!(r.len() <= s.max(1));
        }
    }

    #[test]
    fn budget_refusal() {
        let spec = CensusSpec::new(f(3), 39, RankKind::AtOne).with_budget(DEFAULT_BUDGET);
        match spec.check_budget() {
            Err(Error::Budget { required, budget }) => {
                assert_eq!(required, 3u128.pow(40));
                assert_eq!(budget, DEFAULT_BUDGET as u128);
            }
            other => panic!("expected a budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn pipelines_agree_small() {
        for (q, m) in [(2, 3), (3, 2)] {
            let spec = CensusSpec::new(f(q), m, RankKind::AtInfinity);
            let rep = census_consistency(&spec, &schur_provider(m).unwrap()).unwrap();
            assert!(rep.agrees(), "{rep:?}");
            assert_eq!(rep.checked, q.pow(m as u32 + 1));
        }
    }

    #[test]
    fn one_by_one_provider() {
        let p = parse_provider("q: 3\nm: 0\nn: 1\nk: 1\nsource: test\nentries:\na0\n").unwrap();
        let spec = CensusSpec::new(f(3), 0, RankKind::AtInfinity).with_thresholds([1]);
        assert!(census_consistency(&spec, &p).unwrap().agrees());
        assert_eq!(census(&spec, &p).unwrap().result.counts[&1], 1);
    }

    #[test]
    fn nesting_examples() {
        for (q, m, i) in [(2, 3, 1), (3, 2, 1), (3, 2, 0)] {
            let rep = nesting_census(&f(q), m, i, RankKind::AtOne, DEFAULT_BUDGET).unwrap();
            assert!(rep.holds(), "q={q} m={m} i={i}: {rep:?}");
        }
    }

    #[test]
    fn orbit_sizes() {
        let orbits = shift_orbits(&f(3), 3);
        assert!(orbits.iter().all(|(p, s)| {
            (*s == 1) == crate::univar::is_shift_stable(p) && (*s == 1 || *s == 3)
        }));
        assert_eq!(orbits.iter().map(|(_, s)| s).sum::<u64>(), 81);
        let small = shift_orbits(&f(2), 2);
        assert_eq!(small.iter().map(|(_, s)| s).sum::<u64>(), 8);
        let c = TwistPoly::from_reprs(&f(3), &[2, 0, 0, 0]).unwrap();
        assert!(orbits.contains(&(c, 1)));
    }

    #[test]
    fn schur_provider_is_not_shift_invariant_mod_3() {
        let spec = CensusSpec::new(f(3), 3, RankKind::AtInfinity);
        let err = shift_orbit_reduce(&spec, &schur_provider(3).unwrap(), 64, 7).unwrap_err();
        assert!(matches!(err, Error::SymmetryViolation(_)), "{err}");
    }

    #[test]
    fn orbit_totals_match_plain_census() {
        for m in 1..=4 {
            let provider = shift_invariant_provider(3, m);
            for kind in [RankKind::AtOne, RankKind::AtInfinity] {
                let spec = CensusSpec::new(f(3), m, kind).with_thresholds(0..=3);
                let plain = census(&spec, &provider).unwrap().result;
                let reduced = shift_orbit_reduce(&spec, &provider, 32, 1).unwrap().result;
                assert_eq!(plain.histogram, reduced.histogram, "m={m} {kind}");
                assert_eq!(plain.counts, reduced.counts);
                assert!(reduced.orbit_representatives.unwrap() < plain.enumerated);
            }
        }
    }

    #[test]
    fn result_text_round_trip() {
        let spec = CensusSpec::new(f(3), 2, RankKind::AtInfinity)
            .with_filters([Filter::Squarefree])
            .with_thresholds([0, 1, 2])
            .with_shards(3);
        let r = census(&spec, &schur_provider(2).unwrap()).unwrap().result;
        assert_eq!(CensusResult::parse(&r.to_text()).unwrap(), r);
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(1).unwrap().starts_with("3,2,"));
    }
}
