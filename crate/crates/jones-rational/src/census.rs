//! Determinant-bounded census of rational knots: enumerate Schubert classes,
//! group them by exact Jones polynomial, deduplicate mirror-image groups,
//! and attempt to explain each group by a bounded template search.

use std::collections::HashMap;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::jones::{jones_knot, jones_span};
use crate::rational::{mod_inverse, schubert_canonical, IntSeq, KnotClass};
use crate::ring::LaurentT;
use crate::tangle::b_product;
use crate::template::{ArrowFlag, StarFlag, TemplateInstance};

/// One enumerated knot with its invariants.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub knot: KnotClass,
    pub jones: LaurentT,
    pub span: i64,
    pub det: i64,
}

/// A set of distinct knot classes sharing one Jones polynomial.
#[derive(Clone, Debug)]
pub struct CoincidenceGroup {
    pub det: i64,
    pub members: Vec<KnotClass>,
    pub jones: LaurentT,
    pub span: i64,
    pub amphicheiral: Vec<bool>,
    pub classification: Vec<PairClassification>,
}

/// Outcome of the bounded template search for one member pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairClassification {
    pub pair: [usize; 2],
    pub kind: ClassKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<TemplateInstance>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    TemplateI,
    TemplateII,
    Pivot,
    Unexplained,
}

/// Result of [`classify_pair`].
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationResult {
    pub kind: ClassKind,
    pub witness: Option<TemplateInstance>,
}

impl ClassificationResult {
    fn unexplained() -> Self {
        ClassificationResult {
            kind: ClassKind::Unexplained,
            witness: None,
        }
    }
}

/// All Schubert classes with odd determinant `3 <= p < max_det`, one per
/// inversion orbit `{q, q^-1 mod p}`, mirrors counted separately, in
/// ascending `(p, q_min)` order.
pub fn enumerate_classes(max_det: i64) -> Vec<KnotClass> {
    assert!(max_det >= 3, "census needs max_det >= 3");
    let mut out = Vec::new();
    for p in (3..max_det).step_by(2) {
        for q in 1..p {
            if gcd(p, q) != 1 {
                continue;
            }
            if q > mod_inverse(q, p) {
                continue; // orbit already listed at its smaller member
            }
            out.push(schubert_canonical(p, q).expect("odd reduced fraction"));
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Evaluate the whole census. Work is sharded over classes; each shard is
/// pure and the order of the merged output does not depend on sharding.
pub fn census(max_det: i64) -> Vec<CensusEntry> {
    let classes = enumerate_classes(max_det);
    classes
        .into_par_iter()
        .map(|knot| {
            let (q, _) = knot.qset();
            let jones = jones_knot(knot.det(), q).expect("census member is a knot");
            let span = jones_span(&jones);
            CensusEntry {
                det: knot.det(),
                span,
                knot,
                jones,
            }
        })
        .collect()
}

/// Group the census by exact Jones polynomial, keep groups of two or more
/// distinct classes, and keep one group per mirror orbit (the one whose
/// serialized polynomial is lexicographically smaller, ties meaning the
/// group is its own mirror). Sorted by determinant, then polynomial.
pub fn find_coincidences(max_det: i64) -> Vec<CoincidenceGroup> {
    group_census(&census(max_det))
}

/// Grouping stage of [`find_coincidences`], reusable on a precomputed census.
pub fn group_census(entries: &[CensusEntry]) -> Vec<CoincidenceGroup> {
    let mut by_poly: HashMap<&LaurentT, Vec<&CensusEntry>> = HashMap::new();
    for e in entries {
        by_poly.entry(&e.jones).or_default().push(e);
    }
    let mut groups: Vec<CoincidenceGroup> = Vec::new();
    for (poly, members) in &by_poly {
        if members.len() < 2 {
            continue;
        }
        let mirror = poly.reciprocal();
        if mirror != **poly {
            // keep exactly one of the two mirror-image groups
            if poly.to_string() > mirror.to_string() {
                continue;
            }
            debug_assert!(by_poly.contains_key(&mirror));
        }
        let mut knots: Vec<KnotClass> = members.iter().map(|e| e.knot).collect();
        knots.sort();
        groups.push(CoincidenceGroup {
            det: members[0].det,
            span: members[0].span,
            jones: (*poly).clone(),
            amphicheiral: knots.iter().map(|k| k.is_amphicheiral()).collect(),
            members: knots,
            classification: Vec::new(),
        });
    }
    groups.sort_by(|a, b| {
        a.det
            .cmp(&b.det)
            .then_with(|| a.jones.to_string().cmp(&b.jones.to_string()))
    });
    groups
}

/// Bounds for the template witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum base sequence length.
    pub base_len: usize,
    /// Maximum absolute value of base entries.
    pub entry_mag: i64,
    /// Maximum number of separators (blocks minus one).
    pub k_max: usize,
    /// Maximum absolute separator value.
    pub d_mag: i64,
    /// Maximum absolute in-block twist for Template II.
    pub m_mag: i64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            base_len: 4,
            entry_mag: 6,
            k_max: 3,
            d_mag: 6,
            m_mag: 6,
        }
    }
}

impl SearchBudget {
    pub fn zero() -> Self {
        SearchBudget {
            base_len: 0,
            entry_mag: 0,
            k_max: 0,
            d_mag: 0,
            m_mag: 0,
        }
    }
}

/// Values ordered `0, 1, -1, 2, -2, ...` up to magnitude `mag`.
fn value_order(mag: i64) -> Vec<i64> {
    let mut out = vec![0];
    for v in 1..=mag {
        out.push(v);
        out.push(-v);
    }
    out
}

/// All base sequences of the given exact length, lexicographic in
/// [`value_order`].
fn bases_of_len(len: usize, mag: i64) -> Vec<IntSeq> {
    let vals = value_order(mag);
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * vals.len());
        for prefix in &out {
            for &v in &vals {
                let mut s = prefix.clone();
                s.push(v);
                next.push(s);
            }
        }
        out = next;
    }
    out.into_iter().map(IntSeq::from).collect()
}

/// Linear-fractional transfer matrix of one twist entry.
type Mob = [[i128; 2]; 2];

fn mob_entry(n: i64) -> Mob {
    [[n as i128, -1], [1, 0]]
}

fn mob_mul(a: &Mob, b: &Mob) -> Mob {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn mob_of_seq(seq: &IntSeq) -> Mob {
    let mut acc = [[1, 0], [0, 1]];
    for &n in seq.entries() {
        acc = mob_mul(&acc, &mob_entry(n));
    }
    acc
}

fn mob_apply(m: &Mob, v: (i128, i128)) -> (i128, i128) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

/// Does a fraction pair canonicalize to the given class?
fn matches_class(p: i128, q: i128, target: &KnotClass) -> bool {
    if p.unsigned_abs() != target.det() as u128 {
        return false;
    }
    let (Ok(p), Ok(q)) = (i64::try_from(p), i64::try_from(q % p)) else {
        return false;
    };
    schubert_canonical(p, q).map_or(false, |k| k == *target)
}

struct PairTarget {
    a: KnotClass,
    b: KnotClass,
    det: u128,
}

impl PairTarget {
    fn matches(&self, va: (i128, i128), vb: (i128, i128)) -> bool {
        (matches_class(va.0, va.1, &self.a) && matches_class(vb.0, vb.1, &self.b))
            || (matches_class(va.0, va.1, &self.b) && matches_class(vb.0, vb.1, &self.a))
    }
}

/// Search the bounded template parameter spaces for a witness whose generated
/// pair canonicalizes to exactly `{a, b}`. Tiers are visited in increasing
/// cost order (template kind by `k`, then base length), and the first hit
/// wins, so the outcome is deterministic.
pub fn classify_pair(a: &KnotClass, b: &KnotClass, budget: &SearchBudget) -> ClassificationResult {
    let target = PairTarget {
        a: *a,
        b: *b,
        det: a.det() as u128,
    };
    if b.det() != a.det() {
        return ClassificationResult::unexplained();
    }

    type Tier = (ClassKind, usize);
    let tiers: [Tier; 10] = [
        (ClassKind::TemplateI, 1),
        (ClassKind::TemplateII, 0),
        (ClassKind::TemplateI, 2),
        (ClassKind::Pivot, 1),
        (ClassKind::TemplateII, 1),
        (ClassKind::TemplateI, 3),
        (ClassKind::Pivot, 2),
        (ClassKind::TemplateII, 2),
        (ClassKind::Pivot, 3),
        (ClassKind::TemplateII, 3),
    ];
    for (kind, k) in tiers {
        if k > budget.k_max {
            continue;
        }
        let hit = match kind {
            ClassKind::TemplateI => search_template_one(&target, budget, k),
            ClassKind::TemplateII => search_template_two(&target, budget, k),
            ClassKind::Pivot => search_pivot(&target, budget, k),
            ClassKind::Unexplained => unreachable!(),
        };
        if let Some(witness) = hit {
            return ClassificationResult {
                kind,
                witness: Some(witness),
            };
        }
    }
    ClassificationResult::unexplained()
}

/// Verify a candidate instance against the target before emitting it.
fn confirm(target: &PairTarget, instance: TemplateInstance) -> Option<TemplateInstance> {
    let (a, b) = instance.generate().ok()?;
    let va = crate::rational::eval_cf_raw(&a);
    let vb = crate::rational::eval_cf_raw(&b);
    target.matches(va, vb).then_some(instance)
}

fn search_template_one(
    target: &PairTarget,
    budget: &SearchBudget,
    k: usize,
) -> Option<TemplateInstance> {
    let star_flags = [StarFlag::Plain, StarFlag::Star];
    let ds_vals = value_order(budget.d_mag);
    for len in 1..=budget.base_len {
        for base in bases_of_len(len, budget.entry_mag) {
            let mob_plain = mob_of_seq(&base);
            let mob_star = mob_of_seq(&crate::template::seq_star(&base));
            // flag tuples, lexicographic with Plain < Star
            for eps_mask in 0u32..(1 << (k + 1)) {
                let eps: Vec<StarFlag> = (0..=k)
                    .map(|j| star_flags[(eps_mask >> (k - j) & 1) as usize])
                    .collect();
                let blocks: Vec<&Mob> = eps
                    .iter()
                    .map(|e| match e {
                        StarFlag::Plain => &mob_plain,
                        StarFlag::Star => &mob_star,
                    })
                    .collect();
                let found = for_each_separator_chain(&blocks, &ds_vals, &mut |p, _q, ds| {
                    if p.unsigned_abs() != target.det {
                        return None;
                    }
                    confirm(
                        target,
                        TemplateInstance::One {
                            base: base.clone(),
                            ds: ds.to_vec(),
                            eps: eps.clone(),
                        },
                    )
                });
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

/// Enumerate separator tuples right-to-left, reusing suffix vectors.
/// `blocks` has `k + 1` entries; the callback sees the fraction pair of the
/// assembled sequence and the separators in display order.
fn for_each_separator_chain(
    blocks: &[&Mob],
    ds_vals: &[i64],
    on_value: &mut dyn FnMut(i128, i128, &[i64]) -> Option<TemplateInstance>,
) -> Option<TemplateInstance> {
    fn recurse(
        blocks: &[&Mob],
        ds_vals: &[i64],
        j: usize,
        suffix: (i128, i128),
        ds: &mut Vec<i64>,
        on_value: &mut dyn FnMut(i128, i128, &[i64]) -> Option<TemplateInstance>,
    ) -> Option<TemplateInstance> {
        if j == 0 {
            let (p, q) = suffix;
            return on_value(p, q, ds);
        }
        for &d in ds_vals {
            let v = mob_apply(&mob_entry(d), suffix);
            let v = mob_apply(blocks[j - 1], v);
            ds[j - 1] = d;
            if let Some(hit) = recurse(blocks, ds_vals, j - 1, v, ds, on_value) {
                return Some(hit);
            }
        }
        None
    }
    let k = blocks.len() - 1;
    let start = mob_apply(blocks[k], (1, 0));
    if k == 0 {
        let (p, q) = start;
        let mut empty: Vec<i64> = Vec::new();
        return on_value(p, q, &mut empty);
    }
    let mut ds = vec![0i64; k];
    recurse(blocks, ds_vals, k, start, &mut ds, on_value)
}

fn search_template_two(
    target: &PairTarget,
    budget: &SearchBudget,
    k: usize,
) -> Option<TemplateInstance> {
    let arrows = [ArrowFlag::Right, ArrowFlag::Left];
    let ds_vals = value_order(budget.d_mag);
    let ms_vals = value_order(budget.m_mag);
    for len in 1..=budget.base_len {
        for base in bases_of_len(len, budget.entry_mag) {
            // the four arrowed variants of the base and its negation
            let fwd = mob_of_seq(&base);
            let rev = mob_of_seq(&base.iter().rev().copied().collect());
            let neg_fwd = mob_of_seq(&base.iter().map(|&x| -x).collect());
            let neg_rev = mob_of_seq(&base.iter().rev().map(|&x| -x).collect());
            let pick = |e: ArrowFlag| match e {
                ArrowFlag::Right => &fwd,
                ArrowFlag::Left => &rev,
            };
            let pick_neg = |phi: ArrowFlag| match phi {
                ArrowFlag::Right => &neg_fwd,
                ArrowFlag::Left => &neg_rev,
            };
            // arrow tuples for all blocks at once
            for flag_mask in 0u32..(1 << (2 * (k + 1))) {
                let eps: Vec<ArrowFlag> = (0..=k)
                    .map(|j| arrows[(flag_mask >> (2 * (k - j) + 1) & 1) as usize])
                    .collect();
                let phis: Vec<ArrowFlag> = (0..=k)
                    .map(|j| arrows[(flag_mask >> (2 * (k - j)) & 1) as usize])
                    .collect();
                let found = for_each_m_tuple(k, &ms_vals, &mut |ms| {
                    let blocks: Vec<Mob> = (0..=k)
                        .map(|j| {
                            mob_mul(
                                &mob_mul(pick(eps[j]), &mob_entry(ms[j])),
                                pick_neg(phis[j]),
                            )
                        })
                        .collect();
                    let block_refs: Vec<&Mob> = blocks.iter().collect();
                    for_each_separator_chain(&block_refs, &ds_vals, &mut |p, _q, ds| {
                        if p.unsigned_abs() != target.det {
                            return None;
                        }
                        confirm(
                            target,
                            TemplateInstance::Two {
                                base: base.clone(),
                                ms: ms.to_vec(),
                                ds: ds.to_vec(),
                                eps: eps.clone(),
                                phis: phis.clone(),
                            },
                        )
                    })
                });
                if found.is_some() {
                    return found;
                }
            }
        }
    }
    None
}

fn for_each_m_tuple(
    k: usize,
    ms_vals: &[i64],
    body: &mut dyn FnMut(&[i64]) -> Option<TemplateInstance>,
) -> Option<TemplateInstance> {
    fn recurse(
        k: usize,
        ms_vals: &[i64],
        ms: &mut Vec<i64>,
        body: &mut dyn FnMut(&[i64]) -> Option<TemplateInstance>,
    ) -> Option<TemplateInstance> {
        if ms.len() == k + 1 {
            return body(ms);
        }
        for &m in ms_vals {
            ms.push(m);
            if let Some(hit) = recurse(k, ms_vals, ms, body) {
                return Some(hit);
            }
            ms.pop();
        }
        None
    }
    recurse(k, ms_vals, &mut Vec::new(), body)
}

/// Numeric fingerprint of the pivot ratio `alpha / bar(alpha)`: exact values
/// at `u = 2` and `u = 3`, reduced. Candidates sharing a fingerprint are
/// still confirmed with the exact polynomial condition before use.
fn pivot_fingerprint(alpha: &crate::ring::LaurentU) -> Option<Vec<(i128, i128)>> {
    if alpha.is_zero() {
        return None;
    }
    let eval = |base: i128| -> (i128, i128) {
        // alpha and bar(alpha), both cleared to polynomials, at u = base
        let min = alpha.terms().first().unwrap().0;
        let max = alpha.terms().last().unwrap().0;
        let mut num = 0i128;
        let mut den = 0i128;
        for &(e, c) in alpha.terms() {
            num += (c.re as i128) * base.pow((e - min) as u32);
            den += (c.re as i128) * base.pow((max - e) as u32);
        }
        (num, den)
    };
    let mut out = Vec::with_capacity(2);
    for base in [2i128, 3] {
        let (mut n, mut d) = eval(base);
        let g = gcd_i128(n, d);
        n /= g;
        d /= g;
        if d < 0 {
            n = -n;
            d = -d;
        }
        out.push((n, d));
    }
    Some(out)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn search_pivot(target: &PairTarget, budget: &SearchBudget, k: usize) -> Option<TemplateInstance> {
    // Only two-block instances are searched here; with more blocks the same
    // bases repeat and those cases already fall under the Template I tiers.
    if budget.base_len == 0 || k != 1 {
        return None;
    }
    // Pool all bases, bucketed by pivot-ratio fingerprint; zero-alpha bases
    // pivot with everything.
    let mut pool: Vec<IntSeq> = Vec::new();
    for len in 1..=budget.base_len {
        pool.extend(bases_of_len(len, budget.entry_mag));
    }
    let mut buckets: HashMap<Vec<(i128, i128)>, Vec<usize>> = HashMap::new();
    let mut zero_alpha: Vec<usize> = Vec::new();
    for (i, base) in pool.iter().enumerate() {
        match pivot_fingerprint(&b_product(base).a11) {
            Some(fp) => buckets.entry(fp).or_default().push(i),
            None => zero_alpha.push(i),
        }
    }
    let ds_vals = value_order(budget.d_mag);
    let try_pair = |i: usize, j: usize| -> Option<TemplateInstance> {
        if i == j {
            return None; // degenerate, covered by Template I
        }
        let (bi, bj) = (&pool[i], &pool[j]);
        for (e0, e1) in [
            (StarFlag::Plain, StarFlag::Plain),
            (StarFlag::Plain, StarFlag::Star),
            (StarFlag::Star, StarFlag::Plain),
            (StarFlag::Star, StarFlag::Star),
        ] {
            let m0 = mob_of_seq(&e0.apply(bi));
            let m1 = mob_of_seq(&e1.apply(bj));
            for &d in &ds_vals {
                let va = mob_apply(&m0, mob_apply(&mob_entry(d), mob_apply(&m1, (1, 0))));
                if va.0.unsigned_abs() != target.det {
                    continue;
                }
                let candidate = TemplateInstance::Pivot {
                    bases: vec![bi.clone(), bj.clone()],
                    ds: vec![d],
                    eps: vec![e0, e1],
                };
                if let Some(hit) = confirm(target, candidate) {
                    return Some(hit);
                }
            }
        }
        None
    };
    // deterministic order: buckets sorted by smallest member index
    let mut bucket_list: Vec<Vec<usize>> = buckets.into_values().collect();
    bucket_list.sort_by_key(|v| v[0]);
    for bucket in &bucket_list {
        for (x, &i) in bucket.iter().enumerate() {
            for &j in bucket.iter().skip(x + 1) {
                if let Some(hit) = try_pair(i, j) {
                    return Some(hit);
                }
                if let Some(hit) = try_pair(j, i) {
                    return Some(hit);
                }
            }
        }
    }
    for &z in &zero_alpha {
        for i in 0..pool.len() {
            if let Some(hit) = try_pair(z, i) {
                return Some(hit);
            }
            if let Some(hit) = try_pair(i, z) {
                return Some(hit);
            }
        }
    }
    None
}

/// Classify every pair in each group, in place.
pub fn classify_groups(groups: &mut [CoincidenceGroup], budget: &SearchBudget) {
    for group in groups.iter_mut() {
        let mut records = Vec::new();
        for i in 0..group.members.len() {
            for j in i + 1..group.members.len() {
                let res = classify_pair(&group.members[i], &group.members[j], budget);
                records.push(PairClassification {
                    pair: [i, j],
                    kind: res.kind,
                    witness: res.witness,
                });
            }
        }
        group.classification = records;
    }
}

#[derive(Serialize)]
struct MemberRecord {
    p: i64,
    q: i64,
}

#[derive(Serialize)]
struct GroupRecord<'a> {
    det: i64,
    members: Vec<MemberRecord>,
    jones: Vec<[i64; 2]>,
    span: i64,
    amphicheiral: &'a [bool],
    classification: &'a [PairClassification],
}

/// Report format for [`emit_report`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Write the census report; byte-identical output for identical inputs.
pub fn emit_report(
    groups: &[CoincidenceGroup],
    format: ReportFormat,
    sink: &mut dyn Write,
) -> io::Result<()> {
    match format {
        ReportFormat::Json => {
            let records: Vec<GroupRecord> = groups
                .iter()
                .map(|g| GroupRecord {
                    det: g.det,
                    members: g
                        .members
                        .iter()
                        .map(|k| MemberRecord {
                            p: k.det(),
                            q: k.qset().0,
                        })
                        .collect(),
                    jones: g.jones.to_json_pairs(),
                    span: g.span,
                    amphicheiral: &g.amphicheiral,
                    classification: &g.classification,
                })
                .collect();
            serde_json::to_writer(&mut *sink, &records)?;
            writeln!(sink)
        }
        ReportFormat::Csv => {
            writeln!(sink, "det,members,span,amphicheiral,jones,classification")?;
            for g in groups {
                let members: Vec<String> = g
                    .members
                    .iter()
                    .map(|k| format!("{}/{}", k.det(), k.qset().0))
                    .collect();
                let amphi: Vec<String> =
                    g.amphicheiral.iter().map(|b| b.to_string()).collect();
                let kinds: Vec<String> = g
                    .classification
                    .iter()
                    .map(|c| format!("{:?}", c.kind))
                    .collect();
                writeln!(
                    sink,
                    "{},{},{},{},{},{}",
                    g.det,
                    members.join(";"),
                    g.span,
                    amphi.join(";"),
                    g.jones,
                    kinds.join(";")
                )?;
            }
            Ok(())
        }
    }
}
