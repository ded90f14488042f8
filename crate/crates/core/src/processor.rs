//! Structured token processor.
//!
//! Structured tokens are grouped by delimiter skeleton; each group's
//! sub-token matrix is then mined column by column. Constant columns are
//! folded into the skeleton, and a critical column (few unique values, high
//! dominance, low entropy) splits the group into more specific subgroups.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::fpgrowth;
use crate::model::{DelimiterSkeleton, SkeletonGroup, SkeletonPart, SubTokenMatrix, TokenCoord};
use crate::text;

/// Splits a structured token into its skeleton and alphanumeric sub-tokens.
pub fn extract_skeleton(token: &[u8]) -> Result<(DelimiterSkeleton, Vec<Vec<u8>>)> {
    let runs = text::runs(token);
    if !runs.iter().any(|r| r.alnum) {
        return Err(Error::inconsistent(format!(
            "token {:?} has no alphanumeric sub-token",
            String::from_utf8_lossy(token)
        )));
    }
    let mut parts = Vec::with_capacity(runs.len());
    let mut subs = Vec::new();
    for run in runs {
        if run.alnum {
            parts.push(SkeletonPart::Slot(None));
            subs.push(run.bytes.to_vec());
        } else {
            parts.push(SkeletonPart::Delim(run.bytes.to_vec()));
        }
    }
    Ok((DelimiterSkeleton { parts }, subs))
}

/// One group per distinct skeleton, in order of first appearance.
pub fn group_by_skeleton(tokens: &[(TokenCoord, Vec<u8>)]) -> Result<Vec<SkeletonGroup>> {
    let mut index: HashMap<DelimiterSkeleton, usize> = HashMap::new();
    let mut groups: Vec<SkeletonGroup> = Vec::new();
    for (coord, token) in tokens {
        let (skeleton, subs) = extract_skeleton(token)?;
        let gi = match index.get(&skeleton) {
            Some(&gi) => gi,
            None => {
                let gi = groups.len();
                groups.push(SkeletonGroup {
                    matrix: SubTokenMatrix { columns: vec![Vec::new(); subs.len()], row_ids: Vec::new() },
                    skeleton: skeleton.clone(),
                });
                index.insert(skeleton, gi);
                gi
            }
        };
        let m = &mut groups[gi].matrix;
        for (col, sub) in m.columns.iter_mut().zip(subs) {
            col.push(sub);
        }
        m.row_ids.push(*coord);
    }
    Ok(groups)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnStats {
    pub unique_count: usize,
    /// Rows divided by unique values.
    pub threshold: f64,
    /// Values whose frequency meets the threshold, in first-appearance order.
    pub representatives: Vec<(Vec<u8>, usize)>,
    pub dominance_ratio: f64,
    /// Shannon entropy in bits.
    pub entropy: f64,
}

impl ColumnStats {
    pub fn representative_count(&self) -> usize {
        self.representatives.len()
    }
}

/// Value frequencies in first-appearance order.
fn histogram(column: &[Vec<u8>]) -> Vec<(&[u8], usize)> {
    let mut slot: HashMap<&[u8], usize> = HashMap::new();
    let mut hist: Vec<(&[u8], usize)> = Vec::new();
    for v in column {
        match slot.get(v.as_slice()) {
            Some(&i) => hist[i].1 += 1,
            None => {
                slot.insert(v, hist.len());
                hist.push((v, 1));
            }
        }
    }
    hist
}

pub fn column_stats(column: &[Vec<u8>]) -> ColumnStats {
    let rows = column.len();
    let hist = histogram(column);
    let unique_count = hist.len();
    if rows == 0 {
        return ColumnStats {
            unique_count: 0,
            threshold: 0.0,
            representatives: Vec::new(),
            dominance_ratio: 0.0,
            entropy: 0.0,
        };
    }
    let threshold = rows as f64 / unique_count as f64;
    let representatives: Vec<(Vec<u8>, usize)> =
        hist.iter().filter(|(_, f)| *f as f64 >= threshold).map(|(v, f)| (v.to_vec(), *f)).collect();
    let covered: usize = representatives.iter().map(|(_, f)| f).sum();
    let entropy = hist
        .iter()
        .map(|(_, f)| {
            let p = *f as f64 / rows as f64;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0);
    ColumnStats { unique_count, threshold, representatives, dominance_ratio: covered as f64 / rows as f64, entropy }
}

/// Embeds every single-valued column into the skeleton.
pub fn fold_constant_columns(group: SkeletonGroup) -> SkeletonGroup {
    if group.rows() == 0 {
        return group;
    }
    let constant: Vec<usize> =
        group.matrix.columns.iter().enumerate().filter(|(_, c)| c.iter().all(|v| *v == c[0])).map(|(i, _)| i).collect();
    embed_columns(group, &constant)
}

/// Moves the given open-slot columns (all constant) into the skeleton.
fn embed_columns(mut group: SkeletonGroup, columns: &[usize]) -> SkeletonGroup {
    if columns.is_empty() {
        return group;
    }
    // Embed right-to-left so earlier open-slot indices stay valid.
    for &c in columns.iter().rev() {
        let value = group.matrix.columns[c][0].clone();
        group.skeleton.embed(c, value);
        group.matrix.columns.remove(c);
    }
    group
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPosition {
    pub column_index: usize,
    pub stats: ColumnStats,
    pub accepted: bool,
}

fn rank(a: &(usize, ColumnStats), b: &(usize, ColumnStats)) -> Ordering {
    a.1.unique_count
        .cmp(&b.1.unique_count)
        .then(b.1.dominance_ratio.total_cmp(&a.1.dominance_ratio))
        .then(a.1.entropy.total_cmp(&b.1.entropy))
        .then(a.0.cmp(&b.0))
}

/// The best-ranked candidate column, before validation.
///
/// Columns listed in `excluded` and single-valued columns are never candidates.
pub fn top_candidate(matrix: &SubTokenMatrix, cfg: &Config, excluded: &[usize]) -> Option<CriticalPosition> {
    if matrix.rows() < 2 {
        return None;
    }
    let best = matrix
        .columns
        .iter()
        .enumerate()
        .filter(|(i, _)| !excluded.contains(i))
        .map(|(i, c)| (i, column_stats(c)))
        .filter(|(_, s)| s.unique_count >= 2 && s.representative_count() >= 1)
        .min_by(rank)?;
    let accepted = validate(&best.1, cfg);
    Some(CriticalPosition { column_index: best.0, stats: best.1, accepted })
}

/// Columns whose values repeat less than this often on average are never
/// split: every value would count as representative.
pub const MIN_SPLIT_THRESHOLD: f64 = 2.0;

fn validate(stats: &ColumnStats, cfg: &Config) -> bool {
    let significant = stats.representative_count() < cfg.theta_rv || stats.dominance_ratio > cfg.phi_d;
    significant && stats.threshold >= MIN_SPLIT_THRESHOLD
}

pub fn select_critical_position(matrix: &SubTokenMatrix, cfg: &Config) -> Option<CriticalPosition> {
    select_critical_position_excluding(matrix, cfg, &[])
}

pub fn select_critical_position_excluding(
    matrix: &SubTokenMatrix,
    cfg: &Config,
    excluded: &[usize],
) -> Option<CriticalPosition> {
    top_candidate(matrix, cfg, excluded).filter(|cp| cp.accepted)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Regrouped {
    /// One subgroup per embedded value, in first-appearance order.
    pub specific: Vec<SkeletonGroup>,
    /// Minor-value rows under the generic skeleton (partial re-grouping only).
    pub residual: Option<SkeletonGroup>,
    pub full: bool,
}

impl Regrouped {
    pub fn into_groups(self) -> Vec<SkeletonGroup> {
        let mut out = self.specific;
        out.extend(self.residual);
        out
    }
}

pub fn regroup_detailed(group: &SkeletonGroup, cp: &CriticalPosition, cfg: &Config) -> Regrouped {
    let col = cp.column_index;
    let column = &group.matrix.columns[col];
    let full = cp.stats.unique_count <= cfg.zeta_uv;
    let wanted: Option<BTreeSet<&[u8]>> =
        (!full).then(|| cp.stats.representatives.iter().map(|(v, _)| v.as_slice()).collect());

    let mut order: Vec<&[u8]> = Vec::new();
    let mut buckets: HashMap<&[u8], Vec<usize>> = HashMap::new();
    let mut minor: Vec<usize> = Vec::new();
    for (r, v) in column.iter().enumerate() {
        let v = v.as_slice();
        if wanted.as_ref().is_some_and(|w| !w.contains(v)) {
            minor.push(r);
            continue;
        }
        buckets
            .entry(v)
            .or_insert_with(|| {
                order.push(v);
                Vec::new()
            })
            .push(r);
    }

    let specific = order
        .iter()
        .map(|v| {
            let mut matrix = group.matrix.select_rows(&buckets[v]);
            matrix.columns.remove(col);
            let mut skeleton = group.skeleton.clone();
            skeleton.embed(col, v.to_vec());
            SkeletonGroup { skeleton, matrix }
        })
        .collect();
    let residual = (!minor.is_empty())
        .then(|| SkeletonGroup { skeleton: group.skeleton.clone(), matrix: group.matrix.select_rows(&minor) });
    Regrouped { specific, residual, full }
}

/// Splits a group on its critical column, fully or partially by `zeta_uv`.
pub fn regroup(group: &SkeletonGroup, cp: &CriticalPosition, cfg: &Config) -> Vec<SkeletonGroup> {
    regroup_detailed(group, cp, cfg).into_groups()
}

/// Embeds every item present in all rows, found by frequent-itemset mining
/// over `(column, value)` items at 100% support.
pub fn refine_group(group: SkeletonGroup) -> SkeletonGroup {
    let rows = group.rows();
    if rows == 0 || group.matrix.width() == 0 {
        return group;
    }
    let transactions: Vec<Vec<(usize, &[u8])>> = (0..rows).map(|r| group.matrix.row(r).enumerate().collect()).collect();
    let maximal = fpgrowth::maximal_itemsets(&transactions, rows);
    let mut constant: Vec<usize> = maximal.iter().flatten().map(|&(c, _)| c).collect();
    constant.sort_unstable();
    constant.dedup();
    embed_columns(group, &constant)
}

pub fn refine_patterns(groups: Vec<SkeletonGroup>) -> Vec<SkeletonGroup> {
    groups.into_iter().map(refine_group).collect()
}

/// Full pattern mining over skeleton groups.
///
/// Output groups are ordered by skeleton, then by first source coordinate.
pub fn process(groups: Vec<SkeletonGroup>, cfg: &Config) -> Vec<SkeletonGroup> {
    if cfg.disable_processor {
        return groups;
    }
    let mut out = Vec::new();
    for group in groups {
        mine(fold_constant_columns(group), cfg, 0, BTreeSet::new(), &mut out);
    }
    out.sort_by(|a, b| a.skeleton.cmp(&b.skeleton).then_with(|| a.first_coord().cmp(&b.first_coord())));
    out
}

/// `frozen` holds slot ordinals a residual may not be split on again.
fn mine(group: SkeletonGroup, cfg: &Config, depth: usize, frozen: BTreeSet<usize>, out: &mut Vec<SkeletonGroup>) {
    if depth >= cfg.max_mining_depth || group.matrix.width() == 0 || group.rows() < 2 {
        out.push(group);
        return;
    }
    let excluded: Vec<usize> = (0..group.matrix.width())
        .filter(|&c| group.skeleton.open_slot_ordinal(c).is_some_and(|o| frozen.contains(&o)))
        .collect();
    let Some(cp) = select_critical_position_excluding(&group.matrix, cfg, &excluded) else {
        out.push(group);
        return;
    };
    let split_ordinal = group.skeleton.open_slot_ordinal(cp.column_index).expect("open slot");
    let regrouped = regroup_detailed(&group, &cp, cfg);
    for sub in regrouped.specific {
        mine(refine_group(sub), cfg, depth + 1, frozen.clone(), out);
    }
    if let Some(residual) = regrouped.residual {
        let mut frozen = frozen;
        frozen.insert(split_ordinal);
        mine(refine_group(residual), cfg, depth + 1, frozen, out);
    }
}
