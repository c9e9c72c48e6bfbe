//! Exhaustive fatness oracle.
//!
//! A slicing is determined by a laminar family of discs (see [`super::cut`]).
//! For a target width `w` the search decides whether the facets can be split
//! into regions of at most `w` vertices each: the lowest unassigned facet of a
//! disc goes either into the disc's own region or into a child disc, and a
//! disc is feasible when such a split exists. Feasibility of a disc does not
//! depend on its surroundings, so it is memoised. Widths are tried in
//! increasing order, so the first feasible width is `ft(K)` once every cycle
//! of that length or less was available.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::cut::{cut_along_cycles, discs};
use super::{check_degree_bound, width, DegreeReport, Slicing, SurgeryError};
use crate::bits::{self, Mask, MASK_BITS};
use crate::poset::cycles::{cycle_vertices, is_full_cycle, simple_cycles};
use crate::poset::{is_cell_sphere, SimplexId, SimplicialPoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatnessOptions {
    /// Longest cycle (in vertices) considered.
    pub max_cycle_len: usize,
    pub time_budget: Option<Duration>,
    /// Also run the search restricted to full (induced) cycles.
    pub strict_check: bool,
}

impl Default for FatnessOptions {
    fn default() -> Self {
        FatnessOptions {
            max_cycle_len: usize::MAX,
            time_budget: None,
            strict_check: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FatnessStatus {
    /// `lower == upper`.
    Exact,
    /// Cycles longer than the budget might lower the width further.
    LengthLimited,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatnessResult {
    pub lower: usize,
    pub upper: usize,
    pub status: FatnessStatus,
    /// A slicing of width `upper`.
    pub best: Slicing,
    pub best_cycles: Vec<Vec<SimplexId>>,
    pub cycles_considered: usize,
    pub nodes_explored: u64,
    /// Bounds when only full cycles are allowed.
    pub strict: Option<(usize, usize)>,
    /// Set when both readings are exact and disagree.
    pub strict_differs: bool,
    pub degree_audit: Option<DegreeReport>,
}

impl FatnessResult {
    pub fn value(&self) -> Option<usize> {
        (self.status == FatnessStatus::Exact).then_some(self.upper)
    }

    pub fn to_json(&self) -> FatnessJson {
        FatnessJson {
            lower: self.lower,
            upper: self.upper,
            status: self.status,
            value: self.value(),
            best_cycles: self.best_cycles.clone(),
            best: self.best.to_json(),
            cycles_considered: self.cycles_considered,
            nodes_explored: self.nodes_explored,
            strict: self.strict,
            strict_differs: self.strict_differs,
            degree_audit: self.degree_audit.clone(),
        }
    }
}

/// Serialised [`FatnessResult`]; cycles are ridge ids of the input sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatnessJson {
    pub lower: usize,
    pub upper: usize,
    pub status: FatnessStatus,
    pub value: Option<usize>,
    pub best_cycles: Vec<Vec<SimplexId>>,
    pub best: super::SlicingJson,
    pub cycles_considered: usize,
    pub nodes_explored: u64,
    pub strict: Option<(usize, usize)>,
    pub strict_differs: bool,
    pub degree_audit: Option<DegreeReport>,
}

#[derive(Clone, Copy)]
struct Disc {
    mask: Mask,
    verts: Mask,
    cycle: usize,
}

struct Search {
    w: usize,
    facet_verts: Vec<Mask>,
    discs: Vec<Disc>,
    by_facet: Vec<Vec<usize>>,
    memo: HashMap<Mask, Option<Vec<usize>>>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl Search {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    /// Child discs of a feasible split of disc `x` with own cycle `own`.
    fn partition(&mut self, x: Mask, own: Mask) -> Option<Vec<usize>> {
        let mut chosen = Vec::new();
        let mut failed = HashSet::new();
        self.split(x, x, own, &mut chosen, &mut failed)
            .then_some(chosen)
    }

    fn split(
        &mut self,
        x: Mask,
        remaining: Mask,
        region: Mask,
        chosen: &mut Vec<usize>,
        failed: &mut HashSet<(Mask, Mask)>,
    ) -> bool {
        if bits::count(region) > self.w || self.tick() {
            return false;
        }
        let Some(f) = bits::lowest(remaining) else {
            return true;
        };
        if failed.contains(&(remaining, region)) {
            return false;
        }
        for k in 0..self.by_facet[f].len() {
            let d = self.discs[self.by_facet[f][k]];
            if d.mask & !remaining != 0 || d.mask == x {
                continue;
            }
            let next = region | d.verts;
            if bits::count(next) > self.w || !self.feasible(d) {
                continue;
            }
            chosen.push(self.by_facet[f][k]);
            if self.split(x, remaining & !d.mask, next, chosen, failed) {
                return true;
            }
            chosen.pop();
        }
        if self.split(
            x,
            remaining & !bits::bit(f),
            region | self.facet_verts[f],
            chosen,
            failed,
        ) {
            return true;
        }
        if !self.timed_out {
            failed.insert((remaining, region));
        }
        false
    }

    fn feasible(&mut self, d: Disc) -> bool {
        if let Some(r) = self.memo.get(&d.mask) {
            return r.is_some();
        }
        let r = self.partition(d.mask, d.verts);
        if self.timed_out {
            return false;
        }
        let ok = r.is_some();
        self.memo.insert(d.mask, r);
        ok
    }

    /// Cycles of the split found for the whole sphere, parents first.
    fn collect(&self, root_children: &[usize], out: &mut Vec<usize>) {
        for &c in root_children {
            out.push(c);
            let kids = self.memo[&self.discs[c].mask].as_ref().expect("feasible");
            self.collect(kids, out);
        }
    }
}

struct Outcome {
    lower: usize,
    upper: usize,
    cycles: Vec<Vec<SimplexId>>,
    considered: usize,
    nodes: u64,
    timed_out: bool,
}

fn search(
    k: &SimplicialPoset,
    max_len: usize,
    deadline: Option<Instant>,
    full_only: bool,
) -> Result<Outcome, SurgeryError> {
    let d = k.dim().unwrap_or(0);
    let facets: Vec<SimplexId> = k.simplices_of_rank(d + 1).collect();
    let verts: Vec<SimplexId> = k.vertices().collect();
    let vindex = |v: SimplexId| verts.binary_search(&v).expect("vertex");
    let findex = |f: SimplexId| facets.binary_search(&f).expect("facet");
    let facet_verts: Vec<Mask> = facets
        .iter()
        .map(|&f| k.vertices_of(f).fold(0, |m, v| m | bits::bit(vindex(v))))
        .collect();
    let v_count = verts.len();
    let cap = max_len.min(v_count);
    let mut all = simple_cycles(k, cap);
    if full_only {
        all.retain(|c| is_full_cycle(k, c));
    }
    let all_discs = discs(k, &all)?;
    let lens: Vec<usize> = all.iter().map(|c| cycle_vertices(k, c).len()).collect();
    let mut nodes = 0;
    let full = if facets.len() == MASK_BITS {
        Mask::MAX
    } else {
        bits::bit(facets.len()) - 1
    };
    for w in d + 1..=v_count {
        let mut s = Search {
            w,
            facet_verts: facet_verts.clone(),
            discs: Vec::new(),
            by_facet: vec![Vec::new(); facets.len()],
            memo: HashMap::new(),
            deadline,
            nodes: 0,
            timed_out: false,
        };
        for (i, c) in all.iter().enumerate() {
            if lens[i] > w {
                continue;
            }
            let mask = all_discs[i]
                .iter()
                .fold(0, |m, &f| m | bits::bit(findex(f)));
            let cv = cycle_vertices(k, c)
                .iter()
                .fold(0, |m, &v| m | bits::bit(vindex(v)));
            let idx = s.discs.len();
            s.discs.push(Disc {
                mask,
                verts: cv,
                cycle: i,
            });
            for f in bits::iter(mask) {
                s.by_facet[f].push(idx);
            }
        }
        // larger discs first: they close off more of the sphere at once
        for list in &mut s.by_facet {
            let discs = &s.discs;
            list.sort_by_key(|&i| std::cmp::Reverse(bits::count(discs[i].mask)));
        }
        let considered = s.discs.len();
        let root = s.partition(full, 0);
        nodes += s.nodes;
        let proven_below = w.min(max_len.saturating_add(1)).max(d + 1);
        if s.timed_out {
            return Ok(Outcome {
                lower: proven_below,
                upper: v_count,
                cycles: Vec::new(),
                considered,
                nodes,
                timed_out: true,
            });
        }
        if let Some(children) = root {
            let mut order = Vec::new();
            s.collect(&children, &mut order);
            let cycles = order
                .iter()
                .map(|&i| all[s.discs[i].cycle].clone())
                .collect();
            return Ok(Outcome {
                lower: proven_below,
                upper: w,
                cycles,
                considered,
                nodes,
                timed_out: false,
            });
        }
    }
    unreachable!("the trivial slicing has width |ver(K)|")
}

/// Fatness `ft(K)` of a sphere of dimension 1 or 2 by exhaustive search over
/// laminar cycle families. At most 128 facets and 128 vertices.
pub fn fatness_bruteforce(
    k: &SimplicialPoset,
    opts: &FatnessOptions,
) -> Result<FatnessResult, SurgeryError> {
    let d = k.dim().unwrap_or(0);
    if !(1..=2).contains(&d) {
        return Err(SurgeryError::Precondition(format!(
            "fatness needs dimension 1 or 2, got {d}"
        )));
    }
    let report = is_cell_sphere(k).map_err(|e| SurgeryError::Precondition(e.to_string()))?;
    if !report.is_sphere() {
        return Err(SurgeryError::Precondition(format!(
            "not a sphere: {}",
            report.reasons.join("; ")
        )));
    }
    if k.simplices_of_rank(d + 1).count() > MASK_BITS || k.vertex_count() > MASK_BITS {
        return Err(SurgeryError::Precondition(format!(
            "at most {MASK_BITS} facets and vertices are supported"
        )));
    }
    let deadline = opts.time_budget.map(|t| Instant::now() + t);
    let main = search(k, opts.max_cycle_len, deadline, false)?;
    let status_of = |o: &Outcome| {
        if o.timed_out {
            FatnessStatus::BudgetExceeded
        } else if o.lower == o.upper {
            FatnessStatus::Exact
        } else {
            FatnessStatus::LengthLimited
        }
    };
    let status = status_of(&main);
    let best = cut_along_cycles(k, &main.cycles)?;
    let mut result = FatnessResult {
        lower: main.lower,
        upper: main.upper,
        status,
        best,
        best_cycles: main.cycles.clone(),
        cycles_considered: main.considered,
        nodes_explored: main.nodes,
        strict: None,
        strict_differs: false,
        degree_audit: None,
    };
    if status == FatnessStatus::BudgetExceeded {
        return Err(SurgeryError::BudgetExceeded {
            partial: Box::new(result),
        });
    }
    let wr = width(&result.best)?;
    if wr.width != result.upper {
        return Err(SurgeryError::InconsistentGluing(format!(
            "search found width {} but the slicing has width {}",
            result.upper, wr.width
        )));
    }
    if d == 2 && k.is_simplicial_complex() {
        result.degree_audit = Some(check_degree_bound(&result.best, result.upper)?);
    }
    if opts.strict_check {
        let strict = search(k, opts.max_cycle_len, deadline, true)?;
        if strict.timed_out {
            result.status = FatnessStatus::BudgetExceeded;
            return Err(SurgeryError::BudgetExceeded {
                partial: Box::new(result),
            });
        }
        result.strict_differs = status == FatnessStatus::Exact
            && status_of(&strict) == FatnessStatus::Exact
            && strict.upper != main.upper;
        result.strict = Some((strict.lower, strict.upper));
    }
    Ok(result)
}
