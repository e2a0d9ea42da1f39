//! The pruned tree of surviving sign sequences.
//!
//! Level `n` of the full binary tree is `{±1}^n`. A word survives to level
//! `n + 1` only if its parent survived and its own point `x_ε` is still an
//! atom of `ν^(n+1)`. The validators in this module check the structural
//! facts about that tree for even `m`: the first pruning at level `m + 1`,
//! the order-preserving bijection with the atoms, leaflessness, the diamond
//! shape of every cancellation and the separation between subtrees.
//!
//! Validators never assume what they check. Each returns a report that
//! records the first violation it found.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebraic::{FieldElement, FieldSpec, Sign};
use crate::error::{Error, Result};
use crate::measure::{word_position, SignedMeasure};

/// Depth to which the structural checks run exhaustively by default.
pub fn default_depth(m: usize) -> usize {
    match m {
        0..=2 => 14,
        3..=4 => 12,
        _ => 10,
    }
}

/// A word over `{−1, +1}`; the empty word is the root.
///
/// The derived order is lexicographic with `−1 < +1`, which is the tree
/// order on words of equal length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSequence(Vec<i8>);

impl SignSequence {
    pub fn root() -> Self {
        SignSequence(Vec::new())
    }

    pub fn new(letters: Vec<i8>) -> Result<Self> {
        if letters.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidParameter(format!(
                "sign sequence letters must be ±1, got {letters:?}"
            )));
        }
        Ok(SignSequence(letters))
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ε−` or `ε+`.
    pub fn child(&self, letter: i8) -> Self {
        debug_assert!(letter == 1 || letter == -1);
        let mut v = self.0.clone();
        v.push(letter);
        SignSequence(v)
    }

    /// The ancestor at depth `len`.
    pub fn prefix(&self, len: usize) -> Self {
        SignSequence(self.0[..len].to_vec())
    }

    /// `ε_1 ⋯ ε_n`.
    pub fn sign_product(&self) -> i8 {
        self.0.iter().product()
    }

    /// `x_ε · β^n`.
    pub fn position(&self, m: usize) -> FieldElement {
        word_position(m, &self.0)
    }

    /// `(-,+,…,+)` of length `n`.
    pub fn minus_then_plus(n: usize) -> Self {
        let mut v = vec![1; n];
        if n > 0 {
            v[0] = -1;
        }
        SignSequence(v)
    }

    /// `(+,−,…,−)` of length `n`.
    pub fn plus_then_minus(n: usize) -> Self {
        let mut v = vec![-1; n];
        if n > 0 {
            v[0] = 1;
        }
        SignSequence(v)
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.0 {
            f.write_str(if e > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SignSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::InvalidParameter(format!(
                    "unexpected character {other:?} in sign sequence"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignSequence)
    }
}

/// The surviving words `D_n^*` of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedLevel {
    pub n: usize,
    /// Lexicographically sorted survivors.
    pub survivors: Vec<SignSequence>,
    /// For each survivor, the index of its parent in level `n − 1`. Empty at
    /// the root.
    pub parent_index: Vec<usize>,
    /// For each survivor, the index of its atom in `ν^(n)`. Empty for levels
    /// not tied to a measure.
    pub atom_index: Vec<usize>,
}

impl PrunedLevel {
    /// `D_0^* = {0}`, pointing at the single atom of `δ_0`.
    pub fn root() -> Self {
        PrunedLevel {
            n: 0,
            survivors: vec![SignSequence::root()],
            parent_index: Vec::new(),
            atom_index: vec![0],
        }
    }

    /// The unpruned level `{±1}^n`, not tied to any measure.
    pub fn full(n: usize) -> Self {
        let survivors: Vec<SignSequence> = (0..1u64 << n)
            .map(|i| SignSequence(crate::measure::word_from_index(i, n)))
            .collect();
        let parent_index = if n == 0 {
            Vec::new()
        } else {
            (0..survivors.len()).map(|i| i / 2).collect()
        };
        PrunedLevel {
            n,
            survivors,
            parent_index,
            atom_index: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.survivors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.survivors.is_empty()
    }

    pub fn contains(&self, word: &SignSequence) -> bool {
        self.survivors.binary_search(word).is_ok()
    }
}

/// Grows `D_{n+1}^*` from `D_n^*`: each child of a survivor is kept iff its
/// point is an atom of `ν^(n+1)`. `current` is the measure `level` refers to.
pub fn grow(
    level: &PrunedLevel,
    current: &SignedMeasure,
    next: &SignedMeasure,
) -> Result<PrunedLevel> {
    if current.level() != level.n {
        return Err(Error::LevelMismatch {
            expected: level.n,
            found: current.level(),
        });
    }
    if next.level() != level.n + 1 {
        return Err(Error::LevelMismatch {
            expected: level.n + 1,
            found: next.level(),
        });
    }
    if current.m() != next.m() {
        return Err(Error::FieldMismatch {
            expected: current.m(),
            found: next.m(),
        });
    }
    if level.atom_index.len() != level.len() {
        return Err(Error::InvalidParameter(
            "level is not tied to a measure".into(),
        ));
    }
    let lookup: HashMap<&FieldElement, usize> = next
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| (&a.position, i))
        .collect();
    let mut out = PrunedLevel {
        n: level.n + 1,
        survivors: Vec::new(),
        parent_index: Vec::new(),
        atom_index: Vec::new(),
    };
    for (i, (word, &atom)) in level.survivors.iter().zip(&level.atom_index).enumerate() {
        let parent = &current.atoms()[atom].position;
        for letter in [-1i8, 1] {
            if let Some(&j) = lookup.get(&parent.shift_add(letter as i64)) {
                out.survivors.push(word.child(letter));
                out.parent_index.push(i);
                out.atom_index.push(j);
            }
        }
    }
    Ok(out)
}

/// Levels `0..=depth` of the pruned tree together with the measures they
/// index into.
#[derive(Clone, Debug)]
pub struct PrunedTree {
    spec: FieldSpec,
    measures: Vec<SignedMeasure>,
    levels: Vec<PrunedLevel>,
}

impl PrunedTree {
    pub fn build(spec: &FieldSpec, depth: usize) -> Result<Self> {
        let measures = SignedMeasure::signed_levels(spec, depth)?;
        let mut levels = vec![PrunedLevel::root()];
        for n in 0..depth {
            let next = grow(&levels[n], &measures[n], &measures[n + 1])?;
            levels.push(next);
        }
        Ok(PrunedTree {
            spec: spec.clone(),
            measures,
            levels,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn m(&self) -> usize {
        self.spec.m()
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &PrunedLevel {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[PrunedLevel] {
        &self.levels
    }

    pub fn measure(&self, n: usize) -> &SignedMeasure {
        &self.measures[n]
    }

    /// `|D_n^*|` for every level.
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(PrunedLevel::len).collect()
    }

    /// `x_ε β^n` of survivor `i` at level `n`, read from the atom table.
    pub fn position(&self, n: usize, i: usize) -> &FieldElement {
        &self.measures[n].atoms()[self.levels[n].atom_index[i]].position
    }

    /// One survivor per line, `"<level> <word>"`; the root prints as `"0 "`.
    pub fn dump_lines(&self) -> String {
        let mut out = String::new();
        for level in &self.levels {
            for word in &level.survivors {
                out.push_str(&format!("{} {}\n", level.n, word));
            }
        }
        out
    }

    /// Graphviz rendering of the first `max_depth` levels.
    pub fn to_dot(&self, max_depth: usize) -> String {
        let name = |w: &SignSequence| {
            if w.is_empty() {
                "\"0\"".to_string()
            } else {
                format!("\"{w}\"")
            }
        };
        let mut out = String::from("digraph pruned_tree {\n  node [shape=point];\n");
        for n in 1..=max_depth.min(self.depth()) {
            let level = &self.levels[n];
            let parents = &self.levels[n - 1];
            for (w, &p) in level.survivors.iter().zip(&level.parent_index) {
                out.push_str(&format!(
                    "  {} -> {};\n",
                    name(&parents.survivors[p]),
                    name(w)
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FirstPruningReport {
    pub m: usize,
    pub sizes: Vec<usize>,
    pub removed_at_m_plus_1: Option<Vec<String>>,
    pub passed: bool,
    pub first_violation: Option<String>,
}

/// `|D_n^*| = 2^n` for `n ≤ m`, and `D_{m+1}^*` misses exactly
/// `(−,+,…,+)` and `(+,−,…,−)`.
pub fn check_first_pruning(tree: &PrunedTree) -> FirstPruningReport {
    let m = tree.m();
    let mut violation = None;
    let top = m.min(tree.depth());
    for n in 0..=top {
        if tree.level(n).len() != 1 << n {
            violation.get_or_insert(format!(
                "|D_{n}*| = {} but expected 2^{n}",
                tree.level(n).len()
            ));
        }
    }
    let mut removed_out = None;
    if tree.depth() > m {
        let level = tree.level(m + 1);
        let removed: Vec<SignSequence> = PrunedLevel::full(m + 1)
            .survivors
            .into_iter()
            .filter(|w| !level.contains(w))
            .collect();
        let expected = vec![
            SignSequence::minus_then_plus(m + 1),
            SignSequence::plus_then_minus(m + 1),
        ];
        if removed != expected {
            violation.get_or_insert(format!(
                "level {} removed {:?}",
                m + 1,
                removed.iter().map(ToString::to_string).collect::<Vec<_>>()
            ));
        }
        removed_out = Some(removed.iter().map(ToString::to_string).collect());
    }
    FirstPruningReport {
        m,
        sizes: tree.sizes()[..=top.min(tree.depth())].to_vec(),
        removed_at_m_plus_1: removed_out,
        passed: violation.is_none(),
        first_violation: violation,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub n: usize,
    pub survivors: usize,
    pub atoms: usize,
    /// Largest number of survivors sharing one atom.
    pub max_multiplicity: usize,
    pub passed: bool,
    pub first_violation: Option<String>,
}

/// Checks that `ε ↦ x_ε` maps `D_n^*` (lexicographic order) onto the atoms
/// of `ν^(n)` (position order) as a strictly increasing bijection.
pub fn check_isomorphism(
    spec: &FieldSpec,
    level: &PrunedLevel,
    nu: &SignedMeasure,
) -> IsomorphismReport {
    let mut violation: Option<String> = None;
    let mut fail = |msg: String| {
        violation.get_or_insert(msg);
    };
    if level.n != nu.level() {
        fail(format!(
            "level {} checked against measure at {}",
            level.n,
            nu.level()
        ));
    }
    let mut hits = vec![0usize; nu.len()];
    for (i, word) in level.survivors.iter().enumerate() {
        let Some(&atom) = level.atom_index.get(i) else {
            fail(format!("survivor {word} has no atom reference"));
            continue;
        };
        if atom >= nu.len() {
            fail(format!("survivor {word} points past the atom table"));
            continue;
        }
        hits[atom] += 1;
        if word.position(spec.m()) != nu.atoms()[atom].position {
            fail(format!("survivor {word} does not sit at its atom"));
        }
    }
    for (i, pair) in level.survivors.windows(2).enumerate() {
        if pair[0] >= pair[1] {
            fail(format!(
                "survivors out of order at {}: {} ≥ {}",
                i, pair[0], pair[1]
            ));
        }
        let (a, b) = (&pair[0], &pair[1]);
        if spec.sign(&(&b.position(spec.m()) - &a.position(spec.m()))) != Sign::Positive {
            fail(format!("order not preserved: x_{a} ≥ x_{b}"));
        }
    }
    let max_multiplicity = hits.iter().copied().max().unwrap_or(0);
    if let Some(missing) = hits.iter().position(|&h| h == 0) {
        fail(format!("atom {missing} has no survivor"));
    }
    if max_multiplicity > 1 {
        fail(format!("an atom is hit by {max_multiplicity} survivors"));
    }
    IsomorphismReport {
        n: level.n,
        survivors: level.len(),
        atoms: nu.len(),
        max_multiplicity,
        passed: violation.is_none(),
        first_violation: violation,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LeaflessReport {
    pub n: usize,
    pub nodes: usize,
    pub childless: usize,
    pub passed: bool,
    pub first_violation: Option<String>,
}

/// Every survivor of `parent` has at least one surviving child in `child`.
pub fn check_leafless(parent: &PrunedLevel, child: &PrunedLevel) -> LeaflessReport {
    let mut counts = vec![0usize; parent.len()];
    for &p in &child.parent_index {
        if let Some(c) = counts.get_mut(p) {
            *c += 1;
        }
    }
    let childless: Vec<usize> = (0..parent.len()).filter(|&i| counts[i] == 0).collect();
    let mut first_violation = childless
        .first()
        .map(|&i| format!("{} has no surviving child", parent.survivors[i]));
    if child.n != parent.n + 1 {
        first_violation = Some(format!(
            "levels {} and {} are not consecutive",
            parent.n, child.n
        ));
    }
    LeaflessReport {
        n: parent.n,
        nodes: parent.len(),
        childless: childless.len(),
        passed: first_violation.is_none(),
        first_violation,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DiamondReport {
    pub n: usize,
    /// Pairs `(a, b)` in `D_n^*` with `x_{a+} = x_{b−}`.
    pub b_n: usize,
    /// `a_{n−m+1} − a_{n−m}` when `n ≥ m`, else `0`.
    pub expected_b_n: usize,
    pub lost_children: usize,
    pub passed: bool,
    pub first_violation: Option<String>,
}

/// Enumerates every colliding pair at level `n`, attributes each lost child
/// at level `n + 1` to a canceling partner found by scanning the whole
/// level, and checks the diamond shape of that cancellation.
pub fn check_diamond(tree: &PrunedTree, n: usize) -> Result<DiamondReport> {
    if n + 1 > tree.depth() {
        return Err(Error::InvalidParameter(format!(
            "diamond check at level {n} needs level {} but the tree has depth {}",
            n + 1,
            tree.depth()
        )));
    }
    let m = tree.m();
    let level = tree.level(n);
    let next = tree.level(n + 1);
    let k = level.len();

    let plus: Vec<FieldElement> = (0..k).map(|i| tree.position(n, i).shift_add(1)).collect();
    let minus: Vec<FieldElement> = (0..k).map(|i| tree.position(n, i).shift_add(-1)).collect();
    let mut plus_map: HashMap<&FieldElement, Vec<usize>> = HashMap::new();
    let mut minus_map: HashMap<&FieldElement, Vec<usize>> = HashMap::new();
    for i in 0..k {
        plus_map.entry(&plus[i]).or_default().push(i);
        minus_map.entry(&minus[i]).or_default().push(i);
    }
    let b_n: usize = (0..k)
        .map(|a| minus_map.get(&plus[a]).map_or(0, Vec::len))
        .sum();

    let mut has_child = vec![[false; 2]; k];
    for (w, &p) in next.survivors.iter().zip(&next.parent_index) {
        let slot = usize::from(w.letters()[n] > 0);
        has_child[p][slot] = true;
    }

    let mut violation: Option<String> = None;
    let mut fail = |msg: String| {
        violation.get_or_insert(msg);
    };
    let mut lost = 0usize;
    let ancestors = (n >= m).then(|| (tree.level(n - m), tree.level(n - m + 1)));
    for i in 0..k {
        let word = &level.survivors[i];
        if !has_child[i][0] && !has_child[i][1] {
            fail(format!("{word} lost both children"));
        }
        for (slot, letter) in [(0usize, -1i8), (1, 1)] {
            if has_child[i][slot] {
                continue;
            }
            lost += 1;
            let lost_word = word.child(letter);
            // the partner's child lands on the same point with the other letter
            let partners = if letter < 0 {
                plus_map.get(&minus[i])
            } else {
                minus_map.get(&plus[i])
            };
            let Some(partners) = partners.filter(|p| !p.is_empty()) else {
                fail(format!("{lost_word} vanished without a canceling partner"));
                continue;
            };
            let Some((anc_level, anc_children)) = ancestors else {
                fail(format!("{lost_word} pruned before level m + 1"));
                continue;
            };
            // ε = ε∘ + − ⋯ − loses ε−; ε = ε∘ − + ⋯ + loses ε+.
            let tail = &word.letters()[n - m..];
            let expected_tail: Vec<i8> = std::iter::once(-letter)
                .chain(std::iter::repeat_n(letter, m - 1))
                .collect();
            if tail != expected_tail.as_slice() {
                fail(format!(
                    "{lost_word} lost but {word} does not end in the diamond tail"
                ));
                continue;
            }
            let root = word.prefix(n - m);
            if !anc_level.contains(&root)
                || !anc_children.contains(&root.child(-1))
                || !anc_children.contains(&root.child(1))
            {
                fail(format!(
                    "diamond root {root} of {lost_word} lacks two surviving children"
                ));
            }
            let mut partner_word = root.clone();
            partner_word = partner_word.child(letter);
            for _ in 1..m {
                partner_word = partner_word.child(-letter);
            }
            if partners.len() != 1 || level.survivors[partners[0]] != partner_word {
                fail(format!(
                    "{lost_word} cancels against {:?}, expected {partner_word}",
                    partners
                        .iter()
                        .map(|&p| level.survivors[p].to_string())
                        .collect::<Vec<_>>()
                ));
            }
        }
    }
    if lost != 2 * b_n {
        fail(format!("{lost} lost children but {b_n} colliding pairs"));
    }
    let expected_b_n = if n >= m {
        tree.level(n - m + 1).len() - tree.level(n - m).len()
    } else {
        0
    };
    if b_n != expected_b_n {
        fail(format!(
            "b_{n} = {b_n} but a_{{n-m+1}} - a_{{n-m}} = {expected_b_n}"
        ));
    }
    Ok(DiamondReport {
        n,
        b_n,
        expected_b_n,
        lost_children: lost,
        passed: violation.is_none(),
        first_violation: violation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationMode {
    /// All pairs of distinct level-`n` ancestors.
    Exhaustive,
    /// `pairs` random ancestor pairs drawn with a seeded generator.
    Sampled { pairs: usize, seed: u64 },
}

impl SeparationMode {
    /// Exhaustive while level `n + k` holds at most `budget` nodes.
    pub fn within_budget(nodes: usize, budget: usize, seed: u64) -> Self {
        if nodes <= budget {
            SeparationMode::Exhaustive
        } else {
            SeparationMode::Sampled {
                pairs: budget,
                seed,
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeparationReport {
    pub n: usize,
    pub k: usize,
    pub mode: String,
    pub comparisons: usize,
    /// Ancestor pairs whose extreme descendants touch (`x_{a'+} = x_{b'−}`).
    pub equalities: usize,
    pub strict_required: bool,
    pub passed: bool,
    pub first_violation: Option<String>,
}

/// For survivors `a < b` at level `n` and descendants `a'`, `b'` exactly `k`
/// levels below, checks `x_{a'+} ≤ x_{b'−}`, strictly when `k ≥ m`.
///
/// Descendants of one ancestor form a contiguous block of level `n + k`; it
/// suffices to compare the largest `x_{a'+}` of every earlier block with the
/// smallest `x_{b'−}` of each later one.
pub fn check_separation(
    tree: &PrunedTree,
    n: usize,
    k: usize,
    mode: SeparationMode,
) -> Result<SeparationReport> {
    if n == 0 || n + k > tree.depth() {
        return Err(Error::InvalidParameter(format!(
            "separation needs 1 ≤ n and n + k ≤ {}, got n = {n}, k = {k}",
            tree.depth()
        )));
    }
    let spec = tree.spec();
    let deep = n + k;
    let nodes = tree.level(deep).len();

    // block id (ancestor index at level n) of every node at level n + k
    let mut block: Vec<usize> = (0..nodes).collect();
    for lvl in (n + 1..=deep).rev() {
        let parents = &tree.level(lvl).parent_index;
        for b in block.iter_mut() {
            *b = parents[*b];
        }
    }
    // contiguous (start, end) ranges per block, in ancestor order
    let mut ranges: Vec<(usize, usize, usize)> = Vec::new();
    for (i, &b) in block.iter().enumerate() {
        match ranges.last_mut() {
            Some((id, _, end)) if *id == b => *end = i + 1,
            _ => ranges.push((b, i, i + 1)),
        }
    }
    let mut comparisons = 0usize;
    let mut extreme = |range: (usize, usize), letter: i64, want: std::cmp::Ordering| {
        let mut best = tree.position(deep, range.0).shift_add(letter);
        for i in range.0 + 1..range.1 {
            let cand = tree.position(deep, i).shift_add(letter);
            comparisons += 1;
            if spec.cmp(&cand, &best) == want {
                best = cand;
            }
        }
        best
    };
    let max_plus: Vec<FieldElement> = ranges
        .iter()
        .map(|&(_, s, e)| extreme((s, e), 1, std::cmp::Ordering::Greater))
        .collect();
    let min_minus: Vec<FieldElement> = ranges
        .iter()
        .map(|&(_, s, e)| extreme((s, e), -1, std::cmp::Ordering::Less))
        .collect();

    let strict = k >= tree.m();
    let mut equalities = 0usize;
    let mut violation: Option<String> = None;
    let ancestors = &tree.level(n).survivors;
    let mut judge =
        |a: usize, b: usize, lhs: &FieldElement, rhs: &FieldElement, comparisons: &mut usize| {
            *comparisons += 1;
            match spec.cmp(lhs, rhs) {
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    equalities += 1;
                    if strict {
                        violation.get_or_insert(format!(
                            "descendants of {} and {} touch at k = {k} ≥ m",
                            ancestors[ranges[a].0], ancestors[ranges[b].0]
                        ));
                    }
                }
                std::cmp::Ordering::Greater => {
                    violation.get_or_insert(format!(
                        "descendants of {} and {} overlap at k = {k}",
                        ancestors[ranges[a].0], ancestors[ranges[b].0]
                    ));
                }
            }
        };
    let mode_name;
    match mode {
        SeparationMode::Exhaustive => {
            mode_name = "exhaustive".to_string();
            // running maximum over all earlier blocks
            let mut running: Option<(usize, FieldElement)> = None;
            for b in 0..ranges.len() {
                if let Some((a, ref lhs)) = running {
                    judge(a, b, lhs, &min_minus[b], &mut comparisons);
                }
                let take = match &running {
                    None => true,
                    Some((_, cur)) => {
                        comparisons += 1;
                        spec.cmp(&max_plus[b], cur) == std::cmp::Ordering::Greater
                    }
                };
                if take {
                    running = Some((b, max_plus[b].clone()));
                }
            }
        }
        SeparationMode::Sampled { pairs, seed } => {
            mode_name = format!("sampled({pairs}, seed {seed})");
            if ranges.len() >= 2 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..pairs {
                    let a = rng.gen_range(0..ranges.len() - 1);
                    let b = rng.gen_range(a + 1..ranges.len());
                    judge(a, b, &max_plus[a], &min_minus[b], &mut comparisons);
                }
            }
        }
    }
    Ok(SeparationReport {
        n,
        k,
        mode: mode_name,
        comparisons,
        equalities,
        strict_required: strict,
        passed: violation.is_none(),
        first_violation: violation,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InequalityReport {
    pub name: String,
    /// `(n, sign)` for each instance checked.
    pub cases: Vec<(usize, String)>,
    pub passed: bool,
}

fn sign_name(s: Sign) -> String {
    match s {
        Sign::Negative => "negative",
        Sign::Zero => "zero",
        Sign::Positive => "positive",
    }
    .to_string()
}

/// `ρ − Σ_{j=2}^n ρ^j ≥ ρ^{n+1}` for `1 ≤ n ≤ m`, checked after scaling by
/// `β^{n+1}`: `β^n − Σ_{j=2}^n β^{n+1−j} − 1 ≥ 0`. Equality holds at `n = m`.
pub fn check_first_collision_inequality(spec: &FieldSpec) -> InequalityReport {
    let m = spec.m();
    let mut cases = Vec::new();
    let mut passed = true;
    for n in 1..=m {
        let mut e = &FieldElement::beta_pow(m, n) - &FieldElement::from_int(m, 1);
        for j in 2..=n {
            e = &e - &FieldElement::beta_pow(m, n + 1 - j);
        }
        let s = spec.sign(&e);
        passed &= s != Sign::Negative;
        cases.push((n, sign_name(s)));
    }
    InequalityReport {
        name: "first-collision".into(),
        cases,
        passed,
    }
}

/// `Σ_{j>n} ρ^j < 2ρ^n`, equivalent to `β^m > 2`.
pub fn check_tail_gap(spec: &FieldSpec) -> InequalityReport {
    let m = spec.m();
    let e = &FieldElement::beta_pow(m, m) - &FieldElement::from_int(m, 2);
    let s = spec.sign(&e);
    InequalityReport {
        name: "tail-gap".into(),
        cases: vec![(m, sign_name(s))],
        passed: s == Sign::Positive,
    }
}

/// Survivors of each level paired with how many of them share an atom.
/// Multiplicities above one only occur away from even-`m` multinacci `β`.
pub fn multiplicities(level: &PrunedLevel) -> Vec<usize> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &a in &level.atom_index {
        *counts.entry(a).or_default() += 1;
    }
    let mut out: Vec<usize> = counts.into_values().collect();
    out.sort_unstable();
    out
}

/// Words of `D_n` that are not in `D_n^*`.
pub fn pruned_words(level: &PrunedLevel) -> Vec<SignSequence> {
    let kept: HashSet<&SignSequence> = level.survivors.iter().collect();
    PrunedLevel::full(level.n)
        .survivors
        .into_iter()
        .filter(|w| !kept.contains(w))
        .collect()
}
