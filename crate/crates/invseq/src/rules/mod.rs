//! Succession rules as data: labels, productions with explicit multiplicities
//! and jump lengths, and the statistics that map inversion sequences onto
//! labels where the labelling is a direct sequence statistic.
//!
//! Each rule describes a generating tree whose level-n node count (after an
//! optional counting filter) is the number of size-n sequences in the
//! associated class. The level dynamic program lives in [`dp`]; the edge
//! multiplicity tables live in [`tables`].

pub mod dp;
pub mod tables;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::seq::{InversionSequence, Pattern};
use crate::series::SeriesError;

/// Letter component of a label, for rules that distinguish sequence shapes.
/// Declared alphabetically so the derived order (and hence canonical label
/// order) sorts letters the way a reader expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelTag {
    A,
    B,
    C,
    L,
    M,
    P,
    R,
}

impl fmt::Display for LabelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self {
            LabelTag::A => "A",
            LabelTag::B => "B",
            LabelTag::C => "C",
            LabelTag::L => "L",
            LabelTag::M => "M",
            LabelTag::P => "P",
            LabelTag::R => "R",
        };
        f.write_str(letter)
    }
}

/// A generating-tree label: an optional letter, a short parameter list, and
/// (for the composition-labelled 120 rule only) a list of zero-run lengths.
///
/// The derived ordering (letter, then parameters, then composition) is the
/// canonical encoding used for deterministic map iteration and reports.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    tag: Option<LabelTag>,
    params: Vec<i64>,
    composition: Vec<usize>,
}

impl Label {
    /// Untagged label carrying integer parameters, e.g. `(2)` or `(1,3)`.
    pub fn of(params: &[i64]) -> Self {
        Label {
            tag: None,
            params: params.to_vec(),
            composition: Vec::new(),
        }
    }

    /// Letter-tagged label, e.g. `(B,1,2)`.
    pub fn tagged(tag: LabelTag, params: &[i64]) -> Self {
        Label {
            tag: Some(tag),
            params: params.to_vec(),
            composition: Vec::new(),
        }
    }

    /// Composition label listing maximal zero-run lengths, e.g. `(2,2)`.
    /// The root of the composition-labelled tree is `(0)`.
    pub fn parts(composition: &[usize]) -> Self {
        Label {
            tag: None,
            params: Vec::new(),
            composition: composition.to_vec(),
        }
    }

    pub fn tag(&self) -> Option<LabelTag> {
        self.tag
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    pub fn composition(&self) -> &[usize] {
        &self.composition
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        if let Some(tag) = self.tag {
            write!(f, "{tag}")?;
            first = false;
        }
        for p in &self.params {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        for part in &self.composition {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
            first = false;
        }
        write!(f, ")")
    }
}

/// One child family of a production: a target label produced `multiplicity`
/// times by an edge of length `jump` (1 for ordinary rules; 0 where a rule
/// declares same-level edges; arbitrary k ≥ 1 for the long-jump 120 rule).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionItem {
    pub label: Label,
    pub multiplicity: BigUint,
    pub jump: usize,
}

impl ProductionItem {
    fn new(label: Label, multiplicity: BigUint, jump: usize) -> Self {
        ProductionItem {
            label,
            multiplicity,
            jump,
        }
    }
}

impl fmt::Display for ProductionItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.label, self.multiplicity)?;
        if self.jump != 1 {
            write!(f, " j{}", self.jump)?;
        }
        Ok(())
    }
}

/// Identifier of a succession rule in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    /// Unrestricted left growth; label = number of zeros; n! nodes per level.
    OmegaLeft,
    /// Shared rule of the classes avoiding 101 and avoiding 110.
    OmegaPCat,
    /// Alias of [`RuleId::OmegaPCat`] resolved from the 110 viewpoint.
    Omega101_110,
    /// Pair class avoiding {201, 210}; one parameter.
    Omega201_210,
    /// Pair class avoiding {010, 102}; lettered labels, jumps 0/1.
    Omega010_102,
    Omega001,
    Omega011,
    Omega012,
    Omega021,
    Omega102,
    /// Single class avoiding 201 (or equally 210); two parameters.
    Omega201_210Table,
    Omega000,
    /// Constant pattern of length k ≥ 2; extends the 000 construction.
    Omega0k(usize),
    Omega100,
    /// Commitment rule for the class avoiding 010.
    Omega010,
    /// Composition-labelled rule for the class avoiding 120.
    Omega120,
    /// Commitment rule for the class avoiding 120.
    Omega120Prime,
    /// One-parameter, long-jump rule for the class avoiding 120.
    Omega120DoublePrime,
}

impl RuleId {
    /// Every rule in the catalog, with k = 4 standing in for the constant
    /// pattern family (k = 3 coincides with the 000 rule).
    pub fn catalog() -> Vec<RuleId> {
        vec![
            RuleId::OmegaLeft,
            RuleId::OmegaPCat,
            RuleId::Omega101_110,
            RuleId::Omega201_210,
            RuleId::Omega010_102,
            RuleId::Omega001,
            RuleId::Omega011,
            RuleId::Omega012,
            RuleId::Omega021,
            RuleId::Omega102,
            RuleId::Omega201_210Table,
            RuleId::Omega000,
            RuleId::Omega0k(4),
            RuleId::Omega100,
            RuleId::Omega010,
            RuleId::Omega120,
            RuleId::Omega120Prime,
            RuleId::Omega120DoublePrime,
        ]
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::OmegaLeft => write!(f, "left"),
            RuleId::OmegaPCat => write!(f, "pcat"),
            RuleId::Omega101_110 => write!(f, "101-110"),
            RuleId::Omega201_210 => write!(f, "201-210"),
            RuleId::Omega010_102 => write!(f, "010-102"),
            RuleId::Omega001 => write!(f, "001"),
            RuleId::Omega011 => write!(f, "011"),
            RuleId::Omega012 => write!(f, "012"),
            RuleId::Omega021 => write!(f, "021"),
            RuleId::Omega102 => write!(f, "102"),
            RuleId::Omega201_210Table => write!(f, "201-210-single"),
            RuleId::Omega000 => write!(f, "000"),
            RuleId::Omega0k(k) => write!(f, "0^{k}"),
            RuleId::Omega100 => write!(f, "100"),
            RuleId::Omega010 => write!(f, "010"),
            RuleId::Omega120 => write!(f, "120-runs"),
            RuleId::Omega120Prime => write!(f, "120-commit"),
            RuleId::Omega120DoublePrime => write!(f, "120-jump"),
        }
    }
}

impl FromStr for RuleId {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rule = match s {
            "left" => RuleId::OmegaLeft,
            "pcat" | "101" => RuleId::OmegaPCat,
            "101-110" | "110" => RuleId::Omega101_110,
            "201-210" => RuleId::Omega201_210,
            "010-102" => RuleId::Omega010_102,
            "001" => RuleId::Omega001,
            "011" => RuleId::Omega011,
            "012" => RuleId::Omega012,
            "021" => RuleId::Omega021,
            "102" => RuleId::Omega102,
            "201-210-single" | "201" | "210" => RuleId::Omega201_210Table,
            "000" => RuleId::Omega000,
            "100" => RuleId::Omega100,
            "010" => RuleId::Omega010,
            "120-runs" => RuleId::Omega120,
            "120-commit" | "120" => RuleId::Omega120Prime,
            "120-jump" => RuleId::Omega120DoublePrime,
            other => {
                if let Some(k) = other.strip_prefix("0^") {
                    match k.parse::<usize>() {
                        Ok(k) if k >= 2 => return Ok(RuleId::Omega0k(k)),
                        _ => {}
                    }
                }
                return Err(RuleError::UnknownRuleName(other.to_string()));
            }
        };
        Ok(rule)
    }
}

/// Catalog metadata for one rule: the class it counts, how its labels read,
/// and the reference enumeration it matches.
#[derive(Debug, Clone)]
pub struct RuleInfo {
    pub id: RuleId,
    /// Canonical name accepted by [`RuleId::from_str`].
    pub name: String,
    /// Patterns of the class whose counting sequence the rule produces
    /// (after the counting filter); `None` for the unrestricted tree.
    pub patterns: Option<Vec<Pattern>>,
    /// What the label components record on a sequence.
    pub label_meaning: &'static str,
    /// Which labels are counted, when the rule tracks extra phantom nodes.
    pub counted_filter: Option<&'static str>,
    /// OEIS identifier of the counting sequence, when one is known.
    pub oeis: Option<&'static str>,
}

fn patterns(words: &[&str]) -> Option<Vec<Pattern>> {
    Some(
        words
            .iter()
            .map(|w| w.parse().expect("catalog pattern literal"))
            .collect(),
    )
}

/// Catalog metadata for `rule`.
pub fn info(rule: RuleId) -> RuleInfo {
    let (patterns, label_meaning, counted_filter, oeis): (
        Option<Vec<Pattern>>,
        &'static str,
        Option<&'static str>,
        Option<&'static str>,
    ) = match rule {
        RuleId::OmegaLeft => (
            None,
            "(z): number of zeros",
            None,
            Some("A000142"),
        ),
        RuleId::OmegaPCat => (
            patterns(&["101"]),
            "(z): number of zeros; the class avoiding 110 grows identically",
            None,
            Some("A113227"),
        ),
        RuleId::Omega101_110 => (
            patterns(&["110"]),
            "(z): number of zeros; same productions as rule `pcat`",
            None,
            Some("A113227"),
        ),
        RuleId::Omega201_210 => (
            patterns(&["201", "210"]),
            "(s): zero-prefix length, plus one if any zero follows the prefix",
            None,
            Some("A212198"),
        ),
        RuleId::Omega010_102 => (
            patterns(&["010", "102"]),
            "letter with one or two parameters; edges carry jump lengths 0 or 1",
            None,
            Some("A374553"),
        ),
        RuleId::Omega001 => (
            patterns(&["001"]),
            "(A,z) for the all-zero sequences, (B,z) otherwise",
            None,
            Some("A011782"),
        ),
        RuleId::Omega011 => (
            patterns(&["011"]),
            "(z): number of zeros",
            None,
            Some("A000110"),
        ),
        RuleId::Omega012 => (
            patterns(&["012"]),
            "(A,z) for the all-zero sequences, (B,s) otherwise",
            None,
            Some("A001519"),
        ),
        RuleId::Omega021 => (
            patterns(&["021"]),
            "(p): one parameter",
            None,
            Some("A155069"),
        ),
        RuleId::Omega102 => (
            patterns(&["102"]),
            "(s,z): zero-suffix length and number of zeros; s = z marks the all-zero sequences",
            None,
            Some("A200753"),
        ),
        RuleId::Omega201_210Table => (
            patterns(&["201"]),
            "(p,z): zero-prefix length and number of zeros; the class avoiding 210 grows identically",
            None,
            Some("A263777"),
        ),
        RuleId::Omega000 => (
            patterns(&["000"]),
            "(z): number of zeros; nodes with z > 2 are scaffolding",
            Some("z <= 2"),
            Some("A000111"),
        ),
        RuleId::Omega0k(_) => (
            None,
            "(z): number of zeros; nodes with z >= k are scaffolding",
            Some("z < k"),
            None,
        ),
        RuleId::Omega100 => (
            patterns(&["100"]),
            "(p,z): zero-prefix length and number of zeros; scaffolding beyond z - p > 1",
            Some("z - p in {0, 1}"),
            Some("A263779"),
        ),
        RuleId::Omega010 => (
            patterns(&["010"]),
            "(p,c): zero-prefix length and pending commitments; c > 0 is scaffolding",
            Some("c = 0"),
            Some("A263780"),
        ),
        RuleId::Omega120 => (
            patterns(&["120"]),
            "lengths of the maximal zero runs, in order; root is (0)",
            None,
            Some("A263778"),
        ),
        RuleId::Omega120Prime => (
            patterns(&["120"]),
            "(p,c): zero-prefix length and pending commitments; c > 0 is scaffolding",
            Some("c = 0"),
            Some("A263778"),
        ),
        RuleId::Omega120DoublePrime => (
            patterns(&["120"]),
            "(p): one parameter; edges jump k >= 1 levels",
            None,
            Some("A263778"),
        ),
    };
    let patterns = match rule {
        RuleId::Omega0k(k) => Some(vec![Pattern::constant(k).expect("constant pattern")]),
        _ => patterns,
    };
    RuleInfo {
        id: rule,
        name: rule.to_string(),
        patterns,
        label_meaning,
        counted_filter,
        oeis,
    }
}

/// Kinds of multiplicity tables exposed by [`multiplicity_tables`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// Binomial coefficients C(l, k).
    Binomial,
    /// Unsigned Stirling numbers of the first kind.
    Stirling1,
    /// a_{ℓ,k}: edge multiplicities of the commitment 120 rule.
    CommitMultiplicity,
    /// b_{ℓ,k}: edge multiplicities of the long-jump 120 rule.
    JumpMultiplicity,
}

impl FromStr for TableKind {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binomial" => Ok(TableKind::Binomial),
            "stirling1" => Ok(TableKind::Stirling1),
            "a_lk" | "commit" => Ok(TableKind::CommitMultiplicity),
            "b_lk" | "jump" => Ok(TableKind::JumpMultiplicity),
            other => Err(RuleError::UnknownTable(other.to_string())),
        }
    }
}

/// The (max_l + 1) × (max_k + 1) grid of the requested multiplicity table.
pub fn multiplicity_tables(
    kind: TableKind,
    max_l: usize,
    max_k: usize,
) -> Result<Vec<Vec<BigUint>>, RuleError> {
    let grid = match kind {
        TableKind::Binomial => (0..=max_l)
            .map(|l| {
                (0..=max_k)
                    .map(|k| tables::binomial(l as i64, k as i64))
                    .collect()
            })
            .collect(),
        TableKind::Stirling1 => (0..=max_l)
            .map(|l| (0..=max_k).map(|k| tables::stirling1(l, k)).collect())
            .collect(),
        TableKind::CommitMultiplicity => {
            trim_grid(&tables::commit_multiplicities(max_l, max_k)?, max_l, max_k)
        }
        TableKind::JumpMultiplicity => {
            trim_grid(&tables::jump_multiplicities(max_l, max_k)?, max_l, max_k)
        }
    };
    Ok(grid)
}

fn trim_grid(grid: &Arc<Vec<Vec<BigUint>>>, max_l: usize, max_k: usize) -> Vec<Vec<BigUint>> {
    (0..=max_l)
        .map(|l| (0..=max_k).map(|k| grid[l][k].clone()).collect())
        .collect()
}

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("rule {rule} has no label of the form {label}")]
    UnknownLabel { rule: RuleId, label: Label },
    #[error("label {label} lies outside the reachable label set of rule {rule}")]
    UnreachableParams { rule: RuleId, label: Label },
    #[error("rule {rule} does not label sequences by a direct statistic")]
    NotApplicable { rule: RuleId },
    #[error("expanding rule {rule} beyond level {max_level} is refused: the computation grows too quickly")]
    LevelTooDeep { rule: RuleId, max_level: usize },
    #[error("no rule is named {0:?}")]
    UnknownRuleName(String),
    #[error("no multiplicity table is named {0:?}")]
    UnknownTable(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The label of the tree's root under `rule`.
pub fn axiom(rule: RuleId) -> Label {
    match rule {
        RuleId::OmegaLeft
        | RuleId::OmegaPCat
        | RuleId::Omega101_110
        | RuleId::Omega201_210
        | RuleId::Omega011
        | RuleId::Omega021
        | RuleId::Omega000
        | RuleId::Omega0k(_)
        | RuleId::Omega120DoublePrime => Label::of(&[0]),
        RuleId::Omega001 | RuleId::Omega012 => Label::tagged(LabelTag::A, &[0]),
        RuleId::Omega010_102 => Label::tagged(LabelTag::C, &[0]),
        RuleId::Omega102
        | RuleId::Omega201_210Table
        | RuleId::Omega100
        | RuleId::Omega010
        | RuleId::Omega120Prime => Label::of(&[0, 0]),
        RuleId::Omega120 => Label::parts(&[0]),
    }
}

/// Accumulates (label, jump) → multiplicity, then emits items in canonical
/// order with zero multiplicities dropped and jumps beyond the budget
/// suppressed.
struct ItemSink {
    budget: usize,
    items: std::collections::BTreeMap<(Label, usize), BigUint>,
}

impl ItemSink {
    fn new(budget: usize) -> Self {
        ItemSink {
            budget,
            items: std::collections::BTreeMap::new(),
        }
    }

    fn step(&mut self, label: Label, multiplicity: BigUint) {
        self.jump(label, multiplicity, 1);
    }

    fn jump(&mut self, label: Label, multiplicity: BigUint, jump: usize) {
        if multiplicity.is_zero() || jump > self.budget {
            return;
        }
        *self.items.entry((label, jump)).or_default() += multiplicity;
    }

    fn finish(self) -> Vec<ProductionItem> {
        self.items
            .into_iter()
            .map(|((label, jump), multiplicity)| ProductionItem::new(label, multiplicity, jump))
            .collect()
    }
}

fn unknown(rule: RuleId, label: &Label) -> RuleError {
    RuleError::UnknownLabel {
        rule,
        label: label.clone(),
    }
}

fn unreachable_params(rule: RuleId, label: &Label) -> RuleError {
    RuleError::UnreachableParams {
        rule,
        label: label.clone(),
    }
}

/// Extracts the parameters of an untagged, composition-free label of the
/// given arity.
fn untagged_params<const N: usize>(rule: RuleId, label: &Label) -> Result<[i64; N], RuleError> {
    if label.tag.is_some() || !label.composition.is_empty() || label.params.len() != N {
        return Err(unknown(rule, label));
    }
    let mut out = [0i64; N];
    out.copy_from_slice(&label.params);
    Ok(out)
}

fn one() -> BigUint {
    BigUint::one()
}

fn power_of_two(exp: i64) -> BigUint {
    debug_assert!(exp >= 0);
    BigUint::one() << exp as usize
}

/// The children of a node labelled `label` in the tree of `rule`, as the
/// multiset of (label, multiplicity, jump) families the rule prescribes,
/// in canonical label order. Families whose jump exceeds `level_budget`
/// are suppressed, so a caller expanding a tree to depth n can pass the
/// number of levels that remain.
pub fn production(
    rule: RuleId,
    label: &Label,
    level_budget: usize,
) -> Result<Vec<ProductionItem>, RuleError> {
    let mut sink = ItemSink::new(level_budget);
    match rule {
        RuleId::OmegaLeft => {
            let [k] = untagged_params(rule, label)?;
            if k < 0 {
                return Err(unreachable_params(rule, label));
            }
            for i in 0..=k {
                sink.step(Label::of(&[i + 1]), tables::binomial(k, i));
            }
        }
        RuleId::OmegaPCat | RuleId::Omega101_110 => {
            let [k] = untagged_params(rule, label)?;
            if k < 0 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::of(&[k + 1]), one());
            for i in 1..=k {
                sink.step(Label::of(&[i]), BigUint::from(i as u64));
            }
        }
        RuleId::Omega201_210 => {
            let [s] = untagged_params(rule, label)?;
            if s < 0 {
                return Err(unreachable_params(rule, label));
            }
            for i in 1..=s + 1 {
                sink.step(Label::of(&[i]), one());
            }
            for i in 1..s {
                sink.step(Label::of(&[i + 1]), power_of_two(s - i) - 1u32);
            }
        }
        RuleId::Omega010_102 => produce_010_102(rule, label, &mut sink)?,
        RuleId::Omega001 => {
            let tag = label.tag.ok_or_else(|| unknown(rule, label))?;
            if !label.composition.is_empty() || label.params.len() != 1 {
                return Err(unknown(rule, label));
            }
            let z = label.params[0];
            match tag {
                LabelTag::A => {
                    if z < 0 {
                        return Err(unreachable_params(rule, label));
                    }
                    sink.step(Label::tagged(LabelTag::A, &[z + 1]), one());
                    for i in 1..=z {
                        sink.step(Label::tagged(LabelTag::B, &[i]), one());
                    }
                }
                LabelTag::B => {
                    if z < 1 {
                        return Err(unreachable_params(rule, label));
                    }
                    for i in 1..=z {
                        sink.step(Label::tagged(LabelTag::B, &[i]), one());
                    }
                }
                _ => return Err(unknown(rule, label)),
            }
        }
        RuleId::Omega011 => {
            let [z] = untagged_params(rule, label)?;
            if z < 0 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::of(&[z]), BigUint::from(z as u64));
            sink.step(Label::of(&[z + 1]), one());
        }
        RuleId::Omega012 => {
            let tag = label.tag.ok_or_else(|| unknown(rule, label))?;
            if !label.composition.is_empty() || label.params.len() != 1 {
                return Err(unknown(rule, label));
            }
            let z = label.params[0];
            if z < 0 {
                return Err(unreachable_params(rule, label));
            }
            match tag {
                LabelTag::A => {
                    sink.step(Label::tagged(LabelTag::A, &[z + 1]), one());
                }
                LabelTag::B => {
                    sink.step(Label::tagged(LabelTag::B, &[z]), one());
                }
                _ => return Err(unknown(rule, label)),
            }
            for i in 0..z {
                sink.step(Label::tagged(LabelTag::B, &[i]), power_of_two(z - 1 - i));
            }
        }
        RuleId::Omega021 => {
            let [p] = untagged_params(rule, label)?;
            if p < 0 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::of(&[p + 1]), one());
            for i in 1..=p {
                sink.step(Label::of(&[i]), power_of_two(p - i));
            }
        }
        RuleId::Omega102 => {
            let [s, z] = untagged_params(rule, label)?;
            if s < 0 || z < s {
                return Err(unreachable_params(rule, label));
            }
            if s == z {
                sink.step(Label::of(&[z + 1, z + 1]), one());
                for i in 0..z {
                    for j in i + 1..=z {
                        sink.step(Label::of(&[i, j]), tables::binomial(z - i - 1, z - j));
                    }
                }
            } else {
                for j in s + 1..=z + 1 {
                    sink.step(Label::of(&[s, j]), one());
                }
                for i in 0..s {
                    for j in i + 1..=z {
                        let mut m = BigUint::zero();
                        for k in (s - j).max(0)..=z - j {
                            m += tables::binomial(s - i - 1, k);
                        }
                        sink.step(Label::of(&[i, j]), m);
                    }
                }
            }
        }
        RuleId::Omega201_210Table => {
            let [p, z] = untagged_params(rule, label)?;
            if p < 0 || z < p {
                return Err(unreachable_params(rule, label));
            }
            for j in p + 1..=z + 1 {
                sink.step(Label::of(&[p + 1, j]), one());
            }
            for i in 1..=p {
                for j in i..=z {
                    let mut m = BigUint::zero();
                    for k in (p - j).max(0)..=z - j {
                        m += tables::binomial(p - i, k);
                    }
                    sink.step(Label::of(&[i, j]), m);
                }
            }
        }
        RuleId::Omega000 => {
            let [z] = untagged_params(rule, label)?;
            if z < 0 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::of(&[z - 1]), tables::binomial(z, 2));
            sink.step(Label::of(&[z]), BigUint::from(z as u64));
            sink.step(Label::of(&[z + 1]), one());
        }
        RuleId::Omega0k(k) => {
            assert!(k >= 2, "constant pattern length must be at least 2");
            let [z] = untagged_params(rule, label)?;
            if z < 0 {
                return Err(unreachable_params(rule, label));
            }
            for i in 0..=(k as i64 - 1).min(z) {
                sink.step(Label::of(&[z + 1 - i]), tables::binomial(z, i));
            }
        }
        RuleId::Omega100 => {
            let [p, z] = untagged_params(rule, label)?;
            if p < 0 || z < p {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::of(&[p + 1, z + 1]), one());
            if z > p {
                sink.step(Label::of(&[p + 1, z]), BigUint::from((z - p) as u64));
            }
            for i in 1..=p {
                for j in i..=z {
                    sink.step(Label::of(&[i, j]), tables::binomial(p - i, z - j));
                }
            }
            if z > p {
                for i in 1..=p {
                    for j in i..z {
                        let m = tables::binomial(p - i, z - j - 1) * BigUint::from((z - p) as u64);
                        sink.step(Label::of(&[i, j]), m);
                    }
                }
            }
        }
        RuleId::Omega010 => {
            let [p, c] = untagged_params(rule, label)?;
            if p < 0 || c < 0 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::of(&[p + 1, c]), one());
            if c > 0 {
                sink.step(Label::of(&[p + 1, c - 1]), one());
            }
            for l in 1..=p {
                for k in 0..l {
                    let m = tables::binomial(c + k, k)
                        * tables::stirling1(l as usize, (l - k) as usize);
                    sink.step(Label::of(&[p + 1 - l, c + k]), m);
                }
            }
        }
        RuleId::Omega120 => produce_runs_120(rule, label, &mut sink)?,
        RuleId::Omega120Prime => {
            let [p, c] = untagged_params(rule, label)?;
            if p < 0 || c < 0 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::of(&[p + 1, c]), one());
            if c > 0 {
                sink.step(Label::of(&[p + 1, c - 1]), one());
            }
            if c == 0 && p >= 1 {
                let grid = tables::commit_multiplicities(p as usize, p as usize)?;
                for l in 1..=p {
                    for k in 0..l {
                        let m = grid[l as usize][k as usize].clone();
                        sink.step(Label::of(&[p + 1 - l, k]), m);
                    }
                }
            }
        }
        RuleId::Omega120DoublePrime => {
            // Out-degree is infinite: one child per jump length k ≥ 1.
            // Realizable only under a finite budget, and capped so an
            // unbounded budget cannot demand an enormous table.
            const JUMP_BUDGET_LIMIT: usize = 1 << 14;
            let [p] = untagged_params(rule, label)?;
            if p < 0 {
                return Err(unreachable_params(rule, label));
            }
            sink.jump(Label::of(&[p + 1]), one(), 1);
            if p >= 1 && level_budget >= 1 {
                if level_budget > JUMP_BUDGET_LIMIT {
                    return Err(RuleError::LevelTooDeep {
                        rule,
                        max_level: JUMP_BUDGET_LIMIT,
                    });
                }
                let grid = tables::jump_multiplicities(p as usize, level_budget)?;
                for k in 1..=level_budget {
                    for l in 1..=p {
                        let m = grid[l as usize][k].clone();
                        sink.jump(Label::of(&[p + k as i64 - l]), m, k);
                    }
                }
            }
        }
    }
    Ok(sink.finish())
}

fn produce_010_102(rule: RuleId, label: &Label, sink: &mut ItemSink) -> Result<(), RuleError> {
    let tag = label.tag.ok_or_else(|| unknown(rule, label))?;
    if !label.composition.is_empty() {
        return Err(unknown(rule, label));
    }
    let arity: usize = match tag {
        LabelTag::C | LabelTag::L => 1,
        LabelTag::B | LabelTag::P | LabelTag::R | LabelTag::M => 2,
        LabelTag::A => return Err(unknown(rule, label)),
    };
    if label.params.len() != arity {
        return Err(unknown(rule, label));
    }
    match tag {
        LabelTag::C => {
            let z = label.params[0];
            if z < 0 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::tagged(LabelTag::C, &[z + 1]), one());
            if z >= 2 {
                sink.jump(Label::tagged(LabelTag::B, &[z - 1, 2]), one(), 0);
            }
        }
        LabelTag::B => {
            let (z, s) = (label.params[0], label.params[1]);
            if z < 1 || s < 2 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::tagged(LabelTag::P, &[z + 1, s]), one());
            if z >= 2 {
                sink.jump(Label::tagged(LabelTag::B, &[z - 1, s + 1]), one(), 0);
            }
        }
        LabelTag::P => {
            let (z, s) = (label.params[0], label.params[1]);
            if z < 2 || s < 2 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::tagged(LabelTag::P, &[z + 1, s]), one());
            sink.step(Label::tagged(LabelTag::R, &[z, s + 1]), one());
            for i in 3..=s {
                sink.step(Label::tagged(LabelTag::M, &[z, i]), one());
            }
            sink.jump(Label::tagged(LabelTag::L, &[z - 1]), one(), 0);
        }
        LabelTag::L => {
            let z = label.params[0];
            if z < 1 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::tagged(LabelTag::P, &[z + 1, 2]), one());
            if z >= 2 {
                sink.jump(Label::tagged(LabelTag::L, &[z - 1]), one(), 0);
            }
        }
        LabelTag::R => {
            let (z, s) = (label.params[0], label.params[1]);
            if z < 2 || s < 3 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::tagged(LabelTag::P, &[z + 1, s]), one());
            sink.step(Label::tagged(LabelTag::R, &[z, s + 1]), one());
        }
        LabelTag::M => {
            let (z, s) = (label.params[0], label.params[1]);
            if z < 2 || s < 3 {
                return Err(unreachable_params(rule, label));
            }
            sink.step(Label::tagged(LabelTag::P, &[z + 1, s]), one());
            sink.step(Label::tagged(LabelTag::M, &[z, s]), one());
        }
        LabelTag::A => unreachable!("rejected above"),
    }
    Ok(())
}

/// Appends to `out` every tuple of `len` parts, each in [1, cap], whose sum
/// is at most `sum_budget`, extending `acc`.
fn bounded_tuples(
    len: usize,
    cap: usize,
    sum_budget: usize,
    acc: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if len == 0 {
        out.push(acc.clone());
        return;
    }
    for q in 1..=cap.min(sum_budget) {
        acc.push(q);
        bounded_tuples(len - 1, cap, sum_budget - q, acc, out);
        acc.pop();
    }
}

fn produce_runs_120(rule: RuleId, label: &Label, sink: &mut ItemSink) -> Result<(), RuleError> {
    if label.tag.is_some() || !label.params.is_empty() {
        return Err(unknown(rule, label));
    }
    let parts = &label.composition;
    if parts.is_empty() {
        return Err(unknown(rule, label));
    }
    let is_root = parts == &[0usize];
    if !is_root && parts.contains(&0) {
        return Err(unreachable_params(rule, label));
    }
    let l0 = parts[0];
    // Replace the whole composition by a fresh tuple drawn against the
    // first run.
    let mut r = 0usize;
    while 2 * r + 1 <= l0 + 1 {
        let mut tuples = Vec::new();
        bounded_tuples(r + 1, l0 + 1, l0 + 1 - r, &mut Vec::new(), &mut tuples);
        for q in tuples {
            let total: usize = q.iter().sum();
            let m = tables::binomial((l0 + 1 - total) as i64, r as i64);
            sink.step(Label::parts(&q), m);
        }
        r += 1;
    }
    // Keep a lengthened first run and the runs before position i, replacing
    // the tail from run i onward.
    for i in 1..parts.len() {
        let li = parts[i];
        let mut prefix = Vec::with_capacity(i + 1);
        prefix.push(l0 + 1);
        prefix.extend_from_slice(&parts[1..i]);
        let mut r = 0usize;
        while 2 * r + 1 <= li {
            let mut tuples = Vec::new();
            bounded_tuples(r + 1, li, li - r, &mut Vec::new(), &mut tuples);
            for q in tuples {
                let total: usize = q.iter().sum();
                let m = tables::binomial((li + 1 - total) as i64, r as i64 + 1);
                let mut child = prefix.clone();
                child.extend_from_slice(&q);
                sink.step(Label::parts(&child), m);
            }
            r += 1;
        }
    }
    Ok(())
}

/// The label `rule` assigns to `sigma`, for rules whose labels are direct
/// sequence statistics. The caller is responsible for only passing
/// sequences that belong to the rule's tree; the statistic itself is
/// computed unconditionally.
pub fn label_of_sequence(rule: RuleId, sigma: &InversionSequence) -> Result<Label, RuleError> {
    let stats = sigma.statistics();
    let label = match rule {
        RuleId::OmegaLeft
        | RuleId::OmegaPCat
        | RuleId::Omega101_110
        | RuleId::Omega000
        | RuleId::Omega0k(_) => Label::of(&[stats.z as i64]),
        RuleId::Omega201_210 => Label::of(&[stats.s_pair_201_210 as i64]),
        RuleId::Omega102 => Label::of(&[stats.suffix_zeros as i64, stats.z as i64]),
        RuleId::Omega201_210Table | RuleId::Omega100 => {
            Label::of(&[stats.prefix_zeros as i64, stats.z as i64])
        }
        RuleId::Omega120 => {
            if sigma.is_empty() {
                Label::parts(&[0])
            } else {
                Label::parts(&zero_run_lengths(sigma))
            }
        }
        RuleId::Omega010_102
        | RuleId::Omega001
        | RuleId::Omega011
        | RuleId::Omega012
        | RuleId::Omega021
        | RuleId::Omega010
        | RuleId::Omega120Prime
        | RuleId::Omega120DoublePrime => return Err(RuleError::NotApplicable { rule }),
    };
    Ok(label)
}

/// Lengths of the maximal runs of zero entries, left to right.
fn zero_run_lengths(sigma: &InversionSequence) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current = 0usize;
    for &v in sigma.entries() {
        if v == 0 {
            current += 1;
        } else if current > 0 {
            runs.push(current);
            current = 0;
        }
    }
    if current > 0 {
        runs.push(current);
    }
    runs
}
