//! Exhaustive consistency checks for the core sequence machinery: the
//! incremental occurrence scan against naive triple enumeration, the
//! unrestricted census against factorials, and the active-site computation
//! against its quadratic oracle.

use invseq::enumerate::{count_avoiding_levels, enumerate_avoiders, ForbiddenPattern, ScanState};
use invseq::sites::{active_sites, active_sites_oracle, enumerate_one_free_avoiders};
use invseq::{CountTable, InversionSequence, Pattern};

/// Every length-3 pattern whose value set is an interval starting at 0;
/// equivalently, every order type a triple of letters can have.
const TRIPLE_PATTERNS: [[usize; 3]; 13] = [
    [0, 0, 0],
    [0, 0, 1],
    [0, 1, 0],
    [1, 0, 0],
    [0, 1, 1],
    [1, 0, 1],
    [1, 1, 0],
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn pattern(word: &[usize]) -> Pattern {
    Pattern::new(word.to_vec()).expect("valid pattern literal")
}

/// Rank-encodes a triple of letters: each letter is replaced by the number
/// of distinct smaller letters, yielding the unique member of
/// `TRIPLE_PATTERNS` the triple realizes.
fn order_type(vals: [usize; 3]) -> [usize; 3] {
    let mut distinct = vals;
    distinct.sort_unstable();
    let encode = |v: usize| {
        let mut rank = 0;
        for w in 0..3 {
            if distinct[w] < v && (w == 0 || distinct[w] != distinct[w - 1]) {
                rank += 1;
            }
        }
        rank
    };
    [encode(vals[0]), encode(vals[1]), encode(vals[2])]
}

/// Counts occurrences of every triple pattern in `word` by visiting every
/// index triple once and classifying its order type. Deliberately shares no
/// code with the scan implementation.
fn naive_histogram(word: &[usize]) -> [u64; 13] {
    let mut hist = [0u64; 13];
    let n = word.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let ty = order_type([word[i], word[j], word[k]]);
                let slot = TRIPLE_PATTERNS
                    .iter()
                    .position(|p| *p == ty)
                    .expect("every order type is listed");
                hist[slot] += 1;
            }
        }
    }
    hist
}

#[allow(clippy::too_many_arguments)]
fn walk_all_sequences(
    n_max: usize,
    prefix: &mut Vec<usize>,
    scan: &mut ScanState,
    guards: &[ForbiddenPattern],
    patterns: &[Pattern],
    running: &mut [u64; 13],
    visited: &mut u64,
) {
    let expected = naive_histogram(prefix);
    let sigma = InversionSequence::new(prefix.clone()).expect("prefix is a valid sequence");
    for (slot, rho) in patterns.iter().enumerate() {
        assert_eq!(
            running[slot], expected[slot],
            "scan total for {rho} diverges from triple enumeration on {prefix:?}"
        );
        assert_eq!(
            sigma.count_occurrences(rho),
            expected[slot],
            "count_occurrences for {rho} diverges from triple enumeration on {prefix:?}"
        );
    }
    *visited += 1;

    if prefix.len() == n_max {
        return;
    }
    for v in 0..=prefix.len() {
        let mut deltas = [0u64; 13];
        for (slot, guard) in guards.iter().enumerate() {
            deltas[slot] = scan.occurrences_created(guard, v);
            running[slot] += deltas[slot];
        }
        scan.append(v);
        prefix.push(v);
        walk_all_sequences(n_max, prefix, scan, guards, patterns, running, visited);
        prefix.pop();
        scan.pop();
        for slot in 0..13 {
            running[slot] -= deltas[slot];
        }
    }
}

/// For every inversion sequence of size at most 9 and every triple pattern,
/// the incremental scan (both the enumeration guard and the sequence-level
/// counter) reports exactly the number of occurrences found by visiting all
/// index triples.
#[test]
fn occurrence_scan_matches_triple_enumeration_through_size_nine() {
    const N_MAX: usize = 9;
    let patterns: Vec<Pattern> = TRIPLE_PATTERNS.iter().map(|w| pattern(w)).collect();
    let guards: Vec<ForbiddenPattern> = patterns
        .iter()
        .map(|p| ForbiddenPattern::classical(p.clone()).expect("triple patterns compile"))
        .collect();

    let mut prefix = Vec::with_capacity(N_MAX);
    let mut scan = ScanState::new(N_MAX);
    let mut running = [0u64; 13];
    let mut visited = 0u64;
    walk_all_sequences(
        N_MAX,
        &mut prefix,
        &mut scan,
        &guards,
        &patterns,
        &mut running,
        &mut visited,
    );

    // 0! + 1! + ... + 9! nodes, each checked against 13 patterns.
    assert_eq!(visited, 409_114);
}

/// With nothing forbidden there are exactly n! inversion sequences of size
/// n; both the direct enumerator and the level counter must say so.
#[test]
fn unrestricted_census_is_factorial_through_size_nine() {
    let factorials: [u64; 10] = [1, 1, 2, 6, 24, 120, 720, 5040, 40_320, 362_880];
    for (n, &expected) in factorials.iter().enumerate() {
        assert_eq!(
            enumerate_avoiders(n, &[]).len() as u64,
            expected,
            "|I_{n}| should be {n}!"
        );
    }
    assert_eq!(
        count_avoiding_levels(9, &[]),
        CountTable::from_u64s(&factorials)
    );
}

/// The linear-time active-site computation agrees with the brute-force
/// oracle (try every slot, test the result) on every one-free avoider of
/// size at most 9.
#[test]
fn active_sites_match_oracle_through_size_nine() {
    let class_sizes: [usize; 10] = [1, 1, 1, 2, 5, 15, 51, 186, 707, 2763];
    assert!(
        active_sites(&InversionSequence::empty()).is_err(),
        "the site statistic is undefined on the empty sequence"
    );
    for (n, &expected) in class_sizes.iter().enumerate() {
        let members = enumerate_one_free_avoiders(n);
        assert_eq!(members.len(), expected, "census of size-{n} one-free avoiders");
        for sigma in members.iter().filter(|s| !s.is_empty()) {
            let fast = active_sites(sigma).expect("member of the class");
            let slow = active_sites_oracle(sigma).expect("member of the class");
            assert_eq!(fast, slow, "active sites diverge on {:?}", sigma.entries());
        }
    }
}
