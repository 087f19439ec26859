use std::collections::BTreeSet;

use num_bigint::BigUint;

use nontrans::dice::{enumerate_tieless, enumerate_tieless_with, verify_dice_cycle};
use nontrans::engine::{count_suckers, enumerate_suckers, enumerate_words, Caps};
use nontrans::verify::count_vectors;
use nontrans::words::{brute_force_count, brute_force_f, is_suckers_bet};
use nontrans::Poly;

#[test]
fn recurrence_matches_brute_force_for_five_decks() {
    let caps = Caps::default();
    for a in count_vectors(5, 6) {
        let dp: Poly = nontrans::engine::compute_f(&a, &caps).unwrap();
        assert_eq!(dp, brute_force_f(&a, 1_000_000).unwrap(), "a = {a:?}");
    }
}

#[test]
fn counts_match_brute_force_for_unequal_decks() {
    let caps = Caps::default();
    for a in [&[1u32, 2, 3][..], &[2, 2, 4], &[3, 2, 4], &[1, 4, 4], &[2, 3, 3, 2]] {
        let dp = count_suckers(a, &caps).unwrap();
        assert_eq!(dp, BigUint::from(brute_force_count(a, 1_000_000).unwrap()), "a = {a:?}");
    }
}

#[test]
fn pruning_never_changes_listings() {
    for a in [[3u32, 3, 3], [2, 3, 4], [4, 4, 4], [2, 2, 2]] {
        let reduce = a.iter().all(|&x| x == a[0]);
        let with = enumerate_words(&a, reduce, true, u64::MAX).unwrap();
        let without = enumerate_words(&a, reduce, false, u64::MAX).unwrap();
        assert_eq!(with, without, "a = {a:?}");
    }
}

#[test]
fn full_listing_size_matches_count() {
    let caps = Caps::default();
    for a in [[4u32, 4, 4], [3, 4, 5], [5, 5, 5]] {
        let sets = enumerate_suckers(&a, false, &caps).unwrap();
        assert_eq!(BigUint::from(sets.len()), count_suckers(&a, &caps).unwrap());
        assert!(sets.iter().all(|s| is_suckers_bet(s.decks())));
    }
}

/// Every choice of `k` sorted dice over `1..=m` with the given face counts.
fn all_dice(faces: &[u32], m: u32) -> Vec<Vec<Vec<u32>>> {
    fn multisets(size: u32, lo: u32, m: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if size == 0 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=m {
            cur.push(v);
            multisets(size - 1, v, m, cur, out);
            cur.pop();
        }
    }
    let mut sets = vec![vec![]];
    for &f in faces {
        let mut dice = Vec::new();
        multisets(f, 1, m, &mut Vec::new(), &mut dice);
        sets = sets
            .into_iter()
            .flat_map(|s: Vec<Vec<u32>>| {
                dice.iter().map(move |d| {
                    let mut s = s.clone();
                    s.push(d.clone());
                    s
                })
            })
            .collect();
    }
    sets
}

fn tieless_with_all(dice: &[Vec<u32>], m: u32) -> bool {
    let mut owner = vec![usize::MAX; m as usize + 1];
    for (j, d) in dice.iter().enumerate() {
        for &f in d {
            if owner[f as usize] != usize::MAX && owner[f as usize] != j {
                return false;
            }
            owner[f as usize] = j;
        }
    }
    owner[1..].iter().all(|&o| o != usize::MAX)
}

#[test]
fn dice_search_matches_exhaustive_search() {
    for (faces, m) in [
        (vec![3u32, 3, 3], 4u32),
        (vec![3, 3, 3], 5),
        (vec![2, 3, 3], 5),
        (vec![2, 2, 2, 2], 5),
        (vec![3, 3, 3], 6),
    ] {
        let oracle: BTreeSet<Vec<Vec<u32>>> = all_dice(&faces, m)
            .into_iter()
            .filter(|d| tieless_with_all(d, m) && verify_dice_cycle(d).holds)
            .collect();
        let found: BTreeSet<Vec<Vec<u32>>> =
            enumerate_tieless(faces.len(), &faces, m, false, u64::MAX)
                .unwrap()
                .into_iter()
                .map(|s| s.dice().to_vec())
                .collect();
        assert_eq!(found, oracle, "faces {faces:?}, m = {m}");
    }
}

#[test]
fn reduced_dice_are_orbit_representatives() {
    let faces = [3u32, 3, 3];
    for m in 4..=6 {
        let full = enumerate_tieless(3, &faces, m, false, u64::MAX).unwrap();
        let reduced = enumerate_tieless(3, &faces, m, true, u64::MAX).unwrap();
        assert_eq!(full.len(), 3 * reduced.len(), "m = {m}");
        let unpruned = enumerate_tieless_with(3, &faces, m, true, false, u64::MAX).unwrap();
        assert_eq!(reduced, unpruned);
    }
}
