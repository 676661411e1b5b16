mod common;

use common::all_words;
use proptest::prelude::*;
use stackable::builtin::ThompsonF;
use stackable::Letter;

/// Membership by reading the definition off literally.
fn direct(f: &ThompsonF, w: &[Letter]) -> bool {
    let t = |l: Letter| f.alphabet().token(l);
    let forbidden2 = [["x0", "X0"], ["X0", "x0"], ["x1", "X1"], ["X1", "x1"]];
    let forbidden3 = [["x0", "x0", "x1"], ["x0", "x0", "X1"]];
    let has2 = w.windows(2).any(|p| forbidden2.iter().any(|f| f[0] == t(p[0]) && f[1] == t(p[1])));
    let has3 = w
        .windows(3)
        .any(|p| forbidden3.iter().any(|f| (0..3).all(|i| f[i] == t(p[i]))));
    let mut sum = 0i64;
    let mut prefixes_ok = true;
    for &l in w {
        sum += match t(l) {
            "x0" => 1,
            "X0" => -1,
            _ => 0,
        };
        prefixes_ok &= sum <= 0;
    }
    !has2 && !has3 && prefixes_ok
}

#[test]
fn recognizer_matches_definition_up_to_length_eight() {
    let f = ThompsonF::new();
    let mut accepted = 0;
    for w in all_words(4, 8) {
        let d = direct(&f, &w);
        assert_eq!(f.in_c(&w).unwrap(), d, "{}", f.alphabet().render(&w));
        accepted += usize::from(d);
    }
    assert!(accepted > 1000);
}

#[test]
fn accepted_words_have_nonpositive_exponent_sum() {
    let f = ThompsonF::new();
    for w in all_words(4, 6) {
        if f.in_c(&w).unwrap() {
            assert!(f.expsum_x0(&w).unwrap() <= 0);
        }
    }
}

proptest! {
    #[test]
    fn recognizer_matches_definition_on_long_words(w in proptest::collection::vec(0usize..4, 0..60)) {
        let f = ThompsonF::new();
        let w: Vec<Letter> = w.into_iter().map(Letter::new).collect();
        prop_assert_eq!(f.in_c(&w).unwrap(), direct(&f, &w));
    }

    #[test]
    fn accepted_language_is_prefix_closed(w in proptest::collection::vec(0usize..4, 0..30)) {
        let f = ThompsonF::new();
        let w: Vec<Letter> = w.into_iter().map(Letter::new).collect();
        if f.in_c(&w).unwrap() {
            for n in 0..w.len() {
                prop_assert!(f.in_c(&w[..n]).unwrap());
            }
        }
    }
}
