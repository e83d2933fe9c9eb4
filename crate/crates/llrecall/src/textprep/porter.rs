//! Porter stemmer (the classic 1980 algorithm).
//!
//! Operates on lowercase ASCII words. Words of length <= 2 and tokens
//! containing non-alphabetic characters are returned unchanged.

fn is_vowel(word: &[u8], i: usize) -> bool {
    match word[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => true,
        b'y' => i > 0 && !is_vowel(word, i - 1),
        _ => false,
    }
}

/// m in the [C](VC)^m[V] decomposition of `stem`.
fn measure(stem: &[u8]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..stem.len() {
        let v = is_vowel(stem, i);
        if !v && prev_vowel {
            m += 1;
        }
        prev_vowel = v;
    }
    m
}

fn contains_vowel(stem: &[u8]) -> bool {
    (0..stem.len()).any(|i| is_vowel(stem, i))
}

fn ends_double_consonant(word: &[u8]) -> bool {
    let n = word.len();
    n >= 2 && word[n - 1] == word[n - 2] && !is_vowel(word, n - 1)
}

/// consonant-vowel-consonant ending where the final consonant is not w, x or y.
fn ends_cvc(word: &[u8]) -> bool {
    let n = word.len();
    n >= 3
        && !is_vowel(word, n - 3)
        && is_vowel(word, n - 2)
        && !is_vowel(word, n - 1)
        && !matches!(word[n - 1], b'w' | b'x' | b'y')
}

/// Applies the first rule whose suffix matches; the condition then decides
/// between rewrite and no-op. No later rule is consulted either way.
fn rule_list(
    word: &mut Vec<u8>,
    rules: &[(&[u8], &[u8])],
    cond: impl Fn(&[u8]) -> bool,
) -> bool {
    for (suffix, replacement) in rules {
        if word.ends_with(suffix) {
            let cut = word.len() - suffix.len();
            if cond(&word[..cut]) {
                word.truncate(cut);
                word.extend_from_slice(replacement);
                return true;
            }
            return false;
        }
    }
    false
}

fn step1a(word: &mut Vec<u8>) {
    rule_list(
        word,
        &[
            (b"sses", b"ss"),
            (b"ies", b"i"),
            (b"ss", b"ss"),
            (b"s", b""),
        ],
        |_| true,
    );
    // "ss" -> "ss" is the identity; rule_list applies it harmlessly.
}

fn step1b(word: &mut Vec<u8>) {
    if word.ends_with(b"eed") {
        let cut = word.len() - 1;
        if measure(&word[..word.len() - 3]) > 0 {
            word.truncate(cut); // eed -> ee
        }
        return;
    }
    let removed = if word.ends_with(b"ed") && contains_vowel(&word[..word.len() - 2]) {
        word.truncate(word.len() - 2);
        true
    } else if word.ends_with(b"ing") && contains_vowel(&word[..word.len() - 3]) {
        word.truncate(word.len() - 3);
        true
    } else {
        false
    };
    if removed {
        if word.ends_with(b"at") || word.ends_with(b"bl") || word.ends_with(b"iz") {
            word.push(b'e');
        } else if ends_double_consonant(word) && !matches!(word[word.len() - 1], b'l' | b's' | b'z')
        {
            word.truncate(word.len() - 1);
        } else if measure(word) == 1 && ends_cvc(word) {
            word.push(b'e');
        }
    }
}

fn step1c(word: &mut Vec<u8>) {
    if word.ends_with(b"y") && contains_vowel(&word[..word.len() - 1]) {
        let n = word.len();
        word[n - 1] = b'i';
    }
}

fn step2(word: &mut Vec<u8>) {
    rule_list(
        word,
        &[
            (b"ational", b"ate"),
            (b"tional", b"tion"),
            (b"enci", b"ence"),
            (b"anci", b"ance"),
            (b"izer", b"ize"),
            (b"abli", b"able"),
            (b"alli", b"al"),
            (b"entli", b"ent"),
            (b"eli", b"e"),
            (b"ousli", b"ous"),
            (b"ization", b"ize"),
            (b"ation", b"ate"),
            (b"ator", b"ate"),
            (b"alism", b"al"),
            (b"iveness", b"ive"),
            (b"fulness", b"ful"),
            (b"ousness", b"ous"),
            (b"aliti", b"al"),
            (b"iviti", b"ive"),
            (b"biliti", b"ble"),
        ],
        |stem| measure(stem) > 0,
    );
}

fn step3(word: &mut Vec<u8>) {
    rule_list(
        word,
        &[
            (b"icate", b"ic"),
            (b"ative", b""),
            (b"alize", b"al"),
            (b"iciti", b"ic"),
            (b"ical", b"ic"),
            (b"ful", b""),
            (b"ness", b""),
        ],
        |stem| measure(stem) > 0,
    );
}

const STEP4_SUFFIXES: &[&[u8]] = &[
    b"al", b"ance", b"ence", b"er", b"ic", b"able", b"ible", b"ant", b"ement", b"ment", b"ent",
    b"ion", b"ou", b"ism", b"ate", b"iti", b"ous", b"ive", b"ize",
];

fn step4(word: &mut Vec<u8>) {
    for suffix in STEP4_SUFFIXES {
        if word.ends_with(suffix) {
            let cut = word.len() - suffix.len();
            let stem = &word[..cut];
            if measure(stem) > 1 {
                // "ion" is only removed after s or t
                if *suffix == b"ion" && !matches!(stem.last(), Some(b's') | Some(b't')) {
                    return;
                }
                word.truncate(cut);
            }
            return;
        }
    }
}

fn step5a(word: &mut Vec<u8>) {
    if word.ends_with(b"e") {
        let stem = &word[..word.len() - 1];
        let m = measure(stem);
        if m > 1 || (m == 1 && !ends_cvc(stem)) {
            word.truncate(word.len() - 1);
        }
    }
}

fn step5b(word: &mut Vec<u8>) {
    if word.ends_with(b"l") && ends_double_consonant(word) && measure(word) > 1 {
        word.truncate(word.len() - 1);
    }
}

/// Stems a lowercase token. Tokens shorter than 3 characters or containing
/// anything but ASCII letters pass through unchanged.
pub fn porter_stem(token: &str) -> String {
    if token.len() <= 2 || !token.bytes().all(|b| b.is_ascii_lowercase()) {
        return token.to_string();
    }
    let mut word = token.as_bytes().to_vec();
    step1a(&mut word);
    step1b(&mut word);
    step1c(&mut word);
    step2(&mut word);
    step3(&mut word);
    step4(&mut word);
    step5a(&mut word);
    step5b(&mut word);
    String::from_utf8(word).expect("stemming preserves ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plural_forms() {
        assert_eq!(porter_stem("caresses"), "caress");
        assert_eq!(porter_stem("ponies"), "poni");
        assert_eq!(porter_stem("ties"), "ti");
        assert_eq!(porter_stem("cats"), "cat");
    }

    #[test]
    fn shared_root() {
        assert_eq!(porter_stem("stemming"), "stem");
        assert_eq!(porter_stem("stems"), "stem");
    }

    #[test]
    fn short_words_unchanged() {
        assert_eq!(porter_stem("a"), "a");
        assert_eq!(porter_stem("an"), "an");
        assert_eq!(porter_stem("is"), "is");
    }

    #[test]
    fn tokens_with_digits_pass_through() {
        assert_eq!(porter_stem("6months"), "6months");
        assert_eq!(porter_stem("42"), "42");
    }

    #[test]
    fn step_interactions() {
        assert_eq!(porter_stem("hopping"), "hop");
        assert_eq!(porter_stem("filing"), "file");
        assert_eq!(porter_stem("falling"), "fall");
        assert_eq!(porter_stem("happy"), "happi");
        assert_eq!(porter_stem("sky"), "sky");
        assert_eq!(porter_stem("controll"), "control");
        assert_eq!(porter_stem("roll"), "roll");
    }

    #[test]
    fn never_empty_for_nonempty_input() {
        for w in ["s", "ss", "sses", "es", "e", "ing", "ed"] {
            assert!(!porter_stem(w).is_empty(), "{w} stemmed to empty");
        }
    }
}
