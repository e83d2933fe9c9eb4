#!/usr/bin/env python3
"""Reference Porter (1980) stemmer used to generate the frozen
fixtures/porter/{voc,output}.txt pair. Deliberately independent of the Rust
implementation: straightforward rule tables, no shared code.

Usage: porter_oracle.py < words.txt > stems.txt   (one lowercase word per line)
"""
import sys


def is_consonant(word, i):
    c = word[i]
    if c in "aeiou":
        return False
    if c == "y":
        return i == 0 or not is_consonant(word, i - 1)
    return True


def measure(stem):
    # number of VC sequences in [C](VC)^m[V]
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        v = not is_consonant(stem, i)
        if not v and prev_vowel:
            m += 1
        prev_vowel = v
    return m


def has_vowel(stem):
    return any(not is_consonant(stem, i) for i in range(len(stem)))


def ends_double_consonant(word):
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and is_consonant(word, len(word) - 1)
    )


def ends_cvc(word):
    if len(word) < 3:
        return False
    i = len(word) - 1
    if not is_consonant(word, i) or is_consonant(word, i - 1) or not is_consonant(word, i - 2):
        return False
    return word[-1] not in "wxy"


def apply_rules(word, rules):
    """First rule whose suffix matches wins; its condition then decides
    whether the replacement happens. Either way, no further rule is tried."""
    for suffix, replacement, cond in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if cond(stem):
                return stem + replacement
            return word
    return word


def step1a(w):
    return apply_rules(
        w,
        [
            ("sses", "ss", lambda s: True),
            ("ies", "i", lambda s: True),
            ("ss", "ss", lambda s: False),
            ("s", "", lambda s: True),
        ],
    )


def step1b(w):
    if w.endswith("eed"):
        stem = w[:-3]
        return stem + "ee" if measure(stem) > 0 else w
    fired = False
    if w.endswith("ed"):
        stem = w[:-2]
        if has_vowel(stem):
            w, fired = stem, True
    elif w.endswith("ing"):
        stem = w[:-3]
        if has_vowel(stem):
            w, fired = stem, True
    if fired:
        if w.endswith(("at", "bl", "iz")):
            return w + "e"
        if ends_double_consonant(w) and w[-1] not in "lsz":
            return w[:-1]
        if measure(w) == 1 and ends_cvc(w):
            return w + "e"
    return w


def step1c(w):
    if w.endswith("y") and has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]

STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def step2(w):
    return apply_rules(w, [(s, r, lambda st: measure(st) > 0) for s, r in STEP2])


def step3(w):
    return apply_rules(w, [(s, r, lambda st: measure(st) > 0) for s, r in STEP3])


def step4(w):
    for suffix in STEP4:
        if w.endswith(suffix):
            stem = w[: len(w) - len(suffix)]
            if measure(stem) > 1:
                if suffix == "ion" and (not stem or stem[-1] not in "st"):
                    return w
                return stem
            return w
    return w


def step5a(w):
    if w.endswith("e"):
        stem = w[:-1]
        m = measure(stem)
        if m > 1 or (m == 1 and not ends_cvc(stem)):
            return stem
    return w


def step5b(w):
    if measure(w) > 1 and ends_double_consonant(w) and w.endswith("l"):
        return w[:-1]
    return w


def stem(word):
    if len(word) <= 2:
        return word
    for f in (step1a, step1b, step1c, step2, step3, step4, step5a, step5b):
        word = f(word)
    return word


def main():
    for line in sys.stdin:
        w = line.strip()
        if w:
            print(stem(w))


if __name__ == "__main__":
    main()
