#!/usr/bin/env python3
"""Brute-force LIX oracle.

Independent reference implementation of the tokenization, sentence
segmentation and LIX rules documented in core/include/lceval/textmetrics.hpp.
Kept deliberately separate from the C++ code path: plain character scanning,
no shared tables, Python's own Unicode classification.

Usage:
    lix_oracle.py FILE [FILE...]        one JSON object per file, keyed by stem
    lix_oracle.py --self-test           run the built-in examples
"""

import json
import sys
import unicodedata
from pathlib import Path

TERMINALS = {".", "!", "?"}
CLOSERS = {'"', "'", "”", "’", "»", ")", "]", "}"}
JOINERS = {"-", "'", "’"}


def is_letter(ch):
    return ch.isalpha()


def is_word_char(ch):
    return ch.isalpha() or ch.isdigit()


def tokenize(text):
    """Returns a list of (form, start, end) with end exclusive, offsets in code points."""
    cps = list(text)
    tokens = []
    i = 0
    n = len(cps)
    while i < n:
        if cps[i].isspace():
            i += 1
            continue
        if is_word_char(cps[i]):
            j = i + 1
            while j < n:
                if is_word_char(cps[j]):
                    j += 1
                elif (
                    cps[j] in JOINERS
                    and j + 1 < n
                    and is_word_char(cps[j + 1])
                ):
                    j += 2
                else:
                    break
            tokens.append(("".join(cps[i:j]), i, j))
            i = j
        else:
            tokens.append((cps[i], i, i + 1))
            i += 1
    return tokens


def segment(text, abbreviations=()):
    """Returns a list of (start, end) sentence spans, end exclusive."""
    cps = list(text)
    n = len(cps)
    spans = []
    start = None
    i = 0
    while i < n:
        ch = cps[i]
        if start is None:
            if ch.isspace():
                i += 1
                continue
            start = i
        if ch in TERMINALS:
            j = i
            while j + 1 < n and cps[j + 1] in TERMINALS:
                j += 1
            run = cps[i : j + 1]
            dots_only = all(c == "." for c in run)
            ellipsis = dots_only and len(run) >= 2
            abbrev = False
            if len(run) == 1 and ch == ".":
                k = i - 1
                word = []
                while k >= 0 and is_letter(cps[k]):
                    word.append(cps[k])
                    k -= 1
                if "".join(reversed(word)) in abbreviations:
                    abbrev = True
            if not ellipsis and not abbrev:
                k = j + 1
                while k < n and cps[k] in CLOSERS:
                    k += 1
                at_end = k >= n
                follows_ws = not at_end and cps[k].isspace()
                follows_upper = not at_end and cps[k].isupper()
                if at_end or follows_ws or follows_upper:
                    spans.append((start, k))
                    start = None
                    i = k
                    continue
            i = j + 1
            continue
        if ch == "…":  # one-char ellipsis never ends a sentence
            i += 1
            continue
        i += 1
    if start is not None:
        end = n
        while end > start and cps[end - 1].isspace():
            end -= 1
        spans.append((start, end))
    return spans


def lix(text, numerals_are_words=True, count_mode="letters"):
    tokens = tokenize(text)
    words = []
    for form, _, _ in tokens:
        has_letter = any(is_letter(c) for c in form)
        has_digit = any(c.isdigit() for c in form)
        if has_letter or (numerals_are_words and has_digit):
            words.append((form, has_letter))
    a = len(words)
    if a == 0:
        raise ValueError("no words")
    b = max(1, len(segment(text)))
    c_letters = 0
    c_chars = 0
    for form, has_letter in words:
        if not has_letter:
            continue  # pure numerals are never long words
        letters = sum(1 for ch in form if is_letter(ch))
        if letters > 6:
            c_letters += 1
        if len(form) > 6:
            c_chars += 1
    c = c_letters if count_mode == "letters" else c_chars
    return {
        "A": a,
        "B": b,
        "C": c,
        "score": a / b + 100.0 * c / a,
        "long_words_by_letters": c_letters,
        "long_words_by_chars": c_chars,
        "tokens": len(tokens),
    }


def self_test():
    t = tokenize("Han sover.")
    assert [f for f, _, _ in t] == ["Han", "sover", "."], t
    t = tokenize("2-åring")
    assert [f for f, _, _ in t] == ["2-åring"], t
    t = tokenize("FN bildades den 24 oktober år 1945.")
    assert len(t) == 8, t
    assert len(segment("Jag är här.")) == 1
    two = (
        "FN bildades den 24 oktober år 1945. Deras föregångare var "
        "Nationernas förbund, men dom lyckades inte så bra."
    )
    assert len(segment(two)) == 2
    assert len(segment("Hur kommer detta sig?SituationMånga av de...")) == 2
    r = lix("Jag är här.")
    assert (r["A"], r["B"], r["C"]) == (3, 1, 0) and abs(r["score"] - 3.0) < 1e-12
    r = lix("Fantastiskt.")
    assert (r["A"], r["B"], r["C"]) == (1, 1, 1) and abs(r["score"] - 101.0) < 1e-12
    r = lix("FN bildades den 24 oktober år 1945.")
    assert (r["A"], r["B"], r["C"]) == (7, 1, 2), r
    assert abs(r["score"] - (7 + 200.0 / 7)) < 1e-12
    print("lix_oracle self-test OK")


def main(argv):
    if len(argv) >= 2 and argv[1] == "--self-test":
        self_test()
        return 0
    out = {}
    for arg in argv[1:]:
        p = Path(arg)
        text = p.read_text(encoding="utf-8")
        key = p.name.split(".")[0]
        out[key] = lix(text)
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
