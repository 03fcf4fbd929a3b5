#!/usr/bin/env python3
"""Straight-line reference computation for the fixture corpus.

Re-derives token statistics, the eight readability scores, the consensus
grade and the default-profile display schedule for every fixtures/text/*.txt
file and writes the result next to it as <name>.expected.json.

Only the word lists under data/ are shared with the Rust crate.
Colors are interpolated with exact fractions.

usage: python3 fixtures/oracle.py [--check]
"""

import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
TEXT_DIR = ROOT / "fixtures" / "text"
DATA = ROOT / "data"

ABBREV = {"mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "e.g", "i.e", "fig", "al"}
TERMINATORS = ".!?"
CLOSERS = "\"')]}»”’"
OPENERS = "\"'([{«“‘"
JOINERS = "'’-‐‑"
HYPHENS = "-‐‑"
VOWELS = set("aeiouàáâäèéêëìíîïòóôöùúûü")


def read_list(name):
    words = set()
    for line in (DATA / name).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return words


def read_exceptions():
    table = {}
    for line in (DATA / "syllable_exceptions.tsv").read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, count = line.split("\t")
        table[word.strip().lower()] = int(count)
    return table


DALE = read_list("dale_chall.txt")
SPACHE = read_list("spache.txt")
EXCEPTIONS = read_exceptions()


# ---- tokens ---------------------------------------------------------------

def lex(text):
    """Returns a list of [kind, text] pairs."""
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        start = i
        if c.isspace():
            while i < n and text[i].isspace():
                i += 1
            kind = "ws"
        elif c.isalnum():
            i += 1
            while i < n:
                if text[i].isalnum():
                    i += 1
                    continue
                if i + 1 < n and text[i] in JOINERS and text[i - 1].isalpha() and text[i + 1].isalpha():
                    i += 2
                    continue
                if i + 1 < n and text[i] in ",." and text[i - 1].isdigit() and text[i + 1].isdigit():
                    i += 2
                    continue
                break
            piece = text[start:i]
            kind = "word" if any(ch.isalpha() for ch in piece) else "num"
        else:
            i += 1
            kind = "punct"
        out.append([kind, text[start:i]])
    return out


def abbreviation_before(text, end):
    j = end
    while j > 0 and (text[j - 1].isalpha() or text[j - 1] == "."):
        j -= 1
    word = text[j:end].lstrip(".").lower()
    return word in ABBREV


def sentences(text, toks):
    """Attaches sentence index and sentence-final flag to each token."""
    offsets = []
    pos = 0
    for _, t in toks:
        offsets.append(pos)
        pos += len(t)
    final = [False] * len(toks)
    brk = [False] * len(toks)
    for k, (kind, t) in enumerate(toks):
        if kind != "punct" or t not in TERMINATORS:
            continue
        if abbreviation_before(text, offsets[k]):
            continue
        last = k
        while last + 1 < len(toks) and toks[last + 1][0] == "punct" and toks[last + 1][1] in CLOSERS:
            last += 1
        ends = False
        if last + 1 == len(toks):
            ends = True
        elif toks[last + 1][0] == "ws":
            j = last + 2
            while j < len(toks) and toks[j][0] == "punct" and toks[j][1] in OPENERS:
                j += 1
            if j == len(toks):
                ends = True
            elif toks[j][0] == "num":
                ends = True
            elif toks[j][0] == "word" and toks[j][1][0].isupper():
                ends = True
        if ends:
            final[k] = True
            brk[last] = True
    idx = []
    cur = 0
    pending = False
    for k, (kind, _) in enumerate(toks):
        if kind != "ws" and pending:
            cur += 1
            pending = False
        idx.append(cur)
        if brk[k]:
            pending = True
    return idx, final


# ---- words ----------------------------------------------------------------

def heuristic(w):
    def vocalic(k):
        return w[k] in VOWELS or (w[k] == "y" and k > 0)

    groups = 0
    prev = False
    for k in range(len(w)):
        v = vocalic(k)
        if v and not prev:
            groups += 1
        prev = v
    if len(w) >= 2 and w[-1] == "e" and not vocalic(len(w) - 2):
        if not (w[-2] == "l" and len(w) >= 3 and not vocalic(len(w) - 3)):
            groups -= 1
    return max(groups, 1)


def syllables(word):
    total = 0
    parts = [word]
    for h in HYPHENS:
        parts = [q for p in parts for q in p.split(h)]
    for part in parts:
        letters = "".join(ch for ch in part if ch.isalpha()).lower()
        if not letters:
            continue
        if letters in EXCEPTIONS:
            total += EXCEPTIONS[letters]
        elif letters.rstrip("s") and letters.rstrip("s") in EXCEPTIONS:
            total += EXCEPTIONS[letters.rstrip("s")]
        else:
            total += heuristic(letters)
    return total


def normalize(word):
    w = word.lower().replace("’", "'")
    a = 0
    b = len(w)
    while a < b and not w[a].isalnum():
        a += 1
    while b > a and not w[b - 1].isalnum():
        b -= 1
    return w[a:b]


def cons(ch):
    return "a" <= ch <= "z" and ch not in "aeiou"


def familiar(word, words):
    if not any(ch.isalpha() for ch in word):
        return False
    if word in words:
        return True
    tries = []
    if word.endswith("'s") and len(word) - 2 >= 2:
        tries.append(word[:-2])
    if word.endswith("ies") and len(word) - 3 >= 2:
        tries.append(word[:-3] + "y")
    if word.endswith("s") and len(word) - 1 >= 2 and word[-2] not in "s'":
        tries.append(word[:-1])
    if word.endswith("es") and len(word) - 2 >= 2:
        tries.append(word[:-2])
    for suf in ("ed", "ing"):
        if not word.endswith(suf):
            continue
        stem = word[: -len(suf)]
        if len(stem) < 2:
            continue
        cvc = len(stem) >= 3 and cons(stem[-3]) and stem[-2] in "aeiou" and cons(stem[-1]) and stem[-1] not in "wxy"
        if cvc:
            tries += [stem + "e", stem]
        else:
            tries += [stem, stem + "e"]
        if stem[-1] == stem[-2] and cons(stem[-1]):
            tries.append(stem[:-1])
    return any(t in words for t in tries)


def fog_complex(word, first_in_sentence):
    if any(h in word for h in HYPHENS):
        return False
    if not first_in_sentence and word[0].isupper():
        return False
    w = word.lower()
    for suf in ("ing", "es", "ed"):
        if w.endswith(suf):
            if any(ch.isalpha() for ch in w[: -len(suf)]):
                w = w[: -len(suf)]
            break
    return syllables(w) >= 3


# ---- scores ---------------------------------------------------------------

def clamp(g):
    return min(max(g, 0.0), 22.0)


def fre_band(e):
    for lo, g in ((90, 5.0), (80, 6.0), (70, 7.0), (60, 8.5), (50, 11.0), (30, 14.0)):
        if e >= lo:
            return g
    return 17.0


def dc_band(s):
    for hi, g in ((5, 4.0), (6, 5.5), (7, 7.5), (8, 9.5), (9, 11.5), (10, 14.0)):
        if s < hi:
            return g
    return 16.0


def hexcolor(rgb):
    return "#%02x%02x%02x" % rgb


def lerp(a, b, k, n):
    if n == 0:
        return a
    out = []
    for x, y in zip(a, b):
        v = Fraction(x) + Fraction(y - x) * Fraction(k, n)
        out.append(math.floor(v + Fraction(1, 2)))
    return tuple(out)


def process(text):
    toks = lex(text)
    sidx, sfinal = sentences(text, toks)
    n_sent = max([sidx[k] + 1 for k in range(len(toks)) if toks[k][0] != "ws"], default=0)

    word_positions = [k for k in range(len(toks)) if toks[k][0] in ("word", "num")]
    chars = letters = syl = poly = complex_ = difficult = spache_unknown = 0
    per_word = []
    seen_sentences = set()
    for k in word_positions:
        kind, t = toks[k]
        first = sidx[k] not in seen_sentences
        seen_sentences.add(sidx[k])
        if kind == "num":
            s = max(sum(1 for ch in t if ch.isdigit()), 1)
        else:
            s = syllables(t)
        per_word.append(s)
        syl += s
        chars += sum(1 for ch in t if not ch.isspace())
        if s >= 3:
            poly += 1
        if kind == "word":
            letters += sum(1 for ch in t if ch.isalpha())
            if fog_complex(t, first):
                complex_ += 1
        nw = normalize(t)
        if not familiar(nw, DALE):
            difficult += 1
        if not familiar(nw, SPACHE):
            spache_unknown += 1

    W = len(word_positions)
    S = n_sent
    frac = difficult / W
    sp_frac = spache_unknown / W

    ari = 4.71 * (chars / W) + 0.5 * (W / S) - 21.43
    fre = 206.835 - 1.015 * (W / S) - 84.6 * (syl / W)
    fkg = 0.39 * (W / S) + 11.8 * (syl / W) - 15.59
    fog = 0.4 * (W / S + 100.0 * (complex_ / W))
    smog = 1.0430 * math.sqrt(poly * 30.0 / S) + 3.1291
    cli = 0.0588 * (100.0 * letters / W) - 0.296 * (100.0 * S / W) - 15.8
    dc = 0.1579 * (100.0 * frac) + 0.0496 * (W / S)
    if frac > 0.05:
        dc += 3.6365
    spache = 0.121 * (W / S) + 0.082 * (100.0 * sp_frac) + 0.659

    scores = {
        "ari": {"raw": ari, "grade": clamp(ari), "reliable": True},
        "flesch_reading_ease": {"raw": fre, "grade": fre_band(fre), "reliable": True},
        "flesch_kincaid_grade": {"raw": fkg, "grade": clamp(fkg), "reliable": True},
        "gunning_fog": {"raw": fog, "grade": clamp(fog), "reliable": True},
        "smog": {"raw": smog, "grade": clamp(smog), "reliable": S >= 30},
        "coleman_liau": {"raw": cli, "grade": clamp(cli), "reliable": True},
        "dale_chall": {"raw": dc, "grade": dc_band(dc), "reliable": True},
        "spache": {"raw": spache, "grade": clamp(spache), "reliable": True},
    }
    grades = sorted(v["grade"] for key, v in scores.items() if key != "flesch_reading_ease")
    consensus = grades[len(grades) // 2]
    age = consensus + 5.0

    # default profile: 300 wpm, no age, x1.5 unfamiliar, length and pauses on
    base = 60000.0 / 300.0
    lengths = [len(toks[k][1]) for k in word_positions]
    lines = []
    start = 0
    used = 0
    for j, ln in enumerate(lengths):
        if j > start and used + 1 + ln > 55:
            lines.append((start, j))
            start = j
            used = ln
        elif j == start:
            used = ln
        else:
            used += 1 + ln
    if start < len(lengths):
        lines.append((start, len(lengths)))
    A = (0x00, 0x42, 0x9D)
    B = (0xD1, 0x49, 0x5B)
    colors = []
    forward = True
    for a, b in lines:
        frm, to = (A, B) if forward else (B, A)
        for k in range(b - a):
            colors.append(hexcolor(lerp(frm, to, k, b - a - 1)))
        if b - a > 1:
            forward = not forward

    entries = []
    total = 0.0
    for ordinal, k in enumerate(word_positions):
        kind, t = toks[k]
        n = len(t)
        d = base
        if n > 8:
            d *= min(1 + 0.1 * (n - 8), 2.0)
        j = k + 1
        ends = clause = False
        while j < len(toks) and toks[j][0] in ("ws", "punct"):
            if toks[j][0] == "punct":
                if sfinal[j]:
                    ends = True
                if toks[j][1] in ",;:":
                    clause = True
            j += 1
        if ends:
            d *= 2.0
        if clause:
            d *= 1.5
        unfamiliar = kind == "num" or not familiar(normalize(t), DALE)
        if unfamiliar:
            d *= 1.5
        orp = 0 if n == 1 else 1 if n <= 5 else 2 if n <= 9 else 3 if n <= 13 else 4
        entries.append({"i": k, "text": t, "ms": d, "orp": orp, "unfamiliar": unfamiliar, "color": colors[ordinal]})
        total += d

    return {
        "statistics": {
            "char_count": chars,
            "letter_count": letters,
            "word_count": W,
            "sentence_count": S,
            "syllable_count": syl,
            "polysyllable_count": poly,
            "complex_word_count": complex_,
            "difficult_word_count": difficult,
            "per_word_syllables": per_word,
        },
        "report": {
            "scores": scores,
            "consensus_grade": consensus,
            "estimated_age": age,
            "difficult_word_fraction": frac,
        },
        "spache_unfamiliar_fraction": sp_frac,
        "document_id": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "schedule": {"version": 1, "effective_wpm": 300.0, "total_ms": total, "entries": entries},
    }


def main():
    check = "--check" in sys.argv[1:]
    stale = []
    for path in sorted(TEXT_DIR.glob("*.txt")):
        result = process(path.read_text(encoding="utf-8"))
        body = json.dumps(result, indent=1, ensure_ascii=False) + "\n"
        out = path.with_suffix(".expected.json")
        if check:
            if not out.exists() or out.read_text(encoding="utf-8") != body:
                stale.append(out.name)
        else:
            out.write_text(body, encoding="utf-8")
            print(out.relative_to(ROOT))
    if stale:
        sys.exit("stale: " + ", ".join(stale))


if __name__ == "__main__":
    main()
