"""Regenerate the shipped lexicon files under data/.

Requires: textstat, py-readability-metrics, wordfreq, nltk (dev-only).
"""
import importlib.resources as res
import re
import sys
from pathlib import Path

from nltk.stem.porter import PorterStemmer
from wordfreq import top_n_list, zipf_frequency

OUT = Path(__file__).resolve().parent.parent / "data"
WORD = re.compile(r"^[a-z]+(?:['-][a-z]+)*$")


def dale_chall():
    text = (res.files("textstat") / "resources/en/easy_words.txt").read_text()
    return sorted({w.strip().lower().rstrip(".") for w in text.splitlines() if w.strip()})


def spache(dale):
    stems = (res.files("readability") / "data/spache_easy_porterstem.txt").read_text().split()
    stemmer = PorterStemmer()
    pool = set(dale) | {w for w in top_n_list("en", 30000) if WORD.match(w)}
    by_stem = {}
    for w in pool:
        by_stem.setdefault(stemmer.stem(w), []).append(w)
    out, missing = set(), []
    for s in stems:
        s = s.lower()
        if "\\" in s:
            # contractions are stored with a backslash for the apostrophe
            s = s.replace("\\", "'")
            out.add(s + "s" if s.endswith("'") else s)
            continue
        cands = by_stem.get(s) or ([s] if WORD.match(s) else None)
        if not cands:
            missing.append(s)
            continue
        # most frequent surface form; shortest breaks ties
        out.add(max(cands, key=lambda w: (zipf_frequency(w, "en"), -len(w), w)))
    if missing:
        print(f"spache: {len(missing)} stems without a surface form: {missing}", file=sys.stderr)
    return sorted(out)


def top1000():
    out = []
    for w in top_n_list("en", 2000):
        if WORD.match(w) and w not in out:
            out.append(w)
        if len(out) == 1000:
            break
    return sorted(out)


def write(name, header, words):
    body = "".join(w + "\n" for w in words)
    (OUT / name).write_text(f"# {header}\n# {len(words)} entries, one lowercase word per line.\n{body}")


if __name__ == "__main__":
    dale = dale_chall()
    write("dale_chall.txt", "Dale-Chall list of words familiar to fourth-grade readers.", dale)
    write("spache.txt", "Spache easy-word list (revised).", spache(dale))
    write("top1000.txt", "The 1000 most frequent English words.", top1000())
