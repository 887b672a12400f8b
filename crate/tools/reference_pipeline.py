#!/usr/bin/env python3
"""Straight-line reference implementation of the full pipeline.

Reads the bundled data files and the golden corpus, and writes the golden
manifest the Rust acceptance suite compares against. Deliberately written
without sharing any code with the Rust crate. Sums are explicit left folds
(Python's builtin sum() uses compensated summation for floats).
"""
import hashlib
import json
import math
import os
import string
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "crates", "core", "data")
GOLDEN = os.path.join(ROOT, "crates", "core", "tests", "golden")

PUNCT = set(string.punctuation)
NEGATIONS = {
    "not", "no", "never", "nt", "neither", "nor", "cannot", "cant", "dont", "doesnt",
    "didnt", "isnt", "arent", "wasnt", "werent", "wont", "wouldnt", "couldnt",
    "shouldnt", "hasnt", "havent", "hadnt", "aint", "mustnt", "neednt", "mightnt",
    "shant", "without", "nothing", "nobody", "none", "nowhere",
}
BOOST_UP = [
    "absolutely", "amazingly", "completely", "considerably", "decidedly", "deeply",
    "enormously", "entirely", "especially", "exceptionally", "extremely", "fabulously",
    "fully", "greatly", "highly", "hugely", "incredibly", "intensely", "majorly", "more",
    "most", "much", "particularly", "purely", "quite", "really", "remarkably", "so",
    "substantially", "thoroughly", "too", "totally", "tremendously", "truly", "uber",
    "unbelievably", "unusually", "utterly", "very",
]
BOOST_DOWN = [
    "almost", "barely", "bit", "hardly", "kinda", "less", "little", "marginally",
    "occasionally", "partly", "scarcely", "slightly", "somewhat", "sorta",
]
CONTRAST = "but"

NEG_FACTOR = -0.74
BOOST_INC = 0.293
CAPS_INC = 0.733
EXCL_INC = 0.292
MAX_EXCL = 4
BUT_DISCOUNT = 0.5
BUT_BOOST = 1.5
ALPHA = 15.0
NEG_WINDOW = 3
PATTERN_NEG = -0.5
PATTERN_WINDOW = 3
MIN_TOKENS = 3
BINS = 10
TOP_N = 30


def data_lines(name):
    with open(os.path.join(DATA, name), encoding="utf-8") as f:
        for raw in f:
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield line


def fsum_seq(xs):
    acc = 0.0
    for x in xs:
        acc = acc + x
    return acc


def clamp(x, lo, hi):
    if x < lo:
        return lo
    if x > hi:
        return hi
    return x


# ---- data ----
STOP = set(line.strip() for line in data_lines("stopwords.txt"))
LEMMA = {}
for line in data_lines("lemmas.tsv"):
    a, b = line.split("\t")
    LEMMA[a] = b
HEADS = set(LEMMA.values())
VAL = {}
for line in data_lines("valence.tsv"):
    w, v = line.split("\t")
    VAL[w] = float(v)
PAT = {}
for line in data_lines("pattern.tsv"):
    w, p, s, flag, k = line.split("\t")
    PAT[w] = (float(p), float(s), flag in ("1", "true"), float(k))
TAGS = {}
for line in data_lines("pos_tags.tsv"):
    w, t = line.split("\t")
    TAGS[w] = t
SYN = {}
for line in data_lines("synsets.tsv"):
    sid, pos, ps, ns, rank, lemmas = line.split("\t")
    for lem in lemmas.split(","):
        SYN.setdefault((lem, pos), []).append((int(rank), float(ps), float(ns)))
for k in SYN:
    SYN[k].sort(key=lambda e: e[0])


# ---- preprocessing ----
def normalize(text):
    t = text.lower()
    kept = []
    for w in t.split():
        if w.startswith("http://") or w.startswith("https://") or w.startswith("www."):
            continue
        kept.append(w)
    t = " ".join(kept)
    t = t.replace("#", "")
    t = "".join(c for c in t if c not in PUNCT)
    return " ".join(t.split())


def lemma_rule(t):
    if len(t) > 4 and t.endswith("ies"):
        return t[:-3] + "y"
    if t.endswith("sses"):
        return t[:-2]
    for suf in ("ches", "shes", "xes"):
        if t.endswith(suf) and len(t) > len(suf):
            return t[:-2]
    if t.endswith("s") and len(t) > 3 and not (t.endswith("ss") or t.endswith("us") or t.endswith("is")):
        return t[:-1]
    return t


def lemmatize(t):
    cur = t
    for _ in range(8):
        if cur in LEMMA:
            nxt = LEMMA[cur]
        elif cur in HEADS:
            nxt = cur
        else:
            nxt = lemma_rule(cur)
        if nxt == cur:
            break
        cur = nxt
    return cur


def preprocess(text):
    if text is None or text == "":
        return "null", []
    toks = normalize(text).split()
    toks = [t for t in toks if t not in STOP]
    toks = [lemmatize(t) for t in toks]
    toks = [t for t in toks if t not in STOP]
    if len(toks) < MIN_TOKENS:
        return "too_short", toks
    return None, toks


# ---- engines ----
def booster(tok):
    if tok in BOOST_UP:
        return BOOST_INC
    if tok in BOOST_DOWN:
        return -BOOST_INC
    return None


def is_modifier(tok):
    return tok in NEGATIONS or booster(tok) is not None or tok == CONTRAST


def is_upper(w):
    has_cased = any(c.isupper() or c.islower() for c in w)
    return has_cased and not any(c.islower() for c in w)


def valence_rule(tokens, raw=None):
    caps = set()
    excl = 0
    if raw is not None:
        words = ["".join(c for c in w if c not in PUNCT) for w in raw.split()]
        words = [w for w in words if len(w) > 1]
        upper = [w for w in words if is_upper(w)]
        if 0 < len(upper) < len(words):
            caps = set(w.lower() for w in upper)
        excl = raw.count("!")
    but_at = tokens.index(CONTRAST) if CONTRAST in tokens else None
    xs = []
    for i, tok in enumerate(tokens):
        if is_modifier(tok) or tok not in VAL or VAL[tok] == 0.0:
            xs.append(0.0)
            continue
        v = VAL[tok]
        if tok in caps:
            if v > 0:
                v = v + CAPS_INC
            else:
                v = v - CAPS_INC
        j = i - 1
        while j >= 0 and booster(tokens[j]) is not None:
            inc = booster(tokens[j])
            if v < 0:
                inc = -inc
            v = v + inc
            j -= 1
        lo = max(0, i - NEG_WINDOW)
        if any(t in NEGATIONS for t in tokens[lo:i]):
            v = v * NEG_FACTOR
        if but_at is not None:
            if i < but_at:
                v = v * BUT_DISCOUNT
            elif i > but_at:
                v = v * BUT_BOOST
        xs.append(v)
    s = fsum_seq(xs)
    emph = 0.0
    if excl > 0:
        emph = min(excl, MAX_EXCL) * EXCL_INC
    if s > 0:
        s = s + emph
    elif s < 0:
        s = s - emph
    compound = clamp(s / math.sqrt(s * s + ALPHA), -1.0, 1.0) + 0.0
    pos = 0.0
    neg = 0.0
    neu = 0.0
    for x in xs:
        if x > 0:
            pos = pos + (x + 1.0)
        elif x < 0:
            neg = neg + (x - 1.0)
        else:
            neu = neu + 1.0
    if emph > 0:
        if pos > abs(neg):
            pos = pos + emph
        elif pos < abs(neg):
            neg = neg - emph
    total = pos + abs(neg) + neu
    if total == 0.0:
        props = [0.0, 1.0, 0.0]
    else:
        props = [pos / total, neu / total, abs(neg) / total]
    return compound, props


def pattern_avg(tokens):
    ps = []
    ss = []
    for i, tok in enumerate(tokens):
        e = PAT.get(tok)
        if e is None or e[2]:
            continue
        p = e[0]
        if i > 0:
            prev = PAT.get(tokens[i - 1])
            if prev is not None and prev[2]:
                p = p * prev[3]
        lo = max(0, i - PATTERN_WINDOW)
        if any(t in NEGATIONS for t in tokens[lo:i]):
            p = p * PATTERN_NEG
        ps.append(p)
        ss.append(e[1])
    if not ps:
        return 0.0, 0.0
    pol = clamp(fsum_seq(ps) / len(ps), -1.0, 1.0) + 0.0
    sub = clamp(fsum_seq(ss) / len(ss), 0.0, 1.0) + 0.0
    return pol, sub


def tag(tok):
    if tok in TAGS:
        return TAGS[tok]
    if tok.endswith("ly"):
        return "adv"
    if tok.endswith("ing") or tok.endswith("ed"):
        return "verb"
    if tok.endswith("ous") or tok.endswith("ful") or tok.endswith("able"):
        return "adj"
    return "noun"


def synset_score(tokens, average=False):
    cs = []
    for tok in tokens:
        senses = SYN.get((tok, tag(tok)), [])
        if not senses:
            continue
        if len(senses) == 1 or not average:
            c = senses[0][1] - senses[0][2]
        else:
            num = 0.0
            den = 0.0
            for rank, p, n in senses:
                num = num + (p - n) / rank
                den = den + 1.0 / rank
            c = num / den
        cs.append(c)
    if not cs:
        return 0.0
    return clamp(fsum_seq(cs) / len(cs), -1.0, 1.0) + 0.0


# ---- labeling and analytics ----
def label(phi):
    if phi > 0:
        return "positive"
    if phi < 0:
        return "negative"
    return "neutral"


def qualifies(engine, tok, side):
    if engine == "valence_rule":
        if is_modifier(tok) or tok not in VAL:
            return False
        v = VAL[tok]
    elif engine == "pattern_avg":
        e = PAT.get(tok)
        if e is None or e[2]:
            return False
        v = e[0]
    else:
        senses = SYN.get((tok, tag(tok)), [])
        if not senses:
            return False
        v = senses[0][1] - senses[0][2]
    return v > 0 if side == "positive" else v < 0


def main():
    records = []
    with open(os.path.join(GOLDEN, "corpus.jsonl"), encoding="utf-8") as f:
        for line in f:
            if line.strip():
                records.append(json.loads(line))

    engines = ["valence_rule", "pattern_avg", "synset"]
    comments = []
    labels = {e: [] for e in engines}
    kept_docs = []
    subjectivities = []
    for rec in records:
        reason, toks = preprocess(rec.get("text"))
        entry = {"id": rec["id"], "tokens": toks, "dropped": reason}
        if reason is None:
            vc, vp = valence_rule(toks)
            nc, np_ = valence_rule(toks, rec["text"])
            pp, ps = pattern_avg(toks)
            sp = synset_score(toks)
            entry["scores"] = {
                "valence_rule": {"polarity": vc, "proportions": vp},
                "pattern_avg": {"polarity": pp, "subjectivity": ps},
                "synset": {"polarity": sp},
            }
            entry["engine_native_valence"] = {"polarity": nc, "proportions": np_}
            entry["synset_average_senses"] = synset_score(toks, average=True)
            entry["labels"] = {
                "valence_rule": label(vc),
                "pattern_avg": label(pp),
                "synset": label(sp),
            }
            for e in engines:
                labels[e].append(entry["labels"][e])
            kept_docs.append((toks, entry["labels"]))
            subjectivities.append(ps)
        comments.append(entry)

    distributions = {}
    for e in engines:
        counts = {"positive": 0, "neutral": 0, "negative": 0}
        for lab in labels[e]:
            counts[lab] += 1
        n = len(labels[e])
        props = {k: (counts[k] / n if n else 0.0) for k in counts}
        distributions[e] = {"counts": counts, "proportions": props}

    edges = [i / BINS for i in range(BINS + 1)]
    bins = [0] * BINS
    for s in subjectivities:
        for b in range(BINS):
            if s <= edges[b + 1]:
                bins[b] += 1
                break
    n = len(subjectivities)
    mean = fsum_seq(subjectivities) / n
    srt = sorted(subjectivities)
    if n % 2 == 1:
        median = srt[n // 2]
    else:
        median = (srt[n // 2 - 1] + srt[n // 2]) / 2.0
    histogram = {"bin_edges": edges, "counts": bins, "mean": mean, "median": median}

    rankings = {}
    for e in engines:
        for side in ("positive", "negative"):
            freq = {}
            for toks, labs in kept_docs:
                if labs[e] != side:
                    continue
                for t in toks:
                    if qualifies(e, t, side):
                        freq[t] = freq.get(t, 0) + 1
            ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))[:TOP_N]
            rankings[f"{e}_{side}"] = [[w, c] for w, c in ranked]

    manifest = {
        "corpus_size": len(records),
        "kept": len(kept_docs),
        "dropped": len(records) - len(kept_docs),
        "comments": comments,
        "distributions": distributions,
        "histogram": histogram,
        "rankings": rankings,
        "examples": {
            "good": valence_rule(["good"])[0],
            "not_good": valence_rule(["not", "good"])[0],
            "great_awful": list(pattern_avg(["great", "awful"])),
        },
    }
    with open(os.path.join(GOLDEN, "manifest.json"), "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=1, sort_keys=True, ensure_ascii=False)
        f.write("\n")


if __name__ == "__main__":
    main()
