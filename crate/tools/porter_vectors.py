#!/usr/bin/env python3
"""Freeze Porter stemmer test vectors using NLTK's original-algorithm mode.

Vocabulary: every word in the bundled data files plus the suffix examples from
the original algorithm description. Output: TSV `word<TAB>stem`.
"""
import os
import re
import sys

from nltk.stem.porter import PorterStemmer

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "crates", "core", "data")
OUT = os.path.join(ROOT, "crates", "core", "tests", "golden", "porter_vectors.tsv")

CLASSIC = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing conflated
troubled sized hopping tanned falling hissing fizzed failing filing happy sky
relational conditional rational valenci hesitanci digitizer conformabli radicalli
differentli vileli analogousli vietnamization predication operator feudalism
decisiveness hopefulness callousness formaliti sensitiviti sensibiliti triplicate
formative formalize electriciti electrical hopeful goodness revival allowance
inference airliner gyroscopic adjustable defensible irritant replacement adjustment
dependent adoption homologou communism activate angulariti homologous effective
bowdlerize probate rate cease controll roll generalizations oscillators energies
syzygy toy trouble oats trees ivy troubles private oaten orrery yelling yyyy enjoy
"""

def main():
    words = set(CLASSIC.split())
    for name in os.listdir(DATA):
        with open(os.path.join(DATA, name), encoding="utf-8") as f:
            for line in f:
                if line.startswith("#"):
                    continue
                for w in re.findall(r"[a-z]+", line.lower()):
                    words.add(w)
    stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
    with open(OUT, "w", encoding="utf-8") as f:
        f.write("# word\tstem (NLTK PorterStemmer, ORIGINAL_ALGORITHM mode)\n")
        for w in sorted(words):
            f.write(f"{w}\t{stemmer.stem(w)}\n")
    print(len(words), file=sys.stderr)

if __name__ == "__main__":
    main()
