#!/usr/bin/env python3
"""Derive data/polarity_lexicon.csv from TextBlob's pattern lexicon.

Each word form's polarity is the mean over its senses. Only forms that can
survive text normalization (single lowercase tokens) are kept.

    python3 scripts/derive_polarity_lexicon.py > data/polarity_lexicon.csv
"""
import os
import re
import sys
import xml.etree.ElementTree as ET
from collections import defaultdict

import textblob

TOKEN = re.compile(r"[a-z0-9]+('[a-z0-9]+)*")


def main():
    path = os.path.join(os.path.dirname(textblob.__file__), "en", "en-sentiment.xml")
    senses = defaultdict(list)
    for word in ET.parse(path).getroot().iter("word"):
        senses[word.get("form").lower()].append(float(word.get("polarity")))
    out = sys.stdout
    out.write("word,polarity\n")
    for form in sorted(senses):
        if not TOKEN.fullmatch(form):
            continue
        values = senses[form]
        mean = round(sum(values) / len(values), 4)
        out.write(f"{form},{mean:g}\n")


if __name__ == "__main__":
    main()
