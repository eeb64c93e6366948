#!/usr/bin/env python3
# Copyright 2026 The phontypo Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds data/phoible_sample.csv, a small PHOIBLE long-format sample.

Segment feature values come from the panphon IPA feature table
(`pip install panphon`), with the columns renamed to the PHOIBLE feature
names. The inventories are illustrative and were assembled for tests and
demos; they are not copies of PHOIBLE inventories.

Usage: make_phoible_sample.py [--table ipa_all.csv] [--out data/phoible_sample.csv]
"""

import argparse
import csv
import importlib.util
import itertools
import os
import sys
import unicodedata

# panphon column -> PHOIBLE column
FEATURE_MAP = [
    ("syl", "syllabic"),
    ("long", "long"),
    ("cons", "consonantal"),
    ("son", "sonorant"),
    ("cont", "continuant"),
    ("delrel", "delayedRelease"),
    ("nas", "nasal"),
    ("lat", "lateral"),
    ("lab", "labial"),
    ("round", "round"),
    ("cor", "coronal"),
    ("ant", "anterior"),
    ("distr", "distributed"),
    ("strid", "strident"),
    ("hi", "high"),
    ("lo", "low"),
    ("back", "back"),
    ("tense", "tense"),
    ("voi", "periodicGlottalSource"),
    ("sg", "spreadGlottis"),
    ("cg", "constrictedGlottis"),
    ("velaric", "clicks"),
]

VOWELS = set("i e ɛ a ɑ o ɔ u ɨ ə ɪ ʊ y aː iː uː eː oː".split())

# (InventoryID, LanguageName, ISO6393, Glottocode, Source, Family, segments)
INVENTORIES = [
    ("101", "Tamil", "tam", "tami1289", "fixture", "Dravidian",
     "p t ʈ k t͡ʃ m n ɳ ɲ ŋ s ʃ l ɭ r ʋ j i e a o u iː aː uː"),
    ("102", "Malayalam", "mal", "mala1464", "fixture", "Dravidian",
     "p b t d ʈ ɖ k ɡ t͡ʃ m n ɳ ɲ ŋ s ʂ ʃ h l ɭ r ʋ j i e a o u ə"),
    ("103", "Telugu", "tel", "telu1262", "fixture", "Dravidian",
     "p b t d ʈ ɖ k ɡ t͡ʃ d͡ʒ m n ɳ s ʂ ʃ h l ɭ r ʋ j i e a o u aː"),
    ("104", "Kannada", "kan", "nucl1305", "fixture", "Dravidian",
     "p b t d ʈ ɖ k ɡ t͡ʃ d͡ʒ m n ɳ ɲ ŋ s ʃ h l ɭ r ʋ j i e a o u"),
    ("201", "Bengali", "ben", "beng1280", "fixture", "Indo-Aryan",
     "p pʰ b b̤ t tʰ d d̤ ʈ ʈʰ ɖ ɖ̤ k kʰ ɡ ɡ̤ t͡ʃ d͡ʒ m n ŋ s ʃ h l r ɽ j i e ɛ a o ɔ u"),
    ("202", "Hindi", "hin", "hind1269", "fixture", "Indo-Aryan",
     "p pʰ b b̤ t tʰ d d̤ ʈ ʈʰ ɖ ɖ̤ k kʰ ɡ ɡ̤ t͡ʃ d͡ʒ m n ɳ ŋ f s z ʃ h ɦ l r ɽ ʋ j i ɪ e ɛ a ə o ɔ u ʊ"),
    ("203", "Marathi", "mar", "mara1378", "fixture", "Indo-Aryan",
     "p pʰ b b̤ t tʰ d d̤ ʈ ʈʰ ɖ ɖ̤ k kʰ ɡ ɡ̤ t͡ʃ d͡ʒ m n ɳ s ʃ ʂ h ɦ l ɭ r ʋ j i e a ə o u"),
    # Three Javanese inventories: the largest carries retroflex plosives,
    # the smallest omits them.
    ("380", "Javanese", "jav", "java1254", "upsid", "Malayo-Polynesian",
     "p b t d k ɡ ʔ t͡ʃ d͡ʒ m n ɲ ŋ s h l r w j i e a o u ə"),
    ("1675", "Javanese", "jav", "java1254", "gm", "Malayo-Polynesian",
     "p b t d ʈ ɖ k ɡ ʔ t͡ʃ d͡ʒ m n ɲ ŋ s h l r w j i e ɛ a o ɔ u ə ɪ ʊ"),
    ("9001", "Javanese", "jav", "java1254", "fixture", "Malayo-Polynesian",
     "p b t d ʈ ɖ k ɡ ʔ t͡ʃ d͡ʒ m n ɲ ŋ s h l r w j i e a o u ə ɛ"),
    ("301", "Sundanese", "sun", "sund1252", "fixture", "Malayo-Polynesian",
     "p b t d k ɡ ʔ t͡ʃ d͡ʒ m n ɲ ŋ s h l r w j i e a o u ə ɨ"),
    ("302", "Malay", "zlm", "mala1479", "fixture", "Malayo-Polynesian",
     "p b t d k ɡ ʔ t͡ʃ d͡ʒ m n ɲ ŋ s h l r w j f z ʃ x i e a o u ə"),
    ("303", "Balinese", "ban", "bali1278", "fixture", "Malayo-Polynesian",
     "p b t d k ɡ ʔ t͡ʃ d͡ʒ m n ɲ ŋ s h l r w j i e a o u ə"),
    ("304", "Madurese", "mad", "nucl1460", "fixture", "Malayo-Polynesian",
     "p pʰ b t tʰ d ʈ ʈʰ ɖ k kʰ ɡ ʔ t͡ʃ d͡ʒ m n ɲ ŋ s h l r w j i e a o u ə ɨ ɛ ɔ"),
    # Planted 12-segment inventory for induction tests.
    ("305", "Sasak", "sas", "sasa1249", "fixture", "Malayo-Polynesian",
     "p b t d k ɡ m n s l i a"),
    ("401", "Spanish", "spa", "stan1288", "upsid", "Romance",
     "p b t d k ɡ t͡ʃ m n ɲ f θ s x l ʎ r j w i e a o u"),
    ("402", "Spanish", "spa", "stan1288", "fixture", "Romance",
     "p b t d k ɡ t͡ʃ m n ɲ f s x l r j w i e a o u"),
]


def find_table():
    spec = importlib.util.find_spec("panphon")
    if spec is None or not spec.submodule_search_locations:
        sys.exit("panphon not installed; pass --table")
    return os.path.join(list(spec.submodule_search_locations)[0], "data",
                        "ipa_all.csv")


def load_table(path):
    with open(path, encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    table = {}
    for row in rows:
        table[unicodedata.normalize("NFD", row["ipa"])] = row
    return table


def agrees_on_subset(a, b):
    """True if b's specified features are a subset of a's and agree."""
    for x, y in zip(a, b):
        if y != "0" and x != y:
            return False
    return True


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--table", default=None)
    ap.add_argument("--out", default="data/phoible_sample.csv")
    args = ap.parse_args()
    table = load_table(args.table or find_table())

    vectors = {}
    for inv in INVENTORIES:
        for glyph in inv[6].split():
            g = unicodedata.normalize("NFD", glyph)
            if g not in table:
                sys.exit(f"glyph {glyph!r} missing from feature table")
            vectors[g] = [table[g][src] for src, _ in FEATURE_MAP]

    for (ga, va), (gb, vb) in itertools.permutations(vectors.items(), 2):
        if agrees_on_subset(va, vb):
            sys.exit(f"{gb} is indistinguishable inside {ga}")

    header = ["InventoryID", "Glottocode", "ISO6393", "LanguageName",
              "SpecificDialect", "GlyphID", "Phoneme", "Allophones",
              "Marginal", "SegmentClass", "Source", "Family"]
    header += [dst for _, dst in FEATURE_MAP]
    with open(args.out, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for inv_id, name, iso, glotto, source, family, segs in INVENTORIES:
            for glyph in segs.split():
                g = unicodedata.normalize("NFD", glyph)
                glyph_id = "+".join(f"{ord(c):04X}" for c in g)
                seg_class = "vowel" if glyph in VOWELS else "consonant"
                w.writerow([inv_id, glotto, iso, name, "NA", glyph_id, g, "NA",
                            "FALSE", seg_class, source, family] + vectors[g])

    neighbours = {"Javanese", "Sundanese", "Malay", "Balinese", "Madurese"}
    pool = set()
    for inv in INVENTORIES:
        if inv[1] in neighbours:
            pool.update(unicodedata.normalize("NFD", g) for g in inv[6].split())
    print(f"segments={len(vectors)} neighbour pool={len(pool)}")


if __name__ == "__main__":
    main()
