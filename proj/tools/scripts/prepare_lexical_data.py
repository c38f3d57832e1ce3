#!/usr/bin/env python3
"""Regenerate the lexical data files under data/ from the Pattern 3 sources.

The Pattern distribution (BSD licensed) ships Brill's tagger lexicon, the
XTAG verb conjugation table and a frequency-ranked English word list. This
script converts them into the plain-text formats read by the C++ code:

    data/nlp/lexicon.txt            word TAG            (most likely tag)
    data/nlp/lemma_exceptions.txt   form CLASS lemma    (inflected forms)
    data/nlp/base_forms.txt         word CLASS          (known base forms)
    data/wordlists/common_words.txt word                (ranked, most frequent first)

Usage:
    pip download --no-deps pattern3==3.0.0
    tar xzf pattern3-3.0.0.tar.gz
    python3 tools/scripts/prepare_lexical_data.py pattern3-3.0.0/pattern3/text/en data
"""

import os
import re
import sys

PENN = set(
    "CC CD DT EX FW IN JJ JJR JJS LS MD NN NNS NNP NNPS PDT POS PRP PRP$ RB RBR "
    "RBS RP SYM TO UH VB VBD VBG VBN VBP VBZ WDT WP WP$ WRB".split()
)
ALPHA = re.compile(r"^[A-Za-z][A-Za-z'-]*$")
LOWER_ALPHA = re.compile(r"^[a-z]+$")

# Irregular noun plurals that suffix rules get wrong.
NOUN_IRREGULARS = """
men man
women woman
children child
people person
feet foot
teeth tooth
geese goose
mice mouse
lice louse
oxen ox
data data
media medium
criteria criterion
phenomena phenomenon
analyses analysis
bases basis
crises crisis
diagnoses diagnosis
hypotheses hypothesis
indices index
matrices matrix
vertices vertex
appendices appendix
theses thesis
axes axis
series series
species species
news news
status status
access access
process process
address address
class class
business business
means means
lives life
knives knife
wives wife
leaves leaf
halves half
shelves shelf
selves self
wolves wolf
loaves loaf
thieves thief
calves calf
quizzes quiz
buses bus
statuses status
viruses virus
campuses campus
bonuses bonus
corpora corpus
schemata schema
formulae formula
alumni alumnus
stimuli stimulus
syllabi syllabus
radii radius
""".split()

ADJ_IRREGULARS = """
better good
best good
worse bad
worst bad
further far
furthest far
farther far
farthest far
more many
most many
less little
least little
elder old
eldest old
""".split()


def read_rows(path):
    with open(path, encoding="utf-8", errors="replace") as fh:
        for line in fh:
            if line.startswith(";;;") or not line.strip():
                continue
            yield line.rstrip("\n")


def main(src, out):
    os.makedirs(os.path.join(out, "nlp"), exist_ok=True)
    os.makedirs(os.path.join(out, "wordlists"), exist_ok=True)

    lexicon = {}
    for row in read_rows(os.path.join(src, "en-lexicon.txt")):
        parts = row.split()
        if len(parts) < 2:
            continue
        word, tag = parts[0], parts[1].split("|")[0]
        if tag not in PENN or not ALPHA.match(word):
            continue
        lexicon.setdefault(word, tag)

    with open(os.path.join(out, "nlp", "lexicon.txt"), "w", encoding="utf-8") as fh:
        fh.write("# Most likely Penn Treebank tag per word.\n")
        fh.write("# Derived from Brill's tagger lexicon as distributed with Pattern (BSD).\n")
        for word in sorted(lexicon):
            fh.write(f"{word} {lexicon[word]}\n")

    exceptions = {}
    verbs = set()
    for row in read_rows(os.path.join(src, "en-verbs.txt")):
        cells = row.split(",")
        inf = cells[0].strip().lower()
        if not LOWER_ALPHA.match(inf):
            continue
        verbs.add(inf)
        for idx in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11):
            if idx >= len(cells):
                continue
            form = cells[idx].strip().lower()
            if form and form != inf and LOWER_ALPHA.match(form):
                exceptions.setdefault((form, "verb"), inf)

    for form, lemma in zip(NOUN_IRREGULARS[0::2], NOUN_IRREGULARS[1::2]):
        exceptions[(form, "noun")] = lemma
    for form, lemma in zip(ADJ_IRREGULARS[0::2], ADJ_IRREGULARS[1::2]):
        exceptions[(form, "adj")] = lemma

    with open(os.path.join(out, "nlp", "lemma_exceptions.txt"), "w", encoding="utf-8") as fh:
        fh.write("# form class lemma\n")
        fh.write("# Verb forms from the XTAG morphology table (University of Pennsylvania),\n")
        fh.write("# noun and adjective irregulars curated by hand.\n")
        for (form, cls) in sorted(exceptions):
            fh.write(f"{form} {cls} {exceptions[(form, cls)]}\n")

    base = set()
    for word, tag in lexicon.items():
        if not LOWER_ALPHA.match(word):
            continue
        if tag == "NN":
            base.add((word, "noun"))
        elif tag == "JJ":
            base.add((word, "adj"))
        elif tag == "VB":
            base.add((word, "verb"))
    for v in verbs:
        base.add((v, "verb"))
    for (form, cls), lemma in exceptions.items():
        base.add((lemma, cls))

    with open(os.path.join(out, "nlp", "base_forms.txt"), "w", encoding="utf-8") as fh:
        fh.write("# word class -- known uninflected forms used to validate suffix rules\n")
        for word, cls in sorted(base):
            fh.write(f"{word} {cls}\n")

    ranked = []
    seen = set()
    for row in read_rows(os.path.join(src, "en-frequency.txt")):
        word = row.split()[0].lower()
        if LOWER_ALPHA.match(word) and len(word) > 1 and word not in seen:
            seen.add(word)
            ranked.append(word)
    with open(os.path.join(out, "wordlists", "common_words.txt"), "w", encoding="utf-8") as fh:
        fh.write("# English words ranked by corpus frequency, most frequent first.\n")
        fh.write("# Derived from the frequency list distributed with Pattern (BSD).\n")
        for word in ranked[:5000]:
            fh.write(word + "\n")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    main(sys.argv[1], sys.argv[2])
