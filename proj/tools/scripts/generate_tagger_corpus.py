#!/usr/bin/env python3
"""Generate the POS-tagger training corpus (data/nlp/tagger_train.tsv).

Sentences are produced by a stochastic grammar of requirements-style English,
so every token's Penn Treebank tag is known by construction. Open-class
vocabulary is drawn from the bundled lexicon (data/nlp/lexicon.txt), the
lemma exception table and a hand-written list of requirements terminology.

Output format: one token per line as "word<TAB>TAG", blank line between
sentences. The corpus is deterministic for a given --seed.

Usage:
    python3 tools/scripts/generate_tagger_corpus.py data --sentences 20000
"""

import argparse
import collections
import os
import random
import re

DOMAIN_NOUNS = """
system user data report interface module database server network request
response record file message account password administrator operator customer
application service component function feature requirement document event log
transaction order payment product inventory level movement sale history
screen window menu button field form page display query result error warning
alarm sensor device controller signal command input output value parameter
configuration setting option profile role permission access security policy
audit traffic connection session protocol encryption key certificate token
backup storage memory disk processor performance availability reliability
stability accuracy efficiency latency throughput capacity load time period
interval schedule date deadline status state mode version update release patch
installation deployment environment platform browser client terminal printer
scanner camera vehicle aircraft train station track signal route map location
position speed temperature pressure level threshold limit range unit measure
patient doctor nurse hospital appointment prescription treatment insurance claim
student teacher course grade exam library book loan member fee invoice bill
price discount tax currency bank transfer balance statement email notification
alert reminder calendar task project team manager employee department company
supplier vendor contract license agreement standard regulation law rule
procedure workflow process step stage phase cycle loop job batch queue thread
task search filter sort index category tag label comment review rating score
image video audio content text character string number format template style
layout theme language translation help manual guide tutorial training support
maintenance repair failure fault recovery restart shutdown startup login logout
registration authentication authorization verification validation test case
scenario simulation model analysis design architecture specification diagram
interface communication link port channel packet frame buffer cache stream
connectivity scalability usability portability interoperability integrity
confidentiality maintainability compatibility traceability durability
responsiveness robustness correctness completeness consistency redundancy
compliance resilience privacy safety visibility
""".split()

TIME_NOUNS = "day week month year hour minute night shift cycle session quarter".split()

DOMAIN_VERBS = """
generate provide support allow enable display store retrieve update delete
create modify edit save load send receive transmit process validate verify
check monitor record log track notify alert inform report calculate compute
compare sort filter search select print export import upload download install
configure maintain manage control operate handle detect prevent protect encrypt
decrypt authenticate authorize approve reject cancel confirm submit request
schedule assign allocate release restore recover backup archive migrate convert
format render show hide lock unlock open close start stop pause resume restart
connect disconnect register enter exit accept comply audit measure estimate
respond require ensure include contain use implement integrate access provide
""".split()

PROPER = """
Python Java Linux Windows Oracle SQL Android iOS Ethernet Bluetooth Excel
NASA ESA IEEE ISO Europe Canada Ottawa London Microsoft Google Apple Amazon
Unix Mac Internet Web HTTP XML JSON PDF GPS UML Smith John Mary Alice Bob
""".split()


DETERMINERS_SG = "the a an this that each every any another no".split()
DETERMINERS_PL = "the these those all some any no both".split()
PREPOSITIONS = "in on at for from to of with by within without into during after before under over between through about against across per via".split()
ADVERBS = """automatically manually immediately periodically always never only
also quickly securely correctly successfully directly continuously remotely
daily currently already still again soon regularly properly efficiently
""".split()
SUBORD = "if when while after before unless until because although once".split()
PRONOUN_SUBJ = ["it", "they", "we", "he", "she", "you", "I"]
PRONOUN_OBJ = ["it", "them", "us", "him", "her", "you", "me"]
POSSESSIVE = ["its", "their", "our", "his", "her", "your", "my"]
MODALS = "shall must should will may can could would might".split()
NUMBERS = ["1", "2", "3", "5", "10", "15", "20", "30", "60", "100", "256", "1000",
           "2.5", "0.5", "99.9", "24", "one", "two", "three", "five", "ten", "2023"]
UNITS_PL = "seconds minutes hours days users requests records transactions bytes megabytes milliseconds".split()
WH_DET = ["which", "that"]
ACRONYMS = "CSV PDF XML JSON HTTP SQL GPS API USB UI GUI PIN SMS LAN VPN".split()

PUNCT_TAGS = {",": "COMMA", ".": "PERIOD", "!": "PERIOD", "?": "PERIOD",
              ";": "COLON", ":": "COLON", "(": "LRB", ")": "RRB", "\"": "QUOTE"}


def load_lexicon(data):
    lex = {}
    with open(os.path.join(data, "nlp", "lexicon.txt"), encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                continue
            word, tag = line.split()
            lex[word] = tag
    return lex


def load_common(data, n):
    out = []
    with open(os.path.join(data, "wordlists", "common_words.txt"), encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                out.append(line.strip())
    return out[:n]


def pluralize(noun):
    if re.search(r"(s|x|z|ch|sh)$", noun):
        return noun + "es"
    if re.search(r"[^aeiou]y$", noun):
        return noun[:-1] + "ies"
    return noun + "s"


def third_person(verb):
    if verb in ("be",):
        return "is"
    if verb == "have":
        return "has"
    if verb in ("do", "go"):
        return verb + "es"
    return pluralize(verb)


def gerund(verb):
    if verb.endswith("ie"):
        return verb[:-2] + "ying"
    if verb.endswith("e") and not verb.endswith("ee") and len(verb) > 2:
        return verb[:-1] + "ing"
    return verb + "ing"


def past(verb):
    if verb.endswith("e"):
        return verb + "d"
    if re.search(r"[^aeiou]y$", verb):
        return verb[:-1] + "ied"
    return verb + "ed"


class Vocab:
    def __init__(self, data):
        lex = load_lexicon(data)
        common = load_common(data, 4000)
        conj = self._load_conjugations(data)
        self.nouns = sorted({w for w in common if lex.get(w) == "NN" and len(w) > 2}
                            | set(DOMAIN_NOUNS))
        self.plural = {}
        for n in self.nouns:
            p = pluralize(n)
            if n in ("data", "series", "news", "status", "access", "software", "hardware",
                     "information", "equipment", "traffic", "security", "performance"):
                continue
            if lex.get(p) == "NNS" or n in DOMAIN_NOUNS:
                self.plural[n] = p
        self.adjectives = sorted({w for w in common if lex.get(w) == "JJ" and len(w) > 2})
        self.adverbs = sorted({w for w in common if lex.get(w) == "RB" and w.endswith("ly")}
                              | set(ADVERBS))
        # Noun/verb homographs ("work", "report") are included on purpose: the
        # tagger has to learn to separate them from context.
        verbs = sorted({w for w in common if lex.get(w) in ("VB", "VBP")}
                       | {w for w in common[:2500] if lex.get(w) == "NN" and w in conj}
                       | set(DOMAIN_VERBS))
        self.verbs = []
        self.conj = {}
        for v in verbs:
            if v in ("be", "have", "do"):
                continue
            c = conj.get(v)
            if c is None:
                continue
            self.conj[v] = c
            self.verbs.append(v)
        self.transitive = self.verbs
        self.homographs = [v for v in self.verbs if lex.get(v) == "NN"]
        self.domain_nouns = DOMAIN_NOUNS
        self.domain_verbs = [v for v in DOMAIN_VERBS if v in self.conj]

    @staticmethod
    def _load_conjugations(data):
        path = os.path.join(data, "nlp", "lemma_exceptions.txt")
        by_lemma = collections.defaultdict(set)
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.startswith("#"):
                    continue
                form, cls, lemma = line.split()
                if cls == "verb":
                    by_lemma[lemma].add(form)
        out = {}
        for lemma in sorted(by_lemma):
            forms = by_lemma[lemma]
            vbz = third_person(lemma)
            if vbz not in forms:
                continue
            vbg = gerund(lemma) if gerund(lemma) in forms else None
            if vbg is None:
                ing = sorted(f for f in forms if f.endswith("ing"))
                if len(ing) != 1:
                    continue
                vbg = ing[0]
            others = sorted(f for f in forms if f not in (vbz, vbg))
            if len(others) == 1:
                vbd = vbn = others[0]
            elif len(others) == 2:
                ends_n = [f for f in others if f.endswith("n")]
                if len(ends_n) != 1:
                    continue
                vbn = ends_n[0]
                vbd = [f for f in others if f != vbn][0]
            else:
                continue
            out[lemma] = {"vbz": vbz, "vbg": vbg, "vbd": vbd, "vbn": vbn}
        return out


class Grammar:
    def __init__(self, vocab, rng):
        self.v = vocab
        self.r = rng

    def pick(self, seq):
        return seq[self.r.randrange(len(seq))]

    def noun(self, domain_bias=0.6):
        if self.r.random() < domain_bias:
            return self.pick(self.v.domain_nouns)
        return self.pick(self.v.nouns)

    def verb(self, domain_bias=0.6):
        if self.r.random() < domain_bias:
            return self.pick(self.v.domain_verbs)
        return self.pick(self.v.verbs)

    def adj_phrase(self):
        out = []
        if self.r.random() < 0.3:
            if self.r.random() < 0.15:
                out.append((self.pick(self.v.adverbs), "RB"))
            out.append((self.pick(self.v.adjectives), "JJ"))
        return out

    def nominal(self, plural=False):
        toks = self.adj_phrase()
        if self.r.random() < 0.05:
            toks.append((self.pick(ACRONYMS), "NNP"))
        if self.r.random() < 0.35:
            toks.append((self.noun(), "NN"))
            if self.r.random() < 0.15:
                toks.append((self.noun(), "NN"))
        head = self.noun()
        if plural and head in self.v.plural:
            toks.append((self.v.plural[head], "NNS"))
        else:
            toks.append((head, "NN"))
        return toks

    def np(self, plural=None, allow_pp=True, subject=False, depth=0):
        r = self.r.random()
        if plural is None:
            plural = self.r.random() < 0.35
        if r < 0.05:
            toks = [(self.pick(PROPER), "NNP")]
            if self.r.random() < 0.3:
                toks.append((self.noun(), "NN"))
            return toks
        if r < 0.09:
            if subject:
                return [(self.pick(PRONOUN_SUBJ), "PRP")]
            return [(self.pick(PRONOUN_OBJ), "PRP")]
        if r < 0.13:
            toks = [(self.pick(NUMBERS), "CD"), (self.pick(UNITS_PL), "NNS")]
            return toks
        toks = []
        if r < 0.16:
            toks.append((self.pick(POSSESSIVE), "PRP$"))
        elif r < 0.20:
            toks += [("the", "DT"), (self.noun(), "NN"), ("'s", "POS")]
        elif plural:
            if self.r.random() < 0.7:
                toks.append((self.pick(DETERMINERS_PL), "DT"))
        else:
            d = self.pick(DETERMINERS_SG) if self.r.random() < 0.85 else None
            if d:
                toks.append((d, "DT"))
        toks += self.nominal(plural)
        if allow_pp and depth < 2 and self.r.random() < 0.3:
            toks += self.pp(depth + 1)
        if self.r.random() < 0.05:
            toks += [("(", "LRB"), (self.pick(PROPER), "NNP"), (")", "RRB")]
        return toks

    def pp(self, depth=0):
        prep = self.pick(PREPOSITIONS)
        tag = "TO" if prep == "to" else "IN"
        return [(prep, tag)] + self.np(allow_pp=True, depth=depth)

    def np_list(self):
        items = [self.np(allow_pp=False) for _ in range(self.r.randint(2, 4))]
        toks = []
        for i, it in enumerate(items):
            if i > 0:
                if i == len(items) - 1:
                    if len(items) > 2:
                        toks.append((",", "COMMA"))
                    toks.append((self.pick(["and", "or"]), "CC"))
                else:
                    toks.append((",", "COMMA"))
            toks += it
        return toks

    def obj(self):
        r = self.r.random()
        if r < 0.15:
            return self.np_list()
        return self.np()

    def vp_base(self):
        v = self.verb()
        toks = []
        if self.r.random() < 0.12:
            toks.append((self.pick(self.v.adverbs), "RB"))
        toks.append((v, "VB"))
        toks += self.obj()
        if self.r.random() < 0.4:
            toks += self.pp()
        if self.r.random() < 0.1:
            toks += [("to", "TO"), (self.verb(), "VB")] + self.np()
        if self.r.random() < 0.08:
            # "every week", "per hour"
            if self.r.random() < 0.75:
                toks += [(self.pick(["every", "each"]), "DT"), (self.pick(TIME_NOUNS), "NN")]
            else:
                toks += [("per", "IN"), (self.pick(TIME_NOUNS), "NN")]
        return toks

    def subject(self):
        plural = self.r.random() < 0.3
        toks = self.np(plural=plural, subject=True)
        plural = toks[-1][1] in ("NNS", "NNPS") or toks[-1][0] in ("they", "we", "you", "I")
        return toks, plural

    def present(self, v, plural):
        return (v, "VBP") if plural else (self.v.conj[v]["vbz"], "VBZ")

    def be(self, plural, tense="pres"):
        if tense == "past":
            return ("were", "VBD") if plural else ("was", "VBD")
        return ("are", "VBP") if plural else ("is", "VBZ")

    def sentence(self):
        kind = self.r.random()
        subj, plural = self.subject()
        toks = []
        extra = self.r.random()
        if extra < 0.18:
            # Intransitive present tense: "The system works."
            v = self.pick(self.v.homographs) if self.r.random() < 0.5 else self.verb()
            toks = subj + [self.present(v, plural)]
            if self.r.random() < 0.3:
                toks.append((self.pick(self.v.adverbs), "RB"))
            elif self.r.random() < 0.3:
                toks += self.pp()
            kind = None
        elif extra < 0.21:
            neg = self.pick([[("ca", "MD")], [("wo", "MD")],
                             [("does" if not plural else "do", "VBZ" if not plural else "VBP")]])
            toks = subj + neg + [("n't", "RB")] + self.vp_base()
            kind = None
        if kind is None:
            pass
        elif kind < 0.30:
            toks = subj + [(self.pick(MODALS), "MD")]
            if self.r.random() < 0.1:
                toks.append(("not", "RB"))
            toks += self.vp_base()
        elif kind < 0.42:
            v = self.verb()
            toks = subj + [(self.pick(MODALS), "MD"), ("be", "VB")]
            if self.r.random() < 0.1:
                toks.append((self.pick(self.v.adverbs), "RB"))
            toks.append((self.v.conj[v]["vbn"], "VBN"))
            if self.r.random() < 0.5:
                toks += self.pp()
            if self.r.random() < 0.2:
                toks += [("by", "IN")] + self.np()
        elif kind < 0.55:
            v = self.verb()
            toks = subj + [self.present(v, plural)]
            if self.r.random() < 0.85:
                toks += self.obj()
            if self.r.random() < 0.35:
                toks += self.pp()
        elif kind < 0.63:
            v = self.verb()
            toks = subj + [(self.v.conj[v]["vbd"], "VBD")]
            if self.r.random() < 0.6:
                toks += self.obj()
            if self.r.random() < 0.3:
                toks += self.pp()
        elif kind < 0.70:
            toks = subj + [self.be(plural, self.pick(["pres", "past"]))]
            r = self.r.random()
            if r < 0.4:
                toks += self.adj_phrase() or [(self.pick(self.v.adjectives), "JJ")]
            elif r < 0.7:
                v = self.verb()
                toks.append((self.v.conj[v]["vbn"], "VBN"))
                toks += self.pp()
            else:
                v = self.verb()
                toks.append((self.v.conj[v]["vbg"], "VBG"))
                toks += self.obj()
        elif kind < 0.77:
            sub, splural = self.subject()
            v = self.verb()
            clause = [(self.pick(SUBORD), "IN")] + sub + [self.present(v, splural)]
            if self.r.random() < 0.5:
                clause += self.obj()
            main = subj + [(self.pick(MODALS), "MD")] + self.vp_base()
            toks = clause + [(",", "COMMA")] + main
        elif kind < 0.82:
            toks = subj + [(self.pick(MODALS), "MD"), ("be", "VB"), ("able", "JJ"), ("to", "TO")]
            toks += self.vp_base()
        elif kind < 0.86:
            toks = subj + [(self.pick(MODALS), "MD"), (self.pick(["allow", "enable", "require"]), "VB")]
            toks += self.np() + [("to", "TO")] + self.vp_base()
        elif kind < 0.89:
            v = self.verb()
            toks = [(self.v.conj[v]["vbg"], "VBG")] + self.np()
            toks += [self.be(False)] + [(self.pick(self.v.adjectives), "JJ")]
        elif kind < 0.91:
            toks = [("there", "EX"), (self.pick(MODALS), "MD"), ("be", "VB")] + self.np() + self.pp()
        elif kind < 0.95:
            v = self.verb()
            v2 = self.verb()
            toks = subj + [(self.pick(MODALS), "MD"), (v, "VB")] + self.np(allow_pp=False)
            toks += [(self.pick(WH_DET), "WDT"), self.present(v2, False)] + self.np()
        elif kind < 0.97:
            v = self.verb()
            toks = subj + [(self.pick(MODALS), "MD"), ("have", "VB"), (self.v.conj[v]["vbn"], "VBN")] + self.np()
        else:
            # headings like "Data export"; plural heads would mimic "The system works."
            toks = self.nominal(False)
            if self.r.random() < 0.5:
                toks += self.pp()
        if self.r.random() < 0.03:
            toks = [(self.pick(["However", "Additionally", "Optionally", "Finally"]), "RB"),
                    (",", "COMMA")] + toks
        end = "." if self.r.random() < 0.92 else self.pick([";", ":", "!"])
        toks.append((end, PUNCT_TAGS[end]))
        first, tag = toks[0]
        if tag not in ("NNP", "NNPS") and first != "I":
            toks[0] = (first[0].upper() + first[1:], tag)
        return toks


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("data")
    ap.add_argument("--sentences", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=20230425)
    ap.add_argument("--out", help="output path (default: <data>/nlp/tagger_train.tsv)")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    vocab = Vocab(args.data)
    g = Grammar(vocab, rng)
    out = args.out or os.path.join(args.data, "nlp", "tagger_train.tsv")
    with open(out, "w", encoding="utf-8") as fh:
        for _ in range(args.sentences):
            for word, tag in g.sentence():
                fh.write(f"{word}\t{tag}\n")
            fh.write("\n")


if __name__ == "__main__":
    main()
