#!/usr/bin/env python3
"""Generate the bundled synthetic Turkish-like corpus.

Sentences are strung together from small phrase templates, each token gets
its intended (gold) parse, and a toy "analyzer" adds the sort of competing
readings agglutinative morphology produces: default-inflection readings,
genitive vs 2sg possessive, prefix-sharing roots, derived vs lexicalized
forms and so on. Writes into ``data/synthetic/``:

    corpus.txt    ambiguous analyzed corpus
    gold.txt      one parse per token
    rules.txt     hand-written rulebase for the toy grammar
    weights.txt   weight config
    rootfreq.txt  root counts from a separately generated "previous" text

Usage: python scripts/make_synthetic.py [--out DIR] [--sentences N] [--seed S]
"""
from __future__ import annotations

import argparse
import random
from collections import Counter
from pathlib import Path

NOUNS = ["ev", "kitap", "okul", "masa", "kalem", "adam", "Sehir", "yol", "kapI",
         "araba", "koy", "gUn", "iS", "el", "bahCe", "Cocuk"]
# root whose surface is a prefix of (or extends) the noun's inflected form
CONFUSER = {"koy": "koyun", "kalem": "kale", "okul": "ok", "el": "elma", "yol": "yolcu",
            "masa": "masal", "adam": "ada", "kapI": "kap", "gUn": "gUne", "ev": "evre"}
ADJS = ["koyu", "gUzel", "bUyUk", "kUCUk", "yeni", "eski", "uzun", "temiz"]
VERBS = ["gel", "git", "yap", "al", "ver", "oku", "yaz", "uygula", "gOr", "bak", "koy", "sev"]
TENSES = ["past", "pres", "narr", "fut"]
POSTP_ABL = ["sonra", "Once", "dolayI", "beri"]
POSTP_DAT = ["kadar", "gOre", "doGru"]
ADVERBS = ["Cok", "hIzlI", "bugUn", "yine", "hemen"]
DETS = ["bir", "bu", "Su", "her"]


def fs(*pairs) -> str:
    return "[" + "".join(f"[{k}={v}]" for k, v in pairs) + "]"


def noun(root, case="nom", poss="none", agr="3sg"):
    return fs(("cat", "noun"), ("root", root), ("agr", agr), ("poss", poss), ("case", case))


def adj(root):
    return fs(("cat", "adj"), ("root", root))


def adj_as_noun(root, case="nom", poss="2sg"):
    return fs(("cat", "adj"), ("root", root), ("conv", "noun=none"), ("agr", "3sg"), ("poss", poss), ("case", case))


def verb(root, tam1, agr="3sg", sense="pos"):
    return fs(("cat", "verb"), ("root", root), ("sense", sense), ("tam1", tam1), ("agr", agr))


def infinitive(root, case, sense="pos"):
    return fs(("cat", "verb"), ("root", root), ("sense", sense), ("conv", "noun=ma"), ("type", "infinitive"),
              ("agr", "3sg"), ("poss", "none"), ("case", case))


def madan(root):
    return fs(("cat", "verb"), ("root", root), ("sense", "pos"), ("conv", "adverb=madan"))


def participle(root):
    return fs(("cat", "verb"), ("root", root), ("sense", "pos"), ("tam1", "narr"), ("conv", "adj=mis"))


def pron(root, agr, case):
    return fs(("cat", "pron"), ("root", root), ("agr", agr), ("poss", "none"), ("case", case))


def postp(root, subcat):
    return fs(("cat", "postp"), ("root", root), ("subcat", subcat))


def adverb(root):
    return fs(("cat", "adverb"), ("root", root))


def det(root):
    return fs(("cat", "det"), ("root", root))


def num(root):
    return fs(("cat", "num"), ("root", root))


PUNCT = fs(("cat", "punct"), ("root", "."))


class Generator:
    def __init__(self, rng: random.Random):
        self.rng = rng

    def pick(self, xs):
        return self.rng.choice(xs)

    def chance(self, p):
        return self.rng.random() < p

    def noun_root(self):
        # confuser roots turn up as real words now and then
        if self.chance(0.06):
            return self.pick(sorted(CONFUSER.values()))
        return self.pick(NOUNS)

    # -- phrase templates; each yields (surface, gold, kind, info) -----------

    def np_gen_poss(self):
        case = self.pick(["nom", "acc", "dat", "loc"])
        if self.chance(0.3):
            head = self.noun_root()
            return [(f"sen+in", pron("sen", "2sg", "gen"), "pron", None),
                    (f"{head}+in", noun(head, case, "2sg"), "noun", head)]
        owner, head = self.noun_root(), self.noun_root()
        return [(f"{owner}+in", noun(owner, "gen"), "noun", owner),
                (f"{head}+i", noun(head, case, "3sg"), "noun", head)]

    def np_abl_postp(self):
        if self.chance(0.3):
            v = self.pick(VERBS)
            first = (f"{v}+ma+dan", infinitive(v, "abl"), "inf", v)
        else:
            r = self.noun_root()
            first = (f"{r}+dan", noun(r, "abl"), "noun", r)
        p = self.pick(POSTP_ABL)
        return [first, (p, postp(p, "abl"), "postp", p)]

    def np_dat_postp(self):
        r = self.noun_root()
        p = self.pick(POSTP_DAT)
        return [(f"{r}+a", noun(r, "dat"), "noun", r), (p, postp(p, "dat"), "postp", p)]

    def adj_noun(self):
        a, r = self.pick(ADJS), self.noun_root()
        case = self.pick(["nom", "acc", "dat", "nom"])
        out = [(a, adj(a), "adj", a), (f"{r}+{case}", noun(r, case), "noun", r)]
        if self.chance(0.35):
            d = self.pick(DETS)
            out.insert(0, (d, det(d), "det", d))
        return out

    def participle_noun(self):
        v, r = self.pick(VERBS), self.noun_root()
        return [(f"{v}+mIS", participle(v), "part", v), (r, noun(r, self.pick(["nom", "acc"])), "noun", r)]

    def object_np(self):
        r = self.noun_root()
        case = self.pick(["acc", "dat", "loc", "abl"])
        return [(f"{r}+{case}", noun(r, case), "noun", r)]

    def adverbial(self):
        if self.chance(0.4):
            v = self.pick(VERBS)
            return [(f"{v}+madan", madan(v), "madan", v)]
        a = self.pick(ADVERBS)
        return [(a, adverb(a), "adverb", a)]

    def infinitive_subject(self):
        v = self.pick(VERBS)
        return [(f"{v}+ma", infinitive(v, "nom"), "inf", v)]

    def sentence(self):
        chunks = [self.np_gen_poss, self.np_abl_postp, self.np_dat_postp, self.adj_noun,
                  self.participle_noun, self.object_np, self.adverbial, self.infinitive_subject]
        toks = []
        for _ in range(self.rng.randint(1, 3)):
            toks.extend(self.pick(chunks)())
        v = self.pick(VERBS)
        t = self.pick(TENSES)
        toks.append((f"{v}+{t}", verb(v, t), "verb", v))
        toks.append((".", PUNCT, "punct", None))
        return toks

    # -- toy analyzer: competing readings for a gold parse -------------------

    def readings(self, gold, kind, root):
        g = gold
        alts = []
        if kind == "noun":
            if "[case=gen]" in g:
                if self.chance(0.8):
                    alts.append(noun(root, "nom", "2sg"))
                if root in CONFUSER and self.chance(0.4):
                    alts.append(noun(CONFUSER[root], "nom"))
            elif "[poss=2sg]" in g:
                if self.chance(0.8):
                    alts.append(noun(root, "gen"))
                if self.chance(0.3):
                    alts.append(adj_as_noun(self.pick(ADJS)))
            elif "[poss=3sg]" in g and "[case=nom]" in g:
                if self.chance(0.7):
                    alts.append(noun(root, "acc"))
            elif "[case=acc]" in g:
                if self.chance(0.7):
                    alts.append(noun(root, "nom", "3sg"))
                if root in CONFUSER and self.chance(0.4):
                    alts.append(noun(CONFUSER[root], "nom"))
            elif "[case=nom]" in g:
                if self.chance(0.35):
                    alts.append(adj(root))
                if self.chance(0.25):
                    alts.append(verb(root, "imp", "2sg"))
                if root in CONFUSER and self.chance(0.5):
                    alts.append(noun(CONFUSER[root], "nom"))
            elif "[case=abl]" in g:
                if root in CONFUSER and self.chance(0.5):
                    alts.append(noun(CONFUSER[root], "abl"))
            elif "[case=dat]" in g:
                if self.chance(0.2):
                    alts.append(verb(root, "opt", "3sg"))
            if self.chance(0.05):
                alts.extend([noun(root, "ins"), noun(root, "nom", "1sg"), noun(root, "equ")])
        elif kind == "inf":
            if "[case=abl]" in g:
                if self.chance(0.9):
                    alts.append(madan(root))
            else:
                if self.chance(0.6):
                    alts.append(noun(root + "ma", "nom"))
                if self.chance(0.6):
                    alts.append(verb(root, "imp", "2sg", "neg"))
        elif kind == "madan":
            if self.chance(0.8):
                alts.append(infinitive(root, "abl"))
        elif kind == "part":
            if self.chance(0.8):
                alts.append(verb(root, "narr"))
        elif kind == "adj":
            if self.chance(0.4):
                alts.append(noun(root, "nom"))
            if self.chance(0.2):
                alts.append(adverb(root))
        elif kind == "verb":
            if "[tam1=narr]" in g and self.chance(0.5):
                alts.append(participle(root))
            if self.chance(0.15):
                alts.append(noun(root, "nom"))
            if self.chance(0.1):
                alts.append(verb(root, "imp", "2pl"))
        elif kind == "postp":
            if self.chance(0.5):
                alts.append(adverb(root))
            if self.chance(0.2):
                alts.append(noun(root, "nom"))
        elif kind == "adverb":
            if self.chance(0.3):
                alts.append(adj(root))
        elif kind == "det":
            if root == "bir" and self.chance(0.8):
                alts.append(num(root))
        parses = [gold]
        for a in alts:
            if a not in parses:
                parses.append(a)
        self.rng.shuffle(parses)
        return parses


RULES = """\
# Synthetic rulebase for the bundled toy corpus.
# Nominal phrase structure
[[case:abl],[cat:postp,subcat:abl]]
[[case:dat],[cat:postp,subcat:dat]]
[[agr:2sg,case:gen],[cat:noun,poss:2sg]]
[[agr:3sg,case:gen],[cat:noun,poss:3sg]]
[[case:gen],[cat:noun,poss:3sg],[cat:verb]]
[[cat:adj],[cat:noun,stem:no]]
[[cat:adj,stem:[tam1:narr]],[cat:noun,stem:no]]
[[cat:det],[cat:adj],[cat:noun]]
[[cat:det],[cat:adj,stem:no]]
[[cat:num],[cat:noun]]
[[cat:adj],[cat:adj]]
[[cat:noun,stem:[cat:verb],case:abl],[cat:postp,subcat:abl]]
[[cat:adverb,stem:[cat:verb]],[cat:verb]]
[[cat:postp],[cat:verb]]
[[cat:postp,subcat:abl],[cat:adj]]
# Arguments before the verb
[[cat:noun,case:acc],[cat:verb]]
[[cat:noun,case:dat],[cat:verb]]
[[cat:noun,case:loc],[cat:verb]]
[[cat:noun,case:abl],[cat:verb]]
[[cat:noun,poss:3sg,case:acc],[cat:verb]]
[[cat:noun,poss:2sg,case:nom],[cat:verb]]
[[cat:noun,case:nom,poss:none],[cat:verb]]
[[cat:adverb,stem:no],[cat:verb]]
[[cat:verb,tam1:narr],[cat:noun]]
# Sentence-final finite verbs
[[cat:verb,tam1:past],[cat:punct]]
[[cat:verb,tam1:pres],[cat:punct]]
[[cat:verb,tam1:narr],[cat:punct]]
[[cat:verb,tam1:fut],[cat:punct]]
[[cat:noun,stem:no],[cat:punct]] ; VOTE=-2
# Context-free preferences
[[cat:verb,tam1:imp]] ; VOTE=-10
[[cat:verb,tam1:opt]] ; VOTE=-3
[[cat:noun,case:ins]] ; VOTE=-1
[[cat:noun,stem:[cat:adj]]] ; VOTE=-1
[[case:equ]] ; VOTE=-2
[[cat:noun,stem:[sense:pos],type:infinitive]] ; VOTE=1
"""

WEIGHTS = """\
# Distinguished values and features (placeholder tuning, see README)
value gen 4
value abl 2
feature subcat 2
stem_scale 2
"""


def generate(n, seed):
    gen = Generator(random.Random(seed))
    corpus, gold = [], []
    for _ in range(n):
        sent = gen.sentence()
        corpus.append([(surface, gen.readings(g, kind, root)) for surface, g, kind, root in sent])
        gold.append([(surface, [g]) for surface, g, _, _ in sent])
    return corpus, gold


def root_of(parse: str):
    # innermost root: the first ROOT group in analyzer form
    start = parse.find("[root=")
    return parse[start + 6:parse.index("]", start)] if start >= 0 else None


def fmt(sents):
    return "".join("".join(s + "\t" + "\t".join(ps) + "\n" for s, ps in sent) + "\n" for sent in sents)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "synthetic")
    ap.add_argument("--sentences", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1997)
    args = ap.parse_args(argv)

    corpus, gold = generate(args.sentences, args.seed)
    _, previous = generate(4 * args.sentences, args.seed + 1)
    freqs = Counter(root_of(ps[0]) for sent in previous for _, ps in sent)
    freqs.pop(".", None)

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "corpus.txt").write_text(fmt(corpus), encoding="utf-8")
    (args.out / "gold.txt").write_text(fmt(gold), encoding="utf-8")
    (args.out / "rules.txt").write_text(RULES, encoding="utf-8")
    (args.out / "weights.txt").write_text(WEIGHTS, encoding="utf-8")
    (args.out / "rootfreq.txt").write_text("".join(f"{r}\t{c}\n" for r, c in sorted(freqs.items())),
                                           encoding="utf-8")
    print(f"wrote {len(corpus)} sentences to {args.out}")


if __name__ == "__main__":
    main()
