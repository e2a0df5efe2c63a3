import json
from pathlib import Path

import pytest

from morphvote.cli import main
from morphvote.corpus import read_corpus_file

DATA = Path(__file__).resolve().parent.parent / "data" / "synthetic"

CORPUS = ("evden\t[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=NONE][CASE=ABL]]\t[[CAT=VERB][ROOT=evde][SENSE=POS][TAM1=IMP][AGR=2SG]]\n"
          "sonra\t[[CAT=ADVERB][ROOT=sonra]]\t[[CAT=POSTP][ROOT=sonra][SUBCAT=ABL]]\n"
          "geldi\t[[CAT=VERB][ROOT=gel][SENSE=POS][TAM1=PAST][AGR=3SG]]\n"
          "\n"
          "taS\t[[CAT=ADJ][ROOT=taS]]\t[[CAT=NOUN][ROOT=taS][AGR=3SG][POSS=NONE][CASE=NOM]]\n")
GOLD = ("evden\t[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=NONE][CASE=ABL]]\n"
        "sonra\t[[CAT=POSTP][ROOT=sonra][SUBCAT=ABL]]\n"
        "geldi\t[[CAT=VERB][ROOT=gel][SENSE=POS][TAM1=PAST][AGR=3SG]]\n"
        "\n"
        "taS\t[[CAT=NOUN][ROOT=taS][AGR=3SG][POSS=NONE][CASE=NOM]]\n")
RULES = "[[case:abl],[cat:postp,subcat:abl]]\n[[cat:verb,tam1:imp]] ; VOTE=-10\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "c.txt").write_text(CORPUS, encoding="utf-8")
    (tmp_path / "g.txt").write_text(GOLD, encoding="utf-8")
    (tmp_path / "r.txt").write_text(RULES, encoding="utf-8")
    return tmp_path


def run(*argv):
    return main([str(a) for a in argv])


def test_disambiguate_argmax(files):
    out = files / "out.txt"
    assert run("disambiguate", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--m", "1.0",
               "--output", out) == 0
    sents = read_corpus_file(out)
    assert [len(t.parses) for t in sents[0]] == [1, 1, 1]
    assert sents[0][1].parses[0].get("cat") == "postp"
    # untouched tie stays ambiguous
    assert len(sents[1][0].parses) == 2


def test_disambiguate_stdout(files, capsys):
    assert run("disambiguate", "--rules", files / "r.txt", "--corpus", files / "c.txt") == 0
    assert capsys.readouterr().out.count("\n\n") == 2


def test_path_mode_is_unambiguous(files):
    out = files / "out.txt"
    assert run("disambiguate", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--mode", "path",
               "--output", out, "--lattice-dump", files / "lat.txt") == 0
    assert all(len(t.parses) == 1 for s in read_corpus_file(out) for t in s)
    lat = (files / "lat.txt").read_text().splitlines()
    assert lat[1] == "0\t1\tevden\t[[cat=verb][root=evde][sense=pos][tam1=imp][agr=2sg]]\t-10"


def test_bad_m_is_config_error(files, capsys):
    out = files / "out.txt"
    assert run("disambiguate", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--m", "1.5",
               "--output", out) == 2
    assert "m must lie" in capsys.readouterr().err
    assert not out.exists()


def test_missing_file(files):
    with pytest.raises(SystemExit) as info:
        run("disambiguate", "--rules", files / "nope.txt", "--corpus", files / "c.txt")
    assert info.value.code == 2


def test_malformed_corpus_no_partial_output(files, capsys):
    (files / "bad.txt").write_text("a\t[[CAT=NOUN]\n", encoding="utf-8")
    out = files / "out.txt"
    assert run("disambiguate", "--rules", files / "r.txt", "--corpus", files / "bad.txt", "--output", out) == 2
    assert "bad.txt:1" in capsys.readouterr().err
    assert not out.exists()


def test_trace_output(files):
    trace = files / "trace.jsonl"
    assert run("disambiguate", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--trace",
               "--trace-output", trace, "--output", files / "o.txt") == 0
    entries = [json.loads(x) for x in trace.read_text().splitlines()]
    assert {"sentence": 0, "rule": "r.txt:1", "start": 0, "matched": [[0], [1]], "vote": "3"} in entries


def test_explain_needs_trace(files, capsys):
    assert run("explain", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--sentence", 0) == 2
    assert "--trace" in capsys.readouterr().err


def test_explain(files, capsys):
    assert run("explain", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--sentence", 0, "--trace") == 0
    text = capsys.readouterr().out
    assert "rule r.txt:1 vote 3 at positions 0-1 credits parses [0]" in text
    assert "threshold=3" in text
    assert run("explain", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--sentence", 1, "--trace") == 0
    text = capsys.readouterr().out
    assert "no rule fired" in text and "all votes tied" in text


def test_explain_out_of_range(files, capsys):
    assert run("explain", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--sentence", 5, "--trace") == 2


def test_evaluate_report(files, capsys):
    report = files / "rep.jsonl"
    assert run("evaluate", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--gold", files / "g.txt",
               "--m-sweep", "1.0,0.5", "--report", report) == 0
    grid = capsys.readouterr().out
    assert grid.splitlines()[0].split()[-2:] == ["1.0", "0.5"]
    recs = [json.loads(x) for x in report.read_text().splitlines()]
    assert [(r["stage"], r["m"]) for r in recs] == [("V", "1"), ("V", "1/2")]
    assert recs[0]["recall"] == "1" and recs[0]["parses"] == 5


def test_evaluate_without_rules_scores_input(files, capsys):
    assert run("evaluate", "--corpus", files / "c.txt", "--gold", files / "g.txt") == 0
    assert "input" in capsys.readouterr().out


def test_evaluate_misaligned_gold(files, capsys):
    (files / "g2.txt").write_text(GOLD.split("\n\n")[0] + "\n", encoding="utf-8")
    assert run("evaluate", "--corpus", files / "c.txt", "--gold", files / "g2.txt") == 2


def test_distribution(files, capsys):
    (files / "d.txt").write_text(CORPUS + "unk\n", encoding="utf-8")
    assert run("distribution", "--corpus", files / "d.txt") == 0
    row = capsys.readouterr().out.splitlines()[1].split()
    assert row[:2] == ["d", "5"]
    assert row[2:] == ["20.00%", "20.00%", "60.00%", "0.00%", "0.00%", "0.00%"]


def test_root_and_context_flags(files, capsys):
    (files / "f.txt").write_text("ev\t10\nevde\t1\n", encoding="utf-8")
    assert run("disambiguate", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--root-stats",
               files / "f.txt", "--root-ratio", "0.5", "--context-stats", "--ctx-ratio", "3", "--ctx-min", "1",
               "--output", files / "o.txt") == 0
    assert run("disambiguate", "--rules", files / "r.txt", "--corpus", files / "c.txt", "--ctx-ratio", "1",
               "--context-stats") == 2


def test_workers_do_not_change_output(tmp_path):
    outs = []
    for workers in (1, 3):
        out = tmp_path / f"o{workers}.txt"
        assert run("disambiguate", "--rules", DATA / "rules.txt", "--weights", DATA / "weights.txt",
                   "--corpus", DATA / "corpus.txt", "--root-stats", DATA / "rootfreq.txt", "--context-stats",
                   "--workers", workers, "--output", out) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_output_is_subset_of_input(tmp_path):
    out = tmp_path / "o.txt"
    assert run("disambiguate", "--rules", DATA / "rules.txt", "--weights", DATA / "weights.txt",
               "--corpus", DATA / "corpus.txt", "--m", "0.8", "--output", out) == 0
    before, after = read_corpus_file(DATA / "corpus.txt"), read_corpus_file(out)
    assert len(before) == len(after)
    for s, t in zip(before, after):
        assert [x.surface for x in s] == [x.surface for x in t]
        assert all(set(b.parses) <= set(a.parses) for a, b in zip(s, t))
