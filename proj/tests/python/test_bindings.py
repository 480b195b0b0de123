import os
import pathlib

import pytest

import cctt

ROOT = pathlib.Path(os.environ.get("CCTT_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
CORPUS = ROOT / "corpus"


def test_check_source_passes_a_definition():
    report = cctt.check_source("def id (A : U0) (x : A) : A := x")
    assert report.ok
    assert [d.decl for d in report.decls] == ["id"]
    assert report.decls[0].verdict == cctt.Verdict.Pass


def test_check_source_reports_failures():
    report = cctt.check_source("def bad (A : U0) (a b : A) : Path A a b := <i> a")
    assert not report.ok
    assert report.decls[0].verdict == cctt.Verdict.Fail
    assert "EndpointMismatch" in report.decls[0].detail


def test_check_source_with_prelude():
    prelude = (CORPUS / "prelude.cctt").read_text()
    text = "--expect-conv force A (unforce A y) = y : forall k. A\ndef probe (A : U0) (y : forall k. A) : U1 := U0\n"
    report = cctt.check_source(text, prelude=prelude)
    assert report.ok


def test_conv_and_infer():
    assert cctt.conv("(\\x. x : U1 -> U1) U0", "U0", "U1")
    assert not cctt.conv("U0 -> U0", "U0", "U1")
    assert cctt.infer("U0") == "U1"


def test_parse_errors_raise():
    with pytest.raises(cctt.CheckError, match="ParseError"):
        cctt.reprint("def bad (A : U0) (a : A) : A := hcomp^j A [1 -> a a")


def test_reprint_is_stable():
    text = (CORPUS / "prelude.cctt").read_text()
    once = cctt.reprint(text)
    assert cctt.reprint(once) == once


def test_run_corpus():
    summary = cctt.run_corpus(str(CORPUS), jobs=2)
    assert summary.exit_code == 0
    assert summary.failed == 0
    assert summary.passed > 150


def test_missing_corpus_is_an_io_error(tmp_path):
    assert cctt.run_corpus(str(tmp_path / "absent")).exit_code == 2
    assert cctt.run_corpus(str(tmp_path)).exit_code == 0
