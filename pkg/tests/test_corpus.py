"""
Tests for the bundled PD corpus.
"""

import os

import pytest

from frobtwist.corpus import CORPUS_ENV, corpus_dir, load, load_all, names, resolve_input


def test_bundled_names():
    bundled = names()
    for name in ("unknot", "kink", "hopf", "trefoil", "figure_eight", "cinquefoil", "granny"):
        assert name in bundled


def test_crossing_counts():
    diagrams = load_all()
    assert diagrams["unknot"].n == 0
    assert diagrams["trefoil"].n == 3
    assert diagrams["figure_eight"].n == 4
    assert diagrams["cinquefoil"].n == 5
    assert diagrams["granny"].n == 6
    assert diagrams["trefoil_unknot"].free_loops == (7,)


def test_resolve_input_accepts_paths(tmp_path):
    path = tmp_path / "mine.pd"
    path.write_text("X 1 2 2 1\n")
    assert resolve_input(str(path)) == str(path)
    assert load(str(path)).n == 1


def test_resolve_input_unknown():
    with pytest.raises(FileNotFoundError):
        resolve_input("no_such_knot")


def test_environment_override(tmp_path, monkeypatch):
    (tmp_path / "curl.pd").write_text("X 1 2 2 1\n")
    monkeypatch.setenv(CORPUS_ENV, str(tmp_path))
    assert corpus_dir() == str(tmp_path)
    assert names() == ["curl"]
    assert load("curl").n == 1


def test_explicit_directory_beats_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(CORPUS_ENV, str(tmp_path))
    bundled = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "frobtwist", "corpus")
    assert "trefoil" in names(bundled)


def test_missing_directory():
    assert names("/definitely/not/a/dir") == []
