"""Command line round trips: text reports, JSON documents, exit codes."""

import json
import os

import pytest

from qsa.cli import run_cli

from conftest import fixture_path


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- exit codes -----------------------------------------------------------------


def test_missing_subcommand_exits_two(capsys):
    code, out, err = run(capsys)
    assert code == 2
    assert "usage" in err


def test_unreadable_file_exits_one(capsys):
    code, out, err = run(capsys, "check", "/no/such/file.qsa")
    assert code == 1
    assert err.startswith("error: cannot read")


def test_parse_error_exits_one(tmp_path, capsys):
    bad = tmp_path / "bad.qsa"
    bad.write_text("vertices: 1\n")
    code, out, err = run(capsys, "check", str(bad))
    assert code == 1 and err.startswith("error:")


def test_reduce_refuses_non_string_input(capsys):
    code, out, err = run(capsys, "reduce",
                         fixture_path("three-vertex-wild"))
    assert code == 1
    assert err == ("error: not a quadratic string algebra: arrow gamma has "
                   "2 relation-free continuations: alpha, delta\n")


# --- check ------------------------------------------------------------------------


def test_check_reports_flags(capsys):
    code, out, _ = run(capsys, "check", fixture_path("a5-chain"))
    assert code == 0
    assert "connected: true" in out
    assert "quadratic string: true" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--json",
                       fixture_path("three-vertex-wild"))
    assert code == 0
    doc = json.loads(out)
    assert doc["quadratic_string"] is False
    assert doc["string_violations"]


# --- classify ------------------------------------------------------------------------


def test_classify_text_on_gqs_fixture(capsys):
    code, out, _ = run(capsys, "classify",
                       fixture_path("twelve-vertex-gqs"))
    assert code == 0
    lines = out.splitlines()
    assert "E1 = {4}  O1 = {5, 6}" in lines
    assert "E2 = {10}  O2 = {11, 12}" in lines
    assert "E3 = {3}  O3 = {1, 2}" in lines
    assert "is_quadratic_string: true" in lines
    assert "is_gqs: true" in lines


def test_classify_json_has_all_classes(capsys):
    code, out, _ = run(capsys, "classify", "--json",
                       fixture_path("twelve-vertex-gqs"))
    doc = json.loads(out)
    assert sorted(doc["E"]) == ["1", "2", "3", "4", "5", "6"]
    assert doc["E"]["1"] == ["4"]
    assert doc["O"]["3"] == ["1", "2"]
    assert doc["flags"]["is_gqs"] is True


# --- decide ------------------------------------------------------------------------


@pytest.mark.parametrize("name, expected", [
    ("twelve-vertex-gqs", "TAME (gqs; 3 exceptional vertices reduced)"),
    ("gentle-cycle", "TAME (gqs; 0 exceptional vertices reduced)"),
    ("a5-chain", "TAME (tree; Euler form non-negative)"),
    ("two-cycle", "WILD (cycles; vertex 2 is neither gentle nor exceptional)"),
])
def test_decide_text(capsys, name, expected):
    code, out, _ = run(capsys, "decide", fixture_path(name))
    assert code == 0
    assert out.splitlines()[0] == expected


def test_decide_with_bounds(capsys):
    code, out, _ = run(capsys, "decide", "--radius", "6", "--max-size", "8",
                       fixture_path("three-vertex-wild"))
    assert code == 0
    assert out.splitlines()[0] == (
        "WILD (cycles; not quadratic string, but a wildness certificate "
        "exists: 8-vertex cover witness)")


def test_decide_json(capsys):
    code, out, _ = run(capsys, "decide", "--json",
                       fixture_path("fork-tail-10"))
    doc = json.loads(out)
    assert doc["tag"] == "Wild"
    assert doc["branch"] == "TreeEuler"
    assert doc["nonnegative"] is False
    assert doc["negative_at"]


# --- transforms -----------------------------------------------------------------------


def test_blowup_text_lists_lifted_arrows(capsys):
    code, out, _ = run(capsys, "blowup", "--vertices", "1,3",
                       fixture_path("a5-chain"))
    assert code == 0
    assert "alpha+" in out and "alpha-" in out and "delta" in out


def test_blowup_json_maps(capsys):
    code, out, _ = run(capsys, "blowup", "--vertices", "1,3", "--json",
                       fixture_path("a5-chain"))
    doc = json.loads(out)
    assert doc["vertex_map"]["1"] == ["1+", "1-"]
    assert doc["arrow_map"]["delta"] == ["delta"]


def test_mutate_text(capsys):
    code, out, _ = run(capsys, "mutate", "--vertex", "5", "--sign", "minus",
                       fixture_path("a5-chain"))
    assert code == 0
    assert "-> 4" in out  # the reversed arrow now ends at 4


def test_reduce_text_and_certificate(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "reduce", "--certificate", str(cert),
                       fixture_path("twelve-vertex-gqs"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "3 steps to a gentle presentation"
    assert lines[1].startswith("step 1: class 3 at vertex 3;")
    assert "special vertices: 1, 4, 10" in out
    doc = json.loads(cert.read_text())
    assert len(doc["steps"]) == 3
    assert doc["special"] == ["1", "4", "10"]


# --- euler ------------------------------------------------------------------------


def test_euler_text(capsys):
    code, out, _ = run(capsys, "euler", fixture_path("a5-chain"))
    assert code == 0
    assert "cartan C" in out and "euler E" in out
    assert "nonnegative: true (positive definite)" in out


def test_euler_eval(capsys):
    code, out, _ = run(capsys, "euler", "--eval", "1,1,1,1,1",
                       fixture_path("a5-chain"))
    assert code == 0
    assert out.splitlines()[-1].startswith("value at (1, 1, 1, 1, 1):")


def test_euler_json(capsys):
    code, out, _ = run(capsys, "euler", "--json",
                       fixture_path("fork-tail-10"))
    doc = json.loads(out)
    assert doc["nonnegative"] is False
    assert doc["negative_value"] is not None


# --- covers and witnesses -----------------------------------------------------------


def test_cover_text_and_dot(tmp_path, capsys):
    dot = tmp_path / "ball.dot"
    code, out, _ = run(capsys, "cover", "--base", "a", "--radius", "3",
                       "--dot", str(dot), fixture_path("three-vertex-wild"))
    assert code == 0
    assert out.startswith("quiver ")
    text = dot.read_text()
    assert text.startswith("digraph") and "->" in text


def test_witness_text(capsys):
    code, out, _ = run(capsys, "witness", "--radius", "6", "--max-size", "8",
                       fixture_path("three-vertex-wild"))
    assert code == 0
    assert out.splitlines()[0] == (
        "witness at basepoint a, radius 6: 8 vertices, shape Other")


def test_witness_none_within_bounds(capsys):
    code, out, _ = run(capsys, "witness", fixture_path("kronecker"))
    assert code == 0
    assert out.strip() == "none within bounds"


def test_witness_bounds_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("QSA_WITNESS_RADIUS", "6")
    monkeypatch.setenv("QSA_WITNESS_SIZE", "8")
    code, out, _ = run(capsys, "decide", fixture_path("three-vertex-wild"))
    assert code == 0
    assert "8-vertex cover witness" in out.splitlines()[0]


def test_witness_json_keys(capsys):
    code, out, _ = run(capsys, "witness", "--radius", "6", "--max-size", "8",
                       "--json", fixture_path("three-vertex-wild"))
    doc = json.loads(out)
    assert sorted(doc["witness"]) == [
        "basepoint", "note", "paths", "presentation", "radius", "shape",
        "vertices"]
