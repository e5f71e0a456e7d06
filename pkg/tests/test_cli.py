import os

import pytest

from crossedmods.cli import EXIT_INPUT, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE, EXIT_VALIDATION, main
from crossedmods.fixtures import PEIFFER
from crossedmods.textformat import Workspace, parse_files, serialize
from crossedmods.groups import trivial_group, trivial_hom
from crossedmods.library import cyclic
from crossedmods.x2mod import identity_x2morphism
from crossedmods.xmod import XModMorphism, identity_xmod, trivial_xmod

from conftest import SAMPLES


def s(name):
    return os.path.join(SAMPLES, name)


def run(argv):
    try:
        return main(argv)
    except SystemExit as e:  # argparse usage errors
        return e.code


@pytest.fixture
def peiffer_with_identity(tmp_path):
    ws = Workspace()
    X = PEIFFER["peiffer_c4_inversion"]()
    ws.put("Z", X)
    ws.put("idZ", identity_x2morphism(X))
    p = tmp_path / "span.txt"
    p.write_text(serialize(ws))
    return str(p)


def matrix(tmp_path, peiffer_with_identity):
    bad = tmp_path / "bad.txt"
    bad.write_text("group G { table = [[0]] \n")
    unresolved = tmp_path / "unresolved.txt"
    unresolved.write_text("hom f: G -> G { map = [0] }\n")
    xmorph = tmp_path / "xmorph.txt"
    ws = Workspace()
    C2 = cyclic(2)
    one = trivial_group()
    ws.put("h", XModMorphism(trivial_hom(C2, one), trivial_hom(C2, one), identity_xmod(C2), trivial_xmod()))
    xmorph.write_text(serialize(ws))
    return [
        ("check ok", ["check", s("c2_to_trivial.txt")], EXIT_OK),
        ("check crossed sample", ["check", s("c4_peiffer.txt")], EXIT_OK),
        ("check fails CM2", ["check", s("c4_inversion_as_crossed.txt")], EXIT_VALIDATION),
        ("missing file", ["check", str(tmp_path / "nope.txt")], EXIT_INPUT),
        ("malformed file", ["check", str(bad)], EXIT_INPUT),
        ("unresolved reference", ["check", str(unresolved)], EXIT_INPUT),
        ("unknown command", ["frobnicate", s("c2_to_trivial.txt")], EXIT_USAGE),
        ("no files", ["check"], EXIT_USAGE),
        ("bad strategy", ["induce", s("c2_to_trivial.txt"), "--strategy", "magic"], EXIT_USAGE),
        ("unknown name", ["induce", s("c2_to_trivial.txt"), "--phi", "nothing"], EXIT_INPUT),
        ("induce epi", ["induce", s("c2_to_trivial.txt"), "--phi", "kill"], EXIT_OK),
        ("induce general", ["induce", s("c2_to_trivial.txt"), "--phi", "kill", "--strategy", "general"], EXIT_OK),
        ("induce mono mismatch", ["induce", s("c2_to_trivial.txt"), "--phi", "kill", "--strategy", "mono"], EXIT_USAGE),
        ("induce undecided", ["induce", s("c2_to_trivial.txt"), "--phi", "kill", "--strategy", "general", "--coset-limit", "1"], EXIT_UNDECIDED),
        ("induce2", ["induce2", s("c4_peiffer.txt"), s("theta_to_trivial.txt")], EXIT_OK),
        ("induce2 compare", ["induce2", s("c4_peiffer.txt"), s("theta_to_trivial.txt"), "--compare-relators"], EXIT_OK),
        ("induce2 limit", ["induce2", s("c12_inversion.txt"), "--strategy", "general", "--coset-limit", "10"], EXIT_UNDECIDED),
        ("induce2 enough", ["induce2", s("c12_inversion.txt"), "--strategy", "general", "--coset-limit", "200"], EXIT_OK),
        ("peiffer", ["peiffer", s("c4_inversion.txt")], EXIT_OK),
        ("reflect", ["reflect", s("c4_peiffer.txt")], EXIT_OK),
        ("pullback", ["pullback", s("c2_to_trivial.txt"), "--xmod", "X", "--phi", "id"], EXIT_OK),
        ("pullback wrong base", ["pullback", s("c2_to_trivial.txt"), "--xmod", "X", "--phi", "kill"], EXIT_USAGE),
        ("pullback2", ["pullback2", s("c4_peiffer.txt"), "--phi", "mod2"], EXIT_OK),
        ("universal needs crossed", ["universal", s("c4_inversion.txt"), s("theta_to_trivial.txt"), "--morph", "theta"], EXIT_VALIDATION),
        ("universal induced", ["universal", str(xmorph), "--morph", "h"], EXIT_OK),
        ("universal pullback", ["universal", str(xmorph), "--morph", "h", "--via", "pullback"], EXIT_OK),
        ("pushout2 identity span", ["pushout2", peiffer_with_identity, "--left", "idZ", "--right", "idZ"], EXIT_OK),
        ("cokernel", ["pushout2", peiffer_with_identity, "--left", "idZ"], EXIT_OK),
        ("universal2", ["universal2", peiffer_with_identity, "--morph", "idZ"], EXIT_OK),
    ]


def test_exit_code_matrix(tmp_path, peiffer_with_identity, capsys):
    got = {}
    for label, argv, want in matrix(tmp_path, peiffer_with_identity):
        got[label] = (run(argv), want)
    capsys.readouterr()
    wrong = {k: v for k, v in got.items() if v[0] != v[1]}
    assert not wrong


def test_induce_report_and_out(tmp_path, capsys):
    out = tmp_path / "out.txt"
    assert main(["induce", s("c2_to_trivial.txt"), "--phi", "kill", "--out", str(out), "--name", "I"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "order: 2" in text and "Decided" in text
    ws = parse_files([str(out)])
    assert "I" in ws and ws["I"].M.order == 2
    assert serialize(parse_files([str(out)])) == out.read_text()


def test_report_file(tmp_path):
    rep = tmp_path / "rep.txt"
    assert main(["check", s("c2_to_trivial.txt"), "--report", str(rep)]) == EXIT_OK
    assert "CM1: pass" in rep.read_text()


def test_validation_failure_prints_witness(capsys):
    assert main(["check", s("c4_inversion_as_crossed.txt")]) == EXIT_VALIDATION
    assert "witness" in capsys.readouterr().err


def test_compare_relators_output(capsys):
    main(["induce2", s("c4_peiffer.txt"), s("theta_to_trivial.txt"), "--compare-relators"])
    text = capsys.readouterr().out
    assert "definition" in text and "display" in text


def test_undecided_reports_limit(capsys):
    code = main(["induce2", s("c12_inversion.txt"), "--strategy", "general", "--coset-limit", "10"])
    assert code == EXIT_UNDECIDED
    assert "UndecidedAtLimit" in capsys.readouterr().out


def test_peiffer_output_round_trips(tmp_path):
    out = tmp_path / "z.txt"
    assert main(["peiffer", s("c4_inversion.txt"), "--out", str(out), "--name", "Z"]) == EXIT_OK
    assert out.read_text() == open(s("c4_peiffer.txt")).read()
