import io
import json
import subprocess
import sys

import pytest

from symhom.cli import COMMANDS, EXIT_INPUT, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, build_parser, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue().splitlines(), err.getvalue()


def test_size_matches_transcript():
    code, lines, _ = call("enumerate", "6", "4", "--count", "--machine")
    assert code == EXIT_OK and lines == ["1663200"]


def test_enumeration_order_matches_transcript():
    _, lines, _ = call("enumerate", "2", "2", "--machine")
    assert len(lines) == 60
    assert lines[:3] == ["[[0,1,2],[],[]]", "[[0,2,1],[],[]]", "[[1,0,2],[],[]]"]
    assert lines[24:30] == ["[[0],[1],[2]]", "[[0],[2],[1]]", "[[1],[0],[2]]",
                            "[[1],[2],[0]]", "[[2],[0],[1]]", "[[2],[1],[0]]"]
    assert lines[-1] == "[[],[],[2,1,0]]"
    _, epis, _ = call("enumerate", "2", "2", "--epi", "--machine")
    assert epis == lines[24:30]


def test_compose_transcript():
    code, lines, _ = call("compose", "[[],[3,0,2],[1]]", "[[0],[2,4,1],[],[3]]")
    assert code == EXIT_OK and lines == ["[[],[3,0],[2,4,1]]"]
    code, _, err = call("compose", "[[0],[2,4,1],[],[3]]", "[[],[3,0,2],[1]]")
    assert code == EXIT_INPUT and "incomposable" in err


def test_act_transcript():
    # x = t2, y = t1 in the labels of trunc:3,2
    v = "t1*t2;1;t1^2"
    assert call("act", "[[2],[],[0],[1]]", v, "--algebra", "trunc:3,2")[1] == [
        "(t1^2) (x) (1) (x) (t1*t2) (x) (1)"]
    assert call("act", "[[2],[0,1]]", v, "--algebra", "trunc:3,2")[1] == ["(t1^2) (x) (t1*t2)"]
    assert call("act", "[[2,0],[1]]", v, "--algebra", "trunc:3,2")[1] == ["(0) (x) (1)"]


def test_hs_transcript_machine_list():
    code, lines, _ = call("hs", "--algebra", "trunc:3,2", "--degree", "1", "--machine")
    assert code == EXIT_OK
    assert lines == ["[2,2,2,2,2,2,2,2,2,2,2,6,0,0]"]
    assert call("hs", "--algebra", "trunc:3,2", "--degree", "0", "--machine")[1] == [
        "[0,0,0,0,0,0]"]


def test_hs_layers_transcript():
    _, lines, _ = call("hs", "--algebra", "group:C2xC2", "--machine")
    assert lines == [json.dumps([2] * 12, separators=(",", ":"))]
    _, lines, _ = call("layers", "--algebra", "group:C2xC2", "--machine")
    assert [l.split("\t")[1] for l in lines] == ["[2,2,2]"] * 4
    _, lines, _ = call("layers", "--algebra", "group:C2xC2", "--degree", "0", "--machine")
    assert [l.split("\t")[1] for l in lines] == ["[0]"] * 4


def test_poly_layers_transcript():
    code, lines, _ = call("poly-layers", "--max-m", "10")
    assert code == EXIT_OK
    assert lines == ["t^0: 0", "t^1: 0"] + [f"t^{m}: Z/2" for m in range(2, 11)]


def test_sym_transcript():
    assert call("sym", "--p", "5")[1] == ["120*t^5+272*t^4+t^3", "torsion-free"]
    assert call("sym", "--p", "2")[1][0] == "2*t^2+t"
    assert call("sym", "--p", "5", "--machine")[1] == ["[0,0,0,1,272,120]"]


def test_sym_low_degrees_only():
    assert call("sym", "--p", "5", "--max-degree", "3")[1] == [
        "t^3  (degrees 0..3 only)", "torsion-free"]
    assert call("sym", "--p", "5", "--max-degree", "3", "--machine")[1] == ["[0,0,0,1]"]
    assert call("sym", "--p", "3", "--max-degree", "-1")[0] == EXIT_INPUT


def test_out_of_reach_reduction_is_reported(monkeypatch):
    from symhom.linalg import reduction

    def refuse(*args, **kw):
        raise reduction.ReductionTooLarge("map 2: exact finishing is out of reach")

    monkeypatch.setattr(reduction, "interleaved_diagonals", refuse)
    code, _, err = call("sym", "--p", "3")
    assert code == EXIT_INPUT and "out of reach" in err


def test_sym_needs_opt_in():
    code, _, err = call("sym", "--p", "6")
    assert code == EXIT_INPUT and "--large-p" in err


def test_chess_and_omega():
    code, lines, _ = call("chess", "--n", "4", "--machine")
    assert code == EXIT_OK
    assert json.loads(lines[0]) == [1, 12, 36, 24]
    assert json.loads(lines[1]) == [[], [], [0] * 7, [0] * 6]
    code, lines, _ = call("omega-check", "--p", "3")
    assert code == EXIT_OK and "bijective on generators: yes" in lines


def test_hc_map():
    code, lines, _ = call("hc-map", "--algebra", "trunc:4", "--machine")
    rep = json.loads(lines[0])
    assert code == EXIT_OK
    assert rep["hc1"] == [2, 12] and rep["image"] == [2, 2] and rep["gamma2_chain_map"]


def test_resolution_check():
    code, lines, _ = call("resolution-check", "--n", "1", "--machine")
    rep = json.loads(lines[0])
    assert code == EXIT_OK and rep["sizes"] == [1, 2, 12, 22] and all(
        v for k, v in rep.items() if k != "sizes")


@pytest.mark.parametrize("argv,code", [
    (["nonsense"], EXIT_USAGE),
    (["hs"], EXIT_USAGE),
    (["hs", "--algebra", "trunc:3", "--degree", "2"], EXIT_USAGE),
    (["hs", "--algebra", "bogus"], EXIT_INPUT),
    (["hs", "--algebra", "file:/does/not/exist"], EXIT_INPUT),
    (["enumerate", "-1", "2"], EXIT_INPUT),
    (["poly-layers", "--max-m", "-1"], EXIT_INPUT),
    (["chess", "--n", "0"], EXIT_INPUT),
    (["compose", "[[0,0]]", "[[0]]"], EXIT_INPUT),
    (["resolution-check", "--n", "9"], EXIT_USAGE),
])
def test_exit_codes(argv, code, capsys):
    assert call(*argv)[0] == code


def test_verification_failure_exit_code(monkeypatch):
    from symhom import hs_low

    def broken(A, *, layer=None, check=True):
        raise hs_low.VerificationError("d1 o d2 != 0")

    monkeypatch.setattr(hs_low, "partial_complex", broken)
    code, _, err = call("hs", "--algebra", "matrix:2", "--no-split")
    assert code == EXIT_VERIFY and "verification failed" in err


def test_machine_output_is_stable():
    a = call("hs", "--algebra", "group:S3", "--machine")
    b = call("hs", "--algebra", "group:S3", "--machine")
    assert a == b


def test_machine_flag_position():
    assert call("--machine", "sym", "--p", "3")[1] == call("sym", "--p", "3", "--machine")[1]


KEYWORDS = {
    "enumerate": "Delta S", "compose": "Delta S", "act": "symmetric bar construction",
    "hs": "Symmetric homology", "layers": "layer", "poly-layers": "HS_1(Z[t])",
    "sym": "Sym_*^(p)", "chess": "chessboard complex", "omega-check": "chain isomorphism",
    "hc-map": "HC_1(A) -> HS_1(A)", "resolution-check": "resolution",
}


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_help_names_the_construct(name, capsys):
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args([name, "--help"])
    assert info.value.code == 0
    assert KEYWORDS[name] in capsys.readouterr().out.replace("\n", " ").replace("  ", " ")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "symhom.cli", "sym", "--p", "3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "6*t^3+7*t^2"
