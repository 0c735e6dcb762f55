import json
import subprocess
import sys

from dorroh import exchange
from dorroh.cli import main
from dorroh.fields import QQ
from dorroh.gallery import instance


def run_cli(*argv):
    return main(list(argv))


def test_gallery_list(capsys):
    assert run_cli("gallery", "--list") == 0
    out = capsys.readouterr().out
    assert "M2" in out and "pair-algebra:M2_regular" in out


def test_gallery_emit_and_check(tmp_path, capsys):
    doc = tmp_path / "m2.json"
    assert run_cli("gallery", "--emit", "M2", "-o", str(doc)) == 0
    assert run_cli("check", str(doc)) == 0
    out = capsys.readouterr().out
    assert "pass" in out


def test_gallery_emit_unknown_name():
    assert run_cli("gallery", "--emit", "nope") == 2


def test_check_failing_document(tmp_path, capsys):
    doc = tmp_path / "m2.json"
    run_cli("gallery", "--emit", "M2", "-o", str(doc))
    data = json.loads(doc.read_text())
    data["payload"]["mul"][0] = [0, 0, 1, "1"]  # e11 e11 := e12
    del data["payload"]["unit"]
    doc.write_text(json.dumps(data))
    assert run_cli("check", str(doc)) == 1
    assert "witness" in capsys.readouterr().out


def test_check_malformed_document(tmp_path, capsys):
    doc = tmp_path / "m2.json"
    run_cli("gallery", "--emit", "M2", "-o", str(doc))
    data = json.loads(doc.read_text())
    data["payload"]["mul"][0][0] = 99
    doc.write_text(json.dumps(data))
    assert run_cli("check", str(doc)) == 2
    assert "out of range" in capsys.readouterr().err


def test_check_missing_file():
    assert run_cli("check", "/nonexistent/file.json") == 2


def test_usage_error_exit_code():
    assert run_cli("frobnicate") == 2


def test_build_and_recheck(tmp_path):
    pair_doc = tmp_path / "pair.json"
    built_doc = tmp_path / "built.json"
    assert run_cli("gallery", "--emit", "pair-algebra:k_nilpotent_scalar", "-o", str(pair_doc)) == 0
    assert run_cli("build", str(pair_doc), "-o", str(built_doc)) == 0
    assert run_cli("check", str(built_doc)) == 0
    built = exchange.load(str(built_doc))
    assert built.dim == 2
    assert built.mul == instance("dual_numbers", QQ).mul


def test_build_rejects_non_pair(tmp_path):
    doc = tmp_path / "m2.json"
    run_cli("gallery", "--emit", "M2", "-o", str(doc))
    assert run_cli("build", str(doc)) == 2


def test_split_round_trip(tmp_path):
    dn = tmp_path / "dn.json"
    pair_out = tmp_path / "pair.json"
    iso_out = tmp_path / "iso.json"
    run_cli("gallery", "--emit", "dual_numbers", "-o", str(dn))
    code = run_cli(
        "split", str(dn), "--a-basis", "1,0", "--i-basis", "0,1",
        "-o", str(pair_out), "--iso-out", str(iso_out),
    )
    assert code == 0
    pair = exchange.load(str(pair_out))
    assert pair.A.dim == 1 and pair.I.dim == 1
    iso = exchange.load(str(iso_out))
    assert iso.verified == "iso"


def test_split_non_ideal_fails(tmp_path):
    dn = tmp_path / "dn.json"
    run_cli("gallery", "--emit", "dual_numbers", "-o", str(dn))
    assert run_cli("split", str(dn), "--a-basis", "0,1", "--i-basis", "1,0") == 1


def test_dualize_pair(tmp_path):
    src = tmp_path / "pair.json"
    out = tmp_path / "dual.json"
    run_cli("gallery", "--emit", "pair-coalgebra:grouplike", "-o", str(src))
    assert run_cli("dualize", str(src), "-o", str(out)) == 0
    assert run_cli("check", str(out)) == 0


def test_dualize_twice_is_identity_on_documents(tmp_path):
    src = tmp_path / "m2.json"
    once = tmp_path / "dual.json"
    twice = tmp_path / "double.json"
    run_cli("gallery", "--emit", "M2", "-o", str(src))
    assert run_cli("dualize", str(src), "-o", str(once)) == 0
    assert run_cli("dualize", str(once), "-o", str(twice)) == 0
    original = exchange.load(str(src))
    double = exchange.load(str(twice))
    assert double.mul == original.mul  # up to the double-dual relabeling


def test_iso_duality_self_test(tmp_path):
    src = tmp_path / "m2.json"
    run_cli("gallery", "--emit", "M2", "-o", str(src))
    assert run_cli("iso", "--which", "duality", str(src)) == 0


def test_iso_prop11(tmp_path):
    src = tmp_path / "pair.json"
    out = tmp_path / "eta.json"
    run_cli("gallery", "--emit", "pair-algebra:M2_regular", "-o", str(src))
    assert run_cli("iso", "--which", "prop1.1", str(src), "-o", str(out)) == 0
    eta = exchange.load(str(out))
    assert eta.verified == "iso"


def test_iso_prop11_needs_unital_ideal(tmp_path):
    src = tmp_path / "pair.json"
    run_cli("gallery", "--emit", "pair-algebra:k_nilpotent_scalar", "-o", str(src))
    assert run_cli("iso", "--which", "prop1.1", str(src)) == 2


def test_iso_counital_split(tmp_path):
    src = tmp_path / "pair.json"
    run_cli("gallery", "--emit", "pair-coalgebra:grouplike", "-o", str(src))
    assert run_cli("iso", "--which", "counital-split", str(src)) == 0


def test_iso_associator_both_sides(tmp_path):
    a = tmp_path / "apair.json"
    c = tmp_path / "cpair.json"
    run_cli("gallery", "--emit", "pair-algebra:kZ2_regular", "-o", str(a))
    assert run_cli("iso", "--which", "associator", str(a)) == 0
    run_cli("gallery", "--emit", "pair-coalgebra:grouplike", "-o", str(c))
    assert run_cli("iso", "--which", "associator", str(c)) == 0


def test_findual_pipeline(tmp_path, capsys):
    seq = tmp_path / "fib.json"
    rec = tmp_path / "rec.json"
    run_cli("gallery", "--emit", "fibonacci", "-o", str(seq))
    assert run_cli("findual", "--seq", str(seq), "--command", "minrec", "--bound", "4", "-o", str(rec)) == 0
    found = exchange.load(str(rec))
    assert found.coeffs == [1, 1]
    assert run_cli("findual", "--seq", str(seq), "--command", "coproduct", "--depth", "20") == 0
    assert run_cli("findual", "--seq", str(seq), "--command", "dorroh", "--depth", "20") == 0
    assert run_cli("findual", "--seq", str(seq), "--command", "vanish", "--depth", "30") == 0
    assert run_cli("findual", "--seq", str(seq), "--command", "vanish", "--poly", "2") == 1


def test_findual_minrec_rejects_factorials(tmp_path):
    import math

    doc = {
        "format": "dorroh/1",
        "field": {"kind": "Q"},
        "kind": "sequence",
        "payload": {
            "initial": [str(math.factorial(n)) for n in range(1, 11)],
            "recurrence": [],
        },
    }
    seq = tmp_path / "fact.json"
    seq.write_text(json.dumps(doc))
    assert run_cli("findual", "--seq", str(seq), "--command", "minrec", "--bound", "4") == 1


def test_report_json_format(tmp_path, capsys):
    doc = tmp_path / "m2.json"
    run_cli("gallery", "--emit", "M2", "-o", str(doc))
    assert run_cli("check", str(doc), "--report", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "pass"
    assert payload["summary"] == {"passed": 1, "failed": 0}


def test_cli_round_trip_byte_identical(tmp_path):
    # emit -> parse -> emit through real files
    for name in ("M2", "Mc2", "fibonacci", "pair-algebra:M2_regular", "pair-coalgebra:regular_Mc2"):
        first = tmp_path / "first.json"
        assert run_cli("gallery", "--emit", name, "-o", str(first)) == 0
        text = first.read_text()
        assert exchange.emit(exchange.parse(text)) == text, name


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dorroh.cli", "gallery", "--list"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "M2" in proc.stdout


def test_check_dispatches_all_document_kinds(tmp_path):
    from dorroh.algebra import identity_morphism
    from dorroh.duality import dual_actions
    from dorroh.gallery import matrix_algebra_2, regular_bimodule
    from dorroh.fields import QQ

    m2 = matrix_algebra_2(QQ)
    objs = {
        "morphism.json": identity_morphism(m2),
        "module.json": regular_bimodule(m2),
        "comodule.json": dual_actions(regular_bimodule(m2)),
    }
    for name, obj in objs.items():
        path = tmp_path / name
        path.write_text(exchange.emit(obj))
        assert run_cli("check", str(path)) == 0


def test_findual_default_depth(tmp_path):
    seq = tmp_path / "fib.json"
    run_cli("gallery", "--emit", "fibonacci", "-o", str(seq))
    assert run_cli("findual", "--seq", str(seq), "--command", "coproduct") == 0
    assert run_cli("findual", "--seq", str(seq), "--command", "dorroh") == 0
