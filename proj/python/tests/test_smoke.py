"""Smoke tests for the Python bindings and the CLI JSON contract."""

import json
import os
import pathlib
import subprocess

import pytest

import mvs

SCHEMAS = pathlib.Path(os.environ.get("MVS_SCHEMAS", "schemas"))
CLI = os.environ.get("MVS_CLI")


def load_schema(name):
    return json.loads((SCHEMAS / name).read_text())


def validate(instance, schema_name):
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(instance=instance, schema=load_schema(schema_name))


@pytest.fixture(scope="module")
def family():
    return mvs.synthesize_family("1", count=2)


def test_family_shape(family):
    assert len(family) == 2
    for member in family:
        assert member["provenance"]["kappa1"] == "2/3"
        assert member["provenance"]["h"] == 3
        validate(member, "family_member.schema.json")
        validate(member["descriptor"], "descriptor.schema.json")


def test_invariants_rc_exact(family):
    from fractions import Fraction

    report = mvs.invariants(family[0]["descriptor"])
    validate(report, "invariant_report.schema.json")
    assert report["rc"] == {"lo": "1", "hi": "1", "certified": True}
    beta = Fraction(report["kappa"][1]["lo"])
    kappa1 = Fraction(report["kappa"][0]["lo"])
    assert Fraction(report["corner_rc"]["ratio"]) == beta / kappa1


def test_fingerprint_discriminate(family):
    f0 = mvs.fingerprint(family[0])
    f1 = mvs.fingerprint(family[1])
    validate(f0, "fingerprint.schema.json")
    assert mvs.discriminate(f0, f1)["verdict"] == "distinguishable"
    assert mvs.discriminate(f0, f0)["verdict"] == "not_distinguishable"


def test_verify_and_levels(family):
    desc = family[0]["descriptor"]
    report = mvs.verify(desc)
    validate(report, "verify_report.schema.json")
    assert report["construction"]["ok"]
    assert report["two_seed"]["status"] == "true"
    table = mvs.levels(desc, depth=3)
    validate(table, "levels.schema.json")
    assert table["levels"][1]["r"] == ["4", "4"]


def test_cone_and_state(family):
    desc = family[0]["descriptor"]
    res = mvs.cone_contains(desc, "1", "2")
    validate(res, "cone_result.schema.json")
    assert res["verdict"] == "positive"
    assert mvs.cone_contains(desc, "0", "1")["verdict"] == "not_positive"
    val = mvs.state_eval(desc, "1", "1", t="-1")["value"]
    assert val["certified"]


def test_divisibility(family):
    rep = mvs.verify_divisibility(family[0]["descriptor"], K=10)
    assert rep["all_found"]


def test_parse_error():
    with pytest.raises(mvs.Error):
        mvs.invariants({"m": 0, "seeds": [], "d": [], "mu": {}, "r0": []})


@pytest.mark.skipif(CLI is None, reason="MVS_CLI not set")
def test_cli_roundtrip(tmp_path):
    out = subprocess.run([CLI, "synthesize", "--omega", "1", "--count", "1"],
                         capture_output=True, text=True, check=True)
    fam = json.loads(out.stdout)
    member = tmp_path / "member.json"
    member.write_text(json.dumps(fam[0]))
    fp = subprocess.run([CLI, "fingerprint", "--in", str(member)],
                        capture_output=True, text=True, check=True)
    validate(json.loads(fp.stdout), "fingerprint.schema.json")
    # Determinism: a second run is byte-identical.
    out2 = subprocess.run([CLI, "synthesize", "--omega", "1", "--count", "1"],
                          capture_output=True, text=True, check=True)
    assert out.stdout == out2.stdout
