import sys
from pathlib import Path

# Add the project root directory to Python path
project_root = str(Path(__file__).parent.parent.parent)
sys.path.append(project_root)

import json
from io import StringIO

import pytest

from src.cli.app import EXIT_DOMAIN, EXIT_OK, EXIT_PARSE, build_parser, run

CLASSIFY_EXAMPLE = {
    "base": {"g": 1, "mu": 2, "eps": "nondividing"},
    "n": 2,
    "structure": {"variant": "split_pm", "plus_set": [0, 1]},
    "transforms": [{"locus": {"real": 0}, "rank": 1, "count": 1}],
}


def invoke(*argv):
    out = StringIO()
    status = run(list(argv), out)
    return status, out.getvalue()


def write(tmp_path: Path, name: str, doc) -> str:
    path = tmp_path / name
    if isinstance(doc, bytes):
        path.write_bytes(doc)
    else:
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_realize_classify_example():
    status, text = invoke("realize", "--n", "2", "--genus", "1", "--mu", "2", "--eps", "nondividing",
                          "--t", "1", "--k", "1", "--degree", "1")
    assert status == EXIT_OK
    assert json.loads(text) == CLASSIFY_EXAMPLE
    assert text.endswith("\n")


def test_realize_rejects_parity_violation():
    status, text = invoke("realize", "--n", "2", "--genus", "1", "--mu", "2", "--eps", "nondividing",
                          "--t", "1", "--k", "1", "--degree", "0")
    assert status == EXIT_DOMAIN
    body = json.loads(text)
    assert body["error"] == "InvalidKey"
    assert body["message"] == "InvalidKey: d != k mod 2"


def test_classify_and_validate(tmp_path):
    path = write(tmp_path, "p.json", CLASSIFY_EXAMPLE)
    status, text = invoke("classify", path)
    assert status == EXIT_OK
    assert json.loads(text) == {
        "variant": "even_dim_real_base",
        "curve": {"g": 1, "mu": 2, "eps": "nondividing"},
        "n": 2, "t": 1, "k": 1, "d": 1,
    }
    assert json.loads(invoke("validate", path)[1]) == {"valid": True, "degree": 1}


def test_output_is_deterministic(tmp_path):
    path = write(tmp_path, "p.json", CLASSIFY_EXAMPLE)
    assert invoke("moves", path) == invoke("moves", path)
    assert invoke("enumerate", "--n", "4", "--genus", "1") == invoke("enumerate", "--n", "4", "--genus", "1")


def test_equiv_after_cancel_pair(tmp_path):
    a = dict(CLASSIFY_EXAMPLE)
    b = dict(CLASSIFY_EXAMPLE, transforms=[{"locus": {"real": 0}, "rank": 1, "count": 3}])
    c = dict(CLASSIFY_EXAMPLE, transforms=[])
    pa, pb, pc = write(tmp_path, "a.json", a), write(tmp_path, "b.json", b), write(tmp_path, "c.json", c)
    assert json.loads(invoke("equiv", pa, pb)[1]) == {"equivalent": True}
    assert json.loads(invoke("equiv", pa, pc)[1]) == {"equivalent": False}


def test_normal_form_and_transform(tmp_path):
    doc = {
        "base": {"g": 0, "mu": 1, "eps": "dividing"},
        "n": 3,
        "structure": {"variant": "product_conj_odd"},
        "transforms": [{"locus": "conjpair", "rank": 1, "count": 5}],
    }
    path = write(tmp_path, "odd.json", doc)
    status, text = invoke("normal-form", path)
    assert status == EXIT_OK
    assert json.loads(text)["transforms"] == [{"locus": "conjpair", "rank": 1, "count": 2}]

    status, text = invoke("transform", path, "--locus", "real:0", "--rank", "2")
    assert status == EXIT_OK
    assert json.loads(text)["transforms"] == [
        {"locus": {"real": 0}, "rank": 2, "count": 1},
        {"locus": "conjpair", "rank": 1, "count": 5},
    ]
    status, text = invoke("transform", path, "--locus", "real:1")
    assert status == EXIT_DOMAIN
    assert json.loads(text)["error"] == "RealLocusOutsideRealPart"
    assert invoke("transform", path, "--locus", "fiber")[0] == EXIT_PARSE


def test_topology(tmp_path):
    status, text = invoke("topology", write(tmp_path, "p.json", CLASSIFY_EXAMPLE))
    assert status == EXIT_OK
    assert json.loads(text) == {
        "statuses": ["nonorientable", "orientable"],
        "quintuple": {"t": 1, "k": 1, "g": 1, "mu": 2, "eps": "nondividing"},
    }
    empty = {
        "base": {"g": 2, "mu": 0, "eps": "nondividing"},
        "n": 4,
        "structure": {"variant": "empty_base", "label": "conj_like"},
        "transforms": [{"locus": "conjpair", "rank": 2}],
    }
    status, text = invoke("topology", write(tmp_path, "e.json", empty))
    assert json.loads(text) == {"quotient": {"d2n": 4, "q": 1}}


def test_enumerate():
    status, text = invoke("enumerate", "--n", "2", "--genus", "1", "--mu", "2", "--eps", "nondividing")
    assert status == EXIT_OK
    assert len(json.loads(text)) == 6
    status, text = invoke("enumerate", "--n", "3", "--genus", "1")
    # four curve types of genus one, three degrees each
    assert len(json.loads(text)) == 12
    status, text = invoke("enumerate", "--n", "2", "--genus", "1", "--mu", "1", "--eps", "dividing")
    assert status == EXIT_DOMAIN
    assert json.loads(text)["error"] == "InvalidCurveType"


def test_realize_then_classify_round_trip(tmp_path):
    for argv, key in [
        (["--n", "3", "--genus", "0", "--mu", "1", "--eps", "dividing", "--degree", "2"],
         {"variant": "odd_dim", "d": 2}),
        (["--n", "4", "--genus", "2", "--mu", "0", "--degree", "2", "--quotient-bit", "1"],
         {"variant": "even_dim_empty_base", "d": 2, "q": 1}),
    ]:
        status, text = invoke("realize", *argv)
        assert status == EXIT_OK
        path = write(tmp_path, "r.json", text)
        body = json.loads(invoke("classify", path)[1])
        assert {name: body[name] for name in key} == key


@pytest.mark.parametrize("content, message", [
    ("{not json", "Expecting"),
    (json.dumps({"n": 2}), "missing field 'transforms'"),
    (json.dumps(dict(CLASSIFY_EXAMPLE, n="two")), "field 'n' must be an integer"),
    (json.dumps(dict(CLASSIFY_EXAMPLE, structure={"variant": "twisted"})), "unknown structure variant"),
    (b'{"n": 2, "base": \xff\xfe}', "decode"),
    ("[" * 100000 + "]" * 100000, "nests too deeply"),
    (json.dumps(dict(CLASSIFY_EXAMPLE, transforms=[{"locus": "conjpair", "rank": 1, "count": 10**9}])),
     "more than 4096 records"),
], ids=["syntax", "missing", "type", "variant", "not-utf8", "deep-nesting", "record-cap"])
def test_parse_errors(tmp_path, content, message):
    status, text = invoke("classify", write(tmp_path, "bad.json", content))
    assert status == EXIT_PARSE
    body = json.loads(text)
    assert body["error"] == "ParseError"
    assert message in body["message"]


def test_domain_error_on_invalid_presentation(tmp_path):
    bad = dict(CLASSIFY_EXAMPLE, transforms=[{"locus": {"real": 0}, "rank": 2}])
    status, text = invoke("validate", write(tmp_path, "bad.json", bad))
    assert status == EXIT_DOMAIN
    assert json.loads(text)["error"] == "RankOutOfRange"
    assert invoke("classify", str(tmp_path / "missing.json"))[0] == EXIT_PARSE

NORMAL_BUNDLE_INPUT = {
    "curve": {"g": 1, "mu": 2, "eps": "dividing"},
    "L": [],
    "F": [
        [{"point": {"id": "p", "kind": {"real": 1}}, "coeff": 1}],
        [{"point": {"id": "x", "kind": {"nonreal": "x~"}}, "coeff": 1},
         {"point": {"id": "x~", "kind": {"nonreal": "x"}}, "coeff": 1}],
        [{"point": {"id": "x", "kind": {"nonreal": "x~"}}, "coeff": 1}],
    ],
}


def test_normal_bundle(tmp_path):
    path = write(tmp_path, "nb.json", NORMAL_BUNDLE_INPUT)
    status, text = invoke("normal-bundle", path)
    assert status == EXIT_OK
    body = json.loads(text)
    assert body["normal_bundle"] == [{"a": 1, "m": F_j} for F_j in NORMAL_BUNDLE_INPUT["F"]]
    assert body["real"] == [True, True, False]

    status, text = invoke("normal-bundle", path, "--role", "model_section")
    assert json.loads(text)["real"] == [False, False, False]


def test_normal_bundle_errors(tmp_path):
    status, text = invoke("normal-bundle", write(tmp_path, "e.json", dict(NORMAL_BUNDLE_INPUT, F=[])))
    assert status == EXIT_DOMAIN
    assert json.loads(text)["error"] == "EmptyF"

    clash = [{"point": {"id": "p", "kind": {"real": 0}}, "coeff": 1},
             {"point": {"id": "p", "kind": {"real": 1}}, "coeff": -1}]
    status, text = invoke("normal-bundle", write(tmp_path, "c.json", dict(NORMAL_BUNDLE_INPUT, L=clash)))
    assert status == EXIT_DOMAIN
    assert json.loads(text)["error"] == "InconsistentLabels"

    outside = [{"point": {"id": "p", "kind": {"real": 5}}, "coeff": 1}]
    status, text = invoke("normal-bundle", write(tmp_path, "o.json", dict(NORMAL_BUNDLE_INPUT, L=outside)))
    assert status == EXIT_PARSE


def test_realize_from_key_file(tmp_path):
    key = {"variant": "even_dim_real_base", "curve": {"g": 1, "mu": 2, "eps": "nondividing"},
           "n": 2, "t": 1, "k": 1, "d": 1}
    status, text = invoke("realize", "--key", write(tmp_path, "key.json", key))
    assert status == EXIT_OK
    assert json.loads(text) == CLASSIFY_EXAMPLE

    status, text = invoke("realize", "--key", write(tmp_path, "bad.json", dict(key, d=0)))
    assert status == EXIT_DOMAIN
    assert json.loads(text)["error"] == "InvalidKey"

    status, text = invoke("realize", "--n", "2", "--genus", "1")
    assert status == EXIT_PARSE
    assert "--key" in json.loads(text)["message"]



def test_help_documents_exit_codes():
    text = build_parser().format_help()
    assert "Exit status" in text and "least" in text


if __name__ == "__main__":
    test_realize_classify_example()
    test_realize_rejects_parity_violation()
    print("CLI OK!")
