import json

import pytest

from ordeuclid.application import ErrorMessage
from ordeuclid.cli import main
from ordeuclid.service import service


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_ord_eval(capsys):
    assert run(capsys, "ord", "eval", "w (+) w") == (0, "w*2\n", "")


def test_ord_cmp_and_indecomposable(capsys):
    assert run(capsys, "ord", "cmp", "w^2", "w*5")[1] == "w^2 > w*5\n"
    assert run(capsys, "ord", "indecomposable", "w^3")[1] == "true\n"
    assert run(capsys, "ord", "indecomposable", "w*2 + 3")[1] == "false (w + w + 3)\n"


def test_json_envelope(capsys):
    status, out, _ = run(capsys, "--format", "json", "ord", "cmp", "w", "5")
    reply = json.loads(out)
    assert status == 0
    assert reply["type"] == "ord.cmp.result"
    assert reply["payload"]["order"] == "greater"
    assert reply["payload"]["natural_sum"] == "w + 5"
    assert reply["payload"]["ordinal_sum"] == "w + 5"


def test_options_after_subcommand(capsys):
    status, out, _ = run(capsys, "ord", "eval", "1 + w", "--format", "json")
    assert status == 0
    assert json.loads(out)["payload"]["value"] == "w"


def test_ring_norm(capsys):
    status, out, _ = run(capsys, "--field", "q", "ring", "norm", "x[5,0]*x[1,0] - x[3,0]^2")
    assert (status, out) == (0, "5\n")


def test_ring_norm_json(capsys):
    _, out, _ = run(capsys, "--format", "json", "ring", "norm", "x[2,0]*x[w,0]", "--alpha", "2")
    payload = json.loads(out)["payload"]
    assert payload["norm"] == "w + 2"
    assert payload["sub"] == ["2", "w"]
    assert payload["unit"] is False
    assert len(payload["factors"]) == 2


def test_ring_divide(capsys):
    status, out, _ = run(capsys, "--format", "json", "ring", "divide", "x[2,0]", "x[1,0]")
    payload = json.loads(out)["payload"]
    assert status == 0
    assert payload["branch"] == "general"
    assert payload["divisor_norm"] == "1"
    assert payload["remainder_norm"] == "0"
    assert payload["adjoined"]["name"] == "y2"
    assert payload["adjoined"]["subs"] == ["0", "1", "2"]


def test_ring_gcd(capsys):
    status, out, _ = run(capsys, "ring", "gcd", "x[1,0]*x[2,0]", "x[1,0]")
    assert status == 0
    assert out.splitlines()[-1] == "gcd = x[1,0]"


def test_demo_nonmult(capsys):
    status, out, _ = run(capsys, "ring", "demo-nonmult", "2")
    assert status == 0
    assert out == "psi(z^3) = 2^3 = 8 < 27 = phi(z^3) = 27\n"


def test_demo_monoid(capsys):
    status, out, _ = run(capsys, "--variant", "z", "ring", "demo-monoid", "z^2*x[1,0]")
    assert (status, out) == (0, "w*2 + 1\n")


def test_ring_run(capsys, tmp_path):
    script = tmp_path / "session.txt"
    script.write_text("# quotient variables persist between lines\n\ndivide x[2,0] x[1,0]\nnorm y2\n")
    status, out, _ = run(capsys, "ring", "run", str(script))
    assert status == 0
    assert out.startswith("> divide x[2,0] x[1,0]\n")
    assert out.endswith("> norm y2\n2\n")


def test_ring_run_counts_failures(capsys, tmp_path):
    script = tmp_path / "session.txt"
    script.write_text("norm x[1,0]\nbogus 1\nnorm 0\n")
    status, out, _ = run(capsys, "--format", "json", "ring", "run", str(script))
    payload = json.loads(out)["payload"]
    assert status == 1
    assert payload["failed"] == 2
    assert [e["type"] for e in payload["entries"]] == ["ring.norm.result", "error", "error"]
    assert payload["entries"][1]["reply"]["code"] == "invalid-argument"
    assert payload["entries"][2]["reply"]["code"] == "zero-norm"


def test_motzkin_stratify(capsys):
    status, out, _ = run(capsys, "motzkin", "stratify", "--model", "int:2")
    assert status == 0
    assert out == "1\t0\n-1\t0\n2\t1\n-2\t1\n"


def test_motzkin_stratify_json(capsys):
    _, out, _ = run(capsys, "--format", "json", "motzkin", "stratify", "--model", "int:16")
    payload = json.loads(out)["payload"]
    assert payload["rho"] == "5"
    assert payload["layer_sizes"] == [2, 4, 8, 16, 2]
    assert payload["type_ok"] is True
    assert payload["violations"] == []


def test_motzkin_lenstra(capsys):
    status, out, _ = run(capsys, "motzkin", "lenstra", "--model", "poly:2:3", "--samples", "50")
    assert status == 0
    checked, skipped = (int(w.strip(",")) for w in out.split()[1::2])
    assert checked + skipped == 50


def test_motzkin_limit(capsys):
    status, _, err = run(capsys, "--max-elements", "10", "motzkin", "stratify", "--model", "int:16")
    assert status == 1
    assert err.startswith("error [model-too-large]")


def test_check_suite(capsys):
    status, out, _ = run(capsys, "check", "hessenberg", "--scale", "0.05")
    assert status == 0
    assert out.startswith("hessenberg: ")
    assert out.rstrip().endswith("checks, ok")


def test_schema(capsys):
    status, out, _ = run(capsys, "schema")
    catalog = json.loads(out)
    assert status == 0
    assert "ring.divide" in catalog["commands"]
    assert "error" in catalog["replies"]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["ord", "eval", "w^"], "ordinal-syntax"),
        (["ring", "norm", "x[1,0"], "element-syntax"),
        (["--alpha", "0", "ring", "norm", "x[1,0]"], "invalid-config"),
        (["check", "--scale", "2"], "invalid-config"),
    ],
)
def test_usage_errors(capsys, argv: list[str], code: str):
    status, out, err = run(capsys, *argv)
    assert status == 2
    assert out == ""
    assert err.startswith(f"error [{code}]")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["ring", "divide", "x[1,0]", "0"], "zero-divisor"),
        (["ring", "norm", "x[w,0]"], "out-of-range"),
        (["ring", "norm", "0"], "zero-norm"),
        (["ring", "adjoin", "x[1,0]", "x[2,0]"], "ineligible-pair"),
        (["ring", "demo-monoid", "x[1,0]"], "variant"),
    ],
)
def test_domain_errors(capsys, argv: list[str], code: str):
    status, _, err = run(capsys, *argv)
    assert status == 1
    assert err.startswith(f"error [{code}]")


def test_argument_errors(capsys):
    assert run(capsys, "ord")[0] == 2
    assert run(capsys, "ring", "demo-nonmult", "two")[0] == 2
    assert run(capsys, "--alpha", "w^", "ring", "norm", "x[1,0]")[0] == 2


def test_error_envelope_json(capsys):
    status, out, _ = run(capsys, "--format", "json", "ring", "norm", "0")
    reply = json.loads(out)
    assert status == 1
    assert reply["type"] == "error"
    assert reply["payload"] == {
        "code": "zero-norm",
        "message": "the norm of 0 is undefined",
        "status": 1,
    }


def test_ring_norm_encodes_the_element(capsys):
    _, out, _ = run(
        capsys, "--format", "json", "--alpha", "2", "ring", "norm", "x[2,0]*x[w,0] + 1"
    )
    encoded = json.loads(out)["payload"]["encoded"]
    assert encoded["num"] == [
        {"monomial": [[0, 1], [1, 1]], "coeff": "1"},
        {"monomial": [], "coeff": "1"},
    ]
    assert encoded["den"] == [{"monomial": [], "coeff": "1"}]
    assert encoded["variables"] == [{"id": 0, "name": "x[2,0]"}, {"id": 1, "name": "x[w,0]"}]


def test_ring_divide_encodes_every_element(capsys):
    _, out, _ = run(capsys, "--format", "json", "ring", "divide", "x[2,0]", "x[1,0]")
    encoded = json.loads(out)["payload"]["encoded"]
    assert set(encoded) == {"numerator", "divisor", "quotient", "remainder"}
    assert encoded["divisor"]["num"] == [{"monomial": [[1, 1]], "coeff": "1"}]
    assert {"id": 2, "name": "y2"} in encoded["quotient"]["variables"]


def test_ring_gcd_encodes_the_gcd(capsys):
    _, out, _ = run(capsys, "--format", "json", "ring", "gcd", "x[1,0]*x[2,0]", "x[1,0]")
    payload = json.loads(out)["payload"]
    assert payload["encoded_gcd"]["variables"] == [{"id": 0, "name": "x[1,0]"}]
    assert all("encoded" in step for step in payload["steps"])


REPLY_MODELS = {route.reply_command: route.reply_payload for route in service.router.routes}
REPLY_MODELS["error"] = ErrorMessage


@pytest.mark.parametrize(
    "argv",
    [
        ["ord", "eval", "w (+) w"],
        ["ord", "cmp", "w", "5"],
        ["ord", "indecomposable", "w*2 + 3"],
        ["ring", "norm", "x[1,0]*x[2,0]"],
        ["ring", "divide", "x[2,0]", "x[1,0]"],
        ["ring", "gcd", "x[1,0]*x[2,0]", "x[1,0]"],
        ["ring", "adjoin", "x[2,0]", "x[1,0]"],
        ["ring", "demo-nonmult", "2"],
        ["--variant", "z", "ring", "demo-monoid", "z^2*x[1,0]"],
        ["ring", "run", "SCRIPT"],
        ["motzkin", "stratify", "--model", "int:16"],
        ["motzkin", "lenstra", "--model", "poly:2:3", "--samples", "50"],
        ["check", "hessenberg", "--scale", "0.05"],
        ["schema"],
        ["ring", "norm", "0"],
    ],
)
def test_json_output_matches_the_catalogue(capsys, tmp_path, argv: list[str]):
    script = tmp_path / "session.txt"
    script.write_text("divide x[2,0] x[1,0]\nnorm y2\nbogus\n")
    argv = [str(script) if a == "SCRIPT" else a for a in argv]
    _, out, _ = run(capsys, "--format", "json", *argv)
    kind = json.loads(out)["type"]
    reply = REPLY_MODELS[kind].model_validate_json(out)
    components = service.schema()["components"]
    ref = components["messages"][kind]["payload"]["$ref"]
    envelope = components["schemas"][ref.rsplit("/", 1)[-1]]
    payload = envelope["properties"]["payload"]
    refs = [option.get("$ref") for option in payload.get("anyOf", [payload])]
    assert f"#/components/schemas/{type(reply.payload).__name__}" in refs


@pytest.mark.parametrize(
    "argv",
    [
        ["ring", "gcd", "x[1,0]*x[2,0] + x[3,0]", "x[2,0]*x[3,0]"],
        ["--format", "json", "ring", "gcd", "x[1,0]*x[2,0] + x[3,0]", "x[2,0]*x[3,0]"],
        ["check", "descent", "--seed", "42", "--scale", "0.05"],
        ["--format", "json", "check", "all", "--seed", "7", "--scale", "0.05"],
    ],
)
def test_output_is_identical_across_runs(capsys, argv: list[str]):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert first[1]
