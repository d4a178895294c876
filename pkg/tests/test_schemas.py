from ordeuclid.application import ERROR_CODES, ErrorReply, Session
from ordeuclid.routing import Message
from ordeuclid.service import service

COMMANDS = [
    "ord.eval",
    "ord.cmp",
    "ord.indecomposable",
    "ring.norm",
    "ring.divide",
    "ring.gcd",
    "ring.adjoin",
    "ring.demo-nonmult",
    "ring.demo-monoid",
    "ring.run",
    "motzkin.stratify",
    "motzkin.lenstra",
    "check.run",
    "schema",
]


def test_every_command_is_catalogued():
    catalog = service.schema()
    assert catalog["info"]["title"] == "ordeuclid"
    assert catalog["commands"] == COMMANDS
    assert catalog["replies"] == [f"{c}.result" for c in COMMANDS] + ["error"]
    messages = catalog["components"]["messages"]
    for command in COMMANDS:
        assert messages[command]["x-reply"] == {
            "$ref": f"#/components/messages/{command}.result"
        }
        assert "$ref" in messages[f"{command}.result"]["payload"]


def test_reply_models_are_defined():
    schemas = service.schema()["components"]["schemas"]
    for name in ("DivisionReply", "TraceReply", "StrataReply", "CheckReply", "ErrorReply"):
        assert name in schemas
    division = schemas["DivisionReply"]["properties"]
    assert division["divisor_norm"]["type"] == "string"
    assert set(schemas["ErrorReply"]["required"]) == {"code", "message", "status"}


def test_schema_command_returns_the_catalogue():
    reply, status = service.dispatch(Message(type="schema"), session=Session())
    assert status == 0
    assert reply.type == "schema.result"
    assert reply.payload.catalog == service.schema()


def test_error_codes_are_unique():
    codes = [code for _, code, _ in ERROR_CODES]
    assert len(codes) == len(set(codes))
    assert {status for _, _, status in ERROR_CODES} == {1, 2}


def test_error_reply_text():
    error = ErrorReply(code="zero-norm", message="the norm of 0 is undefined", status=1)
    assert error.as_text() == "error [zero-norm]: the norm of 0 is undefined"
