import pytest

from ordeuclid.application import Session
from ordeuclid.ordinals import parse
from ordeuclid.routing import CommandRouter, Message, NoMatchingCommand
from tests.example_app.feature_2 import notes
from tests.example_app.service import service


@pytest.fixture(scope="function")
def session() -> Session:
    return Session()


def test_ping(session: Session):
    reply, status = service.dispatch(Message(type="ping"), session=session)
    assert status == 0
    assert reply.model_dump() == {"type": "pong"}

    reply, _ = service.dispatch(Message(type="feature_1.ping"), session=session)
    assert reply.model_dump() == {"type": "feature_1.pong"}


def test_payload_and_reply(session: Session):
    message = Message(type="feature_0.tally", payload={"terms": ["w", 1, "w^2"]})
    reply, status = service.dispatch(message, session=session)
    assert status == 0
    assert reply.type == "feature_0.tally.result"
    assert reply.payload.total == parse("w^2 + w + 1")
    assert reply.model_dump(mode="json") == {
        "type": "feature_0.tally.result",
        "payload": {"total": "w^2 + w + 1", "seed": 1729},
    }


def test_session_is_passed_through():
    message = Message(type="feature_0.tally", payload={"terms": []})
    reply, _ = service.dispatch(message, session=Session(seed=3))
    assert reply.payload.seed == 3
    assert reply.payload.total == 0


def test_command_without_reply(session: Session):
    reply, status = service.dispatch(
        Message(type="app.feature_2.note", payload={"message": "hello"}), session=session
    )
    assert (reply, status) == (None, 0)
    assert notes.NOTES[-1] == "hello"


def test_unknown_commands(session: Session):
    with pytest.raises(NoMatchingCommand, match="no command named"):
        service(Message(type="feature_0.not_a_command"), session=session)
    reply, status = service.dispatch(Message(type="feature_2.note"), session=session)
    assert status == 2
    assert reply.payload.code == "no-matching-command"


@pytest.mark.parametrize(
    "payload,code,status",
    [
        ({"element": "x[1,0"}, "element-syntax", 2),
        ({"element": "x[w,0]"}, "out-of-range", 1),
        ({"element": "0"}, "zero-norm", 1),
        ({}, "invalid-config", 2),
    ],
)
def test_errors_become_replies(session: Session, payload: dict, code: str, status: int):
    reply, got = service.dispatch(Message(type="feature_0.norm", payload=payload), session=session)
    assert got == status
    assert reply.type == "error"
    assert reply.payload.code == code
    assert reply.payload.status == status


def test_invalid_ordinal_payload(session: Session):
    message = Message(type="feature_0.tally", payload={"terms": ["w^"]})
    reply, status = service.dispatch(message, session=session)
    assert (reply.payload.code, status) == ("invalid-config", 2)


def test_router_rejects_duplicates():
    router = CommandRouter(prefix="dup.")

    @router.command("a", reply="a.result")
    def first() -> None:
        return None

    with pytest.raises(AssertionError, match="already added"):

        @router.command("a.result")
        def second() -> None:
            return None


def test_reply_required_with_response_model():
    router = CommandRouter()
    with pytest.raises(AssertionError, match="must include a reply"):

        @router.command("value")
        def value() -> int:
            return 1


def test_catalog(session: Session):
    catalog = service.schema()
    assert catalog["info"]["title"] == "ordeuclid - example"
    assert catalog["commands"] == [
        "feature_0.tally",
        "feature_0.norm",
        "feature_1.ping",
        "app.feature_2.note",
        "ping",
    ]
    assert catalog["replies"] == [
        "feature_0.tally.result",
        "feature_0.norm.result",
        "feature_1.pong",
        "pong",
        "error",
    ]
    messages = catalog["components"]["messages"]
    tally = messages["feature_0.tally"]
    assert tally["x-reply"] == {"$ref": "#/components/messages/feature_0.tally.result"}
    assert tally["description"] == "Natural sum of the given ordinals."
    assert tally["title"] == "Tally Terms"
    assert messages["app.feature_2.note"]["tags"] == [{"name": "notes"}]
    assert "x-reply" not in messages["app.feature_2.note"]
    schemas = catalog["components"]["schemas"]
    assert schemas["TallyReply"]["properties"]["total"]["type"] == "string"
