import logging
import typing

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationError

from ordeuclid.eucworld import (
    DescentViolation,
    GeneratorRangeError,
    IneligiblePairError,
    Ring,
    RingConfig,
    VariantError,
    ZeroNormError,
)
from ordeuclid.factoring import FactorBudget, FactorizationIncomplete
from ordeuclid.motzkin import DEFAULT_MAX_ELEMENTS, ModelTooLargeError
from ordeuclid.ordinals import OrdinalSyntaxError
from ordeuclid.parsing import ElementSyntaxError
from ordeuclid.polys import MixedRingError
from ordeuclid.routing import (
    CommandRouter,
    Message,
    MessageT,
    NoMatchingCommand,
    _MsgWithPayload,
)
from ordeuclid.schemas import get_catalog

DEFAULT_SEED = 1729

DOMAIN_ERROR = 1
USAGE_ERROR = 2

# first match wins, so subclasses precede their bases
ERROR_CODES: list[tuple[type[BaseException], str, int]] = [
    (OrdinalSyntaxError, "ordinal-syntax", USAGE_ERROR),
    (ElementSyntaxError, "element-syntax", USAGE_ERROR),
    (ValidationError, "invalid-config", USAGE_ERROR),
    (NoMatchingCommand, "no-matching-command", USAGE_ERROR),
    (FactorizationIncomplete, "factorization-incomplete", DOMAIN_ERROR),
    (ZeroNormError, "zero-norm", DOMAIN_ERROR),
    (ZeroDivisionError, "zero-divisor", DOMAIN_ERROR),
    (IneligiblePairError, "ineligible-pair", DOMAIN_ERROR),
    (GeneratorRangeError, "out-of-range", DOMAIN_ERROR),
    (VariantError, "variant", DOMAIN_ERROR),
    (ModelTooLargeError, "model-too-large", DOMAIN_ERROR),
    (DescentViolation, "descent-violation", DOMAIN_ERROR),
    (MixedRingError, "mixed-ring", DOMAIN_ERROR),
    (ValueError, "invalid-argument", USAGE_ERROR),
]
ERROR_TYPES = tuple(t for t, _, _ in ERROR_CODES)


class ErrorReply(BaseModel):
    code: str
    message: str
    status: int

    def as_text(self) -> str:
        return f"error [{self.code}]: {self.message}"


ErrorMessage = _MsgWithPayload[typing.Literal["error"], ErrorReply]


class Session(BaseModel):
    """Configuration shared by every command of one invocation, plus the ring it builds."""

    model_config = ConfigDict(validate_assignment=True)

    ring_config: RingConfig = RingConfig()
    budget: FactorBudget = FactorBudget()
    seed: int = DEFAULT_SEED
    format: typing.Literal["text", "json"] = "text"
    max_elements: int = Field(default=DEFAULT_MAX_ELEMENTS, ge=1)

    _ring: Ring | None = PrivateAttr(default=None)

    def ring(self) -> Ring:
        if self._ring is None:
            self._ring = Ring(self.ring_config, self.budget)
        return self._ring


def run_handler_function(
    *,
    handler: typing.Callable[..., typing.Any],
    values: dict[str, typing.Any],
) -> typing.Any:
    return handler(**values)


class Workbench:
    def __init__(
        self,
        *,
        title: str = "ordeuclid",
        version: str = "0.1.0",
        description: str | None = None,
        debug: bool = False,
    ) -> None:
        self.title = title
        self.version = version
        self.description = description
        self.debug = debug
        self.router = CommandRouter()
        self.catalog_schema: dict | None = None

    def log(self, msg: str) -> None:
        if self.debug:
            logging.debug(f"{msg} ({len(self.router.routes)} commands)")

    def include_router(
        self,
        router: CommandRouter,
        *,
        prefix: str = "",
    ) -> None:
        self.router.include_router(router, prefix=prefix)

    def command(
        self,
        command: str,
        name: str | None = None,
        summary: str | None = None,
        description: str | None = None,
        reply: str | None = None,
    ) -> typing.Callable[
        [typing.Callable[..., typing.Any]], typing.Callable[..., typing.Any]
    ]:
        return self.router.command(
            command, name=name, summary=summary, description=description, reply=reply
        )

    def __call__(self, message: Message, **params: typing.Any) -> MessageT | None:
        route = self.router.match(message.type)
        values = route.convert_params(message=message, params={"app": self, **params})
        self.log(f"running {route.command}")
        result = run_handler_function(handler=route.handler, values=values)
        if route.reply_command is None:
            return None
        return route.reply_payload.model_validate(
            {"type": route.reply_command, "payload": result}
        )

    def handle_exception(self, exc: BaseException) -> tuple[MessageT, int]:
        self.log(f"command failed: {exc!r}")
        for error_type, code, status in ERROR_CODES:
            if isinstance(exc, error_type):
                break
        else:
            raise exc
        if isinstance(exc, ValidationError):
            detail = "; ".join(
                f"{'.'.join(map(str, e['loc'])) or 'value'}: {e['msg']}" for e in exc.errors()
            )
        else:
            detail = str(exc)
        reply = ErrorMessage(
            type="error", payload=ErrorReply(code=code, message=detail, status=status)
        )
        return reply, status

    def dispatch(self, message: Message, **params: typing.Any) -> tuple[MessageT | None, int]:
        """Run one command and map failures to an error reply and exit status."""
        try:
            reply = self(message, **params)
        except ERROR_TYPES as exc:
            return self.handle_exception(exc)
        status = 0
        payload = getattr(reply, "payload", None)
        if payload is not None and hasattr(payload, "exit_status"):
            status = payload.exit_status()
        return reply, status

    def schema(self) -> dict[str, typing.Any]:
        if not self.catalog_schema:
            self.catalog_schema = get_catalog(
                commands=self.router.routes,
                title=self.title,
                version=self.version,
                description=self.description,
                extra_messages={"error": ErrorMessage},
            )
        return self.catalog_schema
