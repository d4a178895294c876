import inspect
import typing
from enum import Enum
from typing import Generic, TypeVar, Union

from pydantic import BaseModel

PayloadT = TypeVar("PayloadT")
CommandTypeT = TypeVar("CommandTypeT", str, int)


class _Msg(BaseModel, Generic[CommandTypeT]):
    type: CommandTypeT | str


class _MsgWithPayload(_Msg, Generic[CommandTypeT, PayloadT]):
    payload: PayloadT | None


class Message(_MsgWithPayload, Generic[CommandTypeT, PayloadT]):
    payload: PayloadT | None = None


MessageT = Union[_Msg, _MsgWithPayload]


class NoMatchingCommand(Exception):
    ...


def get_name(endpoint: typing.Callable) -> str:
    if inspect.isroutine(endpoint) or inspect.isclass(endpoint):
        return endpoint.__name__
    return endpoint.__class__.__name__


def _typed_parameters(
    handler: typing.Callable[..., typing.Any]
) -> tuple[dict[str, inspect.Parameter], typing.Any]:
    hints = typing.get_type_hints(handler)
    signature = inspect.signature(handler)
    parameters = {
        name: p.replace(annotation=hints.get(name, p.annotation))
        for name, p in signature.parameters.items()
    }
    return parameters, hints.get("return")


class Command:
    def __init__(
        self,
        command: str,
        handler: typing.Callable[..., typing.Any],
        *,
        name: str | None = None,
        tags: list[str | Enum] | None = None,
        summary: str | None = None,
        description: str | None = None,
        reply_command: str | None = None,
    ) -> None:
        self.command = command
        self.handler = handler
        self.name = get_name(handler) if name is None else name
        self.tags = tags or []
        self.summary = summary
        self.description = description or inspect.cleandoc(self.handler.__doc__ or "")
        self.description = self.description.split("\f")[0].strip()
        self.parameters, self.response_model = _typed_parameters(handler)
        if self.response_model is type(None):
            self.response_model = None
        self.reply_command = reply_command
        if self.response_model is not None:
            assert (
                self.reply_command is not None
            ), "Commands with a response model defined must include a reply"

        cmd_t = typing.Literal[self.command]  # type: ignore
        reply_t = typing.Literal[self.reply_command or self.command]  # type: ignore

        self.payload = _Msg[cmd_t]
        self.reply_payload = _Msg[reply_t]

        if (p := self.parameters.get("payload", None)) is not None:
            self.payload = _MsgWithPayload[cmd_t, p.annotation]

        if self.response_model is not None:
            self.reply_payload = _MsgWithPayload[reply_t, self.response_model]

    def matches(self, command: str) -> bool:
        return self.command == command

    def convert_params(
        self,
        message: Message,
        params: dict[str, typing.Any],
    ) -> dict[str, typing.Any]:
        converted_params = {}

        for k, v in self.parameters.items():
            if k == "payload" and issubclass(v.annotation, BaseModel):
                converted_params[k] = v.annotation.model_validate(message.payload or {})
            else:
                if k not in params:
                    raise RuntimeError(f"Missing parameter {k} of type {v.annotation}")
                converted_params[k] = params.get(k)
        if not (self.parameters.keys() == converted_params.keys()):
            raise RuntimeError("Missing parameters in function call")
        return converted_params


class CommandRouter:
    def __init__(
        self,
        *,
        prefix: str = "",
        tags: list[str | Enum] | None = None,
        routes: list[Command] | None = None,
    ) -> None:
        self.prefix = prefix
        self.tags = tags or []
        self.routes = routes or []

    def add_route(
        self,
        command: str,
        handler: typing.Callable[..., typing.Any],
        *,
        name: str | None = None,
        tags: list[str | Enum] | None = None,
        summary: str | None = None,
        description: str | None = None,
        reply_command: str | None = None,
    ) -> None:
        existing_commands = [h.command for h in self.routes] + [
            h.reply_command for h in self.routes if h.reply_command is not None
        ]
        assert (
            command not in existing_commands
        ), f"handler with command '{command}' already added"
        assert (
            reply_command not in existing_commands
        ), f"handler with command '{reply_command}' already added"
        current_tags = self.tags.copy()
        if tags:
            current_tags.extend(tags)
        route = Command(
            command=command,
            handler=handler,
            name=name,
            summary=summary,
            description=description,
            tags=current_tags,
            reply_command=reply_command,
        )
        self.routes.append(route)

    def include_router(
        self,
        router: "CommandRouter",
        *,
        prefix: str = "",
    ) -> None:
        for route in router.routes:
            reply = None
            if route.reply_command is not None:
                reply = f"{prefix}{router.prefix}{route.reply_command}"
            self.add_route(
                command=f"{prefix}{router.prefix}{route.command}",
                handler=route.handler,
                name=route.name,
                tags=route.tags,
                summary=route.summary,
                description=route.description,
                reply_command=reply,
            )

    def command(
        self,
        command: str,
        name: str | None = None,
        tags: list[str | Enum] | None = None,
        summary: str | None = None,
        description: str | None = None,
        reply: str | None = None,
    ) -> typing.Callable[
        [typing.Callable[..., typing.Any]], typing.Callable[..., typing.Any]
    ]:
        def decorator(
            func: typing.Callable[..., typing.Any],
        ) -> typing.Callable[..., typing.Any]:
            self.add_route(
                command=command,
                handler=func,
                name=name,
                tags=tags,
                summary=summary,
                description=description,
                reply_command=reply,
            )
            return func

        return decorator

    def match(self, command: str) -> Command:
        for route in self.routes:
            if route.matches(command):
                return route
        raise NoMatchingCommand(f"no command named '{command}'")
