from dataclasses import dataclass
from typing import Any, Hashable, Literal, Sequence

from pydantic import BaseModel
from pydantic.json_schema import GenerateJsonSchema
from pydantic_core import CoreSchema

from ordeuclid import catalog
from ordeuclid.routing import Command

REF_SCHEMAS_TEMPLATE = "#/components/schemas/{model}"
REF_MESSAGES_TEMPLATE = "#/components/messages/{message}"


@dataclass
class Field:
    key: Hashable
    json_mode: Literal["validation", "serialization"]
    core_schema: CoreSchema


def get_fields(
    commands: Sequence[Command],
    extra_messages: dict[str, type[BaseModel]] | None = None,
) -> list[Field]:
    fields: list[Field] = []
    for route in commands:
        fields.append(
            Field(
                key=route.command,
                json_mode="validation",
                core_schema=route.payload.__pydantic_core_schema__,
            )
        )
        if route.reply_command is not None:
            fields.append(
                Field(
                    key=route.reply_command,
                    json_mode="serialization",
                    core_schema=route.reply_payload.__pydantic_core_schema__,
                )
            )
    for key, model in (extra_messages or {}).items():
        fields.append(
            Field(key=key, json_mode="serialization", core_schema=model.__pydantic_core_schema__)
        )
    return fields


def get_messages(
    commands: Sequence[Command],
    field_mapping: dict[tuple[Hashable, Literal["validation", "serialization"]], dict],
    extra_messages: dict[str, type[BaseModel]] | None = None,
) -> tuple[dict[str, catalog.CommandDoc], list[str], list[str]]:
    messages = {}
    requests = []
    replies = []

    for route in commands:
        msg = catalog.CommandDoc(
            commandId=route.command,
            name=route.name,
            title=" ".join(route.name.split("_")).title(),
            summary=route.summary,
            description=route.description,
            tags=[catalog.Tag(name=t) for t in route.tags],
        )
        to_update: dict[str, Any] = {
            "payload": field_mapping.get((route.command, "validation"), None),
        }
        if route.reply_command is not None:
            to_update["x_reply"] = {
                "$ref": REF_MESSAGES_TEMPLATE.format(message=route.reply_command)
            }
            replies.append(route.reply_command)
            messages[route.reply_command] = msg.model_copy(
                update={
                    "commandId": route.reply_command,
                    "payload": field_mapping.get(
                        (route.reply_command, "serialization"), None
                    ),
                }
            )
        requests.append(route.command)
        messages[route.command] = msg.model_copy(update=to_update)
    for key in extra_messages or {}:
        replies.append(key)
        messages[key] = catalog.CommandDoc(
            commandId=key,
            name=key,
            title=key.title(),
            description="",
            payload=field_mapping.get((key, "serialization"), None),
        )
    return messages, requests, replies


def get_catalog(
    commands: Sequence[Command],
    title: str = "ordeuclid",
    version: str = "0.1.0",
    description: str | None = None,
    extra_messages: dict[str, type[BaseModel]] | None = None,
) -> dict[str, Any]:
    """JSON schema catalogue of every command payload and reply envelope."""
    schema_generator = GenerateJsonSchema(ref_template=REF_SCHEMAS_TEMPLATE)

    fields = get_fields(commands, extra_messages)
    field_mapping, definitions = schema_generator.generate_definitions(
        inputs=[(f.key, f.json_mode, f.core_schema) for f in fields]
    )
    messages, requests, replies = get_messages(commands, field_mapping, extra_messages)
    output = catalog.Catalog(
        info=catalog.Info(title=title, version=version, description=description or ""),
        commands=requests,
        replies=replies,
        components=catalog.Components(schemas=definitions, messages=messages),
    )
    return output.model_dump(by_alias=True, exclude_none=True)
