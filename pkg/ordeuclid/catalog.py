from enum import Enum

from pydantic import BaseModel, Field


class Tag(BaseModel):
    name: str | Enum


class CommandDoc(BaseModel):
    commandId: str
    name: str
    title: str
    summary: str | None = None
    description: str
    contentType: str = "application/json"
    payload: dict | None = None
    x_reply: dict | None = Field(default=None, alias="x-reply")
    tags: list[Tag] | None = None


class Info(BaseModel):
    title: str
    version: str
    description: str | None = None


class Components(BaseModel):
    schemas: dict
    messages: dict[str, CommandDoc]


class Catalog(BaseModel):
    catalog: str = "1.0.0"
    info: Info
    commands: list[str]
    replies: list[str]
    components: Components
