import logging

from pydantic import BaseModel

from ordeuclid import CommandRouter

router = CommandRouter(prefix="feature_2.", tags=["notes"])

NOTES: list[str] = []


class NotePayload(BaseModel):
    message: str


@router.command("note")
def record_note(payload: NotePayload) -> None:
    logging.info(payload.message)
    NOTES.append(payload.message)
