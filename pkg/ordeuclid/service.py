import json

from pydantic import BaseModel

from ordeuclid import __version__
from ordeuclid.application import Workbench
from ordeuclid.commands import check, motzkin, ordinal, ring

service = Workbench(
    title="ordeuclid",
    version=__version__,
    description="Transfinite Euclidean domains, their ordinal norms and Motzkin strata.",
)

service.include_router(ordinal.router)
service.include_router(ring.router)
service.include_router(motzkin.router)
service.include_router(check.router)


class SchemaReply(BaseModel):
    catalog: dict

    def as_text(self) -> str:
        return json.dumps(self.catalog, indent=2)


@service.command("schema", reply="schema.result")
def application_schema(app: Workbench) -> SchemaReply:
    """
    JSON schema catalogue of every command payload and reply.
    """
    return SchemaReply(catalog=app.schema())
