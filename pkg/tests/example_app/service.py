from ordeuclid.application import Workbench

from .feature_0 import tally
from .feature_1 import ping
from .feature_2 import notes

service = Workbench(title="ordeuclid - example")

service.include_router(tally.router)
service.include_router(ping.router)
service.include_router(notes.router, prefix="app.")


@service.command("ping", reply="pong")
def application_ping():
    return
