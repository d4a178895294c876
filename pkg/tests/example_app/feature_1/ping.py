from ordeuclid import CommandRouter

router = CommandRouter(prefix="feature_1.")


@router.command("ping", reply="pong")
def send_ping():
    return
