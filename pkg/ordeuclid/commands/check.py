from pydantic import BaseModel, Field

from ordeuclid.application import Session
from ordeuclid.properties import SUITES, SuiteReport, run_suites
from ordeuclid.routing import CommandRouter

router = CommandRouter(prefix="check.", tags=["check"])


class CheckPayload(BaseModel):
    suite: str = "all"
    scale: float = Field(default=1.0, gt=0, le=1)


class CheckReply(BaseModel):
    seed: int
    suites: list[SuiteReport]

    def as_text(self) -> str:
        lines = []
        for report in self.suites:
            verdict = "ok" if not report.violations else f"{len(report.violations)} FAILED"
            lines.append(f"{report.name}: {report.checked} checks, {verdict}")
            lines += [f"  {v}" for v in report.violations]
        return "\n".join(lines)

    def exit_status(self) -> int:
        return 1 if any(r.violations for r in self.suites) else 0


@router.command("run", reply="run.result")
def run_checks(payload: CheckPayload, session: Session) -> CheckReply:
    """
    Run one property suite, or every suite with `all`, from the session seed.
    """
    names = list(SUITES) if payload.suite == "all" else [payload.suite]
    return CheckReply(
        seed=session.seed, suites=run_suites(names, session.seed, payload.scale)
    )
