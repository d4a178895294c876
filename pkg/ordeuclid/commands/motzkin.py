from pydantic import BaseModel

from ordeuclid.application import Session
from ordeuclid.motzkin import (
    RingModel,
    audit,
    lenstra_check,
    stratify,
    type_check,
)
from ordeuclid.ordinals import Ordinal
from ordeuclid.routing import CommandRouter

router = CommandRouter(prefix="motzkin.", tags=["motzkin"])


class ModelPayload(BaseModel):
    model: str


class LenstraPayload(BaseModel):
    model: str
    samples: int = 0


class RankRow(BaseModel):
    element: str
    rank: int


class StrataReply(BaseModel):
    model: str
    rho: Ordinal
    layer_sizes: list[int]
    type_ok: bool
    violations: list[str]
    ranks: list[RankRow]

    def as_text(self) -> str:
        return "\n".join(f"{row.element}\t{row.rank}" for row in self.ranks)

    def exit_status(self) -> int:
        return 1 if self.violations else 0


class LenstraReply(BaseModel):
    model: str
    checked: int
    skipped: int
    violations: list[tuple[str, str]]

    def as_text(self) -> str:
        lines = [f"checked {self.checked}, skipped {self.skipped}"]
        lines += [f"violation: x = {x}, y = {y}" for x, y in self.violations]
        return "\n".join(lines)

    def exit_status(self) -> int:
        return 1 if self.violations else 0


@router.command("stratify", reply="stratify.result")
def stratify_model(payload: ModelPayload, session: Session) -> StrataReply:
    """
    Motzkin stratification of int:<N> or poly:<q>:<D>, with euclid and minimality audits.
    """
    model = RingModel.parse(payload.model)
    result = stratify(model, max_elements=session.max_elements)
    euclid, minimal = audit(result)
    violations = [f"euclid: {d}" for d in euclid]
    violations += [f"minimality: {d}" for d in minimal]
    violations += [f"unassigned: {result.arithmetic.format(x)}" for x in result.unassigned]
    return StrataReply(
        model=model.label(),
        rho=result.rho,
        layer_sizes=[len(layer) for layer in result.layers],
        type_ok=type_check(result),
        violations=violations,
        ranks=[RankRow(element=e, rank=r) for e, r in result.rows()],
    )


@router.command("lenstra", reply="lenstra.result")
def lenstra_growth(payload: LenstraPayload, session: Session) -> LenstraReply:
    """
    Check rank(xy) >= rank(x) + rank(y) on all pairs, or on seeded samples.
    """
    model = RingModel.parse(payload.model)
    result = stratify(model, max_elements=session.max_elements)
    report = lenstra_check(result, samples=payload.samples, seed=session.seed)
    return LenstraReply(
        model=model.label(),
        checked=report.checked,
        skipped=report.skipped,
        violations=report.violations,
    )
