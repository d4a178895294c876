import typing

from pydantic import BaseModel

from ordeuclid.ordinals import (
    Ordinal,
    Ordering,
    cmp,
    decompose,
    evaluate,
    is_indecomposable,
    nat_sum,
    ord_add,
)
from ordeuclid.routing import CommandRouter

router = CommandRouter(prefix="ord.", tags=["ordinals"])

_SYMBOLS = {Ordering.LESS: "<", Ordering.EQUAL: "=", Ordering.GREATER: ">"}


class OrdinalExpression(BaseModel):
    expr: str


class OrdinalPair(BaseModel):
    a: str
    b: str


class OrdinalValue(BaseModel):
    expr: str
    value: Ordinal
    finite: bool

    def as_text(self) -> str:
        return str(self.value)


class Comparison(BaseModel):
    a: Ordinal
    b: Ordinal
    order: typing.Literal["less", "equal", "greater"]
    ordinal_sum: Ordinal
    natural_sum: Ordinal

    def as_text(self) -> str:
        symbol = _SYMBOLS[Ordering[self.order.upper()]]
        return f"{self.a} {symbol} {self.b}"


class Indecomposability(BaseModel):
    value: Ordinal
    indecomposable: bool
    split: tuple[Ordinal, Ordinal] | None = None

    def as_text(self) -> str:
        if self.indecomposable:
            return "true"
        if self.split is None:
            return "false"
        return f"false ({self.split[0]} + {self.split[1]})"


@router.command("eval", reply="eval.result")
def evaluate_ordinal(payload: OrdinalExpression) -> OrdinalValue:
    """
    Evaluate ordinal arithmetic in Cantor normal form; `(+)` is the natural sum.
    """
    value = evaluate(payload.expr)
    return OrdinalValue(expr=payload.expr, value=value, finite=value.is_finite())


@router.command("cmp", reply="cmp.result")
def compare_ordinals(payload: OrdinalPair) -> Comparison:
    """
    Compare two ordinals and report both of their sums.
    """
    a, b = evaluate(payload.a), evaluate(payload.b)
    return Comparison(
        a=a,
        b=b,
        order=cmp(a, b).name.lower(),
        ordinal_sum=ord_add(a, b),
        natural_sum=nat_sum(a, b),
    )


@router.command("indecomposable", reply="indecomposable.result")
def check_indecomposable(payload: OrdinalExpression) -> Indecomposability:
    """
    Decide whether an ordinal is a power of w; otherwise show a split into smaller summands.
    """
    value = evaluate(payload.expr)
    return Indecomposability(
        value=value, indecomposable=is_indecomposable(value), split=decompose(value)
    )
