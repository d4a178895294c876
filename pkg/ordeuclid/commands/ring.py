import shlex
import typing

from pydantic import BaseModel

from ordeuclid.application import ErrorReply, Session, Workbench
from ordeuclid.eucworld import (
    DescentTrace,
    DivisionResult,
    RElement,
    Ring,
    RingConfig,
    nonmult_witness,
)
from ordeuclid.ordinals import Ordinal
from ordeuclid.parsing import parse_element
from ordeuclid.routing import CommandRouter, Message

router = CommandRouter(prefix="ring.", tags=["ring"])


class ElementPayload(BaseModel):
    element: str


class PairPayload(BaseModel):
    n: str
    d: str


class GcdPayload(BaseModel):
    a: str
    b: str


class WitnessPayload(BaseModel):
    k: int


class RunPayload(BaseModel):
    lines: list[str]


class FactorEntry(BaseModel):
    prime: str
    multiplicity: int
    norm: Ordinal
    special: bool


class PolyTerm(BaseModel):
    monomial: list[tuple[int, int]]
    coeff: str


class VariableRef(BaseModel):
    id: int
    name: str


class ElementJson(BaseModel):
    """
    An element as ``num / den`` term lists over registry variable ids. ``variables``
    names every id the two polynomials mention.
    """

    num: list[PolyTerm]
    den: list[PolyTerm]
    variables: list[VariableRef]


class DivisionElements(BaseModel):
    numerator: ElementJson
    divisor: ElementJson
    quotient: ElementJson
    remainder: ElementJson


class NormReply(BaseModel):
    element: str
    encoded: ElementJson
    norm: Ordinal
    unit: bool
    sub: list[Ordinal] | None
    stage: int
    factors: list[FactorEntry]

    def as_text(self) -> str:
        return str(self.norm)


class QuotientVar(BaseModel):
    id: int
    name: str
    stage: int
    subs: list[Ordinal]
    numerator: str
    denominator: str
    special_prime: str
    special_norm: Ordinal

    def as_text(self) -> str:
        subs = ", ".join(map(str, self.subs))
        return (
            f"{self.name} = ({self.numerator}) / ({self.denominator})"
            f"  stage {self.stage}  T = {{{subs}}}  norm({self.special_prime}) = "
            f"{self.special_norm}"
        )


class DivisionReply(BaseModel):
    numerator: str
    divisor: str
    quotient: str
    remainder: str
    divisor_norm: Ordinal
    remainder_norm: Ordinal | None
    branch: typing.Literal["exact", "small", "general"]
    encoded: DivisionElements
    adjoined: QuotientVar | None = None
    gcd_norm: Ordinal | None = None
    special_norm: Ordinal | None = None

    def as_text(self) -> str:
        lines = [
            f"q = {self.quotient}",
            f"r = {self.remainder}",
            f"norm(d) = {self.divisor_norm}",
        ]
        if self.remainder_norm is not None:
            lines.append(f"norm(r) = {self.remainder_norm}")
        if self.adjoined is not None:
            lines.append(self.adjoined.as_text())
        return "\n".join(lines)


class TraceReply(BaseModel):
    a: str
    b: str
    steps: list[DivisionReply]
    gcd: str
    encoded_gcd: ElementJson
    norms: list[Ordinal]

    def as_text(self) -> str:
        lines = []
        for step in self.steps:
            tail = "" if step.remainder_norm is None else f" > {step.remainder_norm}"
            lines.append(
                f"({step.numerator}) = ({step.quotient})*({step.divisor}) + "
                f"({step.remainder})    [{step.divisor_norm}{tail}]"
            )
        lines.append(f"gcd = {self.gcd}")
        return "\n".join(lines)


class NonmultReply(BaseModel):
    k: int
    ell: int
    lhs: int
    rhs: int
    norm_z_ell: Ordinal
    holds: bool

    def as_text(self) -> str:
        return (
            f"psi(z^{self.ell}) = {self.k}^{self.ell} = {self.lhs} < {self.rhs} = "
            f"phi(z^{self.ell}) = {self.norm_z_ell}"
        )


class MonoidReply(BaseModel):
    element: str
    psi: Ordinal
    norm: Ordinal

    def as_text(self) -> str:
        return str(self.psi)


RingReply = typing.Union[
    NormReply, DivisionReply, TraceReply, NonmultReply, MonoidReply, QuotientVar, ErrorReply
]


class RunEntry(BaseModel):
    line: str
    type: str
    reply: RingReply | None = None


class RunReply(BaseModel):
    entries: list[RunEntry]
    failed: int

    def as_text(self) -> str:
        blocks = []
        for entry in self.entries:
            body = entry.reply.as_text() if entry.reply is not None else ""
            blocks.append(f"> {entry.line}\n{body}")
        return "\n".join(blocks)

    def exit_status(self) -> int:
        return 1 if self.failed else 0


def _element_json(ring: Ring, r: RElement) -> ElementJson:
    vids = sorted(r.num.variables() | r.den.variables())
    return ElementJson(
        num=r.num.to_json(),
        den=r.den.to_json(),
        variables=[VariableRef(id=v, name=ring.registry[v].name) for v in vids],
    )


def _norm_reply(ring: Ring, text: str) -> NormReply:
    r = parse_element(ring, text)
    norm = ring.norm(r)
    factors = [
        FactorEntry(
            prime=p.format(),
            multiplicity=k,
            norm=ring.prime_norm(p),
            special=ring.special_info(p) is not None,
        )
        for p, k in ring.factorization(r)
    ]
    constant = r.num.is_constant() and r.den.is_constant()
    return NormReply(
        element=r.format(),
        encoded=_element_json(ring, r),
        norm=norm,
        unit=norm.is_zero(),
        sub=None if constant else sorted(ring.sub_of(r)),
        stage=ring.stage_of(r),
        factors=factors,
    )


def _quotient_var(ring: Ring, vid: int) -> QuotientVar:
    info = ring.registry[vid]
    n, d = typing.cast(tuple, info.defining_pair)
    special = ring.special_prime(vid)
    return QuotientVar(
        id=vid,
        name=info.name,
        stage=info.stage,
        subs=sorted(info.subs),
        numerator=n.format(),
        denominator=d.format(),
        special_prime=special.format(),
        special_norm=ring.special_norm(vid),
    )


def _division_reply(ring: Ring, result: DivisionResult) -> DivisionReply:
    return DivisionReply(
        numerator=result.numerator.format(),
        divisor=result.divisor.format(),
        quotient=result.quotient.format(),
        remainder=result.remainder.format(),
        encoded=DivisionElements(
            numerator=_element_json(ring, result.numerator),
            divisor=_element_json(ring, result.divisor),
            quotient=_element_json(ring, result.quotient),
            remainder=_element_json(ring, result.remainder),
        ),
        divisor_norm=result.divisor_norm,
        remainder_norm=result.remainder_norm,
        branch=result.branch,
        adjoined=(
            None
            if result.adjoined_var is None
            else _quotient_var(ring, result.adjoined_var)
        ),
        gcd_norm=result.gcd_norm,
        special_norm=result.special_norm,
    )


def _trace_reply(ring: Ring, a: str, b: str, trace: DescentTrace) -> TraceReply:
    return TraceReply(
        a=a,
        b=b,
        steps=[_division_reply(ring, s) for s in trace.steps],
        gcd=trace.final_gcd.format(),
        encoded_gcd=_element_json(ring, trace.final_gcd),
        norms=trace.norms(),
    )


@router.command("norm", reply="norm.result")
def element_norm(payload: ElementPayload, session: Session) -> NormReply:
    """
    Norm of an element together with its prime factors, Sub set and stage.
    """
    return _norm_reply(session.ring(), payload.element)


@router.command("divide", reply="divide.result")
def divide_elements(payload: PairPayload, session: Session) -> DivisionReply:
    """
    Division with remainder; adjoins a quotient variable when no exact or trivial
    quotient exists.
    """
    ring = session.ring()
    n, d = parse_element(ring, payload.n), parse_element(ring, payload.d)
    return _division_reply(ring, ring.divide(n, d))


@router.command("gcd", reply="gcd.result")
def euclid_trace(payload: GcdPayload, session: Session) -> TraceReply:
    """
    Euclidean algorithm with the strictly decreasing sequence of divisor norms.
    """
    ring = session.ring()
    a, b = parse_element(ring, payload.a), parse_element(ring, payload.b)
    return _trace_reply(ring, payload.a, payload.b, ring.euclid_gcd(a, b))


@router.command("adjoin", reply="adjoin.result")
def adjoin_quotient(payload: PairPayload, session: Session) -> QuotientVar:
    """
    Adjoin (or look up) the quotient variable of an eligible pair.
    """
    ring = session.ring()
    n, d = parse_element(ring, payload.n), parse_element(ring, payload.d)
    return _quotient_var(ring, ring.adjoin_quotient(n, d))


@router.command("demo-nonmult", reply="demo-nonmult.result")
def nonmultiplicative_witness(payload: WitnessPayload, session: Session) -> NonmultReply:
    """
    Show that no multiplicative norm gives z the value k.
    """
    lhs, rhs = nonmult_witness(payload.k)
    ell = payload.k + 1
    ring = session.ring()
    if ring.variant != "z":
        ring = Ring(RingConfig(variant="z"), session.budget)
    norm = ring.norm(ring.gen_z() ** ell)
    return NonmultReply(
        k=payload.k,
        ell=ell,
        lhs=lhs,
        rhs=rhs,
        norm_z_ell=norm,
        holds=lhs < rhs and norm == rhs,
    )


@router.command("demo-monoid", reply="demo-monoid.result")
def monoid_norm(payload: ElementPayload, session: Session) -> MonoidReply:
    """
    Monoid norm of an element of the z-variant, with z^k weighted w*k.
    """
    ring = session.ring()
    r = parse_element(ring, payload.element)
    return MonoidReply(element=r.format(), psi=ring.psi_monoid(r), norm=ring.norm(r))


_RUN_ARGUMENTS: dict[str, tuple[str, ...]] = {
    "norm": ("element",),
    "divide": ("n", "d"),
    "gcd": ("a", "b"),
    "adjoin": ("n", "d"),
    "demo-monoid": ("element",),
    "demo-nonmult": ("k",),
}


def _line_message(line: str) -> Message:
    name, *args = shlex.split(line)
    if (fields := _RUN_ARGUMENTS.get(name)) is None:
        raise ValueError(f"unknown ring command {name!r}")
    if len(args) != len(fields):
        raise ValueError(f"{name} takes {len(fields)} argument(s), got {len(args)}")
    return Message(type=f"{router.prefix}{name}", payload=dict(zip(fields, args)))


@router.command("run", reply="run.result")
def run_script(payload: RunPayload, session: Session, app: Workbench) -> RunReply:
    """
    Run ring commands line by line against one ring, so quotient variables created
    by earlier lines can be referenced as y<id> later. Blank lines and lines starting
    with # are skipped.
    """
    entries = []
    failed = 0
    for line in payload.lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            message = _line_message(line)
        except ValueError as exc:
            reply, status = app.handle_exception(exc)
        else:
            reply, status = app.dispatch(message, session=session)
        failed += status != 0
        entries.append(
            RunEntry(line=line, type=reply.type, reply=getattr(reply, "payload", None))
        )
    return RunReply(entries=entries, failed=failed)
