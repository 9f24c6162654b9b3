"""The table of primes p <= 16000 with exactly four distinct prime factors in N_p(Delta)."""
from __future__ import annotations

import difflib
from dataclasses import dataclass

from .factor import FactorBudget
from .npstats import CountFilter, NpRecord, scan
from .qexp import FormHandle

TABLE_X = 16000
TABLE_PRECISION = TABLE_X + 1

# p = 15307 carries 3^5, not 3*5: 2^8*3*5*691*P does not multiply back to N_15307.
EXPECTED_ROWS: tuple[tuple[int, str], ...] = (
    (5, "2^10*3*23*691"),
    (7, "2^9*3^5*23*691"),
    (577, "2^13*3^7*691*190641378938814930857"),
    (1153, "2^13*3^6*691*1160183970784175844330767"),
    (1297, "2^11*3^6*691*16935741217449799251621239"),
    (3803, "2^8*3*691*4534718285139898177401117938327717"),
    (5693, "2^10*3*691*95907763393686429420185450510493683"),
    (11317, "2^10*3^5*691*2268089547548261526855554962441076239"),
    (14437, "2^10*3^6*691*11008825527208610156044088966777471773"),
    (15307, "2^8*3^5*691*251458672161512059369128893956312797721"),
)


def render_table(rows) -> str:
    lines = ["| p | N_p(Delta) |", "|---|---|"]
    lines += [f"| {p} | {fac} |" for p, fac in rows]
    return "\n".join(lines) + "\n"


EXPECTED_TABLE = render_table(EXPECTED_ROWS)


@dataclass
class TableResult:
    records: list[NpRecord]
    undecided: list[NpRecord]
    rendered: str

    @property
    def matches(self) -> bool:
        return not self.undecided and self.rendered == EXPECTED_TABLE

    def diff(self) -> str:
        return "".join(difflib.unified_diff(EXPECTED_TABLE.splitlines(True), self.rendered.splitlines(True),
                                            "expected", "computed"))


def reproduce_table(delta: FormHandle, budget: FactorBudget | None = None, workers: int | None = None) -> TableResult:
    if delta.weight != 12 or delta.level != 1:
        raise ValueError("the table is defined for Delta (level 1, weight 12)")
    result = scan(delta, TABLE_X, CountFilter("omega", 4), budget, workers)
    rendered = render_table((r.p, r.factorization.render()) for r in result.records)
    return TableResult(result.records, result.undecided, rendered)
