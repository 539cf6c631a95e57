"""Verification reports with counterexample witnesses.

A report is the outcome of one check or sweep: how many cases ran, and the
witnesses for every case that violated the required valuation bound.  A check
passes exactly when it produced no witnesses.
"""

import json
import math
from dataclasses import dataclass, field

from .backend import rat_parts


def _jsonable(v):
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, float):
        return "inf" if math.isinf(v) else v
    if isinstance(v, int):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    # big backend integers (gmpy2.mpz) and anything int-like
    try:
        return int(v)
    except (TypeError, ValueError):
        return str(v)


@dataclass
class Witness:
    """One offending case: where, what value, and the valuation shortfall."""

    params: dict
    value: object
    required_valuation: object = None
    actual_valuation: object = None
    rank: tuple = ()

    def to_record(self):
        num, den = rat_parts(self.value)
        return {
            "params": _jsonable(self.params),
            "value": {"num": str(num), "den": str(den)},
            "required_valuation": _jsonable(self.required_valuation),
            "actual_valuation": _jsonable(self.actual_valuation),
        }


def _flat_rank(rank):
    """Flatten nested rank tuples to plain ints so mixed shapes stay sortable."""
    out = []
    for x in rank if isinstance(rank, (tuple, list)) else (rank,):
        if isinstance(x, (tuple, list)):
            out.extend(_flat_rank(x))
        else:
            out.append(int(x))
    return tuple(out)


@dataclass
class CongruenceReport:
    check: str
    params: dict
    cases: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def add_witness(self, params, value, required=None, actual=None, rank=()):
        self.witnesses.append(Witness(params, value, required, actual,
                                      _flat_rank(rank)))

    def finish(self):
        """Canonically sort witnesses so reports are order-independent."""
        self.witnesses.sort(key=lambda w: w.rank)
        return self

    def to_record(self):
        return {
            "check": self.check,
            "params": _jsonable(self.params),
            "cases": self.cases,
            "pass": self.passed,
            "witnesses": [w.to_record() for w in self.witnesses],
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_record(), sort_keys=True, indent=indent)

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.witnesses)} witnesses)"
        return f"{self.check}: {self.cases} cases, {status}"


def merge_reports(check, params, reports):
    """Concatenate sweep reports into one (witnesses re-sorted canonically)."""
    merged = CongruenceReport(check, params)
    for r in reports:
        merged.cases += r.cases
        merged.witnesses.extend(r.witnesses)
    return merged.finish()
