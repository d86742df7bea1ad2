"""Fixtures for the Kleinian and simply elliptic singularities, and their cross-check."""
import json
import logging
import os
import re
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

from sympy import Symbol, sympify

from singmon.config import get_settings
from singmon.errors import SingmonError, UnknownEntry, UnsupportedLabel
from singmon.models import (
    CatalogDiff,
    CatalogEntry,
    CatalogRecord,
    CatalogReport,
    IntPoly,
    SeifertData,
    SeifertPair,
    Template,
    WeightSystem,
)
from singmon.processing.frameshape import fs_format, fs_mul, fs_parse, fs_power, saito_dual, to_polynomial
from singmon.processing.mckay import kleinian_label_parameters
from singmon.processing.monodromy import charpoly_hypersurface, theorem4a_verify
from singmon.processing.seifert import (
    ONE_MINUS_T,
    bundle,
    bundle_from_orbit,
    exponent,
    genus,
    orbit_invariants,
    seifert_completion,
)

logger = logging.getLogger("singmon.catalog")

DEFAULT_CATALOG = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "catalog.json")

_PLACEHOLDER = re.compile(r"\{([^{}]+)\}")


@lru_cache(maxsize=8)
def _load(path: str) -> Tuple[CatalogRecord, ...]:
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    records = tuple(CatalogRecord.model_validate(r) for r in data["entries"])
    logger.debug("loaded %d catalog records from %s", len(records), path)
    return records


def load_catalog(path: Optional[str] = None) -> Tuple[CatalogRecord, ...]:
    return _load(path or get_settings().catalog_path or DEFAULT_CATALOG)


def _evaluator(record: CatalogRecord, value: Optional[int]) -> Callable[[Template], int]:
    def evaluate(template: Template) -> int:
        if isinstance(template, int):
            return template
        expr = sympify(template)
        if record.parameter is not None:
            expr = expr.subs(Symbol(record.parameter), value)
        if not expr.is_integer:
            raise UnknownEntry(f"{record.name}: {template!r} does not evaluate to an integer")
        return int(expr)

    return evaluate


def instantiate(record: CatalogRecord, parameter: Optional[int] = None) -> CatalogEntry:
    """Substitute the family parameter into a fixture record."""
    if record.family is not None:
        if parameter is None:
            raise UnknownEntry(f"{record.name} needs a value for {record.parameter}")
        if parameter < (record.min or 1):
            raise UnknownEntry(f"{record.name} needs {record.parameter} >= {record.min}, got {parameter}")
    else:
        parameter = None
    evaluate = _evaluator(record, parameter)

    def fill(text: str) -> str:
        return _PLACEHOLDER.sub(lambda m: str(evaluate(m.group(1))), text)

    alphas = sorted(a for a in map(evaluate, record.alphas) if a >= 2)
    return CatalogEntry(
        name=fill(record.label) if record.label else record.name,
        table=record.table,
        group=fill(record.group),
        family=record.family,
        parameter=parameter,
        weights=WeightSystem(weights=[evaluate(q) for q in record.weights], degrees=[evaluate(d) for d in record.degrees]),
        genus=evaluate(record.g),
        b=None if record.b is None else evaluate(record.b),
        alphas=alphas,
        R=evaluate(record.R),
        pi_A=fs_parse(fill(record.pi_A)),
        pi_M=None if record.pi_M is None else fs_parse(fill(record.pi_M)),
        w=None if record.w is None else [evaluate(x) for x in record.w],
    )


def lookup_label(label: str) -> CatalogEntry:
    """Catalog entry of the Kleinian singularity with root system `label` (A3, D5, E8, ...)."""
    try:
        family, parameter = kleinian_label_parameters(label)
    except UnsupportedLabel as exc:
        raise UnknownEntry(str(exc)) from exc
    for record in load_catalog():
        if record.table == 1 and family in (record.family, record.name):
            return instantiate(record, parameter)
    raise UnknownEntry(f"no Kleinian entry for {label}")


def lookup(name: str, parameter: Optional[int] = None) -> CatalogEntry:
    for record in load_catalog():
        if name == record.name or name in record.aliases:
            return instantiate(record, parameter)
    try:
        return lookup_label(name)
    except UnknownEntry:
        raise UnknownEntry(f"unknown catalog entry {name!r}") from None


def entries(max_index: int = 8) -> List[CatalogEntry]:
    """All simply elliptic entries plus the Kleinian entries with root-system rank <= max_index."""
    out: List[CatalogEntry] = []
    for record in load_catalog():
        if record.family == "A_{2n-1}":
            out += [instantiate(record, n) for n in range(1, (max_index + 1) // 2 + 1)]
        elif record.family == "A_{2n}":
            out += [instantiate(record, n) for n in range(1, max_index // 2 + 1)]
        elif record.family == "D_l":
            out += [instantiate(record, l) for l in range(4, max_index + 1)]
        else:
            out.append(instantiate(record))
    return out


def _w_column(w: WeightSystem) -> Optional[List[int]]:
    d = w.degrees[0]
    if any(x != d for x in w.degrees) or any(d % q for q in w.weights):
        return None
    return sorted(d // q for q in w.weights)


def validate_entry(entry: CatalogEntry) -> List[CatalogDiff]:
    """Recompute every computable field of an entry and list the disagreements."""
    diffs: List[CatalogDiff] = []

    def compare(field: str, expected, actual) -> None:
        if expected != actual:
            diffs.append(CatalogDiff(entry=entry.name, field=field, expected=str(expected), actual=str(actual)))

    w = entry.weights
    compare("R", entry.R, exponent(w))
    try:
        if w.n == 3:
            q1, q2, q3 = w.weights
            d = w.degrees[0]
            alphas = orbit_invariants(q1, q2, q3, d)
            compare("alphas", entry.alphas, alphas)
            g = genus(q1, q2, q3, d, alphas)
            compare("g", entry.genus, g)
            compare("pi_A", fs_format(entry.pi_A), fs_format(bundle(q1, q2, q3, d).phi))
            if entry.R != 0:
                compare("b", entry.b, seifert_completion(alphas, entry.R, g).b)
            expected_m = entry.pi_M or saito_dual(fs_mul(entry.pi_A, fs_power(ONE_MINUS_T, -2 * entry.genus)), d)
            compare("pi_M", fs_format(expected_m), fs_format(charpoly_hypersurface(q1, q2, q3, d).charpoly))
        else:
            phi = bundle_from_orbit(w, entry.genus, entry.alphas).phi
            compare("pi_A", fs_format(entry.pi_A), fs_format(phi))
            if entry.pi_M is not None and w.n == 4:
                seifert = SeifertData(
                    genus=entry.genus, b=entry.b, exponent=entry.R, pairs=[SeifertPair(alpha=a) for a in entry.alphas]
                )
                report = theorem4a_verify(w.weights, w.degrees, entry.pi_M, seifert)
                compare("pi_M", report.details["phi_flat"], report.details["dual"])
        if entry.table == 2 and entry.b is not None:
            compare("example1", IntPoly(coeffs=[1, entry.b - 2, 1]).coeffs, to_polynomial(entry.pi_A).coeffs)
        if entry.w is not None:
            computed = _w_column(w)
            if computed is not None:
                compare("w", sorted(entry.w), computed)
    except SingmonError as exc:
        diffs.append(CatalogDiff(entry=entry.name, field="error", expected="", actual=str(exc)))
    return diffs


def validate_entries(items: Sequence[CatalogEntry]) -> CatalogReport:
    report = CatalogReport()
    for entry in items:
        report.checked.append(entry.name)
        report.diffs.extend(validate_entry(entry))
    if report.diffs:
        logger.warning("catalog validation found %d differences", len(report.diffs))
    return report


def validate_all(max_index: int = 8) -> CatalogReport:
    return validate_entries(entries(max_index))
