"""JSON form of witness certificates and verification reports."""

import json

from .witness import WitnessCertificate
from .words import MAX_TEXT_RANK, WordError, parse

WORD_FIELDS = ("chosen_j", "witness")
WORD_LIST_FIELDS = (
    "input_generators",
    "basis_H",
    "basis_Q",
    "coset_reps",
    "basis_CH",
    "basis_J",
    "factors_x",
)
INT_FIELDS = ("rank", "index_FK", "n")
FIELD_ORDER = (
    "rank",
    "input_generators",
    "basis_H",
    "basis_Q",
    "index_FK",
    "n",
    "coset_reps",
    "basis_CH",
    "basis_J",
    "chosen_j",
    "factors_x",
    "witness",
    "construction_log",
    "tool_version",
)


class MalformedCertificate(ValueError):
    pass


def to_dict(cert: WitnessCertificate):
    d = {}
    for name in FIELD_ORDER:
        value = getattr(cert, name)
        if name in WORD_FIELDS:
            value = str(value)
        elif name in WORD_LIST_FIELDS:
            value = [str(w) for w in value]
        elif name == "construction_log":
            value = list(value)
        d[name] = value
    return d


def dumps(cert):
    return json.dumps(to_dict(cert), indent=2) + "\n"


def from_dict(d):
    if not isinstance(d, dict):
        raise MalformedCertificate("certificate must be a JSON object")
    missing = [k for k in FIELD_ORDER if k not in d and k != "tool_version"]
    if missing:
        raise MalformedCertificate(f"missing fields: {', '.join(missing)}")
    for k in INT_FIELDS:
        if not isinstance(d[k], int) or isinstance(d[k], bool):
            raise MalformedCertificate(f"{k} must be an integer")
    rank = d["rank"]
    if not 1 <= rank <= MAX_TEXT_RANK:
        raise MalformedCertificate(f"rank {rank} out of range")

    def word(name, text):
        if not isinstance(text, str):
            raise MalformedCertificate(f"{name} must hold word strings")
        try:
            return parse(text, rank)
        except WordError as exc:
            raise MalformedCertificate(f"{name}: {exc}") from exc

    kw = {k: d[k] for k in INT_FIELDS}
    for k in WORD_FIELDS:
        kw[k] = word(k, d[k])
    for k in WORD_LIST_FIELDS:
        if not isinstance(d[k], list):
            raise MalformedCertificate(f"{k} must be a list")
        kw[k] = [word(k, t) for t in d[k]]
    log = d["construction_log"]
    if not isinstance(log, list) or not all(isinstance(s, str) for s in log):
        raise MalformedCertificate("construction_log must be a list of strings")
    kw["construction_log"] = list(log)
    if "tool_version" in d:
        kw["tool_version"] = str(d["tool_version"])
    return WitnessCertificate(**kw)


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not valid JSON: {exc}") from exc
    return from_dict(data)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(cert, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cert))


def report_to_dict(report):
    return {
        "checks": [
            {"id": c.id, "description": c.description, "pass": c.passed, "details": c.details}
            for c in report.checks
        ],
        "overall": report.overall,
    }
