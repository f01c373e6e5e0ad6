"""Clustering file parsing and report serialization.

Two clustering formats, both UTF-8 with LF or CRLF line endings, blank lines
and ``#`` comment lines ignored:

* ``cluster_lines`` — one cluster per line, instance ids separated by
  horizontal whitespace.
* ``membership_pairs`` — one ``instance_id<TAB>cluster_label`` row per line;
  clusters are the groups of equal labels.

Auto-detection picks ``membership_pairs`` when the first data line contains
a TAB, else ``cluster_lines``.

Machine reports are JSON with a fixed key order and every float rendered as
fixed-point with 12 decimals (never scientific notation), so
serialize -> parse -> serialize is byte-identical and goldens diff cleanly.
"""

from __future__ import annotations

import json
from typing import Iterable

from . import __version__
from .errors import DuplicateInstance, ParseError
from .model import Clustering, FullReport

SCHEMA_VERSION = 1

FORMAT_AUTO = "auto"
FORMAT_CLUSTER_LINES = "cluster_lines"
FORMAT_MEMBERSHIP_PAIRS = "membership_pairs"
FORMATS = (FORMAT_AUTO, FORMAT_CLUSTER_LINES, FORMAT_MEMBERSHIP_PAIRS)

MEASURE_ORDER = ("cluster_f", "k_metric", "se_le", "pairwise", "b_cubed")
TABLE_LABELS = {
    "cluster_f": "Cluster-F",
    "k_metric": "K-metric",
    "se_le": "SE&LE",
    "pairwise": "Pairwise-F",
    "b_cubed": "B-cubed",
}


def _data_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((number, line))
    return out


def parse_clustering(source: str | bytes, format: str = FORMAT_AUTO, role: str = "truth") -> Clustering:
    """Parse one clustering from text or bytes in either file format."""
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8-sig")  # tolerate a Windows BOM
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    if format not in FORMATS:
        raise ValueError(f"unknown clustering format {format!r}")

    lines = _data_lines(source)
    if format == FORMAT_AUTO:
        format = FORMAT_MEMBERSHIP_PAIRS if (lines and "\t" in lines[0][1]) else FORMAT_CLUSTER_LINES

    first_seen: dict[str, int] = {}
    if format == FORMAT_CLUSTER_LINES:
        clusters = []
        for number, line in lines:
            cluster = []
            for token in line.split():
                if token in first_seen:
                    raise DuplicateInstance(token, first_seen[token], number)
                first_seen[token] = number
                cluster.append(token)
            clusters.append(tuple(cluster))
    else:
        groups: dict[str, list[str]] = {}
        for number, line in lines:
            fields = line.split("\t")
            if len(fields) != 2:
                raise ParseError(
                    f"expected 'instance<TAB>label', found {len(fields)} tab-separated fields",
                    line=number,
                )
            instance = fields[0].strip()
            label = fields[1].strip()
            if not instance:
                raise ParseError("empty instance id", line=number, column=1)
            if not label:
                raise ParseError("empty cluster label", line=number, column=len(fields[0]) + 2)
            if instance in first_seen:
                raise DuplicateInstance(instance, first_seen[instance], number)
            first_seen[instance] = number
            groups.setdefault(label, []).append(instance)
        clusters = [tuple(members) for members in groups.values()]
    return Clustering.from_clusters(clusters, role=role)


def parse_clustering_file(path, format: str = FORMAT_AUTO, role: str = "truth") -> Clustering:
    with open(path, "rb") as handle:
        return parse_clustering(handle.read(), format=format, role=role)


def write_clustering(clustering: Clustering, format: str = FORMAT_CLUSTER_LINES) -> str:
    """Serialize a clustering; round-trips to the same partition."""
    if format == FORMAT_CLUSTER_LINES:
        rows = []
        for cluster in clustering.clusters:
            ids = [str(x) for x in cluster]
            for text in ids:
                if not text or any(ch.isspace() for ch in text):
                    raise ValueError(f"instance id {text!r} cannot be written in cluster_lines format")
            rows.append(" ".join(ids))
        return "\n".join(rows) + "\n"
    if format == FORMAT_MEMBERSHIP_PAIRS:
        rows = []
        for index, cluster in enumerate(clustering.clusters):
            for instance in cluster:
                text = str(instance)
                if not text or "\t" in text or "\n" in text or "\r" in text:
                    raise ValueError(f"instance id {text!r} cannot be written in membership_pairs format")
                rows.append(f"{text}\tc{index}")
        return "\n".join(rows) + "\n"
    raise ValueError(f"unknown clustering format {format!r}")


def _triple_fields(triple) -> dict:
    return {
        "recall": float(triple.recall),
        "precision": float(triple.precision),
        "combined": float(triple.combined),
    }


def build_report_document(
    report: FullReport,
    engine: str = "single_pass",
    timing_seconds: float | None = None,
) -> dict:
    """Structured rendering of a report with stable field names and order."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "engine": engine,
        "package_version": __version__,
        "measures": {
            "cluster_f": _triple_fields(report.cluster_f),
            "k_metric": _triple_fields(report.k_metric),
            "se_le": {
                "se": float(report.se_le.se),
                "le": float(report.se_le.le),
                **_triple_fields(report.se_le.converted),
            },
            "pairwise": _triple_fields(report.pairwise),
            "b_cubed": _triple_fields(report.b_cubed),
        },
        "stats": {
            "n_truth_clusters": report.stats.n_truth_clusters,
            "n_predicted_clusters": report.stats.n_predicted_clusters,
            "n_instances": report.stats.n_instances,
            "pair_tr_sum": report.stats.pair_tr_sum,
            "pair_pr_sum": report.stats.pair_pr_sum,
            "pair_int_sum": report.stats.pair_int_sum,
        },
        "flags": list(report.flags),
    }
    if timing_seconds is not None:
        doc["timing"] = {"seconds": float(timing_seconds)}
    return doc


def _render_value(value, indent: int, out: list) -> None:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f"{inner}{json.dumps(key)}: ")
            _render_value(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, list):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(inner)
            _render_value(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError("report documents cannot carry non-finite numbers")
        out.append(format(value, ".12f"))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif value is None:
        out.append("null")
    else:
        raise TypeError(f"cannot render {type(value).__name__} in a report document")


def render_report_document(doc: dict) -> str:
    out: list[str] = []
    _render_value(doc, 0, out)
    out.append("\n")
    return "".join(out)


def parse_report_document(source: str | bytes) -> dict:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid report document: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def _render_table(report: FullReport) -> str:
    rows = {
        "cluster_f": report.cluster_f,
        "k_metric": report.k_metric,
        "se_le": report.se_le.converted,
        "pairwise": report.pairwise,
        "b_cubed": report.b_cubed,
    }
    lines = [f"{'Measure':<12}{'Recall':>9}{'Precision':>11}{'F':>9}"]
    for name in MEASURE_ORDER:
        triple = rows[name]
        lines.append(
            f"{TABLE_LABELS[name]:<12}{triple.recall:>9.4f}{triple.precision:>11.4f}{triple.combined:>9.4f}"
        )
    stats = report.stats
    lines.append("")
    lines.append(f"SE = {report.se_le.se:.4f}   LE = {report.se_le.le:.4f}")
    lines.append(
        f"instances: {stats.n_instances}   truth clusters: {stats.n_truth_clusters}   "
        f"predicted clusters: {stats.n_predicted_clusters}"
    )
    lines.append(
        f"pairs: truth {stats.pair_tr_sum}, predicted {stats.pair_pr_sum}, shared {stats.pair_int_sum}"
    )
    for flag in report.flags:
        lines.append(f"flag: {flag}")
    return "\n".join(lines) + "\n"


def write_report(
    report: FullReport,
    style: str = "machine",
    engine: str = "single_pass",
    timing_seconds: float | None = None,
) -> str:
    """Render a full report, machine (stable JSON) or human table style."""
    if style == "machine":
        return render_report_document(build_report_document(report, engine, timing_seconds))
    if style == "table":
        return _render_table(report)
    raise ValueError(f"unknown report style {style!r}")
