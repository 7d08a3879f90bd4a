"""File formats: canonical edge lists, id maps, score/spread/report CSVs.

Every artifact embeds the config hash it was produced under as a comment
line, so downstream commands can refuse mixed inputs.  Timestamp comments
are optional to allow byte-identical reruns.
"""
from __future__ import annotations

import csv
import datetime as _dt
from pathlib import Path

import numpy as np

from .errors import DataError, ParseError
from .graph import Network, load_edge_list
from .propagation import SpreadEstimate
from .ranking import EvaluationReport, MeasureMetrics
from .scores import ScoreVector

NA = "NA"


def _fmt(x: float) -> str:
    return repr(float(x))


def _comment_lines(comments: dict[str, str], timestamps: bool) -> list[str]:
    lines = [f"# {key}={value}" for key, value in comments.items()]
    if timestamps:
        lines.append(f"# generated={_dt.datetime.now().isoformat(timespec='seconds')}")
    return lines


def read_comments(path: str | Path) -> dict[str, str]:
    """Key=value pairs from leading comment lines of any toolkit CSV."""
    out: dict[str, str] = {}
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                out[key.strip()] = value.strip()
    return out


def write_edge_list(net: Network, path: str | Path, comments: dict[str, str] | None = None,
                    timestamps: bool = True) -> None:
    """Canonical whitespace edge list ``u v w`` over dense ids."""
    lines = _comment_lines(comments or {}, timestamps)
    for u, v, w in net.edges():
        lines.append(f"{u} {v} {_fmt(w)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_canonical_network(path: str | Path) -> Network:
    """Load a canonical (directed, weighted) edge list written by this toolkit."""
    return load_edge_list(path, declared_directed=True, declared_weighted=True)


def write_id_map(net: Network, path: str | Path) -> None:
    """CSV mapping original labels to dense ids."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["original_label", "dense_id"])
        labels = net.labels or tuple(str(i) for i in range(net.node_count))
        for dense_id, label in enumerate(labels):
            writer.writerow([label, dense_id])


def write_scores(scores: ScoreVector, path: str | Path, config_hash: str,
                 timestamps: bool = True) -> None:
    comments = {"measure": scores.measure, "config_hash": config_hash}
    lines = _comment_lines(comments, timestamps)
    lines.append("node,score")
    for node, value in enumerate(scores.values):
        lines.append(f"{node},{_fmt(value)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_scores(path: str | Path) -> tuple[ScoreVector, str]:
    comments = read_comments(path)
    measure = comments.get("measure", Path(path).stem)
    values: list[float] = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("node,"):
                continue
            node_str, _, value_str = line.partition(",")
            if int(node_str) != len(values):
                raise ParseError(f"non-contiguous node ids in {path}")
            values.append(float(value_str))
    return ScoreVector(measure, np.array(values)), comments.get("config_hash", "")


def write_spread(spread: SpreadEstimate, path: str | Path, config_hash: str,
                 timestamps: bool = True) -> None:
    lines = _comment_lines({"config_hash": config_hash}, timestamps)
    lines.append("node,expected_spread,std_error,runs,master_seed")
    for node in range(spread.values.size):
        lines.append(f"{node},{_fmt(spread.values[node])},{_fmt(spread.std_error[node])},"
                     f"{spread.runs},{spread.master_seed}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_spread(path: str | Path) -> tuple[SpreadEstimate, str]:
    comments = read_comments(path)
    values: list[float] = []
    errors: list[float] = []
    runs = 0
    master_seed = 0
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("node,"):
                continue
            parts = line.split(",")
            if len(parts) != 5:
                raise ParseError(f"bad spread row in {path}: {line!r}")
            values.append(float(parts[1]))
            errors.append(float(parts[2]))
            runs = int(parts[3])
            master_seed = int(parts[4])
    if not values:
        raise DataError(f"spread file {path} holds no rows")
    estimate = SpreadEstimate(np.array(values), np.array(errors), runs, master_seed)
    return estimate, comments.get("config_hash", "")


_REPORT_HEADER = "dataset,measure,tau,tau_norm,epsilon,epsilon_norm,monotonicity"


def _metric_cell(value: float | None) -> str:
    return NA if value is None else _fmt(value)


def write_evaluation(report: EvaluationReport, path: str | Path, config_hash: str,
                     timestamps: bool = True) -> None:
    comments = {
        "config_hash": config_hash,
        "node_count": str(report.node_count),
        "density": _fmt(report.density),
    }
    lines = _comment_lines(comments, timestamps)
    lines.append(_REPORT_HEADER)
    lines.extend(_report_rows(report))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _report_rows(report: EvaluationReport) -> list[str]:
    rows = []
    for measure_id, m in report.metrics.items():
        rows.append(",".join([report.dataset, measure_id,
                              _metric_cell(m.tau), _metric_cell(m.tau_norm),
                              _metric_cell(m.epsilon), _metric_cell(m.epsilon_norm),
                              _metric_cell(m.monotonicity)]))
    return rows


def read_evaluation(path: str | Path) -> tuple[EvaluationReport, str]:
    comments = read_comments(path)
    metrics: dict[str, MeasureMetrics] = {}
    dataset = ""
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("dataset,"):
                continue
            parts = line.split(",")
            if len(parts) != 7:
                raise ParseError(f"bad report row in {path}: {line!r}")
            dataset = parts[0]
            cell = lambda s: None if s == NA else float(s)
            metrics[parts[1]] = MeasureMetrics(cell(parts[2]), cell(parts[3]),
                                               cell(parts[4]), cell(parts[5]),
                                               cell(parts[6]))
    report = EvaluationReport(dataset,
                              int(comments.get("node_count", "0")),
                              float(comments.get("density", "0") or 0.0),
                              metrics)
    return report, comments.get("config_hash", "")


def write_combined_report(reports: list[EvaluationReport], aggregate_report: EvaluationReport,
                          path: str | Path, timestamps: bool = True) -> None:
    lines = _comment_lines({}, timestamps)
    lines.append(_REPORT_HEADER)
    for report in reports:
        lines.extend(_report_rows(report))
    lines.extend(_report_rows(aggregate_report))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_scatter(reports: list[EvaluationReport], path: str | Path,
                  timestamps: bool = True) -> None:
    """Rows for density-versus-metric plots across datasets."""
    lines = _comment_lines({}, timestamps)
    lines.append("dataset,density,measure,metric,value")
    for report in sorted(reports, key=lambda r: (r.density, r.dataset)):
        for measure_id, m in report.metrics.items():
            for metric_name, value in (("tau_norm", m.tau_norm),
                                       ("epsilon_norm", m.epsilon_norm)):
                if value is not None:
                    lines.append(f"{report.dataset},{_fmt(report.density)},"
                                 f"{measure_id},{metric_name},{_fmt(value)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
