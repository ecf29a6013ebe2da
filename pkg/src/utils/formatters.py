import json

import pandas as pd

import config
from src.linear.exact import RationalMatrix, to_rational


def format_rational(value):
    """JSON form of an exact number: an int, or the string "p/q"."""
    value = to_rational(value)
    if value.denominator == 1:
        return int(value.numerator)
    return f"{int(value.numerator)}/{int(value.denominator)}"


def format_matrix(matrix):
    if isinstance(matrix, RationalMatrix):
        return [[format_rational(x) for x in row] for row in matrix.array]
    return [[format_rational(x) for x in row] for row in matrix]


def to_json(report):
    return json.dumps(report, sort_keys=True, ensure_ascii=False)


def matrix_frame(rows, labels=None):
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(len(rows))]
    return pd.DataFrame(rows, index=labels, columns=labels[: len(rows[0])] if rows else [])


def records_frame(records):
    return pd.DataFrame.from_records(records)


def frame_to_text(df):
    if df.empty:
        return "(empty)"
    with pd.option_context("display.max_columns", config.TABLE_MAX_COLUMNS, "display.width", 200):
        return df.to_string()


def render_text(report):
    """
    Plain-text rendering: scalar fields as `key: value`, lists of records and
    matrices as pandas tables.
    """
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            lines.append(f"{key}:")
            lines.append(frame_to_text(records_frame(value)))
        elif isinstance(value, list) and value and all(isinstance(r, list) for r in value):
            labels = report.get("labels") if key == "matrix" else None
            lines.append(f"{key}:")
            lines.append(frame_to_text(matrix_frame(value, labels)))
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {v}" for k, v in sorted(value.items()))
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)
