"""
Tabular summaries of the diagnostic runs (pandas)
"""
from __future__ import annotations

import numpy as np
import pandas as pd


def treewidth_frame(rows: list[dict]) -> pd.DataFrame:
    columns = ['i', 'zprime_size', 'quotient_n', 'quotient_m', 'width', 'ratio']
    if not rows:
        return pd.DataFrame(columns=columns)
    frame = pd.DataFrame(rows)
    frame['zprime_size'] = frame['zprime'].apply(len)
    extra = [c for c in ('apex_width', 'valid') if c in frame.columns]
    return frame[columns + extra]


def summarize_widths(rows: list[dict], p: int, cap: float) -> dict:
    """Largest width and ratio, plus rows whose width exceeds cap * (p + |Z'| + 1)."""
    frame = treewidth_frame(rows)
    if frame.empty:
        return {'rows': 0, 'max_width': None, 'max_ratio': None, 'over_cap': []}
    limit = cap * (p + frame['zprime_size'] + 1)
    over = frame[frame['width'] > limit]
    return {
        'rows': int(len(frame)),
        'max_width': int(frame['width'].max()),
        'max_ratio': float(frame['ratio'].max()),
        'over_cap': [
            {key: int(value) for key, value in record.items()}
            for record in over[['i', 'zprime_size', 'width']].to_dict(orient='records')
        ],
    }


def regression_slope(xs, ys) -> float:
    """Least-squares slope of ys against xs; 0 when xs take a single value."""
    xs = np.asarray(list(xs), dtype=float)
    ys = np.asarray(list(ys), dtype=float)
    if len(xs) < 2 or np.ptp(xs) == 0:
        return 0.0
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def render_table(rows: list[dict]) -> str:
    frame = treewidth_frame(rows)
    if frame.empty:
        return '(no rows)'
    return frame.to_string(index=False)


def suite_frame(summary: dict) -> pd.DataFrame:
    """One line per verification suite: checked items, violations, pass flag."""
    records = [
        {
            'suite': name,
            'checked': result.get('checked', 0),
            'violations': len(result.get('violations', [])),
            'ok': not result.get('violations'),
        }
        for name, result in summary.get('suites', {}).items()
    ]
    return pd.DataFrame(records, columns=['suite', 'checked', 'violations', 'ok'])
