"""
Plain-text tables for `--output table`.
"""
from typing import Any, Dict, List

import pandas as pd

from models.census import CensusReport, FieldCensus


def render_rows(rows: List[Dict[str, Any]]) -> str:
    if not rows:
        return "(no rows)"
    df = pd.DataFrame(rows)
    return df.to_string(index=False)


def corollary_table(report: CensusReport) -> str:
    """One line per checked statement, in the order they were checked."""
    rows = []
    for v in report.verdicts:
        rows.append({
            'Statement': v.corollary,
            'Field': v.field,
            'Family': v.family,
            'Group': f"Z/{v.shape[0]} + Z/{v.shape[1]}",
            'Classes': v.classes,
            'Members': v.family_members,
            'Points': v.point_count if v.point_count is not None else '-',
            'Verdict': v.verdict.upper(),
        })
    text = render_rows(rows)
    failures = [v for v in report.verdicts if v.counterexample]
    if failures:
        text += "\n\nCounterexamples:\n" + "\n".join(f"  {v.corollary} ({v.field}): {v.counterexample}" for v in failures)
    if report.notes:
        text += "\n\nNotes:\n" + "\n".join(f"  {note}" for note in report.notes)
    return text


def census_table(census: FieldCensus) -> str:
    rows = []
    for group in census.shapes:
        for record in group.classes:
            witness = record.witness_params[0] if record.witness_params else {}
            rows.append({
                'Group': f"{group.shape[0]}x{group.shape[1]}",
                'Representative': record.representative,
                'Size': record.class_size,
                'Points': record.points,
                'Witness': ", ".join(f"{k}={v}" for k, v in witness.items()) or '-',
            })
    header = f"{census.field}: {census.curves} curves, {census.classes} classes"
    return header + "\n" + render_rows(rows)
