# src/class_tables.py
"""
Rebuild the ternary class tables for 5-, 7- and 9-leaf patterns.

Output:
 - data/reports/ternary_<L>.json   (classify.write_report)
 - data/reports/ternary_<L>.csv    (classify.write_report_csv)
"""

import logging
import os

from classify import DEFAULT_MAX_LEAVES, classify_patterns, write_report, write_report_csv

logger = logging.getLogger(__name__)

REPORT_DIR = "data/reports"
PATTERN_LEAVES = (5, 7, 9)


def build_tables(report_dir=REPORT_DIR, leaves=PATTERN_LEAVES, max_leaves=DEFAULT_MAX_LEAVES, n_jobs=1, progress=False):
    os.makedirs(report_dir, exist_ok=True)
    reports = {}
    for L in leaves:
        report = classify_patterns(3, L, max_leaves, n_jobs=n_jobs, progress=progress)
        write_report(report, os.path.join(report_dir, f"ternary_{L}.json"))
        write_report_csv(report, os.path.join(report_dir, f"ternary_{L}.csv"))
        reports[L] = report
        logger.info("%d-leaf table done: %d classes", L, len(report.classes))
    return reports


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    for L, report in build_tables(n_jobs=-1, progress=True).items():
        labels = ", ".join(f"{c.label or '?'} ({len(c.members)})" for c in report.classes)
        print(f"{L}-leaf patterns: {len(report.classes)} classes: {labels}")
