#!/usr/bin/env python3
"""
AlgInt Certify - Report Module
Human-readable rendering of certificates for the `--text` output and `explain`.
"""

import io
import json
import logging
from typing import Any, List, Optional

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from modules.certificate import Certificate, Verdict
from modules.kind_resolver import KindResolver

logger = logging.getLogger(__name__)

VERDICT_STYLES = {
    Verdict.INTEGRAL: "green",
    Verdict.PASS: "green",
    Verdict.CONFORMS: "green",
    Verdict.NOT_INTEGRAL: "red",
    Verdict.FAIL_WITNESS: "red",
    Verdict.VANISHING_CLASS: "yellow",
    Verdict.INCONCLUSIVE: "yellow",
}

VERDICT_MEANINGS = {
    Verdict.INTEGRAL: "every checked quantity is integral, so the conclusion holds",
    Verdict.NOT_INTEGRAL: "the conclusion fails; the witness is the first non-integral value",
    Verdict.PASS: "the hypotheses hold on the checked range",
    Verdict.FAIL_WITNESS: "the hypotheses fail; the witness shows where",
    Verdict.VANISHING_CLASS: "a class of roots cancels on a residue class, which is the degenerate alternative",
    Verdict.INCONCLUSIVE: "no witness was found but the window does not reach a proven bound",
    Verdict.CONFORMS: "the object has the form the criterion predicts",
}


def _short(value: Any, limit: int = 72) -> str:
    text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def _summary_table(certificate: Certificate) -> Table:
    table = Table(show_header=False, box=None, pad_edge=False)
    table.add_column("key", style="bold")
    table.add_column("value")
    style = VERDICT_STYLES.get(certificate.verdict, "white")
    table.add_row("kind", certificate.kind)
    table.add_row("criterion", escape(certificate.criterion))
    table.add_row("verdict", f"[{style}]{certificate.verdict.value}[/{style}]")
    if certificate.window is not None:
        table.add_row("window", f"{certificate.window[0]}..{certificate.window[1]}")
    if certificate.bound_used is not None:
        table.add_row("bound", str(certificate.bound_used))
    return table


def _witness_table(certificate: Certificate, max_rows: int) -> Optional[Table]:
    if not certificate.witnesses:
        return None
    table = Table(title="Witnesses", show_lines=False)
    table.add_column("index", justify="right")
    table.add_column("detail")
    for witness in certificate.witnesses[:max_rows]:
        table.add_row(str(witness.index), escape(_short(witness.detail)))
    if len(certificate.witnesses) > max_rows:
        table.add_row("...", f"{len(certificate.witnesses) - max_rows} more")
    return table


def render_certificate(certificate: Certificate, max_rows: int = 10, color: bool = False) -> str:
    """
    Render a certificate as text

    Args:
        certificate: Certificate to render
        max_rows: Witnesses shown before eliding
        color: Keep ANSI styling in the output

    Returns:
        Rendered text
    """
    console = Console(file=io.StringIO(), record=True, width=100,
                      force_terminal=color, color_system="standard" if color else None)
    console.print(_summary_table(certificate))
    witnesses = _witness_table(certificate, max_rows)
    if witnesses is not None:
        console.print(witnesses)
    for note in certificate.notes:
        console.print(Text(f"note: {note}"))
    return console.export_text(styles=color)


def explain_certificate(certificate: Certificate, resolver: Optional[KindResolver] = None) -> str:
    """
    Narrate which criterion was applied and what the verdict means

    Args:
        certificate: Certificate read back from disk
        resolver: Kind resolver providing the criterion summaries

    Returns:
        Explanation text
    """
    resolver = resolver or KindResolver()
    lines: List[str] = []
    try:
        rule = resolver.resolve(certificate.kind)
        lines.append(rule["summary"] + ".")
    except ValueError:
        # Certificates from helper checks have no instance kind
        logger.debug(f"No rule for certificate kind {certificate.kind!r}")
    lines.append(f"Criterion: {certificate.criterion}.")
    lines.append(f"Verdict {certificate.verdict.value}: {VERDICT_MEANINGS[certificate.verdict]}.")
    if certificate.window is not None:
        lines.append(f"Checked indices {certificate.window[0]} through {certificate.window[1]}.")
    if certificate.bound_used is not None:
        lines.append(f"Bound applied: {certificate.bound_used}.")
    witness = certificate.first_witness
    if witness is not None:
        lines.append(f"First witness at index {witness.index}: {_short(witness.detail)}.")
    lines.extend(certificate.notes)

    console = Console(file=io.StringIO(), record=True, width=100, color_system=None)
    console.print(Panel(Text("\n".join(lines)), title=f"{certificate.kind} certificate", expand=False))
    return console.export_text()
