"""Human-readable renderings of reports"""

from typing import Optional

from core.config import app_config
from models.fuzz import FuzzSummary
from models.report import BoundReport
from models.scenario import ExampleReport


def _fmt(value: Optional[float], digits: int) -> str:
    return "-" if value is None else f"{value:.{digits}f}"


def render_bound_report(report: BoundReport, digits: Optional[int] = None) -> str:
    d = app_config.REPORT_DIGITS if digits is None else digits
    lines = [f"--- Bound report (dim {report.dim}) ---"]
    for m in report.measurements:
        lines.append(f"[{m.name}] p = ({', '.join(_fmt(p, d) for p in m.probabilities)})")
        lines.append(f"  phi                          {_fmt(m.phi, d)}")
        for e in m.entropies:
            label = "H_shannon" if e.order == 1.0 else f"H_{e.order:g}"
            lines.append(f"  {label:<28} {_fmt(e.bits, d)}")
        lines.append(
            f"  relation2 bound              {_fmt(m.relation2_bound, d)}"
            f"   slack {_fmt(m.relation2_slack, d)}"
        )
        lines.append(
            f"  state-independent single     {_fmt(m.state_independent_single_bound, d)}"
            f"   slack {_fmt(m.state_independent_single_slack, d)}"
        )

    if report.f_value is not None:
        lines.append("[pair]")
        lines.append(f"  f(M,N|rho)                   {_fmt(report.f_value, d)}")
        lines.append(f"  max ||M_i^1/2 N_j^1/2||      {_fmt(report.norm_max, d)}")
        lines.append(f"  relation1 bound              {_fmt(report.relation1_bound, d)}")
        lines.append(
            f"  uncoupled bound              {_fmt(report.uncoupled_bound, d)}"
            f"   slack {_fmt(report.uncoupled_slack, d)}"
        )
        lines.append(f"  state-independent pair       {_fmt(report.state_independent_pair_bound, d)}")
        for pc in report.pair_checks:
            lines.append(
                f"  (alpha, beta) = ({pc.alpha:g}, {pc.beta:g}): "
                f"lhs {_fmt(pc.lhs_entropy_sum, d)}  "
                f"relation1 slack {_fmt(pc.relation1_slack, d)}  "
                f"pair slack {_fmt(pc.state_independent_pair_slack, d)}"
            )

    if report.violations:
        lines.append("VIOLATIONS:")
        for v in report.violations:
            lines.append(f"  {v.bound}: slack {v.slack:.3e} ({v.measurement or 'pair'})")
    else:
        lines.append("all bounds hold")
    return "\n".join(lines)


def render_example(example: ExampleReport, digits: Optional[int] = None) -> str:
    d = app_config.REPORT_DIGITS if digits is None else digits
    lines = [
        f"--- Discrimination example, (alpha, beta) = ({example.alpha:g}, {example.beta:g}) ---",
        f"{'quantity':<32} {'computed':>14} {'closed form':>14}  result",
    ]
    for row in example.rows:
        verdict = "PASS" if row.passed else "FAIL"
        lines.append(
            f"{row.name:<32} {_fmt(row.computed, d):>14} {_fmt(row.expected, d):>14}  {verdict}"
        )
    lines.append("all rows PASS" if example.ok else "MISMATCH")
    return "\n".join(lines)


def render_fuzz(summary: FuzzSummary, digits: Optional[int] = None) -> str:
    d = app_config.REPORT_DIGITS if digits is None else digits
    lines = [
        f"--- Fuzz summary (seed {summary.seed}) ---",
        f"trials                 {summary.trials}",
        f"violations             {summary.violations}",
        f"errors                 {summary.errors}",
        f"saturation checked     {summary.saturation_checked}"
        f" (failures {summary.saturation_failures},"
        f" max gap {_fmt(summary.max_saturation_gap, 12)})",
        f"relation1 sharper      {summary.relation1_sharper}"
        f" (first seed {summary.relation1_sharper_seed})",
        f"uncoupled sharper      {summary.uncoupled_sharper}"
        f" (first seed {summary.uncoupled_sharper_seed})",
        "min slack per bound:",
    ]
    for name in sorted(summary.min_slack):
        lines.append(f"  {name:<26} {_fmt(summary.min_slack[name], d)}")
    for failed in summary.failed:
        lines.append(f"FAILED trial {failed.index} seed {failed.seed}: {failed.reason}")
    return "\n".join(lines)
