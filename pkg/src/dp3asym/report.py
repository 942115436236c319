"""Rendering of check results and computed formulas."""
from __future__ import annotations

import csv
import io

from .serialization import dumps


def summary(results):
    passed = sum(r.passed for r in results)
    return {"total": len(results), "passed": passed, "failed": len(results) - passed}


def render_text(results) -> str:
    width = max((len(f"{r.suite}/{r.name}") for r in results), default=10)
    lines = []
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        lines.append(f"{tag}  {r.suite + '/' + r.name:<{width}}  {r.seconds:8.2f}s  {r.detail}")
        if not r.passed:
            lines.append(f"      citation: {r.citation}")
    s = summary(results)
    lines.append(f"{s['passed']}/{s['total']} checks passed, {s['failed']} failed")
    return "\n".join(lines) + "\n"


def render_json(results) -> str:
    return dumps("verify-report", {"summary": summary(results),
                                   "checks": [r.as_dict() for r in results]})


def render_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "name", "passed", "seconds", "citation", "detail"])
    for r in results:
        w.writerow([r.suite, r.name, int(r.passed), f"{r.seconds:.3f}", r.citation, r.detail])
    return buf.getvalue()


def _tex_escape(s: str) -> str:
    for a, b in (("\\", r"\textbackslash{}"), ("_", r"\_"), ("%", r"\%"), ("&", r"\&"),
                 ("#", r"\#"), ("$", r"\$"), ("^", r"\^{}"), ("{", r"\{"), ("}", r"\}")):
        s = s.replace(a, b) if a != "\\" else s.replace(a, "\x00")
    return s.replace("\x00", r"\textbackslash{}")


def latex_document(formulas: dict, title="dp3asym formulas") -> str:
    """Standalone document with one display per named formula; values need .latex()."""
    body = []
    for name, f in formulas.items():
        tex = f.latex() if hasattr(f, "latex") else str(f)
        body.append(f"\\noindent {_tex_escape(str(name))}:\n\\[\n{tex}\n\\]\n")
    return ("\\documentclass{article}\n\\usepackage{amsmath}\n\\usepackage[margin=1in]{geometry}\n"
            "\\allowdisplaybreaks\n\\begin{document}\n"
            f"\\section*{{{_tex_escape(title)}}}\n" + "\n".join(body) + "\\end{document}\n")


def render_latex(results) -> str:
    rows = [f"{_tex_escape(r.suite)} & {_tex_escape(r.name)} & {'PASS' if r.passed else 'FAIL'} \\\\"
            for r in results]
    s = summary(results)
    return ("\\documentclass{article}\n\\usepackage{longtable}\n\\begin{document}\n"
            "\\begin{longtable}{llc}\nsuite & check & result \\\\ \\hline\n" + "\n".join(rows)
            + f"\n\\end{{longtable}}\n{s['passed']}/{s['total']} passed.\n\\end{{document}}\n")


RENDERERS = {"text": render_text, "json": render_json, "csv": render_csv, "latex": render_latex}


def emit_report(results, fmt="text") -> str:
    return RENDERERS[fmt](results)
