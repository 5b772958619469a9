"""Structured text output for certificates and oracle reports.

Certificates are JSON objects with a fixed key order; rationals are
written as ``"p/q"`` strings and integers as JSON numbers, so a parsed
certificate can be re-verified exactly.  Oracle scans are CSV.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from . import linalg
from .errors import ParseError
from .frobenius import FeasibilityCertificate
from .oracles import OracleReport


def _num(v):
    if v is None:
        return None
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _vec(v):
    return None if v is None else [_num(x) for x in v]


def _mat(M):
    return [_vec(row) for row in M]


def _parse_num(v):
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        f = Fraction(v)
        return f.numerator if f.denominator == 1 else f
    raise ParseError(f"expected an integer or 'p/q' string, got {v!r}")


def certificate_to_dict(cert: FeasibilityCertificate) -> dict:
    out = {
        'form': cert.form,
        'mode': cert.mode,
        'verified': cert.verified,
        'A': _mat(cert.A),
        'b': _vec(cert.b),
        'z': _vec(cert.z),
        'delta': cert.delta,
        'threshold_t': _num(cert.threshold_t),
    }
    if cert.base is not None:
        out['base'] = {'rows': list(cert.base.indices), 'det_abs': cert.base.det_abs}
    if cert.search is not None:
        s = cert.search
        out['search'] = {
            'guarantee': s.guarantee,
            'iterations': s.iterations,
            'initial_det': s.initial_det,
            'swaps': [{'out': list(w.out), 'into': list(w.into), 'growth': _num(w.growth)}
                      for w in s.swaps],
        }
    if cert.slack_input is not None:
        out['slack_input'] = {'x': _vec(cert.slack_input.x),
                              'min_slack': _num(cert.slack_input.min_slack)}
    if cert.rounding is not None:
        r = cert.rounding
        out['rounding'] = {'z': _vec(r.z), 'achieved': _num(r.achieved),
                           'method': r.method, 'certified': r.certified}
    if cert.shifted_b is not None:
        out['shifted_b'] = _vec(cert.shifted_b)
    if cert.gomory is not None:
        g = cert.gomory
        out['gomory'] = {'precondition_ok': g.precondition_ok, 'violated_row': g.violated_row,
                         'corner_z': _vec(g.z)}
    if cert.bound is not None:
        out['bound'] = {'form': cert.bound.bound_form,
                        'envelope': _num(cert.bound.numeric_envelope)}
    if cert.canonical is not None:
        out['canonical'] = certificate_to_dict(cert.canonical)
    return out


def certificate_to_text(cert: FeasibilityCertificate) -> str:
    data = certificate_to_dict(cert)
    body = ',\n'.join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in data.items())
    return '{\n' + body + '\n}'


def certificate_from_text(text: str) -> dict:
    """Parse a certificate; numbers come back as int or Fraction."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid certificate: {exc.msg}", line=exc.lineno) from None
    for key in ('form', 'A', 'b', 'z', 'verified'):
        if key not in data:
            raise ParseError(f"certificate is missing {key!r}")
    data['A'] = tuple(tuple(_parse_num(v) for v in row) for row in data['A'])
    data['b'] = tuple(_parse_num(v) for v in data['b'])
    data['z'] = tuple(_parse_num(v) for v in data['z'])
    return data


def reverify(data: dict) -> bool:
    """Check a parsed certificate's point against its own system."""
    A, b, z = data['A'], data['b'], data['z']
    if any(isinstance(v, Fraction) for v in z):
        return False
    Az = linalg.matvec(A, z) if A else ()
    if data['form'] == 'canonical':
        return all(ax <= bi for ax, bi in zip(Az, b))
    return all(v >= 0 for v in z) and tuple(Az) == tuple(b)


def _cell(v):
    if v is None:
        return ''
    if isinstance(v, (tuple, list)):
        return ' '.join(str(_num(x)) for x in v)
    return str(_num(v))


def oracle_report_to_csv(report: OracleReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator='\n')
    w.writerow(['b', 'slack', 'feasible', 'witness'])
    for row in sorted(report.rows, key=lambda r: r.b):
        w.writerow([_cell(row.b), _cell(row.slack), int(row.feasible), _cell(row.point)])
    return buf.getvalue()


def oracle_summary(report: OracleReport) -> str:
    lines = [
        f"box: {' x '.join(f'[{lo},{hi}]' for lo, hi in report.box)}",
        f"right-hand sides scanned: {len(report.rows)}",
        f"empirical threshold (box-restricted lower bound): {report.empirical_threshold}",
    ]
    for wt in report.witnesses:
        lines.append(f"witness b = {_cell(wt.b)}: slack {_cell(wt.slack)} at x = {_cell(wt.point)}, "
                     f"no integer point")
    return '\n'.join(lines)
