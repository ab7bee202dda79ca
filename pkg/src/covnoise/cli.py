"""Command line reports for noise tables, observables and multiplier growth.

One binary, subcommand style.  Configuration precedence is flags over
config file over defaults.  Reports are deterministic: identical inputs
produce byte-identical output, with every float printed at 17 significant
digits.  Exit codes: 0 success, 1 a mathematical check failed, 2 bad
usage or unparsable input, 3 a resource limit was hit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, ResourceLimitError, UsageError
from .matrices import (
    ChessboardParams,
    IndexDomain,
    IndexWindow,
    Orientation,
    PhaseSequence,
    StructureMatrix,
    chessboard,
    constant_one,
    matrix_from_spec,
    seeded_gram,
    seeded_torus,
    torus_phase_recovery,
    truncate,
)
from .noise import (
    NoiseQuery,
    asymptotic_noise_estimate,
    chessboard_noise_closed_form,
    is_noiseless_z,
    noise_value,
)
from .observables import (
    IntervalSet,
    angle_from_string,
    covariance_defect,
    moment_operator,
    noise_operator_diagonal,
    observable_operator,
)
from .schur_analysis import modulus_growth_table, operator_norm, sylvester_hadamard_example

_SUITES = ("chessboard", "torus", "covariance", "noise_diagonal", "schur", "all")


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters shared by every subcommand."""

    matrix_spec: dict | None = None
    tolerance: float | None = None
    window: IndexWindow | None = None
    output_format: str | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.tolerance is not None and not self.tolerance > 0.0:
            raise UsageError(f"tolerance must be positive, got {self.tolerance}")
        if self.output_format not in (None, "csv", "json"):
            raise UsageError(f"unknown output format {self.output_format!r}")

    def tol(self, default: float) -> float:
        return self.tolerance if self.tolerance is not None else default

    def fmt(self, default: str) -> str:
        return self.output_format if self.output_format is not None else default


def _parse_window(text: str) -> IndexWindow:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"window {text!r} must look like lo:hi")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise UsageError(f"window {text!r} must have integer endpoints") from exc
    return IndexWindow(lo, hi)


def _parse_int_list(text: str) -> list[int]:
    """Either an inclusive range "lo:hi" (possibly empty) or "a,b,c"."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 2:
            raise UsageError(f"range {text!r} must look like lo:hi")
        try:
            lo, hi = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise UsageError(f"range {text!r} must have integer endpoints") from exc
        return list(range(lo, hi + 1))
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"cannot parse integer list {text!r}") from exc


def _load_json(text_or_path: str) -> dict:
    raw = text_or_path.strip()
    if not raw.startswith("{"):
        try:
            with open(text_or_path, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {text_or_path!r}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("top-level JSON must be an object")
    return data


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if getattr(args, "config", None):
        data = _load_json(args.config)
    spec = data.get("matrix")
    tolerance = data.get("tolerance")
    window = data.get("window")
    output_format = data.get("format")
    seed = data.get("seed", 0)
    if isinstance(window, str):
        window = _parse_window(window)
    elif isinstance(window, list):
        if len(window) != 2:
            raise UsageError(f"config window {window!r} must be [lo, hi]")
        window = IndexWindow(int(window[0]), int(window[1]))
    elif window is not None:
        raise UsageError(f"config window {window!r} must be a string or pair")

    if getattr(args, "matrix", None) is not None:
        spec = _load_json(args.matrix)
    if getattr(args, "tol", None) is not None:
        tolerance = args.tol
    if getattr(args, "window", None) is not None:
        window = _parse_window(args.window)
    if getattr(args, "format", None) is not None:
        output_format = args.format
    if getattr(args, "seed", None) is not None:
        seed = args.seed
    if tolerance is not None:
        tolerance = float(tolerance)
    return RunConfig(spec, tolerance, window, output_format, int(seed))


def _matrix(cfg: RunConfig) -> StructureMatrix:
    if cfg.matrix_spec is None:
        return constant_one(IndexDomain.NATURALS)
    return matrix_from_spec(cfg.matrix_spec)


def _default_window(domain: IndexDomain, size: int = 32) -> IndexWindow:
    if domain is IndexDomain.NATURALS:
        return IndexWindow(0, size - 1)
    return IndexWindow(-size // 2, size // 2 - 1)


# Deterministic serialization: floats always go through %.17g so repeated
# runs diff clean; complex values appear as [re, im] pairs.

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _json_token(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, (bool, float, int)):
        return _fmt(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, complex):
        return "[%s, %s]" % (_fmt(value.real), _fmt(value.imag))
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_token(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(
            "%s: %s" % (json.dumps(str(k)), _json_token(v)) for k, v in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _render_json(obj) -> str:
    return _json_token(obj) + "\n"


def _render_csv(header: tuple[str, ...], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _operator_payload(window: IndexWindow, entries: np.ndarray) -> dict:
    flat = [[float(z.real), float(z.imag)] for z in entries.reshape(-1)]
    return {"window": [window.lo, window.hi], "entries": flat}


def cmd_noise_table(cfg: RunConfig, l_list: list[int], n_list: list[int],
                    out: str | None) -> int:
    A = _matrix(cfg)
    tol = cfg.tol(1e-8)
    rows = []
    for n in n_list:
        for l in l_list:
            v = noise_value(A, NoiseQuery(n, l, tol))
            rows.append((n, l, v.value, v.lower, v.upper, v.cutoff))
    if cfg.fmt("csv") == "json":
        records = [{"n": n, "l": l, "value": value, "lower": lower,
                    "upper": upper, "cutoff": cutoff}
                   for n, l, value, lower, upper, cutoff in rows]
        _emit(_render_json(records), out)
    else:
        _emit(_render_csv(("n", "l", "value", "lower", "upper", "cutoff"), rows), out)
    return 0


def cmd_asymptotic(cfg: RunConfig, l_list: list[int], horizon: int,
                   out: str | None) -> int:
    A = _matrix(cfg)
    tol = cfg.tol(1e-3)
    records = []
    rows = []
    for l in l_list:
        est = asymptotic_noise_estimate(A, l, tol=tol, horizon=horizon)
        records.append({
            "l": l,
            "classification": est.classification.value,
            "estimate": est.estimate,
            "samples": [{"n": n, "value": s.value, "lower": s.lower,
                         "upper": s.upper, "cutoff": s.cutoff}
                        for n, s in zip(est.sample_points, est.samples)],
        })
        rows.append((l, est.classification.value, est.estimate))
    if cfg.fmt("csv") == "json":
        _emit(_render_json(records), out)
    else:
        _emit(_render_csv(("l", "classification", "estimate"), rows), out)
    return 0


def cmd_observable(cfg: RunConfig, x_text: str, moment: int | None,
                   out: str | None) -> int:
    A = _matrix(cfg)
    w = cfg.window if cfg.window is not None else _default_window(A.domain)
    if moment is None:
        op = observable_operator(A, IntervalSet.from_string(x_text), w)
    else:
        op = moment_operator(A, moment, w)
    payload = _operator_payload(op.window, op.entries)
    if cfg.fmt("json") == "csv":
        idx = w.indices()
        rows = [(int(n), int(m), z.real, z.imag)
                for i, n in enumerate(idx) for m, z in zip(idx, op.entries[i])]
        _emit(_render_csv(("n", "m", "re", "im"), rows), out)
    else:
        _emit(_render_json(payload), out)
    return 0


def cmd_covariance_check(cfg: RunConfig, x_text: str, shift_text: str,
                         out: str | None) -> int:
    A = _matrix(cfg)
    w = cfg.window if cfg.window is not None else _default_window(A.domain, 128)
    X = IntervalSet.from_string(x_text)
    x = angle_from_string(shift_text)
    defect = covariance_defect(A, X, x, w)
    passed = defect <= 1e-12
    payload = {"window": [w.lo, w.hi], "shift": x, "defect": defect, "pass": passed}
    if cfg.fmt("json") == "csv":
        _emit(_render_csv(("window_lo", "window_hi", "shift", "defect", "pass"),
                          [(w.lo, w.hi, x, defect, passed)]), out)
    else:
        _emit(_render_json(payload), out)
    return 0 if passed else 1


def cmd_noise_diagonal(cfg: RunConfig, n_list: list[int], out: str | None) -> int:
    A = _matrix(cfg)
    w = cfg.window if cfg.window is not None else _default_window(A.domain, 256)
    tol = cfg.tol(1e-6)
    rows = []
    all_ok = True
    for n in n_list:
        value, tail = noise_operator_diagonal(A, n, w)
        s = noise_value(A, NoiseQuery(n, 2, tol))
        defect = abs(value - s.value)
        ok = (value - tail <= s.upper) and (s.lower <= value + tail)
        all_ok = all_ok and ok
        rows.append((n, value, tail, s.lower, s.upper, defect, ok))
    header = ("n", "value", "tail_bound", "lower", "upper", "defect", "intersects")
    if cfg.fmt("csv") == "json":
        records = [dict(zip(header, row)) for row in rows]
        _emit(_render_json(records), out)
    else:
        _emit(_render_csv(header, rows), out)
    return 0 if all_ok else 1


def cmd_schur_growth(cfg: RunConfig, r_list: list[int], out: str | None) -> int:
    table = modulus_growth_table(r_list)
    rows = [(rec.r, rec.min_row_sum, rec.harmonic_bound, rec.norm) for rec in table]
    if cfg.fmt("csv") == "json":
        records = [{"r": r, "s_r": s, "u_r": u, "norm": norm}
                   for r, s, u, norm in rows]
        _emit(_render_json(records), out)
    else:
        _emit(_render_csv(("r", "s_r", "u_r", "norm"), rows), out)
    return 0


def cmd_hadamard(cfg: RunConfig, p_max: int, out: str | None) -> int:
    rows = []
    all_ok = True
    for p in range(1, p_max + 1):
        _, norm, mod_norm = sylvester_hadamard_example(p)
        expected = 2.0 ** (p / 2.0)
        ok = abs(norm.value - 1.0) <= 1e-9 and abs(mod_norm.value - expected) <= 1e-9
        all_ok = all_ok and ok
        rows.append((p, norm.value, mod_norm.value, expected, ok))
    header = ("p", "norm", "modulus_norm", "expected_modulus_norm", "pass")
    if cfg.fmt("csv") == "json":
        _emit(_render_json([dict(zip(header, row)) for row in rows]), out)
    else:
        _emit(_render_csv(header, rows), out)
    return 0 if all_ok else 1


# The verify suites are fixed cross-module checks; each prints one line per
# check with its measured defect and the command fails if any line fails.

class _Suite:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.ok = True

    def check(self, name: str, passed: bool, defect: float) -> None:
        self.ok = self.ok and passed
        word = "PASS" if passed else "FAIL"
        self.lines.append("%s %s defect=%.3e" % (word, name, defect))

    def render(self) -> str:
        return "\n".join(self.lines) + "\n"


def _suite_chessboard(cfg: RunConfig) -> _Suite:
    suite = _Suite()
    for xi in (0.0, 0.3, 0.7, 1.0):
        A = chessboard(IndexDomain.NATURALS, ChessboardParams(xi))
        tol = 1e-8 if xi == 1.0 else 1e-5
        worst = -math.inf
        good = True
        for n in (0, 1, 2, 3, 5, 8, 13, 21, 34):
            for l in (1, 2, 3, 4):
                v = noise_value(A, NoiseQuery(n, l, tol))
                cf = chessboard_noise_closed_form(
                    ChessboardParams(xi), IndexDomain.NATURALS, n, l)
                overshoot = max(v.lower - cf.value, cf.value - v.upper)
                worst = max(worst, overshoot)
                good = good and overshoot <= 1e-9
        suite.check("chessboard-naturals-closed-form xi=%g" % xi, good, max(worst, 0.0))
    for xi in (0.0, 0.5, 1.0):
        for orientation, constant in (
                (Orientation.ONE_ON_EVEN_SUM, math.pi ** 2 / 4.0),
                (Orientation.ONE_ON_ODD_SUM, math.pi ** 2 / 12.0)):
            A = chessboard(IndexDomain.INTEGERS, ChessboardParams(xi, orientation))
            target = (1.0 - xi ** 2) * constant
            v = noise_value(A, NoiseQuery(0, 2, 1e-8 if xi == 1.0 else 1e-6))
            defect = max(v.lower - target, target - v.upper, 0.0)
            suite.check("chessboard-integers %s xi=%g" % (orientation.value, xi),
                        defect <= 1e-9, defect)
    worst_even = worst_odd = 0.0
    mono = True
    for xi in (0.0, 0.3, 0.7, 1.0):
        params = ChessboardParams(xi)
        for k in range(0, 25):
            s0 = chessboard_noise_closed_form(params, IndexDomain.NATURALS, 2 * k, 2).value
            s1 = chessboard_noise_closed_form(params, IndexDomain.NATURALS, 2 * k + 1, 2).value
            s2 = chessboard_noise_closed_form(params, IndexDomain.NATURALS, 2 * k + 2, 2).value
            worst_even = max(worst_even, abs((s0 - s1) - xi ** 2 / (2 * k + 1) ** 2))
            worst_odd = max(worst_odd, abs((s1 - s2) - 1.0 / (2 * k + 2) ** 2))
            mono = mono and s0 >= s1 > s2
    suite.check("difference-identity-even-start", worst_even <= 1e-12, worst_even)
    suite.check("difference-identity-odd-start", worst_odd <= 1e-12, worst_odd)
    suite.check("monotone-decrease", mono, 0.0)
    return suite


def _suite_torus(cfg: RunConfig) -> _Suite:
    suite = _Suite()
    for domain in (IndexDomain.NATURALS, IndexDomain.INTEGERS):
        A = seeded_torus(domain, seed=cfg.seed)
        w = _default_window(domain, 64)
        recovered = torus_phase_recovery(A, w, 1e-10)
        if isinstance(recovered, PhaseSequence):
            idx = w.indices()
            nu = np.asarray([float(recovered.nu(int(n))) for n in idx])
            block = truncate(A, w)
            defect = float(np.max(np.abs(
                np.exp(1j * (nu[:, None] - nu[None, :])) - block)))
            suite.check("phase-recovery %s" % domain.value, defect <= 1e-9, defect)
        else:
            suite.check("phase-recovery %s" % domain.value, False, math.inf)
        ref = constant_one(domain)
        ns = (0, 5, 12) if domain is IndexDomain.NATURALS else (-7, 0, 3)
        worst = 0.0
        good = True
        for n in ns:
            for l in (1, 2):
                va = noise_value(A, NoiseQuery(n, l, 1e-8))
                vb = noise_value(ref, NoiseQuery(n, l, 1e-8))
                gap = abs(va.value - vb.value)
                worst = max(worst, gap)
                good = good and gap <= va.width + vb.width
        suite.check("torus-noise-matches-constant %s" % domain.value, good, worst)
    A = seeded_torus(IndexDomain.INTEGERS, seed=cfg.seed)
    suite.check("torus-integers-noiseless",
                is_noiseless_z(A, 2, IndexWindow(-5, 5)), 0.0)
    failure = torus_phase_recovery(
        chessboard(IndexDomain.INTEGERS, ChessboardParams(0.5)),
        IndexWindow(-8, 7), 1e-10)
    suite.check("recovery-rejects-non-torus",
                not isinstance(failure, PhaseSequence), 0.0)
    return suite


def _suite_covariance(cfg: RunConfig) -> _Suite:
    suite = _Suite()
    rng = np.random.default_rng(cfg.seed)
    for domain in (IndexDomain.NATURALS, IndexDomain.INTEGERS):
        if domain is IndexDomain.NATURALS:
            A = seeded_gram(domain, 8, seed=cfg.seed)
        else:
            A = seeded_torus(domain, seed=cfg.seed)
        w = _default_window(domain, 128)
        worst = 0.0
        for _ in range(20):
            count = int(rng.integers(1, 4))
            ends = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=2 * count))
            X = IntervalSet.from_pairs(ends.reshape(-1, 2))
            x = float(rng.uniform(0.0, 2.0 * math.pi))
            worst = max(worst, covariance_defect(A, X, x, w))
        suite.check("covariance %s window=128" % domain.value, worst <= 1e-12, worst)
    return suite


def _suite_noise_diagonal(cfg: RunConfig) -> _Suite:
    suite = _Suite()
    cases = (
        ("constant-integers", constant_one(IndexDomain.INTEGERS)),
        ("chessboard-integers", chessboard(IndexDomain.INTEGERS, ChessboardParams(0.5))),
        ("torus-integers", seeded_torus(IndexDomain.INTEGERS, seed=cfg.seed)),
        ("gram-naturals", seeded_gram(IndexDomain.NATURALS, 8, seed=cfg.seed)),
    )
    for name, A in cases:
        good = True
        worst = 0.0
        for size in (128, 256):
            w = _default_window(A.domain, size)
            ns = (0, 5) if A.domain is IndexDomain.NATURALS else (-2, 0, 3)
            for n in ns:
                value, tail = noise_operator_diagonal(A, n, w)
                s = noise_value(A, NoiseQuery(n, 2, 1e-6))
                defect = abs(value - s.value)
                worst = max(worst, defect)
                good = good and defect <= tail + s.width
                good = good and (value - tail <= s.upper) and (s.lower <= value + tail)
        suite.check("noise-diagonal %s" % name, good, worst)
    return suite


def _suite_schur(cfg: RunConfig) -> _Suite:
    suite = _Suite()
    table = modulus_growth_table((5, 55, 555))
    chain = all(rec.norm + 1e-9 >= rec.min_row_sum > rec.harmonic_bound
                for rec in table)
    suite.check("growth-chain r=5,55,555", chain, 0.0)
    u5 = table[0].harmonic_bound
    suite.check("harmonic-bound-start", abs(u5 - 23.0 / (15.0 * math.pi)) <= 1e-12,
                abs(u5 - 23.0 / (15.0 * math.pi)))
    suite.check("harmonic-bound-growth",
                table[-1].harmonic_bound - table[0].harmonic_bound > 0.5,
                table[-1].harmonic_bound - table[0].harmonic_bound)
    E = observable_operator(constant_one(IndexDomain.NATURALS),
                            IntervalSet.from_string("0:pi"), IndexWindow(0, 63))
    norm = operator_norm(E.entries)
    suite.check("observable-contraction window=64", norm.value <= 1.0 + 1e-9,
                max(norm.value - 1.0, 0.0))
    good = True
    worst = 0.0
    for p in range(1, 7):
        _, nrm, mod = sylvester_hadamard_example(p)
        gap = max(abs(nrm.value - 1.0), abs(mod.value - 2.0 ** (p / 2.0)))
        worst = max(worst, gap)
        good = good and gap <= 1e-9
    suite.check("hadamard-separation p<=6", good, worst)
    return suite


def cmd_verify(cfg: RunConfig, suite_name: str, out: str | None) -> int:
    runners = {
        "chessboard": _suite_chessboard,
        "torus": _suite_torus,
        "covariance": _suite_covariance,
        "noise_diagonal": _suite_noise_diagonal,
        "schur": _suite_schur,
    }
    names = list(runners) if suite_name == "all" else [suite_name]
    lines = []
    ok = True
    for name in names:
        suite = runners[name](cfg)
        lines.extend(suite.lines)
        ok = ok and suite.ok
    _emit("\n".join(lines) + "\n", out)
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covnoise",
        description="Noise sequences, covariant observables and Schur "
                    "multiplier growth for structure matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", metavar="FILE",
                        help="JSON file with matrix/tolerance/window/format/seed")
        sp.add_argument("--matrix", metavar="SPEC",
                        help="matrix spec, inline JSON or a path to a JSON file")
        sp.add_argument("--tol", type=float, metavar="T",
                        help="bracket tolerance")
        sp.add_argument("--window", metavar="LO:HI",
                        help="index window, e.g. --window=-16:15")
        sp.add_argument("--format", choices=("csv", "json"))
        sp.add_argument("--seed", type=int, metavar="S",
                        help="seed for the randomized suites")
        sp.add_argument("--out", metavar="FILE",
                        help="write the report here instead of stdout")

    sp = sub.add_parser("noise-table", help="tabulate noise brackets over n and l")
    common(sp)
    sp.add_argument("--n", default="0:9", metavar="LO:HI|A,B,..")
    sp.add_argument("--l", default="2", metavar="A,B,..")

    sp = sub.add_parser("asymptotic", help="heuristic large-n classification")
    common(sp)
    sp.add_argument("--l", default="2", metavar="A,B,..")
    sp.add_argument("--horizon", type=int, default=4096)

    sp = sub.add_parser("verify", help="run a named cross-module check suite")
    common(sp)
    sp.add_argument("--suite", required=True, choices=_SUITES)

    sp = sub.add_parser("observable", help="dump an observable or moment operator")
    common(sp)
    sp.add_argument("--x", default="0:pi", metavar="A:B,..",
                    help="interval set, endpoints may use pi")
    sp.add_argument("--moment", type=int, choices=(1, 2),
                    help="dump the moment operator of this order instead")

    sp = sub.add_parser("covariance-check", help="measure one covariance defect")
    common(sp)
    sp.add_argument("--x", default="0:pi", metavar="A:B,..")
    sp.add_argument("--shift", default="pi/2", metavar="EXPR",
                    help="rotation angle, e.g. pi/3")

    sp = sub.add_parser("noise-diagonal",
                        help="window diagonal of the noise operator vs brackets")
    common(sp)
    sp.add_argument("--n", default="0", metavar="LO:HI|A,B,..")

    sp = sub.add_parser("schur-growth", help="growth table for the modulus kernel")
    common(sp)
    sp.add_argument("--r", default="5,55,555,5555", metavar="A,B,..")

    sp = sub.add_parser("hadamard", help="norm separation of Hadamard blocks")
    common(sp)
    sp.add_argument("--p-max", type=int, default=10)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        out = getattr(args, "out", None)
        if args.command == "noise-table":
            return cmd_noise_table(cfg, _parse_int_list(args.l),
                                   _parse_int_list(args.n), out)
        if args.command == "asymptotic":
            return cmd_asymptotic(cfg, _parse_int_list(args.l), args.horizon, out)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, out)
        if args.command == "observable":
            return cmd_observable(cfg, args.x, args.moment, out)
        if args.command == "covariance-check":
            return cmd_covariance_check(cfg, args.x, args.shift, out)
        if args.command == "noise-diagonal":
            return cmd_noise_diagonal(cfg, _parse_int_list(args.n), out)
        if args.command == "schur-growth":
            return cmd_schur_growth(cfg, _parse_int_list(args.r), out)
        if args.command == "hadamard":
            return cmd_hadamard(cfg, args.p_max, out)
        parser.error(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except ContractViolationError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
