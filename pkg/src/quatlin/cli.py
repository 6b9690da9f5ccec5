"""Command-line entry point: ``quatlin <command> <matrix-file> [options]``.

Exit codes: 0 success, 1 a checked identity failed, 2 unreadable input,
3 the input does not meet the command's preconditions. Reports go to
standard output; standard error only carries diagnostics.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .ceig import general_complex_eigenvalues, hermitian_right_eigen, right_eigen_classes
from .errors import ParseError, QuatlinError
from .formats import load_matrix, parse_vector, quaternion_to_list
from .lefteig import (
    hermitian_2x2_classify,
    hermitian_bound_check,
    hermitian_part_classes,
    left_eigs_2x2,
    left_membership,
    multiplicity_corollary_check,
    symplectic_2x2_detect,
    symplectic_2x2_spectra,
    symplectic_bound_check,
)
from .qmatrix import (
    QMatrix,
    QVector,
    complex_adjoint,
    hermitian_deviation,
    symplectic_deviation,
)
from .quaternion import Quaternion, parse_quaternion
from .rayleigh import (
    critical_index,
    critical_report,
    minmax_verify,
    moments,
    rayleigh_quotient,
    sphere_samples,
)

log = logging.getLogger("quatlin")

SCHEMA_VERSION = 1
COMMANDS = ("right-eigs", "left-eigs", "rayleigh", "moments", "minmax", "check")
EXIT_OK, EXIT_FALSIFIED, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3
STRUCTURE_TOL = 1e-10
Z_LIMIT = 3.0


class Precondition(Exception):
    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass
class RunConfig:
    command: str
    input_path: str
    seed: int = 42
    samples: int = 1_000_000
    tol: float = 1e-9
    vector: QVector | None = None
    lam: Quaternion | None = None
    k: int | None = None
    output: str = "human"
    expect: str = "auto"
    trials: int = 200
    workers: int = 1


@dataclass
class Check:
    name: str
    passed: bool | None  # None marks an informational observation
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    command: str
    status: str = "ok"
    result: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    reason: str | None = None
    message: str | None = None

    def add(self, name: str, passed, detail: str = "") -> bool:
        self.checks.append(Check(name, None if passed is None else bool(passed), detail))
        return bool(passed)

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.passed is False]

    def to_dict(self) -> dict:
        d = {"schema_version": SCHEMA_VERSION, "command": self.command, "status": self.status}
        if self.reason is not None:
            d["reason"] = self.reason
            d["message"] = self.message
        if self.result:
            d["result"] = self.result
        if self.checks:
            d["checks"] = [c.to_dict() for c in self.checks]
        return d


# --------------------------------------------------------------------------
# helpers

def _classes_dict(classes) -> list[dict]:
    return [
        {"real_part": c.real_part, "imag_norm": c.imag_norm, "norm": c.norm, "multiplicity": c.multiplicity}
        for c in classes
    ]


def _fmt_q(q: Quaternion) -> str:
    return " ".join(f"{c:+.12g}" for c in q.as_tuple())


def _require_square(m: QMatrix) -> None:
    if not m.is_square:
        raise Precondition("not_square", f"matrix is {m.rows}x{m.cols}")


def _is_hermitian(m: QMatrix) -> bool:
    return hermitian_deviation(m) <= STRUCTURE_TOL * max(1.0, m.max_entry_norm())


def _is_symplectic(m: QMatrix) -> bool:
    return symplectic_deviation(m) <= STRUCTURE_TOL


def _require_hermitian(m: QMatrix) -> None:
    _require_square(m)
    if not _is_hermitian(m):
        raise Precondition("not_hermitian", f"matrix is not Hermitian (deviation {hermitian_deviation(m):.3g})")


# --------------------------------------------------------------------------
# commands

def cmd_right_eigs(m: QMatrix, cfg: RunConfig, rep: Report) -> None:
    _require_square(m)
    classes = right_eigen_classes(m)
    rep.result = {"n": m.rows, "classes": _classes_dict(classes)}


def cmd_left_eigs(m: QMatrix, cfg: RunConfig, rep: Report) -> None:
    _require_square(m)
    if m.rows == 2:
        rep.result["spectrum"] = left_eigs_2x2(m).to_dict()
    elif cfg.lam is None:
        raise Precondition("lambda_required", "left-eigs for n != 2 needs --lambda")
    if cfg.lam is not None:
        ok, space = left_membership(m, cfg.lam, max(cfg.tol, 1e-8))
        rep.result["membership"] = {
            "lambda": quaternion_to_list(cfg.lam),
            "is_left": ok,
            "eig_dim": space.dim,
            "basis": [[quaternion_to_list(q) for q in v] for v in space.basis],
        }


def cmd_rayleigh(m: QMatrix, cfg: RunConfig, rep: Report) -> None:
    _require_hermitian(m)
    if cfg.vector is None:
        raise Precondition("vector_required", "rayleigh needs --vector")
    if len(cfg.vector) != m.rows:
        raise Precondition("dimension_mismatch", f"vector has length {len(cfg.vector)}, matrix is {m.rows}x{m.rows}")
    if cfg.vector.norm2() == 0.0:
        raise Precondition("zero_vector", "vector is zero")
    cr = critical_report(m, cfg.vector)
    rep.result = {"rayleigh_quotient": rayleigh_quotient(m, cfg.vector), "critical": cr.to_dict()}


def cmd_moments(m: QMatrix, cfg: RunConfig, rep: Report) -> None:
    _require_hermitian(m)
    if cfg.samples < 1000:
        raise Precondition("too_few_samples", "moments needs --samples >= 1000")
    mr = moments(m, cfg.samples, cfg.seed, workers=cfg.workers)
    rep.result = mr.to_dict()
    rep.add("sample mean within 3 standard errors of Trace(S)/n", mr.mean_z <= Z_LIMIT, f"z={mr.mean_z:.3f}")
    rep.add(
        "sample second central moment within 3 standard errors of sigma^2/(2n+1)",
        mr.second_central_z <= Z_LIMIT,
        f"z={mr.second_central_z:.3f}",
    )


def cmd_minmax(m: QMatrix, cfg: RunConfig, rep: Report) -> None:
    _require_hermitian(m)
    n = m.rows
    if cfg.k is not None and not 1 <= cfg.k <= n:
        raise Precondition("k_out_of_range", f"--k must lie in 1..{n}")
    ks = [cfg.k] if cfg.k is not None else list(range(1, n + 1))
    out = []
    for k in ks:
        r = minmax_verify(m, k, cfg.trials, cfg.seed, tol=1e-8)
        out.append(r.to_dict())
        rep.add(
            f"k={k}: min over subspaces of max R is t_k, max of min R is t_(n-k+1)",
            r.holds,
            f"violations={r.violations}, t_k={r.t_k:.12g}, attained={r.attained_upper:.12g}",
        )
    rep.result = {"n": n, "reports": out}


def cmd_check(m: QMatrix, cfg: RunConfig, rep: Report) -> None:
    _require_square(m)
    n = m.rows
    rng = np.random.default_rng(cfg.seed)
    result: dict = {"n": n}

    herm = _is_hermitian(m)
    sympl = _is_symplectic(m)
    result["hermitian"] = herm
    result["symplectic"] = sympl
    if cfg.expect == "hermitian":
        rep.add("S = S* (expected Hermitian)", herm, f"deviation {hermitian_deviation(m):.3g}")
    if cfg.expect == "symplectic":
        rep.add("A* A = A A* = I (expected symplectic)", sympl, f"deviation {symplectic_deviation(m):.3g}")

    # complex adjoint
    c = complex_adjoint(m)
    scale = max(1.0, float(np.abs(c).max())) ** 2
    err_mul = float(np.abs(complex_adjoint(m @ m) - c @ c).max())
    rep.add("c(MM) = c(M)c(M)", err_mul <= 1e-12 * scale * n, f"max error {err_mul:.3g}")
    err_adj = float(np.abs(complex_adjoint(m.adjoint()) - c.conj().T).max())
    rep.add("c(M*) = c(M)*", err_adj <= 1e-12, f"max error {err_adj:.3g}")
    eigs = general_complex_eigenvalues(c)
    gap = max(min(abs(w - z.conjugate()) for w in eigs) for z in eigs)
    rep.add("spectrum of c(M) closed under conjugation", gap <= 1e-6, f"max gap {gap:.3g}")
    classes = right_eigen_classes(m)
    result["right_classes"] = _classes_dict(classes)
    rep.add("right eigenvalues form n similarity classes", len(classes) == n)

    if herm:
        _check_hermitian_branch(m, cfg, rep, result, rng, classes)
    if sympl:
        _check_symplectic_branch(m, cfg, rep, result, classes)
    if not herm and not sympl and n == 2:
        spec = left_eigs_2x2(m)
        result["left_spectrum"] = spec.to_dict()
        ok = all(left_membership(m, lam, 1e-8)[0] for lam in spec.members())
        rep.add("every computed left eigenvalue makes M - lambda I singular", ok)
    if cfg.lam is not None and not herm and not sympl:
        ok, space = left_membership(m, cfg.lam, 1e-8)
        result["membership"] = {"lambda": quaternion_to_list(cfg.lam), "is_left": ok, "eig_dim": space.dim}
        if ok:
            resid = max((m @ v - v.left_scale(cfg.lam)).norm() for v in space.basis)
            rep.add("M v = lambda v on the computed eigenspace", resid <= 1e-8 * (1 + m.frobenius()), f"{resid:.3g}")
    rep.result = result


def _check_hermitian_branch(m, cfg, rep, result, rng, classes) -> None:
    n = m.rows
    eig = hermitian_right_eigen(m)
    t = eig.values
    result["eigenvalues"] = list(t)
    result["multiplicities"] = list(eig.multiplicities)
    snorm = max(m.frobenius(), 1e-300)
    u = eig.unitary()
    err = (eig.reconstruct() - m).frobenius()
    rep.add("S = U diag(t) U* with U symplectic", err <= 1e-8 * snorm and symplectic_deviation(u) <= 1e-8,
            f"reconstruction {err:.3g}")
    rep.add("right eigenvalues of a Hermitian matrix are real",
            all(cl.imag_norm <= 1e-6 for cl in classes)
            and max(abs(cl.real_part - x) for cl, x in zip(classes, t)) <= 1e-6)
    worst_r = max(abs(rayleigh_quotient(m, v) - x) for v, x in zip(eig.basis.basis, t))
    rep.add("R(S, u_j) = t_j at eigenvectors", worst_r <= 1e-9 * (1 + snorm), f"max error {worst_r:.3g}")
    idx_ok = True
    for j, v in enumerate(eig.basis.basis, start=1):
        cr = critical_report(m, v)
        expected = critical_index(m, j, eig)
        idx_ok &= cr.critical and cr.index_quaternionic == expected and cr.index == 4 * expected
    rep.add("eigenvectors are critical points; index of t_j is the count of eigenvalues below it", idx_ok)
    x = sphere_samples(n, 2000, rng)
    real = m.as_real()
    h = np.einsum("ij,ij->i", x, x @ real)
    rep.add("t_1 <= R(S, v) <= t_n on random unit vectors",
            bool(h.min() >= t[0] - 1e-9 * (1 + snorm) and h.max() <= t[-1] + 1e-9 * (1 + snorm)))
    mm_ok = all(minmax_verify(m, k, 50, cfg.seed).holds for k in range(1, n + 1))
    rep.add("min-max: t_k = min over k-dim E of max R on E (and the max-min dual)", mm_ok)
    reals_left = all(left_membership(m, x, 1e-8)[0] for x in t)
    rep.add("real right eigenvalues are left eigenvalues", reals_left)

    members: list[Quaternion] = []
    if n == 2:
        cls = hermitian_2x2_classify(m)
        spec = left_eigs_2x2(m)
        result["hermitian_2x2"] = cls.to_dict()
        result["left_spectrum"] = spec.to_dict()
        rep.add("real eigenvalues solve (s - t)(s' - t) - |b|^2 = 0",
                max(abs(a - b) for a, b in zip(cls.real_eigs, t)) <= 1e-9 * (1 + snorm))
        rep.add("non-real left eigenvalues exist iff Re(b) = 0 and s = s'",
                (cls.family is not None) == spec.is_infinite)
        if cls.family is not None:
            b = m[0, 1]
            ends = [cls.family.member(b / b.norm()), cls.family.member(-(b / b.norm()))]
            rep.add("omega = +-b/|b| gives the two real eigenvalues",
                    sorted(e.w for e in ends) == sorted(ends[i].w for i in range(2))
                    and max(abs(e.w - x) + e.imag.norm() for e, x in zip(sorted(ends, key=lambda q: q.w), t)) <= 1e-9)
        members = spec.members()
    elif cfg.lam is not None:
        members = [cfg.lam]
    bound_ok = True
    details = []
    for lam in members:
        ok, _ = left_membership(m, lam, 1e-8)
        if not ok:
            bound_ok = False
            details.append(f"{_fmt_q(lam)} not a left eigenvalue")
            continue
        br = hermitian_bound_check(m, lam)
        bound_ok &= br.all_hold
        mc = multiplicity_corollary_check(m, lam)
        if mc.precondition_met:
            bound_ok &= bool(mc.holds)
    if members:
        rep.add("t_k <= Re(lambda) <= t_(n-k+1) for k = dim V(lambda); R(S, v) = Re(lambda) on V(lambda)",
                bound_ok, "; ".join(details))


def _check_symplectic_branch(m, cfg, rep, result, classes) -> None:
    n = m.rows
    rep.add("right eigenvalues of a symplectic matrix have norm 1",
            all(abs(c.norm - 1.0) <= 1e-8 for c in classes))
    try:
        vals = hermitian_part_classes(m)
        result["hermitian_part_eigenvalues"] = vals
        rep.add("eigenvalues of (A + A*)/2 are the real parts of the right eigenvalues", True)
    except QuatlinError as exc:
        rep.add("eigenvalues of (A + A*)/2 are the real parts of the right eigenvalues", False, str(exc))
    if n != 2:
        if cfg.lam is not None:
            br = symplectic_bound_check(m, cfg.lam)
            rep.add("Re(q_k) <= Re(lambda) <= Re(q_(n-k+1)) and |lambda| = 1", br.all_hold)
        return
    det = symplectic_2x2_detect(m)
    spec = left_eigs_2x2(m)
    result["left_spectrum"] = spec.to_dict()
    rep.add("infinitely many left eigenvalues iff A = r [[cos, -sin], [sin, cos]] with sin != 0",
            (det is not None) == spec.is_infinite)
    members = spec.members()
    if det is not None:
        r, theta = det
        result["rotation_form"] = {"r": quaternion_to_list(r), "theta": theta}
        sp = symplectic_2x2_spectra(r, theta)
        result["symplectic_spectra"] = sp.to_dict()
        members = sp.left_family.sample()
        for lam in sp.right_members():
            ok = left_membership(m, lam, 1e-8)[0] and any(c.contains(lam, 1e-8) for c in classes)
            rep.add("omega = +-rho gives left eigenvalues that are also right eigenvalues", ok, _fmt_q(lam))
        s = QMatrix(0.5 * (m.data + m.adjoint().data))
        not_left = sum(not left_membership(s, lam, 1e-8)[0] for lam in members)
        rep.add("sampled left eigenvalues of A that are not left eigenvalues of (A + A*)/2", None,
                f"{not_left} of {len(members)}")
    ok = True
    for lam in members:
        ok &= symplectic_bound_check(m, lam).all_hold
    rep.add("Re(q_k) <= Re(lambda) <= Re(q_(n-k+1)), |lambda| = 1, h_A = h_S = Re(lambda) on V(lambda)", ok,
            f"{len(members)} left eigenvalues")


HANDLERS = {
    "right-eigs": cmd_right_eigs,
    "left-eigs": cmd_left_eigs,
    "rayleigh": cmd_rayleigh,
    "moments": cmd_moments,
    "minmax": cmd_minmax,
    "check": cmd_check,
}


# --------------------------------------------------------------------------
# output

def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, Quaternion):
        return quaternion_to_list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _clean(o):
    if isinstance(o, float):
        return o + 0.0 if math.isfinite(o) else str(o)  # + 0.0 turns -0.0 into 0.0
    if isinstance(o, dict):
        return {k: _clean(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_clean(v) for v in o]
    return o


def render_structured(rep: Report) -> str:
    return json.dumps(_clean(rep.to_dict()), sort_keys=True, indent=2, default=_json_default) + "\n"


def _human_lines(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_human_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_short(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(_human_lines(v, indent + 1))
            else:
                lines.append(f"{pad}- {_short(v)}")
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(isinstance(x, (int, float, bool, str)) or x is None for x in v)


def _short(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, list):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return str(v)


def render_human(rep: Report) -> str:
    lines = [f"quatlin {rep.command}: {rep.status}"]
    if rep.reason:
        lines.append(f"reason: {rep.reason}: {rep.message}")
    lines.extend(_human_lines(_clean(rep.result)))
    for c in rep.checks:
        tag = "INFO" if c.passed is None else ("PASS" if c.passed else "FAIL")
        lines.append(f"[{tag}] {c.name}" + (f" ({c.detail})" if c.detail else ""))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quatlin", description="Quaternionic eigenvalue computations and checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="matrix file (text 'n m' + rows of literals, or JSON document)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=1_000_000, help="Monte-Carlo samples for moments")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--vector", help='comma-separated quaternion literals, e.g. "1,i"')
    p.add_argument("--lambda", dest="lam", help='quaternion literal, e.g. "0.5+0.5j"')
    p.add_argument("--k", type=int)
    p.add_argument("--output", choices=("human", "structured"), default="human")
    p.add_argument("--expect", choices=("auto", "hermitian", "symplectic"), default="auto",
                   help="for check: fail unless the matrix has this structure")
    p.add_argument("--trials", type=int, default=200, help="random subspaces per k for minmax")
    p.add_argument("--workers", type=int, default=1, help="threads for Monte-Carlo shards")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run(cfg: RunConfig, out=None) -> int:
    """Execute one command, write its report to ``out`` and return the exit code."""
    out = sys.stdout if out is None else out
    rep = Report(cfg.command)
    code = EXIT_OK
    try:
        m = load_matrix(cfg.input_path)
        HANDLERS[cfg.command](m, cfg, rep)
        if rep.failed:
            rep.status, code = "falsified", EXIT_FALSIFIED
    except (ParseError, OSError, UnicodeDecodeError) as exc:
        rep.status, rep.reason, rep.message, code = "parse_error", "parse_error", str(exc), EXIT_PARSE
        log.error("cannot read %s: %s", cfg.input_path, exc)
    except Precondition as exc:
        rep.status, rep.reason, rep.message, code = "precondition_failed", exc.reason, str(exc), EXIT_PRECONDITION
        log.error("%s", exc)
    except QuatlinError as exc:
        rep.status, rep.reason, rep.message, code = "falsified", type(exc).__name__, str(exc), EXIT_FALSIFIED
        log.error("%s", exc)
    out.write(render_structured(rep) if cfg.output == "structured" else render_human(rep))
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        vector = parse_vector(args.vector) if args.vector else None
        lam = parse_quaternion(args.lam) if args.lam else None
    except ParseError as exc:
        log.error("%s", exc)
        rep = Report(args.command, "parse_error", reason="parse_error", message=str(exc))
        sys.stdout.write(render_structured(rep) if args.output == "structured" else render_human(rep))
        return EXIT_PARSE
    cfg = RunConfig(
        command=args.command,
        input_path=args.input,
        seed=args.seed,
        samples=args.samples,
        tol=args.tol,
        vector=vector,
        lam=lam,
        k=args.k,
        output=args.output,
        expect=args.expect,
        trials=args.trials,
        workers=args.workers,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
