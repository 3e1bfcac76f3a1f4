"""Command-line front end: load theory specifications, run named
verification suites, emit human-readable and machine-readable reports.

Theory files and structured reports share one line-oriented key/value
syntax: `key = value`, one pair per line, `#` comments, complex numbers
as "re+imj", matrices as whitespace-separated entries in row-major
order.  Every check draws its randomness from a sub-seed derived as the
first eight bytes (big-endian) of sha256("{seed}:{check name}"), so
check order and concurrency cannot alter results and reports are
byte-identical for a fixed (spec, seed, version).
"""

import argparse
import hashlib
import sys
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from . import channels as ch
from . import core, faithful, gns, infodim
from . import quantum as qm
from .errors import (
    OpcalError,
    ParseError,
    UnknownSuite,
    ValidationError,
    ZeroProbability,
)

SUITES = ("core", "norms", "infodim", "table1", "faithful", "gns", "born")
SAMPLES = 25  # per sampled check; the test suite runs the 100-sample versions


# ---------------------------------------------------------------------------
# key/value syntax (shared by theory files and structured reports)


def parse_kv(text):
    """Parse `key = value` lines into an ordered list of
    (line number, key, value) triples."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ParseError(f"line {lineno}: empty key")
        out.append((lineno, key, value.strip()))
    return out


def _parse_complex_matrix(value, lineno, key):
    try:
        entries = [complex(tok) for tok in value.split()]
    except ValueError as exc:
        raise ParseError(f"line {lineno}: field {key}: {exc}") from exc
    n = int(round(np.sqrt(len(entries))))
    if n * n != len(entries):
        raise ParseError(
            f"line {lineno}: field {key}: {len(entries)} entries do not "
            "form a square matrix"
        )
    return np.array(entries, dtype=complex).reshape(n, n)


# ---------------------------------------------------------------------------
# theory specification


@dataclass(frozen=True)
class TheorySpec:
    """Validated run configuration: backend, dimension, master seed,
    tolerance, and an optional joint-state override for the faithful
    and representation suites."""

    backend: str = "quantum"
    d: int = 2
    seed: int = 0
    tol: float = 1e-9
    phi_override: np.ndarray = None

    def theory(self):
        return core.Theory(self.backend, self.d)

    def phi(self):
        if self.phi_override is not None:
            return qm.BipartiteState(self.d, self.phi_override)
        return qm.max_entangled(self.d)


def validate_spec(spec):
    errors = []
    if spec.backend not in ("quantum", "classical"):
        errors.append(f"backend must be quantum or classical, got {spec.backend!r}")
    if spec.d < 2:
        errors.append(f"d must be >= 2, got {spec.d}")
    if not 0 <= spec.seed < 2**64:
        errors.append("seed must fit in 64 bits")
    if spec.tol <= 0:
        errors.append("tol must be positive")
    if spec.phi_override is not None and not errors:
        m = spec.phi_override
        n = spec.d * spec.d
        if m.shape != (n, n):
            errors.append(f"override matrix must be {n} x {n}, got {m.shape}")
        else:
            if np.max(np.abs(m - m.conj().T)) > 1e-9:
                errors.append("override matrix is not Hermitian")
            else:
                low = float(np.linalg.eigvalsh(m)[0])
                if low < -1e-9:
                    errors.append(
                        f"override matrix is not PSD: eigenvalue {low:.6e}"
                    )
            tr = complex(np.trace(m))
            if abs(tr - 1.0) > 1e-6:
                errors.append(f"override matrix trace {tr} is not 1")
    if errors:
        raise ValidationError("; ".join(errors))
    if spec.phi_override is not None:
        m = spec.phi_override
        m = (m + m.conj().T) / 2.0
        spec = replace(spec, phi_override=m / np.real(np.trace(m)))
    return spec


def load_theory(path):
    """Read and validate a theory file; unknown keys are rejected so
    typos fail loudly."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    fields = {}
    for lineno, key, value in parse_kv(text):
        try:
            if key == "backend":
                fields["backend"] = value
            elif key == "d":
                fields["d"] = int(value)
            elif key == "seed":
                fields["seed"] = int(value)
            elif key == "tol":
                fields["tol"] = float(value)
            elif key == "phi":
                fields["phi_override"] = _parse_complex_matrix(value, lineno, key)
            else:
                raise ParseError(f"line {lineno}: unknown field {key!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: field {key}: {exc}") from exc
    return validate_spec(TheorySpec(**fields))


# ---------------------------------------------------------------------------
# report model


@dataclass
class CheckResult:
    name: str
    detail: str
    status: str  # pass | fail | error
    tolerance: float
    values: dict = field(default_factory=dict)


@dataclass
class Report:
    suite: str
    backend: str
    d: int
    seed: int
    version: str
    checks: list = field(default_factory=list)

    def all_pass(self, expect_fail=()):
        for c in self.checks:
            expected_fail = c.name in expect_fail
            if expected_fail and c.status == "pass":
                return False
            if not expected_fail and c.status != "pass":
                return False
        return True


def _fmt_float(x):
    return f"{float(x):.17e}"


def emit_report(report, fmt="text"):
    """Render a report: `text` is an aligned human-readable table,
    `structured` is the key/value syntax accepted by parse_kv (stable
    field order, floats in full-precision scientific notation)."""
    if fmt == "structured":
        lines = [
            f"suite = {report.suite}",
            f"backend = {report.backend}",
            f"d = {report.d}",
            f"seed = {report.seed}",
            f"version = {report.version}",
            f"checks = {len(report.checks)}",
        ]
        for i, c in enumerate(report.checks):
            lines.append(f"check.{i}.name = {c.name}")
            lines.append(f"check.{i}.status = {c.status}")
            lines.append(f"check.{i}.tolerance = {_fmt_float(c.tolerance)}")
            lines.append(f"check.{i}.detail = {c.detail}")
            values = ";".join(
                f"{k}:{_fmt_float(v)}" for k, v in sorted(c.values.items())
            )
            lines.append(f"check.{i}.values = {values}")
        return "\n".join(lines) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    width = max([len(c.name) for c in report.checks], default=4)
    lines = [
        f"suite {report.suite} on {report.backend} d={report.d} "
        f"(seed {report.seed}, toolkit {report.version})"
    ]
    for c in report.checks:
        values = " ".join(f"{k}={_fmt_float(v)}" for k, v in sorted(c.values.items()))
        lines.append(
            f"{c.status.upper():5s} {c.name:<{width}s} tol={c.tolerance:.1e}"
            + (f" {values}" if values else "")
        )
        lines.append(f"      {'':{width}s} {c.detail}")
    npass = sum(c.status == "pass" for c in report.checks)
    lines.append(f"result: {npass}/{len(report.checks)} checks pass")
    return "\n".join(lines) + "\n"


def parse_report(text):
    """Inverse of emit_report(..., "structured"); shares parse_kv with
    the theory loader."""
    kv = {k: v for _, k, v in parse_kv(text)}
    n = int(kv["checks"])
    checks = []
    for i in range(n):
        values = {}
        raw = kv[f"check.{i}.values"]
        if raw:
            for item in raw.split(";"):
                key, val = item.split(":", 1)
                values[key] = float(val)
        checks.append(
            CheckResult(
                name=kv[f"check.{i}.name"],
                detail=kv[f"check.{i}.detail"],
                status=kv[f"check.{i}.status"],
                tolerance=float(kv[f"check.{i}.tolerance"]),
                values=values,
            )
        )
    return Report(
        suite=kv["suite"],
        backend=kv["backend"],
        d=int(kv["d"]),
        seed=int(kv["seed"]),
        version=kv["version"],
        checks=checks,
    )


# ---------------------------------------------------------------------------
# checks


def check_seed(master, name):
    """Documented per-check sub-seed derivation from the master seed."""
    digest = hashlib.sha256(f"{master}:{name}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _run_check(spec, name, detail, tolerance, fn):
    rng = np.random.default_rng(check_seed(spec.seed, name))
    try:
        ok, values = fn(spec, rng, tolerance)
        status = "pass" if ok else "fail"
    except OpcalError:
        status, values = "error", {}
    return CheckResult(
        name=name, detail=detail, status=status, tolerance=tolerance, values=values
    )


def _sample_state(spec, rng):
    if spec.backend == "classical":
        return qm.random_classical_state(spec.d, rng)
    return qm.random_state(spec.d, rng)


def _sample_map(spec, rng):
    if spec.backend == "classical":
        return qm.random_classical_map(spec.d, rng)
    return qm.random_cp(spec.d, rng)


def _sample_effect(spec, rng):
    if spec.backend == "classical":
        return qm.classical_effect(rng.uniform(0.0, 1.0, spec.d))
    return qm.random_effect(spec.d, rng)


# -- core


def _check_conditioning(spec, rng, tol):
    d = spec.d
    th = spec.theory()
    if spec.backend == "classical":
        state = qm.classical_state(np.full(d, 1.0 / d))
        select = np.zeros((d, d))
        select[0, 0] = 1.0
        branch = qm.classical_map(select)
        expected = qm.classical_state(np.eye(d)[0]).matrix
    else:
        state = core.State(th, np.eye(d) / d)
        p0 = np.zeros((d, d))
        p0[0, 0] = 1.0
        branch = qm.projector_map(th, p0)
        expected = p0.astype(complex)
    p, cond = core.condition(state, branch)
    resid = float(np.max(np.abs(cond.matrix - expected)))
    ok = abs(p - 1.0 / d) <= tol and resid <= tol
    return ok, {"probability": p, "state_residual": resid}


def _check_equivalence(spec, rng, tol):
    th = spec.theory()
    d = spec.d
    if spec.backend == "classical":
        perm = np.roll(np.eye(d), 1, axis=0)
        t = qm.classical_map(perm)
    else:
        u = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
        t = qm.unitary_map(th, u)
    same_effect = core.informational_equiv(t, core.identity(th), tol)
    same_dynamics = core.dynamical_equiv(t, core.identity(th), tol)
    ok = same_effect and not same_dynamics
    return ok, {"same_effect": float(same_effect), "same_dynamics": float(same_dynamics)}


def _check_completeness(spec, rng, tol):
    d = spec.d
    th = spec.theory()
    if spec.backend == "classical":
        branches = []
        for i in range(d):
            m = np.zeros((d, d))
            m[i, :] = np.eye(d)[i]
            branches.append(qm.classical_map(m))
        exp = core.Experiment(tuple(branches))
    else:
        exp = qm.projective_experiment(th)
    exp.check_complete(tol)
    obs = exp.observable()
    resid = float(np.max(np.abs(sum(e.matrix for e in obs.effects) - np.eye(d))))
    return resid <= tol, {"unit_residual": resid, "branches": float(len(obs))}


def _check_zero_probability(spec, rng, tol):
    d = spec.d
    th = spec.theory()
    if spec.backend == "classical":
        state = qm.classical_state(np.eye(d)[0])
        select = np.zeros((d, d))
        select[1, 1] = 1.0
        branch = qm.classical_map(select)
    else:
        m = np.zeros((d, d))
        m[0, 0] = 1.0
        state = core.State(th, m)
        p1 = np.zeros((d, d))
        p1[1, 1] = 1.0
        branch = qm.projector_map(th, p1)
    try:
        core.condition(state, branch)
    except ZeroProbability:
        return True, {}
    return False, {}


# -- norms


def _check_effect_norm(spec, rng, tol):
    worst = 0.0
    for _ in range(SAMPLES):
        w = _sample_state(spec, rng)
        e = _sample_effect(spec, rng)
        p = core.pair(w, e)
        worst = max(worst, abs(p) - core.effect_norm(e), core.effect_norm(e) - 1.0)
    return worst <= tol, {"max_violation": worst}


def _check_weight_norm(spec, rng, tol):
    worst = 0.0
    for _ in range(SAMPLES):
        w = core.act(_sample_map(spec, rng), _sample_state(spec, rng))
        worst = max(worst, w.total - core.weight_norm(w))
        # physical maps never increase the weight norm beyond 1
        worst = max(worst, core.weight_norm(w) - 1.0)
    return worst <= tol, {"max_violation": worst}


def _check_submultiplicative(spec, rng, tol):
    worst = -np.inf
    for _ in range(SAMPLES):
        a = _sample_map(spec, rng)
        b = _sample_map(spec, rng)
        lhs = core.trans_norm(core.compose(b, a))
        rhs = core.trans_norm(b) * core.trans_norm(a)
        worst = max(worst, lhs - rhs)
    return worst <= tol, {"max_violation": float(worst)}


def _check_contraction(spec, rng, tol):
    worst = -np.inf
    for _ in range(SAMPLES):
        worst = max(worst, core.trans_norm(_sample_map(spec, rng)) - 1.0)
    return worst <= tol, {"max_violation": float(worst)}


def _check_coexistence(spec, rng, tol):
    th = spec.theory()
    if spec.backend == "classical":
        half = qm.classical_map(np.eye(spec.d) * 0.5)
        big = qm.classical_map(np.eye(spec.d) * 0.7)
    else:
        half = core.scale(0.5, core.identity(th))
        big = core.scale(0.7, core.identity(th))
    ok = core.coexistent(half, half, tol) and not core.coexistent(big, big, tol)
    sum_norm = core.trans_norm(core.add(half, half, check=False))
    return ok and abs(sum_norm - 1.0) <= tol, {"sum_norm": sum_norm}


# -- infodim


def _check_minimal_ic(spec, rng, tol):
    if spec.backend == "classical":
        obs = infodim.classical_observable(spec.d)
    else:
        obs = infodim.minimal_ic_povm(spec.d)
    rank = infodim.ic_rank(obs)
    ok = infodim.is_minimal_ic(obs)
    return ok, {"rank": float(rank), "outcomes": float(len(obs))}


def _check_ic_expand(spec, rng, tol):
    if spec.backend == "classical":
        obs = infodim.classical_observable(spec.d)
    else:
        obs = infodim.minimal_ic_povm(spec.d)
    e = _sample_effect(spec, rng)
    c = infodim.ic_expand(e, obs, tol)
    rows = np.array([x.coords for x in obs.effects])
    resid = float(np.linalg.norm(rows.T @ c - e.coords))
    return resid <= tol, {"residual": resid}


def _check_idim(spec, rng, tol):
    th = spec.theory()
    idim = infodim.informational_dimension(th, tol)
    _, _, cert = infodim.discrimination_witness(th)
    ok = idim == spec.d and cert["pairing_residual"] <= tol
    return ok, {"idim": float(idim), "pairing_residual": cert["pairing_residual"]}


def _check_local_observability(spec, rng, tol):
    if spec.backend == "classical":
        obs = infodim.classical_observable
        e1 = [e.matrix for e in obs(spec.d).effects]
        prods = [
            core.Effect(core.classical(spec.d * spec.d), np.kron(a, b))
            for a in e1
            for b in e1
        ]
        rank = infodim._rank(np.array([e.coords for e in prods]))
        ok = rank == spec.d * spec.d
        return ok, {"rank": float(rank)}
    ok, rank = infodim.check_local_observability(spec.d, spec.d)
    return ok, {"rank": float(rank)}


def _check_bell_ic(spec, rng, tol):
    if spec.backend == "classical":
        # classical analogue: copying onto an ancilla and reading both
        # never exceeds the simplex dimension, so idim(S x S) = d^2
        idim2 = infodim.informational_dimension(core.classical(spec.d * spec.d))
        return idim2 == spec.d * spec.d, {"idim2": float(idim2)}
    ok = infodim.check_bell_ic(spec.d)
    return ok, {}


# -- table1


def _table_check(row):
    def fn(spec, rng, tol):
        report = infodim.dim_identities(spec.d, backend=spec.backend)
        for name, lhs, rhs, ok in report.rows:
            if name == row:
                return ok, {"lhs": float(lhs), "rhs": float(rhs)}
        raise UnknownSuite(row)

    return fn


def _check_classical_violation(spec, rng, tol):
    report = infodim.dim_identities(spec.d, backend="classical")
    ok = not report.passes("D34'")
    for name, lhs, rhs, _ in report.rows:
        if name == "D34'":
            return ok, {"lhs": float(lhs), "rhs": float(rhs)}
    return False, {}


# -- faithful


def _check_symmetric(spec, rng, tol):
    return faithful.is_symmetric(spec.phi()), {}


def _check_dynamical(spec, rng, tol):
    phi = spec.phi()
    rank = faithful._matrix_rank(faithful.local_action_matrix(phi))
    ok = faithful.is_dynamically_faithful(phi)
    return ok, {"rank": float(rank), "full_rank": float(spec.d**4)}


def _check_preparational(spec, rng, tol):
    phi = spec.phi()
    if not faithful.is_preparationally_faithful(phi):
        return False, {}
    worst, pmin = 0.0, np.inf
    for _ in range(5):
        target = qm.random_state(spec.d, rng)
        witness, p = faithful.prepare_witness(phi, target, tol)
        _, cond = qm.condition_local(phi, witness, 1)
        out = qm.local_state(cond, 2).matrix
        worst = max(worst, float(np.max(np.abs(out - target.matrix))))
        pmin = min(pmin, p)
    return worst <= tol and pmin > 0, {"max_residual": worst, "min_probability": pmin}


def _check_signature(spec, rng, tol):
    split = faithful.spectral_split(spec.phi())
    d = spec.d
    want = (d * d - d * (d - 1) // 2, d * (d - 1) // 2)
    ok = split.signature == want
    return ok, {"plus": float(split.signature[0]), "minus": float(split.signature[1])}


def _check_abs_gram(spec, rng, tol):
    split = faithful.spectral_split(spec.phi())
    low = float(np.linalg.eigvalsh(split.gram_abs)[0])
    if spec.phi_override is None:
        ok = abs(low - 1.0 / spec.d) <= 1e-12
    else:
        ok = low > 1e-12
    return ok, {"min_eig": low, "expected": 1.0 / spec.d}


def _check_involution(spec, rng, tol):
    split = faithful.spectral_split(spec.phi())
    s = split.sigma_matrix
    resid = float(np.max(np.abs(s @ s - np.eye(s.shape[0]))))
    return resid <= 1e-12, {"square_residual": resid}


# -- gns


def _check_transpose_residual(spec, rng, tol):
    phi = spec.phi()
    solver = gns.TransposeSolver(phi)
    worst = 0.0
    for _ in range(SAMPLES):
        t = qm.random_cp(spec.d, rng)
        tp = solver.transpose(t)
        lhs = qm.apply_local(phi, t, 1).matrix
        rhs = qm.apply_local(phi, tp, 2).matrix
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst <= tol, {"max_residual": worst}


def _check_transpose_axioms(spec, rng, tol):
    phi = spec.phi()
    solver = gns.TransposeSolver(phi)
    worst = 0.0
    th = core.quantum(spec.d)
    for _ in range(5):
        a = qm.random_cp(spec.d, rng)
        b = qm.random_cp(spec.d, rng)
        # (b after a)' = a' after b'
        lhs = solver.transpose(core.compose(b, a)).choi
        rhs = core.compose(solver.transpose(a), solver.transpose(b)).choi
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        # involution: a'' = a
        back = solver.transpose(solver.transpose(a)).choi
        worst = max(worst, float(np.max(np.abs(back - a.choi))))
        # linearity
        s = core.Transformation(th, a.choi + 0.25 * b.choi, generalized=True)
        lin = solver.transpose(s).choi - (
            solver.transpose(a).choi + 0.25 * solver.transpose(b).choi
        )
        worst = max(worst, float(np.max(np.abs(lin))))
    ident = solver.transpose(core.identity(th)).choi - core.identity(th).choi
    worst = max(worst, float(np.max(np.abs(ident))))
    return worst <= 1e-12, {"max_residual": worst}


def _check_kraus_transpose(spec, rng, tol):
    if spec.phi_override is not None:
        return True, {}  # closed form is specific to the canonical state
    phi = spec.phi()
    solver = gns.TransposeSolver(phi)
    th = core.quantum(spec.d)
    worst = 0.0
    for _ in range(5):
        k = rng.standard_normal((spec.d, spec.d)) + 1j * rng.standard_normal(
            (spec.d, spec.d)
        )
        k /= np.linalg.norm(k, 2) * 1.1
        t = qm.kraus_to_choi(th, [k])
        expected = qm.kraus_to_choi(th, [k.T])
        got = solver.transpose(t)
        worst = max(worst, float(np.max(np.abs(got.choi - expected.choi))))
    return worst <= tol, {"max_residual": worst}


def _check_adjoint_pairing(spec, rng, tol):
    phi = spec.phi()
    space = gns.gns_space(phi)
    worst = 0.0
    for _ in range(SAMPLES):
        a = qm.random_cp(spec.d, rng)
        b = gns.jordan_lift(qm.random_generalized_effect(spec.d, rng))
        c = gns.jordan_lift(qm.random_generalized_effect(spec.d, rng))
        lhs = gns._inner_tt(phi, space.solver, b, core.compose(a, c))
        adj = gns.adjoint_map(phi, a, space.solver)
        rhs = gns._inner_tt(phi, space.solver, core.compose(adj, b), c)
        worst = max(worst, abs(lhs - rhs))
    return worst <= tol, {"max_residual": worst}


def _check_homomorphism(spec, rng, tol):
    space = gns.gns_space(spec.phi())
    worst = 0.0
    for _ in range(5):
        a = qm.random_cp(spec.d, rng)
        b = qm.random_cp(spec.d, rng)
        lhs = gns.gns_rep(space, core.compose(a, b))
        rhs = gns.gns_rep(space, a) @ gns.gns_rep(space, b)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    ident = gns.gns_rep(space, core.identity(core.quantum(spec.d)))
    worst = max(worst, float(np.max(np.abs(ident - np.eye(space.dim)))))
    return worst <= 1e-12, {"max_residual": worst}


def _check_adjoint_rep(spec, rng, tol):
    space = gns.gns_space(spec.phi())
    worst = 0.0
    for _ in range(5):
        a = qm.random_cp(spec.d, rng)
        rep = gns.gns_rep(space, a)
        # Gram-adjoint; equals the conjugate transpose when the Gram
        # matrix is proportional to the identity
        expected = np.linalg.solve(space.gram, rep.conj().T @ space.gram)
        got = gns.gns_rep(space, gns.adjoint_map(space.phi, a, space.solver))
        worst = max(worst, float(np.max(np.abs(got - expected))))
    return worst <= 1e-12, {"max_residual": worst}


def _check_cstar(spec, rng, tol):
    space = gns.gns_space(spec.phi())
    worst = 0.0
    for _ in range(SAMPLES):
        a = qm.random_cp(spec.d, rng)
        lhs, rhs = gns.cstar_check(space, a)
        worst = max(worst, abs(lhs - rhs))
    return worst <= tol, {"max_residual": worst}


# -- born


def _check_born_pair(spec, rng, tol):
    space = gns.gns_space(spec.phi())
    th = core.quantum(spec.d)
    worst = 0.0
    effects = list(infodim.minimal_ic_povm(spec.d).effects)
    for w in core.spanning_states(th):
        for e in effects:
            worst = max(worst, abs(gns.born_pair(space, w, e) - core.pair(w, e)))
    return worst <= tol, {"max_residual": worst}


def _check_born_triple(spec, rng, tol):
    space = gns.gns_space(spec.phi())
    worst = 0.0
    for _ in range(SAMPLES):
        w = qm.random_state(spec.d, rng)
        b = qm.random_effect(spec.d, rng)
        t = qm.random_cp(spec.d, rng)
        lhs = gns.born_triple(space, w, b, t)
        rhs = core.pair(w, core.evolve_effect(b, t))
        worst = max(worst, abs(lhs - rhs))
    return worst <= tol, {"max_residual": worst}


def _check_no_signaling(spec, rng, tol):
    worst = 0.0
    for _ in range(SAMPLES):
        joint = qm.random_joint_state(spec.d, rng)
        exp = qm.random_experiment(spec.d, rng)
        if not qm.no_signaling_check(joint, exp, tol):
            worst = 1.0
    # conditioning witness: a selective branch changes the far state
    phi = qm.max_entangled(spec.d)
    p0 = np.zeros((spec.d, spec.d))
    p0[0, 0] = 1.0
    branch = qm.projector_map(core.quantum(spec.d), p0)
    _, cond = qm.condition_local(phi, branch, 1)
    dist = ch.trace_distance(
        qm.local_state(cond, 2).matrix, qm.local_state(phi, 2).matrix
    )
    return worst <= tol and dist > 0.1, {"max_violation": worst, "witness_distance": dist}


# ---------------------------------------------------------------------------
# suite registry

_TABLE_DETAIL = {
    "D2": "effect-space dimension equals affine state dimension plus one",
    "D3": "affine dimension of a composite from the parts",
    "D4": "affine dimension from the doubled informational dimension",
    "D34": "doubled-system affine dimension from its informational dimension",
    "D34'": "affine dimension equals squared informational dimension minus one",
    "tensor": "informational dimension is multiplicative under composition",
    "T": "transformation affine dimension from the doubled system",
    "P": "effect-space dimension equals squared informational dimension",
}


def _suite_checks(spec, suite):
    quantum_only = spec.backend == "quantum"
    tol = spec.tol
    if suite == "core":
        return [
            ("core.conditioning", "Bayes conditioning on a projector branch", tol, _check_conditioning),
            ("core.equivalence", "deterministic rotation shares effects with identity but not dynamics", tol, _check_equivalence),
            ("core.completeness", "experiment branch probabilities sum to one", tol, _check_completeness),
            ("core.zero_probability", "conditioning on an impossible outcome is rejected", tol, _check_zero_probability),
        ]
    if suite == "norms":
        return [
            ("norms.effect_bound", "probabilities are bounded by the effect norm", tol, _check_effect_norm),
            ("norms.weight_bound", "weights of physical branches stay in the unit ball", tol, _check_weight_norm),
            ("norms.submultiplicative", "transformation norm is submultiplicative", tol, _check_submultiplicative),
            ("norms.contraction", "physical transformations are contractions", tol, _check_contraction),
            ("norms.coexistence", "coexistence is contraction of the sum", tol, _check_coexistence),
        ]
    if suite == "infodim":
        return [
            ("infodim.minimal_ic", "a minimal informationally complete observable exists", tol, _check_minimal_ic),
            ("infodim.expand", "effects expand over an informationally complete observable", tol, _check_ic_expand),
            ("infodim.idim", "maximal perfectly discriminable set has the expected size", tol, _check_idim),
            ("infodim.local_observability", "products of local observables span the joint effects", tol, _check_local_observability),
            ("infodim.bell_ic", "a joint discriminating observable induces a minimal IC one", tol, _check_bell_ic),
        ]
    if suite == "table1":
        checks = [
            (f"table1.{row}", _TABLE_DETAIL[row], 0.0, _table_check(row))
            for row in ("D2", "D3", "D4", "D34", "D34'", "tensor", "T", "P")
        ]
        if quantum_only:
            checks.append(
                (
                    "table1.classical_violation",
                    "the diagonal restriction violates the squared-dimension identity",
                    0.0,
                    _check_classical_violation,
                )
            )
        return checks
    if suite == "faithful":
        if not quantum_only:
            return []
        return [
            ("faithful.symmetric", "joint state is invariant under swapping the parts", tol, _check_symmetric),
            ("faithful.dynamical", "local action determines the transformation uniquely", tol, _check_dynamical),
            ("faithful.preparational", "every state is reachable by a local witness", tol, _check_preparational),
            ("faithful.signature", "bilinear form has the expected sign signature", tol, _check_signature),
            ("faithful.abs_gram", "absolute form is strictly positive with the expected floor", 1e-12, _check_abs_gram),
            ("faithful.involution", "the sign-flip involution squares to the identity", 1e-12, _check_involution),
        ]
    if suite == "gns":
        if not quantum_only:
            return []
        return [
            ("gns.transpose_residual", "local action of a map equals its transpose on the other part", 1e-10, _check_transpose_residual),
            ("gns.transpose_axioms", "transposition is linear, reverses composition, and squares to one", 1e-12, _check_transpose_axioms),
            ("gns.kraus_transpose", "transposition acts entrywise on Kraus operators", 1e-10, _check_kraus_transpose),
            ("gns.adjoint_pairing", "the adjoint moves across the scalar product", tol, _check_adjoint_pairing),
            ("gns.homomorphism", "the representation preserves composition and the identity", 1e-12, _check_homomorphism),
            ("gns.adjoint_rep", "the adjoint map is represented by the matrix adjoint", 1e-12, _check_adjoint_rep),
            ("gns.cstar", "norm of the adjoint composite equals the squared norm", tol, _check_cstar),
        ]
    if suite == "born":
        if not quantum_only:
            return []
        return [
            ("born.pair", "scalar-product pairing reproduces all probabilities", tol, _check_born_pair),
            ("born.triple", "three-term form reproduces transformed probabilities", tol, _check_born_triple),
            ("born.no_signaling", "deterministic far experiments leave the local state fixed", tol, _check_no_signaling),
        ]
    raise UnknownSuite(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")


def run_suite(spec, suite):
    """Execute every check of the named suite (or of all suites) in a
    fixed order; deterministic for a fixed (spec, seed, version)."""
    if suite == "all":
        names = SUITES
    elif suite in SUITES:
        names = (suite,)
    else:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {SUITES + ('all',)}")
    report = Report(
        suite=suite, backend=spec.backend, d=spec.d, seed=spec.seed, version=__version__
    )
    for name in names:
        for check_name, detail, tolerance, fn in _suite_checks(spec, name):
            report.checks.append(_run_check(spec, check_name, detail, tolerance, fn))
    return report


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    parser = argparse.ArgumentParser(
        prog="opcal",
        description="Run verification suites for the operational calculus toolkit.",
    )
    parser.add_argument("--theory", help="path to a theory specification file")
    parser.add_argument("--suite", default="all", help="suite name or 'all'")
    parser.add_argument("--seed", type=int, default=None, help="master seed override")
    parser.add_argument("--tol", type=float, default=None, help="tolerance override")
    parser.add_argument("--backend", default=None, choices=["quantum", "classical"])
    parser.add_argument("--d", type=int, default=None, help="dimension override")
    parser.add_argument(
        "--format", default="text", choices=["text", "structured"], dest="fmt"
    )
    parser.add_argument(
        "--expect-fail",
        action="append",
        default=[],
        metavar="CHECKNAME",
        help="treat this check as a negative control (it must not pass)",
    )
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        spec = load_theory(args.theory) if args.theory else TheorySpec()
        overrides = {}
        if args.backend is not None:
            overrides["backend"] = args.backend
        if args.d is not None:
            overrides["d"] = args.d
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.tol is not None:
            overrides["tol"] = args.tol
        if overrides:
            spec = validate_spec(replace(spec, **overrides))
        start = time.monotonic()
        report = run_suite(spec, args.suite)
        elapsed = time.monotonic() - start
        sys.stdout.write(emit_report(report, args.fmt))
        # wall-clock goes to stderr so report bytes stay reproducible
        sys.stderr.write(f"elapsed: {elapsed:.3f}s\n")
        return 0 if report.all_pass(expect_fail=tuple(args.expect_fail)) else 1
    except (ParseError, ValidationError, UnknownSuite, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
