"""Command-line front end: JSON matrices in, JSON run reports out.

Matrix files are {"rows": r, "cols": c, "data": [[re, im], ...]} in
row-major order.  Every run emits a report {"command", "inputs",
"results", "residuals", "seed"}; residuals always carry their tolerance.
Exit codes: 0 success, 1 mathematical precondition failure, 2 malformed
input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import algebra, gelfand, linalg, qm, spectral, states
from .errors import CStarError, MalformedInput


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(doc) -> np.ndarray:
    try:
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"matrix document needs rows/cols/data: {exc}") from exc
    if len(data) != rows * cols:
        raise MalformedInput(f"data length {len(data)} != rows*cols = {rows * cols}")
    try:
        flat = [complex(float(re), float(im)) for re, im in data]
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"entries must be [re, im] pairs: {exc}") from exc
    m = np.array(flat, dtype=complex).reshape(rows, cols)
    try:
        return linalg.as_matrix(m)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def parse_matrix(path: str) -> np.ndarray:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON in {path}: {exc}") from exc
    return matrix_from_json(doc)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON in {path}: {exc}") from exc


def emit_report(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _residual(value: float, tolerance: float) -> dict:
    return {"value": float(value), "tolerance": float(tolerance)}


def _square_input(args) -> np.ndarray:
    m = parse_matrix(args.input)
    if m.shape[0] != m.shape[1]:
        raise MalformedInput(f"expected a square matrix, got shape {m.shape}")
    return m


def cmd_spectrum(args) -> dict:
    m = _square_input(args)
    rep = spectral.spectrum(algebra.ambient_element(m), field_mode=args.field)
    radius = spectral.clustering_radius(np.array(rep.points if rep.points else [0.0]))
    eig_resid = 0.0
    for z in rep.points:
        shifted = m - z * np.eye(m.shape[0])
        svals = np.linalg.svd(shifted, compute_uv=False)
        eig_resid = max(eig_resid, float(svals[-1]) / max(1.0, linalg.op_norm(m)))
    return {
        "inputs": {"input": matrix_to_json(m), "field": args.field},
        "results": {
            "points": [_cplx(z) for z in rep.points],
            "radius": rep.radius,
        },
        "residuals": {"max_eigenvalue_residual": _residual(eig_resid, radius)},
    }


def cmd_radius(args) -> dict:
    m = _square_input(args)
    trace = spectral.spectral_radius_limit(algebra.ambient_element(m), n_max=args.n_max)
    return {
        "inputs": {"input": matrix_to_json(m), "n_max": args.n_max},
        "results": {
            "trace": [[int(n), float(v)] for n, v in zip(trace.powers, trace.values)],
            "estimate": trace.estimate,
            "eigen_radius": trace.eigen_radius,
        },
        "residuals": {"estimate_vs_eigen_radius": _residual(trace.gap, 1e-3)},
    }


def cmd_exp(args) -> dict:
    m = _square_input(args)
    a = algebra.ambient_element(m)
    em = spectral.exp_element(a).matrix
    em_neg = spectral.exp_element(algebra.ambient_element(-m)).matrix
    inverse_resid = linalg.op_norm(em @ em_neg - np.eye(m.shape[0]))
    bound_excess = max(0.0, linalg.op_norm(em) - float(np.exp(linalg.op_norm(m))))
    return {
        "inputs": {"input": matrix_to_json(m)},
        "results": {"exp": matrix_to_json(em)},
        "residuals": {
            "exp_times_exp_neg_minus_identity": _residual(inverse_resid, 1e-9),
            "norm_bound_excess": _residual(bound_excess, 1e-9),
        },
    }


def cmd_sqrt(args) -> dict:
    m = _square_input(args)
    root = spectral.sqrt_positive(algebra.ambient_element(m), tol=args.tol).matrix
    square_resid = linalg.op_norm(root @ root - m) / max(1.0, linalg.op_norm(m))
    return {
        "inputs": {"input": matrix_to_json(m)},
        "results": {"sqrt": matrix_to_json(root)},
        "residuals": {"square_minus_input": _residual(square_resid, 1e-8)},
    }


def cmd_neumann(args) -> dict:
    m = _square_input(args)
    a = algebra.ambient_element(m)
    series = spectral.neumann_inverse(a, tol=args.tol).matrix
    direct = linalg.invert(np.eye(m.shape[0]) - m)
    resid = linalg.op_norm(series - direct)
    return {
        "inputs": {"input": matrix_to_json(m), "tol": args.tol},
        "results": {"inverse_of_one_minus_a": matrix_to_json(series)},
        "residuals": {"series_vs_direct_inverse": _residual(resid, 10.0 * args.tol)},
    }


def _abelian_algebra_from(m: np.ndarray) -> algebra.Algebra:
    return algebra.algebra_from_generators([m], include_identity=True, include_adjoints=True)


def cmd_characters(args) -> dict:
    m = _square_input(args)
    alg = _abelian_algebra_from(m)
    spec = gelfand.characters(alg, seed=args.seed)
    a = algebra.Element(alg, m)
    mult_resid = max((chi.multiplicativity_residual() for chi in spec), default=0.0)
    return {
        "inputs": {"input": matrix_to_json(m)},
        "results": {
            "count": len(spec),
            "algebra_dim": alg.dim,
            "values_at_input": [_cplx(chi(a)) for chi in spec],
        },
        "residuals": {"max_multiplicativity_residual": _residual(mult_resid, 1e-7)},
    }


def cmd_gelfand(args) -> dict:
    m = _square_input(args)
    alg = _abelian_algebra_from(m)
    report = gelfand.gelfand_isometry_report(alg, samples=20, seed=args.seed)
    return {
        "inputs": {"input": matrix_to_json(m)},
        "results": {
            "algebra_dim": alg.dim,
            "samples": len(report.sup_transform),
            "kernel_detected": report.kernel_detected,
            "star_closed": alg.star_closed,
        },
        "residuals": {
            "max_sup_transform_minus_radius": _residual(report.max_hat_minus_radius, 1e-8),
            "max_sup_transform_minus_norm": _residual(
                report.max_hat_minus_norm, 1e-8 if alg.star_closed else float("inf")
            ),
        },
    }


def cmd_gkz(args) -> dict:
    g = _square_input(args)
    n = g.shape[0]
    alg = algebra.full_matrix_algebra(n)
    values = [complex(np.trace(g @ b)) for b in alg.basis]
    outcome = gelfand.gkz_witness(alg, values, seed=args.seed)
    results = {"is_character": outcome.is_character, "attempts_used": outcome.attempts_used}
    phi_one = complex(np.dot(values, alg.identity_coords))
    residuals = {"phi_at_identity_minus_one": _residual(abs(phi_one - 1.0), 1e-6)}
    if outcome.witness is not None:
        results["witness"] = matrix_to_json(outcome.witness.matrix)
        results["min_singular_value"] = outcome.min_singular_value
        residuals["phi_at_witness"] = _residual(abs(outcome.phi_at_witness), 1e-9)
    return {
        "inputs": {"input": matrix_to_json(g)},
        "results": results,
        "residuals": residuals,
    }


def cmd_gns(args) -> dict:
    rho = _square_input(args)
    n = rho.shape[0]
    if linalg.hermitian_residual(rho) > 1e-8 or abs(complex(np.trace(rho)) - 1.0) > 1e-8:
        raise MalformedInput("gns expects a density matrix (Hermitian, trace 1)")
    alg = algebra.full_matrix_algebra(n)
    values = [complex(np.trace(rho @ b)) for b in alg.basis]
    state = states.make_state(alg, values)
    rep = states.gns(alg, state)
    rng = np.random.default_rng(args.seed)
    hom_resid = 0.0
    contraction = 0.0
    for _ in range(20):
        a = algebra.random_element(alg, rng)
        b = algebra.random_element(alg, rng)
        pa, pb = rep.apply(a), rep.apply(b)
        hom_resid = max(hom_resid, linalg.op_norm(rep.apply(a @ b) - pa @ pb))
        hom_resid = max(hom_resid, linalg.op_norm(rep.apply(a.adjoint()) - pa.conj().T))
        contraction = max(contraction, linalg.op_norm(pa) - a.norm())
    state_resid = 0.0
    if rep.cyclic_vector is not None:
        for _ in range(20):
            a = algebra.random_element(alg, rng)
            lhs = complex(np.vdot(rep.cyclic_vector, rep.apply(a) @ rep.cyclic_vector))
            state_resid = max(state_resid, abs(lhs - state(a)))
    return {
        "inputs": {"input": matrix_to_json(rho)},
        "results": {"hilbert_dim": rep.hilbert_dim, "algebra_dim": alg.dim},
        "residuals": {
            "star_homomorphism": _residual(hom_resid, 1e-9),
            "contraction_excess": _residual(max(0.0, contraction), 1e-9),
            "state_reproduction": _residual(state_resid, 1e-9),
        },
    }


def cmd_universal(args) -> dict:
    g = _square_input(args)
    alg = algebra.algebra_from_generators([g], include_identity=True, include_adjoints=True)
    report = states.universal_rep(alg, seed=args.seed)
    return {
        "inputs": {"input": matrix_to_json(g)},
        "results": {
            "algebra_dim": alg.dim,
            "hilbert_dim": report.representation.hilbert_dim,
            "state_count": report.state_count,
        },
        "residuals": {"max_isometry_residual": _residual(report.max_isometry_residual, 1e-7)},
    }


def cmd_quotient_norm(args) -> dict:
    doc = _load_json(args.input)
    if not isinstance(doc, dict) or "element" not in doc or "ideal" not in doc:
        raise MalformedInput('quotient-norm input must be {"element": ..., "ideal": [...]}')
    m = matrix_from_json(doc["element"])
    ideal_mats = [matrix_from_json(d) for d in doc["ideal"]]
    alg = algebra.algebra_from_generators(
        [m, *ideal_mats], include_identity=True, include_adjoints=True
    )
    ideal = algebra.subspace(alg, ideal_mats)
    q = algebra.quotient(alg, ideal)
    a = algebra.Element(alg, m)
    value = algebra.quotient_norm(q, a, seed=args.seed)
    excess = max(0.0, value - a.norm())
    return {
        "inputs": {"input": {"element": matrix_to_json(m), "ideal_dim": ideal.dim}},
        "results": {"quotient_norm": value, "op_norm": a.norm()},
        "residuals": {"quotient_norm_above_op_norm": _residual(excess, 1e-9)},
    }


def cmd_qm(args) -> dict:
    grid = qm.BoxGrid(length=args.length, points=args.grid)
    xhat = qm.position_operator(grid)
    cos_obs = qm.cosine_observable(grid)
    levels = []
    worst_pos = 0.0
    worst_cos = 0.0
    for n in range(1, args.levels + 1):
        psi = qm.box_eigenstate(grid, n)
        pos = qm.expectation(xhat, psi).real
        cos = qm.expectation(cos_obs, psi).real
        levels.append(
            {
                "level": n,
                "energy": qm.box_energy(grid, n),
                "position_expectation": pos,
                "cosine_expectation": cos,
            }
        )
        worst_pos = max(worst_pos, abs(pos - args.length / 2.0))
        worst_cos = max(worst_cos, abs(cos - (1.0 if n == 1 else 0.0)))
    herm = max(
        linalg.hermitian_residual(xhat.matrix), linalg.hermitian_residual(cos_obs.matrix)
    )
    return {
        "inputs": {"grid": args.grid, "levels": args.levels, "length": args.length},
        "results": {"levels": levels},
        "residuals": {
            "max_position_deviation_from_center": _residual(worst_pos, 1e-3),
            "max_cosine_deviation_from_closed_form": _residual(worst_cos, 1e-3),
            "observable_hermitian_defect": _residual(herm, 1e-12),
        },
    }


_HANDLERS = {
    "spectrum": cmd_spectrum,
    "radius": cmd_radius,
    "exp": cmd_exp,
    "sqrt": cmd_sqrt,
    "neumann": cmd_neumann,
    "gelfand": cmd_gelfand,
    "characters": cmd_characters,
    "gkz": cmd_gkz,
    "gns": cmd_gns,
    "universal": cmd_universal,
    "quotient-norm": cmd_quotient_norm,
    "qm": cmd_qm,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstarkit",
        description="Finite-dimensional operator-algebra computations over JSON matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name)
        if name != "qm":
            p.add_argument("--input", required=True, help="path to the JSON input file")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--tol", type=float, default=1e-9 if name != "neumann" else 1e-12)
        p.add_argument("--seed", type=int, default=0)
        if name == "spectrum":
            p.add_argument("--field", choices=["real", "complex"], default="complex")
        if name == "radius":
            p.add_argument("--n-max", type=int, default=1024)
        if name == "qm":
            p.add_argument("--grid", type=int, default=2000)
            p.add_argument("--levels", type=int, default=5)
            p.add_argument("--length", type=float, default=1.0)
    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        body = _HANDLERS[args.command](args)
    except MalformedInput as exc:
        print(f"error: MalformedInput: {exc}", file=sys.stderr)
        return 2
    except CStarError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    report = {
        "command": args.command,
        "seed": getattr(args, "seed", 0),
        **body,
    }
    emit_report(report, args.out)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
